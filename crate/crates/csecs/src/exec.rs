//! Internal fan-out helper: grids and quadrature nodes are embarrassingly
//! parallel, and results are always collected back in input order so output
//! bytes do not depend on the execution mode.

#[cfg(feature = "parallel")]
pub(crate) fn map_indexed<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_indexed<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}

/// Always-sequential variant, kept separate so callers (and benches) can pin
/// the execution mode regardless of enabled features.
pub(crate) fn map_indexed_seq<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}
