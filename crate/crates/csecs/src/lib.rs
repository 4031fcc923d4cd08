//! Entanglement and teleportation figures of merit for two-mode entangled
//! coherent states acted on by coherent superpositions of photon subtraction
//! and addition.
//!
//! The state family is
//!
//! ```text
//! |Ψ±(α, m, n)⟩ = N (r_A a† + t_A a)^m (r_B b† + t_B b)^n (|α, α⟩ ± |-α, -α⟩),
//! ```
//!
//! with real coefficients `t_j^2 + r_j^2 = 1` interpolating between photon
//! subtraction (`t = 1`) and addition (`r = 1`). The crate computes, in
//! closed form:
//!
//! * the overlap quartet `A1, A2, B1, B2` and the normalization factor
//!   ([`state`]),
//! * the Shchukin-Vogel inseparability statistic, its thresholds, and the
//!   concurrence ([`entanglement`]),
//! * two-mode characteristic functions and the Braunstein-Kimble fidelity of
//!   teleporting a coherent state through the channel ([`teleport`]).
//!
//! Every closed form is cross-checked against [`fock`], a brute-force engine
//! over truncated Fock spaces that builds the states by literal operator
//! application; [`verify`] bundles the full equivalence grid. [`sweep`]
//! evaluates grids/figure tables and serializes them to CSV or JSON.
//!
//! Grid and quadrature loops are data-parallel; the default `parallel`
//! feature fans them out with rayon, without it everything runs
//! sequentially. Row order, and therefore serialized output, is identical
//! either way.

pub mod entanglement;
pub mod error;
mod exec;
pub mod fock;
pub mod quad;
pub mod special;
pub mod state;
pub mod sweep;
pub mod teleport;
pub mod verify;

pub use error::{CsecsError, Result};
pub use state::{CsEcsParams, NormalizationResult, OverlapQuartet, Parity, TAU_SWITCH};
