//! Shchukin-Vogel inseparability statistic and concurrence, in closed form
//! and through the Fock oracle, plus the threshold root-finders.
//!
//! The statistic is the single moment determinant
//! `S+ = <a†a - 1/2><b†b - 1/2> - <a†b†><ab>`; `S+ < 0` is sufficient for
//! inseparability. Its closed form is available for `m = n = 1` with even
//! parity; everything else goes through the oracle.

use num_complex::Complex64;

use crate::error::{CsecsError, Result};
use crate::fock::{build_cs_eecs, mode_moments, TruncationConfig};
use crate::state::{normalization_from_quartet, overlap_quartet, CsEcsParams, Parity};

/// Per-mode moment coefficients of the `m = n = 1` closed form: `O_{j1}` and
/// `O_{j2}` weight the number operator, `R_{j1}` and `R_{j2}` the
/// single-mode annihilation between the two coherent branches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvMoments {
    pub o1_a: f64,
    pub o2_a: f64,
    pub o1_b: f64,
    pub o2_b: f64,
    pub r1_a: Complex64,
    pub r2_a: Complex64,
    pub r1_b: Complex64,
    pub r2_b: Complex64,
}

impl SvMoments {
    /// Coefficients for the `m = n = 1`, even-parity state; other orders are
    /// [`CsecsError::UnsupportedOrder`].
    pub fn for_params(params: &CsEcsParams) -> Result<Self> {
        if params.m != 1 || params.n != 1 || params.parity != Parity::Even {
            return Err(CsecsError::UnsupportedOrder { m: params.m, n: params.n });
        }
        let alpha = params.alpha;
        let x2 = alpha.norm_sqr();
        let re2 = 2.0 * (alpha * alpha).re;
        let g = (-2.0 * x2).exp();
        let o = |t: f64, r: f64| {
            let o1 = x2 * x2 + r * r * (1.0 + 3.0 * x2) + t * r * re2 * (1.0 + x2);
            let o2 = g * (x2 * x2 + r * r * (1.0 - 3.0 * x2) + t * r * re2 * (1.0 - x2));
            (o1, o2)
        };
        let rr = |t: f64, r: f64| {
            let cubic = alpha * alpha * alpha;
            let r1 = x2 * alpha + t * r * (cubic + x2 * alpha.conj() + alpha.conj()) + 2.0 * r * r * alpha;
            let r2 = (-x2 * alpha + t * r * (cubic + x2 * alpha.conj() - alpha.conj()) + 2.0 * r * r * alpha) * g;
            (r1, r2)
        };
        let (o1_a, o2_a) = o(params.t_a, params.r_a);
        let (o1_b, o2_b) = o(params.t_b, params.r_b);
        let (r1_a, r2_a) = rr(params.t_a, params.r_a);
        let (r1_b, r2_b) = rr(params.t_b, params.r_b);
        Ok(SvMoments { o1_a, o2_a, o1_b, o2_b, r1_a, r2_a, r1_b, r2_b })
    }
}

/// The statistic together with the moments it was assembled from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvReport {
    pub s_plus: f64,
    pub n_a: f64,
    pub n_b: f64,
    pub ab: Complex64,
    /// `s_plus < 0`; the criterion is sufficient, not necessary.
    pub entangled: bool,
}

impl SvReport {
    fn from_moments(n_a: f64, n_b: f64, ab: Complex64) -> Self {
        // <a†b†> is the conjugate of <ab> for any state expectation, so the
        // product term is |<ab>|^2.
        let s_plus = (n_a - 0.5) * (n_b - 0.5) - ab.norm_sqr();
        SvReport { s_plus, n_a, n_b, ab, entangled: s_plus < 0.0 }
    }
}

/// Closed-form statistic for `m = n = 1`, even parity.
pub fn sv_statistic_closed(params: &CsEcsParams) -> Result<SvReport> {
    let mom = SvMoments::for_params(params)?;
    let q = overlap_quartet(params);
    let den = q.a1 * q.b1 + q.a2 * q.b2;
    if !(den.abs() > 1e-300) {
        return Err(CsecsError::DegenerateState(format!("moment denominator {den:.3e}")));
    }
    let n_a = (mom.o1_a * q.b1 + mom.o2_a * q.b2) / den;
    let n_b = (mom.o1_b * q.a1 + mom.o2_b * q.a2) / den;
    let ab = (mom.r1_a * mom.r1_b + mom.r2_a * mom.r2_b) / den;
    Ok(SvReport::from_moments(n_a, n_b, ab))
}

/// Statistic for arbitrary `(m, n)` and parity via the Fock oracle.
pub fn sv_statistic_oracle(params: &CsEcsParams, cfg: &TruncationConfig) -> Result<SvReport> {
    let s = build_cs_eecs(params, cfg)?;
    let mom = mode_moments(&s);
    Ok(SvReport::from_moments(mom.n_a, mom.n_b, mom.ab))
}

/// Statistic of the bare even state:
/// `S+ = (|α|^2 tanh(2|α|^2) - 1/2)^2 - |α|^4`.
pub fn eecs_sv(alpha: Complex64) -> f64 {
    let x = alpha.norm_sqr();
    let occ = x * (2.0 * x).tanh();
    (occ - 0.5) * (occ - 0.5) - x * x
}

fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> Option<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if (flo < 0.0) == (fhi < 0.0) {
        return None;
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Amplitude above which the bare even state satisfies the criterion:
/// the root of `2x (tanh(2x) + 1) = 1` in `x = |α|^2`, returned as
/// `α* = sqrt(x)` to better than 1e-9.
pub fn sv_threshold() -> f64 {
    let x = bisect(|x| 2.0 * x * ((2.0 * x).tanh() + 1.0) - 1.0, 0.01, 1.0, 1e-13)
        .expect("threshold bracket [0.01, 1] always changes sign");
    x.sqrt()
}

/// Zero crossing of the closed-form statistic along real `α` for the
/// symmetric `m = n = 1` state with `t_A = t_B = t`. Bisection with bracket
/// expansion, absolute tolerance 1e-9 in `α`.
pub fn sv_crossing_closed(t: f64) -> Result<f64> {
    let r = (1.0 - t * t).max(0.0).sqrt();
    let stat = |alpha: f64| -> f64 {
        let p = CsEcsParams::new(Complex64::new(alpha, 0.0), 1, 1, t, r, t, r, Parity::Even)
            .expect("coefficients derived from t are valid");
        sv_statistic_closed(&p).expect("m = n = 1 even is the supported order").s_plus
    };
    let (lo, mut hi) = (0.02, 1.0);
    let mut tries = 0;
    while (stat(lo) < 0.0) == (stat(hi) < 0.0) {
        hi *= 1.5;
        tries += 1;
        if tries > 12 {
            return Err(CsecsError::InvalidParams(format!(
                "no sign change of S+ found for t = {t} with alpha up to {hi}"
            )));
        }
    }
    Ok(bisect(stat, lo, hi, 1e-9).expect("bracket was just established"))
}

/// Concurrence along with the branch-overlap ratios it is built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcurrenceReport {
    pub c: f64,
    /// `A2 / A1`.
    pub p1: f64,
    /// `B2 / B1`.
    pub p2: f64,
}

/// Closed-form concurrence
/// `C = sqrt((A1^2 - A2^2)(B1^2 - B2^2)) / (A1 B1 ± A2 B2)`,
/// clamped to `[0, 1]` against round-off.
pub fn concurrence_closed(params: &CsEcsParams) -> Result<ConcurrenceReport> {
    let q = overlap_quartet(params);
    let norm = normalization_from_quartet(params, &q)?;
    let den = norm.inv_square / 2.0;
    if !(q.a1 > 1e-300) || !(q.b1 > 1e-300) {
        return Err(CsecsError::DegenerateState(format!(
            "diagonal overlaps vanish: A1 = {:.3e}, B1 = {:.3e}",
            q.a1, q.b1
        )));
    }
    let num = ((q.a1 * q.a1 - q.a2 * q.a2).max(0.0) * (q.b1 * q.b1 - q.b2 * q.b2).max(0.0)).sqrt();
    Ok(ConcurrenceReport {
        c: (num / den).clamp(0.0, 1.0),
        p1: q.a2 / q.a1,
        p2: q.b2 / q.b1,
    })
}

/// Concurrence of the photon-added (`t = 0, r = 1`) even state from its
/// Laguerre closed form; symmetric in `m` and `n` by construction.
pub fn concurrence_excited(alpha: Complex64, m: u32, n: u32) -> f64 {
    let x = alpha.norm_sqr();
    let g4 = (-4.0 * x).exp();
    let lm = crate::special::laguerre(m, -x);
    let lmp = crate::special::laguerre(m, x);
    let ln = crate::special::laguerre(n, -x);
    let lnp = crate::special::laguerre(n, x);
    let num = ((lm * lm - g4 * lmp * lmp).max(0.0) * (ln * ln - g4 * lnp * lnp).max(0.0)).sqrt();
    (num / (lm * ln + g4 * lmp * lnp)).clamp(0.0, 1.0)
}
