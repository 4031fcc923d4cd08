//! The coherent-superposition entangled coherent state
//! `N (r_A a† + t_A a)^m (r_B b† + t_B b)^n (|α,α⟩ ± |-α,-α⟩)`
//! and the four mode overlaps that drive its normalization, inseparability
//! statistic, concurrence and characteristic function.

use num_complex::Complex64;

use crate::error::{CsecsError, Result};
use crate::special::{bilinear_derivative, hermite, laguerre, ln_factorial};

/// Sign of the two-branch superposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// `+1` for even, `-1` for odd.
    pub fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

/// Below this value of the product `t * r`, mode overlaps switch from the
/// Hermite-sum form (whose arguments carry `1/sqrt(2 t r)`) to exact series
/// coefficient extraction.
pub const TAU_SWITCH: f64 = 1e-6;

const COEFF_NORM_TOL: f64 = 1e-12;

/// Full parameter set of the state: coherent amplitude, operation orders,
/// per-mode superposition coefficients (real, `t^2 + r^2 = 1`), and parity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsEcsParams {
    pub alpha: Complex64,
    pub m: u32,
    pub n: u32,
    pub t_a: f64,
    pub r_a: f64,
    pub t_b: f64,
    pub r_b: f64,
    pub parity: Parity,
}

impl CsEcsParams {
    pub fn new(
        alpha: Complex64,
        m: u32,
        n: u32,
        t_a: f64,
        r_a: f64,
        t_b: f64,
        r_b: f64,
        parity: Parity,
    ) -> Result<Self> {
        for (label, t, r) in [("mode a", t_a, r_a), ("mode b", t_b, r_b)] {
            if !(0.0..=1.0).contains(&t) || !(0.0..=1.0).contains(&r) {
                return Err(CsecsError::InvalidParams(format!(
                    "{label}: coefficients must lie in [0, 1], got t={t}, r={r}"
                )));
            }
            let norm = t * t + r * r;
            if (norm - 1.0).abs() > COEFF_NORM_TOL {
                return Err(CsecsError::InvalidParams(format!(
                    "{label}: t^2 + r^2 = {norm} violates unit normalization"
                )));
            }
        }
        if !alpha.re.is_finite() || !alpha.im.is_finite() {
            return Err(CsecsError::InvalidParams("alpha must be finite".into()));
        }
        Ok(CsEcsParams { alpha, m, n, t_a, r_a, t_b, r_b, parity })
    }

    /// Builds from per-mode `r`, deriving `t = sqrt(1 - r^2)`.
    pub fn from_r(alpha: Complex64, m: u32, n: u32, r_a: f64, r_b: f64, parity: Parity) -> Result<Self> {
        let t = |r: f64| (1.0 - r * r).max(0.0).sqrt();
        Self::new(alpha, m, n, t(r_a), r_a, t(r_b), r_b, parity)
    }

    /// Builds from per-mode `t`, deriving `r = sqrt(1 - t^2)`.
    pub fn from_t(alpha: Complex64, m: u32, n: u32, t_a: f64, t_b: f64, parity: Parity) -> Result<Self> {
        let r = |t: f64| (1.0 - t * t).max(0.0).sqrt();
        Self::new(alpha, m, n, t_a, r(t_a), t_b, r(t_b), parity)
    }

    /// The symmetric case `r_A = r_B = r` used throughout the figures.
    pub fn symmetric_r(alpha: Complex64, m: u32, n: u32, r: f64, parity: Parity) -> Result<Self> {
        Self::from_r(alpha, m, n, r, r, parity)
    }

    /// The symmetric case `t_A = t_B = t`.
    pub fn symmetric_t(alpha: Complex64, m: u32, n: u32, t: f64, parity: Parity) -> Result<Self> {
        Self::from_t(alpha, m, n, t, t, parity)
    }

    /// The bare entangled coherent state (`m = n = 0`).
    pub fn eecs(alpha: Complex64, parity: Parity) -> Self {
        CsEcsParams { alpha, m: 0, n: 0, t_a: 1.0, r_a: 0.0, t_b: 1.0, r_b: 0.0, parity }
    }

    /// Swaps the two modes: `(m, t_A, r_A) <-> (n, t_B, r_B)`.
    pub fn swapped_modes(&self) -> Self {
        CsEcsParams {
            alpha: self.alpha,
            m: self.n,
            n: self.m,
            t_a: self.t_b,
            r_a: self.r_b,
            t_b: self.t_a,
            r_b: self.r_a,
            parity: self.parity,
        }
    }
}

/// The four overlaps
///
/// ```text
/// A1 = <α|  O_A† O_A |α>      A2 = <-α| O_A† O_A |α>      (O_A = (r_A a† + t_A a)^m)
/// B1 = <α|  O_B† O_B |α>      B2 = <-α| O_B† O_B |α>      (O_B on mode b, order n)
/// ```
///
/// together with the scaled Hermite arguments of their sum forms. The
/// arguments are zero when the series branch was used (they are undefined in
/// the `t r -> 0` limits).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapQuartet {
    pub a1: f64,
    pub a2: f64,
    pub b1: f64,
    pub b2: f64,
    pub scaled_arg_a: Complex64,
    pub scaled_arg_cross_a: Complex64,
    pub scaled_arg_b: Complex64,
    pub scaled_arg_cross_b: Complex64,
}

/// Normalization factor `N` and its inverse square `N^{-2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizationResult {
    pub n_factor: f64,
    pub inv_square: f64,
}

/// One mode's diagonal/cross overlaps plus the Hermite arguments used.
fn mode_overlaps(alpha: Complex64, order: u32, t: f64, r: f64) -> (f64, f64, Complex64, Complex64) {
    if order == 0 {
        let cross = (-2.0 * alpha.norm_sqr()).exp();
        return (1.0, cross, Complex64::default(), Complex64::default());
    }
    if t * r >= TAU_SWITCH {
        // Hermite-sum form: every term of the diagonal overlap is
        // nonnegative, the cross overlap alternates in sign with the degree.
        let scale = Complex64::i() * (2.0 * t * r).sqrt();
        let arg_diag = (t * alpha + r * alpha.conj()) / scale;
        let arg_cross = (r * alpha - alpha.conj() * t) / scale;
        let ln_fact2 = 2.0 * ln_factorial(order);
        let ln_t = t.ln();
        let ln_r = r.ln();
        let mut diag = 0.0;
        let mut cross = 0.0;
        for l in 0..=order {
            let k = order - l;
            let ln_coef = ln_fact2 - (k as f64) * std::f64::consts::LN_2
                - ln_factorial(l)
                - 2.0 * ln_factorial(k)
                + (k as f64) * ln_t
                + ((order + l) as f64) * ln_r;
            let coef = ln_coef.exp();
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            diag += coef * hermite(k, arg_diag).norm_sqr();
            cross += sign * coef * hermite(k, arg_cross).norm_sqr();
        }
        cross *= (-2.0 * alpha.norm_sqr()).exp();
        (diag, cross, arg_diag, arg_cross)
    } else {
        // Series branch: exact through t = 0 and r = 0, where it reduces to
        // the Laguerre forms m! L_m(-|α|^2), m! e^{-2|α|^2} L_m(|α|^2) and to
        // the eigenvalue forms |α|^{2m}, (-1)^m |α|^{2m} e^{-2|α|^2}.
        let ac = alpha.conj();
        let c = Complex64::new(r * r, 0.0);
        let d = Complex64::new(t * r / 2.0, 0.0);
        let diag = real_part(bilinear_derivative(t * alpha + r * ac, t * ac + r * alpha, c, d, order));
        let cross_raw =
            real_part(bilinear_derivative(t * alpha - ac * r, r * alpha - ac * t, c, d, order));
        let cross = cross_raw * (-2.0 * alpha.norm_sqr()).exp();
        (diag, cross, Complex64::default(), Complex64::default())
    }
}

/// Discards an imaginary residue that must vanish for real coefficients.
fn real_part(z: Complex64) -> f64 {
    assert!(
        z.im.abs() <= 1e-10 * z.re.abs().max(1.0),
        "overlap evaluation left an imaginary residue: {z}"
    );
    z.re
}

/// The overlap quartet `A1, A2, B1, B2` for the given parameters.
pub fn overlap_quartet(params: &CsEcsParams) -> OverlapQuartet {
    let (a1, a2, arg_a, arg_xa) = mode_overlaps(params.alpha, params.m, params.t_a, params.r_a);
    let (b1, b2, arg_b, arg_xb) = mode_overlaps(params.alpha, params.n, params.t_b, params.r_b);
    OverlapQuartet {
        a1,
        a2,
        b1,
        b2,
        scaled_arg_a: arg_a,
        scaled_arg_cross_a: arg_xa,
        scaled_arg_b: arg_b,
        scaled_arg_cross_b: arg_xb,
    }
}

/// Normalization of the two-branch state:
/// `N^{-2} = 2 (A1 B1 + A2 B2)` for even parity, `2 (A1 B1 - A2 B2)` for odd.
pub fn normalization(params: &CsEcsParams) -> Result<NormalizationResult> {
    let q = overlap_quartet(params);
    normalization_from_quartet(params, &q)
}

pub(crate) fn normalization_from_quartet(
    params: &CsEcsParams,
    q: &OverlapQuartet,
) -> Result<NormalizationResult> {
    let inv_square = 2.0 * (q.a1 * q.b1 + params.parity.sign() * q.a2 * q.b2);
    if !(inv_square > 1e-300) {
        return Err(CsecsError::DegenerateState(format!(
            "norm^-2 = {inv_square:.3e} for alpha={}, m={}, n={}, parity={}",
            params.alpha,
            params.m,
            params.n,
            params.parity.label()
        )));
    }
    Ok(NormalizationResult { n_factor: inv_square.sqrt().recip(), inv_square })
}

/// `N^{-2}` of the photon-added (`t = 0, r = 1`) even state, computed from
/// its Laguerre closed form. Kept as an independent route for cross-checking
/// [`normalization`] in the pure-addition limit.
pub fn excited_normalization(alpha: Complex64, m: u32, n: u32) -> f64 {
    let x = alpha.norm_sqr();
    let fact = (ln_factorial(m) + ln_factorial(n)).exp();
    2.0 * fact
        * (laguerre(m, -x) * laguerre(n, -x) + (-4.0 * x).exp() * laguerre(m, x) * laguerre(n, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn params_validation() {
        assert!(CsEcsParams::new(c(1.0, 0.0), 1, 1, 0.3, 0.6, 0.3, 0.6, Parity::Even).is_err());
        assert!(CsEcsParams::new(c(1.0, 0.0), 1, 1, 1.2, 0.0, 1.0, 0.0, Parity::Even).is_err());
        assert!(CsEcsParams::from_r(c(1.0, 0.0), 1, 1, 0.4, 0.4, Parity::Even).is_ok());
    }

    #[test]
    fn zero_order_quartet() {
        let p = CsEcsParams::eecs(c(1.3, -0.4), Parity::Even);
        let q = overlap_quartet(&p);
        let g = (-2.0 * p.alpha.norm_sqr()).exp();
        assert_eq!(q.a1, 1.0);
        assert_eq!(q.b1, 1.0);
        assert_relative_eq!(q.a2, g, max_relative = 1e-14);
        assert_relative_eq!(q.b2, g, max_relative = 1e-14);
    }

    #[test]
    fn symmetric_first_order_quartet() {
        // alpha = 1, m = n = 1, t = r = 1/sqrt(2): A1 = |sqrt(2)|^2 + 1/2 = 2.5,
        // A2 = (1/2 - 0) e^{-2}.
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let p = CsEcsParams::new(c(1.0, 0.0), 1, 1, s, s, s, s, Parity::Even).unwrap();
        let q = overlap_quartet(&p);
        assert_relative_eq!(q.a1, 2.5, max_relative = 1e-13);
        assert_relative_eq!(q.b1, 2.5, max_relative = 1e-13);
        assert_relative_eq!(q.a2, 0.5 * (-2.0_f64).exp(), max_relative = 1e-13);
        assert_relative_eq!(q.b2, 0.5 * (-2.0_f64).exp(), max_relative = 1e-13);
    }

    #[test]
    fn pure_addition_limit_matches_laguerre_form() {
        // t = 0, r = 1: A1 = m! L_m(-|α|^2), A2 = m! e^{-2|α|^2} L_m(|α|^2).
        let p = CsEcsParams::new(c(1.0, 0.0), 1, 0, 0.0, 1.0, 1.0, 0.0, Parity::Even).unwrap();
        let q = overlap_quartet(&p);
        assert_relative_eq!(q.a1, 2.0, max_relative = 1e-13);
        assert_abs_diff_eq!(q.a2, 0.0, epsilon = 1e-13);
        for m in 0..=4_u32 {
            for &(re, im) in &[(0.7, 0.0), (1.2, 0.5)] {
                let alpha = c(re, im);
                let x = alpha.norm_sqr();
                let (a1, a2, _, _) = mode_overlaps(alpha, m, 0.0, 1.0);
                let fact = ln_factorial(m).exp();
                assert_relative_eq!(a1, fact * laguerre(m, -x), max_relative = 1e-12);
                assert_relative_eq!(
                    a2,
                    fact * (-2.0 * x).exp() * laguerre(m, x),
                    max_relative = 1e-12,
                    epsilon = 1e-14
                );
            }
        }
    }

    #[test]
    fn pure_subtraction_limit_matches_eigenvalue_form() {
        // t = 1, r = 0: A1 = |α|^{2m}, A2 = (-1)^m |α|^{2m} e^{-2|α|^2}.
        for m in 0..=4_u32 {
            for &(re, im) in &[(1.0, 0.0), (0.6, -0.9)] {
                let alpha = c(re, im);
                let x = alpha.norm_sqr();
                let (a1, a2, _, _) = mode_overlaps(alpha, m, 1.0, 0.0);
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                assert_relative_eq!(a1, x.powi(m as i32), max_relative = 1e-12);
                assert_relative_eq!(
                    a2,
                    sign * x.powi(m as i32) * (-2.0 * x).exp(),
                    max_relative = 1e-12
                );
            }
        }
    }

    #[test]
    fn branch_switch_is_continuous() {
        // Quartet values on either side of t r = TAU_SWITCH agree far below
        // the 1e-8 continuity budget, because the series branch is exact.
        for &(re, im) in &[(1.0, 0.0), (0.6, 0.3)] {
            let alpha = c(re, im);
            for order in 1..=3_u32 {
                let t_hi = 1.0000001e-6;
                let t_lo = 0.9999999e-6;
                let hi = mode_overlaps(alpha, order, t_hi, (1.0 - t_hi * t_hi).sqrt());
                let lo = mode_overlaps(alpha, order, t_lo, (1.0 - t_lo * t_lo).sqrt());
                assert_relative_eq!(hi.0, lo.0, max_relative = 1e-8);
                assert_relative_eq!(hi.1, lo.1, max_relative = 1e-8, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn sweep_to_pure_addition_is_continuous() {
        let alpha = c(1.1, 0.2);
        let mut prev: Option<(f64, f64)> = None;
        let mut t = 1e-5_f64;
        while t > 1e-9 {
            let r = (1.0 - t * t).sqrt();
            let (a1, a2, _, _) = mode_overlaps(alpha, 2, t, r);
            if let Some((p1, p2)) = prev {
                assert_relative_eq!(a1, p1, max_relative = 1e-4);
                assert_relative_eq!(a2, p2, max_relative = 1e-4);
            }
            prev = Some((a1, a2));
            t /= 2.0;
        }
        let (a1, a2, _, _) = mode_overlaps(alpha, 2, 0.0, 1.0);
        let (p1, p2) = prev.unwrap();
        assert_relative_eq!(a1, p1, max_relative = 1e-6);
        assert_relative_eq!(a2, p2, max_relative = 1e-6);
    }

    #[test]
    fn normalization_examples() {
        // alpha = 0, m = n = 0, even: N^{-2} = 2 (1 + 1) = 4.
        let p = CsEcsParams::eecs(c(0.0, 0.0), Parity::Even);
        let n = normalization(&p).unwrap();
        assert_abs_diff_eq!(n.inv_square, 4.0, epsilon = 1e-14);
        assert_abs_diff_eq!(n.n_factor, 0.5, epsilon = 1e-14);

        // alpha = 1, m = n = 1, t = r = 1/sqrt(2): 12.5 + 0.5 e^{-4}.
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let p = CsEcsParams::new(c(1.0, 0.0), 1, 1, s, s, s, s, Parity::Even).unwrap();
        let n = normalization(&p).unwrap();
        assert_relative_eq!(n.inv_square, 12.509157819444367, max_relative = 1e-13);
        assert_relative_eq!(n.n_factor, n.inv_square.sqrt().recip(), max_relative = 1e-15);
    }

    #[test]
    fn odd_state_vanishes_at_origin() {
        let p = CsEcsParams::eecs(c(0.0, 0.0), Parity::Odd);
        assert!(matches!(normalization(&p), Err(CsecsError::DegenerateState(_))));
    }

    #[test]
    fn excited_normalization_examples() {
        assert_abs_diff_eq!(excited_normalization(c(0.0, 0.0), 0, 0), 4.0, epsilon = 1e-14);
        // 2 [L_1(-1)^2 + e^{-4} L_1(1)^2] = 8 since L_1(1) = 0.
        assert_relative_eq!(excited_normalization(c(1.0, 0.0), 1, 1), 8.0, max_relative = 1e-13);
        // 2 * 2! * [L_2(-1) + e^{-4} L_2(1)] with L_2(-1) = 3.5, L_2(1) = -0.5.
        assert_relative_eq!(
            excited_normalization(c(1.0, 0.0), 2, 0),
            13.963368722222532,
            max_relative = 1e-13
        );
    }

    #[test]
    fn excited_normalization_consistent_with_general_route() {
        for m in 0..=3_u32 {
            for n in 0..=3_u32 {
                for &a in &[0.5, 1.0, 1.6] {
                    let p = CsEcsParams::new(c(a, 0.0), m, n, 0.0, 1.0, 0.0, 1.0, Parity::Even).unwrap();
                    let general = normalization(&p).unwrap().inv_square;
                    let special = excited_normalization(p.alpha, m, n);
                    assert_relative_eq!(general, special, max_relative = 1e-12);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn diagonal_dominates_cross(
            amag in 0.05_f64..2.0,
            phase in 0.0_f64..std::f64::consts::TAU,
            t in 0.0_f64..=1.0,
            m in 0_u32..=4,
        ) {
            // Cauchy-Schwarz on the underlying inner products.
            let alpha = Complex64::from_polar(amag, phase);
            let r = (1.0 - t * t).sqrt();
            let (a1, a2, _, _) = mode_overlaps(alpha, m, t, r);
            prop_assert!(a1 >= 0.0);
            prop_assert!(a1 >= a2.abs() - 1e-10 * a1.max(1.0));
        }

        #[test]
        fn mode_swap_symmetry(
            amag in 0.05_f64..2.0,
            phase in 0.0_f64..std::f64::consts::TAU,
            ta in 0.0_f64..=1.0,
            tb in 0.0_f64..=1.0,
            m in 0_u32..=3,
            n in 0_u32..=3,
        ) {
            let alpha = Complex64::from_polar(amag, phase);
            let p = CsEcsParams::from_t(alpha, m, n, ta, tb, Parity::Even).unwrap();
            let q = overlap_quartet(&p);
            let qs = overlap_quartet(&p.swapped_modes());
            prop_assert!((q.a1 - qs.b1).abs() <= 1e-12 * q.a1.abs().max(1.0));
            prop_assert!((q.a2 - qs.b2).abs() <= 1e-12 * q.a2.abs().max(1.0));
            prop_assert!((q.b1 - qs.a1).abs() <= 1e-12 * q.b1.abs().max(1.0));
        }

        #[test]
        fn conjugating_alpha_leaves_quartet_unchanged(
            amag in 0.05_f64..2.0,
            phase in 0.0_f64..std::f64::consts::TAU,
            t in 0.0_f64..=1.0,
            m in 0_u32..=3,
        ) {
            let alpha = Complex64::from_polar(amag, phase);
            let r = (1.0 - t * t).sqrt();
            let (a1, a2, _, _) = mode_overlaps(alpha, m, t, r);
            let (c1, c2, _, _) = mode_overlaps(alpha.conj(), m, t, r);
            prop_assert!((a1 - c1).abs() <= 1e-10 * a1.abs().max(1.0));
            prop_assert!((a2 - c2).abs() <= 1e-10 * a2.abs().max(1.0));
        }
    }
}
