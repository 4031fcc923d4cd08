//! Brute-force engine over truncated Fock spaces.
//!
//! States are built by literally applying `(r a† + t a)` to coherent-state
//! expansions; norms, moments, entanglement, characteristic functions and the
//! teleportation-fidelity integral are then evaluated numerically. Nothing in
//! this module touches the closed forms elsewhere in the crate, so it serves
//! as the independent oracle they are all tested against.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{CsecsError, Result};
use crate::exec;
use crate::quad::GaussHermite;
use crate::special::{assoc_laguerre, ln_factorial};
use crate::state::CsEcsParams;

/// Relative norm loss tolerated when displacing a truncated state.
const DISPLACEMENT_TAIL_TOL: f64 = 1e-8;

/// Convergence budget for the quadrature doubling check.
const QUADRATURE_CONVERGENCE_TOL: f64 = 1e-6;

/// A single-mode state as Fock coefficients `c_k = <k|psi>`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    pub coeffs: Vec<Complex64>,
}

impl FockVector {
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Fraction of the norm sitting in the topmost coefficient; a cheap
    /// truncation diagnostic.
    pub fn tail_fraction(&self) -> f64 {
        let total = self.norm_sqr();
        if total == 0.0 {
            return 0.0;
        }
        self.coeffs.last().map_or(0.0, |c| c.norm_sqr()) / total
    }

    fn padded_to(&self, len: usize) -> FockVector {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(len, Complex64::default());
        FockVector { coeffs }
    }
}

/// Fock cutoff plus the tail mass allowed to fall outside it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationConfig {
    pub n_max: usize,
    pub tail_tol: f64,
}

impl TruncationConfig {
    pub fn new(n_max: usize, tail_tol: f64) -> Result<Self> {
        if n_max < 4 {
            return Err(CsecsError::InvalidParams(format!("n_max = {n_max} is below the minimum of 4")));
        }
        if !(tail_tol > 0.0) {
            return Err(CsecsError::InvalidParams("tail_tol must be positive".into()));
        }
        Ok(TruncationConfig { n_max, tail_tol })
    }

    /// Cutoff heuristic `ceil(|α|^2 + 8 |α| + 20)`; the Poisson photon-number
    /// tail of a coherent state is then far below the default tolerance.
    pub fn auto(alpha: Complex64) -> Self {
        let a = alpha.norm();
        TruncationConfig {
            n_max: (a * a + 8.0 * a + 20.0).ceil() as usize,
            tail_tol: 1e-10,
        }
    }

    /// [`Self::auto`] unless an explicit cutoff override is supplied.
    pub fn auto_or(alpha: Complex64, n_max: Option<usize>) -> Self {
        match n_max {
            Some(n) => TruncationConfig { n_max: n, tail_tol: 1e-10 },
            None => Self::auto(alpha),
        }
    }
}

impl Default for TruncationConfig {
    fn default() -> Self {
        TruncationConfig { n_max: 40, tail_tol: 1e-10 }
    }
}

/// Truncated expansion of `|α⟩`, `c_k = e^{-|α|^2/2} α^k / sqrt(k!)`.
pub fn coherent_vector(alpha: Complex64, cfg: &TruncationConfig) -> Result<FockVector> {
    let mut coeffs = Vec::with_capacity(cfg.n_max + 1);
    let mut c = Complex64::new((-alpha.norm_sqr() / 2.0).exp(), 0.0);
    coeffs.push(c);
    for k in 1..=cfg.n_max {
        c *= alpha / (k as f64).sqrt();
        coeffs.push(c);
    }
    let v = FockVector { coeffs };
    let tail = (1.0 - v.norm_sqr()).max(0.0);
    if tail > cfg.tail_tol {
        return Err(CsecsError::Truncation { tail, tol: cfg.tail_tol });
    }
    Ok(v)
}

/// Applies `(r a† + t a)` to the vector `order` times:
/// `(Av)_k = r sqrt(k) v_{k-1} + t sqrt(k+1) v_{k+1}`.
///
/// The result is unnormalized. Errors if a creation step would push a
/// nonzero coefficient past the cutoff; callers give themselves headroom by
/// zero-padding first.
pub fn apply_superposition_op(v: &FockVector, t: f64, r: f64, order: u32) -> Result<FockVector> {
    let mut cur = v.coeffs.clone();
    let len = cur.len();
    for step in 0..order {
        if r != 0.0 && len > 0 && cur[len - 1] != Complex64::default() {
            return Err(CsecsError::Headroom(format!(
                "step {} of {} with occupied top coefficient (len {})",
                step + 1,
                order,
                len
            )));
        }
        let mut next = vec![Complex64::default(); len];
        for k in 0..len {
            let mut c = Complex64::default();
            if r != 0.0 && k > 0 {
                c += r * (k as f64).sqrt() * cur[k - 1];
            }
            if t != 0.0 && k + 1 < len {
                c += t * ((k + 1) as f64).sqrt() * cur[k + 1];
            }
            next[k] = c;
        }
        cur = next;
    }
    Ok(FockVector { coeffs: cur })
}

/// Two-mode state as the coefficient matrix `c_{jk} = <j|_a <k|_b |psi>`,
/// stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeFockState {
    dim: usize,
    coeffs: Vec<Complex64>,
    pre_norm_sqr: f64,
}

impl TwoModeFockState {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeff(&self, j: usize, k: usize) -> Complex64 {
        self.coeffs[j * self.dim + k]
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Squared norm of the unnormalized superposition the state was built
    /// from; equals `2 (A1 B1 ± A2 B2)` up to truncation error.
    pub fn pre_norm_sqr(&self) -> f64 {
        self.pre_norm_sqr
    }

    /// Norm fraction in the last row and column.
    pub fn tail_mass(&self) -> f64 {
        let d = self.dim;
        let mut tail = 0.0;
        for k in 0..d {
            tail += self.coeff(d - 1, k).norm_sqr();
            tail += self.coeff(k, d - 1).norm_sqr();
        }
        tail -= self.coeff(d - 1, d - 1).norm_sqr();
        tail / self.norm_sqr()
    }

    fn from_rank_two(
        dim: usize,
        up: &FockVector,
        wp: &FockVector,
        um: &FockVector,
        wm: &FockVector,
        sign: f64,
    ) -> Result<Self> {
        let mut coeffs = vec![Complex64::default(); dim * dim];
        for j in 0..dim {
            let (uj_p, uj_m) = (up.coeffs[j], um.coeffs[j]);
            let row = &mut coeffs[j * dim..(j + 1) * dim];
            for k in 0..dim {
                row[k] = uj_p * wp.coeffs[k] + sign * uj_m * wm.coeffs[k];
            }
        }
        let pre_norm_sqr: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
        if pre_norm_sqr < 1e-300 {
            return Err(CsecsError::DegenerateState(format!(
                "pre-normalization squared norm {pre_norm_sqr:.3e}"
            )));
        }
        let inv = pre_norm_sqr.sqrt().recip();
        for c in &mut coeffs {
            *c *= inv;
        }
        Ok(TwoModeFockState { dim, coeffs, pre_norm_sqr })
    }
}

/// Builds the normalized state
/// `(r_A a† + t_A a)^m (r_B b† + t_B b)^n (|α,α⟩ ± |-α,-α⟩) / ||.||`
/// on a grid with `m + n` rows of creation headroom above `cfg.n_max`.
pub fn build_cs_eecs(params: &CsEcsParams, cfg: &TruncationConfig) -> Result<TwoModeFockState> {
    let dim = cfg.n_max + params.m as usize + params.n as usize + 1;
    let vp = coherent_vector(params.alpha, cfg)?.padded_to(dim);
    let vm = coherent_vector(-params.alpha, cfg)?.padded_to(dim);
    let up = apply_superposition_op(&vp, params.t_a, params.r_a, params.m)?;
    let um = apply_superposition_op(&vm, params.t_a, params.r_a, params.m)?;
    let wp = apply_superposition_op(&vp, params.t_b, params.r_b, params.n)?;
    let wm = apply_superposition_op(&vm, params.t_b, params.r_b, params.n)?;
    TwoModeFockState::from_rank_two(dim, &up, &wp, &um, &wm, params.parity.sign())
}

/// Mode occupations and the pair correlators of a normalized state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeMoments {
    pub n_a: f64,
    pub n_b: f64,
    pub ab: Complex64,
    pub adbd: Complex64,
}

/// `<a†a>`, `<b†b>`, `<ab>` and `<a†b†>`; for a pure state the last is the
/// conjugate of `<ab>` (checked in debug builds).
pub fn mode_moments(s: &TwoModeFockState) -> ModeMoments {
    let d = s.dim();
    let mut n_a = 0.0;
    let mut n_b = 0.0;
    let mut ab = Complex64::default();
    let mut adbd = Complex64::default();
    for j in 0..d {
        for k in 0..d {
            let c = s.coeff(j, k);
            let p = c.norm_sqr();
            n_a += j as f64 * p;
            n_b += k as f64 * p;
            if j + 1 < d && k + 1 < d {
                let root = ((j + 1) as f64).sqrt() * ((k + 1) as f64).sqrt();
                ab += c.conj() * root * s.coeff(j + 1, k + 1);
                adbd += s.coeff(j + 1, k + 1).conj() * root * c;
            }
        }
    }
    debug_assert!((adbd - ab.conj()).norm() <= 1e-12 * ab.norm().max(1.0));
    ModeMoments { n_a, n_b, ab, adbd }
}

/// Concurrence `sqrt(2 (1 - Tr rho_A^2))` from the reduced density matrix of
/// mode a.
pub fn concurrence_oracle(s: &TwoModeFockState) -> f64 {
    let d = s.dim();
    // rho_A = c c†; Tr rho_A^2 is its squared Frobenius norm.
    let mut tr2 = 0.0;
    for j in 0..d {
        for jp in 0..=j {
            let mut e = Complex64::default();
            for k in 0..d {
                e += s.coeff(j, k) * s.coeff(jp, k).conj();
            }
            tr2 += if j == jp { e.norm_sqr() } else { 2.0 * e.norm_sqr() };
        }
    }
    (2.0 * (1.0 - tr2)).max(0.0).sqrt()
}

/// Fock matrix element of the displacement operator,
/// `<j|D(η)|k> = sqrt(k!/j!) η^{j-k} e^{-|η|^2/2} L_k^{j-k}(|η|^2)` for
/// `j >= k`, and `<j|D(η)|k> = conj(<k|D(-η)|j>)` otherwise.
pub fn displacement_element(row: usize, col: usize, eta: Complex64) -> Complex64 {
    if row >= col {
        let x = eta.norm_sqr();
        let fac = (0.5 * (ln_factorial(col as u32) - ln_factorial(row as u32))).exp();
        fac * eta.powu((row - col) as u32)
            * (-x / 2.0).exp()
            * assoc_laguerre(col as u32, (row - col) as u32, x)
    } else {
        displacement_element(col, row, -eta).conj()
    }
}

/// Dense `dim x dim` displacement matrix, filled diagonal-by-diagonal with
/// the associated-Laguerre recurrence (same elements as
/// [`displacement_element`], O(dim^2) instead of O(dim^3)).
pub fn displacement_matrix(dim: usize, eta: Complex64) -> Vec<Complex64> {
    let mut mat = vec![Complex64::default(); dim * dim];
    let x = eta.norm_sqr();
    let pre = (-x / 2.0).exp();
    let mut lag = vec![0.0; dim];
    for off in 0..dim {
        let ncols = dim - off;
        // L_n^off(x) for n = 0..ncols-1.
        lag[0] = 1.0;
        if ncols > 1 {
            lag[1] = 1.0 + off as f64 - x;
            for n in 1..ncols - 1 {
                let nf = n as f64;
                lag[n + 1] =
                    ((2.0 * nf + 1.0 + off as f64 - x) * lag[n] - (nf + off as f64) * lag[n - 1]) / (nf + 1.0);
            }
        }
        let eta_off = eta.powu(off as u32);
        let eta_off_neg = (-eta).powu(off as u32);
        for k in 0..ncols {
            let fac = (0.5 * (ln_factorial(k as u32) - ln_factorial((k + off) as u32))).exp();
            mat[(k + off) * dim + k] = fac * eta_off * pre * lag[k];
            if off > 0 {
                mat[k * dim + (k + off)] = (fac * eta_off_neg * pre * lag[k]).conj();
            }
        }
    }
    mat
}

fn mat_mul(a: &[Complex64], b: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::default(); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == Complex64::default() {
                continue;
            }
            let brow = &b[k * n..(k + 1) * n];
            let orow = &mut out[i * n..(i + 1) * n];
            for j in 0..n {
                orow[j] += aik * brow[j];
            }
        }
    }
    out
}

fn mat_mul_transpose_rhs(a: &[Complex64], b: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::default(); n * n];
    for i in 0..n {
        let arow = &a[i * n..(i + 1) * n];
        for j in 0..n {
            let brow = &b[j * n..(j + 1) * n];
            let mut acc = Complex64::default();
            for k in 0..n {
                acc += arow[k] * brow[k];
            }
            out[i * n + j] = acc;
        }
    }
    out
}

fn char_function_raw(s: &TwoModeFockState, eta: Complex64, gamma: Complex64) -> (Complex64, f64) {
    let d = s.dim();
    let da = displacement_matrix(d, eta);
    let db = displacement_matrix(d, gamma);
    let tmp = mat_mul_transpose_rhs(s.coeffs(), &db, d);
    let w = mat_mul(&da, &tmp, d);
    let mut chi = Complex64::default();
    let mut wnorm = 0.0;
    for (c, wv) in s.coeffs().iter().zip(&w) {
        chi += c.conj() * wv;
        wnorm += wv.norm_sqr();
    }
    let deficit = (s.norm_sqr() - wnorm).abs() / s.norm_sqr();
    (chi, deficit)
}

/// Characteristic function `χ(η, γ) = <psi| D_a(η) D_b(γ) |psi>` by dense
/// matrix products. Errors when the displaced state loses more than 1e-8 of
/// its norm past the cutoff.
pub fn char_function(s: &TwoModeFockState, eta: Complex64, gamma: Complex64) -> Result<Complex64> {
    let (chi, deficit) = char_function_raw(s, eta, gamma);
    if deficit > DISPLACEMENT_TAIL_TOL {
        return Err(CsecsError::Truncation { tail: deficit, tol: DISPLACEMENT_TAIL_TOL });
    }
    Ok(chi)
}

/// One pass of the fidelity integral
/// `F = ∫ d^2 z / π e^{-|z|^2} χ(-z*, -z)` on an `order x order`
/// Gauss-Hermite grid.
///
/// Because `D(-η) = D(η)†` holds exactly for the truncated matrices, the
/// value at the mirrored node `(-x, -y)` is the conjugate of the value at
/// `(x, y)`; each pair is folded into `2 Re(w χ)`, which also makes the sum
/// real by construction. Far nodes are weight-suppressed faster than any
/// truncation loss grows, so no per-node tail check is applied here; the
/// doubling check in [`fidelity_by_quadrature`] guards convergence.
fn fidelity_quad_pass(s: &TwoModeFockState, order: usize) -> f64 {
    let rule = GaussHermite::new(order);
    let mut pairs = Vec::with_capacity(order * order / 2 + 1);
    for i in 0..order {
        for j in 0..order {
            if (i, j) <= (order - 1 - i, order - 1 - j) {
                pairs.push((i, j));
            }
        }
    }
    let nodes = rule.nodes();
    let weights = rule.weights();
    let contributions = exec::map_indexed(pairs, |(i, j)| {
        let z = Complex64::new(nodes[i], nodes[j]);
        let (chi, _) = char_function_raw(s, -z.conj(), -z);
        let w = weights[i] * weights[j];
        if (i, j) == (order - 1 - i, order - 1 - j) {
            w * chi.re
        } else {
            2.0 * w * chi.re
        }
    });
    contributions.iter().sum::<f64>() / PI
}

/// Braunstein-Kimble fidelity of teleporting a coherent state through `s`,
/// by two-dimensional Gauss-Hermite quadrature with a doubling convergence
/// check. Returns the refined (doubled-order) value.
pub fn fidelity_by_quadrature(s: &TwoModeFockState, quad_order: usize) -> Result<f64> {
    if quad_order < 20 {
        return Err(CsecsError::InvalidParams(format!(
            "quad_order = {quad_order} is below the minimum of 20"
        )));
    }
    let coarse = fidelity_quad_pass(s, quad_order);
    let fine = fidelity_quad_pass(s, 2 * quad_order);
    let delta = (coarse - fine).abs();
    if delta > QUADRATURE_CONVERGENCE_TOL {
        return Err(CsecsError::Convergence { delta, tol: QUADRATURE_CONVERGENCE_TOL });
    }
    Ok(fine)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::Parity;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn eecs(alpha: f64) -> TwoModeFockState {
        let p = CsEcsParams::eecs(c(alpha, 0.0), Parity::Even);
        build_cs_eecs(&p, &TruncationConfig::default()).unwrap()
    }

    #[test]
    fn coherent_vector_examples() {
        let cfg = TruncationConfig { n_max: 10, tail_tol: 1e-10 };
        let v = coherent_vector(c(0.0, 0.0), &cfg).unwrap();
        assert_eq!(v.coeffs[0], c(1.0, 0.0));
        assert!(v.coeffs[1..].iter().all(|&x| x == Complex64::default()));

        let cfg = TruncationConfig::default();
        let v = coherent_vector(c(1.0, 0.0), &cfg).unwrap();
        assert_abs_diff_eq!(v.norm_sqr(), 1.0, epsilon = 1e-12);
        // c_2 / c_0 = alpha^2 / sqrt(2!).
        let ratio = v.coeffs[2] / v.coeffs[0];
        assert_relative_eq!(ratio.re, std::f64::consts::FRAC_1_SQRT_2, max_relative = 1e-12);
    }

    #[test]
    fn coherent_vector_truncation_error() {
        let cfg = TruncationConfig { n_max: 10, tail_tol: 1e-10 };
        assert!(matches!(
            coherent_vector(c(5.0, 0.0), &cfg),
            Err(CsecsError::Truncation { .. })
        ));
    }

    #[test]
    fn apply_superposition_basics() {
        let vac = FockVector {
            coeffs: {
                let mut v = vec![Complex64::default(); 8];
                v[0] = c(1.0, 0.0);
                v
            },
        };
        // a|0> = 0.
        let out = apply_superposition_op(&vac, 1.0, 0.0, 1).unwrap();
        assert!(out.coeffs.iter().all(|&x| x == Complex64::default()));
        // a†|0> = |1>.
        let out = apply_superposition_op(&vac, 0.0, 1.0, 1).unwrap();
        assert_eq!(out.coeffs[1], c(1.0, 0.0));
        assert_abs_diff_eq!(out.norm_sqr(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn coherent_state_is_annihilation_eigenvector() {
        let v = coherent_vector(c(1.0, 0.0), &TruncationConfig::default()).unwrap();
        let av = apply_superposition_op(&v, 1.0, 0.0, 1).unwrap();
        let diff: f64 = av
            .coeffs
            .iter()
            .zip(&v.coeffs)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(diff < 1e-10, "residual {diff}");
    }

    #[test]
    fn headroom_violation_detected() {
        let full = FockVector { coeffs: vec![c(1.0, 0.0); 6] };
        assert!(matches!(
            apply_superposition_op(&full, 0.0, 1.0, 1),
            Err(CsecsError::Headroom(_))
        ));
    }

    #[test]
    fn build_examples() {
        // alpha = 0, even, m = n = 0 -> |0,0>.
        let p = CsEcsParams::eecs(c(0.0, 0.0), Parity::Even);
        let s = build_cs_eecs(&p, &TruncationConfig::default()).unwrap();
        assert_abs_diff_eq!(s.coeff(0, 0).re, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(s.norm_sqr(), 1.0, epsilon = 1e-12);

        // alpha = 1, m = n = 0: pre-norm^2 / 2 = 1 + e^{-4}.
        let s = eecs(1.0);
        assert_relative_eq!(s.pre_norm_sqr() / 2.0, 1.0 + (-4.0_f64).exp(), max_relative = 1e-10);

        // alpha = 1, m = n = 1, t = r = 1/sqrt(2): pre-norm^2 / 2 = A1 B1 + A2 B2.
        let sq = std::f64::consts::FRAC_1_SQRT_2;
        let p = CsEcsParams::new(c(1.0, 0.0), 1, 1, sq, sq, sq, sq, Parity::Even).unwrap();
        let s = build_cs_eecs(&p, &TruncationConfig::default()).unwrap();
        let expect = 6.25 + 0.25 * (-4.0_f64).exp();
        assert_relative_eq!(s.pre_norm_sqr() / 2.0, expect, max_relative = 1e-10);
    }

    #[test]
    fn odd_state_at_origin_is_degenerate() {
        let p = CsEcsParams::eecs(c(0.0, 0.0), Parity::Odd);
        assert!(matches!(
            build_cs_eecs(&p, &TruncationConfig::default()),
            Err(CsecsError::DegenerateState(_))
        ));
    }

    #[test]
    fn moments_examples() {
        let p = CsEcsParams::eecs(c(0.0, 0.0), Parity::Even);
        let s = build_cs_eecs(&p, &TruncationConfig::default()).unwrap();
        let m = mode_moments(&s);
        assert_abs_diff_eq!(m.n_a, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(m.ab.norm(), 0.0, epsilon = 1e-14);

        // EECS at alpha = 1: <a†a> = tanh 2, <ab> = 1.
        let m = mode_moments(&eecs(1.0));
        assert_relative_eq!(m.n_a, 2.0_f64.tanh(), max_relative = 1e-10);
        assert_relative_eq!(m.n_b, 2.0_f64.tanh(), max_relative = 1e-10);
        assert_relative_eq!(m.ab.re, 1.0, max_relative = 1e-10);
        assert_abs_diff_eq!(m.ab.im, 0.0, epsilon = 1e-12);
        assert!((m.adbd - m.ab.conj()).norm() < 1e-12);
    }

    #[test]
    fn pair_annihilation_eigenstate() {
        // ab |Psi+(alpha,0,0)> = alpha^2 |Psi+(alpha,0,0)>.
        let s = eecs(1.0);
        let d = s.dim();
        let mut residual = 0.0;
        for j in 0..d - 1 {
            for k in 0..d - 1 {
                let lowered =
                    ((j + 1) as f64).sqrt() * ((k + 1) as f64).sqrt() * s.coeff(j + 1, k + 1);
                residual += (lowered - s.coeff(j, k)).norm_sqr();
            }
        }
        assert!(residual.sqrt() < 1e-9, "residual {}", residual.sqrt());
    }

    #[test]
    fn concurrence_oracle_examples() {
        let p = CsEcsParams::eecs(c(0.0, 0.0), Parity::Even);
        let s = build_cs_eecs(&p, &TruncationConfig::default()).unwrap();
        assert_abs_diff_eq!(concurrence_oracle(&s), 0.0, epsilon = 1e-10);

        // Bell state (|0,1> + |1,0>)/sqrt(2).
        let dim = 4;
        let mut coeffs = vec![Complex64::default(); dim * dim];
        coeffs[1] = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        coeffs[dim] = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let bell = TwoModeFockState { dim, coeffs, pre_norm_sqr: 1.0 };
        assert_relative_eq!(concurrence_oracle(&bell), 1.0, max_relative = 1e-12);

        assert_relative_eq!(concurrence_oracle(&eecs(1.0)), 2.0_f64.tanh(), max_relative = 1e-9);
    }

    #[test]
    fn reduced_trace_is_one() {
        let sq = std::f64::consts::FRAC_1_SQRT_2;
        let p = CsEcsParams::new(c(1.3, 0.4), 2, 1, sq, sq, 0.3, (1.0_f64 - 0.09).sqrt(), Parity::Odd)
            .unwrap();
        let s = build_cs_eecs(&p, &TruncationConfig::default()).unwrap();
        let d = s.dim();
        let mut trace = 0.0;
        for j in 0..d {
            for k in 0..d {
                trace += s.coeff(j, k).norm_sqr();
            }
        }
        assert_abs_diff_eq!(trace, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn displacement_element_examples() {
        let eta = c(0.4, -0.3);
        assert_relative_eq!(
            displacement_element(0, 0, eta).re,
            (-eta.norm_sqr() / 2.0).exp(),
            max_relative = 1e-14
        );
        let d10 = displacement_element(1, 0, eta);
        let want = eta * (-eta.norm_sqr() / 2.0).exp();
        assert!((d10 - want).norm() < 1e-14);
        for j in 0..5 {
            for k in 0..5 {
                let v = displacement_element(j, k, Complex64::default());
                let want = if j == k { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(v.re, want, epsilon = 1e-14);
                assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn displacement_matrix_matches_elements_and_is_unitary() {
        let dim = 32;
        let eta = c(0.7, 0.2);
        let mat = displacement_matrix(dim, eta);
        for j in 0..dim {
            for k in 0..dim {
                let e = displacement_element(j, k, eta);
                assert!((mat[j * dim + k] - e).norm() < 1e-12, "({j},{k})");
            }
        }
        // D† D = I up to truncation, far from the cutoff.
        for j in 0..12 {
            for k in 0..12 {
                let mut acc = Complex64::default();
                for l in 0..dim {
                    acc += mat[l * dim + j].conj() * mat[l * dim + k];
                }
                let want = if j == k { 1.0 } else { 0.0 };
                assert!((acc - c(want, 0.0)).norm() < 1e-10, "({j},{k}): {acc}");
            }
        }
    }

    #[test]
    fn char_function_examples() {
        let s = eecs(1.0);
        let chi = char_function(&s, Complex64::default(), Complex64::default()).unwrap();
        assert!((chi - c(1.0, 0.0)).norm() < 1e-12);

        // Vacuum: chi = e^{-(|eta|^2 + |gamma|^2)/2}.
        let p = CsEcsParams::eecs(c(0.0, 0.0), Parity::Even);
        let vac = build_cs_eecs(&p, &TruncationConfig::default()).unwrap();
        let (eta, gamma) = (c(0.3, 0.5), c(-0.2, 0.1));
        let chi = char_function(&vac, eta, gamma).unwrap();
        let want = (-(eta.norm_sqr() + gamma.norm_sqr()) / 2.0).exp();
        assert!((chi - c(want, 0.0)).norm() < 1e-12);

        // EECS at m = n = 0 reduces to a four-term Gaussian sum.
        let alpha = c(1.0, 0.0);
        let (eta, gamma) = (c(0.3, 0.0), c(-0.2, 0.0));
        let chi = char_function(&s, eta, gamma).unwrap();
        let cf = |beta: Complex64, ket: Complex64, e: Complex64| {
            (-e.norm_sqr() / 2.0 + e * beta.conj() - e.conj() * ket).exp()
        };
        let g4 = (-4.0 * alpha.norm_sqr()).exp();
        let n2 = (2.0 * (1.0 + g4)).recip();
        let want = n2
            * (cf(alpha, alpha, eta) * cf(alpha, alpha, gamma)
                + cf(-alpha, -alpha, eta) * cf(-alpha, -alpha, gamma)
                + g4 * (cf(alpha, -alpha, eta) * cf(alpha, -alpha, gamma)
                    + cf(-alpha, alpha, eta) * cf(-alpha, alpha, gamma)));
        assert!((chi - want).norm() < 1e-8, "chi={chi} want={want}");
    }

    #[test]
    fn char_function_conjugation() {
        let sq = std::f64::consts::FRAC_1_SQRT_2;
        let p = CsEcsParams::new(c(0.9, 0.3), 1, 1, sq, sq, sq, sq, Parity::Even).unwrap();
        let s = build_cs_eecs(&p, &TruncationConfig::default()).unwrap();
        for &(er, ei, gr, gi) in &[(0.3, -0.2, 0.1, 0.4), (0.05, 0.6, -0.3, -0.1)] {
            let (eta, gamma) = (c(er, ei), c(gr, gi));
            let a = char_function(&s, -eta, -gamma).unwrap();
            let b = char_function(&s, eta, gamma).unwrap().conj();
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn char_function_truncation_guard() {
        let s = eecs(1.0);
        assert!(matches!(
            char_function(&s, c(5.5, 0.0), c(0.0, 0.0)),
            Err(CsecsError::Truncation { .. })
        ));
    }

    #[test]
    fn fidelity_quadrature_examples() {
        // |0,0>: F = 1/2.
        let p = CsEcsParams::eecs(c(0.0, 0.0), Parity::Even);
        let vac = build_cs_eecs(&p, &TruncationConfig::default()).unwrap();
        assert_abs_diff_eq!(fidelity_by_quadrature(&vac, 24).unwrap(), 0.5, epsilon = 1e-9);

        // EECS at alpha = 1: (1 + e^{-2}) / (2 (1 + e^{-4})).
        let want = (1.0 + (-2.0_f64).exp()) / (2.0 * (1.0 + (-4.0_f64).exp()));
        assert_abs_diff_eq!(fidelity_by_quadrature(&eecs(1.0), 40).unwrap(), want, epsilon = 1e-6);
    }

    #[test]
    fn fidelity_quadrature_rejects_low_order() {
        let s = eecs(1.0);
        assert!(matches!(
            fidelity_by_quadrature(&s, 10),
            Err(CsecsError::InvalidParams(_))
        ));
    }

    #[test]
    fn truncation_stability() {
        // Reported quantities move by < 1e-8 when the cutoff grows by 10.
        let sq = std::f64::consts::FRAC_1_SQRT_2;
        let p = CsEcsParams::new(c(1.5, 0.0), 1, 1, sq, sq, sq, sq, Parity::Even).unwrap();
        let small = build_cs_eecs(&p, &TruncationConfig { n_max: 40, tail_tol: 1e-10 }).unwrap();
        let large = build_cs_eecs(&p, &TruncationConfig { n_max: 50, tail_tol: 1e-10 }).unwrap();
        let (ms, ml) = (mode_moments(&small), mode_moments(&large));
        assert!((ms.n_a - ml.n_a).abs() < 1e-8);
        assert!((ms.ab - ml.ab).norm() < 1e-8);
        assert!((concurrence_oracle(&small) - concurrence_oracle(&large)).abs() < 1e-8);
        assert!((small.pre_norm_sqr() - large.pre_norm_sqr()).abs()
            < 1e-8 * small.pre_norm_sqr().max(1.0));
    }
}
