//! Closed-form characteristic functions and the Braunstein-Kimble fidelity
//! for teleporting a coherent state through the two-mode superposition state.
//!
//! The channel characteristic function decomposes into four bra/ket branch
//! pairs; each per-mode factor is a Gaussian prefactor times a
//! [`bilinear_derivative`]. The fidelity
//! `F = ∫ d^2 z / π e^{-|z|^2} χ_E(-z*, -z)` has a closed quadruple-sum form
//! whenever both mode coefficient products `t r` stay above
//! [`TAU_SWITCH`]; below that the sum's `(t_A t_B r_A r_B)^{-(k+j)/2}`
//! weights blow up as printed, so the components fall back to Gauss-Hermite
//! quadrature over the (still closed-form) characteristic functions.
//!
//! The input coherent state enters only through its vacuum characteristic
//! function: the fidelity is independent of the input amplitude, so none is
//! exposed.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::Result;
use crate::quad::GaussHermite;
use crate::special::{bilinear_derivative, hermite, ln_factorial};
use crate::state::{normalization, CsEcsParams, TAU_SWITCH};

const FALLBACK_QUAD_ORDER: usize = 40;
const QUADRATURE_CONVERGENCE_TOL: f64 = 1e-6;

/// The four Hermite arguments `N1, N2, M1, M2` of the fidelity term for one
/// bra/ket branch pair. Zero for a mode whose `t r` product sits below the
/// switch (the closed sum is not used there).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityTermArgs {
    pub n1: Complex64,
    pub n2: Complex64,
    pub m1: Complex64,
    pub m2: Complex64,
}

/// Hermite arguments for the branch pair with bra label `bra` and ket label
/// `ket` (each `±α`).
pub fn fidelity_term_args(params: &CsEcsParams, bra: Complex64, ket: Complex64) -> FidelityTermArgs {
    let bs = bra.conj();
    let mode = |t: f64, r: f64| {
        if t * r < TAU_SWITCH {
            return (Complex64::default(), Complex64::default());
        }
        let den = Complex64::i() * (2.0 * t * r).sqrt();
        let shared = 0.5 * r * (bs + ket);
        ((bs * t + shared) / -den, (ket * t + shared) / den)
    };
    let (n1, n2) = mode(params.t_a, params.r_a);
    let (m1, m2) = mode(params.t_b, params.r_b);
    FidelityTermArgs { n1, n2, m1, m2 }
}

/// Teleportation fidelity together with its four branch components
/// `F^{α,α}, F^{-α,-α}, F^{α,-α}, F^{-α,α}` (unweighted by the normalization
/// and the cross-branch factor).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityReport {
    pub f: f64,
    pub components: [Complex64; 4],
    /// `f > 1/2`, the classical benchmark for coherent-state teleportation.
    pub above_classical: bool,
}

/// One per-mode factor of the channel characteristic function:
/// `CF_j^{bra,ket}(η) = e^{-|η|^2/2 + η bra* - η* ket} ×` the order-`order`
/// bilinear derivative with linear coefficients `(ket t - η* r + r bra*)`,
/// `(η r + r ket + bra* t)`, cross coefficient `r^2` and quadratic
/// coefficient `t r / 2`.
fn cf_component(bra: Complex64, ket: Complex64, eta: Complex64, t: f64, r: f64, order: u32) -> Complex64 {
    let bs = bra.conj();
    let pref = (-eta.norm_sqr() / 2.0 + eta * bs - eta.conj() * ket).exp();
    let a_lin = ket * t - eta.conj() * r + r * bs;
    let b_lin = eta * r + r * ket + bs * t;
    pref * bilinear_derivative(
        a_lin,
        b_lin,
        Complex64::new(r * r, 0.0),
        Complex64::new(t * r / 2.0, 0.0),
        order,
    )
}

/// Closed-form characteristic function
/// `χ_E(η, γ) = N^2 [CF_A^{α,α} CF_B^{α,α} + CF_A^{-α,-α} CF_B^{-α,-α}
/// ± e^{-4|α|^2} (CF_A^{α,-α} CF_B^{α,-α} + CF_A^{-α,α} CF_B^{-α,α})]`.
pub fn cf_closed(params: &CsEcsParams, eta: Complex64, gamma: Complex64) -> Result<Complex64> {
    let norm = normalization(params)?;
    let a = params.alpha;
    let g4 = (-4.0 * a.norm_sqr()).exp();
    let branch = |bra: Complex64, ket: Complex64| {
        cf_component(bra, ket, eta, params.t_a, params.r_a, params.m)
            * cf_component(bra, ket, gamma, params.t_b, params.r_b, params.n)
    };
    let total = branch(a, a)
        + branch(-a, -a)
        + params.parity.sign() * g4 * (branch(a, -a) + branch(-a, a));
    Ok(total / norm.inv_square)
}

fn ln_pow(exponent: u32, base: f64) -> f64 {
    if exponent == 0 {
        0.0
    } else {
        exponent as f64 * base.ln()
    }
}

/// Closed quadruple-sum form of one fidelity component; requires
/// `t r >= TAU_SWITCH` on every mode of nonzero order.
fn fidelity_term_closed(params: &CsEcsParams, bra: Complex64, ket: Complex64) -> Complex64 {
    let (m, n) = (params.m, params.n);
    let (ta, ra, tb, rb) = (params.t_a, params.r_a, params.t_b, params.r_b);
    let args = fidelity_term_args(params, bra, ket);
    let bs = bra.conj();
    let base = 2.0 * (ln_factorial(m) + ln_factorial(n)) - ((m + n) as f64) * std::f64::consts::LN_2;
    let mut sum = Complex64::default();
    for l in 0..=m {
        for f in 0..=n {
            let kmax = (m - l).min(n - f);
            for k in 0..=kmax {
                for j in 0..=kmax {
                    let ln_coef = base
                        - ln_factorial(l)
                        - ln_factorial(f)
                        - ln_factorial(k)
                        - ln_factorial(j)
                        - ln_factorial(m - l - k)
                        - ln_factorial(m - l - j)
                        - ln_factorial(n - f - k)
                        - ln_factorial(n - f - j)
                        + ln_pow(m - l, ta)
                        + ln_pow(n - f, tb)
                        + ln_pow(m + l, ra)
                        + ln_pow(n + f, rb)
                        + ln_pow(k + j, ra * rb)
                        - 0.5 * ln_pow(k + j, ta * tb * ra * rb);
                    let sign = if (k + j) % 2 == 0 { 1.0 } else { -1.0 };
                    sum += sign
                        * ln_coef.exp()
                        * hermite(m - l - k, args.n2)
                        * hermite(m - l - j, args.n1)
                        * hermite(n - f - k, args.m2)
                        * hermite(n - f - j, args.m1);
                }
            }
        }
    }
    0.5 * (0.5 * (bs - ket) * (bs - ket)).exp() * sum
}

/// Quadrature fallback for one component:
/// `F^{bra,ket} = ∫ d^2 z / π e^{-|z|^2} CF_A^{bra,ket}(-z*) CF_B^{bra,ket}(-z)`
/// with the Gauss-Hermite weight absorbing `e^{-|z|^2}`.
fn fidelity_term_quad(params: &CsEcsParams, bra: Complex64, ket: Complex64, order: usize) -> Complex64 {
    let rule = GaussHermite::new(order);
    let nodes = rule.nodes();
    let weights = rule.weights();
    let mut sum = Complex64::default();
    for (i, &x) in nodes.iter().enumerate() {
        for (j, &y) in nodes.iter().enumerate() {
            let z = Complex64::new(x, y);
            let value = cf_component(bra, ket, -z.conj(), params.t_a, params.r_a, params.m)
                * cf_component(bra, ket, -z, params.t_b, params.r_b, params.n);
            sum += weights[i] * weights[j] * value;
        }
    }
    sum / PI
}

fn assemble(params: &CsEcsParams, inv_square: f64, components: &[Complex64; 4]) -> f64 {
    let g4 = (-4.0 * params.alpha.norm_sqr()).exp();
    let total = components[0]
        + components[1]
        + params.parity.sign() * g4 * (components[2] + components[3]);
    let f = total / inv_square;
    assert!(
        f.im.abs() <= 1e-8 * f.re.abs().max(1.0),
        "fidelity left an imaginary residue: {f}"
    );
    f.re
}

/// Teleportation fidelity of the state described by `params`.
pub fn fidelity_closed(params: &CsEcsParams) -> Result<FidelityReport> {
    let norm = normalization(params)?;
    let a = params.alpha;
    let pairs = [(a, a), (-a, -a), (a, -a), (-a, a)];
    let closed_ok = (params.m == 0 || params.t_a * params.r_a >= TAU_SWITCH)
        && (params.n == 0 || params.t_b * params.r_b >= TAU_SWITCH);
    let (components, f) = if closed_ok {
        let components = pairs.map(|(bra, ket)| fidelity_term_closed(params, bra, ket));
        let f = assemble(params, norm.inv_square, &components);
        (components, f)
    } else {
        let coarse = pairs.map(|(bra, ket)| fidelity_term_quad(params, bra, ket, FALLBACK_QUAD_ORDER));
        let fine = pairs.map(|(bra, ket)| fidelity_term_quad(params, bra, ket, 2 * FALLBACK_QUAD_ORDER));
        let f_coarse = assemble(params, norm.inv_square, &coarse);
        let f_fine = assemble(params, norm.inv_square, &fine);
        let delta = (f_coarse - f_fine).abs();
        if delta > QUADRATURE_CONVERGENCE_TOL {
            return Err(crate::error::CsecsError::Convergence {
                delta,
                tol: QUADRATURE_CONVERGENCE_TOL,
            });
        }
        (fine, f_fine)
    };
    Ok(FidelityReport { f, components, above_classical: f > 0.5 })
}

/// Fidelity through the bare entangled coherent state:
/// `[e^{(α*-α)^2/2} + e^{-4|α|^2} e^{(α*+α)^2/2}] / (2 (1 + e^{-4|α|^2}))`.
/// Depends on the real and imaginary parts of `α` separately.
pub fn fidelity_eecs(alpha: Complex64) -> f64 {
    let ac = alpha.conj();
    let g4 = (-4.0 * alpha.norm_sqr()).exp();
    let num = (0.5 * (ac - alpha) * (ac - alpha)).exp() + g4 * (0.5 * (ac + alpha) * (ac + alpha)).exp();
    let f = num / (2.0 * (1.0 + g4));
    debug_assert!(f.im.abs() <= 1e-12 * f.re.abs().max(1.0));
    f.re
}
