//! Hermite and Laguerre polynomials, log-factorials, and the bilinear
//! Gaussian-derivative evaluator that every closed-form expression in the
//! crate is assembled from.
//!
//! Polynomials are evaluated by their three-term recurrences rather than by
//! explicit coefficient sums; the coefficient form cancels catastrophically
//! for degrees above ~20.

use num_complex::Complex64;
use std::sync::OnceLock;

/// Below this magnitude of the quadratic coefficient `d`,
/// [`bilinear_derivative`] switches from the Hermite-product form (which
/// divides by `sqrt(d)`) to exact power-series coefficient extraction.
pub const BILINEAR_SERIES_CUTOFF: f64 = 5e-7;

/// Physicists' Hermite polynomial `H_n(z)` for complex argument.
///
/// Recurrence: `H_{n+1}(z) = 2z H_n(z) - 2n H_{n-1}(z)`, `H_0 = 1`,
/// `H_1 = 2z`.
pub fn hermite(n: u32, z: Complex64) -> Complex64 {
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let mut prev = Complex64::new(1.0, 0.0);
    let mut cur = 2.0 * z;
    for k in 1..n {
        let next = 2.0 * z * cur - 2.0 * (k as f64) * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Laguerre polynomial `L_n(x)`.
///
/// Recurrence: `(n+1) L_{n+1}(x) = (2n+1-x) L_n(x) - n L_{n-1}(x)`.
pub fn laguerre(n: u32, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Associated Laguerre polynomial `L_n^k(x)`; `L_n^0` coincides with
/// [`laguerre`].
pub fn assoc_laguerre(n: u32, k: u32, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let kf = k as f64;
    let mut prev = 1.0;
    let mut cur = 1.0 + kf - x;
    for j in 1..n {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 + kf - x) * cur - (jf + kf) * prev) / (jf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

const LN_FACTORIAL_TABLE_LEN: usize = 1025;

fn ln_factorial_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Vec::with_capacity(LN_FACTORIAL_TABLE_LEN);
        t.push(0.0);
        for k in 1..LN_FACTORIAL_TABLE_LEN {
            t.push(t[k - 1] + (k as f64).ln());
        }
        t
    })
}

/// `ln(n!)`, exact summation of logarithms (relative error well below
/// 1e-12 for `n <= 1000`).
pub fn ln_factorial(n: u32) -> f64 {
    let table = ln_factorial_table();
    let n = n as usize;
    if n < table.len() {
        return table[n];
    }
    let mut acc = table[table.len() - 1];
    for k in table.len()..=n {
        acc += (k as f64).ln();
    }
    acc
}

/// Evaluates the mixed derivative
///
/// ```text
/// d^order/ds^order d^order/dt^order exp[a s + b t + c t s + d (t^2 + s^2)]  at s = t = 0.
/// ```
///
/// For `|d|` above [`BILINEAR_SERIES_CUTOFF`] this is the Hermite-product sum
///
/// ```text
/// sum_l (order!)^2 / (l! ((order-l)!)^2) c^l (-d)^(order-l)
///       H_(order-l)(a / 2i sqrt(d)) H_(order-l)(b / 2i sqrt(d)),
/// ```
///
/// below it the `t^order s^order` coefficient of the exponential is extracted
/// from the (finite) multinomial expansion, which stays exact through
/// `d = 0`. Both routes agree to round-off on their common domain; the branch
/// cut of `sqrt(d)` drops out of the Hermite product.
pub fn bilinear_derivative(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
    order: u32,
) -> Complex64 {
    if order == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if d.norm() >= BILINEAR_SERIES_CUTOFF {
        bilinear_hermite(a, b, c, d, order)
    } else {
        bilinear_series(a, b, c, d, order)
    }
}

fn bilinear_hermite(a: Complex64, b: Complex64, c: Complex64, d: Complex64, order: u32) -> Complex64 {
    let scale = 2.0 * Complex64::i() * d.sqrt();
    let xa = a / scale;
    let xb = b / scale;
    let ln_order_fact2 = 2.0 * ln_factorial(order);
    let mut total = Complex64::new(0.0, 0.0);
    for l in 0..=order {
        let k = order - l;
        let coef = (ln_order_fact2 - ln_factorial(l) - 2.0 * ln_factorial(k)).exp();
        total += coef * c.powu(l) * (-d).powu(k) * hermite(k, xa) * hermite(k, xb);
    }
    total
}

fn bilinear_series(a: Complex64, b: Complex64, c: Complex64, d: Complex64, order: u32) -> Complex64 {
    let mut total = Complex64::new(0.0, 0.0);
    for u in 0..=order {
        for v in 0..=(order - u) / 2 {
            let p = order - u - 2 * v;
            for w in 0..=(order - u) / 2 {
                let q = order - u - 2 * w;
                let ln_den = ln_factorial(p)
                    + ln_factorial(q)
                    + ln_factorial(u)
                    + ln_factorial(v)
                    + ln_factorial(w);
                total += a.powu(p) * b.powu(q) * c.powu(u) * d.powu(v + w) * (-ln_den).exp();
            }
        }
    }
    total * (2.0 * ln_factorial(order)).exp()
}
