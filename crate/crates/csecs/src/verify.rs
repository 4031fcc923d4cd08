//! Closed-form vs oracle equivalence suite.
//!
//! Runs every closed form in the crate against the truncated-Fock engine on
//! a fixed grid and reports one pass/fail line per check. The random
//! characteristic-function probe points come from a fixed-seed generator, so
//! repeated runs are identical.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::entanglement::{concurrence_excited, eecs_sv, sv_statistic_closed};
use crate::exec;
use crate::fock::{
    apply_superposition_op, build_cs_eecs, coherent_vector, concurrence_oracle,
    fidelity_by_quadrature, char_function, mode_moments, TruncationConfig,
};
use crate::state::{excited_normalization, normalization, overlap_quartet, CsEcsParams, Parity};
use crate::teleport::{cf_closed, fidelity_closed};

const ALPHA_MAGS: [f64; 3] = [0.3, 1.0, 1.7];
const ALPHA_PHASES: [f64; 2] = [0.0, PI / 4.0];
const T_VALUES: [f64; 5] = [0.0, 0.3, FRAC_1_SQRT_2, 0.9, 1.0];
const FIDELITY_ALPHAS: [f64; 3] = [0.1, 0.5, 1.0];
const FIDELITY_RS: [f64; 3] = [0.05, 0.195, FRAC_1_SQRT_2];
const QUARTET_N_MAX: usize = 50;
const CF_PROBE_POINTS: usize = 10;
const CF_PROBE_SEED: u64 = 0xC5EC5;

/// Outcome of one named check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    /// Largest deviation observed across the grid (absolute, or relative
    /// where values grow with the operation order).
    pub max_err: f64,
    pub tolerance: f64,
    pub cases: usize,
    pub passed: bool,
}

impl CheckResult {
    fn new(name: &'static str, max_err: f64, tolerance: f64, cases: usize) -> Self {
        CheckResult { name, max_err, tolerance, cases, passed: max_err < tolerance }
    }

    pub fn render(&self) -> String {
        format!(
            "{} {}: max_err={:.3e} (tol {:.1e}, {} cases)",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.max_err,
            self.tolerance,
            self.cases
        )
    }
}

/// Aggregate of all checks.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn render_lines(&self) -> Vec<String> {
        let mut lines: Vec<String> = self.checks.iter().map(CheckResult::render).collect();
        lines.push(format!(
            "{}: {} of {} checks passed",
            if self.passed { "OK" } else { "FAILED" },
            self.checks.iter().filter(|c| c.passed).count(),
            self.checks.len()
        ));
        lines
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub tolerance: f64,
    /// Fock cutoff override applied to every oracle evaluation.
    pub n_max: Option<usize>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { tolerance: 1e-6, n_max: None }
    }
}

fn max_err(values: Vec<f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

fn complex_alphas() -> Vec<Complex64> {
    let mut out = Vec::new();
    for &mag in &ALPHA_MAGS {
        for &phase in &ALPHA_PHASES {
            out.push(Complex64::from_polar(mag, phase));
        }
    }
    out
}

fn coeff(t: f64) -> (f64, f64) {
    (t, (1.0 - t * t).max(0.0).sqrt())
}

/// Inner products of the operated single-mode vectors, straight from the
/// Fock expansion.
fn mode_overlaps_oracle(alpha: Complex64, order: u32, t: f64, r: f64, n_max: usize) -> (f64, f64) {
    let cfg = TruncationConfig { n_max, tail_tol: 1e-9 };
    let pad = n_max + order as usize + 1;
    let vp = coherent_vector(alpha, &cfg).expect("cutoff chosen for the grid");
    let vm = coherent_vector(-alpha, &cfg).expect("cutoff chosen for the grid");
    let mut vp = vp.coeffs;
    let mut vm = vm.coeffs;
    vp.resize(pad, Complex64::default());
    vm.resize(pad, Complex64::default());
    let up = apply_superposition_op(&crate::fock::FockVector { coeffs: vp }, t, r, order).unwrap();
    let um = apply_superposition_op(&crate::fock::FockVector { coeffs: vm }, t, r, order).unwrap();
    let a1: f64 = up.coeffs.iter().map(|c| c.norm_sqr()).sum();
    let a2: Complex64 = um.coeffs.iter().zip(&up.coeffs).map(|(m, p)| m.conj() * p).sum();
    (a1, a2.re)
}

fn check_overlap_quartet(cfg: &VerifyConfig) -> CheckResult {
    let n_max = cfg.n_max.unwrap_or(QUARTET_N_MAX);
    let mut points = Vec::new();
    for alpha in complex_alphas() {
        for order in 0..=2_u32 {
            for &t in &T_VALUES {
                points.push((alpha, order, t));
            }
        }
    }
    let cases = points.len();
    let errs = exec::map_indexed(points, |(alpha, order, t)| {
        let (t, r) = coeff(t);
        let p = CsEcsParams::new(alpha, order, 0, t, r, 1.0, 0.0, Parity::Even).unwrap();
        let q = overlap_quartet(&p);
        let (a1_o, a2_o) = mode_overlaps_oracle(alpha, order, t, r, n_max);
        let scale = a1_o.abs().max(1.0);
        ((q.a1 - a1_o).abs() / scale).max((q.a2 - a2_o).abs() / scale)
    });
    CheckResult::new("overlap_quartet", max_err(errs), cfg.tolerance, cases)
}

fn state_grid() -> Vec<CsEcsParams> {
    let mut out = Vec::new();
    for &mag in &ALPHA_MAGS {
        for m in 0..=2_u32 {
            for n in 0..=2_u32 {
                for &t in &T_VALUES {
                    for parity in [Parity::Even, Parity::Odd] {
                        let (t, r) = coeff(t);
                        out.push(
                            CsEcsParams::new(Complex64::new(mag, 0.0), m, n, t, r, t, r, parity)
                                .unwrap(),
                        );
                    }
                }
            }
        }
    }
    out
}

fn check_normalization(cfg: &VerifyConfig) -> CheckResult {
    let grid = state_grid();
    let cases = grid.len();
    let n_max = cfg.n_max;
    let errs = exec::map_indexed(grid, |p| {
        let closed = normalization(&p).expect("grid avoids degenerate points").inv_square;
        let oracle = build_cs_eecs(&p, &TruncationConfig::auto_or(p.alpha, n_max))
            .expect("grid avoids degenerate points")
            .pre_norm_sqr();
        (closed - oracle).abs() / oracle.abs().max(1.0)
    });
    CheckResult::new("normalization", max_err(errs), cfg.tolerance, cases)
}

fn check_sv_statistic(cfg: &VerifyConfig) -> CheckResult {
    let mut points = Vec::new();
    for &mag in &ALPHA_MAGS {
        for &t in &T_VALUES {
            points.push((mag, t));
        }
    }
    let cases = points.len();
    let n_max = cfg.n_max;
    let errs = exec::map_indexed(points, |(mag, t)| {
        let (t, r) = coeff(t);
        let p = CsEcsParams::new(Complex64::new(mag, 0.0), 1, 1, t, r, t, r, Parity::Even).unwrap();
        let closed = sv_statistic_closed(&p).unwrap();
        let s = build_cs_eecs(&p, &TruncationConfig::auto_or(p.alpha, n_max)).unwrap();
        let mom = mode_moments(&s);
        let oracle = (mom.n_a - 0.5) * (mom.n_b - 0.5) - mom.ab.norm_sqr();
        (closed.s_plus - oracle)
            .abs()
            .max((closed.n_a - mom.n_a).abs())
            .max((closed.ab - mom.ab).norm())
    });
    CheckResult::new("sv_statistic", max_err(errs), cfg.tolerance, cases)
}

fn check_concurrence(cfg: &VerifyConfig) -> CheckResult {
    let grid = state_grid();
    let cases = grid.len();
    let n_max = cfg.n_max;
    let errs = exec::map_indexed(grid, |p| {
        let closed = crate::entanglement::concurrence_closed(&p).unwrap().c;
        let oracle =
            concurrence_oracle(&build_cs_eecs(&p, &TruncationConfig::auto_or(p.alpha, n_max)).unwrap());
        (closed - oracle).abs()
    });
    CheckResult::new("concurrence", max_err(errs), cfg.tolerance, cases)
}

fn cf_probe_points() -> Vec<(Complex64, Complex64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(CF_PROBE_SEED);
    (0..CF_PROBE_POINTS)
        .map(|_| {
            let mut draw = || rng.gen_range(-0.5..0.5);
            (Complex64::new(draw(), draw()), Complex64::new(draw(), draw()))
        })
        .collect()
}

fn check_char_function(cfg: &VerifyConfig) -> CheckResult {
    let grid = state_grid();
    let probes = cf_probe_points();
    let cases = grid.len() * probes.len();
    let n_max = cfg.n_max;
    let errs = exec::map_indexed(grid, |p| {
        let s = build_cs_eecs(&p, &TruncationConfig::auto_or(p.alpha, n_max)).unwrap();
        let mut worst = 0.0_f64;
        for &(eta, gamma) in &probes {
            let closed = cf_closed(&p, eta, gamma).unwrap();
            let oracle = char_function(&s, eta, gamma).unwrap();
            worst = worst.max((closed - oracle).norm());
        }
        worst
    });
    CheckResult::new("char_function", max_err(errs), cfg.tolerance, cases)
}

fn check_fidelity(cfg: &VerifyConfig) -> CheckResult {
    let mut grid = Vec::new();
    for &mag in &FIDELITY_ALPHAS {
        for mn in 0..=2_u32 {
            for &r in &FIDELITY_RS {
                for parity in [Parity::Even, Parity::Odd] {
                    grid.push(
                        CsEcsParams::symmetric_r(Complex64::new(mag, 0.0), mn, mn, r, parity)
                            .unwrap(),
                    );
                }
            }
        }
    }
    let cases = grid.len();
    let n_max = cfg.n_max;
    let errs = exec::map_indexed(grid, |p| {
        let closed = fidelity_closed(&p).unwrap().f;
        let s = build_cs_eecs(&p, &TruncationConfig::auto_or(p.alpha, n_max)).unwrap();
        let oracle = fidelity_by_quadrature(&s, 40).unwrap();
        (closed - oracle).abs()
    });
    CheckResult::new("fidelity", max_err(errs), cfg.tolerance, cases)
}

fn check_pair_annihilation(cfg: &VerifyConfig) -> CheckResult {
    let errs: Vec<f64> = [0.5, 1.0]
        .iter()
        .map(|&a| {
            let p = CsEcsParams::eecs(Complex64::new(a, 0.0), Parity::Even);
            let s = build_cs_eecs(&p, &TruncationConfig::auto_or(p.alpha, cfg.n_max)).unwrap();
            let d = s.dim();
            let alpha_sq = Complex64::new(a * a, 0.0);
            let mut residual = 0.0;
            for j in 0..d - 1 {
                for k in 0..d - 1 {
                    let lowered =
                        ((j + 1) as f64).sqrt() * ((k + 1) as f64).sqrt() * s.coeff(j + 1, k + 1);
                    residual += (lowered - alpha_sq * s.coeff(j, k)).norm_sqr();
                }
            }
            residual.sqrt()
        })
        .collect();
    CheckResult::new("pair_annihilation_eigenstate", max_err(errs), cfg.tolerance, 2)
}

fn check_excited_specialization(cfg: &VerifyConfig) -> CheckResult {
    let mut errs = Vec::new();
    let mut cases = 0;
    for &mag in &ALPHA_MAGS {
        for m in 0..=2_u32 {
            for n in 0..=2_u32 {
                let alpha = Complex64::new(mag, 0.0);
                let p = CsEcsParams::new(alpha, m, n, 0.0, 1.0, 0.0, 1.0, Parity::Even).unwrap();
                let general = normalization(&p).unwrap().inv_square;
                let special = excited_normalization(alpha, m, n);
                errs.push((general - special).abs() / special.abs().max(1.0));
                let c_general = crate::entanglement::concurrence_closed(&p).unwrap().c;
                let c_special = concurrence_excited(alpha, m, n);
                errs.push((c_general - c_special).abs());
                cases += 1;
            }
        }
    }
    CheckResult::new("excited_specialization", max_err(errs), cfg.tolerance, cases)
}

fn check_eecs_moments(cfg: &VerifyConfig) -> CheckResult {
    let errs: Vec<f64> = ALPHA_MAGS
        .iter()
        .map(|&a| {
            let alpha = Complex64::new(a, 0.0);
            let p = CsEcsParams::eecs(alpha, Parity::Even);
            let s = build_cs_eecs(&p, &TruncationConfig::auto_or(alpha, cfg.n_max)).unwrap();
            let mom = mode_moments(&s);
            let occ = a * a * (2.0 * a * a).tanh();
            let s_closed = eecs_sv(alpha);
            let s_oracle = (mom.n_a - 0.5) * (mom.n_b - 0.5) - mom.ab.norm_sqr();
            (mom.n_a - occ)
                .abs()
                .max((mom.ab - Complex64::new(a * a, 0.0)).norm())
                .max((s_closed - s_oracle).abs())
        })
        .collect();
    CheckResult::new("eecs_moments", max_err(errs), cfg.tolerance, ALPHA_MAGS.len())
}

fn check_cf_conjugation(cfg: &VerifyConfig) -> CheckResult {
    let probes = cf_probe_points();
    let mut errs = Vec::new();
    let mut cases = 0;
    for &(mn, t) in &[(0_u32, 0.3), (1, FRAC_1_SQRT_2), (2, 0.9)] {
        let (t, r) = coeff(t);
        let p = CsEcsParams::new(Complex64::new(1.0, 0.4), mn, mn, t, r, t, r, Parity::Even).unwrap();
        let s = build_cs_eecs(&p, &TruncationConfig::auto_or(p.alpha, cfg.n_max)).unwrap();
        for &(eta, gamma) in &probes {
            let direct = char_function(&s, -eta, -gamma).unwrap();
            let mirrored = char_function(&s, eta, gamma).unwrap().conj();
            errs.push((direct - mirrored).norm());
            cases += 1;
        }
    }
    CheckResult::new("cf_conjugation", max_err(errs), cfg.tolerance, cases)
}

/// Runs the whole closed-form/oracle grid at the configured tolerance.
pub fn run_verification(cfg: &VerifyConfig) -> VerifyReport {
    let checks = vec![
        check_overlap_quartet(cfg),
        check_normalization(cfg),
        check_sv_statistic(cfg),
        check_concurrence(cfg),
        check_char_function(cfg),
        check_fidelity(cfg),
        check_pair_annihilation(cfg),
        check_excited_specialization(cfg),
        check_eecs_moments(cfg),
        check_cf_conjugation(cfg),
    ];
    let passed = checks.iter().all(|c| c.passed);
    VerifyReport { checks, passed }
}
