//! Parameter sweeps, figure-reproduction tables, and their CSV/JSON
//! serialization.
//!
//! Grid evaluation fans out across a thread pool when the `parallel` feature
//! is enabled, but rows are always emitted in deterministic grid order
//! (outer to inner: `alpha_re`, `alpha_im`, coefficient axis), so identical
//! specs produce byte-identical output. Per-row evaluation errors do not
//! drop the row: its value cells stay empty and the `error` column carries
//! the message.

use num_complex::Complex64;

use crate::entanglement::{concurrence_closed, sv_statistic_closed, sv_statistic_oracle};
use crate::error::{CsecsError, Result};
use crate::exec;
use crate::fock::{build_cs_eecs, concurrence_oracle, fidelity_by_quadrature, TruncationConfig};
use crate::state::{normalization, CsEcsParams, Parity};
use crate::teleport::{fidelity_closed, fidelity_eecs};

/// What a sweep evaluates at every grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    SvStatistic,
    Concurrence,
    Fidelity,
    Normalization,
}

impl Quantity {
    pub fn label(self) -> &'static str {
        match self {
            Quantity::SvStatistic => "sv",
            Quantity::Concurrence => "concurrence",
            Quantity::Fidelity => "fidelity",
            Quantity::Normalization => "normalization",
        }
    }
}

impl std::str::FromStr for Quantity {
    type Err = CsecsError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sv" | "sv-statistic" | "svstatistic" => Ok(Quantity::SvStatistic),
            "concurrence" => Ok(Quantity::Concurrence),
            "fidelity" => Ok(Quantity::Fidelity),
            "normalization" | "norm" => Ok(Quantity::Normalization),
            other => Err(CsecsError::InvalidSpec(format!("unknown quantity '{other}'"))),
        }
    }
}

/// An inclusive linear grid `start..=stop` with `count` points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridAxis {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl GridAxis {
    pub fn new(start: f64, stop: f64, count: usize) -> Result<Self> {
        let axis = GridAxis { start, stop, count };
        axis.validate()?;
        Ok(axis)
    }

    pub fn single(value: f64) -> Self {
        GridAxis { start: value, stop: value, count: 1 }
    }

    fn validate(&self) -> Result<()> {
        if self.count < 1 {
            return Err(CsecsError::InvalidSpec("axis count must be at least 1".into()));
        }
        if !self.start.is_finite() || !self.stop.is_finite() {
            return Err(CsecsError::InvalidSpec("axis endpoints must be finite".into()));
        }
        if self.start > self.stop {
            return Err(CsecsError::InvalidSpec(format!(
                "axis start {} exceeds stop {}",
                self.start, self.stop
            )));
        }
        if self.count == 1 && self.start != self.stop {
            return Err(CsecsError::InvalidSpec(
                "a single-point axis must have start == stop".into(),
            ));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.stop
                } else {
                    self.start + step * i as f64
                }
            })
            .collect()
    }
}

/// Superposition coefficients of a sweep: either fixed per mode, or one
/// symmetric axis swept on both modes. `t` and `r` views are exclusive; the
/// other coefficient is always derived from `t^2 + r^2 = 1`.
#[derive(Debug, Clone, PartialEq)]
pub enum CoefficientSpec {
    Fixed { t_a: f64, r_a: f64, t_b: f64, r_b: f64 },
    SweepR(GridAxis),
    SweepT(GridAxis),
}

impl CoefficientSpec {
    pub fn fixed_r(r_a: f64, r_b: f64) -> Self {
        let t = |r: f64| (1.0 - r * r).max(0.0).sqrt();
        CoefficientSpec::Fixed { t_a: t(r_a), r_a, t_b: t(r_b), r_b }
    }

    pub fn fixed_t(t_a: f64, t_b: f64) -> Self {
        let r = |t: f64| (1.0 - t * t).max(0.0).sqrt();
        CoefficientSpec::Fixed { t_a, r_a: r(t_a), t_b, r_b: r(t_b) }
    }

    fn validate(&self) -> Result<()> {
        match self {
            CoefficientSpec::Fixed { .. } => Ok(()),
            CoefficientSpec::SweepR(axis) | CoefficientSpec::SweepT(axis) => {
                axis.validate()?;
                if axis.start < 0.0 || axis.stop > 1.0 {
                    return Err(CsecsError::InvalidSpec(
                        "coefficient axis must stay inside [0, 1]".into(),
                    ));
                }
                Ok(())
            }
        }
    }

    /// `(t_a, r_a, t_b, r_b)` tuples along this axis.
    fn values(&self) -> Vec<(f64, f64, f64, f64)> {
        match self {
            CoefficientSpec::Fixed { t_a, r_a, t_b, r_b } => vec![(*t_a, *r_a, *t_b, *r_b)],
            CoefficientSpec::SweepR(axis) => axis
                .values()
                .into_iter()
                .map(|r| {
                    let t = (1.0 - r * r).max(0.0).sqrt();
                    (t, r, t, r)
                })
                .collect(),
            CoefficientSpec::SweepT(axis) => axis
                .values()
                .into_iter()
                .map(|t| {
                    let r = (1.0 - t * t).max(0.0).sqrt();
                    (t, r, t, r)
                })
                .collect(),
        }
    }
}

/// Full description of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub quantity: Quantity,
    pub alpha_re: GridAxis,
    pub alpha_im: GridAxis,
    pub coeffs: CoefficientSpec,
    pub m: u32,
    pub n: u32,
    pub parity: Parity,
    /// Append a `|closed - oracle|` column computed through the Fock engine.
    pub oracle_check: bool,
    /// Fock cutoff override for oracle evaluations.
    pub n_max: Option<usize>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        self.alpha_re.validate()?;
        self.alpha_im.validate()?;
        self.coeffs.validate()
    }
}

/// One output cell: a finite number, free text (parity, error messages), or
/// empty (errored numeric cell / inapplicable column).
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
    Empty,
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(v) => Some(*v),
            _ => None,
        }
    }

    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => format!("{v}"),
            Cell::Text(s) => {
                if s.contains([',', '"', '\n']) {
                    format!("\"{}\"", s.replace('"', "\"\""))
                } else {
                    s.clone()
                }
            }
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Num(v) => serde_json::json!(v),
            Cell::Text(s) => serde_json::json!(s),
            Cell::Empty => serde_json::Value::Null,
        }
    }
}

/// Rectangular result set with a header row.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl ResultTable {
    /// UTF-8 CSV; floats are rendered as their shortest round-trip decimal.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    /// `{"header": [...], "rows": [[...]]}` mirroring the CSV schema.
    pub fn to_json(&self) -> String {
        let rows: Vec<Vec<serde_json::Value>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(Cell::json).collect())
            .collect();
        serde_json::json!({ "header": self.header, "rows": rows }).to_string()
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }
}

fn quantity_columns(quantity: Quantity) -> &'static [&'static str] {
    match quantity {
        Quantity::SvStatistic => &["s_plus", "n_a", "n_b", "ab_re", "ab_im", "entangled"],
        Quantity::Concurrence => &["c", "p1", "p2"],
        Quantity::Fidelity => &["f", "above_classical"],
        Quantity::Normalization => &["n_factor", "inv_square"],
    }
}

struct RowOutcome {
    values: Vec<Cell>,
    oracle: Option<(f64, f64)>,
    error: Option<String>,
}

fn empty_values(quantity: Quantity) -> Vec<Cell> {
    vec![Cell::Empty; quantity_columns(quantity).len()]
}

/// Closed-form value columns plus, on request, the oracle value of the
/// primary scalar with its absolute deviation.
fn evaluate_point(spec: &SweepSpec, params: &CsEcsParams) -> RowOutcome {
    let cfg = TruncationConfig::auto_or(params.alpha, spec.n_max);
    let closed: Result<(Vec<Cell>, f64)> = match spec.quantity {
        Quantity::Normalization => normalization(params).map(|norm| {
            (vec![Cell::Num(norm.n_factor), Cell::Num(norm.inv_square)], norm.inv_square)
        }),
        Quantity::Concurrence => concurrence_closed(params).map(|rep| {
            (vec![Cell::Num(rep.c), Cell::Num(rep.p1), Cell::Num(rep.p2)], rep.c)
        }),
        Quantity::Fidelity => fidelity_closed(params).map(|rep| {
            (
                vec![Cell::Num(rep.f), Cell::Num(if rep.above_classical { 1.0 } else { 0.0 })],
                rep.f,
            )
        }),
        Quantity::SvStatistic => {
            // Closed form where it exists, oracle route otherwise.
            let rep = if params.m == 1 && params.n == 1 && params.parity == Parity::Even {
                sv_statistic_closed(params)
            } else {
                sv_statistic_oracle(params, &cfg)
            };
            rep.map(|rep| {
                (
                    vec![
                        Cell::Num(rep.s_plus),
                        Cell::Num(rep.n_a),
                        Cell::Num(rep.n_b),
                        Cell::Num(rep.ab.re),
                        Cell::Num(rep.ab.im),
                        Cell::Num(if rep.entangled { 1.0 } else { 0.0 }),
                    ],
                    rep.s_plus,
                )
            })
        }
    };
    let (values, primary) = match closed {
        Ok(v) => v,
        Err(e) => {
            return RowOutcome {
                values: empty_values(spec.quantity),
                oracle: None,
                error: Some(e.to_string()),
            }
        }
    };
    if !spec.oracle_check {
        return RowOutcome { values, oracle: None, error: None };
    }
    let oracle: Result<Option<f64>> = (|| match spec.quantity {
        Quantity::Normalization => {
            Ok(Some(build_cs_eecs(params, &cfg)?.pre_norm_sqr()))
        }
        Quantity::Concurrence => Ok(Some(concurrence_oracle(&build_cs_eecs(params, &cfg)?))),
        Quantity::Fidelity => Ok(Some(fidelity_by_quadrature(&build_cs_eecs(params, &cfg)?, 40)?)),
        Quantity::SvStatistic => {
            if params.m == 1 && params.n == 1 && params.parity == Parity::Even {
                Ok(Some(sv_statistic_oracle(params, &cfg)?.s_plus))
            } else {
                // The primary route already was the oracle.
                Ok(None)
            }
        }
    })();
    match oracle {
        Ok(Some(v)) => RowOutcome { values, oracle: Some((v, (v - primary).abs())), error: None },
        Ok(None) => RowOutcome { values, oracle: None, error: None },
        Err(e) => RowOutcome { values, oracle: None, error: Some(e.to_string()) },
    }
}

fn sweep_header(spec: &SweepSpec) -> Vec<String> {
    let mut header: Vec<String> = [
        "alpha_re", "alpha_im", "m", "n", "t_a", "r_a", "t_b", "r_b", "parity",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    header.extend(quantity_columns(spec.quantity).iter().map(|s| s.to_string()));
    if spec.oracle_check {
        header.push("oracle_value".into());
        header.push("oracle_abs_delta".into());
    }
    header.push("error".into());
    header
}

fn sweep_row(spec: &SweepSpec, point: &(f64, f64, (f64, f64, f64, f64))) -> Vec<Cell> {
    let (are, aim, (t_a, r_a, t_b, r_b)) = *point;
    let alpha = Complex64::new(are, aim);
    let mut row = vec![
        Cell::Num(are),
        Cell::Num(aim),
        Cell::Num(spec.m as f64),
        Cell::Num(spec.n as f64),
        Cell::Num(t_a),
        Cell::Num(r_a),
        Cell::Num(t_b),
        Cell::Num(r_b),
        Cell::Text(spec.parity.label().into()),
    ];
    let outcome = match CsEcsParams::new(alpha, spec.m, spec.n, t_a, r_a, t_b, r_b, spec.parity) {
        Ok(params) => evaluate_point(spec, &params),
        Err(e) => RowOutcome {
            values: empty_values(spec.quantity),
            oracle: None,
            error: Some(e.to_string()),
        },
    };
    row.extend(outcome.values);
    if spec.oracle_check {
        match outcome.oracle {
            Some((value, delta)) => {
                row.push(Cell::Num(value));
                row.push(Cell::Num(delta));
            }
            None => {
                row.push(Cell::Empty);
                row.push(Cell::Empty);
            }
        }
    }
    row.push(outcome.error.map_or(Cell::Empty, Cell::Text));
    row
}

fn sweep_points(spec: &SweepSpec) -> Vec<(f64, f64, (f64, f64, f64, f64))> {
    let mut points = Vec::new();
    for &are in &spec.alpha_re.values() {
        for &aim in &spec.alpha_im.values() {
            for &coeff in &spec.coeffs.values() {
                points.push((are, aim, coeff));
            }
        }
    }
    points
}

/// Evaluates the sweep, in parallel when the `parallel` feature is enabled.
pub fn run_sweep(spec: &SweepSpec) -> Result<ResultTable> {
    spec.validate()?;
    let points = sweep_points(spec);
    let rows = exec::map_indexed(points, |p| sweep_row(spec, &p));
    Ok(ResultTable { header: sweep_header(spec), rows })
}

/// Single-threaded variant of [`run_sweep`]; output is identical.
pub fn run_sweep_sequential(spec: &SweepSpec) -> Result<ResultTable> {
    spec.validate()?;
    let points = sweep_points(spec);
    let rows = exec::map_indexed_seq(points, |p| sweep_row(spec, &p));
    Ok(ResultTable { header: sweep_header(spec), rows })
}

/// The pre-configured figure tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
}

impl FigureId {
    pub const ALL: [FigureId; 7] = [
        FigureId::Fig1,
        FigureId::Fig2,
        FigureId::Fig3,
        FigureId::Fig4,
        FigureId::Fig5,
        FigureId::Fig6,
        FigureId::Fig7,
    ];

    pub fn label(self) -> &'static str {
        match self {
            FigureId::Fig1 => "fig1",
            FigureId::Fig2 => "fig2",
            FigureId::Fig3 => "fig3",
            FigureId::Fig4 => "fig4",
            FigureId::Fig5 => "fig5",
            FigureId::Fig6 => "fig6",
            FigureId::Fig7 => "fig7",
        }
    }
}

impl std::str::FromStr for FigureId {
    type Err = CsecsError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fig1" | "1" => Ok(FigureId::Fig1),
            "fig2" | "2" => Ok(FigureId::Fig2),
            "fig3" | "3" => Ok(FigureId::Fig3),
            "fig4" | "4" => Ok(FigureId::Fig4),
            "fig5" | "5" => Ok(FigureId::Fig5),
            "fig6" | "6" => Ok(FigureId::Fig6),
            "fig7" | "7" => Ok(FigureId::Fig7),
            other => Err(CsecsError::InvalidSpec(format!("unknown figure id '{other}'"))),
        }
    }
}

/// Concurrence cell for the symmetric-coefficient state, empty on error.
fn conc_cell(alpha: f64, m: u32, n: u32, r: f64, errors: &mut Vec<String>) -> Cell {
    CsEcsParams::symmetric_r(Complex64::new(alpha, 0.0), m, n, r, Parity::Even)
        .and_then(|p| concurrence_closed(&p))
        .map(|rep| Cell::Num(rep.c))
        .unwrap_or_else(|e| {
            errors.push(e.to_string());
            Cell::Empty
        })
}

fn fid_cell(alpha: f64, m: u32, n: u32, r: f64, errors: &mut Vec<String>) -> Cell {
    CsEcsParams::symmetric_r(Complex64::new(alpha, 0.0), m, n, r, Parity::Even)
        .and_then(|p| fidelity_closed(&p))
        .map(|rep| Cell::Num(rep.f))
        .unwrap_or_else(|e| {
            errors.push(e.to_string());
            Cell::Empty
        })
}

fn error_cell(errors: Vec<String>) -> Cell {
    if errors.is_empty() {
        Cell::Empty
    } else {
        Cell::Text(errors.join("; "))
    }
}

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn grid(start: f64, stop: f64, count: usize) -> Vec<f64> {
    GridAxis { start, stop, count }.values()
}

/// Emits the pre-configured grid for the named figure. Every table is
/// closed-form only and fully deterministic.
pub fn run_figure(id: FigureId) -> ResultTable {
    match id {
        FigureId::Fig1 => {
            // Inseparability statistic vs real amplitude: bare-state
            // reference plus the m = n = 1 state at t in {0, 0.2, 0.6, 0.9}.
            let header = vec![
                "alpha".into(),
                "s_eecs".into(),
                "s_t0".into(),
                "s_t0_2".into(),
                "s_t0_6".into(),
                "s_t0_9".into(),
            ];
            let alphas = grid(0.0, 1.5, 151);
            let rows = exec::map_indexed(alphas, |a| {
                let alpha = Complex64::new(a, 0.0);
                let mut row = vec![Cell::Num(a), Cell::Num(crate::entanglement::eecs_sv(alpha))];
                let mut errors = Vec::new();
                for &t in &[0.0, 0.2, 0.6, 0.9] {
                    let cell = CsEcsParams::symmetric_t(alpha, 1, 1, t, Parity::Even)
                        .and_then(|p| sv_statistic_closed(&p))
                        .map(|rep| Cell::Num(rep.s_plus))
                        .unwrap_or_else(|e| {
                            errors.push(e.to_string());
                            Cell::Empty
                        });
                    row.push(cell);
                }
                row.push(error_cell(errors));
                row
            });
            let mut header = header;
            header.push("error".into());
            ResultTable { header, rows }
        }
        FigureId::Fig2 => {
            let header: Vec<String> =
                ["alpha", "r", "c_m1n1", "c_m2n2", "error"].iter().map(|s| s.to_string()).collect();
            let mut points = Vec::new();
            for a in grid(0.0, 2.5, 51) {
                for r in grid(0.0, 1.0, 41) {
                    points.push((a, r));
                }
            }
            let rows = exec::map_indexed(points, |(a, r)| {
                let mut errors = Vec::new();
                let row = vec![
                    Cell::Num(a),
                    Cell::Num(r),
                    conc_cell(a, 1, 1, r, &mut errors),
                    conc_cell(a, 2, 2, r, &mut errors),
                    error_cell(errors),
                ];
                row
            });
            ResultTable { header, rows }
        }
        FigureId::Fig3 => {
            let header: Vec<String> =
                ["alpha", "c_m1n1", "c_m2n2", "c_m3n3", "c_m1n2", "c_m1n3", "error"]
                    .iter()
                    .map(|s| s.to_string())
                    .collect();
            let alphas = grid(0.0, 2.5, 126);
            let rows = exec::map_indexed(alphas, |a| {
                let mut errors = Vec::new();
                let row = vec![
                    Cell::Num(a),
                    conc_cell(a, 1, 1, FRAC_1_SQRT_2, &mut errors),
                    conc_cell(a, 2, 2, FRAC_1_SQRT_2, &mut errors),
                    conc_cell(a, 3, 3, FRAC_1_SQRT_2, &mut errors),
                    conc_cell(a, 1, 2, FRAC_1_SQRT_2, &mut errors),
                    conc_cell(a, 1, 3, FRAC_1_SQRT_2, &mut errors),
                    error_cell(errors),
                ];
                row
            });
            ResultTable { header, rows }
        }
        FigureId::Fig4 => {
            // Bare state, single- and two-mode photon addition, and the
            // superposition cases at the coefficient values of the caption.
            let header: Vec<String> = [
                "alpha",
                "c_eecs",
                "c_added_m1",
                "c_cs_m1_r707",
                "c_cs_m1_r600",
                "c_added_m1n1",
                "c_cs_m1n1_r707",
                "c_cs_m1n1_r400",
                "error",
            ]
            .iter()
            .map(|s| s.to_string())
            .collect();
            let alphas = grid(0.0, 1.5, 151);
            let rows = exec::map_indexed(alphas, |a| {
                let mut errors = Vec::new();
                let row = vec![
                    Cell::Num(a),
                    conc_cell(a, 0, 0, 0.0, &mut errors),
                    conc_cell(a, 1, 0, 1.0, &mut errors),
                    conc_cell(a, 1, 0, FRAC_1_SQRT_2, &mut errors),
                    conc_cell(a, 1, 0, 0.6, &mut errors),
                    conc_cell(a, 1, 1, 1.0, &mut errors),
                    conc_cell(a, 1, 1, FRAC_1_SQRT_2, &mut errors),
                    conc_cell(a, 1, 1, 0.4, &mut errors),
                    error_cell(errors),
                ];
                row
            });
            ResultTable { header, rows }
        }
        FigureId::Fig5 => {
            let header: Vec<String> = ["q", "p", "f"].iter().map(|s| s.to_string()).collect();
            let mut points = Vec::new();
            for q in grid(-2.5, 2.5, 51) {
                for p in grid(-2.5, 2.5, 51) {
                    points.push((q, p));
                }
            }
            let rows = exec::map_indexed(points, |(q, p)| {
                vec![Cell::Num(q), Cell::Num(p), Cell::Num(fidelity_eecs(Complex64::new(q, p)))]
            });
            ResultTable { header, rows }
        }
        FigureId::Fig6 => {
            let header: Vec<String> =
                ["alpha", "r", "f_m1n1", "f_eecs", "f_diff", "error"].iter().map(|s| s.to_string()).collect();
            let mut points = Vec::new();
            for a in grid(0.0, 2.5, 51) {
                for r in grid(0.0, 0.9, 19) {
                    points.push((a, r));
                }
            }
            let rows = exec::map_indexed(points, |(a, r)| {
                let mut errors = Vec::new();
                let f11 = fid_cell(a, 1, 1, r, &mut errors);
                let f00 = fidelity_eecs(Complex64::new(a, 0.0));
                let diff = match f11.as_f64() {
                    Some(v) => Cell::Num(v - f00),
                    None => Cell::Empty,
                };
                vec![Cell::Num(a), Cell::Num(r), f11, Cell::Num(f00), diff, error_cell(errors)]
            });
            ResultTable { header, rows }
        }
        FigureId::Fig7 => {
            let header: Vec<String> =
                ["alpha", "f_m1n1", "f_m2n2", "f_m3n3", "f_m1n2", "f_m1n3", "error"]
                    .iter()
                    .map(|s| s.to_string())
                    .collect();
            let alphas = grid(0.0, 1.5, 151);
            let rows = exec::map_indexed(alphas, |a| {
                let mut errors = Vec::new();
                let row = vec![
                    Cell::Num(a),
                    fid_cell(a, 1, 1, 0.195, &mut errors),
                    fid_cell(a, 2, 2, 0.195, &mut errors),
                    fid_cell(a, 3, 3, 0.195, &mut errors),
                    fid_cell(a, 1, 2, 0.195, &mut errors),
                    fid_cell(a, 1, 3, 0.195, &mut errors),
                    error_cell(errors),
                ];
                row
            });
            ResultTable { header, rows }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn axis_validation() {
        assert!(GridAxis::new(0.0, 1.0, 0).is_err());
        assert!(GridAxis::new(1.0, 0.0, 5).is_err());
        assert!(GridAxis::new(0.0, 1.0, 2).is_ok());
        assert!(GridAxis::new(0.3, 0.7, 1).is_err());
        let vals = GridAxis::new(0.0, 1.0, 5).unwrap().values();
        assert_eq!(vals, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(GridAxis::single(0.3).values(), vec![0.3]);
    }

    #[test]
    fn single_point_concurrence_sweep() {
        let spec = SweepSpec {
            quantity: Quantity::Concurrence,
            alpha_re: GridAxis::single(1.0),
            alpha_im: GridAxis::single(0.0),
            coeffs: CoefficientSpec::fixed_r(FRAC_1_SQRT_2, FRAC_1_SQRT_2),
            m: 1,
            n: 1,
            parity: Parity::Even,
            oracle_check: false,
            n_max: None,
        };
        let table = run_sweep(&spec).unwrap();
        assert_eq!(table.rows.len(), 1);
        let col = table.column("c").unwrap();
        assert_relative_eq!(
            table.rows[0][col].as_f64().unwrap(),
            0.99853582158342713,
            max_relative = 1e-12
        );
    }

    #[test]
    fn row_count_is_grid_product_with_errors_retained() {
        let spec = SweepSpec {
            quantity: Quantity::Normalization,
            alpha_re: GridAxis::new(0.0, 1.0, 3).unwrap(),
            alpha_im: GridAxis::single(0.0),
            coeffs: CoefficientSpec::SweepR(GridAxis::new(0.0, 0.8, 3).unwrap()),
            m: 1,
            n: 1,
            parity: Parity::Odd,
            oracle_check: false,
            n_max: None,
        };
        let table = run_sweep(&spec).unwrap();
        assert_eq!(table.rows.len(), 9);
        // alpha = 0, r = 0 is degenerate for the odd first-order state: the
        // row stays, with an error message and empty value cells.
        let err_col = table.column("error").unwrap();
        let val_col = table.column("inv_square").unwrap();
        let degenerate: Vec<&Vec<Cell>> = table
            .rows
            .iter()
            .filter(|r| !matches!(r[err_col], Cell::Empty))
            .collect();
        assert!(!degenerate.is_empty());
        for row in degenerate {
            assert!(matches!(row[val_col], Cell::Empty));
        }
    }

    #[test]
    fn parallel_and_sequential_agree_byte_for_byte() {
        let spec = SweepSpec {
            quantity: Quantity::SvStatistic,
            alpha_re: GridAxis::new(0.1, 1.2, 12).unwrap(),
            alpha_im: GridAxis::single(0.0),
            coeffs: CoefficientSpec::SweepT(GridAxis::new(0.0, 0.9, 4).unwrap()),
            m: 1,
            n: 1,
            parity: Parity::Even,
            oracle_check: false,
            n_max: None,
        };
        let a = run_sweep(&spec).unwrap().to_csv();
        let b = run_sweep_sequential(&spec).unwrap().to_csv();
        assert_eq!(a, b);
    }

    #[test]
    fn oracle_check_appends_delta_column() {
        let spec = SweepSpec {
            quantity: Quantity::Concurrence,
            alpha_re: GridAxis::single(0.8),
            alpha_im: GridAxis::single(0.0),
            coeffs: CoefficientSpec::fixed_t(0.3, 0.3),
            m: 1,
            n: 0,
            parity: Parity::Even,
            oracle_check: true,
            n_max: None,
        };
        let table = run_sweep(&spec).unwrap();
        let delta = table.rows[0][table.column("oracle_abs_delta").unwrap()]
            .as_f64()
            .unwrap();
        assert!(delta < 1e-8, "delta {delta}");
    }

    #[test]
    fn csv_and_json_round_trip_shape() {
        let table = ResultTable {
            header: vec!["a".into(), "note".into()],
            rows: vec![
                vec![Cell::Num(0.1), Cell::Text("plain".into())],
                vec![Cell::Num(-2.0), Cell::Empty],
                vec![Cell::Num(1.0), Cell::Text("quote,me".into())],
            ],
        };
        let csv = table.to_csv();
        assert_eq!(csv, "a,note\n0.1,plain\n-2,\n1,\"quote,me\"\n");
        let parsed: serde_json::Value = serde_json::from_str(&table.to_json()).unwrap();
        assert_eq!(parsed["header"][0], "a");
        assert_eq!(parsed["rows"][0][0], 0.1);
        assert!(parsed["rows"][1][1].is_null());
    }

    #[test]
    fn figure_ids_parse() {
        assert_eq!("Fig3".parse::<FigureId>().unwrap(), FigureId::Fig3);
        assert_eq!("fig7".parse::<FigureId>().unwrap(), FigureId::Fig7);
        assert!("fig9".parse::<FigureId>().is_err());
    }
}
