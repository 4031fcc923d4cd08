//! Command-line front end: single-point queries, grid sweeps, figure tables,
//! the inseparability threshold, and the closed-form/oracle verification
//! suite. Tables go to stdout (or `--out`) as CSV or JSON.
//!
//! Exit codes: 0 success, 2 invalid arguments, 3 verification failure,
//! 4 numeric degeneracy or truncation/convergence trouble.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use csecs::entanglement::{eecs_sv, sv_statistic_closed, sv_statistic_oracle, sv_threshold};
use csecs::fock::{build_cs_eecs, concurrence_oracle, fidelity_by_quadrature, TruncationConfig};
use csecs::state::normalization;
use csecs::sweep::{
    run_figure, run_sweep, Cell, CoefficientSpec, FigureId, GridAxis, Quantity, ResultTable,
    SweepSpec,
};
use csecs::teleport::fidelity_closed;
use csecs::verify::{run_verification, VerifyConfig};
use csecs::{CsEcsParams, CsecsError, Parity};

const ENV_N_MAX: &str = "CSECS_NMAX";

#[derive(Parser)]
#[command(
    name = "csecs",
    version,
    about = "Entanglement and teleportation figures of merit for coherent-superposition entangled coherent states"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate quantities at a single parameter point
    Point(PointArgs),
    /// Evaluate one quantity over a parameter grid
    Sweep(SweepArgs),
    /// Emit one of the pre-configured figure tables (fig1..fig7)
    Figure(FigureArgs),
    /// Locate the amplitude threshold of the bare-state inseparability criterion
    Threshold(ThresholdArgs),
    /// Run the closed-form vs oracle equivalence suite
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Parity {
        match p {
            ParityArg::Even => Parity::Even,
            ParityArg::Odd => Parity::Odd,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum QuantityArg {
    Sv,
    Concurrence,
    Fidelity,
    Normalization,
}

impl From<QuantityArg> for Quantity {
    fn from(q: QuantityArg) -> Quantity {
        match q {
            QuantityArg::Sv => Quantity::SvStatistic,
            QuantityArg::Concurrence => Quantity::Concurrence,
            QuantityArg::Fidelity => Quantity::Fidelity,
            QuantityArg::Normalization => Quantity::Normalization,
        }
    }
}

/// `value` or `start:stop:count`.
#[derive(Clone, Debug)]
struct AxisArg(GridAxis);

impl FromStr for AxisArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [single] => {
                let v: f64 = single.parse().map_err(|e| format!("bad axis value '{single}': {e}"))?;
                Ok(AxisArg(GridAxis::single(v)))
            }
            [start, stop, count] => {
                let start: f64 = start.parse().map_err(|e| format!("bad axis start: {e}"))?;
                let stop: f64 = stop.parse().map_err(|e| format!("bad axis stop: {e}"))?;
                let count: usize = count.parse().map_err(|e| format!("bad axis count: {e}"))?;
                GridAxis::new(start, stop, count).map(AxisArg).map_err(|e| e.to_string())
            }
            _ => Err("expected 'value' or 'start:stop:count'".into()),
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Write the table here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Args)]
struct ParamArgs {
    /// Real part of the coherent amplitude
    #[arg(long, default_value_t = 1.0)]
    alpha_re: f64,
    /// Imaginary part of the coherent amplitude
    #[arg(long, default_value_t = 0.0)]
    alpha_im: f64,
    /// Order of the mode-a operation (r_A a† + t_A a)^m
    #[arg(long, default_value_t = 0)]
    m: u32,
    /// Order of the mode-b operation
    #[arg(long, default_value_t = 0)]
    n: u32,
    /// Mode-a addition weight r_A; t_A = sqrt(1 - r_A^2)
    #[arg(long, conflicts_with = "t_a")]
    r_a: Option<f64>,
    /// Mode-b addition weight r_B; defaults to --r-a
    #[arg(long, conflicts_with = "t_b")]
    r_b: Option<f64>,
    /// Mode-a subtraction weight t_A; r_A = sqrt(1 - t_A^2)
    #[arg(long)]
    t_a: Option<f64>,
    /// Mode-b subtraction weight t_B; defaults to --t-a
    #[arg(long)]
    t_b: Option<f64>,
    #[arg(long, value_enum, default_value_t = ParityArg::Even)]
    parity: ParityArg,
    /// Also evaluate through the Fock oracle and report deviations
    #[arg(long)]
    oracle_check: bool,
    /// Fock cutoff override for oracle evaluations (or env CSECS_NMAX)
    #[arg(long)]
    n_max: Option<usize>,
}

impl ParamArgs {
    /// `(t_a, r_a, t_b, r_b)` from whichever coefficient flags were given.
    fn coefficients(&self) -> Result<(f64, f64, f64, f64), CsecsError> {
        let derive_t = |r: f64| (1.0 - r * r).max(0.0).sqrt();
        let mode = |r: Option<f64>, t: Option<f64>| -> Option<(f64, f64)> {
            match (r, t) {
                (Some(r), None) => Some((derive_t(r), r)),
                (None, Some(t)) => Some((t, derive_t(t))),
                (None, None) => None,
                (Some(_), Some(_)) => unreachable!("clap conflict rules"),
            }
        };
        let a = mode(self.r_a, self.t_a);
        let b = mode(self.r_b, self.t_b).or(a);
        match (a, b) {
            (Some((ta, ra)), Some((tb, rb))) => Ok((ta, ra, tb, rb)),
            _ if self.m == 0 && self.n == 0 => Ok((1.0, 0.0, 1.0, 0.0)),
            _ => Err(CsecsError::InvalidParams(
                "specify --r-a or --t-a (the operation orders are nonzero)".into(),
            )),
        }
    }

    fn params(&self) -> Result<CsEcsParams, CsecsError> {
        let (t_a, r_a, t_b, r_b) = self.coefficients()?;
        CsEcsParams::new(
            Complex64::new(self.alpha_re, self.alpha_im),
            self.m,
            self.n,
            t_a,
            r_a,
            t_b,
            r_b,
            self.parity.into(),
        )
    }
}

#[derive(Args)]
struct PointArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Restrict the output to one quantity (default: all)
    #[arg(long, value_enum)]
    quantity: Option<QuantityArg>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    quantity: QuantityArg,
    /// Real amplitude axis: value or start:stop:count
    #[arg(long, default_value = "1.0")]
    alpha_re: AxisArg,
    /// Imaginary amplitude axis: value or start:stop:count
    #[arg(long, default_value = "0.0")]
    alpha_im: AxisArg,
    /// Symmetric sweep of r_A = r_B: start:stop:count
    #[arg(long, conflicts_with_all = ["t", "r_a", "r_b", "t_a", "t_b"])]
    r: Option<AxisArg>,
    /// Symmetric sweep of t_A = t_B: start:stop:count
    #[arg(long, conflicts_with_all = ["r_a", "r_b", "t_a", "t_b"])]
    t: Option<AxisArg>,
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct FigureArgs {
    /// Figure table id: fig1 .. fig7
    #[arg(long)]
    id: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ThresholdArgs {
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Tolerance applied to every equivalence check
    #[arg(long, default_value_t = 1e-6)]
    tolerance: f64,
    /// Fock cutoff override for oracle evaluations (or env CSECS_NMAX)
    #[arg(long)]
    n_max: Option<usize>,
    /// Also write the per-check table here
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

fn env_n_max() -> Result<Option<usize>, CsecsError> {
    match std::env::var(ENV_N_MAX) {
        Ok(raw) => raw
            .parse::<usize>()
            .map(Some)
            .map_err(|e| CsecsError::InvalidParams(format!("{ENV_N_MAX}='{raw}': {e}"))),
        Err(_) => Ok(None),
    }
}

fn effective_n_max(flag: Option<usize>) -> Result<Option<usize>, CsecsError> {
    match flag {
        Some(n) => Ok(Some(n)),
        None => env_n_max(),
    }
}

fn emit(table: &ResultTable, output: &OutputArgs) -> std::io::Result<()> {
    let rendered = match output.format {
        FormatArg::Csv => table.to_csv(),
        FormatArg::Json => {
            let mut s = table.to_json();
            s.push('\n');
            s
        }
    };
    match &output.out {
        Some(path) => std::fs::write(path, rendered),
        None => std::io::stdout().write_all(rendered.as_bytes()),
    }
}

fn push_input_cells(header: &mut Vec<String>, row: &mut Vec<Cell>, p: &CsEcsParams) {
    let inputs: [(&str, Cell); 9] = [
        ("alpha_re", Cell::Num(p.alpha.re)),
        ("alpha_im", Cell::Num(p.alpha.im)),
        ("m", Cell::Num(p.m as f64)),
        ("n", Cell::Num(p.n as f64)),
        ("t_a", Cell::Num(p.t_a)),
        ("r_a", Cell::Num(p.r_a)),
        ("t_b", Cell::Num(p.t_b)),
        ("r_b", Cell::Num(p.r_b)),
        ("parity", Cell::Text(p.parity.label().into())),
    ];
    for (name, cell) in inputs {
        header.push(name.into());
        row.push(cell);
    }
}

fn run_point(args: &PointArgs) -> Result<ResultTable, CsecsError> {
    let params = args.params.params()?;
    let n_max = effective_n_max(args.params.n_max)?;
    let cfg = TruncationConfig::auto_or(params.alpha, n_max);
    let oracle = args.params.oracle_check;
    let wanted: Vec<Quantity> = match args.quantity {
        Some(q) => vec![q.into()],
        None => vec![
            Quantity::Normalization,
            Quantity::Concurrence,
            Quantity::Fidelity,
            Quantity::SvStatistic,
        ],
    };
    let mut header = Vec::new();
    let mut row = Vec::new();
    push_input_cells(&mut header, &mut row, &params);
    let state = if oracle { Some(build_cs_eecs(&params, &cfg)?) } else { None };
    for q in wanted {
        match q {
            Quantity::Normalization => {
                let norm = normalization(&params)?;
                header.extend(["n_factor".into(), "inv_square".into()]);
                row.extend([Cell::Num(norm.n_factor), Cell::Num(norm.inv_square)]);
                if let Some(s) = &state {
                    header.extend(["inv_square_oracle".into(), "inv_square_delta".into()]);
                    row.extend([
                        Cell::Num(s.pre_norm_sqr()),
                        Cell::Num((s.pre_norm_sqr() - norm.inv_square).abs()),
                    ]);
                }
            }
            Quantity::Concurrence => {
                let rep = csecs::entanglement::concurrence_closed(&params)?;
                header.extend(["c".into(), "p1".into(), "p2".into()]);
                row.extend([Cell::Num(rep.c), Cell::Num(rep.p1), Cell::Num(rep.p2)]);
                if let Some(s) = &state {
                    let oracle_c = concurrence_oracle(s);
                    header.extend(["c_oracle".into(), "c_delta".into()]);
                    row.extend([Cell::Num(oracle_c), Cell::Num((oracle_c - rep.c).abs())]);
                }
            }
            Quantity::Fidelity => {
                let rep = fidelity_closed(&params)?;
                header.extend(["f".into(), "above_classical".into()]);
                row.extend([
                    Cell::Num(rep.f),
                    Cell::Num(if rep.above_classical { 1.0 } else { 0.0 }),
                ]);
                if let Some(s) = &state {
                    let oracle_f = fidelity_by_quadrature(s, 40)?;
                    header.extend(["f_oracle".into(), "f_delta".into()]);
                    row.extend([Cell::Num(oracle_f), Cell::Num((oracle_f - rep.f).abs())]);
                }
            }
            Quantity::SvStatistic => {
                let closed_applies =
                    params.m == 1 && params.n == 1 && params.parity == Parity::Even;
                let rep = if closed_applies {
                    Some(sv_statistic_closed(&params)?)
                } else if oracle {
                    Some(sv_statistic_oracle(&params, &cfg)?)
                } else {
                    None
                };
                header.extend([
                    "s_plus".into(),
                    "n_a".into(),
                    "n_b".into(),
                    "ab_re".into(),
                    "ab_im".into(),
                    "entangled".into(),
                ]);
                match rep {
                    Some(rep) => row.extend([
                        Cell::Num(rep.s_plus),
                        Cell::Num(rep.n_a),
                        Cell::Num(rep.n_b),
                        Cell::Num(rep.ab.re),
                        Cell::Num(rep.ab.im),
                        Cell::Num(if rep.entangled { 1.0 } else { 0.0 }),
                    ]),
                    None => row.extend([
                        Cell::Empty,
                        Cell::Empty,
                        Cell::Empty,
                        Cell::Empty,
                        Cell::Empty,
                        Cell::Empty,
                    ]),
                }
                if oracle && closed_applies {
                    let oracle_rep = sv_statistic_oracle(&params, &cfg)?;
                    let closed_rep = sv_statistic_closed(&params)?;
                    header.extend(["s_plus_oracle".into(), "s_plus_delta".into()]);
                    row.extend([
                        Cell::Num(oracle_rep.s_plus),
                        Cell::Num((oracle_rep.s_plus - closed_rep.s_plus).abs()),
                    ]);
                }
            }
        }
    }
    Ok(ResultTable { header, rows: vec![row] })
}

fn run_sweep_cmd(args: &SweepArgs) -> Result<ResultTable, CsecsError> {
    let coeffs = match (&args.r, &args.t) {
        (Some(r), None) => CoefficientSpec::SweepR(r.0),
        (None, Some(t)) => CoefficientSpec::SweepT(t.0),
        (Some(_), Some(_)) => unreachable!("clap conflict rules"),
        (None, None) => {
            let (t_a, r_a, t_b, r_b) = args.params.coefficients()?;
            CoefficientSpec::Fixed { t_a, r_a, t_b, r_b }
        }
    };
    let spec = SweepSpec {
        quantity: args.quantity.into(),
        alpha_re: args.alpha_re.0,
        alpha_im: args.alpha_im.0,
        coeffs,
        m: args.params.m,
        n: args.params.n,
        parity: args.params.parity.into(),
        oracle_check: args.params.oracle_check,
        n_max: effective_n_max(args.params.n_max)?,
    };
    run_sweep(&spec)
}

fn run_threshold() -> ResultTable {
    let alpha_star = sv_threshold();
    let residual = eecs_sv(Complex64::new(alpha_star, 0.0));
    ResultTable {
        header: vec!["alpha_star".into(), "x_star".into(), "residual".into()],
        rows: vec![vec![
            Cell::Num(alpha_star),
            Cell::Num(alpha_star * alpha_star),
            Cell::Num(residual),
        ]],
    }
}

fn verify_table(report: &csecs::verify::VerifyReport) -> ResultTable {
    ResultTable {
        header: vec![
            "check".into(),
            "max_err".into(),
            "tolerance".into(),
            "cases".into(),
            "passed".into(),
        ],
        rows: report
            .checks
            .iter()
            .map(|c| {
                vec![
                    Cell::Text(c.name.into()),
                    Cell::Num(c.max_err),
                    Cell::Num(c.tolerance),
                    Cell::Num(c.cases as f64),
                    Cell::Num(if c.passed { 1.0 } else { 0.0 }),
                ]
            })
            .collect(),
    }
}

fn exit_code_for(err: &CsecsError) -> u8 {
    match err {
        CsecsError::InvalidParams(_) | CsecsError::InvalidSpec(_) | CsecsError::UnsupportedOrder { .. } => 2,
        CsecsError::DegenerateState(_)
        | CsecsError::Truncation { .. }
        | CsecsError::Headroom(_)
        | CsecsError::Convergence { .. } => 4,
    }
}

fn run(cli: &Cli) -> Result<u8, CsecsError> {
    let io_err = |e: std::io::Error| CsecsError::InvalidSpec(format!("output failed: {e}"));
    match &cli.cmd {
        Cmd::Point(args) => {
            let table = run_point(args)?;
            emit(&table, &args.output).map_err(io_err)?;
            Ok(0)
        }
        Cmd::Sweep(args) => {
            let table = run_sweep_cmd(args)?;
            emit(&table, &args.output).map_err(io_err)?;
            Ok(0)
        }
        Cmd::Figure(args) => {
            let id: FigureId = args.id.parse()?;
            let table = run_figure(id);
            emit(&table, &args.output).map_err(io_err)?;
            Ok(0)
        }
        Cmd::Threshold(args) => {
            let table = run_threshold();
            emit(&table, &args.output).map_err(io_err)?;
            Ok(0)
        }
        Cmd::Verify(args) => {
            if !(args.tolerance > 0.0) {
                return Err(CsecsError::InvalidParams("tolerance must be positive".into()));
            }
            let cfg = VerifyConfig {
                tolerance: args.tolerance,
                n_max: effective_n_max(args.n_max)?,
            };
            let report = run_verification(&cfg);
            for line in report.render_lines() {
                println!("{line}");
            }
            if let Some(path) = &args.out {
                let out = OutputArgs { out: Some(path.clone()), format: args.format };
                emit(&verify_table(&report), &out).map_err(io_err)?;
            }
            Ok(if report.passed { 0 } else { 3 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
