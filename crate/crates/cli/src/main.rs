use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use paramod_core::gralg::{cyclotomic_product_test, palindrome_test, parse_polynomial, GralgError, HilbertSeries, PolyDisplay};
use paramod_core::paramod::{
    eisenstein_paramodular, gritsenko_lift, pullback_p4, pullback_p5, pullback_p8, witt_p1, CoefficientSource,
    JacobiFormData, LiftSource, P4Window, ParamodError, ParamodularSeries, QuadWindow,
};
use paramod_core::suites::{self, Preset, Status, Suite, SuiteError};

#[derive(Parser)]
#[command(name = "paramod", version, about = "Exact expansions and checks for paramodular forms of small level")]
struct Cli {
    /// Directory holding the Jacobi tables.
    #[arg(long, global = true, env = "PARAMOD_DATA", default_value = "data")]
    data: PathBuf,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Gritsenko lift of a Jacobi table on a coefficient box.
    Lift {
        #[arg(long)]
        level: i64,
        #[arg(long)]
        jacobi: PathBuf,
        #[arg(long, default_value_t = 1)]
        amax: i64,
        #[arg(long, default_value_t = 1)]
        cmax: i64,
        /// Normalize to constant term 1 (Jacobi Eisenstein input).
        #[arg(long)]
        eisenstein: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pullback of a paramodular series or of the lift of a Jacobi table.
    Pullback {
        #[arg(long, value_enum)]
        op: Op,
        /// Paramodular series JSON.
        #[arg(long, conflicts_with = "jacobi", required_unless_present = "jacobi")]
        series: Option<PathBuf>,
        /// Jacobi table; its lift is used directly.
        #[arg(long)]
        jacobi: Option<PathBuf>,
        /// Box for P1 on a Jacobi table.
        #[arg(long, default_value_t = 1)]
        amax: i64,
        #[arg(long, default_value_t = 1)]
        cmax: i64,
        /// P4: number of q2 rows.
        #[arg(long)]
        max_c: Option<i64>,
        /// P4: cap on q1 exponents, in halves.
        #[arg(long)]
        max_x: Option<i64>,
        /// P5/P8: cap on the trace.
        #[arg(long)]
        trace_cap: Option<i64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
    },
    /// Dimensions and relations for a generator preset.
    Relations {
        #[arg(long, value_parser = parse_preset)]
        preset: Preset,
        #[arg(long, default_value_t = 20)]
        weight_max: u32,
    },
    /// Expansion and Stanley criteria of a Hilbert series.
    Hilbert {
        #[arg(long, value_enum, conflicts_with_all = ["numerator", "denominator"])]
        preset: Option<HilbertPreset>,
        /// Numerator polynomial, e.g. "1 + t^8".
        #[arg(long, requires = "denominator")]
        numerator: Option<String>,
        /// Denominator degrees, e.g. "2,4,6".
        #[arg(long, value_delimiter = ',')]
        denominator: Option<Vec<u32>>,
        #[arg(long, default_value_t = 20)]
        kmax: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "verbatim")]
enum Op {
    P1,
    P4,
    P5,
    P8,
}

#[derive(Clone, Copy, ValueEnum)]
enum HilbertPreset {
    Level5,
    Level7,
    AstarSym,
    Astar,
    Degenerate,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

fn parse_preset(s: &str) -> Result<Preset, String> {
    s.parse()
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Failed(String),
}

impl From<ParamodError> for CliError {
    fn from(e: ParamodError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<SuiteError> for CliError {
    fn from(e: SuiteError) -> Self {
        CliError::Input(e.to_string())
    }
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("{}: {e}", path.display()))
}

fn emit(value: &Value, out: Option<&Path>) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("serializable") + "\n";
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| io_err(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_jacobi(path: &Path) -> Result<JacobiFormData, CliError> {
    JacobiFormData::from_file(path).map_err(|e| io_err(path, e))
}

fn read_series(path: &Path) -> Result<ParamodularSeries, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| io_err(path, e))?;
    ParamodularSeries::from_json(&v).map_err(|e| io_err(path, e))
}

fn lift(level: i64, jacobi: &Path, amax: i64, cmax: i64, eisenstein: bool, out: Option<&Path>) -> Result<(), CliError> {
    let phi = read_jacobi(jacobi)?;
    if phi.index != level {
        return Err(CliError::Input(format!("{} has index {}, not level {level}", jacobi.display(), phi.index)));
    }
    let f = if eisenstein { eisenstein_paramodular(&phi, amax, cmax)? } else { gritsenko_lift(&phi, amax, cmax)? };
    emit(&f.to_json(), out)
}

#[allow(clippy::too_many_arguments)]
fn pullback(
    op: Op,
    series: Option<&Path>,
    jacobi: Option<&Path>,
    boxed: (i64, i64),
    max_c: Option<i64>,
    max_x: Option<i64>,
    trace_cap: Option<i64>,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let phi = jacobi.map(read_jacobi).transpose()?;
    let owned = series.map(read_series).transpose()?;
    let lift_src = phi.as_ref().map(LiftSource::new).transpose()?;
    let src: &dyn CoefficientSource = match (&owned, &lift_src) {
        (Some(s), _) => s,
        (None, Some(l)) => l,
        (None, None) => return Err(CliError::Input("one of --series or --jacobi is required".into())),
    };
    let (name, expansion) = match op {
        Op::P1 => {
            let f = match (&owned, &phi) {
                (Some(s), _) => s.clone(),
                (None, Some(p)) => gritsenko_lift(p, boxed.0, boxed.1)?,
                (None, None) => unreachable!(),
            };
            ("P1", witt_p1(&f).to_json())
        }
        Op::P4 => ("P4", pullback_p4(src, P4Window { max_c, max_x })?.to_json()),
        Op::P5 => ("P5", pullback_p5(src, QuadWindow { trace_cap })?.to_json()),
        Op::P8 => ("P8", pullback_p8(src, QuadWindow { trace_cap })?.to_json()),
    };
    let value = json!({ "op": name, "level": src.level(), "weight": src.weight(), "series": expansion });
    emit(&value, out)
}

fn verify(suite: Suite, data: &Path) -> Result<(), CliError> {
    let results = suites::run(suite, data)?;
    for r in &results {
        print!("{r}");
    }
    let json = Value::Array(results.iter().map(|r| r.to_json()).collect());
    println!("{}", serde_json::to_string(&json).expect("serializable"));
    let worst = results.iter().map(|r| r.worst()).max().unwrap_or(Status::Pass);
    match worst {
        Status::Pass => Ok(()),
        Status::Fail => Err(CliError::Failed("some checks failed".into())),
        Status::Undecided => Err(CliError::Failed("some checks were undecided at the available truncation".into())),
    }
}

fn relations(preset: Preset, weight_max: u32) -> Result<(), CliError> {
    match suites::relations_report(preset, weight_max) {
        Ok(v) => emit(&v, None),
        Err(e @ (GralgError::Unstable { .. } | GralgError::WindowTooSmall { .. })) => Err(CliError::Failed(e.to_string())),
        Err(e) => Err(CliError::Input(e.to_string())),
    }
}

fn hilbert(preset: Option<HilbertPreset>, numerator: Option<&str>, denominator: Option<Vec<u32>>, kmax: usize) -> Result<(), CliError> {
    let h = match (preset, numerator, denominator) {
        (Some(p), _, _) => match p {
            HilbertPreset::Level5 => HilbertSeries::level5(),
            HilbertPreset::Level7 => HilbertSeries::level7(),
            HilbertPreset::AstarSym => HilbertSeries::a_star_symmetric(),
            HilbertPreset::Astar => HilbertSeries::a_star(),
            HilbertPreset::Degenerate => HilbertSeries::degenerate_hilbert(),
        },
        (None, Some(n), Some(d)) => {
            if d.contains(&0) {
                return Err(CliError::Input("denominator degrees must be positive".into()));
            }
            HilbertSeries::new(parse_polynomial(n).map_err(|e| CliError::Input(e.to_string()))?, d)
        }
        _ => return Err(CliError::Input("give --preset, or --numerator with --denominator".into())),
    };
    let value = json!({
        "series": h.to_string(),
        "numerator": PolyDisplay(&h.numerator).to_string(),
        "denominator": h.denominator,
        "expansion": h.expand(kmax),
        "palindromic": palindrome_test(&h.numerator),
        "cyclotomic_product": cyclotomic_product_test(&h.numerator),
    });
    emit(&value, None)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Lift { level, jacobi, amax, cmax, eisenstein, out } => lift(level, &jacobi, amax, cmax, eisenstein, out.as_deref()),
        Cmd::Pullback { op, series, jacobi, amax, cmax, max_c, max_x, trace_cap, out } => pullback(
            op,
            series.as_deref(),
            jacobi.as_deref(),
            (amax, cmax),
            max_c,
            max_x,
            trace_cap,
            out.as_deref(),
        ),
        Cmd::Verify { suite } => verify(suite, &cli.data),
        Cmd::Relations { preset, weight_max } => relations(preset, weight_max),
        Cmd::Hilbert { preset, numerator, denominator, kmax } => hilbert(preset, numerator.as_deref(), denominator, kmax),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                CliError::Failed(_) => ExitCode::from(1),
                CliError::Input(_) => ExitCode::from(2),
            }
        }
    }
}
