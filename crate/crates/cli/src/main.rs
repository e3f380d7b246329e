//! `critline`: evaluators, zero lists and audit reports from the command line.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 evaluation error,
//! 3 I/O error, 4 an audit row exceeded its tolerance (tool failure or
//! finding; the report's `status` column tells which).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use critline::audit::{
    counterexample_search, dirichlet_audit, epstein_audit, functional_zeta_audit, hadamard_audit,
    phase_audit, principal_identity_table, zero_report_table, AuditOutcome, Tolerances,
    HADAMARD_PAIRS, SEARCH_STEP,
};
use critline::dirichlet::{character, enumerate_characters, l_function};
use critline::epstein::{epstein_continued, zero_search_rectangle, QuadraticForm, RectangleRegion};
use critline::phase::{ScanGrid, Variant};
use critline::report::Table;
use critline::zeros::{build_zero_list, MAX_ZERO_COUNT};
use critline::zeta::{big_f, phi, zeta_auto, ZeroList};
use critline::{Error, EvalResult};

const ZEROS_ENV: &str = "CRITLINE_ZEROS";
const DEFAULT_ZERO_TOL: f64 = 1e-10;

#[derive(Parser, Debug)]
#[command(name = "critline", version, about = "Numerical audits around the critical line")]
struct Cli {
    /// Override a named tolerance, e.g. `--tol hadamard=0.05`.
    #[arg(long = "tol", value_name = "NAME=VALUE", global = true)]
    tol: Vec<String>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,
    /// Worker threads; 0 picks the number of cores.
    #[arg(long, default_value_t = 0, global = true)]
    threads: usize,
    /// Zero list used by the Hadamard audit. Defaults to $CRITLINE_ZEROS,
    /// otherwise the zeros are computed.
    #[arg(long, global = true)]
    zeros_file: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Function {
    Zeta,
    Phi,
    #[value(name = "F")]
    F,
    #[value(name = "L")]
    L,
    Epstein,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    FunctionalZeta,
    Hadamard,
    Phase,
    Dirichlet,
    PrincipalIdentity,
    Epstein,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a function at one or more points (`a+bi` syntax).
    Eval {
        #[arg(value_enum)]
        function: Function,
        /// Points such as `2` or `0.5+14.1i`; put `--` before a point with a
        /// leading minus sign and a nonzero imaginary part.
        #[arg(required = true, allow_negative_numbers = true)]
        points: Vec<String>,
        /// Modulus for `L`.
        #[arg(long)]
        q: Option<u64>,
        /// Character label for `L`.
        #[arg(long, default_value_t = 1)]
        j: u64,
        /// Quadratic form `a,b,c` for `epstein`.
        #[arg(long, default_value = "1,0,1")]
        form: String,
    },
    /// Compute the first `count` critical-line zero ordinates.
    Zeros {
        count: usize,
        #[arg(long = "zero-tol", default_value_t = DEFAULT_ZERO_TOL)]
        zero_tol: f64,
    },
    /// Run an audit grid and emit its report.
    Audit {
        #[arg(value_enum)]
        target: Target,
        /// Which phase-term variant's disagreements set the exit code; the
        /// ledger always holds both.
        #[arg(long)]
        variant: Option<String>,
        /// Restrict the principal-identity audit to one modulus.
        #[arg(long)]
        q: Option<u64>,
    },
    /// Dump every Dirichlet character mod `q` as JSON lines.
    Characters { q: u64 },
    /// Count and locate zeros of an Epstein zeta function in a rectangle.
    Search {
        /// Quadratic form `a,b,c`.
        form: String,
        /// `sigma_lo,sigma_hi,t_lo,t_hi`.
        #[arg(long, allow_hyphen_values = true)]
        region: Option<String>,
        #[arg(long, default_value_t = SEARCH_STEP)]
        step: f64,
    },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Io(_) => 3,
            Error::InvalidArgument(_) | Error::Parse { .. } => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn parse_point(token: &str) -> Result<Complex64, Failure> {
    let cleaned: String = token.chars().filter(|c| !c.is_whitespace()).collect();
    cleaned
        .parse::<Complex64>()
        .ok()
        .filter(|z| z.re.is_finite() && z.im.is_finite())
        .ok_or_else(|| Failure::usage(format!("cannot parse point {token:?}; expected a decimal like 2 or 0.5+14.1i")))
}

fn parse_form(token: &str) -> Result<QuadraticForm, Failure> {
    token
        .parse::<QuadraticForm>()
        .map_err(|e| Failure::usage(format!("bad form {token:?}: {e}")))
}

fn parse_region(token: &str) -> Result<RectangleRegion, Failure> {
    let parts: Vec<f64> = token
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::usage(format!("bad region {token:?}; expected sigma_lo,sigma_hi,t_lo,t_hi")))?;
    if parts.len() != 4 {
        return Err(Failure::usage(format!("region {token:?} needs four numbers")));
    }
    Ok(RectangleRegion::new(parts[0], parts[1], parts[2], parts[3])?)
}

/// Writes `contents` to `path` through a sibling temp file and a rename.
fn write_atomic(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let name = path
        .file_name()
        .ok_or_else(|| std::io::Error::new(std::io::ErrorKind::InvalidInput, "output path has no file name"))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}

fn meta_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".meta");
    PathBuf::from(s)
}

/// Emits `data` to `--out` (plus a metadata sidecar) or to stdout.
fn emit(cli: &Cli, data: &str) -> Result<(), Failure> {
    match &cli.out {
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(data.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure { code: 3, message: format!("writing stdout: {e}") })
        }
        Some(path) => {
            let io = |e: std::io::Error| Failure { code: 3, message: format!("writing {}: {e}", path.display()) };
            write_atomic(path, data.as_bytes()).map_err(io)?;
            let created = SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0);
            let meta = serde_json::json!({
                "created_unix": created,
                "version": env!("CARGO_PKG_VERSION"),
                "args": std::env::args().skip(1).collect::<Vec<_>>(),
            });
            write_atomic(&meta_path(path), format!("{meta}\n").as_bytes()).map_err(io)
        }
    }
}

fn render(cli: &Cli, table: &Table) -> String {
    match cli.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json_lines(),
    }
}

fn tolerances(cli: &Cli) -> Result<Tolerances, Failure> {
    let mut t = Tolerances::default();
    for spec in &cli.tol {
        t.apply_override(spec)?;
    }
    Ok(t)
}

fn eval_one(function: Function, point: Complex64, q: Option<u64>, j: u64, form: &QuadraticForm) -> Result<EvalResult, Failure> {
    Ok(match function {
        Function::Zeta => zeta_auto(point)?,
        Function::Phi => phi(point)?,
        Function::F => {
            if point.im != 0.0 {
                return Err(Failure::usage(format!("F takes a real t, got {point}")));
            }
            big_f(point.re)
        }
        Function::L => {
            let q = q.ok_or_else(|| Failure::usage("L needs --q"))?;
            l_function(point, &character(q, j)?)?
        }
        Function::Epstein => epstein_continued(point, form)?,
    })
}

fn cmd_eval(cli: &Cli, function: Function, points: &[String], q: Option<u64>, j: u64, form: &str) -> Result<u8, Failure> {
    let form = parse_form(form)?;
    let parsed: Vec<Complex64> = points.iter().map(|p| parse_point(p)).collect::<Result<_, _>>()?;
    let mut table = Table::new(&["re_s", "im_s", "value_re", "value_im", "abs_err"]);
    for s in parsed {
        let r = eval_one(function, s, q, j, &form)?;
        table.push(vec![s.re.into(), s.im.into(), r.value.re.into(), r.value.im.into(), r.abs_err.into()]);
    }
    emit(cli, &render(cli, &table))?;
    Ok(0)
}

fn cmd_zeros(cli: &Cli, count: usize, zero_tol: f64) -> Result<u8, Failure> {
    if count == 0 || count > MAX_ZERO_COUNT {
        return Err(Failure::usage(format!("count must be in 1..={MAX_ZERO_COUNT}, got {count}")));
    }
    if !(zero_tol > 0.0) {
        return Err(Failure::usage(format!("--zero-tol must be positive, got {zero_tol}")));
    }
    let list = build_zero_list(count, zero_tol)?;
    emit(cli, &list.to_text())?;
    Ok(0)
}

fn load_zeros(cli: &Cli, needed: usize) -> Result<ZeroList, Failure> {
    let path = cli
        .zeros_file
        .clone()
        .or_else(|| std::env::var_os(ZEROS_ENV).map(PathBuf::from));
    match path {
        Some(p) => {
            if !p.exists() {
                return Err(Failure { code: 3, message: format!("zeros file {} not found", p.display()) });
            }
            Ok(ZeroList::read(&p)?)
        }
        None => Ok(build_zero_list(needed, DEFAULT_ZERO_TOL)?),
    }
}

fn finish_audit(cli: &Cli, outcome: AuditOutcome) -> Result<u8, Failure> {
    emit(cli, &render(cli, &outcome.table))?;
    let mut err = std::io::stderr().lock();
    for note in &outcome.notes {
        let _ = writeln!(err, "{}: {note}", outcome.target);
    }
    Ok(if outcome.all_within_tolerance() { 0 } else { 4 })
}

fn cmd_audit(cli: &Cli, target: Target, variant: Option<&str>, q: Option<u64>) -> Result<u8, Failure> {
    let tol = tolerances(cli)?;
    if variant.is_some() && target != Target::Phase {
        return Err(Failure::usage("--variant only applies to the phase audit"));
    }
    if q.is_some() && target != Target::PrincipalIdentity {
        return Err(Failure::usage("--q only applies to the principal-identity audit"));
    }
    let outcome = match target {
        Target::FunctionalZeta => functional_zeta_audit(&tol)?,
        Target::Hadamard => {
            let needed = *HADAMARD_PAIRS.last().expect("non-empty");
            hadamard_audit(&load_zeros(cli, needed)?, &tol)?
        }
        Target::Phase => {
            let counted: Vec<Variant> = match variant {
                None => Variant::ALL.to_vec(),
                Some(v) => vec![v.parse::<Variant>().map_err(|_| {
                    Failure::usage(format!("unknown variant {v:?}; expected as-printed or t-squared"))
                })?],
            };
            phase_audit(&tol, &counted, &ScanGrid::default())?
        }
        Target::Dirichlet => dirichlet_audit(&tol)?,
        Target::PrincipalIdentity => {
            let moduli: Vec<u64> = match q {
                Some(q) if q >= 1 => vec![q],
                Some(q) => return Err(Failure::usage(format!("--q must be positive, got {q}"))),
                None => (2..=50).collect(),
            };
            principal_identity_table(&moduli, &tol)?
        }
        Target::Epstein => epstein_audit(&tol)?,
    };
    finish_audit(cli, outcome)
}

fn cmd_characters(cli: &Cli, q: u64) -> Result<u8, Failure> {
    let mut out = String::new();
    for chi in enumerate_characters(q)? {
        let line = serde_json::to_string(&chi.to_dump())
            .map_err(|e| Failure { code: 2, message: e.to_string() })?;
        out.push_str(&line);
        out.push('\n');
    }
    emit(cli, &out)?;
    Ok(0)
}

fn cmd_search(cli: &Cli, form: &str, region: Option<&str>, step: f64) -> Result<u8, Failure> {
    let form = parse_form(form)?;
    let region = match region {
        Some(r) => parse_region(r)?,
        None => counterexample_search().1,
    };
    let report = zero_search_rectangle(&form, &region, step)?;
    emit(cli, &render(cli, &zero_report_table(&[report])))?;
    Ok(0)
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build_global()
        .map_err(|e| Failure::usage(format!("cannot start thread pool: {e}")))?;
    match &cli.command {
        Command::Eval { function, points, q, j, form } => cmd_eval(cli, *function, points, *q, *j, form),
        Command::Zeros { count, zero_tol } => cmd_zeros(cli, *count, *zero_tol),
        Command::Audit { target, variant, q } => cmd_audit(cli, *target, variant.as_deref(), *q),
        Command::Characters { q } => cmd_characters(cli, *q),
        Command::Search { form, region, step } => cmd_search(cli, form, region.as_deref(), *step),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("critline: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
