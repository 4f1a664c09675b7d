//! The `ncgq` command line.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{AlgebraElement, Monomial, QMinusI, QPlusI, RootMode};
use crate::audit::{build_audit, AuditError, AuditOptions, AuditReport, Verdict};
use crate::calculus::{AdTable, Calculus, Coefficient, DiffForm, FormBasis};
use crate::dirac::{
    build_dirac, compare_spectrum, DiracError, DiracOptions, MatchReport, Spectrum,
};
use crate::fixtures::{FixtureError, Fixtures};
use crate::linalg::LinalgError;
use crate::qparams::{QMode, QParams};
use crate::riemannian::{
    regularity_defects, regularity_kernel, residuals, tensoriality_defects, ConnectionSource,
    ConnectionSystem, Curvature, RiemannianError, SpinConnection, VectorForm,
};
use crate::scalars::{Field, GaussianRational};
use crate::verify::{run_verify, VerifyError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MATH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "ncgq",
    version,
    about = "Noncommutative Riemannian geometry of reduced B_q[SU_2] at q^4 = 1"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Command {
    /// Run the invariant suites and print a summary table
    Verify(RunArgs),
    /// Solve the torsion and cotorsion equations for the spin connection
    Connection(RunArgs),
    /// Covariant derivative and Riemann curvature of the connection
    Curvature(RunArgs),
    /// Spectrum of the Dirac operator, matched against the printed list
    Dirac(RunArgs),
    /// Printed values side by side with their recomputation
    Audit(RunArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq, clap::Args)]
pub struct RunArgs {
    #[arg(long, value_parser = parse_mode, allow_hyphen_values = true)]
    pub q: QMode,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Tolerance for spectrum matching
    #[arg(long, value_parser = parse_tol)]
    pub tol: Option<f64>,
}

fn parse_mode(s: &str) -> Result<QMode, String> {
    s.parse()
}

fn parse_tol(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t.is_finite() && t > 0.0 => Ok(t),
        _ => Err(format!("{s:?} is not a positive finite number")),
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("`{command}` does not accept --q {mode}")]
    Mode { command: &'static str, mode: QMode },
    #[error(transparent)]
    Fixture(#[from] FixtureError),
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Riemannian(#[from] RiemannianError),
    #[error(transparent)]
    Dirac(#[from] DiracError),
    #[error(transparent)]
    Audit(#[from] AuditError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mode { .. } | CliError::Fixture(_) | CliError::Write { .. } => EXIT_USAGE,
            _ => EXIT_MATH,
        }
    }
}

/// The document a command produced and the exit code it implies.
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub code: i32,
}

impl Command {
    pub fn args(&self) -> &RunArgs {
        match self {
            Command::Verify(a)
            | Command::Connection(a)
            | Command::Curvature(a)
            | Command::Dirac(a)
            | Command::Audit(a) => a,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Command::Verify(_) => "verify",
            Command::Connection(_) => "connection",
            Command::Curvature(_) => "curvature",
            Command::Dirac(_) => "dirac",
            Command::Audit(_) => "audit",
        }
    }

    fn accepts(&self, mode: QMode) -> bool {
        match self {
            Command::Verify(_) | Command::Connection(_) | Command::Curvature(_) => {
                mode != QMode::One
            }
            Command::Dirac(_) | Command::Audit(_) => mode != QMode::Generic,
        }
    }

    fn default_format(&self) -> Format {
        match self {
            Command::Verify(_) => Format::Text,
            _ => Format::Json,
        }
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run(&cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("ncgq: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cmd: &Command) -> Result<i32, CliError> {
    let args = cmd.args();
    if !cmd.accepts(args.q) {
        return Err(CliError::Mode {
            command: cmd.name(),
            mode: args.q,
        });
    }
    let fx = Fixtures::load()?;
    let outcome = execute(cmd, &fx)?;
    let body = match args.format.unwrap_or(cmd.default_format()) {
        Format::Json => to_json(&outcome.json),
        Format::Text => outcome.text,
    };
    match &args.out {
        Some(path) => write_atomic(path, body.as_bytes()).map_err(|source| CliError::Write {
            path: path.clone(),
            source,
        })?,
        None => {
            let mut out = io::stdout().lock();
            let _ = out.write_all(body.as_bytes());
            let _ = out.flush();
        }
    }
    Ok(outcome.code)
}

pub fn execute(cmd: &Command, fx: &Fixtures) -> Result<Outcome, CliError> {
    let args = cmd.args();
    let tol = args.tol.unwrap_or(1e-3);
    match cmd {
        Command::Verify(_) => {
            let r = run_verify(fx, args.q, tol)?;
            Ok(Outcome {
                json: serde_json::to_value(&r).expect("serializable"),
                text: format!("{r}\n"),
                code: if r.all_passed() { EXIT_OK } else { EXIT_MATH },
            })
        }
        Command::Connection(_) => connection(fx, args.q),
        Command::Curvature(_) => curvature(fx, args.q),
        Command::Dirac(_) => dirac(fx, args.q, tol),
        Command::Audit(_) => {
            let r = build_audit(
                fx,
                args.q,
                &AuditOptions {
                    spectrum_tolerance: tol,
                },
            )?;
            Ok(Outcome {
                json: audit_json(&r),
                text: audit_text(&r),
                code: EXIT_OK,
            })
        }
    }
}

pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Writes to a sibling temporary file, syncs it, then renames over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let name = path.file_name().ok_or_else(|| {
        io::Error::new(io::ErrorKind::InvalidInput, "output path has no file name")
    })?;
    let mut tmp_name = std::ffi::OsString::from(".");
    tmp_name.push(name);
    tmp_name.push(format!(".tmp-{}", std::process::id()));
    let tmp = dir.join(tmp_name);
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}

fn strings<T: ToString>(m: BTreeMap<String, T>) -> BTreeMap<String, String> {
    m.into_iter().map(|(k, v)| (k, v.to_string())).collect()
}

fn forms_json<C: Coefficient>(forms: &[DiffForm<C>]) -> BTreeMap<String, String> {
    FormBasis::ALL
        .iter()
        .filter(|e| !forms[e.index()].is_zero())
        .map(|e| (e.to_string(), forms[e.index()].to_string()))
        .collect()
}

fn vector_text<C: Coefficient>(v: &VectorForm<C>) -> String {
    let parts: Vec<String> = FormBasis::ALL
        .iter()
        .filter(|e| !v[e.index()].is_zero())
        .map(|e| format!("({}) ⊗ {e}", v[e.index()]))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn connection(fx: &Fixtures, mode: QMode) -> Result<Outcome, CliError> {
    match mode {
        QMode::Generic => connection_in(fx, mode, &QParams::generic(), &Calculus::generic()),
        _ => {
            let p = QParams::at(mode).expect("numeric mode");
            let cal = Calculus::constant(mode).expect("root mode");
            connection_in(fx, mode, &p, &cal)
        }
    }
}

fn connection_in<F>(
    fx: &Fixtures,
    mode: QMode,
    p: &QParams<F>,
    cal: &Calculus<F>,
) -> Result<Outcome, CliError>
where
    F: Field + Coefficient<Scalar = F>,
{
    let ad = AdTable::printed(p).map_err(RiemannianError::from)?;
    let sys = ConnectionSystem::assemble(cal, &ad)?;
    let printed = SpinConnection::printed(&fx.connection, p)?;
    let solved = sys.solve();
    let (status, code) = match &solved {
        Ok(_) => ("unique", EXIT_OK),
        Err(LinalgError::Inconsistent { .. }) => ("inconsistent", EXIT_MATH),
        Err(_) => ("underdetermined", EXIT_MATH),
    };
    let residual_json = |c: &SpinConnection<F>| -> Result<Value, CliError> {
        let (t, k) = residuals(cal, &ad, c)?;
        Ok(json!({ "torsion": forms_json(&t), "cotorsion": forms_json(&k) }))
    };
    let excluded: Vec<&str> = fx
        .connection
        .coefficients
        .iter()
        .filter(|c| c.corrupted)
        .map(|c| c.entry.as_str())
        .collect();
    let solved_json = match &solved {
        Ok(s) => json!({ "connection": s, "residuals": residual_json(s)? }),
        Err(_) => Value::Null,
    };
    let doc = json!({
        "q": mode,
        "system": {
            "equations": sys.equations(),
            "unknowns": 16,
            "rank": sys.rank(),
            "augmented_rank": sys.augmented_rank(),
            "status": status,
        },
        "solved": solved_json,
        "printed_closed_forms": {
            "connection": printed,
            "residuals": residual_json(&printed)?,
            "excluded_from_comparison": excluded,
        },
    });
    let mut text = format!(
        "q = {mode}: {} equations, rank {}, augmented rank {} ({status})\n",
        sys.equations(),
        sys.rank(),
        sys.augmented_rank()
    );
    let shown = match &solved {
        Ok(s) => s.clone(),
        Err(_) => {
            text.push_str("no exact solution; printed closed forms follow\n");
            printed
        }
    };
    for (k, v) in strings(shown.entries()) {
        let _ = writeln!(text, "  {k} = {v}");
    }
    Ok(Outcome {
        json: doc,
        text,
        code,
    })
}

fn curvature(fx: &Fixtures, mode: QMode) -> Result<Outcome, CliError> {
    match mode {
        QMode::Generic => {
            let p = QParams::generic();
            let cal = Calculus::generic();
            let (doc, text) = curvature_common(fx, mode, &p, &cal)?;
            Ok(Outcome {
                json: doc,
                text,
                code: EXIT_OK,
            })
        }
        QMode::PlusI => curvature_root::<QPlusI>(fx),
        QMode::MinusI => curvature_root::<QMinusI>(fx),
        QMode::One => unreachable!("rejected before dispatch"),
    }
}

fn solved_or_printed<F>(
    fx: &Fixtures,
    p: &QParams<F>,
    cal: &Calculus<F>,
) -> Result<SpinConnection<F>, CliError>
where
    F: Field + Coefficient<Scalar = F>,
{
    let ad = AdTable::printed(p).map_err(RiemannianError::from)?;
    match ConnectionSystem::assemble(cal, &ad)?.solve() {
        Ok(s) => Ok(s),
        Err(_) => Ok(SpinConnection::printed(&fx.connection, p)?),
    }
}

fn curvature_common<F>(
    fx: &Fixtures,
    mode: QMode,
    p: &QParams<F>,
    cal: &Calculus<F>,
) -> Result<(Value, String), CliError>
where
    F: Field + Coefficient<Scalar = F>,
{
    let ad = AdTable::printed(p).map_err(RiemannianError::from)?;
    let conn = solved_or_printed(fx, p, cal)?;
    let curv = Curvature::<F>::new(&ad, &conn);
    let mut nabla = BTreeMap::new();
    let mut riemann = BTreeMap::new();
    let mut text = format!("q = {mode}, connection: {}\n", source_name(conn.source));
    for i in FormBasis::ALL {
        let n = curv.nabla_basis(i);
        let r = curv.riemann(cal, i)?;
        let _ = writeln!(text, "  ∇{i} = {}", vector_text(&n));
        let _ = writeln!(text, "  Riemann({i}) = {}", vector_text(&r));
        nabla.insert(i.to_string(), forms_json(&n));
        riemann.insert(i.to_string(), forms_json(&r));
    }
    let doc = json!({
        "q": mode,
        "connection_source": conn.source,
        "nabla": nabla,
        "riemann": riemann,
        "flat": curv.is_flat(cal)?,
    });
    Ok((doc, text))
}

fn source_name(s: ConnectionSource) -> &'static str {
    match s {
        ConnectionSource::Solved => "solved",
        ConnectionSource::PrintedClosedForms => {
            "printed closed forms (system has no exact solution)"
        }
    }
}

fn curvature_root<M: RootMode>(fx: &Fixtures) -> Result<Outcome, CliError> {
    let p = M::params().clone();
    let consts = Calculus::<GaussianRational>::constant(M::MODE).expect("root mode");
    let (mut doc, mut text) = curvature_common(fx, M::MODE, &p, &consts)?;
    let ad = AdTable::printed(&p).map_err(RiemannianError::from)?;
    let conn = solved_or_printed(fx, &p, &consts)?;
    let cal = Calculus::<AlgebraElement<M>>::root();
    let curv = Curvature::<AlgebraElement<M>>::new(&ad, &conn);
    let samples: Vec<AlgebraElement<M>> = Monomial::all()
        .map(|m| AlgebraElement::monomial(m.p, m.r))
        .collect();
    let tens: Vec<Value> = tensoriality_defects(&cal, &curv, &samples)?
        .iter()
        .map(|d| json!({ "function": d.function.to_string(), "form": d.form, "defect": forms_json(&d.defect) }))
        .collect();
    let kernel = regularity_kernel(&cal)?;
    let reg: Vec<Value> = regularity_defects(&cal, &conn, &kernel)?
        .iter()
        .map(|d| json!({ "function": d.function.to_string(), "value": d.value.to_string() }))
        .collect();
    let _ = writeln!(
        text,
        "  tensoriality: {} failing (f, e_i) pairs over the 16 monomials",
        tens.len()
    );
    let _ = writeln!(
        text,
        "  regularity: {} of {} kernel elements give a nonzero sum",
        reg.len(),
        kernel.len()
    );
    doc["tensoriality_defects"] = Value::Array(tens);
    doc["regularity"] =
        json!({ "kernel_dimension": kernel.len(), "defects": reg, "regular": reg.is_empty() });
    Ok(Outcome {
        json: doc,
        text,
        code: EXIT_OK,
    })
}

#[derive(Serialize)]
struct DiracDoc<'a> {
    q: QMode,
    options: DiracOptions,
    scalars: [[[f64; 2]; 2]; 2],
    trace: String,
    spectrum: &'a Spectrum,
    printed_claim: Option<&'a str>,
    comparison: Option<&'a MatchReport>,
}

fn dirac(fx: &Fixtures, mode: QMode, tol: f64) -> Result<Outcome, CliError> {
    let d = build_dirac(fx, mode, DiracOptions::default())?;
    let s = Spectrum::compute(&d)?;
    let reference = fx.spectrum(mode);
    let cmp = match reference {
        Some(r) => Some(compare_spectrum(&s.eigenvalues, &r.values(), tol)?),
        None => None,
    };
    let sc = d.scalars_complex();
    let doc = DiracDoc {
        q: mode,
        options: d.options,
        scalars: sc.map(|row| row.map(|z| [z.re, z.im])),
        trace: d.trace().to_string(),
        spectrum: &s,
        printed_claim: reference.and_then(|r| r.printed_claim.as_deref()),
        comparison: cmp.as_ref(),
    };
    let mut text = format!(
        "q = {mode}: 32 eigenvalues, max residual {:.2e}, tr = {}\n",
        s.max_residual,
        d.trace()
    );
    for (k, z) in s.eigenvalues.iter().enumerate() {
        let _ = writeln!(text, "  λ{:<2} = {:+.6} {:+.6}i", k + 1, z.re, z.im);
    }
    if let Some(c) = &cmp {
        let _ = writeln!(
            text,
            "printed list: max matched distance {:.4e}, mean {:.4e}, {} above {tol:e}",
            c.max_distance,
            c.mean_distance,
            c.excess.len()
        );
    }
    Ok(Outcome {
        json: serde_json::to_value(&doc).expect("serializable"),
        text,
        code: EXIT_OK,
    })
}

fn audit_json(r: &AuditReport) -> Value {
    let counts: BTreeMap<String, usize> = [
        Verdict::Match,
        Verdict::Mismatch,
        Verdict::Unparseable,
        Verdict::Unverifiable,
    ]
    .into_iter()
    .map(|v| (v.to_string(), r.count(v)))
    .collect();
    let mut v = serde_json::to_value(r).expect("serializable");
    v["counts"] = json!(counts);
    v
}

fn audit_text(r: &AuditReport) -> String {
    let mut text = format!("audit at q = {} (fixtures: {})\n", r.q, r.fixture_origin);
    for a in &r.assumptions {
        let _ = writeln!(text, "  assumes: {a}");
    }
    let mut section = "";
    for row in &r.rows {
        if row.section != section {
            let _ = writeln!(text, "[{}]", row.section);
            section = &row.section;
        }
        let _ = writeln!(text, "  {:<12} {}", row.verdict.to_string(), row.quantity);
        let _ = writeln!(text, "      printed:  {}", row.printed);
        let _ = writeln!(text, "      computed: {}", row.computed);
        for d in &row.details {
            let _ = writeln!(text, "      - {d}");
        }
    }
    let _ = writeln!(
        text,
        "{} rows: {} match, {} mismatch, {} unparseable, {} unverifiable",
        r.rows.len(),
        r.count(Verdict::Match),
        r.count(Verdict::Mismatch),
        r.count(Verdict::Unparseable),
        r.count(Verdict::Unverifiable)
    );
    text
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unknown_mode_and_bad_tol() {
        assert!(Cli::try_parse_from(["ncgq", "verify", "--q", "2"]).is_err());
        assert!(Cli::try_parse_from(["ncgq", "dirac", "--q", "i", "--tol", "-1"]).is_err());
        assert!(Cli::try_parse_from(["ncgq", "dirac", "--q", "-i", "--format", "text"]).is_ok());
    }

    #[test]
    fn mode_validity_per_command() {
        let a = |q| RunArgs {
            q,
            format: None,
            out: None,
            tol: None,
        };
        assert!(!Command::Dirac(a(QMode::Generic)).accepts(QMode::Generic));
        assert!(!Command::Connection(a(QMode::One)).accepts(QMode::One));
        assert!(Command::Audit(a(QMode::One)).accepts(QMode::One));
    }

    #[test]
    fn atomic_write_replaces_whole_file() {
        let dir = std::env::temp_dir().join(format!("ncgq-cli-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("out.json");
        write_atomic(&path, b"first, longer contents").unwrap();
        write_atomic(&path, b"second").unwrap();
        assert_eq!(fs::read(&path).unwrap(), b"second");
        assert_eq!(fs::read_dir(&dir).unwrap().count(), 1);
        fs::remove_dir_all(&dir).unwrap();
    }
}
