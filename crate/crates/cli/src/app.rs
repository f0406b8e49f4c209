use std::ffi::OsString;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use schurdefect_core::census::{self, CensusRow, CensusSummary, VerificationVerdict};
use schurdefect_core::catalog;
use schurdefect_core::classify::classify_t012;
use schurdefect_core::field::parse_scalar;
use schurdefect_core::invariants::{self, InvariantReport};
use schurdefect_core::{Error, FieldSpec, LieAlgebra};
use serde_json::json;

use crate::document::{parse_document, render_document};
use crate::parallel::run_census;
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "schurdefect", version, about = "Schur defect of nilpotent Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the tabulated algebras over a field with their table rows.
    Catalog {
        #[arg(long, default_value = "q")]
        field: FieldSpec,
        #[arg(long)]
        json: bool,
    },
    /// Print the invariant report of an algebra.
    Invariants {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        json: bool,
    },
    /// Print t(L).
    T {
        #[command(flatten)]
        target: Target,
    },
    /// Classify a nilpotent algebra with t ≤ 2.
    Classify {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Enumerate every structure tensor over a small prime field.
    Enumerate {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        field: FieldSpec,
        /// Check the lower bounds on t and the Moneyhun bound on every row.
        #[arg(long)]
        verify: bool,
        /// Write one CSV row per nilpotent tensor.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
        jobs: u16,
        /// Run past the candidate budget.
        #[arg(long)]
        force: bool,
    },
    /// The filiform algebra F(t) of defect t.
    Filiform {
        t: usize,
        /// Print the algebra as a JSON document instead of its report.
        #[arg(long)]
        emit: bool,
        #[arg(long, default_value = "q")]
        field: FieldSpec,
    },
}

#[derive(Args, Debug)]
struct Target {
    /// Catalog key: L4_3, L6_19, L2_6_7, A<n>, H<m> or F<t>.
    #[arg(required_unless_present = "file", conflicts_with = "file")]
    key: Option<String>,
    /// Read the algebra from a JSON document.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, conflicts_with = "file")]
    field: Option<FieldSpec>,
    /// Value of ε or η for parameterized keys.
    #[arg(long = "param", allow_hyphen_values = true, conflicts_with = "file")]
    params: Vec<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Table1,
    Theorems,
}

/// Failure inside a command: the message and the exit code to report.
struct Failure(i32, String);

impl Failure {
    fn usage(msg: impl ToString) -> Self {
        Failure(EXIT_USAGE, msg.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure(EXIT_FAIL, format!("i/o error: {e}"))
    }
}

type CmdResult = Result<i32, Failure>;

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> CmdResult {
    match command {
        Command::Catalog { field, json } => cmd_catalog(field, json, out),
        Command::Invariants { target, json } => {
            let l = load(&target)?;
            let report = invariants::report(&l);
            if json {
                writeln!(out, "{}", report_json(&l, &report))?;
            } else {
                writeln!(out, "{}", title(&l))?;
                writeln!(out, "{report}")?;
            }
            Ok(EXIT_OK)
        }
        Command::T { target } => {
            let l = load(&target)?;
            let t = invariants::t_invariant(&l).map_err(Failure::usage)?;
            writeln!(out, "{t}")?;
            Ok(EXIT_OK)
        }
        Command::Classify { target, json } => {
            let l = load(&target)?;
            let result = classify_t012(&l).map_err(Failure::usage)?;
            if json {
                let v = json!({"t": result.t, "verdict": result.verdict.to_string()});
                writeln!(out, "{v}")?;
            } else {
                writeln!(out, "{}", result.verdict)?;
            }
            Ok(if result.verdict.is_counterexample() { EXIT_FAIL } else { EXIT_OK })
        }
        Command::Verify { suite } => {
            let outcome = match suite {
                Suite::Table1 => verify::table1(),
                Suite::Theorems => verify::theorems(),
            };
            write!(out, "{}", outcome.render())?;
            Ok(if outcome.passed() { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Enumerate {
            dim,
            field,
            verify,
            out: path,
            jobs,
            force,
        } => cmd_enumerate(dim, field, verify, path, jobs as usize, force, out),
        Command::Filiform { t, emit, field } => {
            let l = catalog::filiform(field, t).map_err(Failure::usage)?;
            if emit {
                write!(out, "{}", render_document(&l))?;
            } else {
                writeln!(out, "{}", title(&l))?;
                writeln!(out, "{}", invariants::report(&l))?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn load(target: &Target) -> Result<LieAlgebra, Failure> {
    if let Some(path) = &target.file {
        let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
        return parse_document(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())));
    }
    let key = target.key.as_deref().ok_or_else(|| Failure::usage("a catalog key or --file is required"))?;
    let field = target.field.unwrap_or(FieldSpec::RATIONAL);
    let params = target
        .params
        .iter()
        .map(|p| parse_scalar(p, field))
        .collect::<Result<Vec<_>, _>>()
        .map_err(Failure::usage)?;
    catalog::get(key, field, &params).map_err(Failure::usage)
}

fn title(l: &LieAlgebra) -> String {
    format!("{} over {}", l.name().unwrap_or("(unnamed)"), l.field())
}

fn report_json(l: &LieAlgebra, r: &InvariantReport) -> serde_json::Value {
    json!({
        "name": l.name(),
        "field": l.field().descriptor(),
        "dim": r.dim,
        "dim_derived": r.dim_derived,
        "dim_center": r.dim_center,
        "dim_second_center": r.dim_second_center,
        "dim_central_quotient": r.dim_central_quotient(),
        "d_central_quotient": r.d_central_quotient,
        "t": r.t,
        "nilpotency_class": r.nilpotency_class,
        "lower_central_series": r.lcs_dims,
        "upper_central_series": r.ucs_dims,
        "dim_centralizer_derived": r.dim_centralizer_derived,
    })
}

fn cmd_catalog(field: FieldSpec, as_json: bool, out: &mut dyn Write) -> CmdResult {
    let mut rows = Vec::new();
    let mut all_ok = true;
    for e in catalog::list_all(field) {
        let l = e.algebra().map_err(|err| Failure(EXIT_FAIL, format!("{}: {err}", e.label())))?;
        let r = invariants::report(&l);
        let ok = r.table_row() == Some(e.expected_row);
        all_ok &= ok;
        rows.push((e, r, ok));
    }
    if as_json {
        let items: Vec<_> = rows
            .iter()
            .map(|(e, r, ok)| {
                json!({
                    "key": e.key,
                    "label": e.label(),
                    "params": e.params.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                    "constraint": e.field_constraint.to_string(),
                    "dim": r.dim,
                    "dim_central_quotient": r.dim_central_quotient(),
                    "d_central_quotient": r.d_central_quotient,
                    "dim_derived": r.dim_derived,
                    "t": r.t,
                    "table": [e.expected_row.0, e.expected_row.1, e.expected_row.2],
                    "matches_table": ok,
                })
            })
            .collect();
        writeln!(out, "{}", serde_json::to_string_pretty(&items).expect("serializable"))?;
    } else {
        writeln!(out, "catalog over {field}")?;
        writeln!(
            out,
            "{:<16} {:>3} {:>7} {:>6} {:>7} {:>3}  table",
            "name", "dim", "dim L/Z", "d(L/Z)", "dim L^2", "t"
        )?;
        for (e, r, ok) in &rows {
            let d = r.d_central_quotient.map_or("-".into(), |d| d.to_string());
            let t = r.t.map_or("-".into(), |t| t.to_string());
            let (a, b, c) = e.expected_row;
            let status = if *ok { "ok".to_string() } else { format!("MISMATCH ({a},{b},{c})") };
            writeln!(
                out,
                "{:<16} {:>3} {:>7} {:>6} {:>7} {:>3}  {status}",
                e.label(),
                r.dim,
                r.dim_central_quotient(),
                d,
                r.dim_derived,
                t
            )?;
        }
    }
    Ok(if all_ok { EXIT_OK } else { EXIT_FAIL })
}

pub fn write_csv(rows: &[CensusRow], w: &mut dyn Write) -> io::Result<()> {
    writeln!(w, "{}", CensusRow::CSV_HEADER)?;
    for row in rows {
        writeln!(w, "{}", row.csv_line())?;
    }
    Ok(())
}

pub fn render_summary(s: &CensusSummary) -> String {
    let mut text = format!("census: dim {} over {}\n", s.n, s.field);
    text.push_str(&format!("candidates       {}\n", s.candidates));
    text.push_str(&format!("lie algebras     {}\n", s.lie_algebras));
    text.push_str(&format!("nilpotent        {}\n", s.nilpotent));
    for (t, c) in &s.t_counts {
        text.push_str(&format!("t = {t:<12} {c}\n"));
    }
    text.push_str(&format!("counterexamples  {}\n", s.counterexamples().count()));
    text
}

fn cmd_enumerate(
    dim: usize,
    field: FieldSpec,
    verify: bool,
    path: Option<PathBuf>,
    jobs: usize,
    force: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let summary = run_census(dim, field, jobs, force).map_err(|e| match e {
        Error::BudgetExceeded { .. } => Failure::usage(format!("{e} (--force)")),
        e => Failure::usage(e),
    })?;
    if let Some(path) = path {
        let file = fs::File::create(&path).map_err(|e| Failure(EXIT_FAIL, format!("{}: {e}", path.display())))?;
        let mut w = BufWriter::new(file);
        write_csv(&summary.rows, &mut w)?;
        w.flush()?;
    }
    write!(out, "{}", render_summary(&summary))?;
    let mut code = if summary.counterexamples().next().is_some() { EXIT_FAIL } else { EXIT_OK };
    if verify {
        match census::verify_bounds(&summary) {
            VerificationVerdict::Pass => writeln!(out, "bounds: pass")?,
            VerificationVerdict::Fail(violations) => {
                writeln!(out, "bounds: FAIL ({} violations)", violations.len())?;
                for v in &violations {
                    writeln!(out, "  tensor {}: {:?}", v.tensor_id, v.kind)?;
                }
                code = EXIT_FAIL;
            }
        }
    }
    Ok(code)
}
