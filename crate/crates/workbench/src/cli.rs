//! The `cifsuper` command line.
//!
//! Exit codes: 0 success or pass, 1 usage error, 2 load or validation
//! error, 3 a check or property failed.

use std::ffi::OsString;
use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use cifsuper_core::theoremsuite::{check_theorem, negative_controls, GenConfig, TheoremId};
use cifsuper_core::{
    bracket_product_oracle, bracket_product_with_diagnostics, CifDegree, CifError, CifSet, Diagnostics, GradedMap,
    MapKind, Report, Scalar, SuiteError, Superalgebra,
};
use clap::{Parser, Subcommand, ValueEnum};

use crate::json::{self, CheckReport, ComputeReport, VerifyReport};
use crate::spec::{parse_spec_bytes, Workspace};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_LOAD: i32 = 2;
pub const EXIT_FAILED: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "cifsuper",
    version,
    about = "Exact CIF set calculus over finite Lie superalgebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Load a spec file and report whether it is well formed.
    Validate { file: PathBuf },
    /// Run a structural predicate on a named set or map.
    Check {
        #[arg(value_enum)]
        kind: CheckKind,
        file: PathBuf,
        #[arg(long)]
        name: String,
        #[arg(long)]
        with: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compute a set-level operation and print the resulting table.
    Compute {
        #[arg(value_enum)]
        op: Op,
        file: PathBuf,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: Option<String>,
        #[arg(long)]
        alpha: Option<u64>,
        #[arg(long)]
        map: Option<String>,
        /// With `bracket`: also run the fixed-point oracle and fail on mismatch.
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a theorem from the catalog on random instances.
    Verify {
        theorem: String,
        file: PathBuf,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Space to generate on; defaults to the first declared.
        #[arg(long)]
        space: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    Subspace,
    Ideal,
    Graded,
    Homogeneous,
    DirectSum,
    AntiHom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Op {
    Sum,
    Scalar,
    Bracket,
    Image,
    Preimage,
    Intersection,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn load_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_LOAD,
        message: message.into(),
    }
}

impl From<CifError> for Failure {
    fn from(e: CifError) -> Self {
        load_error(e.to_string())
    }
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    color: bool,
}

impl Io<'_> {
    fn verdict(&self, pass: bool) -> String {
        let (word, code) = if pass { ("PASS", "32") } else { ("FAIL", "31") };
        if self.color {
            format!("\x1b[{code}m{word}\x1b[0m")
        } else {
            word.to_string()
        }
    }
}

/// Runs the tool with `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let color = std::env::var("COLOR").map_or(true, |v| v != "0") && std::io::stdout().is_terminal();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = if color {
                e.render().ansi().to_string()
            } else {
                e.render().to_string()
            };
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let mut io = Io { out, err, color };
    match dispatch(cli.command, &mut io) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(io.err, "error: {}", f.message);
            f.code
        }
    }
}

fn load(path: &Path) -> Result<(Workspace, String), Failure> {
    let bytes = std::fs::read(path).map_err(|e| load_error(format!("{}: {e}", path.display())))?;
    let ws = parse_spec_bytes(&bytes).map_err(|e| load_error(format!("{}:{e}", path.display())))?;
    Ok((ws, json::input_digest(&bytes)))
}

fn dispatch(cmd: Command, io: &mut Io<'_>) -> Result<i32, Failure> {
    match cmd {
        Command::Validate { file } => {
            let (ws, _) = load(&file)?;
            let _ = writeln!(
                io.out,
                "ok: field {}, {} space(s), {} cifset(s), {} map(s)",
                ws.field,
                ws.spaces.len(),
                ws.sets.len(),
                ws.maps.len()
            );
            Ok(EXIT_OK)
        }
        Command::Check {
            kind,
            file,
            name,
            with,
            format,
        } => check(io, kind, &file, &name, with.as_deref(), format),
        Command::Compute {
            op,
            file,
            left,
            right,
            alpha,
            map,
            oracle,
            format,
            out,
        } => {
            let args = ComputeArgs {
                op,
                left,
                right,
                alpha,
                map,
                oracle,
                format,
                out,
            };
            compute(io, &file, args)
        }
        Command::Verify {
            theorem,
            file,
            trials,
            seed,
            space,
            format,
        } => verify(io, &theorem, &file, trials, seed, space.as_deref(), format),
    }
}

fn set<'w>(ws: &'w Workspace, name: &str) -> Result<&'w CifSet, Failure> {
    ws.set(name)
        .map(|s| &s.set)
        .ok_or_else(|| usage(format!("no cifset named `{name}`")))
}

fn map<'w>(ws: &'w Workspace, name: &str) -> Result<&'w GradedMap, Failure> {
    ws.map(name)
        .map(|m| &m.map)
        .ok_or_else(|| usage(format!("no map named `{name}`")))
}

fn check(
    io: &mut Io<'_>,
    kind: CheckKind,
    file: &Path,
    name: &str,
    with: Option<&str>,
    format: Format,
) -> Result<i32, Failure> {
    let (ws, digest) = load(file)?;
    let label = kind
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string();
    let mut extra = None;
    let report = match kind {
        CheckKind::Subspace => set(&ws, name)?.is_cif_subspace(),
        CheckKind::Ideal => set(&ws, name)?.is_cif_ideal(),
        CheckKind::Graded => set(&ws, name)?.is_z2_graded(),
        CheckKind::Homogeneous => match with {
            Some(other) => set(&ws, name)?.pair_homogeneous(set(&ws, other)?)?,
            None => set(&ws, name)?.is_homogeneous(),
        },
        CheckKind::DirectSum => {
            let other = with.ok_or_else(|| usage("direct-sum needs --with"))?;
            let (a, b) = (set(&ws, name)?, set(&ws, other)?);
            let meet = a.intersection(b)?;
            let at = meet.table().iter().skip(1).position(|&d| d != CifDegree::ABSENT);
            extra = at.map(|i| format!("A ∩ B is nontrivial at {}", a.algebra().vector_at(i + 1)));
            Report::PASS
        }
        CheckKind::AntiHom => {
            let m = map(&ws, name)?;
            let anti = GradedMap::new(
                m.source().clone(),
                m.target().clone(),
                m.images().to_vec(),
                MapKind::AntiHomomorphism,
            )
            .map_err(|e| load_error(e.to_string()))?;
            let r = anti.validate();
            extra = r.violations.first().map(|v| v.to_string());
            if r.is_valid() {
                let _ = writeln!(io.err, "note: surjective: {}", if r.surjective { "yes" } else { "no" });
            }
            Report::PASS
        }
    };
    let witness = report.witness.map(|w| w.to_string()).or(extra);
    let holds = witness.is_none();
    match format {
        Format::Json => {
            let mut r = CheckReport::from_report(digest, &label, name, with, report);
            r.holds = holds;
            r.witness = witness;
            let _ = write!(io.out, "{}", json::to_json(&r));
        }
        Format::Text => {
            let subject = match with {
                Some(w) => format!("{name}, {w}"),
                None => name.to_string(),
            };
            let _ = writeln!(io.out, "{label} {subject}: {}", io.verdict(holds));
            if let Some(w) = &witness {
                let _ = writeln!(io.out, "  witness: {w}");
            }
        }
    }
    Ok(if holds { EXIT_OK } else { EXIT_FAILED })
}

struct ComputeArgs {
    op: Op,
    left: String,
    right: Option<String>,
    alpha: Option<u64>,
    map: Option<String>,
    oracle: bool,
    format: Format,
    out: Option<PathBuf>,
}

fn space_name<'w>(ws: &'w Workspace, alg: &Arc<Superalgebra>) -> &'w str {
    ws.spaces
        .iter()
        .find(|(_, a)| Arc::ptr_eq(a, alg))
        .map_or("?", |(n, _)| n)
}

fn compute(io: &mut Io<'_>, file: &Path, args: ComputeArgs) -> Result<i32, Failure> {
    let (ws, digest) = load(file)?;
    if args.oracle && args.op != Op::Bracket {
        return Err(usage("--oracle only applies to bracket"));
    }
    let a = set(&ws, &args.left)?;
    let right = |what: &str| -> Result<&CifSet, Failure> {
        let name = args
            .right
            .as_deref()
            .ok_or_else(|| usage(format!("{what} needs --right")))?;
        set(&ws, name)
    };
    let phi = || -> Result<&GradedMap, Failure> {
        let name = args.map.as_deref().ok_or_else(|| usage("this operation needs --map"))?;
        map(&ws, name)
    };
    let (result, diag): (CifSet, Diagnostics) = match args.op {
        Op::Sum => a.sum_with_diagnostics(right("sum")?)?,
        Op::Intersection => (a.intersection(right("intersection")?)?, Diagnostics::default()),
        Op::Scalar => {
            let alpha = args.alpha.ok_or_else(|| usage("scalar needs --alpha"))?;
            let p = a.algebra().field().modulus();
            if alpha >= u64::from(p) {
                return Err(usage(format!("--alpha must be below {p}")));
            }
            (a.scale(alpha as Scalar), Diagnostics::default())
        }
        Op::Bracket => {
            let b = right("bracket")?;
            let (p, diag) = bracket_product_with_diagnostics(a, b)?;
            if args.oracle {
                let o = bracket_product_oracle(a, b)?;
                if let Some(i) = (0..p.table().len()).find(|&i| p.at(i) != o.at(i)) {
                    let x = p.algebra().vector_at(i);
                    let _ = writeln!(io.err, "oracle mismatch at {x}: ladder {} oracle {}", p.at(i), o.at(i));
                    return Ok(EXIT_FAILED);
                }
                let _ = writeln!(io.err, "oracle: agrees on all {} vectors", p.table().len());
            }
            (p, diag)
        }
        Op::Image => a.image_with_diagnostics(phi()?)?,
        Op::Preimage => (a.preimage(phi()?)?, Diagnostics::default()),
    };
    let mut warnings = Vec::new();
    if let Some(w) = diag.non_homogeneous {
        warnings.push(format!(
            "operands are not homogeneous ({w}); componentwise reading applied"
        ));
    }
    if !diag.non_attained.is_empty() {
        let list: Vec<String> = diag.non_attained.iter().map(|v| v.to_string()).collect();
        warnings.push(format!("extremum not attained at {}", list.join(", ")));
    }
    for w in &warnings {
        let _ = writeln!(io.err, "warning: {w}");
    }
    let op_name = args
        .op
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string();
    let text = match args.format {
        Format::Json => json::to_json(&ComputeReport {
            version: json::VERSION,
            input_sha256: digest,
            operation: &op_name,
            space: space_name(&ws, result.algebra()),
            warnings,
            rows: json::rows(&result),
        }),
        Format::Text => {
            let mut s = String::new();
            for (i, d) in result.table().iter().enumerate() {
                let (m, n) = (d.mem(), d.non());
                s.push_str(&format!(
                    "{}  mem {} {}  non {} {}\n",
                    result.algebra().vector_at(i),
                    m.r,
                    m.w,
                    n.r,
                    n.w
                ));
            }
            s
        }
    };
    match &args.out {
        Some(path) => std::fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))?,
        None => {
            let _ = write!(io.out, "{text}");
        }
    }
    Ok(EXIT_OK)
}

fn verify(
    io: &mut Io<'_>,
    theorem: &str,
    file: &Path,
    trials: usize,
    seed: u64,
    space: Option<&str>,
    format: Format,
) -> Result<i32, Failure> {
    let id: TheoremId = theorem.parse().map_err(|e: SuiteError| usage(e.to_string()))?;
    let (ws, digest) = load(file)?;
    let (space_name, alg) = match space {
        Some(name) => (
            name,
            ws.space(name)
                .ok_or_else(|| usage(format!("no space named `{name}`")))?,
        ),
        None => ws
            .spaces
            .first()
            .map(|(n, a)| (n.as_str(), a))
            .ok_or_else(|| load_error("no space declared"))?,
    };
    let cfg = GenConfig::with_defaults(seed, alg.clone());
    let suite_err = |e: SuiteError| load_error(e.to_string());
    let (report, controls) = if id == TheoremId::NegControls {
        let c = negative_controls(&cfg, trials).map_err(suite_err)?;
        (c.clone().into_report(trials), Some(c))
    } else {
        (check_theorem(id, &cfg, trials).map_err(suite_err)?, None)
    };
    match format {
        Format::Json => {
            let r = VerifyReport::new(digest, space_name, seed, &report, controls.as_ref());
            let _ = write!(io.out, "{}", json::to_json(&r));
        }
        Format::Text => {
            let _ = writeln!(io.out, "{id} on {space_name}: {}", id.claim());
            if let Some(note) = report.note {
                let _ = writeln!(io.out, "  {note}");
            } else {
                let _ = writeln!(
                    io.out,
                    "  {} trials, {} failure(s): {}",
                    report.trials,
                    report.failures.len(),
                    io.verdict(report.passed())
                );
            }
            for c in controls.iter().flat_map(|c| &c.outcomes) {
                match &c.first_failure {
                    Some(f) => {
                        let _ = writeln!(
                            io.out,
                            "  {}: failed at trial {} (seed {})",
                            c.control.as_str(),
                            c.trials_run,
                            f.seed
                        );
                    }
                    None => {
                        let _ = writeln!(
                            io.out,
                            "  {}: never failed in {} trials",
                            c.control.as_str(),
                            c.trials_run
                        );
                    }
                }
            }
            for f in &report.failures {
                let _ = writeln!(io.out, "  seed {} digest {:016x}: {}", f.seed, f.digest, f.witness);
            }
        }
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAILED })
}
