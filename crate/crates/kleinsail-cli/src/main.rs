use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kleinsail::cf::{classify_symmetry, cycle_string, synthesize_operator, CfData, CfError};
use kleinsail::io::{self, InputError};
use kleinsail::palindromy::{
    build_conjugator, class_membership, classify_points, criterion, verify_tables, ClassKind,
    PalindromyError, Verdict, DEFAULT_SEARCH_BOUND,
};
use kleinsail::sail::{fixed_point_on_sail, sail_patch, Cone, SailError};

const COEFFICIENT_BOUND: i64 = 5;
const LATTICE_BOUND: i64 = 8;

#[derive(Parser)]
#[command(name = "kleinsail", version, about = "Exact Klein sails and palindromic symmetries")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check the canonical matrices and the case conjugation identities.
    VerifyTables,
    /// Classify a symmetry and/or test membership in a canonical class.
    Analyze {
        #[arg(long)]
        cf: PathBuf,
        #[arg(long)]
        g: Option<PathBuf>,
        #[arg(long, value_parser = parse_kind, default_value = "ord2")]
        kind: ClassKind,
        /// Canonical class index for a membership test.
        #[arg(long)]
        class: Option<usize>,
    },
    /// Read the lattice configuration of a proper symmetry and build its conjugator.
    Classify {
        #[arg(long)]
        cf: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long, value_parser = parse_kind, default_value = "ord2")]
        kind: ClassKind,
    },
    /// Decide, verify or search the palindromy criterion.
    Criterion {
        #[arg(long)]
        cf: PathBuf,
        #[arg(long, value_parser = parse_kind, default_value = "ord2")]
        kind: ClassKind,
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Entry bound for searched unimodular matrices.
        #[arg(long, default_value_t = DEFAULT_SEARCH_BOUND)]
        bound: i64,
    },
    /// Export a sail patch, or the fixed point of a symmetry with --g.
    Sail {
        #[arg(long)]
        cf: PathBuf,
        /// Sign vector such as ++-; every cone when absent.
        #[arg(long)]
        cone: Option<String>,
        #[arg(long)]
        g: Option<PathBuf>,
        /// Coordinate bound of the lattice window.
        #[arg(long, default_value_t = LATTICE_BOUND)]
        bound: i64,
    },
    /// Search a hyperbolic operator with the given eigenline.
    Synthesize {
        #[arg(long)]
        cf: PathBuf,
        /// Coefficient bound for the unit search.
        #[arg(long, default_value_t = COEFFICIENT_BOUND)]
        bound: i64,
    },
}

fn parse_kind(s: &str) -> Result<ClassKind, String> {
    s.parse::<ClassKind>().map_err(|e| e.to_string())
}

/// Exit codes: 0 success, 1 negative verdict, 2 bad input, 3 undecided.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Status {
    Ok = 0,
    Negative = 1,
    Input = 2,
    Undecided = 3,
}

struct Outcome {
    status: Status,
    body: Value,
    text: Vec<String>,
}

impl Outcome {
    fn new(status: Status, body: Value, text: Vec<String>) -> Outcome {
        Outcome { status, body, text }
    }
}

struct Failure {
    status: Status,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Failure {
        Failure {
            status: Status::Input,
            kind: "input",
            message: message.into(),
        }
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Failure {
        match e {
            InputError::Cf(c) => c.into(),
            e => Failure::input(e.to_string()),
        }
    }
}

impl From<CfError> for Failure {
    fn from(e: CfError) -> Failure {
        let (status, kind) = match &e {
            CfError::NotASymmetry(_) => (Status::Negative, "not_a_symmetry"),
            CfError::NotFound(_) => (Status::Negative, "not_found"),
            CfError::Undecidable(_) => (Status::Undecided, "undecidable"),
            CfError::ViolatedInvariant(_) | CfError::StructuralViolation(_) | CfError::StructureMismatch(_) => {
                (Status::Input, "invariant")
            }
            _ => (Status::Input, "input"),
        };
        Failure {
            status,
            kind,
            message: e.to_string(),
        }
    }
}

impl From<PalindromyError> for Failure {
    fn from(e: PalindromyError) -> Failure {
        let (status, kind) = match &e {
            PalindromyError::Cf(c) => return c.clone().into(),
            PalindromyError::NotProper(_) => (Status::Negative, "not_proper"),
            PalindromyError::NoSuchAutomorphism(_) => (Status::Negative, "no_automorphism"),
            PalindromyError::InvalidWitness(_) => (Status::Negative, "invalid_witness"),
            PalindromyError::BoundedSearchFailed(_) => (Status::Undecided, "bounded_search_failed"),
            PalindromyError::IterationCap(_) => (Status::Undecided, "iteration_cap"),
            PalindromyError::NoConfiguration(_) => (Status::Undecided, "no_configuration"),
            PalindromyError::TableMismatch(_) => (Status::Negative, "table_mismatch"),
            _ => (Status::Input, "input"),
        };
        Failure {
            status,
            kind,
            message: e.to_string(),
        }
    }
}

impl From<SailError> for Failure {
    fn from(e: SailError) -> Failure {
        let (status, kind) = match &e {
            SailError::Cf(c) => return c.clone().into(),
            SailError::Undecidable(_) => (Status::Undecided, "undecidable"),
            SailError::Degenerate => (Status::Negative, "degenerate"),
            _ => (Status::Input, "input"),
        };
        Failure {
            status,
            kind,
            message: e.to_string(),
        }
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    io::parse_json(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn read_cf(path: &Path) -> Result<CfData, Failure> {
    Ok(io::cf_from_json(&read_json(path)?)?)
}

fn read_matrix(path: &Path, n: usize) -> Result<kleinsail::exact::IntMat, Failure> {
    let m = io::int_matrix_from_json(&read_json(path)?)?;
    if m.rows() != n {
        return Err(Failure::input(format!(
            "{}: expected a {n}x{n} matrix, got {}x{}",
            path.display(),
            m.rows(),
            m.cols()
        )));
    }
    Ok(m)
}

fn run_verify_tables() -> Result<Outcome, Failure> {
    let report = verify_tables();
    let status = if report.passed() { Status::Ok } else { Status::Negative };
    Ok(Outcome::new(status, io::table_report_json(&report), report.lines()))
}

fn run_analyze(cf: &Path, g: Option<&Path>, kind: ClassKind, class: Option<usize>) -> Result<Outcome, Failure> {
    if g.is_none() && class.is_none() {
        return Err(Failure::input("analyze needs --g, --class or both"));
    }
    let cf = read_cf(cf)?;
    let mut body = serde_json::Map::new();
    let mut text = vec![];
    let mut status = Status::Ok;
    if let Some(g) = g {
        let g = read_matrix(g, cf.dimension())?;
        match classify_symmetry(&g, &cf) {
            Ok(r) => {
                text.push(format!(
                    "{:?} symmetry, sigma {}, order {}, proper {}",
                    r.kind,
                    cycle_string(&r.sigma),
                    r.order_of_sigma,
                    r.proper
                ));
                body.insert("report".into(), io::symmetry_report_json(&r));
            }
            Err(CfError::NotASymmetry(why)) => {
                text.push(format!("not a symmetry: {why}"));
                body.insert("report".into(), json!({ "symmetry": false, "reason": why }));
                status = Status::Negative;
            }
            Err(e) => return Err(e.into()),
        }
    }
    if let Some(i) = class {
        let m = class_membership(&cf, kind, i)?;
        let name = format!("{}{i}", if kind == ClassKind::Ord2 { "R" } else { "Q" });
        text.push(format!("membership in {name}: {}", m.holds));
        let mut entry = json!({ "kind": kind.to_string(), "class": i, "holds": m.holds });
        if let Some(a) = &m.automorphism {
            entry["automorphism"] = io::automorphism_json(a);
        }
        body.insert("membership".into(), entry);
        if !m.holds {
            status = Status::Negative;
        }
    }
    Ok(Outcome::new(status, Value::Object(body), text))
}

fn run_classify(cf: &Path, g: &Path, kind: ClassKind) -> Result<Outcome, Failure> {
    let cf = read_cf(cf)?;
    let g = read_matrix(g, cf.dimension())?;
    let w = classify_points(&g, &cf, kind)?;
    let x = build_conjugator(&w)?;
    let text = vec![
        format!("{} case {} after {} iterations", w.kind, w.case_index, w.iterations),
        format!("X = {:?}", x.to_rows().iter().map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()),
    ];
    Ok(Outcome::new(Status::Ok, io::case_witness_json(&w, &x), text))
}

fn run_criterion(cf: &Path, kind: ClassKind, witness: Option<&Path>, bound: i64) -> Result<Outcome, Failure> {
    if bound < 0 {
        return Err(Failure::input("--bound must be non-negative"));
    }
    let cf = read_cf(cf)?;
    let witness = witness
        .map(|p| -> Result<_, Failure> { Ok(io::witness_from_json(cf.field(), &read_json(p)?)?) })
        .transpose()?;
    let verdict = criterion(&cf, kind, witness.as_ref(), bound)?;
    let (status, text) = match &verdict {
        Verdict::Holds(c) => (
            Status::Ok,
            format!("holds via condition {} with omega = {}", c.condition, c.omega),
        ),
        Verdict::Fails(why) => (Status::Negative, format!("fails: {why}")),
    };
    Ok(Outcome::new(status, io::verdict_json(&verdict), vec![text]))
}

fn run_sail(cf: &Path, cone: Option<&str>, g: Option<&Path>, bound: i64) -> Result<Outcome, Failure> {
    if bound < 1 {
        return Err(Failure::input("--bound must be positive"));
    }
    let cf = read_cf(cf)?;
    let n = cf.dimension();
    let cones = match cone {
        Some(s) => {
            let c = Cone::parse(s).ok_or_else(|| Failure::input(format!("bad cone {s:?}")))?;
            if c.dimension() != n {
                return Err(Failure::input(format!("cone {s} has the wrong length for dimension {n}")));
            }
            vec![c]
        }
        None => Cone::all(n),
    };
    if let Some(g) = g {
        let g = read_matrix(g, n)?;
        return Ok(match fixed_point_on_sail(&g, &cf, bound)? {
            Some(f) => {
                let text = vec![format!("fixed point {:?} in cone {}", f.point, f.cone)];
                Outcome::new(Status::Ok, json!({ "fixed_point": io::fixed_point_json(&f) }), text)
            }
            None => Outcome::new(
                Status::Negative,
                json!({ "fixed_point": null }),
                vec![format!("no fixed point within bound {bound}")],
            ),
        });
    }
    let patches = cones
        .iter()
        .map(|c| sail_patch(&cf, c, bound))
        .collect::<Result<Vec<_>, _>>()?;
    let text = patches
        .iter()
        .map(|p| format!("cone {}: {} vertices, {} faces", p.cone, p.vertices.len(), p.facets.len()))
        .collect();
    let body = if cone.is_some() {
        io::patch_json(&patches[0])
    } else {
        json!({ "patches": patches.iter().map(io::patch_json).collect::<Vec<_>>() })
    };
    Ok(Outcome::new(Status::Ok, body, text))
}

fn run_synthesize(cf: &Path, bound: i64) -> Result<Outcome, Failure> {
    if bound < 1 {
        return Err(Failure::input("--bound must be positive"));
    }
    let cf = read_cf(cf)?;
    let s = synthesize_operator(&cf, bound)?;
    let text = vec![
        format!("unit {}", s.unit),
        format!("char poly {}", s.operator.char_poly),
    ];
    Ok(Outcome::new(Status::Ok, io::synthesized_json(&s), text))
}

fn dispatch(cmd: &Command) -> Result<Outcome, Failure> {
    match cmd {
        Command::VerifyTables => run_verify_tables(),
        Command::Analyze { cf, g, kind, class } => run_analyze(cf, g.as_deref(), *kind, *class),
        Command::Classify { cf, g, kind } => run_classify(cf, g, *kind),
        Command::Criterion { cf, kind, witness, bound } => run_criterion(cf, *kind, witness.as_deref(), *bound),
        Command::Sail { cf, cone, g, bound } => run_sail(cf, cone.as_deref(), g.as_deref(), *bound),
        Command::Synthesize { cf, bound } => run_synthesize(cf, *bound),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            let _ = writeln!(std::io::stdout(), "{}", json!({ "error": "usage", "message": e.kind().to_string() }));
            return ExitCode::from(Status::Input as u8);
        }
    };
    let outcome = dispatch(&cli.command).unwrap_or_else(|f| {
        eprintln!("error: {}", f.message);
        Outcome::new(
            f.status,
            json!({ "error": f.kind, "message": f.message }),
            vec![format!("error ({}): {}", f.kind, f.message)],
        )
    });
    let mut out = std::io::stdout().lock();
    let written = match cli.format {
        Format::Json => writeln!(out, "{}", outcome.body),
        Format::Text => outcome.text.iter().try_for_each(|line| writeln!(out, "{line}")),
    };
    if written.is_err() {
        return ExitCode::from(Status::Input as u8);
    }
    ExitCode::from(outcome.status as u8)
}
