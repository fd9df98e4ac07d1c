//! Command-line front end. [`run`] returns the exit status and the report so
//! that it can be tested without spawning a process.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::exact::geometry::{lattice, singular_points, validate, Arrangement};
use crate::graph::{build_graph, cfg_check_cl, cfg_check_line, emit_dot};
use crate::io::{monodromy_to_json, parse_arrangement, points_to_json};
use crate::presentation::{
    abelianization, basepoint_move, canonical_presentation, count_homs, monodromy_of, simplify_to_cf,
    zvk_from, BasedPresentation, CfStatus, Direction, FiniteGroup, Presentation,
};
use crate::structure::predict_cf;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Lattice,
    Monodromy,
    Pi1,
    Simplify,
    Graph,
    Cfg,
    Structure,
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "arrangeo", version, about = "Fundamental groups of real line and conic-line arrangements")]
pub struct Cli {
    #[command(subcommand)]
    pub command: PlainCommand,
}

/// Every command takes the same file and options.
#[derive(Debug, clap::Args)]
pub struct RunConfig {
    pub file: PathBuf,
    /// `EVT:left` puts the basepoint just left of event EVT, `EVT:right` just right of it.
    #[arg(long, value_parser = parse_basepoint)]
    pub basepoint: Option<(usize, Direction)>,
    #[arg(long, default_value_t = crate::presentation::simplify::DEFAULT_BUDGET)]
    pub budget: usize,
    #[arg(long, value_delimiter = ',', default_value = "S3,S4", value_parser = parse_oracle)]
    pub oracle: Vec<String>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Fail instead of shearing a non-generic projection.
    #[arg(long)]
    pub no_shear: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            file: PathBuf::new(),
            basepoint: None,
            budget: crate::presentation::simplify::DEFAULT_BUDGET,
            oracle: vec!["S3".into(), "S4".into()],
            format: None,
            no_shear: false,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum PlainCommand {
    /// Check the admissibility assumptions.
    Validate(RunConfig),
    /// Incidence pattern and exact singular points.
    Lattice(RunConfig),
    /// Braid monodromy per singular value.
    Monodromy(RunConfig),
    /// Zariski–van Kampen presentation.
    Pi1(RunConfig),
    /// Attempt a conjugation-free presentation.
    Simplify(RunConfig),
    /// Graph of multiple points.
    Graph(RunConfig),
    /// Conjugation-free graph test with peel trace.
    Cfg(RunConfig),
    /// Decomposition theorems and prediction.
    Structure(RunConfig),
    /// Oracle battery.
    Verify(RunConfig),
}

impl PlainCommand {
    pub fn split(&self) -> (Command, &RunConfig) {
        match self {
            PlainCommand::Validate(c) => (Command::Validate, c),
            PlainCommand::Lattice(c) => (Command::Lattice, c),
            PlainCommand::Monodromy(c) => (Command::Monodromy, c),
            PlainCommand::Pi1(c) => (Command::Pi1, c),
            PlainCommand::Simplify(c) => (Command::Simplify, c),
            PlainCommand::Graph(c) => (Command::Graph, c),
            PlainCommand::Cfg(c) => (Command::Cfg, c),
            PlainCommand::Structure(c) => (Command::Structure, c),
            PlainCommand::Verify(c) => (Command::Verify, c),
        }
    }
}

fn parse_basepoint(s: &str) -> Result<(usize, Direction), String> {
    let (evt, side) = s.split_once(':').ok_or("expected EVT:left|right")?;
    let evt: usize = evt.parse().map_err(|_| format!("bad event index {evt:?}"))?;
    let dir = match side {
        "left" => Direction::Left,
        "right" => Direction::Right,
        _ => return Err(format!("bad side {side:?}")),
    };
    Ok((evt, dir))
}

fn parse_oracle(s: &str) -> Result<String, String> {
    FiniteGroup::by_name(s).map(|_| s.to_string()).ok_or_else(|| format!("unknown oracle target {s:?}"))
}

/// Exit status and report text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

impl Outcome {
    fn ok(output: String) -> Outcome {
        Outcome { code: 0, output }
    }

    fn error(e: &Error) -> Outcome {
        let code = if e.is_validation() { 1 } else { 2 };
        Outcome { code, output: format!("error: {e}\n") }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json") + "\n"
}

/// Runs one command on the text of an arrangement file.
pub fn run_on_text(cmd: Command, text: &str, cfg: &RunConfig) -> Outcome {
    let arr = match parse_arrangement(text) {
        Ok(a) => a,
        Err(e) => return Outcome::error(&e),
    };
    match execute(cmd, &arr, cfg) {
        Ok(o) => o,
        Err(e) => Outcome::error(&e),
    }
}

/// Parses the arguments, reads the file and runs the command.
pub fn run<I: IntoIterator<Item = String>>(args: I) -> Outcome {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Outcome { code, output: e.to_string() };
        }
    };
    let (cmd, cfg) = cli.command.split();
    match std::fs::read_to_string(&cfg.file) {
        Ok(text) => run_on_text(cmd, &text, cfg),
        Err(e) => Outcome { code: 2, output: format!("error: cannot read {}: {e}\n", cfg.file.display()) },
    }
}

fn presentation_for(arr: &Arrangement, cfg: &RunConfig) -> Result<Presentation, Error> {
    validate(arr).into_result()?;
    let m = monodromy_of(arr, !cfg.no_shear)?;
    let mut bp = BasedPresentation::at_default(zvk_from(&m));
    if let Some((evt, side)) = cfg.basepoint {
        let target = match side {
            Direction::Left => evt,
            Direction::Right => evt.wrapping_sub(1),
        };
        if evt == 0 || target > m.events.len() {
            return Err(Error::Malformed(format!("basepoint event {evt} out of range 1..={}", m.events.len())));
        }
        for j in 1..=target {
            bp = basepoint_move(&bp, &m, j, Direction::Left)?;
        }
    }
    Ok(bp.presentation)
}

fn execute(cmd: Command, arr: &Arrangement, cfg: &RunConfig) -> Result<Outcome, Error> {
    let fmt = cfg.format;
    match cmd {
        Command::Validate => {
            let rep = validate(arr);
            let code = if rep.passed() { 0 } else { 1 };
            let v = json!({ "passed": rep.passed(), "violations": rep.violations });
            Ok(Outcome { code, output: pretty(&v) })
        }
        Command::Lattice => {
            validate(arr).into_result()?;
            let v = json!({ "lattice": lattice(arr)?, "points": points_to_json(&singular_points(arr)?) });
            Ok(Outcome::ok(pretty(&v)))
        }
        Command::Monodromy => {
            validate(arr).into_result()?;
            let m = monodromy_of(arr, !cfg.no_shear)?;
            Ok(Outcome::ok(pretty(&monodromy_to_json(&m))))
        }
        Command::Pi1 => {
            let p = presentation_for(arr, cfg)?;
            Ok(Outcome::ok(match fmt {
                Some(Format::Json) => pretty(&serde_json::to_value(&p).expect("json")),
                _ => p.to_string(),
            }))
        }
        Command::Simplify => {
            let p = presentation_for(arr, cfg)?;
            let v = simplify_to_cf(&p, cfg.budget);
            Ok(Outcome::ok(match fmt {
                Some(Format::Text) => match &v.status {
                    CfStatus::ConjugationFree { presentation } => format!("conjugation-free\n{presentation}"),
                    CfStatus::Unresolved { reason, remaining } => format!("unresolved: {reason}\n{remaining}"),
                },
                _ => pretty(&serde_json::to_value(&v).expect("json")),
            }))
        }
        Command::Graph => {
            validate(arr).into_result()?;
            let g = build_graph(arr)?;
            Ok(Outcome::ok(match fmt {
                Some(Format::Json) => pretty(&serde_json::to_value(&g).expect("json")),
                _ => emit_dot(&g),
            }))
        }
        Command::Cfg => {
            validate(arr).into_result()?;
            let g = build_graph(arr)?;
            let v = if arr.conics.is_empty() { cfg_check_line(&g) } else { cfg_check_cl(&g) };
            Ok(Outcome::ok(pretty(&json!({ "graph": g, "verdict": v }))))
        }
        Command::Structure => {
            let v = predict_cf(arr)?;
            Ok(Outcome::ok(match fmt {
                Some(Format::Text) => match v.structure() {
                    Some(s) => format!("{} ({})\n", s, v.theorem),
                    None => format!("{}: {}\n", v.outcome_name(), v.reason),
                },
                _ => pretty(&serde_json::to_value(&v).expect("json")),
            }))
        }
        Command::Verify => Ok(Outcome::ok(pretty(&verify(arr, cfg)?))),
    }
}

/// Abelianization rank, structure identities and hom-count agreement; the
/// simplification status is reported without affecting `passed`.
pub fn verify(arr: &Arrangement, cfg: &RunConfig) -> Result<Value, Error> {
    let p = presentation_for(arr, cfg)?;
    let mut checks = Vec::new();
    let ab = abelianization(&p);
    let comps = arr.lines.len() + arr.conics.len();
    checks.push(json!({
        "name": "abelianization",
        "passed": ab.rank == comps && ab.torsion.is_empty(),
        "detail": format!("rank {} for {} components", ab.rank, comps),
    }));
    let verdict = predict_cf(arr)?;
    if let Some(s) = verdict.structure() {
        let canon = canonical_presentation(s);
        checks.push(json!({ "name": "rank_identity", "passed": true, "detail": s.to_string() }));
        for name in &cfg.oracle {
            let t = FiniteGroup::by_name(name).expect("checked by the parser");
            let (a, b) = (count_homs(&p, &t), count_homs(&canon, &t));
            checks.push(json!({
                "name": format!("homs_{name}"),
                "passed": a == b,
                "detail": format!("{a} vs canonical {b}"),
            }));
        }
    }
    let cf = simplify_to_cf(&p, cfg.budget);
    let passed = checks.iter().all(|c| c["passed"] == true);
    let simplify = json!({ "conjugation_free": cf.is_conjugation_free(), "steps": cf.steps });
    Ok(json!({ "structure": verdict, "checks": checks, "simplify": simplify, "passed": passed }))
}
