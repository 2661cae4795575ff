//! One binary over the whole workbench: encoding, saturation, frame
//! semantics, proof checking and search, bounded evaluation of the
//! arithmetical conditions, and the lattice report.
//!
//! Exit codes: 0 for a completed run (whatever the verdict), 1 for domain
//! errors such as malformed input files (or a falsified verdict under
//! `--expect-consistent`), 2 for usage errors.
//!
//! Output is deterministic for fixed inputs regardless of `--threads`.

mod inputs;

use anyhow::{anyhow, bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

use logikon::arith::{
    build_fmp_formula, build_interval_formula, build_pretab_formula, eval_bounded,
    eval_bounded_split, ArithFormula, BoundedVerdict, EvalReport, Polarity,
};
use logikon::codec::{
    canonical_frame_code, decode_equation, decode_formula, decode_frame, decode_term,
    encode_equation, encode_formula, encode_frame, encode_term, format_equation, format_formula,
    format_frame, format_term, parse_equation, parse_formula, parse_frame, parse_signature,
    parse_term, ModalFormula,
};
use logikon::eqlogic::{
    derives, refutes_with_ceiling, saturate, DerivationOutcome, RefutationOutcome,
    SaturationBudget, DEFAULT_ALGEBRA_CEILING,
};
use logikon::hilbert::{
    check_proof, pretabular_bounded, search_proof, DischargedBy, PretabOutcome, ProofBase,
    SearchOutcome,
};
use logikon::kripke::{
    enumerate_frames_with_ceiling, finite_frames_of, fmp_equal_bounded, validates,
    validates_naive, DistinguishedSide, FiniteFrame, FmpVerdict, Mode,
    DEFAULT_FRAME_SIZE_CEILING,
};
use logikon::lattice::{
    check_distributive, downset_lattice, exists_incomparable_pair,
    principal_downset_compactness_demo, FiniteChain,
};

use inputs::{
    format_proof, load_axiom_set, load_logic, load_proof, load_tab_table, parse_code,
    parse_formula_code, parse_real, RealContext,
};

#[derive(Parser)]
#[command(
    name = "logikon",
    version,
    about = "Workbench for coded equational theories, modal logics, and their arithmetical conditions"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for internal parallelism; never changes the output.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Encode a term, equation, formula, or frame as its numeric code.
    Encode(EncodeArgs),
    /// Decode a numeric code back to text.
    Decode(DecodeArgs),
    /// Close an axiom file under the consequence rules within a budget.
    Saturate(SaturateArgs),
    /// Search for a bounded derivation of a goal equation.
    Derive(DeriveArgs),
    /// Search small algebras for a counter-model to a goal equation.
    Refute(RefuteArgs),
    /// Check whether a frame validates a formula.
    Validate(ValidateArgs),
    /// Enumerate frames up to isomorphism.
    Frames(FramesArgs),
    /// Enumerate the frames validating every axiom of a logic.
    Ffr(FfrArgs),
    /// Compare the finite frame classes of two logics up to a size bound.
    FmpEqual(FmpEqualArgs),
    /// Check a proof file against an axiomatic base.
    CheckProof(CheckProofArgs),
    /// Search for a proof and print it in the proof-file format.
    SearchProof(SearchProofArgs),
    /// Scan formula codes for pretabularity certificates.
    Pretab(PretabArgs),
    /// Build an arithmetical condition and evaluate it within bounds.
    Eval(EvalArgs),
    /// Report on the downset lattice of a finite chain.
    LatticeDemo(LatticeDemoArgs),
    /// Cross-check the two frame evaluators on a seeded random corpus.
    Conformance(ConformanceArgs),
}

#[derive(Args)]
struct EncodeArgs {
    #[command(flatten)]
    input: ObjectText,
    /// Read the frame as a tense frame.
    #[arg(long)]
    tense: bool,
    /// Minimize the frame code over relabelings.
    #[arg(long)]
    canonical: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ObjectText {
    /// Term text, e.g. "f0(x0) * x1".
    #[arg(long)]
    term: Option<String>,
    /// Equation text, e.g. "x0 * x1 = x1 * x0".
    #[arg(long)]
    equation: Option<String>,
    /// Formula text, e.g. "box0 (p0 -> p0)".
    #[arg(long)]
    formula: Option<String>,
    /// Frame record, e.g. "{size: 2, edges: [[0, 1]]}".
    #[arg(long)]
    frame: Option<String>,
}

#[derive(Args)]
struct DecodeArgs {
    #[command(flatten)]
    input: ObjectCode,
    /// Signature as comma-separated arities, e.g. "2,1".
    #[arg(long, default_value = "2")]
    signature: String,
    /// Read the frame as a tense frame.
    #[arg(long)]
    tense: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ObjectCode {
    /// Term code.
    #[arg(long)]
    term: Option<String>,
    /// Equation code.
    #[arg(long)]
    equation: Option<String>,
    /// Formula code.
    #[arg(long)]
    formula: Option<String>,
    /// Frame code.
    #[arg(long)]
    frame: Option<String>,
}

#[derive(Args)]
struct BudgetArgs {
    /// Largest term size the closure may touch.
    #[arg(long, default_value_t = 4)]
    max_term_size: usize,
    /// Variables x0..x(k-1) available to the closure.
    #[arg(long, default_value_t = 3)]
    max_vars: usize,
    /// Iteration cap for the closure loop.
    #[arg(long, default_value_t = 64)]
    max_iterations: usize,
}

impl BudgetArgs {
    fn build(&self) -> Result<SaturationBudget> {
        SaturationBudget::new(self.max_term_size, self.max_vars, self.max_iterations)
            .map_err(|e| anyhow!("{e}"))
    }
}

#[derive(Args)]
struct SaturateArgs {
    /// Axiom file: one equation per line, `#` comments.
    file: PathBuf,
    /// Signature as comma-separated arities.
    #[arg(long, default_value = "2")]
    signature: String,
    #[command(flatten)]
    budget: BudgetArgs,
    /// Append the closure rule that produced each equation.
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct DeriveArgs {
    /// Axiom file: one equation per line, `#` comments.
    file: PathBuf,
    /// Goal equation text.
    #[arg(long)]
    goal: String,
    #[arg(long, default_value = "2")]
    signature: String,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct RefuteArgs {
    /// Axiom file: one equation per line, `#` comments.
    file: PathBuf,
    /// Goal equation text.
    #[arg(long)]
    goal: String,
    #[arg(long, default_value = "2")]
    signature: String,
    /// Largest algebra size searched.
    #[arg(long, default_value_t = 3)]
    max_algebra_size: usize,
}

#[derive(Args)]
struct ValidateArgs {
    /// Frame record, e.g. "{size: 2, edges: [[0, 1]]}".
    #[arg(long)]
    frame: String,
    /// Formula text.
    #[arg(long)]
    formula: String,
    /// Read the frame as a tense frame.
    #[arg(long)]
    tense: bool,
}

#[derive(Args)]
struct FramesArgs {
    /// Largest frame size enumerated.
    #[arg(long)]
    max_size: usize,
    /// Enumerate tense frames.
    #[arg(long)]
    tense: bool,
}

#[derive(Args)]
struct FfrArgs {
    /// Logic file: one axiom formula per line; omit for the minimal logic.
    file: Option<PathBuf>,
    #[arg(long)]
    max_size: usize,
    #[arg(long)]
    tense: bool,
}

#[derive(Args)]
struct FmpEqualArgs {
    /// Logic file for the left side.
    left: PathBuf,
    /// Logic file for the right side.
    right: PathBuf,
    #[arg(long)]
    max_size: usize,
    #[arg(long)]
    tense: bool,
}

#[derive(Args)]
struct CheckProofArgs {
    /// Proof file: `n: <formula> [<justification>]` lines.
    file: PathBuf,
    /// Logic file for the base; minimal base when omitted.
    #[arg(long)]
    base: Option<PathBuf>,
    #[arg(long)]
    tense: bool,
    /// Extra axiom formula joined to the base.
    #[arg(long)]
    extra: Option<String>,
    /// Goal formula; the proof's final line when omitted.
    #[arg(long)]
    goal: Option<String>,
}

#[derive(Args)]
struct SearchProofArgs {
    /// Logic file for the base; minimal base when omitted.
    #[arg(long)]
    base: Option<PathBuf>,
    #[arg(long)]
    tense: bool,
    /// Extra axiom formula joined to the base.
    #[arg(long)]
    extra: Option<String>,
    /// Goal formula.
    #[arg(long)]
    goal: String,
    /// Maximum number of proof lines.
    #[arg(long)]
    proof_bound: usize,
    /// Maximum size of intermediate formulas; goal size plus four when omitted.
    #[arg(long)]
    size_bound: Option<usize>,
}

#[derive(Args)]
struct PretabArgs {
    /// Logic file for the tense base; minimal tense base when omitted.
    #[arg(long)]
    base: Option<PathBuf>,
    /// Tab table file: `n <formula>` lines.
    #[arg(long)]
    tabs: PathBuf,
    /// Scan formula codes up to this bound inclusive.
    #[arg(long)]
    code_bound: u64,
    /// Maximum number of lines per certificate proof.
    #[arg(long)]
    proof_bound: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormulaKind {
    Interval,
    Fmp,
    Pretab,
}

#[derive(Args)]
struct EvalArgs {
    /// Which condition to build.
    #[arg(long, value_enum)]
    formula: FormulaKind,
    /// Bound on universally quantified codes (and existential ones unless
    /// --inner-bound is given).
    #[arg(long)]
    bound: u64,
    /// Separate bound on existentially quantified codes.
    #[arg(long)]
    inner_bound: Option<u64>,
    /// Signature for the interval condition.
    #[arg(long, default_value = "2")]
    signature: String,
    /// Build the fmp condition over tense logics.
    #[arg(long)]
    tense: bool,
    /// Lower endpoint set (interval).
    #[arg(long, required_if_eq("formula", "interval"))]
    phi0: Option<String>,
    /// Upper endpoint set (interval).
    #[arg(long, required_if_eq("formula", "interval"))]
    phi1: Option<String>,
    /// Candidate set between the endpoints (interval).
    #[arg(long, required_if_eq("formula", "interval"))]
    phi: Option<String>,
    /// Base logic set (fmp).
    #[arg(long, required_if_eq("formula", "fmp"))]
    l0: Option<String>,
    /// Reference logic set (fmp, pretab).
    #[arg(long, required_if_eq_any([("formula", "fmp"), ("formula", "pretab")]))]
    l: Option<String>,
    /// Candidate extension set (fmp, pretab).
    #[arg(long, required_if_eq_any([("formula", "fmp"), ("formula", "pretab")]))]
    lprime: Option<String>,
    /// Tab table file (pretab).
    #[arg(long, required_if_eq("formula", "pretab"))]
    tabs: Option<PathBuf>,
    /// Evaluate a single clause by index instead of the whole formula.
    #[arg(long)]
    conjunct: Option<usize>,
    /// Exit with status 1 if the verdict is falsified.
    #[arg(long)]
    expect_consistent: bool,
}

#[derive(Args)]
struct LatticeDemoArgs {
    /// Chain size.
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct ConformanceArgs {
    /// Seed for the random formula corpus.
    #[arg(long)]
    seed: u64,
    /// Largest frame size checked.
    #[arg(long, default_value_t = 3)]
    max_size: usize,
    /// Number of random formulas.
    #[arg(long, default_value_t = 100)]
    count: usize,
    /// Maximum connective nesting depth.
    #[arg(long, default_value_t = 3)]
    max_depth: usize,
    /// Generate tense formulas and frames.
    #[arg(long)]
    tense: bool,
}

/// A completed run: what to print and how to exit.
struct Outcome {
    text: String,
    json: serde_json::Value,
    exit: u8,
}

impl Outcome {
    fn done(text: String, json: serde_json::Value) -> Outcome {
        Outcome { text, json, exit: 0 }
    }
}

/// Print the report, treating a closed stdout (a downstream `head`) as a
/// normal end of output rather than a failure.
fn emit(line: &str) -> std::io::Result<()> {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    writeln!(stdout, "{line}")?;
    stdout.flush()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(cli.command) {
        Ok(out) => {
            let report = match cli.format {
                Format::Text => out.text,
                Format::Json => {
                    serde_json::to_string_pretty(&out.json).expect("serializable report")
                }
            };
            match emit(&report) {
                Ok(()) => ExitCode::from(out.exit),
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::from(out.exit),
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn mode_of(tense: bool) -> Mode {
    if tense {
        Mode::Tense
    } else {
        Mode::Unimodal
    }
}

fn env_parsed<T: std::str::FromStr>(name: &str) -> Result<Option<T>> {
    match std::env::var(name) {
        Ok(v) => v
            .parse()
            .map(Some)
            .map_err(|_| anyhow!("bad {name} value {v:?}")),
        Err(_) => Ok(None),
    }
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Encode(args) => cmd_encode(args),
        Command::Decode(args) => cmd_decode(args),
        Command::Saturate(args) => cmd_saturate(args),
        Command::Derive(args) => cmd_derive(args),
        Command::Refute(args) => cmd_refute(args),
        Command::Validate(args) => cmd_validate(args),
        Command::Frames(args) => cmd_frames(args),
        Command::Ffr(args) => cmd_ffr(args),
        Command::FmpEqual(args) => cmd_fmp_equal(args),
        Command::CheckProof(args) => cmd_check_proof(args),
        Command::SearchProof(args) => cmd_search_proof(args),
        Command::Pretab(args) => cmd_pretab(args),
        Command::Eval(args) => cmd_eval(args),
        Command::LatticeDemo(args) => cmd_lattice_demo(args),
        Command::Conformance(args) => cmd_conformance(args),
    }
}

fn cmd_encode(args: EncodeArgs) -> Result<Outcome> {
    let code = if let Some(text) = &args.input.term {
        encode_term(&parse_term(text)?)
    } else if let Some(text) = &args.input.equation {
        encode_equation(&parse_equation(text)?)
    } else if let Some(text) = &args.input.formula {
        encode_formula(&parse_formula(text)?)
    } else if let Some(text) = &args.input.frame {
        let frame = parse_frame(text, mode_of(args.tense))?;
        if args.canonical {
            canonical_frame_code(&frame)
        } else {
            encode_frame(&frame)
        }
    } else {
        unreachable!("clap enforces one input");
    };
    Ok(Outcome::done(
        code.to_string(),
        json!({ "code": code.to_string() }),
    ))
}

fn cmd_decode(args: DecodeArgs) -> Result<Outcome> {
    let sig = parse_signature(&args.signature)?;
    let (kind, text) = if let Some(code) = &args.input.term {
        ("term", format_term(&decode_term(&parse_code(code)?, &sig)?))
    } else if let Some(code) = &args.input.equation {
        (
            "equation",
            format_equation(&decode_equation(&parse_code(code)?, &sig)?),
        )
    } else if let Some(code) = &args.input.formula {
        ("formula", format_formula(&decode_formula(&parse_code(code)?)?))
    } else if let Some(code) = &args.input.frame {
        (
            "frame",
            format_frame(&decode_frame(&parse_code(code)?, mode_of(args.tense))?),
        )
    } else {
        unreachable!("clap enforces one input");
    };
    Ok(Outcome::done(text.clone(), json!({ kind: text })))
}

fn cmd_saturate(args: SaturateArgs) -> Result<Outcome> {
    let sig = parse_signature(&args.signature)?;
    let axioms = load_axiom_set(&args.file, &sig)?;
    let result = saturate(&axioms, args.budget.build()?);
    let mut lines = Vec::new();
    let mut entries = Vec::new();
    for eq in result.derived() {
        let code = encode_equation(eq);
        let text = format_equation(eq);
        let rule = result.traces().get(eq).map(|s| s.rule_name());
        match (args.trace, rule) {
            (true, Some(rule)) => lines.push(format!("{code}\t{text}\t{rule}")),
            _ => lines.push(format!("{code}\t{text}")),
        }
        entries.push(json!({
            "code": code.to_string(),
            "equation": text,
            "rule": rule,
        }));
    }
    let exhausted = result.exhausted();
    lines.push(format!(
        "derived: {}, exhausted: {}",
        entries.len(),
        if exhausted { "yes" } else { "no" }
    ));
    Ok(Outcome::done(
        lines.join("\n"),
        json!({ "derived": entries, "count": entries.len(), "exhausted": exhausted }),
    ))
}

fn cmd_derive(args: DeriveArgs) -> Result<Outcome> {
    let sig = parse_signature(&args.signature)?;
    let axioms = load_axiom_set(&args.file, &sig)?;
    let goal = parse_equation(&args.goal)?;
    match derives(&axioms, &goal, args.budget.build()?) {
        DerivationOutcome::Derived { steps } => {
            let mut lines = vec![format!("derived in {} steps", steps.len())];
            let mut entries = Vec::new();
            for (eq, step) in &steps {
                lines.push(format!("{}\t{}", format_equation(eq), step.rule_name()));
                entries.push(json!({
                    "equation": format_equation(eq),
                    "rule": step.rule_name(),
                }));
            }
            Ok(Outcome::done(
                lines.join("\n"),
                json!({ "derived": true, "steps": entries }),
            ))
        }
        DerivationOutcome::Unknown => Ok(Outcome::done(
            "unknown".into(),
            json!({ "derived": false }),
        )),
    }
}

fn cmd_refute(args: RefuteArgs) -> Result<Outcome> {
    let sig = parse_signature(&args.signature)?;
    let axioms = load_axiom_set(&args.file, &sig)?;
    let goal = parse_equation(&args.goal)?;
    let ceiling =
        env_parsed::<u64>("LOGIKON_ALGEBRA_CEILING")?.unwrap_or(DEFAULT_ALGEBRA_CEILING);
    match refutes_with_ceiling(&axioms, &goal, args.max_algebra_size, ceiling)
        .map_err(|e| anyhow!("{e}"))?
    {
        RefutationOutcome::CounterModel { algebra, assignment } => {
            let mut lines = vec![format!("counter-model of size {}", algebra.size())];
            let mut tables = Vec::new();
            for k in 0..algebra.signature().symbol_count() {
                let table = algebra.table(k);
                lines.push(format!("f{k}: {table:?}"));
                tables.push(json!(table));
            }
            let assigned: Vec<String> = assignment
                .iter()
                .enumerate()
                .map(|(i, v)| format!("x{i} = {v}"))
                .collect();
            lines.push(format!("assignment: {}", assigned.join(", ")));
            Ok(Outcome::done(
                lines.join("\n"),
                json!({
                    "refuted": true,
                    "size": algebra.size(),
                    "tables": tables,
                    "assignment": assignment,
                }),
            ))
        }
        RefutationOutcome::Unknown => Ok(Outcome::done(
            "unknown".into(),
            json!({ "refuted": false }),
        )),
    }
}

fn cmd_validate(args: ValidateArgs) -> Result<Outcome> {
    let frame = parse_frame(&args.frame, mode_of(args.tense))?;
    let formula = parse_formula(&args.formula)?;
    let valid = validates(&frame, &formula).map_err(|e| anyhow!("{e}"))?;
    Ok(Outcome::done(
        if valid { "valid" } else { "invalid" }.into(),
        json!({ "valid": valid }),
    ))
}

fn frame_listing(frames: &[FiniteFrame]) -> Outcome {
    let mut lines = Vec::new();
    let mut entries = Vec::new();
    for frame in frames {
        let code = encode_frame(frame);
        let record = format_frame(frame);
        lines.push(format!("{code}\t{record}"));
        let edges: Vec<[usize; 2]> = frame.edges().iter().map(|&(a, b)| [a, b]).collect();
        entries.push(json!({
            "code": code.to_string(),
            "size": frame.size(),
            "edges": edges,
        }));
    }
    lines.push(format!("total: {}", frames.len()));
    Outcome::done(
        lines.join("\n"),
        json!({ "frames": entries, "count": frames.len() }),
    )
}

fn cmd_frames(args: FramesArgs) -> Result<Outcome> {
    let ceiling =
        env_parsed::<usize>("LOGIKON_FRAME_SIZE_CEILING")?.unwrap_or(DEFAULT_FRAME_SIZE_CEILING);
    let frames = enumerate_frames_with_ceiling(args.max_size, mode_of(args.tense), ceiling)
        .map_err(|e| anyhow!("{e}"))?;
    Ok(frame_listing(&frames))
}

fn cmd_ffr(args: FfrArgs) -> Result<Outcome> {
    let logic = load_logic(args.file.as_deref(), mode_of(args.tense))?;
    let frames = finite_frames_of(&logic, args.max_size).map_err(|e| anyhow!("{e}"))?;
    Ok(frame_listing(&frames))
}

fn cmd_fmp_equal(args: FmpEqualArgs) -> Result<Outcome> {
    let mode = mode_of(args.tense);
    let left = load_logic(Some(&args.left), mode)?;
    let right = load_logic(Some(&args.right), mode)?;
    match fmp_equal_bounded(&left, &right, args.max_size).map_err(|e| anyhow!("{e}"))? {
        FmpVerdict::EqualUpTo(bound) => Ok(Outcome::done(
            format!("equal up to {bound}"),
            json!({ "verdict": "equal-up-to", "bound": bound }),
        )),
        FmpVerdict::Distinguished { frame, side } => {
            let side_name = match side {
                DistinguishedSide::Left => "left",
                DistinguishedSide::Right => "right",
            };
            let record = format_frame(&frame);
            let edges: Vec<[usize; 2]> = frame.edges().iter().map(|&(a, b)| [a, b]).collect();
            Ok(Outcome::done(
                format!("distinguished: the {side_name} logic alone accepts {record}"),
                json!({
                    "verdict": "distinguished",
                    "side": side_name,
                    "frame": { "size": frame.size(), "edges": edges },
                }),
            ))
        }
    }
}

fn cmd_check_proof(args: CheckProofArgs) -> Result<Outcome> {
    let logic = load_logic(args.base.as_deref(), mode_of(args.tense))?;
    let proof = load_proof(&args.file)?;
    let extra = args.extra.as_deref().map(parse_formula_code).transpose()?;
    let goal = match &args.goal {
        Some(text) => parse_formula_code(text)?,
        None => encode_formula(
            proof
                .conclusion()
                .ok_or_else(|| anyhow!("proof has no conclusion"))?,
        ),
    };
    let accepted = check_proof(&ProofBase::Axiomatic(&logic), extra.as_ref(), &proof, &goal)
        .map_err(|e| anyhow!("{e}"))?;
    Ok(Outcome::done(
        if accepted { "accepted" } else { "rejected" }.into(),
        json!({ "accepted": accepted }),
    ))
}

fn cmd_search_proof(args: SearchProofArgs) -> Result<Outcome> {
    let logic = load_logic(args.base.as_deref(), mode_of(args.tense))?;
    let goal_formula = parse_formula(&args.goal)?;
    let goal = encode_formula(&goal_formula);
    let extra = args.extra.as_deref().map(parse_formula_code).transpose()?;
    let size_bound = args.size_bound.unwrap_or(goal_formula.size() + 4);
    match search_proof(&logic, extra.as_ref(), &goal, args.proof_bound, size_bound) {
        SearchOutcome::Found(proof) => {
            let listing = format_proof(&proof);
            let steps: Vec<&str> = listing.lines().collect();
            Ok(Outcome::done(
                format!("found: {} lines\n{listing}", proof.len()),
                json!({ "found": true, "lines": proof.len(), "proof": steps }),
            ))
        }
        SearchOutcome::Unknown => Ok(Outcome::done(
            "unknown".into(),
            json!({ "found": false }),
        )),
    }
}

fn cmd_pretab(args: PretabArgs) -> Result<Outcome> {
    let logic = load_logic(args.base.as_deref(), Mode::Tense)?;
    let tabs = load_tab_table(&args.tabs)?;
    match pretabular_bounded(&logic, &tabs, args.code_bound, args.proof_bound)
        .map_err(|e| anyhow!("{e}"))?
    {
        PretabOutcome::Consistent(report) => {
            let mut lines = Vec::new();
            let mut entries = Vec::new();
            for (code, by) in &report.discharged {
                let label = match by {
                    DischargedBy::Membership => "membership".to_string(),
                    DischargedBy::Tabular { n } => format!("tab {n}"),
                    DischargedBy::Inconsistency => "inconsistency".to_string(),
                };
                lines.push(format!("{code}\t{label}"));
                entries.push(json!({ "code": code.to_string(), "by": label }));
            }
            lines.push(format!(
                "discharged: {} formula codes up to {}",
                entries.len(),
                args.code_bound
            ));
            Ok(Outcome::done(
                lines.join("\n"),
                json!({
                    "verdict": "consistent",
                    "discharged": entries,
                    "count": entries.len(),
                }),
            ))
        }
        PretabOutcome::Falsified(code) => Ok(Outcome::done(
            format!("undischarged: {code}"),
            json!({ "verdict": "undischarged", "code": code.to_string() }),
        )),
    }
}

fn report_lines(formula: &ArithFormula, report: &EvalReport, expect_consistent: bool) -> Outcome {
    let (kind, alternations) = formula.classify();
    let mut lines = vec![format!("classification: ({kind}, {alternations})")];
    let mut exit = 0u8;
    let verdict_json;
    match &report.verdict {
        BoundedVerdict::Falsified(witness) => {
            let printed: Vec<String> = witness.iter().map(|c| c.to_string()).collect();
            lines.push("verdict: falsified".into());
            lines.push(format!("witness: [{}]", printed.join(", ")));
            verdict_json = json!({ "kind": "falsified", "witness": printed });
            if expect_consistent {
                exit = 1;
            }
        }
        BoundedVerdict::ConsistentUpTo(bound) => {
            lines.push(format!("verdict: consistent up to {bound}"));
            verdict_json = json!({ "kind": "consistent-up-to", "bound": bound });
        }
        BoundedVerdict::WitnessedUpTo(bound) => {
            lines.push(format!("verdict: witnessed within {bound}"));
            verdict_json = json!({ "kind": "witnessed-up-to", "bound": bound });
        }
    }
    let mut caveat_entries = Vec::new();
    if report.caveats.is_empty() {
        lines.push("caveats: none".into());
    } else {
        let printed: Vec<String> = report
            .caveats
            .iter()
            .map(|c| {
                let polarity = match c.polarity {
                    Polarity::Under => "under",
                    Polarity::Over => "over",
                };
                caveat_entries.push(json!({ "parameter": c.parameter, "polarity": polarity }));
                format!("{} {polarity}", c.parameter)
            })
            .collect();
        lines.push(format!("caveats: {}", printed.join(", ")));
    }
    Outcome {
        text: lines.join("\n"),
        json: json!({
            "classification": { "kind": kind.to_string(), "alternations": alternations },
            "verdict": verdict_json,
            "caveats": caveat_entries,
        }),
        exit,
    }
}

fn cmd_eval(args: EvalArgs) -> Result<Outcome> {
    let (formula, assignment) = match args.formula {
        FormulaKind::Interval => {
            let sig = parse_signature(&args.signature)?;
            let ctx = RealContext {
                signature: Some(&sig),
                mode: mode_of(args.tense),
            };
            let phi0 = parse_real(args.phi0.as_deref().expect("required"), &ctx)?;
            let phi1 = parse_real(args.phi1.as_deref().expect("required"), &ctx)?;
            let phi = parse_real(args.phi.as_deref().expect("required"), &ctx)?;
            (build_interval_formula(&sig, phi0, phi1), vec![phi])
        }
        FormulaKind::Fmp => {
            let mode = mode_of(args.tense);
            let ctx = RealContext { signature: None, mode };
            let l0 = parse_real(args.l0.as_deref().expect("required"), &ctx)?;
            let l = parse_real(args.l.as_deref().expect("required"), &ctx)?;
            let lprime = parse_real(args.lprime.as_deref().expect("required"), &ctx)?;
            (build_fmp_formula(mode, l0, l), vec![lprime])
        }
        FormulaKind::Pretab => {
            let ctx = RealContext {
                signature: None,
                mode: Mode::Tense,
            };
            let l = parse_real(args.l.as_deref().expect("required"), &ctx)?;
            let lprime = parse_real(args.lprime.as_deref().expect("required"), &ctx)?;
            let tabs = load_tab_table(args.tabs.as_deref().expect("required"))?;
            (build_pretab_formula(l, &tabs), vec![lprime])
        }
    };
    let formula = match args.conjunct {
        None => formula,
        Some(i) => formula
            .conjunct(i)
            .ok_or_else(|| anyhow!("no clause with index {i}"))?,
    };
    let report = match args.inner_bound {
        None => eval_bounded(&formula, &assignment, args.bound),
        Some(inner) => eval_bounded_split(&formula, &assignment, args.bound, inner),
    }
    .map_err(|e| anyhow!("{e}"))?;
    Ok(report_lines(&formula, &report, args.expect_consistent))
}

fn cmd_lattice_demo(args: LatticeDemoArgs) -> Result<Outcome> {
    if args.n > 16 {
        bail!("chain size {} too large for the covering scan (max 16)", args.n);
    }
    let chain = FiniteChain::new(args.n).map_err(|e| anyhow!("{e}"))?;
    let lat = downset_lattice(&chain);
    let chain_shaped = exists_incomparable_pair(&lat).is_none();
    let distributive = check_distributive(&lat).map_err(|e| anyhow!("{e}"))?;
    let report = principal_downset_compactness_demo(&chain);
    let text = format!(
        "downset lattice of the {}-element chain: {} elements, chain = {}\n\
         distributive: {}\n\
         union decompositions: {} of {}\n\
         coverings checked: {}, single-member witnesses: {}\n\
         compactness: {}",
        args.n,
        lat.len(),
        if chain_shaped { "yes" } else { "no" },
        if distributive { "yes" } else { "no" },
        report.union_decompositions,
        lat.len(),
        report.coverings_checked,
        report.coverings_with_single_witness,
        if report.all_pass { "pass" } else { "fail" },
    );
    Ok(Outcome::done(
        text,
        json!({
            "chain_size": args.n,
            "elements": lat.len(),
            "chain": chain_shaped,
            "distributive": distributive,
            "union_decompositions": report.union_decompositions,
            "coverings_checked": report.coverings_checked,
            "coverings_with_single_witness": report.coverings_with_single_witness,
            "all_pass": report.all_pass,
        }),
    ))
}

fn random_formula(rng: &mut ChaCha8Rng, depth: usize, mode: Mode) -> ModalFormula {
    let slots: u8 = match mode {
        Mode::Unimodal => 1,
        Mode::Tense => 2,
    };
    if depth == 0 {
        return match rng.gen_range(0..4) {
            3 => ModalFormula::Bottom,
            _ => ModalFormula::PropVar(rng.gen_range(0..3)),
        };
    }
    match rng.gen_range(0..12) {
        0 | 1 => ModalFormula::PropVar(rng.gen_range(0..3)),
        2 => ModalFormula::Bottom,
        3..=5 => {
            let a = random_formula(rng, depth - 1, mode);
            let b = random_formula(rng, depth - 1, mode);
            ModalFormula::and(a, b)
        }
        6..=8 => {
            let a = random_formula(rng, depth - 1, mode);
            let b = random_formula(rng, depth - 1, mode);
            ModalFormula::implies(a, b)
        }
        _ => {
            let slot = rng.gen_range(0..slots);
            ModalFormula::boxed(slot, random_formula(rng, depth - 1, mode))
        }
    }
}

fn cmd_conformance(args: ConformanceArgs) -> Result<Outcome> {
    let mode = mode_of(args.tense);
    let frames = enumerate_frames_with_ceiling(args.max_size, mode, DEFAULT_FRAME_SIZE_CEILING)
        .map_err(|e| anyhow!("{e}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut checks = 0usize;
    let mut mismatches = Vec::new();
    for _ in 0..args.count {
        let formula = random_formula(&mut rng, args.max_depth, mode);
        for frame in &frames {
            let fast = validates(frame, &formula).map_err(|e| anyhow!("{e}"))?;
            let naive = validates_naive(frame, &formula).map_err(|e| anyhow!("{e}"))?;
            checks += 1;
            if fast != naive {
                mismatches.push(format!(
                    "{} on {}",
                    format_formula(&formula),
                    format_frame(frame)
                ));
            }
        }
    }
    let mut lines = vec![
        format!(
            "corpus: seed {}, {} formulas, depth <= {}, {mode}",
            args.seed, args.count, args.max_depth
        ),
        format!("frames: {} (size <= {})", frames.len(), args.max_size),
        format!("checks: {checks}, mismatches: {}", mismatches.len()),
    ];
    lines.extend(mismatches.iter().map(|m| format!("mismatch: {m}")));
    let exit = u8::from(!mismatches.is_empty());
    Ok(Outcome {
        text: lines.join("\n"),
        json: json!({
            "seed": args.seed,
            "formulas": args.count,
            "frames": frames.len(),
            "checks": checks,
            "mismatches": mismatches,
        }),
        exit,
    })
}
