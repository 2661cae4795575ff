//! File and flag-string parsers: axiom files, logic files, proof files,
//! set expressions, and big decimal codes.

use anyhow::{anyhow, bail, Context, Result};
use num_bigint::BigUint;
use std::path::Path;

use logikon::arith::{Real, TheoryApprox};
use logikon::codec::{
    encode_formula, parse_equation, parse_formula, Code, ModalFormula, Signature,
};
use logikon::eqlogic::{AxiomSet, SaturationBudget};
use logikon::hilbert::{Justification, ProofObject, TabTable};
use logikon::kripke::{LogicPresentation, Mode};

/// Parse a decimal code of any magnitude.
pub fn parse_code(s: &str) -> Result<Code> {
    let n: BigUint = s
        .trim()
        .parse()
        .map_err(|_| anyhow!("bad code {s:?}: expected a decimal number"))?;
    Ok(Code::from(n))
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, raw)| (i + 1, raw.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'))
}

/// Axiom file: one equation per line, `#` comments and blank lines skipped.
pub fn load_axiom_set(path: &Path, sig: &Signature) -> Result<AxiomSet> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let mut axioms = Vec::new();
    for (lineno, line) in content_lines(&text) {
        let eq = parse_equation(line)
            .with_context(|| format!("{}:{lineno}", path.display()))?;
        axioms.push(eq);
    }
    AxiomSet::new(sig.clone(), axioms).map_err(|e| anyhow!("{}: {e}", path.display()))
}

/// Logic file: one modal formula per line; no file means the minimal logic.
pub fn load_logic(path: Option<&Path>, mode: Mode) -> Result<LogicPresentation> {
    let Some(path) = path else {
        return Ok(LogicPresentation::minimal(mode));
    };
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let mut axioms = Vec::new();
    for (lineno, line) in content_lines(&text) {
        let f = parse_formula(line)
            .with_context(|| format!("{}:{lineno}", path.display()))?;
        axioms.push(f);
    }
    LogicPresentation::new(mode, axioms).map_err(|e| anyhow!("{}: {e}", path.display()))
}

pub fn load_tab_table(path: &Path) -> Result<TabTable> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    TabTable::parse(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

// Proof files.
//
// One step per line, labels starting at 1 and increasing by 1:
//
//     1: p0 -> (p0 & p0) -> p0 [taut]
//     2: box0 (p0 -> p0) [nec 0 1]
//
// Justifications:
//     base | taut | k <slot> | duality <slot>
//     axiom <n> [with p<i> := <formula>, ...]
//     extra [with p<i> := <formula>, ...]
//     mp <major> <minor>       (labels of earlier lines)
//     nec <slot> <premise>

fn parse_substitution(s: &str) -> Result<Vec<(usize, ModalFormula)>> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let (var, formula) = part
            .split_once(":=")
            .ok_or_else(|| anyhow!("bad substitution entry {part:?}: expected p<i> := <formula>"))?;
        let var = var.trim();
        let index: usize = var
            .strip_prefix('p')
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| anyhow!("bad substitution variable {var:?}"))?;
        out.push((index, parse_formula(formula.trim())?));
    }
    Ok(out)
}

fn parse_justification(s: &str, step: usize) -> Result<Justification> {
    let s = s.trim();
    let (head, rest) = match s.split_once(char::is_whitespace) {
        Some((h, r)) => (h, r.trim()),
        None => (s, ""),
    };
    let slot_arg = |rest: &str| -> Result<u8> {
        match rest {
            "0" => Ok(0),
            "1" => Ok(1),
            other => bail!("bad box slot {other:?}"),
        }
    };
    let earlier = |label: &str| -> Result<usize> {
        let n: usize = label
            .parse()
            .map_err(|_| anyhow!("bad step label {label:?}"))?;
        if n == 0 || n >= step {
            bail!("step {step} refers to label {n}, which is not an earlier line");
        }
        Ok(n - 1)
    };
    let with_subst = |rest: &str| -> Result<Vec<(usize, ModalFormula)>> {
        if rest.is_empty() {
            Ok(Vec::new())
        } else {
            let body = rest
                .strip_prefix("with")
                .ok_or_else(|| anyhow!("expected `with p<i> := ...`, got {rest:?}"))?;
            parse_substitution(body)
        }
    };
    match head {
        "base" if rest.is_empty() => Ok(Justification::InBase),
        "taut" if rest.is_empty() => Ok(Justification::Tautology),
        "k" => Ok(Justification::KInstance { slot: slot_arg(rest)? }),
        "duality" => Ok(Justification::TenseDuality { slot: slot_arg(rest)? }),
        "extra" => Ok(Justification::ExtraAxiomInstance {
            substitution: with_subst(rest)?,
        }),
        "axiom" => {
            let (index, tail) = match rest.split_once(char::is_whitespace) {
                Some((i, t)) => (i, t.trim()),
                None => (rest, ""),
            };
            let axiom: usize = index
                .parse()
                .map_err(|_| anyhow!("bad axiom index {index:?}"))?;
            Ok(Justification::BaseAxiomInstance {
                axiom,
                substitution: with_subst(tail)?,
            })
        }
        "mp" => {
            let (major, minor) = rest
                .split_once(char::is_whitespace)
                .ok_or_else(|| anyhow!("mp needs two labels"))?;
            Ok(Justification::MP {
                major: earlier(major.trim())?,
                minor: earlier(minor.trim())?,
            })
        }
        "nec" => {
            let (slot, premise) = rest
                .split_once(char::is_whitespace)
                .ok_or_else(|| anyhow!("nec needs a slot and a label"))?;
            Ok(Justification::Nec {
                slot: slot_arg(slot.trim())?,
                premise: earlier(premise.trim())?,
            })
        }
        other => bail!("unknown justification {other:?}"),
    }
}

pub fn load_proof(path: &Path) -> Result<ProofObject> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    parse_proof(&text).with_context(|| path.display().to_string())
}

pub fn parse_proof(text: &str) -> Result<ProofObject> {
    let mut steps = Vec::new();
    for (lineno, line) in content_lines(text) {
        let parsed = (|| -> Result<(ModalFormula, Justification)> {
            let (label, rest) = line
                .split_once(':')
                .ok_or_else(|| anyhow!("expected `n: <formula> [<justification>]`"))?;
            let label: usize = label
                .trim()
                .parse()
                .map_err(|_| anyhow!("bad step label {:?}", label.trim()))?;
            if label != steps.len() + 1 {
                bail!("label {label} out of order; expected {}", steps.len() + 1);
            }
            let open = rest
                .find('[')
                .ok_or_else(|| anyhow!("missing [<justification>]"))?;
            let close = rest
                .rfind(']')
                .filter(|&c| c > open && rest[c + 1..].trim().is_empty())
                .ok_or_else(|| anyhow!("missing closing bracket"))?;
            let formula = parse_formula(rest[..open].trim())?;
            let just = parse_justification(&rest[open + 1..close], label)?;
            Ok((formula, just))
        })()
        .with_context(|| format!("line {lineno}"))?;
        steps.push(parsed);
    }
    if steps.is_empty() {
        bail!("proof has no steps");
    }
    Ok(ProofObject::new(steps))
}

pub fn format_justification(j: &Justification) -> String {
    let subst = |entries: &[(usize, ModalFormula)]| -> String {
        if entries.is_empty() {
            return String::new();
        }
        let body: Vec<String> = entries
            .iter()
            .map(|(i, f)| format!("p{i} := {}", logikon::codec::format_formula(f)))
            .collect();
        format!(" with {}", body.join(", "))
    };
    match j {
        Justification::InBase => "base".into(),
        Justification::Tautology => "taut".into(),
        Justification::KInstance { slot } => format!("k {slot}"),
        Justification::TenseDuality { slot } => format!("duality {slot}"),
        Justification::ExtraAxiomInstance { substitution } => {
            format!("extra{}", subst(substitution))
        }
        Justification::BaseAxiomInstance { axiom, substitution } => {
            format!("axiom {axiom}{}", subst(substitution))
        }
        Justification::MP { major, minor } => format!("mp {} {}", major + 1, minor + 1),
        Justification::Nec { premise, slot } => format!("nec {slot} {}", premise + 1),
    }
}

pub fn format_proof(proof: &ProofObject) -> String {
    proof
        .steps()
        .iter()
        .enumerate()
        .map(|(i, (f, j))| {
            format!(
                "{}: {} [{}]",
                i + 1,
                logikon::codec::format_formula(f),
                format_justification(j)
            )
        })
        .collect::<Vec<_>>()
        .join("\n")
}

// Set expressions.
//
//     empty
//     finite:<code>,<code>,...
//     all-equations                  (needs a signature)
//     all-formulas
//     eq-under:file=<path>[,max-term-size=N][,max-vars=N][,max-iterations=N]
//     eq-over:file=<path>[,max-algebra-size=N]
//     modal-under:[file=<path>,]proof-bound=N
//     modal-over:[file=<path>,]max-frame-size=N

pub struct RealContext<'a> {
    pub signature: Option<&'a Signature>,
    pub mode: Mode,
}

fn key_values(body: &str) -> Result<Vec<(&str, &str)>> {
    body.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|part| {
            part.split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| anyhow!("bad key=value entry {part:?}"))
        })
        .collect()
}

fn take<'a>(
    pairs: &[(&'a str, &'a str)],
    key: &str,
    allowed: &[&str],
) -> Result<Option<&'a str>> {
    for (k, _) in pairs {
        if !allowed.contains(k) {
            bail!("unknown key {k:?}; allowed: {}", allowed.join(", "));
        }
    }
    Ok(pairs.iter().find(|(k, _)| *k == key).map(|(_, v)| *v))
}

fn numeric<T: std::str::FromStr>(value: Option<&str>, default: T, key: &str) -> Result<T> {
    match value {
        None => Ok(default),
        Some(v) => v.parse().map_err(|_| anyhow!("bad {key} value {v:?}")),
    }
}

pub fn parse_real(spec: &str, ctx: &RealContext) -> Result<Real> {
    let spec = spec.trim();
    if spec == "empty" {
        return Ok(Real::empty());
    }
    if spec == "all-formulas" {
        return Ok(Real::AllFormulas(ctx.mode));
    }
    if spec == "all-equations" {
        let sig = ctx
            .signature
            .ok_or_else(|| anyhow!("all-equations needs a signature in this position"))?;
        return Ok(Real::AllEquations(sig.clone()));
    }
    if let Some(body) = spec.strip_prefix("finite:") {
        let codes = body
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(parse_code)
            .collect::<Result<Vec<_>>>()?;
        return Ok(Real::finite(codes));
    }
    if let Some(body) = spec.strip_prefix("eq-under:") {
        let sig = ctx
            .signature
            .ok_or_else(|| anyhow!("eq-under needs a signature in this position"))?;
        let pairs = key_values(body)?;
        let allowed = ["file", "max-term-size", "max-vars", "max-iterations"];
        let file = take(&pairs, "file", &allowed)?
            .ok_or_else(|| anyhow!("eq-under needs file=<path>"))?;
        let budget = SaturationBudget::new(
            numeric(take(&pairs, "max-term-size", &allowed)?, 4, "max-term-size")?,
            numeric(take(&pairs, "max-vars", &allowed)?, 3, "max-vars")?,
            numeric(take(&pairs, "max-iterations", &allowed)?, 64, "max-iterations")?,
        )
        .map_err(|e| anyhow!("{e}"))?;
        let axioms = load_axiom_set(Path::new(file), sig)?;
        return Ok(Real::approx(TheoryApprox::equational_under(&axioms, budget)));
    }
    if let Some(body) = spec.strip_prefix("eq-over:") {
        let sig = ctx
            .signature
            .ok_or_else(|| anyhow!("eq-over needs a signature in this position"))?;
        let pairs = key_values(body)?;
        let allowed = ["file", "max-algebra-size"];
        let file = take(&pairs, "file", &allowed)?
            .ok_or_else(|| anyhow!("eq-over needs file=<path>"))?;
        let max = numeric(take(&pairs, "max-algebra-size", &allowed)?, 3, "max-algebra-size")?;
        let axioms = load_axiom_set(Path::new(file), sig)?;
        return Ok(Real::approx(
            TheoryApprox::equational_over(&axioms, max).map_err(|e| anyhow!("{e}"))?,
        ));
    }
    if let Some(body) = spec.strip_prefix("modal-under:") {
        let pairs = key_values(body)?;
        let allowed = ["file", "proof-bound"];
        let file = take(&pairs, "file", &allowed)?;
        let bound = numeric(take(&pairs, "proof-bound", &allowed)?, 3, "proof-bound")?;
        let logic = load_logic(file.map(Path::new), ctx.mode)?;
        return Ok(Real::approx(TheoryApprox::modal_under(&logic, bound)));
    }
    if let Some(body) = spec.strip_prefix("modal-over:") {
        let pairs = key_values(body)?;
        let allowed = ["file", "max-frame-size"];
        let file = take(&pairs, "file", &allowed)?;
        let max = numeric(take(&pairs, "max-frame-size", &allowed)?, 3, "max-frame-size")?;
        let logic = load_logic(file.map(Path::new), ctx.mode)?;
        return Ok(Real::approx(
            TheoryApprox::modal_over(&logic, max).map_err(|e| anyhow!("{e}"))?,
        ));
    }
    bail!(
        "bad set expression {spec:?}; expected empty, finite:<codes>, all-equations, \
         all-formulas, eq-under:..., eq-over:..., modal-under:..., or modal-over:..."
    )
}

/// The single extra axiom as a code, for proof bases.
pub fn parse_formula_code(text: &str) -> Result<Code> {
    Ok(encode_formula(&parse_formula(text)?))
}
