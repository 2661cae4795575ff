//! Text grammar for the object languages.
//!
//! Terms: `x0`, `f1(x0, x1)`, with `s * t` as infix sugar for the binary
//! symbol `f0` (left-associative). Equations: `s = t`. Formulas: `p0`,
//! `bot`, `box0 f`, `box1 f`, `&`, `->`, with precedence box over `&` over
//! `->` and right-associative implication. Frames:
//! `{size: n, edges: [[a, b], ...]}`. Printing always produces text the
//! parser maps back to the same object.

use super::syntax::{Equation, ModalFormula, Signature, Term};
use super::{CodecError, Result};
use crate::kripke::{FiniteFrame, Mode};
use std::fmt::Write as _;

struct Cursor<'a> {
    input: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(input: &'a str) -> Self {
        Cursor { input, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.input[self.pos..]
    }

    fn skip_ws(&mut self) {
        let rest = self.rest();
        let trimmed = rest.trim_start();
        self.pos += rest.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.fail(&format!("expected `{token}`")))
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let rest = self.rest();
        let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return Err(self.fail("expected a number"));
        }
        self.pos += digits.len();
        digits
            .parse()
            .map_err(|_| self.fail("number out of range"))
    }

    fn fail(&self, msg: &str) -> CodecError {
        CodecError::Parse(format!("{msg} at byte {} of {:?}", self.pos, self.input))
    }

    fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        if self.rest().is_empty() {
            Ok(())
        } else {
            Err(self.fail("trailing input"))
        }
    }
}

// Terms.

fn parse_term_mul(cur: &mut Cursor) -> Result<Term> {
    let mut acc = parse_term_atom(cur)?;
    while cur.eat("*") {
        let rhs = parse_term_atom(cur)?;
        acc = Term::App(0, vec![acc, rhs]);
    }
    Ok(acc)
}

fn parse_term_atom(cur: &mut Cursor) -> Result<Term> {
    if cur.eat("(") {
        let t = parse_term_mul(cur)?;
        cur.expect(")")?;
        return Ok(t);
    }
    match cur.peek() {
        Some('x') => {
            cur.eat("x");
            Ok(Term::Var(cur.number()?))
        }
        Some('f') => {
            cur.eat("f");
            let k = cur.number()?;
            cur.expect("(")?;
            let mut args = Vec::new();
            if !cur.eat(")") {
                loop {
                    args.push(parse_term_mul(cur)?);
                    if cur.eat(")") {
                        break;
                    }
                    cur.expect(",")?;
                }
            }
            Ok(Term::App(k, args))
        }
        _ => Err(cur.fail("expected a term")),
    }
}

/// Parse a term; the signature is not consulted, so arity conformance is the
/// caller's check.
pub fn parse_term(input: &str) -> Result<Term> {
    let mut cur = Cursor::new(input);
    let t = parse_term_mul(&mut cur)?;
    cur.finish()?;
    Ok(t)
}

/// Parse `s = t` (an ASCII `~` is accepted as the same relation symbol).
pub fn parse_equation(input: &str) -> Result<Equation> {
    let mut cur = Cursor::new(input);
    let left = parse_term_mul(&mut cur)?;
    if !cur.eat("=") && !cur.eat("~") {
        return Err(cur.fail("expected `=`"));
    }
    let right = parse_term_mul(&mut cur)?;
    cur.finish()?;
    Ok(Equation::new(left, right))
}

pub fn format_term(t: &Term) -> String {
    let mut out = String::new();
    write_term(t, false, &mut out);
    out
}

fn write_term(t: &Term, right_of_mul: bool, out: &mut String) {
    match t {
        Term::Var(i) => {
            let _ = write!(out, "x{i}");
        }
        Term::App(0, args) if args.len() == 2 => {
            if right_of_mul {
                out.push('(');
            }
            write_term(&args[0], false, out);
            out.push_str(" * ");
            write_term(&args[1], true, out);
            if right_of_mul {
                out.push(')');
            }
        }
        Term::App(k, args) => {
            let _ = write!(out, "f{k}(");
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_term(a, false, out);
            }
            out.push(')');
        }
    }
}

pub fn format_equation(eq: &Equation) -> String {
    format!("{} = {}", format_term(&eq.left), format_term(&eq.right))
}

// Formulas.

fn parse_formula_implies(cur: &mut Cursor) -> Result<ModalFormula> {
    let left = parse_formula_and(cur)?;
    if cur.eat("->") {
        let right = parse_formula_implies(cur)?;
        Ok(ModalFormula::implies(left, right))
    } else {
        Ok(left)
    }
}

fn parse_formula_and(cur: &mut Cursor) -> Result<ModalFormula> {
    let mut acc = parse_formula_unary(cur)?;
    while cur.eat("&") {
        let rhs = parse_formula_unary(cur)?;
        acc = ModalFormula::and(acc, rhs);
    }
    Ok(acc)
}

fn parse_formula_unary(cur: &mut Cursor) -> Result<ModalFormula> {
    if cur.eat("box0") {
        return Ok(ModalFormula::boxed(0, parse_formula_unary(cur)?));
    }
    if cur.eat("box1") {
        return Ok(ModalFormula::boxed(1, parse_formula_unary(cur)?));
    }
    if cur.eat("bot") {
        return Ok(ModalFormula::Bottom);
    }
    if cur.eat("(") {
        let f = parse_formula_implies(cur)?;
        cur.expect(")")?;
        return Ok(f);
    }
    if cur.eat("p") {
        return Ok(ModalFormula::PropVar(cur.number()?));
    }
    Err(cur.fail("expected a formula"))
}

pub fn parse_formula(input: &str) -> Result<ModalFormula> {
    let mut cur = Cursor::new(input);
    let f = parse_formula_implies(&mut cur)?;
    cur.finish()?;
    Ok(f)
}

#[derive(PartialEq, PartialOrd)]
enum Prec {
    Implies,
    And,
    Unary,
}

pub fn format_formula(f: &ModalFormula) -> String {
    let mut out = String::new();
    write_formula(f, Prec::Implies, &mut out);
    out
}

fn write_formula(f: &ModalFormula, min: Prec, out: &mut String) {
    match f {
        ModalFormula::PropVar(i) => {
            let _ = write!(out, "p{i}");
        }
        ModalFormula::Bottom => out.push_str("bot"),
        ModalFormula::And(a, b) => {
            let parens = min > Prec::And;
            if parens {
                out.push('(');
            }
            write_formula(a, Prec::And, out);
            out.push_str(" & ");
            write_formula(b, Prec::Unary, out);
            if parens {
                out.push(')');
            }
        }
        ModalFormula::Implies(a, b) => {
            let parens = min > Prec::Implies;
            if parens {
                out.push('(');
            }
            write_formula(a, Prec::And, out);
            out.push_str(" -> ");
            write_formula(b, Prec::Implies, out);
            if parens {
                out.push(')');
            }
        }
        ModalFormula::Box(slot, a) => {
            let _ = write!(out, "box{slot} ");
            write_formula(a, Prec::Unary, out);
        }
    }
}

// Frames.

/// Parse `{size: n, edges: [[a, b], ...]}`; keys may come in either order.
pub fn parse_frame(input: &str, mode: Mode) -> Result<FiniteFrame> {
    let mut cur = Cursor::new(input);
    cur.expect("{")?;
    let mut size: Option<usize> = None;
    let mut edges: Option<Vec<(usize, usize)>> = None;
    loop {
        if cur.eat("size") {
            cur.expect(":")?;
            size = Some(cur.number()?);
        } else if cur.eat("edges") {
            cur.expect(":")?;
            cur.expect("[")?;
            let mut list = Vec::new();
            if !cur.eat("]") {
                loop {
                    cur.expect("[")?;
                    let a = cur.number()?;
                    cur.expect(",")?;
                    let b = cur.number()?;
                    cur.expect("]")?;
                    list.push((a, b));
                    if cur.eat("]") {
                        break;
                    }
                    cur.expect(",")?;
                }
            }
            edges = Some(list);
        } else {
            return Err(cur.fail("expected `size` or `edges`"));
        }
        if cur.eat("}") {
            break;
        }
        cur.expect(",")?;
    }
    cur.finish()?;
    let size = size.ok_or_else(|| CodecError::Parse("frame is missing `size`".into()))?;
    let edges = edges.ok_or_else(|| CodecError::Parse("frame is missing `edges`".into()))?;
    FiniteFrame::new(size, edges, mode)
        .map_err(|e| CodecError::Parse(format!("frame rejected: {e}")))
}

pub fn format_frame(frame: &FiniteFrame) -> String {
    let mut out = format!("{{size: {}, edges: [", frame.size());
    for (i, (a, b)) in frame.edges().iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "[{a}, {b}]");
    }
    out.push_str("]}");
    out
}

/// Parse a signature given as comma-separated arities, e.g. `2,1` for a
/// binary `f0` and a unary `f1`. Empty input is the empty signature.
pub fn parse_signature(input: &str) -> Result<Signature> {
    let trimmed = input.trim();
    if trimmed.is_empty() {
        return Ok(Signature::empty());
    }
    let arities = trimmed
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| CodecError::Parse(format!("bad arity {part:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Signature::new(arities))
}
