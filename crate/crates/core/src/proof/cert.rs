//! Line-oriented text form of derivations.
//!
//! ```text
//! step 1 a.0 + b.0 = b.0 + a.0 by axiom S1 {E:=a.0, F:=b.0}
//! step 2 c.(a.0 + b.0) = c.(b.0 + a.0) by cong prefix 1 in c.◻
//! ```
//!
//! Steps are numbered from 1 and may only refer to earlier steps.

use std::fmt::Write as _;

use super::axiom::{AxiomId, Inst};
use super::step::{Derivation, Just, Position, Step};
use crate::error::Result;
use crate::syntax::{ParseError, Parser, Token};

fn just_text(j: &Just) -> String {
    match j {
        Just::Refl => "refl".into(),
        Just::Symm(a) => format!("symm {}", a + 1),
        Just::Trans(a, b) => format!("trans {} {}", a + 1, b + 1),
        Just::Axiom { id, inst, premise } => {
            let mut parts = Vec::new();
            for (k, v) in &inst.exprs {
                parts.push(format!("{k}:={v}"));
            }
            for (k, v) in &inst.names {
                parts.push(format!("{k}:={v}"));
            }
            if let Some(a) = &inst.action {
                parts.push(format!("a:={a}"));
            }
            let mut s = format!("axiom {id} {{{}}}", parts.join(", "));
            if let Some(p) = premise {
                let _ = write!(s, " premise {}", p + 1);
            }
            s
        }
        Just::Cong {
            pos,
            inner,
            context,
        } => format!("cong {pos} {} in {context}", inner + 1),
    }
}

/// Renders a derivation as certificate text.
pub fn to_text(d: &Derivation) -> String {
    let mut out = String::new();
    for (i, s) in d.steps.iter().enumerate() {
        let _ = writeln!(out, "step {} {} = {} by {}", i + 1, s.lhs, s.rhs, just_text(&s.just));
    }
    out
}

fn step_ref(p: &mut Parser) -> std::result::Result<usize, ParseError> {
    let n = p.number()?;
    if n == 0 {
        return Err(p.error("step numbers start at 1"));
    }
    Ok(n as usize - 1)
}

fn meta_key(k: &str) -> Option<&'static str> {
    ["E", "F", "G", "X", "Y", "a"].into_iter().find(|m| *m == k)
}

fn parse_inst(p: &mut Parser) -> std::result::Result<Inst, ParseError> {
    let mut inst = Inst::new();
    p.expect(&Token::LBrace)?;
    if p.peek() == Some(&Token::RBrace) {
        p.next_token();
        return Ok(inst);
    }
    loop {
        let key = p.ident()?;
        let key = meta_key(&key).ok_or_else(|| p.error(format!("unknown metavariable `{key}`")))?;
        p.expect(&Token::Assign)?;
        inst = match key {
            "X" | "Y" => inst.x(key, p.variable()?),
            "a" => inst.a(p.action()?),
            _ => inst.e(key, p.expr()?),
        };
        match p.next_token() {
            Some(Token::Comma) => continue,
            Some(Token::RBrace) => return Ok(inst),
            _ => return Err(p.error("expected `,` or `}`")),
        }
    }
}

fn parse_line(line: &str, index: usize) -> std::result::Result<Step, ParseError> {
    let mut p = Parser::new(line)?;
    if p.ident()? != "step" {
        return Err(p.error("expected `step`"));
    }
    let n = p.number()?;
    if n as usize != index + 1 {
        return Err(p.error(format!("expected step number {}", index + 1)));
    }
    let lhs = p.expr()?;
    p.expect(&Token::Eq)?;
    let rhs = p.expr()?;
    if p.ident()? != "by" {
        return Err(p.error("expected `by`"));
    }
    let kind = p.ident()?;
    let just = match kind.as_str() {
        "refl" => Just::Refl,
        "symm" => Just::Symm(step_ref(&mut p)?),
        "trans" => {
            let a = step_ref(&mut p)?;
            Just::Trans(a, step_ref(&mut p)?)
        }
        "axiom" => {
            let name = p.ident()?;
            let id: AxiomId = name.parse().map_err(|m: String| p.error(m))?;
            let inst = parse_inst(&mut p)?;
            let premise = if p.peek() == Some(&Token::Ident("premise".into())) {
                p.next_token();
                Some(step_ref(&mut p)?)
            } else {
                None
            };
            Just::Axiom { id, inst, premise }
        }
        "cong" => {
            let kw = p.ident()?;
            let pos = Position::from_keyword(&kw)
                .ok_or_else(|| p.error(format!("unknown position `{kw}`")))?;
            let inner = step_ref(&mut p)?;
            if p.ident()? != "in" {
                return Err(p.error("expected `in`"));
            }
            p.allow_hole(true);
            let context = p.expr()?;
            Just::Cong {
                pos,
                inner,
                context,
            }
        }
        other => return Err(p.error(format!("unknown justification `{other}`"))),
    };
    p.expect_end()?;
    Ok(Step { lhs, rhs, just })
}

/// Parses certificate text. Blank lines and `#` comment lines are skipped.
/// Parse errors report the offset within the offending line and its number.
pub fn parse(text: &str) -> Result<Derivation> {
    let mut steps = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let step = parse_line(t, steps.len()).map_err(|e| ParseError {
            offset: e.offset,
            message: format!("line {}: {}", lineno + 1, e.message),
        })?;
        steps.push(step);
    }
    Ok(Derivation { steps })
}
