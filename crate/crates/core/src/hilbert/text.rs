//! Line-oriented proof text.
//!
//! ```text
//! hyp: p
//! 1: p ; HYP 1
//! 2: p -> p | q ; AX1
//! 3: p | q ; MP 1 2
//! 4: p -> p | p ; SUB 2 q:=p
//! 5: ~p | (p | q) ; DEF 2 @. expand impl
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use thiserror::Error;

use super::{HilbertProof, Justification, ProofLine};
use crate::formula::{is_identifier, parse_infix, Formula, Path, SubstitutionMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("proof text line {line}: {msg}")]
pub struct ProofFormatError {
    pub line: usize,
    pub msg: String,
}

pub fn format_proof(proof: &HilbertProof) -> String {
    let mut out = String::new();
    for h in &proof.hypotheses {
        out.push_str(&format!("hyp: {h}\n"));
    }
    for (i, line) in proof.lines.iter().enumerate() {
        out.push_str(&format!("{}: {} ; {}\n", i + 1, line.formula, format_justification(&line.just)));
    }
    out
}

pub(crate) fn format_justification(j: &Justification) -> String {
    match j {
        Justification::Ax(k) => format!("AX{k}"),
        Justification::Hyp(i) => format!("HYP {i}"),
        Justification::Mp { minor, major } => format!("MP {minor} {major}"),
        Justification::Sub { src, map } => format!("SUB {src} {map}"),
        Justification::Def { src, path, dir, conn } => format!("DEF {src} @{path} {dir} {conn}"),
    }
}

pub fn parse_proof(text: &str) -> Result<HilbertProof, ProofFormatError> {
    let mut proof = HilbertProof::default();
    for (k, raw) in text.lines().enumerate() {
        let lineno = k + 1;
        let err = |msg: String| ProofFormatError { line: lineno, msg };
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        if let Some(h) = s.strip_prefix("hyp:") {
            if !proof.lines.is_empty() {
                return Err(err("hypotheses must precede proof lines".into()));
            }
            proof.hypotheses.push(parse_infix(h).map_err(|e| err(e.to_string()))?);
            continue;
        }
        let (formula, just) = parse_numbered(s, proof.lines.len() + 1).map_err(err)?;
        let just = parse_justification(just).map_err(err)?;
        proof.lines.push(ProofLine { formula, just });
    }
    Ok(proof)
}

/// Splits `<n>: <formula> ; <rest>`, checking that `n` is the expected index.
pub(crate) fn parse_numbered(s: &str, expected: usize) -> Result<(Formula, &str), String> {
    let (num, rest) = s.split_once(':').ok_or("expected `<n>: <formula> ; <justification>`")?;
    let n: usize = num.trim().parse().map_err(|_| format!("bad line number `{}`", num.trim()))?;
    if n != expected {
        return Err(format!("line numbers must be dense and ascending: expected {expected}, found {n}"));
    }
    let (formula, just) = rest.split_once(';').ok_or("missing `;` before the justification")?;
    let formula = parse_infix(formula).map_err(|e| e.to_string())?;
    Ok((formula, just.trim()))
}

pub(crate) fn parse_index(s: Option<&str>) -> Result<usize, String> {
    let s = s.ok_or("missing line reference")?;
    s.parse().map_err(|_| format!("bad line reference `{s}`"))
}

pub(crate) fn parse_path(s: Option<&str>) -> Result<Path, String> {
    let s = s.ok_or("missing path")?;
    let s = s.strip_prefix('@').ok_or_else(|| format!("path `{s}` must start with `@`"))?;
    s.parse().map_err(|e: crate::formula::PathError| e.to_string())
}

fn parse_justification(s: &str) -> Result<Justification, String> {
    let mut words = s.split_whitespace();
    let head = words.next().ok_or("missing justification")?;
    if let Some(k) = head.strip_prefix("AX") {
        if !k.is_empty() && words.next().is_none() {
            return k.parse().map(Justification::Ax).map_err(|_| format!("bad axiom number `{k}`"));
        }
    }
    match head {
        "HYP" => Ok(Justification::Hyp(parse_index(words.next())?)),
        "MP" => {
            let minor = parse_index(words.next())?;
            let major = parse_index(words.next())?;
            Ok(Justification::Mp { minor, major })
        }
        "SUB" => {
            let rest = s["SUB".len()..].trim_start();
            let (src, bindings) = rest.split_once(char::is_whitespace).ok_or("SUB needs a line and bindings")?;
            let src = parse_index(Some(src))?;
            Ok(Justification::Sub { src, map: parse_bindings(bindings)? })
        }
        "DEF" => {
            let src = parse_index(words.next())?;
            let path = parse_path(words.next())?;
            let dir = words.next().ok_or("missing direction")?.parse()?;
            let conn = words.next().ok_or("missing connective")?.parse()?;
            Ok(Justification::Def { src, path, dir, conn })
        }
        _ => Err(format!("unknown justification `{head}`")),
    }
}

/// Parses `v1:=f1, v2:=f2, ...`. Formulas may themselves contain commas.
pub(crate) fn parse_bindings(s: &str) -> Result<SubstitutionMap, String> {
    let marks: Vec<usize> = s.match_indices(":=").map(|(i, _)| i).collect();
    if marks.is_empty() {
        return Err("expected bindings `<var>:=<formula>`".into());
    }
    // key of binding k ends at marks[k]; find where it starts
    let mut keys = Vec::new();
    for &m in &marks {
        let before = s[..m].trim_end();
        let start = before.rfind(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).map_or(0, |i| i + 1);
        keys.push((start, before[start..].to_string()));
    }
    let mut map = SubstitutionMap::new();
    for (k, &m) in marks.iter().enumerate() {
        let (start, key) = &keys[k];
        if !is_identifier(key) {
            return Err(format!("bad substitution variable `{key}`"));
        }
        let lead = s[..*start].trim_end();
        if k == 0 && !lead.is_empty() {
            return Err(format!("unexpected `{lead}` before bindings"));
        }
        let end = match keys.get(k + 1) {
            Some((next, _)) => {
                let seg = s[..*next].trim_end();
                seg.strip_suffix(',').ok_or("bindings must be separated by commas")?.len()
            }
            None => s.len(),
        };
        let value = parse_infix(&s[m + 2..end]).map_err(|e| e.to_string())?;
        if map.0.insert(key.clone(), value).is_some() {
            return Err(format!("variable `{key}` bound twice"));
        }
    }
    Ok(map)
}
