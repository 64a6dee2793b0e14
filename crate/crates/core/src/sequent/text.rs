//! Line-oriented sequent proof text.
//!
//! ```text
//! 1: p => p ; ID
//! 2: => p -> p ; IMPI 1
//! ```

use super::{NdJustification, NdLine, NdProof, Sequent, Side};
use crate::formula::{parse_infix, Formula};
use crate::hilbert::ProofFormatError;
use crate::hilbert::{parse_index, parse_path};

pub fn format_nd_proof(proof: &NdProof) -> String {
    let mut out = String::new();
    for (i, line) in proof.lines.iter().enumerate() {
        out.push_str(&format!("{}: {} ; {}\n", i + 1, line.sequent, format_rule(&line.just)));
    }
    out
}

fn format_rule(j: &NdJustification) -> String {
    match j {
        NdJustification::Id => "ID".into(),
        NdJustification::ThinL { src, added } => format!("THINL {src} {added}"),
        NdJustification::ThinR { src, added } => format!("THINR {src} {added}"),
        NdJustification::ImpI { src } => format!("IMPI {src}"),
        NdJustification::ImpE { minor, major } => format!("IMPE {minor} {major}"),
        NdJustification::Raa { left, right } => format!("RAA {left} {right}"),
        NdJustification::Def { src, side, path, dir, conn } => format!("DEF {src} {side}@{path} {dir} {conn}"),
    }
}

/// Splits at commas outside parentheses.
fn split_top(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

pub fn parse_sequent(s: &str) -> Result<Sequent, String> {
    let (ant, suc) = s.split_once("=>").ok_or("sequent needs `=>`")?;
    let antecedent = if ant.trim().is_empty() {
        Vec::new()
    } else {
        split_top(ant).into_iter().map(|a| parse_infix(a).map_err(|e| e.to_string())).collect::<Result<_, _>>()?
    };
    let succedent = parse_infix(suc).map_err(|e| e.to_string())?;
    Ok(Sequent { antecedent, succedent })
}

pub fn parse_nd_proof(text: &str) -> Result<NdProof, ProofFormatError> {
    let mut proof = NdProof::default();
    for (k, raw) in text.lines().enumerate() {
        let err = |msg: String| ProofFormatError { line: k + 1, msg };
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let (num, rest) = s.split_once(':').ok_or_else(|| err("expected `<n>: <sequent> ; <rule>`".into()))?;
        let n: usize = num.trim().parse().map_err(|_| err(format!("bad line number `{}`", num.trim())))?;
        if n != proof.lines.len() + 1 {
            return Err(err(format!(
                "line numbers must be dense and ascending: expected {}, found {n}",
                proof.lines.len() + 1
            )));
        }
        let (seq, rule) = rest.split_once(';').ok_or_else(|| err("missing `;` before the rule".into()))?;
        let sequent = parse_sequent(seq).map_err(err)?;
        let just = parse_rule(rule.trim()).map_err(err)?;
        proof.lines.push(NdLine { sequent, just });
    }
    Ok(proof)
}

fn parse_rule(s: &str) -> Result<NdJustification, String> {
    let (head, rest) = s.split_once(char::is_whitespace).unwrap_or((s, ""));
    let rest = rest.trim();
    let mut words = rest.split_whitespace();
    let added = |rest: &str| -> Result<(usize, Formula), String> {
        let (src, f) = rest.split_once(char::is_whitespace).ok_or("thinning needs a line and a formula")?;
        Ok((parse_index(Some(src))?, parse_infix(f).map_err(|e| e.to_string())?))
    };
    let done = |words: &mut std::str::SplitWhitespace| match words.next() {
        Some(w) => Err(format!("unexpected `{w}`")),
        None => Ok(()),
    };
    let just = match head {
        "ID" => NdJustification::Id,
        "THINL" => {
            let (src, added) = added(rest)?;
            return Ok(NdJustification::ThinL { src, added });
        }
        "THINR" => {
            let (src, added) = added(rest)?;
            return Ok(NdJustification::ThinR { src, added });
        }
        "IMPI" => NdJustification::ImpI { src: parse_index(words.next())? },
        "IMPE" => NdJustification::ImpE { minor: parse_index(words.next())?, major: parse_index(words.next())? },
        "RAA" => NdJustification::Raa { left: parse_index(words.next())?, right: parse_index(words.next())? },
        "DEF" => {
            let src = parse_index(words.next())?;
            let loc = words.next().ok_or("missing `<side>@<path>`")?;
            let at = loc.find('@').ok_or_else(|| format!("`{loc}` must be `<side>@<path>`"))?;
            let side = match &loc[..at] {
                "suc" => Side::Suc,
                a => Side::Ant(
                    a.strip_prefix("ant")
                        .and_then(|k| k.parse().ok())
                        .ok_or_else(|| format!("bad side `{a}`: expected `ant<k>` or `suc`"))?,
                ),
            };
            let path = parse_path(Some(&loc[at..]))?;
            let dir = words.next().ok_or("missing direction")?.parse()?;
            let conn = words.next().ok_or("missing connective")?.parse()?;
            NdJustification::Def { src, side, path, dir, conn }
        }
        _ => return Err(format!("unknown rule `{head}`")),
    };
    done(&mut words)?;
    Ok(just)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "1: p => p ; ID\n2: q, p => p ; THINL 1 q\n3: q, p, P(x,y) => p ; THINR 2 P(x,y)\n\
                    4: q, p => P(x,y) -> p ; IMPI 3\n5: q => p | r ; DEF 4 ant2@0.1 fold or\n6: => p ; RAA 1 2\n";
        let proof = parse_nd_proof(text).unwrap();
        assert_eq!(proof.lines[2].sequent.antecedent.len(), 3);
        assert_eq!(format_nd_proof(&proof), text);
    }

    #[test]
    fn errors() {
        assert!(parse_nd_proof("1: p ; ID").is_err());
        assert!(parse_nd_proof("1: p => p ; ID 3").is_err());
        assert!(parse_nd_proof("1: p => p ; DEF 1 left@. fold or").is_err());
        assert!(parse_nd_proof("1: p => p ; THINL 1").is_err());
        assert_eq!(parse_nd_proof("\n\n3: p => p ; ID").unwrap_err().line, 3);
    }
}
