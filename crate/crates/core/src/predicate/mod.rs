//! First-order logic: a proof kernel with one quantifier axiom and a
//! generalization rule, finite-structure semantics with a monadic decision
//! procedure, and the classical quantifier transformations.
//!
//! Kernel rules:
//!
//! ```text
//! AXP<k> m        instance of propositional axiom k under substitution m
//! AXQ x y φ       (x)φ -> φ[x:=y], y free for x in φ
//! MP i j          as in the propositional kernel
//! GEN i x         from ψ -> φ infer ψ -> (x)φ, x not free in ψ
//! DEF i @path d c definition steps, including (Ex)φ := ~(x)~φ
//! ```

mod semantics;
mod transform;

use std::collections::HashMap;
use std::fmt;

use crate::formula::{parse_infix, Basis, Defined, Direction, Formula, Path, SubstitutionMap};
use crate::hilbert::{
    axioms, parse_bindings, parse_index, parse_numbered, parse_path, HilbertProof, Justification, ProofFormatError,
    Rejection,
};

pub use semantics::{
    eval_fo, monadic_decide, valid_in_domains, FoError, Interpretation, MonadicVerdict, SearchVerdict,
    MONADIC_PREDICATE_CAP, SEARCH_BIT_CAP,
};
pub use transform::{transform, PassageLaw, TransformError, TransformStep};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FoJustification {
    AxP { k: usize, inst: SubstitutionMap },
    AxQ { x: String, body: Formula, y: String },
    Mp { minor: usize, major: usize },
    Gen { src: usize, x: String },
    Def { src: usize, path: Path, dir: Direction, conn: Defined },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoLine {
    pub formula: Formula,
    pub just: FoJustification,
}

/// A hypothesis-free first-order derivation; the last line is its theorem.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FoProof {
    pub lines: Vec<FoLine>,
}

impl FoProof {
    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }
}

/// The formula a rule yields from earlier lines, or why it does not apply.
pub fn fo_conclusion(just: &FoJustification, earlier: impl Fn(usize) -> Option<Formula>) -> Result<Formula, String> {
    let get = |j: usize| earlier(j).ok_or_else(|| format!("reference to line {j} is not to an earlier line"));
    match just {
        FoJustification::AxP { k, inst } => {
            let ax = k.checked_sub(1).and_then(|i| axioms().into_iter().nth(i));
            let ax = ax.ok_or_else(|| format!("there is no axiom {k}"))?;
            ax.substitute(inst).map_err(|e| e.to_string())
        }
        FoJustification::AxQ { x, body, y } => {
            let inst = body.rename_free(x, y).map_err(|binder| {
                format!("proviso violated: {y} not free for {x} (captured by quantifier {binder})")
            })?;
            Ok(Formula::implies(Formula::forall(x.clone(), body.clone()), inst))
        }
        FoJustification::Mp { minor, major } => {
            let a = get(*minor)?;
            match get(*major)? {
                Formula::Impl(ante, cons) if *ante == a => Ok(*cons),
                _ => Err("major premise shape".into()),
            }
        }
        FoJustification::Gen { src, x } => match get(*src)? {
            Formula::Impl(psi, phi) => {
                if psi.has_free(x) {
                    return Err(format!("proviso violated: {x} free in antecedent"));
                }
                Ok(Formula::implies(*psi, Formula::forall(x.clone(), *phi)))
            }
            _ => Err("generalization needs an implication".into()),
        },
        FoJustification::Def { src, path, dir, conn } => {
            if *conn == Defined::Or {
                return Err("`or` is primitive".into());
            }
            Basis::OrNot.rewrite(&get(*src)?, path, *conn, *dir).map_err(|e| format!("definition: {e}"))
        }
    }
}

pub fn check_fo_proof(proof: &FoProof) -> Result<(), Rejection> {
    for (idx, line) in proof.lines.iter().enumerate() {
        let n = idx + 1;
        let expected = fo_conclusion(&line.just, |j| (j >= 1 && j < n).then(|| proof.lines[j - 1].formula.clone()))
            .map_err(|reason| Rejection { line: n, reason })?;
        if expected != line.formula {
            return Err(Rejection { line: n, reason: format!("rule yields `{expected}`") });
        }
    }
    Ok(())
}

/// Builds first-order proofs, reusing lines with equal formulas.
#[derive(Default)]
pub struct FoBuilder {
    lines: Vec<FoLine>,
    memo: HashMap<Formula, usize>,
}

impl FoBuilder {
    pub fn new() -> Self {
        FoBuilder::default()
    }

    pub fn formula(&self, line: usize) -> &Formula {
        &self.lines[line - 1].formula
    }

    /// # Panics
    /// If the rule does not apply.
    pub fn apply(&mut self, just: FoJustification) -> usize {
        let formula = fo_conclusion(&just, |j| self.lines.get(j.wrapping_sub(1)).map(|l| l.formula.clone()))
            .unwrap_or_else(|e| panic!("first-order rule: {e}"));
        if let Some(&i) = self.memo.get(&formula) {
            return i;
        }
        self.lines.push(FoLine { formula: formula.clone(), just });
        self.memo.insert(formula, self.lines.len());
        self.lines.len()
    }

    pub fn axq(&mut self, x: &str, body: &Formula, y: &str) -> usize {
        self.apply(FoJustification::AxQ { x: x.into(), body: body.clone(), y: y.into() })
    }

    pub fn mp(&mut self, minor: usize, major: usize) -> usize {
        self.apply(FoJustification::Mp { minor, major })
    }

    pub fn gen(&mut self, src: usize, x: &str) -> usize {
        self.apply(FoJustification::Gen { src, x: x.into() })
    }

    pub fn def(&mut self, src: usize, path: Path, dir: Direction, conn: Defined) -> usize {
        self.apply(FoJustification::Def { src, path, dir, conn })
    }

    /// Replays a hypothesis-free propositional proof with `outer` applied
    /// to every line. Substitution steps are pushed back onto the axioms.
    /// Returns the line of the instantiated conclusion.
    ///
    /// # Panics
    /// If the proof uses hypotheses or is invalid.
    pub fn splice_propositional(&mut self, proof: &HilbertProof, outer: &SubstitutionMap) -> usize {
        let mut memo = HashMap::new();
        self.instance(proof, proof.lines.len(), normalize(outer), &mut memo)
    }

    fn instance(
        &mut self,
        proof: &HilbertProof,
        line: usize,
        map: SubstitutionMap,
        memo: &mut HashMap<(usize, SubstitutionMap), usize>,
    ) -> usize {
        if let Some(&i) = memo.get(&(line, map.clone())) {
            return i;
        }
        let out = match &proof.lines[line - 1].just {
            Justification::Ax(k) => {
                let vars = proof.lines[line - 1].formula.prop_vars();
                let inst = map.iter().filter(|(v, _)| vars.contains(*v)).map(|(v, f)| (v.clone(), f.clone())).collect();
                self.apply(FoJustification::AxP { k: *k, inst })
            }
            Justification::Hyp(_) => panic!("first-order proofs have no hypotheses"),
            Justification::Sub { src, map: inner } => {
                let composed = normalize(&inner.then(&map));
                self.instance(proof, *src, composed, memo)
            }
            Justification::Mp { minor, major } => {
                let a = self.instance(proof, *minor, map.clone(), memo);
                let b = self.instance(proof, *major, map.clone(), memo);
                self.mp(a, b)
            }
            Justification::Def { src, path, dir, conn } => {
                let a = self.instance(proof, *src, map.clone(), memo);
                self.def(a, path.clone(), *dir, *conn)
            }
        };
        memo.insert((line, map), out);
        out
    }

    /// From `A -> B` and `B -> C`, `A -> C`.
    pub fn syll(&mut self, ab: usize, bc: usize) -> usize {
        let (a, b) = self.formula(ab).as_impl().map(|(a, b)| (a.clone(), b.clone())).expect("implication");
        let c = self.formula(bc).as_impl().map(|(_, c)| c.clone()).expect("implication");
        let schema = schematic(crate::hilbert::Theorem::Syll);
        let map = SubstitutionMap::new().with("p", a).with("q", b).with("r", c);
        let t = self.splice_propositional(&schema, &map);
        let t = self.mp(bc, t);
        self.mp(ab, t)
    }

    /// Instance of a schematic theorem from the propositional library.
    pub fn lemma(&mut self, th: crate::hilbert::Theorem, map: &SubstitutionMap) -> usize {
        self.splice_propositional(&schematic(th), map)
    }

    /// The instance of a propositional tautology, proved in the kernel.
    ///
    /// # Panics
    /// If `schema` is not a tautology.
    pub fn tautology(&mut self, schema: &Formula, map: &SubstitutionMap) -> usize {
        let proof = crate::kalmar::prove_tautology(schema).expect("a tautology");
        self.splice_propositional(&proof, map)
    }

    pub fn finish(mut self, goal: usize) -> FoProof {
        if goal != self.lines.len() {
            let line = self.lines[goal - 1].clone();
            self.lines.push(line);
        }
        FoProof { lines: self.lines }
    }
}

fn schematic(th: crate::hilbert::Theorem) -> HilbertProof {
    let mut b = crate::hilbert::Builder::new(vec![]);
    let goal = b.lemma(th, &[]);
    b.finish(goal)
}

fn normalize(m: &SubstitutionMap) -> SubstitutionMap {
    m.iter().filter(|(k, f)| **f != Formula::var(k.as_str())).map(|(k, f)| (k.clone(), f.clone())).collect()
}

pub fn format_fo_proof(proof: &FoProof) -> String {
    let mut out = String::new();
    for (i, line) in proof.lines.iter().enumerate() {
        let just = match &line.just {
            FoJustification::AxP { k, inst } if inst.is_empty() => format!("AXP{k}"),
            FoJustification::AxP { k, inst } => format!("AXP{k} {inst}"),
            FoJustification::AxQ { x, body, y } => format!("AXQ {x} {y} {body}"),
            FoJustification::Mp { minor, major } => format!("MP {minor} {major}"),
            FoJustification::Gen { src, x } => format!("GEN {src} {x}"),
            FoJustification::Def { src, path, dir, conn } => format!("DEF {src} @{path} {dir} {conn}"),
        };
        out.push_str(&format!("{}: {} ; {}\n", i + 1, line.formula, just));
    }
    out
}

impl fmt::Display for FoProof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_fo_proof(self))
    }
}

pub fn parse_fo_proof(text: &str) -> Result<FoProof, ProofFormatError> {
    let mut proof = FoProof::default();
    for (k, raw) in text.lines().enumerate() {
        let err = |msg: String| ProofFormatError { line: k + 1, msg };
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let (formula, just) = parse_numbered(s, proof.lines.len() + 1).map_err(err)?;
        let just = parse_fo_justification(just).map_err(err)?;
        proof.lines.push(FoLine { formula, just });
    }
    Ok(proof)
}

fn parse_fo_justification(s: &str) -> Result<FoJustification, String> {
    let (head, rest) = s.split_once(char::is_whitespace).unwrap_or((s, ""));
    let rest = rest.trim();
    let mut words = rest.split_whitespace();
    let done = |mut w: std::str::SplitWhitespace| match w.next() {
        Some(x) => Err(format!("unexpected `{x}`")),
        None => Ok(()),
    };
    if let Some(k) = head.strip_prefix("AXP") {
        let k = k.parse().map_err(|_| format!("bad axiom number `{k}`"))?;
        let inst = if rest.is_empty() { SubstitutionMap::new() } else { parse_bindings(rest)? };
        return Ok(FoJustification::AxP { k, inst });
    }
    let just = match head {
        "AXQ" => {
            let x = words.next().ok_or("AXQ needs a variable, a term and a body")?;
            let y = words.next().ok_or("AXQ needs a variable, a term and a body")?;
            let body_text = rest[x.len()..].trim_start()[y.len()..].trim();
            let body = parse_infix(body_text).map_err(|e| e.to_string())?;
            return Ok(FoJustification::AxQ { x: x.into(), body, y: y.into() });
        }
        "MP" => FoJustification::Mp { minor: parse_index(words.next())?, major: parse_index(words.next())? },
        "GEN" => FoJustification::Gen {
            src: parse_index(words.next())?,
            x: words.next().ok_or("GEN needs a variable")?.to_string(),
        },
        "DEF" => FoJustification::Def {
            src: parse_index(words.next())?,
            path: parse_path(words.next())?,
            dir: words.next().ok_or("missing direction")?.parse()?,
            conn: words.next().ok_or("missing connective")?.parse()?,
        },
        _ => return Err(format!("unknown justification `{head}`")),
    };
    done(words)?;
    Ok(just)
}
