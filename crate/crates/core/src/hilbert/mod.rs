//! Hilbert-style proof kernel for propositional logic with `~` and `|`
//! primitive.
//!
//! Axioms (literal formulas, instantiated only through the substitution rule):
//!
//! ```text
//! 1. p -> p | q
//! 2. p | p -> p
//! 3. p | q -> q | p
//! 4. (p -> q) -> (r | p -> r | q)
//! ```
//!
//! Rules: modus ponens on the literal `->` node, simultaneous substitution
//! (only on lines that depend on no hypothesis), and replacement of a
//! defined connective by its definiens or back at an explicit position.

mod builder;
mod deduction;
mod lemmas;
mod text;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::formula::{Basis, Defined, Direction, Formula, Path, SubstitutionMap};

pub use builder::{bind, Builder, Theorem};
pub use deduction::{deduction_theorem, deduction_theorem_in, DeductionError};
pub use lemmas::{lemma_library, Lemma};
pub use text::{format_proof, parse_proof, ProofFormatError};
pub(crate) use text::{parse_bindings, parse_index, parse_numbered, parse_path};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Justification {
    /// Axiom `k`, 1-based.
    Ax(usize),
    /// Hypothesis `i`, 1-based.
    Hyp(usize),
    Mp {
        minor: usize,
        major: usize,
    },
    Sub {
        src: usize,
        map: SubstitutionMap,
    },
    Def {
        src: usize,
        path: Path,
        dir: Direction,
        conn: Defined,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofLine {
    pub formula: Formula,
    pub just: Justification,
}

/// Numbered derivation lines (1-based) under a list of hypotheses.
/// The last line is the proof's conclusion.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HilbertProof {
    pub hypotheses: Vec<Formula>,
    pub lines: Vec<ProofLine>,
}

impl HilbertProof {
    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    fn formula(&self, line: usize) -> &Formula {
        &self.lines[line - 1].formula
    }
}

/// Why a proof was rejected: the first failing line and a reason.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {reason}")]
pub struct Rejection {
    pub line: usize,
    pub reason: String,
}

pub fn axioms() -> Vec<Formula> {
    ["p -> p | q", "p | p -> p", "p | q -> q | p", "(p -> q) -> (r | p -> r | q)"]
        .iter()
        .map(|s| s.parse().expect("axiom text parses"))
        .collect()
}

/// A checker configured with an axiom table. The propositional kernel has
/// the four axioms above; the syllogistic systems append their own and
/// also allow renaming of term variables under substitution.
#[derive(Clone, Debug)]
pub struct Kernel {
    axioms: Vec<Formula>,
    term_substitution: bool,
}

impl Default for Kernel {
    fn default() -> Self {
        Kernel::propositional()
    }
}

impl Kernel {
    pub fn propositional() -> Self {
        Kernel { axioms: axioms(), term_substitution: false }
    }

    /// The propositional axioms followed by `extra` (numbered from 5), with
    /// term-variable renaming enabled.
    pub fn with_term_axioms(extra: Vec<Formula>) -> Self {
        let mut axioms = axioms();
        axioms.extend(extra);
        Kernel { axioms, term_substitution: true }
    }

    pub fn axioms(&self) -> &[Formula] {
        &self.axioms
    }

    pub fn axiom(&self, k: usize) -> Option<&Formula> {
        k.checked_sub(1).and_then(|i| self.axioms.get(i))
    }

    pub fn check(&self, proof: &HilbertProof) -> Result<(), Rejection> {
        self.dependencies(proof).map(|_| ())
    }

    /// Checks the proof and returns, per line, whether it depends on a hypothesis.
    pub fn dependencies(&self, proof: &HilbertProof) -> Result<Vec<bool>, Rejection> {
        let mut dep = Vec::with_capacity(proof.lines.len());
        for (idx, line) in proof.lines.iter().enumerate() {
            let n = idx + 1;
            let fail = |reason: String| Rejection { line: n, reason };
            if !self.admissible(&line.formula) {
                return Err(fail(format!("`{}` is outside the language of this kernel", line.formula)));
            }
            let earlier = |j: usize| -> Result<&Formula, Rejection> {
                if j == 0 || j >= n {
                    Err(fail(format!("reference to line {j} is not to an earlier line")))
                } else {
                    Ok(proof.formula(j))
                }
            };
            let d = match &line.just {
                Justification::Ax(k) => {
                    let ax = self.axiom(*k).ok_or_else(|| fail(format!("there is no axiom {k}")))?;
                    if *ax != line.formula {
                        return Err(fail(format!("formula is not axiom {k}")));
                    }
                    false
                }
                Justification::Hyp(i) => {
                    let h = i
                        .checked_sub(1)
                        .and_then(|i| proof.hypotheses.get(i))
                        .ok_or_else(|| fail(format!("there is no hypothesis {i}")))?;
                    if *h != line.formula {
                        return Err(fail(format!("formula is not hypothesis {i}")));
                    }
                    true
                }
                Justification::Mp { minor, major } => {
                    let a = earlier(*minor)?;
                    let b = earlier(*major)?;
                    match b {
                        Formula::Impl(ante, cons) if **ante == *a => {
                            if **cons != line.formula {
                                return Err(fail("conclusion is not the consequent of the major premise".into()));
                            }
                        }
                        _ => return Err(fail("major premise shape".into())),
                    }
                    dep[minor - 1] || dep[major - 1]
                }
                Justification::Sub { src, map } => {
                    let a = earlier(*src)?;
                    if dep[src - 1] {
                        return Err(fail(format!("substitution into line {src}, which depends on a hypothesis")));
                    }
                    let result = self.apply_substitution(a, map).map_err(fail)?;
                    if result != line.formula {
                        return Err(fail("formula is not the result of the substitution".into()));
                    }
                    false
                }
                Justification::Def { src, path, dir, conn } => {
                    let a = earlier(*src)?;
                    if *conn == Defined::Exists || *conn == Defined::Or {
                        return Err(fail(format!("`{conn}` is not a defined connective here")));
                    }
                    let result =
                        Basis::OrNot.rewrite(a, path, *conn, *dir).map_err(|e| fail(format!("definition: {e}")))?;
                    if result != line.formula {
                        return Err(fail("formula is not the result of the rewrite".into()));
                    }
                    dep[src - 1]
                }
            };
            dep.push(d);
        }
        Ok(dep)
    }

    fn admissible(&self, f: &Formula) -> bool {
        let mut ok = true;
        f.walk(&mut |g| match g {
            Formula::Forall(..) | Formula::Exists(..) => ok = false,
            Formula::Atom(..) if !self.term_substitution => ok = false,
            _ => {}
        });
        ok
    }

    /// Applies a substitution line's bindings. With term substitution
    /// enabled, a binding `x:=y` whose key occurs as a term variable of
    /// `f` renames that term variable.
    pub fn apply_substitution(&self, f: &Formula, map: &SubstitutionMap) -> Result<Formula, String> {
        if !self.term_substitution {
            return f.substitute(map).map_err(|e| e.to_string());
        }
        let terms = f.free_individual_vars();
        let mut props = SubstitutionMap::new();
        let mut renames = BTreeMap::new();
        for (k, v) in map.iter() {
            if terms.contains(k) {
                match v {
                    Formula::Var(y) => {
                        renames.insert(k.clone(), y.clone());
                    }
                    _ => return Err(format!("term variable `{k}` can only be replaced by a term variable")),
                }
            } else {
                props.0.insert(k.clone(), v.clone());
            }
        }
        Ok(rename_terms(f, &renames, &props))
    }
}

fn rename_terms(f: &Formula, renames: &BTreeMap<String, String>, props: &SubstitutionMap) -> Formula {
    let rec = |g: &Formula| rename_terms(g, renames, props);
    match f {
        Formula::Var(v) => props.get(v).cloned().unwrap_or_else(|| f.clone()),
        Formula::Atom(p, args) => Formula::Atom(
            p.clone(),
            args.iter().map(|a| renames.get(a).cloned().unwrap_or_else(|| a.clone())).collect(),
        ),
        Formula::Not(a) => Formula::not(rec(a)),
        Formula::And(l, r) => Formula::and(rec(l), rec(r)),
        Formula::Or(l, r) => Formula::or(rec(l), rec(r)),
        Formula::Impl(l, r) => Formula::implies(rec(l), rec(r)),
        Formula::Equiv(l, r) => Formula::equiv(rec(l), rec(r)),
        Formula::Forall(..) | Formula::Exists(..) => f.clone(),
    }
}

/// Checks a proof against the four propositional axioms.
pub fn check_proof(proof: &HilbertProof) -> Result<(), Rejection> {
    Kernel::propositional().check(proof)
}

impl fmt::Display for HilbertProof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_proof(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::truth::is_tautology;

    fn p(s: &str) -> Formula {
        s.parse().unwrap()
    }

    fn line(f: &str, just: Justification) -> ProofLine {
        ProofLine { formula: p(f), just }
    }

    #[test]
    fn axioms_are_tautologies() {
        for ax in axioms() {
            assert!(is_tautology(&ax).unwrap().is_tautology(), "{ax}");
        }
    }

    #[test]
    fn substitution_step() {
        let proof = HilbertProof {
            hypotheses: vec![],
            lines: vec![
                line("p -> (p|q)", Justification::Ax(1)),
                line("p -> (p|p)", Justification::Sub { src: 1, map: SubstitutionMap::new().with("q", p("p")) }),
            ],
        };
        assert_eq!(check_proof(&proof), Ok(()));
    }

    #[test]
    fn definition_step_at_root() {
        let proof = HilbertProof {
            hypotheses: vec![],
            lines: vec![
                line("p -> (p|q)", Justification::Ax(1)),
                line(
                    "~p | (p|q)",
                    Justification::Def { src: 1, path: Path::root(), dir: Direction::Expand, conn: Defined::Impl },
                ),
            ],
        };
        assert_eq!(check_proof(&proof), Ok(()));
    }

    #[test]
    fn bad_major_premise() {
        let proof = HilbertProof {
            hypotheses: vec![],
            lines: vec![line("(p|p) -> p", Justification::Ax(2)), line("q", Justification::Mp { minor: 1, major: 1 })],
        };
        assert_eq!(check_proof(&proof), Err(Rejection { line: 2, reason: "major premise shape".into() }));
    }

    #[test]
    fn substitution_on_hypothesis_is_rejected() {
        let proof = HilbertProof {
            hypotheses: vec![p("p")],
            lines: vec![
                line("p", Justification::Hyp(1)),
                line("q", Justification::Sub { src: 1, map: SubstitutionMap::new().with("p", p("q")) }),
            ],
        };
        let err = check_proof(&proof).unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.reason.contains("depends on a hypothesis"));
    }

    #[test]
    fn forward_reference_and_wrong_axiom() {
        let proof =
            HilbertProof { hypotheses: vec![], lines: vec![line("p", Justification::Mp { minor: 1, major: 2 })] };
        assert_eq!(check_proof(&proof).unwrap_err().line, 1);
        let proof = HilbertProof { hypotheses: vec![], lines: vec![line("p | p -> p", Justification::Ax(1))] };
        assert_eq!(check_proof(&proof).unwrap_err().reason, "formula is not axiom 1");
        let proof = HilbertProof { hypotheses: vec![], lines: vec![line("p", Justification::Ax(5))] };
        assert_eq!(check_proof(&proof).unwrap_err().reason, "there is no axiom 5");
    }

    #[test]
    fn modus_ponens_with_hypotheses() {
        let proof = HilbertProof {
            hypotheses: vec![p("p"), p("p -> q")],
            lines: vec![
                line("p", Justification::Hyp(1)),
                line("p -> q", Justification::Hyp(2)),
                line("q", Justification::Mp { minor: 1, major: 2 }),
            ],
        };
        assert_eq!(Kernel::propositional().dependencies(&proof), Ok(vec![true, true, true]));
    }

    #[test]
    fn term_renaming_in_extended_kernel() {
        let kernel = Kernel::with_term_axioms(vec![p("a(alpha,alpha)")]);
        let proof = HilbertProof {
            hypotheses: vec![],
            lines: vec![
                line("a(alpha,alpha)", Justification::Ax(5)),
                line(
                    "a(beta,beta)",
                    Justification::Sub { src: 1, map: SubstitutionMap::new().with("alpha", p("beta")) },
                ),
            ],
        };
        assert_eq!(kernel.check(&proof), Ok(()));
        assert!(check_proof(&proof).is_err());
    }
}
