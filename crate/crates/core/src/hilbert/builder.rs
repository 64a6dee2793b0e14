//! Incremental construction of kernel proofs.
//!
//! The builder deduplicates lines by formula, so a derived rule asked for
//! something already on the sheet costs nothing. Schematic theorems are
//! proved once per proof over the letters `p`, `q`, `r` and then
//! instantiated with a single substitution line.

use std::collections::HashMap;

use super::{deduction_theorem, HilbertProof, Justification, Kernel, ProofLine};
use crate::formula::{Defined, Direction, Formula, Path, SubstitutionMap};

/// Schematic theorems of the propositional system, over `p`, `q`, `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// `p -> p | q`, the first axiom
    OrIntroLeft,
    /// `p -> p`
    Id,
    /// `q -> p | q`
    AddRight,
    /// `q -> (p -> q)`
    K,
    /// `(q -> r) -> ((p -> q) -> (p -> r))`
    Syll,
    /// `p | ~p`
    ExcludedMiddle,
    /// `p -> ~~p`
    DoubleNegIntro,
    /// `~~p -> p`
    DoubleNegElim,
    /// `p | (q | r) -> q | (p | r)`
    Assoc,
    /// `(p -> (q -> r)) -> (q -> (p -> r))`
    Comm,
    /// `(p -> (p -> q)) -> (p -> q)`
    Contraction,
    /// `(p -> (q -> r)) -> ((p -> q) -> (p -> r))`
    Frege,
    /// `~p -> (~q -> ~(p | q))`
    OrNeg,
    /// `(p -> r) -> ((~p -> r) -> r)`
    CaseMerge,
}

impl Theorem {
    pub const ALL: [Theorem; 14] = [
        Theorem::OrIntroLeft,
        Theorem::Id,
        Theorem::AddRight,
        Theorem::K,
        Theorem::Syll,
        Theorem::ExcludedMiddle,
        Theorem::DoubleNegIntro,
        Theorem::DoubleNegElim,
        Theorem::Assoc,
        Theorem::Comm,
        Theorem::Contraction,
        Theorem::Frege,
        Theorem::OrNeg,
        Theorem::CaseMerge,
    ];

    pub fn schema(self) -> Formula {
        let text = match self {
            Theorem::OrIntroLeft => "p -> p | q",
            Theorem::Id => "p -> p",
            Theorem::AddRight => "q -> p | q",
            Theorem::K => "q -> (p -> q)",
            Theorem::Syll => "(q -> r) -> ((p -> q) -> (p -> r))",
            Theorem::ExcludedMiddle => "p | ~p",
            Theorem::DoubleNegIntro => "p -> ~~p",
            Theorem::DoubleNegElim => "~~p -> p",
            Theorem::Assoc => "p | (q | r) -> q | (p | r)",
            Theorem::Comm => "(p -> (q -> r)) -> (q -> (p -> r))",
            Theorem::Contraction => "(p -> (p -> q)) -> (p -> q)",
            Theorem::Frege => "(p -> (q -> r)) -> ((p -> q) -> (p -> r))",
            Theorem::OrNeg => "~p -> (~q -> ~(p | q))",
            Theorem::CaseMerge => "(p -> r) -> ((~p -> r) -> r)",
        };
        text.parse().expect("schema text parses")
    }
}

fn v(name: &str) -> Formula {
    Formula::var(name)
}

fn neg(f: &Formula) -> Formula {
    Formula::not(f.clone())
}

fn or(a: &Formula, b: &Formula) -> Formula {
    Formula::or(a.clone(), b.clone())
}

fn imp(a: &Formula, b: &Formula) -> Formula {
    Formula::implies(a.clone(), b.clone())
}

/// Substitution map from `(letter, formula)` pairs.
pub fn bind(pairs: &[(&str, &Formula)]) -> SubstitutionMap {
    pairs.iter().map(|(k, f)| (k.to_string(), (*f).clone())).collect()
}

pub struct Builder {
    kernel: Kernel,
    hyps: Vec<Formula>,
    lines: Vec<ProofLine>,
    dep: Vec<bool>,
    free: HashMap<Formula, usize>,
    any: HashMap<Formula, usize>,
}

impl Builder {
    pub fn new(hyps: Vec<Formula>) -> Self {
        Builder::with_kernel(Kernel::propositional(), hyps)
    }

    pub fn with_kernel(kernel: Kernel, hyps: Vec<Formula>) -> Self {
        Builder { kernel, hyps, lines: Vec::new(), dep: Vec::new(), free: HashMap::new(), any: HashMap::new() }
    }

    pub fn hypotheses(&self) -> &[Formula] {
        &self.hyps
    }

    pub fn formula(&self, line: usize) -> &Formula {
        &self.lines[line - 1].formula
    }

    pub fn depends(&self, line: usize) -> bool {
        self.dep[line - 1]
    }

    pub fn find(&self, f: &Formula) -> Option<usize> {
        self.any.get(f).copied()
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    fn push(&mut self, formula: Formula, just: Justification, dep: bool) -> usize {
        let existing = if dep { self.any.get(&formula) } else { self.free.get(&formula) };
        if let Some(&i) = existing {
            return i;
        }
        self.push_raw(formula, just, dep)
    }

    fn push_raw(&mut self, formula: Formula, just: Justification, dep: bool) -> usize {
        self.lines.push(ProofLine { formula: formula.clone(), just });
        self.dep.push(dep);
        let n = self.lines.len();
        if !dep {
            self.free.entry(formula.clone()).or_insert(n);
        }
        self.any.entry(formula).or_insert(n);
        n
    }

    /// Hypothesis `i` (1-based).
    pub fn hyp(&mut self, i: usize) -> usize {
        let f = self.hyps[i - 1].clone();
        self.push(f, Justification::Hyp(i), true)
    }

    pub fn axiom(&mut self, k: usize) -> usize {
        let f = self.kernel.axiom(k).expect("axiom exists").clone();
        self.push(f, Justification::Ax(k), false)
    }

    /// Axiom `k` instantiated by `map`.
    pub fn ax(&mut self, k: usize, map: &[(&str, &Formula)]) -> usize {
        let a = self.axiom(k);
        self.sub(a, bind(map))
    }

    /// # Panics
    /// If `src` depends on a hypothesis or the substitution is rejected.
    pub fn sub(&mut self, src: usize, map: SubstitutionMap) -> usize {
        assert!(!self.depends(src), "substitution into a hypothesis-dependent line");
        let result = self
            .kernel
            .apply_substitution(self.formula(src), &map)
            .unwrap_or_else(|e| panic!("substitution failed: {e}"));
        if result == *self.formula(src) {
            return src;
        }
        self.push(result, Justification::Sub { src, map }, false)
    }

    /// # Panics
    /// If `major` is not `minor -> X`.
    pub fn mp(&mut self, minor: usize, major: usize) -> usize {
        let consequent = match self.formula(major) {
            Formula::Impl(a, c) if **a == *self.formula(minor) => (**c).clone(),
            other => panic!("modus ponens: `{other}` does not start with `{}`", self.formula(minor)),
        };
        let dep = self.depends(minor) || self.depends(major);
        self.push(consequent, Justification::Mp { minor, major }, dep)
    }

    /// # Panics
    /// If the rewrite does not apply.
    pub fn def(&mut self, src: usize, path: Path, dir: Direction, conn: Defined) -> usize {
        let result = crate::formula::Basis::OrNot
            .rewrite(self.formula(src), &path, conn, dir)
            .unwrap_or_else(|e| panic!("definition step: {e}"));
        let dep = self.depends(src);
        self.push(result, Justification::Def { src, path, dir, conn }, dep)
    }

    pub fn fold_impl(&mut self, src: usize, path: &[u8]) -> usize {
        self.def(src, Path(path.to_vec()), Direction::Fold, Defined::Impl)
    }

    pub fn unfold_impl(&mut self, src: usize, path: &[u8]) -> usize {
        self.def(src, Path(path.to_vec()), Direction::Expand, Defined::Impl)
    }

    /// Instance of a schematic theorem.
    pub fn lemma(&mut self, th: Theorem, map: &[(&str, &Formula)]) -> usize {
        let schema = th.schema();
        let map = bind(map);
        let goal = schema.substitute(&map).expect("propositional");
        if let Some(&i) = self.free.get(&goal) {
            return i;
        }
        let line = match self.free.get(&schema) {
            Some(&i) => i,
            None => self.prove_schema(th),
        };
        self.sub(line, map)
    }

    /// From `A -> B` and `B -> C`, `A -> C`.
    pub fn syll(&mut self, ab: usize, bc: usize) -> usize {
        let (a, b) = split_impl(self.formula(ab));
        let (_, c) = split_impl(self.formula(bc));
        let t = self.lemma(Theorem::Syll, &[("p", &a), ("q", &b), ("r", &c)]);
        let t = self.mp(bc, t);
        self.mp(ab, t)
    }

    /// From `A -> C` and `B -> C`, `A | B -> C`.
    pub fn or_elim(&mut self, ac: usize, bc: usize) -> usize {
        let (a, c) = split_impl(self.formula(ac));
        let (b, _) = split_impl(self.formula(bc));
        let t = self.ax(4, &[("p", &b), ("q", &c), ("r", &a)]);
        let l1 = self.mp(bc, t);
        let l2 = self.ax(3, &[("p", &a), ("q", &c)]);
        let t = self.ax(4, &[("p", &a), ("q", &c), ("r", &c)]);
        let l3 = self.mp(ac, t);
        let l4 = self.ax(2, &[("p", &c)]);
        let x = self.syll(l1, l2);
        let x = self.syll(x, l3);
        self.syll(x, l4)
    }

    /// Copies another proof's lines in, mapping its hypotheses onto this
    /// builder's by formula. Returns the line of its conclusion.
    ///
    /// # Panics
    /// If a hypothesis of `proof` is not among this builder's hypotheses.
    pub fn splice(&mut self, proof: &HilbertProof) -> usize {
        let mut map = vec![0usize; proof.lines.len() + 1];
        let hyp_map: Vec<usize> = proof
            .hypotheses
            .iter()
            .map(|h| self.hyps.iter().position(|g| g == h).map(|i| i + 1).unwrap_or(0))
            .collect();
        for (i, line) in proof.lines.iter().enumerate() {
            let r = |j: usize| map[j];
            let (just, dep) = match &line.just {
                Justification::Ax(k) => (Justification::Ax(*k), false),
                Justification::Hyp(h) => {
                    let target = hyp_map[h - 1];
                    assert!(target > 0, "spliced proof uses a foreign hypothesis");
                    (Justification::Hyp(target), true)
                }
                Justification::Mp { minor, major } => (
                    Justification::Mp { minor: r(*minor), major: r(*major) },
                    self.depends(r(*minor)) || self.depends(r(*major)),
                ),
                Justification::Sub { src, map: m } => (Justification::Sub { src: r(*src), map: m.clone() }, false),
                Justification::Def { src, path, dir, conn } => (
                    Justification::Def { src: r(*src), path: path.clone(), dir: *dir, conn: *conn },
                    self.depends(r(*src)),
                ),
            };
            map[i + 1] = self.push(line.formula.clone(), just, dep);
        }
        map[proof.lines.len()]
    }

    /// Ends the proof with `goal` as its last line.
    pub fn finish(mut self, goal: usize) -> HilbertProof {
        if goal != self.lines.len() {
            let line = self.lines[goal - 1].clone();
            let dep = self.dep[goal - 1];
            self.push_raw(line.formula, line.just, dep);
        }
        HilbertProof { hypotheses: self.hyps, lines: self.lines }
    }

    fn prove_schema(&mut self, th: Theorem) -> usize {
        let (p, q, r) = (v("p"), v("q"), v("r"));
        match th {
            Theorem::OrIntroLeft => self.axiom(1),
            Theorem::Id => {
                let l1 = self.ax(1, &[("q", &p)]);
                let l2 = self.axiom(2);
                self.syll(l1, l2)
            }
            Theorem::AddRight => {
                let l1 = self.ax(1, &[("p", &q), ("q", &p)]);
                let l2 = self.ax(3, &[("p", &q), ("q", &p)]);
                self.syll(l1, l2)
            }
            Theorem::K => {
                let l = self.lemma(Theorem::AddRight, &[("p", &neg(&p)), ("q", &q)]);
                self.fold_impl(l, &[1])
            }
            Theorem::Syll => {
                let l = self.ax(4, &[("p", &q), ("q", &r), ("r", &neg(&p))]);
                let l = self.fold_impl(l, &[1, 0]);
                self.fold_impl(l, &[1, 1])
            }
            Theorem::ExcludedMiddle => {
                let id = self.lemma(Theorem::Id, &[]);
                let l = self.unfold_impl(id, &[]);
                let perm = self.ax(3, &[("p", &neg(&p)), ("q", &p)]);
                self.mp(l, perm)
            }
            Theorem::DoubleNegIntro => {
                let l = self.lemma(Theorem::ExcludedMiddle, &[("p", &neg(&p))]);
                self.fold_impl(l, &[])
            }
            Theorem::DoubleNegElim => {
                let nnn = neg(&neg(&neg(&p)));
                let l1 = self.lemma(Theorem::DoubleNegIntro, &[("p", &neg(&p))]);
                let l2 = self.ax(4, &[("p", &neg(&p)), ("q", &nnn), ("r", &p)]);
                let l3 = self.mp(l1, l2);
                let em = self.lemma(Theorem::ExcludedMiddle, &[]);
                let l4 = self.mp(em, l3);
                let l5 = self.ax(3, &[("p", &p), ("q", &nnn)]);
                let l6 = self.mp(l4, l5);
                self.fold_impl(l6, &[])
            }
            Theorem::Assoc => {
                let pr = or(&p, &r);
                let x = or(&q, &pr);
                let s1a = self.lemma(Theorem::AddRight, &[("p", &p), ("q", &r)]);
                let s1b = self.ax(4, &[("p", &r), ("q", &pr), ("r", &q)]);
                let s1 = self.mp(s1a, s1b);
                let s3b = self.ax(4, &[("p", &or(&q, &r)), ("q", &x), ("r", &p)]);
                let s3 = self.mp(s1, s3b);
                let s2a = self.ax(1, &[("p", &p), ("q", &r)]);
                let s2b = self.lemma(Theorem::AddRight, &[("p", &q), ("q", &pr)]);
                let s2 = self.syll(s2a, s2b);
                let idx = self.lemma(Theorem::Id, &[("p", &x)]);
                let s4 = self.or_elim(s2, idx);
                self.syll(s3, s4)
            }
            Theorem::Comm => {
                let l = self.lemma(Theorem::Assoc, &[("p", &neg(&p)), ("q", &neg(&q)), ("r", &r)]);
                let l = self.fold_impl(l, &[0, 1]);
                let l = self.fold_impl(l, &[0]);
                let l = self.fold_impl(l, &[1, 1]);
                self.fold_impl(l, &[1])
            }
            Theorem::Contraction => {
                let a = self.ax(1, &[("p", &neg(&p)), ("q", &q)]);
                let b = self.lemma(Theorem::Id, &[("p", &or(&neg(&p), &q))]);
                let l = self.or_elim(a, b);
                let l = self.fold_impl(l, &[0, 1]);
                let l = self.fold_impl(l, &[0]);
                self.fold_impl(l, &[1])
            }
            Theorem::Frege => {
                let pr = imp(&p, &r);
                let ppr = imp(&p, &pr);
                let pq = imp(&p, &q);
                let c1 = self.lemma(Theorem::Comm, &[]);
                let c2 = self.lemma(Theorem::Syll, &[("p", &p), ("q", &q), ("r", &pr)]);
                let c3 = self.syll(c1, c2);
                let c4a = self.lemma(Theorem::Contraction, &[("p", &p), ("q", &r)]);
                let c4b = self.lemma(Theorem::Syll, &[("p", &pq), ("q", &ppr), ("r", &pr)]);
                let c4 = self.mp(c4a, c4b);
                self.syll(c3, c4)
            }
            Theorem::OrNeg => {
                let (nnp, nnq) = (neg(&neg(&p)), neg(&neg(&q)));
                let npq = neg(&or(&p, &q));
                let dq = self.lemma(Theorem::DoubleNegIntro, &[("p", &q)]);
                let t = self.ax(4, &[("p", &q), ("q", &nnq), ("r", &p)]);
                let d1 = self.mp(dq, t);
                let d2 = self.ax(3, &[("p", &p), ("q", &nnq)]);
                let dp = self.lemma(Theorem::DoubleNegIntro, &[]);
                let t = self.ax(4, &[("p", &p), ("q", &nnp), ("r", &nnq)]);
                let d3 = self.mp(dp, t);
                let d4 = self.ax(3, &[("p", &nnq), ("q", &nnp)]);
                let d = self.syll(d1, d2);
                let d = self.syll(d, d3);
                let d = self.syll(d, d4);
                let e = self.unfold_impl(d, &[]);
                let a = self.lemma(Theorem::Assoc, &[("p", &npq), ("q", &nnp), ("r", &nnq)]);
                let f1 = self.mp(e, a);
                let g = self.ax(3, &[("p", &npq), ("q", &nnq)]);
                let t = self.ax(4, &[("p", &or(&npq, &nnq)), ("q", &or(&nnq, &npq)), ("r", &nnp)]);
                let h = self.mp(g, t);
                let f2 = self.mp(f1, h);
                let l = self.fold_impl(f2, &[1]);
                self.fold_impl(l, &[])
            }
            Theorem::CaseMerge => {
                let mut sub = Builder::new(vec![imp(&p, &r), imp(&neg(&p), &r)]);
                let h1 = sub.hyp(1);
                let h2 = sub.hyp(2);
                let o = sub.or_elim(h1, h2);
                let em = sub.lemma(Theorem::ExcludedMiddle, &[]);
                let goal = sub.mp(em, o);
                let proof = sub.finish(goal);
                let once = deduction_theorem(&proof).expect("valid proof with hypotheses");
                let twice = deduction_theorem(&once).expect("valid proof with hypotheses");
                self.splice(&twice)
            }
        }
    }
}

fn split_impl(f: &Formula) -> (Formula, Formula) {
    match f {
        Formula::Impl(a, b) => ((**a).clone(), (**b).clone()),
        other => panic!("expected an implication, found `{other}`"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::check_proof;
    use crate::truth::is_tautology;

    #[test]
    fn every_schema_proves_and_checks() {
        for th in Theorem::ALL {
            let schema = th.schema();
            assert!(is_tautology(&schema).unwrap().is_tautology(), "{th:?}");
            let mut b = Builder::new(vec![]);
            let goal = b.lemma(th, &[]);
            let proof = b.finish(goal);
            assert_eq!(proof.conclusion(), Some(&schema), "{th:?}");
            assert_eq!(check_proof(&proof), Ok(()), "{th:?}");
        }
    }

    #[test]
    fn instances_are_one_substitution_away() {
        let mut b = Builder::new(vec![]);
        let a: Formula = "p & q".parse().unwrap();
        let first = b.lemma(Theorem::Frege, &[]);
        let before = b.len();
        let inst = b.lemma(Theorem::Frege, &[("p", &a), ("r", &v("p"))]);
        assert_eq!(b.len(), before + 1);
        assert!(inst > first);
        assert_eq!(check_proof(&b.finish(inst)), Ok(()));
    }

    #[test]
    fn finish_restates_deduplicated_goal() {
        let mut b = Builder::new(vec![]);
        let a1 = b.axiom(1);
        b.axiom(2);
        let proof = b.finish(a1);
        assert_eq!(proof.len(), 3);
        assert_eq!(proof.conclusion(), Some(&"p -> p | q".parse().unwrap()));
        assert_eq!(check_proof(&proof), Ok(()));
    }
}
