//! Stock of derived rules and theorems, each with a stored proof.

use super::builder::{Builder, Theorem};
use super::HilbertProof;
use crate::formula::{Formula, SubstitutionMap};

/// A derived rule `hypotheses ⊢ conclusion` over the letters `p`, `q`, `r`.
#[derive(Clone, Debug)]
pub struct Lemma {
    pub name: &'static str,
    pub hypotheses: Vec<Formula>,
    pub conclusion: Formula,
    /// Proof of `hypotheses ⊢ conclusion`.
    pub proof: HilbertProof,
    theorem: Theorem,
}

impl Lemma {
    fn new(name: &'static str, hyps: &[&str], conclusion: &str, theorem: Theorem) -> Self {
        let hypotheses: Vec<Formula> = hyps.iter().map(|h| h.parse().expect("lemma text parses")).collect();
        let conclusion: Formula = conclusion.parse().expect("lemma text parses");
        let mut lemma = Lemma { name, hypotheses, conclusion, proof: HilbertProof::default(), theorem };
        debug_assert_eq!(lemma.schema(), theorem.schema());
        lemma.proof = lemma.instantiate(&SubstitutionMap::new());
        lemma
    }

    /// The rule as a single formula: `H1 -> (H2 -> ... -> C)`.
    pub fn schema(&self) -> Formula {
        self.hypotheses.iter().rev().fold(self.conclusion.clone(), |acc, h| Formula::implies(h.clone(), acc))
    }

    /// Proof of the instance under `map`: the closed theorem proved without
    /// hypotheses, one substitution, then modus ponens on each hypothesis.
    pub fn instantiate(&self, map: &SubstitutionMap) -> HilbertProof {
        let inst = |f: &Formula| f.substitute(map).expect("propositional substitution");
        let hyps: Vec<Formula> = self.hypotheses.iter().map(inst).collect();
        let mut b = Builder::new(hyps);
        let closed = b.lemma(self.theorem, &[]);
        let mut line = b.sub(closed, map.clone());
        for i in 1..=self.hypotheses.len() {
            let h = b.hyp(i);
            line = b.mp(h, line);
        }
        b.finish(line)
    }
}

pub fn lemma_library() -> Vec<Lemma> {
    vec![
        Lemma::new("or-intro-left", &["p"], "p | q", Theorem::OrIntroLeft),
        Lemma::new("or-intro-right", &["q"], "p | q", Theorem::AddRight),
        Lemma::new("or-neg", &["~p", "~q"], "~(p | q)", Theorem::OrNeg),
        Lemma::new("double-negation-intro", &["p"], "~~p", Theorem::DoubleNegIntro),
        Lemma::new("double-negation-elim", &["~~p"], "p", Theorem::DoubleNegElim),
        Lemma::new("case-merge", &[], "(p -> r) -> ((~p -> r) -> r)", Theorem::CaseMerge),
        Lemma::new("identity", &[], "p -> p", Theorem::Id),
        Lemma::new("excluded-middle", &[], "p | ~p", Theorem::ExcludedMiddle),
        Lemma::new("syllogism", &["q -> r", "p -> q"], "p -> r", Theorem::Syll),
        Lemma::new("assoc", &[], "p | (q | r) -> q | (p | r)", Theorem::Assoc),
    ]
}
