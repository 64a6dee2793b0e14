//! Discharging the last hypothesis of a proof.

use std::collections::HashMap;

use thiserror::Error;

use super::builder::{Builder, Theorem};
use super::{HilbertProof, Justification, Kernel, Rejection};
use crate::formula::{Formula, Path};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DeductionError {
    #[error("the proof has no hypothesis to discharge")]
    NoHypothesis,
    #[error("the proof is empty")]
    Empty,
    #[error("invalid proof: {0}")]
    Invalid(#[from] Rejection),
}

/// From a proof of `Γ, P ⊢ Q`, a proof of `Γ ⊢ P -> Q`.
pub fn deduction_theorem(proof: &HilbertProof) -> Result<HilbertProof, DeductionError> {
    deduction_theorem_in(&Kernel::propositional(), proof)
}

/// As [`deduction_theorem`], checking against the given kernel.
pub fn deduction_theorem_in(kernel: &Kernel, proof: &HilbertProof) -> Result<HilbertProof, DeductionError> {
    let last = proof.hypotheses.len();
    if last == 0 {
        return Err(DeductionError::NoHypothesis);
    }
    if proof.lines.is_empty() {
        return Err(DeductionError::Empty);
    }
    kernel.check(proof)?;
    let p = proof.hypotheses[last - 1].clone();
    let mut b = Builder::with_kernel(kernel.clone(), proof.hypotheses[..last - 1].to_vec());

    // on_p[i]: line i+1 depends on P; out[i]: its image (A or P -> A)
    let mut on_p: Vec<bool> = Vec::with_capacity(proof.lines.len());
    let mut out: Vec<usize> = Vec::with_capacity(proof.lines.len());
    let mut lifted: HashMap<usize, usize> = HashMap::new();

    let mut lift = |b: &mut Builder, on_p: &[bool], out: &[usize], j: usize| -> usize {
        if on_p[j - 1] {
            return out[j - 1];
        }
        *lifted.entry(j).or_insert_with(|| {
            let a = b.formula(out[j - 1]).clone();
            let k = b.lemma(Theorem::K, &[("q", &a), ("p", &p)]);
            b.mp(out[j - 1], k)
        })
    };

    for line in &proof.lines {
        let (dep, image) = match &line.just {
            Justification::Ax(k) => (false, b.axiom(*k)),
            Justification::Hyp(i) if *i == last => (true, b.lemma(Theorem::Id, &[("p", &p)])),
            Justification::Hyp(i) => (false, b.hyp(*i)),
            Justification::Mp { minor, major } => {
                if !on_p[minor - 1] && !on_p[major - 1] {
                    (false, b.mp(out[minor - 1], out[major - 1]))
                } else {
                    let pa = lift(&mut b, &on_p, &out, *minor);
                    let pab = lift(&mut b, &on_p, &out, *major);
                    let a = proof.lines[minor - 1].formula.clone();
                    let c = line.formula.clone();
                    let s = b.lemma(Theorem::Frege, &[("p", &p), ("q", &a), ("r", &c)]);
                    let s = b.mp(pab, s);
                    (true, b.mp(pa, s))
                }
            }
            Justification::Sub { src, map } => (false, b.sub(out[src - 1], map.clone())),
            Justification::Def { src, path, dir, conn } => {
                if on_p[src - 1] {
                    let mut inner = vec![1];
                    inner.extend_from_slice(&path.0);
                    (true, b.def(out[src - 1], Path(inner), *dir, *conn))
                } else {
                    (false, b.def(out[src - 1], path.clone(), *dir, *conn))
                }
            }
        };
        on_p.push(dep);
        out.push(image);
    }
    let n = proof.lines.len();
    let goal = lift(&mut b, &on_p, &out, n);
    debug_assert_eq!(*b.formula(goal), Formula::implies(p.clone(), proof.lines[n - 1].formula.clone()));
    Ok(b.finish(goal))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{check_proof, ProofLine};

    fn f(s: &str) -> Formula {
        s.parse().unwrap()
    }

    #[test]
    fn identity_from_hypothesis() {
        let proof = HilbertProof {
            hypotheses: vec![f("p")],
            lines: vec![ProofLine { formula: f("p"), just: Justification::Hyp(1) }],
        };
        let out = deduction_theorem(&proof).unwrap();
        assert!(out.hypotheses.is_empty());
        assert_eq!(out.conclusion(), Some(&f("p -> p")));
        assert_eq!(check_proof(&out), Ok(()));
    }

    #[test]
    fn independent_conclusion_is_lifted() {
        let proof = HilbertProof {
            hypotheses: vec![f("p"), f("q")],
            lines: vec![ProofLine { formula: f("p"), just: Justification::Hyp(1) }],
        };
        let out = deduction_theorem(&proof).unwrap();
        assert_eq!(out.hypotheses, vec![f("p")]);
        assert_eq!(out.conclusion(), Some(&f("q -> p")));
        assert_eq!(check_proof(&out), Ok(()));
    }

    #[test]
    fn modus_ponens_and_definitions_under_the_hypothesis() {
        let text = "hyp: r\nhyp: ~p\n1: ~p ; HYP 2\n2: p -> p | q ; AX1\n3: ~p -> ~p | q ; SUB 2 p:=~p\n\
                    4: ~p | q ; MP 1 3\n5: p -> q ; DEF 4 @. fold impl\n";
        let proof = crate::hilbert::parse_proof(text).unwrap();
        assert_eq!(check_proof(&proof), Ok(()));
        let out = deduction_theorem(&proof).unwrap();
        assert_eq!(out.conclusion(), Some(&f("~p -> p -> q")));
        assert_eq!(check_proof(&out), Ok(()));
        let out = deduction_theorem(&out).unwrap();
        assert_eq!(out.conclusion(), Some(&f("r -> ~p -> p -> q")));
        assert_eq!(check_proof(&out), Ok(()));
    }

    #[test]
    fn no_hypothesis() {
        let proof = HilbertProof {
            hypotheses: vec![],
            lines: vec![ProofLine { formula: f("p -> p | q"), just: Justification::Ax(1) }],
        };
        assert_eq!(deduction_theorem(&proof), Err(DeductionError::NoHypothesis));
    }
}
