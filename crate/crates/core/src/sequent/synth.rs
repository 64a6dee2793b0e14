//! Sequent proofs of tautologies.
//!
//! The input is rewritten with `->` and `~` only. For each valuation `v`
//! of the variables, the literals `Γ_v` derive the formula or its negation
//! by induction on the formula; branches are then merged one variable at a
//! time, last variable first, by reductio on the negated goal. Definition
//! steps on the succedent restore the input spelling at the end.

use std::collections::HashMap;

use thiserror::Error;

use super::{nd_conclusion, NdJustification, NdLine, NdProof, Sequent, Side};
use crate::formula::{expand_defined, expansion_steps, Basis, Defined, Direction, Formula, Path};
use crate::kalmar::literals;
use crate::truth::{eval, is_tautology, TautologyVerdict, TruthError, Valuation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NdError {
    #[error("not a tautology; falsified by {}", show(.0))]
    NotTautology(Valuation),
    #[error(transparent)]
    Truth(#[from] TruthError),
}

fn show(v: &Valuation) -> String {
    v.iter().map(|(k, b)| format!("{k}={}", if *b { 'T' } else { 'F' })).collect::<Vec<_>>().join(" ")
}

fn neg(f: &Formula) -> Formula {
    Formula::not(f.clone())
}

/// Accumulates sequent proof lines, reusing any line whose sequent is
/// already present.
#[derive(Default)]
pub struct NdBuilder {
    lines: Vec<NdLine>,
    memo: HashMap<Sequent, usize>,
}

impl NdBuilder {
    pub fn new() -> Self {
        NdBuilder::default()
    }

    pub fn sequent(&self, line: usize) -> &Sequent {
        &self.lines[line - 1].sequent
    }

    fn push(&mut self, sequent: Sequent, just: NdJustification) -> usize {
        if let Some(&i) = self.memo.get(&sequent) {
            return i;
        }
        self.lines.push(NdLine { sequent: sequent.clone(), just });
        self.memo.insert(sequent, self.lines.len());
        self.lines.len()
    }

    /// # Panics
    /// If the rule does not apply.
    pub fn apply(&mut self, just: NdJustification) -> usize {
        let sequent = nd_conclusion(&just, |j| self.lines.get(j.wrapping_sub(1)).map(|l| l.sequent.clone()))
            .unwrap_or_else(|e| panic!("sequent rule: {e}"));
        self.push(sequent, just)
    }

    pub fn id(&mut self, f: &Formula) -> usize {
        self.push(Sequent::new(vec![f.clone()], f.clone()), NdJustification::Id)
    }

    pub fn thin_l(&mut self, src: usize, added: &Formula) -> usize {
        self.apply(NdJustification::ThinL { src, added: added.clone() })
    }

    pub fn thin_r(&mut self, src: usize, added: &Formula) -> usize {
        self.apply(NdJustification::ThinR { src, added: added.clone() })
    }

    pub fn imp_i(&mut self, src: usize) -> usize {
        self.apply(NdJustification::ImpI { src })
    }

    pub fn imp_e(&mut self, minor: usize, major: usize) -> usize {
        self.apply(NdJustification::ImpE { minor, major })
    }

    pub fn raa(&mut self, left: usize, right: usize) -> usize {
        self.apply(NdJustification::Raa { left, right })
    }

    pub fn def(&mut self, src: usize, side: Side, path: Path, dir: Direction, conn: Defined) -> usize {
        self.apply(NdJustification::Def { src, side, path, dir, conn })
    }

    /// From `Δ => P`, `prefix, Δ, suffix => P`.
    pub fn weaken(&mut self, mut line: usize, prefix: &[Formula], suffix: &[Formula]) -> usize {
        for f in prefix.iter().rev() {
            line = self.thin_l(line, f);
        }
        for f in suffix {
            line = self.thin_r(line, f);
        }
        line
    }

    /// `ctx => ctx[i]`.
    pub fn assume(&mut self, ctx: &[Formula], i: usize) -> usize {
        let l = self.id(&ctx[i]);
        self.weaken(l, &ctx[..i], &ctx[i + 1..])
    }

    /// `ctx, ~~a => a`.
    pub fn dne(&mut self, ctx: &[Formula], a: &Formula) -> usize {
        let (na, nna) = (neg(a), neg(&neg(a)));
        let l = self.id(&na);
        let left = self.thin_l(l, &nna);
        let r = self.id(&nna);
        let right = self.thin_r(r, &na);
        let base = self.raa(left, right);
        self.weaken(base, ctx, &[])
    }

    /// `ctx, ~~~h => ~h`.
    fn tne(&mut self, ctx: &[Formula], h: &Formula) -> usize {
        let nnh = neg(&neg(h));
        let nnnh = neg(&nnh);
        let l = self.id(&nnh);
        let left = self.thin_l(l, &nnnh);
        let r = self.id(&nnnh);
        let right = self.thin_r(r, &nnh);
        let base = self.raa(left, right);
        self.weaken(base, ctx, &[])
    }

    pub fn finish(mut self, goal: usize) -> NdProof {
        if goal != self.lines.len() {
            let line = self.lines[goal - 1].clone();
            self.lines.push(line);
        }
        NdProof { lines: self.lines }
    }

    /// `Γ_v => f` or `Γ_v => ~f`, whichever `v` makes true; `f` uses `->`
    /// and `~` only.
    fn derive(&mut self, ctx: &[Formula], vars: &[String], f: &Formula, v: &Valuation) -> Result<usize, NdError> {
        Ok(match f {
            Formula::Var(x) => self.assume(ctx, vars.iter().position(|y| y == x).expect("listed")),
            Formula::Not(h) => {
                let lh = self.derive(ctx, vars, h, v)?;
                if eval(h, v)? {
                    let nnnh = neg(&neg(&neg(h)));
                    let left = self.thin_r(lh, &nnnh);
                    let right = self.tne(ctx, h);
                    self.raa(left, right)
                } else {
                    lh
                }
            }
            Formula::Impl(h, k) => {
                let (hv, kv) = (eval(h, v)?, eval(k, v)?);
                if kv {
                    let lk = self.derive(ctx, vars, k, v)?;
                    let l = self.thin_r(lk, h);
                    self.imp_i(l)
                } else if !hv {
                    let lh = self.derive(ctx, vars, h, v)?;
                    let mut d = ctx.to_vec();
                    d.push((**h).clone());
                    d.push(neg(k));
                    let left = self.assume(&d, ctx.len());
                    let right = self.weaken(lh, &[], &d[ctx.len()..]);
                    let l = self.raa(left, right);
                    self.imp_i(l)
                } else {
                    let nn = neg(&neg(f));
                    let lh = self.derive(ctx, vars, h, v)?;
                    let lk = self.derive(ctx, vars, k, v)?;
                    let minor = self.thin_r(lh, &nn);
                    let major = self.dne(ctx, f);
                    let left = self.imp_e(minor, major);
                    let right = self.thin_r(lk, &nn);
                    self.raa(left, right)
                }
            }
            other => unreachable!("`{other}` survived expansion to -> and ~"),
        })
    }

    /// From `Γ, x => g` and `Γ, ~x => g`, `Γ => g`.
    fn merge(&mut self, ctx: &[Formula], x: &Formula, g: &Formula, pos: usize, neg_line: usize) -> usize {
        let (nx, nnx, ng) = (neg(x), neg(&neg(x)), neg(g));
        let a = self.imp_i(pos);
        let b = self.imp_i(neg_line);
        let mut c = ctx.to_vec();
        c.push(ng.clone());

        let mut d = c.clone();
        d.push(nx.clone());
        let minor = self.assume(&d, c.len());
        let major = self.weaken(b, &[], &[ng.clone(), nx.clone()]);
        let left = self.imp_e(minor, major);
        let right = self.assume(&d, ctx.len());
        let to_x = self.raa(left, right);

        let minor = self.dne(&c, x);
        let major = self.weaken(a, &[], &[ng.clone(), nnx.clone()]);
        let left = self.imp_e(minor, major);
        let mut e = c.clone();
        e.push(nnx);
        let right = self.assume(&e, ctx.len());
        let to_nx = self.raa(left, right);

        self.raa(to_x, to_nx)
    }

    fn prove(&mut self, g: &Formula, vars: &[String], fixed: &mut Valuation) -> Result<usize, NdError> {
        let k = fixed.len();
        if k == vars.len() {
            return self.derive(&literals(vars, fixed), vars, g, fixed);
        }
        let branch = |b: &mut NdBuilder, value: bool, fixed: &mut Valuation| {
            fixed.insert(vars[k].clone(), value);
            let r = b.prove(g, vars, fixed);
            fixed.remove(&vars[k]);
            r
        };
        let pos = branch(self, true, fixed)?;
        let neg_line = branch(self, false, fixed)?;
        let ctx = literals(&vars[..k], fixed);
        Ok(self.merge(&ctx, &Formula::var(vars[k].clone()), g, pos, neg_line))
    }
}

/// Proof of `=> f` for a tautology `f`.
pub fn nd_prove_tautology(f: &Formula) -> Result<NdProof, NdError> {
    if let TautologyVerdict::Countermodel(v) = is_tautology(f)? {
        return Err(NdError::NotTautology(v));
    }
    let mut b = NdBuilder::new();
    if let Formula::Impl(a, c) = f {
        if a == c {
            let l = b.id(a);
            let goal = b.imp_i(l);
            return Ok(b.finish(goal));
        }
    }
    let g = expand_defined(f, Basis::ImplNot);
    let vars: Vec<String> = g.prop_vars().into_iter().collect();
    let mut line = b.prove(&g, &vars, &mut Valuation::new())?;
    for (path, conn) in expansion_steps(f, Basis::ImplNot).into_iter().rev() {
        line = b.def(line, Side::Suc, path, Direction::Fold, conn);
    }
    debug_assert_eq!(b.sequent(line), &Sequent::new(vec![], f.clone()));
    Ok(b.finish(line))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequent::check_nd;

    #[test]
    fn identity_is_two_lines() {
        let proof = nd_prove_tautology(&"p -> p".parse().unwrap()).unwrap();
        assert_eq!(proof.len(), 2);
        assert_eq!(check_nd(&proof), Ok(()));
    }

    #[test]
    fn stock_tautologies() {
        for src in
            ["(p -> q) | (q -> p)", "q -> (p -> q)", "~p -> (p -> q)", "p | ~p", "(p <-> q) <-> (q <-> p)", "~~p -> p"]
        {
            let f: Formula = src.parse().unwrap();
            let proof = nd_prove_tautology(&f).unwrap();
            assert_eq!(check_nd(&proof), Ok(()), "{src}");
            assert_eq!(proof.conclusion(), Some(&Sequent::new(vec![], f)), "{src}");
        }
    }

    #[test]
    fn non_tautology() {
        assert!(matches!(nd_prove_tautology(&"p | q".parse().unwrap()), Err(NdError::NotTautology(_))));
    }
}
