//! Proof synthesis for tautologies.
//!
//! For a formula `f` in `~`/`|` and a valuation `v`, [`kalmar_line`] derives
//! `f` or `~f` (whichever `v` makes true) from the literals fixed by `v`.
//! [`prove_tautology`] then discharges the literals one variable at a time,
//! last variable first, merging the two branches with the case-merge lemma.

use thiserror::Error;

use crate::formula::{expand_defined, expansion_steps, Basis, Direction, Formula};
use crate::hilbert::{deduction_theorem, Builder, HilbertProof, Theorem};
use crate::truth::{eval, is_tautology, TautologyVerdict, TruthError, Valuation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KalmarError {
    #[error("`{0}` is not written with `~` and `|` only")]
    NotOrNot(String),
    #[error("not a tautology; falsified by {}", show(.0))]
    NotTautology(Valuation),
    #[error(transparent)]
    Truth(#[from] TruthError),
}

fn show(v: &Valuation) -> String {
    v.iter().map(|(k, b)| format!("{k}={}", if *b { 'T' } else { 'F' })).collect::<Vec<_>>().join(" ")
}

/// The hypothesis list `Γ_v`: each variable or its negation, in
/// lexicographic order.
pub fn literals(vars: &[String], v: &Valuation) -> Vec<Formula> {
    vars.iter().map(|x| if v[x] { Formula::var(x.clone()) } else { Formula::not(Formula::var(x.clone())) }).collect()
}

/// Proof of `Γ_v ⊢ f` if `v` makes `f` true, else of `Γ_v ⊢ ~f`.
pub fn kalmar_line(f: &Formula, v: &Valuation) -> Result<HilbertProof, KalmarError> {
    check_basis(f)?;
    let vars: Vec<String> = f.prop_vars().into_iter().collect();
    if let Some(x) = vars.iter().find(|x| !v.contains_key(*x)) {
        return Err(TruthError::Unassigned(x.clone()).into());
    }
    let mut b = Builder::new(literals(&vars, v));
    let goal = derive(&mut b, f, v, &vars)?;
    Ok(b.finish(goal))
}

fn check_basis(f: &Formula) -> Result<(), KalmarError> {
    let mut bad = None;
    f.walk(&mut |g| {
        if bad.is_none() && !matches!(g, Formula::Var(_) | Formula::Not(_) | Formula::Or(..)) {
            bad = Some(g.to_string());
        }
    });
    bad.map_or(Ok(()), |g| Err(KalmarError::NotOrNot(g)))
}

fn derive(b: &mut Builder, f: &Formula, v: &Valuation, vars: &[String]) -> Result<usize, KalmarError> {
    Ok(match f {
        Formula::Var(x) => b.hyp(vars.iter().position(|y| y == x).expect("variable listed") + 1),
        Formula::Not(g) => {
            let inner = derive(b, g, v, vars)?;
            if eval(g, v)? {
                let dni = b.lemma(Theorem::DoubleNegIntro, &[("p", g)]);
                b.mp(inner, dni)
            } else {
                inner
            }
        }
        Formula::Or(g, h) => {
            if eval(g, v)? {
                let lg = derive(b, g, v, vars)?;
                let t = b.lemma(Theorem::OrIntroLeft, &[("p", g), ("q", h)]);
                b.mp(lg, t)
            } else if eval(h, v)? {
                let lh = derive(b, h, v, vars)?;
                let t = b.lemma(Theorem::AddRight, &[("p", g), ("q", h)]);
                b.mp(lh, t)
            } else {
                let lg = derive(b, g, v, vars)?;
                let lh = derive(b, h, v, vars)?;
                let t = b.lemma(Theorem::OrNeg, &[("p", g), ("q", h)]);
                let t = b.mp(lg, t);
                b.mp(lh, t)
            }
        }
        other => return Err(KalmarError::NotOrNot(other.to_string())),
    })
}

/// Hypothesis-free proof of a tautology whose last line is `f` exactly.
pub fn prove_tautology(f: &Formula) -> Result<HilbertProof, KalmarError> {
    if let TautologyVerdict::Countermodel(v) = is_tautology(f)? {
        return Err(KalmarError::NotTautology(v));
    }
    let g = expand_defined(f, Basis::OrNot);
    let vars: Vec<String> = g.prop_vars().into_iter().collect();
    let core = merge(&g, &vars, &mut Valuation::new())?;
    let mut b = Builder::new(vec![]);
    let mut line = b.splice(&core);
    for (path, conn) in expansion_steps(f, Basis::OrNot).into_iter().rev() {
        line = b.def(line, path, Direction::Fold, conn);
    }
    debug_assert_eq!(b.formula(line), f);
    Ok(b.finish(line))
}

/// Proof of `g` from the literals of the variables fixed so far.
fn merge(g: &Formula, vars: &[String], fixed: &mut Valuation) -> Result<HilbertProof, KalmarError> {
    let k = fixed.len();
    if k == vars.len() {
        return kalmar_line(g, fixed);
    }
    let x = Formula::var(vars[k].clone());
    let branch = |value: bool, fixed: &mut Valuation| -> Result<HilbertProof, KalmarError> {
        fixed.insert(vars[k].clone(), value);
        let p = merge(g, vars, fixed)?;
        fixed.remove(&vars[k]);
        Ok(deduction_theorem(&p).expect("synthesized proofs check"))
    };
    let pos = branch(true, fixed)?;
    let neg = branch(false, fixed)?;
    let mut b = Builder::new(literals(&vars[..k], fixed));
    let lp = b.splice(&pos);
    let ln = b.splice(&neg);
    let cm = b.lemma(Theorem::CaseMerge, &[("p", &x), ("r", g)]);
    let t = b.mp(lp, cm);
    let goal = b.mp(ln, t);
    Ok(b.finish(goal))
}
