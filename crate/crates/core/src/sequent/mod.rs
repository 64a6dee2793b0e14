//! Natural deduction on sequents `Δ => P`, with `Δ` a finite sequence.
//!
//! Rules:
//!
//! ```text
//! ID     P => P
//! THINL  from Δ => P infer A, Δ => P
//! THINR  from Δ => P infer Δ, A => P
//! IMPI   from Δ, P => Q infer Δ => P -> Q
//! IMPE   from Δ => P and Δ => P -> Q infer Δ => Q
//! RAA    from Δ, ~P => Q and Δ, ~P => ~Q infer Δ => P
//! DEF    rewrite one occurrence of `|`, `&` or `<->` by its definition
//!        in terms of `->` and `~`, or back
//! ```
//!
//! There is no exchange or contraction: antecedents must match literally.

mod synth;
mod text;

use std::fmt;

use crate::formula::{Basis, Defined, Direction, Formula, Path};
use crate::hilbert::Rejection;

pub use synth::{nd_prove_tautology, NdBuilder, NdError};
pub use text::{format_nd_proof, parse_nd_proof, parse_sequent};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sequent {
    pub antecedent: Vec<Formula>,
    pub succedent: Formula,
}

impl Sequent {
    pub fn new(antecedent: Vec<Formula>, succedent: Formula) -> Self {
        Sequent { antecedent, succedent }
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ant: Vec<String> = self.antecedent.iter().map(|a| a.to_string()).collect();
        if ant.is_empty() {
            write!(f, "=> {}", self.succedent)
        } else {
            write!(f, "{} => {}", ant.join(", "), self.succedent)
        }
    }
}

/// Which formula of a sequent a definition step rewrites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// Antecedent position, 1-based.
    Ant(usize),
    Suc,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Ant(k) => write!(f, "ant{k}"),
            Side::Suc => f.write_str("suc"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NdJustification {
    Id,
    ThinL { src: usize, added: Formula },
    ThinR { src: usize, added: Formula },
    ImpI { src: usize },
    ImpE { minor: usize, major: usize },
    Raa { left: usize, right: usize },
    Def { src: usize, side: Side, path: Path, dir: Direction, conn: Defined },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NdLine {
    pub sequent: Sequent,
    pub just: NdJustification,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NdProof {
    pub lines: Vec<NdLine>,
}

impl NdProof {
    pub fn conclusion(&self) -> Option<&Sequent> {
        self.lines.last().map(|l| &l.sequent)
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }
}

impl fmt::Display for NdProof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_nd_proof(self))
    }
}

/// The conclusion a rule licenses from the given premises, or why not.
pub fn nd_conclusion(just: &NdJustification, premise: impl Fn(usize) -> Option<Sequent>) -> Result<Sequent, String> {
    let get = |j: usize| premise(j).ok_or_else(|| format!("reference to line {j} is not to an earlier line"));
    Ok(match just {
        NdJustification::Id => unreachable!("identity has no premises"),
        NdJustification::ThinL { src, added } => {
            let s = get(*src)?;
            let mut ant = vec![added.clone()];
            ant.extend(s.antecedent);
            Sequent::new(ant, s.succedent)
        }
        NdJustification::ThinR { src, added } => {
            let mut s = get(*src)?;
            s.antecedent.push(added.clone());
            s
        }
        NdJustification::ImpI { src } => {
            let mut s = get(*src)?;
            let p = s.antecedent.pop().ok_or("implication introduction needs a nonempty antecedent")?;
            Sequent::new(s.antecedent, Formula::implies(p, s.succedent))
        }
        NdJustification::ImpE { minor, major } => {
            let a = get(*minor)?;
            let b = get(*major)?;
            if a.antecedent != b.antecedent {
                return Err("premises have different antecedents".into());
            }
            match &b.succedent {
                Formula::Impl(p, q) if **p == a.succedent => Sequent::new(a.antecedent, (**q).clone()),
                _ => return Err("major premise shape".into()),
            }
        }
        NdJustification::Raa { left, right } => {
            let a = get(*left)?;
            let b = get(*right)?;
            if a.antecedent != b.antecedent {
                return Err("premises have different antecedents".into());
            }
            if b.succedent != Formula::not(a.succedent.clone()) {
                return Err("right premise does not conclude the negation of the left".into());
            }
            let mut ant = a.antecedent;
            match ant.pop() {
                Some(Formula::Not(p)) => Sequent::new(ant, *p),
                _ => return Err("last antecedent formula is not a negation".into()),
            }
        }
        NdJustification::Def { src, side, path, dir, conn } => {
            let mut s = get(*src)?;
            if !Basis::ImplNot.defines(*conn) || *conn == Defined::Exists {
                return Err(format!("`{conn}` is not a defined connective here"));
            }
            let target = match side {
                Side::Suc => &mut s.succedent,
                Side::Ant(k) => k
                    .checked_sub(1)
                    .and_then(|i| s.antecedent.get_mut(i))
                    .ok_or_else(|| format!("antecedent has no position {k}"))?,
            };
            *target = Basis::ImplNot.rewrite(target, path, *conn, *dir).map_err(|e| format!("definition: {e}"))?;
            s
        }
    })
}

pub fn check_nd(proof: &NdProof) -> Result<(), Rejection> {
    for (idx, line) in proof.lines.iter().enumerate() {
        let n = idx + 1;
        let fail = |reason: String| Rejection { line: n, reason };
        if let Some(g) =
            std::iter::once(&line.sequent.succedent).chain(&line.sequent.antecedent).find(|g| !g.is_propositional())
        {
            return Err(fail(format!("`{g}` is not propositional")));
        }
        if line.just == NdJustification::Id {
            if line.sequent.antecedent.len() != 1 || line.sequent.antecedent[0] != line.sequent.succedent {
                return Err(fail("identity needs a single antecedent equal to the succedent".into()));
            }
            continue;
        }
        let expected = nd_conclusion(&line.just, |j| (j >= 1 && j < n).then(|| proof.lines[j - 1].sequent.clone()))
            .map_err(fail)?;
        if expected != line.sequent {
            return Err(fail(format!("rule yields `{expected}`")));
        }
    }
    Ok(())
}
