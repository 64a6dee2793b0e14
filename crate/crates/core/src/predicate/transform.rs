//! Equivalence-preserving rewrites of quantified formulas: renaming a bound
//! variable, permuting adjacent quantifiers of the same kind, and the laws
//! of passage.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::formula::{Formula, Path};

/// The laws of passage, read left to right:
///
/// ```text
/// forall-and   (x)(φ & ψ)  <->  (x)φ & ψ
/// forall-or    (x)(φ | ψ)  <->  (x)φ | ψ
/// exists-and   (Ex)(φ & ψ) <->  (Ex)φ & ψ
/// exists-or    (Ex)(φ | ψ) <->  (Ex)φ | ψ
/// not-forall   ~(x)φ       <->  (Ex)~φ
/// not-exists   ~(Ex)φ      <->  (x)~φ
/// ```
///
/// The first four require `x` not free in `ψ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PassageLaw {
    ForallAnd,
    ForallOr,
    ExistsAnd,
    ExistsOr,
    NotForall,
    NotExists,
}

impl PassageLaw {
    pub const ALL: [PassageLaw; 6] = [
        PassageLaw::ForallAnd,
        PassageLaw::ForallOr,
        PassageLaw::ExistsAnd,
        PassageLaw::ExistsOr,
        PassageLaw::NotForall,
        PassageLaw::NotExists,
    ];
}

impl fmt::Display for PassageLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PassageLaw::ForallAnd => "forall-and",
            PassageLaw::ForallOr => "forall-or",
            PassageLaw::ExistsAnd => "exists-and",
            PassageLaw::ExistsOr => "exists-or",
            PassageLaw::NotForall => "not-forall",
            PassageLaw::NotExists => "not-exists",
        })
    }
}

impl FromStr for PassageLaw {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PassageLaw::ALL.into_iter().find(|l| l.to_string() == s).ok_or_else(|| format!("unknown law `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransformStep {
    /// Renames the variable bound by the quantifier at `path` to `to`.
    RenameBound { path: Path, to: String },
    /// Swaps the two adjacent quantifiers of the same kind starting at `path`.
    PermuteLike { path: Path },
    /// Applies a law of passage at `path`, left to right or (with
    /// `reverse`) right to left.
    Passage { law: PassageLaw, reverse: bool, path: Path },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransformError {
    #[error("path {0} does not address a subformula")]
    Path(Path),
    #[error("no quantifier at {0}")]
    NotQuantifier(Path),
    #[error("side condition violated: {to} occurs in the scope of the quantifier")]
    RenameClash { to: String },
    #[error("no pair of adjacent quantifiers of the same kind at {0}")]
    NotPermutable(Path),
    #[error("no {law} redex at {path}")]
    NoRedex { law: PassageLaw, path: Path },
    #[error("side condition violated: {var} free in {bystander}")]
    FreeInBystander { var: String, bystander: Formula },
}

pub fn transform(f: &Formula, step: &TransformStep) -> Result<Formula, TransformError> {
    let path = match step {
        TransformStep::RenameBound { path, .. }
        | TransformStep::PermuteLike { path }
        | TransformStep::Passage { path, .. } => path,
    };
    let sub = f.at(path).ok_or_else(|| TransformError::Path(path.clone()))?;
    let new = match step {
        TransformStep::RenameBound { to, .. } => rename(sub, path, to)?,
        TransformStep::PermuteLike { .. } => permute(sub, path)?,
        TransformStep::Passage { law, reverse, .. } => passage(sub, *law, *reverse, path)?,
    };
    Ok(f.replace_at(path, new).expect("path checked"))
}

fn rename(f: &Formula, path: &Path, to: &str) -> Result<Formula, TransformError> {
    let (x, body, universal) = match f {
        Formula::Forall(x, b) => (x, b, true),
        Formula::Exists(x, b) => (x, b, false),
        _ => return Err(TransformError::NotQuantifier(path.clone())),
    };
    if to == x {
        return Ok(f.clone());
    }
    if body.mentions_individual(to) {
        return Err(TransformError::RenameClash { to: to.into() });
    }
    let body = body.rename_free(x, to).expect("fresh variable cannot be captured");
    Ok(if universal { Formula::forall(to, body) } else { Formula::exists(to, body) })
}

fn permute(f: &Formula, path: &Path) -> Result<Formula, TransformError> {
    match f {
        Formula::Forall(x, inner) => match &**inner {
            Formula::Forall(y, body) => Ok(Formula::forall(y.clone(), Formula::forall(x.clone(), (**body).clone()))),
            _ => Err(TransformError::NotPermutable(path.clone())),
        },
        Formula::Exists(x, inner) => match &**inner {
            Formula::Exists(y, body) => Ok(Formula::exists(y.clone(), Formula::exists(x.clone(), (**body).clone()))),
            _ => Err(TransformError::NotPermutable(path.clone())),
        },
        _ => Err(TransformError::NotPermutable(path.clone())),
    }
}

fn passage(f: &Formula, law: PassageLaw, reverse: bool, path: &Path) -> Result<Formula, TransformError> {
    use PassageLaw as L;
    let no = || TransformError::NoRedex { law, path: path.clone() };
    let quant = |universal: bool, x: &str, body: Formula| {
        if universal {
            Formula::forall(x, body)
        } else {
            Formula::exists(x, body)
        }
    };
    let bin = |and: bool, a: Formula, b: Formula| if and { Formula::and(a, b) } else { Formula::or(a, b) };
    let check = |x: &str, psi: &Formula| {
        if psi.has_free(x) {
            Err(TransformError::FreeInBystander { var: x.into(), bystander: psi.clone() })
        } else {
            Ok(())
        }
    };
    match law {
        L::ForallAnd | L::ForallOr | L::ExistsAnd | L::ExistsOr => {
            let universal = matches!(law, L::ForallAnd | L::ForallOr);
            let and = matches!(law, L::ForallAnd | L::ExistsAnd);
            if !reverse {
                let (x, body) = match (f, universal) {
                    (Formula::Forall(x, b), true) | (Formula::Exists(x, b), false) => (x, b),
                    _ => return Err(no()),
                };
                let (phi, psi) = match (&**body, and) {
                    (Formula::And(a, b), true) | (Formula::Or(a, b), false) => (a, b),
                    _ => return Err(no()),
                };
                check(x, psi)?;
                Ok(bin(and, quant(universal, x, (**phi).clone()), (**psi).clone()))
            } else {
                let (q, psi) = match (f, and) {
                    (Formula::And(a, b), true) | (Formula::Or(a, b), false) => (a, b),
                    _ => return Err(no()),
                };
                let (x, phi) = match (&**q, universal) {
                    (Formula::Forall(x, b), true) | (Formula::Exists(x, b), false) => (x, b),
                    _ => return Err(no()),
                };
                check(x, psi)?;
                Ok(quant(universal, x, bin(and, (**phi).clone(), (**psi).clone())))
            }
        }
        L::NotForall | L::NotExists => {
            let universal = law == L::NotForall;
            if !reverse {
                match f {
                    Formula::Not(q) => match (&**q, universal) {
                        (Formula::Forall(x, b), true) | (Formula::Exists(x, b), false) => {
                            Ok(quant(!universal, x, Formula::not((**b).clone())))
                        }
                        _ => Err(no()),
                    },
                    _ => Err(no()),
                }
            } else {
                match (f, universal) {
                    (Formula::Exists(x, b), true) | (Formula::Forall(x, b), false) => match &**b {
                        Formula::Not(phi) => Ok(Formula::not(quant(universal, x, (**phi).clone()))),
                        _ => Err(no()),
                    },
                    _ => Err(no()),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        s.parse().unwrap()
    }

    fn run(src: &str, step: TransformStep) -> Result<String, TransformError> {
        transform(&f(src), &step).map(|g| g.to_string())
    }

    #[test]
    fn examples() {
        assert_eq!(
            run("(x)P(x)", TransformStep::RenameBound { path: Path::root(), to: "z".into() }).unwrap(),
            "(z)P(z)"
        );
        assert_eq!(run("(x)(y)R(x,y)", TransformStep::PermuteLike { path: Path::root() }).unwrap(), "(y)(x)R(x,y)");
        let step = TransformStep::Passage { law: PassageLaw::NotForall, reverse: false, path: Path::root() };
        assert_eq!(run("~(x)P(x)", step).unwrap(), "(Ex)~P(x)");
    }

    #[test]
    fn side_conditions() {
        let step = TransformStep::RenameBound { path: Path::root(), to: "y".into() };
        assert_eq!(run("(x)R(x,y)", step), Err(TransformError::RenameClash { to: "y".into() }));
        let step = TransformStep::Passage { law: PassageLaw::ForallOr, reverse: false, path: Path::root() };
        let err = run("(x)(P(x) | Q(x))", step).unwrap_err();
        assert_eq!(err.to_string(), "side condition violated: x free in Q(x)");
        let step = TransformStep::PermuteLike { path: Path::root() };
        assert!(matches!(run("(x)(Ey)R(x,y)", step), Err(TransformError::NotPermutable(_))));
    }

    #[test]
    fn reverse_directions() {
        let step = TransformStep::Passage { law: PassageLaw::ExistsAnd, reverse: true, path: Path(vec![1]) };
        assert_eq!(run("p -> (Ex)P(x) & Q(y)", step).unwrap(), "p -> (Ex)(P(x) & Q(y))");
        let step = TransformStep::Passage { law: PassageLaw::NotExists, reverse: true, path: Path::root() };
        assert_eq!(run("(x)~P(x)", step).unwrap(), "~(Ex)P(x)");
    }
}
