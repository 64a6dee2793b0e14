//! Defined connectives and their definitional equations.
//!
//! Two bases are supported. With `or_not` (the Hilbert system) `~` and `|`
//! are primitive:
//!
//! ```text
//! P -> Q   :=  ~P | Q
//! P & Q    :=  ~(~P | ~Q)
//! P <-> Q  :=  (P -> Q) & (Q -> P)
//! ```
//!
//! With `impl_not` (the sequent calculus) `~` and `->` are primitive:
//!
//! ```text
//! P | Q    :=  ~P -> Q
//! P & Q    :=  ~(P -> ~Q)
//! P <-> Q  :=  (P -> Q) & (Q -> P)
//! ```
//!
//! In both, `(Ex)A := ~(x)~A`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::{Formula, Path, PathError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    OrNot,
    ImplNot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Defined {
    Impl,
    And,
    Equiv,
    Or,
    Exists,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Expand,
    Fold,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DefError {
    #[error("`{0}` is primitive in this basis")]
    Primitive(Defined),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error("no {conn} {what} at {path}")]
    NoRedex { conn: Defined, what: &'static str, path: Path },
}

impl fmt::Display for Defined {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Defined::Impl => "impl",
            Defined::And => "and",
            Defined::Equiv => "equiv",
            Defined::Or => "or",
            Defined::Exists => "exists",
        })
    }
}

impl FromStr for Defined {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "impl" => Defined::Impl,
            "and" => Defined::And,
            "equiv" => Defined::Equiv,
            "or" => Defined::Or,
            "exists" => Defined::Exists,
            _ => return Err(format!("unknown connective `{s}`")),
        })
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Expand => "expand",
            Direction::Fold => "fold",
        })
    }
}

impl FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "expand" => Ok(Direction::Expand),
            "fold" => Ok(Direction::Fold),
            _ => Err(format!("unknown direction `{s}`")),
        }
    }
}

impl Basis {
    pub fn defines(self, conn: Defined) -> bool {
        !matches!((self, conn), (Basis::OrNot, Defined::Or) | (Basis::ImplNot, Defined::Impl))
    }

    /// The definiens of `f`, if `f`'s main connective is `conn`.
    pub fn expand(self, conn: Defined, f: &Formula) -> Option<Formula> {
        use Formula as F;
        if !self.defines(conn) {
            return None;
        }
        let out = match (conn, f) {
            (Defined::Impl, F::Impl(p, q)) => F::or(F::not((**p).clone()), (**q).clone()),
            (Defined::Or, F::Or(p, q)) => F::implies(F::not((**p).clone()), (**q).clone()),
            (Defined::And, F::And(p, q)) => match self {
                Basis::OrNot => F::not(F::or(F::not((**p).clone()), F::not((**q).clone()))),
                Basis::ImplNot => F::not(F::implies((**p).clone(), F::not((**q).clone()))),
            },
            (Defined::Equiv, F::Equiv(p, q)) => {
                F::and(F::implies((**p).clone(), (**q).clone()), F::implies((**q).clone(), (**p).clone()))
            }
            (Defined::Exists, F::Exists(x, a)) => F::not(F::forall(x.clone(), F::not((**a).clone()))),
            _ => return None,
        };
        Some(out)
    }

    /// The definiendum of `f`, if `f` has the shape of `conn`'s definiens.
    pub fn fold(self, conn: Defined, f: &Formula) -> Option<Formula> {
        use Formula as F;
        if !self.defines(conn) {
            return None;
        }
        let out = match (conn, self, f) {
            (Defined::Impl, _, F::Or(np, q)) => match &**np {
                F::Not(p) => F::implies((**p).clone(), (**q).clone()),
                _ => return None,
            },
            (Defined::Or, _, F::Impl(np, q)) => match &**np {
                F::Not(p) => F::or((**p).clone(), (**q).clone()),
                _ => return None,
            },
            (Defined::And, Basis::OrNot, F::Not(inner)) => match &**inner {
                F::Or(np, nq) => match (&**np, &**nq) {
                    (F::Not(p), F::Not(q)) => F::and((**p).clone(), (**q).clone()),
                    _ => return None,
                },
                _ => return None,
            },
            (Defined::And, Basis::ImplNot, F::Not(inner)) => match &**inner {
                F::Impl(p, nq) => match &**nq {
                    F::Not(q) => F::and((**p).clone(), (**q).clone()),
                    _ => return None,
                },
                _ => return None,
            },
            (Defined::Equiv, _, F::And(l, r)) => match (&**l, &**r) {
                (F::Impl(p, q), F::Impl(q2, p2)) if p == p2 && q == q2 => F::equiv((**p).clone(), (**q).clone()),
                _ => return None,
            },
            (Defined::Exists, _, F::Not(inner)) => match &**inner {
                F::Forall(x, na) => match &**na {
                    F::Not(a) => F::exists(x.clone(), (**a).clone()),
                    _ => return None,
                },
                _ => return None,
            },
            _ => return None,
        };
        Some(out)
    }

    /// Rewrites the subformula at `path` by one definitional equation.
    pub fn rewrite(self, f: &Formula, path: &Path, conn: Defined, dir: Direction) -> Result<Formula, DefError> {
        if !self.defines(conn) {
            return Err(DefError::Primitive(conn));
        }
        let sub = f.at(path).ok_or_else(|| PathError::OutOfRange(path.clone()))?;
        let new = match dir {
            Direction::Expand => self.expand(conn, sub),
            Direction::Fold => self.fold(conn, sub),
        };
        let new = new.ok_or_else(|| DefError::NoRedex {
            conn,
            what: if dir == Direction::Expand { "connective" } else { "definiens" },
            path: path.clone(),
        })?;
        Ok(f.replace_at(path, new)?)
    }

    fn main_defined(self, f: &Formula) -> Option<Defined> {
        let conn = match f {
            Formula::Impl(..) => Defined::Impl,
            Formula::And(..) => Defined::And,
            Formula::Equiv(..) => Defined::Equiv,
            Formula::Or(..) => Defined::Or,
            _ => return None,
        };
        self.defines(conn).then_some(conn)
    }
}

/// Replaces every defined propositional connective by its definiens until
/// only the basis connectives remain. Quantifiers and atoms are left alone.
pub fn expand_defined(f: &Formula, basis: Basis) -> Formula {
    use Formula as F;
    let rec = |g: &Formula| expand_defined(g, basis);
    let shallow = match f {
        F::Var(_) | F::Atom(..) => return f.clone(),
        F::Not(a) => F::not(rec(a)),
        F::And(l, r) => F::and(rec(l), rec(r)),
        F::Or(l, r) => F::or(rec(l), rec(r)),
        F::Impl(l, r) => F::implies(rec(l), rec(r)),
        F::Equiv(l, r) => F::equiv(rec(l), rec(r)),
        F::Forall(x, a) => return F::forall(x.clone(), rec(a)),
        F::Exists(x, a) => return F::exists(x.clone(), rec(a)),
    };
    match basis.main_defined(&shallow) {
        Some(conn) => {
            let once = basis.expand(conn, &shallow).expect("main connective matches");
            expand_defined(&once, basis)
        }
        None => shallow,
    }
}

/// The single-step expansions that turn `f` into `expand_defined(f, basis)`,
/// outermost first. Replaying them as folds in reverse order restores `f`.
pub fn expansion_steps(f: &Formula, basis: Basis) -> Vec<(Path, Defined)> {
    let mut steps = Vec::new();
    let mut cur = f.clone();
    while let Some((path, conn)) = first_defined(&cur, basis, &mut Vec::new()) {
        cur = basis.rewrite(&cur, &path, conn, Direction::Expand).expect("redex found by search");
        steps.push((path, conn));
    }
    steps
}

fn first_defined(f: &Formula, basis: Basis, here: &mut Vec<u8>) -> Option<(Path, Defined)> {
    if let Some(conn) = basis.main_defined(f) {
        return Some((Path(here.clone()), conn));
    }
    for (i, c) in f.children().into_iter().enumerate() {
        here.push(i as u8);
        let found = first_defined(c, basis, here);
        here.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}
