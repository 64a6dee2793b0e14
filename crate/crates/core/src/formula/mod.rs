//! Formula syntax trees shared by every calculus in the workbench.
//!
//! One tree type covers propositional formulas, first-order formulas over
//! predicates and individual variables, and the `a`/`i` atoms of the
//! syllogistic fragment (which are ordinary binary atoms here).

mod defs;
mod parse;
mod path;
mod print;
mod subst;

use std::collections::BTreeSet;
use std::fmt;

pub use defs::{expand_defined, expansion_steps, Basis, DefError, Defined, Direction};
pub use parse::{parse_infix, parse_polish, ParseError};
pub use path::{Path, PathError};
pub use print::{Notation, PrintError};
pub use subst::{SubstError, SubstitutionMap};

/// A formula tree. Individual variables only occur as atom arguments and
/// quantifier binders; there are no function symbols or constants.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Impl(Box<Formula>, Box<Formula>),
    Equiv(Box<Formula>, Box<Formula>),
    /// Predicate applied to individual variables. Equality is the predicate `=`.
    Atom(String, Vec<String>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn var(name: impl Into<String>) -> Formula {
        Formula::Var(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Formula {
        Formula::Impl(Box::new(l), Box::new(r))
    }

    pub fn equiv(l: Formula, r: Formula) -> Formula {
        Formula::Equiv(Box::new(l), Box::new(r))
    }

    pub fn atom<S: Into<String>>(pred: impl Into<String>, args: impl IntoIterator<Item = S>) -> Formula {
        Formula::Atom(pred.into(), args.into_iter().map(Into::into).collect())
    }

    pub fn forall(x: impl Into<String>, body: Formula) -> Formula {
        Formula::Forall(x.into(), Box::new(body))
    }

    pub fn exists(x: impl Into<String>, body: Formula) -> Formula {
        Formula::Exists(x.into(), Box::new(body))
    }

    /// True iff the formula contains no atom and no quantifier.
    pub fn is_propositional(&self) -> bool {
        match self {
            Formula::Var(_) => true,
            Formula::Not(f) => f.is_propositional(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Impl(l, r) | Formula::Equiv(l, r) => {
                l.is_propositional() && r.is_propositional()
            }
            Formula::Atom(..) | Formula::Forall(..) | Formula::Exists(..) => false,
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Atom(..) => 1,
            Formula::Not(f) | Formula::Forall(_, f) | Formula::Exists(_, f) => 1 + f.size(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Impl(l, r) | Formula::Equiv(l, r) => {
                1 + l.size() + r.size()
            }
        }
    }

    /// Immediate subformulas, left to right. Indices match [`Path`] steps.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Var(_) | Formula::Atom(..) => vec![],
            Formula::Not(f) | Formula::Forall(_, f) | Formula::Exists(_, f) => vec![f],
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Impl(l, r) | Formula::Equiv(l, r) => {
                vec![l, r]
            }
        }
    }

    /// Splits `l -> r` into its two sides.
    pub fn as_impl(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Impl(l, r) => Some((l, r)),
            _ => None,
        }
    }

    /// Lexicographically ordered variable sets.
    pub fn variables(&self) -> Variables {
        let mut vars = Variables::default();
        let mut scope = Vec::new();
        collect_vars(self, &mut scope, &mut vars);
        vars
    }

    pub fn prop_vars(&self) -> BTreeSet<String> {
        self.variables().props
    }

    pub fn free_individual_vars(&self) -> BTreeSet<String> {
        self.variables().free
    }

    /// Whether individual variable `x` has a free occurrence.
    pub fn has_free(&self, x: &str) -> bool {
        match self {
            Formula::Var(_) => false,
            Formula::Atom(_, args) => args.iter().any(|a| a == x),
            Formula::Not(f) => f.has_free(x),
            Formula::Forall(y, f) | Formula::Exists(y, f) => y != x && f.has_free(x),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Impl(l, r) | Formula::Equiv(l, r) => {
                l.has_free(x) || r.has_free(x)
            }
        }
    }

    /// Whether `x` occurs anywhere, free, bound or as a binder.
    pub fn mentions_individual(&self, x: &str) -> bool {
        match self {
            Formula::Var(_) => false,
            Formula::Atom(_, args) => args.iter().any(|a| a == x),
            Formula::Not(f) => f.mentions_individual(x),
            Formula::Forall(y, f) | Formula::Exists(y, f) => y == x || f.mentions_individual(x),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Impl(l, r) | Formula::Equiv(l, r) => {
                l.mentions_individual(x) || r.mentions_individual(x)
            }
        }
    }

    /// Predicate symbols with their arities, sorted by name.
    pub fn predicates(&self) -> Vec<(String, usize)> {
        let mut out = BTreeSet::new();
        self.walk(&mut |f| {
            if let Formula::Atom(p, args) = f {
                out.insert((p.clone(), args.len()));
            }
        });
        out.into_iter().collect()
    }

    /// Preorder traversal.
    pub fn walk(&self, visit: &mut impl FnMut(&Formula)) {
        visit(self);
        for c in self.children() {
            c.walk(visit);
        }
    }

    /// Replaces free occurrences of individual variable `x` by `y`.
    /// Fails with the binder name when `y` is not free for `x`.
    pub fn rename_free(&self, x: &str, y: &str) -> Result<Formula, String> {
        match self {
            Formula::Var(_) => Ok(self.clone()),
            Formula::Atom(p, args) => Ok(Formula::Atom(
                p.clone(),
                args.iter().map(|a| if a == x { y.to_string() } else { a.clone() }).collect(),
            )),
            Formula::Not(f) => Ok(Formula::not(f.rename_free(x, y)?)),
            Formula::Forall(z, f) | Formula::Exists(z, f) => {
                if z == x || !f.has_free(x) {
                    return Ok(self.clone());
                }
                if z == y && x != y {
                    return Err(z.clone());
                }
                let body = f.rename_free(x, y)?;
                Ok(match self {
                    Formula::Forall(..) => Formula::forall(z.clone(), body),
                    _ => Formula::exists(z.clone(), body),
                })
            }
            Formula::And(l, r) => Ok(Formula::and(l.rename_free(x, y)?, r.rename_free(x, y)?)),
            Formula::Or(l, r) => Ok(Formula::or(l.rename_free(x, y)?, r.rename_free(x, y)?)),
            Formula::Impl(l, r) => Ok(Formula::implies(l.rename_free(x, y)?, r.rename_free(x, y)?)),
            Formula::Equiv(l, r) => Ok(Formula::equiv(l.rename_free(x, y)?, r.rename_free(x, y)?)),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print::infix(self))
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_infix(s)
    }
}

/// Variable bookkeeping returned by [`Formula::variables`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Variables {
    pub props: BTreeSet<String>,
    pub free: BTreeSet<String>,
    pub bound: BTreeSet<String>,
}

fn collect_vars(f: &Formula, scope: &mut Vec<String>, out: &mut Variables) {
    match f {
        Formula::Var(v) => {
            out.props.insert(v.clone());
        }
        Formula::Atom(_, args) => {
            for a in args {
                if scope.contains(a) {
                    out.bound.insert(a.clone());
                } else {
                    out.free.insert(a.clone());
                }
            }
        }
        Formula::Forall(x, body) | Formula::Exists(x, body) => {
            out.bound.insert(x.clone());
            scope.push(x.clone());
            collect_vars(body, scope, out);
            scope.pop();
        }
        _ => {
            for c in f.children() {
                collect_vars(c, scope, out);
            }
        }
    }
}

/// Checks the identifier shape `[a-zA-Z][a-zA-Z0-9_]*`.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        s.parse().unwrap()
    }

    #[test]
    fn variables_propositional() {
        let v = p("p -> (q | p)").variables();
        assert_eq!(v.props.into_iter().collect::<Vec<_>>(), ["p", "q"]);
        assert!(v.free.is_empty() && v.bound.is_empty());
    }

    #[test]
    fn variables_free_and_bound() {
        let v = p("(x)R(x,y)").variables();
        assert_eq!(v.free.into_iter().collect::<Vec<_>>(), ["y"]);
        assert_eq!(v.bound.into_iter().collect::<Vec<_>>(), ["x"]);
    }

    #[test]
    fn variables_mixed_occurrence() {
        let v = p("P(x) & (x)Q(x)").variables();
        assert!(v.free.contains("x"));
        assert!(v.bound.contains("x"));
    }

    #[test]
    fn rename_free_detects_capture() {
        let f = p("(y)R(x,y)");
        assert_eq!(f.rename_free("x", "y"), Err("y".to_string()));
        assert_eq!(f.rename_free("x", "z").unwrap(), p("(y)R(z,y)"));
        // bound occurrences are untouched
        assert_eq!(p("(x)P(x)").rename_free("x", "y").unwrap(), p("(x)P(x)"));
    }

    #[test]
    fn identifiers() {
        assert!(is_identifier("alpha_1"));
        assert!(!is_identifier("1a"));
        assert!(!is_identifier(""));
    }
}
