use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::{Formula, Path};

/// Simultaneous substitution of formulas for propositional variables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubstitutionMap(pub BTreeMap<String, Formula>);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubstError {
    #[error("substitution captures `{var}`: it is bound by the quantifier at {binder}")]
    Capture { var: String, binder: Path },
}

impl SubstitutionMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, var: impl Into<String>, f: Formula) -> Self {
        self.0.insert(var.into(), f);
        self
    }

    pub fn get(&self, var: &str) -> Option<&Formula> {
        self.0.get(var)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Formula)> {
        self.0.iter()
    }

    /// The map that applies `self` first and then `outer`:
    /// `outer.apply(self.apply(f)) == self.then(outer).apply(f)` for
    /// propositional `f`.
    pub fn then(&self, outer: &SubstitutionMap) -> SubstitutionMap {
        let mut out = BTreeMap::new();
        for (v, f) in &self.0 {
            out.insert(v.clone(), simple_apply(f, outer));
        }
        for (v, f) in &outer.0 {
            out.entry(v.clone()).or_insert_with(|| f.clone());
        }
        SubstitutionMap(out)
    }
}

impl FromIterator<(String, Formula)> for SubstitutionMap {
    fn from_iter<T: IntoIterator<Item = (String, Formula)>>(iter: T) -> Self {
        SubstitutionMap(iter.into_iter().collect())
    }
}

impl fmt::Display for SubstitutionMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(v, g)| format!("{v}:={g}")).collect();
        f.write_str(&parts.join(", "))
    }
}

fn simple_apply(f: &Formula, m: &SubstitutionMap) -> Formula {
    apply(f, m, &mut Vec::new(), &mut Vec::new()).expect("no binders, no capture")
}

impl Formula {
    /// Replaces every mapped propositional variable simultaneously. A
    /// replacement whose free individual variables would fall under a
    /// quantifier at the substitution site is rejected.
    pub fn substitute(&self, m: &SubstitutionMap) -> Result<Formula, SubstError> {
        if m.is_empty() {
            return Ok(self.clone());
        }
        apply(self, m, &mut Vec::new(), &mut Vec::new())
    }
}

fn apply(
    f: &Formula,
    m: &SubstitutionMap,
    scope: &mut Vec<(String, Path)>,
    here: &mut Vec<u8>,
) -> Result<Formula, SubstError> {
    let child = |g: &Formula, i: u8, scope: &mut Vec<(String, Path)>, here: &mut Vec<u8>| {
        here.push(i);
        let r = apply(g, m, scope, here);
        here.pop();
        r
    };
    Ok(match f {
        Formula::Var(v) => match m.get(v) {
            Some(g) => {
                if !scope.is_empty() {
                    for x in g.free_individual_vars() {
                        if let Some((_, binder)) = scope.iter().rev().find(|(b, _)| *b == x) {
                            return Err(SubstError::Capture { var: x, binder: binder.clone() });
                        }
                    }
                }
                g.clone()
            }
            None => f.clone(),
        },
        Formula::Atom(..) => f.clone(),
        Formula::Not(a) => Formula::not(child(a, 0, scope, here)?),
        Formula::And(l, r) => Formula::and(child(l, 0, scope, here)?, child(r, 1, scope, here)?),
        Formula::Or(l, r) => Formula::or(child(l, 0, scope, here)?, child(r, 1, scope, here)?),
        Formula::Impl(l, r) => Formula::implies(child(l, 0, scope, here)?, child(r, 1, scope, here)?),
        Formula::Equiv(l, r) => Formula::equiv(child(l, 0, scope, here)?, child(r, 1, scope, here)?),
        Formula::Forall(x, a) | Formula::Exists(x, a) => {
            scope.push((x.clone(), Path(here.clone())));
            let body = child(a, 0, scope, here);
            scope.pop();
            let body = body?;
            if matches!(f, Formula::Forall(..)) {
                Formula::forall(x.clone(), body)
            } else {
                Formula::exists(x.clone(), body)
            }
        }
    })
}
