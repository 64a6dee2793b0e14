//! Two-valued semantics: valuations, truth tables, tautology decision,
//! canonical disjunctive normal forms and the functional-completeness
//! analyses (affine functions, clone closure).
//!
//! Row convention: in a table of arity `n`, bit `j` of row index `r`
//! (least significant first) is the value of the `j`-th variable in
//! lexicographic order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::formula::{expand_defined, Basis, Formula};

pub type Valuation = BTreeMap<String, bool>;

pub const DEFAULT_ARITY_CAP: usize = 20;
pub const CLOSURE_ARITY_CAP: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TruthError {
    #[error("`{0}` is not propositional")]
    NotPropositional(String),
    #[error("variable `{0}` has no value")]
    Unassigned(String),
    #[error("{arity} variables exceed the cap of {cap}")]
    ArityCap { arity: usize, cap: usize },
    #[error("expected {expected} variable names, got {got}")]
    NameCount { expected: usize, got: usize },
    #[error("variable names must be distinct and in lexicographic order")]
    NameOrder,
    #[error("a nullary function has no variable to build a formula from")]
    Nullary,
    #[error("malformed truth table `{0}`")]
    Malformed(String),
}

/// An `n`-ary Boolean function as its `2^n` table entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruthFunction {
    arity: usize,
    table: Vec<bool>,
}

impl TruthFunction {
    pub fn new(arity: usize, table: Vec<bool>) -> Result<Self, TruthError> {
        if table.len() != 1usize << arity {
            return Err(TruthError::Malformed(format!("{} entries for arity {arity}", table.len())));
        }
        Ok(TruthFunction { arity, table })
    }

    /// Table from a bit pattern: bit `r` of `bits` is row `r`.
    pub fn from_bits(arity: usize, bits: u64) -> Self {
        let table = (0..1usize << arity).map(|r| bits >> r & 1 == 1).collect();
        TruthFunction { arity, table }
    }

    pub fn bits(&self) -> u64 {
        self.table.iter().enumerate().fold(0, |acc, (r, &b)| acc | (b as u64) << r)
    }

    /// The `j`-th projection of arity `n`.
    pub fn projection(arity: usize, j: usize) -> Self {
        let table = (0..1usize << arity).map(|r| r >> j & 1 == 1).collect();
        TruthFunction { arity, table }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    pub fn value(&self, row: usize) -> bool {
        self.table[row]
    }

    /// Coefficients of the algebraic normal form (Möbius transform).
    pub fn anf(&self) -> Vec<bool> {
        let mut c = self.table.clone();
        for j in 0..self.arity {
            for r in 0..c.len() {
                if r >> j & 1 == 1 {
                    c[r] ^= c[r ^ (1 << j)];
                }
            }
        }
        c
    }
}

impl fmt::Display for TruthFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.arity)?;
        for &b in &self.table {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for TruthFunction {
    type Err = TruthError;

    /// Parses `arity:bits`, e.g. `2:0001` for conjunction.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || TruthError::Malformed(s.to_string());
        let (arity, bits) = s.trim().split_once(':').ok_or_else(bad)?;
        let arity: usize = arity.trim().parse().map_err(|_| bad())?;
        if arity > 30 {
            return Err(bad());
        }
        let table = bits
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(bad()),
            })
            .collect::<Result<Vec<_>, _>>()?;
        TruthFunction::new(arity, table).map_err(|_| bad())
    }
}

/// Classical evaluation of a propositional formula.
pub fn eval(f: &Formula, v: &Valuation) -> Result<bool, TruthError> {
    Ok(match f {
        Formula::Var(x) => *v.get(x).ok_or_else(|| TruthError::Unassigned(x.clone()))?,
        Formula::Not(a) => !eval(a, v)?,
        Formula::And(l, r) => eval(l, v)? & eval(r, v)?,
        Formula::Or(l, r) => eval(l, v)? | eval(r, v)?,
        Formula::Impl(l, r) => !eval(l, v)? | eval(r, v)?,
        Formula::Equiv(l, r) => eval(l, v)? == eval(r, v)?,
        Formula::Atom(..) | Formula::Forall(..) | Formula::Exists(..) => {
            return Err(TruthError::NotPropositional(f.to_string()))
        }
    })
}

/// A formula with variables replaced by bit positions, for fast row evaluation.
enum Compiled {
    Bit(usize),
    Not(Box<Compiled>),
    And(Box<Compiled>, Box<Compiled>),
    Or(Box<Compiled>, Box<Compiled>),
    Impl(Box<Compiled>, Box<Compiled>),
    Equiv(Box<Compiled>, Box<Compiled>),
}

impl Compiled {
    fn new(f: &Formula, vars: &[String]) -> Result<Self, TruthError> {
        let c = |g: &Formula| Compiled::new(g, vars).map(Box::new);
        Ok(match f {
            Formula::Var(x) => {
                Compiled::Bit(vars.iter().position(|v| v == x).ok_or_else(|| TruthError::Unassigned(x.clone()))?)
            }
            Formula::Not(a) => Compiled::Not(c(a)?),
            Formula::And(l, r) => Compiled::And(c(l)?, c(r)?),
            Formula::Or(l, r) => Compiled::Or(c(l)?, c(r)?),
            Formula::Impl(l, r) => Compiled::Impl(c(l)?, c(r)?),
            Formula::Equiv(l, r) => Compiled::Equiv(c(l)?, c(r)?),
            _ => return Err(TruthError::NotPropositional(f.to_string())),
        })
    }

    fn eval(&self, row: usize) -> bool {
        match self {
            Compiled::Bit(j) => row >> j & 1 == 1,
            Compiled::Not(a) => !a.eval(row),
            Compiled::And(l, r) => l.eval(row) && r.eval(row),
            Compiled::Or(l, r) => l.eval(row) || r.eval(row),
            Compiled::Impl(l, r) => !l.eval(row) || r.eval(row),
            Compiled::Equiv(l, r) => l.eval(row) == r.eval(row),
        }
    }
}

/// Table of `f` over its own variables in lexicographic order.
pub fn truth_table(f: &Formula) -> Result<TruthFunction, TruthError> {
    truth_table_capped(f, DEFAULT_ARITY_CAP)
}

pub fn truth_table_capped(f: &Formula, cap: usize) -> Result<TruthFunction, TruthError> {
    if !f.is_propositional() {
        return Err(TruthError::NotPropositional(f.to_string()));
    }
    let vars: Vec<String> = f.prop_vars().into_iter().collect();
    if vars.len() > cap {
        return Err(TruthError::ArityCap { arity: vars.len(), cap });
    }
    truth_table_over(f, &vars)
}

/// Table of `f` over an explicit variable list; `vars[j]` is bit `j`.
/// Variables of `vars` that `f` does not mention are dummies.
pub fn truth_table_over(f: &Formula, vars: &[String]) -> Result<TruthFunction, TruthError> {
    if vars.len() > 30 {
        return Err(TruthError::ArityCap { arity: vars.len(), cap: 30 });
    }
    let c = Compiled::new(f, vars)?;
    let table = (0..1usize << vars.len()).map(|r| c.eval(r)).collect();
    Ok(TruthFunction { arity: vars.len(), table })
}

/// The valuation encoded by `row` over `vars`.
pub fn row_valuation(vars: &[String], row: usize) -> Valuation {
    vars.iter().enumerate().map(|(j, v)| (v.clone(), row >> j & 1 == 1)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TautologyVerdict {
    Tautology,
    /// The least-index falsifying row.
    Countermodel(Valuation),
}

impl TautologyVerdict {
    pub fn is_tautology(&self) -> bool {
        matches!(self, TautologyVerdict::Tautology)
    }
}

pub fn is_tautology(f: &Formula) -> Result<TautologyVerdict, TruthError> {
    let tf = truth_table(f)?;
    let vars: Vec<String> = f.prop_vars().into_iter().collect();
    Ok(match tf.table.iter().position(|&b| !b) {
        None => TautologyVerdict::Tautology,
        Some(row) => TautologyVerdict::Countermodel(row_valuation(&vars, row)),
    })
}

/// Whether every valuation satisfying all `premises` satisfies `conclusion`.
pub fn entails(premises: &[Formula], conclusion: &Formula) -> Result<bool, TruthError> {
    let mut vars = conclusion.prop_vars();
    for p in premises {
        vars.extend(p.prop_vars());
    }
    let vars: Vec<String> = vars.into_iter().collect();
    if vars.len() > DEFAULT_ARITY_CAP {
        return Err(TruthError::ArityCap { arity: vars.len(), cap: DEFAULT_ARITY_CAP });
    }
    let premises = premises.iter().map(|p| Compiled::new(p, &vars)).collect::<Result<Vec<_>, _>>()?;
    let conclusion = Compiled::new(conclusion, &vars)?;
    Ok((0..1usize << vars.len()).all(|r| !premises.iter().all(|p| p.eval(r)) || conclusion.eval(r)))
}

/// Canonical DNF read off the table: one minterm per true row in ascending
/// row order, literals in `var_names` order. `var_names` must be strictly
/// ascending so that the result's table over `var_names` is `tf`. The
/// constantly false function yields `v & ~v` for the first variable.
pub fn synthesize_dnf(tf: &TruthFunction, var_names: &[String]) -> Result<Formula, TruthError> {
    if var_names.len() != tf.arity {
        return Err(TruthError::NameCount { expected: tf.arity, got: var_names.len() });
    }
    if tf.arity == 0 {
        return Err(TruthError::Nullary);
    }
    if var_names.windows(2).any(|w| w[0] >= w[1]) {
        return Err(TruthError::NameOrder);
    }
    let minterm = |row: usize| {
        var_names
            .iter()
            .enumerate()
            .map(|(j, v)| {
                let lit = Formula::var(v.clone());
                if row >> j & 1 == 1 {
                    lit
                } else {
                    Formula::not(lit)
                }
            })
            .reduce(Formula::and)
            .expect("arity >= 1")
    };
    let dnf = (0..tf.table.len()).filter(|&r| tf.table[r]).map(minterm).reduce(Formula::or);
    Ok(dnf.unwrap_or_else(|| {
        let v = Formula::var(var_names[0].clone());
        Formula::and(v.clone(), Formula::not(v))
    }))
}

/// Rewrites `f` over `|` and `~` only.
pub fn to_or_not(f: &Formula) -> Formula {
    expand_defined(f, Basis::OrNot)
}

/// True iff the algebraic normal form has degree at most one.
pub fn is_affine(tf: &TruthFunction) -> bool {
    tf.anf().iter().enumerate().all(|(mono, &c)| !c || mono.count_ones() <= 1)
}

/// Connectives available to [`closure_under`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Connective {
    Not,
    And,
    Or,
    Impl,
    Equiv,
    Xor,
}

impl Connective {
    fn unary(self) -> bool {
        self == Connective::Not
    }

    fn apply(self, a: u64, b: u64, mask: u64) -> u64 {
        match self {
            Connective::Not => !a & mask,
            Connective::And => a & b,
            Connective::Or => a | b,
            Connective::Impl => (!a | b) & mask,
            Connective::Equiv => !(a ^ b) & mask,
            Connective::Xor => a ^ b,
        }
    }
}

impl FromStr for Connective {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim() {
            "not" | "~" => Connective::Not,
            "and" | "&" => Connective::And,
            "or" | "|" => Connective::Or,
            "impl" | "->" => Connective::Impl,
            "equiv" | "<->" => Connective::Equiv,
            "xor" => Connective::Xor,
            other => return Err(format!("unknown connective `{other}`")),
        })
    }
}

/// The least set of `arity`-ary functions containing the projections and
/// closed under the given connectives.
pub fn closure_under(basis: &[Connective], arity: usize) -> Result<BTreeSet<TruthFunction>, TruthError> {
    if arity > CLOSURE_ARITY_CAP {
        return Err(TruthError::ArityCap { arity, cap: CLOSURE_ARITY_CAP });
    }
    let rows = 1usize << arity;
    let mask = if rows == 64 { u64::MAX } else { (1u64 << rows) - 1 };
    let mut seen: BTreeSet<u64> = (0..arity).map(|j| TruthFunction::projection(arity, j).bits()).collect();
    let mut frontier: Vec<u64> = seen.iter().copied().collect();
    while !frontier.is_empty() {
        let known: Vec<u64> = seen.iter().copied().collect();
        let mut next = Vec::new();
        for &c in basis {
            if c.unary() {
                for &a in &frontier {
                    let r = c.apply(a, 0, mask);
                    if seen.insert(r) {
                        next.push(r);
                    }
                }
                continue;
            }
            // at least one argument from the frontier
            for &a in &frontier {
                for &b in &known {
                    for r in [c.apply(a, b, mask), c.apply(b, a, mask)] {
                        if seen.insert(r) {
                            next.push(r);
                        }
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(seen.into_iter().map(|b| TruthFunction::from_bits(arity, b)).collect())
}
