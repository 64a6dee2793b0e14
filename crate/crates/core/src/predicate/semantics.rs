//! Finite structures: evaluation, bounded countermodel search and the
//! decision procedure for monadic formulas.
//!
//! Domains are nonempty, `{0, ..., d-1}`. The atom `x = y` is identity.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::formula::Formula;

/// Largest number of table bits (predicate tuples plus propositional
/// variables) enumerated at one domain size.
pub const SEARCH_BIT_CAP: usize = 26;

/// Monadic formulas with more predicates than this are refused.
pub const MONADIC_PREDICATE_CAP: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FoError {
    #[error("`{0}` has no interpretation")]
    Uninterpreted(String),
    #[error("individual variable `{0}` has no value")]
    Unassigned(String),
    #[error("`{0}` lies outside the domain")]
    OutOfDomain(String),
    #[error("predicate `{0}` is used with different arities")]
    MixedArity(String),
    #[error("predicate `{0}` is not unary")]
    NotMonadic(String),
    #[error("equality is outside the monadic fragment")]
    Equality,
    #[error("{bits} table bits at domain size {domain} exceed the cap of {cap}")]
    TooLarge { bits: usize, domain: usize, cap: usize },
    #[error("{0} predicates exceed the monadic cap of {MONADIC_PREDICATE_CAP}")]
    TooManyPredicates(usize),
    #[error("the domain must be nonempty")]
    EmptyDomain,
    #[error("malformed interpretation: {0}")]
    Malformed(String),
}

/// A finite structure with values for propositional and free individual
/// variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Interpretation {
    pub domain: usize,
    pub predicates: BTreeMap<String, BTreeSet<Vec<usize>>>,
    pub props: BTreeMap<String, bool>,
    pub env: BTreeMap<String, usize>,
}

pub fn eval_fo(f: &Formula, i: &Interpretation) -> Result<bool, FoError> {
    if i.domain == 0 {
        return Err(FoError::EmptyDomain);
    }
    let mut env = i.env.clone();
    if let Some((x, _)) = env.iter().find(|(_, v)| **v >= i.domain) {
        return Err(FoError::OutOfDomain(x.clone()));
    }
    eval_rec(f, i, &mut env)
}

fn eval_rec(f: &Formula, i: &Interpretation, env: &mut BTreeMap<String, usize>) -> Result<bool, FoError> {
    let quant = |x: &String, body: &Formula, env: &mut BTreeMap<String, usize>, all: bool| {
        let saved = env.get(x).copied();
        let mut result = all;
        for e in 0..i.domain {
            env.insert(x.clone(), e);
            let v = eval_rec(body, i, env);
            match v {
                Ok(b) if b != all => {
                    result = !all;
                    break;
                }
                Ok(_) => {}
                Err(e) => {
                    restore(env, x, saved);
                    return Err(e);
                }
            }
        }
        restore(env, x, saved);
        Ok(result)
    };
    Ok(match f {
        Formula::Var(p) => *i.props.get(p).ok_or_else(|| FoError::Uninterpreted(p.clone()))?,
        Formula::Atom(p, args) => {
            let vals = args
                .iter()
                .map(|a| env.get(a).copied().ok_or_else(|| FoError::Unassigned(a.clone())))
                .collect::<Result<Vec<_>, _>>()?;
            if p == "=" && vals.len() == 2 {
                vals[0] == vals[1]
            } else {
                i.predicates.get(p).ok_or_else(|| FoError::Uninterpreted(p.clone()))?.contains(&vals)
            }
        }
        Formula::Not(a) => !eval_rec(a, i, env)?,
        Formula::And(a, b) => eval_rec(a, i, env)? && eval_rec(b, i, env)?,
        Formula::Or(a, b) => eval_rec(a, i, env)? || eval_rec(b, i, env)?,
        Formula::Impl(a, b) => !eval_rec(a, i, env)? || eval_rec(b, i, env)?,
        Formula::Equiv(a, b) => eval_rec(a, i, env)? == eval_rec(b, i, env)?,
        Formula::Forall(x, body) => quant(x, body, env, true)?,
        Formula::Exists(x, body) => quant(x, body, env, false)?,
    })
}

fn restore(env: &mut BTreeMap<String, usize>, x: &str, saved: Option<usize>) {
    match saved {
        Some(v) => env.insert(x.to_string(), v),
        None => env.remove(x),
    };
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchVerdict {
    /// No countermodel up to the bound. Not a proof of validity.
    NoCountermodel,
    Countermodel(Interpretation),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonadicVerdict {
    Valid,
    Countermodel(Interpretation),
}

/// Signature of a formula: predicates (name, arity) without equality,
/// propositional variables and free individual variables, all sorted.
struct Signature {
    preds: Vec<(String, usize)>,
    props: Vec<String>,
    free: Vec<String>,
}

impl Signature {
    fn of(f: &Formula) -> Result<Self, FoError> {
        let all = f.predicates();
        if let Some(w) = all.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(FoError::MixedArity(w[0].0.clone()));
        }
        let preds = all.into_iter().filter(|(p, _)| p != "=").collect();
        let vars = f.variables();
        Ok(Signature { preds, props: vars.props.into_iter().collect(), free: vars.free.into_iter().collect() })
    }
}

/// Tuples of `0..d` of length `n`, lexicographic.
fn tuples(d: usize, n: usize) -> Vec<Vec<usize>> {
    let total = d.pow(n as u32);
    (0..total)
        .map(|mut k| {
            let mut t = vec![0; n];
            for slot in t.iter_mut().rev() {
                *slot = k % d;
                k /= d;
            }
            t
        })
        .collect()
}

/// Interpretations of the signature over a domain of size `d`, in the
/// canonical order: a counter whose lowest bits are the tuples of the
/// first predicate (lexicographic), then the other predicates by name, then
/// the propositional variables; for each, the free-variable values as an
/// odometer with the last variable fastest.
fn first_countermodel_at(f: &Formula, sig: &Signature, d: usize) -> Result<Option<Interpretation>, FoError> {
    let slots: Vec<(usize, Vec<usize>)> =
        sig.preds.iter().enumerate().flat_map(|(pi, (_, n))| tuples(d, *n).into_iter().map(move |t| (pi, t))).collect();
    let bits = slots.len() + sig.props.len();
    if bits > SEARCH_BIT_CAP {
        return Err(FoError::TooLarge { bits, domain: d, cap: SEARCH_BIT_CAP });
    }
    let envs = tuples(d, sig.free.len());
    for mask in 0u64..(1u64 << bits) {
        let mut interp = Interpretation { domain: d, ..Default::default() };
        for (p, _) in &sig.preds {
            interp.predicates.insert(p.clone(), BTreeSet::new());
        }
        for (b, (pi, t)) in slots.iter().enumerate() {
            if mask >> b & 1 == 1 {
                interp.predicates.get_mut(&sig.preds[*pi].0).expect("inserted").insert(t.clone());
            }
        }
        for (j, p) in sig.props.iter().enumerate() {
            interp.props.insert(p.clone(), mask >> (slots.len() + j) & 1 == 1);
        }
        for e in &envs {
            interp.env = sig.free.iter().cloned().zip(e.iter().copied()).collect();
            if !eval_fo(f, &interp)? {
                return Ok(Some(interp));
            }
        }
    }
    Ok(None)
}

/// Searches every interpretation over domains of size `1..=max_domain`
/// and returns the first countermodel in canonical order.
pub fn valid_in_domains(f: &Formula, max_domain: usize) -> Result<SearchVerdict, FoError> {
    let sig = Signature::of(f)?;
    for d in 1..=max_domain {
        if let Some(m) = first_countermodel_at(f, &sig, d)? {
            return Ok(SearchVerdict::Countermodel(m));
        }
    }
    Ok(SearchVerdict::NoCountermodel)
}

/// Decides a monadic formula. Validity is checked on the structures whose
/// elements are distinct predicate profiles (at most `2^k` of them for `k`
/// predicates), which suffices without equality. A countermodel, when one
/// exists, is the first in the canonical order of [`valid_in_domains`] at
/// the least domain size that has one.
pub fn monadic_decide(f: &Formula) -> Result<MonadicVerdict, FoError> {
    let sig = Signature::of(f)?;
    let mut eq = false;
    f.walk(&mut |g| {
        if let Formula::Atom(p, args) = g {
            eq |= p == "=" && args.len() == 2;
        }
    });
    if eq {
        return Err(FoError::Equality);
    }
    if let Some((p, _)) = sig.preds.iter().find(|(_, n)| *n != 1) {
        return Err(FoError::NotMonadic(p.clone()));
    }
    let k = sig.preds.len();
    if k > MONADIC_PREDICATE_CAP {
        return Err(FoError::TooManyPredicates(k));
    }
    let types = 1usize << k;
    let mut least: Option<usize> = None;
    'sizes: for size in 1..=types {
        for set in 1u64..(1u64 << types) {
            if set.count_ones() as usize != size {
                continue;
            }
            let profiles: Vec<usize> = (0..types).filter(|t| set >> t & 1 == 1).collect();
            let mut interp = Interpretation { domain: size, ..Default::default() };
            for (j, (p, _)) in sig.preds.iter().enumerate() {
                let ext = profiles.iter().enumerate().filter(|(_, t)| *t >> j & 1 == 1).map(|(e, _)| vec![e]).collect();
                interp.predicates.insert(p.clone(), ext);
            }
            for pv in 0u64..(1u64 << sig.props.len()) {
                interp.props = sig.props.iter().enumerate().map(|(j, p)| (p.clone(), pv >> j & 1 == 1)).collect();
                for e in tuples(size, sig.free.len()) {
                    interp.env = sig.free.iter().cloned().zip(e).collect();
                    if !eval_fo(f, &interp)? {
                        least = Some(size);
                        break 'sizes;
                    }
                }
            }
        }
    }
    match least {
        None => Ok(MonadicVerdict::Valid),
        Some(d) => {
            let m = first_countermodel_at(f, &sig, d)?.expect("a countermodel of this size exists");
            Ok(MonadicVerdict::Countermodel(m))
        }
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "domain: {}", self.domain)?;
        for (p, ext) in &self.predicates {
            let ts: Vec<String> = ext
                .iter()
                .map(|t| format!("({})", t.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")))
                .collect();
            if ts.is_empty() {
                writeln!(f, "{p}:")?;
            } else {
                writeln!(f, "{p}: {}", ts.join(","))?;
            }
        }
        for (p, v) in &self.props {
            writeln!(f, "{p}: {}", if *v { "T" } else { "F" })?;
        }
        for (x, v) in &self.env {
            writeln!(f, "{x} := {v}")?;
        }
        Ok(())
    }
}

impl FromStr for Interpretation {
    type Err = FoError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |m: String| FoError::Malformed(m);
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let first = lines.next().ok_or_else(|| bad("missing `domain:`".into()))?;
        let d = first
            .strip_prefix("domain:")
            .and_then(|d| d.trim().parse::<usize>().ok())
            .ok_or_else(|| bad(format!("expected `domain: <d>`, found `{first}`")))?;
        if d == 0 {
            return Err(FoError::EmptyDomain);
        }
        let mut interp = Interpretation { domain: d, ..Default::default() };
        for line in lines {
            if let Some((x, v)) = line.split_once(":=") {
                let v: usize = v.trim().parse().map_err(|_| bad(format!("bad value in `{line}`")))?;
                if v >= d {
                    return Err(FoError::OutOfDomain(x.trim().into()));
                }
                interp.env.insert(x.trim().into(), v);
                continue;
            }
            let (name, rest) = line.split_once(':').ok_or_else(|| bad(format!("bad line `{line}`")))?;
            let (name, rest) = (name.trim().to_string(), rest.trim());
            match rest {
                "T" => {
                    interp.props.insert(name, true);
                }
                "F" => {
                    interp.props.insert(name, false);
                }
                _ => {
                    let mut ext = BTreeSet::new();
                    let mut r = rest;
                    while !r.is_empty() {
                        let body = r.strip_prefix('(').ok_or_else(|| bad(format!("expected `(` in `{line}`")))?;
                        let (inside, after) =
                            body.split_once(')').ok_or_else(|| bad(format!("unclosed tuple in `{line}`")))?;
                        let t = if inside.trim().is_empty() {
                            Vec::new()
                        } else {
                            inside
                                .split(',')
                                .map(|v| v.trim().parse::<usize>().map_err(|_| bad(format!("bad value in `{line}`"))))
                                .collect::<Result<Vec<_>, _>>()?
                        };
                        if t.iter().any(|&v| v >= d) {
                            return Err(FoError::OutOfDomain(name));
                        }
                        ext.insert(t);
                        r = after.trim_start().strip_prefix(',').unwrap_or(after).trim_start();
                    }
                    interp.predicates.insert(name, ext);
                }
            }
        }
        Ok(interp)
    }
}
