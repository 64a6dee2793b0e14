//! Reference semantics used to cross-check the library. Nothing here calls
//! into the evaluators under test; only the formula type is shared.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use rand::Rng;
use workbench_core::Formula;

pub fn data(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(rel)
}

pub fn f(s: &str) -> Formula {
    s.parse().unwrap_or_else(|e| panic!("`{s}` does not parse: {e}"))
}

/// Non-comment, non-blank lines of a corpus file.
pub fn corpus_lines(rel: &str) -> Vec<String> {
    std::fs::read_to_string(data(rel))
        .unwrap_or_else(|e| panic!("{rel}: {e}"))
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect()
}

// ---- propositional ----

pub fn prop_vars(f: &Formula) -> Vec<String> {
    fn go(f: &Formula, out: &mut BTreeSet<String>) {
        match f {
            Formula::Var(x) => {
                out.insert(x.clone());
            }
            Formula::Not(a) => go(a, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Impl(a, b) | Formula::Equiv(a, b) => {
                go(a, out);
                go(b, out);
            }
            other => panic!("not propositional: {other}"),
        }
    }
    let mut s = BTreeSet::new();
    go(f, &mut s);
    s.into_iter().collect()
}

pub fn prop_eval(f: &Formula, v: &BTreeMap<String, bool>) -> bool {
    match f {
        Formula::Var(x) => v[x],
        Formula::Not(a) => !prop_eval(a, v),
        Formula::And(a, b) => prop_eval(a, v) && prop_eval(b, v),
        Formula::Or(a, b) => prop_eval(a, v) || prop_eval(b, v),
        Formula::Impl(a, b) => !prop_eval(a, v) || prop_eval(b, v),
        Formula::Equiv(a, b) => prop_eval(a, v) == prop_eval(b, v),
        other => panic!("not propositional: {other}"),
    }
}

/// Every valuation of `vars`, row `r` giving `vars[j]` the bit `j` of `r`.
pub fn valuations(vars: &[String]) -> impl Iterator<Item = BTreeMap<String, bool>> + '_ {
    (0..1usize << vars.len()).map(move |r| vars.iter().enumerate().map(|(j, x)| (x.clone(), r >> j & 1 == 1)).collect())
}

pub fn prop_entails(premises: &[Formula], conclusion: &Formula) -> bool {
    let mut vars: BTreeSet<String> = prop_vars(conclusion).into_iter().collect();
    for p in premises {
        vars.extend(prop_vars(p));
    }
    let vars: Vec<String> = vars.into_iter().collect();
    let holds = valuations(&vars).all(|v| !premises.iter().all(|p| prop_eval(p, &v)) || prop_eval(conclusion, &v));
    holds
}

pub fn prop_tautology(f: &Formula) -> bool {
    prop_entails(&[], f)
}

/// All formulas over `~`, `|`, `->` and the given variables with exactly
/// `nodes` nodes.
pub fn formulas_of_size(nodes: usize, vars: &[&str]) -> Vec<Formula> {
    let mut by_size: Vec<Vec<Formula>> = vec![Vec::new()];
    for n in 1..=nodes {
        let mut here = Vec::new();
        if n == 1 {
            here.extend(vars.iter().map(|v| Formula::var(*v)));
        } else {
            here.extend(by_size[n - 1].iter().map(|a| Formula::not(a.clone())));
            for l in 1..n - 1 {
                let r = n - 1 - l;
                for a in &by_size[l] {
                    for b in &by_size[r] {
                        here.push(Formula::or(a.clone(), b.clone()));
                        here.push(Formula::implies(a.clone(), b.clone()));
                    }
                }
            }
        }
        by_size.push(here);
    }
    by_size.swap_remove(nodes)
}

// ---- first order ----

#[derive(Clone, Debug, Default)]
pub struct Structure {
    pub domain: usize,
    pub preds: BTreeMap<String, BTreeSet<Vec<usize>>>,
    pub props: BTreeMap<String, bool>,
}

pub fn fo_eval(f: &Formula, s: &Structure, env: &mut BTreeMap<String, usize>) -> bool {
    match f {
        Formula::Var(p) => s.props[p],
        Formula::Not(a) => !fo_eval(a, s, env),
        Formula::And(a, b) => fo_eval(a, s, env) && fo_eval(b, s, env),
        Formula::Or(a, b) => fo_eval(a, s, env) || fo_eval(b, s, env),
        Formula::Impl(a, b) => !fo_eval(a, s, env) || fo_eval(b, s, env),
        Formula::Equiv(a, b) => fo_eval(a, s, env) == fo_eval(b, s, env),
        Formula::Atom(p, args) => {
            let t: Vec<usize> = args.iter().map(|a| env[a]).collect();
            if p == "=" {
                t[0] == t[1]
            } else {
                s.preds[p].contains(&t)
            }
        }
        Formula::Forall(x, body) | Formula::Exists(x, body) => {
            let universal = matches!(f, Formula::Forall(..));
            let saved = env.get(x).copied();
            let mut result = universal;
            for d in 0..s.domain {
                env.insert(x.clone(), d);
                if fo_eval(body, s, env) != universal {
                    result = !universal;
                    break;
                }
            }
            match saved {
                Some(v) => env.insert(x.clone(), v),
                None => env.remove(x),
            };
            result
        }
    }
}

/// Predicates with arities, propositional variables and free individual
/// variables of a set of formulas.
#[derive(Clone, Debug, Default)]
pub struct Sig {
    pub preds: BTreeMap<String, usize>,
    pub props: BTreeSet<String>,
    pub free: BTreeSet<String>,
}

impl Sig {
    pub fn of(fs: &[&Formula]) -> Sig {
        fn go(f: &Formula, bound: &mut Vec<String>, sig: &mut Sig) {
            match f {
                Formula::Var(p) => {
                    sig.props.insert(p.clone());
                }
                Formula::Not(a) => go(a, bound, sig),
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Impl(a, b) | Formula::Equiv(a, b) => {
                    go(a, bound, sig);
                    go(b, bound, sig);
                }
                Formula::Atom(p, args) => {
                    if p != "=" {
                        sig.preds.insert(p.clone(), args.len());
                    }
                    for a in args {
                        if !bound.contains(a) {
                            sig.free.insert(a.clone());
                        }
                    }
                }
                Formula::Forall(x, b) | Formula::Exists(x, b) => {
                    bound.push(x.clone());
                    go(b, bound, sig);
                    bound.pop();
                }
            }
        }
        let mut sig = Sig::default();
        for f in fs {
            go(f, &mut Vec::new(), &mut sig);
        }
        sig
    }

    pub fn free_in(f: &Formula) -> BTreeSet<String> {
        Sig::of(&[f]).free
    }
}

fn tuples(d: usize, n: usize) -> Vec<Vec<usize>> {
    (0..d.pow(n as u32))
        .map(|mut k| {
            let mut t = vec![0; n];
            for slot in t.iter_mut() {
                *slot = k % d;
                k /= d;
            }
            t
        })
        .collect()
}

/// Calls `visit` on every structure of size `d` for `sig` together with every
/// environment of its free variables; stops early when `visit` says so.
pub fn for_each_model(
    sig: &Sig,
    d: usize,
    mut visit: impl FnMut(&Structure, &mut BTreeMap<String, usize>) -> bool,
) -> bool {
    let slots: Vec<(String, Vec<usize>)> =
        sig.preds.iter().flat_map(|(p, &n)| tuples(d, n).into_iter().map(move |t| (p.clone(), t))).collect();
    let props: Vec<&String> = sig.props.iter().collect();
    let bits = slots.len() + props.len();
    assert!(bits <= 24, "oracle refuses {bits} bits");
    let free: Vec<&String> = sig.free.iter().collect();
    let envs = tuples(d, free.len());
    for mask in 0u64..1 << bits {
        let mut s = Structure { domain: d, ..Default::default() };
        for p in sig.preds.keys() {
            s.preds.insert(p.clone(), BTreeSet::new());
        }
        for (b, (p, t)) in slots.iter().enumerate() {
            if mask >> b & 1 == 1 {
                s.preds.get_mut(p).unwrap().insert(t.clone());
            }
        }
        for (j, p) in props.iter().enumerate() {
            s.props.insert((*p).clone(), mask >> (slots.len() + j) & 1 == 1);
        }
        for e in &envs {
            let mut env: BTreeMap<String, usize> = free.iter().map(|x| (*x).clone()).zip(e.iter().copied()).collect();
            if !visit(&s, &mut env) {
                return false;
            }
        }
    }
    true
}

pub fn random_model(sig: &Sig, d: usize, rng: &mut impl Rng) -> (Structure, BTreeMap<String, usize>) {
    let mut s = Structure { domain: d, ..Default::default() };
    for (p, &n) in &sig.preds {
        let ext = tuples(d, n).into_iter().filter(|_| rng.gen_bool(0.5)).collect();
        s.preds.insert(p.clone(), ext);
    }
    for p in &sig.props {
        s.props.insert(p.clone(), rng.gen_bool(0.5));
    }
    let env = sig.free.iter().map(|x| (x.clone(), rng.gen_range(0..d))).collect();
    (s, env)
}

// ---- syllogistic ----

/// Truth of a syllogistic formula given each term's set of profiles: a
/// model is determined, up to the truth of every `a`/`i` atom, by which
/// combinations of class memberships its points realize.
pub fn syll_eval(f: &Formula, realized: &[u32], terms: &[String]) -> bool {
    let bit = |t: &str| 1u32 << terms.iter().position(|x| x == t).expect("term");
    match f {
        Formula::Not(a) => !syll_eval(a, realized, terms),
        Formula::And(a, b) => syll_eval(a, realized, terms) && syll_eval(b, realized, terms),
        Formula::Or(a, b) => syll_eval(a, realized, terms) || syll_eval(b, realized, terms),
        Formula::Impl(a, b) => !syll_eval(a, realized, terms) || syll_eval(b, realized, terms),
        Formula::Equiv(a, b) => syll_eval(a, realized, terms) == syll_eval(b, realized, terms),
        Formula::Atom(p, args) => {
            let (x, y) = (bit(&args[0]), bit(&args[1]));
            match p.as_str() {
                "a" => realized.iter().all(|&r| r & x == 0 || r & y != 0),
                "i" => realized.iter().any(|&r| r & x != 0 && r & y != 0),
                "e" => !realized.iter().any(|&r| r & x != 0 && r & y != 0),
                "o" => !realized.iter().all(|&r| r & x == 0 || r & y != 0),
                other => panic!("not a syllogistic predicate: {other}"),
            }
        }
        other => panic!("not syllogistic: {other}"),
    }
}

pub fn syll_terms(f: &Formula) -> Vec<String> {
    let mut out = BTreeSet::new();
    f.walk(&mut |g| {
        if let Formula::Atom(_, args) = g {
            out.extend(args.iter().cloned());
        }
    });
    out.into_iter().collect()
}

/// Complete decision by enumerating sets of realized profiles. With
/// `import`, every class must be nonempty.
pub fn syll_valid(f: &Formula, import: bool) -> bool {
    let terms = syll_terms(f);
    let n = terms.len();
    assert!(n <= 4, "oracle refuses {n} terms");
    let profiles: Vec<u32> = (1..1u32 << n).collect();
    for set in 0u64..1 << profiles.len() {
        let realized: Vec<u32> =
            profiles.iter().enumerate().filter(|(k, _)| set >> k & 1 == 1).map(|(_, &p)| p).collect();
        if import && (0..n).any(|j| !realized.iter().any(|r| r >> j & 1 == 1)) {
            continue;
        }
        if !syll_eval(f, &realized, &terms) {
            return false;
        }
    }
    true
}
