//! Derivations by forward chaining.
//!
//! Handles `L1 & ... & Lk -> L` and bare literals `L`. The premises'
//! positive atoms (and, for a negative conclusion `~c`, the atom `c`) are
//! closed under the instances of the system's Horn axioms over the
//! formula's terms until some atom clashes with a negative literal. The
//! chain is replayed as kernel lines under the premises as hypotheses,
//! with conjunction and contradiction steps supplied by small tautologies,
//! and the hypotheses are discharged by the deduction theorem.

use std::collections::{HashMap, HashSet};

use super::{term_vars, SyllError, SyllSystem};
use crate::formula::{Formula, SubstitutionMap};
use crate::hilbert::{deduction_theorem_in, Builder, HilbertProof, Kernel};
use crate::kalmar::prove_tautology;

fn literal(f: &Formula) -> Option<(bool, &Formula)> {
    match f {
        Formula::Atom(..) => Some((true, f)),
        Formula::Not(a) if matches!(**a, Formula::Atom(..)) => Some((false, &**a)),
        _ => None,
    }
}

/// Leaves of a conjunction tree.
fn conjuncts(f: &Formula) -> Vec<&Formula> {
    match f {
        Formula::And(l, r) => {
            let mut out = conjuncts(l);
            out.extend(conjuncts(r));
            out
        }
        _ => vec![f],
    }
}

#[derive(Clone, Debug)]
enum Source {
    Given,
    /// Instance of axiom `k` under the term renaming `map`.
    Instance {
        k: usize,
        map: SubstitutionMap,
        body: Option<Formula>,
    },
}

struct Rule {
    k: usize,
    axiom: Formula,
    vars: Vec<String>,
}

fn horn_rules(kernel: &Kernel) -> Vec<Rule> {
    let mut out = Vec::new();
    for (i, ax) in kernel.axioms().iter().enumerate().skip(4) {
        let horn = match ax {
            Formula::Atom(..) => true,
            Formula::Impl(body, head) => {
                matches!(**head, Formula::Atom(..)) && conjuncts(body).iter().all(|c| matches!(c, Formula::Atom(..)))
            }
            _ => false,
        };
        if horn {
            out.push(Rule { k: i + 1, axiom: ax.clone(), vars: term_vars(ax) });
        }
    }
    out
}

/// Every renaming of `vars` into `terms`, with identity bindings left out.
fn renamings(vars: &[String], terms: &[String]) -> Vec<SubstitutionMap> {
    let mut out = vec![SubstitutionMap::new()];
    for v in vars {
        let mut next = Vec::new();
        for m in &out {
            for t in terms {
                let m = if t == v { m.clone() } else { m.clone().with(v.clone(), Formula::var(t.clone())) };
                next.push(m);
            }
        }
        out = next;
    }
    out
}

struct Replay {
    b: Builder,
    sources: HashMap<Formula, Source>,
    given: HashMap<Formula, usize>,
    lines: HashMap<Formula, usize>,
    schemas: HashMap<&'static str, HilbertProof>,
}

impl Replay {
    fn taut(&mut self, schema: &'static str, pairs: &[(&str, &Formula)]) -> usize {
        let proof = self.schemas.entry(schema).or_insert_with(|| {
            prove_tautology(&schema.parse().expect("schema parses")).expect("schema is a tautology")
        });
        let line = self.b.splice(proof);
        self.b.sub(line, crate::hilbert::bind(pairs))
    }

    fn conj(&mut self, l: usize, r: usize) -> usize {
        let (p, q) = (self.b.formula(l).clone(), self.b.formula(r).clone());
        let t = self.taut("p -> q -> p & q", &[("p", &p), ("q", &q)]);
        let t = self.b.mp(l, t);
        self.b.mp(r, t)
    }

    /// Lines for the leaves of a hypothesis that is a conjunction tree.
    fn split(&mut self, line: usize) {
        let f = self.b.formula(line).clone();
        if let Formula::And(l, r) = &f {
            let left = self.taut("p & q -> p", &[("p", l), ("q", r)]);
            let left = self.b.mp(line, left);
            self.split(left);
            let right = self.taut("p & q -> q", &[("p", l), ("q", r)]);
            let right = self.b.mp(line, right);
            self.split(right);
        } else {
            self.given.entry(f).or_insert(line);
        }
    }

    fn tree(&mut self, t: &Formula) -> usize {
        match t {
            Formula::And(l, r) => {
                let (l, r) = (self.tree(l), self.tree(r));
                self.conj(l, r)
            }
            atom => self.fact(atom),
        }
    }

    fn fact(&mut self, atom: &Formula) -> usize {
        if let Some(&i) = self.lines.get(atom) {
            return i;
        }
        let line = match self.sources[atom].clone() {
            Source::Given => self.given[atom],
            Source::Instance { k, map, body } => {
                let ax = self.b.axiom(k);
                let inst = self.b.sub(ax, map);
                match body {
                    None => inst,
                    Some(body) => {
                        let premise = self.tree(&body);
                        self.b.mp(premise, inst)
                    }
                }
            }
        };
        self.lines.insert(atom.clone(), line);
        line
    }
}

/// A derivation of `f` in `system`, if forward chaining finds one.
pub fn derive(system: SyllSystem, f: &Formula) -> Result<HilbertProof, SyllError> {
    let shape = || SyllError::NoDerivation("expected literals `L1 & ... & Lk -> L` or a literal".into());
    let (ante, concl) = match f {
        Formula::Impl(a, c) if literal(c).is_some() => (Some((**a).clone()), (**c).clone()),
        _ if literal(f).is_some() => (None, f.clone()),
        _ => return Err(shape()),
    };
    let premises: Vec<&Formula> = ante.as_ref().map(conjuncts).unwrap_or_default();
    if premises.iter().any(|p| literal(p).is_none()) {
        return Err(shape());
    }
    let (positive, c) = literal(&concl).map(|(s, a)| (s, a.clone())).expect("checked");

    let mut sources: HashMap<Formula, Source> = HashMap::new();
    let mut goals: HashSet<Formula> = HashSet::new();
    for p in &premises {
        match literal(p).expect("checked") {
            (true, a) => {
                sources.insert(a.clone(), Source::Given);
            }
            (false, a) => {
                goals.insert(a.clone());
            }
        }
    }
    if positive {
        goals.insert(c.clone());
    } else {
        sources.insert(c.clone(), Source::Given);
    }

    let kernel = system.kernel();
    let terms = term_vars(f);
    let mut instances = Vec::new();
    for rule in horn_rules(&kernel) {
        for map in renamings(&rule.vars, &terms) {
            let inst = kernel.apply_substitution(&rule.axiom, &map).expect("term renaming");
            let (body, head) = match inst {
                Formula::Impl(b, h) => (Some(*b), *h),
                atom => (None, atom),
            };
            instances.push((rule.k, map, body, head));
        }
    }

    let mut hit = sources.keys().filter(|a| goals.contains(*a)).min().cloned();
    while hit.is_none() {
        let mut grew = false;
        for (k, map, body, head) in &instances {
            if sources.contains_key(head) {
                continue;
            }
            if body.as_ref().is_some_and(|b| conjuncts(b).iter().any(|a| !sources.contains_key(*a))) {
                continue;
            }
            sources.insert(head.clone(), Source::Instance { k: *k, map: map.clone(), body: body.clone() });
            grew = true;
            if goals.contains(head) {
                hit = Some(head.clone());
                break;
            }
        }
        if !grew {
            return Err(SyllError::NoDerivation(format!("the Horn axioms of {system} do not yield `{f}`")));
        }
    }
    let q = hit.expect("loop exits on a hit");

    let mut hyps: Vec<Formula> = ante.iter().cloned().collect();
    if !positive {
        hyps.push(c.clone());
    }
    let mut r = Replay {
        b: Builder::with_kernel(kernel.clone(), hyps.clone()),
        sources,
        given: HashMap::new(),
        lines: HashMap::new(),
        schemas: HashMap::new(),
    };
    for i in 1..=hyps.len() {
        let h = r.b.hyp(i);
        r.split(h);
    }
    let q_line = r.fact(&q);
    let dt = |p: &HilbertProof| deduction_theorem_in(&kernel, p).expect("replayed proof checks");

    let proof = if positive && q == c {
        r.b.finish(q_line)
    } else {
        let nq = r.given[&Formula::not(q.clone())];
        let target = if positive { c.clone() } else { Formula::not(c.clone()) };
        let t = r.taut("p -> ~p -> q", &[("p", &q), ("q", &target)]);
        let t = r.b.mp(q_line, t);
        let line = r.b.mp(nq, t);
        if positive {
            r.b.finish(line)
        } else {
            // c -> ~c, then ~c
            let inner = dt(&r.b.finish(line));
            let mut b = Builder::with_kernel(kernel.clone(), inner.hypotheses.clone());
            let imp = b.splice(&inner);
            let proof = prove_tautology(&"(p -> ~p) -> ~p".parse().expect("schema parses")).expect("tautology");
            let t = b.splice(&proof);
            let t = b.sub(t, crate::hilbert::bind(&[("p", &c)]));
            let line = b.mp(imp, t);
            b.finish(line)
        }
    };
    let proof = if proof.hypotheses.is_empty() { proof } else { dt(&proof) };
    debug_assert_eq!(proof.conclusion(), Some(f));
    Ok(proof)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syllogistic::{check_syll_proof, parse_syll};

    #[test]
    fn symmetry_of_i() {
        let f = parse_syll("i(alpha,beta) -> i(beta,alpha)").unwrap();
        for sys in SyllSystem::ALL {
            let proof = derive(sys, &f).unwrap();
            assert_eq!(check_syll_proof(sys, &proof), Ok(()), "{sys}");
            assert_eq!(proof.conclusion(), Some(&f));
        }
    }

    #[test]
    fn negative_conclusion() {
        let f = parse_syll("e(m,p) & a(s,m) -> e(s,p)").unwrap();
        let proof = derive(SyllSystem::Goedel, &f).unwrap();
        assert_eq!(check_syll_proof(SyllSystem::Goedel, &proof), Ok(()));
    }

    #[test]
    fn invalid_has_no_derivation() {
        let f = parse_syll("a(m,p) & a(m,s) -> i(s,p)").unwrap();
        assert!(matches!(derive(SyllSystem::Goedel, &f), Err(SyllError::NoDerivation(_))));
        let proof = derive(SyllSystem::Lukasiewicz, &f).unwrap();
        assert_eq!(check_syll_proof(SyllSystem::Lukasiewicz, &proof), Ok(()));
    }
}
