//! Two toy machines. The crank turns out theorems forever by enumerating
//! derivations; the bell rings on valid input where validity is decidable
//! and refuses everything else.
//!
//! The crank builds derivations level by level, where a derivation's size is
//! one per rule application plus the weight of every formula or variable a
//! rule mentions. Weights make each level finite: the `i`-th variable of a
//! kind weighs `i + 1`, an atom `P_j(x_k)` weighs `j + k + 2`, and each
//! connective or quantifier adds one. A theorem is emitted at the size of
//! its smallest derivation; ties are broken by the printed formula.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::formula::{Basis, Defined, Direction, Formula, Path, SubstitutionMap};
use crate::hilbert::{axioms, Builder, HilbertProof};
use crate::predicate::{monadic_decide, FoBuilder, FoError, FoJustification, FoProof, Interpretation, MonadicVerdict};
use crate::truth::{is_tautology, TautologyVerdict, Valuation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Calculus {
    /// The four-axiom propositional kernel with substitution.
    Prop,
    /// The first-order kernel.
    Fo,
}

impl std::str::FromStr for Calculus {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "prop" => Ok(Calculus::Prop),
            "fo" => Ok(Calculus::Fo),
            _ => Err(format!("unknown calculus `{s}` (expected prop or fo)")),
        }
    }
}

fn indexed(base: &[&str], i: usize) -> String {
    match base.get(i) {
        Some(s) => s.to_string(),
        None => format!("{}{i}", base[0]),
    }
}

fn prop_var(i: usize) -> String {
    indexed(&["p", "q", "r", "s", "t", "u", "v", "w"], i)
}

fn ind_var(i: usize) -> String {
    indexed(&["x", "y", "z"], i)
}

fn predicate(i: usize) -> String {
    indexed(&["P", "Q", "R", "S"], i)
}

#[derive(Clone, Debug)]
enum Rule {
    Ax(usize),
    Sub { src: usize, var: String, with: Formula },
    AxP { k: usize, inst: SubstitutionMap },
    AxQ { x: String, body: Formula, y: String },
    Mp { minor: usize, major: usize },
    Gen { src: usize, x: String },
    Def { src: usize, path: Path, dir: Direction, conn: Defined },
}

struct Node {
    formula: Formula,
    size: usize,
    rule: Rule,
}

/// One theorem from the crank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Turn {
    /// 1-based position in the stream.
    pub index: usize,
    /// Size of the smallest derivation.
    pub size: usize,
    pub formula: Formula,
}

impl fmt::Display for Turn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} [size {}]", self.index, self.formula, self.size)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CrankProof {
    Prop(HilbertProof),
    Fo(FoProof),
}

impl fmt::Display for CrankProof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CrankProof::Prop(p) => write!(f, "{p}"),
            CrankProof::Fo(p) => write!(f, "{p}"),
        }
    }
}

/// The theorem stream; an endless iterator.
pub struct Crank {
    calculus: Calculus,
    nodes: Vec<Node>,
    index: HashMap<Formula, usize>,
    /// Node ids by derivation size; `levels[0]` is unused.
    levels: Vec<Vec<usize>>,
    /// Substitution candidates by weight; `weights[0]` is unused.
    weights: Vec<Vec<Formula>>,
    queue: VecDeque<usize>,
    emitted: Vec<usize>,
}

impl Crank {
    pub fn new(calculus: Calculus) -> Self {
        Crank {
            calculus,
            nodes: Vec::new(),
            index: HashMap::new(),
            levels: vec![Vec::new()],
            weights: vec![Vec::new()],
            queue: VecDeque::new(),
            emitted: Vec::new(),
        }
    }

    /// Formulas of weight exactly `w`.
    fn formulas(&mut self, w: usize) -> &[Formula] {
        while self.weights.len() <= w {
            let n = self.weights.len();
            let mut out = vec![Formula::var(prop_var(n - 1))];
            if self.calculus == Calculus::Fo {
                for j in 0..n.saturating_sub(1) {
                    let k = n - 2 - j;
                    out.push(Formula::atom(predicate(j), [ind_var(k)]));
                }
            }
            if n >= 2 {
                out.extend(self.weights[n - 1].iter().cloned().map(Formula::not));
            }
            for wl in 1..n.saturating_sub(1) {
                let wr = n - 1 - wl;
                for l in &self.weights[wl] {
                    for r in &self.weights[wr] {
                        out.push(Formula::or(l.clone(), r.clone()));
                        out.push(Formula::implies(l.clone(), r.clone()));
                    }
                }
            }
            if self.calculus == Calculus::Fo {
                for k in 0..n.saturating_sub(2) {
                    let wb = n - 2 - k;
                    if wb >= 1 {
                        for b in &self.weights[wb] {
                            out.push(Formula::forall(ind_var(k), b.clone()));
                        }
                    }
                }
            }
            self.weights.push(out);
        }
        &self.weights[w]
    }

    /// Maps over `vars` whose non-identity bindings weigh `total` together.
    fn instantiations(&mut self, vars: &[String], total: usize) -> Vec<SubstitutionMap> {
        if vars.is_empty() {
            return if total == 0 { vec![SubstitutionMap::new()] } else { vec![] };
        }
        let mut out = Vec::new();
        for w in 0..=total {
            let firsts: Vec<Option<Formula>> = if w == 0 {
                vec![None]
            } else {
                self.formulas(w).iter().filter(|f| **f != Formula::var(vars[0].clone())).cloned().map(Some).collect()
            };
            let rests = self.instantiations(&vars[1..], total - w);
            for f in &firsts {
                for rest in &rests {
                    let mut m = rest.clone();
                    if let Some(f) = f {
                        m = m.with(vars[0].clone(), f.clone());
                    }
                    out.push(m);
                }
            }
        }
        out
    }

    fn level(&mut self, n: usize) -> Vec<(Formula, Rule)> {
        let mut cands: Vec<(Formula, Rule)> = Vec::new();
        match self.calculus {
            Calculus::Prop => {
                if n == 1 {
                    for (k, ax) in axioms().into_iter().enumerate() {
                        cands.push((ax, Rule::Ax(k + 1)));
                    }
                }
                for m in 1..n.saturating_sub(1) {
                    let w = n - 1 - m;
                    let withs = self.formulas(w).to_vec();
                    for &id in &self.levels[m] {
                        let f = &self.nodes[id].formula;
                        for v in f.prop_vars() {
                            for g in &withs {
                                if *g == Formula::var(v.clone()) {
                                    continue;
                                }
                                let map = SubstitutionMap::new().with(v.clone(), g.clone());
                                let out = f.substitute(&map).expect("propositional");
                                cands.push((out, Rule::Sub { src: id, var: v.clone(), with: g.clone() }));
                            }
                        }
                    }
                }
            }
            Calculus::Fo => {
                for (k, ax) in axioms().into_iter().enumerate() {
                    let vars: Vec<String> = ax.prop_vars().into_iter().collect();
                    for inst in self.instantiations(&vars, n - 1) {
                        let out = ax.substitute(&inst).expect("propositional axiom");
                        cands.push((out, Rule::AxP { k: k + 1, inst }));
                    }
                }
                for ix in 0..n {
                    for iy in 0..n {
                        let Some(wb) = n.checked_sub(3 + ix + iy) else { continue };
                        if wb == 0 {
                            continue;
                        }
                        let (x, y) = (ind_var(ix), ind_var(iy));
                        for body in self.formulas(wb).to_vec() {
                            if let Ok(inst) = body.rename_free(&x, &y) {
                                let out = Formula::implies(Formula::forall(x.clone(), body.clone()), inst);
                                cands.push((out, Rule::AxQ { x: x.clone(), body, y: y.clone() }));
                            }
                        }
                    }
                }
                for m in 1..n {
                    for ix in 0..n {
                        if 2 + m + ix != n {
                            continue;
                        }
                        let x = ind_var(ix);
                        for &id in &self.levels[m] {
                            if let Formula::Impl(psi, phi) = &self.nodes[id].formula {
                                if !psi.has_free(&x) {
                                    let out =
                                        Formula::implies((**psi).clone(), Formula::forall(x.clone(), (**phi).clone()));
                                    cands.push((out, Rule::Gen { src: id, x: x.clone() }));
                                }
                            }
                        }
                    }
                }
            }
        }
        for m2 in 1..n.saturating_sub(1) {
            let m1 = n - 1 - m2;
            for &major in &self.levels[m2] {
                if let Formula::Impl(a, x) = &self.nodes[major].formula {
                    if let Some(&minor) = self.index.get(&**a) {
                        if self.nodes[minor].size == m1 {
                            cands.push(((**x).clone(), Rule::Mp { minor, major }));
                        }
                    }
                }
            }
        }
        if n >= 2 {
            let conns: &[Defined] = match self.calculus {
                Calculus::Prop => &[Defined::Impl, Defined::And, Defined::Equiv],
                Calculus::Fo => &[Defined::Impl, Defined::And, Defined::Equiv, Defined::Exists],
            };
            for &id in &self.levels[n - 1] {
                let f = &self.nodes[id].formula;
                for path in paths(f) {
                    for &conn in conns {
                        for dir in [Direction::Expand, Direction::Fold] {
                            if let Ok(out) = Basis::OrNot.rewrite(f, &path, conn, dir) {
                                cands.push((out, Rule::Def { src: id, path: path.clone(), dir, conn }));
                            }
                        }
                    }
                }
            }
        }
        cands
    }

    fn grow(&mut self) {
        let n = self.levels.len();
        let cands = self.level(n);
        let mut fresh: Vec<(String, Formula, Rule)> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for (f, rule) in cands {
            if self.index.contains_key(&f) || !seen.insert(f.clone()) {
                continue;
            }
            fresh.push((f.to_string(), f, rule));
        }
        fresh.sort_by(|a, b| a.0.cmp(&b.0));
        let mut ids = Vec::with_capacity(fresh.len());
        for (_, formula, rule) in fresh {
            let id = self.nodes.len();
            self.index.insert(formula.clone(), id);
            self.nodes.push(Node { formula, size: n, rule });
            ids.push(id);
        }
        self.queue.extend(ids.iter().copied());
        self.levels.push(ids);
    }

    /// A checkable derivation of the `index`-th emitted theorem (1-based).
    ///
    /// # Panics
    /// If that theorem has not been emitted yet.
    pub fn proof(&self, index: usize) -> CrankProof {
        let goal = self.emitted[index - 1];
        match self.calculus {
            Calculus::Prop => {
                let mut b = Builder::new(vec![]);
                let mut memo = HashMap::new();
                let line = self.build_prop(goal, &mut b, &mut memo);
                CrankProof::Prop(b.finish(line))
            }
            Calculus::Fo => {
                let mut b = FoBuilder::new();
                let mut memo = HashMap::new();
                let line = self.build_fo(goal, &mut b, &mut memo);
                CrankProof::Fo(b.finish(line))
            }
        }
    }

    fn build_prop(&self, id: usize, b: &mut Builder, memo: &mut HashMap<usize, usize>) -> usize {
        if let Some(&l) = memo.get(&id) {
            return l;
        }
        let line = match &self.nodes[id].rule {
            Rule::Ax(k) => b.axiom(*k),
            Rule::Sub { src, var, with } => {
                let s = self.build_prop(*src, b, memo);
                b.sub(s, SubstitutionMap::new().with(var.clone(), with.clone()))
            }
            Rule::Mp { minor, major } => {
                let a = self.build_prop(*minor, b, memo);
                let c = self.build_prop(*major, b, memo);
                b.mp(a, c)
            }
            Rule::Def { src, path, dir, conn } => {
                let s = self.build_prop(*src, b, memo);
                b.def(s, path.clone(), *dir, *conn)
            }
            other => unreachable!("{other:?} in a propositional derivation"),
        };
        memo.insert(id, line);
        line
    }

    fn build_fo(&self, id: usize, b: &mut FoBuilder, memo: &mut HashMap<usize, usize>) -> usize {
        if let Some(&l) = memo.get(&id) {
            return l;
        }
        let just = match &self.nodes[id].rule {
            Rule::AxP { k, inst } => FoJustification::AxP { k: *k, inst: inst.clone() },
            Rule::AxQ { x, body, y } => FoJustification::AxQ { x: x.clone(), body: body.clone(), y: y.clone() },
            Rule::Mp { minor, major } => {
                let minor = self.build_fo(*minor, b, memo);
                let major = self.build_fo(*major, b, memo);
                FoJustification::Mp { minor, major }
            }
            Rule::Gen { src, x } => FoJustification::Gen { src: self.build_fo(*src, b, memo), x: x.clone() },
            Rule::Def { src, path, dir, conn } => {
                let src = self.build_fo(*src, b, memo);
                FoJustification::Def { src, path: path.clone(), dir: *dir, conn: *conn }
            }
            other => unreachable!("{other:?} in a first-order derivation"),
        };
        let line = b.apply(just);
        memo.insert(id, line);
        line
    }
}

impl Iterator for Crank {
    type Item = Turn;

    fn next(&mut self) -> Option<Turn> {
        while self.queue.is_empty() {
            self.grow();
        }
        let id = self.queue.pop_front().expect("nonempty");
        self.emitted.push(id);
        let node = &self.nodes[id];
        Some(Turn { index: self.emitted.len(), size: node.size, formula: node.formula.clone() })
    }
}

fn paths(f: &Formula) -> Vec<Path> {
    fn go(f: &Formula, here: &mut Vec<u8>, out: &mut Vec<Path>) {
        out.push(Path(here.clone()));
        for (i, c) in f.children().into_iter().enumerate() {
            here.push(i as u8);
            go(c, here, out);
            here.pop();
        }
    }
    let mut out = Vec::new();
    go(f, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Countermodel {
    Valuation(Valuation),
    Structure(Interpretation),
}

impl fmt::Display for Countermodel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Countermodel::Valuation(v) => {
                for (k, b) in v {
                    writeln!(f, "{k}: {}", if *b { 'T' } else { 'F' })?;
                }
                Ok(())
            }
            Countermodel::Structure(i) => write!(f, "{i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BellVerdict {
    Rings,
    Silent(Countermodel),
    /// Input outside the decidable fragments, with the reason.
    Refused(String),
}

const UNDECIDABLE: &str =
    "validity in the full predicate calculus is undecidable; the bell answers only propositional and monadic formulas";

/// Rings iff `f` is valid, for propositional and monadic input.
pub fn bell(f: &Formula) -> BellVerdict {
    let mut first_order = false;
    f.walk(&mut |g| first_order |= matches!(g, Formula::Atom(..) | Formula::Forall(..) | Formula::Exists(..)));
    if !first_order {
        return match is_tautology(f) {
            Ok(TautologyVerdict::Tautology) => BellVerdict::Rings,
            Ok(TautologyVerdict::Countermodel(v)) => BellVerdict::Silent(Countermodel::Valuation(v)),
            Err(e) => BellVerdict::Refused(e.to_string()),
        };
    }
    match monadic_decide(f) {
        Ok(MonadicVerdict::Valid) => BellVerdict::Rings,
        Ok(MonadicVerdict::Countermodel(m)) => BellVerdict::Silent(Countermodel::Structure(m)),
        Err(FoError::NotMonadic(p)) => {
            let arity = f.predicates().into_iter().find(|(q, _)| *q == p).map(|(_, n)| n).unwrap_or(0);
            BellVerdict::Refused(format!("`{p}` is a {arity}-place predicate; {UNDECIDABLE}"))
        }
        Err(FoError::Equality) => BellVerdict::Refused(format!("the formula uses equality; {UNDECIDABLE}")),
        Err(e) => BellVerdict::Refused(e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        s.parse().unwrap()
    }

    #[test]
    fn first_turns_are_the_axioms() {
        let first: Vec<Formula> = Crank::new(Calculus::Prop).take(4).map(|t| t.formula).collect();
        let mut expected = axioms();
        expected.sort_by_key(|a| a.to_string());
        assert_eq!(first, expected);
    }

    #[test]
    fn crank_proofs_check() {
        for calc in [Calculus::Prop, Calculus::Fo] {
            let mut crank = Crank::new(calc);
            let turns: Vec<Turn> = crank.by_ref().take(60).collect();
            for t in &turns {
                match crank.proof(t.index) {
                    CrankProof::Prop(p) => {
                        assert_eq!(crate::hilbert::check_proof(&p), Ok(()));
                        assert_eq!(p.conclusion(), Some(&t.formula));
                    }
                    CrankProof::Fo(p) => {
                        assert_eq!(crate::predicate::check_fo_proof(&p), Ok(()));
                        assert_eq!(p.conclusion(), Some(&t.formula));
                    }
                }
            }
        }
    }

    #[test]
    fn bell_verdicts() {
        assert_eq!(bell(&f("(p -> q) | (q -> p)")), BellVerdict::Rings);
        assert!(matches!(bell(&f("p -> q")), BellVerdict::Silent(Countermodel::Valuation(_))));
        assert!(matches!(bell(&f("(Ex)P(x) -> (x)P(x)")), BellVerdict::Silent(Countermodel::Structure(_))));
        assert_eq!(bell(&f("(x)P(x) -> P(y)")), BellVerdict::Rings);
        let BellVerdict::Refused(msg) = bell(&f("(x)(Ey)R(x,y)")) else { panic!() };
        assert!(msg.starts_with("`R` is a 2-place predicate"), "{msg}");
    }
}
