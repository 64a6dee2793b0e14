//! Finite logical matrices and the search for axiom-independence witnesses.
//!
//! A matrix interprets `~` and `|` by tables over `0..size` and marks some
//! values as designated. The defined connectives are evaluated through their
//! definitions in terms of `~` and `|`, so the definition rules are sound in
//! every matrix. If a matrix designates every instance of three axioms,
//! preserves designation under modus ponens and refutes the fourth axiom,
//! the fourth is not derivable from the others.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::formula::{expand_defined, Basis, Formula};
use crate::hilbert::axioms;

pub type Assignment = BTreeMap<String, usize>;

pub const MAX_SEARCH_SIZE: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("variable `{0}` has no value")]
    Unassigned(String),
    #[error("value {value} of `{var}` is outside the matrix")]
    OutOfRange { var: String, value: usize },
    #[error("`{0}` is not propositional")]
    NotPropositional(String),
    #[error("malformed matrix: {0}")]
    Malformed(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LogicalMatrix {
    pub size: usize,
    pub designated: Vec<bool>,
    pub neg: Vec<usize>,
    /// Row-major: `or[a][b]`.
    pub or: Vec<Vec<usize>>,
}

impl LogicalMatrix {
    pub fn new(designated: Vec<bool>, neg: Vec<usize>, or: Vec<Vec<usize>>) -> Result<Self, MatrixError> {
        let m = designated.len();
        let bad = |s: String| Err(MatrixError::Malformed(s));
        if m == 0 {
            return bad("size must be at least 1".into());
        }
        if !designated.iter().any(|&d| d) {
            return bad("no designated value".into());
        }
        if neg.len() != m || or.len() != m || or.iter().any(|row| row.len() != m) {
            return bad(format!("tables do not match size {m}"));
        }
        if neg.iter().chain(or.iter().flatten()).any(|&v| v >= m) {
            return bad(format!("table entry outside 0..{m}"));
        }
        Ok(LogicalMatrix { size: m, designated, neg, or })
    }

    /// The two-valued matrix: 1 is true and designated.
    pub fn classical() -> Self {
        LogicalMatrix::new(vec![false, true], vec![1, 0], vec![vec![0, 1], vec![1, 1]]).expect("well formed")
    }

    pub fn is_designated(&self, v: usize) -> bool {
        self.designated[v]
    }

    pub fn implies(&self, a: usize, b: usize) -> usize {
        self.or[self.neg[a]][b]
    }
}

/// Homomorphic value of `f`; defined connectives go through their definitions.
pub fn matrix_value(m: &LogicalMatrix, f: &Formula, assignment: &Assignment) -> Result<usize, MatrixError> {
    let neg = |a: usize| m.neg[a];
    let or = |a: usize, b: usize| m.or[a][b];
    Ok(match f {
        Formula::Var(x) => {
            let v = *assignment.get(x).ok_or_else(|| MatrixError::Unassigned(x.clone()))?;
            if v >= m.size {
                return Err(MatrixError::OutOfRange { var: x.clone(), value: v });
            }
            v
        }
        Formula::Not(a) => neg(matrix_value(m, a, assignment)?),
        Formula::Or(a, b) => or(matrix_value(m, a, assignment)?, matrix_value(m, b, assignment)?),
        Formula::Impl(a, b) => m.implies(matrix_value(m, a, assignment)?, matrix_value(m, b, assignment)?),
        Formula::And(a, b) => {
            let (a, b) = (matrix_value(m, a, assignment)?, matrix_value(m, b, assignment)?);
            neg(or(neg(a), neg(b)))
        }
        Formula::Equiv(a, b) => {
            let (a, b) = (matrix_value(m, a, assignment)?, matrix_value(m, b, assignment)?);
            let (ab, ba) = (m.implies(a, b), m.implies(b, a));
            neg(or(neg(ab), neg(ba)))
        }
        Formula::Atom(..) | Formula::Forall(..) | Formula::Exists(..) => {
            return Err(MatrixError::NotPropositional(f.to_string()))
        }
    })
}

/// Every assignment of `0..size` to `vars`, first variable varying slowest.
fn assignments(vars: &[String], size: usize) -> impl Iterator<Item = Assignment> + '_ {
    let total = size.pow(vars.len() as u32);
    (0..total).map(move |mut k| {
        let mut a = Assignment::new();
        for x in vars.iter().rev() {
            a.insert(x.clone(), k % size);
            k /= size;
        }
        a
    })
}

/// An assignment under which `f` takes an undesignated value, if any.
pub fn refuting_assignment(m: &LogicalMatrix, f: &Formula) -> Result<Option<Assignment>, MatrixError> {
    let vars: Vec<String> = f.prop_vars().into_iter().collect();
    for a in assignments(&vars, m.size) {
        if !m.is_designated(matrix_value(m, f, &a)?) {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

pub fn validates_schema(m: &LogicalMatrix, f: &Formula) -> Result<bool, MatrixError> {
    Ok(refuting_assignment(m, f)?.is_none())
}

pub fn mp_preserves(m: &LogicalMatrix) -> bool {
    (0..m.size)
        .all(|a| (0..m.size).all(|b| !(m.is_designated(a) && m.is_designated(m.implies(a, b))) || m.is_designated(b)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependenceWitness {
    /// 1-based axiom number.
    pub axiom: usize,
    pub matrix: LogicalMatrix,
    /// An assignment under which the axiom is undesignated.
    pub refutation: Assignment,
}

impl fmt::Display for IndependenceWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.matrix)?;
        let ax = &axioms()[self.axiom - 1];
        let a: Vec<String> = self.refutation.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let value = matrix_value(&self.matrix, ax, &self.refutation).map_err(|_| fmt::Error)?;
        writeln!(f, "refutes axiom {}: {ax} at {} has value {value}", self.axiom, a.join(" "))
    }
}

#[derive(Clone, Copy)]
enum Op {
    Var(usize),
    Neg,
    Or,
}

const UNKNOWN: u8 = u8::MAX;

/// An axiom in postfix form over variable indices.
struct Compiled {
    ops: Vec<Op>,
    arity: usize,
}

impl Compiled {
    fn new(f: &Formula) -> Self {
        let g = expand_defined(f, Basis::OrNot);
        let vars: Vec<String> = g.prop_vars().into_iter().collect();
        let mut ops = Vec::new();
        fn go(f: &Formula, vars: &[String], ops: &mut Vec<Op>) {
            match f {
                Formula::Var(x) => ops.push(Op::Var(vars.iter().position(|y| y == x).expect("listed"))),
                Formula::Not(a) => {
                    go(a, vars, ops);
                    ops.push(Op::Neg);
                }
                Formula::Or(a, b) => {
                    go(a, vars, ops);
                    go(b, vars, ops);
                    ops.push(Op::Or);
                }
                _ => unreachable!("expanded to ~ and |"),
            }
        }
        go(&g, &vars, &mut ops);
        Compiled { ops, arity: vars.len() }
    }

    /// Value under partial tables; `UNKNOWN` if an unfilled entry is needed.
    fn eval(&self, t: &Partial, args: &[u8], stack: &mut Vec<u8>) -> u8 {
        stack.clear();
        for op in &self.ops {
            match *op {
                Op::Var(i) => stack.push(args[i]),
                Op::Neg => {
                    let a = stack.pop().expect("operand");
                    stack.push(if a == UNKNOWN { UNKNOWN } else { t.neg[a as usize] });
                }
                Op::Or => {
                    let b = stack.pop().expect("operand");
                    let a = stack.pop().expect("operand");
                    stack.push(if a == UNKNOWN || b == UNKNOWN {
                        UNKNOWN
                    } else {
                        t.or[a as usize * t.m + b as usize]
                    });
                }
            }
        }
        stack[0]
    }
}

struct Partial {
    m: usize,
    designated: u32,
    neg: Vec<u8>,
    or: Vec<u8>,
}

impl Partial {
    fn des(&self, v: u8) -> bool {
        self.designated >> v & 1 == 1
    }

    /// False if the filled entries already violate a requirement.
    fn consistent(&self, keep: &[Compiled], stack: &mut Vec<u8>) -> bool {
        let m = self.m as u8;
        for a in 0..m {
            if !self.des(a) {
                continue;
            }
            let na = self.neg[a as usize];
            if na == UNKNOWN {
                continue;
            }
            for b in 0..m {
                let ab = self.or[na as usize * self.m + b as usize];
                if ab != UNKNOWN && self.des(ab) && !self.des(b) {
                    return false;
                }
            }
        }
        let mut args = [0u8; 8];
        for ax in keep {
            let total = self.m.pow(ax.arity as u32);
            for k in 0..total {
                let mut r = k;
                for slot in args[..ax.arity].iter_mut().rev() {
                    *slot = (r % self.m) as u8;
                    r /= self.m;
                }
                let v = ax.eval(self, &args[..ax.arity], stack);
                if v != UNKNOWN && !self.des(v) {
                    return false;
                }
            }
        }
        true
    }

    fn to_matrix(&self) -> LogicalMatrix {
        let m = self.m;
        LogicalMatrix {
            size: m,
            designated: (0..m).map(|v| self.des(v as u8)).collect(),
            neg: self.neg.iter().map(|&v| v as usize).collect(),
            or: (0..m).map(|a| (0..m).map(|b| self.or[a * m + b] as usize).collect()).collect(),
        }
    }
}

/// First matrix, in enumeration order, that validates every axiom except
/// `axiom`, preserves designation under modus ponens and refutes `axiom`.
///
/// Enumeration: ascending size; then the designated set as a bit mask
/// (bit `v` for value `v`) in ascending order; then the `~` table and the
/// `|` table (row-major) lexicographically, entries ascending.
///
/// # Panics
/// If `axiom` is not in `1..=4` or `max_size` exceeds [`MAX_SEARCH_SIZE`].
pub fn find_independence(axiom: usize, max_size: usize) -> Option<IndependenceWitness> {
    assert!((1..=4).contains(&axiom), "axiom number {axiom} out of range");
    assert!(max_size <= MAX_SEARCH_SIZE, "search size is capped at {MAX_SEARCH_SIZE}");
    let all = axioms();
    let keep: Vec<Compiled> =
        all.iter().enumerate().filter(|(i, _)| i + 1 != axiom).map(|(_, f)| Compiled::new(f)).collect();
    let target = &all[axiom - 1];
    let mut stack = Vec::new();
    for m in 1..=max_size {
        for designated in 1u32..(1 << m) {
            let mut t = Partial { m, designated, neg: vec![UNKNOWN; m], or: vec![UNKNOWN; m * m] };
            let mut found = None;
            search(&mut t, 0, &keep, &mut stack, &mut |t| {
                let matrix = t.to_matrix();
                match refuting_assignment(&matrix, target).expect("axioms are propositional") {
                    Some(refutation) => {
                        found = Some(IndependenceWitness { axiom, matrix, refutation });
                        true
                    }
                    None => false,
                }
            });
            if found.is_some() {
                return found;
            }
        }
    }
    None
}

/// Fills table slots in order (negation first, then disjunction); `leaf`
/// returns true to stop.
fn search(
    t: &mut Partial,
    slot: usize,
    keep: &[Compiled],
    stack: &mut Vec<u8>,
    leaf: &mut dyn FnMut(&Partial) -> bool,
) -> bool {
    let m = t.m;
    if slot == m + m * m {
        return leaf(t);
    }
    for v in 0..m as u8 {
        if slot < m {
            t.neg[slot] = v;
        } else {
            t.or[slot - m] = v;
        }
        if t.consistent(keep, stack) && search(t, slot + 1, keep, stack, leaf) {
            return true;
        }
    }
    if slot < m {
        t.neg[slot] = UNKNOWN;
    } else {
        t.or[slot - m] = UNKNOWN;
    }
    false
}

impl fmt::Display for LogicalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &mut dyn Iterator<Item = usize>| xs.map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        writeln!(f, "size: {}", self.size)?;
        writeln!(f, "designated: {}", join(&mut (0..self.size).filter(|&v| self.designated[v])))?;
        writeln!(f, "neg: {}", join(&mut self.neg.iter().copied()))?;
        writeln!(f, "or:")?;
        for row in &self.or {
            writeln!(f, "{}", join(&mut row.iter().copied()))?;
        }
        Ok(())
    }
}

impl FromStr for LogicalMatrix {
    type Err = MatrixError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |msg: &str| MatrixError::Malformed(msg.to_string());
        let nums = |s: &str| -> Result<Vec<usize>, MatrixError> {
            s.split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|_| bad(&format!("bad value `{}`", x.trim()))))
                .collect()
        };
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let mut field = |name: &str| -> Result<String, MatrixError> {
            let line = lines.next().ok_or_else(|| bad(&format!("missing `{name}:`")))?;
            let rest = line.strip_prefix(name).and_then(|r| r.strip_prefix(':'));
            rest.map(|r| r.trim().to_string()).ok_or_else(|| bad(&format!("expected `{name}:`, found `{line}`")))
        };
        let size: usize = field("size")?.parse().map_err(|_| bad("bad size"))?;
        let desig = nums(&field("designated")?)?;
        let neg = nums(&field("neg")?)?;
        let inline = field("or")?;
        if !inline.is_empty() {
            return Err(bad("`or:` rows go on the following lines"));
        }
        let or = lines.by_ref().map(nums).collect::<Result<Vec<_>, _>>()?;
        if desig.iter().any(|&v| v >= size) {
            return Err(bad("designated value outside the matrix"));
        }
        let designated = (0..size).map(|v| desig.contains(&v)).collect();
        LogicalMatrix::new(designated, neg, or)
    }
}
