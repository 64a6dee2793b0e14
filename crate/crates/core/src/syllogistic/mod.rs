//! The syllogistic fragment: propositional combinations of the class
//! relations `a` (inclusion) and `i` (overlap) over term variables, read in
//! finite universes where classes may be empty.
//!
//! `e(x,y)` and `o(x,y)` are accepted on input and normalized at parse time
//! to `~i(x,y)` and `~a(x,y)`.

mod derive;
mod moods;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::formula::{parse_infix, Formula, ParseError};
use crate::hilbert::{HilbertProof, Kernel, Rejection};

pub use derive::derive;
pub use moods::{mood_report, moods, Mood, MoodRow, ProofStatus};

/// Largest number of interpretations [`valid_syll`] will enumerate.
pub const INTERPRETATION_CAP: u64 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SyllError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("not a syllogistic formula: {0}")]
    NotSyllogistic(String),
    #[error("term variable `{0}` has no class")]
    Unassigned(String),
    #[error("element {element} is outside the universe of size {universe}")]
    OutOfUniverse { element: usize, universe: usize },
    #[error("{interpretations} interpretations exceed the cap of {cap}")]
    TooLarge { interpretations: u64, cap: u64 },
    #[error("unknown system `{0}` (expected goedel, lukasiewicz, shepherdson or goedel-datisi)")]
    UnknownSystem(String),
    #[error("no derivation found: {0}")]
    NoDerivation(String),
    #[error("malformed interpretation: {0}")]
    Malformed(String),
}

/// Parses a syllogistic formula, rewriting `e` and `o`.
pub fn parse_syll(text: &str) -> Result<Formula, SyllError> {
    normalize(&parse_infix(text)?)
}

/// Rewrites `e`/`o` atoms and rejects anything outside the fragment.
pub fn normalize(f: &Formula) -> Result<Formula, SyllError> {
    let rec = |g: &Formula| normalize(g);
    Ok(match f {
        Formula::Atom(rel, args) => {
            if args.len() != 2 {
                return Err(SyllError::NotSyllogistic(format!("`{f}` must relate two terms")));
            }
            match rel.as_str() {
                "a" | "i" => f.clone(),
                "e" => Formula::not(Formula::atom("i", args.clone())),
                "o" => Formula::not(Formula::atom("a", args.clone())),
                _ => return Err(SyllError::NotSyllogistic(format!("unknown relation `{rel}`"))),
            }
        }
        Formula::Var(v) => return Err(SyllError::NotSyllogistic(format!("propositional variable `{v}`"))),
        Formula::Forall(..) | Formula::Exists(..) => {
            return Err(SyllError::NotSyllogistic("quantifiers are not part of the fragment".into()))
        }
        Formula::Not(a) => Formula::not(rec(a)?),
        Formula::And(l, r) => Formula::and(rec(l)?, rec(r)?),
        Formula::Or(l, r) => Formula::or(rec(l)?, rec(r)?),
        Formula::Impl(l, r) => Formula::implies(rec(l)?, rec(r)?),
        Formula::Equiv(l, r) => Formula::equiv(rec(l)?, rec(r)?),
    })
}

/// Term variables in sorted order.
pub fn term_vars(f: &Formula) -> Vec<String> {
    f.free_individual_vars().into_iter().collect()
}

/// A universe `{0..universe-1}` and a class for each term variable.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassInterpretation {
    pub universe: usize,
    pub classes: BTreeMap<String, BTreeSet<usize>>,
}

impl ClassInterpretation {
    fn class(&self, t: &str) -> Result<&BTreeSet<usize>, SyllError> {
        self.classes.get(t).ok_or_else(|| SyllError::Unassigned(t.into()))
    }

    fn from_masks(universe: usize, vars: &[String], masks: &[u32]) -> Self {
        let classes = vars
            .iter()
            .zip(masks)
            .map(|(v, m)| (v.clone(), (0..universe).filter(|e| m >> e & 1 == 1).collect()))
            .collect();
        ClassInterpretation { universe, classes }
    }
}

impl fmt::Display for ClassInterpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "universe: {}", self.universe)?;
        for (t, class) in &self.classes {
            let items: Vec<String> = class.iter().map(|e| e.to_string()).collect();
            writeln!(f, "{t}: {{{}}}", items.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for ClassInterpretation {
    type Err = SyllError;

    /// Reads the format written by `Display`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |m: String| SyllError::Malformed(m);
        let mut out = ClassInterpretation::default();
        let mut saw_universe = false;
        for line in s.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (key, value) = line.split_once(':').ok_or_else(|| bad(format!("`{line}` has no `:`")))?;
            let (key, value) = (key.trim(), value.trim());
            if key == "universe" {
                out.universe = value.parse().map_err(|_| bad(format!("bad universe size `{value}`")))?;
                saw_universe = true;
                continue;
            }
            let inner = value
                .strip_prefix('{')
                .and_then(|v| v.strip_suffix('}'))
                .ok_or_else(|| bad(format!("class of `{key}` must be written {{...}}")))?;
            let mut class = BTreeSet::new();
            for item in inner.split(',').map(str::trim).filter(|i| !i.is_empty()) {
                class.insert(item.parse().map_err(|_| bad(format!("bad element `{item}`")))?);
            }
            out.classes.insert(key.to_string(), class);
        }
        if !saw_universe {
            return Err(bad("missing `universe:` line".into()));
        }
        for class in out.classes.values() {
            if let Some(&e) = class.iter().find(|&&e| e >= out.universe) {
                return Err(SyllError::OutOfUniverse { element: e, universe: out.universe });
            }
        }
        Ok(out)
    }
}

pub fn eval_syll(f: &Formula, interp: &ClassInterpretation) -> Result<bool, SyllError> {
    let rec = |g: &Formula| eval_syll(g, interp);
    Ok(match f {
        Formula::Atom(rel, args) if args.len() == 2 => {
            let (x, y) = (interp.class(&args[0])?, interp.class(&args[1])?);
            match rel.as_str() {
                "a" => x.is_subset(y),
                "i" => !x.is_disjoint(y),
                "e" => x.is_disjoint(y),
                "o" => !x.is_subset(y),
                _ => return Err(SyllError::NotSyllogistic(format!("unknown relation `{rel}`"))),
            }
        }
        Formula::Not(a) => !rec(a)?,
        Formula::And(l, r) => rec(l)? && rec(r)?,
        Formula::Or(l, r) => rec(l)? || rec(r)?,
        Formula::Impl(l, r) => !rec(l)? || rec(r)?,
        Formula::Equiv(l, r) => rec(l)? == rec(r)?,
        other => return Err(SyllError::NotSyllogistic(format!("`{other}`"))),
    })
}

/// Which interpretations count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SyllOptions {
    pub max_universe: usize,
    /// Skip the empty universe.
    pub nonempty_universe: bool,
    /// Skip assignments with an empty class (existential import).
    pub nonempty_classes: bool,
}

impl Default for SyllOptions {
    fn default() -> Self {
        SyllOptions { max_universe: 4, nonempty_universe: false, nonempty_classes: false }
    }
}

impl SyllOptions {
    pub fn with_import(self) -> Self {
        SyllOptions { nonempty_classes: true, ..self }
    }

    /// These options with the universe raised to the small-model bound of
    /// `f`, so that the verdict is definitive.
    pub fn definitive_for(self, f: &Formula) -> Self {
        SyllOptions { max_universe: self.max_universe.max(small_model_bound(f, &self)), ..self }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SyllVerdict {
    /// No countermodel, and the search covered the small-model bound.
    Valid,
    /// No countermodel up to the searched size, which is below the bound.
    NoneFound {
        max_universe: usize,
        bound: usize,
    },
    Countermodel(ClassInterpretation),
}

impl SyllVerdict {
    pub fn is_countermodel(&self) -> bool {
        matches!(self, SyllVerdict::Countermodel(_))
    }
}

/// Universe size that suffices for a countermodel if there is one.
///
/// A countermodel keeps its verdict when cut down to one witness point per
/// atom (an element of `x∩y` for a true `i(x,y)`, of `x\y` for a false
/// `a(x,y)`), plus one per class when classes must be nonempty; points in
/// the same classes can be merged, and a point in no class witnesses
/// nothing, so `2^n - 1` points also suffice.
pub fn small_model_bound(f: &Formula, opts: &SyllOptions) -> usize {
    let n = term_vars(f).len();
    let mut atoms = BTreeSet::new();
    f.walk(&mut |g| {
        if let Formula::Atom(..) = g {
            atoms.insert(g.clone());
        }
    });
    let witnesses = atoms.len() + if opts.nonempty_classes { n } else { 0 };
    let profiles = if n >= usize::BITS as usize - 1 { usize::MAX } else { (1usize << n) - 1 };
    witnesses.min(profiles).max(opts.nonempty_universe as usize)
}

#[derive(Clone, Debug)]
enum Compiled {
    A(usize, usize),
    I(usize, usize),
    Not(Box<Compiled>),
    And(Box<Compiled>, Box<Compiled>),
    Or(Box<Compiled>, Box<Compiled>),
    Impl(Box<Compiled>, Box<Compiled>),
    Equiv(Box<Compiled>, Box<Compiled>),
}

impl Compiled {
    fn new(f: &Formula, vars: &[String]) -> Result<Self, SyllError> {
        let idx = |t: &String| vars.iter().position(|v| v == t).expect("listed");
        let b = |g: &Formula| Compiled::new(g, vars).map(Box::new);
        Ok(match f {
            Formula::Atom(rel, args) if args.len() == 2 => match rel.as_str() {
                "a" => Compiled::A(idx(&args[0]), idx(&args[1])),
                "i" => Compiled::I(idx(&args[0]), idx(&args[1])),
                "e" => Compiled::Not(Box::new(Compiled::I(idx(&args[0]), idx(&args[1])))),
                "o" => Compiled::Not(Box::new(Compiled::A(idx(&args[0]), idx(&args[1])))),
                _ => return Err(SyllError::NotSyllogistic(format!("unknown relation `{rel}`"))),
            },
            Formula::Not(a) => Compiled::Not(b(a)?),
            Formula::And(l, r) => Compiled::And(b(l)?, b(r)?),
            Formula::Or(l, r) => Compiled::Or(b(l)?, b(r)?),
            Formula::Impl(l, r) => Compiled::Impl(b(l)?, b(r)?),
            Formula::Equiv(l, r) => Compiled::Equiv(b(l)?, b(r)?),
            other => return Err(SyllError::NotSyllogistic(format!("`{other}`"))),
        })
    }

    fn eval(&self, m: &[u32]) -> bool {
        match self {
            Compiled::A(x, y) => m[*x] & !m[*y] == 0,
            Compiled::I(x, y) => m[*x] & m[*y] != 0,
            Compiled::Not(a) => !a.eval(m),
            Compiled::And(l, r) => l.eval(m) && r.eval(m),
            Compiled::Or(l, r) => l.eval(m) || r.eval(m),
            Compiled::Impl(l, r) => !l.eval(m) || r.eval(m),
            Compiled::Equiv(l, r) => l.eval(m) == r.eval(m),
        }
    }
}

/// Exhaustive search for a countermodel over universes of size up to
/// `opts.max_universe`.
///
/// Among all countermodels the reported one has the smallest nonempty
/// universe (the empty universe only if nothing else fails), then the
/// fewest empty classes, then the least assignment counting with the first
/// term variable as the fastest-moving digit.
pub fn valid_syll(f: &Formula, opts: &SyllOptions) -> Result<SyllVerdict, SyllError> {
    let vars = term_vars(f);
    let n = vars.len();
    let compiled = Compiled::new(f, &vars)?;
    let lo = opts.nonempty_universe as usize;
    let mut total: u64 = 0;
    for u in lo..=opts.max_universe {
        let bits = (u * n) as u32;
        total = total.saturating_add(if bits >= 63 { u64::MAX } else { 1u64 << bits });
    }
    if total > INTERPRETATION_CAP || opts.max_universe > 31 {
        return Err(SyllError::TooLarge { interpretations: total, cap: INTERPRETATION_CAP });
    }
    let mut best: Option<((bool, usize, usize), Vec<u32>)> = None;
    for u in lo..=opts.max_universe {
        let radix = 1u64 << u;
        let count = radix.pow(n as u32);
        let mut masks = vec![0u32; n];
        for code in 0..count {
            let mut c = code;
            for m in masks.iter_mut() {
                *m = (c % radix) as u32;
                c /= radix;
            }
            if opts.nonempty_classes && masks.contains(&0) {
                continue;
            }
            if compiled.eval(&masks) {
                continue;
            }
            let key = (u == 0, u, masks.iter().filter(|&&m| m == 0).count());
            let better = match &best {
                None => true,
                Some((k, bm)) => key < *k || (key == *k && masks.iter().rev().lt(bm.iter().rev())),
            };
            if better {
                best = Some((key, masks.clone()));
            }
        }
    }
    if let Some(((_, u, _), masks)) = best {
        return Ok(SyllVerdict::Countermodel(ClassInterpretation::from_masks(u, &vars, &masks)));
    }
    let bound = small_model_bound(f, opts);
    Ok(if opts.max_universe >= bound {
        SyllVerdict::Valid
    } else {
        SyllVerdict::NoneFound { max_universe: opts.max_universe, bound }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SyllSystem {
    /// Reflexivity and transitivity of `a`, and Dimatis.
    Goedel,
    /// `a(x,x)`, `i(x,x)`, Barbara and Datisi.
    Lukasiewicz,
    /// Lukasiewicz without `i(x,x)`, with `i(x,y) -> i(x,x)` and
    /// `i(x,x) | a(x,y)`.
    Shepherdson,
    /// Goedel's system with Datisi in place of Dimatis.
    GoedelDatisi,
}

const REFLEXIVITY: &str = "a(alpha,alpha)";
const BARBARA: &str = "a(alpha,beta) & a(beta,gamma) -> a(alpha,gamma)";
const DIMATIS: &str = "i(alpha,beta) & a(beta,gamma) -> i(gamma,alpha)";
const DATISI: &str = "a(beta,gamma) & i(beta,alpha) -> i(alpha,gamma)";

impl SyllSystem {
    pub const ALL: [SyllSystem; 4] =
        [SyllSystem::Goedel, SyllSystem::Lukasiewicz, SyllSystem::Shepherdson, SyllSystem::GoedelDatisi];

    pub fn name(self) -> &'static str {
        match self {
            SyllSystem::Goedel => "goedel",
            SyllSystem::Lukasiewicz => "lukasiewicz",
            SyllSystem::Shepherdson => "shepherdson",
            SyllSystem::GoedelDatisi => "goedel-datisi",
        }
    }

    /// The system's own axioms; in a kernel they are numbered from 5.
    pub fn axioms(self) -> Vec<Formula> {
        let texts: &[&str] = match self {
            SyllSystem::Goedel => &[REFLEXIVITY, BARBARA, DIMATIS],
            SyllSystem::Lukasiewicz => &[REFLEXIVITY, "i(alpha,alpha)", BARBARA, DATISI],
            SyllSystem::Shepherdson => {
                &[REFLEXIVITY, BARBARA, DATISI, "i(alpha,beta) -> i(alpha,alpha)", "i(alpha,alpha) | a(alpha,beta)"]
            }
            SyllSystem::GoedelDatisi => &[REFLEXIVITY, BARBARA, DATISI],
        };
        texts.iter().map(|t| parse_syll(t).expect("axiom text parses")).collect()
    }

    pub fn kernel(self) -> Kernel {
        Kernel::with_term_axioms(self.axioms())
    }

    /// Whether the intended reading requires nonempty classes.
    pub fn needs_import(self) -> bool {
        self == SyllSystem::Lukasiewicz
    }
}

impl fmt::Display for SyllSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SyllSystem {
    type Err = SyllError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SyllSystem::ALL.into_iter().find(|sys| sys.name() == s).ok_or_else(|| SyllError::UnknownSystem(s.into()))
    }
}

/// Checks a derivation in `system`: the propositional kernel extended with
/// the system's axioms and term renaming.
pub fn check_syll_proof(system: SyllSystem, proof: &HilbertProof) -> Result<(), Rejection> {
    system.kernel().check(proof)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Formula {
        parse_syll(t).unwrap()
    }

    #[test]
    fn sugar_is_normalized() {
        assert_eq!(s("e(x,y) | o(y,x)"), s("~i(x,y) | ~a(y,x)"));
        assert!(parse_syll("p -> a(x,y)").is_err());
        assert!(parse_syll("r(x,y)").is_err());
    }

    #[test]
    fn evaluation() {
        let i: ClassInterpretation = "universe: 1\nalpha: {}\nbeta: {0}\n".parse().unwrap();
        assert!(eval_syll(&s("a(alpha,beta)"), &i).unwrap());
        assert!(!eval_syll(&s("i(alpha,beta)"), &i).unwrap());
        assert!(eval_syll(&s("i(alpha,alpha) | a(alpha,beta)"), &i).unwrap());
        assert_eq!(eval_syll(&s("a(alpha,gamma)"), &i), Err(SyllError::Unassigned("gamma".into())));
        assert_eq!(i.to_string().parse::<ClassInterpretation>().unwrap(), i);
    }

    #[test]
    fn darapti_countermodel() {
        let f = s("a(alpha,beta) & a(alpha,gamma) -> i(beta,gamma)");
        let SyllVerdict::Countermodel(m) = valid_syll(&f, &SyllOptions::default()).unwrap() else {
            panic!("Darapti should fail");
        };
        assert_eq!(m.to_string(), "universe: 1\nalpha: {}\nbeta: {0}\ngamma: {}\n");
        let import = SyllOptions { max_universe: 6, ..SyllOptions::default() }.with_import();
        assert_eq!(small_model_bound(&f, &import), 6);
        assert_eq!(valid_syll(&f, &import).unwrap(), SyllVerdict::Valid);
    }

    #[test]
    fn bound_needs_more_points_than_terms() {
        let f = s("~(i(x,y) & o(x,y) & o(y,x))");
        let small = SyllOptions { max_universe: 2, ..SyllOptions::default() };
        assert_eq!(valid_syll(&f, &small).unwrap(), SyllVerdict::NoneFound { max_universe: 2, bound: 3 });
        let SyllVerdict::Countermodel(m) = valid_syll(&f, &SyllOptions::default()).unwrap() else { panic!() };
        assert_eq!(m.universe, 3);
    }

    #[test]
    fn systems() {
        assert_eq!("goedel-datisi".parse::<SyllSystem>().unwrap(), SyllSystem::GoedelDatisi);
        assert!("aristotle".parse::<SyllSystem>().is_err());
        assert_eq!(SyllSystem::Shepherdson.kernel().axioms().len(), 9);
    }
}
