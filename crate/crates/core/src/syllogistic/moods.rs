//! The 24 classical moods, checked semantically and, where forward
//! chaining finds a derivation, proved in a given system.

use std::fmt;

use super::{check_syll_proof, derive, parse_syll, SyllError, SyllOptions, SyllSystem, SyllVerdict};
use crate::formula::Formula;
use crate::hilbert::Rejection;

const CORPUS: &str = include_str!("../../data/moods.txt");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mood {
    pub name: String,
    pub figure: u8,
    pub formula: Formula,
}

/// The mood corpus, with terms `S`, `M`, `P`.
pub fn moods() -> Vec<Mood> {
    CORPUS
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut parts = l.splitn(3, ',').map(str::trim);
            let name = parts.next().expect("name").to_string();
            let figure = parts.next().and_then(|f| f.parse().ok()).expect("figure");
            let formula = parse_syll(parts.next().expect("formula")).expect("mood parses");
            Mood { name, figure, formula }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProofStatus {
    Checked { lines: usize },
    Rejected(Rejection),
    NotFound,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoodRow {
    pub mood: Mood,
    /// Classes may be empty.
    pub empty_allowed: SyllVerdict,
    /// Classes must be nonempty.
    pub with_import: SyllVerdict,
    pub proof: ProofStatus,
}

impl MoodRow {
    /// Valid without existential import.
    pub fn import_free(&self) -> bool {
        self.empty_allowed == SyllVerdict::Valid
    }
}

fn verdict(v: &SyllVerdict) -> &'static str {
    match v {
        SyllVerdict::Valid => "valid",
        SyllVerdict::NoneFound { .. } => "unknown",
        SyllVerdict::Countermodel(_) => "invalid",
    }
}

impl fmt::Display for MoodRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let proof = match &self.proof {
            ProofStatus::Checked { lines } => format!("derived ({lines} lines)"),
            ProofStatus::Rejected(r) => format!("rejected at line {}: {}", r.line, r.reason),
            ProofStatus::NotFound => "no derivation".into(),
        };
        write!(
            f,
            "{:<10} {}  empty-allowed: {:<7}  nonempty: {:<7}  {}",
            self.mood.name,
            self.mood.figure,
            verdict(&self.empty_allowed),
            verdict(&self.with_import),
            proof
        )
    }
}

/// Semantic verdicts for every mood, and the status of a derivation in
/// `system` when forward chaining finds one.
pub fn mood_report(system: SyllSystem) -> Result<Vec<MoodRow>, SyllError> {
    let opts = SyllOptions::default();
    moods()
        .into_iter()
        .map(|mood| {
            let empty_allowed = super::valid_syll(&mood.formula, &opts.definitive_for(&mood.formula))?;
            let import = opts.with_import().definitive_for(&mood.formula);
            let with_import = super::valid_syll(&mood.formula, &import)?;
            let proof = match derive(system, &mood.formula) {
                Ok(p) => match check_syll_proof(system, &p) {
                    Ok(()) => ProofStatus::Checked { lines: p.len() },
                    Err(r) => ProofStatus::Rejected(r),
                },
                Err(SyllError::NoDerivation(_)) => ProofStatus::NotFound,
                Err(e) => return Err(e),
            };
            Ok(MoodRow { mood, empty_allowed, with_import, proof })
        })
        .collect()
}
