use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::Formula;

/// Position of a subformula: child indices from the root, 0 = left or only
/// child, 1 = right child. Written `.` for the root, `0.1` otherwise.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path(pub Vec<u8>);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("malformed path `{0}`")]
    Malformed(String),
    #[error("path {0} does not address a subformula")]
    OutOfRange(Path),
}

impl Path {
    pub fn root() -> Path {
        Path(Vec::new())
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, i: u8) -> Path {
        let mut v = self.0.clone();
        v.push(i);
        Path(v)
    }

    /// `prefix` followed by this path.
    pub fn under(&self, prefix: &[u8]) -> Path {
        let mut v = prefix.to_vec();
        v.extend_from_slice(&self.0);
        Path(v)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str(".");
        }
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        f.write_str(&parts.join("."))
    }
}

impl FromStr for Path {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "." || s.is_empty() {
            return Ok(Path::root());
        }
        s.split('.')
            .map(|part| match part {
                "0" => Ok(0),
                "1" => Ok(1),
                _ => Err(PathError::Malformed(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Path)
    }
}

impl Formula {
    pub fn at(&self, path: &Path) -> Option<&Formula> {
        let mut cur = self;
        for &step in &path.0 {
            cur = *cur.children().get(step as usize)?;
        }
        Some(cur)
    }

    /// Copy of `self` with the subformula at `path` replaced by `new`.
    pub fn replace_at(&self, path: &Path, new: Formula) -> Result<Formula, PathError> {
        replace(self, &path.0, new).ok_or_else(|| PathError::OutOfRange(path.clone()))
    }
}

fn replace(f: &Formula, steps: &[u8], new: Formula) -> Option<Formula> {
    let Some((&first, rest)) = steps.split_first() else {
        return Some(new);
    };
    Some(match (f, first) {
        (Formula::Not(a), 0) => Formula::not(replace(a, rest, new)?),
        (Formula::Forall(x, a), 0) => Formula::forall(x.clone(), replace(a, rest, new)?),
        (Formula::Exists(x, a), 0) => Formula::exists(x.clone(), replace(a, rest, new)?),
        (Formula::And(l, r), i) => {
            let (l, r) = replace_pair(l, r, i, rest, new)?;
            Formula::and(l, r)
        }
        (Formula::Or(l, r), i) => {
            let (l, r) = replace_pair(l, r, i, rest, new)?;
            Formula::or(l, r)
        }
        (Formula::Impl(l, r), i) => {
            let (l, r) = replace_pair(l, r, i, rest, new)?;
            Formula::implies(l, r)
        }
        (Formula::Equiv(l, r), i) => {
            let (l, r) = replace_pair(l, r, i, rest, new)?;
            Formula::equiv(l, r)
        }
        _ => return None,
    })
}

fn replace_pair(l: &Formula, r: &Formula, i: u8, rest: &[u8], new: Formula) -> Option<(Formula, Formula)> {
    match i {
        0 => Some((replace(l, rest, new)?, r.clone())),
        1 => Some((l.clone(), replace(r, rest, new)?)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_text() {
        assert_eq!(".".parse::<Path>().unwrap(), Path::root());
        assert_eq!("0.1".parse::<Path>().unwrap(), Path(vec![0, 1]));
        assert_eq!(Path(vec![1, 0]).to_string(), "1.0");
        assert!("0.2".parse::<Path>().is_err());
    }

    #[test]
    fn replace_inside() {
        let f: Formula = "p -> (q | r)".parse().unwrap();
        let g = f.replace_at(&Path(vec![1, 0]), Formula::var("s")).unwrap();
        assert_eq!(g, "p -> (s | r)".parse().unwrap());
        assert!(f.replace_at(&Path(vec![0, 0]), Formula::var("s")).is_err());
    }
}
