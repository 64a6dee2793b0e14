use thiserror::Error;

use super::Formula;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Notation {
    Infix,
    Polish,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PrintError {
    #[error("Polish notation is only defined for propositional formulas")]
    NotPropositional,
    #[error("Polish notation needs single lowercase letters, found variable `{0}`")]
    BadVariable(String),
}

impl Formula {
    pub fn print(&self, notation: Notation) -> Result<String, PrintError> {
        match notation {
            Notation::Infix => Ok(infix(self)),
            Notation::Polish => {
                let mut out = String::new();
                polish(self, &mut out)?;
                Ok(out)
            }
        }
    }
}

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Equiv(..) => 1,
        Formula::Impl(..) => 2,
        Formula::Or(..) => 3,
        Formula::And(..) => 4,
        _ => 5,
    }
}

/// Canonical infix text with the fewest parentheses the grammar allows.
pub(crate) fn infix(f: &Formula) -> String {
    let mut out = String::new();
    write_infix(f, &mut out);
    out
}

fn write_child(f: &Formula, parens: bool, out: &mut String) {
    if parens {
        out.push('(');
        write_infix(f, out);
        out.push(')');
    } else {
        write_infix(f, out);
    }
}

fn write_infix(f: &Formula, out: &mut String) {
    let prec = precedence(f);
    match f {
        Formula::Var(v) => out.push_str(v),
        Formula::Atom(p, args) if p == "=" && args.len() == 2 => {
            out.push_str(&args[0]);
            out.push_str(" = ");
            out.push_str(&args[1]);
        }
        Formula::Atom(p, args) => {
            out.push_str(p);
            out.push('(');
            out.push_str(&args.join(","));
            out.push(')');
        }
        Formula::Not(a) => {
            out.push('~');
            write_child(a, precedence(a) < 5, out);
        }
        Formula::Forall(x, a) => {
            out.push('(');
            out.push_str(x);
            out.push(')');
            write_child(a, precedence(a) < 5, out);
        }
        Formula::Exists(x, a) => {
            out.push_str("(E");
            out.push_str(x);
            out.push(')');
            write_child(a, precedence(a) < 5, out);
        }
        Formula::And(l, r) | Formula::Or(l, r) => {
            // left associative
            write_child(l, precedence(l) < prec, out);
            out.push_str(if matches!(f, Formula::And(..)) { " & " } else { " | " });
            write_child(r, precedence(r) <= prec, out);
        }
        Formula::Impl(l, r) | Formula::Equiv(l, r) => {
            // right associative
            write_child(l, precedence(l) <= prec, out);
            out.push_str(if matches!(f, Formula::Impl(..)) { " -> " } else { " <-> " });
            write_child(r, precedence(r) < prec, out);
        }
    }
}

fn polish(f: &Formula, out: &mut String) -> Result<(), PrintError> {
    let binary = |c: char, l: &Formula, r: &Formula, out: &mut String| {
        out.push(c);
        polish(l, out)?;
        polish(r, out)
    };
    match f {
        Formula::Var(v) => {
            let mut cs = v.chars();
            match (cs.next(), cs.next()) {
                (Some(c), None) if c.is_ascii_lowercase() => {
                    out.push(c);
                    Ok(())
                }
                _ => Err(PrintError::BadVariable(v.clone())),
            }
        }
        Formula::Not(a) => {
            out.push('N');
            polish(a, out)
        }
        Formula::And(l, r) => binary('K', l, r, out),
        Formula::Or(l, r) => binary('A', l, r, out),
        Formula::Impl(l, r) => binary('C', l, r, out),
        Formula::Equiv(l, r) => binary('E', l, r, out),
        Formula::Atom(..) | Formula::Forall(..) | Formula::Exists(..) => Err(PrintError::NotPropositional),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse_infix, parse_polish};

    fn p(s: &str) -> Formula {
        parse_infix(s).unwrap()
    }

    #[test]
    fn infix_canonical() {
        assert_eq!(p("p -> (p | q)").to_string(), "p -> p | q");
        assert_eq!(p("(p -> q) -> r").to_string(), "(p -> q) -> r");
        assert_eq!(p("p -> (q -> r)").to_string(), "p -> q -> r");
        assert_eq!(p("p | (q | r)").to_string(), "p | (q | r)");
        assert_eq!(p("(p | q) | r").to_string(), "p | q | r");
        assert_eq!(p("~(p & q)").to_string(), "~(p & q)");
        assert_eq!(p("(x)P(x)").to_string(), "(x)P(x)");
        assert_eq!(p("(Ex)(P(x) & x = y)").to_string(), "(Ex)(P(x) & x = y)");
        assert_eq!(p("~(x)~P(x)").to_string(), "~(x)~P(x)");
    }

    #[test]
    fn polish_output() {
        assert_eq!(p("p -> q").print(Notation::Polish).unwrap(), "Cpq");
        assert_eq!(p("~(p <-> q) & r").print(Notation::Polish).unwrap(), "KNEpqr");
        assert_eq!(p("(x)P(x)").print(Notation::Polish), Err(PrintError::NotPropositional));
        assert!(matches!(p("pq -> q").print(Notation::Polish), Err(PrintError::BadVariable(_))));
        let f = p("(p | q -> r) <-> ~s");
        assert_eq!(parse_polish(&f.print(Notation::Polish).unwrap()).unwrap(), f);
    }
}
