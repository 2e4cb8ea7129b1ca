use std::fmt;

use crate::label::Label;

/// A CCS process term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Nil,
    Prefix(Label, Box<Term>),
    Restrict(Label, Box<Term>),
    Sum(Box<Term>, Box<Term>),
    Par(Box<Term>, Box<Term>),
    Rec(String, Box<Term>),
    Var(String),
}

impl Term {
    pub fn prefix(l: &str, p: Term) -> Term {
        Term::Prefix(l.into(), Box::new(p))
    }

    pub fn restrict(l: &str, p: Term) -> Term {
        Term::Restrict(l.into(), Box::new(p))
    }

    pub fn sum(p: Term, q: Term) -> Term {
        Term::Sum(Box::new(p), Box::new(q))
    }

    pub fn par(p: Term, q: Term) -> Term {
        Term::Par(Box::new(p), Box::new(q))
    }

    pub fn rec(x: &str, p: Term) -> Term {
        Term::Rec(x.to_string(), Box::new(p))
    }

    pub fn var(x: &str) -> Term {
        Term::Var(x.to_string())
    }

    /// Binding strength: `||` is loosest, then `+`, then the prefix forms.
    fn level(&self) -> u8 {
        match self {
            Term::Par(..) => 0,
            Term::Sum(..) => 1,
            _ => 2,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, level: u8) -> fmt::Result {
        if self.level() < level {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Term::Nil => write!(f, "nil"),
            Term::Var(x) => write!(f, "{x}"),
            Term::Prefix(l, p) => {
                write!(f, "{l}.")?;
                p.write_at(f, 2)
            }
            Term::Restrict(l, p) => {
                write!(f, "(nu {l}) ")?;
                p.write_at(f, 2)
            }
            Term::Rec(x, p) => {
                write!(f, "rec({x}) ")?;
                p.write_at(f, 2)
            }
            Term::Sum(p, q) => {
                p.write_at(f, 1)?;
                write!(f, " + ")?;
                q.write_at(f, 2)
            }
            // sums under `||` keep their parentheses for readability
            Term::Par(p, q) => {
                p.write_at(f, if matches!(**p, Term::Sum(..)) { 2 } else { 0 })?;
                write!(f, " || ")?;
                q.write_at(f, 2)
            }
        }
    }
}

/// Prints a form that parses back to the same term, parenthesizing every
/// operand of `||` that is itself a sum or a right-nested parallel.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}
