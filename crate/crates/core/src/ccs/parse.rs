use thiserror::Error;

use super::ast::Term;
use crate::label::{Alphabet, Label};

/// Errors carry the byte offset where they were detected.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown label `{label}` at {pos}")]
    UnknownLabel { pos: usize, label: String },
    #[error("unbound variable `{var}` at {pos}")]
    Unbound { pos: usize, var: String },
    #[error("recursion variable `{var}` at {pos} is not guarded by a prefix")]
    Unguarded { pos: usize, var: String },
    #[error("the silent label cannot be restricted (at {pos})")]
    RestrictTau { pos: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Complement,
    Dot,
    Plus,
    Bar,
    LParen,
    RParen,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'.' => Tok::Dot,
            b'+' => Tok::Plus,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'|' if bytes.get(i + 1) == Some(&b'|') => {
                out.push((i, Tok::Bar));
                i += 2;
                continue;
            }
            b'^' if bytes.get(i + 1) == Some(&b'-') => {
                out.push((i, Tok::Complement));
                i += 2;
                continue;
            }
            b'a'..=b'z' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax { pos: i, msg: format!("unexpected character `{ch}`") });
            }
        };
        out.push((i, tok));
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    cfg: &'a Alphabet,
    /// Enclosing recursion variables, innermost last, with whether the
    /// current position is under a prefix inside their body.
    bound: Vec<(String, bool)>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(ParseError::Syntax { pos: self.pos(), msg: format!("expected {what}") })
        }
    }

    fn ident(&mut self, what: &str) -> Result<(usize, String), ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Ident(s) => Ok((pos, s)),
            _ => Err(ParseError::Syntax { pos, msg: format!("expected {what}") }),
        }
    }

    /// A label, possibly followed by `^-` for its complement.
    fn label(&mut self) -> Result<(usize, Label), ParseError> {
        let (pos, name) = self.ident("a label")?;
        let l = Label::new(&name);
        if !self.cfg.contains(&l) {
            return Err(ParseError::UnknownLabel { pos, label: name });
        }
        if *self.peek() == Tok::Complement {
            self.bump();
            return match self.cfg.complement(&l) {
                Some(c) => Ok((pos, c.clone())),
                None => Err(ParseError::UnknownLabel { pos, label: format!("{name}^-") }),
            };
        }
        Ok((pos, l))
    }

    fn par(&mut self) -> Result<Term, ParseError> {
        let mut t = self.sum()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            t = Term::par(t, self.sum()?);
        }
        Ok(t)
    }

    fn sum(&mut self) -> Result<Term, ParseError> {
        let mut t = self.unary()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            t = Term::sum(t, self.unary()?);
        }
        Ok(t)
    }

    fn unary(&mut self) -> Result<Term, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::LParen if matches!(self.peek2(), Tok::Ident(s) if s == "nu") => {
                self.bump();
                self.bump();
                let (lpos, l) = self.label()?;
                if &l == self.cfg.tau() {
                    return Err(ParseError::RestrictTau { pos: lpos });
                }
                self.expect(Tok::RParen, "`)` after the restricted label")?;
                Ok(Term::Restrict(l, Box::new(self.unary()?)))
            }
            Tok::LParen => {
                self.bump();
                let t = self.par()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            Tok::Ident(s) if s == "nil" => {
                self.bump();
                Ok(Term::Nil)
            }
            Tok::Ident(s) if s == "rec" => {
                self.bump();
                self.expect(Tok::LParen, "`(` after rec")?;
                let (_, x) = self.ident("a variable")?;
                self.expect(Tok::RParen, "`)` after the variable")?;
                self.bound.push((x.clone(), false));
                let body = self.unary();
                self.bound.pop();
                Ok(Term::Rec(x, Box::new(body?)))
            }
            Tok::Ident(s) if s == "nu" => {
                Err(ParseError::Syntax { pos, msg: "restriction is written `(nu a) P`".into() })
            }
            Tok::Ident(_) if matches!(self.peek2(), Tok::Dot | Tok::Complement) => {
                let (_, l) = self.label()?;
                self.expect(Tok::Dot, "`.` after the prefix label")?;
                let saved = self.bound.clone();
                self.bound.iter_mut().for_each(|b| b.1 = true);
                let body = self.unary();
                self.bound = saved;
                Ok(Term::Prefix(l, Box::new(body?)))
            }
            Tok::Ident(x) => {
                self.bump();
                match self.bound.iter().rev().find(|b| b.0 == x) {
                    None => Err(ParseError::Unbound { pos, var: x }),
                    Some((_, false)) => Err(ParseError::Unguarded { pos, var: x }),
                    Some(_) => Ok(Term::Var(x)),
                }
            }
            _ => Err(ParseError::Syntax { pos, msg: "expected a process".into() }),
        }
    }
}

/// Parses a closed, guarded term. `+` binds tighter than `||`; prefixes,
/// restrictions and `rec` bind tighter than both.
pub fn parse(text: &str, cfg: &Alphabet) -> Result<Term, ParseError> {
    let mut p = Parser { toks: tokenize(text)?, at: 0, cfg, bound: Vec::new() };
    let t = p.par()?;
    if *p.peek() != Tok::End {
        return Err(ParseError::Syntax { pos: p.pos(), msg: "unexpected input after the process".into() });
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> Alphabet {
        Alphabet::from_strs(&["a", "abar", "b", "tau"], "tau", &[("a", "abar")]).unwrap()
    }

    #[test]
    fn parses_examples() {
        let t = parse("a.nil || abar.nil", &cfg()).unwrap();
        assert_eq!(t, Term::par(Term::prefix("a", Term::Nil), Term::prefix("abar", Term::Nil)));
        assert_eq!(parse("a.nil || a^-.nil", &cfg()).unwrap(), t);
        assert_eq!(parse("rec(x) a.x", &cfg()).unwrap(), Term::rec("x", Term::prefix("a", Term::var("x"))));
    }

    #[test]
    fn precedence() {
        let t = parse("a.nil + b.nil || (nu a) a.b.nil", &cfg()).unwrap();
        assert_eq!(
            t,
            Term::par(
                Term::sum(Term::prefix("a", Term::Nil), Term::prefix("b", Term::Nil)),
                Term::restrict("a", Term::prefix("a", Term::prefix("b", Term::Nil)))
            )
        );
        let t = parse("rec(x) a.x + b.nil", &cfg()).unwrap();
        assert!(matches!(t, Term::Sum(..)));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse("rec(x) x", &cfg()), Err(ParseError::Unguarded { pos: 7, .. })));
        assert!(matches!(parse("rec(x) rec(y) (a.y + x)", &cfg()), Err(ParseError::Unguarded { .. })));
        assert!(matches!(parse("a.y", &cfg()), Err(ParseError::Unbound { .. })));
        assert!(matches!(parse("rec(x) a.x + x", &cfg()), Err(ParseError::Unbound { pos: 13, .. })));
        assert!(matches!(parse("c.nil", &cfg()), Err(ParseError::UnknownLabel { pos: 0, .. })));
        assert!(matches!(parse("b^-.nil", &cfg()), Err(ParseError::UnknownLabel { .. })));
        assert!(matches!(parse("(nu tau) a.nil", &cfg()), Err(ParseError::RestrictTau { .. })));
        assert!(matches!(parse("a.nil +", &cfg()), Err(ParseError::Syntax { pos: 7, .. })));
        assert!(matches!(parse("a.nil )", &cfg()), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("A.nil", &cfg()), Err(ParseError::Syntax { pos: 0, .. })));
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "a.nil || abar.nil",
            "(a.nil + b.nil) || a.nil",
            "a.nil || (b.nil || a.nil)",
            "a.(b.nil + a.nil)",
            "(nu a) (a.nil || abar.nil)",
            "rec(x) (a.x + b.nil)",
            "a.nil + b.nil + nil",
        ] {
            let t = parse(s, &cfg()).unwrap();
            assert_eq!(t.to_string(), s);
            assert_eq!(parse(&t.to_string(), &cfg()).unwrap(), t);
        }
    }
}
