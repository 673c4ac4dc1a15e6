//! Recursive-descent parser for the concrete syntax.
//!
//! Precedence, tightest first: prefix operators (`~`, `nabla(r)`, `Delta(r)`,
//! `delta(n)`), `*`, `+`, `/\`, `\/`, `->` (right-associative), `<->`.
//! The binary operators other than `->` associate to the left.

use super::{DFormula, DeltaN, Formula, Nabla, Term};
use crate::algebra::UnitRational;
use crate::error::{Error, Result};

pub fn parse_ql(text: &str) -> Result<Formula> {
    Parser::<Nabla>::new(text)?.parse_all()
}

pub fn parse_ratluk(text: &str) -> Result<DFormula> {
    Parser::<DeltaN>::new(text)?.parse_all()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum PrefixKind {
    Nabla,
    DeltaR,
    DeltaN,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Var(usize),
    Not,
    Implies,
    Iff,
    Plus,
    Times,
    Or,
    And,
    LParen,
    RParen,
    Prefix(PrefixKind, String),
}

trait Language: super::Connective + Sized {
    fn apply(
        kind: PrefixKind,
        arg: &str,
        child: Term<Self>,
    ) -> std::result::Result<Term<Self>, String>;
}

impl Language for Nabla {
    fn apply(kind: PrefixKind, arg: &str, child: Formula) -> std::result::Result<Formula, String> {
        let r = || arg.parse::<UnitRational>().map_err(|e| e.to_string());
        match kind {
            PrefixKind::Nabla => Ok(Formula::nabla(r()?, child)),
            PrefixKind::DeltaR => Ok(Formula::delta_r(r()?, child)),
            PrefixKind::DeltaN => {
                Err("delta(n) is not a connective of this language; use Delta(1/n)".into())
            }
        }
    }
}

impl Language for DeltaN {
    fn apply(
        kind: PrefixKind,
        arg: &str,
        child: DFormula,
    ) -> std::result::Result<DFormula, String> {
        match kind {
            PrefixKind::DeltaN => {
                let n: u64 = arg
                    .trim()
                    .parse()
                    .map_err(|_| format!("delta expects a positive integer, found `{arg}`"))?;
                DFormula::delta_n(n, child).map_err(|e| e.to_string())
            }
            PrefixKind::Nabla | PrefixKind::DeltaR => {
                Err("nabla/Delta are not connectives of this language; use delta(n)".into())
            }
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let err = |pos: usize, msg: &str| Error::Syntax {
        pos,
        msg: msg.to_string(),
    };
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < text.len() {
        let rest = &text[i..];
        let c = rest.chars().next().unwrap();
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        let start = i;
        let simple = [
            ("<->", Tok::Iff),
            ("->", Tok::Implies),
            ("\\/", Tok::Or),
            ("/\\", Tok::And),
            ("~", Tok::Not),
            ("+", Tok::Plus),
            ("*", Tok::Times),
            ("(", Tok::LParen),
            (")", Tok::RParen),
            ("¬", Tok::Not),
            ("→", Tok::Implies),
            ("↔", Tok::Iff),
            ("⊕", Tok::Plus),
            ("⊙", Tok::Times),
            ("∨", Tok::Or),
            ("∧", Tok::And),
        ];
        if let Some((s, tok)) = simple.iter().find(|(s, _)| rest.starts_with(s)) {
            out.push((start, tok.clone()));
            i += s.len();
            continue;
        }
        if c.is_ascii_alphabetic() {
            let mut j = i;
            while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                j += 1;
            }
            let word = &text[i..j];
            if let Some(idx) = word.strip_prefix('x') {
                if !idx.is_empty() && idx.bytes().all(|b| b.is_ascii_digit()) {
                    let n = idx
                        .parse()
                        .map_err(|_| err(start, "variable index too large"))?;
                    out.push((start, Tok::Var(n)));
                    i = j;
                    continue;
                }
            }
            let kind = match word {
                "nabla" => PrefixKind::Nabla,
                "Delta" => PrefixKind::DeltaR,
                "delta" => PrefixKind::DeltaN,
                _ => return Err(err(start, &format!("unknown identifier `{word}`"))),
            };
            let mut k = j;
            while k < bytes.len() && (bytes[k] as char).is_ascii_whitespace() {
                k += 1;
            }
            if k >= bytes.len() || bytes[k] != b'(' {
                return Err(err(k, &format!("expected `(` after `{word}`")));
            }
            let close = text[k..]
                .find(')')
                .map(|off| k + off)
                .ok_or_else(|| err(k, "unclosed argument list"))?;
            out.push((
                start,
                Tok::Prefix(kind, text[k + 1..close].trim().to_string()),
            ));
            i = close + 1;
            continue;
        }
        return Err(err(start, &format!("unexpected character `{c}`")));
    }
    Ok(out)
}

struct Parser<C> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    _lang: std::marker::PhantomData<C>,
}

impl<C: Language> Parser<C> {
    fn new(text: &str) -> Result<Self> {
        Ok(Parser {
            toks: tokenize(text)?,
            pos: 0,
            end: text.len(),
            _lang: std::marker::PhantomData,
        })
    }

    fn parse_all(mut self) -> Result<Term<C>> {
        let t = self.iff()?;
        if let Some((p, tok)) = self.toks.get(self.pos) {
            return Err(Error::Syntax {
                pos: *p,
                msg: format!("unexpected token {tok:?}"),
            });
        }
        Ok(t)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn left_assoc(
        &mut self,
        op: Tok,
        next: fn(&mut Self) -> Result<Term<C>>,
        build: fn(Term<C>, Term<C>) -> Term<C>,
    ) -> Result<Term<C>> {
        let mut acc = next(self)?;
        while self.eat(&op) {
            let rhs = next(self)?;
            acc = build(acc, rhs);
        }
        Ok(acc)
    }

    fn iff(&mut self) -> Result<Term<C>> {
        self.left_assoc(Tok::Iff, Self::implication, Term::iff)
    }

    fn implication(&mut self) -> Result<Term<C>> {
        let lhs = self.or()?;
        if self.eat(&Tok::Implies) {
            let rhs = self.implication()?;
            return Ok(Term::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Term<C>> {
        self.left_assoc(Tok::Or, Self::and, Term::join)
    }

    fn and(&mut self) -> Result<Term<C>> {
        self.left_assoc(Tok::And, Self::plus, Term::meet)
    }

    fn plus(&mut self) -> Result<Term<C>> {
        self.left_assoc(Tok::Plus, Self::times, Term::plus)
    }

    fn times(&mut self) -> Result<Term<C>> {
        self.left_assoc(Tok::Times, Self::unary, Term::times)
    }

    fn unary(&mut self) -> Result<Term<C>> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Not) => {
                self.pos += 1;
                Ok(Term::neg(self.unary()?))
            }
            Some(Tok::Prefix(kind, arg)) => {
                self.pos += 1;
                let child = self.unary()?;
                C::apply(kind, &arg, child).map_err(|msg| Error::Syntax { pos: at, msg })
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Term<C>> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Var(i)) => {
                self.pos += 1;
                Ok(Term::Var(i))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.iff()?;
                if !self.eat(&Tok::RParen) {
                    return Err(Error::Syntax {
                        pos: self.here(),
                        msg: "expected `)`".into(),
                    });
                }
                Ok(t)
            }
            Some(tok) => Err(Error::Syntax {
                pos: at,
                msg: format!("expected a formula, found {tok:?}"),
            }),
            None => Err(Error::Syntax {
                pos: at,
                msg: "unexpected end of input".into(),
            }),
        }
    }
}
