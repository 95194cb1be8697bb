use std::rc::Rc;

use thiserror::Error;

use super::{Name, Term, T};
use crate::algebra::{Grade, Semiring};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("{line}:{col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Debug, Clone)]
pub struct Def {
    pub name: Name,
    pub ty: T,
    pub body: T,
}

#[derive(Debug, Clone, Default)]
pub struct Program {
    pub defs: Vec<Def>,
    pub main: Option<T>,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Backslash,
    LParen,
    RParen,
    Comma,
    Bar,
    Colon,
    Dot,
    Semi,
    Plus,
    Star,
    Minus,
    Gt,
    Eq,
    Eof,
}

const KEYWORDS: &[&str] = &[
    "Type", "Unit", "unit", "Pi", "Sigma", "let", "in", "case", "of", "box", "Box", "inj1", "inj2", "def", "main",
];

struct Lexed {
    toks: Vec<(Tok, usize, usize)>,
}

fn lex(text: &str) -> Result<Lexed, ParseError> {
    let mut toks = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let ident_char = |c: char| c.is_alphanumeric() || c == '_' || c == '%' || c == '\'';
    while i < chars.len() {
        let c = chars[i];
        let (l, cl) = (line, col);
        let mut adv = 1;
        let tok = match c {
            '\n' => {
                line += 1;
                col = 0;
                None
            }
            c if c.is_whitespace() => None,
            '-' if chars.get(i + 1) == Some(&'-') => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            '\\' | 'λ' => Some(Tok::Backslash),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '|' => Some(Tok::Bar),
            ':' => Some(Tok::Colon),
            '.' => Some(Tok::Dot),
            ';' => Some(Tok::Semi),
            '+' => Some(Tok::Plus),
            '*' => Some(Tok::Star),
            '-' => Some(Tok::Minus),
            '>' => Some(Tok::Gt),
            '=' => Some(Tok::Eq),
            c if ident_char(c) => {
                let start = i;
                while i + adv < chars.len() && ident_char(chars[i + adv]) {
                    adv += 1;
                }
                Some(Tok::Ident(chars[start..start + adv].iter().collect()))
            }
            other => {
                return Err(ParseError { line: l, col: cl, msg: format!("unexpected character `{other}`") });
            }
        };
        if let Some(t) = tok {
            toks.push((t, l, cl));
        }
        i += adv;
        col += adv;
    }
    toks.push((Tok::Eof, line, col));
    Ok(Lexed { toks })
}

struct Parser<'s> {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    sr: &'s Semiring,
}

type PResult<X> = Result<X, ParseError>;

impl<'s> Parser<'s> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn err<X>(&self, msg: impl Into<String>) -> PResult<X> {
        let (_, line, col) = self.toks[self.pos];
        Err(ParseError { line, col, msg: msg.into() })
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> PResult<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn expect_kw(&mut self, kw: &str) -> PResult<()> {
        if self.is_kw(kw) {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected `{kw}`"))
        }
    }

    fn ident(&mut self) -> PResult<Name> {
        match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                self.bump();
                Ok(s)
            }
            _ => self.err("expected identifier"),
        }
    }

    fn grade(&mut self) -> PResult<Grade> {
        match self.peek().clone() {
            Tok::Ident(s) => match self.sr.parse_grade(&s) {
                Some(g) => {
                    self.bump();
                    Ok(g)
                }
                None => self.err(format!("`{s}` is not a grade of semiring {}", self.sr.name())),
            },
            _ => self.err("expected grade"),
        }
    }

    /// `: q`
    fn annot_grade(&mut self) -> PResult<Grade> {
        self.expect(Tok::Colon, "`:`")?;
        self.grade()
    }

    fn expr(&mut self) -> PResult<T> {
        match self.peek().clone() {
            Tok::Backslash => {
                self.bump();
                let x = self.ident()?;
                let q = self.annot_grade()?;
                let a = self.expr()?;
                self.expect(Tok::Dot, "`.`")?;
                let b = self.expr()?;
                Ok(Rc::new(Term::Lam(x, q, a, b)))
            }
            Tok::Ident(kw) if kw == "Pi" || kw == "Sigma" => {
                self.bump();
                let x = self.ident()?;
                let q = self.annot_grade()?;
                let a = self.expr()?;
                self.expect(Tok::Dot, "`.`")?;
                let b = self.expr()?;
                Ok(Rc::new(if kw == "Pi" { Term::Pi(x, q, a, b) } else { Term::Sigma(x, q, a, b) }))
            }
            Tok::Ident(kw) if kw == "let" => {
                self.bump();
                if self.is_kw("unit") {
                    self.bump();
                    self.expect(Tok::Eq, "`=`")?;
                    let a = self.expr()?;
                    self.expect_kw("in")?;
                    let b = self.expr()?;
                    Ok(Rc::new(Term::UnitElim(a, b)))
                } else if self.is_kw("box") {
                    self.bump();
                    let x = self.ident()?;
                    self.expect(Tok::Eq, "`=`")?;
                    let a = self.expr()?;
                    self.expect_kw("in")?;
                    let b = self.expr()?;
                    Ok(Rc::new(Term::LetBox(x, a, b)))
                } else if *self.peek() == Tok::LParen {
                    self.bump();
                    let x = self.ident()?;
                    self.expect(Tok::Comma, "`,`")?;
                    let y = self.ident()?;
                    self.expect(Tok::RParen, "`)`")?;
                    self.expect(Tok::Eq, "`=`")?;
                    let a = self.expr()?;
                    self.expect_kw("in")?;
                    let b = self.expr()?;
                    Ok(Rc::new(Term::SigmaElim(x, y, a, b)))
                } else {
                    self.err("expected `unit`, `box` or `(` after `let`")
                }
            }
            Tok::Ident(kw) if kw == "case" => {
                self.bump();
                let q = self.grade()?;
                let s = self.expr()?;
                self.expect_kw("of")?;
                let b1 = self.expr()?;
                self.expect(Tok::Semi, "`;`")?;
                let b2 = self.expr()?;
                Ok(Rc::new(Term::Case(q, s, b1, b2)))
            }
            _ => self.arrow(),
        }
    }

    fn arrow(&mut self) -> PResult<T> {
        let lhs = self.sum()?;
        if *self.peek() == Tok::Minus {
            self.bump();
            let q = if *self.peek() == Tok::Gt { self.sr.one() } else { self.grade()? };
            self.expect(Tok::Gt, "`>`")?;
            let rhs = self.expr()?;
            return Ok(Rc::new(Term::Arrow(q, lhs, rhs)));
        }
        Ok(lhs)
    }

    fn sum(&mut self) -> PResult<T> {
        let lhs = self.tensor()?;
        if *self.peek() == Tok::Plus {
            self.bump();
            let rhs = self.sum()?;
            return Ok(Rc::new(Term::Sum(lhs, rhs)));
        }
        Ok(lhs)
    }

    fn tensor(&mut self) -> PResult<T> {
        let lhs = self.app()?;
        if *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.tensor()?;
            return Ok(Rc::new(Term::Tensor(lhs, rhs)));
        }
        Ok(lhs)
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Tok::LParen => true,
            Tok::Ident(s) => {
                !KEYWORDS.contains(&s.as_str())
                    || matches!(s.as_str(), "Type" | "Unit" | "unit" | "box" | "Box" | "inj1" | "inj2")
            }
            _ => false,
        }
    }

    fn app(&mut self) -> PResult<T> {
        let mut f = self.head()?;
        while self.starts_atom() {
            let a = self.head()?;
            f = Rc::new(Term::App(f, a));
        }
        Ok(f)
    }

    /// Prefix forms bind tighter than application's argument list but take an atom.
    fn head(&mut self) -> PResult<T> {
        match self.peek().clone() {
            Tok::Ident(kw) if kw == "inj1" || kw == "inj2" => {
                self.bump();
                let a = self.head()?;
                Ok(Rc::new(if kw == "inj1" { Term::Inj1(a) } else { Term::Inj2(a) }))
            }
            Tok::Ident(kw) if kw == "box" || kw == "Box" => {
                self.bump();
                let q = self.grade()?;
                let a = self.head()?;
                Ok(Rc::new(if kw == "box" { Term::Box(q, a) } else { Term::BoxTy(q, a) }))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> PResult<T> {
        match self.peek().clone() {
            Tok::Ident(s) if s == "Type" => {
                self.bump();
                Ok(Rc::new(Term::Type))
            }
            Tok::Ident(s) if s == "Unit" => {
                self.bump();
                Ok(Rc::new(Term::Unit))
            }
            Tok::Ident(s) if s == "unit" => {
                self.bump();
                Ok(Rc::new(Term::UnitVal))
            }
            Tok::Ident(_) => Ok(Rc::new(Term::Var(self.ident()?))),
            Tok::LParen => {
                self.bump();
                // graded pair `(q | a, b)`
                if matches!(self.peek(), Tok::Ident(_)) && *self.peek_at(1) == Tok::Bar {
                    let q = self.grade()?;
                    self.expect(Tok::Bar, "`|`")?;
                    let a = self.expr()?;
                    self.expect(Tok::Comma, "`,`")?;
                    let b = self.expr()?;
                    self.expect(Tok::RParen, "`)`")?;
                    return Ok(Rc::new(Term::Pair(q, a, b)));
                }
                let a = self.expr()?;
                if *self.peek() == Tok::Comma {
                    self.bump();
                    let b = self.expr()?;
                    self.expect(Tok::RParen, "`)`")?;
                    return Ok(Rc::new(Term::Pair(self.sr.one(), a, b)));
                }
                self.expect(Tok::RParen, "`)`")?;
                Ok(a)
            }
            _ => self.err("expected a term"),
        }
    }

    fn program(&mut self) -> PResult<Program> {
        let mut prog = Program::default();
        loop {
            if self.is_kw("def") {
                self.bump();
                let name = self.ident()?;
                self.expect(Tok::Colon, "`:`")?;
                let ty = self.expr()?;
                self.expect(Tok::Eq, "`=`")?;
                let body = self.expr()?;
                if prog.defs.iter().any(|d| d.name == name) {
                    return self.err(format!("duplicate definition `{name}`"));
                }
                prog.defs.push(Def { name, ty, body });
            } else if self.is_kw("main") {
                if prog.main.is_some() {
                    return self.err("duplicate `main`");
                }
                self.bump();
                self.expect(Tok::Eq, "`=`")?;
                prog.main = Some(self.expr()?);
            } else if *self.peek() == Tok::Eof {
                return Ok(prog);
            } else {
                return self.err("expected `def` or `main`");
            }
        }
    }
}

pub fn parse_term(text: &str, sr: &Semiring) -> Result<T, ParseError> {
    let toks = lex(text)?.toks;
    let mut p = Parser { toks, pos: 0, sr };
    let t = p.expr()?;
    if *p.peek() != Tok::Eof {
        return p.err("unexpected trailing input");
    }
    Ok(t)
}

pub fn parse_program(text: &str, sr: &Semiring) -> Result<Program, ParseError> {
    let toks = lex(text)?.toks;
    let mut p = Parser { toks, pos: 0, sr };
    p.program()
}
