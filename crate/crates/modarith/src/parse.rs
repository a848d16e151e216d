//! Concrete syntax.
//!
//! One lexer and one recursive-descent parser cover every surface form:
//! terms, propositions, proof terms, program types and programs, and the
//! three file formats (theory files, proof files, program files).  The
//! grammar mirrors the printers exactly, so displaying anything and parsing
//! it back is the identity up to variable sorts.
//!
//! Parsing is signature-free: variables bound by an annotated binder carry
//! their sort, every other variable is left with an unknown sort.  The
//! `resolve_*` pass then fills unknown sorts in from a signature — argument
//! positions of declared functions and predicates dictate the sorts — and
//! rejects inconsistent or undeclared uses.

use crate::proof::ProofTerm;
use crate::syntax::{Prop, Signature, Sort, Term, Var, EQ, MEM};
use crate::translate::{TTerm, TType};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

// ---------------------------------------------------------------------------
// Errors

/// A lexing or parsing failure, with a 1-based source position.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("parse error at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn error_at(src: &str, offset: usize, message: impl Into<String>) -> ParseError {
    let clamped = offset.min(src.len());
    let mut line = 1;
    let mut column = 1;
    for ch in src[..clamped].chars() {
        if ch == '\n' {
            line += 1;
            column = 1;
        } else {
            column += 1;
        }
    }
    ParseError { line, column, message: message.into() }
}

// ---------------------------------------------------------------------------
// Lexer

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u64),
    Str(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Colon,
    ColonEq,
    Dot,
    Eq,
    FatArrow,
    Arrow,
    LongArrow,
    Plus,
    Star,
    Wedge,
    Vee,
    Tilde,
    At,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Num(n) => write!(f, "`{n}`"),
            Tok::Str(s) => write!(f, "\"{s}\""),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::LBracket => write!(f, "`[`"),
            Tok::RBracket => write!(f, "`]`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Colon => write!(f, "`:`"),
            Tok::ColonEq => write!(f, "`:=`"),
            Tok::Dot => write!(f, "`.`"),
            Tok::Eq => write!(f, "`=`"),
            Tok::FatArrow => write!(f, "`=>`"),
            Tok::Arrow => write!(f, "`->`"),
            Tok::LongArrow => write!(f, "`-->`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Wedge => write!(f, "`/\\`"),
            Tok::Vee => write!(f, "`\\/`"),
            Tok::Tilde => write!(f, "`~`"),
            Tok::At => write!(f, "`@`"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            b'(' => push(&mut toks, Tok::LParen, &mut i),
            b')' => push(&mut toks, Tok::RParen, &mut i),
            b'[' => push(&mut toks, Tok::LBracket, &mut i),
            b']' => push(&mut toks, Tok::RBracket, &mut i),
            b',' => push(&mut toks, Tok::Comma, &mut i),
            b'.' => push(&mut toks, Tok::Dot, &mut i),
            b'+' => push(&mut toks, Tok::Plus, &mut i),
            b'*' => push(&mut toks, Tok::Star, &mut i),
            b'@' => push(&mut toks, Tok::At, &mut i),
            b'~' => push(&mut toks, Tok::Tilde, &mut i),
            b':' => {
                if bytes.get(i + 1) == Some(&b'=') {
                    toks.push((Tok::ColonEq, i));
                    i += 2;
                } else {
                    push(&mut toks, Tok::Colon, &mut i);
                }
            }
            b'=' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    toks.push((Tok::FatArrow, i));
                    i += 2;
                } else {
                    push(&mut toks, Tok::Eq, &mut i);
                }
            }
            b'-' => {
                if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') {
                    toks.push((Tok::LongArrow, i));
                    i += 3;
                } else if bytes.get(i + 1) == Some(&b'>') {
                    toks.push((Tok::Arrow, i));
                    i += 2;
                } else {
                    return Err(error_at(src, i, "stray `-`; expected `->` or `-->`"));
                }
            }
            b'/' => {
                if bytes.get(i + 1) == Some(&b'\\') {
                    toks.push((Tok::Wedge, i));
                    i += 2;
                } else {
                    return Err(error_at(src, i, "stray `/`; expected `/\\`"));
                }
            }
            b'\\' => {
                if bytes.get(i + 1) == Some(&b'/') {
                    toks.push((Tok::Vee, i));
                    i += 2;
                } else {
                    return Err(error_at(src, i, "stray `\\`; expected `\\/`"));
                }
            }
            b'"' => {
                let start = i;
                i += 1;
                let from = i;
                while i < bytes.len() && bytes[i] != b'"' {
                    i += 1;
                }
                if i == bytes.len() {
                    return Err(error_at(src, start, "unterminated string"));
                }
                toks.push((Tok::Str(src[from..i].to_string()), start));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text = &src[start..i];
                let n: u64 = text.parse().map_err(|_| {
                    error_at(src, start, format!("numeral `{text}` is out of range"))
                })?;
                toks.push((Tok::Num(n), start));
            }
            b'A'..=b'Z' | b'a'..=b'z' | b'_' => {
                let start = i;
                i += 1;
                loop {
                    match bytes.get(i) {
                        Some(c) if c.is_ascii_alphanumeric() || *c == b'_' || *c == b'\'' => {
                            i += 1;
                        }
                        // A hyphen continues the identifier only when a word
                        // character follows; `y-->z` still lexes as `y` `-->` `z`.
                        Some(b'-')
                            if matches!(bytes.get(i + 1),
                                Some(c) if c.is_ascii_alphanumeric() || *c == b'_') =>
                        {
                            i += 2;
                        }
                        _ => break,
                    }
                }
                toks.push((Tok::Ident(src[start..i].to_string()), start));
            }
            other => {
                return Err(error_at(src, i, format!("unexpected character `{}`", other as char)));
            }
        }
    }
    Ok(toks)
}

fn push(toks: &mut Vec<(Tok, usize)>, tok: Tok, i: &mut usize) {
    toks.push((tok, *i));
    *i += 1;
}

// ---------------------------------------------------------------------------
// File-level syntax trees

/// One statement of a theory file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThyItem {
    /// `extend <name>.` — start from a named built-in theory.
    Extend(String),
    /// `sort <name>.`
    DeclSort(String),
    /// `fun <name> : <sorts> -> <sort>.` or `fun <name> : <sort>.`
    DeclFun { name: String, args: Vec<String>, result: String },
    /// `pred <name> : <sorts>.` or `pred <name>.`
    DeclPred { name: String, args: Vec<String> },
    /// `rule [<name> :] <term> --> <term>.`
    TermRule { name: Option<String>, lhs: Term, rhs: Term },
    /// `prop-rule [<name> :] <atom> --> <prop>.`
    PropRule { name: Option<String>, lhs: Prop, rhs: Prop },
    /// `axiom <name> : <prop>.`
    Axiom { name: String, prop: Prop },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TheoryFile {
    pub items: Vec<ThyItem>,
}

/// Where a proof file gets its theory from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TheorySpec {
    Builtin(String),
    /// A path, resolved relative to the proof file.
    File(String),
}

/// `use axiom <name> [as <alias>] [with <bindings>].`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UseAxiom {
    pub axiom: String,
    pub alias: Option<String>,
    /// `P := <prop>` — the body for a scheme instantiation.
    pub body: Option<Prop>,
    /// `x := <name>[:<sort>]` — the distinguished variable.
    pub var: Option<(String, Option<String>)>,
    /// `params := <name>[:<sort>] ...` — extra parameters.
    pub params: Vec<(String, Option<String>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrfItem {
    Theory(TheorySpec),
    Use(UseAxiom),
    Theorem { name: String, prop: Prop, proof: ProofTerm },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProofFile {
    pub items: Vec<PrfItem>,
}

/// `tdef <name> : <type> := <program>.`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TDef {
    pub name: String,
    pub ty: TType,
    pub term: TTerm,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TFile {
    pub defs: Vec<TDef>,
}

// ---------------------------------------------------------------------------
// Parser

const RESERVED: &[&str] = &[
    "forall", "exists", "fun", "tfun", "in", "true", "false", "pair", "fst", "snd",
    "inl", "inr", "case", "triv", "exfalso", "ex_intro", "ex_elim", "rec",
];

// Term operator binding strengths, loosest first; mirrors the printer.
const T_ARROW: u8 = 1;
const T_PLUS: u8 = 2;
const T_TIMES: u8 = 3;

type PResult<T> = Result<T, ParseError>;

struct Parser<'s> {
    src: &'s str,
    toks: Vec<(Tok, usize)>,
    i: usize,
    /// Annotated term binders currently in scope, innermost last.
    scopes: Vec<(String, Sort)>,
}

impl<'s> Parser<'s> {
    fn new(src: &'s str) -> PResult<Self> {
        Ok(Parser { src, toks: lex(src)?, i: 0, scopes: Vec::new() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(t, _)| t)
    }

    fn peek_at(&self, ahead: usize) -> Option<&Tok> {
        self.toks.get(self.i + ahead).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.i).map_or(self.src.len(), |(_, p)| *p)
    }

    fn fail<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(error_at(self.src, self.offset(), message))
    }

    fn describe_here(&self) -> String {
        match self.peek() {
            Some(t) => format!("{t}"),
            None => "end of input".to_string(),
        }
    }

    fn expect(&mut self, tok: &Tok) -> PResult<()> {
        if self.peek() == Some(tok) {
            self.i += 1;
            Ok(())
        } else {
            self.fail(format!("expected {tok}, found {}", self.describe_here()))
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    /// Any identifier, keywords included; for sort and statement positions.
    fn raw_ident(&mut self, what: &str) -> PResult<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.i += 1;
                Ok(s)
            }
            _ => self.fail(format!("expected {what}, found {}", self.describe_here())),
        }
    }

    /// An identifier usable as a variable or hypothesis name.
    fn name(&mut self, what: &str) -> PResult<String> {
        match self.peek() {
            Some(Tok::Ident(s)) if RESERVED.contains(&s.as_str()) => {
                let s = s.clone();
                self.fail(format!("`{s}` is reserved and cannot name a {what}"))
            }
            _ => self.raw_ident(what),
        }
    }

    fn at_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == kw)
    }

    fn eat_kw(&mut self, kw: &str) -> bool {
        if self.at_kw(kw) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn at_eof(&self) -> bool {
        self.i >= self.toks.len()
    }

    fn expect_eof(&self) -> PResult<()> {
        if self.at_eof() {
            Ok(())
        } else {
            Err(error_at(
                self.src,
                self.offset(),
                format!("unexpected {} after a complete input", self.describe_here()),
            ))
        }
    }

    fn scope_sort(&self, name: &str) -> Option<&Sort> {
        self.scopes.iter().rev().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    // -- terms --------------------------------------------------------------

    fn term(&mut self, min: u8) -> PResult<Term> {
        let mut lhs = self.term_atom()?;
        loop {
            match self.peek() {
                Some(Tok::Arrow) if min <= T_ARROW => {
                    self.i += 1;
                    let rhs = self.term(T_ARROW)?;
                    lhs = Term::arrow(lhs, rhs);
                }
                Some(Tok::Plus) if min <= T_PLUS => {
                    self.i += 1;
                    let rhs = self.term(T_PLUS + 1)?;
                    lhs = Term::plus(lhs, rhs);
                }
                Some(Tok::Star) if min <= T_TIMES => {
                    self.i += 1;
                    let rhs = self.term(T_TIMES + 1)?;
                    lhs = Term::times(lhs, rhs);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term_atom(&mut self) -> PResult<Term> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let n = *n;
                self.i += 1;
                Ok(Term::numeral(n))
            }
            Some(Tok::LParen) => {
                self.i += 1;
                let t = self.term(0)?;
                self.expect(&Tok::RParen)?;
                Ok(t)
            }
            Some(Tok::Ident(_)) => {
                let name = self.name("term variable or function")?;
                if self.peek() == Some(&Tok::LParen) {
                    self.i += 1;
                    let mut args = vec![self.term(0)?];
                    while self.eat(&Tok::Comma) {
                        args.push(self.term(0)?);
                    }
                    self.expect(&Tok::RParen)?;
                    Ok(Term::app(name, args))
                } else if let Some(sort) = self.scope_sort(&name) {
                    Ok(Term::var(Var::new(name.clone(), sort.clone())))
                } else {
                    Ok(Term::var(Var::new(name, Sort::unknown())))
                }
            }
            _ => self.fail(format!("expected a term, found {}", self.describe_here())),
        }
    }

    // -- propositions -------------------------------------------------------

    fn prop(&mut self) -> PResult<Prop> {
        if self.at_kw("forall") || self.at_kw("exists") {
            return self.quantifier();
        }
        let lhs = self.or_level()?;
        if self.eat(&Tok::FatArrow) {
            let rhs = self.prop()?;
            Ok(Prop::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn quantifier(&mut self) -> PResult<Prop> {
        let universal = self.eat_kw("forall");
        if !universal {
            self.expect_kw("exists")?;
        }
        let name = self.name("bound variable")?;
        self.expect(&Tok::Colon)?;
        let sort = Sort(self.raw_ident("a sort")?);
        self.expect(&Tok::Dot)?;
        let var = Var::new(name.clone(), sort.clone());
        self.scopes.push((name, sort));
        let body = self.prop();
        self.scopes.pop();
        let body = body?;
        Ok(if universal { Prop::forall(var, body) } else { Prop::exists(var, body) })
    }

    fn expect_kw(&mut self, kw: &str) -> PResult<()> {
        if self.eat_kw(kw) {
            Ok(())
        } else {
            self.fail(format!("expected `{kw}`, found {}", self.describe_here()))
        }
    }

    fn or_level(&mut self) -> PResult<Prop> {
        let mut lhs = self.and_level()?;
        while self.eat(&Tok::Vee) {
            let rhs = self.and_level()?;
            lhs = Prop::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and_level(&mut self) -> PResult<Prop> {
        let mut lhs = self.prop_unary()?;
        while self.eat(&Tok::Wedge) {
            let rhs = self.prop_unary()?;
            lhs = Prop::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn prop_unary(&mut self) -> PResult<Prop> {
        match self.peek() {
            Some(Tok::Tilde) => {
                self.i += 1;
                Ok(Prop::not(self.prop_unary()?))
            }
            Some(Tok::Ident(s)) if s == "true" => {
                self.i += 1;
                Ok(Prop::Top)
            }
            Some(Tok::Ident(s)) if s == "false" => {
                self.i += 1;
                Ok(Prop::Bottom)
            }
            Some(Tok::LParen) => {
                // Either a parenthesized proposition or a relational atom
                // whose left term starts with `(`, as in `(x + y) * z = w`.
                let save = self.i;
                match self.rel_atom() {
                    Ok(p) => Ok(p),
                    Err(_) => {
                        self.i = save;
                        self.i += 1;
                        let p = self.prop()?;
                        self.expect(&Tok::RParen)?;
                        Ok(p)
                    }
                }
            }
            Some(Tok::Ident(_)) | Some(Tok::Num(_)) => self.rel_atom(),
            _ => self.fail(format!("expected a proposition, found {}", self.describe_here())),
        }
    }

    /// `t = u`, `t in u`, or a bare atom such as `N(x)` or a propositional
    /// name.
    fn rel_atom(&mut self) -> PResult<Prop> {
        let t = self.term(0)?;
        if self.eat(&Tok::Eq) {
            let u = self.term(0)?;
            return Ok(Prop::atom(EQ, vec![t, u]));
        }
        if self.eat_kw("in") {
            let u = self.term(0)?;
            return Ok(Prop::atom(MEM, vec![t, u]));
        }
        match t {
            Term::App(head, args) => Ok(Prop::Atom(head, args)),
            Term::Var(v) => {
                if v.sort.is_unknown() {
                    Ok(Prop::atom(v.name, vec![]))
                } else {
                    self.fail(format!(
                        "`{}` is a bound term variable, not a proposition",
                        v.name
                    ))
                }
            }
        }
    }

    // -- proof terms ---------------------------------------------------------

    fn proof(&mut self) -> PResult<ProofTerm> {
        if self.at_kw("fun") {
            self.i += 1;
            self.expect(&Tok::LParen)?;
            let name = self.name("hypothesis")?;
            self.expect(&Tok::Colon)?;
            let dom = self.prop()?;
            self.expect(&Tok::RParen)?;
            self.expect(&Tok::FatArrow)?;
            let body = self.proof()?;
            return Ok(ProofTerm::lam(name, dom, body));
        }
        if self.at_kw("tfun") {
            self.i += 1;
            self.expect(&Tok::LParen)?;
            let name = self.name("bound variable")?;
            self.expect(&Tok::Colon)?;
            let sort = Sort(self.raw_ident("a sort")?);
            self.expect(&Tok::RParen)?;
            self.expect(&Tok::FatArrow)?;
            let var = Var::new(name.clone(), sort.clone());
            self.scopes.push((name, sort));
            let body = self.proof();
            self.scopes.pop();
            return Ok(ProofTerm::tlam(var, body?));
        }
        self.proof_app()
    }

    fn proof_app(&mut self) -> PResult<ProofTerm> {
        let mut head = self.proof_atom()?;
        loop {
            match self.peek() {
                Some(Tok::At) => {
                    self.i += 1;
                    let t = self.term_atom()?;
                    head = ProofTerm::tapp(head, t);
                }
                Some(Tok::LParen) => {
                    head = ProofTerm::app(head, {
                        self.i += 1;
                        let p = self.proof()?;
                        self.expect(&Tok::RParen)?;
                        p
                    });
                }
                Some(Tok::Ident(s)) if s != "fun" && s != "tfun" && s != "in" => {
                    let arg = self.proof_atom()?;
                    head = ProofTerm::app(head, arg);
                }
                _ => return Ok(head),
            }
        }
    }

    fn proof_atom(&mut self) -> PResult<ProofTerm> {
        let kw = match self.peek() {
            Some(Tok::LParen) => {
                self.i += 1;
                let p = self.proof()?;
                self.expect(&Tok::RParen)?;
                return Ok(p);
            }
            Some(Tok::Ident(s)) => s.clone(),
            _ => {
                return self.fail(format!(
                    "expected a proof term, found {}",
                    self.describe_here()
                ))
            }
        };
        match kw.as_str() {
            "triv" => {
                self.i += 1;
                Ok(ProofTerm::TruthIntro)
            }
            "pair" => {
                self.i += 1;
                self.expect(&Tok::LParen)?;
                let a = self.proof()?;
                self.expect(&Tok::Comma)?;
                let b = self.proof()?;
                self.expect(&Tok::RParen)?;
                Ok(ProofTerm::pair(a, b))
            }
            "fst" | "snd" => {
                self.i += 1;
                self.expect(&Tok::LParen)?;
                let p = self.proof()?;
                self.expect(&Tok::RParen)?;
                Ok(if kw == "fst" { ProofTerm::fst(p) } else { ProofTerm::snd(p) })
            }
            "inl" | "inr" | "exfalso" => {
                self.i += 1;
                self.expect(&Tok::LParen)?;
                let p = self.proof()?;
                self.expect(&Tok::Comma)?;
                let ann = self.prop()?;
                self.expect(&Tok::RParen)?;
                Ok(match kw.as_str() {
                    "inl" => ProofTerm::inl(p, ann),
                    "inr" => ProofTerm::inr(p, ann),
                    _ => ProofTerm::exfalso(p, ann),
                })
            }
            "case" => {
                self.i += 1;
                self.expect(&Tok::LParen)?;
                let scrut = self.proof()?;
                self.expect(&Tok::Comma)?;
                let ln = self.name("hypothesis")?;
                self.expect(&Tok::Dot)?;
                let lb = self.proof()?;
                self.expect(&Tok::Comma)?;
                let rn = self.name("hypothesis")?;
                self.expect(&Tok::Dot)?;
                let rb = self.proof()?;
                self.expect(&Tok::RParen)?;
                Ok(ProofTerm::case(scrut, ln, lb, rn, rb))
            }
            "ex_intro" => {
                self.i += 1;
                self.expect(&Tok::LParen)?;
                let witness = self.term(0)?;
                self.expect(&Tok::Comma)?;
                let payload = self.proof()?;
                self.expect(&Tok::Comma)?;
                let bname = self.name("bound variable")?;
                self.expect(&Tok::Colon)?;
                let sort = Sort(self.raw_ident("a sort")?);
                self.expect(&Tok::Dot)?;
                let var = Var::new(bname.clone(), sort.clone());
                self.scopes.push((bname, sort));
                let body = self.prop();
                self.scopes.pop();
                self.expect(&Tok::RParen)?;
                Ok(ProofTerm::ex_intro(witness, payload, var, body?))
            }
            "ex_elim" => {
                self.i += 1;
                self.expect(&Tok::LParen)?;
                let scrut = self.proof()?;
                self.expect(&Tok::Comma)?;
                let xname = self.name("bound variable")?;
                self.expect(&Tok::Colon)?;
                let sort = Sort(self.raw_ident("a sort")?);
                self.expect(&Tok::Dot)?;
                let hname = self.name("hypothesis")?;
                self.expect(&Tok::Dot)?;
                let var = Var::new(xname.clone(), sort.clone());
                self.scopes.push((xname, sort));
                let body = self.proof();
                self.scopes.pop();
                let body = body?;
                self.expect(&Tok::Comma)?;
                // The eigenvariable may not occur in the result, so it is
                // parsed outside the binder scope.
                let result = self.prop()?;
                self.expect(&Tok::RParen)?;
                Ok(ProofTerm::ex_elim(scrut, var, hname, body, result))
            }
            _ => {
                let name = self.name("hypothesis")?;
                Ok(ProofTerm::var(name))
            }
        }
    }

    // -- programs ------------------------------------------------------------

    fn ttype(&mut self) -> PResult<TType> {
        let lhs = self.ttype_atom()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.ttype()?;
            Ok(TType::arrow(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn ttype_atom(&mut self) -> PResult<TType> {
        if self.eat_kw("nat") {
            Ok(TType::Nat)
        } else if self.eat(&Tok::LParen) {
            let t = self.ttype()?;
            self.expect(&Tok::RParen)?;
            Ok(t)
        } else {
            self.fail(format!("expected a program type, found {}", self.describe_here()))
        }
    }

    fn tterm(&mut self) -> PResult<TTerm> {
        if self.at_kw("fun") {
            self.i += 1;
            self.expect(&Tok::LParen)?;
            let name = self.name("bound variable")?;
            self.expect(&Tok::Colon)?;
            let ty = self.ttype()?;
            self.expect(&Tok::RParen)?;
            self.expect(&Tok::FatArrow)?;
            let body = self.tterm()?;
            return Ok(TTerm::lam(name, ty, body));
        }
        let mut head = self.tterm_atom()?;
        loop {
            match self.peek() {
                Some(Tok::LParen) | Some(Tok::Num(_)) => {
                    let arg = self.tterm_atom()?;
                    head = TTerm::app(head, arg);
                }
                Some(Tok::Ident(s)) if s != "fun" => {
                    let arg = self.tterm_atom()?;
                    head = TTerm::app(head, arg);
                }
                _ => return Ok(head),
            }
        }
    }

    fn tterm_atom(&mut self) -> PResult<TTerm> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let n = *n;
                self.i += 1;
                Ok(TTerm::numeral(n))
            }
            Some(Tok::LParen) => {
                self.i += 1;
                let t = self.tterm()?;
                self.expect(&Tok::RParen)?;
                Ok(t)
            }
            Some(Tok::Ident(s)) if s == "S" && self.peek_at(1) == Some(&Tok::LParen) => {
                self.i += 2;
                let inner = self.tterm()?;
                self.expect(&Tok::RParen)?;
                Ok(TTerm::succ(inner))
            }
            Some(Tok::Ident(s)) if s == "rec" => {
                self.i += 1;
                self.expect(&Tok::LBracket)?;
                let ty = self.ttype()?;
                self.expect(&Tok::RBracket)?;
                self.expect(&Tok::LParen)?;
                let base = self.tterm()?;
                self.expect(&Tok::Comma)?;
                let step = self.tterm()?;
                self.expect(&Tok::Comma)?;
                let scrut = self.tterm()?;
                self.expect(&Tok::RParen)?;
                Ok(TTerm::rec(ty, base, step, scrut))
            }
            Some(Tok::Ident(_)) => Ok(TTerm::var(self.name("program variable")?)),
            _ => self.fail(format!("expected a program, found {}", self.describe_here())),
        }
    }

    // -- files ---------------------------------------------------------------

    fn theory_file(&mut self) -> PResult<TheoryFile> {
        let mut items = Vec::new();
        while !self.at_eof() {
            let item = if self.eat_kw("extend") {
                let name = self.raw_ident("a theory name")?;
                ThyItem::Extend(name)
            } else if self.eat_kw("sort") {
                ThyItem::DeclSort(self.raw_ident("a sort name")?)
            } else if self.eat_kw("fun") {
                let name = self.symbol_name()?;
                self.expect(&Tok::Colon)?;
                let mut sorts = vec![self.raw_ident("a sort")?];
                while matches!(self.peek(), Some(Tok::Ident(_))) {
                    sorts.push(self.raw_ident("a sort")?);
                }
                if self.eat(&Tok::Arrow) {
                    let result = self.raw_ident("a result sort")?;
                    ThyItem::DeclFun { name, args: sorts, result }
                } else if sorts.len() == 1 {
                    ThyItem::DeclFun { name, args: vec![], result: sorts.remove(0) }
                } else {
                    return self.fail("expected `->` before the result sort");
                }
            } else if self.eat_kw("pred") {
                let name = self.symbol_name()?;
                let mut args = Vec::new();
                if self.eat(&Tok::Colon) {
                    args.push(self.raw_ident("a sort")?);
                    while matches!(self.peek(), Some(Tok::Ident(_))) {
                        args.push(self.raw_ident("a sort")?);
                    }
                }
                ThyItem::DeclPred { name, args }
            } else if self.eat_kw("rule") {
                let name = self.optional_rule_name();
                let lhs = self.term(0)?;
                self.expect(&Tok::LongArrow)?;
                let rhs = self.term(0)?;
                ThyItem::TermRule { name, lhs, rhs }
            } else if self.eat_kw("prop-rule") {
                let name = self.optional_rule_name();
                let lhs = self.prop_unary()?;
                if !matches!(lhs, Prop::Atom(..)) {
                    return self.fail("the left side of a prop-rule must be an atom");
                }
                self.expect(&Tok::LongArrow)?;
                let rhs = self.prop()?;
                ThyItem::PropRule { name, lhs, rhs }
            } else if self.eat_kw("axiom") {
                let name = self.raw_ident("an axiom name")?;
                self.expect(&Tok::Colon)?;
                let prop = self.prop()?;
                ThyItem::Axiom { name, prop }
            } else {
                return self.fail(format!(
                    "expected a theory statement \
                     (extend, sort, fun, pred, rule, prop-rule, axiom), found {}",
                    self.describe_here()
                ));
            };
            self.expect(&Tok::Dot)?;
            items.push(item);
        }
        Ok(TheoryFile { items })
    }

    /// Function and predicate names may be the symbolic tokens.
    fn symbol_name(&mut self) -> PResult<String> {
        match self.peek() {
            Some(Tok::Plus) => {
                self.i += 1;
                Ok("+".to_string())
            }
            Some(Tok::Star) => {
                self.i += 1;
                Ok("*".to_string())
            }
            Some(Tok::Arrow) => {
                self.i += 1;
                Ok("->".to_string())
            }
            Some(Tok::Eq) => {
                self.i += 1;
                Ok("=".to_string())
            }
            Some(Tok::Num(0)) => {
                self.i += 1;
                Ok("0".to_string())
            }
            _ => self.raw_ident("a symbol name"),
        }
    }

    fn optional_rule_name(&mut self) -> Option<String> {
        if let (Some(Tok::Ident(s)), Some(Tok::Colon)) = (self.peek(), self.peek_at(1)) {
            let name = s.clone();
            self.i += 2;
            Some(name)
        } else {
            None
        }
    }

    fn proof_file(&mut self) -> PResult<ProofFile> {
        let mut items = Vec::new();
        while !self.at_eof() {
            let item = if self.eat_kw("theory") {
                let spec = match self.peek() {
                    Some(Tok::Str(path)) => {
                        let path = path.clone();
                        self.i += 1;
                        TheorySpec::File(path)
                    }
                    _ => TheorySpec::Builtin(self.raw_ident("a theory name")?),
                };
                PrfItem::Theory(spec)
            } else if self.eat_kw("use") {
                self.expect_kw("axiom")?;
                let axiom = self.raw_ident("an axiom name")?;
                let alias = if self.eat_kw("as") {
                    Some(self.name("hypothesis")?)
                } else {
                    None
                };
                let mut body = None;
                let mut var = None;
                let mut params = Vec::new();
                if self.eat_kw("with") {
                    loop {
                        let key = self.raw_ident("a binding name (P, x, params)")?;
                        self.expect(&Tok::ColonEq)?;
                        match key.as_str() {
                            "P" => body = Some(self.prop()?),
                            "x" => var = Some(self.sorted_name()?),
                            "params" => {
                                params.push(self.sorted_name()?);
                                while matches!(self.peek(), Some(Tok::Ident(_))) {
                                    params.push(self.sorted_name()?);
                                }
                            }
                            other => {
                                return self.fail(format!(
                                    "unknown binding `{other}`; expected P, x, or params"
                                ))
                            }
                        }
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                }
                PrfItem::Use(UseAxiom { axiom, alias, body, var, params })
            } else if self.eat_kw("theorem") {
                let name = self.name("theorem")?;
                self.expect(&Tok::Colon)?;
                let prop = self.prop()?;
                self.expect(&Tok::ColonEq)?;
                let proof = self.proof()?;
                PrfItem::Theorem { name, prop, proof }
            } else {
                return self.fail(format!(
                    "expected a proof-file statement (theory, use, theorem), found {}",
                    self.describe_here()
                ));
            };
            self.expect(&Tok::Dot)?;
            items.push(item);
        }
        Ok(ProofFile { items })
    }

    fn sorted_name(&mut self) -> PResult<(String, Option<String>)> {
        let name = self.name("variable")?;
        if self.eat(&Tok::Colon) {
            let sort = self.raw_ident("a sort")?;
            Ok((name, Some(sort)))
        } else {
            Ok((name, None))
        }
    }

    fn t_file(&mut self) -> PResult<TFile> {
        let mut defs = Vec::new();
        while !self.at_eof() {
            self.expect_kw("tdef")?;
            let name = self.name("definition")?;
            self.expect(&Tok::Colon)?;
            let ty = self.ttype()?;
            self.expect(&Tok::ColonEq)?;
            let term = self.tterm()?;
            self.expect(&Tok::Dot)?;
            defs.push(TDef { name, ty, term });
        }
        Ok(TFile { defs })
    }
}

// ---------------------------------------------------------------------------
// Entry points

pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(src)?;
    let t = p.term(0)?;
    p.expect_eof()?;
    Ok(t)
}

pub fn parse_prop(src: &str) -> Result<Prop, ParseError> {
    let mut p = Parser::new(src)?;
    let out = p.prop()?;
    p.expect_eof()?;
    Ok(out)
}

pub fn parse_proof(src: &str) -> Result<ProofTerm, ParseError> {
    let mut p = Parser::new(src)?;
    let out = p.proof()?;
    p.expect_eof()?;
    Ok(out)
}

pub fn parse_ttype(src: &str) -> Result<TType, ParseError> {
    let mut p = Parser::new(src)?;
    let out = p.ttype()?;
    p.expect_eof()?;
    Ok(out)
}

pub fn parse_tterm(src: &str) -> Result<TTerm, ParseError> {
    let mut p = Parser::new(src)?;
    let out = p.tterm()?;
    p.expect_eof()?;
    Ok(out)
}

pub fn parse_theory_file(src: &str) -> Result<TheoryFile, ParseError> {
    Parser::new(src)?.theory_file()
}

pub fn parse_proof_file(src: &str) -> Result<ProofFile, ParseError> {
    Parser::new(src)?.proof_file()
}

pub fn parse_t_file(src: &str) -> Result<TFile, ParseError> {
    Parser::new(src)?.t_file()
}

// ---------------------------------------------------------------------------
// Sort resolution

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ResolveError {
    #[error("unknown function symbol `{0}`")]
    UnknownFunction(String),
    #[error("unknown predicate symbol `{0}`")]
    UnknownPredicate(String),
    #[error("`{name}` expects {expected} arguments, got {got}")]
    Arity { name: String, expected: usize, got: usize },
    #[error("variable `{var}` is used both at sort `{first}` and at sort `{second}`")]
    SortConflict { var: String, first: String, second: String },
    #[error("`{name}` produces sort `{produced}` where sort `{needed}` is needed")]
    ResultSort { name: String, produced: String, needed: String },
    #[error("cannot infer a sort for variable `{0}`")]
    Unresolved(String),
}

/// Fill in unknown variable sorts from the sorts the signature demands at
/// each position.  `fv` accumulates the resolved sorts of free variables so
/// repeated uses stay consistent.
pub fn resolve_term(
    sig: &Signature,
    t: &Term,
    expected: Option<&Sort>,
    fv: &mut BTreeMap<String, Sort>,
) -> Result<Term, ResolveError> {
    match t {
        Term::Var(v) if !v.sort.is_unknown() => {
            if let Some(exp) = expected {
                if exp != &v.sort {
                    return Err(ResolveError::SortConflict {
                        var: v.name.clone(),
                        first: v.sort.0.clone(),
                        second: exp.0.clone(),
                    });
                }
            }
            Ok(t.clone())
        }
        Term::Var(v) => {
            // An unannotated name is a declared constant when one exists,
            // otherwise a free variable.
            if let Some(rank) = sig.function(&v.name) {
                if rank.args.is_empty() {
                    if let Some(exp) = expected {
                        if exp != &rank.result {
                            return Err(ResolveError::ResultSort {
                                name: v.name.clone(),
                                produced: rank.result.0.clone(),
                                needed: exp.0.clone(),
                            });
                        }
                    }
                    return Ok(Term::constant(&v.name));
                }
            }
            if let Some(known) = fv.get(&v.name) {
                if let Some(exp) = expected {
                    if exp != known {
                        return Err(ResolveError::SortConflict {
                            var: v.name.clone(),
                            first: known.0.clone(),
                            second: exp.0.clone(),
                        });
                    }
                }
                Ok(Term::var(Var::new(v.name.clone(), known.clone())))
            } else if let Some(exp) = expected {
                fv.insert(v.name.clone(), exp.clone());
                Ok(Term::var(Var::new(v.name.clone(), exp.clone())))
            } else {
                Err(ResolveError::Unresolved(v.name.clone()))
            }
        }
        Term::App(f, args) => {
            let rank = sig
                .function(f)
                .ok_or_else(|| ResolveError::UnknownFunction(f.clone()))?
                .clone();
            if rank.args.len() != args.len() {
                return Err(ResolveError::Arity {
                    name: f.clone(),
                    expected: rank.args.len(),
                    got: args.len(),
                });
            }
            if let Some(exp) = expected {
                if exp != &rank.result {
                    return Err(ResolveError::ResultSort {
                        name: f.clone(),
                        produced: rank.result.0.clone(),
                        needed: exp.0.clone(),
                    });
                }
            }
            let resolved: Vec<Term> = args
                .iter()
                .zip(&rank.args)
                .map(|(a, s)| resolve_term(sig, a, Some(s), fv))
                .collect::<Result<_, _>>()?;
            Ok(Term::App(f.clone(), resolved))
        }
    }
}

pub fn resolve_prop(
    sig: &Signature,
    p: &Prop,
    fv: &mut BTreeMap<String, Sort>,
) -> Result<Prop, ResolveError> {
    Ok(match p {
        Prop::Atom(name, args) => {
            let rank = sig
                .predicate(name)
                .ok_or_else(|| ResolveError::UnknownPredicate(name.clone()))?
                .clone();
            if rank.args.len() != args.len() {
                return Err(ResolveError::Arity {
                    name: name.clone(),
                    expected: rank.args.len(),
                    got: args.len(),
                });
            }
            let resolved: Vec<Term> = args
                .iter()
                .zip(&rank.args)
                .map(|(a, s)| resolve_term(sig, a, Some(s), fv))
                .collect::<Result<_, _>>()?;
            Prop::Atom(name.clone(), resolved)
        }
        Prop::Top | Prop::Bottom => p.clone(),
        Prop::Implies(a, b) => {
            Prop::implies(resolve_prop(sig, a, fv)?, resolve_prop(sig, b, fv)?)
        }
        Prop::And(a, b) => Prop::and(resolve_prop(sig, a, fv)?, resolve_prop(sig, b, fv)?),
        Prop::Or(a, b) => Prop::or(resolve_prop(sig, a, fv)?, resolve_prop(sig, b, fv)?),
        Prop::ForAll(v, body) => Prop::forall(v.clone(), resolve_prop(sig, body, fv)?),
        Prop::Exists(v, body) => Prop::exists(v.clone(), resolve_prop(sig, body, fv)?),
    })
}

/// Resolve a proposition that should not pick up free-variable sorts from
/// anywhere else.
pub fn resolve_closed_prop(sig: &Signature, p: &Prop) -> Result<Prop, ResolveError> {
    resolve_prop(sig, p, &mut BTreeMap::new())
}

/// Resolve every proposition and term embedded in a proof, sharing one
/// free-variable table across the whole proof.
pub fn resolve_proof(sig: &Signature, pt: &ProofTerm) -> Result<ProofTerm, ResolveError> {
    fn go(
        sig: &Signature,
        pt: &ProofTerm,
        fv: &mut BTreeMap<String, Sort>,
    ) -> Result<ProofTerm, ResolveError> {
        use ProofTerm::*;
        Ok(match pt {
            Var(_) | TruthIntro => pt.clone(),
            Lam(n, dom, body) => ProofTerm::lam(
                n.clone(),
                resolve_prop(sig, dom, fv)?,
                go(sig, body, fv)?,
            ),
            App(f, a) => ProofTerm::app(go(sig, f, fv)?, go(sig, a, fv)?),
            Pair(a, b) => ProofTerm::pair(go(sig, a, fv)?, go(sig, b, fv)?),
            Fst(p) => ProofTerm::fst(go(sig, p, fv)?),
            Snd(p) => ProofTerm::snd(go(sig, p, fv)?),
            InL(p, ann) => ProofTerm::inl(go(sig, p, fv)?, resolve_prop(sig, ann, fv)?),
            InR(p, ann) => ProofTerm::inr(go(sig, p, fv)?, resolve_prop(sig, ann, fv)?),
            Case(s, ln, lb, rn, rb) => ProofTerm::case(
                go(sig, s, fv)?,
                ln.clone(),
                go(sig, lb, fv)?,
                rn.clone(),
                go(sig, rb, fv)?,
            ),
            ExFalso(p, ann) => {
                ProofTerm::exfalso(go(sig, p, fv)?, resolve_prop(sig, ann, fv)?)
            }
            TLam(v, body) => ProofTerm::tlam(v.clone(), go(sig, body, fv)?),
            TApp(f, t) => ProofTerm::tapp(go(sig, f, fv)?, resolve_term(sig, t, None, fv)?),
            ExIntro(w, p, binder, body) => ProofTerm::ex_intro(
                resolve_term(sig, w, Some(&binder.sort), fv)?,
                go(sig, p, fv)?,
                binder.clone(),
                resolve_prop(sig, body, fv)?,
            ),
            ExElim(s, x, h, body, result) => ProofTerm::ex_elim(
                go(sig, s, fv)?,
                x.clone(),
                h.clone(),
                go(sig, body, fv)?,
                resolve_prop(sig, result, fv)?,
            ),
        })
    }
    go(sig, pt, &mut BTreeMap::new())
}
