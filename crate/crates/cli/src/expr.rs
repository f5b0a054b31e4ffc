//! Expression front-end for potentials and parametrizations.
//!
//! The grammar is a small calculator over exact rationals with one free
//! variable and named constants:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | base ('^' int)?
//! base   := integer | variable | ident | '(' expr ')'
//! ```
//!
//! Everything evaluates to a `RatFunc` in the declared variable; constants
//! come from `--const` bindings.  Division by an expression that reduces to
//! zero is a parse-level error, reported with its source position.

use std::collections::BTreeMap;
use std::fmt;

use specfact::rat::{parse_rat, Rat};
use specfact::{RatFunc, UPoly};

/// A syntax or evaluation error with the byte offset it was detected at.
#[derive(Debug, Clone, PartialEq)]
pub struct ExprError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "position {}: {}", self.pos, self.msg)
    }
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, ExprError> {
    Err(ExprError {
        pos,
        msg: msg.into(),
    })
}

/// Parse tree; positions are kept where evaluation can still fail.
#[derive(Debug, Clone)]
enum Ast {
    Int(Rat),
    Const(String, usize),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>, usize),
    Pow(Box<Ast>, i64, usize),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(Rat),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push((Tok::Plus, i));
                i += 1;
            }
            '-' => {
                toks.push((Tok::Minus, i));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, i));
                i += 1;
            }
            '/' => {
                toks.push((Tok::Slash, i));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, i));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let lit = &text[start..i];
                match parse_rat(lit) {
                    Some(r) => toks.push((Tok::Int(r), start)),
                    None => return err(start, format!("bad integer literal '{lit}'")),
                }
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((Tok::Ident(text[start..i].to_string()), start));
            }
            _ => return err(i, format!("unexpected character '{c}'")),
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a (Tok, usize)> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<&'a (Tok, usize)> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    fn here(&self) -> usize {
        self.peek().map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn expr(&mut self) -> Result<Ast, ExprError> {
        let mut node = self.term()?;
        while let Some((t, _)) = self.peek() {
            match t {
                Tok::Plus => {
                    self.next();
                    node = Ast::Add(Box::new(node), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.next();
                    node = Ast::Sub(Box::new(node), Box::new(self.term()?));
                }
                _ => break,
            }
        }
        Ok(node)
    }

    fn term(&mut self) -> Result<Ast, ExprError> {
        let mut node = self.factor()?;
        while let Some((t, p)) = self.peek() {
            match t {
                Tok::Star => {
                    self.next();
                    node = Ast::Mul(Box::new(node), Box::new(self.factor()?));
                }
                Tok::Slash => {
                    let slash = *p;
                    self.next();
                    node = Ast::Div(Box::new(node), Box::new(self.factor()?), slash);
                }
                _ => break,
            }
        }
        Ok(node)
    }

    fn factor(&mut self) -> Result<Ast, ExprError> {
        if let Some((Tok::Minus, _)) = self.peek() {
            self.next();
            return Ok(Ast::Neg(Box::new(self.factor()?)));
        }
        let node = self.base()?;
        if let Some((Tok::Caret, p)) = self.peek() {
            let caret = *p;
            self.next();
            let negative = matches!(self.peek(), Some((Tok::Minus, _)));
            if negative {
                self.next();
            }
            let Some((Tok::Int(e), ep)) = self.next() else {
                return err(caret, "expected an integer exponent after '^'");
            };
            let Some(e) = e.to_integer_checked() else {
                return err(*ep, "exponent out of range");
            };
            let e = if negative { -e } else { e };
            return Ok(Ast::Pow(Box::new(node), e, caret));
        }
        Ok(node)
    }

    fn base(&mut self) -> Result<Ast, ExprError> {
        let at = self.here();
        match self.next() {
            Some((Tok::Int(r), _)) => Ok(Ast::Int(r.clone())),
            Some((Tok::Ident(name), p)) => Ok(Ast::Const(name.clone(), *p)),
            Some((Tok::LParen, p)) => {
                let inner = self.expr()?;
                match self.next() {
                    Some((Tok::RParen, _)) => Ok(inner),
                    _ => err(*p, "unclosed '('"),
                }
            }
            Some((t, p)) => err(*p, format!("unexpected token {t:?}")),
            None => err(at, "unexpected end of expression"),
        }
    }
}

trait RatIntExt {
    fn to_integer_checked(&self) -> Option<i64>;
}

impl RatIntExt for Rat {
    fn to_integer_checked(&self) -> Option<i64> {
        if !self.is_integer() {
            return None;
        }
        self.numer().to_string().parse().ok()
    }
}

/// Evaluation context: the variable's name and the constant bindings.
pub struct Context<'a> {
    pub var: &'a str,
    pub consts: &'a BTreeMap<String, Rat>,
}

fn eval(ast: &Ast, ctx: &Context) -> Result<RatFunc, ExprError> {
    match ast {
        Ast::Int(r) => Ok(RatFunc::from_rat(r.clone())),
        Ast::Const(name, p) => {
            if name == ctx.var {
                return Ok(RatFunc::x());
            }
            match ctx.consts.get(name) {
                Some(r) => Ok(RatFunc::from_rat(r.clone())),
                None => err(*p, format!("unbound constant '{name}'")),
            }
        }
        Ast::Neg(a) => Ok(-&eval(a, ctx)?),
        Ast::Add(a, b) => Ok(&eval(a, ctx)? + &eval(b, ctx)?),
        Ast::Sub(a, b) => Ok(&eval(a, ctx)? - &eval(b, ctx)?),
        Ast::Mul(a, b) => Ok(&eval(a, ctx)? * &eval(b, ctx)?),
        Ast::Div(a, b, p) => {
            let d = eval(b, ctx)?;
            match eval(a, ctx)?.checked_div(&d) {
                Ok(v) => Ok(v),
                Err(_) => err(*p, "division by zero"),
            }
        }
        Ast::Pow(a, e, p) => {
            let v = eval(a, ctx)?;
            if *e >= 0 {
                Ok(v.pow(*e as usize))
            } else {
                match v.recip() {
                    Ok(r) => Ok(r.pow((-*e) as usize)),
                    Err(_) => err(*p, "zero raised to a negative power"),
                }
            }
        }
    }
}

/// Parses and evaluates an expression to a rational function in `ctx.var`.
pub fn parse_expr(text: &str, ctx: &Context) -> Result<RatFunc, ExprError> {
    let toks = tokenize(text)?;
    let mut parser = Parser {
        toks: &toks,
        pos: 0,
        end: text.len(),
    };
    let ast = parser.expr()?;
    if let Some((t, p)) = parser.peek() {
        return err(*p, format!("trailing input starting at {t:?}"));
    }
    eval(&ast, ctx)
}

/// Parses an expression that must reduce to a polynomial in `ctx.var`.
pub fn parse_poly(text: &str, ctx: &Context) -> Result<UPoly, ExprError> {
    let f = parse_expr(text, ctx)?;
    if !f.is_polynomial() {
        return err(0, format!("'{}' is not a polynomial in {}", text.trim(), ctx.var));
    }
    Ok(f.num().clone())
}

/// Parses a comma-separated list of polynomial components.
pub fn parse_poly_list(
    text: &str,
    ctx: &Context,
    expected: usize,
) -> Result<Vec<UPoly>, ExprError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != expected {
        return err(
            0,
            format!(
                "expected {expected} comma-separated components, found {}",
                parts.len()
            ),
        );
    }
    parts.iter().map(|p| parse_poly(p, ctx)).collect()
}

/// Parses one `name=p/q` constant binding.
pub fn parse_binding(text: &str) -> Result<(String, Rat), ExprError> {
    let Some((name, value)) = text.split_once('=') else {
        return err(0, format!("constant binding '{text}' is not of the form name=p/q"));
    };
    let name = name.trim();
    let ok_name = !name.is_empty()
        && name.chars().next().unwrap().is_ascii_alphabetic()
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if !ok_name {
        return err(0, format!("bad constant name '{name}'"));
    }
    match parse_rat(value) {
        Some(r) => Ok((name.to_string(), r)),
        None => err(0, format!("bad rational value '{}'", value.trim())),
    }
}
