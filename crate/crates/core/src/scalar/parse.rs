//! Expression input grammar.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary)*
//! unary := '-' unary | power
//! power := atom ('^' integer)?
//! atom  := integer ('/' integer)? | symbol | ('sinh' | 'cosh') '(' coord ')' | '(' expr ')'
//! ```
//!
//! Coordinates are `x1..xm`; any other identifier must be a declared
//! parameter. Division is only allowed between integer literals.

use super::{parse_rational, HypExpr, Rational, ScalarError, Symbol};
use num_bigint::BigInt;
use std::collections::BTreeSet;
use std::str::FromStr;

/// Raw expression tree before normalization.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(Rational),
    Sym(String),
    Sinh(String),
    Cosh(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// Declared symbols: `coords` coordinates and a set of parameter names.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SymbolContext {
    pub coords: u32,
    pub params: BTreeSet<String>,
}

impl SymbolContext {
    pub fn new<I, S>(coords: u32, params: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        SymbolContext {
            coords,
            params: params.into_iter().map(Into::into).collect(),
        }
    }

    fn coordinate(&self, name: &str) -> Option<u32> {
        let idx = name.strip_prefix('x')?;
        if idx.is_empty() || !idx.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        idx.parse::<u32>().ok().filter(|i| (1..=self.coords).contains(i))
    }

    pub fn resolve(&self, name: &str) -> Result<Symbol, ScalarError> {
        if let Some(i) = self.coordinate(name) {
            Ok(Symbol::Coord(i))
        } else if self.params.contains(name) {
            Ok(Symbol::Param(name.to_string()))
        } else {
            Err(ScalarError::UndeclaredSymbol(name.to_string()))
        }
    }

    /// Parses and normalizes in one step.
    pub fn parse(&self, src: &str) -> Result<HypExpr, ScalarError> {
        normalize(&parse_expr(src)?, self)
    }
}

/// Reduces a raw tree to its unique normal form.
pub fn normalize(expr: &Expr, ctx: &SymbolContext) -> Result<HypExpr, ScalarError> {
    Ok(match expr {
        Expr::Num(r) => HypExpr::constant(r.clone()),
        Expr::Sym(name) => HypExpr::symbol(ctx.resolve(name)?),
        Expr::Sinh(arg) | Expr::Cosh(arg) => {
            let i = ctx
                .coordinate(arg)
                .ok_or_else(|| match ctx.resolve(arg) {
                    Err(e) => e,
                    Ok(_) => ScalarError::NotACoordinate(arg.clone()),
                })?;
            if matches!(expr, Expr::Sinh(_)) {
                HypExpr::sinh(i)
            } else {
                HypExpr::cosh(i)
            }
        }
        Expr::Neg(a) => -normalize(a, ctx)?,
        Expr::Add(a, b) => normalize(a, ctx)? + normalize(b, ctx)?,
        Expr::Sub(a, b) => normalize(a, ctx)? - normalize(b, ctx)?,
        Expr::Mul(a, b) => normalize(a, ctx)? * normalize(b, ctx)?,
        Expr::Pow(a, e) => normalize(a, ctx)?.pow(*e),
    })
}

pub fn parse_expr(src: &str) -> Result<Expr, ScalarError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> ScalarError {
        ScalarError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ScalarError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ScalarError> {
        let mut lhs = self.unary()?;
        while self.eat(b'*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        if self.peek() == Some(b'/') {
            return Err(self.error("division is only allowed between integer literals"));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ScalarError> {
        if self.eat(b'-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, ScalarError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let digits = self.integer()?;
            let exp = digits
                .parse::<u32>()
                .map_err(|_| self.error("exponent out of range"))?;
            return Ok(Expr::Pow(Box::new(base), exp));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<String, ScalarError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Expr, ScalarError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                if self.eat(b'/') {
                    let den = self.integer()?;
                    return parse_rational(&format!("{num}/{den}")).map(Expr::Num);
                }
                let n = BigInt::from_str(&num).map_err(|_| self.error("bad integer"))?;
                Ok(Expr::Num(Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let name = self.ident();
                if (name == "sinh" || name == "cosh") && self.eat(b'(') {
                    self.skip_ws();
                    let arg = self.ident();
                    if arg.is_empty() || !self.eat(b')') {
                        return Err(self.error("expected `(x<i>)` after hyperbolic function"));
                    }
                    return Ok(if name == "sinh" {
                        Expr::Sinh(arg)
                    } else {
                        Expr::Cosh(arg)
                    });
                }
                Ok(Expr::Sym(name))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
