//! Expression grammar for exact scalars and polynomials.
//!
//! The grammar is deliberately small: integers, `a/b` rationals, the `sqrtD`
//! literal, variable names, `+ - * ^`, and nothing else. No parentheses, no
//! implicit multiplication between identifiers. A numeric literal directly
//! followed by an identifier (`2y`) is accepted as a product since it is
//! lexically unambiguous. Every error carries the byte offset it occurred at.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::fmt;
use std::sync::Arc;

use crate::{Poly, Scalar};

/// Parse failure at a byte offset of the input text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(pos: usize, msg: impl Into<String>) -> Self {
        ParseError {
            pos,
            msg: msg.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (at offset {})", self.msg, self.pos)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub start: usize,
    pub end: usize,
}

pub fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let kind = match c {
            '+' => {
                i += 1;
                TokenKind::Plus
            }
            '-' => {
                i += 1;
                TokenKind::Minus
            }
            '*' => {
                i += 1;
                TokenKind::Star
            }
            '/' => {
                i += 1;
                TokenKind::Slash
            }
            '^' => {
                i += 1;
                TokenKind::Caret
            }
            '(' => {
                i += 1;
                TokenKind::LParen
            }
            ')' => {
                i += 1;
                TokenKind::RParen
            }
            '[' => {
                i += 1;
                TokenKind::LBracket
            }
            ']' => {
                i += 1;
                TokenKind::RBracket
            }
            ',' => {
                i += 1;
                TokenKind::Comma
            }
            '=' => {
                i += 1;
                TokenKind::Eq
            }
            _ if c.is_ascii_digit() => {
                while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                    i += 1;
                }
                TokenKind::Int(text[start..i].parse().unwrap())
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                TokenKind::Ident(text[start..i].to_string())
            }
            _ => return Err(ParseError::new(start, format!("unexpected character `{c}`"))),
        };
        tokens.push(Token {
            kind,
            start,
            end: i,
        });
    }
    Ok(tokens)
}

/// Expression tree; identifiers keep their source offset for diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(BigRational),
    Ident(String, usize),
    Pow(Box<Expr>, u32),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

/// Recursive-descent parser over a token slice.
pub struct ExprParser<'a> {
    tokens: &'a [Token],
    pos: usize,
    text_len: usize,
}

impl<'a> ExprParser<'a> {
    pub fn new(tokens: &'a [Token], text_len: usize) -> Self {
        ExprParser {
            tokens,
            pos: 0,
            text_len,
        }
    }

    pub fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<&Token> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map_or(self.text_len, |t| t.start)
    }

    pub fn at_end(&self) -> bool {
        self.pos == self.tokens.len()
    }

    pub fn expect_end(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(ParseError::new(
                t.start,
                format!("unexpected trailing {}", describe(&t.kind)),
            )),
        }
    }

    pub fn parse_expr(&mut self) -> Result<Expr, ParseError> {
        let mut negated = false;
        if matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Minus)) {
            self.bump();
            negated = true;
        }
        let mut acc = self.parse_term()?;
        if negated {
            acc = Expr::Neg(Box::new(acc));
        }
        loop {
            match self.peek().map(|t| &t.kind) {
                Some(TokenKind::Plus) => {
                    self.bump();
                    let rhs = self.parse_term()?;
                    acc = Expr::Add(Box::new(acc), Box::new(rhs));
                }
                Some(TokenKind::Minus) => {
                    self.bump();
                    let rhs = self.parse_term()?;
                    acc = Expr::Sub(Box::new(acc), Box::new(rhs));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Expr, ParseError> {
        let (mut acc, mut last) = self.parse_factor()?;
        loop {
            match self.peek() {
                Some(t) if t.kind == TokenKind::Star => {
                    self.bump();
                    let (rhs, end) = self.parse_factor()?;
                    acc = Expr::Mul(Box::new(acc), Box::new(rhs));
                    last = end;
                }
                // `2y`: a numeric literal immediately followed by an
                // identifier reads as a product; `x y` does not.
                Some(t) if matches!(t.kind, TokenKind::Ident(_)) && t.start == last.1 && last.0 => {
                    let (rhs, end) = self.parse_factor()?;
                    acc = Expr::Mul(Box::new(acc), Box::new(rhs));
                    last = end;
                }
                _ => return Ok(acc),
            }
        }
    }

    /// Returns the factor plus `(was_plain_number, end_offset)` for the
    /// adjacency rule above.
    fn parse_factor(&mut self) -> Result<(Expr, (bool, usize)), ParseError> {
        let here = self.here();
        let tok = self
            .bump()
            .ok_or_else(|| ParseError::new(here, "expected a number or name"))?;
        let (mut expr, mut numeric, mut end) = match &tok.kind {
            TokenKind::Int(n) => {
                let n = n.clone();
                let mut end = tok.end;
                // optional `/ denom` forming an exact rational literal
                let mut value = BigRational::from_integer(n);
                if matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Slash)) {
                    self.bump();
                    let at = self.here();
                    let den = self.bump().ok_or_else(|| {
                        ParseError::new(at, "expected denominator after `/`")
                    })?;
                    match &den.kind {
                        TokenKind::Int(d) if !d.is_zero() => {
                            value /= BigRational::from_integer(d.clone());
                            end = den.end;
                        }
                        TokenKind::Int(_) => {
                            return Err(ParseError::new(den.start, "zero denominator"))
                        }
                        other => {
                            return Err(ParseError::new(
                                den.start,
                                format!(
                                    "`/` is only for rational literals, found {}",
                                    describe(other)
                                ),
                            ))
                        }
                    }
                }
                (Expr::Num(value), true, end)
            }
            TokenKind::Ident(name) => (
                Expr::Ident(name.clone(), tok.start),
                false,
                tok.end,
            ),
            other => {
                return Err(ParseError::new(
                    tok.start,
                    format!("expected a number or name, found {}", describe(other)),
                ))
            }
        };
        if matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Caret)) {
            self.bump();
            let at = self.here();
            let exp = self
                .bump()
                .ok_or_else(|| ParseError::new(at, "expected an exponent after `^`"))?;
            match &exp.kind {
                TokenKind::Int(e) => {
                    let e: u32 = e.try_into().map_err(|_| {
                        ParseError::new(exp.start, "exponent out of range")
                    })?;
                    end = exp.end;
                    numeric = false;
                    expr = Expr::Pow(Box::new(expr), e);
                }
                other => {
                    return Err(ParseError::new(
                        exp.start,
                        format!("expected an integer exponent, found {}", describe(other)),
                    ))
                }
            }
        }
        Ok((expr, (numeric, end)))
    }
}

fn describe(kind: &TokenKind) -> String {
    match kind {
        TokenKind::Int(n) => format!("number `{n}`"),
        TokenKind::Ident(s) => format!("`{s}`"),
        TokenKind::Plus => "`+`".into(),
        TokenKind::Minus => "`-`".into(),
        TokenKind::Star => "`*`".into(),
        TokenKind::Slash => "`/`".into(),
        TokenKind::Caret => "`^`".into(),
        TokenKind::LParen => "`(`".into(),
        TokenKind::RParen => "`)`".into(),
        TokenKind::LBracket => "`[`".into(),
        TokenKind::RBracket => "`]`".into(),
        TokenKind::Comma => "`,`".into(),
        TokenKind::Eq => "`=`".into(),
    }
}

/// Interpret an identifier as `sqrtD`, returning `D` when it is one.
pub fn radical_of_ident(name: &str) -> Option<u32> {
    name.strip_prefix("sqrt")?.parse().ok()
}

/// Evaluate an expression tree into a polynomial over the given chart.
///
/// Identifiers must be chart variables or the session radical `sqrt{radicand}`;
/// anything else (including other radicals) is rejected with its position.
pub fn expr_to_poly(
    expr: &Expr,
    vars: &Arc<Vec<String>>,
    radicand: u32,
) -> Result<Poly, ParseError> {
    match expr {
        Expr::Num(r) => Ok(Poly::constant(Scalar::from_rational(r.clone()))),
        Expr::Ident(name, pos) => {
            if let Some(d) = radical_of_ident(name) {
                if d == radicand {
                    return Ok(Poly::constant(
                        Scalar::sqrt(d).map_err(|e| ParseError::new(*pos, e.to_string()))?,
                    ));
                }
                return Err(ParseError::new(
                    *pos,
                    format!(
                        "radical `{name}` is not available; this session only adjoins sqrt{radicand}"
                    ),
                ));
            }
            if let Some(i) = vars.iter().position(|v| v == name) {
                return Ok(Poly::var(vars, i));
            }
            Err(ParseError::new(*pos, format!("unknown variable `{name}`")))
        }
        Expr::Pow(base, e) => {
            let b = expr_to_poly(base, vars, radicand)?;
            let mut acc = Poly::one();
            for _ in 0..*e {
                acc = &acc * &b;
            }
            Ok(acc)
        }
        Expr::Neg(inner) => Ok(-expr_to_poly(inner, vars, radicand)?),
        Expr::Add(a, b) => Ok(&expr_to_poly(a, vars, radicand)? + &expr_to_poly(b, vars, radicand)?),
        Expr::Sub(a, b) => Ok(&expr_to_poly(a, vars, radicand)? - &expr_to_poly(b, vars, radicand)?),
        Expr::Mul(a, b) => Ok(&expr_to_poly(a, vars, radicand)? * &expr_to_poly(b, vars, radicand)?),
    }
}

/// Parse a polynomial in the given chart.
pub fn parse_poly(
    text: &str,
    vars: &Arc<Vec<String>>,
    radicand: u32,
) -> Result<Poly, ParseError> {
    let tokens = tokenize(text)?;
    let mut p = ExprParser::new(&tokens, text.len());
    if p.at_end() {
        return Err(ParseError::new(0, "empty expression"));
    }
    let expr = p.parse_expr()?;
    p.expect_end()?;
    expr_to_poly(&expr, vars, radicand)
}

/// Parse an exact scalar (a polynomial in no variables).
pub fn parse_scalar(text: &str, radicand: u32) -> Result<Scalar, ParseError> {
    let empty = Arc::new(Vec::new());
    let poly = parse_poly(text, &empty, radicand)?;
    poly.constant_value()
        .ok_or_else(|| ParseError::new(0, "expected a constant expression"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;

    fn chart() -> Arc<Vec<String>> {
        Arc::new(vec!["x".into(), "y".into(), "z".into()])
    }

    #[test]
    fn poly_with_adjacent_coefficient() {
        // "2y*x + z^2" -> {(1,1,0): 2, (0,0,2): 1}
        let p = parse_poly("2y*x + z^2", &chart(), 2).unwrap();
        let expected = Poly::from_terms(
            chart(),
            vec![
                (Monomial(vec![1, 1, 0]), Scalar::from_int(2)),
                (Monomial(vec![0, 0, 2]), Scalar::from_int(1)),
            ],
        );
        assert_eq!(p, expected);
    }

    #[test]
    fn rationals_and_radicals() {
        assert_eq!(parse_scalar("-1", 2).unwrap(), Scalar::from_int(-1));
        assert_eq!(parse_scalar("3/2", 2).unwrap(), Scalar::from_ratio(3, 2));
        assert_eq!(
            parse_scalar("1/2+3/2*sqrt2", 2).unwrap().to_string(),
            "1/2+3/2*sqrt2"
        );
        assert_eq!(parse_scalar("2-sqrt2", 2).unwrap().to_string(), "2-sqrt2");
    }

    #[test]
    fn scalar_display_reparses() {
        for text in ["0", "-7/3", "sqrt2", "-sqrt2", "1/2+3/2*sqrt2", "2-sqrt2", "5*sqrt2"] {
            let s = parse_scalar(text, 2).unwrap();
            assert_eq!(parse_scalar(&s.to_string(), 2).unwrap(), s);
        }
    }

    #[test]
    fn poly_display_reparses() {
        let vars = chart();
        let x = Poly::var(&vars, 0);
        let z = Poly::var(&vars, 2);
        let p = &(&(&x * &z) - &x.scale(&Scalar::sqrt(2).unwrap()))
            + &Poly::constant(Scalar::from_ratio(-1, 2));
        let q = parse_poly(&p.to_string(), &vars, 2).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn rejects_foreign_radical() {
        let err = parse_poly("sqrt3", &chart(), 2).unwrap_err();
        assert!(err.msg.contains("sqrt2"));
    }

    #[test]
    fn rejects_unknown_variable_with_position() {
        let err = parse_poly("x + w", &chart(), 2).unwrap_err();
        assert_eq!(err.pos, 4);
        assert!(err.msg.contains('w'));
    }

    #[test]
    fn rejects_implicit_identifier_product() {
        // "x y" is not a product; the trailing identifier is a syntax error.
        let err = parse_poly("x y", &chart(), 2).unwrap_err();
        assert_eq!(err.pos, 2);
    }

    #[test]
    fn rejects_polynomial_division() {
        // `/` belongs to rational literals only, never to polynomials
        let err = parse_poly("x/2", &chart(), 2).unwrap_err();
        assert_eq!(err.pos, 1);
        let err = parse_poly("1/x", &chart(), 2).unwrap_err();
        assert!(err.msg.contains("rational literals"));
    }
}
