//! Parsing of polynomial expressions and ODE specifications.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! ode    := "dy" "/" "dx" "=" expr [ "/" expr ]
//! expr   := term { ("+" | "-") term }
//! term   := factor { "*" factor }
//! factor := "-" factor | power
//! power  := atom [ "^" integer ]
//! atom   := number | "x" | "y" | "(" expr ")"
//! ```
//!
//! `^` binds tightest, then unary minus, then `*`, then `+`/`-`. Exponents
//! are non-negative integer literals. A rational literal `a/b` is two
//! integer literals joined by `/`; the lexeme is consumed greedily, so in
//! an ODE right-hand side a `/` directly between two integers is read as a
//! rational coefficient rather than as the `M`/`N` separator. Implicit
//! multiplication is not accepted.

use crate::arith::{gcd, Poly, Rational, Var};
use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

/// Parse failure with byte position and the set of tokens that would have
/// been accepted, or a degenerate ODE denominator.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("parse error at byte {pos}: found {found}, expected {}", expected.join(", "))]
    Syntax {
        pos: usize,
        found: String,
        expected: Vec<String>,
    },
    #[error("denominator polynomial is zero")]
    ZeroDenominator,
}

fn syntax(pos: usize, found: impl Into<String>, expected: &[&str]) -> ParseError {
    ParseError::Syntax {
        pos,
        found: found.into(),
        expected: expected.iter().map(|s| s.to_string()).collect(),
    }
}

/// A first-order ODE `dy/dx = M/N` with any common polynomial factor of
/// `M` and `N` already removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OdeSpec {
    pub m: Poly,
    pub n: Poly,
    pub source_text: String,
    /// True when a non-constant common factor was cancelled at parse time.
    pub common_factor_reduced: bool,
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Equals,
    LParen,
    RParen,
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Int(n) => format!("integer {n}"),
            Token::Ident(s) => format!("identifier '{s}'"),
            Token::Plus => "'+'".into(),
            Token::Minus => "'-'".into(),
            Token::Star => "'*'".into(),
            Token::Slash => "'/'".into(),
            Token::Caret => "'^'".into(),
            Token::Equals => "'='".into(),
            Token::LParen => "'('".into(),
            Token::RParen => "')'".into(),
            Token::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((Token::Int(n), start));
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                    i += 1;
                }
                out.push((Token::Ident(text[start..i].to_string()), start));
            }
            b'+' => {
                out.push((Token::Plus, i));
                i += 1;
            }
            b'-' => {
                out.push((Token::Minus, i));
                i += 1;
            }
            b'*' => {
                out.push((Token::Star, i));
                i += 1;
            }
            b'/' => {
                out.push((Token::Slash, i));
                i += 1;
            }
            b'^' => {
                out.push((Token::Caret, i));
                i += 1;
            }
            b'=' => {
                out.push((Token::Equals, i));
                i += 1;
            }
            b'(' => {
                out.push((Token::LParen, i));
                i += 1;
            }
            b')' => {
                out.push((Token::RParen, i));
                i += 1;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap();
                return Err(syntax(i, format!("'{ch}'"), &["a token"]));
            }
        }
    }
    out.push((Token::End, text.len()));
    Ok(out)
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].0
    }

    fn peek2(&self) -> &Token {
        &self.tokens[(self.pos + 1).min(self.tokens.len() - 1)].0
    }

    fn here(&self) -> usize {
        self.tokens[self.pos].1
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].0.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        syntax(self.here(), self.peek().describe(), expected)
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Token::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Token::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Token::Star) {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        if matches!(self.peek(), Token::Minus) {
            self.bump();
            return Ok(-self.factor()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if !matches!(self.peek(), Token::Caret) {
            return Ok(base);
        }
        self.bump();
        let pos = self.here();
        match self.bump() {
            Token::Int(n) => {
                let e = u32::try_from(&n).map_err(|_| {
                    syntax(pos, format!("integer {n}"), &["exponent between 0 and 4096"])
                })?;
                if e > 4096 {
                    return Err(syntax(
                        pos,
                        format!("integer {n}"),
                        &["exponent between 0 and 4096"],
                    ));
                }
                Ok(base.pow(e))
            }
            other => Err(syntax(pos, other.describe(), &["non-negative integer exponent"])),
        }
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        let pos = self.here();
        match self.bump() {
            Token::Int(n) => {
                // Greedy rational literal: integer '/' integer.
                if matches!(self.peek(), Token::Slash) && matches!(self.peek2(), Token::Int(_)) {
                    self.bump();
                    let dpos = self.here();
                    if let Token::Int(d) = self.bump() {
                        if d.is_zero() {
                            return Err(syntax(dpos, "integer 0", &["nonzero denominator"]));
                        }
                        return Ok(Poly::constant(Rational::new(n, d)));
                    }
                    unreachable!("peek2 checked");
                }
                Ok(Poly::constant(Rational::from_integer(n)))
            }
            Token::Ident(name) => match name.as_str() {
                "x" => Ok(Poly::var(Var::X)),
                "y" => Ok(Poly::var(Var::Y)),
                _ => Err(syntax(pos, format!("identifier '{name}'"), &["'x'", "'y'"])),
            },
            Token::LParen => {
                let inner = self.expr()?;
                if !matches!(self.peek(), Token::RParen) {
                    return Err(self.unexpected(&["')'"]));
                }
                self.bump();
                Ok(inner)
            }
            other => Err(syntax(
                pos,
                other.describe(),
                &["integer", "'x'", "'y'", "'('", "'-'"],
            )),
        }
    }
}

/// Parse a polynomial expression in `x` and `y`.
pub fn parse_poly(text: &str) -> Result<Poly, ParseError> {
    let mut p = Parser { tokens: lex(text)?, pos: 0 };
    let poly = p.expr()?;
    if !matches!(p.peek(), Token::End) {
        return Err(p.unexpected(&["'+'", "'-'", "'*'", "'^'", "end of input"]));
    }
    Ok(poly)
}

/// Parse `dy/dx = M / N` (or `dy/dx = M`, meaning `N = 1`), cancelling any
/// non-constant common factor of `M` and `N`.
pub fn parse_ode(text: &str) -> Result<OdeSpec, ParseError> {
    let mut p = Parser { tokens: lex(text)?, pos: 0 };
    for (word, expect) in [("dy", "'dy'"), ("/", "'/'"), ("dx", "'dx'"), ("=", "'='")] {
        let pos = p.here();
        let tok = p.bump();
        let matches = match (&tok, word) {
            (Token::Ident(s), w) => s == w,
            (Token::Slash, "/") => true,
            (Token::Equals, "=") => true,
            _ => false,
        };
        if !matches {
            return Err(syntax(pos, tok.describe(), &[expect]));
        }
    }
    let m = p.expr()?;
    let n = if matches!(p.peek(), Token::Slash) {
        p.bump();
        p.expr()?
    } else {
        Poly::one()
    };
    if !matches!(p.peek(), Token::End) {
        return Err(p.unexpected(&["'+'", "'-'", "'*'", "'/'", "end of input"]));
    }
    if n.is_zero() {
        return Err(ParseError::ZeroDenominator);
    }
    let (m, n, reduced) = if m.is_zero() {
        (m, n, false)
    } else {
        let g = gcd(&m, &n);
        if g.total_degree().unwrap_or(0) >= 1 {
            (
                m.exact_div(&g).expect("gcd divides"),
                n.exact_div(&g).expect("gcd divides"),
                true,
            )
        } else {
            (m, n, false)
        }
    };
    Ok(OdeSpec {
        m,
        n,
        source_text: text.to_string(),
        common_factor_reduced: reduced,
    })
}
