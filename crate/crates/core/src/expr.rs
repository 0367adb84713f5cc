//! Text grammar for elements and tensors, with a deterministic
//! pretty-printer that round-trips through the parser.
//!
//! ```text
//! expr     := [sign] summand (sign summand)*
//! summand  := term ("(x)" term){0,2} | "0"
//! term     := [rational] basis
//! rational := ["-"] int ["/" posint]
//! basis    := L[i] | I[i] | Y[i] | E[i,n] | CL | CI | CLI | C
//! ```
//!
//! `(x)` separates tensor legs and binds tighter than `+`/`-`, so
//! `L[0] (x) I[1] - I[1] (x) L[0]` is the antisymmetric tensor.

use std::fmt;

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, BasisVector, Element};
use crate::freevec::FreeVector;
use crate::scalar::Scalar;
use crate::tensor::{Pair, Tensor2, Tensor3, Triple};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("{line}:{col}: {msg} (at {token:?})")]
    Syntax {
        line: usize,
        col: usize,
        token: String,
        msg: String,
    },
    #[error("{line}:{col}: mixed tensor arities in one expression")]
    ArityMismatch { line: usize, col: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A parsed expression. Zero is arity-polymorphic and converts to any shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parsed {
    Zero,
    Element(Element),
    Tensor2(Tensor2),
    Tensor3(Tensor3),
}

impl Parsed {
    pub fn arity(&self) -> Option<usize> {
        match self {
            Parsed::Zero => None,
            Parsed::Element(_) => Some(1),
            Parsed::Tensor2(_) => Some(2),
            Parsed::Tensor3(_) => Some(3),
        }
    }

    pub fn into_element(self) -> Option<Element> {
        match self {
            Parsed::Zero => Some(Element::zero()),
            Parsed::Element(v) => Some(v),
            _ => None,
        }
    }

    pub fn into_tensor2(self) -> Option<Tensor2> {
        match self {
            Parsed::Zero => Some(Tensor2::zero()),
            Parsed::Tensor2(t) => Some(t),
            _ => None,
        }
    }

    pub fn into_tensor3(self) -> Option<Tensor3> {
        match self {
            Parsed::Zero => Some(Tensor3::zero()),
            Parsed::Tensor3(t) => Some(t),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Slash,
    LBrack,
    RBrack,
    Comma,
    Tensor,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(s) => write!(f, "{s}"),
            Tok::Ident(s) => write!(f, "{s}"),
            Tok::Plus => write!(f, "+"),
            Tok::Minus => write!(f, "-"),
            Tok::Slash => write!(f, "/"),
            Tok::LBrack => write!(f, "["),
            Tok::RBrack => write!(f, "]"),
            Tok::Comma => write!(f, ","),
            Tok::Tensor => write!(f, "(x)"),
        }
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

type Spanned = (Tok, usize, usize);

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), pos: 0, line: 1, col: 1 }
    }

    fn bump(&mut self) -> Option<u8> {
        let c = *self.src.get(self.pos)?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn error(&self, token: impl Into<String>, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line: self.line,
            col: self.col,
            token: token.into(),
            msg: msg.into(),
        }
    }

    fn tokens(mut self) -> Result<Vec<Spanned>, ParseError> {
        let mut out = Vec::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_whitespace() {
                self.bump();
                continue;
            }
            let (line, col) = (self.line, self.col);
            match c {
                b'+' => {
                    self.bump();
                    out.push((Tok::Plus, line, col));
                }
                b'-' => {
                    self.bump();
                    out.push((Tok::Minus, line, col));
                }
                b'/' => {
                    self.bump();
                    out.push((Tok::Slash, line, col));
                }
                b'[' => {
                    self.bump();
                    out.push((Tok::LBrack, line, col));
                }
                b']' => {
                    self.bump();
                    out.push((Tok::RBrack, line, col));
                }
                b',' => {
                    self.bump();
                    out.push((Tok::Comma, line, col));
                }
                b'(' => {
                    self.bump();
                    if self.peek() == Some(b'x') {
                        self.bump();
                        if self.peek() == Some(b')') {
                            self.bump();
                            out.push((Tok::Tensor, line, col));
                            continue;
                        }
                    }
                    return Err(self.error("(", "expected the tensor separator \"(x)\""));
                }
                b'0'..=b'9' => {
                    let mut digits = String::new();
                    while let Some(d) = self.peek() {
                        if d.is_ascii_digit() {
                            digits.push(d as char);
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    out.push((Tok::Int(digits), line, col));
                }
                b'A'..=b'Z' | b'a'..=b'z' => {
                    let mut name = String::new();
                    while let Some(d) = self.peek() {
                        if d.is_ascii_alphabetic() {
                            name.push(d as char);
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    out.push((Tok::Ident(name), line, col));
                }
                other => {
                    return Err(self.error((other as char).to_string(), "unexpected character"))
                }
            }
        }
        Ok(out)
    }
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    alg: &'a Algebra,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _, _)| t)
    }

    fn span(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map(|(_, l, c)| (*l, *c))
            .unwrap_or((1, 1))
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        let (line, col) = self.span();
        let token = self
            .peek()
            .map(|t| t.to_string())
            .unwrap_or_else(|| "end of input".into());
        ParseError::Syntax { line, col, token, msg: msg.into() }
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if *t == want => {
                self.bump();
                Ok(())
            }
            _ => Err(self.error(format!("expected {want}"))),
        }
    }

    fn parse_int(&mut self) -> Result<i64, ParseError> {
        let negative = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        match self.bump() {
            Some(Tok::Int(d)) => {
                let v: i64 = d.parse().map_err(|_| self.error("integer out of range"))?;
                Ok(if negative { -v } else { v })
            }
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.error("expected an integer"))
            }
        }
    }

    /// `["-"] int ["/" posint]`; the caller has already seen a digit or `-`.
    fn parse_rational(&mut self) -> Result<Scalar, ParseError> {
        let numer = self.parse_int()?;
        if self.peek() == Some(&Tok::Slash) {
            self.bump();
            let (line, col) = self.span();
            let denom = self.parse_int()?;
            if denom <= 0 {
                return Err(ParseError::Syntax {
                    line,
                    col,
                    token: denom.to_string(),
                    msg: "denominator must be positive".into(),
                });
            }
            Ok(Scalar::new(numer, denom))
        } else {
            Ok(Scalar::from_int(numer))
        }
    }

    fn parse_basis(&mut self) -> Result<BasisVector, ParseError> {
        let (line, col) = self.span();
        let name = match self.bump() {
            Some(Tok::Ident(n)) => n,
            other => {
                return Err(ParseError::Syntax {
                    line,
                    col,
                    token: other.map(|t| t.to_string()).unwrap_or_else(|| "end of input".into()),
                    msg: "expected a basis symbol".into(),
                })
            }
        };
        let b = match name.as_str() {
            "CL" => BasisVector::CL,
            "CI" => BasisVector::CI,
            "CLI" => BasisVector::CLI,
            "C" => BasisVector::C,
            "L" | "I" | "Y" | "E" => {
                self.expect(Tok::LBrack)?;
                let first = self.parse_int()?;
                let b = if name == "E" {
                    self.expect(Tok::Comma)?;
                    let (oline, ocol) = self.span();
                    let order = self.parse_int()?;
                    if order < 0 {
                        return Err(ParseError::Syntax {
                            line: oline,
                            col: ocol,
                            token: order.to_string(),
                            msg: "operator order must be nonnegative".into(),
                        });
                    }
                    BasisVector::E(first, order as u32)
                } else {
                    match name.as_str() {
                        "L" => BasisVector::L(first),
                        "I" => BasisVector::I(first),
                        _ => BasisVector::Y(first),
                    }
                };
                self.expect(Tok::RBrack)?;
                b
            }
            other => {
                return Err(ParseError::Syntax {
                    line,
                    col,
                    token: other.into(),
                    msg: "unknown basis family".into(),
                })
            }
        };
        self.alg.check_admissible(&b)?;
        Ok(b)
    }

    /// One `[rational] basis` factor. A bare rational is only legal when it
    /// is zero (the printed form of the zero vector).
    fn parse_term(&mut self) -> Result<Option<(Scalar, BasisVector)>, ParseError> {
        let coeff = match self.peek() {
            Some(Tok::Int(_)) | Some(Tok::Minus) => self.parse_rational()?,
            _ => Scalar::one(),
        };
        match self.peek() {
            Some(Tok::Ident(_)) => {
                let b = self.parse_basis()?;
                Ok(Some((coeff, b)))
            }
            _ if coeff.is_zero() => Ok(None),
            _ => Err(self.error("expected a basis symbol")),
        }
    }

    /// `term ((x) term){0,2}`, returning the factors.
    fn parse_summand(&mut self) -> Result<Vec<Option<(Scalar, BasisVector)>>, ParseError> {
        let mut factors = vec![self.parse_term()?];
        while self.peek() == Some(&Tok::Tensor) {
            if factors.len() == 3 {
                return Err(self.error("tensors of arity greater than 3 are not supported"));
            }
            self.bump();
            factors.push(self.parse_term()?);
        }
        Ok(factors)
    }

    fn parse_expr(&mut self) -> Result<Parsed, ParseError> {
        let mut acc: Option<Parsed> = None;
        let mut sign = Scalar::one();
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            sign = -Scalar::one();
        }
        loop {
            let (line, col) = self.span();
            let factors = self.parse_summand()?;
            let arity = factors.len();
            let coeff = factors.iter().fold(sign.clone(), |c, f| match f {
                Some((fc, _)) => c * fc,
                None => Scalar::zero(),
            });
            let acc = acc.get_or_insert_with(|| match arity {
                1 => Parsed::Element(Element::zero()),
                2 => Parsed::Tensor2(Tensor2::zero()),
                _ => Parsed::Tensor3(Tensor3::zero()),
            });
            if !coeff.is_zero() {
                let legs: Vec<BasisVector> =
                    factors.iter().map(|f| f.as_ref().unwrap().1).collect();
                match (acc, arity) {
                    (Parsed::Element(v), 1) => v.add_term(legs[0], coeff),
                    (Parsed::Tensor2(t), 2) => t.add_term((legs[0], legs[1]), coeff),
                    (Parsed::Tensor3(t), 3) => t.add_term((legs[0], legs[1], legs[2]), coeff),
                    _ => return Err(ParseError::ArityMismatch { line, col }),
                }
            } else if acc.arity() != Some(arity) && !matches!(acc, Parsed::Element(_)) {
                // a zero summand of mismatched shape is harmless
            }
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    sign = Scalar::one();
                }
                Some(Tok::Minus) => {
                    self.bump();
                    sign = -Scalar::one();
                }
                None => break,
                Some(_) => return Err(self.error("expected + or - between summands")),
            }
        }
        let out = acc.unwrap_or(Parsed::Zero);
        // all-zero expressions stay arity-polymorphic
        Ok(match out {
            Parsed::Element(v) if v.is_zero() => Parsed::Zero,
            Parsed::Tensor2(t) if t.is_zero() => Parsed::Zero,
            Parsed::Tensor3(t) if t.is_zero() => Parsed::Zero,
            other => other,
        })
    }
}

/// Parses an element or tensor, checking admissibility against `alg`.
pub fn parse(src: &str, alg: &Algebra) -> Result<Parsed, ParseError> {
    let toks = Lexer::new(src).tokens()?;
    if toks.is_empty() {
        return Err(ParseError::Syntax {
            line: 1,
            col: 1,
            token: "end of input".into(),
            msg: "empty expression".into(),
        });
    }
    let mut p = Parser { toks, pos: 0, alg };
    let out = p.parse_expr()?;
    if p.pos != p.toks.len() {
        return Err(p.error("trailing input"));
    }
    Ok(out)
}

pub fn parse_element(src: &str, alg: &Algebra) -> Result<Element, ParseError> {
    let (line, col) = (1, 1);
    parse(src, alg)?.into_element().ok_or(ParseError::ArityMismatch { line, col })
}

pub fn parse_tensor2(src: &str, alg: &Algebra) -> Result<Tensor2, ParseError> {
    let (line, col) = (1, 1);
    parse(src, alg)?.into_tensor2().ok_or(ParseError::ArityMismatch { line, col })
}

pub fn parse_tensor3(src: &str, alg: &Algebra) -> Result<Tensor3, ParseError> {
    let (line, col) = (1, 1);
    parse(src, alg)?.into_tensor3().ok_or(ParseError::ArityMismatch { line, col })
}

/// Key types the printer understands.
pub trait PrintKey: Ord + Clone {
    fn fmt_key(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result;
}

impl PrintKey for BasisVector {
    fn fmt_key(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl PrintKey for Pair {
    fn fmt_key(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (x) {}", self.0, self.1)
    }
}

impl PrintKey for Triple {
    fn fmt_key(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (x) {} (x) {}", self.0, self.1, self.2)
    }
}

struct KeyDisplay<'a, K: PrintKey>(&'a K);

impl<K: PrintKey> fmt::Display for KeyDisplay<'_, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_key(f)
    }
}

impl<K: PrintKey> fmt::Display for FreeVector<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.iter().enumerate() {
            let neg = c < &Scalar::zero();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if !mag.is_one() {
                write!(f, "{mag} ")?;
            }
            write!(f, "{}", KeyDisplay(k))?;
        }
        Ok(())
    }
}

pub fn print_element(v: &Element) -> String {
    v.to_string()
}

pub fn print_tensor2(t: &Tensor2) -> String {
    t.to_string()
}

pub fn print_tensor3(t: &Tensor3) -> String {
    t.to_string()
}
