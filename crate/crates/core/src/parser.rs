//! Text form of polynomials.
//!
//! ```text
//! expr     := ['+'|'-'] term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' uint)?
//! base     := rational | 'i' | var | '(' expr ')'
//! rational := uint ('/' uint)?
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::bipoly::BiPoly;
use crate::error::{CoreError, Result};
use crate::field::Field;
use crate::gauss::GaussianRational;

const MAX_EXPONENT: u32 = 256;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn err(offset: usize, message: impl Into<String>) -> CoreError {
    CoreError::Parse { offset, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut k = 0;
    while k < bytes.len() {
        let b = bytes[k];
        let start = k;
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                k += 1;
                continue;
            }
            b'0'..=b'9' => {
                while k < bytes.len() && bytes[k].is_ascii_digit() {
                    k += 1;
                }
                if k < bytes.len() && (bytes[k] == b'.' || bytes[k] == b'e' || bytes[k] == b'E') {
                    return Err(err(k, "exact rationals only"));
                }
                let n: BigInt = text[start..k].parse().expect("digits");
                out.push((Tok::Num(n), start));
                continue;
            }
            b'.' => return Err(err(k, "exact rationals only")),
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while k < bytes.len() && (bytes[k].is_ascii_alphanumeric() || bytes[k] == b'_') {
                    k += 1;
                }
                out.push((Tok::Ident(text[start..k].to_string()), start));
                continue;
            }
            b'+' => out.push((Tok::Plus, k)),
            b'-' => out.push((Tok::Minus, k)),
            b'*' => out.push((Tok::Star, k)),
            b'/' => out.push((Tok::Slash, k)),
            b'^' => out.push((Tok::Caret, k)),
            b'(' => out.push((Tok::LParen, k)),
            b')' => out.push((Tok::RParen, k)),
            _ if !b.is_ascii() => return Err(err(k, "non-ASCII input")),
            _ => return Err(err(k, format!("unexpected character '{}'", b as char))),
        }
        k += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vars: [&'a str; 2],
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<BiPoly> {
        let negate = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BiPoly> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<BiPoly> {
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let off = self.offset();
        match self.bump() {
            Tok::Num(n) => {
                let e: u32 = u32::try_from(&n).ok().filter(|&e| e <= MAX_EXPONENT).ok_or_else(|| err(off, "exponent too large"))?;
                Ok(base.pow(e))
            }
            _ => Err(err(off, "expected nonnegative integer exponent")),
        }
    }

    fn base(&mut self) -> Result<BiPoly> {
        let off = self.offset();
        match self.bump() {
            Tok::Num(n) => {
                let mut r = BigRational::from_integer(n);
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let doff = self.offset();
                    match self.bump() {
                        Tok::Num(d) if !d.is_zero() => r /= BigRational::from_integer(d),
                        Tok::Num(_) => return Err(err(doff, "zero denominator")),
                        _ => return Err(err(doff, "expected denominator")),
                    }
                }
                Ok(BiPoly::constant(GaussianRational::real(r)))
            }
            Tok::Ident(s) => {
                if s == self.vars[0] {
                    Ok(BiPoly::x())
                } else if s == self.vars[1] {
                    Ok(BiPoly::y())
                } else if s == "i" {
                    Ok(BiPoly::constant(GaussianRational::i()))
                } else {
                    Err(err(off, format!("unknown identifier '{s}'")))
                }
            }
            Tok::LParen => {
                let e = self.expr()?;
                let coff = self.offset();
                match self.bump() {
                    Tok::RParen => Ok(e),
                    _ => Err(err(coff, "expected ')'")),
                }
            }
            Tok::End => Err(err(off, "unexpected end of input")),
            t => Err(err(off, format!("unexpected token {t:?}"))),
        }
    }
}

/// Parses with variables named `x` and `y`.
pub fn parse_poly(text: &str) -> Result<BiPoly> {
    parse_poly_with_vars(text, ["x", "y"])
}

pub fn parse_poly_with_vars(text: &str, vars: [&str; 2]) -> Result<BiPoly> {
    if vars.contains(&"i") || vars[0] == vars[1] {
        return Err(CoreError::InvalidOption(format!("bad variable names {vars:?}")));
    }
    let mut p = Parser { toks: lex(text)?, pos: 0, vars };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(err(p.offset(), "unexpected trailing input"));
    }
    Ok(e)
}

fn coeff_text(c: &GaussianRational) -> String {
    let s = c.to_string();
    if !c.is_real() && !c.re.is_zero() {
        format!("({s})")
    } else {
        s
    }
}

/// Canonical text: ascending total degree, higher `x` power first within a
/// degree. Round-trips through [`parse_poly`].
pub fn format_poly(p: &BiPoly) -> String {
    format_poly_with_vars(p, ["x", "y"])
}

pub fn format_poly_with_vars(p: &BiPoly, vars: [&str; 2]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut terms: Vec<(&(u32, u32), &GaussianRational)> = p.terms().collect();
    terms.sort_by(|(a, _), (b, _)| (a.0 + a.1).cmp(&(b.0 + b.1)).then(b.0.cmp(&a.0)));
    let mut out = String::new();
    for (idx, (&(i, j), c)) in terms.into_iter().enumerate() {
        let mut mono = Vec::new();
        for (e, v) in [(i, vars[0]), (j, vars[1])] {
            match e {
                0 => {}
                1 => mono.push(v.to_string()),
                _ => mono.push(format!("{v}^{e}")),
            }
        }
        let cs = coeff_text(c);
        let term = if mono.is_empty() {
            cs
        } else if c.is_one() {
            mono.join("*")
        } else if (-c.clone()).is_one() {
            format!("-{}", mono.join("*"))
        } else {
            format!("{cs}*{}", mono.join("*"))
        };
        if idx == 0 {
            out.push_str(&term);
        } else if let Some(rest) = term.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&term);
        }
    }
    out
}
