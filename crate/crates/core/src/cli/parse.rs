//! Text syntax for polynomials, variable lists and points.
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := coeff ('*' factor)* | factor ('*' factor)*
//! factor := var ('^' nat)?
//! coeff  := int ('/' nat)?
//! var    := letter (letter | digit | '_')*
//! ```
//!
//! Whitespace is ignored. There is no implicit multiplication, so `x1` is
//! always a variable name. Error positions are 0-based character offsets.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::polyring::{Polynomial, Rational, RationalPoint, Ring};

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    ring: Option<&'a Ring>,
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

impl<'a> Parser<'a> {
    fn new(text: &str, ring: Option<&'a Ring>) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            ring,
        }
    }

    fn ring(&self) -> Result<&'a Ring> {
        self.ring
            .ok_or_else(|| syntax(self.pos, "variables are not allowed here"))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Some(s.parse().expect("ascii digits"))
    }

    fn poly(&mut self) -> Result<Polynomial> {
        let mut acc = self.ring()?.zero();
        let mut negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            let t = self.term()?;
            acc = if negative { &acc - &t } else { &acc + &t };
            if self.eat('+') {
                negative = false;
            } else if self.eat('-') {
                negative = true;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = match self.peek() {
            Some(c) if c.is_ascii_digit() => self.ring()?.constant(self.coeff()?),
            Some(c) if c.is_alphabetic() => self.factor()?,
            Some(c) => {
                return Err(syntax(
                    self.pos,
                    format!("expected a coefficient or variable, found `{c}`"),
                ))
            }
            None => {
                return Err(syntax(
                    self.pos,
                    "expected a coefficient or variable, found end of input",
                ))
            }
        };
        while self.eat('*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn coeff(&mut self) -> Result<Rational> {
        let num = self.digits().ok_or_else(|| syntax(self.pos, "expected an integer"))?;
        if self.eat('/') {
            let at = self.pos;
            let den = self
                .digits()
                .ok_or_else(|| syntax(self.pos, "expected a natural denominator"))?;
            if den.is_zero() {
                return Err(syntax(at, "zero denominator"));
            }
            return Ok(Rational::new(num, den));
        }
        Ok(Rational::from_integer(num))
    }

    fn factor(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        let start = self.pos;
        match self.chars.get(self.pos) {
            Some(c) if c.is_alphabetic() => self.pos += 1,
            Some(c) => return Err(syntax(self.pos, format!("expected a variable, found `{c}`"))),
            None => return Err(syntax(self.pos, "expected a variable, found end of input")),
        }
        while self.pos < self.chars.len() && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_') {
            self.pos += 1;
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        let v = self.ring()?.var(&name)?;
        if self.eat('^') {
            let at = self.pos;
            let e = self
                .digits()
                .ok_or_else(|| syntax(at, "expected a nonnegative integer exponent"))?;
            let e: u32 = e.try_into().map_err(|_| syntax(at, "exponent too large"))?;
            return Ok(v.pow(e));
        }
        Ok(v)
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(syntax(self.pos, format!("unexpected `{c}`"))),
        }
    }
}

pub fn parse_poly(text: &str, ring: &Ring) -> Result<Polynomial> {
    let mut p = Parser::new(text, Some(ring));
    let f = p.poly()?;
    p.finish()?;
    Ok(f)
}

/// Comma-separated polynomials; an empty string gives no polynomials.
pub fn parse_poly_list(text: &str, ring: &Ring) -> Result<Vec<Polynomial>> {
    let mut out = Vec::new();
    let mut offset = 0;
    if text.trim().is_empty() {
        return Ok(out);
    }
    for part in text.split(',') {
        let f = parse_poly(part, ring).map_err(|e| match e {
            Error::Syntax { pos, msg } => Error::Syntax { pos: pos + offset, msg },
            e => e,
        })?;
        out.push(f);
        offset += part.chars().count() + 1;
    }
    Ok(out)
}

fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_alphabetic()) && cs.all(|c| c.is_alphanumeric() || c == '_')
}

/// Comma-separated variable names following the `var` rule.
pub fn parse_names(text: &str) -> Result<Vec<String>> {
    let names: Vec<String> = text
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect();
    if let Some(bad) = names.iter().find(|n| !is_identifier(n)) {
        return Err(Error::InvalidRing(format!("`{bad}` is not a variable name")));
    }
    Ok(names)
}

/// Comma-separated rationals such as `1, -2/3, 0`.
pub fn parse_point(text: &str) -> Result<RationalPoint> {
    let mut coords = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        let t = part.trim();
        let lead = part.chars().count() - part.trim_start().chars().count();
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t),
        };
        let mut p = Parser::new(body, None);
        let c = p.coeff().and_then(|c| p.finish().map(|_| c)).map_err(|e| match e {
            Error::Syntax { pos, msg } => Error::Syntax {
                pos: offset + lead + usize::from(neg) + pos,
                msg,
            },
            e => e,
        })?;
        coords.push(if neg { -c } else { c });
        offset += part.chars().count() + 1;
    }
    Ok(RationalPoint::from_coords(coords))
}
