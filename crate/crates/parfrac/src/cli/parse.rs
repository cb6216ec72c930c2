//! Expression parsing.
//!
//! Grammar (whitespace insignificant, variable fixed to t):
//!   expr   := poly "/" "(" factor ("*" factor)* ")"
//!   factor := "(" poly ")" ["^" uint] | poly
//!   poly   := [sign] term (("+"|"-") term)*
//!   term   := coeff | coeff "*" tpow | tpow
//!   tpow   := "t" ["^" uint]
//!   coeff  := int ["/" int]         (the "/" binds only when digits follow)
//!
//! The numerator may be parenthesized. Constant factors fold into the
//! denominator unit; equal factors merge by summing exponents.

use crate::error::{Error, Result};
use crate::fields::{FieldDescriptor, FieldElement};
use crate::pfd_linear::{PartialFractionExpansion, PfdTerm, SplitDenominator};
use crate::pfd_quotient::FactoredDenominator;
use crate::polynomial::Polynomial;

/// Which decomposition the caller asked for.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    #[default]
    Pfd,
    Full,
    Ppfrac,
}

/// A parsed rational function plus the field and requested mode.
#[derive(Clone, Debug)]
pub struct InputSpec {
    pub numerator: Polynomial,
    pub denominator: FactoredDenominator,
    pub field: FieldDescriptor,
    pub mode: Mode,
}

impl InputSpec {
    /// The split view when every factor is linear.
    pub fn split_denominator(&self) -> Option<SplitDenominator> {
        self.denominator.to_split()
    }
}

pub fn parse_expression(src: &str, field: &FieldDescriptor) -> Result<InputSpec> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, field: field.clone() };
    p.skip_ws();
    let numerator = if p.peek() == Some(b'(') {
        p.bump();
        let poly = p.parse_poly()?;
        p.expect(b')')?;
        poly
    } else {
        p.parse_poly()?
    };
    p.expect(b'/')?;
    p.expect(b'(')?;
    let mut factors: Vec<(Polynomial, usize)> = Vec::new();
    loop {
        factors.push(p.parse_factor()?);
        p.skip_ws();
        if p.peek() == Some(b'*') {
            p.bump();
        } else {
            break;
        }
    }
    p.expect(b')')?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    let mut unit = field.one();
    let mut merged: Vec<(Polynomial, usize)> = Vec::new();
    for (poly, exp) in factors {
        if exp == 0 {
            continue;
        }
        if poly.is_zero() {
            return Err(Error::InvalidDenominator("zero factor".to_string()));
        }
        if poly.degree().as_usize() == Some(0) {
            unit = unit.mul(&poly.coeff(0).pow(exp as u64));
            continue;
        }
        match merged.iter_mut().find(|(q, _)| q == &poly) {
            Some((_, e)) => *e += exp,
            None => merged.push((poly, exp)),
        }
    }
    let denominator = FactoredDenominator::new(merged, unit)?;
    Ok(InputSpec { numerator, denominator, field: field.clone(), mode: Mode::Pfd })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: FieldDescriptor,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn parse_factor(&mut self) -> Result<(Polynomial, usize)> {
        if self.peek() == Some(b'(') {
            self.bump();
            let poly = self.parse_poly()?;
            self.expect(b')')?;
            let exp = if self.peek() == Some(b'^') {
                self.bump();
                self.parse_uint()?
            } else {
                1
            };
            Ok((poly, exp))
        } else {
            Ok((self.parse_poly()?, 1))
        }
    }

    fn parse_poly(&mut self) -> Result<Polynomial> {
        let mut terms: Vec<(usize, FieldElement)> = Vec::new();
        let mut negative = match self.peek() {
            Some(b'-') => {
                self.bump();
                true
            }
            Some(b'+') => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            let (k, c) = self.parse_term()?;
            terms.push((k, if negative { c.neg() } else { c }));
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    negative = false;
                }
                Some(b'-') => {
                    self.bump();
                    negative = true;
                }
                _ => break,
            }
        }
        let max_k = terms.iter().map(|(k, _)| *k).max().unwrap_or(0);
        let mut coeffs = vec![self.field.zero(); max_k + 1];
        for (k, c) in terms {
            coeffs[k] = coeffs[k].add(&c);
        }
        Ok(Polynomial::from_coeffs(self.field.clone(), coeffs))
    }

    /// One monomial: returns (power of t, coefficient).
    fn parse_term(&mut self) -> Result<(usize, FieldElement)> {
        match self.peek() {
            Some(b't') => {
                self.bump();
                Ok((self.parse_exponent()?, self.field.one()))
            }
            Some(c) if c.is_ascii_digit() => {
                let coeff = self.parse_coeff()?;
                if self.peek() == Some(b'*') {
                    self.bump();
                    if self.peek() != Some(b't') {
                        return Err(self.error("expected `t` after `*`"));
                    }
                    self.bump();
                    Ok((self.parse_exponent()?, coeff))
                } else {
                    Ok((0, coeff))
                }
            }
            _ => Err(self.error("expected a term")),
        }
    }

    fn parse_exponent(&mut self) -> Result<usize> {
        if self.peek() == Some(b'^') {
            self.bump();
            self.parse_uint()
        } else {
            Ok(1)
        }
    }

    fn parse_uint(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("non-integer exponent"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("digits are utf8")
            .parse()
            .map_err(|_| self.error("exponent out of range"))
    }

    fn digits(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("digits are utf8").to_string())
    }

    /// Integer or ratio; the "/" is part of the coefficient only when a
    /// digit follows it (otherwise it separates numerator and denominator).
    fn parse_coeff(&mut self) -> Result<FieldElement> {
        let num = self.digits()?;
        let numerator = self.field.integer_from_decimal(&num)?;
        if self.src.get(self.pos) == Some(&b'/')
            && self.src.get(self.pos + 1).is_some_and(|c| c.is_ascii_digit())
        {
            self.pos += 1;
            let den = self.digits()?;
            let denominator = self.field.integer_from_decimal(&den)?;
            if denominator.is_zero() {
                return Err(self.error("zero coefficient denominator"));
            }
            return numerator.div(&denominator);
        }
        Ok(numerator)
    }
}

/// Parses the text rendering of an expansion back into a
/// [`PartialFractionExpansion`]; the inverse of the text formatter, used by
/// the round-trip property.
pub fn parse_expansion(src: &str, field: &FieldDescriptor) -> Result<PartialFractionExpansion> {
    let mut poly_part = Polynomial::zero(field);
    let mut terms: Vec<PfdTerm> = Vec::new();
    if src.trim() == "0" {
        return Ok(PartialFractionExpansion { poly_part, terms });
    }
    for (negative, chunk) in split_summands(src) {
        let mut p = Parser { src: chunk.as_bytes(), pos: 0, field: field.clone() };
        let mut numerator = if p.peek() == Some(b'(') {
            p.bump();
            let poly = p.parse_poly()?;
            p.expect(b')')?;
            poly
        } else {
            p.parse_poly()?
        };
        // Optional "/int" scale on the numerator.
        if p.peek() == Some(b'/')
            && p.src.get(p.pos + 1).is_some_and(|c| c.is_ascii_digit())
        {
            p.bump();
            let den = p.digits()?;
            let scale = field.integer_from_decimal(&den)?.inv()?;
            numerator = numerator.scale(&scale);
        }
        if negative {
            numerator = numerator.neg();
        }
        if p.peek() == Some(b'/') {
            p.bump();
            p.expect(b'(')?;
            let factor = p.parse_poly()?;
            p.expect(b')')?;
            let power = if p.peek() == Some(b'^') {
                p.bump();
                p.parse_uint()?
            } else {
                1
            };
            p.skip_ws();
            if p.pos != p.src.len() {
                return Err(p.error("unexpected trailing input in term"));
            }
            terms.push(PfdTerm { factor, power, numerator });
        } else {
            p.skip_ws();
            if p.pos != p.src.len() {
                return Err(p.error("unexpected trailing input in summand"));
            }
            poly_part = poly_part.add(&numerator);
        }
    }
    Ok(PartialFractionExpansion { poly_part, terms })
}

/// Splits at top-level +/- signs, keeping each summand's sign.
fn split_summands(src: &str) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut cur_neg = false;
    let mut any = false;
    for ch in src.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 && any => {
                out.push((cur_neg, std::mem::take(&mut cur)));
                cur_neg = ch == '-';
                any = false;
                continue;
            }
            '-' if depth == 0 && !any && cur.is_empty() => {
                cur_neg = true;
                continue;
            }
            _ => {}
        }
        if !ch.is_whitespace() {
            any = true;
        }
        cur.push(ch);
    }
    if !cur.trim().is_empty() {
        out.push((cur_neg, cur));
    }
    out
}
