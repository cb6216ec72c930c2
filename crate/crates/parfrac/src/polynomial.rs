//! Dense univariate polynomial arithmetic over any [`FieldDescriptor`].
//!
//! Coefficients are stored by ascending power of t with a nonzero trailing
//! coefficient; the zero polynomial has an empty coefficient vector and
//! degree minus infinity. All operations are pure.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::fields::{FieldDescriptor, FieldElement};

/// Degree with the zero polynomial mapped to a value below every integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn as_usize(&self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(*d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Multiplication strategy; `Auto` switches to Karatsuba once both operands
/// reach [`KARATSUBA_THRESHOLD`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MulStrategy {
    Schoolbook,
    Karatsuba,
    #[default]
    Auto,
}

/// Degree below which schoolbook multiplication runs.
pub const KARATSUBA_THRESHOLD: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    field: FieldDescriptor,
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn zero(field: &FieldDescriptor) -> Self {
        Polynomial { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &FieldDescriptor) -> Self {
        Polynomial::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> Self {
        let field = c.field().clone();
        let coeffs = if c.is_zero() { Vec::new() } else { vec![c] };
        Polynomial { field, coeffs }
    }

    /// c * t^k
    pub fn monomial(c: FieldElement, k: usize) -> Self {
        let field = c.field().clone();
        if c.is_zero() {
            return Polynomial::zero(&field);
        }
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        Polynomial { field, coeffs }
    }

    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(field: FieldDescriptor, mut coeffs: Vec<FieldElement>) -> Self {
        for c in &coeffs {
            assert!(c.field() == &field, "coefficient from a different field");
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { field, coeffs }
    }

    /// Convenience constructor from small integers, ascending powers.
    pub fn from_integers(field: &FieldDescriptor, coeffs: &[i64]) -> Self {
        Polynomial::from_coeffs(field.clone(), coeffs.iter().map(|&c| field.integer(c)).collect())
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<FieldElement> {
        self.coeffs
    }

    /// Coefficient of t^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn degree(&self) -> Degree {
        if self.coeffs.is_empty() {
            Degree::NegInfinity
        } else {
            Degree::Finite(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading_coeff(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_one())
    }

    fn check_same_field(&self, other: &Self, op: &str) {
        assert!(
            self.field == other.field,
            "field mismatch in polynomial `{op}`"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same_field(other, "add");
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let c = match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            };
            out.push(c);
        }
        Polynomial::from_coeffs(self.field.clone(), out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &FieldElement) -> Self {
        assert!(c.field() == &self.field, "field mismatch in polynomial `scale`");
        if c.is_zero() {
            return Polynomial::zero(&self.field);
        }
        Polynomial {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self, strategy: MulStrategy) -> Self {
        self.check_same_field(other, "mul");
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.field);
        }
        let coeffs = mul_slices(&self.field, &self.coeffs, &other.coeffs, strategy);
        Polynomial::from_coeffs(self.field.clone(), coeffs)
    }

    pub fn mul_auto(&self, other: &Self) -> Self {
        self.mul(other, MulStrategy::Auto)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Polynomial::one(&self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_auto(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_auto(&base);
            }
        }
        acc
    }

    /// Classical long division: the unique (quotient, remainder) pair with
    /// `self = d*q + r` and `deg r < deg d`.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        self.check_same_field(d, "divrem");
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() < d.coeffs.len() {
            return Ok((Polynomial::zero(&self.field), self.clone()));
        }
        let lc_inv = d.coeffs[dd].inv()?;
        let mut rem = self.coeffs.clone();
        let qlen = self.coeffs.len() - dd;
        let mut quot = vec![self.field.zero(); qlen];
        for k in (0..qlen).rev() {
            let c = rem[k + dd].mul(&lc_inv);
            if c.is_zero() {
                continue;
            }
            for i in 0..dd {
                rem[k + i] = rem[k + i].sub(&c.mul(&d.coeffs[i]));
            }
            rem[k + dd] = self.field.zero();
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((
            Polynomial::from_coeffs(self.field.clone(), quot),
            Polynomial::from_coeffs(self.field.clone(), rem),
        ))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.divrem(d)?.1)
    }

    /// Division known to be exact; errors if a nonzero remainder shows up.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::ImproperFraction(format!(
                "{self} is not divisible by {d}"
            )));
        }
        Ok(q)
    }

    /// Extended Euclid: returns (g, u, v) with `u*a + v*b = g`, g monic.
    pub fn xgcd(a: &Self, b: &Self) -> Result<(Self, Self, Self)> {
        a.check_same_field(b, "xgcd");
        if a.is_zero() && b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let field = a.field.clone();
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Polynomial::one(&field), Polynomial::zero(&field));
        let (mut t0, mut t1) = (Polynomial::zero(&field), Polynomial::one(&field));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s = s0.sub(&q.mul_auto(&s1));
            let t = t0.sub(&q.mul_auto(&t1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        let lc_inv = r0.leading_coeff().expect("nonzero gcd").inv()?;
        Ok((r0.scale(&lc_inv), s0.scale(&lc_inv), t0.scale(&lc_inv)))
    }

    pub fn gcd(a: &Self, b: &Self) -> Result<Self> {
        Ok(Self::xgcd(a, b)?.0)
    }

    /// p(t + b), expanded term by term through the binomial theorem with
    /// consecutive-ratio coefficient updates.
    ///
    /// Panics in prime fields whose characteristic does not exceed the
    /// degree (the ratio updates divide by small integers).
    pub fn shift(&self, b: &FieldElement) -> Self {
        match self.degree() {
            Degree::NegInfinity => self.clone(),
            Degree::Finite(d) => self.shift_truncated(b, d + 1),
        }
    }

    /// The first `m` coefficients of p(t + b): one binomial walk per nonzero
    /// term of p, `O(m)` multiplications each.
    pub fn shift_truncated(&self, b: &FieldElement, m: usize) -> Self {
        assert!(b.field() == &self.field, "field mismatch in polynomial `shift`");
        assert!(m >= 1, "truncation order must be positive");
        if self.is_zero() {
            return self.clone();
        }
        if b.is_zero() {
            let len = m.min(self.coeffs.len());
            return Polynomial::from_coeffs(self.field.clone(), self.coeffs[..len].to_vec());
        }
        let max_i = m.min(self.coeffs.len()) - 1;
        let inv_b = b.inv().expect("nonzero shift");
        // step[i] = 1/((i+1) * b), shared by all terms.
        let inv_ints = integer_inverses(&self.field, max_i + 1);
        let steps: Vec<FieldElement> = inv_ints.iter().map(|iv| iv.mul(&inv_b)).collect();
        let mut out = vec![self.field.zero(); m.min(self.coeffs.len())];
        let mut b_pow = self.field.one();
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                // c * (t+b)^k contributes c*C(k,i)*b^(k-i) to t^i.
                let mut val = c.mul(&b_pow);
                let top = m.min(k + 1);
                for i in 0..top {
                    out[i] = out[i].add(&val);
                    if i + 1 < top {
                        val = val.mul(&self.field.integer((k - i) as i64)).mul(&steps[i]);
                    }
                }
            }
            if k + 1 < self.coeffs.len() {
                b_pow = b_pow.mul(b);
            }
        }
        Polynomial::from_coeffs(self.field.clone(), out)
    }

    /// (t - a)^m with binomial coefficients built by consecutive ratios,
    /// `O(m)` multiplications; optionally truncated below `t^truncate_at`.
    pub fn expand_linear_power(
        a: &FieldElement,
        m: usize,
        truncate_at: Option<usize>,
    ) -> Self {
        assert!(m >= 1, "exponent must be positive");
        let field = a.field().clone();
        let len = truncate_at.map_or(m + 1, |l| l.min(m + 1));
        let mut out = vec![field.zero(); len];
        let neg_a = a.neg();
        let inv_ints = integer_inverses(&field, m);
        // Walk i = m down to 0; coef(i-1) = coef(i) * (-a) * i/(m-i+1).
        let mut val = field.one();
        if m < len {
            out[m] = val.clone();
        }
        for i in (1..=m).rev() {
            val = val
                .mul(&neg_a)
                .mul(&field.integer(i as i64))
                .mul(&inv_ints[m - i]);
            if i - 1 < len {
                out[i - 1] = val.clone();
            }
        }
        Polynomial::from_coeffs(field, out)
    }

    /// Balanced pairwise product of a nonempty factor list.
    pub fn product_tree(factors: &[Polynomial]) -> Polynomial {
        assert!(!factors.is_empty(), "product of an empty factor list");
        let field = factors[0].field.clone();
        for f in factors {
            assert!(f.field == field, "field mismatch in `product_tree`");
        }
        fn go(fs: &[Polynomial]) -> Polynomial {
            match fs.len() {
                1 => fs[0].clone(),
                n => {
                    let (lo, hi) = fs.split_at(n / 2);
                    go(lo).mul_auto(&go(hi))
                }
            }
        }
        go(factors)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        assert!(x.field() == &self.field, "field mismatch in `eval`");
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero(&self.field);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.mul(&self.field.integer(k as i64)))
            .collect();
        Polynomial::from_coeffs(self.field.clone(), coeffs)
    }

    /// t^deg * p(1/t): the coefficient sequence reversed.
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Polynomial::from_coeffs(self.field.clone(), coeffs)
    }

    /// p / t^k; the dropped low coefficients must be zero.
    pub fn shifted_down(&self, k: usize) -> Self {
        assert!(
            self.coeffs.iter().take(k).all(|c| c.is_zero()),
            "shifted_down drops nonzero coefficients"
        );
        if self.coeffs.len() <= k {
            return Polynomial::zero(&self.field);
        }
        Polynomial::from_coeffs(self.field.clone(), self.coeffs[k..].to_vec())
    }

    /// Re-reads the coefficients as constants of the extension field `ext`
    /// (whose base must be this polynomial's field).
    pub fn lift_to(&self, ext: &FieldDescriptor) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.lift_to(ext))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::from_coeffs(ext.clone(), coeffs))
    }

    /// (monic polynomial, former leading coefficient).
    pub fn make_monic(&self) -> Result<(Self, FieldElement)> {
        let lc = self.leading_coeff().ok_or(Error::DivisionByZero)?.clone();
        Ok((self.scale(&lc.inv()?), lc))
    }

    /// Total order for canonicalization: by degree, then coefficients from
    /// the highest power down.
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        self.check_same_field(other, "cmp_canonical");
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| {
            for (a, b) in self.coeffs.iter().rev().zip(other.coeffs.iter().rev()) {
                let c = a.total_cmp(b);
                if c != Ordering::Equal {
                    return c;
                }
            }
            Ordering::Equal
        })
    }

    /// Canonical text form "c0 + c1*t + c2*t^2" with zero terms omitted;
    /// `spaced = false` drops the whitespace.
    pub fn to_text(&self, spaced: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let body = term_text(c, k);
            if out.is_empty() {
                out.push_str(&body);
            } else if let Some(rest) = body.strip_prefix('-') {
                out.push_str(if spaced { " - " } else { "-" });
                out.push_str(rest);
            } else {
                out.push_str(if spaced { " + " } else { "+" });
                out.push_str(&body);
            }
        }
        out
    }
}

fn term_text(c: &FieldElement, k: usize) -> String {
    let tpow = match k {
        0 => String::new(),
        1 => "t".to_string(),
        _ => format!("t^{k}"),
    };
    if k == 0 {
        return coeff_atom(c);
    }
    if c.is_one() {
        return tpow;
    }
    if c.neg().is_one() {
        return format!("-{tpow}");
    }
    format!("{}*{}", coeff_atom(c), tpow)
}

/// Coefficient string, parenthesized when it is not a plain number.
fn coeff_atom(c: &FieldElement) -> String {
    let s = c.to_string();
    let simple = s
        .char_indices()
        .all(|(i, ch)| ch.is_ascii_digit() || ch == '/' || (i == 0 && ch == '-'));
    if simple {
        s
    } else {
        format!("({s})")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(true))
    }
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                Polynomial::$method(self, rhs)
            }
        }
    };
}

poly_binop!(Add, add);
poly_binop!(Sub, sub);

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.mul_auto(rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

/// Inverses of 1..=n in the field; panics when the characteristic divides
/// one of them.
pub(crate) fn integer_inverses(field: &FieldDescriptor, n: usize) -> Vec<FieldElement> {
    (1..=n)
        .map(|i| {
            field
                .integer(i as i64)
                .inv()
                .unwrap_or_else(|_| panic!("characteristic divides {i}; field too small"))
        })
        .collect()
}

/// Raw coefficient-slice product used by both polynomial and truncated-series
/// code. Result length is `a.len() + b.len() - 1`; no trailing-zero trim.
pub(crate) fn mul_slices(
    field: &FieldDescriptor,
    a: &[FieldElement],
    b: &[FieldElement],
    strategy: MulStrategy,
) -> Vec<FieldElement> {
    match strategy {
        MulStrategy::Schoolbook => schoolbook(field, a, b),
        MulStrategy::Karatsuba => karatsuba(field, a, b),
        MulStrategy::Auto => {
            if a.len().min(b.len()) <= KARATSUBA_THRESHOLD {
                schoolbook(field, a, b)
            } else {
                karatsuba(field, a, b)
            }
        }
    }
}

fn schoolbook(field: &FieldDescriptor, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add(&ai.mul(bj));
        }
    }
    out
}

fn karatsuba(field: &FieldDescriptor, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len().min(b.len()) <= KARATSUBA_THRESHOLD {
        return schoolbook(field, a, b);
    }
    // Split at ceil(max/2) instead of zero-padding to a power of two.
    let split = (a.len().max(b.len()) + 1) / 2;
    let (a0, a1) = split_clamped(a, split);
    let (b0, b1) = split_clamped(b, split);
    let p0 = karatsuba(field, a0, b0);
    let p2 = karatsuba(field, a1, b1);
    let a01 = add_slices(field, a0, a1);
    let b01 = add_slices(field, b0, b1);
    let mut p1 = karatsuba(field, &a01, &b01);
    sub_assign(field, &mut p1, &p0, 0);
    sub_assign(field, &mut p1, &p2, 0);
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    add_assign_at(&mut out, &p0, 0);
    add_assign_at(&mut out, &p1, split);
    add_assign_at(&mut out, &p2, 2 * split);
    out
}

fn split_clamped(s: &[FieldElement], at: usize) -> (&[FieldElement], &[FieldElement]) {
    if s.len() <= at {
        (s, &[])
    } else {
        s.split_at(at)
    }
}

fn add_slices(field: &FieldDescriptor, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x.add(y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => field.zero(),
        });
    }
    out
}

fn sub_assign(_field: &FieldDescriptor, acc: &mut [FieldElement], rhs: &[FieldElement], at: usize) {
    for (i, r) in rhs.iter().enumerate() {
        acc[at + i] = acc[at + i].sub(r);
    }
}

fn add_assign_at(acc: &mut [FieldElement], rhs: &[FieldElement], at: usize) {
    for (i, r) in rhs.iter().enumerate() {
        if !r.is_zero() {
            acc[at + i] = acc[at + i].add(r);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn q() -> FieldDescriptor {
        FieldDescriptor::rationals()
    }

    fn fp() -> FieldDescriptor {
        FieldDescriptor::prime_field(65537).unwrap()
    }

    fn golden_ext() -> FieldDescriptor {
        let q = q();
        let minimal = Polynomial::from_integers(&q, &[-1, -1, 1]);
        FieldDescriptor::extension(q, minimal, "a").unwrap()
    }

    fn random_poly(field: &FieldDescriptor, deg: usize, rng: &mut StdRng) -> Polynomial {
        let coeffs: Vec<FieldElement> = (0..=deg)
            .map(|_| {
                if field.is_rationals() {
                    field.ratio(rng.gen_range(-30i64..=30), rng.gen_range(1i64..=9)).unwrap()
                } else {
                    field.integer(rng.gen_range(0i64..65537))
                }
            })
            .collect();
        Polynomial::from_coeffs(field.clone(), coeffs)
    }

    #[test]
    fn difference_of_squares() {
        let f = q();
        let a = Polynomial::from_integers(&f, &[1, 1]);
        let b = Polynomial::from_integers(&f, &[-1, 1]);
        assert_eq!(a.mul_auto(&b), Polynomial::from_integers(&f, &[-1, 0, 1]));
    }

    #[test]
    fn schoolbook_convolution_by_hand() {
        let f = q();
        let a = Polynomial::from_integers(&f, &[1, 2, 3]);
        let b = Polynomial::from_integers(&f, &[4, 5]);
        let expect = Polynomial::from_integers(&f, &[4, 13, 22, 15]);
        assert_eq!(a.mul(&b, MulStrategy::Schoolbook), expect);
        assert_eq!(a.mul(&b, MulStrategy::Karatsuba), expect);
    }

    #[test]
    fn multiplicative_identity() {
        let f = q();
        let mut rng = StdRng::seed_from_u64(3);
        let p = random_poly(&f, 50, &mut rng);
        assert_eq!(p.mul_auto(&Polynomial::one(&f)), p);
    }

    #[test]
    fn karatsuba_matches_schoolbook() {
        let mut rng = StdRng::seed_from_u64(11);
        for field in [q(), fp()] {
            for _ in 0..100 {
                let da = rng.gen_range(0usize..=256);
                let db = rng.gen_range(0usize..=256);
                let a = random_poly(&field, da, &mut rng);
                let b = random_poly(&field, db, &mut rng);
                assert_eq!(
                    a.mul(&b, MulStrategy::Karatsuba),
                    a.mul(&b, MulStrategy::Schoolbook)
                );
            }
        }
    }

    #[test]
    fn divrem_paper_example() {
        // (t^3 + 2t^2 - 3t + 4) / (t^2 - 4t + 2) = t + 6 rem 19t - 8
        let f = q();
        let n = Polynomial::from_integers(&f, &[4, -3, 2, 1]);
        let d = Polynomial::from_integers(&f, &[2, -4, 1]);
        let (quot, rem) = n.divrem(&d).unwrap();
        assert_eq!(quot, Polynomial::from_integers(&f, &[6, 1]));
        assert_eq!(rem, Polynomial::from_integers(&f, &[-8, 19]));
    }

    #[test]
    fn divrem_trivial_cases() {
        let f = q();
        let d = Polynomial::from_integers(&f, &[2, -4, 1]);
        let (quot, rem) = d.divrem(&d).unwrap();
        assert!(quot.is_one());
        assert!(rem.is_zero());
        let small = Polynomial::from_integers(&f, &[5, 1]);
        let (quot, rem) = small.divrem(&d).unwrap();
        assert!(quot.is_zero());
        assert_eq!(rem, small);
        assert_eq!(small.divrem(&Polynomial::zero(&f)), Err(Error::DivisionByZero));
    }

    #[test]
    fn divrem_uniqueness_random() {
        let mut rng = StdRng::seed_from_u64(23);
        for field in [q(), fp(), golden_ext()] {
            let iters = if field.is_extension() { 100 } else { 500 };
            for _ in 0..iters {
                let n = random_any(&field, 24, &mut rng);
                let mut d = random_any(&field, 9, &mut rng);
                while d.is_zero() {
                    d = random_any(&field, 9, &mut rng);
                }
                let (quot, rem) = n.divrem(&d).unwrap();
                assert_eq!(d.mul_auto(&quot).add(&rem), n);
                assert!(rem.degree() < d.degree());
            }
        }
    }

    fn random_any(field: &FieldDescriptor, max_deg: usize, rng: &mut StdRng) -> Polynomial {
        if field.is_extension() {
            let base = field.base().unwrap().clone();
            let g = field.generator_element().unwrap();
            let deg = rng.gen_range(0usize..=max_deg);
            let coeffs = (0..=deg)
                .map(|_| {
                    let c0 = base.integer(rng.gen_range(-9i64..=9)).lift_to(field).unwrap();
                    let c1 = base.integer(rng.gen_range(-9i64..=9)).lift_to(field).unwrap();
                    c0.add(&c1.mul(&g))
                })
                .collect();
            Polynomial::from_coeffs(field.clone(), coeffs)
        } else {
            random_poly(field, rng.gen_range(0usize..=max_deg), rng)
        }
    }

    #[test]
    fn xgcd_with_zero() {
        let f = q();
        let p = Polynomial::from_integers(&f, &[2, 0, 4]);
        let (g, u, v) = Polynomial::xgcd(&p, &Polynomial::zero(&f)).unwrap();
        let monic = Polynomial::from_coeffs(
            f.clone(),
            vec![f.ratio(1, 2).unwrap(), f.zero(), f.one()],
        );
        assert_eq!(g, monic);
        assert_eq!(u, Polynomial::constant(f.ratio(1, 4).unwrap()));
        assert!(v.is_zero());
        assert_eq!(
            Polynomial::xgcd(&Polynomial::zero(&f), &Polynomial::zero(&f)),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn xgcd_common_factor() {
        let f = q();
        let t1 = Polynomial::from_integers(&f, &[-1, 1]);
        let t2 = Polynomial::from_integers(&f, &[-2, 1]);
        let t3 = Polynomial::from_integers(&f, &[-3, 1]);
        let a = t1.mul_auto(&t2);
        let b = t2.mul_auto(&t3);
        let (g, u, v) = Polynomial::xgcd(&a, &b).unwrap();
        assert_eq!(g, t2);
        assert_eq!(u.mul_auto(&a).add(&v.mul_auto(&b)), t2);
    }

    #[test]
    fn xgcd_paper_inverse() {
        // u*(t+1) = 1 mod (t^2 - t + 2) with u = (t-2)/(-4).
        let f = q();
        let a = Polynomial::from_integers(&f, &[1, 1]);
        let b = Polynomial::from_integers(&f, &[2, -1, 1]);
        let (g, u, _) = Polynomial::xgcd(&a, &b).unwrap();
        assert!(g.is_one());
        let quarter = f.ratio(-1, 4).unwrap();
        let expect = Polynomial::from_integers(&f, &[-2, 1]).scale(&quarter);
        assert_eq!(u, expect);
    }

    #[test]
    fn xgcd_bezout_random() {
        let mut rng = StdRng::seed_from_u64(29);
        for field in [q(), fp()] {
            for _ in 0..200 {
                let a = random_poly(&field, rng.gen_range(0usize..=12), &mut rng);
                let b = random_poly(&field, rng.gen_range(0usize..=12), &mut rng);
                if a.is_zero() && b.is_zero() {
                    continue;
                }
                let (g, u, v) = Polynomial::xgcd(&a, &b).unwrap();
                assert_eq!(u.mul_auto(&a).add(&v.mul_auto(&b)), g);
                assert!(a.rem(&g).unwrap().is_zero());
                assert!(b.rem(&g).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn shift_by_zero_is_identity() {
        let f = q();
        let mut rng = StdRng::seed_from_u64(31);
        let p = random_poly(&f, 20, &mut rng);
        assert_eq!(p.shift(&f.zero()), p);
    }

    #[test]
    fn shift_binomial() {
        let f = q();
        let p = Polynomial::from_integers(&f, &[0, 0, 1]);
        assert_eq!(p.shift(&f.one()), Polynomial::from_integers(&f, &[1, 2, 1]));
    }

    #[test]
    fn shift_over_extension() {
        // tau_alpha(t^2 - t - 1) = t^2 + (2a-1)t over K(a), a^2 = a + 1.
        let ext = golden_ext();
        let a = ext.generator_element().unwrap();
        let p = Polynomial::from_integers(&ext, &[-1, -1, 1]);
        let shifted = p.shift(&a);
        let lin = ext.integer(2).mul(&a).sub(&ext.one());
        let expect = Polynomial::from_coeffs(ext.clone(), vec![ext.zero(), lin, ext.one()]);
        assert_eq!(shifted, expect);
    }

    #[test]
    fn shift_round_trip_and_eval() {
        let mut rng = StdRng::seed_from_u64(37);
        for field in [q(), fp()] {
            for _ in 0..100 {
                let p = random_poly(&field, rng.gen_range(0usize..=16), &mut rng);
                let b = if field.is_rationals() {
                    field.integer(rng.gen_range(-9i64..=9))
                } else {
                    field.integer(rng.gen_range(0i64..65537))
                };
                let x = field.integer(rng.gen_range(-9i64..=9));
                let shifted = p.shift(&b);
                assert_eq!(shifted.shift(&b.neg()), p);
                assert_eq!(shifted.eval(&x), p.eval(&x.add(&b)));
            }
        }
    }

    #[test]
    fn expand_linear_power_cube() {
        let f = q();
        let p = Polynomial::expand_linear_power(&f.one(), 3, None);
        assert_eq!(p, Polynomial::from_integers(&f, &[-1, 3, -3, 1]));
    }

    #[test]
    fn expand_linear_power_truncated() {
        let f = q();
        // (t-2)^3 below t^2: -8 + 12t
        let p = Polynomial::expand_linear_power(&f.integer(2), 3, Some(2));
        assert_eq!(p, Polynomial::from_integers(&f, &[-8, 12]));
        // (t-3)^5 below t^2: -243 + 405t
        let p = Polynomial::expand_linear_power(&f.integer(3), 5, Some(2));
        assert_eq!(p, Polynomial::from_integers(&f, &[-243, 405]));
    }

    #[test]
    fn expand_linear_power_matches_pow() {
        let mut rng = StdRng::seed_from_u64(41);
        let f = q();
        for _ in 0..30 {
            let a = f.integer(rng.gen_range(-9i64..=9));
            let m = rng.gen_range(1usize..=12);
            let lin = Polynomial::from_coeffs(f.clone(), vec![a.neg(), f.one()]);
            assert_eq!(Polynomial::expand_linear_power(&a, m, None), lin.pow(m));
        }
    }

    #[test]
    fn product_tree_examples() {
        let f = q();
        let lin = |c: i64| Polynomial::from_integers(&f, &[-c, 1]);
        assert_eq!(
            Polynomial::product_tree(&[lin(1), lin(2)]),
            Polynomial::from_integers(&f, &[2, -3, 1])
        );
        assert_eq!(
            Polynomial::product_tree(&[lin(1), lin(2), lin(3), lin(4)]),
            Polynomial::from_integers(&f, &[24, -50, 35, -10, 1])
        );
        assert_eq!(Polynomial::product_tree(&[lin(7)]), lin(7));
    }

    #[test]
    fn product_tree_matches_fold() {
        let mut rng = StdRng::seed_from_u64(43);
        let f = fp();
        for _ in 0..20 {
            let n = rng.gen_range(1usize..=64);
            let factors: Vec<Polynomial> =
                (0..n).map(|_| random_poly(&f, rng.gen_range(0usize..=3), &mut rng)).collect();
            let fold = factors
                .iter()
                .skip(1)
                .fold(factors[0].clone(), |acc, p| acc.mul_auto(p));
            assert_eq!(Polynomial::product_tree(&factors), fold);
        }
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn mixed_field_mul_panics() {
        let a = Polynomial::from_integers(&q(), &[1, 1]);
        let b = Polynomial::from_integers(&fp(), &[1, 1]);
        let _ = a.mul_auto(&b);
    }

    #[test]
    fn degree_ordering() {
        let f = q();
        assert!(Polynomial::zero(&f).degree() < Polynomial::one(&f).degree());
        assert_eq!(Degree::NegInfinity.as_usize(), None);
        assert!(Degree::NegInfinity < Degree::Finite(0));
    }

    #[test]
    fn canonical_text_form() {
        let f = q();
        let p = Polynomial::from_integers(&f, &[2, 0, -1, 3]);
        assert_eq!(p.to_text(true), "2 - t^2 + 3*t^3");
        assert_eq!(p.to_text(false), "2-t^2+3*t^3");
        assert_eq!(Polynomial::zero(&f).to_text(true), "0");
    }
}
