//! Arithmetic modulo t^m: truncation, truncated products, divide-and-conquer
//! truncated division, and the series of a shifted pole.
//!
//! A [`TruncatedSeries`] is a distinct type from [`Polynomial`]: the
//! truncation order is part of the value (the coefficient vector always has
//! length exactly `m`), and conversions are explicit.

use crate::error::{Error, Result};
use crate::fields::{FieldDescriptor, FieldElement};
use crate::polynomial::{self, MulStrategy, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    field: FieldDescriptor,
    /// Exactly `m` coefficients, high ones kept even when zero.
    coeffs: Vec<FieldElement>,
}

impl TruncatedSeries {
    /// The first `m` coefficients of `p`, zero-padded.
    pub fn truncate(p: &Polynomial, m: usize) -> Self {
        assert!(m >= 1, "truncation order must be positive");
        let mut coeffs: Vec<FieldElement> =
            p.coeffs().iter().take(m).cloned().collect();
        coeffs.resize(m, p.field().zero());
        TruncatedSeries { field: p.field().clone(), coeffs }
    }

    pub fn from_coeffs(field: FieldDescriptor, coeffs: Vec<FieldElement>) -> Self {
        assert!(!coeffs.is_empty(), "truncation order must be positive");
        for c in &coeffs {
            assert!(c.field() == &field, "coefficient from a different field");
        }
        TruncatedSeries { field, coeffs }
    }

    pub fn one(field: &FieldDescriptor, m: usize) -> Self {
        Self::truncate(&Polynomial::one(field), m)
    }

    pub fn zero(field: &FieldDescriptor, m: usize) -> Self {
        Self::truncate(&Polynomial::zero(field), m)
    }

    /// The truncation order m.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &FieldElement {
        &self.coeffs[j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Explicit conversion back to a polynomial (trailing zeros dropped).
    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::from_coeffs(self.field.clone(), self.coeffs.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other, "add");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect();
        TruncatedSeries { field: self.field.clone(), coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_compatible(other, "sub");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.sub(b))
            .collect();
        TruncatedSeries { field: self.field.clone(), coeffs }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        TruncatedSeries {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    fn check_compatible(&self, other: &Self, op: &str) {
        assert!(self.field == other.field, "field mismatch in series `{op}`");
        assert!(
            self.order() == other.order(),
            "truncation order mismatch in series `{op}`: {} vs {}",
            self.order(),
            other.order()
        );
    }
}

/// ceil(t^m) P*Q, computed as one full product of the truncated operands
/// (the identity ceil(t^m)(fg) = ceil(t^m)(ceil(t^m)f * ceil(t^m)g)).
pub fn trunc_mul(p: &TruncatedSeries, q: &TruncatedSeries, m: usize) -> TruncatedSeries {
    p.check_compatible(q, "trunc_mul");
    assert!(p.order() == m, "order {} does not match m = {m}", p.order());
    let full = polynomial::mul_slices(&p.field, &p.coeffs, &q.coeffs, MulStrategy::Auto);
    let mut coeffs: Vec<FieldElement> = full.into_iter().take(m).collect();
    coeffs.resize(m, p.field.zero());
    TruncatedSeries { field: p.field.clone(), coeffs }
}

/// Repeated-squaring power under truncation.
pub fn trunc_pow(p: &TruncatedSeries, e: usize, m: usize) -> TruncatedSeries {
    let mut acc = TruncatedSeries::one(&p.field, m);
    let mut base = p.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = trunc_mul(&acc, &base, m);
        }
        e >>= 1;
        if e > 0 {
            base = trunc_mul(&base, &base, m);
        }
    }
    acc
}

/// ceil(t^m) P/Q by bisection: Z1 from the low half, Z2 from the correction
/// Z2 = ceil(t^(m-h)) [(P1 - Q1*Z1)/t^h + P2 - Q2*Z1] / Q1.
///
/// Requires Q(0) != 0. Odd orders split as ceil(m/2) / floor(m/2); the base
/// case m = 1 is a single coefficient division.
pub fn trunc_div(p: &TruncatedSeries, q: &TruncatedSeries, m: usize) -> Result<TruncatedSeries> {
    p.check_compatible(q, "trunc_div");
    assert!(p.order() == m, "order {} does not match m = {m}", p.order());
    if q.coeffs[0].is_zero() {
        return Err(Error::NonInvertibleSeries);
    }
    let coeffs = div_rec(&p.field, &p.coeffs, &q.coeffs)?;
    Ok(TruncatedSeries { field: p.field.clone(), coeffs })
}

fn div_rec(
    field: &FieldDescriptor,
    p: &[FieldElement],
    q: &[FieldElement],
) -> Result<Vec<FieldElement>> {
    let m = p.len();
    if m == 1 {
        return Ok(vec![p[0].div(&q[0])?]);
    }
    let h = m.div_ceil(2);
    let z1 = div_rec(field, &p[..h], &q[..h])?;
    // Full product Q1*Z1; its low h coefficients must reproduce P1 exactly.
    let q1z1 = polynomial::mul_slices(field, &q[..h], &z1, MulStrategy::Auto);
    for i in 0..h {
        let got = q1z1.get(i).cloned().unwrap_or_else(|| field.zero());
        assert!(got == p[i], "truncated division lost low-order cancellation");
    }
    let rest = m - h;
    // Q2*Z1 truncated to the high half.
    let q2z1 = polynomial::mul_slices(field, &q[h..], &z1, MulStrategy::Auto);
    let mut num = Vec::with_capacity(rest);
    for i in 0..rest {
        let carried = q1z1.get(h + i).cloned().unwrap_or_else(|| field.zero());
        let mut c = p[h + i].sub(&carried);
        if let Some(x) = q2z1.get(i) {
            c = c.sub(x);
        }
        num.push(c);
    }
    let z2 = div_rec(field, &num, &q[..rest])?;
    let mut out = z1;
    out.extend(z2);
    Ok(out)
}

/// Term-by-term long division of series; the independent reference for
/// [`trunc_div`].
pub fn trunc_div_naive(
    p: &TruncatedSeries,
    q: &TruncatedSeries,
    m: usize,
) -> Result<TruncatedSeries> {
    p.check_compatible(q, "trunc_div_naive");
    assert!(p.order() == m, "order {} does not match m = {m}", p.order());
    if q.coeffs[0].is_zero() {
        return Err(Error::NonInvertibleSeries);
    }
    let inv_q0 = q.coeffs[0].inv()?;
    let mut z: Vec<FieldElement> = Vec::with_capacity(m);
    for n in 0..m {
        let mut acc = p.coeffs[n].clone();
        for k in 1..=n {
            if !q.coeffs[k].is_zero() {
                acc = acc.sub(&q.coeffs[k].mul(&z[n - k]));
            }
        }
        z.push(acc.mul(&inv_q0));
    }
    Ok(TruncatedSeries { field: p.field.clone(), coeffs: z })
}

/// ceil(t^m) 1/(t-a)^k for a != 0: coefficient of t^j is
/// (-1)^k * C(k-1+j, j) / a^(k+j), binomials built by consecutive ratios.
///
/// Errors on a = 0 (a pole at the origin has no series expansion). In prime
/// fields the ratio updates divide by 1..m, so the characteristic must
/// exceed the truncation order.
pub fn pole_series(a: &FieldElement, k: usize, m: usize) -> Result<TruncatedSeries> {
    assert!(k >= 1, "pole order must be positive");
    assert!(m >= 1, "truncation order must be positive");
    if a.is_zero() {
        return Err(Error::PoleAtOrigin);
    }
    let field = a.field().clone();
    let inv_a = a.inv()?;
    let mut c = inv_a.pow(k as u64);
    if k % 2 == 1 {
        c = c.neg();
    }
    let inv_ints = polynomial::integer_inverses(&field, m.saturating_sub(1));
    let mut coeffs = Vec::with_capacity(m);
    for j in 0..m {
        coeffs.push(c.clone());
        if j + 1 < m {
            // c_{j+1} = c_j * (k+j) / ((j+1) * a)
            c = c
                .mul(&field.integer((k + j) as i64))
                .mul(&inv_ints[j])
                .mul(&inv_a);
        }
    }
    Ok(TruncatedSeries { field, coeffs })
}
