//! Full partial fraction decomposition: for each prime factor p(t) of the
//! denominator, numerators h_j(a) are computed as exact elements of the
//! extension K(a) = K[x]/<p(x)>, presenting the result as
//! sum over roots a of p of sum_j h_j(a)/(t-a)^j.

use crate::error::{Error, Result};
use crate::fields::{FieldDescriptor, FieldElement};
use crate::pfd_quotient::FactoredDenominator;
use crate::polynomial::Polynomial;
use crate::truncated::{self, TruncatedSeries};

/// Terms attached to one prime factor: h_j lives in the extension of the
/// base field by `prime` (or in the base field itself for linear primes).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullGroup {
    pub prime: Polynomial,
    pub multiplicity: usize,
    pub generator: String,
    /// (power j, h_j), descending powers, zero values dropped.
    pub terms: Vec<(usize, FieldElement)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullExpansion {
    pub poly_part: Polynomial,
    pub groups: Vec<FullGroup>,
}

/// The numerators h_j for the i-th prime factor, as (power j, h_j) pairs in
/// descending power order, zero values included.
///
/// `n` must be proper with respect to the full denominator. The computation
/// lifts everything to K(a), shifts by the symbolic root, divides the
/// shifted factor by t exactly, and reads the coefficients of one truncated
/// division.
pub fn full_frac_at_prime(
    n: &Polynomial,
    den: &FactoredDenominator,
    index: usize,
    generator: &str,
) -> Result<Vec<(usize, FieldElement)>> {
    let factors = den.factors();
    let (p, multiplicity) = factors
        .get(index)
        .ok_or(Error::IndexOutOfRange { index, len: factors.len() })?
        .clone();
    if n.degree() >= crate::polynomial::Degree::Finite(den.degree()) {
        return Err(Error::ImproperFraction(
            "full_frac_at_prime requires deg N < deg D".to_string(),
        ));
    }
    let base = den.field().clone();
    let deg = p.degree().as_usize().expect("factors are nonconstant");
    // Linear primes stay in the base field with the literal root; higher
    // degrees work in the quotient ring by p.
    let (work, alpha): (FieldDescriptor, FieldElement) = if deg == 1 {
        (base.clone(), p.coeff(0).neg())
    } else {
        let ext = FieldDescriptor::extension(base.clone(), p.clone(), generator)?;
        let alpha = ext.generator_element().expect("extension field");
        (ext, alpha)
    };
    let lift = |poly: &Polynomial| -> Result<Polynomial> {
        if deg == 1 {
            Ok(poly.clone())
        } else {
            poly.lift_to(&work)
        }
    };
    let shifted_p = lift(&p)?.shift(&alpha);
    if !shifted_p.coeff(0).is_zero() {
        return Err(Error::NotARoot);
    }
    // u(t) = p(t + alpha)/t, the pole-free cofactor of the shifted factor.
    let u = shifted_p.shifted_down(1);
    let m = multiplicity;
    let mut e = truncated::trunc_pow(&TruncatedSeries::truncate(&u, m), m, m);
    for (j, (q, a)) in factors.iter().enumerate() {
        if j != index {
            let sh = TruncatedSeries::truncate(&lift(q)?.shift_truncated(&alpha, m), m);
            e = truncated::trunc_mul(&e, &truncated::trunc_pow(&sh, *a, m), m);
        }
    }
    let shifted_n = TruncatedSeries::truncate(&lift(n)?.shift_truncated(&alpha, m), m);
    let r = truncated::trunc_div(&shifted_n, &e, m)?;
    let unit = if deg == 1 {
        den.unit().clone()
    } else {
        den.unit().lift_to(&work)?
    };
    let r = r.scale(&unit.inv()?);
    Ok((0..m).map(|j| (m - j, r.coeff(j).clone())).collect())
}

/// Full decomposition: polynomial part plus one group of symbolic-root
/// numerators per prime factor. Each group gets its own generator symbol
/// ("a", "b", ...); factors must be prime (squarefreeness is verified via
/// the gcd with the derivative, irreducibility is the caller's assertion).
pub fn full_pfd(n: &Polynomial, den: &FactoredDenominator) -> Result<FullExpansion> {
    if n.field() != den.field() {
        return Err(Error::FieldMismatch);
    }
    for (p, _) in den.factors() {
        let g = Polynomial::gcd(p, &p.derivative())?;
        if g.degree().as_usize() != Some(0) {
            return Err(Error::NotSquarefree);
        }
    }
    let d_full = den.expanded();
    let (poly_part, proper) = n.divrem(&d_full)?;
    let mut groups = Vec::new();
    if !proper.is_zero() {
        for (index, (p, a)) in den.factors().iter().enumerate() {
            let generator = generator_symbol(index);
            let all = full_frac_at_prime(&proper, den, index, &generator)?;
            let terms: Vec<(usize, FieldElement)> =
                all.into_iter().filter(|(_, h)| !h.is_zero()).collect();
            if !terms.is_empty() {
                groups.push(FullGroup {
                    prime: p.clone(),
                    multiplicity: *a,
                    generator,
                    terms,
                });
            }
        }
    }
    Ok(FullExpansion { poly_part, groups })
}

fn generator_symbol(index: usize) -> String {
    if index < 26 {
        char::from(b'a' + index as u8).to_string()
    } else {
        format!("a{index}")
    }
}
