//! Partial fraction decomposition for denominators split into linear
//! factors: shift the target root to the origin, read the numerators off a
//! truncated series, shift back. The polynomial part comes from the
//! reciprocal trick.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fields::{FieldDescriptor, FieldElement};
use crate::polynomial::Polynomial;
use crate::truncated::{self, TruncatedSeries};

/// How the shifted denominator cofactor is expanded inside each
/// per-root computation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GroupStrategy {
    /// Expand the linear factors in groups of max(1, m_i - 1) and combine
    /// the groups with truncated products, then one truncated division.
    #[default]
    Grouping,
    /// Multiply the numerator by the pole series of every other factor;
    /// no division at all.
    PoleSeries,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SplitOptions {
    pub strategy: GroupStrategy,
    /// Run the per-root computations as independent tasks.
    pub parallel: bool,
}

/// A denominator unit * prod (t - a_i)^{m_i} with pairwise distinct roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitDenominator {
    roots: Vec<(FieldElement, usize)>,
    unit: FieldElement,
}

impl SplitDenominator {
    pub fn new(roots: Vec<(FieldElement, usize)>, unit: FieldElement) -> Result<Self> {
        if unit.is_zero() {
            return Err(Error::InvalidDenominator("unit must be nonzero".to_string()));
        }
        for (a, m) in &roots {
            if *m == 0 {
                return Err(Error::InvalidDenominator(
                    "multiplicities must be positive".to_string(),
                ));
            }
            if a.field() != unit.field() {
                return Err(Error::FieldMismatch);
            }
        }
        for i in 0..roots.len() {
            for j in (i + 1)..roots.len() {
                if roots[i].0 == roots[j].0 {
                    return Err(Error::NotCoprime(format!(
                        "duplicate root {}",
                        roots[i].0
                    )));
                }
            }
        }
        Ok(SplitDenominator { roots, unit })
    }

    pub fn roots(&self) -> &[(FieldElement, usize)] {
        &self.roots
    }

    pub fn unit(&self) -> &FieldElement {
        &self.unit
    }

    pub fn field(&self) -> &FieldDescriptor {
        self.unit.field()
    }

    /// Total degree sum of the multiplicities.
    pub fn degree(&self) -> usize {
        self.roots.iter().map(|(_, m)| m).sum()
    }

    /// The monic product prod (t - a_i)^{m_i}, unit excluded.
    pub fn monic_polynomial(&self) -> Polynomial {
        if self.roots.is_empty() {
            return Polynomial::one(self.field());
        }
        let factors: Vec<Polynomial> = self
            .roots
            .iter()
            .map(|(a, m)| Polynomial::expand_linear_power(a, *m, None))
            .collect();
        Polynomial::product_tree(&factors)
    }

    /// The full denominator polynomial including the unit.
    pub fn expanded(&self) -> Polynomial {
        self.monic_polynomial().scale(&self.unit)
    }
}

/// One proper-fraction term numerator / factor^power with
/// deg numerator < deg factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PfdTerm {
    pub factor: Polynomial,
    pub power: usize,
    pub numerator: Polynomial,
}

/// The decomposition poly_part + sum of terms; recombining over the common
/// denominator reproduces the input exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFractionExpansion {
    pub poly_part: Polynomial,
    pub terms: Vec<PfdTerm>,
}

impl PartialFractionExpansion {
    pub fn zero(field: &FieldDescriptor) -> Self {
        PartialFractionExpansion { poly_part: Polynomial::zero(field), terms: Vec::new() }
    }

    /// Drops zero numerators and sorts terms by (factor, descending power),
    /// so outputs of different algorithms compare structurally.
    pub fn canonicalized(&self) -> Self {
        let mut terms: Vec<PfdTerm> = self
            .terms
            .iter()
            .filter(|t| !t.numerator.is_zero())
            .cloned()
            .collect();
        terms.sort_by(|x, y| {
            x.factor
                .cmp_canonical(&y.factor)
                .then_with(|| y.power.cmp(&x.power))
        });
        PartialFractionExpansion { poly_part: self.poly_part.clone(), terms }
    }

    pub fn canon_eq(&self, other: &Self) -> bool {
        self.canonicalized() == other.canonicalized()
    }
}

/// The numerator r of Frac(N/(t^m E), t^m): r = ceil(t^m) N/E, requiring
/// E(0) != 0.
pub fn frac_at_zero(n: &Polynomial, e: &Polynomial, m: usize) -> Result<Polynomial> {
    assert!(m >= 1, "truncation order must be positive");
    if e.coeff(0).is_zero() {
        return Err(Error::NotCoprime(format!("factor not coprime to t^{m}")));
    }
    let z = truncated::trunc_div(
        &TruncatedSeries::truncate(n, m),
        &TruncatedSeries::truncate(e, m),
        m,
    )?;
    Ok(z.to_polynomial())
}

/// All numerators A_{i,j} of Frac(N/D, (t - a_i)^{m_i}), as (power j, A)
/// pairs in descending power order (zero values included).
///
/// `n` must already be proper with respect to the full denominator;
/// the denominator's unit is divided out here.
pub fn frac_at_point(
    n: &Polynomial,
    den: &SplitDenominator,
    index: usize,
    strategy: GroupStrategy,
) -> Result<Vec<(usize, FieldElement)>> {
    let (a, m0) = den
        .roots
        .get(index)
        .ok_or(Error::IndexOutOfRange { index, len: den.roots.len() })?
        .clone();
    let field = den.field().clone();
    let shifted_n = TruncatedSeries::truncate(&n.shift_truncated(&a, m0), m0);
    let r = match strategy {
        GroupStrategy::Grouping => {
            // Linear factor copies of tau_a D / t^{m0}, grouped so each
            // group's expanded degree stays below m0.
            let mut shifted_roots: Vec<FieldElement> = Vec::new();
            for (j, (b, mj)) in den.roots.iter().enumerate() {
                if j != index {
                    let c = b.sub(&a);
                    for _ in 0..*mj {
                        shifted_roots.push(c.clone());
                    }
                }
            }
            let group_size = 1.max(m0.saturating_sub(1));
            let mut e_acc = TruncatedSeries::one(&field, m0);
            for chunk in shifted_roots.chunks(group_size) {
                let group: Vec<Polynomial> = chunk
                    .iter()
                    .map(|c| Polynomial::from_coeffs(field.clone(), vec![c.neg(), field.one()]))
                    .collect();
                let expanded = Polynomial::product_tree(&group);
                e_acc = truncated::trunc_mul(
                    &e_acc,
                    &TruncatedSeries::truncate(&expanded, m0),
                    m0,
                );
            }
            truncated::trunc_div(&shifted_n, &e_acc, m0)?
        }
        GroupStrategy::PoleSeries => {
            let mut acc = shifted_n;
            for (j, (b, mj)) in den.roots.iter().enumerate() {
                if j != index {
                    let s = truncated::pole_series(&b.sub(&a), *mj, m0)?;
                    acc = truncated::trunc_mul(&acc, &s, m0);
                }
            }
            acc
        }
    };
    let r = r.scale(&den.unit.inv()?);
    // Coefficient of t^j corresponds to the numerator over (t - a)^{m0 - j}.
    Ok((0..m0).map(|j| (m0 - j, r.coeff(j).clone())).collect())
}

/// Polynomial part of N/D through the reciprocal trick: reverse both,
/// truncate-divide, reverse back. Always equals the divrem quotient.
pub fn polynomial_part(n: &Polynomial, d: &Polynomial) -> Result<Polynomial> {
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (ndeg, ddeg) = match (n.degree().as_usize(), d.degree().as_usize()) {
        (Some(nd), Some(dd)) if nd >= dd => (nd, dd),
        _ => return Ok(Polynomial::zero(n.field())),
    };
    let p = ndeg - ddeg;
    let z = truncated::trunc_div(
        &TruncatedSeries::truncate(&n.reversed(), p + 1),
        &TruncatedSeries::truncate(&d.reversed(), p + 1),
        p + 1,
    )?;
    // Coefficient of t^j in the series is the coefficient of t^{p-j} in P.
    let mut coeffs = z.coeffs().to_vec();
    coeffs.reverse();
    Ok(Polynomial::from_coeffs(n.field().clone(), coeffs))
}

/// Full decomposition over a split denominator: polynomial part plus one
/// [`frac_at_point`] pass per root, zero numerators dropped.
pub fn pfd_split(
    n: &Polynomial,
    den: &SplitDenominator,
    options: SplitOptions,
) -> Result<PartialFractionExpansion> {
    if n.field() != den.field() {
        return Err(Error::FieldMismatch);
    }
    let field = den.field().clone();
    if n.is_zero() {
        return Ok(PartialFractionExpansion::zero(&field));
    }
    let monic = den.monic_polynomial();
    let unit_inv = den.unit.inv()?;
    let poly_part = polynomial_part(&n.scale(&unit_inv), &monic)?;
    // Remaining numerator is proper with respect to the full denominator.
    let proper = n.sub(&poly_part.mul_auto(&monic).scale(&den.unit));
    let indices: Vec<usize> = (0..den.roots.len()).collect();
    let per_root: Vec<Vec<(usize, FieldElement)>> = if options.parallel && indices.len() > 1 {
        indices
            .par_iter()
            .map(|&i| frac_at_point(&proper, den, i, options.strategy))
            .collect::<Result<Vec<_>>>()?
    } else {
        indices
            .iter()
            .map(|&i| frac_at_point(&proper, den, i, options.strategy))
            .collect::<Result<Vec<_>>>()?
    };
    let mut terms = Vec::new();
    for ((a, _), powers) in den.roots.iter().zip(per_root) {
        let factor = Polynomial::from_coeffs(field.clone(), vec![a.neg(), field.one()]);
        for (power, value) in powers {
            if !value.is_zero() {
                terms.push(PfdTerm {
                    factor: factor.clone(),
                    power,
                    numerator: Polynomial::constant(value),
                });
            }
        }
    }
    Ok(PartialFractionExpansion { poly_part, terms })
}
