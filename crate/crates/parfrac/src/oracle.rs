//! Independent correctness references: the classical coefficient-matching
//! method (multiply through by the denominator, solve the dense linear
//! system by exact Gaussian elimination), brute-force recombination, and
//! floating-point evaluation helpers for sampling checks.
//!
//! These deliberately share no code path with the fast algorithms; they are
//! the ground truth in tests and the baseline in the benchmark.

use crate::error::{Error, Result};
use crate::fields::FieldElement;
use crate::pfd_linear::{PartialFractionExpansion, PfdTerm};
use crate::pfd_quotient::FactoredDenominator;
use crate::polynomial::{Degree, Polynomial};

/// A square exact linear system solved by Gaussian elimination with
/// first-nonzero pivoting.
#[derive(Clone, Debug)]
pub struct DenseLinearSystem {
    pub matrix: Vec<Vec<FieldElement>>,
    pub rhs: Vec<FieldElement>,
}

impl DenseLinearSystem {
    pub fn solve(mut self) -> Result<Vec<FieldElement>> {
        let m = self.rhs.len();
        assert!(self.matrix.len() == m, "system must be square");
        for col in 0..m {
            let pivot = (col..m)
                .find(|&r| !self.matrix[r][col].is_zero())
                .ok_or(Error::SingularSystem)?;
            self.matrix.swap(col, pivot);
            self.rhs.swap(col, pivot);
            let inv = self.matrix[col][col].inv()?;
            for r in (col + 1)..m {
                if self.matrix[r][col].is_zero() {
                    continue;
                }
                let factor = self.matrix[r][col].mul(&inv);
                let (above, below) = self.matrix.split_at_mut(r);
                let pivot_row = &above[col];
                let row = &mut below[0];
                for c in col..m {
                    row[c] = row[c].sub(&factor.mul(&pivot_row[c]));
                }
                self.rhs[r] = self.rhs[r].sub(&factor.mul(&self.rhs[col]));
            }
        }
        let field = self.rhs[0].field().clone();
        let mut x = vec![field.zero(); m];
        for col in (0..m).rev() {
            let mut acc = self.rhs[col].clone();
            for c in (col + 1)..m {
                if !self.matrix[col][c].is_zero() {
                    acc = acc.sub(&self.matrix[col][c].mul(&x[c]));
                }
            }
            x[col] = acc.mul(&self.matrix[col][col].inv()?);
        }
        Ok(x)
    }
}

/// Classical partial fraction decomposition: equate coefficients of
/// N = unit * sum A_{i,j} * D/(unit * p_i^j) and solve for the unknown
/// numerator coefficients. Requires a proper input.
pub fn classical_pfd(
    n: &Polynomial,
    den: &FactoredDenominator,
) -> Result<PartialFractionExpansion> {
    if n.field() != den.field() {
        return Err(Error::FieldMismatch);
    }
    let field = den.field().clone();
    if n.is_zero() {
        return Ok(PartialFractionExpansion::zero(&field));
    }
    let m = den.degree();
    if n.degree() >= Degree::Finite(m) {
        return Err(Error::ImproperFraction(
            "classical_pfd requires deg N < deg D".to_string(),
        ));
    }
    let monic = den.monic_polynomial();
    let scaled_n = n.scale(&den.unit().inv()?);
    // Unknown order: factor index, then power descending, then coefficient
    // index — deterministic matrices.
    let mut columns: Vec<Vec<FieldElement>> = Vec::with_capacity(m);
    let mut layout: Vec<(usize, usize, usize)> = Vec::with_capacity(m);
    for (i, (p, a)) in den.factors().iter().enumerate() {
        let pdeg = p.degree().as_usize().expect("nonconstant factor");
        let mut cofactor = monic.div_exact(&den.factor_power(i)?)?;
        for j in (1..=*a).rev() {
            for c in 0..pdeg {
                let mut col = vec![field.zero(); m];
                for (k, coeff) in cofactor.coeffs().iter().enumerate() {
                    if k + c < m {
                        col[k + c] = coeff.clone();
                    }
                }
                columns.push(col);
                layout.push((i, j, c));
            }
            if j > 1 {
                cofactor = cofactor.mul_auto(p);
            }
        }
    }
    let matrix: Vec<Vec<FieldElement>> = (0..m)
        .map(|r| (0..m).map(|c| columns[c][r].clone()).collect())
        .collect();
    let rhs: Vec<FieldElement> = (0..m).map(|k| scaled_n.coeff(k)).collect();
    let solution = DenseLinearSystem { matrix, rhs }.solve()?;
    let mut terms: Vec<PfdTerm> = Vec::new();
    for (i, (p, a)) in den.factors().iter().enumerate() {
        let pdeg = p.degree().as_usize().expect("nonconstant factor");
        for j in (1..=*a).rev() {
            let coeffs: Vec<FieldElement> = (0..pdeg)
                .map(|c| {
                    let idx = layout
                        .iter()
                        .position(|&(fi, fj, fc)| fi == i && fj == j && fc == c)
                        .expect("layout covers all unknowns");
                    solution[idx].clone()
                })
                .collect();
            let numerator = Polynomial::from_coeffs(field.clone(), coeffs);
            if !numerator.is_zero() {
                terms.push(PfdTerm { factor: p.clone(), power: j, numerator });
            }
        }
    }
    Ok(PartialFractionExpansion { poly_part: Polynomial::zero(&field), terms })
}

/// Sums an expansion back over the common denominator: returns the
/// unreduced pair (poly_part * D + sum numerator * D/factor^power, D).
pub fn recombine(
    e: &PartialFractionExpansion,
    den: &FactoredDenominator,
) -> Result<(Polynomial, Polynomial)> {
    let d = den.expanded();
    let mut acc = e.poly_part.mul_auto(&d);
    for term in &e.terms {
        let cof = d.div_exact(&term.factor.pow(term.power))?;
        acc = acc.add(&term.numerator.mul_auto(&cof));
    }
    Ok((acc, d))
}

/// Exact check that an expansion reproduces N/denominator.
pub fn expansion_matches(
    n: &Polynomial,
    den: &FactoredDenominator,
    e: &PartialFractionExpansion,
) -> Result<bool> {
    let (num, _) = recombine(e, den)?;
    Ok(&num == n)
}

/// Floating-point evaluation oracles over the complex numbers, used to
/// sample-check symbolic results with rational coefficients.
pub mod numeric {
    use num_complex::Complex64;

    use crate::fields::FieldElement;
    use crate::polynomial::Polynomial;

    /// Coefficients as complex floats; None unless the field is Q.
    pub fn poly_complex(p: &Polynomial) -> Option<Vec<Complex64>> {
        p.coeffs()
            .iter()
            .map(|c| c.to_f64().map(|x| Complex64::new(x, 0.0)))
            .collect()
    }

    pub fn eval(coeffs: &[Complex64], z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// An extension element (or plain rational) evaluated with the
    /// generator replaced by the floating root `alpha`.
    pub fn element_at_root(e: &FieldElement, alpha: Complex64) -> Option<Complex64> {
        if let Some(x) = e.to_f64() {
            return Some(Complex64::new(x, 0.0));
        }
        let coeffs = e.ext_coeffs()?;
        let mut acc = Complex64::new(0.0, 0.0);
        for c in coeffs.iter().rev() {
            acc = acc * alpha + Complex64::new(c.to_f64()?, 0.0);
        }
        Some(acc)
    }

    /// All complex roots by Durand-Kerner iteration; None unless the field
    /// is Q or the polynomial is constant.
    pub fn roots(p: &Polynomial) -> Option<Vec<Complex64>> {
        let coeffs = poly_complex(p)?;
        if coeffs.len() < 2 {
            return None;
        }
        let lead = coeffs[coeffs.len() - 1];
        let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
        let n = monic.len() - 1;
        let seed = Complex64::new(0.4, 0.9);
        let mut xs: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32 + 1)).collect();
        for _ in 0..500 {
            let mut moved = 0.0f64;
            for i in 0..n {
                let mut denom = Complex64::new(1.0, 0.0);
                for j in 0..n {
                    if j != i {
                        denom *= xs[i] - xs[j];
                    }
                }
                let delta = eval(&monic, xs[i]) / denom;
                xs[i] -= delta;
                moved = moved.max(delta.norm() / (1.0 + xs[i].norm()));
            }
            if moved < 1e-14 {
                break;
            }
        }
        Some(xs)
    }
}
