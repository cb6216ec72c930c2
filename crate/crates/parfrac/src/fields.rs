//! Exact coefficient arithmetic: arbitrary-precision rationals, prime fields
//! F_p, and simple algebraic extensions K(a) = K[x]/<p(x)>, behind one
//! element type.
//!
//! Descriptors and elements are immutable after construction and all
//! operations are pure, so values can be shared freely across threads.
//! Multiplicative operations (`mul`, `div`, `inv`) bump a per-thread counter
//! readable through [`mul_count`]; additions are not counted, matching the
//! unit-cost model used by the benchmark harness.

use std::cell::Cell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::polynomial::Polynomial;

thread_local! {
    static FIELD_MUL_COUNT: Cell<u64> = const { Cell::new(0) };
}

/// Multiplicative field operations performed by this thread since the last
/// [`reset_mul_count`]. Extension-field operations count their base-field
/// multiplications.
pub fn mul_count() -> u64 {
    FIELD_MUL_COUNT.with(|c| c.get())
}

pub fn reset_mul_count() {
    FIELD_MUL_COUNT.with(|c| c.set(0));
}

#[inline]
fn bump_mul() {
    FIELD_MUL_COUNT.with(|c| c.set(c.get() + 1));
}

#[derive(Debug)]
enum Inner {
    Rationals,
    Prime { modulus: u64 },
    Extension {
        base: FieldDescriptor,
        minimal: Polynomial,
        generator: String,
    },
}

/// Selects the coefficient arithmetic: Q, F_p, or a simple extension of one
/// of those by a monic polynomial of degree >= 2.
#[derive(Clone, Debug)]
pub struct FieldDescriptor {
    inner: Arc<Inner>,
}

impl PartialEq for FieldDescriptor {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.inner, &other.inner) {
            return true;
        }
        match (&*self.inner, &*other.inner) {
            (Inner::Rationals, Inner::Rationals) => true,
            (Inner::Prime { modulus: a }, Inner::Prime { modulus: b }) => a == b,
            (
                Inner::Extension { base: b1, minimal: m1, generator: g1 },
                Inner::Extension { base: b2, minimal: m2, generator: g2 },
            ) => b1 == b2 && g1 == g2 && m1 == m2,
            _ => false,
        }
    }
}

impl Eq for FieldDescriptor {}

impl FieldDescriptor {
    /// The field of arbitrary-precision rational numbers.
    pub fn rationals() -> Self {
        FieldDescriptor { inner: Arc::new(Inner::Rationals) }
    }

    /// The prime field F_p. The modulus is checked with a Miller-Rabin
    /// primality test (deterministic for 64-bit inputs).
    pub fn prime_field(modulus: u64) -> Result<Self> {
        if !is_prime_u64(modulus) {
            return Err(Error::NotPrime(modulus));
        }
        Ok(FieldDescriptor { inner: Arc::new(Inner::Prime { modulus }) })
    }

    /// The simple extension base[x]/<minimal(x)> with the residue of x
    /// printed as `generator`.
    ///
    /// `minimal` must be monic of degree >= 2 over `base` and squarefree
    /// (checked via gcd with the derivative). Irreducibility is the caller's
    /// responsibility; a reducible modulus surfaces later as a
    /// [`Error::ReducibleModulus`] when some element has no inverse.
    pub fn extension(base: FieldDescriptor, minimal: Polynomial, generator: &str) -> Result<Self> {
        if base.is_extension() {
            return Err(Error::NestedExtension);
        }
        if minimal.field() != &base {
            return Err(Error::FieldMismatch);
        }
        match minimal.degree().as_usize() {
            Some(d) if d >= 2 => {}
            _ => {
                return Err(Error::InvalidMinimalPoly(
                    "degree must be at least 2".to_string(),
                ))
            }
        }
        if !minimal.is_monic() {
            return Err(Error::InvalidMinimalPoly("must be monic".to_string()));
        }
        let g = Polynomial::gcd(&minimal, &minimal.derivative())?;
        if g.degree().as_usize() != Some(0) {
            return Err(Error::NotSquarefree);
        }
        Ok(FieldDescriptor {
            inner: Arc::new(Inner::Extension { base, minimal, generator: generator.to_string() }),
        })
    }

    pub fn is_rationals(&self) -> bool {
        matches!(&*self.inner, Inner::Rationals)
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(&*self.inner, Inner::Prime { .. })
    }

    pub fn is_extension(&self) -> bool {
        matches!(&*self.inner, Inner::Extension { .. })
    }

    pub fn modulus(&self) -> Option<u64> {
        match &*self.inner {
            Inner::Prime { modulus } => Some(*modulus),
            _ => None,
        }
    }

    pub fn base(&self) -> Option<&FieldDescriptor> {
        match &*self.inner {
            Inner::Extension { base, .. } => Some(base),
            _ => None,
        }
    }

    pub fn minimal_poly(&self) -> Option<&Polynomial> {
        match &*self.inner {
            Inner::Extension { minimal, .. } => Some(minimal),
            _ => None,
        }
    }

    pub fn generator_name(&self) -> Option<&str> {
        match &*self.inner {
            Inner::Extension { generator, .. } => Some(generator),
            _ => None,
        }
    }

    /// The residue of x in an extension field, i.e. the symbolic root of the
    /// minimal polynomial.
    pub fn generator_element(&self) -> Option<FieldElement> {
        match &*self.inner {
            Inner::Extension { base, .. } => Some(FieldElement {
                field: self.clone(),
                repr: Repr::Ext(vec![base.zero(), base.one()]),
            }),
            _ => None,
        }
    }

    pub fn zero(&self) -> FieldElement {
        let repr = match &*self.inner {
            Inner::Rationals => Repr::Rational(BigRational::zero()),
            Inner::Prime { .. } => Repr::Prime(0),
            Inner::Extension { .. } => Repr::Ext(Vec::new()),
        };
        FieldElement { field: self.clone(), repr }
    }

    pub fn one(&self) -> FieldElement {
        self.integer(1)
    }

    /// Embeds a machine integer.
    pub fn integer(&self, n: i64) -> FieldElement {
        let repr = match &*self.inner {
            Inner::Rationals => Repr::Rational(BigRational::from_integer(BigInt::from(n))),
            Inner::Prime { modulus } => {
                Repr::Prime((n as i128).rem_euclid(*modulus as i128) as u64)
            }
            Inner::Extension { base, .. } => {
                let c = base.integer(n);
                if c.is_zero() {
                    Repr::Ext(Vec::new())
                } else {
                    Repr::Ext(vec![c])
                }
            }
        };
        FieldElement { field: self.clone(), repr }
    }

    /// Embeds the exact ratio `num/den`.
    pub fn ratio(&self, num: i64, den: i64) -> Result<FieldElement> {
        self.integer(num).div(&self.integer(den))
    }

    /// Embeds a (possibly signed) decimal integer literal of any length.
    pub fn integer_from_decimal(&self, digits: &str) -> Result<FieldElement> {
        let n: BigInt = digits
            .parse()
            .map_err(|_| Error::Parse { pos: 0, msg: format!("invalid integer `{digits}`") })?;
        Ok(self.integer_big(&n))
    }

    pub fn integer_big(&self, n: &BigInt) -> FieldElement {
        let repr = match &*self.inner {
            Inner::Rationals => Repr::Rational(BigRational::from_integer(n.clone())),
            Inner::Prime { modulus } => {
                let m = BigInt::from(*modulus);
                let r = n.mod_floor(&m);
                Repr::Prime(r.to_u64().expect("residue fits in u64"))
            }
            Inner::Extension { base, .. } => {
                let c = base.integer_big(n);
                if c.is_zero() {
                    Repr::Ext(Vec::new())
                } else {
                    Repr::Ext(vec![c])
                }
            }
        };
        FieldElement { field: self.clone(), repr }
    }

    /// Short descriptor string: "rational", "fp:65537", or
    /// "rational(a)/<...>" for extensions.
    pub fn describe(&self) -> String {
        match &*self.inner {
            Inner::Rationals => "rational".to_string(),
            Inner::Prime { modulus } => format!("fp:{modulus}"),
            Inner::Extension { base, minimal, generator } => {
                format!("{}({})/<{}>", base.describe(), generator, minimal)
            }
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    Rational(BigRational),
    /// Least nonnegative residue.
    Prime(u64),
    /// Coefficients over the base field, ascending powers of the generator,
    /// reduced modulo the minimal polynomial, trailing zeros trimmed.
    Ext(Vec<FieldElement>),
}

/// An element of the field selected by its descriptor.
///
/// Rationals are kept in lowest terms with a positive denominator, prime
/// field elements as least nonnegative residues, extension elements reduced
/// modulo the minimal polynomial, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    field: FieldDescriptor,
    repr: Repr,
}

impl FieldElement {
    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rational(r) => r.is_zero(),
            Repr::Prime(r) => *r == 0,
            Repr::Ext(c) => c.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Rational(r) => r.is_one(),
            Repr::Prime(r) => *r == 1,
            Repr::Ext(c) => c.len() == 1 && c[0].is_one(),
        }
    }

    fn check_same_field(&self, other: &Self, op: &str) {
        assert!(
            self.field == other.field,
            "field mismatch in `{op}`: {} vs {}",
            self.field.describe(),
            other.field.describe()
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same_field(other, "add");
        let repr = match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Repr::Rational(a + b),
            (Repr::Prime(a), Repr::Prime(b)) => {
                let p = self.field.modulus().unwrap() as u128;
                Repr::Prime(((*a as u128 + *b as u128) % p) as u64)
            }
            (Repr::Ext(a), Repr::Ext(b)) => Repr::Ext(ext_add(a, b)),
            _ => unreachable!("repr matches descriptor"),
        };
        FieldElement { field: self.field.clone(), repr }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let repr = match &self.repr {
            Repr::Rational(a) => Repr::Rational(-a),
            Repr::Prime(a) => {
                let p = self.field.modulus().unwrap();
                Repr::Prime(if *a == 0 { 0 } else { p - *a })
            }
            Repr::Ext(a) => Repr::Ext(a.iter().map(|c| c.neg()).collect()),
        };
        FieldElement { field: self.field.clone(), repr }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_same_field(other, "mul");
        let repr = match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => {
                bump_mul();
                Repr::Rational(a * b)
            }
            (Repr::Prime(a), Repr::Prime(b)) => {
                bump_mul();
                let p = self.field.modulus().unwrap() as u128;
                Repr::Prime((*a as u128 * *b as u128 % p) as u64)
            }
            (Repr::Ext(a), Repr::Ext(b)) => Repr::Ext(self.ext_mul(a, b)),
            _ => unreachable!("repr matches descriptor"),
        };
        FieldElement { field: self.field.clone(), repr }
    }

    /// Multiplicative inverse. Errors on zero; in an extension, a
    /// representative sharing a factor with the minimal polynomial reports
    /// the modulus as reducible.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let repr = match &self.repr {
            Repr::Rational(a) => {
                bump_mul();
                Repr::Rational(a.recip())
            }
            Repr::Prime(a) => {
                bump_mul();
                let p = self.field.modulus().unwrap();
                Repr::Prime(inv_mod_u64(*a, p).ok_or(Error::DivisionByZero)?)
            }
            Repr::Ext(a) => Repr::Ext(self.ext_inv(a)?),
        };
        Ok(FieldElement { field: self.field.clone(), repr })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other, "div");
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn ext_minimal(&self) -> &Polynomial {
        self.field.minimal_poly().expect("extension element")
    }

    fn ext_base(&self) -> &FieldDescriptor {
        self.field.base().expect("extension element")
    }

    fn ext_mul(&self, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let base = self.ext_base();
        let pa = Polynomial::from_coeffs(base.clone(), a.to_vec());
        let pb = Polynomial::from_coeffs(base.clone(), b.to_vec());
        let prod = pa.mul_auto(&pb);
        let (_, rem) = prod.divrem(self.ext_minimal()).expect("minimal poly nonzero");
        rem.into_coeffs()
    }

    fn ext_inv(&self, a: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let base = self.ext_base();
        let pa = Polynomial::from_coeffs(base.clone(), a.to_vec());
        let (g, u, _) = Polynomial::xgcd(&pa, self.ext_minimal())?;
        if g.degree().as_usize() != Some(0) {
            return Err(Error::ReducibleModulus(format!(
                "gcd({}, {}) = {}",
                pa,
                self.ext_minimal(),
                g
            )));
        }
        let (_, rem) = u.divrem(self.ext_minimal()).expect("minimal poly nonzero");
        Ok(rem.into_coeffs())
    }

    /// Coefficients over the base field for extension elements.
    pub fn ext_coeffs(&self) -> Option<&[FieldElement]> {
        match &self.repr {
            Repr::Ext(c) => Some(c),
            _ => None,
        }
    }

    /// Embeds a base-field element as a constant of the extension `ext`.
    pub fn lift_to(&self, ext: &FieldDescriptor) -> Result<FieldElement> {
        match ext.base() {
            Some(base) if base == &self.field => Ok(FieldElement {
                field: ext.clone(),
                repr: if self.is_zero() {
                    Repr::Ext(Vec::new())
                } else {
                    Repr::Ext(vec![self.clone()])
                },
            }),
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn to_f64(&self) -> Option<f64> {
        match &self.repr {
            Repr::Rational(r) => r.to_f64(),
            _ => None,
        }
    }

    /// Exposes rationals as a (numerator, denominator) pair.
    pub fn as_ratio(&self) -> Option<(&BigInt, &BigInt)> {
        match &self.repr {
            Repr::Rational(r) => Some((r.numer(), r.denom())),
            _ => None,
        }
    }

    pub fn as_residue(&self) -> Option<u64> {
        match &self.repr {
            Repr::Prime(r) => Some(*r),
            _ => None,
        }
    }

    /// An arbitrary but consistent total order within one field, used to
    /// canonicalize term lists. Panics on mixed fields.
    pub fn total_cmp(&self, other: &Self) -> Ordering {
        self.check_same_field(other, "total_cmp");
        match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => a.cmp(b),
            (Repr::Prime(a), Repr::Prime(b)) => a.cmp(b),
            (Repr::Ext(a), Repr::Ext(b)) => {
                a.len().cmp(&b.len()).then_with(|| {
                    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
                        let c = x.total_cmp(y);
                        if c != Ordering::Equal {
                            return c;
                        }
                    }
                    Ordering::Equal
                })
            }
            _ => unreachable!("repr matches descriptor"),
        }
    }
}

fn ext_add(a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let c = match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x.add(y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        };
        out.push(c);
    }
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Repr::Prime(r) => write!(f, "{r}"),
            Repr::Ext(_) => f.write_str(&self.ext_display()),
        }
    }
}

impl FieldElement {
    /// Renders an extension element as a polynomial in the generator, with
    /// rational coefficients put over a common denominator, e.g.
    /// "(-7-11*a)/225".
    fn ext_display(&self) -> String {
        let coeffs = match &self.repr {
            Repr::Ext(c) => c,
            _ => unreachable!(),
        };
        if coeffs.is_empty() {
            return "0".to_string();
        }
        let gen = self.field.generator_name().unwrap();
        // Common denominator over Q; 1 for prime-field bases.
        let mut denom = BigInt::one();
        for c in coeffs {
            if let Some((_, d)) = c.as_ratio() {
                denom = denom.lcm(d);
            }
        }
        let mut terms: Vec<String> = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let scaled: String = if let Some((n, d)) = c.as_ratio() {
                (n * (&denom / d)).to_string()
            } else {
                c.to_string()
            };
            let (sign, mag) = match scaled.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", scaled),
            };
            let body = match (k, mag.as_str()) {
                (0, _) => mag.clone(),
                (1, "1") => gen.to_string(),
                (1, _) => format!("{mag}*{gen}"),
                (_, "1") => format!("{gen}^{k}"),
                (_, _) => format!("{mag}*{gen}^{k}"),
            };
            if terms.is_empty() {
                terms.push(if sign == "-" { format!("-{body}") } else { body });
            } else {
                terms.push(format!("{sign}{body}"));
            }
        }
        let body = terms.concat();
        if denom.is_one() {
            if terms.len() == 1 {
                body
            } else {
                format!("({body})")
            }
        } else {
            format!("({body})/{denom}")
        }
    }
}

macro_rules! element_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                FieldElement::$method(self, rhs)
            }
        }
    };
}

element_binop!(Add, add);
element_binop!(Sub, sub);
element_binop!(Mul, mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Miller-Rabin with a witness set that is deterministic for all u64.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn inv_mod_u64(a: u64, p: u64) -> Option<u64> {
    if a == 0 {
        return None;
    }
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(p as i128) as u64)
}
