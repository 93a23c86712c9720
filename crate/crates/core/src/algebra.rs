//! Exact polynomial arithmetic: univariate and bivariate polynomials with
//! arbitrary-precision coefficients, Lagrange interpolation, and the
//! transforms between the coboundary, Tutte and characteristic polynomials.
//!
//! Coefficients are `BigInt` once final; rationals appear only inside
//! interpolation and series work. There is no floating point.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    /// The sampled data is not the expected polynomial. In the finite-field
    /// pipeline this is a correctness alarm, never a soft failure.
    #[error("interpolated degree {got} exceeds the expected maximum {max}")]
    DegreeOverflow { max: usize, got: usize },
    /// An exact division left a remainder; the rank or the input is wrong.
    #[error("inexact division: {0}")]
    InexactDivision(String),
    /// Region counting produced something that is not a nonnegative integer,
    /// so the input is not a valid arrangement characteristic polynomial.
    #[error("region count is not a nonnegative integer: {0}")]
    NegativeCount(String),
}

/// Univariate polynomial with exact rational coefficients.
///
/// `coeffs[k]` is the coefficient of the k-th power; trailing zeros are
/// trimmed so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

pub fn rat_int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    /// `c · x^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        UniPoly::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_i64(&self, x: i64) -> BigRational {
        self.eval(&rat_int(x))
    }

    pub fn scale(&self, c: &BigRational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `x^k`.
    pub fn mul_var_pow(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    pub fn pow(&self, e: usize) -> UniPoly {
        let mut acc = UniPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn to_integer_coeffs(&self) -> Option<Vec<BigInt>> {
        if !self.is_integral() {
            return None;
        }
        Some(self.coeffs.iter().map(|c| c.to_integer()).collect())
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::new(coeffs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Sparse bivariate polynomial with integer coefficients.
///
/// Keys are exponent pairs in the two formal variables (conventionally
/// `(q,t)` for coboundary polynomials and `(x,y)` for Tutte polynomials);
/// zero coefficients are never stored, and `BTreeMap` keeps the term order
/// canonical.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::term(BigInt::one(), 0, 0)
    }

    pub fn term(c: BigInt, a: u32, b: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        BiPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: u32, b: u32) -> BigInt {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, a: u32, b: u32, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((a, b)).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn deg_first(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, _)| a).max()
    }

    pub fn deg_second(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, b)| b).max()
    }

    pub fn pow(&self, e: usize) -> BiPoly {
        let mut acc = BiPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute an integer for the first variable; the result is a
    /// polynomial in the second variable.
    pub fn eval_first(&self, v: &BigInt) -> UniPoly {
        let deg = self.deg_second().map_or(0, |d| d as usize);
        let mut coeffs = vec![BigRational::zero(); deg + 1];
        for (&(a, b), c) in &self.terms {
            coeffs[b as usize] += BigRational::from_integer(c * v.pow(a));
        }
        UniPoly::new(coeffs)
    }

    /// Substitute an integer for the second variable.
    pub fn eval_second(&self, v: &BigInt) -> UniPoly {
        let deg = self.deg_first().map_or(0, |d| d as usize);
        let mut coeffs = vec![BigRational::zero(); deg + 1];
        for (&(a, b), c) in &self.terms {
            coeffs[a as usize] += BigRational::from_integer(c * v.pow(b));
        }
        UniPoly::new(coeffs)
    }

    pub fn eval(&self, first: &BigInt, second: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for (&(a, b), c) in &self.terms {
            acc += c * first.pow(a) * second.pow(b);
        }
        acc
    }

    /// Group terms by the exponent of the second variable: entry `b` maps
    /// first-variable exponents to coefficients.
    fn by_second(&self) -> BTreeMap<u32, BTreeMap<u32, BigInt>> {
        let mut out: BTreeMap<u32, BTreeMap<u32, BigInt>> = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            out.entry(b).or_default().insert(a, c.clone());
        }
        out
    }

    /// Exact division by `(second − 1)`, by synthetic division with a
    /// zero-remainder assertion.
    fn div_second_minus_one(&self) -> Result<BiPoly, AlgebraError> {
        if self.is_zero() {
            return Ok(BiPoly::zero());
        }
        let slices = self.by_second();
        let deg = *slices.keys().last().unwrap();
        let mut quotient = BiPoly::zero();
        // carry = running quotient coefficient, a polynomial in the first var
        let mut carry: BTreeMap<u32, BigInt> = BTreeMap::new();
        for b in (0..=deg).rev() {
            let mut slice = slices.get(&b).cloned().unwrap_or_default();
            for (a, c) in &carry {
                let e = slice.entry(*a).or_insert_with(BigInt::zero);
                *e += c;
                if e.is_zero() {
                    slice.remove(a);
                }
            }
            if b == 0 {
                if !slice.is_empty() {
                    return Err(AlgebraError::InexactDivision(
                        "nonzero remainder dividing by (y - 1)".into(),
                    ));
                }
            } else {
                for (a, c) in &slice {
                    quotient.add_term(*a, b - 1, c);
                }
                carry = slice;
            }
        }
        Ok(quotient)
    }

    /// Exact division by the k-th power of the first variable.
    pub fn div_first_pow(&self, k: u32) -> Result<BiPoly, AlgebraError> {
        let mut out = BiPoly::zero();
        for (&(a, b), c) in &self.terms {
            if a < k {
                return Err(AlgebraError::InexactDivision(format!(
                    "term with first-variable exponent {a} not divisible by power {k}"
                )));
            }
            out.add_term(a - k, b, c);
        }
        Ok(out)
    }

    /// Multiply by `second^k`.
    pub fn mul_second_pow(&self, k: u32) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(a, b), c) in &self.terms {
            out.add_term(a, b + k, c);
        }
        out
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_term(a, b, c);
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_term(a, b, &-c);
        }
        out
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term(a1 + a2, b1 + b2, &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect() }
    }
}

/// The unique polynomial of degree < |points| through the given points,
/// with a degree cap: exceeding `max_degree` means the sampled data is not
/// the polynomial the caller expected.
///
/// Abscissas must be pairwise distinct and `|points| ≥ max_degree + 1`.
pub fn interpolate(
    points: &[(BigRational, BigRational)],
    max_degree: usize,
) -> Result<UniPoly, AlgebraError> {
    assert!(points.len() >= max_degree + 1, "need at least max_degree + 1 sample points");
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            assert_ne!(points[i].0, points[j].0, "abscissas must be pairwise distinct");
        }
    }
    // Newton's divided differences, expanded to the monomial basis.
    let k = points.len();
    let mut dd: Vec<BigRational> = points.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..k {
        for i in (level..k).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &points[i].0 - &points[i - level].0;
            dd[i] = num / den;
        }
    }
    let mut poly = UniPoly::zero();
    let mut basis = UniPoly::one();
    for (i, coeff) in dd.iter().enumerate() {
        poly = &poly + &basis.scale(coeff);
        let factor = UniPoly::new(vec![-&points[i].0, BigRational::one()]);
        basis = &basis * &factor;
    }
    if let Some(d) = poly.degree() {
        if d > max_degree {
            return Err(AlgebraError::DegreeOverflow { max: max_degree, got: d });
        }
    }
    Ok(poly)
}

/// `T(x,y) = χ̄((x−1)(y−1), y) / (y−1)^r`, expanded exactly.
///
/// The division must be exact and the result must have integer
/// coefficients; anything else signals a wrong rank or a corrupted input.
pub fn tutte_from_coboundary(chibar: &BiPoly, r: usize) -> Result<BiPoly, AlgebraError> {
    // (x−1)(y−1) = xy − x − y + 1
    let mut base = BiPoly::term(BigInt::one(), 1, 1);
    base.add_term(1, 0, &BigInt::from(-1));
    base.add_term(0, 1, &BigInt::from(-1));
    base.add_term(0, 0, &BigInt::one());

    let deg_q = chibar.deg_first().map_or(0, |d| d as usize);
    let mut base_pows = Vec::with_capacity(deg_q + 1);
    base_pows.push(BiPoly::one());
    for a in 1..=deg_q {
        base_pows.push(&base_pows[a - 1] * &base);
    }

    let mut substituted = BiPoly::zero();
    for (&(a, b), c) in chibar.terms() {
        let piece = base_pows[a as usize].mul_second_pow(b);
        for (&(x, y), cc) in piece.terms() {
            substituted.add_term(x, y, &(cc * c));
        }
    }
    let mut out = substituted;
    for _ in 0..r {
        out = out.div_second_minus_one()?;
    }
    Ok(out)
}

/// `χ̄(q,t) = (t−1)^r · T((q+t−1)/(t−1), t)`, expanded exactly.
///
/// This is the inverse of [`tutte_from_coboundary`]; it is polynomial
/// because the Tutte polynomial of a rank-r arrangement has x-degree ≤ r.
pub fn coboundary_from_tutte(tutte: &BiPoly, r: usize) -> Result<BiPoly, AlgebraError> {
    if let Some(d) = tutte.deg_first() {
        if d as usize > r {
            return Err(AlgebraError::InexactDivision(format!(
                "x-degree {d} exceeds the stated rank {r}"
            )));
        }
    }
    // q + t − 1 and t − 1, both in the output variables (q,t)
    let mut qt1 = BiPoly::term(BigInt::one(), 1, 0);
    qt1.add_term(0, 1, &BigInt::one());
    qt1.add_term(0, 0, &BigInt::from(-1));
    let mut t1 = BiPoly::term(BigInt::one(), 0, 1);
    t1.add_term(0, 0, &BigInt::from(-1));

    let mut qt1_pows = vec![BiPoly::one()];
    let mut t1_pows = vec![BiPoly::one()];
    for i in 1..=r {
        qt1_pows.push(&qt1_pows[i - 1] * &qt1);
        t1_pows.push(&t1_pows[i - 1] * &t1);
    }

    let mut out = BiPoly::zero();
    for (&(a, b), c) in tutte.terms() {
        // (q+t−1)^a (t−1)^{r−a} t^b
        let piece = (&qt1_pows[a as usize] * &t1_pows[r - a as usize]).mul_second_pow(b);
        for (&(x, y), cc) in piece.terms() {
            out.add_term(x, y, &(cc * c));
        }
    }
    Ok(out)
}

/// `χ(q) = q^{n−r} · χ̄(q, 0)`.
pub fn characteristic_from_coboundary(chibar: &BiPoly, n: usize, r: usize) -> UniPoly {
    assert!(r <= n, "rank cannot exceed the ambient dimension");
    chibar.eval_second(&BigInt::zero()).mul_var_pow(n - r)
}

/// Zaslavsky's region counts from the characteristic polynomial of a real
/// arrangement of ambient dimension `n` and rank `r`.
///
/// `regions = (−1)^n χ(−1)`. Relatively bounded regions are counted on the
/// essentialization: `bounded = (−1)^r (χ(q)/q^{n−r})|_{q=1}`, which agrees
/// with `(−1)^n χ(1)` whenever `n = r` and stays nonnegative when it does
/// not.
pub fn region_counts(
    chi: &UniPoly,
    n: usize,
    r: usize,
) -> Result<(BigUint, BigUint), AlgebraError> {
    assert!(r <= n, "rank cannot exceed the ambient dimension");
    let sign = |k: usize| if k % 2 == 0 { BigInt::one() } else { BigInt::from(-1) };

    let to_count = |v: BigRational, what: &str| -> Result<BigUint, AlgebraError> {
        if !v.is_integer() {
            return Err(AlgebraError::NegativeCount(format!("{what} = {v} is not an integer")));
        }
        let i = v.to_integer();
        if i.is_negative() {
            return Err(AlgebraError::NegativeCount(format!("{what} = {i} is negative")));
        }
        Ok(i.to_biguint().unwrap())
    };

    let regions_val = chi.eval_i64(-1) * BigRational::from_integer(sign(n));
    let regions = to_count(regions_val, "region count")?;

    // Essentialize: χ must be divisible by q^{n−r}.
    for k in 0..(n - r) {
        if !chi.coeff(k).is_zero() {
            return Err(AlgebraError::NegativeCount(format!(
                "characteristic polynomial is not divisible by q^{}",
                n - r
            )));
        }
    }
    let chi_ess = UniPoly::new(chi.coeffs()[(n - r).min(chi.coeffs().len())..].to_vec());
    let bounded_val = chi_ess.eval_i64(1) * BigRational::from_integer(sign(r));
    let bounded = to_count(bounded_val, "bounded region count")?;
    Ok((regions, bounded))
}

/// JSON encoding of a univariate polynomial:
/// `{"vars":["q"],"terms":[{"exp":[k],"coeff":"<decimal string>"}]}`.
/// Coefficients are decimal strings so consumers never overflow; non-integer
/// coefficients render as `"num/den"`.
pub fn unipoly_to_json(p: &UniPoly, var: &str) -> serde_json::Value {
    let terms: Vec<serde_json::Value> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| serde_json::json!({ "exp": [k], "coeff": rational_string(c) }))
        .collect();
    serde_json::json!({ "vars": [var], "terms": terms })
}

/// JSON encoding of a bivariate polynomial, same shape with 2-entry
/// exponent vectors, terms in canonical sorted order.
pub fn bipoly_to_json(p: &BiPoly, vars: [&str; 2]) -> serde_json::Value {
    let terms: Vec<serde_json::Value> = p
        .terms()
        .map(|(&(a, b), c)| serde_json::json!({ "exp": [a, b], "coeff": c.to_string() }))
        .collect();
    serde_json::json!({ "vars": [vars[0], vars[1]], "terms": terms })
}

fn rational_string(c: &BigRational) -> String {
    if c.is_integer() {
        c.to_integer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}
