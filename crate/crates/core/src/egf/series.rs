//! Truncated exponential-generating-function arithmetic.
//!
//! A [`TruncatedEgf`] holds the coefficients of `x^k/k!` up to a fixed
//! order; each coefficient is a polynomial in `t` with exact rational
//! coefficients. A [`BivariateSeries`] adds an ordinary second variable
//! `y`, exponential in `x` and ordinary in `y`.

use crate::algebra::UniPoly;
use crate::codes::pascal;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("series division needs a divisor whose constant term is a nonzero constant")]
    NonInvertibleDivisor,
    #[error("series orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
}

fn binomials(n: usize) -> Vec<Vec<BigRational>> {
    pascal(n)
        .into_iter()
        .map(|row| row.into_iter().map(BigRational::from_integer).collect())
        .collect()
}

/// `Σ_{k ≤ N} c_k(t) x^k/k!`, exact and truncated at order N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedEgf {
    order: usize,
    coeffs: Vec<UniPoly>,
}

impl TruncatedEgf {
    pub fn new(order: usize, mut coeffs: Vec<UniPoly>) -> Self {
        assert!(coeffs.len() <= order + 1, "more coefficients than the order allows");
        coeffs.resize(order + 1, UniPoly::zero());
        TruncatedEgf { order, coeffs }
    }

    /// Build from a coefficient rule `k ↦ c_k(t)`.
    pub fn from_fn(order: usize, f: impl Fn(usize) -> UniPoly) -> Self {
        TruncatedEgf { order, coeffs: (0..=order).map(f).collect() }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedEgf::new(order, Vec::new())
    }

    pub fn one(order: usize) -> Self {
        TruncatedEgf::new(order, vec![UniPoly::one()])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, k: usize) -> &UniPoly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[UniPoly] {
        &self.coeffs
    }

    pub fn add(&self, rhs: &TruncatedEgf) -> Result<TruncatedEgf, SeriesError> {
        self.check(rhs)?;
        Ok(TruncatedEgf {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    /// Product with the binomial convolution of EGF coefficients.
    pub fn mul(&self, rhs: &TruncatedEgf) -> Result<TruncatedEgf, SeriesError> {
        self.check(rhs)?;
        let binom = binomials(self.order);
        let coeffs = (0..=self.order)
            .map(|k| {
                let mut acc = UniPoly::zero();
                for j in 0..=k {
                    let term = &self.coeffs[j] * &rhs.coeffs[k - j];
                    acc = &acc + &term.scale(&binom[k][j]);
                }
                acc
            })
            .collect();
        Ok(TruncatedEgf { order: self.order, coeffs })
    }

    /// Exact division. The divisor's constant term must be a nonzero
    /// constant polynomial; every series this library divides by has
    /// constant term 1.
    pub fn div(&self, rhs: &TruncatedEgf) -> Result<TruncatedEgf, SeriesError> {
        self.check(rhs)?;
        let b0 = &rhs.coeffs[0];
        if b0.is_zero() || b0.degree() != Some(0) {
            return Err(SeriesError::NonInvertibleDivisor);
        }
        let inv = BigRational::one() / b0.coeff(0);
        let binom = binomials(self.order);
        let mut coeffs: Vec<UniPoly> = Vec::with_capacity(self.order + 1);
        for k in 0..=self.order {
            let mut acc = self.coeffs[k].clone();
            for j in 0..k {
                let term = &coeffs[j] * &rhs.coeffs[k - j];
                acc = &acc - &term.scale(&binom[k][j]);
            }
            coeffs.push(acc.scale(&inv));
        }
        Ok(TruncatedEgf { order: self.order, coeffs })
    }

    pub fn int_pow(&self, e: usize) -> Result<TruncatedEgf, SeriesError> {
        let mut acc = TruncatedEgf::one(self.order);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Evaluate at `x = 1`: `Σ c_k / k!`. Only meaningful when the tail
    /// beyond the truncation order is known to vanish.
    pub fn eval_x_one(&self) -> UniPoly {
        let mut factorial = BigRational::one();
        let mut acc = UniPoly::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                factorial *= BigRational::from_integer(BigInt::from(k));
            }
            acc = &acc + &c.scale(&(BigRational::one() / &factorial));
        }
        acc
    }

    fn check(&self, rhs: &TruncatedEgf) -> Result<(), SeriesError> {
        if self.order != rhs.order {
            return Err(SeriesError::OrderMismatch(self.order, rhs.order));
        }
        Ok(())
    }
}

/// A series exponential in `x` (to order N) and ordinary in `y` (to order
/// R): entry `[i][r]` is the coefficient of `x^i/i! · y^r`, a polynomial
/// in `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariateSeries {
    x_order: usize,
    y_order: usize,
    coeffs: Vec<Vec<UniPoly>>,
}

impl BivariateSeries {
    pub fn new(x_order: usize, y_order: usize, coeffs: Vec<Vec<UniPoly>>) -> Self {
        assert_eq!(coeffs.len(), x_order + 1);
        assert!(coeffs.iter().all(|row| row.len() == y_order + 1));
        BivariateSeries { x_order, y_order, coeffs }
    }

    pub fn zero(x_order: usize, y_order: usize) -> Self {
        BivariateSeries {
            x_order,
            y_order,
            coeffs: vec![vec![UniPoly::zero(); y_order + 1]; x_order + 1],
        }
    }

    pub fn one(x_order: usize, y_order: usize) -> Self {
        let mut s = BivariateSeries::zero(x_order, y_order);
        s.coeffs[0][0] = UniPoly::one();
        s
    }

    pub fn x_order(&self) -> usize {
        self.x_order
    }

    pub fn y_order(&self) -> usize {
        self.y_order
    }

    pub fn coeff(&self, i: usize, r: usize) -> &UniPoly {
        &self.coeffs[i][r]
    }

    pub fn set_coeff(&mut self, i: usize, r: usize, c: UniPoly) {
        self.coeffs[i][r] = c;
    }

    /// The coefficient of `y^r` as a truncated EGF in `x`.
    pub fn y_slice(&self, r: usize) -> TruncatedEgf {
        TruncatedEgf::new(self.x_order, self.coeffs.iter().map(|row| row[r].clone()).collect())
    }

    pub fn add(&self, rhs: &BivariateSeries) -> BivariateSeries {
        assert_eq!((self.x_order, self.y_order), (rhs.x_order, rhs.y_order));
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(ra, rb)| ra.iter().zip(rb).map(|(a, b)| a + b).collect())
            .collect();
        BivariateSeries { x_order: self.x_order, y_order: self.y_order, coeffs }
    }

    /// Product: binomial convolution in x, ordinary convolution in y.
    pub fn mul(&self, rhs: &BivariateSeries) -> BivariateSeries {
        assert_eq!((self.x_order, self.y_order), (rhs.x_order, rhs.y_order));
        let binom = binomials(self.x_order);
        let mut out = BivariateSeries::zero(self.x_order, self.y_order);
        for i in 0..=self.x_order {
            for r in 0..=self.y_order {
                let a = &self.coeffs[i][r];
                if a.is_zero() {
                    continue;
                }
                for j in 0..=self.x_order - i {
                    for s in 0..=self.y_order - r {
                        let b = &rhs.coeffs[j][s];
                        if b.is_zero() {
                            continue;
                        }
                        let term = (a * b).scale(&binom[i + j][i]);
                        out.coeffs[i + j][r + s] = &out.coeffs[i + j][r + s] + &term;
                    }
                }
            }
        }
        out
    }

    /// Multiply by `y`, truncating at the y-order.
    pub fn shift_y(&self) -> BivariateSeries {
        let mut out = BivariateSeries::zero(self.x_order, self.y_order);
        for i in 0..=self.x_order {
            for r in 0..self.y_order {
                out.coeffs[i][r + 1] = self.coeffs[i][r].clone();
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, rat_int};

    fn one_plus_x(order: usize) -> TruncatedEgf {
        TruncatedEgf::new(order, vec![UniPoly::one(), UniPoly::one()])
    }

    fn exp_series(order: usize) -> TruncatedEgf {
        TruncatedEgf::from_fn(order, |_| UniPoly::one())
    }

    #[test]
    fn square_of_one_plus_x() {
        // (1+x)² = 1 + 2x + 2·x²/2!
        let p = one_plus_x(2);
        let sq = p.mul(&p).unwrap();
        assert_eq!(sq.coeff(0), &UniPoly::one());
        assert_eq!(sq.coeff(1), &UniPoly::constant(rat_int(2)));
        assert_eq!(sq.coeff(2), &UniPoly::constant(rat_int(2)));
    }

    #[test]
    fn exp_divided_by_exp_is_one() {
        let e = exp_series(5);
        assert_eq!(e.div(&e).unwrap(), TruncatedEgf::one(5));
    }

    #[test]
    fn cube_of_one_plus_x() {
        // (1+x)³ = 1 + 3x + 3x² + x³ in the x^k/k! basis: 1, 3, 6, 6.
        let cube = one_plus_x(3).int_pow(3).unwrap();
        let expected: Vec<i64> = vec![1, 3, 6, 6];
        for (k, v) in expected.iter().enumerate() {
            assert_eq!(cube.coeff(k), &UniPoly::constant(rat_int(*v)));
        }
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = TruncatedEgf::from_fn(4, |k| UniPoly::from_i64_coeffs(&[k as i64 + 1, 1]));
        let b = TruncatedEgf::from_fn(4, |k| {
            if k == 0 {
                UniPoly::one()
            } else {
                UniPoly::from_i64_coeffs(&[2, 0, k as i64])
            }
        });
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod.div(&b).unwrap(), a);
    }

    #[test]
    fn division_requires_constant_leading_term() {
        let bad = TruncatedEgf::from_fn(2, |_| UniPoly::from_i64_coeffs(&[1, 1]));
        let one = TruncatedEgf::one(2);
        assert_eq!(one.div(&bad), Err(SeriesError::NonInvertibleDivisor));
    }

    #[test]
    fn bivariate_multiplication() {
        // (1 + xy)² = 1 + 2xy + x²y²: entry [2][2] is 2 in the x²/2! basis.
        let mut s = BivariateSeries::one(2, 2);
        s.set_coeff(1, 1, UniPoly::one());
        let sq = s.mul(&s);
        assert_eq!(sq.coeff(0, 0), &UniPoly::one());
        assert_eq!(sq.coeff(1, 1), &UniPoly::constant(rat_int(2)));
        assert_eq!(sq.coeff(2, 2), &UniPoly::constant(rat_int(2)));
        assert!(sq.coeff(1, 0).is_zero());
    }

    #[test]
    fn shift_y_truncates() {
        let mut s = BivariateSeries::one(1, 1);
        s.set_coeff(0, 1, UniPoly::one());
        let shifted = s.shift_y();
        assert!(shifted.coeff(0, 0).is_zero());
        assert_eq!(shifted.coeff(0, 1), &UniPoly::one());
    }

    #[test]
    fn eval_x_one_sums_with_factorials() {
        // 1 + x + x²/2! ↦ 1 + 1 + 1/2.
        let e = exp_series(2);
        assert_eq!(e.eval_x_one(), UniPoly::constant(rat(5, 2)));
    }
}
