//! Verification of the generating-function identities for arrangement
//! families: the Coxeter and threshold EGF theorems, the exponential-
//! sequence identity, the A_r/S machinery for braid deformations, and the
//! limit theorems specializing to alternating trees, parking-function
//! counts, semiorders and Catalan numbers.
//!
//! All identities are checked at integer values of q. Each x^n-coefficient
//! of both sides is a polynomial in q of degree ≤ n+1, so agreement at
//! order+2 integer values certifies the polynomial identity up to the
//! truncation order.

mod series;

pub use series::{BivariateSeries, SeriesError, TruncatedEgf};

use crate::algebra::{
    characteristic_from_coboundary, interpolate, region_counts, unipoly_to_json, AlgebraError,
    BiPoly, UniPoly,
};
use crate::codes::pascal;
use crate::families::{build, FamilyError, FamilyKind, SlopeSet};
use crate::oracle::{coboundary_bruteforce, combinatorial_oracle, CombinatorialKind, OracleError};
use crate::report::Report;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EgfError {
    #[error("q = {0} violates the exponent constraint of this identity (need {1})")]
    BadExponent(i64, &'static str),
    #[error("{0} has no EGF identity here")]
    UnsupportedIdentity(String),
    #[error("kind is not a braid deformation, no slope set available")]
    NotADeformation,
    #[error("ratio did not stabilize by r = {0}")]
    NoStabilization(usize),
    #[error("identity failed: {0}")]
    IdentityFailure(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn monomial_t(k: usize) -> UniPoly {
    UniPoly::monomial(BigRational::one(), k)
}

fn choose2(n: usize) -> usize {
    n.saturating_sub(1) * n / 2
}

/// Per-family cache: the exact coboundary polynomial of `E_n` and the
/// scaling exponent `n − r_n`, for n up to the truncation order.
struct FamilyData {
    entries: Vec<(BiPoly, usize)>,
}

impl FamilyData {
    fn compute(kind: &FamilyKind, order: usize) -> Result<FamilyData, EgfError> {
        let entries = (0..=order)
            .map(|n| {
                let arr = build(kind, n)?;
                let chibar = coboundary_bruteforce(&arr)?;
                let scale = arr.ambient_dim() - arr.arrangement_rank();
                Ok((chibar, scale))
            })
            .collect::<Result<_, EgfError>>()?;
        Ok(FamilyData { entries })
    }

    /// The point-count series `Σ_n q^{n−r_n} χ̄_{E_n}(q,t) x^n/n!` at an
    /// integer q. By the finite-field identity its x^n-coefficient is the
    /// histogram polynomial of E_n, which is what every family EGF theorem
    /// expands.
    fn pointcount_egf(&self, q: i64, order: usize) -> TruncatedEgf {
        TruncatedEgf::from_fn(order, |n| {
            let (chibar, scale) = &self.entries[n];
            let qv = BigInt::from(q);
            let factor = BigRational::from_integer(qv.pow(*scale as u32));
            chibar.eval_first(&qv).scale(&factor)
        })
    }

    /// `Σ_n χ̄_{E_n}(1,t) x^n/n!`, the base of the exponential-sequence
    /// identity.
    fn at_q_one(&self, order: usize) -> TruncatedEgf {
        TruncatedEgf::from_fn(order, |n| self.entries[n].0.eval_first(&BigInt::one()))
    }
}

fn odd_exponent(q: i64) -> Result<usize, EgfError> {
    if q < 1 || q % 2 == 0 {
        return Err(EgfError::BadExponent(q, "a positive odd integer"));
    }
    Ok(((q - 1) / 2) as usize)
}

fn nonnegative_exponent(q: i64) -> Result<usize, EgfError> {
    usize::try_from(q).map_err(|_| EgfError::BadExponent(q, "a nonnegative integer"))
}

/// The right-hand side of the family EGF theorem at an integer q:
///
/// * braid: `(Σ t^{C(n,2)} x^n/n!)^q`
/// * type B: `(Σ 2^n t^{C(n,2)} x^n/n!)^{(q−1)/2} · Σ t^{n²} x^n/n!`
/// * type D: same first factor, second factor `Σ t^{n(n−1)} x^n/n!`
/// * threshold: `(Σ_n Σ_k C(n,k) t^{k(n−k)} x^n/n!)^{(q−1)/2} · Σ t^{C(n,2)} x^n/n!`
/// * generic deformation: `Σ_n (Σ_F q^{n−e(F)} (t−1)^{e(F)}) x^n/n!` over
///   forests, the expanded form that avoids the fractional exponent
///   `q/(t−1)` of the closed formula.
pub fn family_egf_rhs(kind: &FamilyKind, q: i64, order: usize) -> Result<TruncatedEgf, EgfError> {
    match kind {
        FamilyKind::Braid => {
            let inner = TruncatedEgf::from_fn(order, |n| monomial_t(choose2(n)));
            Ok(inner.int_pow(nonnegative_exponent(q)?)?)
        }
        FamilyKind::CoxeterB | FamilyKind::CoxeterD => {
            let s = odd_exponent(q)?;
            let first = TruncatedEgf::from_fn(order, |n| {
                monomial_t(choose2(n)).scale(&BigRational::from_integer(BigInt::from(1u64 << n)))
            });
            let second = TruncatedEgf::from_fn(order, |n| {
                if matches!(kind, FamilyKind::CoxeterB) {
                    monomial_t(n * n)
                } else {
                    monomial_t(n * n.saturating_sub(1))
                }
            });
            Ok(first.int_pow(s)?.mul(&second)?)
        }
        FamilyKind::Threshold => {
            let s = odd_exponent(q)?;
            let binom = pascal(order);
            let first = TruncatedEgf::from_fn(order, |n| {
                let mut acc = UniPoly::zero();
                for k in 0..=n {
                    let c = BigRational::from_integer(binom[n][k].clone());
                    acc = &acc + &monomial_t(k * (n - k)).scale(&c);
                }
                acc
            });
            let second = TruncatedEgf::from_fn(order, |n| monomial_t(choose2(n)));
            Ok(first.int_pow(s)?.mul(&second)?)
        }
        FamilyKind::GenericDeformation => {
            let coeffs = (0..=order)
                .map(|n| {
                    let sum = combinatorial_oracle(&CombinatorialKind::Forests, n)?;
                    Ok(sum.eval_first(&BigInt::from(q)))
                })
                .collect::<Result<Vec<_>, EgfError>>()?;
            Ok(TruncatedEgf::new(order, coeffs))
        }
        other => Err(EgfError::UnsupportedIdentity(other.tag().to_string())),
    }
}

fn egf_table(egf: &TruncatedEgf) -> serde_json::Value {
    serde_json::Value::Array(egf.coeffs().iter().map(|c| unipoly_to_json(c, "t")).collect())
}

fn compare_per_q(identity: String, sides: Vec<(i64, TruncatedEgf, TruncatedEgf)>) -> Report {
    let mut lhs = serde_json::Map::new();
    let mut rhs = serde_json::Map::new();
    let mut pass = true;
    for (q, l, r) in &sides {
        lhs.insert(format!("q={q}"), egf_table(l));
        rhs.insert(format!("q={q}"), egf_table(r));
        if l != r {
            pass = false;
        }
    }
    Report { identity, lhs: lhs.into(), rhs: rhs.into(), pass }
}

/// Check the family EGF theorem coefficientwise at the given integer
/// q-values: point-count series on the left, closed-form product on the
/// right.
pub fn verify_family_egf(
    kind: &FamilyKind,
    q_values: &[i64],
    order: usize,
) -> Result<Report, EgfError> {
    let data = FamilyData::compute(kind, order)?;
    let sides = q_values
        .iter()
        .map(|&q| Ok((q, data.pointcount_egf(q, order), family_egf_rhs(kind, q, order)?)))
        .collect::<Result<Vec<_>, EgfError>>()?;
    Ok(compare_per_q(format!("family_egf:{} order={order} q={q_values:?}", kind.tag()), sides))
}

/// The exponential-sequence identity for braid deformations:
/// `1 + q Σ_{n≥1} χ̄_{E_n}(q,t) x^n/n! = (Σ χ̄_{E_n}(1,t) x^n/n!)^q`.
pub fn verify_esa(kind: &FamilyKind, q_values: &[i64], order: usize) -> Result<Report, EgfError> {
    if kind.slope_set().is_none() {
        return Err(EgfError::NotADeformation);
    }
    let data = FamilyData::compute(kind, order)?;
    let base = data.at_q_one(order);
    let sides = q_values
        .iter()
        .map(|&q| Ok((q, data.pointcount_egf(q, order), base.int_pow(nonnegative_exponent(q)?)?)))
        .collect::<Result<Vec<_>, EgfError>>()?;
    Ok(compare_per_q(format!("esa:{} order={order} q={q_values:?}", kind.tag()), sides))
}

/// `A_r(t,x) = Σ_n (Σ_{f:[n]→[r]} t^{a(f)}) x^n/n!` by direct enumeration,
/// where `a(f)` counts pairs i < j with `f(i) − f(j)` in the slope set.
pub fn a_r_series(slopes: &SlopeSet, r: usize, order: usize) -> TruncatedEgf {
    TruncatedEgf::from_fn(order, |n| {
        let mut acc = UniPoly::zero();
        for_each_function(n, r, |f| {
            acc = &acc + &monomial_t(slope_statistic(f, slopes));
        });
        acc
    })
}

/// Apply `f` to every function `[n] → [r]`, represented as a slice of
/// values in `0..r`.
fn for_each_function(n: usize, r: usize, mut f: impl FnMut(&[usize])) {
    if r == 0 {
        if n == 0 {
            f(&[]);
        }
        return;
    }
    let mut values = vec![0usize; n];
    loop {
        f(&values);
        let mut done = true;
        for v in values.iter_mut().rev() {
            *v += 1;
            if *v < r {
                done = false;
                break;
            }
            *v = 0;
        }
        if done {
            return;
        }
    }
}

fn slope_statistic(f: &[usize], slopes: &SlopeSet) -> usize {
    let mut a = 0;
    for i in 0..f.len() {
        for j in i + 1..f.len() {
            if slopes.slopes().contains(&(f[i] as i64 - f[j] as i64)) {
                a += 1;
            }
        }
    }
    a
}

/// `S(t,x,y)`: like the A-series but restricted to surjective functions,
/// with `y` marking the size of the codomain. With `t_zero` the statistic
/// is specialized to t = 0 (only functions with `a(f) = 0` count).
pub fn s_series(
    slopes: &SlopeSet,
    x_order: usize,
    y_order: usize,
    t_zero: bool,
) -> BivariateSeries {
    let mut out = BivariateSeries::zero(x_order, y_order);
    for n in 0..=x_order {
        for r in 0..=y_order.min(n) {
            let mut acc = UniPoly::zero();
            for_each_function(n, r, |f| {
                let mut hit = vec![false; r];
                for &v in f {
                    hit[v] = true;
                }
                if hit.iter().all(|&h| h) {
                    let a = slope_statistic(f, slopes);
                    if !t_zero || a == 0 {
                        acc = &acc + &monomial_t(if t_zero { 0 } else { a });
                    }
                }
            });
            out.set_coeff(n, r, acc);
        }
    }
    out
}

/// `A(t,x,y) = S / (1 − yS)`, expanded as the finite geometric sum
/// `Σ_k (yS)^k S` within the truncation orders. Valid for slope sets
/// contained in {−1, 0, 1}.
pub fn a_from_s(s: &BivariateSeries) -> BivariateSeries {
    let ys = s.shift_y();
    let mut geom = BivariateSeries::one(s.x_order(), s.y_order());
    let mut power = BivariateSeries::one(s.x_order(), s.y_order());
    for _ in 1..=s.y_order() {
        power = power.mul(&ys);
        geom = geom.add(&power);
    }
    geom.mul(s)
}

fn egf_at_t_zero(egf: &TruncatedEgf) -> TruncatedEgf {
    TruncatedEgf::from_fn(egf.order(), |k| {
        UniPoly::constant(egf.coeff(k).eval(&BigRational::zero()))
    })
}

/// The stabilized ratio `lim_r A_r/A_{r−1}` truncated at the given order:
/// the EGF of planted graded A-graphs in the variable t−1. Heights of
/// planted graphs on ≤ order vertices are bounded by
/// `order · max(−a_1, a_k)`, so the ratio stabilizes just past that bound;
/// the iteration alarms if it ever runs four times further.
pub fn limit_ratio(
    slopes: &SlopeSet,
    order: usize,
    t_zero: bool,
) -> Result<TruncatedEgf, EgfError> {
    let threshold = order * slopes.height_factor() as usize + 1;
    let r_limit = 4 * threshold;
    let series = |r: usize| {
        let a = a_r_series(slopes, r, order);
        if t_zero {
            egf_at_t_zero(&a)
        } else {
            a
        }
    };
    let mut prev_a = series(0);
    let mut prev_ratio: Option<TruncatedEgf> = None;
    for r in 1..=r_limit {
        let a = series(r);
        let ratio = a.div(&prev_a)?;
        if let Some(p) = &prev_ratio {
            if *p == ratio {
                return Ok(ratio);
            }
        }
        prev_ratio = Some(ratio);
        prev_a = a;
    }
    Err(EgfError::NoStabilization(r_limit))
}

/// The characteristic polynomial of a braid-deformation family member,
/// extracted from the limit identity
/// `1 + q Σ χ̄_{E_n}(q,0) x^n/n! = (lim A_r/A_{r−1})|_{t=0}^q`
/// by sampling at q = 1..n+2 and interpolating. Cross-checked against the
/// definitional pipeline before being returned.
pub fn char_via_limit(kind: &FamilyKind, n: usize) -> Result<UniPoly, EgfError> {
    let slopes = kind.slope_set().ok_or(EgfError::NotADeformation)?;
    let ratio = limit_ratio(&slopes, n, true)?;
    let mut points = Vec::new();
    for q in 1..=(n as i64 + 2) {
        let powed = ratio.int_pow(q as usize)?;
        let coeff = powed.coeff(n);
        debug_assert!(coeff.degree().unwrap_or(0) == 0);
        points.push((BigRational::from_integer(BigInt::from(q)), coeff.coeff(0)));
    }
    let chi = interpolate(&points, n + 1)?;

    let arr = build(kind, n)?;
    let expected = characteristic_from_coboundary(
        &coboundary_bruteforce(&arr)?,
        arr.ambient_dim(),
        arr.arrangement_rank(),
    );
    if chi != expected {
        return Err(EgfError::IdentityFailure(format!(
            "characteristic of {} at n = {n} disagrees with the definitional pipeline",
            kind.tag()
        )));
    }
    Ok(chi)
}

/// Unsigned coefficients of `lim A_{r−1}/A_r` at t = 0: the region counts
/// of the family members (alternating trees for Linial, `(n+1)^{n−1}` for
/// Shi, semiorders, `n! C_n` for Catalan). Each count up to n = 4 is
/// cross-checked against Zaslavsky's formula applied to the family member
/// itself.
pub fn signed_object_counts(kind: &FamilyKind, order: usize) -> Result<Vec<BigInt>, EgfError> {
    let slopes = kind.slope_set().ok_or(EgfError::NotADeformation)?;
    let ratio = limit_ratio(&slopes, order, true)?;
    let inverse = TruncatedEgf::one(order).div(&ratio)?;
    let mut counts = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let c = inverse.coeff(n).coeff(0);
        if !c.is_integer() {
            return Err(EgfError::IdentityFailure(format!(
                "coefficient of x^{n} is not an integer"
            )));
        }
        let signed = c.to_integer();
        if (n % 2 == 0 && signed.is_negative()) || (n % 2 == 1 && signed.is_positive()) {
            return Err(EgfError::IdentityFailure(format!(
                "coefficient of x^{n} has the wrong sign"
            )));
        }
        counts.push(signed.abs());
    }
    for (n, count) in counts.iter().enumerate().take(5) {
        let arr = build(kind, n)?;
        let chi = characteristic_from_coboundary(
            &coboundary_bruteforce(&arr)?,
            arr.ambient_dim(),
            arr.arrangement_rank(),
        );
        let (regions, _) = region_counts(&chi, arr.ambient_dim(), arr.arrangement_rank())?;
        if BigInt::from(regions) != *count {
            return Err(EgfError::IdentityFailure(format!(
                "count at n = {n} disagrees with the Zaslavsky region count"
            )));
        }
    }
    Ok(counts)
}

/// `A_r(1) = F_{r+2}` for the Catalan family (`F_1 = F_2 = 1`): the
/// Fibonacci specialization of the gap-constrained word count.
pub fn fibonacci_specialization(r: usize) -> BigInt {
    let slopes = SlopeSet::new([-1, 0, 1]);
    // Nonzero coefficients stop at ⌊(r+1)/2⌋.
    let order = (r + 1) / 2;
    let a_r = egf_at_t_zero(&a_r_series(&slopes, r, order));
    let value = a_r.eval_x_one().coeff(0);
    assert!(value.is_integer(), "the Fibonacci specialization is an integer");
    value.to_integer()
}
