//! The finite-field method: enumerate `F_q^n`, histogram the number of
//! hyperplanes through each point, and recover `q^{n−r} χ̄(q,t)` by
//! interpolating across enough primes.
//!
//! For any prime q the point count `Σ_p t^{h(p)}` is a polynomial identity
//! in q and t once q exceeds a determinant bound, so sampling at n+1 primes
//! above the bound pins the coboundary polynomial exactly. An extra prime
//! re-checks the assembled polynomial against a fresh histogram; fast mode
//! trades the provable bound for user-chosen primes plus two such checks.

use crate::algebra::{interpolate, AlgebraError, BiPoly, UniPoly};
use crate::arrangement::Arrangement;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("enumerating {points} points exceeds the budget of {budget}")]
    ResourceLimit { points: BigUint, budget: u128 },
    #[error("fast mode needs at least {needed} distinct primes, got {got}")]
    InsufficientPrimes { needed: usize, got: usize },
    #[error("assembled polynomial disagrees with the histogram at verification prime {prime}")]
    VerificationMismatch { prime: u64 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Default cap on the total number of points enumerated by one pipeline run.
pub const DEFAULT_POINT_BUDGET: u128 = 1_000_000_000;

/// Hard ceiling regardless of configuration, so per-shard counters cannot
/// overflow.
const ABSOLUTE_POINT_CAP: u128 = 1 << 62;

/// Offset tables are only built for moduli up to this size; beyond it the
/// kernel falls back to binary search in the sorted offset list.
const TABLE_LIMIT: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FfMode {
    /// Primes are chosen above the provable reduction bound.
    Provable,
    /// User-chosen primes; the last ones double as mandatory verification
    /// primes. Correctness is not guaranteed but any inconsistency between
    /// the interpolated polynomial and the verification histograms alarms.
    Fast { primes: Vec<u64> },
}

#[derive(Debug, Clone)]
pub struct FfOptions {
    pub mode: FfMode,
    pub budget: u128,
}

impl Default for FfOptions {
    fn default() -> Self {
        FfOptions { mode: FfMode::Provable, budget: DEFAULT_POINT_BUDGET }
    }
}

impl FfOptions {
    pub fn fast(primes: Vec<u64>) -> Self {
        FfOptions { mode: FfMode::Fast { primes }, ..Default::default() }
    }
}

/// The primes one pipeline run will use: `primes` for interpolation (all
/// strictly above `lower_bound`), plus at least one verification prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimePlan {
    pub lower_bound: BigInt,
    pub primes: Vec<u64>,
    pub verification: Vec<u64>,
}

/// Point counts of one prime: `counts[k]` is the number of points of
/// `F_q^n` lying on exactly k hyperplanes. Zero bins are omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    pub prime: u64,
    pub ambient_dim: usize,
    pub counts: BTreeMap<usize, BigUint>,
}

impl Histogram {
    /// `Σ_k counts[k] t^k` as an exact polynomial in t.
    pub fn to_poly(&self) -> UniPoly {
        let deg = self.counts.keys().max().copied().unwrap_or(0);
        let mut coeffs = vec![BigRational::zero(); deg + 1];
        for (&k, c) in &self.counts {
            coeffs[k] = BigRational::from_integer(BigInt::from(c.clone()));
        }
        UniPoly::new(coeffs)
    }

    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }
}

pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

pub(crate) fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u64 = 1 % m;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin, valid for all u64.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(mut n: u64) -> u64 {
    loop {
        n += 1;
        if is_prime(n) {
            return n;
        }
    }
}

/// A bound above which every prime makes the arrangement reduce correctly:
/// `B = S^{r+1}` with `S` the largest value of `Σ normalᵢ² + offset²` over
/// the hyperplanes. By Hadamard's inequality `B` dominates every minor of
/// the augmented coefficient matrix up to size `(r+1) × (r+1)`, so no such
/// minor can vanish modulo a prime exceeding `B` unless it is zero.
pub fn prime_bound(arr: &Arrangement) -> BigInt {
    let mut s = BigInt::one();
    for h in arr.hyperplanes() {
        let mut sq: BigInt = BigInt::from(h.offset) * BigInt::from(h.offset);
        for &c in &h.normal {
            sq += BigInt::from(c) * BigInt::from(c);
        }
        if sq > s {
            s = sq;
        }
    }
    s.pow(arr.arrangement_rank() as u32 + 1)
}

/// Choose the primes for one pipeline run and enforce the point budget.
pub fn build_prime_plan(arr: &Arrangement, opts: &FfOptions) -> Result<PrimePlan, FfError> {
    let n = arr.ambient_dim();
    let budget = opts.budget.min(ABSOLUTE_POINT_CAP);
    let plan = match &opts.mode {
        FfMode::Provable => {
            let bound = prime_bound(arr);
            let Some(start) = bound.to_u64().filter(|&b| b < u64::MAX / 2) else {
                return Err(FfError::ResourceLimit { points: bound.to_biguint().unwrap(), budget });
            };
            let mut primes = Vec::with_capacity(n + 2);
            let mut p = start;
            for _ in 0..n + 2 {
                p = next_prime(p);
                primes.push(p);
            }
            let verification = vec![primes.pop().unwrap()];
            PrimePlan { lower_bound: bound, primes, verification }
        }
        FfMode::Fast { primes } => {
            let mut sorted = primes.clone();
            sorted.sort_unstable();
            sorted.dedup();
            for &p in &sorted {
                if !is_prime(p) {
                    return Err(FfError::NotPrime(p));
                }
            }
            // n+1 primes pin the interpolation; two more verify it.
            let needed = n + 3;
            if sorted.len() < needed {
                return Err(FfError::InsufficientPrimes { needed, got: sorted.len() });
            }
            let verification = sorted.split_off(n + 1);
            PrimePlan { lower_bound: BigInt::zero(), primes: sorted, verification }
        }
    };
    let mut points = BigUint::zero();
    for &p in plan.primes.iter().chain(&plan.verification) {
        points += BigUint::from(p).pow(n as u32);
    }
    if points.to_u128().map_or(true, |pts| pts > budget) {
        return Err(FfError::ResourceLimit { points, budget });
    }
    Ok(plan)
}

/// Hyperplanes sharing a reduced normal vector, with their offsets held as
/// a multiset. The contribution of a point to h(p) from the group is the
/// multiplicity of the dot product among the offsets.
struct Group {
    cols: Vec<u64>,
    offsets: Vec<u64>,
    table: Option<Vec<u16>>,
}

impl Group {
    #[inline]
    fn contribution(&self, dot: u64) -> usize {
        match &self.table {
            Some(t) => t[dot as usize] as usize,
            None => {
                let lo = self.offsets.partition_point(|&o| o < dot);
                let hi = self.offsets.partition_point(|&o| o <= dot);
                hi - lo
            }
        }
    }
}

struct ModArrangement {
    q: u64,
    n: usize,
    m: usize,
    groups: Vec<Group>,
    /// For each coordinate ≥ 1, the nonzero column entries as
    /// (group index, coefficient) pairs.
    step_cols: Vec<Vec<(u32, u64)>>,
}

impl ModArrangement {
    fn new(arr: &Arrangement, q: u64) -> Self {
        let n = arr.ambient_dim();
        let reduce = |v: i64| -> u64 { v.rem_euclid(q as i64) as u64 };
        let mut by_normal: BTreeMap<Vec<u64>, Vec<u64>> = BTreeMap::new();
        for h in arr.hyperplanes() {
            let cols: Vec<u64> = h.normal.iter().map(|&c| reduce(c)).collect();
            by_normal.entry(cols).or_default().push(reduce(h.offset));
        }
        let mut groups = Vec::with_capacity(by_normal.len());
        for (cols, mut offsets) in by_normal {
            offsets.sort_unstable();
            let table = (q <= TABLE_LIMIT).then(|| {
                let mut t = vec![0u16; q as usize];
                for &o in &offsets {
                    t[o as usize] += 1;
                }
                t
            });
            groups.push(Group { cols, offsets, table });
        }
        let step_cols = (1..n)
            .map(|j| {
                groups
                    .iter()
                    .enumerate()
                    .filter(|(_, g)| g.cols[j] != 0)
                    .map(|(gi, g)| (gi as u32, g.cols[j]))
                    .collect()
            })
            .collect();
        ModArrangement { q, n, m: arr.len(), groups, step_cols }
    }

    /// Histogram of one shard: the first coordinate fixed to `v0`, the
    /// remaining n−1 coordinates enumerated by an odometer that maintains
    /// every group's dot product incrementally, one coefficient addition
    /// per step.
    fn shard_counts(&self, v0: u64) -> Vec<u64> {
        let q = self.q;
        let mut counts = vec![0u64; self.m + 1];
        let mut dots: Vec<u64> = self.groups.iter().map(|g| mulmod(g.cols[0], v0, q)).collect();
        let mut h: usize = self.groups.iter().zip(&dots).map(|(g, &d)| g.contribution(d)).sum();
        let k = self.n - 1;
        if k == 0 {
            counts[h] = 1;
            return counts;
        }
        let mut digits = vec![0u64; k];
        'point: loop {
            counts[h] += 1;
            let mut j = k;
            loop {
                if j == 0 {
                    break 'point;
                }
                j -= 1;
                for &(gi, c) in &self.step_cols[j] {
                    let g = &self.groups[gi as usize];
                    let old = dots[gi as usize];
                    let mut new = old + c;
                    if new >= q {
                        new -= q;
                    }
                    dots[gi as usize] = new;
                    h = h - g.contribution(old) + g.contribution(new);
                }
                digits[j] += 1;
                if digits[j] < q {
                    break;
                }
                // A full cycle of q additions returned the dots to their
                // value at digit 0; carry into the next coordinate.
                digits[j] = 0;
            }
        }
        counts
    }
}

/// `counts[k] = #{p ∈ F_q^n : exactly k hyperplanes contain p}`, residues
/// taken mod q. The prime need not exceed the reduction bound; with small
/// primes the histogram is still exact as a count, it just may not match
/// the rational arrangement. Shards on the first coordinate are enumerated
/// in parallel and merged by addition, so the result is independent of the
/// thread count.
pub fn incidence_histogram(arr: &Arrangement, q: u64) -> Result<Histogram, FfError> {
    if !is_prime(q) {
        return Err(FfError::NotPrime(q));
    }
    let n = arr.ambient_dim();
    let m = arr.len();
    let counts: Vec<BigUint> = if m == 0 {
        let mut c = vec![BigUint::zero()];
        c[0] = BigUint::from(q).pow(n as u32);
        c
    } else if n == 0 {
        unreachable!("hyperplanes need a nonzero normal, impossible in dimension 0")
    } else {
        let ma = ModArrangement::new(arr, q);
        let merged = (0..q).into_par_iter().map(|v0| ma.shard_counts(v0)).reduce(
            || vec![0u64; m + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(&b) {
                    *x += y;
                }
                a
            },
        );
        merged.into_iter().map(BigUint::from).collect()
    };
    let counts: BTreeMap<usize, BigUint> =
        counts.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    Ok(Histogram { prime: q, ambient_dim: n, counts })
}

/// The full pipeline of the finite-field method: histogram every plan
/// prime, interpolate each t-coefficient as a polynomial in q of degree
/// ≤ n, assemble `Q(q,t)`, divide exactly by `q^{n−r}`, and re-check the
/// result against the verification primes. Every failure mode is a hard
/// error; nothing is silently ignored.
pub fn coboundary_via_finite_field(arr: &Arrangement, opts: &FfOptions) -> Result<BiPoly, FfError> {
    let n = arr.ambient_dim();
    let r = arr.arrangement_rank();
    let m = arr.len();
    let plan = build_prime_plan(arr, opts)?;

    let hists: Vec<Histogram> =
        plan.primes.iter().map(|&p| incidence_histogram(arr, p)).collect::<Result<_, _>>()?;

    let mut assembled = BiPoly::zero();
    for k in 0..=m {
        let points: Vec<(BigRational, BigRational)> = plan
            .primes
            .iter()
            .zip(&hists)
            .map(|(&p, hist)| {
                let count = hist.counts.get(&k).cloned().unwrap_or_else(BigUint::zero);
                (
                    BigRational::from_integer(BigInt::from(p)),
                    BigRational::from_integer(BigInt::from(count)),
                )
            })
            .collect();
        let coeff_poly = interpolate(&points, n)?;
        let ints = coeff_poly.to_integer_coeffs().ok_or_else(|| {
            AlgebraError::InexactDivision(format!(
                "t^{k} coefficient interpolated to a non-integer polynomial"
            ))
        })?;
        for (a, c) in ints.iter().enumerate() {
            assembled.add_term(a as u32, k as u32, c);
        }
    }
    let chibar = assembled.div_first_pow((n - r) as u32)?;

    for &qv in &plan.verification {
        let hist = incidence_histogram(arr, qv)?;
        let scale = BigRational::from_integer(BigInt::from(qv).pow((n - r) as u32));
        let expected = chibar.eval_first(&BigInt::from(qv)).scale(&scale);
        if expected != hist.to_poly() {
            return Err(FfError::VerificationMismatch { prime: qv });
        }
    }
    Ok(chibar)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Hyperplane;
    use crate::families::{make, FamilyKind};
    use num_traits::FromPrimitive;

    /// Independent oracle: evaluate every hyperplane at every point from
    /// scratch, no incremental state, no grouping.
    fn naive_histogram(arr: &Arrangement, q: u64) -> BTreeMap<usize, BigUint> {
        let n = arr.ambient_dim();
        let qi = q as i128;
        let mut counts: BTreeMap<usize, BigUint> = BTreeMap::new();
        let total = (q as u128).pow(n as u32);
        let mut point = vec![0i128; n];
        for idx in 0..total {
            let mut rest = idx;
            for slot in point.iter_mut() {
                *slot = (rest % q as u128) as i128;
                rest /= q as u128;
            }
            let h = arr
                .hyperplanes()
                .iter()
                .filter(|hp| {
                    let dot: i128 =
                        hp.normal.iter().zip(&point).map(|(&c, &x)| c as i128 * x).sum();
                    (dot - hp.offset as i128).rem_euclid(qi) == 0
                })
                .count();
            *counts.entry(h).or_default() += 1u32;
        }
        counts
    }

    #[test]
    fn prime_bound_examples() {
        assert_eq!(prime_bound(&make(&FamilyKind::Braid, 3).unwrap()), BigInt::from(8));
        assert_eq!(prime_bound(&Arrangement::empty(3)), BigInt::one());
        let arr = Arrangement::new(1, vec![Hyperplane::new(vec![2], 1).unwrap()]).unwrap();
        assert_eq!(prime_bound(&arr), BigInt::from(25));
    }

    #[test]
    fn histogram_of_braid_3_at_5() {
        let hist = incidence_histogram(&make(&FamilyKind::Braid, 3).unwrap(), 5).unwrap();
        let expected: BTreeMap<usize, BigUint> = [
            (0, BigUint::from_u64(60).unwrap()),
            (1, BigUint::from_u64(60).unwrap()),
            (3, BigUint::from_u64(5).unwrap()),
        ]
        .into_iter()
        .collect();
        assert_eq!(hist.counts, expected);
        assert_eq!(hist.total(), BigUint::from_u64(125).unwrap());
    }

    #[test]
    fn histogram_of_tiny_arrangements() {
        let hist = incidence_histogram(&Arrangement::empty(1), 3).unwrap();
        assert_eq!(hist.counts, [(0, BigUint::from(3u32))].into_iter().collect());

        let line = Arrangement::new(1, vec![Hyperplane::new(vec![1], 0).unwrap()]).unwrap();
        let hist = incidence_histogram(&line, 3).unwrap();
        assert_eq!(
            hist.counts,
            [(0, BigUint::from(2u32)), (1, BigUint::from(1u32))].into_iter().collect()
        );
    }

    #[test]
    fn histogram_rejects_composites() {
        let arr = make(&FamilyKind::Braid, 2).unwrap();
        assert!(matches!(incidence_histogram(&arr, 6), Err(FfError::NotPrime(6))));
    }

    #[test]
    fn kernel_matches_naive_oracle() {
        let cases: Vec<Arrangement> = vec![
            make(&FamilyKind::Shi, 3).unwrap(),
            make(&FamilyKind::Catalan, 2).unwrap(),
            make(&FamilyKind::CoxeterB, 2).unwrap(),
            Arrangement::new(
                2,
                vec![
                    Hyperplane::new(vec![2, 3], -1).unwrap(),
                    Hyperplane::new(vec![-1, 4], 7).unwrap(),
                    Hyperplane::new(vec![2, 3], 5).unwrap(),
                ],
            )
            .unwrap(),
        ];
        for arr in &cases {
            for q in [2, 3, 5, 7, 11] {
                let hist = incidence_histogram(arr, q).unwrap();
                assert_eq!(hist.counts, naive_histogram(arr, q), "q = {q}");
                assert_eq!(hist.total(), BigUint::from(q).pow(arr.ambient_dim() as u32));
            }
        }
    }

    #[test]
    fn kernel_handles_moduli_beyond_the_table_limit() {
        // Above TABLE_LIMIT the group lookup switches to binary search.
        let q = next_prime(1 << 22);
        let arr = Arrangement::new(
            1,
            vec![Hyperplane::new(vec![1], 0).unwrap(), Hyperplane::new(vec![1], 5).unwrap()],
        )
        .unwrap();
        let hist = incidence_histogram(&arr, q).unwrap();
        let expected: BTreeMap<usize, BigUint> =
            [(0, BigUint::from(q - 2)), (1, BigUint::from(2u32))].into_iter().collect();
        assert_eq!(hist.counts, expected);
    }

    #[test]
    fn prime_utilities() {
        assert!(is_prime(2) && is_prime(3) && is_prime(97) && is_prime(1_000_000_007));
        assert!(!is_prime(0) && !is_prime(1) && !is_prime(91) && !is_prime(1 << 32));
        assert_eq!(next_prime(8), 11);
        assert_eq!(next_prime(2), 3);
    }

    #[test]
    fn provable_plan_for_braid_3() {
        let arr = make(&FamilyKind::Braid, 3).unwrap();
        let plan = build_prime_plan(&arr, &FfOptions::default()).unwrap();
        assert_eq!(plan.lower_bound, BigInt::from(8));
        assert_eq!(plan.primes, vec![11, 13, 17, 19]);
        assert_eq!(plan.verification, vec![23]);
    }

    #[test]
    fn fast_plan_validates_its_primes() {
        let arr = make(&FamilyKind::Braid, 2).unwrap();
        assert!(matches!(
            build_prime_plan(&arr, &FfOptions::fast(vec![4, 5, 7, 11, 13])),
            Err(FfError::NotPrime(4))
        ));
        assert!(matches!(
            build_prime_plan(&arr, &FfOptions::fast(vec![5, 7, 11])),
            Err(FfError::InsufficientPrimes { needed: 5, got: 3 })
        ));
        let plan = build_prime_plan(&arr, &FfOptions::fast(vec![5, 7, 11, 13, 17])).unwrap();
        assert_eq!(plan.primes, vec![5, 7, 11]);
        assert_eq!(plan.verification, vec![13, 17]);
    }

    #[test]
    fn budget_is_enforced() {
        let arr = crate::families::generic_deformation(4).unwrap();
        let err = coboundary_via_finite_field(&arr, &FfOptions::default()).unwrap_err();
        assert!(matches!(err, FfError::ResourceLimit { .. }));
    }

    #[test]
    fn pipeline_shi_2() {
        let chibar =
            coboundary_via_finite_field(&make(&FamilyKind::Shi, 2).unwrap(), &FfOptions::default())
                .unwrap();
        // q + 2(t−1)
        let mut expected = BiPoly::term(BigInt::one(), 1, 0);
        expected.add_term(0, 1, &BigInt::from(2));
        expected.add_term(0, 0, &BigInt::from(-2));
        assert_eq!(chibar, expected);
    }

    #[test]
    fn pipeline_braid_3() {
        let chibar = coboundary_via_finite_field(
            &make(&FamilyKind::Braid, 3).unwrap(),
            &FfOptions::default(),
        )
        .unwrap();
        // q² + 3q(t−1) + 3(t−1)² + (t−1)³
        assert_eq!(chibar.coeff(2, 0), BigInt::one());
        assert_eq!(chibar.coeff(1, 1), BigInt::from(3));
        assert_eq!(chibar.coeff(0, 3), BigInt::one());
        assert_eq!(chibar.eval(&BigInt::from(1), &BigInt::from(1)), BigInt::one());
        assert_eq!(
            chibar.eval(&BigInt::from(5), &BigInt::from(1)),
            BigInt::from(25),
            "χ̄(q,1) = q^r"
        );
    }

    #[test]
    fn pipeline_empty_arrangement() {
        let chibar =
            coboundary_via_finite_field(&Arrangement::empty(2), &FfOptions::default()).unwrap();
        assert_eq!(chibar, BiPoly::one());
    }

    #[test]
    fn fast_mode_agrees_with_provable_mode() {
        let arr = make(&FamilyKind::Shi, 2).unwrap();
        let provable = coboundary_via_finite_field(&arr, &FfOptions::default()).unwrap();
        let fast =
            coboundary_via_finite_field(&arr, &FfOptions::fast(vec![11, 13, 17, 19, 23])).unwrap();
        assert_eq!(provable, fast);
    }
}
