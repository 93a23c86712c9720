//! Cross-method verification reports wiring the oracles and the
//! finite-field pipeline together.

use crate::algebra::BiPoly;
use crate::algebra::{bipoly_to_json, characteristic_from_coboundary, unipoly_to_json};
use crate::arrangement::Arrangement;
use crate::finite_field::{coboundary_via_finite_field, FfError, FfOptions};
use crate::oracle::{
    coboundary_bruteforce, coboundary_moebius, deletion_contraction_check, expected_characteristic,
    DcReport, OracleError,
};
use crate::report::Report;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error(transparent)]
    FiniteField(#[from] FfError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Compare the finite-field coboundary polynomial against the definitional
/// brute-force sum and the Möbius-function formula. All three must agree
/// exactly.
pub fn triple_agreement(arr: &Arrangement, opts: &FfOptions) -> Result<Report, VerifyError> {
    let ff = coboundary_via_finite_field(arr, opts)?;
    let brute = coboundary_bruteforce(arr)?;
    let moebius = coboundary_moebius(arr)?;
    let pass = ff == brute && brute == moebius;
    Ok(Report {
        identity: "coboundary: finite-field = brute force = moebius".into(),
        lhs: bipoly_to_json(&ff, ["q", "t"]),
        rhs: serde_json::json!({
            "brute": bipoly_to_json(&brute, ["q", "t"]),
            "moebius": bipoly_to_json(&moebius, ["q", "t"]),
        }),
        pass,
    })
}

/// Report form of a deletion–contraction check.
pub fn dc_report(arr: &Arrangement, i: usize) -> Result<Report, VerifyError> {
    let DcReport { total, deleted, contracted, pass } = deletion_contraction_check(arr, i)?;
    Ok(Report {
        identity: format!("deletion-contraction at hyperplane {i}"),
        lhs: bipoly_to_json(&total, ["x", "y"]),
        rhs: serde_json::json!({
            "deleted": bipoly_to_json(&deleted, ["x", "y"]),
            "contracted": bipoly_to_json(&contracted, ["x", "y"]),
            "sum": bipoly_to_json(&(&deleted + &contracted), ["x", "y"]),
        }),
        pass,
    })
}

/// The probabilistic interpretation: the expected characteristic polynomial
/// of a random subarrangement (each hyperplane removed independently with
/// probability t) equals `q^{n−r} χ̄(q,t)`.
pub fn expectation_report(arr: &Arrangement, t: &BigRational) -> Result<Report, VerifyError> {
    let lhs = expected_characteristic(arr, t)?;
    let chibar = coboundary_bruteforce(arr)?;
    let rhs = scaled_coboundary_at_t(&chibar, arr, t);
    let pass = lhs == rhs;
    Ok(Report {
        identity: format!("expected characteristic polynomial at t = {t}"),
        lhs: unipoly_to_json(&lhs, "q"),
        rhs: unipoly_to_json(&rhs, "q"),
        pass,
    })
}

/// `q^{n−r} χ̄(q, t0)` as a polynomial in q with t0 a fixed rational.
fn scaled_coboundary_at_t(
    chibar: &BiPoly,
    arr: &Arrangement,
    t: &BigRational,
) -> crate::algebra::UniPoly {
    let n = arr.ambient_dim();
    let r = arr.arrangement_rank();
    let deg = chibar.deg_first().map_or(0, |d| d as usize);
    let mut coeffs = vec![BigRational::zero(); deg + 1];
    for (&(a, b), c) in chibar.terms() {
        let mut tp = BigRational::one();
        for _ in 0..b {
            tp *= t;
        }
        coeffs[a as usize] += BigRational::from_integer(c.clone()) * tp;
    }
    crate::algebra::UniPoly::new(coeffs).mul_var_pow(n - r)
}

/// Characteristic polynomial of an arrangement via brute force; convenience
/// for the region-count checks.
pub fn characteristic_bruteforce(
    arr: &Arrangement,
) -> Result<crate::algebra::UniPoly, VerifyError> {
    let chibar = coboundary_bruteforce(arr)?;
    Ok(characteristic_from_coboundary(&chibar, arr.ambient_dim(), arr.arrangement_rank()))
}

/// Structural sanity of a coboundary polynomial: χ̄(q,1) collapses to q^r
/// (only the empty subset survives), and χ̄ is monic of degree r in q.
pub fn coboundary_sanity(chibar: &BiPoly, rank: usize) -> bool {
    let at_one = chibar.eval_second(&BigInt::one());
    let monic = chibar.coeff(rank as u32, 0) == BigInt::one();
    let degree_ok = chibar.deg_first() == Some(rank as u32);
    at_one == crate::algebra::UniPoly::monomial(BigRational::one(), rank) && monic && degree_ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::families::{make, FamilyKind};

    #[test]
    fn triple_agreement_on_small_families() {
        for (kind, n) in [(FamilyKind::Braid, 3), (FamilyKind::Shi, 2), (FamilyKind::Linial, 3)] {
            let arr = make(&kind, n).unwrap();
            let report = triple_agreement(&arr, &FfOptions::default()).unwrap();
            assert!(report.pass, "{:?} n={n}", kind);
        }
    }

    #[test]
    fn dc_and_expectation_reports() {
        let arr = make(&FamilyKind::Braid, 3).unwrap();
        assert!(dc_report(&arr, 0).unwrap().pass);
        assert!(expectation_report(&arr, &rat(1, 2)).unwrap().pass);
    }

    #[test]
    fn sanity_check_accepts_valid_coboundaries() {
        let arr = make(&FamilyKind::Shi, 3).unwrap();
        let chibar = coboundary_bruteforce(&arr).unwrap();
        assert!(coboundary_sanity(&chibar, arr.arrangement_rank()));
    }
}
