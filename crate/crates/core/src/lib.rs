//! Exact computation of Tutte, coboundary and characteristic polynomials of
//! integer hyperplane arrangements.
//!
//! The centerpiece is the finite-field method: for a prime q past a
//! determinant bound, `q^{n−r} χ̄(q,t) = Σ_{p ∈ F_q^n} t^{h(p)}` where
//! `h(p)` counts the hyperplanes through p. [`finite_field`] enumerates
//! points and interpolates that identity across primes; [`oracle`] recomputes
//! the same polynomials from the definitions (subset sums, the intersection
//! poset, deletion–contraction, a probabilistic expectation) so every result
//! is cross-checked by independent routes. [`families`] generates the named
//! arrangements (Coxeter A/B/D, threshold, Shi, Linial, semiorder, Catalan,
//! generic and slope deformations, graphical), [`egf`] verifies their
//! generating-function identities at truncated orders, and [`codes`] covers
//! the graph-coloring and code-weight specializations.
//!
//! All arithmetic is exact: big integers and rationals throughout, no
//! floating point anywhere.
//!
//! ```
//! use arr_core::families::{make, FamilyKind};
//! use arr_core::finite_field::{coboundary_via_finite_field, FfOptions};
//! use arr_core::algebra::tutte_from_coboundary;
//! use num_bigint::BigInt;
//!
//! // The braid arrangement x_i = x_j in R³ is the complete graph K_3.
//! let arr = make(&FamilyKind::Braid, 3)?;
//! let chibar = coboundary_via_finite_field(&arr, &FfOptions::default())?;
//! let tutte = tutte_from_coboundary(&chibar, arr.arrangement_rank())?;
//!
//! // T(x, y) = x² + x + y
//! assert_eq!(tutte.coeff(2, 0), BigInt::from(1));
//! assert_eq!(tutte.coeff(1, 0), BigInt::from(1));
//! assert_eq!(tutte.coeff(0, 1), BigInt::from(1));
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

#![forbid(unsafe_code)]

pub mod algebra;
pub mod arrangement;
pub mod codes;
pub mod egf;
pub mod families;
pub mod finite_field;
pub mod linalg;
pub mod oracle;
pub mod report;
pub mod verify;

pub use algebra::{BiPoly, UniPoly};
pub use arrangement::{Arrangement, Hyperplane, SubsetSelector};
pub use families::{FamilyKind, SlopeSet};
pub use finite_field::{FfMode, FfOptions, Histogram, PrimePlan};
pub use report::Report;
