//! Deterministic generators for the named arrangement families: Coxeter
//! types A/B/D, threshold, the braid deformations (Shi, Linial, semiorder,
//! Catalan, arbitrary slope sets), generic deformations and graphical
//! arrangements.

use crate::arrangement::SubsetSelector;
use crate::arrangement::{Arrangement, Hyperplane};
use crate::codes::{SimpleGraph, UnionFind};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("{0} requires its dedicated constructor")]
    UnsupportedKind(String),
    #[error("n = {0} is too large for this family (limit {1})")]
    TooLarge(usize, usize),
    #[error("generic deformation failed its genericity check")]
    GenericityFailure,
}

/// A sorted set of distinct integer slopes `a_1 < … < a_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeSet {
    slopes: Vec<i64>,
}

impl SlopeSet {
    pub fn new(slopes: impl IntoIterator<Item = i64>) -> Self {
        let mut slopes: Vec<i64> = slopes.into_iter().collect();
        slopes.sort_unstable();
        slopes.dedup();
        assert!(!slopes.is_empty(), "slope set must be nonempty");
        SlopeSet { slopes }
    }

    pub fn slopes(&self) -> &[i64] {
        &self.slopes
    }

    /// `max(−a_1, a_k)`: the height bound factor for planted graded graphs.
    pub fn height_factor(&self) -> i64 {
        (-self.slopes[0]).max(*self.slopes.last().unwrap()).max(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyKind {
    Braid,
    CoxeterB,
    CoxeterD,
    Threshold,
    Shi,
    Linial,
    Semiorder,
    Catalan,
    GenericDeformation,
    SlopeDeformation(SlopeSet),
    Graphical(SimpleGraph),
}

impl FamilyKind {
    /// The slope set of a braid-deformation kind, if it is one.
    pub fn slope_set(&self) -> Option<SlopeSet> {
        match self {
            FamilyKind::Braid => Some(SlopeSet::new([0])),
            FamilyKind::Shi => Some(SlopeSet::new([0, 1])),
            FamilyKind::Linial => Some(SlopeSet::new([1])),
            FamilyKind::Semiorder => Some(SlopeSet::new([-1, 1])),
            FamilyKind::Catalan => Some(SlopeSet::new([-1, 0, 1])),
            FamilyKind::SlopeDeformation(a) => Some(a.clone()),
            _ => None,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            FamilyKind::Braid => "braid",
            FamilyKind::CoxeterB => "coxeter_b",
            FamilyKind::CoxeterD => "coxeter_d",
            FamilyKind::Threshold => "threshold",
            FamilyKind::Shi => "shi",
            FamilyKind::Linial => "linial",
            FamilyKind::Semiorder => "semiorder",
            FamilyKind::Catalan => "catalan",
            FamilyKind::GenericDeformation => "generic_deformation",
            FamilyKind::SlopeDeformation(_) => "slope_deformation",
            FamilyKind::Graphical(_) => "graphical",
        }
    }
}

/// Normal vector of `x_i − x_j` (0-based indices).
fn difference_normal(n: usize, i: usize, j: usize) -> Vec<i64> {
    let mut v = vec![0i64; n];
    v[i] = 1;
    v[j] = -1;
    v
}

/// Normal vector of `x_i + x_j`.
fn sum_normal(n: usize, i: usize, j: usize) -> Vec<i64> {
    let mut v = vec![0i64; n];
    v[i] = 1;
    v[j] = 1;
    v
}

/// Build a named family in dimension `n`. `n = 0` yields the empty
/// arrangement in a zero-dimensional space. Slope deformations and
/// graphical arrangements carry data and use their dedicated constructors.
pub fn make(kind: &FamilyKind, n: usize) -> Result<Arrangement, FamilyError> {
    match kind {
        FamilyKind::Braid
        | FamilyKind::Shi
        | FamilyKind::Linial
        | FamilyKind::Semiorder
        | FamilyKind::Catalan => Ok(slope_deformation(n, &kind.slope_set().unwrap())),
        FamilyKind::CoxeterB => {
            let mut hs = coxeter_pairs(n);
            for i in 0..n {
                let mut v = vec![0i64; n];
                v[i] = 1;
                hs.push(Hyperplane { normal: v, offset: 0 });
            }
            Ok(Arrangement::new(n, hs).unwrap())
        }
        FamilyKind::CoxeterD => Ok(Arrangement::new(n, coxeter_pairs(n)).unwrap()),
        FamilyKind::Threshold => {
            let hs = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .map(|(i, j)| Hyperplane { normal: sum_normal(n, i, j), offset: 0 })
                .collect();
            Ok(Arrangement::new(n, hs).unwrap())
        }
        FamilyKind::GenericDeformation => generic_deformation(n),
        FamilyKind::SlopeDeformation(_) | FamilyKind::Graphical(_) => {
            Err(FamilyError::UnsupportedKind(kind.tag().to_string()))
        }
    }
}

/// Build any kind, dispatching the data-carrying ones to their
/// constructors. The `n` argument is ignored for graphical arrangements.
pub fn build(kind: &FamilyKind, n: usize) -> Result<Arrangement, FamilyError> {
    match kind {
        FamilyKind::SlopeDeformation(a) => Ok(slope_deformation(n, a)),
        FamilyKind::Graphical(g) => Ok(graphical(g)),
        _ => make(kind, n),
    }
}

/// The hyperplanes `x_i = x_j` and `x_i + x_j = 0` for `i < j`, in
/// lexicographic pair order with the difference before the sum.
fn coxeter_pairs(n: usize) -> Vec<Hyperplane> {
    let mut hs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            hs.push(Hyperplane { normal: difference_normal(n, i, j), offset: 0 });
            hs.push(Hyperplane { normal: sum_normal(n, i, j), offset: 0 });
        }
    }
    hs
}

/// The deformation `x_i − x_j = a` for `i < j` and `a ∈ A`, hyperplanes in
/// lexicographic `(i, j, a)` order. Shi, Linial, semiorder, Catalan and the
/// braid arrangement itself are the special cases `A = {0,1}, {1}, {−1,1},
/// {−1,0,1}, {0}`.
///
/// ```
/// use arr_core::families::{make, slope_deformation, FamilyKind, SlopeSet};
/// let shi = slope_deformation(3, &SlopeSet::new([0, 1]));
/// assert_eq!(shi, make(&FamilyKind::Shi, 3).unwrap());
/// ```
pub fn slope_deformation(n: usize, slopes: &SlopeSet) -> Arrangement {
    let mut hs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for &a in slopes.slopes() {
                hs.push(Hyperplane { normal: difference_normal(n, i, j), offset: a });
            }
        }
    }
    Arrangement::new(n, hs).unwrap()
}

const GENERIC_LIMIT: usize = 8;

/// A generic deformation of the braid arrangement: `x_i − x_j = 2^idx`
/// where `idx` is the zero-based lexicographic rank of the pair `(i, j)`.
///
/// Offsets that are distinct powers of two make every signed cycle sum
/// nonzero (the largest power dominates), so a subset is central exactly
/// when its edge graph is a forest. That property is re-checked
/// exhaustively for n ≤ 5.
pub fn generic_deformation(n: usize) -> Result<Arrangement, FamilyError> {
    if n > GENERIC_LIMIT {
        return Err(FamilyError::TooLarge(n, GENERIC_LIMIT));
    }
    let mut hs = Vec::new();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let idx = hs.len();
            hs.push(Hyperplane { normal: difference_normal(n, i, j), offset: 1i64 << idx });
            pairs.push((i, j));
        }
    }
    let arr = Arrangement::new(n, hs).unwrap();
    if n <= 5 {
        for mask in 0u64..(1 << arr.len()) {
            let mut uf = UnionFind::new(n);
            let mut forest = true;
            for (e, &(i, j)) in pairs.iter().enumerate() {
                if mask >> e & 1 == 1 && !uf.union(i, j) {
                    forest = false;
                    break;
                }
            }
            if arr.is_central(&SubsetSelector::from_mask(mask, arr.len())) != forest {
                return Err(FamilyError::GenericityFailure);
            }
        }
    }
    Ok(arr)
}

/// The graphical arrangement of a simple graph: one hyperplane `x_i = x_j`
/// per edge, in edge order. Its rank is `n` minus the number of connected
/// components.
pub fn graphical(g: &SimpleGraph) -> Arrangement {
    let n = g.vertex_count();
    let hs = g
        .edges()
        .iter()
        .map(|&(i, j)| Hyperplane { normal: difference_normal(n, i, j), offset: 0 })
        .collect();
    Arrangement::new(n, hs).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(kind: &FamilyKind, n: usize) -> usize {
        make(kind, n).unwrap().len()
    }

    #[test]
    fn hyperplane_counts_match_closed_forms() {
        for n in 1..=6usize {
            let choose2 = n * (n - 1) / 2;
            assert_eq!(count(&FamilyKind::Braid, n), choose2);
            assert_eq!(count(&FamilyKind::CoxeterB, n), n * n);
            assert_eq!(count(&FamilyKind::CoxeterD, n), n * (n - 1));
            assert_eq!(count(&FamilyKind::Threshold, n), choose2);
            assert_eq!(count(&FamilyKind::Shi, n), 2 * choose2);
            assert_eq!(count(&FamilyKind::Linial, n), choose2);
            assert_eq!(count(&FamilyKind::Semiorder, n), 2 * choose2);
            assert_eq!(count(&FamilyKind::Catalan, n), 3 * choose2);
        }
    }

    #[test]
    fn shi_2_hyperplanes() {
        let arr = make(&FamilyKind::Shi, 2).unwrap();
        assert_eq!(
            arr.hyperplanes(),
            &[
                Hyperplane { normal: vec![1, -1], offset: 0 },
                Hyperplane { normal: vec![1, -1], offset: 1 },
            ]
        );
    }

    #[test]
    fn coxeter_b_2_listing() {
        let arr = make(&FamilyKind::CoxeterB, 2).unwrap();
        assert_eq!(
            arr.hyperplanes(),
            &[
                Hyperplane { normal: vec![1, -1], offset: 0 },
                Hyperplane { normal: vec![1, 1], offset: 0 },
                Hyperplane { normal: vec![1, 0], offset: 0 },
                Hyperplane { normal: vec![0, 1], offset: 0 },
            ]
        );
    }

    #[test]
    fn braid_is_the_zero_slope_deformation() {
        for n in 0..=5 {
            assert_eq!(
                slope_deformation(n, &SlopeSet::new([0])),
                make(&FamilyKind::Braid, n).unwrap()
            );
        }
    }

    #[test]
    fn linial_3_has_three_hyperplanes() {
        let arr = slope_deformation(3, &SlopeSet::new([1]));
        assert_eq!(arr, make(&FamilyKind::Linial, 3).unwrap());
        assert_eq!(arr.len(), 3);
        assert!(arr.hyperplanes().iter().all(|h| h.offset == 1));
    }

    #[test]
    fn catalan_2_is_the_three_slope_deformation() {
        assert_eq!(
            slope_deformation(2, &SlopeSet::new([-1, 0, 1])),
            make(&FamilyKind::Catalan, 2).unwrap()
        );
    }

    #[test]
    fn family_ranks() {
        for n in 2..=5usize {
            for kind in [
                FamilyKind::Braid,
                FamilyKind::Shi,
                FamilyKind::Linial,
                FamilyKind::Semiorder,
                FamilyKind::Catalan,
            ] {
                assert_eq!(make(&kind, n).unwrap().arrangement_rank(), n - 1, "{kind:?} n={n}");
            }
        }
        for n in 1..=5usize {
            assert_eq!(make(&FamilyKind::CoxeterB, n).unwrap().arrangement_rank(), n);
        }
        for n in 2..=5usize {
            assert_eq!(make(&FamilyKind::CoxeterD, n).unwrap().arrangement_rank(), n);
        }
        // Threshold rank is n − (number of bipartite components of K_n).
        assert_eq!(make(&FamilyKind::Threshold, 1).unwrap().arrangement_rank(), 0);
        assert_eq!(make(&FamilyKind::Threshold, 2).unwrap().arrangement_rank(), 1);
        for n in 3..=5usize {
            assert_eq!(make(&FamilyKind::Threshold, n).unwrap().arrangement_rank(), n);
        }
    }

    #[test]
    fn coxeter_d_1_is_empty_in_dimension_1() {
        let arr = make(&FamilyKind::CoxeterD, 1).unwrap();
        assert_eq!(arr.ambient_dim(), 1);
        assert!(arr.is_empty());
    }

    #[test]
    fn n_0_is_the_empty_arrangement_in_dimension_0() {
        let arr = make(&FamilyKind::Braid, 0).unwrap();
        assert_eq!(arr.ambient_dim(), 0);
        assert!(arr.is_empty());
    }

    #[test]
    fn generic_deformation_offsets() {
        let arr = generic_deformation(3).unwrap();
        assert_eq!(arr.hyperplanes().iter().map(|h| h.offset).collect::<Vec<_>>(), vec![1, 2, 4]);
        assert_eq!(generic_deformation(2).unwrap().hyperplanes()[0].offset, 1);
        // The triangle is a cycle, hence non-central.
        assert!(!arr.is_central(&SubsetSelector::all(3)));
    }

    #[test]
    fn generic_deformation_centrality_is_forests() {
        // The constructor itself checks this exhaustively for n ≤ 5.
        for n in 2..=5 {
            generic_deformation(n).unwrap();
        }
        assert_eq!(generic_deformation(9).unwrap_err(), FamilyError::TooLarge(9, 8));
    }

    #[test]
    fn graphical_of_complete_graph_is_braid() {
        let g = SimpleGraph::complete(3);
        assert_eq!(graphical(&g), make(&FamilyKind::Braid, 3).unwrap());

        let edge = SimpleGraph::new(2, [(0, 1)]).unwrap();
        assert_eq!(graphical(&edge), make(&FamilyKind::Braid, 2).unwrap());

        let path = SimpleGraph::new(3, [(0, 1), (1, 2)]).unwrap();
        let arr = graphical(&path);
        assert_eq!(arr.arrangement_rank(), 2);
        assert_eq!(arr.arrangement_rank(), 3 - path.component_count());
    }

    #[test]
    fn make_rejects_data_carrying_kinds() {
        let kind = FamilyKind::SlopeDeformation(SlopeSet::new([1]));
        assert!(matches!(make(&kind, 3), Err(FamilyError::UnsupportedKind(_))));
        assert!(build(&kind, 3).is_ok());
    }
}
