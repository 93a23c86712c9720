//! Integer hyperplane arrangements with exact rank, centrality, deletion and
//! contraction.
//!
//! An arrangement is an ordered multiset of affine hyperplanes
//! `c_1 x_1 + … + c_n x_n = c` with integer coefficients, in a fixed ambient
//! dimension. Hyperplane order is significant: indices are stable
//! identifiers, and duplicates are legal (contraction may create them).

use crate::linalg::{Echelon, LinAlgError};
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("hyperplane index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("hyperplane {0} coincides with another hyperplane; contraction is degenerate")]
    DegenerateContraction(usize),
    #[error("hyperplane normal must not be the zero vector")]
    ZeroNormal,
    #[error("hyperplane has {got} coefficients, ambient dimension is {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("coefficients exceed the representable integer range")]
    CoefficientOverflow,
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// One affine hyperplane `normal · x = offset`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hyperplane {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Hyperplane {
    pub fn new(normal: Vec<i64>, offset: i64) -> Result<Self, ArrangementError> {
        if normal.iter().all(|&c| c == 0) {
            return Err(ArrangementError::ZeroNormal);
        }
        Ok(Hyperplane { normal, offset })
    }

    /// Canonical representative of the hyperplane as a point set: divide all
    /// coefficients by their gcd and make the first nonzero normal entry
    /// positive. Two hyperplanes are equal as point sets iff their canonical
    /// forms agree.
    pub fn canonical(&self) -> Hyperplane {
        let mut g: i128 = (self.offset as i128).abs();
        for &c in &self.normal {
            g = g.gcd(&(c as i128));
        }
        debug_assert!(g > 0, "normal is nonzero");
        let lead = self.normal.iter().find(|&&c| c != 0).copied().unwrap();
        let g = if lead < 0 { -g } else { g };
        Hyperplane {
            normal: self.normal.iter().map(|&c| (c as i128 / g) as i64).collect(),
            offset: (self.offset as i128 / g) as i64,
        }
    }

    /// Equality as point sets (proportional defining equations).
    pub fn same_hyperplane(&self, other: &Hyperplane) -> bool {
        self.canonical() == other.canonical()
    }

    /// The augmented row `(normal | offset)` widened for exact elimination.
    pub fn augmented_row(&self) -> Vec<i128> {
        let mut row: Vec<i128> = self.normal.iter().map(|&c| c as i128).collect();
        row.push(self.offset as i128);
        row
    }
}

/// An ordered multiset of hyperplanes in a common ambient dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawArrangement", into = "RawArrangement")]
pub struct Arrangement {
    ambient_dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

/// Wire format: `{"n": 3, "hyperplanes": [{"normal": [1,-1,0], "offset": 0}]}`.
#[derive(Serialize, Deserialize)]
struct RawArrangement {
    n: usize,
    hyperplanes: Vec<Hyperplane>,
}

impl TryFrom<RawArrangement> for Arrangement {
    type Error = ArrangementError;
    fn try_from(raw: RawArrangement) -> Result<Self, Self::Error> {
        Arrangement::new(raw.n, raw.hyperplanes)
    }
}

impl From<Arrangement> for RawArrangement {
    fn from(arr: Arrangement) -> Self {
        RawArrangement { n: arr.ambient_dim, hyperplanes: arr.hyperplanes }
    }
}

impl Arrangement {
    pub fn new(ambient_dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self, ArrangementError> {
        for h in &hyperplanes {
            if h.normal.len() != ambient_dim {
                return Err(ArrangementError::DimensionMismatch {
                    expected: ambient_dim,
                    got: h.normal.len(),
                });
            }
            if h.normal.iter().all(|&c| c == 0) {
                return Err(ArrangementError::ZeroNormal);
            }
        }
        Ok(Arrangement { ambient_dim, hyperplanes })
    }

    pub fn empty(ambient_dim: usize) -> Self {
        Arrangement { ambient_dim, hyperplanes: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn hyperplane(&self, i: usize) -> &Hyperplane {
        &self.hyperplanes[i]
    }

    /// Echelon state of the subsystem selected by `sel`.
    fn echelon(&self, sel: &SubsetSelector) -> Result<Echelon, LinAlgError> {
        let mut ech = Echelon::new(self.ambient_dim + 1);
        for &i in sel.indices() {
            ech.insert(&self.hyperplanes[i].augmented_row())?;
        }
        Ok(ech)
    }

    /// Do the selected hyperplanes have a common point? The empty selection
    /// is central: its intersection is the whole space.
    pub fn is_central(&self, sel: &SubsetSelector) -> bool {
        sel.check(self);
        self.echelon(sel).expect("desk-scale coefficients").is_consistent()
    }

    /// Matroid rank of a selection: the dimension of the span of its normal
    /// vectors. For a central selection this equals `n − dim ∩B`; for a
    /// non-central one it equals the largest rank of a central subset (the
    /// two agree, see `rank_matches_max_central_subset` in the tests).
    pub fn rank(&self, sel: &SubsetSelector) -> usize {
        sel.check(self);
        self.echelon(sel).expect("desk-scale coefficients").rank()
    }

    /// Rank of the whole arrangement.
    pub fn arrangement_rank(&self) -> usize {
        self.rank(&SubsetSelector::all(self.len()))
    }

    /// Remove hyperplane `i`, keeping the ambient dimension.
    pub fn delete(&self, i: usize) -> Result<Arrangement, ArrangementError> {
        if i >= self.len() {
            return Err(ArrangementError::IndexOutOfRange(i));
        }
        let mut hyperplanes = self.hyperplanes.clone();
        hyperplanes.remove(i);
        Ok(Arrangement { ambient_dim: self.ambient_dim, hyperplanes })
    }

    /// Restrict the other hyperplanes to hyperplane `i`, producing an
    /// arrangement in dimension `n − 1`. The pivot coordinate is the smallest
    /// index with a nonzero coefficient in hyperplane `i`; it is eliminated
    /// from every other equation and the results are reduced to integers.
    /// Hyperplanes parallel to `H_i` drop out; multiplicities are kept.
    pub fn contract(&self, i: usize) -> Result<Arrangement, ArrangementError> {
        if i >= self.len() {
            return Err(ArrangementError::IndexOutOfRange(i));
        }
        let h = &self.hyperplanes[i];
        let pivot = h.normal.iter().position(|&c| c != 0).expect("normal is nonzero");
        let a = h.normal[pivot] as i128;
        let mut hyperplanes = Vec::new();
        for (j, other) in self.hyperplanes.iter().enumerate() {
            if j == i {
                continue;
            }
            let b = other.normal[pivot] as i128;
            let mut normal: Vec<i128> = Vec::with_capacity(self.ambient_dim - 1);
            for k in 0..self.ambient_dim {
                if k == pivot {
                    continue;
                }
                normal.push(a * other.normal[k] as i128 - b * h.normal[k] as i128);
            }
            let offset = a * other.offset as i128 - b * h.offset as i128;
            if normal.iter().all(|&c| c == 0) {
                if offset == 0 {
                    // H_j is the same point set as H_i.
                    return Err(ArrangementError::DegenerateContraction(i));
                }
                // Parallel: empty intersection with H_i.
                continue;
            }
            hyperplanes.push(reduce_to_hyperplane(normal, offset)?);
        }
        Ok(Arrangement { ambient_dim: self.ambient_dim - 1, hyperplanes })
    }
}

/// gcd-reduce, sign-normalize and narrow an eliminated equation.
fn reduce_to_hyperplane(normal: Vec<i128>, offset: i128) -> Result<Hyperplane, ArrangementError> {
    let mut g: i128 = offset.abs();
    for &c in &normal {
        g = g.gcd(&c);
    }
    let lead = normal.iter().find(|&&c| c != 0).copied().unwrap();
    let g = if lead < 0 { -g } else { g };
    let narrow = |v: i128| -> Result<i64, ArrangementError> {
        i64::try_from(v / g).map_err(|_| ArrangementError::CoefficientOverflow)
    };
    Ok(Hyperplane {
        normal: normal.iter().map(|&c| narrow(c)).collect::<Result<_, _>>()?,
        offset: narrow(offset)?,
    })
}

/// A set of hyperplane indices into an arrangement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetSelector {
    indices: Vec<usize>,
}

impl SubsetSelector {
    /// Indices are deduplicated and sorted.
    pub fn new(indices: impl IntoIterator<Item = usize>) -> Self {
        let mut indices: Vec<usize> = indices.into_iter().collect();
        indices.sort_unstable();
        indices.dedup();
        SubsetSelector { indices }
    }

    pub fn empty() -> Self {
        SubsetSelector { indices: Vec::new() }
    }

    pub fn all(len: usize) -> Self {
        SubsetSelector { indices: (0..len).collect() }
    }

    pub fn from_mask(mask: u64, len: usize) -> Self {
        SubsetSelector { indices: (0..len).filter(|&i| mask >> i & 1 == 1).collect() }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    fn check(&self, arr: &Arrangement) {
        if let Some(&max) = self.indices.last() {
            assert!(max < arr.len(), "selector index {max} out of range for arrangement");
        }
    }
}
