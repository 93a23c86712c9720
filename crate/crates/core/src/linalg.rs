//! Fraction-free exact linear algebra over the integers.
//!
//! Everything that needs a rank, a consistency check or a canonical form of
//! an affine system goes through [`Echelon`]: an incremental row-echelon
//! state for augmented systems `a·x = c`. Rows are kept gcd-reduced with a
//! positive leading entry, so the state is deterministic and entries stay
//! small. No floating point anywhere.

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    /// An intermediate product left the fixed-width integer range. Desk-scale
    /// inputs never get close; this guards against pathological coefficients.
    #[error("integer overflow during exact elimination")]
    Overflow,
}

fn checked_mul(a: i128, b: i128) -> Result<i128, LinAlgError> {
    a.checked_mul(b).ok_or(LinAlgError::Overflow)
}

fn checked_sub(a: i128, b: i128) -> Result<i128, LinAlgError> {
    a.checked_sub(b).ok_or(LinAlgError::Overflow)
}

/// Divide a row by the gcd of its entries and make the leading nonzero entry
/// positive. The zero row is left untouched.
fn normalize_row(row: &mut [i128]) {
    let mut g: i128 = 0;
    for &v in row.iter() {
        g = g.gcd(&v);
    }
    if g == 0 {
        return;
    }
    let lead = row.iter().find(|&&v| v != 0).copied().unwrap();
    let g = if lead < 0 { -g } else { g };
    for v in row.iter_mut() {
        *v /= g;
    }
}

/// Incremental row-echelon form of an integer augmented system.
///
/// The last column is the constant term of each equation `a·x = c`.
/// An inserted row that reduces to `(0, …, 0 | c)` with `c ≠ 0` marks the
/// system inconsistent; it is stored with its pivot in the constant column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    width: usize,
    /// Rows sorted by pivot column, pivots strictly increasing.
    rows: Vec<Vec<i128>>,
}

impl Echelon {
    /// `width` counts all columns including the trailing constant column.
    pub fn new(width: usize) -> Self {
        assert!(width >= 1, "augmented system needs at least the constant column");
        Echelon { width, rows: Vec::new() }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    fn pivot(row: &[i128]) -> Option<usize> {
        row.iter().position(|&v| v != 0)
    }

    /// Reduce `row` against the current state without inserting it.
    /// Returns the reduced, normalized row.
    fn reduce(&self, row: &[i128]) -> Result<Vec<i128>, LinAlgError> {
        assert_eq!(row.len(), self.width, "row width mismatch");
        let mut acc = row.to_vec();
        for er in &self.rows {
            let p = Self::pivot(er).expect("stored rows are nonzero");
            if acc[p] == 0 {
                continue;
            }
            let a = er[p];
            let b = acc[p];
            for k in 0..self.width {
                acc[k] = checked_sub(checked_mul(a, acc[k])?, checked_mul(b, er[k])?)?;
            }
            normalize_row(&mut acc);
        }
        normalize_row(&mut acc);
        Ok(acc)
    }

    /// Insert one equation. Dependent rows are dropped silently; a row that
    /// contradicts the state is stored as the inconsistency marker.
    pub fn insert(&mut self, row: &[i128]) -> Result<(), LinAlgError> {
        let reduced = self.reduce(row)?;
        match Self::pivot(&reduced) {
            None => Ok(()),
            Some(p) => {
                let at = self.rows.iter().position(|er| Self::pivot(er).unwrap() > p);
                match at {
                    Some(i) => self.rows.insert(i, reduced),
                    None => self.rows.push(reduced),
                }
                Ok(())
            }
        }
    }

    /// Rank of the coefficient part, i.e. the dimension of the span of the
    /// normal vectors inserted so far. The inconsistency marker (pivot in the
    /// constant column) does not count.
    pub fn rank(&self) -> usize {
        self.rows.iter().filter(|r| Self::pivot(r).unwrap() < self.width - 1).count()
    }

    /// True while the system `a·x = c` has a solution over the rationals.
    pub fn is_consistent(&self) -> bool {
        self.rows.iter().all(|r| Self::pivot(r).unwrap() < self.width - 1)
    }

    /// Does the row lie in the rational row space of the system?
    pub fn implies(&self, row: &[i128]) -> Result<bool, LinAlgError> {
        Ok(Self::pivot(&self.reduce(row)?).is_none())
    }

    /// Fully reduced, gcd-normalized, pivot-sorted form. For consistent
    /// systems this is a canonical encoding of the affine solution space.
    pub fn canonical_form(&self) -> Result<Vec<Vec<i128>>, LinAlgError> {
        let mut rows = self.rows.clone();
        // Back-substitution: clear every pivot column above its pivot row.
        for i in (0..rows.len()).rev() {
            let p = Self::pivot(&rows[i]).unwrap();
            let (upper, lower) = rows.split_at_mut(i);
            let pivot_row = &lower[0];
            for target in upper.iter_mut() {
                if target[p] == 0 {
                    continue;
                }
                let a = pivot_row[p];
                let b = target[p];
                for k in 0..self.width {
                    target[k] =
                        checked_sub(checked_mul(a, target[k])?, checked_mul(b, pivot_row[k])?)?;
                }
                normalize_row(target);
            }
        }
        Ok(rows)
    }
}

/// Rank of an integer matrix (rows of equal length) over the rationals.
pub fn matrix_rank(rows: &[Vec<i128>]) -> Result<usize, LinAlgError> {
    let width = rows.first().map_or(1, |r| r.len() + 1);
    let mut ech = Echelon::new(width);
    for row in rows {
        let mut aug = row.clone();
        aug.push(0);
        ech.insert(&aug)?;
    }
    Ok(ech.rank())
}
