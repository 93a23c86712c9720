//! Graph colorings and linear codes: the two classical specializations of
//! the finite-field point count.
//!
//! For a graph, points of `F_q^n` are q-colorings and the incidence
//! statistic is the number of monochromatic edges. For a linear code, points
//! of `F_q^r` are codewords and the statistic complements the Hamming
//! weight, which is Greene's theorem.

use crate::algebra::{AlgebraError, BiPoly, UniPoly};
use crate::finite_field::is_prime;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodesError {
    #[error("enumeration of {0} points exceeds the budget of {1}")]
    ResourceLimit(u128, u128),
    #[error("edge ({0}, {1}) is not a valid simple-graph edge")]
    InvalidEdge(usize, usize),
    #[error("column {0} of the generator matrix is zero")]
    ZeroColumn(usize),
    #[error("generator matrix does not have full row rank")]
    NotFullRank,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("generator matrix rows must all have length {0}")]
    RaggedRows(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Enumeration cap for colorings and codewords.
pub const ENUMERATION_BUDGET: u128 = 100_000_000;

/// A simple graph on vertices `0..n` (no loops, no multi-edges).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    /// Edges are normalized to `i < j`, sorted and deduplicated.
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, CodesError> {
        let mut norm = Vec::new();
        for (a, b) in edges {
            if a == b || a >= n || b >= n {
                return Err(CodesError::InvalidEdge(a, b));
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        norm.dedup();
        Ok(SimpleGraph { n, edges: norm })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        SimpleGraph::new(n, edges).unwrap()
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.n);
        for &(a, b) in &self.edges {
            uf.union(a, b);
        }
        uf.component_count()
    }
}

/// Plain union-find, used for component counting and forest detection.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    components: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), components: n }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if the two vertices were already connected.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        self.components -= 1;
        true
    }

    pub fn component_count(&self) -> usize {
        self.components
    }
}

/// `Σ_κ t^{mono(κ)}` over all q-colorings κ of the graph, where `mono`
/// counts monochromatic edges. Equals `q^c · χ̄_G(q, t)` for a graph with
/// `c` components.
pub fn coloring_polynomial(g: &SimpleGraph, q: u64) -> Result<UniPoly, CodesError> {
    assert!(q >= 1, "need at least one color");
    let points = (q as u128).checked_pow(g.n as u32).filter(|&p| p <= ENUMERATION_BUDGET);
    let points = points.ok_or(CodesError::ResourceLimit(u128::MAX, ENUMERATION_BUDGET))?;

    let mut counts = vec![0u64; g.edges.len() + 1];
    let mut coloring = vec![0u64; g.n];
    for _ in 0..points {
        let mono = g.edges.iter().filter(|&&(a, b)| coloring[a] == coloring[b]).count();
        counts[mono] += 1;
        for digit in coloring.iter_mut().rev() {
            *digit += 1;
            if *digit < q {
                break;
            }
            *digit = 0;
        }
    }
    Ok(counts_to_poly(&counts))
}

fn counts_to_poly(counts: &[u64]) -> UniPoly {
    UniPoly::new(counts.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect())
}

/// A full-row-rank generator matrix of an `[n, r]` linear code over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGenerator", into = "RawGenerator")]
pub struct GeneratorMatrix {
    p: u64,
    rows: Vec<Vec<u64>>,
}

/// Wire format: `{"p": 2, "rows": [[1,1,1]]}`.
#[derive(Serialize, Deserialize)]
struct RawGenerator {
    p: u64,
    rows: Vec<Vec<u64>>,
}

impl TryFrom<RawGenerator> for GeneratorMatrix {
    type Error = CodesError;
    fn try_from(raw: RawGenerator) -> Result<Self, Self::Error> {
        GeneratorMatrix::new(raw.p, raw.rows)
    }
}

impl From<GeneratorMatrix> for RawGenerator {
    fn from(g: GeneratorMatrix) -> Self {
        RawGenerator { p: g.p, rows: g.rows }
    }
}

impl GeneratorMatrix {
    pub fn new(p: u64, rows: Vec<Vec<u64>>) -> Result<Self, CodesError> {
        if !is_prime(p) {
            return Err(CodesError::NotPrime(p));
        }
        let n = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != n) {
            return Err(CodesError::RaggedRows(n));
        }
        let rows: Vec<Vec<u64>> =
            rows.into_iter().map(|r| r.into_iter().map(|v| v % p).collect()).collect();
        let r = rows.len();
        if rank_mod_p(rows.clone(), p) != r {
            return Err(CodesError::NotFullRank);
        }
        Ok(GeneratorMatrix { p, rows })
    }

    pub fn field_size(&self) -> u64 {
        self.p
    }

    /// Code dimension r (number of rows).
    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    /// Code length n (number of columns).
    pub fn length(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    fn column(&self, j: usize) -> Vec<u64> {
        self.rows.iter().map(|r| r[j]).collect()
    }
}

/// Row rank of a matrix over F_p. Consumes the rows; entries are assumed
/// reduced mod p.
fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let pw = p as u128;
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = mod_inverse(rows[rank][col], p) as u128;
        for i in 0..rows.len() {
            if i == rank || rows[i][col] == 0 {
                continue;
            }
            let factor = rows[i][col] as u128 * inv % pw;
            for c in col..ncols {
                let sub = factor * rows[rank][c] as u128 % pw;
                rows[i][c] = ((rows[i][c] as u128 + pw - sub) % pw) as u64;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p is prime and a ≢ 0, so Fermat works.
    crate::finite_field::mod_pow(a % p, p - 2, p)
}

/// The codeweight polynomial `A(C, q, t) = Σ_{v ∈ C} t^{w(v)}`, where `w`
/// is the Hamming weight, by enumerating all `p^r` codewords.
pub fn codeweight_polynomial(gen: &GeneratorMatrix) -> Result<UniPoly, CodesError> {
    let p = gen.p;
    let r = gen.dimension();
    let n = gen.length();
    let words = (p as u128).checked_pow(r as u32).filter(|&w| w <= ENUMERATION_BUDGET);
    let words = words.ok_or(CodesError::ResourceLimit(u128::MAX, ENUMERATION_BUDGET))?;

    let mut counts = vec![0u64; n + 1];
    let mut coeffs = vec![0u64; r];
    let mut word = vec![0u64; n];
    for _ in 0..words {
        let weight = word.iter().filter(|&&v| v != 0).count();
        counts[weight] += 1;
        // advance the coefficient odometer, updating the codeword in place
        for i in (0..r).rev() {
            for (w, &g) in word.iter_mut().zip(&gen.rows[i]) {
                *w = (*w + g) % p;
            }
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
        }
    }
    Ok(counts_to_poly(&counts))
}

/// Coboundary polynomial of the column matroid of the generator matrix:
/// `χ̄(q,t) = Σ_{B ⊆ columns} q^{r − rk(B)} (t−1)^{|B|}` with ranks taken
/// over F_p. Every subset is central (all hyperplanes pass through the
/// origin), so this is a plain sum over all column subsets.
pub fn code_matroid_coboundary(gen: &GeneratorMatrix) -> Result<BiPoly, CodesError> {
    let n = gen.length();
    let r = gen.dimension();
    for j in 0..n {
        if gen.column(j).iter().all(|&v| v == 0) {
            return Err(CodesError::ZeroColumn(j));
        }
    }
    assert!(n < 64, "column subsets are enumerated by mask");
    // counts[rank][size]
    let mut counts = vec![vec![0u64; n + 1]; r + 1];
    for mask in 0u64..(1 << n) {
        let cols: Vec<Vec<u64>> =
            (0..n).filter(|&j| mask >> j & 1 == 1).map(|j| gen.column(j)).collect();
        let size = cols.len();
        let rank = rank_mod_p(cols, gen.p);
        counts[rank][size] += 1;
    }
    let mut chibar = BiPoly::zero();
    let binom = pascal(n);
    for (rank, row) in counts.iter().enumerate() {
        for (size, &count) in row.iter().enumerate() {
            if count == 0 {
                continue;
            }
            // count · q^{r − rank} · (t−1)^size
            for k in 0..=size {
                let mut c = BigInt::from(count) * &binom[size][k];
                if (size - k) % 2 == 1 {
                    c = -c;
                }
                chibar.add_term((r - rank) as u32, k as u32, &c);
            }
        }
    }
    Ok(chibar)
}

pub(crate) fn pascal(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for i in 1..=n {
        let prev = &rows[i - 1];
        let mut row = vec![BigInt::one()];
        for k in 1..i {
            row.push(&prev[k - 1] + &prev[k]);
        }
        row.push(BigInt::one());
        rows.push(row);
    }
    rows
}

/// Outcome of a Greene's-theorem check: the codeweight polynomial versus
/// `t^n χ̄_{M_C}(q, 1/t)` at `q = p`.
#[derive(Debug, Clone)]
pub struct GreeneReport {
    pub weight_enumerator: UniPoly,
    pub from_coboundary: UniPoly,
    pub pass: bool,
}

/// Greene's theorem: `A(C, q, t) = t^n χ̄_{M_C}(q, 1/t)` with `q` the field
/// size. Since `deg_t χ̄ ≤ n`, the right side expands to a genuine
/// polynomial; both sides are compared exactly.
pub fn greene_check(gen: &GeneratorMatrix) -> Result<GreeneReport, CodesError> {
    let n = gen.length();
    let chibar = code_matroid_coboundary(gen)?;
    let lhs = codeweight_polynomial(gen)?;

    let at_p = chibar.eval_first(&BigInt::from(gen.p));
    let deg = at_p.degree().unwrap_or(0);
    assert!(deg <= n, "coboundary t-degree exceeds the code length");
    let mut reversed = vec![BigRational::zero(); n + 1];
    for (j, c) in at_p.coeffs().iter().enumerate() {
        reversed[n - j] = c.clone();
    }
    let rhs = UniPoly::new(reversed);

    let pass = lhs == rhs;
    Ok(GreeneReport { weight_enumerator: lhs, from_coboundary: rhs, pass })
}
