//! Independent ground-truth computations: the definitional sum over central
//! subsets, the intersection-poset Möbius formula, the deletion–contraction
//! identity, the probabilistic expectation, and the combinatorial sums over
//! forests, graphs and planted graded A-graphs.
//!
//! Everything here is exponential on purpose. These are the oracles the
//! finite-field pipeline is measured against, so they stay as close to the
//! definitions as possible.

use crate::algebra::{characteristic_from_coboundary, BiPoly, UniPoly};
use crate::arrangement::{Arrangement, ArrangementError};
use crate::codes::{pascal, UnionFind};
use crate::families::SlopeSet;
use crate::linalg::{Echelon, LinAlgError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{0} hyperplanes exceed the brute-force cap of {1}")]
    ResourceLimit(usize, usize),
    #[error("flats {0} and {1} are not comparable")]
    NotComparable(usize, usize),
    #[error("deletion-contraction hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
}

/// Limit on the number of hyperplanes for the 2^m subset enumerations.
pub const BRUTEFORCE_CAP: usize = 22;
/// Limit for the 3^m expected-characteristic sum.
pub const EXPECTATION_CAP: usize = 14;
/// Work limit for the graded-graph enumeration.
const PLANTED_WORK_CAP: u128 = 100_000_000;

/// Central-subset counts of an arrangement, indexed by `[rank][size]`.
struct CentralCensus {
    rank: usize,
    counts: Vec<Vec<u64>>,
}

fn central_census(arr: &Arrangement) -> Result<CentralCensus, OracleError> {
    let m = arr.len();
    if m > BRUTEFORCE_CAP {
        return Err(OracleError::ResourceLimit(m, BRUTEFORCE_CAP));
    }
    let rank = arr.arrangement_rank();
    let mut counts = vec![vec![0u64; m + 1]; rank + 1];

    // Depth-first over the subset tree, keeping an incremental echelon
    // state. Centrality is hereditary, so non-central branches are pruned
    // whole: every node visited is exactly one central subset.
    fn recurse(
        arr: &Arrangement,
        counts: &mut Vec<Vec<u64>>,
        state: &Echelon,
        next: usize,
        size: usize,
    ) -> Result<(), LinAlgError> {
        counts[state.rank()][size] += 1;
        for i in next..arr.len() {
            let mut extended = state.clone();
            extended.insert(&arr.hyperplane(i).augmented_row())?;
            if extended.is_consistent() {
                recurse(arr, counts, &extended, i + 1, size + 1)?;
            }
        }
        Ok(())
    }
    let root = Echelon::new(arr.ambient_dim() + 1);
    recurse(arr, &mut counts, &root, 0, 0)?;
    Ok(CentralCensus { rank, counts })
}

/// `χ̄(q,t) = Σ q^{r−r(B)} (t−1)^{|B|}` over all central subsets, by direct
/// enumeration.
pub fn coboundary_bruteforce(arr: &Arrangement) -> Result<BiPoly, OracleError> {
    let census = central_census(arr)?;
    let binom = pascal(arr.len());
    let mut out = BiPoly::zero();
    for (a, row) in census.counts.iter().enumerate() {
        for (s, &count) in row.iter().enumerate() {
            if count == 0 {
                continue;
            }
            // count · q^{r−a} (t−1)^s
            for k in 0..=s {
                let mut c = BigInt::from(count) * &binom[s][k];
                if (s - k) % 2 == 1 {
                    c = -c;
                }
                out.add_term((census.rank - a) as u32, k as u32, &c);
            }
        }
    }
    Ok(out)
}

/// `T(x,y) = Σ (x−1)^{r−r(B)} (y−1)^{|B|−r(B)}` over all central subsets.
pub fn tutte_bruteforce(arr: &Arrangement) -> Result<BiPoly, OracleError> {
    let census = central_census(arr)?;
    let binom = pascal(arr.len().max(census.rank));
    let mut out = BiPoly::zero();
    for (a, row) in census.counts.iter().enumerate() {
        for (s, &count) in row.iter().enumerate() {
            if count == 0 {
                continue;
            }
            let (dx, dy) = (census.rank - a, s - a);
            for i in 0..=dx {
                for j in 0..=dy {
                    let mut c = BigInt::from(count) * &binom[dx][i] * &binom[dy][j];
                    if (dx - i + dy - j) % 2 == 1 {
                        c = -c;
                    }
                    out.add_term(i as u32, j as u32, &c);
                }
            }
        }
    }
    Ok(out)
}

/// One flat of the intersection poset: a nonempty intersection of
/// hyperplanes in canonical reduced-echelon form, with its rank and the set
/// of all hyperplanes containing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flat {
    pub canonical: Vec<Vec<i128>>,
    pub rank: usize,
    pub hyperplanes: u64,
}

impl Flat {
    /// Number of hyperplanes of the arrangement containing this flat.
    pub fn h(&self) -> usize {
        self.hyperplanes.count_ones() as usize
    }
}

/// The intersection poset: all distinct nonempty intersections ordered by
/// reverse inclusion, graded by rank, with the ambient space as bottom
/// element. Möbius values are precomputed for every comparable pair.
#[derive(Debug, Clone)]
pub struct IntersectionPoset {
    flats: Vec<Flat>,
    moebius: Vec<Vec<i64>>,
}

impl IntersectionPoset {
    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn bottom(&self) -> usize {
        0
    }

    /// Reverse inclusion: x ≤ y iff x ⊇ y as subspaces, which for flats is
    /// containment of their hyperplane sets.
    pub fn le(&self, x: usize, y: usize) -> bool {
        self.flats[x].hyperplanes & self.flats[y].hyperplanes == self.flats[x].hyperplanes
    }

    /// μ(x, y) of the poset; `x ≤ y` required.
    pub fn moebius(&self, x: usize, y: usize) -> Result<i64, OracleError> {
        if !self.le(x, y) {
            return Err(OracleError::NotComparable(x, y));
        }
        Ok(self.moebius[x][y])
    }
}

/// Build the intersection poset by enumerating central subsets and
/// deduplicating their canonical forms.
pub fn intersection_poset(arr: &Arrangement) -> Result<IntersectionPoset, OracleError> {
    let m = arr.len();
    if m > BRUTEFORCE_CAP {
        return Err(OracleError::ResourceLimit(m, BRUTEFORCE_CAP));
    }
    assert!(m <= 64, "hyperplane sets are stored as 64-bit masks");

    let mut seen: Vec<(Vec<Vec<i128>>, Echelon)> = Vec::new();
    fn recurse(
        arr: &Arrangement,
        seen: &mut Vec<(Vec<Vec<i128>>, Echelon)>,
        state: &Echelon,
        next: usize,
    ) -> Result<(), LinAlgError> {
        let canonical = state.canonical_form()?;
        if !seen.iter().any(|(c, _)| *c == canonical) {
            seen.push((canonical, state.clone()));
        }
        for i in next..arr.len() {
            let mut extended = state.clone();
            extended.insert(&arr.hyperplane(i).augmented_row())?;
            if extended.is_consistent() {
                recurse(arr, seen, &extended, i + 1)?;
            }
        }
        Ok(())
    }
    let root = Echelon::new(arr.ambient_dim() + 1);
    recurse(arr, &mut seen, &root, 0)?;

    let mut flats = Vec::with_capacity(seen.len());
    for (canonical, state) in seen {
        let mut mask = 0u64;
        for (i, h) in arr.hyperplanes().iter().enumerate() {
            if state.implies(&h.augmented_row())? {
                mask |= 1 << i;
            }
        }
        flats.push(Flat { canonical, rank: state.rank(), hyperplanes: mask });
    }
    flats.sort_by(|a, b| (a.rank, &a.canonical).cmp(&(b.rank, &b.canonical)));
    debug_assert_eq!(flats.iter().filter(|f| f.rank == 0).count(), 1, "unique bottom");

    // μ(x,x) = 1 and Σ_{x ≤ z ≤ y} μ(x,z) = 0, filled in rank order.
    let f = flats.len();
    let le =
        |x: usize, y: usize| flats[x].hyperplanes & flats[y].hyperplanes == flats[x].hyperplanes;
    let mut moebius = vec![vec![0i64; f]; f];
    for x in 0..f {
        moebius[x][x] = 1;
        for y in 0..f {
            if y == x || !le(x, y) {
                continue;
            }
            let mut sum = 0i64;
            for z in 0..f {
                if z != y && le(x, z) && le(z, y) {
                    sum += moebius[x][z];
                }
            }
            moebius[x][y] = -sum;
        }
    }
    Ok(IntersectionPoset { flats, moebius })
}

/// `χ̄(q,t) = Σ_{x ≤ y} μ(x,y) q^{r−r(y)} t^{h(x)}` over comparable flat
/// pairs of the intersection poset.
pub fn coboundary_moebius(arr: &Arrangement) -> Result<BiPoly, OracleError> {
    let poset = intersection_poset(arr)?;
    let r = arr.arrangement_rank();
    let mut out = BiPoly::zero();
    for x in 0..poset.flats().len() {
        for y in 0..poset.flats().len() {
            if !poset.le(x, y) {
                continue;
            }
            let mu = poset.moebius(x, y)?;
            out.add_term(
                (r - poset.flats()[y].rank) as u32,
                poset.flats()[x].h() as u32,
                &BigInt::from(mu),
            );
        }
    }
    Ok(out)
}

/// Outcome of one deletion–contraction check.
#[derive(Debug, Clone)]
pub struct DcReport {
    pub total: BiPoly,
    pub deleted: BiPoly,
    pub contracted: BiPoly,
    pub pass: bool,
}

/// Verify `T_A = T_{A−H} + T_{A/H}` with all three Tutte polynomials
/// computed by brute force. Requires that deleting hyperplane `i` keeps the
/// rank and that `H_i` is not duplicated; otherwise the hypothesis of the
/// identity fails and the check is skipped.
pub fn deletion_contraction_check(arr: &Arrangement, i: usize) -> Result<DcReport, OracleError> {
    let deleted_arr = arr.delete(i)?;
    if deleted_arr.arrangement_rank() != arr.arrangement_rank() {
        return Err(OracleError::HypothesisViolated(format!(
            "deleting hyperplane {i} drops the rank"
        )));
    }
    let contracted_arr = match arr.contract(i) {
        Ok(c) => c,
        Err(ArrangementError::DegenerateContraction(_)) => {
            return Err(OracleError::HypothesisViolated(format!(
                "hyperplane {i} is duplicated; contraction is degenerate"
            )));
        }
        Err(e) => return Err(e.into()),
    };
    let total = tutte_bruteforce(arr)?;
    let deleted = tutte_bruteforce(&deleted_arr)?;
    let contracted = tutte_bruteforce(&contracted_arr)?;
    let pass = total == &deleted + &contracted;
    Ok(DcReport { total, deleted, contracted, pass })
}

/// The expected characteristic polynomial of a random subarrangement where
/// each hyperplane survives independently with probability `1 − t`:
/// `Σ_{C ⊆ A} (1−t)^{|C|} t^{m−|C|} χ_C(q)`, computed by brute force.
/// Equals `q^{n−r} χ̄(q,t)` for every rational t.
pub fn expected_characteristic(arr: &Arrangement, t: &BigRational) -> Result<UniPoly, OracleError> {
    let m = arr.len();
    if m > EXPECTATION_CAP {
        return Err(OracleError::ResourceLimit(m, EXPECTATION_CAP));
    }
    let keep = BigRational::one() - t;
    let mut keep_pow = vec![BigRational::one()];
    let mut drop_pow = vec![BigRational::one()];
    for i in 1..=m {
        keep_pow.push(&keep_pow[i - 1] * &keep);
        drop_pow.push(&drop_pow[i - 1] * t);
    }
    let mut out = UniPoly::zero();
    for mask in 0u64..(1 << m) {
        let indices: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
        let sub = Arrangement::new(
            arr.ambient_dim(),
            indices.iter().map(|&i| arr.hyperplane(i).clone()).collect(),
        )?;
        let chibar = coboundary_bruteforce(&sub)?;
        let chi =
            characteristic_from_coboundary(&chibar, sub.ambient_dim(), sub.arrangement_rank());
        let size = indices.len();
        let weight = &keep_pow[size] * &drop_pow[m - size];
        out = &out + &chi.scale(&weight);
    }
    Ok(out)
}

/// The three combinatorial sums of the deformation theory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CombinatorialKind {
    /// `Σ_F q^{n−e(F)} (t−1)^{e(F)}` over forests on `[n]`: the scaled
    /// coboundary polynomial of a generic deformation.
    Forests,
    /// `Σ_G q^{bc(G)} (t−1)^{e(G)}` over all graphs on `[n]`, where `bc`
    /// counts bipartite components: the scaled coboundary polynomial of the
    /// threshold arrangement.
    AllGraphs,
    /// `Σ_G q^{c(G)} (t−1)^{e(G)}` over planted graded A-graphs on `[n]`:
    /// the scaled coboundary polynomial of the deformation with slope set A.
    PlantedAGraphs(SlopeSet),
}

const COMBINATORIAL_CAP: usize = 6;

pub fn combinatorial_oracle(kind: &CombinatorialKind, n: usize) -> Result<BiPoly, OracleError> {
    if n > COMBINATORIAL_CAP {
        return Err(OracleError::ResourceLimit(n, COMBINATORIAL_CAP));
    }
    match kind {
        CombinatorialKind::Forests => Ok(forest_sum(n)),
        CombinatorialKind::AllGraphs => Ok(graph_sum(n)),
        CombinatorialKind::PlantedAGraphs(slopes) => planted_sum(n, slopes),
    }
}

fn edge_list(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// Expand `Σ counts[a][e] q^a (t−1)^e` into a polynomial.
fn expand_counts(counts: &[Vec<u64>], max_e: usize) -> BiPoly {
    let binom = pascal(max_e);
    let mut out = BiPoly::zero();
    for (a, row) in counts.iter().enumerate() {
        for (e, &count) in row.iter().enumerate() {
            if count == 0 {
                continue;
            }
            for k in 0..=e {
                let mut c = BigInt::from(count) * &binom[e][k];
                if (e - k) % 2 == 1 {
                    c = -c;
                }
                out.add_term(a as u32, k as u32, &c);
            }
        }
    }
    out
}

fn forest_sum(n: usize) -> BiPoly {
    let edges = edge_list(n);
    let mut counts = vec![vec![0u64; edges.len() + 1]; n + 1];
    for mask in 0u64..(1 << edges.len()) {
        let mut uf = UnionFind::new(n);
        let mut forest = true;
        let mut e = 0;
        for (idx, &(i, j)) in edges.iter().enumerate() {
            if mask >> idx & 1 == 1 {
                if !uf.union(i, j) {
                    forest = false;
                    break;
                }
                e += 1;
            }
        }
        if forest {
            counts[n - e][e] += 1;
        }
    }
    expand_counts(&counts, edges.len())
}

fn graph_sum(n: usize) -> BiPoly {
    let edges = edge_list(n);
    let mut counts = vec![vec![0u64; edges.len() + 1]; n + 1];
    for mask in 0u64..(1 << edges.len()) {
        let chosen: Vec<(usize, usize)> = edges
            .iter()
            .enumerate()
            .filter(|(idx, _)| mask >> idx & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let bc = bipartite_component_count(n, &chosen);
        counts[bc][chosen.len()] += 1;
    }
    expand_counts(&counts, edges.len())
}

/// Number of connected components that are bipartite; isolated vertices
/// count as bipartite components.
fn bipartite_component_count(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut adj = vec![Vec::new(); n];
    for &(i, j) in edges {
        adj[i].push(j);
        adj[j].push(i);
    }
    let mut color = vec![None::<bool>; n];
    let mut bc = 0;
    for start in 0..n {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(false);
        let mut queue = vec![start];
        let mut bipartite = true;
        while let Some(v) = queue.pop() {
            for &w in &adj[v] {
                match color[w] {
                    None => {
                        color[w] = Some(!color[v].unwrap());
                        queue.push(w);
                    }
                    Some(c) => {
                        if c == color[v].unwrap() {
                            bipartite = false;
                        }
                    }
                }
            }
        }
        if bipartite {
            bc += 1;
        }
    }
    bc
}

fn planted_sum(n: usize, slopes: &SlopeSet) -> Result<BiPoly, OracleError> {
    let edges = edge_list(n);
    // Planted graphs have every vertex within n−1 edges of level 0, so
    // heights never exceed (n−1)·max(−a_1, a_k).
    let max_h = if n == 0 { 0 } else { (n as i64 - 1) * slopes.height_factor() };
    let levels = (max_h + 1) as u128;
    let work = levels
        .checked_pow(n as u32)
        .and_then(|l| l.checked_mul(1 << edges.len()))
        .filter(|&w| w <= PLANTED_WORK_CAP);
    if work.is_none() {
        return Err(OracleError::ResourceLimit(n, COMBINATORIAL_CAP));
    }

    let mut counts = vec![vec![0u64; edges.len() + 1]; n + 1];
    if n == 0 {
        counts[0][0] = 1;
        return Ok(expand_counts(&counts, 0));
    }
    let mut heights = vec![0i64; n];
    loop {
        let allowed: Vec<(usize, usize)> = edges
            .iter()
            .filter(|&&(i, j)| slopes.slopes().contains(&(heights[i] - heights[j])))
            .copied()
            .collect();
        for mask in 0u64..(1 << allowed.len()) {
            let mut uf = UnionFind::new(n);
            let mut e = 0;
            for (idx, &(i, j)) in allowed.iter().enumerate() {
                if mask >> idx & 1 == 1 {
                    uf.union(i, j);
                    e += 1;
                }
            }
            // Planted: every component, isolated vertices included, must
            // touch level 0.
            let mut min_height = vec![i64::MAX; n];
            for v in 0..n {
                let root = uf.find(v);
                min_height[root] = min_height[root].min(heights[v]);
            }
            let planted = (0..n).all(|v| uf.find(v) != v || min_height[v] == 0);
            if planted {
                counts[uf.component_count()][e] += 1;
            }
        }
        // next height vector
        let mut done = true;
        for digit in heights.iter_mut().rev() {
            *digit += 1;
            if *digit <= max_h {
                done = false;
                break;
            }
            *digit = 0;
        }
        if done {
            break;
        }
    }
    Ok(expand_counts(&counts, edges.len()))
}
