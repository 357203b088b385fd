//! Transversal matroids from bipartite presentations, their duals, multi-path
//! presentations and the family `Psi(n, s)`.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::matroid::Matroid;
use crate::subset::{sigma, wrap, GroundSet, Subset};

/// Neighbourhoods `N(1), .., N(m)` of the vertices `[m]` in a bipartite
/// graph whose other part is the ground set `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BipartitePresentation {
    n: usize,
    neighborhoods: Vec<Subset>,
}

impl BipartitePresentation {
    pub fn new(n: usize, neighborhoods: Vec<Subset>) -> Result<Self> {
        if n == 0 || n > crate::subset::MAX_ELEMENTS {
            return Err(invalid(format!("ground set size {n} out of range")));
        }
        if neighborhoods.is_empty() {
            return Err(invalid("a presentation needs at least one set"));
        }
        let full = Subset::full(n);
        if let Some(bad) = neighborhoods.iter().find(|s| !s.is_subset_of(full)) {
            return Err(invalid(format!("neighbourhood {bad} leaves the ground set")));
        }
        Ok(BipartitePresentation { n, neighborhoods })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.neighborhoods.len()
    }

    pub fn neighborhoods(&self) -> &[Subset] {
        &self.neighborhoods
    }

    /// `N(J)` for a set `J` of zero-based vertex indices.
    pub fn neighborhood_of(&self, vertices: impl IntoIterator<Item = usize>) -> Subset {
        vertices
            .into_iter()
            .fold(Subset::EMPTY, |acc, i| acc | self.neighborhoods[i])
    }

    /// Elements in no neighbourhood. These are the loops of the transversal
    /// matroid.
    pub fn uncovered(&self) -> Subset {
        Subset::full(self.n) - self.neighborhood_of(0..self.m())
    }

    /// Vertices with an empty neighbourhood.
    pub fn empty_vertices(&self) -> Vec<usize> {
        (0..self.m())
            .filter(|&i| self.neighborhoods[i].is_empty())
            .collect()
    }
}

/// A maximum matching of `[m]` into `E - avoid`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchingResult {
    pub size: usize,
    /// `matching[i]` is the element matched to vertex `i` (both zero-based).
    pub matching: Vec<Option<usize>>,
    /// When the matching is not complete: the vertices reachable by
    /// alternating paths from unmatched vertices. This set `J` maximises
    /// `|J| - |N(J) - avoid|`.
    pub deficiency_witness: Option<Vec<usize>>,
}

impl MatchingResult {
    pub fn is_complete(&self) -> bool {
        self.deficiency_witness.is_none()
    }

    /// The matched elements.
    pub fn covered(&self) -> Subset {
        self.matching.iter().flatten().copied().collect()
    }
}

fn try_augment(
    p: &BipartitePresentation,
    allowed: Subset,
    v: usize,
    seen: &mut Subset,
    owner: &mut [Option<usize>; 64],
    matching: &mut [Option<usize>],
) -> bool {
    for e in (p.neighborhoods[v] & allowed).iter() {
        if seen.contains(e) {
            continue;
        }
        *seen = seen.with(e);
        let free = match owner[e] {
            None => true,
            Some(u) => try_augment(p, allowed, u, seen, owner, matching),
        };
        if free {
            owner[e] = Some(v);
            matching[v] = Some(e);
            return true;
        }
    }
    false
}

/// Maximum matching of `[m]` into `E - avoid` by augmenting paths, with a
/// Hall deficiency certificate when the matching is not complete.
pub fn max_matching(p: &BipartitePresentation, avoid: Subset) -> MatchingResult {
    let allowed = Subset::full(p.n) - avoid;
    let m = p.m();
    let mut owner = [None; 64];
    let mut matching = vec![None; m];
    let mut size = 0;
    for v in 0..m {
        let mut seen = Subset::EMPTY;
        if try_augment(p, allowed, v, &mut seen, &mut owner, &mut matching) {
            size += 1;
        }
    }
    let deficiency_witness = (size < m).then(|| {
        let mut reached = vec![false; m];
        let mut queue: VecDeque<usize> = (0..m).filter(|&v| matching[v].is_none()).collect();
        for &v in &queue {
            reached[v] = true;
        }
        while let Some(v) = queue.pop_front() {
            for e in (p.neighborhoods[v] & allowed).iter() {
                if let Some(u) = owner[e] {
                    if !reached[u] {
                        reached[u] = true;
                        queue.push_back(u);
                    }
                }
            }
        }
        (0..m).filter(|&v| reached[v]).collect()
    });
    MatchingResult {
        size,
        matching,
        deficiency_witness,
    }
}

/// `M[P]`: `X` is independent when it can be matched into `[m]`.
pub fn transversal_matroid(p: &BipartitePresentation) -> Result<Matroid> {
    let p = p.clone();
    let name = format!("M[{} sets on {}]", p.m(), p.n());
    Ok(Matroid::new(GroundSet::new(p.n)?, name, move |x: Subset| {
        let avoid = Subset::full(p.n) - x;
        max_matching(&p, avoid).size == x.len()
    }))
}

/// `M*[P]`: `X` is independent when `E - X` still supports a matching of
/// maximum size. When `M[P]` has rank `m` this is the complete matching
/// condition.
pub fn dual_transversal(p: &BipartitePresentation) -> Result<Matroid> {
    let p = p.clone();
    let nu = max_matching(&p, Subset::EMPTY).size;
    let name = format!("M*[{} sets on {}]", p.m(), p.n());
    Ok(Matroid::new(GroundSet::new(p.n)?, name, move |x: Subset| {
        max_matching(&p, x).size == nu
    }))
}

/// A presentation whose sets are cyclic intervals `sigma(x_i, y_i)` of the
/// natural order on `[n]` forming an antichain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiPathPresentation {
    base: BipartitePresentation,
    /// One-based interval endpoints.
    x: Vec<usize>,
    y: Vec<usize>,
}

/// `e_a` lies in `sigma(lo, hi)`.
fn in_sigma(n: usize, a: usize, lo: usize, hi: usize) -> bool {
    sigma(n, lo as i64, hi as i64).contains(a - 1)
}

impl MultiPathPresentation {
    /// Builds the presentation from one-based endpoint pairs `(x_i, y_i)`.
    pub fn new(n: usize, endpoints: &[(usize, usize)]) -> Result<Self> {
        let m = endpoints.len();
        if m < 2 {
            return Err(invalid("a multi-path presentation needs at least two intervals"));
        }
        if endpoints
            .iter()
            .any(|&(a, b)| a == 0 || b == 0 || a > n || b > n)
        {
            return Err(invalid("interval endpoints must lie in 1..=n"));
        }
        let x: Vec<usize> = endpoints.iter().map(|e| e.0).collect();
        let y: Vec<usize> = endpoints.iter().map(|e| e.1).collect();
        for ends in [&x, &y] {
            let mut sorted = ends.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != m {
                return Err(invalid("interval endpoints must be distinct"));
            }
        }
        // Cyclic monotonicity. For m = 2 the condition asks e_{x_1} to lie
        // in the single-element interval at x_2, which distinctness rules
        // out; the check is meaningful from m = 3 on.
        if m >= 3 {
            for i in 0..m {
                let (prev, next) = ((i + m - 1) % m, (i + 1) % m);
                if !in_sigma(n, x[i], x[prev], x[next]) || !in_sigma(n, y[i], y[prev], y[next]) {
                    return Err(invalid(format!(
                        "interval {} breaks the cyclic order of endpoints",
                        i + 1
                    )));
                }
            }
        }
        let sets: Vec<Subset> = (0..m)
            .map(|i| sigma(n, x[i] as i64, y[i] as i64))
            .collect();
        for a in 0..m {
            for b in 0..m {
                if a != b && sets[a].is_subset_of(sets[b]) {
                    return Err(invalid(format!(
                        "interval {} is contained in interval {}",
                        a + 1,
                        b + 1
                    )));
                }
            }
        }
        Ok(MultiPathPresentation {
            base: BipartitePresentation::new(n, sets)?,
            x,
            y,
        })
    }

    pub fn base(&self) -> &BipartitePresentation {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.base.n
    }

    pub fn m(&self) -> usize {
        self.base.m()
    }

    pub fn x(&self, i: usize) -> usize {
        self.x[i - 1]
    }

    pub fn y(&self, i: usize) -> usize {
        self.y[i - 1]
    }

    /// One-based vertex interval `[i, j]` of `[m]`, cyclically.
    pub fn vertex_interval(&self, i: usize, j: usize) -> Vec<usize> {
        let m = self.m();
        let len = (j + m - i) % m + 1;
        (0..len).map(|k| (i - 1 + k) % m + 1).collect()
    }

    /// `N([i, j])` with one-based `i`, `j`.
    pub fn union_over(&self, i: usize, j: usize) -> Subset {
        self.base
            .neighborhood_of(self.vertex_interval(i, j).into_iter().map(|v| v - 1))
    }

    /// Union of the `k` consecutive intervals starting at interval `i`.
    pub fn consecutive_union(&self, i: usize, k: usize) -> Subset {
        let m = self.m();
        self.base
            .neighborhood_of((0..k).map(|d| (i - 1 + d) % m))
    }

    pub fn dual_matroid(&self) -> Result<Matroid> {
        dual_transversal(&self.base)
    }
}

/// `G(n, s)`: `N(i) = {e_{2i-1}, .., e_{2i+s-2}}` for `i` in `[n/2]`.
pub fn psi_presentation(n: usize, s: usize) -> Result<MultiPathPresentation> {
    check_psi_params(n, s)?;
    let endpoints: Vec<(usize, usize)> = (1..=n / 2)
        .map(|i| (2 * i - 1, wrap(n, (2 * i + s - 2) as i64)))
        .collect();
    MultiPathPresentation::new(n, &endpoints)
}

fn check_psi_params(n: usize, s: usize) -> Result<()> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(invalid(format!("n = {n} must be a positive even integer")));
    }
    if s < 2 {
        return Err(invalid(format!("s = {s} must be at least 2")));
    }
    if n + 2 < 2 * s {
        return Err(invalid(format!(
            "n = {n} is below 2s - 2 = {}; the intervals would wrap onto themselves",
            2 * s - 2
        )));
    }
    if n > crate::subset::MAX_ELEMENTS {
        return Err(invalid(format!("n = {n} exceeds {}", crate::subset::MAX_ELEMENTS)));
    }
    Ok(())
}

/// `Psi(n, s)`, the dual of the transversal matroid of `G(n, s)`.
pub fn psi(n: usize, s: usize) -> Result<Matroid> {
    let p = psi_presentation(n, s)?;
    let base = p.base().clone();
    let m = base.m();
    Ok(Matroid::new(
        GroundSet::new(n)?,
        format!("Psi({n},{s})"),
        move |x: Subset| max_matching(&base, x).size == m,
    ))
}

/// Interval-count description of the bases of `Psi(n, s)`: `|X| = n/2` and
/// `|X ∩ sigma(i, i+s-1+2k)| < s+k` for every odd `i` and
/// `0 <= k <= n/2 - s`.
pub fn psi_basis_characterization(n: usize, s: usize, x: Subset) -> Result<bool> {
    check_psi_params(n, s)?;
    if x.len() != n / 2 {
        return Ok(false);
    }
    let kmax = (n / 2) as i64 - s as i64;
    for i in (1..=n as i64).step_by(2) {
        for k in 0..=kmax {
            let w = sigma(n, i, i + s as i64 - 1 + 2 * k);
            if (x & w).len() as i64 >= s as i64 + k {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The self-duality map of `Psi(n, s)` as a zero-based element permutation:
/// the identity for even `s` and `e_i -> e_{i+1}` for odd `s`.
pub fn phi_map(n: usize, s: usize) -> Result<Vec<usize>> {
    check_psi_params(n, s)?;
    Ok(if s.is_multiple_of(2) {
        (0..n).collect()
    } else {
        (0..n).map(|i| (i + 1) % n).collect()
    })
}

pub fn apply_permutation(perm: &[usize], x: Subset) -> Subset {
    x.iter().map(|i| perm[i]).collect()
}

/// Shape of a circuit of a multi-path dual.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CircuitClass {
    /// `|C| = |E| - m + 1`.
    Spanning,
    /// `C` sits inside `N([i, j]) = sigma(x_i, y_j)` with the boundary and
    /// closure properties; `i`, `j` are one-based.
    Interval { i: usize, j: usize },
    /// Neither description applies.
    Unclassified,
}

/// Checks the five interval properties for the vertex interval `[i, j]`.
pub fn interval_properties_hold(
    p: &MultiPathPresentation,
    dual: &Matroid,
    c: Subset,
    i: usize,
    j: usize,
) -> bool {
    let n = p.n();
    let nij = p.union_over(i, j);
    let span = sigma(n, p.x(i) as i64, p.y(j) as i64);
    if nij != span {
        return false;
    }
    let width = p.vertex_interval(i, j).len();
    if !c.is_subset_of(nij) || c.len() + width != nij.len() + 1 {
        return false;
    }
    if i != j {
        let m = p.m();
        let next_i = i % m + 1;
        let prev_j = (j + m - 2) % m + 1;
        if !(nij - p.union_over(next_i, j)).is_subset_of(c) {
            return false;
        }
        if !(nij - p.union_over(i, prev_j)).is_subset_of(c) {
            return false;
        }
    }
    span.is_subset_of(dual.closure(c))
}

/// Classifies a circuit of `M*[P]`. `dual` must be `p.dual_matroid()` (or a
/// matroid with the same independent sets).
pub fn classify_circuit(
    p: &MultiPathPresentation,
    dual: &Matroid,
    c: Subset,
) -> Result<CircuitClass> {
    if dual.n() != p.n() {
        return Err(crate::error::Error::GroundMismatch {
            left: p.n(),
            right: dual.n(),
        });
    }
    if !dual.is_circuit(c) {
        return Err(invalid(format!("{c} is not a circuit")));
    }
    if c.len() == p.n() - p.m() + 1 {
        return Ok(CircuitClass::Spanning);
    }
    let m = p.m();
    for i in 1..=m {
        for j in 1..=m {
            if interval_properties_hold(p, dual, c, i, j) {
                return Ok(CircuitClass::Interval { i, j });
            }
        }
    }
    Ok(CircuitClass::Unclassified)
}

/// For a circuit `C`, every vertex set `J` with `|N(J) - C| < |J|` has
/// `C ⊆ N(J)` and `|C| = |N(J)| - |J| + 1`. Returns the offending `J`
/// (zero-based) if any.
pub fn deficient_set_violation(p: &BipartitePresentation, c: Subset) -> Option<Vec<usize>> {
    let m = p.m();
    for bits in 1u64..(1u64 << m) {
        let j = Subset::from_bits(bits);
        let nj = p.neighborhood_of(j.iter());
        if (nj - c).len() < j.len() && !(c.is_subset_of(nj) && c.len() + j.len() == nj.len() + 1) {
            return Some(j.to_vec());
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Maximum matching size from the Hall deficiency formula:
    /// `m - max_J (|J| - |N(J) - avoid|)`.
    fn hall_matching_size(p: &BipartitePresentation, avoid: Subset) -> usize {
        let m = p.m();
        let mut worst = 0i64;
        for bits in 0u64..(1u64 << m) {
            let j = Subset::from_bits(bits);
            let nj = p.neighborhood_of(j.iter()) - avoid;
            worst = worst.max(j.len() as i64 - nj.len() as i64);
        }
        (m as i64 - worst) as usize
    }

    #[test]
    fn deficiency_witness_on_first_window() {
        let p = psi_presentation(8, 3).unwrap();
        let r = max_matching(p.base(), Subset::from_one_based([1, 2, 3]));
        assert_eq!(r.size, 3);
        assert_eq!(r.deficiency_witness, Some(vec![0]));
        let full = max_matching(p.base(), Subset::EMPTY);
        assert_eq!(full.size, 4);
        assert!(full.is_complete());
    }

    #[test]
    fn two_block_complement_has_no_complete_matching() {
        let p = psi_presentation(12, 4).unwrap();
        let r = max_matching(p.base(), Subset::from_one_based([1, 2, 3, 4, 5]));
        assert!(r.size < 6);
        let j = r.deficiency_witness.unwrap();
        let nj = p.base().neighborhood_of(j.iter().copied()) - Subset::from_one_based([1, 2, 3, 4, 5]);
        assert!(nj.len() < j.len());
    }

    #[test]
    fn transversal_examples() {
        let p = psi_presentation(12, 4).unwrap();
        assert_eq!(transversal_matroid(p.base()).unwrap().full_rank(), 6);
        let single = BipartitePresentation::new(5, vec![Subset::full(5)]).unwrap();
        let t = transversal_matroid(&single).unwrap();
        assert_eq!(t.full_rank(), 1);
        assert_eq!(t.circuits().unwrap().len(), 10);
        let pairs = BipartitePresentation::new(
            6,
            vec![
                Subset::from_one_based([1, 2]),
                Subset::from_one_based([3, 4]),
                Subset::from_one_based([5, 6]),
            ],
        )
        .unwrap();
        let c = transversal_matroid(&pairs).unwrap();
        assert_eq!(c.circuits().unwrap().len(), 3);
        assert!(c.circuits().unwrap().iter().all(|s| s.len() == 2));
    }

    #[test]
    fn psi_ranks_and_small_circuits() {
        let m = psi(8, 3).unwrap();
        assert_eq!(m.full_rank(), 4);
        assert_eq!(m.rank(Subset::from_one_based([1, 2, 3])), 2);
        assert_eq!(
            m.closure(Subset::from_one_based([1, 2])),
            Subset::from_one_based([1, 2, 3])
        );
        let circuits = m.circuits().unwrap();
        for w in [[1, 2, 3], [3, 4, 5], [5, 6, 7], [7, 8, 1]] {
            assert!(circuits.contains(Subset::from_one_based(w)));
        }
        // Sizes are s + k for interval circuits spanning k + 1 consecutive
        // sets, or |E| - m + 1 = 5.
        let mut sizes: Vec<usize> = circuits.iter().map(|c| c.len()).collect();
        sizes.dedup();
        assert_eq!(sizes, vec![3, 4, 5]);
        assert_eq!(circuits.of_size(4).count(), 4);
        assert!(circuits.contains(Subset::from_one_based([1, 2, 4, 5])));
        assert_eq!(psi(12, 4).unwrap().full_rank(), 6);
    }

    #[test]
    fn psi_two_is_sum_of_parallel_pairs() {
        let m = psi(8, 2).unwrap();
        let pairs: Vec<Subset> = (0..4)
            .map(|i| Subset::from_indices([2 * i, 2 * i + 1]))
            .collect();
        assert_eq!(m.circuits().unwrap().sets(), pairs.as_slice());
    }

    #[test]
    fn psi_rejects_bad_parameters() {
        assert!(psi(7, 3).is_err());
        assert!(psi(8, 1).is_err());
        assert!(psi(6, 5).is_err());
        assert!(psi(6, 4).is_ok());
    }

    #[test]
    fn dual_transversal_matches_dual_of_transversal() {
        for (n, s) in [(8, 3), (8, 4), (10, 3)] {
            let p = psi_presentation(n, s).unwrap();
            let a = dual_transversal(p.base()).unwrap();
            let b = transversal_matroid(p.base()).unwrap().dual();
            assert!(a.same_independent_sets(&b).unwrap());
            assert!(a.same_independent_sets(&psi(n, s).unwrap()).unwrap());
        }
    }

    #[test]
    fn dual_transversal_without_full_rank() {
        // N(1) = N(2) = {e1}: M[P] has rank 1, so the dual has rank 2.
        let p = BipartitePresentation::new(
            3,
            vec![Subset::from_one_based([1]), Subset::from_one_based([1])],
        )
        .unwrap();
        let a = dual_transversal(&p).unwrap();
        let b = transversal_matroid(&p).unwrap().dual();
        assert!(a.same_independent_sets(&b).unwrap());
        assert_eq!(a.full_rank(), 2);
    }

    #[test]
    fn basis_characterization_examples() {
        assert!(psi_basis_characterization(8, 3, Subset::from_one_based([1, 3, 5, 7])).unwrap());
        assert!(!psi_basis_characterization(8, 3, Subset::from_one_based([1, 2, 3, 5])).unwrap());
        let m = psi(12, 4).unwrap();
        for bits in 0u64..(1 << 12) {
            let x = Subset::from_bits(bits);
            assert_eq!(psi_basis_characterization(12, 4, x).unwrap(), m.is_basis(x), "{x}");
        }
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_map(8, 4).unwrap(), (0..8).collect::<Vec<_>>());
        assert_eq!(phi_map(8, 3).unwrap(), vec![1, 2, 3, 4, 5, 6, 7, 0]);
        let m = psi(10, 3).unwrap();
        let phi = phi_map(10, 3).unwrap();
        let mut inverse = vec![0; 10];
        for (i, &p) in phi.iter().enumerate() {
            inverse[p] = i;
        }
        for b in m.bases().unwrap() {
            let image = apply_permutation(&inverse, b.complement(10));
            assert!(m.is_basis(image), "{b}");
        }
    }

    #[test]
    fn classification_examples() {
        let p = psi_presentation(8, 3).unwrap();
        let m = p.dual_matroid().unwrap();
        assert_eq!(
            classify_circuit(&p, &m, Subset::from_one_based([1, 2, 3])).unwrap(),
            CircuitClass::Interval { i: 1, j: 1 }
        );
        for c in m.circuits().unwrap().of_size(5) {
            assert_eq!(classify_circuit(&p, &m, c).unwrap(), CircuitClass::Spanning);
        }
        assert!(classify_circuit(&p, &m, Subset::from_one_based([1, 2])).is_err());
    }

    #[test]
    fn every_circuit_classifies() {
        for (n, s) in [(10, 3), (12, 5)] {
            let p = psi_presentation(n, s).unwrap();
            let m = p.dual_matroid().unwrap();
            for c in m.circuits().unwrap().iter() {
                let class = classify_circuit(&p, &m, c).unwrap();
                assert_ne!(class, CircuitClass::Unclassified, "{c}");
                assert!(deficient_set_violation(p.base(), c).is_none());
            }
        }
    }

    #[test]
    fn multipath_validation() {
        assert!(MultiPathPresentation::new(6, &[(1, 3), (1, 4)]).is_err());
        assert!(MultiPathPresentation::new(6, &[(1, 4), (2, 3)]).is_err());
        assert!(MultiPathPresentation::new(6, &[(1, 2), (5, 6), (3, 4)]).is_err());
        let p = MultiPathPresentation::new(6, &[(1, 2), (3, 4), (5, 6)]).unwrap();
        assert_eq!(p.dual_matroid().unwrap().full_rank(), 3);
    }

    proptest! {
        #[test]
        fn matching_size_matches_hall_deficiency(
            sets in proptest::collection::vec(1u64..256, 1..6),
            avoid in 0u64..256,
        ) {
            let p = BipartitePresentation::new(
                8,
                sets.into_iter().map(Subset::from_bits).collect(),
            ).unwrap();
            let avoid = Subset::from_bits(avoid);
            let r = max_matching(&p, avoid);
            prop_assert_eq!(r.size, hall_matching_size(&p, avoid));
            let used: Vec<usize> = r.matching.iter().flatten().copied().collect();
            prop_assert_eq!(used.len(), r.size);
            prop_assert_eq!(r.covered().len(), r.size);
            for (v, e) in r.matching.iter().enumerate() {
                if let Some(e) = e {
                    prop_assert!(p.neighborhoods()[v].contains(*e) && !avoid.contains(*e));
                }
            }
            if let Some(j) = &r.deficiency_witness {
                let nj = p.neighborhood_of(j.iter().copied()) - avoid;
                prop_assert_eq!(j.len() - nj.len(), p.m() - r.size);
            }
        }
    }
}
