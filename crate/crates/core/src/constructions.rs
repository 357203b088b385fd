//! Named matroid families: uniform matroids, wheels, whirls, free spikes and
//! truncations.

use serde::Serialize;

use crate::axioms::validate_circuit_axioms;
use crate::cyclic::{is_nearly_cyclic, CyclicOrdering, StParams};
use crate::error::{invalid, Error, Result};
use crate::matroid::{Matroid, TABLE_CAP};
use crate::subset::{GroundSet, Subset};

/// Independence as "contains no member of a fixed family".
#[derive(Debug, Clone)]
pub struct CircuitOracle {
    circuits: Vec<Subset>,
}

impl CircuitOracle {
    pub fn new(circuits: Vec<Subset>) -> Self {
        CircuitOracle { circuits }
    }

    pub fn is_independent(&self, x: Subset) -> bool {
        !self.circuits.iter().any(|c| c.is_subset_of(x))
    }
}

/// Builds a matroid from a circuit family after validating the circuit
/// axioms.
pub fn from_circuits(ground: GroundSet, name: impl Into<String>, circuits: Vec<Subset>) -> Result<Matroid> {
    let n = ground.len();
    let report = validate_circuit_axioms(&circuits, n)?;
    if !report.ok {
        let v = &report.violations[0];
        return Err(invalid(format!(
            "family violates the {} axiom at {:?}",
            v.axiom, v.witnesses
        )));
    }
    let oracle = CircuitOracle::new(circuits);
    Ok(Matroid::new(ground, name, move |x: Subset| oracle.is_independent(x)))
}

/// `U(r, n)`.
pub fn uniform(r: usize, n: usize) -> Result<Matroid> {
    if r > n {
        return Err(invalid(format!("rank {r} exceeds ground set size {n}")));
    }
    Ok(Matroid::new(GroundSet::new(n)?, format!("U({r},{n})"), move |x: Subset| {
        x.len() <= r
    }))
}

fn spoke_rim_labels(r: usize) -> Result<GroundSet> {
    GroundSet::with_labels(
        (1..=r)
            .flat_map(|i| [format!("s{i}"), format!("r{i}")])
            .collect(),
    )
}

fn find(parent: &mut [usize], v: usize) -> usize {
    let mut root = v;
    while parent[root] != root {
        root = parent[root];
    }
    let mut cur = v;
    while parent[cur] != root {
        let next = parent[cur];
        parent[cur] = root;
        cur = next;
    }
    root
}

/// Edge `k` of the wheel with `r` spokes as a vertex pair. Vertex 0 is the
/// hub and `1..=r` the rim vertices. Edge `2i` is spoke `s_{i+1}` and edge
/// `2i+1` is rim edge `r_{i+1}` joining rim vertices `i+1` and `i+2`.
fn wheel_edge(r: usize, k: usize) -> (usize, usize) {
    let i = k / 2;
    if k.is_multiple_of(2) {
        (0, i + 1)
    } else {
        (i + 1, (i + 1) % r + 1)
    }
}

fn is_forest(r: usize, edges: Subset) -> bool {
    let mut parent: Vec<usize> = (0..=r).collect();
    for k in edges.iter() {
        let (a, b) = wheel_edge(r, k);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

/// The graphic matroid of the wheel with `r` spokes. Elements alternate
/// spoke, rim: `e_{2i-1} = s_i`, `e_{2i} = r_i`, so the triangles
/// `{s_i, r_i, s_{i+1}}` start at odd positions and the triads
/// `{r_i, s_{i+1}, r_{i+1}}` at even positions.
pub fn wheel(r: usize) -> Result<Matroid> {
    if r < 2 {
        return Err(invalid(format!("a wheel needs at least 2 spokes, got {r}")));
    }
    if 2 * r > crate::subset::MAX_ELEMENTS {
        return Err(Error::TooLarge { n: 2 * r, cap: crate::subset::MAX_ELEMENTS });
    }
    Ok(Matroid::new(spoke_rim_labels(r)?, format!("W({r})"), move |x: Subset| {
        is_forest(r, x)
    }))
}

/// The rim of the wheel: the even positions.
pub fn rim(r: usize) -> Subset {
    (0..r).map(|i| 2 * i + 1).collect()
}

/// The whirl with `r` spokes: the wheel's circuits with the rim replaced by
/// the sets rim plus one spoke.
pub fn whirl(r: usize) -> Result<Matroid> {
    let w = wheel(r)?;
    if w.n() > TABLE_CAP {
        return Err(Error::TooLarge { n: w.n(), cap: TABLE_CAP });
    }
    let rim = rim(r);
    let mut circuits: Vec<Subset> = w
        .circuits_capped(TABLE_CAP)?
        .iter()
        .filter(|&c| c != rim)
        .collect();
    circuits.extend((0..r).map(|i| rim.with(2 * i)));
    from_circuits(spoke_rim_labels(r)?, format!("W^({r})"), circuits)
}

/// Pairs `L_1, .., L_r` partitioning a ground set of `2r` elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairPartition {
    pairs: Vec<Subset>,
}

impl PairPartition {
    pub fn new(n: usize, pairs: Vec<Subset>) -> Result<Self> {
        let mut seen = Subset::EMPTY;
        for &p in &pairs {
            if p.len() != 2 || seen.intersects(p) {
                return Err(invalid("pairs must be disjoint 2-element sets"));
            }
            seen = seen | p;
        }
        if seen != Subset::full(n) {
            return Err(invalid("pairs must cover the ground set"));
        }
        Ok(PairPartition { pairs })
    }

    /// `L_i = {e_{2i-1}, e_{2i}}`.
    pub fn consecutive(r: usize) -> Self {
        PairPartition {
            pairs: (0..r).map(|i| Subset::from_indices([2 * i, 2 * i + 1])).collect(),
        }
    }

    pub fn pairs(&self) -> &[Subset] {
        &self.pairs
    }

    /// Number of pairs contained in `x`.
    pub fn count_inside(&self, x: Subset) -> usize {
        self.pairs.iter().filter(|p| p.is_subset_of(x)).count()
    }
}

/// Largest free spike accepted, so that construction-time validation can
/// enumerate circuits.
pub const MAX_SPIKE_RANK: usize = 10;

/// The free tipless rank-`r` spike on pairs `L_i = {a_i, b_i}`, with rank
/// function `min(r, |X| - max(0, p(X) - 1))` where `p(X)` counts the pairs
/// inside `X`. Construction checks the circuit axioms, that every `L_i ∪ L_j`
/// is both a circuit and a cocircuit, and that the pair-interleaved ordering
/// is nearly (4, 4)-cyclic.
pub fn free_spike(r: usize) -> Result<(Matroid, PairPartition)> {
    if r < 3 {
        return Err(invalid(format!("a spike needs rank at least 3, got {r}")));
    }
    if r > MAX_SPIKE_RANK {
        return Err(Error::TooLarge { n: 2 * r, cap: 2 * MAX_SPIKE_RANK });
    }
    let pairs = PairPartition::consecutive(r);
    let labels = GroundSet::with_labels(
        (1..=r)
            .flat_map(|i| [format!("a{i}"), format!("b{i}")])
            .collect(),
    )?;
    let oracle_pairs = pairs.clone();
    let m = Matroid::new(labels, format!("Spike({r})"), move |x: Subset| {
        let p = oracle_pairs.count_inside(x);
        let rank = r.min(x.len() - p.saturating_sub(1));
        rank == x.len()
    });
    validate_spike(&m, &pairs)?;
    Ok((m, pairs))
}

fn validate_spike(m: &Matroid, pairs: &PairPartition) -> Result<()> {
    let circuits = m.circuits_capped(TABLE_CAP)?;
    let report = validate_circuit_axioms(circuits.sets(), m.n())?;
    if !report.ok {
        return Err(Error::Derivation(format!(
            "spike rank function fails the circuit axioms: {:?}",
            report.violations[0]
        )));
    }
    let l = pairs.pairs();
    for a in 0..l.len() {
        for b in a + 1..l.len() {
            let u = l[a] | l[b];
            if !m.is_circuit(u) || !m.is_cocircuit(u) {
                return Err(Error::Derivation(format!(
                    "{u} is not both a circuit and a cocircuit"
                )));
            }
        }
    }
    let order = CyclicOrdering::natural(m.n());
    let cert = is_nearly_cyclic(m, &order, StParams::new(4, 4)?)?;
    if !cert.nearly {
        return Err(Error::Derivation(
            "pair-interleaved ordering is not nearly (4,4)-cyclic".into(),
        ));
    }
    Ok(())
}

/// `T^i(M)`: independent sets of `M` of size at most `r(M) - i`.
pub fn truncate(m: &Matroid, i: usize) -> Result<Matroid> {
    let r = m.full_rank();
    if i > r {
        return Err(invalid(format!("cannot truncate {} times a matroid of rank {r}", i)));
    }
    if i == 0 {
        return Ok(m.clone());
    }
    let limit = r - i;
    let base = m.clone();
    let name = format!("T^{i}({})", m.name());
    Ok(Matroid::new(m.ground().clone(), name, move |x: Subset| {
        x.len() <= limit && base.is_independent(x)
    }))
}
