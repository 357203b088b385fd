//! Weak maps and quotients between matroids on equal-size ground sets.

use serde::Serialize;

use crate::constructions::truncate;
use crate::cyclic::{certify, CyclicOrdering, OrderingCertificate, OrderingKind, Parity, StParams};
use crate::error::{invalid, precondition, Error, Result};
use crate::matroid::Matroid;
use crate::subset::Subset;
use crate::transversal::{psi, MultiPathPresentation};

/// A bijection between ground sets; element `i` maps to `map[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementBijection {
    map: Vec<usize>,
}

impl ElementBijection {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = Subset::EMPTY;
        for &j in &map {
            if j >= n || seen.contains(j) {
                return Err(invalid("element map is not a bijection"));
            }
            seen = seen.with(j);
        }
        Ok(ElementBijection { map })
    }

    pub fn from_one_based(map: &[usize]) -> Result<Self> {
        if map.contains(&0) {
            return Err(invalid("element indices start at 1"));
        }
        ElementBijection::new(map.iter().map(|&j| j - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        ElementBijection {
            map: (0..n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.map.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &j) in self.map.iter().enumerate() {
            inv[j] = i;
        }
        ElementBijection { map: inv }
    }

    /// `other ∘ self`: apply `self` first.
    pub fn then(&self, other: &ElementBijection) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::GroundMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(ElementBijection {
            map: self.map.iter().map(|&j| other.map[j]).collect(),
        })
    }

    pub fn apply(&self, x: Subset) -> Subset {
        x.iter().map(|i| self.map[i]).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeakMapReport {
    pub relation: String,
    pub holds: bool,
    /// A circuit of the source whose image breaks the relation.
    pub violating_circuit: Option<Subset>,
    pub circuits_checked: usize,
    /// Whether the second characterisation gave the same verdict.
    pub routes_agree: bool,
}

fn same_size(m1: &Matroid, m2: &Matroid) -> Result<()> {
    if m1.n() != m2.n() {
        return Err(Error::GroundMismatch {
            left: m1.n(),
            right: m2.n(),
        });
    }
    Ok(())
}

/// `phi` is a weak map from `m1` to `m2` when the image of every circuit of
/// `m1` contains a circuit of `m2`. The verdict is cross-checked against the
/// pull-back of every independent set of `m2`.
pub fn is_weak_map(m1: &Matroid, m2: &Matroid, phi: &ElementBijection) -> Result<WeakMapReport> {
    same_size(m1, m2)?;
    if phi.n() != m1.n() {
        return Err(Error::GroundMismatch {
            left: m1.n(),
            right: phi.n(),
        });
    }
    let circuits = m1.circuits()?;
    let violating_circuit = circuits.iter().find(|&c| m2.is_independent(phi.apply(c)));
    let inverse = phi.inverse();
    let pullback_ok = Subset::full(m2.n())
        .subsets()
        .all(|x| !m2.is_independent(x) || m1.is_independent(inverse.apply(x)));
    let holds = violating_circuit.is_none();
    Ok(WeakMapReport {
        relation: format!("weak map {} -> {}", m1.name(), m2.name()),
        holds,
        violating_circuit,
        circuits_checked: circuits.len(),
        routes_agree: holds == pullback_ok,
    })
}

/// `m2` is a quotient of `m1` when every circuit of `m1` is a union of
/// circuits of `m2`; each element of the circuit must lie in an
/// `m2`-circuit inside it. Cross-checked against "every flat of `m2` is a
/// flat of `m1`".
pub fn is_quotient(m1: &Matroid, m2: &Matroid) -> Result<WeakMapReport> {
    same_size(m1, m2)?;
    let c1 = m1.circuits()?;
    let c2 = m2.circuits()?;
    let violating_circuit = c1.iter().find(|&c| {
        let covered = c2
            .iter()
            .filter(|d| d.is_subset_of(c))
            .fold(Subset::EMPTY, |acc, d| acc | d);
        covered != c
    });
    let flats_ok = Subset::full(m1.n())
        .subsets()
        .all(|x| m2.closure(x) != x || m1.closure(x) == x);
    let holds = violating_circuit.is_none();
    Ok(WeakMapReport {
        relation: format!("quotient {} of {}", m2.name(), m1.name()),
        holds,
        violating_circuit,
        circuits_checked: c1.len(),
        routes_agree: holds == flats_ok,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankConditionReport {
    /// `r_M` of every union of consecutive intervals is at most its rank in
    /// the multi-path dual.
    pub condition_holds: bool,
    /// First failing `(i, k)`: `k` consecutive intervals from interval `i`.
    pub failing: Option<(usize, usize)>,
    /// When the condition holds: the identity weak map from the multi-path
    /// dual onto `M`.
    pub weak_map: Option<WeakMapReport>,
}

/// Checks the interval rank condition and, when it holds, that `M` is a
/// weak-map image of the multi-path dual under the identity.
pub fn rank_condition_weak_map(m: &Matroid, p: &MultiPathPresentation) -> Result<RankConditionReport> {
    if m.n() != p.n() {
        return Err(Error::GroundMismatch {
            left: p.n(),
            right: m.n(),
        });
    }
    let loops = p.base().uncovered();
    if !loops.is_empty() {
        return Err(precondition(format!(
            "the transversal matroid has loops {loops}"
        )));
    }
    let dual = p.dual_matroid()?;
    let k_max = p.m();
    let mut failing = None;
    'outer: for i in 1..=k_max {
        for k in 1..=k_max {
            let u = p.consecutive_union(i, k);
            if m.rank(u) > dual.rank(u) {
                failing = Some((i, k));
                break 'outer;
            }
        }
    }
    let condition_holds = failing.is_none();
    let weak_map = if condition_holds {
        Some(is_weak_map(&dual, m, &ElementBijection::identity(m.n()))?)
    } else {
        None
    };
    Ok(RankConditionReport {
        condition_holds,
        failing,
        weak_map,
    })
}

/// Builds `T^((t-s)/2)(Psi(n, s))` and certifies its natural ordering for
/// `(s, t)`.
pub fn truncation_cyclic(n: usize, s: usize, t: usize) -> Result<(Matroid, OrderingCertificate)> {
    if s < 2 || t < s {
        return Err(precondition(format!("need t >= s >= 2, got s = {s}, t = {t}")));
    }
    if !n.is_multiple_of(2) || n + 2 < s + t {
        return Err(precondition(format!("need n even and n >= s + t - 2, got n = {n}")));
    }
    if !(t - s).is_multiple_of(2) {
        return Err(precondition("s and t must have the same parity"));
    }
    let m = truncate(&psi(n, s)?, (t - s) / 2)?;
    let cert = certify(&m, &CyclicOrdering::natural(n), StParams::new(s, t)?)?;
    Ok((m, cert))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PipelineReport {
    /// Whether the ordering was rotated one step so that circuit windows
    /// start at odd positions.
    pub rotated: bool,
    pub aligned_order: CyclicOrdering,
    pub truncations: usize,
    pub weak_map: WeakMapReport,
}

/// For an `(s, t)`-cyclic ordering of `m` with `n >= s + t - 1` and
/// `t >= s`: checks that `m` is a weak-map image of
/// `T^((t-s)/2)(Psi(n, s))`, with `e_j` of `Psi` sent to the element at
/// position `j` of the aligned ordering.
pub fn weak_map_pipeline(m: &Matroid, order: &CyclicOrdering, p: StParams) -> Result<PipelineReport> {
    let n = m.n();
    if p.t < p.s {
        return Err(precondition("need t >= s"));
    }
    if n + 1 < p.s + p.t {
        return Err(precondition(format!(
            "n = {n} is below s + t - 1 = {}",
            p.s + p.t - 1
        )));
    }
    let cert = certify(m, order, p)?;
    if cert.kind != OrderingKind::Full {
        return Err(precondition("the ordering is not (s, t)-cyclic"));
    }
    let rotated = cert.circuit_phase == Some(Parity::Even);
    let aligned_order = if rotated { order.rotated(1) } else { order.clone() };
    let truncations = (p.t - p.s) / 2;
    let source = truncate(&psi(n, p.s)?, truncations)?;
    let phi = ElementBijection::new(aligned_order.as_slice().to_vec())?;
    let weak_map = is_weak_map(&source, m, &phi)?;
    Ok(PipelineReport {
        rotated,
        aligned_order,
        truncations,
        weak_map,
    })
}
