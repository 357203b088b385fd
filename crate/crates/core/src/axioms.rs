//! Validation of the circuit axioms and of the independence axioms.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matroid::{Matroid, TABLE_CAP};
use crate::subset::Subset;

/// Ground sets up to this size get an exhaustive exchange sweep.
pub const EXHAUSTIVE_EXCHANGE_CAP: usize = 12;

/// Seed for the sampled exchange sweep on larger ground sets.
pub const DEFAULT_EXCHANGE_SEED: u64 = 0x5eed_0001;

const SAMPLED_PAIRS: usize = 4000;
const STORED_VIOLATIONS: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub axiom: String,
    pub witnesses: Vec<Subset>,
}

/// `ok` is true exactly when no violation was found. At most a handful of
/// violations are stored; `violation_count` counts all of them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub ok: bool,
    pub violations: Vec<AxiomViolation>,
    pub violation_count: usize,
    pub checked: usize,
}

impl AxiomReport {
    fn new() -> Self {
        AxiomReport {
            ok: true,
            violations: Vec::new(),
            violation_count: 0,
            checked: 0,
        }
    }

    fn check(&mut self, holds: bool, axiom: &str, witnesses: impl FnOnce() -> Vec<Subset>) {
        self.checked += 1;
        if holds {
            return;
        }
        self.ok = false;
        self.violation_count += 1;
        if self.violations.len() < STORED_VIOLATIONS {
            self.violations.push(AxiomViolation {
                axiom: axiom.to_string(),
                witnesses: witnesses(),
            });
        }
    }

    pub fn has_violation(&self, axiom: &str) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

/// Indicator over all subsets of `[n]`: true when the subset contains a
/// member of `sets`.
fn upward_closure(sets: &[Subset], n: usize) -> Vec<bool> {
    let size = 1usize << n;
    let mut dep = vec![false; size];
    for s in sets {
        dep[s.bits() as usize] = true;
    }
    for b in 0..n {
        let bit = 1usize << b;
        for x in 0..size {
            if x & bit != 0 && dep[x ^ bit] {
                dep[x] = true;
            }
        }
    }
    dep
}

/// Checks that `sets` is the circuit family of a matroid on `[n]`: no empty
/// member, no member inside another, and weak circuit elimination.
pub fn validate_circuit_axioms(sets: &[Subset], n: usize) -> Result<AxiomReport> {
    if n > TABLE_CAP {
        return Err(Error::TooLarge { n, cap: TABLE_CAP });
    }
    let full = Subset::full(n);
    let mut report = AxiomReport::new();
    let mut members: Vec<Subset> = sets.to_vec();
    members.sort_by(Subset::canonical_cmp);
    members.dedup();

    for &c in &members {
        report.check(c.is_subset_of(full), "ground", || vec![c]);
        report.check(!c.is_empty(), "nonempty", || vec![c]);
    }
    if !report.ok {
        return Ok(report);
    }

    let dep = upward_closure(&members, n);
    for &c in &members {
        for f in c.iter() {
            let smaller = c.without(f);
            report.check(!dep[smaller.bits() as usize], "antichain", || {
                let inner = members
                    .iter()
                    .copied()
                    .find(|d| d.is_subset_of(smaller))
                    .unwrap_or(smaller);
                vec![inner, c]
            });
        }
    }

    for (a, &c1) in members.iter().enumerate() {
        for &c2 in &members[a + 1..] {
            let union = c1 | c2;
            for e in (c1 & c2).iter() {
                let rest = union.without(e);
                report.check(dep[rest.bits() as usize], "elimination", || {
                    vec![c1, c2, Subset::singleton(e)]
                });
            }
        }
    }
    Ok(report)
}

/// Checks the independence axioms directly against the raw oracle: the empty
/// set is independent, independence is closed under subsets, and the
/// augmentation property holds. Exhaustive up to
/// [`EXHAUSTIVE_EXCHANGE_CAP`] elements; sampled with a fixed seed above.
pub fn exchange_sweep(m: &Matroid) -> AxiomReport {
    exchange_sweep_seeded(m, DEFAULT_EXCHANGE_SEED)
}

pub fn exchange_sweep_seeded(m: &Matroid, seed: u64) -> AxiomReport {
    if m.n() <= EXHAUSTIVE_EXCHANGE_CAP {
        exhaustive_exchange(m)
    } else {
        sampled_exchange(m, seed)
    }
}

fn exhaustive_exchange(m: &Matroid) -> AxiomReport {
    let n = m.n();
    let size = 1usize << n;
    let indep: Vec<bool> = (0..size)
        .map(|x| m.oracle_independent(Subset::from_bits(x as u64)))
        .collect();
    let mut report = AxiomReport::new();
    report.check(indep[0], "empty-independent", Vec::new);

    let mut by_size: Vec<Vec<Subset>> = vec![Vec::new(); n + 1];
    for (x, &ind) in indep.iter().enumerate() {
        if !ind {
            continue;
        }
        let set = Subset::from_bits(x as u64);
        for e in set.iter() {
            let sub = set.without(e);
            report.check(indep[sub.bits() as usize], "downward-closed", || vec![set, sub]);
        }
        by_size[set.len()].push(set);
    }

    // Augmentation for |X| = |Y| + 1 implies the general case given
    // downward closure.
    for k in 0..n {
        for &y in &by_size[k] {
            for &x in &by_size[k + 1] {
                let ok = (x - y).iter().any(|e| indep[y.with(e).bits() as usize]);
                report.check(ok, "augmentation", || vec![x, y]);
            }
        }
    }
    report
}

fn sampled_exchange(m: &Matroid, seed: u64) -> AxiomReport {
    let n = m.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = AxiomReport::new();
    report.check(m.oracle_independent(Subset::EMPTY), "empty-independent", Vec::new);

    let mut order: Vec<usize> = (0..n).collect();
    let mut random_independent = |rng: &mut ChaCha8Rng, limit: usize| {
        order.shuffle(rng);
        let mut set = Subset::EMPTY;
        for &e in order.iter() {
            if set.len() == limit {
                break;
            }
            if m.oracle_independent(set.with(e)) {
                set = set.with(e);
            }
        }
        set
    };

    for _ in 0..SAMPLED_PAIRS {
        let x = random_independent(&mut rng, n);
        if x.is_empty() {
            continue;
        }
        for e in x.iter() {
            let sub = x.without(e);
            report.check(m.oracle_independent(sub), "downward-closed", || vec![x, sub]);
        }
        let members: Vec<usize> = x.iter().collect();
        let drop = members[rand::Rng::gen_range(&mut rng, 0..members.len())];
        let target = x.without(drop);
        let y = random_independent(&mut rng, target.len());
        if y.len() != target.len() {
            continue;
        }
        let ok = (x - y).iter().any(|e| m.oracle_independent(y.with(e)));
        report.check(ok, "augmentation", || vec![x, y]);
    }
    report
}
