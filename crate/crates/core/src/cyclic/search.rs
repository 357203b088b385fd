use std::collections::HashSet;

use serde::Serialize;

use super::certificate::{certify, OrderingKind, StParams};
use super::ordering::CyclicOrdering;
use crate::error::{Error, Result};
use crate::limits;
use crate::matroid::Matroid;
use crate::subset::Subset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Nearly,
    Full,
}

/// All orderings of `m`, up to rotation and reflection, meeting `mode`.
/// Results are canonical representatives in lexicographic order, truncated
/// to `limit`.
pub fn find_orderings(
    m: &Matroid,
    p: StParams,
    mode: SearchMode,
    limit: usize,
) -> Result<Vec<CyclicOrdering>> {
    find_orderings_capped(m, p, mode, limit, limits::search_cap())
}

pub fn find_orderings_capped(
    m: &Matroid,
    p: StParams,
    mode: SearchMode,
    limit: usize,
    cap: usize,
) -> Result<Vec<CyclicOrdering>> {
    let n = m.n();
    if n > cap {
        return Err(Error::TooLarge { n, cap });
    }
    if n + 1 < p.t2() {
        return Err(crate::error::precondition(format!(
            "n = {n} is below max(s, t) - 1 = {}",
            p.t2() - 1
        )));
    }
    let circuits = m.circuits()?;
    let cocircuits = m.cocircuits()?;
    let good_c = coverable(circuits.of_size(p.s));
    let good_d = coverable(cocircuits.of_size(p.t));

    let mut search = Search {
        n,
        p,
        good_c: &good_c,
        good_d: &good_d,
        order: vec![0],
        used: Subset::singleton(0),
        found: Vec::new(),
    };
    if n == 1 {
        search.finish();
    } else {
        search.extend();
    }

    let mut results = Vec::new();
    for order in search.found {
        let o = CyclicOrdering::new(order)?;
        let cert = certify(m, &o, p)?;
        let keep = match mode {
            SearchMode::Nearly => cert.nearly,
            SearchMode::Full => cert.kind == OrderingKind::Full,
        };
        if keep {
            results.push(o.canonical());
        }
    }
    results.sort();
    results.dedup();
    results.truncate(limit);
    Ok(results)
}

/// Every `(k-1)`-subset of a `k`-set in the family.
fn coverable(sets: impl Iterator<Item = Subset>) -> HashSet<Subset> {
    let mut out = HashSet::new();
    for c in sets {
        for e in c.iter() {
            out.insert(c.without(e));
        }
    }
    out
}

struct Search<'a> {
    n: usize,
    p: StParams,
    good_c: &'a HashSet<Subset>,
    good_d: &'a HashSet<Subset>,
    order: Vec<usize>,
    used: Subset,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// The window of `len` positions ending at the last placed position.
    fn tail_ok(&self, len: usize, good: &HashSet<Subset>) -> bool {
        if len == 0 || len > self.order.len() {
            return true;
        }
        let w: Subset = self.order[self.order.len() - len..].iter().copied().collect();
        good.contains(&w)
    }

    fn wrapped_ok(&self, len: usize, good: &HashSet<Subset>) -> bool {
        let n = self.n;
        if len == 0 {
            return true;
        }
        if len > n {
            return false;
        }
        (0..n).all(|i| {
            let w: Subset = (0..len).map(|d| self.order[(i + d) % n]).collect();
            good.contains(&w)
        })
    }

    fn finish(&mut self) {
        if self.wrapped_ok(self.p.s - 1, self.good_c) && self.wrapped_ok(self.p.t - 1, self.good_d) {
            self.found.push(self.order.clone());
        }
    }

    fn extend(&mut self) {
        let n = self.n;
        if self.order.len() == n {
            // One representative per reflection class.
            if n < 3 || self.order[1] < self.order[n - 1] {
                self.finish();
            }
            return;
        }
        for e in 1..n {
            if self.used.contains(e) {
                continue;
            }
            self.order.push(e);
            self.used = self.used.with(e);
            let (s, t) = (self.p.s, self.p.t);
            if self.tail_ok(s - 1, self.good_c) && self.tail_ok(t - 1, self.good_d) {
                self.extend();
            }
            self.used = self.used.without(e);
            self.order.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{free_spike, uniform, wheel};

    fn st(s: usize, t: usize) -> StParams {
        StParams::new(s, t).unwrap()
    }

    #[test]
    fn uniform_has_three_classes() {
        let u = uniform(2, 4).unwrap();
        let found = find_orderings(&u, st(3, 3), SearchMode::Nearly, 100).unwrap();
        assert_eq!(found.len(), 3);
    }

    #[test]
    fn wheel_alternating_ordering_is_found() {
        let w = wheel(4).unwrap();
        let found = find_orderings(&w, st(3, 3), SearchMode::Full, 100).unwrap();
        let natural = CyclicOrdering::natural(8).canonical();
        assert!(found.contains(&natural));
        for o in &found {
            assert_eq!(o, &o.canonical());
        }
    }

    #[test]
    fn spike_pair_orderings_are_found() {
        let (m, pairs) = free_spike(3).unwrap();
        let found = find_orderings(&m, st(4, 4), SearchMode::Nearly, 1000).unwrap();
        // Pairs consecutive: arrange the 3 pairs (2 cyclic classes up to
        // reflection: 1) and orient each pair (2^3 ways).
        for flips in 0..8u32 {
            let mut order = Vec::new();
            for (k, pair) in pairs.pairs().iter().enumerate() {
                let mut v = pair.to_vec();
                if flips >> k & 1 == 1 {
                    v.reverse();
                }
                order.extend(v);
            }
            let o = CyclicOrdering::new(order).unwrap().canonical();
            assert!(found.contains(&o), "{:?}", o);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let u = uniform(2, 14).unwrap();
        assert!(matches!(
            find_orderings_capped(&u, st(3, 3), SearchMode::Nearly, 1, 12),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn output_is_deterministic_and_limited() {
        let u = uniform(2, 5).unwrap();
        let a = find_orderings(&u, st(3, 4), SearchMode::Full, 5).unwrap();
        let b = find_orderings(&u, st(3, 4), SearchMode::Full, 5).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 5);
        let all = find_orderings(&u, st(3, 4), SearchMode::Full, usize::MAX).unwrap();
        assert_eq!(all.len(), 12);
        assert_eq!(&all[..5], &a[..]);
    }
}
