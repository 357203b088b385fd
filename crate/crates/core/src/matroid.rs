//! The independence-oracle abstraction and the quantities derived from it.
//!
//! A [`Matroid`] wraps an [`IndependenceOracle`] together with lazily built
//! caches. For ground sets up to [`TABLE_CAP`] elements the whole rank
//! function is tabulated on first use; every later rank, closure, circuit and
//! cocircuit query is answered from that table. Larger ground sets fall back
//! to greedy rank computations against the oracle.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::limits;
use crate::subset::{GroundSet, Subset};

/// Largest ground set whose rank function is tabulated (2^22 bytes).
pub const TABLE_CAP: usize = 22;

/// A deterministic independence predicate over subsets of `[n]`.
pub trait IndependenceOracle: Send + Sync {
    fn is_independent(&self, set: Subset) -> bool;
}

impl<F> IndependenceOracle for F
where
    F: Fn(Subset) -> bool + Send + Sync,
{
    fn is_independent(&self, set: Subset) -> bool {
        self(set)
    }
}

/// Inclusion-minimal dependent sets, sorted canonically (size, then
/// lexicographic).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CircuitFamily {
    n: usize,
    sets: Vec<Subset>,
}

impl CircuitFamily {
    pub fn new(n: usize, mut sets: Vec<Subset>) -> Self {
        sets.sort_by(Subset::canonical_cmp);
        sets.dedup();
        CircuitFamily { n, sets }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Subset> + '_ {
        self.sets.iter().copied()
    }

    pub fn contains(&self, set: Subset) -> bool {
        self.sets
            .binary_search_by(|probe| probe.canonical_cmp(&set))
            .is_ok()
    }

    pub fn of_size(&self, k: usize) -> impl Iterator<Item = Subset> + '_ {
        self.iter().filter(move |c| c.len() == k)
    }

    /// Image of every member under an element map.
    pub fn map(&self, f: impl Fn(Subset) -> Subset) -> CircuitFamily {
        CircuitFamily::new(self.n, self.sets.iter().map(|&c| f(c)).collect())
    }
}

struct Inner {
    ground: GroundSet,
    name: String,
    oracle: Box<dyn IndependenceOracle>,
    ranks: OnceLock<Option<Arc<[u8]>>>,
    full_rank: OnceLock<usize>,
    circuits: OnceLock<CircuitFamily>,
    cocircuits: OnceLock<CircuitFamily>,
}

/// An immutable matroid given by an independence oracle. Cloning is cheap
/// and clones share caches.
#[derive(Clone)]
pub struct Matroid {
    inner: Arc<Inner>,
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid")
            .field("name", &self.inner.name)
            .field("n", &self.n())
            .finish()
    }
}

impl Matroid {
    pub fn new(
        ground: GroundSet,
        name: impl Into<String>,
        oracle: impl IndependenceOracle + 'static,
    ) -> Self {
        Matroid {
            inner: Arc::new(Inner {
                ground,
                name: name.into(),
                oracle: Box::new(oracle),
                ranks: OnceLock::new(),
                full_rank: OnceLock::new(),
                circuits: OnceLock::new(),
                cocircuits: OnceLock::new(),
            }),
        }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.inner.ground
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.inner.ground.len()
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    /// The whole ground set.
    #[inline]
    pub fn full(&self) -> Subset {
        Subset::full(self.n())
    }

    /// Queries the underlying oracle, bypassing all caches.
    pub fn oracle_independent(&self, set: Subset) -> bool {
        self.inner.oracle.is_independent(set)
    }

    fn table(&self) -> Option<&[u8]> {
        self.inner
            .ranks
            .get_or_init(|| (self.n() <= TABLE_CAP).then(|| self.build_table()))
            .as_deref()
    }

    /// Rank table over all 2^n subsets. A set is only handed to the oracle
    /// when every one-smaller subset is independent.
    fn build_table(&self) -> Arc<[u8]> {
        let size = 1usize << self.n();
        let mut ranks = vec![0u8; size];
        for bits in 1..size {
            let set = Subset::from_bits(bits as u64);
            let len = set.len();
            let mut all_independent = true;
            let mut best = 0u8;
            for e in set.iter() {
                let r = ranks[bits & !(1usize << e)];
                if r as usize != len - 1 {
                    all_independent = false;
                }
                best = best.max(r);
            }
            ranks[bits] = if all_independent && self.inner.oracle.is_independent(set) {
                len as u8
            } else {
                best
            };
        }
        ranks.into()
    }

    pub fn is_independent(&self, set: Subset) -> bool {
        match self.table() {
            Some(t) => t[set.bits() as usize] as usize == set.len(),
            None => self.inner.oracle.is_independent(set),
        }
    }

    pub fn is_dependent(&self, set: Subset) -> bool {
        !self.is_independent(set)
    }

    /// Size of a maximal independent subset of `set`.
    pub fn rank(&self, set: Subset) -> usize {
        match self.table() {
            Some(t) => t[set.bits() as usize] as usize,
            None => self.greedy_basis(set).len(),
        }
    }

    /// A maximal independent subset of `set`, built greedily in index order.
    pub fn greedy_basis(&self, set: Subset) -> Subset {
        let mut basis = Subset::EMPTY;
        for e in set.iter() {
            let candidate = basis.with(e);
            if self.is_independent_uncached(candidate) {
                basis = candidate;
            }
        }
        basis
    }

    fn is_independent_uncached(&self, set: Subset) -> bool {
        match self.inner.ranks.get() {
            Some(Some(t)) => t[set.bits() as usize] as usize == set.len(),
            _ => self.inner.oracle.is_independent(set),
        }
    }

    /// `r(M)`.
    pub fn full_rank(&self) -> usize {
        *self.inner.full_rank.get_or_init(|| self.rank(self.full()))
    }

    /// `r*(M) = |E| - r(M)`.
    pub fn corank(&self) -> usize {
        self.n() - self.full_rank()
    }

    /// Rank in the dual matroid: `r*(X) = |X| + r(E - X) - r(E)`.
    pub fn dual_rank(&self, set: Subset) -> usize {
        set.len() + self.rank(set.complement(self.n())) - self.full_rank()
    }

    pub fn is_coindependent(&self, set: Subset) -> bool {
        self.rank(set.complement(self.n())) == self.full_rank()
    }

    pub fn is_spanning(&self, set: Subset) -> bool {
        self.rank(set) == self.full_rank()
    }

    /// `{e : r(X + e) = r(X)}`.
    pub fn closure(&self, set: Subset) -> Subset {
        let r = self.rank(set);
        let outside = set.complement(self.n());
        outside
            .iter()
            .filter(|&e| self.rank(set.with(e)) == r)
            .fold(set, |acc, e| acc.with(e))
    }

    pub fn is_circuit(&self, set: Subset) -> bool {
        if set.is_empty() || self.is_independent(set) {
            return false;
        }
        set.iter().all(|e| self.is_independent(set.without(e)))
    }

    /// `X` is a cocircuit iff `E - X` is a hyperplane.
    pub fn is_cocircuit(&self, set: Subset) -> bool {
        if set.is_empty() {
            return false;
        }
        let r = self.full_rank();
        let rest = set.complement(self.n());
        if self.rank(rest) + 1 != r {
            return false;
        }
        set.iter().all(|e| self.rank(rest.with(e)) == r)
    }

    pub fn is_basis(&self, set: Subset) -> bool {
        set.len() == self.full_rank() && self.is_independent(set)
    }

    fn ensure_enumerable(&self, cap: usize) -> Result<&[u8]> {
        let cap = cap.min(TABLE_CAP);
        if self.n() > cap {
            return Err(Error::TooLarge { n: self.n(), cap });
        }
        Ok(self.table().expect("table exists below TABLE_CAP"))
    }

    /// All circuits, refusing ground sets above the configured cap.
    pub fn circuits(&self) -> Result<&CircuitFamily> {
        self.circuits_capped(limits::enumeration_cap())
    }

    pub fn circuits_capped(&self, cap: usize) -> Result<&CircuitFamily> {
        if let Some(c) = self.inner.circuits.get() {
            return Ok(c);
        }
        let table = self.ensure_enumerable(cap)?;
        Ok(self.inner.circuits.get_or_init(|| {
            let n = self.n();
            let mut sets = Vec::new();
            for bits in 1..(1usize << n) {
                let len = bits.count_ones() as usize;
                if table[bits] as usize + 1 != len {
                    continue;
                }
                let set = Subset::from_bits(bits as u64);
                if set
                    .iter()
                    .all(|e| table[bits & !(1usize << e)] as usize == len - 1)
                {
                    sets.push(set);
                }
            }
            CircuitFamily::new(n, sets)
        }))
    }

    /// All cocircuits, enumerated as complements of hyperplanes. This is a
    /// separate code path from `dual().circuits()`.
    pub fn cocircuits(&self) -> Result<&CircuitFamily> {
        self.cocircuits_capped(limits::enumeration_cap())
    }

    pub fn cocircuits_capped(&self, cap: usize) -> Result<&CircuitFamily> {
        if let Some(c) = self.inner.cocircuits.get() {
            return Ok(c);
        }
        let table = self.ensure_enumerable(cap)?;
        Ok(self.inner.cocircuits.get_or_init(|| {
            let n = self.n();
            let full = (1usize << n) - 1;
            let r = self.full_rank();
            let mut sets = Vec::new();
            if r == 0 {
                return CircuitFamily::new(n, sets);
            }
            for bits in 0..=full {
                if table[bits] as usize + 1 != r {
                    continue;
                }
                let outside = full & !bits;
                let is_flat = Subset::from_bits(outside as u64)
                    .iter()
                    .all(|e| table[bits | (1usize << e)] as usize == r);
                if is_flat {
                    sets.push(Subset::from_bits(outside as u64));
                }
            }
            CircuitFamily::new(n, sets)
        }))
    }

    /// All independent sets grouped by size (index `k` holds the `k`-sets).
    pub fn independent_sets_by_size(&self) -> Result<Vec<Vec<Subset>>> {
        let table = self.ensure_enumerable(limits::enumeration_cap())?;
        let mut buckets = vec![Vec::new(); self.full_rank() + 1];
        for (bits, &r) in table.iter().enumerate() {
            let len = bits.count_ones() as usize;
            if r as usize == len {
                buckets[len].push(Subset::from_bits(bits as u64));
            }
        }
        Ok(buckets)
    }

    /// All bases.
    pub fn bases(&self) -> Result<Vec<Subset>> {
        let r = self.full_rank();
        Ok(self.independent_sets_by_size()?.swap_remove(r))
    }

    /// `M*`: `X` is independent iff `r(E - X) = r(E)`.
    pub fn dual(&self) -> Matroid {
        let base = self.clone();
        let name = match self.name().strip_prefix("dual(").and_then(|s| s.strip_suffix(')')) {
            Some(inner) => inner.to_string(),
            None => format!("dual({})", self.name()),
        };
        Matroid::new(self.ground().clone(), name, move |x: Subset| {
            base.is_coindependent(x)
        })
    }

    /// `M \ delete / contract`, reindexed onto the remaining elements in
    /// increasing order.
    pub fn minor(&self, delete: Subset, contract: Subset) -> Result<Matroid> {
        let full = self.full();
        if !delete.is_subset_of(full) || !contract.is_subset_of(full) {
            return Err(invalid("minor sets must lie in the ground set"));
        }
        if delete.intersects(contract) {
            return Err(invalid(format!(
                "delete and contract overlap in {}",
                delete & contract
            )));
        }
        let kept: Vec<usize> = (full - delete - contract).iter().collect();
        if kept.is_empty() {
            return Err(invalid("minor would have an empty ground set"));
        }
        let labels = kept
            .iter()
            .map(|&i| self.ground().label(i).to_string())
            .collect();
        let ground = GroundSet::with_labels(labels)?;
        let contracted_basis = self.greedy_basis(contract);
        let base = self.clone();
        let name = format!(
            "{}\\{}/{}",
            self.name(),
            self.ground().format(delete),
            self.ground().format(contract)
        );
        Ok(Matroid::new(ground, name, move |x: Subset| {
            let lifted: Subset = x.iter().map(|i| kept[i]).collect();
            base.is_independent(lifted | contracted_basis)
        }))
    }

    /// The matroid whose independent sets are the images of this one's under
    /// the element map `perm` (element `i` becomes `perm[i]`).
    pub fn relabel(&self, perm: &[usize], name: impl Into<String>) -> Result<Matroid> {
        let n = self.n();
        if perm.len() != n {
            return Err(Error::GroundMismatch {
                left: n,
                right: perm.len(),
            });
        }
        let mut inverse = vec![usize::MAX; n];
        for (i, &p) in perm.iter().enumerate() {
            if p >= n || inverse[p] != usize::MAX {
                return Err(invalid("relabelling is not a permutation"));
            }
            inverse[p] = i;
        }
        let mut labels = vec![String::new(); n];
        for (i, &p) in perm.iter().enumerate() {
            labels[p] = self.ground().label(i).to_string();
        }
        let base = self.clone();
        Ok(Matroid::new(
            GroundSet::with_labels(labels)?,
            name,
            move |y: Subset| {
                let pre: Subset = y.iter().map(|j| inverse[j]).collect();
                base.is_independent(pre)
            },
        ))
    }

    /// True when both matroids have the same independent sets.
    pub fn same_independent_sets(&self, other: &Matroid) -> Result<bool> {
        if self.n() != other.n() {
            return Ok(false);
        }
        let cap = limits::enumeration_cap();
        let (a, b) = (self.ensure_enumerable(cap)?, other.ensure_enumerable(cap)?);
        Ok(a.iter()
            .zip(b.iter())
            .enumerate()
            .all(|(bits, (&ra, &rb))| {
                let len = bits.count_ones() as u8;
                (ra == len) == (rb == len)
            }))
    }
}

/// A circuit and a cocircuit of one matroid never meet in exactly one
/// element.
pub fn orthogonality_check(circuit: Subset, cocircuit: Subset) -> bool {
    (circuit & cocircuit).len() != 1
}
