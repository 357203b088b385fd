use serde::Serialize;

use crate::error::{Error, Result};
use crate::subset::{wrap, Subset};

/// A cyclic ordering `(e_1, .., e_n)` of a ground set. Position `p`
/// (one-based, taken mod `n`) holds element `order[p - 1]`.
///
/// The stored representative is the one supplied by the caller: which
/// windows are circuits depends on the starting point, so rotations are not
/// collapsed. [`CyclicOrdering::canonical`] gives the representative used to
/// compare orderings up to rotation and reflection.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(into = "Vec<usize>")]
pub struct CyclicOrdering {
    order: Vec<usize>,
}

impl From<CyclicOrdering> for Vec<usize> {
    fn from(o: CyclicOrdering) -> Vec<usize> {
        o.to_one_based()
    }
}

impl CyclicOrdering {
    /// Validates that `order` is a permutation of `0..order.len()`.
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        if n == 0 || n > crate::subset::MAX_ELEMENTS {
            return Err(Error::InvalidOrdering(format!("length {n} out of range")));
        }
        let mut seen = Subset::EMPTY;
        for &e in &order {
            if e >= n {
                return Err(Error::InvalidOrdering(format!(
                    "element {} outside 1..={n}",
                    e + 1
                )));
            }
            if seen.contains(e) {
                return Err(Error::InvalidOrdering(format!("element {} repeated", e + 1)));
            }
            seen = seen.with(e);
        }
        Ok(CyclicOrdering { order })
    }

    pub fn from_one_based(order: &[usize]) -> Result<Self> {
        if order.contains(&0) {
            return Err(Error::InvalidOrdering("element indices start at 1".into()));
        }
        CyclicOrdering::new(order.iter().map(|&e| e - 1).collect())
    }

    /// `(e_1, e_2, .., e_n)`.
    pub fn natural(n: usize) -> Self {
        CyclicOrdering {
            order: (0..n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.order
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.order.iter().map(|e| e + 1).collect()
    }

    /// The element at one-based position `p` (mod `n`).
    #[inline]
    pub fn element(&self, p: i64) -> usize {
        self.order[wrap(self.n(), p) - 1]
    }

    /// `sigma(i, j)`: elements at positions `i, i+1, .., j` with wraparound.
    pub fn interval(&self, i: i64, j: i64) -> Subset {
        let n = self.n() as i64;
        let len = (j - i).rem_euclid(n) as usize + 1;
        self.window(i, len)
    }

    /// The `len` consecutive elements starting at position `i`. Lengths of
    /// `n` or more give the whole ground set.
    pub fn window(&self, i: i64, len: usize) -> Subset {
        let len = len.min(self.n());
        (0..len as i64).map(|d| self.element(i + d)).collect()
    }

    /// The ordering read from position `k + 1`.
    pub fn rotated(&self, k: usize) -> Self {
        let n = self.n();
        CyclicOrdering {
            order: (0..n).map(|p| self.order[(p + k) % n]).collect(),
        }
    }

    pub fn reversed(&self) -> Self {
        let mut order = self.order.clone();
        order.reverse();
        CyclicOrdering { order }
    }

    /// Lexicographically least sequence among all rotations and both
    /// directions.
    pub fn canonical(&self) -> Self {
        let n = self.n();
        if n <= 2 {
            let mut order = self.order.clone();
            order.sort_unstable();
            return CyclicOrdering { order };
        }
        let zero = self.order.iter().position(|&e| e == 0).expect("permutation");
        let forward = self.rotated(zero);
        let backward = forward.reversed().rotated(n - 1);
        if forward.order[1] <= backward.order[1] {
            forward
        } else {
            backward
        }
    }

    /// Whether the two orderings agree up to rotation and reflection.
    pub fn equivalent(&self, other: &CyclicOrdering) -> bool {
        self.n() == other.n() && self.canonical() == other.canonical()
    }

    /// Position (one-based) of each element.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.n()];
        for (p, &e) in self.order.iter().enumerate() {
            pos[e] = p + 1;
        }
        pos
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn interval_examples() {
        let s8 = CyclicOrdering::natural(8);
        assert_eq!(s8.interval(7, 2), Subset::from_one_based([7, 8, 1, 2]));
        assert_eq!(s8.interval(3, 3), Subset::from_one_based([3]));
        let s12 = CyclicOrdering::natural(12);
        assert_eq!(s12.interval(1, 5), Subset::from_one_based(1..=5));
    }

    #[test]
    fn permutation_is_validated() {
        assert!(CyclicOrdering::from_one_based(&[1, 2, 2]).is_err());
        assert!(CyclicOrdering::from_one_based(&[1, 4, 2]).is_err());
        assert!(CyclicOrdering::from_one_based(&[0, 1]).is_err());
        assert!(CyclicOrdering::from_one_based(&[3, 1, 2]).is_ok());
    }

    #[test]
    fn canonical_examples() {
        let a = CyclicOrdering::from_one_based(&[3, 4, 1, 2]).unwrap();
        assert_eq!(a.canonical().to_one_based(), vec![1, 2, 3, 4]);
        let b = CyclicOrdering::from_one_based(&[2, 1, 4, 3]).unwrap();
        assert_eq!(b.canonical().to_one_based(), vec![1, 2, 3, 4]);
        let c = CyclicOrdering::from_one_based(&[1, 3, 2, 4]).unwrap();
        assert_eq!(c.canonical().to_one_based(), vec![1, 3, 2, 4]);
    }

    fn brute_canonical(o: &CyclicOrdering) -> Vec<usize> {
        let n = o.n();
        (0..n)
            .flat_map(|k| [o.rotated(k), o.reversed().rotated(k)])
            .map(|r| r.as_slice().to_vec())
            .min()
            .unwrap()
    }

    proptest! {
        #[test]
        fn canonical_is_least_rotation_or_reflection(
            perm in (3usize..10).prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        ) {
            let o = CyclicOrdering::new(perm).unwrap();
            prop_assert_eq!(o.canonical().as_slice().to_vec(), brute_canonical(&o));
            prop_assert_eq!(o.reversed().canonical(), o.canonical());
            prop_assert_eq!(o.rotated(2).canonical(), o.canonical());
        }

        #[test]
        fn interval_size_formula(n in 1usize..20, i in -30i64..30, j in -30i64..30) {
            let o = CyclicOrdering::natural(n);
            let expected = (j - i).rem_euclid(n as i64) as usize + 1;
            prop_assert_eq!(o.interval(i, j).len(), expected);
        }
    }
}
