use cyclic_matroids::axioms::{exchange_sweep, validate_circuit_axioms};
use cyclic_matroids::constructions::{free_spike, truncate, uniform, wheel, whirl};
use cyclic_matroids::matroid::orthogonality_check;
use cyclic_matroids::transversal::{psi, psi_presentation, transversal_matroid, BipartitePresentation};
use cyclic_matroids::weakmap::{is_quotient, is_weak_map, ElementBijection};
use cyclic_matroids::{Matroid, Subset};
use proptest::prelude::*;

/// Transversal rank by the deficiency formula, over every vertex subset.
fn ore_rank(nbhd: &[Subset], y: Subset) -> usize {
    let m = nbhd.len();
    let mut worst = 0;
    for a in 0u32..(1 << m) {
        let mut reach = Subset::EMPTY;
        for (v, &nv) in nbhd.iter().enumerate() {
            if a >> v & 1 == 1 {
                reach = reach | (nv & y);
            }
        }
        worst = worst.max(a.count_ones() as usize - reach.len().min(a.count_ones() as usize));
    }
    m - worst
}

fn presentation() -> impl Strategy<Value = (usize, Vec<Subset>)> {
    (4usize..=8).prop_flat_map(|n| {
        let sets = prop::collection::vec((1u64..(1 << n)).prop_map(Subset::from_bits), 1..=4);
        (Just(n), sets)
    })
}

fn fixtures() -> Vec<Matroid> {
    vec![
        uniform(2, 5).unwrap(),
        wheel(3).unwrap(),
        wheel(4).unwrap(),
        whirl(4).unwrap(),
        free_spike(4).unwrap().0,
        psi(8, 3).unwrap(),
        psi(10, 4).unwrap(),
        truncate(&psi(10, 3).unwrap(), 1).unwrap(),
    ]
}

#[test]
fn psi_circuits_match_deficiency_oracle() {
    for (n, s) in [(8, 3), (8, 4), (10, 3), (10, 4)] {
        let p = psi_presentation(n, s).unwrap();
        let nb = p.base().neighborhoods().to_vec();
        let m = nb.len();
        let indep = |x: Subset| ore_rank(&nb, Subset::full(n) - x) == m;
        let expected: Vec<Subset> = Subset::full(n)
            .subsets()
            .filter(|&c| !indep(c) && c.iter().all(|e| indep(c.without(e))))
            .collect();
        let got = psi(n, s).unwrap();
        let got = got.circuits().unwrap();
        assert_eq!(got.len(), expected.len());
        assert!(expected.iter().all(|&c| got.contains(c)));
    }
}

#[test]
fn fixture_circuits_and_cocircuits() {
    for m in fixtures() {
        let c = m.circuits().unwrap();
        let d = m.cocircuits().unwrap();
        assert!(validate_circuit_axioms(c.sets(), m.n()).unwrap().ok, "{}", m.name());
        assert_eq!(m.dual().circuits().unwrap(), d, "{}", m.name());
        for x in c.iter() {
            for y in d.iter() {
                assert!(orthogonality_check(x, y), "{}: {x} {y}", m.name());
            }
        }
        assert!(exchange_sweep(&m).ok, "{}", m.name());
    }
}

#[test]
fn truncation_chain_is_weak_and_quotient() {
    let m = psi(10, 3).unwrap();
    let t1 = truncate(&m, 1).unwrap();
    let t2 = truncate(&m, 2).unwrap();
    let id = ElementBijection::identity(10);
    for (a, b) in [(&m, &t1), (&t1, &t2), (&m, &t2)] {
        assert!(is_weak_map(a, b, &id).unwrap().holds);
        let q = is_quotient(a, b).unwrap();
        assert!(q.holds && q.routes_agree);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn transversal_rank_matches_deficiency((n, nb) in presentation()) {
        let p = BipartitePresentation::new(n, nb.clone()).unwrap();
        let m = transversal_matroid(&p).unwrap();
        for y in Subset::full(n).subsets() {
            prop_assert_eq!(m.rank(y), ore_rank(&nb, y));
        }
    }

    #[test]
    fn dual_rank_sum((n, nb) in presentation()) {
        let m = transversal_matroid(&BipartitePresentation::new(n, nb).unwrap()).unwrap();
        let d = m.dual();
        let full = Subset::full(n);
        for x in full.subsets() {
            prop_assert_eq!(d.rank(x), x.len() + m.rank(full - x) - m.full_rank());
        }
        prop_assert!(d.dual().same_independent_sets(&m).unwrap());
    }

    #[test]
    fn orthogonality_on_random((n, nb) in presentation()) {
        let m = transversal_matroid(&BipartitePresentation::new(n, nb).unwrap()).unwrap();
        let c = m.circuits().unwrap();
        let d = m.cocircuits().unwrap();
        let dual = m.dual();
        prop_assert_eq!(dual.circuits().unwrap(), d);
        for x in c.iter() {
            for y in d.iter() {
                prop_assert!(orthogonality_check(x, y));
            }
        }
    }

    #[test]
    fn weak_maps_compose(
        (n, nb) in presentation(),
        perm in Just(()).prop_perturb(|_, mut rng| {
            let mut v: Vec<usize> = (0..8).collect();
            for i in (1..8).rev() {
                v.swap(i, (rng.next_u32() as usize) % (i + 1));
            }
            v
        }),
    ) {
        let m = transversal_matroid(&BipartitePresentation::new(n, nb).unwrap()).unwrap();
        let perm: Vec<usize> = perm.into_iter().filter(|&j| j < n).collect();
        let phi = ElementBijection::new(perm.clone()).unwrap();
        let moved = m.relabel(&perm, "moved").unwrap();
        let lower = truncate(&moved, 1).unwrap();
        let a = is_weak_map(&m, &moved, &phi).unwrap();
        let b = is_weak_map(&moved, &lower, &ElementBijection::identity(n)).unwrap();
        let ab = is_weak_map(&m, &lower, &phi).unwrap();
        prop_assert!(a.holds && b.holds && ab.holds);
        prop_assert!(a.routes_agree && b.routes_agree && ab.routes_agree);
    }
}
