use cyclic_matroids::cyclic::{
    certify, check_adjacent_windows, check_closure_windows, check_matroid_rank,
    check_odd_window_upgrade, check_unique_window_circuit, check_window_ranks,
    check_window_structure, find_orderings, CyclicOrdering, OrderingKind, SearchMode, StParams,
};
use cyclic_matroids::weakmap::truncation_cyclic;
use cyclic_matroids::{Matroid, Subset};

fn grid() -> Vec<(Matroid, StParams)> {
    let mut out = Vec::new();
    for (n, s, t) in [
        (8, 3, 3),
        (10, 3, 3),
        (12, 3, 3),
        (8, 4, 4),
        (12, 4, 4),
        (12, 5, 5),
        (10, 3, 5),
        (12, 3, 5),
        (12, 4, 6),
        (12, 3, 7),
    ] {
        let (m, cert) = truncation_cyclic(n, s, t).unwrap();
        assert_eq!(cert.kind, OrderingKind::Full, "({n},{s},{t})");
        out.push((m, StParams::new(s, t).unwrap()));
    }
    out
}

#[test]
fn window_properties_hold_on_grid() {
    for (m, p) in grid() {
        let o = CyclicOrdering::natural(m.n());
        let reports = [
            check_adjacent_windows(&m, &o, p).unwrap(),
            check_window_structure(&m, &o, p).unwrap(),
            check_closure_windows(&m, &o, p).unwrap(),
            check_window_ranks(&m, &o, p).unwrap(),
            check_matroid_rank(&m, &o, p).unwrap(),
        ];
        for r in reports {
            assert!(r.passed, "{} {:?}: {:?}", m.name(), p, r.first_failure());
            assert!(r.checked > 0);
        }
        assert_eq!(2 * m.full_rank(), m.n() + p.s - p.t);
        if m.n() >= p.s + p.t {
            assert_eq!(check_odd_window_upgrade(&m, &o, p).unwrap().kind, OrderingKind::Full);
        }
        if m.n() + 4 >= p.s + 2 * p.t {
            assert!(check_unique_window_circuit(&m, &o, p).unwrap().passed);
        }
    }
}

#[test]
fn rotation_and_reversal_preserve_kind() {
    for (m, p) in grid() {
        let o = CyclicOrdering::natural(m.n());
        for k in 0..m.n() {
            let r = o.rotated(k);
            assert_eq!(certify(&m, &r, p).unwrap().kind, OrderingKind::Full);
            assert_eq!(certify(&m, &r.reversed(), p).unwrap().kind, OrderingKind::Full);
        }
    }
}

/// Brute-force count of ordering classes satisfying the four full-ordering
/// clauses directly, with no pruning.
fn brute_full_classes(m: &Matroid, p: StParams) -> usize {
    let n = m.n();
    let mut rest: Vec<usize> = (1..n).collect();
    let mut count = 0;
    permute(&mut rest, 0, &mut |tail| {
        if tail[0] > tail[n - 2] {
            return;
        }
        let order: Vec<usize> = std::iter::once(0).chain(tail.iter().copied()).collect();
        let win = |i: usize, len: usize| -> Subset { (0..len).map(|d| order[(i + d) % n]).collect() };
        let circ: Vec<bool> = (0..n).map(|i| m.is_circuit(win(i, p.s))).collect();
        let coc: Vec<bool> = (0..n).map(|i| m.is_cocircuit(win(i, p.t))).collect();
        let full = (circ[0] || circ[1])
            && (coc[0] || coc[1])
            && (0..n).all(|i| !circ[i] || circ[(i + 2) % n])
            && (0..n).all(|i| !coc[i] || coc[(i + 2) % n]);
        if full {
            count += 1;
        }
    });
    count
}

fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

#[test]
fn search_matches_brute_force() {
    for (m, p) in [
        (truncation_cyclic(8, 3, 3).unwrap().0, StParams::new(3, 3).unwrap()),
        (cyclic_matroids::constructions::wheel(4).unwrap(), StParams::new(3, 3).unwrap()),
        (truncation_cyclic(8, 4, 4).unwrap().0, StParams::new(4, 4).unwrap()),
    ] {
        let found = find_orderings(&m, p, SearchMode::Full, usize::MAX).unwrap();
        for o in &found {
            assert_eq!(certify(&m, o, p).unwrap().kind, OrderingKind::Full);
        }
        assert_eq!(found.len(), brute_full_classes(&m, p), "{}", m.name());
    }
}
