//! Structural consequences of a full cyclic ordering, checked window by
//! window against the oracle.

use serde::Serialize;

use super::certificate::{certify, OrderingCertificate, OrderingKind, StParams, Windows};
use super::ordering::CyclicOrdering;
use crate::error::{invalid, precondition, Result};
use crate::matroid::Matroid;
use crate::report::{VerificationReport, Witness};

/// Requires a full ordering with `n > s + t - 2`.
fn require_full_above_floor<'a>(
    m: &'a Matroid,
    order: &'a CyclicOrdering,
    p: StParams,
) -> Result<(Windows<'a>, OrderingCertificate)> {
    let cert = certify(m, order, p)?;
    if cert.kind != OrderingKind::Full {
        return Err(precondition("the ordering is not (s, t)-cyclic"));
    }
    if m.n() + 2 <= p.s + p.t {
        return Err(precondition(format!(
            "n = {} does not exceed s + t - 2 = {}",
            m.n(),
            p.s + p.t - 2
        )));
    }
    Ok((Windows { m, order, p }, cert))
}

/// Each circuit window is flanked on both sides by cocircuit windows, and
/// each cocircuit window by circuit windows.
pub fn check_adjacent_windows(m: &Matroid, order: &CyclicOrdering, p: StParams) -> Result<VerificationReport> {
    let (w, cert) = require_full_above_floor(m, order, p)?;
    let (s, t) = (p.s as i64, p.t as i64);
    let mut report = VerificationReport::new("adjacent-windows");
    for &i in &cert.circuit_starts {
        let i = i as i64;
        for j in [i - t, i + s] {
            report.record(w.is_t_cocircuit(j), || {
                Witness::new(
                    format!("circuit window at {i}: the {t}-window at {j} is not a cocircuit"),
                    vec![w.window(i, p.s), w.window(j, p.t)],
                )
            });
        }
    }
    for &i in &cert.cocircuit_starts {
        let i = i as i64;
        for j in [i - s, i + t] {
            report.record(w.is_s_circuit(j), || {
                Witness::new(
                    format!("cocircuit window at {i}: the {s}-window at {j} is not a circuit"),
                    vec![w.window(i, p.t), w.window(j, p.s)],
                )
            });
        }
    }
    Ok(report)
}

/// For each circuit window at `i`: with `s`, `t` even, the `t`-window at `i`
/// is a cocircuit, the `s`-window at `i+1` is independent and the `t`-window
/// at `i+1` is coindependent; with `s`, `t` odd, the `t`-window at `i+1` is
/// a cocircuit, the `s`-window at `i+1` is independent and the `t`-window at
/// `i` is coindependent.
pub fn check_window_structure(m: &Matroid, order: &CyclicOrdering, p: StParams) -> Result<VerificationReport> {
    if p.s % 2 != p.t % 2 {
        return Err(precondition("s and t must have the same parity"));
    }
    let (w, cert) = require_full_above_floor(m, order, p)?;
    let even = p.s.is_multiple_of(2);
    let mut report = VerificationReport::new("window-structure");
    for &i in &cert.circuit_starts {
        let i = i as i64;
        let (cocircuit_at, coindependent_at) = if even { (i, i + 1) } else { (i + 1, i) };
        report.record(w.is_t_cocircuit(cocircuit_at), || {
            Witness::new(
                format!("circuit window at {i}: the {}-window at {cocircuit_at} is not a cocircuit", p.t),
                vec![w.window(cocircuit_at, p.t)],
            )
        });
        let next = w.window(i + 1, p.s);
        report.record(m.is_independent(next), || {
            Witness::new(format!("circuit window at {i}: the {}-window at {} is dependent", p.s, i + 1), vec![next])
        });
        let co = w.window(coindependent_at, p.t);
        report.record(m.is_coindependent(co), || {
            Witness::new(
                format!("circuit window at {i}: the {}-window at {coindependent_at} is codependent", p.t),
                vec![co],
            )
        });
    }
    Ok(report)
}

/// Results of the two closure equivalences for one `(i, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClosureOutcome {
    /// `e_{i+k}` in the closure of the `k`-window at `i` iff the
    /// `s`-window ending at `i+k` is a circuit.
    pub forward: bool,
    /// `e_{i-1}` in the closure of the `k`-window at `i` iff the
    /// `s`-window starting at `i-1` is a circuit.
    pub backward: bool,
}

fn closure_outcome(w: &Windows<'_>, i: i64, k: usize) -> ClosureOutcome {
    let s = w.p.s as i64;
    let k64 = k as i64;
    let base = w.window(i, k);
    let cl = w.m.closure(base);
    let forward = cl.contains(w.order.element(i + k64)) == w.is_s_circuit(i + k64 - s + 1);
    let backward = cl.contains(w.order.element(i - 1)) == w.is_s_circuit(i - 1);
    ClosureOutcome { forward, backward }
}

/// The two closure equivalences at one `(i, k)` with `s - 1 <= k <= n - t`.
pub fn closure_windows(
    m: &Matroid,
    order: &CyclicOrdering,
    p: StParams,
    i: i64,
    k: usize,
) -> Result<ClosureOutcome> {
    let (w, _) = require_full_above_floor(m, order, p)?;
    let n = m.n();
    if k + 1 < p.s || k + p.t > n {
        return Err(invalid(format!("k = {k} outside [s - 1, n - t] = [{}, {}]", p.s - 1, n - p.t)));
    }
    Ok(closure_outcome(&w, i, k))
}

/// Both closure equivalences at every position and every admissible `k`.
pub fn check_closure_windows(m: &Matroid, order: &CyclicOrdering, p: StParams) -> Result<VerificationReport> {
    let (w, _) = require_full_above_floor(m, order, p)?;
    let n = m.n();
    let mut report = VerificationReport::new("closure-windows");
    if n < p.t || n - p.t + 1 < p.s {
        report.note("no admissible k");
        return Ok(report);
    }
    for i in 1..=n as i64 {
        for k in p.s - 1..=n - p.t {
            let out = closure_outcome(&w, i, k);
            report.record(out.forward && out.backward, || {
                Witness::new(format!("closure equivalence fails at i = {i}, k = {k}: {out:?}"), vec![w.window(i, k)])
            });
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RankPrediction {
    pub predicted: usize,
    pub actual: usize,
}

impl RankPrediction {
    pub fn holds(&self) -> bool {
        self.predicted == self.actual
    }
}

fn predicted_window_rank(w: &Windows<'_>, i: i64, k: usize) -> usize {
    let s = w.p.s;
    if k < s {
        k
    } else if w.is_s_circuit(i) {
        (s + k - 1) / 2
    } else {
        (s + k - 1).div_ceil(2)
    }
}

/// Predicted and actual rank of the `k`-window at `i`, `1 <= k <= n-t+1`:
/// `k` below `s`, then `floor((s+k-1)/2)` if the `s`-window at `i` is a
/// circuit and `ceil((s+k-1)/2)` otherwise.
pub fn window_rank(m: &Matroid, order: &CyclicOrdering, p: StParams, i: i64, k: usize) -> Result<RankPrediction> {
    let (w, _) = require_full_above_floor(m, order, p)?;
    if k == 0 || k + p.t > m.n() + 1 {
        return Err(invalid(format!("k = {k} outside [1, n - t + 1] = [1, {}]", m.n() + 1 - p.t)));
    }
    Ok(RankPrediction {
        predicted: predicted_window_rank(&w, i, k),
        actual: m.rank(w.window(i, k)),
    })
}

pub fn check_window_ranks(m: &Matroid, order: &CyclicOrdering, p: StParams) -> Result<VerificationReport> {
    let (w, _) = require_full_above_floor(m, order, p)?;
    let n = m.n();
    let mut report = VerificationReport::new("window-rank");
    for i in 1..=n as i64 {
        for k in 1..=n + 1 - p.t {
            let predicted = predicted_window_rank(&w, i, k);
            let window = w.window(i, k);
            let actual = m.rank(window);
            report.record(predicted == actual, || {
                Witness::new(format!("window at {i} of length {k}: predicted {predicted}, rank {actual}"), vec![window])
            });
        }
    }
    Ok(report)
}

/// `r(M) = (n + s - t)/2` and `r*(M) = (n - s + t)/2` for a full ordering.
pub fn check_matroid_rank(m: &Matroid, order: &CyclicOrdering, p: StParams) -> Result<VerificationReport> {
    let cert = certify(m, order, p)?;
    if cert.kind != OrderingKind::Full {
        return Err(precondition("the ordering is not (s, t)-cyclic"));
    }
    let n = m.n();
    let mut report = VerificationReport::new("matroid-rank");
    let twice_r = (n + p.s) as i64 - p.t as i64;
    let twice_co = (n + p.t) as i64 - p.s as i64;
    let (r, co) = (m.full_rank() as i64, m.corank() as i64);
    report.record(2 * r == twice_r, || {
        Witness::new(format!("rank {r}, expected (n+s-t)/2 = {}/2", twice_r), vec![])
    });
    report.record(2 * co == twice_co, || {
        Witness::new(format!("corank {co}, expected (n-s+t)/2 = {}/2", twice_co), vec![])
    });
    Ok(report)
}

/// A nearly cyclic ordering with `n >= s + t` whose odd `s`-windows are all
/// circuits. Returns the certificate, which should be full.
pub fn check_odd_window_upgrade(m: &Matroid, order: &CyclicOrdering, p: StParams) -> Result<OrderingCertificate> {
    let n = m.n();
    if n < p.s + p.t {
        return Err(precondition(format!("n = {n} is below s + t = {}", p.s + p.t)));
    }
    let cert = certify(m, order, p)?;
    if !cert.nearly {
        return Err(precondition("the ordering is not nearly (s, t)-cyclic"));
    }
    let w = Windows { m, order, p };
    if let Some(i) = (1..=n as i64).step_by(2).find(|&i| !w.is_s_circuit(i)) {
        return Err(precondition(format!("the {}-window at {i} is not a circuit", p.s)));
    }
    Ok(cert)
}

/// For a nearly cyclic ordering with `s, t >= 3` and `n >= s + 2t - 4`,
/// every `(s-1)`-window lies in exactly one `s`-circuit.
pub fn check_unique_window_circuit(m: &Matroid, order: &CyclicOrdering, p: StParams) -> Result<VerificationReport> {
    if p.s < 3 || p.t < 3 {
        return Err(precondition("s and t must be at least 3"));
    }
    let n = m.n();
    if n + 4 < p.s + 2 * p.t {
        return Err(precondition(format!("n = {n} is below s + 2t - 4 = {}", p.s + 2 * p.t - 4)));
    }
    let cert = certify(m, order, p)?;
    if !cert.nearly {
        return Err(precondition("the ordering is not nearly (s, t)-cyclic"));
    }
    let mut report = VerificationReport::new("unique-window-circuit");
    let full = m.full();
    for i in 1..=n as i64 {
        let base = order.window(i, p.s - 1);
        let completions: Vec<_> = (full - base).iter().map(|e| base.with(e)).filter(|&c| m.is_circuit(c)).collect();
        report.record(completions.len() == 1, || {
            Witness::new(format!("{} circuits of size {} contain the window at {i}", completions.len(), p.s), completions.clone())
        });
    }
    Ok(report)
}

/// Outcome of the nearly-to-full upgrade check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UpgradeOutcome {
    /// `n >= 3 t1 + t2 - 5` and `n >= t1 + 2 t2 - 1`.
    pub bounds_hold: bool,
    pub full: bool,
    /// False only when the bounds hold and the ordering is not full.
    pub holds: bool,
    pub note: Option<String>,
}

/// For a nearly cyclic ordering with `s, t >= 3`: above the size bounds the
/// ordering must be full. Below them the check is vacuous.
pub fn check_nearly_upgrade(m: &Matroid, order: &CyclicOrdering, p: StParams) -> Result<UpgradeOutcome> {
    if p.s < 3 || p.t < 3 {
        return Err(precondition("s and t must be at least 3"));
    }
    let cert = certify(m, order, p)?;
    if !cert.nearly {
        return Err(precondition("the ordering is not nearly (s, t)-cyclic"));
    }
    let n = m.n();
    let (t1, t2) = (p.t1(), p.t2());
    let bounds_hold = n + 5 >= 3 * t1 + t2 && n + 1 >= t1 + 2 * t2;
    let full = cert.kind == OrderingKind::Full;
    Ok(UpgradeOutcome {
        bounds_hold,
        full,
        holds: !bounds_hold || full,
        note: (!bounds_hold).then(|| {
            format!(
                "vacuous: n = {n} is below max(3t1 + t2 - 5, t1 + 2t2 - 1) = {}",
                (3 * t1 + t2 - 5).max(t1 + 2 * t2 - 1)
            )
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{truncate, uniform, whirl};
    use crate::subset::Subset;
    use crate::transversal::psi;

    fn st(s: usize, t: usize) -> StParams {
        StParams::new(s, t).unwrap()
    }

    fn nat(n: usize) -> CyclicOrdering {
        CyclicOrdering::natural(n)
    }

    #[test]
    fn adjacent_windows_on_psi() {
        let m = psi(8, 3).unwrap();
        let w = Windows { m: &m, order: &nat(8), p: st(3, 3) };
        assert!(w.is_t_cocircuit(6) && w.is_t_cocircuit(4));
        assert!(m.is_cocircuit(Subset::from_one_based([6, 7, 8])));
        assert!(check_adjacent_windows(&m, &nat(8), st(3, 3)).unwrap().passed);
        assert!(check_adjacent_windows(&psi(12, 4).unwrap(), &nat(12), st(4, 4)).unwrap().passed);
        let u = uniform(2, 5).unwrap();
        assert!(check_adjacent_windows(&u, &nat(5), st(3, 4)).is_err());
    }

    #[test]
    fn structure_examples() {
        let m = psi(12, 4).unwrap();
        assert!(m.is_cocircuit(Subset::from_one_based([1, 2, 3, 4])));
        assert!(check_window_structure(&m, &nat(12), st(4, 4)).unwrap().passed);
        let m = psi(8, 3).unwrap();
        assert!(m.is_independent(Subset::from_one_based([2, 3, 4])));
        assert!(check_window_structure(&m, &nat(8), st(3, 3)).unwrap().passed);
    }

    #[test]
    fn closure_examples() {
        let m = psi(8, 3).unwrap();
        let o = closure_windows(&m, &nat(8), st(3, 3), 1, 2).unwrap();
        assert!(o.forward && o.backward);
        assert!(!m.closure(Subset::from_one_based([2, 3])).contains(3));
        assert!(closure_windows(&m, &nat(8), st(3, 3), 1, 6).is_err());
        assert!(check_closure_windows(&psi(12, 4).unwrap(), &nat(12), st(4, 4)).unwrap().passed);
    }

    #[test]
    fn window_rank_examples() {
        let m = psi(8, 3).unwrap();
        let p = st(3, 3);
        assert_eq!(window_rank(&m, &nat(8), p, 1, 5).unwrap(), RankPrediction { predicted: 3, actual: 3 });
        assert_eq!(window_rank(&m, &nat(8), p, 2, 5).unwrap(), RankPrediction { predicted: 4, actual: 4 });
        assert_eq!(window_rank(&m, &nat(8), p, 4, 2).unwrap().predicted, 2);
        assert!(check_window_ranks(&m, &nat(8), p).unwrap().passed);
    }

    #[test]
    fn matroid_rank_examples() {
        assert!(check_matroid_rank(&psi(12, 4).unwrap(), &nat(12), st(4, 4)).unwrap().passed);
        let t = truncate(&psi(10, 3).unwrap(), 1).unwrap();
        assert_eq!(t.full_rank(), 4);
        assert!(check_matroid_rank(&t, &nat(10), st(3, 5)).unwrap().passed);
        assert!(check_matroid_rank(&uniform(2, 5).unwrap(), &nat(5), st(3, 4)).unwrap().passed);
    }

    #[test]
    fn odd_window_upgrade_examples() {
        let c = check_odd_window_upgrade(&psi(8, 3).unwrap(), &nat(8), st(3, 3)).unwrap();
        assert_eq!(c.kind, OrderingKind::Full);
        let c = check_odd_window_upgrade(&psi(12, 5).unwrap(), &nat(12), st(5, 5)).unwrap();
        assert_eq!(c.kind, OrderingKind::Full);
        assert!(check_odd_window_upgrade(&uniform(2, 5).unwrap(), &nat(5), st(3, 3)).is_err());
    }

    #[test]
    fn unique_window_circuit_examples() {
        assert!(check_unique_window_circuit(&psi(8, 3).unwrap(), &nat(8), st(3, 3)).unwrap().passed);
        assert!(check_unique_window_circuit(&psi(12, 4).unwrap(), &nat(12), st(4, 4)).unwrap().passed);
        let u = uniform(2, 4).unwrap();
        assert!(check_unique_window_circuit(&u, &nat(4), st(3, 3)).is_err());
        let triangles = u.circuits().unwrap().iter().filter(|c| Subset::from_one_based([1, 2]).is_subset_of(*c)).count();
        assert_eq!(triangles, 2);
    }

    #[test]
    fn upgrade_examples() {
        let out = check_nearly_upgrade(&psi(8, 3).unwrap(), &nat(8), st(3, 3)).unwrap();
        assert!(out.bounds_hold && out.full && out.holds);
        let t = truncate(&psi(14, 3).unwrap(), 1).unwrap();
        let out = check_nearly_upgrade(&t, &nat(14), st(3, 5)).unwrap();
        assert!(out.bounds_hold && out.holds);
        let out = check_nearly_upgrade(&whirl(3).unwrap(), &nat(6), st(3, 3)).unwrap();
        assert!(!out.bounds_hold && out.holds && out.note.is_some());
        assert!(check_nearly_upgrade(&psi(8, 2).unwrap(), &nat(8), st(2, 2)).is_err());
    }
}
