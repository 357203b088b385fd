use serde::Serialize;

use super::ordering::CyclicOrdering;
use crate::error::{invalid, Error, Result};
use crate::matroid::Matroid;
use crate::report::Witness;
use crate::subset::Subset;

/// Circuit size `s` and cocircuit size `t`, both at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StParams {
    pub s: usize,
    pub t: usize,
}

impl StParams {
    pub fn new(s: usize, t: usize) -> Result<Self> {
        if s < 2 || t < 2 {
            return Err(invalid(format!("s = {s} and t = {t} must both be at least 2")));
        }
        Ok(StParams { s, t })
    }

    pub fn t1(&self) -> usize {
        self.s.min(self.t)
    }

    pub fn t2(&self) -> usize {
        self.s.max(self.t)
    }

    /// The parameters of the dual matroid.
    pub fn swapped(&self) -> Self {
        StParams { s: self.t, t: self.s }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderingKind {
    Full,
    Nearly,
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(i: usize) -> Self {
        if i % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

/// Outcome of checking an ordering against both cyclic conditions.
///
/// `circuit_starts` lists the positions `i` where the `s` elements starting
/// at `i` form a circuit, `cocircuit_starts` likewise for `t`-cocircuits.
/// Phases are reported only for full orderings with `n > s + t - 2`, where
/// starts fall in a single parity class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderingCertificate {
    pub kind: OrderingKind,
    pub nearly: bool,
    pub full: bool,
    pub circuit_starts: Vec<usize>,
    pub cocircuit_starts: Vec<usize>,
    pub circuit_phase: Option<Parity>,
    pub cocircuit_phase: Option<Parity>,
    /// For full orderings with `n > s + t - 2`: whether each circuit window
    /// is flanked by cocircuit windows and vice versa.
    pub alternation: Option<bool>,
    pub failures: Vec<Witness>,
}

/// Context shared by the window checks.
pub(crate) struct Windows<'a> {
    pub m: &'a Matroid,
    pub order: &'a CyclicOrdering,
    pub p: StParams,
}

impl Windows<'_> {
    pub fn n(&self) -> usize {
        self.order.n()
    }

    pub fn window(&self, i: i64, len: usize) -> Subset {
        self.order.window(i, len)
    }

    pub fn is_s_circuit(&self, i: i64) -> bool {
        let w = self.window(i, self.p.s);
        w.len() == self.p.s && self.m.is_circuit(w)
    }

    pub fn is_t_cocircuit(&self, i: i64) -> bool {
        let w = self.window(i, self.p.t);
        w.len() == self.p.t && self.m.is_cocircuit(w)
    }

    fn extends_to(&self, w: Subset, test: impl Fn(Subset) -> bool) -> bool {
        (Subset::full(self.n()) - w).iter().any(|e| test(w.with(e)))
    }
}

fn check_sizes(m: &Matroid, order: &CyclicOrdering, p: StParams) -> Result<()> {
    let n = m.n();
    if order.n() != n {
        return Err(Error::GroundMismatch {
            left: n,
            right: order.n(),
        });
    }
    if n + 1 < p.t2() {
        return Err(crate::error::precondition(format!(
            "n = {n} is below max(s, t) - 1 = {}",
            p.t2() - 1
        )));
    }
    Ok(())
}

fn single_phase(starts: &[usize]) -> Option<Parity> {
    let first = Parity::of(*starts.first()?);
    starts
        .iter()
        .all(|&i| Parity::of(i) == first)
        .then_some(first)
}

/// Checks both the nearly cyclic condition and clauses (i)-(iv) of the
/// cyclic condition for `order`.
pub fn certify(m: &Matroid, order: &CyclicOrdering, p: StParams) -> Result<OrderingCertificate> {
    check_sizes(m, order, p)?;
    let ctx = Windows { m, order, p };
    let n = ctx.n();
    let (s, t) = (p.s, p.t);
    let mut failures = Vec::new();

    let mut nearly = true;
    for i in 1..=n as i64 {
        let w = ctx.window(i, s - 1);
        if !ctx.extends_to(w, |x| m.is_circuit(x)) {
            nearly = false;
            failures.push(Witness::new(
                format!("no {s}-circuit contains the {}-window at {i}", s - 1),
                vec![w],
            ));
        }
        let w = ctx.window(i, t - 1);
        if !ctx.extends_to(w, |x| m.is_cocircuit(x)) {
            nearly = false;
            failures.push(Witness::new(
                format!("no {t}-cocircuit contains the {}-window at {i}", t - 1),
                vec![w],
            ));
        }
    }

    let circuit_starts: Vec<usize> = (1..=n).filter(|&i| ctx.is_s_circuit(i as i64)).collect();
    let cocircuit_starts: Vec<usize> = (1..=n).filter(|&i| ctx.is_t_cocircuit(i as i64)).collect();
    let is_c = |i: i64| circuit_starts.contains(&crate::subset::wrap(n, i));
    let is_d = |i: i64| cocircuit_starts.contains(&crate::subset::wrap(n, i));

    let mut full = true;
    if !(is_c(1) || is_c(2)) {
        full = false;
        failures.push(Witness::new(
            format!("neither {s}-window at 1 nor at 2 is a circuit"),
            vec![ctx.window(1, s), ctx.window(2, s)],
        ));
    }
    if !(is_d(1) || is_d(2)) {
        full = false;
        failures.push(Witness::new(
            format!("neither {t}-window at 1 nor at 2 is a cocircuit"),
            vec![ctx.window(1, t), ctx.window(2, t)],
        ));
    }
    for &i in &circuit_starts {
        if !is_c(i as i64 + 2) {
            full = false;
            failures.push(Witness::new(
                format!("circuit window at {i} is not followed by one at {}", i + 2),
                vec![ctx.window(i as i64, s), ctx.window(i as i64 + 2, s)],
            ));
        }
    }
    for &i in &cocircuit_starts {
        if !is_d(i as i64 + 2) {
            full = false;
            failures.push(Witness::new(
                format!("cocircuit window at {i} is not followed by one at {}", i + 2),
                vec![ctx.window(i as i64, t), ctx.window(i as i64 + 2, t)],
            ));
        }
    }

    let above_floor = n + 2 > s + t;
    let (circuit_phase, cocircuit_phase, alternation) = if full && above_floor {
        let alternation = circuit_starts.iter().all(|&i| {
            let i = i as i64;
            is_d(i - t as i64) && is_d(i + s as i64)
        }) && cocircuit_starts.iter().all(|&i| {
            let i = i as i64;
            is_c(i - s as i64) && is_c(i + t as i64)
        });
        (
            single_phase(&circuit_starts),
            single_phase(&cocircuit_starts),
            Some(alternation),
        )
    } else {
        (None, None, None)
    };

    let kind = if full && nearly {
        OrderingKind::Full
    } else if nearly {
        OrderingKind::Nearly
    } else {
        OrderingKind::Neither
    };
    Ok(OrderingCertificate {
        kind,
        nearly,
        full,
        circuit_starts,
        cocircuit_starts,
        circuit_phase,
        cocircuit_phase,
        alternation,
        failures,
    })
}

/// Every `(s-1)`-window lies in an `s`-circuit and every `(t-1)`-window in a
/// `t`-cocircuit. The returned certificate also records the full check.
pub fn is_nearly_cyclic(m: &Matroid, order: &CyclicOrdering, p: StParams) -> Result<OrderingCertificate> {
    certify(m, order, p)
}

/// Clauses (i)-(iv): windows at position 1 or 2 are an `s`-circuit and a
/// `t`-cocircuit, and both recur two steps later.
pub fn is_fully_cyclic(m: &Matroid, order: &CyclicOrdering, p: StParams) -> Result<OrderingCertificate> {
    certify(m, order, p)
}

/// Which of the size and parity constraints on `n` bind.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub s: usize,
    pub t: usize,
    /// `n >= s + t - 2`; necessary for a nearly cyclic ordering.
    pub size_bound: bool,
    /// Whether the parity constraints apply (full ordering, `n > s + t - 2`).
    pub parity_applies: bool,
    pub n_even: bool,
    pub same_parity: bool,
    pub allowed: bool,
    pub binding: Vec<String>,
}

pub fn bound_predicates(n: usize, p: StParams, is_full: bool) -> BoundReport {
    let (s, t) = (p.s, p.t);
    let size_bound = n + 2 >= s + t;
    let parity_applies = is_full && n + 2 > s + t;
    let n_even = n.is_multiple_of(2);
    let same_parity = s % 2 == t % 2;
    let mut binding = Vec::new();
    if !size_bound {
        binding.push(format!("n = {n} < s + t - 2 = {}", s + t - 2));
    }
    if parity_applies && !n_even {
        binding.push(format!("n = {n} is odd"));
    }
    if parity_applies && !same_parity {
        binding.push(format!("s = {s} and t = {t} differ in parity"));
    }
    BoundReport {
        n,
        s,
        t,
        size_bound,
        parity_applies,
        n_even,
        same_parity,
        allowed: binding.is_empty(),
        binding,
    }
}
