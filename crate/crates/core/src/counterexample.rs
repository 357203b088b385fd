//! Two-block circuits of `Psi(n, s)` and the rank contradiction for a
//! matroid `M'` of rank `n/2 + 1` whose odd windows of length `s` are
//! circuits and of which `Psi(n, s)` would be a quotient.
//!
//! Positions are one-based along the natural cyclic order `e_1, .., e_n`.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{invalid, precondition, Error, Result};
use crate::matroid::Matroid;
use crate::report::{VerificationReport, Witness};
use crate::subset::{sigma, wrap, Subset};
use crate::transversal::psi;

/// Parameters of a two-block set `C_{i,k,l}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TwoBlockParams {
    pub i: usize,
    pub k: usize,
    pub l: usize,
    pub s: usize,
    pub n: usize,
}

impl TwoBlockParams {
    pub fn new(i: usize, k: usize, l: usize, s: usize, n: usize) -> Result<Self> {
        check_ambient(n, s)?;
        if i == 0 || i > n || i.is_multiple_of(2) {
            return Err(invalid(format!("start {i} must be odd and in 1..={n}")));
        }
        if k < 2 || l < 2 || k > s - 1 || l > s - 1 {
            return Err(invalid(format!("block lengths must lie in 2..={}", s - 1)));
        }
        if k + l < s - 1 || k + l > 2 * s - 4 {
            return Err(invalid(format!(
                "k + l = {} outside {}..={}",
                k + l,
                s - 1,
                2 * s - 4
            )));
        }
        Ok(TwoBlockParams { i, k, l, s, n })
    }

    fn pos(&self) -> (i64, i64, i64, i64) {
        (self.i as i64, self.k as i64, self.l as i64, self.s as i64)
    }

    /// First position of the second block.
    fn second_start(&self) -> i64 {
        let (i, k, l, s) = self.pos();
        i + 2 * k + l - s + 2
    }

    fn end(&self) -> i64 {
        self.second_start() + self.l as i64 - 1
    }

    pub fn total(&self) -> usize {
        self.k + self.l
    }
}

fn check_ambient(n: usize, s: usize) -> Result<()> {
    if s < 4 {
        return Err(precondition(format!("need s >= 4, got {s}")));
    }
    if n < 4 * s - 8 {
        return Err(precondition(format!("need n >= 4s - 8 = {}, got {n}", 4 * s - 8)));
    }
    if !n.is_multiple_of(2) {
        return Err(precondition(format!("n = {n} must be even")));
    }
    if n > 64 {
        return Err(Error::TooLarge { n, cap: 64 });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TwoBlockSet {
    pub set: Subset,
    /// The gap between the blocks.
    pub x_range: Subset,
    pub excluded: Subset,
    /// `x_range` minus `excluded`.
    pub admissible: Subset,
}

/// `C_{i,k,l} = sigma(i, i+k-1) ∪ sigma(i+2k+l-s+2, i+2k+2l-s+1)` with its
/// gap and the gap positions that may not be added.
pub fn two_block_set(blk: TwoBlockParams) -> TwoBlockSet {
    let n = blk.n;
    let (i, k, _, s) = blk.pos();
    let b = blk.second_start();
    let set = sigma(n, i, i + k - 1) | sigma(n, b, blk.end());
    let x_range = sigma(n, i + k, b - 1);
    let mut excluded = Subset::EMPTY;
    if blk.k == blk.s - 1 {
        excluded = excluded.with(wrap(n, i + k) - 1);
    }
    if blk.l as i64 == s - 1 {
        excluded = excluded.with(wrap(n, b - 1) - 1);
    }
    TwoBlockSet {
        set,
        x_range,
        excluded,
        admissible: x_range - excluded,
    }
}

/// Every valid `(i, k, l)` for the given ambient parameters.
pub fn two_block_params(n: usize, s: usize) -> Result<Vec<TwoBlockParams>> {
    check_ambient(n, s)?;
    let mut out = Vec::new();
    for total in s - 1..=2 * s - 4 {
        for i in (1..=n).step_by(2) {
            for k in 2.max(total.saturating_sub(s - 1))..=(s - 1).min(total - 2) {
                out.push(TwoBlockParams::new(i, k, total - k, s, n)?);
            }
        }
    }
    Ok(out)
}

/// Checks that `C_{i,k,l} ∪ {x}` is a circuit of `Psi(n, s)` for every valid
/// blk and admissible `x`, against the enumerated circuit family.
pub fn verify_two_block_circuits(n: usize, s: usize) -> Result<VerificationReport> {
    let params_list = two_block_params(n, s)?;
    let m = psi(n, s)?;
    let circuits = m.circuits()?;
    let mut report = VerificationReport::new(format!("two-block circuits of Psi({n},{s})"));
    for blk in params_list {
        let tb = two_block_set(blk);
        for x in tb.admissible.iter() {
            let c = tb.set.with(x);
            report.record(circuits.contains(c), || {
                Witness::new(
                    format!("C_{{{},{},{}}} + e{} is not a circuit", blk.i, blk.k, blk.l, x + 1),
                    vec![c],
                )
            });
        }
    }
    Ok(report)
}

/// One `(i, k, l, x)` with `x` a one-based position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TwoBlockInstance {
    pub i: usize,
    pub k: usize,
    pub l: usize,
    pub x: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DerivationRule {
    /// An odd window of length `s`, a circuit by hypothesis.
    OddWindow,
    /// `k + l = s`: two overlapping odd windows.
    AdjacentWindows,
    /// `k = s - 1`.
    FullFirstBlock,
    /// `l = s - 1`.
    FullSecondBlock,
    /// `k = l = 3`, so `s = 5`.
    ThreeThree,
    /// `k >= 4`.
    LongFirstBlock,
    /// `l >= 4` with `k <= 3`: the `k >= 4` steps in the reversed order.
    LongSecondBlock,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForcedCircuit {
    pub set: Subset,
    pub total: usize,
    /// `None` for the odd windows themselves.
    pub instance: Option<TwoBlockInstance>,
    pub rule: DerivationRule,
    /// The two circuits eliminated to obtain this one.
    pub parents: Option<[Subset; 2]>,
    /// One-based element removed by the elimination.
    pub eliminated: Option<usize>,
}

/// Sets forced to be circuits of `M'`, each with the elimination step that
/// produces it from earlier entries.
///
/// An elimination only guarantees some circuit inside the union minus the
/// element, so the ledger records dependence; each entry is then a circuit
/// of `M'` because it is a circuit of `Psi(n, s)` and every circuit of `M'`
/// is a union of circuits of the quotient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForcedCircuitLedger {
    pub n: usize,
    pub s: usize,
    pub entries: Vec<ForcedCircuit>,
    #[serde(skip)]
    index: HashMap<Subset, usize>,
}

impl ForcedCircuitLedger {
    pub fn get(&self, set: Subset) -> Option<&ForcedCircuit> {
        self.index.get(&set).map(|&j| &self.entries[j])
    }

    pub fn contains(&self, set: Subset) -> bool {
        self.index.contains_key(&set)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn find(&self, inst: TwoBlockInstance) -> Option<&ForcedCircuit> {
        self.entries.iter().find(|e| e.instance == Some(inst))
    }

    fn is_window(&self, set: Subset) -> bool {
        (1..=self.n as i64)
            .step_by(2)
            .any(|i| sigma(self.n, i, i + self.s as i64 - 1) == set)
    }

    fn push(&mut self, entry: ForcedCircuit) {
        self.index.entry(entry.set).or_insert(self.entries.len());
        self.entries.push(entry);
    }
}

/// Position map used to replay a derivation in the reversed order.
struct Frame {
    n: usize,
    flip: Option<i64>,
}

impl Frame {
    fn at(&self, p: i64) -> usize {
        let q = match self.flip {
            Some(c) => c - p,
            None => p,
        };
        wrap(self.n, q) - 1
    }

    fn run(&self, a: i64, b: i64) -> Subset {
        (a..=b).map(|p| self.at(p)).collect()
    }

    fn block_set(&self, i: i64, k: i64, l: i64, s: i64, x: i64) -> Subset {
        let b = i + 2 * k + l - s + 2;
        (self.run(i, i + k - 1) | self.run(b, b + l - 1)).with(self.at(x))
    }
}

struct Step {
    rule: DerivationRule,
    left: Subset,
    right: Subset,
    element: usize,
}

/// The elimination that yields `C_{i,k,l} ∪ {x}` when `k + l > s`, in the
/// frame's coordinates. `k >= 4` is assumed to have been arranged by the
/// caller through the frame.
fn long_first_block(f: &Frame, i: i64, k: i64, l: i64, s: i64, x: i64) -> (Subset, Subset, usize) {
    let b = i + 2 * k + l - s + 2;
    if x != b - 1 {
        let left = f.block_set(i, k, l - 1, s, x);
        let right = if l == s - 2 && x == b - 2 {
            f.run(b - 2, b + l - 1)
        } else {
            f.block_set(i + 2, k - 2, l + 1, s, x)
        };
        (left, right, f.at(b - 1))
    } else {
        let left = f.block_set(i, k, l - 1, s, i + k);
        let right = f.block_set(i + 2, k - 2, l + 1, s, i + k);
        (left, right, f.at(i + k))
    }
}

fn derive(n: usize, blk: TwoBlockParams, x: i64) -> Step {
    let (i, k, l, s) = blk.pos();
    let f = Frame { n, flip: None };
    let b = blk.second_start();
    let step = |rule, (left, right, element)| Step {
        rule,
        left,
        right,
        element,
    };
    if k + l == s {
        let y = if x == i + k { i + k + 1 } else { i + k };
        return step(
            DerivationRule::AdjacentWindows,
            (f.run(i, i + s - 1), f.run(i + 2, i + s + 1), f.at(y)),
        );
    }
    if k == s - 1 {
        return step(
            DerivationRule::FullFirstBlock,
            (f.block_set(i + 2, k - 1, l, s, x), f.run(i, i + s - 1), f.at(i + s - 1)),
        );
    }
    if l == s - 1 {
        return step(
            DerivationRule::FullSecondBlock,
            (f.block_set(i, k, l - 1, s, x), f.run(b - 1, b + s - 2), f.at(b - 1)),
        );
    }
    if k == 3 && l == 3 {
        let parts = if x == i + 3 {
            (f.block_set(i + 2, 2, 3, s, i + 4), f.run(i, i + 4), f.at(i + 4))
        } else {
            let other = if x == i + 4 { i + 5 } else { i + 4 };
            (f.block_set(i, 3, 2, s, i + 4), f.run(i + 4, i + 8), f.at(other))
        };
        return step(DerivationRule::ThreeThree, parts);
    }
    if k >= 4 {
        return step(DerivationRule::LongFirstBlock, long_first_block(&f, i, k, l, s, x));
    }
    let c = i + blk.end();
    let mirrored = Frame { n, flip: Some(c) };
    step(
        DerivationRule::LongSecondBlock,
        long_first_block(&mirrored, i, l, k, s, c - x),
    )
}

/// Builds the ledger by induction on `k + l`: the odd windows first, then
/// every `C_{i,k,l} ∪ {x}` from two earlier entries. Any step whose parents
/// are missing or do not combine to the target is an error.
pub fn forced_circuit_ledger(n: usize, s: usize) -> Result<ForcedCircuitLedger> {
    let params_list = two_block_params(n, s)?;
    let mut ledger = ForcedCircuitLedger {
        n,
        s,
        entries: Vec::new(),
        index: HashMap::new(),
    };
    for i in (1..=n as i64).step_by(2) {
        ledger.push(ForcedCircuit {
            set: sigma(n, i, i + s as i64 - 1),
            total: s - 1,
            instance: None,
            rule: DerivationRule::OddWindow,
            parents: None,
            eliminated: None,
        });
    }
    for blk in params_list {
        let tb = two_block_set(blk);
        for x in tb.admissible.iter() {
            let target = tb.set.with(x);
            let xp = blk.i as i64 + blk.k as i64 + (positions_after(n, blk.i + blk.k, x)) as i64;
            let inst = TwoBlockInstance {
                i: blk.i,
                k: blk.k,
                l: blk.l,
                x: x + 1,
            };
            if blk.total() == s - 1 {
                if !ledger.is_window(target) {
                    return Err(Error::Derivation(format!("{inst:?} is not an odd window")));
                }
                ledger.push(ForcedCircuit {
                    set: target,
                    total: s - 1,
                    instance: Some(inst),
                    rule: DerivationRule::OddWindow,
                    parents: None,
                    eliminated: None,
                });
                continue;
            }
            let st = derive(n, blk, xp);
            for parent in [st.left, st.right] {
                match ledger.get(parent) {
                    Some(p) if p.total < blk.total() => {}
                    _ => {
                        return Err(Error::Derivation(format!(
                            "{inst:?}: parent {parent} is not available"
                        )))
                    }
                }
            }
            if !elimination_fits(target, st.left, st.right, st.element) {
                return Err(Error::Derivation(format!(
                    "{inst:?}: eliminating e{} from {} and {} does not land in {target}",
                    st.element + 1,
                    st.left,
                    st.right
                )));
            }
            ledger.push(ForcedCircuit {
                set: target,
                total: blk.total(),
                instance: Some(inst),
                rule: st.rule,
                parents: Some([st.left, st.right]),
                eliminated: Some(st.element + 1),
            });
        }
    }
    Ok(ledger)
}

/// Offset of zero-based element `x` from one-based position `from`, going
/// forward around the cycle.
fn positions_after(n: usize, from: usize, x: usize) -> usize {
    (x + 1 + n - wrap(n, from as i64)) % n
}

/// Circuit elimination of `e` between distinct `left` and `right` gives a
/// circuit inside `(left ∪ right) - e`, so a superset of that is dependent.
pub fn elimination_fits(target: Subset, left: Subset, right: Subset, e: usize) -> bool {
    left != right
        && left.contains(e)
        && right.contains(e)
        && (left | right).without(e).is_subset_of(target)
}

/// Re-checks every recorded step of the ledger.
pub fn check_ledger(ledger: &ForcedCircuitLedger) -> VerificationReport {
    let mut report = VerificationReport::new("forced-circuit ledger steps");
    for entry in &ledger.entries {
        let ok = match (entry.parents, entry.eliminated) {
            (None, None) => entry.rule == DerivationRule::OddWindow && ledger.is_window(entry.set),
            (Some([a, b]), Some(e)) => {
                let avail = |p: Subset| ledger.get(p).is_some_and(|q| q.total < entry.total);
                avail(a) && avail(b) && elimination_fits(entry.set, a, b, e - 1)
            }
            _ => false,
        };
        report.record(ok, || Witness::new(format!("step {:?}", entry.rule), vec![entry.set]));
    }
    report
}

/// Every ledger entry must be dependent in `m`.
pub fn ledger_dependent_in(ledger: &ForcedCircuitLedger, m: &Matroid) -> Result<VerificationReport> {
    if m.n() != ledger.n {
        return Err(Error::GroundMismatch {
            left: ledger.n,
            right: m.n(),
        });
    }
    let mut report = VerificationReport::new(format!("ledger entries dependent in {}", m.name()));
    for entry in &ledger.entries {
        report.record(m.is_dependent(entry.set), || {
            Witness::new("independent ledger entry", vec![entry.set])
        });
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum ChainReason {
    /// The starting set is a circuit, so its rank is one less than its size.
    Circuit { circuit: Subset },
    /// Adding one element raises the rank by at most one.
    Extend { element: usize },
    /// The added element lies in a circuit inside the new set.
    Closure { element: usize, circuit: Subset },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainLine {
    pub set: Subset,
    /// Upper bound on the rank of `set` in `M'`.
    pub bound: usize,
    #[serde(flatten)]
    pub reason: ChainReason,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankContradiction {
    pub n: usize,
    pub s: usize,
    /// Rank of `M'` by hypothesis.
    pub assumed_rank: usize,
    /// Rank bound for the whole ground set from the chain.
    pub derived_bound: usize,
    pub chain: Vec<ChainLine>,
    pub verification: VerificationReport,
    pub contradiction: bool,
    pub statement: String,
}

/// Bounds the rank of `M'` by `n/2`: `r(e_1..e_{s+2u}) <= s-1+u` along the
/// odd windows, then the ledger circuits `C_{n-2s+5,s-2,s-2} ∪ {x}` put the
/// remaining elements in the closure of `e_1..e_{n-s+2}`.
pub fn rank_bound_certificate(n: usize, s: usize) -> Result<RankContradiction> {
    let ledger = forced_circuit_ledger(n, s)?;
    let si = s as i64;
    let mut chain = Vec::new();
    let start = sigma(n, 1, si);
    chain.push(ChainLine {
        set: start,
        bound: s - 1,
        reason: ChainReason::Circuit { circuit: start },
    });
    let steps = n / 2 + 1 - s;
    for u in 0..steps as i64 {
        let last = chain.last().expect("chain starts non-empty");
        let (set, bound) = (last.set, last.bound);
        let a = wrap(n, si + 2 * u + 1) - 1;
        chain.push(ChainLine {
            set: set.with(a),
            bound: bound + 1,
            reason: ChainReason::Extend { element: a + 1 },
        });
        let c = wrap(n, si + 2 * u + 2) - 1;
        chain.push(ChainLine {
            set: set.with(a).with(c),
            bound: bound + 1,
            reason: ChainReason::Closure {
                element: c + 1,
                circuit: sigma(n, 2 * u + 3, 2 * u + si + 2),
            },
        });
    }
    let blk = TwoBlockParams::new(n + 5 - 2 * s, s - 2, s - 2, s, n)?;
    let tb = two_block_set(blk);
    for x in tb.admissible.iter() {
        let last = chain.last().expect("chain starts non-empty");
        let (set, bound) = (last.set, last.bound);
        chain.push(ChainLine {
            set: set.with(x),
            bound,
            reason: ChainReason::Closure {
                element: x + 1,
                circuit: tb.set.with(x),
            },
        });
    }
    let derived_bound = chain.last().expect("chain starts non-empty").bound;
    let assumed_rank = n / 2 + 1;
    let verification = check_chain(&chain, &ledger, n);
    let contradiction = verification.passed && derived_bound < assumed_rank;
    let statement = if contradiction {
        format!(
            "r(M') <= {derived_bound} < {assumed_rank} = r(M'): Psi({n},{s}) is not a quotient of M'"
        )
    } else {
        "no contradiction certified".to_string()
    };
    Ok(RankContradiction {
        n,
        s,
        assumed_rank,
        derived_bound,
        chain,
        verification,
        contradiction,
        statement,
    })
}

/// Checks a rank chain line by line. Every cited circuit must be a ledger
/// entry and the final set must be the whole ground set.
pub fn check_chain(chain: &[ChainLine], ledger: &ForcedCircuitLedger, n: usize) -> VerificationReport {
    let mut report = VerificationReport::new("rank chain");
    let Some(first) = chain.first() else {
        report.record(false, || Witness::new("empty chain", vec![]));
        return report;
    };
    let base_ok = matches!(first.reason, ChainReason::Circuit { circuit } if circuit == first.set)
        && ledger.contains(first.set)
        && first.bound + 1 == first.set.len();
    report.record(base_ok, || Witness::new("chain base is not a forced circuit", vec![first.set]));
    for pair in chain.windows(2) {
        let (prev, line) = (&pair[0], &pair[1]);
        let ok = match line.reason {
            ChainReason::Circuit { .. } => false,
            ChainReason::Extend { element } => {
                element >= 1
                    && !prev.set.contains(element - 1)
                    && line.set == prev.set.with(element - 1)
                    && line.bound == prev.bound + 1
            }
            ChainReason::Closure { element, circuit } => {
                element >= 1
                    && !prev.set.contains(element - 1)
                    && line.set == prev.set.with(element - 1)
                    && line.bound == prev.bound
                    && circuit.contains(element - 1)
                    && circuit.is_subset_of(line.set)
                    && ledger.contains(circuit)
            }
        };
        report.record(ok, || Witness::new(format!("bad step {:?}", line.reason), vec![line.set]));
    }
    let last = chain.last().expect("non-empty");
    report.record(last.set == Subset::full(n), || {
        Witness::new("chain does not reach the ground set", vec![last.set])
    });
    report
}
