//! Runs every structural check over a grid of fixtures and collects one
//! entry per (check, fixture).

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use cyclic_matroids::axioms::{exchange_sweep_seeded, validate_circuit_axioms, AxiomReport};
use cyclic_matroids::constructions::{free_spike, truncate, uniform, wheel, whirl};
use cyclic_matroids::counterexample::{
    check_ledger, forced_circuit_ledger, ledger_dependent_in, rank_bound_certificate,
    verify_two_block_circuits,
};
use cyclic_matroids::cyclic::{
    bound_predicates, certify, check_adjacent_windows, check_closure_windows, check_matroid_rank,
    check_nearly_upgrade, check_odd_window_upgrade, check_unique_window_circuit,
    check_window_ranks, check_window_structure, find_orderings, CyclicOrdering, OrderingKind,
    SearchMode, StParams,
};
use cyclic_matroids::matroid::orthogonality_check;
use cyclic_matroids::transversal::{
    apply_permutation, classify_circuit, deficient_set_violation, phi_map, psi, psi_presentation,
    transversal_matroid, BipartitePresentation, CircuitClass, MultiPathPresentation,
};
use cyclic_matroids::weakmap::{
    is_quotient, rank_condition_weak_map, truncation_cyclic, weak_map_pipeline,
};
use cyclic_matroids::{Matroid, Subset, VerificationReport, Witness};

use crate::error::{CliError, CliResult};

pub const DEFAULT_MAX_N: usize = 12;
pub const DEFAULT_SEED: u64 = 20_240_601;
pub const RANDOM_TRANSVERSAL_COUNT: usize = 20;
/// Largest ground set on which every nearly cyclic ordering is enumerated.
pub const NEARLY_SEARCH_MAX_N: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Psi,
    Truncation,
    Wheel,
    Whirl,
    Spike,
    Uniform,
    Random,
    Counterexample,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Psi,
        Family::Truncation,
        Family::Wheel,
        Family::Whirl,
        Family::Spike,
        Family::Uniform,
        Family::Random,
        Family::Counterexample,
    ];
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Psi => "psi",
            Family::Truncation => "truncation",
            Family::Wheel => "wheel",
            Family::Whirl => "whirl",
            Family::Spike => "spike",
            Family::Uniform => "uniform",
            Family::Random => "random",
            Family::Counterexample => "counterexample",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.to_string() == s)
            .ok_or_else(|| CliError::Invalid(format!("unknown family {s:?}")))
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub max_n: usize,
    pub families: Vec<Family>,
    pub seed: u64,
    /// Adds a fixture that is deliberately wrong.
    pub mutant: bool,
    pub timings: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_n: DEFAULT_MAX_N,
            families: Family::ALL.to_vec(),
            seed: DEFAULT_SEED,
            mutant: false,
            timings: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteEntry {
    pub check: String,
    pub fixture: String,
    pub passed: bool,
    pub instances: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub entries: usize,
    pub passed: usize,
    pub failed: usize,
    pub instances: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub version: u32,
    pub seed: u64,
    pub max_n: usize,
    pub families: Vec<Family>,
    pub passed: bool,
    pub summary: SuiteSummary,
    pub entries: Vec<SuiteEntry>,
}

impl SuiteReport {
    pub fn first_failure(&self) -> Option<&SuiteEntry> {
        self.entries.iter().find(|e| !e.passed)
    }

    /// Entries of one check, in fixture order.
    pub fn check(&self, id: &str) -> impl Iterator<Item = &SuiteEntry> {
        let id = id.to_string();
        self.entries.iter().filter(move |e| e.check == id)
    }
}

/// A matroid together with whatever structure the checks need to know.
#[derive(Clone)]
pub struct Fixture {
    pub name: String,
    pub family: Family,
    pub m: Matroid,
    /// A claimed full cyclic ordering.
    pub cyclic: Option<(CyclicOrdering, StParams)>,
    /// `(n, s)` when the fixture claims to be `Psi(n, s)`.
    pub psi: Option<(usize, usize)>,
    /// The presentation whose multi-path dual should map onto this fixture.
    pub presentation: Option<MultiPathPresentation>,
    /// `(base, i)` when the fixture is `T^i(base)`.
    pub truncation: Option<(Matroid, usize)>,
}

impl Fixture {
    fn plain(name: String, family: Family, m: Matroid) -> Self {
        Fixture {
            name,
            family,
            m,
            cyclic: None,
            psi: None,
            presentation: None,
            truncation: None,
        }
    }

    fn with_cyclic(mut self, s: usize, t: usize) -> CliResult<Self> {
        self.cyclic = Some((CyclicOrdering::natural(self.m.n()), StParams::new(s, t)?));
        Ok(self)
    }
}

fn psi_fixture(n: usize, s: usize) -> CliResult<Fixture> {
    let mut f = Fixture::plain(format!("psi({n},{s})"), Family::Psi, psi(n, s)?).with_cyclic(s, s)?;
    f.psi = Some((n, s));
    f.presentation = Some(psi_presentation(n, s)?);
    Ok(f)
}

/// `Psi(8, 3)` with the window `{e1, e2, e3}` made independent.
fn mutant_fixture() -> CliResult<Fixture> {
    let base = psi(8, 3)?;
    let broken = Subset::from_one_based([1, 2, 3]);
    let oracle = move |x: Subset| x == broken || base.is_independent(x);
    let m = Matroid::new(
        cyclic_matroids::subset::GroundSet::new(8)?,
        "psi(8,3)-mutant",
        oracle,
    );
    let mut f = Fixture::plain("psi(8,3)-mutant".into(), Family::Psi, m).with_cyclic(3, 3)?;
    f.psi = Some((8, 3));
    f.presentation = Some(psi_presentation(8, 3)?);
    Ok(f)
}

/// Random presentation on `n` elements with three to five vertices.
pub fn random_presentation(rng: &mut ChaCha8Rng, n: usize) -> BipartitePresentation {
    let m = rng.gen_range(3..=5);
    let nb = (0..m)
        .map(|_| Subset::from_bits(rng.gen_range(1..(1u64 << n))))
        .collect();
    BipartitePresentation::new(n, nb).expect("neighbourhoods lie in the ground set")
}

/// A uniformly random permutation of `0..n`.
pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    v
}

pub fn fixtures(cfg: &SuiteConfig) -> CliResult<Vec<Fixture>> {
    let max_n = cfg.max_n;
    let has = |f: Family| cfg.families.contains(&f);
    let mut out = Vec::new();
    if has(Family::Psi) {
        for s in 3..=5 {
            for n in ((2 * s - 2).max(6)..=max_n).step_by(2) {
                out.push(psi_fixture(n, s)?);
            }
        }
        if cfg.mutant {
            out.push(mutant_fixture()?);
        }
    }
    if has(Family::Truncation) {
        for s in 3..=5 {
            for t in [s + 2, s + 4] {
                for n in ((s + t).max(2 * s - 2)..=max_n).step_by(2) {
                    let i = (t - s) / 2;
                    let (m, _) = truncation_cyclic(n, s, t)?;
                    let mut f = Fixture::plain(format!("trunc{i}(psi({n},{s}))"), Family::Truncation, m)
                        .with_cyclic(s, t)?;
                    f.truncation = Some((psi(n, s)?, i));
                    out.push(f);
                }
            }
        }
    }
    if has(Family::Wheel) {
        for r in 3..=max_n / 2 {
            let mut f = Fixture::plain(format!("wheel({r})"), Family::Wheel, wheel(r)?).with_cyclic(3, 3)?;
            f.presentation = Some(psi_presentation(2 * r, 3)?);
            out.push(f);
        }
    }
    if has(Family::Whirl) {
        for r in 3..=max_n / 2 {
            let mut f = Fixture::plain(format!("whirl({r})"), Family::Whirl, whirl(r)?).with_cyclic(3, 3)?;
            f.presentation = Some(psi_presentation(2 * r, 3)?);
            out.push(f);
        }
    }
    if has(Family::Spike) {
        for r in 4..=(max_n / 2).min(6) {
            let (m, _) = free_spike(r)?;
            let mut f = Fixture::plain(format!("free-spike({r})"), Family::Spike, m).with_cyclic(4, 4)?;
            f.presentation = Some(psi_presentation(2 * r, 4)?);
            out.push(f);
        }
    }
    if has(Family::Uniform) {
        for (r, n) in [(2, 4), (2, 5), (3, 6), (1, 4)] {
            if n <= max_n {
                out.push(Fixture::plain(format!("uniform({r},{n})"), Family::Uniform, uniform(r, n)?));
            }
        }
        let base = uniform(3, 6)?;
        let mut f = Fixture::plain("trunc1(uniform(3,6))".into(), Family::Uniform, truncate(&base, 1)?);
        f.truncation = Some((base, 1));
        out.push(f);
    }
    if has(Family::Random) && max_n >= 8 {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        for j in 0..RANDOM_TRANSVERSAL_COUNT {
            let p = random_presentation(&mut rng, 8);
            let m = transversal_matroid(&p)?;
            out.push(Fixture::plain(format!("random-transversal-{j:02}"), Family::Random, m));
        }
        let w = wheel(4)?;
        for j in 0..3 {
            let perm = random_permutation(&mut rng, 8);
            let name = format!("wheel(4)-relabel-{j}");
            out.push(Fixture::plain(name.clone(), Family::Random, w.relabel(&perm, name)?));
        }
    }
    Ok(out)
}

type CheckFn = Box<dyn Fn() -> CliResult<VerificationReport> + Send + Sync>;

struct Task {
    check: &'static str,
    fixture: String,
    run: CheckFn,
}

fn task(check: &'static str, fixture: &str, run: impl Fn() -> CliResult<VerificationReport> + Send + Sync + 'static) -> Task {
    Task {
        check,
        fixture: fixture.to_string(),
        run: Box::new(run),
    }
}

fn from_axioms(check: &str, r: AxiomReport) -> VerificationReport {
    let mut out = VerificationReport::new(check);
    out.checked = r.checked;
    for v in r.violations {
        out.record(false, || Witness::new(v.axiom, v.witnesses));
    }
    out.checked = r.checked;
    out
}

fn single(check: &str, ok: bool, witness: impl FnOnce() -> Witness) -> VerificationReport {
    let mut r = VerificationReport::new(check);
    r.record(ok, witness);
    r
}

fn general_tasks(f: &Fixture, seed: u64, tasks: &mut Vec<Task>) {
    let m = f.m.clone();
    tasks.push(task("circuit-cocircuit-orthogonality", &f.name, move || {
        let mut r = VerificationReport::new("circuit-cocircuit-orthogonality");
        let c = m.circuits()?;
        let d = m.cocircuits()?;
        for x in c.iter() {
            for y in d.iter() {
                r.record(orthogonality_check(x, y), || {
                    Witness::new("circuit and cocircuit meet in one element", vec![x, y])
                });
            }
        }
        Ok(r)
    }));
    let m = f.m.clone();
    tasks.push(task("circuit-axioms", &f.name, move || {
        let c = m.circuits()?;
        Ok(from_axioms("circuit-axioms", validate_circuit_axioms(c.sets(), m.n())?))
    }));
    let m = f.m.clone();
    tasks.push(task("independence-exchange", &f.name, move || {
        Ok(from_axioms("independence-exchange", exchange_sweep_seeded(&m, seed)))
    }));
    if let Some((base, i)) = f.truncation.clone() {
        let (m, b) = (f.m.clone(), base.clone());
        tasks.push(task("truncation-independent-sets", &f.name, move || {
            let base = &b;
            let mut r = VerificationReport::new("truncation-independent-sets");
            let bound = base.full_rank().saturating_sub(i);
            for x in base.full().subsets() {
                let expected = base.is_independent(x) && x.len() <= bound;
                r.record(m.is_independent(x) == expected, || {
                    Witness::new("independence differs from the truncation rule", vec![x])
                });
            }
            Ok(r)
        }));
        let m = f.m.clone();
        tasks.push(task("quotient-circuit-unions", &f.name, move || {
            let mut r = VerificationReport::new("quotient-circuit-unions");
            let down = is_quotient(&base, &m)?;
            r.record(down.holds && down.routes_agree, || {
                Witness::new("truncation is not a quotient", down.violating_circuit.into_iter().collect())
            });
            let up = is_quotient(&m, &base)?;
            r.record(up.routes_agree && (up.holds == (i == 0)), || {
                Witness::new("reverse quotient verdict is wrong", up.violating_circuit.into_iter().collect())
            });
            Ok(r)
        }));
    }
}

fn cyclic_tasks(f: &Fixture, tasks: &mut Vec<Task>) {
    let Some((order, p)) = f.cyclic.clone() else {
        return;
    };
    let n = f.m.n();
    {
        let (m, order) = (f.m.clone(), order.clone());
        tasks.push(task("ordering-certificate", &f.name, move || {
            let cert = certify(&m, &order, p)?;
            let b = bound_predicates(m.n(), p, true);
            let mut r = single("ordering-certificate", cert.kind == OrderingKind::Full, || {
                Witness::new(format!("natural ordering is {:?}", cert.kind), vec![])
            });
            r.record(b.size_bound, || Witness::new("nearly ordering below s + t - 2", vec![]));
            r.record(b.allowed, || Witness::new(b.binding.join("; "), vec![]));
            Ok(r)
        }));
    }
    if n + 2 > p.s + p.t {
        type WindowCheck = fn(&Matroid, &CyclicOrdering, StParams) -> cyclic_matroids::Result<VerificationReport>;
        let checks: [(&'static str, WindowCheck); 5] = [
            ("adjacent-windows", check_adjacent_windows),
            ("window-structure", check_window_structure),
            ("closure-windows", check_closure_windows),
            ("window-ranks", check_window_ranks),
            ("matroid-rank", check_matroid_rank),
        ];
        for (id, check) in checks {
            let (m, order) = (f.m.clone(), order.clone());
            tasks.push(task(id, &f.name, move || Ok(check(&m, &order, p)?)));
        }
    }
    if n >= p.s + p.t {
        let (m, order) = (f.m.clone(), order.clone());
        tasks.push(task("odd-window-upgrade", &f.name, move || {
            let cert = check_odd_window_upgrade(&m, &order, p)?;
            Ok(single("odd-window-upgrade", cert.kind == OrderingKind::Full, || {
                Witness::new("odd circuit windows did not give a full ordering", vec![])
            }))
        }));
    }
    if p.s >= 3 && p.t >= 3 && n + 4 >= p.s + 2 * p.t {
        let (m, order) = (f.m.clone(), order.clone());
        tasks.push(task("unique-window-circuit", &f.name, move || {
            Ok(check_unique_window_circuit(&m, &order, p)?)
        }));
    }
    if p.t >= p.s && n + 1 >= p.s + p.t {
        let (m, order) = (f.m.clone(), order.clone());
        tasks.push(task("weak-map-pipeline", &f.name, move || {
            let r = weak_map_pipeline(&m, &order, p)?;
            let mut out = single("weak-map-pipeline", r.weak_map.holds && r.weak_map.routes_agree, || {
                Witness::new(
                    "image of a circuit is independent",
                    r.weak_map.violating_circuit.into_iter().collect(),
                )
            });
            out.note(format!("{}; {} circuits", r.weak_map.relation, r.weak_map.circuits_checked));
            Ok(out)
        }));
    }
}

fn psi_tasks(f: &Fixture, tasks: &mut Vec<Task>) {
    let Some((n, s)) = f.psi else {
        return;
    };
    let m = f.m.clone();
    tasks.push(task("psi-rank", &f.name, move || {
        let p = psi_presentation(n, s)?;
        Ok(single("psi-rank", m.full_rank() == n / 2 && m.full_rank() == n - p.m(), || {
            Witness::new(format!("rank {} instead of {}", m.full_rank(), n / 2), vec![])
        }))
    }));
    let m = f.m.clone();
    tasks.push(task("deficient-set", &f.name, move || {
        let p = psi_presentation(n, s)?;
        let mut r = VerificationReport::new("deficient-set");
        for c in m.circuits()?.iter() {
            r.record(deficient_set_violation(p.base(), c).is_none(), || {
                Witness::new("circuit escapes a deficient neighbourhood", vec![c])
            });
        }
        Ok(r)
    }));
    let m = f.m.clone();
    tasks.push(task("circuit-classification", &f.name, move || {
        let p = psi_presentation(n, s)?;
        let mut r = VerificationReport::new("circuit-classification");
        let (mut spanning, mut interval) = (0, 0);
        for c in m.circuits()?.iter() {
            let class = classify_circuit(&p, &m, c)?;
            match class {
                CircuitClass::Spanning => spanning += 1,
                CircuitClass::Interval { .. } => interval += 1,
                CircuitClass::Unclassified => {}
            }
            r.record(class != CircuitClass::Unclassified, || {
                Witness::new("circuit is neither spanning nor an interval circuit", vec![c])
            });
        }
        r.note(format!("{spanning} spanning, {interval} interval"));
        Ok(r)
    }));
    let m = f.m.clone();
    tasks.push(task("self-duality", &f.name, move || {
        let phi = phi_map(n, s)?;
        let mapped = m.circuits()?.map(|c| apply_permutation(&phi, c));
        let dual = m.dual();
        let cocircuits = dual.circuits()?;
        let mut r = VerificationReport::new("self-duality");
        for c in mapped.iter() {
            r.record(cocircuits.contains(c), || Witness::new("mapped circuit is not a cocircuit", vec![c]));
        }
        r.record(mapped.len() == cocircuits.len(), || {
            Witness::new(format!("{} circuits vs {} cocircuits", mapped.len(), cocircuits.len()), vec![])
        });
        Ok(r)
    }));
    let m = f.m.clone();
    tasks.push(task("truncation-cyclic", &f.name, move || {
        let mut r = VerificationReport::new("truncation-cyclic");
        let expected = psi(n, s)?;
        r.record(m.same_independent_sets(&expected)?, || Witness::new("fixture differs from its construction", vec![]));
        for t in (s..=n + 2 - s).step_by(2) {
            let (_, cert) = truncation_cyclic(n, s, t)?;
            r.record(cert.kind == OrderingKind::Full, || {
                Witness::new(format!("truncation for t = {t} is not (s, t)-cyclic"), vec![])
            });
        }
        Ok(r)
    }));
}

fn presentation_tasks(f: &Fixture, tasks: &mut Vec<Task>) {
    let Some(p) = f.presentation.clone() else {
        return;
    };
    let m = f.m.clone();
    tasks.push(task("rank-condition-weak-map", &f.name, move || {
        let r = rank_condition_weak_map(&m, &p)?;
        let mut out = VerificationReport::new("rank-condition-weak-map");
        match &r.weak_map {
            Some(w) => out.record(w.holds && w.routes_agree, || {
                Witness::new("rank condition holds but the weak map fails", w.violating_circuit.into_iter().collect())
            }),
            None => out.checked += 1,
        }
        out.note(match r.failing {
            None => "rank condition holds".to_string(),
            Some((i, k)) => format!("rank condition fails at i = {i}, k = {k}"),
        });
        Ok(out)
    }));
}

fn nearly_tasks(f: &Fixture, tasks: &mut Vec<Task>) {
    let n = f.m.n();
    if n > NEARLY_SEARCH_MAX_N {
        return;
    }
    let params: Vec<StParams> = match &f.cyclic {
        Some((_, p)) => vec![*p],
        None if matches!(f.family, Family::Random | Family::Uniform) => {
            vec![StParams::new(3, 3).expect("3 >= 2")]
        }
        None => vec![],
    };
    for p in params {
        let m = f.m.clone();
        tasks.push(task("nearly-to-full", &f.name, move || {
            let found = find_orderings(&m, p, SearchMode::Nearly, usize::MAX)?;
            let mut r = VerificationReport::new("nearly-to-full");
            let mut below = 0;
            for o in &found {
                let u = check_nearly_upgrade(&m, o, p)?;
                if !u.bounds_hold && !u.full {
                    below += 1;
                }
                r.record(u.holds, || {
                    Witness::new(format!("nearly ordering {:?} is not full", o.to_one_based()), vec![])
                });
            }
            r.note(format!("({},{}): {} nearly ordering classes", p.s, p.t, found.len()));
            if below > 0 {
                r.note(format!("{below} nearly but not full below the size bounds"));
            }
            Ok(r)
        }));
    }
}

fn counterexample_tasks(max_n: usize, tasks: &mut Vec<Task>) {
    for s in 4..=6 {
        for n in ((4 * s - 8).max(8)..=max_n).step_by(2) {
            let name = format!("psi({n},{s})");
            tasks.push(task("two-block-circuits", &name, move || Ok(verify_two_block_circuits(n, s)?)));
            tasks.push(task("forced-circuit-ledger", &name, move || {
                let ledger = forced_circuit_ledger(n, s)?;
                let mut r = check_ledger(&ledger);
                if n <= DEFAULT_MAX_N + 2 {
                    r.merge(ledger_dependent_in(&ledger, &psi(n, s)?)?);
                }
                r.note(format!("{} entries", ledger.len()));
                Ok(r)
            }));
            tasks.push(task("rank-contradiction", &name, move || {
                let c = rank_bound_certificate(n, s)?;
                let mut r = c.verification.clone();
                r.record(c.contradiction, || Witness::new("no contradiction", vec![]));
                r.note(c.statement);
                Ok(r)
            }));
        }
    }
}

fn run_task(t: &Task, timings: bool) -> SuiteEntry {
    let start = Instant::now();
    let outcome = (t.run)();
    let millis = timings.then(|| start.elapsed().as_millis() as u64);
    match outcome {
        Ok(r) => SuiteEntry {
            check: t.check.to_string(),
            fixture: t.fixture.clone(),
            passed: r.passed,
            instances: r.checked,
            failures: r.failures.len(),
            witness: r.failures.into_iter().next(),
            notes: r.notes,
            millis,
        },
        Err(e) => SuiteEntry {
            check: t.check.to_string(),
            fixture: t.fixture.clone(),
            passed: false,
            instances: 0,
            failures: 1,
            witness: Some(Witness::new(format!("error: {e}"), vec![])),
            notes: vec![],
            millis,
        },
    }
}

pub fn run_suite(cfg: &SuiteConfig) -> CliResult<SuiteReport> {
    let fx = fixtures(cfg)?;
    let mut tasks = Vec::new();
    for f in &fx {
        general_tasks(f, cfg.seed, &mut tasks);
        cyclic_tasks(f, &mut tasks);
        psi_tasks(f, &mut tasks);
        presentation_tasks(f, &mut tasks);
        nearly_tasks(f, &mut tasks);
    }
    if cfg.families.contains(&Family::Counterexample) {
        counterexample_tasks(cfg.max_n, &mut tasks);
    }
    let mut entries: Vec<SuiteEntry> = tasks.par_iter().map(|t| run_task(t, cfg.timings)).collect();
    entries.sort_by(|a, b| (&a.check, &a.fixture).cmp(&(&b.check, &b.fixture)));
    let passed_count = entries.iter().filter(|e| e.passed).count();
    let summary = SuiteSummary {
        entries: entries.len(),
        passed: passed_count,
        failed: entries.len() - passed_count,
        instances: entries.iter().map(|e| e.instances).sum(),
    };
    let mut families = cfg.families.clone();
    families.sort();
    families.dedup();
    Ok(SuiteReport {
        version: 1,
        seed: cfg.seed,
        max_n: cfg.max_n,
        families,
        passed: summary.failed == 0,
        summary,
        entries,
    })
}
