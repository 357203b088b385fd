//! Subcommand bodies. Each returns canonical JSON and an exit code.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use serde_json::json;

use cyclic_matroids::counterexample::{
    forced_circuit_ledger, rank_bound_certificate, verify_two_block_circuits,
};
use cyclic_matroids::cyclic::{certify, find_orderings_capped, CyclicOrdering, OrderingKind, SearchMode, StParams};
use cyclic_matroids::limits::search_cap;
use cyclic_matroids::weakmap::{is_quotient, is_weak_map, ElementBijection};
use cyclic_matroids::Subset;

use crate::document::{canonical_json, MatroidDocument, Representation};
use crate::error::{exit, CliError, CliResult};
use crate::suite::{run_suite, SuiteConfig};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub json: String,
    pub code: i32,
    /// Short diagnostic for the error stream when `code` is nonzero.
    pub message: Option<String>,
}

impl Outcome {
    fn new<T: Serialize>(value: &T, holds: bool) -> CliResult<Self> {
        Ok(Outcome {
            json: canonical_json(value)?,
            code: if holds { exit::HOLDS } else { exit::FAILS },
            message: None,
        })
    }
}

pub fn read_text(path: &Path) -> CliResult<String> {
    let io = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

pub fn load_document(path: &Path, max_n: usize) -> CliResult<MatroidDocument> {
    let doc = MatroidDocument::parse(&read_text(path)?)?;
    if doc.n() > max_n {
        return Err(CliError::Invalid(format!(
            "{}: {} elements exceeds --max-n {max_n}",
            path.display(),
            doc.n()
        )));
    }
    Ok(doc)
}

/// A JSON array of one-based indices.
pub fn load_index_list(path: &Path) -> CliResult<Vec<usize>> {
    Ok(serde_json::from_str(&read_text(path)?)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenBase {
    Psi { n: usize, s: usize },
    Uniform { r: usize, n: usize },
    Construction { kind: crate::document::ConstructionKind, r: usize },
}

pub fn gen(base: GenBase, truncate: Option<usize>) -> CliResult<Outcome> {
    let rep = match base {
        GenBase::Psi { n, s } => Representation::Psi { n, s },
        GenBase::Uniform { r, n } => Representation::Uniform { r, n },
        GenBase::Construction { kind, r } => Representation::Construction { kind, r },
    };
    let mut doc = MatroidDocument::new(rep)?;
    if let Some(i) = truncate {
        doc = MatroidDocument::new(Representation::Truncate {
            inner: Box::new(doc),
            i,
        })?;
    }
    doc.build()?;
    Outcome::new(&doc, true)
}

fn one_based(n: usize, v: &[usize]) -> CliResult<Subset> {
    if let Some(&bad) = v.iter().find(|&&e| e == 0 || e > n) {
        return Err(CliError::Invalid(format!("element {bad} outside 1..={n}")));
    }
    Ok(Subset::from_one_based(v.iter().copied()))
}

pub fn rank(doc: &MatroidDocument, set: Option<&[usize]>) -> CliResult<Outcome> {
    let m = doc.build()?;
    let x = match set {
        Some(v) => one_based(m.n(), v)?,
        None => m.full(),
    };
    let value = json!({
        "n": m.n(),
        "set": x,
        "rank": m.rank(x),
        "full_rank": m.full_rank(),
        "corank": m.corank(),
    });
    Outcome::new(&value, true)
}

pub fn circuits(doc: &MatroidDocument, cocircuits: bool) -> CliResult<Outcome> {
    let m = doc.build()?;
    let family = if cocircuits { m.cocircuits()? } else { m.circuits()? };
    let mut by_size = BTreeMap::new();
    for c in family.iter() {
        *by_size.entry(c.len().to_string()).or_insert(0usize) += 1;
    }
    let value = json!({
        "n": m.n(),
        "kind": if cocircuits { "cocircuits" } else { "circuits" },
        "count": family.len(),
        "by_size": by_size,
        "sets": family.sets(),
    });
    Outcome::new(&value, true)
}

pub fn verify_ordering(
    doc: &MatroidDocument,
    order: Option<&[usize]>,
    p: StParams,
    mode: SearchMode,
) -> CliResult<Outcome> {
    let m = doc.build()?;
    let order = match order {
        Some(v) => CyclicOrdering::from_one_based(v)?,
        None => CyclicOrdering::natural(m.n()),
    };
    if order.n() != m.n() {
        return Err(CliError::Invalid(format!(
            "ordering has {} elements, the matroid {}",
            order.n(),
            m.n()
        )));
    }
    let cert = certify(&m, &order, p)?;
    let holds = match mode {
        SearchMode::Nearly => cert.nearly,
        SearchMode::Full => cert.kind == OrderingKind::Full,
    };
    let value = json!({
        "order": order.to_one_based(),
        "s": p.s,
        "t": p.t,
        "mode": mode_name(mode),
        "holds": holds,
        "certificate": cert,
    });
    Outcome::new(&value, holds)
}

fn mode_name(mode: SearchMode) -> &'static str {
    match mode {
        SearchMode::Nearly => "nearly",
        SearchMode::Full => "full",
    }
}

pub fn find_orderings(doc: &MatroidDocument, p: StParams, mode: SearchMode, limit: usize) -> CliResult<Outcome> {
    let m = doc.build()?;
    let found = find_orderings_capped(&m, p, mode, limit, search_cap())?;
    let value = json!({
        "s": p.s,
        "t": p.t,
        "mode": mode_name(mode),
        "limit": limit,
        "count": found.len(),
        "orderings": found.iter().map(|o| o.to_one_based()).collect::<Vec<_>>(),
    });
    Outcome::new(&value, true)
}

pub fn weakmap(
    source: &MatroidDocument,
    target: &MatroidDocument,
    map: Option<&[usize]>,
    quotient: bool,
) -> CliResult<Outcome> {
    let m1 = source.build()?;
    let m2 = target.build()?;
    let report = if quotient {
        if map.is_some() {
            return Err(CliError::Invalid("--quotient compares on a shared ground set; drop --map".into()));
        }
        is_quotient(&m1, &m2)?
    } else {
        let phi = match map {
            Some(v) => ElementBijection::from_one_based(v)?,
            None => ElementBijection::identity(m1.n()),
        };
        is_weak_map(&m1, &m2, &phi)?
    };
    if !report.routes_agree {
        return Err(CliError::Invalid("the two characterisations disagree".into()));
    }
    let holds = report.holds;
    Outcome::new(&report, holds)
}

pub fn suite(cfg: &SuiteConfig) -> CliResult<Outcome> {
    let report = run_suite(cfg)?;
    let mut out = Outcome::new(&report, report.passed)?;
    if let Some(e) = report.first_failure() {
        out.message = Some(format!(
            "{} on {} failed: {}",
            e.check,
            e.fixture,
            e.witness.as_ref().map_or("no witness", |w| w.description.as_str())
        ));
    }
    Ok(out)
}

pub fn counterexample(n: usize, s: usize) -> CliResult<Outcome> {
    let two_block = verify_two_block_circuits(n, s)?;
    let ledger = forced_circuit_ledger(n, s)?;
    let mut rules = BTreeMap::new();
    for e in &ledger.entries {
        let key = serde_json::to_value(e.rule)?.as_str().unwrap_or_default().to_string();
        *rules.entry(key).or_insert(0usize) += 1;
    }
    let certificate = rank_bound_certificate(n, s)?;
    let holds = two_block.passed && certificate.contradiction;
    let value = json!({
        "n": n,
        "s": s,
        "two_block_circuits": two_block,
        "ledger": { "entries": ledger.len(), "rules": rules },
        "rank_bound": certificate,
    });
    Outcome::new(&value, holds)
}
