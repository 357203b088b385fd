//! JSON interchange format for matroids.
//!
//! ```json
//! { "version": 1, "labels": ["e1", "e2", ...], "representation": { "psi": { "n": 8, "s": 3 } } }
//! ```
//!
//! Element indices inside set lists are one-based.

use serde::{Deserialize, Serialize};

use cyclic_matroids::constructions::{free_spike, from_circuits, truncate, uniform, wheel, whirl};
use cyclic_matroids::subset::GroundSet;
use cyclic_matroids::transversal::{psi, transversal_matroid, BipartitePresentation};
use cyclic_matroids::{Matroid, Subset};

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstructionKind {
    Wheel,
    Whirl,
    FreeSpike,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Representation {
    Circuits(Vec<Vec<usize>>),
    Uniform { r: usize, n: usize },
    Psi { n: usize, s: usize },
    Transversal { neighborhoods: Vec<Vec<usize>> },
    Construction { kind: ConstructionKind, r: usize },
    Truncate { inner: Box<MatroidDocument>, i: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatroidDocument {
    pub version: u32,
    pub labels: Vec<String>,
    pub representation: Representation,
}

impl MatroidDocument {
    /// A document for `rep` with default labels `e1..en`, or the labels the
    /// construction itself uses.
    pub fn new(rep: Representation) -> CliResult<Self> {
        let labels = match &rep {
            Representation::Truncate { inner, .. } => inner.labels.clone(),
            _ => {
                let m = build_representation(&rep, None)?;
                (0..m.n()).map(|i| m.ground().label(i).to_string()).collect()
            }
        };
        Ok(MatroidDocument {
            version: SCHEMA_VERSION,
            labels,
            representation: rep,
        })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn build(&self) -> CliResult<Matroid> {
        if self.version != SCHEMA_VERSION {
            return Err(CliError::Invalid(format!(
                "unsupported document version {}",
                self.version
            )));
        }
        let m = build_representation(&self.representation, Some(self.n()))?;
        if m.n() != self.n() {
            return Err(CliError::Invalid(format!(
                "{} labels for a ground set of {} elements",
                self.n(),
                m.n()
            )));
        }
        Ok(m)
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Sorted keys, two-space indentation, trailing newline.
    pub fn to_canonical_json(&self) -> CliResult<String> {
        canonical_json(self)
    }
}

pub fn canonical_json<T: Serialize>(value: &T) -> CliResult<String> {
    let v = serde_json::to_value(value)?;
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

fn one_based_set(n: usize, v: &[usize]) -> CliResult<Subset> {
    if let Some(&bad) = v.iter().find(|&&e| e == 0 || e > n) {
        return Err(CliError::Invalid(format!("element {bad} outside 1..={n}")));
    }
    Ok(Subset::from_one_based(v.iter().copied()))
}

fn build_representation(rep: &Representation, n: Option<usize>) -> CliResult<Matroid> {
    Ok(match rep {
        Representation::Circuits(sets) => {
            let n = n.ok_or_else(|| CliError::Invalid("a circuit list needs labels".into()))?;
            let sets = sets
                .iter()
                .map(|c| one_based_set(n, c))
                .collect::<CliResult<Vec<_>>>()?;
            from_circuits(GroundSet::new(n)?, "circuits", sets)?
        }
        Representation::Uniform { r, n } => uniform(*r, *n)?,
        Representation::Psi { n, s } => psi(*n, *s)?,
        Representation::Transversal { neighborhoods } => {
            let n = n.ok_or_else(|| CliError::Invalid("a presentation needs labels".into()))?;
            let nb = neighborhoods
                .iter()
                .map(|a| one_based_set(n, a))
                .collect::<CliResult<Vec<_>>>()?;
            transversal_matroid(&BipartitePresentation::new(n, nb)?)?
        }
        Representation::Construction { kind, r } => match kind {
            ConstructionKind::Wheel => wheel(*r)?,
            ConstructionKind::Whirl => whirl(*r)?,
            ConstructionKind::FreeSpike => free_spike(*r)?.0,
        },
        Representation::Truncate { inner, i } => truncate(&inner.build()?, *i)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn docs() -> Vec<MatroidDocument> {
        let psi = MatroidDocument::new(Representation::Psi { n: 10, s: 3 }).unwrap();
        vec![
            MatroidDocument::new(Representation::Uniform { r: 2, n: 5 }).unwrap(),
            psi.clone(),
            MatroidDocument::new(Representation::Construction {
                kind: ConstructionKind::Wheel,
                r: 4,
            })
            .unwrap(),
            MatroidDocument::new(Representation::Truncate {
                inner: Box::new(psi),
                i: 1,
            })
            .unwrap(),
        ]
    }

    #[test]
    fn round_trip() {
        for d in docs() {
            let text = d.to_canonical_json().unwrap();
            let back = MatroidDocument::parse(&text).unwrap();
            assert_eq!(back, d);
            assert_eq!(back.to_canonical_json().unwrap(), text);
            back.build().unwrap();
        }
    }

    #[test]
    fn keys_are_sorted() {
        let text = docs()[1].to_canonical_json().unwrap();
        let a = text.find("\"labels\"").unwrap();
        let b = text.find("\"representation\"").unwrap();
        let c = text.find("\"version\"").unwrap();
        assert!(a < b && b < c);
    }

    #[test]
    fn circuit_lists() {
        let d = MatroidDocument {
            version: 1,
            labels: (1..=4).map(|i| format!("e{i}")).collect(),
            representation: Representation::Circuits(vec![vec![1, 2, 3], vec![1, 2, 4], vec![1, 3, 4], vec![2, 3, 4]]),
        };
        assert_eq!(d.build().unwrap().full_rank(), 2);
        let bad = MatroidDocument {
            representation: Representation::Circuits(vec![vec![1, 5]]),
            ..d.clone()
        };
        assert!(bad.build().is_err());
        let not_matroid = MatroidDocument {
            representation: Representation::Circuits(vec![vec![1, 2], vec![2, 3, 4], vec![1, 2, 3]]),
            ..d
        };
        assert!(not_matroid.build().is_err());
    }

    #[test]
    fn rejects_unknown_fields_and_versions() {
        assert!(MatroidDocument::parse(r#"{"version":1,"labels":[],"representation":{"psi":{"n":8,"s":3}},"x":1}"#).is_err());
        let mut d = docs()[0].clone();
        d.version = 2;
        assert!(d.build().is_err());
    }
}
