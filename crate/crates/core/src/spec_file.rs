//! JSON form of a switched system and of the learned-model report.
//!
//! ```json
//! {"N": 3, "d": 3, "m": 3, "M": 100,
//!  "subsystems": [{"p": 1, "coeffs": [[a_10, a_11, ...], ...]}, ...],
//!  "automaton": {"nodes": ["v0", "v1"], "initial": "v0",
//!                "edges": [{"src": "v0", "dst": "v1", "label": 1}, ...]}}
//! ```

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::automaton::{Edge, RestrictionAutomaton};
use crate::error::{Error, Result};
use crate::system::{PolynomialVectorField, SwitchedSystemSpec};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    #[serde(rename = "N")]
    pub n: usize,
    pub d: usize,
    pub m: usize,
    #[serde(rename = "M")]
    pub max_len: usize,
    pub subsystems: Vec<SubsystemEntry>,
    pub automaton: AutomatonEntry,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SubsystemEntry {
    pub p: usize,
    pub coeffs: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct AutomatonEntry {
    pub nodes: Vec<String>,
    pub initial: String,
    pub edges: Vec<EdgeEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct EdgeEntry {
    pub src: String,
    pub dst: String,
    pub label: usize,
}

impl SpecFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    pub fn from_spec(spec: &SwitchedSystemSpec) -> Self {
        let g = &spec.automaton;
        SpecFile {
            n: spec.n_subsystems,
            d: spec.dim,
            m: spec.order,
            max_len: spec.max_len,
            subsystems: spec
                .fields
                .iter()
                .map(|f| SubsystemEntry {
                    p: f.subsystem(),
                    coeffs: f.coeffs().to_vec(),
                })
                .collect(),
            automaton: AutomatonEntry {
                nodes: g.names().to_vec(),
                initial: g.names()[g.initial()].clone(),
                edges: g
                    .edges()
                    .iter()
                    .map(|e| EdgeEntry {
                        src: g.names()[e.src].clone(),
                        dst: g.names()[e.dst].clone(),
                        label: e.label,
                    })
                    .collect(),
            },
        }
    }

    /// Validates every field and builds the model. Errors name the offending
    /// field.
    pub fn into_spec(self) -> Result<SwitchedSystemSpec> {
        if self.n == 0 {
            return Err(Error::Parse("field \"N\": must be at least 1".into()));
        }
        if self.d == 0 {
            return Err(Error::Parse("field \"d\": must be at least 1".into()));
        }
        if self.max_len == 0 {
            return Err(Error::Parse("field \"M\": must be at least 1".into()));
        }
        if self.subsystems.len() != self.n {
            return Err(Error::Parse(format!(
                "field \"subsystems\": expected {} entries, found {}",
                self.n,
                self.subsystems.len()
            )));
        }
        let fields = self
            .subsystems
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                if s.coeffs.len() != self.d || s.coeffs.iter().any(|row| row.len() != self.m + 1) {
                    return Err(Error::Parse(format!(
                        "field \"subsystems[{i}].coeffs\": expected {} rows of {} coefficients",
                        self.d,
                        self.m + 1
                    )));
                }
                PolynomialVectorField::new(s.p, s.coeffs)
                    .map_err(|e| Error::Parse(format!("field \"subsystems[{i}]\": {e}")))
            })
            .collect::<Result<Vec<_>>>()?;

        let a = self.automaton;
        let index: HashMap<&str, usize> = a
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        if index.len() != a.nodes.len() {
            return Err(Error::Parse(
                "field \"automaton.nodes\": duplicate node name".into(),
            ));
        }
        let initial = *index.get(a.initial.as_str()).ok_or_else(|| {
            Error::Parse(format!(
                "field \"automaton.initial\": unknown node {:?}",
                a.initial
            ))
        })?;
        let edges = a
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let lookup = |name: &str, which: &str| {
                    index.get(name).copied().ok_or_else(|| {
                        Error::Parse(format!(
                            "field \"automaton.edges[{i}].{which}\": unknown node {name:?}"
                        ))
                    })
                };
                if e.label == 0 || e.label > self.n {
                    return Err(Error::Parse(format!(
                        "field \"automaton.edges[{i}].label\": {} outside 1..={}",
                        e.label, self.n
                    )));
                }
                Ok(Edge::new(
                    lookup(&e.src, "src")?,
                    lookup(&e.dst, "dst")?,
                    e.label,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let automaton = RestrictionAutomaton::new(a.nodes.clone(), initial, self.n, edges)
            .map_err(|e| Error::Parse(format!("field \"automaton\": {e}")))?;
        SwitchedSystemSpec::new(self.d, self.m, self.max_len, fields, automaton)
            .map_err(|e| Error::Parse(format!("field \"subsystems\": {e}")))
    }
}

pub fn load_spec(text: &str) -> Result<SwitchedSystemSpec> {
    SpecFile::from_json(text)?.into_spec()
}

/// Learned coefficients with query accounting.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ModelReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub d: usize,
    pub m: usize,
    pub subsystems: Vec<SubsystemEntry>,
    pub eval_queries: u64,
}

impl ModelReport {
    pub fn new(
        fields: &[PolynomialVectorField],
        dim: usize,
        order: usize,
        eval_queries: u64,
    ) -> Self {
        ModelReport {
            n: fields.len(),
            d: dim,
            m: order,
            subsystems: fields
                .iter()
                .map(|f| SubsystemEntry {
                    p: f.subsystem(),
                    coeffs: f.coeffs().to_vec(),
                })
                .collect(),
            eval_queries,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
