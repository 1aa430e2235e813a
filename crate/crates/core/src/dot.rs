//! Graphviz DOT output for automata, and a reader for the same dialect.
//!
//! The initial node is marked by an edge from a point-shaped pseudo-node
//! named `init`. Each labeled edge is its own statement, so parallel edges
//! of a multigraph survive the round trip.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::automaton::{Edge, HypothesisAutomaton, RestrictionAutomaton};
use crate::error::{Error, Result};
use crate::word::Symbol;

const INIT: &str = "init";

fn render(graph_name: &str, names: &[String], initial: usize, edges: &[Edge]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {graph_name} {{");
    out.push_str("    rankdir=LR;\n");
    let _ = writeln!(out, "    {INIT} [shape=point];");
    for name in names {
        let _ = writeln!(out, "    \"{name}\" [shape=circle];");
    }
    let _ = writeln!(out, "    {INIT} -> \"{}\";", names[initial]);
    for e in edges {
        let _ = writeln!(
            out,
            "    \"{}\" -> \"{}\" [label=\"{}\"];",
            names[e.src], names[e.dst], e.label
        );
    }
    out.push_str("}\n");
    out
}

/// Nodes are named `v'0, v'1, …` by index; node 0 is initial.
pub fn hypothesis_to_dot(h: &HypothesisAutomaton) -> String {
    let names: Vec<String> = (0..h.node_count()).map(|i| format!("v'{i}")).collect();
    render("hypothesis", &names, h.initial(), &h.edges())
}

pub fn restriction_to_dot(g: &RestrictionAutomaton) -> String {
    render("restriction", g.names(), g.initial(), g.edges())
}

/// Graph read back from DOT text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DotGraph {
    pub nodes: Vec<String>,
    pub initial: String,
    pub edges: Vec<(String, String, Symbol)>,
}

impl DotGraph {
    fn node_index(&self) -> HashMap<&str, usize> {
        self.nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect()
    }

    fn indexed_edges(&self) -> Result<Vec<Edge>> {
        let index = self.node_index();
        self.edges
            .iter()
            .map(|(s, d, p)| {
                let src = index
                    .get(s.as_str())
                    .ok_or_else(|| Error::Parse(format!("unknown node {s}")))?;
                let dst = index
                    .get(d.as_str())
                    .ok_or_else(|| Error::Parse(format!("unknown node {d}")))?;
                Ok(Edge::new(*src, *dst, *p))
            })
            .collect()
    }

    /// The initial node becomes node 0; others keep their relative order.
    pub fn to_hypothesis(&self, alphabet_size: usize) -> Result<HypothesisAutomaton> {
        let mut reordered = self.clone();
        let pos = self
            .nodes
            .iter()
            .position(|n| *n == self.initial)
            .ok_or_else(|| Error::Parse(format!("initial node {} not declared", self.initial)))?;
        let init = reordered.nodes.remove(pos);
        reordered.nodes.insert(0, init);
        HypothesisAutomaton::from_edges(
            reordered.nodes.len(),
            alphabet_size,
            &reordered.indexed_edges()?,
        )
    }

    pub fn to_restriction(&self, alphabet_size: usize) -> Result<RestrictionAutomaton> {
        let initial = *self
            .node_index()
            .get(self.initial.as_str())
            .ok_or_else(|| Error::Parse(format!("initial node {} not declared", self.initial)))?;
        RestrictionAutomaton::new(
            self.nodes.clone(),
            initial,
            alphabet_size,
            self.indexed_edges()?,
        )
    }
}

fn unquote(token: &str) -> &str {
    token.trim().trim_matches('"')
}

/// Reads the subset of DOT written by this module.
pub fn parse_dot(text: &str) -> Result<DotGraph> {
    let mut nodes: Vec<String> = Vec::new();
    let mut initial = None;
    let mut edges = Vec::new();
    let declare = |nodes: &mut Vec<String>, name: &str| {
        if name != INIT && !nodes.iter().any(|n| n == name) {
            nodes.push(name.to_string());
        }
    };
    for raw in text.lines() {
        let line = raw.trim().trim_end_matches(';').trim();
        if line.is_empty()
            || line.starts_with("digraph")
            || line == "}"
            || line.starts_with("rankdir")
            || line.starts_with("//")
        {
            continue;
        }
        let (stmt, attrs) = match line.find('[') {
            Some(i) => (
                &line[..i],
                Some(line[i..].trim_matches(|c| c == '[' || c == ']')),
            ),
            None => (line, None),
        };
        if let Some((lhs, rhs)) = stmt.split_once("->") {
            let (src, dst) = (unquote(lhs), unquote(rhs));
            if src == INIT {
                declare(&mut nodes, dst);
                initial = Some(dst.to_string());
                continue;
            }
            let label = attrs
                .and_then(|a| {
                    a.split(',')
                        .filter_map(|kv| kv.split_once('='))
                        .find(|(k, _)| k.trim() == "label")
                        .map(|(_, v)| unquote(v).to_string())
                })
                .ok_or_else(|| Error::Parse(format!("edge without label: {raw}")))?;
            let label: Symbol = label.parse().map_err(|_| {
                Error::Parse(format!("edge label {label:?} is not a subsystem index"))
            })?;
            declare(&mut nodes, src);
            declare(&mut nodes, dst);
            edges.push((src.to_string(), dst.to_string(), label));
        } else {
            declare(&mut nodes, unquote(stmt));
        }
    }
    let initial = initial.ok_or_else(|| Error::Parse("no initial-node marker".into()))?;
    Ok(DotGraph {
        nodes,
        initial,
        edges,
    })
}
