//! Hypothesis construction from a closed, consistent observation table.
//!
//! Nodes are the distinct nonzero rows of `Q`, numbered in `Q` insertion
//! order of their first representative, so `row(λ)` is node 0. Zero rows
//! produce neither nodes nor edges: a transition into a zero row is absent.

use std::collections::HashMap;

use crate::automaton::{Edge, HypothesisAutomaton, Row};
use crate::error::{Error, Result};
use crate::table::ObservationTable;
use crate::word::Word;

pub fn dfa_construct(table: &ObservationTable) -> Result<HypothesisAutomaton> {
    if !table.is_closed()? {
        return Err(Error::Table("table is not closed".into()));
    }
    if !table.is_consistent()? {
        return Err(Error::Table("table is not consistent".into()));
    }
    let (rows, index, representatives) = node_rows(table)?;
    let mut edges = Vec::new();
    for (src, rep) in representatives.iter().enumerate() {
        edges.extend(edges_from(table, rep, src, &index)?);
    }
    Ok(HypothesisAutomaton::from_edges(rows.len(), table.alphabet_size(), &edges)?.with_rows(rows))
}

type NodeRows = (Vec<Row>, HashMap<Row, usize>, Vec<Word>);

fn node_rows(table: &ObservationTable) -> Result<NodeRows> {
    let mut rows = Vec::new();
    let mut index = HashMap::new();
    let mut representatives = Vec::new();
    for q in table.prefixes() {
        let row = table.row(q)?;
        if row.is_zero() || index.contains_key(&row) {
            continue;
        }
        index.insert(row.clone(), rows.len());
        rows.push(row);
        representatives.push(q.clone());
    }
    if rows.is_empty() || table.row(&Word::empty())?.is_zero() {
        return Err(Error::Table("row(λ) is all zero".into()));
    }
    Ok((rows, index, representatives))
}

fn edges_from(
    table: &ObservationTable,
    rep: &Word,
    src: usize,
    index: &HashMap<Row, usize>,
) -> Result<Vec<Edge>> {
    let mut edges = Vec::new();
    for p in 1..=table.alphabet_size() {
        let target = table.row(&rep.push(p))?;
        if target.is_zero() {
            continue;
        }
        let dst = *index
            .get(&target)
            .ok_or_else(|| Error::Table(format!("row of {} matches no row of Q", rep.push(p))))?;
        edges.push(Edge::new(src, dst, p));
    }
    Ok(edges)
}

/// Rebuilds the edge set from every representative of every nonzero row
/// and checks that all of them agree with `hypothesis`. Holds whenever the
/// table is consistent.
pub fn representatives_agree(
    table: &ObservationTable,
    hypothesis: &HypothesisAutomaton,
) -> Result<bool> {
    let (_, index, _) = node_rows(table)?;
    let expected = hypothesis.edges();
    for q in table.prefixes() {
        let row = table.row(q)?;
        let Some(&src) = index.get(&row) else {
            continue;
        };
        let mut from_q = edges_from(table, q, src, &index)?;
        from_q.sort();
        let mut want: Vec<Edge> = expected.iter().filter(|e| e.src == src).copied().collect();
        want.sort();
        if from_q != want {
            return Ok(false);
        }
    }
    Ok(true)
}
