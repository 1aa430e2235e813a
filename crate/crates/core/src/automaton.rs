//! Restriction automata (ground truth, possibly nondeterministic) and
//! hypothesis automata (deterministic, possibly incomplete).

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph;
use crate::word::{Symbol, Word};

/// A labeled edge `src --label--> dst` between node indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub label: Symbol,
}

impl Edge {
    pub fn new(src: usize, dst: usize, label: Symbol) -> Self {
        Edge { src, dst, label }
    }
}

/// A strongly connected, directed, labeled multigraph with a distinguished
/// initial node. Parallel edges, self-loops and repeated labels out of one
/// node are all allowed.
#[derive(Clone, Debug)]
pub struct RestrictionAutomaton {
    names: Vec<String>,
    initial: usize,
    alphabet_size: usize,
    edges: Vec<Edge>,
    /// `succ[node][label - 1]`: sorted, deduplicated successor nodes.
    succ: Vec<Vec<Vec<usize>>>,
    /// Bitset form of `succ` for automata with at most 64 nodes.
    succ_bits: Option<Vec<Vec<u64>>>,
}

impl RestrictionAutomaton {
    pub fn new(
        names: Vec<String>,
        initial: usize,
        alphabet_size: usize,
        edges: Vec<Edge>,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidAutomaton("no nodes".into()));
        }
        if alphabet_size == 0 {
            return Err(Error::InvalidAutomaton("alphabet must be nonempty".into()));
        }
        if initial >= n {
            return Err(Error::InvalidAutomaton(format!(
                "initial node {initial} out of range"
            )));
        }
        let mut succ = vec![vec![Vec::new(); alphabet_size]; n];
        for e in &edges {
            if e.src >= n || e.dst >= n {
                return Err(Error::InvalidAutomaton(format!(
                    "edge {} -> {} references a missing node",
                    e.src, e.dst
                )));
            }
            if e.label == 0 || e.label > alphabet_size {
                return Err(Error::InvalidAutomaton(format!(
                    "edge label {} outside 1..={alphabet_size}",
                    e.label
                )));
            }
            succ[e.src][e.label - 1].push(e.dst);
        }
        for per_node in &mut succ {
            for targets in per_node.iter_mut() {
                targets.sort_unstable();
                targets.dedup();
            }
        }
        if let Some(v) = succ.iter().position(|s| s.iter().all(Vec::is_empty)) {
            return Err(Error::InvalidAutomaton(format!(
                "node {:?} has no outgoing edge",
                names[v]
            )));
        }
        let succ_bits = (n <= 64).then(|| {
            succ.iter()
                .map(|per_label| {
                    per_label
                        .iter()
                        .map(|targets| targets.iter().fold(0u64, |m, &v| m | 1 << v))
                        .collect()
                })
                .collect()
        });
        let automaton = RestrictionAutomaton {
            names,
            initial,
            alphabet_size,
            edges,
            succ,
            succ_bits,
        };
        if !automaton.is_strongly_connected() {
            return Err(Error::InvalidAutomaton(
                "graph is not strongly connected".into(),
            ));
        }
        Ok(automaton)
    }

    /// Nodes named `v0, v1, …`.
    pub fn with_indexed_nodes(
        node_count: usize,
        initial: usize,
        alphabet_size: usize,
        edges: Vec<Edge>,
    ) -> Result<Self> {
        let names = (0..node_count).map(|i| format!("v{i}")).collect();
        Self::new(names, initial, alphabet_size, edges)
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_strongly_connected(&self) -> bool {
        graph::is_strongly_connected(&self.adjacency())
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        self.succ
            .iter()
            .map(|per_label| per_label.iter().flatten().copied().collect())
            .collect()
    }

    /// Nodes reachable from any of `from` over one edge labeled `p`.
    /// `from` must be sorted; the result is sorted and deduplicated.
    pub fn step(&self, from: &[usize], p: Symbol) -> Vec<usize> {
        let mut next: Vec<usize> = from
            .iter()
            .flat_map(|&v| self.succ[v][p - 1].iter().copied())
            .collect();
        next.sort_unstable();
        next.dedup();
        next
    }

    /// Set of nodes reached by paths from the initial node spelling `w`.
    pub fn reach(&self, w: &Word) -> Vec<usize> {
        let mut current = vec![self.initial];
        for &p in w.symbols() {
            if current.is_empty() {
                break;
            }
            current = self.step(&current, p);
        }
        current
    }

    /// Some path from the initial node spells `w`. `λ` is always accepted.
    /// Symbols must already be within the alphabet.
    pub fn accepts(&self, w: &Word) -> bool {
        let Some(bits) = &self.succ_bits else {
            return !self.reach(w).is_empty();
        };
        let mut current = 1u64 << self.initial;
        for &p in w.symbols() {
            let mut next = 0u64;
            let mut rest = current;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                next |= bits[v][p - 1];
            }
            if next == 0 {
                return false;
            }
            current = next;
        }
        true
    }
}

/// A table row: membership bits `(T(q·r))` over the suffix set, in suffix
/// insertion order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Row(pub Vec<bool>);

impl Row {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|b| !b)
    }
}

impl fmt::Display for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A deterministic, possibly incomplete automaton whose language is the set
/// of words spelled by paths from node 0. Missing transitions reject.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisAutomaton {
    alphabet_size: usize,
    /// `delta[node][label - 1]`
    delta: Vec<Vec<Option<usize>>>,
    /// Row identity of each node when built from an observation table.
    rows: Option<Vec<Row>>,
}

impl HypothesisAutomaton {
    /// Builds from an edge list with node 0 initial. Fails if two edges leave
    /// the same node with the same label towards different targets.
    pub fn from_edges(node_count: usize, alphabet_size: usize, edges: &[Edge]) -> Result<Self> {
        if node_count == 0 {
            return Err(Error::InvalidAutomaton("no nodes".into()));
        }
        let mut delta = vec![vec![None; alphabet_size]; node_count];
        for e in edges {
            if e.src >= node_count || e.dst >= node_count {
                return Err(Error::InvalidAutomaton(format!(
                    "edge {} -> {} references a missing node",
                    e.src, e.dst
                )));
            }
            if e.label == 0 || e.label > alphabet_size {
                return Err(Error::InvalidAutomaton(format!(
                    "edge label {} outside 1..={alphabet_size}",
                    e.label
                )));
            }
            let slot = &mut delta[e.src][e.label - 1];
            match *slot {
                Some(existing) if existing != e.dst => {
                    return Err(Error::InvalidAutomaton(format!(
                        "nondeterministic: node {} has two edges labeled {}",
                        e.src, e.label
                    )))
                }
                _ => *slot = Some(e.dst),
            }
        }
        Ok(HypothesisAutomaton {
            alphabet_size,
            delta,
            rows: None,
        })
    }

    pub(crate) fn with_rows(mut self, rows: Vec<Row>) -> Self {
        debug_assert_eq!(rows.len(), self.delta.len());
        self.rows = Some(rows);
        self
    }

    pub fn node_count(&self) -> usize {
        self.delta.len()
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn initial(&self) -> usize {
        0
    }

    pub fn rows(&self) -> Option<&[Row]> {
        self.rows.as_deref()
    }

    pub fn successor(&self, node: usize, p: Symbol) -> Option<usize> {
        self.delta[node].get(p.wrapping_sub(1)).copied().flatten()
    }

    /// Edges sorted by source, then label.
    pub fn edges(&self) -> Vec<Edge> {
        self.delta
            .iter()
            .enumerate()
            .flat_map(|(src, out)| {
                out.iter()
                    .enumerate()
                    .filter_map(move |(i, dst)| dst.map(|dst| Edge::new(src, dst, i + 1)))
            })
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.delta.iter().flatten().filter(|d| d.is_some()).count()
    }

    /// Node reached from the initial node along `w`, if the walk succeeds.
    pub fn run(&self, w: &Word) -> Option<usize> {
        w.symbols()
            .iter()
            .try_fold(self.initial(), |node, &p| self.successor(node, p))
    }

    /// A path from the initial node spells `w`. `λ` is always accepted.
    pub fn accepts(&self, w: &Word) -> bool {
        self.run(w).is_some()
    }

    /// Holds by construction of the transition table; kept as an explicit
    /// check for automata assembled elsewhere.
    pub fn is_deterministic(&self) -> bool {
        let mut seen = BTreeMap::new();
        self.edges()
            .into_iter()
            .all(|e| seen.insert((e.src, e.label), e.dst).is_none())
    }

    pub fn is_strongly_connected(&self) -> bool {
        let adj: Vec<Vec<usize>> = self
            .delta
            .iter()
            .map(|out| out.iter().flatten().copied().collect())
            .collect();
        graph::is_strongly_connected(&adj)
    }

    /// Relabels nodes in breadth-first order from the initial node (labels
    /// ascending) and returns the resulting transition table. Two automata
    /// whose nodes are all reachable are isomorphic iff their canonical
    /// tables are equal. Unreachable nodes are dropped.
    pub fn canonical_form(&self) -> Vec<Vec<Option<usize>>> {
        let mut order = vec![usize::MAX; self.node_count()];
        let mut visit = Vec::new();
        let mut queue = VecDeque::from([self.initial()]);
        order[self.initial()] = 0;
        while let Some(u) = queue.pop_front() {
            visit.push(u);
            for v in self.delta[u].iter().flatten() {
                if order[*v] == usize::MAX {
                    order[*v] = visit.len() + queue.len();
                    queue.push_back(*v);
                }
            }
        }
        visit
            .iter()
            .map(|&u| self.delta[u].iter().map(|d| d.map(|v| order[v])).collect())
            .collect()
    }

    pub fn is_isomorphic(&self, other: &HypothesisAutomaton) -> bool {
        self.alphabet_size == other.alphabet_size
            && self.node_count() == other.node_count()
            && self.canonical_form() == other.canonical_form()
    }
}
