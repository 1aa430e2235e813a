//! Counterexample search.
//!
//! [`language_match`] is the learner's own check: it compares the
//! hypothesis against membership queries on every word up to the length
//! bound. [`product_diff_search`] and [`minimal_dfa_of`] look at the ground
//! truth directly; they back the white-box mode and the test harness.

use std::collections::{HashMap, VecDeque};

use crate::automaton::{Edge, HypothesisAutomaton, RestrictionAutomaton};
use crate::error::Result;
use crate::oracle::MembershipOracle;
use crate::word::{all_words_up_to, Symbol, Word, DEFAULT_ENUMERATION_BUDGET};

/// First word of length `1..=max_len`, in length-lexicographic order, on
/// which the hypothesis and the membership oracle disagree.
pub fn language_match<O: MembershipOracle + ?Sized>(
    hypothesis: &HypothesisAutomaton,
    oracle: &O,
    max_len: usize,
    budget: u64,
) -> Result<Option<Word>> {
    // λ belongs to both languages
    for w in all_words_up_to(oracle.alphabet_size(), max_len, budget)?.skip(1) {
        if oracle.membership(&w)? != hypothesis.accepts(&w) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Shortest (then lexicographically least) word of length `1..=max_len`
/// accepted by exactly one of `hypothesis` and `truth`.
///
/// Breadth-first search over pairs (hypothesis node or dead, reachable node
/// set of `truth`), symbols in ascending order, so the first mismatching
/// pair discovered is reached by the length-lex-minimal word.
pub fn product_diff_search(
    hypothesis: &HypothesisAutomaton,
    truth: &RestrictionAutomaton,
    max_len: usize,
) -> Option<Word> {
    type State = (Option<usize>, Vec<usize>);
    let alphabet = hypothesis.alphabet_size().max(truth.alphabet_size());
    let start: State = (Some(hypothesis.initial()), vec![truth.initial()]);

    let mut parent: HashMap<State, Option<(State, Symbol)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([(start, 0usize)]);

    let rebuild = |parent: &HashMap<State, Option<(State, Symbol)>>, mut s: State| {
        let mut symbols = Vec::new();
        while let Some(Some((prev, p))) = parent.get(&s) {
            symbols.push(*p);
            s = prev.clone();
        }
        symbols.reverse();
        Word::from_symbols(symbols)
    };

    while let Some((state, depth)) = queue.pop_front() {
        if depth == max_len {
            continue;
        }
        let (h_node, g_set) = &state;
        for p in 1..=alphabet {
            let h_next = h_node.and_then(|v| {
                (p <= hypothesis.alphabet_size())
                    .then(|| hypothesis.successor(v, p))
                    .flatten()
            });
            let g_next = if p <= truth.alphabet_size() {
                truth.step(g_set, p)
            } else {
                Vec::new()
            };
            let next: State = (h_next, g_next);
            if parent.contains_key(&next) {
                continue;
            }
            parent.insert(next.clone(), Some((state.clone(), p)));
            let (h_acc, g_acc) = (next.0.is_some(), !next.1.is_empty());
            if h_acc != g_acc {
                return Some(rebuild(&parent, next));
            }
            if h_acc {
                queue.push_back((next, depth + 1));
            }
        }
    }
    None
}

/// Minimal deterministic automaton (without a rejecting sink) for the path
/// language of `truth`: subset construction from the initial node, then
/// partition refinement. Nodes are numbered breadth-first from the initial
/// node.
pub fn minimal_dfa_of(truth: &RestrictionAutomaton) -> HypothesisAutomaton {
    let n_sym = truth.alphabet_size();

    // subset construction, empty set dropped
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut subsets = vec![vec![truth.initial()]];
    index.insert(subsets[0].clone(), 0);
    let mut delta: Vec<Vec<Option<usize>>> = Vec::new();
    let mut i = 0;
    while i < subsets.len() {
        let mut out = vec![None; n_sym];
        for (p, slot) in (1..=n_sym).zip(out.iter_mut()) {
            let next = truth.step(&subsets[i], p);
            if next.is_empty() {
                continue;
            }
            let id = *index.entry(next.clone()).or_insert_with(|| {
                subsets.push(next);
                subsets.len() - 1
            });
            *slot = Some(id);
        }
        delta.push(out);
        i += 1;
    }

    // Moore refinement: every subset state accepts, so blocks split only on
    // successor blocks (a missing transition is its own class).
    let n = delta.len();
    let mut block = vec![0usize; n];
    let mut block_count = 1;
    loop {
        let mut signatures: HashMap<(usize, Vec<Option<usize>>), usize> = HashMap::new();
        let mut next_block = vec![0usize; n];
        for s in 0..n {
            let sig = (
                block[s],
                delta[s].iter().map(|d| d.map(|t| block[t])).collect(),
            );
            let fresh = signatures.len();
            next_block[s] = *signatures.entry(sig).or_insert(fresh);
        }
        let count = signatures.len();
        block = next_block;
        if count == block_count {
            break;
        }
        block_count = count;
    }

    let mut edges = Vec::new();
    let mut seen = vec![false; block_count];
    for s in 0..n {
        if std::mem::replace(&mut seen[block[s]], true) {
            continue;
        }
        for (p, d) in (1..=n_sym).zip(&delta[s]) {
            if let Some(t) = d {
                edges.push(Edge::new(block[s], block[*t], p));
            }
        }
    }
    // block of the initial subset is 0 because state 0 is scanned first
    let quotient = HypothesisAutomaton::from_edges(block_count, n_sym, &edges)
        .expect("quotient is deterministic");
    renumber_breadth_first(&quotient)
}

fn renumber_breadth_first(h: &HypothesisAutomaton) -> HypothesisAutomaton {
    let canonical = h.canonical_form();
    let edges: Vec<Edge> = canonical
        .iter()
        .enumerate()
        .flat_map(|(src, out)| {
            out.iter()
                .enumerate()
                .filter_map(move |(i, d)| d.map(|dst| Edge::new(src, dst, i + 1)))
        })
        .collect();
    HypothesisAutomaton::from_edges(canonical.len(), h.alphabet_size(), &edges)
        .expect("renumbering preserves determinism")
}

/// How the learner looks for counterexamples.
pub trait EquivalenceOracle {
    fn find_counterexample<O: MembershipOracle + ?Sized>(
        &self,
        hypothesis: &HypothesisAutomaton,
        oracle: &O,
    ) -> Result<Option<Word>>;
}

/// Exhaustive comparison through membership queries ([`language_match`]).
#[derive(Clone, Copy, Debug)]
pub struct StrictEquivalence {
    pub max_len: usize,
    pub budget: u64,
}

impl StrictEquivalence {
    pub fn new(max_len: usize) -> Self {
        StrictEquivalence {
            max_len,
            budget: DEFAULT_ENUMERATION_BUDGET,
        }
    }
}

impl EquivalenceOracle for StrictEquivalence {
    fn find_counterexample<O: MembershipOracle + ?Sized>(
        &self,
        hypothesis: &HypothesisAutomaton,
        oracle: &O,
    ) -> Result<Option<Word>> {
        language_match(hypothesis, oracle, self.max_len, self.budget)
    }
}

/// Product search against the ground truth ([`product_diff_search`]).
#[derive(Clone, Copy, Debug)]
pub struct WhiteBoxEquivalence<'a> {
    pub truth: &'a RestrictionAutomaton,
    pub max_len: usize,
}

impl EquivalenceOracle for WhiteBoxEquivalence<'_> {
    fn find_counterexample<O: MembershipOracle + ?Sized>(
        &self,
        hypothesis: &HypothesisAutomaton,
        _oracle: &O,
    ) -> Result<Option<Word>> {
        Ok(product_diff_search(hypothesis, self.truth, self.max_len))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::oracle::GrayBoxOracle;

    fn one_node_loop(label: Symbol, alphabet: usize) -> HypothesisAutomaton {
        HypothesisAutomaton::from_edges(1, alphabet, &[Edge::new(0, 0, label)]).unwrap()
    }

    fn final_hypothesis() -> HypothesisAutomaton {
        HypothesisAutomaton::from_edges(
            2,
            3,
            &[
                Edge::new(0, 1, 1),
                Edge::new(1, 1, 1),
                Edge::new(1, 0, 2),
                Edge::new(1, 0, 3),
            ],
        )
        .unwrap()
    }

    #[test]
    fn strict_match_finds_twelve() {
        let o = GrayBoxOracle::new(catalog::three_mode_system());
        let h = one_node_loop(1, 3);
        let cex = language_match(&h, &o, 6, DEFAULT_ENUMERATION_BUDGET).unwrap();
        assert_eq!(cex.unwrap().to_string(), "12");
        assert_eq!(
            language_match(&final_hypothesis(), &o, 6, DEFAULT_ENUMERATION_BUDGET).unwrap(),
            None
        );
    }

    #[test]
    fn strict_match_budget() {
        let o = GrayBoxOracle::new(catalog::three_mode_system());
        let err =
            language_match(&final_hypothesis(), &o, 20, DEFAULT_ENUMERATION_BUDGET).unwrap_err();
        assert!(matches!(err, crate::Error::EnumerationBudget { .. }));
    }

    #[test]
    fn product_search_finds_twelve() {
        let g = catalog::three_mode_restrictions();
        assert_eq!(
            product_diff_search(&one_node_loop(1, 3), &g, 100)
                .unwrap()
                .to_string(),
            "12"
        );
        assert_eq!(product_diff_search(&final_hypothesis(), &g, 100), None);
        // bound too short to see the difference
        assert_eq!(product_diff_search(&one_node_loop(1, 3), &g, 1), None);
    }

    #[test]
    fn product_search_hypothesis_accepts_more() {
        let g = catalog::three_mode_restrictions();
        let h = HypothesisAutomaton::from_edges(
            1,
            3,
            &[Edge::new(0, 0, 1), Edge::new(0, 0, 2), Edge::new(0, 0, 3)],
        )
        .unwrap();
        assert_eq!(product_diff_search(&h, &g, 5).unwrap().to_string(), "2");
    }

    #[test]
    fn minimal_dfa_examples() {
        let min = minimal_dfa_of(&catalog::three_mode_restrictions());
        assert!(min.is_isomorphic(&final_hypothesis()));

        let free = minimal_dfa_of(&catalog::unrestricted(3));
        assert_eq!(free.node_count(), 1);
        assert_eq!(free.edge_count(), 3);

        // 3-cycle 0 -1-> 1 -2-> 2 -3-> 0: the residuals after λ, 1, 12
        // start with distinct symbols, so no two states merge
        let cycle = RestrictionAutomaton::with_indexed_nodes(
            3,
            0,
            3,
            vec![Edge::new(0, 1, 1), Edge::new(1, 2, 2), Edge::new(2, 0, 3)],
        )
        .unwrap();
        assert_eq!(minimal_dfa_of(&cycle).node_count(), 3);
    }

    #[test]
    fn minimal_dfa_merges_redundant_nodes() {
        // two interchangeable nodes, both with loops on 1 and edges on 2 to
        // each other: the language is all of {1,2}*
        let g = RestrictionAutomaton::with_indexed_nodes(
            2,
            0,
            2,
            vec![
                Edge::new(0, 0, 1),
                Edge::new(0, 1, 2),
                Edge::new(1, 1, 1),
                Edge::new(1, 0, 2),
            ],
        )
        .unwrap();
        let min = minimal_dfa_of(&g);
        assert_eq!(min.node_count(), 1);
        assert_eq!(min.edge_count(), 2);
    }

    #[test]
    fn nondeterministic_truth() {
        // node 0 has two 1-edges; the determinized language is 1*(2 1*)* ...
        let g = RestrictionAutomaton::with_indexed_nodes(
            2,
            0,
            2,
            vec![Edge::new(0, 0, 1), Edge::new(0, 1, 1), Edge::new(1, 0, 2)],
        )
        .unwrap();
        let min = minimal_dfa_of(&g);
        assert!(min.is_deterministic());
        assert_eq!(product_diff_search(&min, &g, 12), None);
        // {0} and {0,1} differ on "2"
        assert_eq!(min.node_count(), 2);
    }
}
