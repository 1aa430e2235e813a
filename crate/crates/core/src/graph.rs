//! Reachability helpers shared by the automaton types.

use std::collections::VecDeque;

/// Nodes reachable from `start` following `adj`.
pub(crate) fn reachable(adj: &[Vec<usize>], start: usize) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    if start >= adj.len() {
        return seen;
    }
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen
}

/// Every node reaches every other node. A graph is strongly connected iff
/// one node reaches all nodes in both the graph and its reverse.
pub(crate) fn is_strongly_connected(adj: &[Vec<usize>]) -> bool {
    let n = adj.len();
    if n == 0 {
        return false;
    }
    let mut reverse = vec![Vec::new(); n];
    for (u, succs) in adj.iter().enumerate() {
        for &v in succs {
            reverse[v].push(u);
        }
    }
    reachable(adj, 0).into_iter().all(|b| b) && reachable(&reverse, 0).into_iter().all(|b| b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_and_chain() {
        assert!(is_strongly_connected(&[vec![1], vec![2], vec![0]]));
        assert!(!is_strongly_connected(&[vec![1], vec![2], vec![]]));
        assert!(is_strongly_connected(&[vec![0]]));
        assert!(is_strongly_connected(&[vec![]]));
        assert!(!is_strongly_connected(&[]));
    }
}
