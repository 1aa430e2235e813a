//! Ready-made systems used by tests, docs and the CLI.

use crate::automaton::{Edge, RestrictionAutomaton};
use crate::system::{PolynomialVectorField, SwitchedSystemSpec};

/// Three cubic subsystems on `R^3`. Switching starts in subsystem 1, may
/// go `1→1`, `1→2`, `1→3`, `2→1`, `3→1`, and dwells exactly one step in 2
/// or 3. `M = 100`.
pub fn three_mode_system() -> SwitchedSystemSpec {
    let f1 = vec![
        vec![-0.0625, 0.125, -0.25, 0.5],
        vec![0.0625, -0.125, 0.25, 0.5],
        vec![0.0625, -0.125, 0.25, -0.5],
    ];
    let f2 = vec![
        vec![0.81, -0.27, 0.0, 0.3],
        vec![0.81, 0.27, 0.0, -0.3],
        vec![0.0, 0.81, 0.0, 0.3],
    ];
    let f3 = vec![
        vec![0.0, 0.0, 4.0, -2.0],
        vec![0.0, 0.0, 8.0, -4.0],
        vec![-0.625, 0.0, 0.25, 0.5],
    ];
    let fields = [f1, f2, f3]
        .into_iter()
        .enumerate()
        .map(|(i, c)| PolynomialVectorField::new(i + 1, c).expect("valid field"))
        .collect();
    SwitchedSystemSpec::new(3, 3, 100, fields, three_mode_restrictions()).expect("valid system")
}

/// Restriction automaton of [`three_mode_system`].
pub fn three_mode_restrictions() -> RestrictionAutomaton {
    RestrictionAutomaton::with_indexed_nodes(
        2,
        0,
        3,
        vec![
            Edge::new(0, 1, 1),
            Edge::new(1, 1, 1),
            Edge::new(1, 0, 2),
            Edge::new(1, 0, 3),
        ],
    )
    .expect("valid automaton")
}

/// One node with a self-loop for every subsystem.
pub fn unrestricted(alphabet_size: usize) -> RestrictionAutomaton {
    let edges = (1..=alphabet_size).map(|p| Edge::new(0, 0, p)).collect();
    RestrictionAutomaton::with_indexed_nodes(1, 0, alphabet_size, edges).expect("valid automaton")
}
