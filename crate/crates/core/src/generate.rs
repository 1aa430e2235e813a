//! Random instances for property tests and the `generate` subcommand.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::automaton::{Edge, RestrictionAutomaton};
use crate::system::{PolynomialVectorField, SwitchedSystemSpec};

/// Strongly connected automaton with `1..=max_nodes` nodes: a random
/// Hamiltonian cycle plus up to `2n` extra random edges. Node 0 is initial.
pub fn random_restriction<R: Rng + ?Sized>(
    rng: &mut R,
    max_nodes: usize,
    alphabet_size: usize,
) -> RestrictionAutomaton {
    let n = rng.gen_range(1..=max_nodes.max(1));
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges: Vec<Edge> = (0..n)
        .map(|i| {
            Edge::new(
                order[i],
                order[(i + 1) % n],
                rng.gen_range(1..=alphabet_size),
            )
        })
        .collect();
    let extra = rng.gen_range(0..=2 * n);
    for _ in 0..extra {
        edges.push(Edge::new(
            rng.gen_range(0..n),
            rng.gen_range(0..n),
            rng.gen_range(1..=alphabet_size),
        ));
    }
    RestrictionAutomaton::with_indexed_nodes(n, 0, alphabet_size, edges)
        .expect("cycle through all nodes is strongly connected")
}

/// Coefficients `k / 256` with integer `k`, magnitude at most `bound`.
pub fn random_field<R: Rng + ?Sized>(
    rng: &mut R,
    subsystem: usize,
    dim: usize,
    order: usize,
    bound: f64,
) -> PolynomialVectorField {
    let steps = (bound * 256.0).floor() as i64;
    let coeffs = (0..dim)
        .map(|_| {
            (0..=order)
                .map(|_| rng.gen_range(-steps..=steps) as f64 / 256.0)
                .collect()
        })
        .collect();
    PolynomialVectorField::new(subsystem, coeffs).expect("finite coefficients")
}

#[derive(Clone, Copy, Debug)]
pub struct InstanceShape {
    pub max_subsystems: usize,
    pub max_dim: usize,
    pub max_order: usize,
    pub max_nodes: usize,
    pub max_len: usize,
    pub coeff_bound: f64,
}

impl Default for InstanceShape {
    fn default() -> Self {
        InstanceShape {
            max_subsystems: 3,
            max_dim: 4,
            max_order: 6,
            max_nodes: 5,
            max_len: 12,
            coeff_bound: 1000.0,
        }
    }
}

pub fn random_spec<R: Rng + ?Sized>(rng: &mut R, shape: &InstanceShape) -> SwitchedSystemSpec {
    let n = rng.gen_range(1..=shape.max_subsystems.max(1));
    let dim = rng.gen_range(1..=shape.max_dim.max(1));
    let order = rng.gen_range(0..=shape.max_order);
    let fields = (1..=n)
        .map(|p| random_field(rng, p, dim, order, shape.coeff_bound))
        .collect();
    let automaton = random_restriction(rng, shape.max_nodes, n);
    SwitchedSystemSpec::new(dim, order, shape.max_len, fields, automaton)
        .expect("consistent shapes")
}
