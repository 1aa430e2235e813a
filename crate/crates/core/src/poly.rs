//! Recovery of subsystem coefficients from one-step evaluations.
//!
//! Each subsystem is queried at the diagonal points `(k, …, k)` for
//! `k = 0..=m`. The constant terms are read off `k = 0`; the remaining
//! coefficients of component `i` solve the Vandermonde system built from
//! `x'_{k,i} − a_{i0}` at nodes `k = 1..=m`.

use log::debug;

use crate::error::Result;
use crate::oracle::SubsystemOracle;
use crate::system::PolynomialVectorField;
use crate::vandermonde::VandermondeSystem;

/// Where the learner samples each subsystem.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SampleNodes {
    /// `x̄_k = (k, …, k)` for `k = 0..=m`.
    #[default]
    Canonical,
    /// `x̄_k = (k − m/2, …)`, a full interpolation solve per component.
    /// Useful for conditioning experiments.
    Symmetric,
}

impl SampleNodes {
    fn points(self, order: usize) -> Vec<f64> {
        match self {
            SampleNodes::Canonical => (0..=order).map(|k| k as f64).collect(),
            SampleNodes::Symmetric => (0..=order).map(|k| k as f64 - order as f64 / 2.0).collect(),
        }
    }
}

pub fn learn_subsystem<O: SubsystemOracle + ?Sized>(
    oracle: &O,
    p: usize,
    dim: usize,
    order: usize,
) -> Result<PolynomialVectorField> {
    learn_subsystem_with(oracle, p, dim, order, SampleNodes::Canonical)
}

/// Issues exactly `order + 1` evaluation queries.
pub fn learn_subsystem_with<O: SubsystemOracle + ?Sized>(
    oracle: &O,
    p: usize,
    dim: usize,
    order: usize,
    nodes: SampleNodes,
) -> Result<PolynomialVectorField> {
    let points = nodes.points(order);
    // images[k][i] = component i of f_p at the k-th sample point
    let images = points
        .iter()
        .map(|&xk| oracle.eval_subsystem(p, &vec![xk; dim]))
        .collect::<Result<Vec<_>>>()?;

    let mut coeffs = Vec::with_capacity(dim);
    for i in 0..dim {
        let row = match nodes {
            SampleNodes::Canonical => {
                let a0 = images[0][i];
                let mut row = vec![a0];
                if order > 0 {
                    let rhs = images[1..].iter().map(|img| img[i] - a0).collect();
                    let sol = VandermondeSystem::canonical(rhs).solve()?;
                    debug!(
                        "subsystem {p} component {}: residual {:.2e}, cond {:.2e}",
                        i + 1,
                        sol.residual,
                        sol.condition
                    );
                    row.extend(sol.x);
                }
                row
            }
            SampleNodes::Symmetric => {
                let rhs = images.iter().map(|img| img[i]).collect();
                VandermondeSystem::interpolation(points.clone(), rhs)?
                    .solve()?
                    .x
            }
        };
        coeffs.push(row);
    }
    PolynomialVectorField::new(p, coeffs)
}

/// Learns `f_1, …, f_N` in order; `N · (m + 1)` evaluation queries in total.
pub fn learn_all_subsystems<O: SubsystemOracle + ?Sized>(
    oracle: &O,
    n_subsystems: usize,
    dim: usize,
    order: usize,
) -> Result<Vec<PolynomialVectorField>> {
    (1..=n_subsystems)
        .map(|p| learn_subsystem(oracle, p, dim, order))
        .collect()
}
