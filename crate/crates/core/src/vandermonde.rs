//! Dense Vandermonde systems `Σ_j x_j · node_k^j = b_k` solved by Gaussian
//! elimination with partial pivoting plus iterative refinement.
//!
//! Residuals for refinement are accumulated in twice-working precision
//! (error-free product and sum transforms), so a system whose exact solution
//! is representable in `f64` is typically recovered exactly.

use log::warn;

use crate::error::{Error, Result};

/// Absolute residual tolerance `‖A·X − b‖∞` for a solved system.
pub const TOL_SOLVE: f64 = 1e-9;
/// 1-norm condition number above which a solve emits a warning.
pub const COND_WARN: f64 = 1e12;

const REFINEMENT_STEPS: usize = 4;

/// `A[k][j] = nodes[k]^(min_power + j)`, square.
#[derive(Clone, Debug, PartialEq)]
pub struct VandermondeSystem {
    nodes: Vec<f64>,
    min_power: u32,
    rhs: Vec<f64>,
}

/// Solution together with the diagnostics computed while solving.
#[derive(Clone, Debug, PartialEq)]
pub struct VandermondeSolution {
    pub x: Vec<f64>,
    /// `‖A·X − b‖∞`
    pub residual: f64,
    /// `‖A‖₁ · ‖A⁻¹‖₁`
    pub condition: f64,
}

impl VandermondeSolution {
    pub fn ill_conditioned(&self) -> bool {
        self.condition > COND_WARN
    }
}

impl VandermondeSystem {
    /// The system used by the subsystem learner: nodes `1..=m`, powers
    /// `1..=m`, right-hand side `x'_k − a_0`.
    pub fn canonical(rhs: Vec<f64>) -> Self {
        let nodes = (1..=rhs.len()).map(|k| k as f64).collect();
        VandermondeSystem {
            nodes,
            min_power: 1,
            rhs,
        }
    }

    /// Full interpolation system on arbitrary nodes with powers
    /// `0..nodes.len()`.
    pub fn interpolation(nodes: Vec<f64>, rhs: Vec<f64>) -> Result<Self> {
        if nodes.len() != rhs.len() {
            return Err(Error::DimensionMismatch {
                expected: nodes.len(),
                actual: rhs.len(),
            });
        }
        Ok(VandermondeSystem {
            nodes,
            min_power: 0,
            rhs,
        })
    }

    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    pub fn rhs(&self) -> &[f64] {
        &self.rhs
    }

    pub fn matrix(&self) -> Vec<Vec<f64>> {
        self.nodes
            .iter()
            .map(|&node| {
                (0..self.size())
                    .map(|j| node.powi(self.min_power as i32 + j as i32))
                    .collect()
            })
            .collect()
    }

    pub fn solve(&self) -> Result<VandermondeSolution> {
        let n = self.size();
        if n == 0 {
            return Err(Error::Solver("empty system".into()));
        }
        if self.rhs.iter().any(|b| !b.is_finite()) {
            return Err(Error::Solver("right-hand side is not finite".into()));
        }
        let a = self.matrix();
        let lu = Lu::factor(&a)?;

        let mut x = lu.solve(&self.rhs);
        for _ in 0..REFINEMENT_STEPS {
            let r = residual_vector(&a, &x, &self.rhs);
            if r.iter().all(|&v| v == 0.0) {
                break;
            }
            let dx = lu.solve(&r);
            let mut changed = false;
            for (xi, di) in x.iter_mut().zip(&dx) {
                let next = *xi + di;
                changed |= next != *xi;
                *xi = next;
            }
            if !changed {
                break;
            }
        }

        let residual = residual_vector(&a, &x, &self.rhs)
            .into_iter()
            .fold(0.0_f64, |m, v| m.max(v.abs()));
        let condition = norm1(&a) * lu.inverse_norm1();
        if condition > COND_WARN {
            warn!("Vandermonde system of size {n} is ill-conditioned (cond1 ≈ {condition:.3e})");
        }
        // Relative to the magnitude of A·X: exact representable solutions give
        // zero, non-representable ones cannot beat the rounding of X itself.
        let scale = a
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&x)
                    .map(|(aij, xj)| (aij * xj).abs())
                    .sum::<f64>()
            })
            .fold(1.0, f64::max);
        if residual > TOL_SOLVE * scale {
            return Err(Error::Solver(format!(
                "residual {residual:.3e} exceeds tolerance (scale {scale:.3e})"
            )));
        }
        Ok(VandermondeSolution {
            x,
            residual,
            condition,
        })
    }
}

/// `b − A·x`, each component accumulated with compensated arithmetic.
fn residual_vector(a: &[Vec<f64>], x: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter()
        .zip(b)
        .map(|(row, &bi)| {
            let terms = row.iter().zip(x).map(|(&aij, &xj)| (-aij, xj));
            dot2(std::iter::once((bi, 1.0)).chain(terms))
        })
        .collect()
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let z = s - a;
    (s, (a - (s - z)) + (b - z))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Dot product in twice working precision.
fn dot2(pairs: impl Iterator<Item = (f64, f64)>) -> f64 {
    let mut p = 0.0;
    let mut s = 0.0;
    for (x, y) in pairs {
        let (h, r) = two_prod(x, y);
        let (sum, q) = two_sum(p, h);
        p = sum;
        s += q + r;
    }
    p + s
}

fn norm1(a: &[Vec<f64>]) -> f64 {
    let n = a.len();
    (0..n)
        .map(|j| a.iter().map(|row| row[j].abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// LU factorization with row pivoting, `P·A = L·U` stored compactly.
struct Lu {
    lu: Vec<Vec<f64>>,
    perm: Vec<usize>,
}

impl Lu {
    fn factor(a: &[Vec<f64>]) -> Result<Self> {
        let n = a.len();
        let mut lu = a.to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&i, &j| lu[i][col].abs().total_cmp(&lu[j][col].abs()))
                .expect("nonempty range");
            if lu[pivot][col] == 0.0 {
                return Err(Error::Solver(format!("matrix is singular at column {col}")));
            }
            lu.swap(col, pivot);
            perm.swap(col, pivot);
            let (upper, lower) = lu.split_at_mut(col + 1);
            let pivot_row = &upper[col];
            for row in lower.iter_mut() {
                let factor = row[col] / pivot_row[col];
                row[col] = factor;
                for (x, p) in row[col + 1..].iter_mut().zip(&pivot_row[col + 1..]) {
                    *x -= factor * p;
                }
            }
        }
        Ok(Lu { lu, perm })
    }

    fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.lu.len();
        let mut y: Vec<f64> = self.perm.iter().map(|&i| b[i]).collect();
        for i in 0..n {
            for k in 0..i {
                y[i] -= self.lu[i][k] * y[k];
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                y[i] -= self.lu[i][k] * y[k];
            }
            y[i] /= self.lu[i][i];
        }
        y
    }

    fn inverse_norm1(&self) -> f64 {
        let n = self.lu.len();
        (0..n)
            .map(|j| {
                let mut e = vec![0.0; n];
                e[j] = 1.0;
                self.solve(&e).iter().map(|v| v.abs()).sum::<f64>()
            })
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Cramer's rule over exact rationals with i128 numerators and a shared
    /// denominator, independent of the elimination path above.
    fn cramer_integer(a: &[Vec<i128>], b: &[i128]) -> Vec<(i128, i128)> {
        fn det(m: &[Vec<i128>]) -> i128 {
            let n = m.len();
            if n == 1 {
                return m[0][0];
            }
            (0..n)
                .map(|j| {
                    let minor: Vec<Vec<i128>> = m[1..]
                        .iter()
                        .map(|row| {
                            row.iter()
                                .enumerate()
                                .filter(|&(c, _)| c != j)
                                .map(|(_, &v)| v)
                                .collect()
                        })
                        .collect();
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    sign * m[0][j] * det(&minor)
                })
                .sum()
        }
        let d = det(a);
        (0..a.len())
            .map(|j| {
                let mut m = a.to_vec();
                for (row, &bi) in m.iter_mut().zip(b) {
                    row[j] = bi;
                }
                (det(&m), d)
            })
            .collect()
    }

    #[test]
    fn one_by_one() {
        let s = VandermondeSystem::canonical(vec![5.0]).solve().unwrap();
        assert_eq!(s.x, vec![5.0]);
    }

    #[test]
    fn two_by_two_against_cramer() {
        let oracle = cramer_integer(&[vec![1, 1], vec![2, 4]], &[3, 8]);
        assert_eq!(oracle, vec![(4, 2), (2, 2)]);
        let s = VandermondeSystem::canonical(vec![3.0, 8.0])
            .solve()
            .unwrap();
        assert_eq!(s.x, vec![2.0, 1.0]);
        assert!(s.residual <= TOL_SOLVE);
    }

    #[test]
    fn cubic_component() {
        // x'_k − a_0 for the first component of the cubic test system
        let s = VandermondeSystem::canonical(vec![0.375, 3.25, 11.625])
            .solve()
            .unwrap();
        for (got, want) in s.x.iter().zip([0.125, -0.25, 0.5]) {
            assert!((got - want).abs() <= 1e-12, "{got} vs {want}");
        }
        assert!(s.residual <= TOL_SOLVE);
    }

    #[test]
    fn six_by_six_against_cramer() {
        let truth: [i128; 6] = [7, -3, 11, 0, -5, 2];
        let a: Vec<Vec<i128>> = (1..=6i128)
            .map(|k| (1..=6u32).map(|j| k.pow(j)).collect())
            .collect();
        let b: Vec<i128> = a
            .iter()
            .map(|row| row.iter().zip(&truth).map(|(x, y)| x * y).sum())
            .collect();
        let oracle: Vec<f64> = cramer_integer(&a, &b)
            .iter()
            .map(|&(n, d)| n as f64 / d as f64)
            .collect();
        let s = VandermondeSystem::canonical(b.iter().map(|&v| v as f64).collect())
            .solve()
            .unwrap();
        for (got, want) in s.x.iter().zip(&oracle) {
            assert!((got - want).abs() <= 1e-9);
        }
        assert!(s.condition > 1.0 && s.condition < COND_WARN);
    }

    #[test]
    fn interpolation_nodes() {
        // p(x) = 1 + 2x − x² through symmetric nodes
        let nodes = vec![-1.0, 0.0, 1.0];
        let rhs = nodes.iter().map(|&x: &f64| 1.0 + 2.0 * x - x * x).collect();
        let s = VandermondeSystem::interpolation(nodes, rhs)
            .unwrap()
            .solve()
            .unwrap();
        assert_eq!(s.x, vec![1.0, 2.0, -1.0]);
        assert!(
            VandermondeSystem::interpolation(vec![1.0, 1.0], vec![0.0, 1.0])
                .unwrap()
                .solve()
                .is_err()
        );
    }

    #[test]
    fn rejects_non_finite_rhs() {
        assert!(VandermondeSystem::canonical(vec![f64::INFINITY])
            .solve()
            .is_err());
        assert!(VandermondeSystem::canonical(vec![]).solve().is_err());
    }
}
