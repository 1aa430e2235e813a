//! Ground-truth switched-system model: componentwise polynomial subsystems
//! and the restriction automaton governing admissible switching.

use crate::automaton::RestrictionAutomaton;
use crate::error::{Error, Result};

/// One subsystem `f_p`. Component `i` of `f_p(x)` is
/// `Σ_k coeffs[i][k] · x_i^k`, so it depends on `x_i` alone.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialVectorField {
    subsystem: usize,
    coeffs: Vec<Vec<f64>>,
}

impl PolynomialVectorField {
    /// `coeffs` has one row per state component and `m + 1` columns, lowest
    /// power first.
    pub fn new(subsystem: usize, coeffs: Vec<Vec<f64>>) -> Result<Self> {
        if subsystem == 0 {
            return Err(Error::InvalidModel("subsystem indices start at 1".into()));
        }
        let Some(first) = coeffs.first() else {
            return Err(Error::InvalidModel(format!(
                "subsystem {subsystem}: coefficient array has no rows"
            )));
        };
        let width = first.len();
        if width == 0 {
            return Err(Error::InvalidModel(format!(
                "subsystem {subsystem}: coefficient rows are empty"
            )));
        }
        for (i, row) in coeffs.iter().enumerate() {
            if row.len() != width {
                return Err(Error::InvalidModel(format!(
                    "subsystem {subsystem}: row {} has {} coefficients, expected {width}",
                    i + 1,
                    row.len()
                )));
            }
            if let Some(k) = row.iter().position(|a| !a.is_finite()) {
                return Err(Error::InvalidModel(format!(
                    "subsystem {subsystem}: coefficient [{}][{k}] is not finite",
                    i + 1
                )));
            }
        }
        Ok(PolynomialVectorField { subsystem, coeffs })
    }

    pub fn subsystem(&self) -> usize {
        self.subsystem
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn order(&self) -> usize {
        self.coeffs[0].len() - 1
    }

    pub fn coeffs(&self) -> &[Vec<f64>] {
        &self.coeffs
    }

    /// `a_{p,ik}` with `i` 0-based.
    pub fn coeff(&self, i: usize, k: usize) -> f64 {
        self.coeffs[i][k]
    }

    pub fn eval(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: x.len(),
            });
        }
        Ok(self
            .coeffs
            .iter()
            .zip(x)
            .map(|(row, &xi)| horner(row, xi))
            .collect())
    }

    /// Largest absolute coefficient difference against another field of the
    /// same shape.
    pub fn max_abs_diff(&self, other: &PolynomialVectorField) -> f64 {
        assert_eq!(self.dim(), other.dim());
        assert_eq!(self.order(), other.order());
        self.coeffs
            .iter()
            .flatten()
            .zip(other.coeffs.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Evaluates `Σ_k coeffs[k] x^k`.
pub(crate) fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &a| acc * x + a)
}

/// The full tuple a learner has to recover: dimensions, subsystem dynamics
/// and the switching restrictions.
#[derive(Clone, Debug)]
pub struct SwitchedSystemSpec {
    pub n_subsystems: usize,
    pub dim: usize,
    pub order: usize,
    /// Length bound `M` used for membership/equivalence checking.
    pub max_len: usize,
    pub fields: Vec<PolynomialVectorField>,
    pub automaton: RestrictionAutomaton,
}

impl SwitchedSystemSpec {
    /// Fields may be given in any order; they are stored by subsystem index.
    pub fn new(
        dim: usize,
        order: usize,
        max_len: usize,
        mut fields: Vec<PolynomialVectorField>,
        automaton: RestrictionAutomaton,
    ) -> Result<Self> {
        let n = automaton.alphabet_size();
        if fields.len() != n {
            return Err(Error::InvalidModel(format!(
                "expected {n} subsystems, got {}",
                fields.len()
            )));
        }
        fields.sort_by_key(|f| f.subsystem());
        for (idx, f) in fields.iter().enumerate() {
            if f.subsystem() != idx + 1 {
                return Err(Error::InvalidModel(format!(
                    "subsystem indices must be exactly 1..={n}, found {}",
                    f.subsystem()
                )));
            }
            if f.dim() != dim || f.order() != order {
                return Err(Error::InvalidModel(format!(
                    "subsystem {}: shape {}x{} does not match d={dim}, m={order}",
                    f.subsystem(),
                    f.dim(),
                    f.order() + 1
                )));
            }
        }
        if max_len == 0 {
            return Err(Error::InvalidModel("M must be at least 1".into()));
        }
        Ok(SwitchedSystemSpec {
            n_subsystems: n,
            dim,
            order,
            max_len,
            fields,
            automaton,
        })
    }

    pub fn field(&self, p: usize) -> Option<&PolynomialVectorField> {
        p.checked_sub(1).and_then(|i| self.fields.get(i))
    }
}
