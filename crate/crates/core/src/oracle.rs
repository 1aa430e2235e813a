//! The gray-box simulation model: one-step subsystem evaluations and
//! word-membership queries over a hidden switched system.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::automaton::RestrictionAutomaton;
use crate::error::{Error, Result};
use crate::system::SwitchedSystemSpec;
use crate::word::Word;

/// Answers `f_p(x)` for a subsystem index `p`.
pub trait SubsystemOracle {
    fn eval_subsystem(&self, p: usize, x: &[f64]) -> Result<Vec<f64>>;
}

/// Answers whether a word belongs to the switching-restriction language.
pub trait MembershipOracle {
    fn alphabet_size(&self) -> usize;
    fn membership(&self, w: &Word) -> Result<bool>;
}

/// Query counters, snapshot form.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OracleStats {
    pub eval_queries: u64,
    pub membership_queries: u64,
}

/// Simulation model over a [`SwitchedSystemSpec`]. Counters are atomic so
/// the oracle can be shared across threads; read them after the callers are
/// done.
#[derive(Debug)]
pub struct GrayBoxOracle {
    spec: SwitchedSystemSpec,
    query_len_bound: Option<usize>,
    eval_queries: AtomicU64,
    membership_queries: AtomicU64,
}

impl GrayBoxOracle {
    /// Membership queries accept words of any length; see
    /// [`GrayBoxOracle::with_query_len_bound`].
    pub fn new(spec: SwitchedSystemSpec) -> Self {
        GrayBoxOracle {
            spec,
            query_len_bound: None,
            eval_queries: AtomicU64::new(0),
            membership_queries: AtomicU64::new(0),
        }
    }

    /// Rejects membership queries for words longer than `bound` with
    /// [`Error::WordTooLong`].
    pub fn with_query_len_bound(mut self, bound: usize) -> Self {
        self.query_len_bound = Some(bound);
        self
    }

    pub fn stats(&self) -> OracleStats {
        OracleStats {
            eval_queries: self.eval_queries.load(Ordering::Relaxed),
            membership_queries: self.membership_queries.load(Ordering::Relaxed),
        }
    }

    pub fn reset_stats(&self) {
        self.eval_queries.store(0, Ordering::Relaxed);
        self.membership_queries.store(0, Ordering::Relaxed);
    }

    pub fn spec(&self) -> &SwitchedSystemSpec {
        &self.spec
    }

    /// Ground truth, for white-box equivalence checking only.
    pub fn restriction_automaton(&self) -> &RestrictionAutomaton {
        &self.spec.automaton
    }
}

impl SubsystemOracle for GrayBoxOracle {
    fn eval_subsystem(&self, p: usize, x: &[f64]) -> Result<Vec<f64>> {
        let field = self.spec.field(p).ok_or(Error::UnknownSubsystem(p))?;
        if x.len() != self.spec.dim {
            return Err(Error::DimensionMismatch {
                expected: self.spec.dim,
                actual: x.len(),
            });
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(
                "state has non-finite entries".into(),
            ));
        }
        let y = field.eval(x)?;
        self.eval_queries.fetch_add(1, Ordering::Relaxed);
        Ok(y)
    }
}

impl MembershipOracle for GrayBoxOracle {
    fn alphabet_size(&self) -> usize {
        self.spec.n_subsystems
    }

    fn membership(&self, w: &Word) -> Result<bool> {
        if let Some(bound) = self.query_len_bound {
            if w.len() > bound {
                return Err(Error::WordTooLong {
                    len: w.len(),
                    bound,
                });
            }
        }
        w.check_alphabet(self.spec.n_subsystems)?;
        self.membership_queries.fetch_add(1, Ordering::Relaxed);
        Ok(self.spec.automaton.accepts(w))
    }
}
