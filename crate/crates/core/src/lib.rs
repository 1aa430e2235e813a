//! Active learning of discrete-time switched systems
//! `x(t+1) = f_{σ(t)}(x(t))` from a gray-box simulation model.
//!
//! Subsystems with componentwise polynomial dynamics are recovered from
//! `m + 1` one-step evaluations each ([`poly`]). The language of admissible
//! switching sequences is learned as a minimal deterministic automaton with
//! an L*-style observation table ([`table`], [`builder`], [`lstar`]).
//!
//! ```
//! use switchlearn::{catalog, GrayBoxOracle, LearnerConfig, StrictEquivalence};
//!
//! let oracle = GrayBoxOracle::new(catalog::three_mode_system());
//! let learned = switchlearn::learn_switched_system(
//!     &oracle,
//!     &StrictEquivalence::new(8),
//!     3,
//!     3,
//!     &LearnerConfig::default(),
//! )
//! .unwrap();
//! assert_eq!(learned.automaton.node_count(), 2);
//! assert!((learned.fields[0].coeff(0, 3) - 0.5).abs() < 1e-9);
//! ```

pub mod automaton;
pub mod builder;
pub mod catalog;
pub mod dot;
pub mod equivalence;
pub mod error;
pub mod generate;
mod graph;
pub mod lstar;
pub mod oracle;
pub mod poly;
pub mod spec_file;
pub mod system;
pub mod table;
pub mod vandermonde;
pub mod word;

pub use automaton::{Edge, HypothesisAutomaton, RestrictionAutomaton, Row};
pub use builder::dfa_construct;
pub use equivalence::{
    language_match, minimal_dfa_of, product_diff_search, EquivalenceOracle, StrictEquivalence,
    WhiteBoxEquivalence,
};
pub use error::{Error, Result};
pub use lstar::{
    learn_automaton, learn_switched_system, LearnedSystem, LearnerConfig, LearnerTrace, TraceEvent,
};
pub use oracle::{GrayBoxOracle, MembershipOracle, OracleStats, SubsystemOracle};
pub use poly::{learn_all_subsystems, learn_subsystem, learn_subsystem_with, SampleNodes};
pub use system::{PolynomialVectorField, SwitchedSystemSpec};
pub use table::ObservationTable;
pub use vandermonde::{VandermondeSolution, VandermondeSystem};
pub use word::{all_words_up_to, Symbol, Word};
