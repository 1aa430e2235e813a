//! The learning loop for restriction automata and the combined pipeline.
//!
//! Starting from `Q = R = {λ}`, the table is repaired until it is closed and
//! consistent, a hypothesis is built, and the equivalence oracle is asked for
//! a counterexample. Counterexamples are added to `Q` together with all of
//! their prefixes. The loop stops on the first hypothesis without one.

use std::fmt;

use log::info;

use crate::automaton::HypothesisAutomaton;
use crate::builder::dfa_construct;
use crate::equivalence::EquivalenceOracle;
use crate::error::{Error, Result};
use crate::oracle::{MembershipOracle, SubsystemOracle};
use crate::poly::learn_all_subsystems;
use crate::system::PolynomialVectorField;
use crate::table::{ClosednessWitness, ConsistencyWitness, ObservationTable};
use crate::word::Word;

pub const DEFAULT_MAX_ITERATIONS: usize = 10_000;

#[derive(Clone, Copy, Debug)]
pub struct LearnerConfig {
    /// Upper bound on table repairs plus hypotheses before giving up.
    pub max_iterations: usize,
    /// Record a rendered table after every change.
    pub record_tables: bool,
}

impl Default for LearnerConfig {
    fn default() -> Self {
        LearnerConfig {
            max_iterations: DEFAULT_MAX_ITERATIONS,
            record_tables: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum TraceEvent {
    /// `T` filled over `{λ} ∪ P` with the listed answers.
    Seed {
        entries: Vec<(Word, bool)>,
    },
    Table {
        index: usize,
        prefixes: Vec<Word>,
        suffixes: Vec<Word>,
        closed: bool,
        consistent: bool,
        rendered: Option<String>,
    },
    Closedness(ClosednessWitness),
    Consistency(ConsistencyWitness),
    Hypothesis {
        iteration: usize,
        automaton: HypothesisAutomaton,
    },
    Counterexample(Word),
    Done {
        nodes: usize,
        edges: usize,
        membership_entries: usize,
    },
}

fn join(words: &[Word]) -> String {
    words
        .iter()
        .map(Word::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for TraceEvent {
    /// One line per event, fields in a fixed order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceEvent::Seed { entries } => {
                let parts: Vec<String> = entries
                    .iter()
                    .map(|(w, b)| format!("{w}={}", u8::from(*b)))
                    .collect();
                write!(f, "seed {}", parts.join(" "))
            }
            TraceEvent::Table {
                index,
                prefixes,
                suffixes,
                closed,
                consistent,
                ..
            } => write!(
                f,
                "table {index} Q={} R={} closed={} consistent={}",
                join(prefixes),
                join(suffixes),
                u8::from(*closed),
                u8::from(*consistent)
            ),
            TraceEvent::Closedness(w) => {
                write!(
                    f,
                    "closedness prefix={} symbol={} add_prefix={}",
                    w.prefix,
                    w.symbol,
                    w.word()
                )
            }
            TraceEvent::Consistency(w) => write!(
                f,
                "consistency first={} second={} symbol={} suffix={} add_suffix={}",
                w.first,
                w.second,
                w.symbol,
                w.suffix,
                w.experiment()
            ),
            TraceEvent::Hypothesis {
                iteration,
                automaton,
            } => {
                let edges: Vec<String> = automaton
                    .edges()
                    .iter()
                    .map(|e| format!("{}-{}->{}", e.src, e.label, e.dst))
                    .collect();
                write!(
                    f,
                    "hypothesis {iteration} nodes={} edges={}",
                    automaton.node_count(),
                    edges.join(",")
                )
            }
            TraceEvent::Counterexample(w) => write!(f, "counterexample {w}"),
            TraceEvent::Done {
                nodes,
                edges,
                membership_entries,
            } => write!(
                f,
                "done nodes={nodes} edges={edges} entries={membership_entries}"
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct LearnerTrace {
    pub events: Vec<TraceEvent>,
}

impl LearnerTrace {
    pub fn hypotheses(&self) -> impl Iterator<Item = &HypothesisAutomaton> {
        self.events.iter().filter_map(|e| match e {
            TraceEvent::Hypothesis { automaton, .. } => Some(automaton),
            _ => None,
        })
    }

    pub fn counterexamples(&self) -> impl Iterator<Item = &Word> {
        self.events.iter().filter_map(|e| match e {
            TraceEvent::Counterexample(w) => Some(w),
            _ => None,
        })
    }

    /// Rendered tables in the order they were produced.
    pub fn tables(&self) -> impl Iterator<Item = &str> {
        self.events.iter().filter_map(|e| match e {
            TraceEvent::Table { rendered, .. } => rendered.as_deref(),
            _ => None,
        })
    }

    /// Number of hypotheses built, i.e. main-loop iterations.
    pub fn iterations(&self) -> usize {
        self.hypotheses().count()
    }

    /// The line-oriented log: one event per line.
    pub fn to_log(&self) -> String {
        self.events.iter().map(|e| format!("{e}\n")).collect()
    }
}

/// Learns a minimal deterministic automaton for the oracle's language.
pub fn learn_automaton<O, E>(
    oracle: &O,
    equivalence: &E,
    config: &LearnerConfig,
) -> Result<(HypothesisAutomaton, LearnerTrace)>
where
    O: MembershipOracle + ?Sized,
    E: EquivalenceOracle,
{
    if oracle.alphabet_size() == 0 {
        return Err(Error::InvalidArgument("alphabet must be nonempty".into()));
    }
    let mut trace = LearnerTrace::default();
    let mut table = ObservationTable::new(oracle)?;
    let seed = std::iter::once(Word::empty())
        .chain((1..=oracle.alphabet_size()).map(|p| Word::from_symbols(vec![p])))
        .map(|w| {
            let bit = table.entry(&w).expect("seeded");
            (w, bit)
        })
        .collect();
    trace.events.push(TraceEvent::Seed { entries: seed });

    let mut table_index = 0;
    let mut steps = 0;
    let mut record = |table: &ObservationTable, trace: &mut LearnerTrace| -> Result<()> {
        table_index += 1;
        trace.events.push(TraceEvent::Table {
            index: table_index,
            prefixes: table.prefixes().to_vec(),
            suffixes: table.suffixes().to_vec(),
            closed: table.is_closed()?,
            consistent: table.is_consistent()?,
            rendered: config.record_tables.then(|| table.render()),
        });
        Ok(())
    };
    record(&table, &mut trace)?;

    loop {
        // repair until closed and consistent, closedness first
        loop {
            steps += 1;
            if steps > config.max_iterations {
                return Err(Error::IterationLimit(config.max_iterations));
            }
            if let Some(w) = table.fix_closedness(oracle)? {
                trace.events.push(TraceEvent::Closedness(w));
            } else if let Some(w) = table.fix_consistency(oracle)? {
                trace.events.push(TraceEvent::Consistency(w));
            } else {
                break;
            }
            record(&table, &mut trace)?;
        }

        let hypothesis = dfa_construct(&table)?;
        let iteration = trace.iterations() + 1;
        info!(
            "hypothesis {iteration}: {} nodes, {} edges",
            hypothesis.node_count(),
            hypothesis.edge_count()
        );
        trace.events.push(TraceEvent::Hypothesis {
            iteration,
            automaton: hypothesis.clone(),
        });

        match equivalence.find_counterexample(&hypothesis, oracle)? {
            None => {
                trace.events.push(TraceEvent::Done {
                    nodes: hypothesis.node_count(),
                    edges: hypothesis.edge_count(),
                    membership_entries: table.entry_count(),
                });
                return Ok((hypothesis, trace));
            }
            Some(cex) => {
                info!("counterexample {cex}");
                trace.events.push(TraceEvent::Counterexample(cex.clone()));
                table.add_counterexample(&cex, oracle)?;
                record(&table, &mut trace)?;
            }
        }
    }
}

/// Subsystem dynamics and restriction automaton, learned in that order.
#[derive(Clone, Debug)]
pub struct LearnedSystem {
    pub fields: Vec<PolynomialVectorField>,
    pub automaton: HypothesisAutomaton,
    pub trace: LearnerTrace,
}

pub fn learn_switched_system<O, E>(
    oracle: &O,
    equivalence: &E,
    dim: usize,
    order: usize,
    config: &LearnerConfig,
) -> Result<LearnedSystem>
where
    O: SubsystemOracle + MembershipOracle + ?Sized,
    E: EquivalenceOracle,
{
    let fields = learn_all_subsystems(oracle, oracle.alphabet_size(), dim, order)?;
    let (automaton, trace) = learn_automaton(oracle, equivalence, config)?;
    Ok(LearnedSystem {
        fields,
        automaton,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::equivalence::{minimal_dfa_of, StrictEquivalence, WhiteBoxEquivalence};
    use crate::oracle::GrayBoxOracle;
    use crate::system::SwitchedSystemSpec;

    #[test]
    fn three_mode_trace() {
        let o = GrayBoxOracle::new(catalog::three_mode_system());
        let (h, trace) =
            learn_automaton(&o, &StrictEquivalence::new(8), &LearnerConfig::default()).unwrap();
        assert_eq!(h.node_count(), 2);
        assert_eq!(h.edge_count(), 4);
        let cex: Vec<String> = trace.counterexamples().map(Word::to_string).collect();
        assert_eq!(cex, ["12"]);
        assert_eq!(trace.iterations(), 2);
        let log = trace.to_log();
        let lines: Vec<&str> = log.lines().collect();
        assert_eq!(lines[0], "seed λ=1 1=1 2=0 3=0");
        assert_eq!(lines[1], "table 1 Q=λ R=λ closed=0 consistent=1");
        assert_eq!(lines[2], "closedness prefix=λ symbol=2 add_prefix=2");
        assert_eq!(lines[4], "hypothesis 1 nodes=1 edges=0-1->0");
        assert_eq!(lines[5], "counterexample 12");
        assert_eq!(
            lines[7],
            "consistency first=1 second=12 symbol=2 suffix=λ add_suffix=2"
        );
        assert_eq!(
            lines[9],
            "hypothesis 2 nodes=2 edges=0-1->1,1-1->1,1-2->0,1-3->0"
        );
        assert!(lines[10].starts_with("done nodes=2 edges=4"));
    }

    #[test]
    fn white_box_matches_strict() {
        let spec = catalog::three_mode_system();
        let o = GrayBoxOracle::new(spec.clone());
        let strict =
            learn_automaton(&o, &StrictEquivalence::new(8), &LearnerConfig::default()).unwrap();
        let white = WhiteBoxEquivalence {
            truth: &spec.automaton,
            max_len: 100,
        };
        let wb = learn_automaton(&o, &white, &LearnerConfig::default()).unwrap();
        assert_eq!(strict.0, wb.0);
        assert_eq!(strict.1.to_log(), wb.1.to_log());
        assert!(wb.0.is_isomorphic(&minimal_dfa_of(&spec.automaton)));
    }

    #[test]
    fn unrestricted_needs_no_counterexample() {
        let spec = SwitchedSystemSpec::new(
            1,
            0,
            6,
            (1..=3)
                .map(|p| PolynomialVectorField::new(p, vec![vec![p as f64]]).unwrap())
                .collect(),
            catalog::unrestricted(3),
        )
        .unwrap();
        let o = GrayBoxOracle::new(spec);
        let learned = learn_switched_system(
            &o,
            &StrictEquivalence::new(6),
            1,
            0,
            &LearnerConfig::default(),
        )
        .unwrap();
        assert_eq!(learned.automaton.node_count(), 1);
        assert_eq!(learned.automaton.edge_count(), 3);
        assert_eq!(learned.trace.counterexamples().count(), 0);
        assert_eq!(learned.fields[1].coeffs(), &[vec![2.0]]);
        assert_eq!(o.stats().eval_queries, 3);
    }

    #[test]
    fn iteration_guard() {
        let o = GrayBoxOracle::new(catalog::three_mode_system());
        let config = LearnerConfig {
            max_iterations: 1,
            record_tables: false,
        };
        let err = learn_automaton(&o, &StrictEquivalence::new(8), &config).unwrap_err();
        assert!(matches!(err, Error::IterationLimit(1)));
    }
}
