use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::warn;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use switchlearn::dot::hypothesis_to_dot;
use switchlearn::generate::{random_spec, InstanceShape};
use switchlearn::lstar::DEFAULT_MAX_ITERATIONS;
use switchlearn::spec_file::{load_spec, ModelReport, SpecFile};
use switchlearn::word::{count_words_up_to, DEFAULT_ENUMERATION_BUDGET};
use switchlearn::{
    learn_all_subsystems, learn_automaton, Error, GrayBoxOracle, HypothesisAutomaton,
    LearnerConfig, LearnerTrace, MembershipOracle, StrictEquivalence, SwitchedSystemSpec,
    WhiteBoxEquivalence,
};

#[derive(Parser)]
#[command(
    name = "switchlearn",
    version,
    about = "Learn switched systems from a gray-box simulation model"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Recover the polynomial coefficients of every subsystem.
    LearnModels {
        spec: PathBuf,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Learn a minimal automaton for the switching restrictions.
    LearnAutomaton {
        spec: PathBuf,
        #[arg(long)]
        dot: PathBuf,
        #[arg(long)]
        trace: PathBuf,
        /// Also write every intermediate observation table.
        #[arg(long)]
        tables: Option<PathBuf>,
        #[command(flatten)]
        learner: LearnerArgs,
    },
    /// Both phases; writes models.json, hypothesis.dot, trace.log, tables.txt.
    LearnAll {
        spec: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        #[command(flatten)]
        learner: LearnerArgs,
    },
    /// Write a random spec file.
    Generate {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short)]
        out: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_subsystems: usize,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
        #[arg(long, default_value_t = 3)]
        max_order: usize,
        #[arg(long, default_value_t = 5)]
        max_nodes: usize,
        #[arg(long = "max-len", default_value_t = 12)]
        max_len: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Exhaustive membership comparison, falling back to white-box when the
    /// enumeration would exceed the budget.
    Auto,
    /// Exhaustive membership comparison only.
    Strict,
    /// Product search against the ground-truth automaton.
    Whitebox,
}

#[derive(Args, Clone, Copy)]
struct LearnerArgs {
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    mode: Mode,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
    budget: u64,
    #[arg(long = "max-iter", default_value_t = DEFAULT_MAX_ITERATIONS)]
    max_iter: usize,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => 2,
            Error::EnumerationBudget { .. } => 4,
            _ => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error, code: u8) -> Failure {
    Failure {
        code,
        message: format!("{}: {e}", path.display()),
    }
}

fn read_spec(path: &Path) -> Result<SwitchedSystemSpec, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e, 2))?;
    Ok(load_spec(&text)?)
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| io_failure(path, e, 1))
}

fn learn_models(spec: &SwitchedSystemSpec, out: &Path) -> Result<(), Failure> {
    let (dim, order) = (spec.dim, spec.order);
    let oracle = GrayBoxOracle::new(spec.clone());
    let fields = learn_all_subsystems(&oracle, spec.n_subsystems, dim, order)?;
    let report = ModelReport::new(&fields, dim, order, oracle.stats().eval_queries);
    write(out, &(report.to_json() + "\n"))?;
    println!("eval_queries={}", report.eval_queries);
    Ok(())
}

fn run_learner(
    spec: &SwitchedSystemSpec,
    args: LearnerArgs,
) -> Result<(HypothesisAutomaton, LearnerTrace), Failure> {
    let oracle = GrayBoxOracle::new(spec.clone());
    let config = LearnerConfig {
        max_iterations: args.max_iter,
        record_tables: true,
    };
    let strict = StrictEquivalence {
        max_len: spec.max_len,
        budget: args.budget,
    };
    let white = WhiteBoxEquivalence {
        truth: &spec.automaton,
        max_len: spec.max_len,
    };
    let use_white = match args.mode {
        Mode::Strict => false,
        Mode::Whitebox => true,
        Mode::Auto => {
            let needed = count_words_up_to(oracle.alphabet_size(), spec.max_len);
            if needed > args.budget {
                warn!(
                    "{needed} words exceed the budget of {}; using white-box equivalence",
                    args.budget
                );
            }
            needed > args.budget
        }
    };
    let result = if use_white {
        learn_automaton(&oracle, &white, &config)?
    } else {
        learn_automaton(&oracle, &strict, &config)?
    };
    println!(
        "nodes={} edges={} counterexamples={} membership_queries={}",
        result.0.node_count(),
        result.0.edge_count(),
        result.1.counterexamples().count(),
        oracle.stats().membership_queries
    );
    Ok(result)
}

fn write_learner_outputs(
    h: &HypothesisAutomaton,
    trace: &LearnerTrace,
    dot: &Path,
    trace_path: &Path,
    tables: Option<&Path>,
) -> Result<(), Failure> {
    write(dot, &hypothesis_to_dot(h))?;
    write(trace_path, &trace.to_log())?;
    if let Some(path) = tables {
        let text: Vec<&str> = trace.tables().collect();
        write(path, &text.join("\n"))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::LearnModels { spec, out } => learn_models(&read_spec(&spec)?, &out),
        Command::LearnAutomaton {
            spec,
            dot,
            trace,
            tables,
            learner,
        } => {
            let spec = read_spec(&spec)?;
            let (h, log) = run_learner(&spec, learner)?;
            write_learner_outputs(&h, &log, &dot, &trace, tables.as_deref())
        }
        Command::LearnAll {
            spec,
            out_dir,
            learner,
        } => {
            let spec = read_spec(&spec)?;
            fs::create_dir_all(&out_dir).map_err(|e| io_failure(&out_dir, e, 1))?;
            learn_models(&spec, &out_dir.join("models.json"))?;
            let (h, log) = run_learner(&spec, learner)?;
            write_learner_outputs(
                &h,
                &log,
                &out_dir.join("hypothesis.dot"),
                &out_dir.join("trace.log"),
                Some(&out_dir.join("tables.txt")),
            )
        }
        Command::Generate {
            seed,
            out,
            max_subsystems,
            max_dim,
            max_order,
            max_nodes,
            max_len,
        } => {
            let shape = InstanceShape {
                max_subsystems,
                max_dim,
                max_order,
                max_nodes,
                max_len,
                ..InstanceShape::default()
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let spec = random_spec(&mut rng, &shape);
            write(&out, &(SpecFile::from_spec(&spec).to_json() + "\n"))
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
