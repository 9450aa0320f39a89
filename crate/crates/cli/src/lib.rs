//! Command-line front end. [`run`] parses arguments, writes to the given
//! streams and returns the process exit code: 0 for success, 1 when a check
//! fails or a counterexample is found, 2 for usage and input errors.

pub mod format;

use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use teamqueue::change::{BeliefState, ContractionInput, ParallelContraction, ParallelOperator, SerialOperator};
use teamqueue::conditionals::rational_closure_tpo;
use teamqueue::lab::{run_suite, search_countermodel, Bounds, SuiteConfig, PROPERTIES, SUITES};
use teamqueue::{parse_formula, stq, Aggregator, Universe};

use crate::format::{load_profile, parse_tpo, render_profile};

#[derive(Debug, Parser)]
#[command(name = "teamqueue", version, about = "TeamQueue aggregation, parallel contraction and postulate checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Aggregate the TPOs in a profile file.
    Aggregate {
        /// stq, minrank or explicit:{1,3}/{2}/...
        #[arg(long, default_value = "stq")]
        method: String,
        file: PathBuf,
    },
    /// Compare the rational-closure oracle with STQ on a profile file.
    Closure { file: PathBuf },
    /// Print a profile file in canonical form.
    Render { file: PathBuf },
    /// Contract a state by one or more formulas.
    Contract {
        /// The prior TPO, e.g. "[p&q] < [~p | ~q]".
        #[arg(long)]
        state: String,
        /// Comma-separated formulas to remove.
        #[arg(long, value_delimiter = ',', required = true)]
        by: Vec<String>,
        #[arg(long, default_value = "natural")]
        op: String,
        #[arg(long, default_value = "stq")]
        agg: String,
        #[arg(long, num_args = 1.., conflicts_with = "worlds", required_unless_present = "worlds")]
        atoms: Vec<String>,
        #[arg(long, num_args = 1..)]
        worlds: Vec<String>,
        /// Allow explicit strategies whose first step skips some input.
        #[arg(long)]
        no_require_first_all: bool,
    },
    /// Run a postulate suite over a bounded space.
    Check {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value = "natural")]
        op: String,
        #[arg(long, default_value = "stq")]
        agg: String,
        #[arg(long, default_value_t = 3)]
        worlds: usize,
        /// Profile arity, or the largest contraction input set.
        #[arg(long, default_value_t = 2)]
        inputs: usize,
        /// Sample this many profiles instead of enumerating them all.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also print each property and its evaluated form.
        #[arg(long)]
        verbose: bool,
        /// Run beyond the default size caps.
        #[arg(long = "override")]
        override_caps: bool,
        #[arg(long)]
        no_require_first_all: bool,
    },
    /// Find the first counterexample to a property.
    Search {
        #[arg(long)]
        property: String,
        #[arg(long, default_value = "natural")]
        op: String,
        #[arg(long, default_value = "stq")]
        agg: String,
        #[arg(long, default_value_t = 3)]
        worlds: usize,
        #[arg(long, default_value_t = 2)]
        inputs: usize,
        #[arg(long = "override")]
        override_caps: bool,
    },
    /// List suite and property names.
    List,
}

/// Runs the command line `args` (program name first).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                2
            } else {
                let _ = write!(out, "{}", e.render());
                0
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

fn operator(name: &str) -> Result<SerialOperator> {
    SerialOperator::contraction(name).or_else(|_| name.parse()).with_context(|| format!("unknown operator `{name}`"))
}

fn aggregator(name: &str) -> Result<Aggregator> {
    Ok(name.parse()?)
}

fn config(op: &str, agg: &str, bounds: Bounds, require_first_all: bool) -> Result<SuiteConfig> {
    let mut config = SuiteConfig::new(bounds);
    let op = operator(op)?;
    if op.is_contraction() {
        config.contraction = op;
    } else {
        config.revision = op;
    }
    config.aggregator = aggregator(agg)?;
    config.require_first_all = require_first_all;
    Ok(config)
}

fn report_universe(suite: &str, worlds: usize) -> Result<Universe> {
    if suite == "kp6alt" {
        return Ok(Universe::from_atoms(&["p", "q"])?);
    }
    if worlds == 0 || worlds > 64 {
        bail!("--worlds must be between 1 and 64");
    }
    Ok(Universe::with_size(worlds))
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Aggregate { method, file } => {
            let f = load_profile(&file)?;
            let agg = aggregator(&method)?;
            writeln!(out, "{}", agg.aggregate(&f.profile)?.render(&f.universe))?;
            Ok(0)
        }
        Command::Closure { file } => {
            let f = load_profile(&file)?;
            let oracle = rational_closure_tpo(&f.profile)?;
            let queue = stq(&f.profile);
            writeln!(out, "oracle: {}", oracle.render(&f.universe))?;
            writeln!(out, "stq: {}", queue.render(&f.universe))?;
            let same = oracle == queue;
            writeln!(out, "{}", if same { "EQUAL" } else { "DIFFER" })?;
            Ok(if same { 0 } else { 1 })
        }
        Command::Render { file } => {
            write!(out, "{}", render_profile(&load_profile(&file)?))?;
            Ok(0)
        }
        Command::Contract { state, by, op, agg, atoms, worlds, no_require_first_all } => {
            let u = if atoms.is_empty() { Universe::from_world_names(&worlds)? } else { Universe::from_atoms(&atoms)? };
            let prior = BeliefState::new(parse_tpo(&u, &state, 1).context("in --state")?);
            let members = by
                .iter()
                .map(|f| {
                    let formula = parse_formula(f.trim()).with_context(|| format!("in --by `{f}`"))?;
                    Ok(u.models(&formula)?)
                })
                .collect::<Result<Vec<_>>>()?;
            let op = SerialOperator::contraction(&op)?;
            let agg = aggregator(&agg)?;
            let input = ContractionInput::new(members)?;
            let parallel = ParallelContraction::new(op, agg).with_require_first_all(!no_require_first_all);
            let after = BeliefState::new(parallel.contract_set(prior.tpo(), input.members())?);
            writeln!(out, "tpo: {}", after.tpo().render(&u))?;
            writeln!(out, "beliefs: {}", u.dnf(after.beliefs()))?;
            Ok(0)
        }
        Command::Check {
            suite,
            op,
            agg,
            worlds,
            inputs,
            samples,
            seed,
            verbose,
            override_caps,
            no_require_first_all,
        } => {
            let bounds = Bounds { worlds, inputs, samples, seed, override_caps };
            let config = config(&op, &agg, bounds, !no_require_first_all)?;
            let u = report_universe(&suite, worlds)?;
            let report = run_suite(&suite, &config)?;
            write!(out, "{}", report.render(&u, verbose))?;
            let passed = report.passed();
            writeln!(out, "{}", if passed { "all properties hold" } else { "some properties fail" })?;
            Ok(if passed { 0 } else { 1 })
        }
        Command::Search { property, op, agg, worlds, inputs, override_caps } => {
            let bounds = Bounds::exhaustive(worlds, inputs).with_override(override_caps);
            let config = config(&op, &agg, bounds, true)?;
            let u = report_universe("", worlds)?;
            match search_countermodel(&property, &config)? {
                None => {
                    writeln!(out, "{property}: no counterexample")?;
                    Ok(0)
                }
                Some(w) => {
                    writeln!(out, "{property}: counterexample: {}", w.render(&u))?;
                    Ok(1)
                }
            }
        }
        Command::List => {
            writeln!(out, "suites: {}", SUITES.join(" "))?;
            let names: Vec<&str> = PROPERTIES.iter().map(|(p, _)| *p).collect();
            writeln!(out, "properties: {}", names.join(" "))?;
            Ok(0)
        }
    }
}
