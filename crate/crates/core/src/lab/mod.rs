//! Exhaustive postulate checking over small universes.
//!
//! Every suite walks a fixed enumeration order and keeps the first failing
//! instance, so witnesses are stable across runs.

mod aggregators;
mod contraction;
mod report;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use aggregators::{
    check_factoring, check_parity, check_pareto, equivalences_suite, factoring_suite, flattest_suite,
    idempotence_suite, naive_ci_suite, parity_suite, rat_suite, strong_belief_suite,
};
pub use contraction::{
    agm_suite, cc_suite, ccn_suite, char_suite, enumerate_input_sets, fh_suite, ihi_suite, kp6alt_suite, kp_suite,
};
pub use report::{CheckReport, SuiteReport, Tally, Value, Witness};

use crate::aggregation::{AggregationError, Aggregator};
use crate::change::{ChangeError, ParallelContraction, SerialOperator};
use crate::conditionals::ConditionalError;
use crate::orders::{enumerate_profiles, OrderError, Profile, Tpo};

pub const WORLD_CAP: usize = 4;
pub const PROFILE_ARITY_CAP: usize = 3;
pub const INPUT_SET_CAP: usize = 2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabError {
    #[error("{property}: the two formulations disagree on profile {profile} with candidate {candidate}")]
    FormulationMismatch { property: &'static str, profile: String, candidate: String },
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("unknown property `{0}`")]
    UnknownProperty(String),
    #[error("{what} = {value} exceeds the cap of {cap}; pass the override to run anyway")]
    TooLarge { what: &'static str, value: usize, cap: usize },
    #[error("{what} must be at least 1")]
    TooSmall { what: &'static str },
    #[error("order over {found} worlds checked against a profile over {expected}")]
    UniverseMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Aggregation(#[from] AggregationError),
    #[error(transparent)]
    Change(#[from] ChangeError),
    #[error(transparent)]
    Conditional(#[from] ConditionalError),
}

/// The space a suite sweeps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub worlds: usize,
    /// Profile arity for aggregator suites; largest input set for
    /// contraction suites.
    pub inputs: usize,
    /// Sample this many profiles instead of enumerating all of them.
    pub samples: Option<usize>,
    pub seed: u64,
    pub override_caps: bool,
}

impl Bounds {
    pub fn exhaustive(worlds: usize, inputs: usize) -> Bounds {
        Bounds { worlds, inputs, samples: None, seed: 0, override_caps: false }
    }

    pub fn sampled(worlds: usize, inputs: usize, samples: usize, seed: u64) -> Bounds {
        Bounds { worlds, inputs, samples: Some(samples), seed, override_caps: false }
    }

    pub fn with_override(mut self, override_caps: bool) -> Bounds {
        self.override_caps = override_caps;
        self
    }

    fn check(&self, input_cap: usize) -> Result<(), LabError> {
        if self.worlds == 0 {
            return Err(LabError::TooSmall { what: "worlds" });
        }
        if self.inputs == 0 {
            return Err(LabError::TooSmall { what: "inputs" });
        }
        if self.override_caps {
            return Ok(());
        }
        if self.worlds > WORLD_CAP {
            return Err(LabError::TooLarge { what: "worlds", value: self.worlds, cap: WORLD_CAP });
        }
        if self.inputs > input_cap {
            return Err(LabError::TooLarge { what: "inputs", value: self.inputs, cap: input_cap });
        }
        Ok(())
    }

    pub fn describe(&self) -> String {
        match self.samples {
            None => format!("|W|={}, {}-profiles, exhaustive", self.worlds, self.inputs),
            Some(k) => format!("|W|={}, {}-profiles, {k} sampled (seed {})", self.worlds, self.inputs, self.seed),
        }
    }

    pub fn describe_states(&self) -> String {
        format!("|W|={}, all states, all sentences", self.worlds)
    }

    pub fn describe_sets(&self) -> String {
        format!("|W|={}, all states, input sets of size <= {}", self.worlds, self.inputs)
    }
}

/// The profiles a bounded aggregator suite visits: all of them in
/// enumeration order, or a seeded uniform sample.
pub fn profiles_in(tpos: &[Tpo], bounds: &Bounds) -> Vec<Profile> {
    match bounds.samples {
        None => enumerate_profiles(tpos, bounds.inputs).collect(),
        Some(k) => {
            let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
            (0..k)
                .map(|_| {
                    let entries = (0..bounds.inputs).map(|_| tpos[rng.gen_range(0..tpos.len())].clone()).collect();
                    Profile::new(entries).expect("nonempty")
                })
                .collect()
        }
    }
}

/// Everything a suite may need besides its bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub bounds: Bounds,
    pub contraction: SerialOperator,
    pub revision: SerialOperator,
    pub aggregator: Aggregator,
    pub require_first_all: bool,
}

impl SuiteConfig {
    pub fn new(bounds: Bounds) -> SuiteConfig {
        SuiteConfig {
            bounds,
            contraction: SerialOperator::NaturalContraction,
            revision: SerialOperator::NaturalRevision,
            aggregator: Aggregator::Stq,
            require_first_all: true,
        }
    }

    pub fn parallel(&self) -> ParallelContraction<SerialOperator> {
        ParallelContraction::new(self.contraction, self.aggregator.clone())
            .with_require_first_all(self.require_first_all)
    }
}

pub const SUITES: [&str; 16] = [
    "agm",
    "cc",
    "ccn",
    "kp",
    "fh",
    "char",
    "kp6alt",
    "ihi",
    "factoring",
    "parity",
    "flattest",
    "equivalences",
    "rat",
    "idempotence",
    "strong-belief",
    "naive-ci",
];

pub fn run_suite(name: &str, config: &SuiteConfig) -> Result<SuiteReport, LabError> {
    let b = &config.bounds;
    let contraction_suite = matches!(name, "agm" | "cc" | "ccn" | "kp" | "fh" | "char" | "ihi");
    if name != "kp6alt" {
        b.check(if contraction_suite { INPUT_SET_CAP } else { PROFILE_ARITY_CAP })?;
    }
    if contraction_suite && !config.contraction.is_contraction() && name != "ihi" {
        return Err(ChangeError::WrongKind { op: config.contraction, expected: "contraction" }.into());
    }
    match name {
        "agm" => agm_suite(&config.contraction, b),
        "cc" => cc_suite(&config.contraction, b),
        "ccn" => ccn_suite(&config.parallel(), b),
        "kp" => kp_suite(&config.parallel(), b),
        "fh" => fh_suite(&config.parallel(), b),
        "char" => char_suite(&config.parallel(), b),
        "kp6alt" => kp6alt_suite(&config.parallel()),
        "ihi" => ihi_suite(config.revision, &config.aggregator, b),
        "factoring" => factoring_suite(b),
        "parity" => parity_suite(b),
        "flattest" => flattest_suite(b),
        "equivalences" => equivalences_suite(b),
        "rat" => rat_suite(b),
        "idempotence" => idempotence_suite(b),
        "strong-belief" => strong_belief_suite(b),
        "naive-ci" => naive_ci_suite(b),
        other => Err(LabError::UnknownSuite(other.to_string())),
    }
}

/// Which suite reports each searchable property.
pub const PROPERTIES: &[(&str, &str)] = &[
    ("naive-ci-is-tpo", "naive-ci"),
    ("k1", "agm"),
    ("k2", "agm"),
    ("k3", "agm"),
    ("k4", "agm"),
    ("k5", "agm"),
    ("k6", "agm"),
    ("k7", "agm"),
    ("k8", "agm"),
    ("min-identity", "agm"),
    ("cc1", "cc"),
    ("cc2", "cc"),
    ("cc3", "cc"),
    ("cc4", "cc"),
    ("cc1-syn", "cc"),
    ("cc2-syn", "cc"),
    ("cc3-syn", "cc"),
    ("cc4-syn", "cc"),
    ("ccn1", "ccn"),
    ("ccn2", "ccn"),
    ("ccn3", "ccn"),
    ("ccn4", "ccn"),
    ("kp1", "kp"),
    ("kp2", "kp"),
    ("kp3", "kp"),
    ("kp4", "kp"),
    ("kp5", "kp"),
    ("kp6", "kp"),
    ("kp7", "kp"),
    ("kp8", "kp"),
    ("fh-a", "fh"),
    ("fh-b", "fh"),
    ("monotonicity", "fh"),
    ("f-b", "char"),
    ("ub-b", "char"),
    ("lb-b", "char"),
    ("par-b", "char"),
    ("int-b", "char"),
    ("ratcon", "char"),
    ("ihi-harper", "ihi"),
    ("factoring-sound", "factoring"),
    ("factoring-complete", "factoring"),
    ("parity-unique", "parity"),
    ("flattest", "flattest"),
    ("flattest-minrank", "flattest"),
    ("rat", "rat"),
    ("strong-belief", "strong-belief"),
];

/// The first instance in enumeration order at which `property` fails, or
/// `None` when it holds throughout the bounded space.
pub fn search_countermodel(property: &str, config: &SuiteConfig) -> Result<Option<Witness>, LabError> {
    let (_, suite) = PROPERTIES
        .iter()
        .find(|(p, _)| *p == property)
        .ok_or_else(|| LabError::UnknownProperty(property.to_string()))?;
    let report = run_suite(suite, config)?;
    let check = report.get(property).expect("suite reports each of its properties");
    Ok(check.witness.clone())
}
