//! Belief change on states identified with TPOs.
//!
//! Single-step belief sets are model sets: the beliefs of a state are the
//! worlds in the bottom block of its TPO. Serial operators map a TPO and a
//! proposition to a new TPO; parallel contraction aggregates the serial
//! contractions by each member of the input set.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::aggregation::{AggregationError, Aggregator};
use crate::logic::{Proposition, World};
use crate::orders::{OrderError, Profile, Tpo};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChangeError {
    #[error("operator `{op}` is not a {expected} operator")]
    WrongKind { op: SerialOperator, expected: &'static str },
    #[error("cannot revise by the empty proposition")]
    EmptyRevisionInput,
    #[error("a contraction input set needs at least one member")]
    EmptyInputSet,
    #[error("aggregator `{aggregator}` does not select every input at step 1")]
    FirstStepNotAll { aggregator: String },
    #[error("proposition over {found} worlds used with a state over {expected}")]
    UniverseMismatch { expected: usize, found: usize },
    #[error("unknown operator `{0}`")]
    UnknownOperator(String),
    #[error(transparent)]
    Aggregation(#[from] AggregationError),
    #[error(transparent)]
    Order(#[from] OrderError),
}

fn same_size(expected: usize, p: Proposition) -> Result<(), ChangeError> {
    if p.size() != expected {
        return Err(ChangeError::UniverseMismatch { expected, found: p.size() });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BeliefState {
    tpo: Tpo,
}

impl BeliefState {
    pub fn new(tpo: Tpo) -> BeliefState {
        BeliefState { tpo }
    }

    pub fn tpo(&self) -> &Tpo {
        &self.tpo
    }

    pub fn into_tpo(self) -> Tpo {
        self.tpo
    }

    pub fn size(&self) -> usize {
        self.tpo.size()
    }

    /// Model set of the belief set.
    pub fn beliefs(&self) -> Proposition {
        self.tpo.bottom()
    }
}

impl From<Tpo> for BeliefState {
    fn from(tpo: Tpo) -> BeliefState {
        BeliefState::new(tpo)
    }
}

/// A nonempty set of sentences to be removed together.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContractionInput {
    members: Vec<Proposition>,
}

impl ContractionInput {
    pub fn new(members: Vec<Proposition>) -> Result<ContractionInput, ChangeError> {
        let first = members.first().ok_or(ChangeError::EmptyInputSet)?;
        for m in &members {
            same_size(first.size(), *m)?;
        }
        Ok(ContractionInput { members })
    }

    pub fn members(&self) -> &[Proposition] {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.members[0].size()
    }

    /// Models of the conjunction of all members.
    pub fn conjunction(&self) -> Proposition {
        self.members.iter().fold(Proposition::full(self.size()), |acc, &m| acc & m)
    }

    /// The member-wise negations.
    pub fn negations(&self) -> Vec<Proposition> {
        self.members.iter().map(|&m| !m).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SerialOperator {
    NaturalContraction,
    ModerateContraction,
    NaturalRevision,
    LexicographicRevision,
}

impl SerialOperator {
    pub const ALL: [SerialOperator; 4] = [
        SerialOperator::NaturalContraction,
        SerialOperator::ModerateContraction,
        SerialOperator::NaturalRevision,
        SerialOperator::LexicographicRevision,
    ];

    pub fn is_contraction(self) -> bool {
        matches!(self, SerialOperator::NaturalContraction | SerialOperator::ModerateContraction)
    }

    pub fn name(self) -> &'static str {
        match self {
            SerialOperator::NaturalContraction => "natural-contraction",
            SerialOperator::ModerateContraction => "moderate-contraction",
            SerialOperator::NaturalRevision => "natural-revision",
            SerialOperator::LexicographicRevision => "lexicographic-revision",
        }
    }

    /// Parses a contraction operator, accepting the short names too.
    pub fn contraction(name: &str) -> Result<SerialOperator, ChangeError> {
        match name {
            "natural" => Ok(SerialOperator::NaturalContraction),
            "moderate" => Ok(SerialOperator::ModerateContraction),
            other => {
                let op: SerialOperator = other.parse()?;
                if op.is_contraction() {
                    Ok(op)
                } else {
                    Err(ChangeError::WrongKind { op, expected: "contraction" })
                }
            }
        }
    }
}

impl fmt::Display for SerialOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SerialOperator {
    type Err = ChangeError;

    fn from_str(s: &str) -> Result<SerialOperator, ChangeError> {
        SerialOperator::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| ChangeError::UnknownOperator(s.to_string()))
    }
}

/// Model set of the beliefs after contracting by `a`.
pub fn contract_beliefs(s: &BeliefState, a: Proposition) -> Result<Proposition, ChangeError> {
    same_size(s.size(), a)?;
    Ok(s.beliefs() | s.tpo.min_set(!a))
}

/// Model set of the beliefs after revising by `a`.
pub fn revise_beliefs(s: &BeliefState, a: Proposition) -> Result<Proposition, ChangeError> {
    same_size(s.size(), a)?;
    if a.is_empty() {
        return Err(ChangeError::EmptyRevisionInput);
    }
    Ok(s.tpo.min_set(a))
}

pub fn serial_contract(s: &BeliefState, a: Proposition, op: SerialOperator) -> Result<BeliefState, ChangeError> {
    same_size(s.size(), a)?;
    let t = &s.tpo;
    let negated = !a;
    if negated.is_empty() {
        return Ok(s.clone());
    }
    let merged = t.bottom() | t.min_set(negated);
    let out = match op {
        SerialOperator::NaturalContraction => {
            Tpo::from_keys(t.size(), |w| if merged.contains(w) { 0 } else { t.rank(w) })
        }
        SerialOperator::ModerateContraction => Tpo::from_keys(t.size(), |w| {
            if merged.contains(w) {
                (0, 0)
            } else if negated.contains(w) {
                (1, t.rank(w))
            } else {
                (2, t.rank(w))
            }
        }),
        _ => return Err(ChangeError::WrongKind { op, expected: "contraction" }),
    };
    Ok(BeliefState::new(out))
}

pub fn serial_revise(s: &BeliefState, a: Proposition, op: SerialOperator) -> Result<BeliefState, ChangeError> {
    same_size(s.size(), a)?;
    if a.is_empty() {
        return Err(ChangeError::EmptyRevisionInput);
    }
    let t = &s.tpo;
    let out = match op {
        SerialOperator::NaturalRevision => {
            let best = t.min_set(a);
            Tpo::from_keys(t.size(), |w| if best.contains(w) { 0 } else { t.rank(w) })
        }
        SerialOperator::LexicographicRevision => {
            Tpo::from_keys(t.size(), |w| (!a.contains(w), t.rank(w)))
        }
        _ => return Err(ChangeError::WrongKind { op, expected: "revision" }),
    };
    Ok(BeliefState::new(out))
}

/// A serial contraction on TPOs.
pub trait SerialContraction {
    fn contract(&self, t: &Tpo, a: Proposition) -> Result<Tpo, ChangeError>;
    fn label(&self) -> String;
}

impl SerialContraction for SerialOperator {
    fn contract(&self, t: &Tpo, a: Proposition) -> Result<Tpo, ChangeError> {
        Ok(serial_contract(&BeliefState::new(t.clone()), a, *self)?.into_tpo())
    }

    fn label(&self) -> String {
        self.name().to_string()
    }
}

/// A parallel contraction on TPOs, together with the serial operator it
/// reduces to on singleton inputs.
pub trait ParallelOperator {
    fn serial(&self, t: &Tpo, a: Proposition) -> Result<Tpo, ChangeError>;
    fn contract_set(&self, t: &Tpo, inputs: &[Proposition]) -> Result<Tpo, ChangeError>;
    fn label(&self) -> String;
}

/// Parallel contraction by aggregating serial contractions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParallelContraction<C> {
    pub serial: C,
    pub aggregator: Aggregator,
    /// Reject aggregators whose first step omits some input.
    pub require_first_all: bool,
}

impl<C: SerialContraction> ParallelContraction<C> {
    pub fn new(serial: C, aggregator: Aggregator) -> ParallelContraction<C> {
        ParallelContraction { serial, aggregator, require_first_all: true }
    }

    pub fn with_require_first_all(mut self, require: bool) -> ParallelContraction<C> {
        self.require_first_all = require;
        self
    }

    /// The profile of serial contractions the aggregator receives.
    pub fn profile(&self, t: &Tpo, inputs: &[Proposition]) -> Result<Profile, ChangeError> {
        if inputs.is_empty() {
            return Err(ChangeError::EmptyInputSet);
        }
        let entries = inputs.iter().map(|&a| self.serial.contract(t, a)).collect::<Result<Vec<_>, _>>()?;
        Ok(Profile::new(entries)?)
    }
}

impl<C: SerialContraction> ParallelOperator for ParallelContraction<C> {
    fn serial(&self, t: &Tpo, a: Proposition) -> Result<Tpo, ChangeError> {
        self.serial.contract(t, a)
    }

    fn contract_set(&self, t: &Tpo, inputs: &[Proposition]) -> Result<Tpo, ChangeError> {
        if let [single] = inputs {
            return self.serial.contract(t, *single);
        }
        if self.require_first_all && !self.aggregator.first_step_all(inputs.len()) {
            return Err(ChangeError::FirstStepNotAll { aggregator: self.aggregator.to_string() });
        }
        let profile = self.profile(t, inputs)?;
        Ok(self.aggregator.aggregate(&profile)?)
    }

    fn label(&self) -> String {
        format!("{}+{}", self.serial.label(), self.aggregator)
    }
}

/// Parallel contraction of `s` by every member of `input` at once.
pub fn parallel_contract(
    s: &BeliefState,
    input: &ContractionInput,
    op: SerialOperator,
    aggregator: &Aggregator,
) -> Result<BeliefState, ChangeError> {
    if !op.is_contraction() {
        return Err(ChangeError::WrongKind { op, expected: "contraction" });
    }
    same_size(s.size(), input.members()[0])?;
    let parallel = ParallelContraction::new(op, aggregator.clone());
    Ok(BeliefState::new(parallel.contract_set(s.tpo(), input.members())?))
}

/// Contraction by `a` as the aggregate of the prior order and the order
/// revised by `¬a`.
pub fn ihi_contract(
    s: &BeliefState,
    a: Proposition,
    rev: SerialOperator,
    aggregator: &Aggregator,
) -> Result<BeliefState, ChangeError> {
    same_size(s.size(), a)?;
    if rev.is_contraction() {
        return Err(ChangeError::WrongKind { op: rev, expected: "revision" });
    }
    if (!a).is_empty() {
        return Ok(s.clone());
    }
    let revised = serial_revise(s, !a, rev)?;
    let profile = Profile::new(vec![s.tpo.clone(), revised.into_tpo()])?;
    Ok(BeliefState::new(aggregator.aggregate(&profile)?))
}

/// Whether `a` survives revision by every proposition consistent with it.
pub fn is_strongly_believed(s: &BeliefState, a: Proposition) -> Result<bool, ChangeError> {
    same_size(s.size(), a)?;
    if a.is_empty() || !s.beliefs().is_subset(a) {
        return Ok(false);
    }
    Ok(Proposition::all(s.size())
        .filter(|b| b.intersects(a))
        .all(|b| s.tpo.min_set(b).is_subset(a)))
}

/// Every `a`-world is strictly more plausible than every other world.
pub fn strongly_believed_by_rank(s: &BeliefState, a: Proposition) -> Result<bool, ChangeError> {
    same_size(s.size(), a)?;
    let rank = |w: World| s.tpo.rank(w);
    let Some(worst_inside) = a.worlds().map(rank).max() else {
        return Ok(false);
    };
    Ok((!a).worlds().map(rank).all(|r| worst_inside < r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{abstract_universe, intransitive_pair_profile, tpo, xyzw};
    use crate::logic::Universe;
    use crate::orders::enumerate_tpos;

    fn split(u: &Universe) -> BeliefState {
        BeliefState::new(tpo(u, &[&["x"], &["y", "z", "w"]]))
    }

    #[test]
    fn single_step_beliefs() {
        let u = abstract_universe();
        let [x, y, z, w] = xyzw(&u);
        let s = split(&u);
        let (a, b) = (x | y, x | z);
        let after_b = contract_beliefs(&s, b).unwrap();
        assert_eq!(after_b, x | y | w);
        assert!(!after_b.is_subset(a));
        assert!(after_b.is_subset(!b | a));
        assert_eq!(contract_beliefs(&s, u.full()).unwrap(), x);
        assert_eq!(contract_beliefs(&s, a).unwrap(), x | z | w);
        assert!(contract_beliefs(&s, Proposition::full(3)).is_err());
    }

    #[test]
    fn revision_beliefs() {
        let (u, p) = intransitive_pair_profile();
        let [x, _, z, w] = xyzw(&u);
        let second = BeliefState::new(p.get(1).clone());
        assert_eq!(revise_beliefs(&second, x | w).unwrap(), x);
        assert_eq!(revise_beliefs(&second, u.full()).unwrap(), second.beliefs());
        assert_eq!(revise_beliefs(&split(&u), z | w).unwrap(), z | w);
        assert_eq!(revise_beliefs(&second, u.empty()), Err(ChangeError::EmptyRevisionInput));
    }

    #[test]
    fn serial_contraction_recipes() {
        let u = abstract_universe();
        let [x, y, ..] = xyzw(&u);
        let natural = SerialOperator::NaturalContraction;
        let moderate = SerialOperator::ModerateContraction;
        let out = serial_contract(&split(&u), x | y, natural).unwrap();
        assert_eq!(out.tpo().render(&u), "[w x z] < [y]");
        let chain = BeliefState::new(tpo(&u, &[&["x"], &["y"], &["z"], &["w"]]));
        assert_eq!(serial_contract(&chain, x | y, natural).unwrap().tpo().render(&u), "[x z] < [y] < [w]");
        assert_eq!(serial_contract(&chain, x | y, moderate).unwrap().tpo().render(&u), "[x z] < [w] < [y]");
        assert_eq!(serial_contract(&chain, !x, natural).unwrap(), chain);
        assert_eq!(serial_contract(&chain, u.full(), moderate).unwrap(), chain);
        assert!(matches!(
            serial_contract(&chain, x, SerialOperator::NaturalRevision),
            Err(ChangeError::WrongKind { .. })
        ));
    }

    #[test]
    fn serial_revision_recipes() {
        let u = abstract_universe();
        let [_, _, z, w] = xyzw(&u);
        let s = split(&u);
        for op in [SerialOperator::NaturalRevision, SerialOperator::LexicographicRevision] {
            assert_eq!(serial_revise(&s, z | w, op).unwrap().tpo().render(&u), "[w z] < [x] < [y]");
            assert_eq!(serial_revise(&s, u.full(), op).unwrap(), s);
            assert_eq!(serial_revise(&s, u.empty(), op), Err(ChangeError::EmptyRevisionInput));
        }
        assert!(serial_revise(&s, z, SerialOperator::ModerateContraction).is_err());
    }

    #[test]
    fn parallel_contraction_of_two_sentences() {
        let u = abstract_universe();
        let [x, y, z, _] = xyzw(&u);
        let s = split(&u);
        let (a, b) = (x | y, x | z);
        let both = ContractionInput::new(vec![a, b]).unwrap();
        let out = parallel_contract(&s, &both, SerialOperator::NaturalContraction, &Aggregator::Stq).unwrap();
        assert_eq!(out.tpo(), &Tpo::flat(4));
        assert!(!out.beliefs().is_subset(!b | a));
        let union = contract_beliefs(&s, a).unwrap() | contract_beliefs(&s, b).unwrap();
        assert_eq!(out.beliefs(), union);
        let single = ContractionInput::new(vec![a]).unwrap();
        for agg in [Aggregator::Stq, Aggregator::MinRank] {
            let op = SerialOperator::ModerateContraction;
            assert_eq!(parallel_contract(&s, &single, op, &agg).unwrap(), serial_contract(&s, a, op).unwrap());
        }
    }

    #[test]
    fn parallel_contraction_errors() {
        let u = abstract_universe();
        let [x, y, ..] = xyzw(&u);
        assert_eq!(ContractionInput::new(vec![]), Err(ChangeError::EmptyInputSet));
        assert!(ContractionInput::new(vec![x, Proposition::full(3)]).is_err());
        let lax: Aggregator = "explicit:{1}/{2}/{1,2}/{1,2}".parse().unwrap();
        let op = ParallelContraction::new(SerialOperator::NaturalContraction, lax);
        let t = split(&u).into_tpo();
        assert!(matches!(op.contract_set(&t, &[x, y]), Err(ChangeError::FirstStepNotAll { .. })));
        assert!(op.with_require_first_all(false).contract_set(&t, &[x, y]).is_ok());
    }

    #[test]
    fn iterated_harper_contraction() {
        let u = abstract_universe();
        let [x, y, ..] = xyzw(&u);
        let s = split(&u);
        let out = ihi_contract(&s, x | y, SerialOperator::NaturalRevision, &Aggregator::Stq).unwrap();
        assert_eq!(out.tpo().render(&u), "[w x z] < [y]");
        assert_eq!(out.beliefs(), contract_beliefs(&s, x | y).unwrap());
        assert_eq!(ihi_contract(&s, u.full(), SerialOperator::NaturalRevision, &Aggregator::Stq).unwrap(), s);
    }

    #[test]
    fn strong_belief_examples() {
        let u = abstract_universe();
        let [x, y, ..] = xyzw(&u);
        let s = split(&u);
        assert!(is_strongly_believed(&s, x).unwrap());
        assert!(is_strongly_believed(&s, u.full()).unwrap());
        assert!(!is_strongly_believed(&s, x | y).unwrap());
        assert!(!is_strongly_believed(&s, u.empty()).unwrap());
    }

    #[test]
    fn strong_belief_shortcut_agrees() {
        for n in 1..=4 {
            for t in enumerate_tpos(n).unwrap() {
                let s = BeliefState::new(t);
                for a in Proposition::all(n) {
                    assert_eq!(is_strongly_believed(&s, a).unwrap(), strongly_believed_by_rank(&s, a).unwrap());
                }
            }
        }
    }

    #[test]
    fn contraction_bottom_is_the_minima_identity() {
        for t in enumerate_tpos(4).unwrap() {
            let s = BeliefState::new(t);
            for a in Proposition::all(4) {
                for op in [SerialOperator::NaturalContraction, SerialOperator::ModerateContraction] {
                    let out = serial_contract(&s, a, op).unwrap();
                    assert_eq!(out.beliefs(), contract_beliefs(&s, a).unwrap());
                }
            }
        }
    }

    #[test]
    fn operator_names() {
        for op in SerialOperator::ALL {
            assert_eq!(op.name().parse::<SerialOperator>().unwrap(), op);
        }
        assert_eq!(SerialOperator::contraction("natural").unwrap(), SerialOperator::NaturalContraction);
        assert!(SerialOperator::contraction("natural-revision").is_err());
        assert!(SerialOperator::contraction("bogus").is_err());
    }
}
