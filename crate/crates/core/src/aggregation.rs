//! TeamQueue aggregation of profiles.
//!
//! A TeamQueue aggregator builds its output block by block: at step `i` it
//! picks a nonempty set of input indices and places the union of those
//! inputs' minima over the not-yet-placed worlds into block `i`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::logic::{Proposition, World};
use crate::orders::{OrderError, Profile, Tpo};

/// Default caps for [`enumerate_strategies`].
pub const DEFAULT_STRATEGY_WORLD_CAP: usize = 4;
pub const DEFAULT_STRATEGY_ARITY_CAP: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AggregationError {
    #[error("strategy exhausted at step {step} before every world was placed")]
    StrategyExhausted { step: usize },
    #[error("strategy selected no input at step {step}")]
    EmptySelection { step: usize },
    #[error("strategy selected input {index} at step {step} but the profile has {len} inputs")]
    IndexOutOfRange { step: usize, index: usize, len: usize },
    #[error("strategy space too large: {worlds} worlds, {arity} inputs (caps {world_cap}, {arity_cap})")]
    TooLarge { worlds: usize, arity: usize, world_cap: usize, arity_cap: usize },
    #[error("invalid aggregator `{0}`: expected stq, minrank or explicit:{{1,2}}/{{1}}/...")]
    InvalidAggregator(String),
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// A set of profile indices (0-based; displayed 1-based).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IndexSet(u32);

impl IndexSet {
    pub fn from_bits(bits: u32) -> IndexSet {
        IndexSet(bits)
    }

    pub fn all(n: usize) -> IndexSet {
        assert!(n <= 32);
        IndexSet(if n == 32 { u32::MAX } else { (1u32 << n) - 1 })
    }

    pub fn single(i: usize) -> IndexSet {
        IndexSet(1 << i)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> IndexSet {
        IndexSet(indices.into_iter().fold(0, |acc, i| acc | 1 << i))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 32 && self.0 >> i & 1 == 1
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

impl FromStr for IndexSet {
    type Err = AggregationError;

    fn from_str(s: &str) -> Result<IndexSet, AggregationError> {
        let bad = || AggregationError::InvalidAggregator(s.to_string());
        let inner = s.trim().strip_prefix('{').and_then(|r| r.strip_suffix('}')).ok_or_else(bad)?;
        let mut set = IndexSet::default();
        for item in inner.split(',').filter(|i| !i.trim().is_empty()) {
            let i: usize = item.trim().parse().map_err(|_| bad())?;
            if !(1..=32).contains(&i) {
                return Err(bad());
            }
            set.insert(i - 1);
        }
        Ok(set)
    }
}

/// Chooses `a(i)`, the inputs whose minima fill output block `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SelectionStrategy {
    /// Every input at every step.
    All,
    /// The same inputs at every step.
    Constant(IndexSet),
    /// One entry per step; running out before every world is placed is an
    /// error, surplus entries are ignored.
    Explicit(Vec<IndexSet>),
}

impl SelectionStrategy {
    /// The selection for 0-based `step`, given the worlds already `placed`.
    pub fn select(&self, profile: &Profile, step: usize, _placed: Proposition) -> Result<IndexSet, AggregationError> {
        let n = profile.len();
        let chosen = match self {
            SelectionStrategy::All => IndexSet::all(n),
            SelectionStrategy::Constant(set) => *set,
            SelectionStrategy::Explicit(seq) => {
                *seq.get(step).ok_or(AggregationError::StrategyExhausted { step: step + 1 })?
            }
        };
        if chosen.is_empty() {
            return Err(AggregationError::EmptySelection { step: step + 1 });
        }
        if let Some(index) = chosen.iter().find(|&i| i >= n) {
            return Err(AggregationError::IndexOutOfRange { step: step + 1, index: index + 1, len: n });
        }
        Ok(chosen)
    }

    pub fn first_step(&self, n: usize) -> Option<IndexSet> {
        match self {
            SelectionStrategy::All => Some(IndexSet::all(n)),
            SelectionStrategy::Constant(set) => Some(*set),
            SelectionStrategy::Explicit(seq) => seq.first().copied(),
        }
    }
}

impl fmt::Display for SelectionStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SelectionStrategy::All => f.write_str("all"),
            SelectionStrategy::Constant(set) => write!(f, "constant:{set}"),
            SelectionStrategy::Explicit(seq) => {
                let parts: Vec<String> = seq.iter().map(|s| s.to_string()).collect();
                write!(f, "explicit:{}", parts.join("/"))
            }
        }
    }
}

/// Runs the TeamQueue construction.
pub fn tq_aggregate(profile: &Profile, strategy: &SelectionStrategy) -> Result<Tpo, AggregationError> {
    let size = profile.size();
    let mut remaining = Proposition::full(size);
    let mut blocks = Vec::new();
    while !remaining.is_empty() {
        let chosen = strategy.select(profile, blocks.len(), !remaining)?;
        let block = chosen
            .iter()
            .fold(Proposition::empty(size), |acc, j| acc | profile.get(j).min_set(remaining));
        assert!(!block.is_empty(), "minima of a nonempty remainder are nonempty");
        blocks.push(block);
        remaining = remaining - block;
    }
    Ok(Tpo::from_blocks(size, blocks)?)
}

/// Synchronous TeamQueue: every input contributes at every step.
pub fn stq(profile: &Profile) -> Tpo {
    tq_aggregate(profile, &SelectionStrategy::All).expect("STQ never exhausts its strategy")
}

/// Ranks each world by the lowest absolute rank any input gives it.
pub fn minrank(profile: &Profile) -> Tpo {
    let ranks: Vec<Vec<usize>> = profile.iter().map(Tpo::ranks).collect();
    Tpo::from_keys(profile.size(), |w| ranks.iter().map(|r| r[w.index()]).min().unwrap())
}

/// Recovers a strategy producing `candidate`, or `None` if no TeamQueue
/// strategy does.
///
/// For each candidate block `S_i` the extracted selection is every input
/// whose minimum over the worlds not in `S_1 … S_{i-1}` lies inside `S_i`.
/// The result is padded to one entry per world with the full index set.
pub fn tq_membership(profile: &Profile, candidate: &Tpo) -> Result<Option<SelectionStrategy>, AggregationError> {
    if candidate.size() != profile.size() {
        return Err(OrderError::UniverseMismatch { left: profile.size(), right: candidate.size() }.into());
    }
    let mut remaining = Proposition::full(profile.size());
    let mut seq = Vec::with_capacity(profile.size());
    for &block in candidate.blocks() {
        let chosen = IndexSet::from_indices(
            (0..profile.len()).filter(|&j| profile.get(j).min_set(remaining).is_subset(block)),
        );
        if chosen.is_empty() {
            return Ok(None);
        }
        seq.push(chosen);
        remaining = remaining - block;
    }
    seq.resize(profile.size().max(seq.len()), IndexSet::all(profile.len()));
    let strategy = SelectionStrategy::Explicit(seq);
    Ok((tq_aggregate(profile, &strategy)? == *candidate).then_some(strategy))
}

/// Every explicit strategy of length `|W|` over nonempty index subsets,
/// within the default caps.
pub fn enumerate_strategies(profile: &Profile) -> Result<Vec<SelectionStrategy>, AggregationError> {
    enumerate_strategies_with_caps(profile, DEFAULT_STRATEGY_WORLD_CAP, DEFAULT_STRATEGY_ARITY_CAP)
}

/// Sequences are ordered lexicographically by subset bitmask, first step
/// varying slowest.
pub fn enumerate_strategies_with_caps(
    profile: &Profile,
    world_cap: usize,
    arity_cap: usize,
) -> Result<Vec<SelectionStrategy>, AggregationError> {
    let (worlds, arity) = (profile.size(), profile.len());
    if worlds > world_cap || arity > arity_cap || arity > 16 {
        return Err(AggregationError::TooLarge { worlds, arity, world_cap, arity_cap });
    }
    let subsets = (1u32 << arity) - 1;
    let mut out = Vec::new();
    let mut counter = vec![1u32; worlds];
    loop {
        out.push(SelectionStrategy::Explicit(counter.iter().map(|&b| IndexSet(b)).collect()));
        let mut carried = true;
        for slot in counter.iter_mut().rev() {
            if *slot < subsets {
                *slot += 1;
                carried = false;
                break;
            }
            *slot = 1;
        }
        if carried {
            return Ok(out);
        }
    }
}

/// A binary relation over worlds with no ordering guarantees.
#[derive(Clone, PartialEq, Eq)]
pub struct RawRelation {
    size: usize,
    // rows[a] has bit b set iff a ≼ b
    rows: Vec<u64>,
}

/// Outcome of testing a [`RawRelation`] for being a TPO.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TpoVerdict {
    Tpo,
    /// Neither `a ≼ b` nor `b ≼ a`.
    NotTotal(World, World),
    /// `a ≼ b`, `b ≺ c` and yet `c ≼ a`.
    NotTransitive(World, World, World),
}

impl RawRelation {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, a: World, b: World) -> bool {
        self.rows[a.index()] >> b.index() & 1 == 1
    }

    pub fn lt(&self, a: World, b: World) -> bool {
        self.leq(a, b) && !self.leq(b, a)
    }

    /// Checks totality, then transitivity. Transitivity failures are searched
    /// by the strict link `b ≺ c` (by `b`, then `c`); among the closing
    /// worlds `a`, those in `prefer` come first, then by index.
    pub fn tpo_verdict(&self, prefer: Proposition) -> TpoVerdict {
        let worlds: Vec<World> = (0..self.size).map(World::new).collect();
        for &a in &worlds {
            for &b in &worlds {
                if !self.leq(a, b) && !self.leq(b, a) {
                    return TpoVerdict::NotTotal(a, b);
                }
            }
        }
        let mut closing: Vec<World> = worlds.iter().copied().filter(|&w| prefer.contains(w)).collect();
        closing.extend(worlds.iter().copied().filter(|&w| !prefer.contains(w)));
        for &b in &worlds {
            for &c in &worlds {
                if !self.lt(b, c) {
                    continue;
                }
                if let Some(&a) = closing.iter().find(|&&a| self.leq(a, b) && self.leq(c, a)) {
                    return TpoVerdict::NotTransitive(a, b, c);
                }
            }
        }
        TpoVerdict::Tpo
    }

    /// The equivalent TPO, if the relation is one.
    pub fn to_tpo(&self) -> Option<Tpo> {
        if self.tpo_verdict(Proposition::empty(self.size)) != TpoVerdict::Tpo {
            return None;
        }
        // In a TPO the number of worlds strictly below x fixes its block.
        Some(Tpo::from_keys(self.size, |x| {
            (0..self.size).map(World::new).filter(|&y| self.lt(y, x)).count()
        }))
    }
}

impl fmt::Debug for RawRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(|r| format!("{r:0w$b}", w = self.size)).collect();
        f.debug_struct("RawRelation").field("rows", &rows).finish()
    }
}

/// Result of [`naive_ci`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaiveCi {
    pub relation: RawRelation,
    pub verdict: TpoVerdict,
}

impl NaiveCi {
    pub fn is_tpo(&self) -> bool {
        self.verdict == TpoVerdict::Tpo
    }
}

/// The pairwise relation forced by requiring every output minimum to be the
/// union of the input minima: `a ≼ b` iff `a ∈ ⋃_i min(≼_i, {a, b})`.
///
/// Transitivity witnesses prefer closing worlds from `⋃_i min(≼_i, W)`.
pub fn naive_ci(profile: &Profile) -> NaiveCi {
    let size = profile.size();
    let rows = (0..size)
        .map(|a| {
            (0..size).fold(0u64, |row, b| {
                let pair = Proposition::from_worlds(size, [World::new(a), World::new(b)]);
                if profile.union_of_minima(pair).contains(World::new(a)) {
                    row | 1 << b
                } else {
                    row
                }
            })
        })
        .collect();
    let relation = RawRelation { size, rows };
    let verdict = relation.tpo_verdict(profile.union_of_minima(Proposition::full(size)));
    NaiveCi { relation, verdict }
}

/// The aggregators accepted by name: `stq`, `minrank`, `explicit:{1,3}/{2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Aggregator {
    Stq,
    MinRank,
    TeamQueue(SelectionStrategy),
}

impl Aggregator {
    pub fn aggregate(&self, profile: &Profile) -> Result<Tpo, AggregationError> {
        match self {
            Aggregator::Stq => Ok(stq(profile)),
            Aggregator::MinRank => Ok(minrank(profile)),
            Aggregator::TeamQueue(s) => tq_aggregate(profile, s),
        }
    }

    /// Whether step 1 is guaranteed to use every input.
    pub fn first_step_all(&self, n: usize) -> bool {
        match self {
            Aggregator::Stq | Aggregator::MinRank => true,
            Aggregator::TeamQueue(s) => s.first_step(n) == Some(IndexSet::all(n)),
        }
    }
}

impl fmt::Display for Aggregator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Aggregator::Stq => f.write_str("stq"),
            Aggregator::MinRank => f.write_str("minrank"),
            Aggregator::TeamQueue(s) => write!(f, "{s}"),
        }
    }
}

impl FromStr for Aggregator {
    type Err = AggregationError;

    fn from_str(s: &str) -> Result<Aggregator, AggregationError> {
        match s.trim() {
            "stq" => Ok(Aggregator::Stq),
            "minrank" => Ok(Aggregator::MinRank),
            other => {
                let bad = || AggregationError::InvalidAggregator(s.to_string());
                let body = other.strip_prefix("explicit:").ok_or_else(bad)?;
                let seq = body
                    .split('/')
                    .map(|part| part.parse::<IndexSet>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>, _>>()?;
                if seq.iter().any(|s| s.is_empty()) {
                    return Err(bad());
                }
                Ok(Aggregator::TeamQueue(SelectionStrategy::Explicit(seq)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{four_input_profile as example3, intransitive_pair_profile as example2, xyzw};
    use crate::orders::enumerate_tpos;

    #[test]
    fn stq_on_example3() {
        let (u, p) = example3();
        assert_eq!(stq(&p).render(&u), "[w z] < [x y]");
    }

    #[test]
    fn minrank_on_example3() {
        let (u, p) = example3();
        assert_eq!(minrank(&p).render(&u), "[w z] < [y] < [x]");
    }

    #[test]
    fn example2_aggregations() {
        let (u, p) = example2();
        assert_eq!(stq(&p).render(&u), "[x z] < [w y]");
        assert_eq!(minrank(&p).render(&u), "[x z] < [w y]");
    }

    #[test]
    fn singleton_and_constant_strategies_replay_an_input() {
        let (_, p) = example3();
        for j in 0..p.len() {
            let out = tq_aggregate(&p, &SelectionStrategy::Constant(IndexSet::single(j))).unwrap();
            assert_eq!(&out, p.get(j));
        }
        for t in enumerate_tpos(3).unwrap() {
            let single = Profile::new(vec![t.clone()]).unwrap();
            assert_eq!(stq(&single), t);
            assert_eq!(minrank(&single), t);
        }
    }

    #[test]
    fn strategy_errors() {
        let (_, p) = example3();
        let short = SelectionStrategy::Explicit(vec![IndexSet::single(0)]);
        assert_eq!(tq_aggregate(&p, &short), Err(AggregationError::StrategyExhausted { step: 2 }));
        let empty = SelectionStrategy::Explicit(vec![IndexSet::default()]);
        assert_eq!(tq_aggregate(&p, &empty), Err(AggregationError::EmptySelection { step: 1 }));
        let wide = SelectionStrategy::Constant(IndexSet::single(7));
        assert_eq!(
            tq_aggregate(&p, &wide),
            Err(AggregationError::IndexOutOfRange { step: 1, index: 8, len: 4 })
        );
    }

    #[test]
    fn membership_extraction() {
        let (u, p) = example3();
        let s = tq_membership(&p, &stq(&p)).unwrap().unwrap();
        let SelectionStrategy::Explicit(seq) = &s else { panic!() };
        assert_eq!(seq[0], IndexSet::all(4));
        assert_eq!(seq[1], IndexSet::all(4));
        assert!(tq_membership(&p, &minrank(&p)).unwrap().is_some());
        let [x, y, z, w] = xyzw(&u);
        let chain = Tpo::from_blocks(4, vec![x, y, z, w]).unwrap();
        assert_eq!(tq_membership(&p, &chain).unwrap(), None);
        assert!(tq_membership(&p, &Tpo::flat(3)).is_err());
    }

    #[test]
    fn naive_ci_example2_is_not_a_tpo() {
        let (u, p) = example2();
        let ci = naive_ci(&p);
        let n = |s| u.world(s).unwrap();
        assert_eq!(ci.verdict, TpoVerdict::NotTransitive(n("z"), n("x"), n("w")));
        assert!(ci.relation.leq(n("z"), n("x")));
        assert!(ci.relation.lt(n("x"), n("w")));
        assert!(ci.relation.leq(n("w"), n("z")));
        assert!(ci.relation.to_tpo().is_none());
    }

    #[test]
    fn naive_ci_is_exact_on_unanimous_profiles() {
        for t in enumerate_tpos(4).unwrap() {
            for n in 1..=2 {
                let p = Profile::new(vec![t.clone(); n]).unwrap();
                let ci = naive_ci(&p);
                assert!(ci.is_tpo());
                assert_eq!(ci.relation.to_tpo(), Some(t.clone()));
            }
        }
    }

    #[test]
    fn strategy_enumeration_counts() {
        let t3 = enumerate_tpos(3).unwrap();
        let p = Profile::new(vec![t3[3].clone(), t3[7].clone()]).unwrap();
        assert_eq!(enumerate_strategies(&p).unwrap().len(), 27);
        let t4 = enumerate_tpos(4).unwrap();
        let p = Profile::new(vec![t4[3].clone(), t4[70].clone()]).unwrap();
        assert_eq!(enumerate_strategies(&p).unwrap().len(), 81);
        let single = Profile::new(vec![t4[40].clone()]).unwrap();
        let mut outs: Vec<Tpo> = enumerate_strategies(&single)
            .unwrap()
            .iter()
            .map(|s| tq_aggregate(&single, s).unwrap())
            .collect();
        outs.dedup();
        assert_eq!(outs, vec![t4[40].clone()]);
        let big = Profile::new(vec![t4[0].clone(); 4]).unwrap();
        assert!(matches!(enumerate_strategies(&big), Err(AggregationError::TooLarge { .. })));
    }

    #[test]
    fn aggregator_names_round_trip() {
        for name in ["stq", "minrank", "explicit:{1,3}/{2}/{1,2,3}"] {
            assert_eq!(name.parse::<Aggregator>().unwrap().to_string(), name);
        }
        for bad in ["", "STQ", "explicit:", "explicit:{}", "explicit:{0}", "explicit:1,2"] {
            assert!(bad.parse::<Aggregator>().is_err(), "{bad}");
        }
    }
}
