//! Aggregator properties on a single (profile, candidate) pair, and the
//! suites that sweep them over enumerated profiles.

use std::collections::BTreeSet;

use crate::aggregation::{enumerate_strategies, minrank, naive_ci, stq, tq_aggregate, tq_membership, IndexSet};
use crate::change::{is_strongly_believed, strongly_believed_by_rank, BeliefState};
use crate::conditionals::rational_closure_tpo;
use crate::logic::{Proposition, World};
use crate::orders::{enumerate_tpos, Profile, Tpo};

use super::report::{CheckReport, SuiteReport, Tally, Value, Witness};
use super::{profiles_in, Bounds, LabError};

fn worlds(size: usize) -> impl Iterator<Item = World> + Clone {
    (0..size).map(World::new)
}

/// Nonempty sets, largest bitmask (the full universe) first.
fn nonempty_sets(size: usize) -> impl Iterator<Item = Proposition> {
    let all: Vec<Proposition> = Proposition::all(size).filter(|s| !s.is_empty()).collect();
    all.into_iter().rev()
}

fn check_sizes(p: &Profile, out: &Tpo) -> Result<(), LabError> {
    if p.size() != out.size() {
        return Err(LabError::UniverseMismatch { expected: p.size(), found: out.size() });
    }
    Ok(())
}

/// Calls `f` with every tuple `(x_1, …, x_n)` where each `x_i` ranges over
/// `choices[i]`, stopping early when `f` returns `false`.
fn for_each_tuple(choices: &[Vec<World>], mut f: impl FnMut(&[World]) -> bool) {
    if choices.iter().any(|c| c.is_empty()) {
        return;
    }
    let mut idx = vec![0usize; choices.len()];
    let mut tuple: Vec<World> = choices.iter().map(|c| c[0]).collect();
    loop {
        if !f(&tuple) {
            return;
        }
        let mut k = choices.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                tuple[k] = choices[k][idx[k]];
                break;
            }
            idx[k] = 0;
            tuple[k] = choices[k][0];
        }
    }
}

/// First world tuple and `y` with `x_i ≼_i y` (or `≺_i` when `strict`)
/// for which `ok` fails.
fn first_tuple_failure(
    p: &Profile,
    strict: bool,
    mut ok: impl FnMut(&[World], World) -> bool,
) -> Option<Witness> {
    for y in worlds(p.size()) {
        let choices: Vec<Vec<World>> = p
            .iter()
            .map(|t| worlds(p.size()).filter(|&x| if strict { t.lt(x, y) } else { t.leq(x, y) }).collect())
            .collect();
        let mut found = None;
        for_each_tuple(&choices, |xs| {
            if ok(xs, y) {
                true
            } else {
                found = Some(Witness::new().with("xs", Value::Worlds(xs.to_vec())).with("y", Value::World(y)));
                false
            }
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// `X = {j | min_j(S) ⊆ min_out(S)}` is the largest candidate, so the
/// property holds at `S` iff its union reaches `min_out(S)`.
fn factoring_min_failure(p: &Profile, out: &Tpo) -> Option<Witness> {
    nonempty_sets(p.size())
        .find(|&s| {
            let target = out.min_set(s);
            let covered = p
                .iter()
                .map(|t| t.min_set(s))
                .filter(|m| m.is_subset(target))
                .fold(Proposition::empty(p.size()), |a, m| a | m);
            covered != target
        })
        .map(|s| Witness::new().with("S", Value::Set(s)))
}

fn factoring_leq_failure(p: &Profile, out: &Tpo) -> Option<Witness> {
    first_tuple_failure(p, false, |xs, y| {
        xs.iter().enumerate().any(|(j, &x)| (!p.get(j).lt(x, y) || out.lt(x, y)) && out.leq(x, y))
    })
}

fn parity_leq_failure(p: &Profile, out: &Tpo) -> Option<Witness> {
    for x in worlds(p.size()) {
        for y in worlds(p.size()) {
            if !out.lt(x, y) {
                continue;
            }
            let class = out.blocks()[out.rank(x) - 1];
            if let Some(i) = (0..p.len()).find(|&i| !class.worlds().any(|z| p.get(i).lt(z, y))) {
                return Some(
                    Witness::new()
                        .with("x", Value::World(x))
                        .with("y", Value::World(y))
                        .with("input", Value::Index(i)),
                );
            }
        }
    }
    None
}

fn parity_min_failure(p: &Profile, out: &Tpo) -> Option<Witness> {
    nonempty_sets(p.size())
        .find(|&s| {
            let upper = (!s).worlds().all(|x| s.worlds().all(|y| out.lt(x, y)));
            upper && !p.union_of_minima(s).is_subset(out.min_set(s))
        })
        .map(|s| Witness::new().with("S", Value::Set(s)))
}

fn spu_plus_failure(p: &Profile, out: &Tpo) -> Option<Witness> {
    first_tuple_failure(p, true, |xs, y| xs.iter().any(|&x| out.lt(x, y)))
}

fn wpu_plus_failure(p: &Profile, out: &Tpo) -> Option<Witness> {
    first_tuple_failure(p, false, |xs, y| xs.iter().any(|&x| out.leq(x, y)))
}

fn ub_failure(p: &Profile, out: &Tpo) -> Option<Witness> {
    nonempty_sets(p.size())
        .find(|&s| !out.min_set(s).is_subset(p.union_of_minima(s)))
        .map(|s| Witness::new().with("S", Value::Set(s)))
}

fn lb_failure(p: &Profile, out: &Tpo) -> Option<Witness> {
    nonempty_sets(p.size())
        .find(|&s| !p.iter().any(|t| t.min_set(s).is_subset(out.min_set(s))))
        .map(|s| Witness::new().with("S", Value::Set(s)))
}

fn pair_failure(size: usize, mut bad: impl FnMut(World, World) -> bool) -> Option<Witness> {
    for x in worlds(size) {
        for y in worlds(size) {
            if bad(x, y) {
                return Some(Witness::new().with("x", Value::World(x)).with("y", Value::World(y)));
            }
        }
    }
    None
}

fn spu_failure(p: &Profile, out: &Tpo) -> Option<Witness> {
    pair_failure(p.size(), |x, y| p.iter().all(|t| t.lt(x, y)) && !out.lt(x, y))
}

fn wpu_failure(p: &Profile, out: &Tpo) -> Option<Witness> {
    pair_failure(p.size(), |x, y| p.iter().all(|t| t.leq(x, y)) && !out.leq(x, y))
}

/// `≼_out ⊆ ⋃_i ≼_i`
fn upper_bound_failure(p: &Profile, out: &Tpo) -> Option<Witness> {
    pair_failure(p.size(), |x, y| out.leq(x, y) && !p.iter().any(|t| t.leq(x, y)))
}

/// `⋂_i ≼_i ⊆ ≼_out`
fn lower_bound_failure(p: &Profile, out: &Tpo) -> Option<Witness> {
    pair_failure(p.size(), |x, y| p.iter().all(|t| t.leq(x, y)) && !out.leq(x, y))
}

fn single(
    property: &'static str,
    statement: &'static str,
    translation: &'static str,
    cases: u64,
    witness: Option<Witness>,
) -> CheckReport {
    CheckReport {
        property: property.to_string(),
        statement: statement.to_string(),
        translation: translation.to_string(),
        passed: witness.is_none(),
        witness,
        cases,
    }
}

fn agree(property: &'static str, p: &Profile, out: &Tpo, a: &Option<Witness>, b: &Option<Witness>) -> Result<(), LabError> {
    if a.is_some() != b.is_some() {
        return Err(LabError::FormulationMismatch {
            property,
            profile: format!("{:?}", p.entries()),
            candidate: format!("{out:?}"),
        });
    }
    Ok(())
}

const FACTORING: &str = "for all S there is X with min(out, S) = union of min(i, S) over i in X";
const FACTORING_EVAL: &str =
    "per S, X = {j | min(j, S) within min(out, S)}; cross-checked against the tuple form over x_i <=_i y";

/// Factoring in both its minimal-set and its tuple form.
pub fn check_factoring(p: &Profile, out: &Tpo) -> Result<CheckReport, LabError> {
    check_sizes(p, out)?;
    let by_min = factoring_min_failure(p, out);
    let by_leq = factoring_leq_failure(p, out);
    agree("factoring", p, out, &by_min, &by_leq)?;
    Ok(single("factoring", FACTORING, FACTORING_EVAL, 1 << p.size(), by_min))
}

/// Parity in both its pairwise and its minimal-set form.
pub fn check_parity(p: &Profile, out: &Tpo) -> Result<CheckReport, LabError> {
    check_sizes(p, out)?;
    let by_leq = parity_leq_failure(p, out);
    let by_min = parity_min_failure(p, out);
    agree("parity", p, out, &by_leq, &by_min)?;
    Ok(single(
        "parity",
        "if x <out y then every input i has some z ~out x with z <i y",
        "pairwise form, cross-checked against: if out puts all of W\\S strictly below S, every input minimum of S lies in min(out, S)",
        (p.size() * p.size()) as u64,
        by_leq,
    ))
}

/// The Pareto family: the tuple forms, their minimal-set equivalents, the
/// classic pairwise forms and the relational bounds.
pub fn check_pareto(p: &Profile, out: &Tpo) -> Result<Vec<CheckReport>, LabError> {
    check_sizes(p, out)?;
    let spu_plus = spu_plus_failure(p, out);
    let ub = ub_failure(p, out);
    agree("spu+/ub", p, out, &spu_plus, &ub)?;
    let wpu_plus = wpu_plus_failure(p, out);
    let lb = lb_failure(p, out);
    agree("wpu+/lb", p, out, &wpu_plus, &lb)?;
    let spu = spu_failure(p, out);
    let upper = upper_bound_failure(p, out);
    agree("spu/upper-bound", p, out, &spu, &upper)?;
    let wpu = wpu_failure(p, out);
    let lower = lower_bound_failure(p, out);
    agree("wpu/lower-bound", p, out, &wpu, &lower)?;
    let n = p.size() as u64;
    Ok(vec![
        single("spu+", "if x_i <i y for all i then x_j <out y for some j", "tuple enumeration", n, spu_plus),
        single("wpu+", "if x_i <=i y for all i then x_j <=out y for some j", "tuple enumeration", n, wpu_plus),
        single("ub", "min(out, S) within the union of min(i, S)", "all S", 1 << n, ub),
        single("lb", "some min(i, S) within min(out, S)", "all S", 1 << n, lb),
        single("spu", "if x <i y for all i then x <out y", "all pairs", n * n, spu),
        single("wpu", "if x <=i y for all i then x <=out y", "all pairs", n * n, wpu),
        single("upper-bound", "<=out within the union of the <=i", "all pairs", n * n, upper),
        single("lower-bound", "intersection of the <=i within <=out", "all pairs", n * n, lower),
    ])
}

fn profile_witness(p: &Profile) -> Witness {
    Witness::new().with("profile", Value::Profile(p.clone()))
}

fn strategy_outputs(p: &Profile, bounds: &Bounds) -> Result<Vec<(IndexSetSeq, Tpo)>, LabError> {
    let strategies = if bounds.override_caps {
        crate::aggregation::enumerate_strategies_with_caps(p, usize::MAX, usize::MAX)?
    } else {
        enumerate_strategies(p)?
    };
    strategies
        .into_iter()
        .map(|s| {
            let out = tq_aggregate(p, &s)?;
            let crate::aggregation::SelectionStrategy::Explicit(seq) = s else { unreachable!() };
            Ok((seq, out))
        })
        .collect()
}

type IndexSetSeq = Vec<IndexSet>;

fn strategy_witness(p: &Profile, seq: &[IndexSet], out: &Tpo) -> Witness {
    profile_witness(p).with("strategy", Value::Strategy(seq.to_vec())).with("output", Value::Tpo(out.clone()))
}

fn describe(bounds: &Bounds) -> String {
    bounds.describe()
}

/// Strategy outputs satisfy factoring; a candidate satisfies factoring iff
/// some strategy produces it.
pub fn factoring_suite(bounds: &Bounds) -> Result<SuiteReport, LabError> {
    let tpos = enumerate_tpos(bounds.worlds)?;
    let mut sound = Tally::new(
        "factoring-sound",
        "every TeamQueue output satisfies factoring",
        "every explicit strategy output passes check_factoring",
    );
    let mut complete = Tally::new(
        "factoring-complete",
        "a TPO satisfying factoring is some TeamQueue output",
        "for every candidate TPO, check_factoring passes iff strategy extraction succeeds",
    );
    for p in profiles_in(&tpos, bounds) {
        for (seq, out) in strategy_outputs(&p, bounds)? {
            let passed = check_factoring(&p, &out)?.passed;
            sound.record(passed, || strategy_witness(&p, &seq, &out));
        }
        for t in &tpos {
            let passed = check_factoring(&p, t)?.passed;
            let member = tq_membership(&p, t)?.is_some();
            complete.record(passed == member, || profile_witness(&p).with("candidate", Value::Tpo(t.clone())));
        }
    }
    Ok(SuiteReport { suite: "factoring".into(), bounds: describe(bounds), reports: vec![sound.finish(), complete.finish()] })
}

/// Among TeamQueue outputs only STQ's satisfies parity.
pub fn parity_suite(bounds: &Bounds) -> Result<SuiteReport, LabError> {
    let tpos = enumerate_tpos(bounds.worlds)?;
    let mut unique = Tally::new(
        "parity-unique",
        "STQ is the only TeamQueue aggregator satisfying parity",
        "per profile, the distinct strategy outputs passing check_parity are exactly {stq(p)}",
    );
    for p in profiles_in(&tpos, bounds) {
        let outputs: BTreeSet<Tpo> = strategy_outputs(&p, bounds)?.into_iter().map(|(_, o)| o).collect();
        let mut passing = BTreeSet::new();
        for o in outputs {
            if check_parity(&p, &o)?.passed {
                passing.insert(o);
            }
        }
        let expected = BTreeSet::from([stq(&p)]);
        unique.record(passing == expected, || {
            let mut w = profile_witness(&p);
            for o in &passing {
                w = w.with("passing", Value::Tpo(o.clone()));
            }
            w
        });
    }
    Ok(SuiteReport { suite: "parity".into(), bounds: describe(bounds), reports: vec![unique.finish()] })
}

/// STQ is at least as flat as every TeamQueue output and as MinRank.
pub fn flattest_suite(bounds: &Bounds) -> Result<SuiteReport, LabError> {
    let tpos = enumerate_tpos(bounds.worlds)?;
    let mut all = Tally::new(
        "flattest",
        "STQ output is at least as flat as any output satisfying SPU+",
        "stq(p) flatter-or-equal every explicit strategy output",
    );
    let mut against_minrank = Tally::new("flattest-minrank", "STQ output is at least as flat as MinRank's", "stq(p) flatter-or-equal minrank(p)");
    for p in profiles_in(&tpos, bounds) {
        let top = stq(&p);
        for (seq, out) in strategy_outputs(&p, bounds)? {
            all.record(top.flatter_or_equal(&out), || strategy_witness(&p, &seq, &out));
        }
        let m = minrank(&p);
        against_minrank.record(top.flatter_or_equal(&m), || profile_witness(&p).with("minrank", Value::Tpo(m.clone())));
    }
    Ok(SuiteReport {
        suite: "flattest".into(),
        bounds: describe(bounds),
        reports: vec![all.finish(), against_minrank.finish()],
    })
}

/// Both formulations of factoring, parity and the Pareto family agree on
/// every candidate TPO.
pub fn equivalences_suite(bounds: &Bounds) -> Result<SuiteReport, LabError> {
    let tpos = enumerate_tpos(bounds.worlds)?;
    let pairs: [(&'static str, &'static str, Evaluator, Evaluator); 6] = [
        ("factoring-forms", "minimal-set vs tuple factoring", factoring_min_failure, factoring_leq_failure),
        ("parity-forms", "pairwise vs minimal-set parity", parity_leq_failure, parity_min_failure),
        ("spu+-ub", "SPU+ vs UB", spu_plus_failure, ub_failure),
        ("wpu+-lb", "WPU+ vs LB", wpu_plus_failure, lb_failure),
        ("spu-upper-bound", "SPU vs <=out within union of <=i", spu_failure, upper_bound_failure),
        ("wpu-lower-bound", "WPU vs intersection of <=i within <=out", wpu_failure, lower_bound_failure),
    ];
    let mut tallies: Vec<Tally> = pairs
        .iter()
        .map(|(name, what, _, _)| Tally::new(name, what, "both verdicts agree on every (profile, candidate) pair"))
        .collect();
    for p in profiles_in(&tpos, bounds) {
        for t in &tpos {
            for ((_, _, a, b), tally) in pairs.iter().zip(tallies.iter_mut()) {
                let same = a(&p, t).is_some() == b(&p, t).is_some();
                tally.record(same, || profile_witness(&p).with("candidate", Value::Tpo(t.clone())));
            }
        }
    }
    Ok(SuiteReport {
        suite: "equivalences".into(),
        bounds: describe(bounds),
        reports: tallies.into_iter().map(Tally::finish).collect(),
    })
}

type Evaluator = fn(&Profile, &Tpo) -> Option<Witness>;

/// The brute-force rational closure coincides with STQ.
pub fn rat_suite(bounds: &Bounds) -> Result<SuiteReport, LabError> {
    let tpos = enumerate_tpos(bounds.worlds)?;
    let mut rat = Tally::new(
        "rat",
        "STQ conditionals = rational closure of the shared input conditionals",
        "flattest TPO extending the shared conditionals (by enumeration) equals stq(p)",
    );
    for p in profiles_in(&tpos, bounds) {
        let closure = rational_closure_tpo(&p)?;
        let s = stq(&p);
        rat.record(closure == s, || {
            profile_witness(&p).with("closure", Value::Tpo(closure.clone())).with("stq", Value::Tpo(s.clone()))
        });
    }
    Ok(SuiteReport { suite: "rat".into(), bounds: describe(bounds), reports: vec![rat.finish()] })
}

/// Duplicate entries leave STQ and MinRank unchanged, and STQ's first block
/// collects every input minimum.
pub fn idempotence_suite(bounds: &Bounds) -> Result<SuiteReport, LabError> {
    let tpos = enumerate_tpos(bounds.worlds)?;
    let mut unanimous = Tally::new("unanimous", "aggregating copies of t gives t", "stq and minrank of <t, t, ...> equal t");
    let mut duplicate = Tally::new(
        "duplicate-entry",
        "STQ ignores duplicated inputs",
        "stq(p with entry i repeated) = stq(p) for every i",
    );
    let mut first = Tally::new("stq-first-block", "STQ selects every input at step 1", "bottom(stq(p)) = union of min(i, W)");
    for t in &tpos {
        for n in 1..=bounds.inputs.max(1) {
            let p = Profile::new(vec![t.clone(); n])?;
            unanimous.record(stq(&p) == *t && minrank(&p) == *t, || profile_witness(&p));
        }
    }
    for p in profiles_in(&tpos, bounds) {
        let s = stq(&p);
        for i in 0..p.len() {
            let mut entries = p.entries().to_vec();
            entries.insert(i, p.get(i).clone());
            let q = Profile::new(entries)?;
            duplicate.record(stq(&q) == s, || profile_witness(&p).with("input", Value::Index(i)));
        }
        let full = Proposition::full(p.size());
        first.record(s.bottom() == p.union_of_minima(full), || profile_witness(&p));
    }
    Ok(SuiteReport {
        suite: "idempotence".into(),
        bounds: describe(bounds),
        reports: vec![unanimous.finish(), duplicate.finish(), first.finish()],
    })
}

/// The quantifier definition of strong belief agrees with the rank test.
pub fn strong_belief_suite(bounds: &Bounds) -> Result<SuiteReport, LabError> {
    let mut tally = Tally::new(
        "strong-belief",
        "A is believed and survives revision by every B consistent with A",
        "quantifier over all propositions B agrees with: max rank in A < min rank outside A",
    );
    for t in enumerate_tpos(bounds.worlds)? {
        let s = BeliefState::new(t);
        for a in Proposition::all(bounds.worlds) {
            let same = is_strongly_believed(&s, a)? == strongly_believed_by_rank(&s, a)?;
            tally.record(same, || Witness::new().with("state", Value::Tpo(s.tpo().clone())).with("A", Value::Set(a)));
        }
    }
    Ok(SuiteReport { suite: "strong-belief".into(), bounds: describe(bounds), reports: vec![tally.finish()] })
}

/// Whether the pairwise relation forced by exact minima intersection is a
/// TPO, per profile.
pub fn naive_ci_suite(bounds: &Bounds) -> Result<SuiteReport, LabError> {
    let tpos = enumerate_tpos(bounds.worlds)?;
    let mut tally = Tally::new(
        "naive-ci-is-tpo",
        "min(out, S) = union of min(i, S) for all S yields a TPO",
        "relation a <= b iff a is in some min(i, {a, b}) is total and transitive",
    );
    for p in profiles_in(&tpos, bounds) {
        let ci = naive_ci(&p);
        tally.record(ci.is_tpo(), || {
            let w = profile_witness(&p);
            match ci.verdict {
                crate::aggregation::TpoVerdict::NotTransitive(a, b, c) => w.with("triple", Value::Worlds(vec![a, b, c])),
                crate::aggregation::TpoVerdict::NotTotal(a, b) => w.with("incomparable", Value::Worlds(vec![a, b])),
                crate::aggregation::TpoVerdict::Tpo => w,
            }
        });
    }
    Ok(SuiteReport { suite: "naive-ci".into(), bounds: describe(bounds), reports: vec![tally.finish()] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{four_input_profile, intransitive_pair_profile, tpo, xyzw};

    #[test]
    fn factoring_examples() {
        let (u, p) = four_input_profile();
        assert!(check_factoring(&p, &stq(&p)).unwrap().passed);
        let chain = tpo(&u, &[&["x"], &["y"], &["z"], &["w"]]);
        let r = check_factoring(&p, &chain).unwrap();
        assert!(!r.passed);
        assert_eq!(r.witness.unwrap().set("S"), Some(u.full()));
        for t in enumerate_tpos(3).unwrap() {
            let single = Profile::new(vec![t.clone()]).unwrap();
            assert!(check_factoring(&single, &t).unwrap().passed);
        }
        assert!(check_factoring(&p, &Tpo::flat(3)).is_err());
    }

    #[test]
    fn parity_examples() {
        let (u, p) = four_input_profile();
        assert!(check_parity(&p, &stq(&p)).unwrap().passed);
        let r = check_parity(&p, &minrank(&p)).unwrap();
        let w = r.witness.unwrap();
        let [x, y, ..] = xyzw(&u);
        assert_eq!(w.get("x"), Some(&Value::World(y.worlds().next().unwrap())));
        assert_eq!(w.get("y"), Some(&Value::World(x.worlds().next().unwrap())));
        assert_eq!(w.get("input"), Some(&Value::Index(0)));
        let single = Profile::new(vec![p.get(2).clone()]).unwrap();
        assert!(check_parity(&single, p.get(2)).unwrap().passed);
    }

    #[test]
    fn pareto_examples() {
        let (_, p) = four_input_profile();
        let by_name = |rs: Vec<CheckReport>, n: &str| rs.into_iter().find(|r| r.property == n).unwrap().passed;
        let m = check_pareto(&p, &minrank(&p)).unwrap();
        assert!(by_name(m.clone(), "ub") && by_name(m, "lb"));
        let s = check_pareto(&p, &stq(&p)).unwrap();
        for n in ["spu+", "wpu+", "ub", "lb", "spu", "wpu"] {
            assert!(by_name(s.clone(), n), "{n}");
        }
    }

    #[test]
    fn small_suites_pass() {
        let b = Bounds::exhaustive(3, 2);
        for suite in [factoring_suite, parity_suite, equivalences_suite, rat_suite, idempotence_suite] {
            let r = suite(&b).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        assert!(flattest_suite(&Bounds::exhaustive(3, 2)).unwrap().passed());
        assert!(strong_belief_suite(&Bounds::exhaustive(3, 1)).unwrap().passed());
    }

    #[test]
    fn naive_ci_fails_somewhere_on_four_worlds() {
        let r = naive_ci_suite(&Bounds::exhaustive(4, 2)).unwrap();
        assert!(!r.passed());
        let (_, p) = intransitive_pair_profile();
        assert!(!naive_ci(&p).is_tpo());
    }
}
