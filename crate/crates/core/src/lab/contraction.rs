//! Postulate suites for serial and parallel contraction.
//!
//! Belief sets are model sets: `K ⊆ K'` becomes `M(K') ⊆ M(K)`, `A ∈ K`
//! becomes `M(K) ⊆ A`, and `Cn(K ∪ {A})` has models `M(K) ∩ A`. Sentences
//! range over every proposition, input sets over every set of at most
//! `bounds.inputs` distinct propositions.

use std::collections::HashMap;

use crate::aggregation::Aggregator;
use crate::change::{
    contract_beliefs, ihi_contract, is_strongly_believed, BeliefState, ParallelOperator, SerialContraction,
    SerialOperator,
};
use crate::conditionals::rational_closure_tpo;
use crate::logic::{Proposition, World};
use crate::orders::{enumerate_tpos, Profile, Tpo};

use super::report::{SuiteReport, Tally, Value, Witness};
use super::{Bounds, LabError};

/// Every set of `1..=max` distinct propositions over `size` worlds, by
/// cardinality and then lexicographically.
pub fn enumerate_input_sets(size: usize, max: usize) -> Vec<Vec<Proposition>> {
    let props: Vec<Proposition> = Proposition::all(size).collect();
    let mut out = Vec::new();
    for k in 1..=max.min(props.len()) {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            out.push(idx.iter().map(|&i| props[i]).collect());
            let Some(pos) = (0..k).rev().find(|&i| idx[i] < props.len() - k + i) else {
                break;
            };
            idx[pos] += 1;
            for j in pos + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    out
}

fn key(set: &[Proposition]) -> Vec<u64> {
    let mut k: Vec<u64> = set.iter().map(|p| p.bits()).collect();
    k.sort_unstable();
    k.dedup();
    k
}

fn union(a: &[Proposition], b: &[Proposition]) -> Vec<Proposition> {
    let mut out = a.to_vec();
    out.extend(b.iter().filter(|p| !a.contains(p)));
    out.sort();
    out
}

fn intersection(a: &[Proposition], b: &[Proposition]) -> Vec<Proposition> {
    a.iter().copied().filter(|p| b.contains(p)).collect()
}

fn conjunction(size: usize, set: &[Proposition]) -> Proposition {
    set.iter().fold(Proposition::full(size), |acc, &p| acc & p)
}

fn worlds(size: usize) -> impl Iterator<Item = World> + Clone {
    (0..size).map(World::new)
}

/// Memoised parallel contractions of one state.
struct StateCache<'a> {
    op: &'a dyn ParallelOperator,
    state: &'a Tpo,
    sets: HashMap<Vec<u64>, Tpo>,
    serial: Vec<Option<Tpo>>,
}

impl<'a> StateCache<'a> {
    fn new(op: &'a dyn ParallelOperator, state: &'a Tpo) -> StateCache<'a> {
        StateCache { op, state, sets: HashMap::new(), serial: vec![None; 1 << state.size()] }
    }

    fn set(&mut self, s: &[Proposition]) -> Result<&Tpo, LabError> {
        let k = key(s);
        if !self.sets.contains_key(&k) {
            let canonical: Vec<Proposition> = {
                let mut v = s.to_vec();
                v.sort();
                v.dedup();
                v
            };
            let out = self.op.contract_set(self.state, &canonical)?;
            self.sets.insert(k.clone(), out);
        }
        Ok(&self.sets[&k])
    }

    fn beliefs(&mut self, s: &[Proposition]) -> Result<Proposition, LabError> {
        Ok(self.set(s)?.bottom())
    }

    fn serial(&mut self, a: Proposition) -> Result<&Tpo, LabError> {
        let i = a.bits() as usize;
        if self.serial[i].is_none() {
            self.serial[i] = Some(self.op.serial(self.state, a)?);
        }
        Ok(self.serial[i].as_ref().expect("just filled"))
    }
}

fn state_witness(t: &Tpo) -> Witness {
    Witness::new().with("state", Value::Tpo(t.clone()))
}

fn states(bounds: &Bounds) -> Result<Vec<Tpo>, LabError> {
    Ok(enumerate_tpos(bounds.worlds)?)
}

/// K÷1–K÷8 and the minima identity for a serial contraction.
pub fn agm_suite(op: &dyn SerialContraction, bounds: &Bounds) -> Result<SuiteReport, LabError> {
    let n = bounds.worlds;
    let mut k1 = Tally::new("k1", "[C-A] is logically closed", "model sets denote closed theories; checked: output is a TPO over W");
    let mut k2 = Tally::new("k2", "[C-A] within [C]", "M(C) within M(C-A)");
    let mut k3 = Tally::new("k3", "if A not in [C] then [C-A] = [C]", "if M(C) not within A then M(C-A) = M(C)");
    let mut k4 = Tally::new("k4", "if A is not a tautology, A not in [C-A]", "if A != W then M(C-A) not within A");
    let mut k5 = Tally::new("k5", "if A in [C], [C] within Cn([C-A] + A)", "if M(C) within A then M(C-A) & A within M(C)");
    let mut k6 = Tally::new(
        "k6",
        "equivalent inputs give equal results",
        "equivalent sentences share one proposition; checked: repeated calls agree",
    );
    let mut k7 = Tally::new("k7", "[C-A] & [C-B] within [C-(A&B)]", "M(C-(A&B)) within M(C-A) | M(C-B)");
    let mut k8 = Tally::new(
        "k8",
        "if A not in [C-(A&B)] then [C-(A&B)] within [C-A]",
        "if M(C-(A&B)) not within A then M(C-A) within M(C-(A&B))",
    );
    let mut identity = Tally::new(
        "min-identity",
        "beliefs after contraction = min(W) | min(not A)",
        "bottom(C-A) = bottom(C) | min(C, not A)",
    );
    for t in states(bounds)? {
        let prior = t.bottom();
        let outs: Vec<Tpo> = Proposition::all(n).map(|a| op.contract(&t, a)).collect::<Result<_, _>>()?;
        let beliefs: Vec<Proposition> = outs.iter().map(Tpo::bottom).collect();
        for a in Proposition::all(n) {
            let i = a.bits() as usize;
            let m = beliefs[i];
            let wit = || state_witness(&t).with("A", Value::Set(a));
            k1.record(outs[i].size() == n, wit);
            k2.record(prior.is_subset(m), wit);
            k3.record(prior.is_subset(a) || m == prior, wit);
            k4.record(a.is_full() || !m.is_subset(a), wit);
            k5.record(!prior.is_subset(a) || (m & a).is_subset(prior), wit);
            k6.record(op.contract(&t, a)? == outs[i], wit);
            identity.record(m == prior | t.min_set(!a), wit);
            for b in Proposition::all(n) {
                let both = beliefs[(a & b).bits() as usize];
                let pair = || state_witness(&t).with("A", Value::Set(a)).with("B", Value::Set(b));
                k7.record(both.is_subset(m | beliefs[b.bits() as usize]), pair);
                k8.record(both.is_subset(a) || m.is_subset(both), pair);
            }
        }
    }
    Ok(SuiteReport {
        suite: "agm".into(),
        bounds: format!("{}; operator {}", bounds.describe_states(), op.label()),
        reports: [k1, k2, k3, k4, k5, k6, k7, k8, identity].into_iter().map(Tally::finish).collect(),
    })
}

/// The four iterated contraction postulates, over TPOs and over revised
/// belief sets.
pub fn cc_suite(op: &dyn SerialContraction, bounds: &Bounds) -> Result<SuiteReport, LabError> {
    let n = bounds.worlds;
    let mut sem = [
        Tally::new("cc1", "x, y in not-A: x <= y after iff before", "pairs in the complement of A keep their order"),
        Tally::new("cc2", "x, y in A: x <= y after iff before", "pairs inside A keep their order"),
        Tally::new("cc3", "x in not-A, y in A, x < y before: x < y after", "strict order from not-A to A is kept"),
        Tally::new("cc4", "x in not-A, y in A, x <= y before: x <= y after", "weak order from not-A to A is kept"),
    ];
    let mut syn = [
        Tally::new("cc1-syn", "if not-A in Cn(B) then [(C-A)*B] = [C*B]", "for nonempty B within not-A: min(after, B) = min(before, B)"),
        Tally::new("cc2-syn", "if A in Cn(B) then [(C-A)*B] = [C*B]", "for nonempty B within A: min(after, B) = min(before, B)"),
        Tally::new("cc3-syn", "if not-A in [C*B] then not-A in [(C-A)*B]", "min(before, B) within not-A implies min(after, B) within not-A"),
        Tally::new("cc4-syn", "if A not in [C*B] then A not in [(C-A)*B]", "min(before, B) not within A implies min(after, B) not within A"),
    ];
    for t in states(bounds)? {
        for a in Proposition::all(n) {
            let out = op.contract(&t, a)?;
            for x in worlds(n) {
                for y in worlds(n) {
                    let wit = || {
                        state_witness(&t)
                            .with("A", Value::Set(a))
                            .with("after", Value::Tpo(out.clone()))
                            .with("x", Value::World(x))
                            .with("y", Value::World(y))
                    };
                    let (xa, ya) = (a.contains(x), a.contains(y));
                    if !xa && !ya {
                        sem[0].record(out.leq(x, y) == t.leq(x, y), wit);
                    }
                    if xa && ya {
                        sem[1].record(out.leq(x, y) == t.leq(x, y), wit);
                    }
                    if !xa && ya {
                        sem[2].record(!t.lt(x, y) || out.lt(x, y), wit);
                        sem[3].record(!t.leq(x, y) || out.leq(x, y), wit);
                    }
                }
            }
            for b in Proposition::all(n).filter(|b| !b.is_empty()) {
                let (before, after) = (t.min_set(b), out.min_set(b));
                let wit = || {
                    state_witness(&t).with("A", Value::Set(a)).with("after", Value::Tpo(out.clone())).with("B", Value::Set(b))
                };
                if b.is_subset(!a) {
                    syn[0].record(before == after, wit);
                }
                if b.is_subset(a) {
                    syn[1].record(before == after, wit);
                }
                syn[2].record(!before.is_subset(!a) || after.is_subset(!a), wit);
                syn[3].record(before.is_subset(a) || !after.is_subset(a), wit);
            }
        }
    }
    Ok(SuiteReport {
        suite: "cc".into(),
        bounds: format!("{}; operator {}", bounds.describe_states(), op.label()),
        reports: sem.into_iter().chain(syn).map(Tally::finish).collect(),
    })
}

fn set_witness(t: &Tpo, s: &[Proposition]) -> Witness {
    state_witness(t).with("S", Value::Sets(s.to_vec()))
}

fn parallel_label(op: &dyn ParallelOperator, bounds: &Bounds) -> String {
    format!("{}; operator {}", bounds.describe_sets(), op.label())
}

/// The iterated postulates lifted to input sets.
pub fn ccn_suite(op: &dyn ParallelOperator, bounds: &Bounds) -> Result<SuiteReport, LabError> {
    let n = bounds.worlds;
    let mut tallies = [
        Tally::new("ccn1", "x, y in the models of every not-A: order kept", "pairs in N = meet of the complements keep their order"),
        Tally::new("ccn2", "x, y in the models of every A: order kept", "pairs in the conjunction of S keep their order"),
        Tally::new("ccn3", "x in N, y not in N, x < y before: x < y after", "strict order out of N is kept"),
        Tally::new("ccn4", "x in N, y not in N, x <= y before: x <= y after", "weak order out of N is kept"),
    ];
    let sets = enumerate_input_sets(n, bounds.inputs);
    for t in states(bounds)? {
        for s in &sets {
            let out = op.contract_set(&t, s)?;
            let none = s.iter().fold(Proposition::full(n), |acc, &a| acc & !a);
            let all = conjunction(n, s);
            for x in worlds(n) {
                for y in worlds(n) {
                    let wit = || {
                        set_witness(&t, s)
                            .with("after", Value::Tpo(out.clone()))
                            .with("x", Value::World(x))
                            .with("y", Value::World(y))
                    };
                    if none.contains(x) && none.contains(y) {
                        tallies[0].record(out.leq(x, y) == t.leq(x, y), wit);
                    }
                    if all.contains(x) && all.contains(y) {
                        tallies[1].record(out.leq(x, y) == t.leq(x, y), wit);
                    }
                    if none.contains(x) && !none.contains(y) {
                        tallies[2].record(!t.lt(x, y) || out.lt(x, y), wit);
                        tallies[3].record(!t.leq(x, y) || out.leq(x, y), wit);
                    }
                }
            }
        }
    }
    Ok(SuiteReport {
        suite: "ccn".into(),
        bounds: parallel_label(op, bounds),
        reports: tallies.into_iter().map(Tally::finish).collect(),
    })
}

/// Single-step parallel postulates KP1–KP8.
pub fn kp_suite(op: &dyn ParallelOperator, bounds: &Bounds) -> Result<SuiteReport, LabError> {
    let n = bounds.worlds;
    let mut kp1 = Tally::new("kp1", "[C/S] is logically closed", "model sets denote closed theories; checked: output is a TPO over W");
    let mut kp2 = Tally::new("kp2", "[C/S] within [C]", "M(C) within M(C/S)");
    let mut kp3 = Tally::new("kp3", "if no member of S is believed, [C/S] = [C]", "if no A in S has M(C) within A then M(C/S) = M(C)");
    let mut kp4 = Tally::new("kp4", "no non-tautologous member of S is in [C/S]", "for A in S with A != W, M(C/S) not within A");
    let mut kp5 = Tally::new(
        "kp5",
        "if every member of S is believed, [C] within Cn([C/S] + conj S)",
        "if M(C) within every A in S then M(C/S) & conj(S) within M(C)",
    );
    let mut kp6 = Tally::new(
        "kp6",
        "input sets with pairwise equivalent members give equal results",
        "M(C/S) unchanged when S is reordered or a member is repeated",
    );
    let mut kp7 = Tally::new(
        "kp7",
        "[C/S1] & [C/S2] within [C/{conj(S1 | S2)}]",
        "M(C-conj(S1 | S2)) within M(C/S1) | M(C/S2)",
    );
    let mut kp8 = Tally::new(
        "kp8",
        "if no member of S1 is in [C-conj(S1 | S2)] then [C-conj(S1 | S2)] within [C/S1]",
        "if no A in S1 contains M(C-conj(S1 | S2)) then M(C/S1) within M(C-conj(S1 | S2))",
    );
    let sets = enumerate_input_sets(n, bounds.inputs);
    for t in states(bounds)? {
        let prior = t.bottom();
        let mut cache = StateCache::new(op, &t);
        let beliefs: Vec<Proposition> = sets.iter().map(|s| cache.beliefs(s)).collect::<Result<_, _>>()?;
        for (s, &m) in sets.iter().zip(&beliefs) {
            let wit = || set_witness(&t, s);
            kp1.record(cache.set(s)?.size() == n, wit);
            kp2.record(prior.is_subset(m), wit);
            if s.iter().all(|&a| !prior.is_subset(a)) {
                kp3.record(m == prior, wit);
            }
            kp4.record(s.iter().all(|&a| a.is_full() || !m.is_subset(a)), wit);
            if s.iter().all(|&a| prior.is_subset(a)) {
                kp5.record((m & conjunction(n, s)).is_subset(prior), wit);
            }
            let mut reversed = s.clone();
            reversed.reverse();
            let mut repeated = s.clone();
            repeated.push(s[0]);
            let same = op.contract_set(&t, &reversed)?.bottom() == m && op.contract_set(&t, &repeated)?.bottom() == m;
            kp6.record(same, wit);
        }
        for (s1, &m1) in sets.iter().zip(&beliefs) {
            for (s2, &m2) in sets.iter().zip(&beliefs) {
                let conj = conjunction(n, s1) & conjunction(n, s2);
                let joint = cache.serial(conj)?.bottom();
                let wit = || set_witness(&t, s1).with("S2", Value::Sets(s2.clone()));
                kp7.record(joint.is_subset(m1 | m2), wit);
                if s1.iter().all(|&a| !joint.is_subset(a)) {
                    kp8.record(m1.is_subset(joint), wit);
                }
            }
        }
    }
    Ok(SuiteReport {
        suite: "kp".into(),
        bounds: parallel_label(op, bounds),
        reports: [kp1, kp2, kp3, kp4, kp5, kp6, kp7, kp8].into_iter().map(Tally::finish).collect(),
    })
}

/// The subset-relation pair and monotonicity.
pub fn fh_suite(op: &dyn ParallelOperator, bounds: &Bounds) -> Result<SuiteReport, LabError> {
    let n = bounds.worlds;
    let mut fh_a = Tally::new(
        "fh-a",
        "if S1 and S2 share a member, [C/S1] & [C/S2] within [C/(S1 & S2)]",
        "M(C/(S1 & S2)) within M(C/S1) | M(C/S2)",
    );
    let mut fh_b = Tally::new(
        "fh-b",
        "if no member of S1 is in [C/S2] then [C/S2] within [C/(S1 | S2)]",
        "if no A in S1 contains M(C/S2) then M(C/(S1 | S2)) within M(C/S2)",
    );
    let mut mono = Tally::new("monotonicity", "if S1 within S2 then [C/S2] within [C/S1]", "M(C/S1) within M(C/S2)");
    let sets = enumerate_input_sets(n, bounds.inputs);
    for t in states(bounds)? {
        let mut cache = StateCache::new(op, &t);
        for s1 in &sets {
            for s2 in &sets {
                let wit = || set_witness(&t, s1).with("S2", Value::Sets(s2.clone()));
                let (m1, m2) = (cache.beliefs(s1)?, cache.beliefs(s2)?);
                let common = intersection(s1, s2);
                if !common.is_empty() {
                    fh_a.record(cache.beliefs(&common)?.is_subset(m1 | m2), wit);
                }
                if s1.iter().all(|&a| !m2.is_subset(a)) {
                    fh_b.record(cache.beliefs(&union(s1, s2))?.is_subset(m2), wit);
                }
                if s1.iter().all(|a| s2.contains(a)) {
                    mono.record(m1.is_subset(m2), wit);
                }
            }
        }
    }
    Ok(SuiteReport {
        suite: "fh".into(),
        bounds: parallel_label(op, bounds),
        reports: [fh_a, fh_b, mono].into_iter().map(Tally::finish).collect(),
    })
}

/// Properties that tie a parallel contraction to the serial contractions by
/// each member: factoring, the two bounds, parity, intersection of beliefs,
/// and rational closure.
pub fn char_suite(op: &dyn ParallelOperator, bounds: &Bounds) -> Result<SuiteReport, LabError> {
    let n = bounds.worlds;
    let mut f_b = Tally::new(
        "f-b",
        "for all B there is X with [(C/S)*B] = meet of [(C-A_i)*B] over i in X",
        "for nonempty B, min(out, B) is the union of the min(i, B) lying inside it",
    );
    let mut ub_b = Tally::new("ub-b", "meet of [(C-A_i)*B] within [(C/S)*B]", "min(out, B) within union of min(i, B)");
    let mut lb_b = Tally::new("lb-b", "[(C/S)*B] within the union of [(C-A_i)*B]", "some min(i, B) within min(out, B)");
    let mut par_b = Tally::new(
        "par-b",
        "if not-B is strongly believed after C/S then [(C/S)*B] within every [(C-A_i)*B]",
        "if not-B is strongly believed in out, union of min(i, B) within min(out, B)",
    );
    let mut int_b = Tally::new("int-b", "[C/S] = meet of the [C-A_i]", "M(C/S) = union of M(C-A_i)");
    let mut ratcon = Tally::new(
        "ratcon",
        "conditionals after C/S = rational closure of the shared conditionals after each C-A_i",
        "out equals the flattest TPO extending the shared conditionals of the serial contractions",
    );
    let sets = enumerate_input_sets(n, bounds.inputs);
    for t in states(bounds)? {
        for s in &sets {
            let entries = s.iter().map(|&a| op.serial(&t, a)).collect::<Result<Vec<_>, _>>()?;
            let p = Profile::new(entries)?;
            let out = op.contract_set(&t, s)?;
            let state = BeliefState::new(out.clone());
            let wit = || set_witness(&t, s).with("after", Value::Tpo(out.clone()));
            for b in Proposition::all(n).filter(|b| !b.is_empty()) {
                let target = out.min_set(b);
                let minima: Vec<Proposition> = p.iter().map(|q| q.min_set(b)).collect();
                let all = minima.iter().fold(Proposition::empty(n), |acc, &m| acc | m);
                let inside = minima.iter().filter(|m| m.is_subset(target)).fold(Proposition::empty(n), |acc, &m| acc | m);
                let bw = || wit().with("B", Value::Set(b));
                f_b.record(inside == target, bw);
                ub_b.record(target.is_subset(all), bw);
                lb_b.record(minima.iter().any(|m| m.is_subset(target)), bw);
                if is_strongly_believed(&state, !b)? {
                    par_b.record(all.is_subset(target), bw);
                }
            }
            int_b.record(out.bottom() == p.union_of_minima(Proposition::full(n)), wit);
            let closure = rational_closure_tpo(&p)?;
            ratcon.record(closure == out, || wit().with("closure", Value::Tpo(closure.clone())));
        }
    }
    Ok(SuiteReport {
        suite: "char".into(),
        bounds: parallel_label(op, bounds),
        reports: [f_b, ub_b, lb_b, par_b, int_b, ratcon].into_iter().map(Tally::finish).collect(),
    })
}

/// The fixed instance showing that equating input sets with equal
/// consequences clashes with KP3 and KP4: atoms `p q`, prior beliefs `p`.
pub fn kp6alt_suite(op: &dyn ParallelOperator) -> Result<SuiteReport, LabError> {
    let u = crate::logic::Universe::from_atoms(&["p", "q"]).expect("valid atoms");
    let models = |f: &str| u.models(&crate::logic::parse_formula(f).expect("formula")).expect("atoms");
    let (p, pq) = (models("p"), models("p & q"));
    let t = Tpo::from_blocks(u.size(), vec![p, !p])?;
    let prior = t.bottom();
    let narrow = op.contract_set(&t, &[pq])?.bottom();
    let wide = op.contract_set(&t, &[pq, p])?.bottom();
    let wit = |s: Vec<Proposition>| state_witness(&t).with("S", Value::Sets(s));
    let mut kp3 = Tally::new("kp3-instance", "p&q is not believed, so contracting {p&q} keeps [C]", "M(C/{p&q}) = M(C)");
    kp3.record(!prior.is_subset(pq) && narrow == prior, || wit(vec![pq]));
    let mut kp4 = Tally::new("kp4-instance", "p is no tautology, so contracting {p&q, p} removes p", "M(C/{p&q, p}) not within p");
    kp4.record(!wide.is_subset(p) && wide != prior, || wit(vec![pq, p]));
    let mut alt = Tally::new(
        "kp6-alt-refuted",
        "{p&q} and {p&q, p} have equal consequences yet different results",
        "conj{p&q} = conj{p&q, p} and M(C/{p&q}) != M(C/{p&q, p})",
    );
    alt.record(pq == pq & p && narrow != wide, || wit(vec![pq, p]));
    Ok(SuiteReport {
        suite: "kp6alt".into(),
        bounds: format!("atoms p q; prior [p] < [~p]; operator {}", op.label()),
        reports: [kp3, kp4, alt].into_iter().map(Tally::finish).collect(),
    })
}

/// Contraction as aggregation of the prior with the revision by the
/// negation yields the single-step minima identity.
pub fn ihi_suite(rev: SerialOperator, aggregator: &Aggregator, bounds: &Bounds) -> Result<SuiteReport, LabError> {
    let n = bounds.worlds;
    let mut harper = Tally::new(
        "ihi-harper",
        "[C-A] = [C] & [C*not-A]",
        "bottom of the aggregate of C and C*not-A = bottom(C) | min(C, not A)",
    );
    let mut taut = Tally::new("ihi-tautology", "contracting a tautology changes nothing", "A = W leaves the state unchanged");
    for t in states(bounds)? {
        let s = BeliefState::new(t.clone());
        for a in Proposition::all(n) {
            let out = ihi_contract(&s, a, rev, aggregator)?;
            let wit = || state_witness(&t).with("A", Value::Set(a));
            if a.is_full() {
                taut.record(out == s, wit);
            } else {
                harper.record(out.beliefs() == contract_beliefs(&s, a)?, wit);
            }
        }
    }
    Ok(SuiteReport {
        suite: "ihi".into(),
        bounds: format!("{}; revision {rev}; aggregator {aggregator}", bounds.describe_states()),
        reports: [harper, taut].into_iter().map(Tally::finish).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::change::ParallelContraction;
    use crate::fixtures::{FlatteningParallel, ShuffleContraction};

    fn natural_stq() -> ParallelContraction<SerialOperator> {
        ParallelContraction::new(SerialOperator::NaturalContraction, Aggregator::Stq)
    }

    #[test]
    fn input_set_enumeration() {
        let sets = enumerate_input_sets(2, 2);
        assert_eq!(sets.len(), 4 + 6);
        assert_eq!(sets[0], vec![Proposition::empty(2)]);
        assert_eq!(sets[4], vec![Proposition::empty(2), Proposition::from_bits(2, 1).unwrap()]);
        assert_eq!(enumerate_input_sets(4, 2).len(), 16 + 120);
    }

    #[test]
    fn serial_suites_pass_for_shipped_operators() {
        let b = Bounds::exhaustive(3, 2);
        for op in [SerialOperator::NaturalContraction, SerialOperator::ModerateContraction] {
            assert!(agm_suite(&op, &b).unwrap().passed());
            assert!(cc_suite(&op, &b).unwrap().passed());
        }
    }

    #[test]
    fn shuffle_fails_cc2() {
        let r = cc_suite(&ShuffleContraction, &Bounds::exhaustive(3, 1)).unwrap();
        assert!(!r.get("cc2").unwrap().passed);
        assert!(r.get("cc1").unwrap().passed);
        assert!(agm_suite(&ShuffleContraction, &Bounds::exhaustive(3, 1)).unwrap().passed());
    }

    #[test]
    fn parallel_suites_on_three_worlds() {
        let b = Bounds::exhaustive(3, 2);
        let op = natural_stq();
        assert!(kp_suite(&op, &b).unwrap().passed());
        assert!(ccn_suite(&op, &b).unwrap().passed());
        assert!(char_suite(&op, &b).unwrap().passed());
        let fh = fh_suite(&op, &b).unwrap();
        assert!(fh.get("fh-a").unwrap().passed);
        assert!(fh.get("monotonicity").unwrap().passed);
    }

    #[test]
    fn kp6alt_instance() {
        let r = kp6alt_suite(&natural_stq()).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn minrank_keeps_factoring_but_not_closure_under_moderate() {
        let op = ParallelContraction::new(SerialOperator::ModerateContraction, Aggregator::MinRank);
        let r = char_suite(&op, &Bounds::exhaustive(4, 2)).unwrap();
        assert!(r.get("f-b").unwrap().passed);
        assert!(r.get("int-b").unwrap().passed);
        assert!(!r.get("ratcon").unwrap().passed);
    }

    #[test]
    fn minrank_matches_closure_under_natural() {
        let op = ParallelContraction::new(SerialOperator::NaturalContraction, Aggregator::MinRank);
        let r = char_suite(&op, &Bounds::exhaustive(4, 2)).unwrap();
        assert!(r.get("ratcon").unwrap().passed);
    }

    #[test]
    fn flattening_operator_fails_factoring() {
        let op = FlatteningParallel(SerialOperator::NaturalContraction);
        let r = char_suite(&op, &Bounds::exhaustive(3, 2)).unwrap();
        assert!(!r.get("f-b").unwrap().passed);
    }

    #[test]
    fn ihi_for_both_revisions() {
        for rev in [SerialOperator::NaturalRevision, SerialOperator::LexicographicRevision] {
            for agg in [Aggregator::Stq, Aggregator::MinRank] {
                assert!(ihi_suite(rev, &agg, &Bounds::exhaustive(4, 1)).unwrap().passed());
            }
        }
    }
}
