//! Conditional beliefs over TPOs and a brute-force rational closure.

use thiserror::Error;

use crate::logic::Proposition;
use crate::orders::{enumerate_tpos, OrderError, Profile, Tpo};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConditionalError {
    #[error("conditional over {found} worlds used with an order over {expected}")]
    UniverseMismatch { expected: usize, found: usize },
    #[error("no TPO is at least as flat as every admissible candidate")]
    NoFlattest,
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// `antecedent > consequent`: the most plausible antecedent worlds all
/// satisfy the consequent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Conditional {
    pub antecedent: Proposition,
    pub consequent: Proposition,
}

impl Conditional {
    pub fn new(antecedent: Proposition, consequent: Proposition) -> Result<Conditional, ConditionalError> {
        if antecedent.size() != consequent.size() {
            return Err(ConditionalError::UniverseMismatch {
                expected: antecedent.size(),
                found: consequent.size(),
            });
        }
        Ok(Conditional { antecedent, consequent })
    }

    fn check(&self, size: usize) -> Result<(), ConditionalError> {
        if self.antecedent.size() != size || self.consequent.size() != size {
            return Err(ConditionalError::UniverseMismatch { expected: size, found: self.antecedent.size() });
        }
        Ok(())
    }
}

pub fn conditional_holds(t: &Tpo, c: Conditional) -> Result<bool, ConditionalError> {
    c.check(t.size())?;
    Ok(t.min_set(c.antecedent).is_subset(c.consequent))
}

/// Whether every input accepts `c`.
pub fn intersection_holds(p: &Profile, c: Conditional) -> Result<bool, ConditionalError> {
    c.check(p.size())?;
    Ok(p.union_of_minima(c.antecedent).is_subset(c.consequent))
}

/// Whether `t` accepts every conditional that all inputs accept.
///
/// A conditional `S > B` is accepted by all inputs iff `B` contains the union
/// of the inputs' minima over `S`, so it suffices to test `B` equal to that
/// union for each nonempty `S`.
pub fn extends_intersection(p: &Profile, t: &Tpo) -> bool {
    Proposition::all(p.size())
        .filter(|s| !s.is_empty())
        .all(|s| t.min_set(s).is_subset(p.union_of_minima(s)))
}

/// The flattest TPO accepting every conditional shared by all inputs, found
/// by enumerating every TPO over the universe.
pub fn rational_closure_tpo(p: &Profile) -> Result<Tpo, ConditionalError> {
    let candidates: Vec<Tpo> = enumerate_tpos(p.size())?.into_iter().filter(|t| extends_intersection(p, t)).collect();
    assert!(!candidates.is_empty(), "every input TPO is a candidate");
    candidates
        .iter()
        .find(|t| candidates.iter().all(|o| t.flatter_or_equal(o)))
        .cloned()
        .ok_or(ConditionalError::NoFlattest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{four_input_profile, intransitive_pair_profile};
    use crate::orders::enumerate_profiles;

    #[test]
    fn single_order_conditionals() {
        let (u, p) = intransitive_pair_profile();
        let s = |n: &[&str]| u.set(n.iter().copied()).unwrap();
        let c1 = Conditional::new(s(&["x", "w"]), s(&["x", "y", "z"])).unwrap();
        let c2 = Conditional::new(s(&["x", "z"]), s(&["x", "y", "w"])).unwrap();
        assert!(conditional_holds(p.get(0), c1).unwrap());
        assert!(!conditional_holds(p.get(1), c2).unwrap());
        for t in p.iter() {
            assert!(conditional_holds(t, Conditional::new(u.empty(), u.empty()).unwrap()).unwrap());
        }
        assert!(intersection_holds(&p, c1).unwrap());
        assert!(!intersection_holds(&p, c2).unwrap());
        assert!(intersection_holds(&p, Conditional::new(s(&["y"]), u.full()).unwrap()).unwrap());
    }

    #[test]
    fn mismatched_universes_are_rejected() {
        let (_, p) = four_input_profile();
        let c = Conditional { antecedent: Proposition::full(3), consequent: Proposition::full(3) };
        assert!(conditional_holds(p.get(0), c).is_err());
        assert!(intersection_holds(&p, c).is_err());
        assert!(Conditional::new(Proposition::full(3), Proposition::full(4)).is_err());
    }

    #[test]
    fn closure_examples() {
        let (u, p) = intransitive_pair_profile();
        assert_eq!(rational_closure_tpo(&p).unwrap().render(&u), "[x z] < [w y]");
        let (u, p) = four_input_profile();
        assert_eq!(rational_closure_tpo(&p).unwrap().render(&u), "[w z] < [x y]");
        for t in enumerate_tpos(3).unwrap() {
            let single = Profile::new(vec![t.clone()]).unwrap();
            assert_eq!(rational_closure_tpo(&single).unwrap(), t);
        }
    }

    #[test]
    fn naive_intersection_trio_is_unsatisfiable() {
        let (u, _) = intransitive_pair_profile();
        let s = |n: &[&str]| u.set(n.iter().copied()).unwrap();
        let accepted = Conditional::new(s(&["x", "w"]), !s(&["w"])).unwrap();
        let refuted_a = Conditional::new(s(&["x", "z"]), !s(&["z"])).unwrap();
        let refuted_b = Conditional::new(s(&["w", "z"]), !s(&["w"])).unwrap();
        let fitting = enumerate_tpos(4)
            .unwrap()
            .into_iter()
            .filter(|t| {
                conditional_holds(t, accepted).unwrap()
                    && !conditional_holds(t, refuted_a).unwrap()
                    && !conditional_holds(t, refuted_b).unwrap()
            })
            .count();
        assert_eq!(fitting, 0);
    }

    #[test]
    fn closure_accepts_every_shared_conditional() {
        let tpos = enumerate_tpos(3).unwrap();
        for p in enumerate_profiles(&tpos, 2) {
            let closure = rational_closure_tpo(&p).unwrap();
            for a in Proposition::all(3) {
                for b in Proposition::all(3) {
                    let c = Conditional::new(a, b).unwrap();
                    if intersection_holds(&p, c).unwrap() {
                        assert!(conditional_holds(&closure, c).unwrap());
                    }
                }
            }
        }
    }
}
