//! Small named profiles and states shared by tests, the CLI and benches.
//!
//! Abstract fixtures use the universe `x y z w`. Propositional ones use atoms
//! `p q`, whose worlds in index order are `~p&~q`, `p&~q`, `~p&q`, `p&q`.

use crate::change::{ChangeError, ParallelOperator, SerialContraction};
use crate::logic::{Proposition, Universe};
use crate::orders::{Profile, Tpo};

/// The universe `x y z w`.
pub fn abstract_universe() -> Universe {
    Universe::from_world_names(&["x", "y", "z", "w"]).expect("valid names")
}

/// The singletons `[{x}, {y}, {z}, {w}]` of an `x y z w` universe.
pub fn xyzw(universe: &Universe) -> [Proposition; 4] {
    ["x", "y", "z", "w"].map(|n| universe.set([n]).expect("x y z w universe"))
}

/// Builds a TPO from blocks of world names.
pub fn tpo(universe: &Universe, blocks: &[&[&str]]) -> Tpo {
    let blocks = blocks.iter().map(|b| universe.set(b.iter().copied()).expect("known worlds")).collect();
    Tpo::from_blocks(universe.size(), blocks).expect("valid blocks")
}

/// Four inputs on which STQ and MinRank differ.
pub fn four_input_profile() -> (Universe, Profile) {
    let u = abstract_universe();
    let entries = vec![
        tpo(&u, &[&["w"], &["z"], &["x", "y"]]),
        tpo(&u, &[&["w"], &["y"], &["x", "z"]]),
        tpo(&u, &[&["z"], &["w"], &["x", "y"]]),
        tpo(&u, &[&["z"], &["y"], &["x", "w"]]),
    ];
    let p = Profile::new(entries).expect("nonempty");
    (u, p)
}

/// Two inputs whose pairwise minima do not form a TPO.
pub fn intransitive_pair_profile() -> (Universe, Profile) {
    let u = abstract_universe();
    let entries = vec![
        tpo(&u, &[&["x"], &["w", "z"], &["y"]]),
        tpo(&u, &[&["z"], &["y"], &["x"], &["w"]]),
    ];
    let p = Profile::new(entries).expect("nonempty");
    (u, p)
}

/// Atoms `p q` with `p&q` strictly below the other three worlds.
pub fn single_best_state() -> (Universe, Tpo) {
    let u = Universe::from_atoms(&["p", "q"]).expect("valid atoms");
    let best = u.models(&crate::logic::parse_formula("p & q").expect("formula")).expect("atoms");
    let t = Tpo::from_blocks(u.size(), vec![best, !best]).expect("partition");
    (u, t)
}

/// A deliberately broken serial contraction: it keeps the minima identity
/// but reverses the order among the displaced `A`-worlds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ShuffleContraction;

impl SerialContraction for ShuffleContraction {
    fn contract(&self, t: &Tpo, a: Proposition) -> Result<Tpo, ChangeError> {
        let merged = t.bottom() | t.min_set(!a);
        let top = t.block_count() + 1;
        Ok(Tpo::from_keys(t.size(), |w| {
            if merged.contains(w) {
                0
            } else if a.contains(w) {
                top - t.rank(w)
            } else {
                t.rank(w)
            }
        }))
    }

    fn label(&self) -> String {
        "shuffle".to_string()
    }
}

/// A deliberately broken parallel contraction: it keeps the intersection of
/// the serial belief sets as its bottom block but flattens everything above.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlatteningParallel<C>(pub C);

impl<C: SerialContraction> ParallelOperator for FlatteningParallel<C> {
    fn serial(&self, t: &Tpo, a: Proposition) -> Result<Tpo, ChangeError> {
        self.0.contract(t, a)
    }

    fn contract_set(&self, t: &Tpo, inputs: &[Proposition]) -> Result<Tpo, ChangeError> {
        let mut bottom = Proposition::empty(t.size());
        for &a in inputs {
            bottom = bottom | self.0.contract(t, a)?.bottom();
        }
        let blocks = if bottom.is_full() { vec![bottom] } else { vec![bottom, !bottom] };
        Ok(Tpo::from_blocks(t.size(), blocks)?)
    }

    fn label(&self) -> String {
        format!("flattening({})", self.0.label())
    }
}
