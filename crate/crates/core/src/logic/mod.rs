//! Finite propositional semantics.
//!
//! Every sentence is identified with its model set, a [`Proposition`]. A
//! [`Universe`] fixes the worlds and, when it is built from atoms, the bit
//! layout of each world index: bit `k` of the index is the truth value of
//! atom `k`.

mod formula;

pub use formula::{parse_formula, Formula, ParseError};

use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use thiserror::Error;

/// Default cap on the number of atoms in a universe (32 worlds).
pub const DEFAULT_ATOM_CAP: usize = 5;

/// Largest number of worlds a [`Proposition`] can hold.
pub const MAX_WORLDS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LogicError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("universe mismatch: {left} worlds vs {right} worlds")]
    UniverseMismatch { left: usize, right: usize },
    #[error("invalid name `{0}`: names must match [a-z][a-z0-9_]* and not be `true`/`false`")]
    InvalidName(String),
    #[error("name `{0}` declared twice")]
    DuplicateName(String),
    #[error("a universe needs at least one atom or world")]
    EmptyUniverse,
    #[error("{count} atoms exceeds the cap of {cap}")]
    TooManyAtoms { count: usize, cap: usize },
    #[error("{0} worlds exceeds the limit of 64")]
    TooManyWorlds(usize),
    #[error("bits {bits:#x} fall outside a universe of {size} worlds")]
    BitsOutOfRange { bits: u64, size: usize },
}

/// A world, identified by its index in the universe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct World(u8);

impl World {
    pub fn new(index: usize) -> World {
        assert!(index < MAX_WORLDS, "world index {index} out of range");
        World(index as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A set of worlds of a universe with `size` worlds.
///
/// Propositions over different universes never compare equal. The operator
/// impls (`|`, `&`, `-`, `!`) panic on a size mismatch; the `checked_*`
/// methods report it instead.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Proposition {
    size: u8,
    bits: u64,
}

fn full_mask(size: usize) -> u64 {
    if size == 64 {
        u64::MAX
    } else {
        (1u64 << size) - 1
    }
}

impl Proposition {
    pub fn empty(size: usize) -> Proposition {
        assert!(size <= MAX_WORLDS);
        Proposition { size: size as u8, bits: 0 }
    }

    pub fn full(size: usize) -> Proposition {
        assert!(size <= MAX_WORLDS);
        Proposition { size: size as u8, bits: full_mask(size) }
    }

    pub fn from_bits(size: usize, bits: u64) -> Result<Proposition, LogicError> {
        if size > MAX_WORLDS {
            return Err(LogicError::TooManyWorlds(size));
        }
        if bits & !full_mask(size) != 0 {
            return Err(LogicError::BitsOutOfRange { bits, size });
        }
        Ok(Proposition { size: size as u8, bits })
    }

    pub fn from_worlds(size: usize, worlds: impl IntoIterator<Item = World>) -> Proposition {
        let mut p = Proposition::empty(size);
        for w in worlds {
            assert!(w.index() < size, "world {} outside universe of {size}", w.index());
            p.bits |= 1 << w.index();
        }
        p
    }

    pub fn singleton(size: usize, world: World) -> Proposition {
        Proposition::from_worlds(size, [world])
    }

    pub fn size(self) -> usize {
        self.size as usize
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn is_full(self) -> bool {
        self.bits == full_mask(self.size())
    }

    pub fn contains(self, world: World) -> bool {
        world.index() < self.size() && self.bits & (1 << world.index()) != 0
    }

    /// Worlds in increasing index order.
    pub fn worlds(self) -> impl Iterator<Item = World> {
        let mut bits = self.bits;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros();
            bits &= bits - 1;
            Some(World(i as u8))
        })
    }

    pub fn complement(self) -> Proposition {
        Proposition { size: self.size, bits: !self.bits & full_mask(self.size()) }
    }

    pub fn is_subset(self, other: Proposition) -> bool {
        self.same_universe(other);
        self.bits & !other.bits == 0
    }

    pub fn intersects(self, other: Proposition) -> bool {
        self.same_universe(other);
        self.bits & other.bits != 0
    }

    pub fn checked_union(self, other: Proposition) -> Result<Proposition, LogicError> {
        self.check_universe(other)?;
        Ok(self | other)
    }

    pub fn checked_intersection(self, other: Proposition) -> Result<Proposition, LogicError> {
        self.check_universe(other)?;
        Ok(self & other)
    }

    pub fn checked_subset(self, other: Proposition) -> Result<bool, LogicError> {
        self.check_universe(other)?;
        Ok(self.is_subset(other))
    }

    pub fn check_universe(self, other: Proposition) -> Result<(), LogicError> {
        if self.size == other.size {
            Ok(())
        } else {
            Err(LogicError::UniverseMismatch { left: self.size(), right: other.size() })
        }
    }

    fn same_universe(self, other: Proposition) {
        assert_eq!(self.size, other.size, "propositions over different universes");
    }

    /// Every proposition over a universe of `size` worlds, by increasing bitmask.
    pub fn all(size: usize) -> impl Iterator<Item = Proposition> {
        assert!(size < 64, "cannot enumerate all propositions over {size} worlds");
        (0..1u64 << size).map(move |bits| Proposition { size: size as u8, bits })
    }
}

impl fmt::Debug for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.worlds().map(|w| w.index())).finish()
    }
}

impl BitOr for Proposition {
    type Output = Proposition;
    fn bitor(self, rhs: Proposition) -> Proposition {
        self.same_universe(rhs);
        Proposition { size: self.size, bits: self.bits | rhs.bits }
    }
}

impl BitAnd for Proposition {
    type Output = Proposition;
    fn bitand(self, rhs: Proposition) -> Proposition {
        self.same_universe(rhs);
        Proposition { size: self.size, bits: self.bits & rhs.bits }
    }
}

impl Sub for Proposition {
    type Output = Proposition;
    fn sub(self, rhs: Proposition) -> Proposition {
        self.same_universe(rhs);
        Proposition { size: self.size, bits: self.bits & !rhs.bits }
    }
}

impl Not for Proposition {
    type Output = Proposition;
    fn not(self) -> Proposition {
        self.complement()
    }
}

/// Belief sets through their model sets.
///
/// A deductively closed theory over a finite language is fixed by its model
/// set, and the correspondence is inclusion-reversing: `T1 ⊆ T2` iff
/// `models(T2) ⊆ models(T1)`.
pub mod theory {
    use super::{LogicError, Proposition};

    /// Model set of `Cn(∅)`.
    pub fn tautologies(size: usize) -> Proposition {
        Proposition::full(size)
    }

    /// `T1 ⊆ T2`, given the model sets of both theories.
    pub fn includes(t1_models: Proposition, t2_models: Proposition) -> Result<bool, LogicError> {
        t2_models.checked_subset(t1_models)
    }

    /// Model set of `T1 ∩ T2`.
    pub fn intersection(t1_models: Proposition, t2_models: Proposition) -> Result<Proposition, LogicError> {
        t1_models.checked_union(t2_models)
    }

    /// Model set of `Cn(T1 ∪ T2)`.
    pub fn join(t1_models: Proposition, t2_models: Proposition) -> Result<Proposition, LogicError> {
        t1_models.checked_intersection(t2_models)
    }

    /// Whether the theory with these models contains the sentence `a`.
    pub fn contains(models: Proposition, a: Proposition) -> bool {
        models.is_subset(a)
    }

    pub fn is_tautology(a: Proposition) -> bool {
        a.is_full()
    }
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some('a'..='z'))
        && chars.all(|c| matches!(c, 'a'..='z' | '0'..='9' | '_'))
        && name != "true"
        && name != "false"
}

/// The worlds under discussion, optionally generated from atoms.
///
/// An atom universe has `2^n` worlds named by their minterms (`p&~q`). An
/// abstract universe has explicitly named worlds; formulas over it treat each
/// world name as an atom true at exactly that world.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Universe {
    atoms: Option<Vec<String>>,
    names: Vec<String>,
}

impl Universe {
    pub fn from_atoms<S: AsRef<str>>(atoms: &[S]) -> Result<Universe, LogicError> {
        Universe::from_atoms_with_cap(atoms, DEFAULT_ATOM_CAP)
    }

    pub fn from_atoms_with_cap<S: AsRef<str>>(atoms: &[S], cap: usize) -> Result<Universe, LogicError> {
        let atoms: Vec<String> = atoms.iter().map(|a| a.as_ref().to_string()).collect();
        check_names(&atoms)?;
        let cap = cap.min(6);
        if atoms.len() > cap {
            return Err(LogicError::TooManyAtoms { count: atoms.len(), cap });
        }
        let names = (0..1usize << atoms.len())
            .map(|index| {
                atoms
                    .iter()
                    .enumerate()
                    .map(|(k, a)| if index >> k & 1 == 1 { a.clone() } else { format!("~{a}") })
                    .collect::<Vec<_>>()
                    .join("&")
            })
            .collect();
        Ok(Universe { atoms: Some(atoms), names })
    }

    pub fn from_world_names<S: AsRef<str>>(names: &[S]) -> Result<Universe, LogicError> {
        let names: Vec<String> = names.iter().map(|a| a.as_ref().to_string()).collect();
        check_names(&names)?;
        if names.len() > MAX_WORLDS {
            return Err(LogicError::TooManyWorlds(names.len()));
        }
        Ok(Universe { atoms: None, names })
    }

    /// Abstract universe with `size` worlds: `x y z w` for up to four worlds,
    /// `w1 … wn` beyond that.
    pub fn with_size(size: usize) -> Universe {
        assert!((1..=MAX_WORLDS).contains(&size), "universe size {size} out of range");
        let names = if size <= 4 {
            ["x", "y", "z", "w"][..size].iter().map(|s| s.to_string()).collect()
        } else {
            (1..=size).map(|i| format!("w{i}")).collect()
        };
        Universe { atoms: None, names }
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn atoms(&self) -> Option<&[String]> {
        self.atoms.as_deref()
    }

    pub fn worlds(&self) -> impl Iterator<Item = World> {
        (0..self.size()).map(World::new)
    }

    pub fn world_name(&self, world: World) -> &str {
        &self.names[world.index()]
    }

    pub fn world(&self, name: &str) -> Option<World> {
        self.names.iter().position(|n| n == name).map(World::new)
    }

    pub fn full(&self) -> Proposition {
        Proposition::full(self.size())
    }

    pub fn empty(&self) -> Proposition {
        Proposition::empty(self.size())
    }

    pub fn set<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> Result<Proposition, LogicError> {
        let mut p = self.empty();
        for name in names {
            let w = self.world(name).ok_or_else(|| LogicError::UnknownAtom(name.to_string()))?;
            p = p | Proposition::singleton(self.size(), w);
        }
        Ok(p)
    }

    /// The worlds satisfying `formula`.
    pub fn models(&self, formula: &Formula) -> Result<Proposition, LogicError> {
        let size = self.size();
        Ok(match formula {
            Formula::True => Proposition::full(size),
            Formula::False => Proposition::empty(size),
            Formula::Atom(name) => self.atom_models(name)?,
            Formula::Not(f) => !self.models(f)?,
            Formula::And(a, b) => self.models(a)? & self.models(b)?,
            Formula::Or(a, b) => self.models(a)? | self.models(b)?,
            Formula::Implies(a, b) => !self.models(a)? | self.models(b)?,
            Formula::Iff(a, b) => {
                let (a, b) = (self.models(a)?, self.models(b)?);
                (a & b) | (!a & !b)
            }
        })
    }

    fn atom_models(&self, name: &str) -> Result<Proposition, LogicError> {
        match &self.atoms {
            Some(atoms) => {
                let k = atoms
                    .iter()
                    .position(|a| a == name)
                    .ok_or_else(|| LogicError::UnknownAtom(name.to_string()))?;
                Ok(Proposition::from_worlds(
                    self.size(),
                    self.worlds().filter(|w| w.index() >> k & 1 == 1),
                ))
            }
            None => self.set([name]),
        }
    }

    /// `{x, y}` style listing.
    pub fn render_set(&self, p: Proposition) -> String {
        let names: Vec<&str> = p.worlds().map(|w| self.world_name(w)).collect();
        format!("{{{}}}", names.join(", "))
    }

    /// Full disjunctive normal form of `p`: one disjunct per world.
    pub fn dnf(&self, p: Proposition) -> String {
        if p.is_empty() {
            return "false".to_string();
        }
        p.worlds().map(|w| self.world_name(w)).collect::<Vec<_>>().join(" | ")
    }

    /// Contents of one bracketed TPO block: space-separated world names for
    /// abstract universes, a DNF formula for atom universes.
    pub fn render_block(&self, p: Proposition) -> String {
        if self.atoms.is_some() {
            self.dnf(p)
        } else {
            let mut names: Vec<&str> = p.worlds().map(|w| self.world_name(w)).collect();
            names.sort_unstable();
            names.join(" ")
        }
    }
}

fn check_names(names: &[String]) -> Result<(), LogicError> {
    if names.is_empty() {
        return Err(LogicError::EmptyUniverse);
    }
    for (i, n) in names.iter().enumerate() {
        if !valid_name(n) {
            return Err(LogicError::InvalidName(n.clone()));
        }
        if names[..i].contains(n) {
            return Err(LogicError::DuplicateName(n.clone()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pq() -> Universe {
        Universe::from_atoms(&["p", "q"]).unwrap()
    }

    // x = <p,q>, y = <p,~q>, z = <~p,q>, w = <~p,~q>
    fn xyzw(u: &Universe) -> [Proposition; 4] {
        let m = |s: &str| u.models(&parse_formula(s).unwrap()).unwrap();
        [m("p&q"), m("p&~q"), m("~p&q"), m("~p&~q")]
    }

    #[test]
    fn bit_layout_is_atom_k_at_bit_k() {
        let u = pq();
        assert_eq!(u.world_name(World::new(0)), "~p&~q");
        assert_eq!(u.world_name(World::new(1)), "p&~q");
        assert_eq!(u.world_name(World::new(2)), "~p&q");
        assert_eq!(u.world_name(World::new(3)), "p&q");
    }

    #[test]
    fn models_of_example_formulas() {
        let u = pq();
        let [x, y, z, w] = xyzw(&u);
        let m = |s: &str| u.models(&parse_formula(s).unwrap()).unwrap();
        assert_eq!(m("p & ~q"), y);
        assert_eq!(m("p | ~p"), x | y | z | w);
        assert_eq!(m("~(p|q)"), w);
        assert_eq!(m("p -> q"), x | z | w);
        assert_eq!(m("p <-> q"), x | w);
        assert_eq!(m("false"), u.empty());
    }

    #[test]
    fn unknown_atom_is_named() {
        let err = pq().models(&parse_formula("p & r").unwrap()).unwrap_err();
        assert_eq!(err, LogicError::UnknownAtom("r".into()));
    }

    #[test]
    fn abstract_worlds_act_as_atoms() {
        let u = Universe::from_world_names(&["x", "y", "z", "w"]).unwrap();
        let p = u.models(&parse_formula("x | w").unwrap()).unwrap();
        assert_eq!(p, u.set(["x", "w"]).unwrap());
        assert_eq!(u.models(&parse_formula("~x").unwrap()).unwrap(), u.set(["y", "z", "w"]).unwrap());
    }

    #[test]
    fn theory_duality() {
        let u = pq();
        let [x, y, z, w] = xyzw(&u);
        assert!(y.is_subset(x | y));
        assert_eq!(theory::tautologies(4), u.full());
        // Intersecting the theories with models {x,z,w} and {x,y,w}.
        assert_eq!(theory::intersection(x | z | w, x | y | w).unwrap(), u.full());
        assert_eq!(theory::join(x | z | w, x | y | w).unwrap(), x | w);
        assert!(theory::includes(x | y | z | w, x).unwrap());
        assert!(!theory::includes(x, x | y).unwrap());
    }

    #[test]
    fn mismatched_universes_are_reported() {
        let a = Proposition::full(3);
        let b = Proposition::full(4);
        assert_eq!(a.checked_union(b), Err(LogicError::UniverseMismatch { left: 3, right: 4 }));
        assert!(a.checked_subset(b).is_err());
    }

    #[test]
    fn universe_construction_errors() {
        assert_eq!(Universe::from_atoms::<&str>(&[]), Err(LogicError::EmptyUniverse));
        assert_eq!(Universe::from_atoms(&["p", "p"]), Err(LogicError::DuplicateName("p".into())));
        assert_eq!(Universe::from_atoms(&["P"]), Err(LogicError::InvalidName("P".into())));
        assert_eq!(Universe::from_atoms(&["true"]), Err(LogicError::InvalidName("true".into())));
        assert_eq!(
            Universe::from_atoms(&["a", "b", "c", "d", "e", "f"]),
            Err(LogicError::TooManyAtoms { count: 6, cap: 5 })
        );
        assert_eq!(Universe::from_atoms_with_cap(&["a", "b", "c", "d", "e", "f"], 6).unwrap().size(), 64);
        assert!(Proposition::from_bits(3, 0b1000).is_err());
    }

    #[test]
    fn dnf_rendering() {
        let u = pq();
        let [x, y, ..] = xyzw(&u);
        assert_eq!(u.dnf(x | y), "p&~q | p&q");
        assert_eq!(u.dnf(u.empty()), "false");
        let m = u.models(&parse_formula(&u.dnf(x | y)).unwrap()).unwrap();
        assert_eq!(m, x | y);
    }
}
