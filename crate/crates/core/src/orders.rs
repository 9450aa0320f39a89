//! Total preorders over the worlds, stored as ordered partitions.
//!
//! Block 0 is the most plausible. Two TPOs are equal iff their block
//! sequences are equal.

use std::fmt;

use thiserror::Error;

use crate::logic::{Proposition, Universe, World};

/// Enumeration cap on the number of worlds (541 TPOs at five worlds).
pub const DEFAULT_WORLD_CAP: usize = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("block {block} is empty")]
    EmptyBlock { block: usize },
    #[error("world #{} appears again in block {block}", world.index())]
    Overlap { world: World, block: usize },
    #[error("world #{} is not in any block", world.index())]
    Uncovered { world: World },
    #[error("block {block} ranges over {found} worlds, expected {expected}")]
    WrongUniverse { block: usize, expected: usize, found: usize },
    #[error("universe mismatch: {left} worlds vs {right} worlds")]
    UniverseMismatch { left: usize, right: usize },
    #[error("a profile needs at least one TPO")]
    EmptyProfile,
    #[error("{size} worlds exceeds the enumeration cap of {cap}")]
    TooLarge { size: usize, cap: usize },
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tpo {
    size: u8,
    blocks: Vec<Proposition>,
}

impl Tpo {
    /// Validates an ordered partition given lowest block first. Block
    /// numbers in errors are 1-based.
    pub fn from_blocks(size: usize, blocks: Vec<Proposition>) -> Result<Tpo, OrderError> {
        let mut seen = Proposition::empty(size);
        for (i, &b) in blocks.iter().enumerate() {
            if b.size() != size {
                return Err(OrderError::WrongUniverse { block: i + 1, expected: size, found: b.size() });
            }
            if b.is_empty() {
                return Err(OrderError::EmptyBlock { block: i + 1 });
            }
            if let Some(world) = (b & seen).worlds().next() {
                return Err(OrderError::Overlap { world, block: i + 1 });
            }
            seen = seen | b;
        }
        if let Some(world) = (!seen).worlds().next() {
            return Err(OrderError::Uncovered { world });
        }
        Ok(Tpo { size: size as u8, blocks })
    }

    /// Groups worlds by `key`, lower keys more plausible.
    pub fn from_keys<K: Ord>(size: usize, key: impl Fn(World) -> K) -> Tpo {
        let mut keyed: Vec<(K, World)> = (0..size).map(World::new).map(|w| (key(w), w)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        let mut blocks: Vec<Proposition> = Vec::new();
        let mut prev: Option<&K> = None;
        for (k, w) in &keyed {
            let single = Proposition::singleton(size, *w);
            match (prev, blocks.last_mut()) {
                (Some(p), Some(last)) if p == k => *last = *last | single,
                _ => blocks.push(single),
            }
            prev = Some(k);
        }
        Tpo { size: size as u8, blocks }
    }

    /// The TPO with every world equally plausible.
    pub fn flat(size: usize) -> Tpo {
        Tpo { size: size as u8, blocks: vec![Proposition::full(size)] }
    }

    pub fn size(&self) -> usize {
        self.size as usize
    }

    pub fn blocks(&self) -> &[Proposition] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// 1-based absolute rank.
    pub fn rank(&self, world: World) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(world))
            .map(|i| i + 1)
            .expect("world outside the universe")
    }

    pub fn ranks(&self) -> Vec<usize> {
        let mut ranks = vec![0; self.size()];
        for (i, b) in self.blocks.iter().enumerate() {
            for w in b.worlds() {
                ranks[w.index()] = i + 1;
            }
        }
        ranks
    }

    /// The most plausible worlds of `s`; empty iff `s` is.
    pub fn min_set(&self, s: Proposition) -> Proposition {
        assert_eq!(s.size(), self.size(), "proposition from another universe");
        self.blocks
            .iter()
            .map(|&b| b & s)
            .find(|m| !m.is_empty())
            .unwrap_or(s)
    }

    pub fn checked_min_set(&self, s: Proposition) -> Result<Proposition, OrderError> {
        if s.size() != self.size() {
            return Err(OrderError::UniverseMismatch { left: self.size(), right: s.size() });
        }
        Ok(self.min_set(s))
    }

    /// Most plausible worlds overall.
    pub fn bottom(&self) -> Proposition {
        self.blocks[0]
    }

    pub fn leq(&self, x: World, y: World) -> bool {
        self.rank(x) <= self.rank(y)
    }

    pub fn lt(&self, x: World, y: World) -> bool {
        self.rank(x) < self.rank(y)
    }

    pub fn equiv(&self, x: World, y: World) -> bool {
        self.rank(x) == self.rank(y)
    }

    /// `self ⊒ other`: identical, or at the first differing block `self`'s
    /// block strictly contains `other`'s.
    pub fn flatter_or_equal(&self, other: &Tpo) -> bool {
        assert_eq!(self.size, other.size, "TPOs over different universes");
        for (s, t) in self.blocks.iter().zip(&other.blocks) {
            if s != t {
                return t.is_subset(*s);
            }
        }
        self.blocks.len() == other.blocks.len()
    }

    pub fn checked_flatter_or_equal(&self, other: &Tpo) -> Result<bool, OrderError> {
        if self.size != other.size {
            return Err(OrderError::UniverseMismatch { left: self.size(), right: other.size() });
        }
        Ok(self.flatter_or_equal(other))
    }

    /// Canonical text, e.g. `[w z] < [x y]`.
    pub fn render(&self, universe: &Universe) -> String {
        assert_eq!(universe.size(), self.size());
        self.blocks
            .iter()
            .map(|&b| format!("[{}]", universe.render_block(b)))
            .collect::<Vec<_>>()
            .join(" < ")
    }
}

impl fmt::Debug for Tpo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<Vec<usize>> =
            self.blocks.iter().map(|b| b.worlds().map(|w| w.index()).collect()).collect();
        write!(f, "Tpo{blocks:?}")
    }
}

/// Every TPO over `size` worlds, with the default cap.
pub fn enumerate_tpos(size: usize) -> Result<Vec<Tpo>, OrderError> {
    enumerate_tpos_with_cap(size, DEFAULT_WORLD_CAP)
}

/// Every ordered partition of `size` worlds exactly once: by number of
/// blocks, then lexicographically on the block bitmasks.
pub fn enumerate_tpos_with_cap(size: usize, cap: usize) -> Result<Vec<Tpo>, OrderError> {
    if size > cap || size >= 64 {
        return Err(OrderError::TooLarge { size, cap });
    }
    let all = Proposition::full(size).bits();
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    for k in 1..=size {
        partitions(size, all, k, &mut prefix, &mut out);
    }
    Ok(out)
}

fn partitions(size: usize, remaining: u64, k: usize, prefix: &mut Vec<u64>, out: &mut Vec<Tpo>) {
    if k == 1 {
        prefix.push(remaining);
        let blocks = prefix.iter().map(|&b| Proposition::from_bits(size, b).unwrap()).collect();
        out.push(Tpo { size: size as u8, blocks });
        prefix.pop();
        return;
    }
    // nonempty submasks in increasing order
    let mut sub = 0u64;
    loop {
        sub = sub.wrapping_sub(remaining) & remaining;
        if sub == 0 {
            break;
        }
        let rest = remaining & !sub;
        if rest.count_ones() as usize >= k - 1 {
            prefix.push(sub);
            partitions(size, rest, k - 1, prefix, out);
            prefix.pop();
        }
    }
}

/// A nonempty sequence of TPOs over one universe. Indices are 0-based in
/// the API and 1-based in rendered output.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Profile {
    entries: Vec<Tpo>,
}

impl Profile {
    pub fn new(entries: Vec<Tpo>) -> Result<Profile, OrderError> {
        let first = entries.first().ok_or(OrderError::EmptyProfile)?;
        if let Some(t) = entries.iter().find(|t| t.size != first.size) {
            return Err(OrderError::UniverseMismatch { left: first.size(), right: t.size() });
        }
        Ok(Profile { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn size(&self) -> usize {
        self.entries[0].size()
    }

    pub fn entries(&self) -> &[Tpo] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> &Tpo {
        &self.entries[i]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Tpo> {
        self.entries.iter()
    }

    /// `⋃_i min(≼_i, s)`.
    pub fn union_of_minima(&self, s: Proposition) -> Proposition {
        self.entries.iter().fold(Proposition::empty(self.size()), |acc, t| acc | t.min_set(s))
    }

    pub fn render(&self, universe: &Universe) -> String {
        self.entries.iter().map(|t| t.render(universe)).collect::<Vec<_>>().join(" ; ")
    }
}

/// All `arity`-tuples of `tpos`, first entry varying slowest.
pub fn enumerate_profiles(tpos: &[Tpo], arity: usize) -> impl Iterator<Item = Profile> + '_ {
    let mut counter = vec![0usize; arity];
    let mut done = tpos.is_empty() || arity == 0;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let profile = Profile { entries: counter.iter().map(|&i| tpos[i].clone()).collect() };
        done = true;
        for slot in counter.iter_mut().rev() {
            *slot += 1;
            if *slot < tpos.len() {
                done = false;
                break;
            }
            *slot = 0;
        }
        Some(profile)
    })
}
