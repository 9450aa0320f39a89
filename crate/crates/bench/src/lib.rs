//! Inputs shared by the benchmarks.

use teamqueue::{enumerate_tpos, Profile};

/// A profile of `arity` TPOs over `worlds` worlds, taken at a fixed stride
/// through the enumeration so that entries differ.
pub fn spread_profile(worlds: usize, arity: usize) -> Profile {
    let tpos = enumerate_tpos(worlds).expect("small universe");
    let stride = (tpos.len() / arity.max(1)).max(1);
    let entries = (0..arity).map(|i| tpos[(i * stride + i) % tpos.len()].clone()).collect();
    Profile::new(entries).expect("nonempty")
}
