//! Inputs shared by the benchmarks.

use tensorial_core::{parse_presentation, FiniteGroup, Perm, Presentation};

/// `<r, s | r^n, s^2, (rs)^2>`, the dihedral group of order `2n`.
pub fn dihedral_presentation(n: u32) -> Presentation {
    parse_presentation(&format!("<r, s | r^{n}, s^2, (rs)^2>")).expect("well-formed")
}

/// Generators of the symmetric group on `n` points: a transposition and an
/// `n`-cycle.
pub fn symmetric_generators(n: u32) -> Vec<Perm> {
    let mut swap: Vec<u32> = (0..n).collect();
    swap.swap(0, 1);
    let cycle: Vec<u32> = (0..n).map(|i| (i + 1) % n).collect();
    vec![Perm::from_images(swap).expect("bijection"), Perm::from_images(cycle).expect("bijection")]
}

pub fn builtin(name: &str) -> FiniteGroup {
    FiniteGroup::builtin(name).expect("known builtin")
}
