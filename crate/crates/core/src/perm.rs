//! Permutations and permutation groups.
//!
//! Permutations act on the right: `(p * q)(x) = q(p(x))`. A [`PermGroup`]
//! carries a stabilizer chain whose Schreier trees are labelled by strong
//! generators, and every strong generator remembers how it was obtained from
//! the original generators. Groups known to act semiregularly (every subgroup
//! of a regular representation does) get a one-level chain rooted at point 0
//! and skip Schreier generator sifting entirely.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::{AbelianInvariants, LatticeBuilder};

/// Groups larger than this are refused.
pub const MAX_GROUP_ORDER: u64 = 1_000_000;

const NONE: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("image list is not a bijection on 0..{0}")]
    NotBijection(usize),
    #[error("group order exceeds the supported maximum of {MAX_GROUP_ORDER}")]
    CapacityExceeded,
    #[error("element is not a member of the group")]
    NotMember,
    #[error("expected {expected} generator images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("homomorphism is not well defined: relator {relator} maps to a non-identity element")]
    IllDefined { relator: String },
}

/// A bijection of `0..degree`, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm { images: (0..degree as u32).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Perm, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(PermError::NotBijection(n));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1, 2]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Perm, PermError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                let y = cycle[(i + 1) % cycle.len()];
                if x as usize >= degree || y as usize >= degree {
                    return Err(PermError::NotBijection(degree));
                }
                images[x as usize] = y;
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Perm) -> Result<Perm, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.mul(other))
    }

    /// Like [`Perm::compose`] but panics on a degree mismatch.
    pub fn mul(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Perm { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Perm { images }
    }

    /// `by^-1 * self * by`
    pub fn conjugate(&self, by: &Perm) -> Perm {
        let mut images = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[by.images[i] as usize] = by.images[x as usize];
        }
        Perm { images }
    }

    /// `a^-1 * b^-1 * a * b`
    pub fn commutator(a: &Perm, b: &Perm) -> Perm {
        a.inverse().mul(&b.inverse()).mul(a).mul(b)
    }

    pub fn pow(&self, k: i64) -> Perm {
        let mut base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Lengths of all cycles, fixed points included.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            out.push(len);
        }
        out
    }

    /// Element order: the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        use num_integer::Integer;
        self.cycle_lengths().into_iter().fold(1u64, |acc, l| acc.lcm(&(l as u64)))
    }

    /// First point moved by the permutation.
    pub fn first_moved(&self) -> Option<u32> {
        self.images.iter().enumerate().find(|&(i, &x)| i as u32 != x).map(|(i, _)| i as u32)
    }
}

impl TryFrom<Vec<u32>> for Perm {
    type Error = PermError;
    fn try_from(images: Vec<u32>) -> Result<Self, Self::Error> {
        Perm::from_images(images)
    }
}

impl From<Perm> for Vec<u32> {
    fn from(p: Perm) -> Self {
        p.images
    }
}

impl std::ops::Mul for &Perm {
    type Output = Perm;
    fn mul(self, rhs: &Perm) -> Perm {
        Perm::mul(self, rhs)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "()");
        }
        let mut seen = vec![false; self.degree()];
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
                first = false;
                x = self.images[x] as usize;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// A letter of a word over the original generators: generator index and
/// whether it is inverted.
pub type GenLetter = (usize, bool);

/// Straight-line program over the original generators.
#[derive(Clone, Debug, Default)]
struct Slp {
    ops: Vec<SlpOp>,
}

#[derive(Clone, Copy, Debug)]
enum SlpOp {
    Gen(usize),
    Inv(usize),
    Mul(usize, usize),
}

impl Slp {
    fn push(&mut self, op: SlpOp) -> usize {
        self.ops.push(op);
        self.ops.len() - 1
    }

    fn product(&mut self, nodes: &[usize]) -> Option<usize> {
        let mut it = nodes.iter().copied();
        let first = it.next()?;
        Some(it.fold(first, |acc, n| self.push(SlpOp::Mul(acc, n))))
    }

    fn expand(&self, node: usize, inverted: bool, out: &mut Vec<GenLetter>) {
        match self.ops[node] {
            SlpOp::Gen(i) => out.push((i, inverted)),
            SlpOp::Inv(a) => self.expand(a, !inverted, out),
            SlpOp::Mul(a, b) => {
                if inverted {
                    self.expand(b, true, out);
                    self.expand(a, true, out);
                } else {
                    self.expand(a, false, out);
                    self.expand(b, false, out);
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
struct StrongGen {
    perm: Perm,
    inv: Perm,
    node: usize,
    inv_node: usize,
}

#[derive(Clone, Debug)]
struct Level {
    base: u32,
    /// indices into `StabChain::strong`
    gens: Vec<usize>,
    orbit: Vec<u32>,
    /// per point: index into `gens` of the tree edge reaching it, `ROOT` or `NONE`
    label: Vec<u32>,
}

#[derive(Clone, Debug, Default)]
struct StabChain {
    levels: Vec<Level>,
    strong: Vec<StrongGen>,
    slp: Slp,
}

impl StabChain {
    fn add_strong(&mut self, perm: Perm, node: usize) -> usize {
        let inv_node = self.slp.push(SlpOp::Inv(node));
        let inv = perm.inverse();
        self.strong.push(StrongGen { perm, inv, node, inv_node });
        self.strong.len() - 1
    }

    fn build_level(&self, base: u32, gens: Vec<usize>, degree: usize) -> Level {
        let mut label = vec![NONE; degree];
        label[base as usize] = ROOT;
        let mut orbit = vec![base];
        let mut i = 0;
        while i < orbit.len() {
            let p = orbit[i];
            for (j, &g) in gens.iter().enumerate() {
                let q = self.strong[g].perm.apply(p);
                if label[q as usize] == NONE {
                    label[q as usize] = j as u32;
                    orbit.push(q);
                }
            }
            i += 1;
        }
        Level { base, gens, orbit, label }
    }

    /// Strong generators (from the root) whose product is the transversal
    /// element mapping the base point of `level` to `p`.
    fn path(&self, level: usize, mut p: u32) -> Vec<usize> {
        let lv = &self.levels[level];
        let mut out = Vec::new();
        loop {
            let l = lv.label[p as usize];
            debug_assert_ne!(l, NONE);
            if l == ROOT {
                break;
            }
            let s = lv.gens[l as usize];
            out.push(s);
            p = self.strong[s].inv.apply(p);
        }
        out.reverse();
        out
    }

    fn rep(&self, level: usize, p: u32, degree: usize) -> Perm {
        let mut g = Perm::identity(degree);
        for s in self.path(level, p) {
            g = g.mul(&self.strong[s].perm);
        }
        g
    }

    /// Sifts `g` from `from` downward. Returns the residue, the level where
    /// sifting stopped and the strong generators whose inverses were applied.
    fn sift(&self, mut g: Perm, from: usize, track: bool) -> (Perm, usize, Vec<usize>) {
        let mut applied = Vec::new();
        for i in from..self.levels.len() {
            let lv = &self.levels[i];
            let mut p = g.apply(lv.base);
            if lv.label[p as usize] == NONE {
                return (g, i, applied);
            }
            loop {
                let l = lv.label[p as usize];
                if l == ROOT {
                    break;
                }
                let s = lv.gens[l as usize];
                g = g.mul(&self.strong[s].inv);
                if track {
                    applied.push(s);
                }
                p = self.strong[s].inv.apply(p);
            }
        }
        (g, self.levels.len(), applied)
    }

    fn order(&self) -> u64 {
        self.levels.iter().map(|l| l.orbit.len() as u64).product()
    }

    fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    fn rebuild_from(&mut self, from: usize, degree: usize) {
        for i in from..self.levels.len() {
            let fixed: Vec<u32> = self.levels[..i].iter().map(|l| l.base).collect();
            let gens: Vec<usize> = (0..self.strong.len())
                .filter(|&s| fixed.iter().all(|&b| self.strong[s].perm.apply(b) == b))
                .collect();
            let base = self.levels[i].base;
            self.levels[i] = self.build_level(base, gens, degree);
        }
    }

    fn check_capacity(&self) -> Result<(), PermError> {
        let mut order = 1u64;
        for l in &self.levels {
            order = order.saturating_mul(l.orbit.len() as u64);
            if order > MAX_GROUP_ORDER {
                return Err(PermError::CapacityExceeded);
            }
        }
        Ok(())
    }

    /// Deterministic Schreier-Sims.
    fn schreier_sims(degree: usize, gens: &[Perm]) -> Result<StabChain, PermError> {
        let mut chain = StabChain::default();
        let mut seen = HashSet::new();
        for (i, g) in gens.iter().enumerate() {
            let node = chain.slp.push(SlpOp::Gen(i));
            if !g.is_identity() && seen.insert(g.clone()) {
                chain.add_strong(g.clone(), node);
            }
        }
        let mut base: Vec<u32> = Vec::new();
        for s in &chain.strong {
            if base.iter().all(|&b| s.perm.apply(b) == b) {
                base.push(s.perm.first_moved().expect("non-identity"));
            }
        }
        chain.levels = base
            .iter()
            .map(|&b| Level { base: b, gens: Vec::new(), orbit: Vec::new(), label: Vec::new() })
            .collect();
        chain.rebuild_from(0, degree);
        chain.check_capacity()?;

        let mut i = chain.levels.len() as isize - 1;
        while i >= 0 {
            let level = i as usize;
            let mut grew = None;
            'search: for oi in 0..chain.levels[level].orbit.len() {
                let p = chain.levels[level].orbit[oi];
                for gi in 0..chain.levels[level].gens.len() {
                    let s = chain.levels[level].gens[gi];
                    let q = chain.strong[s].perm.apply(p);
                    // skip tree edges, whose Schreier generator is trivial
                    let lq = chain.levels[level].label[q as usize];
                    if lq != ROOT && chain.levels[level].gens[lq as usize] == s {
                        let parent = chain.strong[s].inv.apply(q);
                        if parent == p {
                            continue;
                        }
                    }
                    let up = chain.rep(level, p, degree);
                    let uq = chain.rep(level, q, degree);
                    let schreier = up.mul(&chain.strong[s].perm).mul(&uq.inverse());
                    let (res, drop, applied) = chain.sift(schreier, level + 1, true);
                    if res.is_identity() && drop == chain.levels.len() {
                        continue;
                    }
                    // residue = u_p s u_q^-1 t_1^-1 t_2^-1 ...
                    let mut nodes: Vec<usize> =
                        chain.path(level, p).into_iter().map(|t| chain.strong[t].node).collect();
                    nodes.push(chain.strong[s].node);
                    nodes.extend(chain.path(level, q).into_iter().rev().map(|t| chain.strong[t].inv_node));
                    nodes.extend(applied.iter().map(|&t| chain.strong[t].inv_node));
                    let node = chain.slp.product(&nodes).expect("non-empty word");
                    chain.add_strong(res.clone(), node);
                    if drop == chain.levels.len() {
                        let b = res.first_moved().expect("non-identity residue");
                        chain.levels.push(Level { base: b, gens: Vec::new(), orbit: Vec::new(), label: Vec::new() });
                    }
                    chain.rebuild_from(level + 1, degree);
                    chain.check_capacity()?;
                    grew = Some(drop);
                    break 'search;
                }
            }
            match grew {
                Some(drop) => i = drop as isize,
                None => i -= 1,
            }
        }
        Ok(chain)
    }

    /// One-level chain for a group acting semiregularly.
    fn semiregular(degree: usize, gens: &[Perm]) -> Result<StabChain, PermError> {
        let mut chain = StabChain::default();
        let mut seen = HashSet::new();
        for (i, g) in gens.iter().enumerate() {
            let node = chain.slp.push(SlpOp::Gen(i));
            if !g.is_identity() && seen.insert(g.clone()) {
                chain.add_strong(g.clone(), node);
            }
        }
        if !chain.strong.is_empty() {
            let all = (0..chain.strong.len()).collect();
            let level = chain.build_level(0, all, degree);
            chain.levels.push(level);
        }
        chain.check_capacity()?;
        Ok(chain)
    }
}

/// Breadth-first enumeration of all elements, identified by base images,
/// with a spanning tree of the Cayley graph over the original generators.
#[derive(Debug)]
struct ElementIndex {
    width: usize,
    keys: Vec<u32>,
    lookup: HashMap<Box<[u32]>, u32>,
    /// (parent element, generator index); the identity has `(NONE, NONE)`
    parent: Vec<(u32, u32)>,
}

impl ElementIndex {
    fn build(base: &[u32], gens: &[Perm]) -> ElementIndex {
        let width = base.len();
        let mut idx = ElementIndex { width, keys: base.to_vec(), lookup: HashMap::new(), parent: vec![(NONE, NONE)] };
        idx.lookup.insert(base.into(), 0);
        let mut e = 0usize;
        let mut buf = vec![0u32; width];
        while e < idx.parent.len() {
            for (j, g) in gens.iter().enumerate() {
                for (slot, &x) in buf.iter_mut().zip(&idx.keys[e * width..(e + 1) * width]) {
                    *slot = g.apply(x);
                }
                if !idx.lookup.contains_key(buf.as_slice()) {
                    let id = idx.parent.len() as u32;
                    idx.lookup.insert(buf.clone().into_boxed_slice(), id);
                    idx.keys.extend_from_slice(&buf);
                    idx.parent.push((e as u32, j as u32));
                }
            }
            e += 1;
        }
        idx
    }

    fn len(&self) -> usize {
        self.parent.len()
    }

    fn key(&self, e: usize) -> &[u32] {
        &self.keys[e * self.width..(e + 1) * self.width]
    }

    fn find(&self, key: &[u32]) -> Option<usize> {
        self.lookup.get(key).map(|&i| i as usize)
    }

    /// Index of `e * g` where `g` is any group element.
    fn times(&self, e: usize, g: &Perm) -> Option<usize> {
        let key: Vec<u32> = self.key(e).iter().map(|&x| g.apply(x)).collect();
        self.find(&key)
    }

    /// Generator word (root to element) of the tree path.
    fn word(&self, mut e: usize) -> Vec<usize> {
        let mut out = Vec::new();
        while self.parent[e].0 != NONE {
            out.push(self.parent[e].1 as usize);
            e = self.parent[e].0 as usize;
        }
        out.reverse();
        out
    }
}

/// A finite permutation group with a stabilizer chain.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    semiregular: bool,
    chain: StabChain,
    index: OnceLock<std::sync::Arc<ElementIndex>>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

fn check_degrees(degree: usize, gens: &[Perm]) -> Result<(), PermError> {
    for g in gens {
        if g.degree() != degree {
            return Err(PermError::DegreeMismatch(degree, g.degree()));
        }
    }
    Ok(())
}

impl PermGroup {
    /// The trivial group on `degree` points.
    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup {
            degree,
            generators: Vec::new(),
            semiregular: true,
            chain: StabChain::default(),
            index: OnceLock::new(),
        }
    }

    /// Group generated by `gens`. An empty list yields the trivial group of
    /// degree 1.
    pub fn from_generators(gens: Vec<Perm>) -> Result<PermGroup, PermError> {
        let degree = gens.first().map_or(1, Perm::degree);
        PermGroup::with_degree(degree, gens)
    }

    pub fn with_degree(degree: usize, gens: Vec<Perm>) -> Result<PermGroup, PermError> {
        check_degrees(degree, &gens)?;
        let chain = StabChain::schreier_sims(degree, &gens)?;
        Ok(PermGroup { degree, generators: gens, semiregular: false, chain, index: OnceLock::new() })
    }

    /// Group generated by `gens`, which the caller guarantees to act
    /// semiregularly (all point stabilizers trivial), as any subgroup of a
    /// regular representation does. The chain has the single base point 0.
    pub fn from_semiregular_generators(degree: usize, gens: Vec<Perm>) -> Result<PermGroup, PermError> {
        check_degrees(degree, &gens)?;
        let chain = StabChain::semiregular(degree, &gens)?;
        Ok(PermGroup { degree, generators: gens, semiregular: true, chain, index: OnceLock::new() })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn is_semiregular(&self) -> bool {
        self.semiregular
    }

    pub fn order(&self) -> u64 {
        self.chain.order()
    }

    /// For a semiregular group, the member sending point 0 to `point`.
    pub fn element_at(&self, point: u32) -> Option<Perm> {
        assert!(self.semiregular, "element_at needs a semiregular group");
        if point == 0 {
            return Some(self.identity());
        }
        let level = self.chain.levels.first()?;
        if level.label.get(point as usize).is_none_or(|&l| l == NONE) {
            return None;
        }
        Some(self.chain.rep(0, point, self.degree))
    }

    /// Points in the orbit of 0; for a semiregular group these are the
    /// keys of its elements.
    pub fn orbit_of_zero(&self) -> Vec<u32> {
        self.chain.levels.first().map_or_else(|| vec![0], |l| l.orbit.clone())
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn base(&self) -> Vec<u32> {
        self.chain.base()
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    /// Transversal sizes along the chain.
    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.chain.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (res, drop, _) = self.chain.sift(g.clone(), 0, false);
        drop == self.chain.levels.len() && res.is_identity()
    }

    /// Expresses a member as a word in the original generators, following
    /// the chain's tracked words.
    pub fn word_of(&self, g: &Perm) -> Option<Vec<GenLetter>> {
        if !self.contains(g) {
            return None;
        }
        // g = (applied_k ... applied_1)^-1 read from sifting: g * t_1^-1 ... t_m^-1 = 1
        let (_, _, applied) = self.chain.sift(g.clone(), 0, true);
        let mut out = Vec::new();
        for &s in applied.iter().rev() {
            self.chain.slp.expand(self.chain.strong[s].node, false, &mut out);
        }
        Some(out)
    }

    /// Words of all strong generators, for auditing the chain.
    pub fn strong_generator_words(&self) -> Vec<(Perm, Vec<GenLetter>)> {
        self.chain
            .strong
            .iter()
            .map(|s| {
                let mut w = Vec::new();
                self.chain.slp.expand(s.node, false, &mut w);
                (s.perm.clone(), w)
            })
            .collect()
    }

    /// Evaluates a word over the original generators.
    pub fn evaluate_word(&self, word: &[GenLetter]) -> Perm {
        word.iter().fold(self.identity(), |acc, &(i, inv)| {
            if inv {
                acc.mul(&self.generators[i].inverse())
            } else {
                acc.mul(&self.generators[i])
            }
        })
    }

    /// Checks that every generator sifts to the identity.
    pub fn chain_is_consistent(&self) -> bool {
        self.generators.iter().all(|g| self.contains(g))
    }

    fn index(&self) -> std::sync::Arc<ElementIndex> {
        self.index
            .get_or_init(|| std::sync::Arc::new(ElementIndex::build(&self.base(), &self.generators)))
            .clone()
    }

    /// Base images of a member; these identify members uniquely.
    pub fn element_key(&self, g: &Perm) -> Vec<u32> {
        self.base().iter().map(|&b| g.apply(b)).collect()
    }

    fn element_from_index(&self, idx: &ElementIndex, e: usize) -> Perm {
        idx.word(e).into_iter().fold(self.identity(), |acc, j| acc.mul(&self.generators[j]))
    }

    /// All elements in breadth-first order over the generators.
    pub fn elements(&self) -> Vec<Perm> {
        let idx = self.index();
        (0..idx.len()).map(|e| self.element_from_index(&idx, e)).collect()
    }

    /// Subgroup generated by members of `self`.
    pub fn subgroup(&self, gens: Vec<Perm>) -> Result<PermGroup, PermError> {
        for g in &gens {
            if !self.contains(g) {
                return Err(PermError::NotMember);
            }
        }
        self.subgroup_unchecked(gens)
    }

    fn subgroup_unchecked(&self, gens: Vec<Perm>) -> Result<PermGroup, PermError> {
        if self.semiregular {
            PermGroup::from_semiregular_generators(self.degree, gens)
        } else {
            PermGroup::with_degree(self.degree, gens)
        }
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// `self` is normalized by every generator of `ambient`.
    pub fn is_normal_in(&self, ambient: &PermGroup) -> bool {
        self.is_subgroup_of(ambient)
            && ambient
                .generators
                .iter()
                .all(|c| self.generators.iter().all(|g| self.contains(&g.conjugate(c))))
    }

    /// Greedily selected generators, each enlarging the subgroup generated by
    /// the previous ones.
    pub fn reduced_generators(&self) -> Vec<Perm> {
        let base = self.base();
        let key = |g: &Perm, x: &[u32]| -> Vec<u32> { x.iter().map(|&p| g.apply(p)).collect() };
        let mut chosen: Vec<Perm> = Vec::new();
        let mut members: HashSet<Vec<u32>> = HashSet::from([base.clone()]);
        for g in &self.generators {
            if members.contains(&key(g, &base)) {
                continue;
            }
            chosen.push(g.clone());
            let mut queue: Vec<Vec<u32>> = members.iter().cloned().collect();
            while let Some(x) = queue.pop() {
                for c in &chosen {
                    let y = key(c, &x);
                    if members.insert(y.clone()) {
                        queue.push(y);
                    }
                }
            }
        }
        chosen
    }

    /// Smallest normal subgroup containing the members `s`.
    pub fn normal_closure(&self, s: &[Perm]) -> Result<PermGroup, PermError> {
        for g in s {
            if !self.contains(g) {
                return Err(PermError::NotMember);
            }
        }
        let conjugators = self.reduced_generators();
        let mut gens: Vec<Perm> = s.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut closure = self.subgroup_unchecked(gens.clone())?;
        let mut i = 0;
        while i < gens.len() {
            for c in &conjugators {
                let y = gens[i].conjugate(c);
                if !closure.contains(&y) {
                    gens.push(y);
                    closure = self.subgroup_unchecked(gens.clone())?;
                }
            }
            i += 1;
        }
        Ok(closure)
    }

    /// Normal closure of the commutators of generator pairs.
    pub fn derived_subgroup(&self) -> PermGroup {
        let gens = self.reduced_generators();
        let mut comms = Vec::new();
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                let c = Perm::commutator(&gens[i], &gens[j]);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms).expect("commutators of members are members")
    }

    /// Size of the conjugacy class of `x`, i.e. `[G : C_G(x)]`.
    pub fn centralizer_index(&self, x: &Perm) -> Result<u64, PermError> {
        if !self.contains(x) {
            return Err(PermError::NotMember);
        }
        let base = self.base();
        let conj: Vec<(Perm, Perm)> = self.reduced_generators().into_iter().map(|c| (c.inverse(), c)).collect();
        let mut seen: HashSet<Vec<u32>> = HashSet::from([self.element_key(x)]);
        let mut queue = vec![x.clone()];
        while let Some(y) = queue.pop() {
            for (ci, c) in &conj {
                // base images of c^-1 y c
                let key: Vec<u32> = base.iter().map(|&b| c.apply(y.apply(ci.apply(b)))).collect();
                if seen.insert(key) {
                    queue.push(y.conjugate(c));
                }
            }
        }
        Ok(seen.len() as u64)
    }

    /// Invariant factors of the abelianization, from the Schreier relators of
    /// the Cayley graph spanning tree.
    pub fn abelian_invariants(&self) -> AbelianInvariants {
        let reduced = self
            .subgroup_unchecked(self.reduced_generators())
            .expect("subgroup of an admissible group is admissible");
        let r = reduced.generators.len();
        if r == 0 {
            return AbelianInvariants::trivial();
        }
        let idx = reduced.index();
        let (lattice, _) = relation_lattice(&reduced, &idx);
        lattice.quotient_invariants().expect("finite group has finite abelianization")
    }

    /// Relation lattice of the abelianization on the reduced generating set,
    /// together with the exponent vector of every element.
    pub fn abelianization_data(&self) -> (LatticeBuilder, Vec<Vec<i64>>) {
        let reduced = self
            .subgroup_unchecked(self.reduced_generators())
            .expect("subgroup of an admissible group is admissible");
        let idx = reduced.index();
        relation_lattice(&reduced, &idx)
    }

    /// Orders of all elements, breadth-first order.
    pub fn element_orders(&self) -> Vec<u64> {
        self.elements().iter().map(Perm::order).collect()
    }
}

fn relation_lattice(group: &PermGroup, idx: &ElementIndex) -> (LatticeBuilder, Vec<Vec<i64>>) {
    let r = group.generators.len();
    let mut exps: Vec<Vec<i64>> = Vec::with_capacity(idx.len());
    exps.push(vec![0; r]);
    for e in 1..idx.len() {
        let (p, j) = idx.parent[e];
        let mut v = exps[p as usize].clone();
        v[j as usize] += 1;
        exps.push(v);
    }
    let mut lattice = LatticeBuilder::new(r);
    let mut row = vec![0i64; r];
    for e in 0..idx.len() {
        for (j, g) in group.generators.iter().enumerate() {
            let child = idx.times(e, g).expect("closed under generators");
            if idx.parent[child] == (e as u32, j as u32) {
                continue;
            }
            for k in 0..r {
                row[k] = exps[e][k] - exps[child][k];
            }
            row[j] += 1;
            lattice.insert_i64(&row);
        }
    }
    (lattice, exps)
}

/// A homomorphism given by images of the source generators, checked for
/// well-definedness on every edge of the source's Cayley graph.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: PermGroup,
    target: PermGroup,
    generator_images: Vec<Perm>,
    /// target base images of the image of every source element
    image_keys: Vec<u32>,
}

impl GroupHom {
    pub fn new(source: PermGroup, target: PermGroup, generator_images: Vec<Perm>) -> Result<GroupHom, PermError> {
        if generator_images.len() != source.generators.len() {
            return Err(PermError::ImageCount { expected: source.generators.len(), got: generator_images.len() });
        }
        for g in &generator_images {
            if !target.contains(g) {
                return Err(PermError::NotMember);
            }
        }
        let idx = source.index();
        let tbase = target.base();
        let w = tbase.len();
        let mut image_keys = Vec::with_capacity(idx.len() * w);
        image_keys.extend_from_slice(&tbase);
        for e in 1..idx.len() {
            let (p, j) = idx.parent[e];
            let p = p as usize;
            for k in 0..w {
                let x = image_keys[p * w + k];
                image_keys.push(generator_images[j as usize].apply(x));
            }
        }
        let mut expected = vec![0u32; w];
        for e in 0..idx.len() {
            for (j, g) in source.generators.iter().enumerate() {
                let child = idx.times(e, g).expect("closed under generators");
                for k in 0..w {
                    expected[k] = generator_images[j].apply(image_keys[e * w + k]);
                }
                if expected[..] != image_keys[child * w..(child + 1) * w] {
                    let mut word: Vec<GenLetter> = idx.word(e).into_iter().map(|i| (i, false)).collect();
                    word.push((j, false));
                    word.extend(idx.word(child).into_iter().rev().map(|i| (i, true)));
                    return Err(PermError::IllDefined { relator: render_word(&word) });
                }
            }
        }
        Ok(GroupHom { source, target, generator_images, image_keys })
    }

    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    pub fn target(&self) -> &PermGroup {
        &self.target
    }

    pub fn generator_images(&self) -> &[Perm] {
        &self.generator_images
    }

    pub fn apply(&self, g: &Perm) -> Result<Perm, PermError> {
        if !self.source.contains(g) {
            return Err(PermError::NotMember);
        }
        let idx = self.source.index();
        let e = idx.find(&self.source.element_key(g)).expect("member is enumerated");
        let w = self.target.base().len();
        let key = &self.image_keys[e * w..(e + 1) * w];
        let tidx = self.target.index();
        let t = tidx.find(key).expect("image lies in the target");
        Ok(self.target.element_from_index(&tidx, t))
    }

    pub fn image(&self) -> PermGroup {
        self.target
            .subgroup_unchecked(self.generator_images.clone())
            .expect("image of an admissible group is admissible")
    }

    /// The kernel as a subgroup of the source.
    pub fn kernel(&self) -> PermGroup {
        let idx = self.source.index();
        let tbase = self.target.base();
        let w = tbase.len();
        let in_kernel: Vec<usize> =
            (0..idx.len()).filter(|&e| self.image_keys[e * w..(e + 1) * w] == tbase[..]).collect();

        let mut reached = vec![false; idx.len()];
        reached[0] = true;
        let mut gens: Vec<Perm> = Vec::new();
        for &k in &in_kernel {
            if reached[k] {
                continue;
            }
            gens.push(self.source.element_from_index(&idx, k));
            // close the reached set under right multiplication by all kernel gens
            let mut queue: Vec<usize> = (0..idx.len()).filter(|&e| reached[e]).collect();
            while let Some(e) = queue.pop() {
                for g in &gens {
                    let c = idx.times(e, g).expect("closed");
                    if !reached[c] {
                        reached[c] = true;
                        queue.push(c);
                    }
                }
            }
        }
        self.source.subgroup_unchecked(gens).expect("subgroup of an admissible group")
    }
}

/// Renders a word over generators `s0, s1, ...`.
pub fn render_word(word: &[GenLetter]) -> String {
    if word.is_empty() {
        return "1".to_string();
    }
    word.iter()
        .map(|&(i, inv)| if inv { format!("s{i}^-1") } else { format!("s{i}") })
        .collect::<Vec<_>>()
        .join(" ")
}
