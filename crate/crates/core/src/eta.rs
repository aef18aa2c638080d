//! The group `eta(G, H)`: `G` and a copy `H^phi` subject to the two families
//! of commutator relations, realized as a regular permutation group by coset
//! enumeration. Its subgroup `[G, H^phi]` is the non-abelian tensor product.
//!
//! Carrier elements are identified by the image of point 0 (their "key"),
//! which is faithful because the carrier acts regularly.

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::abelian::AbelianInvariants;
use crate::action::{check_compatibility, ActionPair, CompatFailure};
use crate::cayley::FiniteGroup;
use crate::fpgroup::{regular_representation, todd_coxeter, EnumError, Presentation, Word};
use crate::perm::{Perm, PermError, PermGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EtaError {
    #[error("actions are not compatible: {count} failing triples, first {first:?}")]
    Incompatible { count: usize, first: CompatFailure },
    #[error(transparent)]
    Enumeration(#[from] EnumError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("embedding of {side} is not injective: elements {a} and {b} coincide")]
    NotInjective { side: Side, a: usize, b: usize },
    #[error("embedding of {side} is not a homomorphism at ({a}, {b})")]
    NotHomomorphic { side: Side, a: usize, b: usize },
    #[error("element list for {side} is not a subgroup")]
    NotSubgroup { side: Side },
    #[error("{acted} is not invariant: {a}^{b} leaves it")]
    NotInvariant { acted: Side, a: usize, b: usize },
}

impl EtaError {
    pub fn is_capacity(&self) -> bool {
        matches!(self, EtaError::Enumeration(EnumError::CapacityExceeded { .. }))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    G,
    H,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::G => "G",
            Side::H => "H",
        })
    }
}

/// Generator symbol of a non-identity element.
fn symbol(side: Side, element: usize) -> String {
    match side {
        Side::G => format!("g{element}"),
        Side::H => format!("h{element}"),
    }
}

/// Relator counts by kind, in presentation order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RelatorCounts {
    pub g_table: usize,
    pub h_table: usize,
    pub g_family: usize,
    pub h_family: usize,
}

impl RelatorCounts {
    pub fn total(&self) -> usize {
        self.g_table + self.h_table + self.g_family + self.h_family
    }
}

/// The presentation of `eta(G, H)` with one generator per non-identity
/// element of `G` and of `H`. Relators, in order: the multiplication table
/// of `G` and of `H` over non-identity pairs, then
/// `[g,h^phi]^g1 = [g^g1, (h^g1)^phi]` for `g, h` non-identity and every `g1`,
/// then `[g,h^phi]^(h1^phi) = [g^h1, (h^h1)^phi]` for `g, h` non-identity and
/// every `h1`. Identity elements stand for the empty word.
pub fn build_eta_presentation(pair: &ActionPair) -> Result<(Presentation, RelatorCounts), EtaError> {
    let report = check_compatibility(pair);
    if let Some(first) = report.failures.first() {
        return Err(EtaError::Incompatible { count: report.failures.len(), first: first.clone() });
    }
    Ok(eta_presentation_unchecked(pair))
}

fn eta_presentation_unchecked(pair: &ActionPair) -> (Presentation, RelatorCounts) {
    let (g, h) = (pair.g(), pair.h());
    let g_elems: Vec<usize> = g.non_identity().collect();
    let h_elems: Vec<usize> = h.non_identity().collect();
    let mut names: Vec<String> = g_elems.iter().map(|&a| symbol(Side::G, a)).collect();
    names.extend(h_elems.iter().map(|&b| symbol(Side::H, b)));

    let mut g_gen = vec![None; g.order()];
    for (i, &a) in g_elems.iter().enumerate() {
        g_gen[a] = Some(i as u32);
    }
    let mut h_gen = vec![None; h.order()];
    for (i, &b) in h_elems.iter().enumerate() {
        h_gen[b] = Some((g_elems.len() + i) as u32);
    }
    let gw = |a: usize| g_gen[a].map_or_else(Word::empty, Word::gen);
    let hw = |b: usize| h_gen[b].map_or_else(Word::empty, Word::gen);
    let tensor = |a: usize, b: usize| Word::commutator(&gw(a), &hw(b));

    let mut relators = Vec::new();
    let mut counts = RelatorCounts::default();
    for &a in &g_elems {
        for &b in &g_elems {
            relators.push(gw(a).concat(&gw(b)).concat(&gw(g.mul(a, b)).inverse()));
            counts.g_table += 1;
        }
    }
    for &a in &h_elems {
        for &b in &h_elems {
            relators.push(hw(a).concat(&hw(b)).concat(&hw(h.mul(a, b)).inverse()));
            counts.h_table += 1;
        }
    }
    for &a in &g_elems {
        for &b in &h_elems {
            for g1 in 0..g.order() {
                let lhs = tensor(a, b).conjugate(&gw(g1));
                let rhs = tensor(g.conj(a, g1), pair.h_by_g(b, g1));
                relators.push(lhs.concat(&rhs.inverse()));
                counts.g_family += 1;
            }
        }
    }
    for &a in &g_elems {
        for &b in &h_elems {
            for h1 in 0..h.order() {
                let lhs = tensor(a, b).conjugate(&hw(h1));
                let rhs = tensor(pair.g_by_h(a, h1), h.conj(b, h1));
                relators.push(lhs.concat(&rhs.inverse()));
                counts.h_family += 1;
            }
        }
    }
    let p = Presentation::new(names, relators).expect("generated symbols are valid");
    (p, counts)
}

/// Product of permutations evaluated at point 0.
#[inline]
pub fn key_of(factors: &[&Perm]) -> u32 {
    factors.iter().fold(0, |x, p| p.apply(x))
}

/// `eta(G, H)` realized on its own elements.
#[derive(Clone, Debug)]
pub struct EtaGroup {
    pair: ActionPair,
    presentation: Presentation,
    relator_counts: RelatorCounts,
    num_cosets: u64,
    carrier: PermGroup,
    embed_g: Vec<Perm>,
    embed_g_inv: Vec<Perm>,
    embed_h: Vec<Perm>,
    embed_h_inv: Vec<Perm>,
    /// key of `[g, h^phi]` at index `g * |H| + h`
    tensor_keys: Vec<u32>,
    tensor_subgroup: PermGroup,
    g_image: PermGroup,
    h_image: PermGroup,
}

/// Builds `eta(G, H)` by enumerating its presentation over the trivial
/// subgroup, then checks that both embeddings are injective homomorphisms.
pub fn construct_eta(pair: &ActionPair, max_cosets: usize) -> Result<EtaGroup, EtaError> {
    let (presentation, relator_counts) = build_eta_presentation(pair)?;
    let table = todd_coxeter(&presentation, &[], max_cosets)?;
    let num_cosets = table.num_cosets() as u64;
    let (carrier, gen_perms) = regular_representation(&table)?;
    let degree = carrier.degree();

    let (g, h) = (pair.g(), pair.h());
    let mut next = 0;
    let mut embed = |group: &FiniteGroup| -> Vec<Perm> {
        (0..group.order())
            .map(|a| {
                if a == group.identity() {
                    Perm::identity(degree)
                } else {
                    next += 1;
                    gen_perms[next - 1].clone()
                }
            })
            .collect()
    };
    let embed_g = embed(g);
    let embed_h = embed(h);
    let embed_g_inv: Vec<Perm> = embed_g.iter().map(Perm::inverse).collect();
    let embed_h_inv: Vec<Perm> = embed_h.iter().map(Perm::inverse).collect();

    for (side, group, images) in [(Side::G, g, &embed_g), (Side::H, h, &embed_h)] {
        let keys: Vec<u32> = images.iter().map(|p| p.apply(0)).collect();
        let mut seen = std::collections::HashMap::new();
        for (a, &k) in keys.iter().enumerate() {
            if let Some(&b) = seen.get(&k) {
                return Err(EtaError::NotInjective { side, a: b, b: a });
            }
            seen.insert(k, a);
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                if images[b].apply(keys[a]) != keys[group.mul(a, b)] {
                    return Err(EtaError::NotHomomorphic { side, a, b });
                }
            }
        }
    }

    let mut tensor_keys = Vec::with_capacity(g.order() * h.order());
    for a in 0..g.order() {
        for b in 0..h.order() {
            tensor_keys.push(key_of(&[&embed_g_inv[a], &embed_h_inv[b], &embed_g[a], &embed_h[b]]));
        }
    }
    let g_image = PermGroup::from_semiregular_generators(degree, embed_g.clone())?;
    let h_image = PermGroup::from_semiregular_generators(degree, embed_h.clone())?;
    let mut eta = EtaGroup {
        pair: pair.clone(),
        presentation,
        relator_counts,
        num_cosets,
        carrier,
        embed_g,
        embed_g_inv,
        embed_h,
        embed_h_inv,
        tensor_keys,
        tensor_subgroup: PermGroup::trivial(degree),
        g_image,
        h_image,
    };
    let all_pairs: Vec<(usize, usize)> =
        (0..g.order()).flat_map(|a| (0..h.order()).map(move |b| (a, b))).collect();
    eta.tensor_subgroup = eta.span_of_tensors(&all_pairs)?;
    Ok(eta)
}

/// The action of `eta(G, H)` on the cosets of `H^phi`.
///
/// `[G, H^phi] G` is a normal complement of `H^phi`, so the tensor subgroup
/// acts semiregularly on these cosets and the enumeration has
/// `|G (x) H| |G|` rows rather than `|G (x) H| |G| |H|`. This reaches tensor
/// products whose full carrier is out of range.
#[derive(Clone, Debug)]
pub struct ComplementAction {
    cosets: usize,
    /// permutation of `[a, b^phi]` on the cosets, row-major over `G x H`
    tensors: Vec<Perm>,
    h_order: usize,
}

impl ComplementAction {
    pub fn cosets(&self) -> usize {
        self.cosets
    }

    pub fn tensor(&self, a: usize, b: usize) -> &Perm {
        &self.tensors[a * self.h_order + b]
    }

    /// Group generated by the tensors at the given index pairs.
    pub fn span(&self, pairs: &[(usize, usize)]) -> Result<PermGroup, PermError> {
        let gens: Vec<Perm> = pairs.iter().map(|&(a, b)| self.tensor(a, b).clone()).collect();
        let full = PermGroup::with_degree(self.cosets, gens)?;
        let reduced = full.reduced_generators();
        PermGroup::with_degree(self.cosets, reduced)
    }
}

/// Enumerates the cosets of `H^phi` in `eta(G, H)`.
pub fn enumerate_complement(pair: &ActionPair, max_cosets: usize) -> Result<ComplementAction, EtaError> {
    let (presentation, _) = build_eta_presentation(pair)?;
    let first_h = pair.g().order().saturating_sub(1) as u32;
    let subgroup: Vec<Word> = (first_h..presentation.generators().len() as u32).map(Word::gen).collect();
    let table = todd_coxeter(&presentation, &subgroup, max_cosets)?;
    let cosets = table.num_cosets();
    let (_, gen_perms) = regular_representation(&table)?;

    let (g, h) = (pair.g(), pair.h());
    let mut next = 0;
    let mut embed = |group: &FiniteGroup| -> Vec<Perm> {
        (0..group.order())
            .map(|a| {
                if a == group.identity() {
                    Perm::identity(cosets)
                } else {
                    next += 1;
                    gen_perms[next - 1].clone()
                }
            })
            .collect()
    };
    let embed_g = embed(g);
    let embed_h = embed(h);
    let mut tensors = Vec::with_capacity(g.order() * h.order());
    for a in 0..g.order() {
        for b in 0..h.order() {
            let (x, y) = (&embed_g[a], &embed_h[b]);
            tensors.push(x.inverse().mul(&y.inverse()).mul(x).mul(y));
        }
    }
    Ok(ComplementAction { cosets, tensors, h_order: h.order() })
}

impl EtaGroup {
    pub fn pair(&self) -> &ActionPair {
        &self.pair
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn relator_counts(&self) -> RelatorCounts {
        self.relator_counts
    }

    /// Rows of the completed coset table.
    pub fn cosets(&self) -> u64 {
        self.num_cosets
    }

    pub fn carrier(&self) -> &PermGroup {
        &self.carrier
    }

    pub fn degree(&self) -> usize {
        self.carrier.degree()
    }

    pub fn tensor_subgroup(&self) -> &PermGroup {
        &self.tensor_subgroup
    }

    pub fn g_image(&self) -> &PermGroup {
        &self.g_image
    }

    pub fn h_image(&self) -> &PermGroup {
        &self.h_image
    }

    pub fn g(&self, a: usize) -> &Perm {
        &self.embed_g[a]
    }

    pub fn g_inv(&self, a: usize) -> &Perm {
        &self.embed_g_inv[a]
    }

    pub fn h(&self, b: usize) -> &Perm {
        &self.embed_h[b]
    }

    pub fn h_inv(&self, b: usize) -> &Perm {
        &self.embed_h_inv[b]
    }

    /// Key of the tensor `[a, b^phi]`.
    pub fn tensor_key(&self, a: usize, b: usize) -> u32 {
        self.tensor_keys[a * self.pair.h().order() + b]
    }

    /// The tensor `[a, b^phi]` as a permutation.
    pub fn tensor(&self, a: usize, b: usize) -> Perm {
        self.embed_g_inv[a].mul(&self.embed_h_inv[b]).mul(&self.embed_g[a]).mul(&self.embed_h[b])
    }

    /// Factors of `[a, b^phi]`, for building words evaluated with [`key_of`].
    pub fn tensor_factors(&self, a: usize, b: usize) -> [&Perm; 4] {
        [&self.embed_g_inv[a], &self.embed_h_inv[b], &self.embed_g[a], &self.embed_h[b]]
    }

    /// Inverse factors: `[a, b^phi]^-1 = b^-phi a^-1 b^phi a`.
    pub fn tensor_inv_factors(&self, a: usize, b: usize) -> [&Perm; 4] {
        [&self.embed_h_inv[b], &self.embed_g_inv[a], &self.embed_h[b], &self.embed_g[a]]
    }

    /// Subgroup generated by the tensors at the given index pairs, with a
    /// greedily reduced generating set.
    pub fn span_of_tensors(&self, pairs: &[(usize, usize)]) -> Result<PermGroup, PermError> {
        let keys: Vec<u32> = pairs.iter().map(|&(a, b)| self.tensor_key(a, b)).collect();
        self.span_keys(&keys, |i| self.tensor(pairs[i].0, pairs[i].1))
    }

    /// Subgroup generated by the carrier elements with the given keys.
    pub fn subgroup_from_keys(&self, keys: &[u32]) -> Result<PermGroup, PermError> {
        self.span_keys(keys, |i| self.element(keys[i]))
    }

    /// The carrier element with the given key.
    pub fn element(&self, key: u32) -> Perm {
        self.carrier.element_at(key).expect("key of a carrier element")
    }

    /// `make(i)` builds the element with key `keys[i]`; it is only called for
    /// elements not already in the span of the earlier ones.
    fn span_keys(&self, keys: &[u32], make: impl Fn(usize) -> Perm) -> Result<PermGroup, PermError> {
        let degree = self.degree();
        let mut members: HashSet<u32> = HashSet::from([0]);
        let mut list: Vec<u32> = vec![0];
        let mut gens: Vec<Perm> = Vec::new();
        for (i, &key) in keys.iter().enumerate() {
            if members.contains(&key) {
                continue;
            }
            gens.push(make(i));
            // the orbit of 0 under a semiregular group lists its elements
            let mut j = 0;
            let mut frontier = list.clone();
            while j < frontier.len() {
                let x = frontier[j];
                for t in &gens {
                    let y = t.apply(x);
                    if members.insert(y) {
                        list.push(y);
                        frontier.push(y);
                    }
                }
                j += 1;
            }
        }
        PermGroup::from_semiregular_generators(degree, gens)
    }

    /// The subgroup `[N, K^phi]` for element-index subgroups `N` of `G` and
    /// `K` of `H`.
    pub fn tensor_subgroup_of(&self, n: &[usize], k: &[usize]) -> Result<PermGroup, EtaError> {
        self.check_invariant_pair(n, k)?;
        let pairs: Vec<(usize, usize)> = n.iter().flat_map(|&a| k.iter().map(move |&b| (a, b))).collect();
        Ok(self.span_of_tensors(&pairs)?)
    }

    /// `<N, K^phi>` inside the carrier.
    pub fn generated_by(&self, n: &[usize], k: &[usize]) -> Result<PermGroup, EtaError> {
        let gens: Vec<Perm> = n
            .iter()
            .map(|&a| self.embed_g[a].clone())
            .chain(k.iter().map(|&b| self.embed_h[b].clone()))
            .collect();
        let full = PermGroup::from_semiregular_generators(self.degree(), gens)?;
        let reduced = full.reduced_generators();
        Ok(PermGroup::from_semiregular_generators(self.degree(), reduced)?)
    }

    /// Validates that `n` and `k` are subgroups, `N` is `K`-invariant and `K`
    /// is `N`-invariant.
    pub fn check_invariant_pair(&self, n: &[usize], k: &[usize]) -> Result<(), EtaError> {
        let (g, h) = (self.pair.g(), self.pair.h());
        if !g.is_subgroup(n) {
            return Err(EtaError::NotSubgroup { side: Side::G });
        }
        if !h.is_subgroup(k) {
            return Err(EtaError::NotSubgroup { side: Side::H });
        }
        let in_n: HashSet<usize> = n.iter().copied().collect();
        let in_k: HashSet<usize> = k.iter().copied().collect();
        for &a in n {
            for &b in k {
                if !in_n.contains(&self.pair.g_by_h(a, b)) {
                    return Err(EtaError::NotInvariant { acted: Side::G, a, b });
                }
                if !in_k.contains(&self.pair.h_by_g(b, a)) {
                    return Err(EtaError::NotInvariant { acted: Side::H, a: b, b: a });
                }
            }
        }
        Ok(())
    }

    /// Distinct tensors `[a, b^phi]` with `a` in `N`, `b` in `K`.
    pub fn tensor_set(&self, n: &[usize], k: &[usize]) -> Result<TensorSet, EtaError> {
        self.check_invariant_pair(n, k)?;
        let mut n = n.to_vec();
        let mut k = k.to_vec();
        n.sort_unstable();
        k.sort_unstable();
        let mut seen = HashSet::new();
        let mut members = Vec::new();
        for &a in &n {
            for &b in &k {
                let key = self.tensor_key(a, b);
                if seen.insert(key) {
                    members.push(TensorMember { key, witness: (a, b) });
                }
            }
        }
        Ok(TensorSet { members })
    }

    /// Checks the semidirect decomposition `([G,H^phi] G) H^phi`.
    pub fn check_decomposition(&self) -> DecompositionReport {
        let t_keys: HashSet<u32> = self.tensor_subgroup.orbit_of_zero().into_iter().collect();
        let g_keys: Vec<u32> = self.embed_g.iter().map(|p| p.apply(0)).collect();
        let h_keys: Vec<u32> = self.embed_h.iter().map(|p| p.apply(0)).collect();

        let tg_meet: Vec<usize> = (0..g_keys.len())
            .filter(|&a| a != self.pair.g().identity() && t_keys.contains(&g_keys[a]))
            .collect();
        let tg: HashSet<u32> = t_keys.iter().flat_map(|&t| self.embed_g.iter().map(move |p| p.apply(t))).collect();
        let tgh_meet: Vec<usize> = (0..h_keys.len())
            .filter(|&b| b != self.pair.h().identity() && tg.contains(&h_keys[b]))
            .collect();
        let carrier = self.carrier.order();
        let t = self.tensor_subgroup.order();
        let (go, ho) = (self.pair.g().order() as u64, self.pair.h().order() as u64);
        DecompositionReport {
            carrier_order: carrier,
            tensor_order: t,
            g_order: go,
            h_order: ho,
            tensor_meets_g: tg_meet,
            tensor_g_meets_h: tgh_meet,
            order_identity: carrier == t * go * ho,
            tensor_normal: self.tensor_subgroup.is_normal_in(&self.carrier),
        }
    }

    pub fn tensor_invariants(&self) -> AbelianInvariants {
        self.tensor_subgroup.abelian_invariants()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TensorMember {
    /// image of point 0 under the tensor
    pub key: u32,
    pub witness: (usize, usize),
}

/// Distinct tensors, in order of first appearance over sorted `(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TensorSet {
    pub members: Vec<TensorMember>,
}

impl TensorSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains_key(&self, key: u32) -> bool {
        self.members.iter().any(|m| m.key == key)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub carrier_order: u64,
    pub tensor_order: u64,
    pub g_order: u64,
    pub h_order: u64,
    /// non-identity elements of `G` lying in the tensor subgroup
    pub tensor_meets_g: Vec<usize>,
    /// non-identity elements of `H` lying in `[G,H^phi] G`
    pub tensor_g_meets_h: Vec<usize>,
    pub order_identity: bool,
    pub tensor_normal: bool,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        self.tensor_meets_g.is_empty() && self.tensor_g_meets_h.is_empty() && self.order_identity && self.tensor_normal
    }
}

/// `G^ab (x) H^ab` over the integers, the tensor product for trivial actions.
pub fn trivial_action_baseline(g: &FiniteGroup, h: &FiniteGroup) -> AbelianInvariants {
    g.abelian_invariants().z_tensor(&h.abelian_invariants())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn builtin(name: &str) -> FiniteGroup {
        FiniteGroup::builtin(name).unwrap()
    }

    #[test]
    fn presentation_shape() {
        let c2 = builtin("C2");
        let (p, counts) = build_eta_presentation(&ActionPair::trivial(&c2, &c2)).unwrap();
        assert_eq!(p.generators(), &["g1".to_string(), "h1".to_string()]);
        assert_eq!(counts.total(), 6);
        assert_eq!(counts, RelatorCounts { g_table: 1, h_table: 1, g_family: 2, h_family: 2 });
        let (_, conj) = build_eta_presentation(&ActionPair::conjugation(&c2)).unwrap();
        assert_eq!(conj, counts);

        let c1 = builtin("C1");
        let c3 = builtin("C3");
        let (p, counts) = build_eta_presentation(&ActionPair::trivial(&c1, &c3)).unwrap();
        assert_eq!(p.generators().len(), 2);
        assert_eq!(counts.g_family + counts.h_family, 0);
    }

    #[test]
    fn incompatible_pair_refused() {
        let bad = crate::action::incompatible_example();
        assert!(matches!(build_eta_presentation(&bad), Err(EtaError::Incompatible { .. })));
        assert!(matches!(construct_eta(&bad, 1000), Err(EtaError::Incompatible { .. })));
    }

    #[test]
    fn small_examples() {
        let c2 = builtin("C2");
        let e = construct_eta(&ActionPair::trivial(&c2, &c2), 1000).unwrap();
        assert_eq!(e.tensor_subgroup().order(), 2);
        assert_eq!(e.carrier().order(), 8);
        assert!(e.check_decomposition().passed());
        assert_eq!(e.tensor_set(&[0, 1], &[0, 1]).unwrap().len(), 2);
        assert_eq!(e.tensor_set(&[0], &[0, 1]).unwrap().len(), 1);

        let e = construct_eta(&ActionPair::trivial(&c2, &builtin("C3")), 1000).unwrap();
        assert_eq!(e.tensor_subgroup().order(), 1);
        assert_eq!(e.carrier().order(), 6);

        let v4 = builtin("V4");
        let e = construct_eta(&ActionPair::conjugation(&v4), 10_000).unwrap();
        assert_eq!(e.tensor_subgroup().order(), 16);
        assert_eq!(e.carrier().order(), 256);
        assert!(e.check_decomposition().passed());

        let c1 = builtin("C1");
        let e = construct_eta(&ActionPair::trivial(&c1, &c1), 10).unwrap();
        assert_eq!(e.carrier().order(), 1);
        assert!(e.check_decomposition().passed());
    }

    #[test]
    fn capacity_is_reported() {
        let v4 = builtin("V4");
        let err = construct_eta(&ActionPair::conjugation(&v4), 10).unwrap_err();
        assert!(err.is_capacity());
    }

    #[test]
    fn invariance_is_checked() {
        let s3 = builtin("S3");
        let e = construct_eta(&ActionPair::conjugation(&s3), 10_000).unwrap();
        let t = (0..6).find(|&a| s3.element_order(a) == 2).unwrap();
        let sub = s3.closure(&[t]);
        assert!(matches!(e.tensor_set(&sub, &(0..6).collect::<Vec<_>>()), Err(EtaError::NotInvariant { .. })));
        assert!(matches!(e.tensor_set(&[0, t, 5], &[0]), Err(EtaError::NotSubgroup { .. })));
    }

    #[test]
    fn baselines() {
        assert_eq!(trivial_action_baseline(&builtin("C2"), &builtin("C2")).factors(), &[2]);
        assert_eq!(trivial_action_baseline(&builtin("C2xC6"), &builtin("C2")).factors(), &[2, 2]);
        assert!(trivial_action_baseline(&builtin("C1"), &builtin("S3")).is_trivial());
    }
}
