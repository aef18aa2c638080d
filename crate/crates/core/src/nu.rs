//! `nu(G)`: `eta(G, G)` with both actions conjugation, together with the
//! diagonal subgroup, the map `rho: nu(G) -> G` and the kernel `mu(G)` of its
//! restriction to the tensor square.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::abelian::{pi_set_of_order, AbelianInvariants};
use crate::action::ActionPair;
use crate::cayley::FiniteGroup;
use crate::eta::{construct_eta, EtaError, EtaGroup};
use crate::perm::{GroupHom, Perm, PermError, PermGroup};

#[derive(Clone, Debug)]
pub struct NuGroup {
    group: FiniteGroup,
    eta: EtaGroup,
    rho: GroupHom,
    rho_prime: GroupHom,
    /// `G'` inside the regular representation of `G`
    derived: PermGroup,
    mu: PermGroup,
    delta: PermGroup,
    /// relators of the presentation that `rho` does not send to 1
    rho_bad_relators: Vec<usize>,
}

/// Builds `nu(G)` and the associated maps. The conjugation pair is checked for
/// compatibility like any other pair.
pub fn construct_nu(group: &FiniteGroup, max_cosets: usize) -> Result<NuGroup, EtaError> {
    let pair = ActionPair::conjugation(group);
    let eta = construct_eta(&pair, max_cosets)?;
    let target = group.to_perm_group();

    // carrier generators are the symbols of non-identity elements, G side first
    let images: Vec<Perm> = group
        .non_identity()
        .chain(group.non_identity())
        .map(|a| group.regular_perm(a))
        .collect();
    let rho_bad_relators = eta
        .presentation()
        .relators()
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.evaluate(&images, group.order()).is_identity())
        .map(|(i, _)| i)
        .collect();
    let rho = GroupHom::new(eta.carrier().clone(), target.clone(), images)?;

    let tensor = eta.tensor_subgroup().clone();
    let prime_images = tensor.generators().iter().map(|t| rho.apply(t)).collect::<Result<Vec<_>, _>>()?;
    let rho_prime = GroupHom::new(tensor, target.clone(), prime_images)?;
    let mu = rho_prime.kernel();

    let derived_elems = group.derived_subgroup();
    let derived = target.subgroup(derived_elems.iter().map(|&a| group.regular_perm(a)).collect())?;

    let diagonal: Vec<(usize, usize)> = (0..group.order()).map(|a| (a, a)).collect();
    let delta = eta.span_of_tensors(&diagonal)?;

    Ok(NuGroup { group: group.clone(), eta, rho, rho_prime, derived, mu, delta, rho_bad_relators })
}

impl NuGroup {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn eta(&self) -> &EtaGroup {
        &self.eta
    }

    pub fn rho(&self) -> &GroupHom {
        &self.rho
    }

    pub fn rho_prime(&self) -> &GroupHom {
        &self.rho_prime
    }

    pub fn mu(&self) -> &PermGroup {
        &self.mu
    }

    pub fn delta(&self) -> &PermGroup {
        &self.delta
    }

    /// Order of `G'`.
    pub fn derived_order(&self) -> u64 {
        self.derived.order()
    }

    /// Checks the structural facts about `rho`, `rho'`, `mu` and `Delta`.
    pub fn check_maps(&self) -> Result<MapsReport, PermError> {
        let eta = &self.eta;
        let g = &self.group;
        let n = g.order();

        // rho' sends [a, b^phi] to [a, b]
        let mut tensor_image_mismatch = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let image = self.rho.apply(&eta.tensor(a, b))?;
                if g.element_of_regular(&image) != g.commutator(a, b) {
                    tensor_image_mismatch.push((a, b));
                }
            }
        }
        let image = self.rho_prime.image();
        let rho_image = self.rho.image();
        let mu_central = self
            .mu
            .generators()
            .iter()
            .all(|z| eta.carrier().generators().iter().all(|c| z.mul(c) == c.mul(z)));
        let tensor_keys: HashSet<u32> = eta.tensor_subgroup().orbit_of_zero().into_iter().collect();
        let delta_in_tensor = self.delta.orbit_of_zero().iter().all(|k| tensor_keys.contains(k));
        Ok(MapsReport {
            rho_bad_relators: self.rho_bad_relators.clone(),
            rho_surjective: rho_image.order() == n as u64,
            rho_prime_image_order: image.order(),
            derived_order: self.derived.order(),
            rho_prime_onto_derived: image.order() == self.derived.order() && image.is_subgroup_of(&self.derived),
            tensor_image_mismatch,
            tensor_order: eta.tensor_subgroup().order(),
            mu_order: self.mu.order(),
            quotient_identity: eta.tensor_subgroup().order() == self.mu.order() * self.derived.order(),
            mu_central,
            delta_order: self.delta.order(),
            delta_in_tensor,
        })
    }

    /// Checks `nu(G)' = ([G,G^phi] G') (G')^phi`.
    pub fn check_derived_decomposition(&self) -> Result<DerivedReport, PermError> {
        let eta = &self.eta;
        let degree = eta.degree();
        let nu_derived = eta.carrier().derived_subgroup();
        let derived_elems = self.group.derived_subgroup();
        let dg = PermGroup::from_semiregular_generators(degree, derived_elems.iter().map(|&a| eta.g(a).clone()).collect())?;
        let dh = PermGroup::from_semiregular_generators(degree, derived_elems.iter().map(|&a| eta.h(a).clone()).collect())?;
        let t = eta.tensor_subgroup();

        let t_keys: HashSet<u32> = t.orbit_of_zero().into_iter().collect();
        let dg_keys = dg.orbit_of_zero();
        let dh_keys = dh.orbit_of_zero();
        let t_meets_dg = dg_keys.iter().filter(|&&k| k != 0 && t_keys.contains(&k)).count();
        let dg_elems: Vec<Perm> = derived_elems.iter().map(|&a| eta.g(a).clone()).collect();
        let t_dg: HashSet<u32> = t_keys.iter().flat_map(|&k| dg_elems.iter().map(move |p| p.apply(k))).collect();
        let t_dg_meets_dh = dh_keys.iter().filter(|&&k| k != 0 && t_dg.contains(&k)).count();

        let mut gens: Vec<Perm> = t.generators().to_vec();
        gens.extend(dg.generators().iter().cloned());
        gens.extend(dh.generators().iter().cloned());
        let generated = PermGroup::from_semiregular_generators(degree, gens)?;
        let generates = generated.order() == nu_derived.order() && generated.is_subgroup_of(&nu_derived);

        let d = self.derived.order();
        Ok(DerivedReport {
            nu_derived_order: nu_derived.order(),
            tensor_order: t.order(),
            derived_order: d,
            order_identity: nu_derived.order() == t.order() * d * d,
            tensor_meets_derived: t_meets_dg,
            product_meets_derived_copy: t_dg_meets_dh,
            factors_generate: generates,
        })
    }

    /// Prime sets and the comparison of `Delta(G)` with the diagonal of the
    /// abelianization.
    pub fn periodicity_and_pi(&self) -> PiReport {
        let g = &self.group;
        let pi_g: BTreeSet<u64> = (0..g.order()).flat_map(|a| pi_set_of_order(g.element_order(a))).collect();
        let tensor_order = self.eta.tensor_subgroup().order();
        let pi_tensor = pi_set_of_order(tensor_order);
        let pi_delta = pi_set_of_order(self.delta.order());
        let ab = g.abelian_invariants();
        let delta_ab = ab.delta_of_abelian();
        let exponent = (0..g.order()).map(|a| g.element_order(a)).fold(1u64, num_integer::lcm);
        PiReport {
            pi_group: pi_g.clone(),
            pi_tensor: pi_tensor.clone(),
            pi_delta,
            group_exponent: exponent,
            pi_contained: pi_g.is_subset(&pi_tensor),
            abelianization: ab,
            delta_of_abelianization: delta_ab.clone(),
            delta_order: self.delta.order(),
            delta_ab_divides: self.delta.order().is_multiple_of(delta_ab.order()),
        }
    }

    pub fn tensor_invariants(&self) -> AbelianInvariants {
        self.eta.tensor_invariants()
    }

    pub fn delta_invariants(&self) -> AbelianInvariants {
        self.delta.abelian_invariants()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapsReport {
    pub rho_bad_relators: Vec<usize>,
    pub rho_surjective: bool,
    pub rho_prime_image_order: u64,
    pub derived_order: u64,
    pub rho_prime_onto_derived: bool,
    /// pairs `(a, b)` with `rho([a, b^phi]) != [a, b]`
    pub tensor_image_mismatch: Vec<(usize, usize)>,
    pub tensor_order: u64,
    pub mu_order: u64,
    pub quotient_identity: bool,
    pub mu_central: bool,
    pub delta_order: u64,
    pub delta_in_tensor: bool,
}

impl MapsReport {
    pub fn passed(&self) -> bool {
        self.rho_bad_relators.is_empty()
            && self.rho_surjective
            && self.rho_prime_onto_derived
            && self.tensor_image_mismatch.is_empty()
            && self.quotient_identity
            && self.mu_central
            && self.delta_in_tensor
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivedReport {
    pub nu_derived_order: u64,
    pub tensor_order: u64,
    pub derived_order: u64,
    pub order_identity: bool,
    /// non-identity elements shared by the tensor square and `G'`
    pub tensor_meets_derived: usize,
    /// non-identity elements shared by `[G,G^phi] G'` and `(G')^phi`
    pub product_meets_derived_copy: usize,
    pub factors_generate: bool,
}

impl DerivedReport {
    pub fn passed(&self) -> bool {
        self.order_identity
            && self.tensor_meets_derived == 0
            && self.product_meets_derived_copy == 0
            && self.factors_generate
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PiReport {
    pub pi_group: BTreeSet<u64>,
    pub pi_tensor: BTreeSet<u64>,
    pub pi_delta: BTreeSet<u64>,
    pub group_exponent: u64,
    pub pi_contained: bool,
    pub abelianization: AbelianInvariants,
    pub delta_of_abelianization: AbelianInvariants,
    pub delta_order: u64,
    pub delta_ab_divides: bool,
}

impl PiReport {
    pub fn passed(&self) -> bool {
        self.pi_contained && self.delta_ab_divides
    }
}

#[cfg(test)]
mod tests {
    use super::*;


    fn nu(name: &str) -> NuGroup {
        construct_nu(&FiniteGroup::builtin(name).unwrap(), 100_000).unwrap()
    }

    #[test]
    fn cyclic_examples() {
        let n = nu("C2");
        assert_eq!(n.eta().tensor_subgroup().order(), 2);
        assert_eq!(n.eta().carrier().order(), 8);
        assert_eq!(n.mu().order(), 2);
        assert_eq!(n.delta().order(), 2);
        assert!(n.check_maps().unwrap().passed());

        let n = nu("C4");
        assert_eq!(n.eta().tensor_subgroup().order(), 4);
        assert_eq!(n.eta().carrier().order(), 64);

        let n = nu("C1");
        assert_eq!(n.eta().carrier().order(), 1);
        assert!(n.check_maps().unwrap().passed());
        assert!(n.check_derived_decomposition().unwrap().passed());
        let pi = n.periodicity_and_pi();
        assert!(pi.pi_group.is_empty() && pi.pi_tensor.is_empty());
    }

    #[test]
    fn s3() {
        let n = nu("S3");
        let maps = n.check_maps().unwrap();
        assert!(maps.passed(), "{maps:?}");
        assert_eq!(maps.tensor_order, maps.mu_order * 3);
        assert_eq!(n.eta().carrier().order(), maps.tensor_order * 36);
        let d = n.check_derived_decomposition().unwrap();
        assert!(d.passed(), "{d:?}");
        assert_eq!(d.nu_derived_order, d.tensor_order * 9);
        let pi = n.periodicity_and_pi();
        assert_eq!(pi.pi_group, BTreeSet::from([2, 3]));
        assert!(pi.passed());
    }

    #[test]
    fn abelian_nu_derived_is_tensor_square() {
        let n = nu("V4");
        let d = n.check_derived_decomposition().unwrap();
        assert!(d.passed());
        assert_eq!(d.nu_derived_order, d.tensor_order);
    }
}
