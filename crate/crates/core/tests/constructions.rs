use std::collections::HashSet;

use tensorial_core::eta::key_of;
use tensorial_core::fpgroup::DEFAULT_MAX_COSETS;
use tensorial_core::verify::delta_routes;
use tensorial_core::{
    construct_eta, construct_nu, enumerate_complement, AbelianInvariants, ActionPair, EtaError, FiniteGroup,
};

fn builtin(name: &str) -> FiniteGroup {
    FiniteGroup::builtin(name).unwrap()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Order of the Z-tensor product of two products of cyclic groups.
fn z_tensor_order(a: &[u64], b: &[u64]) -> u64 {
    a.iter().flat_map(|&x| b.iter().map(move |&y| gcd(x, y))).product()
}

#[test]
fn trivial_cyclic_pairs() {
    for (a, b) in [(2u64, 2u64), (2, 3), (4, 6), (6, 9), (5, 10)] {
        let pair = ActionPair::trivial(&builtin(&format!("C{a}")), &builtin(&format!("C{b}")));
        let e = construct_eta(&pair, DEFAULT_MAX_COSETS).unwrap();
        let t = gcd(a, b);
        assert_eq!(e.tensor_subgroup().order(), t, "C{a} (x) C{b}");
        assert_eq!(e.carrier().order(), t * a * b);
        assert_eq!(e.tensor_invariants(), AbelianInvariants::from_cyclic_orders(&[t]));
    }
}

#[test]
fn abelian_nu_orders() {
    for (name, cyclic) in [("C2", vec![2u64]), ("C4", vec![4]), ("C6", vec![6]), ("V4", vec![2, 2]), ("C2xC4", vec![2, 4])] {
        let g = builtin(name);
        let nu = construct_nu(&g, DEFAULT_MAX_COSETS).unwrap();
        let square = z_tensor_order(&cyclic, &cyclic);
        let n = g.order() as u64;
        assert_eq!(nu.eta().tensor_subgroup().order(), square, "{name}");
        assert_eq!(nu.eta().carrier().order(), square * n * n, "{name}");
        // G' = 1, so mu is the whole tensor square
        assert_eq!(nu.mu().order(), square, "{name}");
    }
    assert_eq!(construct_nu(&builtin("C4"), DEFAULT_MAX_COSETS).unwrap().eta().carrier().order(), 64);
    assert_eq!(construct_nu(&builtin("V4"), DEFAULT_MAX_COSETS).unwrap().eta().carrier().order(), 256);
}

#[test]
fn nonabelian_nu_identities() {
    for name in ["S3", "D8", "Q8", "D10", "A4"] {
        let g = builtin(name);
        let nu = construct_nu(&g, DEFAULT_MAX_COSETS).unwrap();
        let n = g.order() as u64;
        let t = nu.eta().tensor_subgroup().order();
        let derived = g.derived_subgroup().len() as u64;
        assert_eq!(nu.eta().carrier().order(), t * n * n, "{name}");
        assert_eq!(t, nu.mu().order() * derived, "{name}");
        assert_eq!(nu.eta().carrier().derived_subgroup().order(), t * derived * derived, "{name}");
        assert!(nu.check_maps().unwrap().passed(), "{name}");
    }
    let s3 = construct_nu(&builtin("S3"), DEFAULT_MAX_COSETS).unwrap();
    assert_eq!(s3.eta().carrier().order(), 216);
    assert_eq!(s3.eta().tensor_subgroup().order(), 6);
    assert_eq!(s3.mu().order(), 2);
}

#[test]
fn defining_relations_hold_in_carrier() {
    let pairs = [
        ActionPair::conjugation(&builtin("S3")),
        ActionPair::conjugation(&builtin("Q8")),
        ActionPair::trivial(&builtin("D8"), &builtin("C2")),
    ];
    for pair in pairs {
        let e = construct_eta(&pair, DEFAULT_MAX_COSETS).unwrap();
        let (g, h) = (pair.g(), pair.h());
        for a in 0..g.order() {
            for b in 0..h.order() {
                let t = e.tensor(a, b);
                for g1 in 0..g.order() {
                    let lhs = t.conjugate(e.g(g1));
                    assert_eq!(lhs, e.tensor(g.conj(a, g1), pair.h_by_g(b, g1)));
                }
                for h1 in 0..h.order() {
                    let lhs = t.conjugate(e.h(h1));
                    assert_eq!(lhs, e.tensor(pair.g_by_h(a, h1), h.conj(b, h1)));
                }
            }
        }
    }
}

#[test]
fn tensors_form_a_normal_subset() {
    let pair = ActionPair::conjugation(&builtin("D8"));
    let e = construct_eta(&pair, DEFAULT_MAX_COSETS).unwrap();
    let n = pair.g().order();
    let keys: HashSet<u32> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| e.tensor(a, b).apply(0)).collect();
    for s in e.carrier().generators() {
        for a in 0..n {
            for b in 0..n {
                assert!(keys.contains(&e.tensor(a, b).conjugate(s).apply(0)));
            }
        }
    }
}

#[test]
fn incompatible_pair_never_reaches_construction() {
    let pair = tensorial_core::action::incompatible_example();
    assert!(matches!(construct_eta(&pair, DEFAULT_MAX_COSETS), Err(EtaError::Incompatible { .. })));
}

#[test]
fn capacity_is_reported() {
    let err = construct_nu(&builtin("S3"), 10).unwrap_err();
    assert!(err.is_capacity(), "{err}");
}

#[test]
fn complement_cosets_match_carrier() {
    let pair = ActionPair::conjugation(&builtin("S3"));
    let e = construct_eta(&pair, DEFAULT_MAX_COSETS).unwrap();
    let c = enumerate_complement(&pair, DEFAULT_MAX_COSETS).unwrap();
    // cosets of H^phi: index |T| |G|
    assert_eq!(c.cosets() as u64, e.tensor_subgroup().order() * pair.g().order() as u64);
    let all: Vec<(usize, usize)> = (0..6).flat_map(|a| (0..6).map(move |b| (a, b))).collect();
    assert_eq!(c.span(&all).unwrap().order(), e.tensor_subgroup().order());
    // the point-0 key of a product matches the carrier element
    let [a, b, x, y] = e.tensor_factors(1, 2);
    assert_eq!(key_of(&[a, b, x, y]), e.tensor(1, 2).apply(0));
}

#[test]
fn delta_routes_on_small_abelian_groups() {
    for cyclic in [vec![2u64], vec![2, 2], vec![3, 3], vec![2, 4], vec![2, 6]] {
        let inv = AbelianInvariants::from_cyclic_orders(&cyclic);
        let routes = delta_routes(&inv, DEFAULT_MAX_COSETS).unwrap();
        assert!(routes.len() >= 2, "{cyclic:?}");
        for r in routes {
            assert_eq!(r.delta, inv.delta_of_abelian(), "{cyclic:?} via {}", r.route);
        }
    }
}

/// About two minutes in release: the coset route for C2 x C2 x C4, which the
/// default run leaves to the bilinear route.
#[test]
#[ignore]
fn complement_route_for_c2_c2_c4() {
    let g = builtin("C2xC2xC4");
    let pair = ActionPair::conjugation(&g);
    let c = enumerate_complement(&pair, DEFAULT_MAX_COSETS).unwrap();
    let diagonal: Vec<(usize, usize)> = (0..g.order()).map(|a| (a, a)).collect();
    let delta = c.span(&diagonal).unwrap();
    let formula = g.abelian_invariants().delta_of_abelian();
    assert_eq!(delta.order(), formula.order());
    assert_eq!(delta.abelian_invariants(), formula);
}
