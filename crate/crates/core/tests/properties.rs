use std::collections::{HashSet, VecDeque};

use proptest::prelude::*;
use tensorial_core::fpgroup::Letter;
use tensorial_core::{
    check_compatibility, parse_presentation, smith_normal_form, todd_coxeter, AbelianInvariants, ActionPair,
    FiniteGroup, GroupHom, IntMatrix, Perm, PermGroup, Presentation, Word,
};

fn perm(degree: usize) -> impl Strategy<Value = Perm> {
    Just((0..degree as u32).collect::<Vec<u32>>()).prop_shuffle().prop_map(|v| Perm::from_images(v).unwrap())
}

fn gens(degree: usize) -> impl Strategy<Value = Vec<Perm>> {
    prop::collection::vec(perm(degree), 1..=3)
}

fn naive_closure(gens: &[Perm]) -> HashSet<Perm> {
    let id = Perm::identity(gens[0].degree());
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul(g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

fn is_even(p: &Perm) -> bool {
    p.cycle_lengths().iter().filter(|&&l| l % 2 == 0).count() % 2 == 0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn membership_matches_naive_closure(gs in gens(5), probes in prop::collection::vec(perm(5), 8)) {
        let group = PermGroup::from_generators(gs.clone()).unwrap();
        let naive = naive_closure(&gs);
        prop_assert_eq!(group.order(), naive.len() as u64);
        for g in &naive {
            prop_assert!(group.contains(g));
        }
        for p in &probes {
            prop_assert_eq!(group.contains(p), naive.contains(p));
        }
    }

    #[test]
    fn normal_closure_is_normal_and_divides(gs in gens(5), s in perm(5)) {
        let group = PermGroup::from_generators(gs.clone()).unwrap();
        // a member built from the generators; `s` itself need not be a member
        let member = gs.iter().fold(Perm::identity(5), |acc, g| acc.mul(g)).mul(&gs[0]);
        let closure = group.normal_closure(&[member]).unwrap();
        prop_assert_eq!(group.order() % closure.order(), 0);
        prop_assert!(closure.is_normal_in(&group));
        prop_assert!(group.normal_closure(std::slice::from_ref(&s)).is_err() || group.contains(&s));
    }

    #[test]
    fn kernel_times_image_is_source(gs in gens(5)) {
        let source = PermGroup::from_generators(gs.clone()).unwrap();
        let swap = Perm::from_images(vec![1, 0]).unwrap();
        let target = PermGroup::from_generators(vec![swap.clone()]).unwrap();
        let images = gs.iter().map(|g| if is_even(g) { Perm::identity(2) } else { swap.clone() }).collect();
        let sign = GroupHom::new(source.clone(), target, images).unwrap();
        let kernel = sign.kernel();
        prop_assert_eq!(kernel.order() * sign.image().order(), source.order());
        for k in kernel.elements() {
            prop_assert!(is_even(&k));
        }
    }

    #[test]
    fn centralizer_index_times_centralizer(gs in gens(5), pick in any::<prop::sample::Index>()) {
        let group = PermGroup::from_generators(gs.clone()).unwrap();
        let elements = group.elements();
        let x = &elements[pick.index(elements.len())];
        let centralizer = elements.iter().filter(|g| g.mul(x) == x.mul(g)).count() as u64;
        prop_assert_eq!(group.centralizer_index(x).unwrap() * centralizer, group.order());
    }

    #[test]
    fn invariants_survive_relabeling(gs in gens(6), sigma in perm(6)) {
        let group = PermGroup::from_generators(gs.clone()).unwrap();
        let relabeled = PermGroup::from_generators(gs.iter().map(|g| g.conjugate(&sigma)).collect()).unwrap();
        prop_assert_eq!(group.abelian_invariants(), relabeled.abelian_invariants());
        prop_assert_eq!(group.order(), relabeled.order());
    }
}

fn word(ngens: u32) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..ngens, any::<bool>()), 1..8)
        .prop_map(|ls| Word::from_letters(ls.into_iter().map(|(g, inv)| Letter::new(g, inv)).collect()))
}

fn presentation() -> impl Strategy<Value = Presentation> {
    (1u32..=3).prop_flat_map(|n| {
        prop::collection::vec(word(n), 0..5).prop_map(move |rels| {
            let names = ["a", "b", "c"][..n as usize].iter().map(|s| s.to_string()).collect();
            Presentation::new(names, rels).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn render_parse_round_trip(p in presentation()) {
        let again = parse_presentation(&p.render()).unwrap();
        prop_assert_eq!(&again, &p);
        prop_assert_eq!(parse_presentation(&again.render()).unwrap(), p);
    }

    #[test]
    fn dihedral_enumeration_is_deterministic(n in 2u32..=12) {
        let text = format!("<r, s | r^{n}, s^2, (rs)^2>");
        let p = parse_presentation(&text).unwrap();
        let first = todd_coxeter(&p, &[], 10_000).unwrap();
        let second = todd_coxeter(&p, &[], 10_000).unwrap();
        prop_assert_eq!(&first, &second);
        prop_assert_eq!(first.num_cosets(), 2 * n as usize);
        prop_assert!(first.audit(p.relators()).is_ok());
        // the index of <s> is n
        let sub = todd_coxeter(&p, &[Word::gen(1)], 10_000).unwrap();
        prop_assert_eq!(sub.num_cosets(), n as usize);
    }
}

fn cyclic_list() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1u64..=24, 0..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn smith_form_audits(rows in 1usize..=4, cols in 1usize..=4, entries in prop::collection::vec(-20i64..=20, 16)) {
        let m: Vec<Vec<i64>> = (0..rows).map(|i| entries[i * 4..i * 4 + cols].to_vec()).collect();
        let m = IntMatrix::from_rows(&m);
        let f = smith_normal_form(&m);
        prop_assert_eq!(f.u.mul(&m).mul(&f.v), f.diagonal_matrix());
        for det in [f.u.determinant().to_string(), f.v.determinant().to_string()] {
            prop_assert!(det == "1" || det == "-1", "determinant {}", det);
        }
        let d: Vec<i64> = f.diagonal.iter().map(|x| x.to_string().parse().unwrap()).collect();
        for w in d.windows(2) {
            prop_assert!(w[0] >= 0);
            // divisor chain, with zeros only at the end
            let chained = if w[0] == 0 { w[1] == 0 } else { w[1] % w[0] == 0 };
            prop_assert!(chained, "{:?}", d);
        }
    }

    #[test]
    fn z_tensor_laws(a in cyclic_list(), b in cyclic_list(), c in cyclic_list()) {
        let (ia, ib, ic) = (
            AbelianInvariants::from_cyclic_orders(&a),
            AbelianInvariants::from_cyclic_orders(&b),
            AbelianInvariants::from_cyclic_orders(&c),
        );
        prop_assert_eq!(ia.z_tensor(&ib), ib.z_tensor(&ia));
        prop_assert_eq!(ia.z_tensor(&ib).z_tensor(&ic), ia.z_tensor(&ib.z_tensor(&ic)));
        let bc: Vec<u64> = b.iter().chain(&c).copied().collect();
        let sum = AbelianInvariants::from_cyclic_orders(&bc);
        let mut parts: Vec<u64> = ia.z_tensor(&ib).factors().to_vec();
        parts.extend(ia.z_tensor(&ic).factors());
        prop_assert_eq!(ia.z_tensor(&sum), AbelianInvariants::from_cyclic_orders(&parts));
    }

    #[test]
    fn delta_order_and_primes(a in cyclic_list()) {
        let inv = AbelianInvariants::from_cyclic_orders(&a);
        let n = inv.factors();
        let mut expected: u64 = n.iter().product();
        for j in 0..n.len() {
            for k in j + 1..n.len() {
                let (mut x, mut y) = (n[j], n[k]);
                while y != 0 {
                    (x, y) = (y, x % y);
                }
                expected *= x;
            }
        }
        let delta = inv.delta_of_abelian();
        prop_assert_eq!(delta.order(), expected);
        prop_assert_eq!(delta.pi_set(), inv.pi_set());
    }
}

/// Presentation with one generator per non-identity element and the
/// multiplication table as relators, built here independently of the library.
fn cayley_presentation(g: &FiniteGroup) -> Presentation {
    let id = g.identity();
    let others: Vec<usize> = (0..g.order()).filter(|&a| a != id).collect();
    let slot = |a: usize| others.iter().position(|&x| x == a).map(|i| i as u32);
    let letter = |a: usize| slot(a).map(Word::gen).unwrap_or_else(Word::empty);
    let mut rels = Vec::new();
    for &a in &others {
        for &b in &others {
            let r = letter(a).concat(&letter(b)).concat(&letter(g.mul(a, b)).inverse());
            rels.push(r);
        }
    }
    let names = others.iter().map(|&a| format!("x{a}")).collect();
    Presentation::new(names, rels).unwrap()
}

#[test]
fn cayley_presentations_enumerate_to_the_group_order() {
    let names = [
        "C1", "C2", "C5", "C12", "V4", "C2xC2xC2", "C2xC6", "C3xC3", "D6", "D8", "D12", "D16", "D20", "D24", "Q8", "S3",
        "A4", "C24", "C2xC12",
    ];
    for name in names {
        let g = FiniteGroup::builtin(name).unwrap();
        if g.order() == 1 {
            continue;
        }
        let p = cayley_presentation(&g);
        let table = todd_coxeter(&p, &[], 100_000).unwrap();
        assert_eq!(table.num_cosets(), g.order(), "{name}");
        assert!(table.audit(p.relators()).is_ok(), "{name}");
    }
}

#[test]
fn compatibility_verdict_is_swap_symmetric() {
    let mut pairs: Vec<ActionPair> = ["C2", "C6", "V4", "D8", "Q8", "S3", "A4"]
        .iter()
        .map(|n| ActionPair::conjugation(&FiniteGroup::builtin(n).unwrap()))
        .collect();
    for (a, b) in [("C2", "S3"), ("D8", "C3"), ("A4", "Q8")] {
        pairs.push(ActionPair::trivial(&FiniteGroup::builtin(a).unwrap(), &FiniteGroup::builtin(b).unwrap()));
    }
    pairs.push(tensorial_core::action::incompatible_example());
    for pair in pairs {
        let direct = check_compatibility(&pair);
        let swapped = check_compatibility(&pair.swapped());
        assert_eq!(direct.is_compatible(), swapped.is_compatible());
        assert_eq!(direct.failures.len(), swapped.failures.len());
        assert_eq!(direct.triples_checked, swapped.triples_checked);
    }
}
