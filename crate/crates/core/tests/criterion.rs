use dcoset::criterion::{criterion_value, find_witness, verify_table, Searcher, Strategy};
use dcoset::linalg::Q;
use dcoset::rootsys::{levi_classes, Family, RootSystem, WeylElement};
use dcoset::subgroups::{enumerate_maximal_rank_subgroups, parse_parabolic, parse_subgroup, ParabolicSpec};
use proptest::prelude::*;
use proptest::strategy::Strategy as _;

#[test]
fn table_consistent_to_rank_4() {
    let r = verify_table(4).unwrap();
    assert!(r.is_clean(), "{r:?}");
    assert!(r.finite_cases > 0 && r.infinite_cases > 0);
}

#[test]
fn vacuous_at_rank_1() {
    let r = verify_table(1).unwrap();
    assert_eq!(r.infinite_cases, 0);
    assert!(r.is_clean());
}

#[test]
fn d4_triality_pairs() {
    let g = RootSystem::new(Family::D, 4).unwrap();
    let amb = (Family::D, 4);
    for strategy in [Strategy::LemmaBases, Strategy::B2A3, Strategy::Full] {
        for (x, p) in [("A1[gl-]*A1*T2", "P4"), ("A1[gl+]*A1*T2", "P3")] {
            let x = parse_subgroup(amb, x).unwrap();
            let p = parse_parabolic(amb, p).unwrap();
            assert!(find_witness(&g, &x, &p, strategy).unwrap().is_none(), "{strategy} {x} {p}");
        }
        let x = parse_subgroup(amb, "A1[gl-]*A1*T2").unwrap();
        let p = parse_parabolic(amb, "P3").unwrap();
        assert!(find_witness(&g, &x, &p, strategy).unwrap().is_some(), "{strategy}");
    }
}

#[test]
fn witnesses_are_valid_and_deterministic() {
    let g = RootSystem::new(Family::C, 5).unwrap();
    let s = Searcher::new(g.clone());
    for e in enumerate_maximal_rank_subgroups(&g, true).unwrap() {
        for node in 1..=5 {
            let p = ParabolicSpec::maximal((Family::C, 5), node).unwrap();
            if let Some(w) = s.find_witness(&e.spec, &p, Strategy::B2A3).unwrap() {
                assert!(w.validate(&g, &e.phi, &p.levi(&g)).unwrap());
                let again = Searcher::new(g.clone()).find_witness(&e.spec, &p, Strategy::B2A3).unwrap();
                assert_eq!(Some(w), again);
            }
        }
    }
}

fn weyl_element(m: usize, perm: Vec<usize>, flips: Vec<bool>, family: Family) -> WeylElement {
    let mut signs: Vec<i8> = flips.iter().map(|&f| if f { -1 } else { 1 }).collect();
    match family {
        Family::A => signs = vec![1; m],
        Family::D => {
            if signs.iter().filter(|&&s| s < 0).count() % 2 == 1 {
                signs[0] = -signs[0];
            }
        }
        _ => {}
    }
    WeylElement { perm, signs }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn value_is_weyl_invariant(
        fi in 0usize..4,
        seed in any::<prop::sample::Index>(),
        perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle(),
        flips in prop::collection::vec(any::<bool>(), 6),
    ) {
        let (family, n) = [(Family::A, 5), (Family::B, 4), (Family::C, 4), (Family::D, 5)][fi];
        let g = RootSystem::new(family, n).unwrap();
        let m = g.dim();
        let perm: Vec<usize> = perm.into_iter().filter(|&k| k < m).collect();
        let w = weyl_element(m, perm, flips[..m].to_vec(), family);
        let classes = levi_classes(&g, None, n);
        let subs = enumerate_maximal_rank_subgroups(&g, true).unwrap();
        let k = seed.index(1 << 20);
        let c1 = &classes[k % classes.len()];
        let c2 = &classes[(k / 7) % classes.len()];
        let phix = &subs[(k / 13) % subs.len()].phi;
        let p = ParabolicSpec::maximal((family, n), 1 + (k / 3) % n).unwrap();
        let phil = p.levi(&g);
        let phi1 = dcoset::rootsys::Subsystem::from_roots(&g, c1.members[k % c1.members.len()].clone()).unwrap();
        let phi2 = dcoset::rootsys::Subsystem::from_roots(&g, c2.members[k % c2.members.len()].clone()).unwrap();
        let moved = |s: &dcoset::rootsys::Subsystem| dcoset::rootsys::Subsystem::from_roots(&g, w.apply_set(&s.roots)).unwrap();
        let before = criterion_value(&g, &phi1, &phi2, phix, &phil).unwrap();
        let after = criterion_value(&g, &moved(&phi1), &moved(&phi2), &moved(phix), &moved(&phil)).unwrap();
        prop_assert_eq!(before, after);
        prop_assert_eq!(before * Q::from_integer(2), (before * Q::from_integer(2)).round());
    }
}
