use std::collections::BTreeSet;

use dcoset::rootsys::{Family, RootSystem};
use dcoset::subgroups::{
    enumerate_maximal_rank_subgroups, is_spherical, parse_subgroup, Classifier, ParabolicSpec, Provenance,
};
use proptest::prelude::*;

/// Multisets of parts from `kinds` (kind, min size) summing to `total`, as sorted lists.
fn multisets(total: usize, kinds: &[(char, usize)]) -> Vec<Vec<(char, usize)>> {
    fn go(rem: usize, kinds: &[(char, usize)], from: (usize, usize), cur: &mut Vec<(char, usize)>, out: &mut Vec<Vec<(char, usize)>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for (ki, &(c, min)) in kinds.iter().enumerate().skip(from.0) {
            let lo = if ki == from.0 { from.1.max(min) } else { min };
            for k in lo..=rem {
                cur.push((c, k));
                go(rem - k, kinds, (ki, k), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(total, kinds, (0, 0), &mut Vec::new(), &mut out);
    out
}

/// Every maximal rank subgroup, written out from its block decomposition.
fn by_blocks(f: Family, n: usize) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    let text = |parts: &[(char, usize)], extra: &str| {
        let mut tokens = Vec::new();
        let mut torus = 0;
        for &(c, k) in parts {
            match c {
                'G' => {
                    tokens.push(format!("A{}", k - 1));
                    torus += 1;
                }
                _ => tokens.push(format!("{c}{k}")),
            }
        }
        if f == Family::A {
            torus -= 1;
        }
        tokens.push(format!("T{torus}"));
        if let Some(first) = tokens.iter_mut().find(|t| t.starts_with('A')) {
            first.push_str(extra);
        }
        tokens.join("*")
    };
    match f {
        Family::A => {
            for p in multisets(n + 1, &[('G', 1)]) {
                out.insert(text(&p, ""));
            }
        }
        Family::B => {
            for b in 0..=n {
                for p in multisets(n - b, &[('G', 1), ('D', 2)]) {
                    let mut p = p;
                    if b > 0 {
                        p.push(('B', b));
                    }
                    out.insert(text(&p, ""));
                }
            }
        }
        Family::C => {
            for p in multisets(n, &[('G', 1), ('C', 1)]) {
                out.insert(text(&p, ""));
            }
        }
        Family::D => {
            for p in multisets(n, &[('G', 1), ('D', 2)]) {
                if p.iter().all(|&(c, k)| c == 'G' && k % 2 == 0) {
                    out.insert(text(&p, "[gl+]"));
                    out.insert(text(&p, "[gl-]"));
                } else {
                    out.insert(text(&p, ""));
                }
            }
        }
    }
    out.into_iter()
        .map(|s| parse_subgroup((f, n), &s).unwrap().to_string())
        .collect()
}

fn groups(bound: usize) -> Vec<RootSystem> {
    let mut out = Vec::new();
    for n in 1..=bound {
        out.push(RootSystem::new(Family::A, n).unwrap());
    }
    for n in 2..=bound {
        out.push(RootSystem::new(Family::B, n).unwrap());
        out.push(RootSystem::new(Family::C, n).unwrap());
    }
    for n in 4..=bound {
        out.push(RootSystem::new(Family::D, n).unwrap());
    }
    out
}

#[test]
fn enumeration_matches_block_partitions() {
    for g in groups(6) {
        let got: BTreeSet<String> = enumerate_maximal_rank_subgroups(&g, true)
            .unwrap()
            .into_iter()
            .map(|e| e.spec.to_string())
            .collect();
        assert_eq!(got, by_blocks(g.family, g.rank), "{}", g.name());
    }
}

#[test]
fn enumeration_preserves_rank() {
    for g in groups(6) {
        for e in enumerate_maximal_rank_subgroups(&g, true).unwrap() {
            assert_eq!(e.phi.span_rank() + e.spec.central_torus_rank, g.rank, "{} {}", g.name(), e.spec);
        }
    }
}

#[test]
fn every_infinite_case_is_attributed() {
    for g in groups(6) {
        let c = Classifier::new(g.clone());
        for e in enumerate_maximal_rank_subgroups(&g, true).unwrap() {
            for node in 1..=g.rank {
                let p = ParabolicSpec::maximal((g.family, g.rank), node).unwrap();
                let v = c.classify(&e.spec, &p).unwrap();
                assert_ne!(v.provenance, Provenance::Uncovered, "{} {} {}", g.name(), e.spec, p);
            }
        }
    }
}

#[test]
fn borel_verdict_is_sphericity() {
    for g in groups(5) {
        let c = Classifier::new(g.clone());
        let borel = ParabolicSpec::new((g.family, g.rank), 1..=g.rank).unwrap();
        for e in enumerate_maximal_rank_subgroups(&g, true).unwrap() {
            let v = c.classify(&e.spec, &borel).unwrap();
            assert_eq!(v.is_finite(), is_spherical(&g, &e.spec), "{} {}", g.name(), e.spec);
        }
    }
}

fn arb_case() -> impl Strategy<Value = (RootSystem, usize, Vec<usize>)> {
    let gs = groups(6);
    (0..gs.len(), any::<prop::sample::Index>(), prop::collection::vec(any::<bool>(), 6)).prop_map(
        move |(gi, xi, mask)| {
            let g = gs[gi].clone();
            let crossed: Vec<usize> = (1..=g.rank).filter(|&k| mask[k - 1]).collect();
            (g, xi.index(1 << 16), crossed)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn finiteness_passes_to_larger_parabolics((g, xi, crossed) in arb_case()) {
        prop_assume!(!crossed.is_empty());
        let all = enumerate_maximal_rank_subgroups(&g, true).unwrap();
        let x = &all[xi % all.len()].spec;
        let c = Classifier::new(g.clone());
        let p = ParabolicSpec::new((g.family, g.rank), crossed.clone()).unwrap();
        if c.classify(x, &p).unwrap().is_finite() {
            for drop in 0..crossed.len() {
                let fewer: Vec<usize> = crossed.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &k)| k).collect();
                if fewer.is_empty() {
                    continue;
                }
                let q = ParabolicSpec::new((g.family, g.rank), fewer).unwrap();
                prop_assert!(c.classify(x, &q).unwrap().is_finite(), "{} {} {} -> {}", g.name(), x, p, q);
            }
        }
    }
}

#[test]
fn odd_d_fork_nodes_agree() {
    for n in [5, 7] {
        let g = RootSystem::new(Family::D, n).unwrap();
        let c = Classifier::new(g.clone());
        let p = ParabolicSpec::maximal((Family::D, n), n - 1).unwrap();
        let q = ParabolicSpec::maximal((Family::D, n), n).unwrap();
        for e in enumerate_maximal_rank_subgroups(&g, true).unwrap() {
            assert_eq!(
                c.classify(&e.spec, &p).unwrap().value,
                c.classify(&e.spec, &q).unwrap().value,
                "D{n} {}",
                e.spec
            );
        }
    }
}
