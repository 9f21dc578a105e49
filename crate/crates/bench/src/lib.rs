//! Fixed inputs shared by the benchmarks.

use dcoset::rootsys::{Family, RootSystem};
use dcoset::subgroups::{parse_parabolic, parse_subgroup, ParabolicSpec, SubgroupSpec};

/// A named `(G, X, P)` triple.
pub struct Case {
    pub name: &'static str,
    pub group: RootSystem,
    pub subgroup: SubgroupSpec,
    pub parabolic: ParabolicSpec,
}

fn case(name: &'static str, fam: Family, n: usize, x: &str, p: &str) -> Case {
    Case {
        name,
        group: RootSystem::new(fam, n).expect("valid group"),
        subgroup: parse_subgroup((fam, n), x).expect("valid subgroup"),
        parabolic: parse_parabolic((fam, n), p).expect("valid parabolic"),
    }
}

/// Cases for the classification and witness benchmarks.
pub fn criterion_cases() -> Vec<Case> {
    vec![
        case("C4 C1^4 P4", Family::C, 4, "C1*C1*C1*C1", "P4"),
        case("D5 A1*A2*T2 P5", Family::D, 5, "A1*A2*T2", "P5"),
        case("B4 B1*D2*T1 P1", Family::B, 4, "B1*D2*T1", "P1"),
        case("A5 A1^4*T3 P3", Family::A, 5, "A1*A1*A0*A0*T3", "P3"),
    ]
}

/// Cases for the orbit-count benchmarks.
pub fn oracle_cases() -> Vec<Case> {
    vec![
        case("C2 C1*C1 P1", Family::C, 2, "C1*C1", "P1"),
        case("C3 C1*C2 P3", Family::C, 3, "C1*C2", "P3"),
        case("D4 A3*T1 P1", Family::D, 4, "A3*T1", "P1"),
    ]
}
