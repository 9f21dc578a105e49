//! Root-system certificates of infiniteness.
//!
//! For conjugate Levi subsystems `Φ1`, `Φ2` the double coset collection
//! `X\G/P` is infinite as soon as
//! `½·dim Φ1 − dim(Φ1 ∩ Φ(X)) − ½·dim(Φ2 ∩ Φ(L)) > 0`.
//!
//! With `dim φ = |φ| + rank φ` that value ignores the maximal torus of `L1`
//! modulo its centre, which lies in `X ∩ L1` whenever `X` has maximal rank.
//! Witnesses are therefore also required to have a positive [`orbit_margin`].

mod lemma;
mod table;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::Q;
use crate::rootsys::{levi_classes, weyl_conjugate, Family, LeviClass, Root, RootSystem, Subsystem, SubsystemJson};
use crate::subgroups::{is_spherical, recognize, Finiteness, ParabolicSpec, SubgroupSpec};

pub use lemma::lemma_witness;
pub use table::{sweep_groups, verify_table, TableReport};

/// Returns `Infinite` when neither `X` nor the Levi factor of `P` is spherical.
pub fn spherical_prefilter(g: &RootSystem, x: &SubgroupSpec, p: &ParabolicSpec) -> Result<Option<Finiteness>> {
    let l = recognize(g, &p.levi(g))?;
    if is_spherical(g, x) || is_spherical(g, &l) {
        Ok(None)
    } else {
        Ok(Some(Finiteness::Infinite))
    }
}

fn dim_of(g: &RootSystem, roots: BTreeSet<Root>) -> Result<usize> {
    if roots.is_empty() {
        return Ok(0);
    }
    Ok(Subsystem::from_roots(g, roots)?.dim())
}

fn meet_dim(g: &RootSystem, a: &BTreeSet<Root>, b: &BTreeSet<Root>) -> Result<usize> {
    dim_of(g, a.intersection(b).cloned().collect())
}

/// `½·dim Φ1 − dim(Φ1 ∩ Φ(X)) − ½·dim(Φ2 ∩ Φ(L))`, exactly.
pub fn criterion_value(g: &RootSystem, phi1: &Subsystem, phi2: &Subsystem, phix: &Subsystem, phil: &Subsystem) -> Result<Q> {
    for s in [phi1, phi2, phix, phil] {
        if (s.family, s.rank) != (g.family, g.rank) {
            return Err(Error::AmbientMismatch(g.name(), format!("{}{}", s.family, s.rank)));
        }
    }
    let d1 = phi1.dim() as i64;
    let dx = meet_dim(g, &phi1.roots, &phix.roots)? as i64;
    let dl = meet_dim(g, &phi2.roots, &phil.roots)? as i64;
    Ok(Q::new(d1, 2) - Q::from_integer(dx) - Q::new(dl, 2))
}

fn meet_len(a: &BTreeSet<Root>, b: &BTreeSet<Root>) -> usize {
    a.intersection(b).count()
}

/// `dim L1/(L1 ∩ P') − dim (X ∩ L1)/Z(L1)`:
/// `½|Φ1| − ½|Φ2 ∩ Φ(L)| − |Φ1 ∩ Φ(X)| − rank Φ1`.
pub fn orbit_margin(g: &RootSystem, phi1: &Subsystem, phi2: &Subsystem, phix: &Subsystem, phil: &Subsystem) -> Result<Q> {
    for s in [phi1, phi2, phix, phil] {
        g.same_ambient(s)?;
    }
    let nx = meet_len(&phi1.roots, &phix.roots) as i64;
    let nl = meet_len(&phi2.roots, &phil.roots) as i64;
    Ok(Q::new(phi1.len() as i64 - nl, 2) - Q::from_integer(nx + phi1.span_rank() as i64))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub phi1: Subsystem,
    pub phi2: Subsystem,
    pub value: Q,
    pub margin: Q,
}

fn ser_q<S: Serializer>(q: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(q)
}

#[derive(Serialize)]
struct WitnessJson {
    phi1: SubsystemJson,
    phi2: SubsystemJson,
    #[serde(serialize_with = "ser_q")]
    value: Q,
    #[serde(serialize_with = "ser_q")]
    margin: Q,
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WitnessJson {
            phi1: self.phi1.to_json(),
            phi2: self.phi2.to_json(),
            value: self.value,
            margin: self.margin,
        }
        .serialize(s)
    }
}

impl Witness {
    fn key(&self) -> (Vec<Root>, Vec<Root>) {
        (self.phi1.base.clone(), self.phi2.base.clone())
    }

    /// Larger value first, then the lexicographically smaller pair of bases.
    fn better_than(&self, other: &Witness) -> bool {
        self.value > other.value || (self.value == other.value && self.key() < other.key())
    }

    /// Checks every claim a witness makes.
    pub fn validate(&self, g: &RootSystem, phix: &Subsystem, phil: &Subsystem) -> Result<bool> {
        Ok(g.is_levi_subsystem(&self.phi1)
            && g.is_levi_subsystem(&self.phi2)
            && weyl_conjugate(g, &self.phi1, &self.phi2)?.is_some()
            && self.value > Q::from_integer(0)
            && self.margin > Q::from_integer(0)
            && criterion_value(g, &self.phi1, &self.phi2, phix, phil)? == self.value
            && orbit_margin(g, &self.phi1, &self.phi2, phix, phil)? == self.margin)
    }
}

fn pick_best(cands: impl IntoIterator<Item = Witness>) -> Option<Witness> {
    cands.into_iter().fold(None, |best, w| match best {
        Some(b) if !w.better_than(&b) => Some(b),
        _ => Some(w),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Strategy {
    /// Explicit bases for the rows that have them; the `B_2`/`A_3` search otherwise.
    #[serde(rename = "lemma")]
    LemmaBases,
    /// All Levi subsystems of types `B_2` and `A_3` (`D_3`).
    #[serde(rename = "b2a3")]
    B2A3,
    /// The `B_2`/`A_3` search, then every Levi class up to the rank bound.
    #[serde(rename = "full")]
    Full,
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lemma" => Ok(Strategy::LemmaBases),
            "b2a3" => Ok(Strategy::B2A3),
            "full" => Ok(Strategy::Full),
            _ => Err(Error::Unsupported(format!("strategy '{s}'"))),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::LemmaBases => "lemma",
            Strategy::B2A3 => "b2a3",
            Strategy::Full => "full",
        })
    }
}

/// Bounds on the `full` search.
#[derive(Debug, Clone, Copy)]
pub struct SearchLimits {
    pub max_levi_rank: usize,
    pub max_members: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_levi_rank: crate::rootsys::MAX_RANK,
            max_members: 2_000_000,
        }
    }
}

/// Levi classes of one ambient group, computed on first use.
pub struct Searcher {
    g: RootSystem,
    limits: SearchLimits,
    small: OnceLock<Vec<LeviClass>>,
    all: OnceLock<Vec<LeviClass>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CriterionVerdict {
    InfiniteWitnessed,
    NoWitnessFound,
    PrefilteredInfinite,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub verdict: CriterionVerdict,
    pub witness: Option<Witness>,
    pub search_space_size: usize,
    pub strategy: Strategy,
}

impl Searcher {
    pub fn new(g: RootSystem) -> Self {
        Self::with_limits(g, SearchLimits::default())
    }

    pub fn with_limits(g: RootSystem, limits: SearchLimits) -> Self {
        Searcher {
            g,
            limits,
            small: OnceLock::new(),
            all: OnceLock::new(),
        }
    }

    pub fn group(&self) -> &RootSystem {
        &self.g
    }

    fn small_classes(&self) -> &[LeviClass] {
        self.small.get_or_init(|| {
            let mut v = levi_classes(&self.g, Some(&[(Family::B, 2)]), 2);
            v.extend(levi_classes(&self.g, Some(&[(Family::A, 3)]), 3));
            v
        })
    }

    fn all_classes(&self) -> Result<&[LeviClass]> {
        let v = self.all.get_or_init(|| {
            levi_classes(&self.g, None, self.limits.max_levi_rank)
                .into_iter()
                .filter(|c| !c.representative.is_empty())
                .collect()
        });
        let members: usize = v.iter().map(|c| c.members.len()).sum();
        if members > self.limits.max_members {
            return Err(Error::SearchBound(format!(
                "{members} Levi subsystems exceed the bound {}",
                self.limits.max_members
            )));
        }
        Ok(v)
    }

    /// Best witness within the given classes; also returns how many subsystems were examined.
    fn search(&self, classes: &[LeviClass], phix: &Subsystem, phil: &Subsystem) -> Result<(Option<Witness>, usize)> {
        let g = &self.g;
        // smallest (|meet|, dim meet); the margin only sees the first entry
        let best_member = |members: &[BTreeSet<Root>], target: &BTreeSet<Root>| -> Result<(usize, usize, usize)> {
            let mut best = (usize::MAX, usize::MAX, 0);
            for (i, m) in members.iter().enumerate() {
                let n = meet_len(m, target);
                if n > best.0 {
                    continue;
                }
                let d = meet_dim(g, m, target)?;
                if (n, d) < (best.0, best.1) {
                    best = (n, d, i);
                }
            }
            Ok(best)
        };
        let found: Vec<Result<Option<Witness>>> = classes
            .par_iter()
            .map(|c| {
                let rep = &c.representative;
                let (nx, dx, i1) = best_member(&c.members, &phix.roots)?;
                let (nl, dl, i2) = best_member(&c.members, &phil.roots)?;
                let margin = Q::new((rep.len() - nl) as i64, 2) - Q::from_integer((nx + rep.span_rank()) as i64);
                if margin <= Q::from_integer(0) {
                    return Ok(None);
                }
                let value = Q::new(rep.dim() as i64, 2) - Q::from_integer(dx as i64) - Q::new(dl as i64, 2);
                let phi1 = Subsystem::from_roots(g, c.members[i1].clone())?;
                let phi2 = Subsystem::from_roots(g, c.members[i2].clone())?;
                Ok(Some(Witness { phi1, phi2, value, margin }))
            })
            .collect();
        let mut cands = Vec::new();
        for r in found {
            cands.extend(r?);
        }
        let examined = 2 * classes.iter().map(|c| c.members.len()).sum::<usize>();
        Ok((pick_best(cands), examined))
    }

    /// Searches for a witness of infiniteness for `(X, P)`.
    pub fn find_witness(&self, x: &SubgroupSpec, p: &ParabolicSpec, strategy: Strategy) -> Result<Option<Witness>> {
        Ok(self.find(x, p, strategy)?.0)
    }

    fn find(&self, x: &SubgroupSpec, p: &ParabolicSpec, strategy: Strategy) -> Result<(Option<Witness>, usize)> {
        let g = &self.g;
        let phix = x.subsystem(g)?;
        let phil = p.levi(g);
        if strategy == Strategy::LemmaBases {
            if let Some(w) = lemma_witness(g, x, p)? {
                return Ok((Some(w), 1));
            }
        }
        let (w, mut n) = self.search(self.small_classes(), &phix, &phil)?;
        if w.is_some() || strategy != Strategy::Full {
            return Ok((w, n));
        }
        let (w, m) = self.search(self.all_classes()?, &phix, &phil)?;
        n += m;
        Ok((w, n))
    }

    pub fn report(&self, x: &SubgroupSpec, p: &ParabolicSpec, strategy: Strategy) -> Result<CriterionReport> {
        if spherical_prefilter(&self.g, x, p)?.is_some() {
            return Ok(CriterionReport {
                verdict: CriterionVerdict::PrefilteredInfinite,
                witness: None,
                search_space_size: 0,
                strategy,
            });
        }
        let (witness, size) = self.find(x, p, strategy)?;
        Ok(CriterionReport {
            verdict: if witness.is_some() {
                CriterionVerdict::InfiniteWitnessed
            } else {
                CriterionVerdict::NoWitnessFound
            },
            witness,
            search_space_size: size,
            strategy,
        })
    }
}

/// One-shot form of [`Searcher::find_witness`].
pub fn find_witness(g: &RootSystem, x: &SubgroupSpec, p: &ParabolicSpec, strategy: Strategy) -> Result<Option<Witness>> {
    Searcher::new(g.clone()).find_witness(x, p, strategy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subgroups::{parse_parabolic, parse_subgroup};

    fn hull(g: &RootSystem, base: &[Vec<i32>]) -> Subsystem {
        let b: Vec<Root> = base.iter().cloned().map(Root).collect();
        g.closed_hull(&b).unwrap()
    }

    #[test]
    fn pattern_values() {
        let c3 = RootSystem::new(Family::C, 3).unwrap();
        let b2 = hull(&c3, &[vec![0, 1, -1], vec![0, 0, 2]]);
        let a1 = hull(&c3, &[vec![0, 1, -1]]);
        let empty = Subsystem::empty(&c3);
        assert_eq!(criterion_value(&c3, &b2, &b2, &empty, &a1).unwrap(), Q::new(7, 2));
        let a4 = RootSystem::new(Family::A, 4).unwrap();
        let a3 = hull(&a4, &[vec![1, -1, 0, 0, 0], vec![0, 1, -1, 0, 0], vec![0, 0, 1, -1, 0]]);
        let a1a1 = hull(&a4, &[vec![1, -1, 0, 0, 0], vec![0, 0, 1, -1, 0]]);
        let e = Subsystem::empty(&a4);
        assert_eq!(criterion_value(&a4, &a3, &a3, &e, &a1a1).unwrap(), Q::new(9, 2));
        let x = hull(&a4, &[vec![1, -1, 0, 0, 0]]);
        assert_eq!(criterion_value(&a4, &x, &x, &x, &e).unwrap(), Q::new(-3, 2));
        assert_eq!(orbit_margin(&c3, &b2, &b2, &empty, &a1).unwrap(), Q::from_integer(1));
        assert_eq!(orbit_margin(&a4, &a3, &a3, &e, &a1a1).unwrap(), Q::from_integer(1));
    }

    #[test]
    fn torus_on_projective_space_has_no_witness() {
        // the literal value is positive here, the margin is not
        let a3 = RootSystem::new(Family::A, 3).unwrap();
        let g = a3.full();
        let t = Subsystem::empty(&a3);
        let p = parse_parabolic((Family::A, 3), "P1").unwrap();
        let l = p.levi(&a3);
        assert_eq!(criterion_value(&a3, &g, &g, &t, &l).unwrap(), Q::new(7, 2));
        assert_eq!(orbit_margin(&a3, &g, &g, &t, &l).unwrap(), Q::from_integer(0));
        let x = parse_subgroup((Family::A, 3), "T3").unwrap();
        for s in [Strategy::LemmaBases, Strategy::B2A3, Strategy::Full] {
            assert!(find_witness(&a3, &x, &p, s).unwrap().is_none());
        }
    }

    #[test]
    fn no_witness_for_spherical_x() {
        let g = RootSystem::new(Family::C, 4).unwrap();
        let s = Searcher::new(g.clone());
        let x = parse_subgroup((Family::C, 4), "C2*C2").unwrap();
        for k in 1..=4 {
            let p = ParabolicSpec::maximal((Family::C, 4), k).unwrap();
            assert!(s.find_witness(&x, &p, Strategy::B2A3).unwrap().is_none());
        }
    }

    #[test]
    fn prefilter() {
        let a5 = RootSystem::new(Family::A, 5).unwrap();
        let x = parse_subgroup((Family::A, 5), "A1*A1*A1*T2").unwrap();
        let p = parse_parabolic((Family::A, 5), "P3").unwrap();
        assert_eq!(spherical_prefilter(&a5, &x, &p).unwrap(), None);
        let c4 = RootSystem::new(Family::C, 4).unwrap();
        let x = parse_subgroup((Family::C, 4), "C1*C1*C1*C1").unwrap();
        let p = parse_parabolic((Family::C, 4), "P2").unwrap();
        assert_eq!(spherical_prefilter(&c4, &x, &p).unwrap(), Some(Finiteness::Infinite));
    }

    #[test]
    fn witness_for_c4_four_blocks() {
        let g = RootSystem::new(Family::C, 4).unwrap();
        let x = parse_subgroup((Family::C, 4), "C1*C1*C1*C1").unwrap();
        let p = parse_parabolic((Family::C, 4), "P4").unwrap();
        let w = find_witness(&g, &x, &p, Strategy::B2A3).unwrap().unwrap();
        assert!(w.validate(&g, &x.subsystem(&g).unwrap(), &p.levi(&g)).unwrap());
        let json = serde_json::to_value(&w).unwrap();
        assert!(json["value"].as_str().unwrap().contains('/') || json["value"].as_str().unwrap().parse::<i64>().is_ok());
    }
}
