//! Orbit counts over small prime fields.
//!
//! `G(F_q)` and `X(F_q)` are realized as matrix groups on the natural module
//! with its standard split form, `G/P` as flags of totally singular
//! subspaces, and orbits are found by union-find closure under generators.
//! Counts that stay put as `q` grows are evidence of finiteness; counts that
//! grow are evidence of an infinite collection.

mod field;
mod flags;
mod group;
mod orbits;
mod properties;
mod space;
pub mod subspace;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::Family;
use crate::subgroups::{ParabolicSpec, SubgroupSpec};

pub use field::{PrimeField, SUPPORTED_PRIMES};
pub use flags::{enumerate_flags, flag_count, Budget, FlagSet};
pub use group::{ambient_instance, build_subgroup_instance, root_element, torus_generators, Generator, MatrixGroupInstance};
pub use orbits::{count_orbits, orbit_partition, OrbitReport};
pub use properties::{verify_parity_classes, verify_section3_properties, PropertyReport, Sampling};
pub use space::{build_formed_space, FormedSpace, MAX_DIM};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Evidence {
    Bounded,
    Growing,
    Inconclusive,
}

impl std::fmt::Display for Evidence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Evidence::Bounded => "Bounded",
            Evidence::Growing => "Growing",
            Evidence::Inconclusive => "Inconclusive",
        })
    }
}

/// Raw counts and the verdict drawn from them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilizationReport {
    pub verdict: Evidence,
    pub counts: Vec<OrbitReport>,
    /// Realization of the orthogonal groups used for the counts.
    pub group: &'static str,
    /// Set when a count ran out of budget; `counts` then holds the completed prefix.
    pub budget_exceeded: Option<String>,
}

/// Orthogonal counts may differ by this factor from the `SO` interpretation.
pub const ORTHOGONAL_BAND: usize = 2;

/// Verdict from orbit counts listed in increasing `q`.
///
/// With three or more counts, Bounded when the counts from the second entry
/// on lie within a factor `band` of each other. Otherwise Growing when the
/// counts strictly increase. A lone trailing count is trivially constant.
pub fn judge(counts: &[usize], band: usize) -> Evidence {
    if counts.len() < 2 {
        return Evidence::Inconclusive;
    }
    let tail = &counts[1..];
    let lo = tail.iter().min().copied().unwrap_or(0);
    let hi = tail.iter().max().copied().unwrap_or(0);
    if tail.len() >= 2 && hi <= band.max(1) * lo {
        return Evidence::Bounded;
    }
    if counts.windows(2).all(|w| w[0] < w[1]) {
        return Evidence::Growing;
    }
    if tail.len() == 1 {
        return Evidence::Bounded;
    }
    Evidence::Inconclusive
}

/// Default field sizes: `[2, 3, 5]` for boundedness and `[2, 3]` for growth,
/// shifted to odd primes in type `B`.
pub fn default_q_list(family: Family, growth: bool) -> Vec<u32> {
    match (family == Family::B, growth) {
        (false, false) => vec![2, 3, 5],
        (false, true) => vec![2, 3],
        (true, false) => vec![3, 5, 7],
        (true, true) => vec![3, 5],
    }
}

type FlagKey = (Family, usize, Vec<usize>, u32);

/// Orbit counting with flag sets cached per `(G, P, q)`.
pub struct Oracle {
    pub budget: Budget,
    flags: Mutex<HashMap<FlagKey, std::result::Result<Arc<FlagSet>, Error>>>,
}

impl Oracle {
    pub fn new(budget: Budget) -> Self {
        Oracle {
            budget,
            flags: Mutex::new(HashMap::new()),
        }
    }

    /// Drops every cached flag set.
    pub fn clear(&self) {
        self.flags.lock().expect("cache lock").clear();
    }

    pub fn flags(&self, p: &ParabolicSpec, q: u32) -> Result<Arc<FlagSet>> {
        let key = (p.ambient.0, p.ambient.1, p.crossed.iter().copied().collect(), q);
        if let Some(hit) = self.flags.lock().expect("cache lock").get(&key) {
            return hit.clone();
        }
        let made = build_formed_space(p.ambient.0, p.ambient.1, q)
            .and_then(|space| enumerate_flags(&space, p, &self.budget))
            .map(Arc::new);
        self.flags.lock().expect("cache lock").insert(key, made.clone());
        made
    }

    pub fn orbits(&self, x: &SubgroupSpec, p: &ParabolicSpec, q: u32) -> Result<OrbitReport> {
        if x.ambient != p.ambient {
            return Err(Error::AmbientMismatch(
                format!("{}{}", x.ambient.0, x.ambient.1),
                format!("{}{}", p.ambient.0, p.ambient.1),
            ));
        }
        let space = build_formed_space(x.ambient.0, x.ambient.1, q)?;
        let flags = self.flags(p, q)?;
        let group = build_subgroup_instance(&space, x)?;
        count_orbits(&group, &flags, &self.budget)
    }

    /// Orbit counts of `X` on `G/P` over each field in `q_list`.
    pub fn stabilization_test(&self, x: &SubgroupSpec, p: &ParabolicSpec, q_list: &[u32]) -> Result<StabilizationReport> {
        if q_list.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Unsupported(format!("field sizes {q_list:?} must be ascending")));
        }
        for &q in q_list {
            PrimeField::new(q)?;
            if x.ambient.0 == Family::B && q == 2 {
                return Err(Error::Unsupported("B_n over F_2 (degenerate polar form)".into()));
            }
        }
        let orthogonal = matches!(x.ambient.0, Family::B | Family::D);
        let mut counts = Vec::new();
        let mut budget_exceeded = None;
        for &q in q_list {
            match self.orbits(x, p, q) {
                Ok(r) => counts.push(r),
                Err(Error::Budget(msg)) => {
                    budget_exceeded = Some(format!("q = {q}: {msg}"));
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        let verdict = if budget_exceeded.is_some() {
            Evidence::Inconclusive
        } else {
            let raw: Vec<usize> = counts.iter().map(|r| r.orbits).collect();
            judge(&raw, if orthogonal { ORTHOGONAL_BAND } else { 1 })
        };
        Ok(StabilizationReport {
            verdict,
            counts,
            group: if orthogonal { "root subgroups and split torus (connected)" } else { "full" },
            budget_exceeded,
        })
    }
}

/// One-shot form of [`Oracle::stabilization_test`].
pub fn stabilization_test(x: &SubgroupSpec, p: &ParabolicSpec, q_list: &[u32], budget: &Budget) -> Result<StabilizationReport> {
    Oracle::new(*budget).stabilization_test(x, p, q_list)
}
