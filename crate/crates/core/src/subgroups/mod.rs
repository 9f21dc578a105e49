//! Maximal rank subgroups `X`, parabolics `P`, and the finiteness decision for `X\G/P`.

mod enumerate;
mod grammar;
mod recognize;
mod spec;
pub mod tables;

use std::fmt;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rootsys::{weyl_embeds, RootSystem, Subsystem};

pub use enumerate::{enumerate_maximal_rank_subgroups, Enumerated};
pub use grammar::{parse_group, parse_parabolic, parse_subgroup};
pub use recognize::{recognize, recognize_roots};
pub use spec::{Block, DnClass, FactorFamily, FactorSpec, Flavor, ParabolicSpec, SubgroupSpec};

use tables::{d4_exception, exception_rows, infinite_rows, spherical_rows, Row, D4_TRIALITY_LABEL};

/// `Φ(X)` in standard placement.
pub fn subsystem_of_x(g: &RootSystem, x: &SubgroupSpec) -> Result<Subsystem> {
    x.subsystem(g)
}

/// `Φ(L)` for the standard Levi factor of `P`.
pub fn levi_subsystem(g: &RootSystem, p: &ParabolicSpec) -> Result<Subsystem> {
    if p.ambient != (g.family, g.rank) {
        return Err(Error::AmbientMismatch(g.name(), p.to_string()));
    }
    Ok(p.levi(g))
}

/// Label of the spherical row containing `X`, if any.
pub fn spherical_row(x: &SubgroupSpec) -> Option<&'static str> {
    if x.is_whole() {
        return Some("X = G");
    }
    spherical_rows().into_iter().find(|r| r.fits(x)).map(|r| r.label)
}

pub fn is_spherical(g: &RootSystem, x: &SubgroupSpec) -> bool {
    x.ambient == (g.family, g.rank) && spherical_row(x).is_some()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Finiteness {
    Finite,
    Infinite,
}

impl fmt::Display for Finiteness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Finiteness::Finite => "Finite",
            Finiteness::Infinite => "Infinite",
        })
    }
}

/// The one clause that decided a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Provenance {
    Spherical(&'static str),
    Exception(&'static str),
    /// `P` not maximal and `X` not spherical.
    NonMaximalParabolic,
    /// Neither `X` nor the Levi factor of `P` is spherical.
    NeitherSpherical,
    /// `X` is conjugate into a maximal infinite case for this `P`.
    InfiniteRow(&'static str),
    /// No finiteness clause applies and no infinite row contains `X`.
    Uncovered,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Spherical(l) => write!(f, "spherical: {l}"),
            Provenance::Exception(l) => write!(f, "finite clause {l}"),
            Provenance::NonMaximalParabolic => f.write_str("non-maximal P with X not spherical"),
            Provenance::NeitherSpherical => f.write_str("neither X nor L spherical"),
            Provenance::InfiniteRow(l) => write!(f, "infinite case {l}"),
            Provenance::Uncovered => f.write_str("no finiteness clause applies"),
        }
    }
}

impl Serialize for Provenance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Verdict {
    pub value: Finiteness,
    pub provenance: Provenance,
}

impl Verdict {
    fn finite(p: Provenance) -> Self {
        Verdict {
            value: Finiteness::Finite,
            provenance: p,
        }
    }

    fn infinite(p: Provenance) -> Self {
        Verdict {
            value: Finiteness::Infinite,
            provenance: p,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.value == Finiteness::Finite
    }
}

struct RowInstance {
    row: Row,
    members: Vec<Enumerated>,
}

/// Classification for one ambient group, caching the enumeration used to
/// attribute infinite verdicts.
pub struct Classifier {
    g: RootSystem,
    rows: OnceLock<Result<Vec<RowInstance>>>,
}

impl Classifier {
    pub fn new(g: RootSystem) -> Self {
        Classifier {
            g,
            rows: OnceLock::new(),
        }
    }

    pub fn group(&self) -> &RootSystem {
        &self.g
    }

    fn rows(&self) -> Result<&Vec<RowInstance>> {
        let r = self.rows.get_or_init(|| {
            let all = enumerate_maximal_rank_subgroups(&self.g, true)?;
            Ok(infinite_rows()
                .into_iter()
                .filter(|r| r.family == self.g.family)
                .map(|row| {
                    let members = all.iter().filter(|e| row.fits(&e.spec)).cloned().collect();
                    RowInstance { row, members }
                })
                .collect())
        });
        r.as_ref().map_err(Clone::clone)
    }

    fn check(&self, x: &SubgroupSpec, p: &ParabolicSpec) -> Result<()> {
        let amb = (self.g.family, self.g.rank);
        if x.ambient != amb {
            return Err(Error::AmbientMismatch(self.g.name(), x.to_string()));
        }
        if p.ambient != amb {
            return Err(Error::AmbientMismatch(self.g.name(), p.to_string()));
        }
        Ok(())
    }

    /// Label of the finiteness clause that applies, ignoring sphericity of `X`.
    pub fn exception(&self, x: &SubgroupSpec, p: &ParabolicSpec) -> Option<&'static str> {
        let node = p.node()?;
        if d4_exception(x, p) {
            return Some(D4_TRIALITY_LABEL);
        }
        exception_rows()
            .into_iter()
            .find(|r| r.family == self.g.family && r.nodes.admits(self.g.rank, node) && r.fits(x))
            .map(|r| r.label)
    }

    pub fn levi_is_spherical(&self, p: &ParabolicSpec) -> Result<bool> {
        let l = recognize(&self.g, &p.levi(&self.g))?;
        Ok(is_spherical(&self.g, &l))
    }

    /// Infinite row for `(X, P)`, found by conjugating `Φ(X)` into a row member.
    pub fn infinite_row(&self, x: &SubgroupSpec, p: &ParabolicSpec) -> Result<Option<&'static str>> {
        let Some(node) = p.node() else {
            return Ok(None);
        };
        let phi = x.subsystem(&self.g)?;
        for inst in self.rows()? {
            if !inst.row.nodes.admits(self.g.rank, node) {
                continue;
            }
            for m in &inst.members {
                if d4_exception(&m.spec, p) {
                    continue;
                }
                if weyl_embeds(&self.g, &phi, &m.phi)?.is_some() {
                    return Ok(Some(inst.row.label));
                }
            }
        }
        Ok(None)
    }

    pub fn classify(&self, x: &SubgroupSpec, p: &ParabolicSpec) -> Result<Verdict> {
        self.check(x, p)?;
        if let Some(l) = spherical_row(x) {
            return Ok(Verdict::finite(Provenance::Spherical(l)));
        }
        if !p.is_maximal() {
            return Ok(Verdict::infinite(Provenance::NonMaximalParabolic));
        }
        if let Some(l) = self.exception(x, p) {
            return Ok(Verdict::finite(Provenance::Exception(l)));
        }
        if !self.levi_is_spherical(p)? {
            return Ok(Verdict::infinite(Provenance::NeitherSpherical));
        }
        Ok(Verdict::infinite(match self.infinite_row(x, p)? {
            Some(l) => Provenance::InfiniteRow(l),
            None => Provenance::Uncovered,
        }))
    }
}

/// Whether `X\G/P` is finite, with the deciding clause.
pub fn classify_finiteness(g: &RootSystem, x: &SubgroupSpec, p: &ParabolicSpec) -> Result<Verdict> {
    Classifier::new(g.clone()).classify(x, p)
}
