use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{root_count, CartanType, DynkinDiagram, Family, Root, RootSystem};
use crate::error::{Error, Result};
use crate::linalg;

/// A root subsystem of an ambient system, with a chosen base.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subsystem {
    pub family: Family,
    pub rank: usize,
    pub base: Vec<Root>,
    pub roots: BTreeSet<Root>,
}

/// Wire form: `{"family","rank","base":[[ints]],"roots":[[ints]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsystemJson {
    pub family: Family,
    pub rank: usize,
    pub base: Vec<Vec<i32>>,
    pub roots: Vec<Vec<i32>>,
}

impl Subsystem {
    pub(crate) fn with_base(ambient: &RootSystem, roots: BTreeSet<Root>, base: Vec<Root>) -> Self {
        Subsystem {
            family: ambient.family,
            rank: ambient.rank,
            base,
            roots,
        }
    }

    pub fn empty(ambient: &RootSystem) -> Self {
        Self::with_base(ambient, BTreeSet::new(), Vec::new())
    }

    /// Builds a subsystem from a root set, deriving the base from the
    /// ambient positive system (indecomposable positive roots).
    pub fn from_roots(ambient: &RootSystem, roots: BTreeSet<Root>) -> Result<Self> {
        for r in &roots {
            if !ambient.contains(r) {
                return Err(Error::NotARoot(r.0.clone()));
            }
            if !roots.contains(&r.neg()) {
                return Err(Error::NotClosed(format!("{r} present without its negative")));
            }
        }
        let base = indecomposables(ambient, &roots);
        Ok(Self::with_base(ambient, roots, base))
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.roots.contains(r)
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Dimension of the rational span of the roots.
    pub fn span_rank(&self) -> usize {
        let rows: Vec<Vec<i32>> = self.roots.iter().map(|r| r.0.clone()).collect();
        linalg::rank(&rows)
    }

    /// `|roots| + rank`, the dimension of a semisimple group with this root system.
    pub fn dim(&self) -> usize {
        self.len() + self.span_rank()
    }

    pub fn intersect(&self, ambient: &RootSystem, other: &Subsystem) -> Result<Subsystem> {
        ambient.same_ambient(self)?;
        ambient.same_ambient(other)?;
        let roots: BTreeSet<Root> = self.roots.intersection(&other.roots).cloned().collect();
        Subsystem::from_roots(ambient, roots)
    }

    pub fn is_subset(&self, other: &Subsystem) -> bool {
        self.roots.is_subset(&other.roots)
    }

    /// Irreducible components as a sorted list of `(family, rank)`.
    ///
    /// `B_1`/`C_1` are reported as `A_1`, `C_2` as `B_2`; `D_3` cannot arise
    /// separately since it is identified through its `A_3` diagram.
    pub fn classify(&self, ambient: &RootSystem) -> Result<Vec<CartanType>> {
        ambient.same_ambient(self)?;
        for r in &self.roots {
            if !self.roots.contains(&r.neg()) {
                return Err(Error::NotClosed(format!("{r} present without its negative")));
            }
        }
        let base = indecomposables(ambient, &self.roots);
        let rows: Vec<Vec<i32>> = base.iter().map(|r| r.0.clone()).collect();
        if linalg::rank(&rows) != base.len() {
            return Err(Error::NotClosed("indecomposable roots are dependent".into()));
        }
        let diagram = DynkinDiagram::from_base(&base);
        let mut types = Vec::new();
        for comp in diagram.components() {
            types.push(diagram.component_type(&comp, &base)?);
        }
        types.sort();
        let expected: usize = types.iter().map(|&(f, n)| root_count(f, n)).sum();
        if expected != self.roots.len() {
            return Err(Error::NotClosed(format!(
                "{} roots but components {:?} need {}",
                self.roots.len(),
                types,
                expected
            )));
        }
        Ok(types)
    }

    pub fn to_json(&self) -> SubsystemJson {
        SubsystemJson {
            family: self.family,
            rank: self.rank,
            base: self.base.iter().map(|r| r.0.clone()).collect(),
            roots: self.roots.iter().map(|r| r.0.clone()).collect(),
        }
    }

    pub fn from_json(ambient: &RootSystem, j: &SubsystemJson) -> Result<Self> {
        if j.family != ambient.family || j.rank != ambient.rank {
            return Err(Error::AmbientMismatch(ambient.name(), format!("{}{}", j.family, j.rank)));
        }
        let mut s = Subsystem::from_roots(ambient, j.roots.iter().cloned().map(Root).collect())?;
        s.base = j.base.iter().cloned().map(Root).collect();
        Ok(s)
    }
}

/// Positive roots of the set that are not sums of two positive roots of the set.
pub(crate) fn indecomposables(ambient: &RootSystem, roots: &BTreeSet<Root>) -> Vec<Root> {
    let pos: Vec<&Root> = roots.iter().filter(|r| ambient.is_positive(r)).collect();
    let pos_set: BTreeSet<&Root> = pos.iter().copied().collect();
    let mut base: Vec<Root> = pos
        .iter()
        .filter(|r| {
            !pos.iter().any(|p| {
                let diff = Root(r.0.iter().zip(&p.0).map(|(a, b)| a - b).collect());
                pos_set.contains(&diff)
            })
        })
        .map(|r| (*r).clone())
        .collect();
    base.sort_by_key(|r| (ambient.height(r), std::cmp::Reverse(r.clone())));
    base
}
