use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rootsys::{DynkinDiagram, Root, RootSystem, Subsystem};

use super::recognize::recognize;
use super::spec::SubgroupSpec;

/// A maximal rank subgroup together with its standard root subsystem.
#[derive(Debug, Clone)]
pub struct Enumerated {
    pub spec: SubgroupSpec,
    pub phi: Subsystem,
}

/// Highest root of an irreducible subsystem with the given base.
fn highest(base: &[Root], roots: &BTreeSet<Root>) -> Root {
    let rows: Vec<Vec<i32>> = base.iter().map(|r| r.0.clone()).collect();
    roots
        .iter()
        .filter_map(|r| {
            let c = linalg::solve(&rows, &r.0)?;
            let h: linalg::Q = c.iter().sum();
            Some((h, r))
        })
        .max_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(a.1)))
        .map(|(_, r)| r.clone())
        .expect("irreducible component has roots")
}

/// Subsystems one step below `phi`: replace one irreducible component by the
/// subsystem spanned by its extended base minus a node, or by its base minus a node.
fn children(g: &RootSystem, phi: &Subsystem) -> Result<Vec<BTreeSet<Root>>> {
    let base = &phi.base;
    let diagram = DynkinDiagram::from_base(base);
    let mut out = Vec::new();
    for comp in diagram.components() {
        let cbase: Vec<Root> = comp.iter().map(|&i| base[i].clone()).collect();
        let chull = g.closed_hull(&cbase)?;
        let rest: BTreeSet<Root> = phi.roots.difference(&chull.roots).cloned().collect();
        let theta = highest(&cbase, &chull.roots);
        let mut extended = cbase.clone();
        extended.push(theta.neg());
        let mut candidates: Vec<Vec<Root>> = Vec::new();
        for skip in 0..extended.len() {
            candidates.push(extended.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, r)| r.clone()).collect());
        }
        for skip in 0..cbase.len() {
            candidates.push(cbase.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, r)| r.clone()).collect());
        }
        for nb in candidates {
            let h = g.closed_hull(&nb)?;
            let mut roots = rest.clone();
            roots.extend(h.roots);
            out.push(roots);
        }
    }
    Ok(out)
}

/// All maximal rank reductive subgroups defined over the integers, one per
/// conjugacy class, sorted by subgroup spec.
///
/// Generated by repeatedly deleting a node from the extended or the ordinary
/// diagram of one irreducible component, starting from `G`.
pub fn enumerate_maximal_rank_subgroups(g: &RootSystem, over_z: bool) -> Result<Vec<Enumerated>> {
    if !over_z {
        return Err(Error::NotOverZ);
    }
    let whole = g.full();
    let mut found: BTreeMap<SubgroupSpec, Subsystem> = BTreeMap::new();
    let mut queue = VecDeque::new();
    let spec = recognize(g, &whole)?;
    found.insert(spec.clone(), spec.subsystem(g)?);
    queue.push_back(spec);
    while let Some(spec) = queue.pop_front() {
        let phi = found[&spec].clone();
        for roots in children(g, &phi)? {
            let child = Subsystem::from_roots(g, roots)?;
            let cs = recognize(g, &child)?;
            if !found.contains_key(&cs) {
                found.insert(cs.clone(), cs.subsystem(g)?);
                queue.push_back(cs);
            }
        }
    }
    Ok(found.into_iter().map(|(spec, phi)| Enumerated { spec, phi }).collect())
}
