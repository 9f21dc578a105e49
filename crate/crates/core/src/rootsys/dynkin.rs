use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{CartanType, Family, Root};
use crate::error::{Error, Result};
use crate::linalg::dot;

/// An edge `a - b` with bond multiplicity; `long` names the endpoint with the
/// longer root when the bond is multiple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub bond: u8,
    pub long: Option<usize>,
}

/// Dynkin diagram of an ordered list of roots. Nodes are numbered from 1;
/// an extended diagram carries its extra node as node 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DynkinDiagram {
    pub nodes: Vec<usize>,
    pub edges: Vec<Edge>,
    pub cartan: Vec<Vec<i32>>,
}

impl DynkinDiagram {
    pub fn from_base(base: &[Root]) -> Self {
        Self::build(base, 1)
    }

    /// Diagram of `base` with `-highest` appended as node 0.
    pub fn extended(base: &[Root], highest: &Root) -> Self {
        let mut roots = vec![highest.neg()];
        roots.extend_from_slice(base);
        Self::build(&roots, 0)
    }

    fn build(roots: &[Root], first: usize) -> Self {
        let k = roots.len();
        let cartan: Vec<Vec<i32>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| 2 * dot(&roots[i].0, &roots[j].0) / roots[j].norm2())
                    .collect()
            })
            .collect();
        let mut edges = Vec::new();
        for i in 0..k {
            for j in (i + 1)..k {
                let m = cartan[i][j] * cartan[j][i];
                if m != 0 {
                    let long = match roots[i].norm2().cmp(&roots[j].norm2()) {
                        std::cmp::Ordering::Greater => Some(i + first),
                        std::cmp::Ordering::Less => Some(j + first),
                        std::cmp::Ordering::Equal => None,
                    };
                    edges.push(Edge {
                        a: i + first,
                        b: j + first,
                        bond: m as u8,
                        long,
                    });
                }
            }
        }
        DynkinDiagram {
            nodes: (first..first + k).collect(),
            edges,
            cartan,
        }
    }

    fn first(&self) -> usize {
        self.nodes.first().copied().unwrap_or(1)
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter_map(move |e| {
            if e.a == v {
                Some(e.b)
            } else if e.b == v {
                Some(e.a)
            } else {
                None
            }
        })
    }

    /// Connected components, as 0-based positions into the root list.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let first = self.first();
        let mut seen = vec![false; self.nodes.len()];
        let mut out = Vec::new();
        for start in 0..self.nodes.len() {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for w in self.neighbours(v + first).map(|w| w - first) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    /// Identifies a connected component of a finite-type diagram.
    pub fn component_type(&self, comp: &[usize], roots: &[Root]) -> Result<CartanType> {
        let first = self.first();
        let k = comp.len();
        let in_comp = |e: &Edge| comp.contains(&(e.a - first)) && comp.contains(&(e.b - first));
        let edges: Vec<&Edge> = self.edges.iter().filter(|e| in_comp(e)).collect();
        if edges.len() + 1 != k {
            return Err(Error::NotClosed("diagram component is not a tree".into()));
        }
        let degree = |v: usize| edges.iter().filter(|e| e.a == v || e.b == v).count();
        if k == 1 {
            return Ok((Family::A, 1));
        }
        if let Some(multi) = edges.iter().find(|e| e.bond > 1) {
            if multi.bond != 2 {
                return Err(Error::NotClosed("bond of multiplicity 3".into()));
            }
            if k == 2 {
                return Ok((Family::B, 2));
            }
            // The double bond sits at one end; the end node decides B vs C.
            let end = if degree(multi.a) == 1 { multi.a } else { multi.b };
            let other = if end == multi.a { multi.b } else { multi.a };
            let end_len = roots[end - first].norm2();
            let other_len = roots[other - first].norm2();
            return Ok(if end_len < other_len {
                (Family::B, k)
            } else {
                (Family::C, k)
            });
        }
        let branch = comp.iter().any(|&v| degree(v + first) >= 3);
        Ok(if branch { (Family::D, k) } else { (Family::A, k) })
    }

    /// Node sequence of the shortest path from `i` to `j`, endpoints included.
    pub fn path(&self, i: usize, j: usize) -> Result<Vec<usize>> {
        for v in [i, j] {
            if !self.nodes.contains(&v) {
                return Err(Error::BadNode(v));
            }
        }
        let first = self.first();
        let mut prev = vec![usize::MAX; self.nodes.len()];
        prev[i - first] = i;
        let mut queue = VecDeque::from([i]);
        while let Some(v) = queue.pop_front() {
            if v == j {
                break;
            }
            for w in self.neighbours(v) {
                if prev[w - first] == usize::MAX {
                    prev[w - first] = v;
                    queue.push_back(w);
                }
            }
        }
        if prev[j - first] == usize::MAX {
            return Err(Error::BadNode(j));
        }
        let mut path = vec![j];
        let mut v = j;
        while v != i {
            v = prev[v - first];
            path.push(v);
        }
        path.reverse();
        Ok(path)
    }
}

#[cfg(test)]
mod tests {
    use super::super::RootSystem;
    use super::*;

    #[test]
    fn bourbaki_shapes() {
        for (f, n) in [(Family::A, 5), (Family::B, 4), (Family::C, 4), (Family::D, 5), (Family::B, 2)] {
            let g = RootSystem::new(f, n).unwrap();
            let d = g.diagram();
            let comps = d.components();
            assert_eq!(comps.len(), 1);
            assert_eq!(d.component_type(&comps[0], &g.simple).unwrap(), (f, n));
            assert_eq!(d.edges.len(), n - 1);
        }
        let d4 = RootSystem::new(Family::D, 4).unwrap().diagram();
        assert_eq!(d4.neighbours(2).count(), 3);
    }

    #[test]
    fn extended_diagrams() {
        let c2 = RootSystem::new(Family::C, 2).unwrap();
        let ext = DynkinDiagram::extended(&c2.simple, &c2.highest_root);
        // C2~: 0 => 1 <= 2
        assert_eq!(ext.edges.len(), 2);
        assert!(ext.edges.iter().all(|e| e.bond == 2));
        let a3 = RootSystem::new(Family::A, 3).unwrap();
        let ext = DynkinDiagram::extended(&a3.simple, &a3.highest_root);
        assert_eq!(ext.edges.len(), 4, "extended A_n is a cycle");
    }
}
