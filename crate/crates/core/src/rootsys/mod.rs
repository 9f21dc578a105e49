//! Root systems of types A, B, C, D in their standard Euclidean realization.
//!
//! Coordinates follow the usual conventions: `A_n` lives in the sum-zero
//! hyperplane of `Z^{n+1}`, the other families in `Z^n`. Simple roots are
//! numbered as in Bourbaki, so `alpha_n` is the short root `e_n` in `B_n`,
//! the long root `2e_n` in `C_n` and `e_{n-1}+e_n` in `D_n`.

mod dynkin;
mod subsystem;
mod weyl;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use dynkin::DynkinDiagram;
pub use subsystem::{Subsystem, SubsystemJson};
pub use weyl::{levi_classes, weyl_conjugate, weyl_embeds, weyl_orbit, LeviClass, WeylElement};

/// Largest rank accepted anywhere in the workbench.
pub const MAX_RANK: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        f.write_str(c)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            other => Err(Error::Parse {
                column: 0,
                message: format!("unknown family {other:?}"),
            }),
        }
    }
}

/// Irreducible type `(family, rank)`, e.g. `(B, 2)`.
pub type CartanType = (Family, usize);

pub fn format_types(types: &[CartanType]) -> String {
    if types.is_empty() {
        return "∅".into();
    }
    types.iter().map(|(f, r)| format!("{f}{r}")).collect()
}

/// A root as an integer coordinate vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root(pub Vec<i32>);

impl Root {
    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|x| -x).collect())
    }

    pub fn add(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn norm2(&self) -> i32 {
        self.0.iter().map(|x| x * x).sum()
    }

    /// Coordinates where the root is nonzero.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, _)| i)
    }

    /// Reflection of `self` in the hyperplane orthogonal to `alpha`.
    pub fn reflect(&self, alpha: &Root) -> Root {
        let k = 2 * crate::linalg::dot(&self.0, &alpha.0) / alpha.norm2();
        Root(self.0.iter().zip(&alpha.0).map(|(x, a)| x - k * a).collect())
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Unit vector helper: `e(m, i)` is `e_{i+1}` in `Z^m`.
pub(crate) fn unit(m: usize, i: usize, scale: i32) -> Vec<i32> {
    let mut v = vec![0; m];
    v[i] = scale;
    v
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    pub family: Family,
    pub rank: usize,
    /// Sorted list of all roots.
    pub roots: Vec<Root>,
    /// `simple[i]` is `alpha_{i+1}`.
    pub simple: Vec<Root>,
    pub highest_root: Root,
    lookup: HashSet<Root>,
}

/// Number of roots of the irreducible system of the given type.
pub fn root_count(family: Family, rank: usize) -> usize {
    let n = rank;
    match family {
        Family::A => n * (n + 1),
        Family::B | Family::C => 2 * n * n,
        Family::D => 2 * n * (n.saturating_sub(1)),
    }
}

impl RootSystem {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let n = rank;
        let bad = Error::UnsupportedType { family, rank };
        if n == 0 || n > MAX_RANK || (family == Family::D && n < 2) {
            return Err(bad);
        }
        let m = if family == Family::A { n + 1 } else { n };
        let mut roots = Vec::new();
        let pair = |i: usize, j: usize, si: i32, sj: i32| {
            let mut v = vec![0; m];
            v[i] = si;
            v[j] = sj;
            Root(v)
        };
        for i in 0..m {
            for j in 0..m {
                if i != j {
                    roots.push(pair(i, j, 1, -1));
                }
            }
        }
        if family != Family::A {
            for i in 0..m {
                for j in (i + 1)..m {
                    roots.push(pair(i, j, 1, 1));
                    roots.push(pair(i, j, -1, -1));
                }
            }
        }
        match family {
            Family::B => {
                for i in 0..m {
                    roots.push(Root(unit(m, i, 1)));
                    roots.push(Root(unit(m, i, -1)));
                }
            }
            Family::C => {
                for i in 0..m {
                    roots.push(Root(unit(m, i, 2)));
                    roots.push(Root(unit(m, i, -2)));
                }
            }
            _ => {}
        }
        roots.sort();

        let mut simple: Vec<Root> = (0..n.min(m - 1)).map(|i| pair(i, i + 1, 1, -1)).collect();
        match family {
            Family::A => {}
            Family::B => {
                simple.truncate(n - 1);
                simple.push(Root(unit(m, n - 1, 1)));
            }
            Family::C => {
                simple.truncate(n - 1);
                simple.push(Root(unit(m, n - 1, 2)));
            }
            Family::D => {
                simple.truncate(n - 1);
                simple.push(pair(n - 2, n - 1, 1, 1));
            }
        }
        let highest_root = match family {
            Family::A => pair(0, n, 1, -1),
            Family::B | Family::D if n >= 2 => pair(0, 1, 1, 1),
            Family::B => Root(unit(m, 0, 1)),
            Family::C => Root(unit(m, 0, 2)),
            Family::D => unreachable!(),
        };
        let lookup = roots.iter().cloned().collect();
        Ok(RootSystem {
            family,
            rank,
            roots,
            simple,
            highest_root,
            lookup,
        })
    }

    /// Length of the coordinate vectors.
    pub fn dim(&self) -> usize {
        if self.family == Family::A {
            self.rank + 1
        } else {
            self.rank
        }
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }

    pub fn contains(&self, v: &Root) -> bool {
        self.lookup.contains(v)
    }

    /// Coefficients of `v` over the simple roots, when integral.
    pub fn coefficients(&self, v: &[i32]) -> Option<Vec<i32>> {
        let n = self.rank;
        let mut partial = Vec::with_capacity(v.len());
        let mut s = 0;
        for x in v {
            s += x;
            partial.push(s);
        }
        let mut c: Vec<i32> = partial[..n].to_vec();
        match self.family {
            Family::A => {
                if partial[n] != 0 {
                    return None;
                }
            }
            Family::B => {}
            Family::C => {
                if partial[n - 1] % 2 != 0 {
                    return None;
                }
                c[n - 1] = partial[n - 1] / 2;
            }
            Family::D => {
                let top = partial[n - 1];
                let below = top - 2 * v[n - 1];
                if top % 2 != 0 {
                    return None;
                }
                c[n - 1] = top / 2;
                c[n - 2] = below / 2;
            }
        }
        Some(c)
    }

    pub fn is_positive(&self, r: &Root) -> bool {
        self.coefficients(&r.0)
            .map(|c| c.iter().all(|&x| x >= 0))
            .unwrap_or(false)
    }

    pub fn height(&self, r: &Root) -> i32 {
        self.coefficients(&r.0).map(|c| c.iter().sum()).unwrap_or(0)
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| self.is_positive(r))
    }

    pub fn diagram(&self) -> DynkinDiagram {
        DynkinDiagram::from_base(&self.simple)
    }

    /// `alpha_i` with Bourbaki numbering, `1 <= i <= rank`.
    pub fn simple_root(&self, i: usize) -> Result<&Root> {
        if i == 0 || i > self.rank {
            return Err(Error::BadNode(i));
        }
        Ok(&self.simple[i - 1])
    }

    /// All ambient roots that are integer combinations of `base`.
    pub fn closed_hull(&self, base: &[Root]) -> Result<Subsystem> {
        for b in base {
            if !self.contains(b) {
                return Err(Error::NotARoot(b.0.clone()));
            }
        }
        let rows: Vec<Vec<i32>> = base.iter().map(|r| r.0.clone()).collect();
        if crate::linalg::rank(&rows) != rows.len() {
            return Err(Error::DependentBase);
        }
        let roots = self
            .roots
            .iter()
            .filter(|r| {
                crate::linalg::solve(&rows, &r.0)
                    .map(|c| c.iter().all(|x| x.is_integer()))
                    .unwrap_or(false)
            })
            .cloned()
            .collect();
        Ok(Subsystem::with_base(self, roots, base.to_vec()))
    }

    /// Sum of the simple roots on the shortest Dynkin path from node `i` to node `j`.
    pub fn sum_over_path(&self, i: usize, j: usize) -> Result<Root> {
        let path = self.diagram().path(i, j)?;
        let mut acc = Root(vec![0; self.dim()]);
        for k in path {
            acc = acc.add(&self.simple[k - 1]);
        }
        if !self.contains(&acc) {
            return Err(Error::NotARoot(acc.0));
        }
        Ok(acc)
    }

    /// Roots whose simple-root coefficients vanish on every node in `nodes`.
    pub fn levi_of_nodes(&self, crossed: &[usize]) -> Subsystem {
        let roots = self
            .roots
            .iter()
            .filter(|r| {
                let c = self.coefficients(&r.0).expect("roots have integral coefficients");
                crossed.iter().all(|&k| c[k - 1] == 0)
            })
            .cloned()
            .collect();
        let base = (1..=self.rank)
            .filter(|k| !crossed.contains(k))
            .map(|k| self.simple[k - 1].clone())
            .collect();
        Subsystem::with_base(self, roots, base)
    }

    /// Rationally closed test: `s` equals the ambient roots in its rational span.
    pub fn is_levi_subsystem(&self, s: &Subsystem) -> bool {
        let rows: Vec<Vec<i32>> = s.base.iter().map(|r| r.0.clone()).collect();
        let r0 = crate::linalg::rank(&rows);
        self.roots.iter().all(|r| {
            if s.contains(r) {
                return true;
            }
            let mut ext = rows.clone();
            ext.push(r.0.clone());
            crate::linalg::rank(&ext) > r0
        })
    }

    pub fn full(&self) -> Subsystem {
        Subsystem::with_base(self, self.roots.iter().cloned().collect(), self.simple.clone())
    }

    pub(crate) fn same_ambient(&self, s: &Subsystem) -> Result<()> {
        if s.family != self.family || s.rank != self.rank {
            return Err(Error::AmbientMismatch(self.name(), format!("{}{}", s.family, s.rank)));
        }
        Ok(())
    }
}
