use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{Family, Root, RootSystem, Subsystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FactorFamily {
    A,
    B,
    C,
    D,
    T,
}

/// How a factor sits in the natural module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Flavor {
    /// `GL_{k+1}`; inside `B/C/D` it acts on a dual pair `E ⊕ F` of totally singular spaces.
    LinearPair,
    Orthogonal,
    Symplectic,
    Torus,
}

impl FactorFamily {
    pub fn default_flavor(self) -> Flavor {
        match self {
            FactorFamily::A => Flavor::LinearPair,
            FactorFamily::B | FactorFamily::D => Flavor::Orthogonal,
            FactorFamily::C => Flavor::Symplectic,
            FactorFamily::T => Flavor::Torus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FactorSpec {
    pub family: FactorFamily,
    pub rank: usize,
    pub flavor: Flavor,
}

impl FactorSpec {
    pub fn new(family: FactorFamily, rank: usize) -> Self {
        FactorSpec {
            family,
            rank,
            flavor: family.default_flavor(),
        }
    }
}

/// The two classes of maximal totally singular subspaces in `D_n`.
///
/// `Plus` is the class of `<e_1..e_n>`, stabilized by `P_n`; `Minus` the class
/// of `<e_1..e_{n-1}, f_n>`, stabilized by `P_{n-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DnClass {
    Plus,
    Minus,
}

/// One orthogonal summand of the natural module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Block {
    /// `GL_size` acting on a dual pair (or on a coordinate block in type `A`).
    Gl(usize),
    /// A form factor `B_k`, `C_k` or `D_k` on `k` coordinates (`B_k` also owns the anisotropic vector).
    Form(Family, usize),
}

impl Block {
    pub fn coords(&self) -> usize {
        match *self {
            Block::Gl(k) => k,
            Block::Form(_, k) => k,
        }
    }
}

/// A maximal rank reductive subgroup `X`, in canonical form.
///
/// `factors` holds only nontrivial semisimple factors (`A_k`, `B_k`, `C_k` with
/// `k >= 1`, `D_k` with `k >= 2`) sorted by `(family, rank, flavor)`;
/// `A_0`, `B_0`, `C_0` are dropped and `D_1` is absorbed into the central torus.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SubgroupSpec {
    pub ambient: (Family, usize),
    pub factors: Vec<FactorSpec>,
    pub central_torus_rank: usize,
    /// Only set when the `D_n` class of the subgroup is a conjugacy invariant.
    pub dn_class: Option<DnClass>,
}

impl SubgroupSpec {
    /// Validates and canonicalizes a raw factor list (which may contain `T`,
    /// degenerate factors and `D_1`).
    pub fn new(ambient: (Family, usize), raw: &[FactorSpec], dn_class: Option<DnClass>) -> Result<Self> {
        let (fam, n) = ambient;
        let mut factors = Vec::new();
        let mut torus = 0;
        for f in raw {
            if f.flavor != f.family.default_flavor() {
                return Err(Error::InvalidSubgroup(format!(
                    "flavor {:?} is illegal for a {:?} factor",
                    f.flavor, f.family
                )));
            }
            let legal = match fam {
                Family::A => matches!(f.family, FactorFamily::A | FactorFamily::T),
                Family::B => !matches!(f.family, FactorFamily::C),
                Family::C => matches!(f.family, FactorFamily::A | FactorFamily::C | FactorFamily::T),
                Family::D => matches!(f.family, FactorFamily::A | FactorFamily::D | FactorFamily::T),
            };
            if !legal {
                return Err(Error::InvalidSubgroup(format!("{:?} factor inside {fam}{n}", f.family)));
            }
            match (f.family, f.rank) {
                (FactorFamily::T, k) => torus += k,
                (FactorFamily::D, 0) => {
                    return Err(Error::InvalidSubgroup("D0 is not a valid factor".into()));
                }
                (FactorFamily::D, 1) => torus += 1,
                (FactorFamily::A, 0) if fam != Family::A => {}
                (FactorFamily::B | FactorFamily::C, 0) => {}
                _ => factors.push(FactorSpec::new(f.family, f.rank)),
            }
        }
        factors.sort();
        // In type A every A factor, A_0 included, is a block of its own.
        let gl_blocks = factors.iter().filter(|f| f.family == FactorFamily::A).count();
        factors.retain(|f| !(f.family == FactorFamily::A && f.rank == 0));
        if factors.iter().filter(|f| f.family == FactorFamily::B).count() > 1 {
            return Err(Error::InvalidSubgroup("at most one B factor fits in B_n".into()));
        }
        let rank_sum: usize = factors.iter().map(|f| f.rank).sum::<usize>() + torus;
        if rank_sum != n {
            return Err(Error::InvalidSubgroup(format!(
                "factor ranks plus torus rank sum to {rank_sum}, expected {n}"
            )));
        }
        let torus_needed = if fam == Family::A {
            gl_blocks.saturating_sub(1)
        } else {
            gl_blocks
        };
        if torus < torus_needed {
            return Err(Error::InvalidSubgroup(format!(
                "{gl_blocks} GL factors need a central torus of rank at least {torus_needed}"
            )));
        }
        let mut spec = SubgroupSpec {
            ambient,
            factors,
            central_torus_rank: torus,
            dn_class: None,
        };
        if spec.class_sensitive() {
            spec.dn_class = Some(dn_class.unwrap_or(DnClass::Minus));
        }
        Ok(spec)
    }

    /// The whole group `G`.
    pub fn whole(ambient: (Family, usize)) -> Self {
        let (fam, n) = ambient;
        let fam = match fam {
            Family::A => FactorFamily::A,
            Family::B => FactorFamily::B,
            Family::C => FactorFamily::C,
            Family::D => FactorFamily::D,
        };
        SubgroupSpec::new(ambient, &[FactorSpec::new(fam, n)], None).expect("G is a valid subgroup of itself")
    }

    /// Orthogonal block decomposition, in placement order.
    pub fn blocks(&self) -> Vec<Block> {
        let (fam, n) = self.ambient;
        let mut out: Vec<Block> = Vec::new();
        for f in &self.factors {
            out.push(match f.family {
                FactorFamily::A => Block::Gl(f.rank + 1),
                FactorFamily::B => Block::Form(Family::B, f.rank),
                FactorFamily::C => Block::Form(Family::C, f.rank),
                FactorFamily::D => Block::Form(Family::D, f.rank),
                FactorFamily::T => unreachable!("torus is not stored as a factor"),
            });
        }
        if fam == Family::B && !out.iter().any(|b| matches!(b, Block::Form(Family::B, _))) {
            out.push(Block::Form(Family::B, 0));
        }
        let width = if fam == Family::A { n + 1 } else { n };
        let used: usize = out.iter().map(Block::coords).sum();
        out.extend(std::iter::repeat(Block::Gl(1)).take(width - used));
        out
    }

    /// True when the subgroup determines one of the two `D_n` classes: every
    /// block is a `GL` of even size.
    pub fn class_sensitive(&self) -> bool {
        self.ambient.0 == Family::D && self.blocks().iter().all(|b| matches!(b, Block::Gl(k) if k % 2 == 0))
    }

    pub fn gl_sizes(&self) -> Vec<usize> {
        self.blocks()
            .into_iter()
            .filter_map(|b| match b {
                Block::Gl(k) => Some(k),
                _ => None,
            })
            .collect()
    }

    pub fn form_ranks(&self, family: Family) -> Vec<usize> {
        self.blocks()
            .into_iter()
            .filter_map(|b| match b {
                Block::Form(f, k) if f == family => Some(k),
                _ => None,
            })
            .collect()
    }

    pub fn is_whole(&self) -> bool {
        *self == SubgroupSpec::whole(self.ambient)
    }

    /// `Φ(X)` in standard placement: blocks fill consecutive coordinates;
    /// class `Minus` negates the last coordinate.
    pub fn subsystem(&self, g: &RootSystem) -> Result<Subsystem> {
        if (g.family, g.rank) != self.ambient {
            return Err(Error::AmbientMismatch(
                g.name(),
                format!("{}{}", self.ambient.0, self.ambient.1),
            ));
        }
        let m = g.dim();
        let mut roots = BTreeSet::new();
        let mut offset = 0;
        let mut push = |v: Vec<i32>| {
            roots.insert(Root(v));
        };
        for b in self.blocks() {
            let k = b.coords();
            let range = offset..offset + k;
            for a in range.clone() {
                for c in range.clone() {
                    if a == c {
                        continue;
                    }
                    let mut v = vec![0; m];
                    v[a] = 1;
                    v[c] = -1;
                    push(v);
                    if let Block::Form(..) = b {
                        if a < c {
                            let mut v = vec![0; m];
                            v[a] = 1;
                            v[c] = 1;
                            push(v.clone());
                            push(v.iter().map(|x| -x).collect());
                        }
                    }
                }
                let short = match b {
                    Block::Form(Family::B, _) => 1,
                    Block::Form(Family::C, _) => 2,
                    _ => 0,
                };
                if short != 0 {
                    let mut v = vec![0; m];
                    v[a] = short;
                    push(v.clone());
                    v[a] = -short;
                    push(v);
                }
            }
            offset += k;
        }
        if self.dn_class == Some(DnClass::Minus) {
            roots = roots
                .into_iter()
                .map(|mut r| {
                    r.0[m - 1] = -r.0[m - 1];
                    r
                })
                .collect();
        }
        Subsystem::from_roots(g, roots)
    }
}

impl fmt::Display for SubgroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        let mut class_done = false;
        for fac in &self.factors {
            let letter = format!("{:?}", fac.family);
            let mut s = format!("{letter}{}", fac.rank);
            if fac.family == FactorFamily::A && !class_done {
                if let Some(c) = self.dn_class {
                    s.push_str(match c {
                        DnClass::Plus => "[gl+]",
                        DnClass::Minus => "[gl-]",
                    });
                    class_done = true;
                }
            }
            parts.push(s);
        }
        if self.central_torus_rank > 0 {
            parts.push(format!("T{}", self.central_torus_rank));
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// A parabolic subgroup, given by its crossed nodes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ParabolicSpec {
    pub ambient: (Family, usize),
    pub crossed: BTreeSet<usize>,
}

impl ParabolicSpec {
    pub fn new(ambient: (Family, usize), crossed: impl IntoIterator<Item = usize>) -> Result<Self> {
        let crossed: BTreeSet<usize> = crossed.into_iter().collect();
        if crossed.is_empty() {
            return Err(Error::InvalidParabolic("no crossed nodes (P = G)".into()));
        }
        if let Some(&bad) = crossed.iter().find(|&&k| k == 0 || k > ambient.1) {
            return Err(Error::InvalidParabolic(format!("node {bad} outside 1..{}", ambient.1)));
        }
        Ok(ParabolicSpec { ambient, crossed })
    }

    pub fn maximal(ambient: (Family, usize), node: usize) -> Result<Self> {
        Self::new(ambient, [node])
    }

    pub fn is_maximal(&self) -> bool {
        self.crossed.len() == 1
    }

    pub fn is_borel(&self) -> bool {
        self.crossed.len() == self.ambient.1
    }

    /// Node of a maximal parabolic.
    pub fn node(&self) -> Option<usize> {
        if self.is_maximal() {
            self.crossed.iter().next().copied()
        } else {
            None
        }
    }

    /// For `D_n` with exactly one of the fork nodes crossed, the class of
    /// maximal totally singular spaces in the stabilized flag.
    pub fn dn_class(&self) -> Option<DnClass> {
        let (fam, n) = self.ambient;
        if fam != Family::D || n < 2 {
            return None;
        }
        match (self.crossed.contains(&(n - 1)), self.crossed.contains(&n)) {
            (false, true) => Some(DnClass::Plus),
            (true, false) => Some(DnClass::Minus),
            _ => None,
        }
    }

    /// `Φ(L)` for the standard Levi factor.
    pub fn levi(&self, g: &RootSystem) -> Subsystem {
        let crossed: Vec<usize> = self.crossed.iter().copied().collect();
        g.levi_of_nodes(&crossed)
    }

    /// Dimensions of the subspaces in a flag stabilized by this parabolic,
    /// with the class of the maximal space when it is one of two.
    pub fn flag_dims(&self) -> (Vec<usize>, Option<DnClass>) {
        let (fam, n) = self.ambient;
        if fam != Family::D {
            return (self.crossed.iter().copied().collect(), None);
        }
        let mut dims: Vec<usize> = self.crossed.iter().copied().filter(|&k| k + 1 < n).collect();
        let class = self.dn_class();
        if class.is_some() {
            dims.push(n);
        } else if self.crossed.contains(&n) {
            dims.push(n - 1);
        }
        (dims, class)
    }
}

impl fmt::Display for ParabolicSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nodes: Vec<String> = self.crossed.iter().map(|k| k.to_string()).collect();
        write!(f, "P{}", nodes.join(","))
    }
}
