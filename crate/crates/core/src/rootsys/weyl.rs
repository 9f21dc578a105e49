//! Weyl groups as (signed) coordinate permutations.
//!
//! `W(A_n)` permutes the `n+1` coordinates; `W(B_n) = W(C_n)` acts by signed
//! permutations; `W(D_n)` by signed permutations with an even number of
//! sign changes.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{CartanType, Family, Root, RootSystem, Subsystem};
use crate::error::Result;

/// `w(e_i) = signs[i] * e_{perm[i]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeylElement {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl WeylElement {
    pub fn identity(m: usize) -> Self {
        WeylElement {
            perm: (0..m).collect(),
            signs: vec![1; m],
        }
    }

    pub fn apply(&self, r: &Root) -> Root {
        let mut out = vec![0; r.0.len()];
        for (i, &x) in r.0.iter().enumerate() {
            out[self.perm[i]] = x * self.signs[i] as i32;
        }
        Root(out)
    }

    pub fn apply_set(&self, s: &BTreeSet<Root>) -> BTreeSet<Root> {
        s.iter().map(|r| self.apply(r)).collect()
    }

    pub fn inverse(&self) -> Self {
        let m = self.perm.len();
        let mut perm = vec![0; m];
        let mut signs = vec![1; m];
        for i in 0..m {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        WeylElement { perm, signs }
    }

    pub fn is_in(&self, family: Family) -> bool {
        match family {
            Family::A => self.signs.iter().all(|&s| s == 1),
            Family::B | Family::C => true,
            Family::D => self.signs.iter().filter(|&&s| s < 0).count() % 2 == 0,
        }
    }
}

struct Search<'a> {
    family: Family,
    m: usize,
    target: &'a BTreeSet<Root>,
    /// Roots of the source grouped by the largest coordinate in their support.
    by_last: Vec<Vec<&'a Root>>,
    perm: Vec<usize>,
    signs: Vec<i8>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn image(&self, r: &Root) -> Root {
        let mut out = vec![0; self.m];
        for (i, &x) in r.0.iter().enumerate() {
            if x != 0 {
                out[self.perm[i]] = x * self.signs[i] as i32;
            }
        }
        Root(out)
    }

    fn run(&mut self, i: usize) -> bool {
        if i == self.m {
            let w = WeylElement {
                perm: self.perm.clone(),
                signs: self.signs.clone(),
            };
            return w.is_in(self.family);
        }
        let sign_choices: &[i8] = if self.family == Family::A { &[1] } else { &[1, -1] };
        for j in 0..self.m {
            if self.used[j] {
                continue;
            }
            for &s in sign_choices {
                self.perm[i] = j;
                self.signs[i] = s;
                let ok = self.by_last[i].iter().all(|r| self.target.contains(&self.image(r)));
                if ok {
                    self.used[j] = true;
                    if self.run(i + 1) {
                        return true;
                    }
                    self.used[j] = false;
                }
            }
        }
        false
    }
}

fn search(ambient: &RootSystem, source: &BTreeSet<Root>, target: &BTreeSet<Root>) -> Option<WeylElement> {
    let m = ambient.dim();
    let mut by_last = vec![Vec::new(); m];
    for r in source {
        if let Some(last) = r.support().last() {
            by_last[last].push(r);
        }
    }
    let mut s = Search {
        family: ambient.family,
        m,
        target,
        by_last,
        perm: vec![0; m],
        signs: vec![1; m],
        used: vec![false; m],
    };
    if s.run(0) {
        Some(WeylElement {
            perm: s.perm,
            signs: s.signs,
        })
    } else {
        None
    }
}

fn length_profile(s: &BTreeSet<Root>) -> Vec<i32> {
    let mut v: Vec<i32> = s.iter().map(Root::norm2).collect();
    v.sort();
    v
}

/// Some `w` in the Weyl group with `w(s1) = s2`, if one exists.
pub fn weyl_conjugate(ambient: &RootSystem, s1: &Subsystem, s2: &Subsystem) -> Result<Option<WeylElement>> {
    ambient.same_ambient(s1)?;
    ambient.same_ambient(s2)?;
    if s1.len() != s2.len() || length_profile(&s1.roots) != length_profile(&s2.roots) {
        return Ok(None);
    }
    if s1.classify(ambient).ok() != s2.classify(ambient).ok() {
        return Ok(None);
    }
    Ok(search(ambient, &s1.roots, &s2.roots))
}

/// Some `w` with `w(s1) ⊆ s2`, if one exists.
pub fn weyl_embeds(ambient: &RootSystem, s1: &Subsystem, s2: &Subsystem) -> Result<Option<WeylElement>> {
    ambient.same_ambient(s1)?;
    ambient.same_ambient(s2)?;
    if s1.len() > s2.len() {
        return Ok(None);
    }
    Ok(search(ambient, &s1.roots, &s2.roots))
}

fn key(s: &BTreeSet<Root>) -> Vec<Root> {
    s.iter().cloned().collect()
}

/// Orbit of a root set under the Weyl group, generated by simple reflections.
pub fn weyl_orbit(ambient: &RootSystem, s: &BTreeSet<Root>) -> Vec<BTreeSet<Root>> {
    let mut seen: HashSet<Vec<Root>> = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(key(s));
    queue.push_back(s.clone());
    while let Some(cur) = queue.pop_front() {
        for a in &ambient.simple {
            let img: BTreeSet<Root> = cur.iter().map(|r| r.reflect(a)).collect();
            if seen.insert(key(&img)) {
                queue.push_back(img);
            }
        }
        out.push(cur);
    }
    out.sort();
    out
}

/// Conjugacy classes of Levi subsystems, optionally restricted to one type.
///
/// Each class is returned as its full list of members (sorted), keyed by the
/// smallest member. Classes come from standard Levi subsystems `hull(J)`,
/// `J ⊆ Δ`, so every Levi subsystem appears exactly once.
pub fn levi_classes(ambient: &RootSystem, wanted: Option<&[CartanType]>, max_rank: usize) -> Vec<LeviClass> {
    let n = ambient.rank;
    let mut classes: Vec<LeviClass> = Vec::new();
    let mut member_of: HashMap<Vec<Root>, usize> = HashMap::new();
    for mask in 0u32..(1 << n) {
        let nodes: Vec<usize> = (1..=n).filter(|k| mask & (1 << (k - 1)) != 0).collect();
        if nodes.len() > max_rank {
            continue;
        }
        let crossed: Vec<usize> = (1..=n).filter(|k| !nodes.contains(k)).collect();
        let std = ambient.levi_of_nodes(&crossed);
        let ty = std.classify(ambient).expect("standard Levi subsystems are root systems");
        if let Some(w) = wanted {
            if ty != w {
                continue;
            }
        }
        if member_of.contains_key(&key(&std.roots)) {
            continue;
        }
        let members = weyl_orbit(ambient, &std.roots);
        let idx = classes.len();
        for mbr in &members {
            member_of.insert(key(mbr), idx);
        }
        classes.push(LeviClass {
            types: ty,
            representative: std,
            members,
        });
    }
    classes.sort_by(|a, b| a.members[0].cmp(&b.members[0]));
    classes
}

#[derive(Debug, Clone)]
pub struct LeviClass {
    pub types: Vec<CartanType>,
    pub representative: Subsystem,
    pub members: Vec<BTreeSet<Root>>,
}
