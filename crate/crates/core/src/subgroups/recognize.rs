use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::rootsys::{weyl_conjugate, Family, Root, RootSystem, Subsystem};

use super::spec::{DnClass, FactorFamily, FactorSpec, SubgroupSpec};

/// Reads off the block structure of a closed maximal-rank subsystem.
///
/// Coordinates joined by a root form one block; a block whose roots include
/// both `e_a - e_b` and `e_a + e_b` for some pair (or a short root) is a form
/// block, anything else is a `GL` block. The `D_n` class is settled by
/// comparing with the standard realization.
pub fn recognize(g: &RootSystem, phi: &Subsystem) -> Result<SubgroupSpec> {
    let m = g.dim();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for r in &phi.roots {
        let s: Vec<usize> = r.support().collect();
        for w in s.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut comp_of = vec![usize::MAX; m];
    for i in 0..m {
        let r = find(&mut parent, i);
        if comp_of[r] == usize::MAX {
            comp_of[r] = comps.len();
            comps.push(Vec::new());
        }
        comps[comp_of[r]].push(i);
    }
    let mut raw = Vec::new();
    let mut torus = 0;
    for comp in &comps {
        let inside: Vec<&Root> = phi.roots.iter().filter(|r| r.support().next().is_some_and(|i| comp.contains(&i))).collect();
        let k = comp.len();
        let short = inside.iter().find(|r| r.support().count() == 1);
        let both_signs = inside.iter().any(|r| {
            let s: Vec<usize> = r.support().collect();
            s.len() == 2 && inside.iter().any(|q| q.0[s[0]] == r.0[s[0]] && q.0[s[1]] == -r.0[s[1]])
        });
        let family = match (g.family, short) {
            (Family::B, Some(_)) => Some(Family::B),
            (Family::C, Some(_)) => Some(Family::C),
            (Family::D | Family::B, None) if both_signs => Some(Family::D),
            (Family::C, None) if both_signs => {
                return Err(Error::NotClosed("D-type block inside C_n".into()));
            }
            _ => None,
        };
        let expected = match family {
            Some(Family::B) | Some(Family::C) => 2 * k * k,
            Some(Family::D) => 2 * k * (k - 1),
            _ => k * (k - 1),
        };
        if inside.len() != expected {
            return Err(Error::NotClosed(format!(
                "block on {k} coordinates carries {} roots",
                inside.len()
            )));
        }
        match family {
            Some(f) => {
                let ff = match f {
                    Family::B => FactorFamily::B,
                    Family::C => FactorFamily::C,
                    _ => FactorFamily::D,
                };
                raw.push(FactorSpec::new(ff, k));
            }
            None => {
                raw.push(FactorSpec::new(FactorFamily::A, k - 1));
                torus += 1;
            }
        }
    }
    if g.family == Family::A {
        torus -= 1;
    }
    raw.push(FactorSpec::new(FactorFamily::T, torus));
    let spec = SubgroupSpec::new((g.family, g.rank), &raw, None)?;
    if spec.dn_class.is_none() {
        return Ok(spec);
    }
    let mut plus = spec.clone();
    plus.dn_class = Some(DnClass::Plus);
    let std = plus.subsystem(g)?;
    if weyl_conjugate(g, &std, phi)?.is_some() {
        Ok(plus)
    } else {
        Ok(spec)
    }
}

/// [`recognize`] on a bare root set.
pub fn recognize_roots(g: &RootSystem, roots: BTreeSet<Root>) -> Result<SubgroupSpec> {
    recognize(g, &Subsystem::from_roots(g, roots)?)
}
