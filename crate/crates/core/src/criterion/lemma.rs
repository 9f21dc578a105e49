//! Explicit witness bases for two families of infinite cases: four `GL`
//! blocks in `A_n` with `P_i` (`2 <= i <= n-1`), and `A_{n1}A_{n2}T_2` in
//! `D_n` with `P_{n-1}` or `P_n`.
//!
//! Bases are written in the frame of a subgroup `Y` in standard placement
//! and carried over to `X` by a Weyl element with `w(Φ(X)) ⊆ Φ(Y)`.

use crate::error::Result;
use crate::rootsys::{weyl_embeds, Family, Root, RootSystem, Subsystem, WeylElement};
use crate::subgroups::{enumerate_maximal_rank_subgroups, Block, ParabolicSpec, SubgroupSpec};

use super::{criterion_value, orbit_margin, Witness};

fn alpha(g: &RootSystem, i: usize) -> Root {
    g.simple[i - 1].clone()
}

fn path(g: &RootSystem, i: usize, j: usize) -> Result<Root> {
    g.sum_over_path(i, j)
}

/// A frame subsystem with `(Φ1 base, Φ2 base)` written in its coordinates.
type Frame = (Subsystem, Vec<Root>, Vec<Root>);

/// Frames offered by `y` for `P`, for the constructions that apply.
fn frame_bases(g: &RootSystem, y: &SubgroupSpec, p: &ParabolicSpec) -> Result<Vec<Frame>> {
    let n = g.rank;
    let Some(node) = p.node() else {
        return Ok(Vec::new());
    };
    let blocks = y.blocks();
    match g.family {
        Family::A => {
            if blocks.len() != 4 || !(2..n).contains(&node) {
                return Ok(Vec::new());
            }
            let k: Vec<usize> = blocks.iter().map(|b| b.coords() - 1).collect();
            let (n1, n2, n3) = (k[0], k[1], k[2]);
            let b1 = vec![
                alpha(g, n1 + 1),
                path(g, n1 + 2, n1 + n2 + 2)?,
                path(g, n1 + n2 + 3, n1 + n2 + n3 + 3)?,
            ];
            let b2 = vec![alpha(g, node - 1), alpha(g, node), alpha(g, node + 1)];
            Ok(vec![(y.subsystem(g)?, b1, b2)])
        }
        Family::D => {
            let sizes: Vec<usize> = blocks
                .iter()
                .map(|b| match *b {
                    Block::Gl(k) if k >= 2 => Some(k),
                    _ => None,
                })
                .collect::<Option<_>>()
                .unwrap_or_default();
            if sizes.len() != 2 || node + 1 < n {
                return Ok(Vec::new());
            }
            let i = sizes[0];
            // the aligned construction, in the standard Levi whose class matches P
            let aligned = if node == n {
                vec![path(g, 1, n - 1)?, alpha(g, n), path(g, 2, n - 2)?]
            } else {
                vec![path(g, 1, n)?, alpha(g, n - 1), path(g, 2, n - 2)?]
            };
            let mut out = vec![(g.levi_of_nodes(&[i, node]), aligned.clone(), aligned)];
            // the crossed construction, valid in either placement of y
            if n % 2 == 0 && n >= 6 && i + 3 <= n {
                let mid = alpha(g, n - 2).add(&alpha(g, n - 1)).add(&alpha(g, n));
                let b = vec![path(g, i, n - 3)?, mid, path(g, i - 1, n - 2)?];
                out.push((y.subsystem(g)?, b.clone(), b));
            }
            Ok(out)
        }
        _ => Ok(Vec::new()),
    }
}

fn transport(g: &RootSystem, w: &WeylElement, base: &[Root]) -> Result<Subsystem> {
    let moved: Vec<Root> = base.iter().map(|r| w.apply(r)).collect();
    g.closed_hull(&moved)
}

/// Replays the explicit constructions for `(X, P)`, using frames offered by
/// `X` itself first and then by row members containing a conjugate of `X`.
pub fn lemma_witness(g: &RootSystem, x: &SubgroupSpec, p: &ParabolicSpec) -> Result<Option<Witness>> {
    if !matches!(g.family, Family::A | Family::D) || !p.is_maximal() {
        return Ok(None);
    }
    let phix = x.subsystem(g)?;
    let phil = p.levi(g);
    let mut frames = vec![x.clone()];
    frames.extend(
        enumerate_maximal_rank_subgroups(g, true)?
            .into_iter()
            .map(|e| e.spec)
            .filter(|s| s != x),
    );
    for y in frames {
        for (frame, b1, b2) in frame_bases(g, &y, p)? {
            let w = if frame.roots == phix.roots {
                WeylElement::identity(g.dim())
            } else {
                match weyl_embeds(g, &phix, &frame)? {
                    Some(w) => w.inverse(),
                    None => continue,
                }
            };
            let phi1 = transport(g, &w, &b1)?;
            let phi2 = g.closed_hull(&b2)?;
            let value = criterion_value(g, &phi1, &phi2, &phix, &phil)?;
            let margin = orbit_margin(g, &phi1, &phi2, &phix, &phil)?;
            let wit = Witness { phi1, phi2, value, margin };
            if wit.validate(g, &phix, &phil)? {
                return Ok(Some(wit));
            }
        }
    }
    Ok(None)
}
