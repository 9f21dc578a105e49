//! Exhaustive checks of the projection, reduction and maximal-space lemmas
//! for a decomposition `V = V_1 ⊥ V_2`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use super::flags::{closure, Budget, FlagSet};
use super::group::{root_element, torus_generators, Generator, MatrixGroupInstance};
use super::orbits::orbit_partition;
use super::space::FormedSpace;
use super::subspace::{all_vectors, canonical, combine, left_nullspace, rows_of};
use crate::error::{Error, Result};
use crate::rootsys::{Family, RootSystem};

/// Which vectors enter the pair-based checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sampling {
    Exhaustive,
    /// Every `k`-th vector in lexicographic order.
    Stride(usize),
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct PropertyReport {
    pub checks: usize,
    pub failures: Vec<String>,
    /// Observed values of `dim (π_i W)^⊥ / (W ∩ V_i)`.
    pub lasso_values: BTreeSet<usize>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

fn mask(space: &FormedSpace) -> Result<&[bool]> {
    space
        .decomposition
        .as_deref()
        .ok_or_else(|| Error::Unsupported("property suite needs a decomposition V = V1 ⊥ V2".into()))
}

/// Runs every check that applies to `space`.
pub fn verify_section3_properties(space: &FormedSpace, sampling: Sampling) -> Result<PropertyReport> {
    mask(space)?;
    let mut r = PropertyReport::default();
    if space.has_form() {
        projection_identities(space, sampling, &mut r);
        maximal_space_bound(space, &mut r)?;
    }
    if space.family == Family::D {
        parity_classes(space, &mut r)?;
    }
    reduction_to_first_summand(space, &mut r)?;
    Ok(r)
}

fn stride(s: Sampling) -> usize {
    match s {
        Sampling::Exhaustive => 1,
        Sampling::Stride(k) => k.max(1),
    }
}

/// For `β(u, v) = 0` the value of `β` on the `V_1` parts determines the value on
/// the `V_2` parts and conversely; the same for `Q` on singular vectors.
fn projection_identities(space: &FormedSpace, sampling: Sampling, r: &mut PropertyReport) {
    let k = stride(sampling);
    let vs: Vec<(Vec<u8>, Vec<u8>)> = all_vectors(space.field, space.dimension)
        .step_by(k)
        .map(|v| (space.project(&v, 1), space.project(&v, 2)))
        .collect();
    let mut fwd: HashMap<u8, BTreeSet<u8>> = HashMap::new();
    let mut back: HashMap<u8, BTreeSet<u8>> = HashMap::new();
    for (u1, u2) in &vs {
        for (v1, v2) in &vs {
            let (b1, b2) = (space.beta(u1, v1), space.beta(u2, v2));
            if space.field.add(b1, b2) == 0 {
                fwd.entry(b1).or_default().insert(b2);
                back.entry(b2).or_default().insert(b1);
            }
        }
    }
    for (b1, set) in fwd.iter().chain(back.iter()) {
        r.check(set.len() == 1, || format!("bilinear projections: value {b1} pairs with {set:?}"));
    }
    if space.quadratic.is_some() {
        let mut qmap: HashMap<u8, BTreeSet<u8>> = HashMap::new();
        for (v1, v2) in &vs {
            let (q1, q2) = (space.quad(v1), space.quad(v2));
            if space.field.add(q1, q2) == 0 {
                qmap.entry(q1).or_default().insert(q2);
            }
        }
        for (q1, set) in &qmap {
            r.check(set.len() == 1, || format!("quadratic projections: value {q1} pairs with {set:?}"));
        }
    }
}

fn big_budget() -> Budget {
    Budget {
        max_flags: 5_000_000,
        max_seconds: 600.0,
    }
}

fn unit(m: usize, i: usize) -> Vec<u8> {
    let mut v = vec![0; m];
    v[i] = 1;
    v
}

fn ambient_roots(space: &FormedSpace) -> Result<RootSystem> {
    RootSystem::new(space.family, space.rank)
}

/// `Cl(V_part)` acting on `V` and fixing the other summand pointwise.
fn summand_group(space: &FormedSpace, part: usize) -> Result<MatrixGroupInstance> {
    let mask = mask(space)?;
    let inside = |i: usize| mask[i] == (part == 1);
    let g = ambient_roots(space)?;
    let coords_of = |root: &crate::rootsys::Root| -> Vec<usize> {
        let mut out = Vec::new();
        for i in root.support() {
            if space.family == Family::A {
                out.push(i);
            } else {
                out.push(space.e(i + 1));
                out.push(space.f(i + 1));
                if root.0[i].abs() == 1 && root.support().count() == 1 {
                    out.extend(space.x0());
                }
            }
        }
        out
    };
    let mut generators = Vec::new();
    for root in &g.roots {
        if coords_of(root).into_iter().all(inside) {
            generators.push(root_element(space, root)?);
        }
    }
    for t in torus_generators(space) {
        if t.delta.iter().all(|&(i, _, _)| inside(i as usize)) {
            generators.push(t);
        }
    }
    if matches!(space.family, Family::B | Family::D) {
        if let Some(i) = (1..=space.rank).find(|&i| inside(space.e(i))) {
            generators.push(Generator::swap_pair(space, i));
        }
        if let Some(x) = space.x0() {
            if inside(x) && space.q() != 2 {
                generators.extend(Generator::negate_x0(space));
            }
        }
    }
    Ok(MatrixGroupInstance {
        label: format!("Cl(V{part})"),
        dimension: space.dimension,
        field: space.field,
        generators,
    })
}

/// The full isometry group of `V`, generated by `G` and one reflection.
fn isometry_group(space: &FormedSpace) -> Result<MatrixGroupInstance> {
    let g = super::group::ambient_instance(space)?;
    Ok(match space.family {
        Family::B | Family::D => g.with_generators([Generator::swap_pair(space, 1)]),
        _ => g,
    })
}

/// Every totally singular subspace of dimension `k`, both classes included.
fn singular_subspaces(space: &FormedSpace, k: usize) -> Result<FlagSet> {
    let m = space.dimension;
    let rows: Vec<Vec<u8>> = (1..=k).map(|i| unit(m, space.e(i))).collect();
    let start = canonical(space.field, &rows, m);
    closure(space.field, m, vec![k], start, &isometry_group(space)?, &big_budget())
}

struct Pieces {
    meet: Vec<Vec<u8>>,
    proj: Vec<Vec<u8>>,
}

/// `W ∩ V_part` and `π_part W`, as canonical bases.
fn pieces(space: &FormedSpace, rows: &[Vec<u8>], part: usize) -> Pieces {
    let (f, m) = (space.field, space.dimension);
    let other: Vec<Vec<u8>> = rows.iter().map(|w| space.project(w, 3 - part)).collect();
    let meet: Vec<Vec<u8>> = left_nullspace(f, &other, m).iter().map(|c| combine(f, c, rows, m)).collect();
    let proj: Vec<Vec<u8>> = rows.iter().map(|w| space.project(w, part)).collect();
    Pieces {
        meet: rows_of(&canonical(f, &meet, m), m),
        proj: rows_of(&canonical(f, &proj, m), m),
    }
}

/// For a maximal totally singular `W`, `dim (π_i W)^⊥ / (W ∩ V_i)` is `0` when
/// `dim V` is even and at most `1` when it is odd.
fn maximal_space_bound(space: &FormedSpace, r: &mut PropertyReport) -> Result<()> {
    let (f, m) = (space.field, space.dimension);
    let maximal = singular_subspaces(space, space.witt_index())?;
    let allowed: &[usize] = if m % 2 == 0 { &[0] } else { &[0, 1] };
    for i in 0..maximal.len() {
        let w = maximal.subspaces(i).remove(0);
        for part in [1, 2] {
            let pc = pieces(space, &w, part);
            let basis = space.part_basis(part);
            // (π W)^⊥ inside V_part
            let gram: Vec<Vec<u8>> = basis.iter().map(|b| pc.proj.iter().map(|p| space.beta(b, p)).collect()).collect();
            let perp: Vec<Vec<u8>> = left_nullspace(f, &gram, pc.proj.len()).iter().map(|c| combine(f, c, &basis, m)).collect();
            let perp = rows_of(&canonical(f, &perp, m), m);
            let contained = pc.meet.iter().all(|u| pc.proj.iter().all(|p| space.beta(u, p) == 0));
            r.check(contained, || format!("W ∩ V{part} not inside (π{part} W)^⊥"));
            let value = perp.len().checked_sub(pc.meet.len());
            r.check(value.is_some_and(|v| allowed.contains(&v)), || {
                format!("maximal space {i}: dim (π{part} W)^⊥ = {}, dim W ∩ V{part} = {}", perp.len(), pc.meet.len())
            });
            if let Some(v) = value {
                r.lasso_values.insert(v);
            }
        }
    }
    Ok(())
}

/// Checks that the two classes of maximal totally singular subspaces in `D_n`
/// partition the whole set, are told apart by the parity of `dim W ∩ <e_1..e_n>`,
/// and are exchanged by a reflection. No decomposition is needed.
pub fn verify_parity_classes(space: &FormedSpace) -> Result<PropertyReport> {
    if space.family != Family::D {
        return Err(Error::Unsupported(format!("parity classes need type D, got {}", space.family)));
    }
    let mut r = PropertyReport::default();
    parity_classes(space, &mut r)?;
    Ok(r)
}

fn parity_classes(space: &FormedSpace, r: &mut PropertyReport) -> Result<()> {
    let (f, m, n) = (space.field, space.dimension, space.rank);
    let all = singular_subspaces(space, n)?;
    let g = super::group::ambient_instance(space)?;
    let reference: Vec<Vec<u8>> = (1..=n).map(|i| unit(m, space.e(i))).collect();
    let plus = closure(f, m, vec![n], canonical(f, &reference, m), &g, &big_budget())?;
    let swap = Generator::swap_pair(space, n);
    let mut minus = 0;
    for i in 0..all.len() {
        let w = all.subspaces(i).remove(0);
        let mut both = w.clone();
        both.extend(reference.iter().cloned());
        let meet = 2 * n - canonical(f, &both, m).len() / m;
        let same = (n - meet) % 2 == 0;
        r.check(same == plus.position(all.key(i)).is_some(), || format!("parity of maximal space {i}"));
        let img: Vec<Vec<u8>> = w.iter().map(|v| swap.apply(f, v)).collect();
        let img = canonical(f, &img, m);
        r.check(plus.position(&img).is_some() != same, || format!("reflection keeps the class of maximal space {i}"));
        minus += usize::from(!same);
    }
    r.check(plus.len() + minus == all.len() && plus.len() == minus, || {
        format!("class sizes {} + {minus} != {}", plus.len(), all.len())
    });
    Ok(())
}

/// Two totally singular subspaces are conjugate under `X_1 × Cl(V_2)` exactly
/// when the pairs `(W ∩ V_1, π_1 W)` are conjugate under `X_1`, for `X_1`
/// trivial and `X_1 = Cl(V_1)`.
fn reduction_to_first_summand(space: &FormedSpace, r: &mut PropertyReport) -> Result<()> {
    reduction_with(space, &summand_group(space, 2)?, r)
}

fn reduction_with(space: &FormedSpace, cl2: &MatrixGroupInstance, r: &mut PropertyReport) -> Result<()> {
    let (f, m) = (space.field, space.dimension);
    let top = match space.family {
        Family::A => m - 1,
        _ => space.witt_index(),
    };
    let cl1 = summand_group(space, 1)?;
    let trivial = MatrixGroupInstance {
        label: "1".into(),
        dimension: m,
        field: f,
        generators: Vec::new(),
    };
    for k in 1..=top {
        let subspaces = singular_subspaces(space, k)?;
        let pairs: Vec<Pieces> = (0..subspaces.len()).map(|i| pieces(space, &subspaces.subspaces(i)[0], 1)).collect();
        for x1 in [&trivial, &cl1] {
            let x = cl2.clone().with_generators(x1.generators.iter().cloned());
            let w_orbits = orbit_partition(&x, &subspaces, &big_budget())?;
            // X_1-orbits of pairs, per dimension type
            let mut by_shape: BTreeMap<(usize, usize), Vec<Vec<u8>>> = BTreeMap::new();
            for p in &pairs {
                let key: Vec<u8> = p.meet.concat().into_iter().chain(p.proj.concat()).collect();
                by_shape.entry((p.meet.len(), p.proj.len())).or_default().push(key);
            }
            let mut pair_label: HashMap<Vec<u8>, (usize, usize, u32)> = HashMap::new();
            for (&(a, b), keys) in &by_shape {
                let set = FlagSet::from_keys(f, m, vec![a, b], keys.iter().cloned());
                let labels = orbit_partition(x1, &set, &big_budget())?;
                for (i, l) in labels.into_iter().enumerate() {
                    pair_label.insert(set.key(i).to_vec(), (a, b, l));
                }
            }
            let mut w_to_p: HashMap<u32, BTreeSet<(usize, usize, u32)>> = HashMap::new();
            let mut p_to_w: HashMap<(usize, usize, u32), BTreeSet<u32>> = HashMap::new();
            for (i, p) in pairs.iter().enumerate() {
                let key: Vec<u8> = p.meet.concat().into_iter().chain(p.proj.concat()).collect();
                let pl = pair_label[&key];
                w_to_p.entry(w_orbits[i]).or_default().insert(pl);
                p_to_w.entry(pl).or_default().insert(w_orbits[i]);
            }
            let ok = w_to_p.values().all(|s| s.len() == 1) && p_to_w.values().all(|s| s.len() == 1);
            r.check(ok, || {
                format!(
                    "k = {k}, X1 = {}: {} orbits of subspaces vs {} orbits of pairs",
                    x1.label,
                    w_to_p.len(),
                    p_to_w.len()
                )
            });
        }
    }
    Ok(())
}
