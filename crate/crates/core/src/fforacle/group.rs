use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use super::field::PrimeField;
use super::space::FormedSpace;
use crate::error::{Error, Result};
use crate::rootsys::{Family, Root, RootSystem};
use crate::subgroups::SubgroupSpec;

/// An invertible matrix stored as `I + Σ x·E(row, col)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub delta: Vec<(u8, u8, u8)>,
}

impl Generator {
    fn from_terms(f: PrimeField, terms: &[(usize, usize, i64)]) -> Self {
        let mut delta: Vec<(u8, u8, u8)> = Vec::new();
        for &(r, c, x) in terms {
            let x = f.from_i64(x);
            if x != 0 {
                delta.push((r as u8, c as u8, x));
            }
        }
        Generator { delta }
    }

    /// `out = g · v`.
    #[inline]
    pub fn apply_into(&self, f: PrimeField, v: &[u8], out: &mut [u8]) {
        out.copy_from_slice(v);
        for &(r, c, x) in &self.delta {
            let vc = v[c as usize];
            if vc != 0 {
                out[r as usize] = f.add(out[r as usize], f.mul(x, vc));
            }
        }
    }

    pub fn apply(&self, f: PrimeField, v: &[u8]) -> Vec<u8> {
        let mut out = vec![0; v.len()];
        self.apply_into(f, v, &mut out);
        out
    }

    /// Dense row-major matrix.
    pub fn dense(&self, f: PrimeField, d: usize) -> Vec<u8> {
        let mut m = vec![0u8; d * d];
        for i in 0..d {
            m[i * d + i] = 1;
        }
        for &(r, c, x) in &self.delta {
            let k = r as usize * d + c as usize;
            m[k] = f.add(m[k], x);
        }
        m
    }

    /// Exchanges `e_i` and `f_i`: a reflection of determinant `-1` in orthogonal spaces.
    pub fn swap_pair(space: &FormedSpace, i: usize) -> Self {
        let (e, fi) = (space.e(i), space.f(i));
        Generator::from_terms(space.field, &[(e, e, -1), (fi, fi, -1), (e, fi, 1), (fi, e, 1)])
    }

    /// `x_0 ↦ -x_0` in type `B`.
    pub fn negate_x0(space: &FormedSpace) -> Option<Self> {
        space.x0().map(|x| Generator::from_terms(space.field, &[(x, x, -2)]))
    }
}

/// The root element `x_α(1)` acting on the natural module.
pub fn root_element(space: &FormedSpace, alpha: &Root) -> Result<Generator> {
    let f = space.field;
    let nz: Vec<(usize, i32)> = alpha.0.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, x)).collect();
    let bad = || Error::NotARoot(alpha.0.clone());
    if space.family == Family::A {
        let [(i, a), (j, _)] = nz[..] else {
            return Err(bad());
        };
        let (src, dst) = if a > 0 { (j, i) } else { (i, j) };
        return Ok(Generator::from_terms(f, &[(dst, src, 1)]));
    }
    let (e, fv) = (|i: usize| space.e(i + 1), |i: usize| space.f(i + 1));
    let symplectic = space.family == Family::C;
    let terms: Vec<(usize, usize, i64)> = match nz[..] {
        [(i, si), (j, sj)] if si.abs() == 1 && sj.abs() == 1 => match (si > 0, sj > 0) {
            (true, false) => vec![(e(i), e(j), 1), (fv(j), fv(i), -1)],
            (false, true) => vec![(e(j), e(i), 1), (fv(i), fv(j), -1)],
            (true, true) => {
                let s = if symplectic { 1 } else { -1 };
                vec![(e(i), fv(j), 1), (e(j), fv(i), s)]
            }
            (false, false) => {
                let s = if symplectic { 1 } else { -1 };
                vec![(fv(i), e(j), 1), (fv(j), e(i), s)]
            }
        },
        [(i, 2)] if symplectic => vec![(e(i), fv(i), 1)],
        [(i, -2)] if symplectic => vec![(fv(i), e(i), 1)],
        [(i, s)] if s.abs() == 1 && space.family == Family::B => {
            let x = space.x0().expect("type B has x_0");
            if s > 0 {
                vec![(x, fv(i), 1), (e(i), x, -2), (e(i), fv(i), -1)]
            } else {
                vec![(x, e(i), 1), (fv(i), x, -2), (fv(i), e(i), -1)]
            }
        }
        _ => return Err(bad()),
    };
    Ok(Generator::from_terms(f, &terms))
}

/// Generators of the split maximal torus: one primitive-element scaling per coordinate pair.
pub fn torus_generators(space: &FormedSpace) -> Vec<Generator> {
    let f = space.field;
    let z = f.primitive();
    if z == 1 {
        return Vec::new();
    }
    let (z, zi) = (z as i64, f.inv(z) as i64);
    match space.family {
        Family::A => (0..space.dimension).map(|i| Generator::from_terms(f, &[(i, i, z - 1)])).collect(),
        _ => (1..=space.rank)
            .map(|i| Generator::from_terms(f, &[(space.e(i), space.e(i), z - 1), (space.f(i), space.f(i), zi - 1)]))
            .collect(),
    }
}

/// A finitely generated matrix group over `F_q`.
#[derive(Debug, Clone, Serialize)]
pub struct MatrixGroupInstance {
    pub label: String,
    pub dimension: usize,
    #[serde(skip)]
    pub field: PrimeField,
    pub generators: Vec<Generator>,
}

fn from_base(space: &FormedSpace, label: String, base: &[Root]) -> Result<MatrixGroupInstance> {
    let mut generators = Vec::new();
    for a in base {
        generators.push(root_element(space, a)?);
        generators.push(root_element(space, &a.neg())?);
    }
    generators.extend(torus_generators(space));
    Ok(MatrixGroupInstance {
        label,
        dimension: space.dimension,
        field: space.field,
        generators,
    })
}

fn ambient_system(space: &FormedSpace) -> Result<RootSystem> {
    RootSystem::new(space.family, space.rank)
}

/// `G(F_q)` generated by `x_{±α}(1)`, `α ∈ Δ`, and the split torus.
pub fn ambient_instance(space: &FormedSpace) -> Result<MatrixGroupInstance> {
    let g = ambient_system(space)?;
    from_base(space, g.name(), &g.simple)
}

/// `X(F_q)` generated by the root elements `x_{±β}(1)`, `β` in a base of
/// `Φ(X)`, together with the split torus of `G`.
///
/// Orthogonal factors are realized through their root subgroups, giving the
/// connected group; see [`Generator::swap_pair`] for the full orthogonal group.
pub fn build_subgroup_instance(space: &FormedSpace, x: &SubgroupSpec) -> Result<MatrixGroupInstance> {
    if x.ambient != (space.family, space.rank) {
        return Err(Error::AmbientMismatch(
            format!("{}{}", x.ambient.0, x.ambient.1),
            format!("{}{}", space.family, space.rank),
        ));
    }
    let g = ambient_system(space)?;
    let phi = x.subsystem(&g)?;
    from_base(space, x.to_string(), &phi.base)
}

impl MatrixGroupInstance {
    pub fn with_generators(mut self, extra: impl IntoIterator<Item = Generator>) -> Self {
        self.generators.extend(extra);
        self
    }

    /// Every generator preserves `β` and `Q` on all pairs of basis vectors.
    pub fn preserves_forms(&self, space: &FormedSpace) -> bool {
        let d = space.dimension;
        let basis: Vec<Vec<u8>> = (0..d).map(|i| (0..d).map(|j| u8::from(i == j)).collect()).collect();
        self.generators.iter().all(|g| {
            let img: Vec<Vec<u8>> = basis.iter().map(|b| g.apply(self.field, b)).collect();
            (0..d).all(|i| {
                space.quad(&img[i]) == space.quad(&basis[i])
                    && (0..d).all(|j| space.beta(&img[i], &img[j]) == space.beta(&basis[i], &basis[j]))
            })
        })
    }

    /// Order of the generated group by closure, failing past `limit` elements.
    pub fn order(&self, limit: usize) -> Result<usize> {
        let (f, d) = (self.field, self.dimension);
        let gens: Vec<Vec<u8>> = self.generators.iter().map(|g| g.dense(f, d)).collect();
        let mut identity = vec![0u8; d * d];
        for i in 0..d {
            identity[i * d + i] = 1;
        }
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(identity.clone());
        queue.push_back(identity);
        while let Some(m) = queue.pop_front() {
            for g in &gens {
                let p = mat_mul(f, g, &m, d);
                if seen.insert(p.clone()) {
                    if seen.len() > limit {
                        return Err(Error::Budget(format!("group order exceeds {limit}")));
                    }
                    queue.push_back(p);
                }
            }
        }
        Ok(seen.len())
    }
}

fn mat_mul(f: PrimeField, a: &[u8], b: &[u8], d: usize) -> Vec<u8> {
    let mut out = vec![0u8; d * d];
    for i in 0..d {
        for k in 0..d {
            let x = a[i * d + k];
            if x == 0 {
                continue;
            }
            for j in 0..d {
                out[i * d + j] = f.add(out[i * d + j], f.mul(x, b[k * d + j]));
            }
        }
    }
    out
}
