use serde::Serialize;

use super::field::PrimeField;
use crate::error::{Error, Result};
use crate::rootsys::Family;

/// Largest `dim V` handled by the oracle.
pub const MAX_DIM: usize = 16;

/// `F_q^d` with the standard split form of a classical group.
///
/// Basis order: `e_1..e_n, f_1..f_n` and, for `B_n`, `x_0` last. In type `A`
/// the basis is `e_1..e_{n+1}` and both forms vanish.
#[derive(Debug, Clone, Serialize)]
pub struct FormedSpace {
    pub family: Family,
    pub rank: usize,
    pub field: PrimeField,
    pub dimension: usize,
    /// Gram matrix of `β`, row-major.
    pub bilinear: Vec<u8>,
    /// `Q(v) = Σ_{i<=j} c_ij v_i v_j`, upper triangular, orthogonal types only.
    pub quadratic: Option<Vec<u8>>,
    /// Basis vectors lying in `V_1` of a decomposition `V = V_1 ⊥ V_2`.
    pub decomposition: Option<Vec<bool>>,
}

pub fn build_formed_space(family: Family, n: usize, q: u32) -> Result<FormedSpace> {
    let field = PrimeField::new(q)?;
    if n == 0 {
        return Err(Error::UnsupportedType { family, rank: n });
    }
    if family == Family::B && q == 2 {
        return Err(Error::Unsupported("B_n over F_2 (degenerate polar form)".into()));
    }
    let d = match family {
        Family::A => n + 1,
        Family::B => 2 * n + 1,
        Family::C | Family::D => 2 * n,
    };
    if d > MAX_DIM {
        return Err(Error::Unsupported(format!("dim V = {d} exceeds {MAX_DIM}")));
    }
    let mut bilinear = vec![0u8; d * d];
    let mut quadratic = None;
    if family != Family::A {
        for i in 0..n {
            let (e, f) = (i, n + i);
            bilinear[e * d + f] = 1;
            bilinear[f * d + e] = if family == Family::C { field.neg(1) } else { 1 };
        }
        if family != Family::C {
            let mut c = vec![0u8; d * d];
            for i in 0..n {
                c[i * d + n + i] = 1;
            }
            if family == Family::B {
                c[(d - 1) * d + d - 1] = 1;
                bilinear[(d - 1) * d + d - 1] = field.from_i64(2);
            }
            quadratic = Some(c);
        }
    }
    Ok(FormedSpace {
        family,
        rank: n,
        field,
        dimension: d,
        bilinear,
        quadratic,
        decomposition: None,
    })
}

impl FormedSpace {
    pub fn q(&self) -> u8 {
        self.field.q()
    }

    /// Index of `e_i` (1-based `i`).
    pub fn e(&self, i: usize) -> usize {
        i - 1
    }

    /// Index of `f_i` (1-based `i`); forms only.
    pub fn f(&self, i: usize) -> usize {
        self.rank + i - 1
    }

    /// Index of the anisotropic vector of `B_n`.
    pub fn x0(&self) -> Option<usize> {
        (self.family == Family::B).then_some(2 * self.rank)
    }

    pub fn has_form(&self) -> bool {
        self.family != Family::A
    }

    pub fn beta(&self, u: &[u8], v: &[u8]) -> u8 {
        let (f, d) = (self.field, self.dimension);
        let mut s = 0;
        for i in 0..d {
            if u[i] == 0 {
                continue;
            }
            for j in 0..d {
                let g = self.bilinear[i * d + j];
                if g != 0 && v[j] != 0 {
                    s = f.add(s, f.mul(u[i], f.mul(g, v[j])));
                }
            }
        }
        s
    }

    /// `Q(v)`; zero for symplectic and linear spaces.
    pub fn quad(&self, v: &[u8]) -> u8 {
        let Some(c) = &self.quadratic else {
            return 0;
        };
        let (f, d) = (self.field, self.dimension);
        let mut s = 0;
        for i in 0..d {
            if v[i] == 0 {
                continue;
            }
            for j in i..d {
                let x = c[i * d + j];
                if x != 0 && v[j] != 0 {
                    s = f.add(s, f.mul(x, f.mul(v[i], v[j])));
                }
            }
        }
        s
    }

    pub fn is_singular(&self, v: &[u8]) -> bool {
        match self.family {
            Family::A => true,
            Family::C => true,
            _ => self.quad(v) == 0,
        }
    }

    /// Both forms vanish on the span of `rows`.
    pub fn is_totally_singular(&self, rows: &[Vec<u8>]) -> bool {
        if !self.has_form() {
            return true;
        }
        rows.iter().all(|r| self.is_singular(r))
            && rows.iter().enumerate().all(|(i, u)| rows[i..].iter().all(|v| self.beta(u, v) == 0))
    }

    /// Dimension of the maximal totally singular subspaces (`dim V` in type `A`).
    pub fn witt_index(&self) -> usize {
        match self.family {
            Family::A => self.dimension,
            _ => self.rank,
        }
    }

    /// Declares `V_1` as the span of the hyperbolic pairs `pairs` (1-based),
    /// plus `x_0` when `with_x0`. In type `A`, `pairs` lists coordinates.
    pub fn with_decomposition(mut self, pairs: &[usize], with_x0: bool) -> Result<Self> {
        let mut mask = vec![false; self.dimension];
        for &i in pairs {
            if i == 0 || i > self.rank + usize::from(self.family == Family::A) {
                return Err(Error::BadNode(i));
            }
            mask[self.e(i)] = true;
            if self.has_form() {
                mask[self.f(i)] = true;
            }
        }
        if let Some(x) = self.x0() {
            mask[x] = with_x0;
        }
        self.decomposition = Some(mask);
        Ok(self)
    }

    /// `π_part(v)` for `part ∈ {1, 2}`.
    pub fn project(&self, v: &[u8], part: usize) -> Vec<u8> {
        let mask = self.decomposition.as_ref().expect("space carries a decomposition");
        v.iter()
            .zip(mask)
            .map(|(&x, &in1)| if in1 == (part == 1) { x } else { 0 })
            .collect()
    }

    /// Basis vectors spanning `V_part`.
    pub fn part_basis(&self, part: usize) -> Vec<Vec<u8>> {
        let mask = self.decomposition.as_ref().expect("space carries a decomposition");
        (0..self.dimension)
            .filter(|&i| mask[i] == (part == 1))
            .map(|i| {
                let mut v = vec![0u8; self.dimension];
                v[i] = 1;
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fforacle::subspace::all_vectors;

    #[test]
    fn symplectic_form_is_alternating_nondegenerate() {
        let s = build_formed_space(Family::C, 2, 2).unwrap();
        assert_eq!(s.dimension, 4);
        for v in all_vectors(s.field, 4) {
            assert_eq!(s.beta(&v, &v), 0);
        }
        // nondegenerate: no nonzero vector is orthogonal to everything
        let basis: Vec<Vec<u8>> = (0..4).map(|i| (0..4).map(|j| u8::from(i == j)).collect()).collect();
        for v in all_vectors(s.field, 4).skip(1) {
            assert!(basis.iter().any(|b| s.beta(&v, b) != 0));
        }
    }

    #[test]
    fn d2_form_is_hyperbolic_sum() {
        let s = build_formed_space(Family::D, 2, 3).unwrap();
        // Q = x1 y1 + x2 y2 in the e, f coordinates
        assert_eq!(s.quad(&[1, 1, 1, 1]), 2);
        assert_eq!(s.quad(&[1, 0, 0, 1]), 0);
        let singular = all_vectors(s.field, 4).filter(|v| s.quad(v) == 0).count();
        // plus type: q^3 + q^2 - q singular vectors
        assert_eq!(singular, 27 + 9 - 3);
    }

    #[test]
    fn polar_form_matches_quadratic() {
        for (fam, n, q) in [(Family::D, 2, 2), (Family::B, 2, 3), (Family::D, 3, 5)] {
            let s = build_formed_space(fam, n, q).unwrap();
            let vs: Vec<Vec<u8>> = all_vectors(s.field, s.dimension).step_by(7).take(60).collect();
            for u in &vs {
                for v in &vs {
                    let w: Vec<u8> = u.iter().zip(v).map(|(a, b)| s.field.add(*a, *b)).collect();
                    let polar = s.field.sub(s.field.sub(s.quad(&w), s.quad(u)), s.quad(v));
                    assert_eq!(polar, s.beta(u, v));
                }
            }
        }
    }

    #[test]
    fn b2_singular_points() {
        let s = build_formed_space(Family::B, 2, 3).unwrap();
        let points = crate::fforacle::subspace::all_points(s.field, 5).filter(|v| s.quad(v) == 0).count();
        // singular points of a parabolic quadric in PG(4, q): (q^4 - 1)/(q - 1)
        assert_eq!(points, 40);
    }

    #[test]
    fn b_over_f2_unsupported() {
        assert!(matches!(build_formed_space(Family::B, 2, 2), Err(Error::Unsupported(_))));
    }
}
