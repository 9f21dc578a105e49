use std::io::Write;
use std::time::Instant;

use indexmap::IndexSet;
use rustc_hash::FxBuildHasher;
use serde::Serialize;

use super::field::PrimeField;
use super::group::{ambient_instance, Generator, MatrixGroupInstance};
use super::space::FormedSpace;
use super::subspace::{rref, rows_of};
use crate::error::{Error, Result};
use crate::rootsys::Family;
use crate::subgroups::{DnClass, ParabolicSpec};

/// Limits on a single enumeration or orbit count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Budget {
    pub max_flags: usize,
    pub max_seconds: f64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_flags: 1_000_000,
            max_seconds: 60.0,
        }
    }
}

impl Budget {
    pub(crate) fn check_time(&self, start: Instant, what: &str) -> Result<()> {
        let t = start.elapsed().as_secs_f64();
        if t > self.max_seconds {
            return Err(Error::Budget(format!("{what}: {t:.1} s > {} s", self.max_seconds)));
        }
        Ok(())
    }
}

/// Flags of subspaces of fixed dimensions, each stored as the concatenated
/// reduced-echelon bases of its members.
#[derive(Debug, Clone)]
pub struct FlagSet {
    pub parabolic: Option<ParabolicSpec>,
    pub dims: Vec<usize>,
    pub dimension: usize,
    pub field: PrimeField,
    keys: IndexSet<Box<[u8]>, FxBuildHasher>,
}

/// Scratch buffers for applying a matrix to a flag.
pub(crate) struct Scratch {
    row: Vec<u8>,
    pub(crate) out: Vec<u8>,
}

impl FlagSet {
    /// A flag set from explicit canonical keys.
    pub fn from_keys(field: PrimeField, dimension: usize, dims: Vec<usize>, keys: impl IntoIterator<Item = Vec<u8>>) -> Self {
        FlagSet {
            parabolic: None,
            dims,
            dimension,
            field,
            keys: keys.into_iter().map(Vec::into_boxed_slice).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn key(&self, i: usize) -> &[u8] {
        &self.keys[i]
    }

    pub fn position(&self, key: &[u8]) -> Option<usize> {
        self.keys.get_index_of(key)
    }

    /// Members of flag `i` as lists of basis rows.
    pub fn subspaces(&self, i: usize) -> Vec<Vec<Vec<u8>>> {
        let m = self.dimension;
        let mut off = 0;
        let key = self.key(i);
        self.dims
            .iter()
            .map(|&d| {
                let rows = rows_of(&key[off..off + d * m], m);
                off += d * m;
                rows
            })
            .collect()
    }

    pub(crate) fn scratch(&self) -> Scratch {
        Scratch {
            row: vec![0; self.dimension],
            out: Vec::with_capacity(self.stride()),
        }
    }

    fn stride(&self) -> usize {
        self.dims.iter().sum::<usize>() * self.dimension
    }

    /// Canonical key of `g` applied to `key`, left in `s.out`.
    pub(crate) fn image(&self, g: &Generator, key: &[u8], s: &mut Scratch) {
        let (f, m) = (self.field, self.dimension);
        s.out.clear();
        let mut off = 0;
        for &d in &self.dims {
            let start = s.out.len();
            for r in 0..d {
                let v = &key[off + r * m..off + (r + 1) * m];
                g.apply_into(f, v, &mut s.row);
                s.out.extend_from_slice(&s.row);
            }
            let rank = rref(f, &mut s.out[start..], d, m);
            debug_assert_eq!(rank, d, "matrices are invertible");
            off += d * m;
        }
    }

    /// Writes one CSV record per subspace: flag index, member index, dimension, basis rows.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let io = |e: csv::Error| Error::Io(e.to_string());
        let mut wtr = csv::Writer::from_writer(w);
        wtr.write_record(["flag", "member", "dim", "basis"]).map_err(io)?;
        for i in 0..self.len() {
            for (j, rows) in self.subspaces(i).iter().enumerate() {
                let basis: Vec<String> = rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
                wtr.write_record([i.to_string(), j.to_string(), rows.len().to_string(), basis.join(";")])
                    .map_err(io)?;
            }
        }
        wtr.flush().map_err(|e| Error::Io(e.to_string()))
    }
}

fn unit(m: usize, i: usize) -> Vec<u8> {
    let mut v = vec![0; m];
    v[i] = 1;
    v
}

/// The flag stabilized by the standard parabolic: `<e_1..e_d>` for each
/// dimension, and `<e_1..e_{n-1}, f_n>` for the second class of maximal spaces in `D_n`.
fn standard_flag(space: &FormedSpace, dims: &[usize], class: Option<DnClass>) -> Vec<u8> {
    let (f, m, n) = (space.field, space.dimension, space.rank);
    let mut key = Vec::new();
    for &d in dims {
        let mut rows: Vec<Vec<u8>> = (1..=d).map(|i| unit(m, space.e(i))).collect();
        if class == Some(DnClass::Minus) && d == n {
            rows[n - 1] = unit(m, space.f(n));
        }
        let mut buf: Vec<u8> = rows.concat();
        rref(f, &mut buf, d, m);
        key.extend(buf);
    }
    key
}

/// Breadth-first closure of `start` under `group`.
pub(crate) fn closure(
    field: PrimeField,
    dimension: usize,
    dims: Vec<usize>,
    start: Vec<u8>,
    group: &MatrixGroupInstance,
    budget: &Budget,
) -> Result<FlagSet> {
    let clock = Instant::now();
    let mut set = FlagSet::from_keys(field, dimension, dims, [start]);
    let mut s = set.scratch();
    let mut next = 0;
    while next < set.len() {
        for g in &group.generators {
            set.image(g, &set.keys[next], &mut s);
            if !set.keys.contains(s.out.as_slice()) {
                set.keys.insert(s.out.clone().into_boxed_slice());
                if set.keys.len() > budget.max_flags {
                    return Err(Error::Budget(format!("more than {} flags", budget.max_flags)));
                }
            }
        }
        next += 1;
        if next % 4096 == 0 {
            budget.check_time(clock, "flag enumeration")?;
        }
    }
    Ok(set)
}

/// All flags of totally singular subspaces of the dimensions fixed by `p`,
/// obtained as the `G(F_q)`-orbit of the standard flag.
/// Gaussian binomial `[m choose k]_q`.
fn gaussian(m: usize, k: usize, q: f64) -> f64 {
    (0..k).map(|i| (q.powi((m - i) as i32) - 1.0) / (q.powi(i as i32 + 1) - 1.0)).product()
}

/// Number of flags of type `dims` in `space`, by the closed formulas for
/// Grassmannians and polar spaces. `one_class` halves the count of maximal
/// subspaces of a split even orthogonal space.
pub fn flag_count(space: &FormedSpace, dims: &[usize], one_class: bool) -> f64 {
    let q = space.field.q() as f64;
    let Some(&top) = dims.last() else { return 1.0 };
    let inner = |m: usize| {
        let mut prev = 0;
        let mut c = 1.0;
        for &d in dims {
            c *= gaussian(m - prev, d - prev, q);
            prev = d;
        }
        c
    };
    if space.family == Family::A {
        return inner(space.dimension);
    }
    let r = space.witt_index();
    let e = i32::from(space.family != Family::D);
    let mut top_count = gaussian(r, top, q);
    for i in r - top + 1..=r {
        top_count *= q.powi(i as i32 - 1 + e) + 1.0;
    }
    if one_class {
        top_count /= 2.0;
    }
    top_count * inner(top)
}

pub fn enumerate_flags(space: &FormedSpace, p: &ParabolicSpec, budget: &Budget) -> Result<FlagSet> {
    if p.ambient != (space.family, space.rank) {
        return Err(Error::AmbientMismatch(
            format!("{}{}", p.ambient.0, p.ambient.1),
            format!("{}{}", space.family, space.rank),
        ));
    }
    let (dims, class) = p.flag_dims();
    if let Some(&d) = dims.iter().find(|&&d| d > space.witt_index()) {
        return Err(Error::WittIndex {
            requested: d,
            witt: space.witt_index(),
        });
    }
    let predicted = flag_count(space, &dims, class.is_some());
    if predicted > budget.max_flags as f64 {
        return Err(Error::Budget(format!("{predicted:.0} flags > {}", budget.max_flags)));
    }
    let start = standard_flag(space, &dims, class);
    let g = ambient_instance(space)?;
    let mut set = closure(space.field, space.dimension, dims, start, &g, budget)?;
    set.parabolic = Some(p.clone());
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fforacle::space::build_formed_space;
    use crate::rootsys::Family;
    use crate::subgroups::parse_parabolic;

    fn count(fam: Family, n: usize, q: u32, p: &str) -> usize {
        let space = build_formed_space(fam, n, q).unwrap();
        let p = parse_parabolic((fam, n), p).unwrap();
        let set = enumerate_flags(&space, &p, &Budget::default()).unwrap();
        for i in 0..set.len() {
            for rows in set.subspaces(i) {
                assert!(space.is_totally_singular(&rows));
            }
        }
        set.len()
    }

    #[test]
    fn sp4_f2_counts() {
        assert_eq!(count(Family::C, 2, 2, "P1"), 15);
        assert_eq!(count(Family::C, 2, 2, "P2"), 15);
        assert_eq!(count(Family::C, 2, 2, "P1,2"), 45);
    }

    #[test]
    fn grassmannian_counts() {
        // Gaussian binomials [4 choose 2]_3 = 130, [5 choose 2]_2 = 155
        assert_eq!(count(Family::A, 3, 3, "P2"), 130);
        assert_eq!(count(Family::A, 4, 2, "P2"), 155);
        assert_eq!(count(Family::A, 2, 5, "P1"), 31);
    }

    #[test]
    fn polar_space_counts() {
        let q: usize = 3;
        // maximal totally singular subspaces: prod (q^i + 1) for C_n, B_n; one D_n class: prod_{i<n} (q^i + 1)
        assert_eq!(count(Family::C, 3, 3, "P3"), (q + 1) * (q * q + 1) * (q.pow(3) + 1));
        assert_eq!(count(Family::B, 2, 3, "P2"), (q + 1) * (q * q + 1));
        assert_eq!(count(Family::D, 3, 3, "P3"), (q + 1) * (q * q + 1));
        assert_eq!(count(Family::D, 3, 3, "P2"), (q + 1) * (q * q + 1));
        assert_eq!(count(Family::D, 4, 2, "P1"), (16 - 1) * (8 + 1));
    }

    #[test]
    fn d_classes_are_disjoint_and_split_by_parity() {
        let space = build_formed_space(Family::D, 3, 3).unwrap();
        let plus = enumerate_flags(&space, &parse_parabolic((Family::D, 3), "P3").unwrap(), &Budget::default()).unwrap();
        let minus = enumerate_flags(&space, &parse_parabolic((Family::D, 3), "P2").unwrap(), &Budget::default()).unwrap();
        for i in 0..plus.len() {
            assert!(minus.position(plus.key(i)).is_none());
        }
    }

    #[test]
    fn predicted_counts_match_enumeration() {
        let cases = [
            (Family::A, 3, "P1,2,3"),
            (Family::A, 4, "P2,4"),
            (Family::B, 2, "P1,2"),
            (Family::B, 3, "P1,3"),
            (Family::C, 3, "P1,3"),
            (Family::C, 3, "P2"),
            (Family::D, 3, "P1,2"),
            (Family::D, 4, "P2,3,4"),
            (Family::D, 4, "P3"),
            (Family::D, 4, "P1,4"),
        ];
        for (fam, n, name) in cases {
            for q in [2, 3] {
                if fam == Family::B && q == 2 {
                    continue;
                }
                let space = build_formed_space(fam, n, q).unwrap();
                let (dims, class) = parse_parabolic((fam, n), name).unwrap().flag_dims();
                let expected = flag_count(&space, &dims, class.is_some());
                assert_eq!(count(fam, n, q, name) as f64, expected, "{fam}{n} {name} q={q}");
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let space = build_formed_space(Family::A, 3, 3).unwrap();
        let p = parse_parabolic((Family::A, 3), "P2").unwrap();
        let b = Budget {
            max_flags: 100,
            max_seconds: 60.0,
        };
        assert!(matches!(enumerate_flags(&space, &p, &b), Err(Error::Budget(_))));
    }

    #[test]
    fn csv_export() {
        let space = build_formed_space(Family::C, 2, 2).unwrap();
        let p = parse_parabolic((Family::C, 2), "P1").unwrap();
        let set = enumerate_flags(&space, &p, &Budget::default()).unwrap();
        let mut out = Vec::new();
        set.write_csv(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().count(), 16);
        assert!(text.starts_with("flag,member,dim,basis"));
    }
}
