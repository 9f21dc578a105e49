//! Row reduction over `F_q` and canonical forms of subspaces.

use super::field::PrimeField;

/// Reduces the `k × m` row-major matrix in `buf` to reduced row-echelon form
/// in place and returns its rank. Nonzero rows come first.
pub fn rref(f: PrimeField, buf: &mut [u8], k: usize, m: usize) -> usize {
    let mut pivot = 0;
    for col in 0..m {
        if pivot == k {
            break;
        }
        let Some(sel) = (pivot..k).find(|&r| buf[r * m + col] != 0) else {
            continue;
        };
        if sel != pivot {
            for c in 0..m {
                buf.swap(sel * m + c, pivot * m + c);
            }
        }
        let inv = f.inv(buf[pivot * m + col]);
        if inv != 1 {
            for c in col..m {
                buf[pivot * m + c] = f.mul(buf[pivot * m + c], inv);
            }
        }
        for r in 0..k {
            let x = buf[r * m + col];
            if r != pivot && x != 0 {
                let factor = f.neg(x);
                for c in col..m {
                    let p = buf[pivot * m + c];
                    if p != 0 {
                        buf[r * m + c] = f.add(buf[r * m + c], f.mul(factor, p));
                    }
                }
            }
        }
        pivot += 1;
    }
    pivot
}

/// Canonical reduced-echelon basis of the span of `rows`, flattened.
pub fn canonical(f: PrimeField, rows: &[Vec<u8>], m: usize) -> Vec<u8> {
    let mut buf: Vec<u8> = rows.iter().flat_map(|r| r.iter().copied()).collect();
    let r = rref(f, &mut buf, rows.len(), m);
    buf.truncate(r * m);
    buf
}

/// Splits a flat row-major buffer into rows of width `m`.
pub fn rows_of(buf: &[u8], m: usize) -> Vec<Vec<u8>> {
    buf.chunks(m).map(|c| c.to_vec()).collect()
}

/// All coefficient vectors `c` with `Σ c_i · rows[i] = 0`, as a basis.
pub fn left_nullspace(f: PrimeField, rows: &[Vec<u8>], m: usize) -> Vec<Vec<u8>> {
    let k = rows.len();
    let w = m + k;
    let mut buf = vec![0u8; k * w];
    for (i, r) in rows.iter().enumerate() {
        buf[i * w..i * w + m].copy_from_slice(r);
        buf[i * w + m + i] = 1;
    }
    rref(f, &mut buf, k, w);
    (0..k)
        .filter(|&i| buf[i * w..i * w + m].iter().all(|&x| x == 0))
        .map(|i| buf[i * w + m..(i + 1) * w].to_vec())
        .filter(|c| c.iter().any(|&x| x != 0))
        .collect()
}

/// `Σ c_i · rows[i]`.
pub fn combine(f: PrimeField, c: &[u8], rows: &[Vec<u8>], m: usize) -> Vec<u8> {
    let mut out = vec![0u8; m];
    for (ci, r) in c.iter().zip(rows) {
        if *ci != 0 {
            for (o, x) in out.iter_mut().zip(r) {
                *o = f.add(*o, f.mul(*ci, *x));
            }
        }
    }
    out
}

/// Every vector of `F_q^m`, in lexicographic order.
pub fn all_vectors(f: PrimeField, m: usize) -> impl Iterator<Item = Vec<u8>> {
    let q = f.q() as u64;
    let total = q.pow(m as u32);
    (0..total).map(move |mut idx| {
        let mut v = vec![0u8; m];
        for x in v.iter_mut().rev() {
            *x = (idx % q) as u8;
            idx /= q;
        }
        v
    })
}

/// Every 1-space of `F_q^m`, as normalized representatives (first nonzero entry 1).
pub fn all_points(f: PrimeField, m: usize) -> impl Iterator<Item = Vec<u8>> {
    all_vectors(f, m).filter(|v| v.iter().find(|&&x| x != 0) == Some(&1))
}
