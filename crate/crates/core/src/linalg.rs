//! Exact rational linear algebra on small integer vectors.

use num_rational::Ratio;

pub type Q = Ratio<i64>;

/// Row-reduces a copy of `rows` and returns the number of pivots.
pub fn rank(rows: &[Vec<i32>]) -> usize {
    echelon(rows).len()
}

/// Reduced echelon basis (over Q) of the span of `rows`.
pub fn echelon(rows: &[Vec<i32>]) -> Vec<Vec<Q>> {
    let mut m: Vec<Vec<Q>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| Q::from_integer(x as i64)).collect())
        .collect();
    let width = m.first().map_or(0, |r| r.len());
    let mut pivot_row = 0;
    for col in 0..width {
        let Some(sel) = (pivot_row..m.len()).find(|&r| m[r][col] != Q::from_integer(0)) else {
            continue;
        };
        m.swap(pivot_row, sel);
        let inv = m[pivot_row][col].recip();
        for x in m[pivot_row].iter_mut() {
            *x *= inv;
        }
        for r in 0..m.len() {
            if r != pivot_row && m[r][col] != Q::from_integer(0) {
                let f = m[r][col];
                for c in 0..width {
                    let d = m[pivot_row][c] * f;
                    m[r][c] -= d;
                }
            }
        }
        pivot_row += 1;
        if pivot_row == m.len() {
            break;
        }
    }
    m.truncate(pivot_row);
    m
}

/// Expresses `v` in terms of the linearly independent `base`, if possible.
pub fn solve(base: &[Vec<i32>], v: &[i32]) -> Option<Vec<Q>> {
    let k = base.len();
    let width = v.len();
    // Augmented system: columns are base vectors, rows are coordinates.
    let mut m: Vec<Vec<Q>> = (0..width)
        .map(|c| {
            let mut row: Vec<Q> = base.iter().map(|b| Q::from_integer(b[c] as i64)).collect();
            row.push(Q::from_integer(v[c] as i64));
            row
        })
        .collect();
    let zero = Q::from_integer(0);
    let mut pivots = Vec::with_capacity(k);
    let mut r = 0;
    for col in 0..k {
        let Some(sel) = (r..width).find(|&i| m[i][col] != zero) else {
            return None;
        };
        m.swap(r, sel);
        let inv = m[r][col].recip();
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..width {
            if i != r && m[i][col] != zero {
                let f = m[i][col];
                for c in 0..=k {
                    let d = m[r][c] * f;
                    m[i][c] -= d;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if (r..width).any(|i| m[i][k] != zero) {
        return None;
    }
    Some((0..k).map(|i| m[i][k]).collect())
}

/// True when `v` lies in the rational span of `rows`.
pub fn in_span(rows: &[Vec<i32>], v: &[i32]) -> bool {
    let mut ext = rows.to_vec();
    ext.push(v.to_vec());
    rank(&ext) == rank(rows)
}

pub fn dot(a: &[i32], b: &[i32]) -> i32 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
