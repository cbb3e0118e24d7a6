//! Exact linear algebra over the rationals and the integers.
//!
//! Rational routines work on dense row-major matrices (`Vec<Vec<Q>>`). The
//! integer routines compute lattice bases (saturated kernels) and solve
//! integer systems through unimodular row reduction.

use crate::rational::{Q, Z};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(rows: &mut Vec<Vec<Q>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let mut m = rows.to_vec();
    rref(&mut m, first.len()).len()
}

/// Basis of `{x : A x = 0}`.
pub fn nullspace(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Some solution of `A x = b`, or `None` when inconsistent.
pub fn solve_any(a: &[Vec<Q>], b: &[Q], ncols: usize) -> Option<Vec<Q>> {
    let mut aug: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Q::zero(); ncols];
    for (row, &pc) in aug.iter().zip(&pivots) {
        x[pc] = row[ncols].clone();
    }
    Some(x)
}

/// Unique solution of a square or overdetermined full-column-rank system.
pub fn solve_unique(a: &[Vec<Q>], b: &[Q], ncols: usize) -> Option<Vec<Q>> {
    if rank(a) != ncols {
        return None;
    }
    solve_any(a, b, ncols)
}

pub fn det(a: &[Vec<Q>]) -> Q {
    let n = a.len();
    let mut m = a.to_vec();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        let piv = m[c][c].clone();
        d *= &piv;
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &piv;
            for j in c..n {
                let t = &f * &m[c][j];
                m[i][j] -= t;
            }
        }
    }
    d
}

pub fn inverse(a: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = a.len();
    let mut aug: Vec<Vec<Q>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug, n);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn transpose<T: Clone>(a: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    (0..ncols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_vec(a: &[Vec<Q>], x: &[Q]) -> Vec<Q> {
    a.iter().map(|r| crate::rational::dot_q(r, x)).collect()
}

/// Row reduction over the integers restricted to the first `k` columns, using
/// only unimodular row operations. Returns the number of nonzero leading rows.
fn integer_echelon(rows: &mut [Vec<Z>], k: usize) -> usize {
    let mut r = 0;
    for c in 0..k {
        if r == rows.len() {
            break;
        }
        loop {
            let pick = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&i, &j| rows[i][c].abs().cmp(&rows[j][c].abs()));
            let Some(p) = pick else { break };
            rows.swap(r, p);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let f = rows[i][c].div_floor(&rows[r][c]);
                let pr = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pr) {
                    *x -= &f * y;
                }
                if !rows[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < rows.len() && !rows[r][c].is_zero() {
            if rows[r][c].is_negative() {
                for x in rows[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            let pr = rows[r].clone();
            for i in 0..r {
                let f = rows[i][c].div_floor(&pr[c]);
                if !f.is_zero() {
                    for (x, y) in rows[i].iter_mut().zip(&pr) {
                        *x -= &f * y;
                    }
                }
            }
            r += 1;
        }
    }
    r
}

/// Hermite normal form of the row lattice; zero rows are dropped.
pub fn hnf_rows(rows: &[Vec<Z>]) -> Vec<Vec<Z>> {
    let Some(first) = rows.first() else { return Vec::new() };
    let n = first.len();
    let mut m = rows.to_vec();
    let r = integer_echelon(&mut m, n);
    m.truncate(r);
    m
}

/// Basis of the integer kernel `{x in Z^n : A x = 0}` in Hermite normal form.
/// The kernel of an integer matrix is a saturated lattice, so this is also a
/// lattice basis of `ker(A) ∩ Z^n`.
pub fn integer_kernel(a: &[Vec<Z>], n: usize) -> Vec<Vec<Z>> {
    let k = a.len();
    if k == 0 {
        return (0..n)
            .map(|i| (0..n).map(|j| if i == j { Z::one() } else { Z::zero() }).collect())
            .collect();
    }
    let mut aug: Vec<Vec<Z>> = (0..n)
        .map(|i| {
            let mut row: Vec<Z> = a.iter().map(|r| r[i].clone()).collect();
            row.extend((0..n).map(|j| if i == j { Z::one() } else { Z::zero() }));
            row
        })
        .collect();
    let r = integer_echelon(&mut aug, k);
    let kernel: Vec<Vec<Z>> = aug[r..].iter().map(|row| row[k..].to_vec()).collect();
    hnf_rows(&kernel)
}

/// An integer solution `x` of `B x = w`, if one exists.
pub fn solve_integer(b: &[Vec<Z>], w: &[Z], n: usize) -> Option<Vec<Z>> {
    let k = b.len();
    let mut aug: Vec<Vec<Z>> = (0..n)
        .map(|i| {
            let mut row: Vec<Z> = b.iter().map(|r| r[i].clone()).collect();
            row.extend((0..n).map(|j| if i == j { Z::one() } else { Z::zero() }));
            row
        })
        .collect();
    let r = integer_echelon(&mut aug, k);
    // y^T H = w^T with H the leading r rows restricted to the first k columns.
    let mut y: Vec<Z> = Vec::with_capacity(r);
    for i in 0..r {
        let c = (0..k).find(|&c| !aug[i][c].is_zero())?;
        let mut rhs = w[c].clone();
        for (j, yj) in y.iter().enumerate() {
            rhs -= yj * &aug[j][c];
        }
        let (qt, rem) = rhs.div_rem(&aug[i][c]);
        if !rem.is_zero() {
            return None;
        }
        y.push(qt);
    }
    let mut x = vec![Z::zero(); n];
    for (i, yi) in y.iter().enumerate() {
        for j in 0..n {
            x[j] += yi * &aug[i][k + j];
        }
    }
    let ok = b
        .iter()
        .zip(w)
        .all(|(row, wi)| crate::rational::dot_z(row, &x) == *wi);
    ok.then_some(x)
}
