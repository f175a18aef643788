//! Exact Gaussian elimination over the rationals.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{QPoint, Rational};

/// Reduced row echelon form; returns the pivot column of each nonzero row.
pub fn rref(rows: &mut Vec<Vec<Rational>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        let nz: Vec<usize> = (0..pivot_row.len()).filter(|&j| !pivot_row[j].is_zero()).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &nz {
                let delta = &f * &pivot_row[j];
                row[j] -= delta;
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let Some(cols) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut work = rows.to_vec();
    rref(&mut work, cols).len()
}

/// Affine dimension of a point set: rank of the differences to the first point.
pub fn affine_dim(points: &[QPoint]) -> Result<usize> {
    let first = points.first().ok_or_else(|| Error::domain("affine dimension of an empty set"))?;
    let diffs: Vec<Vec<Rational>> = points[1..].iter().map(|p| (p - first).into_coords()).collect();
    Ok(rank(&diffs))
}

/// Indices of a maximal affinely independent subset, greedy in input order.
pub fn affinely_independent_subset(points: &[QPoint]) -> Vec<usize> {
    let Some(first) = points.first() else {
        return Vec::new();
    };
    let mut chosen = vec![0];
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    for (i, p) in points.iter().enumerate().skip(1) {
        let mut candidate = basis.clone();
        candidate.push((p - first).into_coords());
        if rank(&candidate) > basis.len() {
            basis = candidate;
            chosen.push(i);
        }
    }
    chosen
}

/// Solution set of `A x = b` as `x0 + span(directions)`, or `None` when
/// inconsistent.
pub fn solve_affine(a: &[Vec<Rational>], b: &[Rational], cols: usize) -> Option<(Vec<Rational>, Vec<Vec<Rational>>)> {
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, cols + 1);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x0 = vec![Rational::zero(); cols];
    for (row, &c) in aug.iter().zip(&pivots) {
        x0[c] = row[cols].clone();
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let directions = free
        .iter()
        .map(|&f| {
            let mut d = vec![Rational::zero(); cols];
            d[f] = Rational::one();
            for (row, &c) in aug.iter().zip(&pivots) {
                d[c] = -row[f].clone();
            }
            d
        })
        .collect();
    Some((x0, directions))
}

/// Basis of `{y : rows · y = 0}`.
pub fn null_space(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let zeros = vec![Rational::zero(); rows.len()];
    solve_affine(rows, &zeros, cols).map(|(_, d)| d).unwrap_or_default()
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse(matrix: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = matrix.len();
    let mut aug: Vec<Vec<Rational>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug, n);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}
