//! Exact vertex enumeration by the double description method.
//!
//! Equalities are eliminated first (`x = x0 + N z`), the remaining
//! inequalities are homogenised to a pointed cone `{(z, t) : A z − b t ≤ 0,
//! t ≥ 0}` over integer data, and the extreme rays are built one row at a
//! time from an initial simplicial cone. Rays with `t > 0` are the vertices.

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::constraint::{ConstraintSystem, Sense};
use crate::geometry::linalg;
use crate::geometry::simplex;
use crate::rational::{QPoint, Rational};

/// Largest ambient dimension accepted by [`enumerate_vertices`].
pub const MAX_VERTEX_DIM: usize = 12;
/// Largest number of rows accepted by [`enumerate_vertices`].
pub const MAX_VERTEX_ROWS: usize = 60;

pub fn check_vertex_scale(sys: &ConstraintSystem) -> Result<()> {
    if sys.dim() > MAX_VERTEX_DIM {
        return Err(Error::scale(format!(
            "vertex enumeration limited to dimension {MAX_VERTEX_DIM}, system has {}",
            sys.dim()
        )));
    }
    if sys.len() > MAX_VERTEX_ROWS {
        return Err(Error::scale(format!(
            "vertex enumeration limited to {MAX_VERTEX_ROWS} constraints, system has {}",
            sys.len()
        )));
    }
    Ok(())
}

/// All extreme points, deduplicated and sorted; empty when infeasible.
pub fn enumerate_vertices(sys: &ConstraintSystem) -> Result<Vec<QPoint>> {
    check_vertex_scale(sys)?;
    enumerate_vertices_unchecked(sys)
}

pub(crate) fn enumerate_vertices_unchecked(sys: &ConstraintSystem) -> Result<Vec<QPoint>> {
    let m = sys.dim();
    if simplex::feasible_point(sys)?.is_none() {
        return Ok(Vec::new());
    }

    let mut eq_rows = Vec::new();
    let mut eq_rhs = Vec::new();
    let mut le_rows: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for c in sys.iter() {
        let row = c.dense_row(m);
        match c.sense {
            Sense::Eq => {
                eq_rows.push(row);
                eq_rhs.push(c.rhs.clone());
            }
            Sense::Le => le_rows.push((row, c.rhs.clone())),
            Sense::Ge => le_rows.push((row.into_iter().map(|v| -v).collect(), -c.rhs.clone())),
        }
    }
    let (x0, dirs) = linalg::solve_affine(&eq_rows, &eq_rhs, m).ok_or(Error::Infeasible)?;
    let d = dirs.len();

    // inequalities in z-space: (a·N) z ≤ b − a·x0
    let mut reduced: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for (a, b) in &le_rows {
        let coeffs: Vec<Rational> = dirs.iter().map(|dir| dot(a, dir)).collect();
        let rhs = b - dot(a, &x0);
        if coeffs.iter().all(Zero::is_zero) {
            if rhs.is_negative() {
                return Ok(Vec::new());
            }
            continue;
        }
        reduced.push((coeffs, rhs));
    }
    let lift = |z: &[Rational]| -> QPoint {
        let mut x = x0.clone();
        for (zi, dir) in z.iter().zip(&dirs) {
            for (xj, dj) in x.iter_mut().zip(dir) {
                *xj += zi * dj;
            }
        }
        QPoint::new(x)
    };
    if d == 0 {
        return Ok(vec![lift(&[])]);
    }
    let a_only: Vec<Vec<Rational>> = reduced.iter().map(|(a, _)| a.clone()).collect();
    if linalg::rank(&a_only) < d {
        return Err(Error::Unbounded);
    }

    // homogenised integer rows h·(z, t) ≤ 0, the t ≥ 0 row last
    let mut rows: Vec<Vec<BigInt>> = reduced
        .iter()
        .map(|(a, b)| {
            let mut r: Vec<Rational> = a.clone();
            r.push(-b.clone());
            integer_row(&r)
        })
        .collect();
    let mut t_row = vec![BigInt::zero(); d + 1];
    t_row[d] = -BigInt::one();
    rows.push(t_row);

    let rays = double_description(&rows, d + 1)?;
    let mut vertices = Vec::new();
    for ray in rays {
        let t = &ray[d];
        if t.is_zero() {
            return Err(Error::Unbounded);
        }
        let tq = Rational::from_integer(t.clone());
        let z: Vec<Rational> = ray[..d].iter().map(|v| Rational::from_integer(v.clone()) / &tq).collect();
        vertices.push(lift(&z));
    }
    vertices.sort();
    vertices.dedup();
    Ok(vertices)
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Scales a rational row to a primitive integer row with the same direction.
fn integer_row(r: &[Rational]) -> Vec<BigInt> {
    let lcm = r.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = r.iter().map(|v| (v * Rational::from_integer(lcm.clone())).to_integer()).collect();
    primitive(ints)
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        v
    } else {
        v.into_iter().map(|x| x / &g).collect()
    }
}

fn idot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

#[derive(Clone)]
struct Ray {
    coords: Vec<BigInt>,
    zeros: Vec<u64>,
}

fn set_bit(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn popcount(bits: &[u64]) -> usize {
    bits.iter().map(|w| w.count_ones() as usize).sum()
}

/// Extreme rays of the pointed cone `{y : rows · y ≤ 0}` in dimension `dim`.
fn double_description(rows: &[Vec<BigInt>], dim: usize) -> Result<Vec<Vec<BigInt>>> {
    let words = rows.len().div_ceil(64);
    // initial simplicial cone: the first `dim` independent rows, t-row preferred
    let mut order: Vec<usize> = Vec::with_capacity(rows.len());
    order.push(rows.len() - 1);
    order.extend(0..rows.len() - 1);
    let mut chosen: Vec<usize> = Vec::new();
    let mut chosen_rows: Vec<Vec<Rational>> = Vec::new();
    for &i in &order {
        let r: Vec<Rational> = rows[i].iter().map(|v| Rational::from_integer(v.clone())).collect();
        let mut trial = chosen_rows.clone();
        trial.push(r);
        if linalg::rank(&trial) > chosen_rows.len() {
            chosen_rows = trial;
            chosen.push(i);
            if chosen.len() == dim {
                break;
            }
        }
    }
    if chosen.len() < dim {
        return Err(Error::Unbounded);
    }
    let inv = linalg::inverse(&chosen_rows).expect("rows chosen independent");
    let mut rays: Vec<Ray> = Vec::new();
    for k in 0..dim {
        let column: Vec<Rational> = inv.iter().map(|row| -row[k].clone()).collect();
        let coords = integer_row(&column);
        let mut zeros = vec![0u64; words];
        for (j, &ri) in chosen.iter().enumerate() {
            if j != k {
                set_bit(&mut zeros, ri);
            }
        }
        rays.push(Ray { coords, zeros });
    }

    let mut processed = vec![0u64; words];
    for &ri in &chosen {
        set_bit(&mut processed, ri);
    }
    for &ri in &order {
        if chosen.contains(&ri) {
            continue;
        }
        let h = &rows[ri];
        let values: Vec<BigInt> = rays.iter().map(|r| idot(h, &r.coords)).collect();
        let (mut neg, mut zer, mut pos) = (Vec::new(), Vec::new(), Vec::new());
        for (i, v) in values.iter().enumerate() {
            match v.sign() {
                num::bigint::Sign::Minus => neg.push(i),
                num::bigint::Sign::NoSign => zer.push(i),
                num::bigint::Sign::Plus => pos.push(i),
            }
        }
        if pos.is_empty() {
            for &i in &zer {
                set_bit(&mut rays[i].zeros, ri);
            }
            set_bit(&mut processed, ri);
            continue;
        }
        let mut next: Vec<Ray> = Vec::with_capacity(neg.len() + zer.len());
        for &i in neg.iter() {
            next.push(rays[i].clone());
        }
        for &i in zer.iter() {
            let mut r = rays[i].clone();
            set_bit(&mut r.zeros, ri);
            next.push(r);
        }
        for &p in &pos {
            for &q in &neg {
                let common: Vec<u64> = rays[p].zeros.iter().zip(&rays[q].zeros).map(|(a, b)| a & b).collect();
                if popcount(&common) + 2 < dim {
                    continue;
                }
                let adjacent = rays.iter().enumerate().all(|(k, r)| {
                    k == p || k == q || r.zeros.iter().zip(&common).any(|(z, c)| z & c != *c)
                });
                if !adjacent {
                    continue;
                }
                let coords: Vec<BigInt> = rays[q]
                    .coords
                    .iter()
                    .zip(&rays[p].coords)
                    .map(|(rq, rp)| &values[p] * rq - &values[q] * rp)
                    .collect();
                let mut zeros = common;
                set_bit(&mut zeros, ri);
                next.push(Ray {
                    coords: primitive(coords),
                    zeros,
                });
            }
        }
        rays = next;
        set_bit(&mut processed, ri);
    }
    debug_assert!(rays.iter().all(|r| r.zeros.iter().zip(&processed).all(|(z, p)| z & !p == 0)));
    Ok(rays.into_iter().map(|r| r.coords).collect())
}
