//! Row-style Hermite normal form.
//!
//! Convention: the basis vectors are the rows, `H` is upper triangular (in
//! echelon form for non-square input), every pivot is positive and every
//! entry above a pivot lies in `[0, pivot)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{det, IntMatrix, Matrix};
use crate::error::{Error, Result};

fn combine(u: &BigInt, a: &[BigInt], v: &BigInt, b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| u * x + v * y).collect()
}

/// Row-style HNF of a full-row-rank integer matrix, with the unimodular
/// transform `U` such that `U · M = H`.
pub fn hnf(m: &IntMatrix) -> Result<(IntMatrix, IntMatrix)> {
    let rows = m.rows();
    let cols = m.cols();
    let mut h = m.to_rows();
    let mut u: Vec<Vec<BigInt>> = IntMatrix::identity(rows).to_rows();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Bring the gcd of column c (rows r..) into row r.
        for i in r + 1..rows {
            if h[i][c].is_zero() {
                continue;
            }
            if h[r][c].is_zero() {
                h.swap(r, i);
                u.swap(r, i);
                continue;
            }
            let a = h[r][c].clone();
            let b = h[i][c].clone();
            let eg = a.extended_gcd(&b);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let ag = &a / &g;
            let bg = &b / &g;
            let new_r = combine(&x, &h[r], &y, &h[i]);
            let new_i = combine(&-&bg, &h[r], &ag, &h[i]);
            h[r] = new_r;
            h[i] = new_i;
            let new_r = combine(&x, &u[r], &y, &u[i]);
            let new_i = combine(&-&bg, &u[r], &ag, &u[i]);
            u[r] = new_r;
            u[i] = new_i;
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            h[r].iter_mut().for_each(|x| *x = -&*x);
            u[r].iter_mut().for_each(|x| *x = -&*x);
        }
        for i in 0..r {
            let q = h[i][c].div_floor(&h[r][c]);
            if q.is_zero() {
                continue;
            }
            let (hi, hr) = (h[i].clone(), h[r].clone());
            h[i] = combine(&BigInt::one(), &hi, &-&q, &hr);
            let (ui, ur) = (u[i].clone(), u[r].clone());
            u[i] = combine(&BigInt::one(), &ui, &-&q, &ur);
        }
        r += 1;
    }
    if r < rows {
        return Err(Error::Rank);
    }
    Ok((Matrix::from_rows(h)?, Matrix::from_rows(u)?))
}

/// HNF (upper triangular, `n × n`) of the lattice spanned by `gens` together
/// with `d · Zⁿ`.
///
/// All intermediate entries are kept in `[0, d)`, which is sound because
/// `d · eⱼ` belongs to the lattice. When `d · Zⁿ` is already contained in the
/// span of `gens` the result is the HNF of that span.
pub fn hnf_modular(gens: &[Vec<BigInt>], n: usize, d: &BigInt) -> IntMatrix {
    assert!(d.is_positive(), "modulus must be positive");
    let mut pool: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|g| {
            assert_eq!(g.len(), n, "generator length");
            g.iter().map(|x| x.mod_floor(d)).collect::<Vec<_>>()
        })
        .filter(|g| g.iter().any(|x| !x.is_zero()))
        .collect();
    let mut h: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut p = vec![BigInt::zero(); n];
        p[j] = d.clone();
        let mut rest = Vec::with_capacity(pool.len());
        for row in pool.drain(..) {
            if row[j].is_zero() {
                rest.push(row);
                continue;
            }
            let eg = p[j].extended_gcd(&row[j]);
            let (mut g, mut x, mut y) = (eg.gcd, eg.x, eg.y);
            if g.is_negative() {
                g = -g;
                x = -x;
                y = -y;
            }
            let pg = &p[j] / &g;
            let rg = &row[j] / &g;
            let mut new_p = combine(&x, &p, &y, &row);
            let mut other = combine(&rg, &p, &-&pg, &row);
            debug_assert!(other[j].is_zero());
            debug_assert_eq!(new_p[j], g);
            for k in j + 1..n {
                new_p[k] = new_p[k].mod_floor(d);
                other[k] = other[k].mod_floor(d);
            }
            p = new_p;
            if other.iter().any(|v| !v.is_zero()) {
                rest.push(other);
            }
        }
        pool = rest;
        h.push(p);
    }
    reduce_above_pivots(&mut h);
    Matrix::from_rows(h).expect("square")
}

fn reduce_above_pivots(h: &mut [Vec<BigInt>]) {
    let n = h.len();
    for j in 0..n {
        for i in 0..j {
            let q = h[i][j].div_floor(&h[j][j]);
            if q.is_zero() {
                continue;
            }
            let hj = h[j].clone();
            for (x, y) in h[i].iter_mut().zip(&hj).skip(j) {
                *x -= &q * y;
            }
        }
    }
}

/// HNF of a square nonsingular integer matrix, using its determinant as the
/// working modulus.
pub fn hnf_square(m: &IntMatrix) -> Result<IntMatrix> {
    if !m.is_square() {
        return Err(Error::Shape("hnf_square on non-square input".into()));
    }
    let d = det(m)?.abs();
    if d.is_zero() {
        return Err(Error::Rank);
    }
    Ok(hnf_modular(&m.to_rows(), m.rows(), &d))
}

/// HNF of the lattice spanned by an arbitrary list of generators of full
/// rank `n`.
pub fn hnf_span(gens: &[Vec<BigInt>], n: usize) -> Result<IntMatrix> {
    // Pick n independent generators; their determinant is a multiple of the
    // lattice index.
    let mut echelon: Vec<(usize, Vec<BigInt>)> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, g) in gens.iter().enumerate() {
        if g.len() != n {
            return Err(Error::Shape("generator length".into()));
        }
        let mut v = g.clone();
        for (c, e) in &echelon {
            if v[*c].is_zero() {
                continue;
            }
            let (a, b) = (e[*c].clone(), v[*c].clone());
            v = v.iter().zip(e).map(|(x, y)| &a * x - &b * y).collect();
            let content = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if !content.is_zero() && !content.is_one() {
                v.iter_mut().for_each(|x| *x /= &content);
            }
        }
        if let Some(c) = v.iter().position(|x| !x.is_zero()) {
            echelon.push((c, v));
            chosen.push(idx);
            if chosen.len() == n {
                break;
            }
        }
    }
    if chosen.len() < n {
        return Err(Error::Rank);
    }
    let sub = Matrix::from_rows(chosen.iter().map(|&i| gens[i].clone()).collect())?;
    let d = det(&sub)?.abs();
    Ok(hnf_modular(gens, n, &d))
}
