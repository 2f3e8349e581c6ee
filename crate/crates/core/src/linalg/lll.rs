//! LLL reduction of a positive definite Gram matrix, in exact rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, RatMatrix};
use crate::error::{Error, Result};

/// Lovász parameter, numerator / denominator.
pub const LLL_DELTA: (i64, i64) = (99, 100);

fn delta() -> BigRational {
    BigRational::new(LLL_DELTA.0.into(), LLL_DELTA.1.into())
}

fn round(x: &BigRational) -> BigInt {
    // Nearest integer, ties toward +inf.
    let two = BigInt::from(2);
    (x.numer() * &two + x.denom()).div_floor(&(x.denom() * &two))
}

struct State {
    n: usize,
    g: RatMatrix,
    // Row k holds the coefficients of the current k-th vector in the input basis.
    w: Vec<Vec<BigInt>>,
    mu: Vec<Vec<BigRational>>,
    b: Vec<BigRational>,
}

impl State {
    fn gso_row(&mut self, k: usize) -> Result<()> {
        for j in 0..k {
            let mut s = self.g[(k, j)].clone();
            for i in 0..j {
                s -= &self.mu[j][i] * &self.mu[k][i] * &self.b[i];
            }
            self.mu[k][j] = s / &self.b[j];
        }
        let mut bk = self.g[(k, k)].clone();
        for j in 0..k {
            bk -= &self.mu[k][j] * &self.mu[k][j] * &self.b[j];
        }
        if !bk.is_positive() {
            return Err(Error::Form("Gram matrix is not positive definite".into()));
        }
        self.b[k] = bk;
        Ok(())
    }

    // b_k <- b_k - q b_l
    fn sub_multiple(&mut self, k: usize, l: usize, q: &BigInt) {
        let qr = BigRational::from_integer(q.clone());
        for j in 0..self.n {
            let t = &qr * &self.g[(l, j)];
            self.g[(k, j)] -= t;
        }
        for i in 0..self.n {
            let t = &qr * &self.g[(i, l)];
            self.g[(i, k)] -= t;
        }
        let wl = self.w[l].clone();
        for (x, y) in self.w[k].iter_mut().zip(&wl) {
            *x -= q * y;
        }
    }

    fn reduce(&mut self, k: usize, l: usize) {
        let half = BigRational::new(1.into(), 2.into());
        if self.mu[k][l].abs() <= half {
            return;
        }
        let q = round(&self.mu[k][l]);
        self.sub_multiple(k, l, &q);
        let qr = BigRational::from_integer(q);
        self.mu[k][l] -= &qr;
        for i in 0..l {
            let t = &qr * &self.mu[l][i];
            self.mu[k][i] -= t;
        }
    }

    fn swap(&mut self, k: usize, kmax: usize) {
        let n = self.n;
        // Swap vectors k-1 and k in the Gram matrix and transform.
        self.g.swap_rows(k - 1, k);
        for i in 0..n {
            let t = self.g[(i, k - 1)].clone();
            self.g[(i, k - 1)] = self.g[(i, k)].clone();
            self.g[(i, k)] = t;
        }
        self.w.swap(k - 1, k);
        for j in 0..k - 1 {
            let t = self.mu[k - 1][j].clone();
            self.mu[k - 1][j] = self.mu[k][j].clone();
            self.mu[k][j] = t;
        }
        let m = self.mu[k][k - 1].clone();
        let big_b = &self.b[k] + &m * &m * &self.b[k - 1];
        self.mu[k][k - 1] = &m * &self.b[k - 1] / &big_b;
        self.b[k] = &self.b[k - 1] * &self.b[k] / &big_b;
        self.b[k - 1] = big_b;
        for i in k + 1..=kmax {
            let t = self.mu[i][k].clone();
            self.mu[i][k] = &self.mu[i][k - 1] - &m * &t;
            self.mu[i][k - 1] = t + &self.mu[k][k - 1] * &self.mu[i][k];
        }
    }
}

/// LLL-reduces the basis whose Gram matrix is `g`.
///
/// Returns `(G', T)` with `G' = Tᵀ·G·T`; column `j` of `T` expresses the
/// `j`-th reduced vector in the input basis.
pub fn lll_reduce(g: &RatMatrix) -> Result<(RatMatrix, IntMatrix)> {
    if !g.is_symmetric() {
        return Err(Error::Form("Gram matrix is not symmetric".into()));
    }
    let n = g.rows();
    if n == 0 {
        return Ok((g.clone(), IntMatrix::identity(0)));
    }
    let mut st = State {
        n,
        g: g.clone(),
        w: IntMatrix::identity(n).to_rows(),
        mu: vec![vec![BigRational::zero(); n]; n],
        b: vec![BigRational::zero(); n],
    };
    st.gso_row(0)?;
    let delta = delta();
    let mut k = 1;
    let mut kmax = 0;
    while k < n {
        if k > kmax {
            kmax = k;
            st.gso_row(k)?;
        }
        st.reduce(k, k - 1);
        let lhs = st.b[k].clone();
        let rhs = (&delta - &st.mu[k][k - 1] * &st.mu[k][k - 1]) * &st.b[k - 1];
        if lhs < rhs {
            st.swap(k, kmax);
            k = std::cmp::max(1, k - 1);
        } else {
            for l in (0..k - 1).rev() {
                st.reduce(k, l);
            }
            k += 1;
        }
    }
    let t = IntMatrix::from_rows(st.w)?.transpose();
    let reduced = super::congruence(g, &t);
    debug_assert_eq!(reduced, st.g);
    Ok((reduced, t))
}

/// Checks size reduction and the Lovász condition exactly from a Gram matrix.
pub fn is_lll_reduced(g: &RatMatrix) -> bool {
    let n = g.rows();
    if n == 0 {
        return true;
    }
    let Ok(c) = super::cholesky(g) else {
        return false;
    };
    // mu[k][j] = Q[j][k]; B_k = pivots[k].
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let delta = delta();
    for k in 1..n {
        for j in 0..k {
            if c.factor[(j, k)].abs() > half {
                return false;
            }
        }
        let m = &c.factor[(k - 1, k)];
        if c.pivots[k] < (&delta - m * m) * &c.pivots[k - 1] {
            return false;
        }
    }
    true
}
