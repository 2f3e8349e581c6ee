use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::RatMatrix;
use crate::error::{Error, Result};

/// Exact rational decomposition `G = Qᵀ · diag(pivots) · Q` with `Q` unit
/// upper triangular.
///
/// The quadratic form then reads
/// `xᵀGx = Σᵢ pivotᵢ · (xᵢ + Σ_{j>i} Q[i][j]·xⱼ)²`, which is the shape the
/// enumeration in `lattice::enumerate` consumes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cholesky {
    pub factor: RatMatrix,
    pub pivots: Vec<BigRational>,
}

impl Cholesky {
    /// Rebuilds `Qᵀ · diag · Q`.
    pub fn reconstruct(&self) -> RatMatrix {
        let n = self.pivots.len();
        let mut dq = self.factor.clone();
        for i in 0..n {
            for j in 0..n {
                dq[(i, j)] = &dq[(i, j)] * &self.pivots[i];
            }
        }
        &self.factor.transpose() * &dq
    }
}

/// Sylvester's criterion: every leading principal minor is positive. The
/// minors are the pivots of fraction-free elimination without row swaps.
pub fn is_positive_definite(g: &RatMatrix) -> bool {
    if !g.is_symmetric() {
        return false;
    }
    let (mut a, _) = g.clear_denominators();
    let n = a.rows();
    let mut prev = BigInt::one();
    for k in 0..n {
        if !a[(k, k)].is_positive() {
            return false;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                a[(i, j)] = v;
            }
        }
        prev = a[(k, k)].clone();
    }
    true
}

pub fn cholesky(g: &RatMatrix) -> Result<Cholesky> {
    if !g.is_symmetric() {
        return Err(Error::Form("matrix is not symmetric".into()));
    }
    let n = g.rows();
    // l[j][i] for j > i; stored directly as q[i][j].
    let mut q = RatMatrix::identity(n);
    let mut pivots: Vec<BigRational> = Vec::with_capacity(n);
    for i in 0..n {
        let mut d = g[(i, i)].clone();
        for k in 0..i {
            d -= &q[(k, i)] * &q[(k, i)] * &pivots[k];
        }
        if !d.is_positive() {
            return Err(Error::Form(format!("pivot {i} is {d}")));
        }
        for j in i + 1..n {
            let mut s = g[(j, i)].clone();
            for k in 0..i {
                s -= &q[(k, j)] * &q[(k, i)] * &pivots[k];
            }
            q[(i, j)] = s / &d;
        }
        pivots.push(d);
    }
    debug_assert!((0..n).all(|i| q[(i, i)].is_one()));
    debug_assert!((0..n).all(|i| (0..i).all(|j| q[(i, j)].is_zero())));
    Ok(Cholesky { factor: q, pivots })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn identity() {
        let c = cholesky(&RatMatrix::identity(4)).unwrap();
        assert_eq!(c.factor, RatMatrix::identity(4));
        assert!(c.pivots.iter().all(|p| p.is_one()));
    }

    #[test]
    fn hexagonal_pivots() {
        let g = RatMatrix::from_i64(&[vec![2, 1], vec![1, 2]]);
        let c = cholesky(&g).unwrap();
        assert_eq!(c.pivots, vec![r(2, 1), r(3, 2)]);
        assert_eq!(c.factor[(0, 1)], r(1, 2));
        assert_eq!(c.reconstruct(), g);
    }

    #[test]
    fn reconstructs_larger_form() {
        let g = RatMatrix::from_i64(&[
            vec![6, 2, -1, 0],
            vec![2, 5, 1, 2],
            vec![-1, 1, 4, 1],
            vec![0, 2, 1, 3],
        ]);
        let c = cholesky(&g).unwrap();
        assert!(c.pivots.iter().all(|p| p.is_positive()));
        assert_eq!(c.reconstruct(), g);
    }

    #[test]
    fn indefinite_rejected() {
        let g = RatMatrix::from_i64(&[vec![1, 2], vec![2, 1]]);
        assert!(matches!(cholesky(&g), Err(Error::Form(_))));
        let asym = RatMatrix::from_i64(&[vec![1, 2], vec![0, 1]]);
        assert!(matches!(cholesky(&asym), Err(Error::Form(_))));
    }
}
