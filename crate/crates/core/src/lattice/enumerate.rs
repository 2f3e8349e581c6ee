//! Short-vector enumeration: LLL preprocessing, Fincke–Pohst search with a
//! floating-point pruning radius, and exact recheck of every candidate.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{cholesky, lll_reduce, RatMatrix};

/// Relative slack on the floating radius; candidates are rechecked exactly.
const SLACK: f64 = 1e-7;

struct Search {
    n: usize,
    pivots: Vec<f64>,
    factor: Vec<Vec<f64>>,
    gram: Vec<Vec<i128>>,
    bound: f64,
    exact_bound: i128,
}

impl Search {
    fn new(g: &RatMatrix, bound: &BigRational) -> Result<(Self, BigInt)> {
        let n = g.rows();
        let den = g.denominator_lcm();
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let v = &g[(i, j)] * BigRational::from_integer(den.clone());
                        v.to_integer().to_i64().map(i128::from).ok_or_else(|| {
                            Error::Unsupported("Gram entries too large for enumeration".into())
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let scaled = (bound * BigRational::from_integer(den.clone())).floor().to_integer();
        let exact_bound = scaled
            .to_i64()
            .map(i128::from)
            .ok_or_else(|| Error::Unsupported("enumeration bound too large".into()))?;
        let c = cholesky(g)?;
        let f = |q: &BigRational| q.to_f64().unwrap_or(f64::NAN);
        let pivots = c.pivots.iter().map(f).collect();
        let factor = (0..n).map(|i| (0..n).map(|j| f(&c.factor[(i, j)])).collect()).collect();
        let bound_f = f(bound);
        Ok((
            Search {
                n,
                pivots,
                factor,
                gram,
                bound: bound_f + SLACK * bound_f.max(1.0),
                exact_bound,
            },
            den,
        ))
    }

    fn exact_norm(&self, x: &[i64]) -> i128 {
        let mut s = 0i128;
        for i in 0..self.n {
            if x[i] == 0 {
                continue;
            }
            let mut row = 0i128;
            for j in 0..self.n {
                row += self.gram[i][j] * x[j] as i128;
            }
            s += row * x[i] as i128;
        }
        s
    }

    /// Integer range for coordinate `i` given the fixed coordinates above it.
    fn range(&self, i: usize, x: &[i64], partial: f64) -> Option<(f64, i64, i64)> {
        let rem = self.bound - partial;
        if rem < 0.0 {
            return None;
        }
        let center: f64 = -(i + 1..self.n).map(|j| self.factor[i][j] * x[j] as f64).sum::<f64>();
        let r = (rem / self.pivots[i]).sqrt();
        Some((center, (center - r).ceil() as i64, (center + r).floor() as i64))
    }

    fn descend(&self, i: usize, x: &mut Vec<i64>, partial: f64, out: &mut BTreeMap<i128, u64>) {
        let Some((center, lo, hi)) = self.range(i, x, partial) else {
            return;
        };
        for v in lo..=hi {
            let t = v as f64 - center;
            let next = partial + self.pivots[i] * t * t;
            if next > self.bound {
                continue;
            }
            x[i] = v;
            if i == 0 {
                let norm = self.exact_norm(x);
                if norm <= self.exact_bound {
                    *out.entry(norm).or_insert(0) += 1;
                }
            } else {
                self.descend(i - 1, x, next, out);
            }
        }
        x[i] = 0;
    }

    fn run(&self) -> BTreeMap<i128, u64> {
        let top = self.n - 1;
        let x0 = vec![0i64; self.n];
        let Some((center, lo, hi)) = self.range(top, &x0, 0.0) else {
            return BTreeMap::new();
        };
        (lo..=hi)
            .into_par_iter()
            .map(|v| {
                let mut acc = BTreeMap::new();
                let t = v as f64 - center;
                let partial = self.pivots[top] * t * t;
                if partial > self.bound {
                    return acc;
                }
                let mut x = x0.clone();
                x[top] = v;
                if top == 0 {
                    let norm = self.exact_norm(&x);
                    if norm <= self.exact_bound {
                        acc.insert(norm, 1);
                    }
                } else {
                    self.descend(top - 1, &mut x, partial, &mut acc);
                }
                acc
            })
            .reduce(BTreeMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_insert(0) += v;
                }
                a
            })
    }
}

/// Number of lattice vectors of each norm `≤ bound`, including the zero vector.
pub fn norm_counts(gram: &RatMatrix, bound: &BigRational) -> Result<BTreeMap<BigRational, u64>> {
    if bound.is_negative() {
        return Err(Error::Spec("norm bound must be nonnegative".into()));
    }
    if gram.rows() == 0 {
        return Ok(BTreeMap::from([(BigRational::zero(), 1)]));
    }
    let (reduced, _) = lll_reduce(gram)?;
    let (search, den) = Search::new(&reduced, bound)?;
    Ok(search
        .run()
        .into_iter()
        .map(|(k, v)| (BigRational::new(BigInt::from(k), den.clone()), v))
        .collect())
}

/// Exact minimum and the number of vectors attaining it.
pub fn shortest(gram: &RatMatrix) -> Result<(BigRational, u64)> {
    if gram.rows() == 0 {
        return Err(Error::Rank);
    }
    let (reduced, _) = lll_reduce(gram)?;
    let bound = (0..reduced.rows())
        .map(|i| reduced[(i, i)].clone())
        .min()
        .expect("nonempty");
    let (search, den) = Search::new(&reduced, &bound)?;
    let counts = search.run();
    let (norm, count) = counts
        .into_iter()
        .find(|(k, _)| *k > 0)
        .ok_or_else(|| Error::InternalInconsistency("no vector at the reduced diagonal".into()))?;
    let mu = BigRational::new(BigInt::from(norm), den);
    Ok((mu, count))
}
