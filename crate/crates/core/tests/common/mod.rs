//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeMap;

use arakelov_core::linalg::{invert, RatMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Vector counts per norm `≤ bound` by scanning the box
/// `|xᵢ| ≤ √(bound·(G⁻¹)ᵢᵢ)`, which contains every such vector.
pub fn brute_force_counts(gram: &RatMatrix, bound: &BigRational) -> BTreeMap<BigRational, u64> {
    let n = gram.rows();
    let radius = box_radii(gram, bound);
    let mut x: Vec<i64> = radius.iter().map(|r| -r).collect();
    let mut out = BTreeMap::new();
    loop {
        let mut norm = BigRational::zero();
        for i in 0..n {
            for j in 0..n {
                if x[i] != 0 && x[j] != 0 {
                    norm += &gram[(i, j)] * BigRational::from_integer(BigInt::from(x[i] * x[j]));
                }
            }
        }
        if &norm <= bound {
            *out.entry(norm).or_insert(0) += 1;
        }
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            if x[k] < radius[k] {
                x[k] += 1;
                break;
            }
            x[k] = -radius[k];
            k += 1;
        }
    }
}

/// Half-widths `⌊√(bound·(G⁻¹)ᵢᵢ)⌋` of the search box.
pub fn box_radii(gram: &RatMatrix, bound: &BigRational) -> Vec<i64> {
    let inv = invert(gram).expect("nonsingular");
    (0..gram.rows())
        .map(|i| (bound * &inv[(i, i)]).floor().to_integer().sqrt().to_i64().unwrap())
        .collect()
}

/// Number of points in the search box.
pub fn box_size(gram: &RatMatrix, bound: &BigRational) -> f64 {
    box_radii(gram, bound).iter().map(|r| (2 * r + 1) as f64).product()
}

/// Smallest diagonal entry, an upper bound for the minimum.
pub fn min_diagonal(gram: &RatMatrix) -> BigRational {
    (0..gram.rows()).map(|i| gram[(i, i)].clone()).min().unwrap()
}

/// Minimum and kissing number by brute force, bounded by the smallest
/// diagonal entry.
pub fn brute_force_minimum(gram: &RatMatrix) -> (BigRational, u64) {
    let bound = min_diagonal(gram);
    let counts = brute_force_counts(gram, &bound);
    counts.into_iter().find(|(k, _)| !k.is_zero()).unwrap()
}
