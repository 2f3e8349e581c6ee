//! Fractional ideals as full-rank `Z`-modules in the power basis.
//!
//! An ideal is stored as `H / d` where `H` is an integer matrix in row HNF
//! and `d` is the least positive integer making the module integral, so two
//! ideals are equal exactly when their representations are.

mod recipe;

pub use recipe::{IdealRecipe, RecipeFactor};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, FieldKind};
use crate::linalg::{hnf_modular, hnf_square, invert, invert_integer, solve_left, IntMatrix, RatMatrix};
use crate::nt;

#[derive(Clone, PartialEq, Eq)]
pub struct FractionalIdeal {
    field: Field,
    hnf: IntMatrix,
    den: BigInt,
}

impl fmt::Debug for FractionalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal[{}]({:?} / {})", self.field, self.hnf, self.den)
    }
}

fn det_of_hnf(h: &IntMatrix) -> BigInt {
    (0..h.rows()).map(|i| h[(i, i)].clone()).product()
}

/// Deterministic coefficient vectors in `[-3, 3]ⁿ` (xorshift).
fn pseudo_random_combinations(n: usize, count: usize) -> Vec<Vec<BigInt>> {
    let mut seed = 0x9e37_79b9_7f4a_7c15u64;
    (0..count)
        .map(|_| {
            (0..n)
                .map(|_| {
                    seed ^= seed << 13;
                    seed ^= seed >> 7;
                    seed ^= seed << 17;
                    BigInt::from((seed % 7) as i64 - 3)
                })
                .collect()
        })
        .collect()
}

impl FractionalIdeal {
    /// Canonical form of `H / den` for an HNF matrix `H`.
    fn canonical(field: &Field, hnf: IntMatrix, den: BigInt) -> Self {
        let g = hnf.iter().fold(den.clone(), |g, x| g.gcd(x));
        if g.is_one() {
            return FractionalIdeal { field: field.clone(), hnf, den };
        }
        FractionalIdeal { field: field.clone(), hnf: hnf.map(|x| x / &g), den: den / g }
    }

    /// Ideal with the given rational basis rows (must have full rank).
    pub fn from_basis(field: &Field, basis: &RatMatrix) -> Result<Self> {
        let n = field.degree();
        if basis.rows() != n || basis.cols() != n {
            return Err(Error::Shape("ideal basis must be degree x degree".into()));
        }
        let (num, den) = basis.clear_denominators();
        let h = hnf_square(&num).map_err(|_| Error::ZeroIdeal)?;
        Ok(Self::canonical(field, h, den))
    }

    pub fn unit(field: &Field) -> Self {
        FractionalIdeal {
            field: field.clone(),
            hnf: IntMatrix::identity(field.degree()),
            den: BigInt::one(),
        }
    }

    pub fn principal(gamma: &FieldElement) -> Result<Self> {
        if gamma.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let field = gamma.field();
        let m = FieldElement::integral_mult_matrix(field, gamma.numerator());
        let h = hnf_square(&m)?;
        Ok(Self::canonical(field, h, gamma.denominator().clone()))
    }

    pub fn scalar(field: &Field, q: &BigRational) -> Result<Self> {
        Self::principal(&FieldElement::from_rational(field, q))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn hnf(&self) -> &IntMatrix {
        &self.hnf
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// Basis rows as rational coefficient vectors.
    pub fn basis_matrix(&self) -> RatMatrix {
        self.hnf.map(|x| BigRational::new(x.clone(), self.den.clone()))
    }

    pub fn basis(&self) -> Vec<FieldElement> {
        (0..self.hnf.rows())
            .map(|i| {
                FieldElement::from_parts(&self.field, self.hnf.row(i).to_vec(), self.den.clone())
                    .expect("basis row")
            })
            .collect()
    }

    /// Absolute norm `[O_K : I]` extended multiplicatively.
    pub fn norm(&self) -> BigRational {
        BigRational::new(det_of_hnf(&self.hnf), self.den.pow(self.field.degree() as u32))
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let n = self.field.degree();
        // N(A)·N(B) lies in A·B for integral A, B.
        let d = det_of_hnf(&self.hnf) * det_of_hnf(&other.hnf);
        let den = &self.den * &other.den;
        // B = (m, b) for m = N(B) and most b ∈ B; the candidate is accepted
        // once its index matches N(A)·N(B).
        let m = det_of_hnf(&other.hnf);
        let tries = if n <= 4 { 0 } else { 4 };
        for coeffs in pseudo_random_combinations(n, tries) {
            let b = other.combination(&coeffs);
            let mut gens = Vec::with_capacity(2 * n);
            for i in 0..n {
                let a = self.hnf.row(i);
                gens.push(a.iter().map(|x| x * &m).collect());
                gens.push(self.field.mul_integral(a, &b));
            }
            let h = hnf_modular(&gens, n, &d);
            if det_of_hnf(&h) == d {
                return Ok(Self::canonical(&self.field, h, den));
            }
        }
        let mut gens = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                gens.push(self.field.mul_integral(self.hnf.row(i), other.hnf.row(j)));
            }
        }
        let h = hnf_modular(&gens, n, &d);
        Ok(Self::canonical(&self.field, h, den))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let n = self.field.degree();
        let den = self.den.lcm(&other.den);
        let (sa, sb) = (&den / &self.den, &den / &other.den);
        let mut gens: Vec<Vec<BigInt>> = Vec::with_capacity(2 * n);
        gens.extend((0..n).map(|i| self.hnf.row(i).iter().map(|x| x * &sa).collect()));
        gens.extend((0..n).map(|i| other.hnf.row(i).iter().map(|x| x * &sb).collect()));
        let d = det_of_hnf(&self.hnf) * sa.pow(n as u32);
        let h = hnf_modular(&gens, n, &d);
        Ok(Self::canonical(&self.field, h, den))
    }

    pub fn scale(&self, q: &BigRational) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let num = q.numer().abs();
        Ok(Self::canonical(&self.field, self.hnf.map(|x| x * &num), &self.den * q.denom()))
    }

    /// `A⁻¹`. With `m = N(A)` and `A = (m, a)`, the ideal `m·A⁻¹` is
    /// `{x : x·a ∈ m·O_K}`, the dual of the span of `m·Zⁿ` and the columns of
    /// the multiplication matrix of `a`, scaled by `m`.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.field.degree();
        let m = det_of_hnf(&self.hnf);
        let mut cols: Option<Vec<Vec<BigInt>>> = None;
        for coeffs in pseudo_random_combinations(n, 4) {
            let a = self.combination(&coeffs);
            let mult = FieldElement::integral_mult_matrix(&self.field, &a);
            if hnf_modular(&mult.to_rows(), n, &m) == self.hnf {
                cols = Some(mult.transpose().to_rows());
                break;
            }
        }
        let cols = cols.unwrap_or_else(|| {
            (0..n)
                .flat_map(|i| {
                    FieldElement::integral_mult_matrix(&self.field, self.hnf.row(i))
                        .transpose()
                        .to_rows()
                })
                .collect()
        });
        let lam = hnf_modular(&cols, n, &m);
        // X = m·Λ⁻¹ is integral because m·Zⁿ ⊆ Λ; Λ is upper triangular.
        let mut x = IntMatrix::zeros(n, n);
        for j in 0..n {
            for i in (0..=j).rev() {
                let mut acc = if i == j { m.clone() } else { BigInt::zero() };
                for k in i + 1..=j {
                    acc -= &lam[(i, k)] * &x[(k, j)];
                }
                debug_assert!((&acc % &lam[(i, i)]).is_zero());
                x[(i, j)] = acc / &lam[(i, i)];
            }
        }
        let h = hnf_modular(&x.transpose().to_rows(), n, &m);
        Ok(Self::canonical(&self.field, h.map(|v| v * &self.den), m))
    }

    /// `Σ cᵢ·ωᵢ` over the HNF rows of the numerator.
    fn combination(&self, coeffs: &[BigInt]) -> Vec<BigInt> {
        let n = self.field.degree();
        (0..n).map(|j| (0..n).map(|i| &self.hnf[(i, j)] * &coeffs[i]).sum()).collect()
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inverse()?)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::unit(&self.field);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    pub fn conj(&self) -> Self {
        let rows: Vec<Vec<BigInt>> =
            (0..self.hnf.rows()).map(|i| self.field.conj_integral(self.hnf.row(i))).collect();
        let d = det_of_hnf(&self.hnf);
        let h = hnf_modular(&rows, self.field.degree(), &d);
        Self::canonical(&self.field, h, self.den.clone())
    }

    /// Whether `x` lies in the ideal.
    pub fn contains(&self, x: &FieldElement) -> Result<bool> {
        if x.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        let coords = solve_left(&self.basis_matrix(), &x.coeffs())?.ok_or(Error::Singular)?;
        Ok(coords.iter().all(BigRational::is_integer))
    }

    pub fn is_subset_of(&self, other: &Self) -> Result<bool> {
        self.check_field(other)?;
        let inv = invert(&other.basis_matrix())?;
        Ok((&self.basis_matrix() * &inv).to_integer().is_some())
    }

    /// Gram matrix `(Tr(α ωᵢ ω̄ⱼ))` of the basis.
    pub fn gram(&self, alpha: &FieldElement) -> Result<RatMatrix> {
        if alpha.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        let n = self.field.degree();
        let traces = self.field.power_traces();
        let tmat = IntMatrix::from_fn(n, n, |i, j| traces[i + j].clone());
        let conj_rows: Vec<Vec<BigInt>> = (0..n)
            .map(|k| {
                let mut e = vec![BigInt::zero(); n];
                e[k] = BigInt::one();
                self.field.conj_integral(&e)
            })
            .collect();
        let conj = IntMatrix::from_rows(conj_rows)?;
        let mult = FieldElement::integral_mult_matrix(&self.field, alpha.numerator());
        let left = &(&self.hnf * &mult) * &tmat;
        let right = (&self.hnf * &conj).transpose();
        let num = &left * &right;
        let den = &self.den * &self.den * alpha.denominator();
        Ok(num.map(|x| BigRational::new(x.clone(), den.clone())))
    }

    /// `{x : Tr(α x ȳ) ∈ Z for all y ∈ A}`.
    pub fn trace_dual(&self, alpha: &FieldElement) -> Result<Self> {
        if !alpha.is_totally_positive() {
            return Err(Error::Form("alpha is not totally positive".into()));
        }
        // G = N/g and B = H/d, so G⁻¹·B = (A·H)·g/(det·d) with N⁻¹ = A/det.
        let (num, g) = self.gram(alpha)?.clear_denominators();
        let (adj, det) = invert_integer(&num)?;
        let n = self.field.degree();
        let mut span = &adj * &self.hnf;
        let content = span.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        span = span.map(|x| x / &content);
        // |det(A·H)| = |det|^(n-1)·det(H), so the index needs no elimination.
        let index = det.abs().pow(n as u32 - 1) * det_of_hnf(&self.hnf) / content.pow(n as u32);
        let h = hnf_modular(&span.to_rows(), n, &index);
        let scale = BigRational::new(g * content, det.abs() * &self.den);
        Ok(Self::canonical(&self.field, h.map(|x| x * scale.numer()), scale.denom().clone()))
    }

    /// Codifferent `D_K⁻¹`, the trace dual of `O_K`.
    pub fn codifferent(field: &Field) -> Result<Self> {
        if let Some((h, d)) = field.codifferent_cache().get() {
            return Ok(Self::canonical(field, h.clone(), d.clone()));
        }
        let c = Self::unit(field).trace_dual(&FieldElement::one(field))?;
        let _ = field.codifferent_cache().set((c.hnf.clone(), c.den.clone()));
        Ok(c)
    }

    /// Radical of `p·O_K`: the product of the distinct primes above `p`.
    pub fn radical_above(field: &Field, p: u64) -> Result<Self> {
        if field.descriptor().ramification_index(p).is_none() {
            return Err(Error::NotRamified(p));
        }
        let n = field.degree();
        let frob = frobenius_matrix(field, p);
        let mut gens = kernel_mod_p(&frob, p);
        let pb = BigInt::from(p);
        for i in 0..n {
            let mut e = vec![BigInt::zero(); n];
            e[i] = pb.clone();
            gens.push(e);
        }
        let h = hnf_modular(&gens, n, &pb);
        Ok(Self::canonical(field, h, BigInt::one()))
    }

    /// `J_p^k`, using `J_p^e = p·O_K` to keep the exponent below `e`.
    pub fn radical_power(field: &Field, p: u64, k: i64) -> Result<Self> {
        let e = field.descriptor().ramification_index(p).ok_or(Error::NotRamified(p))? as i64;
        let (q, r) = (k.div_euclid(e), k.rem_euclid(e));
        let base = Self::radical_above(field, p)?.pow(r)?;
        let pq = BigRational::from_integer(BigInt::from(p)).pow(q as i32);
        base.scale(&pq)
    }

    /// Exponent of the radical `J_p` in this ideal, provided every prime above
    /// `p` occurs with the same exponent.
    pub fn valuation(&self, p: u64) -> Result<i64> {
        let e = self.field.descriptor().ramification_index(p).ok_or(Error::NotRamified(p))?;
        let radical = Self::radical_above(&self.field, p)?;
        let num = Self::canonical(&self.field, self.hnf.clone(), BigInt::one());
        // With equal exponents v at the primes above p, the p-part of the
        // norm is p^(v·n/e).
        let pb = BigInt::from(p);
        let mut norm = det_of_hnf(&num.hnf);
        let mut vn = 0i64;
        while (&norm % &pb).is_zero() {
            norm /= &pb;
            vn += 1;
        }
        let residue = self.field.degree() as i64 / e as i64;
        let unequal = || Error::Unsupported(format!("unequal exponents at the primes above {p}"));
        if vn % residue != 0 {
            return Err(unequal());
        }
        let v = vn / residue;
        let stripped = num.mul(&Self::radical_power(&self.field, p, -v)?)?;
        if !stripped.is_integral() || stripped.add(&radical)? != Self::unit(&self.field) {
            return Err(unequal());
        }
        let mut den = self.den.clone();
        let pb = BigInt::from(p);
        let mut vd = 0i64;
        while (&den % &pb).is_zero() {
            den /= &pb;
            vd += 1;
        }
        Ok(v - vd * e as i64)
    }
}

/// `v_P(D_K)` at the primes above `p`, from closed formulas.
pub fn different_valuation(field: &Field, p: u64) -> Result<i64> {
    field.descriptor().ramification_index(p).ok_or(Error::NotRamified(p))?;
    let pi = p as i64;
    let v = match field.kind() {
        FieldKind::RealQuadratic(d) | FieldKind::ImagQuadratic(d) if p != 2 => {
            debug_assert_eq!(d % p, 0);
            1
        }
        FieldKind::RealQuadratic(d) => {
            if d % 4 == 3 {
                2
            } else {
                3
            }
        }
        FieldKind::ImagQuadratic(d) => {
            if d % 4 == 1 {
                2
            } else {
                3
            }
        }
        FieldKind::Cyclotomic(n) => {
            let r = exponent_of(n, p);
            pi.pow(r - 1) * (pi * r as i64 - r as i64 - 1)
        }
        FieldKind::RealCyclotomic(n) => {
            let r = exponent_of(n, p);
            let full = pi.pow(r - 1) * (pi * r as i64 - r as i64 - 1);
            if nt::prime_power(n).is_none() {
                full
            } else if p == 2 {
                (r as i64 - 1) * 2i64.pow(r - 2) - 1
            } else {
                (full - 1) / 2
            }
        }
    };
    Ok(v)
}

fn exponent_of(n: u64, p: u64) -> u32 {
    nt::factorize(n).into_iter().find(|&(q, _)| q == p).map_or(0, |(_, r)| r)
}

// Rows: images of θ^i under x ↦ x^{p^j} modulo p, with p^j ≥ degree.
fn frobenius_matrix(field: &Field, p: u64) -> Vec<Vec<u64>> {
    let n = field.degree();
    let pb = BigInt::from(p);
    let modp = |v: Vec<BigInt>| -> Vec<BigInt> { v.into_iter().map(|x| x.mod_floor(&pb)).collect() };
    let mul = |a: &[BigInt], b: &[BigInt]| modp(field.mul_integral(a, b));
    let mut q = BigInt::one();
    while q < BigInt::from(n) {
        q *= p;
    }
    let mut theta = vec![BigInt::zero(); n];
    if n > 1 {
        theta[1] = BigInt::one();
    }
    // θ^q by square-and-multiply.
    let mut base = theta;
    let mut image = {
        let mut one = vec![BigInt::zero(); n];
        one[0] = BigInt::one();
        one
    };
    let mut e = q;
    while e > BigInt::zero() {
        if e.is_odd() {
            image = mul(&image, &base);
        }
        e >>= 1;
        if e > BigInt::zero() {
            base = mul(&base, &base);
        }
    }
    let mut rows = Vec::with_capacity(n);
    let mut cur = {
        let mut one = vec![BigInt::zero(); n];
        one[0] = BigInt::one();
        one
    };
    for _ in 0..n {
        rows.push(cur.iter().map(|x| x.to_u64_digits().1.first().copied().unwrap_or(0)).collect());
        cur = mul(&cur, &image);
    }
    rows
}

// Left kernel `{x : x·M ≡ 0 (mod p)}` as integer vectors.
fn kernel_mod_p(m: &[Vec<u64>], p: u64) -> Vec<Vec<BigInt>> {
    let n = m.len();
    let cols = m.first().map_or(0, Vec::len);
    // Row-reduce [M | I]; rows whose M-part vanishes give the kernel.
    let mut aug: Vec<Vec<u64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    let inv = |a: u64| -> u64 {
        let mut r = 1u64;
        let (mut b, mut e) = (a % p, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..n).find(|&i| aug[i][c] % p != 0) else {
            continue;
        };
        aug.swap(r, piv);
        let f = inv(aug[r][c]);
        for x in aug[r].iter_mut() {
            *x = *x * f % p;
        }
        for i in 0..n {
            if i != r && aug[i][c] != 0 {
                let f = aug[i][c];
                let pivot_row = aug[r].clone();
                for (x, y) in aug[i].iter_mut().zip(&pivot_row) {
                    *x = (*x + p * p - f * y % p) % p;
                }
            }
        }
        r += 1;
    }
    aug[r..].iter().map(|row| row[cols..].iter().map(|&x| BigInt::from(x)).collect()).collect()
}
