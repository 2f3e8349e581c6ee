//! Numeric (fixed-point) embeddings.
//!
//! Totally real fields use one column per real place. CM fields use two
//! columns per pair of conjugate places `(σ, σ̄)`: `√2·Re σ(x)` followed by
//! `√2·Im σ̄(x)`.

use num_rational::BigRational;

use super::{Field, FieldElement, FieldKind};
use crate::error::{Error, Result};
use crate::nt;
use crate::numeric::{cos_sin_turn, narrow, sqrt_int, Complex, Fixed};

const EXTRA: u32 = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmbeddingLayout {
    TotallyReal,
    Cm,
}

#[derive(Clone, Debug)]
pub struct EmbeddingMatrix {
    pub layout: EmbeddingLayout,
    pub precision: u32,
    pub rows: Vec<Vec<Fixed>>,
}

impl EmbeddingMatrix {
    /// `E·Eᵀ`, which approximates the Gram matrix of the embedded rows.
    pub fn gram(&self) -> Vec<Vec<Fixed>> {
        let n = self.rows.len();
        let mut out = vec![vec![Fixed::zero(self.precision); n]; n];
        for i in 0..n {
            for j in 0..=i {
                let s = self.rows[i]
                    .iter()
                    .zip(&self.rows[j])
                    .fold(Fixed::zero(self.precision), |acc, (a, b)| acc.add(&a.mul(b)));
                out[i][j] = s.clone();
                out[j][i] = s;
            }
        }
        out
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.rows.iter().map(|r| r.iter().map(Fixed::to_f64).collect()).collect()
    }
}

/// Images of `θ` at one representative of each place.
fn theta_places(field: &Field, prec: u32) -> Vec<Complex> {
    match field.kind() {
        FieldKind::RealQuadratic(d) => {
            let r = sqrt_int(d, prec);
            let roots = [r.clone(), Fixed::zero(prec).sub(&r)];
            let half = BigRational::new(1.into(), 2.into());
            roots
                .into_iter()
                .map(|s| {
                    if d % 4 == 1 {
                        Complex::real(Fixed::from_int(&1.into(), prec).add(&s).mul_rational(&half))
                    } else {
                        Complex::real(s)
                    }
                })
                .collect()
        }
        FieldKind::ImagQuadratic(d) => {
            let s = sqrt_int(d, prec);
            let z = if d % 4 == 3 {
                let half = BigRational::new(1.into(), 2.into());
                Complex { re: Fixed::from_rational(&half, prec), im: s.mul_rational(&half) }
            } else {
                Complex { re: Fixed::zero(prec), im: s }
            };
            vec![z]
        }
        FieldKind::Cyclotomic(n) => (1..n)
            .filter(|&k| 2 * k < n && nt::gcd(k, n) == 1)
            .map(|k| {
                let (c, s) = cos_sin_turn(k as i64, n, prec);
                Complex { re: c, im: s }
            })
            .collect(),
        FieldKind::RealCyclotomic(n) => (1..n)
            .filter(|&k| 2 * k < n && nt::gcd(k, n) == 1)
            .map(|k| {
                let (c, _) = cos_sin_turn(k as i64, n, prec);
                Complex::real(c.mul_int(&2.into()))
            })
            .collect(),
    }
}

/// Values of each element at each place representative.
fn evaluate(field: &Field, elements: &[FieldElement], prec: u32) -> Vec<Vec<Complex>> {
    let places = theta_places(field, prec);
    let n = field.degree();
    let powers: Vec<Vec<Complex>> = places
        .iter()
        .map(|z| {
            let mut out = Vec::with_capacity(n);
            let mut cur = Complex::real(Fixed::from_int(&1.into(), prec));
            for _ in 0..n {
                out.push(cur.clone());
                cur = cur.mul(z);
            }
            out
        })
        .collect();
    elements
        .iter()
        .map(|x| {
            let coeffs = x.coeffs();
            powers
                .iter()
                .map(|pw| {
                    let mut acc = Complex::real(Fixed::zero(prec));
                    for (c, p) in coeffs.iter().zip(pw) {
                        acc = acc.add(&Complex { re: p.re.mul_rational(c), im: p.im.mul_rational(c) });
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn layout_of(field: &Field) -> EmbeddingLayout {
    if field.is_totally_real() {
        EmbeddingLayout::TotallyReal
    } else {
        EmbeddingLayout::Cm
    }
}

/// Rows `σ(ω)` for the given elements, each place column scaled by `scale`.
fn embed_rows(
    field: &Field,
    elements: &[FieldElement],
    scale: &[Fixed],
    prec: u32,
) -> Vec<Vec<Fixed>> {
    let values = evaluate(field, elements, prec);
    let layout = layout_of(field);
    values
        .into_iter()
        .map(|row| {
            let mut out = Vec::with_capacity(field.degree());
            for (v, s) in row.iter().zip(scale) {
                match layout {
                    EmbeddingLayout::TotallyReal => out.push(v.re.mul(s)),
                    EmbeddingLayout::Cm => {
                        out.push(v.re.mul(s));
                        out.push(v.conj().im.mul(s));
                    }
                }
            }
            out
        })
        .collect()
}

fn finish(field: &Field, rows: Vec<Vec<Fixed>>, prec: u32) -> EmbeddingMatrix {
    EmbeddingMatrix {
        layout: layout_of(field),
        precision: prec,
        rows: rows.iter().map(|r| r.iter().map(|x| narrow(x, EXTRA)).collect()).collect(),
    }
}

/// Embedding of the power basis `1, θ, …, θ^{n-1}`.
pub fn embedding_matrix(field: &Field, prec: u32) -> EmbeddingMatrix {
    let work = prec + EXTRA;
    let basis: Vec<FieldElement> = (0..field.degree())
        .map(|k| FieldElement::theta(field).pow(k as i64).expect("nonnegative power"))
        .collect();
    let unit = match layout_of(field) {
        EmbeddingLayout::TotallyReal => Fixed::from_int(&1.into(), work),
        EmbeddingLayout::Cm => sqrt_int(2, work),
    };
    let scale = vec![unit; field.degree()];
    finish(field, embed_rows(field, &basis, &scale, work), prec)
}

/// Generator matrix of `(span(basis), b_α)`: rows are embedded basis
/// elements, place columns scaled by `√σ(α)` (and `√2` for CM fields), so
/// `E·Eᵀ ≈ (Tr(α ωᵢ ω̄ⱼ))`.
pub fn twisted_embedding(
    basis: &[FieldElement],
    alpha: &FieldElement,
    prec: u32,
) -> Result<EmbeddingMatrix> {
    let field = alpha.field();
    if !alpha.is_totally_positive() {
        return Err(Error::Form("alpha is not totally positive".into()));
    }
    if basis.iter().any(|b| b.field() != field) {
        return Err(Error::FieldMismatch);
    }
    let work = prec + EXTRA;
    let alpha_vals = evaluate(field, std::slice::from_ref(alpha), work + EXTRA);
    let two = matches!(layout_of(field), EmbeddingLayout::Cm);
    let scale: Vec<Fixed> = alpha_vals[0]
        .iter()
        .map(|v| {
            let s = if two { v.re.mul_int(&2.into()) } else { v.re.clone() };
            narrow(&s.sqrt(), EXTRA)
        })
        .collect();
    Ok(finish(field, embed_rows(field, basis, &scale, work), prec))
}
