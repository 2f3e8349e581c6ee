//! Explicit square roots of rational integers, and the radical generators
//! `(1-ζ_q)(1-ζ_q⁻¹)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Field, FieldElement, FieldKind};
use crate::error::{Error, Result};
use crate::nt;

impl Field {
    /// `ζ_n^k` in a cyclotomic field.
    pub fn zeta_power(&self, k: i64) -> Result<FieldElement> {
        let FieldKind::Cyclotomic(n) = self.kind() else {
            return Err(Error::Unsupported(format!("{self} is not cyclotomic")));
        };
        let e = k.rem_euclid(n as i64) as usize;
        let mut poly = vec![BigInt::zero(); e + 1];
        poly[e] = BigInt::one();
        Ok(FieldElement::from_poly(self, poly))
    }

    /// `ζ_n^k + ζ_n^{-k}`, in either cyclotomic kind.
    pub fn zeta_sum(&self, k: i64) -> Result<FieldElement> {
        match self.kind() {
            FieldKind::Cyclotomic(_) => Ok(&self.zeta_power(k)? + &self.zeta_power(-k)?),
            FieldKind::RealCyclotomic(n) => {
                let k = k.rem_euclid(n as i64) as usize;
                // V_0 = 2, V_1 = θ, V_j = θ·V_{j-1} - V_{j-2}
                let theta = FieldElement::theta(self);
                let mut prev = FieldElement::from_int(self, 2);
                let mut cur = theta.clone();
                if k == 0 {
                    return Ok(prev);
                }
                for _ in 1..k {
                    let next = &(&theta * &cur) - &prev;
                    prev = cur;
                    cur = next;
                }
                Ok(cur)
            }
            _ => Err(Error::Unsupported(format!("{self} is not cyclotomic"))),
        }
    }

    /// `(1-ζ_q)(1-ζ_q⁻¹) = 2 - ζ_q - ζ_q⁻¹` for `q = p^{r_p}` exactly dividing
    /// the conductor.
    pub fn gamma(&self, p: u64) -> Result<FieldElement> {
        let n = self
            .conductor()
            .ok_or_else(|| Error::Unsupported(format!("{self} is not cyclotomic")))?;
        let (_, r) = nt::factorize(n)
            .into_iter()
            .find(|&(q, _)| q == p)
            .ok_or(Error::NotRamified(p))?;
        let step = (n / p.pow(r)) as i64;
        Ok(&FieldElement::from_int(self, 2) - &self.zeta_sum(step)?)
    }
}

/// Quadratic Gauss sum `Σ_j (j/q) ζ_q^j` in `Q(ζ_n)`; squares to `(−1/q)·q`.
fn gauss_sum(amb: &Field, n: u64, q: u64) -> Result<FieldElement> {
    let step = (n / q) as i64;
    let mut poly = vec![BigInt::zero(); n as usize];
    for j in 1..q {
        poly[(step * j as i64) as usize] += BigInt::from(nt::legendre(j as i64, q));
    }
    Ok(FieldElement::from_poly(amb, poly))
}

fn in_cyclotomic(amb: &Field, n: u64, m: u64) -> Result<Option<FieldElement>> {
    // Q(√m) ⊆ Q(ζ_n) iff its discriminant divides n.
    let disc = if m % 4 == 1 { m } else { 4 * m };
    if n % disc != 0 {
        return Ok(None);
    }
    let mut beta = FieldElement::one(amb);
    let mut unpaired: Option<FieldElement> = None;
    for (q, _) in nt::factorize(m) {
        if q == 2 {
            beta = &beta * &amb.zeta_sum((n / 8) as i64)?;
            continue;
        }
        let g = gauss_sum(amb, n, q)?;
        if q % 4 == 1 {
            beta = &beta * &g;
        } else if n % 4 == 0 {
            // g² = -q, so (-i·g)² = q with i = ζ_n^{n/4}.
            let i = amb.zeta_power((n / 4) as i64)?;
            beta = &beta * &-(&i * &g);
        } else {
            // (g_a·g_b)² = ab for a, b ≡ 3 (mod 4).
            match unpaired.take() {
                None => unpaired = Some(g),
                Some(h) => beta = &beta * &-(&g * &h),
            }
        }
    }
    if unpaired.is_some() {
        return Err(Error::InternalInconsistency(format!(
            "unpaired Gauss sum while building sqrt({m}) in Q(zeta_{n})"
        )));
    }
    Ok(Some(beta))
}

/// `β` with `β² = m` when the squarefree positive integer `m` is a square in
/// `field`, otherwise `None`.
pub fn sqrt_integer(field: &Field, m: u64) -> Result<Option<FieldElement>> {
    if m == 0 || !nt::is_squarefree(m) {
        return Err(Error::Spec(format!("{m} is not a positive squarefree integer")));
    }
    if m == 1 {
        return Ok(Some(FieldElement::one(field)));
    }
    let beta = match field.kind() {
        FieldKind::RealQuadratic(d) if d == m => Some(if d % 4 == 1 {
            // θ = (1+√d)/2
            &FieldElement::theta(field).scale(&BigRational::from_integer(2.into())) - &FieldElement::one(field)
        } else {
            FieldElement::theta(field)
        }),
        FieldKind::RealQuadratic(_) | FieldKind::ImagQuadratic(_) => None,
        FieldKind::Cyclotomic(n) => in_cyclotomic(field, n, m)?,
        FieldKind::RealCyclotomic(n) => match in_cyclotomic(field.ambient()?, n, m)? {
            Some(b) => Some(b.descend(field)?),
            None => None,
        },
    };
    if let Some(b) = &beta {
        if b * b != FieldElement::from_int(field, m as i64) {
            return Err(Error::InternalInconsistency(format!("bad square root of {m} in {field}")));
        }
    }
    Ok(beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn sq(spec: &str, m: u64) -> Option<FieldElement> {
        sqrt_integer(&make_field(spec).unwrap(), m).unwrap()
    }

    #[test]
    fn explicit_roots() {
        for (spec, m) in [
            ("realcyclo:13", 13),
            ("realcyclo:36", 3),
            ("realcyclo:28", 7),
            ("realcyclo:24", 6),
            ("realcyclo:24", 2),
            ("realcyclo:21", 21),
            ("realcyclo:92", 23),
            ("cyclo:12", 3),
            ("quad:+5", 5),
            ("quad:+6", 6),
        ] {
            let f = make_field(spec).unwrap();
            let b = sq(spec, m).unwrap_or_else(|| panic!("{spec} {m}"));
            assert_eq!(&b * &b, FieldElement::from_int(&f, m as i64));
        }
    }

    #[test]
    fn non_squares() {
        assert!(sq("realcyclo:15", 15).is_none());
        assert!(sq("realcyclo:15", 3).is_none());
        assert!(sq("realcyclo:12", 2).is_none());
        assert!(sq("realcyclo:7", 7).is_none());
        assert!(sq("quad:-3", 3).is_none());
        assert!(sq("quad:+5", 2).is_none());
    }

    #[test]
    fn one_and_errors() {
        assert_eq!(sq("quad:-7", 1), Some(FieldElement::one(&make_field("quad:-7").unwrap())));
        assert!(matches!(
            sqrt_integer(&make_field("realcyclo:13").unwrap(), 4),
            Err(Error::Spec(_))
        ));
    }

    #[test]
    fn gauss_sum_is_positive_root_for_13() {
        // Under ζ ↦ e^{2πi/13} the Gauss sum is +√13.
        let mut s = 0.0;
        for j in 1..13u64 {
            let a = 2.0 * std::f64::consts::PI * j as f64 / 13.0;
            s += nt::legendre(j as i64, 13) as f64 * a.cos();
        }
        assert!((s - 13f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn gamma_generators() {
        let f = make_field("realcyclo:13").unwrap();
        let g = f.gamma(13).unwrap();
        assert_eq!(g.numerator()[..2], [BigInt::from(2), BigInt::from(-1)]);
        assert_eq!(g.norm(), BigRational::from_integer(13.into()));
        let f = make_field("realcyclo:28").unwrap();
        // 2 - (ζ₇ + ζ₇⁻¹) has norm 7 over Q(ζ₇)⁺, so 7² over the degree-6 field.
        assert_eq!(f.gamma(7).unwrap().norm(), BigRational::from_integer(49.into()));
        assert!(matches!(f.gamma(3), Err(Error::NotRamified(3))));
    }
}
