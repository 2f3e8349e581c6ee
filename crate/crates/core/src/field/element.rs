use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Field, FieldKind};
use crate::error::{Error, Result};
use crate::linalg::{solve_left, IntMatrix, RatMatrix};

/// Exact element of a supported field: `num / den` over the power basis.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    num: Vec<BigInt>,
    den: BigInt,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.den == other.den && self.num == other.num
    }
}

impl Eq for FieldElement {}

impl FieldElement {
    fn normalized(field: &Field, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        debug_assert!(!den.is_zero());
        if den.is_negative() {
            den = -den;
            num.iter_mut().for_each(|c| *c = -std::mem::take(c));
        }
        let g = num.iter().fold(den.clone(), |g, c| g.gcd(c));
        if !g.is_one() {
            num.iter_mut().for_each(|c| *c /= &g);
            den /= &g;
        }
        FieldElement { field: field.clone(), num, den }
    }

    pub fn from_integral(field: &Field, coeffs: Vec<BigInt>) -> Result<Self> {
        Self::from_parts(field, coeffs, BigInt::one())
    }

    /// `coeffs / den`.
    pub fn from_parts(field: &Field, coeffs: Vec<BigInt>, den: BigInt) -> Result<Self> {
        if coeffs.len() != field.degree() {
            return Err(Error::Shape(format!(
                "expected {} coefficients, got {}",
                field.degree(),
                coeffs.len()
            )));
        }
        if den.is_zero() {
            return Err(Error::Div);
        }
        Ok(Self::normalized(field, coeffs, den))
    }

    pub fn from_rationals(field: &Field, coeffs: &[BigRational]) -> Result<Self> {
        let den = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Self::from_parts(field, num, den)
    }

    pub fn from_rational(field: &Field, q: &BigRational) -> Self {
        let mut num = vec![BigInt::zero(); field.degree()];
        num[0] = q.numer().clone();
        Self::normalized(field, num, q.denom().clone())
    }

    pub fn from_int(field: &Field, k: i64) -> Self {
        Self::from_rational(field, &BigRational::from_integer(k.into()))
    }

    pub fn zero(field: &Field) -> Self {
        Self::from_int(field, 0)
    }

    pub fn one(field: &Field) -> Self {
        Self::from_int(field, 1)
    }

    /// The power-basis generator `θ`.
    pub fn theta(field: &Field) -> Self {
        let mut num = vec![BigInt::zero(); field.degree()];
        num[1] = BigInt::one();
        FieldElement { field: field.clone(), num, den: BigInt::one() }
    }

    /// Element given by an arbitrary integer polynomial in `θ`.
    pub fn from_poly(field: &Field, poly: Vec<BigInt>) -> Self {
        let num = field.reduce(poly);
        Self::normalized(field, num, BigInt::one())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn numerator(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num.iter().map(|c| BigRational::new(c.clone(), self.den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// The rational value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.num[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| a * &other.den + b * &self.den)
            .collect();
        Ok(Self::normalized(&self.field, num, &self.den * &other.den))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let num = self.field.mul_integral(&self.num, &other.num);
        Ok(Self::normalized(&self.field, num, &self.den * &other.den))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        self.checked_mul(&other.inverse()?)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        Self::normalized(&self.field, num, &self.den * q.denom())
    }

    /// Matrix of multiplication by the numerator: row `i` is `θ^i · num`.
    pub(crate) fn integral_mult_matrix(field: &Field, num: &[BigInt]) -> IntMatrix {
        let n = field.degree();
        let mut rows = Vec::with_capacity(n);
        let mut cur = num.to_vec();
        for _ in 0..n {
            let mut shifted = Vec::with_capacity(n + 1);
            shifted.push(BigInt::zero());
            shifted.extend(cur.iter().cloned());
            rows.push(cur);
            cur = field.reduce(shifted);
        }
        IntMatrix::from_rows(rows).expect("square")
    }

    /// Matrix of `x ↦ x·self` on row coefficient vectors.
    pub fn mult_matrix(&self) -> RatMatrix {
        let m = Self::integral_mult_matrix(&self.field, &self.num);
        m.map(|c| BigRational::new(c.clone(), self.den.clone()))
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Div);
        }
        let m = Self::integral_mult_matrix(&self.field, &self.num).to_rational();
        let mut target = vec![BigRational::zero(); self.field.degree()];
        target[0] = BigRational::from_integer(self.den.clone());
        let x = solve_left(&m, &target)?.ok_or(Error::Div)?;
        Self::from_rationals(&self.field, &x)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one(&self.field);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    pub fn trace(&self) -> BigRational {
        BigRational::new(self.field.trace_integral(&self.num), self.den.clone())
    }

    pub fn norm(&self) -> BigRational {
        let m = Self::integral_mult_matrix(&self.field, &self.num);
        let d = crate::linalg::det(&m).expect("square");
        BigRational::new(d, self.den.pow(self.field.degree() as u32))
    }

    pub fn conj(&self) -> Self {
        let num = self.field.conj_integral(&self.num);
        FieldElement { field: self.field.clone(), num, den: self.den.clone() }
    }

    /// True iff every embedding of `self` is real and positive.
    ///
    /// Exact: the element must be fixed by conjugation, and then its
    /// characteristic polynomial (which has only real roots) has all roots
    /// positive iff its coefficients strictly alternate in sign.
    pub fn is_totally_positive(&self) -> bool {
        if self.is_zero() || self.conj() != *self {
            return false;
        }
        if let Some(q) = self.as_rational() {
            return q.is_positive();
        }
        let m = Self::integral_mult_matrix(&self.field, &self.num);
        let cp = charpoly(&m);
        let n = cp.len() - 1;
        // cp[n] = 1; need (-1)^k cp[n-k] > 0 for every k.
        (0..=n).all(|k| {
            let c = &cp[n - k];
            if k % 2 == 0 {
                c.is_positive()
            } else {
                c.is_negative()
            }
        })
    }

    /// Image in the ambient cyclotomic field of a real cyclotomic element.
    pub fn lift(&self) -> Result<FieldElement> {
        let lift = self.field.lift_matrix()?;
        let amb = self.field.ambient()?;
        let row = RatMatrix::from_rows(vec![self.coeffs()])?;
        let out = &row * lift;
        Self::from_rationals(amb, out.row(0))
    }

    /// Preimage in `sub = Q(ζ_n + ζ_n⁻¹)` of an element of `Q(ζ_n)`.
    pub fn descend(&self, sub: &Field) -> Result<FieldElement> {
        let FieldKind::RealCyclotomic(n) = sub.kind() else {
            return Err(Error::Unsupported(format!("cannot descend to {sub}")));
        };
        if self.field.kind() != FieldKind::Cyclotomic(n) {
            return Err(Error::FieldMismatch);
        }
        let lift = sub.lift_matrix()?;
        match solve_left(lift, &self.coeffs())? {
            Some(x) => Self::from_rationals(sub, &x),
            None => Err(Error::NotInSubfield),
        }
    }
}

/// Characteristic polynomial `det(xI - M)` (constant term first) by
/// Faddeev–LeVerrier.
pub(crate) fn charpoly(m: &IntMatrix) -> Vec<BigInt> {
    let n = m.rows();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut mk = IntMatrix::zeros(n, n);
    for k in 1..=n {
        // M_k = M·M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(M·M_k)/k
        let mut next = m * &mk;
        for i in 0..n {
            next[(i, i)] += &coeffs[n - k + 1];
        }
        let am = m * &next;
        let tr: BigInt = (0..n).map(|i| am[(i, i)].clone()).sum();
        debug_assert!((&tr % BigInt::from(k)).is_zero());
        coeffs[n - k] = -tr / BigInt::from(k);
        mk = next;
    }
    coeffs
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match k {
                0 => c.to_string(),
                1 => format!("{c}*t"),
                _ => format!("{c}*t^{k}"),
            });
        }
        let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        if self.den.is_one() {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{}", self.den)
        }
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("operands from different fields")
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}
