//! Binary fixed-point reals backed by `BigInt`, used for embeddings and
//! generator matrices at a caller-chosen precision.
//!
//! A value `v` at precision `p` is stored as the integer `round(v · 2^p)`.
//! Intermediate computations carry `GUARD` extra bits.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

const GUARD: u32 = 40;

#[derive(Clone, PartialEq, Eq)]
pub struct Fixed {
    mantissa: BigInt,
    prec: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    pub re: Fixed,
    pub im: Fixed,
}

fn shr_round(x: &BigInt, bits: u32) -> BigInt {
    if bits == 0 {
        return x.clone();
    }
    let half = BigInt::one() << (bits - 1);
    (x + half) >> bits
}

impl Fixed {
    pub fn zero(prec: u32) -> Self {
        Fixed { mantissa: BigInt::zero(), prec }
    }

    pub fn from_int(v: &BigInt, prec: u32) -> Self {
        Fixed { mantissa: v << prec, prec }
    }

    pub fn from_rational(v: &BigRational, prec: u32) -> Self {
        let num = v.numer() << (prec + 1);
        let q = num.div_floor(v.denom());
        Fixed { mantissa: shr_round(&q, 1), prec }
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn abs(&self) -> Self {
        Fixed { mantissa: self.mantissa.abs(), prec: self.prec }
    }

    fn with_prec(&self, prec: u32) -> Self {
        let mantissa = if prec >= self.prec {
            &self.mantissa << (prec - self.prec)
        } else {
            shr_round(&self.mantissa, self.prec - prec)
        };
        Fixed { mantissa, prec }
    }

    pub fn add(&self, other: &Fixed) -> Fixed {
        debug_assert_eq!(self.prec, other.prec);
        Fixed { mantissa: &self.mantissa + &other.mantissa, prec: self.prec }
    }

    pub fn sub(&self, other: &Fixed) -> Fixed {
        debug_assert_eq!(self.prec, other.prec);
        Fixed { mantissa: &self.mantissa - &other.mantissa, prec: self.prec }
    }

    pub fn mul(&self, other: &Fixed) -> Fixed {
        debug_assert_eq!(self.prec, other.prec);
        Fixed {
            mantissa: shr_round(&(&self.mantissa * &other.mantissa), self.prec),
            prec: self.prec,
        }
    }

    pub fn mul_int(&self, k: &BigInt) -> Fixed {
        Fixed { mantissa: &self.mantissa * k, prec: self.prec }
    }

    pub fn mul_rational(&self, k: &BigRational) -> Fixed {
        let num = &self.mantissa * k.numer();
        Fixed { mantissa: num.div_floor(k.denom()), prec: self.prec }
    }

    /// Square root of a non-negative value.
    pub fn sqrt(&self) -> Fixed {
        assert!(!self.is_negative(), "square root of a negative value");
        Fixed { mantissa: (&self.mantissa << self.prec).sqrt(), prec: self.prec }
    }

    pub fn to_f64(&self) -> f64 {
        let (sign, _) = self.mantissa.to_bytes_be();
        let bits = self.mantissa.bits();
        // Keep 60 significant bits before converting.
        let shift = bits.saturating_sub(60) as u32;
        let m = (&self.mantissa.abs() >> shift).to_f64().unwrap_or(f64::NAN);
        let v = m * 2f64.powi(shift as i32 - self.prec as i32);
        if sign == Sign::Minus {
            -v
        } else {
            v
        }
    }

    /// Decimal rendering with `digits` fractional digits (truncated toward zero).
    pub fn to_decimal(&self, digits: usize) -> String {
        let neg = self.mantissa.is_negative();
        let scaled = (self.mantissa.abs() * BigInt::from(10).pow(digits as u32)) >> self.prec;
        let s = scaled.to_string();
        let s = if s.len() <= digits {
            format!("{}{}", "0".repeat(digits + 1 - s.len()), s)
        } else {
            s
        };
        let (int, frac) = s.split_at(s.len() - digits);
        let sign = if neg && scaled.sign() != Sign::NoSign { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    }
}

impl fmt::Debug for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

impl Complex {
    pub fn real(re: Fixed) -> Self {
        let prec = re.prec;
        Complex { re, im: Fixed::zero(prec) }
    }

    pub fn add(&self, o: &Complex) -> Complex {
        Complex { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn mul(&self, o: &Complex) -> Complex {
        Complex {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn conj(&self) -> Complex {
        Complex { re: self.re.clone(), im: Fixed { mantissa: -&self.im.mantissa, prec: self.im.prec } }
    }
}

// atan(1/k) · 2^bits by the alternating Taylor series.
fn atan_inv(k: u64, bits: u32) -> BigInt {
    let k = BigInt::from(k);
    let k2 = &k * &k;
    let mut power = (BigInt::one() << bits) / &k;
    let mut sum = power.clone();
    let mut n = 1u64;
    loop {
        power /= &k2;
        if power.is_zero() {
            break;
        }
        let term = &power / BigInt::from(2 * n + 1);
        if n % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        n += 1;
    }
    sum
}

/// π at the given precision (Machin's formula).
pub fn pi(prec: u32) -> Fixed {
    let bits = prec + GUARD;
    let m = atan_inv(5, bits) * 16 - atan_inv(239, bits) * 4;
    Fixed { mantissa: shr_round(&m, GUARD), prec }
}

/// `(cos, sin)` of `2π · num / den`.
pub fn cos_sin_turn(num: i64, den: u64, prec: u32) -> (Fixed, Fixed) {
    assert!(den > 0);
    let bits = prec + GUARD;
    let den_i = den as i64;
    // Reduce the angle to (-1/2, 1/2] turns.
    let mut r = num.rem_euclid(den_i);
    if 2 * r > den_i {
        r -= den_i;
    }
    let two_pi: BigInt = pi(bits).mantissa << 1u32;
    let x: BigInt = (two_pi * BigInt::from(r)) / BigInt::from(den);
    let one = BigInt::one() << bits;
    // Taylor series; |x| <= π so the terms decay after a few dozen steps.
    let mut cos = one.clone();
    let mut sin = x.clone();
    let mut term = one;
    let x2 = (&x * &x) >> bits;
    let mut k = 1u64;
    loop {
        // term_k = (-1)^k x^{2k} / (2k)!
        term = -((&term * &x2) >> bits) / BigInt::from((2 * k - 1) * (2 * k));
        if term.is_zero() {
            break;
        }
        cos += &term;
        k += 1;
    }
    let mut term = x;
    let mut k = 1u64;
    loop {
        term = -((&term * &x2) >> bits) / BigInt::from((2 * k) * (2 * k + 1));
        if term.is_zero() {
            break;
        }
        sin += &term;
        k += 1;
    }
    (
        Fixed { mantissa: shr_round(&cos, GUARD), prec },
        Fixed { mantissa: shr_round(&sin, GUARD), prec },
    )
}

/// `√m` for a non-negative integer.
pub fn sqrt_int(m: u64, prec: u32) -> Fixed {
    let bits = prec + GUARD;
    let v = (BigInt::from(m) << (2 * bits)).sqrt();
    Fixed { mantissa: shr_round(&v, GUARD), prec }
}

/// Raises the working precision of `x` (used to compute with guard bits).
pub fn widen(x: &Fixed, extra: u32) -> Fixed {
    x.with_prec(x.prec + extra)
}

/// Drops `extra` bits of precision with rounding.
pub fn narrow(x: &Fixed, extra: u32) -> Fixed {
    x.with_prec(x.prec - extra)
}
