//! The supported number fields and exact arithmetic in them.
//!
//! Every field is presented as `Q[x]/(f)` for a monic integer `f` whose root
//! `θ` generates the ring of integers, so the power basis `1, θ, …, θ^{n-1}`
//! is a `Z`-basis of `O_K`:
//!
//! | kind                 | θ                                   |
//! |----------------------|-------------------------------------|
//! | `RealQuadratic(d)`   | `√d`, or `(1+√d)/2` when `d ≡ 1 (4)`  |
//! | `ImagQuadratic(d)`   | `√-d`, or `(1+√-d)/2` when `d ≡ 3 (4)`|
//! | `Cyclotomic(n)`      | `ζ_n`                               |
//! | `RealCyclotomic(n)`  | `ζ_n + ζ_n⁻¹`                        |

mod element;
mod embed;
mod sqrt;

pub use element::FieldElement;
pub use embed::{embedding_matrix, twisted_embedding, EmbeddingLayout, EmbeddingMatrix};
pub use sqrt::sqrt_integer;

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, RatMatrix};
use crate::nt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    RealQuadratic(u64),
    ImagQuadratic(u64),
    Cyclotomic(u64),
    RealCyclotomic(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RamifiedPrime {
    pub p: u64,
    /// Ramification index of every prime above `p`.
    pub e: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldDescriptor {
    pub kind: FieldKind,
    pub degree: usize,
    pub ramified: Vec<RamifiedPrime>,
}

impl FieldDescriptor {
    pub fn new(kind: FieldKind) -> Result<Self> {
        let (degree, ramified) = match kind {
            FieldKind::RealQuadratic(d) => {
                if d < 2 || !nt::is_squarefree(d) {
                    return Err(Error::Spec(format!("d = {d} must be squarefree and > 1")));
                }
                (2, quadratic_ramified(d, d % 4 == 1))
            }
            FieldKind::ImagQuadratic(d) => {
                if d < 1 || !nt::is_squarefree(d) {
                    return Err(Error::Spec(format!("d = {d} must be squarefree and positive")));
                }
                // -d ≡ 1 (mod 4) exactly when d ≡ 3 (mod 4).
                (2, quadratic_ramified(d, d % 4 == 3))
            }
            FieldKind::Cyclotomic(n) => {
                check_conductor(n)?;
                let deg = nt::euler_phi(n) as usize;
                if deg < 2 {
                    return Err(Error::Spec(format!("Q(zeta_{n}) has degree 1")));
                }
                let ram = nt::factorize(n)
                    .into_iter()
                    .map(|(p, r)| RamifiedPrime { p, e: nt::euler_phi(p.pow(r)) })
                    .collect();
                (deg, ram)
            }
            FieldKind::RealCyclotomic(n) => {
                check_conductor(n)?;
                let phi = nt::euler_phi(n);
                let f = nt::factorize(n);
                // Q(ζ_n)/K is unramified at every finite prime unless n is a
                // prime power, in which case it is ramified at p.
                let halve = f.len() == 1;
                let ram = f
                    .into_iter()
                    .map(|(p, r)| {
                        let e = nt::euler_phi(p.pow(r));
                        RamifiedPrime { p, e: if halve { e / 2 } else { e } }
                    })
                    .filter(|r| r.e > 1)
                    .collect();
                ((phi / 2) as usize, ram)
            }
        };
        Ok(FieldDescriptor { kind, degree, ramified })
    }

    pub fn is_totally_real(&self) -> bool {
        matches!(self.kind, FieldKind::RealQuadratic(_) | FieldKind::RealCyclotomic(_))
    }

    pub fn ramification_index(&self, p: u64) -> Option<u64> {
        self.ramified.iter().find(|r| r.p == p).map(|r| r.e)
    }

    pub fn ramified_primes(&self) -> Vec<u64> {
        self.ramified.iter().map(|r| r.p).collect()
    }
}

fn quadratic_ramified(d: u64, unit_at_two: bool) -> Vec<RamifiedPrime> {
    let mut primes: Vec<u64> = nt::factorize(d).into_iter().map(|(p, _)| p).collect();
    if !unit_at_two && !primes.contains(&2) {
        primes.push(2);
    }
    primes.sort_unstable();
    primes.into_iter().map(|p| RamifiedPrime { p, e: 2 }).collect()
}

fn check_conductor(n: u64) -> Result<()> {
    if n < 3 || n % 4 == 2 {
        return Err(Error::Spec(format!(
            "conductor {n} must be at least 3 and not congruent to 2 mod 4"
        )));
    }
    Ok(())
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::RealQuadratic(d) => write!(f, "quad:+{d}"),
            FieldKind::ImagQuadratic(d) => write!(f, "quad:-{d}"),
            FieldKind::Cyclotomic(n) => write!(f, "cyclo:{n}"),
            FieldKind::RealCyclotomic(n) => write!(f, "realcyclo:{n}"),
        }
    }
}

impl FromStr for FieldKind {
    type Err = Error;

    /// Grammar: `quad:+<d>` | `quad:-<d>` | `cyclo:<n>` | `realcyclo:<n>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Spec(format!("malformed field spec '{s}'"));
        let (tag, rest) = s.trim().split_once(':').ok_or_else(bad)?;
        let number = |t: &str| -> Result<u64> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse::<u64>().map_err(|_| bad())
        };
        match tag {
            "quad" => {
                if let Some(d) = rest.strip_prefix('+') {
                    Ok(FieldKind::RealQuadratic(number(d)?))
                } else if let Some(d) = rest.strip_prefix('-') {
                    Ok(FieldKind::ImagQuadratic(number(d)?))
                } else {
                    Err(bad())
                }
            }
            "cyclo" => Ok(FieldKind::Cyclotomic(number(rest)?)),
            "realcyclo" => Ok(FieldKind::RealCyclotomic(number(rest)?)),
            _ => Err(bad()),
        }
    }
}

struct FieldData {
    desc: FieldDescriptor,
    /// Monic minimal polynomial of θ, constant term first.
    minpoly: Vec<BigInt>,
    /// `Tr(θ^k)` for `k < 2·degree - 1`.
    traces: Vec<BigInt>,
    /// Row `k` is `conj(θ^k)` in the power basis.
    conj: Vec<Vec<BigInt>>,
    ambient: OnceLock<Field>,
    lift: OnceLock<RatMatrix>,
    /// HNF numerator and denominator of the codifferent.
    codifferent: OnceLock<(IntMatrix, BigInt)>,
}

/// Shared handle to one of the supported fields.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.desc.kind == other.0.desc.kind
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.kind())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind())
    }
}

/// Parses a field spec and builds the field.
pub fn make_field(spec: &str) -> Result<Field> {
    Field::new(spec.parse()?)
}

impl Field {
    pub fn new(kind: FieldKind) -> Result<Field> {
        let desc = FieldDescriptor::new(kind)?;
        let deg = desc.degree;
        let minpoly = match kind {
            FieldKind::RealQuadratic(d) => {
                let d = BigInt::from(d);
                if &d % 4u32 == BigInt::one() {
                    vec![-(d - 1u32) / 4u32, BigInt::from(-1), BigInt::one()]
                } else {
                    vec![-d, BigInt::zero(), BigInt::one()]
                }
            }
            FieldKind::ImagQuadratic(d) => {
                let d = BigInt::from(d);
                if &d % 4u32 == BigInt::from(3) {
                    vec![(d + 1u32) / 4u32, BigInt::from(-1), BigInt::one()]
                } else {
                    vec![d, BigInt::zero(), BigInt::one()]
                }
            }
            FieldKind::Cyclotomic(n) => cyclotomic_polynomial(n),
            FieldKind::RealCyclotomic(n) => real_cyclotomic_polynomial(n),
        };
        debug_assert_eq!(minpoly.len(), deg + 1);
        let traces = match kind {
            FieldKind::RealQuadratic(_) | FieldKind::ImagQuadratic(_) => {
                power_sums(&minpoly, 2 * deg - 1)
            }
            FieldKind::Cyclotomic(n) => (0..2 * deg - 1)
                .map(|k| BigInt::from(ramanujan_sum(n, k as u64)))
                .collect(),
            FieldKind::RealCyclotomic(n) => (0..2 * deg - 1)
                .map(|k| real_cyclotomic_trace(n, k as u64))
                .collect(),
        };
        let identity = |k: usize| -> Vec<BigInt> {
            (0..deg).map(|j| if j == k { BigInt::one() } else { BigInt::zero() }).collect()
        };
        let conj = match kind {
            FieldKind::RealQuadratic(_) | FieldKind::RealCyclotomic(_) => {
                (0..deg).map(identity).collect()
            }
            FieldKind::ImagQuadratic(d) => {
                let one = BigInt::one();
                if d % 4 == 3 {
                    vec![identity(0), vec![one.clone(), -one]]
                } else {
                    vec![identity(0), vec![BigInt::zero(), -one]]
                }
            }
            FieldKind::Cyclotomic(n) => (0..deg)
                .map(|k| {
                    let e = (n as usize - k) % n as usize;
                    let mut v = vec![BigInt::zero(); e + 1];
                    v[e] = BigInt::one();
                    reduce_mod_monic(v, &minpoly)
                })
                .collect(),
        };
        Ok(Field(Arc::new(FieldData {
            desc,
            minpoly,
            traces,
            conj,
            ambient: OnceLock::new(),
            lift: OnceLock::new(),
            codifferent: OnceLock::new(),
        })))
    }

    pub fn kind(&self) -> FieldKind {
        self.0.desc.kind
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.0.desc
    }

    pub fn degree(&self) -> usize {
        self.0.desc.degree
    }

    pub fn is_totally_real(&self) -> bool {
        self.0.desc.is_totally_real()
    }

    pub fn minpoly(&self) -> &[BigInt] {
        &self.0.minpoly
    }

    /// `Tr(θ^k)` for `k < 2·degree - 1`.
    pub fn power_traces(&self) -> &[BigInt] {
        &self.0.traces
    }

    /// Conductor `n` for the cyclotomic kinds.
    pub fn conductor(&self) -> Option<u64> {
        match self.kind() {
            FieldKind::Cyclotomic(n) | FieldKind::RealCyclotomic(n) => Some(n),
            _ => None,
        }
    }

    /// For `RealCyclotomic(n)`, the ambient field `Q(ζ_n)`.
    pub fn ambient(&self) -> Result<&Field> {
        let FieldKind::RealCyclotomic(n) = self.kind() else {
            return Err(Error::Unsupported(format!("{} has no ambient cyclotomic field", self)));
        };
        Ok(self
            .0
            .ambient
            .get_or_init(|| Field::new(FieldKind::Cyclotomic(n)).expect("valid conductor")))
    }

    pub(crate) fn codifferent_cache(&self) -> &OnceLock<(IntMatrix, BigInt)> {
        &self.0.codifferent
    }

    /// Integral product of two power-basis coefficient vectors.
    pub fn mul_integral(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = self.degree();
        let mut prod = vec![BigInt::zero(); 2 * n - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        reduce_mod_monic(prod, &self.0.minpoly)
    }

    /// Conjugates an integral coefficient vector.
    pub fn conj_integral(&self, a: &[BigInt]) -> Vec<BigInt> {
        let n = self.degree();
        let mut out = vec![BigInt::zero(); n];
        for (k, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, v) in out.iter_mut().zip(&self.0.conj[k]) {
                *o += c * v;
            }
        }
        out
    }

    /// `Tr(x)` for an integral coefficient vector.
    pub fn trace_integral(&self, a: &[BigInt]) -> BigInt {
        a.iter().zip(&self.0.traces).map(|(x, t)| x * t).sum()
    }

    /// Reduces an arbitrary polynomial in θ to the power basis.
    pub fn reduce(&self, poly: Vec<BigInt>) -> Vec<BigInt> {
        reduce_mod_monic(poly, &self.0.minpoly)
    }

    /// Matrix whose row `k` is `(ζ+ζ⁻¹)^k` in the ambient power basis.
    fn lift_matrix(&self) -> Result<&RatMatrix> {
        let amb = self.ambient()?.clone();
        let n = self.conductor().expect("real cyclotomic");
        Ok(self.0.lift.get_or_init(|| {
            let deg_l = amb.degree();
            let mut s = vec![BigInt::zero(); n as usize];
            s[1] = BigInt::one();
            s[n as usize - 1] += BigInt::one();
            let s = amb.reduce(s);
            let mut rows = Vec::with_capacity(self.degree());
            let mut cur = amb.reduce(vec![BigInt::one()]);
            for _ in 0..self.degree() {
                rows.push(cur.iter().map(|x| BigRational::from_integer(x.clone())).collect());
                cur = amb.mul_integral(&cur, &s);
            }
            debug_assert!(rows.iter().all(|r: &Vec<BigRational>| r.len() == deg_l));
            RatMatrix::from_rows(rows).expect("rectangular")
        }))
    }
}

/// Remainder of `poly` modulo a monic polynomial, padded to its degree.
fn reduce_mod_monic(mut poly: Vec<BigInt>, monic: &[BigInt]) -> Vec<BigInt> {
    let deg = monic.len() - 1;
    for k in (deg..poly.len()).rev() {
        if poly[k].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut poly[k]);
        for i in 0..deg {
            if !monic[i].is_zero() {
                poly[k - deg + i] -= &c * &monic[i];
            }
        }
    }
    poly.resize(deg, BigInt::zero());
    poly
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

// Exact division by a monic polynomial.
fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let dq = a.len() - 1 - db;
    let mut q = vec![BigInt::zero(); dq + 1];
    for k in (0..=dq).rev() {
        let c = rem[k + db].clone();
        for (i, bi) in b.iter().enumerate() {
            rem[k + i] -= &c * bi;
        }
        q[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    q
}

/// `Φ_n = ∏_{d | n} (x^d - 1)^{μ(n/d)}`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    let mut num = vec![BigInt::one()];
    let mut den = vec![BigInt::one()];
    for d in nt::divisors(n) {
        let mu = nt::mobius(n / d);
        if mu == 0 {
            continue;
        }
        let mut f = vec![BigInt::zero(); d as usize + 1];
        f[0] = BigInt::from(-1);
        f[d as usize] = BigInt::one();
        if mu == 1 {
            num = poly_mul(&num, &f);
        } else {
            den = poly_mul(&den, &f);
        }
    }
    let q = poly_div_exact(&num, &den);
    // Normalise the sign so the leading coefficient is +1.
    if q.last().is_some_and(|c| c < &BigInt::zero()) {
        q.into_iter().map(|c| -c).collect()
    } else {
        q
    }
}

/// Minimal polynomial of `ζ_n + ζ_n⁻¹`, from `Φ_n(z) = z^m · Ψ(z + 1/z)`.
pub fn real_cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    let phi = cyclotomic_polynomial(n);
    let m = (phi.len() - 1) / 2;
    // V_k(θ) = ζ^k + ζ^-k as polynomials in θ.
    let mut v: Vec<Vec<BigInt>> = vec![vec![BigInt::from(2)], vec![BigInt::zero(), BigInt::one()]];
    for k in 2..=m {
        let mut next = vec![BigInt::zero(); k + 1];
        for (i, c) in v[k - 1].iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in v[k - 2].iter().enumerate() {
            next[i] -= c;
        }
        v.push(next);
    }
    let mut psi = vec![BigInt::zero(); m + 1];
    psi[0] += &phi[m];
    for k in 1..=m {
        for (i, c) in v[k].iter().enumerate() {
            psi[i] += &phi[m + k] * c;
        }
    }
    psi
}

/// Newton power sums `p_k = Σ rootᵢ^k` of a monic polynomial, `k < count`.
pub fn power_sums(monic: &[BigInt], count: usize) -> Vec<BigInt> {
    let deg = monic.len() - 1;
    // Coefficient of x^{deg-i}.
    let a = |i: usize| -> &BigInt { &monic[deg - i] };
    let mut p: Vec<BigInt> = Vec::with_capacity(count);
    for k in 0..count {
        if k == 0 {
            p.push(BigInt::from(deg));
            continue;
        }
        let mut s = BigInt::zero();
        for i in 1..k.min(deg + 1) {
            s -= a(i) * &p[k - i];
        }
        if k <= deg {
            s -= a(k) * BigInt::from(k);
        }
        p.push(s);
    }
    p
}

/// `Tr_{Q(ζ_n)/Q}(ζ_n^k) = μ(n/g)·φ(n)/φ(n/g)` with `g = gcd(k, n)`.
pub fn ramanujan_sum(n: u64, k: u64) -> i64 {
    let g = nt::gcd(k % n, n);
    let g = if g == 0 { n } else { g };
    let q = n / g;
    nt::mobius(q) * (nt::euler_phi(n) / nt::euler_phi(q)) as i64
}

fn real_cyclotomic_trace(n: u64, k: u64) -> BigInt {
    // θ^k = Σ_j C(k, j) ζ^{k-2j}; the trace down from Q(ζ_n) is twice the
    // trace down from K.
    let mut total = BigInt::zero();
    for j in 0..=k {
        let e = (k as i64 - 2 * j as i64).rem_euclid(n as i64) as u64;
        total += binomial(BigInt::from(k), BigInt::from(j)) * BigInt::from(ramanujan_sum(n, e));
    }
    debug_assert!((&total % 2u32).is_zero());
    total / 2u32
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn parse_specs() {
        assert_eq!("quad:+5".parse::<FieldKind>().unwrap(), FieldKind::RealQuadratic(5));
        assert_eq!("quad:-3".parse::<FieldKind>().unwrap(), FieldKind::ImagQuadratic(3));
        assert_eq!("cyclo:12".parse::<FieldKind>().unwrap(), FieldKind::Cyclotomic(12));
        assert_eq!("realcyclo:13".parse::<FieldKind>().unwrap(), FieldKind::RealCyclotomic(13));
        for bad in ["quad:5", "quad:+", "cyc:5", "realcyclo:-5", "realcyclo:1x", ""] {
            assert!(matches!(bad.parse::<FieldKind>(), Err(Error::Spec(_))), "{bad}");
        }
        assert_eq!(FieldKind::RealQuadratic(7).to_string(), "quad:+7");
    }

    #[test]
    fn descriptors() {
        let f = make_field("quad:+5").unwrap();
        assert_eq!(f.degree(), 2);
        assert_eq!(f.descriptor().ramified, vec![RamifiedPrime { p: 5, e: 2 }]);

        let f = make_field("realcyclo:13").unwrap();
        assert_eq!(f.degree(), 6);
        assert_eq!(f.descriptor().ramified, vec![RamifiedPrime { p: 13, e: 6 }]);

        let f = make_field("realcyclo:28").unwrap();
        assert_eq!(f.degree(), 6);
        assert_eq!(
            f.descriptor().ramified,
            vec![RamifiedPrime { p: 2, e: 2 }, RamifiedPrime { p: 7, e: 6 }]
        );

        let f = make_field("quad:+3").unwrap();
        assert_eq!(f.descriptor().ramified_primes(), vec![2, 3]);
        let f = make_field("quad:-3").unwrap();
        assert_eq!(f.descriptor().ramified_primes(), vec![3]);
        let f = make_field("quad:-5").unwrap();
        assert_eq!(f.descriptor().ramified_primes(), vec![2, 5]);
    }

    #[test]
    fn rational_real_subfields() {
        for spec in ["realcyclo:3", "realcyclo:4"] {
            let f = make_field(spec).unwrap();
            assert_eq!(f.degree(), 1);
            assert!(f.descriptor().ramified.is_empty());
            assert_eq!(f.power_traces()[0], BigInt::one());
        }
    }

    #[test]
    fn rejects_invalid_fields() {
        for bad in ["quad:+1", "quad:+12", "quad:-4", "realcyclo:14", "cyclo:2", "cyclo:6"] {
            assert!(matches!(make_field(bad), Err(Error::Spec(_))), "{bad}");
        }
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(5), ints(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(8), ints(&[1, 0, 0, 0, 1]));
        // 2cos(2π/5) satisfies x² + x - 1.
        assert_eq!(real_cyclotomic_polynomial(5), ints(&[-1, 1, 1]));
        // 2cos(2π/8) = √2.
        assert_eq!(real_cyclotomic_polynomial(8), ints(&[-2, 0, 1]));
    }

    #[test]
    fn minimal_polynomial_roots_numerically() {
        for n in [7u64, 13, 28, 36, 44] {
            let psi = real_cyclotomic_polynomial(n);
            for k in (1..n / 2).filter(|k| nt::gcd(*k, n) == 1) {
                let x = 2.0 * (2.0 * std::f64::consts::PI * k as f64 / n as f64).cos();
                let v: f64 = psi
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c.to_string().parse::<f64>().unwrap() * x.powi(i as i32))
                    .sum();
                assert!(v.abs() < 1e-6, "n={n} k={k} residual {v}");
            }
        }
    }

    #[test]
    fn traces_match_newton_identities() {
        for spec in ["cyclo:12", "cyclo:13", "cyclo:28", "realcyclo:13", "realcyclo:28", "realcyclo:36", "realcyclo:49"] {
            let f = make_field(spec).unwrap();
            let newton = power_sums(f.minpoly(), 2 * f.degree() - 1);
            assert_eq!(f.power_traces(), newton.as_slice(), "{spec}");
        }
    }

    #[test]
    fn trace_of_zeta12_numerically() {
        let sum: f64 = [1.0f64, 5.0, 7.0, 11.0]
            .iter()
            .map(|k| (2.0 * std::f64::consts::PI * k / 12.0).cos())
            .sum();
        assert!(sum.abs() < 1e-12);
        let f = make_field("cyclo:12").unwrap();
        assert_eq!(f.power_traces()[1], BigInt::zero());
    }
}
