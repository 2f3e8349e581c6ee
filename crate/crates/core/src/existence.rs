//! Existence of Arakelov-modular lattices over the supported fields, with
//! explicit witnesses `(I, α, β, ℓ)`.
//!
//! Witness ideals are never tabulated: for each ramified `p` the exponent of
//! the radical `J_p` is solved from `I·Ī = α⁻¹·β·D_K⁻¹`, i.e.
//! `k_p = ½·v_p(α⁻¹βD_K⁻¹)`, which must be even for a witness to exist.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{sqrt_integer, Field, FieldElement, FieldKind};
use crate::ideal::{different_valuation, FractionalIdeal, IdealRecipe};
use crate::nt;

/// Which classification produced a verdict (or excluded a level).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    ImaginaryQuadraticTrace,
    RealQuadraticTrace,
    PrimePowerTrace,
    PrimePower,
    NonPrimePowerTrace,
    OddDegree,
    ParitySearch,
    LevelBound,
    OddDegreeBound,
}

impl Rule {
    pub fn tag(self) -> &'static str {
        match self {
            Rule::ImaginaryQuadraticTrace => "imaginary-quadratic-trace",
            Rule::RealQuadraticTrace => "real-quadratic-trace",
            Rule::PrimePowerTrace => "prime-power-real-cyclotomic-trace",
            Rule::PrimePower => "prime-power-real-cyclotomic",
            Rule::NonPrimePowerTrace => "non-prime-power-real-cyclotomic-trace",
            Rule::OddDegree => "odd-degree-galois",
            Rule::ParitySearch => "valuation-parity-search",
            Rule::LevelBound => "level-divides-even-ramification-product",
            Rule::OddDegreeBound => "odd-degree-forces-unimodular",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionWitness {
    pub level: u64,
    pub beta: FieldElement,
    pub alpha: FieldElement,
    pub ideal: IdealRecipe,
}

#[derive(Clone, Debug)]
pub struct ExistenceVerdict {
    pub field: FieldKind,
    pub trace_type: bool,
    /// Levels in increasing order.
    pub levels: Vec<u64>,
    /// One witness per entry of `levels`.
    pub witnesses: Vec<Option<ConstructionWitness>>,
    pub rule: Rule,
    /// False when the level set is only a lower bound.
    pub complete: bool,
}

impl ExistenceVerdict {
    pub fn witness(&self, level: u64) -> Option<&ConstructionWitness> {
        let i = self.levels.iter().position(|&l| l == level)?;
        self.witnesses[i].as_ref()
    }
}

/// `(Ω, Ω′)`: ramified primes, and those with even ramification index.
pub fn omega_sets(field: &Field) -> (Vec<u64>, Vec<u64>) {
    let ram = &field.descriptor().ramified;
    (
        ram.iter().map(|r| r.p).collect(),
        ram.iter().filter(|r| r.e % 2 == 0).map(|r| r.p).collect(),
    )
}

/// Whether a squarefree `level` passes the necessary divisibility conditions.
pub fn check_level_bound(field: &Field, level: u64) -> bool {
    level_bound_violation(field, level).is_none()
}

/// The rule excluding `level`, if any.
pub fn level_bound_violation(field: &Field, level: u64) -> Option<Rule> {
    if level == 1 {
        return None;
    }
    if field.degree() % 2 == 1 {
        return Some(Rule::OddDegreeBound);
    }
    let (_, even) = omega_sets(field);
    let prod: u64 = even.iter().product();
    if level == 0 || prod % level != 0 {
        return Some(Rule::LevelBound);
    }
    None
}

/// `v_p(x)` measured in powers of the radical above `p`.
fn element_valuation(x: &FieldElement, p: u64) -> Result<i64> {
    FractionalIdeal::principal(x)?.valuation(p)
}

/// Solves the radical exponents for `(α, β)`; `None` when some
/// `v_p(α⁻¹βD_K⁻¹)` is odd or `α⁻¹β` is not supported on ramified primes.
pub fn solve_witness(
    field: &Field,
    level: u64,
    alpha: &FieldElement,
    beta: &FieldElement,
) -> Result<Option<ConstructionWitness>> {
    let ratio = beta.checked_div(alpha)?;
    let (omega, _) = omega_sets(field);
    let mut recipe = IdealRecipe::unit();
    for &p in omega.iter().rev() {
        let v = element_valuation(&ratio, p)? - different_valuation(field, p)?;
        if v % 2 != 0 {
            return Ok(None);
        }
        recipe = recipe.times_radical(p, v / 2);
    }
    let w = ConstructionWitness {
        level,
        beta: beta.clone(),
        alpha: alpha.clone(),
        ideal: recipe,
    };
    if !w.identity_holds(field)? {
        return Ok(None);
    }
    w.validate_elements(field)?;
    Ok(Some(w))
}

impl ConstructionWitness {
    /// Checks the defining identities exactly.
    pub fn validate(&self, field: &Field) -> Result<()> {
        self.validate_elements(field)?;
        if !self.identity_holds(field)? {
            return Err(Error::InternalInconsistency(
                "witness: I * conj(I) != beta / alpha * codifferent".into(),
            ));
        }
        Ok(())
    }

    fn validate_elements(&self, field: &Field) -> Result<()> {
        let fail = |what: &str| Err(Error::InternalInconsistency(format!("witness: {what}")));
        if self.alpha.field() != field || self.beta.field() != field {
            return Err(Error::FieldMismatch);
        }
        let level = FieldElement::from_int(field, self.level as i64);
        if &self.beta * &self.beta.conj() != level {
            return fail("beta * conj(beta) != level");
        }
        if !self.alpha.is_totally_positive() {
            return fail("alpha is not totally positive");
        }
        let (omega, _) = omega_sets(field);
        for &p in &omega {
            let vb = element_valuation(&self.beta, p)?;
            let vl = element_valuation(&level, p)?;
            if 2 * vb != vl {
                return fail(&format!("v_{p}(beta) is not half of v_{p}(level)"));
            }
        }
        Ok(())
    }

    /// `I·Ī = α⁻¹·β·D_K⁻¹`.
    fn identity_holds(&self, field: &Field) -> Result<bool> {
        let ideal = self.ideal.realize(field)?;
        let target = FractionalIdeal::principal(&self.beta.checked_div(&self.alpha)?)?
            .mul(&FractionalIdeal::codifferent(field)?)?;
        Ok(ideal.mul(&ideal.conj())? == target)
    }
}

fn sqrt_or_fail(field: &Field, level: u64) -> Result<FieldElement> {
    sqrt_integer(field, level)?.ok_or_else(|| {
        Error::InternalInconsistency(format!("{level} expected to be a square in {field}"))
    })
}

fn require_witness(
    field: &Field,
    level: u64,
    alpha: &FieldElement,
    beta: &FieldElement,
) -> Result<ConstructionWitness> {
    solve_witness(field, level, alpha, beta)?.ok_or_else(|| {
        Error::InternalInconsistency(format!("no witness for level {level} over {field}"))
    })
}

fn verdict(
    field: &Field,
    trace_type: bool,
    rule: Rule,
    found: Vec<ConstructionWitness>,
    complete: bool,
) -> ExistenceVerdict {
    let mut found = found;
    found.sort_by_key(|w| w.level);
    ExistenceVerdict {
        field: field.kind(),
        trace_type,
        levels: found.iter().map(|w| w.level).collect(),
        witnesses: found.into_iter().map(Some).collect(),
        rule,
        complete,
    }
}

/// Trace-type classification over a quadratic field: the only level is `d`.
pub fn mod_quadratic(field: &Field) -> Result<ExistenceVerdict> {
    let one = FieldElement::one(field);
    let (beta, d, rule) = match field.kind() {
        FieldKind::RealQuadratic(d) => (sqrt_or_fail(field, d)?, d, Rule::RealQuadraticTrace),
        FieldKind::ImagQuadratic(d) => {
            let theta = FieldElement::theta(field);
            // √-d is θ, or 2θ - 1 when θ = (1+√-d)/2.
            let root = if d % 4 == 3 {
                &theta.scale(&BigRational::from_integer(BigInt::from(2))) - &one
            } else {
                theta
            };
            (root, d, Rule::ImaginaryQuadraticTrace)
        }
        _ => return Err(Error::Spec(format!("{field} is not quadratic"))),
    };
    let w = require_witness(field, d, &one, &beta)?;
    Ok(verdict(field, true, rule, vec![w], true))
}

/// Levels over `Q(ζ_{p^r} + ζ_{p^r}⁻¹)` for an odd prime `p`, from the
/// residue of `p` alone.
pub fn prime_power_levels(p: u64, r: u32, trace_type: bool) -> Result<Vec<u64>> {
    if p == 2 || !nt::is_prime(p) || r == 0 {
        return Err(Error::Spec(format!("{p}^{r} is not a supported odd prime power")));
    }
    Ok(match (trace_type, p % 8) {
        (_, 3 | 7) => vec![1],
        (true, 1) => vec![],
        (true, _) => vec![p],
        (false, _) => vec![1, p],
    })
}

/// Classification over `Q(ζ_{p^r} + ζ_{p^r}⁻¹)` for an odd prime `p`, with
/// a witness for every level.
pub fn mod_prime_power(p: u64, r: u32, trace_type: bool) -> Result<ExistenceVerdict> {
    let levels = prime_power_levels(p, r, trace_type)?;
    let field = Field::new(FieldKind::RealCyclotomic(p.pow(r)))?;
    let one = FieldElement::one(&field);
    let gamma_inv = if trace_type || p % 4 == 3 { None } else { Some(field.gamma(p)?.inverse()?) };
    let mut found = Vec::new();
    for level in levels {
        let beta = sqrt_or_fail(&field, level)?;
        let mut hit = solve_witness(&field, level, &one, &beta)?;
        if hit.is_none() {
            if let Some(g) = &gamma_inv {
                hit = solve_witness(&field, level, g, &beta)?;
            }
        }
        found.push(hit.ok_or_else(|| {
            Error::InternalInconsistency(format!("no witness for level {level} over {field}"))
        })?);
    }
    let rule = if trace_type { Rule::PrimePowerTrace } else { Rule::PrimePower };
    Ok(verdict(&field, trace_type, rule, found, true))
}

/// Trace-type classification over `Q(ζ_n + ζ_n⁻¹)` for `n` not a prime power.
pub fn mod_nonprimepower_trace(n: u64) -> Result<ExistenceVerdict> {
    if nt::prime_power(n).is_some() || n % 4 == 2 || n < 6 {
        return Err(Error::Spec(format!(
            "{n} must be a non-prime-power conductor not congruent to 2 mod 4"
        )));
    }
    let field = Field::new(FieldKind::RealCyclotomic(n))?;
    let factors = nt::factorize(n);
    let odd: Vec<u64> = factors.iter().map(|&(p, _)| p).filter(|&p| p != 2).collect();
    let n_tilde: u64 = odd.iter().product();
    let two_adic = factors.iter().find(|&&(p, _)| p == 2).map_or(0, |&(_, r)| r);
    let levels: Vec<u64> = if odd.iter().any(|p| p % 4 == 1) {
        vec![]
    } else {
        match two_adic {
            0 if factors.len() % 2 == 0 => vec![n_tilde],
            0 => vec![],
            2 => vec![n_tilde],
            _ => vec![n_tilde, 2 * n_tilde],
        }
    };
    let one = FieldElement::one(&field);
    let found = levels
        .into_iter()
        .map(|l| {
            let beta = sqrt_or_fail(&field, l)?;
            require_witness(&field, l, &one, &beta)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(verdict(&field, true, Rule::NonPrimePowerTrace, found, true))
}

/// Odd-degree fields in the supported families: the only level is 1, with
/// `I = D_K^{-1/2}` and `α = 1`.
pub fn mod_odd_degree(field: &Field) -> Result<ExistenceVerdict> {
    if field.degree() % 2 == 0 {
        return Err(Error::Spec(format!("{field} has even degree")));
    }
    let (omega, _) = omega_sets(field);
    let mut recipe = IdealRecipe::unit();
    for &p in omega.iter().rev() {
        let v = different_valuation(field, p)?;
        if v % 2 != 0 {
            return Err(Error::InternalInconsistency(format!(
                "odd different valuation {v} at {p} over odd-degree {field}"
            )));
        }
        recipe = recipe.times_radical(p, -v / 2);
    }
    let one = FieldElement::one(field);
    let w = ConstructionWitness { level: 1, beta: one.clone(), alpha: one, ideal: recipe };
    w.validate(field)?;
    Ok(verdict(field, true, Rule::OddDegree, vec![w], true))
}

/// Trace-type levels found by testing every squarefree `ℓ | ∏Ω′` that is a
/// square in the field, with `α = 1` and `β = √ℓ`.
pub fn search_trace_type(field: &Field) -> Result<ExistenceVerdict> {
    if !field.is_totally_real() {
        return Err(Error::Unsupported(format!(
            "parity search needs a totally real field, got {field}"
        )));
    }
    let (_, even) = omega_sets(field);
    let prod: u64 = even.iter().product();
    let one = FieldElement::one(field);
    let mut found = Vec::new();
    for level in nt::divisors(prod) {
        if !check_level_bound(field, level) {
            continue;
        }
        let Some(beta) = sqrt_integer(field, level)? else {
            continue;
        };
        if let Some(w) = solve_witness(field, level, &one, &beta)? {
            found.push(w);
        }
    }
    Ok(verdict(field, true, Rule::ParitySearch, found, true))
}

/// Dispatches to the classification that covers `field`.
///
/// Without `trace_type` the answer is complete only where a full
/// classification is available; elsewhere it lists the trace-type levels.
pub fn existence(field: &Field, trace_type: bool) -> Result<ExistenceVerdict> {
    let mut v = match field.kind() {
        FieldKind::RealQuadratic(_) | FieldKind::ImagQuadratic(_) => mod_quadratic(field)?,
        FieldKind::Cyclotomic(_) => {
            return Err(Error::Unsupported(format!(
                "no classification for the CM field {field}"
            )))
        }
        FieldKind::RealCyclotomic(n) => {
            if field.degree() % 2 == 1 {
                mod_odd_degree(field)?
            } else {
                match nt::prime_power(n) {
                    Some((2, _)) => search_trace_type(field)?,
                    Some((p, r)) => mod_prime_power(p, r, trace_type)?,
                    None => mod_nonprimepower_trace(n)?,
                }
            }
        }
    };
    if !trace_type && v.trace_type {
        // A trace-type lattice is in particular Arakelov-modular.
        v.trace_type = false;
        v.complete = field.degree() % 2 == 1;
    }
    Ok(v)
}

/// `(ℓ₂·I, α/ℓ₂, ℓ₂·β)` at level `ℓ·ℓ₂²`.
pub fn rescale(field: &Field, w: &ConstructionWitness, l2: u64) -> Result<ConstructionWitness> {
    if l2 == 0 {
        return Err(Error::Spec("rescaling factor must be positive".into()));
    }
    if !field.is_totally_real() && nt::gcd(l2, w.level) != 1 {
        return Err(Error::Spec(format!(
            "over a CM field the rescaling factor {l2} must be coprime to the level {}",
            w.level
        )));
    }
    let l2_int = BigInt::from(l2);
    let l2q = BigRational::from_integer(l2_int.clone());
    let scaled = FieldElement::from_int(field, l2 as i64);
    let ideal = if l2 == 1 { w.ideal.clone() } else { w.ideal.clone().times_principal(&scaled, 1) };
    let out = ConstructionWitness {
        level: w.level * l2 * l2,
        beta: w.beta.scale(&l2q),
        alpha: w.alpha.scale(&l2q.recip()),
        ideal,
    };
    out.validate(field)?;
    Ok(out)
}
