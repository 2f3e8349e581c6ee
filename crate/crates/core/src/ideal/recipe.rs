//! Formal products of radicals and principal ideals.
//!
//! Grammar: factors joined by `*`, each either `P<p>` or `(<c0>,<c1>,…)`
//! (power-basis coefficients, integers or `a/b`), optionally followed by
//! `^<k>` with `k` a nonzero integer. The empty product is written `1`.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use super::FractionalIdeal;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RecipeFactor {
    Radical { p: u64, exp: i64 },
    Principal { coeffs: Vec<BigRational>, exp: i64 },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IdealRecipe {
    pub factors: Vec<RecipeFactor>,
}

impl IdealRecipe {
    pub fn unit() -> Self {
        IdealRecipe::default()
    }

    pub fn radical(p: u64, exp: i64) -> Self {
        IdealRecipe::unit().times_radical(p, exp)
    }

    /// Appends `J_p^exp`, skipping zero exponents.
    pub fn times_radical(mut self, p: u64, exp: i64) -> Self {
        if exp != 0 {
            self.factors.push(RecipeFactor::Radical { p, exp });
        }
        self
    }

    pub fn times_principal(mut self, gen: &FieldElement, exp: i64) -> Self {
        if exp != 0 {
            self.factors.push(RecipeFactor::Principal { coeffs: gen.coeffs(), exp });
        }
        self
    }

    /// Exponent of `J_p` summed over the radical factors.
    pub fn radical_exponent(&self, p: u64) -> i64 {
        self.factors
            .iter()
            .map(|f| match f {
                RecipeFactor::Radical { p: q, exp } if *q == p => *exp,
                _ => 0,
            })
            .sum()
    }

    pub fn realize(&self, field: &Field) -> Result<FractionalIdeal> {
        let mut acc = FractionalIdeal::unit(field);
        for f in &self.factors {
            let part = match f {
                RecipeFactor::Radical { p, exp } => {
                    FractionalIdeal::radical_power(field, *p, *exp)?
                }
                RecipeFactor::Principal { coeffs, exp } => {
                    let g = FieldElement::from_rationals(field, coeffs)?;
                    FractionalIdeal::principal(&g)?.pow(*exp)?
                }
            };
            acc = acc.mul(&part)?;
        }
        Ok(acc)
    }
}

fn fmt_exp(f: &mut fmt::Formatter<'_>, exp: i64) -> fmt::Result {
    if exp != 1 {
        write!(f, "^{exp}")?;
    }
    Ok(())
}

impl fmt::Display for IdealRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            match factor {
                RecipeFactor::Radical { p, exp } => {
                    write!(f, "P{p}")?;
                    fmt_exp(f, *exp)?;
                }
                RecipeFactor::Principal { coeffs, exp } => {
                    let parts: Vec<String> = coeffs.iter().map(ToString::to_string).collect();
                    write!(f, "({})", parts.join(","))?;
                    fmt_exp(f, *exp)?;
                }
            }
        }
        Ok(())
    }
}

impl FromStr for IdealRecipe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() || s == "1" {
            return Ok(IdealRecipe::unit());
        }
        let bad = |why: &str| Error::Spec(format!("malformed recipe '{s}': {why}"));
        let mut factors = Vec::new();
        let bytes = s.as_bytes();
        let mut i = 0;
        loop {
            let (base, next) = match bytes.get(i) {
                Some(b'P') => {
                    let end = s[i + 1..]
                        .find(|c: char| !c.is_ascii_digit())
                        .map_or(s.len(), |k| i + 1 + k);
                    let p: u64 = s[i + 1..end].parse().map_err(|_| bad("bad prime"))?;
                    (Err(p), end)
                }
                Some(b'(') => {
                    let end = s[i..].find(')').map(|k| i + k).ok_or_else(|| bad("unclosed '('"))?;
                    let coeffs = s[i + 1..end]
                        .split(',')
                        .map(|c| c.parse::<BigRational>().map_err(|_| bad("bad coefficient")))
                        .collect::<Result<Vec<_>>>()?;
                    (Ok(coeffs), end + 1)
                }
                _ => return Err(bad("expected 'P' or '('")),
            };
            i = next;
            let mut exp = 1i64;
            if bytes.get(i) == Some(&b'^') {
                let end = s[i + 1..].find('*').map_or(s.len(), |k| i + 1 + k);
                exp = s[i + 1..end].parse().map_err(|_| bad("bad exponent"))?;
                i = end;
            }
            if exp == 0 {
                return Err(bad("zero exponent"));
            }
            factors.push(match base {
                Err(p) => RecipeFactor::Radical { p, exp },
                Ok(coeffs) => RecipeFactor::Principal { coeffs, exp },
            });
            match bytes.get(i) {
                None => break,
                Some(b'*') => i += 1,
                Some(_) => return Err(bad("expected '*'")),
            }
        }
        Ok(IdealRecipe { factors })
    }
}
