//! Ideal lattices `(I, b_α)` with `b_α(x, y) = Tr(α x ȳ)`.

mod enumerate;

pub use enumerate::{norm_counts, shortest};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::existence::ConstructionWitness;
use crate::field::{twisted_embedding, EmbeddingMatrix, Field, FieldElement};
use crate::ideal::FractionalIdeal;
use crate::linalg::{det_rational, is_positive_definite, invert, IntMatrix, RatMatrix};

#[derive(Clone, Debug)]
pub struct IdealLattice {
    ideal: FractionalIdeal,
    alpha: FieldElement,
    gram: RatMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeReport {
    pub dimension: usize,
    pub determinant: BigRational,
    pub integral: bool,
    pub even: bool,
    pub minimum: Option<BigRational>,
    pub kissing: Option<u64>,
    /// `(norm, number of vectors)` up to some bound, zero vector included.
    pub theta: Option<Vec<(BigRational, u64)>>,
    pub modular_level: Option<u64>,
    pub witness_checked: bool,
}

fn failure(clause: &str, detail: impl Into<String>) -> Error {
    Error::ModularityFailure { clause: clause.into(), detail: detail.into() }
}

impl IdealLattice {
    pub fn build(ideal: &FractionalIdeal, alpha: &FieldElement) -> Result<Self> {
        if ideal.field() != alpha.field() {
            return Err(Error::FieldMismatch);
        }
        if !alpha.is_totally_positive() {
            return Err(Error::Form("alpha is not totally positive".into()));
        }
        let gram = ideal.gram(alpha)?;
        if !is_positive_definite(&gram) {
            return Err(Error::Form("Gram matrix is not positive definite".into()));
        }
        Ok(IdealLattice { ideal: ideal.clone(), alpha: alpha.clone(), gram })
    }

    /// Lattice `(I, α)` of a construction witness.
    pub fn from_witness(field: &Field, w: &ConstructionWitness) -> Result<Self> {
        Self::build(&w.ideal.realize(field)?, &w.alpha)
    }

    pub fn field(&self) -> &Field {
        self.ideal.field()
    }

    pub fn ideal(&self) -> &FractionalIdeal {
        &self.ideal
    }

    pub fn alpha(&self) -> &FieldElement {
        &self.alpha
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    pub fn dimension(&self) -> usize {
        self.gram.rows()
    }

    pub fn determinant(&self) -> Result<BigRational> {
        det_rational(&self.gram)
    }

    pub fn integer_gram(&self) -> Option<IntMatrix> {
        self.gram.to_integer()
    }

    pub fn is_integral(&self) -> bool {
        self.integer_gram().is_some()
    }

    pub fn is_even(&self) -> bool {
        self.integer_gram()
            .is_some_and(|g| (0..g.rows()).all(|i| (&g[(i, i)] % 2u32).is_zero()))
    }

    /// Rows are the embedded HNF basis, scaled so that `M·Mᵀ ≈ gram`.
    pub fn generator_matrix(&self, precision: u32) -> Result<EmbeddingMatrix> {
        twisted_embedding(&self.ideal.basis(), &self.alpha, precision)
    }

    /// `(I*, α)` with `I* = {x : Tr(α x ȳ) ∈ Z for all y ∈ I}`.
    pub fn dual(&self) -> Result<Self> {
        let dual_ideal = self.ideal.trace_dual(&self.alpha)?;
        let out = Self::build(&dual_ideal, &self.alpha)?;
        // The dual basis G⁻¹·B spans I*; its HNF basis differs by an integral
        // unimodular T, and then gram(I*) = T·G⁻¹·Tᵀ.
        let ginv = invert(&self.gram)?;
        let dual_basis = &ginv * &self.ideal.basis_matrix();
        let t = &dual_ideal.basis_matrix() * &invert(&dual_basis)?;
        let ok = t.to_integer().is_some()
            && det_rational(&t)?.abs().is_one()
            && &(&t * &ginv) * &t.transpose() == out.gram;
        if !ok {
            return Err(Error::InternalInconsistency("dual Gram is not the inverse Gram".into()));
        }
        Ok(out)
    }

    /// Exact minimum and kissing number (both signs counted).
    pub fn minimum(&self) -> Result<(BigRational, u64)> {
        shortest(&self.gram)
    }

    /// Vector counts per norm up to `bound`.
    pub fn theta_prefix(&self, bound: &BigRational) -> Result<Vec<(BigRational, u64)>> {
        Ok(norm_counts(&self.gram, bound)?.into_iter().collect())
    }

    /// Structural report without enumeration.
    pub fn report(&self) -> Result<LatticeReport> {
        Ok(LatticeReport {
            dimension: self.dimension(),
            determinant: self.determinant()?,
            integral: self.is_integral(),
            even: self.is_even(),
            minimum: None,
            kissing: None,
            theta: None,
            modular_level: None,
            witness_checked: false,
        })
    }

    /// Checks Arakelov-modularity of level `w.level` by definition:
    /// (i) `ββ̄ = ℓ`; (ii) `β·I* = I`; (iii) `I ⊆ I*`; (iv) `det² = ℓ^deg`.
    pub fn verify_modularity(&self, w: &ConstructionWitness) -> Result<LatticeReport> {
        let field = self.field();
        if w.beta.field() != field || w.alpha.field() != field {
            return Err(Error::FieldMismatch);
        }
        if w.alpha != self.alpha {
            return Err(failure("ii", "witness alpha differs from the lattice form"));
        }
        let level = FieldElement::from_int(field, w.level as i64);
        if w.beta.is_zero() || &w.beta * &w.beta.conj() != level {
            return Err(failure("i", format!("beta * conj(beta) != {}", w.level)));
        }
        let dual = self.ideal.trace_dual(&self.alpha)?;
        if FractionalIdeal::principal(&w.beta)?.mul(&dual)? != self.ideal {
            return Err(failure("ii", "beta * I* != I"));
        }
        if !self.ideal.is_subset_of(&dual)? || !self.is_integral() {
            return Err(failure("iii", "lattice is not integral"));
        }
        let det = self.determinant()?;
        let want = BigInt::from(w.level).pow(self.dimension() as u32);
        if &det * &det != BigRational::from_integer(want) {
            return Err(failure("iv", format!("det {det} is not {}^(dim/2)", w.level)));
        }
        let mut report = self.report()?;
        report.modular_level = Some(w.level);
        report.witness_checked = true;
        Ok(report)
    }
}

impl LatticeReport {
    pub fn with_minimum(mut self, lat: &IdealLattice) -> Result<Self> {
        let (mu, kiss) = lat.minimum()?;
        self.minimum = Some(mu);
        self.kissing = Some(kiss);
        Ok(self)
    }

    pub fn with_theta(mut self, lat: &IdealLattice, bound: &BigRational) -> Result<Self> {
        self.theta = Some(lat.theta_prefix(bound)?);
        Ok(self)
    }
}
