//! The hermitian Mukai form `H(x, y) = ⟨x, ȳ⟩`, its imaginary part `Ω`, and
//! tangent spaces of the period domain.
//!
//! Tangent vectors at `φ` are represented in the complement model: classes
//! `α` with `⟨α, φ⟩ = ⟨α, φ̄⟩ = 0`. `Ω` restricted there does not depend on
//! the choice of representative modulo `ℂφ` because `H(φ, α) = 0` for tangent
//! `α`; this is documented rather than checked at run time.

use num_traits::{Signed, Zero};

use crate::gcy::{exp_b_iomega, GcyClass};
use crate::lattice::field::{nullspace, rank};
use crate::lattice::{inertia, Inertia};
use crate::matrix::{Matrix, RatMatrix};
use crate::mukai::{gram_mukai, h2_dot, mukai_pair, CClass, H2_RANK, RANK};
use crate::scalar::{CRat, Rat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModuliError {
    #[error("<v, phi> = {0}, expected 0")]
    NotOrthogonal(CRat),
    #[error("not tangent: <alpha, phi> = {0}, <alpha, conj(phi)> = {1}")]
    NotTangent(CRat, CRat),
    #[error("omega^2 = {0} must be positive")]
    NotPositive(Rat),
    #[error("expected 22 coordinates, got {0}")]
    Length(usize),
}

/// `H(x, y) = ⟨x, ȳ⟩`; linear in `x`, conjugate-linear in `y`.
pub fn hermitian_h(x: &CClass, y: &CClass) -> CRat {
    mukai_pair(x, &y.conjugate())
}

/// `Ω(x, y) = Im H(x, y)`.
pub fn omega(x: &CClass, y: &CClass) -> Rat {
    hermitian_h(x, y).im
}

/// A tangent direction `α` at `φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentVector<'a> {
    alpha: CClass,
    base: &'a GcyClass,
}

impl<'a> TangentVector<'a> {
    pub fn new(alpha: CClass, base: &'a GcyClass) -> Result<Self, ModuliError> {
        let a = mukai_pair(&alpha, base.phi());
        let b = mukai_pair(&alpha, &base.phi().conjugate());
        if !a.is_zero() || !b.is_zero() {
            return Err(ModuliError::NotTangent(a, b));
        }
        Ok(TangentVector { alpha, base })
    }

    pub fn alpha(&self) -> &CClass {
        &self.alpha
    }

    pub fn base(&self) -> &GcyClass {
        self.base
    }
}

/// A basis of `{α : ⟨α, φ⟩ = ⟨α, φ̄⟩ = 0}` (22 complex dimensions).
pub fn tangent_basis(phi: &GcyClass) -> Vec<TangentVector<'_>> {
    let g = gram_mukai().map(|x| CRat::from(x.clone()));
    let rows = vec![g.mul_vec(&phi.phi().flatten()), g.mul_vec(&phi.phi().conjugate().flatten())];
    let m = Matrix::from_rows(rows, RANK);
    nullspace(&m)
        .into_iter()
        .map(|v| TangentVector::new(CClass::unflatten(v).expect("24"), phi).expect("kernel vectors are tangent"))
        .collect()
}

/// `Ω` on the real span of `{αₖ} ∪ {i·αₖ}` as a `2n × 2n` skew matrix.
pub fn realified_omega_gram(alphas: &[CClass]) -> RatMatrix {
    let i = CRat::i();
    let real: Vec<CClass> = alphas.iter().cloned().chain(alphas.iter().map(|a| a.scale(&i))).collect();
    let n = real.len();
    RatMatrix::from_fn(n, n, |a, b| omega(&real[a], &real[b]))
}

/// Rank of `Ω` on the realified tangent space at `φ` (44 when nondegenerate).
pub fn tangent_omega_rank(phi: &GcyClass) -> usize {
    let alphas: Vec<CClass> = tangent_basis(phi).into_iter().map(|t| t.alpha).collect();
    rank(&realified_omega_gram(&alphas))
}

/// Inertia of `Re H` on `ℂ²⁴ ≅ ℝ⁴⁸`; each hermitian sign appears twice.
pub fn realified_hermitian_inertia() -> Inertia {
    let g = gram_mukai().to_rat();
    // H(x, y) with x = a + ib, y = c + id has real part a·G·c + b·G·d
    let n = RANK;
    let m = RatMatrix::from_fn(2 * n, 2 * n, |i, j| {
        if (i < n) == (j < n) {
            g[(i % n, j % n)].clone()
        } else {
            Rat::zero()
        }
    });
    inertia(&m).expect("symmetric")
}

/// Hermitian signature `(p, q)` of `H` on `ℂ²⁴`.
pub fn hermitian_signature() -> (usize, usize) {
    let i = realified_hermitian_inertia();
    (i.plus / 2, i.minus / 2)
}

/// `v − (⟨v, φ̄⟩ / ⟨φ, φ̄⟩)·φ` for `v` with `⟨v, φ⟩ = 0`.
pub fn project_to_tangent<'a>(v: &CClass, phi: &'a GcyClass) -> Result<TangentVector<'a>, ModuliError> {
    let p = mukai_pair(v, phi.phi());
    if !p.is_zero() {
        return Err(ModuliError::NotOrthogonal(p));
    }
    let k = mukai_pair(v, &phi.phi().conjugate()).scale(&phi.norm().recip());
    let out = v.sub(&phi.phi().scale(&k));
    TangentVector::new(out, phi)
}

/// `α ↦ (0, iα, −α·ω)`, the derivative of `t ↦ exp(i(ω + tα))` at `t = 0`
/// up to the second-order term.
pub fn sympl_tangent_image(omega_form: &[Rat], alpha: &[Rat]) -> Result<CClass, ModuliError> {
    if omega_form.len() != H2_RANK {
        return Err(ModuliError::Length(omega_form.len()));
    }
    if alpha.len() != H2_RANK {
        return Err(ModuliError::Length(alpha.len()));
    }
    let c: Vec<CRat> = alpha.iter().map(|a| CRat::imag(a.clone())).collect();
    let s = CRat::real(-h2_dot(alpha, omega_form));
    Ok(CClass::new(CRat::zero(), c, s).expect("22 coordinates"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LagrangianReport {
    /// `Ω` vanishes on all pairs of raw images.
    pub raw: bool,
    /// `Ω` vanishes on all pairs of projected images.
    pub projected: bool,
}

impl LagrangianReport {
    pub fn holds(&self) -> bool {
        self.raw && self.projected
    }
}

fn omega_vanishes(vs: &[CClass]) -> bool {
    (0..vs.len()).all(|i| (i + 1..vs.len()).all(|j| omega(&vs[i], &vs[j]).is_zero()))
}

/// Checks that the images of `alphas` at `exp(iω)` are pairwise
/// `Ω`-orthogonal, both raw and after projection to the tangent model.
pub fn lagrangian_check(omega_form: &[Rat], alphas: &[Vec<Rat>]) -> Result<LagrangianReport, ModuliError> {
    if omega_form.len() != H2_RANK {
        return Err(ModuliError::Length(omega_form.len()));
    }
    let w2 = h2_dot(omega_form, omega_form);
    if !w2.is_positive() {
        return Err(ModuliError::NotPositive(w2));
    }
    let phi = crate::gcy::validate(&exp_b_iomega(&vec![Rat::zero(); H2_RANK], omega_form))
        .expect("exp(i omega) is valid when omega^2 > 0");
    let raw: Vec<CClass> = alphas.iter().map(|a| sympl_tangent_image(omega_form, a)).collect::<Result<_, _>>()?;
    let projected: Vec<CClass> = raw
        .iter()
        .map(|v| project_to_tangent(v, &phi).map(|t| t.alpha))
        .collect::<Result<_, _>>()?;
    Ok(LagrangianReport { raw: omega_vanishes(&raw), projected: omega_vanishes(&projected) })
}
