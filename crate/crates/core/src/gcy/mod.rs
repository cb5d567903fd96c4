//! Generalized Calabi-Yau classes: validation, B-field transforms and
//! normal forms.

pub mod plane;
pub mod random;
pub mod reduction;
pub mod symbolic;

pub use plane::{
    four_space, is_hk_pair, plane_of, planes_orthogonal, FourSpace, GK3Pair, HkError, Orientation, PositivePlane,
};
pub use random::{random_gcy, GcyKind};
pub use reduction::{classical_reduction, ClassicalReduction};

use num_traits::{One, Signed, Zero};

use crate::mukai::{h2_dot, mukai_pair, CClass, GradedClass, RatClass, H2_RANK};
use crate::scalar::{rat, CRat, Rat, RatModule};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GcyError {
    #[error("isotropy violated: <phi, phi> = {0}, expected 0")]
    IsotropyViolation(CRat),
    #[error("positivity violated: <phi, conj(phi)> = {0}, expected a positive real")]
    PositivityViolation(CRat),
    #[error("B-field must have 22 coordinates, got {0}")]
    BFieldLength(usize),
    #[error("normal form invariant violated: {0}")]
    BadNormalForm(&'static str),
    #[error("internal consistency failure: {0}")]
    Internal(&'static str),
}

/// A class `φ` with `⟨φ, φ⟩ = 0` and `⟨φ, φ̄⟩ > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GcyClass {
    phi: CClass,
    norm: Rat,
}

pub fn validate(x: &CClass) -> Result<GcyClass, GcyError> {
    let sq = mukai_pair(x, x);
    if !sq.is_zero() {
        return Err(GcyError::IsotropyViolation(sq));
    }
    let n = mukai_pair(x, &x.conjugate());
    if !n.im.is_zero() || !n.re.is_positive() {
        return Err(GcyError::PositivityViolation(n));
    }
    Ok(GcyClass { phi: x.clone(), norm: n.re })
}

impl GcyClass {
    pub fn phi(&self) -> &CClass {
        &self.phi
    }

    /// Cached `⟨φ, φ̄⟩`.
    pub fn norm(&self) -> &Rat {
        &self.norm
    }

    pub fn into_class(self) -> CClass {
        self.phi
    }

    /// `λ·φ` for a nonzero scalar.
    pub fn scale(&self, lambda: &CRat) -> Option<GcyClass> {
        if lambda.is_zero() {
            return None;
        }
        Some(GcyClass { phi: self.phi.scale(lambda), norm: &self.norm * lambda.norm_sqr() })
    }

    pub fn bfield(&self, b: &[Rat]) -> Result<GcyClass, GcyError> {
        let phi = bfield_transform(b, &self.phi)?;
        debug_assert_eq!(mukai_pair(&phi, &phi.conjugate()).re, self.norm);
        Ok(GcyClass { phi, norm: self.norm.clone() })
    }

    pub fn is_symplectic_type(&self) -> bool {
        !self.phi.r().is_zero()
    }
}

/// `exp(B)·(r, c, s) = (r, c + r·B, s + B·c + r·B²/2)`.
pub fn bfield_transform<T: RatModule>(b: &[Rat], x: &GradedClass<T>) -> Result<GradedClass<T>, GcyError> {
    if b.len() != H2_RANK {
        return Err(GcyError::BFieldLength(b.len()));
    }
    let bt: Vec<T> = b.iter().map(|q| T::from_rat(q.clone())).collect();
    let r = x.r().clone();
    let c: Vec<T> = x.c().iter().zip(&bt).map(|(ci, bi)| ci.clone() + r.clone() * bi.clone()).collect();
    let half_b2 = h2_dot(b, b) * rat(1, 2);
    let s = x.s().clone() + h2_dot(&bt, x.c()) + r.clone() * T::from_rat(half_b2);
    Ok(GradedClass::new(r, c, s).expect("22 coordinates"))
}

/// `exp(z) = (1, z, z²/2)` for `z ∈ H² ⊗ ℚ(i)`.
pub fn exp_class(z: &[CRat]) -> CClass {
    let half = h2_dot(z, z).scale(&rat(1, 2));
    GradedClass::new(CRat::one(), z.to_vec(), half).expect("22 coordinates")
}

/// `exp(B + iω)`.
pub fn exp_b_iomega(b: &[Rat], omega: &[Rat]) -> CClass {
    let z: Vec<CRat> = b.iter().zip(omega).map(|(x, y)| CRat::new(x.clone(), y.clone())).collect();
    exp_class(&z)
}

/// The two normal forms of a generalized Calabi-Yau class.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NormalForm {
    /// `λ·exp(B + iω)` with `ω² > 0`.
    Symplectic { lambda: CRat, b: Vec<Rat>, omega: Vec<Rat> },
    /// `exp(B)·σ` with `σ² = 0`, `σ·σ̄ > 0`.
    Complex { sigma: Vec<CRat>, b: Vec<Rat> },
}

impl NormalForm {
    pub fn type_name(&self) -> &'static str {
        match self {
            NormalForm::Symplectic { .. } => "symplectic",
            NormalForm::Complex { .. } => "complex",
        }
    }

    pub fn b(&self) -> &[Rat] {
        match self {
            NormalForm::Symplectic { b, .. } | NormalForm::Complex { b, .. } => b,
        }
    }

    pub fn check_invariants(&self) -> Result<(), GcyError> {
        match self {
            NormalForm::Symplectic { lambda, b, omega } => {
                if b.len() != H2_RANK || omega.len() != H2_RANK {
                    return Err(GcyError::BadNormalForm("B and omega need 22 coordinates"));
                }
                if lambda.is_zero() {
                    return Err(GcyError::BadNormalForm("lambda must be nonzero"));
                }
                if !h2_dot(omega, omega).is_positive() {
                    return Err(GcyError::BadNormalForm("omega^2 must be positive"));
                }
            }
            NormalForm::Complex { sigma, b } => {
                if b.len() != H2_RANK || sigma.len() != H2_RANK {
                    return Err(GcyError::BadNormalForm("B and sigma need 22 coordinates"));
                }
                if !h2_dot(sigma, sigma).is_zero() {
                    return Err(GcyError::BadNormalForm("sigma^2 must vanish"));
                }
                let conj: Vec<CRat> = sigma.iter().map(CRat::conj).collect();
                if !h2_dot(sigma, &conj).re.is_positive() {
                    return Err(GcyError::BadNormalForm("sigma.conj(sigma) must be positive"));
                }
            }
        }
        Ok(())
    }

    /// The class described by the normal form.
    pub fn rebuild(&self) -> Result<GcyClass, GcyError> {
        self.check_invariants()?;
        let phi = match self {
            NormalForm::Symplectic { lambda, b, omega } => exp_b_iomega(b, omega).scale(lambda),
            NormalForm::Complex { sigma, b } => {
                bfield_transform(b, &CClass::from_h2(sigma.clone()).expect("22 coordinates"))?
            }
        };
        validate(&phi)
    }
}

pub fn classify(phi: &GcyClass) -> Result<NormalForm, GcyError> {
    let x = phi.phi();
    let r = x.r();
    let nf = if !r.is_zero() {
        let inv = r.inv().expect("nonzero");
        let z: Vec<CRat> = x.c().iter().map(|c| c * &inv).collect();
        // s = c²/(2r) follows from isotropy
        let expected_s = h2_dot(x.c(), x.c()) * inv.scale(&rat(1, 2));
        if &expected_s != x.s() {
            return Err(GcyError::Internal("degree-4 part inconsistent with isotropy"));
        }
        NormalForm::Symplectic {
            lambda: r.clone(),
            b: z.iter().map(|w| w.re.clone()).collect(),
            omega: z.iter().map(|w| w.im.clone()).collect(),
        }
    } else {
        let sigma = x.c().to_vec();
        let conj: Vec<CRat> = sigma.iter().map(CRat::conj).collect();
        let ss = h2_dot(&sigma, &conj).re;
        let lambda = x.s().scale(&ss.recip());
        // B = λσ̄ + λ̄σ = 2·Re(λσ̄)
        let b: Vec<Rat> = conj.iter().map(|z| (&lambda * z).re * Rat::from_integer(2.into())).collect();
        NormalForm::Complex { sigma, b }
    };
    nf.check_invariants().map_err(|_| GcyError::Internal("classification produced an invalid normal form"))?;
    Ok(nf)
}

/// Real and imaginary parts of a class as rational classes.
pub fn real_parts(x: &CClass) -> (RatClass, RatClass) {
    (x.re(), x.im())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mukai::{e, f};

    fn h2(pairs: &[(usize, i64)]) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); H2_RANK];
        for &(i, x) in pairs {
            v[i - 1] += Rat::from_integer(x.into());
        }
        v
    }

    fn complexify(v: &[Rat]) -> Vec<CRat> {
        v.iter().cloned().map(CRat::real).collect()
    }

    fn sigma0() -> Vec<CRat> {
        let u = h2(&[(e(1), 1), (f(1), 1)]);
        let v = h2(&[(e(2), 1), (f(2), 1)]);
        u.into_iter().zip(v).map(|(a, b)| CRat::new(a, b)).collect()
    }

    #[test]
    fn validates_exp_i_omega() {
        let omega = h2(&[(e(1), 1), (f(1), 1)]);
        let phi = exp_b_iomega(&vec![Rat::zero(); H2_RANK], &omega);
        assert_eq!(phi.s(), &CRat::from_ints(-1, 0));
        let g = validate(&phi).unwrap();
        assert_eq!(g.norm(), &rat(4, 1));
    }

    #[test]
    fn validates_sigma_class() {
        let x = CClass::from_h2(sigma0()).unwrap();
        assert_eq!(validate(&x).unwrap().norm(), &rat(4, 1));
    }

    #[test]
    fn real_isotropic_is_not_positive() {
        let x = CClass::unit(e(1));
        assert!(matches!(validate(&x), Err(GcyError::PositivityViolation(_))));
        let y = CClass::unit(0).add(&CClass::unit(23));
        assert!(matches!(validate(&y), Err(GcyError::IsotropyViolation(_))));
    }

    #[test]
    fn bfield_examples() {
        let zero = vec![Rat::zero(); H2_RANK];
        let x = RatClass::unit(5);
        assert_eq!(bfield_transform(&zero, &x).unwrap(), x);
        let b = h2(&[(e(1), 1)]);
        let y = RatClass::unit(f(1));
        let img = bfield_transform(&b, &y).unwrap();
        assert_eq!(img.s(), &rat(1, 1));
        let one = RatClass::unit(0);
        let img = bfield_transform(&b, &one).unwrap();
        assert_eq!(img.c(), &b[..]);
        assert_eq!(img.s(), &Rat::zero());
        assert!(bfield_transform(&b[..3], &one).is_err());
    }

    #[test]
    fn classify_scaled_exp() {
        let omega = h2(&[(e(1), 1), (f(1), 1)]);
        let c: Vec<CRat> = omega.iter().map(|w| CRat::imag(w * rat(2, 1))).collect();
        let phi = CClass::new(CRat::from_ints(2, 0), c, CRat::from_ints(-2, 0)).unwrap();
        let nf = classify(&validate(&phi).unwrap()).unwrap();
        assert_eq!(
            nf,
            NormalForm::Symplectic { lambda: CRat::from_ints(2, 0), b: vec![Rat::zero(); H2_RANK], omega }
        );
    }

    #[test]
    fn classify_complex_examples() {
        let phi = validate(&CClass::from_h2(sigma0()).unwrap()).unwrap();
        assert_eq!(classify(&phi).unwrap(), NormalForm::Complex { sigma: sigma0(), b: vec![Rat::zero(); H2_RANK] });

        let x = CClass::new(CRat::zero(), sigma0(), CRat::one()).unwrap();
        let phi = validate(&x).unwrap();
        let nf = classify(&phi).unwrap();
        let mut half = vec![Rat::zero(); H2_RANK];
        half[e(1) - 1] = rat(1, 2);
        half[f(1) - 1] = rat(1, 2);
        assert_eq!(nf.b(), &half[..]);
        assert_eq!(h2_dot(&complexify(&half), &sigma0()), CRat::one());
        assert_eq!(nf.rebuild().unwrap(), phi);
    }
}
