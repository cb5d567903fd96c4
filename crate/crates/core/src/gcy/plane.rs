//! Positive planes, generalized K3 pairs and positive four-spaces.

use num_traits::{Signed, Zero};

use super::{bfield_transform, GcyClass, GcyError};
use crate::lattice::field::solve_in_span;
use crate::lattice::{inertia, rational_span, Inertia, Sublattice};
use crate::matrix::RatMatrix;
use crate::mukai::{mukai_pair_flat, CClass, RatClass, RANK};
use crate::scalar::{rational_sqrt, CRat, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Same,
    Opposite,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PlaneError {
    #[error("plane vectors must have 24 coordinates")]
    Length,
    #[error("plane basis is not orthogonal: <u, v> = {0}")]
    NotOrthogonal(Rat),
    #[error("plane is not positive definite")]
    NotPositive,
}

/// An oriented positive 2-plane with orthogonal basis `(u, v)`,
/// `u² = ratio_d · v²`. It is the plane of the isotropic vector `u + i·t·v`
/// where `t² = ratio_d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PositivePlane {
    u: Vec<Rat>,
    v: Vec<Rat>,
    ratio_d: Rat,
}

impl PositivePlane {
    pub fn new(u: Vec<Rat>, v: Vec<Rat>) -> Result<Self, PlaneError> {
        if u.len() != RANK || v.len() != RANK {
            return Err(PlaneError::Length);
        }
        let uv = mukai_pair_flat(&u, &v);
        if !uv.is_zero() {
            return Err(PlaneError::NotOrthogonal(uv));
        }
        let uu = mukai_pair_flat(&u, &u);
        let vv = mukai_pair_flat(&v, &v);
        if !uu.is_positive() || !vv.is_positive() {
            return Err(PlaneError::NotPositive);
        }
        let ratio_d = uu / vv;
        Ok(PositivePlane { u, v, ratio_d })
    }

    /// Orthogonalizes `(a, b)` keeping `a` and the orientation.
    pub fn from_span(a: Vec<Rat>, b: Vec<Rat>) -> Result<Self, PlaneError> {
        if a.len() != RANK || b.len() != RANK {
            return Err(PlaneError::Length);
        }
        let aa = mukai_pair_flat(&a, &a);
        if !aa.is_positive() {
            return Err(PlaneError::NotPositive);
        }
        let k = mukai_pair_flat(&a, &b) / aa;
        let v: Vec<Rat> = b.iter().zip(&a).map(|(x, y)| x - &k * y).collect();
        Self::new(a, v)
    }

    pub fn u(&self) -> &[Rat] {
        &self.u
    }

    pub fn v(&self) -> &[Rat] {
        &self.v
    }

    pub fn ratio_d(&self) -> &Rat {
        &self.ratio_d
    }

    /// `u + i·t·v` when `t = √ratio_d` is rational.
    pub fn isotropic_generator(&self) -> Option<Vec<CRat>> {
        let t = rational_sqrt(&self.ratio_d)?;
        Some(self.u.iter().zip(&self.v).map(|(a, b)| CRat::new(a.clone(), b * &t)).collect())
    }

    /// Coordinates of `x` in the basis `(u, v)`, if `x` lies in the plane.
    pub fn coordinates(&self, x: &[Rat]) -> Option<(Rat, Rat)> {
        let c = solve_in_span(&[self.u.clone(), self.v.clone()], x)?;
        Some((c[0].clone(), c[1].clone()))
    }

    /// Orientation of `other` relative to `self`, or `None` if the planes
    /// differ. Orientation is the sign of the change-of-basis determinant.
    pub fn compare(&self, other: &PositivePlane) -> Option<Orientation> {
        let (a, b) = self.coordinates(&other.u)?;
        let (c, d) = self.coordinates(&other.v)?;
        let det = a * d - b * c;
        debug_assert!(!det.is_zero());
        Some(if det.is_positive() { Orientation::Same } else { Orientation::Opposite })
    }

    pub fn same_plane(&self, other: &PositivePlane) -> bool {
        self.compare(other).is_some()
    }

    pub fn bfield(&self, b: &[Rat]) -> Result<PositivePlane, GcyError> {
        let apply = |x: &[Rat]| -> Result<Vec<Rat>, GcyError> {
            Ok(bfield_transform(b, &RatClass::unflatten(x.to_vec()).expect("24"))?.flatten())
        };
        Ok(PositivePlane { u: apply(&self.u)?, v: apply(&self.v)?, ratio_d: self.ratio_d.clone() })
    }
}

/// `P_φ` spanned by `(Re φ, Im φ)`; isotropy forces `ratio_d = 1`.
pub fn plane_of(phi: &GcyClass) -> PositivePlane {
    let x = phi.phi();
    PositivePlane::new(x.re().flatten(), x.im().flatten()).expect("a valid class spans a positive plane")
}

/// The four cross pairings `⟨u,u′⟩, ⟨u,v′⟩, ⟨v,u′⟩, ⟨v,v′⟩`.
pub fn cross_pairings(p: &PositivePlane, q: &PositivePlane) -> [Rat; 4] {
    [
        mukai_pair_flat(&p.u, &q.u),
        mukai_pair_flat(&p.u, &q.v),
        mukai_pair_flat(&p.v, &q.u),
        mukai_pair_flat(&p.v, &q.v),
    ]
}

pub fn planes_orthogonal(p: &PositivePlane, q: &PositivePlane) -> bool {
    cross_pairings(p, q).iter().all(Zero::is_zero)
}

/// A generalized K3 pair: orthogonal planes and equal norms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GK3Pair {
    phi: GcyClass,
    phi_prime: GcyClass,
}

impl GK3Pair {
    pub fn phi(&self) -> &GcyClass {
        &self.phi
    }

    pub fn phi_prime(&self) -> &GcyClass {
        &self.phi_prime
    }

    pub fn bfield(&self, b: &[Rat]) -> Result<GK3Pair, GcyError> {
        Ok(GK3Pair { phi: self.phi.bfield(b)?, phi_prime: self.phi_prime.bfield(b)? })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a generalized K3 pair (planes orthogonal: {orthogonal}, norms equal: {norms_equal})")]
pub struct HkError {
    pub orthogonal: bool,
    pub norms_equal: bool,
    pub pairings: [Rat; 4],
    pub norms: (Rat, Rat),
}

pub fn is_hk_pair(phi: &GcyClass, phi_prime: &GcyClass) -> Result<GK3Pair, HkError> {
    let pairings = cross_pairings(&plane_of(phi), &plane_of(phi_prime));
    let orthogonal = pairings.iter().all(Zero::is_zero);
    let norms_equal = phi.norm() == phi_prime.norm();
    if orthogonal && norms_equal {
        Ok(GK3Pair { phi: phi.clone(), phi_prime: phi_prime.clone() })
    } else {
        Err(HkError { orthogonal, norms_equal, pairings, norms: (phi.norm().clone(), phi_prime.norm().clone()) })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FourSpaceError {
    #[error("four-space vectors must have 24 coordinates")]
    Length,
    #[error("Gram matrix is not positive definite (inertia {0:?})")]
    NotPositive(Inertia),
}

/// An ordered basis of a positive definite 4-space; the order is the
/// orientation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FourSpace {
    basis: [Vec<Rat>; 4],
}

impl FourSpace {
    pub fn new(basis: [Vec<Rat>; 4]) -> Result<Self, FourSpaceError> {
        if basis.iter().any(|b| b.len() != RANK) {
            return Err(FourSpaceError::Length);
        }
        let s = FourSpace { basis };
        let i = inertia(&s.gram()).expect("Gram matrices are symmetric");
        if i != Inertia::new(4, 0, 0) {
            return Err(FourSpaceError::NotPositive(i));
        }
        Ok(s)
    }

    pub fn basis(&self) -> &[Vec<Rat>; 4] {
        &self.basis
    }

    pub fn gram(&self) -> RatMatrix {
        RatMatrix::from_fn(4, 4, |i, j| mukai_pair_flat(&self.basis[i], &self.basis[j]))
    }

    /// The canonical saturated lattice of the underlying rational subspace.
    pub fn span(&self) -> Sublattice {
        rational_span(&self.basis)
    }

    pub fn same_subspace(&self, other: &FourSpace) -> bool {
        self.span() == other.span()
    }

    pub fn bfield(&self, b: &[Rat]) -> Result<FourSpace, GcyError> {
        let mut out: [Vec<Rat>; 4] = Default::default();
        for (o, x) in out.iter_mut().zip(&self.basis) {
            *o = bfield_transform(b, &RatClass::unflatten(x.clone()).expect("24"))?.flatten();
        }
        Ok(FourSpace { basis: out })
    }
}

/// `Π = P_φ ⊕ P_φ′` with basis `(Re φ, Im φ, Re φ′, Im φ′)`.
pub fn four_space(pair: &GK3Pair) -> FourSpace {
    let p = plane_of(&pair.phi);
    let q = plane_of(&pair.phi_prime);
    FourSpace::new([p.u, p.v, q.u, q.v]).expect("orthogonal positive planes span a positive 4-space")
}

/// Whether `x` is a nonzero complex multiple of `y`.
pub fn is_complex_multiple(x: &CClass, y: &CClass) -> bool {
    let a = x.flatten();
    let b = y.flatten();
    let Some(k) = b.iter().position(|z| !z.is_zero()) else {
        return false;
    };
    let lambda = a[k].clone() / b[k].clone();
    !lambda.is_zero() && a.iter().zip(&b).all(|(p, q)| *p == &lambda * q)
}
