//! Reduction of a positive four-space to `exp(B′)·(P_σ ⊕ P_exp(iω))`.
//!
//! `Π ∩ H²` has dimension at least two because `H⁰ ⊕ H⁴` is only two
//! dimensional. Taking `H` inside it, the complement `H^⊥ ∩ Π` contains a
//! vector `w₀ = (0, w, s₀)` and, when it leaves `H² ⊕ H⁴`, a unique vector
//! `w₁ = (1, B′, s₁)` orthogonal to `w₀`. Orthogonality gives `s₀ = B′·w`,
//! so `exp(−B′)` sends `w₀ ↦ (0, w, 0)` and `w₁ ↦ (1, 0, −t²w²/2)` where
//! `t² = w₁²/w₀²`: the plane of `exp(i·t·w)`.

use num_traits::{One, Zero};

use super::plane::{FourSpace, PositivePlane};
use super::{bfield_transform, GcyError};
use crate::lattice::field::nullspace;
use crate::matrix::RatMatrix;
use crate::mukai::{h2_dot, mukai_pair_flat, RatClass, H2_RANK, IDX_H0, IDX_H4, RANK};
use crate::scalar::{rat, rational_sqrt, CRat, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalReduction {
    /// Positive plane inside `span(Π) ∩ H²`, as 24-vectors.
    pub h: PositivePlane,
    /// `u + i·√d·v` on `H` when `d` is a rational square (22 coordinates).
    pub sigma_if_rational: Option<Vec<CRat>>,
    /// Orthogonal complement of `H` in `Π`.
    pub complement: PositivePlane,
    /// Set when the complement lies in `H² ⊕ H⁴`, where no `exp(B′ + iω)`
    /// form exists.
    pub complex_type_complement: bool,
    pub b_prime: Option<Vec<Rat>>,
    /// Direction `w` of the untwisted symplectic class, `ω = t·w`.
    pub omega_direction: Option<Vec<Rat>>,
    /// `t² = ω² / w²`.
    pub omega_scale_sq: Option<Rat>,
    /// `ω = t·w` when `t` is rational.
    pub omega_if_rational: Option<Vec<Rat>>,
}

impl ClassicalReduction {
    /// `exp(B′)·(H ⊕ P_exp(iω))`, the four-space the reduction describes.
    pub fn reassemble(&self) -> Option<FourSpace> {
        let b = self.b_prime.as_ref()?;
        let [cu, cv] = self.classical_plane()?;
        let untwisted = FourSpace::new([self.h.u().to_vec(), self.h.v().to_vec(), cu, cv]).ok()?;
        untwisted.bfield(b).ok()
    }

    /// Rational basis `(1, 0, −t²w²/2)`, `(0, w, 0)` of the classical plane.
    pub fn classical_plane(&self) -> Option<[Vec<Rat>; 2]> {
        let w = self.omega_direction.as_ref()?;
        let t2 = self.omega_scale_sq.as_ref()?;
        let mut cu = vec![Rat::zero(); RANK];
        cu[IDX_H0] = Rat::one();
        cu[IDX_H4] = -(t2 * h2_dot(w, w)) * rat(1, 2);
        let mut cv = vec![Rat::zero(); RANK];
        cv[1..=H2_RANK].clone_from_slice(w);
        Some([cu, cv])
    }
}

fn bfield_flat(b: &[Rat], x: &[Rat]) -> Vec<Rat> {
    bfield_transform(b, &RatClass::unflatten(x.to_vec()).expect("24")).expect("22 coordinates").flatten()
}

fn combine(coeffs: &[Rat], rows: &[Vec<Rat>]) -> Vec<Rat> {
    (0..RANK)
        .map(|j| coeffs.iter().zip(rows).fold(Rat::zero(), |acc, (a, r)| acc + a * &r[j]))
        .collect()
}

fn axpy(a: &Rat, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
    x.iter().zip(y).map(|(p, q)| a * p + q).collect()
}

pub fn classical_reduction(pi: &FourSpace) -> Result<ClassicalReduction, GcyError> {
    let basis = pi.basis();
    let h2_part = pi.span().intersect_coordinates(&(1..=H2_RANK).collect::<Vec<_>>());
    if h2_part.rank() < 2 {
        return Err(GcyError::Internal("four-space meets H^2 in less than a plane"));
    }
    let rows = h2_part.rows();
    let to_rat = |v: &Vec<crate::scalar::Int>| v.iter().map(|x| Rat::from_integer(x.clone())).collect::<Vec<_>>();
    let h = PositivePlane::from_span(to_rat(&rows[0]), to_rat(&rows[1]))
        .map_err(|_| GcyError::Internal("H is not a positive plane"))?;
    let sigma_if_rational = h.isotropic_generator().map(|g| g[1..=H2_RANK].to_vec());

    // coefficients a with Σ aᵢ⟨bᵢ, h⟩ = 0 for h ∈ {u_H, v_H}
    let cond = RatMatrix::from_fn(2, 4, |j, i| {
        let hj = if j == 0 { h.u() } else { h.v() };
        mukai_pair_flat(&basis[i], hj)
    });
    let ns = nullspace(&cond);
    if ns.len() != 2 {
        return Err(GcyError::Internal("complement of H in the four-space is not a plane"));
    }
    let p = combine(&ns[0], basis);
    let q = combine(&ns[1], basis);

    if p[IDX_H0].is_zero() && q[IDX_H0].is_zero() {
        let complement =
            PositivePlane::from_span(p, q).map_err(|_| GcyError::Internal("complement is not positive"))?;
        return Ok(ClassicalReduction {
            h,
            sigma_if_rational,
            complement,
            complex_type_complement: true,
            b_prime: None,
            omega_direction: None,
            omega_scale_sq: None,
            omega_if_rational: None,
        });
    }

    let (lead, other) = if !p[IDX_H0].is_zero() { (p, q) } else { (q, p) };
    let w1_raw: Vec<Rat> = lead.iter().map(|x| x / &lead[IDX_H0]).collect();
    let w0 = axpy(&-other[IDX_H0].clone(), &w1_raw, &other);
    let k = mukai_pair_flat(&w1_raw, &w0) / mukai_pair_flat(&w0, &w0);
    let w1 = axpy(&-k, &w0, &w1_raw);
    let complement = PositivePlane::new(w1.clone(), w0.clone())
        .map_err(|_| GcyError::Internal("complement basis is not an orthogonal positive pair"))?;

    let b_prime: Vec<Rat> = w1[1..=H2_RANK].to_vec();
    let w: Vec<Rat> = w0[1..=H2_RANK].to_vec();
    let t2 = complement.ratio_d().clone();
    let omega_if_rational = rational_sqrt(&t2).map(|t| w.iter().map(|x| x * &t).collect());

    let out = ClassicalReduction {
        h,
        sigma_if_rational,
        complement,
        complex_type_complement: false,
        b_prime: Some(b_prime.clone()),
        omega_direction: Some(w),
        omega_scale_sq: Some(t2),
        omega_if_rational,
    };

    let neg_b: Vec<Rat> = b_prime.iter().map(|x| -x).collect();
    let [cu, cv] = out.classical_plane().expect("symplectic complement");
    if bfield_flat(&neg_b, &w1) != cu || bfield_flat(&neg_b, &w0) != cv {
        return Err(GcyError::Internal("exp(-B') does not untwist the complement"));
    }
    let back = out.reassemble().ok_or(GcyError::Internal("reassembled space is not positive"))?;
    if !back.same_subspace(pi) {
        return Err(GcyError::Internal("reassembled four-space differs from the input"));
    }
    Ok(out)
}
