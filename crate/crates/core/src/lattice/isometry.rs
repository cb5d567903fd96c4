use num_traits::{One, Signed, Zero};

use super::LatticeError;
use crate::matrix::IntMatrix;
use crate::mukai::{gram_mukai, mukai_pair, GradedClass, IntClass, RANK};
use crate::scalar::{Coeff, Int, Rat};

/// An integral isometry of the Mukai lattice, acting on column vectors.
///
/// Only constructed through [`Isometry::new`], which checks `Mᵀ·G·M = G`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Isometry {
    matrix: IntMatrix,
}

pub fn is_isometry(m: &IntMatrix) -> bool {
    m.rows() == RANK
        && m.cols() == RANK
        && m.transpose().mul(gram_mukai()).mul(m) == *gram_mukai()
}

impl Isometry {
    pub fn new(m: IntMatrix) -> Result<Self, LatticeError> {
        if m.rows() != RANK || m.cols() != RANK {
            return Err(LatticeError::Shape { rows: m.rows(), cols: m.cols() });
        }
        if !is_isometry(&m) {
            return Err(LatticeError::NotIsometry);
        }
        debug_assert!(m.determinant().abs().is_one());
        Ok(Isometry { matrix: m })
    }

    pub fn identity() -> Self {
        Isometry { matrix: IntMatrix::identity(RANK) }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn determinant(&self) -> Int {
        self.matrix.determinant()
    }

    pub fn compose(&self, other: &Isometry) -> Isometry {
        Isometry { matrix: self.matrix.mul(&other.matrix) }
    }

    pub fn negate(&self) -> Isometry {
        Isometry { matrix: self.matrix.map(|x| -x.clone()) }
    }

    pub fn apply<T: Coeff + From<Int>>(&self, x: &GradedClass<T>) -> GradedClass<T> {
        apply_matrix(&self.matrix, x)
    }

    pub fn apply_rat(&self, v: &[Rat]) -> Vec<Rat> {
        self.matrix.to_rat().mul_vec(v)
    }

    pub fn apply_int(&self, v: &[Int]) -> Vec<Int> {
        self.matrix.mul_vec(v)
    }
}

fn apply_matrix<T: Coeff + From<Int>>(m: &IntMatrix, x: &GradedClass<T>) -> GradedClass<T> {
    let v = x.flatten();
    let out = (0..RANK)
        .map(|i| {
            (0..RANK).fold(T::zero(), |acc, j| {
                if m[(i, j)].is_zero() || v[j].is_zero() {
                    acc
                } else {
                    acc + T::from(m[(i, j)].clone()) * v[j].clone()
                }
            })
        })
        .collect();
    GradedClass::unflatten(out).expect("length 24")
}

/// Applies a raw matrix after verifying it is an isometry.
pub fn apply_isometry<T: Coeff + From<Int>>(m: &IntMatrix, x: &GradedClass<T>) -> Result<GradedClass<T>, LatticeError> {
    let iso = Isometry::new(m.clone())?;
    Ok(iso.apply(x))
}

/// Reflection `s_δ(x) = x + ⟨x, δ⟩·δ` in a (−2)-class.
pub fn reflection(delta: &IntClass) -> Result<Isometry, LatticeError> {
    let sq = mukai_pair(delta, delta);
    if sq != Int::from(-2) {
        return Err(LatticeError::NotMinusTwo(sq));
    }
    let d = delta.flatten();
    let gd = gram_mukai().mul_vec(&d);
    let m = IntMatrix::from_fn(RANK, RANK, |i, j| {
        let id = if i == j { Int::one() } else { Int::zero() };
        id + &d[i] * &gd[j]
    });
    Isometry::new(m)
}

/// The B-field transform `exp(B)` for an integral `B ∈ H²` as a lattice
/// isometry.
pub fn bfield_isometry(b: &[Int]) -> Result<Isometry, LatticeError> {
    use crate::mukai::{h2_dot, H2_RANK};
    if b.len() != H2_RANK {
        return Err(LatticeError::Shape { rows: b.len(), cols: 1 });
    }
    let half_sq = h2_dot(b, b) / Int::from(2);
    let gb: Vec<Int> = crate::mukai::gram_h2().mul_vec(b);
    // columns: images of the basis vectors
    let mut m = IntMatrix::identity(RANK);
    // e_0 ↦ (1, B, B²/2)
    for k in 0..H2_RANK {
        m[(k + 1, 0)] = b[k].clone();
    }
    m[(RANK - 1, 0)] = half_sq;
    // basis vector of H² ↦ (0, e_k, B·e_k)
    for k in 0..H2_RANK {
        m[(RANK - 1, k + 1)] = gb[k].clone();
    }
    Isometry::new(m)
}
