use std::fmt;

use num_traits::{One, Signed, Zero};

use super::hnf::{hnf, hnf_basis, hnf_rank, hnf_solve, smith_diagonal};
use super::LatticeError;
use crate::matrix::{IntMatrix, RatMatrix};
use crate::mukai::{gram_mukai, RANK};
use crate::scalar::{rat_from_int, Int, Rat};

/// A sublattice of `ℤ²⁴` stored as the nonzero rows of its canonical HNF.
///
/// Two sublattices are equal iff their bases are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Sublattice {
    basis: IntMatrix,
    saturated: bool,
}

impl fmt::Debug for Sublattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sublattice(rank {}, saturated {}) {:?}", self.rank(), self.saturated, self.basis)
    }
}

impl Sublattice {
    /// The lattice generated by the rows of `gens` (24 columns).
    pub fn from_generators(gens: &IntMatrix) -> Self {
        assert_eq!(gens.cols(), RANK, "sublattice generators must have 24 columns");
        let basis = hnf_basis(gens);
        let saturated = smith_diagonal(&basis).iter().all(One::is_one);
        Sublattice { basis, saturated }
    }

    pub fn from_rows(rows: Vec<Vec<Int>>) -> Self {
        Self::from_generators(&IntMatrix::from_rows(rows, RANK))
    }

    /// Builds from rows already known to be a canonical HNF basis, rejecting
    /// anything else.
    pub fn from_canonical_basis(basis: IntMatrix) -> Result<Self, LatticeError> {
        let l = Self::from_generators(&basis);
        if l.basis != basis {
            return Err(LatticeError::NotCanonical);
        }
        Ok(l)
    }

    pub fn full() -> Self {
        Sublattice { basis: IntMatrix::identity(RANK), saturated: true }
    }

    pub fn zero() -> Self {
        Sublattice { basis: IntMatrix::zeros(0, RANK), saturated: true }
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rows(&self) -> Vec<Vec<Int>> {
        self.basis.to_rows()
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        hnf_solve(&self.basis, v).is_some()
    }

    /// Integer coordinates of `v` in the HNF basis.
    pub fn coordinates(&self, v: &[Int]) -> Option<Vec<Int>> {
        hnf_solve(&self.basis, v)
    }

    pub fn is_sublattice_of(&self, other: &Sublattice) -> bool {
        (0..self.rank()).all(|i| other.contains(self.basis.row(i)))
    }

    /// `[other : self]` when `self ⊆ other` have equal rank.
    pub fn index_in(&self, other: &Sublattice) -> Option<Int> {
        if self.rank() != other.rank() {
            return None;
        }
        let coords: Option<Vec<Vec<Int>>> = (0..self.rank()).map(|i| other.coordinates(self.basis.row(i))).collect();
        let c = IntMatrix::from_rows(coords?, other.rank());
        Some(c.determinant().abs())
    }

    /// Gram matrix of the basis under the Mukai pairing.
    pub fn gram(&self) -> IntMatrix {
        let b = &self.basis;
        b.mul(gram_mukai()).mul(&b.transpose())
    }

    /// Sublattice of vectors supported on the given flat coordinates.
    pub fn intersect_coordinates(&self, keep: &[usize]) -> Sublattice {
        // coefficient vectors a with (aᵀB)_j = 0 for every dropped column j
        let drop: Vec<usize> = (0..RANK).filter(|j| !keep.contains(j)).collect();
        let k = self.rank();
        if k == 0 {
            return Sublattice::zero();
        }
        let cond = RatMatrix::from_fn(drop.len(), k, |r, i| rat_from_int(&self.basis[(i, drop[r])]));
        let coeffs = kernel_basis(&cond.clear_row_denominators());
        let gens: Vec<Vec<Int>> = coeffs
            .iter()
            .map(|a| (0..RANK).map(|j| (0..k).map(|i| &a[i] * &self.basis[(i, j)]).sum()).collect())
            .collect();
        Sublattice::from_rows(gens)
    }
}

/// A finite abelian group `ℤ/d₁ ⊕ … ⊕ ℤ/d_k` with `d₁ | … | d_k`, all `dᵢ ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<Int>,
}

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<Int>) -> Result<Self, LatticeError> {
        if factors.iter().any(|d| d < &Int::from(2)) {
            return Err(LatticeError::BadInvariantFactors);
        }
        if factors.windows(2).any(|w| !(&w[1] % &w[0]).is_zero()) {
            return Err(LatticeError::BadInvariantFactors);
        }
        Ok(FiniteAbelianGroup { invariant_factors: factors })
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup { invariant_factors: Vec::new() }
    }

    pub fn invariant_factors(&self) -> &[Int] {
        &self.invariant_factors
    }

    pub fn order(&self) -> Int {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }
}

/// Integer kernel basis `{v : A·v = 0}` of an integer matrix, as rows.
pub fn kernel_basis(a: &IntMatrix) -> Vec<Vec<Int>> {
    let n = a.cols();
    if a.rows() == 0 {
        return IntMatrix::identity(n).to_rows();
    }
    let (h, u) = hnf(&a.transpose());
    let r = hnf_rank(&h);
    (r..n).map(|i| u.row(i).to_vec()).collect()
}

/// The saturated lattice `{v ∈ ℤ²⁴ : A·v = 0}` for a rational matrix with
/// 24 columns. Rows are cleared of denominators first so the computation is
/// purely integral.
pub fn integer_kernel(a: &RatMatrix) -> Sublattice {
    assert_eq!(a.cols(), RANK, "integer_kernel expects 24 columns");
    let int = a.clear_row_denominators();
    let rows = kernel_basis(&int);
    let mut l = Sublattice::from_rows(rows);
    l.saturated = true;
    l
}

/// `span_ℚ(L) ∩ ℤ²⁴`, computed as a double kernel.
pub fn saturate(l: &Sublattice) -> Sublattice {
    if l.is_saturated() {
        return l.clone();
    }
    let perp = kernel_basis(l.basis());
    let m = IntMatrix::from_rows(perp, RANK).to_rat();
    integer_kernel(&m)
}

/// Saturated `{γ : ⟨γ, δ⟩ = 0 for all δ ∈ L}` under the Mukai pairing.
pub fn orth_complement(l: &Sublattice) -> Sublattice {
    let cond = l.basis().mul(gram_mukai());
    integer_kernel(&cond.to_rat())
}

/// The canonical saturated lattice of a rational subspace, given by spanning
/// rows. Equal subspaces give equal results.
pub fn rational_span(rows: &[Vec<Rat>]) -> Sublattice {
    if rows.is_empty() {
        return Sublattice::zero();
    }
    let m = RatMatrix::from_rows(rows.to_vec(), RANK).clear_row_denominators();
    saturate(&Sublattice::from_generators(&m))
}

/// Invariant factors of `L^∨ / L`, from the Smith form of the Gram matrix.
pub fn discriminant_group(l: &Sublattice) -> Result<FiniteAbelianGroup, LatticeError> {
    let g = l.gram();
    if g.rows() > 0 && g.determinant().is_zero() {
        return Err(LatticeError::DegenerateGram { rank: l.rank() });
    }
    let factors = smith_diagonal(&g).into_iter().map(|d| d.abs()).filter(|d| !d.is_one()).collect();
    FiniteAbelianGroup::new(factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mukai::{e, e8_root, f, IDX_H0, IDX_H4};

    fn unit(i: usize) -> Vec<Int> {
        let mut v = vec![Int::zero(); RANK];
        v[i] = Int::one();
        v
    }

    fn vec_from(pairs: &[(usize, i64)]) -> Vec<Int> {
        let mut v = vec![Int::zero(); RANK];
        for &(i, x) in pairs {
            v[i] += Int::from(x);
        }
        v
    }

    #[test]
    fn kernel_of_zero_is_everything() {
        let l = integer_kernel(&RatMatrix::zeros(1, RANK));
        assert_eq!(l, Sublattice::full());
        assert_eq!(l.rank(), 24);
    }

    #[test]
    fn kernel_of_full_rank_is_trivial() {
        let l = integer_kernel(&IntMatrix::identity(RANK).to_rat());
        assert_eq!(l.rank(), 0);
    }

    #[test]
    fn kernel_of_one_pairing_condition() {
        // ⟨·, (0, ω, 0)⟩ = 0 for ω = e1 + f1
        let omega = vec_from(&[(e(1), 1), (f(1), 1)]);
        let cond = IntMatrix::from_rows(vec![omega], RANK).mul(gram_mukai());
        let l = integer_kernel(&cond.to_rat());
        assert_eq!(l.rank(), 23);
        assert!(l.is_saturated());
        assert!(l.contains(&vec_from(&[(e(1), 1), (f(1), -1)])));
        assert!(!l.contains(&unit(e(1))));
    }

    #[test]
    fn saturation_examples() {
        let l = Sublattice::from_rows(vec![vec_from(&[(e(1), 2)])]);
        assert!(!l.is_saturated());
        assert_eq!(saturate(&l), Sublattice::from_rows(vec![unit(e(1))]));

        let l = Sublattice::from_rows(vec![vec_from(&[(e(1), 1), (f(1), 1)]), vec_from(&[(e(2), 2)])]);
        let s = saturate(&l);
        assert!(s.contains(&unit(e(2))));
        assert_eq!(s.rank(), 2);
        assert_eq!(l.index_in(&s), Some(Int::from(2)));

        let full = Sublattice::full();
        assert_eq!(saturate(&full), full);
    }

    #[test]
    fn complements() {
        assert_eq!(orth_complement(&Sublattice::full()).rank(), 0);
        let h0 = Sublattice::from_rows(vec![unit(IDX_H0)]);
        let c = orth_complement(&h0);
        assert_eq!(c.rank(), 23);
        // ⟨v, (1,0,0)⟩ = −v_s, so the complement is H⁰ ⊕ H²
        assert!(c.contains(&unit(IDX_H0)));
        assert!(!c.contains(&unit(IDX_H4)));
        let l = Sublattice::from_rows(vec![vec_from(&[(e(1), 2), (IDX_H4, 3)])]);
        assert_eq!(orth_complement(&orth_complement(&l)), saturate(&l));
    }

    #[test]
    fn discriminant_groups() {
        let e8: Vec<Vec<Int>> = (1..=8).map(|i| unit(e8_root(1, i))).collect();
        assert!(discriminant_group(&Sublattice::from_rows(e8)).unwrap().is_trivial());

        let root = Sublattice::from_rows(vec![unit(e8_root(2, 5))]);
        assert_eq!(discriminant_group(&root).unwrap().invariant_factors(), &[Int::from(2)]);

        // U ⊕ ⟨−4⟩ with (e2 − 2 f2)² = −4
        let l = Sublattice::from_rows(vec![unit(e(1)), unit(f(1)), vec_from(&[(e(2), 1), (f(2), -2)])]);
        assert_eq!(discriminant_group(&l).unwrap().invariant_factors(), &[Int::from(4)]);

        let null = Sublattice::from_rows(vec![unit(e(1))]);
        assert_eq!(discriminant_group(&null), Err(LatticeError::DegenerateGram { rank: 1 }));
    }

    #[test]
    fn coordinate_intersection() {
        let l = Sublattice::from_rows(vec![vec_from(&[(IDX_H0, 1), (e(1), 1)]), unit(f(1)), unit(IDX_H4)]);
        let h2 = l.intersect_coordinates(&(1..23).collect::<Vec<_>>());
        assert_eq!(h2, Sublattice::from_rows(vec![unit(f(1))]));
    }

    #[test]
    fn rational_span_is_canonical() {
        let a = vec![vec![Rat::new(1.into(), 2.into()); RANK]];
        let b = vec![vec![Rat::from_integer((-3).into()); RANK]];
        assert_eq!(rational_span(&a), rational_span(&b));
    }

    #[test]
    fn invariant_factor_validation() {
        assert!(FiniteAbelianGroup::new(vec![Int::from(2), Int::from(3)]).is_err());
        assert!(FiniteAbelianGroup::new(vec![Int::from(1)]).is_err());
        assert_eq!(FiniteAbelianGroup::new(vec![Int::from(2), Int::from(4)]).unwrap().order(), Int::from(8));
    }
}
