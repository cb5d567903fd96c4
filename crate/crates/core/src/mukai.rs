//! The Mukai lattice `H*(M,ℤ) = H⁰ ⊕ H² ⊕ H⁴` of a K3 surface.
//!
//! Coordinates are flat 24-vectors: index 0 is the `H⁰` generator, indices
//! 1..=22 the `H²` basis ordered `U, U, U, E8(-1), E8(-1)`, and index 23 the
//! `H⁴` fundamental class. Inside each `U` the basis is `(e, f)` with
//! `e² = f² = 0`, `e·f = 1`. The `E8(-1)` blocks use Bourbaki numbering.
//!
//! The Mukai pairing is `⟨x, y⟩ = c_x·c_y − r_x s_y − s_x r_y`, so the
//! `H⁰ ⊕ H⁴` block has Gram `[[0,-1],[-1,0]]`. It is isomorphic to `U` via
//! `f ↦ -f`, but that change of basis is never applied implicitly.

use std::sync::OnceLock;

use num_traits::Zero;
use thiserror::Error;

use crate::matrix::IntMatrix;
use crate::scalar::{Coeff, Flavor, Int, Rat, RatModule, Scalar, CRat};

pub const RANK: usize = 24;
pub const H2_RANK: usize = 22;

/// Flat index of `H⁰`.
pub const IDX_H0: usize = 0;
/// Flat index of `H⁴`.
pub const IDX_H4: usize = 23;

/// Edges of the E8 Dynkin diagram, Bourbaki numbering (1-based).
pub const E8_EDGES: [(usize, usize); 7] = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)];

/// Flat index of `e_k` in the k-th hyperbolic plane (k = 1, 2, 3).
pub fn e(k: usize) -> usize {
    assert!((1..=3).contains(&k));
    2 * k - 1
}

/// Flat index of `f_k` in the k-th hyperbolic plane (k = 1, 2, 3).
pub fn f(k: usize) -> usize {
    assert!((1..=3).contains(&k));
    2 * k
}

/// Flat index of the i-th simple root (1-based, Bourbaki) of the `block`-th
/// `E8(-1)` summand (block = 1, 2).
pub fn e8_root(block: usize, i: usize) -> usize {
    assert!((1..=2).contains(&block) && (1..=8).contains(&i));
    6 + 8 * (block - 1) + i
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MukaiError {
    #[error("expected a vector of length {expected}, got {got}")]
    Length { expected: usize, got: usize },
    #[error("class has {found} coordinates where {wanted} were required")]
    Flavor { wanted: &'static str, found: &'static str },
}

/// Gram matrices of the K3 lattice and of the Mukai lattice.
#[derive(Debug)]
pub struct LatticeConstants {
    pub gram_h2: IntMatrix,
    pub gram_mukai: IntMatrix,
    /// Nonzero entries of `gram_h2` as `(i, j, value)` in `H²` indices.
    h2_entries: Vec<(usize, usize, i64)>,
}

pub fn e8_minus_gram() -> IntMatrix {
    let mut g = IntMatrix::zeros(8, 8);
    for i in 0..8 {
        g[(i, i)] = Int::from(-2);
    }
    for &(a, b) in &E8_EDGES {
        g[(a - 1, b - 1)] = Int::from(1);
        g[(b - 1, a - 1)] = Int::from(1);
    }
    g
}

fn build_constants() -> LatticeConstants {
    let mut h2 = IntMatrix::zeros(H2_RANK, H2_RANK);
    for k in 0..3 {
        h2[(2 * k, 2 * k + 1)] = Int::from(1);
        h2[(2 * k + 1, 2 * k)] = Int::from(1);
    }
    let e8 = e8_minus_gram();
    for block in 0..2 {
        let off = 6 + 8 * block;
        for i in 0..8 {
            for j in 0..8 {
                h2[(off + i, off + j)] = e8[(i, j)].clone();
            }
        }
    }
    let mut mukai = IntMatrix::zeros(RANK, RANK);
    for i in 0..H2_RANK {
        for j in 0..H2_RANK {
            mukai[(i + 1, j + 1)] = h2[(i, j)].clone();
        }
    }
    mukai[(IDX_H0, IDX_H4)] = Int::from(-1);
    mukai[(IDX_H4, IDX_H0)] = Int::from(-1);

    let mut h2_entries = Vec::new();
    for i in 0..H2_RANK {
        for j in 0..H2_RANK {
            if !h2[(i, j)].is_zero() {
                let v: i64 = i64::try_from(&h2[(i, j)]).expect("small Gram entry");
                h2_entries.push((i, j, v));
            }
        }
    }
    LatticeConstants { gram_h2: h2, gram_mukai: mukai, h2_entries }
}

pub fn constants() -> &'static LatticeConstants {
    static CONSTANTS: OnceLock<LatticeConstants> = OnceLock::new();
    CONSTANTS.get_or_init(build_constants)
}

pub fn gram_h2() -> &'static IntMatrix {
    &constants().gram_h2
}

pub fn gram_mukai() -> &'static IntMatrix {
    &constants().gram_mukai
}

/// A class `(r, c, s)` with `r ∈ H⁰`, `c ∈ H²` (22 coordinates), `s ∈ H⁴`.
/// The flavor is the coefficient ring `T`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedClass<T> {
    r: T,
    c: Vec<T>,
    s: T,
}

pub type IntClass = GradedClass<Int>;
pub type RatClass = GradedClass<Rat>;
pub type CClass = GradedClass<CRat>;

impl<T: Coeff> GradedClass<T> {
    pub fn new(r: T, c: Vec<T>, s: T) -> Result<Self, MukaiError> {
        if c.len() != H2_RANK {
            return Err(MukaiError::Length { expected: H2_RANK, got: c.len() });
        }
        Ok(GradedClass { r, c, s })
    }

    pub fn zero() -> Self {
        GradedClass { r: T::zero(), c: vec![T::zero(); H2_RANK], s: T::zero() }
    }

    /// The class `(0, c, 0)`.
    pub fn from_h2(c: Vec<T>) -> Result<Self, MukaiError> {
        Self::new(T::zero(), c, T::zero())
    }

    /// Unit vector at flat index `i`.
    pub fn unit(i: usize) -> Self {
        let mut v = vec![T::zero(); RANK];
        v[i] = T::one();
        Self::unflatten(v).expect("length 24")
    }

    pub fn r(&self) -> &T {
        &self.r
    }

    pub fn c(&self) -> &[T] {
        &self.c
    }

    pub fn s(&self) -> &T {
        &self.s
    }

    pub fn flavor(&self) -> Flavor {
        T::FLAVOR
    }

    pub fn into_parts(self) -> (T, Vec<T>, T) {
        (self.r, self.c, self.s)
    }

    /// Flat coordinates: index 0 ↔ r, 1..=22 ↔ c, 23 ↔ s.
    pub fn flatten(&self) -> Vec<T> {
        let mut v = Vec::with_capacity(RANK);
        v.push(self.r.clone());
        v.extend(self.c.iter().cloned());
        v.push(self.s.clone());
        v
    }

    pub fn unflatten(mut v: Vec<T>) -> Result<Self, MukaiError> {
        if v.len() != RANK {
            return Err(MukaiError::Length { expected: RANK, got: v.len() });
        }
        let s = v.pop().expect("nonempty");
        let c = v.split_off(1);
        let r = v.pop().expect("nonempty");
        Ok(GradedClass { r, c, s })
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.s.is_zero() && self.c.iter().all(Zero::is_zero)
    }

    pub fn map<U: Coeff>(&self, mut f: impl FnMut(&T) -> U) -> GradedClass<U> {
        GradedClass { r: f(&self.r), c: self.c.iter().map(&mut f).collect(), s: f(&self.s) }
    }

    pub fn zip_with(&self, other: &Self, mut f: impl FnMut(&T, &T) -> T) -> Self {
        GradedClass {
            r: f(&self.r, &other.r),
            c: self.c.iter().zip(&other.c).map(|(a, b)| f(a, b)).collect(),
            s: f(&self.s, &other.s),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a.clone())
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|a| k.clone() * a.clone())
    }

    /// Coordinatewise complex conjugation.
    pub fn conjugate(&self) -> Self {
        self.map(Coeff::conj)
    }

    pub fn to_complex(&self) -> CClass {
        self.map(Coeff::to_crat)
    }
}

impl<T: RatModule> GradedClass<T> {
    pub fn scale_rat(&self, q: &Rat) -> Self {
        self.map(|a| a.scale(q))
    }
}

impl IntClass {
    pub fn from_i64(r: i64, c: &[i64], s: i64) -> Result<Self, MukaiError> {
        Self::new(Int::from(r), c.iter().map(|&x| Int::from(x)).collect(), Int::from(s))
    }

    pub fn to_rat(&self) -> RatClass {
        self.map(crate::scalar::rat_from_int)
    }
}

impl RatClass {
    pub fn to_int(&self) -> Option<IntClass> {
        if self.flatten().iter().all(|q| q.is_integer()) {
            Some(self.map(|q| q.to_integer()))
        } else {
            None
        }
    }
}

impl CClass {
    pub fn re(&self) -> RatClass {
        self.map(|z| z.re.clone())
    }

    pub fn im(&self) -> RatClass {
        self.map(|z| z.im.clone())
    }

    /// `re + i·im`.
    pub fn from_re_im(re: &RatClass, im: &RatClass) -> CClass {
        let mut v = Vec::with_capacity(RANK);
        for (a, b) in re.flatten().into_iter().zip(im.flatten()) {
            v.push(CRat::new(a, b));
        }
        CClass::unflatten(v).expect("length 24")
    }

    pub fn is_real(&self) -> bool {
        self.flatten().iter().all(CRat::is_real)
    }
}

/// `c_x · c_y` with the `U³ ⊕ E8(-1)²` Gram.
pub fn h2_dot<T: Coeff>(x: &[T], y: &[T]) -> T {
    debug_assert_eq!(x.len(), H2_RANK);
    debug_assert_eq!(y.len(), H2_RANK);
    T::weighted_dot(x, y, &constants().h2_entries)
}

/// `c²` for an `H²` vector.
pub fn h2_square<T: Coeff>(x: &[T]) -> T {
    h2_dot(x, x)
}

/// The Mukai pairing `⟨x, y⟩ = c_x·c_y − r_x s_y − s_x r_y`. Bilinear and
/// symmetric (no conjugation).
pub fn mukai_pair<T: Coeff>(x: &GradedClass<T>, y: &GradedClass<T>) -> T {
    h2_dot(&x.c, &y.c) - x.r.clone() * y.s.clone() - x.s.clone() * y.r.clone()
}

/// Mukai pairing on flat 24-vectors.
pub fn mukai_pair_flat<T: Coeff>(x: &[T], y: &[T]) -> T {
    assert_eq!(x.len(), RANK);
    assert_eq!(y.len(), RANK);
    h2_dot(&x[1..23], &y[1..23]) - x[0].clone() * y[23].clone() - x[23].clone() * y[0].clone()
}

pub fn conjugate<T: Coeff>(x: &GradedClass<T>) -> GradedClass<T> {
    x.conjugate()
}

pub fn flatten<T: Coeff>(x: &GradedClass<T>) -> Vec<T> {
    x.flatten()
}

pub fn unflatten<T: Coeff>(v: Vec<T>) -> Result<GradedClass<T>, MukaiError> {
    GradedClass::unflatten(v)
}

/// A class whose flavor is only known at run time (JSON input).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyClass {
    Int(IntClass),
    Rat(RatClass),
    Complex(CClass),
}

impl AnyClass {
    pub fn flavor(&self) -> Flavor {
        match self {
            AnyClass::Int(_) => Flavor::Int,
            AnyClass::Rat(_) => Flavor::Rat,
            AnyClass::Complex(_) => Flavor::Complex,
        }
    }

    pub fn to_complex(&self) -> CClass {
        match self {
            AnyClass::Int(x) => x.to_complex(),
            AnyClass::Rat(x) => x.to_complex(),
            AnyClass::Complex(x) => x.clone(),
        }
    }

    pub fn to_rat(&self) -> Option<RatClass> {
        match self {
            AnyClass::Int(x) => Some(x.to_rat()),
            AnyClass::Rat(x) => Some(x.clone()),
            AnyClass::Complex(x) if x.is_real() => Some(x.re()),
            AnyClass::Complex(_) => None,
        }
    }

    pub fn to_int(&self) -> Option<IntClass> {
        match self {
            AnyClass::Int(x) => Some(x.clone()),
            other => other.to_rat().and_then(|q| q.to_int()),
        }
    }

    /// Mukai pairing after promotion to the larger of the two flavors.
    pub fn pair(&self, other: &AnyClass) -> Scalar {
        match self.flavor().max(other.flavor()) {
            Flavor::Int => {
                Scalar::Int(mukai_pair(&self.to_int().expect("int"), &other.to_int().expect("int")))
            }
            Flavor::Rat => {
                Scalar::Rat(mukai_pair(&self.to_rat().expect("rat"), &other.to_rat().expect("rat")))
            }
            Flavor::Complex => Scalar::CRat(mukai_pair(&self.to_complex(), &other.to_complex())),
        }
    }
}
