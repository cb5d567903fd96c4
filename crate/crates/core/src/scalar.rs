//! Exact scalars: arbitrary-precision integers, reduced rationals and
//! Gaussian rationals `re + i·im`.
//!
//! Every coefficient in the crate lives in one of these three rings. The
//! [`Coeff`] trait is the common ring interface used by the graded classes and
//! matrices; [`Field`] adds exact division for the two fields.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

/// Builds the rational `n/d`. Panics on a zero denominator.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_from_int(n: &Int) -> Rat {
    Rat::from_integer(n.clone())
}

/// Gaussian rational `re + i·im`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CRat {
    pub re: Rat,
    pub im: Rat,
}

impl CRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        CRat { re, im }
    }

    pub fn real(re: Rat) -> Self {
        CRat { re, im: Rat::zero() }
    }

    pub fn imag(im: Rat) -> Self {
        CRat { re: Rat::zero(), im }
    }

    pub fn i() -> Self {
        CRat::imag(Rat::one())
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        CRat::new(rat(re, 1), rat(im, 1))
    }

    pub fn conj(&self) -> Self {
        CRat { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// `|z|² = re² + im²`.
    pub fn norm_sqr(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, q: &Rat) -> Self {
        CRat { re: &self.re * q, im: &self.im * q }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(CRat { re: &self.re / &n, im: -&self.im / &n })
    }
}

impl fmt::Display for CRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Add for CRat {
    type Output = CRat;
    fn add(self, o: CRat) -> CRat {
        CRat { re: self.re + o.re, im: self.im + o.im }
    }
}

impl<'a> Add<&'a CRat> for &'a CRat {
    type Output = CRat;
    fn add(self, o: &CRat) -> CRat {
        CRat { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub for CRat {
    type Output = CRat;
    fn sub(self, o: CRat) -> CRat {
        CRat { re: self.re - o.re, im: self.im - o.im }
    }
}

impl<'a> Sub<&'a CRat> for &'a CRat {
    type Output = CRat;
    fn sub(self, o: &CRat) -> CRat {
        CRat { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Mul for CRat {
    type Output = CRat;
    fn mul(self, o: CRat) -> CRat {
        &self * &o
    }
}

impl<'a> Mul<&'a CRat> for &'a CRat {
    type Output = CRat;
    fn mul(self, o: &CRat) -> CRat {
        CRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Div for CRat {
    type Output = CRat;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: CRat) -> CRat {
        self * o.inv().expect("division by zero Gaussian rational")
    }
}

impl Neg for CRat {
    type Output = CRat;
    fn neg(self) -> CRat {
        CRat { re: -self.re, im: -self.im }
    }
}

impl AddAssign for CRat {
    fn add_assign(&mut self, o: CRat) {
        self.re += o.re;
        self.im += o.im;
    }
}

impl SubAssign for CRat {
    fn sub_assign(&mut self, o: CRat) {
        self.re -= o.re;
        self.im -= o.im;
    }
}

impl Zero for CRat {
    fn zero() -> Self {
        CRat::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for CRat {
    fn one() -> Self {
        CRat::real(Rat::one())
    }
}

impl From<Rat> for CRat {
    fn from(q: Rat) -> Self {
        CRat::real(q)
    }
}

impl From<Int> for CRat {
    fn from(n: Int) -> Self {
        CRat::real(Rat::from_integer(n))
    }
}

/// Ring interface shared by [`Int`], [`Rat`] and [`CRat`].
pub trait Coeff:
    Clone
    + fmt::Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const FLAVOR: Flavor;

    /// Complex conjugation; the identity on real rings.
    fn conj(&self) -> Self {
        self.clone()
    }

    fn to_crat(&self) -> CRat;

    /// `Σ g·x[i]·y[j]` over `(i, j, g)`.
    fn weighted_dot(x: &[Self], y: &[Self], entries: &[(usize, usize, i64)]) -> Self {
        let mut acc = Self::zero();
        for &(i, j, g) in entries {
            if x[i].is_zero() || y[j].is_zero() {
                continue;
            }
            let p = x[i].clone() * y[j].clone();
            acc = match g {
                1 => acc + p,
                -1 => acc - p,
                _ => acc + p * Self::from_i64(g),
            };
        }
        acc
    }

    fn from_i64(n: i64) -> Self;
}

/// Numerators of `v` over the common denominator `lcm`.
fn clear_denominators(v: &[Rat]) -> (Vec<Int>, Int) {
    let lcm = denominator_lcm(v);
    (v.iter().map(|q| q.numer() * (&lcm / q.denom())).collect(), lcm)
}

/// Rings that contain the rationals.
pub trait RatModule: Coeff {
    fn from_rat(q: Rat) -> Self;

    fn scale(&self, q: &Rat) -> Self {
        self.clone() * Self::from_rat(q.clone())
    }
}

/// Exact fields (division by nonzero elements).
pub trait Field: RatModule + Div<Output = Self> {}

impl Coeff for Int {
    const FLAVOR: Flavor = Flavor::Int;
    fn from_i64(n: i64) -> Self {
        Int::from(n)
    }
    fn to_crat(&self) -> CRat {
        CRat::real(rat_from_int(self))
    }
}

impl Coeff for Rat {
    const FLAVOR: Flavor = Flavor::Rat;
    fn from_i64(n: i64) -> Self {
        Rat::from_integer(n.into())
    }
    fn to_crat(&self) -> CRat {
        CRat::real(self.clone())
    }

    // one reduction instead of one per term
    fn weighted_dot(x: &[Self], y: &[Self], entries: &[(usize, usize, i64)]) -> Self {
        let (xn, xd) = clear_denominators(x);
        let (yn, yd) = clear_denominators(y);
        Rat::new(Int::weighted_dot(&xn, &yn, entries), xd * yd)
    }
}

impl Coeff for CRat {
    const FLAVOR: Flavor = Flavor::Complex;
    fn from_i64(n: i64) -> Self {
        CRat::from_ints(n, 0)
    }
    fn conj(&self) -> Self {
        CRat::conj(self)
    }
    fn to_crat(&self) -> CRat {
        self.clone()
    }
}

impl RatModule for Rat {
    fn from_rat(q: Rat) -> Self {
        q
    }
    fn scale(&self, q: &Rat) -> Self {
        self * q
    }
}

impl RatModule for CRat {
    fn from_rat(q: Rat) -> Self {
        CRat::real(q)
    }
    fn scale(&self, q: &Rat) -> Self {
        CRat::scale(self, q)
    }
}

impl Field for Rat {}
impl Field for CRat {}

/// Scalar flavor of a class, ordered by inclusion `Int ⊂ Rat ⊂ Complex`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flavor {
    Int,
    Rat,
    Complex,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::Int => "integer",
            Flavor::Rat => "rational",
            Flavor::Complex => "complex",
        }
    }

    pub fn parse(s: &str) -> Option<Flavor> {
        match s {
            "integer" | "int" => Some(Flavor::Int),
            "rational" | "rat" => Some(Flavor::Rat),
            "complex" | "gaussian" => Some(Flavor::Complex),
            _ => None,
        }
    }
}

/// A dynamically flavored scalar.
///
/// Equality is by value after promotion, so `Rat(1/2)` equals
/// `CRat(1/2 + 0i)`.
#[derive(Clone, Debug)]
pub enum Scalar {
    Int(Int),
    Rat(Rat),
    CRat(CRat),
}

impl Scalar {
    pub fn flavor(&self) -> Flavor {
        match self {
            Scalar::Int(_) => Flavor::Int,
            Scalar::Rat(_) => Flavor::Rat,
            Scalar::CRat(_) => Flavor::Complex,
        }
    }

    pub fn to_rat(&self) -> Option<Rat> {
        match self {
            Scalar::Int(n) => Some(rat_from_int(n)),
            Scalar::Rat(q) => Some(q.clone()),
            Scalar::CRat(z) if z.is_real() => Some(z.re.clone()),
            Scalar::CRat(_) => None,
        }
    }

    pub fn to_int(&self) -> Option<Int> {
        self.to_rat().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    pub fn to_crat(&self) -> CRat {
        match self {
            Scalar::Int(n) => n.to_crat(),
            Scalar::Rat(q) => q.to_crat(),
            Scalar::CRat(z) => z.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.to_crat().is_zero()
    }

    /// Smallest flavor that represents the value exactly.
    pub fn normalized(&self) -> Scalar {
        let z = self.to_crat();
        if !z.is_real() {
            Scalar::CRat(z)
        } else if z.re.is_integer() {
            Scalar::Int(z.re.to_integer())
        } else {
            Scalar::Rat(z.re)
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        self.to_crat() == other.to_crat()
    }
}

impl Eq for Scalar {}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(n) => write!(f, "{n}"),
            Scalar::Rat(q) => write!(f, "{q}"),
            Scalar::CRat(z) => write!(f, "{z}"),
        }
    }
}

impl From<Int> for Scalar {
    fn from(n: Int) -> Self {
        Scalar::Int(n)
    }
}

impl From<Rat> for Scalar {
    fn from(q: Rat) -> Self {
        Scalar::Rat(q)
    }
}

impl From<CRat> for Scalar {
    fn from(z: CRat) -> Self {
        Scalar::CRat(z)
    }
}

/// Least common multiple of the denominators of `qs` (1 for an empty slice).
pub fn denominator_lcm<'a>(qs: impl IntoIterator<Item = &'a Rat>) -> Int {
    use num_integer::Integer;
    qs.into_iter().fold(Int::one(), |acc, q| acc.lcm(q.denom()))
}

/// Whether `q` is the square of a rational; returns the nonnegative root.
pub fn rational_sqrt(q: &Rat) -> Option<Rat> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced() {
        let q = rat(6, -4);
        assert_eq!(q.numer(), &Int::from(-3));
        assert_eq!(q.denom(), &Int::from(2));
    }

    #[test]
    fn mixed_equality_promotes() {
        assert_eq!(Scalar::Rat(rat(1, 2)), Scalar::CRat(CRat::real(rat(1, 2))));
        assert_eq!(Scalar::Int(Int::from(3)), Scalar::Rat(rat(6, 2)));
        assert_ne!(Scalar::Int(Int::from(3)), Scalar::CRat(CRat::from_ints(3, 1)));
    }

    #[test]
    fn gaussian_arithmetic() {
        let a = CRat::from_ints(1, 2);
        let b = CRat::from_ints(3, -1);
        assert_eq!(&a * &b, CRat::from_ints(5, 5));
        assert_eq!((&a * &b) / b.clone(), a);
        assert_eq!(a.norm_sqr(), rat(5, 1));
        assert!(CRat::zero().inv().is_none());
        assert_eq!(CRat::i() * CRat::i(), -CRat::one());
    }

    #[test]
    fn rational_square_roots() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(1, 4)), Some(rat(1, 2)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
        assert_eq!(rational_sqrt(&rat(-1, 1)), None);
    }

    #[test]
    fn normalized_picks_smallest_flavor() {
        assert_eq!(Scalar::CRat(CRat::from_ints(4, 0)).normalized().flavor(), Flavor::Int);
        assert_eq!(Scalar::CRat(CRat::real(rat(1, 3))).normalized().flavor(), Flavor::Rat);
    }
}
