//! Symbolic Mukai pairings of classes built from formal `H²` symbols.
//!
//! Pairings of such classes are quadratic forms in the symbols, i.e. linear
//! combinations of the dot products `X·Y`. This is used to expand the
//! orthogonality of the planes of `exp(iω)` and `exp(B′ + iω′)` into
//! conditions on `ω, B′, ω′`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::lattice::field::rank;
use crate::matrix::RatMatrix;
use crate::mukai::h2_dot;
use crate::scalar::{rat, CRat, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    Omega,
    BPrime,
    OmegaPrime,
}

impl Sym {
    pub const ALL: [Sym; 3] = [Sym::Omega, Sym::BPrime, Sym::OmegaPrime];

    pub fn name(self) -> &'static str {
        match self {
            Sym::Omega => "w",
            Sym::BPrime => "B'",
            Sym::OmegaPrime => "w'",
        }
    }
}

/// A linear combination of monomials `X·Y` (keys sorted, `X ≤ Y`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Quad<T> {
    terms: BTreeMap<(Sym, Sym), T>,
}

impl<T: Clone + Zero + PartialEq + std::ops::Add<Output = T>> Quad<T> {
    pub fn zero() -> Self {
        Quad { terms: BTreeMap::new() }
    }

    pub fn monomial(a: Sym, b: Sym, k: T) -> Self {
        let mut q = Self::zero();
        q.add_term(a, b, k);
        q
    }

    pub fn add_term(&mut self, a: Sym, b: Sym, k: T) {
        let key = if a <= b { (a, b) } else { (b, a) };
        let v = self.terms.remove(&key).unwrap_or_else(T::zero) + k;
        if !v.is_zero() {
            self.terms.insert(key, v);
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((a, b), k) in &other.terms {
            out.add_term(*a, *b, k.clone());
        }
        out
    }

    pub fn map<U: Clone + Zero + PartialEq + std::ops::Add<Output = U>>(&self, f: impl Fn(&T) -> U) -> Quad<U> {
        let mut out = Quad::zero();
        for ((a, b), k) in &self.terms {
            out.add_term(*a, *b, f(k));
        }
        out
    }

    pub fn coefficient(&self, a: Sym, b: Sym) -> T {
        let key = if a <= b { (a, b) } else { (b, a) };
        self.terms.get(&key).cloned().unwrap_or_else(T::zero)
    }
}

/// The six monomials in a fixed order.
pub fn monomials() -> Vec<(Sym, Sym)> {
    let mut out = Vec::new();
    for (i, &a) in Sym::ALL.iter().enumerate() {
        for &b in &Sym::ALL[i..] {
            out.push((a, b));
        }
    }
    out
}

impl Quad<Rat> {
    pub fn coordinates(&self) -> Vec<Rat> {
        monomials().into_iter().map(|(a, b)| self.coefficient(a, b)).collect()
    }

    /// Value at concrete `H²` vectors.
    pub fn evaluate(&self, values: &BTreeMap<Sym, Vec<Rat>>) -> Rat {
        self.terms.iter().fold(Rat::zero(), |acc, ((a, b), k)| acc + k * h2_dot(&values[a], &values[b]))
    }
}

impl fmt::Display for Quad<Rat> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, ((a, b), k)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({k})·{}·{}", a.name(), b.name())?;
        }
        Ok(())
    }
}

/// A class `(r, Σ kₓ·X, q)` with constant `r`, formal degree-2 part and a
/// quadratic degree-4 part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymClass<T> {
    pub r: T,
    pub c: BTreeMap<Sym, T>,
    pub s: Quad<T>,
}

impl SymClass<CRat> {
    /// `exp(z) = (1, z, z²/2)`.
    pub fn exp(z: &BTreeMap<Sym, CRat>) -> Self {
        let mut s = Quad::zero();
        for (a, ka) in z {
            for (b, kb) in z {
                s.add_term(*a, *b, (ka * kb).scale(&rat(1, 2)));
            }
        }
        SymClass { r: CRat::one(), c: z.clone(), s }
    }

    pub fn re(&self) -> SymClass<Rat> {
        SymClass {
            r: self.r.re.clone(),
            c: self.c.iter().map(|(k, v)| (*k, v.re.clone())).filter(|(_, v)| !v.is_zero()).collect(),
            s: self.s.map(|z| z.re.clone()),
        }
    }

    pub fn im(&self) -> SymClass<Rat> {
        SymClass {
            r: self.r.im.clone(),
            c: self.c.iter().map(|(k, v)| (*k, v.im.clone())).filter(|(_, v)| !v.is_zero()).collect(),
            s: self.s.map(|z| z.im.clone()),
        }
    }
}

/// `⟨x, y⟩ = c_x·c_y − r_x·s_y − s_x·r_y` as a quadratic form.
pub fn sym_pair(x: &SymClass<Rat>, y: &SymClass<Rat>) -> Quad<Rat> {
    let mut out = Quad::zero();
    for (a, ka) in &x.c {
        for (b, kb) in &y.c {
            out.add_term(*a, *b, ka * kb);
        }
    }
    let neg_rx = -x.r.clone();
    let neg_ry = -y.r.clone();
    out = out.plus(&y.s.map(|k| &neg_rx * k));
    out.plus(&x.s.map(|k| &neg_ry * k))
}

/// The four pairings `⟨u,u′⟩, ⟨u,v′⟩, ⟨v,u′⟩, ⟨v,v′⟩` between the planes of
/// `exp(iω)` and `exp(B′ + iω′)`.
pub fn orthogonality_pairings() -> [Quad<Rat>; 4] {
    let phi = SymClass::exp(&BTreeMap::from([(Sym::Omega, CRat::i())]));
    let psi = SymClass::exp(&BTreeMap::from([(Sym::BPrime, CRat::one()), (Sym::OmegaPrime, CRat::i())]));
    let (u, v) = (phi.re(), phi.im());
    let (up, vp) = (psi.re(), psi.im());
    [sym_pair(&u, &up), sym_pair(&u, &vp), sym_pair(&v, &up), sym_pair(&v, &vp)]
}

/// `{B′·ω, B′·ω′, ω·ω′, B′² − ω² − ω′²}`.
pub fn orthogonality_system() -> [Quad<Rat>; 4] {
    let one = Rat::one;
    let mut last = Quad::monomial(Sym::BPrime, Sym::BPrime, one());
    last.add_term(Sym::Omega, Sym::Omega, -one());
    last.add_term(Sym::OmegaPrime, Sym::OmegaPrime, -one());
    [
        Quad::monomial(Sym::BPrime, Sym::Omega, one()),
        Quad::monomial(Sym::BPrime, Sym::OmegaPrime, one()),
        Quad::monomial(Sym::Omega, Sym::OmegaPrime, one()),
        last,
    ]
}

/// Whether two finite families of forms cut out the same conditions, i.e.
/// span the same subspace of the six-dimensional space of forms.
pub fn same_linear_span(a: &[Quad<Rat>], b: &[Quad<Rat>]) -> bool {
    let rows = |qs: &[Quad<Rat>]| qs.iter().map(Quad::coordinates).collect::<Vec<_>>();
    let ra = rows(a);
    let rb = rows(b);
    let n = monomials().len();
    let r_a = rank(&RatMatrix::from_rows(ra.clone(), n));
    let r_b = rank(&RatMatrix::from_rows(rb.clone(), n));
    let r_ab = rank(&RatMatrix::from_rows(ra.into_iter().chain(rb).collect(), n));
    r_a == r_ab && r_b == r_ab
}
