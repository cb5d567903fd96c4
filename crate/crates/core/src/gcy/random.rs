//! Deterministic random instances, seeded per call.

use num_traits::{One, Signed, Zero};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{bfield_transform, exp_b_iomega, validate, GcyClass};
use crate::mukai::{e, f, h2_dot, mukai_pair, CClass, IntClass, H2_RANK};
use crate::scalar::{CRat, Int, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GcyKind {
    Symplectic,
    Complex,
}

impl GcyKind {
    pub fn parse(s: &str) -> Option<GcyKind> {
        match s {
            "symplectic" => Some(GcyKind::Symplectic),
            "complex" => Some(GcyKind::Complex),
            _ => None,
        }
    }
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_int(rng: &mut impl Rng, bound: i64) -> Int {
    Int::from(rng.gen_range(-bound..=bound))
}

/// `p/q` with `|p| ≤ bound`, `1 ≤ q ≤ bound`.
pub fn random_rat(rng: &mut impl Rng, bound: i64) -> Rat {
    let p = rng.gen_range(-bound..=bound);
    let q = rng.gen_range(1..=bound.max(1));
    Rat::new(p.into(), q.into())
}

pub fn random_nonzero_rat(rng: &mut impl Rng, bound: i64) -> Rat {
    loop {
        let q = random_rat(rng, bound);
        if !q.is_zero() {
            return q;
        }
    }
}

pub fn random_nonzero_crat(rng: &mut impl Rng, bound: i64) -> CRat {
    loop {
        let z = CRat::new(random_rat(rng, bound), random_rat(rng, bound));
        if !z.is_zero() {
            return z;
        }
    }
}

/// A dense rational `H²` vector.
pub fn random_h2(rng: &mut impl Rng, bound: i64) -> Vec<Rat> {
    (0..H2_RANK).map(|_| random_rat(rng, bound)).collect()
}

/// A rational `H²` vector supported on at most `k` random coordinates.
pub fn random_sparse_h2(rng: &mut impl Rng, bound: i64, k: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); H2_RANK];
    let n = rng.gen_range(1..=k.min(H2_RANK));
    for i in sample(rng, H2_RANK, n) {
        v[i] = random_rat(rng, bound);
    }
    v
}

fn hyperbolic_sum(k: usize) -> Vec<Rat> {
    let mut h = vec![Rat::zero(); H2_RANK];
    h[e(k) - 1] = Rat::one();
    h[f(k) - 1] = Rat::one();
    h
}

/// A rational `ω` with `ω² > 0`: `x + c·(e₁ + f₁)` with `c = |x²| + |x·h| + 1`,
/// so `ω² ≥ 2c(c − |x·h|) − |x²| > 0`.
pub fn random_omega(rng: &mut impl Rng, bound: i64) -> Vec<Rat> {
    let x = random_sparse_h2(rng, bound, 8);
    let h = hyperbolic_sum(1);
    let c = h2_dot(&x, &x).abs() + h2_dot(&x, &h).abs() + Rat::one();
    let omega: Vec<Rat> = x.iter().zip(&h).map(|(a, b)| a + &c * b).collect();
    debug_assert!(h2_dot(&omega, &omega).is_positive());
    omega
}

/// A rational rotation of `ℝ³` from a nonzero integer quaternion.
fn random_rotation(rng: &mut impl Rng, bound: i64) -> [[Rat; 3]; 3] {
    let (a, b, c, d) = loop {
        let q: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-bound..=bound));
        if q.iter().any(|&x| x != 0) {
            break (q[0], q[1], q[2], q[3]);
        }
    };
    let n = a * a + b * b + c * c + d * d;
    let m = [
        [a * a + b * b - c * c - d * d, 2 * (b * c - a * d), 2 * (b * d + a * c)],
        [2 * (b * c + a * d), a * a - b * b + c * c - d * d, 2 * (c * d - a * b)],
        [2 * (b * d - a * c), 2 * (c * d + a * b), a * a - b * b - c * c + d * d],
    ];
    m.map(|row| row.map(|x| Rat::new(x.into(), n.into())))
}

/// An integral `H²` root (`δ² = −2`) found by rejection sampling over small
/// coordinates, with a simple root as fallback.
pub fn random_h2_root(rng: &mut impl Rng) -> Vec<Int> {
    for _ in 0..200 {
        let mut v = vec![Int::zero(); H2_RANK];
        let n = rng.gen_range(2..=8);
        for i in sample(rng, H2_RANK, n) {
            v[i] = random_int(rng, 1);
        }
        if h2_dot(&v, &v) == Int::from(-2) {
            return v;
        }
    }
    let mut v = vec![Int::zero(); H2_RANK];
    v[e(1) - 1] = Int::one();
    v[f(1) - 1] = -Int::one();
    v
}

/// A (−2)-class: `(r, c, (c² + 2)/(2r))` with `r = ±1`, or an `H²` root.
pub fn random_minus_two_class(rng: &mut impl Rng, bound: i64) -> IntClass {
    let x = if rng.gen_bool(0.5) {
        let r = if rng.gen_bool(0.5) { Int::one() } else { -Int::one() };
        let mut c = vec![Int::zero(); H2_RANK];
        let n = rng.gen_range(1..=6);
        for i in sample(rng, H2_RANK, n) {
            c[i] = random_int(rng, bound);
        }
        let s = (h2_dot(&c, &c) + Int::from(2)) / (Int::from(2) * &r);
        IntClass::new(r, c, s).expect("22 coordinates")
    } else {
        IntClass::from_h2(random_h2_root(rng)).expect("22 coordinates")
    };
    debug_assert_eq!(mukai_pair(&x, &x), Int::from(-2));
    x
}

/// A rotated orthogonal triple `(u, v, w)` with squares 2, moved by the
/// same root reflections.
fn random_triple(rng: &mut impl Rng, bound: i64) -> [Vec<Rat>; 3] {
    let rot = random_rotation(rng, bound.clamp(1, 20));
    let h: Vec<Vec<Rat>> = (1..=3).map(hyperbolic_sum).collect();
    let mut t: [Vec<Rat>; 3] = std::array::from_fn(|i| {
        (0..H2_RANK).map(|j| (0..3).fold(Rat::zero(), |acc, k| acc + &rot[i][k] * &h[k][j])).collect()
    });
    for _ in 0..rng.gen_range(0..=3) {
        let delta: Vec<Rat> = random_h2_root(rng).into_iter().map(Rat::from_integer).collect();
        for x in t.iter_mut() {
            let k = h2_dot(x, &delta);
            *x = x.iter().zip(&delta).map(|(a, b)| a + &k * b).collect();
        }
    }
    t
}

/// `σ = u + iv` with `u ⟂ v`, `u² = v² = 2`, moved by root reflections.
pub fn random_sigma(rng: &mut impl Rng, bound: i64) -> Vec<CRat> {
    let [u, v, _] = random_triple(rng, bound);
    u.into_iter().zip(v).map(|(a, b)| CRat::new(a, b)).collect()
}

/// An untwisted generalized K3 pair `((0, tσ, 0), exp(itω))` with `σ ⟂ ω`
/// and equal norms `4t²`.
pub fn random_classical_pair(rng: &mut impl Rng, bound: i64) -> (GcyClass, GcyClass) {
    let [u, v, w] = random_triple(rng, bound);
    let t = random_nonzero_rat(rng, bound.clamp(1, 5));
    let sigma: Vec<CRat> = u.iter().zip(&v).map(|(a, b)| CRat::new(a * &t, b * &t)).collect();
    let omega: Vec<Rat> = w.iter().map(|x| x * &t).collect();
    let phi = validate(&CClass::from_h2(sigma).expect("22 coordinates")).expect("sigma is a period");
    let phi_prime = validate(&exp_b_iomega(&vec![Rat::zero(); H2_RANK], &omega)).expect("omega^2 > 0");
    (phi, phi_prime)
}

pub fn random_gcy_with(rng: &mut impl Rng, kind: GcyKind, size_bound: i64) -> GcyClass {
    let bound = size_bound.max(1);
    let phi = match kind {
        GcyKind::Symplectic => {
            let omega = random_omega(rng, bound);
            let b = random_sparse_h2(rng, bound, 8);
            let lambda = random_nonzero_crat(rng, bound);
            exp_b_iomega(&b, &omega).scale(&lambda)
        }
        GcyKind::Complex => {
            let sigma = random_sigma(rng, bound);
            let lambda = random_nonzero_crat(rng, bound);
            let sigma: Vec<CRat> = sigma.iter().map(|z| z * &lambda).collect();
            let b = random_sparse_h2(rng, bound, 8);
            bfield_transform(&b, &CClass::from_h2(sigma).expect("22 coordinates")).expect("22 coordinates")
        }
    };
    validate(&phi).expect("generated classes are valid by construction")
}

/// Deterministic in `seed`.
pub fn random_gcy(seed: u64, kind: GcyKind, size_bound: i64) -> GcyClass {
    random_gcy_with(&mut rng_from_seed(seed), kind, size_bound)
}
