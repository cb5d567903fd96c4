//! Picard, transcendental and twisted transcendental lattices of a
//! generalized Calabi-Yau class, the Brauer order of a rational B-field and
//! the η map.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::gcy::{bfield_transform, plane_of, validate, GcyClass, GcyError, Orientation};
use crate::lattice::field::solve_in_span;
use crate::lattice::hnf::{hnf_basis, hnf_solve};
use crate::lattice::{integer_kernel, kernel_basis, orth_complement, Isometry, Sublattice};
use crate::matrix::{IntMatrix, RatMatrix};
use crate::mukai::{gram_mukai, h2_dot, mukai_pair, CClass, IntClass, H2_RANK, IDX_H0, IDX_H4, RANK};
use crate::scalar::{denominator_lcm, CRat, Int, Rat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HodgeError {
    #[error("gamma.B = {0} is not an integer, so eta(gamma) is not integral")]
    NonIntegralImage(Rat),
    #[error("sigma is not a complex-type period: {0}")]
    NotAPeriod(GcyError),
    #[error("expected {expected} coordinates, got {got}")]
    Length { expected: usize, got: usize },
    #[error("lattice is not contained in the H^2 block")]
    NotInH2,
}

/// `pic(φ)` and `T(φ)` of a class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeData {
    pub phi: GcyClass,
    pub pic: Sublattice,
    pub transc: Sublattice,
}

impl HodgeData {
    pub fn new(phi: &GcyClass) -> Self {
        let pic = pic(phi);
        let transc = orth_complement(&pic);
        HodgeData { phi: phi.clone(), pic, transc }
    }
}

/// Integral classes pairing to zero with `Re φ` and `Im φ`.
pub fn pic(phi: &GcyClass) -> Sublattice {
    let p = plane_of(phi);
    let rows = RatMatrix::from_rows(vec![p.u().to_vec(), p.v().to_vec()], RANK);
    integer_kernel(&rows.mul(&gram_mukai().to_rat()))
}

pub fn transcendental(phi: &GcyClass) -> Sublattice {
    orth_complement(&pic(phi))
}

pub fn is_type_11(delta: &IntClass, phi: &GcyClass) -> bool {
    mukai_pair(&delta.to_complex(), phi.phi()).is_zero()
}

fn check_h2_len(v: usize) -> Result<(), HodgeError> {
    if v != H2_RANK {
        return Err(HodgeError::Length { expected: H2_RANK, got: v });
    }
    Ok(())
}

/// The complex-type class `(0, σ, 0)`, validated.
pub fn sigma_class(sigma: &[CRat]) -> Result<GcyClass, HodgeError> {
    check_h2_len(sigma.len())?;
    validate(&CClass::from_h2(sigma.to_vec()).expect("22 coordinates")).map_err(HodgeError::NotAPeriod)
}

/// Minimal `r ≥ 1` such that `r·B ∈ ℤ²² + (real (1,1)-classes)`.
///
/// With `σ = u + iv` this asks whether `(rB·u, rB·v)` lies in the image
/// lattice `Λ = {(λ·u, λ·v) : λ ∈ ℤ²²} ⊂ ℚ²`. The set of valid `r` is a
/// subgroup of `ℤ` containing the denominator lcm `D` of `B` (take
/// `λ = D·B`), so the minimum is the least valid divisor of `D`.
pub fn brauer_order(b: &[Rat], sigma: &[CRat]) -> Result<Int, HodgeError> {
    check_h2_len(b.len())?;
    sigma_class(sigma)?;
    let u: Vec<Rat> = sigma.iter().map(|z| z.re.clone()).collect();
    let v: Vec<Rat> = sigma.iter().map(|z| z.im.clone()).collect();
    let gh = crate::mukai::gram_h2().to_rat();
    let gu = gh.mul_vec(&u);
    let gv = gh.mul_vec(&v);
    let target = [h2_dot(b, &u), h2_dot(b, &v)];
    let d = denominator_lcm(b);
    let scale = denominator_lcm(gu.iter().chain(&gv).chain(&target)) * &d;
    let to_int = |q: &Rat| -> Int { (q * Rat::from_integer(scale.clone())).to_integer() };
    let gens = IntMatrix::from_fn(H2_RANK, 2, |k, j| to_int(if j == 0 { &gu[k] } else { &gv[k] }));
    let lambda = hnf_basis(&gens);
    let t = [to_int(&target[0]), to_int(&target[1])];
    for r in divisors(&d) {
        let rt = [&t[0] * &r, &t[1] * &r];
        if hnf_solve(&lambda, &rt).is_some() {
            return Ok(r);
        }
    }
    unreachable!("r = D always satisfies the membership test")
}

/// Positive divisors in increasing order.
fn divisors(n: &Int) -> Vec<Int> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = Int::one();
    while &k * &k <= *n {
        if n.is_multiple_of(&k) {
            small.push(k.clone());
            let q = n / &k;
            if q != k {
                large.push(q);
            }
        }
        k += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `{γ ∈ tx : γ·B ∈ ℤ}` for a lattice `tx` inside the `H²` block.
pub fn twisted_transcendental(tx: &Sublattice, b: &[Rat]) -> Result<Sublattice, HodgeError> {
    check_h2_len(b.len())?;
    let rows = tx.rows();
    if rows.iter().any(|g| !g[IDX_H0].is_zero() || !g[IDX_H4].is_zero()) {
        return Err(HodgeError::NotInH2);
    }
    let k = rows.len();
    let pairs: Vec<Rat> = rows
        .iter()
        .map(|g| {
            let gi: Vec<Rat> = g[1..=H2_RANK].iter().map(|x| Rat::from_integer(x.clone())).collect();
            h2_dot(&gi, b)
        })
        .collect();
    let d = denominator_lcm(&pairs);
    if d.is_one() {
        return Ok(tx.clone());
    }
    // Σ xᵢ (D nᵢ) + y·D = 0 describes Σ xᵢ nᵢ ∈ ℤ
    let mut cond: Vec<Int> = pairs.iter().map(|q| (q * Rat::from_integer(d.clone())).to_integer()).collect();
    cond.push(d);
    let ker = kernel_basis(&IntMatrix::from_rows(vec![cond], k + 1));
    let gens: Vec<Vec<Int>> = ker
        .iter()
        .map(|x| (0..RANK).map(|j| (0..k).map(|i| &x[i] * &rows[i][j]).sum()).collect())
        .collect();
    Ok(Sublattice::from_rows(gens))
}

/// `η(γ) = (0, γ, γ·B)`, defined when `γ·B ∈ ℤ`.
pub fn eta(gamma: &[Int], b: &[Rat]) -> Result<IntClass, HodgeError> {
    check_h2_len(gamma.len())?;
    check_h2_len(b.len())?;
    let g: Vec<Rat> = gamma.iter().map(|x| Rat::from_integer(x.clone())).collect();
    let s = h2_dot(&g, b);
    if !s.is_integer() {
        return Err(HodgeError::NonIntegralImage(s));
    }
    Ok(IntClass::new(Int::zero(), gamma.to_vec(), s.to_integer()).expect("22 coordinates"))
}

/// The Brauer-twist data of a complex-type period and a rational B-field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrauerData {
    pub sigma: Vec<CRat>,
    pub b: Vec<Rat>,
    pub order_r: Int,
    pub tx: Sublattice,
    pub tx_twisted: Sublattice,
}

impl BrauerData {
    pub fn new(sigma: &[CRat], b: &[Rat]) -> Result<Self, HodgeError> {
        let tx = untwisted_transcendental(sigma)?;
        let tx_twisted = twisted_transcendental(&tx, b)?;
        let order_r = brauer_order(b, sigma)?;
        Ok(BrauerData { sigma: sigma.to_vec(), b: b.to_vec(), order_r, tx, tx_twisted })
    }

    /// `[T(X) : T(X, α_B)]`.
    pub fn index(&self) -> Int {
        self.tx_twisted.index_in(&self.tx).expect("finite index sublattice")
    }
}

/// `T(X)`: the transcendental lattice of `(0, σ, 0)` inside the `H²` block.
pub fn untwisted_transcendental(sigma: &[CRat]) -> Result<Sublattice, HodgeError> {
    let phi = sigma_class(sigma)?;
    Ok(transcendental(&phi).intersect_coordinates(&(1..=H2_RANK).collect::<Vec<_>>()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaReport {
    /// `η(T(X, α_B)) = T(φ)` as canonical HNF matrices.
    pub eta_bijective: bool,
    /// Gram matrices agree under `η`.
    pub isometry: bool,
    /// `σ ∈ T(X, α_B) ⊗ ℂ`, `η_ℂ(σ) = φ` and `φ ∈ T(φ) ⊗ ℂ`.
    pub hodge: bool,
    pub index: Int,
    pub r: Int,
    pub brauer: BrauerData,
    pub t_phi: Sublattice,
    pub image: Sublattice,
}

impl EtaReport {
    pub fn passed(&self) -> bool {
        self.eta_bijective && self.isometry && self.hodge
    }
}

pub fn verify_eta_hodge_isometry(sigma: &[CRat], b: &[Rat]) -> Result<EtaReport, HodgeError> {
    let brauer = BrauerData::new(sigma, b)?;
    let sigma_cl = CClass::from_h2(sigma.to_vec()).expect("22 coordinates");
    let phi = validate(&bfield_transform(b, &sigma_cl).map_err(HodgeError::NotAPeriod)?)
        .map_err(HodgeError::NotAPeriod)?;
    let t_phi = transcendental(&phi);

    let twisted_rows = brauer.tx_twisted.rows();
    let images: Vec<IntClass> =
        twisted_rows.iter().map(|g| eta(&g[1..=H2_RANK], b)).collect::<Result<_, _>>()?;
    let image = Sublattice::from_rows(images.iter().map(IntClass::flatten).collect());
    let eta_bijective = image == t_phi;

    let k = twisted_rows.len();
    let src = brauer.tx_twisted.gram();
    let dst = IntMatrix::from_fn(k, k, |i, j| mukai_pair(&images[i], &images[j]));
    let isometry = src == dst;

    let to_c = |row: &Vec<Int>| -> Vec<CRat> { row.iter().map(|x| CRat::from(x.clone())).collect() };
    let twisted_c: Vec<Vec<CRat>> = twisted_rows.iter().map(to_c).collect();
    let hodge = match solve_in_span(&twisted_c, &sigma_cl.flatten()) {
        None => false,
        Some(coeffs) => {
            let mut img = vec![CRat::zero(); RANK];
            for (a, e) in coeffs.iter().zip(&images) {
                for (slot, x) in img.iter_mut().zip(e.flatten()) {
                    *slot += a * &CRat::from(x);
                }
            }
            let t_rows: Vec<Vec<CRat>> = t_phi.rows().iter().map(to_c).collect();
            img == phi.phi().flatten() && solve_in_span(&t_rows, &img).is_some()
        }
    };

    Ok(EtaReport {
        eta_bijective,
        isometry,
        hodge,
        index: brauer.index(),
        r: brauer.order_r.clone(),
        brauer,
        t_phi,
        image,
    })
}

/// Whether `g` maps `P_φ` onto `P_φ′` preserving orientation. For an
/// isometry this is equivalent to `g(φ) ∈ ℂ*·φ′`: the isotropic lines of
/// `P_φ′ ⊗ ℂ` are `ℂφ′` and `ℂφ̄′`, and orientation tells them apart.
pub fn is_hodge_isometry(g: &Isometry, phi: &GcyClass, phi_prime: &GcyClass) -> bool {
    hodge_orientation(g, phi, phi_prime) == Some(Orientation::Same)
}

/// Orientation-free variant: `g(φ) ∈ ℂ*·φ′ ∪ ℂ*·φ̄′`.
pub fn is_hodge_isometry_unoriented(g: &Isometry, phi: &GcyClass, phi_prime: &GcyClass) -> bool {
    hodge_orientation(g, phi, phi_prime).is_some()
}

fn hodge_orientation(g: &Isometry, phi: &GcyClass, phi_prime: &GcyClass) -> Option<Orientation> {
    let p = plane_of(phi);
    let moved = crate::gcy::PositivePlane::new(g.apply_rat(p.u()), g.apply_rat(p.v())).ok()?;
    plane_of(phi_prime).compare(&moved)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gcy::exp_b_iomega;
    use crate::lattice::reflection;
    use crate::mukai::{e, e8_root, f};
    use crate::scalar::rat;

    fn h2(pairs: &[(usize, Rat)]) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); H2_RANK];
        for (i, x) in pairs {
            v[i - 1] += x;
        }
        v
    }

    fn sigma0() -> Vec<CRat> {
        let mut s = vec![CRat::zero(); H2_RANK];
        s[e(1) - 1] = CRat::from_ints(1, 0);
        s[f(1) - 1] = CRat::from_ints(1, 0);
        s[e(2) - 1] = CRat::from_ints(0, 1);
        s[f(2) - 1] = CRat::from_ints(0, 1);
        s
    }

    fn unit24(pairs: &[(usize, i64)]) -> Vec<Int> {
        let mut v = vec![Int::zero(); RANK];
        for &(i, x) in pairs {
            v[i] += Int::from(x);
        }
        v
    }

    #[test]
    fn pic_of_sigma_class() {
        let phi = sigma_class(&sigma0()).unwrap();
        let p = pic(&phi);
        assert_eq!(p.rank(), 22);
        assert!(p.contains(&unit24(&[(IDX_H0, 1)])));
        assert!(p.contains(&unit24(&[(IDX_H4, 1)])));
        assert!(p.contains(&unit24(&[(e(1), 1), (f(1), -1)])));
        let t = transcendental(&phi);
        assert_eq!(t, Sublattice::from_rows(vec![unit24(&[(e(1), 1), (f(1), 1)]), unit24(&[(e(2), 1), (f(2), 1)])]));
        assert!(is_type_11(&IntClass::unit(IDX_H4), &phi));
        assert!(!is_type_11(&IntClass::unit(e(1)), &phi));
    }

    #[test]
    fn pic_of_exp_omega() {
        let omega = h2(&[(e(1), rat(1, 1)), (f(1), rat(1, 1))]);
        let phi = validate(&exp_b_iomega(&vec![Rat::zero(); H2_RANK], &omega)).unwrap();
        let p = pic(&phi);
        assert_eq!(p.rank(), 22);
        assert!(p.contains(&unit24(&[(IDX_H0, 1), (IDX_H4, 1)])));
        assert!(!p.contains(&unit24(&[(IDX_H0, 1)])));
        let scaled = phi.scale(&CRat::from_ints(3, -2)).unwrap();
        assert_eq!(pic(&scaled), p);
    }

    #[test]
    fn brauer_orders() {
        let s = sigma0();
        assert_eq!(brauer_order(&h2(&[(e(3), rat(3, 1))]), &s).unwrap(), Int::one());
        assert_eq!(brauer_order(&h2(&[(e(1), rat(1, 2))]), &s).unwrap(), Int::from(2));
        // f₃ is orthogonal to σ, so f₃/2 is already (1,1)
        assert_eq!(brauer_order(&h2(&[(f(3), rat(1, 2))]), &s).unwrap(), Int::one());
        assert_eq!(brauer_order(&h2(&[(e(1), rat(1, 6)), (e(2), rat(1, 4))]), &s).unwrap(), Int::from(12));
    }

    #[test]
    fn twisted_lattice_index_two() {
        let tx = untwisted_transcendental(&sigma0()).unwrap();
        let b = h2(&[(e(1), rat(1, 2))]);
        let tw = twisted_transcendental(&tx, &b).unwrap();
        let expected =
            Sublattice::from_rows(vec![unit24(&[(e(1), 2), (f(1), 2)]), unit24(&[(e(2), 1), (f(2), 1)])]);
        assert_eq!(tw, expected);
        assert_eq!(tw.index_in(&tx), Some(Int::from(2)));
        let integral = h2(&[(e(1), rat(1, 1))]);
        assert_eq!(twisted_transcendental(&tx, &integral).unwrap(), tx);
    }

    #[test]
    fn eta_examples() {
        let mut g = vec![Int::zero(); H2_RANK];
        g[f(1) - 1] = Int::one();
        let zero = vec![Rat::zero(); H2_RANK];
        assert_eq!(eta(&g, &zero).unwrap(), IntClass::from_h2(g.clone()).unwrap());
        let b = h2(&[(e(1), rat(1, 1))]);
        assert_eq!(eta(&g, &b).unwrap().s(), &Int::one());
        let half = h2(&[(e(1), rat(1, 2))]);
        assert_eq!(eta(&g, &half), Err(HodgeError::NonIntegralImage(rat(1, 2))));
    }

    #[test]
    fn eta_report_half_e1() {
        let rep = verify_eta_hodge_isometry(&sigma0(), &h2(&[(e(1), rat(1, 2))])).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.index, Int::from(2));
        assert_eq!(rep.r, Int::from(2));
        let rep = verify_eta_hodge_isometry(&sigma0(), &h2(&[(e8_root(1, 2), rat(3, 1))])).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.index, Int::one());
    }

    #[test]
    fn hodge_isometries() {
        let phi = sigma_class(&sigma0()).unwrap();
        let iphi = phi.scale(&CRat::i()).unwrap();
        assert!(is_hodge_isometry(&Isometry::identity(), &phi, &iphi));
        assert!(is_hodge_isometry(&Isometry::identity().negate(), &phi, &phi));
        let delta = IntClass::unit(e8_root(2, 7));
        assert!(is_type_11(&delta, &phi));
        assert!(is_hodge_isometry(&reflection(&delta).unwrap(), &phi, &phi));
        let conj = validate(&phi.phi().conjugate()).unwrap();
        assert!(!is_hodge_isometry(&Isometry::identity(), &phi, &conj));
        assert!(is_hodge_isometry_unoriented(&Isometry::identity(), &phi, &conj));
    }

    #[test]
    fn divisor_listing() {
        let d: Vec<i64> = divisors(&Int::from(12)).iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(d, vec![1, 2, 3, 4, 6, 12]);
    }
}
