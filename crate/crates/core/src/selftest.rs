//! Gates comparing the main algorithms with the brute-force oracles.

use num_traits::ToPrimitive;
use rand::Rng;
use serde_json::{json, Value};

use crate::gcy::random::{random_nonzero_crat, random_rat, rng_from_seed};
use crate::gcy::{exp_b_iomega, validate};
use crate::hodge::pic;
use crate::json::ToJson;
use crate::lattice::hnf::smith_diagonal;
use crate::matrix::IntMatrix;
use crate::mukai::{e, f, mukai_pair, CClass, IDX_H0, IDX_H4, H2_RANK, RANK};
use crate::oracle::{box_pairing_kernel, expand_pairing, snf_small_check, Gauss};
use crate::scalar::{rat, CRat, Int, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GateResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl GateResult {
    pub fn to_json(&self) -> Value {
        json!({"name": self.name, "passed": self.passed, "detail": self.detail})
    }
}

/// A random complex class with sparse, small coordinates.
pub fn random_class(rng: &mut impl Rng, bound: i64) -> CClass {
    let v: Vec<CRat> = (0..RANK)
        .map(|_| if rng.gen_bool(0.5) { random_nonzero_crat(rng, bound) } else { CRat::from(Int::from(0)) })
        .collect();
    CClass::unflatten(v).expect("24")
}

/// `mukai_pair` and the term-by-term expansion agree on `count` random pairs.
pub fn pairing_gate(seed: u64, count: usize) -> GateResult {
    let mut rng = rng_from_seed(seed);
    for n in 0..count {
        let x = random_class(&mut rng, 1_000);
        let y = random_class(&mut rng, 1_000);
        let main = mukai_pair(&x, &y);
        let oracle = expand_pairing(&x.to_json(), &y.to_json());
        if oracle != Ok(Gauss(main.re.clone(), main.im.clone())) {
            return GateResult {
                name: "pairing",
                passed: false,
                detail: format!("pair {n}: mukai_pair = {main}, oracle = {oracle:?}"),
            };
        }
    }
    GateResult { name: "pairing", passed: true, detail: format!("{count} random pairs agree") }
}

/// Smith diagonals of random matrices up to 4×4 satisfy the minor criterion.
pub fn snf_gate(seed: u64, count: usize) -> GateResult {
    let mut rng = rng_from_seed(seed);
    for n in 0..count {
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=4);
        let a: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        let refs: Vec<&[i64]> = a.iter().map(Vec::as_slice).collect();
        let diag = smith_diagonal(&IntMatrix::from_i64(&refs));
        let d: Vec<i64> = diag.iter().map(|x| x.to_i64().expect("small")).collect();
        if !snf_small_check(&a, &d) {
            return GateResult { name: "snf", passed: false, detail: format!("matrix {n} {a:?}: diagonal {d:?}") };
        }
    }
    GateResult { name: "snf", passed: true, detail: format!("{count} random matrices") }
}

/// Supports used to audit `pic`: the `(H⁰, e₁, f₁, H⁴)` block and every
/// window of four consecutive indices.
pub fn audit_supports() -> Vec<Vec<usize>> {
    let mut out = vec![vec![IDX_H0, e(1), f(1), IDX_H4]];
    out.extend((0..=RANK - 4).map(|s| (s..s + 4).collect()));
    out
}

/// On each support, the box enumeration equals the part of `pic` inside
/// the box.
pub fn pic_box_gate(omega: &[Rat], supports: &[Vec<usize>], n: i64) -> GateResult {
    let phi = validate(&exp_b_iomega(&vec![rat(0, 1); H2_RANK], omega)).expect("omega^2 > 0");
    let lattice = pic(&phi);
    let phi_json = phi.phi().to_json();
    let side = (2 * n + 1) as usize;
    for support in supports {
        let found = match box_pairing_kernel(&phi_json, support, n, None) {
            Ok(v) => v,
            Err(e) => return GateResult { name: "pic-box", passed: false, detail: e.to_string() },
        };
        let mut expected = 0usize;
        let mut digits = vec![-n; support.len()];
        for _ in 0..side.pow(support.len() as u32) {
            let mut v = [0i64; RANK];
            for (t, &i) in support.iter().enumerate() {
                v[i] = digits[t];
            }
            let as_int: Vec<Int> = v.iter().map(|&x| Int::from(x)).collect();
            let in_pic = lattice.contains(&as_int);
            if in_pic {
                expected += 1;
            }
            if in_pic != found.contains(&v) {
                return GateResult {
                    name: "pic-box",
                    passed: false,
                    detail: format!("support {support:?}: {v:?} in pic = {in_pic}, oracle disagrees"),
                };
            }
            for d in digits.iter_mut() {
                if *d < n {
                    *d += 1;
                    break;
                }
                *d = -n;
            }
        }
        if expected != found.len() {
            return GateResult {
                name: "pic-box",
                passed: false,
                detail: format!("support {support:?}: oracle found {}, pic has {expected}", found.len()),
            };
        }
    }
    GateResult { name: "pic-box", passed: true, detail: format!("{} supports, box radius {n}", supports.len()) }
}

/// Box gate on `ω = e₁ + f₁` plus a random positive `ω`.
pub fn pic_gates(seed: u64, n: i64) -> Vec<GateResult> {
    let mut w = vec![rat(0, 1); H2_RANK];
    w[e(1) - 1] = rat(1, 1);
    w[f(1) - 1] = rat(1, 1);
    let supports = audit_supports();
    let mut rng = rng_from_seed(seed);
    let mut w2 = w.clone();
    w2[e(2) - 1] = random_rat(&mut rng, 5);
    w2[f(3) - 1] = random_rat(&mut rng, 5);
    vec![pic_box_gate(&w, &supports, n), pic_box_gate(&w2, &supports, n)]
}

/// All gates; `box_radius` bounds the enumeration box.
pub fn run(seed: u64, box_radius: i64) -> Vec<GateResult> {
    let mut out = vec![pairing_gate(seed, 2_000), snf_gate(seed, 500)];
    out.extend(pic_gates(seed, box_radius));
    out
}
