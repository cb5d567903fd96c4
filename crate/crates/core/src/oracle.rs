//! Brute-force verifiers written independently of the main algorithms.
//!
//! Nothing here calls the pairing, normal-form or lattice code; inputs
//! arrive as JSON values and the Gram data is re-derived term by term.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("cannot read input: {0}")]
    Input(String),
    #[error("support has {0} indices; at most 8 are allowed")]
    SupportTooLarge(usize),
    #[error("support index {0} is out of range")]
    BadIndex(usize),
    #[error("box radius {0} is outside 0..=3")]
    BadRadius(i64),
    #[error("coefficients too large for the enumeration")]
    Overflow,
    #[error("enumeration cancelled after {0} vectors")]
    Cancelled(u64),
}

type Q = BigRational;

/// A Gaussian rational as `(re, im)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gauss(pub Q, pub Q);

impl Gauss {
    fn zero() -> Self {
        Gauss(Q::zero(), Q::zero())
    }

    fn mul(&self, o: &Gauss) -> Gauss {
        Gauss(&self.0 * &o.0 - &self.1 * &o.1, &self.0 * &o.1 + &self.1 * &o.0)
    }

    fn add(&mut self, o: &Gauss) {
        self.0 += &o.0;
        self.1 += &o.1;
    }

    fn sub(&mut self, o: &Gauss) {
        self.0 -= &o.0;
        self.1 -= &o.1;
    }
}

fn read_q(v: &Value) -> Result<Q, OracleError> {
    let bad = || OracleError::Input(format!("not a rational: {v}"));
    let int = |s: &str| s.trim().parse::<BigInt>().map_err(|_| bad());
    match v {
        Value::Number(n) => n.as_i64().map(|i| Q::from_integer(i.into())).ok_or_else(bad),
        Value::String(s) => match s.split_once('/') {
            None => Ok(Q::from_integer(int(s)?)),
            Some((p, q)) => {
                let q = int(q)?;
                if q.is_zero() {
                    return Err(bad());
                }
                Ok(Q::new(int(p)?, q))
            }
        },
        _ => Err(bad()),
    }
}

fn read_gauss(v: &Value) -> Result<Gauss, OracleError> {
    match v {
        Value::Object(m) => {
            let part = |k: &str| m.get(k).map(read_q).transpose().map(Option::unwrap_or_default);
            Ok(Gauss(part("re")?, part("im")?))
        }
        other => Ok(Gauss(read_q(other)?, Q::zero())),
    }
}

/// Reads `{"r", "c": [22], "s"}` into `(r, c, s)`.
pub fn read_class(v: &Value) -> Result<(Gauss, Vec<Gauss>, Gauss), OracleError> {
    let get = |k: &str| v.get(k).ok_or_else(|| OracleError::Input(format!("missing '{k}'")));
    let c = get("c")?.as_array().ok_or_else(|| OracleError::Input("'c' must be an array".into()))?;
    if c.len() != 22 {
        return Err(OracleError::Input(format!("'c' has {} entries, expected 22", c.len())));
    }
    Ok((read_gauss(get("r")?)?, c.iter().map(read_gauss).collect::<Result<_, _>>()?, read_gauss(get("s")?)?))
}

/// Edges of the E8 diagram, Bourbaki labels.
const DYNKIN: [(usize, usize); 7] = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)];

/// Nonzero entries `(i, j, g)` of the `H²` Gram over 0-based `H²` indices,
/// listed once per ordered pair.
fn h2_terms() -> Vec<(usize, usize, i64)> {
    let mut t = Vec::new();
    for k in 0..3 {
        t.push((2 * k, 2 * k + 1, 1));
        t.push((2 * k + 1, 2 * k, 1));
    }
    for block in 0..2 {
        let off = 6 + 8 * block;
        for i in 0..8 {
            t.push((off + i, off + i, -2));
        }
        for &(a, b) in &DYNKIN {
            t.push((off + a - 1, off + b - 1, 1));
            t.push((off + b - 1, off + a - 1, 1));
        }
    }
    t
}

/// `−x₀y₄ + x₂·y₂ − x₄y₀`, expanded term by term.
pub fn expand_pairing(x: &Value, y: &Value) -> Result<Gauss, OracleError> {
    let (xr, xc, xs) = read_class(x)?;
    let (yr, yc, ys) = read_class(y)?;
    let mut acc = Gauss::zero();
    for (i, j, g) in h2_terms() {
        let mut t = xc[i].mul(&yc[j]);
        let g = Q::from_integer(g.into());
        t.0 *= &g;
        t.1 *= &g;
        acc.add(&t);
    }
    acc.sub(&xr.mul(&ys));
    acc.sub(&xs.mul(&yr));
    Ok(acc)
}

/// `⟨e_i, φ⟩` for each flat index `i`.
fn pairing_functional(phi: &Value) -> Result<Vec<Gauss>, OracleError> {
    let (r, c, s) = read_class(phi)?;
    let mut out = vec![Gauss::zero(); 24];
    for (i, j, g) in h2_terms() {
        let g = Q::from_integer(g.into());
        out[i + 1].0 += &c[j].0 * &g;
        out[i + 1].1 += &c[j].1 * &g;
    }
    out[0] = Gauss(-s.0, -s.1);
    out[23] = Gauss(-r.0, -r.1);
    Ok(out)
}

fn to_scaled_i128(v: &[Q]) -> Result<Vec<i128>, OracleError> {
    let den = v.iter().fold(BigInt::from(1), |acc, q| acc.lcm(q.denom()));
    v.iter()
        .map(|q| (q.numer() * (&den / q.denom())).to_i128().ok_or(OracleError::Overflow))
        .collect()
}

/// Progress callback: `(vectors checked, total)`; return `false` to cancel.
pub type Hook<'a> = &'a mut dyn FnMut(u64, u64) -> bool;

/// Every vector supported on `support` with coordinates in `[−n, n]` that
/// pairs to zero with `φ`, by exhaustive enumeration.
pub fn box_pairing_kernel(
    phi: &Value,
    support: &[usize],
    n: i64,
    hook: Option<Hook<'_>>,
) -> Result<Vec<[i64; 24]>, OracleError> {
    if support.len() > 8 {
        return Err(OracleError::SupportTooLarge(support.len()));
    }
    if let Some(&bad) = support.iter().find(|&&i| i >= 24) {
        return Err(OracleError::BadIndex(bad));
    }
    if !(0..=3).contains(&n) {
        return Err(OracleError::BadRadius(n));
    }
    let f = pairing_functional(phi)?;
    let re = to_scaled_i128(&support.iter().map(|&i| f[i].0.clone()).collect::<Vec<_>>())?;
    let im = to_scaled_i128(&support.iter().map(|&i| f[i].1.clone()).collect::<Vec<_>>())?;
    if re.iter().chain(&im).any(|x| x.unsigned_abs() > (i128::MAX as u128) / 64) {
        return Err(OracleError::Overflow);
    }
    let k = support.len();
    let side = (2 * n + 1) as u64;
    let total = side.pow(k as u32);
    let mut hook = hook;
    let mut digits = vec![-n; k];
    let mut out = Vec::new();
    for count in 0..total {
        let (mut sr, mut si) = (0i128, 0i128);
        for t in 0..k {
            sr += digits[t] as i128 * re[t];
            si += digits[t] as i128 * im[t];
        }
        if sr == 0 && si == 0 {
            let mut v = [0i64; 24];
            for (t, &i) in support.iter().enumerate() {
                v[i] = digits[t];
            }
            out.push(v);
        }
        for d in digits.iter_mut() {
            if *d < n {
                *d += 1;
                break;
            }
            *d = -n;
        }
        if count % 4096 == 4095 {
            if let Some(h) = hook.as_mut() {
                if !h(count + 1, total) {
                    return Err(OracleError::Cancelled(count + 1));
                }
            }
        }
    }
    Ok(out)
}

fn det_i128(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> =
                m[1..].iter().map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect()).collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det_i128(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (0..n)
        .flat_map(|last| {
            subsets(last, k - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd_i128(b, a % b)
    }
}

/// Checks a claimed Smith diagonal against the minor characterization:
/// `d₁⋯d_k` is the gcd of all `k × k` minors. Matrices up to 4×4.
pub fn snf_small_check(a: &[Vec<i64>], diag: &[i64]) -> bool {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    if rows > 4 || cols > 4 || a.iter().any(|r| r.len() != cols) || diag.len() != rows.min(cols) {
        return false;
    }
    let m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut prefix: i128 = 1;
    for k in 1..=rows.min(cols) {
        let mut g = 0i128;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<i128>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j]).collect()).collect();
                g = gcd_i128(g, det_i128(&sub));
            }
        }
        let d = (diag[k - 1] as i128).abs();
        prefix *= d;
        if prefix != g {
            return false;
        }
    }
    diag.windows(2).all(|w| if w[0] == 0 { w[1] == 0 } else { w[1] % w[0] == 0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn class(r: Value, pairs: &[(usize, Value)], s: Value) -> Value {
        let mut c = vec![json!(0); 22];
        for (i, v) in pairs {
            c[*i] = v.clone();
        }
        json!({"r": r, "c": c, "s": s})
    }

    #[test]
    fn pairing_examples() {
        let one = class(json!(1), &[], json!(0));
        let vol = class(json!(0), &[], json!(1));
        assert_eq!(expand_pairing(&one, &vol).unwrap(), Gauss(Q::from_integer((-1).into()), Q::zero()));
        let x = class(json!(1), &[(0, json!(1)), (1, json!(1))], json!(1));
        assert_eq!(expand_pairing(&x, &x).unwrap(), Gauss::zero());
        let zero = class(json!(0), &[], json!(0));
        assert_eq!(expand_pairing(&x, &zero).unwrap(), Gauss::zero());
    }

    #[test]
    fn box_recovers_example() {
        // exp(iω) with ω = e₁ + f₁ is (1, iω, −1)
        let i = json!({"re": "0", "im": "1"});
        let phi = class(json!(1), &[(0, i.clone()), (1, i)], json!(-1));
        let found = box_pairing_kernel(&phi, &[0, 1, 2, 23], 2, None).unwrap();
        let mut a = [0i64; 24];
        a[0] = 1;
        a[23] = 1;
        let mut b = [0i64; 24];
        b[1] = 1;
        b[2] = -1;
        assert!(found.contains(&a) && found.contains(&b));
        assert_eq!(found.len(), 25);
        assert!(box_pairing_kernel(&phi, &[0; 9], 1, None).is_err());
    }

    #[test]
    fn cancellation() {
        let phi = class(json!(1), &[], json!(0));
        let mut hook = |done: u64, _total: u64| done < 4096;
        let r = box_pairing_kernel(&phi, &[1, 2, 3, 4, 5, 6], 2, Some(&mut hook));
        assert!(matches!(r, Err(OracleError::Cancelled(_))));
    }

    #[test]
    fn smith_minors() {
        assert!(snf_small_check(&[vec![2, 0], vec![0, 3]], &[1, 6]));
        assert!(!snf_small_check(&[vec![2, 0], vec![0, 3]], &[2, 3]));
        assert!(snf_small_check(&[vec![0, 0], vec![0, 0]], &[0, 0]));
        assert!(snf_small_check(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], &[2, 6, 12]));
    }
}
