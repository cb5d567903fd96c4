//! Hermite and Smith normal forms over ℤ.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::IntMatrix;
use crate::scalar::Int;

/// `(g, x, y)` with `x·a + y·b = g = gcd(a, b) ≥ 0`.
pub(crate) fn egcd(a: &Int, b: &Int) -> (Int, Int, Int) {
    let r = a.extended_gcd(b);
    if r.gcd.is_negative() {
        (-r.gcd, -r.x, -r.y)
    } else {
        (r.gcd, r.x, r.y)
    }
}

/// Replaces rows `(i, j)` of `m` by `(x·Ri + y·Rj, u·Ri + v·Rj)`.
fn combine_rows(m: &mut IntMatrix, i: usize, j: usize, x: &Int, y: &Int, u: &Int, v: &Int) {
    for col in 0..m.cols() {
        let a = m[(i, col)].clone();
        let b = m[(j, col)].clone();
        if a.is_zero() && b.is_zero() {
            continue;
        }
        m[(i, col)] = x * &a + y * &b;
        m[(j, col)] = u * &a + v * &b;
    }
}

fn add_row_multiple(m: &mut IntMatrix, target: usize, src: usize, k: &Int) {
    if k.is_zero() {
        return;
    }
    for col in 0..m.cols() {
        if !m[(src, col)].is_zero() {
            let d = k * &m[(src, col)];
            m[(target, col)] += d;
        }
    }
}

fn add_col_multiple(m: &mut IntMatrix, target: usize, src: usize, k: &Int) {
    if k.is_zero() {
        return;
    }
    for row in 0..m.rows() {
        if !m[(row, src)].is_zero() {
            let d = k * &m[(row, src)];
            m[(row, target)] += d;
        }
    }
}

fn negate_row(m: &mut IntMatrix, i: usize) {
    for x in m.row_mut(i) {
        *x = -std::mem::take(x);
    }
}

/// Row-style canonical Hermite normal form.
///
/// Returns `(H, U)` with `U·A = H`, `U` unimodular. Nonzero rows of `H` come
/// first, pivots strictly increase left to right, pivots are positive and
/// the entries above each pivot lie in `[0, pivot)`. This representative is
/// unique for the row lattice of `A`.
pub fn hnf(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let m = a.rows();
    let n = a.cols();
    let mut h = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut row = 0;
    for col in 0..n {
        if row == m {
            break;
        }
        for i in row + 1..m {
            if h[(i, col)].is_zero() {
                continue;
            }
            let (g, x, y) = egcd(&h[(row, col)], &h[(i, col)]);
            let p = &h[(row, col)] / &g;
            let q = &h[(i, col)] / &g;
            // [[x, y], [-q, p]] has determinant x·p + y·q = 1.
            let (nq, pp) = (-q, p);
            combine_rows(&mut h, row, i, &x, &y, &nq, &pp);
            combine_rows(&mut u, row, i, &x, &y, &nq, &pp);
        }
        if h[(row, col)].is_zero() {
            continue;
        }
        if h[(row, col)].is_negative() {
            negate_row(&mut h, row);
            negate_row(&mut u, row);
        }
        let pivot = h[(row, col)].clone();
        for i in 0..row {
            let k = -h[(i, col)].div_floor(&pivot);
            add_row_multiple(&mut h, i, row, &k);
            add_row_multiple(&mut u, i, row, &k);
        }
        row += 1;
    }
    (h, u)
}

/// Number of nonzero rows of a matrix in Hermite form.
pub fn hnf_rank(h: &IntMatrix) -> usize {
    (0..h.rows()).take_while(|&i| h.row(i).iter().any(|x| !x.is_zero())).count()
}

/// Nonzero rows of the canonical HNF of `a`.
pub fn hnf_basis(a: &IntMatrix) -> IntMatrix {
    let (mut h, _) = hnf(a);
    let r = hnf_rank(&h);
    h.truncate_rows(r);
    h
}

/// Pivot column of each nonzero row of an echelon matrix.
pub fn pivots(h: &IntMatrix) -> Vec<usize> {
    (0..h.rows())
        .map_while(|i| h.row(i).iter().position(|x| !x.is_zero()))
        .collect()
}

/// Solves `xᵀ·H = v` for integer `x`, where `H` is in row echelon form.
/// Returns `None` when `v` is not in the row lattice.
pub fn hnf_solve(h: &IntMatrix, v: &[Int]) -> Option<Vec<Int>> {
    assert_eq!(h.cols(), v.len());
    let mut rest = v.to_vec();
    let piv = pivots(h);
    let mut x = vec![Int::zero(); h.rows()];
    for (i, &p) in piv.iter().enumerate() {
        if rest[p].is_zero() {
            continue;
        }
        let (q, r) = rest[p].div_rem(&h[(i, p)]);
        if !r.is_zero() {
            return None;
        }
        for j in p..h.cols() {
            if !h[(i, j)].is_zero() {
                rest[j] -= &q * &h[(i, j)];
            }
        }
        x[i] = q;
    }
    rest.iter().all(Zero::is_zero).then_some(x)
}

/// Smith normal form: `(D, U, V)` with `U·A·V = D`, `D` diagonal with
/// nonnegative entries `d₁ | d₂ | …`, `U` and `V` unimodular.
pub fn snf(a: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let m = a.rows();
    let n = a.cols();
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    for t in 0..m.min(n) {
        loop {
            // smallest nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = &d[(i, j)];
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return (d, u, v);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let k = -(&d[(i, t)] / &d[(t, t)]);
                add_row_multiple(&mut d, i, t, &k);
                add_row_multiple(&mut u, i, t, &k);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let k = -(&d[(t, j)] / &d[(t, t)]);
                add_col_multiple(&mut d, j, t, &k);
                add_col_multiple(&mut v, j, t, &k);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility condition on the trailing block
            let pivot = d[(t, t)].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match bad {
                Some(i) => {
                    let one = Int::one();
                    add_row_multiple(&mut d, t, i, &one);
                    add_row_multiple(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
    }
    (d, u, v)
}

/// Diagonal of the Smith form.
pub fn smith_diagonal(a: &IntMatrix) -> Vec<Int> {
    let (d, _, _) = snf(a);
    (0..a.rows().min(a.cols())).map(|i| d[(i, i)].clone()).collect()
}
