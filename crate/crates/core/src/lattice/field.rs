//! Gaussian elimination over the exact fields ℚ and ℚ(i).

use crate::matrix::Matrix;
use crate::scalar::Field;

/// Reduced row echelon form; returns the pivot columns.
pub fn rref<T: Field>(m: &mut Matrix<T>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols() {
        if row == m.rows() {
            break;
        }
        let Some(p) = (row..m.rows()).find(|&i| !m[(i, col)].is_zero()) else {
            continue;
        };
        m.swap_rows(row, p);
        let inv = T::one() / m[(row, col)].clone();
        for x in m.row_mut(row) {
            *x = x.clone() * inv.clone();
        }
        for i in 0..m.rows() {
            if i == row || m[(i, col)].is_zero() {
                continue;
            }
            let k = m[(i, col)].clone();
            for j in col..m.cols() {
                if !m[(row, j)].is_zero() {
                    let d = k.clone() * m[(row, j)].clone();
                    m[(i, j)] = m[(i, j)].clone() - d;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<T: Field>(m: &Matrix<T>) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Basis of the right kernel `{x : M·x = 0}` (one vector per free column).
pub fn nullspace<T: Field>(m: &Matrix<T>) -> Vec<Vec<T>> {
    let mut a = m.clone();
    let piv = rref(&mut a);
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![T::zero(); n];
            v[fc] = T::one();
            for (r, &pc) in piv.iter().enumerate() {
                v[pc] = -a[(r, fc)].clone();
            }
            v
        })
        .collect()
}

/// Coefficients `c` with `Σ cᵢ·rowsᵢ = target`, if the target is in the span.
pub fn solve_in_span<T: Field>(rows: &[Vec<T>], target: &[T]) -> Option<Vec<T>> {
    let k = rows.len();
    let n = target.len();
    // columns are the spanning vectors, augmented by the target
    let mut a = Matrix::from_fn(n, k + 1, |i, j| if j < k { rows[j][i].clone() } else { target[i].clone() });
    let piv = rref(&mut a);
    if piv.contains(&k) {
        return None;
    }
    let mut c = vec![T::zero(); k];
    for (r, &pc) in piv.iter().enumerate() {
        c[pc] = a[(r, k)].clone();
    }
    Some(c)
}
