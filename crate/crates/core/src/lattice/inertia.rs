//! Exact inertia of symmetric rational forms.
//!
//! Symmetric Gaussian elimination by congruence: a nonzero diagonal entry is
//! eliminated as a 1×1 pivot; when every remaining diagonal entry vanishes
//! but some off-diagonal `a = S_ij` does not, the block `[[0,a],[a,0]]`
//! (inertia (1,0,1)) is eliminated as a 2×2 pivot. By Sylvester's law the
//! pivot signs give the inertia.

use num_traits::{Signed, Zero};

use crate::matrix::RatMatrix;
use crate::scalar::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Inertia {
    pub plus: usize,
    pub zero: usize,
    pub minus: usize,
}

impl Inertia {
    pub fn new(plus: usize, zero: usize, minus: usize) -> Self {
        Inertia { plus, zero, minus }
    }

    pub fn is_positive_definite(&self) -> bool {
        self.zero == 0 && self.minus == 0
    }

    pub fn rank(&self) -> usize {
        self.plus + self.minus
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("inertia requires a symmetric matrix ({rows}x{cols} input is not symmetric)")]
pub struct NotSymmetric {
    pub rows: usize,
    pub cols: usize,
}

pub fn inertia(s: &RatMatrix) -> Result<Inertia, NotSymmetric> {
    if !s.is_symmetric() {
        return Err(NotSymmetric { rows: s.rows(), cols: s.cols() });
    }
    let mut a: Vec<Vec<Rat>> = s.to_rows();
    let mut result = Inertia::new(0, 0, 0);
    loop {
        let n = a.len();
        if n == 0 {
            return Ok(result);
        }
        if let Some(p) = (0..n).find(|&i| !a[i][i].is_zero()) {
            let d = a[p][p].clone();
            if d.is_positive() {
                result.plus += 1;
            } else {
                result.minus += 1;
            }
            let col: Vec<Rat> = (0..n).map(|i| a[i][p].clone()).collect();
            let rest: Vec<usize> = (0..n).filter(|&i| i != p).collect();
            a = rest
                .iter()
                .map(|&i| {
                    rest.iter()
                        .map(|&j| {
                            if col[i].is_zero() || col[j].is_zero() {
                                a[i][j].clone()
                            } else {
                                &a[i][j] - &col[i] * &col[j] / &d
                            }
                        })
                        .collect()
                })
                .collect();
            continue;
        }
        let Some((p, q)) = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero())
        else {
            result.zero += n;
            return Ok(result);
        };
        // 2×2 pivot P = [[0, x], [x, 0]], P⁻¹ = [[0, 1/x], [1/x, 0]]
        result.plus += 1;
        result.minus += 1;
        let x = a[p][q].clone();
        let rest: Vec<usize> = (0..n).filter(|&i| i != p && i != q).collect();
        a = rest
            .iter()
            .map(|&i| {
                rest.iter()
                    .map(|&j| {
                        // S_ij − (c_ip c_jq + c_iq c_jp)/x
                        let corr = (&a[i][p] * &a[j][q] + &a[i][q] * &a[j][p]) / &x;
                        &a[i][j] - corr
                    })
                    .collect()
            })
            .collect();
    }
}
