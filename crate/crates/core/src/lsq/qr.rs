//! Dense least squares by Householder QR with column pivoting.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{domain, Error, Result};

/// What to do when the numerical rank is below the column count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankPolicy {
    /// Report [`Error::RankDeficient`].
    Strict,
    /// Return the basic solution supported on the leading pivoted columns.
    Truncate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LsOptions {
    pub policy: RankPolicy,
    /// Columns with `|R_kk| ≤ rank_tol·|R_00|` count as dependent; `None`
    /// selects `max(rows, cols)·ε`.
    pub rank_tol: Option<f64>,
}

impl Default for LsOptions {
    fn default() -> Self {
        Self {
            policy: RankPolicy::Strict,
            rank_tol: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LsSolution {
    pub coeffs: Vec<f64>,
    /// `‖rhs − A·coeffs‖₂`.
    pub residual_norm: f64,
    /// Euclidean norm of each input column, used to equilibrate before the QR.
    pub column_scales: Vec<f64>,
    pub effective_rank: usize,
}

/// Minimizes `‖rhs − Σ_j coeffs[j]·columns[j]‖₂`.
pub fn ls_solve(columns: &[Vec<f64>], rhs: &[f64], options: LsOptions) -> Result<LsSolution> {
    let n = columns.len();
    let m = rhs.len();
    if columns.iter().any(|c| c.len() != m) {
        return Err(domain(
            "all columns must have the length of the right-hand side",
        ));
    }
    if m < n {
        return Err(domain(
            "least squares needs at least as many rows as columns",
        ));
    }
    let column_scales: Vec<f64> = columns
        .iter()
        .map(|c| c.iter().map(|v| v * v).sum::<f64>().sqrt())
        .collect();
    let mut a: Vec<Vec<f64>> = columns
        .iter()
        .zip(&column_scales)
        .map(|(c, &s)| {
            let s = if s > 0.0 { s } else { 1.0 };
            c.iter().map(|v| v / s).collect()
        })
        .collect();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut b = rhs.to_vec();
    let mut diag = vec![0.0; n];
    let tol = options.rank_tol.unwrap_or(m.max(n) as f64 * f64::EPSILON);
    let mut rank = n;
    let mut r00 = 0.0;
    for k in 0..n {
        // pivot: remaining column with the largest trailing norm
        let (p, pnorm) = (k..n)
            .map(|j| (j, a[j][k..].iter().map(|v| v * v).sum::<f64>().sqrt()))
            .fold(
                (k, -1.0),
                |acc, (j, v)| if v > acc.1 { (j, v) } else { acc },
            );
        a.swap(k, p);
        perm.swap(k, p);
        if k == 0 {
            r00 = pnorm;
        }
        if !(pnorm > tol * r00) || pnorm == 0.0 {
            rank = k;
            break;
        }
        let alpha = if a[k][k] > 0.0 { -pnorm } else { pnorm };
        let mut v: Vec<f64> = a[k][k..].to_vec();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        diag[k] = alpha;
        if vnorm2 > 0.0 {
            let reflect = |col: &mut [f64]| {
                let dot: f64 = v.iter().zip(col.iter()).map(|(x, y)| x * y).sum();
                let f = 2.0 * dot / vnorm2;
                for (c, x) in col.iter_mut().zip(&v) {
                    *c -= f * x;
                }
            };
            for col in a.iter_mut().skip(k + 1) {
                reflect(&mut col[k..]);
            }
            reflect(&mut b[k..]);
        }
        a[k][k] = alpha;
        for x in a[k][k + 1..].iter_mut() {
            *x = 0.0;
        }
    }
    if rank < n && options.policy == RankPolicy::Strict {
        return Err(Error::RankDeficient {
            effective_rank: rank,
            cols: n,
        });
    }
    // back substitution on the leading rank×rank block
    let mut y = vec![0.0; n];
    for i in (0..rank).rev() {
        let mut s = b[i];
        for j in i + 1..rank {
            s -= a[j][i] * y[j];
        }
        y[i] = s / diag[i];
    }
    let mut coeffs = vec![0.0; n];
    for (k, &orig) in perm.iter().enumerate() {
        let s = column_scales[orig];
        coeffs[orig] = if s > 0.0 { y[k] / s } else { 0.0 };
    }
    let mut resid = rhs.to_vec();
    for (col, &c) in columns.iter().zip(&coeffs) {
        if c != 0.0 {
            for (r, v) in resid.iter_mut().zip(col) {
                *r -= c * v;
            }
        }
    }
    let residual_norm = resid.iter().map(|v| v * v).sum::<f64>().sqrt();
    Ok(LsSolution {
        coeffs,
        residual_norm,
        column_scales,
        effective_rank: rank,
    })
}
