//! Minimal internal dense/banded linear algebra: dot products, Cholesky,
//! tridiagonal (Thomas) solves, and a cyclic-Jacobi symmetric eigensolver.
//!
//! Matrices are `Vec<Vec<f64>>` in row-major order. Everything here is sized
//! for the crate's needs (dense dimensions up to a few hundred); no BLAS-style
//! generality is attempted.

use crate::error::{Error, Result};

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Cholesky factorization A = L·Lᵀ of a symmetric positive definite matrix.
/// Returns the lower factor; fails on a non-positive pivot.
pub(crate) fn cholesky(a: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let n = a.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = a[i][j];
            for k in 0..j {
                s -= l[i][k] * l[j][k];
            }
            if i == j {
                if s <= 0.0 {
                    return Err(Error::domain(format!(
                        "cholesky: non-positive pivot {s:.3e} at index {i}; matrix not positive definite"
                    )));
                }
                l[i][j] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    Ok(l)
}

/// Solve L·Lᵀ x = b given the lower Cholesky factor.
pub(crate) fn cholesky_solve(l: &[Vec<f64>], b: &[f64]) -> Vec<f64> {
    let n = l.len();
    let mut y = vec![0.0; n];
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s -= l[i][k] * y[k];
        }
        y[i] = s / l[i][i];
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = y[i];
        for k in i + 1..n {
            s -= l[k][i] * x[k];
        }
        x[i] = s / l[i][i];
    }
    x
}

/// Solve a symmetric tridiagonal system with constant diagonals
/// `(d + shift)·x_i + off·(x_{i-1} + x_{i+1}) = b_i` by the Thomas algorithm.
///
/// The systems solved here are strictly diagonally dominant
/// (`d + shift > 2|off|`), so elimination without pivoting is stable.
pub(crate) fn thomas_solve_const(d: f64, off: f64, shift: f64, b: &[f64]) -> Vec<f64> {
    let n = b.len();
    let diag = d + shift;
    let mut c_prime = vec![0.0; n];
    let mut d_prime = vec![0.0; n];
    c_prime[0] = off / diag;
    d_prime[0] = b[0] / diag;
    for i in 1..n {
        let m = diag - off * c_prime[i - 1];
        c_prime[i] = off / m;
        d_prime[i] = (b[i] - off * d_prime[i - 1]) / m;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = d_prime[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = d_prime[i] - c_prime[i] * x[i + 1];
    }
    x
}

/// Frobenius norm of the strict off-diagonal part.
fn offdiag_norm(a: &[Vec<f64>]) -> f64 {
    let n = a.len();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i][j] * a[i][j];
            }
        }
    }
    s.sqrt()
}

fn frobenius_norm(a: &[Vec<f64>]) -> f64 {
    a.iter().flat_map(|r| r.iter()).map(|x| x * x).sum::<f64>().sqrt()
}

/// Full eigendecomposition of a small symmetric matrix by the cyclic Jacobi
/// rotation method: returns `(eigenvalues, q)` with `A = Q·diag(λ)·Qᵀ` and the
/// columns of `Q` (stored row-major: `q[i][j]` is component i of eigenvector j)
/// orthonormal. Eigenvalues are sorted ascending.
///
/// Intended for projected matrices of dimension ≤ 200; iterates sweeps until
/// the off-diagonal Frobenius mass falls below `1e-13·‖A‖_F`.
pub(crate) fn sym_eig(a: &[Vec<f64>]) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = a.len();
    if n == 0 {
        return Ok((vec![], vec![]));
    }
    for (i, row) in a.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Dimension { expected: n, got: row.len() });
        }
        for j in 0..n {
            if (a[i][j] - a[j][i]).abs() > 1e-12 * frobenius_norm(a).max(1e-300) {
                return Err(Error::domain(format!(
                    "sym_eig: matrix not symmetric at ({i},{j}): {} vs {}",
                    a[i][j], a[j][i]
                )));
            }
        }
    }

    let mut m: Vec<Vec<f64>> = a.to_vec();
    let mut q = vec![vec![0.0; n]; n];
    for (i, row) in q.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    let fnorm = frobenius_norm(&m).max(1e-300);
    let tol = 1e-13 * fnorm;

    let max_sweeps = 60;
    let mut converged = false;
    for _ in 0..max_sweeps {
        if offdiag_norm(&m) <= tol {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for r in p + 1..n {
                let apq = m[p][r];
                if apq.abs() <= tol / (n as f64) {
                    continue;
                }
                let app = m[p][p];
                let aqq = m[r][r];
                let theta = (aqq - app) / (2.0 * apq);
                // Stable rotation parameter: smaller root of t² + 2θt − 1 = 0.
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for i in 0..n {
                    let mip = m[i][p];
                    let miq = m[i][r];
                    m[i][p] = c * mip - s * miq;
                    m[i][r] = s * mip + c * miq;
                }
                for j in 0..n {
                    let mpj = m[p][j];
                    let mqj = m[r][j];
                    m[p][j] = c * mpj - s * mqj;
                    m[r][j] = s * mpj + c * mqj;
                }
                for i in 0..n {
                    let qip = q[i][p];
                    let qiq = q[i][r];
                    q[i][p] = c * qip - s * qiq;
                    q[i][r] = s * qip + c * qiq;
                }
            }
        }
    }
    if !converged && offdiag_norm(&m) > tol {
        return Err(Error::convergence(format!(
            "sym_eig: off-diagonal mass {:.3e} above {:.3e} after {max_sweeps} sweeps (n = {n})",
            offdiag_norm(&m),
            tol
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i][i].partial_cmp(&m[j][j]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| m[i][i]).collect();
    let mut q_sorted = vec![vec![0.0; n]; n];
    for (newj, &oldj) in order.iter().enumerate() {
        for i in 0..n {
            q_sorted[i][newj] = q[i][oldj];
        }
    }
    Ok((eigenvalues, q_sorted))
}
