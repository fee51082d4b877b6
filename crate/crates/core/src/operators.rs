//! Self-adjoint positive definite test operators, their shifted solves, and
//! exact spectral resolvents used as oracles.
//!
//! Every variant exposes `A·v`, `(ηI + A)^{-1}v`, and — where the eigensystem
//! has a closed form — exact eigenvalues, spectral bounds, and the exact
//! resolvent `(I + hA^α)^{-1}v`. Applying a [`ResolventForm`] to a vector is
//! a sum of shifted solves, one per partial-fraction term.

use crate::error::{Error, Result};
use crate::error_model::resolvent_error;
use crate::linalg::{cholesky, cholesky_solve, thomas_solve_const};
use crate::resolvent::ResolventForm;
use crate::tau::SpectrumBounds;

use std::f64::consts::PI;

/// A symmetric positive definite operator with known structure.
#[derive(Debug, Clone, PartialEq)]
pub enum Operator {
    /// diag(entries), entries > 0.
    Diagonal { entries: Vec<f64> },
    /// diag(1^p, 2^p, ..., N^p), stored as the exponent.
    DiagonalPower { n: usize, p: u32 },
    /// `(N+1)² · tridiag(-1, 2, -1)` of size N — the 1D Dirichlet Laplacian
    /// on (0,1) with mesh width 1/(N+1). Eigenvalues are
    /// `4(N+1)² sin²(jπ / (2(N+1)))`, j = 1..N.
    Laplacian1D { n: usize },
    /// Explicit symmetric positive definite matrix (row-major).
    DenseSpd { matrix: Vec<Vec<f64>> },
}

impl Operator {
    /// Diagonal operator with the given positive entries.
    pub fn diagonal(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::domain("diagonal operator needs at least one entry"));
        }
        if entries.iter().any(|&e| !(e > 0.0 && e.is_finite())) {
            return Err(Error::domain("diagonal entries must be positive and finite"));
        }
        Ok(Operator::Diagonal { entries })
    }

    /// diag(j^p) for j = 1..N.
    pub fn diagonal_power(n: usize, p: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("diagonal power operator needs n >= 1"));
        }
        let top = (n as f64).powi(p as i32);
        if !top.is_finite() {
            return Err(Error::domain(format!(
                "diagonal power operator: {n}^{p} exceeds the floating-point range"
            )));
        }
        Ok(Operator::DiagonalPower { n, p })
    }

    /// Scaled second-difference matrix of size N.
    pub fn laplacian_1d(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("laplacian operator needs n >= 1"));
        }
        Ok(Operator::Laplacian1D { n })
    }

    /// Explicit SPD matrix; symmetry and positive definiteness are verified
    /// at construction (the latter by attempting a Cholesky factorization).
    pub fn dense_spd(matrix: Vec<Vec<f64>>) -> Result<Self> {
        let n = matrix.len();
        if n == 0 || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::domain("dense operator must be square and nonempty"));
        }
        let scale = matrix
            .iter()
            .flatten()
            .fold(0.0f64, |m, &v| m.max(v.abs()))
            .max(1.0);
        for i in 0..n {
            for j in 0..i {
                if (matrix[i][j] - matrix[j][i]).abs() > 1e-12 * scale {
                    return Err(Error::domain(format!(
                        "dense operator not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        cholesky(&matrix)?;
        Ok(Operator::DenseSpd { matrix })
    }

    /// Dimension N.
    pub fn dim(&self) -> usize {
        match self {
            Operator::Diagonal { entries } => entries.len(),
            Operator::DiagonalPower { n, .. } | Operator::Laplacian1D { n } => *n,
            Operator::DenseSpd { matrix } => matrix.len(),
        }
    }

    fn check_dim(&self, v: &[f64]) -> Result<()> {
        if v.len() == self.dim() {
            Ok(())
        } else {
            Err(Error::Dimension { expected: self.dim(), got: v.len() })
        }
    }

    /// `A · v`.
    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(v)?;
        Ok(match self {
            Operator::Diagonal { entries } => {
                entries.iter().zip(v).map(|(&d, &x)| d * x).collect()
            }
            Operator::DiagonalPower { n, p } => (1..=*n)
                .zip(v)
                .map(|(j, &x)| (j as f64).powi(*p as i32) * x)
                .collect(),
            Operator::Laplacian1D { n } => {
                let s = ((*n + 1) * (*n + 1)) as f64;
                (0..*n)
                    .map(|i| {
                        let left = if i > 0 { v[i - 1] } else { 0.0 };
                        let right = if i + 1 < *n { v[i + 1] } else { 0.0 };
                        s * (2.0 * v[i] - left - right)
                    })
                    .collect()
            }
            Operator::DenseSpd { matrix } => matrix
                .iter()
                .map(|row| row.iter().zip(v).map(|(&a, &x)| a * x).sum())
                .collect(),
        })
    }

    /// `(ηI + A)^{-1} v` for η ≥ 0: entrywise for diagonal variants, the
    /// Thomas algorithm for the tridiagonal one, and a Cholesky solve for
    /// dense matrices.
    pub fn shifted_solve(&self, eta: f64, v: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(v)?;
        if !(eta >= 0.0 && eta.is_finite()) {
            return Err(Error::domain(format!("shift must be >= 0, got {eta}")));
        }
        Ok(match self {
            Operator::Diagonal { entries } => {
                entries.iter().zip(v).map(|(&d, &x)| x / (d + eta)).collect()
            }
            Operator::DiagonalPower { n, p } => (1..=*n)
                .zip(v)
                .map(|(j, &x)| x / ((j as f64).powi(*p as i32) + eta))
                .collect(),
            Operator::Laplacian1D { n } => {
                let s = ((*n + 1) * (*n + 1)) as f64;
                thomas_solve_const(2.0 * s, -s, eta, v)
            }
            Operator::DenseSpd { matrix } => {
                let n = matrix.len();
                let mut shifted = matrix.clone();
                for (i, row) in shifted.iter_mut().enumerate().take(n) {
                    row[i] += eta;
                }
                let l = cholesky(&shifted)?;
                cholesky_solve(&l, v)
            }
        })
    }

    /// Exact eigenvalues in ascending order, for the variants whose
    /// eigensystem has a closed form.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        match self {
            Operator::Diagonal { entries } => {
                let mut e = entries.clone();
                e.sort_by(f64::total_cmp);
                Ok(e)
            }
            Operator::DiagonalPower { n, p } => {
                Ok((1..=*n).map(|j| (j as f64).powi(*p as i32)).collect())
            }
            Operator::Laplacian1D { n } => {
                let m = (*n + 1) as f64;
                Ok((1..=*n)
                    .map(|j| {
                        let s = (j as f64 * PI / (2.0 * m)).sin();
                        4.0 * m * m * s * s
                    })
                    .collect())
            }
            Operator::DenseSpd { .. } => Err(Error::unsupported(
                "dense operator has no closed-form eigensystem",
            )),
        }
    }

    /// Spectral bounds: exact extreme eigenvalues for closed-form variants,
    /// Gershgorin disc bounds for dense matrices (valid brackets, not exact).
    pub fn spectrum_bounds(&self) -> Result<SpectrumBounds> {
        match self {
            Operator::DenseSpd { matrix } => {
                let mut lo = f64::INFINITY;
                let mut hi = f64::NEG_INFINITY;
                for (i, row) in matrix.iter().enumerate() {
                    let radius: f64 =
                        row.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &a)| a.abs()).sum();
                    lo = lo.min(row[i] - radius);
                    hi = hi.max(row[i] + radius);
                }
                if !(lo > 0.0) {
                    return Err(Error::unsupported(format!(
                        "dense operator: Gershgorin lower bound {lo} is not positive; \
                         spectral bounds must be supplied externally"
                    )));
                }
                Ok(SpectrumBounds { c: lo, lambda_max: Some(hi) })
            }
            _ => {
                let eig = self.eigenvalues()?;
                Ok(SpectrumBounds { c: eig[0], lambda_max: Some(eig[eig.len() - 1]) })
            }
        }
    }
}

/// Apply a resolvent approximant to a vector:
/// `Σ_j γ̄_j (η̄_j I + A)^{-1} v ≈ (I + hA^α)^{-1} v`.
pub fn apply_resolvent_form(
    form: &ResolventForm,
    op: &Operator,
    v: &[f64],
) -> Result<Vec<f64>> {
    let mut acc = vec![0.0; op.dim()];
    for (&res, &pole) in form.residues.iter().zip(&form.poles) {
        let term = op.shifted_solve(pole, v)?;
        for (a, t) in acc.iter_mut().zip(term) {
            *a += res * t;
        }
    }
    Ok(acc)
}

/// Exact `(I + hA^α)^{-1} v` through the closed-form eigensystem: entrywise
/// for diagonal variants; for the second-difference matrix, analysis and
/// synthesis against the sine eigenvectors `u_j(i) = sin(ijπ/(N+1))`
/// (normalization 2/(N+1)), with the needed sines read from one precomputed
/// table indexed by `i·j mod 2(N+1)` so no angle accumulates rounding.
pub fn resolvent_exact(op: &Operator, h: f64, alpha: f64, v: &[f64]) -> Result<Vec<f64>> {
    if v.len() != op.dim() {
        return Err(Error::Dimension { expected: op.dim(), got: v.len() });
    }
    if !(h >= 0.0 && h.is_finite()) {
        return Err(Error::domain(format!("h must be >= 0, got {h}")));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    match op {
        Operator::Diagonal { .. } | Operator::DiagonalPower { .. } => {
            let eig: Vec<f64> = match op {
                Operator::Diagonal { entries } => entries.clone(),
                Operator::DiagonalPower { n, p } => {
                    (1..=*n).map(|j| (j as f64).powi(*p as i32)).collect()
                }
                _ => unreachable!(),
            };
            Ok(eig
                .iter()
                .zip(v)
                .map(|(&l, &x)| x / (1.0 + h * l.powf(alpha)))
                .collect())
        }
        Operator::Laplacian1D { n } => {
            let n = *n;
            let m = n + 1;
            let table: Vec<f64> = (0..2 * m).map(|t| (t as f64 * PI / m as f64).sin()).collect();
            let eig = op.eigenvalues()?;
            // Analysis: coef_j = Σ_i v_i sin(ijπ/m).
            let mut coef = vec![0.0; n];
            for (j, c) in coef.iter_mut().enumerate() {
                let jj = j + 1;
                *c = v
                    .iter()
                    .enumerate()
                    .map(|(i, &x)| x * table[(i + 1) * jj % (2 * m)])
                    .sum();
            }
            // Filter and synthesize with the 2/m normalization.
            for (c, &l) in coef.iter_mut().zip(&eig) {
                *c *= 2.0 / m as f64 / (1.0 + h * l.powf(alpha));
            }
            Ok((0..n)
                .map(|i| {
                    coef.iter()
                        .enumerate()
                        .map(|(j, &c)| c * table[(i + 1) * (j + 1) % (2 * m)])
                        .sum()
                })
                .collect())
        }
        Operator::DenseSpd { .. } => Err(Error::unsupported(
            "exact resolvent needs a closed-form eigensystem; dense operators are not supported",
        )),
    }
}

/// 2-norm of the operator-level approximation error,
/// `‖(I + hA^α)^{-1} - S(A)‖₂ = max_j |(1 + hλ_j^α)^{-1} - S(λ_j)|`,
/// exact for self-adjoint A with closed-form eigenvalues.
pub fn operator_error_norm(form: &ResolventForm, op: &Operator) -> Result<f64> {
    let eig = op.eigenvalues()?;
    Ok(eig
        .iter()
        .map(|&l| resolvent_error(l, form).abs())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::sym_eig;
    use crate::pade::build_pade;
    use approx::assert_relative_eq;

    fn lap_dense(n: usize) -> Vec<Vec<f64>> {
        let s = ((n + 1) * (n + 1)) as f64;
        let mut m = vec![vec![0.0; n]; n];
        for i in 0..n {
            m[i][i] = 2.0 * s;
            if i > 0 {
                m[i][i - 1] = -s;
            }
            if i + 1 < n {
                m[i][i + 1] = -s;
            }
        }
        m
    }

    #[test]
    fn apply_basics() {
        let d = Operator::diagonal(vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(d.apply(&[1.0, 1.0, 1.0]).unwrap(), vec![1.0, 2.0, 3.0]);
        let l = Operator::laplacian_1d(3).unwrap();
        assert_eq!(l.apply(&[1.0, 0.0, 0.0]).unwrap(), vec![32.0, -16.0, 0.0]);
        let eye = Operator::dense_spd(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(eye.apply(&[3.0, -4.0]).unwrap(), vec![3.0, -4.0]);
    }

    #[test]
    fn shifted_solve_scalar_case() {
        let d = Operator::diagonal(vec![1.0]).unwrap();
        assert_eq!(d.shifted_solve(1.0, &[2.0]).unwrap(), vec![1.0]);
    }

    #[test]
    fn shifted_solve_residual_laplacian() {
        let op = Operator::laplacian_1d(50).unwrap();
        let v: Vec<f64> = (0..50).map(|i| ((i * 37 + 11) % 19) as f64 - 9.0).collect();
        let x = op.shifted_solve(0.7, &v).unwrap();
        let ax = op.apply(&x).unwrap();
        let vnorm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        let res: f64 = ax
            .iter()
            .zip(&x)
            .zip(&v)
            .map(|((&a, &xi), &b)| (a + 0.7 * xi - b) * (a + 0.7 * xi - b))
            .sum::<f64>()
            .sqrt();
        assert!(res <= 1e-11 * vnorm, "residual {res} too large");
    }

    #[test]
    fn thomas_matches_dense_factorization() {
        let n = 40;
        let tri = Operator::laplacian_1d(n).unwrap();
        let dense = Operator::dense_spd(lap_dense(n)).unwrap();
        let v: Vec<f64> = (0..n).map(|i| (i as f64 * 0.7).sin()).collect();
        let a = tri.shifted_solve(3.5, &v).unwrap();
        let b = dense.shifted_solve(3.5, &v).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_relative_eq!(x, y, max_relative = 1e-11);
        }
    }

    #[test]
    fn laplacian_eigenvalues_match_dense_eigensolver() {
        for n in [3, 8, 12] {
            let closed = Operator::laplacian_1d(n).unwrap().eigenvalues().unwrap();
            let (dense, _) = sym_eig(&lap_dense(n)).unwrap();
            for (c, d) in closed.iter().zip(&dense) {
                assert_relative_eq!(c, d, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn diagonal_power_entries() {
        let op = Operator::diagonal_power(100, 7).unwrap();
        let eig = op.eigenvalues().unwrap();
        assert_eq!(eig[0], 1.0);
        assert_eq!(eig[99], 1e14);
        let b = op.spectrum_bounds().unwrap();
        assert_eq!(b.c, 1.0);
        assert_eq!(b.lambda_max, Some(1e14));
    }

    #[test]
    fn resolvent_form_application_matches_scalar() {
        let f = build_pade(6, 0.5, 10.0).unwrap();
        let s = ResolventForm::build(&f, 1e-2).unwrap();
        let lambda = 3.7;
        let op = Operator::diagonal(vec![lambda]).unwrap();
        let w = apply_resolvent_form(&s, &op, &[2.0]).unwrap();
        assert_relative_eq!(w[0], 2.0 * s.eval(lambda), max_relative = 1e-13);
    }

    #[test]
    fn resolvent_form_application_is_linear() {
        let f = build_pade(5, 0.3, 4.0).unwrap();
        let s = ResolventForm::build(&f, 0.1).unwrap();
        let op = Operator::laplacian_1d(20).unwrap();
        let v: Vec<f64> = (0..20).map(|i| (i as f64 - 7.5) / 4.0).collect();
        let w1 = apply_resolvent_form(&s, &op, &v).unwrap();
        let scaled: Vec<f64> = v.iter().map(|x| 3.25 * x).collect();
        let w2 = apply_resolvent_form(&s, &op, &scaled).unwrap();
        for (a, b) in w1.iter().zip(&w2) {
            assert_relative_eq!(3.25 * a, b, max_relative = 1e-12);
        }
    }

    #[test]
    fn exact_resolvent_trivial_cases() {
        let d = Operator::diagonal(vec![1.0]).unwrap();
        let w = resolvent_exact(&d, 0.25, 0.7, &[2.0]).unwrap();
        assert_relative_eq!(w[0], 2.0 / 1.25, max_relative = 1e-15);
        let op = Operator::laplacian_1d(9).unwrap();
        let v: Vec<f64> = (0..9).map(|i| 1.0 + i as f64).collect();
        let w = resolvent_exact(&op, 0.0, 0.5, &v).unwrap();
        for (a, b) in w.iter().zip(&v) {
            assert_relative_eq!(a, b, max_relative = 1e-10);
        }
    }

    #[test]
    fn exact_resolvent_matches_dense_eigen_route() {
        let n = 8;
        let op = Operator::laplacian_1d(n).unwrap();
        let v: Vec<f64> = (0..n).map(|i| ((i as f64) * 0.31).cos()).collect();
        let (h, alpha) = (1e-2, 0.6);
        let fast = resolvent_exact(&op, h, alpha, &v).unwrap();
        let (eig, q) = sym_eig(&lap_dense(n)).unwrap();
        // Dense route: w = Q diag(1/(1+hλ^α)) Qᵀ v.
        let mut coef = vec![0.0; n];
        for j in 0..n {
            for i in 0..n {
                coef[j] += q[i][j] * v[i];
            }
            coef[j] /= 1.0 + h * eig[j].powf(alpha);
        }
        for i in 0..n {
            let w: f64 = (0..n).map(|j| q[i][j] * coef[j]).sum();
            assert_relative_eq!(fast[i], w, max_relative = 1e-10, epsilon = 1e-13);
        }
    }

    #[test]
    fn error_norm_single_eigenvalue() {
        let f = build_pade(4, 0.5, 2.0).unwrap();
        let s = ResolventForm::build(&f, 0.5).unwrap();
        let op = Operator::diagonal(vec![3.0]).unwrap();
        let e = operator_error_norm(&s, &op).unwrap();
        assert_relative_eq!(e, resolvent_error(3.0, &s).abs(), max_relative = 1e-15);
        // Adding eigenvalues can only increase the max.
        let wider = Operator::diagonal(vec![3.0, 0.5, 40.0]).unwrap();
        assert!(operator_error_norm(&s, &wider).unwrap() >= e);
    }

    #[test]
    fn rejects_invalid_construction() {
        assert!(Operator::diagonal(vec![]).is_err());
        assert!(Operator::diagonal(vec![1.0, -2.0]).is_err());
        assert!(Operator::diagonal_power(0, 3).is_err());
        assert!(Operator::diagonal_power(1000, 120).is_err());
        assert!(Operator::dense_spd(vec![vec![1.0, 0.5], vec![0.4, 1.0]]).is_err());
        assert!(Operator::dense_spd(vec![vec![1.0, 2.0], vec![2.0, 1.0]]).is_err());
        let d = Operator::diagonal(vec![1.0, 2.0]).unwrap();
        assert!(d.apply(&[1.0]).is_err());
        assert!(d.shifted_solve(-0.5, &[1.0, 1.0]).is_err());
        let dense = Operator::dense_spd(vec![vec![2.0]]).unwrap();
        assert!(resolvent_exact(&dense, 0.1, 0.5, &[1.0]).is_err());
        assert!(dense.eigenvalues().is_err());
    }
}
