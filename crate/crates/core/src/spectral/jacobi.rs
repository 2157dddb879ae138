//! Cyclic Jacobi eigenvalue algorithm for dense symmetric matrices.
//!
//! Slower than the tridiagonal route (every sweep is O(n³)) but it shares no
//! code with it, which makes it a useful cross-check on small matrices.

use crate::error::{Error, Result};
use crate::linalg::Matrix;

pub const MAX_SWEEPS: usize = 100;
/// Stop once the off-diagonal Frobenius norm falls below this fraction of ‖A‖_F.
pub const OFF_DIAGONAL_TOL: f64 = 1e-12;

/// Returns unsorted eigenvalues and the matching unit eigenvectors.
pub(crate) fn jacobi_eigen(a: &Matrix) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = a.rows();
    let mut a = a.clone();
    let mut v = Matrix::identity(n);
    let scale = a.frobenius_norm();
    let threshold = OFF_DIAGONAL_TOL * scale;

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                rotate(&mut a, &mut v, p, q, c, s);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > threshold {
        return Err(Error::NoConvergence(format!(
            "Jacobi did not converge in {MAX_SWEEPS} sweeps"
        )));
    }
    let values = (0..n).map(|i| a[(i, i)]).collect();
    let vectors = (0..n).map(|j| (0..n).map(|i| v[(i, j)]).collect()).collect();
    Ok((values, vectors))
}

/// `A ← Jᵀ A J`, `V ← V J` for the plane rotation in coordinates `(p, q)`.
fn rotate(a: &mut Matrix, v: &mut Matrix, p: usize, q: usize, c: f64, s: f64) {
    let n = a.rows();
    for k in 0..n {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
    for k in 0..n {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
    for k in 0..n {
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}
