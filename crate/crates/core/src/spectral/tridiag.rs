//! Householder reduction to tridiagonal form, implicit QL iteration, and
//! inverse iteration for selected eigenvectors.

use crate::error::{Error, Result};
use crate::linalg::{dot, norm, Matrix};
use crate::rng::SplitMix64;

/// QL sweeps allowed per eigenvalue before giving up.
const MAX_QL_ITERATIONS: usize = 60;
const MAX_INVERSE_ITERATIONS: usize = 12;

struct Reflector {
    v: Vec<f64>,
    beta: f64,
}

/// `A = Q T Qᵀ` with `T` symmetric tridiagonal and `Q` a product of Householder reflectors.
pub(crate) struct Tridiagonal {
    pub diag: Vec<f64>,
    /// `off[i] = T[i][i+1]`.
    pub off: Vec<f64>,
    /// Reflector `k` acts on coordinates `k+1..n`.
    reflectors: Vec<Reflector>,
}

impl Tridiagonal {
    pub fn reduce(a: &Matrix) -> Self {
        let n = a.rows();
        let mut work: Vec<f64> = (0..n).flat_map(|i| a.row(i).to_vec()).collect();
        let mut diag = vec![0.0; n];
        let mut off = vec![0.0; n.saturating_sub(1)];
        let mut reflectors = Vec::with_capacity(n.saturating_sub(2));
        let mut p = vec![0.0; n];

        for k in 0..n.saturating_sub(2) {
            diag[k] = work[k * n + k];
            let m = n - k - 1;
            let x = &work[k * n + k + 1..(k + 1) * n];
            let tail = norm(&x[1..]);
            if tail == 0.0 {
                off[k] = x[0];
                reflectors.push(Reflector { v: Vec::new(), beta: 0.0 });
                continue;
            }
            let xnorm = x[0].hypot(tail);
            let alpha = if x[0] >= 0.0 { -xnorm } else { xnorm };
            let mut v = x.to_vec();
            v[0] -= alpha;
            let beta = 2.0 / dot(&v, &v);
            off[k] = alpha;

            // p = β B v over the trailing block B = work[k+1.., k+1..]
            let base = k + 1;
            for (i, pi) in p[..m].iter_mut().enumerate() {
                let row = &work[(base + i) * n + base..(base + i + 1) * n];
                *pi = beta * dot(row, &v);
            }
            let kfac = 0.5 * beta * dot(&p[..m], &v);
            for i in 0..m {
                p[i] -= kfac * v[i];
            }
            // B -= v wᵀ + w vᵀ with w = p
            for i in 0..m {
                let (vi, wi) = (v[i], p[i]);
                let row = &mut work[(base + i) * n + base..(base + i + 1) * n];
                for ((b, &vj), &wj) in row.iter_mut().zip(&v).zip(&p[..m]) {
                    *b -= vi * wj + wi * vj;
                }
            }
            reflectors.push(Reflector { v, beta });
        }
        if n >= 2 {
            diag[n - 2] = work[(n - 2) * n + n - 2];
            diag[n - 1] = work[(n - 1) * n + n - 1];
            off[n - 2] = work[(n - 2) * n + n - 1];
        } else if n == 1 {
            diag[0] = work[0];
        }
        Self { diag, off, reflectors }
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    /// Maps a vector in tridiagonal coordinates back: `y ← Q y`.
    pub fn apply_q(&self, y: &mut [f64]) {
        for (k, r) in self.reflectors.iter().enumerate().rev() {
            if r.beta == 0.0 {
                continue;
            }
            let seg = &mut y[k + 1..];
            let s = r.beta * dot(&r.v, seg);
            for (yi, &vi) in seg.iter_mut().zip(&r.v) {
                *yi -= s * vi;
            }
        }
    }

    /// Max-row-sum norm of `T`.
    pub fn norm(&self) -> f64 {
        let n = self.n();
        (0..n)
            .map(|i| {
                let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
                let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
                left + self.diag[i].abs() + right
            })
            .fold(0.0, f64::max)
    }

    /// All eigenvalues (unsorted).
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let mut d = self.diag.clone();
        ql_implicit(&mut d, &self.off, None)?;
        Ok(d)
    }

    /// All eigenpairs; the returned vectors are unit eigenvectors of the original matrix.
    pub fn eigenpairs(&self) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
        let n = self.n();
        let mut z: Vec<Vec<f64>> = (0..n)
            .map(|j| {
                let mut e = vec![0.0; n];
                e[j] = 1.0;
                self.apply_q(&mut e);
                e
            })
            .collect();
        let mut d = self.diag.clone();
        ql_implicit(&mut d, &self.off, Some(&mut z))?;
        Ok((d, z))
    }

    /// Unit eigenvectors of the original matrix for the given eigenvalues of `T`,
    /// which must be sorted in descending order.
    pub fn eigenvectors_for(&self, eigenvalues: &[f64]) -> Result<Vec<Vec<f64>>> {
        let n = self.n();
        let tnorm = self.norm().max(f64::MIN_POSITIVE);
        let cluster_gap = 1e-3 * tnorm;
        let min_sep = 10.0 * f64::EPSILON * tnorm;
        let mut vectors: Vec<Vec<f64>> = Vec::with_capacity(eigenvalues.len());
        let mut shifts: Vec<f64> = Vec::with_capacity(eigenvalues.len());

        for (j, &lambda) in eigenvalues.iter().enumerate() {
            // nudge coincident shifts apart so repeated eigenvalues get distinct vectors
            let mut shift = lambda;
            if let Some(&prev) = shifts.last() {
                if prev - shift < min_sep {
                    shift = prev - min_sep;
                }
            }
            shifts.push(shift);
            let cluster: Vec<usize> = (0..j).filter(|&i| (eigenvalues[i] - lambda).abs() <= cluster_gap).collect();

            let lu = ShiftedLu::factor(&self.diag, &self.off, shift, tnorm);
            let mut rng = SplitMix64::new(0x5EED ^ j as u64);
            let mut x: Vec<f64> = (0..n).map(|_| (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 - 0.5).collect();
            normalize(&mut x);
            let mut converged = false;
            let mut residual = f64::INFINITY;
            for it in 0..MAX_INVERSE_ITERATIONS {
                lu.solve(&mut x);
                for &i in &cluster {
                    orthogonalize(&mut x, &vectors[i]);
                }
                if !normalize(&mut x) {
                    // solve underflowed to zero; restart from a fresh direction
                    x = (0..n).map(|_| (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 - 0.5).collect();
                    normalize(&mut x);
                    continue;
                }
                residual = tridiag_residual(&self.diag, &self.off, lambda, &x);
                if it >= 1 && residual <= 1e-12 * tnorm {
                    converged = true;
                    break;
                }
            }
            if !converged && residual > 1e-10 * tnorm {
                return Err(Error::NoConvergence(format!(
                    "inverse iteration for eigenvalue {lambda:e} stalled at residual {residual:e}"
                )));
            }
            vectors.push(x);
        }
        // back to the original basis; Q is orthogonal so the vectors stay unit length
        for x in &mut vectors {
            self.apply_q(x);
        }
        Ok(vectors)
    }
}

fn normalize(x: &mut [f64]) -> bool {
    let nrm = norm(x);
    if nrm == 0.0 || !nrm.is_finite() {
        return false;
    }
    for v in x.iter_mut() {
        *v /= nrm;
    }
    true
}

fn orthogonalize(x: &mut [f64], against: &[f64]) {
    for _ in 0..2 {
        let c = dot(x, against);
        for (xi, &ai) in x.iter_mut().zip(against) {
            *xi -= c * ai;
        }
    }
}

fn tridiag_residual(d: &[f64], e: &[f64], lambda: f64, x: &[f64]) -> f64 {
    let n = d.len();
    let mut s = 0.0;
    for i in 0..n {
        let mut r = (d[i] - lambda) * x[i];
        if i > 0 {
            r += e[i - 1] * x[i - 1];
        }
        if i + 1 < n {
            r += e[i] * x[i + 1];
        }
        s += r * r;
    }
    s.sqrt()
}

/// LU factorization with partial pivoting of `T − σI`.
struct ShiftedLu {
    dl: Vec<f64>,
    d: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    swapped: Vec<bool>,
}

impl ShiftedLu {
    fn factor(diag: &[f64], off: &[f64], shift: f64, tnorm: f64) -> Self {
        let n = diag.len();
        let mut d: Vec<f64> = diag.iter().map(|x| x - shift).collect();
        let mut dl = off.to_vec();
        let mut du = off.to_vec();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                if d[i] != 0.0 {
                    let fact = dl[i] / d[i];
                    dl[i] = fact;
                    d[i + 1] -= fact * du[i];
                }
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -fact;
                }
                swapped[i] = true;
            }
        }
        let tiny = f64::EPSILON * tnorm;
        for x in &mut d {
            if x.abs() < tiny {
                *x = if *x < 0.0 { -tiny } else { tiny };
            }
        }
        Self { dl, d, du, du2, swapped }
    }

    fn solve(&self, b: &mut [f64]) {
        let n = self.d.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                let temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - self.dl[i] * b[i];
            } else {
                b[i + 1] -= self.dl[i] * b[i];
            }
        }
        for i in (0..n).rev() {
            let mut s = b[i];
            if i + 1 < n {
                s -= self.du[i] * b[i + 1];
            }
            if i + 2 < n {
                s -= self.du2[i] * b[i + 2];
            }
            b[i] = s / self.d[i];
        }
        // rescale to keep the iterate representable
        let m = b.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if m > 1e100 {
            for x in b.iter_mut() {
                *x /= m;
            }
        }
    }
}

/// Implicit QL with Wilkinson shifts on the tridiagonal `(d, off)`.
///
/// On return `d` holds the eigenvalues. When `z` is given its rows are rotated;
/// if row `j` starts as column `j` of `Q`, row `i` ends as the eigenvector of `d[i]`.
pub(crate) fn ql_implicit(d: &mut [f64], off: &[f64], mut z: Option<&mut Vec<Vec<f64>>>) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(off);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd || e[m].abs() < f64::MIN_POSITIVE {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_ITERATIONS {
                return Err(Error::NoConvergence(format!(
                    "QL iteration exceeded {MAX_QL_ITERATIONS} sweeps at index {l}"
                )));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    let (lo, hi) = z.split_at_mut(i + 1);
                    let (zi, zi1) = (&mut lo[i], &mut hi[0]);
                    for (a, b) in zi.iter_mut().zip(zi1.iter_mut()) {
                        let f = *b;
                        *b = s * *a + c * f;
                        *a = c * *a - s * f;
                    }
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_matrix(n: usize, seed: u64) -> Matrix {
        let mut rng = SplitMix64::new(seed);
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let x = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 - 0.5;
                m[(i, j)] = x;
                m[(j, i)] = x;
            }
        }
        m
    }

    #[test]
    fn reduction_preserves_trace_and_frobenius() {
        let a = sample_matrix(9, 3);
        let t = Tridiagonal::reduce(&a);
        let trace: f64 = (0..9).map(|i| a[(i, i)]).sum();
        assert!((t.diag.iter().sum::<f64>() - trace).abs() < 1e-12);
        let fro_t: f64 = t.diag.iter().map(|x| x * x).sum::<f64>() + 2.0 * t.off.iter().map(|x| x * x).sum::<f64>();
        assert!((fro_t.sqrt() - a.frobenius_norm()).abs() < 1e-12);
    }

    #[test]
    fn eigenpairs_satisfy_residual() {
        let a = sample_matrix(12, 8);
        let (vals, vecs) = Tridiagonal::reduce(&a).eigenpairs().unwrap();
        for (l, v) in vals.iter().zip(&vecs) {
            let av = a.matvec(v).unwrap();
            let res: f64 = av.iter().zip(v).map(|(x, y)| (x - l * y).powi(2)).sum::<f64>().sqrt();
            assert!(res < 1e-12, "residual {res}");
        }
    }

    #[test]
    fn inverse_iteration_matches_full_solver() {
        let a = sample_matrix(15, 21);
        let t = Tridiagonal::reduce(&a);
        let mut vals = t.eigenvalues().unwrap();
        vals.sort_by(|x, y| y.total_cmp(x));
        let picked = [vals[0], vals[3], vals[14]];
        let vecs = t.eigenvectors_for(&picked).unwrap();
        for (l, v) in picked.iter().zip(&vecs) {
            let av = a.matvec(v).unwrap();
            let res: f64 = av.iter().zip(v).map(|(x, y)| (x - l * y).powi(2)).sum::<f64>().sqrt();
            assert!(res < 1e-11, "residual {res}");
            assert!((norm(v) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn inverse_iteration_separates_repeated_eigenvalues() {
        // diag(2, 2, 1) conjugated by a rotation
        let c = 0.6f64;
        let s = 0.8f64;
        let q = Matrix::from_rows(&[vec![c, -s, 0.0], vec![s, c, 0.0], vec![0.0, 0.0, 1.0]]).unwrap();
        let d = Matrix::from_rows(&[vec![2.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 2.0]]).unwrap();
        let a = q.matmul(&d).unwrap().matmul(&q.transpose()).unwrap();
        let t = Tridiagonal::reduce(&a);
        let vecs = t.eigenvectors_for(&[2.0, 2.0]).unwrap();
        assert!(dot(&vecs[0], &vecs[1]).abs() < 1e-12);
        for v in &vecs {
            let av = a.matvec(v).unwrap();
            let res: f64 = av.iter().zip(v).map(|(x, y)| (x - 2.0 * y).powi(2)).sum::<f64>().sqrt();
            assert!(res < 1e-12);
        }
    }

    #[test]
    fn trivial_sizes() {
        let one = Matrix::from_rows(&[vec![3.0]]).unwrap();
        assert_eq!(Tridiagonal::reduce(&one).eigenvalues().unwrap(), vec![3.0]);
        let two = Matrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let mut v = Tridiagonal::reduce(&two).eigenvalues().unwrap();
        v.sort_by(f64::total_cmp);
        assert!((v[0] + 1.0).abs() < 1e-15 && (v[1] - 1.0).abs() < 1e-15);
    }
}
