//! Symmetric eigendecomposition, shift operators, eigenvalue clustering and
//! eigenspace projections.
//!
//! Eigenvectors are stored as functions orthonormal under a weighted inner
//! product `⟨f, g⟩ = Σ wᵢ fᵢ gᵢ`: weights `1/n` for graphs, block measures for
//! step graphons, and 1 for the counting measure on a group. Solving the
//! symmetric matrix `M` with weights `w` yields `φ = W^{-1/2} u` for each unit
//! eigenvector `u` of `M`.

mod jacobi;
mod tridiag;

use std::ops::Range;

use crate::error::{Error, Result};
use crate::graphon::{Signal, SignalSpace, StepGraphon, TorusCayleyGraphon};
use crate::group::TorusPoint;
use crate::linalg::Matrix;
use crate::sampler::SampledGraph;

pub use jacobi::{MAX_SWEEPS as JACOBI_MAX_SWEEPS, OFF_DIAGONAL_TOL as JACOBI_OFF_DIAGONAL_TOL};

/// Default clustering tolerance for exact model matrices.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-9;
/// Inputs whose asymmetry exceeds this (relative to max(1, max|M|)) are rejected.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Entries within this relative margin of the largest magnitude count as ties for the sign rule.
const SIGN_TIE_TOL: f64 = 1e-10;

/// A finite vertex space together with its inner-product weights.
#[derive(Clone, Debug, PartialEq)]
pub struct InnerProduct {
    weights: Vec<f64>,
    space: SignalSpace,
}

impl InnerProduct {
    pub fn new(weights: Vec<f64>, space: SignalSpace) -> Result<Self> {
        if weights.iter().any(|&w| !(w > 0.0 && w.is_finite())) {
            return Err(Error::InvalidArgument("inner-product weights must be positive".into()));
        }
        Ok(Self { weights, space })
    }

    /// `⟨f, g⟩ = (1/n) Σ fᵢ gᵢ` on graph vertices.
    pub fn graph(n: usize) -> Self {
        Self {
            weights: vec![1.0 / n as f64; n],
            space: SignalSpace::Vertices,
        }
    }

    /// Block-measure weights of a step graphon.
    pub fn blocks(measures: &[f64]) -> Self {
        Self {
            weights: measures.to_vec(),
            space: SignalSpace::Blocks,
        }
    }

    /// Counting measure on a finite group.
    pub fn counting(n: usize) -> Self {
        Self {
            weights: vec![1.0; n],
            space: SignalSpace::Group,
        }
    }

    /// Uniform grid of `m` points on the circle.
    pub fn grid(m: usize) -> Self {
        Self {
            weights: vec![1.0 / m as f64; m],
            space: SignalSpace::Grid,
        }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn space(&self) -> SignalSpace {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn dot(&self, a: &[f64], b: &[f64]) -> f64 {
        self.weights.iter().zip(a).zip(b).map(|((w, x), y)| w * x * y).sum()
    }

    pub fn norm(&self, a: &[f64]) -> f64 {
        self.dot(a, a).sqrt()
    }

    /// Checks that `f` lives on this space.
    pub fn check(&self, f: &Signal) -> Result<()> {
        if f.space() != self.space {
            return Err(Error::SpaceMismatch(format!(
                "signal lives on {:?}, spectrum on {:?}",
                f.space(),
                self.space
            )));
        }
        if f.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: f.len(),
            });
        }
        Ok(())
    }
}

/// Eigenpairs sorted by descending eigenvalue.
///
/// A spectrum may be partial (a selected subset of eigenpairs); it is still
/// orthonormal and sorted.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    eigenvectors: Vec<Vec<f64>>,
    inner: InnerProduct,
    complete: bool,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Whether every eigenpair of the operator is present.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvalue(&self, i: usize) -> f64 {
        self.eigenvalues[i]
    }

    pub fn eigenvectors(&self) -> &[Vec<f64>] {
        &self.eigenvectors
    }

    pub fn eigenvector(&self, i: usize) -> &[f64] {
        &self.eigenvectors[i]
    }

    pub fn inner_product(&self) -> &InnerProduct {
        &self.inner
    }

    pub fn dim(&self) -> usize {
        self.inner.dim()
    }

    /// Gram matrix of the eigenvectors under the weighted inner product.
    pub fn gram(&self) -> Matrix {
        let k = self.len();
        Matrix::from_fn(k, k, |i, j| self.inner.dot(&self.eigenvectors[i], &self.eigenvectors[j]))
    }

    /// Replaces `(φ_i, φ_j)` by their rotation through `angle`.
    ///
    /// Only meaningful inside an eigenspace, so `λ_i` and `λ_j` must agree to `tol`.
    pub fn rotate_pair(&self, i: usize, j: usize, angle: f64, tol: f64) -> Result<Self> {
        if i >= self.len() || j >= self.len() || i == j {
            return Err(Error::InvalidArgument(format!("bad eigenvector pair ({i}, {j})")));
        }
        if (self.eigenvalues[i] - self.eigenvalues[j]).abs() > tol {
            return Err(Error::InvalidArgument(format!(
                "eigenvalues {} and {} are not in one eigenspace",
                self.eigenvalues[i], self.eigenvalues[j]
            )));
        }
        let (c, s) = (angle.cos(), angle.sin());
        let mut out = self.clone();
        for k in 0..self.dim() {
            let (a, b) = (self.eigenvectors[i][k], self.eigenvectors[j][k]);
            out.eigenvectors[i][k] = c * a - s * b;
            out.eigenvectors[j][k] = s * a + c * b;
        }
        Ok(out)
    }

    /// Eigenpairs serialized as `{"eigenvalues": [...], "eigenvectors": [[...], ...]}`.
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&serde_json::json!({
            "eigenvalues": self.eigenvalues,
            "eigenvectors": self.eigenvectors,
        }))?)
    }

    /// `rank,eigenvalue` rows with a header, 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("rank,eigenvalue\n");
        for (i, l) in self.eigenvalues.iter().enumerate() {
            out.push_str(&format!("{},{:.16e}\n", i + 1, l));
        }
        out
    }
}

/// A symmetric matrix reduced to tridiagonal form, with all eigenvalues computed.
///
/// Eigenvectors are produced on demand, either all at once or for a selection.
pub struct SymmetricEigen {
    tri: tridiag::Tridiagonal,
    /// Eigenvalues sorted descending.
    eigenvalues: Vec<f64>,
}

impl SymmetricEigen {
    pub fn new(m: &Matrix) -> Result<Self> {
        check_symmetric(m)?;
        let tri = tridiag::Tridiagonal::reduce(m);
        let mut eigenvalues = tri.eigenvalues()?;
        eigenvalues.sort_by(|a, b| b.total_cmp(a));
        Ok(Self { tri, eigenvalues })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Full spectrum.
    pub fn spectrum(&self, inner: &InnerProduct) -> Result<Spectrum> {
        check_dim(inner, self.tri.n())?;
        let (values, vectors) = self.tri.eigenpairs()?;
        Ok(finish(values, vectors, inner.clone(), true))
    }

    /// Eigenpairs at the given positions of the descending eigenvalue list.
    pub fn select(&self, positions: &[usize], inner: &InnerProduct) -> Result<Spectrum> {
        check_dim(inner, self.tri.n())?;
        let mut positions = positions.to_vec();
        positions.sort_unstable();
        positions.dedup();
        if let Some(&p) = positions.iter().find(|&&p| p >= self.eigenvalues.len()) {
            return Err(Error::InvalidArgument(format!("eigenvalue position {p} out of range")));
        }
        let values: Vec<f64> = positions.iter().map(|&p| self.eigenvalues[p]).collect();
        let vectors = self.tri.eigenvectors_for(&values)?;
        let complete = values.len() == self.eigenvalues.len();
        Ok(finish(values, vectors, inner.clone(), complete))
    }

    /// The `k` eigenpairs of largest magnitude, sorted by signed value.
    pub fn top_by_magnitude(&self, k: usize, inner: &InnerProduct) -> Result<Spectrum> {
        self.select(&magnitude_order(&self.eigenvalues)[..k.min(self.eigenvalues.len())], inner)
    }
}

/// Positions of `values` ordered by decreasing magnitude; ties keep their original order.
pub fn magnitude_order(values: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[b].abs().total_cmp(&values[a].abs()));
    idx
}

/// The `k` values of largest magnitude, sorted descending by signed value.
pub fn top_k_by_magnitude(values: &[f64], k: usize) -> Vec<f64> {
    let mut out: Vec<f64> = magnitude_order(values).into_iter().take(k).map(|i| values[i]).collect();
    out.sort_by(|a, b| b.total_cmp(a));
    out
}

fn check_symmetric(m: &Matrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            got: m.cols(),
        });
    }
    let asym = m.max_asymmetry();
    if asym > SYMMETRY_TOL * m.max_abs().max(1.0) || asym.is_nan() {
        return Err(Error::NotSymmetric(asym));
    }
    Ok(())
}

fn check_dim(inner: &InnerProduct, n: usize) -> Result<()> {
    if inner.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: inner.dim(),
        });
    }
    Ok(())
}

/// Sorts pairs, applies weights and the sign convention.
fn finish(values: Vec<f64>, vectors: Vec<Vec<f64>>, inner: InnerProduct, complete: bool) -> Spectrum {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    let scale: Vec<f64> = inner.weights.iter().map(|w| 1.0 / w.sqrt()).collect();
    let mut eigenvalues = Vec::with_capacity(values.len());
    let mut eigenvectors = Vec::with_capacity(values.len());
    for i in order {
        let mut phi: Vec<f64> = vectors[i].iter().zip(&scale).map(|(u, s)| u * s).collect();
        apply_sign_convention(&mut phi);
        eigenvalues.push(values[i]);
        eigenvectors.push(phi);
    }
    Spectrum {
        eigenvalues,
        eigenvectors,
        inner,
        complete,
    }
}

/// Flips `v` so that its largest-magnitude entry (lowest index among near-ties) is positive.
pub fn apply_sign_convention(v: &mut [f64]) {
    let max = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if max == 0.0 {
        return;
    }
    let pivot = v
        .iter()
        .position(|x| x.abs() >= max * (1.0 - SIGN_TIE_TOL))
        .expect("maximum exists");
    if v[pivot] < 0.0 {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
}

/// Full eigendecomposition of the symmetric matrix `m` (Householder + implicit QL).
pub fn eig_sym(m: &Matrix, inner: &InnerProduct) -> Result<Spectrum> {
    SymmetricEigen::new(m)?.spectrum(inner)
}

/// The `k` eigenpairs of largest magnitude, sorted descending by signed value.
pub fn eig_sym_top(m: &Matrix, inner: &InnerProduct, k: usize) -> Result<Spectrum> {
    SymmetricEigen::new(m)?.top_by_magnitude(k, inner)
}

/// Eigenvalues only, sorted descending.
pub fn eigenvalues_sym(m: &Matrix) -> Result<Vec<f64>> {
    Ok(SymmetricEigen::new(m)?.eigenvalues)
}

/// Full eigendecomposition by cyclic Jacobi rotations.
pub fn eig_sym_jacobi(m: &Matrix, inner: &InnerProduct) -> Result<Spectrum> {
    check_symmetric(m)?;
    check_dim(inner, m.rows())?;
    let (values, vectors) = jacobi::jacobi_eigen(m)?;
    Ok(finish(values, vectors, inner.clone(), true))
}

/// Normalized adjacency `A/n` of a sampled graph.
pub fn shift_operator(g: &SampledGraph) -> Matrix {
    let n = g.n;
    let inv = 1.0 / n as f64;
    let mut m = Matrix::zeros(n, n);
    for (i, j) in g.adjacency.edges() {
        m[(i, j)] = inv;
        m[(j, i)] = inv;
    }
    m
}

/// Spectrum of the shift operator of `g` under the `1/n` inner product.
pub fn graph_spectrum(g: &SampledGraph) -> Result<Spectrum> {
    eig_sym(&shift_operator(g), &InnerProduct::graph(g.n))
}

/// Spectrum of the integral operator of a step graphon, as block functions.
pub fn step_spectrum(w: &StepGraphon) -> Result<Spectrum> {
    eig_sym(&w.symmetrized_operator(), &InnerProduct::blocks(w.block_measures()))
}

/// `m × m` matrix with entries `w(i/m, j/m)/m`.
pub fn discretize_torus(w: &TorusCayleyGraphon, m: usize) -> Result<Matrix> {
    if m < 2 {
        return Err(Error::InvalidArgument("torus discretization needs m ≥ 2".into()));
    }
    let inv = 1.0 / m as f64;
    // integer circular offsets keep the matrix exactly circulant
    Ok(Matrix::from_fn(m, m, |i, j| {
        let k = i.abs_diff(j);
        w.gamma(TorusPoint::new(k.min(m - k) as f64 * inv)) * inv
    }))
}

/// A run of eigenvalues treated as one eigenspace.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenCluster {
    pub start: usize,
    pub end: usize,
    /// Mean eigenvalue of the run.
    pub representative: f64,
    pub tolerance: f64,
}

impl EigenCluster {
    pub fn indices(&self) -> Range<usize> {
        self.start..self.end
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }
}

/// Greedy grouping of a descending list: a value joins the current run when it is
/// within `tol` of the run's smallest member.
pub fn cluster_values(values: &[f64], tol: f64) -> Result<Vec<EigenCluster>> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("cluster tolerance {tol} must be positive")));
    }
    let mut clusters = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i - 1] - values[i] > tol {
            if i > start {
                let mean = values[start..i].iter().sum::<f64>() / (i - start) as f64;
                clusters.push(EigenCluster {
                    start,
                    end: i,
                    representative: mean,
                    tolerance: tol,
                });
            }
            start = i;
        }
    }
    Ok(clusters)
}

pub fn cluster_eigenvalues(s: &Spectrum, tol: f64) -> Result<Vec<EigenCluster>> {
    cluster_values(&s.eigenvalues, tol)
}

/// Orthogonal projection of `f` onto the span of a cluster's eigenvectors.
pub fn project(s: &Spectrum, c: &EigenCluster, f: &Signal) -> Result<Signal> {
    s.inner.check(f)?;
    if c.end > s.len() {
        return Err(Error::DimensionMismatch {
            expected: s.len(),
            got: c.end,
        });
    }
    let mut out = vec![0.0; s.dim()];
    for i in c.indices() {
        let phi = &s.eigenvectors[i];
        let coef = s.inner.dot(f.values(), phi);
        for (o, &p) in out.iter_mut().zip(phi) {
            *o += coef * p;
        }
    }
    Signal::new(out, f.space())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphon::canonical_s3_cayley;
    use crate::rng::SplitMix64;

    fn random_symmetric(n: usize, seed: u64) -> Matrix {
        let mut rng = SplitMix64::new(seed);
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let x = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0;
                m[(i, j)] = x;
                m[(j, i)] = x;
            }
        }
        m
    }

    fn max_residual(m: &Matrix, s: &Spectrum) -> f64 {
        // residual of M u = λ u with u = W^{1/2} φ
        let w = s.inner_product().weights();
        let mut worst: f64 = 0.0;
        for (l, phi) in s.eigenvalues().iter().zip(s.eigenvectors()) {
            let u: Vec<f64> = phi.iter().zip(w).map(|(p, w)| p * w.sqrt()).collect();
            let mu = m.matvec(&u).unwrap();
            let r: f64 = mu.iter().zip(&u).map(|(a, b)| (a - l * b).powi(2)).sum::<f64>().sqrt();
            worst = worst.max(r);
        }
        worst
    }

    #[test]
    fn identity_spectrum() {
        let s = eig_sym(&Matrix::identity(5), &InnerProduct::counting(5)).unwrap();
        assert!(s.eigenvalues().iter().all(|&l| l == 1.0));
    }

    #[test]
    fn swap_matrix_spectrum() {
        let m = Matrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let s = eig_sym(&m, &InnerProduct::counting(2)).unwrap();
        assert!((s.eigenvalue(0) - 1.0).abs() < 1e-15);
        assert!((s.eigenvalue(1) + 1.0).abs() < 1e-15);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((s.eigenvector(0)[0] - r).abs() < 1e-15 && (s.eigenvector(0)[1] - r).abs() < 1e-15);
        // (1, -1)/√2 after the tie rule puts the positive entry first
        assert!((s.eigenvector(1)[0] - r).abs() < 1e-15 && (s.eigenvector(1)[1] + r).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_symmetric() {
        let m = Matrix::from_rows(&[vec![0.0, 1.0], vec![0.5, 0.0]]).unwrap();
        assert!(matches!(eig_sym(&m, &InnerProduct::counting(2)), Err(Error::NotSymmetric(_))));
        let r = Matrix::zeros(2, 3);
        assert!(eig_sym(&r, &InnerProduct::counting(2)).is_err());
    }

    #[test]
    fn tridiagonal_and_jacobi_agree() {
        for seed in 0..5 {
            let m = random_symmetric(17, seed);
            let inner = InnerProduct::counting(17);
            let a = eig_sym(&m, &inner).unwrap();
            let b = eig_sym_jacobi(&m, &inner).unwrap();
            for (x, y) in a.eigenvalues().iter().zip(b.eigenvalues()) {
                assert!((x - y).abs() < 1e-12);
            }
            // simple eigenvalues: vectors agree up to the shared sign rule
            for i in 0..17 {
                let d: f64 = a.eigenvector(i).iter().zip(b.eigenvector(i)).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
                assert!(d < 1e-9, "vector {i} differs by {d}");
            }
            assert!(max_residual(&m, &a) < 1e-12);
            assert!(max_residual(&m, &b) < 1e-10);
        }
    }

    #[test]
    fn weighted_orthonormality() {
        let m = random_symmetric(8, 3);
        let inner = InnerProduct::new(vec![0.05, 0.1, 0.15, 0.2, 0.1, 0.1, 0.2, 0.1], SignalSpace::Blocks).unwrap();
        let s = eig_sym(&m, &inner).unwrap();
        assert!(s.gram().max_abs_diff(&Matrix::identity(8)) < 1e-12);
    }

    #[test]
    fn deterministic_bits() {
        let m = random_symmetric(30, 9);
        let a = eig_sym(&m, &InnerProduct::graph(30)).unwrap();
        let b = eig_sym(&m, &InnerProduct::graph(30)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sign_convention_holds() {
        let s = eig_sym(&random_symmetric(10, 4), &InnerProduct::counting(10)).unwrap();
        for v in s.eigenvectors() {
            let max = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            let first = v.iter().find(|x| x.abs() >= max * (1.0 - 1e-10)).unwrap();
            assert!(*first > 0.0);
        }
    }

    #[test]
    fn partial_spectrum_matches_full() {
        let m = random_symmetric(25, 12);
        let inner = InnerProduct::graph(25);
        let full = eig_sym(&m, &inner).unwrap();
        let top = eig_sym_top(&m, &inner, 4).unwrap();
        assert!(!top.is_complete() && full.is_complete());
        let expected = top_k_by_magnitude(full.eigenvalues(), 4);
        for (i, &l) in expected.iter().enumerate() {
            assert!((top.eigenvalue(i) - l).abs() < 1e-13);
            let j = full.eigenvalues().iter().position(|&x| (x - l).abs() < 1e-13).unwrap();
            let d: f64 = top.eigenvector(i).iter().zip(full.eigenvector(j)).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            assert!(d < 1e-9);
        }
        assert!(top.gram().max_abs_diff(&Matrix::identity(4)) < 1e-12);
    }

    #[test]
    fn magnitude_selection() {
        assert_eq!(top_k_by_magnitude(&[0.5, 0.1, -0.7, -0.05], 2), vec![0.5, -0.7]);
        assert_eq!(magnitude_order(&[0.5, -0.5, 0.1]), vec![0, 1, 2]);
    }

    #[test]
    fn step_operator_examples() {
        let one = StepGraphon::uniform(Matrix::from_rows(&[vec![1.0]]).unwrap()).unwrap();
        let s = step_spectrum(&one).unwrap();
        assert_eq!(s.eigenvalues(), &[1.0]);

        let constant = StepGraphon::uniform(Matrix::from_fn(4, 4, |_, _| 0.3)).unwrap();
        let s = step_spectrum(&constant).unwrap();
        assert!((s.eigenvalue(0) - 0.3).abs() < 1e-15);
        assert!(s.eigenvalues()[1..].iter().all(|l| l.abs() < 1e-15));
    }

    #[test]
    fn s3_graphon_spectrum() {
        let w = canonical_s3_cayley().to_step();
        let s = step_spectrum(&w).unwrap();
        let l = s.eigenvalues();
        let r = 0.07f64.sqrt();
        let expected = [1.0 / 6.0, (0.6 + r) / 6.0, (0.6 + r) / 6.0, (0.6 - r) / 6.0, (0.6 - r) / 6.0, 0.2 / 6.0];
        for (a, b) in l.iter().zip(expected) {
            assert!((a - b).abs() < 1e-14, "{a} vs {b}");
        }
        let clusters = cluster_eigenvalues(&s, DEFAULT_CLUSTER_TOL).unwrap();
        let sizes: Vec<usize> = clusters.iter().map(EigenCluster::len).collect();
        assert_eq!(sizes, vec![1, 2, 2, 1]);
    }

    #[test]
    fn block_relabeling_preserves_spectrum() {
        let w = canonical_s3_cayley().to_step();
        let a = step_spectrum(&w).unwrap();
        let b = step_spectrum(&w.relabel(&[3, 1, 5, 0, 2, 4]).unwrap()).unwrap();
        for (x, y) in a.eigenvalues().iter().zip(b.eigenvalues()) {
            assert!((x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn cluster_examples() {
        let c = cluster_values(&[1.0, 0.5, 0.5 - 1e-12, 0.2], 1e-9).unwrap();
        assert_eq!(c.iter().map(|c| (c.start, c.end)).collect::<Vec<_>>(), vec![(0, 1), (1, 3), (3, 4)]);
        let all = cluster_values(&[0.3; 5], 1e-9).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].len(), 5);
        assert!(cluster_values(&[1.0], 0.0).is_err());
        assert!(cluster_values(&[], 1e-9).unwrap().is_empty());
    }

    #[test]
    fn projection_examples() {
        let m = random_symmetric(6, 77);
        let s = eig_sym(&m, &InnerProduct::graph(6)).unwrap();
        let f = Signal::new(vec![1.0, -2.0, 0.5, 3.0, 0.0, 1.5], SignalSpace::Vertices).unwrap();
        let all = EigenCluster {
            start: 0,
            end: 6,
            representative: 0.0,
            tolerance: 1e-9,
        };
        let p = project(&s, &all, &f).unwrap();
        for (a, b) in p.values().iter().zip(f.values()) {
            assert!((a - b).abs() < 1e-12);
        }
        // idempotent on a sub-cluster
        let sub = EigenCluster {
            start: 1,
            end: 3,
            representative: 0.0,
            tolerance: 1e-9,
        };
        let once = project(&s, &sub, &f).unwrap();
        let twice = project(&s, &sub, &once).unwrap();
        for (a, b) in once.values().iter().zip(twice.values()) {
            assert!((a - b).abs() < 1e-12);
        }
        // orthogonal to the cluster → zero
        let phi0 = Signal::new(s.eigenvector(0).to_vec(), SignalSpace::Vertices).unwrap();
        assert!(project(&s, &sub, &phi0).unwrap().values().iter().all(|x| x.abs() < 1e-12));

        let wrong = Signal::new(vec![1.0; 5], SignalSpace::Vertices).unwrap();
        assert!(project(&s, &sub, &wrong).is_err());
        let wrong_space = Signal::new(vec![1.0; 6], SignalSpace::Blocks).unwrap();
        assert!(project(&s, &sub, &wrong_space).is_err());
    }

    #[test]
    fn constant_graphon_projection_keeps_constants() {
        let w = StepGraphon::uniform(Matrix::from_fn(3, 3, |_, _| 0.4)).unwrap();
        let s = step_spectrum(&w).unwrap();
        let top = &cluster_eigenvalues(&s, DEFAULT_CLUSTER_TOL).unwrap()[0];
        let f = Signal::new(vec![2.0; 3], SignalSpace::Blocks).unwrap();
        let p = project(&s, top, &f).unwrap();
        for x in p.values() {
            assert!((x - 2.0).abs() < 1e-14);
        }
    }

    #[test]
    fn torus_discretization() {
        assert!(discretize_torus(&TorusCayleyGraphon::new(0.2, 0.08).unwrap(), 1).is_err());
        let w = TorusCayleyGraphon::new(0.2, 0.08).unwrap();
        let m = discretize_torus(&w, 200).unwrap();
        let vals = eigenvalues_sym(&m).unwrap();
        assert!((vals[0] - w.eigenvalue(0)).abs() < 0.01);
        // frequency-1 pair
        assert!((vals[1] - vals[2]).abs() < 1e-10);
        assert!((vals[1] - w.eigenvalue(1)).abs() < 0.02);
    }

    #[test]
    fn rotate_pair_requires_shared_eigenvalue() {
        let s = step_spectrum(&canonical_s3_cayley().to_step()).unwrap();
        assert!(s.rotate_pair(1, 2, 0.3, 1e-9).is_ok());
        assert!(s.rotate_pair(0, 1, 0.3, 1e-9).is_err());
        let r = s.rotate_pair(1, 2, 0.3, 1e-9).unwrap();
        assert!(r.gram().max_abs_diff(&Matrix::identity(6)) < 1e-12);
    }

    #[test]
    fn csv_format() {
        let s = eig_sym(&Matrix::identity(2), &InnerProduct::counting(2)).unwrap();
        assert_eq!(s.to_csv(), "rank,eigenvalue\n1,1.0000000000000000e0\n2,1.0000000000000000e0\n");
    }
}
