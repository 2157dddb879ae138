//! Finite frames, the Mercedes-Benz frame, and lifting eigenspace frames of
//! `π(S)` to a Parseval frame of functions on the group.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphon::{Signal, SignalSpace};
use crate::group::{symmetric_group, FiniteGroup};
use crate::linalg::{dot, Matrix};
use crate::rep::{
    cayley_adjacency, homomorphism_residual, orthogonality_residual, pi_of_s, s4_ranking_set, schur_residual,
    young_orthogonal_irreps, GeneratingSet, Irrep,
};
use crate::spectral::{cluster_eigenvalues, eig_sym, eigenvalues_sym, InnerProduct, DEFAULT_CLUSTER_TOL};

pub const ORTHONORMAL_TOL: f64 = 1e-10;
pub const TIGHT_TOL: f64 = 1e-10;

/// A finite system of vectors in `ℝᵐ` with its optimal frame bounds on the
/// subspace it spans.
#[derive(Clone, Debug, PartialEq)]
pub struct Frame {
    pub vectors: Vec<Vec<f64>>,
    pub space_dim: usize,
    pub bounds: (f64, f64),
}

impl Frame {
    pub fn new(vectors: Vec<Vec<f64>>, space_dim: usize) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::InvalidFrame("a frame needs at least one vector".into()));
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != space_dim) {
            return Err(Error::DimensionMismatch {
                expected: space_dim,
                got: v.len(),
            });
        }
        let op = operator(&vectors, space_dim);
        let eig = eigenvalues_sym(&op)?;
        let top = eig[0];
        if top <= 0.0 {
            return Err(Error::InvalidFrame("all frame vectors are zero".into()));
        }
        let lower = eig.iter().copied().filter(|&l| l > 1e-10 * top).fold(top, f64::min);
        Ok(Self {
            vectors,
            space_dim,
            bounds: (lower, top),
        })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn is_tight(&self, tol: f64) -> bool {
        (self.bounds.1 - self.bounds.0).abs() <= tol
    }

    /// `Σᵢ vᵢ vᵢᵀ`.
    pub fn frame_operator(&self) -> Matrix {
        operator(&self.vectors, self.space_dim)
    }

    /// Coefficients `⟨f, vᵢ⟩` under the unweighted inner product.
    pub fn analysis(&self, f: &Signal) -> Result<Vec<f64>> {
        if f.len() != self.space_dim {
            return Err(Error::DimensionMismatch {
                expected: self.space_dim,
                got: f.len(),
            });
        }
        Ok(self.vectors.iter().map(|v| dot(v, f.values())).collect())
    }

    /// `Σᵢ cᵢ vᵢ`.
    pub fn synthesis(&self, coeffs: &[f64]) -> Result<Signal> {
        if coeffs.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: coeffs.len(),
            });
        }
        let mut out = vec![0.0; self.space_dim];
        for (c, v) in coeffs.iter().zip(&self.vectors) {
            for (o, x) in out.iter_mut().zip(v) {
                *o += c * x;
            }
        }
        Signal::new(out, SignalSpace::Group)
    }
}

fn operator(vectors: &[Vec<f64>], m: usize) -> Matrix {
    let mut op = Matrix::zeros(m, m);
    for v in vectors {
        for i in 0..m {
            if v[i] == 0.0 {
                continue;
            }
            for (o, x) in op.row_mut(i).iter_mut().zip(v) {
                *o += v[i] * x;
            }
        }
    }
    op
}

/// Three unit vectors `b₁ cos θ + b₂ sin θ` for θ = 90°, 210°, 330°.
pub fn mercedes_benz(b1: &[f64], b2: &[f64]) -> Result<Frame> {
    if b1.len() != b2.len() {
        return Err(Error::DimensionMismatch {
            expected: b1.len(),
            got: b2.len(),
        });
    }
    let off = [
        (dot(b1, b1) - 1.0).abs(),
        (dot(b2, b2) - 1.0).abs(),
        dot(b1, b2).abs(),
    ];
    if off.iter().any(|&x| x > ORTHONORMAL_TOL) {
        return Err(Error::InvalidFrame("plane basis is not orthonormal".into()));
    }
    let vectors = [90.0f64, 210.0, 330.0]
        .iter()
        .map(|deg| {
            let (s, c) = deg.to_radians().sin_cos();
            b1.iter().zip(b2).map(|(x, y)| c * x + s * y).collect()
        })
        .collect();
    Frame::new(vectors, b1.len())
}

/// Where a lifted vector came from.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LiftSource {
    pub irrep: usize,
    /// Index of the eigenspace among the irrep's clusters of `π(S)` eigenvalues.
    pub eigenspace: usize,
    pub frame_vector: usize,
    pub coordinate: usize,
}

/// Eigenstructure of `π(S)` for one irrep.
#[derive(Clone, Debug, PartialEq)]
pub struct IrrepSpectrum {
    pub label: String,
    pub dim: usize,
    /// Distinct eigenvalues, descending, with their multiplicities.
    pub eigenvalues: Vec<(f64, usize)>,
}

impl IrrepSpectrum {
    pub fn has_repeated(&self) -> bool {
        self.eigenvalues.iter().any(|&(_, m)| m > 1)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LiftedFrame {
    pub frame: Frame,
    /// Cayley shift eigenvalue of each vector.
    pub eigenvalues: Vec<f64>,
    pub sources: Vec<LiftSource>,
    pub spectra: Vec<IrrepSpectrum>,
}

/// Lifts frames of the eigenspaces of every `π(S)` to functions on the group:
/// `g ↦ √(d_π/|G|) (π(g)ᵀ v)ⱼ`, rescaled per eigenspace to a Parseval frame.
/// Simple eigenspaces use the unit eigenvector, two-dimensional ones the
/// Mercedes-Benz frame, larger ones their orthonormal eigenbasis.
pub fn lift_frame(group: &FiniteGroup, irreps: &[Irrep], s: &GeneratingSet) -> Result<LiftedFrame> {
    let covered: usize = irreps.iter().map(|i| i.dim * i.dim).sum();
    if covered != group.order() || irreps.iter().any(|i| i.matrices.len() != group.order()) {
        return Err(Error::IncompleteIrreps {
            got: covered,
            order: group.order(),
        });
    }
    let order = group.order() as f64;
    let mut vectors = Vec::new();
    let mut eigenvalues = Vec::new();
    let mut sources = Vec::new();
    let mut spectra = Vec::new();

    for (ii, irrep) in irreps.iter().enumerate() {
        let d = irrep.dim;
        let spectrum = eig_sym(&pi_of_s(irrep, s)?, &InnerProduct::counting(d))?;
        let clusters = cluster_eigenvalues(&spectrum, DEFAULT_CLUSTER_TOL)?;
        spectra.push(IrrepSpectrum {
            label: irrep.label(),
            dim: d,
            eigenvalues: clusters.iter().map(|c| (c.representative, c.len())).collect(),
        });
        for (ci, c) in clusters.iter().enumerate() {
            let basis: Vec<&[f64]> = c.indices().map(|k| spectrum.eigenvector(k)).collect();
            let local: Vec<Vec<f64>> = if basis.len() == 2 {
                mercedes_benz(basis[0], basis[1])?.vectors
            } else {
                basis.iter().map(|v| v.to_vec()).collect()
            };
            let bound = if basis.len() == 2 { 1.5 } else { 1.0 };
            let scale = (d as f64 / order).sqrt() / f64::sqrt(bound);
            for (vi, v) in local.iter().enumerate() {
                for j in 0..d {
                    let lifted = irrep
                        .matrices
                        .iter()
                        .map(|m| scale * (0..d).map(|a| m[(a, j)] * v[a]).sum::<f64>())
                        .collect();
                    vectors.push(lifted);
                    eigenvalues.push(c.representative);
                    sources.push(LiftSource {
                        irrep: ii,
                        eigenspace: ci,
                        frame_vector: vi,
                        coordinate: j,
                    });
                }
            }
        }
    }
    Ok(LiftedFrame {
        frame: Frame::new(vectors, group.order())?,
        eigenvalues,
        sources,
        spectra,
    })
}

/// `max ‖A v − λ v‖_∞` over the lifted vectors.
pub fn eigenvector_residual(adjacency: &Matrix, lifted: &LiftedFrame) -> Result<f64> {
    let mut worst = 0.0f64;
    for (v, &l) in lifted.frame.vectors.iter().zip(&lifted.eigenvalues) {
        let av = adjacency.matvec(v)?;
        worst = av.iter().zip(v).map(|(a, x)| (a - l * x).abs()).fold(worst, f64::max);
    }
    Ok(worst)
}

/// Thresholds checked by [`FrameReport::passes`].
pub const HOMOMORPHISM_THRESHOLD: f64 = 1e-9;
pub const SCHUR_THRESHOLD: f64 = 1e-8;
pub const PARSEVAL_THRESHOLD: f64 = 1e-10;
pub const EIGENVECTOR_THRESHOLD: f64 = 1e-9;
pub const SPECTRUM_THRESHOLD: f64 = 1e-8;

/// Everything the S₄ frame construction verifies.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameReport {
    pub generators: Vec<String>,
    pub spectra: Vec<IrrepSpectrum>,
    pub homomorphism_residual: f64,
    pub orthogonality_residual: f64,
    pub schur_residual: f64,
    /// `max |λ|` difference between the aggregated `π(S)` spectra and the
    /// Cayley adjacency spectrum.
    pub spectrum_residual: f64,
    pub frame_operator_residual: f64,
    pub eigenvector_residual: f64,
    pub bounds: (f64, f64),
    pub vector_count: usize,
}

impl FrameReport {
    pub fn repeated_irreps(&self) -> usize {
        self.spectra.iter().filter(|s| s.has_repeated()).count()
    }

    pub fn passes(&self) -> bool {
        self.homomorphism_residual <= HOMOMORPHISM_THRESHOLD
            && self.orthogonality_residual <= HOMOMORPHISM_THRESHOLD
            && self.schur_residual <= SCHUR_THRESHOLD
            && self.spectrum_residual <= SPECTRUM_THRESHOLD
            && self.frame_operator_residual <= PARSEVAL_THRESHOLD
            && self.eigenvector_residual <= EIGENVECTOR_THRESHOLD
            && (self.bounds.0 - 1.0).abs() <= PARSEVAL_THRESHOLD
            && (self.bounds.1 - 1.0).abs() <= PARSEVAL_THRESHOLD
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "S = {{{}}}", self.generators.join(", "));
        let _ = writeln!(out, "{:<12} {:>3}  pi(S) eigenvalues (multiplicity)", "irrep", "dim");
        for s in &self.spectra {
            let vals: Vec<String> = s
                .eigenvalues
                .iter()
                .map(|(l, m)| format!("{:.6} ({m})", clean(*l)))
                .collect();
            let flag = if s.has_repeated() { "  repeated" } else { "" };
            let _ = writeln!(out, "{:<12} {:>3}  {}{flag}", s.label, s.dim, vals.join(", "));
        }
        let _ = writeln!(out, "irreps with a repeated eigenvalue: {}", self.repeated_irreps());
        let rows = [
            ("homomorphism residual", self.homomorphism_residual, HOMOMORPHISM_THRESHOLD),
            ("orthogonality residual", self.orthogonality_residual, HOMOMORPHISM_THRESHOLD),
            ("Schur residual", self.schur_residual, SCHUR_THRESHOLD),
            ("Cayley spectrum residual", self.spectrum_residual, SPECTRUM_THRESHOLD),
            ("frame operator residual", self.frame_operator_residual, PARSEVAL_THRESHOLD),
            ("eigenvector residual", self.eigenvector_residual, EIGENVECTOR_THRESHOLD),
        ];
        for (name, value, limit) in rows {
            let status = if value <= limit { "ok" } else { "FAIL" };
            let _ = writeln!(out, "{name:<26} {value:.3e} (limit {limit:.0e}) {status}");
        }
        let _ = writeln!(
            out,
            "frame bounds               A = {:.12}, B = {:.12}",
            self.bounds.0, self.bounds.1
        );
        let _ = writeln!(out, "frame vectors              {}", self.vector_count);
        out
    }
}

/// Avoids printing `-0.000000`.
fn clean(x: f64) -> f64 {
    if x.abs() < 5e-7 {
        0.0
    } else {
        x
    }
}

#[derive(Serialize)]
struct FramesJson<'a> {
    group: &'a str,
    #[serde(rename = "S")]
    generators: &'a [String],
    vectors: &'a [Vec<f64>],
    eigenvalues: &'a [f64],
    bounds: [f64; 2],
}

/// Builds and checks the lifted frame for `S₄` with `S = {(1 2), (2 3), (3 4), (1 2)(3 4)}`.
pub fn build_s4_frames() -> Result<(LiftedFrame, FrameReport)> {
    let group = symmetric_group(4)?;
    let irreps = young_orthogonal_irreps(4)?;
    let s = s4_ranking_set(&group)?;
    let lifted = lift_frame(&group, &irreps, &s)?;
    let adjacency = cayley_adjacency(&group, &s);

    let mut aggregated: Vec<f64> = Vec::with_capacity(group.order());
    for irrep in &irreps {
        for l in eigenvalues_sym(&pi_of_s(irrep, &s)?)? {
            aggregated.extend(std::iter::repeat_n(l, irrep.dim));
        }
    }
    aggregated.sort_by(|a, b| b.total_cmp(a));
    let cayley = eigenvalues_sym(&adjacency)?;
    let spectrum_residual = aggregated
        .iter()
        .zip(&cayley)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);

    let report = FrameReport {
        generators: s.labels(),
        spectra: lifted.spectra.clone(),
        homomorphism_residual: irreps
            .iter()
            .map(|i| homomorphism_residual(&group, i))
            .fold(0.0, f64::max),
        orthogonality_residual: irreps.iter().map(orthogonality_residual).fold(0.0, f64::max),
        schur_residual: schur_residual(&group, &irreps),
        spectrum_residual,
        frame_operator_residual: lifted
            .frame
            .frame_operator()
            .max_abs_diff(&Matrix::identity(group.order())),
        eigenvector_residual: eigenvector_residual(&adjacency, &lifted)?,
        bounds: lifted.frame.bounds,
        vector_count: lifted.frame.len(),
    };
    Ok((lifted, report))
}

impl LiftedFrame {
    pub fn to_json(&self, group: &str, generators: &[String]) -> Result<String> {
        Ok(serde_json::to_string_pretty(&FramesJson {
            group,
            generators,
            vectors: &self.frame.vectors,
            eigenvalues: &self.eigenvalues,
            bounds: [self.frame.bounds.0, self.frame.bounds.1],
        })?)
    }
}
