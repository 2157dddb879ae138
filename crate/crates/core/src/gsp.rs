//! Graph and graphon Fourier transforms, and the sampling experiments that
//! compare sampled graphs with their graphon.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graphon::{GraphonModel, GraphonSpec, Signal, SignalSpace, StepGraphon, TorusCayleyGraphon};
use crate::rng::stream_seed;
use crate::sampler::{block_signal, sample_model, Latents};
use crate::spectral::{
    cluster_eigenvalues, discretize_torus, eigenvalues_sym, magnitude_order, project, shift_operator,
    step_spectrum, EigenCluster, InnerProduct, Spectrum, SymmetricEigen, DEFAULT_CLUSTER_TOL,
};

pub const DEFAULT_S3_N: usize = 1000;
pub const DEFAULT_S3_SAMPLES: usize = 10;
pub const DEFAULT_MASTER_SEED: u64 = 1;
pub const DEFAULT_WS_N: usize = 2000;
pub const DEFAULT_WS_D: f64 = 0.2;
pub const DEFAULT_WS_P: f64 = 0.08;
pub const DEFAULT_WS_K_MAX: usize = 2;

/// Projection of a signal onto one eigenspace.
#[derive(Clone, Debug)]
pub struct ClusterProjection {
    pub cluster: EigenCluster,
    pub signal: Signal,
    pub norm: f64,
}

/// Scalar coefficients `⟨f, φᵢ⟩` plus optional per-eigenspace projections.
#[derive(Clone, Debug)]
pub struct FourierCoefficients {
    pub coefficients: Vec<f64>,
    pub projections: Vec<ClusterProjection>,
}

impl FourierCoefficients {
    pub fn from_coefficients(coefficients: Vec<f64>) -> Self {
        Self {
            coefficients,
            projections: Vec::new(),
        }
    }

    pub fn energy(&self) -> f64 {
        self.coefficients.iter().map(|c| c * c).sum()
    }
}

pub fn gft(s: &Spectrum, f: &Signal) -> Result<FourierCoefficients> {
    s.inner_product().check(f)?;
    let inner = s.inner_product();
    let coefficients = s.eigenvectors().iter().map(|phi| inner.dot(f.values(), phi)).collect();
    Ok(FourierCoefficients::from_coefficients(coefficients))
}

/// Scalar transform plus the projection of `f` onto each cluster.
pub fn gft_with_clusters(s: &Spectrum, f: &Signal, clusters: &[EigenCluster]) -> Result<FourierCoefficients> {
    let mut out = gft(s, f)?;
    for c in clusters {
        let signal = project(s, c, f)?;
        let norm = s.inner_product().norm(signal.values());
        out.projections.push(ClusterProjection {
            cluster: c.clone(),
            signal,
            norm,
        });
    }
    Ok(out)
}

/// Synthesis `Σ cᵢ φᵢ`.
pub fn igft(s: &Spectrum, coeffs: &FourierCoefficients) -> Result<Signal> {
    if coeffs.coefficients.len() != s.len() {
        return Err(Error::DimensionMismatch {
            expected: s.len(),
            got: coeffs.coefficients.len(),
        });
    }
    let mut out = vec![0.0; s.dim()];
    for (c, phi) in coeffs.coefficients.iter().zip(s.eigenvectors()) {
        for (o, p) in out.iter_mut().zip(phi) {
            *o += c * p;
        }
    }
    Signal::new(out, s.inner_product().space())
}

/// `|Σ ⟨f, φᵢ⟩² − ‖f‖²|`; zero up to rounding for a complete spectrum.
pub fn parseval_defect(s: &Spectrum, f: &Signal) -> Result<f64> {
    let c = gft(s, f)?;
    Ok((c.energy() - s.inner_product().dot(f.values(), f.values())).abs())
}

/// One sampled graph in a scatter experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct ScatterPoint {
    pub sample_id: usize,
    pub n: usize,
    pub seed: u64,
    /// `⟨f, φ₃⟩`
    pub c3: f64,
    /// `⟨f, φ₂⟩`
    pub c2: f64,
    pub radius: f64,
    /// Sample eigenvalues matched to the graphon's nonzero ones, descending.
    pub eigenvalues: Vec<f64>,
    /// Magnitude of the largest eigenvalue left out of the match.
    pub next_magnitude: f64,
    /// Graphon reference radius recomputed with this sample's block proportions
    /// in place of the model's measures; NaN if some block is empty.
    pub empirical_radius: f64,
}

/// Graphon counterpart of a scatter point.
#[derive(Clone, Debug, PartialEq)]
pub struct ReferencePoint {
    pub c3: f64,
    pub c2: f64,
    pub radius: f64,
    /// Norm of the projection of `f` onto the eigenspace containing `φ₂`.
    pub projection_norm: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScatterResult {
    pub points: Vec<ScatterPoint>,
    pub reference: ReferencePoint,
    /// Nonzero graphon eigenvalues, descending.
    pub graphon_eigenvalues: Vec<f64>,
    pub master_seed: u64,
}

impl ScatterResult {
    /// `max |rᵢ − r★| / r★` over samples.
    pub fn max_relative_radius_deviation(&self) -> f64 {
        let r = self.reference.radius;
        self.points.iter().map(|p| (p.radius - r).abs() / r).fold(0.0, f64::max)
    }

    /// `(max c₂ − min c₂) / r★` across samples.
    pub fn c2_relative_spread(&self) -> f64 {
        let (lo, hi) = self
            .points
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p.c2), hi.max(p.c2)));
        (hi - lo) / self.reference.radius
    }

    /// Standard deviation of the sample radii over their mean.
    pub fn radius_relative_std(&self) -> f64 {
        let k = self.points.len() as f64;
        let mean = self.points.iter().map(|p| p.radius).sum::<f64>() / k;
        let var = self.points.iter().map(|p| (p.radius - mean).powi(2)).sum::<f64>() / k;
        var.sqrt() / mean
    }

    /// `max |rᵢ − r̂ᵢ| / r★`, where `r̂ᵢ` is the empirical-proportion reference.
    pub fn max_empirical_radius_deviation(&self) -> f64 {
        let r = self.reference.radius;
        self.points
            .iter()
            .map(|p| (p.radius - p.empirical_radius).abs() / r)
            .fold(0.0, f64::max)
    }

    /// Largest `|λᵢ(sample) − λᵢ(graphon)|` over all samples and matched eigenvalues.
    pub fn max_eigenvalue_error(&self) -> f64 {
        self.points
            .iter()
            .flat_map(|p| p.eigenvalues.iter().zip(&self.graphon_eigenvalues).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max)
    }

    /// `sample_id,c3,c2,radius` rows followed by the reference row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("sample_id,c3,c2,radius\n");
        for p in &self.points {
            let _ = writeln!(out, "{},{:.16e},{:.16e},{:.16e}", p.sample_id, p.c3, p.c2, p.radius);
        }
        let r = &self.reference;
        let _ = writeln!(out, "ref,{:.16e},{:.16e},{:.16e}", r.c3, r.c2, r.radius);
        out
    }

    /// 600×600 scatter plot: samples as blue dots, the graphon as a red diamond,
    /// and the circle of radius r★.
    pub fn to_svg(&self) -> String {
        const SIZE: f64 = 600.0;
        const HALF: f64 = 250.0;
        let c = SIZE / 2.0;
        let r_ref = self.reference.radius;
        let farthest = self
            .points
            .iter()
            .map(|p| p.c2.abs().max(p.c3.abs()))
            .fold(r_ref, f64::max);
        let extent = 1.3 * farthest;
        let px = |x: f64| c + x / extent * HALF;
        let py = |y: f64| c - y / extent * HALF;

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="600" height="600" viewBox="0 0 600 600">"#
        );
        let _ = writeln!(s, r#"<rect x="0" y="0" width="600" height="600" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<line x1="{:.3}" y1="{c:.3}" x2="{:.3}" y2="{c:.3}" stroke="black" stroke-width="1"/>"#,
            c - HALF,
            c + HALF
        );
        let _ = writeln!(
            s,
            r#"<line x1="{c:.3}" y1="{:.3}" x2="{c:.3}" y2="{:.3}" stroke="black" stroke-width="1"/>"#,
            c + HALF,
            c - HALF
        );
        let _ = writeln!(
            s,
            r##"<circle cx="{c:.3}" cy="{c:.3}" r="{:.3}" fill="none" stroke="#888888" stroke-dasharray="4 4"/>"##,
            r_ref / extent * HALF
        );
        for p in &self.points {
            let _ = writeln!(
                s,
                r#"<circle cx="{:.3}" cy="{:.3}" r="5" fill="blue"><title>sample {} (n={}, seed={})</title></circle>"#,
                px(p.c3),
                py(p.c2),
                p.sample_id,
                p.n,
                p.seed
            );
        }
        let (dx, dy) = (px(self.reference.c3), py(self.reference.c2));
        let _ = writeln!(
            s,
            r#"<polygon points="{:.3},{:.3} {:.3},{:.3} {:.3},{:.3} {:.3},{:.3}" fill="red"/>"#,
            dx,
            dy - 8.0,
            dx + 8.0,
            dy,
            dx,
            dy + 8.0,
            dx - 8.0,
            dy
        );
        let _ = writeln!(
            s,
            r#"<text x="{c:.3}" y="585" text-anchor="middle" font-family="sans-serif" font-size="16">f̂(φ₃)</text>"#
        );
        let _ = writeln!(
            s,
            r#"<text x="20" y="{c:.3}" text-anchor="middle" font-family="sans-serif" font-size="16" transform="rotate(-90 20 {c:.3})">f̂(φ₂)</text>"#
        );
        let _ = writeln!(
            s,
            r#"<text x="590" y="20" text-anchor="end" font-family="sans-serif" font-size="12">r★ = {:.6}, axis extent ±{:.6}</text>"#,
            r_ref,
            extent
        );
        s.push_str("</svg>\n");
        s
    }
}

/// Settings for [`run_scatter_experiment`].
#[derive(Clone, Debug)]
pub struct ScatterConfig {
    pub n: usize,
    pub num_samples: usize,
    pub master_seed: u64,
    /// Block whose indicator is the signal.
    pub block: usize,
}

/// Nonzero eigenvalues are those above this fraction of the spectral radius.
const NONZERO_REL_TOL: f64 = 1e-12;

/// Graphon reference pair `(⟨f, φ₃⟩, ⟨f, φ₂⟩)` for the indicator of `block`.
pub fn graphon_reference(w: &StepGraphon, block: usize) -> Result<(Spectrum, ReferencePoint)> {
    let k = w.num_blocks();
    if block >= k {
        return Err(Error::InvalidArgument(format!("block {block} out of range for {k} blocks")));
    }
    let spectrum = step_spectrum(w)?;
    if spectrum.len() < 3 {
        return Err(Error::InvalidArgument("need at least three eigenvalues".into()));
    }
    let mut f = vec![0.0; k];
    f[block] = 1.0;
    let f = Signal::new(f, SignalSpace::Blocks)?;
    let coeffs = gft(&spectrum, &f)?.coefficients;
    let clusters = cluster_eigenvalues(&spectrum, DEFAULT_CLUSTER_TOL)?;
    let second = clusters
        .iter()
        .find(|c| c.indices().contains(&1))
        .expect("clusters partition the spectrum");
    let projected = project(&spectrum, second, &f)?;
    let reference = ReferencePoint {
        c3: coeffs[2],
        c2: coeffs[1],
        radius: coeffs[1].hypot(coeffs[2]),
        projection_norm: spectrum.inner_product().norm(projected.values()),
    };
    Ok((spectrum, reference))
}

/// Samples graphs from a step-type model and records the second and third graph
/// Fourier coefficients of a block indicator on each.
pub fn run_scatter_experiment(spec: &GraphonSpec, cfg: &ScatterConfig) -> Result<ScatterResult> {
    if cfg.num_samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    let model = spec.build()?;
    let step = model
        .as_step()
        .ok_or_else(|| Error::InvalidModel("scatter experiment needs a block model".into()))?;
    let (spectrum, reference) = graphon_reference(&step, cfg.block)?;
    let scale = spectrum.eigenvalues().iter().fold(0.0f64, |m, l| m.max(l.abs()));
    let graphon_eigenvalues: Vec<f64> = spectrum
        .eigenvalues()
        .iter()
        .copied()
        .filter(|l| l.abs() > NONZERO_REL_TOL * scale)
        .collect();
    let k = graphon_eigenvalues.len();
    if k < 3 {
        return Err(Error::InvalidModel(format!("graphon has only {k} nonzero eigenvalues")));
    }
    if cfg.n < k {
        return Err(Error::InvalidArgument(format!("n = {} is below the {k} eigenvalues to match", cfg.n)));
    }

    let points = (0..cfg.num_samples)
        .into_par_iter()
        .map(|i| scatter_point(&model, &step, spec, cfg, i, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(ScatterResult {
        points,
        reference,
        graphon_eigenvalues,
        master_seed: cfg.master_seed,
    })
}

fn scatter_point(
    model: &GraphonModel,
    step: &StepGraphon,
    spec: &GraphonSpec,
    cfg: &ScatterConfig,
    i: usize,
    k: usize,
) -> Result<ScatterPoint> {
    let seed = stream_seed(cfg.master_seed, i as u64);
    let g = sample_model(model, spec.clone(), cfg.n, seed)?;
    let f = block_signal(&g, cfg.block)?;
    let empirical_radius = empirical_reference_radius(step, &g.latents, cfg.block);
    let eig = SymmetricEigen::new(&shift_operator(&g))?;
    let order = magnitude_order(eig.eigenvalues());
    let next_magnitude = order.get(k).map_or(0.0, |&j| eig.eigenvalues()[j].abs());
    let spectrum = eig.select(&order[..k], &InnerProduct::graph(cfg.n))?;
    let coeffs = gft(&spectrum, &f)?.coefficients;
    Ok(ScatterPoint {
        sample_id: i,
        n: cfg.n,
        seed,
        c3: coeffs[2],
        c2: coeffs[1],
        radius: coeffs[1].hypot(coeffs[2]),
        eigenvalues: spectrum.eigenvalues().to_vec(),
        next_magnitude,
        empirical_radius,
    })
}

fn empirical_reference_radius(step: &StepGraphon, latents: &Latents, block: usize) -> f64 {
    let Latents::Blocks(blocks) = latents else {
        return f64::NAN;
    };
    let mut counts = vec![0usize; step.num_blocks()];
    for &b in blocks {
        counts[b] += 1;
    }
    let measures = counts.iter().map(|&c| c as f64 / blocks.len() as f64).collect();
    StepGraphon::new(step.probabilities().clone(), measures)
        .and_then(|w| graphon_reference(&w, block))
        .map_or(f64::NAN, |(_, r)| r.radius)
}

/// Graph specification of the S3 Cayley graphon used by [`run_s3_experiment`].
pub fn canonical_s3_spec() -> GraphonSpec {
    GraphonSpec::Cayley {
        group: "S3".into(),
        gamma: [("()", 0.6), ("(1 2)", 0.3), ("(1 3)", 0.1)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
    }
}

/// Scatter experiment on the S3 Cayley graphon with the first block's indicator.
pub fn run_s3_experiment(n: usize, num_samples: usize, master_seed: u64) -> Result<ScatterResult> {
    if n < 10 {
        return Err(Error::InvalidArgument("the S3 experiment needs n ≥ 10".into()));
    }
    run_scatter_experiment(
        &canonical_s3_spec(),
        &ScatterConfig {
            n,
            num_samples,
            master_seed,
            block: 0,
        },
    )
}

/// One line of an eigenvalue comparison against the circle graphon.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumRow {
    pub rank: usize,
    pub frequency: usize,
    pub analytic: f64,
    pub observed: f64,
    pub abs_error: f64,
}

/// Matches analytic `(frequency, eigenvalue)` pairs with observed eigenvalues,
/// both taken in order of decreasing magnitude.
pub fn match_by_magnitude(analytic: &[(usize, f64)], observed: &[f64]) -> Vec<SpectrumRow> {
    let mut a = analytic.to_vec();
    a.sort_by(|x, y| y.1.abs().total_cmp(&x.1.abs()));
    let obs: Vec<f64> = magnitude_order(observed).into_iter().map(|i| observed[i]).collect();
    a.iter()
        .zip(obs)
        .enumerate()
        .map(|(i, (&(frequency, analytic), observed))| SpectrumRow {
            rank: i + 1,
            frequency,
            analytic,
            observed,
            abs_error: (analytic - observed).abs(),
        })
        .collect()
}

fn rows_csv(rows: &[SpectrumRow]) -> String {
    let mut out = String::from("rank,frequency,analytic,observed,abs_error\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{:.16e},{:.16e},{:.16e}",
            r.rank, r.frequency, r.analytic, r.observed, r.abs_error
        );
    }
    out
}

/// Comparison of a sampled Watts-Strogatz graph's spectrum with the analytic one.
#[derive(Clone, Debug, PartialEq)]
pub struct WsReport {
    pub n: usize,
    pub seed: u64,
    pub d: f64,
    pub p: f64,
    pub k_max: usize,
    pub rows: Vec<SpectrumRow>,
    pub max_abs_error: f64,
}

impl WsReport {
    pub fn to_csv(&self) -> String {
        rows_csv(&self.rows)
    }
}

pub fn run_ws_experiment(n: usize, d: f64, p: f64, seed: u64, k_max: usize) -> Result<WsReport> {
    let w = TorusCayleyGraphon::new(d, p)?;
    let spec = GraphonSpec::Torus { d, p };
    let g = sample_model(&GraphonModel::Torus(w), spec, n, seed)?;
    let observed = eigenvalues_sym(&shift_operator(&g))?;
    let rows = match_by_magnitude(&w.spectrum(k_max), &observed);
    let max_abs_error = rows.iter().map(|r| r.abs_error).fold(0.0, f64::max);
    Ok(WsReport {
        n,
        seed,
        d,
        p,
        k_max,
        rows,
        max_abs_error,
    })
}

/// Compares the analytic circle spectrum with an `m`-point discretization.
pub fn torus_discretization_check(w: &TorusCayleyGraphon, m: usize, k_max: usize) -> Result<Vec<SpectrumRow>> {
    let observed = eigenvalues_sym(&discretize_torus(w, m)?)?;
    Ok(match_by_magnitude(&w.spectrum(k_max), &observed))
}

pub fn spectrum_rows_csv(rows: &[SpectrumRow]) -> String {
    rows_csv(rows)
}
