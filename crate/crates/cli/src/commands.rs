use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use ggsp::frames::build_s4_frames;
use ggsp::graphon::{GraphonModel, GraphonSpec, Signal, SignalSpace};
use ggsp::gsp::{
    self, run_s3_experiment, run_scatter_experiment, run_ws_experiment, ScatterConfig, DEFAULT_MASTER_SEED,
    DEFAULT_S3_N, DEFAULT_S3_SAMPLES,
};
use ggsp::sampler::{block_signal, SampledGraph};
use ggsp::spectral::{
    cluster_eigenvalues, discretize_torus, shift_operator, step_spectrum, InnerProduct, Spectrum, SymmetricEigen,
};

use crate::config::{load_model, ExperimentConfig};
use crate::{CliError, FramesArgs, GftArgs, S3Args, SampleArgs, SpectrumArgs, WsArgs};

/// Relative radius band reported by `experiment s3` unless the config overrides it.
const DEFAULT_RADIUS_REL_TOL: f64 = 0.10;

/// Errors caused by bad input are configuration errors; the rest are runtime failures.
fn classify(e: ggsp::Error) -> CliError {
    use ggsp::Error as E;
    match e {
        E::InvalidArgument(_)
        | E::InvalidModel(_)
        | E::InvalidPermutation(_)
        | E::InvalidCycle(_)
        | E::UnsupportedGroup(_)
        | E::InvalidGeneratingSet(_)
        | E::DimensionMismatch { .. }
        | E::SpaceMismatch(_)
        | E::Json(_) => CliError::Config(e.to_string()),
        other => CliError::Runtime(other.to_string()),
    }
}

fn write_file(path: &Path, content: &str) -> Result<(), CliError> {
    fs::write(path, content).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn emit(out: Option<&PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(p) => write_file(p, content),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<SampledGraph, CliError> {
    SampledGraph::from_json(&read_input(path)?)
        .map_err(|e| CliError::Config(format!("invalid graph {}: {e}", path.display())))
}

fn eigenvalue_csv(values: &[f64]) -> String {
    let mut out = String::from("rank,eigenvalue\n");
    for (i, l) in values.iter().enumerate() {
        let _ = writeln!(out, "{},{:.16e}", i + 1, l);
    }
    out
}

pub fn sample(a: SampleArgs) -> Result<(), CliError> {
    let spec = load_model(&a.model)?;
    if a.n == 0 {
        return Err(CliError::Config("--n must be at least 1".into()));
    }
    let g = ggsp::sampler::sample(&spec, a.n, a.seed).map_err(classify)?;
    let json = g.to_json().map_err(classify)?;
    write_file(&a.out, &json)?;
    println!("edges: {}", g.edge_count());
    println!("density: {:.6}", g.density());
    Ok(())
}

enum Operator {
    Graph(SymmetricEigen, InnerProduct),
    Blocks(Spectrum),
}

fn operator_for(graph: Option<&PathBuf>, model: Option<&str>, grid: Option<usize>) -> Result<Operator, CliError> {
    if let Some(path) = graph {
        let g = load_graph(path)?;
        let eig = SymmetricEigen::new(&shift_operator(&g)).map_err(classify)?;
        return Ok(Operator::Graph(eig, InnerProduct::graph(g.n)));
    }
    let spec = load_model(model.expect("clap requires --graph or --model"))?;
    match spec.build().map_err(classify)? {
        GraphonModel::Torus(w) => {
            let m = grid.ok_or_else(|| CliError::Config("torus models need --grid".into()))?;
            let eig = SymmetricEigen::new(&discretize_torus(&w, m).map_err(classify)?).map_err(classify)?;
            Ok(Operator::Graph(eig, InnerProduct::grid(m)))
        }
        other => {
            let step = other.as_step().expect("finite model");
            Ok(Operator::Blocks(step_spectrum(&step).map_err(classify)?))
        }
    }
}

pub fn spectrum(a: SpectrumArgs) -> Result<(), CliError> {
    if a.format != "csv" && a.format != "json" {
        return Err(CliError::Config(format!("unknown format {:?}; use csv or json", a.format)));
    }
    let op = operator_for(a.graph.as_ref(), a.model.as_deref(), a.grid)?;
    let text = match (op, a.top) {
        (Operator::Blocks(_), Some(_)) => {
            return Err(CliError::Config("--top applies to graphs and torus grids only".into()));
        }
        (Operator::Blocks(s), None) => {
            if a.format == "csv" {
                s.to_csv()
            } else {
                s.to_json().map_err(classify)?
            }
        }
        (Operator::Graph(eig, inner), top) => match (a.format.as_str(), top) {
            ("csv", None) => eigenvalue_csv(eig.eigenvalues()),
            ("csv", Some(k)) => eig.top_by_magnitude(k, &inner).map_err(classify)?.to_csv(),
            (_, None) => eig.spectrum(&inner).map_err(classify)?.to_json().map_err(classify)?,
            (_, Some(k)) => eig.top_by_magnitude(k, &inner).map_err(classify)?.to_json().map_err(classify)?,
        },
    };
    emit(a.out.as_ref(), &text)
}

fn read_signal(path: &Path, space: SignalSpace) -> Result<Signal, CliError> {
    let values: Vec<f64> = serde_json::from_str(&read_input(path)?)
        .map_err(|e| CliError::Config(format!("signal {} must be a JSON array of numbers: {e}", path.display())))?;
    Signal::new(values, space).map_err(classify)
}

pub fn gft(a: GftArgs) -> Result<(), CliError> {
    let (spectrum, f) = if let Some(path) = &a.graph {
        let g = load_graph(path)?;
        let eig = SymmetricEigen::new(&shift_operator(&g)).map_err(classify)?;
        let inner = InnerProduct::graph(g.n);
        let s = match a.top {
            Some(k) => eig.top_by_magnitude(k, &inner),
            None => eig.spectrum(&inner),
        }
        .map_err(classify)?;
        let f = match (a.block, &a.signal) {
            (Some(b), _) => block_signal(&g, b).map_err(classify)?,
            (None, Some(p)) => read_signal(p, SignalSpace::Vertices)?,
            (None, None) => unreachable!("clap requires --block or --signal"),
        };
        (s, f)
    } else {
        if a.top.is_some() {
            return Err(CliError::Config("--top applies to graphs only".into()));
        }
        let spec = load_model(a.model.as_deref().expect("clap requires --graph or --model"))?;
        let step = spec
            .build()
            .map_err(classify)?
            .as_step()
            .ok_or_else(|| CliError::Config("gft on a model needs a block model".into()))?;
        let s = step_spectrum(&step).map_err(classify)?;
        let f = match (a.block, &a.signal) {
            (Some(b), _) if b < step.num_blocks() => {
                let mut v = vec![0.0; step.num_blocks()];
                v[b] = 1.0;
                Signal::new(v, SignalSpace::Blocks).map_err(classify)?
            }
            (Some(b), _) => return Err(CliError::Config(format!("block {b} out of range"))),
            (None, Some(p)) => read_signal(p, SignalSpace::Blocks)?,
            (None, None) => unreachable!("clap requires --block or --signal"),
        };
        (s, f)
    };

    let coeffs = gsp::gft(&spectrum, &f).map_err(classify)?;
    let mut csv = String::from("index,eigenvalue,coefficient\n");
    for (i, (l, c)) in spectrum.eigenvalues().iter().zip(&coeffs.coefficients).enumerate() {
        let _ = writeln!(csv, "{},{:.16e},{:.16e}", i + 1, l, c);
    }
    emit(a.out.as_ref(), &csv)?;

    if let Some(tol) = a.cluster_tol {
        let clusters = cluster_eigenvalues(&spectrum, tol).map_err(classify)?;
        let full = gsp::gft_with_clusters(&spectrum, &f, &clusters).map_err(classify)?;
        println!("eigenspace,first,last,eigenvalue,projection_norm");
        for (k, p) in full.projections.iter().enumerate() {
            println!(
                "{},{},{},{:.16e},{:.16e}",
                k + 1,
                p.cluster.start + 1,
                p.cluster.end,
                p.cluster.representative,
                p.norm
            );
        }
    }
    Ok(())
}

pub fn experiment_s3(a: S3Args) -> Result<(), CliError> {
    let cfg = match &a.config {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    };
    let n = a.n.or(cfg.n).unwrap_or(DEFAULT_S3_N);
    let num_samples = a.samples.or(cfg.num_samples).unwrap_or(DEFAULT_S3_SAMPLES);
    let master_seed = a.seed.or(cfg.master_seed).unwrap_or(DEFAULT_MASTER_SEED);
    let out_dir = a.out_dir.or(cfg.output_dir).unwrap_or_else(|| PathBuf::from("."));
    let tol = cfg.tolerances.radius_rel.unwrap_or(DEFAULT_RADIUS_REL_TOL);

    let result = match &cfg.model {
        None => run_s3_experiment(n, num_samples, master_seed),
        Some(spec @ GraphonSpec::Torus { .. }) => {
            return Err(CliError::Config(format!("scatter experiment needs a block model, got {spec:?}")));
        }
        Some(spec) => run_scatter_experiment(
            spec,
            &ScatterConfig {
                n,
                num_samples,
                master_seed,
                block: cfg.block.unwrap_or(0),
            },
        ),
    }
    .map_err(classify)?;

    fs::create_dir_all(&out_dir)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", out_dir.display())))?;
    let csv_path = out_dir.join("scatter.csv");
    let svg_path = out_dir.join("scatter.svg");
    write_file(&csv_path, &result.to_csv())?;
    write_file(&svg_path, &result.to_svg())?;

    let dev = result.max_relative_radius_deviation();
    println!("samples: {num_samples}, n: {n}, master seed: {master_seed}");
    println!("reference radius r*: {:.10}", result.reference.radius);
    println!("max relative radius deviation: {dev:.6}");
    println!("radius relative std: {:.6}", result.radius_relative_std());
    println!("c2 relative spread: {:.6}", result.c2_relative_spread());
    println!(
        "all radii within {:.0}% of r*: {}",
        tol * 100.0,
        if dev <= tol { "yes" } else { "no" }
    );
    println!("wrote {} and {}", csv_path.display(), svg_path.display());
    Ok(())
}

pub fn experiment_ws(a: WsArgs) -> Result<(), CliError> {
    let report = run_ws_experiment(a.n, a.d, a.p, a.seed, a.k_max).map_err(classify)?;
    emit(a.out.as_ref(), &report.to_csv())?;
    if a.out.is_some() {
        println!("max absolute eigenvalue error: {:.6}", report.max_abs_error);
    }
    Ok(())
}

pub fn frames_s4(a: FramesArgs) -> Result<(), CliError> {
    let (lifted, report) = build_s4_frames().map_err(|e| CliError::Runtime(e.to_string()))?;
    print!("{}", report.render());
    if let Some(path) = &a.out {
        let json = lifted
            .to_json("S4", &report.generators)
            .map_err(|e| CliError::Runtime(e.to_string()))?;
        write_file(path, &json)?;
        println!("wrote {}", path.display());
    }
    if !report.passes() {
        return Err(CliError::Verification("a residual exceeds its threshold".into()));
    }
    Ok(())
}

