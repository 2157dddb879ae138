//! Sampling `G(n, w)` from a graphon.
//!
//! Draw order is fixed: first the `n` latent positions, then one uniform per
//! pair `(i, j)`, `i < j`, in lexicographic order. An edge is present when the
//! uniform is below `w(x_i, x_j)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphon::{GraphonModel, GraphonSpec, Signal, SignalSpace};
use crate::group::TorusPoint;
use crate::rng::Xoshiro256StarStar;

/// Graphs up to this order store a dense bit matrix; larger ones a sorted edge list.
pub const DENSE_LIMIT: usize = 4096;

/// Latent positions of sampled vertices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Latents {
    Blocks(Vec<usize>),
    Torus(Vec<TorusPoint>),
}

impl Latents {
    pub fn len(&self) -> usize {
        match self {
            Latents::Blocks(b) => b.len(),
            Latents::Torus(t) => t.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Symmetric adjacency with zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Adjacency {
    /// Row-major bit matrix, `words_per_row` 64-bit words per row.
    Dense { n: usize, words_per_row: usize, bits: Vec<u64> },
    /// Sorted `(i, j)` pairs with `i < j`.
    EdgeList { n: usize, edges: Vec<(u32, u32)> },
}

impl Adjacency {
    fn empty(n: usize) -> Self {
        if n <= DENSE_LIMIT {
            let words_per_row = n.div_ceil(64);
            Adjacency::Dense {
                n,
                words_per_row,
                bits: vec![0; n * words_per_row],
            }
        } else {
            Adjacency::EdgeList { n, edges: Vec::new() }
        }
    }

    /// Adds `{i, j}` with `i < j`; edge-list callers must add in lexicographic order.
    fn insert(&mut self, i: usize, j: usize) {
        debug_assert!(i < j);
        match self {
            Adjacency::Dense { words_per_row, bits, .. } => {
                bits[i * *words_per_row + j / 64] |= 1 << (j % 64);
                bits[j * *words_per_row + i / 64] |= 1 << (i % 64);
            }
            Adjacency::EdgeList { edges, .. } => edges.push((i as u32, j as u32)),
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut sorted: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a == b {
                return Err(Error::InvalidArgument(format!("self-loop at {a}")));
            }
            if a.max(b) >= n {
                return Err(Error::InvalidArgument(format!("edge ({a},{b}) out of range for n = {n}")));
            }
            sorted.push((a.min(b), a.max(b)));
        }
        sorted.sort_unstable();
        sorted.dedup();
        let mut adj = Self::empty(n);
        for (a, b) in sorted {
            adj.insert(a, b);
        }
        Ok(adj)
    }

    pub fn n(&self) -> usize {
        match self {
            Adjacency::Dense { n, .. } | Adjacency::EdgeList { n, .. } => *n,
        }
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        if i == j {
            return false;
        }
        match self {
            Adjacency::Dense { words_per_row, bits, .. } => {
                bits[i * words_per_row + j / 64] >> (j % 64) & 1 == 1
            }
            Adjacency::EdgeList { edges, .. } => {
                let key = (i.min(j) as u32, i.max(j) as u32);
                edges.binary_search(&key).is_ok()
            }
        }
    }

    /// Edges `(i, j)`, `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        match self {
            Adjacency::Dense { n, .. } => {
                let mut out = Vec::new();
                for i in 0..*n {
                    for j in i + 1..*n {
                        if self.has_edge(i, j) {
                            out.push((i, j));
                        }
                    }
                }
                out
            }
            Adjacency::EdgeList { edges, .. } => {
                edges.iter().map(|&(a, b)| (a as usize, b as usize)).collect()
            }
        }
    }

    pub fn edge_count(&self) -> usize {
        match self {
            Adjacency::Dense { bits, .. } => {
                bits.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
            }
            Adjacency::EdgeList { edges, .. } => edges.len(),
        }
    }
}

/// A graph drawn from `G(n, w)` together with its latent positions and provenance.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledGraph {
    pub n: usize,
    pub adjacency: Adjacency,
    pub latents: Latents,
    pub seed: u64,
    pub model: GraphonSpec,
}

impl SampledGraph {
    pub fn edge_count(&self) -> usize {
        self.adjacency.edge_count()
    }

    /// Fraction of the `n(n−1)/2` vertex pairs that are edges.
    pub fn density(&self) -> f64 {
        if self.n < 2 {
            return 0.0;
        }
        let pairs = self.n * (self.n - 1) / 2;
        self.edge_count() as f64 / pairs as f64
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&GraphJson::from(self))?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: GraphJson = serde_json::from_str(text)?;
        raw.try_into()
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    seed: u64,
    model: GraphonSpec,
    latents: Latents,
    edges: Vec<[usize; 2]>,
}

impl From<&SampledGraph> for GraphJson {
    fn from(g: &SampledGraph) -> Self {
        GraphJson {
            n: g.n,
            seed: g.seed,
            model: g.model.clone(),
            latents: g.latents.clone(),
            edges: g.adjacency.edges().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }
}

impl TryFrom<GraphJson> for SampledGraph {
    type Error = Error;

    fn try_from(raw: GraphJson) -> Result<Self> {
        let model = raw.model.build()?;
        if raw.latents.len() != raw.n {
            return Err(Error::DimensionMismatch {
                expected: raw.n,
                got: raw.latents.len(),
            });
        }
        // An all-integer latent list parses as blocks; torus models still need points.
        let latents = match (&model, raw.latents) {
            (GraphonModel::Torus(_), Latents::Blocks(b)) => {
                Latents::Torus(b.into_iter().map(|x| TorusPoint::new(x as f64)).collect())
            }
            (GraphonModel::Torus(_), l @ Latents::Torus(_)) => l,
            (m, Latents::Blocks(b)) => {
                let k = m.as_step().map_or(0, |s| s.num_blocks());
                if let Some(&x) = b.iter().find(|&&x| x >= k) {
                    return Err(Error::InvalidArgument(format!("latent block {x} out of range")));
                }
                Latents::Blocks(b)
            }
            (_, Latents::Torus(_)) => {
                return Err(Error::InvalidArgument("block model needs integer latents".into()))
            }
        };
        let edges: Vec<(usize, usize)> = raw.edges.iter().map(|e| (e[0], e[1])).collect();
        Ok(SampledGraph {
            n: raw.n,
            adjacency: Adjacency::from_edges(raw.n, &edges)?,
            latents,
            seed: raw.seed,
            model: raw.model,
        })
    }
}

/// Draws `G(n, w)` for the model described by `spec`.
pub fn sample(spec: &GraphonSpec, n: usize, seed: u64) -> Result<SampledGraph> {
    let model = spec.build()?;
    sample_model(&model, spec.clone(), n, seed)
}

/// Same as [`sample`] for an already validated model; `spec` is recorded as provenance.
pub fn sample_model(model: &GraphonModel, spec: GraphonSpec, n: usize, seed: u64) -> Result<SampledGraph> {
    if n == 0 {
        return Err(Error::InvalidArgument("graph order must be at least 1".into()));
    }
    let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
    let mut adjacency = Adjacency::empty(n);
    let latents = match model {
        GraphonModel::Torus(w) => {
            let xs: Vec<TorusPoint> = (0..n).map(|_| TorusPoint::new(rng.next_f64())).collect();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.next_f64() < w.eval(xs[i], xs[j]) {
                        adjacency.insert(i, j);
                    }
                }
            }
            Latents::Torus(xs)
        }
        _ => {
            let step = model.as_step().expect("finite model");
            let cumulative: Vec<f64> = step
                .block_measures()
                .iter()
                .scan(0.0, |acc, &m| {
                    *acc += m;
                    Some(*acc)
                })
                .collect();
            let last = cumulative.len() - 1;
            let blocks: Vec<usize> = (0..n)
                .map(|_| {
                    let u = rng.next_f64();
                    cumulative.iter().position(|&c| u < c).unwrap_or(last)
                })
                .collect();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.next_f64() < step.prob(blocks[i], blocks[j]) {
                        adjacency.insert(i, j);
                    }
                }
            }
            Latents::Blocks(blocks)
        }
    };
    Ok(SampledGraph {
        n,
        adjacency,
        latents,
        seed,
        model: spec,
    })
}

/// Indicator of the vertices whose latent block is `block`.
pub fn block_signal(g: &SampledGraph, block: usize) -> Result<Signal> {
    let Latents::Blocks(blocks) = &g.latents else {
        return Err(Error::InvalidArgument("block signal needs a graph sampled from a step graphon".into()));
    };
    let k = g.model.build()?.as_step().map_or(0, |s| s.num_blocks());
    if block >= k {
        return Err(Error::InvalidArgument(format!("block {block} out of range for {k} blocks")));
    }
    let values = blocks.iter().map(|&b| if b == block { 1.0 } else { 0.0 }).collect();
    Signal::new(values, SignalSpace::Vertices)
}
