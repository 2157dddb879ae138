//! Graphon models: step graphons (stochastic block models), Cayley functions on
//! symmetric groups, and the Watts-Strogatz graphon on the circle.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Permutation, TorusPoint};
use crate::linalg::Matrix;

const MEASURE_TOL: f64 = 1e-12;

/// Graphon that is constant on products of blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct StepGraphon {
    probabilities: Matrix,
    block_measures: Vec<f64>,
}

impl StepGraphon {
    pub fn new(probabilities: Matrix, block_measures: Vec<f64>) -> Result<Self> {
        let k = block_measures.len();
        if k == 0 {
            return Err(Error::InvalidModel("step graphon needs at least one block".into()));
        }
        if probabilities.rows() != k || probabilities.cols() != k {
            return Err(Error::InvalidModel(format!(
                "probability matrix is {}x{} but there are {k} blocks",
                probabilities.rows(),
                probabilities.cols()
            )));
        }
        for i in 0..k {
            for j in 0..k {
                let x = probabilities[(i, j)];
                if !(0.0..=1.0).contains(&x) {
                    return Err(Error::InvalidModel(format!("P[{i}][{j}] = {x} not in [0,1]")));
                }
                if x != probabilities[(j, i)] {
                    return Err(Error::InvalidModel(format!("P not symmetric at ({i},{j})")));
                }
            }
        }
        if block_measures.iter().any(|&m| !(m > 0.0 && m.is_finite())) {
            return Err(Error::InvalidModel("block measures must be positive".into()));
        }
        let total: f64 = block_measures.iter().sum();
        if (total - 1.0).abs() > MEASURE_TOL {
            return Err(Error::InvalidModel(format!("block measures sum to {total}, not 1")));
        }
        Ok(Self {
            probabilities,
            block_measures,
        })
    }

    /// `k` equal blocks.
    pub fn uniform(probabilities: Matrix) -> Result<Self> {
        let k = probabilities.rows();
        Self::new(probabilities, vec![1.0 / k as f64; k])
    }

    pub fn num_blocks(&self) -> usize {
        self.block_measures.len()
    }

    pub fn probabilities(&self) -> &Matrix {
        &self.probabilities
    }

    pub fn block_measures(&self) -> &[f64] {
        &self.block_measures
    }

    pub fn prob(&self, a: usize, b: usize) -> f64 {
        self.probabilities[(a, b)]
    }

    /// Operator matrix `P · diag(μ)`; acts on block-constant functions like the integral operator.
    pub fn operator_matrix(&self) -> Matrix {
        let mu = &self.block_measures;
        Matrix::from_fn(mu.len(), mu.len(), |i, j| self.probabilities[(i, j)] * mu[j])
    }

    /// Symmetrized form `D^{1/2} P D^{1/2}` with the same eigenvalues as [`Self::operator_matrix`].
    pub fn symmetrized_operator(&self) -> Matrix {
        let mu = &self.block_measures;
        Matrix::from_fn(mu.len(), mu.len(), |i, j| {
            mu[i].sqrt() * self.probabilities[(i, j)] * mu[j].sqrt()
        })
    }

    /// Permutes block labels: block `i` of the result is block `perm[i]` of `self`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let k = self.num_blocks();
        if perm.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                got: perm.len(),
            });
        }
        let p = Matrix::from_fn(k, k, |i, j| self.probabilities[(perm[i], perm[j])]);
        Self::new(p, perm.iter().map(|&i| self.block_measures[i]).collect())
    }
}

/// A symmetric function γ on a finite group with values in [0, 1].
#[derive(Clone, Debug)]
pub struct CayleyFunction {
    group: FiniteGroup,
    values: Vec<f64>,
}

impl CayleyFunction {
    pub fn new(group: FiniteGroup, values: Vec<f64>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::InvalidModel(format!(
                "Cayley function has {} values for a group of order {}",
                values.len(),
                group.order()
            )));
        }
        for (i, &v) in values.iter().enumerate() {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidModel(format!("γ({}) = {v} not in [0,1]", group.element(i))));
            }
            if v != values[group.inv(i)] {
                return Err(Error::InvalidModel(format!(
                    "γ is not inverse-symmetric at {}",
                    group.element(i)
                )));
            }
        }
        Ok(Self { group, values })
    }

    /// Builds γ from `(element, value)` pairs; unlisted elements get 0.
    pub fn from_pairs(group: FiniteGroup, pairs: &[(Permutation, f64)]) -> Result<Self> {
        let mut values = vec![0.0; group.order()];
        for (p, v) in pairs {
            let i = group.index_of(p).ok_or_else(|| {
                Error::InvalidModel(format!("{p} is not an element of the group"))
            })?;
            values[i] = *v;
        }
        Self::new(group, values)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// w(x, y) = γ(x y⁻¹) for element indices `x`, `y`.
    pub fn eval(&self, x: usize, y: usize) -> f64 {
        self.values[self.group.mul(x, self.group.inv(y))]
    }

    /// The step graphon with one equal-measure block per group element.
    pub fn to_step(&self) -> StepGraphon {
        let k = self.group.order();
        let p = Matrix::from_fn(k, k, |i, j| self.eval(i, j));
        StepGraphon::new(p, vec![1.0 / k as f64; k]).expect("Cayley step graphon satisfies invariants")
    }
}

/// The Cayley function on S3 with γ(e) = 0.6, γ((1 2)) = 0.3, γ((1 3)) = 0.1, zero elsewhere.
pub fn canonical_s3_cayley() -> CayleyFunction {
    let group = crate::group::symmetric_group(3).expect("S3");
    let pairs = [
        (Permutation::identity(3), 0.6),
        (Permutation::parse_cycles(3, "(1 2)").expect("cycle"), 0.3),
        (Permutation::parse_cycles(3, "(1 3)").expect("cycle"), 0.1),
    ];
    CayleyFunction::from_pairs(group, &pairs).expect("canonical S3 Cayley function")
}

/// Watts-Strogatz graphon on the circle: `1 − p` within circular distance `d`, `p` elsewhere.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorusCayleyGraphon {
    d: f64,
    p: f64,
}

impl TorusCayleyGraphon {
    pub fn new(d: f64, p: f64) -> Result<Self> {
        if !(d > 0.0 && d < 0.5) {
            return Err(Error::InvalidModel(format!("d = {d} must lie in (0, 1/2)")));
        }
        if !(p > 0.0 && p < 0.5) {
            return Err(Error::InvalidModel(format!("p = {p} must lie in (0, 1/2)")));
        }
        Ok(Self { d, p })
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// The Cayley function γ(t) on the circle.
    pub fn gamma(&self, t: TorusPoint) -> f64 {
        if t.distance(TorusPoint::new(0.0)) <= self.d {
            1.0 - self.p
        } else {
            self.p
        }
    }

    pub fn eval(&self, x: TorusPoint, y: TorusPoint) -> f64 {
        if x.distance(y) <= self.d {
            1.0 - self.p
        } else {
            self.p
        }
    }

    /// Eigenvalue of the convolution operator at frequency `k`.
    ///
    /// Frequency 0 has the constant eigenfunction; each `k ≥ 1` has multiplicity
    /// two (cosine and sine).
    pub fn eigenvalue(&self, k: usize) -> f64 {
        if k == 0 {
            2.0 * self.d * (1.0 - self.p) + (1.0 - 2.0 * self.d) * self.p
        } else {
            let k = k as f64;
            (1.0 - 2.0 * self.p) * (2.0 * PI * k * self.d).sin() / (PI * k)
        }
    }

    /// `(frequency, eigenvalue)` for frequencies `0..=k_max`, nonzero frequencies listed twice.
    pub fn spectrum(&self, k_max: usize) -> Vec<(usize, f64)> {
        let mut out = vec![(0, self.eigenvalue(0))];
        for k in 1..=k_max {
            let l = self.eigenvalue(k);
            out.push((k, l));
            out.push((k, l));
        }
        out
    }
}

/// Which vertex space a signal lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignalSpace {
    /// Vertices of a sampled graph.
    Vertices,
    /// Blocks of a step graphon.
    Blocks,
    /// Elements of a finite group (counting measure).
    Group,
    /// Uniform grid discretizing the circle.
    Grid,
}

/// A real signal on a finite vertex space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Signal {
    values: Vec<f64>,
    space: SignalSpace,
}

impl Signal {
    pub fn new(values: Vec<f64>, space: SignalSpace) -> Result<Self> {
        if let Some(x) = values.iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument(format!("signal entry {x} is not finite")));
        }
        Ok(Self { values, space })
    }

    pub fn zeros(len: usize, space: SignalSpace) -> Self {
        Self {
            values: vec![0.0; len],
            space,
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn space(&self) -> SignalSpace {
        self.space
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Serializable graphon description.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum GraphonSpec {
    Step {
        #[serde(rename = "P")]
        p: Vec<Vec<f64>>,
        measures: Vec<f64>,
    },
    Cayley {
        group: String,
        gamma: BTreeMap<String, f64>,
    },
    Torus {
        d: f64,
        p: f64,
    },
}

/// A validated graphon model ready for evaluation and sampling.
#[derive(Clone, Debug)]
pub enum GraphonModel {
    Step(StepGraphon),
    Cayley(CayleyFunction),
    Torus(TorusCayleyGraphon),
}

impl GraphonSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn build(&self) -> Result<GraphonModel> {
        match self {
            GraphonSpec::Step { p, measures } => {
                let m = Matrix::from_rows(p)
                    .map_err(|e| Error::InvalidModel(format!("P is not rectangular: {e}")))?;
                Ok(GraphonModel::Step(StepGraphon::new(m, measures.clone())?))
            }
            GraphonSpec::Cayley { group, gamma } => {
                let g = FiniteGroup::by_name(group)?;
                let n = g.degree();
                let pairs = gamma
                    .iter()
                    .map(|(k, &v)| Ok((Permutation::parse_cycles(n, k)?, v)))
                    .collect::<Result<Vec<_>>>()?;
                let mut seen = std::collections::HashSet::new();
                for (p, _) in &pairs {
                    if !seen.insert(p.clone()) {
                        return Err(Error::InvalidModel(format!("γ lists {p} more than once")));
                    }
                }
                Ok(GraphonModel::Cayley(CayleyFunction::from_pairs(g, &pairs)?))
            }
            GraphonSpec::Torus { d, p } => Ok(GraphonModel::Torus(TorusCayleyGraphon::new(*d, *p)?)),
        }
    }
}

impl GraphonModel {
    /// Step form, when the model has finitely many blocks.
    pub fn as_step(&self) -> Option<StepGraphon> {
        match self {
            GraphonModel::Step(s) => Some(s.clone()),
            GraphonModel::Cayley(c) => Some(c.to_step()),
            GraphonModel::Torus(_) => None,
        }
    }
}
