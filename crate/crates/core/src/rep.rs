//! Real orthogonal irreducible representations of symmetric groups (Young's
//! orthogonal form) and Cayley graphs of generating sets.

use crate::error::{Error, Result};
use crate::group::{symmetric_group, FiniteGroup, Permutation};
use crate::linalg::Matrix;

pub const MIN_IRREP_DEGREE: usize = 2;
pub const MAX_IRREP_DEGREE: usize = 5;

/// Partitions of `n` in reverse lexicographic order, `[n]` first.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            prefix.push(part);
            go(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// A standard Young tableau, stored as the row of each entry `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Tableau {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl Tableau {
    pub fn row_of(&self, entry: usize) -> usize {
        self.rows[entry]
    }

    pub fn col_of(&self, entry: usize) -> usize {
        self.cols[entry]
    }

    /// `col − row` of the box holding `entry`.
    pub fn content(&self, entry: usize) -> i64 {
        self.cols[entry] as i64 - self.rows[entry] as i64
    }

    fn swapped(&self, a: usize) -> Tableau {
        let mut t = self.clone();
        t.rows.swap(a, a + 1);
        t.cols.swap(a, a + 1);
        t
    }
}

/// All standard tableaux of shape `shape`, sorted by row word.
pub fn standard_tableaux(shape: &[usize]) -> Vec<Tableau> {
    fn go(shape: &[usize], filled: &mut Vec<usize>, rows: &mut Vec<usize>, cols: &mut Vec<usize>, out: &mut Vec<Tableau>) {
        let n: usize = shape.iter().sum();
        if rows.len() == n {
            out.push(Tableau {
                rows: rows.clone(),
                cols: cols.clone(),
            });
            return;
        }
        for r in 0..shape.len() {
            let c = filled[r];
            let fits = c < shape[r] && (r == 0 || filled[r - 1] > c);
            if fits {
                filled[r] += 1;
                rows.push(r);
                cols.push(c);
                go(shape, filled, rows, cols, out);
                rows.pop();
                cols.pop();
                filled[r] -= 1;
            }
        }
    }
    let mut out = Vec::new();
    go(shape, &mut vec![0; shape.len()], &mut Vec::new(), &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// An irreducible representation: one orthogonal matrix per group element,
/// indexed like [`FiniteGroup::elements`].
#[derive(Clone, Debug)]
pub struct Irrep {
    pub partition: Vec<usize>,
    pub dim: usize,
    pub matrices: Vec<Matrix>,
}

impl Irrep {
    pub fn matrix(&self, g: usize) -> &Matrix {
        &self.matrices[g]
    }

    pub fn label(&self) -> String {
        let parts: Vec<String> = self.partition.iter().map(|p| p.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
}

fn square_product(a: &Matrix, b: &Matrix) -> Matrix {
    a.matmul(b).expect("irrep matrices share one size")
}

/// Matrix of the adjacent transposition swapping entries `a` and `a + 1`.
fn adjacent_matrix(tableaux: &[Tableau], a: usize) -> Matrix {
    let d = tableaux.len();
    let mut m = Matrix::zeros(d, d);
    for (i, t) in tableaux.iter().enumerate() {
        if t.row_of(a) == t.row_of(a + 1) {
            m[(i, i)] = 1.0;
        } else if t.col_of(a) == t.col_of(a + 1) {
            m[(i, i)] = -1.0;
        } else {
            let rho = (t.content(a + 1) - t.content(a)) as f64;
            m[(i, i)] = 1.0 / rho;
            let partner = tableaux
                .binary_search(&t.swapped(a))
                .expect("swapping non-adjacent boxes keeps the tableau standard");
            m[(partner, i)] = (1.0 - 1.0 / (rho * rho)).sqrt();
        }
    }
    m
}

fn irrep_for(group: &FiniteGroup, partition: Vec<usize>) -> Irrep {
    let tableaux = standard_tableaux(&partition);
    let dim = tableaux.len();
    let generators: Vec<Matrix> = (0..group.degree().saturating_sub(1))
        .map(|a| adjacent_matrix(&tableaux, a))
        .collect();
    let matrices = group
        .elements()
        .iter()
        .map(|g| {
            g.adjacent_transposition_word()
                .iter()
                .fold(Matrix::identity(dim), |acc, &a| square_product(&acc, &generators[a]))
        })
        .collect();
    Irrep {
        partition,
        dim,
        matrices,
    }
}

/// Every irreducible representation of `Sₙ`, one per partition, as real
/// orthogonal matrices over the lexicographically ordered elements.
pub fn young_orthogonal_irreps(n: usize) -> Result<Vec<Irrep>> {
    if !(MIN_IRREP_DEGREE..=MAX_IRREP_DEGREE).contains(&n) {
        return Err(Error::UnsupportedGroup(format!(
            "irreps are built for S{MIN_IRREP_DEGREE}..S{MAX_IRREP_DEGREE}, not S{n}"
        )));
    }
    let group = symmetric_group(n)?;
    Ok(partitions(n).into_iter().map(|p| irrep_for(&group, p)).collect())
}

/// `max ‖π(ab) − π(a)π(b)‖_max` over all pairs.
pub fn homomorphism_residual(group: &FiniteGroup, irrep: &Irrep) -> f64 {
    let mut worst = 0.0f64;
    for a in 0..group.order() {
        for b in 0..group.order() {
            let prod = square_product(irrep.matrix(a), irrep.matrix(b));
            worst = worst.max(prod.max_abs_diff(irrep.matrix(group.mul(a, b))));
        }
    }
    worst
}

/// `max ‖π(g)ᵀπ(g) − I‖_max` over the group.
pub fn orthogonality_residual(irrep: &Irrep) -> f64 {
    let id = Matrix::identity(irrep.dim);
    irrep
        .matrices
        .iter()
        .map(|m| square_product(&m.transpose(), m).max_abs_diff(&id))
        .fold(0.0, f64::max)
}

/// Largest deviation from the Schur orthogonality relations
/// `Σ_g π(g)ᵢⱼ π′(g)ₖₗ = (|G|/d_π) δ_{ππ′} δᵢₖ δⱼₗ`.
pub fn schur_residual(group: &FiniteGroup, irreps: &[Irrep]) -> f64 {
    let order = group.order() as f64;
    let mut worst = 0.0f64;
    for (p, a) in irreps.iter().enumerate() {
        for (q, b) in irreps.iter().enumerate().skip(p) {
            for i in 0..a.dim {
                for j in 0..a.dim {
                    for k in 0..b.dim {
                        for l in 0..b.dim {
                            let sum: f64 = (0..group.order())
                                .map(|g| a.matrix(g)[(i, j)] * b.matrix(g)[(k, l)])
                                .sum();
                            let expected = if p == q && i == k && j == l {
                                order / a.dim as f64
                            } else {
                                0.0
                            };
                            worst = worst.max((sum - expected).abs());
                        }
                    }
                }
            }
        }
    }
    worst
}

/// A symmetric generating set: closed under inverses and without the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratingSet {
    elements: Vec<Permutation>,
    indices: Vec<usize>,
}

impl GeneratingSet {
    pub fn new(group: &FiniteGroup, elements: Vec<Permutation>) -> Result<Self> {
        let mut indices = Vec::with_capacity(elements.len());
        for s in &elements {
            let i = group
                .index_of(s)
                .ok_or_else(|| Error::InvalidGeneratingSet(format!("{s} is not in the group")))?;
            if s.is_identity() {
                return Err(Error::InvalidGeneratingSet("the identity cannot be a generator".into()));
            }
            if indices.contains(&i) {
                return Err(Error::InvalidGeneratingSet(format!("{s} is listed twice")));
            }
            indices.push(i);
        }
        for s in &elements {
            if !elements.contains(&s.inverse()) {
                return Err(Error::InvalidGeneratingSet(format!(
                    "{s} is present but its inverse {} is not",
                    s.inverse()
                )));
            }
        }
        Ok(Self { elements, indices })
    }

    /// Parses generators written in cycle notation, e.g. `"(1 2)(3 4)"`.
    pub fn parse<S: AsRef<str>>(group: &FiniteGroup, texts: &[S]) -> Result<Self> {
        let elements = texts
            .iter()
            .map(|t| Permutation::parse_cycles(group.degree(), t.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, elements)
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    /// Positions of the generators in the group's element list.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn labels(&self) -> Vec<String> {
        self.elements.iter().map(|s| s.to_string()).collect()
    }
}

/// `{(1 2), (2 3), (3 4), (1 2)(3 4)}` in `S₄`.
pub fn s4_ranking_set(group: &FiniteGroup) -> Result<GeneratingSet> {
    GeneratingSet::parse(group, &["(1 2)", "(2 3)", "(3 4)", "(1 2)(3 4)"])
}

/// `π(S) = Σ_{s∈S} π(s)`.
pub fn pi_of_s(irrep: &Irrep, s: &GeneratingSet) -> Result<Matrix> {
    let mut out = Matrix::zeros(irrep.dim, irrep.dim);
    for &i in s.indices() {
        let m = irrep
            .matrices
            .get(i)
            .ok_or_else(|| Error::InvalidGeneratingSet("generator outside the irrep's group".into()))?;
        out.add_assign(m);
    }
    Ok(out)
}

/// Adjacency of the Cayley graph with `(A f)(g) = Σ_{s∈S} f(s g)`.
pub fn cayley_adjacency(group: &FiniteGroup, s: &GeneratingSet) -> Matrix {
    let n = group.order();
    let mut a = Matrix::zeros(n, n);
    for g in 0..n {
        for &si in s.indices() {
            a[(g, group.mul(si, g))] += 1.0;
        }
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::eigenvalues_sym;

    fn hook_length_dim(shape: &[usize]) -> usize {
        let n: usize = shape.iter().sum();
        let mut hooks = 1usize;
        for (r, &len) in shape.iter().enumerate() {
            for c in 0..len {
                let below = shape[r + 1..].iter().filter(|&&l| l > c).count();
                hooks *= len - c + below;
            }
        }
        (1..=n).product::<usize>() / hooks
    }

    #[test]
    fn partitions_of_four() {
        assert_eq!(
            partitions(4),
            vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]
        );
        assert_eq!(partitions(5).len(), 7);
    }

    #[test]
    fn tableau_counts_match_hook_lengths() {
        for n in 1..=6 {
            for p in partitions(n) {
                assert_eq!(standard_tableaux(&p).len(), hook_length_dim(&p), "{p:?}");
            }
        }
    }

    #[test]
    fn dims_of_s4() {
        let irreps = young_orthogonal_irreps(4).unwrap();
        let mut dims: Vec<usize> = irreps.iter().map(|i| i.dim).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 1, 2, 3, 3]);
        assert_eq!(irreps.iter().map(|i| i.dim * i.dim).sum::<usize>(), 24);
    }

    #[test]
    fn range_is_checked() {
        assert!(young_orthogonal_irreps(1).is_err());
        assert!(young_orthogonal_irreps(6).is_err());
    }

    #[test]
    fn trivial_and_sign() {
        let g = symmetric_group(4).unwrap();
        let irreps = young_orthogonal_irreps(4).unwrap();
        let trivial = &irreps[0];
        let sign = &irreps[4];
        for (i, p) in g.elements().iter().enumerate() {
            assert_eq!(trivial.matrix(i)[(0, 0)], 1.0);
            assert_eq!(sign.matrix(i)[(0, 0)], p.sign() as f64);
        }
    }

    #[test]
    fn homomorphism_and_orthogonality_for_small_groups() {
        for n in 2..=5 {
            let g = symmetric_group(n).unwrap();
            let irreps = young_orthogonal_irreps(n).unwrap();
            assert_eq!(irreps.iter().map(|i| i.dim * i.dim).sum::<usize>(), g.order());
            for irrep in &irreps {
                assert!(orthogonality_residual(irrep) < 1e-12);
                if n <= 4 {
                    assert!(homomorphism_residual(&g, irrep) < 1e-12, "{}", irrep.label());
                }
            }
        }
    }

    #[test]
    fn schur_for_s3_and_s4() {
        for n in 3..=4 {
            let g = symmetric_group(n).unwrap();
            assert!(schur_residual(&g, &young_orthogonal_irreps(n).unwrap()) < 1e-10);
        }
    }

    #[test]
    fn generating_set_validation() {
        let g = symmetric_group(4).unwrap();
        assert!(s4_ranking_set(&g).is_ok());
        assert!(GeneratingSet::parse(&g, &["()"]).is_err());
        assert!(GeneratingSet::parse(&g, &["(1 2 3)"]).is_err());
        assert!(GeneratingSet::parse(&g, &["(1 2 3)", "(1 3 2)"]).is_ok());
        assert!(GeneratingSet::parse(&g, &["(1 2)", "(1 2)"]).is_err());
    }

    #[test]
    fn pi_of_s_for_one_dimensional_irreps() {
        let g = symmetric_group(4).unwrap();
        let s = s4_ranking_set(&g).unwrap();
        let irreps = young_orthogonal_irreps(4).unwrap();
        assert_eq!(pi_of_s(&irreps[0], &s).unwrap()[(0, 0)], 4.0);
        assert_eq!(pi_of_s(&irreps[4], &s).unwrap()[(0, 0)], -2.0);
        for irrep in &irreps {
            assert_eq!(pi_of_s(irrep, &s).unwrap().max_asymmetry(), 0.0);
        }
    }

    #[test]
    fn cayley_adjacency_is_regular_and_symmetric() {
        let g = symmetric_group(4).unwrap();
        let a = cayley_adjacency(&g, &s4_ranking_set(&g).unwrap());
        assert_eq!(a.max_asymmetry(), 0.0);
        for i in 0..24 {
            assert_eq!(a.row(i).iter().sum::<f64>(), 4.0);
        }
        let top = eigenvalues_sym(&a).unwrap()[0];
        assert!((top - 4.0).abs() < 1e-12);
    }
}
