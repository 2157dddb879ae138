//! Permutations, symmetric groups with Cayley tables, and the circle group.
//!
//! Composition applies the right factor first: `compose(a, b)(i) = a(b(i))`.
//! Cycle notation is 1-based, one-line images are 0-based.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `n` for which [`symmetric_group`] builds a full Cayley table.
pub const MAX_SYMMETRIC_DEGREE: usize = 8;

/// A permutation of `{0, .., n-1}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PermutationJson", into = "PermutationJson")]
pub struct Permutation {
    images: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct PermutationJson {
    n: usize,
    images: Vec<usize>,
}

impl TryFrom<PermutationJson> for Permutation {
    type Error = Error;

    fn try_from(value: PermutationJson) -> Result<Self> {
        if value.images.len() != value.n {
            return Err(Error::InvalidPermutation(format!(
                "n = {} but {} images given",
                value.n,
                value.images.len()
            )));
        }
        Permutation::new(value.images)
    }
}

impl From<Permutation> for PermutationJson {
    fn from(p: Permutation) -> Self {
        PermutationJson {
            n: p.degree(),
            images: p.images,
        }
    }
}

impl Permutation {
    /// Validates that `images` is a bijection on `0..images.len()`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("degree must be at least 1".into()));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n {
                return Err(Error::InvalidPermutation(format!("image {x} out of range for degree {n}")));
            }
            if seen[x] {
                return Err(Error::InvalidPermutation(format!("image {x} repeated")));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "degree must be at least 1");
        Self {
            images: (0..n).collect(),
        }
    }

    /// Transposition of the 0-based points `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(i, j);
        p
    }

    /// Product of cycles given in 1-based notation, composed right to left.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidCycle("degree must be at least 1".into()));
        }
        let mut result = Self::identity(n);
        for cycle in cycles {
            let mut images: Vec<usize> = (0..n).collect();
            let mut seen = vec![false; n];
            for &x in cycle {
                if x == 0 || x > n {
                    return Err(Error::InvalidCycle(format!("entry {x} out of range 1..={n}")));
                }
                if seen[x - 1] {
                    return Err(Error::InvalidCycle(format!("entry {x} repeated within a cycle")));
                }
                seen[x - 1] = true;
            }
            for (k, &x) in cycle.iter().enumerate() {
                let next = cycle[(k + 1) % cycle.len()];
                images[x - 1] = next - 1;
            }
            result = result.compose(&Self { images })?;
        }
        Ok(result)
    }

    /// Parses strings like `"(1 2)(3 4)"`, `"(1,2,3)"`, `"()"` or `"(1)"`.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Self> {
        let cycles = parse_cycle_list(text)?;
        Self::from_cycles(n, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: applies `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(Self {
            images: other.images.iter().map(|&j| self.images[j]).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Self { images }
    }

    /// Position of this permutation in the lexicographic order of one-line notation.
    pub fn lex_rank(&self) -> usize {
        let n = self.degree();
        let mut rank = 0;
        for i in 0..n {
            let smaller = self.images[i + 1..]
                .iter()
                .filter(|&&x| x < self.images[i])
                .count();
            rank = rank * (n - i) + smaller;
        }
        rank
    }

    /// Disjoint cycles of length at least two, 1-based, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Writes `self` as a word `s_{a_1} ∘ s_{a_2} ∘ ...` in adjacent transpositions,
    /// where `s_a` swaps the 0-based points `a` and `a + 1`.
    pub fn adjacent_transposition_word(&self) -> Vec<usize> {
        // Bubble sort the one-line notation; each swap of positions a, a+1
        // right-multiplies by s_a, so the recorded word is read backwards.
        let mut current = self.images.clone();
        let mut word = Vec::new();
        while let Some(a) = (0..current.len().saturating_sub(1)).find(|&a| current[a] > current[a + 1]) {
            current.swap(a, a + 1);
            word.push(a);
        }
        word.reverse();
        word
    }

    /// Parity sign: +1 for even, −1 for odd permutations.
    pub fn sign(&self) -> i32 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

fn parse_cycle_list(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err(Error::InvalidCycle("empty string".into()));
    }
    while !rest.is_empty() {
        let body_start = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::InvalidCycle(format!("expected '(' in {text:?}")))?;
        let close = body_start
            .find(')')
            .ok_or_else(|| Error::InvalidCycle(format!("unbalanced parentheses in {text:?}")))?;
        let body = &body_start[..close];
        let cycle = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| {
                usize::from_str(s).map_err(|_| Error::InvalidCycle(format!("bad entry {s:?} in {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        cycles.push(cycle);
        rest = body_start[close + 1..].trim_start();
    }
    Ok(cycles)
}

/// A finite group of permutations with precomputed multiplication and inverse tables.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    elements: Vec<Permutation>,
    mul_table: Vec<Vec<usize>>,
    inv_table: Vec<usize>,
    identity_index: usize,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.elements[0].degree()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    /// Index of `elements[i] ∘ elements[j]`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mul_table[i][j]
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inv_table[i]
    }

    pub fn identity_index(&self) -> usize {
        self.identity_index
    }

    pub fn mul_table(&self) -> &[Vec<usize>] {
        &self.mul_table
    }

    pub fn inv_table(&self) -> &[usize] {
        &self.inv_table
    }

    /// Index of a permutation in this group's element list.
    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        if p.degree() != self.degree() {
            return None;
        }
        let r = p.lex_rank();
        (r < self.order() && self.elements[r] == *p).then_some(r)
    }

    /// Parses a group name such as `"S3"` and builds the symmetric group.
    pub fn by_name(name: &str) -> Result<Self> {
        let n = name
            .strip_prefix('S')
            .and_then(|s| s.parse::<usize>().ok())
            .ok_or_else(|| Error::UnsupportedGroup(format!("unknown group name {name:?}")))?;
        symmetric_group(n)
    }
}

/// The symmetric group on `n` points, elements in lexicographic one-line order.
pub fn symmetric_group(n: usize) -> Result<FiniteGroup> {
    if !(1..=MAX_SYMMETRIC_DEGREE).contains(&n) {
        return Err(Error::UnsupportedGroup(format!(
            "symmetric group degree {n} outside 1..={MAX_SYMMETRIC_DEGREE}"
        )));
    }
    let mut elements = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        elements.push(Permutation {
            images: current.clone(),
        });
        if !next_lex_permutation(&mut current) {
            break;
        }
    }
    let mul_table: Vec<Vec<usize>> = elements
        .iter()
        .map(|a| {
            elements
                .iter()
                .map(|b| {
                    let ab = Permutation {
                        images: b.images.iter().map(|&j| a.images[j]).collect(),
                    };
                    ab.lex_rank()
                })
                .collect()
        })
        .collect();
    let inv_table = elements.iter().map(|a| a.inverse().lex_rank()).collect();
    Ok(FiniteGroup {
        elements,
        mul_table,
        inv_table,
        identity_index: 0,
    })
}

fn next_lex_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// A point of the circle group ℝ/ℤ, represented in [0, 1).
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TorusPoint(f64);

impl TorusPoint {
    /// Reduces any finite real modulo 1.
    pub fn new(value: f64) -> Self {
        let mut r = value.rem_euclid(1.0);
        // rem_euclid can round up to exactly 1.0 for tiny negative inputs
        if r >= 1.0 {
            r = 0.0;
        }
        Self(r)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn inverse(self) -> Self {
        Self::new(1.0 - self.0)
    }

    /// Circular distance, in [0, 1/2].
    pub fn distance(self, other: Self) -> f64 {
        let diff = (self.0 - other.0).abs();
        diff.min(1.0 - diff)
    }
}

impl std::ops::Add for TorusPoint {
    type Output = Self;

    fn add(self, other: Self) -> Self {
        Self::new(self.0 + other.0)
    }
}
