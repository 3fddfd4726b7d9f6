//! Deterministic generators for golden, random and adversarial test
//! matrices.
//!
//! Randomness comes from a fixed splitmix64 so a (kind, parameters,
//! seed) triple always reproduces the same matrix byte for byte, across
//! platforms and reimplementations.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sfs::LinearOrder;
use crate::{Matrix, Weight};

/// splitmix64: tiny, well-known, and trivially portable.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in 0..bound (bound ≥ 1). Modulo bias is irrelevant for
    /// test-instance generation.
    pub fn below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        self.next_u64() % bound
    }

    /// Uniform in [0, 1).
    pub fn unit_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn shuffle(&mut self, xs: &mut [u32]) {
        for i in (1..xs.len()).rev() {
            xs.swap(i, self.below(i as u64 + 1) as usize);
        }
    }
}

/// Everything needed to regenerate an instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorSpec {
    WorstCase { n: usize },
    RandomRobinsonian { n: usize, k: usize, seed: u64, permute: bool },
    RandomUnitInterval { n: usize, density: f64, seed: u64 },
    Perturbed { base: Box<GeneratorSpec>, count: usize, seed: u64 },
}

/// A generated matrix plus whatever the generator can promise about it.
#[derive(Debug, Clone)]
pub struct GeneratedInstance {
    pub matrix: Matrix,
    /// Prescribed initial sweep (worst-case family only).
    pub sigma0: Option<LinearOrder>,
    /// Permutation under which the matrix is Robinson by construction.
    pub hidden_order: Option<LinearOrder>,
}

impl GeneratorSpec {
    pub fn build(&self) -> Result<GeneratedInstance> {
        match *self {
            GeneratorSpec::WorstCase { n } => {
                let (matrix, sigma0) = worst_case(n)?;
                Ok(GeneratedInstance { matrix, sigma0: Some(sigma0), hidden_order: None })
            }
            GeneratorSpec::RandomRobinsonian { n, k, seed, permute } => {
                let (matrix, hidden) = random_robinsonian(n, k, seed, permute)?;
                Ok(GeneratedInstance { matrix, sigma0: None, hidden_order: Some(hidden) })
            }
            GeneratorSpec::RandomUnitInterval { n, density, seed } => Ok(GeneratedInstance {
                matrix: random_unit_interval(n, density, seed)?,
                sigma0: None,
                hidden_order: None,
            }),
            GeneratorSpec::Perturbed { ref base, count, seed } => {
                let inner = base.build()?;
                Ok(GeneratedInstance {
                    matrix: perturb(&inner.matrix, count, seed)?,
                    sigma0: None,
                    hidden_order: None, // rewrites void the guarantee
                })
            }
        }
    }
}

/// The adversarial family on which the multisweep loop needs the full
/// n−1 sweeps when started from (2, 3, …, n, 1). Returns the matrix and
/// that prescribed initial ordering. Robinson under the identity by
/// construction.
pub fn worst_case(n: usize) -> Result<(Matrix, LinearOrder)> {
    if n < 4 {
        return Err(Error::Generator(format!("worst_case needs n >= 4, got {n}")));
    }
    // 1-based table, filled from the three defining relations; the
    // shifting rule reads one row up and one column right, so row-major
    // order visits dependencies first
    let mut w = vec![vec![0i64; n + 1]; n + 1];
    for i in 2..=n - 1 {
        w[1][i] = 1;
    }
    w[1][n] = 0;
    w[2][n] = 1;
    for i in 3..=n - 1 {
        w[i][n] = 2;
    }
    for i in 2..=n - 1 {
        for j in i + 1..=n - 1 {
            w[i][j] = w[i - 1][j + 1] + 1;
        }
    }
    let matrix = Matrix::from_dense_fn(n, |x, y| w[x + 1][y + 1]);
    let mut seq: Vec<u32> = (1..n as u32).collect();
    seq.push(0);
    Ok((matrix, LinearOrder::from_seq(seq).unwrap()))
}

/// Closed form of sweep σ_j of the multisweep on [`worst_case`]`(n)`
/// started from its σ₀ (1-based inputs, 0-based order out):
/// even j = 2k is ((n…n−k+1), (k+2…n−k), (k+1…1)),
/// odd j = 2k+1 is ((1…k+1), (n−k−1…k+2), (n−k…n)).
pub fn worst_case_sweep_form(n: usize, j: usize) -> LinearOrder {
    assert!(n >= 4 && j <= n - 2);
    let n = n as u32;
    let mut seq: Vec<u32> = Vec::with_capacity(n as usize);
    let k = (j / 2) as u32;
    if j % 2 == 0 {
        seq.extend((n - k + 1..=n).rev());
        seq.extend(k + 2..=n - k);
        seq.extend((1..=k + 1).rev());
    } else {
        seq.extend(1..=k + 1);
        seq.extend((k + 2..=n - k - 1).rev());
        seq.extend(n - k..=n);
    }
    LinearOrder::from_seq(seq.iter().map(|&v| v - 1).collect()).unwrap()
}

fn add_interval_block(acc: &mut BTreeMap<(u32, u32), Weight>, lo: u32, hi: u32, w: Weight) {
    for x in lo..=hi {
        for y in x + 1..=hi {
            *acc.entry((x, y)).or_insert(0) += w;
        }
    }
}

/// Sum of k weighted interval blocks: each interval I contributes w on
/// every off-diagonal pair inside I. Every block is Robinson under the
/// identity and the Robinson inequalities add up, so the sum is too.
/// With `permute` the result is conjugated by a hidden permutation,
/// returned so callers can check the planted ordering (identity
/// otherwise). Interval lengths are capped at 18 to keep the edge count
/// near-linear in n.
pub fn random_robinsonian(
    n: usize,
    k: usize,
    seed: u64,
    permute: bool,
) -> Result<(Matrix, LinearOrder)> {
    if n < 1 || k < 1 {
        return Err(Error::Generator(format!(
            "random_robinsonian needs n >= 1 and k >= 1, got n={n}, k={k}"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let mut acc = BTreeMap::new();
    let max_len = n.min(18) as u64;
    for _ in 0..k {
        if n == 1 {
            break;
        }
        let len = 2 + rng.below(max_len - 1);
        let lo = rng.below(n as u64 - len + 1) as u32;
        let w = 1 + rng.below(9) as Weight;
        add_interval_block(&mut acc, lo, lo + len as u32 - 1, w);
    }
    let mut relabel: Vec<u32> = (0..n as u32).collect();
    if permute {
        rng.shuffle(&mut relabel);
    }
    let edges = acc
        .into_iter()
        .map(|((x, y), w)| (relabel[x as usize], relabel[y as usize], w));
    let matrix = Matrix::from_weighted_edges(n, edges)?;
    let hidden = LinearOrder::from_seq(relabel).unwrap();
    Ok((matrix, hidden))
}

/// 0/1 adjacency of the unit intervals [s_i, s_i + 1]: an edge wherever
/// two intervals intersect.
pub fn unit_interval_graph(starts: &[f64]) -> Matrix {
    let n = starts.len();
    Matrix::from_dense_fn(n, |x, y| ((starts[x] - starts[y]).abs() <= 1.0) as Weight)
}

/// Random connected unit interval graph, vertices randomly relabeled.
/// Consecutive interval starts are at most 0.999 apart, so the graph is
/// always connected; higher density squeezes the starts together.
pub fn random_unit_interval(n: usize, density: f64, seed: u64) -> Result<Matrix> {
    if !(density > 0.0 && density <= 1.0) {
        return Err(Error::Generator(format!("density must be in (0, 1], got {density}")));
    }
    if n == 0 {
        return Matrix::from_weighted_edges(0, []);
    }
    let mut rng = SplitMix64::new(seed);
    let gap_max = (1.0 - density).min(0.999);
    let mut starts = Vec::with_capacity(n);
    let mut s = 0.0;
    for _ in 0..n {
        starts.push(s);
        s += rng.unit_f64() * gap_max;
    }
    let ordered = unit_interval_graph(&starts);
    let mut relabel: Vec<u32> = (0..n as u32).collect();
    rng.shuffle(&mut relabel);
    let mut edges = Vec::new();
    for x in 0..n as u32 {
        for &(y, w) in ordered.neighbors(x) {
            if y > x {
                edges.push((relabel[x as usize], relabel[y as usize], w));
            }
        }
    }
    Matrix::from_weighted_edges(n, edges)
}

/// `count` random symmetric entry rewrites with fresh values (possibly
/// zero, which deletes the pair). The result may or may not stay
/// Robinsonian — label it with an oracle, not with assumptions.
pub fn perturb(a: &Matrix, count: usize, seed: u64) -> Result<Matrix> {
    if count < 1 {
        return Err(Error::Generator(format!("perturb needs count >= 1, got {count}")));
    }
    let n = a.n();
    if n < 2 {
        return Err(Error::Generator("perturb needs at least two vertices".into()));
    }
    let mut rng = SplitMix64::new(seed);
    let max_w = a.distinct_positive_values().last().copied().unwrap_or(1);
    let mut entries: BTreeMap<(u32, u32), Weight> = BTreeMap::new();
    for x in 0..n as u32 {
        for &(y, w) in a.neighbors(x) {
            if y > x {
                entries.insert((x, y), w);
            }
        }
    }
    for _ in 0..count {
        let x = rng.below(n as u64) as u32;
        let mut y = rng.below(n as u64) as u32;
        while y == x {
            y = rng.below(n as u64) as u32;
        }
        let key = (x.min(y), x.max(y));
        let value = rng.below(2 * max_w as u64 + 2) as Weight;
        if value == 0 {
            entries.remove(&key);
        } else {
            entries.insert(key, value);
        }
    }
    Matrix::from_weighted_edges(n, entries.into_iter().map(|((x, y), w)| (x, y, w)))
}
