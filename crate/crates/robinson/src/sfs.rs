//! The SFS, SFS⁺ and DiSFS sweeps, plus the 3-point checker that
//! characterizes the orders SFS can produce.
//!
//! A sweep repeatedly pops the head of the queue's first class as the
//! pivot, computes the pivot's neighborhood grouped by weight, and
//! refines the queue with it. All tie-breaking is delegated to the seed
//! order, which makes every sweep a deterministic function of
//! (matrix, seed): "arbitrary" choices become "first in seed order",
//! and the plus-variant's "last in the previous sweep" is obtained by
//! seeding with the reversed previous sweep.

use crate::error::{Error, Result};
use crate::matrix::{DissimilarityMatrixOf, SimilarityMatrix};
use crate::partition::{
    dissimilarity_partition, refine, refine_dissimilarity, similarity_partition, OrderedPartition,
};
use crate::WeightScalar;

/// Permutation of the vertices with O(1) position lookup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearOrder {
    seq: Vec<u32>,
    pos: Vec<u32>,
}

impl LinearOrder {
    pub fn identity(n: usize) -> Self {
        let seq: Vec<u32> = (0..n as u32).collect();
        LinearOrder { pos: seq.clone(), seq }
    }

    pub fn from_seq(seq: Vec<u32>) -> Result<Self> {
        let n = seq.len();
        let mut pos = vec![u32::MAX; n];
        for (i, &v) in seq.iter().enumerate() {
            if (v as usize) >= n {
                return Err(Error::InvalidOrder(format!(
                    "vertex {} out of range for n={n}",
                    v + 1
                )));
            }
            if pos[v as usize] != u32::MAX {
                return Err(Error::InvalidOrder(format!("vertex {} listed twice", v + 1)));
            }
            pos[v as usize] = i as u32;
        }
        Ok(LinearOrder { seq, pos })
    }

    /// Parses a whitespace/comma-separated list of 1-based vertex ids.
    pub fn parse_1based(text: &str, n: usize) -> Result<Self> {
        let mut seq = Vec::with_capacity(n);
        for tok in text.split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            let v: u32 = tok
                .parse()
                .map_err(|_| Error::InvalidOrder(format!("cannot parse vertex id '{tok}'")))?;
            if v == 0 {
                return Err(Error::InvalidOrder("vertex ids are 1-based".into()));
            }
            seq.push(v - 1);
        }
        if seq.len() != n {
            return Err(Error::InvalidOrder(format!(
                "order lists {} vertices, matrix has {n}",
                seq.len()
            )));
        }
        Self::from_seq(seq)
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn seq(&self) -> &[u32] {
        &self.seq
    }

    /// Vertex at position i.
    pub fn at(&self, i: usize) -> u32 {
        self.seq[i]
    }

    /// Position of vertex v.
    pub fn pos(&self, v: u32) -> usize {
        self.pos[v as usize] as usize
    }

    pub fn positions(&self) -> &[u32] {
        &self.pos
    }

    /// The reversal (first and last swap roles).
    pub fn reversed(&self) -> Self {
        let mut seq = self.seq.clone();
        seq.reverse();
        let n = seq.len() as u32;
        let pos = self.pos.iter().map(|&p| n - 1 - p).collect();
        LinearOrder { seq, pos }
    }

    /// 1-based sequence for output.
    pub fn to_1based(&self) -> Vec<u32> {
        self.seq.iter().map(|&v| v + 1).collect()
    }
}

/// Per-iteration diagnostics of one sweep.
#[derive(Debug, Clone)]
pub struct TraceStep {
    pub pivot: u32,
    pub slice_len: usize,
    pub classes_after: usize,
}

/// Full record of a sweep: one step per iteration, the slice (first
/// class, pivot included) each pivot was popped from, and the queue's
/// class lists after each refinement.
#[derive(Debug, Clone, Default)]
pub struct SweepTrace {
    pub steps: Vec<TraceStep>,
    pub slices: Vec<Vec<u32>>,
    pub queues: Vec<Vec<Vec<u32>>>,
}

enum Mode {
    Similarity,
    Dissimilarity,
}

fn sweep<W: WeightScalar>(
    a: &SimilarityMatrix<W>,
    seed: &LinearOrder,
    mode: Mode,
    mut trace: Option<&mut SweepTrace>,
) -> LinearOrder {
    let n = a.n();
    assert_eq!(seed.len(), n, "seed order size mismatch");
    let mut phi = OrderedPartition::new(n, seed.seq());
    let mut out = Vec::with_capacity(n);
    while !phi.is_empty() {
        let slice = if trace.is_some() { phi.first_class_vertices() } else { Vec::new() };
        let p = phi.pop_first().unwrap();
        out.push(p);
        match mode {
            Mode::Similarity => {
                let psi = similarity_partition(a, p, &phi, seed.positions());
                refine(&mut phi, &psi);
            }
            Mode::Dissimilarity => {
                let psi = dissimilarity_partition(a, p, &phi, seed.positions());
                refine_dissimilarity(&mut phi, &psi);
            }
        }
        if let Some(t) = trace.as_deref_mut() {
            t.steps.push(TraceStep {
                pivot: p,
                slice_len: slice.len(),
                classes_after: phi.num_classes(),
            });
            t.slices.push(slice);
            t.queues.push(phi.class_lists());
        }
    }
    LinearOrder::from_seq(out).expect("sweep emits each vertex exactly once")
}

/// One SFS sweep; ties resolve to the seed-earliest vertex.
pub fn sfs<W: WeightScalar>(a: &SimilarityMatrix<W>, seed: &LinearOrder) -> LinearOrder {
    sweep(a, seed, Mode::Similarity, None)
}

/// [`sfs`] with full diagnostics.
pub fn sfs_traced<W: WeightScalar>(
    a: &SimilarityMatrix<W>,
    seed: &LinearOrder,
) -> (LinearOrder, SweepTrace) {
    let mut trace = SweepTrace::default();
    let order = sweep(a, seed, Mode::Similarity, Some(&mut trace));
    (order, trace)
}

/// SFS⁺: every tie resolves to the vertex appearing last in `sigma`.
/// Because classes keep their seed order, seeding a plain sweep with the
/// reversal of `sigma` realizes exactly that rule.
pub fn sfs_plus<W: WeightScalar>(a: &SimilarityMatrix<W>, sigma: &LinearOrder) -> LinearOrder {
    sfs(a, &sigma.reversed())
}

/// One DiSFS sweep on a dissimilarity matrix: the pivot's neighborhood
/// is grouped by increasing dissimilarity and the zero-dissimilarity
/// remainder of each class stays in front. Equivalent to running
/// [`sfs`] on the complemented similarity matrix, without densifying.
pub fn disfs<W: WeightScalar>(d: &DissimilarityMatrixOf<W>, seed: &LinearOrder) -> LinearOrder {
    sweep(d.as_storage(), seed, Mode::Dissimilarity, None)
}

/// [`disfs`] with ties resolved to the `sigma`-latest vertex.
pub fn disfs_plus<W: WeightScalar>(
    d: &DissimilarityMatrixOf<W>,
    sigma: &LinearOrder,
) -> LinearOrder {
    disfs(d, &sigma.reversed())
}

/// 3-point characterization of SFS orderings: σ is an SFS ordering of A
/// iff for every x <_σ y <_σ z with A_xz > A_xy some u <_σ x has
/// A_uy > A_uz. Returns the first violating (x, y, z) in σ-lexicographic
/// position order. Reference checker, O(n⁴); exists to validate the
/// sweeps, not to be fast.
pub fn is_sfs_ordering<W: WeightScalar>(
    a: &SimilarityMatrix<W>,
    sigma: &LinearOrder,
) -> std::result::Result<(), (u32, u32, u32)> {
    let n = a.n();
    let rows: Vec<Vec<W>> = (0..n as u32).map(|v| a.dense_row(v)).collect();
    for i in 0..n {
        let x = sigma.at(i);
        for j in i + 1..n {
            let y = sigma.at(j);
            for k in j + 1..n {
                let z = sigma.at(k);
                if rows[x as usize][z as usize] <= rows[x as usize][y as usize] {
                    continue;
                }
                let fixed = (0..i).any(|l| {
                    let u = sigma.at(l) as usize;
                    rows[u][y as usize] > rows[u][z as usize]
                });
                if !fixed {
                    return Err((x, y, z));
                }
            }
        }
    }
    Ok(())
}
