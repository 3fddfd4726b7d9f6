//! The multisweep recognition driver and the linear-time Robinson
//! verifier.
//!
//! Recognition runs per connected component: an initial SFS sweep, then
//! plus-sweeps each seeded by the previous one. After at most n−1 sweeps
//! the last order is Robinson iff the matrix is Robinsonian, so a single
//! verification decides. Two early exits cut the loop short: a sweep
//! equal to the reversal of its predecessor, or equal to the sweep two
//! steps back — in both cases the current order already decides and is
//! verified immediately.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{DissimilarityMatrixOf, SimilarityMatrix};
use crate::oracle::verify_robinson_cubic;
use crate::sfs::{disfs, disfs_plus, sfs, sfs_plus, LinearOrder};
use crate::WeightScalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Robinsonian,
    NotRobinsonian,
}

/// Violating triple of the final sweep, 1-based original vertex ids,
/// with the three entries: a_xz > min(a_xy, a_yz).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate<W> {
    pub x: u32,
    pub y: u32,
    pub z: u32,
    pub a_xy: W,
    pub a_yz: W,
    pub a_xz: W,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComponentReport<W> {
    /// 1-based original ids, ascending.
    pub vertices: Vec<u32>,
    pub status: Status,
    /// Sweeps run on this component, the initial one included.
    pub sweeps_used: usize,
    /// Robinson ordering of the component (1-based original ids).
    pub order: Option<Vec<u32>>,
    pub certificate: Option<Certificate<W>>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Timings {
    pub total_ms: f64,
    /// One entry per sweep, in execution order across components.
    pub sweep_ms: Vec<f64>,
    pub verify_ms: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RecognitionReport<W> {
    pub status: Status,
    /// Concatenated component orderings when Robinsonian, 1-based.
    pub order: Option<Vec<u32>>,
    /// Maximum over the components.
    pub sweeps_used: usize,
    pub certificate: Option<Certificate<W>>,
    pub components: Vec<ComponentReport<W>>,
    pub timings: Timings,
}

#[derive(Debug, Clone, Default)]
pub struct RecognizeOptions {
    /// Use this order as the initial sweep σ₀ instead of computing one.
    /// The caller asserts it is an SFS ordering (the adversarial family
    /// needs a specific σ₀ to exhibit its sweep count). With several
    /// components, its restriction to each component is that
    /// component's σ₀.
    pub sigma0: Option<LinearOrder>,
    /// Disable the two early exits (they never change the status, only
    /// the sweep count).
    pub no_early_exit: bool,
}

fn is_reversal(a: &LinearOrder, b: &LinearOrder) -> bool {
    a.seq().iter().eq(b.seq().iter().rev())
}

/// O(n+m) Robinson check: bucket each adjacency list by π-position, then
/// per vertex the right-hand neighbors must sit in consecutive positions
/// starting right next to it with nonincreasing weights outward, and
/// symmetrically on the left. With zero non-edges this is equivalent to
/// the triple condition: row monotonicity gives A_xz ≤ A_xy, column
/// monotonicity gives A_xz ≤ A_yz.
fn fast_robinson_holds<W: WeightScalar>(a: &SimilarityMatrix<W>, pi: &LinearOrder) -> bool {
    let n = a.n();
    let mut by_pos: Vec<Vec<(u32, W)>> = vec![Vec::new(); n];
    for j in 0..n {
        let y = pi.at(j);
        for &(v, w) in a.neighbors(y) {
            by_pos[v as usize].push((j as u32, w));
        }
    }
    for x in 0..n {
        let i = pi.pos(x as u32);
        let list = &by_pos[x];
        let split = list.partition_point(|&(p, _)| (p as usize) < i);
        let (left, right) = (&list[..split], &list[split..]);
        for (t, &(p, w)) in right.iter().enumerate() {
            if p as usize != i + 1 + t || (t > 0 && w > right[t - 1].1) {
                return false;
            }
        }
        for (t, &(p, w)) in left.iter().enumerate() {
            if p as usize != i - left.len() + t || (t > 0 && w < left[t - 1].1) {
                return false;
            }
        }
    }
    true
}

/// Does A, read in the order π, satisfy the Robinson condition? On
/// failure returns the position-lexicographically first violating
/// triple. The check itself is linear; the witness search only runs on
/// failure.
pub fn verify_robinson<W: WeightScalar>(
    a: &SimilarityMatrix<W>,
    pi: &LinearOrder,
) -> std::result::Result<(), (u32, u32, u32)> {
    assert_eq!(pi.len(), a.n(), "order size mismatch");
    if fast_robinson_holds(a, pi) {
        Ok(())
    } else {
        match verify_robinson_cubic(a, pi) {
            Some(witness) => Err(witness),
            None => unreachable!("fast and cubic Robinson verifiers disagree"),
        }
    }
}

struct ComponentOutcome {
    status: Status,
    sweeps_used: usize,
    order: LinearOrder,
    witness: Option<(u32, u32, u32)>,
    sweep_ms: Vec<f64>,
    verify_ms: f64,
}

fn run_multisweep<W: WeightScalar>(
    a: &SimilarityMatrix<W>,
    sigma0: Option<LinearOrder>,
    no_early_exit: bool,
    dissimilarity: bool,
) -> ComponentOutcome {
    let c = a.n();
    let d_view = dissimilarity.then(|| DissimilarityMatrixOf::new(a.clone()));
    let sweep_once = |prev: &LinearOrder, plus: bool| match &d_view {
        Some(d) => {
            if plus {
                disfs_plus(d, prev)
            } else {
                disfs(d, prev)
            }
        }
        None => {
            if plus {
                sfs_plus(a, prev)
            } else {
                sfs(a, prev)
            }
        }
    };
    let verify = |pi: &LinearOrder| {
        if dissimilarity {
            verify_robinson_dissimilarity_raw(a, pi)
        } else {
            verify_robinson(a, pi)
        }
    };

    if c <= 2 {
        let order = sigma0.unwrap_or_else(|| LinearOrder::identity(c));
        return ComponentOutcome {
            status: Status::Robinsonian,
            sweeps_used: 0,
            order,
            witness: None,
            sweep_ms: Vec::new(),
            verify_ms: 0.0,
        };
    }

    let mut sweep_ms = Vec::new();
    let mut sweeps_used = 1;
    let mut prev2: Option<LinearOrder> = None;
    let mut prev = match sigma0 {
        Some(s) => s,
        None => {
            let t = Instant::now();
            let s = sweep_once(&LinearOrder::identity(c), false);
            sweep_ms.push(t.elapsed().as_secs_f64() * 1e3);
            s
        }
    };
    for _ in 1..=c - 2 {
        let t = Instant::now();
        let cur = sweep_once(&prev, true);
        sweep_ms.push(t.elapsed().as_secs_f64() * 1e3);
        sweeps_used += 1;
        let e1 = is_reversal(&cur, &prev);
        let e2 = prev2.as_ref() == Some(&cur);
        prev2 = Some(std::mem::replace(&mut prev, cur));
        if !no_early_exit && (e1 || e2) {
            break;
        }
    }
    let t = Instant::now();
    let witness = verify(&prev).err();
    let verify_ms = t.elapsed().as_secs_f64() * 1e3;
    ComponentOutcome {
        status: if witness.is_none() { Status::Robinsonian } else { Status::NotRobinsonian },
        sweeps_used,
        order: prev,
        witness,
        sweep_ms,
        verify_ms,
    }
}

fn certificate_for<W: WeightScalar>(
    a: &SimilarityMatrix<W>,
    back: &[u32],
    (x, y, z): (u32, u32, u32),
) -> Certificate<W> {
    Certificate {
        x: back[x as usize] + 1,
        y: back[y as usize] + 1,
        z: back[z as usize] + 1,
        a_xy: a.weight(x, y),
        a_yz: a.weight(y, z),
        a_xz: a.weight(x, z),
    }
}

/// Multisweep recognition (per connected component, concatenated).
pub fn recognize<W: WeightScalar>(
    a: &SimilarityMatrix<W>,
    opts: &RecognizeOptions,
) -> RecognitionReport<W> {
    let started = Instant::now();
    let mut components = Vec::new();
    let mut order: Vec<u32> = Vec::new();
    let mut status = Status::Robinsonian;
    let mut sweeps_used = 0;
    let mut certificate = None;
    let mut timings = Timings::default();

    for comp in a.connected_components() {
        let (sub, back) = a.restrict(&comp);
        let sigma0 = opts.sigma0.as_ref().map(|s| {
            let mut local: Vec<u32> = (0..back.len() as u32).collect();
            local.sort_by_key(|&i| s.pos(back[i as usize]));
            LinearOrder::from_seq(local).expect("restriction of a permutation")
        });
        let out = run_multisweep(&sub, sigma0, opts.no_early_exit, false);
        timings.sweep_ms.extend(out.sweep_ms);
        timings.verify_ms += out.verify_ms;
        sweeps_used = sweeps_used.max(out.sweeps_used);
        let comp_order: Vec<u32> = out.order.seq().iter().map(|&v| back[v as usize] + 1).collect();
        let comp_cert = out.witness.map(|w| certificate_for(&sub, &back, w));
        if out.status == Status::NotRobinsonian {
            status = Status::NotRobinsonian;
            if certificate.is_none() {
                certificate = comp_cert.clone();
            }
        } else {
            order.extend(&comp_order);
        }
        components.push(ComponentReport {
            vertices: back.iter().map(|&v| v + 1).collect(),
            status: out.status,
            sweeps_used: out.sweeps_used,
            order: (out.status == Status::Robinsonian).then_some(comp_order),
            certificate: comp_cert,
        });
    }
    timings.total_ms = started.elapsed().as_secs_f64() * 1e3;
    RecognitionReport {
        status,
        order: (status == Status::Robinsonian).then_some(order),
        sweeps_used,
        certificate,
        components,
        timings,
    }
}

/// 3-sweep decision for matrices whose positive entries all share one
/// value (adjacency matrices of graphs, up to scaling): σ₂ is Robinson
/// iff the graph is a unit interval graph.
pub fn recognize_binary_3sweep<W: WeightScalar>(
    a: &SimilarityMatrix<W>,
) -> Result<RecognitionReport<W>> {
    let distinct = a.distinct_positive_values().len();
    if distinct > 1 {
        return Err(Error::NotBinary { distinct });
    }
    let started = Instant::now();
    let n = a.n();
    let back: Vec<u32> = (0..n as u32).collect();
    let outcome = if n <= 2 {
        ComponentOutcome {
            status: Status::Robinsonian,
            sweeps_used: 0,
            order: LinearOrder::identity(n),
            witness: None,
            sweep_ms: Vec::new(),
            verify_ms: 0.0,
        }
    } else {
        let mut sweep_ms = Vec::new();
        let mut cur = LinearOrder::identity(n);
        for plus in [false, true, true] {
            let t = Instant::now();
            cur = if plus { sfs_plus(a, &cur) } else { sfs(a, &cur) };
            sweep_ms.push(t.elapsed().as_secs_f64() * 1e3);
        }
        let t = Instant::now();
        let witness = verify_robinson(a, &cur).err();
        ComponentOutcome {
            status: if witness.is_none() { Status::Robinsonian } else { Status::NotRobinsonian },
            sweeps_used: 3,
            order: cur,
            witness,
            sweep_ms,
            verify_ms: t.elapsed().as_secs_f64() * 1e3,
        }
    };
    Ok(report_from_single(a, outcome, &back, started))
}

fn report_from_single<W: WeightScalar>(
    a: &SimilarityMatrix<W>,
    out: ComponentOutcome,
    back: &[u32],
    started: Instant,
) -> RecognitionReport<W> {
    let order_1b: Vec<u32> = out.order.seq().iter().map(|&v| back[v as usize] + 1).collect();
    let certificate = out.witness.map(|w| certificate_for(a, back, w));
    let component = ComponentReport {
        vertices: back.iter().map(|&v| v + 1).collect(),
        status: out.status,
        sweeps_used: out.sweeps_used,
        order: (out.status == Status::Robinsonian).then_some(order_1b.clone()),
        certificate: certificate.clone(),
    };
    RecognitionReport {
        status: out.status,
        order: (out.status == Status::Robinsonian).then_some(order_1b),
        sweeps_used: out.sweeps_used,
        certificate,
        components: vec![component],
        timings: Timings {
            total_ms: started.elapsed().as_secs_f64() * 1e3,
            sweep_ms: out.sweep_ms,
            verify_ms: out.verify_ms,
        },
    }
}

fn verify_robinson_dissimilarity_raw<W: WeightScalar>(
    storage: &SimilarityMatrix<W>,
    pi: &LinearOrder,
) -> std::result::Result<(), (u32, u32, u32)> {
    let n = storage.n();
    let rows: Vec<Vec<W>> = (0..n as u32).map(|v| storage.dense_row(v)).collect();
    let d = |i: usize, k: usize| rows[pi.at(i) as usize][pi.at(k) as usize];
    // adjacent monotonicity: growing away from the diagonal along every
    // row and column implies the full triple condition
    for i in 0..n {
        for k in i + 2..n {
            if d(i, k) < d(i, k - 1) {
                return Err((pi.at(i), pi.at(k - 1), pi.at(k)));
            }
            if d(i, k) < d(i + 1, k) {
                return Err((pi.at(i), pi.at(i + 1), pi.at(k)));
            }
        }
    }
    Ok(())
}

/// Robinson condition for a dissimilarity: entries nondecreasing away
/// from the diagonal. On failure returns a triple with
/// D_xz < max(D_xy, D_yz). Dense O(n²) check.
pub fn verify_robinson_dissimilarity<W: WeightScalar>(
    d: &DissimilarityMatrixOf<W>,
    pi: &LinearOrder,
) -> std::result::Result<(), (u32, u32, u32)> {
    assert_eq!(pi.len(), d.n(), "order size mismatch");
    verify_robinson_dissimilarity_raw(d.as_storage(), pi)
}

/// Multisweep recognition of a Robinsonian dissimilarity, run with
/// DiSFS sweeps directly on D — no complement matrix is materialized.
/// A zero dissimilarity means "most similar", so zero pairs carry
/// information and the matrix is treated as one piece.
pub fn recognize_dissimilarity<W: WeightScalar>(
    d: &DissimilarityMatrixOf<W>,
    opts: &RecognizeOptions,
) -> RecognitionReport<W> {
    let started = Instant::now();
    let n = d.n();
    let back: Vec<u32> = (0..n as u32).collect();
    let out = run_multisweep(d.as_storage(), opts.sigma0.clone(), opts.no_early_exit, true);
    report_from_single(d.as_storage(), out, &back, started)
}
