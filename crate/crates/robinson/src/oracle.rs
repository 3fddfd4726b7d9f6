//! Definitional and brute-force oracles.
//!
//! Everything here evaluates a definition or enumerates exhaustively:
//! paths avoiding a vertex, valid vertices, anchors, similarity layers,
//! exhaustive Robinson-ordering search and the cubic triple scan. None
//! of it is fast — these functions exist so the fast algorithms have
//! something independent to be tested against.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::matrix::SimilarityMatrix;
use crate::sfs::LinearOrder;
use crate::WeightScalar;

/// Upper bound for the exhaustive searches.
pub const BRUTE_FORCE_LIMIT: usize = 9;

/// n above which [`is_anchor`] stops cross-checking against brute force.
const ANCHOR_CROSS_CHECK_LIMIT: usize = 7;

/// The triple (x, y, z), read in that order, is Robinson when
/// A_xz ≤ min(A_xy, A_yz).
pub fn is_robinson_triple<W: WeightScalar>(a: &SimilarityMatrix<W>, x: u32, y: u32, z: u32) -> bool {
    a.weight(x, z) <= a.weight(x, y).min(a.weight(y, z))
}

/// Graph on V∖{y} with an edge (u, v) exactly when the triple (u, y, v)
/// is not Robinson, i.e. A_uv > min(A_yu, A_yv). A path from x to z in
/// this graph is precisely a "path from x to z avoiding y": y can never
/// sit between x and z in a Robinson ordering.
pub struct AvoidGraph {
    y: u32,
    adj: Vec<Vec<u32>>,
}

impl AvoidGraph {
    pub fn new<W: WeightScalar>(a: &SimilarityMatrix<W>, y: u32) -> Self {
        let n = a.n();
        let mut adj = vec![Vec::new(); n];
        for u in 0..n as u32 {
            if u == y {
                continue;
            }
            for v in u + 1..n as u32 {
                if v == y {
                    continue;
                }
                if a.weight(u, v) > a.weight(y, u).min(a.weight(y, v)) {
                    adj[u as usize].push(v);
                    adj[v as usize].push(u);
                }
            }
        }
        AvoidGraph { y, adj }
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].contains(&v)
    }

    /// All vertices reachable from x (x included). Allowing repeated
    /// vertices in the defining walks changes nothing: reachability is
    /// reachability.
    pub fn reachable_from(&self, x: u32) -> Vec<bool> {
        debug_assert_ne!(x, self.y);
        let mut seen = vec![false; self.adj.len()];
        seen[x as usize] = true;
        let mut queue = VecDeque::from([x]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u as usize] {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }
}

/// Is there a path from x to z avoiding y?
pub fn has_path_avoiding<W: WeightScalar>(
    a: &SimilarityMatrix<W>,
    x: u32,
    z: u32,
    y: u32,
) -> bool {
    assert!(x != z && x != y && z != y, "vertices must be distinct");
    AvoidGraph::new(a, y).reachable_from(x)[z as usize]
}

/// A vertex z is valid when no pair u ≠ v admits both a path u → z
/// avoiding v and a path v → z avoiding u. For Robinsonian matrices the
/// valid vertices are exactly the anchors.
pub fn is_valid_vertex<W: WeightScalar>(a: &SimilarityMatrix<W>, z: u32) -> bool {
    let n = a.n();
    // reach[v][u] = path from u to z avoiding v (graph is undirected, so
    // one traversal from z per avoided vertex covers all sources)
    let mut reach: Vec<Option<Vec<bool>>> = vec![None; n];
    for v in 0..n as u32 {
        if v != z {
            reach[v as usize] = Some(AvoidGraph::new(a, v).reachable_from(z));
        }
    }
    for u in 0..n as u32 {
        if u == z {
            continue;
        }
        for v in u + 1..n as u32 {
            if v == z {
                continue;
            }
            let u_to_z = reach[v as usize].as_ref().unwrap()[u as usize];
            let v_to_z = reach[u as usize].as_ref().unwrap()[v as usize];
            if u_to_z && v_to_z {
                return false;
            }
        }
    }
    true
}

/// Anchor test for a Robinsonian matrix: z is an anchor (endpoint of
/// some Robinson ordering) iff it is valid. At n ≤ 7 the answer is
/// cross-checked against exhaustive search, and a matrix with no
/// Robinson ordering at all is reported as an error since "anchor" is
/// then undefined.
pub fn is_anchor<W: WeightScalar>(a: &SimilarityMatrix<W>, z: u32) -> Result<bool> {
    let valid = is_valid_vertex(a, z);
    if a.n() <= ANCHOR_CROSS_CHECK_LIMIT {
        match robinson_endpoints(a)? {
            None => return Err(Error::NotRobinsonian),
            Some(ends) => {
                assert_eq!(
                    ends[z as usize], valid,
                    "validity and brute-force anchor status disagree for vertex {z}"
                );
            }
        }
    }
    Ok(valid)
}

/// z1 and z2 are opposite anchors (the two ends of one Robinson
/// ordering) iff both are valid and no third vertex x admits a path
/// z1 → z2 avoiding x.
pub fn are_opposite_anchors<W: WeightScalar>(a: &SimilarityMatrix<W>, z1: u32, z2: u32) -> bool {
    assert_ne!(z1, z2);
    if !is_valid_vertex(a, z1) || !is_valid_vertex(a, z2) {
        return false;
    }
    (0..a.n() as u32)
        .filter(|&x| x != z1 && x != z2)
        .all(|x| !has_path_avoiding(a, z1, z2, x))
}

/// The similarity layer structure rooted at `root`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerStructure {
    pub root: u32,
    /// L₀ = {root}, then each L_i per the recursive definition, stopping
    /// at the first empty layer. Layers are sorted by vertex id.
    pub layers: Vec<Vec<u32>>,
    /// Vertices in no layer. Empty whenever the matrix is Robinsonian
    /// and the root is an anchor; nonempty leftovers are legitimate for
    /// other roots and are reported rather than rejected.
    pub leftover: Vec<u32>,
}

/// Direct evaluation of the layer recursion: L_i collects the y outside
/// U = L₀∪…∪L_{i−1} with A_xy ≥ A_xz for all x ∈ U and all z outside
/// U ∪ {y}.
pub fn similarity_layers<W: WeightScalar>(a: &SimilarityMatrix<W>, root: u32) -> LayerStructure {
    let n = a.n();
    let mut in_u = vec![false; n];
    in_u[root as usize] = true;
    let mut layers = vec![vec![root]];
    loop {
        let outside: Vec<u32> = (0..n as u32).filter(|&v| !in_u[v as usize]).collect();
        if outside.is_empty() {
            break;
        }
        let mut next = Vec::new();
        'cand: for &y in &outside {
            for x in (0..n as u32).filter(|&x| in_u[x as usize]) {
                for &z in &outside {
                    if z != y && a.weight(x, y) < a.weight(x, z) {
                        continue 'cand;
                    }
                }
            }
            next.push(y);
        }
        if next.is_empty() {
            return LayerStructure { root, layers, leftover: outside };
        }
        for &y in &next {
            in_u[y as usize] = true;
        }
        layers.push(next);
    }
    LayerStructure { root, layers, leftover: Vec::new() }
}

/// Lexicographically first (by positions in π) triple violating the
/// Robinson condition under π, or None. The O(n³) reference scan.
pub fn verify_robinson_cubic<W: WeightScalar>(
    a: &SimilarityMatrix<W>,
    pi: &LinearOrder,
) -> Option<(u32, u32, u32)> {
    let n = a.n();
    for i in 0..n {
        let x = pi.at(i);
        for j in i + 1..n {
            let y = pi.at(j);
            for k in j + 1..n {
                let z = pi.at(k);
                if !is_robinson_triple(a, x, y, z) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

fn prefix_still_robinson<W: WeightScalar>(a: &SimilarityMatrix<W>, prefix: &[u32]) -> bool {
    let k = prefix.len() - 1;
    let z = prefix[k];
    for i in 0..k {
        for j in i + 1..k {
            if !is_robinson_triple(a, prefix[i], prefix[j], z) {
                return false;
            }
        }
    }
    true
}

/// Exhaustive search for a Robinson ordering; the first one in
/// lexicographic order whose first vertex is smaller than its last.
/// Prefixes are extended only while they violate no triple.
pub fn brute_force_robinsonian<W: WeightScalar>(
    a: &SimilarityMatrix<W>,
) -> Result<Option<LinearOrder>> {
    let n = a.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::SizeLimit { n, limit: BRUTE_FORCE_LIMIT });
    }
    fn extend<W: WeightScalar>(
        a: &SimilarityMatrix<W>,
        prefix: &mut Vec<u32>,
        used: &mut [bool],
    ) -> bool {
        let n = a.n();
        if prefix.len() == n {
            return n < 2 || prefix[0] < prefix[n - 1];
        }
        for v in 0..n as u32 {
            if used[v as usize] {
                continue;
            }
            prefix.push(v);
            used[v as usize] = true;
            if prefix_still_robinson(a, prefix) && extend(a, prefix, used) {
                return true;
            }
            prefix.pop();
            used[v as usize] = false;
        }
        false
    }
    let mut prefix = Vec::with_capacity(n);
    let mut used = vec![false; n];
    if extend(a, &mut prefix, &mut used) {
        Ok(Some(LinearOrder::from_seq(prefix).expect("search emits a permutation")))
    } else {
        Ok(None)
    }
}

/// Endpoint map from exhaustive search: `Some(ends)` with `ends[v]` true
/// iff some Robinson ordering starts or finishes at v, `None` when the
/// matrix is not Robinsonian.
pub fn robinson_endpoints<W: WeightScalar>(a: &SimilarityMatrix<W>) -> Result<Option<Vec<bool>>> {
    let n = a.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::SizeLimit { n, limit: BRUTE_FORCE_LIMIT });
    }
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let mut ends = vec![false; n];
    let mut any = false;
    fn walk<W: WeightScalar>(
        a: &SimilarityMatrix<W>,
        prefix: &mut Vec<u32>,
        used: &mut [bool],
        ends: &mut [bool],
        any: &mut bool,
    ) {
        let n = a.n();
        if prefix.len() == n {
            *any = true;
            ends[prefix[0] as usize] = true;
            ends[prefix[n - 1] as usize] = true;
            return;
        }
        for v in 0..n as u32 {
            if used[v as usize] {
                continue;
            }
            prefix.push(v);
            used[v as usize] = true;
            if prefix_still_robinson(a, prefix) {
                walk(a, prefix, used, ends, any);
            }
            prefix.pop();
            used[v as usize] = false;
        }
    }
    let mut prefix = Vec::with_capacity(n);
    let mut used = vec![false; n];
    walk(a, &mut prefix, &mut used, &mut ends, &mut any);
    Ok(if any { Some(ends) } else { None })
}

/// Every ordering any tie-breaking of the SFS algorithm can produce:
/// recursion over the queue states, branching on each member of the
/// first class as the next pivot. Exhaustive test utility.
pub fn all_sfs_orderings<W: WeightScalar>(a: &SimilarityMatrix<W>) -> Result<Vec<Vec<u32>>> {
    let n = a.n();
    if n > ANCHOR_CROSS_CHECK_LIMIT {
        return Err(Error::SizeLimit { n, limit: ANCHOR_CROSS_CHECK_LIMIT });
    }
    fn refine_simple<W: WeightScalar>(
        a: &SimilarityMatrix<W>,
        classes: &[Vec<u32>],
        p: u32,
    ) -> Vec<Vec<u32>> {
        // similarity partition of p over the queue contents
        let mut nbrs: Vec<(W, u32)> = Vec::new();
        for class in classes {
            for &v in class {
                let w = a.weight(p, v);
                if w > W::zero() {
                    nbrs.push((w, v));
                }
            }
        }
        nbrs.sort_by(|l, r| r.0.cmp(&l.0));
        let mut groups: Vec<(W, Vec<u32>)> = Vec::new();
        for (w, v) in nbrs {
            match groups.last_mut() {
                Some((lw, vs)) if *lw == w => vs.push(v),
                _ => groups.push((w, vec![v])),
            }
        }
        let mut out = Vec::new();
        for class in classes {
            let mut rest: Vec<u32> = class.clone();
            for (_, g) in &groups {
                let piece: Vec<u32> = class.iter().copied().filter(|v| g.contains(v)).collect();
                if !piece.is_empty() {
                    rest.retain(|v| !piece.contains(v));
                    out.push(piece);
                }
            }
            if !rest.is_empty() {
                out.push(rest);
            }
        }
        out
    }
    fn recurse<W: WeightScalar>(
        a: &SimilarityMatrix<W>,
        classes: &[Vec<u32>],
        prefix: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if classes.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for &p in &classes[0] {
            let mut popped: Vec<Vec<u32>> = classes.to_vec();
            popped[0].retain(|&v| v != p);
            if popped[0].is_empty() {
                popped.remove(0);
            }
            let next = refine_simple(a, &popped, p);
            prefix.push(p);
            recurse(a, &next, prefix, out);
            prefix.pop();
        }
    }
    if n == 0 {
        return Ok(vec![Vec::new()]);
    }
    let mut out = Vec::new();
    recurse(a, &[(0..n as u32).collect()], &mut Vec::new(), &mut out);
    out.sort();
    out.dedup();
    Ok(out)
}
