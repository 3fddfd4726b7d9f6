//! Storage, I/O and preprocessing of symmetric nonnegative matrices
//! viewed as weighted graphs.
//!
//! A matrix is stored as per-vertex adjacency lists holding only the
//! strictly positive off-diagonal entries; the diagonal plays no role and
//! is discarded on load. Real-valued input is quantized to scaled 64-bit
//! integers so that every equality test inside the algorithms is exact.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::WeightScalar;

/// Sparse symmetric nonnegative matrix / weighted graph.
///
/// Invariants: entries are symmetric, strictly positive, off-diagonal;
/// each adjacency list is sorted by neighbor id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimilarityMatrix<W> {
    n: usize,
    adj: Vec<Vec<(u32, W)>>,
    m: usize,
}

impl<W: WeightScalar> SimilarityMatrix<W> {
    /// Builds a matrix from symmetric pairs given once (either triangle).
    /// Zero weights are dropped, duplicates and self-pairs rejected.
    pub fn from_weighted_edges(
        n: usize,
        edges: impl IntoIterator<Item = (u32, u32, W)>,
    ) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        let mut m = 0;
        let mut seen = BTreeMap::new();
        for (x, y, w) in edges {
            let (x, y) = (x.min(y), x.max(y));
            if x == y {
                return Err(Error::DuplicateEntry { x, y });
            }
            assert!((y as usize) < n, "vertex {y} out of range for n={n}");
            if seen.insert((x, y), ()).is_some() {
                return Err(Error::DuplicateEntry { x, y });
            }
            if w < W::zero() {
                return Err(Error::Generator(format!(
                    "negative weight {w:?} for pair ({x}, {y})"
                )));
            }
            if w.is_zero() {
                continue;
            }
            adj[x as usize].push((y, w));
            adj[y as usize].push((x, w));
            m += 1;
        }
        for list in &mut adj {
            list.sort_unstable_by_key(|&(v, _)| v);
        }
        Ok(SimilarityMatrix { n, adj, m })
    }

    /// Builds from a dense table of off-diagonal weights, `weight(x, y)`
    /// queried for x < y.
    pub fn from_dense_fn(n: usize, mut weight: impl FnMut(usize, usize) -> W) -> Self {
        let mut edges = Vec::new();
        for x in 0..n {
            for y in x + 1..n {
                edges.push((x as u32, y as u32, weight(x, y)));
            }
        }
        Self::from_weighted_edges(n, edges).expect("dense table has no duplicate pairs")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of stored symmetric nonzero pairs.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, x: u32) -> &[(u32, W)] {
        &self.adj[x as usize]
    }

    pub fn degree(&self, x: u32) -> usize {
        self.adj[x as usize].len()
    }

    /// Entry A_xy; zero for non-edges and on the diagonal.
    pub fn weight(&self, x: u32, y: u32) -> W {
        if x == y {
            return W::zero();
        }
        match self.adj[x as usize].binary_search_by_key(&y, |&(v, _)| v) {
            Ok(i) => self.adj[x as usize][i].1,
            Err(_) => W::zero(),
        }
    }

    /// Dense row of vertex x (diagonal slot left at zero).
    pub fn dense_row(&self, x: u32) -> Vec<W> {
        let mut row = vec![W::zero(); self.n];
        for &(v, w) in self.neighbors(x) {
            row[v as usize] = w;
        }
        row
    }

    /// The distinct positive values taken by the entries.
    pub fn distinct_positive_values(&self) -> Vec<W> {
        let mut vals: Vec<W> = self.adj.iter().flatten().map(|&(_, w)| w).collect();
        vals.sort_unstable();
        vals.dedup();
        vals
    }

    /// Components of the positive-weight support graph, ordered by their
    /// smallest vertex id.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out: Vec<Vec<u32>> = Vec::new();
        let mut stack = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[s] = id;
            out.push(vec![s as u32]);
            stack.push(s as u32);
            while let Some(u) = stack.pop() {
                for &(v, _) in self.neighbors(u) {
                    if comp[v as usize] == usize::MAX {
                        comp[v as usize] = id;
                        out[id].push(v);
                        stack.push(v);
                    }
                }
            }
        }
        out.into_iter()
            .map(|mut vs| {
                vs.sort_unstable();
                VertexSet::from_sorted(self.n, vs)
            })
            .collect()
    }

    /// Principal submatrix A[S], re-indexed; `back[i]` is the original id
    /// of local vertex i.
    pub fn restrict(&self, s: &VertexSet) -> (SimilarityMatrix<W>, Vec<u32>) {
        let back = s.elements().to_vec();
        let mut local = vec![u32::MAX; self.n];
        for (i, &v) in back.iter().enumerate() {
            local[v as usize] = i as u32;
        }
        let mut edges = Vec::new();
        for &v in &back {
            for &(u, w) in self.neighbors(v) {
                if u > v && s.contains(u) {
                    edges.push((local[v as usize], local[u as usize], w));
                }
            }
        }
        let mat = SimilarityMatrix::from_weighted_edges(back.len(), edges)
            .expect("restriction preserves pair uniqueness");
        (mat, back)
    }
}

impl<W: WeightScalar + std::fmt::Display> SimilarityMatrix<W> {
    /// Serializes as Matrix Market coordinate integer symmetric, one
    /// lower-triangle entry per pair, 1-based indices. Loading the output
    /// back with scale 1 reproduces the matrix exactly.
    pub fn to_matrix_market(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "%%MatrixMarket matrix coordinate integer symmetric");
        let _ = writeln!(s, "{} {} {}", self.n, self.n, self.m);
        for x in 0..self.n as u32 {
            for &(y, w) in self.neighbors(x) {
                if y < x {
                    let _ = writeln!(s, "{} {} {}", x + 1, y + 1, w);
                }
            }
        }
        s
    }
}

/// Subset of [n] with O(1) membership and an ascending element list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    bits: Vec<bool>,
    elems: Vec<u32>,
}

impl VertexSet {
    pub fn from_sorted(n: usize, elems: Vec<u32>) -> Self {
        debug_assert!(elems.windows(2).all(|w| w[0] < w[1]));
        let mut bits = vec![false; n];
        for &v in &elems {
            bits[v as usize] = true;
        }
        VertexSet { bits, elems }
    }

    pub fn full(n: usize) -> Self {
        Self::from_sorted(n, (0..n as u32).collect())
    }

    pub fn contains(&self, v: u32) -> bool {
        self.bits[v as usize]
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[u32] {
        &self.elems
    }
}

/// Symmetric real entries prior to quantization: one record per
/// unordered off-diagonal pair. Intermediate form shared by the loaders.
#[derive(Debug, Clone)]
pub struct RawMatrix {
    pub n: usize,
    /// (x, y, value) with x < y, at most one record per pair; absent
    /// pairs are implicit zeros.
    pub entries: Vec<(u32, u32, f64)>,
}

impl RawMatrix {
    /// Smallest off-diagonal value, counting implicit zeros.
    pub fn min_off_diagonal(&self) -> f64 {
        let total = self.n * (self.n - 1) / 2;
        let mut min = if self.entries.len() < total { 0.0 } else { f64::INFINITY };
        for &(_, _, v) in &self.entries {
            min = min.min(v);
        }
        if min.is_infinite() {
            0.0
        } else {
            min
        }
    }

    /// Shifts every off-diagonal entry by λ = −min so the minimum becomes
    /// zero. Implicit zeros shift too, so a sparse matrix with negative
    /// entries densifies. Returns λ. Recognition is invariant under this.
    pub fn shift_nonnegative(&mut self) -> f64 {
        let min = self.min_off_diagonal();
        if min >= 0.0 {
            return 0.0;
        }
        let lambda = -min;
        let mut present = vec![false; self.n * self.n];
        for e in &mut self.entries {
            present[e.0 as usize * self.n + e.1 as usize] = true;
            e.2 += lambda;
        }
        for x in 0..self.n as u32 {
            for y in x + 1..self.n as u32 {
                if !present[x as usize * self.n + y as usize] {
                    self.entries.push((x, y, lambda));
                }
            }
        }
        lambda
    }

    /// Rounds each entry to `value * scale` as i64 and builds the matrix.
    pub fn quantize(&self, scale: i64) -> Result<SimilarityMatrix<i64>> {
        let edges: Vec<(u32, u32, i64)> = self
            .entries
            .iter()
            .map(|&(x, y, v)| Ok((x, y, quantize_value(v, scale, x, y)?)))
            .collect::<Result<_>>()?;
        SimilarityMatrix::from_weighted_edges(self.n, edges)
    }
}

fn quantize_value(v: f64, scale: i64, x: u32, y: u32) -> Result<i64> {
    let q = (v * scale as f64).round();
    if !q.is_finite() || q.abs() >= (i64::MAX / 4) as f64 {
        return Err(Error::Parse {
            line: 0,
            msg: format!("entry {v} at ({}, {}) overflows the quantization range", x + 1, y + 1),
        });
    }
    if q < 0.0 {
        return Err(Error::NegativeEntry { x, y, value: v });
    }
    Ok(q as i64)
}

/// Quantization scale and normalization flags used by the loaders.
#[derive(Debug, Clone, Copy)]
pub struct LoadOptions {
    /// Multiplier applied before rounding to i64. Default 10^6.
    pub scale: i64,
    /// Shift entries so the minimum off-diagonal value becomes 0 instead
    /// of rejecting negative input.
    pub shift: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions { scale: 1_000_000, shift: false }
    }
}

impl LoadOptions {
    pub fn finish(&self, mut raw: RawMatrix) -> Result<SimilarityMatrix<i64>> {
        if self.shift {
            raw.shift_nonnegative();
        }
        raw.quantize(self.scale)
    }
}

/// Parses Matrix Market coordinate format (`real`, `integer` or
/// `pattern`; `symmetric` or `general` with matched pairs), 1-based
/// indices, diagonal discarded.
pub fn load_matrix_market(bytes: &[u8], opts: &LoadOptions) -> Result<SimilarityMatrix<i64>> {
    let text = std::str::from_utf8(bytes).map_err(|_| Error::Parse {
        line: 1,
        msg: "input is not valid UTF-8".into(),
    })?;
    let mut lines = text.lines().enumerate();

    let (_, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 5
        || !fields[0].eq_ignore_ascii_case("%%MatrixMarket")
        || !fields[1].eq_ignore_ascii_case("matrix")
        || !fields[2].eq_ignore_ascii_case("coordinate")
    {
        return Err(Error::Parse {
            line: 1,
            msg: "expected '%%MatrixMarket matrix coordinate <field> <symmetry>'".into(),
        });
    }
    let field = fields[3].to_ascii_lowercase();
    if !matches!(field.as_str(), "real" | "integer" | "pattern") {
        return Err(Error::Parse { line: 1, msg: format!("unsupported field '{}'", fields[3]) });
    }
    let symmetry = fields[4].to_ascii_lowercase();
    let symmetric = match symmetry.as_str() {
        "symmetric" => true,
        "general" => false,
        other => {
            return Err(Error::Parse { line: 1, msg: format!("unsupported symmetry '{other}'") })
        }
    };

    let mut size: Option<(usize, usize)> = None;
    // pair -> (value, quantized value for the mismatch check, directions seen)
    let mut pairs: BTreeMap<(u32, u32), (f64, u8)> = BTreeMap::new();
    let mut nnz_declared = 0usize;
    let mut nnz_read = 0usize;

    for (idx, line) in lines {
        let lineno = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if size.is_none() {
            if toks.len() != 3 {
                return Err(Error::Parse { line: lineno, msg: "expected 'rows cols nnz'".into() });
            }
            let rows: usize = parse_tok(toks[0], lineno)?;
            let cols: usize = parse_tok(toks[1], lineno)?;
            nnz_declared = parse_tok(toks[2], lineno)?;
            if rows != cols {
                return Err(Error::Parse { line: lineno, msg: "matrix must be square".into() });
            }
            size = Some((rows, cols));
            continue;
        }
        let expected = if field == "pattern" { 2 } else { 3 };
        if toks.len() != expected {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("expected {expected} tokens, found {}", toks.len()),
            });
        }
        let i: usize = parse_tok(toks[0], lineno)?;
        let j: usize = parse_tok(toks[1], lineno)?;
        let v: f64 = if field == "pattern" { 1.0 } else { parse_tok(toks[2], lineno)? };
        let n = size.unwrap().0;
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::Parse { line: lineno, msg: format!("index ({i}, {j}) out of range") });
        }
        nnz_read += 1;
        if i == j {
            continue; // diagonal plays no role
        }
        let (x, y) = ((i - 1) as u32, (j - 1) as u32);
        let dir = if x < y { 1u8 } else { 2u8 };
        let key = (x.min(y), x.max(y));
        match pairs.get_mut(&key) {
            None => {
                pairs.insert(key, (v, dir));
            }
            Some((prev, dirs)) => {
                if symmetric || *dirs & dir != 0 {
                    return Err(Error::DuplicateEntry { x: key.0 + 1, y: key.1 + 1 });
                }
                let q = |t: f64| (t * opts.scale as f64).round();
                if q(*prev) != q(v) {
                    return Err(Error::Asymmetry { x: key.0 + 1, y: key.1 + 1 });
                }
                *dirs |= dir;
            }
        }
    }
    let (n, _) = size.ok_or(Error::Parse { line: 0, msg: "missing size line".into() })?;
    if nnz_read != nnz_declared {
        return Err(Error::Parse {
            line: 0,
            msg: format!("declared {nnz_declared} entries, found {nnz_read}"),
        });
    }
    if !symmetric {
        if let Some(((x, y), _)) = pairs.iter().find(|(_, (_, dirs))| *dirs != 3) {
            return Err(Error::Asymmetry { x: *x + 1, y: *y + 1 });
        }
    }
    let entries = pairs.into_iter().map(|((x, y), (v, _))| (x, y, v)).collect();
    opts.finish(RawMatrix { n, entries })
}

/// Parses a dense CSV: n lines of n comma-separated numbers. The matrix
/// must be symmetric after quantization; the diagonal is ignored.
pub fn load_dense_csv(bytes: &[u8], opts: &LoadOptions) -> Result<SimilarityMatrix<i64>> {
    let text = std::str::from_utf8(bytes).map_err(|_| Error::Parse {
        line: 1,
        msg: "input is not valid UTF-8".into(),
    })?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row: Vec<f64> = line
            .split(',')
            .map(|t| parse_tok(t.trim(), idx + 1))
            .collect::<Result<_>>()?;
        rows.push(row);
    }
    let n = rows.len();
    for (idx, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Parse {
                line: idx + 1,
                msg: format!("ragged row: {} values in a {n}x{n} matrix", row.len()),
            });
        }
    }
    let q = |t: f64| (t * opts.scale as f64).round();
    let mut entries = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if q(rows[x][y]) != q(rows[y][x]) {
                return Err(Error::Asymmetry { x: x as u32 + 1, y: y as u32 + 1 });
            }
            entries.push((x as u32, y as u32, rows[x][y]));
        }
    }
    opts.finish(RawMatrix { n, entries })
}

fn parse_tok<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T> {
    tok.parse().map_err(|_| Error::Parse { line, msg: format!("cannot parse '{tok}'") })
}

/// Symmetric nonnegative dissimilarity matrix. Same sparse storage as
/// [`SimilarityMatrix`], but a zero entry means "identical" (the most
/// similar pair) rather than "unrelated".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DissimilarityMatrixOf<W> {
    mat: SimilarityMatrix<W>,
}

impl<W: WeightScalar> DissimilarityMatrixOf<W> {
    pub fn new(mat: SimilarityMatrix<W>) -> Self {
        DissimilarityMatrixOf { mat }
    }

    pub fn n(&self) -> usize {
        self.mat.n()
    }

    pub fn dissimilarity(&self, x: u32, y: u32) -> W {
        self.mat.weight(x, y)
    }

    pub fn neighbors(&self, x: u32) -> &[(u32, W)] {
        self.mat.neighbors(x)
    }

    pub fn max_dissimilarity(&self) -> W {
        self.mat
            .adj
            .iter()
            .flatten()
            .map(|&(_, w)| w)
            .max()
            .unwrap_or_else(W::zero)
    }

    pub fn as_storage(&self) -> &SimilarityMatrix<W> {
        &self.mat
    }
}

/// Complements a dissimilarity into a similarity: A_xy = D_max − D_xy
/// off-diagonal. D is a Robinsonian dissimilarity iff the result is a
/// Robinsonian similarity. The result is dense wherever D is small, which
/// is inherent to the transform.
pub fn from_dissimilarity<W>(d: &DissimilarityMatrixOf<W>) -> SimilarityMatrix<W>
where
    W: WeightScalar + std::ops::Sub<Output = W>,
{
    let dmax = d.max_dissimilarity();
    SimilarityMatrix::from_dense_fn(d.n(), |x, y| dmax - d.dissimilarity(x as u32, y as u32))
}
