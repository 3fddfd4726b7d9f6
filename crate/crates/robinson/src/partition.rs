//! The ordered-partition queue and the refinement primitive the sweeps
//! are built on.
//!
//! The queue holds the unvisited vertices as an ordered sequence of
//! disjoint classes. Both the class sequence and each class's vertex
//! sequence are doubly-linked lists backed by index arenas, so removing
//! a vertex, relocating it into another class and dropping an emptied
//! class are all O(1). Vertices inside a class always appear in the
//! fixed seed order; every operation below preserves that.

use std::fmt::Write as _;

use crate::matrix::SimilarityMatrix;
use crate::WeightScalar;

const NIL: u32 = u32::MAX;

#[derive(Debug, Clone, Copy)]
struct VertexNode {
    prev: u32,
    next: u32,
    class: u32, // NIL once visited
}

#[derive(Debug, Clone, Copy)]
struct ClassNode {
    head: u32,
    tail: u32,
    prev: u32,
    next: u32,
    size: u32,
    // split bookkeeping, valid while split_gen matches the current group
    split_gen: u32,
    split_to: u32,
}

/// Ordered partition of the unvisited set into nonempty classes.
#[derive(Debug, Clone)]
pub struct OrderedPartition {
    verts: Vec<VertexNode>,
    classes: Vec<ClassNode>,
    free_classes: Vec<u32>,
    first_class: u32,
    last_class: u32,
    num_classes: usize,
    len: usize,
    generation: u32,
    relocations: u64,
}

/// Where a fresh split-off class lands relative to the class it came
/// from: before it (similarity refinement) or after it (dissimilarity
/// refinement).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Placement {
    Before,
    After,
}

impl OrderedPartition {
    /// Single class containing all of `seed`, in that order.
    pub fn new(n: usize, seed: &[u32]) -> Self {
        assert_eq!(seed.len(), n);
        let mut p = OrderedPartition {
            verts: vec![VertexNode { prev: NIL, next: NIL, class: NIL }; n],
            classes: Vec::new(),
            free_classes: Vec::new(),
            first_class: NIL,
            last_class: NIL,
            num_classes: 0,
            len: n,
            generation: 0,
            relocations: 0,
        };
        if n == 0 {
            return p;
        }
        let c = p.alloc_class();
        p.first_class = c;
        p.last_class = c;
        p.num_classes = 1;
        for &v in seed {
            p.push_back(c, v);
        }
        p
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    /// Vertex still unvisited (present in some class)?
    pub fn contains(&self, v: u32) -> bool {
        self.verts[v as usize].class != NIL
    }

    /// Total vertex relocations performed by `refine` so far; a sweep
    /// does at most one per (pivot, neighbor) incidence, i.e. ≤ 2m.
    pub fn relocations(&self) -> u64 {
        self.relocations
    }

    /// Contents of the first class, in order.
    pub fn first_class_vertices(&self) -> Vec<u32> {
        if self.first_class == NIL {
            return Vec::new();
        }
        self.class_vertices(self.first_class)
    }

    /// Removes and returns the head vertex of the first class: the
    /// unvisited vertex of the current slice that comes first in seed
    /// order.
    pub fn pop_first(&mut self) -> Option<u32> {
        if self.first_class == NIL {
            return None;
        }
        let c = self.first_class;
        let v = self.classes[c as usize].head;
        self.detach(v);
        self.verts[v as usize].class = NIL;
        self.len -= 1;
        if self.classes[c as usize].size == 0 {
            self.drop_class(c);
        }
        Some(v)
    }

    /// Splits classes by a sequence of disjoint vertex groups. Each group
    /// must list its vertices in seed order. For every class B meeting a
    /// group C, the vertices of B∩C move into a fresh class placed
    /// immediately before (or after) B; B keeps the rest. Processing the
    /// groups front to back with `Before` turns B into
    /// (B∩C₁, …, B∩C_s, B∖W); back to front with `After` it becomes
    /// (B∖W, B∩C₁, …, B∩C_s).
    pub fn refine_groups<'a>(
        &mut self,
        groups: impl IntoIterator<Item = &'a [u32]>,
        place: Placement,
    ) {
        for group in groups {
            self.generation += 1;
            for &v in group {
                let b = self.verts[v as usize].class;
                debug_assert_ne!(b, NIL, "refine group vertex must be unvisited");
                let target = if self.classes[b as usize].split_gen == self.generation {
                    self.classes[b as usize].split_to
                } else {
                    let fresh = self.alloc_class();
                    match place {
                        Placement::Before => self.link_before(fresh, b),
                        Placement::After => self.link_after(fresh, b),
                    }
                    self.num_classes += 1;
                    self.classes[b as usize].split_gen = self.generation;
                    self.classes[b as usize].split_to = fresh;
                    fresh
                };
                self.detach(v);
                self.push_back(target, v);
                self.relocations += 1;
                if self.classes[b as usize].size == 0 {
                    self.drop_class(b);
                }
            }
        }
    }

    /// Classes in order, each as its vertex list in order.
    pub fn class_lists(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::with_capacity(self.num_classes);
        let mut c = self.first_class;
        while c != NIL {
            out.push(self.class_vertices(c));
            c = self.classes[c as usize].next;
        }
        out
    }

    /// Debug rendering `(B1 | B2 | ...)` with 1-based vertex ids.
    pub fn dump(&self) -> String {
        let mut s = String::from("(");
        for (i, class) in self.class_lists().iter().enumerate() {
            if i > 0 {
                s.push_str(" | ");
            }
            for (j, v) in class.iter().enumerate() {
                if j > 0 {
                    s.push(' ');
                }
                let _ = write!(s, "{}", v + 1);
            }
        }
        s.push(')');
        s
    }

    fn class_vertices(&self, c: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.classes[c as usize].size as usize);
        let mut v = self.classes[c as usize].head;
        while v != NIL {
            out.push(v);
            v = self.verts[v as usize].next;
        }
        out
    }

    fn alloc_class(&mut self) -> u32 {
        let node = ClassNode {
            head: NIL,
            tail: NIL,
            prev: NIL,
            next: NIL,
            size: 0,
            split_gen: 0,
            split_to: NIL,
        };
        match self.free_classes.pop() {
            Some(c) => {
                self.classes[c as usize] = node;
                c
            }
            None => {
                self.classes.push(node);
                (self.classes.len() - 1) as u32
            }
        }
    }

    fn link_before(&mut self, c: u32, at: u32) {
        let prev = self.classes[at as usize].prev;
        self.classes[c as usize].prev = prev;
        self.classes[c as usize].next = at;
        self.classes[at as usize].prev = c;
        if prev == NIL {
            self.first_class = c;
        } else {
            self.classes[prev as usize].next = c;
        }
    }

    fn link_after(&mut self, c: u32, at: u32) {
        let next = self.classes[at as usize].next;
        self.classes[c as usize].next = next;
        self.classes[c as usize].prev = at;
        self.classes[at as usize].next = c;
        if next == NIL {
            self.last_class = c;
        } else {
            self.classes[next as usize].prev = c;
        }
    }

    fn drop_class(&mut self, c: u32) {
        debug_assert_eq!(self.classes[c as usize].size, 0);
        let (prev, next) = (self.classes[c as usize].prev, self.classes[c as usize].next);
        if prev == NIL {
            self.first_class = next;
        } else {
            self.classes[prev as usize].next = next;
        }
        if next == NIL {
            self.last_class = prev;
        } else {
            self.classes[next as usize].prev = prev;
        }
        self.num_classes -= 1;
        self.free_classes.push(c);
    }

    /// Unlinks v from its class's vertex list; class membership and `len`
    /// are left for the caller to fix up.
    fn detach(&mut self, v: u32) {
        let VertexNode { prev, next, class } = self.verts[v as usize];
        if prev == NIL {
            self.classes[class as usize].head = next;
        } else {
            self.verts[prev as usize].next = next;
        }
        if next == NIL {
            self.classes[class as usize].tail = prev;
        } else {
            self.verts[next as usize].prev = prev;
        }
        self.classes[class as usize].size -= 1;
    }

    fn push_back(&mut self, c: u32, v: u32) {
        let tail = self.classes[c as usize].tail;
        self.verts[v as usize] = VertexNode { prev: tail, next: NIL, class: c };
        if tail == NIL {
            self.classes[c as usize].head = v;
        } else {
            self.verts[tail as usize].next = v;
        }
        self.classes[c as usize].tail = v;
        self.classes[c as usize].size += 1;
    }
}

/// Neighborhood of a pivot among the unvisited vertices, grouped by
/// equal weight. For a similarity matrix the classes carry strictly
/// decreasing weights; for a dissimilarity they are built increasing.
/// Each class lists its vertices in seed order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimilarityPartition<W> {
    pub classes: Vec<(W, Vec<u32>)>,
}

impl<W> SimilarityPartition<W> {
    pub fn groups(&self) -> impl Iterator<Item = &[u32]> {
        self.classes.iter().map(|(_, vs)| vs.as_slice())
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

fn grouped_neighbors<W: WeightScalar>(
    a: &SimilarityMatrix<W>,
    p: u32,
    phi: &OrderedPartition,
    seed_pos: &[u32],
    decreasing: bool,
) -> SimilarityPartition<W> {
    let mut nbrs: Vec<(W, u32)> = a
        .neighbors(p)
        .iter()
        .filter(|&&(v, _)| phi.contains(v))
        .map(|&(v, w)| (w, v))
        .collect();
    if decreasing {
        nbrs.sort_unstable_by(|&(w1, v1), &(w2, v2)| {
            w2.cmp(&w1).then(seed_pos[v1 as usize].cmp(&seed_pos[v2 as usize]))
        });
    } else {
        nbrs.sort_unstable_by_key(|&(w, v)| (w, seed_pos[v as usize]));
    }
    let mut classes: Vec<(W, Vec<u32>)> = Vec::new();
    for (w, v) in nbrs {
        match classes.last_mut() {
            Some((lw, vs)) if *lw == w => vs.push(v),
            _ => classes.push((w, vec![v])),
        }
    }
    SimilarityPartition { classes }
}

/// The similarity partition ψ_p: unvisited neighbors of p grouped by
/// equal weight, classes ordered by strictly decreasing weight, each
/// class in seed order.
pub fn similarity_partition<W: WeightScalar>(
    a: &SimilarityMatrix<W>,
    p: u32,
    phi: &OrderedPartition,
    seed_pos: &[u32],
) -> SimilarityPartition<W> {
    grouped_neighbors(a, p, phi, seed_pos, true)
}

/// DiSFS counterpart: unvisited neighbors of p (positive dissimilarity
/// only) grouped by equal value, ordered by increasing dissimilarity.
/// Zero-dissimilarity pairs are the sparse non-edges and stay put as the
/// "most similar" remainder.
pub fn dissimilarity_partition<W: WeightScalar>(
    d: &SimilarityMatrix<W>,
    p: u32,
    phi: &OrderedPartition,
    seed_pos: &[u32],
) -> SimilarityPartition<W> {
    grouped_neighbors(d, p, phi, seed_pos, false)
}

/// Refines φ by ψ: every class B becomes (B∩C₁, …, B∩C_s, B∖W), empty
/// pieces dropped, seed order kept within every class.
pub fn refine<W>(phi: &mut OrderedPartition, psi: &SimilarityPartition<W>) {
    phi.refine_groups(psi.groups(), Placement::Before);
}

/// DiSFS refinement: every class B becomes (B∖W, B∩C₁, …, B∩C_s) with
/// the classes of ψ in increasing dissimilarity, so the most similar
/// vertices come first. Realized by walking ψ back to front and planting
/// each split immediately after its source class.
pub fn refine_dissimilarity<W>(phi: &mut OrderedPartition, psi: &SimilarityPartition<W>) {
    let groups: Vec<&[u32]> = psi.groups().collect();
    phi.refine_groups(groups.into_iter().rev(), Placement::After);
}
