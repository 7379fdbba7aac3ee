//! The boundary triangulation `Δ<` of a symmetric edge polytope.
//!
//! Polytope vertices are oriented edges. Fixing a total order `<` on the
//! graph's edges, a set of oriented edges is a face of `Δ<` unless it
//! contains
//!
//! * an antipodal pair `u→v, v→u`,
//! * `ℓ` edges of an oriented `(2ℓ-1)`-cycle, or
//! * `ℓ` edges of an oriented `2ℓ`-cycle, none of which is that cycle's
//!   minimal edge (smallest underlying edge under `<`, in the cycle's
//!   orientation).
//!
//! Only cycles of length at most `2k` matter for faces with `k` vertices.

mod engine;

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cycles::{enumerate_cycles_capped, Cycle, DEFAULT_CYCLE_CAP};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::numeric::{binomial, pow2};

/// Default limit on search-tree nodes visited by the face counter.
pub const DEFAULT_WORK_CAP: u64 = 500_000_000;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrientedEdge {
    pub edge: usize,
    /// Oriented from the smaller to the larger endpoint.
    pub forward: bool,
}

impl OrientedEdge {
    pub fn new(edge: usize, forward: bool) -> Self {
        OrientedEdge { edge, forward }
    }

    /// Dense index `2 * edge + (0 if forward else 1)`.
    pub fn index(self) -> usize {
        2 * self.edge + usize::from(!self.forward)
    }

    pub fn from_index(i: usize) -> Self {
        OrientedEdge::new(i / 2, i % 2 == 0)
    }

    pub fn antipode(self) -> Self {
        OrientedEdge::new(self.edge, !self.forward)
    }

    /// `(tail, head)`, 0-indexed.
    pub fn endpoints(self, g: &Graph) -> (usize, usize) {
        let (u, v) = g.edge(self.edge);
        if self.forward {
            (u, v)
        } else {
            (v, u)
        }
    }

    /// The oriented edge `tail → head`, if `{tail, head}` is an edge.
    pub fn between(g: &Graph, tail: usize, head: usize) -> Option<Self> {
        g.edge_between(tail, head)
            .map(|e| OrientedEdge::new(e, tail < head))
    }
}

/// A total order on edge indices: `rank[e]` is the position of edge `e`,
/// smaller rank meaning smaller edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeOrder {
    rank: Vec<usize>,
}

impl EdgeOrder {
    /// Edge list order.
    pub fn identity(m: usize) -> Self {
        EdgeOrder {
            rank: (0..m).collect(),
        }
    }

    pub fn from_ranks(rank: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; rank.len()];
        for &r in &rank {
            if r >= rank.len() || std::mem::replace(&mut seen[r], true) {
                return Err(Error::Precondition("edge ranks are not a permutation".into()));
            }
        }
        Ok(EdgeOrder { rank })
    }

    /// Order given as a list of edge indices, smallest first.
    pub fn from_sequence(seq: &[usize]) -> Result<Self> {
        let mut rank = vec![usize::MAX; seq.len()];
        for (pos, &e) in seq.iter().enumerate() {
            if e >= seq.len() || rank[e] != usize::MAX {
                return Err(Error::Precondition("edge sequence is not a permutation".into()));
            }
            rank[e] = pos;
        }
        Ok(EdgeOrder { rank })
    }

    /// Uniformly random order from a ChaCha8 stream seeded with `seed`.
    pub fn shuffled(m: usize, seed: u64) -> Self {
        let mut seq: Vec<usize> = (0..m).collect();
        seq.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        EdgeOrder::from_sequence(&seq).expect("shuffle is a permutation")
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn rank(&self, e: usize) -> usize {
        self.rank[e]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    /// Edge indices from smallest to largest.
    pub fn sequence(&self) -> Vec<usize> {
        let mut seq = vec![0; self.rank.len()];
        for (e, &r) in self.rank.iter().enumerate() {
            seq[r] = e;
        }
        seq
    }

    fn check(&self, g: &Graph) -> Result<()> {
        if self.rank.len() != g.m() {
            return Err(Error::Precondition(format!(
                "edge order has {} entries, graph has {} edges",
                self.rank.len(),
                g.m()
            )));
        }
        Ok(())
    }
}

/// The block and threshold that an oriented cycle contributes: a face
/// holds fewer than `t` members of the block.
fn cycle_block(sigma: &[OrientedEdge], order: &EdgeOrder) -> (Vec<OrientedEdge>, usize) {
    let l = sigma.len();
    let t = l.div_ceil(2);
    if l % 2 == 1 {
        return (sigma.to_vec(), t);
    }
    let min = sigma
        .iter()
        .min_by_key(|o| order.rank(o.edge))
        .copied()
        .expect("cycles are non-empty");
    (sigma.iter().copied().filter(|&o| o != min).collect(), t)
}

/// Direct test of the non-face patterns. `cycles` must contain every cycle
/// of length at most `cycles_max_len`, and that bound must reach `2|s|`
/// (or `n`).
pub fn is_face(
    g: &Graph,
    order: &EdgeOrder,
    s: &[OrientedEdge],
    cycles: &[Cycle],
    cycles_max_len: usize,
) -> Result<bool> {
    order.check(g)?;
    let mut set: Vec<OrientedEdge> = s.to_vec();
    set.sort_unstable();
    set.dedup();
    if let Some(o) = set.iter().find(|o| o.edge >= g.m()) {
        return Err(Error::Precondition(format!("edge index {} out of range", o.edge)));
    }
    let k = set.len();
    if cycles_max_len < (2 * k).min(g.n()) {
        return Err(Error::Precondition(format!(
            "cycles up to length {} are needed for a set of size {k}, only {cycles_max_len} supplied",
            (2 * k).min(g.n())
        )));
    }
    if set.windows(2).any(|w| w[0].edge == w[1].edge) {
        return Ok(false);
    }
    let members: HashSet<OrientedEdge> = set.iter().copied().collect();
    for c in cycles.iter().filter(|c| c.len() <= 2 * k) {
        for reverse in [false, true] {
            let (block, t) = cycle_block(&c.oriented(reverse), order);
            if block.iter().filter(|o| members.contains(o)).count() >= t {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    /// The whole complex; the graph must be connected.
    Full,
    /// Faces with at most `k` vertices.
    UpTo(usize),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Caps {
    pub cycles: u64,
    pub work: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            cycles: DEFAULT_CYCLE_CAP,
            work: DEFAULT_WORK_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceCountReport {
    /// `f[i]` = faces with `i` vertices, i.e. `f_{i-1}`; `f[0] = 1`.
    pub f: Vec<BigUint>,
    /// `nonfaces[i]` = antipodal-free `i`-sets that are not faces.
    pub nonfaces: Vec<BigUint>,
    pub order_used: EdgeOrder,
    /// Set when only a prefix of the f-vector was computed.
    pub truncated: bool,
}

/// Number of antipodal-free sets of `size` oriented edges: `2^size C(m, size)`.
pub fn antipodal_free_sets(m: usize, size: usize) -> BigUint {
    pow2(size) * binomial(m, size)
}

struct Prepared {
    /// edges lying on some short cycle, increasing
    restricted: Vec<usize>,
    problem: engine::Problem,
}

fn prepare(g: &Graph, order: &EdgeOrder, max_size: usize, caps: Caps) -> Result<Prepared> {
    let max_len = (2 * max_size).min(g.n());
    let cycles = if max_len >= 3 {
        enumerate_cycles_capped(g, max_len, caps.cycles)?
    } else {
        Vec::new()
    };
    let mut local = vec![usize::MAX; g.m()];
    for c in &cycles {
        for &e in &c.edge_indices {
            local[e] = 0;
        }
    }
    let restricted: Vec<usize> = (0..g.m()).filter(|&e| local[e] == 0).collect();
    for (i, &e) in restricted.iter().enumerate() {
        local[e] = i;
    }
    let to_local = |o: OrientedEdge| 2 * local[o.edge] + usize::from(!o.forward);
    let mut blocks = Vec::with_capacity(2 * cycles.len());
    for c in &cycles {
        for reverse in [false, true] {
            let (block, t) = cycle_block(&c.oriented(reverse), order);
            blocks.push((block.into_iter().map(to_local).collect(), t as u32));
        }
    }
    Ok(Prepared {
        problem: engine::Problem::new(2 * restricted.len(), &blocks),
        restricted,
    })
}

fn cap_error(caps: Caps) -> Error {
    Error::CapExceeded {
        what: "face enumeration work",
        limit: caps.work,
    }
}

fn max_face_size(g: &Graph, mode: Mode) -> Result<(usize, bool)> {
    match mode {
        Mode::Full => {
            if !g.is_connected() {
                return Err(Error::Precondition(
                    "full enumeration needs a connected graph; use component products".into(),
                ));
            }
            Ok((g.n().saturating_sub(1), false))
        }
        // faces never have more vertices than the graph has edges
        Mode::UpTo(k) => Ok((k.min(g.m()), k < g.m())),
    }
}

pub fn enumerate_faces(g: &Graph, order: &EdgeOrder, mode: Mode) -> Result<FaceCountReport> {
    enumerate_faces_with(g, order, mode, Caps::default())
}

/// Face numbers of `Δ<`. Edges on no short cycle only meet antipodal
/// non-faces, so faces are counted on the remaining edges and extended by
/// any antipodal-free choice of the others.
pub fn enumerate_faces_with(
    g: &Graph,
    order: &EdgeOrder,
    mode: Mode,
    caps: Caps,
) -> Result<FaceCountReport> {
    order.check(g)?;
    let (k, truncated) = max_face_size(g, mode)?;
    let prep = prepare(g, order, k, caps)?;
    let r = prep.restricted.len();
    let inner = engine::count(&prep.problem, k.min(r), false, caps.work).map_err(|_| cap_error(caps))?;
    let outside = g.m() - r;
    let mut f = Vec::with_capacity(k + 1);
    let mut nonfaces = Vec::with_capacity(k + 1);
    for size in 0..=k {
        let mut total = BigUint::zero();
        for (j, &c) in inner.counts.iter().enumerate().take(size + 1) {
            if c > 0 && size - j <= outside {
                total += BigUint::from(c) * antipodal_free_sets(outside, size - j);
            }
        }
        nonfaces.push(antipodal_free_sets(g.m(), size) - &total);
        f.push(total);
    }
    Ok(FaceCountReport {
        f,
        nonfaces,
        order_used: order.clone(),
        truncated,
    })
}

/// Facets of `Δ<` for a connected graph, each sorted, in lexicographic order.
pub fn enumerate_facets(g: &Graph, order: &EdgeOrder, caps: Caps) -> Result<Vec<Vec<OrientedEdge>>> {
    order.check(g)?;
    let (k, _) = max_face_size(g, Mode::Full)?;
    let prep = prepare(g, order, k, caps)?;
    // bridges are kept inside the search here so every facet is explicit
    let all: Vec<usize> = (0..g.m()).collect();
    let problem = if prep.restricted == all {
        prep.problem
    } else {
        let cycles = if g.n() >= 3 {
            enumerate_cycles_capped(g, g.n(), caps.cycles)?
        } else {
            Vec::new()
        };
        let blocks: Vec<_> = cycles
            .iter()
            .flat_map(|c| [false, true].map(|rev| cycle_block(&c.oriented(rev), order)))
            .map(|(b, t)| (b.into_iter().map(|o| o.index()).collect(), t as u32))
            .collect();
        engine::Problem::new(2 * g.m(), &blocks)
    };
    let out = engine::count(&problem, k, true, caps.work).map_err(|_| cap_error(caps))?;
    let mut facets: Vec<Vec<OrientedEdge>> = out
        .top
        .unwrap_or_default()
        .into_iter()
        .map(|f| f.into_iter().map(OrientedEdge::from_index).collect())
        .collect();
    facets.sort_unstable();
    Ok(facets)
}

/// `n_{ℓ-1}`: antipodal-free `ℓ`-sets that are not faces.
pub fn count_nonfaces(g: &Graph, order: &EdgeOrder, l: usize) -> Result<BigUint> {
    count_nonfaces_with(g, order, l, Caps::default())
}

pub fn count_nonfaces_with(g: &Graph, order: &EdgeOrder, l: usize, caps: Caps) -> Result<BigUint> {
    if l == 0 {
        return Err(Error::Precondition("ℓ must be at least 1".into()));
    }
    if l > g.m() {
        return Ok(BigUint::zero());
    }
    let rep = enumerate_faces_with(g, order, Mode::UpTo(l), caps)?;
    Ok(rep.nonfaces[l].clone())
}

/// Pairs of oriented edges with distinct underlying edges lying on an
/// oriented triangle, or on an oriented 4-cycle avoiding its minimal edge.
pub fn bad_pair_count(g: &Graph, order: &EdgeOrder) -> Result<BigUint> {
    order.check(g)?;
    if g.n() < 3 {
        return Ok(BigUint::zero());
    }
    let cycles = enumerate_cycles_capped(g, 4, DEFAULT_CYCLE_CAP)?;
    let mut pairs: HashSet<(usize, usize)> = HashSet::new();
    for c in &cycles {
        for reverse in [false, true] {
            let (block, _) = cycle_block(&c.oriented(reverse), order);
            for (i, a) in block.iter().enumerate() {
                for b in &block[i + 1..] {
                    let (x, y) = (a.index(), b.index());
                    pairs.insert((x.min(y), x.max(y)));
                }
            }
        }
    }
    Ok(BigUint::from(pairs.len()))
}

/// Whether two oriented edges span an edge of the polytope: no directed
/// triangle or directed 4-cycle contains both. Two orientations of the same
/// edge give `false`.
pub fn is_polytope_edge(g: &Graph, a: OrientedEdge, b: OrientedEdge) -> bool {
    if a.edge == b.edge {
        return false;
    }
    let (x, y) = a.endpoints(g);
    let (z, w) = b.endpoints(g);
    !(closes_directed(g, x, y, z, w) || closes_directed(g, z, w, x, y))
}

// A directed 3- or 4-cycle through x→y and z→w in which z→w follows x→y
// directly or after one intermediate edge.
fn closes_directed(g: &Graph, x: usize, y: usize, z: usize, w: usize) -> bool {
    if y == z {
        if w == x {
            return false;
        }
        // triangle x→y→w→x
        if g.has_edge(w, x) {
            return true;
        }
        // 4-cycle x→y→w→u→x
        return g
            .neighbors(w)
            .any(|u| u != x && u != y && g.has_edge(u, x));
    }
    // 4-cycle x→y→z→w→x with all four distinct
    let distinct = x != z && x != w && y != w;
    distinct && g.has_edge(y, z) && g.has_edge(w, x)
}

/// Polytope degree of every vertex, indexed by [`OrientedEdge::index`].
/// Antipodal vertices are adjacent only when the polytope is a segment.
pub fn polytope_vertex_degrees(g: &Graph) -> Vec<usize> {
    let verts: Vec<OrientedEdge> = (0..2 * g.m()).map(OrientedEdge::from_index).collect();
    let dim = g.n() - g.component_count();
    verts
        .iter()
        .map(|&a| {
            let others = verts.iter().filter(|&&b| is_polytope_edge(g, a, b)).count();
            others + usize::from(dim == 1)
        })
        .collect()
}

/// Simplicity by classification: after dropping isolated vertices the graph
/// is one of `P1`, `2P1`, `P2`, `C3`, `C4`.
pub fn is_simple_polytope(g: &Graph) -> Result<bool> {
    if g.m() == 0 {
        return Err(Error::Precondition("edgeless graph: the polytope is a point".into()));
    }
    let n = g.non_isolated_count();
    let all_degree_two = (0..g.n()).all(|v| g.degree(v) == 0 || g.degree(v) == 2);
    Ok(match g.m() {
        1 | 2 => true,
        3 => n == 3,
        4 => n == 4 && all_degree_two && g.component_count() == g.n() - 3,
        _ => false,
    })
}

/// Simplicity by definition: every vertex has polytope degree `dim`.
pub fn is_simple_by_degrees(g: &Graph) -> Result<bool> {
    if g.m() == 0 {
        return Err(Error::Precondition("edgeless graph: the polytope is a point".into()));
    }
    let dim = g.n() - g.component_count();
    Ok(polytope_vertex_degrees(g).iter().all(|&d| d == dim))
}

/// The f-vector `2^ℓ C(m, ℓ)` of the boundary of the `m`-dimensional
/// cross-polytope, `ℓ = 0..=m`.
pub fn crosspolytope_f(m: usize) -> Vec<BigUint> {
    (0..=m).map(|l| antipodal_free_sets(m, l)).collect()
}
