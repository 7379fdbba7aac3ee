//! Simple undirected graphs and their structural decompositions.
//!
//! Vertices are `0..n` internally. Every text format and every named family
//! uses the 1-based labels `1..=n`; [`Graph::from_one_indexed`] and the
//! parsers in [`io`] do the translation at the boundary.
//!
//! Edges are identified by their position in the edge list. That index is
//! stable for the lifetime of the graph and is what edge orders, oriented
//! edges and cycles refer to.

mod blocks;
pub mod families;
pub mod io;

pub use blocks::BlockDecomposition;
pub use families::{build_named, Family};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(u32, u32)>,
    // (neighbor, edge index), sorted by neighbor
    adj: Vec<Vec<(u32, u32)>>,
}

/// A subgraph lifted out of a parent graph together with the maps back into it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: Graph,
    /// `vertices[local] = parent vertex`
    pub vertices: Vec<usize>,
    /// `edges[local] = parent edge index`
    pub edges: Vec<usize>,
}

impl Graph {
    /// Builds a graph from 0-indexed vertex pairs. Edge `i` is the `i`-th pair.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > u32::MAX as usize / 2 {
            return Err(Error::InvalidGraph(format!("vertex count {n} too large")));
        }
        let mut adj: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {{{}, {}}} out of range for {n} vertices",
                    u + 1,
                    v + 1
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {}", u + 1)));
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            let e = list.len() as u32;
            list.push((a as u32, b as u32));
            adj[a].push((b as u32, e));
            adj[b].push((a as u32, e));
        }
        for (v, nb) in adj.iter_mut().enumerate() {
            nb.sort_unstable();
            if nb.windows(2).any(|w| w[0].0 == w[1].0) {
                let w = nb.windows(2).find(|w| w[0].0 == w[1].0).unwrap();
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge {{{}, {}}}",
                    v + 1,
                    w[0].0 + 1
                )));
            }
        }
        Ok(Graph { n, edges: list, adj })
    }

    /// Builds a graph from 1-indexed vertex pairs, the convention of every
    /// external format.
    pub fn from_one_indexed<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let shifted: Result<Vec<_>> = edges
            .into_iter()
            .map(|(u, v)| {
                if u == 0 || v == 0 {
                    Err(Error::InvalidGraph("vertex labels start at 1".into()))
                } else {
                    Ok((u - 1, v - 1))
                }
            })
            .collect();
        Graph::new(n, shifted?)
    }

    pub fn empty(n: usize) -> Self {
        Graph::new(n, std::iter::empty()).expect("edgeless graph is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Endpoints `(u, v)` with `u < v`, 0-indexed.
    pub fn edge(&self, e: usize) -> (usize, usize) {
        let (u, v) = self.edges[e];
        (u as usize, v as usize)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|&(u, v)| (u as usize, v as usize))
    }

    /// Edge list with 1-based labels.
    pub fn edges_one_indexed(&self) -> Vec<(usize, usize)> {
        self.edges().map(|(u, v)| (u + 1, v + 1)).collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&(w, _)| w as usize)
    }

    /// Neighbors of `v` paired with the index of the connecting edge.
    pub fn incident(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj[v].iter().map(|&(w, e)| (w as usize, e as usize))
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n {
            return None;
        }
        self.adj[u]
            .binary_search_by_key(&(v as u32), |&(w, _)| w)
            .ok()
            .map(|i| self.adj[u][i].1 as usize)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_between(u, v).is_some()
    }

    /// Component id for every vertex, numbered in order of smallest vertex.
    pub fn component_ids(&self) -> (Vec<usize>, usize) {
        let mut comp = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for w in self.neighbors(v) {
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn component_count(&self) -> usize {
        self.component_ids().1
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Connected components in order of their smallest vertex. Isolated
    /// vertices come back as edgeless one-vertex components.
    pub fn connected_components(&self) -> Vec<Subgraph> {
        let (comp, count) = self.component_ids();
        let mut vertex_sets = vec![Vec::new(); count];
        for (v, &c) in comp.iter().enumerate() {
            vertex_sets[c].push(v);
        }
        let mut edge_sets = vec![Vec::new(); count];
        for (e, &(u, _)) in self.edges.iter().enumerate() {
            edge_sets[comp[u as usize]].push(e);
        }
        vertex_sets
            .into_iter()
            .zip(edge_sets)
            .map(|(vs, es)| self.lift(vs, es))
            .collect()
    }

    /// Subgraph spanned by the given edges; vertices are the endpoints,
    /// relabelled in increasing order, edges keep their relative order.
    pub fn edge_subgraph(&self, edge_ids: &[usize]) -> Subgraph {
        let mut edge_ids = edge_ids.to_vec();
        edge_ids.sort_unstable();
        edge_ids.dedup();
        let mut vs: Vec<usize> = edge_ids
            .iter()
            .flat_map(|&e| {
                let (u, v) = self.edge(e);
                [u, v]
            })
            .collect();
        vs.sort_unstable();
        vs.dedup();
        self.lift(vs, edge_ids)
    }

    fn lift(&self, vertices: Vec<usize>, edges: Vec<usize>) -> Subgraph {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let pairs: Vec<_> = edges
            .iter()
            .map(|&e| {
                let (u, v) = self.edge(e);
                (local[u], local[v])
            })
            .collect();
        let graph = Graph::new(vertices.len(), pairs).expect("subgraph of a simple graph");
        Subgraph {
            graph,
            vertices,
            edges,
        }
    }

    /// `|E| - |V| + c`.
    pub fn cyclomatic_number(&self) -> usize {
        self.m() + self.component_count() - self.n
    }

    pub fn without_edge(&self, e: usize) -> Graph {
        let pairs = self
            .edges()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, p)| p);
        Graph::new(self.n, pairs).expect("deleting an edge keeps the graph simple")
    }

    /// Graph with vertex `v` renamed to `perm[v]`; edge order is preserved.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::Precondition("permutation length differs from n".into()));
        }
        Graph::new(self.n, self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    /// Same edge set as an unordered collection.
    pub fn same_edge_set(&self, other: &Graph) -> bool {
        if self.n != other.n || self.m() != other.m() {
            return false;
        }
        let mut a: Vec<_> = self.edges.clone();
        let mut b: Vec<_> = other.edges.clone();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }

    /// 2-coloring with the smallest vertex of each component on side 0, if bipartite.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.n];
        let mut stack = Vec::new();
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for w in self.neighbors(v) {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[v];
                        stack.push(w);
                    } else if color[w] == color[v] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn is_forest(&self) -> bool {
        self.cyclomatic_number() == 0
    }

    /// Vertices with at least one edge.
    pub fn non_isolated_count(&self) -> usize {
        (0..self.n).filter(|&v| self.degree(v) > 0).count()
    }

    /// Recognizes `G_n`: two adjacent apices joined to every other vertex,
    /// and no further edges. Structural test, O(n + m).
    pub fn is_iso_gn(&self) -> bool {
        let n = self.n;
        if n < 3 || self.m() != 2 * n - 3 {
            return false;
        }
        let apices: Vec<usize> = (0..n).filter(|&v| self.degree(v) == n - 1).collect();
        // G_3 = K_3 has three candidate apices, G_4 has exactly two.
        for (i, &a) in apices.iter().enumerate() {
            for &b in &apices[i + 1..] {
                if self.apex_pair_covers(a, b) {
                    return true;
                }
            }
        }
        false
    }

    /// Recognizes `K_{2,n-2}`: two non-adjacent apices joined to every other
    /// vertex, and no further edges.
    pub fn is_iso_k2m(&self) -> bool {
        let n = self.n;
        if n < 3 || self.m() != 2 * (n - 2) {
            return false;
        }
        let candidates: Vec<usize> = (0..n).filter(|&v| self.degree(v) == n - 2).collect();
        for (i, &a) in candidates.iter().enumerate() {
            for &b in &candidates[i + 1..] {
                if !self.has_edge(a, b) && self.apex_pair_covers(a, b) {
                    return true;
                }
            }
        }
        false
    }

    // every vertex other than a, b has degree 2 and is adjacent to both
    fn apex_pair_covers(&self, a: usize, b: usize) -> bool {
        (0..self.n)
            .filter(|&v| v != a && v != b)
            .all(|v| self.degree(v) == 2 && self.has_edge(v, a) && self.has_edge(v, b))
    }

    pub fn blocks(&self) -> BlockDecomposition {
        blocks::decompose(self)
    }
}

impl std::fmt::Display for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "n={} E={{", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}{}", u + 1, v + 1)?;
        }
        write!(f, "}}")
    }
}
