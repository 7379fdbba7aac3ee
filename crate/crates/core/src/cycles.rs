//! Simple cycles of bounded length.
//!
//! Cycles are grown from their smallest vertex: a path starts at the root,
//! only visits larger vertices, and closes when it can step back to the
//! root. Each cycle is met once per direction; the direction whose second
//! vertex is smaller than its last vertex is kept.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::triangulation::OrientedEdge;

pub const DEFAULT_CYCLE_CAP: u64 = 10_000_000;

/// An unoriented simple cycle in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    /// Starts at the smallest vertex; the second entry is the smaller of its
    /// two cycle neighbors.
    pub vertices: Vec<usize>,
    /// `edge_indices[i]` joins `vertices[i]` and `vertices[i + 1]` (cyclically).
    pub edge_indices: Vec<usize>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// The cycle traversed in its stored direction (`reverse = false`) or
    /// backwards. The two orientations are antipodal edge by edge.
    pub fn oriented(&self, reverse: bool) -> Vec<OrientedEdge> {
        let l = self.len();
        (0..l)
            .map(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % l]);
                let forward = (a < b) != reverse;
                OrientedEdge::new(self.edge_indices[i], forward)
            })
            .collect()
    }

    pub fn sorted_edges(&self) -> Vec<usize> {
        let mut e = self.edge_indices.clone();
        e.sort_unstable();
        e
    }
}

fn visit_root<F: FnMut(&[usize], &[usize]) -> bool>(
    g: &Graph,
    root: usize,
    max_len: usize,
    visit: &mut F,
) -> bool {
    let mut on_path = vec![false; g.n()];
    let mut path = vec![root];
    let mut path_edges: Vec<usize> = Vec::new();
    // iterator position per depth
    let mut cursor = vec![0usize];
    on_path[root] = true;
    let root_adj: Vec<(usize, usize)> = g.incident(root).collect();
    let adj_of = |v: usize| -> Vec<(usize, usize)> { g.incident(v).collect() };
    let mut adj_stack = vec![root_adj];

    while let Some(pos) = cursor.last_mut() {
        let depth = path.len();
        let nbrs = adj_stack.last().unwrap();
        if *pos >= nbrs.len() {
            cursor.pop();
            adj_stack.pop();
            let v = path.pop().unwrap();
            on_path[v] = false;
            path_edges.pop();
            continue;
        }
        let (w, e) = nbrs[*pos];
        *pos += 1;
        if w == root {
            if depth >= 3 && path[1] < path[depth - 1] {
                path_edges.push(e);
                let keep_going = visit(&path, &path_edges);
                path_edges.pop();
                if !keep_going {
                    return false;
                }
            }
            continue;
        }
        if w < root || on_path[w] || depth >= max_len {
            continue;
        }
        on_path[w] = true;
        path.push(w);
        path_edges.push(e);
        cursor.push(0);
        adj_stack.push(adj_of(w));
    }
    true
}

/// All simple cycles of length `3..=max_len`, sorted by length and then by
/// vertex sequence. More than `cap` cycles is an error.
pub fn enumerate_cycles_capped(g: &Graph, max_len: usize, cap: u64) -> Result<Vec<Cycle>> {
    if max_len < 3 {
        return Err(Error::Precondition("max_len must be at least 3".into()));
    }
    let found = AtomicU64::new(0);
    let per_root: Vec<Option<Vec<Cycle>>> = (0..g.n())
        .into_par_iter()
        .map(|root| {
            let mut out = Vec::new();
            let complete = visit_root(g, root, max_len, &mut |vs, es| {
                if found.fetch_add(1, Ordering::Relaxed) >= cap {
                    return false;
                }
                out.push(Cycle {
                    vertices: vs.to_vec(),
                    edge_indices: es.to_vec(),
                });
                true
            });
            complete.then_some(out)
        })
        .collect();
    let mut cycles = Vec::new();
    for r in per_root {
        match r {
            Some(v) => cycles.extend(v),
            None => return Err(Error::CapExceeded { what: "cycle", limit: cap }),
        }
    }
    cycles.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.vertices.cmp(&b.vertices)));
    Ok(cycles)
}

pub fn enumerate_cycles(g: &Graph, max_len: usize) -> Result<Vec<Cycle>> {
    enumerate_cycles_capped(g, max_len, DEFAULT_CYCLE_CAP)
}

/// Number of cycles of each length in `3..=max_len`; lengths with no
/// cycles are absent. Nothing is materialized, but the cap still applies.
pub fn count_cycles_by_length_capped(
    g: &Graph,
    max_len: usize,
    cap: u64,
) -> Result<BTreeMap<usize, u64>> {
    if max_len < 3 {
        return Err(Error::Precondition("max_len must be at least 3".into()));
    }
    let found = AtomicU64::new(0);
    let per_root: Vec<Option<Vec<u64>>> = (0..g.n())
        .into_par_iter()
        .map(|root| {
            let mut counts = vec![0u64; max_len + 1];
            let complete = visit_root(g, root, max_len, &mut |vs, _| {
                if found.fetch_add(1, Ordering::Relaxed) >= cap {
                    return false;
                }
                counts[vs.len()] += 1;
                true
            });
            complete.then_some(counts)
        })
        .collect();
    let mut total = BTreeMap::new();
    for r in per_root {
        let counts = r.ok_or(Error::CapExceeded { what: "cycle", limit: cap })?;
        for (len, c) in counts.into_iter().enumerate() {
            if c > 0 {
                *total.entry(len).or_insert(0) += c;
            }
        }
    }
    Ok(total)
}

pub fn count_cycles_by_length(g: &Graph, max_len: usize) -> Result<BTreeMap<usize, u64>> {
    count_cycles_by_length_capped(g, max_len, DEFAULT_CYCLE_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    fn counts(g: &Graph, max_len: usize) -> Vec<(usize, u64)> {
        count_cycles_by_length(g, max_len).unwrap().into_iter().collect()
    }

    #[test]
    fn k4_cycles() {
        let k4 = Family::Complete(4).build().unwrap();
        let cs = enumerate_cycles(&k4, 4).unwrap();
        assert_eq!(cs.iter().filter(|c| c.len() == 3).count(), 4);
        assert_eq!(cs.iter().filter(|c| c.len() == 4).count(), 3);
        assert_eq!(cs[0].vertices, vec![0, 1, 2]);
        assert_eq!(counts(&k4, 4), vec![(3, 4), (4, 3)]);
    }

    #[test]
    fn single_cycle() {
        let c6 = Family::Cycle(6).build().unwrap();
        let cs = enumerate_cycles(&c6, 6).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].vertices, vec![0, 1, 2, 3, 4, 5]);
        assert!(enumerate_cycles(&c6, 5).unwrap().is_empty());
    }

    #[test]
    fn small_counts() {
        assert_eq!(counts(&Family::Complete(5).build().unwrap(), 3), vec![(3, 10)]);
        assert_eq!(counts(&Family::CompleteBipartite(3, 3).build().unwrap(), 4), vec![(4, 9)]);
        assert!(counts(&Family::Path(6).build().unwrap(), 6).is_empty());
        assert_eq!(counts(&Family::Petersen.build().unwrap(), 5), vec![(5, 12)]);
    }

    #[test]
    fn cap_is_an_error() {
        let k6 = Family::Complete(6).build().unwrap();
        assert!(matches!(
            enumerate_cycles_capped(&k6, 6, 10),
            Err(Error::CapExceeded { .. })
        ));
        assert!(count_cycles_by_length_capped(&k6, 6, 10).is_err());
        assert!(enumerate_cycles(&k6, 2).is_err());
    }

    #[test]
    fn orientations_are_antipodal() {
        let c4 = Family::Cycle(4).build().unwrap();
        let c = &enumerate_cycles(&c4, 4).unwrap()[0];
        let fw = c.oriented(false);
        let bw = c.oriented(true);
        // 1->2->3->4->1: the first three go forward, 4->1 goes backward
        assert_eq!(
            fw.iter().map(|o| o.forward).collect::<Vec<_>>(),
            vec![true, true, true, false]
        );
        for (a, b) in fw.iter().zip(&bw) {
            assert_eq!(*b, a.antipode());
        }
    }
}
