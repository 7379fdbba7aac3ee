//! Brute-force oracles shared by the integration tests. Nothing here uses
//! the library's cycle enumeration or face counter.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;
use sepgamma::triangulation::EdgeOrder;
use sepgamma::Graph;

/// Every simple cycle as a closed vertex walk, each cycle once, found by
/// extending paths from their smallest vertex in every possible way.
pub fn brute_cycles(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut out = Vec::new();
    for start in 0..n {
        let mut stack = vec![vec![start]];
        while let Some(path) = stack.pop() {
            let last = *path.last().unwrap();
            for w in 0..n {
                if !g.has_edge(last, w) {
                    continue;
                }
                if w == start && path.len() >= 3 && path[1] < path[path.len() - 1] {
                    out.push(path.clone());
                } else if w > start && !path.contains(&w) {
                    let mut p = path.clone();
                    p.push(w);
                    stack.push(p);
                }
            }
        }
    }
    out
}

pub fn brute_cycle_counts(g: &Graph) -> BTreeMap<usize, u64> {
    let mut m = BTreeMap::new();
    for c in brute_cycles(g) {
        *m.entry(c.len()).or_insert(0) += 1;
    }
    m
}

/// Oriented edge `tail → head`.
pub type Arc = (usize, usize);

/// Tests a set of arcs against the three non-face patterns: an antipodal
/// pair; `ℓ` arcs of an oriented `(2ℓ-1)`-cycle; `ℓ` arcs of an oriented
/// `2ℓ`-cycle avoiding its minimal edge.
pub fn naive_is_face(g: &Graph, order: &EdgeOrder, cycles: &[Vec<usize>], s: &HashSet<Arc>) -> bool {
    if s.iter().any(|&(a, b)| s.contains(&(b, a))) {
        return false;
    }
    for c in cycles {
        let len = c.len();
        for reverse in [false, true] {
            let mut walk = c.clone();
            if reverse {
                walk.reverse();
            }
            let arcs: Vec<Arc> = (0..len).map(|i| (walk[i], walk[(i + 1) % len])).collect();
            let rank = |&(a, b): &Arc| order.rank(g.edge_between(a, b).unwrap());
            let min = *arcs.iter().min_by_key(|a| rank(a)).unwrap();
            let (pool, need): (Vec<Arc>, usize) = if len % 2 == 1 {
                (arcs.clone(), len.div_ceil(2))
            } else {
                (arcs.iter().copied().filter(|&a| a != min).collect(), len / 2)
            };
            if pool.iter().filter(|a| s.contains(a)).count() >= need {
                return false;
            }
        }
    }
    true
}

/// `f_{-1}, f_0, ...` by testing every antipodal-free subset.
pub fn naive_f_vector(g: &Graph, order: &EdgeOrder) -> Vec<u64> {
    let m = g.m();
    let cycles = brute_cycles(g);
    let mut f = vec![0u64; m + 1];
    let total = 3usize.pow(m as u32);
    for code in 0..total {
        let mut s = HashSet::new();
        let mut x = code;
        for e in 0..m {
            let (u, v) = g.edge(e);
            match x % 3 {
                1 => {
                    s.insert((u, v));
                }
                2 => {
                    s.insert((v, u));
                }
                _ => {}
            }
            x /= 3;
        }
        if naive_is_face(g, order, &cycles, &s) {
            f[s.len()] += 1;
        }
    }
    while f.len() > 1 && *f.last().unwrap() == 0 {
        f.pop();
    }
    f
}

/// Random connected graph: a random spanning tree plus `extra` random edges.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, extra: usize) -> Graph {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut edges: HashSet<(usize, usize)> = HashSet::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        let (a, b) = (perm[i], perm[j]);
        edges.insert((a.min(b), a.max(b)));
    }
    let mut rest: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|e| !edges.contains(e))
        .collect();
    rest.shuffle(rng);
    edges.extend(rest.into_iter().take(extra));
    let mut list: Vec<_> = edges.into_iter().collect();
    list.sort_unstable();
    Graph::new(n, list).unwrap()
}

/// Random graph on `n` vertices, each pair present with probability `p`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen::<f64>() < p)
        .collect();
    Graph::new(n, edges).unwrap()
}

pub fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}
