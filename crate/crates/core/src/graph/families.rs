//! Named graph families with fixed 1-based labelings.
//!
//! Every family lists its edges in lexicographic order of the 1-based
//! endpoint pairs, so the default edge order is reproducible.
//!
//! * `K_n`: vertices `1..=n`.
//! * `K_{a,b}`: sides `{1..=a}` and `{a+1..=a+b}`; `K_{2,n-2}` thus has the
//!   bipartition `{1,2} ∪ {3..=n}`.
//! * `G_n`: edge set `{12} ∪ {1k, 2k : 3 ≤ k ≤ n}`.
//! * `G_{n,k}`: the clique on `1..=k` joined to `k+1..=n` (k-fold cone over
//!   `n-k` isolated vertices); `G_{n,2} = G_n`.
//! * cones: apices are `1` and `2`, base vertex `v` becomes `v + 2`.

use super::Graph;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Complete(usize),
    CompleteBipartite(usize, usize),
    Cycle(usize),
    /// Path with the given number of edges.
    Path(usize),
    Empty(usize),
    Gn(usize),
    Gnk(usize, usize),
    Petersen,
    /// Double cone over the cycle `C_k`.
    DoubleConeCycle(usize),
    /// Double cone over the path with `k` edges.
    DoubleConePath(usize),
    /// Bipartite cone over the even cycle `C_k`.
    BipartiteConeCycle(usize),
}

fn invalid(family: &str, reason: impl Into<String>) -> Error {
    Error::InvalidFamily {
        family: family.to_string(),
        reason: reason.into(),
    }
}

fn sorted_graph(n: usize, mut pairs: Vec<(usize, usize)>) -> Graph {
    for p in pairs.iter_mut() {
        if p.0 > p.1 {
            *p = (p.1, p.0);
        }
    }
    pairs.sort_unstable();
    Graph::from_one_indexed(n, pairs).expect("family constructions are simple graphs")
}

impl Family {
    pub fn build(&self) -> Result<Graph> {
        match *self {
            Family::Complete(n) => {
                if n == 0 {
                    return Err(invalid("K_n", "n must be at least 1"));
                }
                let pairs = (1..=n)
                    .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
                    .collect();
                Ok(sorted_graph(n, pairs))
            }
            Family::CompleteBipartite(a, b) => {
                if a == 0 || b == 0 {
                    return Err(invalid("K_{m,n}", "both sides must be non-empty"));
                }
                let pairs = (1..=a)
                    .flat_map(|u| (a + 1..=a + b).map(move |v| (u, v)))
                    .collect();
                Ok(sorted_graph(a + b, pairs))
            }
            Family::Cycle(n) => {
                if n < 3 {
                    return Err(invalid("C_n", "n must be at least 3"));
                }
                let mut pairs: Vec<_> = (1..n).map(|u| (u, u + 1)).collect();
                pairs.push((1, n));
                Ok(sorted_graph(n, pairs))
            }
            Family::Path(len) => {
                let pairs = (1..=len).map(|u| (u, u + 1)).collect();
                Ok(sorted_graph(len + 1, pairs))
            }
            Family::Empty(n) => Ok(Graph::empty(n)),
            Family::Gn(n) => {
                if n < 3 {
                    return Err(invalid("G_n", "n must be at least 3"));
                }
                Family::Gnk(n, 2).build()
            }
            Family::Gnk(n, k) => {
                if k < 2 || n <= k {
                    return Err(invalid("G_{n,k}", "need 2 <= k < n"));
                }
                let mut pairs = Vec::new();
                for u in 1..=k {
                    for v in u + 1..=n {
                        pairs.push((u, v));
                    }
                }
                Ok(sorted_graph(n, pairs))
            }
            Family::Petersen => {
                let mut pairs = Vec::new();
                for i in 0..5 {
                    pairs.push((1 + i, 1 + (i + 1) % 5));
                    pairs.push((6 + i, 6 + (i + 2) % 5));
                    pairs.push((1 + i, 6 + i));
                }
                Ok(sorted_graph(10, pairs))
            }
            Family::DoubleConeCycle(k) => double_cone(&Family::Cycle(k).build()?),
            Family::DoubleConePath(k) => double_cone(&Family::Path(k).build()?),
            Family::BipartiteConeCycle(k) => {
                if k < 4 || k % 2 == 1 {
                    return Err(invalid("bipartite cone", "base must be an even cycle"));
                }
                bipartite_cone(&Family::Cycle(k).build()?)
            }
        }
    }

    /// Parses tags such as `K5`, `K2,4`, `C4`, `P3`, `E3`, `G6`, `G6,2`,
    /// `Petersen`, `DC5` (double cone over C5), `DP3`, `BC6`.
    pub fn parse(tag: &str) -> Result<Family> {
        let tag = tag.trim();
        if tag.eq_ignore_ascii_case("petersen") {
            return Ok(Family::Petersen);
        }
        let split = tag
            .find(|c: char| c.is_ascii_digit())
            .ok_or_else(|| Error::Parse(format!("unknown family tag {tag:?}")))?;
        let (kind, rest) = tag.split_at(split);
        let params: Vec<usize> = rest
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad parameter {p:?} in family tag {tag:?}")))
            })
            .collect::<Result<_>>()?;
        build_family(kind, &params)
    }
}

fn build_family(kind: &str, params: &[usize]) -> Result<Family> {
    let arity = |want: usize| -> Result<()> {
        if params.len() == want {
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "family {kind} takes {want} parameter(s), got {}",
                params.len()
            )))
        }
    };
    match (kind, params.len()) {
        ("K", 1) => Ok(Family::Complete(params[0])),
        ("K", 2) => Ok(Family::CompleteBipartite(params[0], params[1])),
        ("C", _) => arity(1).map(|_| Family::Cycle(params[0])),
        ("P", _) => arity(1).map(|_| Family::Path(params[0])),
        ("E", _) => arity(1).map(|_| Family::Empty(params[0])),
        ("G", 1) => Ok(Family::Gn(params[0])),
        ("G", 2) => Ok(Family::Gnk(params[0], params[1])),
        ("DC", _) => arity(1).map(|_| Family::DoubleConeCycle(params[0])),
        ("DP", _) => arity(1).map(|_| Family::DoubleConePath(params[0])),
        ("BC", _) => arity(1).map(|_| Family::BipartiteConeCycle(params[0])),
        _ => Err(Error::Parse(format!(
            "unknown family {kind:?} with {} parameter(s)",
            params.len()
        ))),
    }
}

/// Builds a named family from a kind tag (`"K"`, `"C"`, `"G"`, ...) and
/// its integer parameters.
pub fn build_named(kind: &str, params: &[usize]) -> Result<Graph> {
    build_family(kind, params)?.build()
}

/// Double cone: two new adjacent apices `1, 2`, each joined to every vertex
/// of `base`.
pub fn double_cone(base: &Graph) -> Result<Graph> {
    let n = base.n() + 2;
    let mut pairs: Vec<_> = base.edges().map(|(u, v)| (u + 3, v + 3)).collect();
    pairs.push((1, 2));
    for v in 3..=n {
        pairs.push((1, v));
        pairs.push((2, v));
    }
    Ok(sorted_graph(n, pairs))
}

/// Bipartite cone: apex `1` joined to the side containing the smallest base
/// vertex of each component, apex `2` to the other side, plus the edge `12`.
pub fn bipartite_cone(base: &Graph) -> Result<Graph> {
    let color = base
        .bipartition()
        .ok_or_else(|| invalid("bipartite cone", "base graph is not bipartite"))?;
    let n = base.n() + 2;
    let mut pairs: Vec<_> = base.edges().map(|(u, v)| (u + 3, v + 3)).collect();
    pairs.push((1, 2));
    for (v, &c) in color.iter().enumerate() {
        pairs.push((1 + c as usize, v + 3));
    }
    Ok(sorted_graph(n, pairs))
}
