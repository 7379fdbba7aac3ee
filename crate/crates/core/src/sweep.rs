//! Exhaustive checks over all small graphs, one per isomorphism class.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gamma::{classify_gamma2_zero, gamma1, gamma2, gamma_full_ordered};
use crate::graph::io::emit_graph6;
use crate::graph::Graph;
use crate::triangulation::{enumerate_faces_with, Caps, EdgeOrder, Mode};

pub const SWEEP_MAX_N: usize = 7;

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(p.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, p, out);
            let j = if k % 2 == 0 { i } else { 0 };
            p.swap(j, k - 1);
        }
    }
    heap(n, &mut p, &mut out);
    out
}

/// One representative per isomorphism class of graphs on exactly `n`
/// vertices, as the smallest edge bitmask in its orbit.
pub fn graphs_up_to_isomorphism(n: usize) -> Result<Vec<Graph>> {
    if n > SWEEP_MAX_N {
        return Err(Error::Precondition(format!("sweep supports n <= {SWEEP_MAX_N}")));
    }
    let ps = pairs(n);
    let mut index = vec![vec![0usize; n]; n];
    for (i, &(u, v)) in ps.iter().enumerate() {
        index[u][v] = i;
        index[v][u] = i;
    }
    // image of each pair bit under each permutation
    let images: Vec<Vec<usize>> = permutations(n)
        .iter()
        .map(|perm| ps.iter().map(|&(u, v)| index[perm[u]][perm[v]]).collect())
        .collect();
    let total = 1usize << ps.len();
    let mut seen = vec![false; total];
    let mut out = Vec::new();
    for mask in 0..total {
        if seen[mask] {
            continue;
        }
        for img in &images {
            let mut m = 0usize;
            for (b, &target) in img.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    m |= 1 << target;
                }
            }
            seen[m] = true;
        }
        let edges = ps
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &e)| e);
        out.push(Graph::new(n, edges)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub graph6: String,
    pub check: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub max_n: usize,
    /// Isomorphism classes checked for each `n = 1..=max_n`.
    pub classes: Vec<usize>,
    pub graphs: usize,
    pub orders_per_graph: usize,
    pub violations: Vec<Violation>,
}

/// Checks on one graph: γ₂ ≥ 0; the cycle formulas for γ₁ and γ₂ against
/// full enumeration; the γ₂ = 0 classifier; the f-vector under `orders`
/// shuffled edge orders.
pub fn check_graph(g: &Graph, orders: usize, seed: u64, caps: Caps) -> Result<Vec<Violation>> {
    let name = emit_graph6(g)?;
    let mut out = Vec::new();
    let mut fail = |check: &str, detail: String| {
        out.push(Violation {
            graph6: name.clone(),
            check: check.into(),
            detail,
        })
    };
    let identity = EdgeOrder::identity(g.m());
    let rep = gamma_full_ordered(g, &identity, caps)?;
    let g1 = rep.gamma_at(1);
    let g2 = rep.gamma_at(2);
    if g2.is_negative() {
        fail("gamma2-nonnegative", format!("γ₂ = {g2}"));
    }
    let half = rep.dim / 2;
    let formula1 = if half >= 1 { gamma1(g) } else { BigInt::zero() };
    if g1 != formula1 {
        fail("gamma1-formula", format!("enumeration {g1}, 2cy = {formula1}"));
    }
    let formula2 = gamma2(g, &identity)?;
    if g2 != formula2 {
        fail("gamma2-formula", format!("enumeration {g2}, formula {formula2}"));
    }
    let verdict = classify_gamma2_zero(g);
    if verdict.zero != g2.is_zero() {
        fail(
            "gamma2-classifier",
            format!("classifier says zero = {}, γ₂ = {g2}", verdict.zero),
        );
    }
    let f_of = |order: &EdgeOrder| enumerate_faces_with(g, order, Mode::UpTo(g.m()), caps).map(|r| r.f);
    let reference = f_of(&identity)?;
    for i in 0..orders {
        let order = EdgeOrder::shuffled(g.m(), seed.wrapping_add(i as u64));
        let f = f_of(&order)?;
        if f != reference {
            fail("order-invariance", format!("order {:?} changes the f-vector", order.sequence()));
        }
    }
    Ok(out)
}

pub fn run_sweep(max_n: usize, orders: usize, seed: u64, caps: Caps) -> Result<SweepReport> {
    let mut classes = Vec::new();
    let mut all = Vec::new();
    for n in 1..=max_n {
        let gs = graphs_up_to_isomorphism(n)?;
        classes.push(gs.len());
        all.extend(gs);
    }
    let found: Vec<Vec<Violation>> = all
        .par_iter()
        .map(|g| check_graph(g, orders, seed, caps))
        .collect::<Result<_>>()?;
    Ok(SweepReport {
        max_n,
        classes,
        graphs: all.len(),
        orders_per_graph: orders,
        violations: found.into_iter().flatten().collect(),
    })
}
