//! Explicit boundary complexes and the edge-contraction chain that shrinks
//! `Δ_{G_n}` down to a cross-polytope boundary.
//!
//! Vertices of `Δ<` are labeled `e_{i,j}` for the oriented edge `i → j`,
//! 1-based. The chain works one cone layer `c = n, n-1, ..., 3` at a time:
//! contract `{e_{1,2}, e_{1,c}}`, then `{e_{2,1}, e_{c,1}}`, keeping the
//! first label each time. After the layer the complex equals, label for
//! label, the suspensions over `e_{2,c'}, e_{c',2}` (`c' = n..c`) joined with
//! `Δ_{G_{c-1}}`.

mod complex;

pub use complex::{Label, SimplicialComplex, MAX_VERTICES};

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gamma::decimal_strings;
use crate::graph::{Family, Graph};
use crate::triangulation::{enumerate_facets, Caps, EdgeOrder};

/// Largest `n` accepted by [`lutz_nevo_run`].
pub const LUTZ_NEVO_MAX_N: usize = 10;

/// The complex `Δ<` of a connected graph with its facets listed explicitly.
pub fn build_delta(g: &Graph, order: &EdgeOrder) -> Result<SimplicialComplex> {
    build_delta_with(g, order, Caps::default())
}

pub fn build_delta_with(g: &Graph, order: &EdgeOrder, caps: Caps) -> Result<SimplicialComplex> {
    if 2 * g.m() > MAX_VERTICES {
        return Err(Error::CapExceeded {
            what: "complex vertices",
            limit: MAX_VERTICES as u64,
        });
    }
    let facets = enumerate_facets(g, order, caps)?;
    let label = |o: crate::triangulation::OrientedEdge| {
        let (t, h) = o.endpoints(g);
        Label(t as u32 + 1, h as u32 + 1)
    };
    let faces: Vec<Vec<Label>> = facets
        .into_iter()
        .map(|f| f.into_iter().map(label).collect())
        .collect();
    SimplicialComplex::from_labeled_faces(&faces)
}

/// Order in which the edges `{2,n}, {2,n-1}, ..., {2,3}` come first, in that
/// sequence, followed by the remaining edges in list order.
pub fn lutz_nevo_order(g: &Graph) -> EdgeOrder {
    let mut seq = Vec::with_capacity(g.m());
    if g.n() >= 3 {
        for x in (2..g.n()).rev() {
            if let Some(e) = g.edge_between(1, x) {
                seq.push(e);
            }
        }
    }
    let first: Vec<usize> = seq.clone();
    seq.extend((0..g.m()).filter(|e| !first.contains(e)));
    EdgeOrder::from_sequence(&seq).expect("a permutation of the edges")
}

/// `G_c` with its standard labels; `c = 2` is the single edge `{1,2}`.
fn gn_graph(c: usize) -> Result<Graph> {
    if c == 2 {
        Graph::from_one_indexed(2, [(1, 2)])
    } else {
        Family::Gn(c).build()
    }
}

/// `Δ_{G_c}` under [`lutz_nevo_order`].
pub fn delta_gn(c: usize) -> Result<SimplicialComplex> {
    let g = gn_graph(c)?;
    build_delta(&g, &lutz_nevo_order(&g))
}

/// `Δ_{K_{2,c-2}}` (sides `{1,2}` and `{3..c}`) under [`lutz_nevo_order`].
pub fn delta_k2(c: usize) -> Result<SimplicialComplex> {
    let g = Family::CompleteBipartite(2, c - 2).build()?;
    build_delta(&g, &lutz_nevo_order(&g))
}

fn swap_map(pairs: &[(Label, Label)]) -> HashMap<Label, Label> {
    pairs
        .iter()
        .flat_map(|&(a, b)| [(a, b), (a.neg(), b.neg())])
        .collect()
}

/// `ξ(±e_{1,2}) = ±e_{1,c}`.
pub fn xi(c: u32) -> HashMap<Label, Label> {
    swap_map(&[(Label(1, 2), Label(1, c))])
}

/// `φ(±e_{1,c}) = ±e_{1,2}`.
pub fn phi(c: u32) -> HashMap<Label, Label> {
    swap_map(&[(Label(1, c), Label(1, 2))])
}

/// Suspends `k` over `e_{2,c'}, e_{c',2}` for every `c'` in `layers`.
fn suspend_layers(k: SimplicialComplex, layers: impl IntoIterator<Item = usize>) -> Result<SimplicialComplex> {
    layers.into_iter().try_fold(k, |k, c| {
        let c = c as u32;
        k.suspension(Label(2, c), Label(c, 2))
    })
}

/// `Δ_{K₄}` under `34 < 24 < 23 < 14 < 13 < 12` contracted along
/// `{e_{1,4}, e_{3,4}}` and then `{e_{4,1}, e_{4,3}}`.
pub fn k4_example() -> Result<SimplicialComplex> {
    let g = Family::Complete(4).build()?;
    let seq: Vec<usize> = [(3, 4), (2, 4), (2, 3), (1, 4), (1, 3), (1, 2)]
        .iter()
        .map(|&(a, b)| g.edge_between(a - 1, b - 1).expect("K4 edge"))
        .collect();
    let delta = build_delta(&g, &EdgeOrder::from_sequence(&seq)?)?;
    delta
        .contract_edge(Label(1, 4), Label(3, 4))?
        .contract_edge(Label(4, 1), Label(4, 3))
}

/// The map carrying [`k4_example`] onto `Δ_{G₄}`.
pub fn k4_example_map() -> HashMap<Label, Label> {
    swap_map(&[
        (Label(1, 2), Label(1, 3)),
        (Label(1, 3), Label(2, 3)),
        (Label(1, 4), Label(4, 2)),
        (Label(2, 3), Label(2, 1)),
        (Label(2, 4), Label(4, 1)),
    ])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractionStep {
    pub step: usize,
    pub layer: usize,
    pub kept: Label,
    pub removed: Label,
    /// The link of the contracted pair is a cross-polytope boundary on
    /// `n - 3` pairs.
    pub link_check: bool,
    pub flag_check: bool,
    pub pseudomanifold_check: bool,
    pub euler_check: bool,
    pub palindromic_check: bool,
    /// `γ₂(Δ) = γ₂(Δ/F) + γ₁(lk F)`.
    pub gamma_relation_check: bool,
    pub vertices: usize,
    pub facets: usize,
    #[serde(serialize_with = "decimal_strings")]
    pub f_vector: Vec<BigInt>,
    #[serde(serialize_with = "decimal_strings")]
    pub gamma: Vec<BigInt>,
}

impl ContractionStep {
    fn checks(&self) -> [(&'static str, bool); 6] {
        [
            ("link", self.link_check),
            ("flag", self.flag_check),
            ("pseudomanifold", self.pseudomanifold_check),
            ("euler", self.euler_check),
            ("palindromic", self.palindromic_check),
            ("gamma-relation", self.gamma_relation_check),
        ]
    }

    pub fn passed(&self) -> bool {
        self.checks().iter().all(|c| c.1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LayerCheck {
    pub layer: usize,
    /// `ξ` carries the complex onto the suspensions joined with `Δ_{K_{2,c-2}}`.
    pub matches_k2: bool,
    /// The complex equals the suspensions joined with `Δ_{G_{c-1}}`.
    pub matches_gn: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LutzNevoReport {
    pub n: usize,
    pub initial_flag: bool,
    #[serde(serialize_with = "decimal_strings")]
    pub initial_gamma: Vec<BigInt>,
    pub steps: Vec<ContractionStep>,
    pub layers: Vec<LayerCheck>,
    pub contractions: usize,
    /// Final complex is the cross-polytope boundary on `n - 1` pairs.
    pub final_crosspolytope: bool,
}

impl LutzNevoReport {
    pub fn passed(&self) -> bool {
        self.initial_flag
            && self.final_crosspolytope
            && self.steps.iter().all(ContractionStep::passed)
            && self.layers.iter().all(|l| l.matches_k2 && l.matches_gn)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let yes = |b: bool| if b { "ok" } else { "FAIL" };
        let join = |v: &[BigInt]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let mut out = format!(
            "Delta(G_{}): flag {}, gamma ({})\n",
            self.n,
            yes(self.initial_flag),
            join(&self.initial_gamma)
        );
        for s in &self.steps {
            out += &format!(
                "step {:>2}  layer {:>2}  {{{}, {}}}  link {}  flag {}  pseudomanifold {}  euler {}  palindromic {}  gamma-relation {}  f ({})  gamma ({})\n",
                s.step,
                s.layer,
                s.kept,
                s.removed,
                yes(s.link_check),
                yes(s.flag_check),
                yes(s.pseudomanifold_check),
                yes(s.euler_check),
                yes(s.palindromic_check),
                yes(s.gamma_relation_check),
                join(&s.f_vector),
                join(&s.gamma),
            );
        }
        for l in &self.layers {
            out += &format!(
                "layer {:>2}: K_{{2,{}}} {}  G_{} {}\n",
                l.layer,
                l.layer - 2,
                yes(l.matches_k2),
                l.layer - 1,
                yes(l.matches_gn)
            );
        }
        out += &format!(
            "{} contractions; final complex is the cross-polytope boundary on {} pairs: {}\n",
            self.contractions,
            self.n - 1,
            yes(self.final_crosspolytope)
        );
        out
    }
}

fn at(v: &[BigInt], i: usize) -> BigInt {
    v.get(i).cloned().unwrap_or_default()
}

/// Contracts `Δ` along `{keep, remove}` and records every check.
fn contraction_step(
    delta: &SimplicialComplex,
    gamma_before: &[BigInt],
    keep: Label,
    remove: Label,
    step: usize,
    layer: usize,
    n: usize,
) -> Result<(SimplicialComplex, ContractionStep, Vec<BigInt>)> {
    let link = delta.link(&[keep, remove])?;
    let link_check = link.is_crosspolytope_boundary(n - 3);
    let next = delta.contract_edge(keep, remove)?;
    let f_vector = next.f_vector();
    let sphere_euler = 1 + if n % 2 == 0 { 1 } else { -1 };
    let gamma = next.gamma();
    let palindromic_check = gamma.is_ok();
    let gamma = gamma.unwrap_or_default();
    let gamma_relation_check = match link.gamma() {
        Ok(lg) => palindromic_check && at(gamma_before, 2) == at(&gamma, 2) + at(&lg, 1),
        Err(_) => false,
    };
    let record = ContractionStep {
        step,
        layer,
        kept: keep,
        removed: remove,
        link_check,
        flag_check: next.is_flag(),
        pseudomanifold_check: next.is_pseudomanifold() && next.dim() == n as i64 - 2,
        euler_check: next.euler_characteristic() == sphere_euler,
        palindromic_check,
        gamma_relation_check,
        vertices: next.vertex_count(),
        facets: next.facet_count(),
        f_vector,
        gamma: gamma.clone(),
    };
    Ok((next, record, gamma))
}

/// Runs the whole contraction chain on `Δ_{G_n}`, `5 ≤ n ≤ LUTZ_NEVO_MAX_N`.
/// Returns the report when every check passes, and otherwise the first
/// failing step.
pub fn lutz_nevo_run(n: usize) -> Result<LutzNevoReport> {
    let report = lutz_nevo_trace(n)?;
    if !report.initial_flag {
        return Err(Error::CheckFailed {
            step: 0,
            check: "flag".into(),
        });
    }
    for s in &report.steps {
        if let Some((name, _)) = s.checks().iter().find(|c| !c.1) {
            return Err(Error::CheckFailed {
                step: s.step,
                check: (*name).into(),
            });
        }
    }
    for l in &report.layers {
        if !(l.matches_k2 && l.matches_gn) {
            let step = 2 * (n - l.layer + 1);
            let check = if l.matches_k2 { "layer-gn" } else { "layer-k2" };
            return Err(Error::CheckFailed {
                step,
                check: check.into(),
            });
        }
    }
    if !report.final_crosspolytope {
        return Err(Error::CheckFailed {
            step: report.contractions,
            check: "final-crosspolytope".into(),
        });
    }
    Ok(report)
}

/// Like [`lutz_nevo_run`] but returns the report with failed checks marked
/// instead of an error.
pub fn lutz_nevo_trace(n: usize) -> Result<LutzNevoReport> {
    if !(5..=LUTZ_NEVO_MAX_N).contains(&n) {
        return Err(Error::Precondition(format!(
            "n must lie in 5..={LUTZ_NEVO_MAX_N}, got {n}"
        )));
    }
    let mut delta = delta_gn(n)?;
    let initial_flag = delta.is_flag();
    let initial_gamma = delta.gamma()?;
    let mut gamma = initial_gamma.clone();
    let mut steps = Vec::new();
    let mut layers = Vec::new();
    for c in (3..=n).rev() {
        let cu = c as u32;
        for (keep, remove) in [(Label(1, 2), Label(1, cu)), (Label(2, 1), Label(cu, 1))] {
            let (next, record, g) =
                contraction_step(&delta, &gamma, keep, remove, steps.len() + 1, c, n)?;
            steps.push(record);
            delta = next;
            gamma = g;
        }
        let k_side = suspend_layers(delta_k2(c)?, c + 1..=n)?;
        let g_side = suspend_layers(delta_gn(c - 1)?, c..=n)?;
        layers.push(LayerCheck {
            layer: c,
            matches_k2: delta.relabel(&xi(cu))? == k_side,
            matches_gn: delta == g_side,
        });
    }
    Ok(LutzNevoReport {
        n,
        initial_flag,
        initial_gamma,
        contractions: steps.len(),
        steps,
        layers,
        final_crosspolytope: delta.is_crosspolytope_boundary(n - 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::EdgeOrder;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_deltas() {
        let edge = Graph::from_one_indexed(2, [(1, 2)]).unwrap();
        let d = build_delta(&edge, &EdgeOrder::identity(1)).unwrap();
        assert_eq!(d.facet_count(), 2);
        assert!(d.is_crosspolytope_boundary(1));
        let g5 = delta_gn(5).unwrap();
        assert!(g5.is_flag());
        assert_eq!(g5.gamma().unwrap(), ints(&[1, 6, 0]));
    }

    #[test]
    fn k4_example_matches_gn() {
        let k = k4_example().unwrap();
        let g4 = delta_gn(4).unwrap();
        assert!(k.is_isomorphic(&g4));
        assert_eq!(k.relabel(&k4_example_map()).unwrap(), g4);
    }

    #[test]
    fn chain_for_five() {
        let r = lutz_nevo_run(5).unwrap();
        assert_eq!(r.contractions, 6);
        assert!(r.passed());
        assert!(lutz_nevo_run(4).is_err());
    }
}
