//! f-, h- and γ-vectors of symmetric edge polytopes.
//!
//! Vectors are indexed from zero: `f[i]` is `f_{i-1}`, the number of faces
//! with `i` vertices, and `h`, `γ` use their usual indices. The dimension
//! `d` of the polytope is `n - c` for a graph with `c` components; the
//! boundary complex then has `d` vertices per facet.
//!
//! Joins multiply h-polynomials, and a product of palindromic polynomials
//! written in the `t^i (1+t)^{d-2i}` basis multiplies coordinatewise as
//! polynomials in `t`. So γ-polynomials of components and of blocks
//! simply multiply.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Graph, Subgraph};
use crate::numeric::{binomial, binomial_i, poly_mul};
use crate::triangulation::{bad_pair_count, enumerate_faces_with, Caps, EdgeOrder, Mode};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    FullEnumeration,
    TruncatedRecursion,
    BlockProduct,
    ClosedForm,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::FullEnumeration => "full-enumeration",
            Method::TruncatedRecursion => "truncated-recursion",
            Method::BlockProduct => "block-product",
            Method::ClosedForm => "closed-form",
        }
    }

    pub fn parse(s: &str) -> Result<Method> {
        match s {
            "full" | "full-enumeration" => Ok(Method::FullEnumeration),
            "truncated" | "truncated-recursion" => Ok(Method::TruncatedRecursion),
            "blocks" | "block-product" => Ok(Method::BlockProduct),
            "closed" | "closed-form" => Ok(Method::ClosedForm),
            _ => Err(Error::Parse(format!("unknown method {s:?}"))),
        }
    }
}

pub(crate) fn decimal_strings<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaReport {
    pub n: usize,
    pub m: usize,
    pub dim: usize,
    /// `f_{-1}, f_0, ...`; a prefix when truncated.
    #[serde(serialize_with = "decimal_strings")]
    pub f: Vec<BigInt>,
    #[serde(serialize_with = "decimal_strings")]
    pub h: Vec<BigInt>,
    #[serde(serialize_with = "decimal_strings")]
    pub gamma: Vec<BigInt>,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order_seed: Option<u64>,
}

impl GammaReport {
    /// True when `gamma` runs up to `⌊dim/2⌋`.
    pub fn is_complete(&self) -> bool {
        self.gamma.len() == self.dim / 2 + 1
    }

    pub fn gamma_at(&self, i: usize) -> BigInt {
        self.gamma.get(i).cloned().unwrap_or_default()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// Fills `f` and `h` from a complete γ-vector.
    fn from_gamma(g: &Graph, dim: usize, gamma: Vec<BigInt>, method: Method) -> Self {
        let h = gamma_to_h(&gamma, dim);
        let f = h_to_f(&h, dim);
        GammaReport {
            n: g.n(),
            m: g.m(),
            dim,
            f,
            h,
            gamma,
            method,
            order_seed: None,
        }
    }

    /// Prefix report from a γ prefix `γ_0..γ_k`.
    fn from_gamma_prefix(g: &Graph, dim: usize, gamma: Vec<BigInt>, method: Method) -> Self {
        let k = gamma.len() - 1;
        let h = gamma_to_h(&gamma, dim)[..=k].to_vec();
        let f = h_to_f(&gamma_to_h(&gamma, dim), dim)[..=k].to_vec();
        GammaReport {
            n: g.n(),
            m: g.m(),
            dim,
            f,
            h,
            gamma,
            method,
            order_seed: None,
        }
    }
}

pub fn polytope_dim(g: &Graph) -> usize {
    g.n() - g.component_count()
}

fn to_int(v: &[BigUint]) -> Vec<BigInt> {
    v.iter().map(|x| BigInt::from(x.clone())).collect()
}

/// `h_j = Σ_{i≤j} (-1)^{j-i} C(d-i, j-i) f_{i-1}`. A prefix of `f` gives the
/// matching prefix of `h`.
pub fn f_to_h(f: &[BigInt], d: usize) -> Result<Vec<BigInt>> {
    if f.is_empty() || f.len() > d + 1 {
        return Err(Error::Precondition(format!(
            "f-vector of length {} does not fit dimension {d}",
            f.len()
        )));
    }
    if !f[0].is_one() {
        return Err(Error::Precondition("f_{-1} must be 1".into()));
    }
    Ok((0..f.len())
        .map(|j| {
            let mut h = BigInt::zero();
            for (i, fi) in f.iter().enumerate().take(j + 1) {
                let term = BigInt::from(binomial(d - i, j - i)) * fi;
                if (j - i) % 2 == 0 {
                    h += term;
                } else {
                    h -= term;
                }
            }
            h
        })
        .collect())
}

/// `f_{j-1} = Σ_{i≤j} C(d-i, j-i) h_i`.
pub fn h_to_f(h: &[BigInt], d: usize) -> Vec<BigInt> {
    (0..h.len())
        .map(|j| {
            h.iter()
                .enumerate()
                .take(j + 1)
                .map(|(i, hi)| BigInt::from(binomial(d - i, j - i)) * hi)
                .sum()
        })
        .collect()
}

pub fn is_palindromic(h: &[BigInt]) -> bool {
    h.iter().eq(h.iter().rev())
}

/// Coordinates of a palindromic `h` in the basis `t^i (1+t)^{d-2i}`, with
/// `d = len - 1`.
pub fn h_to_gamma(h: &[BigInt]) -> Result<Vec<BigInt>> {
    if h.is_empty() {
        return Err(Error::Precondition("empty h-vector".into()));
    }
    if !is_palindromic(h) {
        return Err(Error::NotPalindromic(format!("{:?}", display(h))));
    }
    let d = h.len() - 1;
    let mut rest = h.to_vec();
    let mut gamma = Vec::with_capacity(d / 2 + 1);
    for i in 0..=d / 2 {
        let g = rest[i].clone();
        if !g.is_zero() {
            for j in 0..=d - 2 * i {
                rest[i + j] -= &g * BigInt::from(binomial(d - 2 * i, j));
            }
        }
        gamma.push(g);
    }
    debug_assert!(rest.iter().all(Zero::is_zero));
    Ok(gamma)
}

/// `h` of dimension `d` from (a prefix of) γ; missing entries count as zero.
pub fn gamma_to_h(gamma: &[BigInt], d: usize) -> Vec<BigInt> {
    let mut h = vec![BigInt::zero(); d + 1];
    for (i, g) in gamma.iter().enumerate().take(d / 2 + 1) {
        for j in 0..=d - 2 * i {
            h[i + j] += g * BigInt::from(binomial(d - 2 * i, j));
        }
    }
    h
}

fn display(v: &[BigInt]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

/// `[t^{d-k}] (t+1)^i (t+2)^{d-2i}`.
fn recursion_coefficient(d: usize, k: usize, i: usize) -> BigInt {
    let (d, k, i) = (d as i64, k as i64, i as i64);
    let mut c = BigInt::zero();
    for j in 0..=(d - 2 * i) {
        let a = binomial_i(i, d - k - j);
        if a.is_zero() {
            continue;
        }
        c += a * binomial_i(d - 2 * i, j) * (BigInt::one() << (d - 2 * i - j) as usize);
    }
    c
}

/// `γ_0..γ_k` from `f_{-1}..f_{k-1}`:
/// `γ_k = f_{k-1} - [t^{d-k}] Σ_{i<k} γ_i (t+1)^i (t+2)^{d-2i}`.
pub fn gamma_from_f_prefix(f: &[BigInt], d: usize) -> Result<Vec<BigInt>> {
    if f.is_empty() || f.len() > d / 2 + 1 {
        return Err(Error::Precondition(format!(
            "need 1..={} f-entries for dimension {d}, got {}",
            d / 2 + 1,
            f.len()
        )));
    }
    let mut gamma: Vec<BigInt> = Vec::with_capacity(f.len());
    for k in 0..f.len() {
        let mut g = f[k].clone();
        for (i, gi) in gamma.iter().enumerate() {
            g -= gi * recursion_coefficient(d, k, i);
        }
        gamma.push(g);
    }
    Ok(gamma)
}

/// The order restricted to a subgraph's edges, keeping relative ranks.
pub fn restrict_order(order: &EdgeOrder, sub: &Subgraph) -> EdgeOrder {
    let mut local: Vec<usize> = (0..sub.edges.len()).collect();
    local.sort_by_key(|&i| order.rank(sub.edges[i]));
    EdgeOrder::from_sequence(&local).expect("restriction of a permutation")
}

fn truncate(mut p: Vec<BigInt>, len: usize) -> Vec<BigInt> {
    p.resize(len, BigInt::zero());
    p
}

/// γ-vector of a connected graph from its full f-vector.
fn gamma_connected(g: &Graph, order: &EdgeOrder, caps: Caps) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    let rep = enumerate_faces_with(g, order, Mode::Full, caps)?;
    let f = to_int(&rep.f);
    let h = f_to_h(&f, g.n() - 1)?;
    Ok((h_to_gamma(&h)?, f))
}

pub fn gamma_full(g: &Graph) -> Result<GammaReport> {
    gamma_full_ordered(g, &EdgeOrder::identity(g.m()), Caps::default())
}

/// Full enumeration of every component; component γ-polynomials multiply.
pub fn gamma_full_ordered(g: &Graph, order: &EdgeOrder, caps: Caps) -> Result<GammaReport> {
    let dim = polytope_dim(g);
    if g.is_connected() && g.n() > 0 {
        let (gamma, f) = gamma_connected(g, order, caps)?;
        let h = f_to_h(&f, dim)?;
        return Ok(GammaReport {
            n: g.n(),
            m: g.m(),
            dim,
            f,
            h,
            gamma,
            method: Method::FullEnumeration,
            order_seed: None,
        });
    }
    let mut gamma = vec![BigInt::one()];
    for comp in g.connected_components() {
        let (gc, _) = gamma_connected(&comp.graph, &restrict_order(order, &comp), caps)?;
        gamma = poly_mul(&gamma, &gc);
    }
    Ok(GammaReport::from_gamma(
        g,
        dim,
        truncate(gamma, dim / 2 + 1),
        Method::FullEnumeration,
    ))
}

pub fn gamma_truncated(g: &Graph, k: usize) -> Result<GammaReport> {
    gamma_truncated_ordered(g, k, &EdgeOrder::identity(g.m()), Caps::default())
}

/// `γ_0..γ_k` through the face-number recursion, which only needs faces
/// with at most `k` vertices. Components are handled separately and their
/// truncated γ-polynomials multiplied.
pub fn gamma_truncated_ordered(
    g: &Graph,
    k: usize,
    order: &EdgeOrder,
    caps: Caps,
) -> Result<GammaReport> {
    let dim = polytope_dim(g);
    if k > dim / 2 {
        return Err(Error::Precondition(format!(
            "γ_{k} is beyond ⌊dim/2⌋ = {} for this graph",
            dim / 2
        )));
    }
    let mut gamma = vec![BigInt::one()];
    for comp in g.connected_components() {
        let d = comp.graph.n() - 1;
        let kc = k.min(d / 2);
        if kc == 0 {
            continue;
        }
        let sub_order = restrict_order(order, &comp);
        let rep = enumerate_faces_with(&comp.graph, &sub_order, Mode::UpTo(kc), caps)?;
        let gc = gamma_from_f_prefix(&to_int(&rep.f), d)?;
        gamma = truncate(poly_mul(&gamma, &gc), k + 1);
    }
    let gamma = truncate(gamma, k + 1);
    Ok(GammaReport::from_gamma_prefix(
        g,
        dim,
        gamma,
        Method::TruncatedRecursion,
    ))
}

pub fn gamma1(g: &Graph) -> BigInt {
    BigInt::from(2 * g.cyclomatic_number())
}

/// `2 cy (cy + 2) - n₁`, with `n₁` the number of bad pairs.
pub fn gamma2(g: &Graph, order: &EdgeOrder) -> Result<BigInt> {
    let cy = BigInt::from(g.cyclomatic_number());
    let n1 = BigInt::from(bad_pair_count(g, order)?);
    Ok(BigInt::from(2) * &cy * (&cy + 2) - n1)
}

pub fn gamma_via_blocks(g: &Graph, k: Option<usize>) -> Result<GammaReport> {
    gamma_via_blocks_ordered(g, k, &EdgeOrder::identity(g.m()), Caps::default())
}

/// Product of the γ-polynomials of all blocks. With `k`, each block uses the
/// truncated recursion and the result is `γ_0..γ_k`; otherwise blocks are
/// enumerated fully.
pub fn gamma_via_blocks_ordered(
    g: &Graph,
    k: Option<usize>,
    order: &EdgeOrder,
    caps: Caps,
) -> Result<GammaReport> {
    let dim = polytope_dim(g);
    let len = match k {
        Some(k) if k > dim / 2 => {
            return Err(Error::Precondition(format!(
                "γ_{k} is beyond ⌊dim/2⌋ = {}",
                dim / 2
            )))
        }
        Some(k) => k + 1,
        None => dim / 2 + 1,
    };
    let decomposition = g.blocks();
    let mut gamma = vec![BigInt::one()];
    for block in decomposition.subgraphs(g) {
        if block.graph.m() == 1 {
            continue;
        }
        let sub_order = restrict_order(order, &block);
        let d = block.graph.n() - 1;
        let gb = match k {
            Some(k) => {
                let kb = k.min(d / 2);
                let rep = enumerate_faces_with(&block.graph, &sub_order, Mode::UpTo(kb), caps)?;
                gamma_from_f_prefix(&to_int(&rep.f), d)?
            }
            None => gamma_connected(&block.graph, &sub_order, caps)?.0,
        };
        gamma = truncate(poly_mul(&gamma, &gb), len);
    }
    let gamma = truncate(gamma, len);
    Ok(if k.is_some() {
        GammaReport::from_gamma_prefix(g, dim, gamma, Method::BlockProduct)
    } else {
        GammaReport::from_gamma(g, dim, gamma, Method::BlockProduct)
    })
}

/// `γ_i(K_n) = C(n-1, 2i) C(2i, i)`.
pub fn closed_form_kn(n: usize, i: usize) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    binomial(n - 1, 2 * i) * binomial(2 * i, i)
}

/// `γ_i(K_{a,b}) = C(a-1, i) C(b-1, i) C(2i, i)`.
pub fn closed_form_kmn(a: usize, b: usize, i: usize) -> BigUint {
    if a == 0 || b == 0 {
        return BigUint::zero();
    }
    binomial(a - 1, i) * binomial(b - 1, i) * binomial(2 * i, i)
}

/// Recognizes `K_n` (`Some(n)`) on all vertices.
pub fn as_complete(g: &Graph) -> Option<usize> {
    let n = g.n();
    (n >= 1 && g.m() == n * (n - 1) / 2).then_some(n)
}

/// Recognizes a complete bipartite graph on all vertices, returning the
/// side sizes with the smaller first.
pub fn as_complete_bipartite(g: &Graph) -> Option<(usize, usize)> {
    if g.n() < 2 || !g.is_connected() {
        return None;
    }
    let color = g.bipartition()?;
    let a = color.iter().filter(|&&c| c == 0).count();
    let b = g.n() - a;
    (g.m() == a * b).then_some((a.min(b), a.max(b)))
}

/// Closed-form report for complete and complete bipartite graphs.
pub fn gamma_closed_form(g: &Graph) -> Option<GammaReport> {
    let dim = polytope_dim(g);
    let coeffs: Vec<BigUint> = if let Some(n) = as_complete(g) {
        (0..=dim / 2).map(|i| closed_form_kn(n, i)).collect()
    } else if let Some((a, b)) = as_complete_bipartite(g) {
        (0..=dim / 2).map(|i| closed_form_kmn(a, b, i)).collect()
    } else {
        return None;
    };
    Some(GammaReport::from_gamma(
        g,
        dim,
        to_int(&coeffs),
        Method::ClosedForm,
    ))
}

/// Picks the cheapest applicable method: closed form, then block product
/// (for graphs with several blocks), then the truncated recursion (when
/// `k` is below `⌊dim/2⌋`), then full enumeration. `forced` overrides.
pub fn gamma_auto(
    g: &Graph,
    k: Option<usize>,
    order_seed: Option<u64>,
    forced: Option<Method>,
    caps: Caps,
) -> Result<GammaReport> {
    let dim = polytope_dim(g);
    if let Some(k) = k {
        if k > dim / 2 {
            return Err(Error::Precondition(format!(
                "γ_{k} is beyond ⌊dim/2⌋ = {}",
                dim / 2
            )));
        }
    }
    let order = match order_seed {
        Some(s) => EdgeOrder::shuffled(g.m(), s),
        None => EdgeOrder::identity(g.m()),
    };
    let cyclic_blocks = g.blocks().blocks.iter().filter(|b| b.len() > 1).count();
    let method = forced.unwrap_or_else(|| {
        if gamma_closed_form(g).is_some() {
            Method::ClosedForm
        } else if cyclic_blocks > 1 || g.blocks().len() > cyclic_blocks {
            Method::BlockProduct
        } else if k.is_some_and(|k| k < dim / 2) {
            Method::TruncatedRecursion
        } else {
            Method::FullEnumeration
        }
    });
    let mut rep = match method {
        Method::ClosedForm => gamma_closed_form(g).ok_or_else(|| {
            Error::Precondition("closed form needs a complete or complete bipartite graph".into())
        })?,
        Method::BlockProduct => gamma_via_blocks_ordered(g, k, &order, caps)?,
        Method::TruncatedRecursion => {
            gamma_truncated_ordered(g, k.unwrap_or(dim / 2), &order, caps)?
        }
        Method::FullEnumeration => gamma_full_ordered(g, &order, caps)?,
    };
    if let Some(k) = k {
        if rep.gamma.len() > k + 1 {
            rep.gamma.truncate(k + 1);
            rep.h.truncate(k + 1);
            rep.f.truncate(k + 1);
        }
    }
    if method != Method::ClosedForm {
        rep.order_seed = order_seed;
    }
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Gamma2Witness {
    /// No block has a cycle.
    Forest,
    /// The only cyclic block has fewer than five vertices.
    SmallBlock { vertices: usize },
    /// The only cyclic block is `G_n`.
    GnBlock { n: usize },
    /// The only cyclic block is `K_{2,n-2}`.
    K2Block { n: usize },
    /// Two cyclic blocks contribute `4 cy_i cy_j > 0`.
    SeveralCyclicBlocks { count: usize },
    /// A single cyclic block on at least five vertices outside both families.
    ObstructingBlock { vertices: usize, edges: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gamma2Verdict {
    pub zero: bool,
    pub witness: Gamma2Witness,
}

/// Decides `γ₂ = 0` from the block structure alone.
pub fn classify_gamma2_zero(g: &Graph) -> Gamma2Verdict {
    let cyclic: Vec<Subgraph> = g
        .blocks()
        .subgraphs(g)
        .into_iter()
        .filter(|b| b.graph.m() > 1)
        .collect();
    let (zero, witness) = match cyclic.as_slice() {
        [] => (true, Gamma2Witness::Forest),
        [h] => {
            let (nv, m) = (h.graph.n(), h.graph.m());
            if nv < 5 {
                (true, Gamma2Witness::SmallBlock { vertices: nv })
            } else if h.graph.is_iso_gn() {
                (true, Gamma2Witness::GnBlock { n: nv })
            } else if h.graph.is_iso_k2m() {
                (true, Gamma2Witness::K2Block { n: nv })
            } else {
                (false, Gamma2Witness::ObstructingBlock { vertices: nv, edges: m })
            }
        }
        many => (false, Gamma2Witness::SeveralCyclicBlocks { count: many.len() }),
    };
    Gamma2Verdict { zero, witness }
}

/// Whether every entry is nonnegative.
pub fn is_nonnegative(v: &[BigInt]) -> bool {
    v.iter().all(|x| !x.is_negative())
}
