use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gamma::{f_to_h, h_to_gamma, is_palindromic};

/// Vertex label `e_{i,j} = e_i - e_j`, the oriented edge `i → j` (1-based).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(pub u32, pub u32);

impl Label {
    pub fn neg(self) -> Label {
        Label(self.1, self.0)
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{},{}", self.0, self.1)
    }
}

pub const MAX_VERTICES: usize = 128;

/// A simplicial complex stored by its facets, as bitmasks over at most 128
/// labeled vertices.
///
/// Normal form: labels sorted and all used, facets an antichain in sorted
/// order. Two complexes are equal exactly when they have the same labeled
/// faces. The complex `{∅}` has one empty facet; the void complex has none.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    labels: Vec<Label>,
    facets: Vec<u128>,
}

fn bit(i: usize) -> u128 {
    1u128 << i
}

fn members(mask: u128) -> impl Iterator<Item = usize> {
    let mut x = mask;
    std::iter::from_fn(move || {
        if x == 0 {
            None
        } else {
            let b = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(b)
        }
    })
}

/// Drops duplicates and faces contained in other faces.
fn antichain(mut faces: Vec<u128>) -> Vec<u128> {
    faces.sort_unstable_by_key(|f| std::cmp::Reverse(f.count_ones()));
    faces.dedup();
    let mut kept: Vec<u128> = Vec::with_capacity(faces.len());
    for f in faces {
        if !kept.iter().any(|&k| k & f == f) {
            kept.push(f);
        }
    }
    kept.sort_unstable();
    kept
}

impl SimplicialComplex {
    /// Builds the complex generated by the given faces (vertex indices into
    /// `labels`). Unused labels are dropped.
    pub fn from_faces(labels: Vec<Label>, faces: &[Vec<usize>]) -> Result<Self> {
        if labels.len() > MAX_VERTICES {
            return Err(Error::Precondition(format!(
                "{} vertices exceed the {MAX_VERTICES}-vertex limit",
                labels.len()
            )));
        }
        let unique: HashSet<Label> = labels.iter().copied().collect();
        if unique.len() != labels.len() {
            return Err(Error::Precondition("duplicate vertex labels".into()));
        }
        let mut masks = Vec::with_capacity(faces.len());
        for f in faces {
            let mut m = 0u128;
            for &v in f {
                if v >= labels.len() {
                    return Err(Error::Precondition(format!("vertex {v} has no label")));
                }
                m |= bit(v);
            }
            masks.push(m);
        }
        Ok(Self::normalize(labels, masks))
    }

    pub fn from_labeled_faces(faces: &[Vec<Label>]) -> Result<Self> {
        let mut labels: Vec<Label> = faces.iter().flatten().copied().collect();
        labels.sort_unstable();
        labels.dedup();
        let index: HashMap<Label, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let faces: Vec<Vec<usize>> = faces
            .iter()
            .map(|f| f.iter().map(|l| index[l]).collect())
            .collect();
        Self::from_faces(labels, &faces)
    }

    fn normalize(labels: Vec<Label>, facets: Vec<u128>) -> Self {
        let facets = antichain(facets);
        let used = facets.iter().fold(0u128, |a, &f| a | f);
        let mut order: Vec<usize> = members(used).collect();
        order.sort_by_key(|&v| labels[v]);
        let mut remap = vec![usize::MAX; labels.len()];
        for (new, &old) in order.iter().enumerate() {
            remap[old] = new;
        }
        let facets = facets
            .into_iter()
            .map(|f| members(f).fold(0u128, |a, v| a | bit(remap[v])))
            .collect();
        let labels = order.iter().map(|&v| labels[v]).collect();
        SimplicialComplex {
            labels,
            facets: antichain(facets),
        }
    }

    /// The two-point complex `⟨a, b⟩`.
    pub fn pair(a: Label, b: Label) -> Self {
        Self::from_labeled_faces(&[vec![a], vec![b]]).expect("two labels")
    }

    /// Boundary of the cross-polytope on the given antipodal pairs.
    pub fn crosspolytope(pairs: &[(Label, Label)]) -> Result<Self> {
        let mut k = Self::from_labeled_faces(&[vec![]])?;
        for &(a, b) in pairs {
            k = k.join(&Self::pair(a, b))?;
        }
        Ok(k)
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn facet_masks(&self) -> &[u128] {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn facets(&self) -> Vec<Vec<Label>> {
        self.facets
            .iter()
            .map(|&f| members(f).map(|v| self.labels[v]).collect())
            .collect()
    }

    /// `max |facet| - 1`; `-1` for `{∅}`.
    pub fn dim(&self) -> i64 {
        self.facets.iter().map(|f| f.count_ones() as i64).max().unwrap_or(0) - 1
    }

    pub fn index_of(&self, l: Label) -> Option<usize> {
        self.labels.binary_search(&l).ok()
    }

    pub fn mask_of(&self, face: &[Label]) -> Result<u128> {
        face.iter().try_fold(0u128, |acc, &l| {
            self.index_of(l)
                .map(|v| acc | bit(v))
                .ok_or_else(|| Error::Precondition(format!("{l} is not a vertex")))
        })
    }

    pub fn contains_mask(&self, face: u128) -> bool {
        self.facets.iter().any(|&f| f & face == face)
    }

    pub fn is_face(&self, face: &[Label]) -> bool {
        self.mask_of(face).is_ok_and(|m| self.contains_mask(m))
    }

    /// Every face, as masks.
    fn all_faces(&self) -> HashSet<u128> {
        let mut seen = HashSet::new();
        for &f in &self.facets {
            // subsets of f by the standard decrement trick
            let mut s = f;
            loop {
                seen.insert(s);
                if s == 0 {
                    break;
                }
                s = (s - 1) & f;
            }
        }
        seen
    }

    /// `f_{-1}, f_0, ..., f_{dim}`.
    pub fn f_vector(&self) -> Vec<BigInt> {
        if self.facets.is_empty() {
            return Vec::new();
        }
        let mut f = vec![0u64; (self.dim() + 2) as usize];
        for s in self.all_faces() {
            f[s.count_ones() as usize] += 1;
        }
        f.into_iter().map(BigInt::from).collect()
    }

    pub fn h_vector(&self) -> Result<Vec<BigInt>> {
        let f = self.f_vector();
        f_to_h(&f, f.len() - 1)
    }

    /// `Σ_{i≥0} (-1)^i f_i`.
    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .skip(1)
            .enumerate()
            .map(|(i, x)| {
                let x: i64 = x.try_into().expect("face counts fit in i64");
                if i % 2 == 0 {
                    x
                } else {
                    -x
                }
            })
            .sum()
    }

    /// Adjacency masks of the 1-skeleton.
    fn skeleton(&self) -> Vec<u128> {
        let mut adj = vec![0u128; self.labels.len()];
        for &f in &self.facets {
            for v in members(f) {
                adj[v] |= f & !bit(v);
            }
        }
        adj
    }

    /// Edges of the 1-skeleton as label pairs with the smaller label first.
    pub fn edges(&self) -> HashSet<(Label, Label)> {
        let adj = self.skeleton();
        let mut out = HashSet::new();
        for (v, &a) in adj.iter().enumerate() {
            for w in members(a).filter(|&w| w > v) {
                out.insert((self.labels[v], self.labels[w]));
            }
        }
        out
    }

    pub fn link(&self, face: &[Label]) -> Result<Self> {
        let m = self.mask_of(face)?;
        if !self.contains_mask(m) {
            return Err(Error::Precondition("link of a non-face".into()));
        }
        let facets = self
            .facets
            .iter()
            .filter(|&&f| f & m == m)
            .map(|&f| f & !m)
            .collect();
        Ok(Self::normalize(self.labels.clone(), facets))
    }

    /// `Δ/{keep, remove}`: `remove` is identified with `keep`, whose label
    /// survives.
    pub fn contract_edge(&self, keep: Label, remove: Label) -> Result<Self> {
        let (k, r) = (self.mask_of(&[keep])?, self.mask_of(&[remove])?);
        if k == r || !self.contains_mask(k | r) {
            return Err(Error::Precondition(format!("{{{keep}, {remove}}} is not an edge")));
        }
        let facets = self
            .facets
            .iter()
            .map(|&f| if f & r != 0 { (f & !r) | k } else { f })
            .collect();
        Ok(Self::normalize(self.labels.clone(), facets))
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        if self.labels.iter().any(|l| other.index_of(*l).is_some()) {
            return Err(Error::Precondition("join of complexes sharing a vertex".into()));
        }
        let shift = self.labels.len();
        if shift + other.labels.len() > MAX_VERTICES {
            return Err(Error::Precondition("join exceeds the vertex limit".into()));
        }
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&other.labels);
        let mut facets = Vec::with_capacity(self.facets.len() * other.facets.len());
        for &a in &self.facets {
            for &b in &other.facets {
                facets.push(a | (b << shift));
            }
        }
        Ok(Self::normalize(labels, facets))
    }

    pub fn suspension(&self, a: Label, b: Label) -> Result<Self> {
        self.join(&Self::pair(a, b))
    }

    /// Renames vertices; labels missing from `map` stay. Must stay injective.
    pub fn relabel(&self, map: &HashMap<Label, Label>) -> Result<Self> {
        let labels: Vec<Label> = self.labels.iter().map(|l| *map.get(l).unwrap_or(l)).collect();
        let unique: HashSet<Label> = labels.iter().copied().collect();
        if unique.len() != labels.len() {
            return Err(Error::Precondition("relabeling is not injective".into()));
        }
        Ok(Self::normalize(labels, self.facets.clone()))
    }

    /// Every clique of the 1-skeleton is a face; it suffices to check the
    /// maximal cliques.
    pub fn is_flag(&self) -> bool {
        let adj = self.skeleton();
        let all = if self.labels.len() == 128 {
            !0u128
        } else {
            bit(self.labels.len()) - 1
        };
        let mut ok = true;
        self.maximal_cliques(&adj, 0, all, 0, &mut |c| {
            if !self.contains_mask(c) {
                ok = false;
            }
            ok
        });
        ok
    }

    // Bron–Kerbosch with pivoting; `visit` returns false to stop.
    fn maximal_cliques(
        &self,
        adj: &[u128],
        r: u128,
        mut p: u128,
        mut x: u128,
        visit: &mut dyn FnMut(u128) -> bool,
    ) -> bool {
        if p == 0 && x == 0 {
            return visit(r);
        }
        let pivot = members(p | x)
            .max_by_key(|&u| (adj[u] & p).count_ones())
            .expect("p or x is non-empty");
        for v in members(p & !adj[pivot]) {
            if !self.maximal_cliques(adj, r | bit(v), p & adj[v], x & adj[v], visit) {
                return false;
            }
            p &= !bit(v);
            x |= bit(v);
        }
        true
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.facets.iter().all(|f| f.count_ones() as i64 == d + 1)
    }

    /// Pure, and every codimension-one face lies in exactly two facets.
    pub fn is_pseudomanifold(&self) -> bool {
        if !self.is_pure() || self.dim() < 1 {
            return self.is_pure();
        }
        let mut ridges: HashMap<u128, u32> = HashMap::new();
        for &f in &self.facets {
            for v in members(f) {
                *ridges.entry(f & !bit(v)).or_insert(0) += 1;
            }
        }
        ridges.values().all(|&c| c == 2)
    }

    /// The boundary of the cross-polytope with `d` antipodal pairs: `2d`
    /// vertices whose non-adjacency is a perfect matching, flag, `2^d` facets.
    pub fn is_crosspolytope_boundary(&self, d: usize) -> bool {
        if self.labels.len() != 2 * d || d >= 64 || self.facets.len() != 1usize << d {
            return false;
        }
        let adj = self.skeleton();
        for v in 0..self.labels.len() {
            let non = !adj[v] & !bit(v) & (bit(self.labels.len()) - 1);
            if non.count_ones() != 1 {
                return false;
            }
            let w = non.trailing_zeros() as usize;
            if adj[w] & bit(v) != 0 {
                return false;
            }
        }
        self.is_flag()
    }

    /// γ-vector through `f → h → γ`; fails when `h` is not palindromic.
    pub fn gamma(&self) -> Result<Vec<BigInt>> {
        let h = self.h_vector()?;
        if !is_palindromic(&h) {
            return Err(Error::NotPalindromic(format!(
                "h = {:?}",
                h.iter().map(|x| x.to_string()).collect::<Vec<_>>()
            )));
        }
        h_to_gamma(&h)
    }

    /// A vertex bijection mapping `self` onto `other`, if the two are
    /// isomorphic. Backtracking over vertices, pruned by degree, facet
    /// incidence and adjacency to already-placed vertices.
    pub fn isomorphism(&self, other: &Self) -> Option<Vec<usize>> {
        let n = self.labels.len();
        if n != other.labels.len() || self.facets.len() != other.facets.len() {
            return None;
        }
        let (adj_a, adj_b) = (self.skeleton(), other.skeleton());
        let signature = |k: &Self, adj: &[u128], v: usize| {
            let inc = k.facets.iter().filter(|&&f| f & bit(v) != 0).count();
            (adj[v].count_ones(), inc)
        };
        let sig_a: Vec<_> = (0..n).map(|v| signature(self, &adj_a, v)).collect();
        let sig_b: Vec<_> = (0..n).map(|v| signature(other, &adj_b, v)).collect();
        let mut sa = sig_a.clone();
        let mut sb = sig_b.clone();
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return None;
        }
        let target: HashSet<u128> = other.facets.iter().copied().collect();
        // place most constrained vertices first: BFS order by degree
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(sig_a[v]));
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn go(
            i: usize,
            order: &[usize],
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
            ctx: &(&[u128], &[u128], &[(u32, usize)], &[(u32, usize)]),
            check: &dyn Fn(&[usize]) -> bool,
        ) -> bool {
            let (adj_a, adj_b, sig_a, sig_b) = *ctx;
            if i == order.len() {
                return check(map);
            }
            let v = order[i];
            for w in 0..order.len() {
                if used[w] || sig_a[v] != sig_b[w] {
                    continue;
                }
                let consistent = order[..i].iter().all(|&u| {
                    let a = adj_a[v] & bit(u) != 0;
                    let b = adj_b[w] & bit(map[u]) != 0;
                    a == b
                });
                if !consistent {
                    continue;
                }
                map[v] = w;
                used[w] = true;
                if go(i + 1, order, map, used, ctx, check) {
                    return true;
                }
                used[w] = false;
                map[v] = usize::MAX;
            }
            false
        }
        let check = |map: &[usize]| {
            self.facets.iter().all(|&f| {
                let img = members(f).fold(0u128, |a, v| a | bit(map[v]));
                target.contains(&img)
            })
        };
        let ctx = (&adj_a[..], &adj_b[..], &sig_a[..], &sig_b[..]);
        go(0, &order, &mut map, &mut used, &ctx, &check).then_some(map)
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.isomorphism(other).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(i: u32, j: u32) -> Label {
        Label(i, j)
    }

    fn octahedron_pairs(d: u32) -> Vec<(Label, Label)> {
        (1..=d).map(|i| (l(i, 0), l(0, i))).collect()
    }

    #[test]
    fn crosspolytopes() {
        for d in 0..6 {
            let k = SimplicialComplex::crosspolytope(&octahedron_pairs(d as u32)).unwrap();
            assert!(k.is_crosspolytope_boundary(d));
            assert!(k.is_flag());
            assert_eq!(k.gamma().unwrap()[0], BigInt::from(1));
            assert!(k.gamma().unwrap()[1..].iter().all(|x| *x == BigInt::from(0)));
            if d >= 1 {
                let link = k.link(&[l(1, 0)]).unwrap();
                assert!(link.is_crosspolytope_boundary(d - 1));
            }
        }
        let k = SimplicialComplex::crosspolytope(&octahedron_pairs(3)).unwrap();
        let mut facets = k.facets();
        facets.pop();
        let broken = SimplicialComplex::from_labeled_faces(&facets).unwrap();
        assert!(!broken.is_crosspolytope_boundary(3));
        let facet = &k.facets()[0];
        let link = k.link(facet).unwrap();
        assert_eq!(link.facet_count(), 1);
        assert_eq!(link.dim(), -1);
    }

    #[test]
    fn hollow_triangle_is_not_flag() {
        let t = SimplicialComplex::from_labeled_faces(&[
            vec![l(1, 2), l(2, 3)],
            vec![l(2, 3), l(3, 1)],
            vec![l(1, 2), l(3, 1)],
        ])
        .unwrap();
        assert!(!t.is_flag());
        assert_eq!(t.euler_characteristic(), 0);
        assert!(t.is_pseudomanifold());
    }

    #[test]
    fn square_contracts_to_triangle() {
        let sq = SimplicialComplex::crosspolytope(&octahedron_pairs(2)).unwrap();
        let c = sq.contract_edge(l(1, 0), l(2, 0)).unwrap();
        assert_eq!(c.vertex_count(), 3);
        assert_eq!(c.facet_count(), 3);
        assert!(!c.is_flag());
        assert!(sq.contract_edge(l(1, 0), l(0, 1)).is_err());
    }

    #[test]
    fn normal_form_and_relabel() {
        let a = SimplicialComplex::from_labeled_faces(&[vec![l(1, 2), l(2, 1)], vec![l(1, 2)]]).unwrap();
        assert_eq!(a.facet_count(), 1);
        let map: HashMap<Label, Label> = [(l(1, 2), l(5, 5))].into_iter().collect();
        let b = a.relabel(&map).unwrap();
        assert!(b.is_face(&[l(5, 5), l(2, 1)]));
        let clash: HashMap<Label, Label> = [(l(1, 2), l(2, 1))].into_iter().collect();
        assert!(a.relabel(&clash).is_err());
    }

    #[test]
    fn isomorphism_search() {
        let k = SimplicialComplex::crosspolytope(&octahedron_pairs(3)).unwrap();
        let map: HashMap<Label, Label> =
            k.labels().iter().map(|&x| (x, Label(x.0 + 10, x.1 + 20))).collect();
        let k2 = k.relabel(&map).unwrap();
        assert!(k.is_isomorphic(&k2));
        let t = SimplicialComplex::crosspolytope(&octahedron_pairs(2)).unwrap();
        let susp = t.suspension(l(7, 0), l(0, 7)).unwrap();
        assert!(susp.is_isomorphic(&k));
        let other = k.contract_edge(l(1, 0), l(2, 0)).unwrap();
        assert!(!other.is_isomorphic(&k));
    }
}
