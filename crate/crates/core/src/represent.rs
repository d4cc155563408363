//! d-representations: tuples of linear orders on a common ground set, the
//! complex Σ(R) of sets dominated by every element, and constructive
//! witnesses for the path lemmas used by the realizability proofs.
//!
//! Order indices in this API are 0-based: order `i` is the `(i+1)`-th order
//! of the representation.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::complex::{Face, SimplicialComplex, VertexId};
use crate::error::{Error, Result};

/// `d` linear orders over the same elements, each stored both as the ascending
/// sequence and as a rank table for O(1) comparisons.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RepresentationJson", into = "RepresentationJson")]
pub struct Representation {
    elements: Vec<VertexId>,
    index: BTreeMap<VertexId, usize>,
    orders: Vec<Vec<usize>>,
    rank: Vec<Vec<usize>>,
}

impl Representation {
    /// Builds a representation from orders listed in increasing order.
    pub fn new(orders: Vec<Vec<VertexId>>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::InvalidRepresentation("need at least one order (d >= 1)".into()));
        }
        let mut elements = orders[0].clone();
        elements.sort();
        for w in elements.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateVertex(w[0].to_string()));
            }
        }
        let index: BTreeMap<VertexId, usize> = elements.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let n = elements.len();
        let mut idx_orders = Vec::with_capacity(orders.len());
        let mut rank = Vec::with_capacity(orders.len());
        for (i, order) in orders.iter().enumerate() {
            if order.len() != n {
                return Err(Error::InvalidRepresentation(format!(
                    "order {} has {} elements, expected {n}",
                    i + 1,
                    order.len()
                )));
            }
            let mut r = vec![usize::MAX; n];
            let mut seq = Vec::with_capacity(n);
            for (pos, v) in order.iter().enumerate() {
                let &k = index.get(v).ok_or_else(|| {
                    Error::InvalidRepresentation(format!("order {} mentions unknown element `{v}`", i + 1))
                })?;
                if r[k] != usize::MAX {
                    return Err(Error::InvalidRepresentation(format!("order {} repeats element `{v}`", i + 1)));
                }
                r[k] = pos;
                seq.push(k);
            }
            idx_orders.push(seq);
            rank.push(r);
        }
        Ok(Self { elements, index, orders: idx_orders, rank })
    }

    /// Convenience constructor from string labels.
    pub fn from_labels(orders: &[&[&str]]) -> Result<Self> {
        let orders = orders
            .iter()
            .map(|o| o.iter().map(|s| VertexId::new(*s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(orders)
    }

    /// Number of orders.
    pub fn d(&self) -> usize {
        self.orders.len()
    }

    /// The ground set, sorted by label.
    pub fn elements(&self) -> &[VertexId] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Order `i`, smallest element first.
    pub fn order(&self, i: usize) -> Vec<VertexId> {
        self.orders[i].iter().map(|&k| self.elements[k].clone()).collect()
    }

    pub fn orders(&self) -> Vec<Vec<VertexId>> {
        (0..self.d()).map(|i| self.order(i)).collect()
    }

    pub fn index_of(&self, v: &VertexId) -> Result<usize> {
        self.index.get(v).copied().ok_or_else(|| Error::UnknownVertex(v.to_string()))
    }

    pub(crate) fn element(&self, k: usize) -> &VertexId {
        &self.elements[k]
    }

    /// Position of element index `k` in order `i` (0 = smallest).
    pub(crate) fn rank(&self, i: usize, k: usize) -> usize {
        self.rank[i][k]
    }

    /// Position of `v` in order `i` (0 = smallest).
    pub fn position(&self, i: usize, v: &VertexId) -> Result<usize> {
        self.check_order(i)?;
        Ok(self.rank[i][self.index_of(v)?])
    }

    /// `x <=_i y`.
    pub fn le(&self, i: usize, x: &VertexId, y: &VertexId) -> Result<bool> {
        Ok(self.position(i, x)? <= self.position(i, y)?)
    }

    fn check_order(&self, i: usize) -> Result<()> {
        if i >= self.d() {
            return Err(Error::Precondition(format!("order index {i} out of range (d = {})", self.d())));
        }
        Ok(())
    }

    fn face_indices(&self, f: &Face) -> Result<Vec<usize>> {
        f.vertices().iter().map(|v| self.index_of(v)).collect()
    }

    fn face_of(&self, idx: &[usize]) -> Face {
        let mut v: Vec<VertexId> = idx.iter().map(|&k| self.elements[k].clone()).collect();
        v.sort();
        Face::from_sorted(v)
    }

    /// Does element `x` dominate the index set `f` in some order?
    pub(crate) fn dominates_idx(&self, x: usize, f: &[usize]) -> bool {
        self.rank.iter().any(|r| f.iter().all(|&k| r[k] <= r[x]))
    }

    /// Is the index set `f` dominated by every element?
    pub(crate) fn in_sigma_idx(&self, f: &[usize]) -> bool {
        if f.is_empty() {
            return true;
        }
        let tops: Vec<usize> = self.rank.iter().map(|r| f.iter().map(|&k| r[k]).max().unwrap()).collect();
        (0..self.len()).all(|v| self.rank.iter().zip(&tops).any(|(r, &t)| r[v] >= t))
    }

    /// True iff `x` dominates `f` in at least one order.
    pub fn dominates(&self, x: &VertexId, f: &Face) -> Result<bool> {
        let x = self.index_of(x)?;
        Ok(self.dominates_idx(x, &self.face_indices(f)?))
    }

    /// Is `f` a face of Σ(R)?
    pub fn is_face(&self, f: &Face) -> Result<bool> {
        Ok(self.in_sigma_idx(&self.face_indices(f)?))
    }

    /// The faces of Σ(R) as sorted index sets, level by level. Faces have at
    /// most `d` elements, and Σ(R) is downward closed, so every face of size
    /// `k + 1` extends a face of size `k` by a larger index.
    pub(crate) fn sigma_indices(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut all = vec![Vec::new()];
        let mut level: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..self.d() {
            let mut next = Vec::new();
            for f in &level {
                let start = f.last().map_or(0, |&l| l + 1);
                for u in start..n {
                    let mut g = f.clone();
                    g.push(u);
                    if self.in_sigma_idx(&g) {
                        next.push(g);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            all.extend(next.iter().cloned());
            level = next;
        }
        all
    }

    /// Σ(R): every subset of the ground set dominated by every element.
    pub fn sigma(&self) -> SimplicialComplex {
        let faces: BTreeSet<Face> = self.sigma_indices().iter().map(|f| self.face_of(f)).collect();
        SimplicialComplex::from_closed_family(self.elements.iter().cloned().collect(), faces)
    }

    /// `{x}` is a face of Σ(R).
    pub fn is_vertex(&self, x: &VertexId) -> Result<bool> {
        Ok(self.in_sigma_idx(&[self.index_of(x)?]))
    }

    /// Edges of Σ(R) as index pairs `(u, v)` with `u < v`.
    pub(crate) fn edge_indices(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if self.in_sigma_idx(&[u, v]) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.len()];
        for (u, v) in self.edge_indices() {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Transposes the consecutive elements `x` and `y` in order `i`.
    ///
    /// Requires both to be vertices of Σ(R) and `{x, y}` not to be an edge;
    /// under those conditions Σ is unchanged and every edge keeps the
    /// relative order of its endpoints in every order.
    pub fn swap_consecutive(&self, i: usize, x: &VertexId, y: &VertexId) -> Result<Representation> {
        self.check_order(i)?;
        let (xi, yi) = (self.index_of(x)?, self.index_of(y)?);
        if xi == yi {
            return Err(Error::Precondition(format!("`{x}` and `{y}` are the same element")));
        }
        for (v, k) in [(x, xi), (y, yi)] {
            if !self.in_sigma_idx(&[k]) {
                return Err(Error::Precondition(format!("`{v}` is not a vertex of Σ(R)")));
            }
        }
        if self.in_sigma_idx(&[xi, yi]) {
            return Err(Error::Precondition(format!("{{{x},{y}}} is a face of Σ(R)")));
        }
        let (rx, ry) = (self.rank[i][xi], self.rank[i][yi]);
        if rx.abs_diff(ry) != 1 {
            return Err(Error::Precondition(format!("`{x}` and `{y}` are not consecutive in order {}", i + 1)));
        }
        let mut out = self.clone();
        out.orders[i].swap(rx, ry);
        out.rank[i][xi] = ry;
        out.rank[i][yi] = rx;
        Ok(out)
    }

    /// Breadth-first search for an `<=_i`-increasing path in the 1-skeleton
    /// of Σ(R) from `from` to any index accepted by `is_target`.
    fn increasing_path_idx(
        &self,
        adj: &[Vec<usize>],
        i: usize,
        from: usize,
        is_target: impl Fn(usize) -> bool,
    ) -> Option<Vec<usize>> {
        let r = &self.rank[i];
        let mut parent = vec![usize::MAX; self.len()];
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(u) = queue.pop_front() {
            if is_target(u) {
                let mut path = vec![u];
                let mut w = u;
                while w != from {
                    w = parent[w];
                    path.push(w);
                }
                path.reverse();
                return Some(path);
            }
            for &w in &adj[u] {
                if !seen[w] && r[u] < r[w] {
                    seen[w] = true;
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// A shortest `<=_i`-increasing path from `x` to `y` in Σ(R), if any.
    /// `x == y` gives the length-0 path.
    pub fn increasing_path(&self, i: usize, x: &VertexId, y: &VertexId) -> Result<Option<Vec<VertexId>>> {
        self.check_order(i)?;
        let (xi, yi) = (self.index_of(x)?, self.index_of(y)?);
        let adj = self.adjacency();
        Ok(self.increasing_path_idx(&adj, i, xi, |u| u == yi).map(|p| self.labels(&p)))
    }

    pub fn increasing_path_exists(&self, i: usize, x: &VertexId, y: &VertexId) -> Result<bool> {
        Ok(self.increasing_path(i, x, y)?.is_some())
    }

    fn labels(&self, idx: &[usize]) -> Vec<VertexId> {
        idx.iter().map(|&k| self.elements[k].clone()).collect()
    }

    /// For a face `f` of Σ(R) and a vertex `x`, every order `i` in which an
    /// increasing path runs from `max_i(f)` to `x`, with such a path. At least
    /// one order always qualifies.
    pub fn certify_face_paths(&self, f: &Face, x: &VertexId) -> Result<BTreeMap<usize, Vec<VertexId>>> {
        let fi = self.face_indices(f)?;
        let xi = self.index_of(x)?;
        if fi.is_empty() {
            return Err(Error::Precondition("the face must be nonempty".into()));
        }
        if !self.in_sigma_idx(&fi) {
            return Err(Error::Precondition(format!("{f} is not a face of Σ(R)")));
        }
        if !self.in_sigma_idx(&[xi]) {
            return Err(Error::NotAVertex(x.to_string()));
        }
        let adj = self.adjacency();
        let mut out = BTreeMap::new();
        for i in 0..self.d() {
            let top = *fi.iter().max_by_key(|&&k| self.rank[i][k]).unwrap();
            if let Some(p) = self.increasing_path_idx(&adj, i, top, |u| u == xi) {
                out.insert(i, self.labels(&p));
            }
        }
        if out.is_empty() {
            return Err(Error::TheoremViolation(format!("no increasing path from {f} to `{x}` in any order")));
        }
        Ok(out)
    }

    /// For a set `f` of vertices that is not a face, an element `x` that does
    /// not dominate `f`, together with, for every order `i`, an
    /// `<=_i`-increasing path from `x` to some member of `f`.
    pub fn certify_nonface(&self, f: &Face) -> Result<NonfaceCertificate> {
        let fi = self.face_indices(f)?;
        if self.in_sigma_idx(&fi) {
            return Err(Error::Precondition(format!("{f} is a face of Σ(R)")));
        }
        if let Some(&k) = fi.iter().find(|&&k| !self.in_sigma_idx(&[k])) {
            return Err(Error::NotAVertex(self.elements[k].to_string()));
        }
        let adj = self.adjacency();
        'candidates: for x in 0..self.len() {
            if self.dominates_idx(x, &fi) {
                continue;
            }
            let mut paths = BTreeMap::new();
            for i in 0..self.d() {
                match self.increasing_path_idx(&adj, i, x, |u| fi.contains(&u)) {
                    Some(p) => {
                        let end = self.elements[*p.last().unwrap()].clone();
                        paths.insert(i, (end, self.labels(&p)));
                    }
                    None => continue 'candidates,
                }
            }
            return Ok(NonfaceCertificate { witness: self.elements[x].clone(), paths });
        }
        Err(Error::TheoremViolation(format!("no non-dominating element certifies {f}")))
    }

    /// Checks the standard-representation definition on the orders.
    pub fn standardness(&self) -> Result<StandardnessReport> {
        let d = self.d();
        if self.len() < d {
            return Err(Error::Precondition(format!(
                "standardness needs at least d = {d} elements, found {}",
                self.len()
            )));
        }
        if let Some(k) = (0..self.len()).find(|&k| !self.in_sigma_idx(&[k])) {
            return Err(Error::NotAVertex(self.elements[k].to_string()));
        }
        let maxima: Vec<usize> = self.orders.iter().map(|o| *o.last().unwrap()).collect();
        let is_standard = (0..d).all(|i| (0..d).filter(|&j| j != i).all(|j| self.rank[j][maxima[i]] < d - 1));
        Ok(StandardnessReport { is_standard, maxima: is_standard.then(|| self.labels(&maxima)) })
    }

    /// The same representation with its orders rearranged: order `k` of the
    /// result is order `perm[k]` of `self`.
    pub fn permute_orders(&self, perm: &[usize]) -> Result<Representation> {
        let mut seen = vec![false; self.d()];
        if perm.len() != self.d() || perm.iter().any(|&p| p >= self.d() || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::Precondition("not a permutation of the order indices".into()));
        }
        Ok(Representation {
            elements: self.elements.clone(),
            index: self.index.clone(),
            orders: perm.iter().map(|&p| self.orders[p].clone()).collect(),
            rank: perm.iter().map(|&p| self.rank[p].clone()).collect(),
        })
    }

    /// The orders restricted to the vertices of Σ(R). An element `w` that is
    /// not a vertex lies above some `u` in every order, so whatever `w`
    /// dominates `u` dominates too: Σ keeps exactly the same faces.
    pub fn restrict_to_vertices(&self) -> Representation {
        let keep: Vec<bool> = (0..self.len()).map(|k| self.in_sigma_idx(&[k])).collect();
        let orders = self
            .orders
            .iter()
            .map(|o| o.iter().filter(|&&k| keep[k]).map(|&k| self.elements[k].clone()).collect())
            .collect();
        Representation::new(orders).expect("restriction of a representation")
    }
}

/// A witness that a vertex set is not a face of Σ(R).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonfaceCertificate {
    /// An element dominating the set in no order.
    pub witness: VertexId,
    /// Per order: the member of the set reached and the increasing path used.
    pub paths: BTreeMap<usize, (VertexId, Vec<VertexId>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardnessReport {
    pub is_standard: bool,
    /// Maximum of each order, present when the representation is standard.
    pub maxima: Option<Vec<VertexId>>,
}

/// Recognizes the face-count signature of a standard representation's
/// complex: every face lies in some (d−1)-face, and every (d−2)-face lies in
/// at least two (d−1)-faces except exactly the d faces `M \ {m}` for a
/// d-set `M`. Returns `M` sorted by label.
pub fn standardness_from_complex(c: &SimplicialComplex, d: usize) -> Option<Vec<VertexId>> {
    if d == 0 {
        return None;
    }
    let top = c.k_faces(d as isize - 1);
    if top.is_empty() {
        return None;
    }
    let mut covered: BTreeSet<Face> = BTreeSet::new();
    let mut ridge_count: BTreeMap<Face, usize> = BTreeMap::new();
    for t in &top {
        covered.extend(t.subsets());
        for v in t.vertices() {
            *ridge_count.entry(t.without(v)).or_default() += 1;
        }
    }
    if c.faces().any(|f| !covered.contains(f)) {
        return None;
    }
    let deficient: Vec<&Face> = ridge_count.iter().filter(|(_, &n)| n == 1).map(|(f, _)| f).collect();
    if deficient.len() != d {
        return None;
    }
    if d == 1 {
        return Some(top[0].vertices().to_vec());
    }
    let m: BTreeSet<VertexId> = deficient.iter().flat_map(|f| f.vertices().iter().cloned()).collect();
    if m.len() != d {
        return None;
    }
    let m = Face::from_sorted(m.into_iter().collect());
    let expected: BTreeSet<Face> = m.vertices().iter().map(|v| m.without(v)).collect();
    let got: BTreeSet<Face> = deficient.into_iter().cloned().collect();
    (expected == got).then(|| m.vertices().to_vec())
}

/// JSON form: `{"d": 3, "elements": [...], "orders": [[...], ...]}`, each
/// order listed ascending.
#[derive(Serialize, Deserialize)]
pub struct RepresentationJson {
    pub d: usize,
    pub elements: Vec<String>,
    pub orders: Vec<Vec<String>>,
}

impl TryFrom<RepresentationJson> for Representation {
    type Error = Error;

    fn try_from(j: RepresentationJson) -> Result<Self> {
        if j.d != j.orders.len() {
            return Err(Error::InvalidRepresentation(format!("d = {} but {} orders given", j.d, j.orders.len())));
        }
        let orders = j
            .orders
            .into_iter()
            .map(|o| o.into_iter().map(VertexId::new).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let r = Representation::new(orders)?;
        let mut declared = j.elements.into_iter().map(VertexId::new).collect::<Result<Vec<_>>>()?;
        declared.sort();
        if let Some(w) = declared.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex(w[0].to_string()));
        }
        if declared != r.elements {
            return Err(Error::InvalidRepresentation("orders are not permutations of the declared elements".into()));
        }
        Ok(r)
    }
}

impl From<Representation> for RepresentationJson {
    fn from(r: Representation) -> Self {
        RepresentationJson {
            d: r.d(),
            elements: r.elements.iter().map(|v| v.to_string()).collect(),
            orders: r.orders().into_iter().map(|o| o.into_iter().map(|v| v.to_string()).collect()).collect(),
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn five_element() -> Representation {
        crate::fixtures::five_element_representation()
    }

    fn face(vs: &[&str]) -> Face {
        Face::new(vs.iter().copied()).unwrap()
    }

    fn v(s: &str) -> VertexId {
        VertexId::from(s)
    }

    /// Σ(R) straight from the definition, over all subsets and with no
    /// size bound, using only the printed order sequences.
    pub(crate) fn sigma_oracle(r: &Representation) -> BTreeSet<Face> {
        let orders = r.orders();
        let elems = r.elements().to_vec();
        let pos = |o: &Vec<VertexId>, x: &VertexId| o.iter().position(|y| y == x).unwrap();
        let mut out = BTreeSet::new();
        for mask in 0u32..(1 << elems.len()) {
            let f: Vec<VertexId> = (0..elems.len()).filter(|i| mask >> i & 1 == 1).map(|i| elems[i].clone()).collect();
            let ok = elems.iter().all(|x| orders.iter().any(|o| f.iter().all(|y| pos(o, y) <= pos(o, x))));
            if ok {
                out.insert(Face::new(f).unwrap());
            }
        }
        out
    }

    #[test]
    fn example_sigma_facets() {
        let r = five_element();
        let s = r.sigma();
        let facets: Vec<String> = s.facets().iter().map(|f| f.to_string()).collect();
        assert_eq!(facets, ["{1,2}", "{2,3,4}", "{2,4,5}"]);
        assert!(!s.contains(&face(&["1", "2", "3"])));
        assert_eq!(s.faces().cloned().collect::<BTreeSet<_>>(), sigma_oracle(&r));
    }

    #[test]
    fn example_domination() {
        let r = five_element();
        assert!(!r.dominates(&v("2"), &face(&["1", "2", "3"])).unwrap());
        assert!(r.dominates(&v("2"), &Face::empty()).unwrap());
        for x in r.elements() {
            assert!(r.dominates(x, &Face::new([x.clone()]).unwrap()).unwrap());
        }
        assert!(matches!(r.dominates(&v("9"), &Face::empty()), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn triangle_sigma() {
        let r = Representation::from_labels(&[&["b", "c", "a"], &["a", "c", "b"], &["a", "b", "c"]]).unwrap();
        let facets: Vec<String> = r.sigma().facets().iter().map(|f| f.to_string()).collect();
        assert_eq!(facets, ["{a,b,c}"]);
    }

    #[test]
    fn one_order_keeps_only_the_minimum() {
        // Every element must dominate {m}, which only the minimum satisfies.
        let r = Representation::from_labels(&[&["x", "y", "z"]]).unwrap();
        let s = r.sigma();
        assert_eq!(s.faces().cloned().collect::<BTreeSet<_>>(), sigma_oracle(&r));
        assert_eq!(s.facets().into_iter().collect::<Vec<_>>(), vec![face(&["x"])]);
        assert!(r.is_vertex(&v("x")).unwrap());
        assert!(!r.is_vertex(&v("y")).unwrap());
        assert!(!r.is_vertex(&v("z")).unwrap());
    }

    #[test]
    fn vertices_of_example() {
        let r = five_element();
        assert!(r.is_vertex(&v("3")).unwrap());
        let single = Representation::from_labels(&[&["p"], &["p"]]).unwrap();
        assert!(single.is_vertex(&v("p")).unwrap());
    }

    #[test]
    fn swap_rejects_edge() {
        let r = five_element();
        let err = r.swap_consecutive(0, &v("5"), &v("4")).unwrap_err();
        assert!(err.to_string().contains("is a face"), "{err}");
    }

    #[test]
    fn swap_rejects_nonconsecutive_and_nonvertex() {
        let r = Representation::from_labels(&[&["x", "y", "z"]]).unwrap();
        let err = r.swap_consecutive(0, &v("y"), &v("z")).unwrap_err();
        assert!(err.to_string().contains("not a vertex"), "{err}");
        let r = five_element();
        // 1 and 3 are vertices, {1,3} is not an edge, but they are not adjacent in order 1.
        let err = r.swap_consecutive(0, &v("1"), &v("3")).unwrap_err();
        assert!(err.to_string().contains("consecutive"), "{err}");
    }

    #[test]
    fn increasing_paths_in_example() {
        let r = five_element();
        assert_eq!(r.increasing_path(0, &v("1"), &v("3")).unwrap(), Some(vec![v("1"), v("2"), v("3")]));
        assert!(!r.increasing_path_exists(2, &v("1"), &v("5")).unwrap());
        assert!(r.increasing_path_exists(1, &v("4"), &v("4")).unwrap());
    }

    #[test]
    fn face_paths_in_example() {
        let r = five_element();
        let paths = r.certify_face_paths(&face(&["1", "2"]), &v("3")).unwrap();
        assert_eq!(paths.len(), 1);
        assert_eq!(paths[&0], vec![v("2"), v("3")]);
        let trivial = r.certify_face_paths(&face(&["4"]), &v("4")).unwrap();
        assert!(trivial.values().all(|p| p == &vec![v("4")]));
        assert!(r.certify_face_paths(&face(&["1", "2", "3"]), &v("3")).is_err());
    }

    #[test]
    fn nonface_certificate_in_example() {
        let r = five_element();
        let cert = r.certify_nonface(&face(&["1", "2", "3"])).unwrap();
        let f = face(&["1", "2", "3"]);
        assert!(!r.dominates(&cert.witness, &f).unwrap());
        assert_eq!(cert.paths.len(), 3);
        assert!(r.certify_nonface(&face(&["2", "3", "4"])).is_err());
    }

    #[test]
    fn standardness_examples() {
        let r = Representation::from_labels(&[&["b", "c", "a"], &["a", "c", "b"], &["a", "b", "c"]]).unwrap();
        let rep = r.standardness().unwrap();
        assert!(rep.is_standard);
        assert_eq!(rep.maxima, Some(vec![v("a"), v("b"), v("c")]));

        // x lies below y in both orders, so x dominates {y} in neither and y
        // is not a vertex.
        let r = Representation::from_labels(&[&["x", "y"], &["x", "y"]]).unwrap();
        assert!(matches!(r.standardness(), Err(Error::NotAVertex(ref s)) if s == "y"));

        let r = Representation::from_labels(&[&["x", "y"], &["y", "x"]]).unwrap();
        assert!(r.standardness().unwrap().is_standard);

        let too_small = Representation::from_labels(&[&["x"], &["x"]]).unwrap();
        assert!(matches!(too_small.standardness(), Err(Error::Precondition(_))));
    }

    #[test]
    fn standardness_from_small_complexes() {
        let edge = crate::complex::close_downward(["x", "y"], &[face(&["x", "y"])]).unwrap();
        assert_eq!(standardness_from_complex(&edge, 2), Some(vec![v("x"), v("y")]));
        let two = crate::complex::close_downward(
            ["a", "b", "c", "p", "q", "r"],
            &[face(&["a", "b", "c"]), face(&["p", "q", "r"])],
        )
        .unwrap();
        assert_eq!(standardness_from_complex(&two, 3), None);
        let one = crate::complex::close_downward(["a"], &[face(&["a"])]).unwrap();
        assert_eq!(standardness_from_complex(&one, 1), Some(vec![v("a")]));
    }

    #[test]
    fn rejects_malformed_representations() {
        assert!(Representation::from_labels(&[]).is_err());
        assert!(Representation::from_labels(&[&["a", "b"], &["a"]]).is_err());
        assert!(Representation::from_labels(&[&["a", "b"], &["a", "a"]]).is_err());
        assert!(Representation::from_labels(&[&["a", "b"], &["a", "c"]]).is_err());
        let bad = r#"{"d": 2, "elements": ["a","b"], "orders": [["a","b"]]}"#;
        assert!(serde_json::from_str::<Representation>(bad).is_err());
        let bad = r#"{"d": 1, "elements": ["a","c"], "orders": [["a","b"]]}"#;
        assert!(serde_json::from_str::<Representation>(bad).is_err());
    }

    #[test]
    fn json_round_trip() {
        let r = five_element();
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(
            s,
            r#"{"d":3,"elements":["1","2","3","4","5"],"orders":[["1","2","5","4","3"],["3","2","1","4","5"],["5","4","3","2","1"]]}"#
        );
        assert_eq!(serde_json::from_str::<Representation>(&s).unwrap(), r);
    }

    pub(crate) fn arb_representation(max_d: usize, max_n: usize) -> impl Strategy<Value = Representation> {
        (1..=max_d, 1..=max_n).prop_flat_map(|(d, n)| {
            let base: Vec<usize> = (0..n).collect();
            proptest::collection::vec(Just(base).prop_shuffle(), d).prop_map(move |orders| {
                let orders: Vec<Vec<VertexId>> = orders
                    .into_iter()
                    .map(|o| o.into_iter().map(|k| VertexId::new(format!("v{k}")).unwrap()).collect())
                    .collect();
                Representation::new(orders).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn sigma_matches_definition(r in arb_representation(5, 7)) {
            let s = r.sigma();
            prop_assert!(s.is_downward_closed());
            prop_assert!(s.max_face_size() <= r.d());
            prop_assert_eq!(s.faces().cloned().collect::<BTreeSet<_>>(), sigma_oracle(&r));
        }

        #[test]
        fn face_paths_are_increasing_edge_walks(r in arb_representation(4, 7)) {
            let s = r.sigma();
            let verts: Vec<VertexId> = s.vertex_faces().cloned().collect();
            for f in s.faces().filter(|f| !f.is_empty()) {
                for x in &verts {
                    let paths = r.certify_face_paths(f, x).unwrap();
                    for (&i, p) in &paths {
                        let top = f.vertices().iter().max_by_key(|u| r.position(i, u).unwrap()).unwrap();
                        prop_assert_eq!(&p[0], top);
                        prop_assert_eq!(p.last().unwrap(), x);
                        for w in p.windows(2) {
                            prop_assert!(s.contains(&Face::new([w[0].clone(), w[1].clone()]).unwrap()));
                            prop_assert!(r.le(i, &w[0], &w[1]).unwrap());
                        }
                    }
                }
            }
        }

        #[test]
        fn nonface_witnesses_fail_domination(r in arb_representation(4, 6)) {
            let s = r.sigma();
            let verts: Vec<VertexId> = s.vertex_faces().cloned().collect();
            for mask in 1u32..(1 << verts.len()) {
                let f = Face::new((0..verts.len()).filter(|i| mask >> i & 1 == 1).map(|i| verts[i].clone())).unwrap();
                if s.contains(&f) {
                    continue;
                }
                let cert = r.certify_nonface(&f).unwrap();
                prop_assert!(!r.dominates(&cert.witness, &f).unwrap());
                prop_assert_eq!(cert.paths.len(), r.d());
                for (&i, (end, p)) in &cert.paths {
                    prop_assert!(f.contains(end));
                    prop_assert_eq!(&p[0], &cert.witness);
                    for w in p.windows(2) {
                        prop_assert!(s.contains(&Face::new([w[0].clone(), w[1].clone()]).unwrap()));
                        prop_assert!(r.le(i, &w[0], &w[1]).unwrap());
                    }
                }
            }
        }

        #[test]
        fn swap_then_swap_back_is_identity(r in arb_representation(4, 7)) {
            for i in 0..r.d() {
                let o = r.order(i);
                for w in o.windows(2) {
                    if let Ok(r2) = r.swap_consecutive(i, &w[0], &w[1]) {
                        prop_assert_eq!(r2.swap_consecutive(i, &w[1], &w[0]).unwrap(), r.clone());
                    }
                }
            }
        }
    }
}
