//! Abstract simplicial complexes over labelled vertices.
//!
//! Complexes here are small (a few dozen vertices at most), so every face is
//! stored explicitly. A [`SimplicialComplex`] carries its ground set
//! separately from its faces: an element of the ground set need not be a
//! vertex (a 0-face) of the complex.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A vertex label. Ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        if label.is_empty() {
            return Err(Error::EmptyLabel);
        }
        Ok(Self(label))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for VertexId {
    /// Panics on an empty label; use [`VertexId::new`] for untrusted input.
    fn from(label: &str) -> Self {
        Self::new(label).expect("vertex labels must be nonempty")
    }
}

impl AsRef<str> for VertexId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// A face: a duplicate-free set of vertices kept in sorted order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face(Vec<VertexId>);

impl Face {
    /// The empty face.
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Builds a face, rejecting repeated vertices.
    pub fn new<I, V>(vertices: I) -> Result<Self>
    where
        I: IntoIterator<Item = V>,
        V: Into<VertexId>,
    {
        let mut v: Vec<VertexId> = vertices.into_iter().map(Into::into).collect();
        v.sort();
        for w in v.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateVertex(w[0].to_string()));
            }
        }
        Ok(Self(v))
    }

    /// Builds a face from vertices that are already sorted and distinct.
    pub(crate) fn from_sorted(vertices: Vec<VertexId>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Self(vertices)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.0.binary_search(v).is_ok()
    }

    pub fn is_subset(&self, other: &Face) -> bool {
        self.0.iter().all(|v| other.contains(v))
    }

    /// This face with `v` added.
    pub fn with(&self, v: &VertexId) -> Face {
        let mut out = self.0.clone();
        if let Err(at) = out.binary_search(v) {
            out.insert(at, v.clone());
        }
        Face(out)
    }

    /// This face with `v` removed.
    pub fn without(&self, v: &VertexId) -> Face {
        Face(self.0.iter().filter(|w| *w != v).cloned().collect())
    }

    /// Every subset of this face, the empty face and the face itself included.
    pub fn subsets(&self) -> impl Iterator<Item = Face> + '_ {
        let n = self.0.len();
        assert!(n < 64, "face too large to enumerate its subsets");
        (0u64..(1u64 << n))
            .map(move |mask| Face((0..n).filter(|i| mask >> i & 1 == 1).map(|i| self.0[i].clone()).collect()))
    }

    pub fn labels(&self) -> Vec<String> {
        self.0.iter().map(|v| v.to_string()).collect()
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// A downward-closed family of subsets of a ground set. The empty face is
/// always present.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ComplexJson", into = "ComplexJson")]
pub struct SimplicialComplex {
    vertices: BTreeSet<VertexId>,
    faces: BTreeSet<Face>,
}

impl SimplicialComplex {
    /// The complex whose faces are the given ones. The caller guarantees that
    /// the family is downward closed and lies inside `vertices`.
    pub(crate) fn from_closed_family(vertices: BTreeSet<VertexId>, mut faces: BTreeSet<Face>) -> Self {
        faces.insert(Face::empty());
        let c = Self { vertices, faces };
        debug_assert!(c.is_downward_closed());
        c
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn faces(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter()
    }

    /// Number of faces, the empty face included.
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    /// True when the only face is the empty one.
    pub fn is_empty(&self) -> bool {
        self.faces.len() == 1
    }

    pub fn contains(&self, f: &Face) -> bool {
        self.faces.contains(f)
    }

    /// Largest face cardinality (0 for the empty complex).
    pub fn max_face_size(&self) -> usize {
        self.faces.iter().map(Face::len).max().unwrap_or(0)
    }

    /// The inclusion-maximal faces. The empty complex has no facets.
    pub fn facets(&self) -> BTreeSet<Face> {
        self.faces
            .iter()
            .filter(|f| !f.is_empty())
            .filter(|f| self.vertices.iter().filter(|v| !f.contains(v)).all(|v| !self.faces.contains(&f.with(v))))
            .cloned()
            .collect()
    }

    /// Faces of cardinality `k + 1`; `k = -1` yields the empty face.
    pub fn k_faces(&self, k: isize) -> Vec<Face> {
        if k < -1 {
            return Vec::new();
        }
        let size = (k + 1) as usize;
        self.faces.iter().filter(|f| f.len() == size).cloned().collect()
    }

    /// The 1-faces.
    pub fn edges(&self) -> Vec<Face> {
        self.k_faces(1)
    }

    /// Elements `x` of the ground set with `{x}` a face.
    pub fn vertex_faces(&self) -> impl Iterator<Item = &VertexId> {
        self.faces.iter().filter(|f| f.len() == 1).map(|f| &f.vertices()[0])
    }

    pub fn is_downward_closed(&self) -> bool {
        self.faces.contains(&Face::empty())
            && self.faces.iter().all(|f| {
                f.vertices().iter().all(|v| self.vertices.contains(v))
                    && f.vertices().iter().all(|v| self.faces.contains(&f.without(v)))
            })
    }

    /// True if every face of `self` is a face of `other`.
    /// Equal face families, ignoring ground-set elements in no face.
    pub fn same_faces(&self, other: &SimplicialComplex) -> bool {
        self.faces == other.faces
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.faces.iter().all(|f| other.contains(f))
    }
}

/// Closes a family of facets downward over a declared vertex set.
pub fn close_downward<V>(vertices: impl IntoIterator<Item = V>, facets: &[Face]) -> Result<SimplicialComplex>
where
    V: Into<VertexId>,
{
    let mut ground = BTreeSet::new();
    for v in vertices {
        let v = v.into();
        if !ground.insert(v.clone()) {
            return Err(Error::DuplicateVertex(v.to_string()));
        }
    }
    let mut faces = BTreeSet::new();
    faces.insert(Face::empty());
    for facet in facets {
        if let Some(v) = facet.vertices().iter().find(|v| !ground.contains(*v)) {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        faces.extend(facet.subsets());
    }
    Ok(SimplicialComplex { vertices: ground, faces })
}

/// JSON form: `{"vertices": [...], "facets": [[...], ...]}`.
#[derive(Serialize, Deserialize)]
pub struct ComplexJson {
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<String>>,
}

impl TryFrom<ComplexJson> for SimplicialComplex {
    type Error = Error;

    fn try_from(j: ComplexJson) -> Result<Self> {
        let vertices = j.vertices.into_iter().map(VertexId::new).collect::<Result<Vec<_>>>()?;
        let facets = j
            .facets
            .into_iter()
            .map(|f| {
                let f = f.into_iter().map(VertexId::new).collect::<Result<Vec<_>>>()?;
                Face::new(f)
            })
            .collect::<Result<Vec<_>>>()?;
        close_downward(vertices, &facets)
    }
}

impl From<SimplicialComplex> for ComplexJson {
    fn from(c: SimplicialComplex) -> Self {
        ComplexJson {
            vertices: c.vertices.iter().map(|v| v.to_string()).collect(),
            facets: c.facets().iter().map(Face::labels).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn face(vs: &[&str]) -> Face {
        Face::new(vs.iter().copied()).unwrap()
    }

    fn figure1() -> SimplicialComplex {
        close_downward(
            ["A", "B", "C", "D", "E", "F", "G"],
            &[
                face(&["A", "B", "C", "D"]),
                face(&["C", "D", "E"]),
                face(&["C", "F"]),
                face(&["E", "F"]),
                face(&["F", "G"]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn figure1_membership() {
        let c = figure1();
        assert!(c.contains(&face(&["C", "D"])));
        assert!(c.contains(&face(&["F"])));
        assert!(!c.contains(&face(&["A", "E"])));
        assert!(c.is_downward_closed());
        assert_eq!(c.facets().len(), 5);
    }

    #[test]
    fn empty_facet_list() {
        let c = close_downward(["x"], &[]).unwrap();
        assert!(c.is_empty());
        assert_eq!(c.len(), 1);
        assert!(c.facets().is_empty());
        assert_eq!(c.k_faces(-1), vec![Face::empty()]);
    }

    #[test]
    fn single_vertex_facet() {
        let c = close_downward(["x"], &[face(&["x"])]).unwrap();
        assert_eq!(c.facets().into_iter().collect::<Vec<_>>(), vec![face(&["x"])]);
    }

    #[test]
    fn closure_counts_by_enumeration() {
        let facets = [face(&["1", "2"]), face(&["2", "3", "4"]), face(&["2", "4", "5"])];
        let c = close_downward(["1", "2", "3", "4", "5"], &facets).unwrap();
        // Oracle: every nonempty subset of every facet, deduplicated by hand.
        let mut oracle: BTreeSet<Vec<&str>> = BTreeSet::new();
        for f in [vec!["1", "2"], vec!["2", "3", "4"], vec!["2", "4", "5"]] {
            for mask in 1u32..(1 << f.len()) {
                oracle.insert((0..f.len()).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect());
            }
        }
        assert_eq!(oracle.len(), 13);
        assert_eq!(c.len() - 1, 13);
        assert_eq!(c.edges().len(), 6);
        assert_eq!(c.facets(), facets.iter().cloned().collect());
    }

    #[test]
    fn figure3_edges() {
        let c = close_downward(["A", "B", "C", "D"], &[face(&["A", "B", "D"]), face(&["B", "C", "D"])]).unwrap();
        let edges: Vec<String> = c.k_faces(1).iter().map(|f| f.to_string()).collect();
        assert_eq!(edges, ["{A,B}", "{A,D}", "{B,C}", "{B,D}", "{C,D}"]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(close_downward(["a", "a"], &[]), Err(Error::DuplicateVertex(_))));
        assert!(matches!(close_downward(["a"], &[face(&["b"])]), Err(Error::UnknownVertex(_))));
        assert!(matches!(Face::new(["a", "a"]), Err(Error::DuplicateVertex(_))));
        assert!(VertexId::new("").is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = figure1();
        let s = serde_json::to_string(&c).unwrap();
        assert!(s.contains(r#"["A","B","C","D"]"#));
        let back: SimplicialComplex = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }
}
