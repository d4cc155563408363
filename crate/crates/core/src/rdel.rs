//! Rectangular Delaunay complexes of planar point sets, and their embedding
//! into TD-Delaunay complexes of `H_4`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::complex::{Face, SimplicialComplex, VertexId};
use crate::error::{Error, Result};
use crate::geom::{format_rational, parse_rational, PointConfiguration, Rational};
use crate::represent::Representation;
use crate::tdsystem::realize;

/// Planar points with pairwise distinct x- and y-coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PlanarJson", into = "PlanarJson")]
pub struct PlanarPointSet {
    points: BTreeMap<VertexId, (Rational, Rational)>,
}

impl PlanarPointSet {
    pub fn new(points: BTreeMap<VertexId, (Rational, Rational)>) -> Result<Self> {
        for axis in 0..2 {
            let mut seen: BTreeMap<&Rational, &VertexId> = BTreeMap::new();
            for (v, (x, y)) in &points {
                let c = if axis == 0 { x } else { y };
                if let Some(u) = seen.insert(c, v) {
                    return Err(Error::GeneralPosition(u.to_string(), v.to_string(), axis + 1));
                }
            }
        }
        Ok(Self { points })
    }

    pub fn from_strs(pts: &[(&str, &str, &str)]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for &(v, x, y) in pts {
            let v = VertexId::new(v)?;
            if map.insert(v.clone(), (parse_rational(x)?, parse_rational(y)?)).is_some() {
                return Err(Error::DuplicateVertex(v.to_string()));
            }
        }
        Self::new(map)
    }

    pub fn points(&self) -> &BTreeMap<VertexId, (Rational, Rational)> {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Faces are the sets whose bounding box has no point strictly inside.
    /// Sets of more than 4 points always do.
    pub fn rdelaunay(&self) -> SimplicialComplex {
        let pts: Vec<(&VertexId, &(Rational, Rational))> = self.points.iter().collect();
        let n = pts.len();
        let is_face = |f: &[usize]| {
            let xs = || f.iter().map(|&k| &pts[k].1 .0);
            let ys = || f.iter().map(|&k| &pts[k].1 .1);
            let (x0, x1) = (xs().min().unwrap(), xs().max().unwrap());
            let (y0, y1) = (ys().min().unwrap(), ys().max().unwrap());
            !pts.iter().any(|(_, (x, y))| x0 < x && x < x1 && y0 < y && y < y1)
        };
        let mut faces = BTreeSet::from([Face::empty()]);
        let mut level: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..4.min(n) {
            let mut next = Vec::new();
            for f in &level {
                let start = f.last().map_or(0, |&k| k + 1);
                for k in start..n {
                    let mut g = f.clone();
                    g.push(k);
                    if is_face(&g) {
                        faces.insert(Face::from_sorted(g.iter().map(|&k| pts[k].0.clone()).collect()));
                        next.push(g);
                    }
                }
            }
            level = next;
        }
        SimplicialComplex::from_closed_family(self.points.keys().cloned().collect(), faces)
    }

    /// Orders: x ascending, x descending, y ascending, y descending.
    pub fn four_order_representation(&self) -> Result<Representation> {
        let mut by_x: Vec<&VertexId> = self.points.keys().collect();
        by_x.sort_by(|a, b| self.points[*a].0.cmp(&self.points[*b].0));
        let mut by_y: Vec<&VertexId> = self.points.keys().collect();
        by_y.sort_by(|a, b| self.points[*a].1.cmp(&self.points[*b].1));
        let x: Vec<VertexId> = by_x.into_iter().cloned().collect();
        let y: Vec<VertexId> = by_y.into_iter().cloned().collect();
        let rev = |v: &[VertexId]| v.iter().rev().cloned().collect::<Vec<_>>();
        Representation::new(vec![x.clone(), rev(&x), y.clone(), rev(&y)])
    }

    /// Points of `H_4` whose TD-Delaunay complex is the R-Delaunay complex.
    pub fn realize(&self) -> Result<PointConfiguration> {
        if self.is_empty() {
            return Err(Error::Precondition("cannot realize an empty point set".into()));
        }
        realize(&self.four_order_representation()?)?
            .ok_or_else(|| Error::TheoremViolation("R-Delaunay representation has an infeasible system".into()))
    }
}

/// `{"points": {"p1": ["0", "0"], ...}}`.
#[derive(Serialize, Deserialize)]
pub struct PlanarJson {
    pub points: BTreeMap<String, [String; 2]>,
}

impl TryFrom<PlanarJson> for PlanarPointSet {
    type Error = Error;

    fn try_from(j: PlanarJson) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (v, [x, y]) in j.points {
            map.insert(VertexId::new(v)?, (parse_rational(&x)?, parse_rational(&y)?));
        }
        Self::new(map)
    }
}

impl From<PlanarPointSet> for PlanarJson {
    fn from(p: PlanarPointSet) -> Self {
        PlanarJson {
            points: p
                .points
                .iter()
                .map(|(v, (x, y))| (v.to_string(), [format_rational(x), format_rational(y)]))
                .collect(),
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::geom::frac;
    use crate::tdsystem::{decide, find_multiflow};
    use proptest::prelude::*;

    fn three() -> PlanarPointSet {
        PlanarPointSet::from_strs(&[("p1", "0", "0"), ("p2", "2", "1"), ("p3", "1", "2")]).unwrap()
    }

    /// Up to `max_n` points with distinct coordinates drawn from `0..4n`.
    pub(crate) fn arb_planar(max_n: usize) -> impl Strategy<Value = PlanarPointSet> {
        (1..=max_n).prop_flat_map(|n| {
            let span = 4 * n as i64;
            (
                Just(n),
                proptest::sample::subsequence((0..span).collect::<Vec<_>>(), n).prop_shuffle(),
                proptest::sample::subsequence((0..span).collect::<Vec<_>>(), n).prop_shuffle(),
            )
                .prop_map(|(n, xs, ys)| {
                    let map = (0..n)
                        .map(|k| (VertexId::new(format!("p{}", k + 1)).unwrap(), (frac(xs[k], 3), frac(ys[k], 3))))
                        .collect();
                    PlanarPointSet::new(map).unwrap()
                })
        })
    }

    /// Definition by brute force over all subsets.
    fn rdel_oracle(p: &PlanarPointSet) -> BTreeSet<Face> {
        let pts: Vec<_> = p.points().iter().collect();
        let n = pts.len();
        let mut out = BTreeSet::new();
        for mask in 0u32..1 << n {
            let f: Vec<usize> = (0..n).filter(|k| mask >> k & 1 == 1).collect();
            if f.is_empty() {
                out.insert(Face::empty());
                continue;
            }
            let x0 = f.iter().map(|&k| &pts[k].1 .0).min().unwrap();
            let x1 = f.iter().map(|&k| &pts[k].1 .0).max().unwrap();
            let y0 = f.iter().map(|&k| &pts[k].1 .1).min().unwrap();
            let y1 = f.iter().map(|&k| &pts[k].1 .1).max().unwrap();
            if !pts.iter().any(|(_, (x, y))| x0 < x && x < x1 && y0 < y && y < y1) {
                out.insert(Face::new(f.iter().map(|&k| pts[k].0.clone())).unwrap());
            }
        }
        out
    }

    #[test]
    fn three_points() {
        let p = three();
        let facets: Vec<Vec<String>> = p.rdelaunay().facets().iter().map(Face::labels).collect();
        assert_eq!(facets, vec![vec!["p1", "p2", "p3"]]);
        let r = p.four_order_representation().unwrap();
        let names = |i: usize| r.order(i).iter().map(|v| v.to_string()).collect::<Vec<_>>();
        assert_eq!(names(0), ["p1", "p3", "p2"]);
        assert_eq!(names(1), ["p2", "p3", "p1"]);
        assert_eq!(names(2), ["p1", "p2", "p3"]);
        assert_eq!(names(3), ["p3", "p2", "p1"]);
        let q = p.realize().unwrap();
        assert_eq!(q.d(), 4);
        assert_eq!(q.tdd().unwrap(), p.rdelaunay());
    }

    #[test]
    fn small_sets() {
        let one = PlanarPointSet::from_strs(&[("p", "1/2", "3")]).unwrap();
        assert_eq!(one.rdelaunay().len(), 2);
        assert_eq!(one.realize().unwrap().len(), 1);
        let two = PlanarPointSet::from_strs(&[("p", "0", "0"), ("q", "5", "-1")]).unwrap();
        assert_eq!(two.rdelaunay().edges().len(), 1);
    }

    #[test]
    fn inner_point_blocks_box() {
        let p = PlanarPointSet::from_strs(&[("a", "0", "0"), ("b", "4", "4"), ("m", "2", "1")]).unwrap();
        assert!(!p.rdelaunay().contains(&Face::new(["a", "b"]).unwrap()));
        assert_eq!(p.rdelaunay().edges().len(), 2);
    }

    #[test]
    fn collisions_rejected() {
        let err = PlanarPointSet::from_strs(&[("a", "0", "0"), ("b", "0", "1")]).unwrap_err();
        assert!(matches!(err, Error::GeneralPosition(_, _, 1)));
        let err = PlanarPointSet::from_strs(&[("a", "0", "1"), ("b", "2", "1")]).unwrap_err();
        assert!(matches!(err, Error::GeneralPosition(_, _, 2)));
        let bad: std::result::Result<PlanarPointSet, _> =
            serde_json::from_str(r#"{"points":{"a":["0","0"],"b":["0","1"]}}"#);
        assert!(bad.is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = serde_json::to_string(&three()).unwrap();
        assert_eq!(s, r#"{"points":{"p1":["0","0"],"p2":["2","1"],"p3":["1","2"]}}"#);
        assert_eq!(serde_json::from_str::<PlanarPointSet>(&s).unwrap(), three());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn rdelaunay_matches_sigma_and_oracle(p in arb_planar(8)) {
            let rd = p.rdelaunay();
            prop_assert_eq!(rd.faces().cloned().collect::<BTreeSet<_>>(), rdel_oracle(&p));
            prop_assert_eq!(&rd, &p.four_order_representation().unwrap().sigma());
        }

        #[test]
        fn rdelaunay_is_realizable(p in arb_planar(6)) {
            let r = p.four_order_representation().unwrap();
            prop_assert!(decide(&r).unwrap().is_feasible());
            prop_assert!(find_multiflow(&r).is_none());
            prop_assert_eq!(p.realize().unwrap().tdd().unwrap(), p.rdelaunay());
        }
    }
}
