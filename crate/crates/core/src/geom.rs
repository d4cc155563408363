//! Exact geometry in the hyperplane `H_d = { x ∈ ℝ^d : x_1 + … + x_d = 1 }`.
//!
//! Regular simplices are `S_c = { u ∈ H_d : u_i <= c_i }`; a simplex is
//! positive when `Σ c_i >= 1`. All predicates use exact rationals.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::{Face, SimplicialComplex, VertexId};
use crate::error::{Error, Result};
use crate::represent::Representation;

/// Arbitrary-precision rational, always kept in lowest terms.
pub type Rational = BigRational;

/// Parses `"p/q"` or the integer shorthand `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim().parse::<Rational>().map_err(|_| Error::BadRational(s.to_string()))
}

/// Formats as `"p/q"`, or `"p"` for integers.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Labelled points of `H_d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PointsJson", into = "PointsJson")]
pub struct PointConfiguration {
    d: usize,
    points: BTreeMap<VertexId, Vec<Rational>>,
}

impl PointConfiguration {
    /// Rejects points with the wrong arity or off the hyperplane.
    pub fn new(d: usize, points: BTreeMap<VertexId, Vec<Rational>>) -> Result<Self> {
        if d < 2 {
            return Err(Error::Precondition(format!("point dimension must be at least 2, got {d}")));
        }
        for (label, x) in &points {
            if x.len() != d {
                return Err(Error::DimensionMismatch { label: label.to_string(), got: x.len(), expected: d });
            }
            let sum: Rational = x.iter().sum();
            if !sum.is_one() {
                return Err(Error::NotOnHyperplane(label.to_string(), format_rational(&sum)));
            }
        }
        Ok(Self { d, points })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn points(&self) -> &BTreeMap<VertexId, Vec<Rational>> {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn coords(&self, v: &VertexId) -> Result<&[Rational]> {
        self.points.get(v).map(Vec::as_slice).ok_or_else(|| Error::UnknownVertex(v.to_string()))
    }

    /// The first pair of points sharing a coordinate, if any.
    pub fn general_position_violation(&self) -> Option<Error> {
        for i in 0..self.d {
            let mut seen: BTreeMap<&Rational, &VertexId> = BTreeMap::new();
            for (label, x) in &self.points {
                if let Some(prev) = seen.insert(&x[i], label) {
                    return Some(Error::GeneralPosition(prev.to_string(), label.to_string(), i + 1));
                }
            }
        }
        None
    }

    /// No two points share any coordinate.
    pub fn in_general_position(&self) -> bool {
        self.general_position_violation().is_none()
    }

    fn require_general_position(&self) -> Result<()> {
        match self.general_position_violation() {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }

    /// Componentwise maximum over `f`: the smallest regular simplex holding `f`.
    pub fn corner_of(&self, f: &Face) -> Result<SimplexCorner> {
        let mut it = f.vertices().iter();
        let first = it.next().ok_or_else(|| Error::Precondition("corner of the empty face".into()))?;
        let mut c = self.coords(first)?.to_vec();
        for v in it {
            for (ci, xi) in c.iter_mut().zip(self.coords(v)?) {
                if xi > ci {
                    *ci = xi.clone();
                }
            }
        }
        Ok(SimplexCorner { c })
    }

    /// The TD-Delaunay complex: `F` is a face iff no point lies in the open
    /// corner simplex of `F`. Faces have at most `d` points.
    pub fn tdd(&self) -> Result<SimplicialComplex> {
        self.require_general_position()?;
        let labels: Vec<&VertexId> = self.points.keys().collect();
        let coords: Vec<&Vec<Rational>> = self.points.values().collect();
        let n = labels.len();
        let empty_interior = |f: &[usize]| {
            let corner: Vec<&Rational> = (0..self.d).map(|i| f.iter().map(|&k| &coords[k][i]).max().unwrap()).collect();
            !coords.iter().any(|u| u.iter().zip(&corner).all(|(ui, ci)| ui < *ci))
        };
        let mut faces = BTreeSet::new();
        let mut level: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..self.d {
            let mut next = Vec::new();
            for f in &level {
                let start = f.last().map_or(0, |&l| l + 1);
                for u in start..n {
                    let mut g = f.clone();
                    g.push(u);
                    if empty_interior(&g) {
                        next.push(g);
                    }
                }
            }
            faces.extend(next.iter().map(|f| Face::from_sorted(f.iter().map(|&k| labels[k].clone()).collect())));
            level = next;
        }
        Ok(SimplicialComplex::from_closed_family(self.points.keys().cloned().collect(), faces))
    }

    /// R(P): order `i` sorts the points by their `i`-th coordinate.
    pub fn representation_of(&self) -> Result<Representation> {
        self.require_general_position()?;
        let orders = (0..self.d)
            .map(|i| {
                let mut o: Vec<(&Rational, &VertexId)> = self.points.iter().map(|(v, x)| (&x[i], v)).collect();
                o.sort();
                o.into_iter().map(|(_, v)| v.clone()).collect()
            })
            .collect();
        Representation::new(orders)
    }
}

/// The corner vector `c` of a regular simplex `S_c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexCorner {
    pub c: Vec<Rational>,
}

impl SimplexCorner {
    pub fn new(c: Vec<Rational>) -> Self {
        Self { c }
    }

    pub fn sum(&self) -> Rational {
        self.c.iter().sum()
    }

    /// `Σ c_i >= 1`.
    pub fn is_positive(&self) -> bool {
        self.sum() >= Rational::one()
    }

    /// `u_i < c_i` for every `i` (u assumed on H_d).
    pub fn interior_contains(&self, u: &[Rational]) -> bool {
        u.iter().zip(&self.c).all(|(ui, ci)| ui < ci)
    }

    /// `u_i <= c_i` for every `i` (u assumed on H_d).
    pub fn contains(&self, u: &[Rational]) -> bool {
        u.iter().zip(&self.c).all(|(ui, ci)| ui <= ci)
    }

    /// Vertex `k` of `S_c`: `c_i` at `i != k`, and whatever makes the sum 1 at `k`.
    pub fn vertex(&self, k: usize) -> Vec<Rational> {
        let mut v = self.c.clone();
        let rest: Rational = self.c.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, x)| x).sum();
        v[k] = Rational::one() - rest;
        v
    }
}

/// Writes a positive simplex `S_c` as the image of the canonical simplex
/// `S_𝟙` under `u ↦ αu + (1 − α)Ω` with `Ω ∈ H_d`.
///
/// When `α = 1` the barycenter `(1/d, …, 1/d)` is returned. The map is then
/// the identity, which is exact only for `c = 𝟙`; any other corner with
/// `Σ c_i = d` is a translate of `S_𝟙` by `c − 𝟙`.
pub fn homothety_decompose(c: &SimplexCorner) -> Result<(Rational, Vec<Rational>)> {
    let d = c.c.len();
    if d < 2 {
        return Err(Error::Precondition("homothety needs d >= 2".into()));
    }
    let sum = c.sum();
    if sum < Rational::one() {
        return Err(Error::NotPositive(format_rational(&sum)));
    }
    let alpha = (sum - Rational::one()) / int(d as i64 - 1);
    let omega = if alpha.is_one() {
        vec![frac(1, d as i64); d]
    } else {
        let one_minus = Rational::one() - &alpha;
        c.c.iter().map(|ci| (ci - &alpha) / &one_minus).collect()
    };
    Ok((alpha, omega))
}

/// Vertex `k` of the canonical simplex: 1 everywhere except `2 − d` at `k`.
pub fn canonical_vertex(d: usize, k: usize) -> Vec<Rational> {
    (0..d).map(|i| if i == k { int(2 - d as i64) } else { Rational::one() }).collect()
}

/// JSON form: `{"d": 3, "points": {"a": ["7/10", "1/10", "1/5"], ...}}`.
#[derive(Serialize, Deserialize)]
pub struct PointsJson {
    pub d: usize,
    pub points: BTreeMap<String, Vec<String>>,
}

impl TryFrom<PointsJson> for PointConfiguration {
    type Error = Error;

    fn try_from(j: PointsJson) -> Result<Self> {
        let points = j
            .points
            .into_iter()
            .map(|(k, v)| Ok((VertexId::new(k)?, v.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        PointConfiguration::new(j.d, points)
    }
}

impl From<PointConfiguration> for PointsJson {
    fn from(p: PointConfiguration) -> Self {
        PointsJson {
            d: p.d,
            points: p.points.iter().map(|(k, v)| (k.to_string(), v.iter().map(format_rational).collect())).collect(),
        }
    }
}

/// Convenience for tests and examples: build a configuration from string
/// coordinates.
pub fn points_from_strs(d: usize, pts: &[(&str, &[&str])]) -> Result<PointConfiguration> {
    let mut map = BTreeMap::new();
    for (label, xs) in pts {
        let x = xs.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        if map.insert(VertexId::new(*label)?, x).is_some() {
            return Err(Error::DuplicateVertex(label.to_string()));
        }
    }
    PointConfiguration::new(d, map)
}

pub(crate) fn zero_vec(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}
