//! The TD-Delaunay inequality system `A_R X > 0` of a representation, its
//! exact strict-feasibility test, the dual multi-flow certificates, and the
//! realization of feasible representations as point sets.
//!
//! Rows are indexed by (edge of Σ(R), order) and columns by (vertex,
//! coordinate `< d`). For row `({x,y}, i)`:
//!
//! * if `i < d`, column `(v, i)` holds `+1` for `v = max_i(x,y)` and `-1`
//!   for `v = min_i(x,y)`;
//! * if `i = d`, every column `(v, j)` holds `+1` for `v = min_d(x,y)` and
//!   `-1` for `v = max_d(x,y)` (the last coordinate is `1 − Σ_{j<d} x_j`).
//!
//! Rows are sorted by (edge, order) and columns by (vertex, coordinate);
//! both orderings are part of the export formats.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::VertexId;
use crate::error::{Error, Result};
use crate::geom::{format_rational, frac, parse_rational, zero_vec, PointConfiguration, Rational};
use crate::lp::{Constraint, LinearProgram, LpOutcome, Relation};
use crate::represent::Representation;

/// Row label: an edge of Σ(R) (endpoints sorted) and a 0-based order index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RowKey {
    pub edge: (VertexId, VertexId),
    pub order: usize,
}

/// Column label: a vertex and a 0-based coordinate index `< d − 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColKey {
    pub vertex: VertexId,
    pub coord: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TdSystem {
    d: usize,
    rows: Vec<RowKey>,
    cols: Vec<ColKey>,
    /// Per row, `(column, ±1)` sorted by column.
    entries: Vec<Vec<(usize, i8)>>,
}

/// Builds `A_R`.
pub fn build_system(r: &Representation) -> TdSystem {
    let d = r.d();
    let w = d - 1;
    let cols = r.elements().iter().flat_map(|v| (0..w).map(move |j| ColKey { vertex: v.clone(), coord: j })).collect();
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    for (u, v) in r.edge_indices() {
        for i in 0..d {
            let (lo, hi) = if r.rank(i, u) < r.rank(i, v) { (u, v) } else { (v, u) };
            let mut row: Vec<(usize, i8)> = if i < w {
                vec![(hi * w + i, 1), (lo * w + i, -1)]
            } else {
                (0..w).flat_map(|j| [(lo * w + j, 1), (hi * w + j, -1)]).collect()
            };
            row.sort_unstable();
            rows.push(RowKey { edge: (r.element(u).clone(), r.element(v).clone()), order: i });
            entries.push(row);
        }
    }
    TdSystem { d, rows, cols, entries }
}

impl TdSystem {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn rows(&self) -> &[RowKey] {
        &self.rows
    }

    pub fn cols(&self) -> &[ColKey] {
        &self.cols
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn row_entries(&self, r: usize) -> &[(usize, i8)] {
        &self.entries[r]
    }

    pub fn entry(&self, r: usize, c: usize) -> i8 {
        self.entries[r].iter().find(|(j, _)| *j == c).map_or(0, |(_, a)| *a)
    }

    pub fn row_index(&self, key: &RowKey) -> Option<usize> {
        self.rows.binary_search(key).ok()
    }

    pub fn col_index(&self, key: &ColKey) -> Option<usize> {
        self.cols.binary_search(key).ok()
    }

    /// `A x`.
    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        self.entries
            .iter()
            .map(|row| row.iter().fold(Rational::zero(), |acc, &(c, a)| acc + &x[c] * Rational::from_integer(a.into())))
            .collect()
    }

    /// `Aᵀ y`.
    pub fn transpose_apply(&self, y: &[Rational]) -> Vec<Rational> {
        let mut out = zero_vec(self.num_cols());
        for (row, yr) in self.entries.iter().zip(y) {
            for &(c, a) in row {
                if a > 0 {
                    out[c] += yr;
                } else {
                    out[c] -= yr;
                }
            }
        }
        out
    }

    /// Every row of `A x` is strictly positive.
    pub fn satisfies_strict(&self, x: &[Rational]) -> bool {
        x.len() == self.num_cols() && self.apply(x).iter().all(Signed::is_positive)
    }

    /// The rows written out as strict inequalities, e.g. `c_1 + c_2 < b_1 + b_2`.
    pub fn inequalities(&self) -> Vec<String> {
        let term = |c: usize| format!("{}_{}", self.cols[c].vertex, self.cols[c].coord + 1);
        let side = |row: &[(usize, i8)], sign: i8| {
            let t: Vec<String> = row.iter().filter(|(_, a)| *a == sign).map(|&(c, _)| term(c)).collect();
            if t.is_empty() {
                "0".to_string()
            } else {
                t.join(" + ")
            }
        };
        self.entries.iter().map(|row| format!("{} < {}", side(row, -1), side(row, 1))).collect()
    }

    /// Sparse CSV, one nonzero per line, in row-major order. Indices are 1-based.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("edge_u,edge_v,order,vertex,coord,value\n");
        for (r, row) in self.entries.iter().enumerate() {
            let key = &self.rows[r];
            for &(c, a) in row {
                let col = &self.cols[c];
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    key.edge.0,
                    key.edge.1,
                    key.order + 1,
                    col.vertex,
                    col.coord + 1,
                    a
                );
            }
        }
        s
    }

    /// A point of the open cone `A x > 0`, if the cone is nonempty.
    ///
    /// The system is homogeneous, so this solves `A x >= 1` instead.
    pub fn solve_strict(&self) -> Option<Vec<Rational>> {
        let mut lp = LinearProgram::new(self.num_cols());
        lp.free = vec![true; self.num_cols()];
        for row in &self.entries {
            lp.push(Constraint::new(
                row.iter().map(|&(c, a)| (c, Rational::from_integer(a.into()))).collect(),
                Relation::Ge,
                Rational::one(),
            ));
        }
        match lp.solve() {
            LpOutcome::Optimal { x, .. } => Some(x),
            _ => None,
        }
    }

    /// Groups a column vector by vertex.
    pub fn solution_map(&self, x: &[Rational]) -> BTreeMap<VertexId, Vec<Rational>> {
        let mut out: BTreeMap<VertexId, Vec<Rational>> = BTreeMap::new();
        for (col, v) in self.cols.iter().zip(x) {
            out.entry(col.vertex.clone()).or_default().push(v.clone());
        }
        out
    }

    /// Inverse of [`TdSystem::solution_map`].
    pub fn solution_vector(&self, sol: &BTreeMap<VertexId, Vec<Rational>>) -> Option<Vec<Rational>> {
        self.cols.iter().map(|c| sol.get(&c.vertex).and_then(|v| v.get(c.coord)).cloned()).collect()
    }
}

/// `d` flows, flow `i` living on the arcs `(x, y)` of `G^i(R)`: `{x,y}` an
/// edge of Σ(R) with `x <_i y`. Zero values are not stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultiFlow {
    flows: Vec<BTreeMap<(VertexId, VertexId), Rational>>,
}

impl MultiFlow {
    pub fn new(flows: Vec<BTreeMap<(VertexId, VertexId), Rational>>) -> Self {
        let flows = flows.into_iter().map(|f| f.into_iter().filter(|(_, v)| !v.is_zero()).collect()).collect();
        Self { flows }
    }

    /// Builds from `(order, from, to, value)` entries with 0-based orders.
    pub fn from_arcs<V: Into<VertexId>>(d: usize, arcs: impl IntoIterator<Item = (usize, V, V, Rational)>) -> Self {
        let mut flows = vec![BTreeMap::new(); d];
        for (i, x, y, v) in arcs {
            *flows[i].entry((x.into(), y.into())).or_insert_with(Rational::zero) += v;
        }
        Self::new(flows)
    }

    pub fn d(&self) -> usize {
        self.flows.len()
    }

    pub fn flow(&self, i: usize) -> &BTreeMap<(VertexId, VertexId), Rational> {
        &self.flows[i]
    }

    pub fn value(&self, i: usize, from: &VertexId, to: &VertexId) -> Rational {
        self.flows[i].get(&(from.clone(), to.clone())).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.flows.iter().all(BTreeMap::is_empty)
    }

    /// All `(order, from, to, value)` entries, ordered by order then arc.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, &VertexId, &VertexId, &Rational)> {
        self.flows.iter().enumerate().flat_map(|(i, f)| f.iter().map(move |((x, y), v)| (i, x, y, v)))
    }

    /// Divergence (inflow minus outflow) of every element under flow `i`.
    pub fn divergence(&self, i: usize, elements: &[VertexId]) -> BTreeMap<VertexId, Rational> {
        let mut div: BTreeMap<VertexId, Rational> = elements.iter().map(|v| (v.clone(), Rational::zero())).collect();
        for ((x, y), v) in &self.flows[i] {
            *div.entry(y.clone()).or_insert_with(Rational::zero) += v;
            *div.entry(x.clone()).or_insert_with(Rational::zero) -= v;
        }
        div
    }

    /// The Farkas vector `y` indexed by the rows of `s`: `y_(e,i)` is the flow
    /// of order `i` on the arc of `G^i(R)` carried by `e`.
    pub fn to_row_vector(&self, s: &TdSystem, r: &Representation) -> Result<Vec<Rational>> {
        s.rows()
            .iter()
            .map(|k| {
                let (x, y) = &k.edge;
                let (lo, hi) = if r.le(k.order, x, y)? { (x, y) } else { (y, x) };
                Ok(self.value(k.order, lo, hi))
            })
            .collect()
    }
}

/// Why a multi-flow fails to be a non-zero certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlowDefect {
    WrongOrderCount {
        expected: usize,
        got: usize,
    },
    OffSupport {
        order: usize,
        from: VertexId,
        to: VertexId,
    },
    Negative {
        order: usize,
        from: VertexId,
        to: VertexId,
    },
    DivergenceMismatch {
        order: usize,
        vertex: VertexId,
    },
    /// Valid multi-flow, but identically zero.
    Zero,
}

/// Full check of a claimed non-zero multi-flow for `r`.
pub fn check_multiflow(r: &Representation, m: &MultiFlow) -> Result<(), FlowDefect> {
    let d = r.d();
    if m.d() != d {
        return Err(FlowDefect::WrongOrderCount { expected: d, got: m.d() });
    }
    for (i, x, y, v) in m.arcs() {
        let arc_ok = match (r.index_of(x), r.index_of(y)) {
            (Ok(a), Ok(b)) => a != b && r.in_sigma_idx(&[a, b]) && r.rank(i, a) < r.rank(i, b),
            _ => false,
        };
        if !arc_ok {
            return Err(FlowDefect::OffSupport { order: i, from: x.clone(), to: y.clone() });
        }
        if v.is_negative() {
            return Err(FlowDefect::Negative { order: i, from: x.clone(), to: y.clone() });
        }
    }
    let reference = m.divergence(d - 1, r.elements());
    for i in 0..d - 1 {
        let div = m.divergence(i, r.elements());
        if let Some(v) = r.elements().iter().find(|v| div[*v] != reference[*v]) {
            return Err(FlowDefect::DivergenceMismatch { order: i, vertex: v.clone() });
        }
    }
    if m.is_zero() {
        return Err(FlowDefect::Zero);
    }
    Ok(())
}

/// Is `m` a valid non-zero multi-flow of `r`?
pub fn verify_multiflow(r: &Representation, m: &MultiFlow) -> bool {
    check_multiflow(r, m).is_ok()
}

/// A non-zero multi-flow of `r`, if one exists.
///
/// Solves `Aᵀ y = 0, Σ y = 1, y >= 0`; any solution is a certificate, which is
/// then rescaled to the smallest integer multiple.
pub fn find_multiflow(r: &Representation) -> Option<MultiFlow> {
    let s = build_system(r);
    if s.num_rows() == 0 {
        return None;
    }
    let mut by_col: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); s.num_cols()];
    for (row, entries) in s.entries.iter().enumerate() {
        for &(c, a) in entries {
            by_col[c].push((row, Rational::from_integer(a.into())));
        }
    }
    let mut lp = LinearProgram::new(s.num_rows());
    for coeffs in by_col {
        lp.push(Constraint::new(coeffs, Relation::Eq, Rational::zero()));
    }
    lp.push(Constraint::new((0..s.num_rows()).map(|k| (k, Rational::one())).collect(), Relation::Eq, Rational::one()));
    let LpOutcome::Optimal { x: y, .. } = lp.solve() else {
        return None;
    };
    let y = primitive_integer_multiple(&y);
    let mut flows = vec![BTreeMap::new(); r.d()];
    for (key, v) in s.rows.iter().zip(y) {
        let (x, z) = &key.edge;
        let (lo, hi) = if r.le(key.order, x, z).ok()? { (x, z) } else { (z, x) };
        flows[key.order].insert((lo.clone(), hi.clone()), v);
    }
    Some(MultiFlow::new(flows))
}

/// Scales a nonnegative rational vector to coprime integers.
fn primitive_integer_multiple(y: &[Rational]) -> Vec<Rational> {
    let lcm = y.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = y.iter().map(|v| (v * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() {
        return y.to_vec();
    }
    ints.into_iter().map(|v| Rational::from_integer(v / &g)).collect()
}

/// The exclusive outcomes of the feasibility test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "VerdictJson", into = "VerdictJson")]
pub enum FeasibilityVerdict {
    /// Per vertex, its first `d − 1` coordinates.
    Solution(BTreeMap<VertexId, Vec<Rational>>),
    Certificate(MultiFlow),
}

impl FeasibilityVerdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Self::Solution(_))
    }
}

/// Exactly one of: a strict solution, or a non-zero multi-flow.
pub fn decide(r: &Representation) -> Result<FeasibilityVerdict> {
    let s = build_system(r);
    if let Some(x) = s.solve_strict() {
        return Ok(FeasibilityVerdict::Solution(s.solution_map(&x)));
    }
    find_multiflow(r)
        .map(FeasibilityVerdict::Certificate)
        .ok_or_else(|| Error::TheoremViolation("system infeasible but no multi-flow found".into()))
}

/// Re-verifies a verdict against `r` from scratch.
pub fn verify_verdict(r: &Representation, v: &FeasibilityVerdict) -> bool {
    match v {
        FeasibilityVerdict::Solution(sol) => {
            let s = build_system(r);
            s.solution_vector(sol).is_some_and(|x| s.satisfies_strict(&x))
        }
        FeasibilityVerdict::Certificate(m) => verify_multiflow(r, m),
    }
}

/// Points of `H_d` whose TD-Delaunay complex is Σ(r), when the system is
/// feasible.
///
/// Only the vertices of Σ(r) receive points: an element below another in
/// every order cannot be placed on `H_d`, and it lies in no face anyway. The
/// result's complex therefore has the same faces as Σ(r), over the vertex
/// set.
///
/// A strict solution with `A x >= 1` is lifted to `H_d` and coordinate
/// `(v, j)` is shifted by `m_(v,j) · ε` with distinct positive multipliers.
/// Each row moves by less than 1 while `ε < 1 / (2(d−1)·max m)`, so the
/// system stays satisfied; `ε` is halved until the points are in general
/// position.
pub fn realize(r: &Representation) -> Result<Option<PointConfiguration>> {
    let d = r.d();
    if d < 2 {
        return Err(Error::Precondition("realization needs d >= 2".into()));
    }
    let r = &r.restrict_to_vertices();
    let s = build_system(r);
    let Some(x) = s.solve_strict() else {
        return Ok(None);
    };
    let w = d - 1;
    let n = r.len();
    let max_mult = (n * w) as i64;
    let mut eps = frac(1, 2 * w as i64 * max_mult + 1);
    for _ in 0..256 {
        let shifted: Vec<Rational> =
            x.iter().enumerate().map(|(c, xc)| xc + Rational::from_integer((c as i64 + 1).into()) * &eps).collect();
        debug_assert!(s.satisfies_strict(&shifted));
        let points = r
            .elements()
            .iter()
            .enumerate()
            .map(|(k, v)| {
                let mut p = shifted[k * w..(k + 1) * w].to_vec();
                let last = Rational::one() - p.iter().sum::<Rational>();
                p.push(last);
                (v.clone(), p)
            })
            .collect();
        let p = PointConfiguration::new(d, points)?;
        if p.in_general_position() {
            if !s.satisfies_strict(&shifted) {
                return Err(Error::TheoremViolation("perturbation broke the strict system".into()));
            }
            return Ok(Some(p));
        }
        eps /= Rational::from_integer(2.into());
    }
    Err(Error::TheoremViolation("could not reach general position".into()))
}

/// Arcs of `G^i(R)` as `(lower, upper)` pairs.
pub fn order_digraph(r: &Representation, i: usize) -> Vec<(VertexId, VertexId)> {
    r.edge_indices()
        .into_iter()
        .map(|(u, v)| if r.rank(i, u) < r.rank(i, v) { (u, v) } else { (v, u) })
        .map(|(u, v)| (r.element(u).clone(), r.element(v).clone()))
        .collect()
}

/// Kahn's algorithm on `n` nodes.
pub fn is_acyclic(n: usize, arcs: &[(usize, usize)]) -> bool {
    let mut indeg = vec![0usize; n];
    let mut out = vec![Vec::new(); n];
    for &(a, b) in arcs {
        out[a].push(b);
        indeg[b] += 1;
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = queue.pop_front() {
        seen += 1;
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push_back(w);
            }
        }
    }
    seen == n
}

/// Largest total flow `Σ φ` over divergence-free flows with `0 <= φ <= 1` on
/// the given arcs; returns the optimal flow. On an acyclic digraph it is zero.
pub fn max_circulation(n: usize, arcs: &[(usize, usize)]) -> Vec<Rational> {
    let mut lp = LinearProgram::new(arcs.len());
    let mut by_node: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n];
    for (k, &(a, b)) in arcs.iter().enumerate() {
        by_node[b].push((k, Rational::one()));
        by_node[a].push((k, -Rational::one()));
        lp.push(Constraint::new(vec![(k, Rational::one())], Relation::Le, Rational::one()));
    }
    for coeffs in by_node.into_iter().filter(|c| !c.is_empty()) {
        lp.push(Constraint::new(coeffs, Relation::Eq, Rational::zero()));
    }
    lp.objective = (0..arcs.len()).map(|k| (k, Rational::one())).collect();
    match lp.solve() {
        LpOutcome::Optimal { x, .. } => x,
        other => unreachable!("circulation LP is feasible and bounded, got {other:?}"),
    }
}

#[derive(Serialize, Deserialize)]
pub struct FlowArcJson {
    /// 1-based order index.
    pub order: usize,
    pub from: String,
    pub to: String,
    pub value: String,
}

/// JSON form of a verdict:
/// `{"verdict": "feasible", "d": 3, "solution": {"a": ["7/10", "1/10"], ...}}` or
/// `{"verdict": "certificate", "d": 4, "multiflow": [{"order": 1, "from": "e", "to": "g", "value": "1"}, ...]}`.
#[derive(Serialize, Deserialize)]
pub struct VerdictJson {
    pub verdict: String,
    pub d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solution: Option<BTreeMap<String, Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiflow: Option<Vec<FlowArcJson>>,
}

pub fn multiflow_to_json(m: &MultiFlow) -> Vec<FlowArcJson> {
    m.arcs()
        .map(|(i, x, y, v)| FlowArcJson {
            order: i + 1,
            from: x.to_string(),
            to: y.to_string(),
            value: format_rational(v),
        })
        .collect()
}

pub fn multiflow_from_json(d: usize, arcs: Vec<FlowArcJson>) -> Result<MultiFlow> {
    let mut parsed = Vec::with_capacity(arcs.len());
    for a in arcs {
        if a.order == 0 || a.order > d {
            return Err(Error::Precondition(format!("flow order {} outside 1..={d}", a.order)));
        }
        parsed.push((a.order - 1, VertexId::new(a.from)?, VertexId::new(a.to)?, parse_rational(&a.value)?));
    }
    Ok(MultiFlow::from_arcs(d, parsed))
}

impl TryFrom<VerdictJson> for FeasibilityVerdict {
    type Error = Error;

    fn try_from(j: VerdictJson) -> Result<Self> {
        match (j.verdict.as_str(), j.solution, j.multiflow) {
            ("feasible", Some(sol), None) => {
                let sol = sol
                    .into_iter()
                    .map(|(k, v)| {
                        Ok((VertexId::new(k)?, v.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?))
                    })
                    .collect::<Result<BTreeMap<_, _>>>()?;
                Ok(Self::Solution(sol))
            }
            ("certificate", None, Some(arcs)) => Ok(Self::Certificate(multiflow_from_json(j.d, arcs)?)),
            _ => Err(Error::Precondition(
                "verdict must be `feasible` with a solution or `certificate` with a multiflow".into(),
            )),
        }
    }
}

impl From<FeasibilityVerdict> for VerdictJson {
    fn from(v: FeasibilityVerdict) -> Self {
        match v {
            FeasibilityVerdict::Solution(sol) => {
                let d = sol.values().next().map_or(1, |x| x.len() + 1);
                VerdictJson {
                    verdict: "feasible".into(),
                    d,
                    solution: Some(
                        sol.iter().map(|(k, x)| (k.to_string(), x.iter().map(format_rational).collect())).collect(),
                    ),
                    multiflow: None,
                }
            }
            FeasibilityVerdict::Certificate(m) => VerdictJson {
                verdict: "certificate".into(),
                d: m.d(),
                solution: None,
                multiflow: Some(multiflow_to_json(&m)),
            },
        }
    }
}

#[derive(Serialize)]
struct SystemRowJson<'a> {
    edge: [&'a str; 2],
    order: usize,
}

#[derive(Serialize)]
struct SystemColJson<'a> {
    vertex: &'a str,
    coord: usize,
}

#[derive(Serialize)]
struct SystemJson<'a> {
    d: usize,
    rows: Vec<SystemRowJson<'a>>,
    cols: Vec<SystemColJson<'a>>,
    /// `[row, col, value]` with 0-based positions into `rows` / `cols`.
    entries: Vec<(usize, usize, i8)>,
}

impl Serialize for TdSystem {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        SystemJson {
            d: self.d,
            rows: self
                .rows
                .iter()
                .map(|k| SystemRowJson { edge: [k.edge.0.as_str(), k.edge.1.as_str()], order: k.order + 1 })
                .collect(),
            cols: self.cols.iter().map(|c| SystemColJson { vertex: c.vertex.as_str(), coord: c.coord + 1 }).collect(),
            entries: self
                .entries
                .iter()
                .enumerate()
                .flat_map(|(r, row)| row.iter().map(move |&(c, a)| (r, c, a)))
                .collect(),
        }
        .serialize(ser)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::geom::tests::{abc, arb_points};
    use crate::represent::tests::arb_representation;
    use proptest::prelude::*;

    pub(crate) fn triangle() -> Representation {
        crate::fixtures::triangle_representation()
    }

    fn v(s: &str) -> VertexId {
        VertexId::from(s)
    }

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn triangle_shape_and_rows() {
        let s = build_system(&triangle());
        assert_eq!((s.num_rows(), s.num_cols()), (9, 6));
        let row = s.row_index(&RowKey { edge: (v("b"), v("c")), order: 0 }).unwrap();
        let col = |x: &str, j: usize| s.col_index(&ColKey { vertex: v(x), coord: j }).unwrap();
        assert_eq!(s.entry(row, col("b", 0)), -1);
        assert_eq!(s.entry(row, col("c", 0)), 1);
        let row = s.row_index(&RowKey { edge: (v("a"), v("b")), order: 2 }).unwrap();
        assert_eq!(
            [
                s.entry(row, col("a", 0)),
                s.entry(row, col("b", 0)),
                s.entry(row, col("a", 1)),
                s.entry(row, col("b", 1))
            ],
            [1, -1, 1, -1]
        );
    }

    #[test]
    fn triangle_solution() {
        let s = build_system(&triangle());
        // a=(7/10,1/10), b=(1/10,3/5), c=(3/10,3/10), in column order a1 a2 b1 b2 c1 c2.
        let given = ["7/10", "1/10", "1/10", "3/5", "3/10", "3/10"].map(q).to_vec();
        assert!(s.satisfies_strict(&given));
        let x = s.solve_strict().unwrap();
        assert!(s.satisfies_strict(&x));
        assert!(find_multiflow(&triangle()).is_none());
        assert!(decide(&triangle()).unwrap().is_feasible());
    }

    #[test]
    fn edgeless_system() {
        let r = Representation::from_labels(&[&["x", "y"], &["x", "y"], &["x", "y"]]).unwrap();
        let s = build_system(&r);
        assert_eq!(s.num_rows(), 0);
        assert_eq!(s.solve_strict(), Some(zero_vec(4)));
        assert!(find_multiflow(&r).is_none());
    }

    #[test]
    fn zero_and_perturbed_flows_rejected() {
        let r = triangle();
        assert_eq!(check_multiflow(&r, &MultiFlow::new(vec![BTreeMap::new(); 3])), Err(FlowDefect::Zero));
        let off = MultiFlow::from_arcs(3, [(0, "c", "b", q("1"))]);
        assert!(matches!(check_multiflow(&r, &off), Err(FlowDefect::OffSupport { .. })));
        let neg = MultiFlow::from_arcs(3, [(0, "b", "c", q("-1"))]);
        assert!(matches!(check_multiflow(&r, &neg), Err(FlowDefect::Negative { .. })));
        let unbalanced = MultiFlow::from_arcs(3, [(0, "b", "c", q("1"))]);
        assert!(matches!(check_multiflow(&r, &unbalanced), Err(FlowDefect::DivergenceMismatch { .. })));
    }

    #[test]
    fn realize_triangle() {
        let p = realize(&triangle()).unwrap().unwrap();
        assert!(p.in_general_position());
        assert_eq!(p.tdd().unwrap(), triangle().sigma());
        // The hand solution lifts to the points of the geometry tests.
        let s = build_system(&triangle());
        let lifted = abc();
        let x: Vec<Rational> = s.cols().iter().map(|c| lifted.coords(&c.vertex).unwrap()[c.coord].clone()).collect();
        assert!(s.satisfies_strict(&x));
    }

    #[test]
    fn realize_single_vertex() {
        let r = Representation::from_labels(&[&["p"], &["p"], &["p"]]).unwrap();
        let p = realize(&r).unwrap().unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.tdd().unwrap(), r.sigma());
    }

    #[test]
    fn acyclic_helpers() {
        assert!(is_acyclic(3, &[(0, 1), (1, 2), (0, 2)]));
        assert!(!is_acyclic(3, &[(0, 1), (1, 2), (2, 0)]));
        assert!(max_circulation(3, &[(0, 1), (1, 2), (0, 2)]).iter().all(Zero::is_zero));
        let cyc = max_circulation(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(cyc, vec![q("1"); 3]);
    }

    #[test]
    fn verdict_json_round_trip() {
        let verdict = decide(&triangle()).unwrap();
        let s = serde_json::to_string(&verdict).unwrap();
        assert!(s.starts_with(r#"{"verdict":"feasible","d":3,"solution":{"a":["#), "{s}");
        assert_eq!(serde_json::from_str::<FeasibilityVerdict>(&s).unwrap(), verdict);
        let m = MultiFlow::from_arcs(2, [(0, "x", "y", q("3/2"))]);
        let s = serde_json::to_string(&FeasibilityVerdict::Certificate(m.clone())).unwrap();
        assert_eq!(s, r#"{"verdict":"certificate","d":2,"multiflow":[{"order":1,"from":"x","to":"y","value":"3/2"}]}"#);
        assert_eq!(serde_json::from_str::<FeasibilityVerdict>(&s).unwrap(), FeasibilityVerdict::Certificate(m));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn farkas_alternative_is_exclusive(r in arb_representation(4, 7).prop_filter("d >= 2", |r| r.d() >= 2)) {
            let s = build_system(&r);
            let sol = s.solve_strict();
            let flow = find_multiflow(&r);
            prop_assert!(sol.is_some() != flow.is_some());
            if let Some(x) = sol {
                prop_assert!(s.satisfies_strict(&x));
            }
            if let Some(m) = flow {
                prop_assert_eq!(check_multiflow(&r, &m), Ok(()));
                let y = m.to_row_vector(&s, &r).unwrap();
                prop_assert!(s.transpose_apply(&y).iter().all(Zero::is_zero));
            }
        }

        #[test]
        fn realize_round_trip(r in arb_representation(4, 7).prop_filter("d >= 2", |r| r.d() >= 2)) {
            if let Some(p) = realize(&r).unwrap() {
                prop_assert!(p.in_general_position());
                prop_assert!(p.tdd().unwrap().same_faces(&r.sigma()));
                prop_assert_eq!(p.len(), r.sigma().k_faces(0).len());
            } else {
                prop_assert!(find_multiflow(&r).is_some());
            }
        }

        #[test]
        fn point_sets_give_feasible_systems(p in arb_points(3..=4, 7)) {
            let r = p.representation_of().unwrap();
            let s = build_system(&r);
            let x: Vec<Rational> = s.cols().iter().map(|c| p.coords(&c.vertex).unwrap()[c.coord].clone()).collect();
            prop_assert!(s.satisfies_strict(&x));
            prop_assert!(decide(&r).unwrap().is_feasible());
        }

        #[test]
        fn order_digraphs_are_acyclic(r in arb_representation(4, 8)) {
            for i in 0..r.d() {
                let arcs: Vec<(usize, usize)> = order_digraph(&r, i)
                    .iter()
                    .map(|(a, b)| (r.index_of(a).unwrap(), r.index_of(b).unwrap()))
                    .collect();
                prop_assert!(is_acyclic(r.len(), &arcs));
            }
        }
    }
}
