//! A complex of Dushnik-Miller dimension 4 that is not a TD-Delaunay complex
//! of `H_4`, checked mechanically.
//!
//! Every 4-representation `R'` with `Σ(R') = Δ` is standard with maxima
//! `{a, b, c, d}`, so its three smallest elements in each order are the other
//! three maxima. The remaining positions are fixed by propagating the
//! domination constraints of the faces of `Δ`. Each candidate obtained this
//! way is shown infeasible by an independently computed multi-flow, and the
//! fixed hand-made flow on `{e, f, g, h}` is checked on it as well.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, Ordering};

use itertools::Itertools;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::complex::{SimplicialComplex, VertexId};
use crate::error::{Error, Result};
use crate::geom::int;
use crate::represent::{standardness_from_complex, Representation};
use crate::tdsystem::{build_system, check_multiflow, find_multiflow, multiflow_to_json, MultiFlow};

/// Rows of the counterexample, smallest first.
pub const COUNTEREXAMPLE_ORDERS: [[&str; 8]; 4] = [
    ["b", "c", "d", "e", "g", "f", "h", "a"],
    ["a", "c", "d", "e", "h", "f", "g", "b"],
    ["a", "b", "d", "f", "g", "e", "h", "c"],
    ["a", "b", "c", "f", "h", "e", "g", "d"],
];

/// The unit arcs of the hand-made certificate, keyed by the maximum of the
/// order carrying them. All other arcs carry 0.
pub const FLOW_BY_MAXIMUM: [(&str, [(&str, &str); 2]); 4] = [
    ("a", [("e", "g"), ("f", "h")]),
    ("b", [("e", "h"), ("f", "g")]),
    ("c", [("e", "h"), ("f", "g")]),
    ("d", [("e", "g"), ("f", "h")]),
];

pub fn counterexample_representation() -> Representation {
    let rows: Vec<&[&str]> = COUNTEREXAMPLE_ORDERS.iter().map(|o| &o[..]).collect();
    Representation::from_labels(&rows).expect("static table is a valid representation")
}

/// The hand-made multi-flow, transported to `r` through the order maxima.
pub fn reference_flow(r: &Representation) -> Result<MultiFlow> {
    let mut arcs = Vec::new();
    for i in 0..r.d() {
        let top = r.order(i).last().cloned().ok_or(Error::Precondition("empty representation".into()))?;
        let (_, unit) = FLOW_BY_MAXIMUM.iter().find(|(m, _)| *m == top.as_str()).ok_or_else(|| {
            Error::Precondition(format!("order {} has maximum `{top}`, expected one of a, b, c, d", i + 1))
        })?;
        arcs.extend(unit.iter().map(|&(x, y)| (i, VertexId::from(x), VertexId::from(y), int(1))));
    }
    Ok(MultiFlow::from_arcs(r.d(), arcs))
}

type Bits = u64;

/// A product family of representations: per block, one list of admissible
/// full orders (as index sequences) per order position.
#[derive(Clone, Debug)]
pub struct CandidateFamily {
    elements: Vec<VertexId>,
    blocks: Vec<Vec<Vec<Vec<usize>>>>,
}

impl CandidateFamily {
    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.iter().map(Vec::len).product::<usize>()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Candidate number `idx`, decoded in mixed radix with the last order
    /// varying fastest.
    pub fn get(&self, mut idx: usize) -> Option<Representation> {
        for block in &self.blocks {
            let size: usize = block.iter().map(Vec::len).product();
            if idx >= size {
                idx -= size;
                continue;
            }
            let mut pick = vec![0; block.len()];
            for (k, choices) in block.iter().enumerate().rev() {
                pick[k] = idx % choices.len();
                idx /= choices.len();
            }
            let orders = block
                .iter()
                .zip(pick)
                .map(|(choices, p)| choices[p].iter().map(|&x| self.elements[x].clone()).collect())
                .collect();
            return Some(Representation::new(orders).expect("candidate orders are permutations"));
        }
        None
    }

    pub fn iter(&self) -> impl Iterator<Item = Representation> + '_ {
        (0..self.len()).map(|i| self.get(i).expect("index in range"))
    }
}

/// Shared setup: vertex indices, sorted maxima, faces as bitmasks.
struct Shape {
    elements: Vec<VertexId>,
    maxima: Vec<usize>,
    faces: Vec<Bits>,
    d: usize,
}

impl Shape {
    fn new(delta: &SimplicialComplex, d: usize) -> Result<Self> {
        let elements: Vec<VertexId> = delta.vertices().iter().cloned().collect();
        if elements.len() > 16 {
            return Err(Error::Precondition("candidate enumeration supports at most 16 vertices".into()));
        }
        let maxima = standardness_from_complex(delta, d).ok_or_else(|| {
            Error::Precondition(format!("complex does not have the shape of a standard {d}-representation"))
        })?;
        let idx = |v: &VertexId| elements.binary_search(v).expect("face vertex is a vertex");
        let maxima = maxima.iter().map(idx).collect();
        let faces = delta
            .faces()
            .filter(|f| !f.is_empty())
            .map(|f| f.vertices().iter().fold(0, |m, v| m | 1 << idx(v)))
            .collect();
        Ok(Self { elements, maxima, faces, d })
    }

    fn n(&self) -> usize {
        self.elements.len()
    }

    fn middle(&self) -> Vec<usize> {
        (0..self.n()).filter(|x| !self.maxima.contains(x)).collect()
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    items.iter().copied().permutations(items.len()).collect()
}

/// `above[x]` holds every `y` with `x < y` forced. Returns false on a cycle.
fn close(above: &mut [Bits]) -> bool {
    let n = above.len();
    for k in 0..n {
        for x in 0..n {
            if above[x] >> k & 1 == 1 {
                above[x] |= above[k];
            }
        }
    }
    (0..n).all(|x| above[x] >> x & 1 == 0)
}

fn respects(perm: &[usize], above: &[Bits]) -> bool {
    perm.iter().enumerate().all(|(i, &x)| perm[i + 1..].iter().all(|&y| above[y] >> x & 1 == 0))
}

/// Candidate representations with `Σ = delta`, before the Σ filter.
///
/// For every assignment of the maxima to the orders, the prefix of each order
/// ranges over all permutations of the other maxima, and the middle elements
/// over the linear extensions of the relations forced by domination: each
/// face `F` and each `w ∉ F` need some order where `w` is above `F`, and when
/// only one order remains possible the relation is forced there.
pub fn enumerate_candidates(delta: &SimplicialComplex, d: usize) -> Result<CandidateFamily> {
    let shape = Shape::new(delta, d)?;
    let n = shape.n();
    let middle = shape.middle();
    let middle_mask: Bits = middle.iter().fold(0, |m, &x| m | 1 << x);
    let mut blocks = Vec::new();
    for assignment in permutations(&shape.maxima) {
        let mut above: Vec<Vec<Bits>> = vec![vec![0; n]; d];
        for (k, &top) in assignment.iter().enumerate() {
            for x in (0..n).filter(|&x| x != top) {
                above[k][x] |= 1 << top;
            }
            for &p in assignment.iter().filter(|&&p| p != top) {
                above[k][p] |= middle_mask;
            }
        }
        if !propagate(&shape, &mut above) {
            continue;
        }
        let block = (0..d)
            .map(|k| {
                let prefix: Vec<usize> = assignment.iter().copied().filter(|&p| p != assignment[k]).collect();
                let heads: Vec<_> = permutations(&prefix).into_iter().filter(|p| respects(p, &above[k])).collect();
                let tails: Vec<_> = permutations(&middle).into_iter().filter(|p| respects(p, &above[k])).collect();
                let mut choices = Vec::new();
                for h in &heads {
                    for t in &tails {
                        choices.push([h.as_slice(), t.as_slice(), &[assignment[k]]].concat());
                    }
                }
                choices
            })
            .collect();
        blocks.push(block);
    }
    Ok(CandidateFamily { elements: shape.elements, blocks })
}

/// Forces `F <_k w` whenever `k` is the only order in which `w` can still
/// dominate the face `F`. Returns false if some pair has no order left.
fn propagate(shape: &Shape, above: &mut [Vec<Bits>]) -> bool {
    let n = shape.n();
    if !above.iter_mut().all(|a| close(a)) {
        return false;
    }
    loop {
        let mut changed = false;
        for &f in &shape.faces {
            for w in (0..n).filter(|w| f >> w & 1 == 0) {
                let open: Vec<usize> = (0..shape.d).filter(|&k| above[k][w] & f == 0).collect();
                match open.as_slice() {
                    [] => return false,
                    &[k] => {
                        for x in (0..n).filter(|x| f >> x & 1 == 1) {
                            if above[k][x] >> w & 1 == 0 {
                                above[k][x] |= 1 << w;
                                changed = true;
                            }
                        }
                        if !close(&mut above[k]) {
                            return false;
                        }
                    }
                    _ => {}
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

/// Size of the unrestricted family in exhaustive mode.
pub struct ExhaustiveReport {
    /// `((d−1)! · |middle|!)^d`: every prefix and middle permutation.
    pub unpruned_total: u128,
    /// Product size after discarding orders that cannot be completed.
    pub pruned_total: usize,
    /// Candidates with `Σ = delta`, first maximum in the first order and so on.
    pub matching: Vec<Representation>,
}

/// The maxima are fixed to the orders in sorted order, which loses nothing
/// because permuting orders preserves Σ and feasibility. Every permutation of
/// the prefix and of the middle is tried in every order. An order is
/// discarded when, even with every surviving choice in the other orders, some
/// face `F` and `w ∉ F` would have no order with `w` above `F`.
pub fn enumerate_exhaustive(delta: &SimplicialComplex, d: usize) -> Result<ExhaustiveReport> {
    let shape = Shape::new(delta, d)?;
    let n = shape.n();
    let middle = shape.middle();
    let pairs: Vec<(Bits, usize)> =
        shape.faces.iter().flat_map(|&f| (0..n).filter(move |w| f >> w & 1 == 0).map(move |w| (f, w))).collect();
    let words = pairs.len().div_ceil(64);
    let full: Vec<u64> = (0..words)
        .map(|k| if k + 1 < words || pairs.len().is_multiple_of(64) { u64::MAX } else { (1 << (pairs.len() % 64)) - 1 })
        .collect();
    let dominated = |order: &[usize]| {
        let mut rank = vec![0; n];
        for (r, &x) in order.iter().enumerate() {
            rank[x] = r;
        }
        let mut bits = vec![0u64; words];
        for (t, &(f, w)) in pairs.iter().enumerate() {
            if (0..n).filter(|x| f >> x & 1 == 1).all(|x| rank[x] < rank[w]) {
                bits[t / 64] |= 1 << (t % 64);
            }
        }
        bits
    };
    let per_order = permutations(&shape.maxima[..d - 1]).len() * permutations(&middle).len();
    let unpruned_total = (per_order as u128).pow(d as u32);
    let mut choices: Vec<Vec<(Vec<usize>, Vec<u64>)>> = (0..d)
        .map(|k| {
            let top = shape.maxima[k];
            let prefix: Vec<usize> = shape.maxima.iter().copied().filter(|&p| p != top).collect();
            let mut out = Vec::new();
            for h in permutations(&prefix) {
                for t in permutations(&middle) {
                    let order = [h.as_slice(), t.as_slice(), &[top]].concat();
                    let bits = dominated(&order);
                    out.push((order, bits));
                }
            }
            out
        })
        .collect();
    loop {
        let unions: Vec<Vec<u64>> = choices
            .iter()
            .map(|cs| cs.iter().fold(vec![0; words], |acc, (_, b)| acc.iter().zip(b).map(|(x, y)| x | y).collect()))
            .collect();
        let mut changed = false;
        for (k, cs) in choices.iter_mut().enumerate() {
            let others: Vec<u64> =
                (0..words).map(|t| (0..d).filter(|&j| j != k).fold(0, |acc, j| acc | unions[j][t])).collect();
            let before = cs.len();
            cs.retain(|(_, b)| (0..words).all(|t| b[t] | others[t] == full[t]));
            changed |= cs.len() != before;
        }
        if !changed {
            break;
        }
    }
    let pruned_total = choices.iter().map(Vec::len).product();
    let mut matching = Vec::new();
    let mut pick = vec![0usize; d];
    'outer: for _ in 0..pruned_total {
        let covered = (0..words).all(|t| (0..d).fold(0, |acc, k| acc | choices[k][pick[k]].1[t]) == full[t]);
        if covered {
            let orders =
                (0..d).map(|k| choices[k][pick[k]].0.iter().map(|&x| shape.elements[x].clone()).collect()).collect();
            let r = Representation::new(orders)?;
            if r.sigma() == *delta {
                matching.push(r);
            }
        }
        for k in (0..d).rev() {
            pick[k] += 1;
            if pick[k] < choices[k].len() {
                continue 'outer;
            }
            pick[k] = 0;
        }
    }
    Ok(ExhaustiveReport { unpruned_total, pruned_total, matching })
}

/// Outcome of checking one Σ-matching candidate.
#[derive(Clone, Debug)]
pub struct CandidateOutcome {
    pub id: usize,
    pub representation: Representation,
    /// A verified non-zero multi-flow, or `None` if the candidate is feasible.
    pub certificate: Option<MultiFlow>,
    pub reference_flow_valid: bool,
}

#[derive(Clone, Debug)]
pub struct CounterexampleReport {
    pub delta: SimplicialComplex,
    pub candidates_total: usize,
    pub candidates_matching: usize,
    /// Every matching candidate has a verified non-zero multi-flow.
    pub all_infeasible: bool,
    /// The hand-made flow is valid on every matching candidate.
    pub reference_flow_valid: bool,
    /// Id of the counterexample itself within the family.
    pub original_id: Option<usize>,
    pub outcomes: Vec<CandidateOutcome>,
}

impl CounterexampleReport {
    pub fn certificates(&self) -> BTreeMap<usize, &MultiFlow> {
        self.outcomes.iter().filter_map(|o| o.certificate.as_ref().map(|c| (o.id, c))).collect()
    }

    pub fn feasible_ids(&self) -> Vec<usize> {
        self.outcomes.iter().filter(|o| o.certificate.is_none()).map(|o| o.id).collect()
    }

    /// JSON report; per-candidate certificates only when `full`.
    pub fn to_json(&self, full: bool) -> Value {
        let outcome = |o: &CandidateOutcome| {
            json!({
                "id": o.id,
                "orders": o.representation.orders(),
                "certificate": o.certificate.as_ref().map(multiflow_to_json).map(|c| serde_json::to_value(c).unwrap()),
                "reference_flow_valid": o.reference_flow_valid,
            })
        };
        let original = self.original_id.and_then(|id| self.outcomes.iter().find(|o| o.id == id)).map(outcome);
        let mut v = json!({
            "delta": self.delta,
            "candidates_total": self.candidates_total,
            "candidates_matching": self.candidates_matching,
            "all_infeasible": self.all_infeasible,
            "reference_flow_valid": self.reference_flow_valid,
            "feasible_candidates": self.feasible_ids(),
            "original": original,
        });
        if full {
            v["candidates"] = self.outcomes.iter().map(outcome).collect();
        }
        v
    }

    pub fn summary(&self) -> String {
        format!(
            "candidates: {} enumerated, {} with the same complex\n\
             infeasible (verified multi-flow): {}/{}\n\
             reference flow valid on all: {}\n\
             verdict: {}",
            self.candidates_total,
            self.candidates_matching,
            self.outcomes.iter().filter(|o| o.certificate.is_some()).count(),
            self.candidates_matching,
            self.reference_flow_valid,
            if self.all_infeasible { "not a TD-Delaunay complex" } else { "FEASIBLE CANDIDATE FOUND" },
        )
    }
}

/// Worker count from `TDDEL_THREADS`, or rayon's default.
pub fn worker_threads() -> usize {
    std::env::var("TDDEL_THREADS")
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(rayon::current_num_threads)
}

/// Checks one candidate: multi-flow from the dual program, re-verified, and
/// the hand-made flow.
pub fn check_candidate(id: usize, r: Representation) -> CandidateOutcome {
    let certificate = find_multiflow(&r).filter(|m| check_multiflow(&r, m).is_ok());
    let reference_flow_valid = reference_flow(&r).is_ok_and(|m| check_multiflow(&r, &m).is_ok());
    CandidateOutcome { id, representation: r, certificate, reference_flow_valid }
}

/// Enumerates every representation with the counterexample's complex and
/// shows each one infeasible.
pub fn verify_counterexample() -> Result<CounterexampleReport> {
    let original = counterexample_representation();
    let delta = original.sigma();
    let family = enumerate_candidates(&delta, 4)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(worker_threads())
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    let stop = AtomicBool::new(false);
    let mut outcomes: Vec<CandidateOutcome> = pool.install(|| {
        (0..family.len())
            .into_par_iter()
            .filter_map(|id| {
                let r = family.get(id).expect("index in range");
                (r.sigma() == delta).then_some((id, r))
            })
            .map(|(id, r)| {
                let o = check_candidate(id, r);
                if o.certificate.is_none() {
                    stop.store(true, Ordering::Relaxed);
                }
                o
            })
            .collect()
    });
    outcomes.sort_by_key(|o| o.id);
    let original_id = outcomes.iter().find(|o| o.representation == original).map(|o| o.id);
    let all_infeasible = !outcomes.is_empty() && !stop.load(Ordering::Relaxed);
    Ok(CounterexampleReport {
        candidates_total: family.len(),
        candidates_matching: outcomes.len(),
        all_infeasible,
        reference_flow_valid: outcomes.iter().all(|o| o.reference_flow_valid),
        original_id,
        outcomes,
        delta,
    })
}

/// Exhaustive confirmation: the unrestricted search finds exactly the
/// propagated candidates whose maxima sit in sorted order, and each is
/// infeasible.
pub struct ExhaustiveVerification {
    pub report: ExhaustiveReport,
    pub agrees_with_propagation: bool,
    pub outcomes: Vec<CandidateOutcome>,
}

impl ExhaustiveVerification {
    pub fn all_infeasible(&self) -> bool {
        !self.outcomes.is_empty() && self.outcomes.iter().all(|o| o.certificate.is_some())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "unpruned_total": self.report.unpruned_total.to_string(),
            "pruned_total": self.report.pruned_total,
            "matching": self.report.matching.len(),
            "agrees_with_propagation": self.agrees_with_propagation,
            "all_infeasible": self.all_infeasible(),
            "reference_flow_valid": self.outcomes.iter().all(|o| o.reference_flow_valid),
        })
    }
}

pub fn verify_exhaustive() -> Result<ExhaustiveVerification> {
    let delta = counterexample_representation().sigma();
    let report = enumerate_exhaustive(&delta, 4)?;
    let sorted_maxima = |r: &Representation| {
        let tops: Vec<VertexId> = (0..r.d()).filter_map(|i| r.order(i).last().cloned()).collect();
        tops.windows(2).all(|w| w[0] < w[1])
    };
    let mut propagated: Vec<Representation> =
        enumerate_candidates(&delta, 4)?.iter().filter(|r| sorted_maxima(r) && r.sigma() == delta).collect();
    let mut exhaustive = report.matching.clone();
    let key = |r: &Representation| r.orders();
    propagated.sort_by_key(key);
    exhaustive.sort_by_key(key);
    let agrees_with_propagation = propagated == exhaustive;
    let outcomes = report.matching.iter().cloned().enumerate().map(|(id, r)| check_candidate(id, r)).collect();
    Ok(ExhaustiveVerification { report, agrees_with_propagation, outcomes })
}

/// Rows and columns of the counterexample's system: `4·|E|` and 24.
pub fn counterexample_system_shape() -> (usize, usize) {
    let s = build_system(&counterexample_representation());
    (s.num_rows(), s.num_cols())
}
