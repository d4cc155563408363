//! Seeded random inputs for property checks.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::complex::VertexId;
use crate::geom::{frac, PointConfiguration, Rational};
use crate::rdel::PlanarPointSet;
use crate::represent::Representation;

fn labels(n: usize) -> Vec<VertexId> {
    (1..=n).map(|k| VertexId::new(format!("v{k}")).expect("nonempty")).collect()
}

/// `d` independent uniform orders on `v1..vn`.
pub fn representation<R: Rng>(rng: &mut R, d: usize, n: usize) -> Representation {
    let base = labels(n);
    let orders = (0..d)
        .map(|_| {
            let mut o = base.clone();
            o.shuffle(rng);
            o
        })
        .collect();
    Representation::new(orders).expect("shuffles are permutations")
}

/// Orders shaped like a standard representation: `v1..vd` are the maxima,
/// and each order starts with the other `d − 1` of them in random order.
/// Requires `n >= d`. Not every element need be a vertex.
pub fn standard_shaped<R: Rng>(rng: &mut R, d: usize, n: usize) -> Representation {
    assert!(n >= d, "need at least d elements");
    let base = labels(n);
    let (maxima, middle) = base.split_at(d);
    let orders = (0..d)
        .map(|k| {
            let mut head: Vec<VertexId> =
                maxima.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, v)| v.clone()).collect();
            head.shuffle(rng);
            let mut mid = middle.to_vec();
            mid.shuffle(rng);
            head.extend(mid);
            head.push(maxima[k].clone());
            head
        })
        .collect();
    Representation::new(orders).expect("shuffles are permutations")
}

/// `r` after `swaps` transpositions of random adjacent positions in random
/// orders. Starting near an infeasible representation this often stays
/// infeasible, unlike uniform draws.
pub fn perturb<R: Rng>(rng: &mut R, r: &Representation, swaps: usize) -> Representation {
    let mut orders = r.orders();
    let n = r.len();
    if n >= 2 {
        for _ in 0..swaps {
            let i = rng.gen_range(0..orders.len());
            let k = rng.gen_range(0..n - 1);
            orders[i].swap(k, k + 1);
        }
    }
    Representation::new(orders).expect("transpositions keep permutations")
}

/// `n` points of `H_d` in general position, the first `d − 1` coordinates
/// drawn from `{k/den : |k| <= den}`.
pub fn points<R: Rng>(rng: &mut R, d: usize, n: usize, den: i64) -> PointConfiguration {
    loop {
        let pts: BTreeMap<VertexId, Vec<Rational>> = labels(n)
            .into_iter()
            .map(|v| {
                let mut x: Vec<Rational> = (0..d - 1).map(|_| frac(rng.gen_range(-den..=den), den)).collect();
                let rest: Rational = x.iter().sum();
                x.push(frac(1, 1) - rest);
                (v, x)
            })
            .collect();
        let p = PointConfiguration::new(d, pts).expect("points lie on H_d");
        if p.in_general_position() {
            return p;
        }
    }
}

/// `n` planar points with distinct x- and y-coordinates in `0..4n`.
pub fn planar<R: Rng>(rng: &mut R, n: usize) -> PlanarPointSet {
    let span: Vec<i64> = (0..4 * n as i64).collect();
    let xs: Vec<i64> = span.choose_multiple(rng, n).copied().collect();
    let ys: Vec<i64> = span.choose_multiple(rng, n).copied().collect();
    let pts =
        labels(n).into_iter().zip(xs.into_iter().zip(ys)).map(|(v, (x, y))| (v, (frac(x, 1), frac(y, 1)))).collect();
    PlanarPointSet::new(pts).expect("coordinates are distinct")
}

/// Random arcs `(u, v)` that all ascend one hidden random order on `0..n`.
pub fn acyclic_arcs<R: Rng>(rng: &mut R, n: usize, m: usize) -> Vec<(usize, usize)> {
    let mut topo: Vec<usize> = (0..n).collect();
    topo.shuffle(rng);
    if n < 2 {
        return Vec::new();
    }
    (0..m)
        .map(|_| {
            let a = rng.gen_range(0..n - 1);
            let b = rng.gen_range(a + 1..n);
            (topo[a], topo[b])
        })
        .collect()
}
