use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tddel_core::fixtures::*;
use tddel_core::tdsystem::{check_multiflow, verify_verdict};
use tddel_core::witness::{counterexample_representation, reference_flow};
use tddel_core::{build_system, decide, find_multiflow, parse_rational, realize, sample, Face};

fn five_element_complex() -> bool {
    let c = five_element_representation().sigma();
    let facets: BTreeSet<Vec<String>> = c.facets().iter().map(Face::labels).collect();
    let expected: BTreeSet<Vec<String>> =
        FIVE_ELEMENT_FACETS.iter().map(|f| f.iter().map(|s| s.to_string()).collect()).collect();
    facets == expected && !c.contains(&Face::new(["1", "2", "3"]).unwrap())
}

fn triangle_system() -> bool {
    let s = build_system(&triangle_representation());
    let mut got = BTreeSet::new();
    for (r, key) in s.rows().iter().enumerate() {
        for &(c, a) in s.row_entries(r) {
            let col = &s.cols()[c];
            got.insert((
                format!("{}{}", key.edge.0, key.edge.1),
                key.order + 1,
                col.vertex.to_string(),
                col.coord + 1,
                a,
            ));
        }
    }
    let expected: BTreeSet<_> =
        TRIANGLE_MATRIX.iter().map(|&(e, i, v, j, a)| (e.to_string(), i, v.to_string(), j, a)).collect();
    let mut ineq = s.inequalities();
    ineq.sort();
    let mut printed: Vec<String> = TRIANGLE_INEQUALITIES.iter().map(|s| s.to_string()).collect();
    printed.sort();
    got == expected && ineq == printed && s.num_rows() == 9 && s.num_cols() == 6
}

fn triangle_solution() -> bool {
    let s = build_system(&triangle_representation());
    let x: Option<Vec<_>> = s
        .cols()
        .iter()
        .map(|c| {
            let (_, coords) = TRIANGLE_SOLUTION.iter().find(|(v, _)| *v == c.vertex.as_str())?;
            parse_rational(coords[c.coord]).ok()
        })
        .collect();
    x.is_some_and(|x| s.satisfies_strict(&x)) && decide(&triangle_representation()).is_ok_and(|v| v.is_feasible())
}

fn counterexample_certificate() -> bool {
    let r = counterexample_representation();
    let Ok(m) = reference_flow(&r) else { return false };
    let divergences_ok = (0..4).all(|i| {
        m.divergence(i, r.elements()).iter().all(|(v, q)| {
            let want = match v.as_str() {
                "e" | "f" => -1,
                "g" | "h" => 1,
                _ => 0,
            };
            *q == tddel_core::geom::int(want)
        })
    });
    check_multiflow(&r, &m).is_ok()
        && divergences_ok
        && decide(&r).is_ok_and(|v| !v.is_feasible() && verify_verdict(&r, &v))
}

fn farkas(rng: &mut ChaCha8Rng, samples: usize) -> bool {
    (0..samples).all(|_| {
        let (d, n) = (rng.gen_range(3..=4), rng.gen_range(1..=8));
        let r = sample::representation(rng, d, n);
        let s = build_system(&r);
        match (s.solve_strict(), find_multiflow(&r)) {
            (Some(x), None) => {
                s.satisfies_strict(&x)
                    && realize(&r).is_ok_and(|p| p.is_some_and(|p| p.tdd().is_ok_and(|t| t.same_faces(&r.sigma()))))
            }
            (None, Some(m)) => check_multiflow(&r, &m).is_ok(),
            _ => false,
        }
    })
}

fn point_sets(rng: &mut ChaCha8Rng, samples: usize) -> bool {
    (0..samples).all(|_| {
        let (d, n) = (rng.gen_range(3..=4), rng.gen_range(3..=8));
        let p = sample::points(rng, d, n, 20);
        p.tdd().ok() == p.representation_of().ok().map(|r| r.sigma())
    })
}

fn planar(rng: &mut ChaCha8Rng, samples: usize) -> bool {
    (0..samples).all(|_| {
        let n = rng.gen_range(1..=8);
        let p = sample::planar(rng, n);
        let Ok(r) = p.four_order_representation() else { return false };
        let rd = p.rdelaunay();
        rd == r.sigma()
            && decide(&r).is_ok_and(|v| v.is_feasible())
            && p.realize().is_ok_and(|q| q.tdd().is_ok_and(|t| t == rd))
    })
}

/// Named checks and whether each passed.
pub fn run(seed: u64, samples: usize) -> Vec<(String, bool)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    vec![
        ("five-element representation complex".to_string(), five_element_complex()),
        ("triangle system matrix and inequalities".to_string(), triangle_system()),
        ("triangle system solution".to_string(), triangle_solution()),
        ("counterexample multi-flow certificate".to_string(), counterexample_certificate()),
        (format!("farkas alternative and realization, {samples} random representations"), farkas(&mut rng, samples)),
        (format!("tdd equals sigma of coordinate orders, {samples} random point sets"), point_sets(&mut rng, samples)),
        (format!("rectangular delaunay pipeline, {samples} random planar sets"), planar(&mut rng, samples)),
    ]
}
