//! Seeded search for plane subdivisions whose rank exceeds the expected
//! rank while all non-trivial cells are quadrangles.
//!
//! Two families are sampled alternately: a triangle nested in a triangle and
//! joined to it by three quadrangles, and regular subdivisions of random
//! lifted point sets. Sample `i` draws from its own ChaCha stream, so the
//! outcome does not depend on the number of threads.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::geometry::{LatticePoint, PolygonClass};
use crate::rank::{expected_rank_embedded, oracle_rank_with};
use crate::subdivision::{pick_interior_coefficients, regular_subdivision, validate, Subdivision, TropicalPolynomial};
use crate::{rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchParams {
    /// Vertex coordinates are drawn from `[0, max_coord]`.
    pub max_coord: i64,
    /// Largest number of non-trivial cells a candidate may have.
    pub cell_budget: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams { max_coord: 6, cell_budget: 3, samples: 20_000, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub sample: usize,
    pub subdivision: Subdivision,
    pub coefficients: TropicalPolynomial,
    pub expected: i64,
    pub oracle: i64,
}

impl Witness {
    pub fn defect(&self) -> i64 {
        self.oracle - self.expected
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub examined: usize,
    /// Regular samples passing the cell filter.
    pub candidates: usize,
    /// Distinct witnesses, in sample order.
    pub witnesses: Vec<Witness>,
}

fn cross(o: &[i64], a: &[i64], b: &[i64]) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn nested_triangles(rng: &mut ChaCha8Rng, max: i64) -> Option<Subdivision> {
    let mut p = || vec![rng.gen_range(0..=max), rng.gen_range(0..=max)];
    let (a, b, c) = (p(), p(), p());
    if cross(&a, &b, &c) <= 0 {
        return None;
    }
    let mut inner: Vec<Vec<i64>> = Vec::new();
    for x in 0..=max {
        for y in 0..=max {
            let q = [x, y];
            if cross(&a, &b, &q) > 0 && cross(&b, &c, &q) > 0 && cross(&c, &a, &q) > 0 {
                inner.push(q.to_vec());
            }
        }
    }
    if inner.len() < 3 {
        return None;
    }
    let pick: Vec<Vec<i64>> = inner.choose_multiple(rng, 3).cloned().collect();
    let (x, y, z) = (&pick[0], &pick[1], &pick[2]);
    let (y, z) = if cross(x, y, z) > 0 { (y, z) } else { (z, y) };
    let verts = [&a, &b, &c, x, y, z].iter().map(|v| LatticePoint::new(v.to_vec())).collect();
    Subdivision::new(2, verts, vec![vec![3, 4, 5], vec![0, 1, 4, 3], vec![1, 2, 5, 4], vec![2, 0, 3, 5]]).ok()
}

fn random_lifting(rng: &mut ChaCha8Rng, max: i64) -> Option<(Subdivision, TropicalPolynomial)> {
    let count = rng.gen_range(5..=9);
    let mut pts: Vec<Vec<i64>> = Vec::new();
    while pts.len() < count {
        let p = vec![rng.gen_range(0..=max), rng.gen_range(0..=max)];
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    let heights: Vec<Rational> = pts.iter().map(|_| rat(rng.gen_range(0..=2))).collect();
    let lp: Vec<LatticePoint> = pts.into_iter().map(LatticePoint::new).collect();
    regular_subdivision(&lp, &heights).ok().map(|(s, f, _)| (s, f))
}

fn passes_filter(s: &Subdivision, budget: usize) -> bool {
    let Ok(nt) = s.nontrivial_cells() else { return false };
    !nt.is_empty()
        && nt.len() <= budget
        && nt.iter().all(|&c| s.cell_class(c) == Ok(PolygonClass::EvenGonNonParallel(2)))
}

/// One sample: `Some((is_candidate, witness))` for regular samples.
fn sample(params: &SearchParams, i: usize) -> Option<(bool, Option<Witness>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    rng.set_stream(i as u64);
    let (s, f) = if i.is_multiple_of(2) {
        let s = nested_triangles(&mut rng, params.max_coord)?;
        if !validate(&s).is_ok() || !passes_filter(&s, params.cell_budget) {
            return None;
        }
        let f = pick_interior_coefficients(&s).ok()?;
        (s, f)
    } else {
        let (s, f) = random_lifting(&mut rng, params.max_coord)?;
        if !passes_filter(&s, params.cell_budget) {
            return None;
        }
        (s, f)
    };
    let expected = expected_rank_embedded(&s);
    let oracle = oracle_rank_with(&s, &f).ok()?;
    let witness = (oracle > expected).then_some(Witness { sample: i, subdivision: s, coefficients: f, expected, oracle });
    Some((true, witness))
}

/// Runs the search. Deterministic for fixed parameters.
pub fn search_defect(params: &SearchParams) -> SearchOutcome {
    let results: Vec<Option<(bool, Option<Witness>)>> =
        (0..params.samples).into_par_iter().map(|i| sample(params, i)).collect();
    let mut seen = BTreeSet::new();
    let mut candidates = 0;
    let mut witnesses = Vec::new();
    for (is_candidate, w) in results.into_iter().flatten() {
        candidates += is_candidate as usize;
        if let Some(w) = w {
            let mut key: Vec<Vec<i64>> = w.subdivision.vertices().iter().map(|p| p.coords().to_vec()).collect();
            key.sort();
            if seen.insert(key) {
                witnesses.push(w);
            }
        }
    }
    SearchOutcome { examined: params.samples, candidates, witnesses }
}
