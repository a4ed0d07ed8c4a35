//! Ordered upper bounds and exact ranks for hypersurfaces in any dimension,
//! driven by the cells that are not simplices.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::curves::default_orderings;
use crate::polytope::affine_dim_of;
use crate::rank::{expected_rank_embedded, oracle_rank, Certificate, RankKind, RankReport};
use crate::subdivision::Subdivision;
use crate::surface::best_algo_bounds;
use crate::{Error, Result};

fn check_permutation(order: &[usize], cells: &[usize]) -> Result<()> {
    let a: BTreeSet<usize> = order.iter().copied().collect();
    let b: BTreeSet<usize> = cells.iter().copied().collect();
    if a.len() != order.len() || a != b {
        return Err(Error::NotPermutation);
    }
    Ok(())
}

/// One deduction per ordered cell: `new - n + dim(shared)`, where `new`
/// counts vertices not in earlier ordered cells and `shared` is the set of
/// those that are. An empty shared set has dimension -1.
pub fn ordered_deductions(s: &Subdivision, order: &[usize]) -> Vec<i64> {
    let n = s.dim() as i64;
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    let mut out = Vec::with_capacity(order.len());
    for &c in order {
        let verts = s.cells()[c].vertices();
        let shared: Vec<&[i64]> =
            verts.iter().filter(|v| seen.contains(v)).map(|&v| s.vertices()[v].coords()).collect();
        let new = (verts.len() - shared.len()) as i64;
        out.push(new - n + affine_dim_of(&shared));
        seen.extend(verts.iter().copied());
    }
    out
}

/// `#Vert - 1 - sum_i (new_i - n + dim(shared_i))` over the non-simplex
/// cells in `order`. Works in every dimension, including the plane.
pub fn upper_bound_nd(s: &Subdivision, order: &[usize]) -> Result<i64> {
    let cells = s.non_simplex_cells()?;
    check_permutation(order, &cells)?;
    Ok(s.vertices().len() as i64 - 1 - ordered_deductions(s, order).iter().sum::<i64>())
}

/// Values of the ordered bound on every ordering of at most three cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedValues {
    pub per_ordering: Vec<(Vec<usize>, i64)>,
}

impl OrderedValues {
    pub fn value(&self) -> i64 {
        self.per_ordering.iter().map(|(_, v)| *v).min().expect("at least one ordering")
    }

    pub fn ordering_independent(&self) -> bool {
        self.per_ordering.iter().map(|(_, v)| v).all_equal()
    }
}

/// Exact rank when at most three cells are not simplices: the minimum of
/// [`upper_bound_nd`] over their orderings.
pub fn exact_rank_nd(s: &Subdivision) -> Result<OrderedValues> {
    let cells = s.non_simplex_cells()?;
    if cells.len() > 3 {
        return Err(Error::Precondition(format!("expected at most three non-simplex cells, found {}", cells.len())));
    }
    let mut per_ordering = Vec::new();
    for o in cells.iter().copied().permutations(cells.len()) {
        let v = upper_bound_nd(s, &o)?;
        per_ordering.push((o, v));
    }
    Ok(OrderedValues { per_ordering })
}

/// Strongest statement for a hypersurface in dimension three or more, with
/// the oracle value and, in three-space, the bloc-growth bounds.
pub fn rank_with_certificate_nd(s: &Subdivision) -> Result<RankReport> {
    rank_with_options_nd(s, 0, 64)
}

pub fn rank_with_options_nd(s: &Subdivision, seed: u64, budget: usize) -> Result<RankReport> {
    if s.dim() < 3 {
        return Err(Error::Precondition("dimension must be at least three".into()));
    }
    let oracle = oracle_rank(s)?;
    let expected = expected_rank_embedded(s);
    let cells = s.non_simplex_cells()?;
    let mut report = if cells.len() <= 3 {
        RankReport::new(RankKind::Exact(exact_rank_nd(s)?.value()), Certificate::AtMostThreeNonSimplex, expected)
    } else {
        let mut upper = i64::MAX;
        for o in default_orderings(s, &cells, seed, budget)? {
            upper = upper.min(upper_bound_nd(s, &o)?);
        }
        RankReport::new(RankKind::bounds(expected, upper), Certificate::OrderedUpperBoundNd, expected)
    };
    if s.dim() == 3 {
        let b = best_algo_bounds(s)?;
        report.also.push((Certificate::BlocGrowth, RankKind::bounds(b.lower, b.upper)));
    }
    Ok(report.with_oracle(oracle))
}
