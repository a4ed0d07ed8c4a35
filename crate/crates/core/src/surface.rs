//! Rank bounds for tropical surfaces in three-space by growing a bloc of
//! cells across shared 2-faces.
//!
//! The first cell contributes the four parameters of its affine lift, the
//! second one more. A cell whose already-determined vertices span space adds
//! nothing; one meeting the bloc only in a plane adds one. The global
//! constant is removed at the end. The lower bound additionally charges one
//! for every determined vertex beyond the ones needed to fix the new lift,
//! since each may impose an independent condition.

use std::collections::BTreeSet;

use crate::polytope::affine_dim_of;
use crate::subdivision::Subdivision;
use crate::{Error, Result};

/// Where the traversal starts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Start {
    SingleCell,
    Pair(usize, usize),
}

/// One absorbed cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub cell: usize,
    /// Already determined vertices of the cell.
    pub determined: Vec<usize>,
    pub determined_dim: i64,
    pub upper_gain: i64,
    /// Conditions charged to the lower bound.
    pub charged: i64,
}

/// A full traversal from one start.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgoRun {
    pub start: Start,
    pub steps: Vec<Step>,
    pub lower: i64,
    pub upper: i64,
}

/// Best bounds over all starts, with every run kept for inspection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgoBounds {
    pub lower: i64,
    pub upper: i64,
    pub runs: Vec<AlgoRun>,
}

fn require_space(s: &Subdivision) -> Result<()> {
    if s.dim() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: s.dim() });
    }
    Ok(())
}

fn plane_neighbors(s: &Subdivision) -> Vec<BTreeSet<usize>> {
    let mut out = vec![BTreeSet::new(); s.cells().len()];
    for adj in s.adjacencies() {
        out[adj.cells.0].insert(adj.cells.1);
        out[adj.cells.1].insert(adj.cells.0);
    }
    out
}

/// Runs the bloc-growing traversal from `start`.
pub fn algo_bounds(s: &Subdivision, start: Start) -> Result<AlgoRun> {
    require_space(s)?;
    let ncells = s.cells().len();
    let neighbors = plane_neighbors(s);
    let (first, second) = match start {
        Start::SingleCell => {
            if ncells != 1 {
                return Err(Error::Precondition("a single-cell start needs a one-cell subdivision".into()));
            }
            (0, None)
        }
        Start::Pair(a, b) => {
            if a >= ncells || b >= ncells || !neighbors[a].contains(&b) {
                return Err(Error::NotAdjacent(a, b));
            }
            (a, Some(b))
        }
    };
    let mut in_bloc = vec![false; ncells];
    let mut determined = vec![false; s.vertices().len()];
    let mut steps = Vec::new();
    let mut upper = 4;
    let mut lower = 4;
    in_bloc[first] = true;
    for &v in s.cells()[first].vertices() {
        determined[v] = true;
    }
    let absorb = |cell: usize, gain: i64, charged: i64, in_bloc: &mut Vec<bool>, det: &mut Vec<bool>| {
        let shared: Vec<usize> = s.cells()[cell].vertices().iter().copied().filter(|&v| det[v]).collect();
        let pts: Vec<&[i64]> = shared.iter().map(|&v| s.vertices()[v].coords()).collect();
        let dim = affine_dim_of(&pts);
        in_bloc[cell] = true;
        for &v in s.cells()[cell].vertices() {
            det[v] = true;
        }
        (Step { cell, determined: shared, determined_dim: dim, upper_gain: gain, charged }, gain, charged)
    };
    if let Some(b) = second {
        let (step, g, c) = absorb(b, 1, 0, &mut in_bloc, &mut determined);
        upper += g;
        lower += g - c;
        steps.push(step);
    }
    loop {
        let mut spatial = None;
        let mut planar = None;
        for c in (0..ncells).filter(|&c| !in_bloc[c]) {
            if !neighbors[c].iter().any(|&b| in_bloc[b]) {
                continue;
            }
            let shared: Vec<usize> = s.cells()[c].vertices().iter().copied().filter(|&v| determined[v]).collect();
            let pts: Vec<&[i64]> = shared.iter().map(|&v| s.vertices()[v].coords()).collect();
            match affine_dim_of(&pts) {
                3 if spatial.is_none() => spatial = Some((c, shared)),
                2 if planar.is_none() => planar = Some((c, shared)),
                _ => {}
            }
        }
        let (cell, gain, charged) = if let Some((c, shared)) = spatial {
            (c, 0, shared.len() as i64 - 4)
        } else if let Some((c, shared)) = planar {
            // coplanar points already lifted by one cell are automatically consistent
            let within_one = (0..ncells)
                .filter(|&b| in_bloc[b])
                .any(|b| shared.iter().all(|v| s.cells()[b].contains(*v)));
            (c, 1, if within_one { 0 } else { shared.len() as i64 - 3 })
        } else {
            break;
        };
        let (step, g, c) = absorb(cell, gain, charged, &mut in_bloc, &mut determined);
        upper += g;
        lower += g - c;
        steps.push(step);
    }
    let missing: Vec<usize> = (0..ncells).filter(|&c| !in_bloc[c]).collect();
    if !missing.is_empty() {
        return Err(Error::Unreachable(missing));
    }
    Ok(AlgoRun { start, steps, lower: lower - 1, upper: upper - 1 })
}

/// Maximum lower and minimum upper bound over all admissible starts.
pub fn best_algo_bounds(s: &Subdivision) -> Result<AlgoBounds> {
    require_space(s)?;
    let mut runs = Vec::new();
    if s.cells().len() == 1 {
        runs.push(algo_bounds(s, Start::SingleCell)?);
    } else {
        for adj in s.adjacencies() {
            let (a, b) = adj.cells;
            runs.push(algo_bounds(s, Start::Pair(a, b))?);
            runs.push(algo_bounds(s, Start::Pair(b, a))?);
        }
        if runs.is_empty() {
            return Err(Error::Unreachable((1..s.cells().len()).collect()));
        }
        runs.sort_by_key(|r| match r.start {
            Start::Pair(a, b) => (a, b),
            Start::SingleCell => (0, 0),
        });
    }
    let lower = runs.iter().map(|r| r.lower).max().expect("at least one run");
    let upper = runs.iter().map(|r| r.upper).min().expect("at least one run");
    Ok(AlgoBounds { lower, upper, runs })
}
