//! Instance families and a rank oracle written independently of the library.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tropical_rank::gen::{random_coarse, random_nodal, random_regular};
use tropical_rank::{Subdivision, TropicalPolynomial};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rank by plain Gaussian elimination over the rationals.
pub fn rank_of(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let factor = &m[r][c] / &pivot;
                for k in c..cols {
                    let delta = &factor * &m[rank][k];
                    m[r][k] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Dimension of the space of lifts that stay affine on every cell, minus
/// the additive constant. Unknowns: one height per vertex and an affine
/// function per cell.
pub fn naive_rank(s: &Subdivision) -> i64 {
    let n = s.dim();
    let nv = s.vertices().len();
    let cols = nv + s.cells().len() * (n + 1);
    let mut rows = Vec::new();
    for (i, cell) in s.cells().iter().enumerate() {
        for &v in cell.vertices() {
            let mut row = vec![0i64; cols];
            row[v] = 1;
            let base = nv + i * (n + 1);
            for (k, x) in s.vertices()[v].coords().iter().enumerate() {
                row[base + k] = -x;
            }
            row[base + n] = -1;
            rows.push(row);
        }
    }
    (cols - rank_of(&rows)) as i64 - 1
}

/// Checks that `f` really induces `s`: on each cell the vertices lie on one
/// affine function, and every other vertex lies strictly below it.
pub fn induces(s: &Subdivision, f: &TropicalPolynomial) -> bool {
    let n = s.dim();
    let pts: Vec<Vec<BigRational>> = s
        .vertices()
        .iter()
        .map(|p| p.coords().iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let c = f.coefficients();
    s.cells().iter().all(|cell| {
        let vs = cell.vertices();
        // solve for (a, b) from n+1 affinely independent vertices by elimination
        let mut m: Vec<Vec<BigRational>> = vs
            .iter()
            .map(|&v| {
                let mut row = pts[v].clone();
                row.push(BigRational::one());
                row.push(c[v].clone());
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..=n {
            let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
            m.swap(r, p);
            let pv = m[r][col].clone();
            for x in m[r].iter_mut() {
                *x /= &pv;
            }
            for i in 0..m.len() {
                if i != r && !m[i][col].is_zero() {
                    let fct = m[i][col].clone();
                    for k in 0..=n + 1 {
                        let d = &fct * &m[r][k];
                        m[i][k] -= d;
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        if r != n + 1 || m[r..].iter().any(|row| !row[n + 1].is_zero()) {
            return false;
        }
        let coef: Vec<BigRational> = (0..=n).map(|k| m[k][n + 1].clone()).collect();
        let value = |v: usize| -> BigRational {
            pts[v].iter().zip(&coef).map(|(x, a)| x * a).fold(coef[n].clone(), |acc, t| acc + t)
        };
        (0..pts.len()).all(|v| if vs.contains(&v) { value(v) == c[v] } else { value(v) > c[v] })
    })
}

/// Plane instances from three families.
pub fn plane_instances(seed: u64, count: usize, keep: impl Fn(&Subdivision) -> bool) -> Vec<(Subdivision, TropicalPolynomial)> {
    let mut rng = rng(seed);
    let mut out = Vec::new();
    let mut k = 0usize;
    while out.len() < count {
        k += 1;
        let got = match k % 3 {
            0 => {
                let max = rng.gen_range(3..=5);
                random_coarse(&mut rng, 2, max, 4, true)
            }
            1 => {
                let pts = rng.gen_range(5..=10);
                random_regular(&mut rng, 2, 4, pts, 2)
            }
            _ => random_coarse(&mut rng, 2, 4, 3, false),
        };
        if let Some((s, f)) = got {
            if keep(&s) {
                out.push((s, f));
            }
        }
    }
    out
}

pub fn nodal_instances(seed: u64, count: usize) -> Vec<(Subdivision, TropicalPolynomial)> {
    let mut rng = rng(seed);
    (0..count).map(|i| random_nodal(&mut rng, 2 + (i % 3) as i64, 3 + i % 3)).collect()
}

/// Hypersurface instances in dimension `n`.
pub fn space_instances(seed: u64, n: usize, count: usize) -> Vec<(Subdivision, TropicalPolynomial)> {
    let mut rng = rng(seed);
    let mut out = Vec::new();
    let mut k = 0usize;
    while out.len() < count {
        k += 1;
        let got = if n == 3 {
            if k.is_multiple_of(2) {
                random_coarse(&mut rng, 3, 2, 3, true)
            } else {
                let pts = rng.gen_range(6..=10);
                random_regular(&mut rng, 3, 2, pts, 2)
            }
        } else if k.is_multiple_of(2) {
            random_coarse(&mut rng, 4, 1, 3, k.is_multiple_of(4))
        } else {
            let pts = rng.gen_range(6..=9);
            random_regular(&mut rng, 4, 1, pts, 2)
        };
        if let Some(x) = got {
            out.push(x);
        }
    }
    out
}

pub fn corpus_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn is_valid(s: &Subdivision) -> bool {
    tropical_rank::subdivision::validate(s).is_ok()
}
