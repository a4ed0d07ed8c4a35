//! Fixtures and seeded random generators: regular subdivisions in any
//! dimension, nodal plane subdivisions, unimodular transforms and balanced
//! parameterized curves with end markings.

use std::collections::BTreeMap;

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::geometry::{LatticePoint, PolygonClass};
use crate::param::{EndMarking, ParamCurve, ParamEdge, ParamEnd};
use crate::subdivision::{regular_subdivision, validate, Subdivision, TropicalPolynomial};
use crate::{rat, ratio, Rational};

fn points(v: &[&[i64]]) -> Vec<LatticePoint> {
    v.iter().map(|p| LatticePoint::new(p.to_vec())).collect()
}

/// Triangle of side 4 around an inner unit triangle, joined by three
/// trapezoids. Expected rank 2, actual rank 3.
pub fn witness() -> Subdivision {
    Subdivision::new(
        2,
        points(&[&[0, 0], &[4, 0], &[0, 4], &[1, 1], &[2, 1], &[1, 2]]),
        vec![vec![3, 4, 5], vec![0, 1, 4, 3], vec![1, 2, 5, 4], vec![2, 0, 3, 5]],
    )
    .expect("valid fixture")
}

/// Coefficients inducing [`witness`]: outer vertices 0, inner vertices 1.
pub fn witness_coefficients() -> TropicalPolynomial {
    TropicalPolynomial::from_integers(&[0, 0, 0, 1, 1, 1])
}

/// A triangle around an inner triangle, with the three outer quadrilaterals
/// all cut by diagonals turning the same way. No lifting realises it.
pub fn twisted_triangulation() -> Subdivision {
    Subdivision::new(
        2,
        points(&[&[0, 0], &[4, 0], &[0, 4], &[1, 1], &[2, 1], &[1, 2]]),
        vec![
            vec![3, 4, 5],
            vec![0, 1, 4],
            vec![0, 4, 3],
            vec![1, 2, 5],
            vec![1, 5, 4],
            vec![2, 0, 3],
            vec![2, 3, 5],
        ],
    )
    .expect("valid fixture")
}

/// The standard simplex in dimension `n`.
pub fn simplex(n: usize) -> Subdivision {
    let mut verts = vec![LatticePoint::new(vec![0; n])];
    for i in 0..n {
        let mut p = vec![0; n];
        p[i] = 1;
        verts.push(LatticePoint::new(p));
    }
    Subdivision::new(n, verts, vec![(0..=n).collect()]).expect("valid fixture")
}

/// Two unit tetrahedra glued along a triangle.
pub fn glued_tetrahedra() -> Subdivision {
    Subdivision::new(
        3,
        points(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]),
        vec![vec![0, 1, 2, 3], vec![1, 2, 3, 4]],
    )
    .expect("valid fixture")
}

/// Tetrahedron of side 4 coned from the interior point (1,1,1).
pub fn stellar_tetrahedron() -> Subdivision {
    Subdivision::new(
        3,
        points(&[&[0, 0, 0], &[4, 0, 0], &[0, 4, 0], &[0, 0, 4], &[1, 1, 1]]),
        vec![vec![0, 1, 2, 4], vec![0, 1, 3, 4], vec![0, 2, 3, 4], vec![1, 2, 3, 4]],
    )
    .expect("valid fixture")
}

/// Regular subdivision of random lattice points in `[0, max]^n` with random
/// integer heights in `[0, height]`. `None` if the points are degenerate.
pub fn random_regular<R: Rng>(
    rng: &mut R,
    n: usize,
    max: i64,
    count: usize,
    height: i64,
) -> Option<(Subdivision, TropicalPolynomial)> {
    let mut pts: Vec<Vec<i64>> = Vec::with_capacity(count);
    let mut guard = 0;
    while pts.len() < count && guard < 50 * count {
        guard += 1;
        let p: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=max)).collect();
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    let heights: Vec<Rational> = pts.iter().map(|_| rat(rng.gen_range(0..=height))).collect();
    let lp: Vec<LatticePoint> = pts.into_iter().map(LatticePoint::new).collect();
    let (s, f, _) = regular_subdivision(&lp, &heights).ok()?;
    Some((s, f))
}

/// Like [`random_regular`], retrying until a subdivision comes out.
pub fn random_regular_retry<R: Rng>(
    rng: &mut R,
    n: usize,
    max: i64,
    count: usize,
    height: i64,
) -> (Subdivision, TropicalPolynomial) {
    loop {
        if let Some(x) = random_regular(rng, n, max, count, height) {
            return x;
        }
    }
}

/// Coarse regular subdivision: all lattice points of `[0, max]^n` lifted by
/// the minimum of `pieces` random affine functions, plus optional 0/1 noise.
/// Produces large cells with many vertices.
pub fn random_coarse<R: Rng>(
    rng: &mut R,
    n: usize,
    max: i64,
    pieces: usize,
    noise: bool,
) -> Option<(Subdivision, TropicalPolynomial)> {
    let affine: Vec<(Vec<i64>, i64)> =
        (0..pieces).map(|_| ((0..n).map(|_| rng.gen_range(-3..=3)).collect(), rng.gen_range(-6..=6))).collect();
    let mut pts = vec![vec![0i64; n]];
    for k in 0..n {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                (0..=max).map(move |x| {
                    let mut q = p.clone();
                    q[k] = x;
                    q
                })
            })
            .collect();
    }
    let heights: Vec<Rational> = pts
        .iter()
        .map(|p| {
            let h = affine.iter().map(|(a, b)| a.iter().zip(p).map(|(x, y)| x * y).sum::<i64>() + b).min().unwrap_or(0);
            rat(h + if noise { rng.gen_range(0..=1) } else { 0 })
        })
        .collect();
    let lp: Vec<LatticePoint> = pts.into_iter().map(LatticePoint::new).collect();
    let (s, f, _) = regular_subdivision(&lp, &heights).ok()?;
    Some((s, f))
}

/// A nodal plane subdivision (triangles and parallelograms only) from the
/// lifted Minkowski sum of two random polynomials.
pub fn random_nodal<R: Rng>(rng: &mut R, max: i64, count: usize) -> (Subdivision, TropicalPolynomial) {
    loop {
        let mut summand = || -> Vec<(Vec<i64>, i64)> {
            let mut out: Vec<(Vec<i64>, i64)> = Vec::new();
            while out.len() < count {
                let p = vec![rng.gen_range(0..=max), rng.gen_range(0..=max)];
                if !out.iter().any(|(q, _)| *q == p) {
                    out.push((p, rng.gen_range(0..=40)));
                }
            }
            out
        };
        let a = summand();
        let b = summand();
        let mut sum: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        for (p, hp) in &a {
            for (q, hq) in &b {
                let key = vec![p[0] + q[0], p[1] + q[1]];
                let h = hp + hq;
                let e = sum.entry(key).or_insert(h);
                *e = (*e).max(h);
            }
        }
        let pts: Vec<LatticePoint> = sum.keys().map(|p| LatticePoint::new(p.clone())).collect();
        let heights: Vec<Rational> = sum.values().map(|&h| rat(h)).collect();
        let Ok((s, f, _)) = regular_subdivision(&pts, &heights) else { continue };
        let nodal = (0..s.cells().len()).all(|c| s.cell_class(c).map(PolygonClass::is_nodal).unwrap_or(false));
        let has_parallelogram =
            (0..s.cells().len()).any(|c| s.cell_class(c) == Ok(PolygonClass::Parallelogram));
        if nodal && has_parallelogram {
            return (s, f);
        }
    }
}

/// Random matrix of determinant +-1 built from elementary operations.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    if n < 2 {
        if rng.gen_bool(0.5) {
            m[0][0] = -1;
        }
        return m;
    }
    for _ in 0..(2 * n) {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let k: i64 = rng.gen_range(-1..=1);
        for r in 0..n {
            m[r][i] += k * m[r][j];
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut out: Vec<Vec<i64>> = perm.iter().map(|&p| m[p].clone()).collect();
    if rng.gen_bool(0.5) {
        out[0].iter_mut().for_each(|x| *x = -*x);
    }
    out
}

/// Applies `x -> U x + t` to every vertex.
pub fn transform(s: &Subdivision, u: &[Vec<i64>], t: &[i64]) -> Subdivision {
    s.map_points(|p| {
        LatticePoint::new(
            u.iter().zip(t).map(|(row, ti)| row.iter().zip(p.coords()).map(|(a, b)| a * b).sum::<i64>() + ti).collect(),
        )
    })
    .expect("same cell structure")
}

/// Coefficients transported along `x -> U x + t`: the lifted points move
/// with the map, so the heights stay the same.
pub fn transport(f: &TropicalPolynomial) -> TropicalPolynomial {
    f.clone()
}

/// True when `s` is a valid subdivision.
pub fn is_valid(s: &Subdivision) -> bool {
    validate(s).is_ok()
}

fn primitive_dir<R: Rng>(rng: &mut R, max: i64) -> Vec<i64> {
    loop {
        let d = vec![rng.gen_range(-max..=max), rng.gen_range(-max..=max)];
        if d[0].gcd(&d[1]) == 1 {
            return d;
        }
    }
}

/// A random balanced trivalent rational plane curve together with a marker
/// on every end.
pub fn random_param_curve<R: Rng>(rng: &mut R, splits: usize) -> (ParamCurve, EndMarking) {
    loop {
        let mut positions: Vec<Vec<Rational>> =
            vec![vec![ratio(rng.gen_range(-20..=20), rng.gen_range(1..=4)), rat(rng.gen_range(-20..=20))]];
        let d1 = primitive_dir(rng, 3);
        let d2 = primitive_dir(rng, 3);
        if d1[0] * d2[1] - d1[1] * d2[0] == 0 {
            continue;
        }
        let s = [-(d1[0] + d2[0]), -(d1[1] + d2[1])];
        let w = s[0].gcd(&s[1]);
        let mut ends: Vec<ParamEnd> = vec![
            ParamEnd { node: 0, direction: d1, weight: 1 },
            ParamEnd { node: 0, direction: d2, weight: 1 },
            ParamEnd { node: 0, direction: vec![s[0] / w, s[1] / w], weight: w },
        ];
        let mut edges: Vec<ParamEdge> = Vec::new();
        for _ in 0..splits {
            let k = rng.gen_range(0..ends.len());
            let end = ends[k].clone();
            let total = [end.direction[0] * end.weight, end.direction[1] * end.weight];
            let e1 = primitive_dir(rng, 3);
            if e1[0] * end.direction[1] - e1[1] * end.direction[0] == 0 {
                continue;
            }
            let e2 = [total[0] - e1[0], total[1] - e1[1]];
            let w2 = e2[0].gcd(&e2[1]);
            let length = ratio(rng.gen_range(1..=12), rng.gen_range(1..=3));
            let base = positions[end.node].clone();
            let node = positions.len();
            positions.push(vec![
                &base[0] + &length * rat(end.direction[0]),
                &base[1] + &length * rat(end.direction[1]),
            ]);
            edges.push(ParamEdge { nodes: (end.node, node), direction: end.direction.clone(), weight: end.weight, length });
            ends[k] = ParamEnd { node, direction: e1, weight: 1 };
            ends.push(ParamEnd { node, direction: vec![e2[0] / w2, e2[1] / w2], weight: w2 });
        }
        let markers = ends
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let t = ratio(rng.gen_range(1..=30), rng.gen_range(1..=5));
                let p = &positions[e.node];
                (i, vec![&p[0] + &t * rat(e.direction[0]), &p[1] + &t * rat(e.direction[1])])
            })
            .collect();
        let curve = ParamCurve::new(2, positions, edges, ends).expect("balanced by construction");
        return (curve, EndMarking { markers });
    }
}
