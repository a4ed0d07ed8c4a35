//! Small-scale convex geometry on lattice point sets: facets by exhaustive
//! search, pulling triangulations and exact volumes.
//!
//! All routines enumerate subsets and are meant for cells with a handful of
//! vertices.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg::{det_int, matrix_rank, primitive, solve_homogeneous, Matrix};
use crate::lp::max_slack;
use crate::{rat, Rational};

/// A facet of a full-dimensional point configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    /// Indices of the points lying on the facet, ascending.
    pub vertices: Vec<usize>,
    /// Outward primitive integer normal.
    pub normal: Vec<i64>,
    /// `<normal, p> = offset` on the facet, `< offset` elsewhere.
    pub offset: i64,
}

fn to_rat(p: &[i64]) -> Vec<Rational> {
    p.iter().map(|&x| rat(x)).collect()
}

fn diff_matrix(points: &[&[i64]]) -> Matrix {
    let base = points[0];
    let rows: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| rat(a - b)).collect())
        .collect();
    Matrix::from_rows(base.len(), rows)
}

/// Affine dimension of a point set; `-1` for the empty set.
pub fn affine_dim_of(points: &[&[i64]]) -> i64 {
    if points.is_empty() {
        return -1;
    }
    if points.len() == 1 {
        return 0;
    }
    matrix_rank(&diff_matrix(points)) as i64
}

/// Primitive integer vector orthogonal to the `k-1` difference vectors of
/// `k` affinely independent points in `Z^k`.
pub fn hyperplane_normal(points: &[&[i64]]) -> Option<Vec<i64>> {
    let m = diff_matrix(points);
    let ker = solve_homogeneous(&m);
    if ker.len() != 1 {
        return None;
    }
    Some(
        primitive(ker[0].clone())
            .iter()
            .map(|x| x.to_integer().to_i64().expect("normal fits in i64"))
            .collect(),
    )
}

fn ip(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Coordinates chosen so that the projection is injective on the affine hull.
/// Returns the projected points and the affine dimension.
pub fn full_dim_projection(points: &[Vec<i64>]) -> (Vec<Vec<i64>>, usize) {
    if points.len() <= 1 {
        return (points.iter().map(|_| Vec::new()).collect(), 0);
    }
    let refs: Vec<&[i64]> = points.iter().map(|p| p.as_slice()).collect();
    let d = diff_matrix(&refs);
    let k = matrix_rank(&d);
    let mut chosen: Vec<usize> = Vec::new();
    for c in 0..d.cols() {
        let mut cand = chosen.clone();
        cand.push(c);
        let sub = Matrix::from_rows(
            cand.len(),
            (0..d.rows()).map(|r| cand.iter().map(|&j| d.get(r, j).clone()).collect()).collect(),
        );
        if matrix_rank(&sub) == cand.len() {
            chosen = cand;
        }
        if chosen.len() == k {
            break;
        }
    }
    (points.iter().map(|p| chosen.iter().map(|&j| p[j]).collect()).collect(), k)
}

/// Facets of a point set that is full-dimensional in its ambient space.
pub fn facets(points: &[Vec<i64>]) -> Vec<Facet> {
    let k = points.first().map_or(0, |p| p.len());
    let mut out: Vec<Facet> = Vec::new();
    if k == 0 {
        return out;
    }
    for subset in (0..points.len()).combinations(k) {
        if out.iter().any(|f| subset.iter().all(|i| f.vertices.binary_search(i).is_ok())) {
            continue;
        }
        let refs: Vec<&[i64]> = subset.iter().map(|&i| points[i].as_slice()).collect();
        let Some(mut normal) = hyperplane_normal(&refs) else {
            continue;
        };
        let mut offset = ip(&normal, refs[0]);
        let vals: Vec<i64> = points.iter().map(|p| ip(&normal, p) - offset).collect();
        if vals.iter().all(|&v| v <= 0) {
        } else if vals.iter().all(|&v| v >= 0) {
            normal.iter_mut().for_each(|x| *x = -*x);
            offset = -offset;
        } else {
            continue;
        }
        let vertices: Vec<usize> = (0..points.len()).filter(|&i| vals[i] == 0).collect();
        out.push(Facet { vertices, normal, offset });
    }
    out
}

/// Pulling triangulation from the first point. Simplices are index lists
/// into `points` of length `dim + 1`.
pub fn triangulate(points: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let (proj, k) = full_dim_projection(points);
    if points.len() == k + 1 {
        return vec![(0..points.len()).collect()];
    }
    let mut out = Vec::new();
    for f in facets(&proj) {
        if f.vertices.contains(&0) {
            continue;
        }
        let sub: Vec<Vec<i64>> = f.vertices.iter().map(|&i| points[i].clone()).collect();
        for simplex in triangulate(&sub) {
            let mut s = vec![0];
            s.extend(simplex.iter().map(|&j| f.vertices[j]));
            out.push(s);
        }
    }
    out
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Absolute determinant of the edge vectors of a full simplex in `Z^k`.
fn simplex_det(points: &[Vec<i64>], simplex: &[usize]) -> BigInt {
    let base = &points[simplex[0]];
    let rows: Vec<Vec<BigInt>> = simplex[1..]
        .iter()
        .map(|&i| points[i].iter().zip(base).map(|(a, b)| BigInt::from(a - b)).collect())
        .collect();
    det_int(&rows).abs()
}

/// Euclidean volume of the convex hull; zero if not full-dimensional.
pub fn volume(points: &[Vec<i64>]) -> Rational {
    let k = points.first().map_or(0, |p| p.len());
    let refs: Vec<&[i64]> = points.iter().map(|p| p.as_slice()).collect();
    if affine_dim_of(&refs) != k as i64 {
        return Rational::zero();
    }
    let total = triangulate(points)
        .iter()
        .fold(BigInt::zero(), |acc, s| acc + simplex_det(points, s));
    Rational::new(total, factorial(k))
}

/// Normalised lattice volume ((n-1)! times the relative lattice volume) of a
/// codimension-one lattice polytope `face` in `Z^n` with primitive normal
/// `normal`. For segments in the plane this is the lattice length.
pub fn facet_weight(face: &[Vec<i64>], normal: &[i64]) -> Rational {
    let n = normal.len();
    let nn: i64 = ip(normal, normal);
    let mut total = Rational::zero();
    for s in triangulate(face) {
        let base = &face[s[0]];
        let mut rows: Vec<Vec<Rational>> = s[1..]
            .iter()
            .map(|&i| face[i].iter().zip(base).map(|(a, b)| rat(a - b)).collect())
            .collect();
        rows.push(normal.iter().map(|&x| Rational::new(x.into(), nn.into())).collect());
        total += crate::linalg::det(&Matrix::from_rows(n, rows)).abs();
    }
    total
}

/// Counterclockwise strictly convex hull of planar points, as indices.
pub fn hull_2d(points: &[Vec<i64>]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| points[a].cmp(&points[b]));
    idx.dedup_by(|a, b| points[*a] == points[*b]);
    if idx.len() < 3 {
        return idx;
    }
    let cross = |o: usize, a: usize, b: usize| -> i64 {
        let (o, a, b) = (&points[o], &points[a], &points[b]);
        (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    };
    let mut lower: Vec<usize> = Vec::new();
    for &p in &idx {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &p in idx.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// True when `q` is not in the convex hull of `others`.
pub fn is_extreme(q: &[i64], others: &[Vec<i64>]) -> bool {
    if others.is_empty() {
        return true;
    }
    let rows: Vec<Vec<Rational>> =
        others.iter().map(|p| p.iter().zip(q).map(|(a, b)| rat(a - b)).collect()).collect();
    max_slack(&Matrix::from_rows(q.len(), rows)).is_feasible()
}

/// Greatest common divisor of the entries.
pub fn content(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |acc, &x| acc.gcd(&x))
}

pub fn to_rational_point(p: &[i64]) -> Vec<Rational> {
    to_rat(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    fn pts(v: &[&[i64]]) -> Vec<Vec<i64>> {
        v.iter().map(|p| p.to_vec()).collect()
    }

    #[test]
    fn square_facets_and_area() {
        let sq = pts(&[&[0, 0], &[2, 0], &[2, 2], &[0, 2]]);
        let f = facets(&sq);
        assert_eq!(f.len(), 4);
        assert!(f.iter().any(|f| f.normal == vec![0, -1] && f.offset == 0));
        assert_eq!(volume(&sq), rat(4));
        assert_eq!(hull_2d(&sq), vec![0, 1, 2, 3]);
    }

    #[test]
    fn cube_volume_and_triangulation() {
        let mut cube = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    cube.push(vec![x, y, z]);
                }
            }
        }
        assert_eq!(facets(&cube).len(), 6);
        assert_eq!(volume(&cube), rat(1));
        let t = triangulate(&cube);
        assert!(t.iter().all(|s| s.len() == 4));
        let simplex = pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(volume(&simplex), ratio(1, 6));
    }

    #[test]
    fn weights_are_lattice_lengths_in_the_plane() {
        let seg = pts(&[&[0, 0], &[3, 0]]);
        assert_eq!(facet_weight(&seg, &[0, -1]), rat(3));
        let diag = pts(&[&[1, 0], &[0, 1]]);
        assert_eq!(facet_weight(&diag, &[1, 1]), rat(1));
        // unit right triangle in a coordinate plane of Z^3 has normalised area 1
        let tri = pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(facet_weight(&tri, &[0, 0, -1]), rat(1));
    }

    #[test]
    fn extreme_points() {
        let sq = pts(&[&[0, 0], &[2, 0], &[2, 2], &[0, 2]]);
        assert!(is_extreme(&[0, 0], &sq[1..]));
        assert!(!is_extreme(&[1, 1], &sq));
        assert!(!is_extreme(&[1, 0], &sq));
        assert!(is_extreme(&[3, 0], &sq));
    }
}
