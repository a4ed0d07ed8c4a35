//! Subdivisions of Newton polytopes, tropical polynomials, regular liftings
//! and the dual complex of the tropical hypersurface.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use crate::geometry::{classify_ring, LatticePoint, PolygonClass};
use crate::linalg::{det_checked, dot, primitive, solve_homogeneous, solve_square, Matrix};
use crate::lp::{max_slack, StrictFeasibility};
use crate::polytope::{affine_dim_of, facet_weight, facets, hull_2d, hyperplane_normal, is_extreme, volume};
use crate::{rat, Error, Rational, Result};

/// One maximal cell of a subdivision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    vertices: Vec<usize>,
    ring: Vec<usize>,
    class: Option<PolygonClass>,
}

impl Cell {
    /// Vertex indices in the order they were declared.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Counterclockwise boundary order in the plane; sorted indices otherwise.
    pub fn ring(&self) -> &[usize] {
        &self.ring
    }

    /// `None` when the cell is degenerate or not strictly convex.
    pub fn class(&self) -> Option<PolygonClass> {
        self.class
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }
}

/// Two cells sharing a facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adjacency {
    pub cells: (usize, usize),
    /// Shared vertex indices, ascending.
    pub shared: Vec<usize>,
    /// Primitive normal of the shared facet pointing from `cells.0` into `cells.1`.
    pub normal: Vec<i64>,
}

/// A polytopal subdivision of the convex hull of its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    dim: usize,
    vertices: Vec<LatticePoint>,
    cells: Vec<Cell>,
    adjacencies: Vec<Adjacency>,
}

impl Subdivision {
    /// Builds a subdivision, checking only indices and coordinate dimensions.
    /// Geometric conditions are reported by [`validate`].
    pub fn new(dim: usize, vertices: Vec<LatticePoint>, cells: Vec<Vec<usize>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Precondition("dimension must be positive".into()));
        }
        for p in &vertices {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: p.dim() });
            }
        }
        let mut built = Vec::with_capacity(cells.len());
        for (ci, vs) in cells.into_iter().enumerate() {
            if let Some(&bad) = vs.iter().find(|&&v| v >= vertices.len()) {
                return Err(Error::InvalidCell { cell: ci, reason: format!("vertex index {bad} out of range") });
            }
            built.push(make_cell(dim, &vertices, vs));
        }
        let adjacencies = compute_adjacencies(dim, &vertices, &built);
        Ok(Subdivision { dim, vertices, cells: built, adjacencies })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn adjacencies(&self) -> &[Adjacency] {
        &self.adjacencies
    }

    pub fn cell_points(&self, cell: usize) -> Vec<Vec<i64>> {
        self.cells[cell].vertices.iter().map(|&v| self.vertices[v].coords().to_vec()).collect()
    }

    pub fn cell_class(&self, cell: usize) -> Result<PolygonClass> {
        self.cells[cell]
            .class
            .ok_or_else(|| Error::InvalidCell { cell, reason: "degenerate or not strictly convex".into() })
    }

    /// Cells that are neither triangles nor parallelograms (plane only).
    pub fn nontrivial_cells(&self) -> Result<Vec<usize>> {
        if self.dim != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: self.dim });
        }
        let mut out = Vec::new();
        for i in 0..self.cells.len() {
            if !self.cell_class(i)?.is_nodal() {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// Cells that are not simplices, in any dimension.
    pub fn non_simplex_cells(&self) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for i in 0..self.cells.len() {
            if !self.cell_class(i)?.is_simplex() {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// Applies `map` to every vertex, keeping the cell structure.
    pub fn map_points(&self, map: impl Fn(&LatticePoint) -> LatticePoint) -> Result<Subdivision> {
        let vertices = self.vertices.iter().map(map).collect();
        Subdivision::new(self.dim, vertices, self.cells.iter().map(|c| c.vertices.clone()).collect())
    }
}

fn make_cell(dim: usize, vertices: &[LatticePoint], vs: Vec<usize>) -> Cell {
    let pts: Vec<Vec<i64>> = vs.iter().map(|&v| vertices[v].coords().to_vec()).collect();
    let distinct = vs.iter().all_unique() && pts.iter().all_unique();
    let refs: Vec<&[i64]> = pts.iter().map(|p| p.as_slice()).collect();
    let full = distinct && affine_dim_of(&refs) == dim as i64;
    let mut sorted = vs.clone();
    sorted.sort_unstable();
    if dim == 2 {
        let hull = hull_2d(&pts);
        if full && hull.len() == vs.len() {
            let ring: Vec<usize> = hull.iter().map(|&i| vs[i]).collect();
            let ring_pts: Vec<Vec<i64>> = hull.iter().map(|&i| pts[i].clone()).collect();
            let class = Some(classify_ring(&ring_pts));
            return Cell { vertices: vs, ring, class };
        }
        return Cell { vertices: vs, ring: sorted, class: None };
    }
    let class = if !full {
        None
    } else if vs.len() == dim + 1 {
        Some(PolygonClass::Simplex)
    } else {
        Some(PolygonClass::NonSimplex)
    };
    Cell { vertices: vs, ring: sorted, class }
}

fn compute_adjacencies(dim: usize, vertices: &[LatticePoint], cells: &[Cell]) -> Vec<Adjacency> {
    let mut out = Vec::new();
    for i in 0..cells.len() {
        for j in i + 1..cells.len() {
            let mut shared: Vec<usize> =
                cells[i].vertices.iter().copied().filter(|v| cells[j].vertices.contains(v)).collect();
            if shared.len() < dim {
                continue;
            }
            shared.sort_unstable();
            shared.dedup();
            let refs: Vec<&[i64]> = shared.iter().map(|&v| vertices[v].coords()).collect();
            if affine_dim_of(&refs) != dim as i64 - 1 {
                continue;
            }
            let Some(mut normal) = hyperplane_normal(&refs) else { continue };
            let base = vertices[shared[0]].coords();
            let side = cells[j]
                .vertices
                .iter()
                .map(|&v| {
                    vertices[v].coords().iter().zip(base).zip(&normal).map(|((a, b), n)| (a - b) * n).sum::<i64>()
                })
                .find(|&x| x != 0);
            match side {
                Some(x) if x < 0 => normal.iter_mut().for_each(|c| *c = -*c),
                Some(_) => {}
                None => continue,
            }
            out.push(Adjacency { cells: (i, j), shared, normal });
        }
    }
    out
}

/// A single violated subdivision invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    UnusedVertex { vertex: usize },
    RepeatedVertex { cell: usize },
    TooFewVertices { cell: usize },
    DegenerateCell { cell: usize },
    NonConvexCell { cell: usize },
    Covering { cells_volume: Rational, hull_volume: Rational },
    NonFaceIntersection { cells: (usize, usize) },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnusedVertex { vertex } => write!(f, "vertex {vertex} is not used by any cell"),
            Violation::RepeatedVertex { cell } => write!(f, "cell {cell} repeats a vertex"),
            Violation::TooFewVertices { cell } => write!(f, "cell {cell} has too few vertices"),
            Violation::DegenerateCell { cell } => write!(f, "cell {cell} is not full-dimensional"),
            Violation::NonConvexCell { cell } => write!(f, "cell {cell} is not in strictly convex position"),
            Violation::Covering { cells_volume, hull_volume } => {
                write!(f, "cells cover volume {cells_volume} but the hull has volume {hull_volume}")
            }
            Violation::NonFaceIntersection { cells } => {
                write!(f, "cells {} and {} do not meet in a common face", cells.0, cells.1)
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every structural and geometric invariant of a subdivision.
///
/// Covering is verified by volume in dimensions two and three only; the
/// pairwise face-intersection test runs in every dimension.
pub fn validate(s: &Subdivision) -> ValidationReport {
    let mut violations = Vec::new();
    let n = s.dim;
    let mut used = vec![false; s.vertices.len()];
    let mut cells_ok = true;
    for (ci, cell) in s.cells.iter().enumerate() {
        for &v in &cell.vertices {
            used[v] = true;
        }
        let pts = s.cell_points(ci);
        if !cell.vertices.iter().all_unique() || !pts.iter().all_unique() {
            violations.push(Violation::RepeatedVertex { cell: ci });
            cells_ok = false;
            continue;
        }
        if cell.len() < n + 1 {
            violations.push(Violation::TooFewVertices { cell: ci });
            cells_ok = false;
            continue;
        }
        let refs: Vec<&[i64]> = pts.iter().map(|p| p.as_slice()).collect();
        if affine_dim_of(&refs) != n as i64 {
            violations.push(Violation::DegenerateCell { cell: ci });
            cells_ok = false;
            continue;
        }
        if cell.class.is_none() {
            violations.push(Violation::NonConvexCell { cell: ci });
            cells_ok = false;
        }
    }
    for (v, u) in used.iter().enumerate() {
        if !u {
            violations.push(Violation::UnusedVertex { vertex: v });
        }
    }
    if !cells_ok {
        return ValidationReport { violations };
    }
    if n == 2 || n == 3 {
        let cells_volume =
            (0..s.cells.len()).fold(Rational::zero(), |acc, ci| acc + volume(&s.cell_points(ci)));
        let all: Vec<Vec<i64>> = s.vertices.iter().map(|p| p.coords().to_vec()).collect();
        let hull_volume = volume(&all);
        if cells_volume != hull_volume {
            violations.push(Violation::Covering { cells_volume, hull_volume });
        }
    }
    for i in 0..s.cells.len() {
        for j in i + 1..s.cells.len() {
            if !meets_in_common_face(s, i, j) {
                violations.push(Violation::NonFaceIntersection { cells: (i, j) });
            }
        }
    }
    ValidationReport { violations }
}

fn bounding_boxes_apart(a: &[Vec<i64>], b: &[Vec<i64>]) -> bool {
    let n = a[0].len();
    (0..n).any(|k| {
        let (amin, amax) = a.iter().map(|p| p[k]).minmax().into_option().unwrap();
        let (bmin, bmax) = b.iter().map(|p| p[k]).minmax().into_option().unwrap();
        amax < bmin || bmax < amin
    })
}

/// Looks for a hyperplane with cell `i` weakly on one side, cell `j` on the
/// other, touching both exactly in their shared vertices.
fn meets_in_common_face(s: &Subdivision, i: usize, j: usize) -> bool {
    let n = s.dim;
    let a = &s.cells[i];
    let b = &s.cells[j];
    let shared: Vec<usize> = a.vertices.iter().copied().filter(|v| b.contains(*v)).collect();
    if shared.is_empty() && bounding_boxes_apart(&s.cell_points(i), &s.cell_points(j)) {
        return true;
    }
    let row = |v: usize, sign: i64| -> Vec<Rational> {
        let mut r: Vec<Rational> = s.vertices[v].coords().iter().map(|&x| rat(sign * x)).collect();
        r.push(rat(-sign));
        r
    };
    let eq = Matrix::from_rows(n + 1, shared.iter().map(|&v| row(v, 1)).collect());
    let basis = solve_homogeneous(&eq);
    let mut strict = Vec::new();
    for &v in a.vertices.iter().filter(|v| !shared.contains(v)) {
        strict.push(row(v, 1));
    }
    for &v in b.vertices.iter().filter(|v| !shared.contains(v)) {
        strict.push(row(v, -1));
    }
    if strict.is_empty() {
        return false;
    }
    let g = Matrix::from_rows(basis.len(), strict.iter().map(|r| basis.iter().map(|k| dot(r, k)).collect()).collect());
    if basis.is_empty() {
        return false;
    }
    max_slack(&g).is_feasible()
}

/// Rational coefficients `c_v`, one per subdivision vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalPolynomial {
    coefficients: Vec<Rational>,
}

impl TropicalPolynomial {
    pub fn new(coefficients: Vec<Rational>) -> Self {
        TropicalPolynomial { coefficients }
    }

    pub fn from_integers(c: &[i64]) -> Self {
        TropicalPolynomial { coefficients: c.iter().map(|&x| rat(x)).collect() }
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    fn check(&self, s: &Subdivision) -> Result<()> {
        if self.coefficients.len() != s.vertices.len() {
            return Err(Error::DimensionMismatch { expected: s.vertices.len(), found: self.coefficients.len() });
        }
        Ok(())
    }
}

/// Evaluates `max_v (<v, x> + c_v)` and returns the maximising vertices.
pub fn tropical_eval(f: &TropicalPolynomial, s: &Subdivision, x: &[Rational]) -> Result<(Rational, Vec<usize>)> {
    f.check(s)?;
    if x.len() != s.dim {
        return Err(Error::DimensionMismatch { expected: s.dim, found: x.len() });
    }
    let vals: Vec<Rational> =
        s.vertices.iter().zip(&f.coefficients).map(|(p, c)| dot(&p.to_rational(), x) + c).collect();
    let max = vals.iter().max().cloned().ok_or(Error::Precondition("no vertices".into()))?;
    let arg = (0..vals.len()).filter(|&i| vals[i] == max).collect();
    Ok((max, arg))
}

/// Affine function `w -> <gradient, w> + constant` on a cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineLift {
    pub gradient: Vec<Rational>,
    pub constant: Rational,
}

impl AffineLift {
    pub fn eval(&self, p: &LatticePoint) -> Rational {
        dot(&self.gradient, &p.to_rational()) + &self.constant
    }
}

/// Lexicographically smallest affinely independent `n+1` vertices of a cell.
pub fn anchors(s: &Subdivision, cell: usize) -> Result<Vec<usize>> {
    let mut sorted = s.cells[cell].vertices.clone();
    sorted.sort_unstable();
    let mut chosen: Vec<usize> = Vec::new();
    for v in sorted {
        let mut cand = chosen.clone();
        cand.push(v);
        let refs: Vec<&[i64]> = cand.iter().map(|&u| s.vertices[u].coords()).collect();
        if affine_dim_of(&refs) == cand.len() as i64 - 1 {
            chosen = cand;
        }
        if chosen.len() == s.dim + 1 {
            return Ok(chosen);
        }
    }
    Err(Error::DegenerateCell)
}

/// Barycentric coordinates of `w` with respect to affinely independent
/// anchor points.
pub fn barycentric(s: &Subdivision, anchors: &[usize], w: &LatticePoint) -> Vec<Rational> {
    let n = s.dim;
    let mut m = Matrix::zeros(n + 1, n + 1);
    for (col, &a) in anchors.iter().enumerate() {
        for r in 0..n {
            m.set(r, col, rat(s.vertices[a][r]));
        }
        m.set(n, col, Rational::one());
    }
    let mut rhs = w.to_rational();
    rhs.push(Rational::one());
    solve_square(&m, &rhs).expect("anchors are affinely independent")
}

/// Linear conditions on the coefficient vector forcing every cell to lift
/// affinely: one row per non-anchor vertex of each cell.
pub fn coplanarity_system(s: &Subdivision) -> Result<Matrix> {
    let mut m = Matrix::zeros(0, s.vertices.len());
    for ci in 0..s.cells.len() {
        let anc = anchors(s, ci)?;
        for &w in s.cells[ci].vertices.iter().filter(|w| !anc.contains(w)) {
            let lambda = barycentric(s, &anc, &s.vertices[w]);
            let mut row = vec![Rational::zero(); s.vertices.len()];
            row[w] = Rational::one();
            for (l, &a) in lambda.iter().zip(&anc) {
                row[a] -= l;
            }
            m.push_row(row);
        }
    }
    Ok(m)
}

/// The affine lift of `f` on one cell, or `NonInterior` if `f` is not affine
/// there.
pub fn cell_lift(s: &Subdivision, f: &TropicalPolynomial, cell: usize) -> Result<AffineLift> {
    f.check(s)?;
    let n = s.dim;
    let anc = anchors(s, cell)?;
    let mut m = Matrix::zeros(n + 1, n + 1);
    let mut rhs = Vec::with_capacity(n + 1);
    for (r, &a) in anc.iter().enumerate() {
        for k in 0..n {
            m.set(r, k, rat(s.vertices[a][k]));
        }
        m.set(r, n, Rational::one());
        rhs.push(f.coefficients[a].clone());
    }
    let sol = solve_square(&m, &rhs).ok_or(Error::DegenerateCell)?;
    let lift = AffineLift { gradient: sol[..n].to_vec(), constant: sol[n].clone() };
    for &v in &s.cells[cell].vertices {
        if lift.eval(&s.vertices[v]) != f.coefficients[v] {
            return Err(Error::NonInterior { cell });
        }
    }
    Ok(lift)
}

/// Certifies that `f` induces exactly `s`: every cell lifts affinely and
/// every other vertex lies strictly below that cell's lift.
pub fn check_interior(s: &Subdivision, f: &TropicalPolynomial) -> Result<Vec<AffineLift>> {
    let mut lifts = Vec::with_capacity(s.cells.len());
    for ci in 0..s.cells.len() {
        let lift = cell_lift(s, f, ci)?;
        for (v, p) in s.vertices.iter().enumerate() {
            if !s.cells[ci].contains(v) && lift.eval(p) <= f.coefficients[v] {
                return Err(Error::NonInterior { cell: ci });
            }
        }
        lifts.push(lift);
    }
    Ok(lifts)
}

/// Finds integer coefficients inducing `s`, or proves none exist.
///
/// Coefficients are searched inside the kernel of [`coplanarity_system`];
/// the strict "below the lift" inequalities are handed to the exact
/// max-slack solver. A positive slack gives the coefficients, zero slack is
/// a certificate of non-regularity.
pub fn pick_interior_coefficients(s: &Subdivision) -> Result<TropicalPolynomial> {
    let sys = coplanarity_system(s)?;
    let basis = solve_homogeneous(&sys);
    let nv = s.vertices.len();
    let mut rows = Vec::new();
    for ci in 0..s.cells.len() {
        let anc = anchors(s, ci)?;
        for w in (0..nv).filter(|&w| !s.cells[ci].contains(w)) {
            let lambda = barycentric(s, &anc, &s.vertices[w]);
            let mut row = vec![Rational::zero(); nv];
            row[w] = Rational::one();
            for (l, &a) in lambda.iter().zip(&anc) {
                row[a] -= l;
            }
            rows.push(basis.iter().map(|k| dot(&row, k)).collect::<Vec<_>>());
        }
    }
    let g = Matrix::from_rows(basis.len(), rows);
    match max_slack(&g) {
        StrictFeasibility::Feasible { y, .. } => {
            let mut c = vec![Rational::zero(); nv];
            for (coef, k) in y.iter().zip(&basis) {
                for (ci, kv) in c.iter_mut().zip(k) {
                    *ci += coef * kv;
                }
            }
            let f = TropicalPolynomial::new(primitive(c));
            check_interior(s, &f).expect("max-slack solution induces the subdivision");
            Ok(f)
        }
        StrictFeasibility::Infeasible { .. } => Err(Error::NonRegular),
    }
}

/// A bounded edge of the dual complex, dual to a facet shared by two cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualEdge {
    pub cells: (usize, usize),
    pub facet: Vec<usize>,
    /// Primitive direction from the first cell's dual vertex to the second's.
    pub direction: Vec<i64>,
    pub weight: Rational,
    /// Dual vertex difference is `length * direction`.
    pub length: Rational,
}

/// An unbounded ray of the dual complex, dual to a boundary facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualRay {
    pub cell: usize,
    pub facet: Vec<usize>,
    pub direction: Vec<i64>,
    pub weight: Rational,
}

/// The tropical hypersurface as a polyhedral complex dual to `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualComplex {
    /// One point per cell: where the cell's monomials tie for the maximum.
    pub positions: Vec<Vec<Rational>>,
    pub edges: Vec<DualEdge>,
    pub rays: Vec<DualRay>,
}

impl DualComplex {
    /// `sum weight * direction` of the outgoing edges and rays at one dual
    /// vertex. Zero at every vertex for a genuine tropical hypersurface.
    pub fn balancing_sum(&self, cell: usize) -> Vec<Rational> {
        let dim = self.positions[cell].len();
        let mut acc = vec![Rational::zero(); dim];
        let mut add = |dir: &[i64], w: &Rational, sign: i64| {
            for (a, &d) in acc.iter_mut().zip(dir) {
                *a += w * rat(sign * d);
            }
        };
        for e in &self.edges {
            if e.cells.0 == cell {
                add(&e.direction, &e.weight, 1);
            }
            if e.cells.1 == cell {
                add(&e.direction, &e.weight, -1);
            }
        }
        for r in self.rays.iter().filter(|r| r.cell == cell) {
            add(&r.direction, &r.weight, 1);
        }
        acc
    }

    /// Number of edges and rays at the dual vertex of `cell`.
    pub fn valence(&self, cell: usize) -> usize {
        self.edges.iter().filter(|e| e.cells.0 == cell || e.cells.1 == cell).count()
            + self.rays.iter().filter(|r| r.cell == cell).count()
    }
}

/// Builds the dual complex of the hypersurface defined by `f`.
pub fn dual_complex(s: &Subdivision, f: &TropicalPolynomial) -> Result<DualComplex> {
    let lifts = check_interior(s, f)?;
    let positions: Vec<Vec<Rational>> =
        lifts.iter().map(|l| l.gradient.iter().map(|g| -g.clone()).collect()).collect();
    let mut by_facet: BTreeMap<Vec<usize>, Vec<(usize, Vec<i64>)>> = BTreeMap::new();
    for ci in 0..s.cells.len() {
        let pts = s.cell_points(ci);
        for fct in facets(&pts) {
            let mut key: Vec<usize> = fct.vertices.iter().map(|&i| s.cells[ci].vertices[i]).collect();
            key.sort_unstable();
            by_facet.entry(key).or_default().push((ci, fct.normal));
        }
    }
    let mut edges = Vec::new();
    let mut rays = Vec::new();
    for (key, owners) in by_facet {
        let face: Vec<Vec<i64>> = key.iter().map(|&v| s.vertices[v].coords().to_vec()).collect();
        match owners.as_slice() {
            [(c, normal)] => {
                let weight = facet_weight(&face, normal);
                rays.push(DualRay { cell: *c, facet: key, direction: normal.clone(), weight });
            }
            [(a, normal), (b, _)] => {
                let weight = facet_weight(&face, normal);
                let diff: Vec<Rational> = positions[*b].iter().zip(&positions[*a]).map(|(x, y)| x - y).collect();
                let k = normal.iter().position(|&x| x != 0).expect("nonzero normal");
                let length = &diff[k] / rat(normal[k]);
                let consistent = diff.iter().zip(normal).all(|(d, &nv)| *d == &length * rat(nv));
                if !consistent || !length.is_positive() {
                    return Err(Error::NonInterior { cell: *a });
                }
                edges.push(DualEdge { cells: (*a, *b), facet: key, direction: normal.clone(), weight, length });
            }
            _ => return Err(Error::Precondition("a facet is shared by more than two cells".into())),
        }
    }
    Ok(DualComplex { positions, edges, rays })
}

/// Maximal sets of points lifted onto a common upper facet, found by
/// testing every affinely independent (n+1)-subset. `None` on overflow.
fn upper_cells<T>(points: &[LatticePoint], h: &[T]) -> Option<Vec<Vec<usize>>>
where
    T: Clone + Zero + One + Signed + From<i64> + CheckedMul + CheckedSub + CheckedDiv + CheckedAdd,
{
    let n = points[0].dim();
    let row = |i: usize, with_h: bool| -> Vec<T> {
        let mut r: Vec<T> = points[i].coords().iter().map(|&x| T::from(x)).collect();
        r.push(T::one());
        if with_h {
            r.push(h[i].clone());
        }
        r
    };
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for t in (0..points.len()).combinations(n + 1) {
        if cells.iter().any(|c| t.iter().all(|i| c.binary_search(i).is_ok())) {
            continue;
        }
        let base: Vec<Vec<T>> = t.iter().map(|&i| row(i, false)).collect();
        let da = det_checked(&base)?;
        if da.is_zero() {
            continue;
        }
        let lifted: Vec<Vec<T>> = t.iter().map(|&i| row(i, true)).collect();
        // cofactors along the appended row of the (n+2)-square lifted matrix
        let mut cof: Vec<T> = Vec::with_capacity(n + 2);
        for j in 0..n + 2 {
            let minor: Vec<Vec<T>> = lifted
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let d = det_checked(&minor)?;
            cof.push(if (n + 1 + j).is_multiple_of(2) { d } else { -d });
        }
        let mut cell = t.clone();
        let mut upper = true;
        for w in (0..points.len()).filter(|w| !t.contains(w)) {
            // height of w above the affine function through the anchors
            let mut above = T::zero();
            for (a, b) in row(w, true).iter().zip(&cof) {
                above = above.checked_add(&a.checked_mul(b)?)?;
            }
            if da.is_negative() {
                above = -above;
            }
            if above.is_positive() {
                upper = false;
                break;
            }
            if above.is_zero() {
                cell.push(w);
            }
        }
        if upper {
            cell.sort_unstable();
            cells.push(cell);
        }
    }
    Some(cells)
}

/// Regular subdivision induced by lifting `points` to `heights` (upper hull
/// convention). Points that end up strictly below the hull, or in the
/// relative interior of a face, are dropped. Returns the subdivision, its
/// coefficients and the original index of every kept point.
pub fn regular_subdivision(
    points: &[LatticePoint],
    heights: &[Rational],
) -> Result<(Subdivision, TropicalPolynomial, Vec<usize>)> {
    let n = points.first().map_or(0, |p| p.dim());
    if heights.len() != points.len() {
        return Err(Error::DimensionMismatch { expected: points.len(), found: heights.len() });
    }
    let refs: Vec<&[i64]> = points.iter().map(|p| p.coords()).collect();
    if n == 0 || affine_dim_of(&refs) != n as i64 {
        return Err(Error::DegenerateCell);
    }
    let denom = heights.iter().fold(BigInt::one(), |acc, h| acc.lcm(h.denom()));
    let h: Vec<BigInt> = heights.iter().map(|x| x.numer() * (&denom / x.denom())).collect();
    let small: Option<Vec<i128>> = h.iter().map(|x| x.to_i128()).collect();
    let cells = match small.and_then(|h| upper_cells(points, &h)) {
        Some(c) => c,
        None => upper_cells(points, &h).expect("big integers do not overflow"),
    };
    let mut drop = vec![true; points.len()];
    for c in &cells {
        for &v in c {
            drop[v] = false;
        }
    }
    for c in cells.iter().filter(|c| c.len() > n + 1) {
        for &q in c {
            let others: Vec<Vec<i64>> =
                c.iter().filter(|&&o| o != q).map(|&o| points[o].coords().to_vec()).collect();
            if !is_extreme(points[q].coords(), &others) {
                drop[q] = true;
            }
        }
    }
    let kept: Vec<usize> = (0..points.len()).filter(|&i| !drop[i]).collect();
    let mut new_index = vec![usize::MAX; points.len()];
    for (k, &i) in kept.iter().enumerate() {
        new_index[i] = k;
    }
    let vertices = kept.iter().map(|&i| points[i].clone()).collect();
    let cells = cells
        .into_iter()
        .map(|c| c.into_iter().filter(|&v| !drop[v]).map(|v| new_index[v]).collect())
        .collect();
    let sub = Subdivision::new(n, vertices, cells)?;
    let f = TropicalPolynomial::new(kept.iter().map(|&i| heights[i].clone()).collect());
    Ok((sub, f, kept))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    fn sub(dim: usize, verts: &[&[i64]], cells: &[&[usize]]) -> Subdivision {
        Subdivision::new(
            dim,
            verts.iter().map(|p| LatticePoint::new(p.to_vec())).collect(),
            cells.iter().map(|c| c.to_vec()).collect(),
        )
        .unwrap()
    }

    fn triangle() -> Subdivision {
        sub(2, &[&[0, 0], &[1, 0], &[0, 1]], &[&[0, 1, 2]])
    }

    #[test]
    fn validate_examples() {
        assert!(validate(&triangle()).is_ok());
        let overlap = sub(2, &[&[0, 0], &[2, 0], &[0, 2], &[1, 0], &[3, 0], &[1, 2]], &[&[0, 1, 2], &[3, 4, 5]]);
        let rep = validate(&overlap);
        assert!(rep.violations.contains(&Violation::NonFaceIntersection { cells: (0, 1) }));
        let gap = sub(2, &[&[0, 0], &[1, 0], &[0, 1], &[2, 0], &[3, 0], &[2, 1]], &[&[0, 1, 2], &[3, 4, 5]]);
        let rep = validate(&gap);
        assert!(rep.violations.iter().any(|v| matches!(v, Violation::Covering { .. })));
        // two squares meeting along half an edge
        let half = sub(
            2,
            &[&[0, 0], &[2, 0], &[2, 2], &[0, 2], &[2, 1], &[4, 1], &[4, 3], &[2, 3]],
            &[&[0, 1, 2, 3], &[4, 5, 6, 7]],
        );
        let rep = validate(&half);
        assert!(rep.violations.contains(&Violation::NonFaceIntersection { cells: (0, 1) }));
    }

    #[test]
    fn validate_structural_errors() {
        let s = sub(2, &[&[0, 0], &[1, 0], &[0, 1], &[5, 5]], &[&[0, 1, 2]]);
        assert!(validate(&s).violations.contains(&Violation::UnusedVertex { vertex: 3 }));
        let s = sub(2, &[&[0, 0], &[1, 0], &[2, 0]], &[&[0, 1, 2]]);
        assert!(validate(&s).violations.contains(&Violation::DegenerateCell { cell: 0 }));
        let s = sub(2, &[&[0, 0], &[1, 0]], &[&[0, 1]]);
        assert!(validate(&s).violations.contains(&Violation::TooFewVertices { cell: 0 }));
        let s = sub(2, &[&[0, 0], &[2, 0], &[1, 1], &[2, 2], &[0, 2]], &[&[0, 1, 2, 3, 4]]);
        assert!(validate(&s).violations.contains(&Violation::NonConvexCell { cell: 0 }));
        assert!(Subdivision::new(2, vec![LatticePoint::new(vec![0, 0])], vec![vec![3]]).is_err());
    }

    #[test]
    fn tropical_line_evaluation() {
        let s = triangle();
        let f = TropicalPolynomial::from_integers(&[0, 0, 0]);
        assert_eq!(tropical_eval(&f, &s, &[rat(0), rat(0)]).unwrap(), (rat(0), vec![0, 1, 2]));
        assert_eq!(tropical_eval(&f, &s, &[rat(-1), rat(-1)]).unwrap(), (rat(0), vec![0]));
        assert_eq!(tropical_eval(&f, &s, &[rat(2), rat(1)]).unwrap(), (rat(2), vec![1]));
        assert!(tropical_eval(&f, &s, &[rat(0)]).is_err());
    }

    #[test]
    fn interior_coefficients() {
        let s = triangle();
        assert_eq!(pick_interior_coefficients(&s).unwrap(), TropicalPolynomial::from_integers(&[0, 0, 0]));
        let split = sub(2, &[&[0, 0], &[1, 0], &[1, 1], &[0, 1]], &[&[0, 1, 2], &[0, 2, 3]]);
        let f = pick_interior_coefficients(&split).unwrap();
        check_interior(&split, &f).unwrap();
        let c = f.coefficients();
        // the diagonal endpoints are lifted above the other two corners
        assert!(&c[0] + &c[2] > &c[1] + &c[3]);
        let chosen = TropicalPolynomial::from_integers(&[1, 0, 1, 0]);
        check_interior(&split, &chosen).unwrap();
    }

    #[test]
    fn twisted_triangulation_is_not_regular() {
        let s = crate::gen::twisted_triangulation();
        assert!(validate(&s).is_ok(), "{:?}", validate(&s));
        assert_eq!(pick_interior_coefficients(&s), Err(Error::NonRegular));
        // the mirror twist is not regular either
        let m = sub(
            2,
            &[&[0, 0], &[4, 0], &[0, 4], &[1, 1], &[2, 1], &[1, 2]],
            &[&[3, 4, 5], &[0, 1, 3], &[1, 4, 3], &[1, 2, 4], &[2, 5, 4], &[2, 0, 5], &[0, 3, 5]],
        );
        assert!(validate(&m).is_ok());
        assert_eq!(pick_interior_coefficients(&m), Err(Error::NonRegular));
    }

    #[test]
    fn dual_of_single_triangle() {
        let s = triangle();
        let d = dual_complex(&s, &TropicalPolynomial::from_integers(&[0, 0, 0])).unwrap();
        assert_eq!(d.positions, vec![vec![rat(0), rat(0)]]);
        let mut dirs: Vec<Vec<i64>> = d.rays.iter().map(|r| r.direction.clone()).collect();
        dirs.sort();
        assert_eq!(dirs, vec![vec![-1, 0], vec![0, -1], vec![1, 1]]);
        assert!(d.edges.is_empty());
        assert!(d.balancing_sum(0).iter().all(Zero::is_zero));
    }

    #[test]
    fn dual_of_glued_tetrahedra() {
        let s = sub(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]], &[&[0, 1, 2, 3], &[1, 2, 3, 4]]);
        assert!(validate(&s).is_ok());
        let f = pick_interior_coefficients(&s).unwrap();
        let d = dual_complex(&s, &f).unwrap();
        assert_eq!(d.edges.len(), 1);
        assert_eq!(d.rays.len(), 6);
        assert_eq!(d.edges[0].direction, vec![1, 1, 1]);
        for c in 0..2 {
            assert!(d.balancing_sum(c).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn square_with_bent_lift_is_not_interior() {
        let s = sub(2, &[&[0, 0], &[1, 0], &[1, 1], &[0, 1]], &[&[0, 1, 2, 3]]);
        let f = TropicalPolynomial::from_integers(&[1, 0, 0, 0]);
        assert_eq!(dual_complex(&s, &f), Err(Error::NonInterior { cell: 0 }));
    }

    #[test]
    fn recovering_the_subdivision_from_its_lift() {
        let s = sub(2, &[&[0, 0], &[1, 0], &[1, 1], &[0, 1]], &[&[0, 1, 2], &[0, 2, 3]]);
        let f = pick_interior_coefficients(&s).unwrap();
        let (r, g, kept) = regular_subdivision(s.vertices(), f.coefficients()).unwrap();
        assert_eq!(kept, vec![0, 1, 2, 3]);
        assert_eq!(g, f);
        let mut cells: Vec<Vec<usize>> = r.cells().iter().map(|c| c.ring().to_vec()).collect();
        cells.iter_mut().for_each(|c| c.sort());
        cells.sort();
        assert_eq!(cells, vec![vec![0, 1, 2], vec![0, 2, 3]]);
    }

    #[test]
    fn regular_subdivision_drops_hidden_points() {
        let pts: Vec<LatticePoint> =
            [[0, 0], [2, 0], [0, 2], [1, 0], [1, 1]].iter().map(|p| LatticePoint::new(p.to_vec())).collect();
        // (1,0) sits on an edge at the lifted line, (1,1) is strictly below
        let h = vec![rat(0), rat(0), rat(0), rat(0), ratio(-1, 2)];
        let (s, _, kept) = regular_subdivision(&pts, &h).unwrap();
        assert_eq!(kept, vec![0, 1, 2]);
        assert_eq!(s.cells().len(), 1);
    }
}
