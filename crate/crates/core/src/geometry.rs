//! Lattice points, polygon classification, simplex tests and the
//! coorientation ordering of cells along a generic direction.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Index;

use num_traits::{Signed, Zero};

use crate::polytope::{affine_dim_of, hull_2d};
use crate::subdivision::Subdivision;
use crate::{rat, Error, Rational, Result};

/// A point of `Z^n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint(Vec<i64>);

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticePoint(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn to_rational(&self) -> Vec<Rational> {
        self.0.iter().map(|&x| rat(x)).collect()
    }

    pub fn sub(&self, other: &LatticePoint) -> Vec<i64> {
        self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()
    }
}

impl From<Vec<i64>> for LatticePoint {
    fn from(v: Vec<i64>) -> Self {
        LatticePoint(v)
    }
}

impl<const N: usize> From<[i64; N]> for LatticePoint {
    fn from(v: [i64; N]) -> Self {
        LatticePoint(v.to_vec())
    }
}

impl Index<usize> for LatticePoint {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Combinatorial type of a cell.
///
/// `ParallelEvenGon(m)` and `EvenGonNonParallel(m)` are `2m`-gons,
/// `OddGon(m)` is a `(2m+1)`-gon. `Simplex`/`NonSimplex` are used in
/// dimension three and up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PolygonClass {
    Triangle,
    Parallelogram,
    ParallelEvenGon(usize),
    OddGon(usize),
    EvenGonNonParallel(usize),
    Simplex,
    NonSimplex,
}

impl PolygonClass {
    /// Triangles and parallelograms: the cells of nodal curves.
    pub fn is_nodal(self) -> bool {
        matches!(self, PolygonClass::Triangle | PolygonClass::Parallelogram)
    }

    pub fn is_simplex(self) -> bool {
        matches!(self, PolygonClass::Triangle | PolygonClass::Simplex)
    }

    pub fn name(self) -> String {
        match self {
            PolygonClass::Triangle => "triangle".into(),
            PolygonClass::Parallelogram => "parallelogram".into(),
            PolygonClass::ParallelEvenGon(m) => format!("parallel-{}-gon", 2 * m),
            PolygonClass::OddGon(m) => format!("{}-gon", 2 * m + 1),
            PolygonClass::EvenGonNonParallel(m) => format!("{}-gon", 2 * m),
            PolygonClass::Simplex => "simplex".into(),
            PolygonClass::NonSimplex => "non-simplex".into(),
        }
    }
}

fn check_dims(points: &[LatticePoint]) -> Result<usize> {
    let n = points.first().map_or(0, |p| p.dim());
    for p in points {
        if p.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: p.dim() });
        }
    }
    Ok(n)
}

/// Dimension of the affine hull; `-1` for no points.
pub fn affine_dim(points: &[LatticePoint]) -> Result<i64> {
    check_dims(points)?;
    let refs: Vec<&[i64]> = points.iter().map(|p| p.coords()).collect();
    Ok(affine_dim_of(&refs))
}

/// Classifies a strictly convex lattice polygon given in cyclic order.
pub fn classify_polygon_2d(vertices: &[LatticePoint]) -> Result<PolygonClass> {
    let n = check_dims(vertices)?;
    if n != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: n });
    }
    let k = vertices.len();
    if k < 3 {
        return Err(Error::InvalidPolygon("fewer than three vertices".into()));
    }
    let pts: Vec<Vec<i64>> = vertices.iter().map(|p| p.coords().to_vec()).collect();
    let hull = hull_2d(&pts);
    if hull.len() != k {
        return Err(Error::InvalidPolygon("vertices are repeated or not in strictly convex position".into()));
    }
    let start = hull.iter().position(|&i| i == 0).expect("hull contains every vertex");
    let forward = (0..k).all(|i| hull[(start + i) % k] == i);
    let backward = (0..k).all(|i| hull[(start + k - i) % k] == i);
    if !forward && !backward {
        return Err(Error::InvalidPolygon("vertices are not in cyclic order".into()));
    }
    Ok(classify_ring(&pts))
}

/// Classification of a polygon whose vertices are already known to be in
/// strictly convex cyclic order.
pub(crate) fn classify_ring(pts: &[Vec<i64>]) -> PolygonClass {
    let k = pts.len();
    if k == 3 {
        return PolygonClass::Triangle;
    }
    let edge = |i: usize| -> (i64, i64) {
        let a = &pts[i];
        let b = &pts[(i + 1) % k];
        (b[0] - a[0], b[1] - a[1])
    };
    if k % 2 == 1 {
        return PolygonClass::OddGon(k / 2);
    }
    let m = k / 2;
    let parallel = (0..m).all(|i| {
        let (a, b) = (edge(i), edge(i + m));
        a.0 * b.1 - a.1 * b.0 == 0
    });
    match (parallel, m) {
        (true, 2) => PolygonClass::Parallelogram,
        (true, _) => PolygonClass::ParallelEvenGon(m),
        (false, _) => PolygonClass::EvenGonNonParallel(m),
    }
}

/// True iff the `n`-dimensional cell is a simplex.
pub fn is_simplex(vertices: &[LatticePoint], n: usize) -> Result<bool> {
    let d = check_dims(vertices)?;
    if !vertices.is_empty() && d != n {
        return Err(Error::DimensionMismatch { expected: n, found: d });
    }
    if vertices.len() < n + 1 {
        return Err(Error::Precondition(format!("a cell in dimension {n} needs at least {} vertices", n + 1)));
    }
    if affine_dim(vertices)? < n as i64 {
        return Err(Error::DegenerateCell);
    }
    Ok(vertices.len() == n + 1)
}

/// A rational direction that is certified not to be orthogonal to any edge
/// vector or facet normal of a configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericVector {
    components: Vec<Rational>,
}

impl GenericVector {
    pub fn new(components: Vec<Rational>) -> Self {
        GenericVector { components }
    }

    pub fn components(&self) -> &[Rational] {
        &self.components
    }

    pub fn negated(&self) -> Self {
        GenericVector { components: self.components.iter().map(|x| -x.clone()).collect() }
    }

    fn dot(&self, v: &[i64]) -> Rational {
        self.components.iter().zip(v).fold(Rational::zero(), |acc, (a, &b)| acc + a * rat(b))
    }

    /// Moment-curve vector `(1, K, K^2, ...)` with `K = 1 + 2 max|coordinate|`,
    /// bumped until it passes [`GenericVector::certify`].
    pub fn for_subdivision(s: &Subdivision) -> GenericVector {
        let max = s.vertices().iter().flat_map(|p| p.coords().iter().map(|x| x.abs())).max().unwrap_or(0);
        let mut k = 1 + 2 * max;
        loop {
            let mut comps = Vec::with_capacity(s.dim());
            let mut pow = rat(1);
            for _ in 0..s.dim() {
                comps.push(pow.clone());
                pow *= rat(k);
            }
            let a = GenericVector::new(comps);
            if a.certify(s).is_ok() {
                return a;
            }
            k += 1;
        }
    }

    /// Checks that no cell edge vector and no shared-facet normal is
    /// orthogonal to this vector.
    pub fn certify(&self, s: &Subdivision) -> Result<()> {
        if self.components.len() != s.dim() {
            return Err(Error::DimensionMismatch { expected: s.dim(), found: self.components.len() });
        }
        for cell in s.cells() {
            let vs = cell.vertices();
            for (i, &a) in vs.iter().enumerate() {
                for &b in &vs[i + 1..] {
                    if self.dot(&s.vertices()[a].sub(&s.vertices()[b])).is_zero() {
                        return Err(Error::NonGeneric);
                    }
                }
            }
        }
        for adj in s.adjacencies() {
            if self.dot(&adj.normal).is_zero() {
                return Err(Error::NonGeneric);
            }
        }
        Ok(())
    }
}

/// Linear extension of the coorientation order restricted to `cells`.
///
/// Across every shared facet, the cell whose outward facet normal has
/// positive product with `a` precedes the other one. Ties between
/// incomparable cells are broken by smallest index.
pub fn coorient_order(s: &Subdivision, cells: &[usize], a: &GenericVector) -> Result<Vec<usize>> {
    a.certify(s)?;
    let n = s.cells().len();
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for adj in s.adjacencies() {
        // normal points from adj.cells.0 into adj.cells.1
        let (from, to) = if a.dot(&adj.normal).is_positive() {
            (adj.cells.0, adj.cells.1)
        } else {
            (adj.cells.1, adj.cells.0)
        };
        succ[from].push(to);
        indeg[to] += 1;
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(&c) = ready.iter().next() {
        ready.remove(&c);
        order.push(c);
        for &t in &succ[c] {
            indeg[t] -= 1;
            if indeg[t] == 0 {
                ready.insert(t);
            }
        }
    }
    if order.len() != n {
        return Err(Error::CyclicOrder);
    }
    let wanted: BTreeSet<usize> = cells.iter().copied().collect();
    Ok(order.into_iter().filter(|c| wanted.contains(c)).collect())
}
