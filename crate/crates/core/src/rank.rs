//! Expected ranks, the linear-algebra rank oracle and the report type shared
//! by every bound and formula in the crate.

use std::fmt;

use num_traits::Zero;

use crate::geometry::PolygonClass;
use crate::linalg::{nullity, Matrix};
use crate::param::ParamCurve;
use crate::subdivision::{check_interior, coplanarity_system, pick_interior_coefficients, Subdivision, TropicalPolynomial};
use crate::{rat, Error, Rational, Result};

/// Either an exact rank or a bracket around it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RankKind {
    Exact(i64),
    Bounds { lower: Rational, upper: Rational },
}

impl RankKind {
    pub fn bounds(lower: i64, upper: i64) -> Self {
        if lower == upper {
            RankKind::Exact(lower)
        } else {
            RankKind::Bounds { lower: rat(lower), upper: rat(upper) }
        }
    }

    pub fn lower(&self) -> Rational {
        match self {
            RankKind::Exact(v) => rat(*v),
            RankKind::Bounds { lower, .. } => lower.clone(),
        }
    }

    pub fn upper(&self) -> Rational {
        match self {
            RankKind::Exact(v) => rat(*v),
            RankKind::Bounds { upper, .. } => upper.clone(),
        }
    }

    pub fn contains(&self, value: i64) -> bool {
        let v = rat(value);
        self.lower() <= v && v <= self.upper()
    }
}

impl fmt::Display for RankKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankKind::Exact(v) => write!(f, "Exact({v})"),
            RankKind::Bounds { lower, upper } => write!(f, "Bounds({lower}, {upper})"),
        }
    }
}

/// The statement that justifies a reported rank or bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Certificate {
    /// Triangles and parallelograms only: conditions are independent.
    NodalIndependence,
    /// At most two cells that are neither triangles nor parallelograms.
    AtMostTwoNonNodal,
    /// Exactly three such cells: minimum of the ordered bound.
    ThreeNonNodal,
    /// Plane curve ordered upper bound together with the expected rank.
    OrderedUpperBound,
    /// Bound on twice the defect from polygon counts.
    DefectBound,
    /// Ordered bound in higher dimension, exact for at most three non-simplices.
    AtMostThreeNonSimplex,
    /// Ordered bound in higher dimension with more non-simplices.
    OrderedUpperBoundNd,
    /// Bloc-growing traversal for surfaces in three-space.
    BlocGrowth,
    /// Bounded components of the resolved curve and their balancing rows.
    BoundedComponents,
    /// Coarse bound from the number of bounded components.
    BoundedComponentsCoarse,
    /// Overvalent image vertices of a rational trivalent curve.
    OvervalentVertices,
    /// Skeleton lower bound with closed volumes.
    ClosedVolumes,
    /// Nullity of the coplanarity system.
    Oracle,
}

impl Certificate {
    pub fn name(self) -> &'static str {
        match self {
            Certificate::NodalIndependence => "nodal independence",
            Certificate::AtMostTwoNonNodal => "at most two non-nodal cells",
            Certificate::ThreeNonNodal => "three non-nodal cells",
            Certificate::OrderedUpperBound => "ordered upper bound",
            Certificate::DefectBound => "defect bound",
            Certificate::AtMostThreeNonSimplex => "at most three non-simplex cells",
            Certificate::OrderedUpperBoundNd => "ordered upper bound (n-dim)",
            Certificate::BlocGrowth => "bloc growth",
            Certificate::BoundedComponents => "bounded components",
            Certificate::BoundedComponentsCoarse => "bounded components (coarse)",
            Certificate::OvervalentVertices => "overvalent vertices",
            Certificate::ClosedVolumes => "closed volumes",
            Certificate::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A rank or bound with its certificate, plus oracle data when available.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankReport {
    pub kind: RankKind,
    pub certificate: Certificate,
    pub expected: i64,
    pub oracle: Option<i64>,
    /// `oracle - expected`.
    pub defect: Option<i64>,
    /// Secondary results computed on the way.
    pub also: Vec<(Certificate, RankKind)>,
}

impl RankReport {
    pub fn new(kind: RankKind, certificate: Certificate, expected: i64) -> Self {
        RankReport { kind, certificate, expected, oracle: None, defect: None, also: Vec::new() }
    }

    pub fn with_oracle(mut self, oracle: i64) -> Self {
        self.oracle = Some(oracle);
        self.defect = Some(oracle - self.expected);
        self
    }

    /// True when the oracle value, if any, lies inside every reported range.
    pub fn consistent(&self) -> bool {
        match self.oracle {
            None => true,
            Some(o) => self.kind.contains(o) && self.also.iter().all(|(_, k)| k.contains(o)),
        }
    }
}

impl fmt::Display for RankReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "expected {}", self.expected)?;
        if let Some(o) = self.oracle {
            write!(f, ", oracle {o}")?;
        }
        write!(f, ", {} [{}]", self.kind, self.certificate)
    }
}

/// `#Vert(S) - 1 - sum over cells of (#Vert(cell) - (n+1))`.
pub fn expected_rank_embedded(s: &Subdivision) -> i64 {
    let n = s.dim() as i64;
    let deductions: i64 = s.cells().iter().map(|c| c.len() as i64 - (n + 1)).sum();
    s.vertices().len() as i64 - 1 - deductions
}

/// `#End + (n-3)(1-g) - sum over nodes of (valence - 3)`.
pub fn expected_rank_param(curve: &ParamCurve) -> i64 {
    let n = curve.dim() as i64;
    let g = curve.genus() as i64;
    let over: i64 = (0..curve.node_count()).map(|v| curve.valence(v) as i64 - 3).sum();
    curve.ends().len() as i64 + (n - 3) * (1 - g) - over
}

/// Dimension of the space of coefficient vectors inducing `s`, modulo the
/// global additive constant. Regularity is certified first.
pub fn oracle_rank(s: &Subdivision) -> Result<i64> {
    pick_interior_coefficients(s)?;
    oracle_rank_unchecked(s)
}

/// Like [`oracle_rank`], but regularity is certified by the given
/// coefficients instead of a linear program.
pub fn oracle_rank_with(s: &Subdivision, f: &TropicalPolynomial) -> Result<i64> {
    check_interior(s, f)?;
    oracle_rank_unchecked(s)
}

fn oracle_rank_unchecked(s: &Subdivision) -> Result<i64> {
    let sys = coplanarity_system(s)?;
    Ok(nullity(&sys) as i64 - 1)
}

/// `oracle_rank - expected_rank_embedded`.
pub fn defect(s: &Subdivision) -> Result<i64> {
    Ok(oracle_rank(s)? - expected_rank_embedded(s))
}

/// Columns of the parallelogram condition matrix: vertices in order of first
/// appearance along `order`, then the remaining vertices.
pub fn discovery_order(s: &Subdivision, order: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; s.vertices().len()];
    let mut out = Vec::with_capacity(seen.len());
    for &c in order {
        for &v in s.cells()[c].ring() {
            if !seen[v] {
                seen[v] = true;
                out.push(v);
            }
        }
    }
    out.extend((0..seen.len()).filter(|&v| !seen[v]));
    out
}

/// One row per parallelogram in `order`: `c_a - c_b + c_c - c_d = 0` for the
/// ring `a, b, c, d`. Columns follow [`discovery_order`].
pub fn parallelogram_condition_matrix(s: &Subdivision, order: &[usize]) -> Result<Matrix> {
    if s.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: s.dim() });
    }
    for i in 0..s.cells().len() {
        match s.cell_class(i)? {
            PolygonClass::Triangle | PolygonClass::Parallelogram => {}
            other => {
                return Err(Error::InvalidCell { cell: i, reason: format!("{} is not allowed here", other.name()) })
            }
        }
    }
    let cols = discovery_order(s, order);
    let mut position = vec![0; cols.len()];
    for (k, &v) in cols.iter().enumerate() {
        position[v] = k;
    }
    let mut m = Matrix::zeros(0, cols.len());
    for &c in order {
        if s.cell_class(c)? != PolygonClass::Parallelogram {
            continue;
        }
        let mut row = vec![Rational::zero(); cols.len()];
        for (k, &v) in s.cells()[c].ring().iter().enumerate() {
            row[position[v]] = rat(if k % 2 == 0 { 1 } else { -1 });
        }
        m.push_row(row);
    }
    Ok(m)
}

/// Column of the last nonzero entry of each row, if strictly increasing.
pub fn staircase(m: &Matrix) -> Option<Vec<usize>> {
    let mut out: Vec<usize> = Vec::with_capacity(m.rows());
    for r in 0..m.rows() {
        let last = (0..m.cols()).rev().find(|&c| !m.get(r, c).is_zero())?;
        if out.last().is_some_and(|&p| p >= last) {
            return None;
        }
        out.push(last);
    }
    Some(out)
}
