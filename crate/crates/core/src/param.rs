//! Parameterized tropical curves: the edge-length deformation oracle, end
//! markings and their balancing identity, the overvalent-vertex bound and
//! the bounded-component formula for plane curves.

use std::collections::{BTreeMap, VecDeque};

use num_traits::{One, Signed, Zero};

use crate::geometry::PolygonClass;
use crate::linalg::{matrix_rank, solve_homogeneous, Matrix};
use crate::rank::{expected_rank_embedded, oracle_rank_with, Certificate, RankKind, RankReport};
use crate::subdivision::{dual_complex, Subdivision, TropicalPolynomial};
use crate::{rat, Error, Rational, Result};

/// A bounded edge, oriented from `nodes.0` to `nodes.1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamEdge {
    pub nodes: (usize, usize),
    /// Primitive direction from the first node to the second.
    pub direction: Vec<i64>,
    pub weight: i64,
    pub length: Rational,
}

/// An unbounded end leaving `node` in `direction`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamEnd {
    pub node: usize,
    pub direction: Vec<i64>,
    pub weight: i64,
}

/// A balanced parameterized tropical curve with node positions. Curves built
/// with [`ParamCurve::new`] are connected; resolutions of reducible plane
/// curves may not be.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamCurve {
    dim: usize,
    positions: Vec<Vec<Rational>>,
    edges: Vec<ParamEdge>,
    ends: Vec<ParamEnd>,
}

fn is_primitive(d: &[i64]) -> bool {
    crate::polytope::content(d) == 1
}

fn r2(d: &[i64]) -> [i64; 2] {
    [-d[1], d[0]]
}

impl ParamCurve {
    /// Checks directions, weights, lengths, positions along edges, balancing
    /// at every node and connectivity.
    pub fn new(
        dim: usize,
        positions: Vec<Vec<Rational>>,
        edges: Vec<ParamEdge>,
        ends: Vec<ParamEnd>,
    ) -> Result<ParamCurve> {
        Self::build(dim, positions, edges, ends, true)
    }

    pub(crate) fn build(
        dim: usize,
        positions: Vec<Vec<Rational>>,
        edges: Vec<ParamEdge>,
        ends: Vec<ParamEnd>,
        connected: bool,
    ) -> Result<ParamCurve> {
        let bad = |msg: String| Err(Error::InvalidCurve(msg));
        if connected && positions.is_empty() {
            return bad("no nodes".into());
        }
        for p in &positions {
            if p.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: p.len() });
            }
        }
        let nn = positions.len();
        for (i, e) in edges.iter().enumerate() {
            if e.nodes.0 >= nn || e.nodes.1 >= nn {
                return bad(format!("edge {i} refers to a missing node"));
            }
            if e.direction.len() != dim || !is_primitive(&e.direction) {
                return bad(format!("edge {i} direction is not a primitive vector"));
            }
            if e.weight <= 0 || !e.length.is_positive() {
                return bad(format!("edge {i} needs positive weight and length"));
            }
            let (a, b) = e.nodes;
            for k in 0..dim {
                if positions[b][k].clone() - &positions[a][k] != &e.length * rat(e.direction[k]) {
                    return bad(format!("edge {i} length and direction disagree with node positions"));
                }
            }
        }
        for (i, e) in ends.iter().enumerate() {
            if e.node >= nn {
                return bad(format!("end {i} refers to a missing node"));
            }
            if e.direction.len() != dim || !is_primitive(&e.direction) || e.weight <= 0 {
                return bad(format!("end {i} needs a primitive direction and positive weight"));
            }
        }
        let curve = ParamCurve { dim, positions, edges, ends };
        for v in 0..nn {
            if curve.balance_at(v).iter().any(|x| *x != 0) {
                return bad(format!("node {v} is not balanced"));
            }
        }
        if connected && curve.components() != 1 {
            return bad("graph is not connected".into());
        }
        Ok(curve)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn node_count(&self) -> usize {
        self.positions.len()
    }

    pub fn positions(&self) -> &[Vec<Rational>] {
        &self.positions
    }

    pub fn edges(&self) -> &[ParamEdge] {
        &self.edges
    }

    pub fn ends(&self) -> &[ParamEnd] {
        &self.ends
    }

    /// Number of incident edges and ends; a loop counts twice.
    pub fn valence(&self, v: usize) -> usize {
        self.edges.iter().map(|e| (e.nodes.0 == v) as usize + (e.nodes.1 == v) as usize).sum::<usize>()
            + self.ends.iter().filter(|e| e.node == v).count()
    }

    /// First Betti number of the graph.
    pub fn genus(&self) -> usize {
        self.edges.len() + self.components() - self.positions.len()
    }

    /// `sum weight * outgoing direction` at node `v`.
    pub fn balance_at(&self, v: usize) -> Vec<i64> {
        let mut acc = vec![0i64; self.dim];
        for e in &self.edges {
            for k in 0..self.dim {
                if e.nodes.0 == v {
                    acc[k] += e.weight * e.direction[k];
                }
                if e.nodes.1 == v {
                    acc[k] -= e.weight * e.direction[k];
                }
            }
        }
        for e in self.ends.iter().filter(|e| e.node == v) {
            for k in 0..self.dim {
                acc[k] += e.weight * e.direction[k];
            }
        }
        acc
    }

    fn components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.positions.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for e in &self.edges {
            let a = find(&mut parent, e.nodes.0);
            let b = find(&mut parent, e.nodes.1);
            parent[a] = b;
        }
        (0..parent.len()).filter(|&v| find(&mut parent, v) == v).count()
    }
}

/// Two ways the images of distinct parts of the curve may meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Identification {
    VertexVertex(usize, usize),
    /// A node lying in the interior of a bounded edge.
    VertexEdge(usize, usize),
}

/// Marked points on ends: `(end index, point on that end)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EndMarking {
    pub markers: Vec<(usize, Vec<Rational>)>,
}

/// Node positions as affine expressions in the unknowns
/// `(l_0, ..., l_{E-1}, t_0, ..., t_{n-1})`, following a BFS spanning tree.
/// Returns the expressions and the non-tree edges.
fn tree_positions(c: &ParamCurve) -> (Vec<Vec<Vec<Rational>>>, Vec<usize>) {
    let n = c.dim;
    let ne = c.edges.len();
    let unknowns = ne + n;
    let mut expr: Vec<Option<Vec<Vec<Rational>>>> = vec![None; c.node_count()];
    let mut root = vec![vec![Rational::zero(); unknowns]; n];
    for (k, row) in root.iter_mut().enumerate() {
        row[ne + k] = Rational::one();
    }
    expr[0] = Some(root);
    let mut tree = vec![false; ne];
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for (i, e) in c.edges.iter().enumerate() {
            let (other, sign) = if e.nodes.0 == v {
                (e.nodes.1, 1)
            } else if e.nodes.1 == v {
                (e.nodes.0, -1)
            } else {
                continue;
            };
            if expr[other].is_some() {
                continue;
            }
            let mut x = expr[v].clone().expect("visited");
            for k in 0..n {
                x[k][i] += rat(sign * e.direction[k]);
            }
            expr[other] = Some(x);
            tree[i] = true;
            queue.push_back(other);
        }
    }
    let expr = expr.into_iter().map(|x| x.expect("connected curve")).collect();
    (expr, (0..ne).filter(|&i| !tree[i]).collect())
}

fn diff_rows(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - q).collect()).collect()
}

/// Checks that identified images coincide for the curve's own lengths.
fn check_identifications(c: &ParamCurve, idents: &[Identification]) -> Result<()> {
    let bad = |msg: String| Err(Error::InconsistentIdentification(msg));
    for id in idents {
        match *id {
            Identification::VertexVertex(a, b) => {
                if a >= c.node_count() || b >= c.node_count() || a == b {
                    return bad(format!("{id:?} needs two distinct existing nodes"));
                }
                if c.positions[a] != c.positions[b] {
                    return bad(format!("nodes {a} and {b} have different images"));
                }
            }
            Identification::VertexEdge(a, e) => {
                if a >= c.node_count() || e >= c.edges.len() {
                    return bad(format!("{id:?} refers to a missing node or edge"));
                }
                let edge = &c.edges[e];
                if edge.nodes.0 == a || edge.nodes.1 == a {
                    return bad(format!("node {a} is an endpoint of edge {e}"));
                }
                let base = &c.positions[edge.nodes.0];
                let k = edge.direction.iter().position(|&x| x != 0).expect("nonzero direction");
                let t = (&c.positions[a][k] - &base[k]) / rat(edge.direction[k]);
                let on_line =
                    (0..c.dim).all(|j| c.positions[a][j] == &base[j] + &t * rat(edge.direction[j]));
                if !on_line || !t.is_positive() || t >= edge.length {
                    return bad(format!("node {a} is not in the interior of edge {e}"));
                }
            }
        }
    }
    Ok(())
}

/// The linear conditions on `(lengths, translation)` that keep the curve
/// closed up along its own cycles and keep every identification.
pub fn param_constraint_matrix(c: &ParamCurve, idents: &[Identification]) -> Result<Matrix> {
    check_identifications(c, idents)?;
    let n = c.dim;
    let unknowns = c.edges.len() + n;
    let (expr, non_tree) = tree_positions(c);
    let mut m = Matrix::zeros(0, unknowns);
    for i in non_tree {
        let e = &c.edges[i];
        let mut rows = diff_rows(&expr[e.nodes.1], &expr[e.nodes.0]);
        for (k, row) in rows.iter_mut().enumerate() {
            row[i] -= rat(e.direction[k]);
        }
        rows.into_iter().for_each(|r| m.push_row(r));
    }
    for id in idents {
        match *id {
            Identification::VertexVertex(a, b) => {
                diff_rows(&expr[a], &expr[b]).into_iter().for_each(|r| m.push_row(r));
            }
            Identification::VertexEdge(a, e) => {
                let edge = &c.edges[e];
                let rows = diff_rows(&expr[a], &expr[edge.nodes.0]);
                let dir = Matrix::from_i64(n, std::slice::from_ref(&edge.direction));
                for normal in solve_homogeneous(&dir) {
                    let row = (0..unknowns)
                        .map(|j| (0..n).fold(Rational::zero(), |acc, k| acc + &normal[k] * &rows[k][j]))
                        .collect();
                    m.push_row(row);
                }
            }
        }
    }
    Ok(m)
}

/// Dimension of the space of edge lengths and translations preserving the
/// combinatorics and all identifications.
pub fn param_oracle_rank(c: &ParamCurve, idents: &[Identification]) -> Result<i64> {
    let m = param_constraint_matrix(c, idents)?;
    Ok(m.cols() as i64 - matrix_rank(&m) as i64)
}

/// Dimension of the deformation space through `m` marked end points:
/// `rank - m`, or `rank - m + 1` when every end is marked.
pub fn end_marked_def_dim(c: &ParamCurve, rank: i64, m: usize) -> Result<i64> {
    let ends = c.ends.len();
    if m > ends {
        return Err(Error::InvalidMarking(format!("{m} markers but only {ends} ends")));
    }
    Ok(if m == ends && m > 0 { rank - m as i64 + 1 } else { rank - m as i64 })
}

/// `sum_i <R(w_i d_i), p_i>` for points `p_i` on the ends, with `R` the
/// quarter turn `(x, y) -> (-y, x)`. No check that the points lie on their
/// ends.
pub fn marking_pairing(c: &ParamCurve, points: &[(usize, Vec<Rational>)]) -> Rational {
    points.iter().fold(Rational::zero(), |acc, (end, p)| {
        let e = &c.ends[*end];
        let r = r2(&e.direction);
        acc + rat(e.weight * r[0]) * &p[0] + rat(e.weight * r[1]) * &p[1]
    })
}

/// The balancing pairing of a full end marking. Vanishes for every balanced
/// plane curve.
pub fn balancing_sum(c: &ParamCurve, marking: &EndMarking) -> Result<Rational> {
    if c.dim != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: c.dim });
    }
    let mut seen = vec![false; c.ends.len()];
    for (end, p) in &marking.markers {
        let Some(e) = c.ends.get(*end) else {
            return Err(Error::InvalidMarking(format!("end {end} does not exist")));
        };
        if std::mem::replace(&mut seen[*end], true) {
            return Err(Error::InvalidMarking(format!("end {end} is marked twice")));
        }
        if p.len() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: p.len() });
        }
        let base = &c.positions[e.node];
        let off: Vec<Rational> = p.iter().zip(base).map(|(a, b)| a - b).collect();
        let cross = &off[0] * rat(e.direction[1]) - &off[1] * rat(e.direction[0]);
        let along = &off[0] * rat(e.direction[0]) + &off[1] * rat(e.direction[1]);
        if !cross.is_zero() || !along.is_positive() {
            return Err(Error::InvalidMarking(format!("marker on end {end} is off its ray")));
        }
    }
    if let Some(end) = seen.iter().position(|s| !s) {
        return Err(Error::InvalidMarking(format!("end {end} is not marked")));
    }
    Ok(marking_pairing(c, &marking.markers))
}

/// Result of the overvalent-vertex bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OvervalentBound {
    /// Image points of valence greater than three.
    pub p: usize,
    pub expected: i64,
    pub bound: i64,
    /// Rank of the constraint matrix, for auditing.
    pub constraint_rank: usize,
    pub oracle: i64,
}

/// `#End - 1 + max(0, p - 2)` for a trivalent rational plane curve whose
/// image has `p` points of valence above three.
pub fn p_vertices_bound(c: &ParamCurve, idents: &[Identification]) -> Result<OvervalentBound> {
    if c.dim != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: c.dim });
    }
    if c.genus() != 0 {
        return Err(Error::Precondition("curve is not rational".into()));
    }
    if (0..c.node_count()).any(|v| c.valence(v) != 3) {
        return Err(Error::Precondition("curve is not trivalent".into()));
    }
    let m = param_constraint_matrix(c, idents)?;
    let mut group: Vec<usize> = (0..c.node_count()).collect();
    for id in idents {
        if let Identification::VertexVertex(a, b) = *id {
            let (ga, gb) = (group[a], group[b]);
            group.iter_mut().filter(|g| **g == gb).for_each(|g| *g = ga);
        }
    }
    let mut valence: BTreeMap<usize, usize> = BTreeMap::new();
    for v in 0..c.node_count() {
        *valence.entry(group[v]).or_default() += c.valence(v);
    }
    for id in idents {
        if let Identification::VertexEdge(a, _) = *id {
            *valence.entry(group[a]).or_default() += 2;
        }
    }
    let p = valence.values().filter(|&&v| v > 3).count();
    let expected = c.ends.len() as i64 - 1;
    let constraint_rank = matrix_rank(&m);
    Ok(OvervalentBound {
        p,
        expected,
        bound: expected + (p as i64 - 2).max(0),
        constraint_rank,
        oracle: m.cols() as i64 - constraint_rank as i64,
    })
}

/// The curve obtained from a plane tropical curve by resolving every node:
/// the two branches through a parallelogram's dual vertex become separate
/// edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub curve: ParamCurve,
    /// Subdivision cell dual to each node of `curve`.
    pub node_cell: Vec<usize>,
    /// Nodes dual to cells that are neither triangles nor parallelograms.
    pub non_nodal: Vec<usize>,
}

/// Builds the resolution of the curve defined by `f` on `s`.
pub fn resolve_nodes(s: &Subdivision, f: &TropicalPolynomial) -> Result<Resolution> {
    if s.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: s.dim() });
    }
    let dual = dual_complex(s, f)?;
    let ncells = s.cells().len();
    let classes: Vec<PolygonClass> = (0..ncells).map(|c| s.cell_class(c)).collect::<Result<_>>()?;
    let node_cell: Vec<usize> = (0..ncells).filter(|&c| classes[c] != PolygonClass::Parallelogram).collect();
    let mut node_of = vec![usize::MAX; ncells];
    for (i, &c) in node_cell.iter().enumerate() {
        node_of[c] = i;
    }
    let mut edge_at: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for (i, e) in dual.edges.iter().enumerate() {
        edge_at.insert(e.facet.clone(), i);
    }
    let mut ray_at: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for (i, r) in dual.rays.iter().enumerate() {
        ray_at.insert(r.facet.clone(), i);
    }
    let opposite = |cell: usize, facet: &[usize]| -> Vec<usize> {
        let ring = s.cells()[cell].ring();
        let k = (0..4).find(|&k| facet.contains(&ring[k]) && facet.contains(&ring[(k + 1) % 4])).expect("side");
        let mut o = vec![ring[(k + 2) % 4], ring[(k + 3) % 4]];
        o.sort_unstable();
        o
    };
    let mut used = vec![false; dual.edges.len()];
    let mut edges = Vec::new();
    let mut ends = Vec::new();
    let start_ray = |cell: usize, ends: &mut Vec<ParamEnd>, r: usize| {
        ends.push(ParamEnd {
            node: node_of[cell],
            direction: dual.rays[r].direction.clone(),
            weight: integer(&dual.rays[r].weight),
        });
    };
    for &start in &node_cell {
        for r in (0..dual.rays.len()).filter(|&r| dual.rays[r].cell == start) {
            start_ray(start, &mut ends, r);
        }
        for first in 0..dual.edges.len() {
            let e0 = &dual.edges[first];
            if used[first] || (e0.cells.0 != start && e0.cells.1 != start) {
                continue;
            }
            let sign = if e0.cells.0 == start { 1 } else { -1 };
            let direction: Vec<i64> = e0.direction.iter().map(|x| sign * x).collect();
            let weight = integer(&e0.weight);
            let mut length = Rational::zero();
            let mut current = first;
            let mut from = start;
            loop {
                used[current] = true;
                let e = &dual.edges[current];
                length += &e.length;
                let to = if e.cells.0 == from { e.cells.1 } else { e.cells.0 };
                if classes[to] != PolygonClass::Parallelogram {
                    edges.push(ParamEdge { nodes: (node_of[start], node_of[to]), direction, weight, length });
                    break;
                }
                let next = opposite(to, &e.facet);
                if let Some(&ne) = edge_at.get(&next) {
                    current = ne;
                    from = to;
                } else {
                    // a branch through boundary parallelograms ends in a ray
                    ends.push(ParamEnd { node: node_of[start], direction, weight });
                    break;
                }
            }
        }
    }
    let positions: Vec<Vec<Rational>> = node_cell.iter().map(|&c| dual.positions[c].clone()).collect();
    let curve = ParamCurve::build(2, positions, edges, ends, false)?;
    let non_nodal = (0..node_cell.len()).filter(|&i| !classes[node_cell[i]].is_nodal()).collect();
    Ok(Resolution { curve, node_cell, non_nodal })
}

fn integer(x: &Rational) -> i64 {
    assert!(x.is_integer(), "lattice lengths are integers");
    i64::try_from(x.to_integer()).expect("weight fits in i64")
}

/// Bounded components of the resolution after deleting the non-nodal
/// nodes, each given by the `(non-nodal node, weighted outward direction)`
/// pairs where it attaches.
pub fn bounded_components(res: &Resolution) -> Vec<Vec<(usize, Vec<i64>)>> {
    let c = &res.curve;
    let nn: Vec<bool> = (0..c.node_count()).map(|v| res.non_nodal.contains(&v)).collect();
    let mut comp: Vec<usize> = (0..c.node_count()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for e in &c.edges {
        let (a, b) = e.nodes;
        if !nn[a] && !nn[b] {
            let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
            comp[ra] = rb;
        }
    }
    // key: Ok(root node) for components containing kept nodes, Err(edge) for
    // an open edge joining two deleted nodes
    let mut attach: BTreeMap<std::result::Result<usize, usize>, Vec<(usize, Vec<i64>)>> = BTreeMap::new();
    let mut unbounded: Vec<std::result::Result<usize, usize>> = Vec::new();
    for v in (0..c.node_count()).filter(|&v| !nn[v]) {
        let r = find(&mut comp, v);
        attach.entry(Ok(r)).or_default();
    }
    for (i, e) in c.edges.iter().enumerate() {
        let (a, b) = e.nodes;
        let w: Vec<i64> = e.direction.iter().map(|x| x * e.weight).collect();
        let neg: Vec<i64> = w.iter().map(|x| -x).collect();
        match (nn[a], nn[b]) {
            (true, true) => {
                attach.insert(Err(i), vec![(a, neg), (b, w)]);
            }
            (false, true) => {
                let r = find(&mut comp, a);
                attach.entry(Ok(r)).or_default().push((b, w));
            }
            (true, false) => {
                let r = find(&mut comp, b);
                attach.entry(Ok(r)).or_default().push((a, neg));
            }
            (false, false) => {}
        }
    }
    for e in &c.ends {
        if !nn[e.node] {
            unbounded.push(Ok(find(&mut comp, e.node)));
        }
    }
    attach.into_iter().filter(|(k, _)| !unbounded.contains(k)).map(|(_, v)| v).collect()
}

/// Outcome of the bounded-component formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedComponentsRank {
    pub report: RankReport,
    pub components: usize,
    /// One row per bounded component, two columns per non-nodal node.
    pub matrix: Matrix,
    pub matrix_rank: usize,
    /// `rk_exp + max(0, components - 2)`.
    pub coarse_upper: i64,
}

/// `rk_exp + #(bounded components) - rank M`, where each bounded component
/// contributes the balancing pairing of its attachment directions with the
/// coordinates of the non-nodal nodes.
pub fn bounded_components_rank(
    s: &Subdivision,
    f: &TropicalPolynomial,
    res: &Resolution,
) -> Result<BoundedComponentsRank> {
    let expected_nodes: Vec<usize> =
        (0..s.cells().len()).filter(|&c| s.cell_class(c).map(|k| k != PolygonClass::Parallelogram).unwrap_or(true)).collect();
    let mut cells = res.node_cell.clone();
    cells.sort_unstable();
    let mut nn_cells: Vec<usize> = res.non_nodal.iter().map(|&v| res.node_cell[v]).collect();
    nn_cells.sort_unstable();
    if cells != expected_nodes || nn_cells != s.nontrivial_cells()? || res.curve.dim() != 2 {
        return Err(Error::Precondition("resolution does not match the subdivision".into()));
    }
    let comps = bounded_components(res);
    let col: BTreeMap<usize, usize> = res.non_nodal.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut m = Matrix::zeros(0, 2 * res.non_nodal.len());
    for comp in &comps {
        let mut row = vec![Rational::zero(); m.cols()];
        for (node, wd) in comp {
            let r = r2(wd);
            let k = col[node];
            row[2 * k] += rat(r[0]);
            row[2 * k + 1] += rat(r[1]);
        }
        m.push_row(row);
    }
    let expected = expected_rank_embedded(s);
    let rank_m = matrix_rank(&m);
    let value = expected + comps.len() as i64 - rank_m as i64;
    let coarse_upper = expected + (comps.len() as i64 - 2).max(0);
    let mut report = RankReport::new(RankKind::Exact(value), Certificate::BoundedComponents, expected);
    report.also.push((Certificate::BoundedComponentsCoarse, RankKind::bounds(expected, coarse_upper)));
    let report = report.with_oracle(oracle_rank_with(s, f)?);
    Ok(BoundedComponentsRank { report, components: comps.len(), matrix: m, matrix_rank: rank_m, coarse_upper })
}
