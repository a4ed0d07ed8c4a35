//! 1-skeletons of tropical hypersurfaces viewed as spatial curves: counts
//! of ends, overvalence, genus and closed volumes, and the lower bounds built
//! from them.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};

use crate::linalg::{dot, matrix_rank, solve_homogeneous, Matrix};
use crate::polytope::facets;
use crate::subdivision::{dual_complex, Subdivision, TropicalPolynomial};
use crate::{rat, ratio, Error, Rational, Result};

/// Affine plane `{x : <normal, x> = offset}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plane {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

impl Plane {
    fn contains(&self, x: &[Rational]) -> bool {
        dot(&self.normal, x) == self.offset
    }
}

/// A minimal cycle given by its nodes in cyclic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub nodes: Vec<usize>,
    pub plane: Option<Plane>,
}

/// A geometric graph with rays, optionally with declared minimal cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletonCurve {
    pub dim: usize,
    pub nodes: Vec<Vec<Rational>>,
    pub edges: Vec<(usize, usize)>,
    pub rays: Vec<(usize, Vec<i64>)>,
    pub cycles: Option<Vec<Cycle>>,
}

/// The counts entering the lower bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletonMetrics {
    pub ends: usize,
    /// Sum of `valence - (dim + 1)` over the nodes.
    pub overvalence: usize,
    pub genus: usize,
    /// Rank of second homology after filling the minimal cycles.
    pub closed_volumes: usize,
    /// The minimal cycles used, as node lists.
    pub faces: Vec<Vec<usize>>,
    /// Best-effort check that every closed volume has a face of its own.
    /// This is a heuristic, not a proof.
    pub hypothesis_heuristic: bool,
}

impl SkeletonCurve {
    pub fn valence(&self, v: usize) -> usize {
        self.edges.iter().map(|&(a, b)| (a == v) as usize + (b == v) as usize).sum::<usize>()
            + self.rays.iter().filter(|r| r.0 == v).count()
    }

    /// Checks indices, dimensions, valences and declared cycles.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidCurve(m));
        if self.nodes.is_empty() {
            return bad("no nodes".into());
        }
        for p in &self.nodes {
            if p.len() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, found: p.len() });
            }
        }
        let n = self.nodes.len();
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if a >= n || b >= n || a == b || self.nodes[a] == self.nodes[b] {
                return bad(format!("edge {i} is degenerate or refers to a missing node"));
            }
        }
        for (i, (v, d)) in self.rays.iter().enumerate() {
            if *v >= n || d.len() != self.dim || d.iter().all(|&x| x == 0) {
                return bad(format!("ray {i} is invalid"));
            }
        }
        for v in 0..n {
            if self.valence(v) < self.dim + 1 {
                return bad(format!("node {v} has valence {} below {}", self.valence(v), self.dim + 1));
            }
        }
        Ok(())
    }

    fn components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.nodes.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        (0..parent.len()).filter(|&v| find(&mut parent, v) == v).count()
    }

    fn edge_index(&self) -> BTreeMap<(usize, usize), usize> {
        let mut m = BTreeMap::new();
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            m.insert((a, b), i);
            m.insert((b, a), i);
        }
        m
    }
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn cross3(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// Coordinates in a plane with the given normal: drop the coordinate where
/// the normal is largest. Orientation is consistent within one plane.
fn project(normal: &[Rational], x: &[Rational]) -> [Rational; 2] {
    let k = (0..3).max_by(|&i, &j| normal[i].abs().cmp(&normal[j].abs()).then(j.cmp(&i))).expect("3d");
    let (i, j) = match k {
        0 => (1, 2),
        1 => (2, 0),
        _ => (0, 1),
    };
    [x[i].clone(), x[j].clone()]
}

fn cross2(a: &[Rational; 2], b: &[Rational; 2]) -> Rational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn half(d: &[Rational; 2]) -> u8 {
    if d[1].is_positive() || (d[1].is_zero() && d[0].is_positive()) {
        0
    } else {
        1
    }
}

/// Counterclockwise angular comparison of nonzero planar vectors.
fn angle_cmp(a: &[Rational; 2], b: &[Rational; 2]) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| Rational::zero().cmp(&cross2(a, b)))
}

fn signed_area(pts: &[[Rational; 2]]) -> Rational {
    let n = pts.len();
    (0..n).fold(Rational::zero(), |acc, i| acc + cross2(&pts[i], &pts[(i + 1) % n]))
}

/// Strictly convex polygon check on projected points, either orientation.
fn strictly_convex(pts: &[[Rational; 2]]) -> bool {
    let n = pts.len();
    if n < 3 {
        return false;
    }
    let mut sign = 0;
    for i in 0..n {
        let a = &pts[i];
        let b = &pts[(i + 1) % n];
        let c = &pts[(i + 2) % n];
        let ab = [&b[0] - &a[0], &b[1] - &a[1]];
        let bc = [&c[0] - &b[0], &c[1] - &b[1]];
        let s = cross2(&ab, &bc);
        let sg = if s.is_positive() { 1 } else if s.is_negative() { -1 } else { return false };
        if sign != 0 && sg != sign {
            return false;
        }
        sign = sg;
    }
    // same-sign turns with exactly one wrap of the edge directions
    let dirs: Vec<[Rational; 2]> = (0..n).map(|i| dir2(&pts[i], &pts[(i + 1) % n])).collect();
    let wanted = if sign > 0 { Ordering::Greater } else { Ordering::Less };
    (0..n).filter(|&i| angle_cmp(&dirs[i], &dirs[(i + 1) % n]) == wanted).count() == 1
}

fn dir2(a: &[Rational; 2], b: &[Rational; 2]) -> [Rational; 2] {
    [&b[0] - &a[0], &b[1] - &a[1]]
}

/// Does `p + t (q - p)` for `t` in `[0, 1]` (or `[0, inf)` for rays) meet
/// the open interior of the convex polygon?
fn path_hits_interior(poly: &[[Rational; 2]], p: &[Rational; 2], q: &[Rational; 2], ray: bool) -> bool {
    let ccw = signed_area(poly).is_positive();
    let n = poly.len();
    // (value, strict); None for +infinity
    let mut lo: (Rational, bool) = (Rational::zero(), false);
    let mut hi: Option<(Rational, bool)> = if ray { None } else { Some((Rational::one(), false)) };
    let d = dir2(p, q);
    for i in 0..n {
        let a = &poly[i];
        let b = &poly[(i + 1) % n];
        let e = dir2(a, b);
        // h(x) = cross(e, x - a), positive inside for ccw polygons
        let sgn = if ccw { rat(1) } else { rat(-1) };
        let h0 = &sgn * cross2(&e, &dir2(a, p));
        let h1 = &sgn * cross2(&e, &d);
        if h1.is_zero() {
            if !h0.is_positive() {
                return false;
            }
        } else {
            let t = -&h0 / &h1;
            if h1.is_positive() {
                if t >= lo.0 {
                    lo = (t, true);
                }
            } else {
                let tighter = match &hi {
                    None => true,
                    Some((v, _)) => t <= *v,
                };
                if tighter {
                    hi = Some((t, true));
                }
            }
        }
    }
    match hi {
        None => true,
        Some((h, hs)) => lo.0 < h || (lo.0 == h && !lo.1 && !hs),
    }
}

/// Validates declared cycles: closed walks along edges, planar, strictly
/// convex, and not crossed by any edge or ray.
fn check_declared(c: &SkeletonCurve, cycles: &[Cycle]) -> Result<Vec<Vec<usize>>> {
    let bad = |m: String| Err(Error::InvalidCurve(m));
    let edges = c.edge_index();
    let mut out = Vec::new();
    for (ci, cyc) in cycles.iter().enumerate() {
        let k = cyc.nodes.len();
        if k < 3 || cyc.nodes.iter().any(|&v| v >= c.nodes.len()) {
            return bad(format!("cycle {ci} is too short or refers to a missing node"));
        }
        for i in 0..k {
            if !edges.contains_key(&(cyc.nodes[i], cyc.nodes[(i + 1) % k])) {
                return bad(format!("cycle {ci} uses a missing edge"));
            }
        }
        let pts: Vec<&Vec<Rational>> = cyc.nodes.iter().map(|&v| &c.nodes[v]).collect();
        let plane = match &cyc.plane {
            Some(p) => p.clone(),
            None => {
                let normal = cross3(&sub(pts[1], pts[0]), &sub(pts[2], pts[0]));
                let offset = dot(&normal, pts[0]);
                Plane { normal, offset }
            }
        };
        if plane.normal.iter().all(Zero::is_zero) || !pts.iter().all(|p| plane.contains(p)) {
            return Err(Error::InvalidCurve(format!("cycle {ci} is not planar")));
        }
        let poly: Vec<[Rational; 2]> = pts.iter().map(|p| project(&plane.normal, p)).collect();
        if !strictly_convex(&poly) {
            return bad(format!("cycle {ci} is not strictly convex"));
        }
        for (ei, &(a, b)) in c.edges.iter().enumerate() {
            if crosses(c, &plane, &poly, &c.nodes[a], &c.nodes[b], false) {
                return bad(format!("edge {ei} passes through cycle {ci}"));
            }
        }
        for (ri, (v, d)) in c.rays.iter().enumerate() {
            let far: Vec<Rational> = c.nodes[*v].iter().zip(d).map(|(x, &y)| x + rat(y)).collect();
            if crosses(c, &plane, &poly, &c.nodes[*v], &far, true) {
                return bad(format!("ray {ri} passes through cycle {ci}"));
            }
        }
        out.push(cyc.nodes.clone());
    }
    Ok(out)
}

fn crosses(
    _c: &SkeletonCurve,
    plane: &Plane,
    poly: &[[Rational; 2]],
    p: &[Rational],
    q: &[Rational],
    ray: bool,
) -> bool {
    let hp = dot(&plane.normal, p) - &plane.offset;
    let hq = dot(&plane.normal, q) - &plane.offset;
    if hp.is_zero() && hq.is_zero() {
        return path_hits_interior(poly, &project(&plane.normal, p), &project(&plane.normal, q), ray);
    }
    if hp == hq {
        return false;
    }
    let t = &hp / (&hp - &hq);
    if t.is_negative() || (!ray && t > Rational::one()) {
        return false;
    }
    let x: Vec<Rational> = p.iter().zip(q).map(|(a, b)| a + &t * (b - a)).collect();
    let pt = project(&plane.normal, &x);
    path_hits_interior(poly, &pt, &pt, false)
}

/// Bounded faces of the planar subgraphs through every pair of edges at a
/// node, traced with the face on the left.
fn trace_faces(c: &SkeletonCurve) -> Vec<Vec<usize>> {
    let mut seen_keys: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut faces = Vec::new();
    let edges = c.edge_index();
    let mut planes: BTreeSet<(Vec<Rational>, Rational)> = BTreeSet::new();
    for v in 0..c.nodes.len() {
        let nbrs: Vec<usize> = c
            .edges
            .iter()
            .filter_map(|&(a, b)| if a == v { Some(b) } else if b == v { Some(a) } else { None })
            .collect();
        for i in 0..nbrs.len() {
            for j in i + 1..nbrs.len() {
                let n = cross3(&sub(&c.nodes[nbrs[i]], &c.nodes[v]), &sub(&c.nodes[nbrs[j]], &c.nodes[v]));
                if n.iter().all(Zero::is_zero) {
                    continue;
                }
                let n = crate::linalg::primitive(n);
                let n = if n.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
                    n.iter().map(|x| -x.clone()).collect()
                } else {
                    n
                };
                let off = dot(&n, &c.nodes[v]);
                planes.insert((n, off));
            }
        }
    }
    for (normal, offset) in planes {
        let plane = Plane { normal, offset };
        let in_plane: Vec<bool> = c.nodes.iter().map(|p| plane.contains(p)).collect();
        // darts leaving each node inside the plane: Some(target) or None for rays
        let mut darts: BTreeMap<usize, Vec<([Rational; 2], Option<usize>)>> = BTreeMap::new();
        for &(a, b) in &c.edges {
            if in_plane[a] && in_plane[b] {
                let pa = project(&plane.normal, &c.nodes[a]);
                let pb = project(&plane.normal, &c.nodes[b]);
                darts.entry(a).or_default().push((dir2(&pa, &pb), Some(b)));
                darts.entry(b).or_default().push((dir2(&pb, &pa), Some(a)));
            }
        }
        for (v, d) in &c.rays {
            let dr: Vec<Rational> = d.iter().map(|&x| rat(x)).collect();
            if in_plane[*v] && dot(&plane.normal, &dr).is_zero() {
                let zero: Vec<Rational> = vec![Rational::zero(); 3];
                let pd = dir2(&project(&plane.normal, &zero), &project(&plane.normal, &dr));
                darts.entry(*v).or_default().push((pd, None));
            }
        }
        for list in darts.values_mut() {
            list.sort_by(|a, b| angle_cmp(&a.0, &b.0));
        }
        let next = |from: usize, at: usize| -> Option<usize> {
            let list = &darts[&at];
            let back = list.iter().position(|(_, t)| *t == Some(from)).expect("reverse dart");
            let k = (back + list.len() - 1) % list.len();
            list[k].1
        };
        for (&a, list) in &darts {
            for (_, t) in list {
                let Some(b) = *t else { continue };
                let mut walk = vec![a];
                let (mut prev, mut cur) = (a, b);
                let mut bounded = true;
                while cur != a || walk.len() == 1 {
                    if walk.len() > c.nodes.len() + 1 {
                        bounded = false;
                        break;
                    }
                    walk.push(cur);
                    match next(prev, cur) {
                        Some(n) => {
                            prev = cur;
                            cur = n;
                        }
                        None => {
                            bounded = false;
                            break;
                        }
                    }
                }
                if !bounded || next(prev, cur) != Some(b) || walk.len() < 3 {
                    continue;
                }
                let poly: Vec<[Rational; 2]> = walk.iter().map(|&v| project(&plane.normal, &c.nodes[v])).collect();
                if !signed_area(&poly).is_positive() {
                    continue;
                }
                let mut key: Vec<usize> =
                    (0..walk.len()).map(|i| edges[&(walk[i], walk[(i + 1) % walk.len()])]).collect();
                key.sort_unstable();
                if seen_keys.insert(key) {
                    faces.push(walk);
                }
            }
        }
    }
    faces
}

/// Boundary matrix: one row per edge, one column per face, entries +-1.
fn boundary(c: &SkeletonCurve, faces: &[Vec<usize>]) -> Matrix {
    let mut m = Matrix::zeros(c.edges.len(), faces.len());
    for (j, f) in faces.iter().enumerate() {
        for i in 0..f.len() {
            let (a, b) = (f[i], f[(i + 1) % f.len()]);
            let (k, s) = c
                .edges
                .iter()
                .enumerate()
                .find_map(|(k, &(x, y))| {
                    if (x, y) == (a, b) {
                        Some((k, 1))
                    } else if (x, y) == (b, a) {
                        Some((k, -1))
                    } else {
                        None
                    }
                })
                .expect("face edge exists");
            let v = m.get(k, j) + rat(s);
            m.set(k, j, v);
        }
    }
    m
}

/// Kernel basis of the boundary map with supports shrunk greedily.
fn small_cycle_basis(m: &Matrix) -> Vec<Vec<Rational>> {
    let mut basis = solve_homogeneous(m);
    let support = |v: &[Rational]| v.iter().filter(|x| !x.is_zero()).count();
    let mut improved = true;
    while improved {
        improved = false;
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i == j {
                    continue;
                }
                for sign in [rat(1), rat(-1)] {
                    let cand: Vec<Rational> = basis[i].iter().zip(&basis[j]).map(|(a, b)| a + &sign * b).collect();
                    if support(&cand) < support(&basis[i]) {
                        basis[i] = cand;
                        improved = true;
                    }
                }
            }
        }
    }
    basis
}

/// Counts of the skeleton. Closed volumes are computed only in three-space;
/// minimal cycles are the declared ones, or traced planar faces otherwise.
pub fn skeleton_metrics(c: &SkeletonCurve) -> Result<SkeletonMetrics> {
    c.validate()?;
    let base = c.dim + 1;
    let overvalence = (0..c.nodes.len()).map(|v| c.valence(v) - base).sum();
    let genus = c.edges.len() + c.components() - c.nodes.len();
    let (faces, closed_volumes, hypothesis_heuristic) = if c.dim == 3 {
        let faces = match &c.cycles {
            Some(cycles) => check_declared(c, cycles)?,
            None => trace_faces(c),
        };
        let d = boundary(c, &faces);
        let r = matrix_rank(&d);
        if c.cycles.is_none() && r < genus {
            return Err(Error::InvalidCurve("a minimal cycle is not planar".into()));
        }
        let basis = small_cycle_basis(&d);
        let own = basis.iter().enumerate().all(|(i, b)| {
            (0..faces.len()).any(|f| !b[f].is_zero() && basis.iter().enumerate().all(|(j, o)| j == i || o[f].is_zero()))
        });
        (faces, faces_len_minus(&d, r), own)
    } else {
        (Vec::new(), 0, true)
    };
    Ok(SkeletonMetrics { ends: c.rays.len(), overvalence, genus, closed_volumes, faces, hypothesis_heuristic })
}

fn faces_len_minus(d: &Matrix, rank: usize) -> usize {
    d.cols() - rank
}

/// `#End/2 + 1 - ov/2 + N_cl`.
pub fn lower_bound_r3(m: &SkeletonMetrics) -> Rational {
    ratio(m.ends as i64, 2) + rat(1) - ratio(m.overvalence as i64, 2) + rat(m.closed_volumes as i64)
}

/// `#End/3 - g/3 + 7/3 - ov/3`, with overvalence counted above valence five.
pub fn lower_bound_r4(m: &SkeletonMetrics) -> Rational {
    ratio(m.ends as i64, 3) - ratio(m.genus as i64, 3) + ratio(7, 3) - ratio(m.overvalence as i64, 3)
}

/// The 1-skeleton of the hypersurface defined by `f`: one node per cell,
/// one edge per interior facet, one ray per boundary facet. In three-space
/// the minimal cycles, dual to the interior edges of `s`, are attached with
/// their planes.
pub fn skeleton_of_hypersurface(s: &Subdivision, f: &TropicalPolynomial) -> Result<SkeletonCurve> {
    let dual = dual_complex(s, f)?;
    let edges: Vec<(usize, usize)> = dual.edges.iter().map(|e| e.cells).collect();
    let rays: Vec<(usize, Vec<i64>)> = dual.rays.iter().map(|r| (r.cell, r.direction.clone())).collect();
    let cycles = if s.dim() == 3 { Some(interior_edge_cycles(s, &dual.positions)?) } else { None };
    Ok(SkeletonCurve { dim: s.dim(), nodes: dual.positions, edges, rays, cycles })
}

/// Three-space case of [`skeleton_of_hypersurface`].
pub fn skeleton_of_surface(s: &Subdivision, f: &TropicalPolynomial) -> Result<SkeletonCurve> {
    if s.dim() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: s.dim() });
    }
    skeleton_of_hypersurface(s, f)
}

/// Vertex pairs that are edges of some cell of a 3-dimensional subdivision.
fn cell_edges(s: &Subdivision, cell: usize) -> Vec<(usize, usize)> {
    let pts = s.cell_points(cell);
    let fs = facets(&pts);
    let verts = s.cells()[cell].vertices();
    let mut out = Vec::new();
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            let containing: Vec<&crate::polytope::Facet> =
                fs.iter().filter(|f| f.vertices.contains(&i) && f.vertices.contains(&j)).collect();
            if containing.len() < 2 {
                continue;
            }
            let common: Vec<usize> = (0..verts.len())
                .filter(|k| containing.iter().all(|f| f.vertices.contains(k)))
                .collect();
            if common == vec![i, j] {
                let (a, b) = (verts[i].min(verts[j]), verts[i].max(verts[j]));
                out.push((a, b));
            }
        }
    }
    out
}

fn interior_edge_cycles(s: &Subdivision, positions: &[Vec<Rational>]) -> Result<Vec<Cycle>> {
    let mut around: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for c in 0..s.cells().len() {
        for e in cell_edges(s, c) {
            around.entry(e).or_default().push(c);
        }
    }
    let mut cycles = Vec::new();
    for ((a, b), cells) in around {
        // cells around the edge, linked through facets containing it
        let link = |x: usize, y: usize| {
            s.adjacencies().iter().any(|adj| {
                (adj.cells == (x, y) || adj.cells == (y, x)) && adj.shared.contains(&a) && adj.shared.contains(&b)
            })
        };
        let deg: Vec<usize> =
            cells.iter().map(|&x| cells.iter().filter(|&&y| y != x && link(x, y)).count()).collect();
        if cells.len() < 3 || deg.iter().any(|&d| d != 2) {
            continue; // boundary edge
        }
        let mut order = vec![cells[0]];
        let mut prev = usize::MAX;
        let mut cur = cells[0];
        loop {
            let next = *cells.iter().find(|&&y| y != cur && y != prev && link(cur, y)).expect("ring");
            if next == cells[0] {
                break;
            }
            order.push(next);
            prev = cur;
            cur = next;
            if order.len() > cells.len() {
                return Err(Error::Precondition("cells around an edge do not form a ring".into()));
            }
        }
        if order.len() != cells.len() {
            continue;
        }
        let normal: Vec<Rational> = s.vertices()[b].sub(&s.vertices()[a]).iter().map(|&x| rat(x)).collect();
        let offset = dot(&normal, &positions[order[0]]);
        cycles.push(Cycle { nodes: order, plane: Some(Plane { normal, offset }) });
    }
    Ok(cycles)
}

/// Checks the bookkeeping identities between nodes, edges, ends, overvalence
/// and genus for a connected skeleton in three-space:
/// `2E = 4V - #End + ov` and `2V = #End - ov + 2g - 2`.
pub fn bookkeeping_holds(c: &SkeletonCurve, m: &SkeletonMetrics) -> bool {
    let v = c.nodes.len() as i64;
    let e = c.edges.len() as i64;
    let ends = m.ends as i64;
    let ov = m.overvalence as i64;
    let g = m.genus as i64;
    2 * e == 4 * v - ends + ov && 2 * v == ends - ov + 2 * g - 2
}
