//! The twelve acceptance criteria. Prints one PASS/FAIL line per criterion
//! and fails if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use tropical_rank::compare::{compare_dir, render_machine, render_text, CompareOptions};
use tropical_rank::curves::{best_upper_bound, defect_bound, exact_rank_three_nontrivial, rank_with_certificate, upper_bound_ordered, Strategy};
use tropical_rank::geometry::{coorient_order, GenericVector};
use tropical_rank::gen::{
    glued_tetrahedra, random_param_curve, random_unimodular, simplex, transform, transport, witness, witness_coefficients,
};
use tropical_rank::hypersurface::{exact_rank_nd, rank_with_certificate_nd, upper_bound_nd};
use tropical_rank::linalg::matrix_rank;
use tropical_rank::param::{
    balancing_sum, bounded_components_rank, end_marked_def_dim, marking_pairing, param_oracle_rank, resolve_nodes,
    ParamCurve, ParamEnd,
};
use tropical_rank::rank::{expected_rank_embedded, oracle_rank_with, parallelogram_condition_matrix};
use tropical_rank::search::{search_defect, SearchParams};
use tropical_rank::skeleton::{lower_bound_r3, lower_bound_r4, skeleton_metrics, skeleton_of_surface, SkeletonCurve};
use tropical_rank::subdivision::pick_interior_coefficients;
use tropical_rank::surface::best_algo_bounds;
use tropical_rank::{rat, PolygonClass, Subdivision, TropicalPolynomial};

use common::{induces, naive_rank, nodal_instances, plane_instances, space_instances};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn oracle(s: &Subdivision, f: &TropicalPolynomial) -> Result<i64, String> {
    ensure(induces(s, f), || "coefficients do not induce the subdivision".into())?;
    let lib = oracle_rank_with(s, f).map_err(|e| e.to_string())?;
    let naive = naive_rank(s);
    ensure(lib == naive, || format!("library oracle {lib} differs from direct count {naive}"))?;
    Ok(naive)
}

fn e<T>(r: tropical_rank::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn worked_example() -> Outcome {
    let start = Instant::now();
    let out = search_defect(&SearchParams::default());
    let secs = start.elapsed().as_secs_f64();
    let quads = |s: &Subdivision| {
        let nt = s.nontrivial_cells().unwrap_or_default();
        nt.len() == 3 && nt.iter().all(|&c| s.cell_class(c) == Ok(PolygonClass::EvenGonNonParallel(2)))
    };
    let w = out
        .witnesses
        .iter()
        .find(|w| quads(&w.subdivision) && w.expected == 2 && w.oracle == 3)
        .ok_or_else(|| format!("no witness with expected 2 and oracle 3 among {}", out.witnesses.len()))?;
    let s = &w.subdivision;
    ensure(oracle(s, &w.coefficients)? == 3, || "oracle is not 3".into())?;
    ensure(expected_rank_embedded(s) == 2, || "expected rank is not 2".into())?;
    let formula = e(exact_rank_three_nontrivial(s))?.value();
    ensure(formula == 3, || format!("three-cell formula gives {formula}"))?;
    ensure(oracle(&witness(), &witness_coefficients())? == 3, || "fixture oracle".into())?;
    ensure(secs < 60.0, || format!("search took {secs:.1}s"))?;
    let v: Vec<&[i64]> = s.vertices().iter().map(|p| p.coords()).collect();
    Ok(format!("{} witnesses in {secs:.1}s, first {v:?}: 6 - 1 - 3 = 2, oracle 3, formula 3", out.witnesses.len()))
}

fn at_most_two() -> Outcome {
    let set = plane_instances(21, 240, |s| s.nontrivial_cells().is_ok_and(|c| c.len() <= 2));
    let with_cells = set.iter().filter(|(s, _)| !s.nontrivial_cells().unwrap().is_empty()).count();
    for (i, (s, f)) in set.iter().enumerate() {
        let (o, x) = (oracle(s, f)?, expected_rank_embedded(s));
        ensure(o == x, || format!("instance {i}: oracle {o}, expected {x}"))?;
    }
    Ok(format!("{} instances ({with_cells} with non-trivial cells), oracle = expected on all", set.len()))
}

fn nodal() -> Outcome {
    let set = nodal_instances(31, 220);
    let mut parallelograms = 0;
    for (i, (s, f)) in set.iter().enumerate() {
        let (o, x) = (oracle(s, f)?, expected_rank_embedded(s));
        ensure(o == x, || format!("instance {i}: oracle {o}, expected {x}"))?;
        let all: Vec<usize> = (0..s.cells().len()).collect();
        let order = e(coorient_order(s, &all, &GenericVector::for_subdivision(s)))?;
        let m = e(parallelogram_condition_matrix(s, &order))?;
        parallelograms += m.rows();
        ensure(matrix_rank(&m) == m.rows(), || format!("instance {i}: rows {} rank {}", m.rows(), matrix_rank(&m)))?;
    }
    Ok(format!("{} nodal instances, {parallelograms} parallelogram rows, all full rank", set.len()))
}

fn singular_plane() -> Vec<(Subdivision, TropicalPolynomial)> {
    plane_instances(41, 300, |s| s.nontrivial_cells().is_ok_and(|c| !c.is_empty()))
}

fn defect_bound_holds() -> Outcome {
    let mut set = singular_plane();
    let found = search_defect(&SearchParams { seed: 7, ..SearchParams::default() });
    set.extend(found.witnesses.into_iter().map(|w| (w.subdivision, w.coefficients)));
    let mut positive = 0;
    for (i, (s, f)) in set.iter().enumerate() {
        let d = oracle(s, f)? - expected_rank_embedded(s);
        let b = e(defect_bound(s))?;
        positive += (d > 0) as usize;
        ensure(0 <= 2 * d && 2 * d <= b, || format!("instance {i}: defect {d}, bound {b}"))?;
    }
    ensure(positive > 0, || "no instance with positive defect".into())?;
    Ok(format!("{} singular instances ({positive} with positive defect), zero violations", set.len()))
}

/// All orderings when there are at most six cells, otherwise 200 shuffles.
fn orderings(cells: &[usize], seed: u64) -> Vec<Vec<usize>> {
    if cells.len() <= 6 {
        return cells.iter().copied().permutations(cells.len()).collect();
    }
    let mut rng = common::rng(seed);
    (0..200)
        .map(|_| {
            let mut o = cells.to_vec();
            for i in (1..o.len()).rev() {
                o.swap(i, rng.gen_range(0..=i));
            }
            o
        })
        .collect()
}

fn ordered_upper() -> Outcome {
    let plane = singular_plane();
    let mut checked = 0usize;
    for (i, (s, f)) in plane.iter().take(220).enumerate() {
        let o = oracle(s, f)?;
        for ord in orderings(&e(s.nontrivial_cells())?, i as u64) {
            let u = e(upper_bound_ordered(s, &ord))?;
            ensure(u >= o, || format!("plane instance {i}, ordering {ord:?}: bound {u} < oracle {o}"))?;
            checked += 1;
        }
    }
    let mut counts = Vec::new();
    for n in [3, 4] {
        let set = space_instances(50 + n as u64, n, 60);
        for (i, (s, f)) in set.iter().enumerate() {
            let o = oracle(s, f)?;
            for ord in orderings(&e(s.non_simplex_cells())?, i as u64) {
                let u = e(upper_bound_nd(s, &ord))?;
                ensure(u >= o, || format!("dimension {n} instance {i}, ordering {ord:?}: bound {u} < oracle {o}"))?;
                checked += 1;
            }
        }
        counts.push(set.len());
    }
    Ok(format!("220 plane, {} in R^3, {} in R^4 instances; {checked} orderings, none below the oracle", counts[0], counts[1]))
}

fn exact_formulas() -> Outcome {
    let plane = plane_instances(61, 120, |s| s.nontrivial_cells().is_ok_and(|c| c.len() == 3));
    let mut dependent = 0;
    for (i, (s, f)) in plane.iter().enumerate() {
        let o = oracle(s, f)?;
        let v = e(exact_rank_three_nontrivial(s))?;
        ensure(v.value() == o, || format!("plane instance {i}: formula {} oracle {o}", v.value()))?;
        dependent += !v.labeling_independent() as usize;
    }
    let mut counts = Vec::new();
    for n in [3, 4] {
        let set: Vec<_> = space_instances(70 + n as u64, n, 200)
            .into_iter()
            .filter(|(s, _)| s.non_simplex_cells().is_ok_and(|c| c.len() <= 3))
            .collect();
        ensure(set.len() >= 50, || format!("only {} instances in dimension {n}", set.len()))?;
        for (i, (s, f)) in set.iter().enumerate() {
            let o = oracle(s, f)?;
            let v = e(exact_rank_nd(s))?;
            ensure(v.value() == o, || format!("dimension {n} instance {i}: formula {} oracle {o}", v.value()))?;
            dependent += !v.ordering_independent() as usize;
        }
        counts.push(set.len());
    }
    Ok(format!(
        "{} plane, {} in R^3, {} in R^4 instances, zero mismatches under the minimum over orderings ({dependent} depend on the ordering)",
        plane.len(),
        counts[0],
        counts[1]
    ))
}

fn surface_algorithm() -> Outcome {
    let one = e(best_algo_bounds(&simplex(3)))?;
    ensure((one.lower, one.upper) == (3, 3), || format!("single cell gives ({}, {})", one.lower, one.upper))?;
    let two = e(best_algo_bounds(&glued_tetrahedra()))?;
    ensure((two.lower, two.upper) == (4, 4), || format!("glued tetrahedra give ({}, {})", two.lower, two.upper))?;
    let set = space_instances(81, 3, 40);
    let mut exact = 0;
    for (i, (s, f)) in set.iter().enumerate() {
        let o = oracle(s, f)?;
        let b = e(best_algo_bounds(s))?;
        ensure(b.lower <= o && o <= b.upper, || format!("instance {i}: {} <= {o} <= {} fails", b.lower, b.upper))?;
        exact += (b.lower == b.upper) as usize;
    }
    Ok(format!("(3,3) and (4,4) reproduced; {} surfaces bracketed ({exact} exact)", set.len()))
}

fn balancing() -> Outcome {
    let mut rng = common::rng(91);
    for i in 0..1000 {
        let (c, marking) = random_param_curve(&mut rng, 1 + i % 5);
        ensure(marking.markers.len() == c.ends().len(), || "not fully marked".into())?;
        let sum = e(balancing_sum(&c, &marking))?;
        // recomputed from the quarter-turn pairing
        let direct = marking.markers.iter().fold(BigRational::zero(), |acc, (k, p)| {
            let end = &c.ends()[*k];
            let w = end.weight;
            acc + rat(-w * end.direction[1]) * &p[0] + rat(w * end.direction[0]) * &p[1]
        });
        ensure(sum.is_zero() && direct.is_zero(), || format!("curve {i}: sum {sum}, direct {direct}"))?;
        let mut moved = marking.clone();
        let k = rng.gen_range(0..moved.markers.len());
        let d = c.ends()[moved.markers[k].0].direction.clone();
        let off = loop {
            let v = [rng.gen_range(-3i64..=3), rng.gen_range(-3i64..=3)];
            if v[0] * d[1] - v[1] * d[0] != 0 {
                break v;
            }
        };
        moved.markers[k].1[0] += rat(off[0]);
        moved.markers[k].1[1] += rat(off[1]);
        ensure(!marking_pairing(&c, &moved.markers).is_zero(), || format!("curve {i}: perturbed sum vanishes"))?;
        ensure(balancing_sum(&c, &moved).is_err(), || format!("curve {i}: off-ray marker accepted"))?;
    }
    Ok("1000 fully marked curves sum to 0; every off-ray perturbation is nonzero".into())
}

fn marked_dimensions() -> Outcome {
    let end = |d: [i64; 2]| ParamEnd { node: 0, direction: d.to_vec(), weight: 1 };
    let line = e(ParamCurve::new(2, vec![vec![rat(0), rat(0)]], vec![], vec![end([-1, 0]), end([0, -1]), end([1, 1])]))?;
    let rk = e(param_oracle_rank(&line, &[]))?;
    ensure(rk == 2, || format!("line rank {rk}"))?;
    let one = e(end_marked_def_dim(&line, rk, 1))?;
    let all = e(end_marked_def_dim(&line, rk, 3))?;
    ensure(one == 1 && all == 0, || format!("got {one} and {all}"))?;
    Ok(format!("tropical line: 2 - 1 = {one}, 2 - 3 + 1 = {all}"))
}

fn single_node(dim: usize) -> SkeletonCurve {
    let mut rays: Vec<(usize, Vec<i64>)> = (0..dim)
        .map(|k| {
            let mut d = vec![0; dim];
            d[k] = -1;
            (0, d)
        })
        .collect();
    rays.push((0, vec![1; dim]));
    SkeletonCurve { dim, nodes: vec![vec![rat(0); dim]], edges: vec![], rays, cycles: None }
}

fn skeleton_bounds() -> Outcome {
    let r3 = lower_bound_r3(&e(skeleton_metrics(&single_node(3)))?);
    ensure(r3 == rat(3), || format!("4-valent node gives {r3}"))?;
    let r4 = lower_bound_r4(&e(skeleton_metrics(&single_node(4)))?);
    let s4 = simplex(4);
    let o4 = oracle(&s4, &e(pick_interior_coefficients(&s4))?)?;
    ensure(r4 == rat(4) && o4 == 4, || format!("5-valent node gives {r4}, simplex oracle {o4}"))?;
    let set = space_instances(81, 3, 40);
    let mut volumes = 0;
    for (i, (s, f)) in set.iter().enumerate() {
        let o = oracle(s, f)?;
        let m = e(skeleton_metrics(&e(skeleton_of_surface(s, f))?))?;
        let b = lower_bound_r3(&m);
        volumes += m.closed_volumes;
        ensure(b <= rat(o), || format!("instance {i}: bound {b} > oracle {o}"))?;
    }
    Ok(format!("r3 = 3, r4 = 4 = oracle; {} skeletons ({volumes} closed volumes) below the oracle", set.len()))
}

/// Everything that must not change under a lattice automorphism.
fn signature(s: &Subdivision, f: &TropicalPolynomial) -> Result<Vec<String>, String> {
    let mut out = vec![expected_rank_embedded(s).to_string(), oracle(s, f)?.to_string()];
    if s.dim() == 2 {
        out.push(e(defect_bound(s))?.to_string());
        out.push(e(best_upper_bound(s, Strategy::Exhaustive))?.to_string());
        let r = e(rank_with_certificate(s))?;
        out.push(format!("{} {} {:?}", r.kind, r.certificate, r.defect));
        let res = e(resolve_nodes(s, f))?;
        let bc = e(bounded_components_rank(s, f, &res))?;
        out.push(format!("{} {} {}", bc.components, bc.report.kind, bc.coarse_upper));
    } else {
        let r = e(rank_with_certificate_nd(s))?;
        out.push(format!("{} {} {:?}", r.kind, r.certificate, r.defect));
        let m = e(skeleton_metrics(&e(tropical_rank::skeleton::skeleton_of_hypersurface(s, f))?))?;
        out.push(format!("{} {} {} {}", m.ends, m.overvalence, m.genus, m.closed_volumes));
    }
    Ok(out)
}

fn invariance() -> Outcome {
    let mut classes: Vec<(&str, Subdivision, TropicalPolynomial)> = vec![("witness", witness(), witness_coefficients())];
    let (s, f) = nodal_instances(101, 1).remove(0);
    classes.push(("nodal", s, f));
    let (s, f) = plane_instances(102, 1, |s| s.nontrivial_cells().is_ok_and(|c| c.len() == 3)).remove(0);
    classes.push(("three non-nodal", s, f));
    let (s, f) = plane_instances(103, 1, |s| s.nontrivial_cells().is_ok_and(|c| c.len() >= 4)).remove(0);
    classes.push(("many non-nodal", s, f));
    let (s, f) = space_instances(104, 3, 1).remove(0);
    classes.push(("surface", s, f));
    let (s, f) = space_instances(105, 4, 1).remove(0);
    classes.push(("hypersurface in R^4", s, f));
    let mut rng = common::rng(106);
    for (name, s, f) in &classes {
        let base = signature(s, f)?;
        for k in 0..100 {
            let n = s.dim();
            let u = random_unimodular(&mut rng, n);
            let t: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
            let moved = transform(s, &u, &t);
            let g = transport(f);
            ensure(induces(&moved, &g), || format!("{name}: transform {k} breaks the lifting"))?;
            let sig = signature(&moved, &g)?;
            ensure(sig == base, || format!("{name}: transform {k} changes {base:?} to {sig:?}"))?;
        }
        if *name == "surface" {
            let b = e(best_algo_bounds(s))?;
            for _ in 0..100 {
                let u = random_unimodular(&mut rng, 3);
                let t: Vec<i64> = (0..3).map(|_| rng.gen_range(-5..=5)).collect();
                let m = e(best_algo_bounds(&transform(s, &u, &t)))?;
                ensure((m.lower, m.upper) == (b.lower, b.upper), || "bloc growth changed".into())?;
            }
        }
    }
    Ok(format!("{} classes x 100 transforms, all signatures unchanged", classes.len()))
}

fn determinism() -> Outcome {
    let dir = common::corpus_dir();
    let mut outputs = Vec::new();
    for threads in [1, 2, 4, 1, 8] {
        let rows = e(compare_dir(&dir, &CompareOptions { threads, ..CompareOptions::default() }))?;
        outputs.push((render_text(&rows), render_machine(&rows)));
    }
    ensure(outputs.iter().all_equal(), || "outputs differ".into())?;
    let rows = outputs[0].1.lines().count();
    ensure(rows >= 30, || format!("corpus has {rows} rows"))?;
    Ok(format!("{rows} rows, identical text and machine output over 5 runs with 1, 2, 4 and 8 threads"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("worked example reproduced", worked_example),
        ("at most two non-trivial cells: oracle = expected", at_most_two),
        ("nodal curves: independence and full row rank", nodal),
        ("defect bound on singular plane curves", defect_bound_holds),
        ("ordered upper bounds dominate the oracle", ordered_upper),
        ("exact formulas for at most three cells", exact_formulas),
        ("surface bloc growth", surface_algorithm),
        ("balancing of marked ends", balancing),
        ("dimensions with marked ends", marked_dimensions),
        ("skeleton lower bounds", skeleton_bounds),
        ("invariance under lattice automorphisms", invariance),
        ("compare is deterministic", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.1}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.1}s): {why}", i + 1)
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
