//! Property tests over generated instances. Each case draws a seed and
//! builds its instance from it.

mod common;

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::Zero;
use proptest::prelude::*;
use rand::Rng;
use tropical_rank::curves::{
    best_upper_bound, defect_bound, exact_rank_three_nontrivial, upper_bound_ordered, Strategy,
};
use tropical_rank::geometry::{affine_dim, classify_polygon_2d, coorient_order, GenericVector};
use tropical_rank::gen::{random_nodal, random_param_curve, random_unimodular, simplex, transform};
use tropical_rank::hypersurface::{exact_rank_nd, upper_bound_nd};
use tropical_rank::io::{parse_curve, parse_subdivision, write_curve, write_subdivision, Claims, CurveFile, SubdivisionFile};
use tropical_rank::param::{
    balancing_sum, bounded_components_rank, p_vertices_bound, param_oracle_rank, resolve_nodes, ParamCurve, ParamEdge,
};
use tropical_rank::rank::{expected_rank_embedded, oracle_rank_with};
use tropical_rank::skeleton::{bookkeeping_holds, lower_bound_r3, skeleton_metrics, skeleton_of_surface};
use tropical_rank::subdivision::{dual_complex, pick_interior_coefficients, regular_subdivision, tropical_eval};
use tropical_rank::surface::best_algo_bounds;
use tropical_rank::{rat, ratio, LatticePoint, PolygonClass, Rational, Subdivision, TropicalPolynomial};

use common::{induces, naive_rank, plane_instances, space_instances};

fn plane(seed: u64) -> (Subdivision, TropicalPolynomial) {
    plane_instances(seed, 1, |_| true).remove(0)
}

fn singular(seed: u64) -> (Subdivision, TropicalPolynomial) {
    plane_instances(seed, 1, |s| s.nontrivial_cells().is_ok_and(|c| !c.is_empty())).remove(0)
}

fn moved(s: &Subdivision, seed: u64) -> Subdivision {
    let mut rng = common::rng(seed);
    let u = random_unimodular(&mut rng, s.dim());
    let t: Vec<i64> = (0..s.dim()).map(|_| rng.gen_range(-7..=7)).collect();
    transform(s, &u, &t)
}

fn cell_sets(s: &Subdivision) -> BTreeSet<BTreeSet<Vec<i64>>> {
    s.cells().iter().map(|c| c.vertices().iter().map(|&v| s.vertices()[v].coords().to_vec()).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn affine_dim_and_polygon_class_are_lattice_invariant(seed in any::<u64>()) {
        let (s, _) = plane(seed);
        let m = moved(&s, seed ^ 1);
        prop_assert_eq!(affine_dim(s.vertices()).unwrap(), affine_dim(m.vertices()).unwrap());
        for i in 0..s.cells().len() {
            let a: Vec<LatticePoint> = s.cells()[i].ring().iter().map(|&v| s.vertices()[v].clone()).collect();
            let b: Vec<LatticePoint> = m.cells()[i].ring().iter().map(|&v| m.vertices()[v].clone()).collect();
            prop_assert_eq!(classify_polygon_2d(&a).unwrap(), classify_polygon_2d(&b).unwrap());
        }
    }

    #[test]
    fn negated_vector_reverses_the_coorientation(seed in any::<u64>()) {
        let (s, _) = plane(seed);
        let a = GenericVector::for_subdivision(&s);
        let all: Vec<usize> = (0..s.cells().len()).collect();
        let fwd = coorient_order(&s, &all, &a).unwrap();
        let back = coorient_order(&s, &all, &a.negated()).unwrap();
        let pos = |o: &[usize], c: usize| o.iter().position(|&x| x == c).unwrap();
        for adj in s.adjacencies() {
            let (p, q) = adj.cells;
            prop_assert_eq!(pos(&fwd, p) < pos(&fwd, q), pos(&back, p) > pos(&back, q));
        }
    }

    #[test]
    fn tropical_polynomials_are_convex(seed in any::<u64>(), x in prop::array::uniform4(-20i64..20)) {
        let (s, f) = plane(seed);
        let p = [ratio(x[0], 3), ratio(x[1], 2)];
        let q = [ratio(x[2], 5), rat(x[3])];
        let mid: Vec<Rational> = p.iter().zip(&q).map(|(a, b)| (a + b) / rat(2)).collect();
        let v = |y: &[Rational]| tropical_eval(&f, &s, y).unwrap().0;
        prop_assert!(v(&mid) * rat(2) <= v(&p) + v(&q));
    }

    #[test]
    fn dual_curves_are_balanced(seed in any::<u64>()) {
        let (s, f) = plane(seed);
        let d = dual_complex(&s, &f).unwrap();
        for c in 0..s.cells().len() {
            prop_assert!(d.balancing_sum(c).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn certified_coefficients_reproduce_the_subdivision(seed in any::<u64>()) {
        let (s, _) = if seed % 2 == 0 { plane(seed) } else { space_instances(seed, 3, 1).remove(0) };
        let f = pick_interior_coefficients(&s).unwrap();
        prop_assert!(induces(&s, &f));
        let (back, _, _) = regular_subdivision(s.vertices(), f.coefficients()).unwrap();
        prop_assert_eq!(cell_sets(&back), cell_sets(&s));
    }

    #[test]
    fn plane_ranks_and_bounds(seed in any::<u64>()) {
        let (s, f) = singular(seed);
        let oracle = oracle_rank_with(&s, &f).unwrap();
        let expected = expected_rank_embedded(&s);
        prop_assert_eq!(oracle, naive_rank(&s));
        prop_assert!(expected <= oracle);
        prop_assert!(2 * (oracle - expected) <= defect_bound(&s).unwrap());
        let cells = s.nontrivial_cells().unwrap();
        let best = best_upper_bound(&s, Strategy::Exhaustive).unwrap();
        let mut values = BTreeSet::new();
        for o in cells.iter().copied().permutations(cells.len()).take(720) {
            let u = upper_bound_ordered(&s, &o).unwrap();
            prop_assert!(oracle <= u && best <= u);
            values.insert(u);
        }
        let disjoint = cells.iter().tuple_combinations().all(|(&a, &b)| {
            s.cells()[a].vertices().iter().all(|v| !s.cells()[b].contains(*v))
        });
        if disjoint {
            prop_assert_eq!(values.len(), 1);
        }
        if cells.len() == 3 {
            prop_assert_eq!(exact_rank_three_nontrivial(&s).unwrap().value(), oracle);
        }
        let res = resolve_nodes(&s, &f).unwrap();
        prop_assert_eq!(bounded_components_rank(&s, &f, &res).unwrap().report.kind.lower(), rat(oracle));
    }

    #[test]
    fn plane_formula_is_the_two_dimensional_ordered_bound(seed in any::<u64>()) {
        let (s, _) = plane_instances(seed, 1, |s| {
            (0..s.cells().len()).all(|c| s.cell_class(c) != Ok(PolygonClass::Parallelogram))
                && s.nontrivial_cells().is_ok_and(|c| (1..=4).contains(&c.len()))
        })
        .remove(0);
        let cells = s.nontrivial_cells().unwrap();
        for o in cells.iter().copied().permutations(cells.len()) {
            prop_assert_eq!(upper_bound_ordered(&s, &o).unwrap(), upper_bound_nd(&s, &o).unwrap());
        }
    }

    #[test]
    fn constant_shift_does_not_change_the_oracle(seed in any::<u64>(), k in -5i64..5) {
        let (s, f) = plane(seed);
        let shifted = TropicalPolynomial::new(f.coefficients().iter().map(|c| c + rat(k)).collect());
        prop_assert_eq!(oracle_rank_with(&s, &f).unwrap(), oracle_rank_with(&s, &shifted).unwrap());
    }

    #[test]
    fn plane_quantities_are_lattice_invariant(seed in any::<u64>()) {
        let (s, f) = singular(seed);
        let m = moved(&s, seed ^ 2);
        prop_assert_eq!(expected_rank_embedded(&s), expected_rank_embedded(&m));
        prop_assert_eq!(oracle_rank_with(&s, &f).unwrap(), oracle_rank_with(&m, &f).unwrap());
        prop_assert_eq!(defect_bound(&s).unwrap(), defect_bound(&m).unwrap());
        prop_assert_eq!(best_upper_bound(&s, Strategy::Exhaustive).unwrap(), best_upper_bound(&m, Strategy::Exhaustive).unwrap());
    }

    #[test]
    fn nodal_curves_have_the_expected_rank(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let (s, f) = random_nodal(&mut rng, 3, 4);
        prop_assert_eq!(oracle_rank_with(&s, &f).unwrap(), expected_rank_embedded(&s));
    }

    #[test]
    fn parameterized_curves(seed in any::<u64>(), num in 1i64..7, den in 1i64..7) {
        let mut rng = common::rng(seed);
        let (c, marking) = random_param_curve(&mut rng, 1 + (seed % 4) as usize);
        prop_assert!(balancing_sum(&c, &marking).unwrap().is_zero());
        let rank = param_oracle_rank(&c, &[]).unwrap();
        prop_assert_eq!(rank, (c.edges().len() + c.dim()) as i64);
        prop_assert!(rank <= p_vertices_bound(&c, &[]).unwrap().bound);
        let l = ratio(num, den);
        let scaled = ParamCurve::new(
            c.dim(),
            c.positions().iter().map(|p| p.iter().map(|x| x * &l).collect()).collect(),
            c.edges().iter().map(|e| ParamEdge { length: &e.length * &l, ..e.clone() }).collect(),
            c.ends().to_vec(),
        )
        .unwrap();
        prop_assert_eq!(param_oracle_rank(&scaled, &[]).unwrap(), rank);
    }

    #[test]
    fn files_round_trip(seed in any::<u64>(), num in -50i64..50, den in 1i64..12) {
        let (s, f) = plane(seed);
        let mut c = f.coefficients().to_vec();
        c[0] += ratio(num, den);
        let file = SubdivisionFile {
            subdivision: s,
            coefficients: Some(TropicalPolynomial::new(c)),
            claims: Claims { expected: Some(num), ..Claims::default() },
        };
        let text = write_subdivision(&file);
        prop_assert_eq!(&parse_subdivision(&text).unwrap(), &file);
        prop_assert_eq!(write_subdivision(&parse_subdivision(&text).unwrap()), text);
        let mut rng = common::rng(seed);
        let (curve, marking) = random_param_curve(&mut rng, 3);
        let cf = CurveFile { curve, identifications: vec![], marking: Some(marking) };
        prop_assert_eq!(parse_curve(&write_curve(&cf)).unwrap(), cf);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn surfaces(seed in any::<u64>()) {
        let (s, f) = space_instances(seed, 3, 1).remove(0);
        let oracle = oracle_rank_with(&s, &f).unwrap();
        prop_assert_eq!(oracle, naive_rank(&s));
        prop_assert!(expected_rank_embedded(&s) <= oracle);
        let b = best_algo_bounds(&s).unwrap();
        prop_assert!(b.lower <= oracle && oracle <= b.upper);
        let m = moved(&s, seed ^ 3);
        let bm = best_algo_bounds(&m).unwrap();
        prop_assert_eq!((b.lower, b.upper), (bm.lower, bm.upper));
        let sk = skeleton_of_surface(&s, &f).unwrap();
        let metrics = skeleton_metrics(&sk).unwrap();
        prop_assert!(lower_bound_r3(&metrics) <= rat(oracle));
        prop_assert!(bookkeeping_holds(&sk, &metrics));
        if metrics.genus == 0 {
            prop_assert_eq!(metrics.closed_volumes, 0);
        }
    }

    #[test]
    fn gluing_a_tetrahedron_does_not_lower_the_upper_bound(x in 0i64..4, y in 0i64..4, z in 0i64..4, seed in any::<u64>()) {
        prop_assume!(x + y + z >= 2);
        let pts = [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1], [x, y, z]];
        let glued = Subdivision::new(
            3,
            pts.iter().map(|p| LatticePoint::new(p.to_vec())).collect(),
            vec![vec![0, 1, 2, 3], vec![1, 2, 3, 4]],
        )
        .unwrap();
        prop_assume!(common::is_valid(&glued));
        let single = simplex(3);
        let u = best_algo_bounds(&moved(&single, seed)).unwrap().upper;
        prop_assert_eq!(u, 3);
        prop_assert!(best_algo_bounds(&moved(&glued, seed)).unwrap().upper >= u);
    }

    #[test]
    fn higher_dimensional_ordered_bounds(seed in any::<u64>()) {
        let n = 3 + (seed % 2) as usize;
        let (s, f) = space_instances(seed, n, 1).remove(0);
        let oracle = oracle_rank_with(&s, &f).unwrap();
        let cells = s.non_simplex_cells().unwrap();
        let mut rng = common::rng(seed);
        for _ in 0..20 {
            let mut o = cells.clone();
            for i in (1..o.len()).rev() {
                o.swap(i, rng.gen_range(0..=i));
            }
            prop_assert!(oracle <= upper_bound_nd(&s, &o).unwrap());
        }
        if cells.len() <= 3 {
            prop_assert_eq!(exact_rank_nd(&s).unwrap().value(), oracle);
        }
    }
}
