//! Writes a deterministic corpus of instances: nodal and singular plane
//! curves, the worked example, surfaces, hypersurfaces in four-space,
//! parameterized curves and skeletons.
//!
//! `cargo run --release --example make_corpus -- corpus`

use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tropical_rank::gen::{
    glued_tetrahedra, random_coarse, random_nodal, random_param_curve, simplex, stellar_tetrahedron, witness,
    witness_coefficients,
};
use tropical_rank::io::{write_curve, write_skeleton, write_subdivision, Claims, CurveFile, SubdivisionFile};
use tropical_rank::param::{EndMarking, ParamCurve, ParamEnd};
use tropical_rank::rank::{expected_rank_embedded, oracle_rank_with};
use tropical_rank::rat;
use tropical_rank::skeleton::SkeletonCurve;
use tropical_rank::subdivision::pick_interior_coefficients;
use tropical_rank::{Subdivision, TropicalPolynomial};

fn put(dir: &Path, name: &str, text: String) {
    std::fs::create_dir_all(dir).expect("create directory");
    std::fs::write(dir.join(name), text).expect("write file");
}

fn subdivision(dir: &Path, name: &str, s: Subdivision, f: TropicalPolynomial) {
    let claims = Claims {
        expected: Some(expected_rank_embedded(&s)),
        oracle: Some(oracle_rank_with(&s, &f).expect("regular")),
        ..Claims::default()
    };
    put(dir, name, write_subdivision(&SubdivisionFile { subdivision: s, coefficients: Some(f), claims }));
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

fn main() {
    let root = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("corpus"));
    let mut rng = ChaCha8Rng::seed_from_u64(2024);

    let plane = root.join("plane");
    subdivision(&plane, "witness.json", witness(), witness_coefficients());
    let tri = simplex(2);
    let f = pick_interior_coefficients(&tri).expect("regular");
    subdivision(&plane, "triangle.json", tri, f);
    for k in 0..6 {
        let (s, f) = random_nodal(&mut rng, 3, 4);
        subdivision(&plane, &format!("nodal-{k:02}.json"), s, f);
    }
    let mut k = 0;
    while k < 8 {
        let Some((s, f)) = random_coarse(&mut rng, 2, 4, 4, true) else { continue };
        if s.nontrivial_cells().expect("valid").len() >= 2 {
            subdivision(&plane, &format!("singular-{k:02}.json"), s, f);
            k += 1;
        }
    }

    let space = root.join("space");
    for (name, s) in [("tetrahedron", simplex(3)), ("glued", glued_tetrahedra()), ("stellar", stellar_tetrahedron())] {
        let f = pick_interior_coefficients(&s).expect("regular");
        subdivision(&space, &format!("{name}.json"), s, f);
    }
    let mut k = 0;
    while k < 5 {
        if let Some((s, f)) = random_coarse(&mut rng, 3, 2, 3, true) {
            subdivision(&space, &format!("surface-{k:02}.json"), s, f);
            k += 1;
        }
    }

    let four = root.join("four");
    let s = simplex(4);
    let f = pick_interior_coefficients(&s).expect("regular");
    subdivision(&four, "simplex.json", s, f);
    let mut k = 0;
    while k < 3 {
        let Some((s, f)) = random_coarse(&mut rng, 4, 1, 3, false) else { continue };
        if s.cells().len() > 1 {
            subdivision(&four, &format!("hypersurface-{k:02}.json"), s, f);
            k += 1;
        }
    }

    let curves = root.join("curves");
    let end = |d: [i64; 2]| ParamEnd { node: 0, direction: d.to_vec(), weight: 1 };
    let line = ParamCurve::new(2, vec![vec![rat(0), rat(0)]], vec![], vec![end([-1, 0]), end([0, -1]), end([1, 1])])
        .expect("balanced");
    put(&curves, "line.json", write_curve(&CurveFile { curve: line, identifications: vec![], marking: None }));
    for k in 0..3 {
        let (curve, marking) = random_param_curve(&mut rng, 2 + k);
        let marking: Option<EndMarking> = Some(marking);
        put(&curves, &format!("trivalent-{k:02}.json"), write_curve(&CurveFile { curve, identifications: vec![], marking }));
    }

    let skeletons = root.join("skeletons");
    put(&skeletons, "node-3.json", write_skeleton(&single_node(3)));
    put(&skeletons, "node-4.json", write_skeleton(&single_node(4)));
    println!("wrote corpus to {}", root.display());
}
