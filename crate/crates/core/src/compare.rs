//! Evaluates every applicable bound and formula on a directory of instance
//! files, next to the oracle, and flags any row where a stated inequality or
//! equality fails or a claimed value disagrees with the computed one.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::curves::{best_upper_bound, defect_bound, exact_rank_three_nontrivial, rank_with_options, Strategy, EXHAUSTIVE_LIMIT};
use crate::hypersurface::{exact_rank_nd, rank_with_options_nd};
use crate::io::{format_rational, read_document, CurveFile, Document, SubdivisionFile};
use crate::param::{
    balancing_sum, bounded_components_rank, end_marked_def_dim, p_vertices_bound, param_oracle_rank, resolve_nodes,
};
use crate::rank::{expected_rank_embedded, expected_rank_param, oracle_rank_with, Certificate, RankKind};
use crate::skeleton::{
    bookkeeping_holds, lower_bound_r3, lower_bound_r4, skeleton_metrics, skeleton_of_hypersurface, SkeletonCurve,
};
use crate::subdivision::{check_interior, pick_interior_coefficients, validate};
use crate::{Error, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompareOptions {
    pub seed: u64,
    /// Orderings tried when exhaustive search is too large.
    pub budget: usize,
    /// Worker threads; 0 uses the global pool.
    pub threads: usize,
}

impl Default for CompareOptions {
    fn default() -> Self {
        CompareOptions { seed: 0, budget: 64, threads: 0 }
    }
}

/// One evaluated file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Row {
    pub name: String,
    pub kind: String,
    pub values: BTreeMap<String, String>,
    pub flags: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Row {
    fn new(name: &str, kind: &str) -> Row {
        Row { name: name.into(), kind: kind.into(), values: BTreeMap::new(), flags: Vec::new(), error: None }
    }

    fn set(&mut self, key: &str, value: impl ToString) {
        self.values.insert(key.into(), value.to_string());
    }

    fn flag(&mut self, cond: bool, msg: impl FnOnce() -> String) {
        if cond {
            self.flags.push(msg());
        }
    }
}

fn rational(r: &Rational) -> String {
    format_rational(r)
}

fn claim(row: &mut Row, key: &str, claimed: Option<i64>, computed: i64) {
    if let Some(c) = claimed {
        row.flag(c != computed, || format!("claimed {key} {c} but computed {computed}"));
    }
}

fn evaluate_subdivision(row: &mut Row, file: &SubdivisionFile, opts: &CompareOptions) -> Result<(), Error> {
    let s = &file.subdivision;
    let report = validate(s);
    if !report.is_ok() {
        let msgs: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
        return Err(Error::Precondition(format!("invalid subdivision: {}", msgs.join("; "))));
    }
    row.set("dimension", s.dim());
    row.set("cells", s.cells().len());
    let expected = expected_rank_embedded(s);
    row.set("expected", expected);
    claim(row, "expected", file.claims.expected, expected);
    let f = match &file.coefficients {
        Some(f) => {
            check_interior(s, f)?;
            f.clone()
        }
        None => pick_interior_coefficients(s)?,
    };
    let oracle = oracle_rank_with(s, &f)?;
    row.set("oracle", oracle);
    row.set("defect", oracle - expected);
    claim(row, "oracle", file.claims.oracle, oracle);
    if s.dim() == 2 {
        let nt = s.nontrivial_cells()?;
        row.set("nontrivial", nt.len());
        let bound = defect_bound(s)?;
        row.set("defect_bound", bound);
        claim(row, "defect_bound", file.claims.defect_bound, bound);
        row.flag(oracle < expected, || format!("oracle {oracle} below expected {expected}"));
        row.flag(2 * (oracle - expected) > bound, || format!("twice the defect exceeds the defect bound {bound}"));
        let strategy = if nt.len() <= EXHAUSTIVE_LIMIT {
            Strategy::Exhaustive
        } else {
            Strategy::Sampled { seed: opts.seed, count: opts.budget }
        };
        let upper = best_upper_bound(s, strategy)?;
        row.set("ordered_upper", upper);
        claim(row, "upper_bound", file.claims.upper_bound, upper);
        row.flag(upper < oracle, || format!("ordered upper bound {upper} below oracle {oracle}"));
        if nt.len() == 3 {
            let t = exact_rank_three_nontrivial(s)?;
            row.set("three_cell_formula", t.value());
            row.set("labeling_independent", t.labeling_independent());
            row.flag(t.value() != oracle, || format!("three-cell formula {} differs from oracle {oracle}", t.value()));
        }
        let res = resolve_nodes(s, &f)?;
        let bc = bounded_components_rank(s, &f, &res)?;
        row.set("bounded_components", bc.components);
        row.set("bounded_components_rank", &bc.report.kind);
        row.flag(!bc.report.kind.contains(oracle), || format!("bounded-components rank {} differs from oracle", bc.report.kind));
        row.flag(bc.coarse_upper < oracle, || format!("coarse bounded-components bound {} below oracle", bc.coarse_upper));
        let r = rank_with_options(s, opts.seed, opts.budget)?;
        row.set("rank", r.kind.clone());
        row.set("certificate", r.certificate.name());
        row.flag(!r.kind.contains(oracle), || format!("certified {} excludes oracle {oracle}", r.kind));
    } else {
        let ns = s.non_simplex_cells()?;
        row.set("non_simplex", ns.len());
        row.flag(oracle < expected, || format!("oracle {oracle} below expected {expected}"));
        if ns.len() <= 3 {
            let v = exact_rank_nd(s)?;
            row.set("ordering_independent", v.ordering_independent());
        }
        let r = rank_with_options_nd(s, opts.seed, opts.budget)?;
        row.set("rank", r.kind.clone());
        row.set("certificate", r.certificate.name());
        row.flag(!r.kind.contains(oracle), || format!("certified {} excludes oracle {oracle}", r.kind));
        if let RankKind::Bounds { upper, .. } = &r.kind {
            claim(row, "upper_bound", file.claims.upper_bound, upper.to_integer().try_into().unwrap_or(i64::MAX));
        }
        for (cert, kind) in &r.also {
            if *cert == Certificate::BlocGrowth {
                row.set("bloc_growth", kind);
                row.flag(!kind.contains(oracle), || format!("bloc-growth bounds {kind} exclude oracle {oracle}"));
            }
        }
        if s.dim() <= 4 {
            let sk = skeleton_of_hypersurface(s, &f)?;
            match skeleton_metrics(&sk) {
                Ok(m) => {
                    let lb = if s.dim() == 3 { lower_bound_r3(&m) } else { lower_bound_r4(&m) };
                    row.set("skeleton_lower", rational(&lb));
                    row.set("closed_volumes", m.closed_volumes);
                    row.flag(lb > Rational::from_integer(oracle.into()), || {
                        format!("skeleton lower bound {} above oracle {oracle}", rational(&lb))
                    });
                }
                Err(e) => row.set("skeleton_lower", format!("n/a ({e})")),
            }
        }
    }
    Ok(())
}

fn evaluate_curve(row: &mut Row, file: &CurveFile) -> Result<(), Error> {
    let c = &file.curve;
    row.set("dimension", c.dim());
    row.set("genus", c.genus());
    row.set("ends", c.ends().len());
    let expected = expected_rank_param(c);
    row.set("expected", expected);
    let oracle = param_oracle_rank(c, &file.identifications)?;
    row.set("oracle", oracle);
    if let Ok(b) = p_vertices_bound(c, &file.identifications) {
        row.set("overvalent_points", b.p);
        row.set("overvalent_bound", b.bound);
        row.flag(oracle > b.bound, || format!("oracle {oracle} above the overvalent-vertex bound {}", b.bound));
    }
    if let Some(m) = &file.marking {
        if c.dim() == 2 && m.markers.len() == c.ends().len() {
            let sum = balancing_sum(c, m)?;
            row.set("balancing_sum", rational(&sum));
            row.flag(sum != Rational::from_integer(0.into()), || "balancing pairing is not zero".into());
        }
        row.set("end_marked_dimension", end_marked_def_dim(c, oracle, m.markers.len())?);
    }
    Ok(())
}

fn evaluate_skeleton(row: &mut Row, c: &SkeletonCurve) -> Result<(), Error> {
    let m = skeleton_metrics(c)?;
    row.set("dimension", c.dim);
    row.set("ends", m.ends);
    row.set("overvalence", m.overvalence);
    row.set("genus", m.genus);
    if c.dim == 3 {
        row.set("closed_volumes", m.closed_volumes);
        row.set("hypothesis_heuristic", m.hypothesis_heuristic);
        row.set("skeleton_lower", rational(&lower_bound_r3(&m)));
        row.flag(!bookkeeping_holds(c, &m), || "node and edge counts violate the bookkeeping identities".into());
    } else if c.dim == 4 {
        row.set("skeleton_lower", rational(&lower_bound_r4(&m)));
    }
    Ok(())
}

/// Evaluates one parsed document.
pub fn evaluate(name: &str, doc: &Document, opts: &CompareOptions) -> Row {
    let mut row = Row::new(name, doc.kind());
    let outcome = match doc {
        Document::Subdivision(f) => evaluate_subdivision(&mut row, f, opts),
        Document::Curve(f) => evaluate_curve(&mut row, f),
        Document::Skeleton(c) => evaluate_skeleton(&mut row, c),
    };
    if let Err(e) = outcome {
        row.error = Some(e.to_string());
    }
    row
}

fn evaluate_path(name: &str, path: &Path, opts: &CompareOptions) -> Row {
    match read_document(path) {
        Ok(doc) => evaluate(name, &doc, opts),
        Err(e) => {
            let mut row = Row::new(name, "unreadable");
            row.error = Some(e.to_string());
            row
        }
    }
}

/// Evaluates every `*.json` file under `dir`, sorted by relative path.
pub fn compare_dir(dir: &Path, opts: &CompareOptions) -> Result<Vec<Row>, Error> {
    let mut files: Vec<(String, PathBuf)> = Vec::new();
    collect(dir, dir, &mut files)?;
    files.sort();
    let run = || files.par_iter().map(|(name, path)| evaluate_path(name, path, opts)).collect::<Vec<Row>>();
    let rows = if opts.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| Error::Io(e.to_string()))?
            .install(run)
    } else {
        run()
    };
    Ok(rows)
}

fn collect(root: &Path, dir: &Path, out: &mut Vec<(String, PathBuf)>) -> Result<(), Error> {
    let entries = std::fs::read_dir(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    for entry in entries {
        let path = entry.map_err(|e| Error::Io(e.to_string()))?.path();
        if path.is_dir() {
            collect(root, &path, out)?;
        } else if path.extension().is_some_and(|x| x == "json") {
            let name = path.strip_prefix(root).unwrap_or(&path).to_string_lossy().replace('\\', "/");
            out.push((name, path));
        }
    }
    Ok(())
}

/// One line per row: name, kind, `key=value` pairs, then flags or error.
pub fn render_text(rows: &[Row]) -> String {
    let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for r in rows {
        let values: Vec<String> = r.values.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.push_str(&format!("{:width$}  {:11}  {}", r.name, r.kind, values.join(" ")));
        if let Some(e) = &r.error {
            out.push_str(&format!("  error: {e}"));
        }
        if !r.flags.is_empty() {
            out.push_str(&format!("  FLAGS: {}", r.flags.join("; ")));
        }
        out.push('\n');
    }
    let flagged = rows.iter().filter(|r| !r.flags.is_empty()).count();
    let errors = rows.iter().filter(|r| r.error.is_some()).count();
    out.push_str(&format!("{} rows, {flagged} flagged, {errors} errors\n", rows.len()));
    out
}

/// One JSON object per line.
pub fn render_machine(rows: &[Row]) -> String {
    rows.iter().map(|r| serde_json::to_string(r).expect("serializable") + "\n").collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::{write_subdivision, Claims};

    fn witness_file(claims: Claims) -> Document {
        Document::Subdivision(SubdivisionFile {
            subdivision: crate::gen::witness(),
            coefficients: Some(crate::gen::witness_coefficients()),
            claims,
        })
    }

    #[test]
    fn witness_row() {
        let row = evaluate("w", &witness_file(Claims::default()), &CompareOptions::default());
        assert_eq!(row.error, None);
        assert!(row.flags.is_empty(), "{:?}", row.flags);
        assert_eq!(row.values["defect"], "1");
        assert_eq!(row.values["three_cell_formula"], "3");
    }

    #[test]
    fn corrupted_claim_is_flagged() {
        let claims = Claims { upper_bound: Some(2), ..Claims::default() };
        let row = evaluate("w", &witness_file(claims), &CompareOptions::default());
        assert_eq!(row.flags.len(), 1);
    }

    #[test]
    fn directory_is_sorted_and_thread_independent() {
        let dir = tempfile::tempdir().unwrap();
        let f = SubdivisionFile { subdivision: crate::gen::witness(), coefficients: None, claims: Claims::default() };
        std::fs::write(dir.path().join("b.json"), write_subdivision(&f)).unwrap();
        std::fs::write(dir.path().join("a.json"), "{ not json").unwrap();
        let one = compare_dir(dir.path(), &CompareOptions { threads: 1, ..Default::default() }).unwrap();
        let four = compare_dir(dir.path(), &CompareOptions { threads: 4, ..Default::default() }).unwrap();
        assert_eq!(render_machine(&one), render_machine(&four));
        assert_eq!(one[0].name, "a.json");
        assert!(one[0].error.is_some());
        assert!(one[1].error.is_none());
    }
}
