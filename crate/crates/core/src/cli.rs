//! The `troprank` command line. Exit codes: 0 success, 1 unreadable or
//! unparsable input, 2 invalid input, 3 subdivision not regular.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::compare::{compare_dir, render_machine, render_text, CompareOptions};
use crate::curves::{best_upper_bound, defect_bound, rank_with_options, Strategy};
use crate::hypersurface::{rank_with_options_nd, upper_bound_nd};
use crate::io::{format_rational, read_document, write_subdivision, Claims, CurveFile, Document, SubdivisionFile};
use crate::param::{bounded_components_rank, p_vertices_bound, param_oracle_rank, resolve_nodes};
use crate::rank::{expected_rank_embedded, expected_rank_param, oracle_rank_with, RankReport};
use crate::search::{search_defect, SearchParams};
use crate::skeleton::{lower_bound_r3, lower_bound_r4, skeleton_metrics, skeleton_of_hypersurface, SkeletonCurve};
use crate::subdivision::{check_interior, pick_interior_coefficients, validate, Subdivision, TropicalPolynomial};
use crate::surface::{best_algo_bounds, Start};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Exhaustive,
    Cooriented,
    Sampled,
}

#[derive(Debug, Parser)]
#[command(name = "troprank", version, about = "Exact ranks of tropical curves and hypersurfaces")]
pub struct Cli {
    /// Seed for sampled orderings and searches.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of orderings sampled when exhaustive search is too large.
    #[arg(long, global = true, default_value_t = 64)]
    pub budget: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads for `compare` and `search-defect` (0: all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a file for structural and geometric consistency.
    Validate { file: PathBuf },
    /// Expected rank, oracle rank and the strongest certified statement.
    Rank { file: PathBuf },
    /// Every bound that applies to the input.
    Bounds {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = StrategyArg::Exhaustive)]
        strategy: StrategyArg,
    },
    /// The rank computed from its definition.
    Oracle { file: PathBuf },
    /// Bloc-growth bounds for a surface in three-space, with every run.
    Surface3 { file: PathBuf },
    /// Skeleton metrics and lower bounds, from a skeleton file or from a
    /// subdivision in dimension three or four.
    Skeleton { file: PathBuf },
    /// Search for plane subdivisions with positive defect.
    SearchDefect {
        #[arg(long, default_value_t = 6)]
        max_coord: i64,
        /// Largest number of non-trivial cells allowed.
        #[arg(long, default_value_t = 3)]
        cells: usize,
        #[arg(long, default_value_t = 20_000)]
        samples: usize,
        /// Directory receiving one file per witness.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a plane subdivision and its dual curve.
    Svg {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Evaluate every file of a directory against the oracle.
    Compare { dir: PathBuf },
}

/// What a run printed and how it ended.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Io(_) => 1,
        Error::NonRegular => 3,
        _ => 2,
    }
}

fn fail(e: Error) -> Outcome {
    let msg = match &e {
        Error::Parse { line, column, message } => format!("parse error at line {line}, column {column}: {message}\n"),
        other => format!("{other}\n"),
    };
    Outcome { code: exit_code(&e), stdout: String::new(), stderr: msg }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Validate { file } => read_document(file).and_then(|d| cmd_validate(cli, &d)),
        Command::Rank { file } => read_document(file).and_then(|d| cmd_rank(cli, &d)),
        Command::Bounds { file, strategy } => read_document(file).and_then(|d| cmd_bounds(cli, &d, *strategy)),
        Command::Oracle { file } => read_document(file).and_then(|d| cmd_oracle(cli, &d)),
        Command::Surface3 { file } => read_document(file).and_then(|d| cmd_surface3(cli, &d)),
        Command::Skeleton { file } => read_document(file).and_then(|d| cmd_skeleton(cli, &d)),
        Command::SearchDefect { max_coord, cells, samples, out } => {
            let params = SearchParams { max_coord: *max_coord, cell_budget: *cells, samples: *samples, seed: cli.seed };
            cmd_search(cli, &params, out.as_ref())
        }
        Command::Svg { file, output } => read_document(file).and_then(|d| cmd_svg(&d, output)),
        Command::Compare { dir } => {
            let opts = CompareOptions { seed: cli.seed, budget: cli.budget, threads: cli.threads };
            compare_dir(dir, &opts).map(|rows| match cli.format {
                Format::Text => render_text(&rows),
                Format::Machine => render_machine(&rows),
            })
        }
    };
    match result {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(e) => fail(e),
    }
}

fn subdivision_of(doc: &Document) -> Result<&SubdivisionFile, Error> {
    match doc {
        Document::Subdivision(f) => Ok(f),
        other => Err(Error::Precondition(format!("expected a subdivision, found a {}", other.kind()))),
    }
}

fn require_valid(s: &Subdivision) -> Result<(), Error> {
    let report = validate(s);
    if report.is_ok() {
        return Ok(());
    }
    let msgs: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
    Err(Error::Precondition(format!("invalid subdivision: {}", msgs.join("; "))))
}

/// The file's coefficients after checking them, or certified ones.
fn coefficients(file: &SubdivisionFile) -> Result<TropicalPolynomial, Error> {
    match &file.coefficients {
        Some(f) => check_interior(&file.subdivision, f).map(|_| f.clone()),
        None => pick_interior_coefficients(&file.subdivision),
    }
}

fn line(format: Format, text: String, machine: serde_json::Value) -> String {
    match format {
        Format::Text => text + "\n",
        Format::Machine => machine.to_string() + "\n",
    }
}

fn cmd_validate(cli: &Cli, doc: &Document) -> Result<String, Error> {
    if let Document::Subdivision(f) = doc {
        let report = validate(&f.subdivision);
        if !report.is_ok() {
            let msgs: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
            return Err(Error::Precondition(format!("invalid subdivision: {}", msgs.join("; "))));
        }
        if let Some(c) = &f.coefficients {
            check_interior(&f.subdivision, c)?;
        }
    }
    Ok(line(cli.format, format!("ok ({})", doc.kind()), json!({"ok": true, "kind": doc.kind()})))
}

fn report_json(r: &RankReport) -> serde_json::Value {
    json!({
        "expected": r.expected,
        "oracle": r.oracle,
        "defect": r.defect,
        "rank": r.kind.to_string(),
        "certificate": r.certificate.name(),
        "also": r.also.iter().map(|(c, k)| json!({"certificate": c.name(), "rank": k.to_string()})).collect::<Vec<_>>(),
    })
}

fn subdivision_report(cli: &Cli, f: &SubdivisionFile) -> Result<RankReport, Error> {
    require_valid(&f.subdivision)?;
    let coeffs = coefficients(f)?;
    let s = &f.subdivision;
    let mut r = if s.dim() == 2 {
        rank_with_options(s, cli.seed, cli.budget)?
    } else {
        rank_with_options_nd(s, cli.seed, cli.budget)?
    };
    // the oracle does not depend on which interior coefficients are used
    debug_assert_eq!(r.oracle, Some(oracle_rank_with(s, &coeffs)?));
    r.defect = r.oracle.map(|o| o - r.expected);
    Ok(r)
}

fn curve_summary(f: &CurveFile) -> Result<(i64, i64), Error> {
    Ok((expected_rank_param(&f.curve), param_oracle_rank(&f.curve, &f.identifications)?))
}

fn cmd_rank(cli: &Cli, doc: &Document) -> Result<String, Error> {
    match doc {
        Document::Subdivision(f) => {
            let r = subdivision_report(cli, f)?;
            let mut text = r.to_string();
            if let Some(d) = r.defect {
                write!(text, "\n  defect {d}").unwrap();
            }
            for (c, k) in &r.also {
                write!(text, "\n  also {k} [{c}]").unwrap();
            }
            Ok(line(cli.format, text, report_json(&r)))
        }
        Document::Curve(f) => {
            let (expected, oracle) = curve_summary(f)?;
            let mut text = format!("expected {expected}, oracle {oracle}, Exact({oracle}) [oracle]\n  defect {}", oracle - expected);
            let mut machine = json!({"expected": expected, "oracle": oracle, "rank": format!("Exact({oracle})"), "certificate": "oracle"});
            if let Ok(b) = p_vertices_bound(&f.curve, &f.identifications) {
                write!(text, "\n  also Bounds({}, {}) [overvalent vertices, p = {}]", b.expected, b.bound, b.p).unwrap();
                machine["overvalent_points"] = json!(b.p);
                machine["overvalent_bound"] = json!(b.bound);
            }
            Ok(line(cli.format, text, machine))
        }
        Document::Skeleton(_) => Err(Error::Precondition("rank needs a subdivision or a curve; use `skeleton`".into())),
    }
}

fn cmd_oracle(cli: &Cli, doc: &Document) -> Result<String, Error> {
    let value = match doc {
        Document::Subdivision(f) => {
            require_valid(&f.subdivision)?;
            oracle_rank_with(&f.subdivision, &coefficients(f)?)?
        }
        Document::Curve(f) => param_oracle_rank(&f.curve, &f.identifications)?,
        Document::Skeleton(_) => return Err(Error::Precondition("the oracle needs a subdivision or a curve".into())),
    };
    Ok(line(cli.format, value.to_string(), json!({"oracle": value})))
}

fn cmd_bounds(cli: &Cli, doc: &Document, strategy: StrategyArg) -> Result<String, Error> {
    let f = subdivision_of(doc)?;
    require_valid(&f.subdivision)?;
    let s = &f.subdivision;
    let coeffs = coefficients(f)?;
    let expected = expected_rank_embedded(s);
    let oracle = oracle_rank_with(s, &coeffs)?;
    let mut entries: Vec<(String, String)> = vec![("expected".into(), expected.to_string()), ("oracle".into(), oracle.to_string())];
    if s.dim() == 2 {
        let strategy = match strategy {
            StrategyArg::Exhaustive => Strategy::Exhaustive,
            StrategyArg::Cooriented => Strategy::Cooriented,
            StrategyArg::Sampled => Strategy::Sampled { seed: cli.seed, count: cli.budget },
        };
        entries.push(("defect bound".into(), defect_bound(s)?.to_string()));
        entries.push(("ordered upper bound".into(), best_upper_bound(s, strategy)?.to_string()));
        let res = resolve_nodes(s, &coeffs)?;
        let bc = bounded_components_rank(s, &coeffs, &res)?;
        entries.push(("bounded components".into(), bc.components.to_string()));
        entries.push(("bounded components rank".into(), bc.report.kind.to_string()));
        entries.push(("bounded components coarse upper".into(), bc.coarse_upper.to_string()));
    } else {
        let r = rank_with_options_nd(s, cli.seed, cli.budget)?;
        entries.push(("rank".into(), format!("{} [{}]", r.kind, r.certificate)));
        let cells = s.non_simplex_cells()?;
        if cells.len() <= crate::curves::EXHAUSTIVE_LIMIT.min(6) {
            let mut best = i64::MAX;
            for o in itertools::Itertools::permutations(cells.iter().copied(), cells.len()) {
                best = best.min(upper_bound_nd(s, &o)?);
            }
            entries.push(("ordered upper bound (n-dim)".into(), best.to_string()));
        }
        for (c, k) in &r.also {
            entries.push((c.name().into(), k.to_string()));
        }
    }
    let text = entries.iter().map(|(k, v)| format!("{k}: {v}")).collect::<Vec<_>>().join("\n");
    let machine = serde_json::Value::Object(entries.into_iter().map(|(k, v)| (k, serde_json::Value::String(v))).collect());
    Ok(line(cli.format, text, machine))
}

fn cmd_surface3(cli: &Cli, doc: &Document) -> Result<String, Error> {
    let f = subdivision_of(doc)?;
    require_valid(&f.subdivision)?;
    let b = best_algo_bounds(&f.subdivision)?;
    let mut text = format!("bloc growth: lower {}, upper {}", b.lower, b.upper);
    let mut runs = Vec::new();
    for r in &b.runs {
        let start = match r.start {
            Start::SingleCell => "single cell".to_string(),
            Start::Pair(a, c) => format!("cells {a},{c}"),
        };
        let steps: Vec<String> = r.steps.iter().map(|s| format!("{}(+{},-{})", s.cell, s.upper_gain, s.charged)).collect();
        write!(text, "\n  start {start}: lower {}, upper {}; steps {}", r.lower, r.upper, steps.join(" ")).unwrap();
        runs.push(json!({"start": start, "lower": r.lower, "upper": r.upper, "steps": steps}));
    }
    Ok(line(cli.format, text, json!({"lower": b.lower, "upper": b.upper, "runs": runs})))
}

fn skeleton_text(cli: &Cli, c: &SkeletonCurve) -> Result<String, Error> {
    let m = skeleton_metrics(c)?;
    let bound = match c.dim {
        3 => Some(lower_bound_r3(&m)),
        4 => Some(lower_bound_r4(&m)),
        _ => None,
    };
    let bound_s = bound.as_ref().map(format_rational).unwrap_or_else(|| "n/a".into());
    let text = format!(
        "ends {}, overvalence {}, genus {}, closed volumes {}, lower bound {} (hypothesis check: {})",
        m.ends,
        m.overvalence,
        m.genus,
        m.closed_volumes,
        bound_s,
        if m.hypothesis_heuristic { "passes, heuristic" } else { "fails, heuristic" }
    );
    Ok(line(
        cli.format,
        text,
        json!({"ends": m.ends, "overvalence": m.overvalence, "genus": m.genus, "closed_volumes": m.closed_volumes,
               "lower_bound": bound_s, "hypothesis_heuristic": m.hypothesis_heuristic}),
    ))
}

fn cmd_skeleton(cli: &Cli, doc: &Document) -> Result<String, Error> {
    match doc {
        Document::Skeleton(c) => skeleton_text(cli, c),
        Document::Subdivision(f) => {
            require_valid(&f.subdivision)?;
            let coeffs = coefficients(f)?;
            skeleton_text(cli, &skeleton_of_hypersurface(&f.subdivision, &coeffs)?)
        }
        Document::Curve(_) => Err(Error::Precondition("skeleton needs a skeleton file or a subdivision".into())),
    }
}

fn cmd_search(cli: &Cli, params: &SearchParams, out: Option<&PathBuf>) -> Result<String, Error> {
    let outcome = if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build()
            .map_err(|e| Error::Io(e.to_string()))?
            .install(|| search_defect(params))
    } else {
        search_defect(params)
    };
    let mut text = format!(
        "examined {} samples, {} candidates, {} witnesses",
        outcome.examined,
        outcome.candidates,
        outcome.witnesses.len()
    );
    let mut machine = Vec::new();
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    }
    for w in &outcome.witnesses {
        let verts: Vec<Vec<i64>> = w.subdivision.vertices().iter().map(|p| p.coords().to_vec()).collect();
        write!(text, "\n  sample {}: expected {}, oracle {}, vertices {:?}", w.sample, w.expected, w.oracle, verts).unwrap();
        machine.push(json!({"sample": w.sample, "expected": w.expected, "oracle": w.oracle, "vertices": verts}));
        if let Some(dir) = out {
            let file = SubdivisionFile {
                subdivision: w.subdivision.clone(),
                coefficients: Some(w.coefficients.clone()),
                claims: Claims { expected: Some(w.expected), oracle: Some(w.oracle), ..Claims::default() },
            };
            let path = dir.join(format!("witness-{:06}.json", w.sample));
            std::fs::write(&path, write_subdivision(&file)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        }
    }
    Ok(line(
        cli.format,
        text,
        json!({"examined": outcome.examined, "candidates": outcome.candidates, "witnesses": machine}),
    ))
}

fn cmd_svg(doc: &Document, output: &PathBuf) -> Result<String, Error> {
    let f = subdivision_of(doc)?;
    require_valid(&f.subdivision)?;
    let coeffs = match &f.coefficients {
        Some(c) => {
            check_interior(&f.subdivision, c)?;
            Some(c)
        }
        None => None,
    };
    let svg = crate::svg::render(&f.subdivision, coeffs)?;
    std::fs::write(output, svg).map_err(|e| Error::Io(format!("{}: {e}", output.display())))?;
    Ok(format!("wrote {}\n", output.display()))
}
