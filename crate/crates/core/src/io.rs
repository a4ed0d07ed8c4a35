//! JSON file formats for subdivisions, parameterized curves and skeleton
//! curves. Rationals are written as `"p"` or `"p/q"` strings; integers are
//! also accepted on input. The kind of a document is told apart by its keys:
//! `cells` for subdivisions, `ends` for curves, `rays` for skeletons.

use std::path::Path;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::geometry::LatticePoint;
use crate::param::{EndMarking, Identification, ParamCurve, ParamEdge, ParamEnd};
use crate::skeleton::{Cycle, Plane, SkeletonCurve};
use crate::subdivision::{Subdivision, TropicalPolynomial};
use crate::{Error, Rational, Result};

/// Exact rational on the wire.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exact(pub Rational);

impl Serialize for Exact {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(i) => Ok(Exact(Rational::from_integer(i.into()))),
            Raw::Str(s) => parse_rational(&s).map(Exact).map_err(serde::de::Error::custom),
        }
    }
}

/// `"p"` or `"p/q"` with `q > 0`.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let t = s.trim();
    let bad = || format!("invalid rational {s:?}");
    let (p, q) = match t.split_once('/') {
        Some((p, q)) => (p, q),
        None => (t, "1"),
    };
    let p = num_bigint::BigInt::from_str(p).map_err(|_| bad())?;
    let q = num_bigint::BigInt::from_str(q).map_err(|_| bad())?;
    if q.is_zero() || q.sign() == num_bigint::Sign::Minus {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn exacts(v: &[Rational]) -> Vec<Exact> {
    v.iter().cloned().map(Exact).collect()
}

fn rationals(v: Vec<Exact>) -> Vec<Rational> {
    v.into_iter().map(|e| e.0).collect()
}

/// Values a file asserts about itself; `compare` flags disagreements.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Claims {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub defect_bound: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper_bound: Option<i64>,
}

impl Claims {
    pub fn is_empty(&self) -> bool {
        *self == Claims::default()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SubdivisionDoc {
    dimension: usize,
    vertices: Vec<Vec<i64>>,
    cells: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coefficients: Option<Vec<Exact>>,
    #[serde(default, skip_serializing_if = "Claims::is_empty")]
    claims: Claims,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    nodes: (usize, usize),
    direction: Vec<i64>,
    weight: i64,
    length: Exact,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EndDoc {
    node: usize,
    direction: Vec<i64>,
    weight: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum IdentDoc {
    VertexVertex(usize, usize),
    VertexEdge(usize, usize),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MarkerDoc {
    end: usize,
    point: Vec<Exact>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveDoc {
    dimension: usize,
    nodes: Vec<Vec<Exact>>,
    #[serde(default)]
    edges: Vec<EdgeDoc>,
    ends: Vec<EndDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    identifications: Vec<IdentDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    markers: Option<Vec<MarkerDoc>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RayDoc {
    node: usize,
    direction: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlaneDoc {
    normal: Vec<Exact>,
    offset: Exact,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CycleDoc {
    nodes: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    plane: Option<PlaneDoc>,
}

fn three() -> usize {
    3
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SkeletonDoc {
    #[serde(default = "three")]
    dimension: usize,
    nodes: Vec<Vec<Exact>>,
    #[serde(default)]
    edges: Vec<(usize, usize)>,
    rays: Vec<RayDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cycles: Option<Vec<CycleDoc>>,
}

/// A subdivision file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionFile {
    pub subdivision: Subdivision,
    pub coefficients: Option<TropicalPolynomial>,
    pub claims: Claims,
}

/// A parameterized curve file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveFile {
    pub curve: ParamCurve,
    pub identifications: Vec<Identification>,
    pub marking: Option<EndMarking>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Subdivision(SubdivisionFile),
    Curve(CurveFile),
    Skeleton(SkeletonCurve),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Subdivision(_) => "subdivision",
            Document::Curve(_) => "curve",
            Document::Skeleton(_) => "skeleton",
        }
    }
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse { line: e.line(), column: e.column(), message: e.to_string() }
}

/// Parses any of the three formats.
pub fn parse_document(text: &str) -> Result<Document> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(parse_error)?;
    let Some(obj) = value.as_object() else {
        return Err(Error::Parse { line: 1, column: 1, message: "expected a JSON object".into() });
    };
    if obj.contains_key("cells") {
        parse_subdivision(text).map(Document::Subdivision)
    } else if obj.contains_key("ends") {
        parse_curve(text).map(Document::Curve)
    } else if obj.contains_key("rays") {
        parse_skeleton(text).map(Document::Skeleton)
    } else {
        Err(Error::Parse { line: 1, column: 1, message: "unknown document: expected `cells`, `ends` or `rays`".into() })
    }
}

pub fn read_document(path: &Path) -> Result<Document> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_document(&text)
}

pub fn parse_subdivision(text: &str) -> Result<SubdivisionFile> {
    let doc: SubdivisionDoc = serde_json::from_str(text).map_err(parse_error)?;
    let vertices = doc.vertices.into_iter().map(LatticePoint::new).collect();
    let subdivision = Subdivision::new(doc.dimension, vertices, doc.cells)?;
    let coefficients = match doc.coefficients {
        Some(c) if c.len() != subdivision.vertices().len() => {
            return Err(Error::DimensionMismatch { expected: subdivision.vertices().len(), found: c.len() })
        }
        Some(c) => Some(TropicalPolynomial::new(rationals(c))),
        None => None,
    };
    Ok(SubdivisionFile { subdivision, coefficients, claims: doc.claims })
}

pub fn parse_curve(text: &str) -> Result<CurveFile> {
    let doc: CurveDoc = serde_json::from_str(text).map_err(parse_error)?;
    let positions = doc.nodes.into_iter().map(rationals).collect();
    let edges = doc
        .edges
        .into_iter()
        .map(|e| ParamEdge { nodes: e.nodes, direction: e.direction, weight: e.weight, length: e.length.0 })
        .collect();
    let ends =
        doc.ends.into_iter().map(|e| ParamEnd { node: e.node, direction: e.direction, weight: e.weight }).collect();
    let curve = ParamCurve::new(doc.dimension, positions, edges, ends)?;
    let identifications = doc
        .identifications
        .into_iter()
        .map(|i| match i {
            IdentDoc::VertexVertex(a, b) => Identification::VertexVertex(a, b),
            IdentDoc::VertexEdge(a, e) => Identification::VertexEdge(a, e),
        })
        .collect();
    let marking =
        doc.markers.map(|m| EndMarking { markers: m.into_iter().map(|m| (m.end, rationals(m.point))).collect() });
    Ok(CurveFile { curve, identifications, marking })
}

pub fn parse_skeleton(text: &str) -> Result<SkeletonCurve> {
    let doc: SkeletonDoc = serde_json::from_str(text).map_err(parse_error)?;
    let cycles = doc.cycles.map(|cs| {
        cs.into_iter()
            .map(|c| Cycle {
                nodes: c.nodes,
                plane: c.plane.map(|p| Plane { normal: rationals(p.normal), offset: p.offset.0 }),
            })
            .collect()
    });
    let curve = SkeletonCurve {
        dim: doc.dimension,
        nodes: doc.nodes.into_iter().map(rationals).collect(),
        edges: doc.edges,
        rays: doc.rays.into_iter().map(|r| (r.node, r.direction)).collect(),
        cycles,
    };
    curve.validate()?;
    Ok(curve)
}

/// Pretty JSON that keeps arrays of scalars on one line.
fn to_json<T: Serialize>(doc: &T) -> String {
    let value = serde_json::to_value(doc).expect("serializable");
    let mut out = String::new();
    write_value(&value, 0, &mut out);
    out.push('\n');
    out
}

fn write_value(v: &serde_json::Value, indent: usize, out: &mut String) {
    use serde_json::Value;
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            let parts: Vec<String> = items.iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("[{}]", parts.join(", ")));
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&format!("{}{}: ", pad(indent + 1), Value::String(k.clone())));
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

pub fn write_subdivision(file: &SubdivisionFile) -> String {
    let s = &file.subdivision;
    to_json(&SubdivisionDoc {
        dimension: s.dim(),
        vertices: s.vertices().iter().map(|p| p.coords().to_vec()).collect(),
        cells: s.cells().iter().map(|c| c.vertices().to_vec()).collect(),
        coefficients: file.coefficients.as_ref().map(|f| exacts(f.coefficients())),
        claims: file.claims.clone(),
    })
}

pub fn write_curve(file: &CurveFile) -> String {
    let c = &file.curve;
    to_json(&CurveDoc {
        dimension: c.dim(),
        nodes: c.positions().iter().map(|p| exacts(p)).collect(),
        edges: c
            .edges()
            .iter()
            .map(|e| EdgeDoc {
                nodes: e.nodes,
                direction: e.direction.clone(),
                weight: e.weight,
                length: Exact(e.length.clone()),
            })
            .collect(),
        ends: c
            .ends()
            .iter()
            .map(|e| EndDoc { node: e.node, direction: e.direction.clone(), weight: e.weight })
            .collect(),
        identifications: file
            .identifications
            .iter()
            .map(|i| match *i {
                Identification::VertexVertex(a, b) => IdentDoc::VertexVertex(a, b),
                Identification::VertexEdge(a, e) => IdentDoc::VertexEdge(a, e),
            })
            .collect(),
        markers: file.marking.as_ref().map(|m| {
            m.markers.iter().map(|(end, p)| MarkerDoc { end: *end, point: exacts(p) }).collect()
        }),
    })
}

pub fn write_skeleton(c: &SkeletonCurve) -> String {
    to_json(&SkeletonDoc {
        dimension: c.dim,
        nodes: c.nodes.iter().map(|p| exacts(p)).collect(),
        edges: c.edges.clone(),
        rays: c.rays.iter().map(|(node, d)| RayDoc { node: *node, direction: d.clone() }).collect(),
        cycles: c.cycles.as_ref().map(|cs| {
            cs.iter()
                .map(|cy| CycleDoc {
                    nodes: cy.nodes.clone(),
                    plane: cy.plane.as_ref().map(|p| PlaneDoc { normal: exacts(&p.normal), offset: Exact(p.offset.clone()) }),
                })
                .collect()
        }),
    })
}

pub fn write_document(doc: &Document) -> String {
    match doc {
        Document::Subdivision(f) => write_subdivision(f),
        Document::Curve(f) => write_curve(f),
        Document::Skeleton(c) => write_skeleton(c),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio};
    use proptest::prelude::*;

    #[test]
    fn rational_strings() {
        assert_eq!(parse_rational("3").unwrap(), rat(3));
        assert_eq!(parse_rational("-6/4").unwrap(), ratio(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("0.5").is_err());
        assert_eq!(format_rational(&ratio(-3, 2)), "-3/2");
        assert_eq!(format_rational(&rat(7)), "7");
    }

    #[test]
    fn subdivision_round_trip() {
        let text = r#"{"dimension": 2, "vertices": [[0,0],[1,0],[0,1]], "cells": [[0,1,2]],
                       "coefficients": ["0", 1, "-1/3"], "claims": {"oracle": 2}}"#;
        let f = parse_subdivision(text).unwrap();
        assert_eq!(f.coefficients.as_ref().unwrap().coefficients()[2], ratio(-1, 3));
        assert_eq!(f.claims.oracle, Some(2));
        let out = write_subdivision(&f);
        assert_eq!(parse_subdivision(&out).unwrap(), f);
        assert_eq!(write_subdivision(&parse_subdivision(&out).unwrap()), out);
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_document("{\n  \"dimension\": 2,\n  \"cells\": [[0, 1,]]\n}").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        let err = parse_document(r#"{"dimension": 2, "vertices": [[0,0]], "cells": [[0]], "coefficients": ["x"]}"#);
        assert!(matches!(err, Err(Error::Parse { .. })));
        assert!(matches!(parse_document("[1]"), Err(Error::Parse { .. })));
        assert!(matches!(parse_document(r#"{"nodes": []}"#), Err(Error::Parse { .. })));
    }

    #[test]
    fn curve_and_skeleton_round_trip() {
        let text = r#"{"dimension": 2, "nodes": [["0","0"],["2","0"]],
            "edges": [{"nodes": [0,1], "direction": [1,0], "weight": 1, "length": "2"}],
            "ends": [{"node": 0, "direction": [-1,1], "weight": 1}, {"node": 0, "direction": [0,-1], "weight": 1},
                     {"node": 1, "direction": [1,1], "weight": 1}, {"node": 1, "direction": [0,-1], "weight": 1}],
            "identifications": [{"vertex_vertex": [0, 1]}, {"vertex_edge": [1, 0]}],
            "markers": [{"end": 0, "point": ["-1/2", "1/2"]}]}"#;
        let doc = parse_document(text).unwrap();
        assert_eq!(doc.kind(), "curve");
        assert_eq!(parse_document(&write_document(&doc)).unwrap(), doc);
        let text = r#"{"nodes": [["0","0","0"]], "rays": [{"node":0,"direction":[-1,0,0]},
            {"node":0,"direction":[0,-1,0]},{"node":0,"direction":[0,0,-1]},{"node":0,"direction":[1,1,1]}]}"#;
        let doc = parse_document(text).unwrap();
        assert_eq!(doc.kind(), "skeleton");
        assert_eq!(parse_document(&write_document(&doc)).unwrap(), doc);
    }

    proptest! {
        #[test]
        fn rationals_round_trip(p in -10_000i64..10_000, q in 1i64..1000) {
            let r = ratio(p, q);
            prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
    }
}
