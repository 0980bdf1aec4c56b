//! Browser bindings for the tropirrat toolkit.
//!
//! Three interactive operations are exposed, all speaking the same JSON wire
//! formats as the command-line tool: building the lower-envelope subdivision
//! of a lifted polygon, slicing a polygon along a functional, and running
//! the obstruction certificate on the result. The heavy lifting happens in
//! exact rational arithmetic inside the core crate; this layer only
//! marshals JSON strings.

use std::collections::BTreeMap;

use serde::Serialize;
use wasm_bindgen::prelude::*;

use tropirrat::classify::{
    classify_face, width_upper, ClassifyOptions, KnownPolytopeDb, RationalReason,
    RationalityStatus,
};
use tropirrat::obstruction::{certify, Assumptions};
use tropirrat::polytope::{LatticePolytope, PolytopeJson};
use tropirrat::subdivision::{
    lower_envelope_subdivision, slice_subdivision, Lifting, LiftingJson, Subdivision,
};
use tropirrat::{Int, IntVec};

#[derive(Serialize)]
struct FaceView {
    id: usize,
    dim: usize,
    boundary: bool,
    vertices: Vec<Vec<String>>,
    status: String,
    detail: String,
}

#[derive(Serialize)]
struct AnalysisView {
    vertices: Vec<Vec<String>>,
    cells: Vec<Vec<Vec<String>>>,
    faces: Vec<FaceView>,
    face_counts: Vec<usize>,
    formal_sum: Vec<(String, String)>,
    verdict: String,
}

fn coords(v: &IntVec) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}

fn status_view(sub: &Subdivision, face_id: usize, db: &KnownPolytopeDb) -> (String, String) {
    let poly = sub.face_polytope(face_id);
    let options = ClassifyOptions::default();
    match classify_face(&poly, face_id, db, &options) {
        RationalityStatus::StablyRational(RationalReason::LowDim) => {
            ("rational".into(), "dimension at most one".into())
        }
        RationalityStatus::StablyRational(RationalReason::WidthOne(l)) => (
            "rational".into(),
            format!("lattice width one, functional {l}"),
        ),
        RationalityStatus::StablyRational(RationalReason::DbMatch { key, .. }) => {
            ("rational".into(), format!("registry match: {key}"))
        }
        RationalityStatus::StablyRational(RationalReason::UnimodularTriangulation) => {
            ("rational".into(), "unimodular triangulation".into())
        }
        RationalityStatus::KnownIrrational { key, .. } => {
            ("irrational".into(), format!("registry match: {key}"))
        }
        RationalityStatus::Unknown { .. } => {
            let detail = match width_upper(&poly, 3) {
                Ok((w, _)) => format!("no certificate; width at most {w}"),
                Err(_) => "no certificate".into(),
            };
            ("unknown".into(), detail)
        }
    }
}

fn analyze(sub: &Subdivision) -> Result<String, JsValue> {
    let db = KnownPolytopeDb::builtin();
    let options = ClassifyOptions::default();
    let (certificate, _) = certify(sub, &db, &options, &Assumptions::default(), false)
        .map_err(|e| JsValue::from_str(&e.to_string()))?;
    let faces = sub
        .faces()
        .iter()
        .enumerate()
        .map(|(id, f)| {
            let (status, detail) = if f.boundary {
                ("boundary".into(), String::new())
            } else {
                status_view(sub, id, &db)
            };
            FaceView {
                id,
                dim: f.dim,
                boundary: f.boundary,
                vertices: f
                    .vertices
                    .iter_ones()
                    .map(|i| coords(&sub.vertices()[i]))
                    .collect(),
                status,
                detail,
            }
        })
        .collect();
    let view = AnalysisView {
        vertices: sub.vertices().iter().map(coords).collect(),
        cells: sub
            .cells()
            .iter()
            .map(|c| c.vertices().iter().map(coords).collect())
            .collect(),
        faces,
        face_counts: sub.face_count_by_dim(),
        formal_sum: certificate
            .formal_sum
            .iter()
            .map(|t| (t.tag.clone(), t.coeff.clone()))
            .collect(),
        verdict: match certificate.verdict {
            tropirrat::obstruction::Verdict::Nontrivial => "nontrivial".into(),
            tropirrat::obstruction::Verdict::Inconclusive => "inconclusive".into(),
        },
    };
    serde_json::to_string(&view).map_err(|e| JsValue::from_str(&e.to_string()))
}

/// Lattice points of a polytope, for rendering the editable height grid.
#[wasm_bindgen]
pub fn lattice_points(polytope_json: &str) -> Result<String, JsValue> {
    let json: PolytopeJson =
        serde_json::from_str(polytope_json).map_err(|e| JsValue::from_str(&e.to_string()))?;
    let p = LatticePolytope::from_json(json).map_err(|e| JsValue::from_str(&e.to_string()))?;
    let pts: Vec<Vec<String>> = p.lattice_points().iter().map(coords).collect();
    serde_json::to_string(&pts).map_err(|e| JsValue::from_str(&e.to_string()))
}

/// Lower-envelope subdivision of a lifting, with per-face classification and
/// the obstruction verdict.
#[wasm_bindgen]
pub fn envelope_analysis(lifting_json: &str) -> Result<String, JsValue> {
    let json: LiftingJson =
        serde_json::from_str(lifting_json).map_err(|e| JsValue::from_str(&e.to_string()))?;
    let lifting = Lifting::from_json(json).map_err(|e| JsValue::from_str(&e.to_string()))?;
    let sub = lower_envelope_subdivision(&lifting);
    analyze(&sub)
}

/// Slicing subdivision of a polytope along an integral functional.
#[wasm_bindgen]
pub fn slice_analysis(
    polytope_json: &str,
    functional_csv: &str,
    levels_csv: &str,
) -> Result<String, JsValue> {
    let json: PolytopeJson =
        serde_json::from_str(polytope_json).map_err(|e| JsValue::from_str(&e.to_string()))?;
    let p = LatticePolytope::from_json(json).map_err(|e| JsValue::from_str(&e.to_string()))?;
    let parse = |s: &str| -> Result<Vec<Int>, JsValue> {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<Int>()
                    .map_err(|e| JsValue::from_str(&format!("bad integer `{t}`: {e}")))
            })
            .collect()
    };
    let functional = IntVec(parse(functional_csv)?);
    let levels = parse(levels_csv)?;
    let sub = slice_subdivision(&p, &functional, &levels)
        .map_err(|e| JsValue::from_str(&e.to_string()))?;
    analyze(&sub)
}

/// Convenience preset: an axis-aligned polygon from a vertex list plus
/// integer heights keyed by lattice point, producing the lifting JSON the
/// page feeds back into `envelope_analysis`.
#[wasm_bindgen]
pub fn build_lifting(polytope_json: &str, heights_json: &str) -> Result<String, JsValue> {
    let json: PolytopeJson =
        serde_json::from_str(polytope_json).map_err(|e| JsValue::from_str(&e.to_string()))?;
    let p = LatticePolytope::from_json(json).map_err(|e| JsValue::from_str(&e.to_string()))?;
    let raw: Vec<(Vec<i64>, String)> =
        serde_json::from_str(heights_json).map_err(|e| JsValue::from_str(&e.to_string()))?;
    let mut heights = BTreeMap::new();
    for (point, value) in raw {
        let value = value
            .parse::<Int>()
            .map(tropirrat::Rat::from_integer)
            .or_else(|_| {
                let (n, d) = value
                    .split_once('/')
                    .ok_or_else(|| JsValue::from_str(&format!("bad height `{value}`")))?;
                Ok::<_, JsValue>(tropirrat::Rat::new(
                    n.trim().parse::<Int>().map_err(|e| JsValue::from_str(&e.to_string()))?,
                    d.trim().parse::<Int>().map_err(|e| JsValue::from_str(&e.to_string()))?,
                ))
            })?;
        heights.insert(IntVec::from_i64(&point), value);
    }
    let lifting =
        Lifting::new(p, heights).map_err(|e| JsValue::from_str(&e.to_string()))?;
    serde_json::to_string(&lifting.to_json()).map_err(|e| JsValue::from_str(&e.to_string()))
}
