//! JSON documents: polyhedra, check reports and generator files.

use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::df::{AxisReport, DfVerdict, ExtensionReport, TraceAxisReport};
use crate::domain::{rebuild, DomainKind, FaceSource, FundamentalPolyhedron, GroupInput, VertexLocation};
use crate::error::{Error, Result};
use crate::hyperplanes::{HalfSpace, HermitianForm, SurfaceShape};
use crate::moebius::{Model, MoebiusElement, PointUH};
use crate::scalar::{fmt_f64, parse_scalar, Scalar};

pub const POLYHEDRON_SCHEMA: &str = "hypdomain.polyhedron/1";
pub const REPORT_SCHEMA: &str = "hypdomain.report/1";
pub const GENERATORS_SCHEMA: &str = "hypdomain.generators/1";

/// A float as a JSON number with 17 significant digits; `null` if not finite.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    serde_json::from_str(&fmt_f64(x)).unwrap_or(Value::Null)
}

fn complex(z: num_complex::Complex64) -> Value {
    json!([num(z.re), num(z.im)])
}

fn model_name(m: Model) -> &'static str {
    match m {
        Model::H2 => "H2",
        Model::H3 => "H3",
    }
}

fn parse_model(s: &str) -> Result<Model> {
    match s {
        "H2" => Ok(Model::H2),
        "H3" => Ok(Model::H3),
        other => Err(Error::Parse(format!("unknown model {other:?}"))),
    }
}

pub fn element_json(g: &MoebiusElement) -> Value {
    json!([g.a.to_string(), g.b.to_string(), g.c.to_string(), g.d.to_string()])
}

pub fn parse_element(model: Model, e: &[String]) -> Result<MoebiusElement> {
    if e.len() != 4 {
        return Err(Error::Parse(format!("matrix needs 4 entries, got {}", e.len())));
    }
    let v: Vec<Scalar> = e.iter().map(|s| parse_scalar(s)).collect::<Result<_>>()?;
    MoebiusElement::new(model, v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone())
}

fn surface_json(h: &HalfSpace) -> Value {
    let s = h.surface();
    let f = h.form();
    let form = json!({ "alpha": f.alpha.to_string(), "v": f.v.to_string(), "beta": f.beta.to_string() });
    match s.shape() {
        SurfaceShape::Sphere { center, radius_sq } => json!({
            "type": "sphere",
            "center": center.to_string(),
            "radius_sq": radius_sq.to_string(),
            "center_f64": complex(center.to_c64()),
            "radius_f64": num(radius_sq.to_c64().re.sqrt()),
            "side": if f.alpha.to_c64().re > 0.0 { "outside" } else { "inside" },
            "form": form,
        }),
        SurfaceShape::Plane { normal, offset } => {
            let (n, off) = s.unit_plane().unwrap();
            json!({
                "type": "plane",
                "normal": normal.to_string(),
                "offset": offset.to_string(),
                "unit_normal_f64": complex(n),
                "offset_f64": num(off),
                "form": form,
            })
        }
    }
}

fn source_name(s: FaceSource) -> &'static str {
    match s {
        FaceSource::Bisector => "bisector",
        FaceSource::IsometricSphere => "isometric_sphere",
        FaceSource::StabilizerCell => "stabilizer_cell",
        FaceSource::CuspCell => "cusp_cell",
    }
}

fn parse_source(s: &str) -> Result<FaceSource> {
    Ok(match s {
        "bisector" => FaceSource::Bisector,
        "isometric_sphere" => FaceSource::IsometricSphere,
        "stabilizer_cell" => FaceSource::StabilizerCell,
        "cusp_cell" => FaceSource::CuspCell,
        other => return Err(Error::Parse(format!("unknown face source {other:?}"))),
    })
}

fn vertex_json(loc: &VertexLocation) -> Value {
    match loc {
        VertexLocation::Finite(p) => json!({ "type": "finite", "z": complex(p.z), "r": num(p.r) }),
        VertexLocation::Ideal(z) => json!({ "type": "ideal", "z": complex(*z) }),
        VertexLocation::Infinity => json!({ "type": "infinity" }),
        VertexLocation::Beyond => json!({ "type": "beyond" }),
    }
}

fn point_json(p: &PointUH) -> Value {
    json!({ "z": complex(p.z), "r": num(p.r) })
}

/// The versioned polyhedron document.
pub fn polyhedron_json(poly: &FundamentalPolyhedron) -> Value {
    let (kind, center) = match &poly.kind {
        DomainKind::Dirichlet { center } => ("dirichlet", point_json(center)),
        DomainKind::Ford => ("ford", Value::Null),
    };
    let faces: Vec<Value> = poly
        .faces
        .iter()
        .enumerate()
        .map(|(i, f)| {
            json!({
                "index": i,
                "surface": surface_json(&f.halfspace),
                "vertical": f.vertical,
                "source": source_name(f.source),
                "pairing": f.pairing.as_ref().map(element_json),
                "partner": f.partner,
                "vertices": f.vertices,
            })
        })
        .collect();
    let vertices: Vec<Value> = poly
        .vertices
        .iter()
        .map(|v| {
            let mut o = vertex_json(&v.location);
            o["klein"] = json!(v.klein.iter().map(|x| num(*x)).collect::<Vec<_>>());
            o
        })
        .collect();
    let cycles: Vec<Value> = poly
        .edge_cycles
        .iter()
        .map(|c| json!({ "ridges": c.ridges, "angle_sum": num(c.angle_sum), "order": c.order, "pass": c.pass }))
        .collect();
    json!({
        "schema": POLYHEDRON_SCHEMA,
        "model": model_name(poly.model),
        "kind": kind,
        "center": center,
        "origin": poly.origin,
        "bound": num(poly.bound),
        "rounds": poly.rounds,
        "faces": faces,
        "vertices": vertices,
        "edge_cycles": cycles,
        "volume": poly.volume_estimate.map_or(Value::Null, num),
        "verification": serde_json::to_value(&poly.report).unwrap(),
        "stabilizer": poly.stabilizer.iter().map(element_json).collect::<Vec<_>>(),
    })
}

fn str_field<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    v.get(key).and_then(Value::as_str).ok_or_else(|| Error::Parse(format!("missing string field {key:?}")))
}

/// Reads a polyhedron document and rebuilds the polyhedron from its exact
/// face forms and pairings.
pub fn polyhedron_from_json(v: &Value, tol: f64) -> Result<FundamentalPolyhedron> {
    let schema = str_field(v, "schema")?;
    if schema != POLYHEDRON_SCHEMA {
        return Err(Error::Parse(format!("unsupported schema {schema:?}")));
    }
    let model = parse_model(str_field(v, "model")?)?;
    let kind = match str_field(v, "kind")? {
        "ford" => DomainKind::Ford,
        "dirichlet" => {
            let c = &v["center"];
            let z = num_complex::Complex64::new(
                c["z"][0].as_f64().unwrap_or(0.0),
                c["z"][1].as_f64().unwrap_or(0.0),
            );
            DomainKind::Dirichlet { center: PointUH::new(z, c["r"].as_f64().unwrap_or(1.0))? }
        }
        other => return Err(Error::Parse(format!("unknown kind {other:?}"))),
    };
    let faces = v["faces"].as_array().ok_or_else(|| Error::Parse("missing faces".into()))?;
    let mut out = Vec::new();
    for f in faces {
        let form = &f["surface"]["form"];
        let h = HalfSpace::from_form(HermitianForm::new(
            model,
            parse_scalar(str_field(form, "alpha")?)?,
            parse_scalar(str_field(form, "v")?)?,
            parse_scalar(str_field(form, "beta")?)?,
        ))?;
        let pairing = match &f["pairing"] {
            Value::Null => None,
            Value::Array(e) => {
                let e: Vec<String> = e.iter().map(|x| x.as_str().unwrap_or_default().to_string()).collect();
                Some(parse_element(model, &e)?)
            }
            _ => return Err(Error::Parse("pairing must be a matrix or null".into())),
        };
        out.push((h, pairing, parse_source(str_field(f, "source")?)?));
    }
    let mut poly = rebuild(model, kind, out, tol)?;
    poly.origin = v["origin"].as_str().unwrap_or_default().to_string();
    poly.bound = v["bound"].as_f64().unwrap_or(0.0);
    poly.rounds = v["rounds"].as_u64().unwrap_or(0) as usize;
    if let Some(st) = v["stabilizer"].as_array() {
        for e in st {
            let e: Vec<String> = e
                .as_array()
                .map(|a| a.iter().map(|x| x.as_str().unwrap_or_default().to_string()).collect())
                .unwrap_or_default();
            poly.stabilizer.push(parse_element(model, &e)?);
        }
    }
    Ok(poly)
}

/// Generator file: a group given by exact matrices.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorFile {
    pub schema: String,
    pub model: String,
    #[serde(default)]
    pub name: Option<String>,
    pub generators: Vec<Vec<String>>,
    #[serde(default)]
    pub cusp_generators: Vec<Vec<String>>,
    #[serde(default)]
    pub center_stabilizer: Vec<Vec<String>>,
}

impl GeneratorFile {
    pub fn parse(text: &str) -> Result<GeneratorFile> {
        let g: GeneratorFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if g.schema != GENERATORS_SCHEMA {
            return Err(Error::Parse(format!("unsupported schema {:?}", g.schema)));
        }
        Ok(g)
    }

    pub fn to_input(&self) -> Result<GroupInput> {
        let model = parse_model(&self.model)?;
        let conv = |v: &[Vec<String>]| v.iter().map(|e| parse_element(model, e)).collect::<Result<Vec<_>>>();
        GroupInput::new(
            model,
            conv(&self.generators)?,
            conv(&self.cusp_generators)?,
            conv(&self.center_stabilizer)?,
            self.name.clone().unwrap_or_else(|| "generator file".into()),
        )
    }
}

pub fn generator_file_json(input: &GroupInput) -> Value {
    json!({
        "schema": GENERATORS_SCHEMA,
        "model": model_name(input.model),
        "name": input.origin,
        "generators": input.generators.iter().map(element_json).collect::<Vec<_>>(),
        "cusp_generators": input.cusp_generators.iter().map(element_json).collect::<Vec<_>>(),
        "center_stabilizer": input.center_stabilizer.iter().map(element_json).collect::<Vec<_>>(),
    })
}

pub fn df_json(v: &DfVerdict) -> Value {
    json!({
        "is_df": v.is_df,
        "witnesses": v.witnesses.iter().map(|w| json!({
            "face": w.face,
            "pairing": element_json(&w.pairing),
            "composite": w.composite.as_ref().map(element_json),
        })).collect::<Vec<_>>(),
        "failures": v.failures.iter().map(|f| json!({ "face": f.face, "min_defect": num(f.min_defect) })).collect::<Vec<_>>(),
        "traces": v.traces.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
    })
}

pub fn extension_json(r: &ExtensionReport) -> Value {
    json!({
        "kind": serde_json::to_value(r.kind).unwrap(),
        "generators": r.generators.iter().zip(&r.generator_names).map(|(g, n)| json!({ "name": n, "map": g.to_string() })).collect::<Vec<_>>(),
        "relation_checks": r.relation_checks.iter().map(|c| json!({
            "word": c.word,
            "order": c.order.map_or(json!("inf"), |o| json!(o)),
            "pass": c.pass,
        })).collect::<Vec<_>>(),
        "index_claim": r.index_claim,
        "cell": r.polygon.iter().map(surface_json).collect::<Vec<_>>(),
        "angles": r.angles.iter().map(|a| num(*a)).collect::<Vec<_>>(),
        "coxeter_matrix": r.coxeter_matrix.as_ref().map(|m| m.iter().map(|row| row.iter().map(|o| o.map_or(json!("inf"), |o| json!(o))).collect::<Vec<_>>()).collect::<Vec<_>>()),
        "passed": r.passed,
    })
}

fn axis_json(a: &AxisReport) -> Value {
    json!({
        "pass": a.pass,
        "faces": a.faces.iter().map(|f| json!({
            "face": f.face,
            "a_equals_d": f.a_equals_d,
            "heights": f.heights.iter().map(|(t, ok)| json!({ "t": num(*t), "pass": ok })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

fn trace_json(t: &TraceAxisReport) -> Value {
    json!({
        "pass": t.pass,
        "faces": t.faces.iter().map(|f| json!({
            "face": f.face,
            "trace_real": f.trace_real,
            "axis_offset": f.axis_offset.map_or(Value::Null, num),
            "pass": f.pass,
        })).collect::<Vec<_>>(),
    })
}

/// Results of a `check` run; each section is present only when requested.
#[derive(Default)]
pub struct CheckReport {
    pub df: Option<DfVerdict>,
    pub axis: Option<AxisReport>,
    pub trace_axis: Option<Result<TraceAxisReport>>,
    pub reflection: Option<Result<ExtensionReport>>,
    pub coxeter: Option<Result<ExtensionReport>>,
}

fn section<T>(r: &Result<T>, f: impl Fn(&T) -> Value) -> Value {
    match r {
        Ok(x) => f(x),
        Err(e) => json!({ "error": { "code": e.code(), "message": e.to_string() } }),
    }
}

impl CheckReport {
    /// Whether every requested check passed.
    pub fn passed(&self, poly: &FundamentalPolyhedron) -> bool {
        poly.report.passed
            && self.df.as_ref().map_or(true, |d| d.is_df)
            && self.axis.as_ref().map_or(true, |a| a.pass)
            && self.trace_axis.as_ref().map_or(true, |t| matches!(t, Ok(r) if r.pass))
            && self.reflection.as_ref().map_or(true, |t| matches!(t, Ok(r) if r.passed))
            && self.coxeter.as_ref().map_or(true, |t| matches!(t, Ok(r) if r.passed))
    }

    pub fn to_json(&self, poly: &FundamentalPolyhedron) -> Value {
        let mut m = Map::new();
        m.insert("schema".into(), json!(REPORT_SCHEMA));
        m.insert("origin".into(), json!(poly.origin));
        m.insert("faces".into(), json!(poly.faces.len()));
        m.insert("bound".into(), num(poly.bound));
        m.insert("verification".into(), serde_json::to_value(&poly.report).unwrap());
        if let Some(d) = &self.df {
            m.insert("df".into(), df_json(d));
        }
        if let Some(a) = &self.axis {
            m.insert("axis_of_centers".into(), axis_json(a));
        }
        if let Some(t) = &self.trace_axis {
            m.insert("trace_axis".into(), section(t, trace_json));
        }
        if let Some(r) = &self.reflection {
            m.insert("reflection".into(), section(r, extension_json));
        }
        if let Some(r) = &self.coxeter {
            m.insert("coxeter".into(), section(r, extension_json));
        }
        m.insert("passed".into(), json!(self.passed(poly)));
        Value::Object(m)
    }

    /// One line per check, for terminals.
    pub fn table(&self, poly: &FundamentalPolyhedron) -> String {
        let mark = |b: bool| if b { "pass" } else { "FAIL" };
        let mut out = format!("{:<16} {}\n", "poincare", mark(poly.report.passed));
        if let Some(d) = &self.df {
            out += &format!("{:<16} {} (DF={})\n", "df", mark(d.is_df), d.is_df);
        }
        if let Some(a) = &self.axis {
            out += &format!("{:<16} {}\n", "axis_of_centers", mark(a.pass));
        }
        if let Some(t) = &self.trace_axis {
            out += &format!("{:<16} {}\n", "trace_axis", status(t, |r| r.pass));
        }
        if let Some(r) = &self.reflection {
            out += &format!("{:<16} {}\n", "reflection", status(r, |r| r.passed));
        }
        if let Some(r) = &self.coxeter {
            out += &format!("{:<16} {}\n", "coxeter", status(r, |r| r.passed));
        }
        out
    }
}

fn status<T>(r: &Result<T>, ok: impl Fn(&T) -> bool) -> String {
    match r {
        Ok(x) if ok(x) => "pass".into(),
        Ok(_) => "FAIL".into(),
        Err(e) => format!("FAIL ({})", e.code()),
    }
}

/// Machine-readable error document.
pub fn error_json(e: &Error) -> Value {
    json!({ "error": { "code": e.code(), "message": e.to_string() } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{ford_domain, ReductionOptions};

    #[test]
    fn numbers_use_17_digits() {
        assert_eq!(num(0.1).to_string(), "1.0000000000000001e-1");
        assert_eq!(num(f64::NAN), Value::Null);
    }

    #[test]
    fn polyhedron_round_trip() {
        let p = ford_domain(&GroupInput::psl2z(), &ReductionOptions::default()).unwrap();
        let doc = polyhedron_json(&p);
        assert_eq!(doc["schema"], POLYHEDRON_SCHEMA);
        let q = polyhedron_from_json(&doc, 1e-9).unwrap();
        assert_eq!(q.face_keys(), p.face_keys());
        assert!(q.report.passed);
        assert_eq!(polyhedron_json(&q)["faces"], doc["faces"]);
    }

    #[test]
    fn generator_file_rejects_unknown_fields() {
        let ok = r#"{"schema":"hypdomain.generators/1","model":"H2","generators":[["1","1","0","1"]],"cusp_generators":[["1","1","0","1"]]}"#;
        assert!(GeneratorFile::parse(ok).unwrap().to_input().is_ok());
        let extra = r#"{"schema":"hypdomain.generators/1","model":"H2","generators":[],"colour":1}"#;
        assert!(GeneratorFile::parse(extra).is_err());
        let bad = r#"{"schema":"hypdomain.generators/1","model":"H2","generators":[["1","1","1","1"]]}"#;
        assert!(matches!(GeneratorFile::parse(bad).unwrap().to_input(), Err(Error::NotUnimodular)));
        let round = generator_file_json(&GroupInput::psl2z()).to_string();
        assert_eq!(GeneratorFile::parse(&round).unwrap().to_input().unwrap().generators, GroupInput::psl2z().generators);
    }
}
