//! Batch JSON front end for `slicestem`.
//!
//! A job is a command name plus a JSON payload. The payload is checked
//! against the command's field list before anything is computed, and every
//! report carries `schema_version`, the command, the effective numerical
//! parameters and the input it was computed from.
//!
//! Quaternions are `[w, x, y, z]`, complex numbers `[re, im]`, imaginary
//! units `[a, b, c]`, contours `{"circle": {...}}` or `{"rectangle": {...}}`,
//! polynomials `{"coeffs": [...]}` and quotients `{"num": {...}, "den": [...]}`.

use clap::ValueEnum;
use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use slicestem::clifford::{count_upper_bound, in_z8, Cl3Polynomial, Clifford3};
use slicestem::kernels::{bergman_reproduce, cauchy_eval, SliceCircle};
use slicestem::norms::{
    bulk_l2, degree_growth_estimate, norm_sandwich, slice_l2, sphere_l2, sphere_l2_mc,
    DEFAULT_SPHERE_GRID,
};
use slicestem::zeros::{
    count_in_region, find_all_zeros, find_zeros, jensen_check, rouche_same_count, Contour,
};
use slicestem::{ComplexPoly, Error, ImaginaryUnit, Quaternion, StemPolynomial, StemRational};

pub const SCHEMA_VERSION: u32 = 1;

pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_JENSEN_NODES: usize = 4096;
pub const DEFAULT_KERNEL_NODES: usize = 512;
pub const DEFAULT_BERGMAN_RADIAL: usize = 64;
pub const DEFAULT_ROUCHE_SAMPLES: usize = 1024;
pub const DEFAULT_MC_SAMPLES: usize = 100_000;
pub const DEFAULT_SLICE_NODES: usize = 64;
pub const DEFAULT_VARIETY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Eval,
    Star,
    Symmetrize,
    Zeros,
    Count,
    Rouche,
    Jensen,
    Cauchy,
    Bergman,
    Norms,
    Clifford,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Eval => "eval",
            Command::Star => "star",
            Command::Symmetrize => "symmetrize",
            Command::Zeros => "zeros",
            Command::Count => "count",
            Command::Rouche => "rouche",
            Command::Jensen => "jensen",
            Command::Cauchy => "cauchy",
            Command::Bergman => "bergman",
            Command::Norms => "norms",
            Command::Clifford => "clifford",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Flag overrides. `None` means the command's default.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Options {
    pub seed: Option<u64>,
    pub nodes: Option<usize>,
    pub tol: Option<f64>,
}

/// A failed job: machine-readable kind, human-readable detail, exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub kind: String,
    pub detail: String,
    pub exit_code: i32,
}

impl Failure {
    fn malformed(kind: &str, detail: impl Into<String>) -> Self {
        Failure { kind: kind.into(), detail: detail.into(), exit_code: 1 }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "error": { "kind": self.kind, "detail": self.detail },
        })
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit_code = if e.is_malformed_input() { 1 } else { 2 };
        Failure { kind: e.kind().into(), detail: e.to_string(), exit_code }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// Parse a job from raw input. The input is either a bare payload (then
/// `command` must be given) or `{"command": ..., "payload": {...}}`.
pub fn parse_job(input: &str, command: Option<Command>) -> Outcome<(Command, Value)> {
    let value: Value =
        serde_json::from_str(input).map_err(|e| Failure::malformed("malformed_json", e.to_string()))?;
    let wrapped = value.as_object().filter(|m| m.contains_key("command"));
    match (wrapped, command) {
        (Some(m), flag) => {
            if let Some(extra) = m.keys().find(|k| *k != "command" && *k != "payload") {
                return Err(Failure::malformed("schema", format!("unknown job field `{extra}`")));
            }
            let named: Command = serde_json::from_value(m["command"].clone())
                .map_err(|e| Failure::malformed("schema", format!("command: {e}")))?;
            if flag.is_some_and(|c| c != named) {
                return Err(Failure::malformed("schema", "--command disagrees with the job's command"));
            }
            let payload = m.get("payload").cloned().unwrap_or_else(|| json!({}));
            Ok((named, payload))
        }
        (None, Some(c)) => Ok((c, value)),
        (None, None) => Err(Failure::malformed("schema", "no command given")),
    }
}

/// Run a job end to end and return the rendered output and exit code.
pub fn execute(input: &str, command: Option<Command>, opts: &Options, format: Format) -> (String, i32) {
    let outcome = parse_job(input, command).and_then(|(c, payload)| run(c, &payload, opts));
    match outcome {
        Ok(report) => (render(&report, format), 0),
        Err(f) => (serde_json::to_string_pretty(&f.to_json()).expect("serializable") + "\n", f.exit_code),
    }
}

/// Validate the payload, dispatch, and assemble the report.
pub fn run(command: Command, payload: &Value, opts: &Options) -> Outcome<Value> {
    let (params, result) = match command {
        Command::Eval => eval(payload)?,
        Command::Star => star(payload)?,
        Command::Symmetrize => symmetrize(payload)?,
        Command::Zeros => zeros(payload)?,
        Command::Count => count(payload)?,
        Command::Rouche => rouche(payload, opts)?,
        Command::Jensen => jensen(payload, opts)?,
        Command::Cauchy => cauchy(payload, opts)?,
        Command::Bergman => bergman(payload, opts)?,
        Command::Norms => norms(payload, opts)?,
        Command::Clifford => clifford(payload, opts)?,
    };
    Ok(json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "params": params,
        "input": payload,
        "result": result,
    }))
}

pub fn render(report: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("serializable") + "\n",
        Format::Csv => {
            let mut rows = Vec::new();
            flatten("", report, &mut rows);
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["key", "value"]).expect("in-memory write");
            for (k, v) in rows {
                w.write_record([k, v]).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8")
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| flatten(&join(k), x, out)),
        Value::Array(a) => a.iter().enumerate().for_each(|(i, x)| flatten(&join(&i.to_string()), x, out)),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

// ---------------------------------------------------------------- payloads

const FN_KEYS: [&str; 3] = ["coeffs", "num", "den"];

fn parse<T: DeserializeOwned>(payload: &Value, keys: &[&str]) -> Outcome<T> {
    let map = payload
        .as_object()
        .ok_or_else(|| Failure::malformed("schema", "payload must be a JSON object"))?;
    if let Some(k) = map.keys().find(|k| !keys.contains(&k.as_str())) {
        return Err(Failure::malformed("schema", format!("unknown field `{k}`")));
    }
    serde_json::from_value(payload.clone()).map_err(|e| Failure::malformed("schema", e.to_string()))
}

fn keys<'a>(extra: &[&'a str]) -> Vec<&'a str> {
    FN_KEYS.iter().copied().chain(extra.iter().copied()).collect()
}

#[derive(Debug, Default, Deserialize)]
struct FnFields {
    coeffs: Option<Vec<Quaternion>>,
    num: Option<StemPolynomial>,
    den: Option<ComplexPoly>,
}

#[derive(Debug, Clone)]
enum Function {
    Poly(StemPolynomial),
    Rational(StemRational),
}

impl FnFields {
    fn build(self) -> Outcome<Function> {
        match (self.coeffs, self.num, self.den) {
            (Some(c), None, None) => Ok(Function::Poly(StemPolynomial::new(c))),
            (None, Some(n), Some(d)) => Ok(Function::Rational(StemRational::new(n, d)?)),
            _ => Err(Failure::malformed(
                "schema",
                "a function is either `coeffs` or the pair `num` and `den`",
            )),
        }
    }

    fn polynomial(self) -> Outcome<StemPolynomial> {
        match self.build()? {
            Function::Poly(p) => Ok(p),
            Function::Rational(_) => {
                Err(Failure::malformed("schema", "this command needs a polynomial (`coeffs`)"))
            }
        }
    }
}

impl Function {
    fn to_json(&self) -> Value {
        match self {
            Function::Poly(p) => json!(p),
            Function::Rational(r) => json!(r),
        }
    }

    fn rational(&self) -> StemRational {
        match self {
            Function::Poly(p) => StemRational::from_polynomial(p.clone()),
            Function::Rational(r) => r.clone(),
        }
    }
}

fn nested_function(v: &Value) -> Outcome<Function> {
    parse::<FnFields>(v, &FN_KEYS)?.build()
}

fn max_error(a: &[Quaternion], b: &[Quaternion]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (*x - *y).norm()).fold(0.0, f64::max)
}

// ---------------------------------------------------------------- commands

type Report = (Value, Value);

fn eval(payload: &Value) -> Outcome<Report> {
    #[derive(Deserialize)]
    struct P {
        #[serde(flatten)]
        f: FnFields,
        points: Vec<Quaternion>,
    }
    let p: P = parse(payload, &keys(&["points"]))?;
    let values = match p.f.build()? {
        Function::Poly(f) => p.points.iter().map(|q| f.eval_slice(*q)).collect::<Vec<_>>(),
        Function::Rational(r) => p.points.iter().map(|q| r.eval_slice(*q)).collect::<Result<Vec<_>, _>>()?,
    };
    Ok((json!({}), json!({ "values": values })))
}

fn star(payload: &Value) -> Outcome<Report> {
    #[derive(Deserialize)]
    struct P {
        f: Value,
        g: Value,
    }
    let p: P = parse(payload, &["f", "g"])?;
    let product = match (nested_function(&p.f)?, nested_function(&p.g)?) {
        (Function::Poly(a), Function::Poly(b)) => Function::Poly(a.star_product(&b)),
        (a, b) => Function::Rational(a.rational().star(&b.rational())),
    };
    Ok((json!({}), json!({ "product": product.to_json() })))
}

fn symmetrize(payload: &Value) -> Outcome<Report> {
    let f = parse::<FnFields>(payload, &FN_KEYS)?.build()?;
    let result = match f {
        Function::Poly(p) => json!({ "num": p.symmetrize(), "den": [1.0] }),
        Function::Rational(r) => {
            let (n, d) = r.symmetrize();
            json!({ "num": n, "den": d })
        }
    };
    Ok((json!({}), result))
}

fn zeros(payload: &Value) -> Outcome<Report> {
    #[derive(Deserialize)]
    struct P {
        #[serde(flatten)]
        f: FnFields,
        contour: Option<Contour>,
    }
    let p: P = parse(payload, &keys(&["contour"]))?;
    let f = p.f.build()?.rational();
    let records = match &p.contour {
        Some(c) => find_zeros(&f, c)?,
        None => find_all_zeros(&f)?,
    };
    Ok((json!({ "region": p.contour }), json!({ "zeros": records })))
}

fn count(payload: &Value) -> Outcome<Report> {
    #[derive(Deserialize)]
    struct P {
        #[serde(flatten)]
        f: FnFields,
        contour: Contour,
    }
    let p: P = parse(payload, &keys(&["contour"]))?;
    let report = count_in_region(&p.f.build()?.rational(), &p.contour)?;
    let mut result = serde_json::to_value(report).expect("serializable");
    result["predicted_winding"] = json!(report.predicted_winding());
    result["consistent"] = json!(report.is_consistent());
    Ok((json!({}), result))
}

fn rouche(payload: &Value, opts: &Options) -> Outcome<Report> {
    #[derive(Deserialize)]
    struct P {
        f: Value,
        g: Value,
        contour: Contour,
    }
    let p: P = parse(payload, &["f", "g", "contour"])?;
    let f = parse::<FnFields>(&p.f, &FN_KEYS)?.polynomial()?;
    let g = parse::<FnFields>(&p.g, &FN_KEYS)?.polynomial()?;
    let samples = opts.nodes.unwrap_or(DEFAULT_ROUCHE_SAMPLES);
    let report = rouche_same_count(&f, &g, &p.contour, samples)?;
    Ok((json!({ "nodes": samples }), json!(report)))
}

fn jensen(payload: &Value, opts: &Options) -> Outcome<Report> {
    #[derive(Deserialize)]
    struct P {
        #[serde(flatten)]
        f: FnFields,
        radius: f64,
    }
    let p: P = parse(payload, &keys(&["radius"]))?;
    let nodes = opts.nodes.unwrap_or(DEFAULT_JENSEN_NODES);
    let report = jensen_check(&p.f.polynomial()?, p.radius, nodes)?;
    Ok((
        json!({ "nodes": nodes }),
        json!({ "lhs": report.lhs, "rhs": report.rhs, "difference": (report.lhs - report.rhs).abs() }),
    ))
}

fn cauchy(payload: &Value, opts: &Options) -> Outcome<Report> {
    #[derive(Deserialize)]
    struct P {
        #[serde(flatten)]
        f: FnFields,
        unit: ImaginaryUnit,
        #[serde(default)]
        center: f64,
        radius: f64,
        points: Vec<Quaternion>,
    }
    let p: P = parse(payload, &keys(&["unit", "center", "radius", "points"]))?;
    let nodes = opts.nodes.unwrap_or(DEFAULT_KERNEL_NODES);
    let f = p.f.polynomial()?;
    let circle = SliceCircle::new(p.unit, p.center, p.radius, nodes)?;
    let values = p.points.iter().map(|q| cauchy_eval(&f, &circle, *q)).collect::<Result<Vec<_>, _>>()?;
    let direct: Vec<Quaternion> = p.points.iter().map(|q| f.eval_slice(*q)).collect();
    Ok((
        json!({ "nodes": nodes }),
        json!({ "values": values, "direct": direct, "max_error": max_error(&values, &direct) }),
    ))
}

fn bergman(payload: &Value, opts: &Options) -> Outcome<Report> {
    #[derive(Deserialize)]
    struct P {
        #[serde(flatten)]
        f: FnFields,
        unit: ImaginaryUnit,
        points: Vec<Quaternion>,
        radial: Option<usize>,
    }
    let p: P = parse(payload, &keys(&["unit", "points", "radial"]))?;
    let angular = opts.nodes.unwrap_or(DEFAULT_KERNEL_NODES);
    let radial = p.radial.unwrap_or(DEFAULT_BERGMAN_RADIAL);
    let f = p.f.polynomial()?;
    let values = p
        .points
        .iter()
        .map(|q| bergman_reproduce(&f, p.unit, *q, radial, angular))
        .collect::<Result<Vec<_>, _>>()?;
    let direct: Vec<Quaternion> = p.points.iter().map(|q| f.eval_slice(*q)).collect();
    Ok((
        json!({ "nodes": angular, "radial": radial }),
        json!({ "values": values, "direct": direct, "max_error": max_error(&values, &direct) }),
    ))
}

fn norms(payload: &Value, opts: &Options) -> Outcome<Report> {
    #[derive(Deserialize)]
    struct P {
        #[serde(flatten)]
        f: FnFields,
        x: f64,
        y: f64,
        samples: Option<usize>,
        radius: Option<f64>,
        unit: Option<ImaginaryUnit>,
        radii: Option<Vec<f64>>,
    }
    let p: P = parse(payload, &keys(&["x", "y", "samples", "radius", "unit", "radii"]))?;
    let f = p.f.polynomial()?;
    let seed = opts.seed.unwrap_or(DEFAULT_SEED);
    let samples = p.samples.unwrap_or(DEFAULT_MC_SAMPLES);
    let grid = opts.nodes.unwrap_or(DEFAULT_SPHERE_GRID);
    let mut result = Map::new();
    result.insert("sphere_l2".into(), json!(sphere_l2(&f, p.x, p.y)));
    result.insert("sphere_l2_mc".into(), json!(sphere_l2_mc(&f, p.x, p.y, samples, seed)?));
    result.insert("sandwich".into(), json!(norm_sandwich(&f, p.x, p.y, grid)));
    if let Some(r) = p.radius {
        let v = p.unit.unwrap_or(ImaginaryUnit::I);
        let (radial, angular) = (DEFAULT_SLICE_NODES, 2 * DEFAULT_SLICE_NODES);
        result.insert("slice_l2".into(), json!(slice_l2(&f, v, r, radial, angular)?));
        result.insert("bulk_l2".into(), json!(bulk_l2(&f, r, radial, angular)?));
    }
    if let Some(radii) = &p.radii {
        result.insert("growth_exponent".into(), json!(degree_growth_estimate(&f, radii)?));
    }
    Ok((json!({ "seed": seed, "samples": samples, "nodes": grid }), Value::Object(result)))
}

fn clifford(payload: &Value, opts: &Options) -> Outcome<Report> {
    #[derive(Deserialize)]
    struct P {
        coeffs: Vec<Clifford3>,
        contour: Contour,
        #[serde(default)]
        stem_points: Vec<Complex64>,
    }
    let p: P = parse(payload, &["coeffs", "contour", "stem_points"])?;
    let tol = opts.tol.unwrap_or(DEFAULT_VARIETY_TOL);
    let f = Cl3Polynomial::new(p.coeffs);
    let bound = count_upper_bound(&f, &p.contour)?;
    let variety: Vec<Value> = p
        .stem_points
        .iter()
        .map(|z| {
            let value = f.eval_stem(*z);
            json!({ "stem": z, "value": value, "in_variety": in_z8(&value, tol) })
        })
        .collect();
    Ok((
        json!({ "tol": tol }),
        json!({
            "upper_bound": bound,
            "phi8": f.phi8_poly(),
            "stem_values": variety,
        }),
    ))
}
