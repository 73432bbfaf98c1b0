//! JSON encoding of every input and output, and offline replay of
//! certificates.
//!
//! Scalars are decimal strings ("3", "-1/2"). Objects are emitted with
//! sorted keys, so equal values always serialize to identical bytes.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElement};
use crate::grassmannian::{
    enumerate_subspaces, CbReport, GrassmannPointSet, PluckerPoint, Term,
};
use crate::linalg::{Matrix, ProjSubspace};
use crate::special_position::{
    Configuration, Method, PartitionInequality, PartitionReport, SpCertificate, SpanBoundReport, Verdict,
};
use crate::theorem_lab::{PlaneCover, QuadricReport, SharpnessResult, Survey, SurveyResult};

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field \"{key}\"")))
}

fn get_usize(v: &Value, key: &str) -> Result<usize> {
    get(v, key)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| bad(format!("\"{key}\" must be a non-negative integer")))
}

fn get_isize(v: &Value, key: &str) -> Result<isize> {
    get(v, key)?.as_i64().map(|x| x as isize).ok_or_else(|| bad(format!("\"{key}\" must be an integer")))
}

fn get_bool(v: &Value, key: &str) -> Result<bool> {
    get(v, key)?.as_bool().ok_or_else(|| bad(format!("\"{key}\" must be a boolean")))
}

fn get_array<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>> {
    get(v, key)?.as_array().ok_or_else(|| bad(format!("\"{key}\" must be an array")))
}

fn get_str<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    get(v, key)?.as_str().ok_or_else(|| bad(format!("\"{key}\" must be a string")))
}

/// Rejects keys outside `allowed`.
pub fn check_keys(v: &Value, allowed: &[&str]) -> Result<()> {
    let obj = v.as_object().ok_or_else(|| bad("expected a JSON object"))?;
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(bad(format!("unknown field \"{key}\"")));
        }
    }
    Ok(())
}

pub fn indices_json(v: &Value) -> Result<Vec<usize>> {
    v.as_array()
        .ok_or_else(|| bad("expected an array of indices"))?
        .iter()
        .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(|| bad("indices must be non-negative integers")))
        .collect()
}

// ---- fields and scalars ----

pub fn field_to_json(f: FieldDescriptor) -> Value {
    match f {
        FieldDescriptor::Rational => json!("rational"),
        FieldDescriptor::Prime(m) => json!({ "gf": m.get() }),
    }
}

pub fn field_from_json(v: &Value) -> Result<FieldDescriptor> {
    match v {
        Value::String(s) if s == "rational" => Ok(FieldDescriptor::Rational),
        Value::Object(o) if o.len() == 1 && o.contains_key("gf") => {
            let p = o["gf"].as_u64().ok_or_else(|| bad("\"gf\" must be a positive integer"))?;
            FieldDescriptor::gf(p)
        }
        _ => Err(bad("field must be \"rational\" or {\"gf\": p}")),
    }
}

pub fn element_to_json(e: &FieldElement) -> Value {
    Value::String(e.to_string())
}

pub fn element_from_json(f: FieldDescriptor, v: &Value) -> Result<FieldElement> {
    match v {
        Value::String(s) => f.parse(s),
        Value::Number(n) if n.is_i64() => Ok(FieldElement::from_i64(f, n.as_i64().expect("i64"))),
        _ => Err(bad("scalars must be strings such as \"3\" or \"-1/2\"")),
    }
}

// ---- subspaces ----

pub fn matrix_rows_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(element_to_json).collect()))
            .collect(),
    )
}

pub fn subspace_to_json(s: &ProjSubspace) -> Value {
    json!({ "n": s.ambient(), "basis": matrix_rows_json(s.basis()) })
}

pub fn subspace_from_json(f: FieldDescriptor, v: &Value) -> Result<ProjSubspace> {
    check_keys(v, &["n", "basis", "field"])?;
    let n = get_usize(v, "n")?;
    let rows = get_array(v, "basis")?;
    let mut data = Vec::new();
    for r in rows {
        let r = r.as_array().ok_or_else(|| bad("basis rows must be arrays"))?;
        if r.len() != n + 1 {
            return Err(bad(format!("basis rows of a subspace of P^{n} need {} entries", n + 1)));
        }
        for x in r {
            data.push(element_from_json(f, x)?);
        }
    }
    if rows.is_empty() {
        return Ok(ProjSubspace::empty(f, n));
    }
    ProjSubspace::from_rows(&Matrix::from_elements(f, rows.len(), n + 1, &data)?)
}

// ---- configurations ----

pub fn configuration_to_json(c: &Configuration) -> Value {
    json!({
        "field": field_to_json(c.field()),
        "n": c.n(),
        "k": c.k(),
        "planes": c.planes().iter().map(subspace_to_json).collect::<Vec<_>>(),
    })
}

pub fn configuration_from_json(v: &Value) -> Result<Configuration> {
    check_keys(v, &["field", "n", "k", "planes"])?;
    let f = field_from_json(get(v, "field")?)?;
    let n = get_usize(v, "n")?;
    let k = get_usize(v, "k")?;
    let planes = get_array(v, "planes")?
        .iter()
        .map(|p| {
            let s = subspace_from_json(f, p)?;
            if s.ambient() != n {
                return Err(bad("plane ambient differs from the configuration's n"));
            }
            Ok(s)
        })
        .collect::<Result<Vec<_>>>()?;
    Configuration::new(f, n, k, planes)
}

// ---- SP certificates ----

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::Fails => "fails",
    }
}

fn method_str(m: Method) -> &'static str {
    match m {
        Method::BruteForce => "brute-force",
        Method::TupleWitness => "tuple-witness",
    }
}

/// The primitive facts a third party checks to accept the certificate.
fn reverify_block(c: &Configuration, cert: &SpCertificate) -> Value {
    match &cert.witness {
        Some(w) => json!({
            "witness_dim": c.test_dim(),
            "facts": (0..c.d()).map(|i| json!({ "plane": i, "meets": i != w.j })).collect::<Vec<_>>(),
        }),
        None => json!({
            "scan": format!(
                "every {}-plane of P^{} meeting all planes but one meets all of them",
                c.test_dim(),
                c.n()
            ),
            "replayable": c.field().is_prime_field() && cert.is_exact(),
        }),
    }
}

pub fn certificate_to_json(c: &Configuration, cert: &SpCertificate) -> Value {
    json!({
        "kind": "sp-certificate",
        "configuration": configuration_to_json(c),
        "verdict": verdict_str(cert.verdict),
        "method": method_str(cert.method),
        "exact": cert.is_exact(),
        "trials": cert.trials,
        "witness": cert.witness.as_ref().map(|w| json!({ "j": w.j, "l_plane": subspace_to_json(&w.l_plane) })),
        "reverify": reverify_block(c, cert),
    })
}

pub fn certificate_from_json(v: &Value) -> Result<(Configuration, SpCertificate)> {
    let malformed = |e: Error| Error::MalformedCertificate(e.to_string());
    let c = configuration_from_json(get(v, "configuration").map_err(malformed)?).map_err(malformed)?;
    let verdict = match get_str(v, "verdict").map_err(malformed)? {
        "holds" => Verdict::Holds,
        "fails" => Verdict::Fails,
        other => return Err(Error::MalformedCertificate(format!("unknown verdict {other}"))),
    };
    let method = match get_str(v, "method").map_err(malformed)? {
        "brute-force" => Method::BruteForce,
        "tuple-witness" => Method::TupleWitness,
        other => return Err(Error::MalformedCertificate(format!("unknown method {other}"))),
    };
    let trials = v.get("trials").and_then(Value::as_u64);
    let witness = match v.get("witness") {
        None | Some(Value::Null) => None,
        Some(w) => {
            let j = get_usize(w, "j").map_err(malformed)?;
            let l = subspace_from_json(c.field(), get(w, "l_plane").map_err(malformed)?).map_err(malformed)?;
            Some(crate::special_position::Witness { j, l_plane: l })
        }
    };
    if (verdict == Verdict::Fails) != witness.is_some() {
        return Err(Error::MalformedCertificate("a witness is present iff the verdict is fails".into()));
    }
    Ok((c, SpCertificate { verdict, method, witness, trials }))
}

/// Outcome of replaying a JSON artifact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Replay {
    pub valid: bool,
    pub kind: String,
    pub notes: Vec<String>,
}

/// Decides SP by scanning every F_q-rational (n-k)-plane with the generic
/// `meets`, independently of the testers.
pub fn replay_holds(c: &Configuration, budget: u128) -> Result<bool> {
    for l in enumerate_subspaces(c.field(), c.n(), c.test_dim(), budget)? {
        let mut misses = 0;
        for p in c.planes() {
            if !l.meets(p)? {
                misses += 1;
                if misses > 1 {
                    break;
                }
            }
        }
        if misses == 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

fn replay_certificate(c: &Configuration, cert: &SpCertificate, budget: u128, notes: &mut Vec<String>) -> Result<bool> {
    match cert.verdict {
        Verdict::Fails => {
            let ok = cert.reverify(c)?;
            if !ok {
                notes.push("witness does not meet exactly the planes other than j".into());
            }
            Ok(ok)
        }
        Verdict::Holds => {
            if !cert.is_exact() {
                notes.push("randomized holds verdict cannot be replayed".into());
                return Ok(false);
            }
            if !c.field().is_prime_field() {
                notes.push("holds over Q cannot be replayed by a finite scan".into());
                return Ok(false);
            }
            let ok = replay_holds(c, budget)?;
            if !ok {
                notes.push("scan found an (n-k)-plane missing exactly one plane".into());
            }
            Ok(ok)
        }
    }
}

// ---- partitions and bounds ----

pub fn partition_report_to_json(c: &Configuration, r: &PartitionReport) -> Value {
    let certs: Vec<Value> = r
        .blocks
        .iter()
        .zip(&r.per_block_certificates)
        .map(|(b, cert)| certificate_to_json(&c.subset(b).expect("block indices are valid"), cert))
        .collect();
    json!({
        "kind": "partition-report",
        "configuration": configuration_to_json(c),
        "decomposable": r.decomposable,
        "m": r.m,
        "minimal_partition": r.blocks,
        "per_block_certificates": certs,
    })
}

pub fn partition_report_from_json(v: &Value) -> Result<(Configuration, PartitionReport)> {
    let c = configuration_from_json(get(v, "configuration")?)?;
    let blocks = get_array(v, "minimal_partition")?.iter().map(indices_json).collect::<Result<Vec<_>>>()?;
    let per_block_certificates = get_array(v, "per_block_certificates")?
        .iter()
        .map(|x| certificate_from_json(x).map(|(_, cert)| cert))
        .collect::<Result<Vec<_>>>()?;
    let report = PartitionReport {
        decomposable: get_bool(v, "decomposable")?,
        m: get_usize(v, "m")?,
        blocks,
        per_block_certificates,
    };
    Ok((c, report))
}

fn replay_partition(v: &Value, budget: u128, notes: &mut Vec<String>) -> Result<bool> {
    let (c, r) = partition_report_from_json(v).map_err(|e| Error::MalformedCertificate(e.to_string()))?;
    if let Err(e) = crate::special_position::span_bound_report(&c, &r) {
        notes.push(e.to_string());
        return Ok(false);
    }
    let mut ok = true;
    for ((b, cert), cv) in r.blocks.iter().zip(&r.per_block_certificates).zip(get_array(v, "per_block_certificates")?) {
        let sub = c.subset(b)?;
        if configuration_from_json(get(cv, "configuration")?)? != sub {
            notes.push(format!("certificate of block {b:?} is for other planes"));
            ok = false;
            continue;
        }
        if cert.verdict != Verdict::Holds || !replay_certificate(&sub, cert, budget, notes)? {
            notes.push(format!("block {b:?} is not certified SP"));
            ok = false;
        }
    }
    if r.m != r.blocks.len() || (r.m == 1) == r.decomposable {
        notes.push("m and decomposable disagree with the blocks".into());
        ok = false;
    }
    Ok(ok)
}

pub fn span_bound_to_json(r: &SpanBoundReport) -> Value {
    json!({ "kind": "span-bound", "span_dim": r.span_dim, "bound": r.bound, "satisfied": r.satisfied })
}

pub fn inequality_to_json(r: &PartitionInequality) -> Value {
    json!({
        "kind": "partition-inequality",
        "lhs": r.lhs,
        "rhs": r.rhs,
        "satisfied": r.satisfied,
        "hypotheses_met": r.hypotheses_met,
        "reason": r.reason,
    })
}

// ---- Grassmannian ----

pub fn plucker_to_json(p: &PluckerPoint) -> Value {
    json!({ "k": p.k(), "n": p.n(), "coords": p.coords().iter().map(element_to_json).collect::<Vec<_>>() })
}

pub fn plucker_from_json(f: FieldDescriptor, v: &Value) -> Result<PluckerPoint> {
    check_keys(v, &["k", "n", "coords"])?;
    let coords = get_array(v, "coords")?.iter().map(|x| element_from_json(f, x)).collect::<Result<Vec<_>>>()?;
    PluckerPoint::new(f, get_usize(v, "k")?, get_usize(v, "n")?, coords)
}

/// A point set given either as {"field", "k", "n", "points": [...]} or as a
/// configuration, whose planes are converted to Plücker points.
pub fn point_set_from_json(v: &Value) -> Result<GrassmannPointSet> {
    if v.get("planes").is_some() {
        let c = configuration_from_json(v)?;
        return GrassmannPointSet::from_planes(c.planes(), c.k());
    }
    check_keys(v, &["field", "k", "n", "points"])?;
    let f = field_from_json(get(v, "field")?)?;
    let points = get_array(v, "points")?.iter().map(|p| plucker_from_json(f, p)).collect::<Result<Vec<_>>>()?;
    GrassmannPointSet::new(f, get_usize(v, "k")?, get_usize(v, "n")?, points)
}

fn term_to_json(t: &Term) -> Value {
    json!({ "exponents": t.exponents, "coefficient": element_to_json(&t.coefficient) })
}

pub fn cb_report_to_json(r: &CbReport, degree: usize) -> Value {
    json!({
        "kind": "cb-report",
        "r": degree,
        "holds": r.holds,
        "failing_index": r.failing_index,
        "separating_form": r.separating_form.as_ref().map(|f| f.iter().map(term_to_json).collect::<Vec<_>>()),
    })
}

// ---- theorem lab ----

pub fn survey_result_to_json(r: &SurveyResult) -> Value {
    let violation = |v: &crate::theorem_lab::BoundViolation| {
        json!({ "planes": v.planes, "span_dim": v.span_dim, "bound": v.bound, "m": v.m })
    };
    json!({
        "kind": "survey-result",
        "parameters": { "q": r.q, "n": r.n, "k": r.k, "d": r.d },
        "total_configs": r.total_configs,
        "sp_configs": r.sp_configs,
        "indecomposable_configs": r.indecomposable_configs,
        "decomposable_configs": r.decomposable_configs,
        "max_span_dim_observed": r.max_span_dim_observed,
        "bound_violations": r.bound_violations.iter().map(violation).collect::<Vec<_>>(),
        "corollary_violations": r.corollary_violations.iter().map(violation).collect::<Vec<_>>(),
        "sp_not_cb1": r.sp_not_cb1,
        "cb1_not_sp": r.cb1_not_sp,
    })
}

/// Every SP configuration of a survey with its partition, for offline
/// replay.
pub fn survey_replay_to_json(s: &Survey) -> Value {
    let f = FieldDescriptor::gf(s.result.q).expect("survey fields are prime");
    json!({
        "kind": "survey-replay",
        "field": field_to_json(f),
        "n": s.result.n,
        "k": s.result.k,
        "d": s.result.d,
        "planes": s.planes.iter().map(subspace_to_json).collect::<Vec<_>>(),
        "records": s.records.iter().map(|r| json!({
            "planes": r.planes,
            "span_dim": r.span_dim,
            "m": r.m,
            "blocks": r.blocks,
            "bound": r.bound,
            "cb1": r.cb1,
        })).collect::<Vec<_>>(),
    })
}

fn replay_survey(v: &Value, budget: u128, notes: &mut Vec<String>) -> Result<bool> {
    let f = field_from_json(get(v, "field")?)?;
    let (n, k) = (get_usize(v, "n")?, get_usize(v, "k")?);
    let planes = get_array(v, "planes")?.iter().map(|p| subspace_from_json(f, p)).collect::<Result<Vec<_>>>()?;
    let mut ok = true;
    for rec in get_array(v, "records")? {
        let idx = indices_json(get(rec, "planes")?)?;
        let chosen = idx
            .iter()
            .map(|&i| planes.get(i).cloned().ok_or_else(|| bad("plane index out of range")))
            .collect::<Result<Vec<_>>>()?;
        let c = Configuration::new(f, n, k, chosen)?;
        let span_dim = get_isize(rec, "span_dim")?;
        let blocks = get_array(rec, "blocks")?.iter().map(indices_json).collect::<Result<Vec<_>>>()?;
        let m = get_usize(rec, "m")?;
        let bound = get_isize(rec, "bound")?;
        let (d, kk) = (c.d() as isize, k as isize);
        let expected_bound = d + kk - 3 + (m as isize - 1) * (kk - 2);
        let mut good = c.total_span().dim() == span_dim
            && bound == expected_bound
            && span_dim <= bound
            && blocks.len() == m
            && crate::special_position::check_partition(c.d(), &blocks).is_ok()
            && replay_holds(&c, budget)?;
        for b in &blocks {
            good = good && replay_holds(&c.subset(b)?, budget)?;
        }
        if !good {
            notes.push(format!("record {idx:?} does not replay"));
            ok = false;
        }
    }
    Ok(ok)
}

pub fn sharpness_to_json(r: &SharpnessResult) -> Value {
    json!({
        "kind": "sharpness-result",
        "configuration": configuration_to_json(&r.configuration),
        "span_dim": r.span_dim,
        "bound": r.bound,
        "certificate": certificate_to_json(&r.configuration, &r.certificate),
        "partition": partition_report_to_json(&r.configuration, &r.report),
        "violations": r.violations.iter().map(configuration_to_json).collect::<Vec<_>>(),
    })
}

fn replay_sharpness(v: &Value, budget: u128, notes: &mut Vec<String>) -> Result<bool> {
    let c = configuration_from_json(get(v, "configuration")?)?;
    let (cc, cert) = certificate_from_json(get(v, "certificate")?)?;
    let mut ok = cc == c && cert.verdict == Verdict::Holds && replay_certificate(&c, &cert, budget, notes)?;
    ok &= replay_partition(get(v, "partition")?, budget, notes)?;
    let (pc, report) = partition_report_from_json(get(v, "partition")?)?;
    ok &= pc == c && !report.decomposable;
    ok &= c.total_span().dim() == get_isize(v, "span_dim")?;
    if !ok {
        notes.push("sharpness result does not replay".into());
    }
    Ok(ok)
}

pub fn cover_to_json(r: &PlaneCover) -> Value {
    json!({
        "kind": "plane-cover",
        "blocks": r.blocks.iter().map(subspace_to_json).collect::<Vec<_>>(),
        "total_dim": r.total_dim,
        "bound": r.bound,
        "within_bound": r.within_bound,
    })
}

pub fn quadric_to_json(r: &QuadricReport) -> Value {
    json!({
        "kind": "quadric",
        "exists": r.exists,
        "rank": r.rank,
        "frame": subspace_to_json(&r.frame),
        "monomials": crate::theorem_lab::QUADRIC_MONOMIALS.iter().map(|&(i, j)| format!("x{i}*x{j}")).collect::<Vec<_>>(),
        "quadric": r.quadric.as_ref().map(|q| q.iter().map(element_to_json).collect::<Vec<_>>()),
    })
}

/// Replays any artifact carrying a "kind": SP certificates, partition
/// reports, sharpness results and survey replay files. Only meets/span facts
/// are used, never the testers.
pub fn verify_json(v: &Value, budget: u128) -> Result<Replay> {
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::MalformedCertificate("missing \"kind\"".into()))?
        .to_string();
    let mut notes = Vec::new();
    let valid = match kind.as_str() {
        "sp-certificate" => {
            let (c, cert) = certificate_from_json(v)?;
            replay_certificate(&c, &cert, budget, &mut notes)?
        }
        "partition-report" => replay_partition(v, budget, &mut notes)?,
        "sharpness-result" => replay_sharpness(v, budget, &mut notes)?,
        "survey-replay" => replay_survey(v, budget, &mut notes)?,
        other => return Err(Error::MalformedCertificate(format!("cannot replay kind \"{other}\""))),
    };
    Ok(Replay { valid, kind, notes })
}

pub fn replay_to_json(r: &Replay) -> Value {
    json!({ "kind": "replay", "artifact": r.kind, "valid": r.valid, "notes": r.notes })
}

/// Adds the resolved parameters to an output object.
pub fn with_params(mut out: Value, params: Map<String, Value>) -> Value {
    if let Value::Object(o) = &mut out {
        o.insert("params".into(), Value::Object(params));
    }
    out
}

/// Serializes with sorted keys and a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

/// JSON Schemas (draft 2020-12) for every document the CLI reads or writes.
pub fn schemas() -> Value {
    let scalar = json!({ "type": ["string", "integer"], "description": "decimal integer or fraction such as \"-1/2\"" });
    let field = json!({
        "oneOf": [
            { "const": "rational" },
            { "type": "object", "properties": { "gf": { "type": "integer", "minimum": 2 } }, "required": ["gf"], "additionalProperties": false }
        ]
    });
    let subspace = json!({
        "type": "object",
        "properties": {
            "n": { "type": "integer", "minimum": 0 },
            "basis": { "type": "array", "items": { "type": "array", "items": { "$ref": "#/$defs/scalar" } } }
        },
        "required": ["n", "basis"],
        "additionalProperties": false
    });
    let configuration = json!({
        "type": "object",
        "properties": {
            "field": { "$ref": "#/$defs/field" },
            "n": { "type": "integer", "minimum": 1 },
            "k": { "type": "integer", "minimum": 1 },
            "planes": { "type": "array", "minItems": 1, "items": { "$ref": "#/$defs/subspace" } }
        },
        "required": ["field", "n", "k", "planes"],
        "additionalProperties": false
    });
    let certificate = json!({
        "type": "object",
        "properties": {
            "kind": { "const": "sp-certificate" },
            "configuration": { "$ref": "#/$defs/configuration" },
            "verdict": { "enum": ["holds", "fails"] },
            "method": { "enum": ["brute-force", "tuple-witness"] },
            "exact": { "type": "boolean" },
            "trials": { "type": ["integer", "null"] },
            "witness": {
                "oneOf": [
                    { "type": "null" },
                    { "type": "object", "properties": { "j": { "type": "integer" }, "l_plane": { "$ref": "#/$defs/subspace" } }, "required": ["j", "l_plane"] }
                ]
            },
            "reverify": { "type": "object" }
        },
        "required": ["kind", "configuration", "verdict", "method"]
    });
    let partition = json!({
        "type": "object",
        "properties": {
            "kind": { "const": "partition-report" },
            "configuration": { "$ref": "#/$defs/configuration" },
            "decomposable": { "type": "boolean" },
            "m": { "type": "integer", "minimum": 1 },
            "minimal_partition": { "type": "array", "items": { "type": "array", "items": { "type": "integer" } } },
            "per_block_certificates": { "type": "array", "items": { "$ref": "#/$defs/certificate" } }
        },
        "required": ["kind", "configuration", "decomposable", "m", "minimal_partition", "per_block_certificates"]
    });
    let point_set = json!({
        "oneOf": [
            { "$ref": "#/$defs/configuration" },
            {
                "type": "object",
                "properties": {
                    "field": { "$ref": "#/$defs/field" },
                    "k": { "type": "integer" },
                    "n": { "type": "integer" },
                    "points": { "type": "array", "items": {
                        "type": "object",
                        "properties": { "k": { "type": "integer" }, "n": { "type": "integer" }, "coords": { "type": "array", "items": { "$ref": "#/$defs/scalar" } } },
                        "required": ["k", "n", "coords"]
                    } }
                },
                "required": ["field", "k", "n", "points"],
                "additionalProperties": false
            }
        ]
    });
    let project = json!({
        "type": "object",
        "properties": {
            "field": { "$ref": "#/$defs/field" },
            "center": { "$ref": "#/$defs/subspace" },
            "subspaces": { "type": "array", "items": { "$ref": "#/$defs/subspace" } }
        },
        "required": ["field", "center", "subspaces"],
        "additionalProperties": false
    });
    let span_bound = json!({
        "oneOf": [
            { "$ref": "#/$defs/configuration" },
            {
                "type": "object",
                "properties": {
                    "configuration": { "$ref": "#/$defs/configuration" },
                    "partition": { "type": "array", "items": { "type": "array", "items": { "type": "integer" } } },
                    "epsilons": { "type": "array", "items": { "type": "integer" } }
                },
                "required": ["configuration"],
                "additionalProperties": false
            }
        ]
    });
    let survey = json!({
        "type": "object",
        "properties": {
            "kind": { "const": "survey-result" },
            "parameters": { "type": "object" },
            "total_configs": { "type": "integer" },
            "sp_configs": { "type": "integer" },
            "indecomposable_configs": { "type": "integer" },
            "decomposable_configs": { "type": "integer" },
            "max_span_dim_observed": { "type": ["integer", "null"] },
            "bound_violations": { "type": "array" },
            "corollary_violations": { "type": "array" },
            "sp_not_cb1": { "type": "array" },
            "cb1_not_sp": { "type": "array" }
        }
    });
    json!({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "$defs": {
            "scalar": scalar,
            "field": field,
            "subspace": subspace,
            "configuration": configuration,
            "certificate": certificate,
            "partition-report": partition,
        },
        "inputs": {
            "check-sp": { "$ref": "#/$defs/configuration" },
            "decompose": { "$ref": "#/$defs/configuration" },
            "quadric": { "$ref": "#/$defs/configuration" },
            "span-bound": span_bound,
            "cb-test": point_set,
            "project": project,
            "verify-certificate": {
                "description": "any artifact whose \"kind\" is sp-certificate, partition-report, sharpness-result or survey-replay",
                "type": "object",
                "required": ["kind"]
            }
        },
        "outputs": {
            "check-sp": { "$ref": "#/$defs/certificate" },
            "decompose": { "$ref": "#/$defs/partition-report" },
            "survey": survey,
            "verify-certificate": {
                "type": "object",
                "properties": { "kind": { "const": "replay" }, "artifact": { "type": "string" }, "valid": { "type": "boolean" }, "notes": { "type": "array", "items": { "type": "string" } } }
            }
        },
        "exit_codes": { "0": "computed", "2": "invalid input", "3": "budget exceeded" }
    })
}
