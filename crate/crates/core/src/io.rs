//! JSON wire formats. Rationals are `"p/q"` strings (`"p"` when `q = 1`);
//! directions are integer arrays.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::decomposition::{ChainCheck, Witness};
use crate::error::{GeometryError, Result};
use crate::inequality::{CertifyReport, InequalityReport, ProbeReport, SearchOutcome};
use crate::measure::DiscreteSphereMeasure;
use crate::polytope::{convex_hull, Polytope};
use crate::scalar::{format_scalar, parse_scalar, Direction, Point, Scalar};
use crate::wulff::{DerivativeReport, SupportSpec, VolumeDerivative};

fn malformed(what: &str) -> GeometryError {
    GeometryError::Parse(format!("malformed {what}"))
}

pub fn scalar_to_json(x: &Scalar) -> Value {
    Value::String(format_scalar(x))
}

/// Accepts `"p/q"` strings and JSON integers.
pub fn scalar_from_json(v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => parse_scalar(s),
        Value::Number(n) if n.is_i64() => parse_scalar(&n.to_string()),
        _ => Err(malformed("rational")),
    }
}

pub fn direction_to_json(w: &Direction) -> Value {
    json!(w.coords())
}

pub fn direction_from_json(v: &Value) -> Result<Direction> {
    let coords = v
        .as_array()
        .ok_or_else(|| malformed("direction"))?
        .iter()
        .map(|x| x.as_i64().ok_or_else(|| malformed("direction")))
        .collect::<Result<Vec<i64>>>()?;
    Direction::new(coords)
}

fn field<'a>(v: &'a Value, key: &str, what: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| GeometryError::Parse(format!("malformed {what}: missing `{key}`")))
}

fn dim_field(v: &Value, what: &str) -> Result<usize> {
    field(v, "n", what)?.as_u64().filter(|&n| n >= 1).map(|n| n as usize).ok_or_else(|| malformed(what))
}

fn array<'a>(v: &'a Value, key: &str, what: &str) -> Result<&'a Vec<Value>> {
    field(v, key, what)?.as_array().ok_or_else(|| malformed(what))
}

pub fn polytope_to_json(p: &Polytope) -> Value {
    let verts: Vec<Value> = p.vertices().iter().map(|v| Value::Array(v.iter().map(scalar_to_json).collect())).collect();
    json!({ "n": p.ambient_dim(), "vertices": verts })
}

/// Reads `{ "n", "vertices" }`; facet data is always recomputed.
pub fn polytope_from_json(v: &Value) -> Result<Polytope> {
    let n = dim_field(v, "polytope")?;
    let pts = array(v, "vertices", "polytope")?
        .iter()
        .map(|row| {
            let row = row.as_array().ok_or_else(|| malformed("polytope"))?;
            if row.len() != n {
                return Err(GeometryError::DimensionMismatch { expected: n, found: row.len() });
            }
            row.iter().map(scalar_from_json).collect::<Result<Point>>()
        })
        .collect::<Result<Vec<Point>>>()?;
    convex_hull(&pts, n)
}

pub fn parse_polytope(text: &str) -> Result<Polytope> {
    polytope_from_json(&parse_value(text)?)
}

pub fn parse_value(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| GeometryError::Parse(format!("invalid JSON: {e}")))
}

pub fn measure_to_json(m: &DiscreteSphereMeasure) -> Value {
    let atoms: Vec<Value> =
        m.atoms().iter().map(|(w, c)| json!({ "dir": direction_to_json(w), "coweight": scalar_to_json(c) })).collect();
    json!({ "n": m.ambient_dim(), "atoms": atoms })
}

pub fn measure_from_json(v: &Value) -> Result<DiscreteSphereMeasure> {
    let n = dim_field(v, "measure")?;
    let atoms = array(v, "atoms", "measure")?
        .iter()
        .map(|a| Ok((direction_from_json(field(a, "dir", "atom")?)?, scalar_from_json(field(a, "coweight", "atom")?)?)))
        .collect::<Result<Vec<_>>>()?;
    DiscreteSphereMeasure::from_atoms(n, atoms)
}

fn entries_to_json(n: usize, entries: &BTreeMap<Direction, Scalar>) -> Value {
    let list: Vec<Value> =
        entries.iter().map(|(w, x)| json!({ "dir": direction_to_json(w), "value": scalar_to_json(x) })).collect();
    json!({ "n": n, "entries": list })
}

/// Reads `{ "n", "entries": [{ "dir", "value" }] }` as raw pairs.
pub fn entries_from_json(v: &Value) -> Result<(usize, Vec<(Direction, Scalar)>)> {
    let n = dim_field(v, "support spec")?;
    let entries = array(v, "entries", "support spec")?
        .iter()
        .map(|e| {
            let w = direction_from_json(field(e, "dir", "entry")?)?;
            if w.dim() != n {
                return Err(GeometryError::DimensionMismatch { expected: n, found: w.dim() });
            }
            Ok((w, scalar_from_json(field(e, "value", "entry")?)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((n, entries))
}

pub fn spec_to_json(s: &SupportSpec) -> Value {
    entries_to_json(s.ambient_dim(), s.entries())
}

pub fn spec_from_json(v: &Value) -> Result<SupportSpec> {
    let (n, entries) = entries_from_json(v)?;
    SupportSpec::from_entries(n, entries)
}

/// Perturbation `f` in the support-spec layout.
pub fn perturbation_from_json(v: &Value) -> Result<BTreeMap<Direction, Scalar>> {
    let (_, entries) = entries_from_json(v)?;
    let mut out = BTreeMap::new();
    for (w, x) in entries {
        if out.insert(w.clone(), x).is_some() {
            return Err(GeometryError::Invalid(format!("duplicate direction {w}")));
        }
    }
    Ok(out)
}

pub fn perturbation_to_json(n: usize, f: &BTreeMap<Direction, Scalar>) -> Value {
    entries_to_json(n, f)
}

fn opt_scalar(x: &Option<Scalar>) -> Value {
    x.as_ref().map(scalar_to_json).unwrap_or(Value::Null)
}

pub fn derivative_to_json(r: &DerivativeReport) -> Value {
    let quotients: Vec<Value> =
        r.quotients.iter().map(|(t, q)| json!({ "t": scalar_to_json(t), "quotient": scalar_to_json(q) })).collect();
    json!({
        "direction": direction_to_json(&r.direction),
        "side": r.side,
        "quotients": quotients,
        "exact": r.exact.is_some(),
        "value": opt_scalar(&r.exact),
        "certified_at": opt_scalar(&r.certified_at),
    })
}

pub fn volume_derivative_to_json(r: &VolumeDerivative) -> Value {
    json!({
        "side": r.side,
        "value": scalar_to_json(&r.value),
        "exact": r.exact,
        "method": r.method,
        "step": opt_scalar(&r.step),
    })
}

pub fn witness_to_json(w: &Witness) -> Value {
    json!({
        "mover": polytope_to_json(&w.mover),
        "moved_facet": w.moved_facet.as_ref().map(direction_to_json),
        "epsilon": opt_scalar(&w.epsilon),
        "absolutely_continuous": w.absolutely_continuous,
        "homothetic": w.homothetic,
        "valid": w.is_valid(),
        "sum_measure": measure_to_json(&w.sum_measure),
        "base_measure": measure_to_json(&w.base_measure),
    })
}

pub fn chain_to_json(c: &ChainCheck) -> Value {
    json!({
        "holds": c.holds(),
        "lambda": scalar_to_json(&c.lambda),
        "lhs": measure_to_json(&c.lhs),
        "rhs": measure_to_json(&c.rhs),
    })
}

/// `bodies` lists `L_1,…,L_r` followed by `K`.
pub fn report_to_json(r: &InequalityReport) -> Value {
    let mut bodies: Vec<Value> = r.ls.iter().map(polytope_to_json).collect();
    bodies.push(polytope_to_json(&r.k));
    let mut m = Map::new();
    m.insert("form".into(), json!(r.form.id()));
    if let crate::inequality::InequalityForm::BezoutR(k) = r.form {
        m.insert("r".into(), json!(k));
    }
    m.insert("n".into(), json!(r.n));
    m.insert("lhs".into(), scalar_to_json(&r.lhs));
    m.insert("rhs".into(), scalar_to_json(&r.rhs));
    m.insert("ratio".into(), opt_scalar(&r.ratio));
    m.insert("verdict".into(), json!(r.verdict));
    m.insert("bodies".into(), Value::Array(bodies));
    Value::Object(m)
}

pub fn certify_to_json(r: &CertifyReport) -> Value {
    json!({
        "trials": r.trials,
        "seed": r.seed,
        "counts": r.counts,
    })
}

pub fn search_to_json(s: &SearchOutcome) -> Value {
    json!({
        "found": s.report.is_some(),
        "evaluations": s.evaluations,
        "report": s.report.as_ref().map(report_to_json),
    })
}

pub fn probe_to_json(p: &ProbeReport) -> Value {
    json!({
        "side": p.side,
        "derivative": scalar_to_json(&p.derivative),
        "mixed_term": scalar_to_json(&p.mixed_term),
        "volume_term": scalar_to_json(&p.volume_term),
        "violation_certified": p.violation_certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{simplex, truncated_simplex3};
    use crate::measure::surface_area_measure;
    use crate::scalar::{int, rat};

    #[test]
    fn polytope_round_trip() {
        for p in [simplex(2), truncated_simplex3()] {
            let text = polytope_to_json(&p).to_string();
            assert_eq!(parse_polytope(&text).unwrap(), p);
        }
        let v = polytope_to_json(&truncated_simplex3());
        assert_eq!(v["vertices"][0][0], json!("0"));
        assert!(v.to_string().contains("\"3/2\""));
    }

    #[test]
    fn measure_round_trip() {
        let m = surface_area_measure(&simplex(3));
        assert_eq!(measure_from_json(&measure_to_json(&m)).unwrap(), m);
    }

    #[test]
    fn spec_round_trip() {
        let s = SupportSpec::from_entries(
            2,
            [(Direction::axis(2, 0), rat(1, 2)), (Direction::new(vec![-1, -1]).unwrap(), int(3))],
        )
        .unwrap();
        assert_eq!(spec_from_json(&spec_to_json(&s)).unwrap(), s);
    }

    #[test]
    fn malformed_inputs() {
        assert!(parse_polytope("{").is_err());
        assert!(parse_polytope(r#"{"n":2,"vertices":[["1","x"]]}"#).is_err());
        assert!(parse_polytope(r#"{"n":2,"vertices":[["1"]]}"#).is_err());
        assert!(parse_polytope(r#"{"vertices":[]}"#).is_err());
        assert!(spec_from_json(&json!({"n":2,"entries":[{"dir":[0,0],"value":"1"}]})).is_err());
    }
}
