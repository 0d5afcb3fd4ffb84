//! The JSON sextuple document `{"points": [[p, q] × 6], "field": {"d": n}}`.

use rico_core::geometry::ConicPoint;
use rico_core::{QuadExt, Rational};
use serde_json::{json, Map, Value};

use crate::error::CliError;
use crate::scalar_io::{parse_rational, point_json, CliScalar};

/// Six projective parameters, exact over ℚ or one ℚ(√d).
#[derive(Debug, Clone, PartialEq)]
pub struct SextupleDocument {
    pub points: Vec<ConicPoint<QuadExt>>,
    /// Present iff some coordinate is irrational.
    pub field: Option<i64>,
}

fn malformed(field: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Malformed(format!("{field}: {msg}"))
}

impl SextupleDocument {
    pub fn from_rational(points: &[ConicPoint<Rational>]) -> Self {
        let points = points.iter().map(|p| p.map(|x| QuadExt::from(x.clone()))).collect();
        SextupleDocument { points, field: None }
    }

    /// Infers the field label; fails if coordinates mix fields.
    pub fn from_quad(points: Vec<ConicPoint<QuadExt>>) -> Result<Self, CliError> {
        let mut field = None;
        for (i, p) in points.iter().enumerate() {
            for x in [p.p(), p.q()] {
                match (x.label(), field) {
                    (0, _) => {}
                    (d, None) => field = Some(d),
                    (d, Some(e)) if d != e => return Err(malformed(&format!("points[{i}]"), "coordinates from two fields")),
                    _ => {}
                }
            }
        }
        Ok(SextupleDocument { points, field })
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let v: Value = serde_json::from_str(text).map_err(|e| malformed("document", e))?;
        Self::from_json(&v)
    }

    pub fn from_json(v: &Value) -> Result<Self, CliError> {
        let obj = v.as_object().ok_or_else(|| malformed("document", "expected a JSON object"))?;
        let field = match obj.get("field") {
            None | Some(Value::Null) => None,
            Some(f) => Some(parse_field(f)?),
        };
        let pts = obj.get("points").ok_or_else(|| malformed("points", "missing"))?;
        let pts = pts.as_array().ok_or_else(|| malformed("points", "expected an array"))?;
        if pts.len() != 6 {
            return Err(malformed("points", format!("expected 6 entries, found {}", pts.len())));
        }
        let mut used_pair = false;
        let mut points = Vec::with_capacity(6);
        for (i, entry) in pts.iter().enumerate() {
            let name = format!("points[{i}]");
            let pq = entry
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| malformed(&name, "expected a pair [p, q]"))?;
            let mut coords = Vec::with_capacity(2);
            for (j, c) in pq.iter().enumerate() {
                let cname = format!("{name}[{j}]");
                let (x, pair) = parse_coord(c, field, &cname)?;
                used_pair |= pair;
                coords.push(x);
            }
            let q = coords.pop().expect("two coordinates");
            let p = coords.pop().expect("two coordinates");
            points.push(ConicPoint::new(p, q).map_err(|_| malformed(&name, "both coordinates are zero"))?);
        }
        if field.is_some() && !used_pair {
            return Err(malformed("field", "present but no coordinate is an [a, b] pair"));
        }
        Self::from_quad(points)
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("points".into(), Value::Array(self.points.iter().map(point_json).collect()));
        if let Some(d) = self.field {
            obj.insert("field".into(), json!({ "d": d }));
        }
        Value::Object(obj)
    }

    pub fn emit(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("JSON values serialize")
    }

    /// The points over ℚ when no coordinate is irrational.
    pub fn as_rational(&self) -> Option<Vec<ConicPoint<Rational>>> {
        if self.field.is_some() {
            return None;
        }
        self.points
            .iter()
            .map(|p| Some(ConicPoint::new(p.p().as_rational()?.clone(), p.q().as_rational()?.clone()).ok()?))
            .collect()
    }
}

fn parse_field(f: &Value) -> Result<i64, CliError> {
    let d = f
        .as_object()
        .ok_or_else(|| malformed("field", "expected an object {\"d\": integer}"))?
        .get("d")
        .ok_or_else(|| malformed("field.d", "missing"))?
        .as_i64()
        .ok_or_else(|| malformed("field.d", "expected an integer"))?;
    QuadExt::sqrt_of(d).map_err(|e| malformed("field.d", e))?;
    Ok(d)
}

/// A coordinate and whether it was written as a pair.
fn parse_coord(c: &Value, field: Option<i64>, name: &str) -> Result<(QuadExt, bool), CliError> {
    let scalar = |v: &Value, name: &str| -> Result<Rational, CliError> {
        let s = v.as_str().ok_or_else(|| malformed(name, "expected a string such as \"-95/31\""))?;
        parse_rational(s).map_err(|e| malformed(name, e))
    };
    match c {
        Value::Array(ab) if ab.len() == 2 => {
            let d = field.ok_or_else(|| malformed(name, "an [a, b] pair needs field.d"))?;
            let a = scalar(&ab[0], &format!("{name}[0]"))?;
            let b = scalar(&ab[1], &format!("{name}[1]"))?;
            Ok((QuadExt::new(a, b, d).map_err(|e| malformed(name, e))?, true))
        }
        Value::Array(_) => Err(malformed(name, "expected a string or an [a, b] pair")),
        v => Ok((QuadExt::from(scalar(v, name)?), false)),
    }
}

/// Shared JSON for a list of points over any printable field.
pub fn points_json<F: CliScalar>(points: &[ConicPoint<F>]) -> Value {
    Value::Array(points.iter().map(point_json).collect())
}
