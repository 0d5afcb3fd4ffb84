//! Text and JSON forms of exact scalars.

use rico_core::geometry::{ConicPoint, PlanePoint};
use rico_core::{Field, QuadExt, RatFunc, Rational, Ring};
use serde_json::{json, Value};

/// Scalars the CLI can print as JSON and, when real, draw.
pub trait CliScalar: Field {
    fn to_json(&self) -> Value;
    fn to_real(&self) -> Option<f64>;
}

impl CliScalar for Rational {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn to_real(&self) -> Option<f64> {
        Some(self.to_f64())
    }
}

impl CliScalar for QuadExt {
    /// A rational prints as a string, `a + b√d` as the pair `[a, b]`.
    fn to_json(&self) -> Value {
        match self.as_rational() {
            Some(r) => r.to_json(),
            None => json!([self.a().to_string(), self.b().to_string()]),
        }
    }

    fn to_real(&self) -> Option<f64> {
        self.to_f64()
    }
}

impl CliScalar for RatFunc {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn to_real(&self) -> Option<f64> {
        None
    }
}

/// `[s, 1]` for a finite parameter `s`, `[1, 0]` for ∞.
pub fn point_json<F: CliScalar>(p: &ConicPoint<F>) -> Value {
    let p = p.normalized();
    json!([p.p().to_json(), p.q().to_json()])
}

pub fn plane_json<F: CliScalar>(p: &PlanePoint<F>) -> Value {
    Value::Array(p.normalized().iter().map(CliScalar::to_json).collect())
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse().map_err(|_| format!("{s:?} is not an integer or fraction"))
}

/// A projective parameter: a rational or `inf`.
pub fn parse_param(s: &str) -> Result<ConicPoint<Rational>, String> {
    match s.trim() {
        "inf" | "∞" => Ok(ConicPoint::infinity()),
        t => parse_rational(t).map(ConicPoint::finite),
    }
}

/// `a`, `sqrt(d)`, `b*sqrt(d)` or `a + b*sqrt(d)` (spaces optional).
pub fn parse_quad(s: &str) -> Result<QuadExt, String> {
    let bad = || format!("{s:?} is not of the form a + b*sqrt(d)");
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(head) = compact.strip_suffix(')') else {
        return parse_rational(&compact).map(QuadExt::from);
    };
    let (head, d) = head.rsplit_once("sqrt(").ok_or_else(bad)?;
    let d: i64 = d.parse().map_err(|_| bad())?;
    let head = head.strip_suffix('*').unwrap_or(head);
    // split a from the coefficient of the root at the last sign not
    // opening the string
    let split = head.char_indices().filter(|&(i, c)| i > 0 && (c == '+' || c == '-')).map(|(i, _)| i).last();
    let (a, b) = match split {
        Some(i) => (&head[..i], &head[i..]),
        None => ("", head),
    };
    let a = if a.is_empty() { Rational::zero() } else { parse_rational(a)? };
    let b = match b {
        "" | "+" => Rational::one(),
        "-" => -Rational::one(),
        b => parse_rational(b.strip_prefix('+').unwrap_or(b))?,
    };
    let root = QuadExt::sqrt(&Rational::from(d));
    let b = QuadExt::from(b) * root;
    Ok(QuadExt::from(a) + b)
}
