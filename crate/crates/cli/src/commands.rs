//! Subcommands. Each returns the JSON report printed on stdout.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rico_core::degree::run_experiment;
use rico_core::geometry::{ConicPoint, Mobius};
use rico_core::invariants::{derive_u10, derive_u6, SixRecipe};
use rico_core::pascal::{all_pascals, build_ricochet, format_array, psi, verify_ricochet_theorem};
use rico_core::rico::{membership, Alignment};
use rico_core::shuffle::{dihedral_relations, shuffle_group, LetterPerm, ShuffleGroup};
use rico_core::{Letter, QuadExt, RatFunc, Rational};
use serde_json::{json, Map, Value};

use crate::document::{points_json, SextupleDocument};
use crate::error::CliError;
use crate::scalar_io::{parse_param, parse_quad, parse_rational, plane_json, point_json, CliScalar};
use crate::svg::{render, sextuple_scene};

#[derive(Debug, Parser)]
#[command(name = "rico", version, about = "Exact Pascal lines, ricochet sextuples and their invariants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the ricochet configuration from A, C, D, B (use `inf` for ∞).
    ConstructRico {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        c: String,
        #[arg(allow_hyphen_values = true)]
        d: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        /// Also write the report to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// All 60 Pascal lines of a sextuple and their coincidences.
    Pascals { input: PathBuf },
    /// Decide whether a sextuple is a ricochet sextuple, by alignment search and by invariants.
    Membership { input: PathBuf },
    /// I2, I4, I6, I10, U6 and U10 of the sextic with the given roots.
    Invariants { input: PathBuf },
    /// Count the ricochet sextuples through four points.
    Degree {
        #[arg(num_args = 4, required = true, allow_hyphen_values = true, value_names = ["Z1", "Z2", "Z3", "Z4"])]
        z: Vec<String>,
    },
    /// The shuffle group at a modulus, or over Q(t).
    Shuffle {
        /// A rational or a + b*sqrt(d).
        #[arg(long, allow_hyphen_values = true, conflicts_with = "symbolic")]
        t: Option<String>,
        #[arg(long)]
        symbolic: bool,
    },
    /// Draw a sextuple as SVG.
    Plot {
        input: PathBuf,
        output: PathBuf,
        /// Apply s -> (a s + b)/(c s + d) before drawing, given as "a,b,c,d".
        #[arg(long, allow_hyphen_values = true)]
        mobius: Option<String>,
    },
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

pub fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::ConstructRico { a, c, d, b, json } => {
            let report = construct_rico([a, c, d, b])?;
            let text = pretty(&report);
            if let Some(path) = json {
                write_file(path, &(text.clone() + "\n"))?;
            }
            Ok(text)
        }
        Command::Pascals { input } => with_points(&read_doc(input)?, PascalsCmd).map(|v| pretty(&v)),
        Command::Membership { input } => with_points(&read_doc(input)?, MembershipCmd).map(|v| pretty(&v)),
        Command::Invariants { input } => with_points(&read_doc(input)?, InvariantsCmd).map(|v| pretty(&v)),
        Command::Degree { z } => degree(z).map(|v| pretty(&v)),
        Command::Shuffle { t, symbolic } => shuffle(t.as_deref(), *symbolic).map(|v| pretty(&v)),
        Command::Plot { input, output, mobius } => {
            let doc = read_doc(input)?;
            if doc.field.is_some_and(|d| d < 0) {
                return Err(CliError::Degenerate("points over Q(sqrt d) with d < 0 are not real and cannot be drawn".into()));
            }
            let map = mobius.as_deref().map(parse_mobius).transpose()?;
            let svg = with_points(&doc, PlotCmd(map))?;
            write_file(output, &svg)?;
            Ok(pretty(&json!({ "svg": output.display().to_string(), "bytes": svg.len() })))
        }
    }
}

fn read_doc(path: &Path) -> Result<SextupleDocument, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))?;
    SextupleDocument::parse(&text)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))
}

/// A computation generic over the field of a document.
trait PointsCmd {
    type Out;
    fn call<F: CliScalar>(self, points: [ConicPoint<F>; 6]) -> Result<Self::Out, CliError>;
}

fn with_points<C: PointsCmd>(doc: &SextupleDocument, cmd: C) -> Result<C::Out, CliError> {
    let bad = || CliError::Malformed("points: expected 6 entries".into());
    match doc.as_rational() {
        Some(pts) => cmd.call::<Rational>(pts.try_into().map_err(|_| bad())?),
        None => cmd.call::<QuadExt>(doc.points.clone().try_into().map_err(|_| bad())?),
    }
}

struct PascalsCmd;

impl PointsCmd for PascalsCmd {
    type Out = Value;

    fn call<F: CliScalar>(self, points: [ConicPoint<F>; 6]) -> Result<Value, CliError> {
        let census = all_pascals(&points)?;
        let lines: Vec<Value> = census
            .entries
            .iter()
            .map(|e| {
                json!({
                    "array": format_array(&e.array),
                    "pole": plane_json(e.pascal.line.pole()),
                    "crosshairs": e.pascal.crosshairs.iter().map(plane_json).collect::<Vec<_>>(),
                })
            })
            .collect();
        let coincidences: Vec<Value> = census
            .classes
            .iter()
            .filter(|c| c.len() > 1)
            .map(|c| json!(c.iter().map(|&i| format_array(&census.entries[i].array)).collect::<Vec<_>>()))
            .collect();
        Ok(json!({
            "arrays": census.entries.len(),
            "distinct_lines": census.distinct_lines(),
            "coincidences": coincidences,
            "lines": lines,
        }))
    }
}

fn mobius_json<F: CliScalar>(m: &Mobius<F>) -> Value {
    Value::Array(m.entries().iter().map(CliScalar::to_json).collect())
}

fn alignment_json<F: CliScalar>(a: &Alignment<F>) -> Value {
    let labels: Map<String, Value> =
        Letter::ALL.iter().map(|l| (l.to_string(), json!(a.labels[l.index()]))).collect();
    json!({ "labels": labels, "t": a.t.to_json(), "witness": mobius_json(&a.witness) })
}

struct MembershipCmd;

impl PointsCmd for MembershipCmd {
    type Out = Value;

    fn call<F: CliScalar>(self, points: [ConicPoint<F>; 6]) -> Result<Value, CliError> {
        let r = membership(&points)?;
        if !r.agreement() {
            return Err(CliError::Violation(format!(
                "alignment search says {} but U6 = {}, U10 = {}",
                r.by_alignment, r.u6, r.u10
            )));
        }
        Ok(json!({
            "is_rico": r.is_rico(),
            "agreement": r.agreement(),
            "by_alignment": r.by_alignment,
            "by_invariants": r.by_invariants,
            "U6": r.u6.to_json(),
            "U10": r.u10.to_json(),
            "alignments": r.alignments.iter().map(alignment_json).collect::<Vec<_>>(),
        }))
    }
}

struct InvariantsCmd;

impl PointsCmd for InvariantsCmd {
    type Out = Value;

    fn call<F: CliScalar>(self, points: [ConicPoint<F>; 6]) -> Result<Value, CliError> {
        let r = membership(&points)?;
        let inv = &r.invariants;
        Ok(json!({
            "recipe": inv.recipe.describe(),
            "I2": inv.i2.to_json(),
            "I4": inv.i4.to_json(),
            "I6": inv.i6.to_json(),
            "I10": inv.i10.to_json(),
            "U6": r.u6.to_json(),
            "U10": r.u10.to_json(),
            "U6_coefficients": derive_u6(SixRecipe::Nested)?.to_string(),
            "U10_coefficients": derive_u10(SixRecipe::Nested)?.to_string(),
        }))
    }
}

struct PlotCmd(Option<[Rational; 4]>);

impl PointsCmd for PlotCmd {
    type Out = String;

    fn call<F: CliScalar>(self, points: [ConicPoint<F>; 6]) -> Result<String, CliError> {
        let points = match self.0 {
            Some(m) => {
                let [a, b, c, d] = m.map(|x| F::from_rational(&x));
                let m = Mobius::new(a, b, c, d).map_err(|e| CliError::Malformed(format!("--mobius: {e}")))?;
                points.map(|p| m.apply(&p))
            }
            None => points,
        };
        Ok(render(&sextuple_scene(&points)?))
    }
}

fn parse_mobius(s: &str) -> Result<[Rational; 4], CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    let bad = |m: String| CliError::Malformed(format!("--mobius: {m}"));
    if parts.len() != 4 {
        return Err(bad(format!("expected four entries a,b,c,d, found {}", parts.len())));
    }
    let mut out = Vec::with_capacity(4);
    for p in parts {
        out.push(parse_rational(p).map_err(bad)?);
    }
    Ok(out.try_into().expect("four entries"))
}

fn params<const N: usize>(args: [&String; N]) -> Result<[ConicPoint<Rational>; N], CliError> {
    let mut out = Vec::with_capacity(N);
    for (i, s) in args.iter().enumerate() {
        out.push(parse_param(s).map_err(|e| CliError::Malformed(format!("argument {}: {e}", i + 1)))?);
    }
    Ok(out.try_into().expect("N parameters"))
}

fn construct_rico(args: [&String; 4]) -> Result<Value, CliError> {
    let [a, c, d, b] = params(args)?;
    let cfg = build_ricochet(&a, &c, &d, &b)?;
    let report = verify_ricochet_theorem(&cfg)?;
    let psi = psi(&cfg)?;
    Ok(json!({
        "letters": Letter::ALL.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
        "points": points_json(&cfg.points),
        "t": cfg.t.to_json(),
        "Z": point_json(&cfg.z),
        "U": plane_json(&cfg.u),
        "V": plane_json(&cfg.v),
        "W": plane_json(&cfg.w),
        "p_line": plane_json(cfg.pline.pole()),
        "pascals": [
            { "array": format_array(&rico_core::pascal::ricochet_arrays()[0]), "pole": plane_json(report.first.line.pole()) },
            { "array": format_array(&rico_core::pascal::ricochet_arrays()[1]), "pole": plane_json(report.second.line.pole()) },
        ],
        "psi": mobius_json(&psi),
    }))
}

fn degree(z: &[String]) -> Result<Value, CliError> {
    let refs: [&String; 4] = [&z[0], &z[1], &z[2], &z[3]];
    let zs = params(refs)?;
    let r = run_experiment(&zs)?;
    if r.distinct() != 60 {
        return Err(CliError::Violation(format!("found {} sextuples instead of 60", r.distinct())));
    }
    let configurations: Vec<Value> = r
        .configurations
        .iter()
        .map(|c| {
            let pts: Vec<Value> = c
                .key
                .coords
                .iter()
                .map(|x| match x {
                    Some(x) => point_json(&ConicPoint::finite(x.clone())),
                    None => point_json(&ConicPoint::<QuadExt>::infinity()),
                })
                .collect();
            let mut doc = json!({ "type": c.kind, "hits": c.hits, "points": pts });
            if c.key.label != 0 {
                doc["field"] = json!({ "d": c.key.label });
            }
            doc
        })
        .collect();
    let orbit_sizes: Map<String, Value> = r.orbit_sizes.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    let quadratics: Vec<Value> = r
        .quadratics
        .iter()
        .map(|(a, q)| {
            json!({
                "assignment": a.to_string(),
                "letter": q.letter.to_string(),
                "coefficients": q.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(json!({
        "quadruple": points_json(&zs),
        "assignments": { "type2": r.tally.0, "type3": r.tally.1, "type4": r.tally.2 },
        "extensions": { "type2": r.extensions.0, "type3": r.extensions.1, "type4": r.extensions.2 },
        "distinct_configurations": r.distinct(),
        "from_type2": r.distinct_of_type(2),
        "from_type3": r.distinct_of_type(3),
        "orbit_sizes": orbit_sizes,
        "quadratics": quadratics,
        "configurations": configurations,
    }))
}

fn group_json(t: Value, g: &ShuffleGroup) -> Value {
    let (u, v) = (LetterPerm::u(), LetterPerm::v());
    json!({
        "t": t,
        "order": g.order(),
        "elements": g.elements.iter().map(|z| z.to_string()).collect::<Vec<_>>(),
        "closed": g.is_closed(),
        "contains_u": g.contains(&u),
        "contains_v": g.contains(&v),
        "equals_generated_by_u_v": g.elements == ShuffleGroup::generated_by(&[u, v]),
        "dihedral_relations": dihedral_relations(&u, &v),
    })
}

fn shuffle(t: Option<&str>, symbolic: bool) -> Result<Value, CliError> {
    match t {
        Some(t) if !symbolic => {
            let t = parse_quad(t).map_err(|e| CliError::Malformed(format!("--t: {e}")))?;
            match t.as_rational() {
                Some(r) => Ok(group_json(r.to_json(), &shuffle_group(r)?)),
                None => Ok(group_json(t.to_json(), &shuffle_group(&t)?)),
            }
        }
        _ => Ok(group_json(json!("t"), &shuffle_group(&RatFunc::t())?)),
    }
}
