//! SVG scenes on the unit-circle chart `(x, y) = (a1, a0 - a2) / (a0 + a2)`.
//!
//! Positions and incidences are computed exactly; floats appear only when
//! the scene is written out.

use std::fmt::Write;

use rico_core::geometry::{incident, veronese, ConicPoint, LineByPole, PlanePoint};
use rico_core::pascal::{build_ricochet, pascal, SexArray};
use rico_core::Letter;

use crate::error::CliError;
use crate::scalar_io::CliScalar;

const SIZE: f64 = 800.0;
/// Half-width of the visible window in chart units.
const WINDOW: f64 = 3.0;

#[derive(Debug, Clone, PartialEq)]
pub struct Marker {
    pub label: String,
    pub x: f64,
    pub y: f64,
    pub class: &'static str,
}

/// `a x + b y + c = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Line {
    pub coeffs: [f64; 3],
    pub class: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub from: (f64, f64),
    pub to: (f64, f64),
    pub class: &'static str,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Scene {
    pub caption: String,
    pub markers: Vec<Marker>,
    pub lines: Vec<Line>,
    pub segments: Vec<Segment>,
}

/// Exact chart coordinates of a plane point.
pub fn chart<F: CliScalar>(p: &PlanePoint<F>) -> Option<(F, F)> {
    let w = p.a(0).clone() + p.a(2).clone();
    let inv = w.inv().ok()?;
    Some((p.a(1).clone() * inv.clone(), (p.a(0).clone() - p.a(2).clone()) * inv))
}

/// Exact chart equation `(a, b, c)` of the line with the given pole.
pub fn chart_line<F: CliScalar>(l: &LineByPole<F>) -> [F; 3] {
    let b = l.pole();
    [-b.a(1).clone(), b.a(2).clone() - b.a(0).clone(), b.a(0).clone() + b.a(2).clone()]
}

fn real<F: CliScalar>(x: &F, what: &str) -> Result<f64, CliError> {
    x.to_real().ok_or_else(|| CliError::Degenerate(format!("{what} is not a real point and cannot be drawn")))
}

struct Builder<F: CliScalar> {
    scene: Scene,
    _field: std::marker::PhantomData<F>,
}

impl<F: CliScalar> Builder<F> {
    fn place(&mut self, p: &PlanePoint<F>, label: &str) -> Result<(f64, f64), CliError> {
        let (x, y) = chart(p).ok_or_else(|| {
            CliError::Degenerate(format!(
                "point {label} has a0 + a2 = 0 and sits on the chart boundary; apply a Mobius map to move it"
            ))
        })?;
        Ok((real(&x, label)?, real(&y, label)?))
    }

    fn marker(&mut self, p: &PlanePoint<F>, label: &str, class: &'static str) -> Result<(f64, f64), CliError> {
        let (x, y) = self.place(p, label)?;
        self.scene.markers.push(Marker { label: label.to_string(), x, y, class });
        Ok((x, y))
    }

    /// Draws `l` after checking exactly that it passes through `through`.
    fn line(&mut self, l: &LineByPole<F>, through: &[&PlanePoint<F>], class: &'static str) -> Result<(), CliError> {
        let eq = chart_line(l);
        for p in through {
            let value = eq[0].clone() * p.a(1).clone()
                + eq[1].clone() * (p.a(0).clone() - p.a(2).clone())
                + eq[2].clone() * (p.a(0).clone() + p.a(2).clone());
            if !incident(p, l) || !value.is_zero() {
                return Err(CliError::Violation(format!("drawn {class} line misses a point it should contain")));
            }
        }
        let coeffs = [real(&eq[0], "line")?, real(&eq[1], "line")?, real(&eq[2], "line")?];
        if eq[0].is_zero() && eq[1].is_zero() {
            return Ok(());
        }
        self.scene.lines.push(Line { coeffs, class });
        Ok(())
    }

    fn segment(&mut self, a: (f64, f64), b: (f64, f64), class: &'static str) {
        self.scene.segments.push(Segment { from: a, to: b, class });
    }
}

/// Scene for six points labelled `A..F`: the hexagon chords and Pascal line
/// of `[[A, B, C], [F, E, D]]`, plus `V, W, U, Z`, the tangents at `A, C`
/// and the path `B → Z → E` when the points form a ricochet configuration
/// in this labelling.
pub fn sextuple_scene<F: CliScalar>(points: &[ConicPoint<F>; 6]) -> Result<Scene, CliError> {
    use Letter as L;
    let mut b = Builder::<F> { scene: Scene::default(), _field: std::marker::PhantomData };
    let plane: Vec<PlanePoint<F>> = points.iter().map(veronese).collect();
    let mut pos = Vec::with_capacity(6);
    for (l, p) in Letter::ALL.iter().zip(&plane) {
        pos.push(b.marker(p, &l.to_string(), "point")?);
    }
    let at = |l: L| l.index();
    let arr = SexArray::new(
        [L::A, L::B, L::C].map(|l| points[at(l)].clone()),
        [L::F, L::E, L::D].map(|l| points[at(l)].clone()),
    )?;
    let pl = pascal(&arr)?;
    for (x, y) in [(L::A, L::E), (L::B, L::F), (L::B, L::D), (L::C, L::E), (L::A, L::D), (L::C, L::F)] {
        b.segment(pos[at(x)], pos[at(y)], "chord");
    }
    // cross-hairs are auxiliary: one on the chart boundary is left out and
    // named in the caption instead of failing the whole scene
    let mut hidden = Vec::new();
    for (k, h) in pl.crosshairs.iter().enumerate() {
        let label = format!("X{}", k + 1);
        if chart(h).is_some() {
            b.marker(h, &label, "crosshair")?;
        } else {
            hidden.push(label);
        }
    }
    b.line(&pl.line, &pl.crosshairs.iter().collect::<Vec<_>>(), "pascal")?;

    let rico = build_ricochet(&points[at(L::A)], &points[at(L::C)], &points[at(L::D)], &points[at(L::B)])
        .ok()
        .filter(|cfg| cfg.points == *points);
    match rico {
        Some(cfg) => {
            b.scene.caption = format!("ricochet configuration, t = {}", cfg.t);
            b.marker(&cfg.v, "V", "aux")?;
            b.marker(&cfg.w, "W", "aux")?;
            b.marker(&cfg.u, "U", "aux")?;
            let z = veronese(&cfg.z);
            let zp = b.marker(&z, "Z", "aux")?;
            b.line(&LineByPole::tangent(&points[at(L::A)]), &[&plane[at(L::A)], &cfg.v], "tangent")?;
            b.line(&LineByPole::tangent(&points[at(L::C)]), &[&plane[at(L::C)], &cfg.v], "tangent")?;
            b.line(&cfg.pline, &[&cfg.v, &cfg.w, &cfg.u], "pline")?;
            b.segment(pos[at(L::B)], zp, "path");
            b.segment(zp, pos[at(L::E)], "path");
        }
        None => b.scene.caption = "Pascal line of A,B,C;F,E,D".to_string(),
    }
    if !hidden.is_empty() {
        let _ = write!(b.scene.caption, " ({} at infinity)", hidden.join(", "));
    }
    Ok(b.scene)
}

fn px(x: f64) -> f64 {
    SIZE / 2.0 + x * SIZE / (2.0 * WINDOW)
}

fn py(y: f64) -> f64 {
    SIZE / 2.0 - y * SIZE / (2.0 * WINDOW)
}

/// Fixed six-decimal formatting, without negative zero.
fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

/// Endpoints of `a x + b y + c = 0` inside the window, if it crosses it.
fn clip(l: &Line) -> Option<((f64, f64), (f64, f64))> {
    let [a, b, c] = l.coeffs;
    let w = WINDOW;
    let mut hits: Vec<(f64, f64)> = Vec::new();
    if b != 0.0 {
        for x in [-w, w] {
            let y = -(a * x + c) / b;
            if (-w..=w).contains(&y) {
                hits.push((x, y));
            }
        }
    }
    if a != 0.0 {
        for y in [-w, w] {
            let x = -(b * y + c) / a;
            if (-w..=w).contains(&x) {
                hits.push((x, y));
            }
        }
    }
    hits.sort_by(|p, q| p.partial_cmp(q).expect("finite"));
    hits.dedup();
    Some((*hits.first()?, *hits.last()?)).filter(|(p, q)| p != q)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn render(scene: &Scene) -> String {
    let mut out = String::new();
    let s = num(SIZE);
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#
    );
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{s}" height="{s}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<circle class="conic" cx="{}" cy="{}" r="{}" fill="none" stroke="black" stroke-width="1.5"/>"#,
        num(px(0.0)),
        num(py(0.0)),
        num(SIZE / (2.0 * WINDOW))
    );
    for seg in &scene.segments {
        let (dash, color) = if seg.class == "path" { ("", "darkred") } else { (r#" stroke-dasharray="4 3""#, "gray") };
        let _ = writeln!(
            out,
            r#"<line class="{}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}"{dash}/>"#,
            seg.class,
            num(px(seg.from.0)),
            num(py(seg.from.1)),
            num(px(seg.to.0)),
            num(py(seg.to.1))
        );
    }
    for line in &scene.lines {
        let Some((p, q)) = clip(line) else { continue };
        let color = match line.class {
            "pascal" | "pline" => "blue",
            _ => "green",
        };
        let _ = writeln!(
            out,
            r#"<line class="{}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}" stroke-width="1.5"/>"#,
            line.class,
            num(px(p.0)),
            num(py(p.1)),
            num(px(q.0)),
            num(py(q.1))
        );
    }
    for m in &scene.markers {
        let (cx, cy) = (px(m.x), py(m.y));
        let fill = match m.class {
            "point" => "black",
            "crosshair" => "blue",
            _ => "darkred",
        };
        let _ = writeln!(
            out,
            r#"<circle class="{}" cx="{}" cy="{}" r="4" fill="{fill}"/>"#,
            m.class,
            num(cx),
            num(cy)
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="14">{}</text>"#,
            num(cx + 6.0),
            num(cy - 6.0),
            escape(&m.label)
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="10" y="{}" font-family="sans-serif" font-size="14">{}</text>"#,
        num(SIZE - 12.0),
        escape(&scene.caption)
    );
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rico_core::geometry::PlanePoint;
    use rico_core::rico::sigma_sextuple;
    use rico_core::Rational;

    #[test]
    fn veronese_of_zero_is_the_top_of_the_circle() {
        let p = veronese(&ConicPoint::finite(Rational::from(0)));
        assert_eq!(chart(&p), Some((Rational::from(0), Rational::from(1))));
    }

    #[test]
    fn chart_boundary_is_reported() {
        let p = PlanePoint::from_coeffs(Rational::from(1), Rational::from(0), Rational::from(-1)).unwrap();
        assert!(chart(&p).is_none());
    }

    #[test]
    fn conic_points_land_on_the_unit_circle() {
        for s in [0, 1, -3, 7] {
            let (x, y) = chart(&veronese(&ConicPoint::finite(Rational::from(s)))).unwrap();
            assert_eq!(x.clone() * x + y.clone() * y, Rational::from(1));
        }
    }

    #[test]
    fn sigma_four_needs_a_moved_chart() {
        // A = 0 and C = ∞ are antipodal, so the tangents meet at infinity
        let pts = sigma_sextuple(&Rational::from(4)).unwrap();
        assert!(matches!(sextuple_scene(&pts), Err(CliError::Degenerate(m)) if m.contains("point V")));
    }

    #[test]
    fn ricochet_scene_at_t_four() {
        // the image of Σ(4) under s ↦ (2s - 1)/(s + 3)
        let m = rico_core::Mobius::from_i64(2, -1, 1, 3).unwrap();
        let pts = sigma_sextuple(&Rational::from(4)).unwrap().map(|p| m.apply(&p));
        let scene = sextuple_scene(&pts).unwrap();
        assert!(scene.caption.contains("t = 4"));
        let labels: Vec<&str> = scene.markers.iter().map(|m| m.label.as_str()).collect();
        for l in ["A", "F", "V", "W", "U", "Z"] {
            assert!(labels.contains(&l));
        }
        assert!(scene.lines.iter().any(|l| l.class == "pline"));
        assert_eq!(render(&scene), render(&sextuple_scene(&pts).unwrap()));
    }
}
