//! Static SVG diagrams of lattice codes.

use std::fmt::Write;

use crate::code::SubsystemCode;
use crate::error::{Result, SlsError};
use crate::pauli::{Pauli, PauliOperator};

const CELL: f64 = 60.0;
const MARGIN: f64 = 40.0;

/// Extra highlights drawn on top of the code.
#[derive(Clone, Debug, Default)]
pub struct RenderOptions {
    pub ancillas: Vec<usize>,
    pub logicals: Vec<PauliOperator>,
    pub title: Option<String>,
}

/// CSS class and colour by Pauli type: pure X, pure Z, or mixed.
fn style(p: &PauliOperator) -> (&'static str, &'static str) {
    if p.is_pure(Pauli::X) {
        ("x", "#e4572e")
    } else if p.is_pure(Pauli::Z) {
        ("z", "#2e86de")
    } else {
        ("mixed", "#44af69")
    }
}

fn point(rc: (usize, usize)) -> (f64, f64) {
    (
        MARGIN + (rc.1 - 1) as f64 * CELL,
        MARGIN + (rc.0 - 1) as f64 * CELL,
    )
}

fn cross(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Convex hull, counterclockwise, by monotone chain.
fn hull(mut pts: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut h: Vec<(f64, f64)> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = h.len();
        for &p in &pts {
            while h.len() >= start + 2 && cross(h[h.len() - 2], h[h.len() - 1], p) <= 0.0 {
                h.pop();
            }
            h.push(p);
        }
        h.pop();
        if pass == 0 {
            pts.reverse();
        }
    }
    h
}

/// Render qubits at `coords` with one shape per generator.
pub fn render_lattice(
    coords: &[(usize, usize)],
    generators: &[PauliOperator],
    opts: &RenderOptions,
) -> Result<String> {
    if let Some(&(r, c)) = coords.iter().find(|&&(r, c)| r == 0 || c == 0) {
        return Err(SlsError::Format(format!(
            "coordinate ({r}, {c}) is not 1-based"
        )));
    }
    if let Some(g) = generators
        .iter()
        .chain(&opts.logicals)
        .find(|g| g.n() != coords.len())
    {
        return Err(SlsError::Dimension {
            expected: coords.len(),
            found: g.n(),
        });
    }
    let rows = coords.iter().map(|c| c.0).max().unwrap_or(1);
    let cols = coords.iter().map(|c| c.1).max().unwrap_or(1);
    let w = 2.0 * MARGIN + (cols - 1) as f64 * CELL;
    let h = 2.0 * MARGIN + (rows - 1) as f64 * CELL;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    if let Some(t) = &opts.title {
        let t = t
            .replace('&', "&amp;")
            .replace('<', "&lt;")
            .replace('>', "&gt;");
        let _ = writeln!(s, "<title>{t}</title>");
    }
    let _ = writeln!(
        s,
        r##"<rect class="frame" x="0" y="0" width="{w}" height="{h}" fill="white" stroke="#999"/>"##
    );

    // larger shapes first so small ones stay visible
    let mut order: Vec<usize> = (0..generators.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(generators[i].weight()));
    let _ = writeln!(
        s,
        r#"<g class="generators" fill-opacity="0.35" stroke-width="3">"#
    );
    for i in order {
        let g = &generators[i];
        let pts = hull(g.support().into_iter().map(|q| point(coords[q])).collect());
        let (class, color) = style(g);
        match pts.len() {
            0 => {}
            1 => {
                let _ = writeln!(
                    s,
                    r#"<circle class="gen-{class}" cx="{}" cy="{}" r="14" fill="{color}"/>"#,
                    pts[0].0, pts[0].1
                );
            }
            2 => {
                let _ = writeln!(
                    s,
                    r#"<line class="gen-{class}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}" stroke-width="12" stroke-opacity="0.5" stroke-linecap="round"/>"#,
                    pts[0].0, pts[0].1, pts[1].0, pts[1].1
                );
            }
            _ => {
                let list: Vec<String> = pts.iter().map(|p| format!("{},{}", p.0, p.1)).collect();
                let _ = writeln!(
                    s,
                    r#"<polygon class="gen-{class}" points="{}" fill="{color}" stroke="{color}"/>"#,
                    list.join(" ")
                );
            }
        }
    }
    let _ = writeln!(s, "</g>");

    for l in &opts.logicals {
        let pts: Vec<String> = l
            .support()
            .into_iter()
            .map(|q| point(coords[q]))
            .map(|p| format!("{},{}", p.0, p.1))
            .collect();
        let _ = writeln!(
            s,
            r##"<polyline class="logical" points="{}" fill="none" stroke="#222" stroke-width="2" stroke-dasharray="6 4"/>"##,
            pts.join(" ")
        );
    }

    let _ = writeln!(s, r#"<g class="qubits">"#);
    for (q, &rc) in coords.iter().enumerate() {
        let (x, y) = point(rc);
        let (class, color, r) = if opts.ancillas.contains(&q) {
            ("ancilla", "#d03fd0", 9)
        } else {
            ("qubit", "#222", 6)
        };
        let _ = writeln!(
            s,
            r#"<circle class="{class}" cx="{x}" cy="{y}" r="{r}" fill="{color}"/>"#
        );
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    Ok(s)
}

/// Render a code that carries geometry.
pub fn render_code(code: &SubsystemCode, opts: &RenderOptions) -> Result<String> {
    let lat = code.geometry().ok_or(SlsError::MissingGeometry)?;
    render_lattice(lat.coords(), code.gauge_generators(), opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::subsystem_surface_code;

    #[test]
    fn ssc_has_dots_triangles_and_pairs() {
        let svg = render_code(
            &subsystem_surface_code(3).unwrap(),
            &RenderOptions::default(),
        )
        .unwrap();
        assert_eq!(svg.matches(r#"class="qubit""#).count(), 8);
        assert_eq!(svg.matches("<polygon").count(), 4);
        assert_eq!(svg.matches("<line").count(), 4);
    }

    #[test]
    fn empty_lattice_is_a_frame() {
        let svg = render_lattice(&[], &[], &RenderOptions::default()).unwrap();
        assert!(svg.contains(r#"class="frame""#));
        assert!(!svg.contains("<circle"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn needs_geometry() {
        let c = SubsystemCode::new("t", 1, vec!["Z".parse().unwrap()]).unwrap();
        assert_eq!(
            render_code(&c, &RenderOptions::default()),
            Err(SlsError::MissingGeometry)
        );
    }
}
