//! Farey tessellation picture in the disc model.

use std::fmt::Write;

use magic_core::slope::Slope;

const SIZE: f64 = 400.0;
const RADIUS: f64 = 170.0;

/// Position of p/q on the unit circle: 0 at the bottom, ∞ at the top, 1 on the right.
pub fn disc_point(s: Slope) -> (f64, f64) {
    if s.is_inf() {
        return (0.0, 1.0);
    }
    let x = s.p() as f64 / s.q() as f64;
    let d = x * x + 1.0;
    (2.0 * x / d, (x * x - 1.0) / d)
}

/// Pairs at distance one, in input order.
pub fn farey_edges(slopes: &[Slope]) -> Vec<(Slope, Slope)> {
    let mut out = vec![];
    for (i, a) in slopes.iter().enumerate() {
        for b in &slopes[i + 1..] {
            if a.distance(*b) == 1 {
                out.push((*a, *b));
            }
        }
    }
    out
}

fn screen((x, y): (f64, f64)) -> (f64, f64) {
    (SIZE / 2.0 + RADIUS * x, SIZE / 2.0 - RADIUS * y)
}

/// SVG path of the geodesic between two boundary points.
fn geodesic(a: (f64, f64), b: (f64, f64)) -> String {
    let (sa, sb) = (screen(a), screen(b));
    let dot = a.0 * b.0 + a.1 * b.1;
    if (1.0 + dot).abs() < 1e-12 {
        return format!("M {:.3} {:.3} L {:.3} {:.3}", sa.0, sa.1, sb.0, sb.1);
    }
    // The orthogonal circle is centred at (a+b)/(1+a·b).
    let c = ((a.0 + b.0) / (1.0 + dot), (a.1 + b.1) / (1.0 + dot));
    let r = ((a.0 - c.0).powi(2) + (a.1 - c.1).powi(2)).sqrt() * RADIUS;
    let sc = screen(c);
    let cross = (sa.0 - sc.0) * (sb.1 - sc.1) - (sa.1 - sc.1) * (sb.0 - sc.0);
    let sweep = if cross > 0.0 { 1 } else { 0 };
    format!("M {:.3} {:.3} A {:.3} {:.3} 0 0 {} {:.3} {:.3}", sa.0, sa.1, r, r, sweep, sb.0, sb.1)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// An SVG 1.1 document with the boundary circle, one labelled dot per slope and a
/// geodesic for each pair at distance one.
pub fn farey_svg(points: &[(Slope, String)]) -> String {
    let slopes: Vec<Slope> = points.iter().map(|(s, _)| *s).collect();
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(
        out,
        r#"<circle cx="{}" cy="{}" r="{RADIUS}" fill="none" stroke="black"/>"#,
        SIZE / 2.0,
        SIZE / 2.0
    );
    for (a, b) in farey_edges(&slopes) {
        let _ = writeln!(
            out,
            r#"<path class="edge" data-from="{a}" data-to="{b}" d="{}" fill="none" stroke="gray"/>"#,
            geodesic(disc_point(a), disc_point(b))
        );
    }
    for (s, label) in points {
        let (x, y) = screen(disc_point(*s));
        let (lx, ly) = screen({
            let (u, v) = disc_point(*s);
            (u * 1.12, v * 1.12)
        });
        let _ = writeln!(out, r#"<circle class="slope" data-slope="{s}" cx="{x:.3}" cy="{y:.3}" r="3"/>"#);
        let text = if label.is_empty() { s.to_string() } else { format!("{s}: {label}") };
        let _ = writeln!(
            out,
            r#"<text x="{lx:.3}" y="{ly:.3}" font-size="10" text-anchor="middle">{}</text>"#,
            escape(&text)
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_on_circle() {
        for s in [Slope::INF, Slope::int(0), Slope::int(1), Slope::frac(-5, 2)] {
            let (x, y) = disc_point(s);
            assert!((x * x + y * y - 1.0).abs() < 1e-12);
        }
        assert_eq!(disc_point(Slope::int(1)), (1.0, 0.0));
    }

    #[test]
    fn edges_and_empty() {
        let s = [Slope::INF, Slope::int(0), Slope::frac(1, 2)];
        assert_eq!(farey_edges(&s), [(Slope::INF, Slope::int(0)), (Slope::int(0), Slope::frac(1, 2))]);
        let doc = farey_svg(&[]);
        assert!(doc.contains("<svg") && !doc.contains("class=\"slope\""));
    }
}
