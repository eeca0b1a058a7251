//! SVG schematics: chord systems and Gauss diagrams drawn on a circle.

use std::f64::consts::PI;
use std::fmt::Write;

use unknot::diagram::ShadowDiagram;
use unknot::dissect::ChordSystem;
use unknot::Result;

const SIZE: f64 = 240.0;
const CENTER: f64 = 120.0;
const RADIUS: f64 = 100.0;

const PALETTE: [&str; 8] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"];

/// Point `i` of `n` sits halfway between gaps `i` and `i + 1`, so gap `g`
/// is at angle `2 pi g / n`, measured counterclockwise from the top.
fn at(slot: f64, n: usize, r: f64) -> (f64, f64) {
    let a = 2.0 * PI * slot / n.max(1) as f64;
    (CENTER - r * a.sin(), CENTER - r * a.cos())
}

fn header(out: &mut String) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(
        out,
        r#"<circle cx="{CENTER}" cy="{CENTER}" r="{RADIUS}" fill="none" stroke="black" stroke-width="1.5"/>"#
    );
}

fn basepoint(out: &mut String, gap: usize, n: usize) {
    let (x, y) = at(gap as f64, n, RADIUS + 10.0);
    let _ = writeln!(out, r#"<text x="{x:.2}" y="{y:.2}" font-size="14" text-anchor="middle" dominant-baseline="middle">*</text>"#);
}

/// Chord drawn as a quadratic curve pulled towards the centre.
fn chord(out: &mut String, a: usize, b: usize, n: usize, color: &str) {
    let (x1, y1) = at(a as f64 + 0.5, n, RADIUS);
    let (x2, y2) = at(b as f64 + 0.5, n, RADIUS);
    let (mx, my) = ((x1 + x2) / 2.0, (y1 + y2) / 2.0);
    let (cx, cy) = (mx + 0.5 * (CENTER - mx), my + 0.5 * (CENTER - my));
    let _ = writeln!(
        out,
        r#"<path d="M {x1:.2} {y1:.2} Q {cx:.2} {cy:.2} {x2:.2} {y2:.2}" fill="none" stroke="{color}" stroke-width="2"/>"#
    );
}

fn dot(out: &mut String, p: usize, n: usize, label: &str) {
    let (x, y) = at(p as f64 + 0.5, n, RADIUS);
    let (tx, ty) = at(p as f64 + 0.5, n, RADIUS + 10.0);
    let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="2.5" fill="black"/>"#);
    let _ = writeln!(out, r#"<text x="{tx:.2}" y="{ty:.2}" font-size="9" text-anchor="middle" dominant-baseline="middle">{label}</text>"#);
}

/// Disk with its chords; partners share a colour.
pub fn render_chords(system: &ChordSystem) -> Result<String> {
    let system = system.clone().checked()?;
    let n = system.points;
    let mut out = String::new();
    header(&mut out);
    for (k, pair) in system.pairs.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        for &c in pair {
            let [a, b] = system.chords[c];
            chord(&mut out, a, b, n, color);
        }
    }
    for p in 0..n {
        dot(&mut out, p, n, &p.to_string());
    }
    basepoint(&mut out, system.basepoint, n);
    out.push_str("</svg>\n");
    Ok(out)
}

/// Gauss diagram: word positions around the circle, one chord per crossing.
pub fn render_shadow(shadow: &ShadowDiagram) -> String {
    let n = shadow.len();
    let mut out = String::new();
    header(&mut out);
    for (k, c) in shadow.crossings().iter().enumerate() {
        chord(&mut out, c.first, c.second, n, PALETTE[k % PALETTE.len()]);
    }
    for (p, label) in shadow.word.iter().enumerate() {
        dot(&mut out, p, n, label);
    }
    basepoint(&mut out, shadow.basepoint, n);
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_disk_has_only_the_basepoint() {
        let svg = render_chords(&ChordSystem::empty()).unwrap();
        assert!(!svg.contains("<path"));
        assert!(svg.contains(">*</text>"));
    }

    #[test]
    fn one_pair_uses_one_colour() {
        let s = ChordSystem { points: 4, basepoint: 0, chords: vec![[0, 1], [3, 2]], pairs: vec![[0, 1]] };
        let svg = render_chords(&s).unwrap();
        assert_eq!(svg.matches("<path").count(), 2);
        assert_eq!(svg.matches(PALETTE[0]).count(), 2);
        assert_eq!(svg, render_chords(&s).unwrap());
    }

    #[test]
    fn interleaving_chords_are_refused() {
        let s = ChordSystem { points: 4, basepoint: 0, chords: vec![[0, 2], [1, 3]], pairs: vec![[0, 1]] };
        assert_eq!(render_chords(&s).unwrap_err().name(), "InvalidChordSystem");
    }
}
