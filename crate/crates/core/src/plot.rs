//! SVG 1.1 rendering of failure-rate curves.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::analysis::{CurvePoint, Sector};
use crate::decoders::Decoder;
use crate::error::{Error, Result};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 20.0;
const BOTTOM: f64 = 55.0;
const TICKS: usize = 5;

const COLORS: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

type SeriesKey = (Decoder, Sector, usize);

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// One polyline per `(size, decoder, sector)` with Wilson error bars. A
/// series with a single point is drawn as a lone marker.
pub fn render_svg(points: &[CurvePoint]) -> Result<String> {
    if points.is_empty() {
        return Err(Error::InvalidParameter("nothing to plot: no curve points".into()));
    }
    let mut series: BTreeMap<SeriesKey, Vec<&CurvePoint>> = BTreeMap::new();
    for pt in points {
        series.entry((pt.decoder, pt.sector, pt.size)).or_default().push(pt);
    }
    for s in series.values_mut() {
        s.sort_by(|a, b| a.p.total_cmp(&b.p));
    }

    let (mut x0, mut x1) = points
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), pt| (lo.min(pt.p), hi.max(pt.p)));
    if x1 - x0 < 1e-9 {
        x0 -= 0.01;
        x1 += 0.01;
    }
    let ymax = points.iter().map(|pt| pt.ci_high).fold(0.0, f64::max);
    let y1 = if ymax <= 0.0 { 1.0 } else { (ymax * 10.0).ceil() / 10.0 };
    let y1 = y1.min(1.0);

    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let sx = |p: f64| LEFT + (p - x0) / (x1 - x0) * pw;
    let sy = |r: f64| TOP + (1.0 - r / y1) * ph;

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);

    // axes and ticks
    let _ = writeln!(
        svg,
        r#"<g stroke="black" fill="none"><line x1="{LEFT}" y1="{b}" x2="{r}" y2="{b}"/><line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{b}"/></g>"#,
        b = TOP + ph,
        r = LEFT + pw
    );
    for i in 0..=TICKS {
        let f = i as f64 / TICKS as f64;
        let (p, r) = (x0 + f * (x1 - x0), f * y1);
        let _ = writeln!(
            svg,
            r#"<line x1="{x:.2}" y1="{b}" x2="{x:.2}" y2="{b2}" stroke="black"/><text x="{x:.2}" y="{t}" text-anchor="middle">{p:.3}</text>"#,
            x = sx(p),
            b = TOP + ph,
            b2 = TOP + ph + 5.0,
            t = TOP + ph + 18.0
        );
        let _ = writeln!(
            svg,
            r#"<line x1="{l}" y1="{y:.2}" x2="{LEFT}" y2="{y:.2}" stroke="black"/><text x="{tx}" y="{ty:.2}" text-anchor="end">{r:.2}</text>"#,
            l = LEFT - 5.0,
            y = sy(r),
            tx = LEFT - 8.0,
            ty = sy(r) + 4.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{x}" y="{y}" text-anchor="middle">p</text>"#,
        x = LEFT + pw / 2.0,
        y = HEIGHT - 12.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="18" y="{y}" text-anchor="middle" transform="rotate(-90 18 {y})">logical failure rate</text>"#,
        y = TOP + ph / 2.0
    );

    for (idx, ((decoder, sector, size), pts)) in series.iter().enumerate() {
        let color = COLORS[idx % COLORS.len()];
        let label = escape(&format!("{} {}, size {}", decoder, sector, size));
        let _ = writeln!(svg, r#"<g stroke="{color}" fill="{color}"><title>{label}</title>"#);
        if pts.len() > 1 {
            let coords: Vec<String> = pts
                .iter()
                .map(|pt| format!("{:.2},{:.2}", sx(pt.p), sy(pt.rate)))
                .collect();
            let _ = writeln!(
                svg,
                r#"<polyline fill="none" stroke-width="1.5" points="{}"/>"#,
                coords.join(" ")
            );
        }
        for pt in pts {
            let (x, y) = (sx(pt.p), sy(pt.rate));
            let _ = writeln!(
                svg,
                r#"<line x1="{x:.2}" y1="{lo:.2}" x2="{x:.2}" y2="{hi:.2}"/><circle cx="{x:.2}" cy="{y:.2}" r="3"/>"#,
                lo = sy(pt.ci_low),
                hi = sy(pt.ci_high)
            );
        }
        let ly = TOP + 10.0 + 18.0 * idx as f64;
        let lx = WIDTH - RIGHT + 15.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{lx}" y1="{ly}" x2="{lx2}" y2="{ly}" stroke-width="2"/><text x="{tx}" y="{ty}" stroke="none" fill="black">{label}</text></g>"#,
            lx2 = lx + 20.0,
            tx = lx + 26.0,
            ty = ly + 4.0
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiling::Family;

    fn pt(size: usize, p: f64, failures: u64) -> CurvePoint {
        CurvePoint::new(Family::Square, size, p, Decoder::Standard, Sector::Both, 100, failures, 1)
    }

    #[test]
    fn single_row_single_marker() {
        let svg = render_svg(&[pt(8, 0.1, 10)]).unwrap();
        assert_eq!(svg.matches("<circle").count(), 1);
        assert_eq!(svg.matches("<polyline").count(), 0);
    }

    #[test]
    fn one_polyline_per_size() {
        let pts = [pt(8, 0.1, 10), pt(8, 0.2, 30), pt(12, 0.1, 5), pt(12, 0.2, 40)];
        let svg = render_svg(&pts).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert_eq!(svg.matches("<circle").count(), 4);
    }

    #[test]
    fn empty_input_rejected() {
        assert!(render_svg(&[]).is_err());
    }
}
