use std::fmt::Write;

use super::{Atlas, VerdictKind};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;

const BLOW_UP_FILL: &str = "#e57373";
const EXISTENCE_FILL: &str = "#64b5f6";

struct Frame {
    k0: f64,
    k1: f64,
    p0: f64,
    p1: f64,
}

impl Frame {
    fn x(&self, k: f64) -> f64 {
        LEFT + (k - self.k0) / (self.k1 - self.k0) * (WIDTH - LEFT - RIGHT)
    }

    // p grows upwards
    fn y(&self, p: f64) -> f64 {
        HEIGHT - BOTTOM - (p - self.p0) / (self.p1 - self.p0) * (HEIGHT - TOP - BOTTOM)
    }
}

fn cell_edges(values: &[f64]) -> Vec<f64> {
    match values.len() {
        0 => Vec::new(),
        1 => vec![values[0] - 0.5, values[0] + 0.5],
        n => {
            let mut edges = Vec::with_capacity(n + 1);
            edges.push(values[0] - 0.5 * (values[1] - values[0]));
            for w in values.windows(2) {
                edges.push(0.5 * (w[0] + w[1]));
            }
            edges.push(values[n - 1] + 0.5 * (values[n - 1] - values[n - 2]));
            edges
        }
    }
}

/// Render the region diagram: blow-up cells below, existence cells above,
/// the modified Fujita curve, the Strauss line and the crossing point.
///
/// The output is a deterministic function of the atlas.
pub fn render_svg(atlas: &Atlas) -> String {
    let ks = atlas.k_range.values();
    let ps = atlas.p_range.values();
    let ke = cell_edges(&ks);
    let pe = cell_edges(&ps);
    let frame = Frame { k0: ke[0], k1: ke[ke.len() - 1], p0: pe[0], p1: pe[pe.len() - 1] };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="serif" font-size="13">"#
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="24" text-anchor="middle">n = {}, μ = {}, ν = {}</text>"#,
        WIDTH / 2.0,
        atlas.n,
        atlas.mu,
        atlas.nu
    );

    let _ = writeln!(s, r#"<g id="cells" stroke="none">"#);
    for (j, _) in ps.iter().enumerate() {
        for (i, _) in ks.iter().enumerate() {
            let node = &atlas.nodes[j * ks.len() + i];
            let fill = match node.verdict.kind {
                VerdictKind::BlowUpTheorem1 => BLOW_UP_FILL,
                VerdictKind::GlobalExistenceLiterature => EXISTENCE_FILL,
                VerdictKind::Unknown => continue,
            };
            let x0 = frame.x(ke[i]);
            let x1 = frame.x(ke[i + 1]);
            let y0 = frame.y(pe[j + 1]);
            let y1 = frame.y(pe[j]);
            let _ = writeln!(
                s,
                r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{fill}"/>"#,
                x0,
                y0,
                x1 - x0,
                y1 - y0
            );
        }
    }
    let _ = writeln!(s, "</g>");

    // clip curves to the plotting frame
    let _ = writeln!(
        s,
        r#"<clipPath id="frame"><rect x="{LEFT}" y="{TOP}" width="{:.1}" height="{:.1}"/></clipPath>"#,
        WIDTH - LEFT - RIGHT,
        HEIGHT - TOP - BOTTOM
    );
    if !atlas.fujita_curve.is_empty() {
        let pts: Vec<String> = atlas
            .fujita_curve
            .iter()
            .filter(|(_, p)| p.is_finite())
            .map(|&(k, p)| format!("{:.2},{:.2}", frame.x(k), frame.y(p.min(frame.p1 + 10.0))))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline id="fujita-curve" clip-path="url(#frame)" fill="none" stroke="navy" stroke-width="1.5" points="{}"/>"#,
            pts.join(" ")
        );
    }
    if let Some(ps_line) = atlas.strauss_p {
        let y = frame.y(ps_line);
        let _ = writeln!(
            s,
            r#"<line id="strauss-line" clip-path="url(#frame)" x1="{LEFT}" y1="{y:.2}" x2="{:.1}" y2="{y:.2}" stroke="darkred" stroke-dasharray="6 3"/>"#,
            WIDTH - RIGHT
        );
    }

    // axes
    let (xa, ya) = (LEFT, HEIGHT - BOTTOM);
    let _ = writeln!(
        s,
        r#"<path d="M{xa} {TOP} L{xa} {ya} L{:.1} {ya}" fill="none" stroke="black"/>"#,
        WIDTH - RIGHT
    );
    for t in 0..=4 {
        let k = frame.k0 + (frame.k1 - frame.k0) * t as f64 / 4.0;
        let p = frame.p0 + (frame.p1 - frame.p0) * t as f64 / 4.0;
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.1}" text-anchor="middle" font-size="11">{:.2}</text>"#,
            frame.x(k),
            ya + 16.0,
            k
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.2}" text-anchor="end" font-size="11">{:.2}</text>"#,
            xa - 6.0,
            frame.y(p) + 4.0,
            p
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle" font-style="italic">k̄</text>"#,
        (LEFT + WIDTH - RIGHT) / 2.0,
        HEIGHT - 18.0
    );
    let _ = writeln!(
        s,
        r#"<text x="18" y="{:.1}" text-anchor="middle" font-style="italic">p</text>"#,
        (TOP + HEIGHT - BOTTOM) / 2.0
    );

    if let Some(b) = &atlas.boundary {
        let (x, y) = (frame.x(b.kbar), frame.y(b.p));
        let k_text = match &b.kbar_label {
            Some(l) => format!("k̄₀ = {l} ≈ {:.5}", b.kbar),
            None => format!("k̄₀ ≈ {:.5}", b.kbar),
        };
        let p_text = match &b.p_label {
            Some(l) => format!("p_S(n+μ) = {l} ≈ {:.5}", b.p),
            None => format!("p_S(n+μ) ≈ {:.5}", b.p),
        };
        let _ = writeln!(
            s,
            r#"<g id="boundary-point"><circle cx="{x:.2}" cy="{y:.2}" r="3.5" fill="black"/><text x="{:.2}" y="{:.2}" font-size="12">{k_text}</text><text x="{:.2}" y="{:.2}" font-size="12">{p_text}</text></g>"#,
            x + 6.0,
            y + 16.0,
            x + 6.0,
            y + 30.0
        );
    }
    let _ = writeln!(
        s,
        r#"<g id="legend" font-size="11"><rect x="{:.1}" y="{:.1}" width="10" height="10" fill="{BLOW_UP_FILL}"/><text x="{:.1}" y="{:.1}">blow-up</text><rect x="{:.1}" y="{:.1}" width="10" height="10" fill="{EXISTENCE_FILL}"/><text x="{:.1}" y="{:.1}">global existence</text></g>"#,
        WIDTH - 170.0,
        TOP + 6.0,
        WIDTH - 156.0,
        TOP + 15.0,
        WIDTH - 170.0,
        TOP + 22.0,
        WIDTH - 156.0,
        TOP + 31.0
    );
    s.push_str("</svg>\n");
    s
}
