//! SVG phase portraits.

use std::f64::consts::PI;
use std::fmt::Write;

use num_complex::Complex64;

use crate::flow::{separatrix_graph, FlowError, Outcome, SeparatrixGraphNumeric};
use crate::{EquilibriumKind, PolynomialVF};

#[derive(Debug, Clone)]
pub struct PortraitOptions {
    /// Image width and height in pixels.
    pub size: u32,
    /// Streamlines seeded on an `n x n` grid (0 for none).
    pub streamlines: usize,
    /// Half-width of the viewport; defaults to a multiple of the root scale.
    pub radius: Option<f64>,
}

impl Default for PortraitOptions {
    fn default() -> Self {
        Self { size: 640, streamlines: 0, radius: None }
    }
}

struct View {
    radius: f64,
    size: f64,
}

impl View {
    fn px(&self, z: Complex64) -> (f64, f64) {
        let s = self.size / (2.0 * self.radius);
        (self.size / 2.0 + z.re * s, self.size / 2.0 - z.im * s)
    }

    fn inside(&self, z: Complex64) -> bool {
        z.re.abs() <= 1.05 * self.radius && z.im.abs() <= 1.05 * self.radius
    }
}

fn polyline(out: &mut String, view: &View, points: &[Complex64], class: &str) {
    // Split into runs inside the viewport and thin to at most one point per pixel.
    let mut runs: Vec<Vec<(f64, f64)>> = Vec::new();
    let mut current: Vec<(f64, f64)> = Vec::new();
    for &z in points {
        if !view.inside(z) {
            if current.len() > 1 {
                runs.push(std::mem::take(&mut current));
            }
            current.clear();
            continue;
        }
        let q = view.px(z);
        if let Some(last) = current.last() {
            if (q.0 - last.0).abs() < 0.5 && (q.1 - last.1).abs() < 0.5 {
                continue;
            }
        }
        current.push(q);
    }
    if current.len() > 1 {
        runs.push(current);
    }
    for run in runs {
        let pts: Vec<String> = run.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        let _ = writeln!(out, r#"<polyline class="{class}" points="{}"/>"#, pts.join(" "));
    }
}

fn streamline(p: &PolynomialVF, start: Complex64, sign: f64, view: &View) -> Vec<Complex64> {
    let mut z = start;
    let mut out = vec![z];
    let h = view.radius / 150.0;
    for _ in 0..600 {
        let f = |w: Complex64| {
            let v = p.eval(w) * sign;
            v / v.norm().max(1e-300)
        };
        let k1 = f(z);
        let k2 = f(z + k1 * (h / 2.0));
        let k3 = f(z + k2 * (h / 2.0));
        let k4 = f(z + k3 * h);
        z += (k1 + 2.0 * k2 + 2.0 * k3 + k4) * (h / 6.0);
        if !view.inside(z) || p.distance_to_roots(z) < h {
            break;
        }
        out.push(z);
    }
    out
}

/// Separatrices styled by outcome, equilibria by kind, and end labels at the
/// asymptotic directions of the ends. An inconsistent graph is still drawn.
pub fn render_portrait(p: &PolynomialVF, opts: &PortraitOptions) -> Result<String, FlowError> {
    let graph = match separatrix_graph(p) {
        Ok(g) => g,
        Err(FlowError::UncertainClassification(g)) => *g,
        Err(e) => return Err(e),
    };
    Ok(render_graph(p, &graph, opts))
}

pub fn render_graph(p: &PolynomialVF, graph: &SeparatrixGraphNumeric, opts: &PortraitOptions) -> String {
    let radius = opts.radius.unwrap_or(2.5 * p.root_scale().max(0.4));
    let view = View { radius, size: opts.size as f64 };
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#,
        opts.size
    );
    out.push_str(concat!(
        "<style>",
        "polyline{fill:none}",
        ".stream{stroke:#bbbbbb;stroke-width:0.7}",
        ".landing{stroke:#1f4e9c;stroke-width:1.6}",
        ".homoclinic{stroke:#c0392b;stroke-width:2.2}",
        ".uncertain{stroke:#7f7f7f;stroke-width:1.6;stroke-dasharray:6 4}",
        ".sink{fill:#1f4e9c}.source{fill:#ffffff;stroke:#1f4e9c;stroke-width:1.5}",
        ".center{fill:#c0392b}.multiple{fill:#2e8b57}",
        "text{font-family:sans-serif;font-size:13px;text-anchor:middle;dominant-baseline:middle}",
        "</style>\n"
    ));
    let _ = writeln!(out, r#"<rect width="{0}" height="{0}" fill="white"/>"#, opts.size);
    if opts.streamlines > 0 {
        let n = opts.streamlines;
        for i in 0..n {
            for j in 0..n {
                let z = Complex64::new(
                    -radius + (2 * i + 1) as f64 * radius / n as f64,
                    -radius + (2 * j + 1) as f64 * radius / n as f64,
                );
                let mut back = streamline(p, z, -1.0, &view);
                back.reverse();
                back.extend(streamline(p, z, 1.0, &view).into_iter().skip(1));
                polyline(&mut out, &view, &back, "stream");
            }
        }
    }
    for t in &graph.traces {
        let class = match t.outcome {
            Outcome::Landing { .. } => "separatrix landing",
            Outcome::Homoclinic { .. } => "separatrix homoclinic",
            Outcome::Uncertain(_) => "separatrix uncertain",
        };
        let _ = writeln!(out, r#"<g id="s{}">"#, t.index);
        polyline(&mut out, &view, &t.path, class);
        out.push_str("</g>\n");
    }
    for e in &graph.equilibria {
        let (x, y) = view.px(e.position);
        let class = match e.kind {
            EquilibriumKind::Sink => "sink",
            EquilibriumKind::Source => "source",
            EquilibriumKind::Center => "center",
            EquilibriumKind::Multiple => "multiple",
        };
        if e.kind == EquilibriumKind::Multiple {
            let _ = writeln!(
                out,
                r#"<rect class="equilibrium {class}" x="{:.2}" y="{:.2}" width="9" height="9"/>"#,
                x - 4.5,
                y - 4.5
            );
        } else {
            let _ = writeln!(out, r#"<circle class="equilibrium {class}" cx="{x:.2}" cy="{y:.2}" r="4.5"/>"#);
        }
    }
    let count = graph.traces.len();
    let d = count / 2 + 1;
    for l in 0..count {
        let angle = PI * (l as f64 - 0.5) / (d as f64 - 1.0);
        let z = Complex64::from_polar(0.92 * radius, angle);
        let (x, y) = view.px(z);
        let _ = writeln!(out, r#"<text class="end" x="{x:.2}" y="{y:.2}">e{l}</text>"#);
    }
    out.push_str("</svg>\n");
    out
}
