//! Deterministic SVG rendering of the real picture of a configuration or of
//! its dual arrangement.  All geometry is computed exactly; floating point
//! appears only when coordinates are written into the document.

use anyhow::{anyhow, bail, Result};

use zariski_core::configuration::Configuration;
use zariski_core::dual::PlumbedArrangement;
use zariski_core::field::{FieldScalar, FieldSpec};
use zariski_core::linalg::Mat3;
use zariski_core::projective::{join, ProjectiveLine, ProjectivePoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChartSpec {
    /// Send the line through two vertices (1-based) to infinity.
    VertexPair(usize, usize),
    /// Send the k-th line (1-based) of the drawn line list to infinity.
    LineIndex(usize),
}

impl ChartSpec {
    pub fn parse(s: &str) -> Result<ChartSpec> {
        if let Some(rest) = s.strip_prefix("vertex-pair:") {
            let (i, j) = rest
                .split_once(',')
                .ok_or_else(|| anyhow!("expected vertex-pair:i,j"))?;
            return Ok(ChartSpec::VertexPair(i.trim().parse()?, j.trim().parse()?));
        }
        if let Some(rest) = s.strip_prefix("line-index:") {
            return Ok(ChartSpec::LineIndex(rest.trim().parse()?));
        }
        bail!("chart must be vertex-pair:i,j or line-index:k")
    }
}

impl Default for ChartSpec {
    fn default() -> Self {
        ChartSpec::VertexPair(1, 2)
    }
}

struct DrawnLine {
    line: ProjectiveLine,
    dashed: bool,
    label: String,
}

struct DrawnPoint {
    point: ProjectivePoint,
    label: String,
}

/// Render the configuration: solid configuration lines, dashed vertex-pair
/// lines, labeled points.  The chart line goes to infinity and is omitted;
/// points on it are omitted too, except that a surrounding point on the
/// chart line is an error (pick another chart).
pub fn render_configuration(c: &Configuration, chart: ChartSpec) -> Result<String> {
    c.ensure_valid().map_err(|e| anyhow!("{e}"))?;
    let config_lines = c.config_lines().map_err(|e| anyhow!("{e}"))?;
    let chart_line = match chart {
        ChartSpec::VertexPair(i, j) => {
            let t = c.t();
            if i == 0 || j == 0 || i > t || j > t || i == j {
                bail!("vertex-pair indices must be distinct and within 1..={t}");
            }
            join(&c.vertices[i - 1], &c.vertices[j - 1]).map_err(|e| anyhow!("{e}"))?
        }
        ChartSpec::LineIndex(k) => {
            if k == 0 || k > config_lines.len() {
                bail!("line index must be within 1..={}", config_lines.len());
            }
            config_lines[k - 1].line.clone()
        }
    };
    for (idx, s) in c.surrounding.iter().enumerate() {
        if s.point.on_line(&chart_line) {
            bail!(
                "surrounding point S{} lies on the chart line; choose another chart",
                idx + 1
            );
        }
    }
    let mut lines = Vec::new();
    for (n, cl) in config_lines.iter().enumerate() {
        if cl.line != chart_line {
            lines.push(DrawnLine {
                line: cl.line.clone(),
                dashed: false,
                label: format!("l{}", n + 1),
            });
        }
    }
    for i in 0..c.t() {
        for j in (i + 1)..c.t() {
            let l = join(&c.vertices[i], &c.vertices[j]).map_err(|e| anyhow!("{e}"))?;
            if l != chart_line {
                lines.push(DrawnLine {
                    line: l,
                    dashed: true,
                    label: String::new(),
                });
            }
        }
    }
    let mut points = Vec::new();
    for (i, v) in c.vertices.iter().enumerate() {
        if !v.on_line(&chart_line) {
            points.push(DrawnPoint {
                point: v.clone(),
                label: format!("V{}", i + 1),
            });
        }
    }
    for (i, s) in c.surrounding.iter().enumerate() {
        points.push(DrawnPoint {
            point: s.point.clone(),
            label: format!("S{}", i + 1),
        });
    }
    render(c.field, &chart_line, lines, points)
}

/// Render the real picture of an arrangement; the chart defaults to its
/// first support line.
pub fn render_arrangement(a: &PlumbedArrangement, chart: ChartSpec) -> Result<String> {
    let chart_line = match chart {
        ChartSpec::LineIndex(k) => {
            if k == 0 || k > a.lines.len() {
                bail!("line index must be within 1..={}", a.lines.len());
            }
            a.lines[k - 1].clone()
        }
        ChartSpec::VertexPair(..) => bail!("arrangement charts are selected by line-index:k"),
    };
    let mut lines = Vec::new();
    for (i, l) in a.lines.iter().enumerate() {
        if *l == chart_line {
            continue;
        }
        let support = a.support.contains(&i);
        let label = if support {
            format!("V{}*", a.support.iter().position(|&s| s == i).unwrap() + 1)
        } else {
            format!("S{}*", i - 2)
        };
        lines.push(DrawnLine {
            line: l.clone(),
            dashed: false,
            label,
        });
    }
    render(a.spec(), &chart_line, lines, Vec::new())
}

/// Affine chart: two coordinate forms plus the chart line as denominator.
fn chart_matrix(spec: FieldSpec, chart_line: &ProjectiveLine) -> Mat3 {
    let lead = chart_line
        .coeffs()
        .iter()
        .position(|x| !x.is_zero())
        .expect("nonzero line");
    let others: Vec<usize> = (0..3).filter(|&i| i != lead).collect();
    let unit = |k: usize| {
        let mut row = [
            FieldScalar::zero(spec),
            FieldScalar::zero(spec),
            FieldScalar::zero(spec),
        ];
        row[k] = FieldScalar::one(spec);
        row
    };
    Mat3::new([
        unit(others[0]),
        unit(others[1]),
        chart_line.coeffs().clone(),
    ])
}

type Affine = (FieldScalar, FieldScalar);

fn affine_point(m: &Mat3, p: &ProjectivePoint) -> Option<Affine> {
    let v = m.apply(p.coords());
    if v[2].is_zero() {
        return None;
    }
    Some((&v[0] / &v[2], &v[1] / &v[2]))
}

/// Affine coefficients (a, b, c) with a·u + b·v + c = 0 in the chart.
fn affine_line(m: &Mat3, l: &ProjectiveLine) -> Option<(FieldScalar, FieldScalar, FieldScalar)> {
    // the chart substitutes x = M⁻¹ (u, v, w)ᵀ, so coefficients map by M⁻ᵀ
    let inv = m.inverse().expect("chart matrix invertible");
    let coeffs = inv.transpose().apply(l.coeffs());
    if coeffs[0].is_zero() && coeffs[1].is_zero() {
        return None; // the chart line itself
    }
    Some((coeffs[0].clone(), coeffs[1].clone(), coeffs[2].clone()))
}

fn render(
    spec: FieldSpec,
    chart_line: &ProjectiveLine,
    lines: Vec<DrawnLine>,
    points: Vec<DrawnPoint>,
) -> Result<String> {
    let m = chart_matrix(spec, chart_line);
    let affine_lines: Vec<(usize, (FieldScalar, FieldScalar, FieldScalar))> = lines
        .iter()
        .enumerate()
        .filter_map(|(i, d)| affine_line(&m, &d.line).map(|abc| (i, abc)))
        .collect();
    let mut anchors: Vec<Affine> = Vec::new();
    for p in &points {
        if let Some(a) = affine_point(&m, &p.point) {
            anchors.push(a);
        }
    }
    for i in 0..affine_lines.len() {
        for j in (i + 1)..affine_lines.len() {
            let (a1, b1, c1) = &affine_lines[i].1;
            let (a2, b2, c2) = &affine_lines[j].1;
            let det = a1 * b2 - a2 * b1;
            if det.is_zero() {
                continue; // parallel in this chart
            }
            let u = &(&(b1 * c2) - &(b2 * c1)) / &det;
            let v = &(&(a2 * c1) - &(a1 * c2)) / &det;
            anchors.push((u, v));
        }
    }
    if anchors.is_empty() {
        bail!("nothing to draw in this chart");
    }
    let (mut xmin, mut xmax) = (anchors[0].0.clone(), anchors[0].0.clone());
    let (mut ymin, mut ymax) = (anchors[0].1.clone(), anchors[0].1.clone());
    for (u, v) in &anchors[1..] {
        if *u < xmin {
            xmin = u.clone();
        }
        if *u > xmax {
            xmax = u.clone();
        }
        if *v < ymin {
            ymin = v.clone();
        }
        if *v > ymax {
            ymax = v.clone();
        }
    }
    // 20% margin, and a minimum extent so degenerate boxes stay drawable
    let five = FieldScalar::from_int(spec, 5);
    let one = FieldScalar::one(spec);
    let mut wx = &xmax - &xmin;
    let mut wy = &ymax - &ymin;
    if wx.is_zero() {
        wx = one.clone();
    }
    if wy.is_zero() {
        wy = one.clone();
    }
    let mx = &wx / &five;
    let my = &wy / &five;
    xmin = &xmin - &mx;
    xmax = &xmax + &mx;
    ymin = &ymin - &my;
    ymax = &ymax + &my;

    let width = 800.0f64;
    let height = 800.0f64;
    let fx = |u: &FieldScalar| -> f64 {
        let t = (u - &xmin).to_f64() / (&xmax - &xmin).to_f64();
        t * width
    };
    let fy = |v: &FieldScalar| -> f64 {
        let t = (v - &ymin).to_f64() / (&ymax - &ymin).to_f64();
        height - t * height
    };

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n"
    ));
    svg.push_str("  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    for (idx, abc) in &affine_lines {
        let d = &lines[*idx];
        let Some(((u1, v1), (u2, v2))) = clip(abc, &xmin, &xmax, &ymin, &ymax) else {
            continue;
        };
        let style = if d.dashed {
            " stroke-dasharray=\"8 6\" stroke=\"#888888\""
        } else {
            " stroke=\"#000000\""
        };
        svg.push_str(&format!(
            "  <line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\"{} stroke-width=\"1.4\"/>\n",
            fx(&u1),
            fy(&v1),
            fx(&u2),
            fy(&v2),
            style
        ));
        if !d.label.is_empty() && !d.dashed {
            let lx = (fx(&u2) - 16.0).clamp(4.0, width - 24.0);
            let ly = (fy(&v2) - 4.0).clamp(12.0, height - 4.0);
            svg.push_str(&format!(
                "  <text x=\"{lx:.3}\" y=\"{ly:.3}\" font-size=\"11\" fill=\"#555555\">{}</text>\n",
                d.label
            ));
        }
    }
    for p in &points {
        let Some((u, v)) = affine_point(&m, &p.point) else {
            continue;
        };
        svg.push_str(&format!(
            "  <circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"4\" fill=\"#000000\"/>\n",
            fx(&u),
            fy(&v)
        ));
        svg.push_str(&format!(
            "  <text x=\"{:.3}\" y=\"{:.3}\" font-size=\"13\" fill=\"#000000\">{}</text>\n",
            fx(&u) + 6.0,
            fy(&v) - 6.0,
            p.label
        ));
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Clip `a·u + b·v + c = 0` to the box, returning the two extreme points.
#[allow(clippy::type_complexity)]
fn clip(
    (a, b, c): &(FieldScalar, FieldScalar, FieldScalar),
    xmin: &FieldScalar,
    xmax: &FieldScalar,
    ymin: &FieldScalar,
    ymax: &FieldScalar,
) -> Option<(Affine, Affine)> {
    let mut hits: Vec<Affine> = Vec::new();
    if !b.is_zero() {
        for x in [xmin, xmax] {
            let v = -&(&(&(a * x) + c) / b);
            if v >= *ymin && v <= *ymax {
                hits.push((x.clone(), v));
            }
        }
    }
    if !a.is_zero() {
        for y in [ymin, ymax] {
            let u = -&(&(&(b * y) + c) / a);
            if u >= *xmin && u <= *xmax {
                hits.push((u, y.clone()));
            }
        }
    }
    hits.sort();
    hits.dedup();
    if hits.len() < 2 {
        return None;
    }
    Some((hits.first().unwrap().clone(), hits.last().unwrap().clone()))
}
