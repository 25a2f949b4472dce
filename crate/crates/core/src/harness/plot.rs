use std::fmt::Write;

use crate::{Error, Result};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const LEFT: f64 = 60.0;
const RIGHT: f64 = 160.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 50.0;

struct Series {
    label: &'static str,
    color: &'static str,
    value: &'static str,
    band: Option<(&'static str, &'static str)>,
}

const SERIES: [Series; 3] = [
    Series {
        label: "weak Hamiltonian",
        color: "#1f77b4",
        value: "phat_weak_ham",
        band: Some(("weak_ham_lo", "weak_ham_hi")),
    },
    Series {
        label: "min degree >= 1",
        color: "#d62728",
        value: "phat_min_deg",
        band: Some(("min_deg_lo", "min_deg_hi")),
    },
    Series { label: "exp(-exp(-c))", color: "#2ca02c", value: "theory", band: None },
];

struct Parsed {
    header: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl Parsed {
    fn column(&self, name: &str) -> Result<usize> {
        self.header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::input(format!("schema mismatch: no column {name:?}")))
    }
}

fn parse(csv: &str) -> Result<Parsed> {
    let mut lines = csv.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty());
    let header: Vec<String> =
        lines.next().ok_or_else(|| Error::input("empty CSV"))?.split(',').map(|s| s.trim().to_string()).collect();
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != header.len() {
            return Err(Error::input(format!("row {}: expected {} cells", i + 1, header.len())));
        }
        rows.push(cells.iter().map(|c| c.trim().parse().unwrap_or(f64::NAN)).collect());
    }
    if rows.is_empty() {
        return Err(Error::input("CSV has no data rows"));
    }
    Ok(Parsed { header, rows })
}

/// SVG line plot of a threshold or G(n, m) table: the two empirical
/// probabilities with their Wilson bands and the limit curve, against `c`.
/// The output depends only on the input text.
pub fn emit_plot(csv: &str) -> Result<String> {
    let parsed = parse(csv)?;
    let c = parsed.column("c")?;
    for s in &SERIES {
        parsed.column(s.value)?;
        if let Some((lo, hi)) = s.band {
            parsed.column(lo)?;
            parsed.column(hi)?;
        }
    }
    let mut rows = parsed.rows.clone();
    rows.sort_by(|a, b| a[c].total_cmp(&b[c]));
    if rows.iter().any(|r| !r[c].is_finite()) {
        return Err(Error::input("column c must be numeric"));
    }
    let (mut x0, mut x1) = (rows[0][c], rows[rows.len() - 1][c]);
    if x0 == x1 {
        x0 -= 1.0;
        x1 += 1.0;
    }
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * plot_w;
    let sy = |y: f64| TOP + (1.0 - y.clamp(0.0, 1.0)) * plot_h;

    let mut svg = String::new();
    let w = &mut svg;
    writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    writeln!(w, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#).unwrap();
    for k in 0..=4 {
        let y = k as f64 / 4.0;
        writeln!(
            w,
            r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#dddddd"/>"##,
            LEFT,
            sy(y),
            LEFT + plot_w,
            sy(y)
        )
        .unwrap();
        writeln!(w, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{y:.2}</text>"#, LEFT - 6.0, sy(y) + 4.0).unwrap();
    }
    for r in &rows {
        writeln!(w, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, sx(r[c]), TOP + plot_h + 18.0, r[c])
            .unwrap();
    }
    writeln!(
        w,
        r#"<path d="M{LEFT:.2} {TOP:.2} V{:.2} H{:.2}" fill="none" stroke="black"/>"#,
        TOP + plot_h,
        LEFT + plot_w
    )
    .unwrap();
    writeln!(w, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">c</text>"#, LEFT + plot_w / 2.0, HEIGHT - 10.0)
        .unwrap();
    writeln!(
        w,
        r#"<text x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">probability</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0
    )
    .unwrap();

    for s in &SERIES {
        let v = parsed.column(s.value)?;
        if let Some((lo, hi)) = s.band {
            let (lo, hi) = (parsed.column(lo)?, parsed.column(hi)?);
            let finite: Vec<&Vec<f64>> = rows.iter().filter(|r| r[lo].is_finite() && r[hi].is_finite()).collect();
            if finite.len() >= 2 {
                let mut points: Vec<String> =
                    finite.iter().map(|r| format!("{:.2},{:.2}", sx(r[c]), sy(r[hi]))).collect();
                points.extend(finite.iter().rev().map(|r| format!("{:.2},{:.2}", sx(r[c]), sy(r[lo]))));
                writeln!(
                    w,
                    r#"<polygon points="{}" fill="{}" fill-opacity="0.15" stroke="none"/>"#,
                    points.join(" "),
                    s.color
                )
                .unwrap();
            }
        }
        let points: Vec<String> =
            rows.iter().filter(|r| r[v].is_finite()).map(|r| format!("{:.2},{:.2}", sx(r[c]), sy(r[v]))).collect();
        writeln!(w, r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="2"/>"#, points.join(" "), s.color)
            .unwrap();
        for r in rows.iter().filter(|r| r[v].is_finite()) {
            writeln!(w, r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{}"/>"#, sx(r[c]), sy(r[v]), s.color).unwrap();
        }
    }
    for (i, s) in SERIES.iter().enumerate() {
        let y = TOP + 10.0 + 20.0 * i as f64;
        let x = WIDTH - RIGHT + 12.0;
        writeln!(
            w,
            r#"<line x1="{x:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{}" stroke-width="2"/>"#,
            x + 20.0,
            s.color
        )
        .unwrap();
        writeln!(w, r#"<text x="{:.2}" y="{:.2}">{}</text>"#, x + 26.0, y + 4.0, s.label).unwrap();
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
