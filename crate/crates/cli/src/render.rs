//! Plain-text and SVG pictures of a path and its pair.

use std::f64::consts::PI;
use std::fmt::Write;

use ratnc::{Block, DyckPath, LabeledPair};

pub fn join(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

/// Path drawn with `|` and `_`, the diagonal dotted, labels underneath and
/// the laser list last.
pub fn ascii(d: &DyckPath) -> String {
    let (a, b) = (d.pair().a() as usize, d.pair().b() as usize);
    let width = 3 * b + 1;
    // row r holds the unit cell whose bottom is at height a - r
    let mut canvas = vec![vec![' '; width]; a + 1];
    for (r, row) in canvas.iter_mut().enumerate() {
        let y = a - r;
        for (c, cell) in row.iter_mut().enumerate() {
            // diagonal height at x = c/3 is a*c/(3b)
            let num = a * c;
            if num >= 3 * b * y && num < 3 * b * (y + 1) {
                *cell = '.';
            }
        }
    }
    let (mut x, mut y) = (0, 0);
    for &n in d.runs() {
        for _ in 0..n {
            canvas[a - y][3 * x] = '|';
            y += 1;
        }
        canvas[a - y][3 * x + 1] = '_';
        canvas[a - y][3 * x + 2] = '_';
        x += 1;
    }
    let mut out = String::new();
    for row in &canvas {
        let line: String = row.iter().collect();
        out += line.trim_end();
        out.push('\n');
    }
    let mut labels = vec![' '; width + 2];
    for i in 1..b {
        for (k, ch) in i.to_string().chars().enumerate() {
            labels[3 * i + k] = ch;
        }
    }
    out += labels.iter().collect::<String>().trim_end();
    out.push('\n');
    let lasers: Vec<String> = d.laser_set().iter().map(|l| format!("({},{})", l.source, l.target)).collect();
    let _ = writeln!(out, "lasers: {}", lasers.join(" "));
    out
}

const CELL: f64 = 40.0;
const MARGIN: f64 = 30.0;

/// Grid, diagonal, path and lasers on the left; the disk with `P` (solid)
/// and `Q` (dashed, on primed points) on the right, ranks written inside.
pub fn svg(d: &DyckPath, pq: &LabeledPair) -> String {
    let (a, b) = (d.pair().a() as f64, d.pair().b() as f64);
    let px = |x: f64| MARGIN + x * CELL;
    let py = |y: f64| MARGIN + (a - y) * CELL;
    let radius = (a.max(b) * CELL / 2.0).max(80.0);
    let disk_x = px(b) + MARGIN + radius + 20.0;
    let disk_y = MARGIN + radius + 10.0;
    let width = disk_x + radius + 2.0 * MARGIN;
    let height = (py(0.0) + MARGIN).max(disk_y + radius + 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    s += "<g stroke=\"#ccc\" stroke-width=\"1\">\n";
    for i in 0..=d.pair().b() {
        let _ = writeln!(s, r#"<line x1="{0:.1}" y1="{1:.1}" x2="{0:.1}" y2="{2:.1}"/>"#, px(i as f64), py(0.0), py(a));
    }
    for j in 0..=d.pair().a() {
        let _ = writeln!(s, r#"<line x1="{1:.1}" y1="{0:.1}" x2="{2:.1}" y2="{0:.1}"/>"#, py(j as f64), px(0.0), px(b));
    }
    s += "</g>\n";
    let _ = writeln!(
        s,
        r##"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="#888" stroke-dasharray="4 3"/>"##,
        px(0.0),
        py(0.0),
        px(b),
        py(a)
    );

    let mut points = vec![(0.0, 0.0)];
    let (mut x, mut y) = (0.0, 0.0);
    for &n in d.runs() {
        y += n as f64;
        points.push((x, y));
        x += 1.0;
        points.push((x, y));
    }
    let coords: Vec<String> = points.iter().map(|&(x, y)| format!("{:.1},{:.1}", px(x), py(y))).collect();
    let _ = writeln!(s, r#"<polyline points="{}" fill="none" stroke="black" stroke-width="3"/>"#, coords.join(" "));

    let heights: Vec<u32> = (0..=d.pair().b()).map(|i| d.height(i)).collect();
    for l in d.laser_set() {
        let (h0, h1) = (heights[l.source as usize] as f64, heights[l.target as usize + 1] as f64);
        let hit = l.source as f64 + (h1 - h0) * b / a;
        let _ = writeln!(
            s,
            r#"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="red" stroke-width="1.5"/>"#,
            px(l.source as f64),
            py(h0),
            px(hit),
            py(h1)
        );
    }
    for i in 1..d.pair().b() {
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" font-size="12" text-anchor="middle">{i}</text>"#,
            px(i as f64) + 8.0,
            py(heights[i as usize] as f64) + 14.0
        );
    }

    let n = pq.pair().labels() as f64;
    let at = |t: f64, r: f64| {
        let angle = -PI / 2.0 + 2.0 * PI * (t - 1.0) / n;
        (disk_x + r * angle.cos(), disk_y + r * angle.sin())
    };
    let _ = writeln!(
        s,
        r##"<circle cx="{disk_x:.1}" cy="{disk_y:.1}" r="{radius:.1}" fill="none" stroke="#888"/>"##
    );
    for i in 1..pq.pair().b() {
        let (x, y) = at(i as f64, radius);
        let (lx, ly) = at(i as f64, radius + 16.0);
        let _ = writeln!(s, r#"<circle cx="{x:.1}" cy="{y:.1}" r="3" fill="black"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{lx:.1}" y="{ly:.1}" font-size="12" text-anchor="middle" dominant-baseline="middle">{i}</text>"#
        );
    }
    let draw = |s: &mut String, block: &Block, offset: f64, style: &str, color: &str| {
        let pts: Vec<(f64, f64)> = block.elems().iter().map(|&e| at(e as f64 + offset, radius)).collect();
        if pts.len() > 1 {
            let coords: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.1},{y:.1}")).collect();
            let _ = writeln!(
                s,
                r#"<polygon points="{}" fill="none" stroke="{color}" stroke-width="2"{style}/>"#,
                coords.join(" ")
            );
        }
        if block.rank() > 0 {
            let (cx, cy) = pts.iter().fold((0.0, 0.0), |(sx, sy), (x, y)| (sx + x, sy + y));
            let (cx, cy) = (cx / pts.len() as f64, cy / pts.len() as f64);
            // pull singleton labels toward the center so they stay readable
            let (tx, ty) = (cx + (disk_x - cx) * 0.18, cy + (disk_y - cy) * 0.18);
            let _ = writeln!(
                s,
                r#"<text x="{tx:.1}" y="{ty:.1}" font-size="11" fill="{color}" text-anchor="middle" dominant-baseline="middle">{}</text>"#,
                block.rank()
            );
        }
    };
    for block in pq.p() {
        draw(&mut s, block, 0.0, "", "black");
    }
    for block in pq.q() {
        draw(&mut s, block, 0.5, r#" stroke-dasharray="5 4""#, "blue");
    }
    s += "</svg>\n";
    s
}
