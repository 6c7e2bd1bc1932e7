//! ASCII drawings of principal Newton polygons.
//!
//! Legend: `X` vertex counted by the φ-index, `x` other counted lattice point,
//! `O` vertex on an axis, `o` point of the cloud that is not counted, `.`
//! anything else.

use std::collections::HashSet;
use std::fmt::Write;

use orelab_core::polygon::{NewtonPolygon, Point};

/// Wider polygons are summarised without a grid.
pub const MAX_GRID_WIDTH: usize = 120;
pub const MAX_GRID_HEIGHT: u64 = 60;

pub const EMPTY_POLYGON: &str = "no sides of negative slope";

pub fn render_polygon(polygon: &NewtonPolygon) -> String {
    if polygon.is_empty() {
        return format!("{EMPTY_POLYGON}\n");
    }
    let mut out = String::new();
    let counted: HashSet<Point> = polygon.counted_points().into_iter().collect();
    let vertices: HashSet<Point> = polygon.vertices.iter().copied().collect();
    let cloud: HashSet<Point> = polygon.points.iter().copied().collect();
    let width = polygon.sides.last().unwrap().end.x;
    let height = polygon.sides.first().unwrap().start.y;

    if width <= MAX_GRID_WIDTH && height <= MAX_GRID_HEIGHT {
        for y in (0..=height).rev() {
            let _ = write!(out, "{y:>4} |");
            for x in 0..=width {
                let pt = Point::new(x, y);
                let c = match (vertices.contains(&pt), counted.contains(&pt)) {
                    (true, true) => 'X',
                    (true, false) => 'O',
                    (false, true) => 'x',
                    (false, false) if cloud.contains(&pt) => 'o',
                    _ => '.',
                };
                out.push(' ');
                out.push(c);
            }
            out.push('\n');
        }
        let _ = write!(out, "     +");
        out.push_str(&"--".repeat(width + 1));
        out.push('\n');
        let _ = write!(out, "      ");
        for x in 0..=width {
            let _ = write!(out, " {}", x % 10);
        }
        out.push('\n');
    } else {
        let _ = writeln!(out, "(grid omitted: {} × {} exceeds the drawing area)", width + 1, height + 1);
    }

    let verts: Vec<String> = polygon.vertices.iter().map(Point::to_string).collect();
    let _ = writeln!(out, "vertices: {}", verts.join(" "));
    for (k, s) in polygon.sides.iter().enumerate() {
        let _ = writeln!(
            out,
            "side {}: {} -- {}  slope {}  length {}  height {}  degree {}",
            k + 1,
            s.start,
            s.end,
            s.slope(),
            s.length,
            s.height,
            s.degree
        );
    }
    let deg = polygon.phi.degree().unwrap_or(0);
    let _ = writeln!(
        out,
        "counted points: {}  ind_phi = {} * {} = {}",
        counted.len(),
        counted.len(),
        deg,
        polygon.index()
    );
    out
}

/// Number of `x`/`X` marks in the grid part of a rendering.
pub fn count_marks(rendering: &str) -> usize {
    rendering
        .lines()
        .filter_map(|l| l.split_once('|'))
        .filter(|(label, _)| label.trim().parse::<u64>().is_ok())
        .map(|(_, row)| row.chars().filter(|&c| c == 'x' || c == 'X').count())
        .sum()
}
