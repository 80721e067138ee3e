//! Outline extraction, arc-length resampling and cyclic alignment.
//!
//! Shared by shape comparison in `model` and shape morphing in `compiler`.

use crate::model::{Geometry, Point};

/// Vertices used to approximate a full circle before resampling.
const CIRCLE_DENSITY: usize = 256;
/// Maximum angular step (degrees) when flattening arcs.
const ARC_STEP: f64 = 1.0;

/// Point on a circle of `radius` at `deg` degrees clockwise from 12 o'clock
/// (screen coordinates, y down).
pub fn polar(radius: f64, deg: f64) -> Point {
    let r = deg.to_radians();
    Point::new(radius * r.sin(), -radius * r.cos())
}

fn arc(radius: f64, start: f64, end: f64, out: &mut Vec<Point>) {
    let steps = (((end - start).abs() / ARC_STEP).ceil() as usize).max(1);
    for i in 0..=steps {
        let t = i as f64 / steps as f64;
        out.push(polar(radius, start + (end - start) * t));
    }
}

/// Text runs are approximated by their box: fixed advance of 0.6 em per char.
pub fn text_box(content: &str, font_size: f64) -> (f64, f64) {
    (0.6 * font_size * content.chars().count().max(1) as f64, font_size)
}

/// Flattened outline of a geometry and whether it is closed.
pub fn outline(geom: &Geometry) -> (Vec<Point>, bool) {
    match geom {
        Geometry::Polygon { vertices } | Geometry::IconPath { vertices } => (vertices.clone(), true),
        Geometry::Polyline { vertices } => (vertices.clone(), false),
        Geometry::Circle { radius } => {
            let pts = (0..CIRCLE_DENSITY)
                .map(|i| polar(*radius, 360.0 * i as f64 / CIRCLE_DENSITY as f64))
                .collect();
            (pts, true)
        }
        Geometry::ArcSector { radius, inner_radius, start, end } => {
            let mut pts = Vec::new();
            arc(*radius, *start, *end, &mut pts);
            if *inner_radius > 0.0 {
                arc(*inner_radius, *end, *start, &mut pts);
            } else if end - start < 360.0 {
                pts.push(Point::ORIGIN);
            }
            (pts, true)
        }
        Geometry::Rectangle { width, height } => {
            let (w, h) = (width / 2.0, height / 2.0);
            (vec![Point::new(-w, -h), Point::new(w, -h), Point::new(w, h), Point::new(-w, h)], true)
        }
        Geometry::TextRun { content, font_size } => {
            let (w, h) = text_box(content, *font_size);
            let (w, h) = (w / 2.0, h / 2.0);
            (vec![Point::new(-w, -h), Point::new(w, -h), Point::new(w, h), Point::new(-w, h)], true)
        }
    }
}

/// Largest distance from the anchor to the outline.
pub fn bounding_radius(geom: &Geometry) -> f64 {
    match geom {
        Geometry::Circle { radius } => *radius,
        _ => outline(geom).0.iter().map(|p| p.norm()).fold(0.0, f64::max),
    }
}

/// Resamples a vertex list to `n` points evenly spaced by arc length.
///
/// Closed outlines start at vertex 0 and do not repeat it at the end; open
/// outlines include both endpoints.
pub fn resample_points(vertices: &[Point], closed: bool, n: usize) -> Vec<Point> {
    if vertices.is_empty() || n == 0 {
        return vec![Point::ORIGIN; n];
    }
    let mut path: Vec<Point> = vertices.to_vec();
    if closed {
        path.push(vertices[0]);
    }
    let mut cumulative = Vec::with_capacity(path.len());
    let mut total = 0.0;
    cumulative.push(0.0);
    for w in path.windows(2) {
        total += w[0].distance(w[1]);
        cumulative.push(total);
    }
    if total <= 0.0 {
        return vec![vertices[0]; n];
    }
    let spacing = if closed { total / n as f64 } else if n > 1 { total / (n - 1) as f64 } else { 0.0 };
    let mut out = Vec::with_capacity(n);
    let mut seg = 0;
    for i in 0..n {
        let target = if !closed && i == n - 1 { total } else { spacing * i as f64 };
        while seg + 1 < cumulative.len() - 1 && cumulative[seg + 1] < target {
            seg += 1;
        }
        let (s0, s1) = (cumulative[seg], cumulative[seg + 1]);
        let t = if s1 > s0 { ((target - s0) / (s1 - s0)).clamp(0.0, 1.0) } else { 0.0 };
        out.push(path[seg] + (path[seg + 1] - path[seg]) * t);
    }
    out
}

pub fn resample(geom: &Geometry, n: usize) -> Vec<Point> {
    let (pts, closed) = outline(geom);
    resample_points(&pts, closed, n)
}

/// Rotates `b` cyclically so that the summed squared distance to `a` is minimal.
/// Ties keep the smallest rotation.
pub fn align_cyclic(a: &[Point], b: &[Point]) -> Vec<Point> {
    let n = b.len();
    if n == 0 || a.len() != n {
        return b.to_vec();
    }
    let mut best = (f64::INFINITY, 0);
    for shift in 0..n {
        let cost: f64 = (0..n)
            .map(|i| {
                let q = b[(i + shift) % n];
                let d = a[i] - q;
                d.x * d.x + d.y * d.y
            })
            .sum();
        if cost < best.0 {
            best = (cost, shift);
        }
    }
    (0..n).map(|i| b[(i + best.1) % n]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polar_starts_at_twelve_and_turns_clockwise() {
        let top = polar(1.0, 0.0);
        assert!((top.x).abs() < 1e-12 && (top.y + 1.0).abs() < 1e-12);
        let right = polar(1.0, 90.0);
        assert!((right.x - 1.0).abs() < 1e-12 && right.y.abs() < 1e-12);
    }

    #[test]
    fn square_resamples_evenly() {
        let sq = Geometry::Rectangle { width: 2.0, height: 2.0 };
        let pts = resample(&sq, 8);
        assert_eq!(pts.len(), 8);
        // perimeter 8 -> spacing 1, starting at the top-left corner
        assert_eq!(pts[0], Point::new(-1.0, -1.0));
        assert_eq!(pts[1], Point::new(0.0, -1.0));
        assert_eq!(pts[2], Point::new(1.0, -1.0));
        assert_eq!(pts[4], Point::new(1.0, 1.0));
    }

    #[test]
    fn open_polyline_keeps_endpoints() {
        let line = [Point::new(0.0, 0.0), Point::new(10.0, 0.0)];
        let pts = resample_points(&line, false, 5);
        assert_eq!(pts[0], Point::new(0.0, 0.0));
        assert_eq!(pts[4], Point::new(10.0, 0.0));
        assert!((pts[2].x - 5.0).abs() < 1e-12);
    }

    #[test]
    fn alignment_undoes_a_rotation() {
        let circle = resample(&Geometry::Circle { radius: 3.0 }, 64);
        let mut rotated = circle.clone();
        rotated.rotate_left(17);
        let aligned = align_cyclic(&circle, &rotated);
        for (p, q) in circle.iter().zip(&aligned) {
            assert!(p.distance(*q) < 1e-12);
        }
    }

    #[test]
    fn bounding_radius_of_rect_is_half_diagonal() {
        let r = bounding_radius(&Geometry::Rectangle { width: 6.0, height: 8.0 });
        assert!((r - 5.0).abs() < 1e-12);
    }
}
