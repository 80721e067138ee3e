//! SVG serialization of sampled frames.

use std::fmt::Write;

use crate::compiler::timeline::{Sampled, SampledLayer, WipeDirection};
use crate::geometry::outline;
use crate::model::{CameraPose, Geometry, Point, Scene, VisualElement};

/// Fixed six-decimal formatting with negative zero folded to zero.
pub fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

/// Scene units per device pixel at zoom 1 span 1000 units across the shorter side.
pub fn unit_scale(width: u32, height: u32) -> f64 {
    f64::from(width.min(height)) / 1000.0
}

/// Scene point to device pixels.
pub fn apply_camera(p: Point, cam: &CameraPose, width: u32, height: u32) -> Point {
    let k = cam.zoom * unit_scale(width, height);
    Point::new((p.x - cam.center.x) * k + f64::from(width) / 2.0, (p.y - cam.center.y) * k + f64::from(height) / 2.0)
}

pub fn blur_radius(el: &VisualElement, cam: &CameraPose) -> f64 {
    4.0 * (f64::from(el.vars.depth) - cam.focus_depth).abs()
}

fn local_to_scene(el: &VisualElement, q: Point) -> Point {
    let v = &el.vars;
    let (s, c) = v.orientation.to_radians().sin_cos();
    let q = q * v.size;
    Point::new(q.x * c - q.y * s, q.x * s + q.y * c) + v.position
}

/// One line of SVG for one element, or `None` when it is fully transparent.
pub fn element_svg(el: &VisualElement, cam: &CameraPose, width: u32, height: u32) -> Option<String> {
    let v = &el.vars;
    if v.opacity <= 0.0 {
        return None;
    }
    let k = cam.zoom * unit_scale(width, height);
    let color = v.color.to_string();
    let mut common = format!("data-id=\"{}\" opacity=\"{}\"", el.id, num(v.opacity));
    let blur = blur_radius(el, cam);
    if blur > 0.0 {
        let _ = write!(common, " style=\"filter:blur({}px)\"", num(blur));
    }
    let at = apply_camera(v.position, cam, width, height);
    let line = match &v.shape {
        Geometry::Circle { radius } => format!(
            "<circle {common} cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{color}\"/>",
            num(at.x),
            num(at.y),
            num(radius * v.size * k)
        ),
        Geometry::TextRun { content, font_size } => {
            let mut s = format!(
                "<text {common} x=\"{}\" y=\"{}\" font-size=\"{}\" text-anchor=\"middle\" dominant-baseline=\"central\" fill=\"{color}\"",
                num(at.x),
                num(at.y),
                num(font_size * v.size * k)
            );
            if v.orientation != 0.0 {
                let _ = write!(s, " transform=\"rotate({} {} {})\"", num(v.orientation), num(at.x), num(at.y));
            }
            let _ = write!(s, ">{}</text>", escape(content));
            s
        }
        shape => {
            let (pts, closed) = outline(shape);
            let points: Vec<String> = pts
                .iter()
                .map(|q| apply_camera(local_to_scene(el, *q), cam, width, height))
                .map(|p| format!("{},{}", num(p.x), num(p.y)))
                .collect();
            if closed {
                format!("<polygon {common} points=\"{}\" fill=\"{color}\"/>", points.join(" "))
            } else {
                format!(
                    "<polyline {common} points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"{}\"/>",
                    points.join(" "),
                    num((2.0 * v.size * k).max(0.0))
                )
            }
        }
    };
    Some(line)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn reveal_rect(direction: WipeDirection, p: f64, width: u32, height: u32) -> (f64, f64, f64, f64) {
    let (w, h) = (f64::from(width), f64::from(height));
    match direction {
        WipeDirection::LeftToRight => (0.0, 0.0, w * p, h),
        WipeDirection::RightToLeft => (w * (1.0 - p), 0.0, w * p, h),
        WipeDirection::TopToBottom => (0.0, 0.0, w, h * p),
        WipeDirection::BottomToTop => (0.0, h * (1.0 - p), w, h * p),
    }
}

fn layer_svg(out: &mut String, index: usize, layer: &SampledLayer, width: u32, height: u32) {
    let scene = &layer.scene;
    let close = if let Some((dir, p)) = layer.reveal {
        let (x, y, w, h) = reveal_rect(dir, p, width, height);
        let _ = writeln!(
            out,
            "<clipPath id=\"reveal{index}\"><rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/></clipPath>",
            num(x),
            num(y),
            num(w),
            num(h)
        );
        let _ = writeln!(out, "<g clip-path=\"url(#reveal{index})\">");
        true
    } else {
        false
    };
    for el in &scene.elements {
        if let Some(line) = element_svg(el, &scene.camera, width, height) {
            out.push_str(&line);
            out.push('\n');
        }
    }
    if close {
        out.push_str("</g>\n");
    }
}

pub fn frame_svg(frame: &Sampled, width: u32, height: u32) -> String {
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n"
    );
    let _ = writeln!(out, "<rect width=\"{width}\" height=\"{height}\" fill=\"#ffffff\"/>");
    for (i, layer) in frame.layers.iter().enumerate() {
        layer_svg(&mut out, i, layer, width, height);
    }
    out.push_str("</svg>\n");
    out
}

/// A scene rendered on its own, as the first or last frame of a clip would show it.
pub fn scene_svg(scene: &Scene, width: u32, height: u32) -> String {
    frame_svg(&Sampled { layers: vec![SampledLayer { scene: scene.clone(), reveal: None }] }, width, height)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_zero_is_folded() {
        assert_eq!(num(-0.0), "0.000000");
        assert_eq!(num(-1e-9), "0.000000");
        assert_eq!(num(1.5), "1.500000");
    }

    #[test]
    fn camera_maps_center_to_viewport_center() {
        let cam = CameraPose { center: Point::new(100.0, 50.0), zoom: 2.0, focus_depth: 0.0 };
        assert_eq!(apply_camera(Point::new(100.0, 50.0), &cam, 480, 270), Point::new(240.0, 135.0));
        let p = apply_camera(Point::new(110.0, 50.0), &cam, 480, 270);
        assert!((p.x - (240.0 + 10.0 * 2.0 * 0.27)).abs() < 1e-12);
    }
}
