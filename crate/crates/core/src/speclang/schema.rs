//! Attribute names and value types accepted in each context.

use super::ast::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ty {
    Num,
    PosNum,
    NonNegNum,
    /// Number in [0, 1].
    Unit,
    NonNegInt,
    PosInt,
    Str,
    Ident,
    OneOf(&'static [&'static str]),
    Color,
    /// `(x, y)`
    Point,
    /// `[(x, y) ...]`
    Points,
    /// `(dataset, row, field)`
    Binding,
    /// `(cx, cy, zoom, focus)`
    Camera,
    /// `[(key, #rrggbb) ...]`
    ColorMap,
}

pub const SHAPES: &[&str] = &["circle", "icon", "polygon", "polyline", "rect", "sector", "text"];
pub const DIRECTIONS: &[&str] = &["bottom_to_top", "left_to_right", "right_to_left", "top_to_bottom"];
pub const EASINGS: &[&str] = &["ease_in", "ease_in_out", "ease_out", "linear"];
pub const FORMS: &[&str] = &["non_visualization", "visualization"];
pub const VIS_TYPES: &[&str] =
    &["area", "bar", "diagram", "donut", "line", "map", "number_icon_text", "pictograph", "pie", "scatter"];
pub const RELATIONS: &[&str] = &["contrast", "none", "progress", "question_answer", "supplement", "whole_part"];

pub fn header_attr(name: &str) -> Option<Ty> {
    Some(match name {
        "fps" | "width" | "height" => Ty::PosInt,
        _ => return None,
    })
}

pub fn data_attr(name: &str) -> Option<Ty> {
    (name == "key").then_some(Ty::Ident)
}

pub fn scene_attr(name: &str) -> Option<Ty> {
    Some(match name {
        "camera" => Ty::Camera,
        "form" => Ty::OneOf(FORMS),
        "vis" => Ty::OneOf(VIS_TYPES),
        _ => return None,
    })
}

pub fn element_attr(name: &str) -> Option<Ty> {
    Some(match name {
        "at" => Ty::Point,
        "size" => Ty::NonNegNum,
        "color" => Ty::Color,
        "rotate" => Ty::Num,
        "opacity" => Ty::Unit,
        "depth" => Ty::NonNegInt,
        "bind" => Ty::Binding,
        "shape" => Ty::OneOf(SHAPES),
        "r" | "w" | "h" | "font" => Ty::PosNum,
        "inner" => Ty::NonNegNum,
        "start" | "end" => Ty::Num,
        "points" => Ty::Points,
        "text" => Ty::Str,
        "icon" => Ty::Ident,
        _ => return None,
    })
}

pub fn chart_attr(name: &str) -> Option<Ty> {
    Some(match name {
        "data" | "category" | "value" | "x" | "y" | "region" | "from" | "to" | "label" | "icon" => Ty::Ident,
        "at" => Ty::Point,
        "w" | "h" | "r" | "unit" | "per" | "font" => Ty::PosNum,
        "inner" => Ty::Unit,
        "color" => Ty::Color,
        "colors" => Ty::ColorMap,
        "depth" => Ty::NonNegInt,
        "title" => Ty::Str,
        _ => return None,
    })
}

pub fn clip_attr(name: &str) -> Option<Ty> {
    (name == "relation").then_some(Ty::OneOf(RELATIONS))
}

pub fn transition_attr(name: &str) -> Option<Ty> {
    Some(match name {
        "duration" => Ty::PosNum,
        "easing" => Ty::OneOf(EASINGS),
        "item" | "background" | "focus" => Ty::Ident,
        "direction" => Ty::OneOf(DIRECTIONS),
        _ => return None,
    })
}

fn is_key(v: &Value) -> bool {
    matches!(v, Value::Ident(_) | Value::Str(_) | Value::Number(_))
}

fn is_point(v: &Value) -> bool {
    v.as_numbers(2).is_some()
}

/// Checks a value against a type, returning a description of what was expected.
pub fn check(ty: Ty, v: &Value) -> Result<(), String> {
    let ok = match ty {
        Ty::Num => v.as_number().is_some(),
        Ty::PosNum => v.as_number().is_some_and(|n| n > 0.0),
        Ty::NonNegNum => v.as_number().is_some_and(|n| n >= 0.0),
        Ty::Unit => v.as_number().is_some_and(|n| (0.0..=1.0).contains(&n)),
        Ty::NonNegInt => v.as_number().is_some_and(|n| n >= 0.0 && n.fract() == 0.0 && n <= u32::MAX as f64),
        Ty::PosInt => v.as_number().is_some_and(|n| n >= 1.0 && n.fract() == 0.0 && n <= u32::MAX as f64),
        Ty::Str => v.as_str().is_some(),
        Ty::Ident => v.as_ident().is_some(),
        Ty::OneOf(set) => v.as_ident().is_some_and(|s| set.contains(&s)),
        Ty::Color => v.as_color().is_some(),
        Ty::Point => is_point(v),
        Ty::Points => matches!(v, Value::List(items) if items.iter().all(is_point)),
        Ty::Binding => matches!(v, Value::Tuple(t) if t.len() == 3 && t[0].as_ident().is_some() && is_key(&t[1]) && t[2].as_ident().is_some()),
        Ty::Camera => v.as_numbers(4).is_some(),
        Ty::ColorMap => matches!(v, Value::List(items) if items.iter().all(|i| matches!(i, Value::Tuple(t) if t.len() == 2 && is_key(&t[0]) && t[1].as_color().is_some()))),
    };
    if ok {
        Ok(())
    } else {
        Err(describe(ty))
    }
}

pub fn describe(ty: Ty) -> String {
    match ty {
        Ty::Num => "a number".into(),
        Ty::PosNum => "a positive number".into(),
        Ty::NonNegNum => "a non-negative number".into(),
        Ty::Unit => "a number between 0 and 1".into(),
        Ty::NonNegInt => "a non-negative integer".into(),
        Ty::PosInt => "a positive integer".into(),
        Ty::Str => "a string".into(),
        Ty::Ident => "an identifier".into(),
        Ty::OneOf(set) => format!("one of {}", set.join(", ")),
        Ty::Color => "a color #rrggbb".into(),
        Ty::Point => "a point (x, y)".into(),
        Ty::Points => "a list of points [(x, y) ...]".into(),
        Ty::Binding => "a binding (dataset, row, field)".into(),
        Ty::Camera => "a camera pose (cx, cy, zoom, focus)".into(),
        Ty::ColorMap => "a color map [(key, #rrggbb) ...]".into(),
    }
}
