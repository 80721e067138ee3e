//! Expansion of element and chart declarations into concrete scene elements.

pub mod assets;
mod layout;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::model::{
    DataBinding, ElementKind, Geometry, Point, Rgb, Scene, VisualElement, VisualVariables,
};
use crate::speclang::ast::{Attrs, Dataset, ItemKind, SceneDecl, Value, VideoSpec};

pub use layout::layout_chart;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("`{item}`: {message}")]
pub struct LayoutError {
    pub item: String,
    pub message: String,
}

impl LayoutError {
    pub fn new(item: &str, message: impl Into<String>) -> Self {
        LayoutError { item: item.to_string(), message: message.into() }
    }
}

const COMMON: &[&str] = &["at", "size", "color", "rotate", "opacity", "depth", "bind", "shape"];

fn shape_attrs(shape: &str) -> &'static [&'static str] {
    match shape {
        "circle" => &["r"],
        "rect" => &["w", "h"],
        "polygon" | "polyline" => &["points"],
        "sector" => &["r", "start", "end", "inner"],
        "text" => &["text", "font"],
        "icon" => &["icon", "points"],
        _ => &[],
    }
}

pub fn points_of(v: &Value) -> Vec<Point> {
    match v {
        Value::List(items) => items.iter().filter_map(|p| p.as_numbers(2)).map(|n| Point::new(n[0], n[1])).collect(),
        _ => Vec::new(),
    }
}

fn num(attrs: &Attrs, name: &str) -> Option<f64> {
    attrs.get(name).and_then(Value::as_number)
}

fn need(attrs: &Attrs, name: &str, shape: &str) -> Result<f64, String> {
    num(attrs, name).ok_or_else(|| format!("missing `{name}` for shape {shape}"))
}

/// Geometry named by an element's attributes.
pub fn geometry_of(attrs: &Attrs) -> Result<Geometry, String> {
    let shape = match attrs.get("shape").and_then(Value::as_ident) {
        Some(s) => s,
        None if attrs.contains_key("text") => "text",
        None if attrs.contains_key("icon") => "icon",
        None => return Err("missing `shape`".into()),
    };
    let allowed = shape_attrs(shape);
    if let Some(extra) = attrs.keys().find(|k| !COMMON.contains(&k.as_str()) && !allowed.contains(&k.as_str())) {
        return Err(format!("attribute `{extra}` does not apply to shape {shape}"));
    }
    let geom = match shape {
        "circle" => Geometry::Circle { radius: need(attrs, "r", shape)? },
        "rect" => Geometry::Rectangle { width: need(attrs, "w", shape)?, height: need(attrs, "h", shape)? },
        "polygon" | "polyline" => {
            let vertices = attrs.get("points").map(points_of).ok_or_else(|| format!("missing `points` for shape {shape}"))?;
            if shape == "polygon" {
                Geometry::Polygon { vertices }
            } else {
                Geometry::Polyline { vertices }
            }
        }
        "sector" => Geometry::ArcSector {
            radius: need(attrs, "r", shape)?,
            inner_radius: num(attrs, "inner").unwrap_or(0.0),
            start: need(attrs, "start", shape)?,
            end: need(attrs, "end", shape)?,
        },
        "text" => Geometry::TextRun {
            content: attrs.get("text").and_then(Value::as_str).ok_or("missing `text` for shape text")?.to_string(),
            font_size: num(attrs, "font").unwrap_or(16.0),
        },
        "icon" => match (attrs.get("icon"), attrs.get("points")) {
            (Some(_), Some(_)) => return Err("give either `icon` or `points`, not both".into()),
            (Some(name), None) => {
                let name = name.as_ident().unwrap_or_default();
                assets::icon(name).ok_or_else(|| format!("unknown icon `{name}`"))?
            }
            (None, Some(p)) => Geometry::IconPath { vertices: points_of(p) },
            (None, None) => return Err("missing `icon` or `points` for shape icon".into()),
        },
        other => return Err(format!("unknown shape `{other}`")),
    };
    geom.check().map_err(|e| e.to_string())?;
    Ok(geom)
}

/// Validates element attributes without building the element.
pub fn check_element_attrs(attrs: &Attrs) -> Result<(), String> {
    geometry_of(attrs).map(|_| ())
}

pub fn build_element(kind: ElementKind, id: &str, attrs: &Attrs) -> Result<VisualElement, LayoutError> {
    let shape = geometry_of(attrs).map_err(|m| LayoutError::new(id, m))?;
    let mut vars = VisualVariables::new(shape);
    if let Some(p) = attrs.get("at").and_then(|v| v.as_numbers(2)) {
        vars.position = Point::new(p[0], p[1]);
    }
    vars.size = num(attrs, "size").unwrap_or(1.0);
    vars.color = attrs.get("color").and_then(Value::as_color).unwrap_or(Rgb::BLACK);
    vars.orientation = num(attrs, "rotate").unwrap_or(0.0);
    vars.opacity = num(attrs, "opacity").unwrap_or(1.0);
    vars.depth = num(attrs, "depth").unwrap_or(0.0) as u32;
    let mut el = VisualElement::new(id, kind, vars.normalized());
    if let Some(Value::Tuple(t)) = attrs.get("bind") {
        if let (Some(ds), Some(row), Some(field)) = (t[0].as_ident(), t[1].as_key(), t[2].as_ident()) {
            el = el.with_binding(DataBinding { dataset: ds.into(), row, field: field.into() });
        }
    }
    Ok(el)
}

fn dataset_for<'a>(spec: &'a VideoSpec, id: &str, attrs: &Attrs) -> Result<&'a Dataset, LayoutError> {
    let name = attrs.get("data").and_then(Value::as_ident).ok_or_else(|| LayoutError::new(id, "missing `data`"))?;
    spec.dataset(name).ok_or_else(|| LayoutError::new(id, format!("unknown dataset `{name}`")))
}

/// Expands a scene declaration into a concrete scene.
pub fn build_scene(spec: &VideoSpec, decl: &SceneDecl) -> Result<Scene, LayoutError> {
    let mut scene = Scene::new(decl.id.clone());
    scene.camera = decl.camera;
    scene.clip_form = decl.form;
    scene.vis_type = decl.vis;
    for item in &decl.items {
        match item.kind {
            ItemKind::Element(kind) => scene.elements.push(build_element(kind, &item.id, &item.attrs)?),
            ItemKind::Chart(vis) => {
                let data = dataset_for(spec, &item.id, &item.attrs)?;
                scene.elements.extend(layout_chart(vis, &item.id, &item.attrs, data)?);
            }
        }
    }
    let mut seen = BTreeSet::new();
    for e in &scene.elements {
        if !seen.insert(e.id.as_str()) {
            return Err(LayoutError::new(&e.id, format!("element id `{}` occurs twice in scene `{}`", e.id, decl.id)));
        }
    }
    Ok(scene)
}

/// Every scene of the document, in declaration order.
pub fn build_scenes(spec: &VideoSpec) -> Result<Vec<Scene>, LayoutError> {
    spec.scenes.iter().map(|d| build_scene(spec, d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn attrs(pairs: &[(&str, Value)]) -> Attrs {
        pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    #[test]
    fn shape_specific_attributes_are_enforced() {
        let a = attrs(&[("shape", Value::Ident("circle".into())), ("w", Value::Number(3.0))]);
        assert!(geometry_of(&a).unwrap_err().contains("does not apply"));
        let a = attrs(&[("shape", Value::Ident("circle".into()))]);
        assert!(geometry_of(&a).unwrap_err().starts_with("missing"));
    }

    #[test]
    fn text_shape_is_implied() {
        let a = attrs(&[("text", Value::Str("hi".into()))]);
        assert_eq!(geometry_of(&a).unwrap(), Geometry::TextRun { content: "hi".into(), font_size: 16.0 });
    }

    #[test]
    fn named_icons_resolve() {
        let a = attrs(&[("icon", Value::Ident("plane".into()))]);
        assert!(matches!(geometry_of(&a).unwrap(), Geometry::IconPath { .. }));
        let a = attrs(&[("icon", Value::Ident("submarine".into()))]);
        assert!(geometry_of(&a).is_err());
    }
}
