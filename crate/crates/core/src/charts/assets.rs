//! Bundled icon and map outlines, stored in the script format itself.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::model::{Geometry, Point};
use crate::speclang::{ast::Value, parser::parse};

const ICONS_SRC: &str = include_str!("../../assets/icons.dvs");
const WORLD_SRC: &str = include_str!("../../assets/world.dvs");

type Outlines = BTreeMap<String, Vec<Point>>;

fn load(src: &str) -> Outlines {
    let spec = parse(src).unwrap_or_else(|d| panic!("bundled asset does not parse: {d:?}"));
    let mut out = Outlines::new();
    for scene in &spec.scenes {
        for item in &scene.items {
            if let Some(Value::List(points)) = item.attrs.get("points") {
                let pts = points
                    .iter()
                    .filter_map(|p| p.as_numbers(2))
                    .map(|n| Point::new(n[0], n[1]))
                    .collect();
                out.insert(item.id.clone(), pts);
            }
        }
    }
    out
}

fn icons() -> &'static Outlines {
    static ICONS: OnceLock<Outlines> = OnceLock::new();
    ICONS.get_or_init(|| load(ICONS_SRC))
}

fn world() -> &'static Outlines {
    static WORLD: OnceLock<Outlines> = OnceLock::new();
    WORLD.get_or_init(|| load(WORLD_SRC))
}

pub fn icon(name: &str) -> Option<Geometry> {
    icons().get(name).map(|v| Geometry::IconPath { vertices: v.clone() })
}

pub fn icon_names() -> impl Iterator<Item = &'static str> {
    icons().keys().map(String::as_str)
}

/// Outline of a map region in world units (1000 wide, centered at the origin).
pub fn region(id: &str) -> Option<&'static [Point]> {
    world().get(id).map(Vec::as_slice)
}

pub fn region_names() -> impl Iterator<Item = &'static str> {
    world().keys().map(String::as_str)
}
