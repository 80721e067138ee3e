use std::collections::BTreeMap;

use crate::geometry::polar;
use crate::model::{DataBinding, ElementKind, Geometry, Point, Rgb, VisType, VisualElement, VisualVariables};
use crate::speclang::ast::{Attrs, DataValue, Dataset, Row, Value};

use super::{assets, LayoutError};

pub const PALETTE: [Rgb; 8] = [
    Rgb(0x4e, 0x79, 0xa7),
    Rgb(0xf2, 0x8e, 0x2b),
    Rgb(0xe1, 0x57, 0x59),
    Rgb(0x76, 0xb7, 0xb2),
    Rgb(0x59, 0xa1, 0x4f),
    Rgb(0xed, 0xc9, 0x48),
    Rgb(0xb0, 0x7a, 0xa1),
    Rgb(0x9c, 0x75, 0x5f),
];

const DEFAULT_W: f64 = 400.0;
const DEFAULT_H: f64 = 300.0;
const LABEL_FONT: f64 = 14.0;
const AXIS_COLOR: Rgb = Rgb(0x55, 0x55, 0x55);

/// Identifier-safe form of a data key.
pub fn slug(key: &str) -> String {
    let s: String = key
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c.to_ascii_lowercase() } else { '_' })
        .collect();
    if s.is_empty() {
        "_".into()
    } else {
        s
    }
}

struct Ctx<'a> {
    id: &'a str,
    attrs: &'a Attrs,
    data: &'a Dataset,
}

impl<'a> Ctx<'a> {
    fn err(&self, msg: impl Into<String>) -> LayoutError {
        LayoutError::new(self.id, msg)
    }

    fn num(&self, name: &str, default: f64) -> f64 {
        self.attrs.get(name).and_then(Value::as_number).unwrap_or(default)
    }

    fn anchor(&self) -> Point {
        self.attrs.get("at").and_then(|v| v.as_numbers(2)).map_or(Point::ORIGIN, |n| Point::new(n[0], n[1]))
    }

    fn depth(&self) -> u32 {
        self.num("depth", 0.0) as u32
    }

    fn role(&self, name: &str) -> Result<&'a str, LayoutError> {
        self.attrs
            .get(name)
            .and_then(Value::as_ident)
            .ok_or_else(|| self.err(format!("chart needs the `{name}` field role")))
    }

    fn opt_role(&self, name: &str) -> Option<&'a str> {
        self.attrs.get(name).and_then(Value::as_ident)
    }

    fn key(&self, row: &Row) -> String {
        self.data.row_key(row).unwrap_or_default()
    }

    fn text_field(&self, row: &Row, field: &str) -> Result<String, LayoutError> {
        row.get(field).map(DataValue::as_key).ok_or_else(|| self.err(format!("row `{}` lacks field `{field}`", self.key(row))))
    }

    fn number(&self, row: &Row, field: &str) -> Result<f64, LayoutError> {
        match row.get(field) {
            Some(DataValue::Number(n)) => Ok(*n),
            Some(DataValue::Text(_)) => Err(self.err(format!("field `{field}` of row `{}` is not numeric", self.key(row)))),
            None => Err(self.err(format!("row `{}` lacks field `{field}`", self.key(row)))),
        }
    }

    fn non_negative(&self, row: &Row, field: &str) -> Result<f64, LayoutError> {
        let v = self.number(row, field)?;
        if v < 0.0 {
            return Err(self.err(format!("negative value {v} in row `{}`", self.key(row))));
        }
        Ok(v)
    }

    fn binding(&self, row: &Row, field: &str) -> DataBinding {
        DataBinding { dataset: self.data.id.clone(), row: self.key(row), field: field.to_string() }
    }

    /// Per-key color override, then the single `color`, then the palette.
    fn color(&self, key: &str, index: usize) -> Rgb {
        if let Some(Value::List(map)) = self.attrs.get("colors") {
            for entry in map {
                if let Value::Tuple(t) = entry {
                    if t[0].as_key().as_deref() == Some(key) {
                        if let Some(c) = t[1].as_color() {
                            return c;
                        }
                    }
                }
            }
        }
        self.attrs.get("color").and_then(Value::as_color).unwrap_or(PALETTE[index % PALETTE.len()])
    }

    fn mark(&self, suffix: &str, kind: ElementKind, shape: Geometry, at: Point, color: Rgb) -> VisualElement {
        let mut v = VisualVariables::new(shape);
        v.position = at;
        v.color = color;
        v.depth = self.depth();
        VisualElement::new(format!("{}_{}", self.id, suffix), kind, v)
    }

    fn label(&self, suffix: &str, text: String, at: Point) -> VisualElement {
        let font = self.num("font", LABEL_FONT);
        self.mark(suffix, ElementKind::Label, Geometry::TextRun { content: text, font_size: font }, at, Rgb::BLACK)
    }

    fn axis(&self, suffix: &str, from: Point, to: Point) -> VisualElement {
        let mid = (from + to) * 0.5;
        let shape = Geometry::Polyline { vertices: vec![from - mid, to - mid] };
        self.mark(suffix, ElementKind::Axis, shape, mid, AXIS_COLOR)
    }

    /// Rows sorted by the given field's text, or by row key.
    fn sorted_rows(&self, field: Option<&str>) -> Result<Vec<&'a Row>, LayoutError> {
        let mut keyed = Vec::with_capacity(self.data.rows.len());
        for row in &self.data.rows {
            let k = match field {
                Some(f) => self.text_field(row, f)?,
                None => self.key(row),
            };
            keyed.push((k, row));
        }
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(keyed.into_iter().map(|(_, r)| r).collect())
    }

    fn title(&self, out: &mut Vec<VisualElement>, top: Point) {
        if let Some(t) = self.attrs.get("title").and_then(Value::as_str) {
            let font = self.num("font", LABEL_FONT) * 1.4;
            out.push(self.mark("title", ElementKind::Text, Geometry::TextRun { content: t.into(), font_size: font }, top, Rgb::BLACK));
        }
    }
}

/// Lays out one chart declaration over its dataset.
pub fn layout_chart(vis: VisType, id: &str, attrs: &Attrs, data: &Dataset) -> Result<Vec<VisualElement>, LayoutError> {
    let c = Ctx { id, attrs, data };
    if data.rows.is_empty() {
        return Err(c.err(format!("dataset `{}` is empty", data.id)));
    }
    match vis {
        VisType::Pie => sectors(&c, 0.0),
        VisType::Donut => {
            let ratio = c.num("inner", 0.5);
            sectors(&c, ratio)
        }
        VisType::BarChart => bars(&c),
        VisType::ProportionalArea => areas(&c),
        VisType::LineChart => xy(&c, true),
        VisType::ScatterPlot => xy(&c, false),
        VisType::Pictograph => pictograph(&c),
        VisType::NumberIconText => number_icon_text(&c),
        VisType::Map => map(&c),
        VisType::Diagram => diagram(&c),
    }
}

fn sectors(c: &Ctx, inner_ratio: f64) -> Result<Vec<VisualElement>, LayoutError> {
    let cat = c.role("category")?;
    let val = c.role("value")?;
    let rows = c.sorted_rows(Some(cat))?;
    let values = rows.iter().map(|r| c.non_negative(r, val)).collect::<Result<Vec<_>, _>>()?;
    let total: f64 = values.iter().sum();
    if total <= 0.0 {
        return Err(c.err("values sum to zero"));
    }
    let r = c.num("r", 100.0);
    let at = c.anchor();
    let mut out = Vec::new();
    let mut cum = 0.0;
    for (i, (row, v)) in rows.iter().zip(&values).enumerate() {
        let start = cum / total * 360.0;
        cum += v;
        let end = if i + 1 == rows.len() { 360.0 } else { cum / total * 360.0 };
        if end <= start {
            continue;
        }
        let key = c.key(row);
        let category = c.text_field(row, cat)?;
        let shape = Geometry::ArcSector { radius: r, inner_radius: r * inner_ratio, start, end };
        out.push(c.mark(&slug(&key), ElementKind::ChartMark, shape, at, c.color(&category, i)).with_binding(c.binding(row, val)));
        if let Some(lf) = c.opt_role("label") {
            let mid = (start + end) / 2.0;
            let p = at + polar(r * 1.2, mid);
            out.push(c.label(&format!("{}_label", slug(&key)), c.text_field(row, lf)?, p));
        }
    }
    c.title(&mut out, at + Point::new(0.0, -r * 1.4));
    Ok(out)
}

fn bars(c: &Ctx) -> Result<Vec<VisualElement>, LayoutError> {
    let cat = c.role("category")?;
    let val = c.role("value")?;
    let rows = c.sorted_rows(Some(cat))?;
    let values = rows.iter().map(|r| c.non_negative(r, val)).collect::<Result<Vec<_>, _>>()?;
    let max = values.iter().copied().fold(0.0, f64::max);
    if max <= 0.0 {
        return Err(c.err("all values are zero"));
    }
    let (w, h, at) = (c.num("w", DEFAULT_W), c.num("h", DEFAULT_H), c.anchor());
    let slot = w / rows.len() as f64;
    let baseline = at.y + h / 2.0;
    let mut out = vec![c.axis("axis", Point::new(at.x - w / 2.0, baseline), Point::new(at.x + w / 2.0, baseline))];
    for (i, (row, v)) in rows.iter().zip(&values).enumerate() {
        let key = c.key(row);
        let x = at.x - w / 2.0 + slot * (i as f64 + 0.5);
        let height = v / max * h;
        if height > 0.0 {
            let shape = Geometry::Rectangle { width: slot * 0.8, height };
            let category = c.text_field(row, cat)?;
            let p = Point::new(x, baseline - height / 2.0);
            out.push(c.mark(&slug(&key), ElementKind::ChartMark, shape, p, c.color(&category, i)).with_binding(c.binding(row, val)));
        }
        if let Some(lf) = c.opt_role("label") {
            out.push(c.label(&format!("{}_label", slug(&key)), c.text_field(row, lf)?, Point::new(x, baseline + LABEL_FONT)));
        }
    }
    c.title(&mut out, Point::new(at.x, at.y - h / 2.0 - 2.0 * LABEL_FONT));
    Ok(out)
}

fn areas(c: &Ctx) -> Result<Vec<VisualElement>, LayoutError> {
    let val = c.role("value")?;
    let rows = c.sorted_rows(None)?;
    let values = rows.iter().map(|r| c.non_negative(r, val)).collect::<Result<Vec<_>, _>>()?;
    let unit = match c.attrs.get("unit").and_then(Value::as_number) {
        Some(u) => u,
        None => values.iter().copied().fold(0.0, f64::max),
    };
    if unit <= 0.0 {
        return Err(c.err("all values are zero"));
    }
    let (w, r, at) = (c.num("w", DEFAULT_W), c.num("r", 50.0), c.anchor());
    let slot = w / rows.len() as f64;
    let mut out = Vec::new();
    for (i, (row, v)) in rows.iter().zip(&values).enumerate() {
        let key = c.key(row);
        let x = if rows.len() == 1 { at.x } else { at.x - w / 2.0 + slot * (i as f64 + 0.5) };
        let mut m = c.mark(&slug(&key), ElementKind::ChartMark, Geometry::Circle { radius: r }, Point::new(x, at.y), c.color(&key, i));
        m.vars.size = (v / unit).sqrt();
        out.push(m.with_binding(c.binding(row, val)));
        if let Some(lf) = c.opt_role("label") {
            out.push(c.label(&format!("{}_label", slug(&key)), c.text_field(row, lf)?, Point::new(x, at.y + r + LABEL_FONT)));
        }
    }
    c.title(&mut out, Point::new(at.x, at.y - r - 2.0 * LABEL_FONT));
    Ok(out)
}

fn span_of(values: &[f64]) -> (f64, f64) {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (lo, hi)
}

fn affine(v: f64, (lo, hi): (f64, f64), a: f64, b: f64) -> f64 {
    if hi > lo {
        a + (v - lo) / (hi - lo) * (b - a)
    } else {
        (a + b) / 2.0
    }
}

fn xy(c: &Ctx, connect: bool) -> Result<Vec<VisualElement>, LayoutError> {
    let xf = c.role("x")?;
    let yf = c.role("y")?;
    let mut rows: Vec<(&Row, f64, f64)> = Vec::new();
    for row in c.sorted_rows(None)? {
        rows.push((row, c.number(row, xf)?, c.number(row, yf)?));
    }
    if connect {
        rows.sort_by(|a, b| a.1.total_cmp(&b.1));
    }
    let (w, h, at) = (c.num("w", DEFAULT_W), c.num("h", DEFAULT_H), c.anchor());
    let xs = span_of(&rows.iter().map(|r| r.1).collect::<Vec<_>>());
    let ys = span_of(&rows.iter().map(|r| r.2).collect::<Vec<_>>());
    let (left, right, top, bottom) = (at.x - w / 2.0, at.x + w / 2.0, at.y - h / 2.0, at.y + h / 2.0);
    let mut out = vec![
        c.axis("xaxis", Point::new(left, bottom), Point::new(right, bottom)),
        c.axis("yaxis", Point::new(left, bottom), Point::new(left, top)),
    ];
    let pts: Vec<Point> = rows.iter().map(|r| Point::new(affine(r.1, xs, left, right), affine(r.2, ys, bottom, top))).collect();
    if connect && pts.len() >= 2 {
        let mid = pts.iter().fold(Point::ORIGIN, |s, p| s + *p) * (1.0 / pts.len() as f64);
        let shape = Geometry::Polyline { vertices: pts.iter().map(|p| *p - mid).collect() };
        out.push(c.mark("line", ElementKind::ChartMark, shape, mid, c.color("line", 0)));
    }
    let r = c.num("r", 4.0);
    for (i, ((row, _, _), p)) in rows.iter().zip(&pts).enumerate() {
        let key = c.key(row);
        let color = if connect { c.color("line", 0) } else { c.color(&key, i) };
        out.push(c.mark(&slug(&key), ElementKind::ChartMark, Geometry::Circle { radius: r }, *p, color).with_binding(c.binding(row, yf)));
        if let Some(lf) = c.opt_role("label") {
            out.push(c.label(&format!("{}_label", slug(&key)), c.text_field(row, lf)?, *p + Point::new(0.0, -LABEL_FONT)));
        }
    }
    c.title(&mut out, Point::new(at.x, top - 2.0 * LABEL_FONT));
    Ok(out)
}

fn icon_shape(c: &Ctx) -> Result<Geometry, LayoutError> {
    let name = c.opt_role("icon").unwrap_or("person");
    assets::icon(name).ok_or_else(|| c.err(format!("unknown icon `{name}`")))
}

fn pictograph(c: &Ctx) -> Result<Vec<VisualElement>, LayoutError> {
    let val = c.role("value")?;
    let per = c.num("per", 1.0);
    let shape = icon_shape(c)?;
    let rows = c.sorted_rows(None)?;
    let (w, h, at) = (c.num("w", DEFAULT_W), c.num("h", DEFAULT_H), c.anchor());
    let scale = c.num("r", 10.0) / 10.0;
    let line_h = h / rows.len() as f64;
    let mut out = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let key = c.key(row);
        let count = (c.non_negative(row, val)? / per).round() as usize;
        let y = at.y - h / 2.0 + line_h * (i as f64 + 0.5);
        let step = if count > 0 { (w / count as f64).min(25.0 * scale) } else { 0.0 };
        let color = c.color(&key, i);
        for j in 0..count {
            let x = at.x - w / 2.0 + step * (j as f64 + 0.5);
            let mut m = c.mark(&format!("{}_{}", slug(&key), j), ElementKind::ChartMark, shape.clone(), Point::new(x, y), color);
            m.vars.size = scale;
            out.push(m.with_binding(c.binding(row, val)));
        }
        if let Some(lf) = c.opt_role("label") {
            out.push(c.label(&format!("{}_label", slug(&key)), c.text_field(row, lf)?, Point::new(at.x - w / 2.0 - 40.0, y)));
        }
    }
    c.title(&mut out, Point::new(at.x, at.y - h / 2.0 - 2.0 * LABEL_FONT));
    Ok(out)
}

fn format_value(v: f64) -> String {
    crate::speclang::ast::format_number(v)
}

fn number_icon_text(c: &Ctx) -> Result<Vec<VisualElement>, LayoutError> {
    let val = c.role("value")?;
    let shape = icon_shape(c)?;
    let rows = c.sorted_rows(None)?;
    let (w, at) = (c.num("w", DEFAULT_W), c.anchor());
    let font = c.num("font", 32.0);
    let slot = w / rows.len() as f64;
    let mut out = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let key = c.key(row);
        let x = at.x - w / 2.0 + slot * (i as f64 + 0.5);
        let color = c.color(&key, i);
        let mut icon = c.mark(&format!("{}_icon", slug(&key)), ElementKind::Icon, shape.clone(), Point::new(x, at.y - font * 1.5), color);
        icon.vars.size = font / 20.0;
        out.push(icon);
        let text = Geometry::TextRun { content: format_value(c.number(row, val)?), font_size: font };
        out.push(c.mark(&format!("{}_number", slug(&key)), ElementKind::Number, text, Point::new(x, at.y), color).with_binding(c.binding(row, val)));
        if let Some(lf) = c.opt_role("label") {
            out.push(c.label(&format!("{}_text", slug(&key)), c.text_field(row, lf)?, Point::new(x, at.y + font)));
        }
    }
    Ok(out)
}

fn map(c: &Ctx) -> Result<Vec<VisualElement>, LayoutError> {
    let rf = c.role("region")?;
    let val = c.opt_role("value");
    let rows = c.sorted_rows(None)?;
    let at = c.anchor();
    let scale = c.num("w", 1000.0) / 1000.0;
    let mut out = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let key = c.key(row);
        let region = c.text_field(row, rf)?;
        let outline = assets::region(&region).ok_or_else(|| c.err(format!("unknown map region `{region}`")))?;
        let centroid = outline.iter().fold(Point::ORIGIN, |s, p| s + *p) * (1.0 / outline.len() as f64);
        let shape = Geometry::Polygon { vertices: outline.iter().map(|p| (*p - centroid) * scale).collect() };
        let m = c.mark(&slug(&key), ElementKind::ChartMark, shape, at + centroid * scale, c.color(&key, i));
        out.push(m.with_binding(c.binding(row, val.unwrap_or(rf))));
        if let Some(lf) = c.opt_role("label") {
            out.push(c.label(&format!("{}_label", slug(&key)), c.text_field(row, lf)?, at + centroid * scale));
        }
    }
    Ok(out)
}

fn diagram(c: &Ctx) -> Result<Vec<VisualElement>, LayoutError> {
    let ff = c.role("from")?;
    let tf = c.role("to")?;
    let mut nodes: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    for row in &c.data.rows {
        let (a, b) = (c.text_field(row, ff)?, c.text_field(row, tf)?);
        for n in [&a, &b] {
            if !nodes.contains(n) {
                nodes.push(n.clone());
            }
        }
        edges.push((row, a, b));
    }
    let (w, at) = (c.num("w", DEFAULT_W), c.anchor());
    let slot = w / nodes.len() as f64;
    let node_w = slot * 0.6;
    let node_h = c.num("h", 60.0).min(node_w);
    let centers: BTreeMap<&str, Point> = nodes
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), Point::new(at.x - w / 2.0 + slot * (i as f64 + 0.5), at.y)))
        .collect();
    let mut out = Vec::new();
    for (i, n) in nodes.iter().enumerate() {
        let shape = Geometry::Rectangle { width: node_w, height: node_h };
        out.push(c.mark(&slug(n), ElementKind::Annotation, shape, centers[n.as_str()], c.color(n, i)));
        out.push(c.label(&format!("{}_label", slug(n)), n.clone(), centers[n.as_str()] + Point::new(0.0, node_h / 2.0 + LABEL_FONT)));
    }
    for (row, a, b) in edges {
        let (pa, pb) = (centers[a.as_str()], centers[b.as_str()]);
        let dir = pb - pa;
        let len = dir.norm();
        if len == 0.0 {
            continue;
        }
        let u = dir * (1.0 / len);
        let start = pa + u * (node_w / 2.0);
        let end = pb - u * (node_w / 2.0);
        let mid = (start + end) * 0.5;
        let n = Point::new(-u.y, u.x);
        let head = (end - start).norm().min(12.0);
        let shaft_end = end - u * head;
        let verts = vec![
            start + n * 2.0 - mid,
            shaft_end + n * 2.0 - mid,
            shaft_end + n * 6.0 - mid,
            end - mid,
            shaft_end - n * 6.0 - mid,
            shaft_end - n * 2.0 - mid,
            start - n * 2.0 - mid,
        ];
        let suffix = format!("{}_{}", slug(&a), slug(&b));
        out.push(c.mark(&suffix, ElementKind::Annotation, Geometry::Polygon { vertices: verts }, mid, AXIS_COLOR).with_binding(c.binding(row, ff)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dataset(rows: &[(&str, f64)]) -> Dataset {
        Dataset {
            id: "d".into(),
            key: "k".into(),
            rows: rows
                .iter()
                .map(|(k, v)| {
                    let mut r = Row::new();
                    r.insert("k".into(), DataValue::Text(k.to_string()));
                    r.insert("v".into(), DataValue::Number(*v));
                    r
                })
                .collect(),
            loc: Default::default(),
        }
    }

    fn roles(extra: &[(&str, Value)]) -> Attrs {
        let mut a: Attrs = [("category", "k"), ("value", "v")].iter().map(|(k, v)| (k.to_string(), Value::Ident(v.to_string()))).collect();
        for (k, v) in extra {
            a.insert(k.to_string(), v.clone());
        }
        a
    }

    #[test]
    fn pie_one_percent_sector() {
        let els = layout_chart(VisType::Pie, "p", &roles(&[]), &dataset(&[("rich", 1.0), ("rest", 99.0)])).unwrap();
        let spans: Vec<(String, f64)> = els
            .iter()
            .map(|e| match e.vars.shape {
                Geometry::ArcSector { start, end, .. } => (e.id.clone(), end - start),
                _ => unreachable!(),
            })
            .collect();
        // sorted by category name: rest before rich
        assert_eq!(spans[0].0, "p_rest");
        assert!((spans[0].1 - 356.4).abs() < 1e-9);
        assert!((spans[1].1 - 3.6).abs() < 1e-9);
    }

    #[test]
    fn bar_heights_are_proportional() {
        let a = roles(&[("h", Value::Number(200.0))]);
        let els = layout_chart(VisType::BarChart, "b", &a, &dataset(&[("a", 2.0), ("b", 1.0)])).unwrap();
        let heights: Vec<f64> = els
            .iter()
            .filter_map(|e| match e.vars.shape {
                Geometry::Rectangle { height, .. } => Some(height),
                _ => None,
            })
            .collect();
        assert_eq!(heights, vec![200.0, 100.0]);
    }

    #[test]
    fn missing_role_and_negative_value() {
        let a: Attrs = [("value".to_string(), Value::Ident("v".into()))].into_iter().collect();
        assert!(layout_chart(VisType::Pie, "p", &a, &dataset(&[("a", 1.0)])).is_err());
        assert!(layout_chart(VisType::Pie, "p", &roles(&[]), &dataset(&[("a", -1.0)])).is_err());
    }

    #[test]
    fn every_mark_binds_to_one_row() {
        let d = dataset(&[("a", 3.0), ("b", 1.0), ("c", 2.0)]);
        for vis in [VisType::Pie, VisType::BarChart, VisType::ProportionalArea, VisType::Donut] {
            let els = layout_chart(vis, "c", &roles(&[]), &d).unwrap();
            for e in els.iter().filter(|e| e.binding.is_some()) {
                let b = e.binding.as_ref().unwrap();
                assert_eq!(d.rows.iter().filter(|r| d.row_key(r).as_deref() == Some(b.row.as_str())).count(), 1);
            }
        }
    }
}
