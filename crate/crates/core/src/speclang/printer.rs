use std::fmt::Write;

use crate::model::{CameraPose, ClipForm};

use super::ast::*;

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

pub fn print_value(v: &Value) -> String {
    match v {
        Value::Number(n) => format_number(*n),
        Value::Str(s) => quote(s),
        Value::Ident(s) => s.clone(),
        Value::Color(c) => c.to_string(),
        Value::Tuple(items) => format!("({})", items.iter().map(print_value).collect::<Vec<_>>().join(", ")),
        Value::List(items) => format!("[{}]", items.iter().map(print_value).collect::<Vec<_>>().join(" ")),
    }
}

fn print_attrs(out: &mut String, attrs: &Attrs) {
    for (k, v) in attrs {
        let _ = write!(out, " {k}={}", print_value(v));
    }
}

fn camera_tuple(c: &CameraPose) -> String {
    [c.center.x, c.center.y, c.zoom, c.focus_depth].map(format_number).join(", ")
}

/// Canonical text of a document.
pub fn print(spec: &VideoSpec) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "video {} fps={} height={} width={}", quote(&spec.title), spec.fps, spec.height, spec.width);

    for ds in &spec.datasets {
        let _ = writeln!(out, "\ndata {} key={} {{", ds.id, ds.key);
        for row in &ds.rows {
            let fields: Vec<String> = row
                .iter()
                .map(|(k, v)| match v {
                    DataValue::Number(n) => format!("{k}={}", format_number(*n)),
                    DataValue::Text(s) => format!("{k}={}", quote(s)),
                })
                .collect();
            let _ = writeln!(out, "  ({})", fields.join(" "));
        }
        out.push_str("}\n");
    }

    for scene in &spec.scenes {
        let form = match scene.form {
            ClipForm::Visualization => "visualization",
            ClipForm::NonVisualization => "non_visualization",
        };
        let _ = write!(out, "\nscene {} camera=({}) form={}", scene.id, camera_tuple(&scene.camera), form);
        if let Some(v) = scene.vis {
            let _ = write!(out, " vis={}", v.name());
        }
        out.push_str(" {\n");
        for item in &scene.items {
            match item.kind {
                ItemKind::Element(k) => {
                    let _ = write!(out, "  {} {}", k.name(), item.id);
                }
                ItemKind::Chart(v) => {
                    let _ = write!(out, "  chart {} {}", v.name(), item.id);
                }
            }
            print_attrs(&mut out, &item.attrs);
            out.push('\n');
        }
        out.push_str("}\n");
    }

    for clip in &spec.clips {
        if clip.segment_start {
            out.push_str("\nsegment\n");
        }
        let _ = write!(out, "\nclip {} -> {}", clip.from, clip.to);
        if let Some(r) = clip.relation {
            let _ = write!(out, " relation={}", r.name());
        }
        out.push_str(" {\n");
        for t in &clip.transitions {
            let mut attrs = t.params.clone();
            attrs.insert("duration".into(), Value::Number(t.duration));
            attrs.insert("easing".into(), Value::Ident(t.easing.name().into()));
            let _ = write!(out, "  transition {}", t.ty.name());
            print_attrs(&mut out, &attrs);
            out.push('\n');
        }
        for m in &clip.maps {
            let _ = writeln!(out, "  map {} -> {}", m.from, m.to);
        }
        if let Some(h) = &clip.halftime {
            let _ = writeln!(out, "  halftime {h}");
        }
        for k in &clip.camera_path {
            let _ = writeln!(out, "  camera ({})@{}", camera_tuple(&k.pose), format_number(k.t));
        }
        out.push_str("}\n");
    }
    out
}
