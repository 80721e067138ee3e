//! Semantic checks that need built scenes and planned clips.

use crate::compiler::{plan, scene_table};
use crate::model::{variable_delta, Tolerances};
use crate::speclang::ast::VideoSpec;
use crate::speclang::diag::{sort_diagnostics, Diagnostic, Span};
use crate::taxonomy::{Category, TransitionType};

fn item_span(spec: &VideoSpec, id: &str) -> Span {
    let mut best: Option<Span> = None;
    for scene in &spec.scenes {
        for item in &scene.items {
            if item.id == id {
                return item.loc.0;
            }
            if best.is_none() && id.starts_with(&format!("{}_", item.id)) {
                best = Some(item.loc.0);
            }
        }
    }
    best.or_else(|| spec.scenes.first().map(|s| s.loc.0)).unwrap_or_else(Span::start)
}

pub fn validate(spec: &VideoSpec) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for w in spec.clips.windows(2) {
        let (prev, clip) = (&w[0], &w[1]);
        if !clip.segment_start && clip.from != prev.to {
            out.push(Diagnostic::error(
                "broken-chain",
                clip.loc.0,
                format!("clip starts at `{}` but the previous clip ends at `{}`; add `segment` to start a new sequence", clip.from, prev.to),
            ));
        }
    }
    for decl in &spec.scenes {
        if decl.camera.zoom <= 0.0 {
            out.push(Diagnostic::error("non-positive-zoom", decl.loc.0, format!("scene `{}` has zoom {}", decl.id, decl.camera.zoom)));
        }
    }
    let scenes = match scene_table(spec) {
        Ok(s) => s,
        Err(e) => {
            out.push(Diagnostic::error("layout-error", item_span(spec, &e.item), e.to_string()));
            sort_diagnostics(&mut out);
            return out;
        }
    };
    for decl in &spec.scenes {
        if !scenes[&decl.id].form_is_consistent() {
            out.push(Diagnostic::error(
                "form-mismatch",
                decl.loc.0,
                format!("scene `{}` is marked as a visualization but has no chart, data binding or vis type", decl.id),
            ));
        }
    }
    if out.iter().any(Diagnostic::is_error) {
        sort_diagnostics(&mut out);
        return out;
    }

    for clip in &spec.clips {
        let (a, b) = (&scenes[&clip.from], &scenes[&clip.to]);
        let span = clip.loc.0;
        let mut unresolved = false;
        for m in &clip.maps {
            for (id, scene) in [(&m.from, a), (&m.to, b)] {
                if scene.element(id).is_none() {
                    unresolved = true;
                    out.push(Diagnostic::error(
                        "unresolved-reference",
                        m.loc.0,
                        format!("`{id}` is not an element of scene `{}`", scene.id),
                    ));
                }
            }
        }
        if unresolved {
            continue;
        }
        let inter = clip.halftime.as_deref().and_then(|h| scenes.get(h));
        if let Err(e) = plan(clip, a, b, inter) {
            out.push(Diagnostic::error(e.code, span, e.message));
            continue;
        }
        let types = clip.types();
        let replacing = types.iter().any(|t| t.is_scene_replacing());
        if !replacing && a.camera != b.camera && !types.iter().any(|t| t.is_camera()) {
            out.push(Diagnostic::warning(
                "undeclared-camera-change",
                span,
                format!("the camera differs between `{}` and `{}` but no camera transition is declared", a.id, b.id),
            ));
        }
        if types.iter().any(|t| t.category() == Category::Refresh) && a.camera == b.camera {
            let tol = Tolerances::default();
            let shared = a.elements.iter().find(|ea| {
                b.elements.iter().any(|eb| ea.kind == eb.kind && variable_delta(ea, eb, &tol).is_unchanged())
            });
            if let Some(e) = shared {
                out.push(Diagnostic::warning(
                    "guide-available",
                    span,
                    format!(
                        "`{}` looks the same in both scenes; {} could carry it across",
                        e.id,
                        TransitionType::StayingGuide
                    ),
                ));
            }
        }
    }
    sort_diagnostics(&mut out);
    out
}
