//! Contract and suggestion checks over planned clips.

use crate::compiler::{plan, scene_table};
use crate::model::scene_diff;
use crate::recommend::{rule_hits, Context, FormPair};
use crate::speclang::ast::VideoSpec;
use crate::speclang::diag::{sort_diagnostics, Diagnostic};
use crate::taxonomy::satisfies_all;

/// Recommendation context of one clip.
pub fn clip_context(spec: &VideoSpec, index: usize) -> Option<Context> {
    let clip = spec.clips.get(index)?;
    let a = spec.scene(&clip.from)?;
    let b = spec.scene(&clip.to)?;
    let mut vis: Vec<_> = [a.vis, b.vis].into_iter().flatten().collect();
    vis.dedup();
    Some(Context { forms: FormPair::from_forms(a.form, b.form), relation: clip.relation, vis })
}

/// Expects a script that already validates; clips that fail to plan are skipped.
pub fn lint(spec: &VideoSpec) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let Ok(scenes) = scene_table(spec) else { return out };
    for (i, clip) in spec.clips.iter().enumerate() {
        let (Some(a), Some(b)) = (scenes.get(&clip.from), scenes.get(&clip.to)) else { continue };
        let inter = clip.halftime.as_deref().and_then(|h| scenes.get(h));
        let Ok(tl) = plan(clip, a, b, inter) else { continue };
        let types = clip.types();
        if let Ok(delta) = scene_diff(&tl.source, &tl.target, &tl.correspondence) {
            let (_, violations) = satisfies_all(&delta, &types);
            for v in violations {
                out.push(Diagnostic::warning("contract-violation", clip.loc.0, v.to_string()));
            }
        }
        let Some(ctx) = clip_context(spec, i).filter(|c| !c.is_empty()) else { continue };
        let hits = rule_hits(&ctx);
        if hits.is_empty() || types.iter().all(|t| hits.iter().any(|h| h.transition == *t)) {
            continue;
        }
        if let Some(top) = hits.iter().find(|h| !types.contains(&h.transition)) {
            let name = top.transition.subtype().unwrap_or("halftime");
            out.push(Diagnostic::info("consider", clip.loc.0, format!("consider: {name}")));
        }
    }
    sort_diagnostics(&mut out);
    out
}
