//! Element correspondence between two scenes.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::model::{Correspondence, Group, MatchMethod, Pair, Scene, VisualElement, OUTLINE_SAMPLES};

/// Inferred pairs must score below this.
pub const MATCH_THRESHOLD: f64 = 0.5;

const W_POSITION: f64 = 1.0;
const W_SIZE: f64 = 1.0;
const W_COLOR: f64 = 2.0;
const W_SHAPE: f64 = 4.0;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorrespondError {
    #[error("map source `{0}` is not an element of the source scene")]
    UnknownSource(String),
    #[error("map target `{0}` is not an element of the target scene")]
    UnknownTarget(String),
    #[error("`{0}` is both split and merged")]
    Tangled(String),
    #[error("map `{0} -> {1}` is declared twice")]
    Duplicate(String, String),
}

/// Weighted dissimilarity of two elements; 0 for identical ones.
pub fn match_distance(a: &VisualElement, b: &VisualElement) -> f64 {
    let pos = a.vars.position.distance(b.vars.position) / 1000.0;
    let (sa, sb) = (a.vars.effective_size(), b.vars.effective_size());
    let size = if sa.max(sb) > 0.0 { (sa - sb).abs() / sa.max(sb) } else { 0.0 };
    let ca = a.vars.color.channels();
    let cb = b.vars.color.channels();
    let color = ca
        .iter()
        .zip(cb)
        .map(|(x, y)| (f64::from(*x) - f64::from(y)).powi(2))
        .sum::<f64>()
        .sqrt()
        / (255.0 * 3f64.sqrt());
    let shape = if crate::model::shape_differs(&a.vars.shape, &b.vars.shape, 1e-6) {
        let pa = crate::geometry::resample(&a.vars.shape, OUTLINE_SAMPLES);
        let pb = crate::geometry::resample(&b.vars.shape, OUTLINE_SAMPLES);
        let r = crate::geometry::bounding_radius(&a.vars.shape).max(crate::geometry::bounding_radius(&b.vars.shape));
        if a.vars.shape.kind() != b.vars.shape.kind() || r <= 0.0 || pa.len() != pb.len() {
            1.0
        } else {
            let mean = pa.iter().zip(&pb).map(|(p, q)| p.distance(*q)).sum::<f64>() / pa.len() as f64;
            (mean / (2.0 * r)).min(1.0)
        }
    } else {
        0.0
    };
    W_POSITION * pos + W_SIZE * size + W_COLOR * color + W_SHAPE * shape
}

/// Builds groups and pairs from explicit maps, then matches the remaining
/// elements greedily by [`match_distance`].
pub fn correspond(a: &Scene, b: &Scene, maps: &[(String, String)]) -> Result<Correspondence, CorrespondError> {
    let mut seen = BTreeSet::new();
    for (s, t) in maps {
        if a.element(s).is_none() {
            return Err(CorrespondError::UnknownSource(s.clone()));
        }
        if b.element(t).is_none() {
            return Err(CorrespondError::UnknownTarget(t.clone()));
        }
        if !seen.insert((s.as_str(), t.as_str())) {
            return Err(CorrespondError::Duplicate(s.clone(), t.clone()));
        }
    }
    let mut by_src: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    let mut by_dst: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for (s, t) in maps {
        by_src.entry(s).or_default().push(t);
        by_dst.entry(t).or_default().push(s);
    }

    let mut c = Correspondence::default();
    let mut used_a = BTreeSet::new();
    let mut used_b = BTreeSet::new();
    for (s, t) in maps {
        let (many_t, many_s) = (by_src[s.as_str()].len() > 1, by_dst[t.as_str()].len() > 1);
        if many_t && many_s {
            return Err(CorrespondError::Tangled(s.clone()));
        }
        if many_t || many_s {
            continue;
        }
        c.pairs.push(Pair { source: s.clone(), target: t.clone(), method: MatchMethod::Explicit });
        used_a.insert(s.as_str());
        used_b.insert(t.as_str());
    }
    let order_a = |id: &&str| a.index_of(id).unwrap_or(usize::MAX);
    let order_b = |id: &&str| b.index_of(id).unwrap_or(usize::MAX);
    for (t, sources) in &by_dst {
        if sources.len() > 1 {
            if let Some(s) = sources.iter().find(|s| by_src[**s].len() > 1) {
                return Err(CorrespondError::Tangled(s.to_string()));
            }
            let mut sources = sources.clone();
            sources.sort_by_key(order_a);
            c.groups.push(Group { sources: sources.iter().map(|s| s.to_string()).collect(), targets: vec![t.to_string()] });
        }
    }
    for (s, targets) in &by_src {
        if targets.len() > 1 {
            let mut targets = targets.clone();
            targets.sort_by_key(order_b);
            c.groups.push(Group { sources: vec![s.to_string()], targets: targets.iter().map(|t| t.to_string()).collect() });
        }
    }
    c.groups.sort_by_key(|g| (order_a(&g.sources[0].as_str()), order_b(&g.targets[0].as_str())));
    for g in &c.groups {
        let (s, t) = g.representative();
        c.pairs.push(Pair { source: s.to_string(), target: t.to_string(), method: MatchMethod::Explicit });
        used_a.extend(g.sources.iter().map(String::as_str));
        used_b.extend(g.targets.iter().map(String::as_str));
    }

    let free_a: Vec<&VisualElement> = a.elements.iter().filter(|e| !used_a.contains(e.id.as_str())).collect();
    let free_b: Vec<&VisualElement> = b.elements.iter().filter(|e| !used_b.contains(e.id.as_str())).collect();
    let mut candidates = Vec::new();
    for (i, ea) in free_a.iter().enumerate() {
        for (j, eb) in free_b.iter().enumerate() {
            if ea.kind != eb.kind {
                continue;
            }
            let d = match_distance(ea, eb);
            if d < MATCH_THRESHOLD {
                let other_id = ea.id != eb.id;
                candidates.push((other_id, d, i, j));
            }
        }
    }
    candidates.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.total_cmp(&y.1)).then(x.2.cmp(&y.2)).then(x.3.cmp(&y.3)));
    let mut taken_a = vec![false; free_a.len()];
    let mut taken_b = vec![false; free_b.len()];
    let mut inferred = Vec::new();
    for (_, _, i, j) in candidates {
        if taken_a[i] || taken_b[j] {
            continue;
        }
        taken_a[i] = true;
        taken_b[j] = true;
        inferred.push((i, j));
    }
    inferred.sort();
    c.pairs.extend(inferred.into_iter().map(|(i, j)| Pair {
        source: free_a[i].id.clone(),
        target: free_b[j].id.clone(),
        method: MatchMethod::Inferred,
    }));
    Ok(c)
}
