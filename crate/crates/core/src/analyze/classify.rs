//! Label recovery from observed endpoint states.

use std::collections::BTreeSet;

use crate::compiler::timeline::{StageName, Timeline, TrackRole};
use crate::model::{scene_diff, Channel, Correspondence, ElementKind, Scene, SceneDelta, VariableDelta};
use crate::taxonomy::{is_camera_locked, TransitionType};

use TransitionType as T;

/// What can be seen of a clip: its endpoint scenes, how elements correspond,
/// and a few timing features of the animation between them.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservedClip {
    pub source: Scene,
    pub target: Scene,
    pub correspondence: Correspondence,
    pub interstitial: bool,
    /// The camera holds an element at a fixed screen position.
    pub focus_locked: bool,
    pub fade: bool,
    pub wipe: bool,
    /// Entering and leaving elements animate inside the transform stage.
    pub churn_in_transform: bool,
}

impl ObservedClip {
    pub fn new(source: Scene, target: Scene, correspondence: Correspondence) -> Self {
        ObservedClip {
            source,
            target,
            correspondence,
            interstitial: false,
            focus_locked: false,
            fade: false,
            wipe: false,
            churn_in_transform: false,
        }
    }

    pub fn delta(&self) -> Option<SceneDelta> {
        scene_diff(&self.source, &self.target, &self.correspondence).ok()
    }
}

/// Reads the observable features off a planned timeline.
pub fn observe(tl: &Timeline) -> ObservedClip {
    let mut obs = ObservedClip::new(tl.source.clone(), tl.target.clone(), tl.correspondence.clone());
    obs.interstitial = tl.interstitial.is_some();
    obs.focus_locked = tl.focus_lock.is_some();
    obs.fade = tl.has_fade();
    obs.wipe = tl.has_wipe();
    if let Some(tr) = tl.stage(StageName::Transform) {
        let spans: Vec<(f64, f64)> = tl
            .tracks
            .iter()
            .filter(|t| matches!(t.role, TrackRole::Exit | TrackRole::Enter))
            .filter_map(|t| t.opacity.active_span())
            .collect();
        obs.churn_in_transform = !spans.is_empty() && spans.iter().all(|(s, e)| *s >= tr.start && *e <= tr.end);
    }
    obs
}

fn touches(d: &VariableDelta, chans: &[Channel]) -> bool {
    chans.iter().any(|c| d.changed.contains(c))
}

/// Every label whose defining pattern the observation shows. Empty means unknown.
pub fn classify(obs: &ObservedClip) -> BTreeSet<TransitionType> {
    use Channel::*;
    let mut out = BTreeSet::new();
    let Some(delta) = obs.delta() else { return out };
    let nonempty = !obs.source.elements.is_empty() && !obs.target.elements.is_empty();

    if obs.interstitial {
        out.insert(T::Halftime);
    } else if obs.correspondence.is_empty() && nonempty {
        out.insert(if obs.wipe {
            T::Wipe
        } else if obs.fade {
            T::Fade
        } else {
            T::HardCut
        });
    }

    let cd = delta.camera_delta;
    if !cd.is_zero() && !delta.matched.is_empty() {
        if cd.zooms() {
            out.insert(if obs.focus_locked { T::Dolly } else { T::Zoom });
        } else {
            if cd.moves_y() {
                out.insert(if obs.focus_locked { T::Tilt } else { T::Pedestal });
            }
            if cd.moves_x() {
                out.insert(if obs.focus_locked { T::Pan } else { T::Truck });
            }
        }
        if cd.refocuses() {
            out.insert(T::RackFocus);
        }
    }

    let plain: Vec<&VariableDelta> = delta.matched.iter().filter(|d| !delta.is_group_pair(d)).collect();
    let (exits, entries) = delta.churn();
    let churn = !exits.is_empty() || !entries.is_empty();
    let bg = |k: ElementKind| k == ElementKind::Background;

    if plain.iter().any(|d| {
        !touches(d, &[Shape, Color])
            && !is_camera_locked(&delta, d)
            && (touches(d, &[Position, Orientation]) || (d.changed.contains(&Size) && !d.data_bound))
    }) {
        out.insert(T::RstGuide);
    }
    if plain.iter().any(|d| !bg(d.source_kind) && bg(d.target_kind) && !d.changed.contains(&Color)) {
        out.insert(T::ExpandingGuide);
    }
    if plain.iter().any(|d| bg(d.source_kind) && !bg(d.target_kind) && !d.changed.contains(&Color)) {
        out.insert(T::ShrinkingGuide);
    }
    if churn && !plain.is_empty() {
        if cd.is_zero()
            && !obs.churn_in_transform
            && plain.iter().all(|d| !touches(d, &[Position, Size, Color, Shape, Orientation]))
        {
            out.insert(T::StayingGuide);
        }
        if obs.churn_in_transform && plain.iter().all(|d| !touches(d, &[Shape, Position, Color])) {
            out.insert(T::UpdatingContent);
        }
    }
    if plain.iter().any(|d| d.data_bound && d.changed.len() == 1 && d.changed.contains(&Size)) {
        out.insert(T::Scaling);
    }
    if plain.iter().any(|d| {
        d.changed.contains(&Shape) && !d.changed.contains(&Position) && !bg(d.source_kind) && !bg(d.target_kind)
    }) {
        out.insert(T::Morphing);
    }
    if delta.groups.iter().any(|g| g.is_merge()) {
        out.insert(T::Merging);
    }
    if delta.groups.iter().any(|g| g.is_split()) {
        out.insert(T::Splitting);
    }
    out
}

pub fn classify_timeline(tl: &Timeline) -> BTreeSet<TransitionType> {
    classify(&observe(tl))
}

/// Canonical names, or `unknown` for an empty set.
pub fn label_names(labels: &BTreeSet<TransitionType>) -> Vec<String> {
    if labels.is_empty() {
        return vec!["unknown".into()];
    }
    labels.iter().map(|t| t.name()).collect()
}
