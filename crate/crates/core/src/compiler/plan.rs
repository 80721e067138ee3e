//! Clip planning: from two scenes and a transition list to a timeline.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::compiler::correspond::{correspond, CorrespondError};
use crate::compiler::timeline::{
    CameraTrack, Curve, ElementTrack, Key, Layer, LayerRole, ShapeTrack, Stage, StageName, Timeline, TrackRole,
    Visibility, Wipe, WipeDirection,
};
use crate::easing::Easing;
use crate::geometry::{align_cyclic, outline, resample};
use crate::model::{
    scene_diff, shape_differs, variable_delta, CameraPose, Channel, ChannelSet, Correspondence, ElementKind,
    MatchMethod, Pair, Point, Scene, SceneDelta, Tolerances, VariableDelta, VisualElement, OUTLINE_SAMPLES,
};
use crate::speclang::ast::ClipSpec;
use crate::taxonomy::{contract_of, PoseComponent, TransitionType};

use TransitionType as T;

/// Stage boundaries used when elements leave or arrive.
pub const EXIT_END: f64 = 0.3;
pub const ENTER_START: f64 = 0.7;
/// Interstitial window of a halftime clip.
pub const HALFTIME_WINDOW: (f64, f64) = (0.25, 0.75);
/// Lock checks allow this much slack in scene units.
pub const LOCK_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("{message}")]
pub struct PlanError {
    pub code: &'static str,
    pub message: String,
}

impl PlanError {
    fn new(code: &'static str, message: impl Into<String>) -> Self {
        PlanError { code, message: message.into() }
    }
}

impl From<CorrespondError> for PlanError {
    fn from(e: CorrespondError) -> Self {
        PlanError::new("plan-error", e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Slot {
    Channel(String, Channel),
    Churn,
    Pose(u8),
}

impl Slot {
    fn describe(&self) -> String {
        match self {
            Slot::Channel(id, ch) => format!("{ch} of `{id}`"),
            Slot::Churn => "the timing of entering and leaving elements".into(),
            Slot::Pose(p) => ["camera x", "camera y", "camera zoom", "camera focus"][*p as usize].to_string(),
        }
    }
}

fn pose_slot(p: PoseComponent) -> Slot {
    Slot::Pose(match p {
        PoseComponent::CenterX => 0,
        PoseComponent::CenterY => 1,
        PoseComponent::Zoom => 2,
        PoseComponent::Focus => 3,
    })
}

const LAYOUT: [Channel; 3] = [Channel::Position, Channel::Size, Channel::Orientation];

fn guide_item<'a>(clip: &'a ClipSpec, t: TransitionType) -> Result<(&'a str, &'a str), PlanError> {
    let decl = clip.transition(t).expect("declared");
    match (decl.ident_param("item"), decl.ident_param("background")) {
        (Some(i), Some(b)) => Ok(if t == T::ExpandingGuide { (i, b) } else { (b, i) }),
        _ => Err(PlanError::new("guide-needs-endpoints", format!("{t} needs both `item=` and `background=`"))),
    }
}

fn focus_of(clip: &ClipSpec) -> Option<(TransitionType, Option<&str>)> {
    clip.transitions.iter().find(|d| d.ty.needs_focus_lock()).map(|d| (d.ty, d.ident_param("focus")))
}

/// Explicit guide endpoints replace any pairing of those elements.
fn add_guide_pairs(c: &mut Correspondence, clip: &ClipSpec, a: &Scene, b: &Scene) -> Result<(), PlanError> {
    for t in [T::ExpandingGuide, T::ShrinkingGuide] {
        if !clip.declares(t) {
            continue;
        }
        let (s, d) = guide_item(clip, t)?;
        let (es, ed) = match (a.element(s), b.element(d)) {
            (Some(x), Some(y)) => (x, y),
            (None, _) => return Err(PlanError::new("guide-needs-endpoints", format!("`{s}` is not in scene `{}`", a.id))),
            (_, None) => return Err(PlanError::new("guide-needs-endpoints", format!("`{d}` is not in scene `{}`", b.id))),
        };
        let bg_ok = if t == T::ExpandingGuide {
            es.kind != ElementKind::Background && ed.kind == ElementKind::Background
        } else {
            es.kind == ElementKind::Background && ed.kind != ElementKind::Background
        };
        if !bg_ok {
            return Err(PlanError::new("guide-needs-endpoints", format!("{t} needs `background=` to name a background element")));
        }
        if c.groups.iter().any(|g| g.sources.iter().any(|x| x == s) || g.targets.iter().any(|x| x == d)) {
            return Err(PlanError::new("plan-conflict", format!("{t} endpoints are also members of a group")));
        }
        c.pairs.retain(|p| p.source != s && p.target != d);
        c.pairs.push(Pair { source: s.into(), target: d.into(), method: MatchMethod::Explicit });
    }
    Ok(())
}

fn camera_locked(d: &VariableDelta, a: &CameraPose, b: &CameraPose) -> bool {
    let shift = b.center - a.center;
    shift.norm() > 0.0
        && d.changed.iter().all(|c| *c == Channel::Position)
        && d.shift.distance(shift) <= LOCK_TOLERANCE
}

/// Drops inferred pairs that would break a preservation rule of the declared
/// transitions; those elements then leave and enter instead.
fn prune(c: &mut Correspondence, a: &Scene, b: &Scene, types: &[TransitionType]) {
    let tol = Tolerances::default();
    let camera_only = types.iter().all(|t| t.is_camera());
    let mut preserve = ChannelSet::new();
    for t in types {
        if matches!(t, T::RstGuide | T::StayingGuide | T::UpdatingContent | T::Scaling | T::Morphing) {
            preserve.extend(contract_of(*t).must_preserve);
        }
    }
    c.pairs.retain(|p| {
        if p.method == MatchMethod::Explicit {
            return true;
        }
        let d = variable_delta(a.element(&p.source).unwrap(), b.element(&p.target).unwrap(), &tol);
        if camera_only {
            d.changed.is_empty() || camera_locked(&d, &a.camera, &b.camera)
        } else {
            d.changed.intersection(&preserve).next().is_none()
        }
    });
}

fn claim_slots(delta: &SceneDelta, clip: &ClipSpec) -> Result<(), PlanError> {
    let mut owner: BTreeMap<Slot, TransitionType> = BTreeMap::new();
    let plain: Vec<&VariableDelta> = delta.matched.iter().filter(|d| !delta.is_group_pair(d)).collect();
    for t in clip.types() {
        let mut slots = Vec::new();
        let changed = |d: &VariableDelta, chans: &[Channel], slots: &mut Vec<Slot>| {
            for ch in chans.iter().filter(|c| d.changed.contains(c)) {
                slots.push(Slot::Channel(d.source.clone(), *ch));
            }
        };
        match t {
            T::RstGuide => {
                plain.iter().for_each(|d| changed(d, &LAYOUT, &mut slots));
                slots.push(Slot::Churn);
            }
            T::StayingGuide | T::UpdatingContent => slots.push(Slot::Churn),
            T::Scaling => plain.iter().for_each(|d| changed(d, &[Channel::Size], &mut slots)),
            T::Morphing => plain.iter().for_each(|d| changed(d, &[Channel::Shape], &mut slots)),
            T::ExpandingGuide | T::ShrinkingGuide => {
                let (s, _) = guide_item(clip, t)?;
                if let Some(d) = delta.matched.iter().find(|d| d.source == s) {
                    changed(d, &Channel::ELEMENT_LOCAL, &mut slots);
                }
            }
            T::Merging | T::Splitting => {
                for g in delta.groups.iter().filter(|g| if t == T::Merging { g.is_merge() } else { g.is_split() }) {
                    if let Some(d) = delta.matched.iter().find(|d| (d.source.as_str(), d.target.as_str()) == g.representative()) {
                        changed(d, &Channel::ELEMENT_LOCAL, &mut slots);
                    }
                    let members = if t == T::Merging { &g.sources[1..] } else { &g.targets[1..] };
                    slots.extend(members.iter().map(|m| Slot::Channel(m.clone(), Channel::Position)));
                }
            }
            _ if t.is_camera() => {
                slots.push(pose_slot(contract_of(t).pose.expect("camera pose")));
                if t == T::Dolly {
                    slots.push(pose_slot(PoseComponent::CenterX));
                    slots.push(pose_slot(PoseComponent::CenterY));
                }
                if matches!(t, T::Tilt | T::Pan) {
                    if let Some((_, Some(f))) = focus_of(clip) {
                        slots.push(Slot::Channel(f.to_string(), Channel::Position));
                    }
                }
            }
            _ => {}
        }
        slots.sort();
        slots.dedup();
        for slot in slots {
            if let Some(prev) = owner.insert(slot.clone(), t) {
                if prev != t {
                    return Err(PlanError::new("plan-conflict", format!("{prev} and {t} both animate {}", slot.describe())));
                }
            }
        }
    }
    Ok(())
}

fn check_focus(clip: &ClipSpec, a: &Scene, b: &Scene, c: &Correspondence) -> Result<Option<(String, Point)>, PlanError> {
    let Some((t, focus)) = focus_of(clip) else { return Ok(None) };
    let Some(id) = focus else {
        return Err(PlanError::new("focus-needs-element", format!("{t} needs `focus=` naming an element")));
    };
    let (Some(ea), Some(target)) = (a.element(id), c.target_of(id)) else {
        return Err(PlanError::new("focus-needs-element", format!("focus `{id}` must appear in both scenes")));
    };
    let eb = b.element(target).expect("paired");
    let p = ea.vars.position;
    let (ca, cb) = (a.camera, b.camera);
    let ok = if t == T::Dolly {
        let expected = p - (p - ca.center) * (ca.zoom / cb.zoom);
        expected.distance(cb.center) <= LOCK_TOLERANCE && eb.vars.position.distance(p) <= LOCK_TOLERANCE
    } else {
        (ca.zoom - cb.zoom).abs() <= LOCK_TOLERANCE
            && (eb.vars.position - cb.center).distance(p - ca.center) <= LOCK_TOLERANCE
    };
    if !ok {
        return Err(PlanError::new(
            "focus-lock-mismatch",
            format!("the target camera does not keep `{id}` at its screen position as {t} requires"),
        ));
    }
    Ok(Some((id.to_string(), p)))
}

fn morph_track(track: &mut ElementTrack, a: &VisualElement, b: &VisualElement, stage: Stage, easing: Easing, morphing: bool) -> Result<(), PlanError> {
    if !shape_differs(&a.vars.shape, &b.vars.shape, Tolerances::default().position) {
        return Ok(());
    }
    let (_, ca) = outline(&a.vars.shape);
    let (_, cb) = outline(&b.vars.shape);
    let mid = (stage.start + stage.end) / 2.0;
    let text = matches!(a.vars.shape, crate::model::Geometry::TextRun { .. })
        || matches!(b.vars.shape, crate::model::Geometry::TextRun { .. });
    if ca != cb {
        if morphing {
            return Err(PlanError::new(
                "plan-error",
                format!("cannot morph `{}` into `{}`: one outline is open and the other closed", a.id, b.id),
            ));
        }
        track.shape = ShapeTrack::Swap { at: mid };
    } else if text {
        track.shape = ShapeTrack::Swap { at: mid };
    } else {
        let from = resample(&a.vars.shape, OUTLINE_SAMPLES);
        let to = align_cyclic(&from, &resample(&b.vars.shape, OUTLINE_SAMPLES));
        track.shape =
            ShapeTrack::Morph { from, to, closed: ca, progress: Curve::ramp(stage.start, 0.0, stage.end, 1.0, easing) };
    }
    Ok(())
}

fn faded(el: &VisualElement) -> VisualElement {
    let mut e = el.clone();
    e.vars.opacity = 0.0;
    e
}

fn moved(el: &VisualElement, to: Point) -> VisualElement {
    let mut e = el.clone();
    e.vars.position = to;
    e
}

fn camera_track(clip: &ClipSpec, a: &Scene, b: &Scene, stage: Stage, easing: Easing, dolly: Option<Point>) -> CameraTrack {
    let (ca, cb) = (a.camera, b.camera);
    let mut track = CameraTrack::still(ca);
    track.end = cb;
    let mut poses: Vec<(f64, CameraPose)> = vec![(stage.start, ca)];
    poses.extend(clip.camera_path.iter().map(|k| (k.t, k.pose)));
    poses.push((stage.end, cb));
    poses.sort_by(|x, y| x.0.total_cmp(&y.0));
    let keys = |f: fn(&CameraPose) -> f64| Curve {
        keys: poses.iter().map(|(t, p)| Key { t: *t, value: f(p), easing }).collect(),
    };
    track.center = Curve { keys: poses.iter().map(|(t, p)| Key { t: *t, value: p.center, easing }).collect() };
    track.zoom = keys(|p| p.zoom);
    track.focus = keys(|p| p.focus_depth);
    track.dolly_focus = dolly;
    track
}

fn scene_layers(t: TransitionType, clip: &ClipSpec, a: &Scene, b: &Scene, inter: Option<&Scene>) -> Result<Vec<Layer>, PlanError> {
    let decl = clip.transition(t).expect("declared");
    let easing = decl.easing;
    let layer = |role, scene: &Scene, visibility, fade| Layer { role, scene: scene.clone(), visibility, fade, wipe: None };
    let one = || Curve::constant(1.0);
    Ok(match t {
        T::HardCut => vec![
            layer(LayerRole::Source, a, Visibility::Before { x: 0.5 }, one()),
            layer(LayerRole::Target, b, Visibility::From { x: 0.5 }, one()),
        ],
        T::Fade => vec![
            layer(LayerRole::Source, a, Visibility::Before { x: 0.5 }, Curve::ramp(0.0, 1.0, 0.5, 0.0, easing)),
            layer(LayerRole::Target, b, Visibility::From { x: 0.5 }, Curve::ramp(0.5, 0.0, 1.0, 1.0, easing)),
        ],
        T::Wipe => {
            let direction = match decl.ident_param("direction") {
                None => WipeDirection::LeftToRight,
                Some(d) => WipeDirection::from_name(d)
                    .ok_or_else(|| PlanError::new("plan-error", format!("unknown wipe direction `{d}`")))?,
            };
            let mut target = layer(LayerRole::Target, b, Visibility::After { x: 0.0 }, one());
            target.wipe = Some(Wipe { direction, progress: Curve::ramp(0.0, 0.0, 1.0, 1.0, easing) });
            vec![layer(LayerRole::Source, a, Visibility::Before { x: 1.0 }, one()), target]
        }
        T::Halftime => {
            let mid = inter.ok_or_else(|| PlanError::new("plan-error", "halftime needs an interstitial scene"))?;
            let (h0, h1) = HALFTIME_WINDOW;
            let edge = 0.1;
            let k = |t, value| Key { t, value, easing };
            vec![
                layer(LayerRole::Source, a, Visibility::Before { x: h0 }, Curve::ramp(0.0, 1.0, h0, 0.0, easing)),
                layer(
                    LayerRole::Interstitial,
                    mid,
                    Visibility::Within { a: h0, b: h1 },
                    Curve { keys: vec![k(h0, 0.0), k(h0 + edge, 1.0), k(h1 - edge, 1.0), k(h1, 0.0)] },
                ),
                layer(LayerRole::Target, b, Visibility::After { x: h1 }, Curve::ramp(h1, 0.0, 1.0, 1.0, easing)),
            ]
        }
        _ => unreachable!("not scene-replacing"),
    })
}

/// Plans one clip. `inter` is the halftime interstitial scene, if any.
pub fn plan(clip: &ClipSpec, a: &Scene, b: &Scene, inter: Option<&Scene>) -> Result<Timeline, PlanError> {
    let types = clip.types();
    let Some(first) = clip.transitions.first() else {
        return Err(PlanError::new("plan-error", "clip declares no transition"));
    };
    for s in [a, b].into_iter().chain(inter) {
        if s.camera.zoom <= 0.0 {
            return Err(PlanError::new("non-positive-zoom", format!("scene `{}` has zoom {}", s.id, s.camera.zoom)));
        }
    }
    if let Some(k) = clip.camera_path.iter().find(|k| k.pose.zoom <= 0.0) {
        return Err(PlanError::new("non-positive-zoom", format!("camera key at t={} has zoom {}", k.t, k.pose.zoom)));
    }
    let easing = first.easing;
    let mut tl = Timeline {
        from: a.id.clone(),
        to: b.id.clone(),
        transitions: types.clone(),
        duration: clip.duration(),
        stages: vec![Stage { name: StageName::Transform, start: 0.0, end: 1.0 }],
        layers: Vec::new(),
        tracks: Vec::new(),
        camera: CameraTrack::still(a.camera),
        interstitial: None,
        focus_lock: None,
        correspondence: Correspondence::default(),
        source: a.clone(),
        target: b.clone(),
    };

    if let Some(t) = types.iter().copied().find(|t| t.is_scene_replacing()) {
        if types.len() > 1 {
            let other = types.iter().find(|x| **x != t).expect("second type");
            return Err(PlanError::new("plan-conflict", format!("{t} replaces the whole scene and cannot combine with {other}")));
        }
        tl.layers = scene_layers(t, clip, a, b, inter)?;
        if t == T::Halftime {
            let mid = inter.expect("checked");
            tl.interstitial = Some((mid.id.clone(), HALFTIME_WINDOW.0, HALFTIME_WINDOW.1));
        }
        return Ok(tl);
    }

    let maps: Vec<(String, String)> = clip.maps.iter().map(|m| (m.from.clone(), m.to.clone())).collect();
    let mut corr = correspond(a, b, &maps)?;
    add_guide_pairs(&mut corr, clip, a, b)?;
    if clip.declares(T::Merging) && !corr.groups.iter().any(|g| g.is_merge()) {
        return Err(PlanError::new("merging-needs-group", "merging needs several `map` lines onto one target"));
    }
    if clip.declares(T::Splitting) && !corr.groups.iter().any(|g| g.is_split()) {
        return Err(PlanError::new("splitting-needs-group", "splitting needs several `map` lines from one source"));
    }
    prune(&mut corr, a, b, &types);
    let delta = scene_diff(a, b, &corr).map_err(|e| PlanError::new("plan-error", e.to_string()))?;
    claim_slots(&delta, clip)?;
    let lock = check_focus(clip, a, b, &corr)?;

    let (exits, entries) = delta.churn();
    let churn: Vec<&str> = exits.iter().chain(&entries).copied().collect();
    let staggered = clip.declares(T::UpdatingContent);
    if !churn.is_empty() && !staggered {
        tl.stages = vec![
            Stage { name: StageName::Exit, start: 0.0, end: EXIT_END },
            Stage { name: StageName::Transform, start: EXIT_END, end: ENTER_START },
            Stage { name: StageName::Enter, start: ENTER_START, end: 1.0 },
        ];
    }
    let tr = tl.stage(StageName::Transform).expect("transform stage");
    let slot = |id: &str| -> (f64, f64) {
        if staggered {
            let k = churn.iter().position(|c| *c == id).expect("churn member") as f64;
            let o = 1.0 / (churn.len() as f64 + 1.0);
            (k * o, k * o + 2.0 * o)
        } else if exits.contains(&id) {
            (0.0, EXIT_END)
        } else {
            (ENTER_START, 1.0)
        }
    };

    let morphing = clip.declares(T::Morphing);
    let pairs: BTreeMap<&str, &str> = corr.pairs.iter().map(|p| (p.source.as_str(), p.target.as_str())).collect();
    let plain = |s: &str, t: &str| !corr.is_group_pair(s, t);
    let n_b = b.elements.len() as f64;
    for (i, ea) in a.elements.iter().enumerate() {
        let i_f = i as f64;
        if let Some(&tid) = pairs.get(ea.id.as_str()) {
            let j = b.index_of(tid).expect("paired") as f64;
            let eb = &b.elements[j as usize];
            let mut track = ElementTrack::between(TrackRole::Pair, ea, eb, tr.start, tr.end, easing, (i_f, j));
            morph_track(&mut track, ea, eb, tr, easing, morphing && plain(&ea.id, tid))?;
            tl.tracks.push(track);
        } else if let Some(g) = corr.groups.iter().find(|g| g.is_merge() && g.sources.contains(&ea.id)) {
            let target = b.element(&g.targets[0]).expect("group target");
            let j = b.index_of(&target.id).expect("group target") as f64;
            let end = moved(ea, target.vars.position);
            let mut track = ElementTrack::between(TrackRole::GroupMember, ea, &end, tr.start, tr.end, easing, (i_f, j - 0.5));
            track.visibility = Visibility::Before { x: tr.end };
            tl.tracks.push(track);
        } else {
            let (s, e) = slot(&ea.id);
            let mut track = ElementTrack::between(TrackRole::Exit, ea, &faded(ea), s, e, easing, (i_f, -1.0 + i_f / (i_f + 2.0)));
            track.visibility = Visibility::Before { x: 1.0 };
            tl.tracks.push(track);
        }
    }
    let targets: Vec<&str> = pairs.values().copied().collect();
    for (j, eb) in b.elements.iter().enumerate() {
        let j_f = j as f64;
        if targets.contains(&eb.id.as_str()) {
            continue;
        }
        if let Some(g) = corr.groups.iter().find(|g| g.is_split() && g.targets.contains(&eb.id)) {
            let source = a.element(&g.sources[0]).expect("group source");
            let i = a.index_of(&source.id).expect("group source") as f64;
            let start = moved(eb, source.vars.position);
            let mut track = ElementTrack::between(TrackRole::GroupMember, &start, eb, tr.start, tr.end, easing, (i + 0.5, j_f));
            track.visibility = Visibility::After { x: tr.start };
            tl.tracks.push(track);
        } else {
            let (s, e) = slot(&eb.id);
            let mut track = ElementTrack::between(TrackRole::Enter, &faded(eb), eb, s, e, easing, (n_b + j_f, j_f));
            track.visibility = Visibility::After { x: 0.0 };
            tl.tracks.push(track);
        }
    }

    let dolly = lock.as_ref().filter(|_| clip.declares(T::Dolly)).map(|(_, p)| *p);
    tl.camera = if a.camera == b.camera && clip.camera_path.is_empty() {
        CameraTrack::still(a.camera)
    } else {
        camera_track(clip, a, b, tr, easing, dolly)
    };
    tl.focus_lock = lock.map(|(id, _)| id);
    tl.correspondence = corr;
    Ok(tl)
}
