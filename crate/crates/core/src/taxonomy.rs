//! Closed vocabulary of narrative transitions and the visual-variable contract
//! each one promises to honor.

use std::fmt;

use serde::Serialize;

use crate::model::{channels, Channel, ChannelSet, ElementKind, SceneDelta, VariableDelta};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    Refresh,
    Halftime,
    CameraMotion,
    PreservingGuide,
    NarrativeAgent,
}

impl Category {
    pub const ALL: [Category; 5] = [
        Category::Refresh,
        Category::Halftime,
        Category::CameraMotion,
        Category::PreservingGuide,
        Category::NarrativeAgent,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Category::Refresh => "refresh",
            Category::Halftime => "halftime",
            Category::CameraMotion => "camera_motion",
            Category::PreservingGuide => "preserving_guide",
            Category::NarrativeAgent => "narrative_agent",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }

    /// Refresh, Halftime and Camera Motion do not depend on the content shown.
    pub fn is_content_agnostic(self) -> bool {
        matches!(self, Category::Refresh | Category::Halftime | Category::CameraMotion)
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One concrete transition. Declaration order here is the taxonomy order used
/// for tie-breaking throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TransitionType {
    HardCut,
    Fade,
    Wipe,
    Halftime,
    Pedestal,
    Truck,
    Tilt,
    Pan,
    Dolly,
    Zoom,
    RackFocus,
    RstGuide,
    ExpandingGuide,
    ShrinkingGuide,
    StayingGuide,
    UpdatingContent,
    Scaling,
    Morphing,
    Merging,
    Splitting,
}

impl TransitionType {
    pub const ALL: [TransitionType; 20] = [
        TransitionType::HardCut,
        TransitionType::Fade,
        TransitionType::Wipe,
        TransitionType::Halftime,
        TransitionType::Pedestal,
        TransitionType::Truck,
        TransitionType::Tilt,
        TransitionType::Pan,
        TransitionType::Dolly,
        TransitionType::Zoom,
        TransitionType::RackFocus,
        TransitionType::RstGuide,
        TransitionType::ExpandingGuide,
        TransitionType::ShrinkingGuide,
        TransitionType::StayingGuide,
        TransitionType::UpdatingContent,
        TransitionType::Scaling,
        TransitionType::Morphing,
        TransitionType::Merging,
        TransitionType::Splitting,
    ];

    pub fn category(self) -> Category {
        use TransitionType::*;
        match self {
            HardCut | Fade | Wipe => Category::Refresh,
            Halftime => Category::Halftime,
            Pedestal | Truck | Tilt | Pan | Dolly | Zoom | RackFocus => Category::CameraMotion,
            RstGuide | ExpandingGuide | ShrinkingGuide | StayingGuide => Category::PreservingGuide,
            UpdatingContent | Scaling | Morphing | Merging | Splitting => Category::NarrativeAgent,
        }
    }

    /// Subtype part of the canonical name; `None` for Halftime.
    pub fn subtype(self) -> Option<&'static str> {
        use TransitionType::*;
        Some(match self {
            HardCut => "hard_cut",
            Fade => "fade",
            Wipe => "wipe",
            Halftime => return None,
            Pedestal => "pedestal",
            Truck => "truck",
            Tilt => "tilt",
            Pan => "pan",
            Dolly => "dolly",
            Zoom => "zoom",
            RackFocus => "rack_focus",
            RstGuide => "rst_guide",
            ExpandingGuide => "expanding_guide",
            ShrinkingGuide => "shrinking_guide",
            StayingGuide => "staying_guide",
            UpdatingContent => "updating_content",
            Scaling => "scaling",
            Morphing => "morphing",
            Merging => "merging",
            Splitting => "splitting",
        })
    }

    /// Canonical `category.subtype` name (bare `halftime` for Halftime).
    pub fn name(self) -> String {
        match self.subtype() {
            Some(sub) => format!("{}.{}", self.category().name(), sub),
            None => self.category().name().to_string(),
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.name() == s)
    }

    pub fn is_camera(self) -> bool {
        self.category() == Category::CameraMotion
    }

    /// Whether the transition replaces the whole scene (no shared layer).
    pub fn is_scene_replacing(self) -> bool {
        matches!(self.category(), Category::Refresh | Category::Halftime)
    }

    /// Camera subtypes that hold a focus element steady on screen.
    pub fn needs_focus_lock(self) -> bool {
        matches!(self, TransitionType::Dolly | TransitionType::Tilt | TransitionType::Pan)
    }
}

impl fmt::Display for TransitionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl Serialize for TransitionType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    GuidedElements,
    AgentElements,
    WholeScene,
    CameraOnly,
}

/// Which pose component a camera subtype must move.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoseComponent {
    CenterX,
    CenterY,
    Zoom,
    Focus,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VariableContract {
    /// Every channel here must change on at least one element in scope.
    pub must_change: ChannelSet,
    /// At least one of these must change on some element in scope (empty = no requirement).
    pub change_any_of: ChannelSet,
    pub must_preserve: ChannelSet,
    pub scope: Scope,
    pub pose: Option<PoseComponent>,
    /// Halftime only: an interstitial scene is shown between the states.
    pub interstitial: bool,
}

impl VariableContract {
    fn new(scope: Scope) -> Self {
        VariableContract {
            must_change: ChannelSet::new(),
            change_any_of: ChannelSet::new(),
            must_preserve: ChannelSet::new(),
            scope,
            pose: None,
            interstitial: false,
        }
    }
}

pub fn contract_of(t: TransitionType) -> VariableContract {
    use Channel::*;
    use TransitionType::*;
    let mut c;
    match t {
        HardCut | Fade | Wipe => c = VariableContract::new(Scope::WholeScene),
        Halftime => {
            c = VariableContract::new(Scope::WholeScene);
            c.interstitial = true;
        }
        Pedestal | Truck | Tilt | Pan | Dolly | Zoom | RackFocus => {
            c = VariableContract::new(Scope::CameraOnly);
            c.must_preserve = channels(Channel::ELEMENT_LOCAL);
            c.pose = Some(match t {
                Pedestal | Tilt => PoseComponent::CenterY,
                Truck | Pan => PoseComponent::CenterX,
                Dolly | Zoom => PoseComponent::Zoom,
                _ => PoseComponent::Focus,
            });
        }
        RstGuide => {
            c = VariableContract::new(Scope::GuidedElements);
            c.must_preserve = channels([Shape, Color]);
            c.change_any_of = channels([Position, Size, Orientation]);
        }
        StayingGuide => {
            c = VariableContract::new(Scope::GuidedElements);
            c.must_preserve = channels([Position, Size, Color, Shape, Orientation]);
        }
        ExpandingGuide | ShrinkingGuide => {
            c = VariableContract::new(Scope::GuidedElements);
            c.must_preserve = channels([Color]);
            c.must_change = channels([Size]);
        }
        UpdatingContent => {
            c = VariableContract::new(Scope::AgentElements);
            c.must_preserve = channels([Shape, Position, Color]);
            c.must_change = channels([Count]);
        }
        Scaling => {
            c = VariableContract::new(Scope::AgentElements);
            c.must_preserve = channels([Position, Color, Shape]);
            c.must_change = channels([Size]);
        }
        Morphing => {
            c = VariableContract::new(Scope::AgentElements);
            c.must_preserve = channels([Position]);
            c.must_change = channels([Shape]);
        }
        Merging | Splitting => {
            c = VariableContract::new(Scope::AgentElements);
            c.must_preserve = channels([Color]);
            c.must_change = channels([Position, Count]);
        }
    }
    c
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationKind {
    /// A channel that must be preserved changed on this element pair.
    Broken(Channel),
    /// No element in scope changed this channel.
    Missing(Channel),
    /// None of the layout channels changed.
    NoLayoutChange,
    /// The contract needs an element in scope and there is none.
    EmptyScope,
    /// The camera pose component this subtype moves did not change.
    CameraStill,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub transition: TransitionType,
    /// Element id (source side) or `"camera"` / `"scene"`.
    pub element: String,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ViolationKind::Broken(c) => write!(f, "{}: `{}` changed {} which must be preserved", self.transition, self.element, c),
            ViolationKind::Missing(c) => write!(f, "{}: no element changed {}", self.transition, c),
            ViolationKind::NoLayoutChange => write!(f, "{}: no guided element changed position, size or orientation", self.transition),
            ViolationKind::EmptyScope => write!(f, "{}: no element is in scope", self.transition),
            ViolationKind::CameraStill => write!(f, "{}: the camera did not move as this subtype requires", self.transition),
        }
    }
}

/// The element moved exactly with the camera and changed nothing else.
pub fn is_camera_locked(delta: &SceneDelta, d: &VariableDelta) -> bool {
    !delta.camera_delta.is_zero()
        && (delta.camera_delta.moves_x() || delta.camera_delta.moves_y())
        && d.shift.distance(delta.camera_delta.shift()) <= 1e-6
        && d.changed.iter().all(|c| *c == Channel::Position)
}

/// Pairs of `delta` that a contract for `t` applies to.
pub fn scope_of<'a>(delta: &'a SceneDelta, t: TransitionType) -> Vec<&'a VariableDelta> {
    use TransitionType::*;
    let plain = |d: &&VariableDelta| !delta.is_group_pair(d);
    match t {
        HardCut | Fade | Wipe | Halftime => Vec::new(),
        Pedestal | Truck | Tilt | Pan | Dolly | Zoom | RackFocus => {
            delta.matched.iter().filter(|d| !is_camera_locked(delta, d)).collect()
        }
        ExpandingGuide => delta
            .matched
            .iter()
            .filter(|d| d.source_kind != ElementKind::Background && d.target_kind == ElementKind::Background)
            .collect(),
        ShrinkingGuide => delta
            .matched
            .iter()
            .filter(|d| d.source_kind == ElementKind::Background && d.target_kind != ElementKind::Background)
            .collect(),
        Merging => delta
            .matched
            .iter()
            .filter(|d| delta.groups.iter().any(|g| g.is_merge() && g.representative() == (d.source.as_str(), d.target.as_str())))
            .collect(),
        Splitting => delta
            .matched
            .iter()
            .filter(|d| delta.groups.iter().any(|g| g.is_split() && g.representative() == (d.source.as_str(), d.target.as_str())))
            .collect(),
        RstGuide | StayingGuide | UpdatingContent | Scaling | Morphing => delta.matched.iter().filter(plain).collect(),
    }
}

fn check_one(delta: &SceneDelta, t: TransitionType, element_rules: bool, out: &mut Vec<Violation>) {
    let contract = contract_of(t);
    let scope = scope_of(delta, t);
    let violation = |element: &str, kind| Violation { transition: t, element: element.to_string(), kind };

    if let Some(pose) = contract.pose {
        let cd = &delta.camera_delta;
        let moved = match pose {
            PoseComponent::CenterX => cd.moves_x(),
            PoseComponent::CenterY => cd.moves_y(),
            PoseComponent::Zoom => cd.zooms(),
            PoseComponent::Focus => cd.refocuses(),
        };
        if !moved {
            out.push(violation("camera", ViolationKind::CameraStill));
        }
    }
    if !element_rules {
        return;
    }
    let needs_scope = matches!(contract.scope, Scope::GuidedElements)
        || matches!(t, TransitionType::Merging | TransitionType::Splitting);
    if needs_scope && scope.is_empty() {
        out.push(violation("scene", ViolationKind::EmptyScope));
        return;
    }
    for d in &scope {
        for ch in d.changed.intersection(&contract.must_preserve) {
            out.push(violation(&d.source, ViolationKind::Broken(*ch)));
        }
    }
    for ch in &contract.must_change {
        let hit = match ch {
            Channel::Count => delta.count_changed(),
            _ => scope.iter().any(|d| d.changed.contains(ch)),
        };
        if !hit {
            out.push(violation("scene", ViolationKind::Missing(*ch)));
        }
    }
    if !contract.change_any_of.is_empty()
        && !scope.iter().any(|d| d.changed.intersection(&contract.change_any_of).next().is_some())
    {
        out.push(violation("scene", ViolationKind::NoLayoutChange));
    }
}

/// Checks one contract against an observed diff.
pub fn satisfies(delta: &SceneDelta, t: TransitionType) -> (bool, Vec<Violation>) {
    let mut out = Vec::new();
    check_one(delta, t, true, &mut out);
    (out.is_empty(), out)
}

/// Checks a combined transition. Camera contracts only constrain element-local
/// channels when no element-level transition is declared alongside them.
pub fn satisfies_all(delta: &SceneDelta, ts: &[TransitionType]) -> (bool, Vec<Violation>) {
    let has_element_level = ts.iter().any(|t| !t.is_camera() && !t.is_scene_replacing());
    let mut out = Vec::new();
    for t in ts {
        check_one(delta, *t, !(t.is_camera() && has_element_level), &mut out);
    }
    (out.is_empty(), out)
}
