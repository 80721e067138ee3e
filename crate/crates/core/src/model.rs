//! Scene-graph domain types: elements and their visual variables, scenes,
//! camera poses, and the diffs between two scenes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::geometry;

/// Number of boundary points used whenever two outlines are compared or morphed.
pub const OUTLINE_SAMPLES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn distance(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }
}

impl std::ops::Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl std::ops::Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl std::ops::Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

/// 8-bit sRGB color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct Rgb(pub u8, pub u8, pub u8);

impl Rgb {
    pub const BLACK: Rgb = Rgb(0, 0, 0);
    pub const WHITE: Rgb = Rgb(255, 255, 255);

    pub fn channels(self) -> [u8; 3] {
        [self.0, self.1, self.2]
    }

    pub fn from_channels(c: [u8; 3]) -> Self {
        Rgb(c[0], c[1], c[2])
    }

    /// Parses `#rrggbb` (case-insensitive).
    pub fn parse_hex(s: &str) -> Option<Rgb> {
        let hex = s.strip_prefix('#')?;
        if hex.len() != 6 || !hex.bytes().all(|b| b.is_ascii_hexdigit()) {
            return None;
        }
        let c = |i: usize| u8::from_str_radix(&hex[i..i + 2], 16).ok();
        Some(Rgb(c(0)?, c(2)?, c(4)?))
    }
}

impl fmt::Display for Rgb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{:02x}{:02x}{:02x}", self.0, self.1, self.2)
    }
}

/// Drawable outline, in local coordinates centered at the element anchor.
///
/// Angles of arc sectors are degrees measured clockwise from 12 o'clock.
#[derive(Debug, Clone, PartialEq)]
pub enum Geometry {
    Polygon { vertices: Vec<Point> },
    Polyline { vertices: Vec<Point> },
    Circle { radius: f64 },
    ArcSector { radius: f64, inner_radius: f64, start: f64, end: f64 },
    Rectangle { width: f64, height: f64 },
    TextRun { content: String, font_size: f64 },
    IconPath { vertices: Vec<Point> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeometryKind {
    Polygon,
    Polyline,
    Circle,
    ArcSector,
    Rectangle,
    TextRun,
    IconPath,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polyline needs at least 2 vertices, got {0}")]
    TooFewPolylineVertices(usize),
    #[error("arc sector must have start < end and a span of at most 360 degrees")]
    BadSectorAngles,
    #[error("{0} must be positive")]
    NonPositive(&'static str),
}

impl Geometry {
    pub fn kind(&self) -> GeometryKind {
        match self {
            Geometry::Polygon { .. } => GeometryKind::Polygon,
            Geometry::Polyline { .. } => GeometryKind::Polyline,
            Geometry::Circle { .. } => GeometryKind::Circle,
            Geometry::ArcSector { .. } => GeometryKind::ArcSector,
            Geometry::Rectangle { .. } => GeometryKind::Rectangle,
            Geometry::TextRun { .. } => GeometryKind::TextRun,
            Geometry::IconPath { .. } => GeometryKind::IconPath,
        }
    }

    /// Whether the outline encloses an area.
    pub fn is_closed(&self) -> bool {
        !matches!(self, Geometry::Polyline { .. })
    }

    pub fn check(&self) -> Result<(), GeometryError> {
        match self {
            Geometry::Polygon { vertices } | Geometry::IconPath { vertices } => {
                if vertices.len() < 3 {
                    return Err(GeometryError::TooFewVertices(vertices.len()));
                }
            }
            Geometry::Polyline { vertices } => {
                if vertices.len() < 2 {
                    return Err(GeometryError::TooFewPolylineVertices(vertices.len()));
                }
            }
            Geometry::Circle { radius } => {
                if *radius <= 0.0 {
                    return Err(GeometryError::NonPositive("radius"));
                }
            }
            Geometry::ArcSector { radius, inner_radius, start, end } => {
                if *radius <= 0.0 {
                    return Err(GeometryError::NonPositive("radius"));
                }
                if *inner_radius < 0.0 || inner_radius >= radius {
                    return Err(GeometryError::NonPositive("radius - inner radius"));
                }
                if start >= end || end - start > 360.0 {
                    return Err(GeometryError::BadSectorAngles);
                }
            }
            Geometry::Rectangle { width, height } => {
                if *width <= 0.0 || *height <= 0.0 {
                    return Err(GeometryError::NonPositive("rectangle extent"));
                }
            }
            Geometry::TextRun { font_size, .. } => {
                if *font_size <= 0.0 {
                    return Err(GeometryError::NonPositive("font size"));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VisualVariables {
    pub position: Point,
    pub size: f64,
    pub color: Rgb,
    pub shape: Geometry,
    pub orientation: f64,
    pub opacity: f64,
    pub depth: u32,
}

impl VisualVariables {
    pub fn new(shape: Geometry) -> Self {
        VisualVariables {
            position: Point::ORIGIN,
            size: 1.0,
            color: Rgb::BLACK,
            shape,
            orientation: 0.0,
            opacity: 1.0,
            depth: 0,
        }
    }

    /// Clamps and normalizes values into their documented ranges.
    pub fn normalized(mut self) -> Self {
        self.size = self.size.max(0.0);
        self.opacity = self.opacity.clamp(0.0, 1.0);
        self.orientation = normalize_degrees(self.orientation);
        self
    }

    /// Scale factor times the outline's bounding radius: the displayed extent.
    pub fn effective_size(&self) -> f64 {
        self.size * geometry::bounding_radius(&self.shape)
    }
}

pub fn normalize_degrees(deg: f64) -> f64 {
    let r = deg.rem_euclid(360.0);
    if r >= 360.0 {
        0.0
    } else {
        r
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ElementKind {
    ChartMark,
    Axis,
    Legend,
    Label,
    Icon,
    Text,
    Number,
    Background,
    Annotation,
}

impl ElementKind {
    pub const ALL: [ElementKind; 9] = [
        ElementKind::ChartMark,
        ElementKind::Axis,
        ElementKind::Legend,
        ElementKind::Label,
        ElementKind::Icon,
        ElementKind::Text,
        ElementKind::Number,
        ElementKind::Background,
        ElementKind::Annotation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ElementKind::ChartMark => "chart_mark",
            ElementKind::Axis => "axis",
            ElementKind::Legend => "legend",
            ElementKind::Label => "label",
            ElementKind::Icon => "icon",
            ElementKind::Text => "text",
            ElementKind::Number => "number",
            ElementKind::Background => "background",
            ElementKind::Annotation => "annotation",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }
}

/// Marks an element as encoding one field of one dataset row.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DataBinding {
    pub dataset: String,
    pub row: String,
    pub field: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VisualElement {
    pub id: String,
    pub kind: ElementKind,
    pub vars: VisualVariables,
    pub binding: Option<DataBinding>,
}

impl VisualElement {
    pub fn new(id: impl Into<String>, kind: ElementKind, vars: VisualVariables) -> Self {
        VisualElement { id: id.into(), kind, vars, binding: None }
    }

    pub fn with_binding(mut self, binding: DataBinding) -> Self {
        self.binding = Some(binding);
        self
    }

    pub fn is_data_bound(&self) -> bool {
        self.binding.is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CameraPose {
    pub center: Point,
    pub zoom: f64,
    pub focus_depth: f64,
}

impl Default for CameraPose {
    fn default() -> Self {
        CameraPose { center: Point::ORIGIN, zoom: 1.0, focus_depth: 0.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClipForm {
    Visualization,
    NonVisualization,
}

impl ClipForm {
    pub fn name(self) -> &'static str {
        match self {
            ClipForm::Visualization => "visualization",
            ClipForm::NonVisualization => "non_visualization",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "visualization" => Some(ClipForm::Visualization),
            "non_visualization" => Some(ClipForm::NonVisualization),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VisType {
    LineChart,
    ScatterPlot,
    BarChart,
    Map,
    ProportionalArea,
    Pie,
    Donut,
    Diagram,
    Pictograph,
    NumberIconText,
}

impl VisType {
    pub const ALL: [VisType; 10] = [
        VisType::LineChart,
        VisType::ScatterPlot,
        VisType::BarChart,
        VisType::Map,
        VisType::ProportionalArea,
        VisType::Pie,
        VisType::Donut,
        VisType::Diagram,
        VisType::Pictograph,
        VisType::NumberIconText,
    ];

    pub fn name(self) -> &'static str {
        match self {
            VisType::LineChart => "line",
            VisType::ScatterPlot => "scatter",
            VisType::BarChart => "bar",
            VisType::Map => "map",
            VisType::ProportionalArea => "area",
            VisType::Pie => "pie",
            VisType::Donut => "donut",
            VisType::Diagram => "diagram",
            VisType::Pictograph => "pictograph",
            VisType::NumberIconText => "number_icon_text",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|v| v.name() == s)
    }
}

impl serde::Serialize for VisType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    pub id: String,
    /// Draw order is list order.
    pub elements: Vec<VisualElement>,
    pub camera: CameraPose,
    pub clip_form: ClipForm,
    pub vis_type: Option<VisType>,
}

impl Scene {
    pub fn new(id: impl Into<String>) -> Self {
        Scene {
            id: id.into(),
            elements: Vec::new(),
            camera: CameraPose::default(),
            clip_form: ClipForm::NonVisualization,
            vis_type: None,
        }
    }

    pub fn element(&self, id: &str) -> Option<&VisualElement> {
        self.elements.iter().find(|e| e.id == id)
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.elements.iter().position(|e| e.id == id)
    }

    /// A visualization scene must carry data-encoded content or a vis type.
    pub fn form_is_consistent(&self) -> bool {
        self.clip_form == ClipForm::NonVisualization
            || self.vis_type.is_some()
            || self.elements.iter().any(VisualElement::is_data_bound)
    }
}

/// Tracked visual channels. `Count` only appears in group-level diffs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Channel {
    Position,
    Size,
    Color,
    Shape,
    Orientation,
    Opacity,
    Count,
}

impl Channel {
    pub const ALL: [Channel; 7] = [
        Channel::Position,
        Channel::Size,
        Channel::Color,
        Channel::Shape,
        Channel::Orientation,
        Channel::Opacity,
        Channel::Count,
    ];

    /// Channels carried by a single element.
    pub const ELEMENT_LOCAL: [Channel; 6] = [
        Channel::Position,
        Channel::Size,
        Channel::Color,
        Channel::Shape,
        Channel::Orientation,
        Channel::Opacity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Channel::Position => "position",
            Channel::Size => "size",
            Channel::Color => "color",
            Channel::Shape => "shape",
            Channel::Orientation => "orientation",
            Channel::Opacity => "opacity",
            Channel::Count => "count",
        }
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub type ChannelSet = BTreeSet<Channel>;

pub fn channels<const N: usize>(list: [Channel; N]) -> ChannelSet {
    list.into_iter().collect()
}

/// Per-channel slack used by [`variable_delta`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub position: f64,
    pub size: f64,
    pub orientation: f64,
    pub color: u8,
    pub opacity: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { position: 1e-6, size: 1e-6, orientation: 1e-4, color: 0, opacity: 1e-6 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VariableDelta {
    pub source: String,
    pub target: String,
    pub changed: ChannelSet,
    pub preserved: ChannelSet,
    /// Target anchor minus source anchor.
    pub shift: Point,
    pub data_bound: bool,
    pub source_kind: ElementKind,
    pub target_kind: ElementKind,
}

impl VariableDelta {
    pub fn is_unchanged(&self) -> bool {
        self.changed.is_empty()
    }
}

pub fn variable_delta(a: &VisualElement, b: &VisualElement, tol: &Tolerances) -> VariableDelta {
    let va = &a.vars;
    let vb = &b.vars;
    let mut changed = ChannelSet::new();

    if va.position.distance(vb.position) > tol.position {
        changed.insert(Channel::Position);
    }
    if (va.effective_size() - vb.effective_size()).abs() > tol.size {
        changed.insert(Channel::Size);
    }
    let color_gap = va
        .color
        .channels()
        .iter()
        .zip(vb.color.channels())
        .map(|(x, y)| x.abs_diff(y))
        .max()
        .unwrap_or(0);
    if color_gap > tol.color {
        changed.insert(Channel::Color);
    }
    if shape_differs(&va.shape, &vb.shape, tol.position) {
        changed.insert(Channel::Shape);
    }
    let turn = (va.orientation - vb.orientation).rem_euclid(360.0);
    if turn.min(360.0 - turn) > tol.orientation {
        changed.insert(Channel::Orientation);
    }
    if (va.opacity - vb.opacity).abs() > tol.opacity {
        changed.insert(Channel::Opacity);
    }

    let preserved = Channel::ELEMENT_LOCAL
        .into_iter()
        .chain([Channel::Count])
        .filter(|c| !changed.contains(c))
        .collect();
    VariableDelta {
        source: a.id.clone(),
        target: b.id.clone(),
        changed,
        preserved,
        shift: vb.position - va.position,
        data_bound: a.is_data_bound() || b.is_data_bound(),
        source_kind: a.kind,
        target_kind: b.kind,
    }
}

/// Kind mismatch, text mismatch, or any resampled outline point moving further
/// than `tolerance`.
pub fn shape_differs(a: &Geometry, b: &Geometry, tolerance: f64) -> bool {
    if a.kind() != b.kind() {
        return true;
    }
    if let (
        Geometry::TextRun { content: ca, font_size: fa },
        Geometry::TextRun { content: cb, font_size: fb },
    ) = (a, b)
    {
        return ca != cb || (fa - fb).abs() > tolerance;
    }
    if a == b {
        return false;
    }
    let pa = geometry::resample(a, OUTLINE_SAMPLES);
    let pb = geometry::resample(b, OUTLINE_SAMPLES);
    pa.iter().zip(&pb).any(|(p, q)| p.distance(*q) > tolerance)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchMethod {
    Explicit,
    Inferred,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Pair {
    pub source: String,
    pub target: String,
    pub method: MatchMethod,
}

/// A many-to-one (merge) or one-to-many (split) relation between scenes.
///
/// The first member on the many side (in document order) is also recorded as
/// an ordinary pair with the single element on the other side; the remaining
/// members appear as exits (merge) or entries (split) in a [`SceneDelta`].
#[derive(Debug, Clone, PartialEq)]
pub struct Group {
    pub sources: Vec<String>,
    pub targets: Vec<String>,
}

impl Group {
    pub fn is_merge(&self) -> bool {
        self.sources.len() >= 2 && self.targets.len() == 1
    }

    pub fn is_split(&self) -> bool {
        self.sources.len() == 1 && self.targets.len() >= 2
    }

    pub fn representative(&self) -> (&str, &str) {
        (&self.sources[0], &self.targets[0])
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Correspondence {
    pub pairs: Vec<Pair>,
    pub groups: Vec<Group>,
}

impl Correspondence {
    pub fn identity(scene: &Scene) -> Self {
        Correspondence {
            pairs: scene
                .elements
                .iter()
                .map(|e| Pair { source: e.id.clone(), target: e.id.clone(), method: MatchMethod::Inferred })
                .collect(),
            groups: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty() && self.groups.is_empty()
    }

    pub fn target_of(&self, source: &str) -> Option<&str> {
        self.pairs.iter().find(|p| p.source == source).map(|p| p.target.as_str())
    }

    pub fn source_of(&self, target: &str) -> Option<&str> {
        self.pairs.iter().find(|p| p.target == target).map(|p| p.source.as_str())
    }

    /// Every element id that participates in a group, on either side.
    pub fn grouped_ids(&self) -> (BTreeSet<&str>, BTreeSet<&str>) {
        let mut src = BTreeSet::new();
        let mut dst = BTreeSet::new();
        for g in &self.groups {
            src.extend(g.sources.iter().map(String::as_str));
            dst.extend(g.targets.iter().map(String::as_str));
        }
        (src, dst)
    }

    pub fn is_group_pair(&self, source: &str, target: &str) -> bool {
        self.groups.iter().any(|g| g.representative() == (source, target))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct CameraDelta {
    pub dx: f64,
    pub dy: f64,
    pub dzoom: f64,
    pub dfocus: f64,
}

impl CameraDelta {
    pub const EPS: f64 = 1e-9;

    pub fn between(a: &CameraPose, b: &CameraPose) -> Self {
        CameraDelta {
            dx: b.center.x - a.center.x,
            dy: b.center.y - a.center.y,
            dzoom: b.zoom - a.zoom,
            dfocus: b.focus_depth - a.focus_depth,
        }
    }

    pub fn moves_x(&self) -> bool {
        self.dx.abs() > Self::EPS
    }
    pub fn moves_y(&self) -> bool {
        self.dy.abs() > Self::EPS
    }
    pub fn zooms(&self) -> bool {
        self.dzoom.abs() > Self::EPS
    }
    pub fn refocuses(&self) -> bool {
        self.dfocus.abs() > Self::EPS
    }

    pub fn is_zero(&self) -> bool {
        !(self.moves_x() || self.moves_y() || self.zooms() || self.refocuses())
    }

    pub fn shift(&self) -> Point {
        Point::new(self.dx, self.dy)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SceneDelta {
    pub matched: Vec<VariableDelta>,
    pub exited: Vec<String>,
    pub entered: Vec<String>,
    pub groups: Vec<Group>,
    pub camera_delta: CameraDelta,
}

impl SceneDelta {
    /// Element count changed between the scenes.
    pub fn count_changed(&self) -> bool {
        !self.exited.is_empty() || !self.entered.is_empty()
    }

    /// Exits and entries that are not members of a merge/split group.
    pub fn churn(&self) -> (Vec<&str>, Vec<&str>) {
        let in_group = |id: &str, side: fn(&Group) -> &Vec<String>| {
            self.groups.iter().any(|g| side(g).iter().any(|m| m == id))
        };
        let exits = self.exited.iter().map(String::as_str).filter(|id| !in_group(id, |g| &g.sources)).collect();
        let entries = self.entered.iter().map(String::as_str).filter(|id| !in_group(id, |g| &g.targets)).collect();
        (exits, entries)
    }

    pub fn is_group_pair(&self, d: &VariableDelta) -> bool {
        self.groups.iter().any(|g| g.representative() == (d.source.as_str(), d.target.as_str()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorrespondenceError {
    #[error("correspondence references unknown source element `{0}`")]
    UnknownSource(String),
    #[error("correspondence references unknown target element `{0}`")]
    UnknownTarget(String),
    #[error("correspondence is not injective at `{0}`")]
    NotInjective(String),
}

pub fn scene_diff(a: &Scene, b: &Scene, c: &Correspondence) -> Result<SceneDelta, CorrespondenceError> {
    scene_diff_with(a, b, c, &Tolerances::default())
}

pub fn scene_diff_with(
    a: &Scene,
    b: &Scene,
    c: &Correspondence,
    tol: &Tolerances,
) -> Result<SceneDelta, CorrespondenceError> {
    let mut used_src = BTreeSet::new();
    let mut used_dst = BTreeSet::new();
    let mut matched = Vec::with_capacity(c.pairs.len());
    for pair in &c.pairs {
        let ea = a.element(&pair.source).ok_or_else(|| CorrespondenceError::UnknownSource(pair.source.clone()))?;
        let eb = b.element(&pair.target).ok_or_else(|| CorrespondenceError::UnknownTarget(pair.target.clone()))?;
        if !used_src.insert(pair.source.as_str()) {
            return Err(CorrespondenceError::NotInjective(pair.source.clone()));
        }
        if !used_dst.insert(pair.target.as_str()) {
            return Err(CorrespondenceError::NotInjective(pair.target.clone()));
        }
        matched.push(variable_delta(ea, eb, tol));
    }
    for g in &c.groups {
        if let Some(s) = g.sources.iter().find(|s| a.element(s).is_none()) {
            return Err(CorrespondenceError::UnknownSource(s.clone()));
        }
        if let Some(t) = g.targets.iter().find(|t| b.element(t).is_none()) {
            return Err(CorrespondenceError::UnknownTarget(t.clone()));
        }
    }
    let exited = a.elements.iter().filter(|e| !used_src.contains(e.id.as_str())).map(|e| e.id.clone()).collect();
    let entered = b.elements.iter().filter(|e| !used_dst.contains(e.id.as_str())).map(|e| e.id.clone()).collect();
    Ok(SceneDelta {
        matched,
        exited,
        entered,
        groups: c.groups.clone(),
        camera_delta: CameraDelta::between(&a.camera, &b.camera),
    })
}

/// Elements keyed by id, used where lookups dominate.
pub fn index_elements(scene: &Scene) -> BTreeMap<&str, &VisualElement> {
    scene.elements.iter().map(|e| (e.id.as_str(), e)).collect()
}
