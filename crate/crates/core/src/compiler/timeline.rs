//! Keyframed tracks and their evaluation at a normalized time.

use serde::Serialize;

use crate::easing::Easing;
use crate::model::{
    normalize_degrees, CameraPose, ClipForm, Correspondence, Geometry, Point, Rgb, Scene, VisType,
    VisualElement,
};
use crate::taxonomy::TransitionType;

pub trait Lerp: Clone {
    fn lerp(a: &Self, b: &Self, u: f64) -> Self;
}

impl Lerp for f64 {
    fn lerp(a: &f64, b: &f64, u: f64) -> f64 {
        a + (b - a) * u
    }
}

impl Lerp for Point {
    fn lerp(a: &Point, b: &Point, u: f64) -> Point {
        Point::new(a.x + (b.x - a.x) * u, a.y + (b.y - a.y) * u)
    }
}

impl Lerp for [f64; 3] {
    fn lerp(a: &[f64; 3], b: &[f64; 3], u: f64) -> [f64; 3] {
        [0, 1, 2].map(|i| a[i] + (b[i] - a[i]) * u)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Key<T> {
    pub t: f64,
    pub value: T,
    /// Easing of the segment that ends at this key.
    pub easing: Easing,
}

/// Piecewise curve over normalized time. Evaluates to the exact key value at
/// and beyond the first and last keys.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve<T> {
    pub keys: Vec<Key<T>>,
}

impl<T: Lerp + PartialEq> Curve<T> {
    pub fn constant(v: T) -> Self {
        Curve { keys: vec![Key { t: 0.0, value: v, easing: Easing::Linear }] }
    }

    /// Holds `a` until `t0`, eases to `b` by `t1`, then holds `b`.
    pub fn ramp(t0: f64, a: T, t1: f64, b: T, easing: Easing) -> Self {
        if a == b {
            return Self::constant(a);
        }
        Curve { keys: vec![Key { t: t0, value: a, easing: Easing::Linear }, Key { t: t1, value: b, easing }] }
    }

    pub fn is_constant(&self) -> bool {
        self.keys.windows(2).all(|w| w[0].value == w[1].value)
    }

    pub fn first(&self) -> &T {
        &self.keys[0].value
    }

    pub fn last(&self) -> &T {
        &self.keys[self.keys.len() - 1].value
    }

    pub fn eval(&self, t: f64) -> T {
        let keys = &self.keys;
        if t <= keys[0].t {
            return keys[0].value.clone();
        }
        let last = &keys[keys.len() - 1];
        if t >= last.t {
            return last.value.clone();
        }
        let i = keys.windows(2).position(|w| t >= w[0].t && t < w[1].t).unwrap_or(0);
        let (k0, k1) = (&keys[i], &keys[i + 1]);
        let span = k1.t - k0.t;
        let u = if span > 0.0 { (t - k0.t) / span } else { 1.0 };
        let e = k1.easing.apply(u);
        if e <= 0.0 {
            k0.value.clone()
        } else if e >= 1.0 {
            k1.value.clone()
        } else {
            T::lerp(&k0.value, &k1.value, e)
        }
    }

    /// Normalized times at which the value is not constant.
    pub fn active_span(&self) -> Option<(f64, f64)> {
        if self.is_constant() {
            return None;
        }
        Some((self.keys[0].t, self.keys[self.keys.len() - 1].t))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Visibility {
    Always,
    /// Visible while t < x.
    Before { x: f64 },
    /// Visible while t > x.
    After { x: f64 },
    /// Visible while t >= x.
    From { x: f64 },
    /// Visible while a <= t <= b.
    Within { a: f64, b: f64 },
}

impl Visibility {
    pub fn at(&self, t: f64) -> bool {
        match *self {
            Visibility::Always => true,
            Visibility::Before { x } => t < x,
            Visibility::After { x } => t > x,
            Visibility::From { x } => t >= x,
            Visibility::Within { a, b } => t >= a && t <= b,
        }
    }

    /// Interior times at which visibility switches.
    pub fn edges(&self) -> Vec<f64> {
        let inside = |x: f64| x > 0.0 && x < 1.0;
        match *self {
            Visibility::Always => vec![],
            Visibility::Before { x } | Visibility::After { x } | Visibility::From { x } => {
                if inside(x) {
                    vec![x]
                } else {
                    vec![]
                }
            }
            Visibility::Within { a, b } => [a, b].into_iter().filter(|x| inside(*x)).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StageName {
    Exit,
    Transform,
    Enter,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Stage {
    pub name: StageName,
    pub start: f64,
    pub end: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ShapeTrack {
    Constant,
    /// Pointwise interpolation between aligned outlines of equal length.
    Morph { from: Vec<Point>, to: Vec<Point>, closed: bool, progress: Curve<f64> },
    /// Switches to the target geometry at `at`.
    Swap { at: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TrackRole {
    Pair,
    Exit,
    Enter,
    /// Non-representative member of a merge or split group.
    GroupMember,
}

/// Animation of one element. `start` and `end` are exact at t = 0 and t = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ElementTrack {
    pub role: TrackRole,
    pub start: VisualElement,
    pub end: VisualElement,
    pub visibility: Visibility,
    pub position: Curve<Point>,
    pub size: Curve<f64>,
    /// Unwrapped degrees; normalized on evaluation.
    pub orientation: Curve<f64>,
    pub opacity: Curve<f64>,
    pub color: Curve<[f64; 3]>,
    pub shape: ShapeTrack,
    /// Draw position in the source and target scenes.
    pub order: (f64, f64),
}

fn rgb_f(c: Rgb) -> [f64; 3] {
    c.channels().map(f64::from)
}

/// Rounds half away from zero into 8-bit channels.
pub fn rgb_round(c: [f64; 3]) -> Rgb {
    Rgb::from_channels(c.map(|v| v.round().clamp(0.0, 255.0) as u8))
}

impl ElementTrack {
    /// A track that holds `el` unchanged.
    pub fn hold(role: TrackRole, el: &VisualElement, order: (f64, f64)) -> Self {
        ElementTrack {
            role,
            start: el.clone(),
            end: el.clone(),
            visibility: Visibility::Always,
            position: Curve::constant(el.vars.position),
            size: Curve::constant(el.vars.size),
            orientation: Curve::constant(el.vars.orientation),
            opacity: Curve::constant(el.vars.opacity),
            color: Curve::constant(rgb_f(el.vars.color)),
            shape: ShapeTrack::Constant,
            order,
        }
    }

    /// Every continuous channel eased from `a` to `b` over `[t0, t1]`.
    /// The shape track is left constant; callers set it.
    pub fn between(role: TrackRole, a: &VisualElement, b: &VisualElement, t0: f64, t1: f64, easing: Easing, order: (f64, f64)) -> Self {
        let o0 = a.vars.orientation;
        let delta = (b.vars.orientation - o0 + 540.0).rem_euclid(360.0) - 180.0;
        ElementTrack {
            role,
            start: a.clone(),
            end: b.clone(),
            visibility: Visibility::Always,
            position: Curve::ramp(t0, a.vars.position, t1, b.vars.position, easing),
            size: Curve::ramp(t0, a.vars.size, t1, b.vars.size, easing),
            orientation: Curve::ramp(t0, o0, t1, o0 + delta, easing),
            opacity: Curve::ramp(t0, a.vars.opacity, t1, b.vars.opacity, easing),
            color: Curve::ramp(t0, rgb_f(a.vars.color), t1, rgb_f(b.vars.color), easing),
            shape: ShapeTrack::Constant,
            order,
        }
    }

    pub fn visible_at(&self, t: f64) -> bool {
        self.visibility.at(t)
    }

    /// Whether any channel varies over the clip.
    pub fn is_animated(&self) -> bool {
        !(self.position.is_constant()
            && self.size.is_constant()
            && self.orientation.is_constant()
            && self.opacity.is_constant()
            && self.color.is_constant()
            && self.shape == ShapeTrack::Constant)
    }

    pub fn eval(&self, t: f64) -> VisualElement {
        if t <= 0.0 {
            return self.start.clone();
        }
        if t >= 1.0 {
            return self.end.clone();
        }
        let mut el = self.start.clone();
        let v = &mut el.vars;
        v.position = self.position.eval(t);
        v.size = self.size.eval(t).max(0.0);
        v.orientation = normalize_degrees(self.orientation.eval(t));
        v.opacity = self.opacity.eval(t).clamp(0.0, 1.0);
        v.color = rgb_round(self.color.eval(t));
        v.shape = match &self.shape {
            ShapeTrack::Constant => self.start.vars.shape.clone(),
            ShapeTrack::Swap { at } => {
                if t >= *at {
                    self.end.vars.shape.clone()
                } else {
                    self.start.vars.shape.clone()
                }
            }
            ShapeTrack::Morph { from, to, closed, progress } => {
                let p = progress.eval(t);
                if p <= 0.0 {
                    self.start.vars.shape.clone()
                } else if p >= 1.0 {
                    self.end.vars.shape.clone()
                } else {
                    let vertices = from.iter().zip(to).map(|(a, b)| Point::lerp(a, b, p)).collect();
                    if *closed {
                        Geometry::Polygon { vertices }
                    } else {
                        Geometry::Polyline { vertices }
                    }
                }
            }
        };
        el
    }

    fn draw_key(&self, t: f64) -> f64 {
        if t < 0.5 {
            self.order.0
        } else {
            self.order.1
        }
    }
}

/// Camera animation. With `dolly_focus` set, the center follows the zoom so
/// that the focus point keeps its screen position.
#[derive(Debug, Clone, PartialEq)]
pub struct CameraTrack {
    pub start: CameraPose,
    pub end: CameraPose,
    pub center: Curve<Point>,
    pub zoom: Curve<f64>,
    pub focus: Curve<f64>,
    pub dolly_focus: Option<Point>,
}

impl CameraTrack {
    pub fn still(pose: CameraPose) -> Self {
        CameraTrack {
            start: pose,
            end: pose,
            center: Curve::constant(pose.center),
            zoom: Curve::constant(pose.zoom),
            focus: Curve::constant(pose.focus_depth),
            dolly_focus: None,
        }
    }

    pub fn eval(&self, t: f64) -> CameraPose {
        if t <= 0.0 {
            return self.start;
        }
        if t >= 1.0 {
            return self.end;
        }
        let zoom = self.zoom.eval(t);
        let center = match self.dolly_focus {
            Some(p) => p - (p - self.start.center) * (self.start.zoom / zoom),
            None => self.center.eval(t),
        };
        CameraPose { center, zoom, focus_depth: self.focus.eval(t) }
    }

    pub fn is_still(&self) -> bool {
        self.start == self.end && self.center.is_constant() && self.zoom.is_constant() && self.focus.is_constant()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WipeDirection {
    LeftToRight,
    RightToLeft,
    TopToBottom,
    BottomToTop,
}

impl WipeDirection {
    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "left_to_right" => WipeDirection::LeftToRight,
            "right_to_left" => WipeDirection::RightToLeft,
            "top_to_bottom" => WipeDirection::TopToBottom,
            "bottom_to_top" => WipeDirection::BottomToTop,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Wipe {
    pub direction: WipeDirection,
    pub progress: Curve<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LayerRole {
    Source,
    Interstitial,
    Target,
}

/// A whole scene shown as a unit (scene-replacing transitions).
#[derive(Debug, Clone, PartialEq)]
pub struct Layer {
    pub role: LayerRole,
    pub scene: Scene,
    pub visibility: Visibility,
    /// Multiplies every element's opacity.
    pub fade: Curve<f64>,
    pub wipe: Option<Wipe>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Timeline {
    pub from: String,
    pub to: String,
    pub transitions: Vec<TransitionType>,
    pub duration: f64,
    pub stages: Vec<Stage>,
    pub layers: Vec<Layer>,
    pub tracks: Vec<ElementTrack>,
    pub camera: CameraTrack,
    pub interstitial: Option<(String, f64, f64)>,
    /// Element whose screen position the camera holds steady.
    pub focus_lock: Option<String>,
    pub correspondence: Correspondence,
    pub source: Scene,
    pub target: Scene,
}

/// One drawable layer of a sampled frame.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledLayer {
    pub scene: Scene,
    /// Wipe reveal in [0,1] when partially revealed.
    pub reveal: Option<(WipeDirection, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sampled {
    pub layers: Vec<SampledLayer>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("sampling time {0} lies outside [0, 1]")]
pub struct SamplingError(pub f64);

fn scene_shell(id: &str, camera: CameraPose, form: ClipForm, vis: Option<VisType>) -> Scene {
    let mut s = Scene::new(id);
    s.camera = camera;
    s.clip_form = form;
    s.vis_type = vis;
    s
}

impl Timeline {
    pub fn stage(&self, name: StageName) -> Option<Stage> {
        self.stages.iter().copied().find(|s| s.name == name)
    }

    /// Interior times where a visible layer appears or vanishes without a fade.
    pub fn discontinuities(&self) -> Vec<f64> {
        let mut out: Vec<f64> = Vec::new();
        for layer in &self.layers {
            for x in layer.visibility.edges() {
                if layer.fade.eval(x) > 0.0 && !out.iter().any(|y| (y - x).abs() < 1e-12) {
                    out.push(x);
                }
            }
        }
        out.sort_by(f64::total_cmp);
        out
    }

    pub fn has_fade(&self) -> bool {
        self.layers.iter().any(|l| !l.fade.is_constant())
    }

    pub fn has_wipe(&self) -> bool {
        self.layers.iter().any(|l| l.wipe.is_some())
    }

    /// Tracks that change at least one channel.
    pub fn animated_tracks(&self) -> usize {
        self.tracks.iter().filter(|t| t.is_animated()).count()
    }

    /// Scene state at normalized time `t`.
    pub fn sample(&self, t: f64) -> Result<Sampled, SamplingError> {
        if !(0.0..=1.0).contains(&t) || t.is_nan() {
            return Err(SamplingError(t));
        }
        if !self.layers.is_empty() {
            let mut layers = Vec::new();
            for layer in self.layers.iter().filter(|l| l.visibility.at(t)) {
                let fade = layer.fade.eval(t);
                let mut scene = layer.scene.clone();
                if fade != 1.0 {
                    for e in &mut scene.elements {
                        e.vars.opacity *= fade;
                    }
                }
                let reveal = layer.wipe.as_ref().and_then(|w| {
                    let p = w.progress.eval(t);
                    (p < 1.0).then_some((w.direction, p))
                });
                layers.push(SampledLayer { scene, reveal });
            }
            return Ok(Sampled { layers });
        }
        let form = if t < 1.0 { self.source.clip_form } else { self.target.clip_form };
        let vis = if t < 1.0 { self.source.vis_type } else { self.target.vis_type };
        let id = if t < 1.0 { &self.from } else { &self.to };
        let mut scene = scene_shell(id, self.camera.eval(t), form, vis);
        let mut visible: Vec<&ElementTrack> = self.tracks.iter().filter(|tr| tr.visible_at(t)).collect();
        visible.sort_by(|a, b| a.draw_key(t).total_cmp(&b.draw_key(t)));
        scene.elements = visible.into_iter().map(|tr| tr.eval(t)).collect();
        Ok(Sampled { layers: vec![SampledLayer { scene, reveal: None }] })
    }
}

/// Sampled single-layer scene, used where layers do not matter.
pub fn sample_scene(tl: &Timeline, t: f64) -> Result<Scene, SamplingError> {
    let s = tl.sample(t)?;
    Ok(s.layers.into_iter().last().map(|l| l.scene).unwrap_or_else(|| Scene::new(&tl.from)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_ramp_midpoint() {
        let c = Curve::ramp(0.0, 0.0, 1.0, 10.0, Easing::Linear);
        assert_eq!(c.eval(0.5), 5.0);
    }

    #[test]
    fn ramp_holds_outside_its_span() {
        let c = Curve::ramp(0.3, 2.0, 0.7, 4.0, Easing::EaseInOut);
        assert_eq!(c.eval(0.1), 2.0);
        assert_eq!(c.eval(0.9), 4.0);
        assert_eq!(c.eval(0.5), 3.0);
    }

    #[test]
    fn fade_reaches_zero_at_segment_end() {
        let c = Curve::ramp(0.0, 1.0, 0.5, 0.0, Easing::EaseInOut);
        let smooth = |u: f64| 3.0 * u * u - 2.0 * u * u * u;
        assert_eq!(c.eval(0.5), 1.0 - smooth(1.0));
        assert!((c.eval(0.25) - (1.0 - smooth(0.5))).abs() < 1e-15);
    }

    #[test]
    fn visibility_edges() {
        assert!(Visibility::Before { x: 0.5 }.at(0.49));
        assert!(!Visibility::Before { x: 0.5 }.at(0.5));
        assert!(Visibility::From { x: 0.5 }.at(0.5));
        assert!(!Visibility::After { x: 0.0 }.at(0.0));
        assert_eq!(Visibility::Within { a: 0.25, b: 0.75 }.edges(), vec![0.25, 0.75]);
    }
}
