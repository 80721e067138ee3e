#![allow(dead_code)]

use std::path::PathBuf;

use dvc::compiler::{plan_clip, scene_table, Timeline};
use dvc::easing::Easing;
use dvc::model::{CameraPose, ClipForm, ElementKind, Point, Rgb, VisType};
use dvc::recommend::Relation;
use dvc::speclang::ast::{
    Attrs, CameraKey, ClipSpec, DataValue, Dataset, ItemDecl, ItemKind, MapDecl, Row, SceneDecl, TransitionDecl, Value,
};
use dvc::speclang::diag::Loc;
use dvc::speclang::{parse, VideoSpec};
use dvc::taxonomy::TransitionType;
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::TestRunner;

pub fn example_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(name)
}

pub fn example(name: &str) -> String {
    std::fs::read_to_string(example_path(name)).expect("example exists")
}

pub fn runner() -> TestRunner {
    TestRunner::deterministic()
}

/// Draws `n` values from `strategy` with a fixed seed.
pub fn draw<S: Strategy>(strategy: S, n: usize) -> Vec<S::Value> {
    let mut r = runner();
    (0..n).map(|_| strategy.new_tree(&mut r).expect("strategy yields a value").current()).collect()
}

const PALETTE: [&str; 8] = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#17becf"];
const EASINGS: [&str; 4] = ["linear", "ease_in", "ease_out", "ease_in_out"];
const DIRECTIONS: [&str; 4] = ["left_to_right", "right_to_left", "top_to_bottom", "bottom_to_top"];
const ZOOMS: [f64; 5] = [1.25, 1.5, 2.0, 2.5, 4.0];

/// Free parameters of one generated scenario.
#[derive(Debug, Clone)]
pub struct Params {
    pub x: i32,
    pub y: i32,
    pub dx: i32,
    pub dy: i32,
    pub r: i32,
    pub color: usize,
    pub other_color: usize,
    /// Tenths of a size factor, 11..=18.
    pub grow: u32,
    /// Tenths of a second.
    pub duration: u32,
    pub easing: usize,
    pub direction: usize,
    pub zoom: usize,
    pub base: usize,
    pub churn: usize,
    pub rotate: i32,
}

fn signed(lo: i32, hi: i32) -> impl Strategy<Value = i32> {
    (lo..=hi, any::<bool>()).prop_map(|(v, neg)| if neg { -v } else { v })
}

pub fn params() -> impl Strategy<Value = Params> {
    (
        (-200..=200i32, -150..=150i32, signed(100, 300), signed(100, 250), 20..=70i32),
        (0..PALETTE.len(), 1..PALETTE.len(), 11..=18u32, 5..=20u32, 0..EASINGS.len()),
        (0..DIRECTIONS.len(), 0..ZOOMS.len(), 1..=3usize, 1..=3usize, signed(0, 90)),
    )
        .prop_map(|((x, y, dx, dy, r), (color, other, grow, duration, easing), (direction, zoom, base, churn, rotate))| Params {
            x,
            y,
            dx,
            dy,
            r,
            color,
            other_color: (color + other) % PALETTE.len(),
            grow,
            duration,
            easing,
            direction,
            zoom,
            base,
            churn,
            rotate,
        })
}

impl Params {
    fn c(&self) -> &'static str {
        PALETTE[self.color]
    }

    fn c2(&self) -> &'static str {
        PALETTE[self.other_color]
    }

    fn transition(&self, t: TransitionType, extra: &str) -> String {
        format!(
            "  transition {} duration={} easing={}{extra}\n",
            t.name(),
            f64::from(self.duration) / 10.0,
            EASINGS[self.easing]
        )
    }
}

/// A two-scene document whose single clip (index 0) declares `ty`.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub ty: TransitionType,
    pub params: Params,
    pub source: String,
}

impl Scenario {
    pub fn spec(&self) -> VideoSpec {
        parse(&self.source).unwrap_or_else(|d| panic!("scenario for {} does not parse: {d:?}\n{}", self.ty, self.source))
    }

    pub fn timeline(&self) -> Timeline {
        let spec = self.spec();
        let scenes = scene_table(&spec).expect("scenes lay out");
        plan_clip(&spec, &scenes, 0).unwrap_or_else(|e| panic!("{} does not plan: {e}\n{}", self.ty, self.source))
    }
}

fn header() -> String {
    "video \"generated\" fps=10 width=160 height=90\n".into()
}

fn camera(cx: f64, cy: f64, zoom: f64, focus: f64) -> String {
    format!("camera=({cx}, {cy}, {zoom}, {focus})")
}

/// Elements that stay put in every camera scenario.
fn still_life(p: &Params, depth_far: u32) -> String {
    let mut s = format!("  icon f shape=circle r={} at=({}, {}) color={} depth=1\n", p.r, p.x, p.y, p.c());
    s += &format!("  text caption text=\"steady\" at=(0, -200) font=30 depth={depth_far}\n");
    s += &format!("  icon box shape=rect w=60 h=40 at=({}, {}) color={}\n", p.x + 150, p.y - 60, p.c2());
    s
}

fn two_scenes(a_attrs: &str, a: &str, b_attrs: &str, b: &str) -> String {
    format!("\nscene a {a_attrs}{{\n{a}}}\n\nscene b {b_attrs}{{\n{b}}}\n")
}

fn clip(body: &str) -> String {
    format!("\nclip a -> b {{\n{body}}}\n")
}

pub fn scenario(ty: TransitionType, p: &Params) -> Scenario {
    use TransitionType::*;
    let (x, y, r) = (p.x, p.y, p.r);
    let mut src = header();
    match ty {
        HardCut | Fade | Wipe | Halftime => {
            let a = format!("  icon p shape=circle r={r} at=({x}, {y}) color={}\n", p.c());
            let b = format!("  text q text=\"after\" at=({}, {}) font=40 color={}\n", x + p.dx, y + p.dy, p.c2());
            src += &two_scenes("", &a, "", &b);
            let extra = if ty == Wipe { format!(" direction={}", DIRECTIONS[p.direction]) } else { String::new() };
            let mut body = p.transition(ty, &extra);
            if ty == Halftime {
                src += "\nscene mid {\n  label m text=\"meanwhile\" at=(0, 0) font=50\n}\n";
                body += "  halftime mid\n";
            }
            src += &clip(&body);
        }
        Pedestal | Truck | Zoom | RackFocus => {
            let z = ZOOMS[p.zoom];
            let (cb, extra) = match ty {
                Pedestal => (camera(0.0, f64::from(p.dy), 1.0, 0.0), ""),
                Truck => (camera(f64::from(p.dx), 0.0, 1.0, 0.0), ""),
                Zoom => (camera(0.0, 0.0, z, 0.0), ""),
                _ => (camera(0.0, 0.0, 1.0, 3.0), ""),
            };
            let a_attrs = format!("{} ", camera(0.0, 0.0, 1.0, 0.0));
            src += &two_scenes(&a_attrs, &still_life(p, 3), &format!("{cb} "), &still_life(p, 3));
            src += &clip(&p.transition(ty, extra));
        }
        Tilt | Pan => {
            let (sx, sy) = if ty == Pan { (p.dx, 0) } else { (0, p.dy) };
            let rest = format!("  icon box shape=rect w=60 h=40 at=({}, {}) color={}\n", x + 150, y - 60, p.c2());
            let a = format!("  icon f shape=circle r={r} at=({x}, {y}) color={}\n{rest}", p.c());
            let b = format!("  icon f shape=circle r={r} at=({}, {}) color={}\n{rest}", x + sx, y + sy, p.c());
            let cb = camera(f64::from(sx), f64::from(sy), 1.0, 0.0);
            src += &two_scenes(&format!("{} ", camera(0.0, 0.0, 1.0, 0.0)), &a, &format!("{cb} "), &b);
            src += &clip(&p.transition(ty, " focus=f"));
        }
        Dolly => {
            let z1 = ZOOMS[p.zoom];
            let (c0x, c0y) = (f64::from(x + p.dx), f64::from(y + p.dy));
            let (px, py) = (f64::from(x), f64::from(y));
            let c1 = (px - (px - c0x) / z1, py - (py - c0y) / z1);
            let body = still_life(p, 3);
            src += &two_scenes(&format!("{} ", camera(c0x, c0y, 1.0, 0.0)), &body, &format!("{} ", camera(c1.0, c1.1, z1, 0.0)), &body);
            src += &clip(&p.transition(ty, " focus=f"));
        }
        RstGuide => {
            let caption = "  text caption text=\"route\" at=(0, -200) font=30\n";
            let a = format!("{caption}  icon m shape=rect w={} h={} at=({x}, {y}) color={}\n", 2 * r, r, p.c());
            let b = format!(
                "{caption}  icon m shape=rect w={} h={} at=({}, {}) rotate={} color={}\n",
                2 * r,
                r,
                x + p.dx,
                y + p.dy,
                p.rotate,
                p.c()
            );
            src += &two_scenes("", &a, "", &b);
            src += &clip(&(p.transition(ty, "") + "  map m -> m\n"));
        }
        ExpandingGuide | ShrinkingGuide => {
            let caption = "  text caption text=\"zoom in\" at=(0, -200) font=30\n";
            let item = format!("{caption}  icon item shape=circle r={r} at=({x}, {y}) color={}\n", p.c());
            let wash = format!("{caption}  background wash shape=rect w=1000 h=600 at=(0, 0) color={}\n", p.c());
            let (a, b) = if ty == ExpandingGuide { (item, wash) } else { (wash, item) };
            src += &two_scenes("", &a, "", &b);
            src += &clip(&p.transition(ty, " background=wash item=item"));
        }
        StayingGuide | UpdatingContent => {
            let base: String = (0..p.base)
                .map(|i| format!("  icon base{i} shape=circle r={r} at=({}, {y}) color={}\n", x + 150 * i as i32 - 150, p.c()))
                .collect();
            let old: String = (0..p.churn)
                .map(|i| format!("  label old{i} text=\"was {i}\" at=({}, 200) font=24 color={}\n", 120 * i as i32 - 120, p.c2()))
                .collect();
            let new: String = (0..p.churn)
                .map(|i| format!("  annotation new{i} text=\"now {i}\" at=({}, -200) font=24 color={}\n", 120 * i as i32 - 120, p.c2()))
                .collect();
            src += &two_scenes("", &(base.clone() + &old), "", &(base + &new));
            src += &clip(&p.transition(ty, ""));
        }
        Scaling => {
            src += "\ndata d key=k {\n  (k=\"a\" v=1)\n}\n";
            let bar = |size: f64| {
                format!("  chart_mark bar shape=rect w=40 h=100 at=({x}, {y}) size={size} color={} bind=(d, a, v)\n", p.c())
            };
            src += &two_scenes("", &bar(1.0), "", &bar(f64::from(p.grow) / 10.0));
            src += &clip(&(p.transition(ty, "") + "  map bar -> bar\n"));
        }
        Morphing => {
            let a = format!("  icon m shape=circle r={r} at=({x}, {y}) color={}\n", p.c());
            let b = format!(
                "  icon m shape=polygon points=[(0, {}) ({r}, {r}) ({}, {r})] at=({x}, {y}) color={}\n",
                -r,
                -r,
                p.c()
            );
            src += &two_scenes("", &a, "", &b);
            src += &clip(&(p.transition(ty, "") + "  map m -> m\n"));
        }
        Merging | Splitting => {
            let n = p.churn.max(2);
            let parts: String = (0..n)
                .map(|i| format!("  icon part{i} shape=circle r={r} at=({}, {}) color={}\n", x + 120 * i as i32, y + p.dy, p.c()))
                .collect();
            let whole = format!("  icon whole shape=circle r={} at=({x}, {y}) color={}\n", 2 * r, p.c());
            let maps: String = (0..n)
                .map(|i| if ty == Merging { format!("  map part{i} -> whole\n") } else { format!("  map whole -> part{i}\n") })
                .collect();
            let (a, b) = if ty == Merging { (parts, whole) } else { (whole, parts) };
            src += &two_scenes("", &a, "", &b);
            src += &clip(&(p.transition(ty, "") + &maps));
        }
    }
    Scenario { ty, params: p.clone(), source: src }
}

pub fn scenarios() -> impl Strategy<Value = Scenario> {
    (proptest::sample::select(TransitionType::ALL.to_vec()), params()).prop_map(|(ty, p)| scenario(ty, &p))
}

// Random documents for the parser.

fn num(lo: i32, hi: i32) -> impl Strategy<Value = f64> {
    (lo * 4..=hi * 4).prop_map(|v| f64::from(v) / 4.0)
}

fn pos(lo: i32, hi: i32) -> impl Strategy<Value = f64> {
    (lo * 4..=hi * 4).prop_map(|v| f64::from(v.max(1)) / 4.0)
}

fn color() -> impl Strategy<Value = Rgb> {
    any::<(u8, u8, u8)>().prop_map(|(r, g, b)| Rgb(r, g, b))
}

fn point() -> impl Strategy<Value = Value> {
    (num(-500, 500), num(-500, 500)).prop_map(|(x, y)| Value::Tuple(vec![Value::Number(x), Value::Number(y)]))
}

fn text() -> impl Strategy<Value = String> {
    "[a-zA-Z0-9 _.,!?\"\\\\\n\t-]{0,12}"
}

fn shape_attrs() -> impl Strategy<Value = Attrs> {
    let circle = pos(1, 100).prop_map(|r| Attrs::from([("shape".into(), Value::Ident("circle".into())), ("r".into(), Value::Number(r))]));
    let rect = (pos(1, 200), pos(1, 200)).prop_map(|(w, h)| {
        Attrs::from([("shape".into(), Value::Ident("rect".into())), ("w".into(), Value::Number(w)), ("h".into(), Value::Number(h))])
    });
    let txt = (text(), pos(1, 60)).prop_map(|(t, f)| Attrs::from([("text".into(), Value::Str(t)), ("font".into(), Value::Number(f))]));
    let poly = (proptest::collection::vec(point(), 3..6), any::<bool>()).prop_map(|(pts, closed)| {
        let shape = if closed { "polygon" } else { "polyline" };
        Attrs::from([("shape".into(), Value::Ident(shape.into())), ("points".into(), Value::List(pts))])
    });
    let sector = (pos(2, 100), 0..=100u32, num(-180, 180), pos(1, 360)).prop_map(|(r, inner, start, sweep)| {
        Attrs::from([
            ("shape".into(), Value::Ident("sector".into())),
            ("r".into(), Value::Number(r)),
            ("inner".into(), Value::Number(r * f64::from(inner) / 128.0)),
            ("start".into(), Value::Number(start)),
            ("end".into(), Value::Number(start + sweep)),
        ])
    });
    let icon = proptest::sample::select(vec!["person", "plane", "square"])
        .prop_map(|n| Attrs::from([("icon".into(), Value::Ident(n.into()))]));
    prop_oneof![circle, rect, txt, poly, sector, icon]
}

fn element(id: String, bindable: bool) -> impl Strategy<Value = ItemDecl> {
    (
        proptest::sample::select(ElementKind::ALL.to_vec()),
        shape_attrs(),
        proptest::option::of(point()),
        proptest::option::of(color()),
        proptest::option::of(pos(0, 5)),
        proptest::option::of(num(-360, 360)),
        proptest::option::of((0..=4u32).prop_map(|v| f64::from(v) / 4.0)),
        proptest::option::of(0..=5u32),
        any::<bool>(),
    )
        .prop_map(move |(kind, mut attrs, at, c, size, rot, opacity, depth, bind)| {
            let mut put = |k: &str, v: Option<Value>| {
                if let Some(v) = v {
                    attrs.insert(k.into(), v);
                }
            };
            put("at", at);
            put("color", c.map(Value::Color));
            put("size", size.map(Value::Number));
            put("rotate", rot.map(Value::Number));
            put("opacity", opacity.map(Value::Number));
            put("depth", depth.map(|d| Value::Number(f64::from(d))));
            if bindable && bind {
                let b = ["d0", "r0", "v"].map(|s| Value::Ident(s.into()));
                attrs.insert("bind".into(), Value::Tuple(b.to_vec()));
            }
            ItemDecl { kind: ItemKind::Element(kind), id: id.clone(), attrs, loc: Loc::default() }
        })
}

fn pose() -> impl Strategy<Value = CameraPose> {
    (num(-300, 300), num(-300, 300), pos(0, 8), num(0, 5))
        .prop_map(|(x, y, zoom, focus)| CameraPose { center: Point::new(x, y), zoom, focus_depth: focus })
}

fn scene(index: usize, bindable: bool) -> impl Strategy<Value = SceneDecl> {
    let items = (0..=4usize).prop_flat_map(move |n| {
        (0..n).map(|j| element(format!("e{j}"), bindable)).collect::<Vec<_>>()
    });
    (any::<bool>(), proptest::option::of(proptest::sample::select(VisType::ALL.to_vec())), pose(), items).prop_map(
        move |(vis_form, vis, camera, items)| SceneDecl {
            id: format!("s{index}"),
            form: if vis_form { ClipForm::Visualization } else { ClipForm::NonVisualization },
            vis,
            camera,
            items,
            loc: Loc::default(),
        },
    )
}

fn dataset(index: usize) -> impl Strategy<Value = Dataset> {
    proptest::collection::vec((num(-100, 100), text()), 1..4).prop_map(move |rows| Dataset {
        id: format!("d{index}"),
        key: "k".into(),
        rows: rows
            .into_iter()
            .enumerate()
            .map(|(j, (v, label))| {
                Row::from([
                    ("k".into(), DataValue::Text(format!("r{j}"))),
                    ("v".into(), DataValue::Number(v)),
                    ("note".into(), DataValue::Text(label)),
                ])
            })
            .collect(),
        loc: Loc::default(),
    })
}

fn transitions() -> impl Strategy<Value = Vec<TransitionDecl>> {
    let element_level: Vec<TransitionType> = TransitionType::ALL.into_iter().filter(|t| *t != TransitionType::Halftime).collect();
    proptest::sample::subsequence(element_level, 1..3).prop_flat_map(|types| {
        types
            .into_iter()
            .map(|ty| {
                (pos(0, 5), proptest::sample::select(Easing::NAMED.to_vec()), proptest::sample::select(DIRECTIONS.to_vec())).prop_map(
                    move |(duration, easing, dir)| {
                        let mut t = TransitionDecl::new(ty);
                        t.duration = duration;
                        t.easing = easing;
                        if ty == TransitionType::Wipe {
                            t.params.insert("direction".into(), Value::Ident(dir.into()));
                        }
                        t
                    },
                )
            })
            .collect::<Vec<_>>()
    })
}

fn clip_spec(scenes: usize, first: bool) -> impl Strategy<Value = ClipSpec> {
    (
        0..scenes,
        0..scenes,
        proptest::option::of(proptest::sample::select(Relation::ALL.to_vec())),
        any::<bool>(),
        transitions(),
        proptest::option::of(0..scenes),
        proptest::collection::vec((0..4usize, 0..4usize), 0..3),
        proptest::collection::vec((pose(), 0..=8u32), 0..3),
    )
        .prop_map(move |(from, to, relation, segment, mut transitions, halftime, maps, keys)| {
            let mut c = ClipSpec::new(format!("s{from}"), format!("s{to}"));
            c.relation = relation;
            c.segment_start = segment && !first;
            if let Some(h) = halftime {
                transitions.push(TransitionDecl::new(TransitionType::Halftime));
                c.halftime = Some(format!("s{h}"));
            }
            c.transitions = transitions;
            c.maps = maps.into_iter().map(|(a, b)| MapDecl { from: format!("e{a}"), to: format!("e{b}"), loc: Loc::default() }).collect();
            c.camera_path = keys.into_iter().map(|(pose, t)| CameraKey { pose, t: f64::from(t) / 8.0, loc: Loc::default() }).collect();
            c
        })
}

/// Documents that parse by construction.
pub fn video_specs() -> impl Strategy<Value = VideoSpec> {
    (text(), 1..=60u32, 1..=2000u32, 1..=2000u32, 0..=2usize, 1..=4usize, 0..=4usize).prop_flat_map(
        |(title, fps, width, height, nd, ns, nc)| {
            let datasets: Vec<_> = (0..nd).map(dataset).collect();
            let scenes: Vec<_> = (0..ns).map(|i| scene(i, nd > 0)).collect();
            let clips: Vec<_> = (0..nc).map(|i| clip_spec(ns, i == 0)).collect();
            (datasets, scenes, clips).prop_map(move |(datasets, scenes, clips)| VideoSpec {
                title: title.clone(),
                fps,
                width,
                height,
                datasets,
                scenes,
                clips,
            })
        },
    )
}

/// Lines of an SVG frame that draw the element `id`.
pub fn element_lines<'a>(svg: &'a str, id: &str) -> Vec<&'a str> {
    let needle = format!("data-id=\"{id}\"");
    svg.lines().filter(|l| l.contains(&needle)).collect()
}
