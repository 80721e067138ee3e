//! One pass/fail line per acceptance criterion. Criteria run one after the
//! other so each runtime budget is measured without interference.

mod common;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use common::*;
use dvc::analyze::{classify_timeline, reference_stats};
use dvc::compiler::timeline::StageName;
use dvc::compiler::{compile, Timeline};
use dvc::model::{scene_diff, VisType};
use dvc::recommend::{recommend, rule_hits, Context, FormPair, Relation};
use dvc::render::svg::{frame_svg, scene_svg};
use dvc::render::{clip_times, render_video, Manifest};
use dvc::speclang::{parse, print, validate, Diagnostic, Span, VideoSpec};
use dvc::taxonomy::{satisfies_all, TransitionType};
use proptest::prelude::*;
use sha2::{Digest, Sha256};

const STATS_BUDGET: Duration = Duration::from_secs(1);
const ORACLE_BUDGET: Duration = Duration::from_secs(10);
const INVARIANT_BUDGET: Duration = Duration::from_secs(60);
const COVID_BUDGET: Duration = Duration::from_secs(30);
const PARSER_BUDGET: Duration = Duration::from_secs(30);

const PAIRS_PER_SUBTYPE: usize = 3;
const INVARIANT_CLIPS: usize = 240;
const PARSER_SPECS: usize = 1000;
const CONTEXT_PAIRS: usize = 500;
/// Slack when comparing stage boundaries.
const STAGE_EPS: f64 = 1e-12;
/// Extra sample times per clip beyond the frame schedule.
const DENSE_SAMPLES: usize = 40;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(budget: Duration, start: Instant) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure(took < budget, || format!("took {took:?}, budget {budget:?}"))?;
    Ok(took)
}

// 1

fn statistics() -> Check {
    let start = Instant::now();
    let stats = reference_stats();
    let table = stats.render_table();
    let rows: [(&str, usize, &str); 12] = [
        ("refresh", 2070, "53.0%"),
        ("halftime", 98, "2.5%"),
        ("camera_motion", 583, "14.9%"),
        ("preserving_guide", 894, "22.9%"),
        ("narrative_agent", 777, "19.9%"),
        ("vis_vis", 1644, "42.1%"),
        ("others_vis", 1104, "28.2%"),
        ("vis_others", 1161, "29.7%"),
        ("preserving_guide", 477, "29.0%"),
        ("narrative_agent", 617, "37.5%"),
        ("agree", 3430, "87.7%"),
        ("disagree", 479, "12.3%"),
    ];
    ensure(stats.total == 3909, || format!("total {} != 3909", stats.total))?;
    ensure(table.starts_with("clips 3909\n"), || "table does not open with the clip total".into())?;
    for (label, count, pct) in rows {
        let line = format!("{label:<18} {count:>6}  {pct:>6}");
        ensure(table.lines().any(|l| l == line), || format!("missing row `{line}`"))?;
    }
    let vv: Vec<_> = stats.within_vis_vis.iter().map(|s| (s.count, s.denominator, s.percent.as_str())).collect();
    ensure(vv == [(477, 1644, "29.0%"), (617, 1644, "37.5%")], || format!("within vis_vis {vv:?}"))?;
    let took = within(STATS_BUDGET, start)?;
    Ok(format!("12 rows exact in {took:?}"))
}

// 2

fn planner_classifier_oracle() -> Check {
    let start = Instant::now();
    let params = draw(params(), PAIRS_PER_SUBTYPE);
    let mut planned = 0;
    for ty in TransitionType::ALL {
        for p in &params {
            let s = scenario(ty, p);
            let labels = classify_timeline(&s.timeline());
            ensure(labels.contains(&ty), || format!("{ty} not recovered, got {labels:?} from\n{}", s.source))?;
            planned += 1;
        }
    }
    let took = within(ORACLE_BUDGET, start)?;
    Ok(format!("{planned} clips over 20 subtypes, all recovered in {took:?}"))
}

// 3

fn sample_times(tl: &Timeline, fps: u32) -> Vec<f64> {
    let mut ts = clip_times(tl.duration, fps);
    ts.extend((0..=DENSE_SAMPLES).map(|i| i as f64 / DENSE_SAMPLES as f64));
    ts
}

fn check_invariants(s: &Scenario) -> Result<(), String> {
    let spec = s.spec();
    let tl = s.timeline();
    let (w, h) = (spec.width, spec.height);
    let ctx = || format!("{} scenario\n{}", s.ty, s.source);

    let delta = scene_diff(&tl.source, &tl.target, &tl.correspondence).map_err(|e| format!("{e}: {}", ctx()))?;
    let (ok, violations) = satisfies_all(&delta, &tl.transitions);
    ensure(ok, || format!("contract violated {violations:?}: {}", ctx()))?;

    let frame = |t: f64| tl.sample(t).map(|f| frame_svg(&f, w, h)).map_err(|e| e.to_string());
    ensure(frame(0.0)? == scene_svg(&tl.source, w, h), || format!("t=0 differs from source render: {}", ctx()))?;
    ensure(frame(1.0)? == scene_svg(&tl.target, w, h), || format!("t=1 differs from target render: {}", ctx()))?;

    let mut stages = tl.stages.clone();
    stages.sort_by(|a, b| a.start.total_cmp(&b.start));
    for st in &stages {
        ensure(0.0 <= st.start && st.start <= st.end && st.end <= 1.0, || format!("stage {st:?} out of [0, 1]: {}", ctx()))?;
    }
    for pair in stages.windows(2) {
        ensure(pair[0].end <= pair[1].start + STAGE_EPS, || format!("stages overlap {pair:?}: {}", ctx()))?;
    }

    if tl.transitions.contains(&TransitionType::StayingGuide) {
        let guided: Vec<&str> = delta.matched.iter().filter(|d| d.is_unchanged()).map(|d| d.source.as_str()).collect();
        ensure(!guided.is_empty(), || format!("no guided elements: {}", ctx()))?;
        let first = frame(0.0)?;
        for t in sample_times(&tl, spec.fps) {
            let f = frame(t)?;
            for id in &guided {
                ensure(element_lines(&f, id) == element_lines(&first, id), || {
                    format!("guided element `{id}` changed at t={t}: {}", ctx())
                })?;
            }
        }
        ensure(tl.stage(StageName::Transform).is_some(), || format!("staying clip lacks a transform stage: {}", ctx()))?;
    }
    Ok(())
}

fn contract_invariants() -> Check {
    let start = Instant::now();
    let cases = draw(scenarios(), INVARIANT_CLIPS);
    let staying = cases.iter().filter(|s| s.ty == TransitionType::StayingGuide).count();
    ensure(staying >= 3, || format!("only {staying} staying-guide clips drawn"))?;
    for s in &cases {
        check_invariants(s)?;
    }
    let took = within(INVARIANT_BUDGET, start)?;
    Ok(format!("{} clips ({staying} staying-guide) in {took:?}", cases.len()))
}

// 4

const COVID_ORDER: [&str; 12] = [
    "rst_guide",
    "zoom",
    "rst_guide",
    "zoom",
    "updating_content",
    "expanding_guide",
    "splitting",
    "merging",
    "shrinking_guide",
    "zoom",
    "updating_content",
    "rack_focus",
];

fn golden_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/covid_frames.sha256")
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

fn read_dir_sorted(dir: &Path) -> Result<BTreeMap<String, Vec<u8>>, String> {
    let mut out = BTreeMap::new();
    for entry in fs::read_dir(dir).map_err(|e| e.to_string())? {
        let entry = entry.map_err(|e| e.to_string())?;
        let name = entry.file_name().to_string_lossy().into_owned();
        out.insert(name, fs::read(entry.path()).map_err(|e| e.to_string())?);
    }
    Ok(out)
}

fn covid_use_case() -> Check {
    let spec = parse(&example("covid.dvs")).map_err(|d| format!("covid script does not parse: {d:?}"))?;
    ensure(validate(&spec).iter().all(|d| !d.is_error()), || "covid script has errors".into())?;
    ensure(spec.width == 480 && spec.height == 270 && spec.fps == 15, || "covid script is not 480x270 at 15 fps".into())?;
    let order: Vec<String> = spec.clips.iter().map(|c| c.types().iter().filter_map(|t| t.subtype()).collect::<Vec<_>>().join("+")).collect();
    ensure(order == COVID_ORDER, || format!("clip order {order:?}"))?;

    let first = tempfile::tempdir().map_err(|e| e.to_string())?;
    let second = tempfile::tempdir().map_err(|e| e.to_string())?;
    let start = Instant::now();
    let manifest = render_video(&spec, first.path()).map_err(|e| e.to_string())?;
    let took = within(COVID_BUDGET, start)?;
    render_video(&spec, second.path()).map_err(|e| e.to_string())?;

    let a = read_dir_sorted(first.path())?;
    let b = read_dir_sorted(second.path())?;
    ensure(a == b, || "two renders differ".into())?;
    ensure(a.len() == manifest.frames + 1, || format!("{} files for {} frames", a.len(), manifest.frames))?;

    let on_disk: Manifest = {
        let v: serde_json::Value = serde_json::from_slice(&a["manifest.json"]).map_err(|e| e.to_string())?;
        ensure(v["width"] == 480 && v["height"] == 270 && v["fps"] == 15, || "manifest geometry".into())?;
        let names: Vec<Vec<String>> = v["clips"]
            .as_array()
            .ok_or("manifest has no clips")?
            .iter()
            .map(|c| c["transitions"].as_array().into_iter().flatten().filter_map(|t| t.as_str().map(String::from)).collect())
            .collect();
        let declared: Vec<Vec<String>> = spec.clips.iter().map(|c| c.types().iter().map(|t| t.name()).collect()).collect();
        ensure(names == declared, || format!("manifest transitions {names:?}"))?;
        manifest
    };

    let mut golden = String::new();
    for (i, clip) in on_disk.clips.iter().enumerate() {
        for (edge, frame) in [("first", clip.first_frame), ("last", clip.last_frame)] {
            let name = dvc::render::frame_name(frame);
            let bytes = a.get(&name).ok_or_else(|| format!("missing {name}"))?;
            let text = std::str::from_utf8(bytes).map_err(|e| e.to_string())?;
            ensure(text.contains("width=\"480\"") && text.contains("height=\"270\""), || format!("{name} is not 480x270"))?;
            let _ = writeln!(golden, "{i:02} {edge:<5} {name} {}", sha256_hex(bytes));
        }
    }
    let path = golden_path();
    if std::env::var_os("DVC_BLESS").is_some() {
        fs::create_dir_all(path.parent().unwrap()).map_err(|e| e.to_string())?;
        fs::write(&path, &golden).map_err(|e| e.to_string())?;
    }
    let expected = fs::read_to_string(&path).map_err(|e| format!("no golden file at {} ({e}); run with DVC_BLESS=1", path.display()))?;
    ensure(expected == golden, || format!("golden frames changed:\n{golden}"))?;
    Ok(format!("{} clips, {} frames, deterministic, 24 golden frames stable, render {took:?}", on_disk.clips.len(), on_disk.frames))
}

// 5

fn global_wealth_case() -> Check {
    use TransitionType::*;
    let spec = parse(&example("global_wealth.dvs")).map_err(|d| format!("global wealth does not parse: {d:?}"))?;
    let timelines = compile(&spec).map_err(|e| e.to_string())?;
    let expected = [vec![UpdatingContent], vec![Truck, RstGuide], vec![Merging, Splitting], vec![UpdatingContent, Scaling]];
    ensure(timelines.len() == expected.len(), || format!("{} clips", timelines.len()))?;
    for (i, (tl, want)) in timelines.iter().zip(expected).enumerate() {
        let got: Vec<_> = classify_timeline(tl).into_iter().collect();
        let mut want = want;
        want.sort();
        ensure(got == want, || format!("clip {i}: {got:?} != {want:?}"))?;
    }
    Ok("4 clips classify to exactly their label sets".into())
}

// 6

fn line_col(source: &str, offset: usize) -> (usize, usize) {
    let before = &source[..offset];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().unwrap_or("").chars().count() + 1;
    (line, col)
}

fn span_ok(source: &str, span: Span) -> bool {
    span.is_within(source) && line_col(source, span.offset) == (span.line, span.col)
}

fn spans_in_bounds(source: &str, diags: &[Diagnostic]) -> Result<(), String> {
    for d in diags {
        ensure(span_ok(source, d.span), || format!("span {:?} of [{}] out of bounds in\n{source}", d.span, d.code))?;
    }
    Ok(())
}

/// Deterministic damage to a source: a deletion, a duplication or a cut.
fn mutate(source: &str, seed: usize) -> String {
    let chars: Vec<char> = source.chars().collect();
    if chars.is_empty() {
        return "}".into();
    }
    let at = (seed * 7919) % chars.len();
    let len = 1 + seed % 9;
    let end = (at + len).min(chars.len());
    match seed % 3 {
        0 => chars[..at].iter().chain(&chars[end..]).collect(),
        1 => chars[..end].iter().chain(&chars[at..]).collect(),
        _ => chars[..at].iter().collect(),
    }
}

fn parser_properties() -> Check {
    let start = Instant::now();
    let specs: Vec<VideoSpec> = draw(video_specs(), PARSER_SPECS);
    let mut damaged_diags = 0;
    for (i, spec) in specs.iter().enumerate() {
        let text = print(spec);
        let back = parse(&text).map_err(|d| format!("printed spec does not parse: {d:?}\n{text}"))?;
        ensure(&back == spec, || format!("parse(print(s)) != s for\n{text}"))?;
        ensure(print(&back) == text, || format!("print is not idempotent for\n{text}"))?;
        spans_in_bounds(&text, &validate(&back))?;
        let broken = mutate(&text, i);
        let diags = match parse(&broken) {
            Ok(s) => validate(&s),
            Err(d) => d,
        };
        damaged_diags += diags.len();
        spans_in_bounds(&broken, &diags)?;
    }
    let took = within(PARSER_BUDGET, start)?;
    Ok(format!("{} specs round-trip, {damaged_diags} diagnostics on damaged copies in bounds, {took:?}", specs.len()))
}

// 7

fn names(recs: &[dvc::recommend::Recommendation]) -> Vec<TransitionType> {
    recs.iter().map(|r| r.transition).collect()
}

fn position(list: &[TransitionType], t: TransitionType) -> Option<usize> {
    list.iter().position(|x| *x == t)
}

fn contexts() -> impl Strategy<Value = (Context, Context)> {
    let forms = proptest::option::of(proptest::sample::select(FormPair::ALL.to_vec()));
    let relation = proptest::option::of(proptest::sample::select(Relation::ALL.to_vec()));
    let vis = proptest::collection::vec(proptest::sample::select(VisType::ALL.to_vec()), 0..2);
    let extra = (0..3usize, proptest::sample::select(FormPair::ALL.to_vec()), proptest::sample::select(Relation::ALL.to_vec()), proptest::sample::select(VisType::ALL.to_vec()));
    (forms, relation, vis, extra)
        .prop_map(|(forms, relation, vis, (which, f, r, v))| {
            let base = Context { forms, relation, vis };
            let mut wider = base.clone();
            match which {
                0 if wider.forms.is_none() => wider.forms = Some(f),
                1 if wider.relation.is_none() => wider.relation = Some(r),
                _ if !wider.vis.contains(&v) => wider.vis.push(v),
                _ => {}
            }
            (base, wider)
        })
        .prop_filter("distinct, non-empty pair", |(a, b)| !a.is_empty() && a != b)
}

fn recommender_fidelity() -> Check {
    use TransitionType::*;
    let whole_part = names(&recommend(&Context { forms: None, relation: Some(Relation::WholePart), vis: vec![VisType::Pie] }));
    let (e, z) = (position(&whole_part, ExpandingGuide), position(&whole_part, Zoom));
    ensure(matches!((e, z), (Some(e), Some(z)) if e < z), || format!("whole-part/pie: {whole_part:?}"))?;

    let contrast = names(&recommend(&Context { forms: None, relation: Some(Relation::Contrast), vis: vec![] }));
    ensure(contrast.contains(&RstGuide) && contrast.contains(&Scaling), || format!("contrast: {contrast:?}"))?;

    let vv_ctx = Context { forms: Some(FormPair::VisVis), relation: None, vis: vec![] };
    let vv = names(&recommend(&vv_ctx));
    ensure(vv.starts_with(&[RstGuide, StayingGuide, UpdatingContent]), || format!("vis_vis: {vv:?}"))?;
    let hits = rule_hits(&vv_ctx).len();
    ensure(vv.len() > hits && vv[hits..].iter().all(|t| t.category().is_content_agnostic()), || format!("vis_vis fallbacks: {vv:?}"))?;

    let pairs = draw(contexts(), CONTEXT_PAIRS);
    for (base, wider) in &pairs {
        ensure(recommend(base) == recommend(base), || format!("nondeterministic for {base:?}"))?;
        let before = rule_hits(base);
        let after = names(&rule_hits(wider));
        if let Some(top) = before.first() {
            ensure(after.contains(&top.transition), || format!("adding a facet to {base:?} dropped {}", top.transition))?;
        }
    }
    Ok(format!("3 examples hold, monotone over {} context pairs", pairs.len()))
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Check); 7] = [
        ("statistics reproduction", statistics),
        ("planner-classifier oracle", planner_classifier_oracle),
        ("contract invariants", contract_invariants),
        ("covid use case", covid_use_case),
        ("global wealth case study", global_wealth_case),
        ("parser properties", parser_properties),
        ("recommender fidelity", recommender_fidelity),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                println!("criterion {} {name}: FAIL ({why})", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
