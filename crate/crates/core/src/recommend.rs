//! Ranked transition suggestions for an authoring context.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::model::{ClipForm, VisType};
use crate::taxonomy::{Category, TransitionType};

use TransitionType as T;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    QuestionAnswer,
    WholePart,
    Progress,
    Supplement,
    Contrast,
    None,
}

impl Relation {
    pub const ALL: [Relation; 6] = [
        Relation::QuestionAnswer,
        Relation::WholePart,
        Relation::Progress,
        Relation::Supplement,
        Relation::Contrast,
        Relation::None,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Relation::QuestionAnswer => "question_answer",
            Relation::WholePart => "whole_part",
            Relation::Progress => "progress",
            Relation::Supplement => "supplement",
            Relation::Contrast => "contrast",
            Relation::None => "none",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|r| r.name() == s)
    }

    /// Progress and supplement share one rule group.
    fn canonical(self) -> Relation {
        match self {
            Relation::Supplement => Relation::Progress,
            other => other,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormPair {
    VisVis,
    VisOthers,
    OthersVis,
}

impl FormPair {
    pub const ALL: [FormPair; 3] = [FormPair::VisVis, FormPair::VisOthers, FormPair::OthersVis];

    pub fn from_forms(from: ClipForm, to: ClipForm) -> Option<Self> {
        match (from, to) {
            (ClipForm::Visualization, ClipForm::Visualization) => Some(FormPair::VisVis),
            (ClipForm::Visualization, ClipForm::NonVisualization) => Some(FormPair::VisOthers),
            (ClipForm::NonVisualization, ClipForm::Visualization) => Some(FormPair::OthersVis),
            (ClipForm::NonVisualization, ClipForm::NonVisualization) => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FormPair::VisVis => "vis_vis",
            FormPair::VisOthers => "vis_others",
            FormPair::OthersVis => "others_vis",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == s)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Context {
    pub forms: Option<FormPair>,
    pub relation: Option<Relation>,
    /// Vis types of the source and target scenes.
    pub vis: Vec<VisType>,
}

impl Context {
    pub fn is_empty(&self) -> bool {
        self.forms.is_none() && self.relation.is_none() && self.vis.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Facet {
    Form,
    Relation,
    Vis,
}

struct Rule {
    facet: Facet,
    applies: fn(&Context) -> bool,
    suggests: &'static [TransitionType],
    rationale: &'static str,
}

fn relation_is(ctx: &Context, r: Relation) -> bool {
    ctx.relation.map(Relation::canonical) == Some(r)
}

fn vis_any(ctx: &Context, set: &[VisType]) -> bool {
    ctx.vis.iter().any(|v| set.contains(v))
}

const RULES: &[Rule] = &[
    Rule {
        facet: Facet::Relation,
        applies: |c| relation_is(c, Relation::QuestionAnswer),
        suggests: &[T::RstGuide],
        rationale: "carry the elements that pose the question into the answer",
    },
    Rule {
        facet: Facet::Relation,
        applies: |c| relation_is(c, Relation::WholePart),
        suggests: &[T::Merging, T::Splitting, T::Zoom, T::ExpandingGuide],
        rationale: "group or ungroup parts, grow a part into the next scene, or zoom into a detail",
    },
    Rule {
        facet: Facet::Relation,
        applies: |c| relation_is(c, Relation::Progress),
        suggests: &[T::Pedestal, T::Truck, T::RackFocus, T::RstGuide, T::Morphing],
        rationale: "reveal items one after another by moving or refocusing the view",
    },
    Rule {
        facet: Facet::Relation,
        applies: |c| relation_is(c, Relation::Contrast),
        suggests: &[T::RstGuide, T::Scaling, T::UpdatingContent],
        rationale: "keep the shared context fixed so the differences stand out",
    },
    Rule {
        facet: Facet::Form,
        applies: |c| c.forms == Some(FormPair::VisVis),
        suggests: &[T::RstGuide, T::StayingGuide, T::UpdatingContent],
        rationale: "both scenes are charts, so marks and axes can be reused",
    },
    Rule {
        facet: Facet::Form,
        applies: |c| matches!(c.forms, Some(FormPair::VisOthers | FormPair::OthersVis)),
        suggests: &[T::RstGuide, T::ExpandingGuide, T::ShrinkingGuide, T::StayingGuide],
        rationale: "link chart and non-chart content through a shared icon, text or color",
    },
    Rule {
        facet: Facet::Vis,
        applies: |c| vis_any(c, &[VisType::LineChart, VisType::ScatterPlot, VisType::BarChart]),
        suggests: &[T::RstGuide, T::StayingGuide],
        rationale: "axes, legends and labels can stay in place or be rearranged",
    },
    Rule {
        facet: Facet::Vis,
        applies: |c| vis_any(c, &[VisType::Map]),
        suggests: &[T::Zoom, T::Pedestal, T::Truck, T::RstGuide, T::ExpandingGuide],
        rationale: "navigate between regions or reuse a region's outline and color",
    },
    Rule {
        facet: Facet::Vis,
        applies: |c| vis_any(c, &[VisType::Pie, VisType::Donut, VisType::ProportionalArea]),
        suggests: &[T::Merging, T::Splitting, T::ExpandingGuide, T::Scaling, T::Morphing],
        rationale: "sectors and circles stand for quantities that can combine, grow or change shape",
    },
    Rule {
        facet: Facet::Vis,
        applies: |c| vis_any(c, &[VisType::Diagram]),
        suggests: &[T::Pedestal, T::Truck, T::Zoom, T::RstGuide],
        rationale: "follow the arrows and nodes of the diagram with the camera",
    },
    Rule {
        facet: Facet::Vis,
        applies: |c| vis_any(c, &[VisType::Pictograph, VisType::NumberIconText]),
        suggests: &[T::RstGuide],
        rationale: "icons can travel between scenes as the carrier of the story",
    },
];

const FALLBACK_RATIONALE: &str = "available regardless of content";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Recommendation {
    pub rank: usize,
    pub transition: TransitionType,
    /// Number of context facets whose rules suggest this transition; 0 for fallbacks.
    pub hits: usize,
    pub rationale: String,
}

/// Transitions suggested by the rule table, without fallbacks, ranked.
pub fn rule_hits(ctx: &Context) -> Vec<Recommendation> {
    let mut facets: BTreeMap<TransitionType, (Vec<Facet>, Vec<&'static str>)> = BTreeMap::new();
    for rule in RULES.iter().filter(|r| (r.applies)(ctx)) {
        for &t in rule.suggests {
            let entry = facets.entry(t).or_default();
            if !entry.0.contains(&rule.facet) {
                entry.0.push(rule.facet);
            }
            if !entry.1.contains(&rule.rationale) {
                entry.1.push(rule.rationale);
            }
        }
    }
    let mut hits: Vec<Recommendation> = facets
        .into_iter()
        .map(|(t, (f, why))| Recommendation { rank: 0, transition: t, hits: f.len(), rationale: why.join("; ") })
        .collect();
    hits.sort_by(|a, b| b.hits.cmp(&a.hits).then(a.transition.cmp(&b.transition)));
    for (i, r) in hits.iter_mut().enumerate() {
        r.rank = i + 1;
    }
    hits
}

/// Rule hits followed by the content-agnostic categories in taxonomy order.
pub fn recommend(ctx: &Context) -> Vec<Recommendation> {
    let mut out = rule_hits(ctx);
    let fallback = [Category::Refresh, Category::Halftime, Category::CameraMotion];
    for cat in fallback {
        for t in TransitionType::ALL.into_iter().filter(|t| t.category() == cat) {
            if !out.iter().any(|r| r.transition == t) {
                out.push(Recommendation { rank: out.len() + 1, transition: t, hits: 0, rationale: FALLBACK_RATIONALE.into() });
            }
        }
    }
    out
}

pub fn render_table(recs: &[Recommendation]) -> String {
    let mut s = String::from("rank  transition                         hits  rationale\n");
    for r in recs {
        s.push_str(&format!("{:<5} {:<34} {:<5} {}\n", r.rank, r.transition.name(), r.hits, r.rationale));
    }
    s
}
