//! Corpus label statistics.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::recommend::FormPair;
use crate::taxonomy::{Category, TransitionType};

const REFERENCE_CORPUS: &str = include_str!("../../assets/reference_corpus.tsv");
/// Coder agreement on the reference corpus: (agreed, disagreed).
pub const REFERENCE_AGREEMENT: (usize, usize) = (3430, 479);

/// Forms in reporting order.
pub const FORM_ORDER: [FormPair; 3] = [FormPair::VisVis, FormPair::OthersVis, FormPair::VisOthers];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledClip {
    pub form: FormPair,
    pub categories: BTreeSet<Category>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct LabelError {
    pub line: usize,
    pub message: String,
}

fn category_of(label: &str) -> Option<Category> {
    Category::from_name(label)
        .or_else(|| TransitionType::from_name(label).map(TransitionType::category))
        .or_else(|| TransitionType::ALL.into_iter().find(|t| t.subtype() == Some(label)).map(TransitionType::category))
}

fn parse_line(line: &str, n: usize) -> Result<(FormPair, BTreeSet<Category>, &str), LabelError> {
    let err = |message: String| LabelError { line: n, message };
    let mut fields = line.split('\t');
    let form = fields.next().unwrap_or_default().trim();
    let form = FormPair::from_name(form).ok_or_else(|| err(format!("unknown form `{form}`")))?;
    let labels = fields.next().ok_or_else(|| err("missing labels after the form".into()))?;
    let mut cats = BTreeSet::new();
    for label in labels.split(',').map(str::trim) {
        cats.insert(category_of(label).ok_or_else(|| err(format!("unknown label `{label}`")))?);
    }
    Ok((form, cats, fields.next().unwrap_or("")))
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
}

/// One clip per line: `form<TAB>label[,label...]`. Labels may be category
/// names, canonical transition names or bare subtype names.
pub fn parse_labels(text: &str) -> Result<Vec<LabeledClip>, LabelError> {
    content_lines(text)
        .map(|(n, line)| parse_line(line, n).map(|(form, categories, _)| LabeledClip { form, categories }))
        .collect()
}

/// Like [`parse_labels`] with a third column giving how many clips share the line.
pub fn parse_counted_labels(text: &str) -> Result<Vec<LabeledClip>, LabelError> {
    let mut out = Vec::new();
    for (n, line) in content_lines(text) {
        let (form, categories, count) = parse_line(line, n)?;
        let count: usize =
            count.trim().parse().map_err(|_| LabelError { line: n, message: format!("bad clip count `{count}`") })?;
        out.extend(std::iter::repeat_n(LabeledClip { form, categories }, count));
    }
    Ok(out)
}

pub fn reference_corpus() -> Vec<LabeledClip> {
    parse_counted_labels(REFERENCE_CORPUS).expect("bundled corpus parses")
}

/// Percentage in tenths, rounded half away from zero, in exact integer arithmetic.
pub fn percent_tenths(count: usize, denominator: usize) -> u64 {
    if denominator == 0 {
        return 0;
    }
    let (c, d) = (count as u64, denominator as u64);
    (2000 * c + d) / (2 * d)
}

pub fn format_percent(count: usize, denominator: usize) -> String {
    let t = percent_tenths(count, denominator);
    format!("{}.{}%", t / 10, t % 10)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Share {
    pub label: String,
    pub count: usize,
    pub denominator: usize,
    pub percent: String,
}

impl Share {
    pub fn new(label: &str, count: usize, denominator: usize) -> Self {
        Share { label: label.to_string(), count, denominator, percent: format_percent(count, denominator) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusStats {
    pub total: usize,
    pub categories: Vec<Share>,
    pub forms: Vec<Share>,
    /// Preserving guide and narrative agent shares among vis-to-vis clips.
    pub within_vis_vis: Vec<Share>,
    pub agreement: Option<Vec<Share>>,
}

pub fn corpus_stats(clips: &[LabeledClip]) -> CorpusStats {
    let total = clips.len();
    let categories = Category::ALL
        .into_iter()
        .map(|c| Share::new(c.name(), clips.iter().filter(|x| x.categories.contains(&c)).count(), total))
        .collect();
    let forms = FORM_ORDER
        .into_iter()
        .map(|f| Share::new(f.name(), clips.iter().filter(|x| x.form == f).count(), total))
        .collect();
    let vv: Vec<&LabeledClip> = clips.iter().filter(|x| x.form == FormPair::VisVis).collect();
    let within_vis_vis = [Category::PreservingGuide, Category::NarrativeAgent]
        .into_iter()
        .map(|c| Share::new(c.name(), vv.iter().filter(|x| x.categories.contains(&c)).count(), vv.len()))
        .collect();
    CorpusStats { total, categories, forms, within_vis_vis, agreement: None }
}

/// Statistics of the bundled reference corpus, including coder agreement.
pub fn reference_stats() -> CorpusStats {
    let mut stats = corpus_stats(&reference_corpus());
    let (agree, disagree) = REFERENCE_AGREEMENT;
    let n = agree + disagree;
    stats.agreement = Some(vec![Share::new("agree", agree, n), Share::new("disagree", disagree, n)]);
    stats
}

fn section(out: &mut String, title: &str, rows: &[Share]) {
    out.push_str(&format!("\n{title:<18} {:>6}  {:>6}\n", "count", "share"));
    for r in rows {
        out.push_str(&format!("{:<18} {:>6}  {:>6}\n", r.label, r.count, r.percent));
    }
}

impl CorpusStats {
    pub fn render_table(&self) -> String {
        let mut out = format!("clips {}\n", self.total);
        section(&mut out, "category", &self.categories);
        section(&mut out, "form", &self.forms);
        section(&mut out, "within vis_vis", &self.within_vis_vis);
        if let Some(a) = &self.agreement {
            section(&mut out, "coder agreement", a);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_is_half_away_from_zero() {
        assert_eq!(format_percent(1, 8), "12.5%");
        assert_eq!(format_percent(1, 16), "6.3%");
        assert_eq!(format_percent(0, 5), "0.0%");
        assert_eq!(format_percent(5, 5), "100.0%");
    }

    #[test]
    fn labels_accept_every_spelling() {
        let clips = parse_labels("vis_vis\trefresh,preserving_guide.rst_guide\nothers_vis\tzoom\n").unwrap();
        assert_eq!(clips.len(), 2);
        assert!(clips[0].categories.contains(&Category::PreservingGuide));
        assert!(clips[1].categories.contains(&Category::CameraMotion));
        assert!(parse_labels("vis_vis\tteleport\n").is_err());
        assert!(parse_labels("sideways\trefresh\n").is_err());
    }
}
