use std::collections::{BTreeMap, BTreeSet};

use crate::easing::Easing;
use crate::model::{CameraPose, ClipForm, ElementKind, Point, VisType};
use crate::recommend::Relation;
use crate::taxonomy::TransitionType;

use super::ast::*;
use super::diag::{sort_diagnostics, Diagnostic, Loc, Span};
use super::lexer::{lex, Tok, Token};
use super::schema::{self, Ty};

const TOP_LEVEL: &[&str] = &["video", "data", "scene", "clip", "segment"];

/// Parses a script. Any error diagnostic makes the whole parse fail.
pub fn parse(src: &str) -> Result<VideoSpec, Vec<Diagnostic>> {
    let (toks, mut diags) = lex(src);
    let mut p = Parser { toks, pos: 0, diags: Vec::new(), pending: Vec::new() };
    let spec = p.document();
    diags.append(&mut p.diags);
    if let Some(spec) = &spec {
        resolve(spec, &p.pending, &mut diags);
    }
    sort_diagnostics(&mut diags);
    match spec {
        Some(spec) if diags.is_empty() => Ok(spec),
        _ => {
            if diags.is_empty() {
                diags.push(Diagnostic::error("syntax-error", Span::start(), "document could not be parsed"));
            }
            Err(diags)
        }
    }
}

/// A name that must resolve once the whole document is read.
enum Ref {
    Scene(String, Span),
    Dataset(String, Span),
    Row { dataset: String, row: String, field: String, span: Span },
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    diags: Vec<Diagnostic>,
    pending: Vec<Ref>,
}

type PResult<T> = Result<T, ()>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn prev_span(&self) -> Span {
        self.toks[self.pos.saturating_sub(1)].span
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&mut self, code: &'static str, span: Span, msg: impl Into<String>) {
        self.diags.push(Diagnostic::error(code, span, msg));
    }

    fn unexpected<T>(&mut self, what: &str) -> PResult<T> {
        let msg = format!("expected {what}, found {}", self.peek().describe());
        let span = self.span();
        self.error("syntax-error", span, msg);
        Err(())
    }

    fn expect(&mut self, tok: Tok) -> PResult<Span> {
        if *self.peek() == tok {
            Ok(self.bump().span)
        } else {
            self.unexpected(&tok.describe())
        }
    }

    fn ident(&mut self, what: &str) -> PResult<(String, Span)> {
        if let Tok::Ident(s) = self.peek().clone() {
            Ok((s, self.bump().span))
        } else {
            self.unexpected(what)
        }
    }

    fn at_top_level_keyword(&self) -> bool {
        matches!(self.peek(), Tok::Ident(s) if TOP_LEVEL.contains(&s.as_str()))
            && !matches!(self.peek_at(1), Tok::Eq)
    }

    /// Skips to the next top-level keyword outside any block.
    fn recover_top(&mut self) {
        let mut depth = 0usize;
        loop {
            match self.peek() {
                Tok::Eof => return,
                Tok::LBrace => depth += 1,
                Tok::RBrace => {
                    if depth <= 1 {
                        self.bump();
                        if depth == 1 {
                            return;
                        }
                        continue;
                    }
                    depth -= 1;
                }
                _ if depth == 0 && self.at_top_level_keyword() => return,
                _ => {}
            }
            self.bump();
        }
    }

    /// Skips to the start of the next statement inside a block.
    fn recover_stmt(&mut self) {
        let mut first = true;
        loop {
            match self.peek() {
                Tok::Eof | Tok::RBrace => return,
                Tok::Semi => {
                    self.bump();
                    return;
                }
                Tok::Ident(_) if !first => {
                    let prev = &self.toks[self.pos - 1].tok;
                    let next = self.peek_at(1);
                    if !matches!(prev, Tok::Eq | Tok::LParen | Tok::Comma | Tok::LBracket | Tok::Dot | Tok::Arrow)
                        && !matches!(next, Tok::Eq)
                    {
                        return;
                    }
                }
                _ => {}
            }
            first = false;
            self.bump();
        }
    }

    // ---------------------------------------------------------------- values

    fn value(&mut self) -> PResult<Value> {
        match self.peek().clone() {
            Tok::Number(n) => {
                self.bump();
                Ok(Value::Number(n))
            }
            Tok::Str(s) => {
                self.bump();
                Ok(Value::Str(s))
            }
            Tok::Ident(s) => {
                self.bump();
                Ok(Value::Ident(s))
            }
            Tok::Color(c) => {
                self.bump();
                Ok(Value::Color(c))
            }
            Tok::LParen => {
                self.bump();
                let mut items = vec![self.value()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    items.push(self.value()?);
                }
                self.expect(Tok::RParen)?;
                Ok(Value::Tuple(items))
            }
            Tok::LBracket => {
                self.bump();
                let mut items = Vec::new();
                while !matches!(self.peek(), Tok::RBracket | Tok::Eof) {
                    items.push(self.value()?);
                    if *self.peek() == Tok::Comma {
                        self.bump();
                    }
                }
                self.expect(Tok::RBracket)?;
                Ok(Value::List(items))
            }
            _ => self.unexpected("a value"),
        }
    }

    /// `name=value` pairs, type-checked with `schema`. Returns each attr's span.
    fn attrs(&mut self, schema: fn(&str) -> Option<Ty>, ctx: &str) -> PResult<(Attrs, BTreeMap<String, Span>)> {
        let mut attrs = Attrs::new();
        let mut spans = BTreeMap::new();
        while matches!(self.peek(), Tok::Ident(_)) && *self.peek_at(1) == Tok::Eq {
            let (name, name_span) = self.ident("attribute name")?;
            self.bump();
            let vstart = self.span();
            let value = self.value()?;
            let vspan = vstart.to(self.prev_span());
            match schema(&name) {
                None => self.error("unknown-attr", name_span, format!("unknown attribute `{name}` on {ctx}")),
                Some(ty) => {
                    if let Err(expected) = schema::check(ty, &value) {
                        self.error("attr-type", vspan, format!("`{name}` expects {expected}, found {}", value.type_name()));
                    }
                }
            }
            if attrs.insert(name.clone(), value).is_some() {
                self.error("duplicate-attr", name_span, format!("attribute `{name}` given twice"));
            }
            spans.insert(name, vspan);
        }
        Ok((attrs, spans))
    }

    // -------------------------------------------------------------- document

    fn document(&mut self) -> Option<VideoSpec> {
        let mut header: Option<(String, u32, u32, u32)> = None;
        let mut datasets: Vec<Dataset> = Vec::new();
        let mut scenes: Vec<SceneDecl> = Vec::new();
        let mut clips: Vec<ClipSpec> = Vec::new();
        let mut segment_next = false;
        let mut ok = true;

        while *self.peek() != Tok::Eof {
            let kw_span = self.span();
            let kw = match self.peek() {
                Tok::Ident(s) if TOP_LEVEL.contains(&s.as_str()) => s.clone(),
                _ => {
                    let _ = self.unexpected::<()>("`video`, `data`, `scene`, `clip` or `segment`");
                    ok = false;
                    self.bump();
                    self.recover_top();
                    continue;
                }
            };
            self.bump();
            let result = match kw.as_str() {
                "video" => self.header().map(|h| {
                    if header.is_some() {
                        self.error("duplicate-id", kw_span, "more than one `video` header");
                    }
                    header = Some(h);
                }),
                "data" => self.dataset(kw_span).map(|d| {
                    if datasets.iter().any(|x| x.id == d.id) {
                        self.error("duplicate-id", d.loc.0, format!("dataset `{}` declared twice", d.id));
                    }
                    datasets.push(d);
                }),
                "scene" => self.scene(kw_span).map(|s| {
                    if scenes.iter().any(|x| x.id == s.id) {
                        self.error("duplicate-id", s.loc.0, format!("scene `{}` declared twice", s.id));
                    }
                    scenes.push(s);
                }),
                "clip" => self.clip(kw_span).map(|mut c| {
                    c.segment_start = std::mem::take(&mut segment_next);
                    clips.push(c);
                }),
                _ => {
                    segment_next = true;
                    Ok(())
                }
            };
            if result.is_err() {
                ok = false;
                self.recover_top();
            }
        }
        let Some((title, fps, width, height)) = header else {
            self.error("syntax-error", Span::start(), "missing `video` header");
            return None;
        };
        ok.then_some(VideoSpec { title, fps, width, height, datasets, scenes, clips })
    }

    fn header(&mut self) -> PResult<(String, u32, u32, u32)> {
        let title = match self.peek().clone() {
            Tok::Str(s) => {
                self.bump();
                s
            }
            _ => return self.unexpected("a title string"),
        };
        let start = self.span();
        let (attrs, _) = self.attrs(schema::header_attr, "the video header")?;
        let mut get = |name: &str| -> u32 {
            match attrs.get(name).and_then(Value::as_number) {
                Some(n) if n >= 1.0 => n as u32,
                Some(_) => 1,
                None if attrs.contains_key(name) => 1,
                None => {
                    self.error("missing-attr", start, format!("video header needs `{name}`"));
                    1
                }
            }
        };
        Ok((title, get("fps"), get("width"), get("height")))
    }

    fn dataset(&mut self, kw: Span) -> PResult<Dataset> {
        let (id, id_span) = self.ident("a dataset id")?;
        let (attrs, _) = self.attrs(schema::data_attr, "a dataset")?;
        let key = match attrs.get("key").and_then(Value::as_ident) {
            Some(k) => k.to_string(),
            None => {
                self.error("missing-attr", id_span, format!("dataset `{id}` needs `key=FIELD`"));
                String::from("key")
            }
        };
        self.expect(Tok::LBrace)?;
        let mut rows = Vec::new();
        let mut seen = BTreeSet::new();
        while *self.peek() == Tok::LParen {
            let row_span = self.bump().span;
            let mut row = Row::new();
            while let Tok::Ident(_) = self.peek() {
                let (field, fspan) = self.ident("a field name")?;
                self.expect(Tok::Eq)?;
                let v = match self.peek().clone() {
                    Tok::Number(n) => DataValue::Number(n),
                    Tok::Str(s) | Tok::Ident(s) => DataValue::Text(s),
                    _ => return self.unexpected("a number or string"),
                };
                self.bump();
                if row.insert(field.clone(), v).is_some() {
                    self.error("duplicate-attr", fspan, format!("field `{field}` given twice"));
                }
                if *self.peek() == Tok::Comma {
                    self.bump();
                }
            }
            self.expect(Tok::RParen)?;
            match row.get(&key).map(DataValue::as_key) {
                None => self.error("missing-attr", row_span, format!("row lacks key field `{key}`")),
                Some(k) => {
                    if !seen.insert(k.clone()) {
                        self.error("duplicate-id", row_span, format!("row key `{k}` repeated in `{id}`"));
                    }
                }
            }
            rows.push(row);
            if *self.peek() == Tok::Semi {
                self.bump();
            }
        }
        self.expect(Tok::RBrace)?;
        Ok(Dataset { id, key, rows, loc: Loc(kw.to(id_span)) })
    }

    fn scene(&mut self, kw: Span) -> PResult<SceneDecl> {
        let (id, id_span) = self.ident("a scene id")?;
        let (attrs, _) = self.attrs(schema::scene_attr, "a scene")?;
        let vis = attrs.get("vis").and_then(Value::as_ident).and_then(VisType::from_name);
        let form = attrs.get("form").and_then(Value::as_ident).and_then(ClipForm::from_name).unwrap_or(if vis.is_some() {
            ClipForm::Visualization
        } else {
            ClipForm::NonVisualization
        });
        let camera = attrs.get("camera").and_then(|v| v.as_numbers(4)).map_or_else(CameraPose::default, |n| CameraPose {
            center: Point::new(n[0], n[1]),
            zoom: n[2],
            focus_depth: n[3],
        });
        self.expect(Tok::LBrace)?;
        let mut items: Vec<ItemDecl> = Vec::new();
        loop {
            match self.peek() {
                Tok::RBrace => {
                    self.bump();
                    break;
                }
                Tok::Eof => return self.unexpected("`}`"),
                Tok::Semi => {
                    self.bump();
                }
                _ => match self.item() {
                    Ok(item) => {
                        if items.iter().any(|x| x.id == item.id) {
                            self.error("duplicate-id", item.loc.0, format!("element `{}` declared twice in scene `{id}`", item.id));
                        }
                        items.push(item);
                    }
                    Err(()) => self.recover_stmt(),
                },
            }
        }
        Ok(SceneDecl { id, form, vis, camera, items, loc: Loc(kw.to(id_span)) })
    }

    fn item(&mut self) -> PResult<ItemDecl> {
        let (word, word_span) = self.ident("an element kind or `chart`")?;
        if word == "chart" {
            let (vis_name, vis_span) = self.ident("a chart type")?;
            let Some(vis) = VisType::from_name(&vis_name) else {
                self.error("syntax-error", vis_span, format!("unknown chart type `{vis_name}`"));
                return Err(());
            };
            let (id, id_span) = self.ident("a chart id")?;
            let (attrs, spans) = self.attrs(schema::chart_attr, "a chart")?;
            match attrs.get("data").and_then(Value::as_ident) {
                Some(ds) => self.pending.push(Ref::Dataset(ds.to_string(), spans["data"])),
                None => self.error("missing-attr", id_span, format!("chart `{id}` needs `data=`")),
            }
            return Ok(ItemDecl { kind: ItemKind::Chart(vis), id, attrs, loc: Loc(word_span.to(id_span)) });
        }
        let Some(kind) = ElementKind::from_name(&word) else {
            self.error("syntax-error", word_span, format!("unknown element kind `{word}`"));
            return Err(());
        };
        let (id, id_span) = self.ident("an element id")?;
        let (attrs, spans) = self.attrs(schema::element_attr, "an element")?;
        if let Some(Value::Tuple(t)) = attrs.get("bind") {
            if let (Some(ds), Some(row), Some(field)) = (t[0].as_ident(), t.get(1).and_then(Value::as_key), t.get(2).and_then(Value::as_ident)) {
                self.pending.push(Ref::Row { dataset: ds.into(), row, field: field.into(), span: spans["bind"] });
            }
        }
        let loc = word_span.to(id_span);
        if let Err(msg) = crate::charts::check_element_attrs(&attrs) {
            let code = if msg.starts_with("missing") { "missing-attr" } else { "invalid-geometry" };
            self.error(code, loc, format!("element `{id}`: {msg}"));
        }
        Ok(ItemDecl { kind: ItemKind::Element(kind), id, attrs, loc: Loc(loc) })
    }

    fn clip(&mut self, kw: Span) -> PResult<ClipSpec> {
        let (from, from_span) = self.ident("a source scene id")?;
        self.expect(Tok::Arrow)?;
        let (to, to_span) = self.ident("a target scene id")?;
        self.pending.push(Ref::Scene(from.clone(), from_span));
        self.pending.push(Ref::Scene(to.clone(), to_span));
        let (attrs, _) = self.attrs(schema::clip_attr, "a clip")?;
        let mut clip = ClipSpec::new(from, to);
        clip.loc = Loc(kw.to(to_span));
        clip.relation = attrs.get("relation").and_then(Value::as_ident).and_then(Relation::from_name);
        let open = self.expect(Tok::LBrace)?;
        let mut halftime_span = None;
        let mut saw_unknown = false;
        loop {
            let stmt_span = self.span();
            let result = match self.peek().clone() {
                Tok::RBrace => {
                    self.bump();
                    break;
                }
                Tok::Eof => return self.unexpected("`}`"),
                Tok::Semi => {
                    self.bump();
                    continue;
                }
                Tok::Ident(kw) if kw == "transition" => {
                    self.bump();
                    self.transition().map(|t| {
                        let Some(t) = t else {
                            saw_unknown = true;
                            return;
                        };
                        if clip.declares(t.ty) {
                            self.error("duplicate-id", t.loc.0, format!("transition `{}` declared twice", t.ty));
                        }
                        clip.transitions.push(t);
                    })
                }
                Tok::Ident(kw) if kw == "map" => {
                    self.bump();
                    self.map_stmt(stmt_span).map(|m| clip.maps.push(m))
                }
                Tok::Ident(kw) if kw == "halftime" => {
                    self.bump();
                    self.ident("an interstitial scene id").map(|(id, span)| {
                        if clip.halftime.is_some() {
                            self.error("halftime-mismatch", span, "more than one interstitial scene");
                        }
                        self.pending.push(Ref::Scene(id.clone(), span));
                        clip.halftime = Some(id);
                        halftime_span = Some(span);
                    })
                }
                Tok::Ident(kw) if kw == "camera" => {
                    self.bump();
                    self.camera_key(stmt_span).map(|k| clip.camera_path.push(k))
                }
                _ => self.unexpected("`transition`, `map`, `halftime` or `camera`"),
            };
            if result.is_err() {
                self.recover_stmt();
            }
        }
        if clip.transitions.is_empty() && !saw_unknown {
            self.error("missing-attr", clip.loc.0, "clip declares no transition");
        }
        let has_halftime = clip.declares(TransitionType::Halftime);
        match (has_halftime, &clip.halftime) {
            (true, None) => self.error("halftime-mismatch", open, "halftime transition needs `halftime SCENE`"),
            (false, Some(_)) => self.error(
                "halftime-mismatch",
                halftime_span.unwrap_or(open),
                "interstitial scene given without a halftime transition",
            ),
            _ => {}
        }
        Ok(clip)
    }

    /// `Ok(None)` after reporting an unknown name; the statement was consumed.
    fn transition(&mut self) -> PResult<Option<TransitionDecl>> {
        let (mut name, start) = self.ident("a transition name")?;
        let mut end = start;
        if *self.peek() == Tok::Dot {
            self.bump();
            let (sub, s) = self.ident("a transition subtype")?;
            name = format!("{name}.{sub}");
            end = s;
        }
        let span = start.to(end);
        let Some(ty) = TransitionType::from_name(&name) else {
            self.error("unknown-transition", span, format!("unknown transition `{name}`"));
            self.attrs(schema::transition_attr, "a transition")?;
            return Ok(None);
        };
        let (mut attrs, _) = self.attrs(schema::transition_attr, "a transition")?;
        let mut decl = TransitionDecl::new(ty);
        decl.loc = Loc(span);
        if let Some(d) = attrs.remove("duration").and_then(|v| v.as_number()) {
            decl.duration = d;
        }
        if let Some(e) = attrs.remove("easing").and_then(|v| v.as_ident().and_then(Easing::from_name)) {
            decl.easing = e;
        }
        decl.params = attrs;
        Ok(Some(decl))
    }

    fn map_stmt(&mut self, start: Span) -> PResult<MapDecl> {
        let (from, _) = self.ident("a source element id")?;
        self.expect(Tok::Arrow)?;
        let (to, end) = self.ident("a target element id")?;
        Ok(MapDecl { from, to, loc: Loc(start.to(end)) })
    }

    fn camera_key(&mut self, start: Span) -> PResult<CameraKey> {
        let vstart = self.span();
        let v = self.value()?;
        let vspan = vstart.to(self.prev_span());
        self.expect(Tok::At)?;
        let t = match self.peek().clone() {
            Tok::Number(n) => {
                self.bump();
                n
            }
            _ => return self.unexpected("a normalized time"),
        };
        let span = start.to(self.prev_span());
        if !(0.0..=1.0).contains(&t) {
            self.error("attr-type", self.prev_span(), "camera key time must lie in [0, 1]");
        }
        let Some(n) = v.as_numbers(4) else {
            self.error("attr-type", vspan, format!("camera key expects {}", schema::describe(Ty::Camera)));
            return Ok(CameraKey { pose: CameraPose::default(), t, loc: Loc(span) });
        };
        let pose = CameraPose { center: Point::new(n[0], n[1]), zoom: n[2], focus_depth: n[3] };
        Ok(CameraKey { pose, t, loc: Loc(span) })
    }
}

fn resolve(spec: &VideoSpec, refs: &[Ref], diags: &mut Vec<Diagnostic>) {
    for r in refs {
        match r {
            Ref::Scene(id, span) if spec.scene(id).is_none() => {
                diags.push(Diagnostic::error("unresolved-reference", *span, format!("unknown scene `{id}`")));
            }
            Ref::Dataset(id, span) if spec.dataset(id).is_none() => {
                diags.push(Diagnostic::error("unresolved-reference", *span, format!("unknown dataset `{id}`")));
            }
            Ref::Row { dataset, row, field, span } => match spec.dataset(dataset) {
                None => diags.push(Diagnostic::error("unresolved-reference", *span, format!("unknown dataset `{dataset}`"))),
                Some(ds) => match ds.find_row(row) {
                    None => diags.push(Diagnostic::error(
                        "unresolved-reference",
                        *span,
                        format!("dataset `{dataset}` has no row `{row}`"),
                    )),
                    Some(r) if !r.contains_key(field) => diags.push(Diagnostic::error(
                        "unresolved-reference",
                        *span,
                        format!("row `{row}` of `{dataset}` has no field `{field}`"),
                    )),
                    Some(_) => {}
                },
            },
            _ => {}
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn codes(src: &str) -> Vec<&'static str> {
        parse(src).unwrap_err().into_iter().map(|d| d.code).collect()
    }

    #[test]
    fn minimal_document() {
        let spec = parse("video \"t\" fps=30 width=96 height=54\nscene s {}").unwrap();
        assert_eq!(spec.title, "t");
        assert_eq!(spec.fps, 30);
        assert_eq!(spec.scenes.len(), 1);
        assert!(spec.clips.is_empty());
    }

    #[test]
    fn transition_name_lookup() {
        let spec = parse(
            "video \"t\" fps=30 width=96 height=54
             scene a {} scene b {}
             clip a -> b { transition preserving_guide.rst_guide }",
        )
        .unwrap();
        assert_eq!(spec.clips[0].transitions[0].ty, TransitionType::RstGuide);
    }

    #[test]
    fn unknown_transition_is_reported_at_its_token() {
        let src = "video \"t\" fps=30 width=96 height=54\nscene a {} scene b {}\nclip a -> b {\n  transition preserving_guide.teleport\n}";
        let diags = parse(src).unwrap_err();
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].code, "unknown-transition");
        assert_eq!((diags[0].span.line, diags[0].span.col, diags[0].span.len), (4, 14, 25));
    }

    #[test]
    fn duplicate_and_unresolved() {
        assert_eq!(codes("video \"t\" fps=1 width=1 height=1 scene a {} scene a {}"), vec!["duplicate-id"]);
        assert_eq!(
            codes("video \"t\" fps=1 width=1 height=1 scene a {} clip a -> b { transition refresh.fade }"),
            vec!["unresolved-reference"]
        );
    }

    #[test]
    fn attribute_type_mismatch() {
        assert_eq!(codes("video \"t\" fps=\"x\" width=1 height=1"), vec!["attr-type"]);
        assert_eq!(codes("video \"t\" fps=1 width=1 height=1 colour=2"), vec!["unknown-attr"]);
    }

    #[test]
    fn halftime_statement_must_match() {
        let src = "video \"t\" fps=1 width=1 height=1 scene a {} scene b {} clip a -> b { transition halftime }";
        assert_eq!(codes(src), vec!["halftime-mismatch"]);
    }

    #[test]
    fn recovers_after_errors() {
        let src = "video \"t\" fps=1 width=1 height=1\nscene a { text t1 shape=text text=\"x\" bogus }\nscene a {}";
        let c = codes(src);
        assert!(c.contains(&"syntax-error") || c.contains(&"duplicate-id"), "{c:?}");
    }
}
