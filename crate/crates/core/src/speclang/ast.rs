use std::collections::BTreeMap;

use crate::easing::Easing;
use crate::model::{CameraPose, ClipForm, ElementKind, Rgb, VisType};
use crate::recommend::Relation;
use crate::taxonomy::TransitionType;

use super::diag::Loc;

/// Attribute value as written in a script.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Number(f64),
    Str(String),
    Ident(String),
    Color(Rgb),
    Tuple(Vec<Value>),
    List(Vec<Value>),
}

impl Value {
    pub fn as_number(&self) -> Option<f64> {
        match self {
            Value::Number(n) => Some(*n),
            _ => None,
        }
    }

    pub fn as_ident(&self) -> Option<&str> {
        match self {
            Value::Ident(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_str(&self) -> Option<&str> {
        match self {
            Value::Str(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_color(&self) -> Option<Rgb> {
        match self {
            Value::Color(c) => Some(*c),
            _ => None,
        }
    }

    /// A tuple of exactly `n` numbers.
    pub fn as_numbers(&self, n: usize) -> Option<Vec<f64>> {
        match self {
            Value::Tuple(items) if items.len() == n => items.iter().map(Value::as_number).collect(),
            _ => None,
        }
    }

    /// Identifier, string or number rendered as a key string.
    pub fn as_key(&self) -> Option<String> {
        match self {
            Value::Ident(s) | Value::Str(s) => Some(s.clone()),
            Value::Number(n) => Some(format_number(*n)),
            _ => None,
        }
    }

    pub fn type_name(&self) -> &'static str {
        match self {
            Value::Number(_) => "number",
            Value::Str(_) => "string",
            Value::Ident(_) => "identifier",
            Value::Color(_) => "color",
            Value::Tuple(_) => "tuple",
            Value::List(_) => "list",
        }
    }
}

/// Shortest decimal that reads back to the same value.
pub fn format_number(n: f64) -> String {
    if n == 0.0 {
        return "0".into();
    }
    format!("{n}")
}

pub type Attrs = BTreeMap<String, Value>;

#[derive(Debug, Clone, PartialEq)]
pub enum DataValue {
    Number(f64),
    Text(String),
}

impl DataValue {
    pub fn as_number(&self) -> Option<f64> {
        match self {
            DataValue::Number(n) => Some(*n),
            DataValue::Text(_) => None,
        }
    }

    pub fn as_key(&self) -> String {
        match self {
            DataValue::Number(n) => format_number(*n),
            DataValue::Text(s) => s.clone(),
        }
    }
}

pub type Row = BTreeMap<String, DataValue>;

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub id: String,
    /// Field whose value identifies a row.
    pub key: String,
    pub rows: Vec<Row>,
    pub loc: Loc,
}

impl Dataset {
    pub fn row_key(&self, row: &Row) -> Option<String> {
        row.get(&self.key).map(DataValue::as_key)
    }

    pub fn find_row(&self, key: &str) -> Option<&Row> {
        self.rows.iter().find(|r| self.row_key(r).as_deref() == Some(key))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ItemKind {
    Element(ElementKind),
    Chart(VisType),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ItemDecl {
    pub kind: ItemKind,
    pub id: String,
    pub attrs: Attrs,
    pub loc: Loc,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SceneDecl {
    pub id: String,
    pub form: ClipForm,
    pub vis: Option<VisType>,
    pub camera: CameraPose,
    pub items: Vec<ItemDecl>,
    pub loc: Loc,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransitionDecl {
    pub ty: TransitionType,
    pub duration: f64,
    pub easing: Easing,
    /// Subtype-specific parameters (everything except duration and easing).
    pub params: Attrs,
    pub loc: Loc,
}

impl TransitionDecl {
    pub fn new(ty: TransitionType) -> Self {
        TransitionDecl { ty, duration: 1.0, easing: Easing::EaseInOut, params: Attrs::new(), loc: Loc::default() }
    }

    pub fn ident_param(&self, name: &str) -> Option<&str> {
        self.params.get(name).and_then(Value::as_ident)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MapDecl {
    pub from: String,
    pub to: String,
    pub loc: Loc,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CameraKey {
    pub pose: CameraPose,
    /// Normalized clip time in [0, 1].
    pub t: f64,
    pub loc: Loc,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClipSpec {
    pub from: String,
    pub to: String,
    pub relation: Option<Relation>,
    /// Preceded by a `segment` break, so it need not chain from the previous clip.
    pub segment_start: bool,
    pub transitions: Vec<TransitionDecl>,
    pub maps: Vec<MapDecl>,
    pub halftime: Option<String>,
    pub camera_path: Vec<CameraKey>,
    pub loc: Loc,
}

impl ClipSpec {
    pub fn new(from: impl Into<String>, to: impl Into<String>) -> Self {
        ClipSpec {
            from: from.into(),
            to: to.into(),
            relation: None,
            segment_start: false,
            transitions: Vec::new(),
            maps: Vec::new(),
            halftime: None,
            camera_path: Vec::new(),
            loc: Loc::default(),
        }
    }

    pub fn types(&self) -> Vec<TransitionType> {
        self.transitions.iter().map(|t| t.ty).collect()
    }

    pub fn declares(&self, t: TransitionType) -> bool {
        self.transitions.iter().any(|d| d.ty == t)
    }

    pub fn transition(&self, t: TransitionType) -> Option<&TransitionDecl> {
        self.transitions.iter().find(|d| d.ty == t)
    }

    /// Longest declared duration; transitions on one clip run concurrently.
    pub fn duration(&self) -> f64 {
        self.transitions.iter().map(|t| t.duration).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VideoSpec {
    pub title: String,
    pub fps: u32,
    pub width: u32,
    pub height: u32,
    pub datasets: Vec<Dataset>,
    pub scenes: Vec<SceneDecl>,
    pub clips: Vec<ClipSpec>,
}

impl VideoSpec {
    pub fn new(title: impl Into<String>, fps: u32, width: u32, height: u32) -> Self {
        VideoSpec { title: title.into(), fps, width, height, datasets: Vec::new(), scenes: Vec::new(), clips: Vec::new() }
    }

    pub fn scene(&self, id: &str) -> Option<&SceneDecl> {
        self.scenes.iter().find(|s| s.id == id)
    }

    pub fn dataset(&self, id: &str) -> Option<&Dataset> {
        self.datasets.iter().find(|d| d.id == id)
    }
}
