//! Turns a validated script into per-clip timelines.

pub mod correspond;
pub mod plan;
pub mod timeline;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::charts::{build_scenes, LayoutError};
use crate::model::Scene;
use crate::speclang::VideoSpec;

pub use correspond::{correspond, match_distance};
pub use plan::{plan, PlanError};
pub use timeline::{Sampled, SampledLayer, Timeline};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CompileError {
    #[error(transparent)]
    Layout(#[from] LayoutError),
    #[error("clip {index}: {error}")]
    Plan { index: usize, error: PlanError },
    #[error("clip {index}: unknown scene `{scene}`")]
    UnknownScene { index: usize, scene: String },
}

/// Scenes of a document keyed by id.
pub fn scene_table(spec: &VideoSpec) -> Result<BTreeMap<String, Scene>, LayoutError> {
    Ok(build_scenes(spec)?.into_iter().map(|s| (s.id.clone(), s)).collect())
}

/// Plans one clip of a document against prebuilt scenes.
pub fn plan_clip(spec: &VideoSpec, scenes: &BTreeMap<String, Scene>, index: usize) -> Result<Timeline, CompileError> {
    let clip = &spec.clips[index];
    let get = |id: &str| scenes.get(id).ok_or_else(|| CompileError::UnknownScene { index, scene: id.to_string() });
    let a = get(&clip.from)?;
    let b = get(&clip.to)?;
    let inter = clip.halftime.as_deref().map(get).transpose()?;
    plan(clip, a, b, inter).map_err(|error| CompileError::Plan { index, error })
}

/// Timelines for every clip, in order.
pub fn compile(spec: &VideoSpec) -> Result<Vec<Timeline>, CompileError> {
    let scenes = scene_table(spec)?;
    (0..spec.clips.len()).map(|i| plan_clip(spec, &scenes, i)).collect()
}
