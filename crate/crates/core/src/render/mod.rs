//! Frame scheduling and deterministic SVG output.

pub mod svg;

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::compiler::{compile, CompileError, Timeline};
use crate::speclang::{print, VideoSpec};
use crate::taxonomy::TransitionType;

pub use svg::{apply_camera, element_svg, frame_svg, num, scene_svg};

#[derive(Debug, Error)]
pub enum RenderError {
    #[error(transparent)]
    Compile(#[from] CompileError),
    #[error("cannot write `{path}`: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Sampling(#[from] crate::compiler::timeline::SamplingError),
}

/// Frames spanned by one clip: round(duration * fps), at least 1.
pub fn clip_frames(duration: f64, fps: u32) -> usize {
    ((duration * f64::from(fps)).round() as usize).max(1)
}

/// Normalized sample times of a clip, both endpoints included.
pub fn clip_times(duration: f64, fps: u32) -> Vec<f64> {
    let n = clip_frames(duration, fps);
    (0..=n).map(|k| k as f64 / n as f64).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameRef {
    pub clip: usize,
    pub t: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClipEntry {
    pub from: String,
    pub to: String,
    pub first_frame: usize,
    pub last_frame: usize,
    pub transitions: Vec<TransitionType>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Manifest {
    pub fps: u32,
    pub width: u32,
    pub height: u32,
    pub frames: usize,
    pub clips: Vec<ClipEntry>,
    pub spec_sha256: String,
}

/// Global frame list. A clip that continues from the previous one shares its
/// first frame with that clip's last; a `segment` break does not.
pub fn schedule(spec: &VideoSpec, timelines: &[Timeline]) -> (Vec<FrameRef>, Vec<ClipEntry>) {
    let mut frames = Vec::new();
    let mut entries = Vec::new();
    for (i, (clip, tl)) in spec.clips.iter().zip(timelines).enumerate() {
        let times = clip_times(tl.duration, spec.fps);
        let shared = i > 0 && !clip.segment_start;
        let first = if shared { frames.len() - 1 } else { frames.len() };
        let skip = usize::from(shared);
        frames.extend(times.into_iter().skip(skip).map(|t| FrameRef { clip: i, t }));
        entries.push(ClipEntry {
            from: clip.from.clone(),
            to: clip.to.clone(),
            first_frame: first,
            last_frame: frames.len() - 1,
            transitions: tl.transitions.clone(),
        });
    }
    (frames, entries)
}

pub fn spec_digest(spec: &VideoSpec) -> String {
    Sha256::digest(print(spec).as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn frame_name(index: usize) -> String {
    format!("frame_{index:05}.svg")
}

pub fn render_frame(spec: &VideoSpec, timelines: &[Timeline], frame: FrameRef) -> Result<String, RenderError> {
    let sampled = timelines[frame.clip].sample(frame.t)?;
    Ok(frame_svg(&sampled, spec.width, spec.height))
}

/// Renders every frame plus `manifest.json` into `out`.
pub fn render_video(spec: &VideoSpec, out: &Path) -> Result<Manifest, RenderError> {
    let timelines = compile(spec)?;
    let (frames, clips) = schedule(spec, &timelines);
    let io = |path: PathBuf| move |source| RenderError::Io { path, source };
    fs::create_dir_all(out).map_err(io(out.to_path_buf()))?;
    frames.par_iter().enumerate().try_for_each(|(i, f)| {
        let svg = render_frame(spec, &timelines, *f)?;
        let path = out.join(frame_name(i));
        fs::write(&path, svg).map_err(io(path))
    })?;
    let manifest = Manifest {
        fps: spec.fps,
        width: spec.width,
        height: spec.height,
        frames: frames.len(),
        clips,
        spec_sha256: spec_digest(spec),
    };
    let path = out.join("manifest.json");
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    fs::write(&path, json + "\n").map_err(io(path))?;
    Ok(manifest)
}
