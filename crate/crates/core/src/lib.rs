//! Compiler and renderer for data video scripts.

pub mod analyze;
pub mod charts;
pub mod cli;
pub mod compiler;
pub mod easing;
pub mod geometry;
pub mod model;
pub mod recommend;
pub mod render;
pub mod speclang;
pub mod taxonomy;
