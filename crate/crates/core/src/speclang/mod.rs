//! The script language: lexer, parser, canonical printer and semantic checks.

pub mod ast;
pub mod diag;
pub mod lexer;
pub mod parser;
pub mod printer;
pub mod schema;
pub mod validate;

pub use ast::{ClipSpec, VideoSpec};
pub use diag::{Diagnostic, Severity, Span};
pub use parser::parse;
pub use printer::print;
pub use validate::validate;
