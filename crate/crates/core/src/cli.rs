//! Command-line front end.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analyze::{classify_timeline, label_names, lint, reference_stats, stats};
use crate::compiler::{plan_clip, scene_table};
use crate::model::{ClipForm, VisType};
use crate::recommend::{recommend, render_table, Context, FormPair, Relation};
use crate::render::render_video;
use crate::speclang::{diag::has_errors, parse, print, validate, Diagnostic, VideoSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DIAGNOSTICS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "dvc", version, about = "Compile, check and render data-video scripts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormArg {
    #[value(alias = "visualization")]
    Vis,
    #[value(alias = "non_visualization")]
    Others,
}

impl FormArg {
    fn form(self) -> ClipForm {
        match self {
            FormArg::Vis => ClipForm::Visualization,
            FormArg::Others => ClipForm::NonVisualization,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the canonical form of a script
    Fmt {
        file: PathBuf,
        /// Rewrite the file in place
        #[arg(long)]
        write: bool,
    },
    /// Report diagnostics; exits 1 if any is an error
    Check { file: PathBuf },
    /// Render every frame as SVG plus a manifest
    Render {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Rank transitions for an authoring context
    Recommend {
        #[arg(long, value_enum)]
        from_form: Option<FormArg>,
        #[arg(long, value_enum)]
        to_form: Option<FormArg>,
        #[arg(long, value_parser = parse_relation)]
        relation: Option<Relation>,
        /// Vis type of either scene; repeatable
        #[arg(long, value_parser = parse_vis)]
        vis: Vec<VisType>,
        #[arg(long)]
        json: bool,
    },
    /// Print the labels recovered from a planned clip
    Classify {
        file: PathBuf,
        /// Zero-based clip index
        #[arg(long)]
        clip: usize,
        #[arg(long)]
        json: bool,
    },
    /// Label statistics of a corpus
    Stats {
        /// File with one `form<TAB>label[,label...]` line per clip
        labels: Option<PathBuf>,
        /// Use the bundled reference corpus instead
        #[arg(long, conflicts_with = "labels")]
        paper_fixture: bool,
        #[arg(long)]
        json: bool,
    },
}

fn parse_relation(s: &str) -> Result<Relation, String> {
    Relation::from_name(s).ok_or_else(|| {
        let names: Vec<_> = Relation::ALL.iter().map(|r| r.name()).collect();
        format!("expected one of {}", names.join(", "))
    })
}

fn parse_vis(s: &str) -> Result<VisType, String> {
    VisType::from_name(s).ok_or_else(|| {
        let names: Vec<_> = VisType::ALL.iter().map(|v| v.name()).collect();
        format!("expected one of {}", names.join(", "))
    })
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

type Outcome = Result<(), i32>;

impl Io<'_> {
    fn out(&mut self, s: &str) {
        let _ = self.out.write_all(s.as_bytes());
    }

    fn err(&mut self, s: &str) {
        let _ = self.err.write_all(s.as_bytes());
    }

    fn diagnostics(&mut self, file: &Path, diags: &[Diagnostic]) {
        let name = file.display().to_string();
        for d in diags {
            self.err(&format!("{}\n", d.render(&name)));
        }
    }

    fn json<T: Serialize>(&mut self, v: &T) {
        let s = serde_json::to_string_pretty(v).expect("serializable");
        self.out(&format!("{s}\n"));
    }

    fn read(&mut self, file: &Path) -> Result<String, i32> {
        fs::read_to_string(file).map_err(|e| {
            self.err(&format!("error: cannot read `{}`: {e}\n", file.display()));
            EXIT_IO
        })
    }

    fn load(&mut self, file: &Path) -> Result<VideoSpec, i32> {
        let src = self.read(file)?;
        parse(&src).map_err(|diags| {
            self.diagnostics(file, &diags);
            EXIT_DIAGNOSTICS
        })
    }

    /// Parses and validates; warnings are printed, errors abort.
    fn load_valid(&mut self, file: &Path) -> Result<VideoSpec, i32> {
        let spec = self.load(file)?;
        let diags = validate(&spec);
        self.diagnostics(file, &diags);
        if has_errors(&diags) {
            return Err(EXIT_DIAGNOSTICS);
        }
        Ok(spec)
    }
}

fn fmt(io: &mut Io, file: &Path, write: bool) -> Outcome {
    let spec = io.load(file)?;
    let text = print(&spec);
    if write {
        fs::write(file, text).map_err(|e| {
            io.err(&format!("error: cannot write `{}`: {e}\n", file.display()));
            EXIT_IO
        })
    } else {
        io.out(&text);
        Ok(())
    }
}

fn check(io: &mut Io, file: &Path) -> Outcome {
    let spec = io.load(file)?;
    let mut diags = validate(&spec);
    if !has_errors(&diags) {
        diags.extend(lint(&spec));
    }
    io.diagnostics(file, &diags);
    if has_errors(&diags) {
        Err(EXIT_DIAGNOSTICS)
    } else {
        Ok(())
    }
}

fn render(io: &mut Io, file: &Path, out: &Path) -> Outcome {
    let spec = io.load_valid(file)?;
    match render_video(&spec, out) {
        Ok(m) => {
            io.out(&format!("wrote {} frames for {} clips to {}\n", m.frames, m.clips.len(), out.display()));
            Ok(())
        }
        Err(crate::render::RenderError::Io { path, source }) => {
            io.err(&format!("error: cannot write `{}`: {source}\n", path.display()));
            Err(EXIT_IO)
        }
        Err(e) => {
            io.err(&format!("error: {e}\n"));
            Err(EXIT_DIAGNOSTICS)
        }
    }
}

fn recommend_cmd(io: &mut Io, from: Option<FormArg>, to: Option<FormArg>, relation: Option<Relation>, vis: Vec<VisType>, json: bool) -> Outcome {
    let forms = match (from, to) {
        (Some(a), Some(b)) => match FormPair::from_forms(a.form(), b.form()) {
            Some(f) => Some(f),
            None => {
                io.err("error: no rules cover two non-visualization scenes; drop the form flags\n");
                return Err(EXIT_USAGE);
            }
        },
        (None, None) => None,
        _ => {
            io.err("error: --from-form and --to-form must be given together\n");
            return Err(EXIT_USAGE);
        }
    };
    let ctx = Context { forms, relation, vis };
    if ctx.is_empty() {
        io.err("error: give at least one of --from-form/--to-form, --relation or --vis\n");
        return Err(EXIT_USAGE);
    }
    let recs = recommend(&ctx);
    if json {
        io.json(&recs);
    } else {
        io.out(&render_table(&recs));
    }
    Ok(())
}

#[derive(Serialize)]
struct ClassifyReport {
    clip: usize,
    from: String,
    to: String,
    declared: Vec<String>,
    labels: Vec<String>,
}

fn classify_cmd(io: &mut Io, file: &Path, index: usize, json: bool) -> Outcome {
    let spec = io.load_valid(file)?;
    if index >= spec.clips.len() {
        io.err(&format!("error: clip {index} does not exist; the script has {} clips (numbered from 0)\n", spec.clips.len()));
        return Err(EXIT_USAGE);
    }
    let tl = scene_table(&spec)
        .map_err(|e| e.into())
        .and_then(|scenes| plan_clip(&spec, &scenes, index))
        .map_err(|e| {
            io.err(&format!("error: {e}\n"));
            EXIT_DIAGNOSTICS
        })?;
    let clip = &spec.clips[index];
    let report = ClassifyReport {
        clip: index,
        from: clip.from.clone(),
        to: clip.to.clone(),
        declared: clip.types().iter().map(|t| t.name()).collect(),
        labels: label_names(&classify_timeline(&tl)),
    };
    if json {
        io.json(&report);
    } else {
        io.out(&format!("{}\n", report.labels.join("\n")));
    }
    Ok(())
}

fn stats_cmd(io: &mut Io, labels: Option<PathBuf>, fixture: bool, json: bool) -> Outcome {
    let result = match (labels, fixture) {
        (None, true) => reference_stats(),
        (Some(path), false) => {
            let text = io.read(&path)?;
            match stats::parse_labels(&text) {
                Ok(clips) => stats::corpus_stats(&clips),
                Err(e) => {
                    io.err(&format!("{}:{e}\n", path.display()));
                    return Err(EXIT_DIAGNOSTICS);
                }
            }
        }
        _ => {
            io.err("error: give a labels file or --paper-fixture\n");
            return Err(EXIT_USAGE);
        }
    };
    if json {
        io.json(&result);
    } else {
        io.out(&result.render_table());
    }
    Ok(())
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                EXIT_USAGE
            } else {
                let _ = out.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    let mut io = Io { out, err };
    let outcome = match cli.command {
        Command::Fmt { file, write } => fmt(&mut io, &file, write),
        Command::Check { file } => check(&mut io, &file),
        Command::Render { file, out } => render(&mut io, &file, &out),
        Command::Recommend { from_form, to_form, relation, vis, json } => {
            recommend_cmd(&mut io, from_form, to_form, relation, vis, json)
        }
        Command::Classify { file, clip, json } => classify_cmd(&mut io, &file, clip, json),
        Command::Stats { labels, paper_fixture, json } => stats_cmd(&mut io, labels, paper_fixture, json),
    };
    outcome.err().unwrap_or(EXIT_OK)
}
