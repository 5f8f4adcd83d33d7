use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use thetagraph_core::dot::{split_components, to_dot};
use thetagraph_core::dynamo::build_graph;
use thetagraph_core::census;
use thetagraph_core::verify::{verify_field, VerifyReport};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::report::{self, Report};

pub fn predict(cfg: &RunConfig) -> Result<Report, CliError> {
    cfg.require_p5("predict")?;
    let field = cfg.field()?;
    let pred = cfg.predictor().predict_summary(cfg.n)?;
    Ok(report::from_prediction(&field, &pred, cfg.side))
}

pub fn enumerate(cfg: &RunConfig) -> Result<Report, CliError> {
    let field = cfg.field()?;
    let summary = census(&field)?;
    Ok(report::from_census(&field, &summary))
}

/// Runs the comparison; a prediction that breaks its own accounting counts
/// as a failed verification, not an internal error.
pub fn verify(cfg: &RunConfig) -> Result<VerifyReport, CliError> {
    cfg.require_p5("verify")?;
    Ok(verify_field(&cfg.field()?, &cfg.predictor())?)
}

/// DOT text; one document per component with `split`.
pub fn export_dot(cfg: &RunConfig) -> Result<Vec<String>, CliError> {
    let field = cfg.field()?;
    let table = build_graph(&field)?;
    Ok(if cfg.split {
        split_components(&field, &table, cfg.labels)
    } else {
        vec![to_dot(&field, &table, cfg.labels)]
    })
}

/// `dir/graph.dot` → `dir/graph_1.dot`, `dir/graph_2.dot`, …
pub fn split_paths(base: &Path, count: usize) -> Vec<PathBuf> {
    let stem = base.file_stem().map_or("graph".into(), |s| s.to_string_lossy().into_owned());
    let ext = base.extension().map(|e| e.to_string_lossy().into_owned());
    (1..=count)
        .map(|i| {
            let name = match &ext {
                Some(e) => format!("{stem}_{i}.{e}"),
                None => format!("{stem}_{i}"),
            };
            base.with_file_name(name)
        })
        .collect()
}

pub fn render_report(cfg: &RunConfig, r: &Report) -> Result<String, CliError> {
    if cfg.json {
        let mut s = serde_json::to_string_pretty(r).map_err(|e| CliError::Internal(e.to_string()))?;
        s.push('\n');
        Ok(s)
    } else {
        Ok(report::render_text(r))
    }
}

pub fn render_verify(cfg: &RunConfig, r: &VerifyReport) -> Result<String, CliError> {
    if cfg.json {
        let doc = report::verify_document(r);
        let mut s = serde_json::to_string_pretty(&doc).map_err(|e| CliError::Internal(e.to_string()))?;
        s.push('\n');
        Ok(s)
    } else {
        Ok(format!("{r}\n"))
    }
}

/// Writes to `-o` if given, else stdout.
pub fn emit(cfg: &RunConfig, text: &str) -> Result<(), CliError> {
    match &cfg.output {
        Some(path) => write_file(path, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io {
                    context: "writing to stdout".into(),
                    source,
                })
        }
    }
}

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        context: format!("writing {}", path.display()),
        source,
    })
}

/// Writes DOT documents: split files next to `-o`, or everything to one sink.
pub fn emit_dot(cfg: &RunConfig, docs: &[String]) -> Result<Vec<PathBuf>, CliError> {
    match (&cfg.output, cfg.split) {
        (Some(base), true) => {
            let paths = split_paths(base, docs.len());
            for (p, d) in paths.iter().zip(docs) {
                write_file(p, d)?;
            }
            Ok(paths)
        }
        _ => {
            emit(cfg, &docs.concat())?;
            Ok(cfg.output.iter().cloned().collect())
        }
    }
}
