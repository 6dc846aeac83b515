//! Rendering and atomic output handling.

use std::io::Write;
use std::path::Path;

use clap::ValueEnum;

use patfeas::colouring::ColouredPermutation;
use patfeas::error::Error;
use patfeas::overlap::Multigraph;
use patfeas::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
    Csv,
}

/// Prints to stdout, or writes atomically (temp file + rename) when a path
/// is given.
pub fn emit(content: &str, out: Option<&Path>) -> Result<(), Error> {
    match out {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => {
            let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
            let mut tmp = tempfile_in(dir)?;
            tmp.0
                .write_all(content.as_bytes())
                .map_err(|e| Error::Parse(format!("write failed: {e}")))?;
            std::fs::rename(&tmp.1, path)
                .map_err(|e| Error::Parse(format!("rename failed: {e}")))?;
            Ok(())
        }
    }
}

fn tempfile_in(dir: Option<&Path>) -> Result<(std::fs::File, std::path::PathBuf), Error> {
    let dir = dir.unwrap_or(Path::new("."));
    for i in 0..1000 {
        let candidate = dir.join(format!(".patfeas-tmp-{}-{i}", std::process::id()));
        match std::fs::OpenOptions::new()
            .write(true)
            .create_new(true)
            .open(&candidate)
        {
            Ok(f) => return Ok((f, candidate)),
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => continue,
            Err(e) => return Err(Error::Parse(format!("cannot create temp file: {e}"))),
        }
    }
    Err(Error::Parse("cannot create temp file".into()))
}

pub fn plain_graph_json(g: &Multigraph<Permutation, Permutation>) -> serde_json::Value {
    serde_json::json!({
        "vertices": g.vertices().iter().enumerate()
            .map(|(i, v)| serde_json::json!({"id": i, "label": v.values()}))
            .collect::<Vec<_>>(),
        "edges": g.edges().iter()
            .map(|e| serde_json::json!({
                "label": e.label.values(),
                "ordinal": e.ordinal,
                "start": e.start,
                "arrival": e.arrival,
            }))
            .collect::<Vec<_>>(),
    })
}

pub fn coloured_graph_json(
    g: &Multigraph<ColouredPermutation, ColouredPermutation>,
) -> serde_json::Value {
    serde_json::json!({
        "vertices": g.vertices().iter().enumerate()
            .map(|(i, v)| serde_json::json!({"id": i, "label": v.to_json()}))
            .collect::<Vec<_>>(),
        "edges": g.edges().iter()
            .map(|e| serde_json::json!({
                "label": e.label.to_json(),
                "ordinal": e.ordinal,
                "start": e.start,
                "arrival": e.arrival,
            }))
            .collect::<Vec<_>>(),
    })
}

pub fn polytope_summary(v: &serde_json::Value) -> String {
    let vertices = v["vertex_form"]["vertices"]
        .as_array()
        .map(|a| a.len())
        .unwrap_or(0);
    let coords = v["vertex_form"]["coordinates"]
        .as_array()
        .map(|a| a.len())
        .unwrap_or(0);
    format!(
        "{} for {} (k={}): {} vertices over {} coordinates\n",
        v["region"].as_str().unwrap_or("polytope"),
        v["class"].as_str().unwrap_or("?"),
        v["k"].as_str().unwrap_or("?"),
        vertices,
        coords
    )
}
