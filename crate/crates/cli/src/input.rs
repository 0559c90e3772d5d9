use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use misx::{parse_graph6, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Auto,
    Graph6,
    Edges,
}

/// A single graph read from a path or given inline.
pub struct Loaded {
    pub graph: Graph,
    pub format: Format,
    pub source: String,
}

/// Reads `arg` as a file if one exists at that path, otherwise treats it as
/// the graph text itself.
pub fn load(arg: &str, format: Format) -> Result<Loaded> {
    let path = Path::new(arg);
    let (text, source) = if path.is_file() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        (text, arg.to_string())
    } else {
        (arg.to_string(), "inline".to_string())
    };
    let format = match format {
        Format::Auto => detect(&text),
        f => f,
    };
    let graph = match format {
        Format::Edges => Graph::parse_edge_list(&text)?,
        _ => {
            let records: Vec<&str> = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .collect();
            match records.as_slice() {
                [one] => parse_graph6(one.as_bytes())?,
                [] => bail!("no graph6 record in {source}"),
                _ => bail!(
                    "{source} holds {} graph6 records; use `sweep --graph6-file` for catalogs",
                    records.len()
                ),
            }
        }
    };
    Ok(Loaded {
        graph,
        format,
        source,
    })
}

/// Edge lists use only digits, whitespace and `#` comments; graph6 never
/// contains a digit.
fn detect(text: &str) -> Format {
    let body = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect::<String>();
    if body
        .chars()
        .all(|c| c.is_ascii_digit() || c.is_whitespace())
        && !body.trim().is_empty()
    {
        Format::Edges
    } else {
        Format::Graph6
    }
}
