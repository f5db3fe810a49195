//! Emission of result blocks in the three output formats.

use anyhow::Result;
use ecopol_core::report::{render_table, write_delimited, Precision, Record};
use serde::Serialize;

use crate::config::Format;

/// Records rendered together in one layout.
#[derive(Debug, Clone)]
pub struct Block {
    pub layout: String,
    pub records: Vec<Record>,
}

#[derive(Serialize)]
struct Line<'a> {
    layout: &'a str,
    #[serde(flatten)]
    record: &'a Record,
}

/// Delimited output marks each block with a `# layout: <name>` line ahead
/// of its header so a reader can regroup the records.
pub const BLOCK_MARKER: &str = "# layout: ";

pub fn emit(blocks: &[Block], format: Format, precision: Precision) -> Result<String> {
    let mut out = String::new();
    for (k, b) in blocks.iter().enumerate() {
        match format {
            Format::PaperTable => {
                if k > 0 {
                    out.push('\n');
                }
                out.push_str(&render_table(&b.layout, &b.records, precision)?);
            }
            Format::Delimited => {
                out.push_str(BLOCK_MARKER);
                out.push_str(&b.layout);
                out.push('\n');
                out.push_str(&write_delimited(&b.records)?);
            }
            Format::Structured => {
                for r in &b.records {
                    out.push_str(&serde_json::to_string(&Line { layout: &b.layout, record: r })?);
                    out.push('\n');
                }
            }
        }
    }
    Ok(out)
}

pub fn write(text: &str, out: Option<&std::path::Path>) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| anyhow::anyhow!("cannot write {}: {e}", p.display())),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}
