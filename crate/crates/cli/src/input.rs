use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use arimat::arimat::labelled_to_list;
use arimat::format;
use arimat::{Caps, GroupList, Matrix, MultiplicityTable};
use clap::Args;
use serde_json::Value;

#[derive(Args)]
pub struct Io {
    /// Input document; standard input if omitted.
    #[arg(short, long)]
    pub input: Option<PathBuf>,
    /// Output file; standard output if omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

pub fn read_document(path: Option<&Path>) -> Result<Value> {
    let (text, name) = match path {
        Some(p) => (
            std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
            p.display().to_string(),
        ),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
            (s, "<stdin>".to_string())
        }
    };
    format::parse_document(&text).with_context(|| format!("parsing {name}"))
}

pub fn write_output(path: Option<&Path>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

impl Io {
    pub fn document(&self) -> Result<Value> {
        read_document(self.input.as_deref())
    }

    pub fn matrix(&self) -> Result<Matrix> {
        Ok(format::matrix_from_value(&self.document()?)?)
    }

    /// A group list, or the list of a labelled graph document.
    pub fn list(&self) -> Result<GroupList> {
        let doc = self.document()?;
        list_from(&doc)
    }

    /// A multiplicity table, or the table of a list or labelled graph.
    pub fn table(&self, caps: &Caps) -> Result<MultiplicityTable> {
        let doc = self.document()?;
        if doc.get("table").is_some() {
            return Ok(format::table_from_value(&doc)?);
        }
        Ok(list_from(&doc)?.full_table(caps)?)
    }
}

fn list_from(doc: &Value) -> Result<GroupList> {
    if doc.get("edges").is_some() {
        Ok(labelled_to_list(&format::graph_from_value(doc)?)?)
    } else {
        Ok(format::group_list_from_value(doc)?)
    }
}
