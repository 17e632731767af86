//! Output formats shared by every subcommand.

use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
    Latex,
}

/// A rectangular table of already-rendered cells.
///
/// `text` and `latex` cells may differ (the LaTeX column uses `q^{1/2}` syntax),
/// so each cell carries both.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug, Clone)]
pub struct Cell {
    pub text: String,
    pub latex: String,
}

impl Cell {
    pub fn plain(s: impl ToString) -> Self {
        let s = s.to_string();
        Cell { latex: latex_escape(&s), text: s }
    }

    pub fn math(text: impl Into<String>, latex: impl Into<String>) -> Self {
        Cell { text: text.into(), latex: format!("${}$", latex.into()) }
    }
}

fn latex_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '_' | '&' | '%' | '#' | '$' | '{' | '}' => {
                out.push('\\');
                out.push(ch);
            }
            _ => out.push(ch),
        }
    }
    out
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| csv_escape(&c.text)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_latex(&self) -> String {
        let mut out = format!("\\begin{{tabular}}{{{}}}\n", "l".repeat(self.header.len()));
        let header: Vec<String> = self.header.iter().map(|h| latex_escape(h)).collect();
        out.push_str(&header.join(" & "));
        out.push_str(" \\\\\n\\hline\n");
        for row in &self.rows {
            let cells: Vec<&str> = row.iter().map(|c| c.latex.as_str()).collect();
            out.push_str(&cells.join(" & "));
            out.push_str(" \\\\\n");
        }
        out.push_str("\\end{tabular}\n");
        out
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
