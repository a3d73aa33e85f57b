//! Report assembly and the three renderers. Output on stdout is
//! byte-identical for identical inputs and flags; wall-clock timing goes
//! to stderr only.

use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Default)]
pub struct Section {
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub notes: Vec<String>,
}

#[derive(Debug, Default)]
pub struct Report {
    pub command: String,
    pub meta: Vec<(String, String)>,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.into(),
            ..Default::default()
        }
    }

    pub fn meta(&mut self, key: &str, value: impl std::fmt::Display) {
        self.meta.push((key.into(), value.to_string()));
    }

    pub fn section(&mut self, section: Section) {
        self.sections.push(section);
    }

    pub fn render(&self, fmt: Format) -> String {
        match fmt {
            Format::Human => self.render_human(),
            Format::Json => self.render_json(),
            Format::Csv => self.render_csv(),
        }
    }

    fn render_human(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        for (k, v) in &self.meta {
            out.push_str(&format!("{k}: {v}\n"));
        }
        for s in &self.sections {
            out.push_str(&format!("\n== {}\n", s.title));
            if !s.headers.is_empty() {
                let widths: Vec<usize> = s
                    .headers
                    .iter()
                    .enumerate()
                    .map(|(i, h)| {
                        s.rows
                            .iter()
                            .map(|r| r.get(i).map_or(0, String::len))
                            .chain(std::iter::once(h.len()))
                            .max()
                            .unwrap_or(0)
                    })
                    .collect();
                let fmt_row = |cells: &[String]| {
                    let mut line = String::new();
                    for (i, c) in cells.iter().enumerate() {
                        if i > 0 {
                            line.push_str("  ");
                        }
                        line.push_str(&format!("{c:<width$}", width = widths[i]));
                    }
                    line.trim_end().to_string()
                };
                out.push_str(&fmt_row(&s.headers));
                out.push('\n');
                for r in &s.rows {
                    out.push_str(&fmt_row(r));
                    out.push('\n');
                }
            }
            for n in &s.notes {
                out.push_str(&format!("note: {n}\n"));
            }
        }
        out
    }

    fn render_json(&self) -> String {
        let meta: Value = self
            .meta
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect::<serde_json::Map<String, Value>>()
            .into();
        let sections: Vec<Value> = self
            .sections
            .iter()
            .map(|s| {
                json!({
                    "title": s.title,
                    "headers": s.headers,
                    "rows": s.rows,
                    "notes": s.notes,
                })
            })
            .collect();
        let root = json!({
            "command": self.command,
            "meta": meta,
            "sections": sections,
        });
        let mut out = serde_json::to_string_pretty(&root).expect("report serializes");
        out.push('\n');
        out
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        let esc = |s: &str| {
            if s.contains(',') || s.contains('"') || s.contains('\n') {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.to_string()
            }
        };
        out.push_str(&format!("meta,command,{}\n", esc(&self.command)));
        for (k, v) in &self.meta {
            out.push_str(&format!("meta,{},{}\n", esc(k), esc(v)));
        }
        for s in &self.sections {
            let title = esc(&s.title);
            if !s.headers.is_empty() {
                out.push_str(&format!(
                    "{title},{}\n",
                    s.headers.iter().map(|h| esc(h)).collect::<Vec<_>>().join(",")
                ));
            }
            for r in &s.rows {
                out.push_str(&format!(
                    "{title},{}\n",
                    r.iter().map(|c| esc(c)).collect::<Vec<_>>().join(",")
                ));
            }
        }
        out
    }
}
