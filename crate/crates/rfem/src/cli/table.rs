use crate::numerics::C64;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// How complex cells are split into two columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ComplexStyle {
    #[default]
    ReIm,
    MagPhase,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnKind {
    Real,
    Complex,
    Text,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Real(f64),
    Complex(C64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Real(x)
    }
}

impl From<C64> for Cell {
    fn from(z: C64) -> Self {
        Cell::Complex(z)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<(String, ColumnKind)>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[(&str, ColumnKind)]) -> Self {
        Self { columns: columns.iter().map(|(n, k)| (n.to_string(), *k)).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Shortest round-trip text; exponent form outside `[1e-5, 1e16)`.
fn num(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || !a.is_finite() || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn split(z: C64, style: ComplexStyle) -> (f64, f64) {
    match style {
        ComplexStyle::ReIm => (z.re, z.im),
        ComplexStyle::MagPhase => (z.norm(), z.arg().to_degrees()),
    }
}

fn header(table: &Table, style: ComplexStyle) -> Vec<String> {
    let (a, b) = match style {
        ComplexStyle::ReIm => ("re", "im"),
        ComplexStyle::MagPhase => ("mag", "deg"),
    };
    table
        .columns
        .iter()
        .flat_map(|(n, k)| match k {
            ColumnKind::Complex => vec![format!("{n}_{a}"), format!("{n}_{b}")],
            _ => vec![n.clone()],
        })
        .collect()
}

fn flat(cell: &Cell, style: ComplexStyle) -> Vec<Value> {
    let real = |x: f64| if x.is_finite() { json!(x) } else { Value::Null };
    match cell {
        Cell::Real(x) => vec![real(*x)],
        Cell::Complex(z) => {
            let (p, q) = split(*z, style);
            vec![real(p), real(q)]
        }
        Cell::Text(s) => vec![json!(s)],
    }
}

fn text(cell: &Cell, style: ComplexStyle) -> Vec<String> {
    match cell {
        Cell::Real(x) => vec![num(*x)],
        Cell::Complex(z) => {
            let (p, q) = split(*z, style);
            vec![num(p), num(q)]
        }
        Cell::Text(s) => vec![s.clone()],
    }
}

/// Renders a table as CSV (header row, complex cells as two columns) or as
/// a JSON array of flat objects with the same column names.
pub fn emit_table(table: &Table, format: Format, style: ComplexStyle) -> String {
    let head = header(table, style);
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
            w.write_record(&head).expect("in-memory write");
            for row in &table.rows {
                let rec: Vec<String> = row.iter().flat_map(|c| text(c, style)).collect();
                w.write_record(&rec).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
        }
        Format::Json => {
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|row| {
                    let vals: Vec<Value> = row.iter().flat_map(|c| flat(c, style)).collect();
                    Value::Object(head.iter().cloned().zip(vals).collect::<Map<_, _>>())
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&Value::Array(rows)).expect("json");
            s.push('\n');
            s
        }
    }
}

/// Summary entries rendered as `key = value` lines.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Summary {
    pub entries: Vec<(String, Cell)>,
}

impl Summary {
    pub fn add(&mut self, key: &str, value: impl Into<Cell>) {
        self.entries.push((key.to_string(), value.into()));
    }

    pub fn lines(&self, prefix: &str) -> String {
        self.entries
            .iter()
            .map(|(k, v)| {
                let shown = match v {
                    Cell::Real(x) => num(*x),
                    Cell::Complex(z) => format!("{}{}{}j", num(z.re), if z.im < 0.0 { "-" } else { "+" }, num(z.im.abs())),
                    Cell::Text(s) => s.clone(),
                };
                format!("{prefix}{k} = {shown}\n")
            })
            .collect()
    }

    pub fn to_json(&self, style: ComplexStyle) -> Value {
        let mut m = Map::new();
        for (k, v) in &self.entries {
            match v {
                Cell::Complex(_) => {
                    let (a, b) = match style {
                        ComplexStyle::ReIm => ("re", "im"),
                        ComplexStyle::MagPhase => ("mag", "deg"),
                    };
                    let vals = flat(v, style);
                    m.insert(format!("{k}_{a}"), vals[0].clone());
                    m.insert(format!("{k}_{b}"), vals[1].clone());
                }
                _ => {
                    m.insert(k.clone(), flat(v, style).remove(0));
                }
            }
        }
        Value::Object(m)
    }
}
