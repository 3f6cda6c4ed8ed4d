//! Structured command results, rendered as text or JSON.

use plconj::{PlMap, Point, Rat};
use serde_json::{Map, Value};

use crate::format::format_rational;

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Text(String),
    Rational(Rat),
    Integer(i64),
    Points(Vec<Point>),
    List(Vec<Field>),
    Record(Vec<(String, Field)>),
}

impl From<&str> for Field {
    fn from(s: &str) -> Self {
        Field::Text(s.to_string())
    }
}

impl From<String> for Field {
    fn from(s: String) -> Self {
        Field::Text(s)
    }
}

impl From<Rat> for Field {
    fn from(r: Rat) -> Self {
        Field::Rational(r)
    }
}

impl From<&Rat> for Field {
    fn from(r: &Rat) -> Self {
        Field::Rational(r.clone())
    }
}

impl From<&PlMap> for Field {
    fn from(f: &PlMap) -> Self {
        Field::Points(f.breakpoints().to_vec())
    }
}

/// An ordered key-value result. The first key is always `status`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ResultDocument {
    fields: Vec<(String, Field)>,
}

impl ResultDocument {
    pub fn new(status: &str) -> Self {
        ResultDocument {
            fields: vec![("status".into(), Field::Text(status.into()))],
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<Field>) -> Self {
        self.fields.push((key.into(), value.into()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Field> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn status(&self) -> &str {
        match self.get("status") {
            Some(Field::Text(s)) => s,
            _ => "",
        }
    }

    pub fn to_json(&self) -> Value {
        record_json(&self.fields)
    }

    pub fn render_json(&self) -> String {
        let mut s =
            serde_json::to_string_pretty(&self.to_json()).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.fields {
            text_field(&mut out, k, v, 0);
        }
        out
    }
}

fn point_json(p: &Point) -> Value {
    Value::Array(vec![
        Value::String(format_rational(&p.0)),
        Value::String(format_rational(&p.1)),
    ])
}

fn field_json(f: &Field) -> Value {
    match f {
        Field::Text(s) => Value::String(s.clone()),
        Field::Rational(r) => Value::String(format_rational(r)),
        Field::Integer(n) => Value::from(*n),
        Field::Points(ps) => Value::Array(ps.iter().map(point_json).collect()),
        Field::List(items) => Value::Array(items.iter().map(field_json).collect()),
        Field::Record(fields) => record_json(fields),
    }
}

fn record_json(fields: &[(String, Field)]) -> Value {
    let mut m = Map::new();
    for (k, v) in fields {
        m.insert(k.clone(), field_json(v));
    }
    Value::Object(m)
}

fn inline(f: &Field) -> Option<String> {
    match f {
        Field::Text(s) => Some(s.clone()),
        Field::Rational(r) => Some(format_rational(r)),
        Field::Integer(n) => Some(n.to_string()),
        _ => None,
    }
}

fn text_field(out: &mut String, key: &str, value: &Field, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(s) = inline(value) {
        out.push_str(&format!("{pad}{key}: {s}\n"));
        return;
    }
    out.push_str(&format!("{pad}{key}:\n"));
    match value {
        Field::Points(ps) => {
            for (x, y) in ps {
                out.push_str(&format!(
                    "{pad}  {} {}\n",
                    format_rational(x),
                    format_rational(y)
                ));
            }
        }
        Field::List(items) => {
            for item in items {
                match inline(item) {
                    Some(s) => out.push_str(&format!("{pad}  - {s}\n")),
                    None => text_field(out, "-", item, depth + 1),
                }
            }
        }
        Field::Record(fields) => {
            for (k, v) in fields {
                text_field(out, k, v, depth + 1);
            }
        }
        _ => unreachable!(),
    }
}
