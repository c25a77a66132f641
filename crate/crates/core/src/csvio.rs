//! CSV storage for ongoing relations.
//!
//! Header cells carry `name:type` with types in `{int, text, tick, opoint,
//! ointerval}`. The reference time travels in a trailing `RT` column,
//! serialized as an interval set `{[a,b),[c,d)}` with `-inf`/`+inf` bounds.
//! `RT` is optional on input (missing means the trivial reference time) and
//! always emitted on output. Rows whose `RT` parses to the empty set are
//! deleted, never stored.
//!
//! Time values accept integers, ISO dates, and ISO timestamps; output
//! renders ticks as integers unless a [`TickStyle`] is given.

use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::boolean::IntervalSet;
use crate::calendar;
use crate::parse;
use crate::relation::{
    AttrName, AttrType, AttributeValue, Catalog, FixedRelation, FixedValue, Relation, Schema,
    Tuple,
};
use crate::tick::Tick;

#[derive(Debug, Error)]
pub enum CsvError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Csv { path: String, source: csv::Error },
    #[error("{path}:{row}: {message}")]
    Malformed {
        path: String,
        row: usize,
        message: String,
    },
}

fn malformed(path: &str, row: usize, message: impl Into<String>) -> CsvError {
    CsvError::Malformed {
        path: path.to_string(),
        row,
        message: message.into(),
    }
}

/// How ticks are rendered on output.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum TickStyle {
    /// Raw integer ticks.
    #[default]
    Int,
    /// Proleptic-Gregorian day numbers printed as `YYYY-MM-DD`.
    Date,
    /// Microsecond ticks printed as ISO timestamps.
    Timestamp,
}

impl TickStyle {
    fn render(self, t: Tick) -> String {
        if !t.is_finite() {
            return t.to_string();
        }
        match self {
            TickStyle::Int => t.to_string(),
            TickStyle::Date => calendar::format_date(t).unwrap_or_else(|_| t.to_string()),
            TickStyle::Timestamp => {
                calendar::format_timestamp(t).unwrap_or_else(|_| t.to_string())
            }
        }
    }

    fn render_point(self, p: crate::point::OngoingTimePoint) -> String {
        if self == TickStyle::Int {
            return p.to_string();
        }
        match (p.lower(), p.upper()) {
            (Tick::NEG_INF, Tick::POS_INF) => "now".to_string(),
            (a, b) if a == b => self.render(a),
            (a, Tick::POS_INF) => format!("from({})", self.render(a)),
            (Tick::NEG_INF, b) => format!("until({})", self.render(b)),
            (a, b) => format!("point({},{})", self.render(a), self.render(b)),
        }
    }

    fn render_value(self, value: &AttributeValue) -> String {
        match value {
            AttributeValue::Int(v) => v.to_string(),
            AttributeValue::Text(v) => v.clone(),
            AttributeValue::Tick(t) => self.render(*t),
            AttributeValue::Point(p) => self.render_point(*p),
            AttributeValue::Interval(i) => format!(
                "[{},{})",
                self.render_point(i.start()),
                self.render_point(i.end())
            ),
        }
    }

    fn render_fixed(self, value: &FixedValue) -> String {
        match value {
            FixedValue::Int(v) => v.to_string(),
            FixedValue::Text(v) => v.clone(),
            FixedValue::Tick(t) => self.render(*t),
            FixedValue::Interval(i) => {
                format!("[{},{})", self.render(i.start), self.render(i.end))
            }
        }
    }

    fn render_rt(self, rt: &IntervalSet) -> String {
        let mut out = String::from("{");
        for (i, iv) in rt.intervals().iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push('[');
            out.push_str(&self.render(iv.start));
            out.push(',');
            out.push_str(&self.render(iv.end));
            out.push(')');
        }
        out.push('}');
        out
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_header(path: &str, headers: &csv::StringRecord) -> Result<(Schema, bool), CsvError> {
    let mut attrs = Vec::new();
    let mut has_rt = false;
    for (i, cell) in headers.iter().enumerate() {
        let cell = cell.trim();
        if cell == "RT" {
            if i + 1 != headers.len() {
                return Err(malformed(path, 1, "RT must be the last column"));
            }
            has_rt = true;
            continue;
        }
        let Some((name, tag)) = cell.rsplit_once(':') else {
            return Err(malformed(
                path,
                1,
                format!("header cell '{cell}' is not name:type"),
            ));
        };
        let Some(ty) = AttrType::from_tag(tag.trim()) else {
            return Err(malformed(path, 1, format!("unknown type tag '{tag}'")));
        };
        let name = name.trim();
        // Split a qualifier only when both halves are plain identifiers;
        // synthesized names like intersect(B.VT,L.VT) stay bare.
        let attr = match name.split_once('.') {
            Some((q, n)) if is_ident(q) && is_ident(n) => AttrName::qualified(q, n),
            _ => AttrName::bare(name),
        };
        attrs.push((attr, ty));
    }
    let schema =
        Schema::new(attrs).map_err(|e| malformed(path, 1, e.to_string()))?;
    Ok((schema, has_rt))
}

fn parse_value(
    path: &str,
    row: usize,
    ty: AttrType,
    cell: &str,
) -> Result<AttributeValue, CsvError> {
    let cell = cell.trim();
    let fail = |e: &dyn std::fmt::Display| malformed(path, row, format!("'{cell}': {e}"));
    Ok(match ty {
        AttrType::Int => AttributeValue::Int(
            cell.parse::<i64>()
                .map_err(|e| malformed(path, row, format!("'{cell}': {e}")))?,
        ),
        AttrType::Text => AttributeValue::Text(cell.to_string()),
        AttrType::Tick => AttributeValue::Tick(parse::parse_tick(cell).map_err(|e| fail(&e))?),
        AttrType::Point => AttributeValue::Point(parse::parse_point(cell).map_err(|e| fail(&e))?),
        AttrType::Interval => {
            AttributeValue::Interval(parse::parse_interval(cell).map_err(|e| fail(&e))?)
        }
    })
}

/// Loads one relation from a CSV file.
pub fn load_relation(path: &Path) -> Result<Relation, CsvError> {
    let path_str = path.display().to_string();
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|source| CsvError::Csv {
            path: path_str.clone(),
            source,
        })?;
    let headers = reader.headers().map_err(|source| CsvError::Csv {
        path: path_str.clone(),
        source,
    })?;
    let (schema, has_rt) = parse_header(&path_str, headers)?;
    let mut relation = Relation::new(schema);
    for (i, record) in reader.records().enumerate() {
        let row = i + 2;
        let record = record.map_err(|source| CsvError::Csv {
            path: path_str.clone(),
            source,
        })?;
        let expected = relation.schema().len() + usize::from(has_rt);
        if record.len() != expected {
            return Err(malformed(
                &path_str,
                row,
                format!("expected {expected} cells, found {}", record.len()),
            ));
        }
        let mut values = Vec::with_capacity(relation.schema().len());
        for (idx, (_, ty)) in relation.schema().attrs().iter().enumerate() {
            values.push(parse_value(&path_str, row, *ty, &record[idx])?);
        }
        let rt = if has_rt {
            parse::parse_interval_set(record[record.len() - 1].trim())
                .map_err(|e| malformed(&path_str, row, e.to_string()))?
        } else {
            IntervalSet::full()
        };
        if rt.is_empty() {
            // Tuples with an empty reference time are deleted.
            continue;
        }
        relation
            .push(Tuple::new(values, rt))
            .map_err(|e| malformed(&path_str, row, e.to_string()))?;
    }
    Ok(relation)
}

/// Loads every `*.csv` file of a directory into a catalog; the relation
/// name is the file stem.
pub fn load_catalog(dir: &Path) -> Result<Catalog, CsvError> {
    let mut catalog = Catalog::new();
    let entries = fs::read_dir(dir).map_err(|source| CsvError::Io {
        path: dir.display().to_string(),
        source,
    })?;
    let mut paths: Vec<_> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().and_then(|e| e.to_str()) == Some("csv"))
        .collect();
    paths.sort();
    for path in paths {
        let Some(stem) = path.file_stem().and_then(|s| s.to_str()) else {
            continue;
        };
        catalog.insert(stem.to_string(), load_relation(&path)?);
    }
    Ok(catalog)
}

/// Writes an ongoing relation as CSV, the reference time last.
pub fn write_relation<W: std::io::Write>(
    relation: &Relation,
    style: TickStyle,
    writer: W,
) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(writer);
    let mut header: Vec<String> = relation
        .schema()
        .attrs()
        .iter()
        .map(|(name, ty)| format!("{name}:{ty}"))
        .collect();
    header.push("RT".to_string());
    w.write_record(&header)?;
    for tuple in relation.tuples() {
        let mut record: Vec<String> = tuple
            .values
            .iter()
            .map(|v| style.render_value(v))
            .collect();
        record.push(style.render_rt(&tuple.rt));
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes a bound relation as CSV. There is no reference time: the result
/// of binding holds at the chosen `rt` only.
pub fn write_fixed_relation<W: std::io::Write>(
    relation: &FixedRelation,
    style: TickStyle,
    writer: W,
) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(writer);
    let header: Vec<String> = relation
        .schema()
        .attrs()
        .iter()
        .map(|(name, ty)| format!("{name}:{ty}"))
        .collect();
    w.write_record(&header)?;
    for tuple in relation.tuples() {
        let record: Vec<String> = tuple
            .values()
            .iter()
            .map(|v| style.render_fixed(v))
            .collect();
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

/// Renders a relation to a CSV string.
pub fn relation_to_string(relation: &Relation, style: TickStyle) -> String {
    let mut buf = Vec::new();
    write_relation(relation, style, &mut buf).expect("in-memory write");
    String::from_utf8(buf).expect("csv output is utf-8")
}

/// Renders a bound relation to a CSV string.
pub fn fixed_relation_to_string(relation: &FixedRelation, style: TickStyle) -> String {
    let mut buf = Vec::new();
    write_fixed_relation(relation, style, &mut buf).expect("in-memory write");
    String::from_utf8(buf).expect("csv output is utf-8")
}
