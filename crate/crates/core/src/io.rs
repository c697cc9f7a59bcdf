//! CSV formats for matrices, signals and embeddings.
//!
//! * matrix: header `node,<label_1>,...,<label_n>`, then one row per node
//!   starting with its label;
//! * signal: header `node,value`;
//! * embedding: header `node,c1,...,cd`.
//!
//! Values are written with the shortest decimal that round-trips exactly.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use nalgebra::DMatrix;

use crate::correlation::Signal;
use crate::error::{Error, Result};
use crate::metrics::Embedding;

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn records(text: &str) -> Result<Vec<csv::StringRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = reader.records().collect::<std::result::Result<_, _>>()?;
    if rows.is_empty() {
        return Err(Error::Parse {
            line: 1,
            message: "empty CSV".into(),
        });
    }
    Ok(rows)
}

fn parse_value(field: &str, line: usize) -> Result<f64> {
    let v: f64 = field.parse().map_err(|_| Error::Parse {
        line,
        message: format!("not a number: {field:?}"),
    })?;
    if !v.is_finite() {
        return Err(Error::NonFinite(format!("line {line}: {field}")));
    }
    Ok(v)
}

fn check_header(record: &csv::StringRecord, expected_first: &str) -> Result<()> {
    if record.get(0) != Some(expected_first) {
        return Err(Error::Parse {
            line: 1,
            message: format!("header must start with {expected_first:?}"),
        });
    }
    Ok(())
}

pub fn write_matrix_csv(labels: &[String], m: &DMatrix<f64>) -> String {
    let mut out = String::from("node");
    for l in labels {
        out.push(',');
        out.push_str(l);
    }
    out.push('\n');
    for (i, l) in labels.iter().enumerate() {
        out.push_str(l);
        for j in 0..m.ncols() {
            out.push(',');
            out.push_str(&m[(i, j)].to_string());
        }
        out.push('\n');
    }
    out
}

/// Parse a labelled square matrix; row labels must repeat the header order.
pub fn read_matrix_csv(text: &str) -> Result<(Vec<String>, DMatrix<f64>)> {
    let rows = records(text)?;
    check_header(&rows[0], "node")?;
    let labels: Vec<String> = rows[0].iter().skip(1).map(str::to_owned).collect();
    let n = labels.len();
    if rows.len() - 1 != n {
        return Err(Error::BadShape {
            rows: rows.len() - 1,
            cols: n,
        });
    }
    let mut m = DMatrix::zeros(n, n);
    for (i, row) in rows[1..].iter().enumerate() {
        let line = i + 2;
        if row.get(0) != Some(labels[i].as_str()) {
            return Err(Error::Parse {
                line,
                message: format!("row label must be {:?}", labels[i]),
            });
        }
        for (j, field) in row.iter().skip(1).enumerate() {
            m[(i, j)] = parse_value(field, line)?;
        }
    }
    Ok((labels, m))
}

pub fn write_signal_csv(labels: &[String], x: &Signal) -> String {
    let mut out = String::from("node,value\n");
    for (l, v) in labels.iter().zip(x.values()) {
        out.push_str(&format!("{l},{v}\n"));
    }
    out
}

/// Parse a signal and reorder it to `order`; the node sets must be equal.
pub fn read_signal_csv(text: &str, order: &[String]) -> Result<Signal> {
    let rows = records(text)?;
    check_header(&rows[0], "node")?;
    if rows[0].len() != 2 {
        return Err(Error::Parse {
            line: 1,
            message: "signal header must be \"node,value\"".into(),
        });
    }
    let mut by_label: HashMap<&str, f64> = HashMap::new();
    for (i, row) in rows[1..].iter().enumerate() {
        let label = &row[0];
        if by_label
            .insert(label, parse_value(&row[1], i + 2)?)
            .is_some()
        {
            return Err(Error::DuplicateNode(label.to_owned()));
        }
    }
    let mut values = Vec::with_capacity(order.len());
    for label in order {
        values.push(
            by_label.remove(label.as_str()).ok_or_else(|| {
                Error::InvalidArgument(format!("signal is missing node '{label}'"))
            })?,
        );
    }
    if let Some(extra) = by_label.keys().next() {
        return Err(Error::UnknownNode((*extra).to_owned()));
    }
    Signal::new(values)
}

pub fn write_embedding_csv(e: &Embedding) -> String {
    let mut out = String::from("node");
    for c in 1..=e.dimension() {
        out.push_str(&format!(",c{c}"));
    }
    out.push('\n');
    let x = e.coordinates();
    for (i, l) in e.labels().iter().enumerate() {
        out.push_str(l);
        for c in 0..e.dimension() {
            out.push(',');
            out.push_str(&x[(i, c)].to_string());
        }
        out.push('\n');
    }
    out
}

pub fn read_embedding_csv(text: &str) -> Result<Embedding> {
    let rows = records(text)?;
    check_header(&rows[0], "node")?;
    let d = rows[0].len() - 1;
    let n = rows.len() - 1;
    let mut labels = Vec::with_capacity(n);
    let mut coords = DMatrix::zeros(n, d);
    for (i, row) in rows[1..].iter().enumerate() {
        labels.push(row[0].to_owned());
        for (c, field) in row.iter().skip(1).enumerate() {
            coords[(i, c)] = parse_value(field, i + 2)?;
        }
    }
    let mut seen = std::collections::HashSet::new();
    if let Some(dup) = labels.iter().find(|l| !seen.insert(*l)) {
        return Err(Error::DuplicateNode(dup.clone()));
    }
    Embedding::new(coords, labels)
}
