//! Readers and writers for the on-disk formats.
//!
//! * matrix fixture: a header line `rows cols modulus`, then one `i j v`
//!   triple per line, 0-indexed; `#` starts a comment.
//! * distances: CSV, `n` rows of `n` decimals.
//! * points: CSV, one point per row, Euclidean metric.
//! * complex: JSON `{"simplices": [{"v": [0, 1], "f": 0.5}, ...]}`.
//! * barcode: JSON `{"field": p, "dims": {"0": [[birth, death], ...]}}`
//!   with `"inf"` for infinite deaths, or CSV `dim,birth,death`.

use std::fmt::Write as _;

use anyhow::{anyhow, bail, Context, Result};
use exph_core::{Barcode, DistanceMatrix, FilteredComplex, GradedMatrix, IndexedMatrix, Modulus};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

pub fn read_matrix_fixture(text: &str) -> Result<IndexedMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (n, header) = lines
        .next()
        .ok_or_else(|| anyhow!("empty matrix fixture"))?;
    let h: Vec<u64> = header
        .split_whitespace()
        .map(str::parse)
        .collect::<Result<_, _>>()
        .with_context(|| format!("line {n}: bad header"))?;
    let [rows, cols, p] = h[..] else {
        bail!("line {n}: header must be `rows cols modulus`");
    };
    let modulus = Modulus::new(p)?;
    let mut entries = Vec::new();
    for (n, line) in lines {
        let t: Vec<&str> = line.split_whitespace().collect();
        let [i, j, v] = t[..] else {
            bail!("line {n}: expected `i j v`");
        };
        let i: usize = i
            .parse()
            .with_context(|| format!("line {n}: bad row index"))?;
        let j: usize = j
            .parse()
            .with_context(|| format!("line {n}: bad column index"))?;
        let v: i64 = v.parse().with_context(|| format!("line {n}: bad value"))?;
        if i as u64 >= rows || j as u64 >= cols {
            bail!("line {n}: entry ({i}, {j}) outside a {rows}x{cols} matrix");
        }
        entries.push((i, j, v));
    }
    Ok(IndexedMatrix::from_entries(
        0..rows as usize,
        0..cols as usize,
        modulus,
        entries,
    )?)
}

/// Writes `a` with rows and columns renumbered by position in label order.
pub fn write_matrix_fixture(a: &IndexedMatrix) -> String {
    let row_pos = |r| a.rows().binary_search(&r).expect("row label");
    let col_pos = |c| a.cols().binary_search(&c).expect("column label");
    let mut out = format!("{} {} {}\n", a.nrows(), a.ncols(), a.modulus());
    for (r, c, v) in a.entries() {
        writeln!(out, "{} {} {}", row_pos(r), col_pos(c), v).unwrap();
    }
    out
}

pub fn read_distance_csv(text: &str) -> Result<DistanceMatrix> {
    Ok(DistanceMatrix::new(read_numeric_csv(text)?)?)
}

pub fn read_points_csv(text: &str) -> Result<DistanceMatrix> {
    let pts = read_numeric_csv(text)?;
    if let Some(bad) = pts.iter().position(|p| p.len() != pts[0].len()) {
        bail!(
            "point {bad} has {} coordinates, expected {}",
            pts[bad].len(),
            pts[0].len()
        );
    }
    Ok(DistanceMatrix::new(euclidean(&pts))?)
}

pub fn euclidean(pts: &[Vec<f64>]) -> Vec<Vec<f64>> {
    pts.iter()
        .map(|a| {
            pts.iter()
                .map(|b| {
                    a.iter()
                        .zip(b)
                        .map(|(x, y)| (x - y) * (x - y))
                        .sum::<f64>()
                        .sqrt()
                })
                .collect()
        })
        .collect()
}

fn read_numeric_csv(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (n, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let row = rec
            .iter()
            .map(|f| f.parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .with_context(|| format!("row {}: not a number", n + 1))?;
        if row.iter().any(|x| !x.is_finite()) {
            bail!("row {}: non-finite value", n + 1);
        }
        rows.push(row);
    }
    Ok(rows)
}

#[derive(Debug, Serialize, Deserialize)]
struct ComplexFile {
    simplices: Vec<SimplexEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct SimplexEntry {
    v: Vec<u32>,
    f: f64,
}

pub fn read_complex_json(text: &str) -> Result<FilteredComplex> {
    let file: ComplexFile = serde_json::from_str(text).context("malformed complex JSON")?;
    let k = FilteredComplex::new(file.simplices.into_iter().map(|s| (s.v, s.f)))?;
    if !k.validate() {
        bail!("complex is not closed under faces or its filtration is not monotone");
    }
    Ok(k)
}

pub fn write_complex_json(k: &FilteredComplex) -> String {
    let file = ComplexFile {
        simplices: k
            .iter()
            .map(|(_, s, g)| SimplexEntry {
                v: s.vertices().to_vec(),
                f: g.value(),
            })
            .collect(),
    };
    serde_json::to_string(&file).expect("serializable") + "\n"
}

fn grade_json(x: f64) -> Value {
    if x.is_infinite() {
        Value::String(if x > 0.0 { "inf" } else { "-inf" }.into())
    } else {
        json!(x)
    }
}

fn grade_text(x: f64) -> String {
    grade_json(x)
        .as_str()
        .map_or_else(|| grade_json(x).to_string(), str::to_owned)
}

pub fn barcode_json(b: &Barcode, p: Modulus) -> String {
    let mut dims = Map::new();
    for (d, ints) in b.dims() {
        let list = ints
            .iter()
            .map(|i| json!([grade_json(i.birth.value()), grade_json(i.death.value())]))
            .collect();
        dims.insert(d.to_string(), Value::Array(list));
    }
    serde_json::to_string(&json!({ "field": p.get(), "dims": dims })).expect("serializable") + "\n"
}

pub fn barcode_csv(b: &Barcode) -> String {
    let mut out = String::from("dim,birth,death\n");
    for (d, ints) in b.dims() {
        for i in ints {
            writeln!(
                out,
                "{d},{},{}",
                grade_text(i.birth.value()),
                grade_text(i.death.value())
            )
            .unwrap();
        }
    }
    out
}

/// Morse-reduced complex: each critical cell with its grade, dimension and
/// boundary as `[label, coefficient]` pairs.
pub fn graded_matrix_json(d: &GradedMatrix) -> String {
    let cells: Vec<Value> = (0..d.len())
        .map(|j| {
            let c = d.cell(j);
            let boundary: Vec<Value> = d
                .column(j)
                .iter()
                .map(|&(i, v)| json!([d.cell(i as usize).label, v]))
                .collect();
            json!({ "label": c.label, "dim": c.dim, "f": grade_json(c.grade.value()), "boundary": boundary })
        })
        .collect();
    serde_json::to_string(&json!({ "field": d.modulus().get(), "cells": cells }))
        .expect("serializable")
        + "\n"
}
