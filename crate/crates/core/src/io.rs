//! Matrix export in JSON and CSV.
//!
//! JSON layouts are `{"order": N, "entries": [[x, ...], ...]}` for real
//! matrices and the same with `[re, im]` pairs for complex ones. CSV is one
//! matrix row per line; complex matrices export magnitudes only.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphs::RealMatrix;
use crate::spectral::ComplexMatrix;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("matrix JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("matrix JSON declares order {order} but row {row} has {len} entries")]
    Shape {
        order: usize,
        row: usize,
        len: usize,
    },
}

#[derive(Serialize, Deserialize)]
struct RealFile {
    order: usize,
    entries: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct ComplexFile {
    order: usize,
    entries: Vec<Vec<[f64; 2]>>,
}

fn pretty<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("matrix serializes");
    serde_json::to_string_pretty(&v).expect("matrix serializes")
}

pub fn real_matrix_json(m: &RealMatrix) -> String {
    pretty(&RealFile {
        order: m.nrows(),
        entries: m.row_iter().map(|r| r.iter().copied().collect()).collect(),
    })
}

pub fn real_matrix_csv(m: &RealMatrix) -> String {
    csv_rows(m.row_iter().map(|r| r.iter().copied().collect()))
}

pub fn complex_matrix_json(m: &ComplexMatrix) -> String {
    pretty(&ComplexFile {
        order: m.nrows(),
        entries: m
            .row_iter()
            .map(|r| r.iter().map(|z| [z.re, z.im]).collect())
            .collect(),
    })
}

pub fn complex_magnitude_csv(m: &ComplexMatrix) -> String {
    csv_rows(m.row_iter().map(|r| r.iter().map(|z| z.norm()).collect()))
}

fn csv_rows(rows: impl Iterator<Item = Vec<f64>>) -> String {
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row.iter().map(f64::to_string).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn check_shape<T>(order: usize, entries: &[Vec<T>]) -> Result<(), IoError> {
    if entries.len() != order {
        return Err(IoError::Shape {
            order,
            row: entries.len(),
            len: 0,
        });
    }
    for (row, r) in entries.iter().enumerate() {
        if r.len() != order {
            return Err(IoError::Shape {
                order,
                row,
                len: r.len(),
            });
        }
    }
    Ok(())
}

pub fn real_matrix_from_json(text: &str) -> Result<RealMatrix, IoError> {
    let file: RealFile = serde_json::from_str(text)?;
    check_shape(file.order, &file.entries)?;
    Ok(RealMatrix::from_fn(file.order, file.order, |i, j| {
        file.entries[i][j]
    }))
}

pub fn complex_matrix_from_json(text: &str) -> Result<ComplexMatrix, IoError> {
    let file: ComplexFile = serde_json::from_str(text)?;
    check_shape(file.order, &file.entries)?;
    Ok(ComplexMatrix::from_fn(file.order, file.order, |i, j| {
        let [re, im] = file.entries[i][j];
        Complex64::new(re, im)
    }))
}
