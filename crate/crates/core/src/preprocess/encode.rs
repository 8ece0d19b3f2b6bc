// Copyright 2026 The apriori-goal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::collections::HashMap;
use std::io::Read;
use std::path::Path;

use super::catalog::{build_catalog, PropertyCatalog};
use super::database::{EncodedRecord, PartitionedDatabase};
use super::description::{parse_description, ColumnDescriptor, ColumnKind, ColumnValues, Description};
use crate::bitcode::BitCode;
use crate::error::{Error, Result};

/// What to do with a row that has an empty or absent cell.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MissingPolicy {
    #[default]
    Error,
    Skip,
}

/// Bin of `value` under half-open bins: `(-inf, b0)`, `[b0, b1)`, ...,
/// `[b_last, +inf)`. A value equal to a boundary lands in the upper bin.
pub fn discretize(value: f64, boundaries: &[f64]) -> Result<usize> {
    if !value.is_finite() {
        return Err(Error::NonFinite(value));
    }
    Ok(boundaries.partition_point(|&b| b <= value))
}

enum CellError {
    Missing,
    Unparsable,
    NonFinite,
    UnknownLabel,
}

fn category_of(column: &ColumnDescriptor, cell: &str) -> std::result::Result<usize, CellError> {
    let cell = cell.trim();
    if cell.is_empty() {
        return Err(CellError::Missing);
    }
    match &column.values {
        ColumnValues::Boundaries(b) => {
            let value: f64 = cell.parse().map_err(|_| CellError::Unparsable)?;
            discretize(value, b).map_err(|_| CellError::NonFinite)
        }
        ColumnValues::Labels(labels) => labels.iter().position(|l| l == cell).ok_or(CellError::UnknownLabel),
    }
}

fn cell_error(e: CellError, row: usize, column: &ColumnDescriptor, cell: &str) -> Error {
    let column_name = column.name.clone();
    match e {
        CellError::Missing => Error::MissingCell { row, column: column_name },
        CellError::Unparsable => Error::UnparsableValue { row, column: column_name, value: cell.to_string() },
        CellError::NonFinite => Error::NonFiniteCell { row, column: column_name },
        CellError::UnknownLabel => Error::UnknownLabel { row, column: column_name, label: cell.trim().to_string() },
    }
}

/// Encodes one row given as column name to raw cell text.
///
/// Returns the record code and the row's goal index.
pub fn encode_row(
    row: &HashMap<String, String>,
    description: &Description,
    catalog: &PropertyCatalog,
) -> Result<(EncodedRecord, usize)> {
    let cells: Vec<Option<&str>> = description.columns().iter().map(|c| row.get(&c.name).map(String::as_str)).collect();
    RowEncoder::new(description, catalog)?.encode(0, |i| cells[i])
}

/// Column-position-aware encoder shared by the map and CSV entry points.
struct RowEncoder<'a> {
    description: &'a Description,
    // Catalog offset of each input column; `None` for the target.
    offsets: Vec<Option<usize>>,
}

impl<'a> RowEncoder<'a> {
    fn new(description: &'a Description, catalog: &PropertyCatalog) -> Result<Self> {
        let offsets = description
            .columns()
            .iter()
            .map(|c| match c.kind {
                ColumnKind::Target => Ok(None),
                _ => catalog
                    .column_offset(&c.name)
                    .map(Some)
                    .ok_or_else(|| Error::HeaderMismatch(format!("catalog lacks column `{}`", c.name))),
            })
            .collect::<Result<_>>()?;
        Ok(RowEncoder { description, offsets })
    }

    /// `cell(i)` yields the raw text of description column `i`.
    fn encode<'c>(&self, row: usize, cell: impl Fn(usize) -> Option<&'c str>) -> Result<(EncodedRecord, usize)> {
        let mut code = BitCode::zero();
        let mut goal = 0;
        for (i, column) in self.description.columns().iter().enumerate() {
            let text = cell(i).ok_or_else(|| Error::MissingCell { row, column: column.name.clone() })?;
            let category = category_of(column, text).map_err(|e| cell_error(e, row, column, text))?;
            match self.offsets[i] {
                None => goal = category,
                Some(offset) => code.set(offset + category),
            }
        }
        Ok((EncodedRecord::new(code), goal))
    }
}

#[derive(Debug)]
pub struct Preprocessed {
    pub database: PartitionedDatabase,
    /// Rows dropped under [`MissingPolicy::Skip`].
    pub skipped: usize,
}

/// Reads a CSV table (with header) and encodes it into a partitioned database.
pub fn preprocess<R: Read>(reader: R, description: &Description, missing: MissingPolicy) -> Result<Preprocessed> {
    let catalog = build_catalog(description)?;
    let mut csv = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(reader);
    let header = csv.headers()?.clone();

    let mut positions = Vec::with_capacity(description.columns().len());
    for column in description.columns() {
        let pos = header
            .iter()
            .position(|h| h == column.name)
            .ok_or_else(|| Error::HeaderMismatch(format!("column `{}` not in table header", column.name)))?;
        positions.push(pos);
    }
    if let Some(extra) = header.iter().find(|h| description.columns().iter().all(|c| c.name != *h)) {
        return Err(Error::HeaderMismatch(format!("table column `{extra}` is not described")));
    }

    let rows: Vec<csv::StringRecord> = csv.records().collect::<std::result::Result<_, _>>()?;
    if rows.is_empty() {
        return Err(Error::NoRecords);
    }

    let encoder = RowEncoder::new(description, &catalog)?;
    // Row numbers are 1-based data rows, header excluded.
    let encode = |(i, r): (usize, &csv::StringRecord)| encoder.encode(i + 1, |c| r.get(positions[c]));
    #[cfg(feature = "parallel")]
    let encoded: Vec<Result<(EncodedRecord, usize)>> = {
        use rayon::prelude::*;
        rows.par_iter().enumerate().map(encode).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let encoded: Vec<Result<(EncodedRecord, usize)>> = rows.iter().enumerate().map(encode).collect();

    let mut records = Vec::with_capacity(encoded.len());
    let mut skipped = 0;
    for result in encoded {
        match result {
            Ok(r) => records.push(r),
            Err(Error::MissingCell { .. }) if missing == MissingPolicy::Skip => skipped += 1,
            Err(e) => return Err(e),
        }
    }
    if records.is_empty() {
        return Err(Error::NoRecords);
    }
    let database = PartitionedDatabase::from_records(catalog, description.goal_labels().to_vec(), records)?;
    Ok(Preprocessed { database, skipped })
}

/// Loads a description file and a CSV table from disk.
pub fn preprocess_files(
    table: &Path,
    description: &Path,
    missing: MissingPolicy,
) -> Result<(Description, Preprocessed)> {
    let description = parse_description(&std::fs::read_to_string(description)?)?;
    let file = std::fs::File::open(table)?;
    let out = preprocess(std::io::BufReader::new(file), &description, missing)?;
    Ok((description, out))
}
