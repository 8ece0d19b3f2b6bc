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

//! Table preprocessing: column descriptions, binarization and bit-code
//! encoding, and goal partitioning.

mod catalog;
mod database;
mod description;
mod encode;

pub use catalog::{build_catalog, Property, PropertyCatalog};
pub use database::{CatalogEntry, DatabaseDump, EncodedRecord, PartitionedDatabase};
pub use description::{parse_description, ColumnDescriptor, ColumnKind, ColumnValues, Description};
pub use encode::{discretize, encode_row, preprocess, preprocess_files, MissingPolicy, Preprocessed};

use crate::error::Result;

/// Property names of a record's set bits, in catalog order.
pub fn decode_record(record: &EncodedRecord, catalog: &PropertyCatalog) -> Result<Vec<String>> {
    Ok(catalog.decode(&record.code)?.into_iter().map(String::from).collect())
}
