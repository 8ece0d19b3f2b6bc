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

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::description::{ColumnValues, Description};
use crate::bitcode::BitCode;
use crate::error::{Error, Result};

/// One binary property. Property `index` has code `2^index`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Property {
    pub index: usize,
    pub name: String,
    pub source_column: String,
    pub category_index: usize,
    pub full_name: String,
}

impl Property {
    pub fn code(&self) -> BitCode {
        BitCode::bit(self.index)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PropertyCatalog {
    properties: Vec<Property>,
    by_name: HashMap<String, usize>,
    // First property index of each source column, in column order.
    column_offsets: Vec<(String, usize)>,
}

impl PropertyCatalog {
    pub fn from_properties(properties: Vec<Property>) -> Result<Self> {
        let mut by_name = HashMap::with_capacity(properties.len());
        let mut column_offsets: Vec<(String, usize)> = Vec::new();
        for (i, p) in properties.iter().enumerate() {
            if p.index != i {
                return Err(Error::InconsistentDump(format!(
                    "property `{}` has index {} at position {i}",
                    p.name, p.index
                )));
            }
            if by_name.insert(p.name.clone(), i).is_some() {
                return Err(Error::DuplicateName("property", p.name.clone()));
            }
            if column_offsets.last().map(|(c, _)| c) != Some(&p.source_column) {
                column_offsets.push((p.source_column.clone(), i));
            }
        }
        Ok(PropertyCatalog { properties, by_name, column_offsets })
    }

    /// `m` anonymous properties `P0..P{m-1}`, each its own source column.
    pub fn generic(m: usize) -> Self {
        let properties = (0..m)
            .map(|i| Property {
                index: i,
                name: format!("P{i}"),
                source_column: format!("P{i}"),
                category_index: 0,
                full_name: format!("property {i}"),
            })
            .collect();
        PropertyCatalog::from_properties(properties).expect("generic names are unique")
    }

    pub fn len(&self) -> usize {
        self.properties.len()
    }

    pub fn is_empty(&self) -> bool {
        self.properties.is_empty()
    }

    pub fn properties(&self) -> &[Property] {
        &self.properties
    }

    pub fn get(&self, index: usize) -> Option<&Property> {
        self.properties.get(index)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    /// Code of the premise made of the named properties.
    pub fn code_of(&self, names: &[&str]) -> Option<BitCode> {
        names.iter().map(|n| self.index_of(n)).collect::<Option<Vec<_>>>().map(BitCode::from_indices)
    }

    /// Index of the first property generated for `column`.
    pub fn column_offset(&self, column: &str) -> Option<usize> {
        self.column_offsets.iter().find(|(c, _)| c == column).map(|&(_, o)| o)
    }

    /// Property names of the set bits of `code`, in index order.
    pub fn decode(&self, code: &BitCode) -> Result<Vec<&str>> {
        code.ones()
            .map(|bit| {
                self.properties
                    .get(bit)
                    .map(|p| p.name.as_str())
                    .ok_or(Error::CodeOutOfRange { bit, properties: self.properties.len() })
            })
            .collect()
    }

    pub fn decode_set(&self, code: &BitCode) -> Result<BTreeSet<String>> {
        Ok(self.decode(code)?.into_iter().map(String::from).collect())
    }
}

/// Expands every non-target column with `k` classes into `k` consecutive
/// properties named `short_name` + category index.
pub fn build_catalog(description: &Description) -> Result<PropertyCatalog> {
    let mut properties = Vec::new();
    for column in description.inputs() {
        for category in 0..column.class_count {
            let detail = match &column.values {
                ColumnValues::Labels(labels) => format!("= {}", labels[category]),
                ColumnValues::Boundaries(b) => match (category.checked_sub(1).map(|i| b[i]), b.get(category)) {
                    (None, Some(hi)) => format!("< {hi}"),
                    (Some(lo), Some(hi)) => format!("in [{lo}, {hi})"),
                    (Some(lo), None) => format!(">= {lo}"),
                    (None, None) => unreachable!("continuous columns have at least one boundary"),
                },
            };
            properties.push(Property {
                index: properties.len(),
                name: format!("{}{}", column.short_name, category),
                source_column: column.name.clone(),
                category_index: category,
                full_name: format!("{} {}", column.full_name, detail),
            });
        }
    }
    if properties.is_empty() {
        return Err(Error::NoInputColumns);
    }
    PropertyCatalog::from_properties(properties)
}
