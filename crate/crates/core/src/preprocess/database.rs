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

use serde::{Deserialize, Serialize};

use super::catalog::{Property, PropertyCatalog};
use crate::bitcode::{words_for_bits, BitCode};
use crate::error::{Error, Result};

/// A record's binary properties as a bit code.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EncodedRecord {
    pub code: BitCode,
}

impl EncodedRecord {
    pub fn new(code: BitCode) -> Self {
        EncodedRecord { code }
    }
}

/// Encoded records grouped into contiguous goal partitions.
///
/// Records are stored flat, `words` little-endian limbs per record, so a
/// partition is one contiguous slice of `u64`s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionedDatabase {
    catalog: PropertyCatalog,
    goal_labels: Vec<String>,
    words: usize,
    data: Vec<u64>,
    partition_sizes: Vec<usize>,
    partition_starts: Vec<usize>,
}

impl PartitionedDatabase {
    /// Groups `(record, goal)` pairs by goal, keeping input order within
    /// each goal.
    pub fn from_records<I>(catalog: PropertyCatalog, goal_labels: Vec<String>, records: I) -> Result<Self>
    where
        I: IntoIterator<Item = (EncodedRecord, usize)>,
    {
        let goals = goal_labels.len();
        let m = catalog.len();
        let words = words_for_bits(m).max(1);
        let mut buckets: Vec<Vec<u64>> = vec![Vec::new(); goals];
        for (record, goal) in records {
            if goal >= goals {
                return Err(Error::GoalOutOfRange { goal, goals });
            }
            if let Some(bit) = record.code.highest_bit().filter(|&b| b >= m) {
                return Err(Error::CodeOutOfRange { bit, properties: m });
            }
            buckets[goal].extend(record.code.to_words(words));
        }
        let partition_sizes: Vec<usize> = buckets.iter().map(|b| b.len() / words).collect();
        let data = buckets.concat();
        Ok(PartitionedDatabase::assemble(catalog, goal_labels, words, data, partition_sizes))
    }

    fn assemble(
        catalog: PropertyCatalog,
        goal_labels: Vec<String>,
        words: usize,
        data: Vec<u64>,
        partition_sizes: Vec<usize>,
    ) -> Self {
        let partition_starts = partition_sizes
            .iter()
            .scan(0, |acc, &n| {
                let start = *acc;
                *acc += n;
                Some(start)
            })
            .collect();
        PartitionedDatabase { catalog, goal_labels, words, data, partition_sizes, partition_starts }
    }

    /// Total record count `N`.
    pub fn len(&self) -> usize {
        self.data.len() / self.words
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn goal_count(&self) -> usize {
        self.goal_labels.len()
    }

    pub fn goal_labels(&self) -> &[String] {
        &self.goal_labels
    }

    pub fn catalog(&self) -> &PropertyCatalog {
        &self.catalog
    }

    pub fn property_count(&self) -> usize {
        self.catalog.len()
    }

    pub fn partition_sizes(&self) -> &[usize] {
        &self.partition_sizes
    }

    pub fn partition_starts(&self) -> &[usize] {
        &self.partition_starts
    }

    /// Limbs per stored record.
    pub fn words(&self) -> usize {
        self.words
    }

    /// Raw limbs of partition `goal`: `partition_sizes[goal] * words` values.
    pub fn partition_words(&self, goal: usize) -> &[u64] {
        let start = self.partition_starts[goal] * self.words;
        &self.data[start..start + self.partition_sizes[goal] * self.words]
    }

    pub fn record(&self, i: usize) -> EncodedRecord {
        let limbs = self.data[i * self.words..(i + 1) * self.words].to_vec();
        EncodedRecord::new(BitCode::from_limbs(limbs))
    }

    /// `(goal, record)` pairs in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, EncodedRecord)> + '_ {
        (0..self.goal_count()).flat_map(move |g| {
            let start = self.partition_starts[g];
            (start..start + self.partition_sizes[g]).map(move |i| (g, self.record(i)))
        })
    }

    /// Every partition repeated `factor` times; all ratios are unchanged.
    pub fn duplicated(&self, factor: usize) -> Self {
        let mut data = Vec::with_capacity(self.data.len() * factor);
        for g in 0..self.goal_count() {
            let part = self.partition_words(g);
            for _ in 0..factor {
                data.extend_from_slice(part);
            }
        }
        let sizes = self.partition_sizes.iter().map(|n| n * factor).collect();
        PartitionedDatabase::assemble(self.catalog.clone(), self.goal_labels.clone(), self.words, data, sizes)
    }

    pub fn dump(&self) -> DatabaseDump {
        DatabaseDump {
            goal_labels: self.goal_labels.clone(),
            partition_sizes: self.partition_sizes.clone(),
            catalog: self
                .catalog
                .properties()
                .iter()
                .map(|p| CatalogEntry { code: p.code(), property: p.clone() })
                .collect(),
            records: self.iter().map(|(_, r)| r.code).collect(),
        }
    }

    pub fn from_dump(dump: DatabaseDump) -> Result<Self> {
        for entry in &dump.catalog {
            if entry.code != entry.property.code() {
                return Err(Error::InconsistentDump(format!(
                    "property `{}` listed with code {}",
                    entry.property.name, entry.code
                )));
            }
        }
        if dump.partition_sizes.len() != dump.goal_labels.len() {
            return Err(Error::InconsistentDump("one partition size per goal label required".into()));
        }
        let total: usize = dump.partition_sizes.iter().sum();
        if total != dump.records.len() {
            return Err(Error::InconsistentDump(format!(
                "partition sizes sum to {total} but {} records present",
                dump.records.len()
            )));
        }
        let catalog = PropertyCatalog::from_properties(dump.catalog.into_iter().map(|e| e.property).collect())?;
        let goals = dump.partition_sizes.iter().enumerate().flat_map(|(g, &n)| std::iter::repeat_n(g, n));
        let records = dump.records.into_iter().map(EncodedRecord::new).zip(goals);
        PartitionedDatabase::from_records(catalog, dump.goal_labels, records)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    #[serde(flatten)]
    pub property: Property,
    pub code: BitCode,
}

/// JSON form of an encoded database; codes are decimal strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DatabaseDump {
    pub goal_labels: Vec<String>,
    pub partition_sizes: Vec<usize>,
    pub catalog: Vec<CatalogEntry>,
    pub records: Vec<BitCode>,
}
