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

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("description has no target column")]
    NoTarget,
    #[error("multiple targets: {0} and {1}")]
    MultipleTargets(String, String),
    #[error("column `{0}`: boundary count must be class_count − 1 (expected {1}, found {2})")]
    BoundaryCount(String, usize, usize),
    #[error("column `{0}`: boundaries must be finite and strictly ascending")]
    NonAscendingBoundaries(String),
    #[error("column `{0}`: expected {1} distinct labels, found {2}")]
    LabelCount(String, usize, usize),
    #[error("column `{0}`: class count must be at least 2")]
    ClassCount(String),
    #[error("duplicate {0} name `{1}`")]
    DuplicateName(&'static str, String),
    #[error("column `{0}`: {1}")]
    InvalidColumn(String, String),
    #[error("description has no input columns")]
    NoInputColumns,

    #[error("non-finite value {0}")]
    NonFinite(f64),
    #[error("row {row}, column `{column}`: unparsable continuous value `{value}`")]
    UnparsableValue { row: usize, column: String, value: String },
    #[error("row {row}, column `{column}`: unknown label `{label}`")]
    UnknownLabel { row: usize, column: String, label: String },
    #[error("row {row}, column `{column}`: missing cell")]
    MissingCell { row: usize, column: String },
    #[error("row {row}, column `{column}`: non-finite value")]
    NonFiniteCell { row: usize, column: String },
    #[error("table header does not match description: {0}")]
    HeaderMismatch(String),
    #[error("no records")]
    NoRecords,
    #[error("code out of catalog range: bit {bit} set but catalog has {properties} properties")]
    CodeOutOfRange { bit: usize, properties: usize },
    #[error("invalid bit code `{0}`")]
    InvalidCode(String),
    #[error("goal index {goal} out of range for {goals} goals")]
    GoalOutOfRange { goal: usize, goals: usize },
    #[error("inconsistent encoded database: {0}")]
    InconsistentDump(String),

    #[error("premise has no support")]
    NoSupport,
    #[error("empty goal partition")]
    EmptyPartition,
    #[error("inconsistent support counts: {0}")]
    InvalidCounts(String),
    #[error("ratio p must be positive, got {0}")]
    NonPositiveRatio(f64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("enumeration infeasible: about {estimated} premise evaluations exceed the limit of {limit}")]
    InfeasibleEnumeration { estimated: u128, limit: u128 },

    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
