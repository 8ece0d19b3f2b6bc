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

//! Goal-directed association rule mining.
//!
//! Tables with a designated target column are binarized and encoded so that
//! every record is a single [`BitCode`]; records are then grouped into one
//! partition per goal value. For each goal the miner builds rules
//! `X => Goal_k`, starting from single properties whose correlation with the
//! goal clears a threshold and then extending premises by higher-indexed
//! candidates while correlation grows and frequency shrinks.
//!
//! ```
//! use apriori_goal::{mine, parse_description, preprocess, MiningConfig, MissingPolicy};
//!
//! let description = parse_description(r#"{"columns": [
//!     {"name": "Flu", "kind": "target", "short": "Flu", "classes": 2, "values": ["no", "yes"]},
//!     {"name": "Temp", "kind": "continuous", "short": "T", "classes": 3, "values": [36.0, 37.2]}
//! ]}"#).unwrap();
//! let table = "Flu,Temp\nno,36.6\nno,36.8\nyes,38.5\nyes,39.0\nno,35.9\n";
//! let db = preprocess(table.as_bytes(), &description, MissingPolicy::Error).unwrap().database;
//! let rules = mine(&db, &MiningConfig::default());
//! let fever = &rules.positive[1][0];
//! assert_eq!(db.catalog().decode(&fever.premise).unwrap(), ["T2"]);
//! assert_eq!(fever.metrics.confidence, 1.0);
//! ```

pub mod bitcode;
pub mod engine;
mod error;
pub mod metrics;
pub mod oracle;
pub mod preprocess;
pub mod synth;

pub mod threads;

pub use bitcode::BitCode;
pub use engine::{
    create_candidates, eligible_candidates, expand, mine, mine_all, mine_negative, MiningConfig, Rule, RuleSet,
};
pub use error::{Error, Result};
#[cfg(feature = "parallel")]
pub use metrics::support_parallel;
pub use metrics::{
    compute_metrics, correlation_from_lift, recommended_min_correlation, support, support_sequential, CriteriaWeights,
    RuleMetrics, SupportResult,
};
pub use preprocess::{
    build_catalog, decode_record, discretize, encode_row, parse_description, preprocess, preprocess_files,
    ColumnDescriptor, ColumnKind, Description, EncodedRecord, MissingPolicy, PartitionedDatabase, PropertyCatalog,
};
