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

//! Rules mined from the bundled diabetes table.

use std::path::PathBuf;

use apriori_goal::{mine, preprocess_files, MiningConfig, MissingPolicy, PartitionedDatabase, RuleSet};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn load() -> PartitionedDatabase {
    preprocess_files(&data("diabetes.csv"), &data("diabetes.dbd.json"), MissingPolicy::Error).unwrap().1.database
}

fn rounded(x: f64) -> f64 {
    (x * 1000.0).round() / 1000.0
}

fn row(db: &PartitionedDatabase, rules: &RuleSet, goal: usize, premise: &[&str]) -> [f64; 4] {
    let code = db.catalog().code_of(premise).unwrap();
    let r = rules.find(goal, &code).unwrap_or_else(|| panic!("missing {premise:?} => Goal{goal}"));
    [r.metrics.f_g, r.metrics.f_all, r.metrics.confidence, r.metrics.correlation].map(rounded)
}

#[test]
fn partitions_and_catalog() {
    let db = load();
    assert_eq!(db.len(), 442);
    assert_eq!(db.partition_sizes(), [206, 156, 80]);
    assert_eq!(db.property_count(), 29);
}

#[test]
fn goal2_rules() {
    let db = load();
    let rules = mine(&db, &MiningConfig::default());
    // f_g, f_all, conf, corr rounded to three decimals.
    let expected: [(&[&str], [f64; 4]); 10] = [
        (&["BMI2"], [0.25, 0.045, 0.769, 0.718]),
        (&["BP2"], [0.488, 0.088, 0.488, 0.374]),
        (&["S42"], [0.138, 0.025, 0.579, 0.486]),
        (&["S62"], [0.425, 0.077, 0.472, 0.356]),
        (&["BMI2", "BP2"], [0.175, 0.032, 1.0, 1.0]),
        (&["BMI2", "S42"], [0.038, 0.007, 1.0, 1.0]),
        (&["BMI2", "S62"], [0.1, 0.018, 0.8, 0.756]),
        (&["BP2", "S42"], [0.05, 0.009, 0.571, 0.477]),
        (&["BP2", "S62"], [0.2, 0.036, 0.64, 0.56]),
        (&["S42", "S62"], [0.088, 0.016, 0.7, 0.634]),
    ];
    assert_eq!(rules.positive[2].len(), expected.len());
    for (premise, values) in expected {
        let got = row(&db, &rules, 2, premise);
        for (g, e) in got.iter().zip(values) {
            // BP2's f_g is exactly 0.4875, which rounds either way.
            assert!((g - e).abs() <= 0.0011, "{premise:?}: {got:?} vs {values:?}");
        }
    }
    assert!(rules.positive[2].iter().filter(|r| r.premise_len > 1).all(|r| r.is_final));
}

#[test]
fn goal0_and_goal1_rules() {
    let db = load();
    let rules = mine(&db, &MiningConfig::default());
    assert!(rules.positive[1].is_empty());
    assert_eq!(row(&db, &rules, 0, &["BMI0"]), [0.757, 0.353, 0.658, 0.36]);
    assert_eq!(row(&db, &rules, 0, &["S50"]), [0.335, 0.156, 0.758, 0.547]);
    assert_eq!(row(&db, &rules, 0, &["BMI0", "S50"]), [0.291, 0.136, 0.833, 0.688]);
}
