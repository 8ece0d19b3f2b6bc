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

//! Random and constructed databases for tests, benchmarks and the
//! `generate` command.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::oracle::{SetDatabase, SetRecord};
use crate::preprocess::{parse_description, Description};

fn random_goal<R: Rng>(rng: &mut R, goals: usize) -> usize {
    rng.gen_range(0..goals)
}

/// Each property occurs independently with probability 1/2.
pub fn uniform_sets<R: Rng>(rng: &mut R, properties: usize, records: usize, goals: usize) -> SetDatabase {
    let records = (0..records)
        .map(|_| SetRecord {
            properties: (0..properties).filter(|_| rng.gen_bool(0.5)).collect(),
            goal: random_goal(rng, goals),
        })
        .collect();
    SetDatabase::new(records, goals, properties)
}

/// Property probabilities drawn per goal, so some properties lean towards
/// some goals.
pub fn biased_sets<R: Rng>(rng: &mut R, properties: usize, records: usize, goals: usize) -> SetDatabase {
    let rates: Vec<Vec<f64>> =
        (0..goals).map(|_| (0..properties).map(|_| rng.gen_range(0.02..0.9)).collect()).collect();
    let records = (0..records)
        .map(|_| {
            let goal = random_goal(rng, goals);
            let properties = (0..properties).filter(|&i| rng.gen_bool(rates[goal][i])).collect();
            SetRecord { properties, goal }
        })
        .collect();
    SetDatabase::new(records, goals, properties)
}

/// One-hot records: each column contributes exactly one of its
/// `class_counts[j]` properties, drawn from a per-goal distribution.
pub fn one_hot<R: Rng>(rng: &mut R, class_counts: &[usize], records: usize, goals: usize) -> SetDatabase {
    let offsets: Vec<usize> = class_counts
        .iter()
        .scan(0, |acc, &k| {
            let o = *acc;
            *acc += k;
            Some(o)
        })
        .collect();
    let weights: Vec<Vec<Vec<f64>>> = (0..goals)
        .map(|_| class_counts.iter().map(|&k| (0..k).map(|_| rng.gen_range(0.05..1.0)).collect()).collect())
        .collect();
    let records = (0..records)
        .map(|_| {
            let goal = random_goal(rng, goals);
            let properties = class_counts
                .iter()
                .enumerate()
                .map(|(j, &k)| {
                    let w = &weights[goal][j];
                    let total: f64 = w.iter().sum();
                    let mut x = rng.gen_range(0.0..total);
                    let mut pick = k - 1;
                    for (c, wc) in w.iter().enumerate() {
                        if x < *wc {
                            pick = c;
                            break;
                        }
                        x -= wc;
                    }
                    offsets[j] + pick
                })
                .collect();
            SetRecord { properties, goal }
        })
        .collect();
    SetDatabase::new(records, goals, class_counts.iter().sum())
}

/// Exact product-form grid over binary columns: within each partition, the
/// record at grid coordinate `c` has property `2j + 1` when `c_j < a_j` and
/// property `2j` otherwise. Distinct columns are therefore exactly
/// independent given the goal and given its complement.
#[derive(Clone, Debug)]
pub struct ProductForm {
    /// Per goal: grid dimensions, per column `(a_j, d_j)` with `0 < a_j < d_j`.
    pub grids: Vec<Vec<(usize, usize)>>,
    /// Per goal: how many times the grid is repeated.
    pub repeats: Vec<usize>,
}

impl ProductForm {
    pub fn random<R: Rng>(rng: &mut R, columns: usize) -> Self {
        let grids = (0..2)
            .map(|_| {
                (0..columns)
                    .map(|_| {
                        let d = rng.gen_range(2..=5);
                        (rng.gen_range(1..d), d)
                    })
                    .collect()
            })
            .collect();
        ProductForm { grids, repeats: vec![rng.gen_range(1..=3), rng.gen_range(1..=3)] }
    }

    pub fn build(&self) -> SetDatabase {
        let columns = self.grids[0].len();
        let mut records = Vec::new();
        for (goal, grid) in self.grids.iter().enumerate() {
            let cells: usize = grid.iter().map(|&(_, d)| d).product();
            for _ in 0..self.repeats[goal] {
                for cell in 0..cells {
                    let mut rest = cell;
                    let mut properties = BTreeSet::new();
                    for (j, &(a, d)) in grid.iter().enumerate() {
                        let coord = rest % d;
                        rest /= d;
                        properties.insert(2 * j + usize::from(coord < a));
                    }
                    records.push(SetRecord { properties, goal });
                }
            }
        }
        SetDatabase::new(records, self.grids.len(), 2 * columns)
    }
}

/// A random categorical table as CSV text plus its description. Columns are
/// `C0..`, values `v0..`, goals `Goal0..`.
pub fn random_table<R: Rng>(
    rng: &mut R,
    class_counts: &[usize],
    records: usize,
    goals: usize,
) -> (Description, String) {
    let db = one_hot(rng, class_counts, records, goals);
    let mut columns = vec![serde_json::json!({
        "name": "Goal", "kind": "target", "short": "Goal", "classes": goals,
        "values": (0..goals).map(|g| format!("Goal{g}")).collect::<Vec<_>>(),
        "full_name": "generated goal",
    })];
    for (j, &k) in class_counts.iter().enumerate() {
        columns.push(serde_json::json!({
            "name": format!("C{j}"), "kind": "categorical", "short": format!("C{j}v"), "classes": k,
            "values": (0..k).map(|c| format!("v{c}")).collect::<Vec<_>>(),
            "full_name": format!("generated column {j}"),
        }));
    }
    let description = parse_description(&serde_json::json!({ "columns": columns }).to_string())
        .expect("generated description is valid");

    let mut rows: Vec<&SetRecord> = db.records.iter().collect();
    rows.shuffle(rng);
    let mut csv = String::from("Goal");
    for j in 0..class_counts.len() {
        csv.push_str(&format!(",C{j}"));
    }
    csv.push('\n');
    let offsets: Vec<usize> = class_counts
        .iter()
        .scan(0, |a, &k| {
            let o = *a;
            *a += k;
            Some(o)
        })
        .collect();
    for r in rows {
        csv.push_str(&format!("Goal{}", r.goal));
        for (j, &p) in r.properties.iter().enumerate() {
            csv.push_str(&format!(",v{}", p - offsets[j]));
        }
        csv.push('\n');
    }
    (description, csv)
}
