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

//! Rule output: human table, CSV, and JSON.

use std::fmt::Write as _;

use apriori_goal::{MiningConfig, PartitionedDatabase, Rule, RuleSet};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CatalogRecord {
    pub index: usize,
    pub name: String,
    pub code: String,
    pub source_column: String,
    pub full_name: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GoalRecord {
    pub index: usize,
    pub label: String,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RuleRecord {
    pub premise: Vec<String>,
    pub goal: String,
    pub sup_k: u64,
    pub sup: u64,
    pub f_g: f64,
    pub f_all: f64,
    pub conf: f64,
    pub lift: f64,
    pub corr: f64,
    pub q: f64,
    #[serde(rename = "final")]
    pub is_final: bool,
    pub negative: bool,
}

impl RuleRecord {
    pub fn new(rule: &Rule, db: &PartitionedDatabase) -> Self {
        let premise = db
            .catalog()
            .decode(&rule.premise)
            .expect("mined premises lie inside the catalog")
            .into_iter()
            .map(String::from)
            .collect();
        let m = &rule.metrics;
        RuleRecord {
            premise,
            goal: db.goal_labels()[rule.goal].clone(),
            sup_k: rule.sup_k,
            sup: rule.sup,
            f_g: m.f_g,
            f_all: m.f_all,
            conf: m.confidence,
            lift: m.lift,
            corr: m.correlation,
            q: m.quality,
            is_final: rule.is_final,
            negative: rule.negative,
        }
    }

    /// `BMI0, S50 => Goal0`, or `... => not Goal0` for negative rules.
    pub fn text(&self) -> String {
        let not = if self.negative { "not " } else { "" };
        format!("{} => {not}{}", self.premise.join(", "), self.goal)
    }
}

/// Summary of one mining run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub dataset: String,
    pub records: usize,
    pub partition_sizes: Vec<usize>,
    pub config: MiningConfig,
    pub positive_per_goal: Vec<usize>,
    pub negative_per_goal: Vec<usize>,
    pub threads: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preprocess_seconds: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mining_seconds: Option<f64>,
}

impl RunReport {
    pub fn new(
        dataset: &str,
        db: &PartitionedDatabase,
        config: &MiningConfig,
        rules: &RuleSet,
        threads: usize,
    ) -> Self {
        RunReport {
            dataset: dataset.to_string(),
            records: db.len(),
            partition_sizes: db.partition_sizes().to_vec(),
            config: config.clone(),
            positive_per_goal: rules.positive.iter().map(Vec::len).collect(),
            negative_per_goal: rules.negative.iter().map(Vec::len).collect(),
            threads,
            preprocess_seconds: None,
            mining_seconds: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MineOutput {
    pub config: MiningConfig,
    pub catalog: Vec<CatalogRecord>,
    pub goals: Vec<GoalRecord>,
    pub rules: Vec<RuleRecord>,
    pub report: RunReport,
}

pub fn catalog_records(db: &PartitionedDatabase) -> Vec<CatalogRecord> {
    db.catalog()
        .properties()
        .iter()
        .map(|p| CatalogRecord {
            index: p.index,
            name: p.name.clone(),
            code: p.code().to_string(),
            source_column: p.source_column.clone(),
            full_name: p.full_name.clone(),
        })
        .collect()
}

pub fn goal_records(db: &PartitionedDatabase) -> Vec<GoalRecord> {
    db.goal_labels()
        .iter()
        .zip(db.partition_sizes())
        .enumerate()
        .map(|(index, (label, &size))| GoalRecord { index, label: label.clone(), size })
        .collect()
}

/// Positive rules in canonical order, then negative rules.
pub fn rule_records(db: &PartitionedDatabase, rules: &RuleSet) -> Vec<RuleRecord> {
    rules.positive_rules().chain(rules.negative_rules()).map(|r| RuleRecord::new(r, db)).collect()
}

impl MineOutput {
    pub fn new(db: &PartitionedDatabase, rules: &RuleSet, report: RunReport) -> Self {
        MineOutput {
            config: report.config.clone(),
            catalog: catalog_records(db),
            goals: goal_records(db),
            rules: rule_records(db, rules),
            report,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("output serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["rule", "f_g", "f_all", "conf", "corr", "q"]).expect("in-memory write");
        for r in &self.rules {
            let cells = [r.text(), d3(r.f_g), d3(r.f_all), d3(r.conf), d3(r.corr), d3(r.q)];
            w.write_record(&cells).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
    }

    pub fn to_table(&self) -> String {
        let (pos, neg): (Vec<&RuleRecord>, Vec<&RuleRecord>) = self.rules.iter().partition(|r| !r.negative);
        let mut out = String::new();
        write_rule_table(&mut out, &pos);
        if !neg.is_empty() {
            out.push_str("\nNegative rules\n");
            write_rule_table(&mut out, &neg);
        }
        let r = &self.report;
        let _ = writeln!(out);
        let _ = writeln!(out, "dataset: {}", r.dataset);
        let _ = writeln!(out, "records: {}  partitions: {:?}", r.records, r.partition_sizes);
        let _ = writeln!(
            out,
            "config: min_corr={} corr_stop={} min_f_all={} neg_corr={} weights=({},{},{},{}) max_premise_len={}",
            r.config.min_corr,
            r.config.corr_stop,
            r.config.min_f_all,
            r.config.neg_corr,
            r.config.weights.f_all,
            r.config.weights.f_g,
            r.config.weights.confidence,
            r.config.weights.correlation,
            r.config.max_premise_len.map_or("none".to_string(), |n| n.to_string()),
        );
        let _ = writeln!(out, "rules per goal: positive {:?}  negative {:?}", r.positive_per_goal, r.negative_per_goal);
        let _ = write!(out, "threads: {}", r.threads);
        if let (Some(p), Some(m)) = (r.preprocess_seconds, r.mining_seconds) {
            let _ = write!(out, "  preprocessing: {p:.3} s  mining: {m:.3} s");
        }
        out.push('\n');
        out
    }
}

fn d3(x: f64) -> String {
    format!("{x:.3}")
}

fn write_rule_table(out: &mut String, rules: &[&RuleRecord]) {
    let width = rules.iter().map(|r| r.text().chars().count()).max().unwrap_or(4).max(4);
    let _ = writeln!(out, "{:<width$}  {:>6}  {:>6}  {:>6}  {:>6}  {:>6}", "Rule", "f_g", "f_all", "conf", "corr", "q");
    for r in rules {
        let _ = writeln!(
            out,
            "{:<width$}  {:>6}  {:>6}  {:>6}  {:>6}  {:>6}",
            r.text(),
            d3(r.f_g),
            d3(r.f_all),
            d3(r.conf),
            d3(r.corr),
            d3(r.q)
        );
    }
}

/// JSON of the rules without raw support counts: identical for any uniform
/// duplication of the database.
pub fn ratio_json(rules: &[RuleRecord]) -> String {
    let mut value = serde_json::to_value(rules).expect("rules serialize");
    if let serde_json::Value::Array(items) = &mut value {
        for item in items {
            if let serde_json::Value::Object(map) = item {
                map.remove("sup_k");
                map.remove("sup");
            }
        }
    }
    serde_json::to_string(&value).expect("rules serialize")
}

/// JSON of the rules including counts.
pub fn rules_json(rules: &[RuleRecord]) -> String {
    serde_json::to_string(rules).expect("rules serialize")
}
