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

//! Brute-force reference miner over explicit property sets.
//!
//! Nothing here touches the bit-code support or expansion kernels: records
//! and premises are `BTreeSet`s and containment is set inclusion. Bit codes
//! appear only when results are converted into [`Rule`]s for comparison.

use std::collections::BTreeSet;

use crate::bitcode::BitCode;
use crate::engine::{sort_canonical, MiningConfig, Rule, RuleSet};
use crate::error::{Error, Result};
use crate::metrics::{compute_metrics, SupportResult};
use crate::preprocess::{EncodedRecord, PartitionedDatabase, PropertyCatalog};

pub type PropertySet = BTreeSet<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetRecord {
    pub properties: PropertySet,
    pub goal: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetDatabase {
    pub records: Vec<SetRecord>,
    pub goal_count: usize,
    pub property_count: usize,
}

impl SetDatabase {
    pub fn new(records: Vec<SetRecord>, goal_count: usize, property_count: usize) -> Self {
        SetDatabase { records, goal_count, property_count }
    }

    pub fn from_partitioned(db: &PartitionedDatabase) -> Self {
        let records = db.iter().map(|(goal, r)| SetRecord { properties: r.code.ones().collect(), goal }).collect();
        SetDatabase::new(records, db.goal_count(), db.property_count())
    }

    /// Encodes into a bit-code database with a generic catalog.
    pub fn to_partitioned(&self) -> Result<PartitionedDatabase> {
        self.to_partitioned_with(PropertyCatalog::generic(self.property_count))
    }

    pub fn to_partitioned_with(&self, catalog: PropertyCatalog) -> Result<PartitionedDatabase> {
        let labels = (0..self.goal_count).map(|g| format!("Goal{g}")).collect();
        let records = self
            .records
            .iter()
            .map(|r| (EncodedRecord::new(BitCode::from_indices(r.properties.iter().copied())), r.goal));
        PartitionedDatabase::from_records(catalog, labels, records)
    }

    pub fn partition_sizes(&self) -> Vec<u64> {
        let mut sizes = vec![0; self.goal_count];
        for r in &self.records {
            sizes[r.goal] += 1;
        }
        sizes
    }

    /// Every record repeated `factor` times.
    pub fn duplicated(&self, factor: usize) -> Self {
        let records = self.records.iter().flat_map(|r| std::iter::repeat_n(r.clone(), factor)).collect();
        SetDatabase::new(records, self.goal_count, self.property_count)
    }
}

pub fn oracle_support(premise: &PropertySet, db: &SetDatabase) -> SupportResult {
    let mut per_goal = vec![0u64; db.goal_count];
    for r in &db.records {
        if premise.is_subset(&r.properties) {
            per_goal[r.goal] += 1;
        }
    }
    let total = per_goal.iter().sum();
    SupportResult { per_goal, total }
}

fn to_code(premise: &PropertySet) -> BitCode {
    BitCode::from_indices(premise.iter().copied())
}

struct Context<'a> {
    db: &'a SetDatabase,
    sizes: Vec<u64>,
    n: u64,
    config: &'a MiningConfig,
}

impl<'a> Context<'a> {
    fn new(db: &'a SetDatabase, config: &'a MiningConfig) -> Self {
        let sizes = db.partition_sizes();
        let n = db.records.len() as u64;
        Context { db, sizes, n, config }
    }

    fn informative(&self, goal: usize) -> bool {
        self.sizes[goal] > 0 && self.sizes[goal] < self.n
    }

    /// The rule `premise => goal`, `None` when the premise never occurs.
    fn rule(&self, premise: &PropertySet, goal: usize) -> Option<Rule> {
        let s = oracle_support(premise, self.db);
        if s.total == 0 || self.sizes[goal] == 0 {
            return None;
        }
        let metrics =
            compute_metrics(s.per_goal[goal], s.total, self.sizes[goal], self.n, &self.config.weights).ok()?;
        Some(Rule {
            premise: to_code(premise),
            premise_len: premise.len(),
            goal,
            sup_k: s.per_goal[goal],
            sup: s.total,
            metrics,
            is_final: false,
            negative: false,
        })
    }

    fn candidates(&self, goal: usize) -> Vec<(usize, Rule)> {
        if !self.informative(goal) {
            return Vec::new();
        }
        (0..self.db.property_count)
            .filter_map(|i| {
                let r = self.rule(&BTreeSet::from([i]), goal)?;
                (r.metrics.correlation > self.config.min_corr).then_some((i, r))
            })
            .collect()
    }

    fn is_final(&self, rule: &Rule, premise: &PropertySet, candidate_indices: &[usize]) -> bool {
        let top = *premise.last().expect("premises are non-empty");
        rule.metrics.correlation >= self.config.corr_stop
            || rule.metrics.f_all < self.config.min_f_all
            || !candidate_indices.iter().any(|&c| c > top)
    }
}

/// Reference search with the engine's semantics, goal by goal.
pub fn oracle_mine(db: &SetDatabase, config: &MiningConfig) -> RuleSet {
    let ctx = Context::new(db, config);
    let mut set = RuleSet::new(db.goal_count);
    for goal in 0..db.goal_count {
        let candidates = ctx.candidates(goal);
        let indices: Vec<usize> = candidates.iter().map(|(i, _)| *i).collect();
        let mut level: Vec<(PropertySet, Rule)> = candidates
            .into_iter()
            .map(|(i, mut r)| {
                let premise = BTreeSet::from([i]);
                r.is_final = ctx.is_final(&r, &premise, &indices);
                (premise, r)
            })
            .collect();
        let mut len = 1;
        while !level.is_empty() {
            set.positive[goal].extend(level.iter().map(|(_, r)| r.clone()));
            if config.max_premise_len.is_some_and(|cap| len >= cap) {
                break;
            }
            let mut next = Vec::new();
            for (premise, rule) in &level {
                if rule.is_final {
                    continue;
                }
                let top = *premise.last().expect("non-empty");
                for &c in indices.iter().filter(|&&c| c > top) {
                    let mut extended = premise.clone();
                    extended.insert(c);
                    let Some(mut r) = ctx.rule(&extended, goal) else { continue };
                    if r.metrics.correlation < config.min_corr {
                        continue;
                    }
                    r.is_final = ctx.is_final(&r, &extended, &indices);
                    next.push((extended, r));
                }
            }
            level = next;
            len += 1;
        }
        sort_canonical(&mut set.positive[goal]);
    }
    set
}

/// Premise evaluations above which [`oracle_enumerate`] refuses to run.
pub const ENUMERATION_LIMIT: u128 = 1 << 24;

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

fn subsets_up_to(m: usize, max_len: usize) -> Vec<PropertySet> {
    let mut out: Vec<PropertySet> = Vec::new();
    let mut frontier: Vec<PropertySet> = (0..m).map(|i| BTreeSet::from([i])).collect();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for s in &frontier {
            let top = *s.last().expect("non-empty");
            for i in top + 1..m {
                let mut t = s.clone();
                t.insert(i);
                next.push(t);
            }
        }
        out.append(&mut frontier);
        frontier = next;
    }
    out
}

/// Every rule with premise length `1..=max_len` and positive support, for
/// every non-empty goal, with full metrics and no thresholds. Finality flags
/// are left unset.
pub fn oracle_enumerate(db: &SetDatabase, max_len: usize, config: &MiningConfig) -> Result<Vec<Rule>> {
    let m = db.property_count;
    let per_goal: u128 = (1..=max_len.min(m)).map(|l| binomial(m, l)).sum();
    let estimated = per_goal * db.goal_count as u128;
    if estimated > ENUMERATION_LIMIT {
        return Err(Error::InfeasibleEnumeration { estimated, limit: ENUMERATION_LIMIT });
    }
    let ctx = Context::new(db, config);
    let premises = subsets_up_to(m, max_len.min(m));
    let mut rules = Vec::new();
    for goal in 0..db.goal_count {
        let mut goal_rules: Vec<Rule> = premises.iter().filter_map(|p| ctx.rule(p, goal)).collect();
        sort_canonical(&mut goal_rules);
        rules.extend(goal_rules);
    }
    Ok(rules)
}

/// Why the search does not produce a rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AbsenceReason {
    /// The goal is empty or covers the whole database.
    UninformativeGoal,
    LengthCap,
    /// A premise property is not a candidate for this goal.
    NotACandidate(usize),
    /// The prefix of this length never occurs.
    NoSupport(usize),
    /// The prefix of this length falls below `min_corr`.
    BelowThreshold(usize),
    /// The prefix of this length is final and was never expanded.
    ParentFinal(usize),
}

/// Explains why `premise => goal` is missing from the search output by
/// walking its unique ascending generation chain. `None` means the rule
/// should have been produced.
pub fn explain_absence(
    db: &SetDatabase,
    premise: &PropertySet,
    goal: usize,
    config: &MiningConfig,
) -> Option<AbsenceReason> {
    let ctx = Context::new(db, config);
    if !ctx.informative(goal) {
        return Some(AbsenceReason::UninformativeGoal);
    }
    if config.max_premise_len.is_some_and(|cap| premise.len() > cap) {
        return Some(AbsenceReason::LengthCap);
    }
    let indices: Vec<usize> = ctx.candidates(goal).into_iter().map(|(i, _)| i).collect();
    if let Some(&p) = premise.iter().find(|p| !indices.contains(p)) {
        return Some(AbsenceReason::NotACandidate(p));
    }
    let mut prefix = PropertySet::new();
    for (l, &p) in premise.iter().enumerate() {
        let len = l + 1;
        prefix.insert(p);
        let Some(rule) = ctx.rule(&prefix, goal) else {
            return Some(AbsenceReason::NoSupport(len));
        };
        if len > 1 && rule.metrics.correlation < config.min_corr {
            return Some(AbsenceReason::BelowThreshold(len));
        }
        if len < premise.len() && ctx.is_final(&rule, &prefix, &indices) {
            return Some(AbsenceReason::ParentFinal(len));
        }
    }
    None
}
