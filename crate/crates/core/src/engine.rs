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

//! Rule search: correlation-driven candidates, level-by-level premise
//! expansion, and negative rules.

use serde::{Deserialize, Serialize};

use crate::bitcode::BitCode;
use crate::error::{Error, Result};
use crate::metrics::{compute_metrics, single_property_supports, support, CriteriaWeights, RuleMetrics};
use crate::preprocess::PartitionedDatabase;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MiningConfig {
    /// Correlation a single property must exceed to become a candidate, and
    /// an expanded rule must reach to be kept.
    pub min_corr: f64,
    /// Rules at or above this correlation are not expanded further.
    pub corr_stop: f64,
    /// Rules with `f_all` below this floor are kept but not expanded.
    pub min_f_all: f64,
    pub weights: CriteriaWeights,
    /// Single-property rules at or below this correlation are reported as
    /// negative rules.
    pub neg_corr: f64,
    pub max_premise_len: Option<usize>,
}

impl Default for MiningConfig {
    fn default() -> Self {
        MiningConfig {
            min_corr: 0.35,
            corr_stop: 1.0,
            min_f_all: 0.01,
            weights: CriteriaWeights::default(),
            neg_corr: -0.35,
            max_premise_len: None,
        }
    }
}

impl MiningConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if !(self.min_corr > 0.0 && self.min_corr <= 1.0) {
            return bad(format!("min_corr {} must lie in (0, 1]", self.min_corr));
        }
        if !(self.corr_stop > 0.0 && self.corr_stop <= 1.0) {
            return bad(format!("corr_stop {} must lie in (0, 1]", self.corr_stop));
        }
        if self.min_corr > self.corr_stop {
            return bad(format!("min_corr {} exceeds corr_stop {}", self.min_corr, self.corr_stop));
        }
        if !(0.0..=1.0).contains(&self.min_f_all) {
            return bad(format!("min_f_all {} must lie in [0, 1]", self.min_f_all));
        }
        if !(self.neg_corr >= -1.0 && self.neg_corr < 0.0) {
            return bad(format!("neg_corr {} must lie in [-1, 0)", self.neg_corr));
        }
        if self.max_premise_len == Some(0) {
            return bad("max_premise_len must be at least 1".into());
        }
        self.weights.validate()
    }
}

/// The rule `premise => Goal_goal` (or `premise => not Goal_goal` when
/// `negative`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rule {
    pub premise: BitCode,
    pub premise_len: usize,
    pub goal: usize,
    pub sup_k: u64,
    pub sup: u64,
    pub metrics: RuleMetrics,
    #[serde(rename = "final")]
    pub is_final: bool,
    pub negative: bool,
}

impl Rule {
    /// Builds a non-final positive rule from support counts.
    pub fn from_counts(
        premise: BitCode,
        goal: usize,
        sup_k: u64,
        sup: u64,
        db: &PartitionedDatabase,
        weights: &CriteriaWeights,
    ) -> Result<Rule> {
        let n_k = db.partition_sizes()[goal] as u64;
        let metrics = compute_metrics(sup_k, sup, n_k, db.len() as u64, weights)?;
        Ok(Rule {
            premise_len: premise.count_ones(),
            premise,
            goal,
            sup_k,
            sup,
            metrics,
            is_final: false,
            negative: false,
        })
    }
}

/// Mined rules per goal, each list in (premise length, premise code) order.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RuleSet {
    pub positive: Vec<Vec<Rule>>,
    pub negative: Vec<Vec<Rule>>,
}

impl RuleSet {
    pub fn new(goals: usize) -> Self {
        RuleSet { positive: vec![Vec::new(); goals], negative: vec![Vec::new(); goals] }
    }

    pub fn goal_count(&self) -> usize {
        self.positive.len()
    }

    pub fn positive_rules(&self) -> impl Iterator<Item = &Rule> {
        self.positive.iter().flatten()
    }

    pub fn negative_rules(&self) -> impl Iterator<Item = &Rule> {
        self.negative.iter().flatten()
    }

    pub fn positive_count(&self) -> usize {
        self.positive.iter().map(Vec::len).sum()
    }

    pub fn negative_count(&self) -> usize {
        self.negative.iter().map(Vec::len).sum()
    }

    pub fn find(&self, goal: usize, premise: &BitCode) -> Option<&Rule> {
        let rules = self.positive.get(goal)?;
        rules.iter().find(|r| &r.premise == premise)
    }

    /// Sorts every list into canonical order.
    pub fn canonicalize(&mut self) {
        for list in self.positive.iter_mut().chain(self.negative.iter_mut()) {
            sort_canonical(list);
        }
    }
}

pub fn sort_canonical(rules: &mut [Rule]) {
    rules.sort_by(|a, b| a.premise_len.cmp(&b.premise_len).then_with(|| a.premise.cmp(&b.premise)));
}

fn has_eligible(premise: &BitCode, candidates: &[Rule]) -> bool {
    candidates.last().is_some_and(|c| c.premise > *premise)
}

fn mark_final(rule: &mut Rule, candidates: &[Rule], config: &MiningConfig) {
    rule.is_final = rule.metrics.correlation >= config.corr_stop
        || rule.metrics.f_all < config.min_f_all
        || !has_eligible(&rule.premise, candidates);
}

/// Goals that can carry an association: non-empty and not the whole table.
fn informative_goal(db: &PartitionedDatabase, goal: usize) -> bool {
    let n_k = db.partition_sizes()[goal];
    n_k > 0 && n_k < db.len()
}

/// Single-property rules per goal whose correlation exceeds `min_corr`,
/// ascending by code, finality already set.
pub fn create_candidates(db: &PartitionedDatabase, config: &MiningConfig) -> Vec<Vec<Rule>> {
    let singles = single_property_supports(db);
    (0..db.goal_count())
        .map(|goal| {
            if !informative_goal(db, goal) {
                return Vec::new();
            }
            let mut candidates: Vec<Rule> = (0..db.property_count())
                .filter_map(|i| {
                    let sup: u64 = singles.iter().map(|s| s[i]).sum();
                    let rule =
                        Rule::from_counts(BitCode::bit(i), goal, singles[goal][i], sup, db, &config.weights).ok()?;
                    (rule.metrics.correlation > config.min_corr).then_some(rule)
                })
                .collect();
            let top = candidates.last().map(|c| c.premise.clone());
            for c in &mut candidates {
                c.is_final = c.metrics.correlation >= config.corr_stop
                    || c.metrics.f_all < config.min_f_all
                    || top.as_ref().is_none_or(|top| *top <= c.premise);
            }
            candidates
        })
        .collect()
}

/// Candidates that may extend `rule`: those whose code exceeds the premise
/// code, i.e. whose property index is above every index in the premise.
pub fn eligible_candidates<'a>(rule: &Rule, candidates: &'a [Rule]) -> &'a [Rule] {
    let first = candidates.partition_point(|c| c.premise <= rule.premise);
    &candidates[first..]
}

/// Extends `rule` by an eligible `candidate`. Returns the new rule when its
/// premise occurs at all and its correlation reaches `min_corr`.
pub fn expand(
    rule: &Rule,
    candidate: &Rule,
    db: &PartitionedDatabase,
    config: &MiningConfig,
    candidates: &[Rule],
) -> Option<Rule> {
    // Bits are disjoint, so addition is union.
    let premise = &rule.premise + &candidate.premise;
    let s = support(&premise, db);
    if s.total == 0 {
        return None;
    }
    let mut next = Rule::from_counts(premise, rule.goal, s.per_goal[rule.goal], s.total, db, &config.weights).ok()?;
    if next.metrics.correlation < config.min_corr {
        return None;
    }
    mark_final(&mut next, candidates, config);
    Some(next)
}

fn expand_level(
    current: &[Vec<Rule>],
    candidates: &[Vec<Rule>],
    db: &PartitionedDatabase,
    config: &MiningConfig,
) -> Vec<Vec<Rule>> {
    let jobs: Vec<(&Rule, &Rule)> = current
        .iter()
        .zip(candidates)
        .flat_map(|(rules, cands)| {
            rules
                .iter()
                .filter(|r| !r.is_final)
                .flat_map(move |r| eligible_candidates(r, cands).iter().map(move |c| (r, c)))
        })
        .collect();
    let run = |&(r, c): &(&Rule, &Rule)| expand(r, c, db, config, &candidates[r.goal]);
    #[cfg(feature = "parallel")]
    let results: Vec<Option<Rule>> = {
        use rayon::prelude::*;
        jobs.par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<Option<Rule>> = jobs.iter().map(run).collect();

    let mut next = vec![Vec::new(); current.len()];
    for rule in results.into_iter().flatten() {
        next[rule.goal].push(rule);
    }
    for list in &mut next {
        sort_canonical(list);
    }
    next
}

/// Mines positive rules: candidates, then the closure under expansion of
/// non-final rules, one premise length at a time.
pub fn mine(db: &PartitionedDatabase, config: &MiningConfig) -> RuleSet {
    let candidates = create_candidates(db, config);
    let mut set = RuleSet::new(db.goal_count());
    let mut current = candidates.clone();
    let mut level = 1;
    loop {
        for (goal, rules) in current.iter().enumerate() {
            set.positive[goal].extend(rules.iter().cloned());
        }
        if config.max_premise_len.is_some_and(|cap| level >= cap) {
            break;
        }
        let next = expand_level(&current, &candidates, db, config);
        if next.iter().all(Vec::is_empty) {
            break;
        }
        current = next;
        level += 1;
    }
    set.canonicalize();
    set
}

/// Single-property rules `Y => not Goal_k` with correlation at or below
/// `neg_corr`, per goal, ascending by code.
pub fn mine_negative(db: &PartitionedDatabase, config: &MiningConfig) -> Vec<Vec<Rule>> {
    let singles = single_property_supports(db);
    (0..db.goal_count())
        .map(|goal| {
            if !informative_goal(db, goal) {
                return Vec::new();
            }
            (0..db.property_count())
                .filter_map(|i| {
                    let sup: u64 = singles.iter().map(|s| s[i]).sum();
                    let mut rule =
                        Rule::from_counts(BitCode::bit(i), goal, singles[goal][i], sup, db, &config.weights).ok()?;
                    (rule.metrics.correlation <= config.neg_corr).then(|| {
                        rule.negative = true;
                        rule.is_final = true;
                        rule
                    })
                })
                .collect()
        })
        .collect()
}

/// Positive rules plus negative rules in one set.
pub fn mine_all(db: &PartitionedDatabase, config: &MiningConfig) -> RuleSet {
    let mut set = mine(db, config);
    set.negative = mine_negative(db, config);
    set
}
