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

//! Thread-count independence and duplication invariance.

use apriori_goal::{mine_all, synth, threads, MiningConfig, RuleSet};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn strip_counts(rules: &RuleSet) -> Vec<(usize, String, [u64; 6], bool, bool)> {
    rules
        .positive_rules()
        .chain(rules.negative_rules())
        .map(|r| {
            let m = &r.metrics;
            let bits = [m.f_g, m.f_all, m.confidence, m.lift, m.correlation, m.quality].map(f64::to_bits);
            (r.goal, r.premise.to_string(), bits, r.is_final, r.negative)
        })
        .collect()
}

#[test]
fn thread_count_does_not_change_rules() {
    let config = MiningConfig { min_corr: 0.1, ..MiningConfig::default() };
    for seed in 0..10u64 {
        let mut rng = StdRng::seed_from_u64(seed);
        let db = synth::one_hot(&mut rng, &[3, 3, 4, 2, 5], 20_000, 3).to_partitioned().unwrap();
        let one = threads::with_threads(1, || mine_all(&db, &config));
        for workers in [2, 4, 7] {
            assert_eq!(threads::with_threads(workers, || mine_all(&db, &config)), one);
        }
    }
}

#[test]
fn duplication_keeps_every_ratio_bit_for_bit() {
    let config = MiningConfig { min_corr: 0.1, min_f_all: 0.02, ..MiningConfig::default() };
    for seed in 0..20u64 {
        let mut rng = StdRng::seed_from_u64(seed);
        let db = synth::biased_sets(&mut rng, 12, 64, 3).to_partitioned().unwrap();
        let base = mine_all(&db, &config);
        for factor in [2, 7, 100] {
            let big = mine_all(&db.duplicated(factor), &config);
            assert_eq!(strip_counts(&big), strip_counts(&base));
            for (b, r) in big.positive_rules().zip(base.positive_rules()) {
                assert_eq!((b.sup_k, b.sup), (r.sup_k * factor as u64, r.sup * factor as u64));
            }
        }
    }
}

#[test]
fn record_order_within_the_table_does_not_matter() {
    use apriori_goal::preprocess;
    use apriori_goal::MissingPolicy;
    let mut rng = StdRng::seed_from_u64(3);
    let (description, csv) = synth::random_table(&mut rng, &[2, 3, 4], 500, 3);
    let mut lines: Vec<&str> = csv.lines().collect();
    let header = lines.remove(0);
    lines.reverse();
    let reversed = std::iter::once(header).chain(lines).collect::<Vec<_>>().join("\n") + "\n";
    let a = preprocess(csv.as_bytes(), &description, MissingPolicy::Error).unwrap().database;
    let b = preprocess(reversed.as_bytes(), &description, MissingPolicy::Error).unwrap().database;
    let config = MiningConfig { min_corr: 0.05, ..MiningConfig::default() };
    assert_eq!(strip_counts(&mine_all(&a, &config)), strip_counts(&mine_all(&b, &config)));
}
