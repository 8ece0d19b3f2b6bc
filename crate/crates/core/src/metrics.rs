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

//! Support counting and rule-quality criteria.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitcode::BitCode;
use crate::error::{Error, Result};
use crate::preprocess::PartitionedDatabase;

/// Records per work item when a partition is split across workers.
#[cfg(feature = "parallel")]
const CHUNK_RECORDS: usize = 1 << 14;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportResult {
    /// `sup_k`: records of partition `k` containing the premise.
    pub per_goal: Vec<u64>,
    /// `sup`: records anywhere containing the premise.
    pub total: u64,
}

impl SupportResult {
    fn from_counts(per_goal: Vec<u64>) -> Self {
        let total = per_goal.iter().sum();
        SupportResult { per_goal, total }
    }
}

/// Counts records (stride `words` limbs) that contain `premise`.
fn count_containing(records: &[u64], words: usize, premise: &[u64]) -> u64 {
    if words == 1 {
        let x = premise[0];
        return records.iter().filter(|&&r| r & x == x).count() as u64;
    }
    records.chunks_exact(words).filter(|r| premise.iter().zip(r.iter()).all(|(x, r)| x & r == *x)).count() as u64
}

fn premise_words(premise: &BitCode, db: &PartitionedDatabase) -> Option<Vec<u64>> {
    // A bit beyond the catalog is in no record.
    (premise.bit_len() <= db.property_count()).then(|| premise.to_words(db.words()))
}

/// Support of `premise` in each partition, on the calling thread only.
pub fn support_sequential(premise: &BitCode, db: &PartitionedDatabase) -> SupportResult {
    let Some(x) = premise_words(premise, db) else {
        return SupportResult::from_counts(vec![0; db.goal_count()]);
    };
    let per_goal = (0..db.goal_count()).map(|k| count_containing(db.partition_words(k), db.words(), &x)).collect();
    SupportResult::from_counts(per_goal)
}

/// Support of `premise`, one task per partition, large partitions split
/// into chunks. Counts are exact so the result is schedule independent.
#[cfg(feature = "parallel")]
pub fn support_parallel(premise: &BitCode, db: &PartitionedDatabase) -> SupportResult {
    use rayon::prelude::*;

    let Some(x) = premise_words(premise, db) else {
        return SupportResult::from_counts(vec![0; db.goal_count()]);
    };
    let words = db.words();
    let per_goal = (0..db.goal_count())
        .into_par_iter()
        .map(|k| {
            db.partition_words(k)
                .par_chunks(CHUNK_RECORDS * words)
                .map(|chunk| count_containing(chunk, words, &x))
                .sum()
        })
        .collect();
    SupportResult::from_counts(per_goal)
}

/// Support of `premise` over every goal partition.
pub fn support(premise: &BitCode, db: &PartitionedDatabase) -> SupportResult {
    #[cfg(feature = "parallel")]
    return support_parallel(premise, db);
    #[cfg(not(feature = "parallel"))]
    return support_sequential(premise, db);
}

fn add_bit_counts(records: &[u64], words: usize, counts: &mut [u64]) {
    for r in records.chunks_exact(words) {
        for (w, &limb) in r.iter().enumerate() {
            let mut bits = limb;
            while bits != 0 {
                counts[w * 64 + bits.trailing_zeros() as usize] += 1;
                bits &= bits - 1;
            }
        }
    }
}

/// Support of every single property in every partition, `[goal][property]`,
/// in one pass over the data. Equal to `support(2^i)` for each `i`.
pub fn single_property_supports(db: &PartitionedDatabase) -> Vec<Vec<u64>> {
    let m = db.property_count();
    let words = db.words();
    let width = words * 64;
    let count = |records: &[u64]| {
        let mut counts = vec![0u64; width];
        add_bit_counts(records, words, &mut counts);
        counts
    };
    let per_goal = (0..db.goal_count()).map(|k| db.partition_words(k));
    #[cfg(feature = "parallel")]
    let counts: Vec<Vec<u64>> = {
        use rayon::prelude::*;
        per_goal
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|part| {
                part.par_chunks(CHUNK_RECORDS * words).map(count).reduce(
                    || vec![0; width],
                    |mut a, b| {
                        a.iter_mut().zip(b).for_each(|(a, b)| *a += b);
                        a
                    },
                )
            })
            .collect()
    };
    #[cfg(not(feature = "parallel"))]
    let counts: Vec<Vec<u64>> = per_goal.map(count).collect();
    counts
        .into_iter()
        .map(|mut c| {
            c.truncate(m);
            c
        })
        .collect()
}

/// Weights of the quality criterion; all 1 by default.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriteriaWeights {
    pub f_all: f64,
    pub f_g: f64,
    pub confidence: f64,
    pub correlation: f64,
}

impl Default for CriteriaWeights {
    fn default() -> Self {
        CriteriaWeights { f_all: 1.0, f_g: 1.0, confidence: 1.0, correlation: 1.0 }
    }
}

impl CriteriaWeights {
    pub fn new(f_all: f64, f_g: f64, confidence: f64, correlation: f64) -> Result<Self> {
        let w = CriteriaWeights { f_all, f_g, confidence, correlation };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.f_all, self.f_g, self.confidence, self.correlation];
        if all.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidConfig("weights must be finite and non-negative".into()));
        }
        if all.iter().all(|w| *w == 0.0) {
            return Err(Error::InvalidConfig("at least one weight must be positive".into()));
        }
        Ok(())
    }
}

impl FromStr for CriteriaWeights {
    type Err = Error;

    /// Parses `p1,p2,p3,p4` (f_all, f_g, confidence, correlation).
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<f64> = s
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::InvalidConfig(format!("weights `{s}` are not four numbers")))?;
        match parts[..] {
            [a, b, c, d] => CriteriaWeights::new(a, b, c, d),
            _ => Err(Error::InvalidConfig(format!("expected four weights, got {}", parts.len()))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RuleMetrics {
    pub f_g: f64,
    pub f_all: f64,
    pub confidence: f64,
    pub lift: f64,
    pub correlation: f64,
    pub quality: f64,
}

/// Piecewise-linear rescaling of lift onto [-1, 1]: `lift - 1` up to
/// independence, `(lift - 1) / (maxlift - 1)` above it.
pub fn correlation_from_lift(lift: f64, max_lift: f64) -> f64 {
    if lift <= 1.0 {
        lift - 1.0
    } else if max_lift <= 1.0 {
        // single-goal database: every premise is independent of the goal
        0.0
    } else {
        (lift - 1.0) / (max_lift - 1.0)
    }
}

/// All criteria of the rule `X => Goal_k` from exact support counts.
///
/// Every ratio is formed directly from integer counts, so duplicating the
/// database uniformly reproduces each value bit for bit.
pub fn compute_metrics(sup_k: u64, sup: u64, n_k: u64, n: u64, weights: &CriteriaWeights) -> Result<RuleMetrics> {
    if n_k == 0 {
        return Err(Error::EmptyPartition);
    }
    if sup == 0 {
        return Err(Error::NoSupport);
    }
    if n_k > n || sup_k > sup || sup_k > n_k || sup > n {
        return Err(Error::InvalidCounts(format!("sup_k={sup_k} sup={sup} n_k={n_k} N={n}")));
    }
    let f_g = sup_k as f64 / n_k as f64;
    let f_all = sup_k as f64 / n as f64;
    let confidence = sup_k as f64 / sup as f64;
    let max_lift = n as f64 / n_k as f64;
    let lift = if n_k == n { 1.0 } else { confidence * max_lift };
    let correlation = if n_k == n { 0.0 } else { correlation_from_lift(lift, max_lift) };
    let quality =
        weights.f_all * f_all + weights.f_g * f_g + weights.confidence * confidence + weights.correlation * correlation;
    Ok(RuleMetrics { f_g, f_all, confidence, lift, correlation, quality })
}

/// Correlation threshold above which confidence exceeds 0.5, for
/// `p = (N - n_k) / n_k`.
pub fn recommended_min_correlation(p: f64) -> Result<f64> {
    if !(p.is_finite() && p > 0.0) {
        return Err(Error::NonPositiveRatio(p));
    }
    Ok((p - 1.0) / (2.0 * p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preprocess::{EncodedRecord, PropertyCatalog};
    use proptest::prelude::*;

    fn db(partitions: &[&[u64]], m: usize) -> PartitionedDatabase {
        let records = partitions
            .iter()
            .enumerate()
            .flat_map(|(g, codes)| codes.iter().map(move |&c| (EncodedRecord::new(BitCode::from_u64(c)), g)));
        let labels = (0..partitions.len()).map(|g| format!("Goal{g}")).collect();
        PartitionedDatabase::from_records(PropertyCatalog::generic(m), labels, records).unwrap()
    }

    #[test]
    fn empty_premise_is_everywhere() {
        let d = db(&[&[5, 7], &[3]], 3);
        let s = support(&BitCode::zero(), &d);
        assert_eq!(s.per_goal, [2, 1]);
        assert_eq!(s.total, 3);
    }

    #[test]
    fn absent_property() {
        let d = db(&[&[5, 7], &[3]], 4);
        assert_eq!(support(&BitCode::bit(3), &d).per_goal, [0, 0]);
        // beyond the catalog entirely
        assert_eq!(support(&BitCode::bit(200), &d).total, 0);
    }

    #[test]
    fn containment_by_partition() {
        // 5 ⊆ 5, 5 ⊆ 7, 5 ⊄ 3
        let d = db(&[&[5, 7], &[3]], 3);
        let s = support(&BitCode::from_u64(5), &d);
        assert_eq!(s.per_goal, [2, 0]);
        assert_eq!(s.total, 2);
        assert_eq!(support_sequential(&BitCode::from_u64(5), &d), s);
    }

    #[test]
    fn multi_word_support() {
        let records = [
            (EncodedRecord::new(BitCode::from_indices([1, 65, 90])), 0),
            (EncodedRecord::new(BitCode::from_indices([1, 90])), 0),
            (EncodedRecord::new(BitCode::from_indices([65, 90])), 1),
        ];
        let d = PartitionedDatabase::from_records(PropertyCatalog::generic(91), vec!["a".into(), "b".into()], records)
            .unwrap();
        assert_eq!(support(&BitCode::from_indices([65, 90]), &d).per_goal, [1, 1]);
        assert_eq!(support(&BitCode::from_indices([1]), &d).per_goal, [2, 0]);
        let singles = single_property_supports(&d);
        assert_eq!(singles[0][90], 2);
        assert_eq!(singles[1][65], 1);
        assert_eq!(singles[0].len(), 91);
    }

    #[test]
    fn table_row_quality() {
        // BMI0 => Goal0: published criteria 0.353, 0.757, 0.658, 0.36.
        let q: f64 = 1.0 * 0.353 + 1.0 * 0.757 + 1.0 * 0.658 + 1.0 * 0.36;
        assert!((q - 2.128).abs() < 1e-9);
        // The same row from counts: 156 of 206 goal records, 237 overall, N = 442.
        let m = compute_metrics(156, 237, 206, 442, &CriteriaWeights::default()).unwrap();
        assert!((m.f_g - 0.757).abs() < 5e-4);
        assert!((m.f_all - 0.353).abs() < 5e-4);
        assert!((m.confidence - 0.658).abs() < 5e-4);
        assert!((m.correlation - 0.36).abs() < 5e-3);
        assert!((m.quality - 2.128).abs() < 5e-3);
    }

    #[test]
    fn correlation_critical_points() {
        let w = CriteriaWeights::default();
        // lift = 1: 10 of 40 premise records in a 25% partition
        let m = compute_metrics(10, 40, 25, 100, &w).unwrap();
        assert_eq!(m.lift, 1.0);
        assert_eq!(m.correlation, 0.0);
        assert_eq!(correlation_from_lift(1.0, 4.0), 0.0);
        // premise only inside the goal partition
        let m = compute_metrics(7, 7, 25, 100, &w).unwrap();
        assert_eq!(m.confidence, 1.0);
        assert_eq!(m.lift, 4.0);
        assert_eq!(m.correlation, 1.0);
        // premise never inside the goal partition
        let m = compute_metrics(0, 9, 25, 100, &w).unwrap();
        assert_eq!((m.confidence, m.lift, m.correlation), (0.0, 0.0, -1.0));
    }

    #[test]
    fn metric_errors() {
        let w = CriteriaWeights::default();
        assert!(matches!(compute_metrics(0, 0, 5, 10, &w), Err(Error::NoSupport)));
        assert!(matches!(compute_metrics(0, 1, 0, 10, &w), Err(Error::EmptyPartition)));
        assert!(matches!(compute_metrics(3, 2, 5, 10, &w), Err(Error::InvalidCounts(_))));
        assert!(compute_metrics(0, 1, 0, 10, &w).unwrap_err().to_string().contains("empty goal partition"));
    }

    #[test]
    fn single_goal_database_has_zero_correlation() {
        let m = compute_metrics(4, 4, 10, 10, &CriteriaWeights::default()).unwrap();
        assert_eq!(m.lift, 1.0);
        assert_eq!(m.correlation, 0.0);
    }

    #[test]
    fn weight_projection() {
        let w: CriteriaWeights = "0,0,1,0".parse().unwrap();
        let m = compute_metrics(3, 5, 10, 30, &w).unwrap();
        assert_eq!(m.quality, m.confidence);
        assert!("1,2,3".parse::<CriteriaWeights>().is_err());
        assert!("0,0,0,0".parse::<CriteriaWeights>().is_err());
        assert!("1,-1,0,0".parse::<CriteriaWeights>().is_err());
    }

    #[test]
    fn recommended_threshold() {
        assert_eq!(recommended_min_correlation(2.0).unwrap(), 0.25);
        assert_eq!(recommended_min_correlation(1.0).unwrap(), 0.0);
        assert_eq!(recommended_min_correlation(4.0).unwrap(), 0.375);
        assert!(recommended_min_correlation(0.0).is_err());
        assert!(recommended_min_correlation(-1.0).is_err());
    }

    fn counts() -> impl Strategy<Value = (u64, u64, u64, u64)> {
        (2u64..500).prop_flat_map(|n| {
            (1..n).prop_flat_map(move |n_k| {
                (1..=n).prop_flat_map(move |sup| {
                    let lo = sup.saturating_sub(n - n_k);
                    (lo..=sup.min(n_k)).prop_map(move |sup_k| (sup_k, sup, n_k, n))
                })
            })
        })
    }

    proptest! {
        #[test]
        fn linear_relations_and_ranges((sup_k, sup, n_k, n) in counts()) {
            let m = compute_metrics(sup_k, sup, n_k, n, &CriteriaWeights::default()).unwrap();
            let ratio = n_k as f64 / n as f64;
            prop_assert!((m.f_all - m.f_g * ratio).abs() <= 1e-12);
            prop_assert!((m.lift - m.confidence / ratio).abs() <= 1e-12);
            prop_assert!((0.0..=1.0).contains(&m.f_g));
            prop_assert!(m.f_all <= ratio + 1e-15);
            prop_assert!((-1.0..=1.0).contains(&m.correlation));
            prop_assert!(m.lift <= 1.0 / ratio + 1e-12);
            let q = m.f_all + m.f_g + m.confidence + m.correlation;
            prop_assert!((m.quality - q).abs() <= 1e-12);
        }

        #[test]
        fn correlation_monotone_in_lift(a in 0.0f64..10.0, b in 0.0f64..10.0, max in 1.01f64..10.0) {
            let (lo, hi) = if a <= b { (a.min(max), b.min(max)) } else { (b.min(max), a.min(max)) };
            prop_assert!(correlation_from_lift(lo, max) <= correlation_from_lift(hi, max));
        }

        #[test]
        fn high_correlation_implies_majority_confidence((sup_k, sup, n_k, n) in counts()) {
            let m = compute_metrics(sup_k, sup, n_k, n, &CriteriaWeights::default()).unwrap();
            let p = (n - n_k) as f64 / n_k as f64;
            // The bound presumes a positively correlated rule; for p < 1 the
            // threshold is negative.
            if m.correlation > 0.0 && m.correlation > recommended_min_correlation(p).unwrap() {
                prop_assert!(m.confidence > 0.5);
            }
        }

        #[test]
        fn parallel_and_sequential_agree(
            codes in proptest::collection::vec((0u64..256, 0usize..3), 1..200),
            premise in 0u64..256,
        ) {
            let records = codes.iter().map(|&(c, g)| (EncodedRecord::new(BitCode::from_u64(c)), g));
            let labels = (0..3).map(|g| g.to_string()).collect();
            let d = PartitionedDatabase::from_records(PropertyCatalog::generic(8), labels, records).unwrap();
            let x = BitCode::from_u64(premise);
            let s = support(&x, &d);
            prop_assert_eq!(&s, &support_sequential(&x, &d));
            for (k, &sk) in s.per_goal.iter().enumerate() {
                prop_assert!(sk as usize <= d.partition_sizes()[k]);
            }
            for i in 0..8 {
                let single = support_sequential(&BitCode::bit(i), &d);
                let all = single_property_supports(&d);
                prop_assert_eq!(single.per_goal, (0..3).map(|k| all[k][i]).collect::<Vec<_>>());
            }
        }

        #[test]
        fn support_anti_monotone(
            codes in proptest::collection::vec((0u64..64, 0usize..2), 1..80),
            x in 0u64..64,
            y in 0u64..64,
        ) {
            let records = codes.iter().map(|&(c, g)| (EncodedRecord::new(BitCode::from_u64(c)), g));
            let d = PartitionedDatabase::from_records(PropertyCatalog::generic(6), vec!["a".into(), "b".into()], records).unwrap();
            let (x, y) = (BitCode::from_u64(x), BitCode::from_u64(y));
            let sx = support(&x, &d);
            let sy = support(&y, &d);
            let sxy = support(&(&x | &y), &d);
            prop_assert!(sxy.total <= sx.total.min(sy.total));
            for k in 0..2 {
                prop_assert!(sxy.per_goal[k] <= sx.per_goal[k].min(sy.per_goal[k]));
            }
        }
    }
}
