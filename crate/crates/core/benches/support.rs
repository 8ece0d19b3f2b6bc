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

//! Support counting: sequential scan against the rayon scan.

use apriori_goal::{support_sequential, synth, BitCode, PartitionedDatabase};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn database(records: usize, properties: usize) -> PartitionedDatabase {
    let mut rng = StdRng::seed_from_u64(42);
    let columns = vec![3; properties / 3];
    synth::one_hot(&mut rng, &columns, records, 3).to_partitioned().unwrap()
}

fn bench_support(c: &mut Criterion) {
    let mut group = c.benchmark_group("support");
    for (records, properties) in [(100_000, 30), (1_000_000, 30), (200_000, 210)] {
        let db = database(records, properties);
        let premise = BitCode::from_indices([0, 4, properties - 1]);
        let label = format!("{records}x{properties}");
        group.throughput(Throughput::Elements(records as u64));
        group.bench_with_input(BenchmarkId::new("sequential", &label), &db, |b, db| {
            b.iter(|| support_sequential(&premise, db))
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("parallel", &label), &db, |b, db| {
            b.iter(|| apriori_goal::support_parallel(&premise, db))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_support);
criterion_main!(benches);
