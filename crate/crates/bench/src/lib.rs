//! Criterion benchmarks for `rico-core`; see `benches/`.
