//! Criterion benchmarks for `quasifold-core`; see `benches/core.rs`.
