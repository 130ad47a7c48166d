//! Criterion benchmarks for `spinfluct`; see `benches/`.
