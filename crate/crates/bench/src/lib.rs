//! Criterion benchmarks for the ordprop library live under `benches/`.
