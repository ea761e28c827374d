//! Criterion benchmarks for the exactfact algorithms live in `benches/`.
