//! Criterion benchmarks for the pipedyn field evaluators live in `benches/`.
