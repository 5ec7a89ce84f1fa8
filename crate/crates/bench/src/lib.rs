//! Benchmarks for `zetabound`; see `benches/evaluators.rs`.
