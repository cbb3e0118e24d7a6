//! Benchmarks for charmod-core; see `benches/`.
