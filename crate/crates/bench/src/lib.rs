//! Criterion benchmarks for the objectives and the engine loop; see `benches/`.
