//! Benchmarks for the coincidence engine; see `benches/engine.rs`.
