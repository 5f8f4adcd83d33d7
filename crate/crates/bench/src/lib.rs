//! Benchmark harness for `thetagraph-core`; see `benches/theta.rs`.

pub use thetagraph_core as core;
