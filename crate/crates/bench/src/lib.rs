//! Benchmark-only crate; the measured workloads live in `benches/`.
//!
//! Run with `cargo bench -p spinsqueeze-bench`.
