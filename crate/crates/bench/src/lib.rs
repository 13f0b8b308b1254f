//! Benchmark-only crate; see `benches/merge.rs`.
//!
//! Run with `cargo bench -p convcode-bench` (or `cargo bench --no-run` to
//! just compile the harness).
