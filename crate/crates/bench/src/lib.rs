//! Criterion benchmarks for the exact and numeric geometry kernels; see
//! `benches/geometry.rs`. Run with `cargo bench -p hyperlie-bench`.
