//! Benchmark-only package; see benches/growth.rs.
