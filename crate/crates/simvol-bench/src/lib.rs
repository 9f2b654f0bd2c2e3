//! Benchmark host crate.  All content lives in `benches/`; this library is
//! intentionally empty.
