//! Empty library; this package only hosts the criterion benchmarks.
