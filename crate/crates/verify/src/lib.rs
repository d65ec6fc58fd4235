//! Acceptance suite for `beltrami`. The checks live in `tests/acceptance.rs`.
