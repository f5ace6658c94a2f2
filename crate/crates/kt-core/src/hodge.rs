//! Assembled invariants: placeholder.
