//! Oscillator-sector solvability: placeholder.
