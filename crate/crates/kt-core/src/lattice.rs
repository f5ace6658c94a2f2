//! Fourier-sector analysis of the harmonic system: placeholder.
