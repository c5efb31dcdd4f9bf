//! Exact bipartite entanglement of formation for logically pure
//! permutationally invariant (PI) spin-1/2 ensembles.
//!
//! A logically pure PI state lives in a single total-spin sector `J` of `N`
//! spins, with amplitudes `c_M` shared by every degenerate copy of the
//! sector. Splitting the ensemble into `n` and `N - n` spins decomposes each
//! copy into subensemble blocks `(j1, j2)`; the entanglement of formation is
//! the degeneracy-weighted average of the block entanglement entropies.
//!
//! Modules:
//! - [`numerics`]: half-integers, exact rationals, entropy, Hermitian spectra.
//! - [`angular`]: degeneracies, subensemble pairs, exact Clebsch-Gordan values.
//! - [`states`]: PI state builders (eigenstates, GHZ-like, squeezed, custom).
//! - [`entanglement`]: reduced blocks, E_F, closed forms, bounds.
//! - [`oracle`]: brute-force full-Hilbert-space validator for small `N`.
//! - [`cli`]: CSV sweeps and point queries behind the `pi-entangle` binary.

pub mod angular;
pub mod cli;
pub mod entanglement;
mod error;
pub mod numerics;
pub mod oracle;
pub mod par;
pub mod states;

pub use error::{Error, Result};
pub use numerics::{ExactRational, HalfInt, HermitianMatrix};
