//! Angular-momentum combinatorics for spin-1/2 ensembles.

mod cg;
mod degeneracy;
mod factorial;
mod pairs;

pub use cg::{cg, cg_row, clear_cg_cache, CgRow, CgValue};
pub use degeneracy::{degeneracy, j_min, validate_total_spin, DegeneracyTable};
pub use factorial::factorial;
pub use pairs::{allowed_pairs, SubensemblePair};
