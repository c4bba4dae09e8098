//! Orbit decomposition of the arc space of a toric variety, and contact loci
//! of invariant monomial ideals, computed in exact integer arithmetic.
//!
//! * [`lattice`]: the lattices `N` and `M`, the pairing, quotients `N_τ`.
//! * [`cones`]: cones, fans, dual cones, faces, Hilbert bases, the order `≤_σ`.
//! * [`arcs`]: orbit labels, semigroup homomorphisms, dominance and deformation witnesses.
//! * [`ideals`]: order functions, Newton data, contact-locus components, valuations.
//! * [`cli`]: the JSON batch interface behind the `toric-arcs` binary.

pub mod arcs;
pub mod cli;
pub mod cones;
pub mod error;
pub mod ideals;
pub mod lattice;

pub use error::{Error, Result};
pub use lattice::{Extended, LatticeVector, QuotientLattice, Side};
