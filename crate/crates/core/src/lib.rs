//! Associated primes, depth, and their stabilization indices for powers of
//! monomial ideals, with fast paths for polymatroidal ideals and independent
//! oracles (irreducible decomposition, colon scans, upper Koszul homology) that
//! apply to any monomial ideal.
//!
//! Variables are 0-based in the API and 1-based in every text and JSON format.

pub mod decomposition;
pub mod error;
pub mod families;
pub mod format;
pub mod homology;
pub mod monomial;
pub mod stability;
pub mod structure;
pub mod verify;

pub use decomposition::{associated_primes, irreducible_decomposition, AssociatedPrimesSet, IrreducibleComponent};
pub use error::{Error, Result};
pub use format::{format_ideal, parse_ideal, parse_ideals};
pub use homology::{betti_table, depth_oracle, BettiTable, HomologyBudget};
pub use monomial::{Monomial, MonomialIdeal, MonomialPrime};
pub use stability::{astab, dstab, power_trace, stability_report, StabilityIndex, StabilityOptions, StabilityReport};
pub use structure::{analytic_spread, is_matroidal, is_polymatroidal, linear_relation_graph, LinearRelationGraph};
