//! Exact homological complexity invariants over artinian local algebras.
//!
//! The crate realizes a local algebra `R = k[x]/(I + m^cap)` over a prime
//! field together with finitely generated modules as k-spaces carrying
//! commuting nilpotent actions. On top of that it computes minimal free
//! resolutions, truncated Ext/Tor tables, polynomial growth classes of the
//! resulting sequences, and a suite of executable checks relating them.

pub mod algebra;
pub mod checks;
pub mod error;
pub mod fixtures;
pub mod growth;
pub mod homology;
pub mod linalg;
pub mod module;
pub mod poly;
pub mod resolution;

pub use algebra::{AlgebraSpec, ArtinAlgebra, IdealSubspace, RingElement};
pub use error::{Error, Result};
pub use linalg::{Matrix, PrimeField};
pub use module::{ModulePresentation, ModuleRep, PresentationSpec, Submodule};
pub use resolution::{betti, minimal_free_resolution, syzygy, verify_resolution, FreeResolution, Resolver};
pub use homology::{bass_numbers, ext_table, tor_table, HomologyKind, HomologyTable};
pub use growth::{classify, cx_mod, cx_pair, detect_recurrence, px_mod, GrowthClass, GrowthTag, RecurrenceModel};
