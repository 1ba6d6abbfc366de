//! Finite-group computations over explicit multiplication tables.
//!
//! The crate centers on the generalized totient of a finite group G:
//! the number of elements whose order equals the exponent of G (for cyclic
//! groups this is the ordinary integer totient). On top of that it provides
//! complete subgroup-lattice enumeration, quotients and sections, Sylow
//! decomposition, two independent nilpotency tests, recognizers for the
//! p-group shapes relevant to totient divisibility, and structure checks for
//! minimal non-nilpotent (Schmidt) groups — everything needed to verify, by
//! exhaustive computation over a catalog of small groups, that nested
//! subgroups have dividing totients exactly when the group is nilpotent with
//! every Sylow subgroup cyclic, quaternion of order 8, or p x p.
//!
//! Data-parallel scans run on rayon when the `parallel` feature (default) is
//! enabled and fall back to sequential loops without it; results are
//! identical either way.

pub mod analysis;
pub mod arith;
pub mod catalog;
pub mod construct;
pub mod error;
pub mod group;
pub mod lattice;
pub mod par;

pub use error::{GroupError, Result};
pub use group::{ElementId, GroupTable, OrderSpectrum, PhiReport};
pub use lattice::{Lattice, LatticeExport, QuotientResult, Section, SubgroupSet};

/// Size caps for construction and lattice enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest group order a descriptor may build.
    pub max_group_order: usize,
    /// Largest group order accepted for full subgroup-lattice enumeration.
    pub max_lattice_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_group_order: construct::DEFAULT_MAX_GROUP_ORDER,
            max_lattice_order: lattice::DEFAULT_MAX_LATTICE_ORDER,
        }
    }
}
