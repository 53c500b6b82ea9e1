//! Multigraded Betti numbers of Stanley–Reisner rings, the cohomology of
//! moment-angle complexes and their quotients by coordinate subtori, the
//! colored Koszul complex, and lower bounds relating them.
//!
//! All computations are exact: over `ℚ` with integer fraction-free elimination,
//! or over `GF(p)`.
//!
//! ```
//! use colored_betti::bounds::check_colored_bound;
//! use colored_betti::{betti_table, FieldSpec, Partition, SimplicialComplex};
//!
//! let k = SimplicialComplex::parse("m 4\nfacet 1 2\nfacet 2 3\nfacet 3 4\nfacet 1 4\n")?;
//! let alpha = Partition::parse(4, "blocks 1 3 | 2 4")?;
//! assert_eq!(betti_table(&k, FieldSpec::Rationals)?.total(), 4);
//! assert!(check_colored_bound(&k, &alpha, FieldSpec::PrimeField(2))?.pass());
//! # Ok::<(), colored_betti::Error>(())
//! ```

pub mod betti;
pub mod bounds;
pub mod cochain;
pub mod coloring;
pub mod complex;
pub mod corpus;
pub mod error;
pub mod linalg;
pub mod report;
pub mod subset;
pub mod tor;

pub use betti::{betti_number, betti_table, zk_cohomology_dims, BettiTable};
pub use coloring::Partition;
pub use complex::SimplicialComplex;
pub use error::{Error, Result};
pub use linalg::FieldSpec;
pub use subset::{ColorSet, VertexSubset};
