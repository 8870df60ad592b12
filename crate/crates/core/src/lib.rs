//! `F_q`-linear sets in `PG(k-1, q^m)`, their secant-line coverage, and the
//! rank-metric codes attached to them.
//!
//! ```
//! use linsat::{Tower, ProjectiveSpace, LinearSet, verify};
//!
//! let t = Tower::for_q(2, 4)?;
//! let plane = ProjectiveSpace::new(&t, 3)?;
//! let u = verify::example_subspace(&t)?;
//! let ls = LinearSet::new(&plane, &u)?;
//! assert_eq!(ls.size(), 31);
//! assert!(ls.saturation(&plane, 2)?.saturated);
//! # Ok::<(), linsat::Error>(())
//! ```

pub mod error;
pub mod geometry;
pub mod gf;
pub mod io;
pub mod linalg;
pub mod linset;
pub mod rankmetric;
pub mod verify;

pub use error::{Error, Result};
pub use geometry::{FqSubspace, ProjectivePoint, ProjectiveSpace, ProjectiveSubspace};
pub use gf::{Elem, Field, Tower, TowerSpec};
pub use linset::{LinearSet, SaturationCertificate};
pub use rankmetric::{RankMetricCode, WeightReport};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/geometry.md")]
    mod geometry {}
    #[doc = include_str!("../../../book/src/linear-sets.md")]
    mod linear_sets {}
    #[doc = include_str!("../../../book/src/saturation.md")]
    mod saturation {}
    #[doc = include_str!("../../../book/src/rank-metric.md")]
    mod rank_metric {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
