//! Exact statistics of triangle weights over uniform random triangulations
//! of a convex polygon.
//!
//! A triangulation of the convex polygon `P_n` is a set of `n-3` pairwise
//! noncrossing diagonals cutting it into `n-2` triangles; there are
//! `C_{n-2}` of them (Catalan). Given a weight function on triangles, the
//! crate computes the distribution, mean, and variance of the total weight
//! of a uniformly random triangulation by four independent routes:
//!
//! * exhaustive enumeration ([`oracle`]),
//! * an exact generating-function recursion ([`gf`]),
//! * closed-form formulas and the β/λ moment machinery ([`closed_form`]),
//! * seeded Monte Carlo over the exact recursive sampler ([`sampler`]).
//!
//! All combinatorial arithmetic is exact (big integers and big rationals);
//! floating point only enters for geometric weights (perimeter, area,
//! inradius).
//!
//! The `parallel` feature (on by default) runs enumeration accumulation and
//! Monte Carlo over rayon; disabling it yields the identical sequential
//! results.

pub mod closed_form;
pub mod exact;
pub mod gf;
pub mod oracle;
pub mod polygon;
pub mod sampler;
pub mod weights;

pub use exact::{Nat, Rat};
pub use gf::{DistTable, MomentReport, ZPoly};
pub use polygon::{PolygonSpec, TriangleRef, Triangulation};
pub use sampler::SampleRun;
pub use weights::{WeightSpec, WeightValue};

/// Any error produced by the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Polygon(#[from] polygon::PolygonError),
    #[error(transparent)]
    Weight(#[from] weights::WeightError),
    #[error(transparent)]
    Sampler(#[from] sampler::SamplerError),
    #[error(transparent)]
    Gf(#[from] gf::GfError),
    #[error(transparent)]
    Formula(#[from] closed_form::FormulaError),
    #[error(transparent)]
    Oracle(#[from] oracle::OracleError),
}

pub type Result<T> = std::result::Result<T, Error>;
