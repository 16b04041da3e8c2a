//! Dimensions of linear series of fat points on surfaces in `P^3`.
//!
//! * [`dims`]: section counts, virtual dimensions, and the `g(a)` inequalities.
//! * [`planar`]: line splitting and Cremona reduction of planar series.
//! * [`lowdeg`]: quadric and cubic series through their planar models.
//! * [`oracle`]: exact rank computations over a prime field on random surfaces.
//! * [`degen`]: degeneration bookkeeping, the splitting ledger, and the
//!   scripted case analysis for points of multiplicity at most four.

pub mod degen;
pub mod dims;
pub mod lowdeg;
pub mod oracle;
pub mod planar;

/// Library version embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
