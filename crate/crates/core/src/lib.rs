//! Fractional repetition (FR) codes: feasibility, explicit construction from
//! cyclic orbits of subsets, and independent verification.
//!
//! An FR code with parameters `(n, d, theta, rho)` is a collection of `n`
//! distinct `d`-subsets of `{1, ..., theta}` in which every element occurs in
//! exactly `rho` subsets. Such a code exists exactly when `theta * rho = n * d`
//! and `n <= C(theta, d)`; [`construct`] builds one whenever it exists.
//!
//! ```
//! use frc_core::{construct, verify, Parameters};
//!
//! let params = Parameters::new(12, 6, 8, 9).unwrap();
//! let code = construct(&params).unwrap();
//! assert!(verify(&code).valid);
//! ```

pub mod binomial;
pub mod code;
pub mod construct;
pub mod error;
pub mod io;
pub mod oracle;
pub mod orbit;
pub mod params;
pub mod subset;
pub mod tail;
pub mod verify;

pub use binomial::binomial_at_least;
pub use code::FrCode;
pub use construct::construct;
pub use error::Error;
pub use orbit::{enumerate_orbits, orbit, orbits, CyclicOrbit, Orbits};
pub use params::{check_feasibility, smallest_multiplier, FeasibilityReport, OmegaPair, Parameters};
pub use subset::{shift, Subset};
pub use tail::{tail_family, TailFamily};
pub use verify::{verify, VerificationReport};
