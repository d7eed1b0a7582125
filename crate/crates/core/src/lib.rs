//! Two-level minimization of single-output Boolean functions by the
//! Quine-McCluskey tabulation method, with exact minimum-cardinality cover
//! selection and brute-force reference checks.
//!
//! ```
//! use qm_core::{io, minimize};
//!
//! let problem = io::parse_minterm_spec(
//!     "vars=4; minterms=0,1,3,4,5,6,7,9,11,12,13,14; dontcares=0,1,3,7",
//!     false,
//! )
//! .unwrap();
//! let report = minimize(&problem).unwrap();
//! let text = io::emit_expression(&report.cover, io::VariableNaming::Letters).unwrap();
//! assert_eq!(text, "B'D + BD' + C'D");
//! ```

pub mod cli;
pub mod cover;
pub mod cube;
pub mod error;
pub mod io;
pub mod oracle;
pub mod primes;
mod solver;

pub use cover::{minimize, Cost, Cover, MinimizeReport, PIChart};
pub use cube::{Implicant, ProblemSpec, MAX_VARS};
pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use primes::{generate_primes, PrimeSet, ReductionColumn};
