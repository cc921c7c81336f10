//! Quotient constructions made executable.
//!
//! [`equiv`] holds the generic machinery: relations, classes, bounded
//! congruence checks and lifting. [`int`], [`rat`] and [`msg`] are worked
//! quotients built with it, and [`sexp`] reads the textual forms used by the
//! command line and the web demo. [`suites`] bundles the checks into named
//! batches.
//!
//! ```
//! use quotient::equiv::{check_respects, lift1, LiftMode, RespectMap};
//! use quotient::int::{intrel, neg_body, QInt};
//!
//! let neg = RespectMap::new("int neg", intrel(), neg_body);
//! let cert = check_respects(&neg, 500)?;
//! let lifted = lift1(&cert, &neg, LiftMode::Strict)?;
//! assert_eq!(lifted.apply(&QInt::of(2, 5).class())?, QInt::from_native(3));
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod equiv;
pub mod error;
pub mod int;
pub mod msg;
pub mod rat;
pub mod sexp;
pub mod suites;

pub use error::{Error, ParseError, ParseErrorKind, Result};
