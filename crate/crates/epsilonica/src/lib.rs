//! A computable ordered field with infinitesimals, and the classical
//! procedures of infinitesimal calculus on top of it.
//!
//! The field elements are finite-support formal series in a base
//! infinitesimal `eps` with rational exponents (truncated Levi-Civita
//! series). The order is non-Archimedean: `eps` is positive yet below every
//! `1/n`, its powers give a whole hierarchy of scales, and `eps^-1` is an
//! infinite element. On top of the arithmetic live the working tools:
//!
//! - [`LCNumber::st`] — the standard part, mapping every limited element to
//!   the real it is infinitely close to;
//! - [`LCNumber::adequal`] and [`LCNumber::truncate_tlh`] — equality up to an
//!   infinitesimal, and discarding all but the lowest order of smallness;
//! - [`archimedean`] — decision procedures for multiple-exceeding and for
//!   cut-equality of proportions;
//! - [`eval`](eval()) — evaluation of elementary expressions at series
//!   arguments by Taylor lifting;
//! - [`fermat`] — adequality derivatives, bracketed extrema, tangent lines,
//!   the product rule with its discarded cross term, and continuity probes;
//! - [`euler`] — the two comparison modes, cancellation in ratios, truncated
//!   sine/sinh products, finite exponential surrogates, and the
//!   inverse-square sum;
//! - [`cauchy`] — the concentrated-kernel integral and limits of sequences
//!   via the standard part at an infinite index.
//!
//! ```
//! use epsilonica::{Context, LCNumber};
//!
//! let ctx = Context::default();
//! let eps = LCNumber::epsilon(ctx);
//! let x = LCNumber::from_integer(3, ctx).add(&eps).unwrap();
//!
//! // 3 + eps is infinitely close to 3, but not equal to it:
//! assert!(x.adequal(&LCNumber::from_integer(3, ctx)).unwrap());
//! assert_eq!(x.st().unwrap().to_string(), "3");
//! assert_eq!(x.to_string(), "3 + eps");
//!
//! // and eps * eps is tiny but emphatically not zero:
//! assert!(!eps.mul(&eps).unwrap().is_zero());
//! ```

pub mod archimedean;
pub mod cauchy;
mod context;
mod error;
pub mod euler;
mod eval;
mod exponent;
mod expr;
pub mod fermat;
mod number;
mod scalar;

pub use context::{Context, ScalarMode, DEFAULT_DEPTH, DEFAULT_FLOAT_TOLERANCE};
pub use error::{Error, Result};
pub use eval::{eval, eval_constant, single_binding, taylor_coefficients, Bindings};
pub use exponent::Exponent;
pub use expr::{ExprTree, Func};
pub use number::{Classification, DecompositionResult, LCNumber};
pub use scalar::{Scalar, Sign3};

/// Parses an element of the field from its literal grammar,
/// e.g. `3 + 2*eps - 5*eps^(3/2)` or `eps^-1`. Any constant expression is
/// accepted; printing and reparsing is lossless in exact mode.
pub fn parse_number(src: &str, ctx: Context) -> Result<LCNumber> {
    eval_constant(&ExprTree::parse(src)?, ctx)
}
