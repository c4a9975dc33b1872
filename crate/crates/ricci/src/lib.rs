//! Exact Ollivier/Lin-Lu-Yau Ricci curvature on finite graphs.
//!
//! All curvature values, transport plans, and verifier verdicts are exact
//! rationals; comparisons against irrational bounds use directed-rounding
//! enclosures or integer cross-powers, never floating point.

pub mod curvature;
pub mod error;
pub mod graph;
pub mod io;
pub mod numerics;
pub mod scan;
pub(crate) mod simplex;
pub mod transport;
pub mod util;
pub mod verify;

pub use error::{Error, Result};
pub use graph::Graph;
pub use numerics::Rational;

// The guide's code blocks run as doc-tests so the book cannot drift from
// the library. One module per chapter keeps failures attributable.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            mod $name {}
        };
    }
    chapter!(introduction, "../../../book/src/introduction.md");
    chapter!(graphs, "../../../book/src/graphs.md");
    chapter!(exact_arithmetic, "../../../book/src/exact-arithmetic.md");
    chapter!(transport, "../../../book/src/transport.md");
    chapter!(curvature, "../../../book/src/curvature.md");
    chapter!(verifiers, "../../../book/src/verifiers.md");
    chapter!(scans, "../../../book/src/scans.md");
    chapter!(cli, "../../../book/src/cli.md");
}
