//! Constructible functions on finite simplicial complexes, the link operator,
//! and a bounded search for obstructions to a complex being homeomorphic to a
//! real algebraic set.
//!
//! Everything is generic over the value type ([`Scalar`]); exact work uses
//! [`Dyadic`], which is closed under the ½ in Λ̃. The aliases below fix that
//! choice for the common case.

pub mod complex;
pub mod dyadic;
pub mod function;
pub mod io;
pub mod labels;
pub mod link;
pub mod scalar;
pub mod search;
pub mod spaces;
pub mod term;

pub use complex::{ComplexError, Simplex, SimplicialComplex, VertexId};
pub use dyadic::Dyadic;
pub use function::{ConstructibleFunction, FunctionError, Parity};
pub use io::{parse_complex, parse_term, ComplexDocument, DocumentError, TermSyntaxError};
pub use labels::{LabelError, StratumLabeling};
pub use link::{half_link, link_transform, link_transform_oracle, omega};
pub use scalar::{ExactScalar, Scalar};
pub use search::{
    check_algebraic_link, check_algebraic_set, enumerate_algebra, sullivan_check, BudgetUsed,
    Detail, ObstructionReport, SearchBudget, SearchError, SearchOptions, Verdict,
};
pub use spaces::Fixture;
pub use term::Term;

/// Dyadic-valued constructible function.
pub type Cf = ConstructibleFunction<Dyadic>;
/// Rational-valued constructible function.
pub type RationalCf = ConstructibleFunction<num_rational::BigRational>;
/// Floating-point constructible function, for quick numerical experiments.
pub type FloatCf = ConstructibleFunction<f64>;
/// Search report with dyadic values.
pub type Report = ObstructionReport<Dyadic>;
