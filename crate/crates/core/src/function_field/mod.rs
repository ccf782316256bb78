//! The ambient field `K = F_p(u_1..u_m, x_1..x_n)`: sparse polynomials,
//! unreduced rational functions, an expression parser, and lazy power series
//! over `F_p` used by series-restriction valuations.

mod field_spec;
mod parse;
mod poly;
mod ratfun;
mod series;

pub use field_spec::FieldSpec;
pub use parse::{parse_poly, parse_ratfun, MAX_EXPONENT};
pub use poly::{exact_divide, Monomial, Polynomial};
pub use ratfun::RationalFunction;
pub use series::{eval_poly_as_series, series_ord, PowerSeries, SeriesAssignment, TruncatedSeries};
