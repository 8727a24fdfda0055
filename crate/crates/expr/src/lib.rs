//! Exact rational functions in coordinates `x_i`, exponentials `exp(x_i)`
//! and constant parameters.
//!
//! Every [`Expr`] is kept in a canonical reduced form, so `==` decides
//! mathematical equality and [`Expr::is_zero`] is exact.

pub mod atom;
pub mod error;
pub mod eval;
pub mod expr;
pub mod gcd;
pub mod parse;
pub mod poly;
pub mod print;
pub mod sqrt;

pub use atom::{Atom, Context};
pub use error::ExprError;
pub use eval::Assignment;
pub use expr::Expr;
pub use parse::parse_expression;
pub use poly::Poly;
pub use dashu_int::IBig;
pub use dashu_ratio::RBig;
