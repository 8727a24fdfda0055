use thiserror::Error;

use crate::atom::Atom;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{name}` at {pos}")]
    UnknownIdentifier { name: String, pos: usize },
    #[error("exponent at {pos} is not an integer literal")]
    NonIntegerExponent { pos: usize },
    #[error("exp argument at {pos} must be an integer multiple of a coordinate")]
    BadExpArgument { pos: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("no value assigned to {0:?}")]
    MissingAtom(Atom),
    #[error("denominator vanishes at the assignment")]
    ZeroDenominator,
}
