//! Exact arithmetic in the positional numeral system with radix grossone (①).
//!
//! A [`GrossNumber`] is a finite sum of terms `c·①^p` with exact rational
//! grossdigits `c` and grosspowers `p` that are themselves numerals. Finite,
//! infinite and infinitesimal quantities live side by side, so expressions
//! can be evaluated directly at infinite or infinitesimal points and zero
//! pivots in elimination can be replaced by ①⁻¹.

pub mod apps;
pub mod division;
pub mod error;
pub mod expr;
pub mod io;
pub mod linsolve;
pub mod number;

pub use apps::{
    event_probability, piece_measure, points_in_unit_interval, points_on_line, total_measure,
    MeasurePiece,
};
pub use division::{divide, divide_exact, DivisionResult};
pub use error::{Error, Result};
pub use expr::{
    eval_alternating, eval_at, eval_sum, parse_expr, Evaluation, Expr, DEFAULT_MIN_POWER,
};
pub use io::{parse, parse_with_limit, print_canonical, print_decimal};
pub use linsolve::{solve_exact_oracle, solve_grossone, LinearSystem, SolveMethod, SolveReport};
pub use number::{
    normalize, normalize_with_limit, GrossNumber, Rational, Term, DEFAULT_DEPTH_LIMIT,
};
