//! The coefficient ring: Laurent polynomials in shifted Y/Q variables,
//! root data and the variable tables built on top of them.

mod algebra;
mod poly;
mod vars;

pub use algebra::{AlgebraSpec, CartanData, Series};
pub use poly::{fmt_arg, rational_bits, Exponents, Family, LaurentPoly, Monomial, VarKey};
pub use vars::{y_factor, y_mono, VariableTable};
