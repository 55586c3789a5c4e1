//! Monomials, elements and the superalgebra operations.

mod element;
mod falling;
mod monomial;
mod order;
mod product;

pub use element::Element;
pub use falling::{
    falling_factorial_element, stirling_first_row, stirling_second_row, to_falling_basis,
};
pub use monomial::{monomial_parity, Monomial};
pub use order::compare_deriv_order;
pub use product::{
    amul, apply_multi_derivation, apply_partial, bracket, bracket_monomials, mul, mul_monomials,
};
pub(crate) use product::for_each_below;
