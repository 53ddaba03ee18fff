//! Exact word calculus for the graph algebra of `n` disjoint loops.
//!
//! Every element has a unique normal form `sum c_{i,a} S_i^{(a)}` with
//! `S_i^{(a)} = S_i^a` for `a > 0`, `p_i` for `a = 0` and `(S_i^*)^{-a}` for
//! `a < 0`. Words on different loops multiply to zero; words on the same loop
//! add exponents.

mod coeff;
mod cyclotomic;
mod element;
mod syntax;

pub use coeff::Coefficient;
pub use cyclotomic::Cyclotomic12;
pub use element::{embed_general_word, mono_multiply, random_exact_element, ExactCoefficient, LoopElement, LoopMonomial};
pub use syntax::format_coefficient;
