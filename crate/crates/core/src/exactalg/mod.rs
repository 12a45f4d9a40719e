//! Exact super-polynomial arithmetic: monomials with Koszul signs, rational
//! coefficients, gradings and slice enumeration.

pub mod monomial;
pub mod polynomial;
pub mod scheme;
pub mod text;

pub use monomial::{SuperMonomial, Variable};
pub use polynomial::{rat, ratio, Rational, SuperPolynomial};
pub use scheme::{enumerate_slice, grade, Family, GradeLabel, GradedSlice, GradingScheme, SchemeKind};
pub use text::{parse_polynomial, render};

/// `p * q`
pub fn mul(p: &SuperPolynomial, q: &SuperPolynomial) -> SuperPolynomial {
    p.mul(q)
}

/// Left partial derivative of `p` by `v`.
pub fn derive(p: &SuperPolynomial, v: Variable) -> SuperPolynomial {
    p.derive(v)
}

/// Antiderivative in a bosonic variable.
pub fn integrate_bosonic(p: &SuperPolynomial, v: Variable) -> crate::error::Result<SuperPolynomial> {
    p.integrate_bosonic(v)
}
