use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::{SuperMonomial, Variable};
use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Exact super-polynomial: finite sum of rational multiples of super-monomials.
/// Iteration order is the monomial order, so rendering is deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SuperPolynomial {
    terms: BTreeMap<SuperMonomial, Rational>,
}

impl SuperPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, SuperMonomial::one())
    }

    pub fn term(c: Rational, m: SuperMonomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn monomial(m: SuperMonomial) -> Self {
        Self::term(Rational::one(), m)
    }

    pub fn var(v: Variable) -> Self {
        Self::monomial(SuperMonomial::var(v))
    }

    /// Product of variables in the given order, e.g. `[Theta(1), VarTheta(1)]`.
    pub fn product(vars: &[Variable]) -> Self {
        let factors: Vec<(Variable, u32)> = vars.iter().map(|&v| (v, 1)).collect();
        match SuperMonomial::from_factors(&factors).expect("valid variables") {
            Some((neg, m)) => Self::term(if neg { -Rational::one() } else { Rational::one() }, m),
            None => Self::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&SuperMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (SuperMonomial, Rational)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &SuperMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: SuperMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &SuperPolynomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    /// Highest monomial and its coefficient.
    pub fn leading(&self) -> Option<(&SuperMonomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Scale so the leading coefficient is 1.
    pub fn normalized(&self) -> Self {
        match self.leading() {
            Some((_, c)) => self.scale(&c.recip()),
            None => Self::zero(),
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    /// `Some(p)` when every term has parity `p`.
    pub fn parity(&self) -> Option<u8> {
        let mut it = self.terms.keys().map(|m| m.parity());
        let first = it.next().unwrap_or(0);
        it.all(|p| p == first).then_some(first)
    }

    pub fn even_part(&self) -> Self {
        self.filter(|m| m.parity() == 0)
    }

    pub fn odd_part(&self) -> Self {
        self.filter(|m| m.parity() == 1)
    }

    pub fn filter(&self, keep: impl Fn(&SuperMonomial) -> bool) -> Self {
        Self {
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((neg, m)) = ma.mul(mb) {
                    let c = ca * cb;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Left partial derivative; for fermions the sign is `(-1)^(fermions to the left)`.
    pub fn derive(&self, v: Variable) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if let Some((k, dm)) = m.derive(v) {
                out.add_term(dm, c * rat(k));
            }
        }
        out
    }

    /// Formal antiderivative in a bosonic variable: `x^a -> x^(a+1)/(a+1)`.
    pub fn integrate_bosonic(&self, v: Variable) -> Result<Self> {
        if v.is_fermionic() {
            return Err(Error::FermionicIntegration(v.name()));
        }
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let a = m.exponent(v) as i64;
            out.add_term(m.bump(v), c / rat(a + 1));
        }
        Ok(out)
    }

    pub fn max_total_degree(&self) -> u32 {
        self.degree().unwrap_or(0)
    }

    /// `true` when `self = c * other` for some nonzero rational `c`.
    pub fn is_proportional_to(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return false;
        }
        self.normalized() == other.normalized()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &SuperMonomial> {
        self.terms.keys()
    }
}

impl From<SuperMonomial> for SuperPolynomial {
    fn from(m: SuperMonomial) -> Self {
        Self::monomial(m)
    }
}

impl<'a> Add for &'a SuperPolynomial {
    type Output = SuperPolynomial;
    fn add(self, rhs: Self) -> SuperPolynomial {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl<'a> Sub for &'a SuperPolynomial {
    type Output = SuperPolynomial;
    fn sub(self, rhs: Self) -> SuperPolynomial {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl<'a> Mul for &'a SuperPolynomial {
    type Output = SuperPolynomial;
    fn mul(self, rhs: Self) -> SuperPolynomial {
        SuperPolynomial::mul(self, rhs)
    }
}

impl<'a> Neg for &'a SuperPolynomial {
    type Output = SuperPolynomial;
    fn neg(self) -> SuperPolynomial {
        self.scale(&-Rational::one())
    }
}

pub(crate) fn fmt_rational(c: &Rational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

impl fmt::Display for SuperPolynomial {
    /// Terms in ascending monomial order, each as `p/q*monomial`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            f.write_str(&fmt_rational(&mag))?;
            if !m.is_one() {
                write!(f, "*{m}")?;
            }
        }
        Ok(())
    }
}
