use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::exactalg::polynomial::fmt_rational;
use crate::exactalg::text::{parse_terms, Factor};
use crate::exactalg::{rat, Rational, SuperMonomial, SuperPolynomial, Variable};

/// Differential operator in normal order: a finite sum of `c * z^A * d^B`, all
/// multipliers to the left of all derivatives. In `d^B` the fermionic derivatives
/// appear in canonical order, so `d_th1*d_vt1` applies `d_vt1` first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DiffOperator {
    atoms: BTreeMap<(SuperMonomial, SuperMonomial), Rational>,
}

impl DiffOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(c: Rational) -> Self {
        Self::atom(c, SuperMonomial::one(), SuperMonomial::one())
    }

    pub fn identity() -> Self {
        Self::scalar(Rational::one())
    }

    pub fn atom(c: Rational, mult: SuperMonomial, deriv: SuperMonomial) -> Self {
        let mut op = Self::zero();
        op.add_atom(mult, deriv, c);
        op
    }

    /// Multiplication by a polynomial.
    pub fn mult(p: &SuperPolynomial) -> Self {
        let mut op = Self::zero();
        for (m, c) in p.terms() {
            op.add_atom(m.clone(), SuperMonomial::one(), c.clone());
        }
        op
    }

    pub fn mult_var(v: Variable) -> Self {
        Self::atom(Rational::one(), SuperMonomial::var(v), SuperMonomial::one())
    }

    pub fn deriv(v: Variable) -> Self {
        Self::atom(Rational::one(), SuperMonomial::one(), SuperMonomial::var(v))
    }

    /// `z_a * d_b`.
    pub fn z_d(a: Variable, b: Variable) -> Self {
        Self::atom(Rational::one(), SuperMonomial::var(a), SuperMonomial::var(b))
    }

    /// `d_a * d_b` (with `d_b` applied first).
    pub fn d_d(a: Variable, b: Variable) -> Self {
        Self::deriv(a).compose(&Self::deriv(b))
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> impl Iterator<Item = (&SuperMonomial, &SuperMonomial, &Rational)> {
        self.atoms.iter().map(|((a, b), c)| (a, b, c))
    }

    pub fn add_atom(&mut self, mult: SuperMonomial, deriv: SuperMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (mult, deriv);
        let entry = self.atoms.entry(key.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.atoms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &DiffOperator, c: &Rational) {
        for ((a, b), x) in &other.atoms {
            self.add_atom(a.clone(), b.clone(), x * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    /// Parity when homogeneous.
    pub fn parity(&self) -> Option<u8> {
        let mut it = self.atoms.keys().map(|(a, b)| (a.parity() + b.parity()) % 2);
        let first = it.next().unwrap_or(0);
        it.all(|p| p == first).then_some(first)
    }

    fn part(&self, parity: u8) -> Self {
        Self {
            atoms: self
                .atoms
                .iter()
                .filter(|((a, b), _)| (a.parity() + b.parity()) % 2 == parity)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Apply to a polynomial.
    pub fn apply(&self, p: &SuperPolynomial) -> SuperPolynomial {
        let mut out = SuperPolynomial::zero();
        for ((a, b), c) in &self.atoms {
            for (m, d) in p.terms() {
                if let Some((k, dm)) = apply_derivs(b, m) {
                    if let Some((neg, r)) = a.mul(&dm) {
                        let mut x = c * d * rat(k);
                        if neg {
                            x = -x;
                        }
                        out.add_term(r, x);
                    }
                }
            }
        }
        out
    }

    /// `self ∘ other`, normal ordered.
    pub fn compose(&self, other: &DiffOperator) -> DiffOperator {
        let mut out = DiffOperator::zero();
        for ((a, b), c) in &self.atoms {
            let mut cur = other.clone();
            let derivs = b.factors();
            for &(v, e) in derivs.iter().rev() {
                for _ in 0..e {
                    cur = cur.left_deriv(v);
                }
            }
            out.add_scaled(&cur.left_mult(a), c);
        }
        out
    }

    /// `d_v ∘ self` via the signed Leibniz rule.
    fn left_deriv(&self, v: Variable) -> DiffOperator {
        let dv = SuperMonomial::var(v);
        let mut out = DiffOperator::zero();
        for ((e, f), c) in &self.atoms {
            if let Some((k, e2)) = e.derive(v) {
                out.add_atom(e2, f.clone(), c * rat(k));
            }
            if let Some((neg, f2)) = dv.mul(f) {
                let flip = v.is_fermionic() && e.parity() == 1;
                let x = if neg ^ flip { -c.clone() } else { c.clone() };
                out.add_atom(e.clone(), f2, x);
            }
        }
        out
    }

    /// `z^a ∘ self`.
    fn left_mult(&self, a: &SuperMonomial) -> DiffOperator {
        let mut out = DiffOperator::zero();
        for ((e, f), c) in &self.atoms {
            if let Some((neg, ae)) = a.mul(e) {
                out.add_atom(ae, f.clone(), if neg { -c.clone() } else { c.clone() });
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> DiffOperator {
        let mut out = DiffOperator::identity();
        for _ in 0..e {
            out = self.compose(&out);
        }
        out
    }

    /// Super-commutator `[a, b] = ab - (-1)^{|a||b|} ba`, extended bilinearly
    /// over the parity components.
    pub fn super_commutator(&self, other: &DiffOperator) -> DiffOperator {
        let mut out = DiffOperator::zero();
        for pa in 0..2u8 {
            let a = self.part(pa);
            if a.is_zero() {
                continue;
            }
            for pb in 0..2u8 {
                let b = other.part(pb);
                if b.is_zero() {
                    continue;
                }
                out.add_scaled(&a.compose(&b), &Rational::one());
                let sign = if pa * pb == 1 { Rational::one() } else { -Rational::one() };
                out.add_scaled(&b.compose(&a), &sign);
            }
        }
        out
    }

    /// Image under the automorphism `x_r -> d_{x_r}`, `d_{x_r} -> -x_r` for `r <= n1`
    /// and `y_s -> d_{y_s}`, `d_{y_s} -> -y_s` for `s > n2`.
    pub fn twist(&self, n1: u16, n2: u16) -> DiffOperator {
        let twisted = |v: Variable| match v {
            Variable::X(r) => r <= n1,
            Variable::Y(s) => s > n2,
            _ => false,
        };
        let mut out = DiffOperator::zero();
        for ((a, b), c) in &self.atoms {
            let mut keep_a = Vec::new();
            let mut d_part = DiffOperator::identity();
            for (v, e) in a.factors() {
                if twisted(v) {
                    d_part = d_part.compose(&DiffOperator::deriv(v).pow(e));
                } else {
                    keep_a.push((v, e));
                }
            }
            let mut keep_b = Vec::new();
            let mut m_part = DiffOperator::identity();
            for (v, e) in b.factors() {
                if twisted(v) {
                    m_part = m_part.compose(&DiffOperator::mult_var(v).pow(e).scale(&rat(-1).pow(e as i32)));
                } else {
                    keep_b.push((v, e));
                }
            }
            let (sa, ma) = SuperMonomial::from_factors(&keep_a).unwrap().unwrap();
            let (sb, mb) = SuperMonomial::from_factors(&keep_b).unwrap().unwrap();
            debug_assert!(!sa && !sb);
            let left = DiffOperator::atom(Rational::one(), ma, SuperMonomial::one());
            let right = DiffOperator::atom(Rational::one(), SuperMonomial::one(), mb);
            let img = left.compose(&d_part).compose(&m_part).compose(&right);
            out.add_scaled(&img, c);
        }
        out
    }

    /// Highest total degree change of any atom (`|A| - |B|`); `None` for zero.
    pub fn max_degree_shift(&self) -> Option<i64> {
        self.atoms.keys().map(|(a, b)| a.degree() as i64 - b.degree() as i64).max()
    }
}

/// Apply `d^B` to a monomial, rightmost factor first.
fn apply_derivs(b: &SuperMonomial, m: &SuperMonomial) -> Option<(i64, SuperMonomial)> {
    let mut k = 1i64;
    let mut cur = m.clone();
    let factors = b.factors();
    for &(v, e) in factors.iter().rev() {
        for _ in 0..e {
            let (c, next) = cur.derive(v)?;
            k *= c;
            cur = next;
        }
    }
    Some((k, cur))
}

/// `a + b`
pub fn add(a: &DiffOperator, b: &DiffOperator) -> DiffOperator {
    a + b
}

/// Apply an operator to a polynomial.
pub fn apply(op: &DiffOperator, p: &SuperPolynomial) -> SuperPolynomial {
    op.apply(p)
}

/// `a ∘ b`
pub fn compose(a: &DiffOperator, b: &DiffOperator) -> DiffOperator {
    a.compose(b)
}

/// `[a, b]`
pub fn super_commutator(a: &DiffOperator, b: &DiffOperator) -> DiffOperator {
    a.super_commutator(b)
}

impl<'a> Add for &'a DiffOperator {
    type Output = DiffOperator;
    fn add(self, rhs: Self) -> DiffOperator {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl<'a> Sub for &'a DiffOperator {
    type Output = DiffOperator;
    fn sub(self, rhs: Self) -> DiffOperator {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl<'a> Neg for &'a DiffOperator {
    type Output = DiffOperator;
    fn neg(self) -> DiffOperator {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for DiffOperator {
    /// Same conventions as polynomials; derivatives print as `d_<var>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, ((a, b), c)) in self.atoms.iter().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            f.write_str(&fmt_rational(&c.abs()))?;
            if !a.is_one() {
                write!(f, "*{a}")?;
            }
            for (v, e) in b.factors() {
                if e == 1 {
                    write!(f, "*d_{v}")?;
                } else {
                    write!(f, "*d_{v}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Parse an operator. Each term is read as a product of its factors in the written
/// order and normal ordered, so `d_x1*x1` parses to `1 + x1*d_x1`.
pub fn parse_operator(text: &str) -> Result<DiffOperator> {
    let mut out = DiffOperator::zero();
    for (neg, factors) in parse_terms(text)? {
        let mut term = DiffOperator::scalar(if neg { -Rational::one() } else { Rational::one() });
        for fct in factors {
            let piece = match fct {
                Factor::Num(q) => DiffOperator::scalar(q),
                Factor::Var(v, e) => {
                    if v.is_fermionic() && e > 1 {
                        DiffOperator::zero()
                    } else {
                        DiffOperator::mult_var(v).pow(e)
                    }
                }
                Factor::Deriv(v, e) => DiffOperator::deriv(v).pow(e),
            };
            term = term.compose(&piece);
        }
        out.add_scaled(&term, &Rational::one());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_polynomial;

    fn p(s: &str) -> SuperPolynomial {
        parse_polynomial(s).unwrap()
    }

    #[test]
    fn fermionic_derivative_order() {
        let op = parse_operator("d_th1*d_vt1").unwrap();
        assert_eq!(op.apply(&p("th1*vt1")), p("-1"));
        let op2 = parse_operator("d_vt1*d_th1").unwrap();
        assert_eq!(op2, -&op);
    }

    #[test]
    fn normal_ordering() {
        assert_eq!(parse_operator("d_x1*x1").unwrap().to_string(), "1/1 + 1/1*x1*d_x1");
        assert_eq!(parse_operator("d_th1*th1").unwrap().to_string(), "1/1 - 1/1*th1*d_th1");
    }

    #[test]
    fn twist_examples() {
        let op = parse_operator("x1*d_x2 - y2*d_y1").unwrap();
        let t = op.twist(2, 3);
        assert_eq!(t, parse_operator("-x2*d_x1 - y2*d_y1").unwrap());
        let e = parse_operator("x1*d_x1").unwrap().twist(1, 1);
        assert_eq!(e, parse_operator("-1 - x1*d_x1").unwrap());
    }

    #[test]
    fn commutator_of_fermions() {
        let a = DiffOperator::deriv(Variable::Theta(1));
        let b = DiffOperator::mult_var(Variable::Theta(1));
        assert_eq!(a.super_commutator(&b), DiffOperator::identity());
    }
}
