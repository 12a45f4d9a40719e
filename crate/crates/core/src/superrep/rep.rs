use std::fmt;

use super::algebra::{AlgebraElement, Generator, SuperAlgebra};
use crate::diffops::DiffOperator;
use crate::error::{Error, Result};
use crate::exactalg::{Family, GradingScheme, Rational, SuperMonomial, SuperPolynomial, Variable};

use Variable::{Theta as Th, VarTheta as Vt, X, X0, Y};

/// Eigenvalues under the Cartan elements, ordered `h_1..h_n, h'_1..h'_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<Rational>);

impl Weight {
    pub fn rendered(&self) -> Vec<String> {
        self.0.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.rendered().join(","))
    }
}

/// The differential-operator representation attached to a grading scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RepVariant {
    pub scheme: GradingScheme,
}

fn zd(a: Variable, b: Variable) -> DiffOperator {
    DiffOperator::z_d(a, b)
}

fn u(i: usize) -> u16 {
    i as u16
}

impl RepVariant {
    pub fn new(scheme: GradingScheme) -> Self {
        RepVariant { scheme }
    }

    pub fn algebra(&self) -> SuperAlgebra {
        SuperAlgebra::new(self.scheme.family(), self.scheme.n(), self.scheme.m())
    }

    /// Image of a generator under the untwisted table.
    pub fn natural_operator(&self, g: &Generator) -> DiffOperator {
        use Generator::*;
        let n = self.scheme.n() as usize;
        match *g {
            Unit(a, b) => match (a <= n, b <= n) {
                (true, true) => &zd(X(u(a)), X(u(b))) - &zd(Y(u(b)), Y(u(a))),
                (true, false) => &zd(X(u(a)), Th(u(b - n))) - &zd(Vt(u(b - n)), Y(u(a))),
                (false, true) => &zd(Th(u(a - n)), X(u(b))) + &zd(Y(u(b)), Vt(u(a - n))),
                (false, false) => &zd(Th(u(a - n)), Th(u(b - n))) - &zd(Vt(u(b - n)), Vt(u(a - n))),
            },
            Kxx(i, j) => &zd(X(u(i)), X(u(j))) - &zd(Y(u(j)), Y(u(i))),
            Kff(r, s) => &zd(Th(u(r)), Th(u(s))) - &zd(Vt(u(s)), Vt(u(r))),
            Kxf(i, r) => &zd(X(u(i)), Th(u(r))) - &zd(Vt(u(r)), Y(u(i))),
            Kfx(r, i) => &zd(Th(u(r)), X(u(i))) + &zd(Y(u(i)), Vt(u(r))),
            Axy(i, j) => &zd(X(u(i)), Y(u(j))) - &zd(X(u(j)), Y(u(i))),
            Svt(r, s) => &zd(Vt(u(r)), Th(u(s))) + &zd(Vt(u(s)), Th(u(r))),
            Ayx(i, j) => &zd(Y(u(i)), X(u(j))) - &zd(Y(u(j)), X(u(i))),
            Stv(r, s) => &zd(Th(u(r)), Vt(u(s))) + &zd(Th(u(s)), Vt(u(r))),
            Oxv(i, r) => &zd(X(u(i)), Vt(u(r))) + &zd(Th(u(r)), Y(u(i))),
            Oyt(i, r) => &zd(Y(u(i)), Th(u(r))) - &zd(Vt(u(r)), X(u(i))),
            Zx(i) => &zd(X0, X(u(i))) - &zd(Y(u(i)), X0),
            Zy(i) => &zd(X0, Y(u(i))) - &zd(X(u(i)), X0),
            Zt(r) => &zd(X0, Th(u(r))) - &zd(Vt(u(r)), X0),
            Zv(r) => &zd(X0, Vt(u(r))) + &zd(Th(u(r)), X0),
        }
    }

    /// Image of a generator: the natural table, twisted for twisted schemes.
    pub fn generator_operator(&self, g: &Generator) -> DiffOperator {
        let op = self.natural_operator(g);
        match self.scheme.twist() {
            Some((n1, n2)) => op.twist(n1, n2),
            None => op,
        }
    }

    pub fn rep_operator(&self, x: &AlgebraElement) -> Result<DiffOperator> {
        self.rep_operator_with(x, &|g| self.generator_operator(g))
    }

    /// Linear extension of an arbitrary generator table; used to test corrupted tables.
    pub fn rep_operator_with(&self, x: &AlgebraElement, table: &dyn Fn(&Generator) -> DiffOperator) -> Result<DiffOperator> {
        if x.algebra != self.algebra() {
            return Err(Error::InvalidArgument(format!(
                "element of {} used with a representation of {}",
                x.algebra.name(),
                self.algebra().name()
            )));
        }
        let mut out = DiffOperator::zero();
        for (g, c) in self.algebra().decompose(x)? {
            out.add_scaled(&table(&g), &c);
        }
        Ok(out)
    }

    /// Generators of the positive subalgebra.
    pub fn positive_generators(&self) -> Vec<Generator> {
        use Generator::*;
        let (n, m) = (self.scheme.n() as usize, self.scheme.m() as usize);
        let mut out = Vec::new();
        if self.scheme.family() == Family::Gl {
            for i in 1..=n {
                for j in i + 1..=n {
                    out.push(Unit(i, j));
                }
            }
            for r in 1..=m {
                for s in r + 1..=m {
                    out.push(Unit(n + r, n + s));
                }
            }
            for i in 1..=n {
                for s in 1..=m {
                    out.push(Unit(i, n + s));
                }
            }
            return out;
        }
        for i in 1..=n {
            for j in i + 1..=n {
                out.push(Kxx(i, j));
                out.push(Axy(i, j));
            }
        }
        for r in 1..=m {
            for s in r + 1..=m {
                out.push(Kff(r, s));
            }
            for s in r..=m {
                out.push(Stv(r, s));
            }
        }
        for i in 1..=n {
            for r in 1..=m {
                out.push(Kxf(i, r));
                out.push(Oxv(i, r));
            }
        }
        if self.scheme.family() == Family::OspOdd {
            for i in 1..=n {
                out.push(Zy(i));
            }
            for r in 1..=m {
                out.push(Zv(r));
            }
        }
        out
    }

    pub fn positive_operators(&self) -> Vec<DiffOperator> {
        self.positive_generators().iter().map(|g| self.generator_operator(g)).collect()
    }

    pub fn cartan_operators(&self) -> Vec<DiffOperator> {
        self.algebra().cartan().iter().map(|g| self.generator_operator(g)).collect()
    }

    /// Weight of a monomial (monomials are always weight vectors).
    pub fn monomial_weight(&self, mono: &SuperMonomial) -> Weight {
        let (n1, n2) = self.scheme.split();
        let mut w = Vec::with_capacity((self.scheme.n() + self.scheme.m()) as usize);
        for i in 1..=self.scheme.n() {
            let a = mono.exponent(X(i)) as i64;
            let b = mono.exponent(Y(i)) as i64;
            let xs = if i <= n1 { -a - 1 } else { a };
            let ys = if i <= n2 { -b } else { b + 1 };
            w.push(Rational::from_integer((xs + ys).into()));
        }
        for r in 1..=self.scheme.m() {
            let t = mono.exponent(Th(r)) as i64 - mono.exponent(Vt(r)) as i64;
            w.push(Rational::from_integer(t.into()));
        }
        Weight(w)
    }

    /// Simultaneous Cartan eigenvalues of `v`, or `None` if `v` is not a weight vector.
    pub fn weight_of(&self, v: &SuperPolynomial) -> Option<Weight> {
        let (lead, c) = v.leading()?;
        let mut w = Vec::new();
        for h in self.cartan_operators() {
            let hv = h.apply(v);
            let lambda = hv.coeff(lead) / c;
            if hv != v.scale(&lambda) {
                return None;
            }
            w.push(lambda);
        }
        Some(Weight(w))
    }

    /// `z_a d_{z_b}` over every ordered pair of variables, twisted for twisted schemes.
    pub fn operator_space(&self) -> Vec<DiffOperator> {
        let vars = self.scheme.variables();
        let mut out = Vec::with_capacity(vars.len() * vars.len());
        for &a in &vars {
            for &b in &vars {
                let op = zd(a, b);
                out.push(match self.scheme.twist() {
                    Some((n1, n2)) => op.twist(n1, n2),
                    None => op,
                });
            }
        }
        out
    }
}
