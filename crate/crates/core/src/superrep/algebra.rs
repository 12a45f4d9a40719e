use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{rat, Family, Rational};

/// gl(n|m), osp(2n|2m) or osp(2n+1|2m) as a subalgebra of a general linear
/// superalgebra, written with matrix units `E_{a,b}`.
///
/// Index conventions: gl uses `1..=n+m` (even block `1..=n`); osp(2n|2m) uses
/// `1..=2n+2m` (even block `1..=2n`); osp(2n+1|2m) adds the even index `0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SuperAlgebra {
    pub family: Family,
    pub n: u16,
    pub m: u16,
}

/// Spanning elements of the algebra; each is a fixed combination of one or two units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// gl: `E_{a,b}`
    Unit(usize, usize),
    /// `E_{i,j} - E_{n+j,n+i}`
    Kxx(usize, usize),
    /// `E_{2n+r,2n+s} - E_{2n+m+s,2n+m+r}`
    Kff(usize, usize),
    /// `E_{i,2n+r} - E_{2n+m+r,n+i}`
    Kxf(usize, usize),
    /// `E_{2n+r,i} + E_{n+i,2n+m+r}`
    Kfx(usize, usize),
    /// `E_{i,n+j} - E_{j,n+i}`, `i < j`
    Axy(usize, usize),
    /// `E_{n+i,j} - E_{n+j,i}`, `i < j`
    Ayx(usize, usize),
    /// `E_{2n+r,2n+m+s} + E_{2n+s,2n+m+r}`, `r <= s`
    Stv(usize, usize),
    /// `E_{2n+m+r,2n+s} + E_{2n+m+s,2n+r}`, `r <= s`
    Svt(usize, usize),
    /// `E_{i,2n+m+r} + E_{2n+r,n+i}`
    Oxv(usize, usize),
    /// `E_{n+i,2n+r} - E_{2n+m+r,i}`
    Oyt(usize, usize),
    /// `E_{0,i} - E_{n+i,0}`
    Zx(usize),
    /// `E_{0,n+i} - E_{i,0}`
    Zy(usize),
    /// `E_{0,2n+r} - E_{2n+m+r,0}`
    Zt(usize),
    /// `E_{0,2n+m+r} + E_{2n+r,0}`
    Zv(usize),
}

impl SuperAlgebra {
    pub fn new(family: Family, n: u16, m: u16) -> Self {
        SuperAlgebra { family, n, m }
    }

    pub fn index_range(&self) -> std::ops::RangeInclusive<usize> {
        let (n, m) = (self.n as usize, self.m as usize);
        match self.family {
            Family::Gl => 1..=n + m,
            Family::OspEven => 1..=2 * n + 2 * m,
            Family::OspOdd => 0..=2 * n + 2 * m,
        }
    }

    pub fn index_parity(&self, a: usize) -> u8 {
        let n = self.n as usize;
        match self.family {
            Family::Gl => (a > n) as u8,
            _ => (a > 2 * n) as u8,
        }
    }

    pub fn name(&self) -> String {
        match self.family {
            Family::Gl => format!("gl({}|{})", self.n, self.m),
            Family::OspEven => format!("osp({}|{})", 2 * self.n, 2 * self.m),
            Family::OspOdd => format!("osp({}|{})", 2 * self.n + 1, 2 * self.m),
        }
    }

    /// A basis, even elements first.
    pub fn basis(&self) -> Vec<Generator> {
        use Generator::*;
        let (n, m) = (self.n as usize, self.m as usize);
        let mut out = Vec::new();
        if self.family == Family::Gl {
            for a in 1..=n + m {
                for b in 1..=n + m {
                    if self.index_parity(a) == self.index_parity(b) {
                        out.push(Unit(a, b));
                    }
                }
            }
            for a in 1..=n + m {
                for b in 1..=n + m {
                    if self.index_parity(a) != self.index_parity(b) {
                        out.push(Unit(a, b));
                    }
                }
            }
            return out;
        }
        for i in 1..=n {
            for j in 1..=n {
                out.push(Kxx(i, j));
            }
        }
        for r in 1..=m {
            for s in 1..=m {
                out.push(Kff(r, s));
            }
        }
        for i in 1..=n {
            for j in i + 1..=n {
                out.push(Axy(i, j));
                out.push(Ayx(i, j));
            }
        }
        for r in 1..=m {
            for s in r..=m {
                out.push(Stv(r, s));
                out.push(Svt(r, s));
            }
        }
        if self.family == Family::OspOdd {
            for i in 1..=n {
                out.push(Zx(i));
                out.push(Zy(i));
            }
        }
        for i in 1..=n {
            for r in 1..=m {
                out.push(Kxf(i, r));
                out.push(Kfx(r, i));
                out.push(Oxv(i, r));
                out.push(Oyt(i, r));
            }
        }
        if self.family == Family::OspOdd {
            for r in 1..=m {
                out.push(Zt(r));
                out.push(Zv(r));
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.basis().len()
    }

    /// The Cartan elements `h_1..h_{n+m}`, whose eigenvalues give weights.
    pub fn cartan(&self) -> Vec<Generator> {
        let (n, m) = (self.n as usize, self.m as usize);
        match self.family {
            Family::Gl => (1..=n + m).map(|a| Generator::Unit(a, a)).collect(),
            _ => (1..=n).map(|i| Generator::Kxx(i, i)).chain((1..=m).map(|r| Generator::Kff(r, r))).collect(),
        }
    }

    /// Units of a generator with their coefficients; the first is the leading unit.
    pub fn units(&self, g: &Generator) -> Vec<((usize, usize), i64)> {
        use Generator::*;
        let (n, m) = (self.n as usize, self.m as usize);
        let (t, v) = (2 * n, 2 * n + m);
        match *g {
            Unit(a, b) => vec![((a, b), 1)],
            Kxx(i, j) => vec![((i, j), 1), ((n + j, n + i), -1)],
            Kff(r, s) => vec![((t + r, t + s), 1), ((v + s, v + r), -1)],
            Kxf(i, r) => vec![((i, t + r), 1), ((v + r, n + i), -1)],
            Kfx(r, i) => vec![((t + r, i), 1), ((n + i, v + r), 1)],
            Axy(i, j) => vec![((i, n + j), 1), ((j, n + i), -1)],
            Ayx(i, j) => vec![((n + i, j), 1), ((n + j, i), -1)],
            Stv(r, s) => vec![((t + r, v + s), 1), ((t + s, v + r), 1)],
            Svt(r, s) => vec![((v + r, t + s), 1), ((v + s, t + r), 1)],
            Oxv(i, r) => vec![((i, v + r), 1), ((t + r, n + i), 1)],
            Oyt(i, r) => vec![((n + i, t + r), 1), ((v + r, i), -1)],
            Zx(i) => vec![((0, i), 1), ((n + i, 0), -1)],
            Zy(i) => vec![((0, n + i), 1), ((i, 0), -1)],
            Zt(r) => vec![((0, t + r), 1), ((v + r, 0), -1)],
            Zv(r) => vec![((0, v + r), 1), ((t + r, 0), 1)],
        }
    }

    pub fn element(&self, g: &Generator) -> AlgebraElement {
        let mut x = AlgebraElement::zero(*self);
        for (u, c) in self.units(g) {
            x.add_unit(u, rat(c));
        }
        x
    }

    pub fn parity(&self, g: &Generator) -> u8 {
        let (a, b) = self.units(g)[0].0;
        (self.index_parity(a) + self.index_parity(b)) % 2
    }

    /// Coordinates of `x` in [`SuperAlgebra::basis`]; errors when `x` is outside the algebra.
    pub fn decompose(&self, x: &AlgebraElement) -> Result<Vec<(Generator, Rational)>> {
        let mut out = Vec::new();
        let mut rest = x.clone();
        for g in self.basis() {
            let el = self.element(&g);
            let (lead, _) = self.units(&g)[0];
            let c = x.coeff(lead) / el.coeff(lead);
            if !c.is_zero() {
                rest.add_scaled(&el, &-c.clone());
                out.push((g, c));
            }
        }
        if !rest.is_zero() {
            return Err(Error::NotInAlgebra(format!("{} is not in {}", x, self.name())));
        }
        Ok(out)
    }
}

/// Linear combination of matrix units.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    pub algebra: SuperAlgebra,
    units: BTreeMap<(usize, usize), Rational>,
}

impl AlgebraElement {
    pub fn zero(algebra: SuperAlgebra) -> Self {
        AlgebraElement { algebra, units: BTreeMap::new() }
    }

    /// Build from `(a, b, coefficient)` triples; checks that the result lies in the algebra.
    pub fn from_units(algebra: SuperAlgebra, units: &[(usize, usize, Rational)]) -> Result<Self> {
        let mut x = Self::zero(algebra);
        for (a, b, c) in units {
            if !algebra.index_range().contains(a) || !algebra.index_range().contains(b) {
                return Err(Error::InvalidArgument(format!("unit E_{{{a},{b}}} outside {}", algebra.name())));
            }
            x.add_unit((*a, *b), c.clone());
        }
        algebra.decompose(&x)?;
        Ok(x)
    }

    pub fn is_zero(&self) -> bool {
        self.units.is_empty()
    }

    pub fn coeff(&self, u: (usize, usize)) -> Rational {
        self.units.get(&u).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_unit(&mut self, u: (usize, usize), c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.units.entry(u).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.units.remove(&u);
        }
    }

    pub fn add_scaled(&mut self, other: &AlgebraElement, c: &Rational) {
        for (&u, x) in &other.units {
            self.add_unit(u, x * c);
        }
    }

    /// Parity when homogeneous.
    pub fn parity(&self) -> Option<u8> {
        let mut it = self.units.keys().map(|&(a, b)| (self.algebra.index_parity(a) + self.algebra.index_parity(b)) % 2);
        let first = it.next().unwrap_or(0);
        it.all(|p| p == first).then_some(first)
    }

    pub fn units(&self) -> impl Iterator<Item = ((usize, usize), &Rational)> {
        self.units.iter().map(|(&u, c)| (u, c))
    }
}

/// Super-bracket of matrix units:
/// `[E_ab, E_cd] = d_bc E_ad - (-1)^{|E_ab||E_cd|} d_da E_cb`, extended bilinearly.
pub fn bracket(x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
    let alg = x.algebra;
    let mut out = AlgebraElement::zero(alg);
    for (&(a, b), cx) in &x.units {
        let px = (alg.index_parity(a) + alg.index_parity(b)) % 2;
        for (&(c, d), cy) in &y.units {
            let py = (alg.index_parity(c) + alg.index_parity(d)) % 2;
            let k = cx * cy;
            if b == c {
                out.add_unit((a, d), k.clone());
            }
            if d == a {
                let sign = if px * py == 1 { Rational::one() } else { -Rational::one() };
                out.add_unit((c, b), k * sign);
            }
        }
    }
    out
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.units.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.units.iter().map(|(&(a, b), c)| format!("({c})E_{{{a},{b}}}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(SuperAlgebra::new(Family::Gl, 2, 3).dim(), 25);
        assert_eq!(SuperAlgebra::new(Family::OspEven, 2, 1).dim(), 17);
        let (n, m) = (2usize, 3usize);
        let expected = (2 * n * n - n) + (2 * m * m + m) + 4 * n * m;
        assert_eq!(SuperAlgebra::new(Family::OspEven, 2, 3).dim(), expected);
        assert_eq!(SuperAlgebra::new(Family::OspOdd, 2, 1).dim(), 10 + 3 + 10);
    }

    #[test]
    fn decompose_rejects_outside() {
        let alg = SuperAlgebra::new(Family::OspEven, 2, 1);
        assert!(AlgebraElement::from_units(alg, &[(1, 2, rat(1))]).is_err());
        assert!(AlgebraElement::from_units(alg, &[(1, 2, rat(1)), (4, 3, rat(-1))]).is_ok());
        let odd = SuperAlgebra::new(Family::OspOdd, 2, 1);
        assert!(AlgebraElement::from_units(odd, &[(0, 3, rat(1)), (1, 0, rat(-1))]).is_ok());
    }

    #[test]
    fn odd_units_anticommute() {
        let alg = SuperAlgebra::new(Family::Gl, 1, 1);
        let e = alg.element(&Generator::Unit(1, 2));
        let f = alg.element(&Generator::Unit(2, 1));
        let h = bracket(&e, &f);
        assert_eq!(h.coeff((1, 1)), rat(1));
        assert_eq!(h.coeff((2, 2)), rat(1));
    }
}
