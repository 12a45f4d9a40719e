use num_traits::One;

use super::named::{inner_laplacian, laplacian};
use super::operator::DiffOperator;
use crate::error::{Error, Result};
use crate::exactalg::{rat, Family, GradingScheme, Rational, SuperMonomial, SuperPolynomial, Variable};

/// A linear map on polynomials. Differential operators are one kind; formal
/// integration is another, with no finite normal form.
pub trait PolyMap {
    fn apply_to(&self, p: &SuperPolynomial) -> Result<SuperPolynomial>;
}

impl PolyMap for DiffOperator {
    fn apply_to(&self, p: &SuperPolynomial) -> Result<SuperPolynomial> {
        Ok(self.apply(p))
    }
}

/// Iterated antiderivative, rightmost variable first.
#[derive(Debug, Clone)]
pub struct Integration(pub Vec<Variable>);

impl PolyMap for Integration {
    fn apply_to(&self, p: &SuperPolynomial) -> Result<SuperPolynomial> {
        let mut cur = p.clone();
        for &v in self.0.iter().rev() {
            cur = cur.integrate_bosonic(v)?;
        }
        Ok(cur)
    }
}

/// Filtration measure used to certify that `T2` lowers degree: the largest value of
/// `2*deg + (number of "convertible" bosons)` over the terms, counting only variables
/// outside `exclude`. Convertible bosons are `y_i` with `i <= n1` and `x_s` with
/// `s > n2`, the ones the twisted Laplacian trades without lowering degree.
pub fn filtration_measure(scheme: &GradingScheme, exclude: Vec<Variable>) -> impl Fn(&SuperPolynomial) -> i64 {
    let (n1, n2) = scheme.split();
    move |p: &SuperPolynomial| {
        p.terms()
            .map(|(m, _)| {
                let mut w = 0i64;
                for (v, e) in m.factors() {
                    if exclude.contains(&v) {
                        continue;
                    }
                    let e = e as i64;
                    w += 2 * e;
                    match v {
                        Variable::Y(i) if i <= n1 => w += e,
                        Variable::X(s) if s > n2 => w += e,
                        _ => {}
                    }
                }
                w
            })
            .max()
            .unwrap_or(-1)
    }
}

/// Solve `(T1 + T2) f = 0` from a seed `hg` with `T1 h = 0`:
/// `f = sum_i (-T1inv T2)^i (hg)`.
///
/// Stops when a term vanishes. Errors if more than `deg(seed) + 1` steps are needed,
/// if `T1inv` fails to be a right inverse of `T1` on an encountered term, or if a
/// term does not have strictly smaller filtration measure than its predecessor.
pub fn xu_solve(
    t1: &dyn PolyMap,
    t1_inv: &dyn PolyMap,
    t2: &dyn PolyMap,
    seed: &SuperPolynomial,
    filtration: &dyn Fn(&SuperPolynomial) -> i64,
) -> Result<SuperPolynomial> {
    if !t1.apply_to(seed)?.is_zero() {
        return Err(Error::InvalidArgument("seed is not annihilated by T1".into()));
    }
    let bound = seed.max_total_degree() as usize + 1;
    let mut sum = seed.clone();
    let mut term = seed.clone();
    let mut i = 0usize;
    loop {
        let q = t2.apply_to(&term)?;
        if q.is_zero() {
            return Ok(sum);
        }
        i += 1;
        if i > bound {
            return Err(Error::SeriesDiverged { bound });
        }
        let lifted = t1_inv.apply_to(&q)?;
        if t1.apply_to(&lifted)? != q {
            return Err(Error::Filtration("T1inv is not a right inverse of T1 on the series terms".into()));
        }
        let next = -&lifted;
        if filtration(&next) >= filtration(&term) {
            return Err(Error::Filtration(format!("term {i} does not lower the filtration measure")));
        }
        sum = &sum + &next;
        term = next;
    }
}

/// Closed-form harmonic projectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    /// `sum_i (-1)^i x1^i y1^i / prod_{r=1}^i (a1+r)(b1+r) * T2^i` with
    /// `T2 = Delta - d_{x1} d_{y1}` (gl, natural).
    Xu { alpha1: u32, beta1: u32 },
    /// `sum_i (-1)^i x_p^(k1+i) y_p^(k2+i) / prod_{r=1}^i (k1+r)(k2+r) * Dt^i` with
    /// `p = n1+1` and `Dt = Delta - d_{x_p} d_{y_p}` (gl, natural or twisted).
    Tk { k1: u32, k2: u32 },
    /// `sum_i (-2)^i x0^(2i+iota) / (2i+iota)! * Delta^i` (odd orthosymplectic).
    TIota { iota: u32 },
}

/// A [`SeriesKind`] bound to a scheme.
#[derive(Debug, Clone)]
pub struct SeriesApplicator {
    pub kind: SeriesKind,
    pub scheme: GradingScheme,
    t2: DiffOperator,
}

pub fn t_series(kind: SeriesKind, scheme: &GradingScheme) -> Result<SeriesApplicator> {
    let t2 = match kind {
        SeriesKind::Xu { .. } => {
            if scheme.kind() != crate::exactalg::SchemeKind::GlNatural {
                return Err(Error::InvalidArgument("this series is for the natural gl scheme".into()));
            }
            &laplacian(scheme) - &DiffOperator::d_d(Variable::X(1), Variable::Y(1))
        }
        SeriesKind::Tk { .. } => {
            if scheme.family() != Family::Gl {
                return Err(Error::InvalidArgument("this series is for gl schemes".into()));
            }
            let p = scheme.split().0 + 1;
            &laplacian(scheme) - &DiffOperator::d_d(Variable::X(p), Variable::Y(p))
        }
        SeriesKind::TIota { iota } => {
            if scheme.family() != Family::OspOdd || iota > 1 {
                return Err(Error::InvalidArgument("this series is for odd orthosymplectic schemes, iota in {0,1}".into()));
            }
            inner_laplacian(scheme)
        }
    };
    Ok(SeriesApplicator { kind, scheme: *scheme, t2 })
}

impl SeriesApplicator {
    pub fn apply(&self, p: &SuperPolynomial) -> Result<SuperPolynomial> {
        let bound = p.max_total_degree() as i64 + 1;
        let mut out = SuperPolynomial::zero();
        let mut cur = p.clone();
        let mut coeff = Rational::one();
        let mut i = 0i64;
        let prefix = |i: i64| -> SuperMonomial {
            match self.kind {
                SeriesKind::Xu { .. } => {
                    SuperMonomial::from_factors(&[(Variable::X(1), i as u32), (Variable::Y(1), i as u32)]).unwrap().unwrap().1
                }
                SeriesKind::Tk { k1, k2 } => {
                    let q = self.scheme.split().0 + 1;
                    SuperMonomial::from_factors(&[(Variable::X(q), k1 + i as u32), (Variable::Y(q), k2 + i as u32)])
                        .unwrap()
                        .unwrap()
                        .1
                }
                SeriesKind::TIota { iota } => SuperMonomial::var_pow(Variable::X0, 2 * i as u32 + iota),
            }
        };
        match self.kind {
            SeriesKind::Tk { .. } => {
                let q = self.scheme.split().0 + 1;
                if p.monomials().any(|m| m.exponent(Variable::X(q)) > 0 || m.exponent(Variable::Y(q)) > 0) {
                    return Err(Error::InvalidArgument(format!("input must not involve x{q}, y{q}")));
                }
            }
            SeriesKind::TIota { iota } => {
                if p.monomials().any(|m| m.exponent(Variable::X0) > 0) {
                    return Err(Error::InvalidArgument("input must not involve x0".into()));
                }
                let mut f = Rational::one();
                for j in 1..=iota as i64 {
                    f *= rat(j);
                }
                coeff = f.recip();
            }
            SeriesKind::Xu { .. } => {}
        }
        while !cur.is_zero() {
            if i > bound {
                return Err(Error::SeriesDiverged { bound: bound as usize });
            }
            let shifted = SuperPolynomial::monomial(prefix(i)).mul(&cur);
            out.add_scaled(&shifted, &coeff);
            i += 1;
            coeff = match self.kind {
                SeriesKind::Xu { alpha1, beta1 } => -coeff / (rat(alpha1 as i64 + i) * rat(beta1 as i64 + i)),
                SeriesKind::Tk { k1, k2 } => -coeff / (rat(k1 as i64 + i) * rat(k2 as i64 + i)),
                SeriesKind::TIota { iota } => {
                    let top = 2 * i + iota as i64;
                    coeff * rat(-2) / (rat(top) * rat(top - 1))
                }
            };
            cur = self.t2.apply(&cur);
        }
        Ok(out)
    }
}

/// The generic solver configured for a scheme: returns `(T1, T1inv, T2, excluded vars)`.
pub(crate) fn xu_setup(scheme: &GradingScheme) -> (DiffOperator, Integration, DiffOperator, Vec<Variable>) {
    match scheme.family() {
        Family::OspOdd => {
            let t1 = DiffOperator::deriv(Variable::X0).pow(2);
            let t2 = inner_laplacian(scheme).scale(&rat(2));
            (t1, Integration(vec![Variable::X0, Variable::X0]), t2, vec![Variable::X0])
        }
        _ => {
            let p = scheme.split().0 + 1;
            let t1 = DiffOperator::d_d(Variable::X(p), Variable::Y(p));
            let t2 = &laplacian(scheme) - &t1;
            (t1, Integration(vec![Variable::X(p), Variable::Y(p)]), t2, vec![Variable::X(p), Variable::Y(p)])
        }
    }
}

/// Harmonic vector generated by a seed monomial through the generic solver.
pub fn xu_vector(scheme: &GradingScheme, seed: &SuperMonomial) -> Result<SuperPolynomial> {
    let (t1, t1_inv, t2, exclude) = xu_setup(scheme);
    let f = filtration_measure(scheme, exclude);
    xu_solve(&t1, &t1_inv, &t2, &SuperPolynomial::monomial(seed.clone()), &f)
}

/// Whether a monomial is an admissible seed: `a_p * b_p = 0` for the pair `x_p, y_p`
/// (gl, osp even) or `x0`-degree at most 1 (odd family).
pub fn is_seed(scheme: &GradingScheme, m: &SuperMonomial) -> bool {
    match scheme.family() {
        Family::OspOdd => m.exponent(Variable::X0) <= 1,
        _ => {
            let p = scheme.split().0 + 1;
            m.exponent(Variable::X(p)) == 0 || m.exponent(Variable::Y(p)) == 0
        }
    }
}
