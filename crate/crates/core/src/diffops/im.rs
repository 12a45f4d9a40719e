use num_traits::One;

use super::operator::DiffOperator;
use crate::error::{Error, Result};
use crate::exactalg::{rat, Rational, SuperPolynomial, Variable};

/// Parameters `(l1, l2, r, s, l)` of the mixing operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ImParams {
    pub l1: i64,
    pub l2: i64,
    pub r: i64,
    pub s: i64,
    pub l: i64,
}

fn eta_bar_poly(n: u16) -> SuperPolynomial {
    let mut p = SuperPolynomial::zero();
    for i in 1..=n {
        p = &p + &SuperPolynomial::product(&[Variable::X(i), Variable::Y(i)]);
    }
    p
}

fn eta_check_poly(m: u16) -> SuperPolynomial {
    let mut p = SuperPolynomial::zero();
    for r in 1..=m {
        p = &p + &SuperPolynomial::product(&[Variable::Theta(r), Variable::VarTheta(r)]);
    }
    p
}

/// Coefficients `a_0..a_l` with `Im = sum_p a_p etabar^p etacheck^(l-p)`.
pub fn im_coefficients(n: u16, p: ImParams) -> Vec<Rational> {
    let big_n = n as i64 + p.l1 + p.l2;
    let l = p.l;
    let mut a0 = Rational::one();
    for i in 1..=l + 1 {
        a0 *= rat(i) * rat(i + big_n - 1);
    }
    let mut out = vec![a0];
    for q in 0..l {
        let mut c = Rational::one();
        for i1 in 0..=q {
            c *= rat(l - i1) * rat(i1 + p.s - p.r - l);
        }
        for i2 in q + 2..=l + 1 {
            c *= rat(i2) * rat(i2 + big_n - 1);
        }
        out.push(c);
    }
    out
}

/// The polynomial `Im(l1,l2; r,s,l)` in `etabar`, `etacheck` for gl(n|m), as a
/// multiplication operator.
pub fn im_operator(n: u16, m: u16, p: ImParams) -> Result<DiffOperator> {
    let ok = 0 <= p.r && p.r < p.s && p.s <= m as i64 + 1 && 0 <= p.l && p.l <= p.s - p.r - 1 && p.l1 >= 0 && p.l2 >= 0;
    if !ok {
        return Err(Error::InvalidArgument(format!("Im parameters out of range: {p:?} with m={m}")));
    }
    let coeffs = im_coefficients(n, p);
    let eb = eta_bar_poly(n);
    let ec = eta_check_poly(m);
    let mut poly = SuperPolynomial::zero();
    for (q, c) in coeffs.iter().enumerate() {
        let term = eb.pow(q as u32).mul(&ec.pow((p.l - q as i64) as u32));
        poly.add_scaled(&term, c);
    }
    Ok(DiffOperator::mult(&poly))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn l_zero_is_scalar() {
        let op = im_operator(2, 3, ImParams { l1: 1, l2: 2, r: 0, s: 1, l: 0 }).unwrap();
        assert_eq!(op, DiffOperator::scalar(rat(5)));
    }

    #[test]
    fn rejects_bad_range() {
        assert!(im_operator(2, 3, ImParams { l1: 0, l2: 0, r: 0, s: 3, l: 3 }).is_err());
        assert!(im_operator(2, 3, ImParams { l1: 0, l2: 0, r: 2, s: 5, l: 0 }).is_err());
    }
}
