use num_traits::One;

use super::operator::DiffOperator;
use crate::error::{Error, Result};
use crate::exactalg::{rat, Family, GradingScheme, Rational, Variable};

use Variable::{Theta as Th, VarTheta as Vt, X, X0, Y};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorName {
    Delta,
    Eta,
    DeltaBar,
    EtaBar,
    DeltaCheck,
    EtaCheck,
    Flat,
    FlatPrime,
}

impl OperatorName {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "DELTA" => OperatorName::Delta,
            "ETA" => OperatorName::Eta,
            "DELTA_BAR" => OperatorName::DeltaBar,
            "ETA_BAR" => OperatorName::EtaBar,
            "DELTA_CHECK" => OperatorName::DeltaCheck,
            "ETA_CHECK" => OperatorName::EtaCheck,
            "FLAT" => OperatorName::Flat,
            "FLAT_PRIME" => OperatorName::FlatPrime,
            _ => return Err(Error::InvalidArgument(format!("unknown operator name {s}"))),
        })
    }
}

fn sum(ops: impl IntoIterator<Item = DiffOperator>) -> DiffOperator {
    let mut out = DiffOperator::zero();
    for op in ops {
        out.add_scaled(&op, &Rational::one());
    }
    out
}

/// Bosonic Laplacian with the scheme's split: `-sum_{i<=n1} x_i d_{y_i}
/// + sum_{n1<r<=n2} d_{x_r} d_{y_r} - sum_{s>n2} y_s d_{x_s}`.
fn delta_bar(n: u16, n1: u16, n2: u16) -> DiffOperator {
    sum((1..=n).map(|i| {
        if i <= n1 {
            -&DiffOperator::z_d(X(i), Y(i))
        } else if i <= n2 {
            DiffOperator::d_d(X(i), Y(i))
        } else {
            -&DiffOperator::z_d(Y(i), X(i))
        }
    }))
}

/// `sum_{i<=n1} y_i d_{x_i} + sum_{n1<r<=n2} x_r y_r + sum_{s>n2} x_s d_{y_s}`.
fn eta_bar(n: u16, n1: u16, n2: u16) -> DiffOperator {
    sum((1..=n).map(|i| {
        if i <= n1 {
            DiffOperator::z_d(Y(i), X(i))
        } else if i <= n2 {
            DiffOperator::mult_var(X(i)).compose(&DiffOperator::mult_var(Y(i)))
        } else {
            DiffOperator::z_d(X(i), Y(i))
        }
    }))
}

/// `sum_r d_{th_r} d_{vt_r}`, with `d_{vt_r}` acting first.
fn delta_check(m: u16) -> DiffOperator {
    sum((1..=m).map(|r| DiffOperator::d_d(Th(r), Vt(r))))
}

/// `sum_r th_r vt_r`.
fn eta_check(m: u16) -> DiffOperator {
    sum((1..=m).map(|r| DiffOperator::mult_var(Th(r)).compose(&DiffOperator::mult_var(Vt(r)))))
}

fn flat(n: u16, n1: u16) -> DiffOperator {
    sum((1..=n).map(|i| {
        let e = DiffOperator::z_d(X(i), X(i));
        if i <= n1 {
            -&e
        } else {
            e
        }
    }))
}

fn flat_prime(n: u16, n2: u16) -> DiffOperator {
    sum((1..=n).map(|i| {
        let e = DiffOperator::z_d(Y(i), Y(i));
        if i <= n2 {
            e
        } else {
            -&e
        }
    }))
}

/// The named operators of a scheme, written out from their defining formulas.
///
/// For the odd orthosymplectic family `DELTA` and `ETA` are `d_{x0}^2 + 2 Delta`
/// and `x0^2 + 2 eta`; the barred and checked names refer to the parts without `x0`.
pub fn named_operator(name: OperatorName, scheme: &GradingScheme) -> Result<DiffOperator> {
    let (n, m) = (scheme.n(), scheme.m());
    let (n1, n2) = scheme.split();
    let op = match name {
        OperatorName::DeltaBar => delta_bar(n, n1, n2),
        OperatorName::EtaBar => eta_bar(n, n1, n2),
        OperatorName::DeltaCheck => delta_check(m),
        OperatorName::EtaCheck => eta_check(m),
        OperatorName::Delta | OperatorName::Eta => {
            let inner = if name == OperatorName::Delta {
                &delta_bar(n, n1, n2) + &delta_check(m)
            } else {
                &eta_bar(n, n1, n2) + &eta_check(m)
            };
            if scheme.family() == Family::OspOdd {
                let x0_part = if name == OperatorName::Delta {
                    DiffOperator::deriv(X0).pow(2)
                } else {
                    DiffOperator::mult_var(X0).pow(2)
                };
                &x0_part + &inner.scale(&rat(2))
            } else {
                inner
            }
        }
        OperatorName::Flat | OperatorName::FlatPrime => {
            if !scheme.is_twisted() {
                return Err(Error::InvalidArgument(format!("{name:?} is defined for twisted schemes only")));
            }
            if name == OperatorName::Flat {
                flat(n, n1)
            } else {
                flat_prime(n, n2)
            }
        }
    };
    Ok(op)
}

/// `Delta` of the scheme (with the `x0` part for the odd family).
pub fn laplacian(scheme: &GradingScheme) -> DiffOperator {
    named_operator(OperatorName::Delta, scheme).expect("always defined")
}

/// `eta` of the scheme (with the `x0` part for the odd family).
pub fn eta(scheme: &GradingScheme) -> DiffOperator {
    named_operator(OperatorName::Eta, scheme).expect("always defined")
}

/// Laplacian without the `x0` part.
pub fn inner_laplacian(scheme: &GradingScheme) -> DiffOperator {
    &named_operator(OperatorName::DeltaBar, scheme).unwrap() + &named_operator(OperatorName::DeltaCheck, scheme).unwrap()
}

/// Euler operator `sum z d_z` over the given variables.
pub fn euler(vars: &[Variable]) -> DiffOperator {
    sum(vars.iter().map(|&v| DiffOperator::z_d(v, v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_polynomial;

    #[test]
    fn delta_of_eta() {
        for (n, m) in [(2u16, 1u16), (2, 3), (1, 1)] {
            let s = GradingScheme::gl_natural(n, m).unwrap();
            let e = eta(&s).apply(&parse_polynomial("1").unwrap());
            let d = laplacian(&s).apply(&e);
            assert_eq!(d, parse_polynomial(&format!("{}", n as i64 - m as i64)).unwrap());
        }
    }

    #[test]
    fn flat_values() {
        let s = GradingScheme::gl_twisted(4, 1, 1, 3).unwrap();
        let f = named_operator(OperatorName::Flat, &s).unwrap();
        assert_eq!(f.apply(&parse_polynomial("x2").unwrap()), parse_polynomial("x2").unwrap());
        assert_eq!(f.apply(&parse_polynomial("x1").unwrap()), parse_polynomial("-x1").unwrap());
        assert!(named_operator(OperatorName::Flat, &GradingScheme::gl_natural(2, 1).unwrap()).is_err());
    }
}
