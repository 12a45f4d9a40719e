use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exactalg::{GradeLabel, GradingScheme, SchemeKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// gl(n|m), natural grading
    T1,
    /// gl(n|m) and osp(2n|2m), twisted gradings
    T2,
    /// osp(2n|2m), natural grading
    T3,
    /// osp(2n+1|2m), both gradings
    T4,
}

impl Theorem {
    pub fn for_scheme(scheme: &GradingScheme) -> Theorem {
        match scheme.kind() {
            SchemeKind::GlNatural => Theorem::T1,
            SchemeKind::GlTwisted | SchemeKind::OspEvenTwisted => Theorem::T2,
            SchemeKind::OspEvenNatural => Theorem::T3,
            SchemeKind::OspOddNatural | SchemeKind::OspOddTwisted => Theorem::T4,
        }
    }

    pub fn applies_to(self, scheme: &GradingScheme) -> bool {
        Theorem::for_scheme(scheme) == self
    }
}

impl FromStr for Theorem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim_start_matches(['T', 't']) {
            "1" => Ok(Theorem::T1),
            "2" => Ok(Theorem::T2),
            "3" => Ok(Theorem::T3),
            "4" => Ok(Theorem::T4),
            _ => Err(Error::InvalidArgument(format!("unknown theorem {s}"))),
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self {
            Theorem::T1 => 1,
            Theorem::T2 => 2,
            Theorem::T3 => 3,
            Theorem::T4 => 4,
        };
        write!(f, "T{k}")
    }
}

/// The irreducibility condition evaluated at one label, with the clause that decided it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredicateValue {
    pub value: bool,
    pub clause: String,
}

fn yes(clause: String) -> Result<PredicateValue> {
    Ok(PredicateValue { value: true, clause })
}

fn no(clause: String) -> Result<PredicateValue> {
    Ok(PredicateValue { value: false, clause })
}

fn domain(msg: String) -> Result<PredicateValue> {
    Err(Error::Domain(msg))
}

/// Whether the harmonic slice is an irreducible module, by the closed-form condition
/// for the scheme.
pub fn irreducibility_predicate(scheme: &GradingScheme, label: &GradeLabel) -> Result<PredicateValue> {
    scheme.check_label(label)?;
    let (n, m) = (scheme.n() as i64, scheme.m() as i64);
    let (n1, n2) = scheme.split();
    let (n1, n2) = (n1 as i64, n2 as i64);
    let c = m + 1 - n;
    match (scheme.kind(), *label) {
        (SchemeKind::GlNatural, GradeLabel::Pair(l, lp)) => {
            if l < 0 || lp < 0 {
                return domain(format!("labels must be non-negative, got ({l},{lp})"));
            }
            if l > c {
                yes(format!("l = {l} > m+1-n = {c}"))
            } else if lp > c {
                yes(format!("l' = {lp} > m+1-n = {c}"))
            } else if l + lp <= c {
                yes(format!("l+l' = {} <= m+1-n = {c}", l + lp))
            } else {
                no(format!("l, l' <= {c} < l+l' = {}", l + lp))
            }
        }
        (SchemeKind::GlTwisted, GradeLabel::Pair(l, lp)) => {
            if n2 == n && lp < 0 {
                return domain(format!("l' must be non-negative when n2 = n, got {lp}"));
            }
            let b = n1 + m + 1 - n2;
            if l + lp <= b {
                yes(format!("l+l' = {} <= n1+m+1-n2 = {b}", l + lp))
            } else if n2 == n && !(n1 + 1 - n..=n1 + m + 1 - n).contains(&l) {
                yes(format!("n2 = n and l = {l} outside [{}, {}]", n1 + 1 - n, n1 + m + 1 - n))
            } else {
                no(format!("l+l' = {} > n1+m+1-n2 = {b}", l + lp))
            }
        }
        (SchemeKind::OspEvenNatural, GradeLabel::Single(k)) => {
            if n <= 1 {
                return domain("the orthosymplectic natural condition needs n > 1".into());
            }
            if k < 0 {
                return domain(format!("k must be non-negative, got {k}"));
            }
            if k <= c {
                yes(format!("k = {k} <= m+1-n = {c}"))
            } else if k > 2 * c {
                yes(format!("k = {k} > 2(m+1-n) = {}", 2 * c))
            } else {
                no(format!("{c} < k = {k} <= {}", 2 * c))
            }
        }
        (SchemeKind::OspEvenTwisted, GradeLabel::Single(k)) => {
            let b = n1 + m + 1 - n2;
            if k <= b {
                yes(format!("k = {k} <= n1+m+1-n2 = {b}"))
            } else {
                no(format!("k = {k} > n1+m+1-n2 = {b}"))
            }
        }
        (SchemeKind::OspOddNatural, GradeLabel::Single(k)) => {
            if k < 0 {
                return domain(format!("k must be non-negative, got {k}"));
            }
            yes("always irreducible".into())
        }
        (SchemeKind::OspOddTwisted, GradeLabel::Single(_)) => yes("always irreducible".into()),
        _ => unreachable!("label checked"),
    }
}

/// Whether the theorem asserts the direct-sum decomposition of the slice.
pub fn decomposition_hypothesis(scheme: &GradingScheme, label: &GradeLabel) -> bool {
    let (n, m) = (scheme.n() as i64, scheme.m() as i64);
    let (n1, n2) = scheme.split();
    let b = n1 as i64 + m + 1 - n2 as i64;
    let c = m + 1 - n;
    match (scheme.kind(), *label) {
        (SchemeKind::GlNatural, GradeLabel::Pair(l, lp)) => (l - lp).abs() > c || l + lp <= c,
        (SchemeKind::GlTwisted, GradeLabel::Pair(l, lp)) => l + lp <= b,
        (SchemeKind::OspEvenNatural, GradeLabel::Single(k)) => k <= c,
        (SchemeKind::OspEvenTwisted, GradeLabel::Single(k)) => k <= b,
        (SchemeKind::OspOddNatural | SchemeKind::OspOddTwisted, _) => true,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let gl = GradingScheme::gl_natural(2, 3).unwrap();
        assert!(irreducibility_predicate(&gl, &GradeLabel::Pair(3, 1)).unwrap().value);
        assert!(!irreducibility_predicate(&gl, &GradeLabel::Pair(2, 1)).unwrap().value);
        let osp = GradingScheme::osp_even_natural(2, 3).unwrap();
        assert!(!irreducibility_predicate(&osp, &GradeLabel::Single(3)).unwrap().value);
        assert!(irreducibility_predicate(&osp, &GradeLabel::Single(5)).unwrap().value);
        let odd = GradingScheme::osp_odd_natural(2, 3).unwrap();
        assert!(irreducibility_predicate(&odd, &GradeLabel::Single(4)).unwrap().value);
    }

    #[test]
    fn domains() {
        let gl = GradingScheme::gl_natural(2, 3).unwrap();
        assert!(matches!(irreducibility_predicate(&gl, &GradeLabel::Pair(-1, 0)), Err(Error::Domain(_))));
        let osp1 = GradingScheme::osp_even_natural(1, 3).unwrap();
        assert!(irreducibility_predicate(&osp1, &GradeLabel::Single(1)).is_err());
        let tw = GradingScheme::gl_twisted(3, 1, 1, 3).unwrap();
        assert!(irreducibility_predicate(&tw, &GradeLabel::Pair(0, -1)).is_err());
        assert!(irreducibility_predicate(&gl, &GradeLabel::Single(1)).is_err());
    }
}
