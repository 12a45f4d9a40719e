use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::monomial::{SuperMonomial, Variable, MAX_M, MAX_N};
use crate::error::{Error, Result};

/// Which Lie superalgebra acts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// gl(n|m) on `x, y, th, vt`, labels `(l, l')`.
    Gl,
    /// osp(2n|2m) on `x, y, th, vt`, label `k`.
    OspEven,
    /// osp(2n+1|2m) on `x0, x, y, th, vt`, label `k`.
    OspOdd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SchemeKind {
    GlNatural,
    GlTwisted,
    OspEvenNatural,
    OspEvenTwisted,
    OspOddNatural,
    OspOddTwisted,
}

impl SchemeKind {
    pub fn family(self) -> Family {
        match self {
            SchemeKind::GlNatural | SchemeKind::GlTwisted => Family::Gl,
            SchemeKind::OspEvenNatural | SchemeKind::OspEvenTwisted => Family::OspEven,
            SchemeKind::OspOddNatural | SchemeKind::OspOddTwisted => Family::OspOdd,
        }
    }

    pub fn is_twisted(self) -> bool {
        matches!(self, SchemeKind::GlTwisted | SchemeKind::OspEvenTwisted | SchemeKind::OspOddTwisted)
    }

    pub fn name(self) -> &'static str {
        match self {
            SchemeKind::GlNatural => "GL_NATURAL",
            SchemeKind::GlTwisted => "GL_TWISTED",
            SchemeKind::OspEvenNatural => "OSP_EVEN_NATURAL",
            SchemeKind::OspEvenTwisted => "OSP_EVEN_TWISTED",
            SchemeKind::OspOddNatural => "OSP_ODD_NATURAL",
            SchemeKind::OspOddTwisted => "OSP_ODD_TWISTED",
        }
    }

    pub fn all() -> [SchemeKind; 6] {
        [
            SchemeKind::GlNatural,
            SchemeKind::GlTwisted,
            SchemeKind::OspEvenNatural,
            SchemeKind::OspEvenTwisted,
            SchemeKind::OspOddNatural,
            SchemeKind::OspOddTwisted,
        ]
    }
}

/// A grading scheme together with its parameters.
///
/// Natural schemes behave like twisted ones with split `(n1, n2) = (0, n)`; most
/// formulas below are written once in terms of [`GradingScheme::split`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GradingScheme {
    kind: SchemeKind,
    n: u16,
    m: u16,
    n1: u16,
    n2: u16,
}

impl GradingScheme {
    pub fn new(kind: SchemeKind, n: u16, m: u16, twist: Option<(u16, u16)>) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::InvalidArgument(format!("n must be in 1..={MAX_N}, got {n}")));
        }
        if m > MAX_M {
            return Err(Error::InvalidArgument(format!("m must be at most {MAX_M}, got {m}")));
        }
        let (n1, n2) = match (kind.is_twisted(), twist) {
            (false, None) => (0, n),
            (false, Some(_)) => {
                return Err(Error::InvalidArgument(format!("{} takes no n1, n2", kind.name())))
            }
            (true, None) => return Err(Error::InvalidArgument(format!("{} needs n1 and n2", kind.name()))),
            (true, Some((n1, n2))) => {
                if !(n1 >= 1 && n1 + 1 < n2 && n2 <= n) {
                    return Err(Error::InvalidArgument(format!(
                        "twisted schemes need 1 < n1+1 < n2 <= n, got n={n}, n1={n1}, n2={n2}"
                    )));
                }
                (n1, n2)
            }
        };
        Ok(GradingScheme { kind, n, m, n1, n2 })
    }

    pub fn gl_natural(n: u16, m: u16) -> Result<Self> {
        Self::new(SchemeKind::GlNatural, n, m, None)
    }
    pub fn gl_twisted(n: u16, m: u16, n1: u16, n2: u16) -> Result<Self> {
        Self::new(SchemeKind::GlTwisted, n, m, Some((n1, n2)))
    }
    pub fn osp_even_natural(n: u16, m: u16) -> Result<Self> {
        Self::new(SchemeKind::OspEvenNatural, n, m, None)
    }
    pub fn osp_even_twisted(n: u16, m: u16, n1: u16, n2: u16) -> Result<Self> {
        Self::new(SchemeKind::OspEvenTwisted, n, m, Some((n1, n2)))
    }
    pub fn osp_odd_natural(n: u16, m: u16) -> Result<Self> {
        Self::new(SchemeKind::OspOddNatural, n, m, None)
    }
    pub fn osp_odd_twisted(n: u16, m: u16, n1: u16, n2: u16) -> Result<Self> {
        Self::new(SchemeKind::OspOddTwisted, n, m, Some((n1, n2)))
    }

    pub fn kind(&self) -> SchemeKind {
        self.kind
    }
    pub fn family(&self) -> Family {
        self.kind.family()
    }
    pub fn n(&self) -> u16 {
        self.n
    }
    pub fn m(&self) -> u16 {
        self.m
    }
    pub fn is_twisted(&self) -> bool {
        self.kind.is_twisted()
    }
    pub fn twist(&self) -> Option<(u16, u16)> {
        self.is_twisted().then_some((self.n1, self.n2))
    }
    /// `(n1, n2)`, with `(0, n)` for natural schemes.
    pub fn split(&self) -> (u16, u16) {
        (self.n1, self.n2)
    }
    pub fn has_x0(&self) -> bool {
        self.family() == Family::OspOdd
    }
    /// Slices of twisted schemes are infinite-dimensional.
    pub fn is_finite(&self) -> bool {
        !self.is_twisted()
    }

    /// Same parameters, natural representation.
    pub fn untwisted(&self) -> GradingScheme {
        let kind = match self.family() {
            Family::Gl => SchemeKind::GlNatural,
            Family::OspEven => SchemeKind::OspEvenNatural,
            Family::OspOdd => SchemeKind::OspOddNatural,
        };
        GradingScheme { kind, n: self.n, m: self.m, n1: 0, n2: self.n }
    }

    /// The gl(n|m)-type scheme sharing this scheme's twist; its labels refine ours.
    pub fn gl_companion(&self) -> GradingScheme {
        let kind = if self.is_twisted() { SchemeKind::GlTwisted } else { SchemeKind::GlNatural };
        GradingScheme { kind, ..*self }
    }

    pub fn bosonic_variables(&self) -> Vec<Variable> {
        let mut v = Vec::new();
        if self.has_x0() {
            v.push(Variable::X0);
        }
        v.extend((1..=self.n).map(Variable::X));
        v.extend((1..=self.n).map(Variable::Y));
        v
    }

    pub fn fermionic_variables(&self) -> Vec<Variable> {
        let mut v: Vec<Variable> = (1..=self.m).map(Variable::Theta).collect();
        v.extend((1..=self.m).map(Variable::VarTheta));
        v
    }

    pub fn variables(&self) -> Vec<Variable> {
        let mut v = self.bosonic_variables();
        v.extend(self.fermionic_variables());
        v
    }

    pub fn contains_variable(&self, v: Variable) -> bool {
        match v {
            Variable::X0 => self.has_x0(),
            Variable::X(i) | Variable::Y(i) => (1..=self.n).contains(&i),
            Variable::Theta(r) | Variable::VarTheta(r) => (1..=self.m).contains(&r),
        }
    }

    pub fn check_monomial(&self, mono: &SuperMonomial) -> Result<()> {
        for (v, _) in mono.factors() {
            if !self.contains_variable(v) {
                return Err(Error::InvalidArgument(format!("variable {v} is not part of {self}")));
            }
        }
        Ok(())
    }

    /// `(l, l')` of the gl-type grading with this scheme's split, ignoring `x0`.
    pub(crate) fn gl_label(&self, mono: &SuperMonomial) -> (i64, i64) {
        let (n1, n2) = (self.n1, self.n2);
        let (mut l, mut lp) = (0i64, 0i64);
        for (v, e) in mono.bosons() {
            let e = e as i64;
            match v {
                Variable::X(i) if i <= n1 => l -= e,
                Variable::X(_) => l += e,
                Variable::Y(i) if i <= n2 => lp += e,
                Variable::Y(_) => lp -= e,
                _ => {}
            }
        }
        for v in mono.fermions() {
            match v {
                Variable::Theta(_) => l += 1,
                _ => lp += 1,
            }
        }
        (l, lp)
    }

    /// Grading label of a monomial; errors when it uses variables outside the scheme.
    pub fn label(&self, mono: &SuperMonomial) -> Result<GradeLabel> {
        self.check_monomial(mono)?;
        Ok(self.label_unchecked(mono))
    }

    pub(crate) fn label_unchecked(&self, mono: &SuperMonomial) -> GradeLabel {
        let (l, lp) = self.gl_label(mono);
        match self.family() {
            Family::Gl => GradeLabel::Pair(l, lp),
            Family::OspEven => GradeLabel::Single(l + lp),
            Family::OspOdd => GradeLabel::Single(l + lp + mono.exponent(Variable::X0) as i64),
        }
    }

    pub fn check_label(&self, label: &GradeLabel) -> Result<()> {
        match (self.family(), label) {
            (Family::Gl, GradeLabel::Pair(..)) => Ok(()),
            (Family::OspEven | Family::OspOdd, GradeLabel::Single(_)) => Ok(()),
            _ => Err(Error::InvalidArgument(format!("label {label} does not fit {self}"))),
        }
    }
}

impl fmt::Display for GradingScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.twist() {
            Some((n1, n2)) => write!(f, "{}({},{},{},{})", self.kind.name(), self.n, self.m, n1, n2),
            None => write!(f, "{}({},{})", self.kind.name(), self.n, self.m),
        }
    }
}

/// `(l, l')` for gl schemes, `k` for orthosymplectic ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GradeLabel {
    Pair(i64, i64),
    Single(i64),
}

impl GradeLabel {
    /// Shift by `i` applications of the degree-raising invariant.
    pub fn lowered(&self, i: i64) -> GradeLabel {
        match *self {
            GradeLabel::Pair(l, lp) => GradeLabel::Pair(l - i, lp - i),
            GradeLabel::Single(k) => GradeLabel::Single(k - 2 * i),
        }
    }

    pub fn total(&self) -> i64 {
        match *self {
            GradeLabel::Pair(l, lp) => l + lp,
            GradeLabel::Single(k) => k,
        }
    }
}

impl fmt::Display for GradeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GradeLabel::Pair(l, lp) => write!(f, "({l},{lp})"),
            GradeLabel::Single(k) => write!(f, "{k}"),
        }
    }
}

/// Grade a monomial under a scheme.
pub fn grade(mono: &SuperMonomial, scheme: &GradingScheme) -> Result<GradeLabel> {
    scheme.label(mono)
}

/// Monomial basis of a graded slice, in ascending monomial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSlice {
    pub scheme: GradingScheme,
    pub label: GradeLabel,
    pub cap: Option<u32>,
    pub basis: Vec<SuperMonomial>,
}

impl GradedSlice {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Whether `basis` spans the whole slice rather than a degree window of it.
    pub fn is_complete(&self) -> bool {
        if self.scheme.is_twisted() {
            return false;
        }
        match self.cap {
            None => true,
            Some(c) => natural_degree(&self.label).map_or(true, |d| d <= c as i64),
        }
    }
}

fn natural_degree(label: &GradeLabel) -> Option<i64> {
    Some(label.total())
}

/// All exponent vectors of length `k` with sum `d`, in lexicographic order.
pub(crate) fn compositions(k: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; k];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
    }
    if k == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out
}

pub(crate) fn bosonic_monomial(vars: &[Variable], exps: &[u32]) -> SuperMonomial {
    let factors: Vec<(Variable, u32)> =
        vars.iter().zip(exps).filter(|(_, &e)| e > 0).map(|(&v, &e)| (v, e)).collect();
    SuperMonomial::from_factors(&factors).unwrap().unwrap().1
}

/// All products of `k` distinct variables from `vars`, as canonical monomials.
pub(crate) fn fermion_subsets(vars: &[Variable], k: usize) -> Vec<SuperMonomial> {
    fn rec(vars: &[Variable], start: usize, k: usize, cur: &mut Vec<(Variable, u32)>, out: &mut Vec<SuperMonomial>) {
        if cur.len() == k {
            out.push(SuperMonomial::from_factors(cur).unwrap().unwrap().1);
            return;
        }
        for i in start..vars.len() {
            cur.push((vars[i], 1));
            rec(vars, i + 1, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(vars, 0, k, &mut Vec::new(), &mut out);
    out
}

fn products(a: &[SuperMonomial], b: &[SuperMonomial], out: &mut BTreeSet<SuperMonomial>) {
    for p in a {
        for q in b {
            if let Some((_, m)) = p.mul(q) {
                out.insert(m);
            }
        }
    }
}

fn monomials_of_degree(vars: &[Variable], d: u32) -> Vec<SuperMonomial> {
    compositions(vars.len(), d).iter().map(|e| bosonic_monomial(vars, e)).collect()
}

/// Every monomial of the scheme's variables with total degree at most `cap`.
pub(crate) fn monomials_up_to(scheme: &GradingScheme, cap: u32) -> Vec<SuperMonomial> {
    let bos = scheme.bosonic_variables();
    let ferm = scheme.fermionic_variables();
    let mut fsets: Vec<Vec<SuperMonomial>> = Vec::new();
    for k in 0..=ferm.len() {
        fsets.push(fermion_subsets(&ferm, k));
    }
    let mut out = Vec::new();
    for d in 0..=cap {
        for b in monomials_of_degree(&bos, d) {
            for k in 0..=((cap - d) as usize).min(ferm.len()) {
                for f in &fsets[k] {
                    out.push(b.mul(f).unwrap().1);
                }
            }
        }
    }
    out
}

/// Monomial basis of a slice. A cap is required for twisted schemes; for natural
/// schemes it is optional and restricts the basis to total degree `<= cap`.
pub fn enumerate_slice(scheme: &GradingScheme, label: GradeLabel, cap: Option<u32>) -> Result<GradedSlice> {
    scheme.check_label(&label)?;
    let mut set = BTreeSet::new();
    if scheme.is_twisted() {
        let cap = cap.ok_or_else(|| Error::CapRequired(scheme.to_string()))?;
        for mono in monomials_up_to(scheme, cap) {
            if scheme.label_unchecked(&mono) == label {
                set.insert(mono);
            }
        }
    } else {
        let (n, m) = (scheme.n as usize, scheme.m as usize);
        let xs: Vec<Variable> = (1..=scheme.n).map(Variable::X).collect();
        let ys: Vec<Variable> = (1..=scheme.n).map(Variable::Y).collect();
        let ths: Vec<Variable> = (1..=scheme.m).map(Variable::Theta).collect();
        let vts: Vec<Variable> = (1..=scheme.m).map(Variable::VarTheta).collect();
        match label {
            GradeLabel::Pair(l, lp) if l >= 0 && lp >= 0 => {
                for a in 0..=m.min(l as usize) {
                    for b in 0..=m.min(lp as usize) {
                        let mut left = BTreeSet::new();
                        products(&monomials_of_degree(&xs, l as u32 - a as u32), &fermion_subsets(&ths, a), &mut left);
                        let mut right = BTreeSet::new();
                        products(&monomials_of_degree(&ys, lp as u32 - b as u32), &fermion_subsets(&vts, b), &mut right);
                        let l: Vec<_> = left.into_iter().collect();
                        let r: Vec<_> = right.into_iter().collect();
                        products(&l, &r, &mut set);
                    }
                }
            }
            GradeLabel::Single(k) if k >= 0 => {
                let mut bos = xs.clone();
                bos.extend(ys.iter().copied());
                let mut ferm = ths.clone();
                ferm.extend(vts.iter().copied());
                let x0_range = if scheme.has_x0() { 0..=k as u32 } else { 0..=0 };
                for i in x0_range {
                    let rest = k as u32 - i;
                    for f in 0..=(2 * m).min(rest as usize) {
                        let mut a = BTreeSet::new();
                        products(&monomials_of_degree(&bos, rest - f as u32), &fermion_subsets(&ferm, f), &mut a);
                        let x0 = [SuperMonomial::var_pow(Variable::X0, i)];
                        let a: Vec<_> = a.into_iter().collect();
                        products(&x0, &a, &mut set);
                    }
                }
                let _ = n;
            }
            _ => {}
        }
        if let Some(c) = cap {
            set.retain(|mono| mono.degree() <= c);
        }
    }
    Ok(GradedSlice { scheme: *scheme, label, cap, basis: set.into_iter().collect() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::text::parse_polynomial;

    fn mono(s: &str) -> SuperMonomial {
        parse_polynomial(s).unwrap().leading().unwrap().0.clone()
    }

    #[test]
    fn labels() {
        let gl = GradingScheme::gl_natural(2, 3).unwrap();
        assert_eq!(gl.label(&mono("x1*th2")).unwrap(), GradeLabel::Pair(2, 0));
        let tw = GradingScheme::gl_twisted(4, 1, 1, 3).unwrap();
        assert_eq!(tw.label(&mono("x1*y2")).unwrap(), GradeLabel::Pair(-1, 1));
        assert!(gl.label(&mono("x0")).is_err());
        assert!(gl.label(&mono("th4")).is_err());
    }

    #[test]
    fn natural_dimensions() {
        let gl = GradingScheme::gl_natural(2, 1).unwrap();
        assert_eq!(enumerate_slice(&gl, GradeLabel::Pair(1, 1), None).unwrap().dim(), 9);
        let osp = GradingScheme::osp_even_natural(2, 3).unwrap();
        assert_eq!(enumerate_slice(&osp, GradeLabel::Single(6), None).unwrap().dim(), 1520);
    }

    #[test]
    fn twisted_needs_cap() {
        let tw = GradingScheme::gl_twisted(4, 1, 1, 3).unwrap();
        assert!(matches!(enumerate_slice(&tw, GradeLabel::Pair(0, 0), None), Err(Error::CapRequired(_))));
        let s = enumerate_slice(&tw, GradeLabel::Pair(0, 0), Some(2)).unwrap();
        assert!(s.basis.iter().all(|b| b.degree() <= 2));
        assert!(s.basis.contains(&mono("x1*x2")));
    }

    #[test]
    fn subsets_count() {
        let v: Vec<Variable> = (1..=5).map(Variable::Theta).collect();
        assert_eq!(fermion_subsets(&v, 2).len(), 10);
        assert_eq!(fermion_subsets(&v, 0).len(), 1);
        assert_eq!(fermion_subsets(&v, 5).len(), 1);
    }
}
