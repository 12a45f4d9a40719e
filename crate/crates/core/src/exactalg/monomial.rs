use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

const Y_BASE: u16 = 1 << 12;
const VT_BASE: u32 = 32;

/// Largest admissible `n` (bosonic index) and `m` (fermionic index).
pub const MAX_N: u16 = Y_BASE - 1;
pub const MAX_M: u16 = 32;

/// A generator of the super-polynomial algebra.
///
/// Indices are 1-based, matching the usual notation `x1..xn`, `th1..thm`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variable {
    X0,
    X(u16),
    Y(u16),
    Theta(u16),
    VarTheta(u16),
}

impl Variable {
    pub fn is_fermionic(self) -> bool {
        matches!(self, Variable::Theta(_) | Variable::VarTheta(_))
    }

    pub fn parity(self) -> u8 {
        self.is_fermionic() as u8
    }

    fn check(self) -> Result<()> {
        let ok = match self {
            Variable::X0 => true,
            Variable::X(i) | Variable::Y(i) => (1..=MAX_N).contains(&i),
            Variable::Theta(r) | Variable::VarTheta(r) => (1..=MAX_M).contains(&r),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("variable index out of range: {self:?}")))
        }
    }

    pub(crate) fn boson_key(self) -> Option<u16> {
        match self {
            Variable::X0 => Some(0),
            Variable::X(i) => Some(i),
            Variable::Y(i) => Some(Y_BASE + i),
            _ => None,
        }
    }

    pub(crate) fn from_boson_key(k: u16) -> Variable {
        if k == 0 {
            Variable::X0
        } else if k < Y_BASE {
            Variable::X(k)
        } else {
            Variable::Y(k - Y_BASE)
        }
    }

    pub(crate) fn fermion_bit(self) -> Option<u32> {
        match self {
            Variable::Theta(r) => Some(r as u32 - 1),
            Variable::VarTheta(r) => Some(VT_BASE + r as u32 - 1),
            _ => None,
        }
    }

    pub(crate) fn from_fermion_bit(b: u32) -> Variable {
        if b < VT_BASE {
            Variable::Theta(b as u16 + 1)
        } else {
            Variable::VarTheta((b - VT_BASE) as u16 + 1)
        }
    }

    /// Text name: `x0`, `x3`, `y1`, `th2`, `vt1`.
    pub fn name(self) -> String {
        match self {
            Variable::X0 => "x0".into(),
            Variable::X(i) => format!("x{i}"),
            Variable::Y(i) => format!("y{i}"),
            Variable::Theta(r) => format!("th{r}"),
            Variable::VarTheta(r) => format!("vt{r}"),
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// `x^a * (fermions in canonical order)`.
///
/// Bosonic part is a sorted sparse list of `(key, exponent)`; fermionic part is a
/// bitmask whose bit order is the canonical order `th1 < .. < thm < vt1 < .. < vtm`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SuperMonomial {
    bos: Vec<(u16, u32)>,
    ferm: u64,
}

#[inline]
fn above(mask: u64, bit: u32) -> u32 {
    if bit >= 63 {
        0
    } else {
        (mask >> (bit + 1)).count_ones()
    }
}

#[inline]
fn below(mask: u64, bit: u32) -> u32 {
    (mask & ((1u64 << bit) - 1)).count_ones()
}

impl SuperMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: Variable) -> Self {
        Self::var_pow(v, 1)
    }

    /// `v^e`; a fermion to a power above 1 is not a monomial, so this panics on it.
    pub fn var_pow(v: Variable, e: u32) -> Self {
        let mut m = Self::one();
        if e == 0 {
            return m;
        }
        match (v.boson_key(), v.fermion_bit()) {
            (Some(k), _) => m.bos.push((k, e)),
            (_, Some(b)) => {
                assert!(e == 1, "fermionic variable squared");
                m.ferm = 1 << b;
            }
            _ => unreachable!(),
        }
        m
    }

    /// Build from `(variable, exponent)` pairs, the product taken in the given order.
    /// Returns the sign picked up by reordering fermions, or `None` if the product vanishes.
    pub fn from_factors(factors: &[(Variable, u32)]) -> Result<Option<(bool, SuperMonomial)>> {
        let mut acc = SuperMonomial::one();
        let mut neg = false;
        for &(v, e) in factors {
            v.check()?;
            if v.is_fermionic() && e > 1 {
                return Ok(None);
            }
            match acc.mul(&SuperMonomial::var_pow(v, e)) {
                Some((s, m)) => {
                    neg ^= s;
                    acc = m;
                }
                None => return Ok(None),
            }
        }
        Ok(Some((neg, acc)))
    }

    pub fn degree(&self) -> u32 {
        self.bos.iter().map(|&(_, e)| e).sum::<u32>() + self.ferm.count_ones()
    }

    pub fn bosonic_degree(&self) -> u32 {
        self.bos.iter().map(|&(_, e)| e).sum()
    }

    pub fn fermion_count(&self) -> u32 {
        self.ferm.count_ones()
    }

    pub fn parity(&self) -> u8 {
        (self.ferm.count_ones() & 1) as u8
    }

    pub fn is_one(&self) -> bool {
        self.bos.is_empty() && self.ferm == 0
    }

    pub fn exponent(&self, v: Variable) -> u32 {
        if let Some(k) = v.boson_key() {
            self.bos
                .binary_search_by_key(&k, |&(key, _)| key)
                .map(|i| self.bos[i].1)
                .unwrap_or(0)
        } else {
            let b = v.fermion_bit().unwrap();
            ((self.ferm >> b) & 1) as u32
        }
    }

    /// Factors in canonical order (bosons by key, then fermions).
    pub fn factors(&self) -> Vec<(Variable, u32)> {
        let mut out: Vec<(Variable, u32)> =
            self.bos.iter().map(|&(k, e)| (Variable::from_boson_key(k), e)).collect();
        out.extend(self.fermions().into_iter().map(|v| (v, 1)));
        out
    }

    pub fn fermions(&self) -> Vec<Variable> {
        let mut f = self.ferm;
        let mut out = Vec::new();
        while f != 0 {
            let b = f.trailing_zeros();
            out.push(Variable::from_fermion_bit(b));
            f &= f - 1;
        }
        out
    }

    pub fn bosons(&self) -> impl Iterator<Item = (Variable, u32)> + '_ {
        self.bos.iter().map(|&(k, e)| (Variable::from_boson_key(k), e))
    }

    pub fn fermion_mask(&self) -> u64 {
        self.ferm
    }

    /// Product `self * other`; `Some((negated, monomial))`, or `None` when a fermion repeats.
    pub fn mul(&self, other: &SuperMonomial) -> Option<(bool, SuperMonomial)> {
        if self.ferm & other.ferm != 0 {
            return None;
        }
        let mut inv = 0u32;
        let mut f = other.ferm;
        while f != 0 {
            let b = f.trailing_zeros();
            inv += above(self.ferm, b);
            f &= f - 1;
        }
        let mut bos = Vec::with_capacity(self.bos.len() + other.bos.len());
        let (mut i, mut j) = (0, 0);
        while i < self.bos.len() || j < other.bos.len() {
            match (self.bos.get(i), other.bos.get(j)) {
                (Some(&(ka, ea)), Some(&(kb, eb))) => match ka.cmp(&kb) {
                    Ordering::Less => {
                        bos.push((ka, ea));
                        i += 1;
                    }
                    Ordering::Greater => {
                        bos.push((kb, eb));
                        j += 1;
                    }
                    Ordering::Equal => {
                        bos.push((ka, ea + eb));
                        i += 1;
                        j += 1;
                    }
                },
                (Some(&p), None) => {
                    bos.push(p);
                    i += 1;
                }
                (None, Some(&p)) => {
                    bos.push(p);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Some((inv % 2 == 1, SuperMonomial { bos, ferm: self.ferm | other.ferm }))
    }

    /// Left derivative by `v`: `Some((coefficient, monomial))` or `None` if zero.
    /// The coefficient is the exponent for bosons and `±1` for fermions.
    pub fn derive(&self, v: Variable) -> Option<(i64, SuperMonomial)> {
        if let Some(k) = v.boson_key() {
            let idx = self.bos.binary_search_by_key(&k, |&(key, _)| key).ok()?;
            let e = self.bos[idx].1;
            let mut out = self.clone();
            if e == 1 {
                out.bos.remove(idx);
            } else {
                out.bos[idx].1 = e - 1;
            }
            Some((e as i64, out))
        } else {
            let b = v.fermion_bit().unwrap();
            if (self.ferm >> b) & 1 == 0 {
                return None;
            }
            let sign = if below(self.ferm, b) % 2 == 1 { -1 } else { 1 };
            let mut out = self.clone();
            out.ferm &= !(1u64 << b);
            Some((sign, out))
        }
    }

    /// Bosonic monomial with the exponent of `v` raised by one.
    pub(crate) fn bump(&self, v: Variable) -> SuperMonomial {
        self.mul(&SuperMonomial::var(v)).expect("bosonic").1
    }
}

impl Ord for SuperMonomial {
    /// Graded lexicographic order: total degree first, then exponents compared
    /// from the largest variable (`vtm`) down to the smallest (`x0`).
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.ferm.cmp(&other.ferm))
            .then_with(|| {
                let (mut i, mut j) = (self.bos.len(), other.bos.len());
                while i > 0 || j > 0 {
                    let ka = if i > 0 { Some(self.bos[i - 1].0) } else { None };
                    let kb = if j > 0 { Some(other.bos[j - 1].0) } else { None };
                    let k = ka.max(kb).unwrap();
                    let ea = if ka == Some(k) { self.bos[i - 1].1 } else { 0 };
                    let eb = if kb == Some(k) { other.bos[j - 1].1 } else { 0 };
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                    if ka == Some(k) {
                        i -= 1;
                    }
                    if kb == Some(k) {
                        j -= 1;
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for SuperMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SuperMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .factors()
            .into_iter()
            .map(|(v, e)| if e == 1 { v.name() } else { format!("{}^{e}", v.name()) })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fermion_reorder_sign() {
        let (neg, m) = SuperMonomial::var(Variable::VarTheta(1))
            .mul(&SuperMonomial::var(Variable::Theta(1)))
            .unwrap();
        assert!(neg);
        assert_eq!(m.to_string(), "th1*vt1");
        assert!(SuperMonomial::var(Variable::Theta(2))
            .mul(&SuperMonomial::var(Variable::Theta(2)))
            .is_none());
    }

    #[test]
    fn derive_sign_counts_fermions_to_the_left() {
        let m = SuperMonomial::from_factors(&[(Variable::Theta(1), 1), (Variable::VarTheta(1), 1)])
            .unwrap()
            .unwrap()
            .1;
        let (c, r) = m.derive(Variable::VarTheta(1)).unwrap();
        assert_eq!(c, -1);
        assert_eq!(r, SuperMonomial::var(Variable::Theta(1)));
        let (c, _) = m.derive(Variable::Theta(1)).unwrap();
        assert_eq!(c, 1);
    }

    #[test]
    fn order_is_graded() {
        let a = SuperMonomial::var_pow(Variable::X(1), 2);
        let b = SuperMonomial::var(Variable::VarTheta(3));
        assert!(b < a);
        let x1 = SuperMonomial::var(Variable::X(1));
        let y1 = SuperMonomial::var(Variable::Y(1));
        let x0 = SuperMonomial::var(Variable::X0);
        assert!(x0 < x1 && x1 < y1);
    }
}
