use serde::Serialize;

use super::blocks::{check_size, group_by_weight, WeightBlock};
use crate::diffops::series::{is_seed, xu_vector};
use crate::diffops::{laplacian, DiffOperator};
use crate::error::Result;
use crate::exactalg::{GradeLabel, GradedSlice, GradingScheme, SuperMonomial, SuperPolynomial};
use crate::linalg::{canonical_basis, nullspace, poly_vec, Echelon, SparseVec};
use crate::superrep::RepVariant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Method {
    Kernel,
    XuFormula,
}

#[derive(Debug, Clone)]
pub struct HarmonicBasis {
    pub scheme: GradingScheme,
    pub label: GradeLabel,
    pub cap: Option<u32>,
    pub vectors: Vec<SuperPolynomial>,
    pub method: Method,
}

impl HarmonicBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

fn combine(basis: &[SuperMonomial], tag: &SparseVec<usize>) -> SuperPolynomial {
    let mut p = SuperPolynomial::zero();
    for (j, c) in tag {
        p.add_term(basis[*j].clone(), c.clone());
    }
    p
}

/// Common kernel of `ops` on the span of `basis`, in canonical form.
pub fn joint_kernel(ops: &[DiffOperator], basis: &[SuperMonomial]) -> Vec<SuperPolynomial> {
    let cols: Vec<SparseVec<(usize, SuperMonomial)>> = basis
        .iter()
        .map(|m| {
            let v = SuperPolynomial::monomial(m.clone());
            let mut col: SparseVec<(usize, SuperMonomial)> = SparseVec::new();
            for (o, op) in ops.iter().enumerate() {
                for (mm, c) in op.apply(&v).terms() {
                    col.insert((o, mm.clone()), c.clone());
                }
            }
            col
        })
        .collect();
    let vs: Vec<SuperPolynomial> = nullspace(&cols).iter().map(|t| combine(basis, t)).collect();
    canonical_basis(&vs)
}

/// Kernel of `Delta` on one weight block.
pub fn block_kernel(scheme: &GradingScheme, block: &WeightBlock) -> Vec<SuperPolynomial> {
    joint_kernel(&[laplacian(scheme)], &block.basis)
}

/// Basis of the `Delta`-kernel of a slice, block by block in weight order.
///
/// For capped slices this is the kernel on the span of the capped monomials, which is
/// exact because `Delta` never raises total degree.
pub fn harmonic_kernel(slice: &GradedSlice) -> Result<HarmonicBasis> {
    check_size(slice.dim())?;
    let rep = RepVariant::new(slice.scheme);
    let mut vectors = Vec::new();
    for block in group_by_weight(&rep, &slice.basis) {
        vectors.extend(block_kernel(&slice.scheme, &block));
    }
    Ok(HarmonicBasis { scheme: slice.scheme, label: slice.label, cap: slice.cap, vectors, method: Method::Kernel })
}

/// Series vectors generated from the admissible seed monomials in `monos`,
/// dropping dependent ones.
pub fn xu_vectors(scheme: &GradingScheme, monos: &[SuperMonomial]) -> Result<Vec<SuperPolynomial>> {
    let mut ech = Echelon::new();
    let mut out = Vec::new();
    for m in monos {
        if !is_seed(scheme, m) {
            continue;
        }
        let v = xu_vector(scheme, m)?;
        if ech.insert(poly_vec(&v)) {
            out.push(v);
        }
    }
    Ok(out)
}

/// Harmonic basis of a slice from the series formula. Seeds are the slice monomials
/// with `a_p b_p = 0` (or `x0`-degree at most one for the odd family); for capped
/// slices the resulting vectors may carry terms above the cap.
pub fn xu_basis(slice: &GradedSlice) -> Result<HarmonicBasis> {
    check_size(slice.dim())?;
    let vectors = xu_vectors(&slice.scheme, &slice.basis)?;
    Ok(HarmonicBasis { scheme: slice.scheme, label: slice.label, cap: slice.cap, vectors, method: Method::XuFormula })
}

/// Smallest `k` with `Delta^(k+1)(u) = 0`. Errors when more than `3 deg(u) + 1` steps
/// do not reach zero.
pub fn kappa(u: &SuperPolynomial, scheme: &GradingScheme) -> Result<u32> {
    if u.is_zero() {
        return Err(crate::error::Error::InvalidArgument("kappa of the zero polynomial".into()));
    }
    let delta = laplacian(scheme);
    let bound = 3 * u.max_total_degree() as usize + 1;
    let mut cur = u.clone();
    for k in 0..=bound {
        let next = delta.apply(&cur);
        if next.is_zero() {
            return Ok(k as u32);
        }
        cur = next;
    }
    Err(crate::error::Error::SeriesDiverged { bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{enumerate_slice, parse_polynomial};
    use crate::linalg::same_span;

    #[test]
    fn kernel_dimensions() {
        let s = GradingScheme::gl_natural(2, 1).unwrap();
        let sl = enumerate_slice(&s, GradeLabel::Pair(1, 1), None).unwrap();
        assert_eq!(harmonic_kernel(&sl).unwrap().dim(), 8);
        let sl0 = enumerate_slice(&s, GradeLabel::Pair(0, 0), None).unwrap();
        assert_eq!(harmonic_kernel(&sl0).unwrap().vectors, vec![SuperPolynomial::one()]);
    }

    #[test]
    fn xu_matches_kernel_small() {
        let s = GradingScheme::gl_natural(2, 1).unwrap();
        for (l, lp) in [(1, 1), (2, 1), (2, 2)] {
            let sl = enumerate_slice(&s, GradeLabel::Pair(l, lp), None).unwrap();
            let k = harmonic_kernel(&sl).unwrap();
            let x = xu_basis(&sl).unwrap();
            assert!(same_span(&k.vectors, &x.vectors));
        }
    }

    #[test]
    fn kappa_values() {
        let s = GradingScheme::gl_natural(1, 1).unwrap();
        assert_eq!(kappa(&parse_polynomial("x1*y1 + th1*vt1").unwrap(), &s).unwrap(), 0);
        assert_eq!(kappa(&parse_polynomial("x1^2*y1^2").unwrap(), &s).unwrap(), 2);
        assert!(kappa(&SuperPolynomial::zero(), &s).is_err());
    }
}
