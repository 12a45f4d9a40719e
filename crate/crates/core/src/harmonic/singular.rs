use super::blocks::{blocks, BlockSet};
use super::kernel::joint_kernel;
use crate::diffops::{laplacian, DiffOperator};
use crate::error::Result;
use crate::exactalg::{GradeLabel, GradedSlice, GradingScheme, SuperPolynomial};
use crate::report::ReportedVector;
use crate::superrep::{RepVariant, Weight};

/// Singular vectors of a slice, one canonical basis per weight space.
#[derive(Debug, Clone)]
pub struct SingularVectorSet {
    pub scheme: GradingScheme,
    pub label: GradeLabel,
    pub cap: Option<u32>,
    /// False when only the weights met below the cap were searched.
    pub complete: bool,
    pub entries: Vec<(Weight, SuperPolynomial)>,
}

impl SingularVectorSet {
    pub fn count(&self) -> usize {
        self.entries.len()
    }

    pub fn vectors(&self) -> Vec<SuperPolynomial> {
        self.entries.iter().map(|(_, v)| v.clone()).collect()
    }

    pub fn reported(&self) -> Vec<ReportedVector> {
        self.entries.iter().map(|(w, v)| ReportedVector { weight: w.rendered(), vector: v.to_string() }).collect()
    }
}

/// Vectors of the blocks killed by every operator in `ops` (and by `Delta` when
/// `harmonic` is set).
pub fn singular_in_blocks(set: &BlockSet, ops: &[DiffOperator], harmonic: bool) -> SingularVectorSet {
    let mut all: Vec<DiffOperator> = Vec::with_capacity(ops.len() + 1);
    if harmonic {
        all.push(laplacian(&set.scheme));
    }
    all.extend(ops.iter().cloned());
    let mut entries = Vec::new();
    for block in &set.blocks {
        for v in joint_kernel(&all, &block.basis) {
            entries.push((block.weight.clone(), v));
        }
    }
    SingularVectorSet { scheme: set.scheme, label: set.label, cap: set.cap, complete: set.complete, entries }
}

/// Singular vectors of the harmonic part of a slice under the positive generators
/// of `rep`. Twisted slices search the full weight spaces of every weight met below
/// the cap.
pub fn singular_vectors(slice: &GradedSlice, rep: &RepVariant) -> Result<SingularVectorSet> {
    let set = blocks(&slice.scheme, slice.label, slice.cap)?;
    Ok(singular_in_blocks(&set, &rep.positive_operators(), true))
}

/// Independent re-check of one vector: weight vector, harmonic, killed by the positive generators.
pub fn is_singular(rep: &RepVariant, v: &SuperPolynomial) -> bool {
    !v.is_zero()
        && rep.weight_of(v).is_some()
        && laplacian(&rep.scheme).apply(v).is_zero()
        && rep.positive_operators().iter().all(|op| op.apply(v).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{enumerate_slice, parse_polynomial};

    #[test]
    fn gl_examples() {
        let s = GradingScheme::gl_natural(2, 3).unwrap();
        let rep = RepVariant::new(s);
        let sv = singular_vectors(&enumerate_slice(&s, GradeLabel::Pair(1, 0), None).unwrap(), &rep).unwrap();
        assert_eq!(sv.vectors(), vec![parse_polynomial("x1").unwrap()]);
        let sv = singular_vectors(&enumerate_slice(&s, GradeLabel::Pair(2, 1), None).unwrap(), &rep).unwrap();
        assert_eq!(sv.count(), 2);
        for v in sv.vectors() {
            assert!(is_singular(&rep, &v));
        }
    }

    #[test]
    fn osp_example() {
        let s = GradingScheme::osp_even_natural(2, 3).unwrap();
        let rep = RepVariant::new(s);
        let sv = singular_vectors(&enumerate_slice(&s, GradeLabel::Single(1), None).unwrap(), &rep).unwrap();
        assert_eq!(sv.vectors(), vec![parse_polynomial("x1").unwrap()]);
    }
}
