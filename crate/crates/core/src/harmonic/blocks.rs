use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicUsize, Ordering};

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exactalg::scheme::compositions;
use crate::exactalg::{enumerate_slice, Family, GradeLabel, GradingScheme, SuperMonomial, Variable};
use crate::superrep::{RepVariant, Weight};

static MAX_CELLS: AtomicUsize = AtomicUsize::new(usize::MAX);

/// Upper bound on the number of monomials in any slice or block; exceeding it is an error.
pub fn set_max_cells(limit: Option<usize>) {
    MAX_CELLS.store(limit.unwrap_or(usize::MAX), Ordering::Relaxed);
}

pub fn max_cells() -> Option<usize> {
    match MAX_CELLS.load(Ordering::Relaxed) {
        usize::MAX => None,
        n => Some(n),
    }
}

pub(crate) fn check_size(size: usize) -> Result<()> {
    let limit = MAX_CELLS.load(Ordering::Relaxed);
    if size > limit {
        return Err(Error::TooLarge { size, limit });
    }
    Ok(())
}

/// Monomials of one weight inside one labelled slice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightBlock {
    pub weight: Weight,
    pub basis: Vec<SuperMonomial>,
}

/// The weight blocks of a slice. For twisted schemes these are the full weight spaces
/// of every weight met by the capped slice, so each block is exact while the set of
/// weights is not.
#[derive(Debug, Clone)]
pub struct BlockSet {
    pub scheme: GradingScheme,
    pub label: GradeLabel,
    pub cap: Option<u32>,
    pub blocks: Vec<WeightBlock>,
    /// Monomials of the capped slice itself.
    pub slice_dim: usize,
    /// Whether every weight of the slice is present.
    pub complete: bool,
}

impl BlockSet {
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.basis.len()).sum()
    }
}

/// Every monomial of label `label` and weight `weight`. Finite for all schemes.
pub fn weight_space(scheme: &GradingScheme, label: GradeLabel, weight: &Weight) -> Result<Vec<SuperMonomial>> {
    scheme.check_label(&label)?;
    let (n, m) = (scheme.n(), scheme.m());
    let (n1, n2) = scheme.split();
    if weight.0.len() != (n + m) as usize {
        return Err(Error::InvalidArgument(format!("weight {weight} has the wrong length for {scheme}")));
    }
    let mut mu = Vec::with_capacity(weight.0.len());
    for c in &weight.0 {
        if !c.is_integer() {
            return Ok(Vec::new());
        }
        match c.to_integer().to_i64() {
            Some(v) => mu.push(v),
            None => return Ok(Vec::new()),
        }
    }

    // Independent choices for the outer bosons and the fermions.
    let mut choices: Vec<Vec<Vec<(Variable, u32)>>> = Vec::new();
    for i in 1..=n {
        let wi = mu[(i - 1) as usize];
        let c = if i <= n1 {
            -wi - 1
        } else if i > n2 {
            wi - 1
        } else {
            continue;
        };
        if c < 0 {
            return Ok(Vec::new());
        }
        let c = c as u32;
        choices.push((0..=c).map(|a| vec![(Variable::X(i), a), (Variable::Y(i), c - a)]).collect());
    }
    for r in 1..=m {
        let f = mu[(n + r - 1) as usize];
        let (t, v) = (Variable::Theta(r), Variable::VarTheta(r));
        choices.push(match f {
            1 => vec![vec![(t, 1)]],
            -1 => vec![vec![(v, 1)]],
            0 => vec![vec![], vec![(t, 1), (v, 1)]],
            _ => return Ok(Vec::new()),
        });
    }
    let mid: Vec<u16> = (n1 + 1..=n2).collect();
    let lb: Vec<i64> = mid.iter().map(|&i| (-mu[(i - 1) as usize]).max(0)).collect();
    let sum_lb: i64 = lb.iter().sum();
    let sum_mu: i64 = mid.iter().map(|&i| mu[(i - 1) as usize]).sum();

    let mut out = BTreeSet::new();
    let mut pick = vec![0usize; choices.len()];
    loop {
        let mut factors: Vec<(Variable, u32)> = Vec::new();
        for (c, &p) in choices.iter().zip(&pick) {
            factors.extend(c[p].iter().copied().filter(|&(_, e)| e > 0));
        }
        let base = SuperMonomial::from_factors(&factors)?.expect("distinct fermions").1;
        let (l0, lp0) = scheme.gl_label(&base);
        // (x0 exponent, sum of mid beta exponents)
        let mut targets: Vec<(u32, i64)> = Vec::new();
        match (scheme.family(), label) {
            (Family::Gl, GradeLabel::Pair(l, lp)) => {
                let b = lp - lp0;
                if b + sum_mu == l - l0 {
                    targets.push((0, b));
                }
            }
            (Family::OspEven, GradeLabel::Single(k)) => {
                let r = k - l0 - lp0 - sum_mu;
                if r >= 0 && r % 2 == 0 {
                    targets.push((0, r / 2));
                }
            }
            (Family::OspOdd, GradeLabel::Single(k)) => {
                let top = k - l0 - lp0 - sum_mu - 2 * sum_lb;
                for a0 in 0..=top.max(-1) {
                    let r = k - l0 - lp0 - sum_mu - a0;
                    if r % 2 == 0 {
                        targets.push((a0 as u32, r / 2));
                    }
                }
            }
            _ => unreachable!("label checked"),
        }
        for (a0, b) in targets {
            if b < sum_lb {
                continue;
            }
            check_size(out.len())?;
            for extra in compositions(mid.len(), (b - sum_lb) as u32) {
                let mut f = factors.clone();
                if a0 > 0 {
                    f.push((Variable::X0, a0));
                }
                for (idx, &i) in mid.iter().enumerate() {
                    let beta = lb[idx] + extra[idx] as i64;
                    let alpha = beta + mu[(i - 1) as usize];
                    if alpha > 0 {
                        f.push((Variable::X(i), alpha as u32));
                    }
                    if beta > 0 {
                        f.push((Variable::Y(i), beta as u32));
                    }
                }
                out.insert(SuperMonomial::from_factors(&f)?.expect("distinct fermions").1);
            }
        }
        // advance the mixed-radix counter
        let mut k = 0;
        loop {
            if k == pick.len() {
                let out: Vec<SuperMonomial> = out.into_iter().collect();
                check_size(out.len())?;
                return Ok(out);
            }
            pick[k] += 1;
            if pick[k] < choices[k].len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }
}

/// Group monomials by weight, in weight order.
pub fn group_by_weight(rep: &RepVariant, monos: &[SuperMonomial]) -> Vec<WeightBlock> {
    let mut map: BTreeMap<Weight, Vec<SuperMonomial>> = BTreeMap::new();
    for m in monos {
        map.entry(rep.monomial_weight(m)).or_default().push(m.clone());
    }
    map.into_iter().map(|(weight, basis)| WeightBlock { weight, basis }).collect()
}

/// Weight blocks of a labelled slice; `cap` is required for twisted schemes and
/// ignored for natural ones, whose slices are finite.
pub fn blocks(scheme: &GradingScheme, label: GradeLabel, cap: Option<u32>) -> Result<BlockSet> {
    let rep = RepVariant::new(*scheme);
    if !scheme.is_twisted() {
        let slice = enumerate_slice(scheme, label, None)?;
        check_size(slice.dim())?;
        return Ok(BlockSet {
            scheme: *scheme,
            label,
            cap: None,
            slice_dim: slice.dim(),
            blocks: group_by_weight(&rep, &slice.basis),
            complete: true,
        });
    }
    let slice = enumerate_slice(scheme, label, cap)?;
    check_size(slice.dim())?;
    let weights: BTreeSet<Weight> = slice.basis.iter().map(|m| rep.monomial_weight(m)).collect();
    let mut out = Vec::new();
    for w in weights {
        let basis = weight_space(scheme, label, &w)?;
        out.push(WeightBlock { weight: w, basis });
    }
    Ok(BlockSet { scheme: *scheme, label, cap, slice_dim: slice.dim(), blocks: out, complete: false })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_spaces_match_filtered_slices() {
        let s = GradingScheme::gl_twisted(4, 1, 1, 3).unwrap();
        let rep = RepVariant::new(s);
        for label in [GradeLabel::Pair(0, 0), GradeLabel::Pair(-1, 1), GradeLabel::Pair(1, -1)] {
            let slice = enumerate_slice(&s, label, Some(6)).unwrap();
            for block in group_by_weight(&rep, &slice.basis) {
                let full = weight_space(&s, label, &block.weight).unwrap();
                for m in &block.basis {
                    assert!(full.contains(m));
                }
                for m in &full {
                    assert_eq!(s.label(m).unwrap(), label);
                    assert_eq!(rep.monomial_weight(m), block.weight);
                }
                // everything of degree <= 6 in the full space is in the capped slice
                let low: Vec<_> = full.iter().filter(|m| m.degree() <= 6).cloned().collect();
                assert_eq!(low, block.basis);
            }
        }
    }

    #[test]
    fn natural_blocks_partition_the_slice() {
        for s in [GradingScheme::osp_odd_natural(2, 1).unwrap(), GradingScheme::gl_natural(2, 3).unwrap()] {
            let label = if s.family() == Family::Gl { GradeLabel::Pair(2, 1) } else { GradeLabel::Single(3) };
            let b = blocks(&s, label, None).unwrap();
            assert_eq!(b.dim(), b.slice_dim);
            for block in &b.blocks {
                assert_eq!(weight_space(&s, label, &block.weight).unwrap(), block.basis);
            }
        }
    }
}
