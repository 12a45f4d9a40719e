//! Exact sparse Gaussian elimination over the rationals.
//!
//! Vectors are sparse maps from an ordered key type. Each stored row has its pivot at
//! its largest key, so reduction walks keys from the top down and the result does not
//! depend on anything but insertion order.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::exactalg::{Rational, SuperMonomial, SuperPolynomial};

pub type SparseVec<K> = BTreeMap<K, Rational>;

fn axpy<K: Ord + Clone>(y: &mut SparseVec<K>, a: &Rational, x: &SparseVec<K>) {
    for (k, v) in x {
        let e = y.entry(k.clone()).or_insert_with(Rational::zero);
        *e += a * v;
        if e.is_zero() {
            y.remove(k);
        }
    }
}

/// Incremental row echelon form with optional tracking of combinations.
#[derive(Debug, Clone)]
pub struct Echelon<K: Ord + Clone> {
    rows: Vec<SparseVec<K>>,
    tags: Vec<SparseVec<usize>>,
    pivots: BTreeMap<K, usize>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { rows: Vec::new(), tags: Vec::new(), pivots: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` (and its tag) against the stored rows.
    fn reduce_tagged(&self, mut v: SparseVec<K>, mut tag: SparseVec<usize>) -> (SparseVec<K>, SparseVec<usize>) {
        let mut bound: Option<K> = None;
        loop {
            let next = match &bound {
                None => v.iter().next_back(),
                Some(b) => v.range(..b.clone()).next_back(),
            };
            let Some((k, c)) = next else { break };
            let (k, c) = (k.clone(), c.clone());
            if let Some(&i) = self.pivots.get(&k) {
                let a = -c;
                axpy(&mut v, &a, &self.rows[i]);
                axpy(&mut tag, &a, &self.tags[i]);
            }
            bound = Some(k);
        }
        (v, tag)
    }

    /// Remainder of `v` modulo the row space.
    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        self.reduce_tagged(v.clone(), SparseVec::new()).0
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Insert a vector; returns false if it was dependent.
    pub fn insert(&mut self, v: SparseVec<K>) -> bool {
        self.insert_tagged(v, SparseVec::new()).is_none()
    }

    /// Insert a vector carrying a combination tag. A dependent vector returns the
    /// tag of the vanishing combination.
    pub fn insert_tagged(&mut self, v: SparseVec<K>, tag: SparseVec<usize>) -> Option<SparseVec<usize>> {
        let (mut r, mut t) = self.reduce_tagged(v, tag);
        let Some((k, c)) = r.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else {
            return Some(t);
        };
        let inv = c.recip();
        for x in r.values_mut() {
            *x *= &inv;
        }
        for x in t.values_mut() {
            *x *= &inv;
        }
        self.pivots.insert(k, self.rows.len());
        self.rows.push(r);
        self.tags.push(t);
        None
    }

    /// Fully reduced rows, ordered by decreasing pivot, each with pivot coefficient 1.
    pub fn reduced_rows(&self) -> Vec<SparseVec<K>> {
        let mut order: Vec<(K, usize)> = self.pivots.iter().map(|(k, &i)| (k.clone(), i)).collect();
        order.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<SparseVec<K>> = Vec::new();
        let mut done = Echelon::<K>::new();
        // Back substitution from the smallest pivot up.
        for (_, i) in order.iter().rev() {
            let row = self.rows[*i].clone();
            let (top, _) = row.iter().next_back().unwrap();
            let top = top.clone();
            let mut r = row.clone();
            let keys: Vec<K> = r.range(..top.clone()).map(|(k, _)| k.clone()).collect();
            for k in keys.into_iter().rev() {
                if let (Some(c), Some(&j)) = (r.get(&k).cloned(), done.pivots.get(&k)) {
                    axpy(&mut r, &-c, &done.rows[j]);
                }
            }
            done.pivots.insert(top, done.rows.len());
            done.rows.push(r.clone());
            done.tags.push(SparseVec::new());
            out.push(r);
        }
        out.reverse();
        out
    }
}

/// Rank of a family of vectors.
pub fn rank<K: Ord + Clone>(vs: impl IntoIterator<Item = SparseVec<K>>) -> usize {
    let mut e = Echelon::new();
    for v in vs {
        e.insert(v);
    }
    e.rank()
}

/// Basis of `{c : sum_j c_j cols[j] = 0}`.
pub fn nullspace<K: Ord + Clone>(cols: &[SparseVec<K>]) -> Vec<SparseVec<usize>> {
    let mut e = Echelon::new();
    let mut out = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        let mut tag = SparseVec::new();
        tag.insert(j, Rational::from_integer(1.into()));
        if let Some(t) = e.insert_tagged(c.clone(), tag) {
            out.push(t);
        }
    }
    out
}

pub fn poly_vec(p: &SuperPolynomial) -> SparseVec<SuperMonomial> {
    p.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

pub fn vec_poly(v: &SparseVec<SuperMonomial>) -> SuperPolynomial {
    let mut p = SuperPolynomial::zero();
    for (m, c) in v {
        p.add_term(m.clone(), c.clone());
    }
    p
}

pub fn poly_rank<'a>(ps: impl IntoIterator<Item = &'a SuperPolynomial>) -> usize {
    rank(ps.into_iter().map(poly_vec))
}

/// Whether two families span the same space.
pub fn same_span(a: &[SuperPolynomial], b: &[SuperPolynomial]) -> bool {
    let ra = poly_rank(a);
    ra == poly_rank(b) && ra == poly_rank(a.iter().chain(b))
}

/// Reduced echelon basis of the span, leading coefficients 1, decreasing leading monomial.
pub fn canonical_basis(ps: &[SuperPolynomial]) -> Vec<SuperPolynomial> {
    let mut e = Echelon::new();
    for p in ps {
        e.insert(poly_vec(p));
    }
    e.reduced_rows().iter().map(vec_poly).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn v(xs: &[(u32, i64)]) -> SparseVec<u32> {
        xs.iter().map(|&(k, c)| (k, rat(c))).collect()
    }

    #[test]
    fn nullspace_small() {
        let cols = vec![v(&[(0, 1), (1, 2)]), v(&[(0, 2), (1, 4)]), v(&[(1, 1)])];
        let ns = nullspace(&cols);
        assert_eq!(ns.len(), 1);
        let t = &ns[0];
        assert_eq!(t.get(&0).cloned().unwrap(), -t.get(&1).cloned().unwrap() * rat(2));
    }

    #[test]
    fn reduced_rows_are_reduced() {
        let mut e = Echelon::new();
        e.insert(v(&[(2, 1), (1, 1), (0, 1)]));
        e.insert(v(&[(1, 1), (0, 2)]));
        let rows = e.reduced_rows();
        assert_eq!(rows[0], v(&[(2, 1), (0, -1)]));
        assert_eq!(rows[1], v(&[(1, 1), (0, 2)]));
    }
}
