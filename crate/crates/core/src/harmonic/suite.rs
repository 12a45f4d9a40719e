use num_traits::Zero;
use rayon::prelude::*;

use super::blocks::{blocks, weight_space};
use super::kernel::{block_kernel, xu_vectors};
use super::predicate::{decomposition_hypothesis, irreducibility_predicate, PredicateValue, Theorem};
use super::singular::{is_singular, singular_in_blocks, SingularVectorSet};
use crate::diffops::{eta, laplacian, DiffOperator};
use crate::error::{Error, Result};
use crate::exactalg::{Family, GradeLabel, GradingScheme, SchemeKind, SuperMonomial, SuperPolynomial, Variable};
use crate::linalg::{poly_rank, poly_vec, same_span, Echelon};
use crate::report::{Verdict, VerificationReport};
use crate::superrep::RepVariant;

/// A predicate in the shape of [`irreducibility_predicate`], so tests can inject a wrong one.
pub type Predicate = dyn Fn(&GradingScheme, &GradeLabel) -> Result<PredicateValue> + Sync;

fn scheme_params(r: &mut VerificationReport, scheme: &GradingScheme) {
    r.param("n", scheme.n() as i64);
    r.param("m", scheme.m() as i64);
    if let Some((n1, n2)) = scheme.twist() {
        r.param("n1", n1 as i64);
        r.param("n2", n2 as i64);
    }
}

fn vartheta_tail(s: i64, m: i64) -> Vec<Variable> {
    (s.max(1)..=m).map(|r| Variable::VarTheta(r as u16)).collect()
}

fn monomial(factors: &[(Variable, u32)]) -> SuperMonomial {
    let f: Vec<_> = factors.iter().copied().filter(|&(_, e)| e > 0).collect();
    SuperMonomial::from_factors(&f).expect("valid factors").expect("distinct fermions").1
}

/// `x1^l y_n^l1 vt_s..vt_m` with `l1 + m + 1 - s = l'` and `l1 (s - 1) = 0`.
pub fn v_vector(n: u16, m: u16, l: i64, lp: i64) -> Option<SuperPolynomial> {
    if l < 0 || lp < 0 {
        return None;
    }
    let m_ = m as i64;
    let (l1, s) = if lp <= m_ { (0, m_ + 1 - lp) } else { (lp - m_, 1) };
    let mut f = vec![(Variable::X(1), l as u32), (Variable::Y(n), l1 as u32)];
    f.extend(vartheta_tail(s, m_).into_iter().map(|v| (v, 1)));
    Some(SuperPolynomial::monomial(monomial(&f)))
}

fn in_span(vs: &[SuperPolynomial], v: &SuperPolynomial) -> bool {
    let mut e = Echelon::new();
    for u in vs {
        e.insert(poly_vec(u));
    }
    e.contains(&poly_vec(v))
}

/// Candidates `eta^l1 (x_i^m1 y_j^m2 vt_s..vt_m)` of the twisted gl classification that
/// land in `label`, with exponents bounded by `bound`.
fn twisted_form_candidates(scheme: &GradingScheme, label: GradeLabel, bound: u32) -> Vec<SuperPolynomial> {
    let (n, m) = (scheme.n(), scheme.m());
    let (n1, n2) = scheme.split();
    let e = eta(scheme);
    let is = [n1, n1 + 1];
    let js: Vec<u16> = if n2 == n { vec![n2] } else { vec![n2, n2 + 1] };
    let mut out = Vec::new();
    for &i in &is {
        for &j in &js {
            for s in 1..=m as i64 + 1 {
                for m1 in 0..=bound {
                    for m2 in 0..=bound {
                        if !(s == 1 || (n2 == n && m2 == 0)) {
                            continue;
                        }
                        let mut f = vec![(Variable::X(i), m1), (Variable::Y(j), m2)];
                        f.extend(vartheta_tail(s, m as i64).into_iter().map(|v| (v, 1)));
                        let Ok(Some((_, g))) = SuperMonomial::from_factors(
                            &f.iter().copied().filter(|&(_, e)| e > 0).collect::<Vec<_>>(),
                        ) else {
                            continue;
                        };
                        let GradeLabel::Pair(a, b) = scheme.label_unchecked(&g) else { continue };
                        let GradeLabel::Pair(l, lp) = label else { continue };
                        let l1 = l - a;
                        if l1 < 0 || lp - b != l1 || l1 > bound as i64 {
                            continue;
                        }
                        let mut v = SuperPolynomial::monomial(g);
                        for _ in 0..l1 {
                            v = e.apply(&v);
                        }
                        if !v.is_zero() {
                            out.push(v.normalized());
                        }
                    }
                }
            }
        }
    }
    out
}

fn singular_set(scheme: &GradingScheme, label: GradeLabel, cap: Option<u32>) -> Result<SingularVectorSet> {
    let rep = RepVariant::new(*scheme);
    let set = blocks(scheme, label, cap)?;
    Ok(singular_in_blocks(&set, &rep.positive_operators(), true))
}

/// Singular-vector count against the irreducibility condition at one label.
pub fn cross_check_irreducibility(scheme: &GradingScheme, label: GradeLabel, cap: Option<u32>) -> Result<VerificationReport> {
    cross_check_irreducibility_with(scheme, label, cap, &irreducibility_predicate)
}

pub fn cross_check_irreducibility_with(
    scheme: &GradingScheme,
    label: GradeLabel,
    cap: Option<u32>,
    pred: &Predicate,
) -> Result<VerificationReport> {
    if scheme.is_twisted() && cap.is_none() {
        return Err(Error::CapRequired(scheme.to_string()));
    }
    let cap = if scheme.is_twisted() { cap } else { None };
    let mut r = VerificationReport::new("irreducibility").with_scheme(scheme).with_label(label).with_cap(cap);
    scheme_params(&mut r, scheme);
    let p = pred(scheme, &label)?;
    r.predicate = Some(p.value);
    r.clause = Some(p.clause.clone());

    let rep = RepVariant::new(*scheme);
    let sv = singular_set(scheme, label, cap)?;
    let count = sv.count();
    r.dim("singular", count);
    r.singular_vectors = sv.reported();
    for v in sv.vectors() {
        r.expect(is_singular(&rep, &v), || format!("reported vector {v} fails the independent singular check"));
    }

    if !scheme.is_twisted() {
        let expected = if p.value { 1 } else { 2 };
        r.expect(count == expected, || format!("expected {expected} singular vector(s), found {count}"));
        if count == 0 {
            r.note("no harmonic singular vector at all: the harmonic slice is zero");
        }
        match (scheme.kind(), label) {
            (SchemeKind::GlNatural, GradeLabel::Pair(l, lp)) => {
                if let Some(v) = v_vector(scheme.n(), scheme.m(), l, lp) {
                    if is_singular(&rep, &v) {
                        r.expect(in_span(&sv.vectors(), &v), || format!("{v} is singular but not in the computed set"));
                    } else {
                        r.note(format!("{v} is not a harmonic singular vector here"));
                    }
                }
            }
            (SchemeKind::OspEvenNatural | SchemeKind::OspOddNatural, GradeLabel::Single(k)) if k >= 0 => {
                let x = SuperPolynomial::monomial(SuperMonomial::var_pow(Variable::X(1), k as u32));
                r.expect(in_span(&sv.vectors(), &x), || format!("x1^{k} is missing from the singular vectors"));
            }
            _ => {}
        }
        return Ok(r.finish());
    }

    // Capped search: only contradictions and certified non-uniqueness are decisive.
    let c = cap.unwrap_or(0);
    if scheme.kind() == SchemeKind::GlTwisted && p.value && count == 1 {
        let cands = twisted_form_candidates(scheme, label, c + 2);
        let v = &sv.vectors()[0];
        r.expect(cands.iter().any(|u| u.is_proportional_to(v)), || {
            format!("singular vector {v} is not of the classified form")
        });
    }
    match (p.value, count) {
        (true, k) if k >= 2 => r.fail(format!("condition holds but {k} singular vectors were found")),
        (false, k) if k >= 2 => r.note(format!("{k} singular vectors certify non-uniqueness")),
        (true, 1) => r.inconclusive(format!("one singular vector among weights met below degree {c}; uniqueness beyond the cap is not certified")),
        (_, k) => r.inconclusive(format!("{k} singular vector(s) among weights met below degree {c}")),
    }
    Ok(r.finish())
}

/// Whether `label` is a legal slice label for a natural scheme.
fn natural_label_ok(label: &GradeLabel) -> bool {
    match *label {
        GradeLabel::Pair(l, lp) => l >= 0 && lp >= 0,
        GradeLabel::Single(k) => k >= 0,
    }
}

fn eta_power(e: &DiffOperator, v: &SuperPolynomial, i: usize) -> SuperPolynomial {
    let mut out = v.clone();
    for _ in 0..i {
        out = e.apply(&out);
    }
    out
}

/// Checks `A = sum_i eta^i H_{lowered(i)}` block by block, as a direct sum.
pub fn decomposition_report(scheme: &GradingScheme, label: GradeLabel, cap: Option<u32>) -> Result<VerificationReport> {
    if scheme.is_twisted() && cap.is_none() {
        return Err(Error::CapRequired(scheme.to_string()));
    }
    scheme.check_label(&label)?;
    let cap = if scheme.is_twisted() { cap } else { None };
    let mut r = VerificationReport::new("decomposition").with_scheme(scheme).with_label(label).with_cap(cap);
    scheme_params(&mut r, scheme);
    let hyp = decomposition_hypothesis(scheme, &label);
    r.predicate = Some(hyp);
    r.clause = Some(if hyp { "decomposition hypothesis holds" } else { "decomposition hypothesis fails" }.into());

    if !scheme.is_twisted() && !natural_label_ok(&label) {
        r.dim("slice", 0);
        return Ok(r.finish());
    }
    let e = eta(scheme);
    let set = blocks(scheme, label, cap)?;
    let (mut total, mut sum_h, mut rank_all, mut h_top) = (0, 0, 0, 0);
    let mut intersect = 0usize;
    let mut bad = Vec::new();
    for block in &set.blocks {
        let mut pieces = Vec::new();
        let mut dims = Vec::new();
        for i in 0.. {
            let low = label.lowered(i as i64);
            if !scheme.is_twisted() && !natural_label_ok(&low) {
                break;
            }
            let basis = if i == 0 { block.basis.clone() } else { weight_space(scheme, low, &block.weight)? };
            if basis.is_empty() {
                break;
            }
            let h = block_kernel(scheme, &super::blocks::WeightBlock { weight: block.weight.clone(), basis });
            dims.push(h.len());
            pieces.extend(h.iter().map(|v| eta_power(&e, v, i)));
        }
        let d = block.basis.len();
        let s: usize = dims.iter().sum();
        let rk = poly_rank(&pieces);
        total += d;
        sum_h += s;
        rank_all += rk;
        h_top += dims.first().copied().unwrap_or(0);
        if s != d || rk != d {
            bad.push(format!("weight {}: block {d}, sum of pieces {s}, rank {rk}", block.weight));
        }
        if scheme.kind() == SchemeKind::GlNatural && !hyp {
            // H ∩ eta A_{lowered(1)} inside this block
            let low = label.lowered(1);
            if natural_label_ok(&low) {
                let below = weight_space(scheme, low, &block.weight)?;
                let img: Vec<SuperPolynomial> =
                    below.iter().map(|m| e.apply(&SuperPolynomial::monomial(m.clone()))).collect();
                let h = &pieces[..dims.first().copied().unwrap_or(0)];
                let ri = poly_rank(&img);
                let joint = poly_rank(h.iter().chain(img.iter()));
                intersect += h.len() + ri - joint;
            }
        }
    }
    r.dim("slice", total);
    r.dim("harmonic", h_top);
    r.dim("sum_of_pieces", sum_h);
    r.dim("rank_of_pieces", rank_all);
    if scheme.kind() == SchemeKind::GlNatural && !hyp {
        r.dim("harmonic_meets_eta_image", intersect);
    }
    if hyp {
        for b in &bad {
            r.fail(format!("not a direct sum at {b}"));
        }
    } else if bad.is_empty() {
        r.note("the direct sum holds although the hypothesis fails");
    } else {
        r.note(format!("no direct sum at {} weight(s), as allowed outside the hypothesis", bad.len()));
    }
    if scheme.is_twisted() && r.verdict == Verdict::Pass {
        r.inconclusive(format!(
            "exact on {} weight spaces met below degree {}; other weights unchecked",
            set.blocks.len(),
            cap.unwrap_or(0)
        ));
    }
    Ok(r.finish())
}

/// `eta^(l+l'+n-m-1)(x1^(m+1-n-l') vt_{n+l}..vt_m)` lies in both `H_{l,l'}` and the
/// image of `eta`, and is singular.
pub fn remark_witness(scheme: &GradingScheme, label: GradeLabel) -> Result<VerificationReport> {
    let GradeLabel::Pair(l, lp) = label else {
        return Err(Error::InvalidArgument("the witness needs a gl label".into()));
    };
    if scheme.kind() != SchemeKind::GlNatural {
        return Err(Error::InvalidArgument("the witness is defined for the natural gl grading".into()));
    }
    let (n, m) = (scheme.n() as i64, scheme.m() as i64);
    let c = m + 1 - n;
    if !(l >= 0 && lp >= 0 && l <= c && lp <= c && l + lp > c) {
        return Err(Error::Domain(format!("({l},{lp}) is outside l, l' <= {c} < l+l'")));
    }
    let mut r = VerificationReport::new("witness").with_scheme(scheme).with_label(label);
    scheme_params(&mut r, scheme);
    let power = (l + lp + n - m - 1) as usize;
    let mut f = vec![(Variable::X(1), (m + 1 - n - lp) as u32)];
    f.extend(vartheta_tail(n + l, m).into_iter().map(|v| (v, 1)));
    let base = SuperPolynomial::monomial(monomial(&f));
    let e = eta(scheme);
    let w = eta_power(&e, &base, power);
    r.singular_vectors = vec![crate::report::ReportedVector {
        weight: RepVariant::new(*scheme).weight_of(&w).map(|x| x.rendered()).unwrap_or_default(),
        vector: w.to_string(),
    }];
    r.expect(!w.is_zero(), || "witness vanishes".into());
    r.expect(power >= 1, || "witness is not in the image of eta".into());
    r.expect(scheme.label(w.leading().map(|x| x.0).unwrap_or(&SuperMonomial::one()))? == label, || {
        "witness has the wrong label".into()
    });
    r.expect(laplacian(scheme).apply(&w).is_zero(), || "witness is not harmonic".into());
    let rep = RepVariant::new(*scheme);
    r.expect(is_singular(&rep, &w), || "witness is not singular".into());
    if let Some(v) = v_vector(scheme.n(), scheme.m(), l, lp) {
        r.expect(!v.is_proportional_to(&w), || "witness coincides with the first singular vector".into());
    }
    Ok(r.finish())
}

/// Injectivity and independence of `eta^l x1^k` for `l + k <= max_sum`, with the
/// scalar law of the scheme.
pub fn eta_power_independence(scheme: &GradingScheme, max_sum: i64) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("eta-powers").with_scheme(scheme);
    scheme_params(&mut r, scheme);
    r.param("max_sum", max_sum);
    let e = eta(scheme);
    let d = laplacian(scheme);
    let mut all = Vec::new();
    for k in 0..=max_sum {
        let g = SuperPolynomial::monomial(SuperMonomial::var_pow(Variable::X(1), k as u32));
        let mut prev = g.clone();
        for l in 1..=max_sum - k {
            let cur = e.apply(&prev);
            r.expect(!cur.is_zero(), || format!("eta^{l} x1^{k} vanishes"));
            let c = super::laws::eta_scalar(scheme, &GradeLabel::Single(k), l);
            r.expect(!c.is_zero(), || format!("scalar for l={l}, k={k} vanishes"));
            r.expect(d.apply(&cur) == prev.scale(&c), || format!("scalar law fails at l={l}, k={k}"));
            all.push(cur.clone());
            prev = cur;
        }
        all.push(g);
    }
    let rk = poly_rank(&all);
    r.dim("family", all.len());
    r.dim("rank", rk);
    r.expect(rk == all.len(), || "eta powers are dependent".into());
    Ok(r.finish())
}

/// Span of the series basis against the kernel of `Delta`. Twisted slices are
/// compared on the full weight spaces met below the cap, where both sides are exact.
pub fn xu_kernel_agreement(scheme: &GradingScheme, label: GradeLabel, cap: Option<u32>) -> Result<VerificationReport> {
    if scheme.is_twisted() && cap.is_none() {
        return Err(Error::CapRequired(scheme.to_string()));
    }
    let cap = if scheme.is_twisted() { cap } else { None };
    let mut r = VerificationReport::new("series-basis").with_scheme(scheme).with_label(label).with_cap(cap);
    scheme_params(&mut r, scheme);
    if !scheme.is_twisted() && !natural_label_ok(&label) {
        r.dim("kernel", 0);
        return Ok(r.finish());
    }
    let set = blocks(scheme, label, cap)?;
    let (mut dk, mut dx) = (0, 0);
    for block in &set.blocks {
        let k = block_kernel(scheme, block);
        let x = xu_vectors(scheme, &block.basis)?;
        dk += k.len();
        dx += x.len();
        let w = &block.weight;
        r.expect(k.len() == x.len() && same_span(&k, &x), || {
            format!("weight {w}: kernel {} vs series {}", k.len(), x.len())
        });
    }
    r.dim("kernel", dk);
    r.dim("series", dx);
    if scheme.is_twisted() && r.verdict == Verdict::Pass {
        r.inconclusive(format!("agreement on {} weight spaces met below the cap", set.blocks.len()));
    }
    Ok(r.finish())
}

/// Labels in a rectangular grid, in order.
pub fn label_grid(family: Family, l: (i64, i64), lp: (i64, i64)) -> Vec<GradeLabel> {
    match family {
        Family::Gl => (l.0..=l.1).flat_map(|a| (lp.0..=lp.1).map(move |b| GradeLabel::Pair(a, b))).collect(),
        _ => (l.0..=l.1).map(GradeLabel::Single).collect(),
    }
}

/// Cross-check and decomposition at every label, folded into one verdict.
pub fn theorem_suite(theorem: Theorem, scheme: &GradingScheme, labels: &[GradeLabel], cap: Option<u32>) -> Result<VerificationReport> {
    theorem_suite_with(theorem, scheme, labels, cap, &irreducibility_predicate)
}

pub fn theorem_suite_with(
    theorem: Theorem,
    scheme: &GradingScheme,
    labels: &[GradeLabel],
    cap: Option<u32>,
    pred: &Predicate,
) -> Result<VerificationReport> {
    if !theorem.applies_to(scheme) {
        return Err(Error::InvalidArgument(format!("{theorem} does not cover {scheme}")));
    }
    for l in labels {
        scheme.check_label(l)?;
        pred(scheme, l)?;
    }
    let mut r = VerificationReport::new(format!("theorem {theorem}")).with_scheme(scheme).with_cap(cap);
    scheme_params(&mut r, scheme);
    let children: Vec<Result<(VerificationReport, VerificationReport)>> = labels
        .par_iter()
        .map(|&l| Ok((cross_check_irreducibility_with(scheme, l, cap, pred)?, decomposition_report(scheme, l, cap)?)))
        .collect();
    for c in children {
        let (a, b) = c?;
        r.push(a);
        r.push(b);
    }
    r.dim("labels", labels.len());
    Ok(r.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_decompositions() {
        let s = GradingScheme::gl_natural(2, 1).unwrap();
        let r = decomposition_report(&s, GradeLabel::Pair(1, 1), None).unwrap();
        assert_eq!(r.dimensions["slice"], 9);
        assert_eq!(r.dimensions["harmonic"], 8);
        assert_eq!(r.dimensions["rank_of_pieces"], 9);
        let o = GradingScheme::osp_even_natural(2, 3).unwrap();
        assert!(decomposition_report(&o, GradeLabel::Single(2), None).unwrap().passed());
    }

    #[test]
    fn witness_at_two_two() {
        let s = GradingScheme::gl_natural(2, 3).unwrap();
        let r = remark_witness(&s, GradeLabel::Pair(2, 2)).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        let d = decomposition_report(&s, GradeLabel::Pair(2, 2), None).unwrap();
        assert!(d.dimensions["harmonic_meets_eta_image"] > 0);
    }

    #[test]
    fn v_vector_shapes() {
        assert_eq!(v_vector(2, 3, 1, 0).unwrap().to_string(), "1/1*x1");
        assert_eq!(v_vector(2, 3, 0, 4).unwrap().to_string(), "1/1*y2*vt1*vt2*vt3");
    }
}
