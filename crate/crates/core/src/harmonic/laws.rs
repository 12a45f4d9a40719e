use super::blocks::blocks;
use super::kernel::harmonic_kernel;
use super::singular::singular_in_blocks;
use crate::diffops::{eta, im_operator, laplacian, named_operator, ImParams, OperatorName};
use crate::error::{Error, Result};
use crate::exactalg::{enumerate_slice, rat, Family, GradeLabel, GradingScheme, Rational, SuperPolynomial, Variable};
use crate::linalg::{poly_rank, same_span};
use crate::report::VerificationReport;
use crate::superrep::{Generator, RepVariant};

/// `c` in `Delta eta^l f = c eta^(l-1) f` for `f` harmonic of label `label`.
pub fn eta_scalar(scheme: &GradingScheme, label: &GradeLabel, l: i64) -> Rational {
    let (n1, n2) = scheme.split();
    let base = n2 as i64 - n1 as i64 - scheme.m() as i64;
    let t = label.total();
    match scheme.family() {
        Family::OspOdd => rat(2 * l * (1 + 2 * (base + t + l - 1))),
        _ => rat(l * (base + t + l - 1)),
    }
}

/// The scalar law on every harmonic basis vector of a slice, for powers `1..=max_power`.
pub fn scalar_law_check(scheme: &GradingScheme, label: GradeLabel, cap: Option<u32>, max_power: i64) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("scalar-law").with_scheme(scheme).with_label(label).with_cap(cap);
    let slice = enumerate_slice(scheme, label, cap)?;
    let h = harmonic_kernel(&slice)?;
    r.dim("harmonic", h.dim());
    let (d, e) = (laplacian(scheme), eta(scheme));
    for f in &h.vectors {
        let mut prev = f.clone();
        for l in 1..=max_power {
            let cur = e.apply(&prev);
            let c = eta_scalar(scheme, &label, l);
            if !r.expect(d.apply(&cur) == prev.scale(&c), || format!("law fails for eta^{l} applied to {f}")) {
                break;
            }
            prev = cur;
        }
    }
    Ok(r.finish())
}

fn theta_vartheta(r: i64, s: i64, m: i64) -> SuperPolynomial {
    let mut vars: Vec<Variable> = (1..=r).map(|i| Variable::Theta(i as u16)).collect();
    vars.extend((s..=m).map(|i| Variable::VarTheta(i as u16)));
    SuperPolynomial::product(&vars)
}

/// `DeltaCheck(etacheck^l f) = l(l+r-s) etacheck^(l-1) f` for `f = th_1..th_r vt_s..vt_m`.
pub fn fermionic_law_check(m: u16, max_power: i64) -> Result<VerificationReport> {
    let scheme = GradingScheme::gl_natural(1, m)?;
    let mut rep = VerificationReport::new("fermionic-law").with_scheme(scheme);
    let d = named_operator(OperatorName::DeltaCheck, &scheme)?;
    let e = named_operator(OperatorName::EtaCheck, &scheme)?;
    let mi = m as i64;
    for r in 0..=mi {
        for s in r + 1..=mi + 1 {
            let f = theta_vartheta(r, s, mi);
            let mut prev = f.clone();
            for l in 1..=max_power {
                let cur = e.apply(&prev);
                let c = rat(l * (l + r - s));
                rep.expect(d.apply(&cur) == prev.scale(&c), || format!("law fails at r={r}, s={s}, l={l}"));
                prev = cur;
            }
        }
    }
    Ok(rep.finish())
}

fn im_vector(n: u16, m: u16, p: ImParams) -> Result<SuperPolynomial> {
    let mut f = SuperPolynomial::product(&[]);
    if p.l1 > 0 {
        f = f.mul(&SuperPolynomial::var(Variable::X(1)).pow(p.l1 as u32));
    }
    if p.l2 > 0 {
        f = f.mul(&SuperPolynomial::var(Variable::Y(n)).pow(p.l2 as u32));
    }
    f = f.mul(&theta_vartheta(p.r, p.s, m as i64));
    Ok(im_operator(n, m, p)?.apply(&f))
}

/// Index set `(l1, l2, r, s, l3)` of the closed-form even-part singular vectors at `(l, l')`.
pub fn im_index_set(n: u16, m: u16, l: i64, lp: i64) -> Vec<ImParams> {
    let mi = m as i64;
    let mut out = Vec::new();
    for r in 0..=mi {
        for s in r + 1..=mi + 1 {
            for l3 in 0..s - r {
                let l1 = l - r - l3;
                let l2 = lp - l3 - (mi + 1 - s);
                if l1 < 0 || l2 < 0 || (n == 1 && l1 * l2 != 0) {
                    continue;
                }
                out.push(ImParams { l1, l2, r, s, l: l3 });
            }
        }
    }
    out
}

/// Singular vectors of `H_{l,l'}` for the even part of gl(n|m) against the closed form.
pub fn even_singular_closed_form(n: u16, m: u16, label: GradeLabel) -> Result<VerificationReport> {
    let GradeLabel::Pair(l, lp) = label else {
        return Err(Error::InvalidArgument("the closed form needs a gl label".into()));
    };
    let scheme = GradingScheme::gl_natural(n, m)?;
    let mut r = VerificationReport::new("even-singular-closed-form").with_scheme(scheme).with_label(label);
    let rep = RepVariant::new(scheme);
    let (nu, mu) = (n as usize, m as usize);
    let mut ops = Vec::new();
    for i in 1..=nu {
        for j in i + 1..=nu {
            ops.push(rep.generator_operator(&Generator::Unit(i, j)));
        }
    }
    for a in 1..=mu {
        for b in a + 1..=mu {
            ops.push(rep.generator_operator(&Generator::Unit(nu + a, nu + b)));
        }
    }
    let computed = singular_in_blocks(&blocks(&scheme, label, None)?, &ops, true).vectors();
    let mut closed = Vec::new();
    for p in im_index_set(n, m, l, lp) {
        let v = im_vector(n, m, p)?;
        r.expect(!v.is_zero(), || format!("Im vector vanishes at {p:?}"));
        closed.push(v);
    }
    r.dim("computed", computed.len());
    r.dim("closed_form", closed.len());
    r.expect(computed.len() == closed.len(), || format!("{} computed, {} closed-form", computed.len(), closed.len()));
    r.expect(poly_rank(&closed) == closed.len(), || "closed-form vectors are dependent".into());
    r.expect(same_span(&computed, &closed), || "spans differ".into());

    // For each seed with n+l1+l2+r-s >= 0, the eta^l4 Im(..,l3) images are independent.
    let e = eta(&scheme);
    let mut seeds: Vec<(i64, i64, i64, i64)> = im_index_set(n, m, l, lp).iter().map(|p| (p.l1, p.l2, p.r, p.s)).collect();
    seeds.dedup();
    let mut largest = 0;
    for (l1, l2, rr, ss) in seeds {
        if n as i64 + l1 + l2 + rr - ss < 0 {
            continue;
        }
        let mut family = Vec::new();
        for l3 in 0..ss - rr {
            let mut v = im_vector(n, m, ImParams { l1, l2, r: rr, s: ss, l: l3 })?;
            for _ in 0..=2 {
                family.push(v.clone());
                v = e.apply(&v);
            }
        }
        largest = largest.max(family.len());
        r.expect(poly_rank(&family) == family.len(), || format!("eta family of seed ({l1},{l2},{rr},{ss}) is dependent"));
    }
    r.dim("largest_eta_family", largest);
    Ok(r.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laws_hold_on_small_slices() {
        let s = GradingScheme::gl_natural(2, 1).unwrap();
        assert!(scalar_law_check(&s, GradeLabel::Pair(1, 1), None, 3).unwrap().passed());
        let o = GradingScheme::osp_odd_natural(2, 1).unwrap();
        assert!(scalar_law_check(&o, GradeLabel::Single(2), None, 2).unwrap().passed());
        assert!(fermionic_law_check(2, 3).unwrap().passed());
    }

    #[test]
    fn closed_form_small() {
        let r = even_singular_closed_form(2, 2, GradeLabel::Pair(2, 1)).unwrap();
        assert!(r.passed(), "{}", r.to_text());
    }
}
