use num_traits::One;

use super::algebra::{bracket, Generator};
use super::rep::RepVariant;
use crate::diffops::named::{euler, named_operator, OperatorName};
use crate::diffops::{eta, laplacian, DiffOperator};
use crate::exactalg::{rat, Family, GradingScheme, Rational, SuperMonomial, SuperPolynomial, Variable};
use crate::linalg::{nullspace, Echelon, SparseVec};
use crate::report::VerificationReport;

use Variable::{Theta as Th, VarTheta as Vt, X, X0, Y};

pub(crate) fn op_vec(op: &DiffOperator) -> SparseVec<(SuperMonomial, SuperMonomial)> {
    op.atoms().map(|(a, b, c)| ((a.clone(), b.clone()), c.clone())).collect()
}

/// `rho([a, b]) = [rho(a), rho(b)]` for every pair of basis elements.
pub fn verify_homomorphism(rep: &RepVariant) -> VerificationReport {
    verify_homomorphism_with(rep, &|g| rep.generator_operator(g))
}

/// Same check against an arbitrary generator table.
pub fn verify_homomorphism_with(rep: &RepVariant, table: &dyn Fn(&Generator) -> DiffOperator) -> VerificationReport {
    let alg = rep.algebra();
    let mut report = VerificationReport::new("brackets").with_scheme(rep.scheme);
    let basis = alg.basis();
    let images: Vec<DiffOperator> = basis.iter().map(table).collect();
    let elements: Vec<_> = basis.iter().map(|g| alg.element(g)).collect();
    let mut pairs = 0usize;
    'outer: for a in 0..basis.len() {
        for b in a..basis.len() {
            pairs += 1;
            let lhs = match rep.rep_operator_with(&bracket(&elements[a], &elements[b]), table) {
                Ok(op) => op,
                Err(e) => {
                    report.fail(format!("[{:?}, {:?}]: {e}", basis[a], basis[b]));
                    break 'outer;
                }
            };
            let rhs = images[a].super_commutator(&images[b]);
            if lhs != rhs {
                report.fail(format!("[{:?}, {:?}]: rho of bracket is {lhs}, bracket of images is {rhs}", basis[a], basis[b]));
                break 'outer;
            }
        }
    }
    report.dim("algebra", alg.dim());
    report.dim("pairs", pairs);
    report.finish()
}

/// `rho(xi)` commutes with `Delta` and with `eta` (as operators) for every basis element.
pub fn centralizer_check(rep: &RepVariant) -> VerificationReport {
    let mut report = VerificationReport::new("centralizer").with_scheme(rep.scheme);
    let delta = laplacian(&rep.scheme);
    let et = eta(&rep.scheme);
    for g in rep.algebra().basis() {
        let op = rep.generator_operator(&g);
        if !op.super_commutator(&delta).is_zero() {
            report.fail(format!("{g:?} does not commute with Delta"));
            break;
        }
        if !op.super_commutator(&et).is_zero() {
            report.fail(format!("{g:?} does not commute with eta"));
            break;
        }
    }
    report.dim("algebra", rep.algebra().dim());
    report.finish()
}

/// Natural variants: `rho(xi)(eta) = 0`. Twisted variants: `rho(xi)` commutes with the `eta` operator.
pub fn eta_invariance_check(rep: &RepVariant) -> VerificationReport {
    let mut report = VerificationReport::new("eta-invariance").with_scheme(rep.scheme);
    let et = eta(&rep.scheme);
    let eta_poly = et.apply(&SuperPolynomial::one());
    for g in rep.algebra().basis() {
        let op = rep.generator_operator(&g);
        let ok = if rep.scheme.is_twisted() {
            op.super_commutator(&et).is_zero()
        } else {
            op.apply(&eta_poly).is_zero()
        };
        if !ok {
            report.fail(format!("{g:?} does not preserve eta"));
            break;
        }
    }
    report.finish()
}

fn sum_ops(ops: impl IntoIterator<Item = DiffOperator>) -> DiffOperator {
    let mut out = DiffOperator::zero();
    for op in ops {
        out.add_scaled(&op, &Rational::one());
    }
    out
}

fn flat_ops(scheme: &GradingScheme) -> DiffOperator {
    let (n1, n2) = scheme.split();
    let n = scheme.n();
    sum_ops((1..=n).flat_map(|i| {
        let sx = if i <= n1 { -1 } else { 1 };
        let sy = if i <= n2 { 1 } else { -1 };
        [DiffOperator::z_d(X(i), X(i)).scale(&rat(sx)), DiffOperator::z_d(Y(i), Y(i)).scale(&rat(sy))]
    }))
}

fn fermion_euler(m: u16) -> DiffOperator {
    let vars: Vec<Variable> = (1..=m).flat_map(|r| [Th(r), Vt(r)]).collect();
    euler(&vars)
}

fn identity_entry(report: &mut VerificationReport, name: &str, lhs: DiffOperator, rhs: DiffOperator) {
    let mut r = VerificationReport::new(name.to_string());
    if lhs != rhs {
        r.fail(format!("commutator is {lhs}, expected {rhs}"));
    }
    report.push(r.finish());
}

/// Commutator identities between the Laplacians and their duals, in normal form.
///
/// The scheme's `flat + flat'` replaces the Euler operator of the bosonic part; for
/// natural schemes the two agree.
pub fn check_identities(scheme: &GradingScheme) -> VerificationReport {
    let mut report = VerificationReport::new("identities").with_scheme(scheme);
    let (n, m) = (scheme.n() as i64, scheme.m() as i64);
    let (n1, n2) = scheme.split();
    let op = |name| named_operator(name, scheme).expect("defined");

    let dc = op(OperatorName::DeltaCheck);
    let ec = op(OperatorName::EtaCheck);
    identity_entry(
        &mut report,
        "fermionic",
        dc.super_commutator(&ec),
        &DiffOperator::scalar(rat(-m)) + &fermion_euler(scheme.m()),
    );

    let db = op(OperatorName::DeltaBar);
    let eb = op(OperatorName::EtaBar);
    let bos_const = n2 as i64 - n1 as i64;
    identity_entry(
        &mut report,
        if scheme.is_twisted() { "bosonic-twisted" } else { "bosonic" },
        db.super_commutator(&eb),
        &DiffOperator::scalar(rat(bos_const)) + &flat_ops(scheme),
    );
    if !scheme.is_twisted() {
        let e: Vec<Variable> = (1..=scheme.n()).flat_map(|i| [X(i), Y(i)]).collect();
        identity_entry(&mut report, "bosonic-euler", db.super_commutator(&eb), &DiffOperator::scalar(rat(n)) + &euler(&e));
    }

    if scheme.family() == Family::OspOdd {
        let d = laplacian(scheme);
        let e = eta(scheme);
        let inner = sum_ops([DiffOperator::z_d(X0, X0), flat_ops(scheme), fermion_euler(scheme.m())]);
        let rhs = &DiffOperator::scalar(rat(2 + 4 * (bos_const - m))) + &inner.scale(&rat(4));
        identity_entry(&mut report, "odd", d.super_commutator(&e), rhs);
        if scheme.is_twisted() {
            // The form with the plain Euler operator does not survive the twist.
            let e_all: Vec<Variable> = scheme.variables();
            let naive = &DiffOperator::scalar(rat(2 + 4 * (bos_const - m))) + &euler(&e_all).scale(&rat(4));
            if naive == d.super_commutator(&e) {
                report.fail("commutator unexpectedly matches the untwisted Euler form");
            } else {
                report.note("the untwisted Euler form of the odd identity does not hold here; the flat form does");
            }
        }
    }
    report.finish()
}

/// Kernel of `T -> T(eta)` on the span of all `z_a d_{z_b}` (twisted: `T -> [T, eta]`)
/// has the dimension of the algebra and contains every `rho(xi)`.
pub fn osp_stabilizer_check(rep: &RepVariant) -> VerificationReport {
    let mut report = VerificationReport::new("stabilizer").with_scheme(rep.scheme);
    if rep.scheme.family() == Family::Gl {
        report.fail("the stabilizer check applies to orthosymplectic schemes");
        return report.finish();
    }
    let space = rep.operator_space();
    let et = eta(&rep.scheme);
    let eta_poly = et.apply(&SuperPolynomial::one());
    let kernel_tags = if rep.scheme.is_twisted() {
        let cols: Vec<_> = space.iter().map(|t| op_vec(&t.super_commutator(&et))).collect();
        nullspace(&cols)
    } else {
        let cols: Vec<_> = space.iter().map(|t| crate::linalg::poly_vec(&t.apply(&eta_poly))).collect();
        nullspace(&cols)
    };
    let kernel: Vec<DiffOperator> = kernel_tags
        .iter()
        .map(|tag| {
            let mut op = DiffOperator::zero();
            for (j, c) in tag {
                op.add_scaled(&space[*j], c);
            }
            op
        })
        .collect();
    let dim_alg = rep.algebra().dim();
    report.dim("operator_space", space.len());
    report.dim("kernel", kernel.len());
    report.dim("algebra", dim_alg);
    report.expect(kernel.len() == dim_alg, || format!("kernel has dimension {}, algebra {}", kernel.len(), dim_alg));

    let mut ech = Echelon::new();
    for k in &kernel {
        ech.insert(op_vec(k));
    }
    let mut images = Echelon::new();
    for g in rep.algebra().basis() {
        let op = rep.generator_operator(&g);
        if !ech.contains(&op_vec(&op)) {
            report.fail(format!("image of {g:?} is not in the kernel"));
        }
        images.insert(op_vec(&op));
    }
    report.dim("image_rank", images.rank());
    report.expect(images.rank() == dim_alg, || format!("images have rank {}", images.rank()));

    let vars = rep.scheme.variables();
    let x1 = vars.iter().position(|&v| v == X(1)).expect("x1 present");
    let control = space[x1 * vars.len() + x1].clone();
    let control_ok = !ech.contains(&op_vec(&control));
    report.expect(control_ok, || format!("control operator {control} lies in the kernel"));
    report.finish()
}

/// Each positive generator is nilpotent on each sample vector within
/// `deg + 2m + 2` applications.
pub fn local_nilpotency_check(rep: &RepVariant, samples: &[SuperPolynomial]) -> VerificationReport {
    let mut report = VerificationReport::new("local-nilpotency").with_scheme(rep.scheme);
    let ops = rep.positive_operators();
    for v in samples {
        let bound = v.max_total_degree() as usize + 2 * rep.scheme.m() as usize + 2;
        for (g, op) in rep.positive_generators().iter().zip(&ops) {
            let mut cur = v.clone();
            let mut k = 0;
            while !cur.is_zero() && k <= bound {
                cur = op.apply(&cur);
                k += 1;
            }
            if !cur.is_zero() {
                report.fail(format!("{g:?} is not nilpotent on {v} within {bound} steps"));
                return report.finish();
            }
        }
    }
    report.dim("samples", samples.len());
    report.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_homomorphisms() {
        for s in [
            GradingScheme::gl_natural(2, 1).unwrap(),
            GradingScheme::osp_even_natural(1, 1).unwrap(),
            GradingScheme::osp_odd_natural(1, 1).unwrap(),
        ] {
            let r = verify_homomorphism(&RepVariant::new(s));
            assert!(r.passed(), "{}", r.to_text());
        }
    }

    #[test]
    fn corrupted_table_fails() {
        let rep = RepVariant::new(GradingScheme::gl_natural(2, 1).unwrap());
        let table = |g: &Generator| {
            let op = rep.generator_operator(g);
            if *g == Generator::Unit(3, 1) {
                -&op
            } else {
                op
            }
        };
        assert!(!verify_homomorphism_with(&rep, &table).passed());
    }

    #[test]
    fn identities_small() {
        for s in [
            GradingScheme::gl_natural(2, 1).unwrap(),
            GradingScheme::gl_twisted(4, 1, 1, 3).unwrap(),
            GradingScheme::osp_odd_natural(2, 1).unwrap(),
            GradingScheme::osp_odd_twisted(4, 1, 1, 3).unwrap(),
        ] {
            let r = check_identities(&s);
            assert!(r.passed(), "{}", r.to_text());
        }
    }

    #[test]
    fn stabilizer_small() {
        let r = osp_stabilizer_check(&RepVariant::new(GradingScheme::osp_even_natural(2, 1).unwrap()));
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.dimensions["kernel"], 17);
    }
}
