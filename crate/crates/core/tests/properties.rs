use std::collections::BTreeSet;

use proptest::prelude::*;

use superharm::diffops::{eta, laplacian, DiffOperator};
use superharm::exactalg::{
    enumerate_slice, grade, rat, GradeLabel, GradingScheme, SuperMonomial, SuperPolynomial, Variable,
};
use superharm::harmonic::{harmonic_kernel, is_singular, singular_vectors, theorem_suite_with, PredicateValue, Theorem};
use superharm::linalg::poly_rank;
use superharm::report::{Verdict, VerificationReport};
use superharm::superrep::{bracket, local_nilpotency_check, AlgebraElement, RepVariant, SuperAlgebra};

use Variable::{Theta as Th, VarTheta as Vt, X, X0, Y};

const N: u16 = 2;
const M: u16 = 2;

fn variable() -> impl Strategy<Value = Variable> {
    prop_oneof![
        Just(X0),
        (1..=N).prop_map(X),
        (1..=N).prop_map(Y),
        (1..=M).prop_map(Th),
        (1..=M).prop_map(Vt),
    ]
}

fn monomial() -> impl Strategy<Value = SuperMonomial> {
    prop::collection::vec((variable(), 1u32..3), 0..4).prop_map(|fs| {
        let mut seen = BTreeSet::new();
        let fs: Vec<_> = fs
            .into_iter()
            .filter(|(v, _)| seen.insert(*v))
            .map(|(v, e)| if v.is_fermionic() { (v, 1) } else { (v, e) })
            .collect();
        SuperMonomial::from_factors(&fs).unwrap().unwrap().1
    })
}

fn polynomial() -> impl Strategy<Value = SuperPolynomial> {
    prop::collection::vec((monomial(), -3i64..=3), 0..4).prop_map(|ts| {
        let mut p = SuperPolynomial::zero();
        for (m, c) in ts {
            p.add_term(m, rat(c));
        }
        p
    })
}

/// Parity-homogeneous polynomial: the even or odd part of a random one.
fn homogeneous() -> impl Strategy<Value = SuperPolynomial> {
    (polynomial(), any::<bool>()).prop_map(|(p, odd)| if odd { p.odd_part() } else { p.even_part() })
}

fn operator() -> impl Strategy<Value = DiffOperator> {
    prop::collection::vec((monomial(), monomial(), -2i64..=2), 0..3).prop_map(|ts| {
        let mut op = DiffOperator::zero();
        for (a, b, c) in ts {
            op.add_atom(a, b, rat(c));
        }
        op
    })
}

fn homogeneous_operator() -> impl Strategy<Value = DiffOperator> {
    (operator(), any::<bool>()).prop_map(|(op, odd)| {
        let mut out = DiffOperator::zero();
        for (a, b, c) in op.atoms() {
            if (a.parity() + b.parity()) % 2 == odd as u8 {
                out.add_atom(a.clone(), b.clone(), c.clone());
            }
        }
        out
    })
}

fn sign(p: u8) -> SuperPolynomial {
    SuperPolynomial::constant(rat(if p % 2 == 0 { 1 } else { -1 }))
}

fn schemes() -> Vec<GradingScheme> {
    vec![
        GradingScheme::gl_natural(N, M).unwrap(),
        GradingScheme::osp_even_natural(N, M).unwrap(),
        GradingScheme::osp_odd_natural(N, M).unwrap(),
        GradingScheme::gl_twisted(4, M, 1, 3).unwrap(),
        GradingScheme::osp_even_twisted(4, M, 1, 3).unwrap(),
        GradingScheme::osp_odd_twisted(4, M, 1, 3).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn super_commutativity(p in homogeneous(), q in homogeneous()) {
        let (Some(a), Some(b)) = (p.parity(), q.parity()) else { return Ok(()) };
        prop_assert_eq!(p.mul(&q), sign(a * b).mul(&q.mul(&p)));
    }

    #[test]
    fn associativity(p in polynomial(), q in polynomial(), r in polynomial()) {
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
    }

    #[test]
    fn signed_leibniz(f in homogeneous(), g in polynomial(), v in variable()) {
        let Some(pf) = f.parity() else { return Ok(()) };
        let lhs = f.mul(&g).derive(v);
        let rhs = &f.derive(v).mul(&g) + &sign(pf * v.parity()).mul(&f.mul(&g.derive(v)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn fermionic_nilpotency(p in polynomial(), r in 1..=M) {
        prop_assert!(p.derive(Th(r)).derive(Th(r)).is_zero());
        let t = SuperPolynomial::var(Vt(r));
        prop_assert!(t.mul(&p).mul(&t).is_zero());
    }

    #[test]
    fn integration_is_a_right_inverse(p in polynomial(), i in 1..=N) {
        let q = p.integrate_bosonic(X(i)).unwrap();
        prop_assert_eq!(q.derive(X(i)), p.clone());
        prop_assert!(p.integrate_bosonic(Th(1)).is_err());
    }

    #[test]
    fn grading_is_additive(a in monomial(), b in monomial(), s in 0usize..6) {
        let scheme = schemes()[s];
        let (Ok(ga), Ok(gb)) = (grade(&a, &scheme), grade(&b, &scheme)) else { return Ok(()) };
        let Some((_, ab)) = a.mul(&b) else { return Ok(()) };
        let gab = grade(&ab, &scheme).unwrap();
        let sum = match (ga, gb) {
            (GradeLabel::Pair(l, lp), GradeLabel::Pair(k, kp)) => GradeLabel::Pair(l + k, lp + kp),
            (GradeLabel::Single(k), GradeLabel::Single(j)) => GradeLabel::Single(k + j),
            _ => unreachable!(),
        };
        prop_assert_eq!(gab, sum);
    }

    #[test]
    fn compose_matches_application(a in operator(), b in operator(), p in polynomial()) {
        prop_assert_eq!(a.compose(&b).apply(&p), a.apply(&b.apply(&p)));
    }

    #[test]
    fn super_jacobi(a in homogeneous_operator(), b in homogeneous_operator(), c in homogeneous_operator()) {
        let (Some(pa), Some(pb)) = (a.parity(), b.parity()) else { return Ok(()) };
        let lhs = a.super_commutator(&b.super_commutator(&c));
        let s = rat(if pa * pb % 2 == 0 { 1 } else { -1 });
        let mut rhs = a.super_commutator(&b).super_commutator(&c);
        rhs.add_scaled(&b.super_commutator(&a.super_commutator(&c)), &s);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn twist_is_multiplicative(a in operator(), b in operator()) {
        let a = a.filter_out_x0();
        let b = b.filter_out_x0();
        prop_assert_eq!(a.compose(&b).twist(1, 2), a.twist(1, 2).compose(&b.twist(1, 2)));
    }

    #[test]
    fn representations_are_homomorphisms(s in 0usize..6, i in 0usize..64, j in 0usize..64, c in -2i64..=2) {
        let rep = RepVariant::new(schemes()[s]);
        let alg = rep.algebra();
        let basis = alg.basis();
        let (gi, gj) = (&basis[i % basis.len()], &basis[j % basis.len()]);
        let mut x = alg.element(gi);
        x.add_scaled(&alg.element(gj), &rat(c));
        let y = alg.element(&basis[(i + j) % basis.len()]);
        if x.parity().is_none() {
            return Ok(());
        }
        let z = bracket(&x, &y);
        prop_assert!(alg.decompose(&z).is_ok());
        let lhs = rep.rep_operator(&z).unwrap();
        let rhs = rep.rep_operator(&x).unwrap().super_commutator(&rep.rep_operator(&y).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn verdict_exit_codes(vs in prop::collection::vec(0u8..3, 0..6)) {
        let mut r = VerificationReport::new("root");
        for v in &vs {
            let mut c = VerificationReport::new("child");
            match v {
                1 => c.fail("injected"),
                2 => c.inconclusive("injected"),
                _ => {}
            }
            r.push(c);
        }
        let want = if vs.contains(&1) { 1 } else if vs.contains(&2) { 3 } else { 0 };
        prop_assert_eq!(r.verdict.exit_code(), want);
    }
}

trait NoX0 {
    fn filter_out_x0(&self) -> Self;
}

impl NoX0 for DiffOperator {
    fn filter_out_x0(&self) -> Self {
        let mut out = DiffOperator::zero();
        for (a, b, c) in self.atoms() {
            if a.exponent(X0) == 0 && b.exponent(X0) == 0 {
                out.add_atom(a.clone(), b.clone(), c.clone());
            }
        }
        out
    }
}

/// Every monomial of degree <= `d` in the scheme's variables, by brute force.
fn all_monomials(scheme: &GradingScheme, d: u32) -> Vec<SuperMonomial> {
    let vars = scheme.variables();
    let mut out = vec![SuperMonomial::one()];
    for v in vars {
        let top = if v.is_fermionic() { 1 } else { d };
        let mut next = Vec::new();
        for m in &out {
            for e in 0..=top {
                if m.degree() + e > d {
                    break;
                }
                let mut f = m.factors();
                if e > 0 {
                    f.push((v, e));
                }
                next.push(SuperMonomial::from_factors(&f).unwrap().unwrap().1);
            }
        }
        out = next;
    }
    out
}

#[test]
fn slices_match_generate_and_filter() {
    for scheme in [
        GradingScheme::gl_natural(2, 1).unwrap(),
        GradingScheme::gl_natural(1, 2).unwrap(),
        GradingScheme::osp_even_natural(2, 1).unwrap(),
        GradingScheme::osp_odd_natural(1, 2).unwrap(),
    ] {
        let pool = all_monomials(&scheme, 6);
        let labels: Vec<GradeLabel> = match scheme.family() {
            superharm::exactalg::Family::Gl => (0..3).flat_map(|a| (0..3).map(move |b| GradeLabel::Pair(a, b))).collect(),
            _ => (0..4).map(GradeLabel::Single).collect(),
        };
        for label in labels {
            let slice = enumerate_slice(&scheme, label, None).unwrap();
            let mut want: Vec<SuperMonomial> =
                pool.iter().filter(|m| scheme.label(m).unwrap() == label).cloned().collect();
            want.sort();
            let mut got = slice.basis.clone();
            let distinct: BTreeSet<_> = got.iter().cloned().collect();
            assert_eq!(distinct.len(), got.len(), "{scheme} {label}");
            got.sort();
            assert_eq!(got, want, "{scheme} {label}");
        }
    }
    // twisted, capped: the capped slice is the filtered degree window
    let tw = GradingScheme::gl_twisted(4, 1, 1, 3).unwrap();
    let pool = all_monomials(&tw, 3);
    let slice = enumerate_slice(&tw, GradeLabel::Pair(0, 0), Some(3)).unwrap();
    let mut want: Vec<_> = pool.into_iter().filter(|m| tw.label(m).unwrap() == GradeLabel::Pair(0, 0)).collect();
    want.sort();
    let mut got = slice.basis;
    got.sort();
    assert_eq!(got, want);
}

#[test]
fn harmonic_bases_are_independent_kernels() {
    for scheme in schemes() {
        let labels: Vec<GradeLabel> = match scheme.family() {
            superharm::exactalg::Family::Gl => vec![GradeLabel::Pair(1, 1), GradeLabel::Pair(0, 1)],
            _ => vec![GradeLabel::Single(1), GradeLabel::Single(2)],
        };
        let cap = scheme.is_twisted().then_some(3);
        let d = laplacian(&scheme);
        for label in labels {
            let h = harmonic_kernel(&enumerate_slice(&scheme, label, cap).unwrap()).unwrap();
            assert!(h.vectors.iter().all(|v| d.apply(v).is_zero()));
            assert_eq!(poly_rank(&h.vectors), h.dim());
            let rep = RepVariant::new(scheme);
            let sv = singular_vectors(&enumerate_slice(&scheme, label, cap).unwrap(), &rep).unwrap();
            for v in sv.vectors() {
                assert!(is_singular(&rep, &v));
                assert_eq!(v.leading().unwrap().1, &rat(1));
            }
        }
    }
}

#[test]
fn eta_commutes_with_the_representation() {
    for scheme in schemes() {
        let rep = RepVariant::new(scheme);
        let e = eta(&scheme);
        let d = laplacian(&scheme);
        for g in rep.algebra().basis() {
            let op = rep.generator_operator(&g);
            assert!(op.super_commutator(&e).is_zero(), "{scheme} {g:?}");
            assert!(op.super_commutator(&d).is_zero(), "{scheme} {g:?}");
        }
    }
}

#[test]
fn positive_generators_are_locally_nilpotent() {
    // twisted osp positive parts carry pure multiplications such as x2*y4
    for scheme in schemes().into_iter().filter(|s| !s.is_twisted() || s.family() == superharm::exactalg::Family::Gl) {
        let rep = RepVariant::new(scheme);
        let label = match scheme.family() {
            superharm::exactalg::Family::Gl => GradeLabel::Pair(1, 0),
            _ => GradeLabel::Single(1),
        };
        let slice = enumerate_slice(&scheme, label, Some(3)).unwrap();
        let samples: Vec<_> = slice.basis.iter().take(12).map(|m| SuperPolynomial::monomial(m.clone())).collect();
        let r = local_nilpotency_check(&rep, &samples);
        assert!(r.passed(), "{}", r.to_text());
    }
    let tw = RepVariant::new(GradingScheme::osp_even_twisted(4, 2, 1, 3).unwrap());
    let x2 = SuperPolynomial::var(X(2));
    assert!(!local_nilpotency_check(&tw, &[x2]).passed());
}

#[test]
fn wrong_boundary_is_caught() {
    let s = GradingScheme::gl_natural(2, 3).unwrap();
    let labels: Vec<_> = (0..=4).flat_map(|a| (0..=4).map(move |b| GradeLabel::Pair(a, b))).collect();
    // off by one in the first clause
    let wrong = |_: &GradingScheme, l: &GradeLabel| {
        let GradeLabel::Pair(a, b) = *l else { unreachable!() };
        Ok(PredicateValue { value: a > 3 || b > 2 || a + b <= 2, clause: "shifted".into() })
    };
    let r = theorem_suite_with(Theorem::T1, &s, &labels, None, &wrong).unwrap();
    assert_eq!(r.verdict, Verdict::Fail);
    assert_eq!(r.verdict.exit_code(), 1);
}

#[test]
fn algebra_elements_reject_outside_units() {
    let alg = SuperAlgebra::new(superharm::exactalg::Family::OspEven, 2, 1);
    let x = AlgebraElement::from_units(alg, &[(1, 1, rat(1))]);
    assert!(x.is_err() || alg.decompose(&x.unwrap()).is_err());
}
