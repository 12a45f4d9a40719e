//! The superalgebras gl(n|m), osp(2n|2m), osp(2n+1|2m), their brackets, and their
//! differential-operator representations on the polynomial algebra.

pub mod algebra;
pub mod checks;
pub mod rep;

pub use algebra::{bracket, AlgebraElement, Generator, SuperAlgebra};
pub use checks::{
    centralizer_check, check_identities, eta_invariance_check, local_nilpotency_check, osp_stabilizer_check,
    verify_homomorphism, verify_homomorphism_with,
};
pub use rep::{RepVariant, Weight};

#[cfg(test)]
mod table_tests {
    use super::*;
    use crate::diffops::{parse_operator, DiffOperator};
    use crate::exactalg::{rat, Family, GradingScheme, SuperPolynomial};
    use Generator::*;

    fn op(s: &str) -> DiffOperator {
        parse_operator(s).unwrap()
    }

    fn gl_tw() -> RepVariant {
        RepVariant::new(GradingScheme::gl_twisted(4, 1, 1, 3).unwrap())
    }

    #[test]
    fn gl_natural_table() {
        let rep = RepVariant::new(GradingScheme::gl_natural(2, 1).unwrap());
        assert_eq!(rep.generator_operator(&Unit(1, 3)), op("x1*d_th1 - vt1*d_y1"));
        assert_eq!(rep.generator_operator(&Unit(3, 2)), op("th1*d_x2 + y2*d_vt1"));
    }

    #[test]
    fn gl_twisted_tables() {
        let rep = gl_tw();
        let cases = [
            (Unit(1, 1), "-1 - x1*d_x1 - y1*d_y1"),
            (Unit(1, 2), "d_x1*d_x2 - y2*d_y1"),
            (Unit(2, 1), "-x1*x2 - y1*d_y2"),
            (Unit(4, 1), "-x1*x4 + y1*y4"),
            (Unit(1, 4), "d_x1*d_x4 - d_y1*d_y4"),
            (Unit(4, 4), "1 + x4*d_x4 + y4*d_y4"),
            (Unit(1, 5), "d_x1*d_th1 - vt1*d_y1"),
            (Unit(4, 5), "x4*d_th1 + y4*vt1"),
            (Unit(5, 1), "-x1*th1 + y1*d_vt1"),
            (Unit(5, 4), "th1*d_x4 + d_y4*d_vt1"),
            (Unit(5, 5), "th1*d_th1 - vt1*d_vt1"),
        ];
        for (g, expected) in cases {
            assert_eq!(rep.generator_operator(&g), op(expected), "{g:?}");
        }
    }

    #[test]
    fn osp_twisted_tables() {
        let rep = RepVariant::new(GradingScheme::osp_even_twisted(4, 1, 1, 3).unwrap());
        assert_eq!(rep.generator_operator(&Axy(1, 4)), op("-y4*d_x1 - x4*d_y1"));
        assert_eq!(rep.generator_operator(&Oyt(4, 1)), op("d_y4*d_th1 - vt1*d_x4"));
        let odd = RepVariant::new(GradingScheme::osp_odd_twisted(4, 1, 1, 3).unwrap());
        assert_eq!(odd.generator_operator(&Zx(1)), op("-x0*x1 - y1*d_x0"));
        assert_eq!(odd.generator_operator(&Zy(4)), op("-x0*y4 - x4*d_x0"));
        assert_eq!(odd.generator_operator(&Zy(1)), op("x0*d_y1 - d_x1*d_x0"));
        assert_eq!(odd.generator_operator(&Zv(1)), op("x0*d_vt1 + th1*d_x0"));
    }

    #[test]
    fn osp_tables_are_unit_maps() {
        for s in [GradingScheme::osp_even_natural(2, 2).unwrap(), GradingScheme::osp_odd_natural(2, 2).unwrap()] {
            let rep = RepVariant::new(s);
            let alg = rep.algebra();
            let (n, m) = (s.n() as usize, s.m() as usize);
            let z = |a: usize| {
                use crate::exactalg::Variable::*;
                if a == 0 {
                    X0
                } else if a <= n {
                    X(a as u16)
                } else if a <= 2 * n {
                    Y((a - n) as u16)
                } else if a <= 2 * n + m {
                    Theta((a - 2 * n) as u16)
                } else {
                    VarTheta((a - 2 * n - m) as u16)
                }
            };
            for g in alg.basis() {
                let mut expected = DiffOperator::zero();
                for ((a, b), c) in alg.units(&g) {
                    expected.add_scaled(&DiffOperator::z_d(z(a), z(b)), &rat(c));
                }
                assert_eq!(rep.generator_operator(&g), expected, "{g:?}");
            }
        }
    }

    #[test]
    fn element_mismatch_is_an_error() {
        let rep = RepVariant::new(GradingScheme::gl_natural(2, 1).unwrap());
        let other = SuperAlgebra::new(Family::Gl, 2, 2);
        assert!(rep.rep_operator(&other.element(&Unit(1, 2))).is_err());
    }

    #[test]
    fn weights() {
        let rep = RepVariant::new(GradingScheme::gl_natural(2, 3).unwrap());
        let p = |s: &str| crate::exactalg::parse_polynomial(s).unwrap();
        assert_eq!(rep.weight_of(&p("x1^3")).unwrap().0, [3, 0, 0, 0, 0].map(rat).to_vec());
        assert_eq!(rep.weight_of(&p("th1*th2*vt2*vt3")).unwrap().0, [0, 0, 1, 0, -1].map(rat).to_vec());
        assert!(RepVariant::new(GradingScheme::gl_natural(2, 1).unwrap()).weight_of(&p("x1 + th1")).is_none());
        let tw = gl_tw();
        for s in ["x1^2*y4*th1", "y1*x4^3*vt1", "1"] {
            let v = p(s);
            assert_eq!(tw.weight_of(&v).unwrap(), tw.monomial_weight(v.leading().unwrap().0));
        }
        assert!(tw.weight_of(&SuperPolynomial::zero()).is_none());
    }
}
