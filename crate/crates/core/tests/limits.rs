use superharm::error::Error;
use superharm::exactalg::{enumerate_slice, GradeLabel, GradingScheme};
use superharm::harmonic::{harmonic_kernel, max_cells, set_max_cells, weight_space};
use superharm::superrep::RepVariant;

// Global limit; kept in its own test binary.
#[test]
fn max_cells_is_an_error_not_a_truncation() {
    let s = GradingScheme::gl_natural(2, 3).unwrap();
    let slice = enumerate_slice(&s, GradeLabel::Pair(3, 3), None).unwrap();
    set_max_cells(Some(slice.dim() - 1));
    assert_eq!(max_cells(), Some(slice.dim() - 1));
    assert!(matches!(harmonic_kernel(&slice), Err(Error::TooLarge { .. })));

    let tw = GradingScheme::gl_twisted(4, 1, 1, 3).unwrap();
    let rep = RepVariant::new(tw);
    let sl = enumerate_slice(&tw, GradeLabel::Pair(0, 0), Some(6)).unwrap();
    let w = sl.basis.iter().map(|m| rep.monomial_weight(m)).max_by_key(|w| {
        weight_space(&tw, GradeLabel::Pair(0, 0), w).map(|b| b.len()).unwrap_or(usize::MAX)
    });
    set_max_cells(Some(2));
    let big = w.unwrap();
    let r = weight_space(&tw, GradeLabel::Pair(0, 0), &big);
    assert!(matches!(r, Err(Error::TooLarge { .. })) || r.unwrap().len() <= 2);

    set_max_cells(None);
    assert_eq!(max_cells(), None);
    assert_eq!(harmonic_kernel(&slice).unwrap().dim(), harmonic_kernel(&slice).unwrap().vectors.len());
}
