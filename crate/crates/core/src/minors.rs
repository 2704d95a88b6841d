//! Minor ideals: the ideal `I_t(M)` generated by all t×t minors of a
//! polynomial matrix, with zero minors dropped.

use crate::field::Field;
use crate::ideal::Ideal;
use crate::matrix::PolyMatrix;

/// The ideal generated by the t×t minors of `m`; `t = 1` is the ideal of
/// entries. Zero minors are dropped (they generate nothing).
pub fn minors_ideal<F: Field>(m: &PolyMatrix<F>, t: usize) -> Ideal<F> {
    assert!(
        t >= 1 && t <= m.nrows().min(m.ncols()),
        "minor size {t} out of range for {}x{}",
        m.nrows(),
        m.ncols()
    );
    Ideal::new(m.ring().clone(), m.minors(t))
}
