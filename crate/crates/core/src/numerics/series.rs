use crate::error::{Error, Result};

use super::NeumaierSum;

/// Partial sum of a series together with the number of terms it used and the
/// tail bound that certified it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: f64,
    pub terms: usize,
    pub tail_bound: f64,
}

/// Sums `term(0) + term(1) + …` until `tail(N)`, an upper bound on
/// `|Σ_{n ≥ N} term(n)|`, drops to `tol` or below.
///
/// The returned partial sum `S_N` therefore satisfies `|S − S_N| ≤ tol`
/// whenever `tail` is a genuine bound. Fails with
/// [`Error::SeriesNonConvergence`] if `max_terms` terms have been added and
/// the bound is still above `tol`.
pub fn sum_series_with_tail_bound<T, B>(
    mut term: T,
    mut tail: B,
    tol: f64,
    max_terms: usize,
) -> Result<SeriesSum>
where
    T: FnMut(usize) -> f64,
    B: FnMut(usize) -> f64,
{
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter {
            name: "tol",
            value: tol,
            reason: "tolerance must be positive",
        });
    }
    let mut acc = NeumaierSum::new();
    let mut n = 0;
    loop {
        let bound = tail(n);
        if bound <= tol {
            return Ok(SeriesSum {
                value: acc.value(),
                terms: n,
                tail_bound: bound,
            });
        }
        if n >= max_terms {
            return Err(Error::SeriesNonConvergence {
                terms: n,
                tail_bound: bound,
                tol,
            });
        }
        acc.add(term(n));
        n += 1;
    }
}
