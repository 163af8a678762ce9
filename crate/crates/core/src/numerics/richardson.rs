//! Richardson extrapolation of sequences y(h) -> y(0).

use crate::approx::Approx;
use crate::error::{Error, Result};
use crate::real::Real;

/// Extrapolates samples `(h_i, y_i)` to `h = 0` with a Neville tableau whose
/// column depth is capped at `order`.
///
/// The samples must come in strictly decreasing `h`. The budget is the spread
/// of the final tableau entries; if the last column steps stop contracting
/// the extrapolation is reported as diverged.
pub fn richardson_limit(samples: &[(Real, Real)], order: usize) -> Result<Approx> {
    if samples.len() < 2 {
        return Err(Error::InvalidConfig("need at least two samples".into()));
    }
    let order = order.min(samples.len() - 1);
    let n = samples.len();

    // rows[i] holds the current Neville column values for sample i.
    let mut tableau: Vec<Vec<Real>> = Vec::with_capacity(n);
    for (i, (h_i, y_i)) in samples.iter().enumerate() {
        if i > 0 && !(h_i < &samples[i - 1].0) {
            return Err(Error::InvalidConfig("h must be strictly decreasing".into()));
        }
        let mut row = vec![y_i.clone()];
        for j in 1..=order.min(i) {
            let h_lo = &samples[i - j].0;
            // P_{i,j}(0) = (h_i * P_{i-1,j-1} - h_{i-j} * P_{i,j-1}) / (h_i - h_{i-j})
            let num = &(h_i * &tableau[i - 1][j - 1]) - &(h_lo * &row[j - 1]);
            let den = h_i - h_lo;
            row.push(&num / &den);
        }
        tableau.push(row);
    }

    let last = &tableau[n - 1];
    let best = last.last().expect("non-empty row").clone();
    let prev_same_col = &tableau[n - 2];
    let step_down = if prev_same_col.len() >= last.len() {
        (&prev_same_col[last.len() - 1] - &best).to_f64().abs()
    } else {
        (prev_same_col.last().expect("non-empty") - &best).to_f64().abs()
    };
    let step_across = if last.len() >= 2 {
        (&last[last.len() - 2] - &best).to_f64().abs()
    } else {
        step_down
    };

    // Divergence: the deepest column moved further than the shallow one.
    if step_across > 0.0 && step_down > 1e6 * (step_across + best.to_f64().abs() * best.eps()) {
        return Err(Error::ExtrapolationDiverged);
    }
    Approx::new(best, step_down.max(step_across))
}
