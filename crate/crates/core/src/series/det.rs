use std::collections::HashMap;

use crate::error::{Error, Result};

use super::{BiSeries, Truncated};

/// Determinant of a square array of series by Laplace expansion over
/// column subsets (no division, so it is exact in the truncated ring).
pub fn det_series(m: &[Vec<BiSeries>]) -> Result<BiSeries> {
    let rows = m.len();
    if rows == 0 {
        return Err(Error::NotSquare { rows: 0, cols: 0 });
    }
    for r in m {
        if r.len() != rows {
            return Err(Error::NotSquare { rows, cols: r.len() });
        }
    }
    let arity = m[0][0].arity();
    for e in m.iter().flatten() {
        if e.arity() != arity {
            return Err(Error::ArityMismatch {
                left: arity,
                right: e.arity(),
            });
        }
    }
    // dp[mask] = det of rows 0..popcount(mask) against the columns in mask
    let mut dp: HashMap<u32, BiSeries> = HashMap::new();
    dp.insert(0, m[0][0].one_like());
    for row in 0..rows {
        let mut next = HashMap::new();
        for (mask, minor) in &dp {
            for col in 0..rows {
                if mask & (1 << col) != 0 {
                    continue;
                }
                // sign = (−1)^{number of chosen columns greater than col}
                let above = (mask >> (col + 1)).count_ones();
                let term = &m[row][col] * minor;
                let term = if above % 2 == 1 { -term } else { term };
                let key = mask | (1 << col);
                next.entry(key)
                    .and_modify(|acc: &mut BiSeries| *acc = &*acc + &term)
                    .or_insert(term);
            }
        }
        dp = next;
    }
    Ok(dp.remove(&((1u32 << rows) - 1)).expect("full mask present"))
}
