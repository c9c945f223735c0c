//! Dense primal simplex on a condensed (Tucker) tableau.
//!
//! Solves `max cᵀx  s.t.  Ax ≤ b, x ≥ 0` with `b ≥ 0`, so the slack basis is
//! feasible from the start and no phase one is needed. The tableau holds only
//! the nonbasic columns: `m + 1` rows by `n + 1` columns.
//!
//! Pricing is Dantzig's most-negative reduced cost; after a run of
//! degenerate pivots it switches to Bland's smallest-label rule, which cannot
//! cycle, and switches back once the objective moves again.

use crate::error::{Error, Result};

const PIVOT_EPS: f64 = 1e-9;
const DEGENERATE_RUN: usize = 50;
/// Reduced-cost optimality tolerance.
pub const OPTIMALITY_TOL: f64 = 1e-10;
const MAX_ITERATIONS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LpStatus {
    Optimal,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpOutcome {
    pub status: LpStatus,
    pub objective: f64,
    pub x: Vec<f64>,
    pub iterations: usize,
}

pub fn maximize(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> Result<LpOutcome> {
    let n = c.len();
    let m = a.len();
    if b.len() != m {
        return Err(Error::LengthMismatch {
            expected: m,
            actual: b.len(),
        });
    }
    if let Some(row) = a.iter().find(|r| r.len() != n) {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: row.len(),
        });
    }
    if let Some(v) = b.iter().find(|v| v.is_nan() || **v < 0.0) {
        return Err(Error::Lp(format!(
            "right-hand side {v} must be non-negative"
        )));
    }
    let width = n + 1;
    let mut t = vec![0.0; (m + 1) * width];
    for i in 0..m {
        t[i * width..i * width + n].copy_from_slice(&a[i]);
        t[i * width + n] = b[i];
    }
    for j in 0..n {
        t[m * width + j] = -c[j];
    }
    // variable labels: 0..n originals, n..n+m slacks
    let mut col_label: Vec<usize> = (0..n).collect();
    let mut row_label: Vec<usize> = (n..n + m).collect();

    let mut iterations = 0;
    let mut degenerate = 0;
    loop {
        let improving = (0..n).filter(|&j| t[m * width + j] < -OPTIMALITY_TOL);
        let entering = if degenerate >= DEGENERATE_RUN {
            improving.min_by_key(|&j| col_label[j])
        } else {
            improving.min_by(|&x, &y| {
                t[m * width + x]
                    .total_cmp(&t[m * width + y])
                    .then(col_label[x].cmp(&col_label[y]))
            })
        };
        let Some(s) = entering else { break };

        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            let a_is = t[i * width + s];
            if a_is > PIVOT_EPS {
                // round-off can leave a basic value a hair below zero
                let ratio = t[i * width + n].max(0.0) / a_is;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((r, best)) => {
                        if ratio < best || (ratio == best && row_label[i] < row_label[r]) {
                            Some((i, ratio))
                        } else {
                            Some((r, best))
                        }
                    }
                };
            }
        }
        let Some((r, step)) = leave else {
            return Ok(LpOutcome {
                status: LpStatus::Unbounded,
                objective: f64::INFINITY,
                x: vec![0.0; n],
                iterations,
            });
        };

        if step > 0.0 {
            degenerate = 0;
        } else {
            degenerate += 1;
        }
        pivot(&mut t, width, m, r, s);
        std::mem::swap(&mut col_label[s], &mut row_label[r]);
        iterations += 1;
        if iterations > MAX_ITERATIONS {
            return Err(Error::Lp(format!(
                "no convergence after {MAX_ITERATIONS} pivots"
            )));
        }
    }

    let mut x = vec![0.0; n];
    for i in 0..m {
        if row_label[i] < n {
            x[row_label[i]] = t[i * width + n];
        }
    }
    Ok(LpOutcome {
        status: LpStatus::Optimal,
        objective: t[m * width + n],
        x,
        iterations,
    })
}

/// Jordan exchange of basic row `r` with nonbasic column `s`.
fn pivot(t: &mut [f64], width: usize, m: usize, r: usize, s: usize) {
    let p = t[r * width + s];
    let pivot_row: Vec<f64> = t[r * width..(r + 1) * width].to_vec();
    for i in 0..=m {
        if i == r {
            continue;
        }
        let f = t[i * width + s];
        if f == 0.0 {
            continue;
        }
        let row = &mut t[i * width..(i + 1) * width];
        for j in 0..width {
            if j != s {
                row[j] -= f * pivot_row[j] / p;
            }
        }
        row[s] = -f / p;
    }
    let row = &mut t[r * width..(r + 1) * width];
    for j in 0..width {
        row[j] = if j == s { 1.0 / p } else { pivot_row[j] / p };
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_problem() {
        // max 3x + 5y, x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18  ->  36 at (2, 6)
        let out = maximize(
            &[3.0, 5.0],
            &[vec![1.0, 0.0], vec![0.0, 2.0], vec![3.0, 2.0]],
            &[4.0, 12.0, 18.0],
        )
        .unwrap();
        assert_eq!(out.status, LpStatus::Optimal);
        assert!((out.objective - 36.0).abs() < 1e-12);
        assert!((out.x[0] - 2.0).abs() < 1e-12 && (out.x[1] - 6.0).abs() < 1e-12);
    }

    #[test]
    fn unbounded_detected() {
        let out = maximize(&[1.0, 1.0], &[vec![1.0, -1.0]], &[1.0]).unwrap();
        assert_eq!(out.status, LpStatus::Unbounded);
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's example, which cycles under the largest-coefficient rule.
        let out = maximize(
            &[0.75, -150.0, 0.02, -6.0],
            &[
                vec![0.25, -60.0, -0.04, 9.0],
                vec![0.5, -90.0, -0.02, 3.0],
                vec![0.0, 0.0, 1.0, 0.0],
            ],
            &[0.0, 0.0, 1.0],
        )
        .unwrap();
        assert_eq!(out.status, LpStatus::Optimal);
        assert!((out.objective - 0.05).abs() < 1e-12);
    }

    #[test]
    fn rejects_negative_rhs_and_bad_shapes() {
        assert!(maximize(&[1.0], &[vec![1.0]], &[-1.0]).is_err());
        assert!(maximize(&[1.0], &[vec![1.0, 2.0]], &[1.0]).is_err());
        assert!(maximize(&[1.0], &[vec![1.0]], &[]).is_err());
    }
}
