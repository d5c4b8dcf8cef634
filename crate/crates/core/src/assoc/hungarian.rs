//! Minimum-cost assignment of rows to distinct columns (rows ≤ columns).

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Assignment {
    /// Column chosen for each row.
    pub columns: Vec<usize>,
    pub total: f64,
}

/// Shortest-augmenting-path Hungarian method with row/column potentials, O(n²m).
///
/// Ties are resolved deterministically: the scan always keeps the first
/// column with the strictly smallest reduced cost.
pub fn hungarian_assign(cost: &[Vec<f64>]) -> Result<Assignment> {
    let n = cost.len();
    if n == 0 {
        return Ok(Assignment {
            columns: Vec::new(),
            total: 0.0,
        });
    }
    let m = cost[0].len();
    if cost.iter().any(|r| r.len() != m) {
        return Err(Error::InvalidInput("cost matrix rows differ in length".into()));
    }
    if m < n {
        return Err(Error::InvalidInput(format!("{n} rows cannot be matched to {m} columns")));
    }
    if cost.iter().flatten().any(|c| !c.is_finite()) {
        return Err(Error::InvalidInput("non-finite cost".into()));
    }

    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; m + 1];
    // p[j]: row matched to column j (1-based, 0 = free)
    let mut p = vec![0usize; m + 1];
    let mut way = vec![0usize; m + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; m + 1];
        let mut used = vec![false; m + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=m {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=m {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut columns = vec![0usize; n];
    for j in 1..=m {
        if p[j] != 0 {
            columns[p[j] - 1] = j - 1;
        }
    }
    let total = assignment_cost(cost, &columns);
    Ok(Assignment { columns, total })
}

/// Row-ordered sum of the chosen entries.
pub fn assignment_cost(cost: &[Vec<f64>], columns: &[usize]) -> f64 {
    columns.iter().enumerate().map(|(i, &j)| cost[i][j]).sum()
}
