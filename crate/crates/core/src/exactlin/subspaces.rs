//! Enumeration of subspaces of `F_p^n` through their reduced row-echelon bases.

use crate::error::{Error, Result};
use crate::exactlin::{FieldSpec, Mat, Scalar};

/// Every subspace of `F_p^n`, each as an `n x k` matrix of basis columns.
///
/// Subspaces are produced by dimension, then by pivot set in lexicographic
/// order, then by the free entries counted in base `p`. Fails once more than
/// `budget` subspaces would be produced.
pub fn all_subspaces(field: FieldSpec, n: usize, budget: usize) -> Result<Vec<Mat>> {
    let FieldSpec::Prime(p) = field else {
        return Err(Error::UnsupportedField {
            op: "subspace enumeration",
        });
    };
    let mut out = Vec::new();
    for k in 0..=n {
        for pivots in combinations(n, k) {
            // free positions: (row, col) with col > pivot[row] and col not a pivot
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|r| {
                    let pv = &pivots;
                    ((pv[r] + 1)..n).filter(move |c| !pv.contains(c)).map(move |c| (r, c))
                })
                .collect();
            let mut counter = vec![0u32; free.len()];
            loop {
                if out.len() >= budget {
                    return Err(Error::BudgetExceeded {
                        op: "subspace enumeration",
                        budget,
                    });
                }
                let mut rows = Mat::zeros(field, k, n);
                for (r, &c) in pivots.iter().enumerate() {
                    rows.set(r, c, field.one());
                }
                for (&(r, c), &v) in free.iter().zip(&counter) {
                    rows.set(r, c, Scalar::Mod(v));
                }
                out.push(rows.transpose());
                if !increment(&mut counter, p) {
                    break;
                }
            }
        }
    }
    Ok(out)
}

fn increment(counter: &mut [u32], base: u32) -> bool {
    for d in counter.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every vector of `F_p^n` in base-`p` counting order, or a budget error.
pub fn all_vectors(field: FieldSpec, n: usize, budget: usize) -> Result<Vec<Vec<Scalar>>> {
    let FieldSpec::Prime(p) = field else {
        return Err(Error::UnsupportedField {
            op: "vector enumeration",
        });
    };
    let count = (p as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if count > budget as u128 {
        return Err(Error::BudgetExceeded {
            op: "vector enumeration",
            budget,
        });
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut counter = vec![0u32; n];
    loop {
        out.push(counter.iter().map(|&v| Scalar::Mod(v)).collect());
        if !increment(&mut counter, p) {
            break;
        }
    }
    Ok(out)
}

/// Nonzero vectors whose first nonzero coordinate is 1: one per line.
pub fn projective_points(field: FieldSpec, n: usize, budget: usize) -> Result<Vec<Vec<Scalar>>> {
    Ok(all_vectors(field, n, budget)?
        .into_iter()
        .filter(|v| v.iter().find(|s| !field.is_zero(s)).is_some_and(|s| field.is_one(s)))
        .collect())
}
