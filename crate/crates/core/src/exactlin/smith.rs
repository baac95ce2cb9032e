use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Diagonal invariants `d_1 | d_2 | ... | d_r` (all positive) of an integer
/// matrix, where `r` is its rank.
#[allow(clippy::needless_range_loop)]
pub fn smith_invariants(rows: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = rows.len();
    let m = rows.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < n.min(m) {
        // smallest nonzero entry in the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..n {
            for j in t..m {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in (t + 1)..n {
            let q = a[i][t].div_floor(&a[t][t]);
            if !q.is_zero() {
                for j in t..m {
                    let v = &a[t][j] * &q;
                    a[i][j] -= v;
                }
            }
            if !a[i][t].is_zero() {
                clean = false;
            }
        }
        for j in (t + 1)..m {
            let q = a[t][j].div_floor(&a[t][t]);
            if !q.is_zero() {
                for i in t..n {
                    let v = &a[i][t] * &q;
                    a[i][j] -= v;
                }
            }
            if !a[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // pivot must divide the whole trailing block
        let bad = ((t + 1)..n)
            .flat_map(|i| ((t + 1)..m).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_multiple_of(&a[t][t]));
        if let Some((i, _)) = bad {
            for j in t..m {
                let v = a[i][j].clone();
                a[t][j] += v;
            }
            continue;
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// Describes `Z^ambient / rowspan(rows)` as `(torsion invariants > 1, free rank)`.
pub fn quotient_structure(ambient: usize, rows: &[Vec<BigInt>]) -> (Vec<BigInt>, usize) {
    let inv = smith_invariants(rows);
    let free = ambient - inv.len();
    (inv.into_iter().filter(|d| !d.is_one()).collect(), free)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn classic_example() {
        let inv = smith_invariants(&mat(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(inv, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    }

    #[test]
    fn divisibility_fixup() {
        let inv = smith_invariants(&mat(&[&[2, 0], &[0, 3]]));
        assert_eq!(inv, vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn quotients() {
        assert_eq!(quotient_structure(2, &mat(&[&[1, -1]])), (vec![], 1));
        assert_eq!(quotient_structure(3, &[]), (vec![], 3));
        assert_eq!(quotient_structure(1, &mat(&[&[4]])), (vec![BigInt::from(4)], 0));
    }
}
