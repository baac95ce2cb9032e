//! Finite-dimensional associative algebras given by structure constants.

use crate::error::{Error, Result};
use crate::exactlin::{FieldSpec, Mat, Scalar};

/// An algebra with basis `b_0..b_{n-1}` and `b_i * b_j = sum_k table[i][j][k] b_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    field: FieldSpec,
    dim: usize,
    table: Vec<Vec<Vec<Scalar>>>,
}

impl FiniteAlgebra {
    pub fn new(field: FieldSpec, dim: usize, table: Vec<Vec<Vec<Scalar>>>) -> Result<Self> {
        let ok = table.len() == dim
            && table.iter().all(|row| {
                row.len() == dim
                    && row
                        .iter()
                        .all(|v| v.len() == dim && v.iter().all(|s| field.contains(s)))
            });
        if !ok {
            return Err(Error::DimensionMismatch(format!(
                "structure constants do not describe a {dim}-dimensional algebra"
            )));
        }
        Ok(FiniteAlgebra { field, dim, table })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure_constants(&self) -> &[Vec<Vec<Scalar>>] {
        &self.table
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        (0..self.dim)
            .map(|k| if k == i { self.field.one() } else { self.field.zero() })
            .collect()
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let f = self.field;
        let mut out = vec![f.zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (k, t) in self.table[i][j].iter().enumerate() {
                    if !f.is_zero(t) {
                        out[k] = f.add(&out[k], &f.mul(&c, t));
                    }
                }
            }
        }
        out
    }

    /// Matrix of `y -> x * y` on the basis.
    pub fn left_regular(&self, x: &[Scalar]) -> Mat {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|j| self.mul(x, &self.basis_vector(j))).collect();
        Mat::from_fn(self.field, self.dim, self.dim, |i, j| cols[j][i].clone())
    }

    pub fn is_associative(&self) -> bool {
        let b: Vec<Vec<Scalar>> = (0..self.dim).map(|i| self.basis_vector(i)).collect();
        for x in &b {
            for y in &b {
                let xy = self.mul(x, y);
                for z in &b {
                    if self.mul(&xy, z) != self.mul(x, &self.mul(y, z)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The two-sided identity, when one exists.
    pub fn identity(&self) -> Option<Vec<Scalar>> {
        // e * b_j = b_j for all j: stack the left-regular columns as a linear system in e
        let f = self.field;
        let n = self.dim;
        let mut sys = Mat::zeros(f, n * n, n);
        let mut rhs = Mat::zeros(f, n * n, 1);
        for j in 0..n {
            for k in 0..n {
                for i in 0..n {
                    sys.set(j * n + k, i, self.table[i][j][k].clone());
                }
                if j == k {
                    rhs.set(j * n + k, 0, f.one());
                }
            }
        }
        let e = sys.solve(&rhs).ok()??.col(0);
        let is_right_identity = (0..n).all(|j| self.mul(&self.basis_vector(j), &e) == self.basis_vector(j));
        is_right_identity.then_some(e)
    }

    pub fn center_dim(&self) -> usize {
        let f = self.field;
        let n = self.dim;
        // x commutes with every b_j: sum_i x_i (c_ij - c_ji) = 0
        let mut sys = Mat::zeros(f, n * n, n);
        for j in 0..n {
            for k in 0..n {
                for i in 0..n {
                    sys.set(j * n + k, i, f.sub(&self.table[i][j][k], &self.table[j][i][k]));
                }
            }
        }
        sys.kernel_basis().cols()
    }

    /// Basis (as columns) of the Jacobson radical.
    ///
    /// In characteristic zero this is the radical of the trace form of the
    /// regular representation. Over `F_p` the trace form alone is too coarse, and
    /// the radical is cut out by the chain of lifted trace functionals
    /// `a -> Tr(lift(L_a)^(p^i)) / p^i mod p` for `p^i <= dim`.
    pub fn radical_basis(&self) -> Mat {
        let f = self.field;
        let n = self.dim;
        if n == 0 {
            return Mat::zeros(f, 0, 0);
        }
        let basis: Vec<Vec<Scalar>> = (0..n).map(|i| self.basis_vector(i)).collect();
        match f {
            FieldSpec::Rationals => {
                let gram = Mat::from_fn(f, n, n, |j, i| {
                    trace(&self.left_regular(&self.mul(&basis[i], &basis[j])))
                });
                gram.kernel_basis()
            }
            FieldSpec::Prime(p) => {
                let mut current = Mat::identity(f, n);
                let mut level = 0u32;
                let mut pk: u64 = 1;
                loop {
                    if current.cols() == 0 {
                        return current;
                    }
                    let cols: Vec<Vec<Scalar>> = (0..current.cols()).map(|c| current.col(c)).collect();
                    let cond = Mat::from_fn(f, n, cols.len(), |j, c| {
                        let prod = self.mul(&cols[c], &basis[j]);
                        lifted_trace_digit(&self.left_regular(&prod), p, level)
                    });
                    current = current.mul(&cond.kernel_basis());
                    pk *= p as u64;
                    level += 1;
                    if pk > n as u64 {
                        return current;
                    }
                }
            }
        }
    }

    pub fn radical_dim(&self) -> usize {
        self.radical_basis().cols()
    }
}

fn trace(m: &Mat) -> Scalar {
    let f = m.field();
    (0..m.rows()).fold(f.zero(), |acc, i| f.add(&acc, m.get(i, i)))
}

/// `(Tr(lift(m)^(p^level)) mod p^(level+1)) / p^level`, as an element of `F_p`.
fn lifted_trace_digit(m: &Mat, p: u32, level: u32) -> Scalar {
    let modulus = (p as u128).pow(level + 1);
    let n = m.rows();
    let lift: Vec<Vec<u128>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match m.get(i, j) {
                    Scalar::Mod(v) => *v as u128,
                    Scalar::Rat(_) => unreachable!("prime field"),
                })
                .collect()
        })
        .collect();
    let mut acc = identity_u128(n);
    let mut base = lift;
    let mut e = (p as u64).pow(level);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &base, modulus);
        }
        base = mul_mod(&base, &base, modulus);
        e >>= 1;
    }
    let tr = (0..n).fold(0u128, |t, i| (t + acc[i][i]) % modulus);
    let digit = tr / (p as u128).pow(level);
    Scalar::Mod(digit as u32)
}

fn identity_u128(n: usize) -> Vec<Vec<u128>> {
    (0..n).map(|i| (0..n).map(|j| u128::from(i == j)).collect()).collect()
}

fn mul_mod(a: &[Vec<u128>], b: &[Vec<u128>], m: u128) -> Vec<Vec<u128>> {
    let n = a.len();
    let mut out = vec![vec![0u128; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] = (out[i][j] + a[i][k] * b[k][j]) % m;
            }
        }
    }
    out
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::exactlin::subspaces::all_vectors;

    /// Structure constants of the subalgebra of `M_n` spanned by products of `gens`.
    fn matrix_algebra(gens: &[Mat]) -> FiniteAlgebra {
        let f = gens[0].field();
        let n = gens[0].rows();
        let mut span: Vec<Mat> = Vec::new();
        let flat = |ms: &[Mat]| -> Mat {
            Mat::hconcat(
                f,
                n * n,
                &ms.iter().map(|m| Mat::column(f, m.vectorize())).collect::<Vec<_>>(),
            )
        };
        let mut queue: Vec<Mat> = vec![Mat::identity(f, n)];
        queue.extend(gens.iter().cloned());
        while let Some(m) = queue.pop() {
            let mut cand = span.clone();
            cand.push(m.clone());
            if flat(&cand).rank() > span.len() {
                span.push(m.clone());
                for g in gens {
                    queue.push(m.mul(g));
                    queue.push(g.mul(&m));
                }
            }
        }
        let basis = flat(&span);
        let dim = span.len();
        let table = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        let prod = Mat::column(f, span[i].mul(&span[j]).vectorize());
                        basis.solve(&prod).unwrap().unwrap().col(0)
                    })
                    .collect()
            })
            .collect();
        FiniteAlgebra::new(f, dim, table).unwrap()
    }

    /// Radical by definition: x such that x*y is nilpotent for every y.
    fn radical_by_enumeration(a: &FiniteAlgebra) -> usize {
        let elems = all_vectors(a.field(), a.dim(), 1 << 16).unwrap();
        let nilpotent = |x: &Vec<Scalar>| a.left_regular(x).pow(a.dim() as u32).is_zero();
        let members: Vec<&Vec<Scalar>> = elems
            .iter()
            .filter(|x| elems.iter().all(|y| nilpotent(&a.mul(x, y))))
            .collect();
        let m = Mat::hconcat(
            a.field(),
            a.dim(),
            &members
                .iter()
                .map(|v| Mat::column(a.field(), (*v).clone()))
                .collect::<Vec<_>>(),
        );
        m.rank()
    }

    fn unit(f: FieldSpec, n: usize, i: usize, j: usize) -> Mat {
        let mut m = Mat::zeros(f, n, n);
        m.set(i, j, f.one());
        m
    }

    #[test]
    fn full_matrix_algebra_is_semisimple_in_every_characteristic() {
        for p in [2u32, 3] {
            let f = FieldSpec::Prime(p);
            let a = matrix_algebra(&[unit(f, 2, 0, 1), unit(f, 2, 1, 0)]);
            assert_eq!(a.dim(), 4);
            assert_eq!(a.radical_dim(), 0);
            assert_eq!(a.center_dim(), 1);
            assert!(a.is_associative());
            assert!(a.identity().is_some());
        }
        let f = FieldSpec::Prime(3);
        let a = matrix_algebra(&[unit(f, 3, 0, 1), unit(f, 3, 1, 2), unit(f, 3, 2, 0)]);
        assert_eq!(a.dim(), 9);
        assert_eq!(a.radical_dim(), 0);
    }

    #[test]
    fn radical_agrees_with_enumeration() {
        let f2 = FieldSpec::Prime(2);
        let f3 = FieldSpec::Prime(3);
        let cases = vec![
            // upper triangular 2x2
            matrix_algebra(&[unit(f2, 2, 0, 1), unit(f2, 2, 0, 0)]),
            // dual numbers
            matrix_algebra(&[unit(f2, 2, 0, 1)]),
            // F_4 inside M_2(F_2)
            matrix_algebra(&[Mat::from_rows(f2, &[vec![0, 1], vec![1, 1]]).unwrap()]),
            // group algebra of C_2 in characteristic 2
            matrix_algebra(&[Mat::from_rows(f2, &[vec![0, 1], vec![1, 0]]).unwrap()]),
            // group algebra of C_3 in characteristic 3
            matrix_algebra(&[Mat::from_rows(f3, &[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]).unwrap()]),
            // path algebra of 1 -> 2 -> 3 as upper triangular 3x3 over F_3
            matrix_algebra(&[
                unit(f3, 3, 0, 1),
                unit(f3, 3, 1, 2),
                unit(f3, 3, 0, 0),
                unit(f3, 3, 1, 1),
            ]),
            // 2x2 matrices times a nilpotent: M_2(F_2[e]/e^2) restricted to a subalgebra
            matrix_algebra(&[
                unit(f2, 4, 0, 1),
                unit(f2, 4, 1, 0),
                Mat::from_rows(
                    f2,
                    &[vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![0, 0, 0, 0], vec![0, 0, 0, 0]],
                )
                .unwrap(),
            ]),
        ];
        for a in &cases {
            assert_eq!(a.radical_dim(), radical_by_enumeration(a), "algebra of dim {}", a.dim());
        }
    }

    #[test]
    fn rational_radical() {
        let q = FieldSpec::Rationals;
        let a = matrix_algebra(&[unit(q, 2, 0, 1), unit(q, 2, 0, 0)]);
        assert_eq!(a.dim(), 3);
        assert_eq!(a.radical_dim(), 1);
    }
}
