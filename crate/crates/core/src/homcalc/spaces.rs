use crate::error::{Error, Result};
use crate::exactlin::{Mat, Scalar};
use crate::quiverrep::{euler_form, Rep, RepMorphism};

/// The map `(f_v) -> (N_a f_i - f_j M_a)` from `(+)_v Hom(M_v, N_v)` to
/// `(+)_{a: i -> j} Hom(M_i, N_j)`, in row-major vectorized coordinates.
/// Its kernel is `Hom(M, N)` and its cokernel is `Ext(M, N)`.
pub fn difference_map(m: &Rep, n: &Rep) -> Result<Mat> {
    m.check_compatible(n)?;
    let q = m.quiver();
    let f = m.field();
    let vdims: Vec<usize> = (0..q.vertex_count()).map(|v| n.dim(v) * m.dim(v)).collect();
    let adims: Vec<usize> = q.arrows().iter().map(|&(i, j)| n.dim(j) * m.dim(i)).collect();
    let voff = offsets(&vdims);
    let aoff = offsets(&adims);
    let mut d = Mat::zeros(f, adims.iter().sum(), vdims.iter().sum());
    for (a, &(i, j)) in q.arrows().iter().enumerate() {
        let left = n.map(a).kron(&Mat::identity(f, m.dim(i)));
        let right = Mat::identity(f, n.dim(j)).kron(&m.map(a).transpose()).neg();
        d.paste(aoff[a], voff[i], &left);
        d.paste(aoff[a], voff[j], &right);
    }
    Ok(d)
}

fn offsets(sizes: &[usize]) -> Vec<usize> {
    let mut acc = 0;
    sizes
        .iter()
        .map(|s| {
            let o = acc;
            acc += s;
            o
        })
        .collect()
}

/// `Hom(M, N)` with an explicit basis.
#[derive(Clone, Debug)]
pub struct HomSpace {
    source: Rep,
    target: Rep,
    basis: Vec<RepMorphism>,
    /// Basis vectors as columns, in vectorized coordinates.
    coords: Mat,
}

impl HomSpace {
    pub fn source(&self) -> &Rep {
        &self.source
    }

    pub fn target(&self) -> &Rep {
        &self.target
    }

    pub fn basis(&self) -> &[RepMorphism] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// `sum_k coeffs[k] * basis[k]`.
    pub fn element(&self, coeffs: &[Scalar]) -> RepMorphism {
        let v = self
            .coords
            .mul(&Mat::column(self.source.field(), coeffs.to_vec()))
            .col(0);
        RepMorphism::new_unchecked(
            self.source.clone(),
            self.target.clone(),
            unflatten(&self.source, &self.target, &v),
        )
    }

    /// Coordinates of `f` in the basis; `None` if `f` does not lie in the space.
    pub fn coordinates(&self, f: &RepMorphism) -> Option<Vec<Scalar>> {
        let v = Mat::column(self.source.field(), flatten(f.maps()));
        self.coords.solve(&v).ok().flatten().map(|x| x.col(0))
    }
}

pub(crate) fn flatten(maps: &[Mat]) -> Vec<Scalar> {
    maps.iter().flat_map(|m| m.vectorize()).collect()
}

fn unflatten(m: &Rep, n: &Rep, v: &[Scalar]) -> Vec<Mat> {
    let mut off = 0;
    (0..m.dims().len())
        .map(|w| {
            let (r, c) = (n.dim(w), m.dim(w));
            let x = Mat::unvectorize(m.field(), r, c, &v[off..off + r * c]);
            off += r * c;
            x
        })
        .collect()
}

pub fn hom_space(m: &Rep, n: &Rep) -> Result<HomSpace> {
    let d = difference_map(m, n)?;
    let coords = d.kernel_basis();
    let basis = (0..coords.cols())
        .map(|k| RepMorphism::new_unchecked(m.clone(), n.clone(), unflatten(m, n, &coords.col(k))))
        .collect();
    Ok(HomSpace {
        source: m.clone(),
        target: n.clone(),
        basis,
        coords,
    })
}

/// `Ext(M, N)` as the cokernel of the difference map. Cocycles are tuples of
/// matrices `Hom(M_i, N_j)`, one per arrow `a: i -> j`.
#[derive(Clone, Debug)]
pub struct ExtSpace {
    source: Rep,
    target: Rep,
    cocycle_basis: Vec<Vec<Mat>>,
    /// Sends a flattened cocycle to its class coordinates.
    class_map: Mat,
}

impl ExtSpace {
    pub fn source(&self) -> &Rep {
        &self.source
    }

    pub fn target(&self) -> &Rep {
        &self.target
    }

    pub fn dim(&self) -> usize {
        self.cocycle_basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.cocycle_basis.is_empty()
    }

    /// Representatives whose classes form a basis; they are standard basis
    /// vectors outside the pivot positions of the coboundaries.
    pub fn cocycle_basis(&self) -> &[Vec<Mat>] {
        &self.cocycle_basis
    }

    /// The representative `sum_k coeffs[k] * cocycle_basis[k]`.
    pub fn cocycle(&self, coeffs: &[Scalar]) -> Vec<Mat> {
        let f = self.source.field();
        let q = self.source.quiver();
        q.arrows()
            .iter()
            .enumerate()
            .map(|(a, &(i, j))| {
                let zero = Mat::zeros(f, self.target.dim(j), self.source.dim(i));
                coeffs
                    .iter()
                    .zip(&self.cocycle_basis)
                    .fold(zero, |acc, (c, b)| acc.add(&b[a].scale(c)))
            })
            .collect()
    }

    /// Coordinates of the class of a cocycle.
    pub fn class_of(&self, cocycle: &[Mat]) -> Result<Vec<Scalar>> {
        let q = self.source.quiver();
        if cocycle.len() != q.arrow_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} cocycle components for {} arrows",
                cocycle.len(),
                q.arrow_count()
            )));
        }
        for (a, &(i, j)) in q.arrows().iter().enumerate() {
            if cocycle[a].shape() != (self.target.dim(j), self.source.dim(i)) {
                return Err(Error::ArrowShape {
                    arrow: a,
                    expected_rows: self.target.dim(j),
                    expected_cols: self.source.dim(i),
                    rows: cocycle[a].rows(),
                    cols: cocycle[a].cols(),
                });
            }
        }
        let v = Mat::column(self.source.field(), flatten(cocycle));
        Ok(self.class_map.mul(&v).col(0))
    }
}

pub fn ext_space(m: &Rep, n: &Rep) -> Result<ExtSpace> {
    let d = difference_map(m, n)?;
    let quot = d.quotient();
    let q = m.quiver();
    let sizes: Vec<(usize, usize)> = q.arrows().iter().map(|&(i, j)| (n.dim(j), m.dim(i))).collect();
    let cocycle_basis = (0..quot.section.cols())
        .map(|k| {
            let col = quot.section.col(k);
            let mut off = 0;
            sizes
                .iter()
                .map(|&(r, c)| {
                    let x = Mat::unvectorize(m.field(), r, c, &col[off..off + r * c]);
                    off += r * c;
                    x
                })
                .collect()
        })
        .collect();
    Ok(ExtSpace {
        source: m.clone(),
        target: n.clone(),
        cocycle_basis,
        class_map: quot.map,
    })
}

/// `dim Hom(M, N) - dim Ext(M, N)`, computed from the two spaces.
pub fn hom_minus_ext(m: &Rep, n: &Rep) -> Result<i64> {
    let d = difference_map(m, n)?;
    let r = d.rank();
    Ok((d.cols() - r) as i64 - (d.rows() - r) as i64)
}

/// The Euler form of the dimension vectors of `m` and `n`.
pub fn euler_of(m: &Rep, n: &Rep) -> Result<i64> {
    euler_form(m.quiver(), &m.dimension_vector(), &n.dimension_vector())
}
