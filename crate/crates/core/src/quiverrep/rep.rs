use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::{FieldSpec, Mat, Scalar};
use crate::quiverrep::Quiver;

/// A finite-dimensional representation: a vector space per vertex and a
/// matrix per arrow, acting on column vectors.
#[derive(Clone, Debug)]
pub struct Rep {
    quiver: Arc<Quiver>,
    field: FieldSpec,
    dims: Vec<usize>,
    maps: Vec<Mat>,
}

impl PartialEq for Rep {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.dims == other.dims
            && self.maps == other.maps
            && (Arc::ptr_eq(&self.quiver, &other.quiver) || self.quiver == other.quiver)
    }
}

impl Eq for Rep {}

impl Rep {
    pub fn new(quiver: Arc<Quiver>, field: FieldSpec, dims: Vec<usize>, maps: Vec<Mat>) -> Result<Self> {
        if dims.len() != quiver.vertex_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} dimensions for {} vertices",
                dims.len(),
                quiver.vertex_count()
            )));
        }
        if maps.len() != quiver.arrow_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices for {} arrows",
                maps.len(),
                quiver.arrow_count()
            )));
        }
        for (a, m) in maps.iter().enumerate() {
            let (s, t) = quiver.arrow(a);
            if m.field() != field {
                return Err(Error::FieldMismatch(field, m.field()));
            }
            if m.shape() != (dims[t], dims[s]) {
                return Err(Error::ArrowShape {
                    arrow: a,
                    expected_rows: dims[t],
                    expected_cols: dims[s],
                    rows: m.rows(),
                    cols: m.cols(),
                });
            }
        }
        Ok(Rep {
            quiver,
            field,
            dims,
            maps,
        })
    }

    pub fn zero(quiver: &Arc<Quiver>, field: FieldSpec) -> Self {
        let dims = vec![0; quiver.vertex_count()];
        let maps = quiver.arrows().iter().map(|_| Mat::zeros(field, 0, 0)).collect();
        Rep {
            quiver: quiver.clone(),
            field,
            dims,
            maps,
        }
    }

    /// The simple representation at `v`.
    pub fn simple(quiver: &Arc<Quiver>, field: FieldSpec, v: usize) -> Result<Self> {
        if v >= quiver.vertex_count() {
            return Err(Error::VertexOutOfRange(v));
        }
        let dims: Vec<usize> = (0..quiver.vertex_count()).map(|w| usize::from(w == v)).collect();
        let maps = quiver
            .arrows()
            .iter()
            .map(|&(s, t)| Mat::zeros(field, dims[t], dims[s]))
            .collect();
        Rep::new(quiver.clone(), field, dims, maps)
    }

    /// The indecomposable projective at `v`: basis the paths starting at `v`,
    /// arrows acting by extending paths.
    pub fn projective(quiver: &Arc<Quiver>, field: FieldSpec, v: usize) -> Result<Self> {
        if v >= quiver.vertex_count() {
            return Err(Error::VertexOutOfRange(v));
        }
        let n = quiver.vertex_count();
        let mut at: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
        for p in quiver.paths_from(v) {
            at[quiver.path_end(v, &p)].push(p);
        }
        let dims: Vec<usize> = at.iter().map(Vec::len).collect();
        let maps = (0..quiver.arrow_count())
            .map(|a| {
                let (s, t) = quiver.arrow(a);
                let mut m = Mat::zeros(field, dims[t], dims[s]);
                for (c, p) in at[s].iter().enumerate() {
                    let mut ext = p.clone();
                    ext.push(a);
                    let r = at[t].iter().position(|q| *q == ext).expect("extended path is listed");
                    m.set(r, c, field.one());
                }
                m
            })
            .collect();
        Rep::new(quiver.clone(), field, dims, maps)
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn dimension_vector(&self) -> Vec<i64> {
        self.dims.iter().map(|&d| d as i64).collect()
    }

    pub fn map(&self, a: usize) -> &Mat {
        &self.maps[a]
    }

    pub fn maps(&self) -> &[Mat] {
        &self.maps
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// Errors unless `other` lives on the same quiver over the same field.
    pub fn check_compatible(&self, other: &Rep) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if !(Arc::ptr_eq(&self.quiver, &other.quiver) || self.quiver == other.quiver) {
            return Err(Error::QuiverMismatch);
        }
        Ok(())
    }

    /// Whether every entry of `dims` is at most the matching entry of `bound`.
    pub fn fits_in(&self, bound: &[usize]) -> bool {
        self.dims.iter().zip(bound).all(|(d, b)| d <= b)
    }
}

/// A morphism of representations: one matrix per vertex, commuting with
/// every arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMorphism {
    source: Rep,
    target: Rep,
    maps: Vec<Mat>,
}

impl RepMorphism {
    pub fn new(source: Rep, target: Rep, maps: Vec<Mat>) -> Result<Self> {
        source.check_compatible(&target)?;
        let q = source.quiver().clone();
        if maps.len() != q.vertex_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} vertex maps for {} vertices",
                maps.len(),
                q.vertex_count()
            )));
        }
        for (v, m) in maps.iter().enumerate() {
            if m.field() != source.field() {
                return Err(Error::FieldMismatch(source.field(), m.field()));
            }
            if m.shape() != (target.dim(v), source.dim(v)) {
                return Err(Error::VertexShape {
                    vertex: v,
                    expected_rows: target.dim(v),
                    expected_cols: source.dim(v),
                    rows: m.rows(),
                    cols: m.cols(),
                });
            }
        }
        for (a, &(i, j)) in q.arrows().iter().enumerate() {
            if target.map(a).mul(&maps[i]) != maps[j].mul(source.map(a)) {
                return Err(Error::NotCommuting {
                    arrow: a,
                    source_vertex: i,
                    target_vertex: j,
                });
            }
        }
        Ok(RepMorphism { source, target, maps })
    }

    /// Skips the commuting-square check. Callers construct `maps` so that it
    /// holds by design; debug builds still verify it.
    pub(crate) fn new_unchecked(source: Rep, target: Rep, maps: Vec<Mat>) -> Self {
        debug_assert!(RepMorphism::new(source.clone(), target.clone(), maps.clone()).is_ok());
        RepMorphism { source, target, maps }
    }

    pub fn identity(m: &Rep) -> Self {
        let maps = m.dims().iter().map(|&d| Mat::identity(m.field(), d)).collect();
        RepMorphism {
            source: m.clone(),
            target: m.clone(),
            maps,
        }
    }

    pub fn zero(source: &Rep, target: &Rep) -> Self {
        let maps = (0..source.dims().len())
            .map(|v| Mat::zeros(source.field(), target.dim(v), source.dim(v)))
            .collect();
        RepMorphism {
            source: source.clone(),
            target: target.clone(),
            maps,
        }
    }

    pub fn source(&self) -> &Rep {
        &self.source
    }

    pub fn target(&self) -> &Rep {
        &self.target
    }

    pub fn map(&self, v: usize) -> &Mat {
        &self.maps[v]
    }

    pub fn maps(&self) -> &[Mat] {
        &self.maps
    }

    /// `g.compose(f)` is `g . f`.
    pub fn compose(&self, f: &RepMorphism) -> Result<RepMorphism> {
        if f.target.dims() != self.source.dims() {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose: {:?} vs {:?}",
                f.target.dims(),
                self.source.dims()
            )));
        }
        f.target.check_compatible(&self.source)?;
        let maps = self.maps.iter().zip(&f.maps).map(|(g, f)| g.mul(f)).collect();
        Ok(RepMorphism {
            source: f.source.clone(),
            target: self.target.clone(),
            maps,
        })
    }

    pub fn add(&self, other: &RepMorphism) -> RepMorphism {
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(b)).collect();
        RepMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            maps,
        }
    }

    pub fn sub(&self, other: &RepMorphism) -> RepMorphism {
        self.add(&other.scale(&self.source.field().from_i64(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> RepMorphism {
        RepMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            maps: self.maps.iter().map(|m| m.scale(c)).collect(),
        }
    }

    /// `sum_k coeffs[k] * basis[k]`; the zero morphism when `basis` is empty.
    pub fn combination(source: &Rep, target: &Rep, basis: &[RepMorphism], coeffs: &[Scalar]) -> RepMorphism {
        let f = source.field();
        let mut acc = RepMorphism::zero(source, target);
        for (b, c) in basis.iter().zip(coeffs) {
            if !f.is_zero(c) {
                acc = acc.add(&b.scale(c));
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Mat::is_zero)
    }

    pub fn is_injective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.rows())
    }

    pub fn is_isomorphism(&self) -> bool {
        self.maps.iter().all(|m| m.rows() == m.cols() && m.rank() == m.rows())
    }

    pub fn inverse(&self) -> Option<RepMorphism> {
        let maps = self.maps.iter().map(Mat::inverse).collect::<Option<Vec<_>>>()?;
        Some(RepMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            maps,
        })
    }

    /// Rank of each vertex map.
    pub fn ranks(&self) -> Vec<usize> {
        self.maps.iter().map(Mat::rank).collect()
    }

    /// The same vertex maps, viewed between other (equal-dimensional) representations.
    pub fn retarget(&self, source: &Rep, target: &Rep) -> Result<RepMorphism> {
        RepMorphism::new(source.clone(), target.clone(), self.maps.clone())
    }
}

/// `0 -> A -> B -> C -> 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortExactSeq {
    inclusion: RepMorphism,
    projection: RepMorphism,
}

/// Vertex-wise splitting of a short exact sequence of vector spaces.
#[derive(Clone, Debug)]
pub struct Splitting {
    /// `C_v -> B_v` with `projection * section == I`.
    pub sections: Vec<Mat>,
    /// `B_v -> A_v` with `retraction * inclusion == I` and `retraction * section == 0`.
    pub retractions: Vec<Mat>,
}

impl ShortExactSeq {
    pub fn new(inclusion: RepMorphism, projection: RepMorphism) -> Result<Self> {
        if inclusion.target() != projection.source() {
            return Err(Error::NotExact("middle terms differ".into()));
        }
        if !inclusion.is_injective() {
            return Err(Error::NotExact("first map is not injective".into()));
        }
        if !projection.is_surjective() {
            return Err(Error::NotExact("second map is not surjective".into()));
        }
        for v in 0..inclusion.maps().len() {
            let comp = projection.map(v).mul(inclusion.map(v));
            let b = inclusion.target().dim(v);
            if !comp.is_zero() || inclusion.source().dim(v) + projection.target().dim(v) != b {
                return Err(Error::NotExact(format!("not exact in the middle at vertex {v}")));
            }
        }
        Ok(ShortExactSeq { inclusion, projection })
    }

    pub fn inclusion(&self) -> &RepMorphism {
        &self.inclusion
    }

    pub fn projection(&self) -> &RepMorphism {
        &self.projection
    }

    pub fn sub(&self) -> &Rep {
        self.inclusion.source()
    }

    pub fn middle(&self) -> &Rep {
        self.inclusion.target()
    }

    pub fn quotient(&self) -> &Rep {
        self.projection.target()
    }

    pub fn splitting(&self) -> Splitting {
        let mut sections = Vec::new();
        let mut retractions = Vec::new();
        for v in 0..self.inclusion.maps().len() {
            let p = self.projection.map(v);
            let i = self.inclusion.map(v);
            let c = p.rows();
            let s = p
                .solve(&Mat::identity(p.field(), c))
                .expect("shapes agree")
                .expect("projection is surjective");
            let full = i.hstack(&s);
            let inv = full.inverse().expect("inclusion and section span the middle");
            retractions.push(inv.submatrix(0..i.cols(), 0..full.rows()));
            sections.push(s);
        }
        Splitting { sections, retractions }
    }

    /// The cocycle `e_a = r_j (B_a s_i - s_j C_a)` in `Hom(C_i, A_j)` for each
    /// arrow `a: i -> j`; its class in `Ext(C, A)` classifies the sequence.
    pub fn connecting_cocycle(&self) -> Vec<Mat> {
        let sp = self.splitting();
        let q = self.middle().quiver().clone();
        q.arrows()
            .iter()
            .enumerate()
            .map(|(a, &(i, j))| {
                let lhs = self.middle().map(a).mul(&sp.sections[i]);
                let rhs = sp.sections[j].mul(self.quotient().map(a));
                sp.retractions[j].mul(&lhs.sub(&rhs))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldSpec {
        FieldSpec::Prime(2)
    }

    #[test]
    fn projectives_have_path_dimensions() {
        let a2 = Arc::new(Quiver::linear(2));
        let p1 = Rep::projective(&a2, f2(), 0).unwrap();
        assert_eq!(p1.dims(), &[1, 1]);
        assert!(p1.map(0).is_identity());
        assert_eq!(Rep::projective(&a2, f2(), 1).unwrap().dims(), &[0, 1]);
        let k = Arc::new(Quiver::kronecker());
        let p = Rep::projective(&k, f2(), 0).unwrap();
        assert_eq!(p.dims(), &[1, 2]);
        assert_eq!(p.map(0).hstack(p.map(1)).rank(), 2);
    }

    #[test]
    fn shape_errors_name_the_arrow() {
        let a2 = Arc::new(Quiver::linear(2));
        let err = Rep::new(a2, f2(), vec![1, 1], vec![Mat::zeros(f2(), 2, 1)]).unwrap_err();
        assert!(matches!(err, Error::ArrowShape { arrow: 0, .. }));
    }

    #[test]
    fn morphism_checks_squares() {
        let a2 = Arc::new(Quiver::linear(2));
        let p1 = Rep::projective(&a2, f2(), 0).unwrap();
        let bad = vec![Mat::zeros(f2(), 1, 1), Mat::identity(f2(), 1)];
        let err = RepMorphism::new(p1.clone(), p1.clone(), bad).unwrap_err();
        assert_eq!(
            err,
            Error::NotCommuting {
                arrow: 0,
                source_vertex: 0,
                target_vertex: 1
            }
        );
        let id = RepMorphism::identity(&p1);
        assert!(id.is_isomorphism());
        assert_eq!(id.compose(&id).unwrap(), id);
    }
}
