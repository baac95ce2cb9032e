//! Kernels, images, cokernels, sums and pushouts.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::{FieldSpec, Mat};
use crate::quiverrep::{Quiver, Rep, RepMorphism};

impl Rep {
    /// The subrepresentation spanned by the columns of `bases[v]` at each
    /// vertex, with its inclusion. The columns must be independent and the
    /// spans closed under the arrows.
    pub fn subrepresentation(&self, bases: &[Mat]) -> Result<(Rep, RepMorphism)> {
        let q = self.quiver().clone();
        let f = self.field();
        let dims: Vec<usize> = bases.iter().map(Mat::cols).collect();
        let mut maps = Vec::with_capacity(q.arrow_count());
        for (a, &(i, j)) in q.arrows().iter().enumerate() {
            let image = self.map(a).mul(&bases[i]);
            let Some(m) = bases[j].solve(&image)? else {
                return Err(Error::Precondition(format!(
                    "subspace is not closed under arrow {}",
                    q.arrow_label(a)
                )));
            };
            maps.push(m);
        }
        let sub = Rep::new(q, f, dims, maps)?;
        let inc = RepMorphism::new_unchecked(sub.clone(), self.clone(), bases.to_vec());
        Ok((sub, inc))
    }

    /// The quotient by the subrepresentation spanned by `bases[v]` (columns may
    /// be dependent), with the projection.
    pub fn quotient_by(&self, bases: &[Mat]) -> Result<(Rep, RepMorphism)> {
        let q = self.quiver().clone();
        let f = self.field();
        let quots: Vec<_> = bases.iter().map(Mat::quotient).collect();
        let dims: Vec<usize> = quots.iter().map(|x| x.map.rows()).collect();
        let maps: Vec<Mat> = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(i, j))| quots[j].map.mul(self.map(a)).mul(&quots[i].section))
            .collect();
        let quotient = Rep::new(q, f, dims, maps)?;
        let proj = RepMorphism::new(
            self.clone(),
            quotient.clone(),
            quots.into_iter().map(|x| x.map).collect(),
        )?;
        Ok((quotient, proj))
    }

    /// `self (+) other`, with `self` first.
    pub fn oplus(&self, other: &Rep) -> Result<Rep> {
        Ok(direct_sum(self.quiver(), self.field(), &[self.clone(), other.clone()])?.rep)
    }

    /// `self^n`.
    pub fn power(&self, n: usize) -> Result<Rep> {
        Ok(direct_sum(self.quiver(), self.field(), &vec![self.clone(); n])?.rep)
    }
}

pub fn kernel(f: &RepMorphism) -> Result<(Rep, RepMorphism)> {
    let bases: Vec<Mat> = f.maps().iter().map(Mat::kernel_basis).collect();
    f.source().subrepresentation(&bases)
}

/// `(image, inclusion into the target, surjection from the source)`.
pub fn image(f: &RepMorphism) -> Result<(Rep, RepMorphism, RepMorphism)> {
    let bases: Vec<Mat> = f.maps().iter().map(Mat::column_space_basis).collect();
    let (im, inc) = f.target().subrepresentation(&bases)?;
    let coords = bases
        .iter()
        .zip(f.maps())
        .map(|(b, m)| Ok(b.solve(m)?.expect("image contains the columns of the map")))
        .collect::<Result<Vec<_>>>()?;
    let onto = RepMorphism::new_unchecked(f.source().clone(), im.clone(), coords);
    Ok((im, inc, onto))
}

pub fn cokernel(f: &RepMorphism) -> Result<(Rep, RepMorphism)> {
    f.target().quotient_by(f.maps())
}

/// `f` factored through the monomorphism `g` (both with the same target), if possible.
pub fn lift_through_mono(f: &RepMorphism, g: &RepMorphism) -> Result<Option<RepMorphism>> {
    let mut maps = Vec::new();
    for (fv, gv) in f.maps().iter().zip(g.maps()) {
        match gv.solve(fv)? {
            Some(x) => maps.push(x),
            None => return Ok(None),
        }
    }
    Ok(Some(RepMorphism::new(f.source().clone(), g.source().clone(), maps)?))
}

/// A direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub rep: Rep,
    pub injections: Vec<RepMorphism>,
    pub projections: Vec<RepMorphism>,
}

pub fn direct_sum(quiver: &Arc<Quiver>, field: FieldSpec, ms: &[Rep]) -> Result<DirectSum> {
    let zero = Rep::zero(quiver, field);
    for m in ms {
        zero.check_compatible(m)?;
    }
    let n = quiver.vertex_count();
    let dims: Vec<usize> = (0..n).map(|v| ms.iter().map(|m| m.dim(v)).sum()).collect();
    let maps = (0..quiver.arrow_count())
        .map(|a| Mat::block_diag(field, &ms.iter().map(|m| m.map(a).clone()).collect::<Vec<_>>()))
        .collect();
    let rep = Rep::new(quiver.clone(), field, dims.clone(), maps)?;
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    let mut offset = vec![0usize; n];
    for m in ms {
        let mut inj = Vec::new();
        let mut proj = Vec::new();
        for v in 0..n {
            let mut i = Mat::zeros(field, dims[v], m.dim(v));
            i.paste(offset[v], 0, &Mat::identity(field, m.dim(v)));
            proj.push(i.transpose());
            inj.push(i);
            offset[v] += m.dim(v);
        }
        injections.push(RepMorphism::new_unchecked(m.clone(), rep.clone(), inj));
        projections.push(RepMorphism::new_unchecked(rep.clone(), m.clone(), proj));
    }
    Ok(DirectSum {
        rep,
        injections,
        projections,
    })
}

/// Pushout of `f: C -> A` and `g: C -> B`: `(P, A -> P, B -> P)`.
pub fn pushout(f: &RepMorphism, g: &RepMorphism) -> Result<(Rep, RepMorphism, RepMorphism)> {
    if f.source() != g.source() {
        return Err(Error::Precondition("pushout maps must share their source".into()));
    }
    let a = f.target();
    let b = g.target();
    let sum = direct_sum(a.quiver(), a.field(), &[a.clone(), b.clone()])?;
    let rel: Vec<Mat> = f.maps().iter().zip(g.maps()).map(|(x, y)| x.vstack(&y.neg())).collect();
    let (p, proj) = sum.rep.quotient_by(&rel)?;
    let from_a = proj.compose(&sum.injections[0])?;
    let from_b = proj.compose(&sum.injections[1])?;
    Ok((p, from_a, from_b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldSpec {
        FieldSpec::Prime(2)
    }

    fn a2() -> Arc<Quiver> {
        Arc::new(Quiver::linear(2))
    }

    fn p2_into_p1(q: &Arc<Quiver>) -> RepMorphism {
        let p1 = Rep::projective(q, f2(), 0).unwrap();
        let p2 = Rep::projective(q, f2(), 1).unwrap();
        RepMorphism::new(p2, p1, vec![Mat::zeros(f2(), 1, 0), Mat::identity(f2(), 1)]).unwrap()
    }

    #[test]
    fn kernel_examples() {
        let q = a2();
        let p1 = Rep::projective(&q, f2(), 0).unwrap();
        let s1 = Rep::simple(&q, f2(), 0).unwrap();
        assert!(kernel(&RepMorphism::identity(&p1)).unwrap().0.is_zero());
        assert_eq!(kernel(&RepMorphism::zero(&p1, &s1)).unwrap().0, p1);
        let onto = RepMorphism::new(
            p1.clone(),
            s1.clone(),
            vec![Mat::identity(f2(), 1), Mat::zeros(f2(), 0, 1)],
        )
        .unwrap();
        let (k, inc) = kernel(&onto).unwrap();
        assert_eq!(k.dims(), &[0, 1]);
        assert!(onto.compose(&inc).unwrap().is_zero());
    }

    #[test]
    fn cokernel_and_image_examples() {
        let q = a2();
        let p1 = Rep::projective(&q, f2(), 0).unwrap();
        assert!(cokernel(&RepMorphism::identity(&p1)).unwrap().0.is_zero());
        let (c, _) = cokernel(&p2_into_p1(&q)).unwrap();
        assert_eq!(c.dims(), &[1, 0]);
        let (im, _, _) = image(&RepMorphism::zero(&p1, &p1)).unwrap();
        assert!(im.is_zero());
        let f = p2_into_p1(&q);
        let (_, inc, onto) = image(&f).unwrap();
        assert_eq!(inc.compose(&onto).unwrap(), f);
    }

    #[test]
    fn direct_sum_examples() {
        let q = a2();
        assert!(direct_sum(&q, f2(), &[]).unwrap().rep.is_zero());
        let s1 = Rep::simple(&q, f2(), 0).unwrap();
        assert_eq!(s1.oplus(&s1).unwrap().dims(), &[2, 0]);
        let p1 = Rep::projective(&q, f2(), 0).unwrap();
        let p2 = Rep::projective(&q, f2(), 1).unwrap();
        let s = p1.oplus(&p2).unwrap();
        assert_eq!(s.dims(), &[1, 2]);
        assert_eq!(s.map(0).rank(), 1);
        let other = Rep::simple(&Arc::new(Quiver::kronecker()), f2(), 0).unwrap();
        assert!(direct_sum(&q, f2(), &[other]).is_err());
    }

    #[test]
    fn pushout_examples() {
        let q = a2();
        let f = p2_into_p1(&q);
        let (p, ia, ib) = pushout(&f, &f).unwrap();
        assert_eq!(p.dims(), &[2, 1]);
        assert_eq!(ia.compose(&f).unwrap(), ib.compose(&f).unwrap());
        let p1 = f.target().clone();
        let s1 = Rep::simple(&q, f2(), 0).unwrap();
        let zero = Rep::zero(&q, f2());
        let (p, _, _) = pushout(&RepMorphism::zero(&zero, &p1), &RepMorphism::zero(&zero, &s1)).unwrap();
        assert_eq!(p.dims(), &[2, 1]);
        let (p, _, _) = pushout(&RepMorphism::identity(&p1), &RepMorphism::identity(&p1)).unwrap();
        assert_eq!(p, p1);
    }
}
