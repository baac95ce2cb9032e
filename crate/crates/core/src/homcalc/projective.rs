use crate::error::{Error, Result};
use crate::exactlin::Mat;
use crate::homcalc::{flatten, hom_space};
use crate::quiverrep::{cokernel, image, Rep, RepMorphism};

/// `Hom(M, R) = 0`, checked against every indecomposable projective.
pub fn is_bound(m: &Rep) -> Result<bool> {
    for v in 0..m.quiver().vertex_count() {
        let p = Rep::projective(m.quiver(), m.field(), v)?;
        if !hom_space(m, &p)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A representation of an acyclic quiver is projective iff at every vertex the
/// incoming arrows jointly embed their sources.
pub fn is_projective(m: &Rep) -> bool {
    let q = m.quiver();
    (0..q.vertex_count()).all(|v| {
        let incoming: Vec<Mat> = q.arrows_into(v).map(|a| m.map(a).clone()).collect();
        let joint = Mat::hconcat(m.field(), m.dim(v), &incoming);
        joint.rank() == joint.cols()
    })
}

/// Replaces a map between projectives by injective maps with the same
/// localisation: `[f]` when `f` is injective, otherwise `[f', iota]` where
/// `f': I -> Q` is the image inclusion and `iota: I -> P` splits `P -> I`.
pub fn split_projective_map(f: &RepMorphism) -> Result<Vec<RepMorphism>> {
    if !is_projective(f.source()) {
        return Err(Error::NotProjective("source"));
    }
    if !is_projective(f.target()) {
        return Err(Error::NotProjective("target"));
    }
    if f.is_injective() {
        return Ok(vec![f.clone()]);
    }
    let (im, inc, onto) = image(f)?;
    let homs = hom_space(&im, f.source())?;
    let field = im.field();
    let cols: Vec<Mat> = homs
        .basis()
        .iter()
        .map(|h| Ok(Mat::column(field, flatten(onto.compose(h)?.maps()))))
        .collect::<Result<_>>()?;
    let id = RepMorphism::identity(&im);
    let system = Mat::hconcat(field, flatten(id.maps()).len(), &cols);
    let coeffs = system
        .solve(&Mat::column(field, flatten(id.maps())))?
        .ok_or_else(|| Error::Precondition("surjection onto the image does not split".into()))?;
    let section = homs.element(&coeffs.col(0));
    Ok(vec![inc, section])
}

/// Cokernels of the injective maps obtained from `maps`: the modules the
/// localisation at `maps` kills.
pub fn sigma_to_generators(maps: &[RepMorphism]) -> Result<Vec<Rep>> {
    let mut out = Vec::new();
    for f in maps {
        for g in split_projective_map(f)? {
            out.push(cokernel(&g)?.0);
        }
    }
    Ok(out)
}
