use crate::error::{Error, Result};
use crate::exactlin::Mat;
use crate::homcalc::ext_space;
use crate::quiverrep::{direct_sum, Rep, RepMorphism, ShortExactSeq};

/// The extension `0 -> A -> X -> C -> 0` with `X_v = A_v (+) C_v` and
/// `X_a = [[A_a, e_a], [0, C_a]]`, where `e` is a cocycle in `Ext(C, A)`.
pub fn extension_from_cocycle(c: &Rep, a: &Rep, cocycle: &[Mat]) -> Result<ShortExactSeq> {
    c.check_compatible(a)?;
    let q = c.quiver().clone();
    let f = c.field();
    if cocycle.len() != q.arrow_count() {
        return Err(Error::DimensionMismatch(format!(
            "{} cocycle components for {} arrows",
            cocycle.len(),
            q.arrow_count()
        )));
    }
    let mut maps = Vec::new();
    for (k, &(i, j)) in q.arrows().iter().enumerate() {
        let e = &cocycle[k];
        if e.shape() != (a.dim(j), c.dim(i)) {
            return Err(Error::ArrowShape {
                arrow: k,
                expected_rows: a.dim(j),
                expected_cols: c.dim(i),
                rows: e.rows(),
                cols: e.cols(),
            });
        }
        let top = a.map(k).hstack(e);
        let bottom = Mat::zeros(f, c.dim(j), a.dim(i)).hstack(c.map(k));
        maps.push(top.vstack(&bottom));
    }
    let dims: Vec<usize> = (0..q.vertex_count()).map(|v| a.dim(v) + c.dim(v)).collect();
    let x = Rep::new(q.clone(), f, dims.clone(), maps)?;
    let mut inc = Vec::new();
    let mut proj = Vec::new();
    for v in 0..q.vertex_count() {
        inc.push(Mat::identity(f, a.dim(v)).vstack(&Mat::zeros(f, c.dim(v), a.dim(v))));
        proj.push(Mat::zeros(f, c.dim(v), a.dim(v)).hstack(&Mat::identity(f, c.dim(v))));
    }
    ShortExactSeq::new(
        RepMorphism::new(a.clone(), x.clone(), inc)?,
        RepMorphism::new(x, c.clone(), proj)?,
    )
}

/// One step of the universal extension: `0 -> m -> m' -> (+)_i S_i^{r_i} -> 0`
/// with `r_i = dim Ext(S_i, m)`, adjoining every extension class at once.
#[derive(Clone, Debug)]
pub struct UniversalExtension {
    pub seq: ShortExactSeq,
    /// `r_i` for each generator, in order; the quotient lists the copies of
    /// `S_0` first, then `S_1`, and so on.
    pub multiplicities: Vec<usize>,
}

pub fn universal_extension(gens: &[Rep], m: &Rep) -> Result<UniversalExtension> {
    let q = m.quiver().clone();
    let f = m.field();
    let mut copies = Vec::new();
    let mut blocks: Vec<Vec<Mat>> = Vec::new();
    let mut multiplicities = Vec::new();
    for s in gens {
        let ext = ext_space(s, m)?;
        multiplicities.push(ext.dim());
        for cocycle in ext.cocycle_basis() {
            copies.push(s.clone());
            blocks.push(cocycle.clone());
        }
    }
    let quotient = direct_sum(&q, f, &copies)?.rep;
    let cocycle: Vec<Mat> = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, &(_, j))| Mat::hconcat(f, m.dim(j), &blocks.iter().map(|b| b[a].clone()).collect::<Vec<_>>()))
        .collect();
    let seq = extension_from_cocycle(&quotient, m, &cocycle)?;
    Ok(UniversalExtension { seq, multiplicities })
}
