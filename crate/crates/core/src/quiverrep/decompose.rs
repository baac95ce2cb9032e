//! Krull-Schmidt decomposition and isomorphism testing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactlin::subspaces::{all_vectors, projective_points};
use crate::exactlin::{FieldSpec, Mat, Scalar};
use crate::homcalc::hom_space;
use crate::quiverrep::{Rep, RepMorphism};

const SEED: u64 = 0x005e_ed0f_4b1d;

/// An indecomposable summand together with its structure maps into and out of
/// the decomposed module.
#[derive(Clone, Debug)]
pub struct Summand {
    pub rep: Rep,
    pub inclusion: RepMorphism,
    pub projection: RepMorphism,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    /// Every summand was shown indecomposable by exhausting its endomorphisms
    /// (or had a one-dimensional endomorphism algebra). Otherwise some summand
    /// survived only a random search and may split further.
    pub certified: bool,
}

impl Decomposition {
    pub fn reps(&self) -> Vec<Rep> {
        self.summands.iter().map(|s| s.rep.clone()).collect()
    }
}

#[derive(Clone, Debug)]
pub enum IsoVerdict {
    Iso(RepMorphism),
    NotIso,
    Inconclusive,
}

impl IsoVerdict {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoVerdict::Iso(_))
    }

    pub fn witness(&self) -> Option<&RepMorphism> {
        match self {
            IsoVerdict::Iso(w) => Some(w),
            _ => None,
        }
    }
}

fn is_nilpotent(m: &Mat) -> bool {
    m.rows() == 0 || m.pow(m.rows() as u32).is_zero()
}

/// Neither nilpotent nor invertible: Fitting's lemma then splits the module.
fn splits(phi: &RepMorphism) -> bool {
    let some_unipotent_part = phi.maps().iter().any(|m| !is_nilpotent(m));
    let some_singular = phi.maps().iter().any(|m| m.rank() < m.rows());
    some_unipotent_part && some_singular
}

/// An endomorphism that splits `m`, and whether the search was exhaustive.
fn find_splitting_endo(m: &Rep, budget: usize, rng: &mut ChaCha8Rng) -> Result<(Option<RepMorphism>, bool)> {
    let f = m.field();
    let FieldSpec::Prime(p) = f else {
        return Err(Error::UnsupportedField { op: "decompose" });
    };
    let end = hom_space(m, m)?;
    let k = end.dim();
    if k <= 1 {
        return Ok((None, true));
    }
    let id = RepMorphism::identity(m);
    let shifts: Vec<Scalar> = (0..p.min(64)).map(Scalar::Mod).collect();
    let try_with_shifts =
        |phi: &RepMorphism| -> Option<RepMorphism> { shifts.iter().map(|c| phi.sub(&id.scale(c))).find(splits) };
    for b in end.basis() {
        if let Some(phi) = try_with_shifts(b) {
            return Ok((Some(phi), false));
        }
    }
    let count = (p as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if count <= budget as u128 {
        for coeffs in all_vectors(f, k, budget)? {
            let phi = end.element(&coeffs);
            if splits(&phi) {
                return Ok((Some(phi), true));
            }
        }
        return Ok((None, true));
    }
    for _ in 0..budget.max(1) {
        let coeffs: Vec<Scalar> = (0..k).map(|_| Scalar::Mod(rng.random_range(0..p))).collect();
        if let Some(phi) = try_with_shifts(&end.element(&coeffs)) {
            return Ok((Some(phi), false));
        }
    }
    Ok((None, false))
}

/// Splits `m` as `im(phi^N) (+) ker(phi^N)`.
fn fitting_split(m: &Rep, phi: &RepMorphism) -> Result<[Summand; 2]> {
    let n = m.total_dim() as u32;
    let psi: Vec<Mat> = phi.maps().iter().map(|x| x.pow(n)).collect();
    let im_bases: Vec<Mat> = psi.iter().map(Mat::column_space_basis).collect();
    let ker_bases: Vec<Mat> = psi.iter().map(Mat::kernel_basis).collect();
    let (a, ia) = m.subrepresentation(&im_bases)?;
    let (b, ib) = m.subrepresentation(&ker_bases)?;
    let mut pa = Vec::new();
    let mut pb = Vec::new();
    for v in 0..m.dims().len() {
        let joint = im_bases[v].hstack(&ker_bases[v]);
        let inv = joint.inverse().expect("Fitting decomposition is direct");
        let r = im_bases[v].cols();
        pa.push(inv.submatrix(0..r, 0..joint.rows()));
        pb.push(inv.submatrix(r..joint.rows(), 0..joint.rows()));
    }
    let pa = RepMorphism::new(m.clone(), a.clone(), pa)?;
    let pb = RepMorphism::new(m.clone(), b.clone(), pb)?;
    Ok([
        Summand {
            rep: a,
            inclusion: ia,
            projection: pa,
        },
        Summand {
            rep: b,
            inclusion: ib,
            projection: pb,
        },
    ])
}

/// Krull-Schmidt decomposition over a prime field. `budget` bounds the number
/// of endomorphisms inspected per summand.
pub fn decompose(m: &Rep, budget: usize) -> Result<Decomposition> {
    if !m.field().is_finite() {
        return Err(Error::UnsupportedField { op: "decompose" });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut out = Vec::new();
    let mut certified = true;
    let mut stack = vec![Summand {
        rep: m.clone(),
        inclusion: RepMorphism::identity(m),
        projection: RepMorphism::identity(m),
    }];
    while let Some(s) = stack.pop() {
        if s.rep.is_zero() {
            continue;
        }
        let (phi, exhaustive) = find_splitting_endo(&s.rep, budget, &mut rng)?;
        match phi {
            None => {
                certified &= exhaustive;
                out.push(s);
            }
            Some(phi) => {
                let parts = fitting_split(&s.rep, &phi)?;
                // push in reverse so summands come out image-part first
                for part in parts.into_iter().rev() {
                    stack.push(Summand {
                        inclusion: s.inclusion.compose(&part.inclusion)?,
                        projection: part.projection.compose(&s.projection)?,
                        rep: part.rep,
                    });
                }
            }
        }
    }
    Ok(Decomposition {
        summands: out,
        certified,
    })
}

/// Whether `m` is indecomposable; `None` when the search was not conclusive.
pub fn is_indecomposable(m: &Rep, budget: usize) -> Result<Option<bool>> {
    if m.is_zero() {
        return Ok(Some(false));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (phi, exhaustive) = find_splitting_endo(m, budget, &mut rng)?;
    Ok(match phi {
        Some(_) => Some(false),
        None if exhaustive => Some(true),
        None => None,
    })
}

/// Decides `m ~= n`. Over `F_p` the answer is exact whenever the Hom space has
/// at most `budget` elements or both decompositions are certified; over `Q`
/// only a randomized search for an invertible morphism is available, so
/// failure is reported as inconclusive.
pub fn is_isomorphic(m: &Rep, n: &Rep, budget: usize) -> Result<IsoVerdict> {
    m.check_compatible(n)?;
    if m.dims() != n.dims() {
        return Ok(IsoVerdict::NotIso);
    }
    if m == n {
        return Ok(IsoVerdict::Iso(RepMorphism::identity(m)));
    }
    let hmn = hom_space(m, n)?;
    let k = hmn.dim();
    let hnm = hom_space(n, m)?.dim();
    let emm = hom_space(m, m)?.dim();
    let enn = hom_space(n, n)?.dim();
    if k != hnm || k != emm || k != enn {
        return Ok(IsoVerdict::NotIso);
    }
    if let Some(w) = hmn.basis().iter().find(|b| b.is_isomorphism()) {
        return Ok(IsoVerdict::Iso(w.clone()));
    }
    let f = m.field();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let FieldSpec::Prime(p) = f else {
        for _ in 0..budget.clamp(1, 256) {
            let coeffs: Vec<Scalar> = (0..k).map(|_| f.from_i64(rng.random_range(-50..=50))).collect();
            let w = hmn.element(&coeffs);
            if w.is_isomorphism() {
                return Ok(IsoVerdict::Iso(w));
            }
        }
        return Ok(IsoVerdict::Inconclusive);
    };
    let count = (p as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if count <= budget as u128 {
        for coeffs in projective_points(f, k, budget)? {
            let w = hmn.element(&coeffs);
            if w.is_isomorphism() {
                return Ok(IsoVerdict::Iso(w));
            }
        }
        return Ok(IsoVerdict::NotIso);
    }
    // match indecomposable summands; for indecomposables some Hom basis element
    // is invertible iff they are isomorphic, since the non-invertible
    // morphisms form a proper subspace
    let dm = decompose(m, budget)?;
    let dn = decompose(n, budget)?;
    let certified = dm.certified && dn.certified;
    if dm.summands.len() != dn.summands.len() && certified {
        return Ok(IsoVerdict::NotIso);
    }
    let mut used = vec![false; dn.summands.len()];
    let mut witness = RepMorphism::zero(m, n);
    for x in &dm.summands {
        let mut found = None;
        for (j, y) in dn.summands.iter().enumerate() {
            if used[j] || x.rep.dims() != y.rep.dims() {
                continue;
            }
            let h = hom_space(&x.rep, &y.rep)?;
            if let Some(iso) = h.basis().iter().find(|b| b.is_isomorphism()) {
                found = Some((j, iso.clone()));
                break;
            }
        }
        let Some((j, iso)) = found else {
            return Ok(if certified {
                IsoVerdict::NotIso
            } else {
                IsoVerdict::Inconclusive
            });
        };
        used[j] = true;
        let part = dn.summands[j].inclusion.compose(&iso)?.compose(&x.projection)?;
        witness = witness.add(&part);
    }
    if witness.is_isomorphism() {
        Ok(IsoVerdict::Iso(witness))
    } else {
        Ok(IsoVerdict::Inconclusive)
    }
}
