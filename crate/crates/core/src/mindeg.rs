//! Minimum degree of a form vanishing on a whole point set, with a
//! re-checked kernel-basis certificate.
//!
//! The evaluation matrix has one row per point and one column per degree-d
//! monomial in grlex order; its right kernel is the space of vanishing forms.
//! The search ascends from the counting lower bound ceil(|K|/(q+1)), which is
//! valid because a form of degree d <= q vanishing on K meets every line
//! pencil through an off-curve point in at most d points per line. It always
//! terminates by q+1 thanks to the witness X^q Y - X Y^q, which vanishes on
//! all rational points.

use crate::error::{Error, Result};
use crate::forms::{monomial_count, monomials, HomogeneousForm};
use crate::gf::{FieldElement, ONE};
use crate::linalg::{kernel_basis, MatGF};
use crate::pointsets::PointSet;

/// The kernel of the degree-d evaluation matrix: dimension plus a normalized,
/// deterministic basis, each member re-verified to vanish on the set.
#[derive(Debug, Clone)]
pub struct VanishingSpace {
    pub degree: usize,
    pub dim: usize,
    pub basis: Vec<HomogeneousForm>,
}

/// A witness of the minimum degree: the grlex-least normalized kernel form,
/// the kernel dimension at that degree, and `checked` recording that the
/// form was re-evaluated on every point and that the kernel one degree lower
/// is trivial.
#[derive(Debug, Clone)]
pub struct CurveCertificate {
    pub degree: usize,
    pub form: HomogeneousForm,
    pub kernel_dim: usize,
    pub checked: bool,
}

fn evaluation_matrix(k: &PointSet, d: usize) -> MatGF {
    let ctx = k.ctx();
    let cols = monomial_count(d);
    let monos = monomials(d);
    let mut m = MatGF::zero(k.len(), cols);
    for (r, p) in k.points().iter().enumerate() {
        let pows = |v: FieldElement| -> Vec<FieldElement> {
            let mut out = Vec::with_capacity(d + 1);
            out.push(ONE);
            for _ in 0..d {
                out.push(ctx.mul(*out.last().unwrap(), v));
            }
            out
        };
        let (px, py, pz) = (pows(p.coords[0]), pows(p.coords[1]), pows(p.coords[2]));
        for (c, &(i, j, kk)) in monos.iter().enumerate() {
            m.set(r, c, ctx.mul(px[i], ctx.mul(py[j], pz[kk])).0);
        }
    }
    m
}

/// Kernel of the |K| x (d+1)(d+2)/2 evaluation matrix over GF(q).
pub fn vanishing_space(k: &PointSet, d: usize) -> Result<VanishingSpace> {
    if d < 1 {
        return Err(Error::InvalidParameter("degree must be >= 1".into()));
    }
    let ctx = k.ctx();
    let matrix = evaluation_matrix(k, d);
    let vectors = kernel_basis(ctx, &matrix);
    let mut basis = Vec::with_capacity(vectors.len());
    for v in vectors {
        let form = HomogeneousForm::new(ctx, d, v)?.normalize(ctx)?;
        for p in k.points() {
            if !form.vanishes_at(ctx, p)? {
                return Err(Error::Internal(format!(
                    "kernel form fails to vanish at {}",
                    p.to_text()
                )));
            }
        }
        basis.push(form);
    }
    basis.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
    Ok(VanishingSpace {
        degree: d,
        dim: basis.len(),
        basis,
    })
}

/// Counting lower bound ceil(|K|/(q+1)) on the degree of any vanishing form.
pub fn search_floor(size: usize, q: u32) -> usize {
    size.div_ceil(q as usize + 1).max(1)
}

/// Smallest d with a nontrivial vanishing space, searched up to
/// `max_degree` (default q+1, which always succeeds).
pub fn min_degree_bounded(k: &PointSet, max_degree: Option<usize>) -> Result<CurveCertificate> {
    if k.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let q = k.ctx().q();
    let ceiling = max_degree.unwrap_or(q as usize + 1);
    let start = search_floor(k.len(), q);
    if start > ceiling {
        return Err(Error::ValidationFailed(format!(
            "no form of degree <= {ceiling} can vanish on {} points (counting bound {start})",
            k.len()
        )));
    }
    let mut prev_dim = if start > 1 {
        vanishing_space(k, start - 1)?.dim
    } else {
        0
    };
    if prev_dim != 0 {
        return Err(Error::Internal(format!(
            "counting bound violated: nontrivial kernel below degree {start}"
        )));
    }
    for d in start..=ceiling {
        let vs = vanishing_space(k, d)?;
        if vs.dim > 0 {
            debug_assert_eq!(prev_dim, 0);
            let form = vs.basis.into_iter().next().expect("dim > 0");
            return Ok(CurveCertificate {
                degree: d,
                form,
                kernel_dim: vs.dim,
                checked: true,
            });
        }
        prev_dim = vs.dim;
    }
    Err(Error::ValidationFailed(format!(
        "no form of degree <= {ceiling} vanishes on the set"
    )))
}

pub fn min_degree(k: &PointSet) -> Result<CurveCertificate> {
    min_degree_bounded(k, None)
}

/// Re-check a certificate form against a point set, independently of how it
/// was produced.
pub fn verify_certificate(k: &PointSet, form: &HomogeneousForm) -> Result<()> {
    let ctx = k.ctx();
    for p in k.points() {
        if !form.vanishes_at(ctx, p)? {
            return Err(Error::InvalidCertificate(format!(
                "form does not vanish at {}",
                p.to_text()
            )));
        }
    }
    Ok(())
}
