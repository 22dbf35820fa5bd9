//! Point sets of PG(2,q): generators, line spectra, maximal-arc recognition,
//! and the point-set file format.
//!
//! A `PointSet` keeps its points canonically sorted and caches nothing else;
//! the parameters t = |K| div q and alpha = |K| mod q are derived on demand.
//! Sets with |K| >= q(q+1) are accepted; the parametrization is a convention,
//! not a restriction.

use crate::error::{Error, Result};
use crate::forms::{ConicData, HomogeneousForm};
use crate::gf::{FieldCtx, FieldElement, ONE, ZERO};
use crate::pg2::{enumerate_lines, enumerate_points, line_points, lines_through, ProjPoint};
use std::collections::{BTreeMap, HashMap, HashSet};

#[derive(Debug, Clone)]
pub struct PointSet {
    ctx: FieldCtx,
    points: Vec<ProjPoint>,
}

impl PartialEq for PointSet {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.points == other.points
    }
}
impl Eq for PointSet {}

impl PointSet {
    /// Sorts into canonical order; duplicates are rejected.
    pub fn from_points(ctx: &FieldCtx, mut points: Vec<ProjPoint>) -> Result<Self> {
        points.sort();
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::ValidationFailed(format!(
                "duplicate point {}",
                w[0].to_text()
            )));
        }
        Ok(PointSet {
            ctx: ctx.clone(),
            points,
        })
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// t in the parametrization |K| = q*t + alpha, 0 <= alpha < q.
    pub fn t(&self) -> usize {
        self.points.len() / self.ctx.q() as usize
    }

    pub fn alpha(&self) -> usize {
        self.points.len() % self.ctx.q() as usize
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn point_set(&self) -> HashSet<ProjPoint> {
        self.points.iter().copied().collect()
    }

    /// All rational zeros of a form as a point set.
    pub fn from_form_zeros(ctx: &FieldCtx, form: &HomogeneousForm) -> Result<Self> {
        Self::from_points(ctx, form.rational_zero_points(ctx)?)
    }

    /// File format: header "q=<order> n=<count>", then one "x:y:z" per line.
    pub fn to_file_string(&self) -> String {
        let mut out = format!("q={} n={}\n", self.ctx.q(), self.points.len());
        for p in &self.points {
            out.push_str(&p.to_text());
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "empty point-set file".into(),
        })?;
        let mut q_spec = None;
        let mut count = None;
        for tok in header.split_whitespace() {
            if let Some(v) = tok.strip_prefix("q=") {
                q_spec = Some(v.to_string());
            } else if let Some(v) = tok.strip_prefix("n=") {
                count = Some(v.parse::<usize>().map_err(|_| Error::Parse {
                    line: 1,
                    msg: format!("bad count '{v}'"),
                })?);
            }
        }
        let (Some(q_spec), Some(count)) = (q_spec, count) else {
            return Err(Error::Parse {
                line: 1,
                msg: format!("expected header 'q=<spec> n=<count>', got '{header}'"),
            });
        };
        let ctx = FieldCtx::parse_spec(&q_spec).map_err(|e| Error::Parse {
            line: 1,
            msg: e.to_string(),
        })?;
        let mut points = Vec::with_capacity(count);
        let mut seen = HashSet::with_capacity(count);
        for (n, raw) in lines {
            let lineno = n + 1;
            let raw = raw.trim();
            if raw.is_empty() {
                continue;
            }
            let p = ProjPoint::from_text(&ctx, raw).map_err(|e| Error::Parse {
                line: lineno,
                msg: e.to_string(),
            })?;
            if !seen.insert(p) {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("duplicate point {}", p.to_text()),
                });
            }
            points.push(p);
        }
        if points.len() != count {
            return Err(Error::Parse {
                line: 1,
                msg: format!("header says n={count} but file has {} points", points.len()),
            });
        }
        Self::from_points(&ctx, points)
    }
}

/// Histogram of |line ∩ K| over all q^2+q+1 lines, with the least positive
/// and greatest intersection sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineSpectrum {
    pub histogram: BTreeMap<usize, usize>,
    pub m0: usize,
    pub big_m0: usize,
}

/// Exact line spectrum by brute force over all lines.
pub fn spectrum(k: &PointSet) -> Result<LineSpectrum> {
    if k.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let ctx = k.ctx();
    let mut histogram = BTreeMap::new();
    for line in enumerate_lines(ctx) {
        let c = line_points(ctx, &line)
            .iter()
            .filter(|p| k.contains(p))
            .count();
        *histogram.entry(c).or_insert(0) += 1;
    }
    let m0 = *histogram
        .keys()
        .find(|&&s| s > 0)
        .expect("a nonempty set meets some line");
    let big_m0 = *histogram.keys().last().unwrap();
    Ok(LineSpectrum {
        histogram,
        m0,
        big_m0,
    })
}

/// A maximal (k,n)-arc: every line meets it in 0 or n points and the size
/// attains the Barlotti bound (n-1)q + n. Expects 1 <= n <= q+1.
pub fn is_maximal_arc(k: &PointSet, n: usize) -> bool {
    let q = k.ctx().q() as usize;
    if n < 1 || n > q + 1 || k.len() != (n - 1) * q + n {
        return false;
    }
    match spectrum(k) {
        Ok(s) => s.histogram.keys().all(|&size| size == 0 || size == n),
        Err(_) => false,
    }
}

/// GF(2)-span of the basis elements, or an error when they are dependent.
fn additive_span(ctx: &FieldCtx, basis: &[FieldElement]) -> Result<HashSet<FieldElement>> {
    let mut span = HashSet::from([ZERO]);
    for &b in basis {
        if span.contains(&b) {
            return Err(Error::InvalidParameter(format!(
                "subgroup basis is GF(2)-dependent at element {b}"
            )));
        }
        let shifted: Vec<FieldElement> = span.iter().map(|&s| ctx.add(s, b)).collect();
        span.extend(shifted);
    }
    Ok(span)
}

/// Denniston maximal arc in PG(2,2^h): the affine points where the
/// anisotropic form x^2 + xy + nu*y^2 takes values in the additive subgroup
/// spanned by `subgroup_basis`. Requires absolute trace of nu equal to 1;
/// otherwise the pencil conics would be degenerate or intersecting.
pub fn denniston_arc(
    ctx: &FieldCtx,
    subgroup_basis: &[FieldElement],
    nu: FieldElement,
) -> Result<PointSet> {
    if ctx.p() != 2 {
        return Err(Error::EvenCharacteristicOnly { p: ctx.p() });
    }
    if ctx.absolute_trace(nu) != ONE {
        return Err(Error::InvalidNu);
    }
    let m = subgroup_basis.len() as u32;
    if m == 0 || m > ctx.k() {
        return Err(Error::InvalidParameter(format!(
            "subgroup rank {m} out of range 1..={}",
            ctx.k()
        )));
    }
    let span = additive_span(ctx, subgroup_basis)?;
    let mut points = Vec::new();
    for x in ctx.elements() {
        for y in ctx.elements() {
            let v = ctx.add(
                ctx.add(ctx.mul(x, x), ctx.mul(x, y)),
                ctx.mul(nu, ctx.mul(y, y)),
            );
            if span.contains(&v) {
                points.push(ProjPoint {
                    coords: [x, y, ONE],
                });
            }
        }
    }
    let n = 1usize << m;
    let expected = (n - 1) * ctx.q() as usize + n;
    if points.len() != expected {
        return Err(Error::Internal(format!(
            "denniston arc came out with {} points, expected {expected}",
            points.len()
        )));
    }
    PointSet::from_points(ctx, points)
}

/// The smallest-code nu with absolute trace 1; a reproducible default for
/// Denniston arcs.
pub fn default_nu(ctx: &FieldCtx) -> Result<FieldElement> {
    if ctx.p() != 2 {
        return Err(Error::EvenCharacteristicOnly { p: ctx.p() });
    }
    ctx.elements()
        .find(|&x| ctx.absolute_trace(x) == ONE)
        .ok_or_else(|| Error::Internal("no trace-one element".into()))
}

/// The standard nondegenerate conic Y^2 = XZ, valid in every characteristic.
pub fn standard_conic(ctx: &FieldCtx) -> ConicData {
    ConicData::from_coeffs(ctx, [ZERO, ZERO, ONE, ctx.neg(ONE), ZERO, ZERO])
        .expect("Y^2 - XZ is nondegenerate")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointSetKind {
    FullPlane,
    AffinePlane,
    ConicPoints,
    ConicPlusNucleus,
    InternalPoints,
    ExternalPoints,
    HermitianUnital,
    DisjointConicUnion { t: usize },
}

/// Tangent-count classification of the points off the standard conic:
/// (internal, external) where internal points lie on 0 tangents and external
/// on 2. Odd q only.
fn classify_by_tangents(ctx: &FieldCtx) -> Result<(Vec<ProjPoint>, Vec<ProjPoint>)> {
    if ctx.p() == 2 {
        return Err(Error::OddOrderOnly { k: ctx.k() });
    }
    let conic = standard_conic(ctx);
    let on_conic: HashSet<ProjPoint> = conic.points().iter().copied().collect();
    let mut tangent_hits: HashMap<ProjPoint, usize> = HashMap::new();
    for p in conic.points() {
        let tangent = lines_through(ctx, p)
            .into_iter()
            .find(|l| {
                line_points(ctx, l)
                    .iter()
                    .filter(|pt| on_conic.contains(pt))
                    .count()
                    == 1
            })
            .ok_or_else(|| Error::Internal("conic point without tangent".into()))?;
        for pt in line_points(ctx, &tangent) {
            *tangent_hits.entry(pt).or_insert(0) += 1;
        }
    }
    let mut internal = Vec::new();
    let mut external = Vec::new();
    for p in enumerate_points(ctx) {
        if on_conic.contains(&p) {
            continue;
        }
        match tangent_hits.get(&p).copied().unwrap_or(0) {
            0 => internal.push(p),
            2 => external.push(p),
            c => {
                return Err(Error::Internal(format!(
                    "point on {c} tangents of a conic, expected 0 or 2"
                )))
            }
        }
    }
    Ok((internal, external))
}

pub fn generate(ctx: &FieldCtx, kind: PointSetKind) -> Result<PointSet> {
    let q = ctx.q() as usize;
    match kind {
        PointSetKind::FullPlane => PointSet::from_points(ctx, enumerate_points(ctx)),
        PointSetKind::AffinePlane => {
            let pts = enumerate_points(ctx)
                .into_iter()
                .filter(|p| p.coords[2] != ZERO)
                .collect();
            PointSet::from_points(ctx, pts)
        }
        PointSetKind::ConicPoints => {
            PointSet::from_points(ctx, standard_conic(ctx).points().to_vec())
        }
        PointSetKind::ConicPlusNucleus => {
            if ctx.p() != 2 {
                return Err(Error::EvenCharacteristicOnly { p: ctx.p() });
            }
            let conic = standard_conic(ctx);
            let mut pts = conic.points().to_vec();
            pts.push(conic.nucleus(ctx)?);
            PointSet::from_points(ctx, pts)
        }
        PointSetKind::InternalPoints => {
            let (internal, _) = classify_by_tangents(ctx)?;
            debug_assert_eq!(internal.len(), q * (q - 1) / 2);
            PointSet::from_points(ctx, internal)
        }
        PointSetKind::ExternalPoints => {
            let (_, external) = classify_by_tangents(ctx)?;
            debug_assert_eq!(external.len(), q * (q + 1) / 2);
            PointSet::from_points(ctx, external)
        }
        PointSetKind::HermitianUnital => {
            if ctx.k() % 2 != 0 {
                return Err(Error::InvalidParameter(format!(
                    "hermitian unital needs square q, got {}",
                    ctx.q()
                )));
            }
            let s = (ctx.p() as u64).pow(ctx.k() / 2);
            let form = HomogeneousForm::from_terms(
                ctx,
                s as usize + 1,
                &[
                    ((s as usize + 1, 0, 0), ONE),
                    ((0, s as usize + 1, 0), ONE),
                    ((0, 0, s as usize + 1), ONE),
                ],
            )?;
            let set = PointSet::from_form_zeros(ctx, &form)?;
            debug_assert_eq!(set.len() as u64, ctx.q() as u64 * s + 1);
            Ok(set)
        }
        PointSetKind::DisjointConicUnion { t } => {
            if ctx.p() == 2 {
                return Err(Error::OddOrderOnly { k: ctx.k() });
            }
            if t < 1 || t > q - 1 {
                return Err(Error::InvalidParameter(format!(
                    "need 1 <= t <= q-1 disjoint pencil conics, got t={t}"
                )));
            }
            // pencil X^2 + nu*Y^2 = lambda*Z^2 with -nu a nonsquare: any two
            // members meet only where X^2 + nu*Y^2 = 0 on Z = 0, which is
            // impossible, so distinct lambdas give disjoint conics
            let nu = ctx
                .elements()
                .skip(1)
                .find(|&x| !ctx.is_square(ctx.neg(x)).unwrap())
                .ok_or_else(|| Error::Internal("no nonsquare in odd field".into()))?;
            let mut points = Vec::new();
            for code in 1..=t as u32 {
                let lambda = FieldElement(code);
                let conic = ConicData::from_coeffs(
                    ctx,
                    [ONE, ZERO, nu, ZERO, ZERO, ctx.neg(lambda)],
                )?;
                points.extend_from_slice(conic.points());
            }
            let set = PointSet::from_points(ctx, points)?;
            debug_assert_eq!(set.len(), t * (q + 1));
            Ok(set)
        }
    }
}
