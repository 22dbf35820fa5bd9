//! The Desarguesian projective plane PG(2,q): points, lines, incidence.
//!
//! Points and lines are homogeneous triples over GF(q), normalized so the
//! last nonzero coordinate is 1. That normalization is canonical, which makes
//! set membership and file round-trips exact. Joining two points and
//! intersecting two lines are the same cross-product computation by duality.

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElement, ONE, ZERO};

/// A point of PG(2,q): normalized homogeneous coordinates (X, Y, Z).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint {
    pub coords: [FieldElement; 3],
}

/// A line of PG(2,q): normalized dual triple [u, v, w]; a point lies on the
/// line iff uX + vY + wZ = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjLine {
    pub coeffs: [FieldElement; 3],
}

fn normalize(ctx: &FieldCtx, t: [FieldElement; 3]) -> Result<[FieldElement; 3]> {
    let last = t
        .iter()
        .rposition(|&c| c != ZERO)
        .ok_or_else(|| Error::InvalidParameter("zero triple is not projective".into()))?;
    let inv = ctx.inv(t[last])?;
    Ok([ctx.mul(t[0], inv), ctx.mul(t[1], inv), ctx.mul(t[2], inv)])
}

impl ProjPoint {
    pub fn new(ctx: &FieldCtx, x: FieldElement, y: FieldElement, z: FieldElement) -> Result<Self> {
        Ok(ProjPoint {
            coords: normalize(ctx, [x, y, z])?,
        })
    }

    pub fn x(&self) -> FieldElement {
        self.coords[0]
    }
    pub fn y(&self) -> FieldElement {
        self.coords[1]
    }
    pub fn z(&self) -> FieldElement {
        self.coords[2]
    }

    /// Text form "x:y:z" with elements printed as packed digit codes.
    pub fn to_text(&self) -> String {
        format!("{}:{}:{}", self.coords[0], self.coords[1], self.coords[2])
    }

    pub fn from_text(ctx: &FieldCtx, s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        if parts.len() != 3 {
            return Err(Error::InvalidParameter(format!(
                "point '{s}' is not of the form x:y:z"
            )));
        }
        let mut c = [ZERO; 3];
        for (slot, part) in c.iter_mut().zip(&parts) {
            let code: u32 = part
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad field element '{part}'")))?;
            *slot = ctx.element(code)?;
        }
        ProjPoint::new(ctx, c[0], c[1], c[2])
    }
}

impl ProjLine {
    pub fn new(ctx: &FieldCtx, u: FieldElement, v: FieldElement, w: FieldElement) -> Result<Self> {
        Ok(ProjLine {
            coeffs: normalize(ctx, [u, v, w])?,
        })
    }
}

fn cross(ctx: &FieldCtx, a: [FieldElement; 3], b: [FieldElement; 3]) -> [FieldElement; 3] {
    [
        ctx.sub(ctx.mul(a[1], b[2]), ctx.mul(a[2], b[1])),
        ctx.sub(ctx.mul(a[2], b[0]), ctx.mul(a[0], b[2])),
        ctx.sub(ctx.mul(a[0], b[1]), ctx.mul(a[1], b[0])),
    ]
}

/// uX + vY + wZ = 0.
pub fn incident(ctx: &FieldCtx, line: &ProjLine, point: &ProjPoint) -> bool {
    let mut acc = ZERO;
    for i in 0..3 {
        acc = ctx.add(acc, ctx.mul(line.coeffs[i], point.coords[i]));
    }
    acc == ZERO
}

/// The unique line through two distinct points (cross product).
pub fn line_through(ctx: &FieldCtx, p: &ProjPoint, q: &ProjPoint) -> Result<ProjLine> {
    if p == q {
        return Err(Error::DegeneratePair);
    }
    let c = cross(ctx, p.coords, q.coords);
    ProjLine::new(ctx, c[0], c[1], c[2])
}

/// The unique common point of two distinct lines (dual cross product).
pub fn intersection(ctx: &FieldCtx, l: &ProjLine, m: &ProjLine) -> Result<ProjPoint> {
    if l == m {
        return Err(Error::DegeneratePair);
    }
    let c = cross(ctx, l.coeffs, m.coeffs);
    ProjPoint::new(ctx, c[0], c[1], c[2])
}

/// All q^2+q+1 points in a fixed order: the affine points (x,y,1) with x
/// varying slowest, then (x,1,0), then (1,0,0).
pub fn enumerate_points(ctx: &FieldCtx) -> Vec<ProjPoint> {
    let mut pts = Vec::with_capacity((ctx.q() * ctx.q() + ctx.q() + 1) as usize);
    for x in ctx.elements() {
        for y in ctx.elements() {
            pts.push(ProjPoint { coords: [x, y, ONE] });
        }
    }
    for x in ctx.elements() {
        pts.push(ProjPoint {
            coords: [x, ONE, ZERO],
        });
    }
    pts.push(ProjPoint {
        coords: [ONE, ZERO, ZERO],
    });
    pts
}

/// All q^2+q+1 lines, in the dual of the point order.
pub fn enumerate_lines(ctx: &FieldCtx) -> Vec<ProjLine> {
    enumerate_points(ctx)
        .into_iter()
        .map(|p| ProjLine { coeffs: p.coords })
        .collect()
}

/// The q+1 points incident with a line.
pub fn line_points(ctx: &FieldCtx, line: &ProjLine) -> Vec<ProjPoint> {
    // Two independent points on the line come from crossing it with the
    // coordinate axes; the rest is the pencil a + t*b.
    let axes = [
        [ONE, ZERO, ZERO],
        [ZERO, ONE, ZERO],
        [ZERO, ZERO, ONE],
    ];
    let mut base: Vec<[FieldElement; 3]> = Vec::new();
    for axis in axes {
        let c = cross(ctx, line.coeffs, axis);
        if c.iter().any(|&x| x != ZERO) {
            let n = normalize(ctx, c).expect("nonzero");
            if !base.contains(&n) {
                base.push(n);
            }
        }
        if base.len() == 2 {
            break;
        }
    }
    debug_assert_eq!(base.len(), 2);
    let (a, b) = (base[0], base[1]);
    let mut pts = Vec::with_capacity(ctx.q() as usize + 1);
    pts.push(ProjPoint { coords: a });
    for t in ctx.elements() {
        let c = [
            ctx.add(ctx.mul(t, a[0]), b[0]),
            ctx.add(ctx.mul(t, a[1]), b[1]),
            ctx.add(ctx.mul(t, a[2]), b[2]),
        ];
        pts.push(ProjPoint {
            coords: normalize(ctx, c).expect("pencil point nonzero"),
        });
    }
    debug_assert!(pts.iter().all(|p| incident(ctx, line, p)));
    pts
}

/// The q+1 lines through a point (dual pencil).
pub fn lines_through(ctx: &FieldCtx, p: &ProjPoint) -> Vec<ProjLine> {
    line_points(ctx, &ProjLine { coeffs: p.coords })
        .into_iter()
        .map(|pt| ProjLine { coeffs: pt.coords })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldCtx;
    use std::collections::HashSet;

    fn pt(ctx: &FieldCtx, x: u32, y: u32, z: u32) -> ProjPoint {
        ProjPoint::new(ctx, FieldElement(x), FieldElement(y), FieldElement(z)).unwrap()
    }

    #[test]
    fn enumerate_counts() {
        for q in [2u32, 4, 64] {
            let ctx = FieldCtx::of_order(q).unwrap();
            let pts = enumerate_points(&ctx);
            assert_eq!(pts.len(), (q * q + q + 1) as usize);
            let set: HashSet<_> = pts.iter().collect();
            assert_eq!(set.len(), pts.len());
        }
    }

    #[test]
    fn line_through_examples() {
        let ctx = FieldCtx::of_order(2).unwrap();
        let l = line_through(&ctx, &pt(&ctx, 1, 0, 0), &pt(&ctx, 0, 1, 0)).unwrap();
        assert_eq!(l.coeffs, [ZERO, ZERO, ONE]);

        let l = line_through(&ctx, &pt(&ctx, 0, 0, 1), &pt(&ctx, 1, 0, 1)).unwrap();
        assert_eq!(l.coeffs, [ZERO, ONE, ZERO]);

        let ctx4 = FieldCtx::of_order(4).unwrap();
        let p = pt(&ctx4, 1, 2, 1);
        let q = pt(&ctx4, 2, 1, 1);
        let l = line_through(&ctx4, &p, &q).unwrap();
        assert!(incident(&ctx4, &l, &p));
        assert!(incident(&ctx4, &l, &q));

        assert!(line_through(&ctx4, &p, &p).is_err());
    }

    #[test]
    fn line_points_examples() {
        let ctx = FieldCtx::of_order(2).unwrap();
        let z0 = ProjLine::new(&ctx, ZERO, ZERO, ONE).unwrap();
        let mut pts = line_points(&ctx, &z0);
        pts.sort();
        let mut expected = vec![pt(&ctx, 0, 1, 0), pt(&ctx, 1, 0, 0), pt(&ctx, 1, 1, 0)];
        expected.sort();
        assert_eq!(pts, expected);

        let ctx4 = FieldCtx::of_order(4).unwrap();
        for line in enumerate_lines(&ctx4) {
            let pts = line_points(&ctx4, &line);
            assert_eq!(pts.len(), 5);
            let set: HashSet<_> = pts.iter().collect();
            assert_eq!(set.len(), 5);
        }

        let ctx16 = FieldCtx::of_order(16).unwrap();
        let x0 = ProjLine::new(&ctx16, ONE, ZERO, ZERO).unwrap();
        let pts = line_points(&ctx16, &x0);
        assert_eq!(pts.len(), 17);
        assert!(pts.iter().all(|p| p.coords[0] == ZERO));
        // matches the filter over the full enumeration
        let filtered: HashSet<_> = enumerate_points(&ctx16)
            .into_iter()
            .filter(|p| incident(&ctx16, &x0, p))
            .collect();
        assert_eq!(filtered, pts.into_iter().collect::<HashSet<_>>());
    }

    #[test]
    fn normalization_is_canonical() {
        let ctx = FieldCtx::of_order(9).unwrap();
        for p in enumerate_points(&ctx) {
            for s in ctx.elements().skip(1) {
                let scaled = ProjPoint::new(
                    &ctx,
                    ctx.mul(s, p.coords[0]),
                    ctx.mul(s, p.coords[1]),
                    ctx.mul(s, p.coords[2]),
                )
                .unwrap();
                assert_eq!(scaled, p);
            }
        }
    }

    #[test]
    fn incidence_axioms_small_orders() {
        for q in [2u32, 3, 4, 5] {
            let ctx = FieldCtx::of_order(q).unwrap();
            let pts = enumerate_points(&ctx);
            let lines = enumerate_lines(&ctx);
            assert_eq!(lines.len(), pts.len());

            // two distinct points determine exactly one line
            for (i, p) in pts.iter().enumerate() {
                for q2 in pts.iter().skip(i + 1) {
                    let through: Vec<_> = lines
                        .iter()
                        .filter(|l| incident(&ctx, l, p) && incident(&ctx, l, q2))
                        .collect();
                    assert_eq!(through.len(), 1);
                    assert_eq!(*through[0], line_through(&ctx, p, q2).unwrap());
                }
            }
            // two distinct lines meet in exactly one point
            for (i, l) in lines.iter().enumerate() {
                for m in lines.iter().skip(i + 1) {
                    let common: Vec<_> = pts
                        .iter()
                        .filter(|p| incident(&ctx, l, p) && incident(&ctx, m, p))
                        .collect();
                    assert_eq!(common.len(), 1);
                    assert_eq!(*common[0], intersection(&ctx, l, m).unwrap());
                }
            }
            // each point lies on q+1 lines
            for p in &pts {
                let on = lines.iter().filter(|l| incident(&ctx, l, p)).count();
                assert_eq!(on, q as usize + 1);
                assert_eq!(lines_through(&ctx, p).len(), q as usize + 1);
            }
        }
    }

    #[test]
    fn point_text_roundtrip() {
        let ctx = FieldCtx::of_order(9).unwrap();
        for p in enumerate_points(&ctx) {
            let s = p.to_text();
            assert_eq!(ProjPoint::from_text(&ctx, &s).unwrap(), p);
        }
        assert!(ProjPoint::from_text(&ctx, "1:2").is_err());
        assert!(ProjPoint::from_text(&ctx, "0:0:0").is_err());
        assert!(ProjPoint::from_text(&ctx, "9:0:1").is_err());
    }
}
