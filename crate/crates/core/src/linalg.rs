//! Exact Gaussian elimination over GF(q).
//!
//! Two routes compute the same reduced row echelon form: a generic dense
//! elimination using table arithmetic, and a bitsliced path for p = 2 where a
//! row is stored as k bit-planes and a row operation becomes at most k^2
//! word-wide XOR sweeps. The bitsliced route is what makes the large
//! characteristic-2 rank searches cheap; the generic route doubles as its
//! oracle in tests.

use crate::gf::{FieldCtx, FieldElement, ONE, ZERO};

/// Dense row-major matrix of field element codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatGF {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl MatGF {
    pub fn zero(rows: usize, cols: usize) -> Self {
        MatGF {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<u32>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        MatGF {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }
}

/// Basis of the right kernel {v : M v = 0}, deterministic: one vector per
/// free column in ascending column order.
pub fn kernel_basis(ctx: &FieldCtx, m: &MatGF) -> Vec<Vec<FieldElement>> {
    if ctx.p() == 2 {
        kernel_basis_char2(ctx, m)
    } else {
        kernel_basis_generic(ctx, m)
    }
}

pub fn kernel_dim(ctx: &FieldCtx, m: &MatGF) -> usize {
    m.cols - rank(ctx, m)
}

pub fn rank(ctx: &FieldCtx, m: &MatGF) -> usize {
    if ctx.p() == 2 {
        let mut bm = BitMat::from_mat(ctx, m);
        bm.rref(ctx).len()
    } else {
        let mut work = m.clone();
        rref_generic(ctx, &mut work).len()
    }
}

/// Reduce to RREF in place; returns the pivot column per pivot row.
fn rref_generic(ctx: &FieldCtx, m: &mut MatGF) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for col in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(pr) = (r..m.rows).find(|&i| m.at(i, col) != 0) else {
            continue;
        };
        if pr != r {
            for c in 0..m.cols {
                let t = m.at(pr, c);
                m.set(pr, c, m.at(r, c));
                m.set(r, c, t);
            }
        }
        let inv = ctx.inv(FieldElement(m.at(r, col))).expect("pivot nonzero");
        for c in col..m.cols {
            m.set(r, c, ctx.mul(FieldElement(m.at(r, c)), inv).0);
        }
        for i in 0..m.rows {
            if i == r || m.at(i, col) == 0 {
                continue;
            }
            let f = FieldElement(m.at(i, col));
            for c in col..m.cols {
                let v = ctx.sub(
                    FieldElement(m.at(i, c)),
                    ctx.mul(f, FieldElement(m.at(r, c))),
                );
                m.set(i, c, v.0);
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

fn kernel_from_rref(
    ctx: &FieldCtx,
    cols: usize,
    pivots: &[usize],
    entry: impl Fn(usize, usize) -> u32,
) -> Vec<Vec<FieldElement>> {
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::with_capacity(cols - pivots.len());
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![ZERO; cols];
        v[free] = ONE;
        for (pr, &pc) in pivots.iter().enumerate() {
            v[pc] = ctx.neg(FieldElement(entry(pr, free)));
        }
        basis.push(v);
    }
    basis
}

pub fn kernel_basis_generic(ctx: &FieldCtx, m: &MatGF) -> Vec<Vec<FieldElement>> {
    let mut work = m.clone();
    let pivots = rref_generic(ctx, &mut work);
    kernel_from_rref(ctx, m.cols, &pivots, |r, c| work.at(r, c))
}

/// Bitsliced matrix over GF(2^k): row-major, each row holds k bit-planes of
/// `words` u64 each; bit c of plane i is the i-th basis coefficient of the
/// entry in column c.
struct BitMat {
    rows: usize,
    cols: usize,
    k: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMat {
    fn from_mat(ctx: &FieldCtx, m: &MatGF) -> Self {
        let k = ctx.k() as usize;
        let words = m.cols.div_ceil(64);
        let mut data = vec![0u64; m.rows * k * words];
        for r in 0..m.rows {
            for c in 0..m.cols {
                let e = m.at(r, c);
                for i in 0..k {
                    if (e >> i) & 1 == 1 {
                        data[(r * k + i) * words + c / 64] |= 1u64 << (c % 64);
                    }
                }
            }
        }
        BitMat {
            rows: m.rows,
            cols: m.cols,
            k,
            words,
            data,
        }
    }

    #[inline]
    fn at(&self, r: usize, c: usize) -> u32 {
        let mut e = 0u32;
        for i in 0..self.k {
            e |= (((self.data[(r * self.k + i) * self.words + c / 64] >> (c % 64)) & 1) as u32)
                << i;
        }
        e
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let stride = self.k * self.words;
        let (lo, hi) = (a.min(b) * stride, a.max(b) * stride);
        let (left, right) = self.data.split_at_mut(hi);
        left[lo..lo + stride].swap_with_slice(&mut right[..stride]);
    }

    /// Per-plane XOR masks for multiplication by the constant c: output plane
    /// i collects input planes j with bit i set in c * x^j.
    fn mul_masks(ctx: &FieldCtx, c: FieldElement) -> Vec<u32> {
        let k = ctx.k() as usize;
        let mut cols = vec![0u32; k];
        for (j, col) in cols.iter_mut().enumerate() {
            *col = ctx.mul(c, FieldElement(1 << j)).0;
        }
        cols
    }

    /// row r := c * row r.
    fn scale_row(&mut self, ctx: &FieldCtx, r: usize, c: FieldElement, tmp: &mut [u64]) {
        let masks = Self::mul_masks(ctx, c);
        let base = r * self.k * self.words;
        tmp[..self.k * self.words].fill(0);
        for i in 0..self.k {
            for (j, &col) in masks.iter().enumerate() {
                if (col >> i) & 1 == 1 {
                    let src = base + j * self.words;
                    for w in 0..self.words {
                        tmp[i * self.words + w] ^= self.data[src + w];
                    }
                }
            }
        }
        self.data[base..base + self.k * self.words].copy_from_slice(&tmp[..self.k * self.words]);
    }

    /// row dst += c * row src (addition is XOR in characteristic 2).
    fn add_mul_row(&mut self, ctx: &FieldCtx, dst: usize, src: usize, c: FieldElement) {
        if c == ZERO {
            return;
        }
        let masks = Self::mul_masks(ctx, c);
        let sbase = src * self.k * self.words;
        let dbase = dst * self.k * self.words;
        for i in 0..self.k {
            for (j, &col) in masks.iter().enumerate() {
                if (col >> i) & 1 == 1 {
                    for w in 0..self.words {
                        self.data[dbase + i * self.words + w] ^=
                            self.data[sbase + j * self.words + w];
                    }
                }
            }
        }
    }

    fn rref(&mut self, ctx: &FieldCtx) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut tmp = vec![0u64; self.k * self.words];
        let mut r = 0usize;
        for col in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.at(i, col) != 0) else {
                continue;
            };
            self.swap_rows(pr, r);
            let pivot = FieldElement(self.at(r, col));
            if pivot != ONE {
                let inv = ctx.inv(pivot).expect("pivot nonzero");
                self.scale_row(ctx, r, inv, &mut tmp);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = FieldElement(self.at(i, col));
                if f != ZERO {
                    self.add_mul_row(ctx, i, r, f);
                }
            }
            pivots.push(col);
            r += 1;
        }
        pivots
    }
}

pub fn kernel_basis_char2(ctx: &FieldCtx, m: &MatGF) -> Vec<Vec<FieldElement>> {
    debug_assert_eq!(ctx.p(), 2);
    let mut bm = BitMat::from_mat(ctx, m);
    let pivots = bm.rref(ctx);
    kernel_from_rref(ctx, m.cols, &pivots, |r, c| bm.at(r, c))
}

/// Inverse of an n x n matrix, or None when singular.
pub fn invert(ctx: &FieldCtx, n: usize, mat: &MatGF) -> Option<MatGF> {
    assert_eq!(mat.rows, n);
    assert_eq!(mat.cols, n);
    let mut aug = MatGF::zero(n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            aug.set(r, c, mat.at(r, c));
        }
        aug.set(r, n + r, 1);
    }
    let pivots = rref_generic(ctx, &mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    let mut out = MatGF::zero(n, n);
    for r in 0..n {
        for c in 0..n {
            out.set(r, c, aug.at(r, n + c));
        }
    }
    Some(out)
}

/// M v over GF(q).
pub fn mat_vec(ctx: &FieldCtx, m: &MatGF, v: &[FieldElement]) -> Vec<FieldElement> {
    assert_eq!(m.cols, v.len());
    (0..m.rows)
        .map(|r| {
            let mut acc = ZERO;
            for c in 0..m.cols {
                acc = ctx.add(acc, ctx.mul(FieldElement(m.at(r, c)), v[c]));
            }
            acc
        })
        .collect()
}
