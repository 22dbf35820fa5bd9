//! Exact arithmetic in GF(p^k).
//!
//! Elements are stored as packed little-endian base-p digit vectors: the code
//! of `c0 + c1*x + ... + c_{k-1}*x^{k-1}` is `c0 + c1*p + ... + c_{k-1}*p^{k-1}`.
//! For p = 2 this is the usual bitmask over the polynomial basis, so addition
//! is XOR and the packed code doubles as the wire format.
//!
//! Multiplication goes through discrete log/antilog tables built once per
//! context from a primitive element, which keeps every operation exact and
//! table-driven at desk scale (q <= 2^20).

use crate::error::{Error, Result};

/// An element of GF(p^k), stored as its packed digit code. Only meaningful
/// together with the [`FieldCtx`] it was created from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(pub u32);

impl std::fmt::Display for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub const ZERO: FieldElement = FieldElement(0);
pub const ONE: FieldElement = FieldElement(1);

/// Fixed moduli for the fields used throughout; coefficient lists are
/// little-endian with the constant term first. Other (p, k) fall back to the
/// lexicographically smallest monic irreducible, which keeps encodings
/// reproducible across runs.
const MODULUS_TABLE: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),             // x^2 + x + 1
    (2, 3, &[1, 1, 0, 1]),          // x^3 + x + 1
    (2, 4, &[1, 1, 0, 0, 1]),       // x^4 + x + 1
    (2, 5, &[1, 0, 1, 0, 0, 1]),    // x^5 + x^2 + 1
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]), // x^6 + x + 1
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]), // x^7 + x + 1
    (3, 2, &[2, 1, 1]),             // x^2 + x + 2
];

const MAX_FIELD_BITS: u32 = 20;

/// Immutable context for one finite field: the modulus plus the log/antilog
/// tables every operation runs on. Safe to share freely across threads.
#[derive(Clone)]
pub struct FieldCtx {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Option<Vec<u32>>,
}

impl std::fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FieldCtx(GF({}), modulus {:?})", self.q, self.modulus)
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}
impl Eq for FieldCtx {}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Factor a prime power: q = p^k with p prime, or None.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut n = q;
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            return if n == 1 { Some((p, k)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

// --- polynomial helpers over GF(p), digit-vector representation ---

fn poly_deg(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn poly_mul(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    out
}

/// Remainder of a modulo the monic polynomial m.
fn poly_rem(p: u32, a: &[u32], m: &[u32]) -> Vec<u32> {
    let md = poly_deg(m).expect("zero modulus");
    let mut r = a.to_vec();
    loop {
        let rd = match poly_deg(&r) {
            Some(d) if d >= md => d,
            _ => break,
        };
        let c = r[rd];
        let shift = rd - md;
        for (i, &mi) in m.iter().enumerate().take(md + 1) {
            let idx = i + shift;
            r[idx] = (r[idx] + p - (c * mi) % p) % p;
        }
    }
    r.truncate(md);
    r.resize(md, 0);
    r
}

fn code_to_digits(p: u32, k: u32, code: u32) -> Vec<u32> {
    let mut d = Vec::with_capacity(k as usize);
    let mut c = code;
    for _ in 0..k {
        d.push(c % p);
        c /= p;
    }
    d
}

fn digits_to_code(p: u32, d: &[u32]) -> u32 {
    let mut code = 0u32;
    for &c in d.iter().rev() {
        code = code * p + c;
    }
    code
}

/// Irreducibility over GF(p) per the construction contract: a root check
/// always, and full trial division by lower-degree monics when deg <= 6.
fn is_irreducible(p: u32, m: &[u32]) -> bool {
    let k = match poly_deg(m) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if k == 1 {
        return true;
    }
    // root check
    for a in 0..p {
        let mut acc = 0u64;
        for &c in m.iter().rev() {
            acc = (acc * a as u64 + c as u64) % p as u64;
        }
        if acc == 0 {
            return false;
        }
    }
    if k <= 6 {
        // trial division by all monic polynomials of degree 1..k-1
        for d in 1..k {
            let count = (p as u64).pow(d as u32);
            for tail in 0..count {
                let mut divisor = vec![0u32; d + 1];
                let mut t = tail;
                for slot in divisor.iter_mut().take(d) {
                    *slot = (t % p as u64) as u32;
                    t /= p as u64;
                }
                divisor[d] = 1;
                let r = poly_rem(p, m, &divisor);
                if poly_deg(&r).is_none() {
                    return false;
                }
            }
        }
    }
    true
}

fn default_modulus(p: u32, k: u32) -> Result<Vec<u32>> {
    if k == 1 {
        return Ok(vec![0, 1]); // arithmetic is plain mod p
    }
    for &(tp, tk, m) in MODULUS_TABLE {
        if tp == p && tk == k {
            return Ok(m.to_vec());
        }
    }
    // lexicographically smallest monic irreducible of degree k
    let count = (p as u64).pow(k);
    for tail in 0..count {
        let mut m = vec![0u32; k as usize + 1];
        let mut t = tail;
        for slot in m.iter_mut().take(k as usize) {
            *slot = (t % p as u64) as u32;
            t /= p as u64;
        }
        m[k as usize] = 1;
        if is_irreducible(p, &m) {
            return Ok(m);
        }
    }
    Err(Error::BadModulus(format!(
        "no irreducible of degree {k} over GF({p}) found"
    )))
}

impl FieldCtx {
    /// Field with the built-in modulus for (p, k).
    pub fn new(p: u32, k: u32) -> Result<FieldCtx> {
        let modulus = default_modulus(p, k)?;
        Self::with_modulus(p, k, &modulus)
    }

    /// Field for the order q = p^k.
    pub fn of_order(q: u32) -> Result<FieldCtx> {
        let (p, k) = prime_power(q).ok_or(Error::BadFieldSpec(q.to_string()))?;
        Self::new(p, k)
    }

    /// Parse "q" or "p^k", e.g. "64" or "3^2".
    pub fn parse_spec(spec: &str) -> Result<FieldCtx> {
        let spec = spec.trim();
        if let Some((ps, ks)) = spec.split_once('^') {
            let p: u32 = ps
                .trim()
                .parse()
                .map_err(|_| Error::BadFieldSpec(spec.to_string()))?;
            let k: u32 = ks
                .trim()
                .parse()
                .map_err(|_| Error::BadFieldSpec(spec.to_string()))?;
            if k == 0 {
                return Err(Error::BadFieldSpec(spec.to_string()));
            }
            Self::new(p, k)
        } else {
            let q: u32 = spec
                .parse()
                .map_err(|_| Error::BadFieldSpec(spec.to_string()))?;
            Self::of_order(q)
        }
    }

    /// Field with an explicit modulus (little-endian, constant term first).
    pub fn with_modulus(p: u32, k: u32, modulus: &[u32]) -> Result<FieldCtx> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::BadModulus("extension degree must be >= 1".into()));
        }
        let bits = (k as f64 * (p as f64).log2()).ceil() as u32;
        if bits > MAX_FIELD_BITS {
            return Err(Error::FieldTooLarge { p, k });
        }
        if modulus.len() != k as usize + 1
            || modulus[k as usize] != 1
            || modulus.iter().any(|&c| c >= p)
        {
            return Err(Error::BadModulus(format!("{modulus:?}")));
        }
        if !is_irreducible(p, modulus) {
            return Err(Error::BadModulus(format!("{modulus:?} is reducible")));
        }
        let q = (p as u64).pow(k) as u32;
        let mut ctx = FieldCtx {
            p,
            k,
            q,
            modulus: modulus.to_vec(),
            exp: Vec::new(),
            log: Vec::new(),
            add_table: None,
        };
        ctx.build_tables()?;
        if p != 2 && q <= 512 {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = ctx.add_slow(a, b);
                }
            }
            ctx.add_table = Some(t);
        }
        Ok(ctx)
    }

    fn mul_poly_codes(&self, a: u32, b: u32) -> u32 {
        let da = code_to_digits(self.p, self.k, a);
        let db = code_to_digits(self.p, self.k, b);
        let prod = poly_mul(self.p, &da, &db);
        let red = poly_rem(self.p, &prod, &self.modulus);
        digits_to_code(self.p, &red)
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        let da = code_to_digits(self.p, self.k, a);
        let db = code_to_digits(self.p, self.k, b);
        let sum: Vec<u32> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % self.p).collect();
        digits_to_code(self.p, &sum)
    }

    /// Build exp/log tables from the smallest primitive element. A full
    /// period without repeats doubles as an irreducibility sanity check for
    /// degrees where trial division is skipped.
    fn build_tables(&mut self) -> Result<()> {
        let q = self.q;
        if q == 2 {
            self.exp = vec![1];
            self.log = vec![u32::MAX, 0];
            return Ok(());
        }
        'outer: for g in 2..q {
            let mut exp = Vec::with_capacity(q as usize - 1);
            let mut seen = vec![false; q as usize];
            let mut cur = 1u32;
            for _ in 0..q - 1 {
                if cur == 0 || seen[cur as usize] {
                    continue 'outer;
                }
                seen[cur as usize] = true;
                exp.push(cur);
                cur = self.mul_poly_codes(cur, g);
            }
            if cur != 1 {
                continue 'outer;
            }
            let mut log = vec![u32::MAX; q as usize];
            for (i, &v) in exp.iter().enumerate() {
                log[v as usize] = i as u32;
            }
            self.exp = exp;
            self.log = log;
            return Ok(());
        }
        Err(Error::BadModulus(format!(
            "{:?} admits no primitive element; modulus is reducible",
            self.modulus
        )))
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn same_field(&self, other: &FieldCtx) -> bool {
        self == other
    }

    /// Validate a wire code into an element.
    pub fn element(&self, code: u32) -> Result<FieldElement> {
        if code < self.q {
            Ok(FieldElement(code))
        } else {
            Err(Error::InvalidElement { code, q: self.q })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if let Some(t) = &self.add_table {
            return FieldElement(t[(a.0 * self.q + b.0) as usize]);
        }
        FieldElement(self.add_slow(a.0, b.0))
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 {
            return a;
        }
        let d: Vec<u32> = code_to_digits(self.p, self.k, a.0)
            .iter()
            .map(|&c| (self.p - c) % self.p)
            .collect();
        FieldElement(digits_to_code(self.p, &d))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return ZERO;
        }
        let n = self.q - 1;
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        let s = if s >= n { s - n } else { s };
        FieldElement(self.exp[s as usize])
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return ONE;
        }
        if a.0 == 0 {
            return ZERO;
        }
        let mut base = a;
        let mut acc = ONE;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by exponentiation x^(q-2).
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero { q: self.q });
        }
        Ok(self.pow(a, (self.q - 2) as u64))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Frobenius endomorphism x -> x^p.
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.p as u64)
    }

    /// Relative trace to GF(p^m): sum of x^(p^(m*i)) for i = 0..k/m.
    /// The result lies in the subfield image inside this field.
    pub fn relative_trace(&self, x: FieldElement, m: u32) -> Result<FieldElement> {
        if m == 0 || self.k % m != 0 {
            return Err(Error::InvalidSubfield {
                m: (self.p as u64).pow(m) as u32,
                q: self.q,
                sub_k: m,
                k: self.k,
            });
        }
        let step = (self.p as u64).pow(m);
        let mut term = x;
        let mut acc = ZERO;
        for _ in 0..self.k / m {
            acc = self.add(acc, term);
            term = self.pow(term, step);
        }
        Ok(acc)
    }

    /// Absolute trace down to the prime subfield GF(p); the code of the
    /// result is directly an integer in 0..p.
    pub fn absolute_trace(&self, x: FieldElement) -> FieldElement {
        self.relative_trace(x, 1).expect("1 divides k")
    }

    /// Unique square root in characteristic 2: x^(q/2).
    pub fn sqrt_char2(&self, x: FieldElement) -> Result<FieldElement> {
        if self.p != 2 {
            return Err(Error::EvenCharacteristicOnly { p: self.p });
        }
        Ok(self.pow(x, (self.q / 2) as u64))
    }

    /// All z with z^2 + z = c (characteristic 2). Two roots exactly when the
    /// absolute trace of c vanishes, none otherwise; roots come in pairs
    /// {z, z+1}.
    pub fn solve_artin_schreier(&self, c: FieldElement) -> Result<Vec<FieldElement>> {
        if self.p != 2 {
            return Err(Error::EvenCharacteristicOnly { p: self.p });
        }
        let mut roots = Vec::new();
        for z in self.elements() {
            if self.add(self.mul(z, z), z) == c {
                roots.push(z);
            }
        }
        Ok(roots)
    }

    /// Euler criterion, odd q only; 0 counts as a square.
    pub fn is_square(&self, x: FieldElement) -> Result<bool> {
        if self.p == 2 {
            return Err(Error::OddOrderOnly { k: self.k });
        }
        if x.0 == 0 {
            return Ok(true);
        }
        Ok(self.pow(x, ((self.q - 1) / 2) as u64) == ONE)
    }
}

/// Images of every element of `sub` inside `sup`, indexed by code. The
/// embedding sends the class of x in `sub` to the smallest root of `sub`'s
/// modulus in `sup`, so it is reproducible.
pub fn subfield_embedding(sub: &FieldCtx, sup: &FieldCtx) -> Result<Vec<FieldElement>> {
    if sub.p != sup.p || sup.k % sub.k != 0 {
        return Err(Error::InvalidSubfield {
            m: sub.q,
            q: sup.q,
            sub_k: sub.k,
            k: sup.k,
        });
    }
    let root = sup
        .elements()
        .find(|&u| {
            let mut acc = ZERO;
            for &c in sub.modulus.iter().rev() {
                acc = sup.add(sup.mul(acc, u), FieldElement(c));
            }
            acc == ZERO
        })
        .ok_or_else(|| Error::Internal("subfield modulus has no root in superfield".into()))?;
    let mut images = Vec::with_capacity(sub.q as usize);
    for e in 0..sub.q {
        let digits = code_to_digits(sub.p, sub.k, e);
        let mut acc = ZERO;
        for &c in digits.iter().rev() {
            acc = sup.add(sup.mul(acc, root), FieldElement(c));
        }
        images.push(acc);
    }
    Ok(images)
}
