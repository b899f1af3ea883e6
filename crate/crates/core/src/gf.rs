//! Finite fields GF(p^e) and their quadratic extensions.
//!
//! A `FieldCtx` owns the modulus and the arithmetic; elements are integer
//! codes `sum(digit_i * base_order^i)` over the base field, so they stay
//! `Copy` and order-stable for I/O. GF(q) is realized directly over F_p with
//! the lexicographically smallest monic irreducible modulus (coefficients
//! compared low-degree-first), and GF(q^2) as a degree-2 extension of GF(q),
//! which keeps the embedding of GF(q) trivial. Both choices are deterministic
//! so runs are reproducible.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::Error;
use crate::lucas::pow_mod;
use crate::poly::PolyFp;

/// Default cap on the base-field order q.
pub const DEFAULT_MAX_ORDER: u64 = 512;

// Absolute cap; keeps q^2 codes and coefficient products inside u64.
const HARD_MAX_ORDER: u64 = 1 << 16;

// Extension degree over the immediate base field: at most 16 over F_2 at the
// hard cap, and always 2 for the quadratic extensions.
const MAX_DEG: usize = 16;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A validated prime power q = p^e within the configured order bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimePower {
    p: u64,
    e: u32,
    q: u64,
}

impl PrimePower {
    pub fn new(p: u64, e: u32) -> Result<Self, Error> {
        Self::with_max_order(p, e, DEFAULT_MAX_ORDER)
    }

    pub fn with_max_order(p: u64, e: u32, max_order: u64) -> Result<Self, Error> {
        let max = max_order.min(HARD_MAX_ORDER);
        if e == 0 {
            return Err(Error::RangeError {
                what: "e",
                value: 0,
                lo: 1,
                hi: 64,
            });
        }
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        let mut q = 1u64;
        for _ in 0..e {
            q = q.saturating_mul(p);
            if q > max {
                return Err(Error::BoundExceeded { q, max });
            }
        }
        Ok(PrimePower { p, e, q })
    }

    /// Factors q; accepts exactly the prime powers within the default bound.
    pub fn from_order(q: u64) -> Result<Self, Error> {
        if q < 2 {
            return Err(Error::NotPrimePower(q));
        }
        let mut p = 2;
        while p * p <= q && !q.is_multiple_of(p) {
            p += 1;
        }
        if !q.is_multiple_of(p) {
            p = q; // q itself is prime
        }
        let mut m = q;
        let mut e = 0u32;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        if m != 1 {
            return Err(Error::NotPrimePower(q));
        }
        Self::new(p, e)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_even(&self) -> bool {
        self.p == 2
    }
}

static NEXT_FIELD_ID: AtomicU64 = AtomicU64::new(1);

/// An element of a specific `FieldCtx`, stored as its integer code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: u64,
    code: u64,
}

impl FieldElement {
    /// Integer code sum(digit_i * base_order^i); the I/O encoding.
    pub fn code(self) -> u64 {
        self.code
    }
}

/// A constructed finite field: either GF(p^e) over the prime field, or a
/// degree-2 extension of another `FieldCtx`.
#[derive(Debug)]
pub struct FieldCtx {
    id: u64,
    base: Option<Arc<FieldCtx>>,
    p: u64,
    base_order: u64,
    degree: usize,
    order: u64,
    // Monic, length degree + 1, coefficients are base-field codes.
    modulus: Vec<u64>,
}

impl FieldCtx {
    /// GF(p^e) over F_p with the deterministic modulus choice.
    pub fn new(p: u64, e: u32) -> Result<Arc<Self>, Error> {
        Ok(Self::for_prime_power(&PrimePower::new(p, e)?))
    }

    pub fn for_prime_power(pp: &PrimePower) -> Arc<Self> {
        let modulus = smallest_irreducible(pp.p, pp.e as usize);
        let ctx = FieldCtx {
            id: NEXT_FIELD_ID.fetch_add(1, Ordering::Relaxed),
            base: None,
            p: pp.p,
            base_order: pp.p,
            degree: pp.e as usize,
            order: pp.q,
            modulus,
        };
        ctx.spot_check();
        Arc::new(ctx)
    }

    /// The degree-2 extension GF(q^2) of `base`, with the lexicographically
    /// smallest monic irreducible quadratic as modulus.
    pub fn quadratic(base: &Arc<FieldCtx>) -> Arc<Self> {
        let modulus = smallest_irreducible_quadratic(base);
        let ctx = FieldCtx {
            id: NEXT_FIELD_ID.fetch_add(1, Ordering::Relaxed),
            base: Some(Arc::clone(base)),
            p: base.p,
            base_order: base.order,
            degree: 2,
            order: base.order * base.order,
            modulus,
        };
        ctx.spot_check();
        Arc::new(ctx)
    }

    fn spot_check(&self) {
        for x in 1..self.order.min(5) {
            assert_eq!(
                self.code_pow(x, self.order - 1),
                1,
                "x^(q-1) != 1: modulus is not irreducible"
            );
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Extension degree over the immediate base field.
    pub fn extension_degree(&self) -> usize {
        self.degree
    }

    /// The immediate base field, if this context is a tower extension.
    pub fn base(&self) -> Option<&Arc<FieldCtx>> {
        self.base.as_ref()
    }

    /// Monic modulus as base-field codes, low degree first.
    pub fn modulus_coeffs(&self) -> &[u64] {
        &self.modulus
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.field == self.id
    }

    #[inline]
    fn check(&self, a: FieldElement) {
        assert_eq!(
            a.field, self.id,
            "element belongs to a different field context"
        );
    }

    pub fn element(&self, code: u64) -> FieldElement {
        assert!(code < self.order, "element code {code} out of range");
        FieldElement {
            field: self.id,
            code,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.element(0)
    }

    pub fn one(&self) -> FieldElement {
        self.element(1)
    }

    /// Image of an integer under the prime-subfield embedding.
    pub fn from_int(&self, k: i64) -> FieldElement {
        self.element(k.rem_euclid(self.p as i64) as u64)
    }

    /// All q elements in ascending code order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(move |code| FieldElement {
            field: self.id,
            code,
        })
    }

    /// Base-field digit vector of `a`, length = extension degree.
    pub fn digits(&self, a: FieldElement) -> Vec<u64> {
        self.check(a);
        let mut buf = [0u64; MAX_DEG];
        self.decode(a.code, &mut buf);
        buf[..self.degree].to_vec()
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        self.element(self.code_add(a.code, b.code))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        self.element(self.code_sub(a.code, b.code))
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.check(a);
        self.element(self.code_neg(a.code))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        self.element(self.code_mul(a.code, b.code))
    }

    /// a^n with 0^0 = 1.
    pub fn pow(&self, a: FieldElement, n: u64) -> FieldElement {
        self.check(a);
        self.element(self.code_pow(a.code, n))
    }

    /// Multiplicative inverse via extended gcd on coefficient polynomials.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, Error> {
        self.check(a);
        match self.code_inv(a.code) {
            Some(c) => Ok(self.element(c)),
            None => Err(Error::DivisionByZero),
        }
    }

    /// Canonical embedding of a base-field element into this extension.
    pub fn lift(&self, a: FieldElement) -> Result<FieldElement, Error> {
        match &self.base {
            Some(base) if base.id == a.field => Ok(FieldElement {
                field: self.id,
                code: a.code,
            }),
            _ => Err(Error::ContextMismatch),
        }
    }

    /// Inverse of `lift`: Some only when `a` lies in the base field.
    pub fn project(&self, a: FieldElement) -> Option<FieldElement> {
        self.check(a);
        let base = self.base.as_ref()?;
        if a.code < self.base_order {
            Some(FieldElement {
                field: base.id,
                code: a.code,
            })
        } else {
            None
        }
    }

    // ---- code-level arithmetic -------------------------------------------

    #[inline]
    fn decode(&self, mut c: u64, out: &mut [u64; MAX_DEG]) {
        for slot in out.iter_mut().take(self.degree) {
            *slot = c % self.base_order;
            c /= self.base_order;
        }
    }

    #[inline]
    fn encode(&self, digits: &[u64]) -> u64 {
        let mut c = 0u64;
        for i in (0..self.degree).rev() {
            c = c * self.base_order + digits[i];
        }
        c
    }

    // Coefficient (base-field code) operations.
    #[inline]
    fn cadd(&self, a: u64, b: u64) -> u64 {
        match &self.base {
            None => {
                let s = a + b;
                if s >= self.p {
                    s - self.p
                } else {
                    s
                }
            }
            Some(f) => f.code_add(a, b),
        }
    }

    #[inline]
    fn cneg(&self, a: u64) -> u64 {
        match &self.base {
            None => {
                if a == 0 {
                    0
                } else {
                    self.p - a
                }
            }
            Some(f) => f.code_neg(a),
        }
    }

    #[inline]
    fn csub(&self, a: u64, b: u64) -> u64 {
        self.cadd(a, self.cneg(b))
    }

    #[inline]
    fn cmul(&self, a: u64, b: u64) -> u64 {
        match &self.base {
            None => a * b % self.p,
            Some(f) => f.code_mul(a, b),
        }
    }

    #[inline]
    fn cinv(&self, a: u64) -> u64 {
        match &self.base {
            None => pow_mod(a, self.p - 2, self.p),
            Some(f) => f.code_inv(a).expect("inverse of nonzero coefficient"),
        }
    }

    pub(crate) fn code_add(&self, a: u64, b: u64) -> u64 {
        let mut av = [0u64; MAX_DEG];
        let mut bv = [0u64; MAX_DEG];
        self.decode(a, &mut av);
        self.decode(b, &mut bv);
        for i in 0..self.degree {
            av[i] = self.cadd(av[i], bv[i]);
        }
        self.encode(&av)
    }

    pub(crate) fn code_neg(&self, a: u64) -> u64 {
        let mut av = [0u64; MAX_DEG];
        self.decode(a, &mut av);
        for d in av.iter_mut().take(self.degree) {
            *d = self.cneg(*d);
        }
        self.encode(&av)
    }

    pub(crate) fn code_sub(&self, a: u64, b: u64) -> u64 {
        self.code_add(a, self.code_neg(b))
    }

    pub(crate) fn code_mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let d = self.degree;
        let mut av = [0u64; MAX_DEG];
        let mut bv = [0u64; MAX_DEG];
        self.decode(a, &mut av);
        self.decode(b, &mut bv);
        let mut prod = [0u64; 2 * MAX_DEG];
        for i in 0..d {
            if av[i] == 0 {
                continue;
            }
            for j in 0..d {
                if bv[j] == 0 {
                    continue;
                }
                prod[i + j] = self.cadd(prod[i + j], self.cmul(av[i], bv[j]));
            }
        }
        // Reduce by the monic modulus, top down.
        for k in (d..=2 * (d.max(1) - 1)).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for j in 0..d {
                if self.modulus[j] != 0 {
                    prod[k - d + j] = self.csub(prod[k - d + j], self.cmul(c, self.modulus[j]));
                }
            }
        }
        self.encode(&prod[..MAX_DEG])
    }

    pub(crate) fn code_pow(&self, a: u64, mut n: u64) -> u64 {
        let mut acc = 1u64;
        let mut base = a;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.code_mul(acc, base);
            }
            base = self.code_mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// None for zero; otherwise the inverse by extended gcd against the
    /// modulus on coefficient polynomials.
    pub(crate) fn code_inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let d = self.degree;

        fn deg_of(v: &[u64; MAX_DEG + 1]) -> Option<usize> {
            v.iter().rposition(|&c| c != 0)
        }

        let mut r0 = [0u64; MAX_DEG + 1];
        r0[..=d].copy_from_slice(&self.modulus);
        let mut r1 = [0u64; MAX_DEG + 1];
        {
            let mut av = [0u64; MAX_DEG];
            self.decode(a, &mut av);
            r1[..MAX_DEG].copy_from_slice(&av);
        }
        let mut t0 = [0u64; MAX_DEG + 1];
        let mut t1 = [0u64; MAX_DEG + 1];
        t1[0] = 1;

        while let Some(d1) = deg_of(&r1) {
            let lead_inv = self.cinv(r1[d1]);
            while let Some(d0) = deg_of(&r0) {
                if d0 < d1 {
                    break;
                }
                let f = self.cmul(r0[d0], lead_inv);
                let shift = d0 - d1;
                for j in 0..=d1 {
                    r0[j + shift] = self.csub(r0[j + shift], self.cmul(f, r1[j]));
                }
                for j in 0..=(MAX_DEG - shift) {
                    if t1[j] != 0 {
                        t0[j + shift] = self.csub(t0[j + shift], self.cmul(f, t1[j]));
                    }
                }
            }
            std::mem::swap(&mut r0, &mut r1);
            std::mem::swap(&mut t0, &mut t1);
        }

        // gcd(a, modulus) is a nonzero constant because the modulus is
        // irreducible and a != 0.
        debug_assert_eq!(deg_of(&r0), Some(0));
        let scale = self.cinv(r0[0]);
        let mut out = [0u64; MAX_DEG];
        for j in 0..d {
            out[j] = self.cmul(t0[j], scale);
        }
        Some(self.encode(&out))
    }
}

/// Lexicographically smallest monic irreducible of degree e over F_p,
/// coefficient tuples (c0, ..., c_{e-1}) compared low-degree-first.
fn smallest_irreducible(p: u64, e: usize) -> Vec<u64> {
    let total = p.pow(e as u32);
    'candidates: for idx in 0..total {
        let mut coeffs = vec![0u64; e + 1];
        coeffs[e] = 1;
        let mut rem = idx;
        // c0 varies slowest so the scan respects the lexicographic order.
        for i in (0..e).rev() {
            coeffs[i] = rem % p;
            rem /= p;
        }
        let cand = PolyFp::new(p, coeffs.clone());
        for d in 1..=(e / 2) {
            for gidx in 0..p.pow(d as u32) {
                let mut g = vec![0u64; d + 1];
                g[d] = 1;
                let mut rem = gidx;
                for slot in g.iter_mut().take(d) {
                    *slot = rem % p;
                    rem /= p;
                }
                let (_, r) = cand
                    .div_rem(&PolyFp::new(p, g))
                    .expect("monic divisor is nonzero");
                if r.is_zero() {
                    continue 'candidates;
                }
            }
        }
        return coeffs;
    }
    unreachable!("an irreducible polynomial exists for every degree")
}

/// Lexicographically smallest monic irreducible quadratic over `base`,
/// checked by exhaustive root scan (degree 2: root-free means irreducible).
fn smallest_irreducible_quadratic(base: &FieldCtx) -> Vec<u64> {
    let q = base.order;
    for c0 in 0..q {
        'next: for c1 in 0..q {
            for x in 0..q {
                let v = base.code_add(base.code_mul(x, x), base.code_add(base.code_mul(c1, x), c0));
                if v == 0 {
                    continue 'next;
                }
            }
            return vec![c0, c1, 1];
        }
    }
    unreachable!("an irreducible quadratic exists over every finite field")
}
