//! Binomial coefficients modulo a prime via base-p digits, together with the
//! small modular-arithmetic helpers used by every closed-form power sum.
//!
//! `binom_mod_p` is a total function: out-of-range index combinations
//! (negative arguments, or k > m) evaluate to zero, because the binomial sums
//! elsewhere in this crate freely produce such indices and treat those terms
//! as absent.

use crate::error::Error;
use crate::gf::PrimePower;
use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

/// a + b mod p.
#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    (a + b) % p
}

/// a - b mod p.
#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b % p) % p
}

/// -a mod p.
#[inline]
pub fn neg_mod(a: u64, p: u64) -> u64 {
    if a.is_multiple_of(p) {
        0
    } else {
        p - a % p
    }
}

/// a * b mod p.
#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// base^exp mod p by square-and-multiply.
pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    if p == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Canonical representative of a signed integer mod p.
#[inline]
pub fn signed_mod(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

/// Little-endian base-p digits of m; empty for m = 0.
pub fn digits_base_p(mut m: u64, p: u64) -> Vec<u64> {
    assert!(p >= 2, "base must be at least 2");
    let mut digits = Vec::new();
    while m > 0 {
        digits.push(m % p);
        m /= p;
    }
    digits
}

// Factorial tables mod p, cached per thread so the digit-wise binomials stay
// O(1) inside the sweep loops.
struct FactTables {
    fact: Vec<u64>,
    inv_fact: Vec<u64>,
}

impl FactTables {
    fn build(p: u64) -> Self {
        let n = p as usize;
        let mut fact = vec![1u64; n];
        for i in 1..n {
            fact[i] = mul_mod(fact[i - 1], i as u64, p);
        }
        let mut inv_fact = vec![1u64; n];
        inv_fact[n - 1] = pow_mod(fact[n - 1], p - 2, p);
        for i in (1..n).rev() {
            inv_fact[i - 1] = mul_mod(inv_fact[i], i as u64, p);
        }
        FactTables { fact, inv_fact }
    }

    /// C(m, k) mod p for 0 <= k <= m < p.
    fn small_binom(&self, m: u64, k: u64, p: u64) -> u64 {
        let t = mul_mod(self.fact[m as usize], self.inv_fact[k as usize], p);
        mul_mod(t, self.inv_fact[(m - k) as usize], p)
    }
}

thread_local! {
    static TABLES: RefCell<HashMap<u64, Rc<FactTables>>> = RefCell::new(HashMap::new());
}

fn tables_for(p: u64) -> Rc<FactTables> {
    TABLES.with(|cell| {
        let mut map = cell.borrow_mut();
        map.entry(p)
            .or_insert_with(|| Rc::new(FactTables::build(p)))
            .clone()
    })
}

/// C(m, k) mod p via the digit-wise product of base-p digit binomials.
///
/// Total on all integer inputs: returns 0 when m < 0, k < 0 or k > m.
/// C(0, 0) = 1.
pub fn binom_mod_p(m: i64, k: i64, p: u64) -> u64 {
    assert!(p >= 2, "modulus must be a prime >= 2");
    if m < 0 || k < 0 || k > m {
        return 0;
    }
    let (mut m, mut k) = (m as u64, k as u64);
    let tables = tables_for(p);
    let mut acc = 1u64;
    while m > 0 || k > 0 {
        let (mi, ki) = (m % p, k % p);
        if ki > mi {
            return 0;
        }
        acc = mul_mod(acc, tables.small_binom(mi, ki, p), p);
        if acc == 0 {
            return 0;
        }
        m /= p;
        k /= p;
    }
    acc
}

/// C(q-1+alpha-v, alpha) mod p for 0 <= alpha, v <= q-1.
///
/// For arguments in range this equals (-1)^alpha * C(v, alpha) mod p; the
/// equality is a test target, not assumed here.
pub fn reflected_binom(pp: &PrimePower, alpha: u64, v: u64) -> Result<u64, Error> {
    let q = pp.q();
    if alpha > q - 1 {
        return Err(Error::RangeError {
            what: "alpha",
            value: alpha,
            lo: 0,
            hi: q - 1,
        });
    }
    if v > q - 1 {
        return Err(Error::RangeError {
            what: "v",
            value: v,
            lo: 0,
            hi: q - 1,
        });
    }
    Ok(binom_mod_p(
        (q - 1 + alpha - v) as i64,
        alpha as i64,
        pp.p(),
    ))
}

/// 1 if (q-1) divides n, else 0. Intended for n >= 1.
pub fn delta_qm1(n: u64, q: u64) -> u64 {
    assert!(q >= 2);
    if n.is_multiple_of(q - 1) {
        1
    } else {
        0
    }
}

/// 2^(-m) mod p for odd p, computed as (2^(p-2))^m.
pub fn inv_pow2(m: u64, p: u64) -> Result<u64, Error> {
    if p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let inv2 = pow_mod(2, p - 2, p);
    Ok(pow_mod(inv2, m, p))
}
