//! Evaluation of the reversed Dickson polynomial d_n = D_n(1, .) over F_q.
//!
//! Every a in F_q can be written as x(1-x) for some x in GF(q^2): the monic
//! quadratic T^2 - T + a splits there. Fixing one root x per a turns d_n(a)
//! into x^n + (1-x)^n, evaluated with O(log n) multiplications. The value is
//! symmetric in x and 1-x, so keeping the first root found under the
//! deterministic element enumeration is safe. A linear-time recurrence
//! evaluator serves as the independent oracle.

use std::sync::Arc;

use crate::error::Error;
use crate::gf::{FieldCtx, FieldElement, PrimePower};

/// For each a in F_q (indexed by code) one pair (x, 1-x) in GF(q^2) with
/// x(1-x) = a.
pub struct PairTable {
    pp: PrimePower,
    ctx_q: Arc<FieldCtx>,
    ctx_q2: Arc<FieldCtx>,
    pairs: Vec<(FieldElement, FieldElement)>,
}

impl PairTable {
    /// Builds the table by a single enumeration of GF(q^2). `ctx_q` must be a
    /// prime-base context and `ctx_q2` its quadratic extension.
    pub fn build(ctx_q: &Arc<FieldCtx>, ctx_q2: &Arc<FieldCtx>) -> Result<Self, Error> {
        if ctx_q.base().is_some() {
            return Err(Error::ContextMismatch);
        }
        match ctx_q2.base() {
            Some(b) if Arc::ptr_eq(b, ctx_q) => {}
            _ => return Err(Error::ContextMismatch),
        }
        let pp = PrimePower::with_max_order(
            ctx_q.characteristic(),
            ctx_q.extension_degree() as u32,
            ctx_q.order(),
        )
        .expect("prime-base context parameters are a valid prime power");

        let q = ctx_q.order();
        let one = ctx_q2.one();
        let mut slots: Vec<Option<(FieldElement, FieldElement)>> = vec![None; q as usize];
        let mut found = 0u64;
        for x in ctx_q2.elements() {
            let y = ctx_q2.sub(one, x);
            if let Some(a) = ctx_q2.project(ctx_q2.mul(x, y)) {
                let slot = &mut slots[a.code() as usize];
                if slot.is_none() {
                    *slot = Some((x, y));
                    found += 1;
                    if found == q {
                        break;
                    }
                }
            }
        }
        assert_eq!(found, q, "every a in F_q arises as x(1-x) over GF(q^2)");
        Ok(PairTable {
            pp,
            ctx_q: Arc::clone(ctx_q),
            ctx_q2: Arc::clone(ctx_q2),
            pairs: slots.into_iter().map(|s| s.unwrap()).collect(),
        })
    }

    /// Constructs GF(q), GF(q^2) and the table in one step.
    pub fn for_prime_power(pp: &PrimePower) -> Self {
        let ctx_q = FieldCtx::for_prime_power(pp);
        let ctx_q2 = FieldCtx::quadratic(&ctx_q);
        Self::build(&ctx_q, &ctx_q2).expect("freshly built tower")
    }

    pub fn prime_power(&self) -> &PrimePower {
        &self.pp
    }

    pub fn ctx_q(&self) -> &Arc<FieldCtx> {
        &self.ctx_q
    }

    pub fn ctx_q2(&self) -> &Arc<FieldCtx> {
        &self.ctx_q2
    }

    pub fn q(&self) -> u64 {
        self.ctx_q.order()
    }

    /// The stored pair (x, 1-x) for a.
    pub fn root_pair(&self, a: FieldElement) -> (FieldElement, FieldElement) {
        assert!(self.ctx_q.contains(a), "a must lie in F_q");
        self.pairs[a.code() as usize]
    }

    /// d_n(a) via x^n + (1-x)^n in GF(q^2); d_0 = 2. The result always lies
    /// in the base field for a well-formed table.
    pub fn eval(&self, n: u64, a: FieldElement) -> Result<FieldElement, Error> {
        assert!(self.ctx_q.contains(a), "a must lie in F_q");
        if n == 0 {
            return Ok(self.ctx_q.from_int(2));
        }
        let (x, y) = self.pairs[a.code() as usize];
        let r = self
            .ctx_q2
            .add(self.ctx_q2.pow(x, n), self.ctx_q2.pow(y, n));
        self.ctx_q2.project(r).ok_or(Error::NotInBaseField)
    }

    /// Code-level convenience for sweep loops.
    pub fn eval_by_code(&self, n: u64, a_code: u64) -> u64 {
        self.eval(n, self.ctx_q.element(a_code))
            .expect("d_n(a) lies in the base field")
            .code()
    }
}

/// d_n(a) by the linear recurrence d_0 = 2, d_1 = 1,
/// d_k = d_{k-1} - a * d_{k-2}. O(n); oracle only.
pub fn eval_recurrence(ctx: &FieldCtx, n: u64, a: FieldElement) -> FieldElement {
    let mut prev = ctx.from_int(2);
    let mut cur = ctx.one();
    if n == 0 {
        return prev;
    }
    for _ in 2..=n {
        let next = ctx.sub(cur, ctx.mul(a, prev));
        prev = cur;
        cur = next;
    }
    cur
}

/// Canonical representative of n in [1, q^2-1]; d_n on F_q is invariant
/// under this reduction because x^(q^2-1) = 1 for nonzero x in GF(q^2).
pub fn reduce_index(n: u64, q: u64) -> u64 {
    assert!(n >= 1, "index must be positive");
    let period = q * q - 1;
    ((n - 1) % period) + 1
}

/// d_n(a)^3 - d_{3n}(a) - 3 a^n d_n(a), with 3n reduced into range first.
/// Identically zero; the cube identity is a test target.
pub fn cube_residual(table: &PairTable, n: u64, a: FieldElement) -> FieldElement {
    assert!(n >= 1, "index must be positive");
    let ctx = table.ctx_q();
    let d = table.eval(n, a).expect("d_n(a) lies in the base field");
    let d3n = table
        .eval(reduce_index(3 * n, table.q()), a)
        .expect("d_3n(a) lies in the base field");
    let weighted = ctx.mul(ctx.from_int(3), ctx.mul(ctx.pow(a, n), d));
    ctx.sub(ctx.sub(ctx.pow(d, 3), d3n), weighted)
}
