//! Dense univariate polynomials over F_p with exact division, plus the
//! auxiliary polynomial of degree (q-1)^2 whose coefficients encode the first
//! power sums of the reversed Dickson polynomial.
//!
//! The auxiliary polynomial is built two independent ways: as the exact
//! quotient of a rational expression, and from explicit binomial expansions
//! (one per parity of q). Their coefficientwise agreement is a test target.

use crate::error::Error;
use crate::gf::PrimePower;
use crate::lucas::{add_mod, binom_mod_p, mul_mod, neg_mod, pow_mod, sub_mod};

/// Polynomial over F_p, little-endian coefficients, canonical form (no
/// trailing zeros; the zero polynomial has an empty coefficient vector).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyFp {
    p: u64,
    coeffs: Vec<u64>,
}

impl PolyFp {
    /// Reduces coefficients mod p and trims trailing zeros.
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        assert!(p >= 2, "modulus must be a prime >= 2");
        for c in &mut coeffs {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyFp { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        PolyFp::new(p, Vec::new())
    }

    pub fn one(p: u64) -> Self {
        PolyFp::new(p, vec![1])
    }

    /// c * t^deg.
    pub fn monomial(p: u64, c: u64, deg: usize) -> Self {
        let mut coeffs = vec![0; deg + 1];
        coeffs[deg] = c;
        PolyFp::new(p, coeffs)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient of t^i (0 beyond the degree).
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    fn check_same_modulus(&self, other: &Self) {
        assert_eq!(self.p, other.p, "polynomials over different primes");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same_modulus(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = add_mod(self.coeff(i), other.coeff(i), self.p);
        }
        PolyFp::new(self.p, out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_same_modulus(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = sub_mod(self.coeff(i), other.coeff(i), self.p);
        }
        PolyFp::new(self.p, out)
    }

    /// Schoolbook product; O(deg a * deg b), adequate at desk scale.
    pub fn mul(&self, other: &Self) -> Self {
        self.check_same_modulus(other);
        if self.is_zero() || other.is_zero() {
            return PolyFp::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                out[i + j] = add_mod(out[i + j], mul_mod(a, b, self.p), self.p);
            }
        }
        PolyFp::new(self.p, out)
    }

    /// Long division: (quotient, remainder) with deg rem < deg den.
    pub fn div_rem(&self, den: &Self) -> Result<(Self, Self), Error> {
        self.check_same_modulus(den);
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.p;
        let dd = den.coeffs.len() - 1;
        if self.coeffs.len() < den.coeffs.len() {
            return Ok((PolyFp::zero(p), self.clone()));
        }
        let lead_inv = pow_mod(den.coeffs[dd], p - 2, p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k] == 0 {
                continue;
            }
            let f = mul_mod(rem[k], lead_inv, p);
            quot[k - dd] = f;
            for j in 0..=dd {
                rem[k - dd + j] = sub_mod(rem[k - dd + j], mul_mod(f, den.coeffs[j], p), p);
            }
        }
        Ok((PolyFp::new(p, quot), PolyFp::new(p, rem)))
    }

    /// Division that must be exact; the remainder is verified to be zero.
    pub fn exact_div(&self, den: &Self) -> Result<Self, Error> {
        let (q, r) = self.div_rem(den)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision)
        }
    }
}

/// The auxiliary first-power-sum polynomial, built as the exact quotient
///
///   (t - 2)(t^(q^2-1) - 1) / [(t^(q-1) - 1)(t^q - t^(q-1) - 1)]
///
/// over F_p. The quotient is exact and has degree (q-1)^2; its coefficients
/// encode the negated sums of d_n over F_q for 2(q-1) <= n <= q^2-1.
pub fn first_sum_poly_rational(pp: &PrimePower) -> Result<PolyFp, Error> {
    let p = pp.p();
    let q = pp.q() as usize;
    let q2 = q * q;

    // (t - 2) * (t^(q^2-1) - 1)
    let lin = PolyFp::new(p, vec![neg_mod(2, p), 1]);
    let mut c = vec![0u64; q2];
    c[0] = neg_mod(1, p);
    c[q2 - 1] = 1;
    let num = lin.mul(&PolyFp::new(p, c));

    // (t^(q-1) - 1) * (t^q - t^(q-1) - 1)
    let mut c = vec![0u64; q];
    c[0] = neg_mod(1, p);
    c[q - 1] = 1;
    let den_a = PolyFp::new(p, c);
    let mut c = vec![0u64; q + 1];
    c[0] = neg_mod(1, p);
    c[q - 1] = neg_mod(1, p);
    c[q] = 1;
    let den_b = PolyFp::new(p, c);

    let h = num.exact_div(&den_a.mul(&den_b))?;
    assert_eq!(
        h.degree(),
        Some((q - 1) * (q - 1)),
        "quotient degree must be (q-1)^2"
    );
    Ok(h)
}

/// Closed form of the first-power-sum polynomial for even q:
/// the sum over alpha, beta >= 0 with alpha + beta <= q-2 of
/// C(alpha+beta, alpha) * t^((q-1)^2 - (alpha + beta q)), mod 2.
pub fn first_sum_poly_even(pp: &PrimePower) -> Result<PolyFp, Error> {
    if pp.p() != 2 {
        return Err(Error::WrongParity);
    }
    let q = pp.q();
    let top = ((q - 1) * (q - 1)) as usize;
    let mut coeffs = vec![0u64; top + 1];
    for beta in 0..=(q - 2) {
        for alpha in 0..=(q - 2 - beta) {
            let c = binom_mod_p((alpha + beta) as i64, alpha as i64, 2);
            if c != 0 {
                let idx = top - (alpha + beta * q) as usize;
                coeffs[idx] = add_mod(coeffs[idx], c, 2);
            }
        }
    }
    Ok(PolyFp::new(2, coeffs))
}

/// Closed form of the first-power-sum polynomial for odd q:
/// t^((q-1)^2) plus the sum over alpha, beta >= 0 with beta <= q-2 and
/// 0 < alpha + beta <= q-1 of
/// [2^(alpha+beta) C(2(q-1)-alpha-beta, q-1) - C(alpha+beta, alpha)]
/// * t^((q-1)^2 - (alpha + beta q)), mod p.
pub fn first_sum_poly_odd(pp: &PrimePower) -> Result<PolyFp, Error> {
    let p = pp.p();
    if p == 2 {
        return Err(Error::WrongParity);
    }
    let q = pp.q();
    let top = ((q - 1) * (q - 1)) as usize;
    let mut coeffs = vec![0u64; top + 1];
    coeffs[top] = 1;
    for beta in 0..=(q - 2) {
        let lo = if beta == 0 { 1 } else { 0 };
        for alpha in lo..=(q - 1 - beta) {
            let s = alpha + beta;
            let term = sub_mod(
                mul_mod(
                    pow_mod(2, s, p),
                    binom_mod_p((2 * (q - 1) - s) as i64, (q - 1) as i64, p),
                    p,
                ),
                binom_mod_p(s as i64, alpha as i64, p),
                p,
            );
            if term != 0 {
                let idx = top - (alpha + beta * q) as usize;
                coeffs[idx] = add_mod(coeffs[idx], term, p);
            }
        }
    }
    Ok(PolyFp::new(p, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t_poly(p: u64) -> PolyFp {
        PolyFp::monomial(p, 1, 1)
    }

    #[test]
    fn exact_div_examples() {
        // (t^2 - 1) / (t - 1) = t + 1 over F_5
        let num = PolyFp::new(5, vec![4, 0, 1]);
        let den = PolyFp::new(5, vec![4, 1]);
        assert_eq!(num.exact_div(&den).unwrap(), PolyFp::new(5, vec![1, 1]));

        // (t^4 + t) / (t^3 + 1) = t over F_2
        let num = PolyFp::new(2, vec![0, 1, 0, 0, 1]);
        let den = PolyFp::new(2, vec![1, 0, 0, 1]);
        assert_eq!(num.exact_div(&den).unwrap(), t_poly(2));

        // (t^2 + 1) / (t + 1) over F_5 leaves remainder 2
        let num = PolyFp::new(5, vec![1, 0, 1]);
        let den = PolyFp::new(5, vec![1, 1]);
        assert_eq!(num.exact_div(&den), Err(Error::InexactDivision));

        assert_eq!(num.div_rem(&PolyFp::zero(5)), Err(Error::DivisionByZero));
    }

    #[test]
    fn div_rem_reconstructs() {
        let num = PolyFp::new(7, vec![3, 1, 4, 1, 5, 6, 2]);
        let den = PolyFp::new(7, vec![2, 0, 3]);
        let (q, r) = num.div_rem(&den).unwrap();
        assert_eq!(q.mul(&den).add(&r), num);
        assert!(r.degree() < den.degree());
    }

    #[test]
    fn rational_form_small_orders() {
        let h2 = first_sum_poly_rational(&PrimePower::new(2, 1).unwrap()).unwrap();
        assert_eq!(h2, t_poly(2));

        let h3 = first_sum_poly_rational(&PrimePower::new(3, 1).unwrap()).unwrap();
        assert_eq!(h3.degree(), Some(4));

        let h4 = first_sum_poly_rational(&PrimePower::new(2, 2).unwrap()).unwrap();
        assert_eq!(h4.degree(), Some(9));
    }

    #[test]
    fn closed_forms_match_rational() {
        for (p, e) in [(2u64, 1u32), (2, 2), (2, 3)] {
            let pp = PrimePower::new(p, e).unwrap();
            assert_eq!(
                first_sum_poly_even(&pp).unwrap(),
                first_sum_poly_rational(&pp).unwrap(),
                "even q = {}",
                pp.q()
            );
        }
        for (p, e) in [(3u64, 1u32), (5, 1)] {
            let pp = PrimePower::new(p, e).unwrap();
            let closed = first_sum_poly_odd(&pp).unwrap();
            assert_eq!(
                closed,
                first_sum_poly_rational(&pp).unwrap(),
                "odd q = {p}^{e}"
            );
            let top = ((pp.q() - 1) * (pp.q() - 1)) as usize;
            assert_eq!(closed.coeff(top), 1, "leading coefficient");
        }
    }

    #[test]
    fn single_term_sum_for_q2() {
        let pp = PrimePower::new(2, 1).unwrap();
        assert_eq!(first_sum_poly_even(&pp).unwrap(), t_poly(2));
    }

    #[test]
    fn parity_gating() {
        let even = PrimePower::new(2, 2).unwrap();
        let odd = PrimePower::new(3, 1).unwrap();
        assert_eq!(first_sum_poly_even(&odd), Err(Error::WrongParity));
        assert_eq!(first_sum_poly_odd(&even), Err(Error::WrongParity));
    }
}
