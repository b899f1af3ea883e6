//! Verification suites driven by `dickson verify`: each one sweeps a set of
//! field orders, counts cases and failures, and keeps the first
//! counterexample (ordered by qset position, then sweep index).

use rayon::prelude::*;

use dickson_core::gf::PrimePower;
use dickson_core::lucas::{binom_mod_p, neg_mod, reflected_binom};
use dickson_core::poly::{first_sum_poly_even, first_sum_poly_odd, first_sum_poly_rational};
use dickson_core::rdp::{cube_residual, eval_recurrence, reduce_index, PairTable};
use dickson_core::search::{search_desirable, Verdict};
use dickson_core::sums::{
    cube_sum_closed, first_sum_closed, part_i, part_i_cases, part_ii, part_ii_cases, part_iii,
    part_iii_cases, power_sum_oracle, weighted_sum_cases_even, weighted_sum_closed,
    weighted_sum_closed_even, weighted_sum_oracle,
};

use crate::report::{Counterexample, SuiteOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteKind {
    Identities,
    SumPoly,
    Sums,
    Cases,
    Filters,
    Evaluators,
}

impl SuiteKind {
    pub fn name(self) -> &'static str {
        match self {
            SuiteKind::Identities => "identities",
            SuiteKind::SumPoly => "h",
            SuiteKind::Sums => "sums",
            SuiteKind::Cases => "cases",
            SuiteKind::Filters => "filters",
            SuiteKind::Evaluators => "evaluators",
        }
    }
}

pub const ALL_SUITES: [SuiteKind; 6] = [
    SuiteKind::Identities,
    SuiteKind::SumPoly,
    SuiteKind::Sums,
    SuiteKind::Cases,
    SuiteKind::Filters,
    SuiteKind::Evaluators,
];

/// Maps a `--suite` value to the suites it selects.
pub fn parse_suite(name: &str) -> Result<Vec<SuiteKind>, String> {
    match name {
        "all" => Ok(ALL_SUITES.to_vec()),
        "identities" => Ok(vec![SuiteKind::Identities]),
        "h" => Ok(vec![SuiteKind::SumPoly]),
        "sums" => Ok(vec![SuiteKind::Sums]),
        "cases" => Ok(vec![SuiteKind::Cases]),
        "filters" => Ok(vec![SuiteKind::Filters]),
        "evaluators" => Ok(vec![SuiteKind::Evaluators]),
        other => Err(format!(
            "unknown suite '{other}' (expected identities, h, sums, cases, filters, evaluators or all)"
        )),
    }
}

pub fn run_suites(kinds: &[SuiteKind], qset: &[PrimePower]) -> Vec<SuiteOutcome> {
    kinds.iter().map(|&k| run_suite(k, qset)).collect()
}

fn run_suite(kind: SuiteKind, qset: &[PrimePower]) -> SuiteOutcome {
    let (cases, fails) = match kind {
        SuiteKind::Identities => suite_identities(qset),
        SuiteKind::SumPoly => suite_sum_poly(qset),
        SuiteKind::Sums => suite_sums(qset),
        SuiteKind::Cases => suite_cases(qset),
        SuiteKind::Filters => suite_filters(qset),
        SuiteKind::Evaluators => suite_evaluators(qset),
    };
    SuiteOutcome {
        suite: kind.name().to_string(),
        cases,
        failures: fails.len() as u64,
        first_counterexample: fails.into_iter().next(),
    }
}

struct Xorshift(u64);

impl Xorshift {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }
}

const SAMPLED_CUBE_CASES: u64 = 10_000;

// Binomial reflection identity on the full (alpha, v) grid, plus the cube
// identity residual (exhaustive for q <= 16, sampled above).
fn suite_identities(qset: &[PrimePower]) -> (u64, Vec<Counterexample>) {
    let mut cases = 0u64;
    let mut fails = Vec::new();
    for pw in qset {
        let q = pw.q();
        let p = pw.p();
        let grid: Vec<Counterexample> = (0..q * q)
            .into_par_iter()
            .filter_map(|idx| {
                let (alpha, v) = (idx / q, idx % q);
                let lhs = reflected_binom(pw, alpha, v).unwrap();
                let base = binom_mod_p(v as i64, alpha as i64, p);
                let rhs = if alpha % 2 == 0 {
                    base
                } else {
                    neg_mod(base, p)
                };
                (lhs != rhs).then(|| Counterexample {
                    q,
                    n: idx,
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                })
            })
            .collect();
        cases += q * q;
        fails.extend(grid);

        let table = PairTable::for_prime_power(pw);
        if q <= 16 {
            let res: Vec<Counterexample> = (1..=q * q - 1)
                .into_par_iter()
                .filter_map(|n| {
                    table.ctx_q().elements().find_map(|a| {
                        let r = cube_residual(&table, n, a);
                        (r.code() != 0).then(|| Counterexample {
                            q,
                            n,
                            lhs: r.code().to_string(),
                            rhs: "0".to_string(),
                        })
                    })
                })
                .collect();
            cases += (q * q - 1) * q;
            fails.extend(res);
        } else {
            let mut rng = Xorshift(0x9e3779b97f4a7c15 ^ q);
            for _ in 0..SAMPLED_CUBE_CASES {
                let n = 1 + rng.next() % (q * q - 1);
                let a = table.ctx_q().element(rng.next() % q);
                let r = cube_residual(&table, n, a);
                if r.code() != 0 {
                    fails.push(Counterexample {
                        q,
                        n,
                        lhs: r.code().to_string(),
                        rhs: "0".to_string(),
                    });
                }
            }
            cases += SAMPLED_CUBE_CASES;
        }
    }
    (cases, fails)
}

// First-power-sum polynomial: parity closed form vs exact rational quotient,
// coefficientwise, plus the degree check.
fn suite_sum_poly(qset: &[PrimePower]) -> (u64, Vec<Counterexample>) {
    let mut cases = 0u64;
    let mut fails = Vec::new();
    for pw in qset {
        let q = pw.q();
        let rational = first_sum_poly_rational(pw).unwrap();
        let closed = if pw.is_even() {
            first_sum_poly_even(pw).unwrap()
        } else {
            first_sum_poly_odd(pw).unwrap()
        };
        cases += 1;
        if closed != rational {
            let top = ((q - 1) * (q - 1)) as usize;
            let i = (0..=top)
                .find(|&i| closed.coeff(i) != rational.coeff(i))
                .unwrap_or(top);
            fails.push(Counterexample {
                q,
                n: i as u64,
                lhs: closed.coeff(i).to_string(),
                rhs: rational.coeff(i).to_string(),
            });
        } else if closed.degree() != Some(((q - 1) * (q - 1)) as usize) {
            fails.push(Counterexample {
                q,
                n: 0,
                lhs: format!("{:?}", closed.degree()),
                rhs: format!("{}", (q - 1) * (q - 1)),
            });
        }
    }
    (cases, fails)
}

// Closed forms vs brute-force oracles: one case per index n covering the
// first, weighted and cube sums together.
fn suite_sums(qset: &[PrimePower]) -> (u64, Vec<Counterexample>) {
    let mut cases = 0u64;
    let mut fails = Vec::new();
    for pw in qset {
        let q = pw.q();
        let table = PairTable::for_prime_power(pw);
        let hi = if pw.is_even() { q * q - 1 } else { q * q - 2 };
        let local: Vec<Counterexample> = (1..=hi)
            .into_par_iter()
            .filter_map(|n| {
                let checks = [
                    (
                        first_sum_closed(pw, n).unwrap(),
                        power_sum_oracle(&table, n, 1).code(),
                    ),
                    (
                        weighted_sum_closed(pw, n).unwrap(),
                        weighted_sum_oracle(&table, n).code(),
                    ),
                    (
                        cube_sum_closed(pw, n).unwrap(),
                        power_sum_oracle(&table, n, 3).code(),
                    ),
                ];
                checks.iter().find_map(|&(closed, oracle)| {
                    (closed != oracle).then(|| Counterexample {
                        q,
                        n,
                        lhs: closed.to_string(),
                        rhs: oracle.to_string(),
                    })
                })
            })
            .collect();
        cases += hi;
        fails.extend(local);
    }
    (cases, fails)
}

// Specialized case formulas vs the general window forms on their
// (u, v) windows.
fn suite_cases(qset: &[PrimePower]) -> (u64, Vec<Counterexample>) {
    let mut cases = 0u64;
    let mut fails = Vec::new();
    for pw in qset {
        let q = pw.q();
        if !pw.is_even() && q <= 3 {
            continue; // the odd case split only applies for q > 3
        }
        for u in 0..q {
            for v in 0..q {
                let uv = u + v;
                let n = u + v * q;
                if uv == 0 || uv >= 2 * (q - 1) {
                    continue;
                }
                if pw.is_even() {
                    let lhs = weighted_sum_cases_even(pw, u, v).unwrap();
                    let rhs = weighted_sum_closed_even(pw, n).unwrap();
                    cases += 1;
                    if lhs != rhs {
                        fails.push(Counterexample {
                            q,
                            n,
                            lhs: lhs.to_string(),
                            rhs: rhs.to_string(),
                        });
                    }
                } else {
                    if n > q * q - 2 {
                        continue;
                    }
                    let pairs = [
                        (part_i_cases(pw, u, v).unwrap(), part_i(pw, u, v).unwrap()),
                        (part_ii_cases(pw, u, v).unwrap(), part_ii(pw, u, v).unwrap()),
                        (
                            part_iii_cases(pw, u, v).unwrap(),
                            part_iii(pw, u, v).unwrap(),
                        ),
                    ];
                    cases += 3;
                    for &(lhs, rhs) in &pairs {
                        if lhs != rhs {
                            fails.push(Counterexample {
                                q,
                                n,
                                lhs: lhs.to_string(),
                                rhs: rhs.to_string(),
                            });
                        }
                    }
                }
            }
        }
    }
    (cases, fails)
}

// Verification-mode search: every filter failure must be a brute-force
// non-permutation, and the identity verdict must agree with the vanishing
// of the closed cube sum.
fn suite_filters(qset: &[PrimePower]) -> (u64, Vec<Counterexample>) {
    let mut cases = 0u64;
    let mut fails = Vec::new();
    for pw in qset {
        let table = PairTable::for_prime_power(pw);
        let out = search_desirable(&table, false);
        for r in &out.records {
            cases += 1;
            if r.is_permutation && r.filter_verdict.is_fail() {
                fails.push(Counterexample {
                    q: r.q,
                    n: r.n,
                    lhs: format!("verdict={}", r.filter_verdict.as_str()),
                    rhs: "permutation".to_string(),
                });
                continue;
            }
            let agree = match r.filter_verdict {
                Verdict::Pass => r.cube_sum == 0,
                Verdict::FailIdentity => r.cube_sum != 0,
                _ => true,
            };
            if !agree {
                fails.push(Counterexample {
                    q: r.q,
                    n: r.n,
                    lhs: format!("verdict={}", r.filter_verdict.as_str()),
                    rhs: format!("cube_sum={}", r.cube_sum),
                });
            }
        }
    }
    (cases, fails)
}

const RECURRENCE_LIMIT: u64 = 500;

// Functional-equation evaluator vs the linear recurrence, plus periodicity
// and stability of the index under multiplication by q.
fn suite_evaluators(qset: &[PrimePower]) -> (u64, Vec<Counterexample>) {
    let mut cases = 0u64;
    let mut fails = Vec::new();
    for pw in qset {
        let q = pw.q();
        let table = PairTable::for_prime_power(pw);
        let ctx = table.ctx_q().clone();

        let rec: Vec<Counterexample> = (0..=RECURRENCE_LIMIT)
            .into_par_iter()
            .filter_map(|n| {
                ctx.elements().find_map(|a| {
                    let fast = table.eval(n, a).unwrap();
                    let slow = eval_recurrence(&ctx, n, a);
                    (fast != slow).then(|| Counterexample {
                        q,
                        n,
                        lhs: fast.code().to_string(),
                        rhs: slow.code().to_string(),
                    })
                })
            })
            .collect();
        cases += (RECURRENCE_LIMIT + 1) * q;
        fails.extend(rec);

        let period = q * q - 1;
        let stab: Vec<Counterexample> = (1..=period)
            .into_par_iter()
            .filter_map(|n| {
                ctx.elements().find_map(|a| {
                    let base = table.eval(n, a).unwrap();
                    let shifted = table.eval(n + period, a).unwrap();
                    if shifted != base {
                        return Some(Counterexample {
                            q,
                            n,
                            lhs: shifted.code().to_string(),
                            rhs: base.code().to_string(),
                        });
                    }
                    let frob = table.eval(reduce_index(n * q, q), a).unwrap();
                    (frob != base).then(|| Counterexample {
                        q,
                        n,
                        lhs: frob.code().to_string(),
                        rhs: base.code().to_string(),
                    })
                })
            })
            .collect();
        cases += 2 * period * q;
        fails.extend(stab);
    }
    (cases, fails)
}

#[cfg(test)]
mod tests {
    use super::*;
    use dickson_core::sums::{uv_decompose, IndexPair};

    fn pws(qs: &[u64]) -> Vec<PrimePower> {
        qs.iter()
            .map(|&q| PrimePower::from_order(q).unwrap())
            .collect()
    }

    #[test]
    fn all_suites_pass_small_qset() {
        let qset = pws(&[2, 3, 4, 5]);
        for outcome in run_suites(&ALL_SUITES, &qset) {
            assert_eq!(outcome.failures, 0, "suite {}", outcome.suite);
            assert!(outcome.cases > 0);
        }
    }

    #[test]
    fn sums_suite_case_count_matches_grid() {
        let outcome = run_suite(SuiteKind::Sums, &pws(&[5]));
        assert_eq!(outcome.cases, 23);
        let outcome = run_suite(SuiteKind::Sums, &pws(&[4]));
        assert_eq!(outcome.cases, 15);
    }

    #[test]
    fn suite_parsing() {
        assert_eq!(parse_suite("all").unwrap().len(), 6);
        assert_eq!(parse_suite("h").unwrap(), vec![SuiteKind::SumPoly]);
        assert!(parse_suite("bogus").is_err());
    }

    #[test]
    fn uv_windows_cover_every_index() {
        // Guard: the (u, v) loops in suite_cases enumerate each n once.
        let q = 8u64;
        let mut seen = std::collections::HashSet::new();
        for u in 0..q {
            for v in 0..q {
                let n = u + v * q;
                if n == 0 {
                    continue;
                }
                let IndexPair { u: uu, v: vv } = uv_decompose(n, q).unwrap();
                assert_eq!((uu, vv), (u, v));
                assert!(seen.insert(n));
            }
        }
    }
}
