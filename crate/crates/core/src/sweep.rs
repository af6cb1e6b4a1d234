//! The standard parameter sweep used by the test and verification suites:
//! `X` with `p in {2,3}`, `a in {1,2}`, `b | a`, `n in {3,5}`; `Y` with
//! `q in {2,3,4}`, `n in {3,5}`; every admissible `s` with `M <= 500`.

use crate::curve::{derive, validate_params, CurveParams, RawParams};

pub const MAX_M_CONSTANT: i64 = 500;

/// All admissible sweep instances, in a fixed order. Divisors `s` that give
/// genus zero are skipped.
pub fn instances() -> Vec<CurveParams> {
    let mut out = Vec::new();
    for p in [2i64, 3] {
        for a in [1i64, 2] {
            for b in (1..=a).filter(|b| a % b == 0) {
                for n in [3i64, 5] {
                    let q = p.pow(a as u32);
                    for s in divisors((q.pow(n as u32) + 1) / (q + 1)) {
                        push_if_valid(&mut out, RawParams::X { p, a, b, n, s });
                    }
                }
            }
        }
    }
    for q in [2i64, 3, 4] {
        for n in [3i64, 5] {
            for s in divisors((q.pow(n as u32) + 1) / (q + 1)) {
                push_if_valid(&mut out, RawParams::Y { q, n, s });
            }
        }
    }
    out
}

/// Sweep instances whose genus is at most `max_genus`.
pub fn instances_with_genus_at_most(max_genus: i64) -> Vec<CurveParams> {
    instances()
        .into_iter()
        .filter(|p| derive(p).map(|dc| dc.genus <= max_genus).unwrap_or(false))
        .collect()
}

fn push_if_valid(out: &mut Vec<CurveParams>, raw: RawParams) {
    if let Ok(params) = validate_params(raw) {
        if derive(&params)
            .map(|dc| dc.big_m <= MAX_M_CONSTANT)
            .unwrap_or(false)
        {
            out.push(params);
        }
    }
}

fn divisors(n: i64) -> Vec<i64> {
    (1..=n).filter(|d| n % d == 0).collect()
}
