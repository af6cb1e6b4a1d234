//! Gaps and pure gaps of `H(P_inf, P_1, ..., P_m)`.
//!
//! Two routes are provided for each set: one from the relative maximal
//! elements `Λ`, one by scanning the simplex `sum alpha <= 2g - 1` with the
//! membership engine. Every gap lies in that simplex because any nonnegative
//! vector of degree at least `2g` belongs to `H`.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::for_each_bounded_composition;
use crate::curve::{DerivedConstants, PointVector};
use crate::error::{Error, Result};
use crate::maximal::enumerate_classical_lambda;
use crate::membership::Membership;
use crate::semigroup::NumericalSemigroup;

/// Gap and pure-gap sets for one `(curve, m)` together with the outcome of
/// comparing the independent routes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapReport {
    pub gaps: BTreeSet<PointVector>,
    pub pure_gaps: BTreeSet<PointVector>,
    pub gap_count: usize,
    pub pure_gap_count: usize,
    pub cross_checks: BTreeMap<String, bool>,
}

impl GapReport {
    pub fn all_checks_pass(&self) -> bool {
        self.cross_checks.values().all(|&ok| ok)
    }
}

/// Largest degree a gap can have.
pub fn simplex_bound(dc: &DerivedConstants) -> i64 {
    2 * dc.genus - 1
}

/// Every `alpha in N_0^{m+1}` with `sum alpha <= bound` accepted by `keep`,
/// partitioned over `alpha_0` for parallelism.
pub(crate) fn scan_simplex<F>(m: usize, bound: i64, keep: F) -> BTreeSet<PointVector>
where
    F: Fn(&[i64]) -> bool + Sync,
{
    let chunks: Vec<Vec<PointVector>> = (0..=bound)
        .into_par_iter()
        .map(|a0| {
            let mut out = Vec::new();
            let mut v = vec![0; m + 1];
            v[0] = a0;
            for_each_bounded_composition(m, bound - a0, |rest| {
                v[1..].copy_from_slice(rest);
                if keep(&v) {
                    out.push(PointVector::new(v.clone()));
                }
            });
            out
        })
        .collect();
    chunks.into_iter().flatten().collect()
}

/// Number of simplex points accepted by `keep`.
pub(crate) fn count_simplex<F>(m: usize, bound: i64, keep: F) -> u64
where
    F: Fn(&[i64]) -> bool + Sync,
{
    (0..=bound)
        .into_par_iter()
        .map(|a0| {
            let mut count = 0u64;
            let mut v = vec![0; m + 1];
            v[0] = a0;
            for_each_bounded_composition(m, bound - a0, |rest| {
                v[1..].copy_from_slice(rest);
                count += u64::from(keep(&v));
            });
            count
        })
        .sum()
}

/// Calls `f` on every `alpha in N_0^{m+1}` with `alpha_r = beta_r` and
/// `alpha_j < beta_j` for `j != r`.
fn for_each_in_open_box(beta: &PointVector, r: usize, mut f: impl FnMut(&[i64])) {
    let len = beta.len();
    if beta[r] < 0 || (0..len).any(|j| j != r && beta[j] <= 0) {
        return;
    }
    let mut v = vec![0i64; len];
    v[r] = beta[r];
    loop {
        f(&v);
        let mut pos = len;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            if pos == r {
                continue;
            }
            if v[pos] + 1 < beta[pos] {
                v[pos] += 1;
                break;
            }
            v[pos] = 0;
        }
    }
}

/// Union over `beta in Λ` of the open boxes below `beta` that share one
/// coordinate with it.
pub fn gaps_via_lambda(dc: &DerivedConstants, m: usize) -> Result<BTreeSet<PointVector>> {
    let lambda = enumerate_classical_lambda(dc, m)?;
    let mut out = BTreeSet::new();
    for beta in &lambda {
        for r in 0..=m {
            for_each_in_open_box(beta, r, |v| {
                out.insert(PointVector::new(v.to_vec()));
            });
        }
    }
    Ok(out)
}

/// `{alpha in N_0^{m+1} : sum alpha <= 2g - 1, alpha not in H}`.
pub fn gaps_via_complement(dc: &DerivedConstants, m: usize) -> Result<BTreeSet<PointVector>> {
    gaps_in_simplex(dc, m, simplex_bound(dc))
}

/// Non-members of `H` with `sum alpha <= bound`.
pub fn gaps_in_simplex(
    dc: &DerivedConstants,
    m: usize,
    bound: i64,
) -> Result<BTreeSet<PointVector>> {
    let engine = Membership::new(dc, m)?;
    Ok(scan_simplex(m, bound, |v| !engine.contains(v)))
}

/// `|gaps_via_complement|` without materializing the set.
pub fn count_gaps_via_complement(dc: &DerivedConstants, m: usize) -> Result<u64> {
    let engine = Membership::new(dc, m)?;
    Ok(count_simplex(m, simplex_bound(dc), |v| !engine.contains(v)))
}

/// Intersection over `r` of the unions of open boxes anchored on coordinate
/// `r`; equivalent to the union over `(m+1)`-tuples of `Λ` without the
/// `|Λ|^{m+1}` blowup.
pub fn pure_gaps_via_lambda(dc: &DerivedConstants, m: usize) -> Result<BTreeSet<PointVector>> {
    let lambda = enumerate_classical_lambda(dc, m)?;
    // by_coordinate[r][value] lists the beta with beta_r = value
    let mut by_coordinate: Vec<BTreeMap<i64, Vec<&PointVector>>> = vec![BTreeMap::new(); m + 1];
    for beta in &lambda {
        for (r, index) in by_coordinate.iter_mut().enumerate() {
            index.entry(beta[r]).or_default().push(beta);
        }
    }
    let anchored = |v: &[i64], r: usize| {
        by_coordinate[r]
            .get(&v[r])
            .is_some_and(|betas| betas.iter().any(|b| (0..=m).all(|j| j == r || v[j] < b[j])))
    };
    let mut out = BTreeSet::new();
    for beta in &lambda {
        for_each_in_open_box(beta, 0, |v| {
            if (1..=m).all(|r| anchored(v, r)) {
                out.insert(PointVector::new(v.to_vec()));
            }
        });
    }
    Ok(out)
}

/// `{alpha in N_0^{m+1} : sum alpha <= 2g - 1, every ∇_r(alpha) empty}`.
pub fn pure_gaps_via_nabla(dc: &DerivedConstants, m: usize) -> Result<BTreeSet<PointVector>> {
    pure_gaps_in_simplex(dc, m, simplex_bound(dc))
}

/// Vectors with `sum alpha <= bound` whose `∇_r` sets are all empty.
pub fn pure_gaps_in_simplex(
    dc: &DerivedConstants,
    m: usize,
    bound: i64,
) -> Result<BTreeSet<PointVector>> {
    let engine = Membership::new(dc, m)?;
    Ok(scan_simplex(m, bound, |v| {
        (0..=m).all(|r| !engine.has_witness(v, r))
    }))
}

fn check_two_point_order(sorted: &[PointVector]) -> Result<()> {
    for v in sorted {
        if v.len() != 2 {
            return Err(Error::LengthMismatch {
                expected: 2,
                found: v.len(),
            });
        }
    }
    if sorted.windows(2).any(|w| w[0][1] >= w[1][1]) {
        return Err(Error::NotSorted);
    }
    Ok(())
}

/// Number of predecessors of `sorted[t]` (0-based) with a larger first
/// coordinate. `sorted` must have strictly increasing second coordinates.
pub fn zeta(sorted: &[PointVector], t: usize) -> Result<i64> {
    check_two_point_order(sorted)?;
    let Some(target) = sorted.get(t) else {
        return Err(Error::IndexOutOfRange {
            index: t,
            len: sorted.len(),
        });
    };
    Ok(sorted[..t].iter().filter(|b| b[0] > target[0]).count() as i64)
}

/// `sum_t zeta(sorted, t)`: the number of inversions of the first
/// coordinates, counted with a Fenwick tree.
pub(crate) fn zeta_sum(sorted: &[PointVector]) -> Result<i64> {
    check_two_point_order(sorted)?;
    let mut firsts: Vec<i64> = sorted.iter().map(|v| v[0]).collect();
    firsts.sort_unstable();
    firsts.dedup();
    let mut tree = vec![0i64; firsts.len() + 1];
    let mut total = 0;
    for (inserted, v) in sorted.iter().enumerate() {
        let rank = firsts.binary_search(&v[0]).expect("present") + 1;
        let mut at_most = 0;
        let mut i = rank;
        while i > 0 {
            at_most += tree[i];
            i &= i - 1;
        }
        total += inserted as i64 - at_most;
        let mut i = rank;
        while i < tree.len() {
            tree[i] += 1;
            i += i & i.wrapping_neg();
        }
    }
    Ok(total)
}

/// Exact `|G(P_inf, P_1)|` as `sum_t (beta_0 + beta_1 - zeta_t)` over `Λ`
/// sorted by second coordinate.
pub fn count_gaps_two_points(dc: &DerivedConstants) -> Result<i64> {
    let mut lambda: Vec<PointVector> = enumerate_classical_lambda(dc, 1)?.into_iter().collect();
    for r in 0..2 {
        let mut values: Vec<i64> = lambda.iter().map(|v| v[r]).collect();
        values.sort_unstable();
        if values.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::CoordinateCollision(r));
        }
    }
    lambda.sort_by_key(|v| v[1]);
    let coordinate_sum: i64 = lambda.iter().map(|v| v[0] + v[1]).sum();
    Ok(coordinate_sum - zeta_sum(&lambda)?)
}

/// `sum over beta in Λ of sum_r prod_{s != r} beta_s`, the total size of the
/// open boxes whose union is the gap set.
pub fn gap_count_upper_bound(dc: &DerivedConstants, m: usize) -> Result<u128> {
    let lambda = enumerate_classical_lambda(dc, m)?;
    let mut total: u128 = 0;
    for beta in &lambda {
        for r in 0..=m {
            let mut product: u128 = 1;
            for (s, &b) in beta.coords().iter().enumerate() {
                if s != r {
                    let b = u128::try_from(b).map_err(|_| Error::Overflow)?;
                    product = product.checked_mul(b).ok_or(Error::Overflow)?;
                }
            }
            total = total.checked_add(product).ok_or(Error::Overflow)?;
        }
    }
    Ok(total)
}

/// Both routes for gaps and pure gaps plus the count identities.
pub fn gap_report(dc: &DerivedConstants, m: usize) -> Result<GapReport> {
    let gaps = gaps_via_lambda(dc, m)?;
    let complement = gaps_via_complement(dc, m)?;
    let pure_gaps = pure_gaps_via_lambda(dc, m)?;
    let pure_nabla = pure_gaps_via_nabla(dc, m)?;
    let bound = simplex_bound(dc);

    let mut checks = BTreeMap::new();
    checks.insert("gap_routes_agree".to_owned(), gaps == complement);
    checks.insert("pure_gap_routes_agree".to_owned(), pure_gaps == pure_nabla);
    checks.insert("pure_gaps_are_gaps".to_owned(), pure_gaps.is_subset(&gaps));
    checks.insert(
        "gaps_in_simplex".to_owned(),
        gaps.iter().all(|v| v.degree() <= bound),
    );
    checks.insert(
        "upper_bound_holds".to_owned(),
        (gaps.len() as u128) <= gap_count_upper_bound(dc, m)?,
    );
    let slice: Vec<i64> = gaps
        .iter()
        .filter(|v| v.coords()[1..].iter().all(|&c| c == 0))
        .map(|v| v[0])
        .collect();
    let semigroup = NumericalSemigroup::from_generators(&dc.gens())?;
    checks.insert("one_point_slice".to_owned(), slice == semigroup.gaps());
    if m == 1 {
        checks.insert(
            "two_point_count".to_owned(),
            count_gaps_two_points(dc)? == gaps.len() as i64,
        );
    }
    Ok(GapReport {
        gap_count: gaps.len(),
        pure_gap_count: pure_gaps.len(),
        gaps,
        pure_gaps,
        cross_checks: checks,
    })
}
