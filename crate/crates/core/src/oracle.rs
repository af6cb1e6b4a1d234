//! Brute-force reconstruction of `H` from monomial valuation vectors.
//!
//! Nothing here consults the closed-form families. A vector `alpha` lies in
//! the lub closure of a set `S` iff for every coordinate `r` some
//! `gamma in S` satisfies `gamma <= alpha` and `gamma_r = alpha_r`; the lub of
//! those `m + 1` witnesses is `alpha` itself.
//!
//! Every element of `Ĥ` has nonnegative degree, so a witness below `alpha`
//! has each coordinate at least `-(sum of the other coordinates of alpha)`.
//! For `alpha` in `[-B, B]^{m+1}` this puts every witness in
//! `[-mB, B]^{m+1}`, and a finite box of monomials is enough.

use std::collections::{BTreeMap, BTreeSet};

use crate::curve::{monomial_valuation, DerivedConstants, MonomialExponents, PointVector};
use crate::error::{Error, Result};
use crate::gaps::{
    count_gaps_two_points, count_simplex, gap_count_upper_bound, gaps_via_lambda,
    pure_gaps_via_lambda, scan_simplex, simplex_bound,
};
use crate::maximal::{
    count_lambda, enumerate_classical_gamma, enumerate_classical_lambda, gamma_hat_in_c,
    lambda_hat_in_c,
};
use crate::membership::Membership;
use crate::semigroup::NumericalSemigroup;

/// Closed integer box `lower <= alpha <= upper`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Box {
    lower: PointVector,
    upper: PointVector,
}

impl Box {
    pub fn new(lower: PointVector, upper: PointVector) -> Result<Self> {
        if lower.len() != upper.len() || !lower.leq(&upper) {
            return Err(Error::BadBox);
        }
        Ok(Box { lower, upper })
    }

    /// `[lo, hi]^len`.
    pub fn cube(len: usize, lo: i64, hi: i64) -> Result<Self> {
        Box::new(
            PointVector::new(vec![lo; len]),
            PointVector::new(vec![hi; len]),
        )
    }

    pub fn lower(&self) -> &PointVector {
        &self.lower
    }

    pub fn upper(&self) -> &PointVector {
        &self.upper
    }

    pub fn contains(&self, alpha: &[i64]) -> bool {
        alpha.len() == self.lower.len()
            && alpha
                .iter()
                .zip(self.lower.coords())
                .zip(self.upper.coords())
                .all(|((a, lo), hi)| lo <= a && a <= hi)
    }
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -(-a).div_euclid(b)
}

/// Valuation vectors of all regular monomials that land in `bx`.
///
/// Exponent ranges, with `U = sum of upper` and degree
/// `a (z_pole - m) + b M (q/p^b - m)`:
///
/// * `m < max_m`: regularity gives `b M >= -a`, so the degree is at least
///   `a (q^3 - q) / p^b`, bounding `a`; `b` then runs from `ceil(-a/M)` to
///   the value where the degree reaches `U`.
/// * `m = max_m`: `y^{q+1}` and `prod (x - alpha_l)` share a valuation
///   vector, so `b` is normalized to `[0, q]` and the degree bounds `a`.
/// * `c_l` is confined by coordinate `l` of the box.
pub fn monomial_vectors_in_box(
    dc: &DerivedConstants,
    m: usize,
    bx: &Box,
) -> Result<BTreeSet<PointVector>> {
    monomial_vectors_with_slack(dc, m, bx, 0)
}

fn monomial_vectors_with_slack(
    dc: &DerivedConstants,
    m: usize,
    bx: &Box,
    slack: i64,
) -> Result<BTreeSet<PointVector>> {
    dc.check_m(m)?;
    if bx.lower.len() != m + 1 {
        return Err(Error::LengthMismatch {
            expected: m + 1,
            found: bx.lower.len(),
        });
    }
    let upper_sum = bx.upper.degree();
    let full = m == dc.max_m;
    let m_i = m as i64;
    let a_max = if full {
        upper_sum.div_euclid(dc.z_pole - m_i)
    } else {
        (upper_sum * dc.pb).div_euclid(dc.q.pow(3) - dc.q)
    } + slack;
    let mut out = BTreeSet::new();
    let mut c = vec![0i64; m];
    for a in 0..=a_max {
        let (b_lo, b_hi) = if full {
            (0, dc.q)
        } else {
            let y_slope = dc.y_pole - m_i * dc.big_m;
            (
                ceil_div(-a, dc.big_m),
                (upper_sum - a * (dc.z_pole - m_i)).div_euclid(y_slope),
            )
        };
        for b in b_lo - slack..=b_hi + slack {
            let base = a + b * dc.big_m;
            let ranges: Vec<(i64, i64)> = (1..=m)
                .map(|l| {
                    let lo = ceil_div(-bx.upper[l] - base, dc.e) - slack;
                    let hi = (-bx.lower[l] - base).div_euclid(dc.e) + slack;
                    (lo, hi)
                })
                .collect();
            if ranges.iter().any(|(lo, hi)| lo > hi) {
                continue;
            }
            for (slot, (lo, _)) in c.iter_mut().zip(&ranges) {
                *slot = *lo;
            }
            'odometer: loop {
                let exps = MonomialExponents::new(a, b, c.clone());
                let (v, regular) = monomial_valuation(dc, m, &exps)?;
                if regular && bx.contains(v.coords()) {
                    out.insert(v);
                }
                let mut pos = m;
                loop {
                    if pos == 0 {
                        break 'odometer;
                    }
                    pos -= 1;
                    if c[pos] < ranges[pos].1 {
                        c[pos] += 1;
                        continue 'odometer;
                    }
                    c[pos] = ranges[pos].0;
                }
            }
        }
    }
    Ok(out)
}

/// Index answering "is `alpha` a lub of members of `S`" in `O(m |S_r|)`.
#[derive(Debug, Clone)]
pub struct LubIndex {
    len: usize,
    by_coordinate: Vec<BTreeMap<i64, Vec<PointVector>>>,
}

impl LubIndex {
    pub fn new<'a, I>(set: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a PointVector>,
    {
        let mut iter = set.into_iter().peekable();
        let len = iter.peek().ok_or(Error::EmptyInput)?.len();
        let mut by_coordinate = vec![BTreeMap::new(); len];
        for v in iter {
            if v.len() != len {
                return Err(Error::LengthMismatch {
                    expected: len,
                    found: v.len(),
                });
            }
            for (r, index) in by_coordinate.iter_mut().enumerate() {
                index.entry(v[r]).or_insert_with(Vec::new).push(v.clone());
            }
        }
        Ok(LubIndex { len, by_coordinate })
    }

    /// True iff `alpha` is the lub of a nonempty finite subset of the set.
    pub fn contains(&self, alpha: &[i64]) -> bool {
        alpha.len() == self.len
            && (0..self.len).all(|r| {
                self.by_coordinate[r].get(&alpha[r]).is_some_and(|vs| {
                    vs.iter()
                        .any(|g| g.coords().iter().zip(alpha).all(|(x, y)| x <= y))
                })
            })
    }
}

/// The lub closure of `set`, truncated to `bx`.
///
/// Equal to the least fixed point of pairwise lubs inside the box when the
/// set lies in the box; points of `set` outside the box may still
/// contribute witnesses here.
pub fn lub_closure<'a, I>(set: I, bx: &Box) -> Result<BTreeSet<PointVector>>
where
    I: IntoIterator<Item = &'a PointVector>,
{
    let set: Vec<&PointVector> = set.into_iter().collect();
    if set.is_empty() {
        return Ok(BTreeSet::new());
    }
    let index = LubIndex::new(set.iter().copied())?;
    if index.len != bx.lower.len() {
        return Err(Error::BadBox);
    }
    // every coordinate of a closure point is a coordinate of some member
    let choices: Vec<Vec<i64>> = (0..index.len)
        .map(|r| {
            index.by_coordinate[r]
                .range(bx.lower[r]..=bx.upper[r])
                .map(|(&k, _)| k)
                .collect()
        })
        .collect();
    let mut out = BTreeSet::new();
    if choices.iter().any(Vec::is_empty) {
        return Ok(out);
    }
    let mut pick = vec![0usize; index.len];
    let mut alpha: Vec<i64> = choices.iter().map(|c| c[0]).collect();
    loop {
        if index.contains(&alpha) {
            out.insert(PointVector::new(alpha.clone()));
        }
        let mut r = index.len;
        loop {
            if r == 0 {
                return Ok(out);
            }
            r -= 1;
            if pick[r] + 1 < choices[r].len() {
                pick[r] += 1;
                alpha[r] = choices[r][pick[r]];
                break;
            }
            pick[r] = 0;
            alpha[r] = choices[r][0];
        }
    }
}

/// Runs every cross-check for `(dc, m)`; see [`consistency_report_with`].
pub fn consistency_report(
    dc: &DerivedConstants,
    m: usize,
    sum_bound: i64,
) -> Result<BTreeMap<String, bool>> {
    consistency_report_with(&Membership::new(dc, m)?, sum_bound)
}

/// Cross-checks a membership engine against the monomial oracle and the
/// closed-form families:
///
/// * (a) lub closure of monomial vectors equals `engine` membership on
///   `N_0^{m+1} ∩ {sum <= sum_bound}`;
/// * (b) every family vector in `[-B, B]^{m+1}` lies in that closure;
/// * (c) both gap routes and both pure-gap routes agree;
/// * (d) the `|Λ|` formula, the two-point count, the upper bound and the genus.
pub fn consistency_report_with(
    engine: &Membership,
    sum_bound: i64,
) -> Result<BTreeMap<String, bool>> {
    if sum_bound < 0 {
        return Err(Error::BadBox);
    }
    let dc = engine.constants();
    let m = engine.m();
    let m_i = m as i64;
    let mut checks = BTreeMap::new();

    let witness_box = Box::cube(m + 1, -m_i * sum_bound, sum_bound)?;
    let monomials = monomial_vectors_in_box(dc, m, &witness_box)?;
    let index = LubIndex::new(&monomials)?;
    let mismatches = count_simplex(m, sum_bound, |v| {
        index.contains(v) != engine.contains_classical(v)
    });
    checks.insert("a_closure_matches_membership".to_owned(), mismatches == 0);

    let target = Box::cube(m + 1, -sum_bound, sum_bound)?;
    let families = [
        gamma_hat_in_c(dc, m)?,
        lambda_hat_in_c(dc, m)?,
        enumerate_classical_gamma(dc, m)?,
        enumerate_classical_lambda(dc, m)?,
    ];
    let in_closure = families
        .iter()
        .flatten()
        .filter(|v| target.contains(v.coords()))
        .all(|v| index.contains(v.coords()));
    checks.insert("b_family_vectors_in_closure".to_owned(), in_closure);

    let gap_bound = simplex_bound(dc);
    let complement = scan_simplex(m, gap_bound, |v| !engine.contains(v));
    let pure_nabla = scan_simplex(m, gap_bound, |v| (0..=m).all(|r| !engine.has_witness(v, r)));
    checks.insert(
        "c_gap_routes_agree".to_owned(),
        gaps_via_lambda(dc, m)? == complement,
    );
    checks.insert(
        "c_pure_gap_routes_agree".to_owned(),
        pure_gaps_via_lambda(dc, m)? == pure_nabla,
    );

    let lambda = enumerate_classical_lambda(dc, m)?;
    checks.insert(
        "d_lambda_count".to_owned(),
        count_lambda(dc, m)? == lambda.len() as u128,
    );
    checks.insert(
        "d_upper_bound".to_owned(),
        complement.len() as u128 <= gap_count_upper_bound(dc, m)?,
    );
    if m == 1 {
        checks.insert(
            "d_two_point_count".to_owned(),
            count_gaps_two_points(dc)? == complement.len() as i64,
        );
    }
    let semigroup = NumericalSemigroup::from_generators(&dc.gens())?;
    checks.insert("d_genus".to_owned(), semigroup.genus() == dc.genus);
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{derive, CurveParams};
    use proptest::prelude::*;

    fn y231() -> DerivedConstants {
        derive(&CurveParams::y(2, 3, 1).unwrap()).unwrap()
    }

    fn pv(c: &[i64]) -> PointVector {
        PointVector::new(c.to_vec())
    }

    /// Pairwise-lub fixed point restricted to `bx`.
    fn naive_closure(set: &[PointVector], bx: &Box) -> BTreeSet<PointVector> {
        let mut cur: BTreeSet<PointVector> = set
            .iter()
            .filter(|v| bx.contains(v.coords()))
            .cloned()
            .collect();
        loop {
            let items: Vec<_> = cur.iter().cloned().collect();
            let mut next = cur.clone();
            for a in &items {
                for b in &items {
                    let l = crate::membership::lub([a, b]).unwrap();
                    if bx.contains(l.coords()) {
                        next.insert(l);
                    }
                }
            }
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    #[test]
    fn box_validation() {
        assert_eq!(Box::new(pv(&[1, 0]), pv(&[0, 0])), Err(Error::BadBox));
        assert_eq!(Box::new(pv(&[0]), pv(&[0, 0])), Err(Error::BadBox));
        assert!(Box::cube(2, -1, 1).unwrap().contains(&[1, -1]));
        assert!(!Box::cube(2, -1, 1).unwrap().contains(&[2, -1]));
    }

    #[test]
    fn monomial_examples() {
        let dc = y231();
        let bx = Box::cube(2, -20, 20).unwrap();
        let vs = monomial_vectors_in_box(&dc, 1, &bx).unwrap();
        assert!(vs.contains(&pv(&[19, 1])));
        assert!(vs.contains(&pv(&[-9, 9])));
        assert!(vs.contains(&pv(&[0, 0])));
        assert!(vs
            .iter()
            .all(|v| bx.contains(v.coords()) && v.degree() >= 0));
    }

    #[test]
    fn zero_is_always_present() {
        for params in crate::sweep::instances_with_genus_at_most(60) {
            let dc = derive(&params).unwrap();
            for m in 1..=dc.max_m.min(2) {
                let bx = Box::cube(m + 1, -1, 1).unwrap();
                assert!(monomial_vectors_in_box(&dc, m, &bx)
                    .unwrap()
                    .contains(&PointVector::zero(m + 1)));
            }
        }
    }

    #[test]
    fn exponent_ranges_saturate() {
        for params in crate::sweep::instances_with_genus_at_most(60) {
            let dc = derive(&params).unwrap();
            for m in 1..=dc.max_m.min(2) {
                let b = 2 * dc.genus;
                let bx = Box::new(
                    PointVector::new(vec![-(m as i64) * b; m + 1]),
                    PointVector::new(vec![b; m + 1]),
                )
                .unwrap();
                let tight = monomial_vectors_in_box(&dc, m, &bx).unwrap();
                let loose = monomial_vectors_with_slack(&dc, m, &bx, 3).unwrap();
                assert_eq!(tight, loose, "{params} m={m}");
            }
        }
    }

    #[test]
    fn full_tuple_normalization() {
        // m = max_m: shifting b by q + 1 and every c by -1 keeps the vector
        let dc = derive(&CurveParams::x(2, 1, 1, 3, 1).unwrap()).unwrap();
        assert_eq!(dc.max_m, 1);
        let (v, _) = monomial_valuation(&dc, 1, &MonomialExponents::new(1, 0, vec![0])).unwrap();
        let (w, _) = monomial_valuation(&dc, 1, &MonomialExponents::new(1, 3, vec![-1])).unwrap();
        assert_eq!(v, w);
    }

    #[test]
    fn closure_examples() {
        let bx = Box::cube(2, -20, 20).unwrap();
        let closed = lub_closure(&[pv(&[-9, 9]), pv(&[0, 0])], &bx).unwrap();
        assert_eq!(
            closed,
            [pv(&[-9, 9]), pv(&[0, 0]), pv(&[0, 9])]
                .into_iter()
                .collect()
        );
        let single = lub_closure(&[pv(&[3, 4])], &bx).unwrap();
        assert_eq!(single, [pv(&[3, 4])].into_iter().collect());
        assert!(lub_closure(std::iter::empty(), &bx).unwrap().is_empty());
        assert_eq!(lub_closure(&[pv(&[1, 2, 3])], &bx), Err(Error::BadBox));
    }

    #[test]
    fn closure_of_gamma_hat_reproduces_members() {
        let dc = y231();
        let engine = Membership::new(&dc, 1).unwrap();
        let bx = Box::cube(2, -20, 20).unwrap();
        let wide = Box::cube(2, -40, 40).unwrap();
        let monomials = monomial_vectors_in_box(&dc, 1, &wide).unwrap();
        let closure = lub_closure(&monomials, &bx).unwrap();
        for a in -20..=20 {
            for b in -20..=20 {
                assert_eq!(
                    closure.contains(&pv(&[a, b])),
                    engine.contains(&[a, b]),
                    "({a},{b})"
                );
            }
        }
    }

    #[test]
    fn reports_pass() {
        let dc = y231();
        let report = consistency_report(&dc, 1, 19).unwrap();
        assert!(report.values().all(|&ok| ok), "{report:?}");
        let dx = derive(&CurveParams::x(2, 1, 1, 3, 1).unwrap()).unwrap();
        let report = consistency_report(&dx, 1, 2 * dx.genus).unwrap();
        assert!(report.values().all(|&ok| ok), "{report:?}");
        let report = consistency_report(&dc, 2, 2 * dc.genus).unwrap();
        assert!(report.values().all(|&ok| ok), "{report:?}");
    }

    #[test]
    fn mutation_is_detected() {
        let dc = y231();
        let mutant = Membership::without_theta(&dc, 1).unwrap();
        let report = consistency_report_with(&mutant, 2 * dc.genus).unwrap();
        assert!(!report["a_closure_matches_membership"]);
    }

    proptest! {
        #[test]
        fn closure_matches_pairwise_fixed_point(
            raw in proptest::collection::vec(proptest::collection::vec(-6i64..6, 3), 1..7),
            seed in any::<u64>(),
        ) {
            let set: Vec<PointVector> = raw.into_iter().map(PointVector::new).collect();
            let bx = Box::cube(3, -6, 6).unwrap();
            let fast = lub_closure(&set, &bx).unwrap();
            prop_assert_eq!(&fast, &naive_closure(&set, &bx));
            // order independence
            let mut shuffled = set.clone();
            shuffled.rotate_left((seed as usize) % set.len());
            shuffled.reverse();
            prop_assert_eq!(fast, lub_closure(&shuffled, &bx).unwrap());
        }
    }
}
