//! Membership in the generalized semigroup `Ĥ(P_inf, P_1, ..., P_m)` and the
//! classical `H = Ĥ ∩ N_0^{m+1}`.
//!
//! `alpha ∈ Ĥ` iff every `∇_r(alpha)` is nonempty, and a nonempty `∇_r`
//! always contains an absolute maximal element. The absolute maximal
//! elements are exactly the `Gamma` and `Theta` families, so each test
//! reduces to forcing their parameters:
//!
//! * `r >= 1`: `alpha_r mod e` fixes the index pair (or `Theta` for residue
//!   0) and `k_r`. Every other `k_t` is pushed to its largest admissible
//!   value, which minimizes the first coordinate.
//! * `r = 0`: the first coordinate is `base - (m + sum k) e`, so
//!   `alpha_0 mod e` selects the family and fixes `sum k`. A witness exists
//!   iff the per-coordinate maxima of `k` reach that sum.

use serde::Serialize;

use crate::curve::{DerivedConstants, PointVector};
use crate::error::{Error, Result};
use crate::maximal::{IndexPair, MaximalElement};

/// Componentwise maximum.
pub fn lub<'a, I>(vectors: I) -> Result<PointVector>
where
    I: IntoIterator<Item = &'a PointVector>,
{
    let mut iter = vectors.into_iter();
    let first = iter.next().ok_or(Error::EmptyInput)?;
    let mut acc = first.coords().to_vec();
    for v in iter {
        if v.len() != acc.len() {
            return Err(Error::LengthMismatch {
                expected: acc.len(),
                found: v.len(),
            });
        }
        for (a, &b) in acc.iter_mut().zip(v.coords()) {
            *a = (*a).max(b);
        }
    }
    Ok(PointVector::new(acc))
}

/// Outcome of a membership test in `Ĥ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MembershipVerdict {
    pub member: bool,
    /// One witness per coordinate when `member` holds.
    pub witnesses: Option<Vec<MaximalElement>>,
    /// First coordinate whose `∇_r` is empty when `member` fails.
    pub failing_coordinate: Option<usize>,
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    /// `None` for the `Theta` family.
    pair: Option<IndexPair>,
    /// First coordinate at `k = 0`.
    first: i64,
    /// Affine coordinate at `k = 0` (`iM + j`, or 0 for `Theta`).
    residue: i64,
}

/// Membership engine for a fixed curve and number of affine points.
///
/// Construction indexes the absolute maximal families by the residue of
/// their first coordinate modulo `e`, so each `∇_r` test costs `O(m)`.
#[derive(Debug, Clone)]
pub struct Membership {
    dc: DerivedConstants,
    m: usize,
    theta: bool,
    by_first_residue: Vec<Vec<Candidate>>,
}

impl Membership {
    pub fn new(dc: &DerivedConstants, m: usize) -> Result<Self> {
        Self::build(dc, m, true)
    }

    /// Engine that ignores the `Theta` family, i.e. treats the `Gamma`
    /// parameterization alone as the full set of absolute maximal elements.
    /// Only useful as a mutation for checking that verification notices.
    pub fn without_theta(dc: &DerivedConstants, m: usize) -> Result<Self> {
        Self::build(dc, m, false)
    }

    fn build(dc: &DerivedConstants, m: usize, theta: bool) -> Result<Self> {
        dc.check_m(m)?;
        let size = usize::try_from(dc.e).map_err(|_| Error::Overflow)?;
        let mut by_first_residue = vec![Vec::new(); size];
        if theta {
            by_first_residue[0].push(Candidate {
                pair: None,
                first: 0,
                residue: 0,
            });
        }
        for pair in IndexPair::all(dc) {
            let first = pair.base(dc) - m as i64 * dc.e;
            by_first_residue[first.rem_euclid(dc.e) as usize].push(Candidate {
                pair: Some(pair),
                first,
                residue: pair.residue(dc),
            });
        }
        Ok(Membership {
            dc: dc.clone(),
            m,
            theta,
            by_first_residue,
        })
    }

    pub fn constants(&self) -> &DerivedConstants {
        &self.dc
    }

    pub fn m(&self) -> usize {
        self.m
    }

    fn check_len(&self, alpha: &[i64]) -> Result<()> {
        if alpha.len() != self.m + 1 {
            return Err(Error::LengthMismatch {
                expected: self.m + 1,
                found: alpha.len(),
            });
        }
        Ok(())
    }

    /// Largest `k` with `k e + residue <= bound`.
    #[inline]
    fn kmax(&self, bound: i64, residue: i64) -> i64 {
        (bound - residue).div_euclid(self.dc.e)
    }

    fn candidate_for_affine(&self, rho: i64) -> Option<Candidate> {
        if rho == 0 {
            return self.theta.then_some(Candidate {
                pair: None,
                first: 0,
                residue: 0,
            });
        }
        let pair = IndexPair::from_residue(&self.dc, rho)?;
        Some(Candidate {
            pair: Some(pair),
            first: pair.base(&self.dc) - self.m as i64 * self.dc.e,
            residue: rho,
        })
    }

    /// Locates a witness for `∇_r(alpha)`; returns the family and `sum k`.
    /// Assumes `alpha` has the right length and `r <= m`.
    fn locate(&self, alpha: &[i64], r: usize) -> Option<(Candidate, i64)> {
        let e = self.dc.e;
        if r >= 1 {
            let rho = alpha[r].rem_euclid(e);
            let cand = self.candidate_for_affine(rho)?;
            let ksum: i64 = alpha[1..].iter().map(|&a| self.kmax(a, rho)).sum();
            (cand.first - e * ksum <= alpha[0]).then_some((cand, ksum))
        } else {
            let bucket = &self.by_first_residue[alpha[0].rem_euclid(e) as usize];
            bucket.iter().find_map(|cand| {
                let forced = (cand.first - alpha[0]) / e;
                let reachable: i64 = alpha[1..].iter().map(|&a| self.kmax(a, cand.residue)).sum();
                (reachable >= forced).then_some((*cand, forced))
            })
        }
    }

    /// True iff `∇_r(alpha)` is nonempty. No allocation.
    #[inline]
    pub fn has_witness(&self, alpha: &[i64], r: usize) -> bool {
        self.locate(alpha, r).is_some()
    }

    /// An absolute maximal `gamma` with `gamma_r = alpha_r` and
    /// `gamma <= alpha`, or `None` if `∇_r(alpha)` is empty.
    ///
    /// The index pair is forced; among the admissible shift vectors the
    /// lexicographically largest is returned.
    pub fn nabla_witness(&self, alpha: &[i64], r: usize) -> Result<Option<MaximalElement>> {
        self.check_len(alpha)?;
        if r > self.m {
            return Err(Error::BadCoordinate { r, m: self.m });
        }
        let Some((cand, ksum)) = self.locate(alpha, r) else {
            return Ok(None);
        };
        let mut ks: Vec<i64> = alpha[1..]
            .iter()
            .map(|&a| self.kmax(a, cand.residue))
            .collect();
        if r == 0 {
            // the last shift absorbs the surplus so that sum k is exact
            let rest: i64 = ks[..self.m - 1].iter().sum();
            ks[self.m - 1] = ksum - rest;
        }
        Ok(Some(match cand.pair {
            Some(pair) => MaximalElement::Gamma { pair, ks },
            None => MaximalElement::Theta { ks },
        }))
    }

    /// `alpha ∈ Ĥ` without building witnesses.
    pub fn contains(&self, alpha: &[i64]) -> bool {
        alpha.len() == self.m + 1 && (0..=self.m).all(|r| self.has_witness(alpha, r))
    }

    /// `alpha ∈ H = Ĥ ∩ N_0^{m+1}` without building witnesses.
    pub fn contains_classical(&self, alpha: &[i64]) -> bool {
        alpha.iter().all(|&a| a >= 0) && self.contains(alpha)
    }

    pub fn in_generalized_h(&self, alpha: &PointVector) -> Result<MembershipVerdict> {
        self.check_len(alpha.coords())?;
        let mut witnesses = Vec::with_capacity(self.m + 1);
        for r in 0..=self.m {
            match self.nabla_witness(alpha.coords(), r)? {
                Some(w) => witnesses.push(w),
                None => {
                    return Ok(MembershipVerdict {
                        member: false,
                        witnesses: None,
                        failing_coordinate: Some(r),
                    })
                }
            }
        }
        Ok(MembershipVerdict {
            member: true,
            witnesses: Some(witnesses),
            failing_coordinate: None,
        })
    }

    pub fn in_classical_h(&self, alpha: &PointVector) -> Result<bool> {
        self.check_len(alpha.coords())?;
        Ok(self.contains_classical(alpha.coords()))
    }
}

pub fn nabla_witness(
    dc: &DerivedConstants,
    m: usize,
    alpha: &PointVector,
    r: usize,
) -> Result<Option<MaximalElement>> {
    Membership::new(dc, m)?.nabla_witness(alpha.coords(), r)
}

pub fn in_generalized_h(
    dc: &DerivedConstants,
    m: usize,
    alpha: &PointVector,
) -> Result<MembershipVerdict> {
    Membership::new(dc, m)?.in_generalized_h(alpha)
}

pub fn in_classical_h(dc: &DerivedConstants, m: usize, alpha: &PointVector) -> Result<bool> {
    Membership::new(dc, m)?.in_classical_h(alpha)
}

/// Gap sequence of the one-point semigroup `H(P_1)`: the `b >= 0` for which no
/// function has a pole of order exactly `b` at `P_1` and no other pole.
pub fn one_point_gaps_at_p1(dc: &DerivedConstants) -> Vec<i64> {
    let engine = Membership::new(dc, 1).expect("max_m >= 1 for validated parameters");
    (0..=2 * dc.genus)
        .filter(|&b| !engine.has_witness(&[0, b], 1))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{derive, monomial_valuation, CurveParams, MonomialExponents};
    use crate::maximal::{enumerate_classical_gamma, gamma_hat_in_c, realize};
    use crate::semigroup::NumericalSemigroup;
    use proptest::prelude::*;

    fn y231() -> DerivedConstants {
        derive(&CurveParams::y(2, 3, 1).unwrap()).unwrap()
    }

    fn x21131() -> DerivedConstants {
        derive(&CurveParams::x(2, 1, 1, 3, 1).unwrap()).unwrap()
    }

    fn pv(c: &[i64]) -> PointVector {
        PointVector::new(c.to_vec())
    }

    /// Γ̂ elements with every `k` in `[-span, span]`, for brute-force checks.
    fn gamma_hat_box(dc: &DerivedConstants, m: usize, span: i64) -> Vec<PointVector> {
        let mut out = Vec::new();
        let width = (2 * span + 1) as usize;
        for idx in 0..width.pow(m as u32) {
            let ks: Vec<i64> = (0..m)
                .map(|t| (idx / width.pow(t as u32) % width) as i64 - span)
                .collect();
            out.push(realize(dc, m, &MaximalElement::Theta { ks: ks.clone() }).unwrap());
            for pair in IndexPair::all(dc) {
                out.push(
                    realize(
                        dc,
                        m,
                        &MaximalElement::Gamma {
                            pair,
                            ks: ks.clone(),
                        },
                    )
                    .unwrap(),
                );
            }
        }
        out
    }

    #[test]
    fn lub_examples() {
        assert_eq!(lub([&pv(&[-9, 9]), &pv(&[0, 0])]).unwrap(), pv(&[0, 9]));
        assert_eq!(lub([&pv(&[19, 1]), &pv(&[1, 19])]).unwrap(), pv(&[19, 19]));
        assert_eq!(lub([&pv(&[3, -4, 5])]).unwrap(), pv(&[3, -4, 5]));
        assert_eq!(lub(std::iter::empty()), Err(Error::EmptyInput));
        assert!(matches!(
            lub([&pv(&[1]), &pv(&[1, 2])]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn nabla_examples() {
        let dc = y231();
        let w = nabla_witness(&dc, 1, &pv(&[0, 9]), 1).unwrap();
        assert_eq!(w, Some(MaximalElement::Theta { ks: vec![1] }));
        assert_eq!(realize(&dc, 1, &w.unwrap()).unwrap(), pv(&[-9, 9]));
        assert_eq!(nabla_witness(&dc, 1, &pv(&[1, 1]), 1).unwrap(), None);
        let dx = x21131();
        assert_eq!(nabla_witness(&dx, 1, &pv(&[2, 0]), 0).unwrap(), None);
        assert_eq!(
            nabla_witness(&dc, 1, &pv(&[0, 0]), 2),
            Err(Error::BadCoordinate { r: 2, m: 1 })
        );
    }

    #[test]
    fn membership_examples() {
        let dc = y231();
        let v = in_generalized_h(&dc, 1, &pv(&[19, 1])).unwrap();
        assert!(v.member);
        let v = in_generalized_h(&dc, 1, &pv(&[1, 1])).unwrap();
        assert_eq!((v.member, v.failing_coordinate), (false, Some(0)));
        // coordinate 1 fails as well
        assert!(!Membership::new(&dc, 1).unwrap().has_witness(&[1, 1], 1));
        assert!(in_generalized_h(&dc, 2, &pv(&[0, 0, 0])).unwrap().member);
        assert!(in_classical_h(&dc, 1, &pv(&[0, 9])).unwrap());
        assert!(!in_classical_h(&dc, 1, &pv(&[1, 1])).unwrap());
        assert!(!in_classical_h(&dc, 1, &pv(&[-9, 9])).unwrap());
        assert!(in_generalized_h(&dc, 1, &pv(&[-9, 9])).unwrap().member);
        assert!(matches!(
            in_classical_h(&dc, 1, &pv(&[0, 0, 0])),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn two_g_on_the_infinite_coordinate_is_a_member() {
        for params in crate::sweep::instances_with_genus_at_most(1000) {
            let dc = derive(&params).unwrap();
            for m in 1..=dc.max_m.min(2) {
                let mut v = vec![0; m + 1];
                v[0] = dc.frobenius + 1;
                assert!(in_classical_h(&dc, m, &pv(&v)).unwrap(), "{params}");
            }
        }
    }

    #[test]
    fn verdict_witnesses_reconstruct_alpha() {
        let dc = y231();
        for m in 1..=2 {
            let engine = Membership::new(&dc, m).unwrap();
            for a0 in -12i64..=20 {
                for a1 in -10..=20 {
                    let mut v = vec![a0, a1];
                    if m == 2 {
                        v.push((a0 + 2 * a1).rem_euclid(23) - 3);
                    }
                    let alpha = pv(&v);
                    let verdict = engine.in_generalized_h(&alpha).unwrap();
                    if let Some(ws) = verdict.witnesses {
                        let realized: Vec<_> =
                            ws.iter().map(|w| realize(&dc, m, w).unwrap()).collect();
                        for (r, g) in realized.iter().enumerate() {
                            assert_eq!(g[r], alpha[r]);
                            assert!(g.leq(&alpha));
                        }
                        assert_eq!(lub(&realized).unwrap(), alpha);
                    } else {
                        let r = verdict.failing_coordinate.unwrap();
                        assert!(!engine.has_witness(alpha.coords(), r));
                    }
                }
            }
        }
    }

    #[test]
    fn forcing_agrees_with_bounded_enumeration() {
        // brute force: search a box of Γ̂ elements for a ∇_r witness
        for params in crate::sweep::instances_with_genus_at_most(12) {
            let dc = derive(&params).unwrap();
            for m in 1..=dc.max_m.min(2) {
                let engine = Membership::new(&dc, m).unwrap();
                let pool = gamma_hat_box(&dc, m, 4);
                let reach = 2 * dc.e;
                let mut alphas = Vec::new();
                for a0 in -reach..=reach {
                    for a1 in -dc.e..=dc.e {
                        let mut v = vec![a0, a1];
                        if m == 2 {
                            v.push((3 * a0 + a1).rem_euclid(2 * dc.e + 1) - dc.e);
                        }
                        alphas.push(v);
                    }
                }
                for v in alphas.iter().step_by(7) {
                    for r in 0..=m {
                        let brute = pool
                            .iter()
                            .any(|g| g[r] == v[r] && g.coords().iter().zip(v).all(|(a, b)| a <= b));
                        assert_eq!(
                            engine.has_witness(v, r),
                            brute,
                            "{params} m={m} alpha={v:?} r={r}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn every_realized_element_is_its_own_witness() {
        for params in crate::sweep::instances_with_genus_at_most(60) {
            let dc = derive(&params).unwrap();
            for m in 1..=dc.max_m.min(2) {
                let engine = Membership::new(&dc, m).unwrap();
                for g in gamma_hat_in_c(&dc, m).unwrap() {
                    let verdict = engine.in_generalized_h(&g).unwrap();
                    assert!(verdict.member, "{params} {g}");
                    for w in verdict.witnesses.unwrap() {
                        assert_eq!(realize(&dc, m, &w).unwrap(), g, "{params} absolute maximal");
                    }
                }
            }
        }
    }

    #[test]
    fn first_residues_are_distinct() {
        // two-point absolute maximal elements project bijectively mod e
        for params in crate::sweep::instances() {
            let dc = derive(&params).unwrap();
            let engine = Membership::new(&dc, 1).unwrap();
            assert!(
                engine.by_first_residue.iter().all(|b| b.len() == 1),
                "{params}"
            );
        }
    }

    #[test]
    fn one_point_gap_examples() {
        assert_eq!(one_point_gaps_at_p1(&x21131()), vec![1, 2, 4]);
        assert_eq!(
            one_point_gaps_at_p1(&y231()),
            vec![1, 2, 3, 4, 5, 7, 10, 11, 13, 19]
        );
        let d = derive(&CurveParams::y(2, 3, 3).unwrap()).unwrap();
        assert_eq!(one_point_gaps_at_p1(&d).len(), 1);
    }

    #[test]
    fn one_point_gaps_match_second_coordinates_of_gamma() {
        for params in crate::sweep::instances() {
            let dc = derive(&params).unwrap();
            let gaps = one_point_gaps_at_p1(&dc);
            let mut seconds: Vec<i64> = enumerate_classical_gamma(&dc, 1)
                .unwrap()
                .iter()
                .map(|v| v[1])
                .filter(|&x| x != 0)
                .collect();
            seconds.sort();
            assert_eq!(gaps.len() as i64, dc.genus, "{params}");
            assert_eq!(gaps, seconds, "{params}");
            let sg = NumericalSemigroup::from_generators(&dc.gens()).unwrap();
            assert_eq!(sg.genus(), dc.genus);
        }
    }

    #[test]
    fn monomials_are_members() {
        let dc = y231();
        for m in 1..=2 {
            let engine = Membership::new(&dc, m).unwrap();
            for a in 0..6 {
                for b in -6..6 {
                    for c in -3..3 {
                        let exps = MonomialExponents::new(a, b, vec![c; m]);
                        let (v, regular) = monomial_valuation(&dc, m, &exps).unwrap();
                        if regular {
                            assert!(engine.contains(v.coords()), "{exps:?} -> {v}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn theta_mutation_loses_members() {
        let dc = y231();
        let mutant = Membership::without_theta(&dc, 1).unwrap();
        assert!(!mutant.contains(&[0, 9]));
        assert!(!mutant.contains(&[0, 0]));
        assert!(Membership::new(&dc, 1).unwrap().contains(&[0, 9]));
    }

    proptest! {
        #[test]
        fn lub_of_members_is_a_member(
            a in proptest::collection::vec(-30i64..40, 3),
            b in proptest::collection::vec(-30i64..40, 3),
        ) {
            let dc = y231();
            let engine = Membership::new(&dc, 2).unwrap();
            if engine.contains(&a) && engine.contains(&b) {
                let l = lub([&pv(&a), &pv(&b)]).unwrap();
                prop_assert!(engine.contains(l.coords()));
            }
        }

        #[test]
        fn sums_of_members_are_members(
            a in proptest::collection::vec(-30i64..40, 3),
            b in proptest::collection::vec(-30i64..40, 3),
        ) {
            let dc = y231();
            let engine = Membership::new(&dc, 2).unwrap();
            if engine.contains(&a) && engine.contains(&b) {
                let s: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
                prop_assert!(engine.contains(&s));
            }
        }

        #[test]
        fn large_degree_is_nonspecial(v in proptest::collection::vec(0i64..40, 3)) {
            let dc = y231();
            let engine = Membership::new(&dc, 2).unwrap();
            if v.iter().sum::<i64>() >= 2 * dc.genus {
                prop_assert!(engine.contains_classical(&v));
            }
        }
    }
}
