//! Closed-form absolute and relative maximal elements of the generalized
//! Weierstrass semigroup at `(P_inf, P_1, ..., P_m)`.
//!
//! Every family is an affine-lattice parameterization over an index pair
//! `(i, j)` and a shift vector `k = (k_2, ..., k_{m+1})`. With
//! `base(i, j) = (q^2 e - i q M - j q^3) / p^b` the first coordinates are
//!
//! ```text
//! Gamma(i,j,k)    base - (m + sum k) e        affine coords k_l e + iM + j
//! Delta(i,j,k)    base - (1 + sum k) e        affine coords k_l e + iM + j
//! Theta(k)        -(sum k) e                  affine coords k_l e
//! LambdaZero(k)   (m - 1 - sum k) e           affine coords k_l e
//! ```
//!
//! The absolute maximal elements are `Gamma ∪ Theta`, the relative maximal
//! elements are `Delta ∪ LambdaZero`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::arith::{self, for_each_bounded_composition};
use crate::curve::{DerivedConstants, PointVector};
use crate::error::{Error, Result};

/// `(i, j)` with `0 <= i <= q`, `1 <= j <= M`, `(i, j) != (q, M)`.
///
/// `(i, j) -> iM + j` is a bijection onto `[1, e - 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IndexPair {
    i: i64,
    j: i64,
}

impl IndexPair {
    pub fn new(dc: &DerivedConstants, i: i64, j: i64) -> Result<Self> {
        let valid =
            (0..=dc.q).contains(&i) && (1..=dc.big_m).contains(&j) && (i, j) != (dc.q, dc.big_m);
        if !valid {
            return Err(Error::BadIndexPair { i, j });
        }
        Ok(IndexPair { i, j })
    }

    /// The pair with `iM + j = rho`, for `rho` in `[1, e - 1]`.
    pub fn from_residue(dc: &DerivedConstants, rho: i64) -> Option<Self> {
        if rho < 1 || rho >= dc.e {
            return None;
        }
        let i = (rho + dc.big_m - 1) / dc.big_m - 1;
        Some(IndexPair {
            i,
            j: rho - i * dc.big_m,
        })
    }

    /// All index pairs in lexicographic order.
    pub fn all(dc: &DerivedConstants) -> impl Iterator<Item = IndexPair> + '_ {
        (1..dc.e).map(move |rho| IndexPair::from_residue(dc, rho).expect("in range"))
    }

    pub fn i(&self) -> i64 {
        self.i
    }

    pub fn j(&self) -> i64 {
        self.j
    }

    /// `iM + j`, the affine coordinate shared by the whole `(i, j)` family.
    pub fn residue(&self, dc: &DerivedConstants) -> i64 {
        self.i * dc.big_m + self.j
    }

    /// `(q^2 e - i q M - j q^3) / p^b`, the first coordinate of the family
    /// before the `e`-shifts.
    pub fn base(&self, dc: &DerivedConstants) -> i64 {
        (dc.q * dc.q * dc.e - self.i * dc.q * dc.big_m - self.j * dc.q.pow(3)) / dc.pb
    }
}

/// A member of one of the four parameterized maximal families.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind")]
pub enum MaximalElement {
    Gamma { pair: IndexPair, ks: Vec<i64> },
    Theta { ks: Vec<i64> },
    Delta { pair: IndexPair, ks: Vec<i64> },
    LambdaZero { ks: Vec<i64> },
}

impl MaximalElement {
    pub fn ks(&self) -> &[i64] {
        match self {
            MaximalElement::Gamma { ks, .. }
            | MaximalElement::Theta { ks }
            | MaximalElement::Delta { ks, .. }
            | MaximalElement::LambdaZero { ks } => ks,
        }
    }

    pub fn pair(&self) -> Option<IndexPair> {
        match self {
            MaximalElement::Gamma { pair, .. } | MaximalElement::Delta { pair, .. } => Some(*pair),
            _ => None,
        }
    }
}

/// `alpha^{i,j,m} = (base - m e, iM + j, ..., iM + j)`.
pub fn alpha_element(dc: &DerivedConstants, m: usize, pair: IndexPair) -> Result<PointVector> {
    realize(
        dc,
        m,
        &MaximalElement::Gamma {
            pair,
            ks: vec![0; m],
        },
    )
}

/// The absolute maximal elements inside the fundamental region
/// `C = {0 <= beta_l < e for l >= 1}`: every `alpha^{i,j,m}` plus `0`.
pub fn gamma_hat_in_c(dc: &DerivedConstants, m: usize) -> Result<BTreeSet<PointVector>> {
    dc.check_m(m)?;
    let mut out: BTreeSet<PointVector> = IndexPair::all(dc)
        .map(|pair| alpha_element(dc, m, pair))
        .collect::<Result<_>>()?;
    out.insert(PointVector::zero(m + 1));
    Ok(out)
}

/// The relative maximal elements inside `C`: `beta^{i,j,m} = (base - e, iM+j, ...)`
/// and `beta^{0,0,m} = ((m - 1) e, 0, ..., 0)`.
pub fn lambda_hat_in_c(dc: &DerivedConstants, m: usize) -> Result<BTreeSet<PointVector>> {
    dc.check_m(m)?;
    let mut out: BTreeSet<PointVector> = IndexPair::all(dc)
        .map(|pair| {
            realize(
                dc,
                m,
                &MaximalElement::Delta {
                    pair,
                    ks: vec![0; m],
                },
            )
        })
        .collect::<Result<_>>()?;
    out.insert(realize(
        dc,
        m,
        &MaximalElement::LambdaZero { ks: vec![0; m] },
    )?);
    Ok(out)
}

/// Evaluates a family member as a point vector.
pub fn realize(dc: &DerivedConstants, m: usize, elem: &MaximalElement) -> Result<PointVector> {
    dc.check_m(m)?;
    let ks = elem.ks();
    if ks.len() != m {
        return Err(Error::LengthMismatch {
            expected: m,
            found: ks.len(),
        });
    }
    let ksum = arith::sum(ks.iter().copied())?;
    let m_i = m as i64;
    let (first, residue) = match elem {
        MaximalElement::Gamma { pair, .. } => {
            let shift = arith::mul(arith::add(m_i, ksum)?, dc.e)?;
            (arith::sub(pair.base(dc), shift)?, pair.residue(dc))
        }
        MaximalElement::Delta { pair, .. } => {
            let shift = arith::mul(arith::add(1, ksum)?, dc.e)?;
            (arith::sub(pair.base(dc), shift)?, pair.residue(dc))
        }
        MaximalElement::Theta { .. } => (arith::mul(-ksum, dc.e)?, 0),
        MaximalElement::LambdaZero { .. } => (arith::mul(arith::sub(m_i - 1, ksum)?, dc.e)?, 0),
    };
    let mut coords = Vec::with_capacity(m + 1);
    coords.push(first);
    for &k in ks {
        coords.push(arith::add(arith::mul(k, dc.e)?, residue)?);
    }
    Ok(PointVector::new(coords))
}

/// `tau_{(i,j)} = floor((q^3 (M - j) + q M (q - i) - p^b e) / (p^b e))`,
/// the largest `sum k` keeping the first coordinate of `Delta(i, j, k)`
/// nonnegative.
pub fn tau(dc: &DerivedConstants, pair: IndexPair) -> i64 {
    let (q, mm) = (dc.q, dc.big_m);
    let numerator = q.pow(3) * (mm - pair.j) + q * mm * (q - pair.i) - dc.pb * dc.e;
    numerator.div_euclid(dc.pb * dc.e)
}

/// The minimal generating set `Gamma(P_{m+1})`: the nonnegative members of
/// the `Gamma` family together with `0` (the only nonnegative `Theta`).
pub fn enumerate_classical_gamma(dc: &DerivedConstants, m: usize) -> Result<BTreeSet<PointVector>> {
    dc.check_m(m)?;
    let mut out = BTreeSet::new();
    out.insert(PointVector::zero(m + 1));
    for pair in IndexPair::all(dc) {
        // affine coordinates are >= 0 iff k >= 0; the first one bounds sum k
        let first = alpha_element(dc, m, pair)?[0];
        let max_sum = first.div_euclid(dc.e);
        for_each_bounded_composition(m, max_sum, |ks| {
            let v = realize(
                dc,
                m,
                &MaximalElement::Gamma {
                    pair,
                    ks: ks.to_vec(),
                },
            )
            .expect("bounded by the first coordinate");
            out.insert(v);
        });
    }
    Ok(out)
}

/// `Lambda(P_{m+1})`: `Delta(i, j, k)` with `k >= 0`, `sum k <= tau_{(i,j)}`,
/// and `LambdaZero(k)` with `k >= 0`, `sum k <= m - 1`.
pub fn enumerate_classical_lambda(
    dc: &DerivedConstants,
    m: usize,
) -> Result<BTreeSet<PointVector>> {
    dc.check_m(m)?;
    let mut out = BTreeSet::new();
    for pair in IndexPair::all(dc) {
        for_each_bounded_composition(m, tau(dc, pair), |ks| {
            out.insert(
                realize(
                    dc,
                    m,
                    &MaximalElement::Delta {
                        pair,
                        ks: ks.to_vec(),
                    },
                )
                .expect("bounded by tau"),
            );
        });
    }
    for_each_bounded_composition(m, m as i64 - 1, |ks| {
        out.insert(realize(dc, m, &MaximalElement::LambdaZero { ks: ks.to_vec() }).expect("small"));
    });
    Ok(out)
}

/// `|Lambda(P_{m+1})| = C(2m-1, m) + sum_{tau >= 0} C(tau + m, m)`.
pub fn count_lambda(dc: &DerivedConstants, m: usize) -> Result<u128> {
    dc.check_m(m)?;
    let m_u = m as u64;
    // (2m-1)! / ((m-1)! m!)
    let mut total = arith::binomial(2 * m_u - 1, m_u).ok_or(Error::Overflow)?;
    for pair in IndexPair::all(dc) {
        let t = tau(dc, pair);
        if t >= 0 {
            let c = arith::binomial(t as u64 + m_u, m_u).ok_or(Error::Overflow)?;
            total = total.checked_add(c).ok_or(Error::Overflow)?;
        }
    }
    Ok(total)
}
