//! The two curve families, their validated parameters, the integers derived
//! from them, and the valuation table of the coordinate functions.
//!
//! Both families are handled uniformly: `Y(q, n, s)` is the `X` model with
//! `p^b = 1`. Affine points stay symbolic. Only the multiplicities in the
//! divisors of `x - alpha`, `y` and `z` are needed:
//!
//! ```text
//! (x - alpha_l) = e P_l - e P_inf                        e = (q+1) M
//! (y)           = sum_l M P_l - (q/p^b) M P_inf          over the q/p^b points with beta = 0
//! (z)           = sum over all beta-fibres - (q^3/p^b) P_inf
//! ```

use std::fmt;
use std::ops::{Add, Index};

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};

/// Curve family tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    X,
    Y,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::X => f.write_str("X"),
            Family::Y => f.write_str("Y"),
        }
    }
}

/// Unvalidated parameters, as read from a user or a sweep table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum RawParams {
    /// `c y^(q+1) = t(x)`, `y^(q^2) - y = z^M` over `F_{q^{2n}}` with `q = p^a`.
    X {
        p: i64,
        a: i64,
        b: i64,
        n: i64,
        s: i64,
    },
    /// `x^q + x = y^(q+1)`, `y^(q^2) - y = z^M` over `F_{q^{2n}}`.
    Y { q: i64, n: i64, s: i64 },
}

impl RawParams {
    pub fn family(&self) -> Family {
        match self {
            RawParams::X { .. } => Family::X,
            RawParams::Y { .. } => Family::Y,
        }
    }
}

impl fmt::Display for RawParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RawParams::X { p, a, b, n, s } => write!(f, "X(p={p},a={a},b={b},n={n},s={s})"),
            RawParams::Y { q, n, s } => write!(f, "Y(q={q},n={n},s={s})"),
        }
    }
}

/// Parameters that passed [`validate_params`]. The only way to obtain one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct CurveParams(RawParams);

impl CurveParams {
    pub fn x(p: i64, a: i64, b: i64, n: i64, s: i64) -> Result<Self> {
        validate_params(RawParams::X { p, a, b, n, s })
    }

    pub fn y(q: i64, n: i64, s: i64) -> Result<Self> {
        validate_params(RawParams::Y { q, n, s })
    }

    pub fn raw(&self) -> RawParams {
        self.0
    }

    pub fn family(&self) -> Family {
        self.0.family()
    }

    /// Field parameter `q` (`p^a` for the `X` family).
    pub fn q(&self) -> i64 {
        match self.0 {
            // exponent already validated in validate_params
            RawParams::X { p, a, .. } => p.pow(a as u32),
            RawParams::Y { q, .. } => q,
        }
    }

    /// `p^b` for the `X` family, `1` for `Y`.
    pub fn pb(&self) -> i64 {
        match self.0 {
            RawParams::X { p, b, .. } => p.pow(b as u32),
            RawParams::Y { .. } => 1,
        }
    }

    pub fn n(&self) -> i64 {
        match self.0 {
            RawParams::X { n, .. } | RawParams::Y { n, .. } => n,
        }
    }

    pub fn s(&self) -> i64 {
        match self.0 {
            RawParams::X { s, .. } | RawParams::Y { s, .. } => s,
        }
    }
}

impl fmt::Display for CurveParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Every integer the formulas need, derived once from [`CurveParams`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivedConstants {
    pub family: Family,
    pub q: i64,
    /// `p^b`, or `1` for the `Y` family.
    pub pb: i64,
    pub n: i64,
    pub s: i64,
    /// `M = (q^n + 1) / (s (q + 1))`.
    #[serde(rename = "M")]
    pub big_m: i64,
    /// `e = (q + 1) M`, the pole order of `x - alpha` at `P_inf`.
    #[serde(rename = "e")]
    pub e: i64,
    /// Pole order of `y` at `P_inf`: `(q / p^b) M`.
    pub y_pole: i64,
    /// Pole order of `z` at `P_inf`: `q^3 / p^b`.
    pub z_pole: i64,
    pub genus: i64,
    /// Frobenius number of `H(P_inf)`, `2g - 1`.
    pub frobenius: i64,
    pub canonical_degree: i64,
    /// Number of affine points with `beta = gamma = 0`: `q / p^b` (X) or `q` (Y).
    pub max_m: usize,
}

impl DerivedConstants {
    /// Generators of `H(P_inf)` in their presented order
    /// `((q/p^b) M, q^3/p^b, (q+1) M)`.
    pub fn gens(&self) -> [i64; 3] {
        [self.y_pole, self.z_pole, self.e]
    }

    pub fn check_m(&self, m: usize) -> Result<()> {
        if m == 0 || m > self.max_m {
            return Err(Error::BadM {
                m,
                max_m: self.max_m,
            });
        }
        Ok(())
    }
}

/// Validates raw parameters: primality, divisibility, parity and positive
/// genus, plus the arithmetic range contract.
pub fn validate_params(raw: RawParams) -> Result<CurveParams> {
    let (q, pb, n, s) = match raw {
        RawParams::X { p, a, b, n, s } => {
            for (name, v) in [("p", p), ("a", a), ("b", b), ("n", n), ("s", s)] {
                if v <= 0 {
                    return Err(Error::NonPositive(name));
                }
            }
            if !arith::is_prime(p) {
                return Err(Error::NonPrimeP(p));
            }
            if a % b != 0 {
                return Err(Error::BNotDividingA { a, b });
            }
            (arith::pow(p, a)?, arith::pow(p, b)?, n, s)
        }
        RawParams::Y { q, n, s } => {
            for (name, v) in [("q", q), ("n", n), ("s", s)] {
                if v <= 0 {
                    return Err(Error::NonPositive(name));
                }
            }
            if arith::prime_power(q).is_none() {
                return Err(Error::NotPrimePower(q));
            }
            (q, 1, n, s)
        }
    };
    if n % 2 == 0 {
        return Err(Error::NEven(n));
    }
    if n < 3 {
        return Err(Error::NTooSmall(n));
    }
    // Range contract: q^{2n} and q^{n+3} (the largest products the formulas
    // form) must fit with headroom for sums of a few such terms.
    let top = arith::pow(q, (2 * n).max(n + 3))?;
    arith::mul(top, 1 << 6)?;
    let quotient = (arith::pow(q, n)? + 1) / (q + 1);
    if quotient % s != 0 {
        return Err(Error::SNotDividing { s, quotient });
    }
    let genus = genus_formula(q, pb, n, s)?;
    if genus <= 0 {
        return Err(Error::GenusNotPositive(genus));
    }
    Ok(CurveParams(raw))
}

/// `g = (q^{n+2} - p^b q^n - s q^3 + q^2 + (s-1) p^b) / (2 s p^b)`.
fn genus_formula(q: i64, pb: i64, n: i64, s: i64) -> Result<i64> {
    let numerator = arith::sum([
        arith::pow(q, n + 2)?,
        -arith::mul(pb, arith::pow(q, n)?)?,
        -arith::mul(s, arith::pow(q, 3)?)?,
        arith::pow(q, 2)?,
        arith::mul(s - 1, pb)?,
    ])?;
    let denominator = arith::mul(2 * s, pb)?;
    if numerator % denominator != 0 {
        return Err(Error::NonIntegralGenus {
            numerator,
            denominator,
        });
    }
    Ok(numerator / denominator)
}

/// Computes [`DerivedConstants`] for validated parameters.
pub fn derive(params: &CurveParams) -> Result<DerivedConstants> {
    let (q, pb, n, s) = (params.q(), params.pb(), params.n(), params.s());
    let big_m = (arith::pow(q, n)? + 1) / arith::mul(s, q + 1)?;
    let e = arith::mul(q + 1, big_m)?;
    let genus = genus_formula(q, pb, n, s)?;
    let frobenius = 2 * genus - 1;
    Ok(DerivedConstants {
        family: params.family(),
        q,
        pb,
        n,
        s,
        big_m,
        e,
        y_pole: arith::mul(q / pb, big_m)?,
        z_pole: arith::pow(q, 3)? / pb,
        genus,
        frobenius,
        canonical_degree: frobenius - 1,
        max_m: usize::try_from(q / pb).map_err(|_| Error::Overflow)?,
    })
}

/// An element of `Z^{m+1}`: coordinate `0` belongs to `P_inf`, coordinate
/// `l` to the affine point `P_l`.
///
/// `Ord` is lexicographic (for canonical ordering); the componentwise
/// partial order is [`PointVector::leq`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointVector(Vec<i64>);

impl PointVector {
    pub fn new(coords: Vec<i64>) -> Self {
        PointVector(coords)
    }

    pub fn zero(len: usize) -> Self {
        PointVector(vec![0; len])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Componentwise `self <= other`.
    pub fn leq(&self, other: &PointVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// Sum of coordinates, the degree of `D_alpha`.
    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl From<Vec<i64>> for PointVector {
    fn from(v: Vec<i64>) -> Self {
        PointVector(v)
    }
}

impl Index<usize> for PointVector {
    type Output = i64;

    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &PointVector {
    type Output = PointVector;

    fn add(self, rhs: &PointVector) -> PointVector {
        assert_eq!(self.len(), rhs.len(), "adding vectors of different lengths");
        PointVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for PointVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Exponents of the monomial `z^a_z * y^b_y * prod_l (x - alpha_l)^c_l`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialExponents {
    pub a_z: i64,
    pub b_y: i64,
    pub c: Vec<i64>,
}

impl MonomialExponents {
    pub fn new(a_z: i64, b_y: i64, c: Vec<i64>) -> Self {
        MonomialExponents { a_z, b_y, c }
    }

    /// True iff the monomial has poles only inside `{P_inf, P_1..P_m}`.
    ///
    /// Zeros or poles of `z` sit on every affine point with `gamma = 0`, so
    /// `a_z >= 0`. The points `P_{m+1}..P_{max_m}` see `z^a_z y^b_y` only,
    /// which forces `a_z + b_y M >= 0` unless every such point is in the tuple.
    pub fn is_regular(&self, dc: &DerivedConstants) -> bool {
        self.a_z >= 0 && (self.c.len() == dc.max_m || self.a_z + self.b_y * dc.big_m >= 0)
    }
}

/// Pole-order vector `(-v_{P_inf}, -v_{P_1}, ..., -v_{P_m})` of a monomial,
/// together with its regularity outside the tuple.
pub fn monomial_valuation(
    dc: &DerivedConstants,
    m: usize,
    exps: &MonomialExponents,
) -> Result<(PointVector, bool)> {
    dc.check_m(m)?;
    if exps.c.len() != m {
        return Err(Error::LengthMismatch {
            expected: m,
            found: exps.c.len(),
        });
    }
    let csum = arith::sum(exps.c.iter().copied())?;
    let mut coords = Vec::with_capacity(m + 1);
    coords.push(arith::sum([
        arith::mul(exps.a_z, dc.z_pole)?,
        arith::mul(exps.b_y, dc.y_pole)?,
        arith::mul(csum, dc.e)?,
    ])?);
    let base = arith::add(exps.a_z, arith::mul(exps.b_y, dc.big_m)?)?;
    for &c in &exps.c {
        let v = arith::add(base, arith::mul(c, dc.e)?)?;
        coords.push(v.checked_neg().ok_or(Error::Overflow)?);
    }
    Ok((PointVector(coords), exps.is_regular(dc)))
}
