//! One-dimensional numerical semigroups via the Apery set of the smallest
//! generator.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::arith;
use crate::error::{Error, Result};

/// A numerical semigroup `<g_1, ..., g_k>` with `gcd = 1`.
///
/// Generators are kept as given, redundant ones included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalSemigroup {
    generators: Vec<i64>,
    multiplicity: i64,
    apery: Vec<i64>,
    frobenius: i64,
    gaps: Vec<i64>,
}

impl NumericalSemigroup {
    pub fn from_generators(generators: &[i64]) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptyInput);
        }
        if generators.iter().any(|&g| g <= 0) {
            return Err(Error::NonPositive("generator"));
        }
        let g = generators.iter().fold(0, |acc, &x| arith::gcd(acc, x));
        if g != 1 {
            return Err(Error::GcdNotOne(g));
        }
        let multiplicity = *generators.iter().min().expect("nonempty");
        let apery = apery_set(generators, multiplicity)?;
        let frobenius = apery.iter().max().expect("nonempty") - multiplicity;
        let gaps = (1..=frobenius.max(0))
            .filter(|&x| apery[(x % multiplicity) as usize] > x)
            .collect();
        Ok(NumericalSemigroup {
            generators: generators.to_vec(),
            multiplicity,
            apery,
            frobenius,
            gaps,
        })
    }

    pub fn generators(&self) -> &[i64] {
        &self.generators
    }

    pub fn multiplicity(&self) -> i64 {
        self.multiplicity
    }

    /// `apery()[r]` is the smallest member congruent to `r` modulo the
    /// multiplicity.
    pub fn apery(&self) -> &[i64] {
        &self.apery
    }

    /// Largest non-member, `-1` for `N_0` itself.
    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    pub fn gaps(&self) -> &[i64] {
        &self.gaps
    }

    pub fn genus(&self) -> i64 {
        self.gaps.len() as i64
    }

    pub fn contains(&self, x: i64) -> bool {
        x >= 0 && self.apery[x.rem_euclid(self.multiplicity) as usize] <= x
    }
}

// Dijkstra over residues modulo the multiplicity; adding a generator moves
// between residue classes.
fn apery_set(generators: &[i64], modulus: i64) -> Result<Vec<i64>> {
    let size = usize::try_from(modulus).map_err(|_| Error::Overflow)?;
    let mut dist = vec![i64::MAX; size];
    dist[0] = 0;
    let mut heap = BinaryHeap::from([Reverse((0i64, 0usize))]);
    while let Some(Reverse((d, r))) = heap.pop() {
        if d > dist[r] {
            continue;
        }
        for &g in generators {
            let nd = arith::add(d, g)?;
            let nr = (r + (g % modulus) as usize) % size;
            if nd < dist[nr] {
                dist[nr] = nd;
                heap.push(Reverse((nd, nr)));
            }
        }
    }
    Ok(dist)
}
