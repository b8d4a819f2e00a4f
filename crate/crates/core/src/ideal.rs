//! Monomial ideals stored by their minimal generators.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Monomial;

/// A monomial ideal in `Q[x1, ..., xD]`, always interreduced: no generator
/// divides another, so two ideals are equal iff their generator sets are.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "IdealRepr", into = "IdealRepr")]
pub struct MonomialIdeal {
    num_vars: usize,
    generators: BTreeSet<Monomial>,
}

#[derive(Serialize, Deserialize)]
struct IdealRepr {
    num_vars: usize,
    generators: Vec<Monomial>,
}

impl From<MonomialIdeal> for IdealRepr {
    fn from(i: MonomialIdeal) -> Self {
        IdealRepr {
            num_vars: i.num_vars,
            generators: i.generators.into_iter().collect(),
        }
    }
}

impl TryFrom<IdealRepr> for MonomialIdeal {
    type Error = Error;
    fn try_from(r: IdealRepr) -> Result<Self> {
        minimal_generators(r.num_vars, r.generators)
    }
}

/// Interreduces a set of monomials by divisibility.
pub fn minimal_generators<I>(num_vars: usize, monomials: I) -> Result<MonomialIdeal>
where
    I: IntoIterator<Item = Monomial>,
{
    let mut ideal = MonomialIdeal::zero(num_vars);
    let mut all: Vec<Monomial> = monomials.into_iter().collect();
    for m in &all {
        ideal.check(m)?;
    }
    // by degree, so nothing kept is ever divisible by a later candidate
    all.sort();
    all.dedup();
    for m in all {
        if !ideal.contains_unchecked(&m) {
            ideal.generators.insert(m);
        }
    }
    Ok(ideal)
}

impl MonomialIdeal {
    pub fn zero(num_vars: usize) -> Self {
        MonomialIdeal {
            num_vars,
            generators: BTreeSet::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Minimal generators in ascending graded-lex order.
    pub fn generators(&self) -> &BTreeSet<Monomial> {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_squarefree(&self) -> bool {
        self.generators.iter().all(Monomial::is_squarefree)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.generators.iter().map(Monomial::degree).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.generators.iter().map(Monomial::degree).min()
    }

    /// Adds `m` as a generator, dropping generators it divides. Returns
    /// whether the ideal grew.
    pub fn insert(&mut self, m: Monomial) -> Result<bool> {
        self.check(&m)?;
        if self.contains_unchecked(&m) {
            return Ok(false);
        }
        self.generators.retain(|g| !m.divides(g));
        self.generators.insert(m);
        Ok(true)
    }

    pub fn extend<I: IntoIterator<Item = Monomial>>(&mut self, monomials: I) -> Result<()> {
        let mut batch: Vec<Monomial> = monomials.into_iter().collect();
        batch.sort();
        for m in batch {
            self.insert(m)?;
        }
        Ok(())
    }

    /// Sum of two ideals.
    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ring(other)?;
        minimal_generators(
            self.num_vars,
            self.generators.iter().chain(other.generators.iter()).cloned(),
        )
    }

    /// `m` lies in the ideal iff some generator divides it.
    pub fn contains(&self, m: &Monomial) -> Result<bool> {
        self.check(m)?;
        Ok(self.contains_unchecked(m))
    }

    /// Whether `self` is contained in `other`.
    pub fn is_subset(&self, other: &MonomialIdeal) -> Result<bool> {
        self.check_ring(other)?;
        Ok(self.generators.iter().all(|g| other.contains_unchecked(g)))
    }

    /// Generators of `self` that do not lie in `other`.
    pub fn witnesses_outside(&self, other: &MonomialIdeal) -> Result<Vec<Monomial>> {
        self.check_ring(other)?;
        Ok(self
            .generators
            .iter()
            .filter(|g| !other.contains_unchecked(g))
            .cloned()
            .collect())
    }

    /// Height of the ideal: the least number of variables meeting the
    /// support of every generator (a minimum hitting set), found by
    /// branch-and-bound.
    pub fn codim(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::UndefinedCodim);
        }
        if self.num_vars > 128 {
            return Err(Error::Configuration(format!(
                "codim supports at most 128 variables, got {}",
                self.num_vars
            )));
        }
        if self.generators.iter().any(Monomial::is_one) {
            // unit ideal
            return Ok(0);
        }
        let mut sets: Vec<u128> = self
            .generators
            .iter()
            .map(|g| g.support().iter().fold(0u128, |acc, &i| acc | 1u128 << i))
            .collect();
        sets.sort_by_key(|s| s.count_ones());
        sets.dedup();
        // a superset of another support is hit whenever the smaller one is
        let minimal: Vec<u128> = sets
            .iter()
            .copied()
            .filter(|&s| !sets.iter().any(|&t| t != s && t & s == t))
            .collect();
        let mut best = minimal.len().min(self.num_vars);
        hitting_set(&minimal, 0, 0, &mut best);
        Ok(best)
    }

    fn contains_unchecked(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    fn check(&self, m: &Monomial) -> Result<()> {
        if m.num_vars() != self.num_vars {
            return Err(Error::Dimension {
                expected: self.num_vars,
                found: m.num_vars(),
            });
        }
        Ok(())
    }

    fn check_ring(&self, other: &MonomialIdeal) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::Dimension {
                expected: self.num_vars,
                found: other.num_vars,
            });
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.generators.iter().collect::<Vec<_>>())
            .expect("ideal serialization cannot fail")
    }
}

fn hitting_set(sets: &[u128], chosen: u128, size: usize, best: &mut usize) {
    let open: Vec<u128> = sets.iter().copied().filter(|s| s & chosen == 0).collect();
    if open.is_empty() {
        *best = (*best).min(size);
        return;
    }
    // pairwise disjoint open sets each need their own variable
    let mut packed = 0u128;
    let mut lower = 0;
    for &s in &open {
        if s & packed == 0 {
            packed |= s;
            lower += 1;
        }
    }
    if size + lower >= *best {
        return;
    }
    let pivot = *open.iter().min_by_key(|s| s.count_ones()).expect("nonempty");
    let mut bits = pivot;
    while bits != 0 {
        let b = bits & bits.wrapping_neg();
        bits &= !b;
        hitting_set(&open, chosen | b, size + 1, best);
    }
}
