//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded lexicographic with `x1 > x2 > ... > xD`. Iteration is therefore in
//! ascending graded-lex order and the leading term is the last entry.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Exponent vector `x^M` over a fixed number of variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[u32]>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Monomial {
            exps: exps.into_boxed_slice(),
            degree,
        }
    }

    pub fn one(num_vars: usize) -> Self {
        Monomial::new(vec![0; num_vars])
    }

    pub fn var(num_vars: usize, i: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[i] = 1;
        Monomial::new(e)
    }

    /// Squarefree monomial `prod_{i in vars} x_i`.
    pub fn squarefree(num_vars: usize, vars: &[usize]) -> Self {
        let mut e = vec![0; num_vars];
        for &i in vars {
            e[i] = 1;
        }
        Monomial::new(e)
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// Indices of variables with a positive exponent.
    pub fn support(&self) -> Vec<usize> {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u32> = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect();
        Monomial {
            exps: exps.into_boxed_slice(),
            degree: self.degree + other.degree,
        }
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let exps: Vec<u32> = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a - b).collect();
        Some(Monomial {
            exps: exps.into_boxed_slice(),
            degree: self.degree - other.degree,
        })
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::one();
        for (x, &e) in point.iter().zip(self.exps.iter()) {
            if e > 0 {
                acc *= num_traits::pow(x.clone(), e as usize);
            }
        }
        acc
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, names: &dyn Fn(usize) -> String) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", names(i))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, &|i| format!("x{}", i + 1))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, &|i| format!("x{}", i + 1))
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.exps.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Monomial::new(Vec::<u32>::deserialize(d)?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// Element of `Q[x1, ..., xD]`.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    num_vars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(num_vars: usize) -> Self {
        Polynomial {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, Rational::one())
    }

    pub fn constant(num_vars: usize, c: Rational) -> Self {
        Self::term(Monomial::one(num_vars), c)
    }

    pub fn var(num_vars: usize, i: usize) -> Self {
        Self::term(Monomial::var(num_vars, i), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let num_vars = m.num_vars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { num_vars, terms }
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(num_vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            if m.num_vars() != num_vars {
                return Err(Error::Dimension {
                    expected: num_vars,
                    found: m.num_vars(),
                });
            }
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Polynomial { num_vars, terms: acc })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.num_vars))
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    /// Smallest total degree of a term; `None` for the zero polynomial.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.degree())
    }

    /// Monomials with a nonzero coefficient.
    pub fn support(&self) -> BTreeSet<Monomial> {
        self.terms.keys().cloned().collect()
    }

    pub fn homogeneous_part(&self, degree: u32) -> Polynomial {
        Polynomial {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.num_vars);
        }
        Polynomial {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        self.check_point(point)?;
        Ok(self
            .terms
            .iter()
            .fold(Rational::zero(), |acc, (m, c)| acc + c * m.eval(point)))
    }

    /// Substitutes `x_i -> c_i * x_i` for every variable.
    pub fn scale_vars(&self, factors: &[Rational]) -> Result<Polynomial> {
        self.check_point(factors)?;
        Polynomial::from_terms(
            self.num_vars,
            self.terms.iter().map(|(m, c)| (m.clone(), c * m.eval(factors))),
        )
    }

    /// Partial derivative with respect to `x_i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[i] -= 1;
            terms.insert(Monomial::new(exps), c * rational::int(e as i64));
        }
        Polynomial {
            num_vars: self.num_vars,
            terms,
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.num_vars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn arith(&self, other: &Polynomial, op: PolyOp) -> Result<Polynomial> {
        if self.num_vars != other.num_vars {
            return Err(Error::Dimension {
                expected: self.num_vars,
                found: other.num_vars,
            });
        }
        Ok(match op {
            PolyOp::Add => self.add_impl(other, false),
            PolyOp::Sub => self.add_impl(other, true),
            PolyOp::Mul => self.mul_impl(other),
        })
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder or the divisor is zero.
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (lm, lc) = divisor.leading_term()?;
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut quot = BTreeMap::new();
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(lm)?;
            let qc = c / lc;
            let t = Polynomial::term(qm.clone(), qc.clone());
            rem = &rem - &(&t * divisor);
            quot.insert(qm, qc);
        }
        Some(Polynomial {
            num_vars: self.num_vars,
            terms: quot,
        })
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        struct Named<'a>(&'a Polynomial, &'a [String]);
        impl fmt::Display for Named<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_with(f, &|i| self.1.get(i).cloned().unwrap_or_else(|| format!("x{}", i + 1)))
            }
        }
        Named(self, names)
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, names: &dyn Fn(usize) -> String) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let abs = c.abs();
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                m.fmt_with(f, names)?;
            }
        }
        Ok(())
    }

    fn check_point(&self, point: &[Rational]) -> Result<()> {
        if point.len() != self.num_vars {
            return Err(Error::Dimension {
                expected: self.num_vars,
                found: point.len(),
            });
        }
        Ok(())
    }

    fn add_impl(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.get_mut(m) {
                Some(a) => {
                    if negate {
                        *a -= c;
                    } else {
                        *a += c;
                    }
                    if a.is_zero() {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), if negate { -c } else { c.clone() });
                }
            }
        }
        Polynomial {
            num_vars: self.num_vars,
            terms,
        }
    }

    fn mul_impl(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.num_vars);
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let prod = ca * cb;
                match acc.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += prod,
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                }
            }
        }
        Polynomial {
            num_vars: self.num_vars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    fn assert_same_ring(&self, other: &Polynomial) {
        assert_eq!(
            self.num_vars, other.num_vars,
            "polynomials live in rings with different variable counts"
        );
    }
}

/// Checked arithmetic on two polynomials.
pub fn poly_arith(a: &Polynomial, b: &Polynomial, op: PolyOp) -> Result<Polynomial> {
    a.arith(b, op)
}

// Operator impls panic on mismatched rings; use `arith` for a checked path.
impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_ring(rhs);
        self.add_impl(rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_ring(rhs);
        self.add_impl(rhs, true)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_ring(rhs);
        self.mul_impl(rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, &|i| format!("x{}", i + 1))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({})", self.num_vars, self)
    }
}

/// Serialized as `[[exponents, "num/den"], ...]` in ascending graded-lex order.
impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (m, c) in &self.terms {
            seq.serialize_element(&(m, rational::to_fraction_string(c)))?;
        }
        seq.end()
    }
}

/// The variable count is taken from the first exponent vector, so the zero
/// polynomial deserializes with zero variables. Use [`Polynomial::from_json`]
/// to pin the ring.
impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<(Vec<u32>, String)>::deserialize(d)?;
        let num_vars = raw.first().map_or(0, |(e, _)| e.len());
        Polynomial::from_raw(num_vars, raw).map_err(de::Error::custom)
    }
}

impl Polynomial {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("polynomial serialization cannot fail")
    }

    pub fn from_json(num_vars: usize, s: &str) -> Result<Polynomial> {
        let raw: Vec<(Vec<u32>, String)> =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Polynomial::from_raw(num_vars, raw)
    }

    fn from_raw(num_vars: usize, raw: Vec<(Vec<u32>, String)>) -> Result<Polynomial> {
        let mut terms = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            terms.push((Monomial::new(e), rational::parse_fraction(&c)?));
        }
        Polynomial::from_terms(num_vars, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn x(nv: usize, i: usize) -> Polynomial {
        Polynomial::var(nv, i)
    }

    #[test]
    fn difference_of_squares() {
        let (a, b) = (x(2, 0), x(2, 1));
        let p = poly_arith(&(&a + &b), &(&a - &b), PolyOp::Mul).unwrap();
        let expected = &a.pow(2) - &b.pow(2);
        assert_eq!(p, expected);
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn zero_absorbs() {
        let p = &x(3, 0) + &Polynomial::constant(3, int(5));
        let z = Polynomial::zero(3);
        assert!((&p * &z).is_zero());
        assert_eq!(&p + &z, p);
    }

    #[test]
    fn binomial_cube() {
        let p = (&x(1, 0) + &Polynomial::one(1)).pow(3);
        let coeffs: Vec<Rational> = p.terms().map(|(_, c)| c.clone()).collect();
        assert_eq!(coeffs, vec![int(1), int(3), int(3), int(1)]);
    }

    #[test]
    fn mismatched_rings() {
        let err = poly_arith(&x(2, 0), &x(3, 0), PolyOp::Add).unwrap_err();
        assert_eq!(err, Error::Dimension { expected: 2, found: 3 });
    }

    #[test]
    fn cancellation_drops_terms() {
        let p = &x(2, 0) - &x(2, 0);
        assert!(p.is_zero());
        assert!(p.support().is_empty());
    }

    #[test]
    fn support_of_binomial() {
        let p = &(&x(3, 0) * &x(3, 1)) - &x(3, 2).pow(2);
        let s: Vec<_> = p.support().into_iter().collect();
        assert_eq!(s, vec![Monomial::new(vec![0, 0, 2]), Monomial::new(vec![1, 1, 0])]);
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::new(vec![0, 2]);
        let b = Monomial::new(vec![1, 1]);
        let c = Monomial::new(vec![3, 0]);
        let d = Monomial::new(vec![2, 0]);
        assert!(a < b && b < d && d < c);
    }

    #[test]
    fn exact_division() {
        let (a, b) = (x(2, 0), x(2, 1));
        let p = &(&a + &b) * &(&a - &b);
        assert_eq!(p.exact_div(&(&a + &b)).unwrap(), &a - &b);
        assert!(a.exact_div(&b).is_none());
        assert!((&a + &Polynomial::one(2)).exact_div(&a).is_none());
        assert_eq!(p.exact_div(&Polynomial::constant(2, int(2))).unwrap(), p.scale(&rational::frac(1, 2)));
    }

    #[test]
    fn derivative_and_eval() {
        let p = &x(2, 0).pow(3) * &x(2, 1);
        assert_eq!(p.derivative(0), (&x(2, 0).pow(2) * &x(2, 1)).scale(&int(3)));
        assert_eq!(p.eval(&[int(2), int(5)]).unwrap(), int(40));
        assert!(p.eval(&[int(1)]).is_err());
    }

    #[test]
    fn display() {
        let p = &(&x(2, 0).pow(2) - &x(2, 1).scale(&int(3))) + &Polynomial::constant(2, int(-1));
        assert_eq!(p.to_string(), "x1^2 - 3*x2 - 1");
    }

    #[test]
    fn json_form() {
        let p = &(&x(2, 0) * &x(2, 1)).scale(&rational::frac(-1, 2)) + &Polynomial::one(2);
        assert_eq!(p.to_json(), r#"[[[0,0],"1/1"],[[1,1],"-1/2"]]"#);
        assert_eq!(Polynomial::from_json(2, &p.to_json()).unwrap(), p);
        assert!(Polynomial::from_json(3, &p.to_json()).is_err());
    }
}
