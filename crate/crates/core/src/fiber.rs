//! Fibers of the LULU map `L x U x L x U -> SL(n+1)`.
//!
//! A pair `(L1, U1)` lies in the fiber over `g0` iff `g0^{-1} L1 U1` admits a
//! factorization `U L` with unitriangular factors, iff every trailing
//! principal minor of `g0^{-1} L1 U1` equals 1. The fiber ideal is generated
//! by `f_j = det_{[j]^c}(g0^{-1} (I + x)(I + u)) - 1` for `j = 1..n`.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{PolyMatrix, QMatrix};
use crate::phi::colex_subsets;
use crate::poly::Polynomial;
use crate::rational::{self, Rational};

/// Positions `(i, j)`, `i < j`, of the strictly upper part, lexicographic.
pub fn upper_positions(m: usize) -> Vec<(usize, usize)> {
    (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect()
}

/// Variable names: `u_ij` for `U1`, then `x_ji` for `L1`, aligned with
/// [`upper_positions`].
pub fn fiber_variable_names(n: usize) -> Vec<String> {
    let pos = upper_positions(n + 1);
    pos.iter()
        .map(|(i, j)| format!("u{}{}", i + 1, j + 1))
        .chain(pos.iter().map(|(i, j)| format!("x{}{}", j + 1, i + 1)))
        .collect()
}

/// A point of `L x U x L x U` together with its product.
#[derive(Debug, Clone)]
pub struct FiberInstance {
    pub n: usize,
    pub g0: QMatrix,
    pub l1: QMatrix,
    pub u1: QMatrix,
    pub l2: QMatrix,
    pub u2: QMatrix,
    pub seed: u64,
}

impl FiberInstance {
    /// Whether the factors are unitriangular of the right shapes and
    /// multiply to `g0`.
    pub fn is_consistent(&self) -> bool {
        let lower = |a: &QMatrix| is_unitriangular(a, false);
        let upper = |a: &QMatrix| is_unitriangular(a, true);
        if !(lower(&self.l1) && upper(&self.u1) && lower(&self.l2) && upper(&self.u2)) {
            return false;
        }
        let prod = self
            .l1
            .try_mul(&self.u1)
            .and_then(|a| a.try_mul(&self.l2))
            .and_then(|a| a.try_mul(&self.u2));
        matches!(prod, Ok(p) if p == self.g0)
    }

    /// Coordinates `(u, x)` of `(L1, U1)`.
    pub fn coordinates(&self) -> Vec<Rational> {
        point_coordinates(&self.l1, &self.u1)
    }
}

pub fn point_coordinates(l1: &QMatrix, u1: &QMatrix) -> Vec<Rational> {
    let pos = upper_positions(u1.rows());
    pos.iter()
        .map(|&(i, j)| u1[(i, j)].clone())
        .chain(pos.iter().map(|&(i, j)| l1[(j, i)].clone()))
        .collect()
}

fn is_unitriangular(a: &QMatrix, upper: bool) -> bool {
    a.is_square()
        && (0..a.rows()).all(|i| {
            (0..a.cols()).all(|j| {
                let v = &a[(i, j)];
                if i == j {
                    v.is_one()
                } else if (j > i) == upper {
                    true
                } else {
                    v.is_zero()
                }
            })
        })
}

fn require_square(m: &QMatrix) -> Result<usize> {
    if !m.is_square() || m.rows() < 2 {
        return Err(Error::Shape(format!("expected a square matrix of size at least 2, got {}x{}", m.rows(), m.cols())));
    }
    Ok(m.rows())
}

/// Trailing principal minors `det M[{j..m}, {j..m}]` for `j = 0..m`.
pub fn trailing_minors(m: &QMatrix) -> Result<Vec<Rational>> {
    let size = require_square(m)?;
    (0..size)
        .map(|j| {
            let idx: Vec<usize> = (j..size).collect();
            m.submatrix(&idx, &idx).det()
        })
        .collect()
}

/// `M` is a product `U L` of unitriangular matrices iff all trailing
/// principal minors equal 1.
pub fn ul_membership(m: &QMatrix) -> Result<bool> {
    Ok(trailing_minors(m)?.iter().all(One::is_one))
}

/// The factorization `M = U L` with unitriangular factors, when it exists.
/// Reversing the index order turns it into a Doolittle `LU` factorization
/// whose pivots are the trailing minors of `M`.
pub fn ul_factor(m: &QMatrix) -> Result<Option<(QMatrix, QMatrix)>> {
    let size = require_square(m)?;
    if !ul_membership(m)? {
        return Ok(None);
    }
    let r = |i: usize| size - 1 - i;
    let a = QMatrix::from_fn(size, size, |i, j| m[(r(i), r(j))].clone());
    let mut lo = QMatrix::identity(size);
    let mut up = QMatrix::zeros(size, size);
    for i in 0..size {
        for j in i..size {
            let s = (0..i).fold(Rational::zero(), |acc, k| acc + &lo[(i, k)] * &up[(k, j)]);
            up[(i, j)] = &a[(i, j)] - s;
        }
        for j in i + 1..size {
            let s = (0..i).fold(Rational::zero(), |acc, k| acc + &lo[(j, k)] * &up[(k, i)]);
            lo[(j, i)] = (&a[(j, i)] - s) / &up[(i, i)];
        }
    }
    let u = QMatrix::from_fn(size, size, |i, j| lo[(r(i), r(j))].clone());
    let l = QMatrix::from_fn(size, size, |i, j| up[(r(i), r(j))].clone());
    Ok(Some((u, l)))
}

/// The generators `f_1..f_n` of the fiber ideal over `g0`.
#[derive(Debug, Clone, Serialize)]
pub struct FiberIdeal {
    pub n: usize,
    #[serde(skip)]
    pub g0: QMatrix,
    pub generators: Vec<Polynomial>,
    /// Whether `f_0 = det(g0^{-1}(I+x)(I+u)) - 1` vanishes identically;
    /// `None` when the check was skipped.
    pub f0_identity: Option<bool>,
}

pub fn fiber_ideal(g0: &QMatrix) -> Result<FiberIdeal> {
    fiber_ideal_with(g0, true)
}

/// As [`fiber_ideal`]; the symbolic check of `f_0` is the costly part and
/// runs only when `check_f0` is set.
pub fn fiber_ideal_with(g0: &QMatrix, check_f0: bool) -> Result<FiberIdeal> {
    let m = require_square(g0)?;
    let n = m - 1;
    if !g0.det()?.is_one() {
        return Err(Error::Domain("g0 must have determinant 1".into()));
    }
    let g_inv = g0.inverse()?;
    let pos = upper_positions(m);
    let nu = pos.len();
    let nv = 2 * nu;
    let mut upper = PolyMatrix::identity(m, nv);
    let mut lower = PolyMatrix::identity(m, nv);
    for (k, &(i, j)) in pos.iter().enumerate() {
        upper[(i, j)] = Polynomial::var(nv, k);
        lower[(j, i)] = Polynomial::var(nv, nu + k);
    }
    // Cauchy-Binet over the rows of (I+x)(I+u): its minors are sparse with
    // integer coefficients, unlike those of the full product
    let lu = lower.try_mul(&upper)?;
    let one = Polynomial::one(nv);
    let minor = |j: usize| -> Result<Polynomial> {
        let cols: Vec<usize> = (j..m).collect();
        let mut acc = Polynomial::zero(nv);
        for rows in colex_subsets(m, cols.len()) {
            let c = g_inv.submatrix(&cols, &rows).det()?;
            if c.is_zero() {
                continue;
            }
            acc = &acc + &lu.minor_det(&rows, &cols)?.scale(&c);
        }
        Ok(&acc - &one)
    };
    let generators = (1..=n).map(minor).collect::<Result<Vec<_>>>()?;
    let f0_identity = if check_f0 { Some(minor(0)?.is_zero()) } else { None };
    Ok(FiberIdeal {
        n,
        g0: g0.clone(),
        generators,
        f0_identity,
    })
}

impl FiberIdeal {
    pub fn num_vars(&self) -> usize {
        (self.n + 1) * self.n
    }

    /// Values of `f_1..f_n` at a point.
    pub fn eval(&self, point: &[Rational]) -> Result<Vec<Rational>> {
        self.generators.iter().map(|f| f.eval(point)).collect()
    }

    /// Exact rank of the Jacobian of `f_1..f_n` at a point.
    pub fn jacobian_rank(&self, point: &[Rational]) -> Result<usize> {
        let nv = self.num_vars();
        if point.len() != nv {
            return Err(Error::Dimension {
                expected: nv,
                found: point.len(),
            });
        }
        let rows = self
            .generators
            .iter()
            .map(|f| (0..nv).map(|v| f.derivative(v).eval(point)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(QMatrix::from_rows(rows)?.rank())
    }
}

/// Range of the integer entries drawn for unitriangular factors.
pub const DEFAULT_ENTRY_RANGE: i64 = 3;

fn random_unitriangular(rng: &mut ChaCha8Rng, m: usize, upper: bool, range: i64) -> QMatrix {
    let mut a = QMatrix::identity(m);
    for (i, j) in upper_positions(m) {
        let v = rational::int(rng.gen_range(-range..=range));
        if upper {
            a[(i, j)] = v;
        } else {
            a[(j, i)] = v;
        }
    }
    a
}

/// Forward sampling: four random unitriangular factors and their product.
pub fn sample_fiber_instance(n: usize, seed: u64) -> Result<FiberInstance> {
    sample_fiber_instance_with(n, seed, DEFAULT_ENTRY_RANGE)
}

pub fn sample_fiber_instance_with(n: usize, seed: u64, range: i64) -> Result<FiberInstance> {
    if n == 0 {
        return Err(Error::Configuration("rank must be at least 1".into()));
    }
    if range < 0 {
        return Err(Error::Configuration("entry range must be nonnegative".into()));
    }
    let m = n + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let l1 = random_unitriangular(&mut rng, m, false, range);
    let u1 = random_unitriangular(&mut rng, m, true, range);
    let l2 = random_unitriangular(&mut rng, m, false, range);
    let u2 = random_unitriangular(&mut rng, m, true, range);
    let g0 = l1.try_mul(&u1)?.try_mul(&l2)?.try_mul(&u2)?;
    Ok(FiberInstance {
        n,
        g0,
        l1,
        u1,
        l2,
        u2,
        seed,
    })
}

/// A point on the fiber over a prescribed `g0`: `L1` and most of `U1` are
/// random, then `f_n, ..., f_1` are solved in turn for `u_{1,j+1}`, since
/// `f_j` is linear in column `j+1` of `U1` once the later columns are
/// fixed. `None` if every attempt hits a vanishing coefficient.
pub fn sample_point_over(g0: &QMatrix, seed: u64, range: i64) -> Result<Option<FiberInstance>> {
    let m = require_square(g0)?;
    if !g0.det()?.is_one() {
        return Err(Error::Domain("g0 must have determinant 1".into()));
    }
    let g_inv = g0.inverse()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'attempt: for _ in 0..32 {
        let l1 = random_unitriangular(&mut rng, m, false, range);
        let mut u1 = random_unitriangular(&mut rng, m, true, range);
        let nl = g_inv.try_mul(&l1)?;
        for col in (1..m).rev() {
            // det(N U)[S,S] with S = col..m is affine in t = u[0][col]
            let idx: Vec<usize> = (col..m).collect();
            u1[(0, col)] = Rational::zero();
            let at0 = nl.try_mul(&u1)?.submatrix(&idx, &idx).det()?;
            u1[(0, col)] = Rational::one();
            let at1 = nl.try_mul(&u1)?.submatrix(&idx, &idx).det()?;
            let slope = &at1 - &at0;
            if slope.is_zero() {
                continue 'attempt;
            }
            u1[(0, col)] = (Rational::one() - at0) / slope;
        }
        let mid = g_inv.try_mul(&l1)?.try_mul(&u1)?;
        let Some((ua, la)) = ul_factor(&mid)? else {
            continue;
        };
        let inst = FiberInstance {
            n: m - 1,
            g0: g0.clone(),
            l1,
            u1,
            l2: la.inverse()?,
            u2: ua.inverse()?,
            seed,
        };
        if inst.is_consistent() {
            return Ok(Some(inst));
        }
    }
    Ok(None)
}

/// Outcome of the two membership tests at a point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointCheck {
    /// All `f_j` vanish at the point.
    pub polynomial_route: bool,
    /// `g0^{-1} L1 U1` has all trailing principal minors equal to 1.
    pub ul_route: bool,
    /// Indices `j` (1-based) with `f_j != 0` at the point.
    pub nonvanishing: Vec<usize>,
}

impl PointCheck {
    pub fn agree(&self) -> bool {
        self.polynomial_route == self.ul_route
    }

    pub fn on_fiber(&self) -> bool {
        self.agree() && self.polynomial_route
    }
}

pub fn verify_fiber_point(fi: &FiberInstance) -> Result<PointCheck> {
    check_point(&fiber_ideal_with(&fi.g0, false)?, &fi.l1, &fi.u1)
}

pub fn check_point(ideal: &FiberIdeal, l1: &QMatrix, u1: &QMatrix) -> Result<PointCheck> {
    let values = ideal.eval(&point_coordinates(l1, u1))?;
    let nonvanishing: Vec<usize> = values
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(j, _)| j + 1)
        .collect();
    let mid = ideal.g0.inverse()?.try_mul(l1)?.try_mul(u1)?;
    Ok(PointCheck {
        polynomial_route: nonvanishing.is_empty(),
        ul_route: ul_membership(&mid)?,
        nonvanishing,
    })
}

pub fn jacobian_rank_at(fi: &FiberInstance) -> Result<usize> {
    fiber_ideal_with(&fi.g0, false)?.jacobian_rank(&fi.coordinates())
}

/// Copy of `l1` with `delta` added at the strictly lower position `(i, j)`.
pub fn perturb_lower(l1: &QMatrix, i: usize, j: usize, delta: &Rational) -> Result<QMatrix> {
    if i <= j || i >= l1.rows() {
        return Err(Error::Index(format!("({i}, {j}) is not strictly below the diagonal")));
    }
    let mut out = l1.clone();
    out[(i, j)] += delta;
    Ok(out)
}

/// Named elements of the torus normalizer, each with determinant 1.
pub const G0_PRESETS: [&str; 4] = ["identity", "coxeter", "longest", "torus"];

pub fn g0_preset(name: &str, n: usize) -> Result<QMatrix> {
    let m = n + 1;
    let signed_permutation = |perm: &dyn Fn(usize) -> usize| -> Result<QMatrix> {
        let mut p = QMatrix::zeros(m, m);
        for i in 0..m {
            p[(perm(i), i)] = Rational::one();
        }
        if p.det()? != Rational::one() {
            for c in 0..m {
                p[(0, c)] = -p[(0, c)].clone();
            }
        }
        Ok(p)
    };
    match name {
        "identity" => Ok(QMatrix::identity(m)),
        "coxeter" => signed_permutation(&|i| (i + 1) % m),
        "longest" => signed_permutation(&|i| m - 1 - i),
        "torus" => Ok(QMatrix::from_fn(m, m, |i, j| {
            if i != j {
                Rational::zero()
            } else if i + 1 == m && m % 2 == 1 {
                Rational::one()
            } else if i % 2 == 0 {
                rational::int(2)
            } else {
                rational::frac(1, 2)
            }
        })),
        other => Err(Error::Configuration(format!(
            "unknown g0 preset {other:?}; known: {}",
            G0_PRESETS.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ul_membership_examples() {
        assert!(ul_membership(&QMatrix::identity(3)).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u = random_unitriangular(&mut rng, 4, true, 3);
        let l = random_unitriangular(&mut rng, 4, false, 3);
        assert!(ul_membership(&u.try_mul(&l).unwrap()).unwrap());
        let d = QMatrix::from_fn(3, 3, |i, j| match (i, j) {
            (0, 0) => rational::int(2),
            (1, 1) => rational::frac(1, 2),
            (2, 2) => rational::int(1),
            _ => rational::int(0),
        });
        assert!(!ul_membership(&d).unwrap());
        assert!(ul_membership(&QMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn ul_factorization_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let u = random_unitriangular(&mut rng, 4, true, 3);
        let l = random_unitriangular(&mut rng, 4, false, 3);
        let (uu, ll) = ul_factor(&u.try_mul(&l).unwrap()).unwrap().unwrap();
        assert_eq!(uu, u);
        assert_eq!(ll, l);
    }

    #[test]
    fn identity_fiber() {
        let f = fiber_ideal(&QMatrix::identity(2)).unwrap();
        assert_eq!(f.generators.len(), 1);
        assert_eq!(f.f0_identity, Some(true));
        // variables u12, x21: f1 = x21 u12
        let expect = &Polynomial::var(2, 0) * &Polynomial::var(2, 1);
        assert_eq!(f.generators[0], expect);
        assert_eq!(f.eval(&[rational::int(0), rational::int(0)]).unwrap(), vec![rational::int(0)]);
    }

    #[test]
    fn constant_terms_are_minors_of_inverse() {
        let inst = sample_fiber_instance(3, 5).unwrap();
        let f = fiber_ideal(&inst.g0).unwrap();
        assert_eq!(f.generators.len(), 3);
        assert_eq!(f.f0_identity, Some(true));
        let minors = trailing_minors(&inst.g0.inverse().unwrap()).unwrap();
        for (j, g) in f.generators.iter().enumerate() {
            assert_eq!(g.constant_term(), &minors[j + 1] - rational::int(1));
        }
    }

    #[test]
    fn sampled_points_lie_on_fiber() {
        for n in 1..=3 {
            for seed in 0..5 {
                let inst = sample_fiber_instance(n, seed).unwrap();
                assert!(inst.is_consistent());
                assert!(inst.g0.det().unwrap().is_one());
                let c = verify_fiber_point(&inst).unwrap();
                assert!(c.on_fiber(), "{c:?}");
                assert!(jacobian_rank_at(&inst).unwrap() <= n);
            }
        }
        let a = sample_fiber_instance(2, 9).unwrap();
        let b = sample_fiber_instance(2, 9).unwrap();
        assert_eq!(a.g0, b.g0);
    }

    #[test]
    fn perturbed_points() {
        let inst = sample_fiber_instance(2, 1).unwrap();
        let f = fiber_ideal(&inst.g0).unwrap();
        let bad = perturb_lower(&inst.l1, 2, 0, &rational::int(1)).unwrap();
        let c = check_point(&f, &bad, &inst.u1).unwrap();
        assert!(c.agree());
        assert!(perturb_lower(&inst.l1, 0, 2, &rational::int(1)).is_err());
    }

    #[test]
    fn generators_match_direct_minors() {
        for n in 1..=3 {
            let inst = sample_fiber_instance(n, 21 + n as u64).unwrap();
            let f = fiber_ideal(&inst.g0).unwrap();
            let m = n + 1;
            let nv = f.num_vars();
            let nu = nv / 2;
            let mut upper = PolyMatrix::identity(m, nv);
            let mut lower = PolyMatrix::identity(m, nv);
            for (k, &(i, j)) in upper_positions(m).iter().enumerate() {
                upper[(i, j)] = Polynomial::var(nv, k);
                lower[(j, i)] = Polynomial::var(nv, nu + k);
            }
            let prod = PolyMatrix::from_constant(&inst.g0.inverse().unwrap(), nv)
                .try_mul(&lower)
                .unwrap()
                .try_mul(&upper)
                .unwrap();
            for j in 1..=n {
                let idx: Vec<usize> = (j..m).collect();
                let direct = &prod.minor_det(&idx, &idx).unwrap() - &Polynomial::one(nv);
                assert_eq!(f.generators[j - 1], direct);
            }
        }
    }

    #[test]
    fn rejects_bad_determinant() {
        let g = QMatrix::identity(3).scale(&rational::int(2));
        assert!(matches!(fiber_ideal(&g), Err(Error::Domain(_))));
    }

    #[test]
    fn presets_have_determinant_one() {
        for n in 1..=4 {
            for p in G0_PRESETS {
                let g = g0_preset(p, n).unwrap();
                assert!(g.det().unwrap().is_one(), "{p} {n}");
            }
        }
        assert!(g0_preset("nope", 2).is_err());
    }

    #[test]
    fn points_over_presets() {
        for n in 1..=3 {
            for p in G0_PRESETS {
                let g = g0_preset(p, n).unwrap();
                let inst = sample_point_over(&g, 4, 3).unwrap().expect("point found");
                assert!(inst.is_consistent());
                assert!(verify_fiber_point(&inst).unwrap().on_fiber());
            }
        }
    }

    #[test]
    fn variable_names() {
        assert_eq!(fiber_variable_names(2), vec!["u12", "u13", "u23", "x21", "x31", "x32"]);
    }
}
