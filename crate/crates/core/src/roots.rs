//! Classical root systems and matrix realizations of their Chevalley bases.
//!
//! Type `A_n` is realized in `sl(n+1)`. Types `B_n`, `C_n` and `D_n` are
//! realized as the Lie algebras preserving a bilinear form `J` supported on
//! the antidiagonal, `J[i][m-1-i] = eps_i`, with `eps` identically 1 for the
//! orthogonal types and `+1, ..., +1, -1, ..., -1` for the symplectic type.
//! With this form the positive root vectors are strictly upper triangular and
//! the Cartan subalgebra is diagonal.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{PolyMatrix, QMatrix};
use crate::poly::Polynomial;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            other => Err(Error::Configuration(format!("unknown root system family {other:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        f.write_str(c)
    }
}

/// A classical root system type with its rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootSystemType {
    family: Family,
    rank: usize,
}

impl RootSystemType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let min = if family == Family::D { 3 } else { 2 };
        if rank < min {
            return Err(Error::Configuration(format!(
                "type {family} needs rank at least {min}, got {rank}"
            )));
        }
        Ok(RootSystemType { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of positive roots.
    pub fn num_positive_roots(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
        }
    }

    /// Size of the defining matrices.
    pub fn matrix_dim(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n + 1,
            Family::B => 2 * n + 1,
            Family::C | Family::D => 2 * n,
        }
    }

    /// Positive roots in the fixed listing order.
    ///
    /// Type A lists `e_i - e_j` lexicographically in `(i, j)`. The other types
    /// list `e_i - e_j`, then `e_i + e_j`, then `e_i` (B) or `2e_i` (C), each
    /// block lexicographic.
    pub fn positive_roots(&self) -> Vec<Root> {
        let n = self.rank;
        let mut roots = Vec::with_capacity(self.num_positive_roots());
        let dim = if self.family == Family::A { n + 1 } else { n };
        let basis = |pairs: &[(usize, i64)]| {
            let mut c = vec![0i64; dim];
            for &(i, v) in pairs {
                c[i] += v;
            }
            Root { coords: c }
        };
        for i in 0..dim {
            for j in i + 1..dim {
                roots.push(basis(&[(i, 1), (j, -1)]));
            }
        }
        if self.family != Family::A {
            for i in 0..n {
                for j in i + 1..n {
                    roots.push(basis(&[(i, 1), (j, 1)]));
                }
            }
        }
        match self.family {
            Family::B => roots.extend((0..n).map(|i| basis(&[(i, 1)]))),
            Family::C => roots.extend((0..n).map(|i| basis(&[(i, 2)]))),
            _ => {}
        }
        roots
    }
}

impl fmt::Display for RootSystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// A root as an integer vector in the ambient lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    pub coords: Vec<i64>,
}

impl Root {
    /// Positive iff the first nonzero coordinate is positive.
    pub fn is_positive(&self) -> bool {
        self.coords.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
    }

    pub fn negate(&self) -> Root {
        Root {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn label(&self) -> String {
        let mut s = String::new();
        for (i, &c) in self.coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c < 0 {
                s.push('-');
            } else if !s.is_empty() {
                s.push('+');
            }
            if c.abs() != 1 {
                s.push_str(&c.abs().to_string());
            }
            s.push_str(&format!("e{}", i + 1));
        }
        s
    }
}

/// Matrix realization of a classical Lie algebra with its Chevalley triples.
#[derive(Debug, Clone)]
pub struct RootDatum {
    ty: RootSystemType,
    positive_roots: Vec<Root>,
    matrix_dim: usize,
    x: Vec<QMatrix>,
    y: Vec<QMatrix>,
    h: Vec<QMatrix>,
    h_basis: Vec<QMatrix>,
    form_signs: Option<Vec<i64>>,
}

pub fn build_root_datum(ty: RootSystemType) -> Result<RootDatum> {
    RootDatum::new(ty)
}

impl RootDatum {
    pub fn new(ty: RootSystemType) -> Result<Self> {
        let ty = RootSystemType::new(ty.family, ty.rank)?;
        let m = ty.matrix_dim();
        let n = ty.rank;
        let positive_roots = ty.positive_roots();
        let form_signs = match ty.family {
            Family::A => None,
            Family::B | Family::D => Some(vec![1; m]),
            Family::C => Some((0..m).map(|i| if i < n { 1 } else { -1 }).collect()),
        };
        let mut datum = RootDatum {
            ty,
            positive_roots: Vec::new(),
            matrix_dim: m,
            x: Vec::new(),
            y: Vec::new(),
            h: Vec::new(),
            h_basis: Vec::new(),
            form_signs,
        };

        for root in &positive_roots {
            let (x, y, h) = match ty.family {
                Family::A => {
                    let (i, j) = type_a_indices(root);
                    let x = QMatrix::unit(m, i, j);
                    let y = QMatrix::unit(m, j, i);
                    let h = bracket(&x, &y)?;
                    (x, y, h)
                }
                _ => datum.classical_triple(root)?,
            };
            let x3 = x.try_mul(&x)?.try_mul(&x)?;
            if !x3.is_zero() {
                return Err(Error::Configuration(format!("root vector for {} is not 3-step nilpotent", root.label())));
            }
            datum.x.push(x);
            datum.y.push(y);
            datum.h.push(h);
        }
        datum.positive_roots = positive_roots;
        datum.h_basis = (0..n)
            .map(|k| {
                let last = match ty.family {
                    Family::A => m - 1,
                    _ => m - 1 - k,
                };
                let mut v = QMatrix::zeros(m, m);
                v[(k, k)] = Rational::one();
                v[(last, last)] = -Rational::one();
                v
            })
            .collect();
        Ok(datum)
    }

    /// `(X, Y, H)` for a B/C/D root. `X` is `E_pq` paired with the entry
    /// forced by the form; `Y` is a multiple of `X^T` normalized so that
    /// `[H, X] = 2X` for `H = [X, Y]`.
    fn classical_triple(&self, root: &Root) -> Result<(QMatrix, QMatrix, QMatrix)> {
        let m = self.matrix_dim;
        let n = self.ty.rank;
        let bar = |i: usize| m - 1 - i;
        let nz: Vec<(usize, i64)> = root.coords.iter().copied().enumerate().filter(|&(_, c)| c != 0).collect();
        let (p, q) = match nz.as_slice() {
            [(i, 1), (j, -1)] => (*i, *j),
            [(i, 1), (j, 1)] => (*i, bar(*j)),
            [(i, 1)] => (*i, n),
            [(i, 2)] => (*i, bar(*i)),
            _ => return Err(Error::Domain(format!("{} is not a positive root", root.label()))),
        };
        let e = QMatrix::unit(m, p, q);
        let x = if (bar(q), bar(p)) == (p, q) {
            e
        } else {
            let partner = QMatrix::unit(m, bar(q), bar(p));
            let plus = e.try_add(&partner, false)?;
            if self.in_algebra(&plus) {
                plus
            } else {
                e.try_add(&partner, true)?
            }
        };
        if !self.in_algebra(&x) {
            return Err(Error::Configuration(format!("no root vector for {}", root.label())));
        }
        let y0 = x.transpose();
        let h0 = bracket(&x, &y0)?;
        let hx = bracket(&h0, &x)?;
        let lambda = &hx[(p, q)] / &x[(p, q)];
        let c = &rational::int(2) / &lambda;
        let y = y0.scale(&c);
        let h = bracket(&x, &y)?;
        Ok((x, y, h))
    }

    pub fn root_type(&self) -> RootSystemType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    /// `D`, the number of positive roots and of coordinates on `U`.
    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn matrix_dim(&self) -> usize {
        self.matrix_dim
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn x(&self, i: usize) -> &QMatrix {
        &self.x[i]
    }

    pub fn y(&self, i: usize) -> &QMatrix {
        &self.y[i]
    }

    pub fn h(&self, i: usize) -> &QMatrix {
        &self.h[i]
    }

    /// The fixed basis `v_1, ..., v_n` of the Cartan subalgebra.
    pub fn h_basis(&self) -> &[QMatrix] {
        &self.h_basis
    }

    /// The invariant form, `None` for type A.
    pub fn form(&self) -> Option<QMatrix> {
        self.form_signs.as_ref().map(|eps| {
            let m = self.matrix_dim;
            QMatrix::from_fn(m, m, |i, j| {
                if j == m - 1 - i {
                    rational::int(eps[i])
                } else {
                    Rational::zero()
                }
            })
        })
    }

    pub fn root_index(&self, root: &Root) -> Option<usize> {
        self.positive_roots.iter().position(|r| r == root)
    }

    /// Variable names aligned with the root listing.
    pub fn variable_names(&self) -> Vec<String> {
        self.positive_roots
            .iter()
            .map(|r| match self.ty.family {
                Family::A => {
                    let (i, j) = type_a_indices(r);
                    format!("x{}{}", i + 1, j + 1)
                }
                _ => format!("x[{}]", r.label()),
            })
            .collect()
    }

    /// Whether a constant matrix lies in the Lie algebra.
    pub fn in_algebra(&self, a: &QMatrix) -> bool {
        let m = self.matrix_dim;
        if a.rows() != m || a.cols() != m {
            return false;
        }
        match &self.form_signs {
            None => (0..m).fold(Rational::zero(), |acc, i| acc + &a[(i, i)]).is_zero(),
            Some(eps) => (0..m).all(|i| {
                (0..m).all(|j| {
                    let (ib, jb) = (m - 1 - i, m - 1 - j);
                    let lhs = &a[(jb, i)] * rational::int(eps[jb]) + &a[(ib, j)] * rational::int(eps[i]);
                    lhs.is_zero()
                })
            }),
        }
    }

    /// Polynomial version of [`RootDatum::in_algebra`].
    pub fn poly_in_algebra(&self, a: &PolyMatrix) -> bool {
        let m = self.matrix_dim;
        if a.rows() != m || a.cols() != m {
            return false;
        }
        match &self.form_signs {
            None => (0..m)
                .fold(Polynomial::zero(a.num_vars()), |acc, i| &acc + &a[(i, i)])
                .is_zero(),
            Some(eps) => (0..m).all(|i| {
                (0..m).all(|j| {
                    let (ib, jb) = (m - 1 - i, m - 1 - j);
                    let l = a[(jb, i)].scale(&rational::int(eps[jb]));
                    let r = a[(ib, j)].scale(&rational::int(eps[i]));
                    (&l + &r).is_zero()
                })
            }),
        }
    }

    /// `alpha(H)` for a diagonal `H` in the Cartan subalgebra.
    pub fn pairing(&self, root: &Root, h: &QMatrix) -> Rational {
        root.coords
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (i, &c)| acc + &h[(i, i)] * rational::int(c))
    }

    /// Dimension of the algebra from its defining linear equations, and the
    /// rank of the span of all `X_alpha`, `Y_alpha` and the Cartan basis.
    pub fn dimension_check(&self) -> (usize, usize) {
        let m = self.matrix_dim;
        let unknowns = m * m;
        let mut constraints: Vec<Vec<Rational>> = Vec::new();
        match &self.form_signs {
            None => constraints.push(
                (0..unknowns)
                    .map(|k| if k / m == k % m { Rational::one() } else { Rational::zero() })
                    .collect(),
            ),
            Some(eps) => {
                for i in 0..m {
                    for j in 0..m {
                        let (ib, jb) = (m - 1 - i, m - 1 - j);
                        let mut row = vec![Rational::zero(); unknowns];
                        row[jb * m + i] += rational::int(eps[jb]);
                        row[ib * m + j] += rational::int(eps[i]);
                        constraints.push(row);
                    }
                }
            }
        }
        let c = QMatrix::from_rows(constraints).expect("rectangular");
        let solution_dim = unknowns - c.rank();
        let span: Vec<Vec<Rational>> = self
            .x
            .iter()
            .chain(self.y.iter())
            .chain(self.h_basis.iter())
            .map(|a| (0..unknowns).map(|k| a[(k / m, k % m)].clone()).collect())
            .collect();
        let span_rank = QMatrix::from_rows(span).expect("rectangular").rank();
        (solution_dim, span_rank)
    }

    /// Coordinates of `H_alpha` in the fixed Cartan basis.
    pub fn coroot_coordinates(&self, i: usize) -> Vec<Rational> {
        CartanBasis::standard(self).coordinates_q(&self.h[i])
    }

    /// Sparse JSON view of the realization.
    pub fn to_json_value(&self) -> serde_json::Value {
        let sparse = |a: &QMatrix| -> Vec<(usize, usize, String)> {
            let mut out = Vec::new();
            for i in 0..a.rows() {
                for j in 0..a.cols() {
                    if !a[(i, j)].is_zero() {
                        out.push((i, j, rational::to_fraction_string(&a[(i, j)])));
                    }
                }
            }
            out
        };
        serde_json::json!({
            "type": self.ty.to_string(),
            "matrix_dim": self.matrix_dim,
            "form": self.form().as_ref().map(sparse),
            "roots": self.positive_roots.iter().enumerate().map(|(k, r)| serde_json::json!({
                "coords": r.coords,
                "variable": self.variable_names()[k],
                "X": sparse(&self.x[k]),
                "Y": sparse(&self.y[k]),
                "H": sparse(&self.h[k]),
            })).collect::<Vec<_>>(),
            "h_basis": self.h_basis.iter().map(sparse).collect::<Vec<_>>(),
        })
    }
}

fn type_a_indices(root: &Root) -> (usize, usize) {
    let i = root.coords.iter().position(|&c| c == 1).expect("type A root");
    let j = root.coords.iter().position(|&c| c == -1).expect("type A root");
    (i, j)
}

pub fn bracket(a: &QMatrix, b: &QMatrix) -> Result<QMatrix> {
    if !a.is_square() || (a.rows(), a.cols()) != (b.rows(), b.cols()) {
        return Err(Error::Shape("bracket needs square matrices of equal size".into()));
    }
    a.try_mul(b)?.try_add(&b.try_mul(a)?, true)
}

/// `exp(t X_alpha)` for a positive root, or `exp(t Y_alpha)` for a negative
/// one. Exact because `X_alpha^3 = 0`.
pub fn one_param(datum: &RootDatum, root: &Root, t: &Polynomial) -> Result<PolyMatrix> {
    let (idx, gen) = if root.is_positive() {
        let i = datum
            .root_index(root)
            .ok_or_else(|| Error::Domain(format!("{} is not a root of {}", root.label(), datum.ty)))?;
        (i, &datum.x[i])
    } else {
        let i = datum
            .root_index(&root.negate())
            .ok_or_else(|| Error::Domain(format!("{} is not a root of {}", root.label(), datum.ty)))?;
        (i, &datum.y[i])
    };
    let _ = idx;
    exp_nilpotent(gen, t)
}

/// `I + tN + t^2 N^2 / 2` for `N^3 = 0`.
pub fn exp_nilpotent(gen: &QMatrix, t: &Polynomial) -> Result<PolyMatrix> {
    let m = gen.rows();
    let nv = t.num_vars();
    let sq = gen.try_mul(gen)?;
    if !sq.try_mul(gen)?.is_zero() {
        return Err(Error::Domain("generator is not 3-step nilpotent".into()));
    }
    let t2 = t.pow(2).scale(&rational::frac(1, 2));
    PolyMatrix::from_fn(m, m, nv, |i, j| {
        let mut e = if i == j { Polynomial::one(nv) } else { Polynomial::zero(nv) };
        if !gen[(i, j)].is_zero() {
            e = &e + &t.scale(&gen[(i, j)]);
        }
        if !sq[(i, j)].is_zero() {
            e = &e + &t2.scale(&sq[(i, j)]);
        }
        e
    })
}

/// A basis of the Cartan subalgebra together with a left inverse used to
/// read off coordinates from diagonal entries.
#[derive(Debug, Clone)]
pub struct CartanBasis {
    vectors: Vec<Vec<Rational>>,
    rows: Vec<usize>,
    inverse: QMatrix,
}

impl CartanBasis {
    pub fn standard(datum: &RootDatum) -> Self {
        Self::from_diagonals(datum, datum.h_basis.clone()).expect("standard basis is valid")
    }

    /// Basis given by diagonal matrices of the Cartan subalgebra.
    pub fn from_diagonals(datum: &RootDatum, mats: Vec<QMatrix>) -> Result<Self> {
        let n = datum.rank();
        let m = datum.matrix_dim;
        if mats.len() != n {
            return Err(Error::Domain(format!("a Cartan basis needs {n} elements, got {}", mats.len())));
        }
        for a in &mats {
            let diagonal = (0..m).all(|i| (0..m).all(|j| i == j || a[(i, j)].is_zero()));
            if !diagonal || !datum.in_algebra(a) {
                return Err(Error::Domain("basis element is not in the Cartan subalgebra".into()));
            }
        }
        let vectors: Vec<Vec<Rational>> = mats
            .iter()
            .map(|a| (0..m).map(|i| a[(i, i)].clone()).collect())
            .collect();
        // m x n matrix with the basis vectors as columns
        let cols = QMatrix::from_fn(m, n, |i, k| vectors[k][i].clone());
        let (_, pivots) = cols.transpose().rref();
        if pivots.len() < n {
            return Err(Error::Domain("Cartan basis elements are dependent".into()));
        }
        let inverse = cols.submatrix(&pivots, &(0..n).collect::<Vec<_>>()).inverse()?;
        Ok(CartanBasis {
            vectors,
            rows: pivots,
            inverse,
        })
    }

    /// Basis `H_alpha` for the given positive root indices.
    pub fn coroots(datum: &RootDatum, indices: &[usize]) -> Result<Self> {
        Self::from_diagonals(datum, indices.iter().map(|&i| datum.h[i].clone()).collect())
    }

    /// Coroots of the simple roots.
    pub fn simple_coroots(datum: &RootDatum) -> Result<Self> {
        let ty = datum.ty;
        let n = ty.rank;
        let dim = if ty.family == Family::A { n + 1 } else { n };
        let unit = |pairs: &[(usize, i64)]| {
            let mut c = vec![0i64; dim];
            for &(i, v) in pairs {
                c[i] = v;
            }
            Root { coords: c }
        };
        let mut simple: Vec<Root> = (0..dim - 1).map(|i| unit(&[(i, 1), (i + 1, -1)])).collect();
        match ty.family {
            Family::A => {}
            Family::B => simple.push(unit(&[(n - 1, 1)])),
            Family::C => simple.push(unit(&[(n - 1, 2)])),
            Family::D => simple.push(unit(&[(n - 2, 1), (n - 1, 1)])),
        }
        let idx: Vec<usize> = simple
            .iter()
            .map(|r| datum.root_index(r).expect("simple root is positive"))
            .collect();
        Self::coroots(datum, &idx)
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn coordinates_q(&self, diag: &QMatrix) -> Vec<Rational> {
        let n = self.vectors.len();
        (0..n)
            .map(|k| {
                self.rows
                    .iter()
                    .enumerate()
                    .fold(Rational::zero(), |acc, (r, &row)| acc + &self.inverse[(k, r)] * &diag[(row, row)])
            })
            .collect()
    }

    pub fn coordinates(&self, m: &PolyMatrix) -> Vec<Polynomial> {
        let n = self.vectors.len();
        (0..n)
            .map(|k| {
                self.rows.iter().enumerate().fold(Polynomial::zero(m.num_vars()), |acc, (r, &row)| {
                    let c = &self.inverse[(k, r)];
                    if c.is_zero() {
                        acc
                    } else {
                        &acc + &m[(row, row)].scale(c)
                    }
                })
            })
            .collect()
    }
}

/// Cartan component of `M` in the fixed basis.
pub fn proj_h(datum: &RootDatum, m: &PolyMatrix) -> Result<Vec<Polynomial>> {
    proj_h_in(datum, &CartanBasis::standard(datum), m)
}

pub fn proj_h_in(datum: &RootDatum, basis: &CartanBasis, m: &PolyMatrix) -> Result<Vec<Polynomial>> {
    if !datum.poly_in_algebra(m) {
        return Err(Error::Domain("matrix does not lie in the Lie algebra".into()));
    }
    Ok(basis.coordinates(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(f: Family, n: usize) -> RootDatum {
        build_root_datum(RootSystemType::new(f, n).unwrap()).unwrap()
    }

    fn all_types(max_rank: usize) -> Vec<RootSystemType> {
        let mut out = Vec::new();
        for f in [Family::A, Family::B, Family::C, Family::D] {
            for n in 2..=max_rank {
                if let Ok(t) = RootSystemType::new(f, n) {
                    out.push(t);
                }
            }
        }
        out
    }

    #[test]
    fn positive_root_counts() {
        assert_eq!(datum(Family::A, 2).num_positive(), 3);
        assert_eq!(datum(Family::B, 3).num_positive(), 9);
        assert_eq!(datum(Family::D, 4).num_positive(), 12);
        for t in all_types(5) {
            assert_eq!(t.positive_roots().len(), t.num_positive_roots());
            assert!(t.positive_roots().iter().all(Root::is_positive));
        }
    }

    #[test]
    fn rank_bounds() {
        assert!(RootSystemType::new(Family::A, 1).is_err());
        assert!(RootSystemType::new(Family::D, 2).is_err());
        assert!(RootSystemType::new(Family::D, 3).is_ok());
    }

    #[test]
    fn chevalley_triples() {
        for t in all_types(5) {
            let d = build_root_datum(t).unwrap();
            for (k, r) in d.positive_roots().iter().enumerate() {
                let (x, y, h) = (d.x(k), d.y(k), d.h(k));
                assert_eq!(&bracket(x, y).unwrap(), h, "{t} {}", r.label());
                assert_eq!(bracket(h, x).unwrap(), x.scale(&rational::int(2)), "{t} {}", r.label());
                assert_eq!(d.pairing(r, h), rational::int(2));
                assert!(d.in_algebra(x) && d.in_algebra(y) && d.in_algebra(h));
                for i in 0..x.rows() {
                    for j in 0..=i {
                        assert!(x[(i, j)].is_zero(), "X not strictly upper for {t}");
                        assert!(y[(j, i)].is_zero(), "Y not strictly lower for {t}");
                    }
                    for j in 0..x.rows() {
                        assert!(i == j || h[(i, j)].is_zero());
                    }
                }
                // [H_alpha, X_beta] = <beta, H_alpha> X_beta
                for (l, s) in d.positive_roots().iter().enumerate() {
                    let lhs = bracket(h, d.x(l)).unwrap();
                    assert_eq!(lhs, d.x(l).scale(&d.pairing(s, h)));
                }
            }
        }
    }

    #[test]
    fn triangular_decomposition_dimension() {
        for t in all_types(5) {
            let d = build_root_datum(t).unwrap();
            let expected = 2 * d.num_positive() + d.rank();
            assert_eq!(d.dimension_check(), (expected, expected), "{t}");
        }
    }

    #[test]
    fn commuting_diagonals() {
        let d = datum(Family::C, 3);
        let z = bracket(&d.h_basis()[0], &d.h_basis()[2]).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn a2_bracket_sign() {
        let d = datum(Family::A, 2);
        // roots: e1-e2, e1-e3, e2-e3
        let b = bracket(d.x(0), d.x(2)).unwrap();
        assert_eq!(&b, d.x(1));
    }

    #[test]
    fn one_param_groups() {
        let d = datum(Family::A, 3);
        let nv = 1;
        let t = Polynomial::var(nv, 0);
        let root = d.positive_roots()[1].clone(); // e1 - e3
        let g = one_param(&d, &root, &t).unwrap();
        let mut expected = PolyMatrix::identity(4, nv);
        expected[(0, 2)] = t.clone();
        assert_eq!(g, expected);
        assert!(one_param(&d, &root, &Polynomial::zero(nv)).unwrap().is_identity());
        let inv = one_param(&d, &root, &-&t).unwrap();
        assert!(g.try_mul(&inv).unwrap().is_identity());
        let neg = one_param(&d, &root.negate(), &t).unwrap();
        assert_eq!(neg[(2, 0)], t);
        assert!(matches!(
            one_param(&d, &Root { coords: vec![1, 1, 0, 0] }, &t),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn short_root_exponential_has_square_term() {
        let d = datum(Family::B, 2);
        let e1 = Root { coords: vec![1, 0] };
        let t = Polynomial::var(1, 0);
        let g = one_param(&d, &e1, &t).unwrap();
        let has_square = g.entries().iter().any(|p| p.total_degree() == Some(2));
        assert!(has_square);
        // X = E_{1,3} - E_{3,5}, X^2 = -E_{1,5}
        assert_eq!(g[(0, 4)], t.pow(2).scale(&rational::frac(-1, 2)));
    }

    #[test]
    fn one_param_preserves_form() {
        for t in all_types(4).into_iter().filter(|t| t.family() != Family::A) {
            let d = build_root_datum(t).unwrap();
            let nv = 1;
            let s = Polynomial::var(nv, 0);
            let j = PolyMatrix::from_constant(&d.form().unwrap(), nv);
            for r in d.positive_roots() {
                for root in [r.clone(), r.negate()] {
                    let g = one_param(&d, &root, &s).unwrap();
                    let lhs = g.transpose().try_mul(&j).unwrap().try_mul(&g).unwrap();
                    assert_eq!(lhs, j, "{t} {}", root.label());
                }
            }
        }
    }

    #[test]
    fn projection_to_cartan() {
        let d = datum(Family::A, 3);
        let nv = 1;
        let k = 3; // e2 - e3
        let h = PolyMatrix::from_constant(d.h(k), nv);
        let coords: Vec<Rational> = proj_h(&d, &h).unwrap().iter().map(|p| p.as_constant().unwrap()).collect();
        assert_eq!(coords, d.coroot_coordinates(k));
        assert_eq!(coords, vec![rational::int(0), rational::int(1), rational::int(-1)]);

        let x = PolyMatrix::from_constant(d.x(0), nv);
        assert!(proj_h(&d, &x).unwrap().iter().all(Polynomial::is_zero));

        let sum = d.y(k).try_add(d.h(k), false).unwrap().try_add(d.x(1), false).unwrap();
        let got: Vec<Rational> = proj_h(&d, &PolyMatrix::from_constant(&sum, nv))
            .unwrap()
            .iter()
            .map(|p| p.as_constant().unwrap())
            .collect();
        assert_eq!(got, coords);

        let outside = PolyMatrix::identity(4, nv);
        assert!(matches!(proj_h(&d, &outside), Err(Error::Domain(_))));
    }

    #[test]
    fn alternative_cartan_bases() {
        for t in all_types(4) {
            let d = build_root_datum(t).unwrap();
            let b = CartanBasis::simple_coroots(&d).unwrap();
            assert_eq!(b.len(), d.rank());
        }
        let d = datum(Family::A, 2);
        // H of e1-e2 and e1-e3 span h; H of e1-e2 twice does not
        assert!(CartanBasis::coroots(&d, &[0, 1]).is_ok());
        assert!(CartanBasis::coroots(&d, &[0, 0]).is_err());
    }

    #[test]
    fn json_dump_is_stable() {
        let d = datum(Family::B, 2);
        let a = serde_json::to_string(&d.to_json_value()).unwrap();
        let b = serde_json::to_string(&datum(Family::B, 2).to_json_value()).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("\"type\":\"B2\""));
    }
}
