//! Dense matrices over `Q` and over `Q[x1, ..., xD]`.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::{self, Rational};

/// Dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        QMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rational::int(v)).collect())
                .collect(),
        )
    }

    /// `E_{ij}` of size `n`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i, j)] = Rational::one();
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn try_mul(&self, rhs: &QMatrix) -> Result<QMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, rhs: &QMatrix, negate: bool) -> Result<QMatrix> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::Shape("matrix sizes differ".into()));
        }
        Ok(QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| if negate { a - b } else { a + b })
                .collect(),
        })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> QMatrix {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    let t = &f * &m[(r, j)];
                    m[(i, j)] -= t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn det(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let mut m = self.clone();
        let mut det = Rational::one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= &piv;
            for i in c + 1..m.rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] / &piv;
                for j in c..m.cols {
                    let t = &f * &m[(c, j)];
                    m[(i, j)] -= t;
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<QMatrix> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Domain("matrix is singular".into()));
        }
        Ok(Self::from_fn(n, n, |i, j| r[(i, j + n)].clone()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|q| q.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Dense matrix of polynomials over a shared ring.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    num_vars: usize,
    data: Vec<Polynomial>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DetMethod {
    /// Memoized Laplace expansion for small or sparse blocks, Bareiss otherwise.
    #[default]
    Auto,
    Laplace,
    Bareiss,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Triangle {
    Upper,
    Lower,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize, num_vars: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            num_vars,
            data: vec![Polynomial::zero(num_vars); rows * cols],
        }
    }

    pub fn identity(n: usize, num_vars: usize) -> Self {
        let mut m = Self::zeros(n, n, num_vars);
        for i in 0..n {
            m[(i, i)] = Polynomial::one(num_vars);
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        num_vars: usize,
        mut f: impl FnMut(usize, usize) -> Polynomial,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let p = f(i, j);
                if p.num_vars() != num_vars {
                    return Err(Error::Dimension {
                        expected: num_vars,
                        found: p.num_vars(),
                    });
                }
                data.push(p);
            }
        }
        Ok(PolyMatrix {
            rows,
            cols,
            num_vars,
            data,
        })
    }

    pub fn from_constant(m: &QMatrix, num_vars: usize) -> Self {
        PolyMatrix {
            rows: m.rows(),
            cols: m.cols(),
            num_vars,
            data: m
                .data
                .iter()
                .map(|c| Polynomial::constant(num_vars, c.clone()))
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.data
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = &self[(i, j)];
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows, self.num_vars);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn try_mul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        self.check_ring(rhs)?;
        let mut out = Self::zeros(self.rows, rhs.cols, self.num_vars);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let t = if b.is_one() { a.clone() } else if a.is_one() { b.clone() } else { a * b };
                    out[(i, j)] = &out[(i, j)] + &t;
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn try_sub(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        self.zip_with(rhs, |a, b| a - b)
    }

    pub fn scale(&self, c: &Rational) -> PolyMatrix {
        self.map(|p| p.scale(c))
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            num_vars: self.num_vars,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn eval(&self, point: &[Rational]) -> Result<QMatrix> {
        let mut data = Vec::with_capacity(self.data.len());
        for p in &self.data {
            data.push(p.eval(point)?);
        }
        Ok(QMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Whether the diagonal is the constant 1 and the other triangle vanishes.
    pub fn is_unitriangular(&self, tri: Triangle) -> bool {
        if self.rows != self.cols {
            return false;
        }
        (0..self.rows).all(|i| {
            (0..self.cols).all(|j| {
                let e = &self[(i, j)];
                match (i.cmp(&j), tri) {
                    (std::cmp::Ordering::Equal, _) => e.is_one(),
                    (std::cmp::Ordering::Greater, Triangle::Upper) => e.is_zero(),
                    (std::cmp::Ordering::Less, Triangle::Lower) => e.is_zero(),
                    _ => true,
                }
            })
        })
    }

    /// Inverse of a unitriangular matrix by the truncated Neumann series
    /// `sum_{l < size} (-1)^l (M - I)^l`, which is exact because `M - I` is
    /// nilpotent.
    pub fn invert_unitriangular(&self) -> Result<PolyMatrix> {
        if !self.is_unitriangular(Triangle::Upper) && !self.is_unitriangular(Triangle::Lower) {
            return Err(Error::Shape("matrix is not unitriangular".into()));
        }
        let n = self.rows;
        let id = Self::identity(n, self.num_vars);
        let nil = self.try_sub(&id)?;
        let mut acc = id.clone();
        let mut power = id;
        for l in 1..n {
            power = power.try_mul(&nil)?;
            acc = if l % 2 == 1 { acc.try_sub(&power)? } else { acc.try_add(&power)? };
        }
        Ok(acc)
    }

    /// Inverse of an upper unitriangular `I + u` as a signed sum over chains
    /// `i < a_1 < ... < a_{l-1} < j` of products `u_{i,a_1} ... u_{a_{l-1},j}`.
    pub fn path_sum_inverse(&self) -> Result<PolyMatrix> {
        if !self.is_unitriangular(Triangle::Upper) {
            return Err(Error::Shape("matrix is not upper unitriangular".into()));
        }
        let n = self.rows;
        let nv = self.num_vars;
        let mut out = Self::identity(n, nv);
        for i in 0..n {
            // stack of (last vertex, signed product so far)
            let mut stack = vec![(i, Polynomial::one(nv))];
            while let Some((a, prod)) = stack.pop() {
                for b in a + 1..n {
                    let u = &self.data[a * n + b];
                    if u.is_zero() {
                        continue;
                    }
                    let next = -&(&prod * u);
                    out.data[i * n + b] = &out.data[i * n + b] + &next;
                    stack.push((b, next));
                }
            }
        }
        Ok(out)
    }

    /// Determinant of the square submatrix on `rows x cols`.
    pub fn minor_det(&self, rows: &[usize], cols: &[usize]) -> Result<Polynomial> {
        self.minor_det_with(rows, cols, DetMethod::Auto)
    }

    pub fn minor_det_with(&self, rows: &[usize], cols: &[usize], method: DetMethod) -> Result<Polynomial> {
        self.check_indices(rows, self.rows, "row")?;
        self.check_indices(cols, self.cols, "column")?;
        if rows.len() != cols.len() {
            return Err(Error::Index(format!(
                "minor needs as many rows as columns, got {} and {}",
                rows.len(),
                cols.len()
            )));
        }
        let k = rows.len();
        if k == 0 {
            return Ok(Polynomial::one(self.num_vars));
        }
        let block: Vec<&Polynomial> = rows
            .iter()
            .flat_map(|&r| cols.iter().map(move |&c| (r, c)))
            .map(|(r, c)| &self[(r, c)])
            .collect();
        let method = match method {
            DetMethod::Auto => {
                let zeros = block.iter().filter(|p| p.is_zero()).count();
                if k <= 5 || (2 * zeros >= k * k && k <= 16) {
                    DetMethod::Laplace
                } else {
                    DetMethod::Bareiss
                }
            }
            m => m,
        };
        Ok(match method {
            DetMethod::Laplace => laplace_det(&block, k, self.num_vars),
            _ => bareiss_det(&block, k, self.num_vars),
        })
    }

    pub fn det(&self) -> Result<Polynomial> {
        if self.rows != self.cols {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        self.minor_det(&idx, &idx)
    }

    fn check_indices(&self, idx: &[usize], bound: usize, what: &str) -> Result<()> {
        for (pos, &i) in idx.iter().enumerate() {
            if i >= bound {
                return Err(Error::Index(format!("{what} index {i} out of range 0..{bound}")));
            }
            if idx[..pos].contains(&i) {
                return Err(Error::Index(format!("repeated {what} index {i}")));
            }
        }
        Ok(())
    }

    fn check_ring(&self, rhs: &PolyMatrix) -> Result<()> {
        if self.num_vars != rhs.num_vars {
            return Err(Error::Dimension {
                expected: self.num_vars,
                found: rhs.num_vars,
            });
        }
        Ok(())
    }

    fn zip_with(&self, rhs: &PolyMatrix, f: impl Fn(&Polynomial, &Polynomial) -> Polynomial) -> Result<PolyMatrix> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::Shape("matrix sizes differ".into()));
        }
        self.check_ring(rhs)?;
        Ok(PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            num_vars: self.num_vars,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }
}

/// Expansion along rows, top to bottom, memoizing the minors of the trailing
/// rows by their column set.
fn laplace_det(block: &[&Polynomial], k: usize, num_vars: usize) -> Polynomial {
    assert!(k < 64);
    let mut memo: HashMap<u64, Polynomial> = HashMap::new();
    memo.insert(0, Polynomial::one(num_vars));
    // masks of size s describe the minor on rows k-s..k
    let mut level: Vec<u64> = vec![0];
    for s in 1..=k {
        let row = k - s;
        let mut next: Vec<u64> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for &m in &level {
            for c in 0..k {
                let bit = 1u64 << c;
                if m & bit == 0 && seen.insert(m | bit) {
                    next.push(m | bit);
                }
            }
        }
        for &mask in &next {
            let mut acc = Polynomial::zero(num_vars);
            let mut pos = 0usize;
            for c in 0..k {
                let bit = 1u64 << c;
                if mask & bit == 0 {
                    continue;
                }
                let entry = block[row * k + c];
                if !entry.is_zero() {
                    let sub = &memo[&(mask & !bit)];
                    if !sub.is_zero() {
                        let t = entry * sub;
                        acc = if pos.is_multiple_of(2) { &acc + &t } else { &acc - &t };
                    }
                }
                pos += 1;
            }
            memo.insert(mask, acc);
        }
        for m in &level {
            if *m != 0 {
                memo.remove(m);
            }
        }
        level = next;
    }
    memo.remove(&((1u64 << k) - 1)).expect("full minor computed")
}

/// Fraction-free elimination; every division is exact.
fn bareiss_det(block: &[&Polynomial], k: usize, num_vars: usize) -> Polynomial {
    let mut m: Vec<Polynomial> = block.iter().map(|p| (*p).clone()).collect();
    let mut prev = Polynomial::one(num_vars);
    let mut negate = false;
    for p in 0..k {
        if m[p * k + p].is_zero() {
            let Some(r) = (p + 1..k).find(|&r| !m[r * k + p].is_zero()) else {
                return Polynomial::zero(num_vars);
            };
            for j in 0..k {
                m.swap(p * k + j, r * k + j);
            }
            negate = !negate;
        }
        for i in p + 1..k {
            for j in p + 1..k {
                let num = &(&m[i * k + j] * &m[p * k + p]) - &(&m[i * k + p] * &m[p * k + j]);
                m[i * k + j] = num
                    .exact_div(&prev)
                    .expect("Bareiss step divides exactly by the previous pivot");
            }
        }
        prev = m[p * k + p].clone();
    }
    let d = m[k * k - 1].clone();
    if negate {
        -&d
    } else {
        d
    }
}

impl std::ops::Index<(usize, usize)> for PolyMatrix {
    type Output = Polynomial;
    fn index(&self, (i, j): (usize, usize)) -> &Polynomial {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for PolyMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Polynomial {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{} over {} vars", self.rows, self.cols, self.num_vars)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
