//! The map `phi`: Cartan projection of the adjoint action of `U` on the
//! negative root vectors, its maximal minors `q_I`, and the monomial ideal
//! spanned by their supports.

use std::collections::BTreeSet;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::matrix::{DetMethod, PolyMatrix, QMatrix};
use crate::poly::{Monomial, Polynomial};
use crate::rational::Rational;
use crate::roots::{exp_nilpotent, CartanBasis, Family, RootDatum};

/// Order of the factors `lambda_alpha(x_alpha)` in `Psi`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum ProductOrder {
    /// The listing order of the positive roots.
    #[default]
    Listing,
    /// The listing order reversed. In type A this gives `Psi = I + u`.
    Reversed,
}

/// Options for building `phi`.
#[derive(Debug, Clone, Default)]
pub struct PhiOptions {
    pub order: ProductOrder,
    /// Cartan basis used for coordinates; the fixed basis when `None`.
    pub basis: Option<CartanBasis>,
    /// Substitute `c_alpha * x_alpha` for `x_alpha` in `Psi`.
    pub scales: Option<Vec<Rational>>,
}

/// `Psi(x) = lambda_1(x_1) ... lambda_D(x_D)` in the listing order.
pub fn build_psi(datum: &RootDatum) -> Result<PolyMatrix> {
    build_psi_with(datum, ProductOrder::Listing, None)
}

pub fn build_psi_with(datum: &RootDatum, order: ProductOrder, scales: Option<&[Rational]>) -> Result<PolyMatrix> {
    let d = datum.num_positive();
    if let Some(c) = scales {
        if c.len() != d {
            return Err(Error::Dimension {
                expected: d,
                found: c.len(),
            });
        }
        if c.iter().any(Zero::is_zero) {
            return Err(Error::Domain("scaling factors must be nonzero".into()));
        }
    }
    let mut idx: Vec<usize> = (0..d).collect();
    if order == ProductOrder::Reversed {
        idx.reverse();
    }
    let mut psi = PolyMatrix::identity(datum.matrix_dim(), d);
    for i in idx {
        let mut t = Polynomial::var(d, i);
        if let Some(c) = scales {
            t = t.scale(&c[i]);
        }
        psi = psi.try_mul(&exp_nilpotent(datum.x(i), &t)?)?;
    }
    Ok(psi)
}

/// The `D x n` matrix of `phi`: row `alpha` holds the Cartan coordinates of
/// `Ad_Psi(Y_alpha)`.
#[derive(Debug, Clone)]
pub struct PhiMatrix {
    datum: RootDatum,
    basis: CartanBasis,
    entries: PolyMatrix,
}

impl PhiMatrix {
    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn basis(&self) -> &CartanBasis {
        &self.basis
    }

    pub fn entries(&self) -> &PolyMatrix {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> &Polynomial {
        &self.entries[(row, col)]
    }

    /// A copy with `delta` added to one entry.
    pub fn perturbed(&self, row: usize, col: usize, delta: &Polynomial) -> Result<PhiMatrix> {
        if row >= self.entries.rows() || col >= self.entries.cols() {
            return Err(Error::Index(format!("entry ({row}, {col}) is out of range")));
        }
        let mut out = self.clone();
        out.entries[(row, col)] = self.entries[(row, col)].arith(delta, crate::poly::PolyOp::Add)?;
        Ok(out)
    }

    /// `q_I`, the minor on the rows `I` and all columns.
    pub fn q_minor(&self, rows: &[usize]) -> Result<Polynomial> {
        let n = self.entries.cols();
        if rows.len() != n {
            return Err(Error::Index(format!("q_I needs {n} rows, got {}", rows.len())));
        }
        self.entries.minor_det_with(rows, &(0..n).collect::<Vec<_>>(), DetMethod::Auto)
    }
}

pub fn phi_matrix(datum: &RootDatum) -> Result<PhiMatrix> {
    phi_matrix_with(datum, &PhiOptions::default())
}

pub fn phi_matrix_with(datum: &RootDatum, opts: &PhiOptions) -> Result<PhiMatrix> {
    let d = datum.num_positive();
    let n = datum.rank();
    let basis = opts.basis.clone().unwrap_or_else(|| CartanBasis::standard(datum));
    let psi = build_psi_with(datum, opts.order, opts.scales.as_deref())?;
    let psi_inv = psi.invert_unitriangular()?;
    let rows: Vec<Vec<Polynomial>> = (0..d)
        .into_par_iter()
        .map(|r| {
            let y = PolyMatrix::from_constant(datum.y(r), d);
            let ad = psi.try_mul(&y)?.try_mul(&psi_inv)?;
            crate::roots::proj_h_in(datum, &basis, &ad)
        })
        .collect::<Result<_>>()?;
    let entries = PolyMatrix::from_fn(d, n, d, |r, k| rows[r][k].clone())?;
    Ok(PhiMatrix {
        datum: datum.clone(),
        basis,
        entries,
    })
}

/// Type A only: entry `(alpha = e_i - e_j, k)` is `V_ik U_kj` with
/// `U = I + u` and `V = U^{-1}`, in the fixed basis `v_k = E_kk - E_{n+1,n+1}`.
pub fn phi_matrix_type_a(datum: &RootDatum) -> Result<PhiMatrix> {
    if datum.root_type().family() != Family::A {
        return Err(Error::Domain("the closed form is specific to type A".into()));
    }
    let d = datum.num_positive();
    let n = datum.rank();
    let m = n + 1;
    let pairs: Vec<(usize, usize)> = datum
        .positive_roots()
        .iter()
        .map(|r| {
            let i = r.coords.iter().position(|&c| c == 1).expect("type A root");
            let j = r.coords.iter().position(|&c| c == -1).expect("type A root");
            (i, j)
        })
        .collect();
    let u = PolyMatrix::from_fn(m, m, d, |a, b| {
        if a == b {
            Polynomial::one(d)
        } else {
            match pairs.iter().position(|&p| p == (a, b)) {
                Some(v) => Polynomial::var(d, v),
                None => Polynomial::zero(d),
            }
        }
    })?;
    let v = u.invert_unitriangular()?;
    let entries = PolyMatrix::from_fn(d, n, d, |r, k| {
        let (i, j) = pairs[r];
        &v[(i, k)] * &u[(k, j)]
    })?;
    Ok(PhiMatrix {
        datum: datum.clone(),
        basis: CartanBasis::standard(datum),
        entries,
    })
}

/// The monomial ideal generated by the supports of all maximal minors.
#[derive(Debug, Clone, Serialize)]
pub struct IBResult {
    pub ideal: MonomialIdeal,
    pub all_support: BTreeSet<Monomial>,
    pub minor_count: usize,
}

pub fn compute_ib(datum: &RootDatum) -> Result<IBResult> {
    compute_ib_from(&phi_matrix(datum)?)
}

/// Minors are evaluated in parallel and merged in colex order, so the result
/// does not depend on scheduling.
pub fn compute_ib_from(phi: &PhiMatrix) -> Result<IBResult> {
    let d = phi.entries.rows();
    let n = phi.entries.cols();
    let subsets = colex_subsets(d, n);
    let supports: Vec<BTreeSet<Monomial>> = subsets
        .par_iter()
        .map(|s| phi.q_minor(s).map(|q| q.support()))
        .collect::<Result<_>>()?;
    let mut ideal = MonomialIdeal::zero(d);
    let mut all_support = BTreeSet::new();
    for s in supports {
        ideal.extend(s.iter().cloned())?;
        all_support.extend(s);
    }
    Ok(IBResult {
        ideal,
        all_support,
        minor_count: subsets.len(),
    })
}

/// All `k`-subsets of `0..d` in colex order.
pub fn colex_subsets(d: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > d {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        // colex successor: bump the first entry that can move
        let mut i = 0;
        while i < k && (if i + 1 < k { c[i] + 1 == c[i + 1] } else { c[i] + 1 == d }) {
            i += 1;
        }
        if i == k {
            break;
        }
        c[i] += 1;
        for (j, slot) in c.iter_mut().enumerate().take(i) {
            *slot = j;
        }
    }
    out
}

/// Whether the degree-1 part of row `alpha` is `coords(H_alpha) * x_alpha`
/// for every `alpha`, with vanishing constant terms.
pub fn verify_linear_part(datum: &RootDatum) -> Result<bool> {
    Ok(linear_part_holds(&phi_matrix(datum)?))
}

pub fn linear_part_holds(phi: &PhiMatrix) -> bool {
    let d = phi.entries.rows();
    let n = phi.entries.cols();
    (0..d).all(|r| {
        let coords = phi.basis.coordinates_q(phi.datum.h(r));
        let x = Polynomial::var(d, r);
        (0..n).all(|k| {
            let p = &phi.entries[(r, k)];
            p.constant_term().is_zero() && p.homogeneous_part(1) == x.scale(&coords[k])
        })
    })
}

/// Whether the roots indexed by `subset` are linearly independent.
pub fn roots_independent(datum: &RootDatum, subset: &[usize]) -> bool {
    let rows: Vec<Vec<Rational>> = subset
        .iter()
        .map(|&i| datum.positive_roots()[i].coords.iter().map(|&c| Rational::from_integer(c.into())).collect())
        .collect();
    match QMatrix::from_rows(rows) {
        Ok(m) => m.rank() == subset.len(),
        Err(_) => subset.is_empty(),
    }
}
