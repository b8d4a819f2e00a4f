//! Coxeter arrangements, their intersection lattices, nerve complexes and
//! Stanley-Reisner ideals, and the signed-graph description of the lattice.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{minimal_generators, MonomialIdeal};
use crate::phi::colex_subsets;
use crate::poly::Monomial;
use crate::roots::{Family, Root, RootSystemType};

/// Hyperplanes `ker(alpha)` for the positive roots, in the listing order
/// shared with the variables of `phi`.
#[derive(Debug, Clone, Serialize)]
pub struct Arrangement {
    #[serde(skip)]
    ty: RootSystemType,
    normals: Vec<Vec<i64>>,
    ambient_dim: usize,
    rank: usize,
}

/// An interior flat, recorded by the hyperplanes containing it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Flat {
    pub rank: usize,
    pub hyperplanes: Vec<usize>,
}

impl Flat {
    pub fn mask(&self) -> u128 {
        to_mask(&self.hyperplanes)
    }
}

/// The nerve complex: faces are subsets of some `F_pi`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NerveComplex {
    pub vertex_count: usize,
    pub facets: Vec<Vec<usize>>,
}

pub fn coxeter_arrangement(t: RootSystemType) -> Arrangement {
    let normals: Vec<Vec<i64>> = t.positive_roots().into_iter().map(|r| r.coords).collect();
    let ambient_dim = normals[0].len();
    Arrangement {
        ty: t,
        normals,
        ambient_dim,
        rank: t.rank(),
    }
}

impl Arrangement {
    pub fn root_type(&self) -> RootSystemType {
        self.ty
    }

    pub fn normals(&self) -> &[Vec<i64>] {
        &self.normals
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Rank of the span of the normals indexed by `subset`.
    pub fn span_rank(&self, subset: &[usize]) -> usize {
        let rows: Vec<&[i64]> = subset.iter().map(|&i| self.normals[i].as_slice()).collect();
        int_rank(&rows)
    }

    pub fn is_independent(&self, subset: &[usize]) -> bool {
        self.span_rank(subset) == subset.len()
    }

    /// All hyperplanes whose normal lies in the span of `subset`.
    pub fn closure(&self, subset: &[usize]) -> Vec<usize> {
        let basis = self.independent_basis(subset);
        let r = basis.len();
        let mut rows: Vec<&[i64]> = basis.iter().map(|&i| self.normals[i].as_slice()).collect();
        let mut out = Vec::new();
        for (k, n) in self.normals.iter().enumerate() {
            rows.push(n);
            if int_rank(&rows) == r {
                out.push(k);
            }
            rows.pop();
        }
        out
    }

    fn independent_basis(&self, subset: &[usize]) -> Vec<usize> {
        let mut basis: Vec<usize> = Vec::new();
        for &i in subset {
            basis.push(i);
            if !self.is_independent(&basis) {
                basis.pop();
            }
        }
        basis
    }
}

/// Exact rank of a small integer matrix by fraction-free elimination.
fn int_rank(rows: &[&[i64]]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            let f = row[c];
            if f == 0 {
                continue;
            }
            let mut g = 0i128;
            for (x, &pv) in row.iter_mut().zip(&pivot) {
                *x = *x * pivot[c] - f * pv;
                g = gcd(g, *x);
            }
            if g > 1 {
                row.iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn to_mask(set: &[usize]) -> u128 {
    set.iter().fold(0u128, |m, &i| m | 1u128 << i)
}

fn from_mask(mask: u128) -> Vec<usize> {
    (0..128).filter(|&i| mask >> i & 1 == 1).collect()
}

fn check_size(arr: &Arrangement) -> Result<()> {
    if arr.len() > 128 {
        return Err(Error::Configuration(format!(
            "lattice computations support at most 128 hyperplanes, got {}",
            arr.len()
        )));
    }
    Ok(())
}

/// Interior flats, sorted by rank and then by hyperplane set. Built rank by
/// rank: every flat of rank `r + 1` is the closure of a flat of rank `r`
/// with one more hyperplane.
pub fn flats(arr: &Arrangement) -> Result<Vec<Flat>> {
    check_size(arr)?;
    let d = arr.len();
    let mut out = Vec::new();
    let mut level: Vec<u128> = vec![0];
    for r in 1..arr.rank {
        let mut next: HashSet<u128> = HashSet::new();
        for &f in &level {
            let members = from_mask(f);
            let mut covered = f;
            for a in 0..d {
                if covered >> a & 1 == 1 {
                    continue;
                }
                let mut s = members.clone();
                s.push(a);
                let c = to_mask(&arr.closure(&s));
                // hyperplanes in c give the same closure
                covered |= c;
                next.insert(c);
            }
        }
        let mut sorted: Vec<u128> = next.into_iter().collect();
        sorted.sort_by_key(|&m| from_mask(m));
        out.extend(sorted.iter().map(|&m| Flat {
            rank: r,
            hyperplanes: from_mask(m),
        }));
        level = sorted;
    }
    Ok(out)
}

/// Facets of the nerve complex: the inclusion-maximal interior flats.
pub fn nerve(arr: &Arrangement) -> Result<NerveComplex> {
    Ok(nerve_from_flats(arr.len(), &flats(arr)?))
}

pub fn nerve_from_flats(vertex_count: usize, flats: &[Flat]) -> NerveComplex {
    let masks: Vec<u128> = flats.iter().map(Flat::mask).collect();
    let mut facets: Vec<Vec<usize>> = masks
        .iter()
        .filter(|&&m| !masks.iter().any(|&o| o != m && o & m == m))
        .map(|&m| from_mask(m))
        .collect();
    facets.sort();
    facets.dedup();
    NerveComplex { vertex_count, facets }
}

impl NerveComplex {
    pub fn is_face(&self, set: &[usize]) -> bool {
        let m = to_mask(set);
        self.facets.iter().any(|f| to_mask(f) & m == m)
    }

    /// Facet sizes with multiplicities.
    pub fn facet_size_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for f in &self.facets {
            *h.entry(f.len()).or_insert(0) += 1;
        }
        h
    }

    /// Minimal non-faces, found level by level from the faces.
    pub fn minimal_non_faces(&self) -> Vec<Vec<usize>> {
        let facet_masks: Vec<u128> = self.facets.iter().map(|f| to_mask(f)).collect();
        let is_face = |m: u128| facet_masks.iter().any(|&f| f & m == m);
        let mut out = Vec::new();
        let mut faces: BTreeSet<u128> = [0u128].into_iter().collect();
        while !faces.is_empty() {
            let mut next = BTreeSet::new();
            for &t in &faces {
                let top = if t == 0 { 0 } else { 128 - t.leading_zeros() as usize };
                for v in top..self.vertex_count {
                    let s = t | 1u128 << v;
                    if is_face(s) {
                        next.insert(s);
                        continue;
                    }
                    let all_faces = from_mask(s).iter().all(|&i| is_face(s & !(1u128 << i)));
                    if all_faces {
                        out.push(from_mask(s));
                    }
                }
            }
            faces = next;
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        out.dedup();
        out
    }
}

/// `dim k[Delta]`, the largest facet size.
pub fn sr_dimension(c: &NerveComplex) -> usize {
    c.facets.iter().map(Vec::len).max().unwrap_or(0)
}

pub fn sr_codim(arr: &Arrangement, c: &NerveComplex) -> usize {
    arr.len() - sr_dimension(c)
}

/// Independent `n`-subsets of the positive roots, in colex order.
pub fn spanning_sets(arr: &Arrangement) -> Vec<Vec<usize>> {
    colex_subsets(arr.len(), arr.rank)
        .into_iter()
        .filter(|s| arr.is_independent(s))
        .collect()
}

/// The Stanley-Reisner ideal, generated by `x^J` over independent
/// `n`-subsets `J`.
pub fn sr_ideal(t: RootSystemType) -> Result<MonomialIdeal> {
    let arr = coxeter_arrangement(t);
    let d = arr.len();
    minimal_generators(d, spanning_sets(&arr).iter().map(|s| Monomial::squarefree(d, s)))
}

/// Stanley-Reisner ideal read off from an explicit list of minimal non-faces.
pub fn sr_ideal_from_non_faces(vertex_count: usize, non_faces: &[Vec<usize>]) -> Result<MonomialIdeal> {
    minimal_generators(vertex_count, non_faces.iter().map(|s| Monomial::squarefree(vertex_count, s)))
}

/// Closed forms for the Stanley-Reisner dimension and codimension.
pub fn table1_closed_form(t: RootSystemType) -> (usize, usize) {
    let n = t.rank();
    let c2 = |k: usize| k * k.saturating_sub(1) / 2;
    match t.family() {
        Family::A => (c2(n), n),
        Family::B | Family::C => ((n - 1) * (n - 1), 2 * n - 1),
        Family::D => (2 * c2(n - 1), 2 * (n - 1)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table1Row {
    #[serde(rename = "type")]
    pub ty: String,
    pub num_hyperplanes: usize,
    pub dim: usize,
    pub codim: usize,
    pub expected_dim: usize,
    pub expected_codim: usize,
    pub matches: bool,
}

pub fn table1_row(t: RootSystemType) -> Result<Table1Row> {
    let arr = coxeter_arrangement(t);
    let c = nerve(&arr)?;
    let (dim, codim) = (sr_dimension(&c), sr_codim(&arr, &c));
    let (expected_dim, expected_codim) = table1_closed_form(t);
    Ok(Table1Row {
        ty: t.to_string(),
        num_hyperplanes: arr.len(),
        dim,
        codim,
        expected_dim,
        expected_codim,
        matches: dim == expected_dim && codim == expected_codim,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum EdgeKind {
    /// `x_i = x_j`
    Positive,
    /// `x_i = -x_j`
    Negative,
    /// `x_i = 0`
    Half,
}

/// A signed edge `ij+`, `ij-` or a half-edge `i^h` (stored with `i == j`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SignedEdge {
    pub i: usize,
    pub j: usize,
    pub kind: EdgeKind,
}

impl SignedEdge {
    pub fn new(i: usize, j: usize, kind: EdgeKind) -> Self {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        SignedEdge { i, j, kind }
    }

    /// The edge of the hyperplane `ker(root)`.
    pub fn of_root(root: &Root) -> Result<SignedEdge> {
        let nz: Vec<(usize, i64)> = root.coords.iter().copied().enumerate().filter(|&(_, c)| c != 0).collect();
        match nz.as_slice() {
            [(i, a), (j, b)] if a.abs() == 1 && b.abs() == 1 => {
                let kind = if a == &-b { EdgeKind::Positive } else { EdgeKind::Negative };
                Ok(SignedEdge::new(*i, *j, kind))
            }
            [(i, _)] => Ok(SignedEdge::new(*i, *i, EdgeKind::Half)),
            _ => Err(Error::Domain(format!("{} has no signed edge", root.label()))),
        }
    }
}

/// A signed graph on `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SignedGraph {
    pub vertex_count: usize,
    pub edges: BTreeSet<SignedEdge>,
}

impl SignedGraph {
    pub fn empty(vertex_count: usize) -> Self {
        SignedGraph {
            vertex_count,
            edges: BTreeSet::new(),
        }
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn union(&self, other: &SignedGraph) -> SignedGraph {
        SignedGraph {
            vertex_count: self.vertex_count.max(other.vertex_count),
            edges: self.edges.union(&other.edges).copied().collect(),
        }
    }
}

/// `K^b_{V,W}`: positive edges inside `V` and inside `W`, negative edges
/// between them.
pub fn balanced_complete(vertex_count: usize, v: &[usize], w: &[usize]) -> SignedGraph {
    let mut g = SignedGraph::empty(vertex_count);
    let side: Vec<(usize, bool)> = v.iter().map(|&a| (a, true)).chain(w.iter().map(|&b| (b, false))).collect();
    for (k, &(a, sa)) in side.iter().enumerate() {
        for &(b, sb) in &side[k + 1..] {
            let kind = if sa == sb { EdgeKind::Positive } else { EdgeKind::Negative };
            g.edges.insert(SignedEdge::new(a, b, kind));
        }
    }
    g
}

/// `K^u_S`: both signed edges between any two vertices of `S`, plus the
/// half-edges when `half_edges` is set.
pub fn unbalanced_complete(vertex_count: usize, s: &[usize], half_edges: bool) -> SignedGraph {
    let mut g = SignedGraph::empty(vertex_count);
    for (k, &a) in s.iter().enumerate() {
        for &b in &s[k + 1..] {
            g.edges.insert(SignedEdge::new(a, b, EdgeKind::Positive));
            g.edges.insert(SignedEdge::new(a, b, EdgeKind::Negative));
        }
        if half_edges {
            g.edges.insert(SignedEdge::new(a, a, EdgeKind::Half));
        }
    }
    g
}

/// Set partitions of `0..n` as lists of blocks.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    fn rec(i: usize, n: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(i);
            rec(i + 1, n, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![i]);
        rec(i + 1, n, blocks, out);
        blocks.pop();
    }
    rec(0, n, &mut blocks, &mut out);
    out
}

/// Unordered splits `P = V + W`, listing each split once.
fn balanced_splits(block: &[usize]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let k = block.len();
    // fix block[0] in V
    (0..1u64 << (k - 1))
        .map(|bits| {
            let mut v = vec![block[0]];
            let mut w = Vec::new();
            for (t, &x) in block[1..].iter().enumerate() {
                if bits >> t & 1 == 1 {
                    w.push(x);
                } else {
                    v.push(x);
                }
            }
            (v, w)
        })
        .collect()
}

/// Signed graphs whose components are complete balanced, with at most one
/// complete unbalanced component (types B, C, D only), excluding the empty
/// and the complete graph.
pub fn admissible_graphs(t: RootSystemType) -> Vec<SignedGraph> {
    let (vertices, signed, half) = match t.family() {
        Family::A => (t.rank() + 1, false, false),
        Family::B | Family::C => (t.rank(), true, true),
        Family::D => (t.rank(), true, false),
    };
    let full = full_graph(t);
    let mut seen: BTreeSet<Vec<SignedEdge>> = BTreeSet::new();
    for partition in set_partitions(vertices) {
        // None: all blocks balanced; Some(b): block b is unbalanced
        let choices: Vec<Option<usize>> = if signed {
            std::iter::once(None).chain((0..partition.len()).map(Some)).collect()
        } else {
            vec![None]
        };
        for unbalanced in choices {
            let mut partials = vec![SignedGraph::empty(vertices)];
            for (b, block) in partition.iter().enumerate() {
                let options: Vec<SignedGraph> = if unbalanced == Some(b) {
                    vec![unbalanced_complete(vertices, block, half)]
                } else if signed {
                    balanced_splits(block)
                        .iter()
                        .map(|(v, w)| balanced_complete(vertices, v, w))
                        .collect()
                } else {
                    vec![balanced_complete(vertices, block, &[])]
                };
                partials = partials
                    .iter()
                    .flat_map(|p| options.iter().map(move |o| p.union(o)))
                    .collect();
            }
            for g in partials {
                if !g.edges.is_empty() && g.edges != full.edges {
                    seen.insert(g.edges.into_iter().collect());
                }
            }
        }
    }
    seen.into_iter()
        .map(|e| SignedGraph {
            vertex_count: vertices,
            edges: e.into_iter().collect(),
        })
        .collect()
}

/// The graph of the whole arrangement.
pub fn full_graph(t: RootSystemType) -> SignedGraph {
    let vertices = if t.family() == Family::A { t.rank() + 1 } else { t.rank() };
    SignedGraph {
        vertex_count: vertices,
        edges: t
            .positive_roots()
            .iter()
            .map(|r| SignedEdge::of_root(r).expect("classical root"))
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignedGraphAudit {
    #[serde(rename = "type")]
    pub ty: String,
    pub admissible_count: usize,
    pub flat_count: usize,
    pub families_equal: bool,
    pub max_edge_count: usize,
    pub sr_dimension: usize,
    pub dimension_matches: bool,
}

impl SignedGraphAudit {
    pub fn passed(&self) -> bool {
        self.families_equal && self.admissible_count == self.flat_count && self.dimension_matches
    }
}

/// Compares admissible signed graphs with the interior flats, as sets of
/// hyperplanes.
pub fn signed_graph_audit(t: RootSystemType) -> Result<SignedGraphAudit> {
    let arr = coxeter_arrangement(t);
    let index: BTreeMap<SignedEdge, usize> = t
        .positive_roots()
        .iter()
        .enumerate()
        .map(|(k, r)| SignedEdge::of_root(r).map(|e| (e, k)))
        .collect::<Result<_>>()?;
    let graphs = admissible_graphs(t);
    let graph_sets: BTreeSet<Vec<usize>> = graphs
        .iter()
        .map(|g| {
            let mut s: Vec<usize> = g.edges.iter().map(|e| index[e]).collect();
            s.sort_unstable();
            s
        })
        .collect();
    let fl = flats(&arr)?;
    let flat_sets: BTreeSet<Vec<usize>> = fl.iter().map(|f| f.hyperplanes.clone()).collect();
    let max_edge_count = graphs.iter().map(SignedGraph::edge_count).max().unwrap_or(0);
    let dim = sr_dimension(&nerve_from_flats(arr.len(), &fl));
    Ok(SignedGraphAudit {
        ty: t.to_string(),
        admissible_count: graph_sets.len(),
        flat_count: fl.len(),
        families_equal: graph_sets == flat_sets,
        max_edge_count,
        sr_dimension: dim,
        dimension_matches: max_edge_count == dim,
    })
}
