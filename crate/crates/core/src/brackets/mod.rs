//! Bracket monomials on `n` points, viewed as multigraphs on the vertices
//! `1..=n` plus an extra vertex `u`.
//!
//! `[ij] = mu_i nu_j - nu_i mu_j` and `[iu] = mu_i x - nu_i z`. Edges are
//! stored with their smaller endpoint first; swapping endpoints flips the
//! sign, which is folded into the monomial's sign at construction.
//!
//! For crossing tests the vertices sit on a convex polygon in the order
//! `1, 2, ..., n, u`; the canonical listing order puts `u`-edges first.

mod enumerate;
mod straighten;
mod text;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::poly::{Poly, Ring};
use crate::scalar::{Field, Scalar};

pub use enumerate::{enumerate_generators, is_reducible};
pub use straighten::{straighten, Straightener};
pub use text::{BracketEdgeJson, BracketMonomialJson, BracketPolyJson, BracketTermJson, EdgeEnd};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BracketError {
    #[error("at least two points are required, got n = {0}")]
    TooFewPoints(u32),
    #[error("point {point} out of range 1..={n}")]
    PointOutOfRange { point: u32, n: u32 },
    #[error("degenerate bracket [{0}{0}]")]
    Degenerate(String),
    #[error("bracket parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("point count mismatch: {0} vs {1}")]
    PointCountMismatch(u32, u32),
}

/// One endpoint of a bracket: a numbered point or the vertex `u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Pt(u32),
    U,
}

impl End {
    fn position(self, n: u32) -> u32 {
        match self {
            End::Pt(i) => i,
            End::U => n + 1,
        }
    }
}

/// A bracket `[ij]` (`i < j`) or `[iu]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BracketEdge {
    i: u32,
    j: End,
}

impl BracketEdge {
    /// Normalizes `[a b]`: returns the edge and whether the endpoints were swapped.
    pub fn new(a: End, b: End) -> Result<(BracketEdge, bool), BracketError> {
        match (a, b) {
            (End::U, End::U) => Err(BracketError::Degenerate("u".into())),
            (End::Pt(i), End::Pt(j)) if i == j => Err(BracketError::Degenerate(i.to_string())),
            (End::Pt(i), End::Pt(j)) if i > j => Ok((BracketEdge { i: j, j: End::Pt(i) }, true)),
            (End::U, End::Pt(i)) => Ok((BracketEdge { i, j: End::U }, true)),
            (End::Pt(i), j) => Ok((BracketEdge { i, j }, false)),
        }
    }

    pub fn pp(i: u32, j: u32) -> BracketEdge {
        assert!(i < j, "point-point edge must be stored ascending");
        BracketEdge { i, j: End::Pt(j) }
    }

    pub fn pu(i: u32) -> BracketEdge {
        BracketEdge { i, j: End::U }
    }

    pub fn first(&self) -> u32 {
        self.i
    }

    pub fn second(&self) -> End {
        self.j
    }

    pub fn is_u(&self) -> bool {
        self.j == End::U
    }

    pub fn touches(&self, point: u32) -> bool {
        self.i == point || self.j == End::Pt(point)
    }

    /// Polygon positions of the endpoints, `u` placed at `n + 1`.
    pub fn span(&self, n: u32) -> (u32, u32) {
        (self.i, self.j.position(n))
    }

    /// Two chords cross iff their endpoints strictly interleave.
    pub fn crosses(&self, other: &BracketEdge, n: u32) -> bool {
        let (a, b) = self.span(n);
        let (c, d) = other.span(n);
        (a < c && c < b && b < d) || (c < a && a < d && d < b)
    }

    fn listing_key(&self) -> (bool, u32, End) {
        (!self.is_u(), self.i, self.j)
    }
}

impl Ord for BracketEdge {
    fn cmp(&self, other: &Self) -> Ordering {
        self.listing_key().cmp(&other.listing_key())
    }
}

impl PartialOrd for BracketEdge {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multiset of edges; the key type of bracket polynomials.
pub type EdgeSet = BTreeMap<BracketEdge, u32>;

/// A signed product of brackets on `n` points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BracketMonomial {
    n: u32,
    sign: i8,
    edges: EdgeSet,
}

impl BracketMonomial {
    pub fn one(n: u32) -> BracketMonomial {
        BracketMonomial {
            n,
            sign: 1,
            edges: EdgeSet::new(),
        }
    }

    /// Builds `prod [a b]^m` from raw endpoint pairs, normalizing signs.
    pub fn from_pairs(n: u32, pairs: &[(End, End, u32)]) -> Result<BracketMonomial, BracketError> {
        let mut out = BracketMonomial::one(n);
        for &(a, b, m) in pairs {
            for e in [a, b] {
                if let End::Pt(p) = e {
                    if p == 0 || p > n {
                        return Err(BracketError::PointOutOfRange { point: p, n });
                    }
                }
            }
            let (edge, swapped) = BracketEdge::new(a, b)?;
            if swapped && m % 2 == 1 {
                out.sign = -out.sign;
            }
            if m > 0 {
                *out.edges.entry(edge).or_insert(0) += m;
            }
        }
        Ok(out)
    }

    pub(crate) fn from_edges(n: u32, sign: i8, edges: EdgeSet) -> BracketMonomial {
        BracketMonomial { n, sign, edges }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn edge_count(&self) -> u32 {
        self.edges.values().sum()
    }

    pub fn valence(&self, point: u32) -> u32 {
        self.edges
            .iter()
            .filter(|(e, _)| e.touches(point))
            .map(|(_, m)| *m)
            .sum()
    }

    /// Number of `u`-edges, i.e. the order of the covariant.
    pub fn order(&self) -> u32 {
        self.edges.iter().filter(|(e, _)| e.is_u()).map(|(_, m)| *m).sum()
    }

    /// The common valence of all points, if there is one.
    pub fn regularity_degree(&self) -> Option<u32> {
        let d = self.valence(1);
        (2..=self.n).all(|i| self.valence(i) == d).then_some(d)
    }

    pub fn is_crossing_free(&self) -> bool {
        let es: Vec<&BracketEdge> = self.edges.keys().collect();
        es.iter()
            .enumerate()
            .all(|(k, a)| es[k + 1..].iter().all(|b| !a.crosses(b, self.n)))
    }

    pub fn mul(&self, other: &BracketMonomial) -> BracketMonomial {
        assert_eq!(self.n, other.n);
        let mut edges = self.edges.clone();
        for (e, m) in &other.edges {
            *edges.entry(*e).or_insert(0) += m;
        }
        BracketMonomial {
            n: self.n,
            sign: self.sign * other.sign,
            edges,
        }
    }

    pub fn pow(&self, k: u32) -> BracketMonomial {
        (0..k).fold(BracketMonomial::one(self.n), |acc, _| acc.mul(self))
    }

    /// Relabels points by `point -> perm[point - 1]` and re-normalizes signs.
    pub fn permute(&self, perm: &[u32]) -> BracketMonomial {
        assert_eq!(perm.len(), self.n as usize);
        let map = |e: End| match e {
            End::Pt(i) => End::Pt(perm[i as usize - 1]),
            End::U => End::U,
        };
        let pairs: Vec<(End, End, u32)> = self
            .edges
            .iter()
            .map(|(e, m)| (map(End::Pt(e.i)), map(e.j), *m))
            .collect();
        let mut out = BracketMonomial::from_pairs(self.n, &pairs).expect("permutation preserves validity");
        out.sign *= self.sign;
        out
    }

    /// The edge list with multiplicities expanded, in listing order.
    pub fn edge_list(&self) -> Vec<BracketEdge> {
        self.edges
            .iter()
            .flat_map(|(e, m)| std::iter::repeat_n(*e, *m as usize))
            .collect()
    }

    /// Generator ordering: order, then regularity degree, then edge list.
    pub fn generator_key(&self) -> (u32, u32, Vec<BracketEdge>) {
        (self.order(), self.regularity_degree().unwrap_or(0), self.edge_list())
    }

    pub fn expand(&self, ring: &RootRing) -> Poly {
        let mut acc = Poly::constant(&ring.ring, ring.ring.field().from_i64(self.sign as i64));
        for (e, m) in &self.edges {
            acc = &acc * &ring.bracket(e).pow(*m);
        }
        acc
    }
}

/// A scalar-linear combination of bracket monomials on `n` points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketPoly {
    n: u32,
    field: Field,
    terms: BTreeMap<EdgeSet, Scalar>,
}

impl BracketPoly {
    pub fn zero(n: u32, field: Field) -> BracketPoly {
        BracketPoly {
            n,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_monomial(m: &BracketMonomial, field: Field) -> BracketPoly {
        let mut p = BracketPoly::zero(m.n, field);
        p.add_term(m.edges.clone(), &field.from_i64(m.sign as i64));
        p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&EdgeSet, &Scalar)> {
        self.terms.iter()
    }

    /// Terms as positive-sign monomials with their coefficients.
    pub fn monomials(&self) -> impl Iterator<Item = (BracketMonomial, &Scalar)> + '_ {
        self.terms
            .iter()
            .map(|(e, c)| (BracketMonomial::from_edges(self.n, 1, e.clone()), c))
    }

    pub fn coeff(&self, edges: &EdgeSet) -> Scalar {
        self.terms.get(edges).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, edges: EdgeSet, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(edges).or_insert_with(|| self.field.zero());
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add_monomial(&mut self, m: &BracketMonomial, c: &Scalar) {
        assert_eq!(m.n, self.n);
        let c = if m.sign < 0 { -c } else { c.clone() };
        self.add_term(m.edges.clone(), &c);
    }

    pub fn add(&self, other: &BracketPoly) -> BracketPoly {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> BracketPoly {
        let mut out = BracketPoly::zero(self.n, self.field);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), &(a * c));
        }
        out
    }

    pub fn mul(&self, other: &BracketPoly) -> BracketPoly {
        assert_eq!(self.n, other.n);
        let mut out = BracketPoly::zero(self.n, self.field);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut e = ea.clone();
                for (edge, m) in eb {
                    *e.entry(*edge).or_insert(0) += m;
                }
                out.add_term(e, &(ca * cb));
            }
        }
        out
    }

    pub fn permute(&self, perm: &[u32]) -> BracketPoly {
        let mut out = BracketPoly::zero(self.n, self.field);
        for (m, c) in self.monomials() {
            out.add_monomial(&m.permute(perm), c);
        }
        out
    }

    pub fn expand(&self, ring: &RootRing) -> Poly {
        let mut out = Poly::zero(&ring.ring);
        for (m, c) in self.monomials() {
            out.add_scaled(&m.expand(ring), c);
        }
        out
    }
}

/// `k[mu_1, nu_1, ..., mu_n, nu_n, x, z]`.
#[derive(Debug, Clone)]
pub struct RootRing {
    n: u32,
    ring: Arc<Ring>,
}

impl RootRing {
    pub fn new(n: u32, field: Field) -> RootRing {
        let mut names = Vec::with_capacity(2 * n as usize + 2);
        for i in 1..=n {
            names.push(format!("mu{i}"));
            names.push(format!("nu{i}"));
        }
        names.push("x".into());
        names.push("z".into());
        RootRing {
            n,
            ring: Ring::new(field, names),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn mu(&self, i: u32) -> usize {
        2 * (i as usize - 1)
    }

    pub fn nu(&self, i: u32) -> usize {
        2 * (i as usize - 1) + 1
    }

    pub fn x(&self) -> usize {
        2 * self.n as usize
    }

    pub fn z(&self) -> usize {
        2 * self.n as usize + 1
    }

    pub fn bracket(&self, e: &BracketEdge) -> Poly {
        let r = &self.ring;
        let v = |k| Poly::var(r, k);
        match e.j {
            End::Pt(j) => &(&v(self.mu(e.i)) * &v(self.nu(j))) - &(&v(self.nu(e.i)) * &v(self.mu(j))),
            End::U => &(&v(self.mu(e.i)) * &v(self.x())) - &(&v(self.nu(e.i)) * &v(self.z())),
        }
    }
}
