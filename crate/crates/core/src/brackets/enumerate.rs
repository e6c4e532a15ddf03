//! Generator system of the regular bracket ring.
//!
//! Candidates are the crossing-free regular multigraphs of regularity degree
//! 1 or 2 with at most `2n` edges at `u`. Pure invariants of even `n` keep
//! degree 1 only. A candidate is dropped when it splits into two regular
//! pieces, or when its straightened form lies in the span of products of
//! generators already accepted at the same (degree, order).

use std::collections::BTreeSet;

use super::straighten::Straightener;
use super::{BracketEdge, BracketError, BracketMonomial, BracketPoly, EdgeSet, End};
use crate::linalg::Matrix;
use crate::scalar::Field;

/// All edges on `n` points, sorted by (first endpoint, second position).
fn all_edges(n: u32) -> Vec<BracketEdge> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            out.push(BracketEdge::pp(i, j));
        }
        out.push(BracketEdge::pu(i));
    }
    out
}

struct Search<'a> {
    n: u32,
    d: u32,
    edges: &'a [BracketEdge],
    valence: Vec<u32>,
    u_count: u32,
    chosen: EdgeSet,
    found: Vec<EdgeSet>,
}

impl Search<'_> {
    fn run(&mut self, k: usize) {
        if k == self.edges.len() {
            self.found.push(self.chosen.clone());
            return;
        }
        let e = self.edges[k];
        let i = e.first();
        let last_for_i = self.edges.get(k + 1).is_none_or(|next| next.first() != i);
        let j = match e.second() {
            End::Pt(j) => Some(j),
            End::U => None,
        };
        let room_i = self.d - self.valence[i as usize];
        let room_j = j.map_or(u32::MAX, |j| self.d - self.valence[j as usize]);
        let room_u = if j.is_none() { 2 * self.n - self.u_count } else { u32::MAX };
        let max_m = room_i.min(room_j).min(room_u);
        for m in 0..=max_m {
            if m > 0 && self.chosen.keys().any(|c| c.crosses(&e, self.n)) {
                break;
            }
            if last_for_i && self.valence[i as usize] + m != self.d {
                continue;
            }
            self.valence[i as usize] += m;
            if let Some(j) = j {
                self.valence[j as usize] += m;
            } else {
                self.u_count += m;
            }
            if m > 0 {
                self.chosen.insert(e, m);
            }
            self.run(k + 1);
            self.chosen.remove(&e);
            self.valence[i as usize] -= m;
            if let Some(j) = j {
                self.valence[j as usize] -= m;
            } else {
                self.u_count -= m;
            }
        }
    }
}

/// Every crossing-free multigraph on `n` points with all valences equal to `d`.
pub(crate) fn crossing_free_regular(n: u32, d: u32) -> Vec<BracketMonomial> {
    let edges = all_edges(n);
    let mut s = Search {
        n,
        d,
        edges: &edges,
        valence: vec![0; n as usize + 1],
        u_count: 0,
        chosen: EdgeSet::new(),
        found: Vec::new(),
    };
    s.run(0);
    s.found
        .into_iter()
        .map(|e| BracketMonomial::from_edges(n, 1, e))
        .collect()
}

fn contains(big: &EdgeSet, small: &EdgeSet) -> bool {
    small.iter().all(|(e, m)| big.get(e).is_some_and(|b| b >= m))
}

/// Searches for a sub-multiset of `edges` with every valence equal to `e`.
fn has_regular_part(n: u32, edges: &[(BracketEdge, u32)], e: u32, k: usize, valence: &mut [u32]) -> bool {
    if k == edges.len() {
        return (1..=n).all(|i| valence[i as usize] == e);
    }
    let (edge, mult) = edges[k];
    let j = match edge.second() {
        End::Pt(j) => Some(j),
        End::U => None,
    };
    for m in 0..=mult {
        let i = edge.first() as usize;
        if valence[i] + m > e || j.is_some_and(|j| valence[j as usize] + m > e) {
            break;
        }
        valence[i] += m;
        if let Some(j) = j {
            valence[j as usize] += m;
        }
        let hit = has_regular_part(n, edges, e, k + 1, valence);
        valence[i] -= m;
        if let Some(j) = j {
            valence[j as usize] -= m;
        }
        if hit {
            return true;
        }
    }
    false
}

/// True iff `b` is a product of two regular monomials of regularity degree at
/// least 1. `known` is consulted first; the exhaustive split search decides
/// whenever it does not match.
pub fn is_reducible(b: &BracketMonomial, known: &[BracketMonomial]) -> bool {
    let Some(d) = b.regularity_degree() else {
        return false;
    };
    if d < 2 {
        return false;
    }
    let quick = known.iter().any(|k| {
        k.n() == b.n()
            && k.regularity_degree().is_some_and(|e| e >= 1 && e < d)
            && contains(b.edges(), k.edges())
    });
    if quick {
        return true;
    }
    let edges: Vec<(BracketEdge, u32)> = b.edges().iter().map(|(e, m)| (*e, *m)).collect();
    let mut valence = vec![0; b.n() as usize + 1];
    (1..d).any(|e| has_regular_part(b.n(), &edges, e, 0, &mut valence))
}

/// Whether `target` lies in the span of the straightened `products`.
fn in_product_span(target: &EdgeSet, products: &[BracketPoly]) -> bool {
    if products.is_empty() {
        return false;
    }
    let mut cols: BTreeSet<&EdgeSet> = products.iter().flat_map(|p| p.terms().map(|(e, _)| e)).collect();
    cols.insert(target);
    let index: Vec<&EdgeSet> = cols.into_iter().collect();
    let field = Field::Rational;
    let row_of = |p: &BracketPoly| {
        index
            .iter()
            .map(|e| p.coeff(e))
            .collect::<Vec<_>>()
    };
    let base = Matrix::from_rows(field, products.iter().map(row_of).collect());
    let mut t = vec![field.zero(); index.len()];
    t[index.iter().position(|e| *e == target).expect("inserted")] = field.one();
    let with = base.stack(&Matrix::from_rows(field, vec![t]));
    with.rank() == base.rank()
}

/// The generator list for `n` points, sorted by (order, regularity degree, edges).
pub fn enumerate_generators(n: u32) -> Result<Vec<BracketMonomial>, BracketError> {
    if n < 2 {
        return Err(BracketError::TooFewPoints(n));
    }
    let mut candidates: Vec<BracketMonomial> = crossing_free_regular(n, 1);
    candidates.extend(
        crossing_free_regular(n, 2)
            .into_iter()
            .filter(|b| n % 2 == 1 || b.order() > 0),
    );
    candidates.sort_by_key(BracketMonomial::generator_key);

    let field = Field::Rational;
    let mut st = Straightener::new();
    let mut out: Vec<BracketMonomial> = Vec::new();
    for b in candidates {
        if b.regularity_degree() == Some(2) {
            if is_reducible(&b, &out) {
                continue;
            }
            let m = b.order();
            let mut products = Vec::new();
            for (k, g) in out.iter().enumerate() {
                if g.regularity_degree() == Some(2) && g.order() == m {
                    products.push(BracketPoly::from_monomial(g, field));
                }
                if g.regularity_degree() != Some(1) {
                    continue;
                }
                for h in &out[k..] {
                    if h.regularity_degree() == Some(1) && g.order() + h.order() == m {
                        products.push(st.straighten(&BracketPoly::from_monomial(&g.mul(h), field)));
                    }
                }
            }
            if in_product_span(b.edges(), &products) {
                continue;
            }
        }
        out.push(b);
    }
    Ok(out)
}
