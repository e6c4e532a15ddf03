//! Crossing elimination by the Plücker syzygies.
//!
//! A crossing pair `[ab][cd]` with `a < c < b < d` (positions, `u` at `n+1`)
//! is rewritten as `[ac][bd] + [ad][cb]`. All four new edges are already
//! ascending, so no signs appear and normal forms have positive integer
//! coefficients.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use super::{BracketEdge, BracketPoly, EdgeSet, End};

/// Straightener with a memo of normal forms, reusable across calls.
#[derive(Debug, Default)]
pub struct Straightener {
    memo: BTreeMap<EdgeSet, BTreeMap<EdgeSet, BigInt>>,
}

fn at(n: u32, pos: u32) -> End {
    if pos == n + 1 {
        End::U
    } else {
        End::Pt(pos)
    }
}

fn edge(n: u32, p: u32, q: u32) -> BracketEdge {
    BracketEdge { i: p, j: at(n, q) }
}

/// The least crossing pair by endpoint positions, if any.
fn least_crossing(n: u32, edges: &EdgeSet) -> Option<(BracketEdge, BracketEdge)> {
    let mut spans: Vec<(u32, u32, BracketEdge)> = edges.keys().map(|e| (e.span(n).0, e.span(n).1, *e)).collect();
    spans.sort();
    for (k, &(a, b, e1)) in spans.iter().enumerate() {
        for &(c, d, e2) in &spans[k + 1..] {
            if a < c && c < b && b < d {
                return Some((e1, e2));
            }
        }
    }
    None
}

fn take(edges: &mut EdgeSet, e: BracketEdge) {
    let m = edges.get_mut(&e).expect("edge present");
    *m -= 1;
    if *m == 0 {
        edges.remove(&e);
    }
}

fn put(edges: &mut EdgeSet, e: BracketEdge) {
    *edges.entry(e).or_insert(0) += 1;
}

impl Straightener {
    pub fn new() -> Straightener {
        Straightener::default()
    }

    fn normal_form(&mut self, n: u32, edges: &EdgeSet) -> BTreeMap<EdgeSet, BigInt> {
        if let Some(nf) = self.memo.get(edges) {
            return nf.clone();
        }
        let out = match least_crossing(n, edges) {
            None => BTreeMap::from([(edges.clone(), BigInt::one())]),
            Some((e1, e2)) => {
                let (a, b) = e1.span(n);
                let (c, d) = e2.span(n);
                let mut rest = edges.clone();
                take(&mut rest, e1);
                take(&mut rest, e2);
                let mut acc: BTreeMap<EdgeSet, BigInt> = BTreeMap::new();
                for (x, y) in [(edge(n, a, c), edge(n, b, d)), (edge(n, a, d), edge(n, c, b))] {
                    let mut next = rest.clone();
                    put(&mut next, x);
                    put(&mut next, y);
                    for (k, v) in self.normal_form(n, &next) {
                        *acc.entry(k).or_default() += v;
                    }
                }
                acc
            }
        };
        self.memo.insert(edges.clone(), out.clone());
        out
    }

    pub fn straighten(&mut self, b: &BracketPoly) -> BracketPoly {
        let field = b.field();
        let mut out = BracketPoly::zero(b.n(), field);
        for (edges, c) in b.terms() {
            for (k, v) in self.normal_form(b.n(), edges) {
                out.add_term(k, &(c * &field.from_bigint(&v)));
            }
        }
        out
    }
}

/// Rewrites every monomial into a combination of crossing-free monomials.
pub fn straighten(b: &BracketPoly) -> BracketPoly {
    Straightener::new().straighten(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brackets::RootRing;
    use crate::scalar::Field;

    fn bp(n: u32, s: &str) -> BracketPoly {
        BracketPoly::parse(n, Field::Rational, s).unwrap()
    }

    #[test]
    fn plucker_relations() {
        assert_eq!(straighten(&bp(4, "[13][24]")), bp(4, "[12][34] + [14][23]"));
        assert_eq!(straighten(&bp(4, "[12][34]")), bp(4, "[12][34]"));
        assert_eq!(straighten(&bp(3, "[13][2u]")), bp(3, "[12][3u] + [1u][23]"));
    }

    #[test]
    fn squares_and_expansion() {
        let p = bp(4, "[13]^2[24]^2 - 3*[2u][14][3u]");
        let s = straighten(&p);
        for (m, _) in s.monomials() {
            assert!(m.is_crossing_free());
        }
        let rr = RootRing::new(4, Field::Rational);
        assert_eq!(s.expand(&rr), p.expand(&rr));
        assert_eq!(straighten(&s), s);
    }
}
