//! Passage between symmetric regular polynomials in the roots and covariants
//! in the coefficients `a_i`.
//!
//! With `f = prod (mu_i x - nu_i z)`, `psi(a_k)` is the `x^k z^(n-k)`
//! coefficient of the expanded product. A monomial in the `a` of degree `d`
//! and weight `W` maps to a polynomial of `mu`-degree `W` and `nu`-degree
//! `n d - W`, which is how [`Transfer::to_coefficients`] splits its input.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::brackets::{BracketPoly, RootRing};
use crate::covariant::BinaryFormSpec;
use crate::linalg::PolySpan;
use crate::poly::{Monomial, Poly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransferError {
    #[error("no preimage: component with nu-degree {nu_degree} and x-degree {x_degree} is outside the image")]
    NoSolution { nu_degree: u32, x_degree: u32 },
    #[error("root polynomial is not homogeneous of degree {r} in x, z")]
    BadOrder { r: u32 },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Result of an orbit sum over `S_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Symmetrized {
    pub poly: BracketPoly,
    /// Set when a nonzero input has an identically zero orbit sum, which
    /// happens in characteristic `p <= n`.
    pub zero_orbit_sum: bool,
}

/// All permutations of `1..=n` in lexicographic order.
pub fn permutations(n: u32) -> Vec<Vec<u32>> {
    let mut cur: Vec<u32> = (1..=n).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (0..cur.len().saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..cur.len()).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
}

/// `sum_{pi in S_n} pi . b`, signs normalized per monomial.
pub fn symmetrize(b: &BracketPoly) -> Symmetrized {
    let mut poly = BracketPoly::zero(b.n(), b.field());
    for perm in permutations(b.n()) {
        poly = poly.add(&b.permute(&perm));
    }
    Symmetrized {
        zero_orbit_sum: poly.is_zero() && !b.is_zero(),
        poly,
    }
}

fn relabel(rr: &RootRing, p: &Poly, perm: &[u32]) -> Poly {
    let r = rr.ring();
    let mut bindings = Vec::new();
    for i in 1..=rr.n() {
        let j = perm[i as usize - 1];
        bindings.push((rr.mu(i), Poly::var(r, rr.mu(j))));
        bindings.push((rr.nu(i), Poly::var(r, rr.nu(j))));
    }
    p.substitute(&bindings, r).expect("same ring")
}

/// Invariance under the transposition `(1 2)` and the cycle `(1 2 ... n)`.
pub fn is_symmetric(rr: &RootRing, p: &Poly) -> bool {
    let n = rr.n();
    if n < 2 {
        return true;
    }
    let mut tau: Vec<u32> = (1..=n).collect();
    tau.swap(0, 1);
    let sigma: Vec<u32> = (1..=n).map(|i| i % n + 1).collect();
    relabel(rr, p, &tau) == *p && relabel(rr, p, &sigma) == *p
}

/// Monomials in `a_0..a_n` (as exponent vectors) of degree `d` and weight `w`.
pub fn isobaric_monomials(n: u32, d: u32, w: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, i: u32, d: u32, w: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i > n {
            if d == 0 && w == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for e in 0..=d {
            if e * i > w {
                break;
            }
            cur.push(e);
            go(n, i + 1, d - e, w - e * i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 0, d, w, &mut Vec::new(), &mut out);
    out
}

/// Context for one form degree and field, with memoized images.
#[derive(Debug)]
pub struct Transfer {
    spec: BinaryFormSpec,
    roots: RootRing,
    psi: Vec<Poly>,
    images: BTreeMap<Vec<u32>, Poly>,
}

impl Transfer {
    pub fn new(spec: &BinaryFormSpec) -> Transfer {
        let roots = RootRing::new(spec.n(), spec.field());
        let r = roots.ring();
        let mut prod = Poly::one(r);
        for i in 1..=spec.n() {
            let root = &(&Poly::var(r, roots.mu(i)) * &Poly::var(r, roots.x()))
                - &(&Poly::var(r, roots.nu(i)) * &Poly::var(r, roots.z()));
            prod = &prod * &root;
        }
        let slices = prod.coefficients_in(roots.x());
        let psi = (0..=spec.n())
            .map(|k| {
                slices[k as usize]
                    .divide_out(roots.z(), spec.n() - k)
                    .expect("product is homogeneous")
            })
            .collect();
        Transfer {
            spec: spec.clone(),
            roots,
            psi,
            images: BTreeMap::new(),
        }
    }

    pub fn spec(&self) -> &BinaryFormSpec {
        &self.spec
    }

    pub fn roots(&self) -> &RootRing {
        &self.roots
    }

    /// `psi(a_k)`.
    pub fn psi_a(&self, k: u32) -> &Poly {
        &self.psi[k as usize]
    }

    /// Image of a polynomial in `a, x, z` in the root ring.
    pub fn psi(&self, c: &Poly) -> Poly {
        let bindings: Vec<(usize, Poly)> = (0..=self.spec.n())
            .map(|k| (self.spec.a(k), self.psi[k as usize].clone()))
            .collect();
        c.embed(self.spec.ring())
            .expect("polynomial in a, x, z")
            .substitute(&bindings, self.roots.ring())
            .expect("root ring has x and z")
    }

    fn image(&mut self, exps: &[u32]) -> Poly {
        if let Some(p) = self.images.get(exps) {
            return p.clone();
        }
        let r = self.roots.ring();
        let mut out = Poly::one(r);
        for (k, &e) in exps.iter().enumerate() {
            if e > 0 {
                out = &out * &self.psi[k].pow(e);
            }
        }
        self.images.insert(exps.to_vec(), out.clone());
        out
    }

    /// The unique `C` in `a, x, z` with `psi(C) = p`, for `p` symmetric and
    /// regular of degree `d` with `x, z`-degree `r`.
    pub fn to_coefficients(&mut self, p: &Poly, d: u32, r: u32) -> Result<Poly, TransferError> {
        let rr = self.roots.clone();
        let n = self.spec.n();
        let mut nu_w = vec![0; rr.ring().nvars()];
        for i in 1..=n {
            nu_w[rr.nu(i)] = 1;
        }
        let mut parts: BTreeMap<(u32, u32), Poly> = BTreeMap::new();
        for (m, c) in p.terms() {
            let i = m.exp(rr.x());
            if i + m.exp(rr.z()) != r {
                return Err(TransferError::BadOrder { r });
            }
            let s = m.weighted_degree(&nu_w) as u32;
            let mut e = m.exponents().to_vec();
            e[rr.x()] = 0;
            e[rr.z()] = 0;
            parts
                .entry((s, i))
                .or_insert_with(|| Poly::zero(rr.ring()))
                .add_term(Monomial::from_exponents(e), c);
        }
        let spec = self.spec.clone();
        let mut out = Poly::zero(spec.ring());
        for ((s, i), part) in parts {
            let fail = TransferError::NoSolution { nu_degree: s, x_degree: i };
            if s > n * d {
                return Err(fail);
            }
            let basis = isobaric_monomials(n, d, n * d - s);
            let mut span = PolySpan::new(rr.ring());
            for b in &basis {
                let img = self.image(b);
                span.insert(&img);
            }
            let red = span.reduce(&part);
            if !red.remainder.is_zero() {
                return Err(fail);
            }
            for (b, c) in basis.iter().zip(&red.combo) {
                if c.is_zero() {
                    continue;
                }
                let mut e = vec![0; spec.ring().nvars()];
                e[..b.len()].copy_from_slice(b);
                e[spec.x()] = i;
                e[spec.z()] = r - i;
                out.add_term(Monomial::from_exponents(e), c);
            }
        }
        Ok(out)
    }

    /// Symmetrizes, expands and pulls back a regular bracket polynomial.
    pub fn bracket_to_coefficients(&mut self, b: &BracketPoly, d: u32, r: u32) -> Result<Poly, TransferError> {
        let sym = symmetrize(b);
        self.to_coefficients(&sym.poly.expand(&self.roots), d, r)
    }
}
