//! Exact multivariate polynomials over `F_p` or `Q`.
//!
//! Terms are stored keyed by [`Monomial`], whose ordering is graded reverse
//! lexicographic with respect to the ring's declared variable order. The
//! canonical listing of a polynomial is its terms in descending order.

mod json;
mod text;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use thiserror::Error;

use crate::scalar::{Field, Scalar, ScalarError};

pub use json::{PolyJson, TermJson};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("not divisible by {var}^{power}")]
    NotDivisible { var: String, power: u32 },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("expression too large: {0}")]
    TooLarge(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// An ordered list of variable names together with the coefficient field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Vec<String>,
    field: Field,
}

impl Ring {
    pub fn new<S: Into<String>>(field: Field, names: impl IntoIterator<Item = S>) -> Arc<Ring> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, a) in names.iter().enumerate() {
            assert!(!names[..i].contains(a), "duplicate variable {a}");
        }
        Arc::new(Ring { names, field })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn var_index(&self, name: &str) -> Result<usize, PolyError> {
        self.index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }
}

fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Exponent vector, one entry per ring variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(e: Vec<u32>) -> Monomial {
        Monomial(e)
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Monomial {
        let mut v = vec![0; nvars];
        v[i] = e;
        Monomial(v)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn weighted_degree(&self, weights: &[i64]) -> i64 {
        self.0.iter().zip(weights).map(|(&e, &w)| e as i64 * w).sum()
    }
}

impl Ord for Monomial {
    /// Graded reverse lexicographic order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial; no stored coefficient is ever zero.
#[derive(Debug, Clone)]
pub struct Poly {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(ring: &Arc<Ring>) -> Poly {
        Poly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: Scalar) -> Poly {
        let mut p = Poly::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.nvars()), c);
        }
        p
    }

    pub fn one(ring: &Arc<Ring>) -> Poly {
        Poly::constant(ring, ring.field().one())
    }

    pub fn from_int(ring: &Arc<Ring>, c: i64) -> Poly {
        Poly::constant(ring, ring.field().from_i64(c))
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Poly {
        Poly::monomial(ring, Monomial::var(ring.nvars(), i, 1), ring.field().one())
    }

    /// Panics on an unknown name; use [`Ring::var_index`] for fallible lookup.
    pub fn var_named(ring: &Arc<Ring>, name: &str) -> Poly {
        let i = ring
            .index_of(name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        Poly::var(ring, i)
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: Scalar) -> Poly {
        assert_eq!(m.0.len(), ring.nvars());
        let mut p = Poly::zero(ring);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and dropping zeros.
    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Poly {
        let mut p = Poly::zero(ring);
        for (m, c) in terms {
            assert_eq!(m.0.len(), ring.nvars());
            p.add_term(m, &c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field()
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

    /// Terms in canonical (descending) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field().zero())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    /// `self += c * other`, in place.
    pub fn add_scaled(&mut self, other: &Poly, c: &Scalar) {
        assert!(same_ring(&self.ring, &other.ring), "ring mismatch");
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.clone(), &(a * c));
        }
    }

    fn check_ring(&self, other: &Poly) -> Result<(), PolyError> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(PolyError::RingMismatch(format!(
                "{:?} vs {:?}",
                self.ring.names, other.ring.names
            )))
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.ring));
        }
        let mut acc: HashMap<Monomial, Scalar> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca * cb;
                acc.entry(ma.mul(mb))
                    .and_modify(|s| *s += &c)
                    .or_insert(c);
            }
        }
        Ok(Poly {
            ring: self.ring.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn pow(&self, mut k: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ring);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .filter(|(_, a)| !a.is_zero())
                .collect(),
        }
    }

    /// Scales so the leading coefficient is one; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// `l`-fold formal derivative in variable `v`. The falling factorial
    /// `e (e-1) ... (e-l+1)` is accumulated factor by factor in the field.
    pub fn partial(&self, v: usize, l: u32) -> Poly {
        let field = self.field();
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[v];
            if e < l {
                continue;
            }
            let mut coeff = c.clone();
            for k in 0..l {
                coeff *= &field.from_i64((e - k) as i64);
            }
            if coeff.is_zero() {
                continue;
            }
            let mut nm = m.clone();
            nm.0[v] = e - l;
            out.add_term(nm, &coeff);
        }
        out
    }

    /// Returns `q` with `q * v^l == self`.
    pub fn divide_out(&self, v: usize, l: u32) -> Result<Poly, PolyError> {
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            if m.0[v] < l {
                return Err(PolyError::NotDivisible {
                    var: self.ring.names[v].clone(),
                    power: l,
                });
            }
            let mut nm = m.clone();
            nm.0[v] -= l;
            out.terms.insert(nm, c.clone());
        }
        Ok(out)
    }

    /// Splits into weighted-homogeneous components.
    pub fn grade(&self, weights: &[i64]) -> BTreeMap<i64, Poly> {
        assert_eq!(weights.len(), self.ring.nvars());
        let mut out: BTreeMap<i64, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.weighted_degree(weights))
                .or_insert_with(|| Poly::zero(&self.ring))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// Named-variable convenience over [`Poly::grade`]; unnamed variables weigh zero.
    pub fn grade_by(&self, weights: &[(&str, i64)]) -> Result<BTreeMap<i64, Poly>, PolyError> {
        let mut w = vec![0; self.ring.nvars()];
        for (name, wt) in weights {
            w[self.ring.var_index(name)?] = *wt;
        }
        Ok(self.grade(&w))
    }

    /// The set of distinct weighted degrees present.
    pub fn weighted_degrees(&self, weights: &[i64]) -> Vec<i64> {
        let mut v: Vec<i64> = self
            .terms
            .keys()
            .map(|m| m.weighted_degree(weights))
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Simultaneous substitution into `target`. Variables without a binding
    /// map to the variable of the same name in `target`.
    pub fn substitute(&self, bindings: &[(usize, Poly)], target: &Arc<Ring>) -> Result<Poly, PolyError> {
        let n = self.ring.nvars();
        let mut images: Vec<Option<Poly>> = vec![None; n];
        for (v, img) in bindings {
            if *v >= n {
                return Err(PolyError::UnknownVariable(format!("#{v}")));
            }
            if !same_ring(img.ring(), target) {
                return Err(PolyError::RingMismatch("binding image outside target ring".into()));
            }
            images[*v] = Some(img.clone());
        }
        let used: Vec<bool> = (0..n)
            .map(|v| self.terms.keys().any(|m| m.0[v] > 0))
            .collect();
        for v in 0..n {
            if images[v].is_none() && used[v] {
                let j = target.var_index(&self.ring.names[v])?;
                images[v] = Some(Poly::var(target, j));
            }
        }
        let mut powers: Vec<Vec<Poly>> = vec![Vec::new(); n];
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let img = images[v].as_ref().expect("image assigned for used variable");
                let cache = &mut powers[v];
                if cache.is_empty() {
                    cache.push(Poly::one(target));
                }
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * img;
                    cache.push(next);
                }
                t = &t * &cache[e as usize];
            }
            out.add_scaled(&t, &target.field().one());
        }
        Ok(out)
    }

    /// Substitution keyed by variable name.
    pub fn substitute_named(&self, bindings: &[(&str, Poly)], target: &Arc<Ring>) -> Result<Poly, PolyError> {
        let b = bindings
            .iter()
            .map(|(name, p)| Ok((self.ring.var_index(name)?, p.clone())))
            .collect::<Result<Vec<_>, PolyError>>()?;
        self.substitute(&b, target)
    }

    /// Re-expresses in a ring that contains every variable used here.
    pub fn embed(&self, target: &Arc<Ring>) -> Result<Poly, PolyError> {
        if same_ring(&self.ring, target) {
            return Ok(self.clone());
        }
        if self.field() != target.field() {
            return Err(PolyError::RingMismatch("field differs".into()));
        }
        let map: Vec<Option<usize>> = self.ring.names.iter().map(|n| target.index_of(n)).collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.nvars()];
            for (v, &k) in m.0.iter().enumerate() {
                if k > 0 {
                    let j = map[v].ok_or_else(|| PolyError::UnknownVariable(self.ring.names[v].clone()))?;
                    e[j] = k;
                }
            }
            out.terms.insert(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Coefficients with respect to variable `v`: `result[i]` multiplies `v^i`.
    pub fn coefficients_in(&self, v: usize) -> Vec<Poly> {
        let mut out: Vec<Poly> = Vec::new();
        for (m, c) in &self.terms {
            let e = m.0[v] as usize;
            while out.len() <= e {
                out.push(Poly::zero(&self.ring));
            }
            let mut nm = m.clone();
            nm.0[v] = 0;
            out[e].terms.insert(nm, c.clone());
        }
        out
    }

    /// Total degree in the given variables, if homogeneous in them.
    pub fn homogeneous_degree_in(&self, vars: &[usize]) -> Option<u64> {
        let mut w = vec![0; self.ring.nvars()];
        for &v in vars {
            w[v] = 1;
        }
        match self.weighted_degrees(&w).as_slice() {
            [] => Some(0),
            [d] => Some(*d as u64),
            _ => None,
        }
    }

    /// Set `v = value` (a scalar) and keep the ring.
    pub fn evaluate_var(&self, v: usize, value: &Scalar) -> Poly {
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[v];
            let mut nm = m.clone();
            nm.0[v] = 0;
            out.add_term(nm, &(c * &value.pow(e as u64)));
        }
        out
    }

    pub fn max_exponent(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.0[v]).max().unwrap_or(0)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_poly {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_poly!(Add, add);
forward_poly!(Sub, sub);
forward_poly!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64) -> Arc<Ring> {
        Ring::new(Field::new(p).unwrap(), ["a0", "a1", "a2", "a3", "a4", "x", "z"])
    }

    fn parse(r: &Arc<Ring>, s: &str) -> Poly {
        Poly::parse(r, s).unwrap()
    }

    /// Multinomial brute force: expand (x + 2z)^k over the integers, reduce at the end.
    fn binomial_oracle(k: u32, p: i64) -> Vec<(u32, i64)> {
        let mut row = vec![1i64];
        for _ in 0..k {
            let mut next = vec![0i64; row.len() + 1];
            for (i, c) in row.iter().enumerate() {
                next[i] += c; // x
                next[i + 1] += 2 * c; // 2z
            }
            row = next;
        }
        row.iter()
            .enumerate()
            .map(|(j, c)| (j as u32, c.rem_euclid(p)))
            .filter(|(_, c)| *c != 0)
            .collect()
    }

    #[test]
    fn frobenius_cube_and_sixth_power() {
        let r = ring(3);
        let b = parse(&r, "x + 2*z");
        assert_eq!(b.pow(3), parse(&r, "x^3 + 2*z^3"));
        assert_eq!(b.pow(6), parse(&r, "x^6 + x^3*z^3 + z^6"));
        for k in [3u32, 6] {
            let oracle = binomial_oracle(k, 3);
            let expected = Poly::from_terms(
                &r,
                oracle.iter().map(|&(j, c)| {
                    (
                        Monomial::from_exponents(vec![0, 0, 0, 0, 0, k - j, j]),
                        r.field().from_i64(c),
                    )
                }),
            );
            assert_eq!(b.pow(k), expected);
        }
    }

    #[test]
    fn additive_identity() {
        let r = ring(0);
        let p = parse(&r, "a1*x - 3/2*a0*z");
        assert_eq!(&p + &Poly::zero(&r), p);
    }

    #[test]
    fn partial_derivatives() {
        let r3 = ring(3);
        let x = r3.var_index("x").unwrap();
        assert_eq!(parse(&r3, "a2*x^2*z^2").partial(x, 2), parse(&r3, "2*a2*z^2"));
        assert!(parse(&r3, "z^5").partial(x, 1).is_zero());
        let r5 = ring(5);
        assert_eq!(
            parse(&r5, "a4*x^4*z^4").partial(r5.var_index("x").unwrap(), 4),
            parse(&r5, "4*a4*z^4")
        );
    }

    #[test]
    fn divide_out_cases() {
        let r = ring(3);
        let z = r.var_index("z").unwrap();
        assert_eq!(parse(&r, "2*a2*z^2").divide_out(z, 2).unwrap(), parse(&r, "2*a2"));
        assert!(matches!(
            parse(&r, "a1*z^3 + a4*x^3").divide_out(z, 1),
            Err(PolyError::NotDivisible { .. })
        ));
        assert_eq!(
            parse(&r, "a1*z^4*z + 2*a2*x*z^3*z").divide_out(z, 1).unwrap(),
            parse(&r, "a1*z^4 + 2*a2*x*z^3")
        );
    }

    #[test]
    fn grading() {
        let r = ring(0);
        let weight = [0, 1, 2, 3, 4, 0, 0];
        let g = parse(&r, "a2^2 + a1*a3").grade(&weight);
        assert_eq!(g.keys().copied().collect::<Vec<_>>(), vec![4]);
        assert!(Poly::zero(&r).grade(&weight).is_empty());
        let deg = [1, 1, 1, 1, 1, 0, 0];
        let g = parse(&r, "a0 + a1*a2").grade(&deg);
        assert_eq!(g.keys().copied().collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn substitution() {
        let r = ring(3);
        let x = r.var_index("x").unwrap();
        let p = parse(&r, "a1*x^6");
        let s = p.substitute(&[(x, parse(&r, "x + 2*z"))], &r).unwrap();
        assert_eq!(s, parse(&r, "a1*(x + 2*z)^6"));
        assert_eq!(p.substitute(&[], &r).unwrap(), p);
    }

    #[test]
    fn upper_unipotent_keeps_leading_coefficient() {
        let r = Ring::new(Field::Rational, ["a0", "a1", "a2", "a3", "a4", "x", "z", "t"]);
        let f = parse(&r, "a0*z^4 + a1*x*z^3 + a2*x^2*z^2 + a3*x^3*z + a4*x^4");
        let x = r.var_index("x").unwrap();
        let g = f.substitute(&[(x, parse(&r, "x + t*z"))], &r).unwrap();
        let coeffs = g.coefficients_in(x);
        assert_eq!(coeffs[4], parse(&r, "a4"));
        // binomial oracle for the z^4 slot: sum a_i t^i
        let a0p = coeffs[0].clone();
        assert_eq!(a0p, parse(&r, "(a0 + a1*t + a2*t^2 + a3*t^3 + a4*t^4)*z^4"));
    }

    #[test]
    fn canonical_order_is_descending_grevlex() {
        let r = Ring::new(Field::Rational, ["x", "y", "z"]);
        let p = parse(&r, "z^2 + x*y + y^2 + x^2 + x*z + y*z + x + 1");
        assert_eq!(p.to_text(), "x^2 + x*y + y^2 + x*z + y*z + z^2 + x + 1");
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = ring(3);
        let b = ring(5);
        assert!(matches!(
            Poly::one(&a).try_add(&Poly::one(&b)),
            Err(PolyError::RingMismatch(_))
        ));
    }
}
