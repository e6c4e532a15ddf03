//! Covariants of a binary form `f = sum a_i x^i z^(n-i)` in coefficient form.
//!
//! A covariant carries its degree `d` (in the `a_i`), order `m` (in `x, z`)
//! and weight `w`. The `x^i z^(m-i)` coefficient of a covariant is isobaric of
//! weight `w + i`, and `n d - 2 w = m`.

mod operator;
mod verify;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{Poly, PolyError, PolyJson, Ring};
use crate::scalar::{Field, ScalarError};

pub use operator::{lower_order, lower_order_unchecked};
pub use verify::{
    covariant_basis, hilbert_conditions, hilbert_d, hilbert_delta, is_covariant, transformed_coefficients, HilbertReport,
    Unipotent, Verdict, VerdictJson,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CovariantError {
    #[error("form degree must be at least 1")]
    DegreeZero,
    #[error("not homogeneous: {0}")]
    Inhomogeneous(String),
    #[error("coefficient of x^{index} is not isobaric")]
    NotIsobaric { index: u32 },
    #[error("weight bookkeeping fails: n*d - 2*w = {lhs}, order is {m}")]
    WeightMismatch { lhs: i64, m: u32 },
    #[error("zero polynomial has no well-defined grade")]
    Zero,
    #[error("operator condition fails: {p} does not divide {m0} - {l} + 1")]
    ConditionFailed { p: u64, m0: u32, l: u32 },
    #[error("operator arguments out of range: {0}")]
    BadArguments(String),
    #[error("internal error: division by z^{l} failed although the congruence holds")]
    NotDivisible { l: u32 },
    #[error("covariants belong to different forms: {0}")]
    SpecMismatch(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// The generic binary form of degree `n` over a fixed field, with the ring
/// `k[a0..an, x, z]` and a companion ring that also has the parameter `t`.
#[derive(Debug, Clone)]
pub struct BinaryFormSpec {
    n: u32,
    ring: Arc<Ring>,
    ring_t: Arc<Ring>,
}

impl PartialEq for BinaryFormSpec {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.ring.field() == other.ring.field()
    }
}

impl Eq for BinaryFormSpec {}

impl BinaryFormSpec {
    pub fn new(n: u32, field: Field) -> Result<BinaryFormSpec, CovariantError> {
        if n == 0 {
            return Err(CovariantError::DegreeZero);
        }
        let mut names: Vec<String> = (0..=n).map(|i| format!("a{i}")).collect();
        names.push("x".into());
        names.push("z".into());
        let ring = Ring::new(field, names.clone());
        names.push("t".into());
        let ring_t = Ring::new(field, names);
        Ok(BinaryFormSpec { n, ring, ring_t })
    }

    /// `p = 0` selects the rationals.
    pub fn with_char(n: u32, p: u64) -> Result<BinaryFormSpec, CovariantError> {
        BinaryFormSpec::new(n, Field::new(p)?)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn characteristic(&self) -> u64 {
        self.ring.field().characteristic()
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn ring_t(&self) -> &Arc<Ring> {
        &self.ring_t
    }

    pub fn a(&self, i: u32) -> usize {
        assert!(i <= self.n);
        i as usize
    }

    pub fn x(&self) -> usize {
        self.n as usize + 1
    }

    pub fn z(&self) -> usize {
        self.n as usize + 2
    }

    pub fn t(&self) -> usize {
        self.n as usize + 3
    }

    pub fn parse(&self, src: &str) -> Result<Poly, PolyError> {
        Poly::parse(&self.ring, src)
    }

    /// The form itself, `sum a_i x^i z^(n-i)`.
    pub fn form(&self) -> Poly {
        let mut out = Poly::zero(&self.ring);
        for i in 0..=self.n {
            let mut e = vec![0; self.ring.nvars()];
            e[self.a(i)] = 1;
            e[self.x()] = i;
            e[self.z()] = self.n - i;
            out.add_term(crate::poly::Monomial::from_exponents(e), &self.field().one());
        }
        out
    }

    /// Weights for the `a`-degree grading.
    pub fn degree_weights(&self) -> Vec<i64> {
        let mut w = vec![0; self.ring.nvars()];
        for i in 0..=self.n {
            w[self.a(i)] = 1;
        }
        w
    }

    /// Weights `a_i -> i` for the isobaric grading.
    pub fn weight_weights(&self) -> Vec<i64> {
        let mut w = vec![0; self.ring.nvars()];
        for i in 0..=self.n {
            w[self.a(i)] = i as i64;
        }
        w
    }

    pub fn order_weights(&self) -> Vec<i64> {
        let mut w = vec![0; self.ring.nvars()];
        w[self.x()] = 1;
        w[self.z()] = 1;
        w
    }

    /// The `x^i` coefficients of a polynomial homogeneous in `x, z`, with `z` removed.
    pub fn x_slices(&self, p: &Poly, m: u32) -> Vec<Poly> {
        let mut out = vec![Poly::zero(&self.ring); m as usize + 1];
        for (i, c) in p.coefficients_in(self.x()).into_iter().enumerate() {
            if !c.is_zero() {
                out[i] = c.divide_out(self.z(), m - i as u32).expect("homogeneous in x, z");
            }
        }
        out
    }

    fn check(&self, other: &BinaryFormSpec) -> Result<(), CovariantError> {
        if self == other {
            Ok(())
        } else {
            Err(CovariantError::SpecMismatch(format!(
                "n={} over {} vs n={} over {}",
                self.n,
                self.field(),
                other.n,
                other.field()
            )))
        }
    }
}

/// The `(degree, order, weight)` of a nonzero polynomial that is homogeneous
/// and whose `x`-slices are isobaric with consecutive weights.
pub fn grades(spec: &BinaryFormSpec, p: &Poly) -> Result<(u32, u32, i64), CovariantError> {
    if p.is_zero() {
        return Err(CovariantError::Zero);
    }
    let d = homogeneous(p, &spec.degree_weights(), "a-degree")?;
    let m = homogeneous(p, &spec.order_weights(), "x,z-degree")?;
    let ww = spec.weight_weights();
    let mut w: Option<i64> = None;
    for (i, c) in spec.x_slices(p, m).iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let weights = c.weighted_degrees(&ww);
        if weights.len() != 1 {
            return Err(CovariantError::NotIsobaric { index: i as u32 });
        }
        let wi = weights[0] - i as i64;
        match w {
            None => w = Some(wi),
            Some(prev) if prev != wi => return Err(CovariantError::NotIsobaric { index: i as u32 }),
            _ => {}
        }
    }
    Ok((d, m, w.expect("nonzero polynomial has a slice")))
}

fn homogeneous(p: &Poly, weights: &[i64], what: &str) -> Result<u32, CovariantError> {
    match p.weighted_degrees(weights).as_slice() {
        [d] => Ok(*d as u32),
        ds => Err(CovariantError::Inhomogeneous(format!("{what} takes values {ds:?}"))),
    }
}

/// A polynomial in `a0..an, x, z` with its certified grade.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Covariant {
    spec: BinaryFormSpec,
    poly: Poly,
    d: u32,
    m: u32,
    w: i64,
}

impl Covariant {
    /// Grades `poly` and checks `n d - 2 w = m`. No unipotent check is made;
    /// see [`is_covariant`].
    pub fn new(spec: &BinaryFormSpec, poly: Poly) -> Result<Covariant, CovariantError> {
        let poly = poly.embed(spec.ring())?;
        let (d, m, w) = grades(spec, &poly)?;
        let lhs = spec.n as i64 * d as i64 - 2 * w;
        if lhs != m as i64 {
            return Err(CovariantError::WeightMismatch { lhs, m });
        }
        Ok(Covariant {
            spec: spec.clone(),
            poly,
            d,
            m,
            w,
        })
    }

    /// A covariant with stated grade; a nonzero `poly` must agree with it.
    pub fn with_grade(spec: &BinaryFormSpec, poly: Poly, d: u32, m: u32, w: i64) -> Result<Covariant, CovariantError> {
        if !poly.is_zero() {
            let c = Covariant::new(spec, poly)?;
            if (c.d, c.m, c.w) != (d, m, w) {
                return Err(CovariantError::Inhomogeneous(format!(
                    "stated grade ({d}, {m}, {w}) but polynomial has ({}, {}, {})",
                    c.d, c.m, c.w
                )));
            }
            return Ok(c);
        }
        Ok(Covariant {
            spec: spec.clone(),
            poly: Poly::zero(spec.ring()),
            d,
            m,
            w,
        })
    }

    pub fn form(spec: &BinaryFormSpec) -> Covariant {
        Covariant::new(spec, spec.form()).expect("the form is graded")
    }

    pub fn parse(spec: &BinaryFormSpec, src: &str) -> Result<Covariant, CovariantError> {
        Covariant::new(spec, spec.parse(src)?)
    }

    pub fn spec(&self) -> &BinaryFormSpec {
        &self.spec
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn weight(&self) -> i64 {
        self.w
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn mul(&self, other: &Covariant) -> Result<Covariant, CovariantError> {
        self.spec.check(&other.spec)?;
        Ok(Covariant {
            spec: self.spec.clone(),
            poly: self.poly.try_mul(&other.poly)?,
            d: self.d + other.d,
            m: self.m + other.m,
            w: self.w + other.w,
        })
    }

    pub fn pow(&self, k: u32) -> Covariant {
        Covariant {
            spec: self.spec.clone(),
            poly: self.poly.pow(k),
            d: self.d * k,
            m: self.m * k,
            w: self.w * k as i64,
        }
    }

    pub fn monic(&self) -> Covariant {
        Covariant {
            poly: self.poly.monic(),
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> CovariantJson {
        CovariantJson {
            n: self.spec.n,
            p: self.spec.characteristic(),
            d: self.d,
            m: self.m,
            w: self.w,
            poly: self.poly.to_json(),
        }
    }

    pub fn from_json(json: &CovariantJson) -> Result<Covariant, CovariantError> {
        let spec = BinaryFormSpec::with_char(json.n, json.p)?;
        let poly = Poly::from_json_in(&json.poly, spec.ring())?;
        Covariant::with_grade(&spec, poly, json.d, json.m, json.w)
    }
}

impl fmt::Display for Covariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CovariantJson {
    pub n: u32,
    pub p: u64,
    pub d: u32,
    pub m: u32,
    pub w: i64,
    pub poly: PolyJson,
}
