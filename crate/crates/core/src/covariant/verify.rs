//! Exact covariance checks and Hilbert's operators.
//!
//! SL2 is generated by the torus and the two unipotent families
//! `x -> x + t z` and `z -> t x + z`. The torus part reduces to weight
//! bookkeeping; the unipotent parts are identities in `k[a, x, z, t]`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{grades, BinaryFormSpec, CovariantError};
use crate::linalg::Matrix;
use crate::poly::{Monomial, Poly, PolyJson};
use crate::scalar::Scalar;
use crate::transfer::isobaric_monomials;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unipotent {
    /// `x -> x + t z`
    Upper,
    /// `z -> t x + z`
    Lower,
}

/// Coefficients `a'_0..a'_n` in `k[a, t]` (inside the ring with `t`) of the
/// form after the unipotent change of variables.
pub fn transformed_coefficients(spec: &BinaryFormSpec, kind: Unipotent) -> Vec<Poly> {
    let r = spec.ring_t();
    let x = Poly::var(r, spec.x());
    let z = Poly::var(r, spec.z());
    let t = Poly::var(r, spec.t());
    let bindings = match kind {
        Unipotent::Upper => vec![(spec.x(), &x + &(&t * &z))],
        Unipotent::Lower => vec![(spec.z(), &(&t * &x) + &z)],
    };
    let moved = spec.form().substitute(&bindings, r).expect("form lives in the base ring");
    let slices = moved.coefficients_in(spec.x());
    (0..=spec.n())
        .map(|k| match slices.get(k as usize) {
            Some(c) => c.divide_out(spec.z(), spec.n() - k).expect("homogeneous in x, z"),
            None => Poly::zero(r),
        })
        .collect()
}

/// `C(a'(t); X'(t)) - C(a; X)`, with `X'` the inverse substitution.
fn residual(spec: &BinaryFormSpec, c: &Poly, kind: Unipotent) -> Poly {
    let r = spec.ring_t();
    let x = Poly::var(r, spec.x());
    let z = Poly::var(r, spec.z());
    let t = Poly::var(r, spec.t());
    let mut bindings: Vec<(usize, Poly)> = transformed_coefficients(spec, kind)
        .into_iter()
        .enumerate()
        .collect();
    match kind {
        Unipotent::Upper => bindings.push((spec.x(), &x - &(&t * &z))),
        Unipotent::Lower => bindings.push((spec.z(), &z - &(&t * &x))),
    }
    let moved = c.substitute(&bindings, r).expect("candidate lives in the base ring");
    &moved - &c.embed(r).expect("base ring embeds")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub covariant: bool,
    pub torus_ok: bool,
    pub reason: Option<String>,
    pub grade: Option<(u32, u32, i64)>,
    pub upper_residual: Poly,
    pub lower_residual: Poly,
}

impl Verdict {
    /// A residual with `t` specialized, returned in the ring without `t`.
    pub fn residual_at(&self, spec: &BinaryFormSpec, kind: Unipotent, t: &Scalar) -> Poly {
        let r = match kind {
            Unipotent::Upper => &self.upper_residual,
            Unipotent::Lower => &self.lower_residual,
        };
        r.evaluate_var(spec.t(), t)
            .embed(spec.ring())
            .expect("t eliminated")
    }

    pub fn to_json(&self) -> VerdictJson {
        VerdictJson {
            covariant: self.covariant,
            torus_ok: self.torus_ok,
            reason: self.reason.clone(),
            grade: self.grade,
            upper_residual: self.upper_residual.to_json(),
            lower_residual: self.lower_residual.to_json(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub covariant: bool,
    pub torus_ok: bool,
    pub reason: Option<String>,
    pub grade: Option<(u32, u32, i64)>,
    pub upper_residual: PolyJson,
    pub lower_residual: PolyJson,
}

/// Decides whether `c` is a covariant of the form described by `spec`.
///
/// Errors only on inputs that are not homogeneous in the `a` and in `x, z`.
pub fn is_covariant(spec: &BinaryFormSpec, c: &Poly) -> Result<Verdict, CovariantError> {
    let c = c.embed(spec.ring())?;
    let zero = Poly::zero(spec.ring_t());
    if c.is_zero() {
        return Ok(Verdict {
            covariant: true,
            torus_ok: true,
            reason: None,
            grade: None,
            upper_residual: zero.clone(),
            lower_residual: zero,
        });
    }
    let (torus_ok, reason, grade) = match grades(spec, &c) {
        Ok((d, m, w)) => {
            let lhs = spec.n() as i64 * d as i64 - 2 * w;
            if lhs == m as i64 {
                (true, None, Some((d, m, w)))
            } else {
                let e = CovariantError::WeightMismatch { lhs, m };
                (false, Some(e.to_string()), Some((d, m, w)))
            }
        }
        Err(e @ CovariantError::NotIsobaric { .. }) => (false, Some(e.to_string()), None),
        Err(e) => return Err(e),
    };
    let upper_residual = residual(spec, &c, Unipotent::Upper);
    let lower_residual = residual(spec, &c, Unipotent::Lower);
    let mut reason = reason;
    if reason.is_none() && !upper_residual.is_zero() {
        reason = Some("upper unipotent residual is nonzero".into());
    }
    if reason.is_none() && !lower_residual.is_zero() {
        reason = Some("lower unipotent residual is nonzero".into());
    }
    Ok(Verdict {
        covariant: reason.is_none(),
        torus_ok,
        reason,
        grade,
        upper_residual,
        lower_residual,
    })
}

/// A basis of the covariants of degree `d` and order `m`: the kernel of the
/// two unipotent residual maps on the torus-graded monomials.
pub fn covariant_basis(spec: &BinaryFormSpec, d: u32, m: u32) -> Vec<Poly> {
    let n = spec.n();
    if n * d < m || !(n * d - m).is_multiple_of(2) {
        return Vec::new();
    }
    let w = (n * d - m) / 2;
    let nv = spec.ring().nvars();
    let mut cands = Vec::new();
    for i in 0..=m {
        for a in isobaric_monomials(n, d, w + i) {
            let mut e = vec![0; nv];
            e[..a.len()].copy_from_slice(&a);
            e[spec.x()] = i;
            e[spec.z()] = m - i;
            cands.push(Poly::monomial(spec.ring(), Monomial::from_exponents(e), spec.field().one()));
        }
    }
    let residuals: Vec<(Poly, Poly)> = cands
        .iter()
        .map(|c| (residual(spec, c, Unipotent::Upper), residual(spec, c, Unipotent::Lower)))
        .collect();
    // one row per (kind, monomial) of the residual space
    let mut rows: BTreeMap<(u8, Monomial), usize> = BTreeMap::new();
    for (up, lo) in &residuals {
        for (k, r) in [(0u8, up), (1, lo)] {
            for (mono, _) in r.terms() {
                let next = rows.len();
                rows.entry((k, mono.clone())).or_insert(next);
            }
        }
    }
    let mut mat = Matrix::zeros(spec.field(), rows.len(), cands.len());
    for (j, (up, lo)) in residuals.iter().enumerate() {
        for (k, r) in [(0u8, up), (1, lo)] {
            for (mono, c) in r.terms() {
                mat.set(rows[&(k, mono.clone())], j, c.clone());
            }
        }
    }
    mat.kernel()
        .into_iter()
        .map(|v| {
            let mut p = Poly::zero(spec.ring());
            for (c, coef) in cands.iter().zip(&v) {
                if !coef.is_zero() {
                    p.add_scaled(c, coef);
                }
            }
            p
        })
        .collect()
}

/// `Delta = sum_{i=1}^{n} i a_i d/da_{i-1}`.
pub fn hilbert_delta(spec: &BinaryFormSpec, c: &Poly) -> Poly {
    let r = spec.ring();
    let mut out = Poly::zero(r);
    for i in 1..=spec.n() {
        let d = c.partial(spec.a(i - 1), 1);
        if d.is_zero() {
            continue;
        }
        let factor = Poly::var(r, spec.a(i)).scale(&spec.field().from_i64(i as i64));
        out = &out + &(&factor * &d);
    }
    out
}

/// `D = sum_{i=0}^{n-1} (n - i) a_i d/da_{i+1}`.
pub fn hilbert_d(spec: &BinaryFormSpec, c: &Poly) -> Poly {
    let r = spec.ring();
    let n = spec.n();
    let mut out = Poly::zero(r);
    for i in 0..n {
        let d = c.partial(spec.a(i + 1), 1);
        if d.is_zero() {
            continue;
        }
        let factor = Poly::var(r, spec.a(i)).scale(&spec.field().from_i64((n - i) as i64));
        out = &out + &(&factor * &d);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertReport {
    pub isobaric_ok: bool,
    pub d_ok: bool,
    pub delta_ok: bool,
    /// `p = 0` or `p > n d + m`; outside this range the three conditions
    /// say nothing about covariance.
    pub applicable: bool,
}

impl HilbertReport {
    pub fn all_ok(&self) -> bool {
        self.isobaric_ok && self.d_ok && self.delta_ok
    }
}

pub fn hilbert_conditions(spec: &BinaryFormSpec, c: &Poly) -> Result<HilbertReport, CovariantError> {
    let c = c.embed(spec.ring())?;
    let (isobaric_ok, d, m) = match grades(spec, &c) {
        Ok((d, m, w)) => (spec.n() as i64 * d as i64 - 2 * w == m as i64, d, m),
        Err(CovariantError::NotIsobaric { .. }) => {
            let d = c.weighted_degrees(&spec.degree_weights());
            let m = c.weighted_degrees(&spec.order_weights());
            (false, d[0] as u32, m[0] as u32)
        }
        Err(CovariantError::Zero) => (true, 0, 0),
        Err(e) => return Err(e),
    };
    let x = Poly::var(spec.ring(), spec.x());
    let z = Poly::var(spec.ring(), spec.z());
    let d_ok = hilbert_d(spec, &c) == &x * &c.partial(spec.z(), 1);
    let delta_ok = hilbert_delta(spec, &c) == &z * &c.partial(spec.x(), 1);
    let p = spec.characteristic();
    let applicable = p == 0 || p > (spec.n() as u64) * d as u64 + m as u64;
    Ok(HilbertReport {
        isobaric_ok,
        d_ok,
        delta_ok,
        applicable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: u32, p: u64) -> BinaryFormSpec {
        BinaryFormSpec::with_char(n, p).unwrap()
    }

    #[test]
    fn unipotent_coefficients() {
        let s = spec(4, 0);
        let up = transformed_coefficients(&s, Unipotent::Upper);
        assert_eq!(up[4], Poly::parse(s.ring_t(), "a4").unwrap());
        assert_eq!(up[0], Poly::parse(s.ring_t(), "a0 + a1*t + a2*t^2 + a3*t^3 + a4*t^4").unwrap());
        let s2 = spec(2, 0);
        let lo = transformed_coefficients(&s2, Unipotent::Lower);
        assert_eq!(lo[0], Poly::parse(s2.ring_t(), "a0").unwrap());
        assert_eq!(lo[2], Poly::parse(s2.ring_t(), "a2 + a1*t + a0*t^2").unwrap());
        let s16 = spec(16, 3);
        let up = transformed_coefficients(&s16, Unipotent::Upper);
        let at1 = up[11].evaluate_var(s16.t(), &s16.field().one());
        assert_eq!(at1, Poly::parse(s16.ring_t(), "a11 + a14").unwrap());
    }

    #[test]
    fn form_and_discriminant() {
        for (n, p) in [(2, 0), (3, 2), (4, 3), (5, 5)] {
            let s = spec(n, p);
            assert!(is_covariant(&s, &s.form()).unwrap().covariant);
        }
        let s = spec(2, 0);
        assert!(is_covariant(&s, &s.parse("a1^2 - 4*a0*a2").unwrap()).unwrap().covariant);
        let v = is_covariant(&s, &s.parse("a1^2 - 3*a0*a2").unwrap()).unwrap();
        assert!(v.torus_ok && !v.covariant);
    }

    #[test]
    fn basis_dimensions() {
        let s = spec(4, 0);
        assert_eq!(covariant_basis(&s, 1, 4).len(), 1);
        assert_eq!(covariant_basis(&s, 2, 0).len(), 1);
        assert_eq!(covariant_basis(&s, 2, 2).len(), 0);
        assert!(covariant_basis(&s, 1, 3).is_empty());
        let b = covariant_basis(&spec(2, 0), 2, 0);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].monic(), spec(2, 0).parse("a1^2 - 4*a0*a2").unwrap().monic());
    }

    #[test]
    fn hilbert_operators() {
        let s = spec(4, 0);
        assert_eq!(hilbert_delta(&s, &s.parse("a0").unwrap()), s.parse("a1").unwrap());
        assert!(hilbert_d(&s, &s.parse("a0").unwrap()).is_zero());
        assert_eq!(hilbert_d(&s, &s.parse("a2^2").unwrap()), s.parse("6*a1*a2").unwrap());
        let rep = hilbert_conditions(&s, &s.form()).unwrap();
        assert!(rep.all_ok() && rep.applicable);
        let rep = hilbert_conditions(&s, &s.parse("a2^2").unwrap()).unwrap();
        assert!(rep.isobaric_ok && !rep.d_ok);
    }
}
