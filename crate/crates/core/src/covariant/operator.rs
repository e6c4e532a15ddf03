//! The order-lowering operator `C = z^(-l) d^l Q / dx^l` in characteristic `p`.
//!
//! For a covariant `Q` of order `m0`, `C` is a covariant of order `m0 - 2l`
//! and weight `w0 + l` when `p | (m0 - l + 1)`, `1 <= l <= m0 / 2` and `l < p`.

use super::{BinaryFormSpec, Covariant, CovariantError};
use crate::poly::{Poly, PolyError};

/// Differentiates `l` times in `x` and divides by `z^l`, with no congruence check.
pub fn lower_order_unchecked(spec: &BinaryFormSpec, q: &Poly, l: u32) -> Result<Poly, PolyError> {
    q.partial(spec.x(), l).divide_out(spec.z(), l)
}

pub fn lower_order(q: &Covariant, l: u32) -> Result<Covariant, CovariantError> {
    let spec = q.spec();
    let p = spec.characteristic();
    let m0 = q.order();
    if p == 0 {
        return Err(CovariantError::BadArguments("characteristic must be positive".into()));
    }
    if l == 0 {
        return Err(CovariantError::BadArguments("l must be at least 1".into()));
    }
    if 2 * l > m0 {
        return Err(CovariantError::BadArguments(format!("l = {l} exceeds m0/2 = {m0}/2")));
    }
    if l as u64 >= p {
        return Err(CovariantError::BadArguments(format!("l = {l} is not below p = {p}")));
    }
    if !((m0 - l + 1) as u64).is_multiple_of(p) {
        return Err(CovariantError::ConditionFailed { p, m0, l });
    }
    let c = lower_order_unchecked(spec, q.poly(), l).map_err(|e| match e {
        PolyError::NotDivisible { .. } => CovariantError::NotDivisible { l },
        other => other.into(),
    })?;
    Covariant::with_grade(spec, c, q.degree(), m0 - 2 * l, q.weight() + l as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covariant::is_covariant;

    fn apply(n: u32, p: u64, l: u32) -> Result<Covariant, CovariantError> {
        let s = BinaryFormSpec::with_char(n, p).unwrap();
        lower_order(&Covariant::form(&s), l)
    }

    #[test]
    fn four_applications() {
        let c = apply(4, 3, 2).unwrap();
        assert_eq!(c.to_string(), "2*a2");
        let c = apply(6, 3, 1).unwrap();
        let s = c.spec().clone();
        assert_eq!(c.poly(), &s.parse("a1*z^4 + 2*a2*x*z^3 + a4*x^3*z + 2*a5*x^4").unwrap());
        assert_eq!((c.degree(), c.order()), (1, 4));
        let c = apply(6, 5, 2).unwrap();
        let s = c.spec().clone();
        assert_eq!(c.poly(), &s.parse("2*a2*z^2 + a3*x*z + 2*a4*x^2").unwrap());
        let c = apply(8, 5, 4).unwrap();
        assert_eq!(c.to_string(), "4*a4");
        assert!(is_covariant(c.spec(), c.poly()).unwrap().covariant);
    }

    #[test]
    fn argument_checks() {
        assert!(matches!(apply(4, 3, 1), Err(CovariantError::ConditionFailed { .. })));
        assert!(matches!(apply(4, 3, 0), Err(CovariantError::BadArguments(_))));
        assert!(matches!(apply(4, 3, 3), Err(CovariantError::BadArguments(_))));
        assert!(matches!(apply(4, 0, 2), Err(CovariantError::BadArguments(_))));
        assert!(matches!(apply(8, 3, 3), Err(CovariantError::BadArguments(_))));
    }
}
