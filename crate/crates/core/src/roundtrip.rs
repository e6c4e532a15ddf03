//! Round-trip checks on untrusted input, shared by the fuzz targets and the
//! corpus replay test. Each function ignores input it cannot decode and
//! panics if a decoded value does not survive re-encoding.

use crate::brackets::{BracketMonomial, BracketMonomialJson, BracketPoly, BracketPolyJson};
use crate::covariant::{BinaryFormSpec, Covariant, CovariantJson};
use crate::poly::{Poly, PolyJson};
use crate::scalar::Field;

pub fn poly_text(data: &[u8]) {
    let Ok(s) = std::str::from_utf8(data) else { return };
    for p in [0, 3] {
        let spec = BinaryFormSpec::with_char(4, p).expect("valid field");
        if let Ok(poly) = Poly::parse(spec.ring(), s) {
            let again = Poly::parse(spec.ring(), &poly.to_text()).expect("canonical text parses");
            assert_eq!(again, poly);
        }
    }
}

pub fn poly_json(data: &[u8]) {
    let Ok(json) = serde_json::from_slice::<PolyJson>(data) else { return };
    for field in [Field::Rational, Field::Prime(5)] {
        if let Ok(p) = Poly::from_json(&json, field) {
            assert_eq!(Poly::from_json(&p.to_json(), field).expect("own output decodes"), p);
        }
    }
}

/// The first byte picks the point count.
pub fn bracket_text(data: &[u8]) {
    let Some((&n, rest)) = data.split_first() else { return };
    let n = u32::from(n % 12);
    let Ok(s) = std::str::from_utf8(rest) else { return };
    if let Ok(m) = BracketMonomial::parse(n, s) {
        assert_eq!(BracketMonomial::parse(n, &m.to_string()).expect("own output parses"), m);
    }
    if let Ok(p) = BracketPoly::parse(n, Field::Rational, s) {
        assert_eq!(BracketPoly::parse(n, Field::Rational, &p.to_string()).expect("own output parses"), p);
    }
}

pub fn bracket_json(data: &[u8]) {
    if let Ok(j) = serde_json::from_slice::<BracketMonomialJson>(data) {
        if let Ok(m) = BracketMonomial::from_json(&j) {
            assert_eq!(BracketMonomial::from_json(&m.to_json()).expect("own output decodes"), m);
        }
    }
    if let Ok(j) = serde_json::from_slice::<BracketPolyJson>(data) {
        let f = Field::Prime(3);
        if let Ok(p) = BracketPoly::from_json(&j, f) {
            assert_eq!(BracketPoly::from_json(&p.to_json(), f).expect("own output decodes"), p);
        }
    }
}

pub fn covariant_json(data: &[u8]) {
    let Ok(j) = serde_json::from_slice::<CovariantJson>(data) else { return };
    // large forms make single inputs slow without finding anything new
    if j.n > 12 {
        return;
    }
    if let Ok(c) = Covariant::from_json(&j) {
        assert_eq!(Covariant::from_json(&c.to_json()).expect("own output decodes"), c);
    }
}

pub fn scalar(data: &[u8]) {
    let Ok(s) = std::str::from_utf8(data) else { return };
    for field in [Field::Rational, Field::Prime(2), Field::Prime(7)] {
        if let Ok(v) = field.parse_scalar(s) {
            assert_eq!(field.parse_scalar(&v.to_string()).expect("own output parses"), v);
        }
    }
}
