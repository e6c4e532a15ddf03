//! JSON form: `{"ring": [names...], "terms": [{"c": "coeff", "e": [ints]}...]}`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Monomial, Poly, PolyError, Ring};
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub c: String,
    pub e: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub ring: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl Poly {
    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            ring: self.ring.names().to_vec(),
            terms: self
                .terms()
                .map(|(m, c)| TermJson {
                    c: c.to_string(),
                    e: m.exponents().to_vec(),
                })
                .collect(),
        }
    }

    /// Decodes into a fresh ring over `field`.
    pub fn from_json(json: &PolyJson, field: Field) -> Result<Poly, PolyError> {
        for (i, a) in json.ring.iter().enumerate() {
            let valid = a
                .bytes()
                .next()
                .is_some_and(|b| b.is_ascii_alphabetic() || b == b'_')
                && a.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_');
            if !valid {
                return Err(PolyError::Parse {
                    pos: i,
                    msg: format!("invalid variable name {a:?}"),
                });
            }
            if json.ring[..i].contains(a) {
                return Err(PolyError::Parse {
                    pos: i,
                    msg: format!("duplicate variable {a:?}"),
                });
            }
        }
        let ring = Ring::new(field, json.ring.iter().cloned());
        Poly::from_json_in(json, &ring)
    }

    /// Decodes into an existing ring; variable names must match exactly.
    pub fn from_json_in(json: &PolyJson, ring: &Arc<Ring>) -> Result<Poly, PolyError> {
        if json.ring != ring.names() {
            return Err(PolyError::RingMismatch(format!(
                "expected {:?}, found {:?}",
                ring.names(),
                json.ring
            )));
        }
        let mut out = Poly::zero(ring);
        for (i, t) in json.terms.iter().enumerate() {
            if t.e.len() != ring.nvars() {
                return Err(PolyError::Parse {
                    pos: i,
                    msg: format!("term {i} has {} exponents, ring has {}", t.e.len(), ring.nvars()),
                });
            }
            let c = ring.field().parse_scalar(&t.c)?;
            out.add_term(Monomial::from_exponents(t.e.clone()), &c);
        }
        Ok(out)
    }
}
