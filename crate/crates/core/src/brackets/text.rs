//! Text, JSON and DOT forms of bracket monomials and polynomials.
//!
//! Text: `[12][34]`, `[1u]^2`, `-[13][2u]`, `2*[12]^2 + -1*[13][24]`. For
//! `n >= 10` a comma separates the endpoints: `[3,11]`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{BracketEdge, BracketError, BracketMonomial, BracketPoly, End};
use crate::scalar::{Field, Scalar};

fn end_text(e: End) -> String {
    match e {
        End::Pt(i) => i.to_string(),
        End::U => "u".to_string(),
    }
}

fn edge_text(e: &BracketEdge, n: u32) -> String {
    if n >= 10 {
        format!("[{},{}]", e.i, end_text(e.j))
    } else {
        format!("[{}{}]", e.i, end_text(e.j))
    }
}

fn edges_text(m: &BracketMonomial) -> String {
    if m.edges.is_empty() {
        return "1".to_string();
    }
    m.edges
        .iter()
        .map(|(e, k)| {
            if *k == 1 {
                edge_text(e, m.n)
            } else {
                format!("{}^{}", edge_text(e, m.n), k)
            }
        })
        .collect()
}

impl fmt::Display for BracketMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            f.write_str("-")?;
        }
        f.write_str(&edges_text(self))
    }
}

impl fmt::Display for BracketPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .monomials()
            .map(|(m, c)| {
                let body = edges_text(&m);
                if m.edges.is_empty() {
                    c.to_string()
                } else if c.is_one() {
                    body
                } else if (-c).is_one() && matches!(c, Scalar::Rat(_)) {
                    format!("-{body}")
                } else {
                    format!("{c}*{body}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, msg: &str) -> BracketError {
        BracketError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.src.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<u32, BracketError> {
        self.peek();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii")
            .parse()
            .map_err(|_| self.err("expected a number"))
    }

    fn end_token(&mut self, tok: &str) -> Result<End, BracketError> {
        if tok == "u" {
            return Ok(End::U);
        }
        tok.parse().map(End::Pt).map_err(|_| self.err("bad bracket endpoint"))
    }

    fn bracket(&mut self) -> Result<(End, End), BracketError> {
        // caller consumed '['
        let start = self.pos;
        let close = self.src[start..]
            .iter()
            .position(|&b| b == b']')
            .ok_or_else(|| self.err("unterminated bracket"))?;
        let inner: String = std::str::from_utf8(&self.src[start..start + close])
            .map_err(|_| self.err("invalid utf-8"))?
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        let (a, b) = match inner.split_once(',') {
            Some((a, b)) => (a.to_string(), b.to_string()),
            None if inner.len() == 2 && inner.is_ascii() => (inner[..1].to_string(), inner[1..].to_string()),
            None => return Err(self.err("bracket needs two single-character endpoints or a comma")),
        };
        let ends = (self.end_token(&a)?, self.end_token(&b)?);
        self.pos = start + close + 1;
        Ok(ends)
    }

    /// Bracket product with optional leading signs; `1` denotes the empty product.
    fn monomial(&mut self, n: u32) -> Result<BracketMonomial, BracketError> {
        let mut negate = false;
        while let Some(b @ (b'-' | b'+')) = self.peek() {
            if b == b'-' {
                negate = !negate;
            }
            self.pos += 1;
        }
        let mut pairs = Vec::new();
        if self.peek() == Some(b'1') {
            self.pos += 1;
        } else {
            while self.peek() == Some(b'[') {
                self.pos += 1;
                let (a, b) = self.bracket()?;
                let mut m = 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    m = self.number()?;
                    if m > 10_000 {
                        return Err(self.err("bracket exponent too large"));
                    }
                }
                pairs.push((a, b, m));
            }
            if pairs.is_empty() {
                return Err(self.err("expected '['"));
            }
        }
        let mut out = BracketMonomial::from_pairs(n, &pairs)?;
        if negate {
            out.sign = -out.sign;
        }
        Ok(out)
    }
}

impl BracketMonomial {
    pub fn parse(n: u32, s: &str) -> Result<BracketMonomial, BracketError> {
        let mut c = Cursor { src: s.as_bytes(), pos: 0 };
        let m = c.monomial(n)?;
        if c.peek().is_some() {
            return Err(c.err("trailing input"));
        }
        Ok(m)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph bracket {\n  layout=circo;\n  node [shape=circle];\n");
        for i in 1..=self.n {
            out.push_str(&format!("  \"{i}\";\n"));
        }
        out.push_str("  \"u\" [shape=doublecircle];\n");
        for (e, m) in &self.edges {
            let label = if *m > 1 { format!(" [label=\"{m}\"]") } else { String::new() };
            out.push_str(&format!("  \"{}\" -- \"{}\"{};\n", e.i, end_text(e.j), label));
        }
        out.push_str("}\n");
        out
    }
}

impl BracketPoly {
    pub fn parse(n: u32, field: Field, s: &str) -> Result<BracketPoly, BracketError> {
        let mut c = Cursor { src: s.as_bytes(), pos: 0 };
        let mut out = BracketPoly::zero(n, field);
        let mut first = true;
        loop {
            let mut negate = false;
            if !first {
                match c.peek() {
                    None => break,
                    Some(b'+') => c.pos += 1,
                    Some(b'-') => {
                        c.pos += 1;
                        negate = true;
                    }
                    Some(_) => return Err(c.err("expected '+' or '-'")),
                }
            }
            first = false;
            while let Some(b @ (b'-' | b'+')) = c.peek() {
                if b == b'-' {
                    negate = !negate;
                }
                c.pos += 1;
            }
            let mut coeff = field.one();
            if matches!(c.peek(), Some(b) if b.is_ascii_digit()) {
                let start = c.pos;
                while c.pos < c.src.len() && (c.src[c.pos].is_ascii_digit() || c.src[c.pos] == b'/') {
                    c.pos += 1;
                }
                let txt = std::str::from_utf8(&c.src[start..c.pos]).expect("ascii");
                coeff = field.parse_scalar(txt).map_err(|e| c.err(&e.to_string()))?;
                if c.peek() == Some(b'*') {
                    c.pos += 1;
                } else {
                    if negate {
                        coeff = -coeff;
                    }
                    out.add_term(Default::default(), &coeff);
                    continue;
                }
            }
            let m = c.monomial(n)?;
            if negate {
                coeff = -coeff;
            }
            out.add_monomial(&m, &coeff);
        }
        Ok(out)
    }
}

/// A `j` endpoint in JSON: an integer point or the string `"u"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EdgeEnd {
    Point(u32),
    Label(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEdgeJson {
    pub i: u32,
    pub j: EdgeEnd,
    pub m: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketMonomialJson {
    pub n: u32,
    pub sign: i8,
    pub edges: Vec<BracketEdgeJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketTermJson {
    pub c: String,
    pub edges: Vec<BracketEdgeJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketPolyJson {
    pub n: u32,
    pub terms: Vec<BracketTermJson>,
}

fn edges_to_json(m: &BracketMonomial) -> Vec<BracketEdgeJson> {
    m.edges
        .iter()
        .map(|(e, k)| BracketEdgeJson {
            i: e.i,
            j: match e.j {
                End::Pt(j) => EdgeEnd::Point(j),
                End::U => EdgeEnd::Label("u".into()),
            },
            m: *k,
        })
        .collect()
}

fn edges_from_json(n: u32, edges: &[BracketEdgeJson]) -> Result<BracketMonomial, BracketError> {
    let pairs = edges
        .iter()
        .map(|e| {
            let j = match &e.j {
                EdgeEnd::Point(j) => End::Pt(*j),
                EdgeEnd::Label(s) if s == "u" => End::U,
                EdgeEnd::Label(s) => {
                    return Err(BracketError::Parse {
                        pos: 0,
                        msg: format!("unknown endpoint {s:?}"),
                    })
                }
            };
            if e.m > 10_000 {
                return Err(BracketError::Parse {
                    pos: 0,
                    msg: "multiplicity too large".into(),
                });
            }
            Ok((End::Pt(e.i), j, e.m))
        })
        .collect::<Result<Vec<_>, _>>()?;
    BracketMonomial::from_pairs(n, &pairs)
}

impl BracketMonomial {
    pub fn to_json(&self) -> BracketMonomialJson {
        BracketMonomialJson {
            n: self.n,
            sign: self.sign,
            edges: edges_to_json(self),
        }
    }

    pub fn from_json(json: &BracketMonomialJson) -> Result<BracketMonomial, BracketError> {
        if json.sign != 1 && json.sign != -1 {
            return Err(BracketError::Parse {
                pos: 0,
                msg: format!("sign must be 1 or -1, got {}", json.sign),
            });
        }
        let mut m = edges_from_json(json.n, &json.edges)?;
        m.sign *= json.sign;
        Ok(m)
    }
}

impl BracketPoly {
    pub fn to_json(&self) -> BracketPolyJson {
        BracketPolyJson {
            n: self.n,
            terms: self
                .monomials()
                .map(|(m, c)| BracketTermJson {
                    c: c.to_string(),
                    edges: edges_to_json(&m),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &BracketPolyJson, field: Field) -> Result<BracketPoly, BracketError> {
        let mut out = BracketPoly::zero(json.n, field);
        for t in &json.terms {
            let c = field.parse_scalar(&t.c).map_err(|e| BracketError::Parse {
                pos: 0,
                msg: e.to_string(),
            })?;
            out.add_monomial(&edges_from_json(json.n, &t.edges)?, &c);
        }
        Ok(out)
    }
}
