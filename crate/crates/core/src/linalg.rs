//! Exact linear algebra over a [`Field`]: dense matrices for kernels and
//! ranks, and [`PolySpan`], an incremental echelon basis of polynomials that
//! tracks how each basis row was built from the inserted inputs.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::poly::{Monomial, Poly, Ring};
use crate::scalar::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            data.extend(row);
        }
        Matrix {
            field,
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_i64(field: Field, rows: &[Vec<i64>]) -> Matrix {
        Matrix::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.get(r, c).inv().expect("pivot is nonzero");
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = self.get(r, j);
                    if !v.is_zero() {
                        let nv = self.get(i, j) - &(&f * v);
                        self.set(i, j, nv);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right kernel `{v : A v = 0}`, each vector with a 1 in its free column.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![self.field.zero(); self.cols];
                v[fc] = self.field.one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m.get(r, fc);
                }
                v
            })
            .collect()
    }
}

/// Rank of a family of polynomials computed by a dense elimination over the
/// union of their supports, scanning monomials in ascending order. It shares
/// no code path with [`PolySpan`], which pivots on descending leading terms.
pub fn dense_rank(polys: &[Poly]) -> usize {
    let Some(first) = polys.first() else {
        return 0;
    };
    let mut support: Vec<Monomial> = polys
        .iter()
        .flat_map(|p| p.terms().map(|(m, _)| m.clone()))
        .collect();
    support.sort();
    support.dedup();
    let index: BTreeMap<&Monomial, usize> = support.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let field = first.field();
    let mut m = Matrix::zeros(field, polys.len(), support.len());
    for (r, p) in polys.iter().enumerate() {
        for (mono, c) in p.terms() {
            m.set(r, index[mono], c.clone());
        }
    }
    m.rank()
}

#[derive(Debug, Clone)]
struct SpanRow {
    poly: Poly,
    combo: Vec<Scalar>,
}

/// Incremental echelon basis of a span of polynomials.
///
/// Every stored row is monic with a distinct leading monomial. Each row
/// carries its expression as a combination of the inputs passed to
/// [`PolySpan::insert`], so membership answers come with certificates.
#[derive(Debug, Clone)]
pub struct PolySpan {
    ring: Arc<Ring>,
    rows: Vec<SpanRow>,
    pivots: BTreeMap<Monomial, usize>,
    inputs: usize,
}

/// Result of reducing a polynomial against a [`PolySpan`].
#[derive(Debug, Clone)]
pub struct Reduction {
    pub remainder: Poly,
    /// `target - remainder = sum combo[i] * input[i]`.
    pub combo: Vec<Scalar>,
}

impl PolySpan {
    pub fn new(ring: &Arc<Ring>) -> PolySpan {
        PolySpan {
            ring: ring.clone(),
            rows: Vec::new(),
            pivots: BTreeMap::new(),
            inputs: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn input_count(&self) -> usize {
        self.inputs
    }

    pub fn reduce(&self, target: &Poly) -> Reduction {
        let field = self.ring.field();
        let mut rem = target.clone();
        let mut out = Poly::zero(&self.ring);
        let mut combo = vec![field.zero(); self.inputs];
        while let Some((m, c)) = rem.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            match self.pivots.get(&m) {
                Some(&r) => {
                    let row = &self.rows[r];
                    rem.add_scaled(&row.poly, &-&c);
                    for (acc, v) in combo.iter_mut().zip(&row.combo) {
                        if !v.is_zero() {
                            *acc += &(&c * v);
                        }
                    }
                }
                None => {
                    rem.add_term(m.clone(), &-&c);
                    out.add_term(m, &c);
                }
            }
        }
        Reduction {
            remainder: out,
            combo,
        }
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.reduce(p).remainder.is_zero()
    }

    /// Inserts the next input. Returns `true` if it enlarged the span.
    pub fn insert(&mut self, p: &Poly) -> bool {
        let field = self.ring.field();
        self.inputs += 1;
        for row in &mut self.rows {
            row.combo.push(field.zero());
        }
        let red = self.reduce(p);
        if red.remainder.is_zero() {
            return false;
        }
        // remainder = p - sum combo_i * input_i
        let mut combo: Vec<Scalar> = red.combo.iter().map(|c| -c).collect();
        combo[self.inputs - 1] = field.one();
        debug_assert_eq!(combo.len(), self.inputs);
        let (lead, lc) = {
            let (m, c) = red.remainder.leading_term().expect("nonzero remainder");
            (m.clone(), c.clone())
        };
        let inv = lc.inv().expect("nonzero");
        let poly = red.remainder.scale(&inv);
        let combo = combo.iter().map(|c| c * &inv).collect();
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(SpanRow { poly, combo });
        true
    }

    /// Basis polynomials in insertion order.
    pub fn basis(&self) -> impl Iterator<Item = &Poly> {
        self.rows.iter().map(|r| &r.poly)
    }
}
