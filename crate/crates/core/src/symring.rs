//! The symmetric group acting on the bracket generators, its fixed
//! subspaces degree by degree, and the resulting covariants.
//!
//! `S_n` is generated by `sigma = (1 2 ... n)` and `tau = (1 2)`, acting on
//! labels by `pi . [ij] = [pi(i) pi(j)]`. Matrices are stored by rows: row
//! `i` holds the image of generator `i`, so `R(g pi) = R(pi) R(g)`.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::brackets::{
    enumerate_generators, BracketError, BracketMonomial, BracketPoly, EdgeSet, RootRing, Straightener,
};
use crate::covariant::{BinaryFormSpec, Covariant, CovariantError, CovariantJson};
use crate::linalg::{Matrix, PolySpan};
use crate::membership::{evaluate_monomial, grade_monomials};
use crate::poly::{Monomial, Poly, Ring};
use crate::scalar::{Field, Scalar};
use crate::transfer::{Transfer, TransferError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymringError {
    #[error("action is not linear: {generator} maps to {image}")]
    NotLinear { generator: String, image: String },
    #[error("matrices do not define a representation of S_n: {0}")]
    RelationFailure(String),
    #[error(transparent)]
    Brackets(#[from] BracketError),
    #[error(transparent)]
    Transfer(#[from] TransferError),
    #[error(transparent)]
    Covariant(#[from] CovariantError),
}

#[derive(Debug, Clone)]
pub struct LinearAction {
    n: u32,
    field: Field,
    generators: Vec<BracketMonomial>,
    sigma: Matrix,
    tau: Matrix,
}

pub fn sigma_perm(n: u32) -> Vec<u32> {
    (1..=n).map(|i| i % n + 1).collect()
}

pub fn tau_perm(n: u32) -> Vec<u32> {
    let mut p: Vec<u32> = (1..=n).collect();
    p.swap(0, 1);
    p
}

fn image_row(
    g: &BracketMonomial,
    perm: &[u32],
    gens: &[BracketMonomial],
    index: &BTreeMap<&EdgeSet, usize>,
    field: Field,
    st: &mut Straightener,
) -> Result<Vec<Scalar>, SymringError> {
    let img = st.straighten(&BracketPoly::from_monomial(&g.permute(perm), field));
    let mut row = vec![field.zero(); gens.len()];
    for (edges, c) in img.terms() {
        match index.get(edges) {
            Some(&j) => row[j] = if gens[j].sign() < 0 { -c } else { c.clone() },
            None => {
                return Err(SymringError::NotLinear {
                    generator: g.to_string(),
                    image: img.to_string(),
                })
            }
        }
    }
    Ok(row)
}

/// Matrices of `sigma` and `tau` on the span of `generators`.
pub fn action_matrices(n: u32, generators: &[BracketMonomial], field: Field) -> Result<LinearAction, SymringError> {
    let index: BTreeMap<&EdgeSet, usize> = generators.iter().enumerate().map(|(i, g)| (g.edges(), i)).collect();
    let mut st = Straightener::new();
    let mut rows = |perm: &[u32]| -> Result<Matrix, SymringError> {
        let r = generators
            .iter()
            .map(|g| image_row(g, perm, generators, &index, field, &mut st))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_rows(field, r))
    };
    let sigma = rows(&sigma_perm(n))?;
    let tau = rows(&tau_perm(n))?;
    Ok(LinearAction {
        n,
        field,
        generators: generators.to_vec(),
        sigma,
        tau,
    })
}

fn compose(g: &[u32], pi: &[u32]) -> Vec<u32> {
    pi.iter().map(|&i| g[i as usize - 1]).collect()
}

impl LinearAction {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn t(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[BracketMonomial] {
        &self.generators
    }

    pub fn sigma(&self) -> &Matrix {
        &self.sigma
    }

    pub fn tau(&self) -> &Matrix {
        &self.tau
    }

    /// The matrix of every permutation, reached by breadth-first search from
    /// the identity. Every edge of the Cayley graph is checked, so success
    /// means the matrices define a representation of `S_n`.
    pub fn group(&self) -> Result<BTreeMap<Vec<u32>, Matrix>, SymringError> {
        let id: Vec<u32> = (1..=self.n).collect();
        let gens = [(sigma_perm(self.n), &self.sigma), (tau_perm(self.n), &self.tau)];
        let mut seen = BTreeMap::from([(id.clone(), Matrix::identity(self.field, self.t()))]);
        let mut queue = VecDeque::from([id]);
        while let Some(pi) = queue.pop_front() {
            let r_pi = seen[&pi].clone();
            for (g, r_g) in &gens {
                let next = compose(g, &pi);
                let r_next = r_pi.mul(r_g);
                match seen.get(&next) {
                    Some(prev) if *prev != r_next => {
                        return Err(SymringError::RelationFailure(format!(
                            "two words for {next:?} give different matrices"
                        )))
                    }
                    Some(_) => {}
                    None => {
                        seen.insert(next.clone(), r_next);
                        queue.push_back(next);
                    }
                }
            }
        }
        Ok(seen)
    }

    /// `(regularity degree, order)` of each generator.
    pub fn generator_grades(&self) -> Vec<(u32, u32)> {
        self.generators
            .iter()
            .map(|g| (g.regularity_degree().unwrap_or(0), g.order()))
            .collect()
    }

    /// Generator-variable ring `g1..gt`.
    pub fn variable_ring(&self) -> std::sync::Arc<Ring> {
        Ring::new(self.field, (1..=self.t()).map(|i| format!("g{i}")))
    }
}

/// Monomials of the generator variables in grade `(degree, order)`.
pub fn slice_monomials(action: &LinearAction, degree: u32, order: u32) -> Vec<Vec<u32>> {
    let mut m = grade_monomials(&action.generator_grades(), (degree, order));
    m.sort();
    m.reverse();
    m
}

/// The matrix of `x_i -> sum_j R_ij x_j` on the span of `monomials` (rows
/// are images). Panics if an image leaves the span.
pub fn induced_matrix(action: &LinearAction, r: &Matrix, monomials: &[Vec<u32>]) -> Matrix {
    let ring = action.variable_ring();
    let field = action.field;
    let t = action.t();
    let images: Vec<Poly> = (0..t)
        .map(|i| {
            let mut p = Poly::zero(&ring);
            for j in 0..t {
                p.add_term(Monomial::var(t, j, 1), r.get(i, j));
            }
            p
        })
        .collect();
    let col: BTreeMap<&[u32], usize> = monomials.iter().enumerate().map(|(k, m)| (m.as_slice(), k)).collect();
    let mut out = Matrix::zeros(field, monomials.len(), monomials.len());
    for (k, m) in monomials.iter().enumerate() {
        let mut p = Poly::one(&ring);
        for (i, &e) in m.iter().enumerate() {
            if e > 0 {
                p = &p * &images[i].pow(e);
            }
        }
        for (mono, c) in p.terms() {
            let j = col[mono.exponents()];
            out.set(k, j, c.clone());
        }
    }
    out
}

/// A basis of the fixed vectors in one `(degree, order)` slice, as
/// coefficient vectors over `monomials`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedBasis {
    pub degree: u32,
    pub order: u32,
    pub monomials: Vec<Vec<u32>>,
    pub basis: Vec<Vec<Scalar>>,
}

fn transpose(m: &Matrix) -> Matrix {
    let mut out = Matrix::zeros(m.field(), m.cols(), m.rows());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.set(j, i, m.get(i, j).clone());
        }
    }
    out
}

/// Fixed subspaces of the degree-`degree` polynomials in the generator
/// variables, one entry per order that has monomials.
pub fn fixed_space(action: &LinearAction, degree: u32) -> Vec<GradedBasis> {
    let grades = action.generator_grades();
    let max_order: u32 = grades.iter().map(|g| g.1).max().unwrap_or(0) * degree;
    let mut out = Vec::new();
    for order in 0..=max_order {
        let monomials = slice_monomials(action, degree, order);
        if monomials.is_empty() {
            continue;
        }
        let id = Matrix::identity(action.field, monomials.len());
        let s = transpose(&induced_matrix(action, &action.sigma, &monomials)).sub(&id);
        let t = transpose(&induced_matrix(action, &action.tau, &monomials)).sub(&id);
        let basis = s.stack(&t).kernel();
        out.push(GradedBasis {
            degree,
            order,
            monomials,
            basis,
        });
    }
    out
}

/// Greedy selection in `(degree, order)` order: an element is kept when it
/// is not in the span of products of kept elements of lower grade together
/// with kept elements of its own grade. Returns indices into `candidates`.
pub fn minimal_generators(candidates: &[Covariant]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..candidates.len()).collect();
    order.sort_by_key(|&i| (candidates[i].degree(), candidates[i].order()));
    let mut kept: Vec<usize> = Vec::new();
    let mut k = 0;
    while k < order.len() {
        let c0 = &candidates[order[k]];
        let grade = (c0.degree(), c0.order());
        let spec = c0.spec();
        let gens: Vec<Covariant> = kept.iter().map(|&i| candidates[i].clone()).collect();
        let grades: Vec<(u32, u32)> = gens.iter().map(|g| (g.degree(), g.order())).collect();
        let mut span = PolySpan::new(spec.ring());
        for e in grade_monomials(&grades, grade) {
            span.insert(&evaluate_monomial(spec, &gens, &e));
        }
        while k < order.len() && (candidates[order[k]].degree(), candidates[order[k]].order()) == grade {
            let c = &candidates[order[k]];
            if !c.is_zero() && span.insert(c.poly()) {
                kept.push(order[k]);
            }
            k += 1;
        }
    }
    kept
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceDim {
    pub degree: u32,
    pub order: u32,
    pub dim: usize,
}

#[derive(Debug, Clone)]
pub struct PipelineReport {
    pub n: u32,
    pub p: u64,
    pub max_degree: u32,
    pub generators: Vec<BracketMonomial>,
    pub fixed_dims: Vec<SliceDim>,
    pub covariants: Vec<Covariant>,
    /// Straightened bracket preimage of each covariant; already `S_n`-fixed.
    pub brackets: Vec<BracketPoly>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineJson {
    pub n: u32,
    pub p: u64,
    pub max_degree: u32,
    pub generators: Vec<String>,
    pub fixed_dims: Vec<SliceDim>,
    pub covariants: Vec<CovariantJson>,
    pub brackets: Vec<String>,
}

impl PipelineReport {
    pub fn to_json(&self) -> PipelineJson {
        PipelineJson {
            n: self.n,
            p: self.p,
            max_degree: self.max_degree,
            generators: self.generators.iter().map(|g| g.to_string()).collect(),
            fixed_dims: self.fixed_dims.clone(),
            covariants: self.covariants.iter().map(Covariant::to_json).collect(),
            brackets: self.brackets.iter().map(|b| b.to_string()).collect(),
        }
    }
}

/// Memoized root expansions of generator-variable monomials.
struct Expander {
    roots: RootRing,
    gens: Vec<Poly>,
    memo: BTreeMap<Vec<u32>, Poly>,
}

impl Expander {
    fn get(&mut self, e: &[u32]) -> Poly {
        if let Some(p) = self.memo.get(e) {
            return p.clone();
        }
        let out = match e.iter().rposition(|&k| k > 0) {
            None => Poly::one(self.roots.ring()),
            Some(i) => {
                let mut prev = e.to_vec();
                prev[i] -= 1;
                &self.get(&prev) * &self.gens[i]
            }
        };
        self.memo.insert(e.to_vec(), out.clone());
        out
    }
}

fn bracket_of(action: &LinearAction, e: &[u32]) -> BracketMonomial {
    let mut m = BracketMonomial::one(action.n);
    for (g, &k) in action.generators.iter().zip(e) {
        if k > 0 {
            m = m.mul(&g.pow(k));
        }
    }
    m
}

/// Generators, action, fixed spaces up to `max_degree`, transfer to the
/// coefficients and a minimal generating subset of the images.
pub fn separating_pipeline(n: u32, p: u64, max_degree: u32) -> Result<PipelineReport, SymringError> {
    let spec = BinaryFormSpec::with_char(n, p)?;
    let field = spec.field();
    let generators = enumerate_generators(n)?;
    let action = action_matrices(n, &generators, field)?;
    action.group()?;
    let mut tr = Transfer::new(&spec);
    let roots = tr.roots().clone();
    let mut ex = Expander {
        gens: generators.iter().map(|g| g.expand(&roots)).collect(),
        roots,
        memo: BTreeMap::new(),
    };
    let mut st = Straightener::new();
    let mut fixed_dims = Vec::new();
    let mut candidates: Vec<Covariant> = Vec::new();
    let mut sources: Vec<BracketPoly> = Vec::new();
    for degree in 1..=max_degree {
        for slice in fixed_space(&action, degree) {
            fixed_dims.push(SliceDim {
                degree,
                order: slice.order,
                dim: slice.basis.len(),
            });
            for v in &slice.basis {
                let mut root = Poly::zero(ex.roots.ring());
                let mut br = BracketPoly::zero(n, field);
                for (e, c) in slice.monomials.iter().zip(v) {
                    if c.is_zero() {
                        continue;
                    }
                    root.add_scaled(&ex.get(e), c);
                    br.add_monomial(&bracket_of(&action, e), c);
                }
                if root.is_zero() {
                    continue;
                }
                let coeffs = tr.to_coefficients(&root, degree, slice.order)?;
                candidates.push(Covariant::new(&spec, coeffs)?);
                sources.push(br);
            }
        }
    }
    let kept = minimal_generators(&candidates);
    Ok(PipelineReport {
        n,
        p,
        max_degree,
        generators,
        fixed_dims,
        covariants: kept.iter().map(|&i| candidates[i].monic()).collect(),
        brackets: kept.iter().map(|&i| st.straighten(&sources[i])).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(m: &Matrix) -> Vec<Vec<String>> {
        (0..m.rows())
            .map(|i| m.row(i).iter().map(|c| c.to_string()).collect())
            .collect()
    }

    #[test]
    fn quartic_action_table() {
        let g = enumerate_generators(4).unwrap();
        let a = action_matrices(4, &g, Field::Rational).unwrap();
        let s = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        assert_eq!(
            rows(a.tau()),
            vec![
                s(&[-1, 0, 0, 0, 0, 0]),
                s(&[1, 1, 0, 0, 0, 0]),
                s(&[0, 0, 1, 0, 0, 0]),
                s(&[0, 0, 0, 1, 1, 0]),
                s(&[0, 0, 0, 0, -1, 0]),
                s(&[0, 0, 0, 0, 0, 1]),
            ]
        );
        assert_eq!(
            rows(a.sigma()),
            vec![
                s(&[0, -1, 0, 0, 0, 0]),
                s(&[-1, 0, 0, 0, 0, 0]),
                s(&[0, 0, -1, -1, -1, 0]),
                s(&[0, 0, 1, 0, 0, 0]),
                s(&[0, 0, 0, 1, 0, 0]),
                s(&[0, 0, 0, 0, 0, 1]),
            ]
        );
        assert_eq!(a.group().unwrap().len(), 24);
    }

    #[test]
    fn quadratic_pipeline() {
        let r = separating_pipeline(2, 0, 2).unwrap();
        let texts: Vec<String> = r.covariants.iter().map(|c| c.to_string()).collect();
        assert_eq!(texts, ["a2*x^2 + a1*x*z + a0*z^2", "a1^2 + -4*a0*a2"]);
    }

    #[test]
    fn empty_pipeline() {
        assert!(separating_pipeline(4, 3, 0).unwrap().covariants.is_empty());
    }

    #[test]
    fn minimal_drops_products() {
        let s = BinaryFormSpec::with_char(4, 0).unwrap();
        let i = Covariant::parse(&s, "a2^2 - 3*a1*a3 + 12*a0*a4").unwrap();
        assert_eq!(minimal_generators(&[i.pow(2), i.clone()]), vec![1]);
    }
}
