//! Graded membership in algebras generated by covariants, and the closure of
//! such algebras under the order-lowering operator.

use serde::{Deserialize, Serialize};

use crate::covariant::{covariant_basis, lower_order, BinaryFormSpec, Covariant, CovariantError, CovariantJson};
use crate::linalg::{dense_rank, PolySpan};
use crate::poly::{Poly, PolyJson};
use crate::scalar::Scalar;

/// Exponent vectors `e` with `sum e_i * grades[i] = target`, generators of
/// grade `(0, 0)` ignored. More factors come first, then lexicographic.
pub fn grade_monomials(grades: &[(u32, u32)], target: (u32, u32)) -> Vec<Vec<u32>> {
    fn go(grades: &[(u32, u32)], i: usize, left: (u32, u32), cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == grades.len() {
            if left == (0, 0) {
                out.push(cur.clone());
            }
            return;
        }
        let (d, m) = grades[i];
        let max = if (d, m) == (0, 0) {
            0
        } else {
            let by_d = left.0.checked_div(d).unwrap_or(u32::MAX);
            let by_m = left.1.checked_div(m).unwrap_or(u32::MAX);
            by_d.min(by_m)
        };
        for e in (0..=max).rev() {
            cur.push(e);
            go(grades, i + 1, (left.0 - e * d, left.1 - e * m), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(grades, 0, target, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| {
        let fa: u32 = a.iter().sum();
        let fb: u32 = b.iter().sum();
        fb.cmp(&fa).then_with(|| b.cmp(a))
    });
    out
}

/// `prod gens[i]^e[i]`, starting from the constant 1 of `spec`.
pub fn evaluate_monomial(spec: &BinaryFormSpec, gens: &[Covariant], e: &[u32]) -> Poly {
    let mut acc = Poly::one(spec.ring());
    for (g, &k) in gens.iter().zip(e) {
        if k > 0 {
            acc = &acc * &g.poly().pow(k);
        }
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateTerm {
    pub coeff: Scalar,
    /// `(generator index, exponent)` pairs with positive exponent.
    pub powers: Vec<(usize, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    Yes { expression: Vec<CertificateTerm> },
    No { slice_dim: usize, rank: usize },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Yes { .. })
    }

    /// Expands a certificate back into a polynomial.
    pub fn expand(&self, spec: &BinaryFormSpec, gens: &[Covariant]) -> Option<Poly> {
        let Membership::Yes { expression } = self else {
            return None;
        };
        let mut out = Poly::zero(spec.ring());
        for t in expression {
            let mut e = vec![0; gens.len()];
            for &(i, k) in &t.powers {
                e[i] = k;
            }
            out.add_scaled(&evaluate_monomial(spec, gens, &e), &t.coeff);
        }
        Some(out)
    }

    pub fn to_json(&self, target: &Covariant) -> MembershipJson {
        match self {
            Membership::Yes { expression } => MembershipJson::Yes {
                target: target.to_json(),
                expression: expression
                    .iter()
                    .map(|t| TermJson {
                        coeff: t.coeff.to_string(),
                        powers: t
                            .powers
                            .iter()
                            .map(|&(gen, exponent)| PowerJson { gen, exponent })
                            .collect(),
                    })
                    .collect(),
            },
            Membership::No { slice_dim, rank } => MembershipJson::No {
                no: true,
                slice_dim: *slice_dim,
                rank: *rank,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerJson {
    pub gen: usize,
    pub exponent: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub powers: Vec<PowerJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MembershipJson {
    Yes {
        target: CovariantJson,
        expression: Vec<TermJson>,
    },
    No {
        no: bool,
        slice_dim: usize,
        rank: usize,
    },
}

/// Decides whether `target` is a polynomial in `gens`, grade by grade.
///
/// A negative answer is confirmed by a second rank computation with an
/// independent elimination.
pub fn in_algebra(target: &Covariant, gens: &[Covariant]) -> Result<Membership, CovariantError> {
    let spec = target.spec();
    for g in gens {
        if g.spec() != spec {
            return Err(CovariantError::SpecMismatch(format!(
                "generator for n={} over {}",
                g.spec().n(),
                g.spec().field()
            )));
        }
    }
    let usable: Vec<usize> = (0..gens.len()).filter(|&i| !gens[i].is_zero()).collect();
    let grades: Vec<(u32, u32)> = usable.iter().map(|&i| (gens[i].degree(), gens[i].order())).collect();
    let sub: Vec<Covariant> = usable.iter().map(|&i| gens[i].clone()).collect();
    let monos = if target.is_zero() {
        Vec::new()
    } else {
        grade_monomials(&grades, (target.degree(), target.order()))
    };
    let products: Vec<Poly> = monos.iter().map(|e| evaluate_monomial(spec, &sub, e)).collect();
    let mut span = PolySpan::new(spec.ring());
    for p in &products {
        span.insert(p);
    }
    let red = span.reduce(target.poly());
    if red.remainder.is_zero() {
        let expression = monos
            .iter()
            .zip(&red.combo)
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| CertificateTerm {
                coeff: c.clone(),
                powers: e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(j, &k)| (usable[j], k))
                    .collect(),
            })
            .collect();
        return Ok(Membership::Yes { expression });
    }
    let rank = span.rank();
    let mut with_target = products.clone();
    with_target.push(target.poly().clone());
    let (r0, r1) = (dense_rank(&products), dense_rank(&with_target));
    assert!(
        r0 == rank && r1 == rank + 1,
        "rank disagreement: echelon {rank}, dense {r0} / {r1}"
    );
    Ok(Membership::No {
        slice_dim: products.len(),
        rank,
    })
}

/// `x = 0, z = 1` specialization.
pub fn x_free_part(spec: &BinaryFormSpec, p: &Poly) -> Poly {
    let f = spec.field();
    p.evaluate_var(spec.x(), &f.zero()).evaluate_var(spec.z(), &f.one())
}

/// The `x`-free parts of all generator products of `a`-degree `degree`
/// (any order), and whether the target's `x`-free part is in their span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XFreeReport {
    pub products: Vec<(Vec<u32>, Poly)>,
    pub target: Poly,
    pub in_span: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct XFreeReportJson {
    pub products: Vec<(Vec<u32>, PolyJson)>,
    pub target: PolyJson,
    pub in_span: bool,
}

impl XFreeReport {
    pub fn to_json(&self) -> XFreeReportJson {
        XFreeReportJson {
            products: self.products.iter().map(|(e, p)| (e.clone(), p.to_json())).collect(),
            target: self.target.to_json(),
            in_span: self.in_span,
        }
    }
}

pub fn x_free_obstruction(target: &Covariant, gens: &[Covariant]) -> XFreeReport {
    let spec = target.spec();
    let d = target.degree();
    let mut products = Vec::new();
    let orders: u32 = gens.iter().map(|g| g.order()).sum::<u32>() * d;
    for m in (0..=orders).rev() {
        let grades: Vec<(u32, u32)> = gens.iter().map(|g| (g.degree(), g.order())).collect();
        for e in grade_monomials(&grades, (d, m)) {
            let p = x_free_part(spec, &evaluate_monomial(spec, gens, &e));
            products.push((e, p));
        }
    }
    let t = x_free_part(spec, target.poly());
    let mut span = PolySpan::new(spec.ring());
    for (_, p) in &products {
        span.insert(p);
    }
    XFreeReport {
        in_span: span.contains(&t),
        products,
        target: t,
    }
}

/// Valid `l` for the order-lowering operator on a covariant of order `m`.
pub fn valid_ls(m: u32, p: u64, l_max: u32) -> Vec<u32> {
    (1..=l_max.min(m / 2))
        .filter(|&l| (l as u64) < p && ((m - l + 1) as u64).is_multiple_of(p))
        .collect()
}

/// Applies the operator to every product of `gens` with `a`-degree at most
/// `max_degree` and every valid `l <= l_max`; returns the outputs (monic)
/// that are not already in the algebra, each new one joining the algebra
/// before the next test.
pub fn operator_closure_step(
    gens: &[Covariant],
    l_max: u32,
    max_degree: u32,
) -> Result<Vec<Covariant>, CovariantError> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let spec = first.spec().clone();
    let p = spec.characteristic();
    if p == 0 {
        return Err(CovariantError::BadArguments("characteristic must be positive".into()));
    }
    let grades: Vec<(u32, u32)> = gens.iter().map(|g| (g.degree(), g.order())).collect();
    let max_order = grades.iter().map(|g| g.1).max().unwrap_or(0) * max_degree;
    let mut known: Vec<Covariant> = gens.to_vec();
    let mut found = Vec::new();
    for d in 1..=max_degree {
        for m in 0..=max_order {
            let ls = valid_ls(m, p, l_max);
            if ls.is_empty() {
                continue;
            }
            for e in grade_monomials(&grades, (d, m)) {
                let poly = evaluate_monomial(&spec, gens, &e);
                let q = Covariant::with_grade(&spec, poly, d, m, (spec.n() * d - m) as i64 / 2)?;
                for &l in &ls {
                    let c = lower_order(&q, l)?;
                    if c.is_zero() || in_algebra(&c, &known)?.is_member() {
                        continue;
                    }
                    let c = c.monic();
                    known.push(c.clone());
                    found.push(c);
                }
            }
        }
    }
    Ok(found)
}

/// `(m, l)` with `m <= m_max`, `l >= 1`, `m - 2l = order`, `l <= m/2`, `l < p`
/// and `p | (m - l + 1)`.
pub fn solve_order_lowering(order: u32, p: u64, m_max: u32) -> Vec<(u32, u32)> {
    (order..=m_max)
        .flat_map(|m| (1..=m / 2).map(move |l| (m, l)))
        .filter(|&(m, l)| m - 2 * l == order && (l as u64) < p && ((m - l + 1) as u64).is_multiple_of(p))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnreachabilityReport {
    pub solutions: Vec<(u32, u32)>,
    /// Products in the source slice, as exponent vectors over the generators.
    pub slice: Vec<Vec<u32>>,
    pub images: Vec<Poly>,
    pub image_rank: usize,
    /// Whether the target lies in the span of the images.
    pub target_in_images: bool,
    /// Same, after adding the generator products of the target's own grade.
    pub target_in_images_and_algebra: bool,
    /// Per slice element: whether its image is a scalar multiple of the target.
    pub individual_hits: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnreachabilityJson {
    pub solutions: Vec<(u32, u32)>,
    pub slice: Vec<Vec<u32>>,
    pub images: Vec<PolyJson>,
    pub image_rank: usize,
    pub target_in_images: bool,
    pub target_in_images_and_algebra: bool,
    pub individual_hits: Vec<bool>,
}

impl UnreachabilityReport {
    pub fn to_json(&self) -> UnreachabilityJson {
        UnreachabilityJson {
            solutions: self.solutions.clone(),
            slice: self.slice.clone(),
            images: self.images.iter().map(Poly::to_json).collect(),
            image_rank: self.image_rank,
            target_in_images: self.target_in_images,
            target_in_images_and_algebra: self.target_in_images_and_algebra,
            individual_hits: self.individual_hits.clone(),
        }
    }
}

/// Whether `target` (an invariant of degree `d`) is an operator image of the
/// degree-`d` slice of the algebra generated by `gens`, over every
/// admissible `(m, l)` with `m <= m_max`.
pub fn unreachability_check(
    target: &Covariant,
    gens: &[Covariant],
    m_max: u32,
) -> Result<UnreachabilityReport, CovariantError> {
    let spec = target.spec().clone();
    let p = spec.characteristic();
    let d = target.degree();
    let solutions = solve_order_lowering(target.order(), p, m_max);
    let grades: Vec<(u32, u32)> = gens.iter().map(|g| (g.degree(), g.order())).collect();
    let mut slice = Vec::new();
    let mut images = Vec::new();
    for &(m, l) in &solutions {
        for e in grade_monomials(&grades, (d, m)) {
            let poly = evaluate_monomial(&spec, gens, &e);
            let q = Covariant::with_grade(&spec, poly, d, m, (spec.n() * d - m) as i64 / 2)?;
            images.push(lower_order(&q, l)?.poly().clone());
            slice.push(e);
        }
    }
    let mut span = PolySpan::new(spec.ring());
    for im in &images {
        span.insert(im);
    }
    let target_in_images = span.contains(target.poly());
    let image_rank = span.rank();
    for e in grade_monomials(&grades, (d, target.order())) {
        span.insert(&evaluate_monomial(&spec, gens, &e));
    }
    let target_in_images_and_algebra = span.contains(target.poly());
    let individual_hits = images
        .iter()
        .map(|im| !im.is_zero() && im.monic() == target.poly().monic())
        .collect();
    Ok(UnreachabilityReport {
        solutions,
        slice,
        images,
        image_rank,
        target_in_images,
        target_in_images_and_algebra,
        individual_hits,
    })
}

/// Operator images of every covariant of the source grades, not only of
/// products of known generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullSliceReport {
    pub solutions: Vec<(u32, u32)>,
    /// Dimension of the full covariant space per solution, in order.
    pub slice_dims: Vec<usize>,
    /// Rank of the generator products inside the same spaces.
    pub product_ranks: Vec<usize>,
    pub image_rank: usize,
    pub target_in_images: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FullSliceJson {
    pub solutions: Vec<(u32, u32)>,
    pub slice_dims: Vec<usize>,
    pub product_ranks: Vec<usize>,
    pub image_rank: usize,
    pub target_in_images: bool,
}

impl FullSliceReport {
    pub fn to_json(&self) -> FullSliceJson {
        FullSliceJson {
            solutions: self.solutions.clone(),
            slice_dims: self.slice_dims.clone(),
            product_ranks: self.product_ranks.clone(),
            image_rank: self.image_rank,
            target_in_images: self.target_in_images,
        }
    }
}

/// Like [`unreachability_check`], with the source slice replaced by a basis
/// of all covariants of degree `d` and order `m`. `gens` is only used to
/// report how much of that space their products cover.
pub fn full_slice_unreachability(
    target: &Covariant,
    gens: &[Covariant],
    m_max: u32,
) -> Result<FullSliceReport, CovariantError> {
    let spec = target.spec().clone();
    let d = target.degree();
    let solutions = solve_order_lowering(target.order(), spec.characteristic(), m_max);
    let grades: Vec<(u32, u32)> = gens.iter().map(|g| (g.degree(), g.order())).collect();
    let mut span = PolySpan::new(spec.ring());
    let mut slice_dims = Vec::new();
    let mut product_ranks = Vec::new();
    for &(m, l) in &solutions {
        let basis = covariant_basis(&spec, d, m);
        slice_dims.push(basis.len());
        let products: Vec<Poly> = grade_monomials(&grades, (d, m))
            .iter()
            .map(|e| evaluate_monomial(&spec, gens, e))
            .collect();
        product_ranks.push(dense_rank(&products));
        for b in basis {
            let q = Covariant::with_grade(&spec, b, d, m, (spec.n() * d - m) as i64 / 2)?;
            span.insert(lower_order(&q, l)?.poly());
        }
    }
    Ok(FullSliceReport {
        target_in_images: span.contains(target.poly()),
        image_rank: span.rank(),
        solutions,
        slice_dims,
        product_ranks,
    })
}
