//! Property suites shared by `properties` and `acceptance`. Each runs a
//! deterministic proptest runner so both targets see the same cases.

#![allow(dead_code)]

use std::sync::Arc;

use bincov::brackets::{enumerate_generators, straighten, BracketMonomial, BracketPoly, End, RootRing};
use bincov::covariant::{is_covariant, BinaryFormSpec, Covariant};
use bincov::fixtures;
use bincov::linalg::Matrix;
use bincov::poly::{Monomial, Poly, Ring};
use bincov::scalar::Field;
use bincov::symring::{action_matrices, fixed_space, induced_matrix, slice_monomials};
use bincov::transfer::{isobaric_monomials, Transfer};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config { cases, failure_persistence: None, ..Config::default() },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn run<S: Strategy>(cases: u32, s: S, f: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    runner(cases).run(&s, f).map_err(|e| e.to_string())
}

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::Prime(2)), Just(Field::Prime(3)), Just(Field::Prime(7))]
}

pub fn ring(field: Field) -> Arc<Ring> {
    Ring::new(field, ["u", "v", "w"])
}

/// Small random polynomials in three variables.
pub fn poly_in(r: Arc<Ring>) -> impl Strategy<Value = Poly> {
    prop::collection::vec((-6i64..7, 0u32..3, 0u32..3, 0u32..3), 0..5).prop_map(move |terms| {
        let f = r.field();
        Poly::from_terms(
            &r,
            terms
                .into_iter()
                .map(|(c, a, b, d)| (Monomial::from_exponents(vec![a, b, d]), f.from_i64(c))),
        )
    })
}

pub fn three_polys() -> impl Strategy<Value = (Poly, Poly, Poly)> {
    field_strategy().prop_flat_map(|f| {
        let r = ring(f);
        (poly_in(r.clone()), poly_in(r.clone()), poly_in(r))
    })
}

pub fn ring_axioms() -> Result<(), String> {
    run(64, three_polys(), |(a, b, c)| {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a.clone()).is_zero());
        prop_assert_eq!(&a * &Poly::one(a.ring()), a.clone());
        Ok(())
    })
}

/// `(a + b)^p = a^p + b^p` over `F_p`.
pub fn frobenius() -> Result<(), String> {
    let s = prop_oneof![Just(2u64), Just(3), Just(5)].prop_flat_map(|p| {
        let r = ring(Field::Prime(p));
        (Just(p), poly_in(r.clone()), poly_in(r))
    });
    run(48, s, |(p, a, b)| {
        prop_assert_eq!((&a + &b).pow(p as u32), &a.pow(p as u32) + &b.pow(p as u32));
        Ok(())
    })
}

pub fn bracket_monomial(n: u32) -> impl Strategy<Value = BracketMonomial> {
    let end = move || prop_oneof![(1..=n).prop_map(End::Pt), Just(End::U)];
    prop::collection::vec((end(), end(), 1u32..3), 1..4)
        .prop_filter_map("degenerate", move |pairs| BracketMonomial::from_pairs(n, &pairs).ok())
}

/// Idempotent, crossing-free output, and equal root expansions.
pub fn straighten_idempotence() -> Result<(), String> {
    run(48, (2u32..=5).prop_flat_map(bracket_monomial), |m| {
        let b = BracketPoly::from_monomial(&m, Field::Rational);
        let s = straighten(&b);
        prop_assert_eq!(straighten(&s), s.clone());
        for (mono, _) in s.monomials() {
            prop_assert!(mono.is_crossing_free());
        }
        let rr = RootRing::new(m.n(), Field::Rational);
        prop_assert_eq!(s.expand(&rr), b.expand(&rr));
        Ok(())
    })
}

fn isobaric_part(n: u32) -> impl Strategy<Value = (u32, u32, Vec<(usize, i64)>)> {
    (1u32..=2, 0u32..=2).prop_flat_map(move |(d, i)| {
        let count = isobaric_monomials(n, d, n * d / 2).len();
        (Just(d), Just(i), prop::collection::vec((0..count, -3i64..4), 1..4))
    })
}

/// `to_coefficients` inverts `psi`, and `psi` is multiplicative, for `n <= 4`.
pub fn psi_round_trip() -> Result<(), String> {
    let s = (2u32..=4).prop_flat_map(|n| (Just(n), isobaric_part(n)));
    run(32, s, |(n, (d, i, picks))| {
        let spec = BinaryFormSpec::with_char(n, 0).unwrap();
        let basis = isobaric_monomials(n, d, n * d / 2);
        let r = i + 1;
        let mut c = Poly::zero(spec.ring());
        for (k, coef) in picks {
            let mut e = vec![0; spec.ring().nvars()];
            e[..basis[k].len()].copy_from_slice(&basis[k]);
            e[spec.x()] = i;
            e[spec.z()] = r - i;
            c.add_term(Monomial::from_exponents(e), &spec.field().from_i64(coef));
        }
        let mut tr = Transfer::new(&spec);
        let image = tr.psi(&c);
        prop_assert_eq!(tr.to_coefficients(&image, d, r).unwrap(), c.clone());
        let f = spec.form();
        prop_assert_eq!(tr.psi(&(&c * &f)), &tr.psi(&c) * &tr.psi(&f));
        Ok(())
    })
}

/// Products of fixture covariants, up to degree 7, pass the exact check.
pub fn covariant_products() -> Result<(), String> {
    for group in [fixtures::CHAR0_QUARTIC.to_vec(), fixtures::CHAR3_QUARTIC.to_vec()] {
        let covs: Vec<Covariant> = group.iter().map(|f| f.covariant().unwrap()).collect();
        for (i, a) in covs.iter().enumerate() {
            for b in &covs[i..] {
                if a.degree() + b.degree() > 7 {
                    continue;
                }
                let c = a.mul(b).map_err(|e| e.to_string())?;
                if !is_covariant(c.spec(), c.poly()).map_err(|e| e.to_string())?.covariant {
                    return Err(format!("product of {a} and {b} is not a covariant"));
                }
            }
        }
    }
    Ok(())
}

fn add_into(acc: &mut Matrix, m: &Matrix) {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let v = acc.get(i, j) + m.get(i, j);
            acc.set(i, j, v);
        }
    }
}

/// The rank of the group sum equals the fixed-space dimension when `|S_4|`
/// is invertible: `p = 0` and `p = 5, 7`.
pub fn reynolds_dimensions() -> Result<(), String> {
    let gens = enumerate_generators(4).map_err(|e| e.to_string())?;
    for p in [0u64, 5, 7] {
        let field = Field::new(p).unwrap();
        let action = action_matrices(4, &gens, field).map_err(|e| e.to_string())?;
        let group = action.group().map_err(|e| e.to_string())?;
        if group.len() != 24 {
            return Err(format!("group has {} elements", group.len()));
        }
        for degree in 1..=3 {
            for slice in fixed_space(&action, degree) {
                let mons = slice_monomials(&action, degree, slice.order);
                let mut sum = Matrix::zeros(field, mons.len(), mons.len());
                for r in group.values() {
                    add_into(&mut sum, &induced_matrix(&action, r, &mons));
                }
                if sum.rank() != slice.basis.len() {
                    return Err(format!(
                        "p={p} degree={degree} order={}: Reynolds rank {} vs fixed dim {}",
                        slice.order,
                        sum.rank(),
                        slice.basis.len()
                    ));
                }
            }
        }
    }
    Ok(())
}

type Suite = fn() -> Result<(), String>;

pub const SUITES: [(&str, Suite); 6] = [
    ("ring axioms", ring_axioms),
    ("Frobenius", frobenius),
    ("straighten idempotence", straighten_idempotence),
    ("psi round trip", psi_round_trip),
    ("covariant products", covariant_products),
    ("Reynolds dimensions", reynolds_dimensions),
];
