//! Named covariants used by the tests, the acceptance run and the CLI demos.
//!
//! Texts are given in the parser's input syntax, so products of other
//! fixtures are spelled out with parentheses. The JSON copies under
//! `fixtures/` are generated from this table by the golden test.

use crate::covariant::{BinaryFormSpec, Covariant, CovariantError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fixture {
    pub name: &'static str,
    pub n: u32,
    pub p: u64,
    pub text: &'static str,
}

impl Fixture {
    pub fn spec(&self) -> BinaryFormSpec {
        BinaryFormSpec::with_char(self.n, self.p).expect("fixture field is valid")
    }

    /// Parses and grades the text. The SL2 check is left to callers.
    pub fn covariant(&self) -> Result<Covariant, CovariantError> {
        Covariant::parse(&self.spec(), self.text)
    }
}

const fn fx(name: &'static str, n: u32, p: u64, text: &'static str) -> Fixture {
    Fixture { name, n, p, text }
}

macro_rules! c43 {
    () => {
        "((a0*a4^2 + 2*a1*a3*a4 + 2*a2^2*a4 + a2*a3^2)*x^4 + (a0*a3*a4 + a1*a2*a4 + 2*a1*a3^2)*x^3*z \
         + (a0*a1*a4 + a0*a2*a3 + 2*a1^2*a3)*x*z^3 + (a0^2*a4 + 2*a0*a1*a3 + 2*a0*a2^2 + a1^2*a2)*z^4)"
    };
}
macro_rules! f4 {
    () => {
        "(a0*z^4 + a1*x*z^3 + a2*x^2*z^2 + a3*x^3*z + a4*x^4)"
    };
}

/// The classical quartic covariants in characteristic 0.
pub const CHAR0_QUARTIC: [Fixture; 5] = [
    fx("c02_char0", 4, 0, "-3*a1*a3 + a2^2 + 12*a4*a0"),
    fx(
        "c03_char0",
        4,
        0,
        "-27/2*a1^2*a4 + 9/2*a1*a2*a3 - a2^3 + 36*a2*a4*a0 - 27/2*a3^2*a0",
    ),
    fx("c41_char0", 4, 0, f4!()),
    fx(
        "c42_char0",
        4,
        0,
        "(a1^2 - 8/3*a2*a0)*z^4 + (4/3*a1*a2 - 8*a3*a0)*x*z^3 + (4/3*a2^2 - 2*a1*a3 - 16*a4*a0)*x^2*z^2 \
         + (4/3*a2*a3 - 8*a1*a4)*x^3*z + (a3^2 - 8/3*a2*a4)*x^4",
    ),
    // the printed z^6 coefficient has 8*a0*a3, which is not homogeneous
    fx(
        "c63_char0",
        4,
        0,
        "(a1^3 - 4*a1*a0*a2 + 8*a0^2*a3)*z^6 + (2*a1^2*a2 + 4*a0*a1*a3 - 8*a0*a2^2 + 32*a0^2*a4)*x*z^5 \
         + (5*a1^2*a3 + 40*a0*a1*a4 - 20*a0*a2*a3)*x^2*z^4 + (20*a1^2*a4 - 20*a0*a3^2)*x^3*z^3 \
         + (20*a1*a2*a4 - 5*a1*a3^2 - 40*a0*a3*a4)*x^4*z^2 + (8*a2^2*a4 - 4*a1*a3*a4 - 2*a2*a3^2 - 32*a0*a4^2)*x^5*z \
         + (4*a2*a3*a4 - 8*a1*a4^2 - a3^3)*x^6",
    ),
];

/// The separating set for the quartic in characteristic 3.
pub const CHAR3_QUARTIC: [Fixture; 7] = [
    fx("c01_char3", 4, 3, "a2"),
    fx(
        "c06_char3",
        4,
        3,
        "a0^3*a4^3 + a0^2*a2^2*a4^2 + a0*a1*a2^2*a3*a4 + a0*a2^4*a4 + 2*a0*a2^3*a3^2 + 2*a1^3*a3^3 \
         + 2*a1^2*a2^3*a4 + a1^2*a2^2*a3^2",
    ),
    fx("c41_char3", 4, 3, f4!()),
    fx("c44_char3", 4, 3, concat!("a2*", c43!())),
    // printed with z set to 1
    fx(
        "c63_char3",
        4,
        3,
        "(2*a0^2*a3 + 2*a0*a1*a2 + a1^3)*z^6 + (2*a0^2*a4 + a0*a1*a3 + a0*a2^2 + 2*a1^2*a2)*x*z^5 \
         + (a0*a1*a4 + a0*a2*a3 + 2*a1^2*a3)*x^2*z^4 + (a0*a3^2 + 2*a1^2*a4)*x^3*z^3 \
         + (2*a0*a3*a4 + 2*a1*a2*a4 + a1*a3^2)*x^4*z^2 + (a0*a4^2 + 2*a1*a3*a4 + 2*a2^2*a4 + a2*a3^2)*x^5*z \
         + (a1*a4^2 + a2*a3*a4 + 2*a3^3)*x^6",
    ),
    fx("c84_char3", 4, 3, concat!(f4!(), "*(", c43!(), " - a2^2*", f4!(), ")")),
    fx("c86_char3", 4, 3, concat!("(", c43!(), " - a2^2*", f4!(), ")*", c43!())),
];

/// Degree 3, order 4 in characteristic 3; missing from the separating set's algebra.
pub const C43_CHAR3: Fixture = fx("c43_char3", 4, 3, c43!());

/// Satisfies Hilbert's three conditions for n = 16, p = 3 but is not a covariant.
pub const HILBERT_COUNTEREXAMPLE: Fixture = fx("hilbert_counterexample", 16, 3, "a11*x^6");

/// `z^-1 d/dx f` for the sextic over F_3.
pub const SEXTIC_F3_Q: Fixture = fx("sextic_f3_q", 6, 3, "a1*z^4 + 2*a2*x*z^3 + a4*x^3*z + 2*a5*x^4");

/// `z^-2 d^2/dx^2 f` for the sextic over F_5.
pub const SEXTIC_F5_C1: Fixture = fx("sextic_f5_c1", 6, 5, "2*a2*z^2 + a3*x*z + 2*a4*x^2");

/// The printed value of `z^-3 d^3/dx^3 f^2` for the sextic over F_5.
pub const SEXTIC_F5_TARGET: Fixture = fx(
    "sextic_f5_target",
    6,
    5,
    "(a3*a6 + a4*a5)*x^6 + (4*a2*a6 + 4*a3*a5 + 2*a4^2)*x^5*z + (a0*a4 + a1*a3 + 3*a2^2)*x*z^5 \
     + (4*a0*a3 + 4*a1*a2)*z^6",
);

pub const SEXTIC_F5_FORM: Fixture = fx(
    "sextic_f5_form",
    6,
    5,
    "a0*z^6 + a1*x*z^5 + a2*x^2*z^4 + a3*x^3*z^3 + a4*x^4*z^2 + a5*x^5*z + a6*x^6",
);

pub const OCTAVIC_F5_A4: Fixture = fx("octavic_f5_a4", 8, 5, "a4");

/// Every fixture, in a fixed order.
pub fn all() -> Vec<Fixture> {
    let mut out = CHAR0_QUARTIC.to_vec();
    out.extend(CHAR3_QUARTIC);
    out.extend([
        C43_CHAR3,
        HILBERT_COUNTEREXAMPLE,
        SEXTIC_F3_Q,
        SEXTIC_F5_C1,
        SEXTIC_F5_TARGET,
        SEXTIC_F5_FORM,
        OCTAVIC_F5_A4,
    ]);
    out
}

pub fn by_name(name: &str) -> Option<Fixture> {
    all().into_iter().find(|f| f.name == name)
}
