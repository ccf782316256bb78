//! Reference valuations and random generators shared by the integration
//! suites.
#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;

use frobval::exact_arith::{int, QuadraticReal, Rational};
use frobval::function_field::{parse_poly, FieldSpec, Polynomial, PowerSeries};
use frobval::ordered_groups::GroupElement;
use frobval::valuations::{Valuation, DEFAULT_PRECISION_CAP};

pub fn field(p: u64, vars: &[&str]) -> FieldSpec {
    FieldSpec::new(p, Vec::<&str>::new(), vars.iter().copied()).unwrap()
}

pub fn xy(p: u64) -> FieldSpec {
    field(p, &["x", "y"])
}

/// `w(x) = 1`, `w(y) = sqrt(2)`.
pub fn irrational(p: u64) -> Valuation {
    Valuation::monomial_arch(
        xy(p),
        vec![
            QuadraticReal::rational(int(1), 2).unwrap(),
            QuadraticReal::sqrt(2).unwrap(),
        ],
    )
    .unwrap()
}

/// Lex order on `x1 > x2 > ... > xn`.
pub fn lex(n: usize, p: u64) -> Valuation {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    Valuation::lex_identity(field(p, &refs)).unwrap()
}

/// `x -> t`, `y -> t + t^2 + t^6 + t^24 + ...`.
pub fn schmidt(p: u64) -> Valuation {
    Valuation::series(
        xy(p),
        vec![
            Arc::new(PowerSeries::from_coefficients("t", p, vec![0, 1])),
            Arc::new(PowerSeries::factorial_gap(p)),
        ],
        DEFAULT_PRECISION_CAP,
    )
    .unwrap()
}

/// `x -> t`, `y -> t^2 + t^3`: algebraic, used only as a control.
pub fn control(p: u64) -> Valuation {
    Valuation::series(
        xy(p),
        vec![
            Arc::new(PowerSeries::from_coefficients("t", p, vec![0, 1])),
            Arc::new(PowerSeries::from_coefficients(
                "t^2 + t^3",
                p,
                vec![0, 0, 1, 1],
            )),
        ],
        1 << 10,
    )
    .unwrap()
}

pub fn divisorial(p: u64, g: &str) -> Valuation {
    let s = xy(p);
    let g = parse_poly(g, &s).unwrap();
    Valuation::divisorial(s, g).unwrap()
}

/// Every reference valuation at characteristic `p`.
pub fn all_fixtures(p: u64) -> Vec<(String, Valuation)> {
    let mut out = vec![
        (format!("monomial(1, sqrt 2) p={p}"), irrational(p)),
        (format!("lex n=2 p={p}"), lex(2, p)),
        (format!("lex n=3 p={p}"), lex(3, p)),
        (format!("divisorial(x) p={p}"), divisorial(p, "x")),
        (format!("divisorial(x + y) p={p}"), divisorial(p, "x + y")),
    ];
    if p <= 3 {
        out.push((format!("series p={p}"), schmidt(p)));
    }
    out
}

pub fn qr(a: i64, b: i64, d: u64) -> QuadraticReal {
    QuadraticReal::new(int(a), int(b), d).unwrap()
}

/// Random positive weights `a + b sqrt(d)` with small integer parts.
pub fn random_arch_weights(rng: &mut impl Rng, n: usize) -> Vec<QuadraticReal> {
    let d = [2u64, 3, 5, 7][rng.gen_range(0..4)];
    (0..n)
        .map(|_| loop {
            let w = QuadraticReal::new(
                Rational::new(
                    BigInt::from(rng.gen_range(-4i64..=6)),
                    BigInt::from(rng.gen_range(1i64..=3)),
                ),
                int(rng.gen_range(-2i64..=3)),
                d,
            )
            .unwrap();
            if w.is_positive() {
                break w;
            }
        })
        .collect()
}

/// Random lex-positive weight vectors in `Z^r`.
pub fn random_lex_weights(rng: &mut impl Rng, n: usize, r: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|_| loop {
            let w: Vec<BigInt> = (0..r)
                .map(|_| BigInt::from(rng.gen_range(-3i64..=3)))
                .collect();
            if w.iter()
                .find(|c| !c.is_zero())
                .is_some_and(|c| c > &BigInt::zero())
            {
                break w;
            }
        })
        .collect()
}

/// Random monomial valuation with archimedean or lex weights.
pub fn random_monomial(rng: &mut impl Rng, p: u64, arch: bool) -> Valuation {
    let n = rng.gen_range(1..=3);
    let names = ["x", "y", "z"];
    let spec = if rng.gen_bool(0.3) {
        FieldSpec::new(p, ["u"], names[..n].iter().copied()).unwrap()
    } else {
        field(p, &names[..n])
    };
    if arch {
        Valuation::monomial_arch(spec, random_arch_weights(rng, n)).unwrap()
    } else {
        let r = rng.gen_range(1..=3);
        Valuation::monomial_lex(spec, random_lex_weights(rng, n, r)).unwrap()
    }
}

/// Dense monomial valuation: two rationally independent real weights.
pub fn random_dense(rng: &mut impl Rng, p: u64) -> Valuation {
    loop {
        let w = random_arch_weights(rng, 2);
        let v = Valuation::monomial_arch(xy(p), w).unwrap();
        if v.value_group().rational_rank() == 2 {
            return v;
        }
    }
}

/// A positive group element `g` with `p*g <= target`, found by running
/// Euclid's algorithm on the absolute values of the basis. Independent of
/// the least-positive machinery; returns `None` if Euclid terminates, which
/// happens exactly when the group is cyclic.
pub fn small_positive_witness(
    v: &Valuation,
    target: &GroupElement,
    max_steps: usize,
) -> Option<GroupElement> {
    let p = BigInt::from(v.spec().p());
    let abs = |g: &GroupElement| if g.sign() < 0 { g.neg() } else { g.clone() };
    let mut pool: Vec<GroupElement> = v.value_group().basis().iter().map(abs).collect();
    for _ in 0..max_steps {
        pool.retain(|g| !g.is_zero());
        pool.sort_by(|a, b| a.compare(b).unwrap());
        let small = pool.first()?.clone();
        if small.scale(&p) <= *target {
            return Some(small);
        }
        if pool.len() < 2 {
            return None;
        }
        // big mod small, with the quotient estimated in floating point and
        // corrected exactly.
        let big = pool.pop().unwrap();
        let approx = |g: &GroupElement| match g {
            GroupElement::Arch(q) => q.approx_f64(),
            GroupElement::Lex(_) => unreachable!("lex groups always have a least positive element"),
        };
        let mut q = BigInt::from((approx(&big) / approx(&small)).floor() as i64);
        let rem = |q: &BigInt| big.checked_sub(&small.scale(q)).unwrap();
        while rem(&q).sign() < 0 {
            q -= 1;
        }
        while rem(&(&q + 1)).sign() >= 0 {
            q += 1;
        }
        pool.push(rem(&q));
    }
    None
}

/// `f(t, s(t))` computed by substituting polynomials in one variable.
pub fn substitute_univariate(f: &Polynomial, images: &[Polynomial]) -> Polynomial {
    let p = f.p();
    let mut total = Polynomial::zero(p, 1);
    for (m, c) in f.terms() {
        let mut term = Polynomial::constant(p, 1, c);
        for (img, &e) in images.iter().zip(m) {
            term = &term * &img.pow(e);
        }
        total = &total + &term;
    }
    total
}

/// Least exponent of a nonzero univariate polynomial.
pub fn lowest_degree(f: &Polynomial) -> Option<u32> {
    f.terms().map(|(m, _)| m[0]).min()
}

const FUZZ_TOKENS: &[&str] = &[
    "field",
    "valuation",
    "eval",
    "classify",
    "inQ",
    "pure-along",
    "report",
    "p",
    "=",
    "2",
    "3",
    "5",
    "7",
    "0",
    "1000",
    "ground",
    "vars",
    "(",
    ")",
    "{",
    "}",
    ":",
    ",",
    "->",
    "x",
    "y",
    "u",
    "t",
    "v1",
    "v2",
    "monomial",
    "lex",
    "divisorial",
    "series",
    "factorial_gap",
    "sqrt",
    "+",
    "-",
    "*",
    "/",
    "^",
    "#",
    "\n",
    "$",
    "\u{e9}",
    "  ",
];

/// Tokens that cannot begin a statement.
const BAD_STARTS: &[&str] = &[
    "(", ")", "=", "{", "}", ":", ",", "->", "5", "+", "*", "^", "$", "x", "\u{e9}",
];

/// A random token stream. With `invalid_start` the first token cannot
/// begin a statement, so the script is guaranteed not to parse.
pub fn fuzz_script(rng: &mut impl Rng, invalid_start: bool) -> String {
    let len = rng.gen_range(1..40);
    let mut out = String::new();
    if invalid_start {
        out.push_str(BAD_STARTS[rng.gen_range(0..BAD_STARTS.len())]);
    } else if rng.gen_bool(0.7) {
        out.push_str("field p=3 vars(x,y)\nvaluation v1 = lex { x, y }\n");
    }
    for _ in 0..len {
        out.push(' ');
        out.push_str(FUZZ_TOKENS[rng.gen_range(0..FUZZ_TOKENS.len())]);
    }
    out
}
