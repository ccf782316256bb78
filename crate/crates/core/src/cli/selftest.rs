//! `frobval selftest`: oracle cross-checks over the reference valuations.

use std::sync::Arc;

use num_bigint::BigInt;
use rand::Rng;
use serde_json::json;

use crate::classifier::{classify, ramification_index};
use crate::exact_arith::{int, QuadraticReal};
use crate::function_field::{parse_poly, FieldSpec, PowerSeries};
use crate::lattice::IntegerMatrix;
use crate::oracle::{
    axiom_audit, axiom_audit_with, coset_count_bruteforce, determinant, mutants, report_violations,
    seeded_rng, series_recheck, smith_normal_form,
};
use crate::valuations::Valuation;

use super::{Format, Options, ScriptOutput, EXIT_DOMAIN, EXIT_OK};

const AUDIT_TRIALS: usize = 200;

struct Check {
    name: String,
    failure: Option<String>,
}

fn reference_valuations(cap: usize) -> Vec<(String, Valuation)> {
    let mut out = Vec::new();
    for p in [2u64, 3, 5] {
        let xy = FieldSpec::new(p, Vec::<&str>::new(), ["x", "y"]).expect("valid field");
        out.push((
            format!("monomial(1, sqrt 2) p={p}"),
            Valuation::monomial_arch(
                xy.clone(),
                vec![
                    QuadraticReal::rational(int(1), 2).expect("radicand 2"),
                    QuadraticReal::sqrt(2).expect("radicand 2"),
                ],
            )
            .expect("positive weights"),
        ));
        out.push((
            format!("lex p={p}"),
            Valuation::lex_identity(xy.clone()).expect("lex"),
        ));
        for g in ["x", "x + y"] {
            let poly = parse_poly(g, &xy).expect("valid polynomial");
            out.push((
                format!("divisorial({g}) p={p}"),
                Valuation::divisorial(xy.clone(), poly).expect("nonconstant center"),
            ));
        }
        if p <= 3 {
            out.push((
                format!("series factorial_gap p={p}"),
                Valuation::series(
                    xy,
                    vec![
                        Arc::new(PowerSeries::from_coefficients("t", p, vec![0, 1])),
                        Arc::new(PowerSeries::factorial_gap(p)),
                    ],
                    cap,
                )
                .expect("x has order one"),
            ));
        }
    }
    out
}

fn run_checks(options: &Options) -> Vec<Check> {
    let mut checks = Vec::new();
    let mut push = |name: String, failure: Option<String>| checks.push(Check { name, failure });

    for (label, v) in reference_valuations(options.precision_cap) {
        let p = v.spec().p();
        let e = ramification_index(&v);
        push(
            format!("{label}: coset enumeration"),
            match coset_count_bruteforce(v.value_group(), p) {
                Ok(n) if n == e => None,
                Ok(n) => Some(format!("enumeration gives {n}, index formula gives {e}")),
                Err(err) => Some(err.to_string()),
            },
        );
        let audit = axiom_audit(&v, options.seed, AUDIT_TRIALS);
        push(format!("{label}: valuation axioms"), audit.counterexample);
        push(
            format!("{label}: report invariants"),
            match classify(&v) {
                Ok(r) => {
                    let bad = report_violations(&v, &r);
                    (!bad.is_empty()).then(|| bad.join("; "))
                }
                Err(err) => Some(err.to_string()),
            },
        );
        if v.kind_name() == "series" {
            for text in ["x", "y - x", "y - x - x^2"] {
                let f = parse_poly(text, v.spec()).expect("valid polynomial");
                let failure = match (v.value_of_poly(&f), series_recheck(&v, &f, 2)) {
                    (Ok(a), Ok(b)) if a == b => None,
                    (Ok(a), Ok(b)) => Some(format!("{a} vs {b}")),
                    (Err(e), _) | (_, Err(e)) => Some(e.to_string()),
                };
                push(format!("{label}: dense recheck of v({text})"), failure);
            }
        }
        match v.kind_name() {
            "monomial" => {
                let caught = !axiom_audit_with(
                    &v,
                    options.seed,
                    AUDIT_TRIALS,
                    &mutants::max_rule(&v),
                    &crate::oracle::group_order,
                )
                .passed();
                push(
                    format!("{label}: max-rule mutant caught"),
                    (!caught).then(|| "mutant passed".into()),
                );
            }
            "lex" => {
                let caught = !axiom_audit_with(
                    &v,
                    options.seed,
                    AUDIT_TRIALS,
                    &mutants::first_coordinate_lex(&v),
                    &mutants::first_coordinate_order,
                )
                .passed();
                push(
                    format!("{label}: broken lex comparator caught"),
                    (!caught).then(|| "mutant passed".into()),
                );
            }
            _ => {}
        }
    }

    let mut rng = seeded_rng(options.seed);
    for i in 0..10 {
        let rows: Vec<Vec<BigInt>> = (0..3)
            .map(|_| {
                (0..3)
                    .map(|_| BigInt::from(rng.gen_range(-9i64..=9)))
                    .collect()
            })
            .collect();
        let m = IntegerMatrix::new(rows, 3);
        let det = determinant(&m);
        let snf = smith_normal_form(&m);
        let product: BigInt = if snf.len() == 3 {
            snf.iter().product()
        } else {
            BigInt::from(0)
        };
        let failure = (product != det.magnitude().clone().into())
            .then(|| format!("SNF {snf:?} vs det {det}"));
        push(format!("smith form matrix {i}"), failure);
    }
    checks
}

/// Runs every cross-check and reports one line (or JSON entry) per check.
pub fn selftest(options: Options) -> ScriptOutput {
    let checks = run_checks(&options);
    let failed = checks.iter().filter(|c| c.failure.is_some()).count();
    let exit_code = if failed == 0 { EXIT_OK } else { EXIT_DOMAIN };
    let stdout = match options.format {
        Format::Json => {
            let doc = json!({
                "schema": super::SCHEMA_VERSION,
                "checks": checks
                    .iter()
                    .map(|c| json!({"name": c.name, "passed": c.failure.is_none(), "detail": c.failure}))
                    .collect::<Vec<_>>(),
                "failed": failed,
            });
            serde_json::to_string_pretty(&doc).expect("JSON value serializes") + "\n"
        }
        Format::Text => {
            let mut out = String::new();
            for c in &checks {
                match &c.failure {
                    None => out.push_str(&format!("ok    {}\n", c.name)),
                    Some(msg) => out.push_str(&format!("FAIL  {}: {msg}\n", c.name)),
                }
            }
            out.push_str(&format!("{} checks, {failed} failed\n", checks.len()));
            out
        }
    };
    ScriptOutput {
        exit_code,
        stdout,
        stderr: String::new(),
    }
}
