//! Acceptance gate: every criterion runs and prints one PASS/FAIL line.
//! Runs without the libtest harness so the lines are always visible.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Signed;
use rand::Rng;
use serde_json::Value;

use common::*;
use frobval::classifier::{
    abhyankar, classify, dim_v_mod_mp, in_mp_e, in_q, least_pure_exponent, ramification_index,
    residue_degree, Citation, ClassificationReport, Verdict,
};
use frobval::cli::{fixtures, run_script, Format, Options};
use frobval::function_field::{parse_poly, parse_ratfun, FieldSpec, Polynomial, RationalFunction};
use frobval::lattice::{hermite_normal_form, IntegerMatrix};
use frobval::oracle::{
    axiom_audit, coset_count_bruteforce, random_ratfun, random_sample, report_violations,
    seeded_rng, series_recheck, smith_normal_form,
};
use frobval::ordered_groups::{GroupElement, OrderedGroup, Representation};
use frobval::valuations::Valuation;

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ratfun(v: &Valuation, text: &str) -> RationalFunction {
    parse_ratfun(text, v.spec()).unwrap()
}

fn value(v: &Valuation, text: &str) -> GroupElement {
    v.value_of(&ratfun(v, text)).unwrap()
}

fn int_value(v: &Valuation, k: i64) -> GroupElement {
    v.value_group()
        .least_positive()
        .unwrap()
        .scale(&BigInt::from(k))
}

fn criterion_1() -> Outcome {
    for p in [2u64, 3, 5] {
        let v = irrational(p);
        let r = classify(&v).map_err(|e| e.to_string())?;
        let ab = abhyankar(&v);
        ensure!(r.e == p * p, "p={p}: e = {}", r.e);
        ensure!(r.f_deg == 1, "p={p}: f = {}", r.f_deg);
        ensure!(r.e * r.f_deg == r.k_kp, "p={p}: e*f != [K:K^p]");
        ensure!(ab.geometric && ab.numeric, "p={p}: Abhyankar routes {ab:?}");
        ensure!(
            r.f_finite.value == Verdict::No,
            "p={p}: f_finite {}",
            r.f_finite.value
        );
        ensure!(r.f_pure.value == Verdict::Yes, "p={p}: f_pure");
        ensure!(
            r.f_pure_regular.value == Verdict::No,
            "p={p}: f_pure_regular"
        );
        ensure!(
            r.frobenius_split.value == Verdict::Unknown,
            "p={p}: frobenius_split"
        );
        ensure!(r.excellent.value == Verdict::No, "p={p}: excellent");
        ensure!(r.q.equals_m && !r.q.is_zero, "p={p}: Q is not m");
        ensure!(
            r.dim_v_mod_mp == 1 && dim_v_mod_mp(&v) == 1,
            "p={p}: dim V/m^[p] = {}",
            r.dim_v_mod_mp
        );
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    for n in [2usize, 3] {
        for p in [2u64, 3] {
            let v = lex(n, p);
            let r = classify(&v).map_err(|e| e.to_string())?;
            ensure!(r.e == p.pow(n as u32), "n={n} p={p}: e = {}", r.e);
            ensure!(r.f_finite.value == Verdict::No, "n={n} p={p}: f_finite");
            ensure!(
                r.f_finite.reasons.contains(&Citation::IndexAboveP),
                "n={n} p={p}: index obstruction not cited"
            );
            ensure!(r.m_principal, "n={n} p={p}: m not principal");
            let first = ratfun(&v, "x1");
            let last = ratfun(&v, &format!("x{n}"));
            ensure!(in_q(&v, &first).unwrap(), "n={n} p={p}: x1 not in Q");
            ensure!(!in_q(&v, &last).unwrap(), "n={n} p={p}: x{n} in Q");
            ensure!(
                least_pure_exponent(&v, &last).unwrap() == Some(1),
                "n={n} p={p}: least exponent"
            );
            ensure!(r.q.v_mod_q_is_dvr, "n={n} p={p}: V/Q not flagged DVR");
        }
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    for p in [2u64, 3] {
        let v = schmidt(p);
        for (text, k) in [("x", 1), ("y", 1), ("y - x", 2), ("y - x - x^2", 6)] {
            let got = value(&v, text);
            ensure!(
                got == int_value(&v, k),
                "p={p}: v({text}) = {got}, expected {k}"
            );
        }
        let r = classify(&v).map_err(|e| e.to_string())?;
        ensure!(
            r.e == p && r.f_deg == 1 && r.k_kp == p * p,
            "p={p}: (e, f, [K:K^p]) = ({}, {}, {})",
            r.e,
            r.f_deg,
            r.k_kp
        );
        ensure!(
            r.e * r.f_deg != r.k_kp,
            "p={p}: e*f should differ from [K:K^p]"
        );
        ensure!(
            !r.abhyankar() && !r.abhyankar_geometric && !r.abhyankar_numeric,
            "p={p}: abhyankar"
        );
        ensure!(r.f_finite.value == Verdict::No, "p={p}: f_finite");
        ensure!(
            r.frobenius_split.value == Verdict::No,
            "p={p}: frobenius_split"
        );
        ensure!(r.excellent.value == Verdict::No, "p={p}: excellent");
        ensure!(
            r.f_pure_regular.value == Verdict::Yes,
            "p={p}: f_pure_regular"
        );
        ensure!(
            r.split_f_regular.value == Verdict::No,
            "p={p}: split_f_regular"
        );
        ensure!(
            r.caveats
                .iter()
                .any(|c| c.code() == "TRANSCENDENCE_ASSUMED"),
            "p={p}: transcendence caveat missing"
        );
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    for p in [2u64, 3, 5, 7] {
        for g in ["x", "x + y"] {
            let v = divisorial(p, g);
            ensure!(v.value_group().rank() == 1, "p={p} g={g}: group rank");
            ensure!(
                v.value_group().least_positive() == Some(int_value(&v, 1)),
                "p={p} g={g}: group is not Z"
            );
            let r = classify(&v).map_err(|e| e.to_string())?;
            ensure!(r.t == 1, "p={p} g={g}: t = {}", r.t);
            for (name, t) in r.verdicts() {
                ensure!(t.value == Verdict::Yes, "p={p} g={g}: {name} = {}", t.value);
            }
            ensure!(
                r.dim_v_mod_mp == p * p && r.k_kp == p * p,
                "p={p} g={g}: dim V/m^[p] = {}",
                r.dim_v_mod_mp
            );
        }
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    // Valuation axioms on every reference valuation.
    for p in [2u64, 3, 5] {
        for (label, v) in all_fixtures(p) {
            for seed in 1..=5 {
                let audit = axiom_audit(&v, seed, 1000);
                ensure!(
                    audit.passed(),
                    "{label} seed {seed}: {}",
                    audit.counterexample.unwrap()
                );
            }
        }
    }

    // Bounds, route agreement and the implication lattice on fixtures and
    // 50 random monomial valuations of both kinds.
    let mut rng = seeded_rng(5);
    let mut pool: Vec<(String, Valuation)> =
        [2u64, 3, 5].into_iter().flat_map(all_fixtures).collect();
    for i in 0..50 {
        let p = [2u64, 3, 5, 7][rng.gen_range(0..4)];
        pool.push((
            format!("random monomial {i}"),
            random_monomial(&mut rng, p, i % 2 == 0),
        ));
    }
    for (label, v) in &pool {
        let ab = abhyankar(v);
        ensure!(
            ab.geometric == ab.numeric,
            "{label}: Abhyankar routes disagree ({ab:?})"
        );
        let r = classify(v).map_err(|e| e.to_string())?;
        let bad = report_violations(v, &r);
        ensure!(bad.is_empty(), "{label}: {}", bad.join("; "));
    }

    // Dense value group: every sampled c with v(c) > 0 lies in m^[p], and an
    // explicit witness gamma > 0 with p*gamma <= v(c) exists.
    let mut dense: Vec<Valuation> = [2u64, 3, 5].into_iter().map(irrational).collect();
    for p in [2u64, 3, 5] {
        dense.push(random_dense(&mut rng, p));
    }
    let mut sampled = 0;
    while sampled < 200 {
        let v = &dense[sampled % dense.len()];
        let c = random_ratfun(&mut rng, v);
        let val = v.value_of(&c).unwrap();
        if !val.is_positive() {
            continue;
        }
        sampled += 1;
        ensure!(
            in_mp_e(v, &c, 1).unwrap(),
            "{v}: c with v(c) = {val} not in m^[p]"
        );
        ensure!(
            small_positive_witness(v, &val, 200).is_some(),
            "{v}: no witness below {val}"
        );
    }

    // Q is an ideal and its complement is multiplicative.
    let q_pool = [
        lex(2, 3),
        lex(3, 2),
        irrational(5),
        schmidt(3),
        divisorial(3, "x + y"),
    ];
    for (i, v) in q_pool.iter().cycle().take(200).enumerate() {
        let c = random_ratfun(&mut rng, v);
        let d = random_ratfun(&mut rng, v);
        let (cq, dq) = (in_q(v, &c).unwrap(), in_q(v, &d).unwrap());
        let prod = c.checked_mul(&d).unwrap();
        if !cq && !dq {
            ensure!(
                !in_q(v, &prod).unwrap(),
                "pair {i} on {v}: product of non-members lies in Q"
            );
        }
        let r = RationalFunction::from(random_sample(&mut rng, v));
        if cq && v.value_of(&r).unwrap().sign() >= 0 {
            ensure!(
                in_q(v, &r.checked_mul(&c).unwrap()).unwrap(),
                "pair {i} on {v}: Q not closed under V"
            );
        }
        for e in 2..5 {
            if in_mp_e(v, &c, e).unwrap() {
                ensure!(
                    in_mp_e(v, &c, e - 1).unwrap(),
                    "pair {i} on {v}: membership not monotone"
                );
            }
        }
    }

    // Frobenius-pair invariance for monomial valuations.
    let mut monomials: Vec<Valuation> = [2u64, 3, 5].into_iter().map(irrational).collect();
    monomials.extend([lex(2, 2), lex(3, 3)]);
    monomials.extend((0..10).map(|i| random_monomial(&mut rng, 3, i % 2 == 0)));
    for v in &monomials {
        let w = v.frobenius_restriction().unwrap();
        ensure!(
            ramification_index(v) == ramification_index(&w),
            "{v}: e changes under Frobenius"
        );
        ensure!(
            residue_degree(v) == residue_degree(&w),
            "{v}: f changes under Frobenius"
        );
        ensure!(
            classify(v).unwrap() == classify(&w).unwrap(),
            "{v}: report changes under Frobenius"
        );
    }
    Ok(())
}

fn leibniz_det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = 0i64;
    // Heap's algorithm; the sign flips with every swap.
    let mut c = vec![0usize; n];
    let mut sign = 1i64;
    total += sign * (0..n).map(|i| m[i][perm[i]]).product::<i64>();
    let mut i = 0;
    while i < n {
        if c[i] < i {
            let j = if i % 2 == 0 { 0 } else { c[i] };
            perm.swap(j, i);
            sign = -sign;
            total += sign * (0..n).map(|k| m[k][perm[k]]).product::<i64>();
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    total
}

fn criterion_6() -> Outcome {
    for p in [2u64, 3, 5] {
        for (label, v) in all_fixtures(p) {
            let brute = coset_count_bruteforce(v.value_group(), p).map_err(|e| e.to_string())?;
            ensure!(
                brute == ramification_index(&v),
                "{label}: enumeration {brute} vs {}",
                ramification_index(&v)
            );
        }
    }

    let mut rng = seeded_rng(6);
    for i in 0..100 {
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let group = if i % 2 == 0 {
            let r = rng.gen_range(1..=3);
            let k = rng.gen_range(1..=4);
            OrderedGroup::from_generators(
                Representation::Lex { r },
                random_lex_weights(&mut rng, k, r)
                    .into_iter()
                    .map(GroupElement::Lex)
                    .collect(),
            )
        } else {
            let k = rng.gen_range(1..=3);
            let w = random_arch_weights(&mut rng, k);
            let d = w[0].d();
            OrderedGroup::from_generators(
                Representation::Arch { d },
                w.into_iter().map(GroupElement::Arch).collect(),
            )
        }
        .unwrap();
        let brute = coset_count_bruteforce(&group, p).map_err(|e| e.to_string())?;
        let formula = group.index_p(p);
        ensure!(
            BigInt::from(brute) == BigInt::from(formula.clone()),
            "lattice {i}: {brute} vs {formula}"
        );
    }

    let mut done = 0;
    while done < 50 {
        let n = rng.gen_range(2..=4);
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(-9..=9)).collect())
            .collect();
        let det = leibniz_det(&rows);
        if det == 0 {
            continue;
        }
        done += 1;
        let m = IntegerMatrix::from_i64(&rows);
        let snf = smith_normal_form(&m);
        let product: BigInt = snf.iter().product();
        ensure!(
            product == BigInt::from(det.abs()),
            "SNF {snf:?} of {rows:?}, det {det}"
        );
        ensure!(
            snf.windows(2).all(|w| (&w[1] % &w[0]) == BigInt::from(0)),
            "SNF chain broken: {snf:?}"
        );
        let h = hermite_normal_form(&m);
        let pivots: BigInt = (0..n).map(|i| h.form.get(i, h.pivots[i]).abs()).product();
        ensure!(
            pivots == product,
            "HNF pivot product {pivots} vs SNF {product}"
        );
    }

    for p in [2u64, 3] {
        let v = schmidt(p);
        for _ in 0..100 {
            let f = random_sample(&mut rng, &v);
            let direct = v.value_of_poly(&f).map_err(|e| e.to_string())?;
            let recheck = series_recheck(&v, &f, 2).map_err(|e| e.to_string())?;
            ensure!(
                direct == recheck,
                "p={p}: v({}) = {direct} but recheck {recheck}",
                f.display(v.spec())
            );
        }
        ensure!(
            series_recheck(&v, &parse_poly("y - x", v.spec()).unwrap(), 2).unwrap()
                == int_value(&v, 2),
            "v(y - x)"
        );
    }

    let t_spec = FieldSpec::new(3, Vec::<&str>::new(), ["t"]).unwrap();
    let images = [
        parse_poly("t", &t_spec).unwrap(),
        parse_poly("t^2 + t^3", &t_spec).unwrap(),
    ];
    let v = control(3);
    ensure!(value(&v, "x - y") == int_value(&v, 1), "control v(x - y)");
    let mut checked = 0;
    while checked < 100 {
        let f: Polynomial = random_sample(&mut rng, &v);
        let Some(low) = lowest_degree(&substitute_univariate(&f, &images)) else {
            continue;
        };
        checked += 1;
        let got = v.value_of_poly(&f).map_err(|e| e.to_string())?;
        ensure!(
            got == int_value(&v, low as i64),
            "control v({}) = {got}, substitution gives {low}",
            f.display(v.spec())
        );
    }
    Ok(())
}

/// The retracted claim: every Abhyankar valuation ring is F-finite.
fn retracted_claim_holds(r: &ClassificationReport) -> bool {
    !r.abhyankar() || r.f_finite.value == Verdict::Yes
}

fn criterion_7() -> Outcome {
    for p in [2u64, 3, 5] {
        let r = classify(&irrational(p)).unwrap();
        ensure!(r.abhyankar(), "p={p}: expected an Abhyankar valuation");
        ensure!(
            r.f_finite.value == Verdict::No,
            "p={p}: expected f_finite = NO"
        );
        ensure!(
            !retracted_claim_holds(&r),
            "p={p}: the retracted claim unexpectedly holds"
        );
        ensure!(
            r.f_finite.reasons.first() == Some(&Citation::FFiniteIffDivisorial),
            "p={p}: f_finite must be decided by the divisorial criterion"
        );
    }
    Ok(())
}

fn golden(name: &str) -> String {
    let path = format!("{}/tests/golden/{name}.json", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

fn criterion_8() -> Outcome {
    let json = Options {
        format: Format::Json,
        ..Options::default()
    };
    let mut docs = Vec::new();
    for (name, script) in fixtures::ALL {
        let out = run_script(script, json);
        ensure!(out.exit_code == 0, "{name}: exit {}", out.exit_code);
        ensure!(
            out.stdout == golden(name),
            "{name}: JSON differs from the golden file"
        );
        ensure!(
            run_script(script, json).stdout == out.stdout,
            "{name}: output not deterministic"
        );
        docs.push(serde_json::from_str::<Value>(&out.stdout).unwrap());
    }

    // The reports inside the transcripts agree with the library.
    let last_report = |doc: &Value| {
        let results = doc["results"].as_array().unwrap();
        ClassificationReport::from_json(&results.last().unwrap()["report"]).unwrap()
    };
    ensure!(
        last_report(&docs[0]) == classify(&irrational(5)).unwrap(),
        "monomial fixture report"
    );
    ensure!(
        last_report(&docs[1]) == classify(&lex(2, 3)).unwrap(),
        "lex fixture report"
    );
    ensure!(
        last_report(&docs[2]) == classify(&schmidt(3)).unwrap(),
        "series fixture report"
    );
    let r = &docs[0]["results"][3]["report"];
    ensure!(
        r["e"] == 25 && r["abhyankar"] == true && r["f_finite"] == "NO",
        "monomial fixture fields"
    );
    let lex_doc = &docs[1]["results"];
    ensure!(
        lex_doc[1]["result"] == true && lex_doc[2]["result"] == false,
        "lex fixture inQ results"
    );
    ensure!(
        lex_doc[3]["least_pure_exponent"] == 1,
        "lex fixture least exponent"
    );
    let values: Vec<&Value> = (0..4).map(|i| &docs[2]["results"][i]["value"]).collect();
    ensure!(
        values == ["1", "1", "2", "6"],
        "series fixture values {values:?}"
    );

    let mut rng = seeded_rng(8);
    let fuzz = Options {
        format: Format::Json,
        precision_cap: 256,
        seed: 0,
    };
    for i in 0..1000 {
        let script = fuzz_script(&mut rng, true);
        let out = catch_unwind(|| run_script(&script, fuzz))
            .map_err(|_| format!("fuzz input {i} panicked: {script:?}"))?;
        ensure!(
            out.exit_code == 2,
            "fuzz input {i}: exit {} for {script:?}",
            out.exit_code
        );
        let doc: Value =
            serde_json::from_str(&out.stdout).map_err(|e| format!("fuzz input {i}: {e}"))?;
        ensure!(
            doc["error"]["line"].as_u64().is_some_and(|l| l >= 1),
            "fuzz input {i}: no error line"
        );
    }
    Ok(())
}

type Criterion = (u32, &'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        (
            1,
            "irrational monomial valuation, p in {2,3,5}",
            criterion_1,
        ),
        (2, "lex valuation, n in {2,3}, p in {2,3}", criterion_2),
        (
            3,
            "series restriction along the factorial-gap series",
            criterion_3,
        ),
        (4, "divisorial valuations along x and x + y", criterion_4),
        (5, "property suites", criterion_5),
        (6, "oracle agreement", criterion_6),
        (
            7,
            "retracted Abhyankar => F-finite claim fails",
            criterion_7,
        ),
        (8, "CLI fixtures and grammar fuzzing", criterion_8),
    ];
    let mut failures = 0;
    for (n, title, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(()) => println!("criterion {n}: PASS  {title} ({ms} ms)"),
            Err(msg) => {
                failures += 1;
                println!("criterion {n}: FAIL  {title}: {msg}");
            }
        }
    }
    println!("{} of 8 criteria passed", 8 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
