//! Brute-force cross-checks for the main computation paths.
//!
//! Nothing here is fast. Each routine recomputes a quantity by a different
//! algorithm: coset enumeration instead of `p^rank`, Smith form instead of
//! Hermite form, dense series expansion instead of the sparse evaluator, and
//! random sampling of the valuation axioms.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::classifier::{Citation, ClassificationReport, Verdict};
use crate::error::{Error, Result};
use crate::exact_arith::Rational;
use crate::function_field::{FieldSpec, Polynomial, RationalFunction};
use crate::lattice::IntegerMatrix;
use crate::ordered_groups::{GroupElement, OrderedGroup};
use crate::valuations::{Valuation, ValuationKind};

/// Largest rank accepted by [`coset_count_bruteforce`].
pub const MAX_ENUMERATION_RANK: usize = 4;

fn as_rational_vector(x: &GroupElement) -> Vec<Rational> {
    match x {
        GroupElement::Arch(q) => vec![q.a().clone(), q.b().clone()],
        GroupElement::Lex(v) => v.iter().cloned().map(Rational::from_integer).collect(),
    }
}

/// Solves `sum x_i basis[i] = target` over `Q` by Gaussian elimination.
fn solve_rational(basis: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let k = basis.len();
    let dim = target.len();
    // Augmented system with one row per coordinate.
    let mut a: Vec<Vec<Rational>> = (0..dim)
        .map(|r| {
            let mut row: Vec<Rational> = basis.iter().map(|b| b[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(pr) = (row..dim).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, pr);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = a[row].clone();
        for (r, target) in a.iter_mut().enumerate() {
            if r != row && !target[col].is_zero() {
                let factor = target[col].clone();
                for (x, pv) in target.iter_mut().zip(&pivot) {
                    *x -= &factor * pv;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    if a[row..].iter().any(|r| !r[k].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); k];
    for (r, &c) in pivot_cols.iter().enumerate() {
        x[c] = a[r][k].clone();
    }
    Some(x)
}

/// `[G:pG]` by enumerating `sum c_i b_i`, `0 <= c_i < p`, and merging
/// those whose difference lies in `pG`.
pub fn coset_count_bruteforce(g: &OrderedGroup, p: u64) -> Result<u64> {
    coset_count_for_basis(g.basis(), p)
}

/// As [`coset_count_bruteforce`] for an explicit `Z`-basis. The empty basis
/// spans the trivial group, which has one coset.
pub fn coset_count_for_basis(basis: &[GroupElement], p: u64) -> Result<u64> {
    let r = basis.len();
    if r > MAX_ENUMERATION_RANK {
        return Err(Error::RankTooLarge(r));
    }
    if r == 0 {
        return Ok(1);
    }
    let vectors: Vec<Vec<Rational>> = basis.iter().map(as_rational_vector).collect();
    let p_int = BigInt::from(p);
    let in_p_gamma = |x: &GroupElement| -> bool {
        match solve_rational(&vectors, &as_rational_vector(x)) {
            Some(coords) => coords
                .iter()
                .all(|c| c.is_integer() && c.to_integer().is_multiple_of(&p_int)),
            None => false,
        }
    };
    let mut reps: Vec<GroupElement> = Vec::new();
    let mut coeffs = vec![0u64; r];
    loop {
        let elem = basis
            .iter()
            .zip(&coeffs)
            .map(|(b, &c)| b.scale(&BigInt::from(c)))
            .reduce(|a, b| a.checked_add(&b).expect("basis shares one group"))
            .expect("nonempty basis");
        let fresh = reps
            .iter()
            .all(|rep| !in_p_gamma(&elem.checked_sub(rep).expect("same group")));
        if fresh {
            reps.push(elem);
        }
        // Odometer increment.
        let mut i = 0;
        while i < r {
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
        if i == r {
            break;
        }
    }
    Ok(reps.len() as u64)
}

/// Nonzero invariant factors `d_1 | d_2 | ...` of an integer matrix.
pub fn smith_normal_form(m: &IntegerMatrix) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = m.rows().to_vec();
    let rows = a.len();
    let cols = m.ncols();
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        // Pick the smallest nonzero entry of the remaining block as pivot.
        let Some((pi, pj)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()))
        else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_floor(&a[t][t]);
                if !q.is_zero() {
                    let pivot = a[t].clone();
                    for (x, pv) in a[i][t..cols].iter_mut().zip(&pivot[t..cols]) {
                        *x -= &q * pv;
                    }
                }
                if !a[i][t].is_zero() {
                    clean = false;
                    a.swap(t, i);
                }
            }
            for j in t + 1..cols {
                let q = a[t][j].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for row in a.iter_mut().skip(t) {
                        let delta = &q * &row[t];
                        row[j] -= delta;
                    }
                }
                if !a[t][j].is_zero() {
                    clean = false;
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                }
            }
            if !clean {
                continue;
            }
            // Enforce divisibility into the rest of the block.
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_multiple_of(&a[t][t]));
            match bad {
                Some((i, _)) => {
                    let source = a[i].clone();
                    for (x, v) in a[t][t..cols].iter_mut().zip(&source[t..cols]) {
                        *x += v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}

/// Determinant of a square integer matrix by fraction-free elimination.
pub fn determinant(m: &IntegerMatrix) -> BigInt {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "square matrix required");
    let mut a: Vec<Vec<BigInt>> = m.rows().to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(pr) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if pr != k {
            a.swap(k, pr);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &a[n - 1][n - 1]
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random polynomial in the variables `vars`, with at most `max_terms`
/// terms of degree at most `max_deg` in each variable. May be zero.
pub fn random_polynomial(
    rng: &mut impl Rng,
    spec: &FieldSpec,
    vars: std::ops::Range<usize>,
    max_terms: usize,
    max_deg: u32,
) -> Polynomial {
    let p = spec.p();
    let nvars = spec.nvars();
    let terms = rng.gen_range(1..=max_terms);
    Polynomial::from_terms(
        p,
        nvars,
        (0..terms).map(|_| {
            let mut m = vec![0u32; nvars];
            for i in vars.clone() {
                m[i] = rng.gen_range(0..=max_deg);
            }
            (m, rng.gen_range(0..p))
        }),
    )
}

pub fn random_nonzero_polynomial(
    rng: &mut impl Rng,
    spec: &FieldSpec,
    vars: std::ops::Range<usize>,
    max_terms: usize,
    max_deg: u32,
) -> Polynomial {
    loop {
        let f = random_polynomial(rng, spec, vars.clone(), max_terms, max_deg);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Polynomials biased towards positive value: a random factor times a
/// power of one of the "small" elements of `v` (a main variable or the
/// divisorial center).
pub fn random_sample(rng: &mut impl Rng, v: &Valuation) -> Polynomial {
    let spec = v.spec();
    let main = spec.m()..spec.nvars();
    let base = random_nonzero_polynomial(rng, spec, main.clone(), 3, 2);
    let small = match v.kind() {
        ValuationKind::Divisorial { g } if rng.gen_bool(0.5) => g.clone(),
        _ => Polynomial::var(spec.p(), spec.nvars(), rng.gen_range(main)),
    };
    base.checked_mul(&small.pow(rng.gen_range(0..3)))
        .expect("same ring")
}

pub fn random_ratfun(rng: &mut impl Rng, v: &Valuation) -> RationalFunction {
    RationalFunction::new(random_sample(rng, v), random_sample(rng, v))
        .expect("nonzero denominator")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub trials: usize,
    pub checks: usize,
    pub counterexample: Option<String>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

pub type Evaluator<'a> = dyn Fn(&Polynomial) -> Result<GroupElement> + 'a;
pub type Comparator<'a> = dyn Fn(&GroupElement, &GroupElement) -> Ordering + 'a;

/// The true order on value-group elements.
pub fn group_order(a: &GroupElement, b: &GroupElement) -> Ordering {
    a.compare(b).expect("elements of one value group")
}

/// Samples random elements and checks the valuation axioms against `v`'s
/// own evaluator and the group order.
pub fn axiom_audit(v: &Valuation, seed: u64, trials: usize) -> AuditReport {
    axiom_audit_with(v, seed, trials, &|f| v.value_of_poly(f), &group_order)
}

/// [`axiom_audit`] with a substitute evaluator and comparator. Used to show
/// that deliberately broken implementations are caught.
pub fn axiom_audit_with(
    v: &Valuation,
    seed: u64,
    trials: usize,
    eval: &Evaluator<'_>,
    cmp: &Comparator<'_>,
) -> AuditReport {
    let mut rng = seeded_rng(seed);
    let spec = v.spec();
    let show = |f: &Polynomial| f.display(spec).to_string();
    let checks = std::cell::Cell::new(0usize);
    let tick = || checks.set(checks.get() + 1);
    let fail = |msg: String, trial: usize| AuditReport {
        trials: trial + 1,
        checks: checks.get(),
        counterexample: Some(msg),
    };
    let zero = v.value_group().zero();
    for trial in 0..trials {
        let f = random_sample(&mut rng, v);
        let g = random_sample(&mut rng, v);
        let (vf, vg) = match (eval(&f), eval(&g)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return fail(format!("evaluation failed: {e}"), trial),
        };

        // The order must be antisymmetric and consistent under reversal.
        tick();
        let c = cmp(&vf, &vg);
        if c != cmp(&vg, &vf).reverse() || (c == Ordering::Equal && vf != vg) {
            return fail(
                format!("comparator is not a total order on {vf} and {vg}"),
                trial,
            );
        }

        tick();
        let prod = f.checked_mul(&g).expect("same ring");
        match eval(&prod) {
            Ok(vp) if vp == vf.checked_add(&vg).expect("same group") => {}
            Ok(vp) => {
                return fail(
                    format!(
                        "v(({})*({})) = {vp}, but v(f) + v(g) = {vf} + {vg}",
                        show(&f),
                        show(&g)
                    ),
                    trial,
                )
            }
            Err(e) => return fail(format!("evaluation failed: {e}"), trial),
        }

        let sum = f.checked_add(&g).expect("same ring");
        if !sum.is_zero() {
            tick();
            let vs = match eval(&sum) {
                Ok(x) => x,
                Err(e) => return fail(format!("evaluation failed: {e}"), trial),
            };
            let min = if cmp(&vf, &vg) == Ordering::Greater {
                &vg
            } else {
                &vf
            };
            if cmp(&vs, min) == Ordering::Less {
                return fail(
                    format!(
                        "v({} + {}) = {vs} is below min({vf}, {vg})",
                        show(&f),
                        show(&g)
                    ),
                    trial,
                );
            }
            if vf != vg && vs != *min {
                return fail(
                    format!(
                        "v({} + {}) = {vs}, but v(f) != v(g) forces {min}",
                        show(&f),
                        show(&g)
                    ),
                    trial,
                );
            }
        }

        tick();
        let ground = random_nonzero_polynomial(&mut rng, spec, 0..spec.m(), 3, 2);
        match eval(&ground) {
            Ok(x) if x == zero => {}
            Ok(x) => {
                return fail(
                    format!("ground element {} has value {x}", show(&ground)),
                    trial,
                )
            }
            Err(e) => return fail(format!("evaluation failed: {e}"), trial),
        }
    }
    AuditReport {
        trials,
        checks: checks.get(),
        counterexample: None,
    }
}

/// Deliberately wrong implementations for mutation testing.
pub mod mutants {
    use super::*;

    fn term_values(v: &Valuation, f: &Polynomial) -> Result<Vec<GroupElement>> {
        f.terms()
            .map(|(m, _)| v.value_of_poly(&Polynomial::monomial(f.p(), f.nvars(), m.clone(), 1)))
            .collect()
    }

    /// Monomial valuation evaluated with `max` in place of `min`.
    pub fn max_rule(v: &Valuation) -> impl Fn(&Polynomial) -> Result<GroupElement> + '_ {
        move |f| {
            Ok(term_values(v, f)?
                .into_iter()
                .max_by(group_order)
                .expect("nonzero polynomial"))
        }
    }

    /// Lex comparison that only looks at the first coordinate.
    pub fn first_coordinate_order(a: &GroupElement, b: &GroupElement) -> Ordering {
        match (a, b) {
            (GroupElement::Lex(x), GroupElement::Lex(y)) => x[0].cmp(&y[0]),
            _ => group_order(a, b),
        }
    }

    /// Monomial valuation whose min rule uses [`first_coordinate_order`].
    pub fn first_coordinate_lex(
        v: &Valuation,
    ) -> impl Fn(&Polynomial) -> Result<GroupElement> + '_ {
        move |f| {
            Ok(term_values(v, f)?
                .into_iter()
                .min_by(first_coordinate_order)
                .expect("nonzero polynomial"))
        }
    }
}

/// Multiplies truncated dense series naively.
fn dense_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len();
    let mut out = vec![0u64; n];
    for i in 0..n {
        for j in 0..n - i {
            out[i + j] = ((out[i + j] as u128 + a[i] as u128 * b[j] as u128) % p as u128) as u64;
        }
    }
    out
}

/// `ord_t f(s(t))` by dense expansion at exactly `precision` coefficients,
/// or `None` if all of them vanish. Series kind only.
pub fn dense_series_order(
    v: &Valuation,
    f: &Polynomial,
    precision: usize,
) -> Result<Option<usize>> {
    let ValuationKind::SeriesRestriction { assign, .. } = v.kind() else {
        return Err(Error::UnsupportedKind("non-series"));
    };
    let spec = v.spec();
    let p = spec.p();
    let prefixes: Vec<Vec<u64>> = assign.iter().map(|s| s.prefix(precision)).collect();
    let mut total = vec![0u64; precision];
    for (m, c) in f.terms() {
        let mut term = vec![0u64; precision];
        if precision > 0 {
            term[0] = c;
        }
        for (i, &e) in m[spec.m()..].iter().enumerate() {
            for _ in 0..e {
                term = dense_mul(&term, &prefixes[i], p);
            }
        }
        for (t, x) in total.iter_mut().zip(term) {
            *t = (*t + x) % p;
        }
    }
    Ok(total.iter().position(|&c| c != 0))
}

/// Recomputes `v(c)` by dense expansion at `factor` times the precision the
/// main path needed.
pub fn series_recheck(v: &Valuation, c: &Polynomial, factor: usize) -> Result<GroupElement> {
    if factor < 2 {
        return Err(Error::InvalidArgument("recheck factor must be >= 2".into()));
    }
    let (_, precision) = v.value_of_poly_resolved(c)?;
    let precision = precision.ok_or(Error::UnsupportedKind("non-series"))?;
    let target = precision * factor;
    let ord =
        dense_series_order(v, c, target)?.ok_or(Error::OrdUndetermined { cap: target - 1 })?;
    let unit = v
        .value_group()
        .least_positive()
        .expect("series groups are Z");
    Ok(unit.scale(&BigInt::from(ord)))
}

/// Invariants every classification report must satisfy. Returns a list of
/// violations, empty when all hold.
pub fn report_violations(v: &Valuation, r: &ClassificationReport) -> Vec<String> {
    let mut out = Vec::new();
    let mut check = |ok: bool, msg: &str| {
        if !ok {
            out.push(msg.to_string());
        }
    };
    let spec = v.spec();
    let p = spec.p();
    let yes = |x: Verdict| x == Verdict::Yes;

    check(r.e * r.f_deg <= r.k_kp, "e*f exceeds [K:K^p]");
    check(
        r.abhyankar_geometric == r.abhyankar_numeric,
        "Abhyankar routes disagree",
    );
    check(r.e <= p.pow(r.s as u32), "e exceeds p^s");
    check(
        r.f_deg <= p.pow(r.t as u32) * spec.ground_p_degree(),
        "f exceeds p^t [k:k^p]",
    );
    check(
        yes(r.f_pure_regular.value) == r.noetherian,
        "f_pure_regular differs from noetherian",
    );
    check(
        !yes(r.split_f_regular.value)
            || (yes(r.frobenius_split.value) && yes(r.f_pure_regular.value)),
        "split_f_regular without frobenius_split and f_pure_regular",
    );
    check(
        !yes(r.f_finite.value) || yes(r.frobenius_split.value),
        "f_finite without frobenius_split",
    );
    check(
        !yes(r.f_finite.value) || (r.divisorial && v.value_group().rank() == 1),
        "f_finite without a divisorial rank-one group",
    );
    check(
        !yes(r.f_finite.value) || r.dim_v_mod_mp == r.k_kp,
        "f_finite but dim V/m^[p] != [K:K^p]",
    );
    check(r.f_pure.value == Verdict::Yes, "f_pure must always hold");
    check(r.q.is_zero == r.noetherian, "Q = 0 differs from noetherian");
    check(
        r.q.v_mod_q_is_dvr == r.m_principal,
        "V/Q DVR flag differs from principal m",
    );
    for (name, t) in r.verdicts() {
        if t.reasons.is_empty() {
            out.push(format!("{name} has no citation"));
        }
        if t.value == Verdict::Unknown && !t.reasons.contains(&Citation::OpenValueGroupQ) {
            out.push(format!(
                "{name} is UNKNOWN without naming the open question"
            ));
        }
    }
    out
}
