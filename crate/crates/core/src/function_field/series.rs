use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};

use super::poly::mul_mod;
use super::{FieldSpec, Polynomial};

type CoefficientRule = dyn Fn(usize) -> u64 + Send + Sync;

/// A lazily evaluated power series `sum a_i t^i` over `F_p`.
///
/// Coefficients come from a deterministic rule and are memoized. The memo is
/// behind a mutex, so a series can be shared across threads; concurrent
/// readers serialize on it.
pub struct PowerSeries {
    name: String,
    p: u64,
    rule: Box<CoefficientRule>,
    memo: Mutex<Vec<u64>>,
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PowerSeries")
            .field("name", &self.name)
            .field("p", &self.p)
            .finish()
    }
}

fn is_factorial(i: usize) -> bool {
    let mut f = 1usize;
    let mut n = 1usize;
    while f < i {
        n += 1;
        f = match f.checked_mul(n) {
            Some(f) => f,
            None => return false,
        };
    }
    f == i
}

impl PowerSeries {
    pub fn from_fn(
        name: impl Into<String>,
        p: u64,
        rule: impl Fn(usize) -> u64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            p,
            rule: Box::new(rule),
            memo: Mutex::new(Vec::new()),
        }
    }

    /// `sum_{n>=1} t^(n!) = t + t^2 + t^6 + t^24 + ...`, the default
    /// embedding for series-restriction valuations. Believed transcendental
    /// over `F_p(t)`; this is not verified.
    pub fn factorial_gap(p: u64) -> Self {
        Self::from_fn("factorial_gap", p, |i| u64::from(i >= 1 && is_factorial(i)))
    }

    /// A polynomial in `t`, given by its coefficient list.
    pub fn from_coefficients(name: impl Into<String>, p: u64, coeffs: Vec<u64>) -> Self {
        let coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        Self::from_fn(name, p, move |i| coeffs.get(i).copied().unwrap_or(0))
    }

    /// A polynomial in a single variable, read as a polynomial in `t`.
    pub fn from_univariate(name: impl Into<String>, poly: &Polynomial) -> Self {
        assert_eq!(poly.nvars(), 1, "expected a univariate polynomial");
        let deg = poly.degree_in(0).unwrap_or(0) as usize;
        let mut coeffs = vec![0; deg + 1];
        for (m, c) in poly.terms() {
            coeffs[m[0] as usize] = c;
        }
        Self::from_coefficients(name, poly.p(), coeffs)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coefficient(&self, i: usize) -> u64 {
        let mut memo = self.memo.lock().expect("series memo poisoned");
        while memo.len() <= i {
            let k = memo.len();
            memo.push((self.rule)(k) % self.p);
        }
        memo[i]
    }

    /// Coefficients `a_0 .. a_{n-1}`.
    pub fn prefix(&self, n: usize) -> Vec<u64> {
        if n == 0 {
            return Vec::new();
        }
        self.coefficient(n - 1);
        let memo = self.memo.lock().expect("series memo poisoned");
        memo[..n].to_vec()
    }

    pub fn truncate(&self, n: usize) -> TruncatedSeries {
        TruncatedSeries {
            p: self.p,
            coeffs: self.prefix(n),
        }
    }
}

/// Least `i <= cap` with `a_i != 0`, or `None` if `a_0..=a_cap` all vanish.
pub fn series_ord(s: &PowerSeries, cap: usize) -> Option<usize> {
    (0..=cap).find(|&i| s.coefficient(i) != 0)
}

/// A power series modulo `t^precision`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    p: u64,
    coeffs: Vec<u64>,
}

impl TruncatedSeries {
    pub fn zero(p: u64, precision: usize) -> Self {
        Self {
            p,
            coeffs: vec![0; precision],
        }
    }

    pub fn constant(p: u64, precision: usize, c: u64) -> Self {
        let mut s = Self::zero(p, precision);
        if precision > 0 {
            s.coeffs[0] = c % p;
        }
        s
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Index of the first nonzero coefficient below the precision.
    pub fn ord(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn add_scaled(&mut self, other: &TruncatedSeries, c: u64) {
        for (a, &b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a = (*a + mul_mod(b, c, self.p)) % self.p;
        }
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let n = self.precision().min(other.precision());
        let mut out = vec![0u64; n];
        for (i, &a) in self.coeffs.iter().enumerate().take(n) {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs[..n - i].iter().enumerate() {
                if b != 0 {
                    out[i + j] = (out[i + j] + mul_mod(a, b, self.p)) % self.p;
                }
            }
        }
        TruncatedSeries {
            p: self.p,
            coeffs: out,
        }
    }

    /// First `n` coefficients.
    pub fn prefix(&self, n: usize) -> TruncatedSeries {
        TruncatedSeries {
            p: self.p,
            coeffs: self.coeffs[..n.min(self.coeffs.len())].to_vec(),
        }
    }
}

/// Series assigned to each main variable, indexed by main-variable position.
pub type SeriesAssignment = Vec<Option<Arc<PowerSeries>>>;

/// `f(assignments) mod t^precision`.
pub fn eval_poly_as_series(
    f: &Polynomial,
    spec: &FieldSpec,
    assign: &SeriesAssignment,
    precision: usize,
) -> Result<TruncatedSeries> {
    if spec.m() > 0 {
        return Err(Error::GroundVarInSeriesContext);
    }
    if !f.fits(spec) {
        return Err(Error::SpecMismatch);
    }
    let n = spec.n();
    let p = spec.p();
    for (i, name) in spec.main_vars().iter().enumerate() {
        let used = f.degree_in(i).unwrap_or(0) > 0;
        if used && assign.get(i).is_none_or(Option::is_none) {
            return Err(Error::MissingAssignment(name.clone()));
        }
    }
    // powers[i][e] = s_i^e, built on demand.
    let mut powers: Vec<Vec<TruncatedSeries>> = (0..n)
        .map(|_| vec![TruncatedSeries::constant(p, precision, 1)])
        .collect();
    let mut total = TruncatedSeries::zero(p, precision);
    for (m, c) in f.terms() {
        let mut term = TruncatedSeries::constant(p, precision, 1);
        for (i, &e) in m.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let table = &mut powers[i];
            if table.len() <= e as usize {
                let base = assign[i]
                    .as_ref()
                    .expect("checked above")
                    .truncate(precision);
                while table.len() <= e as usize {
                    let next = table.last().expect("nonempty").mul(&base);
                    table.push(next);
                }
            }
            term = term.mul(&table[e as usize]);
        }
        total.add_scaled(&term, c);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(p: u64) -> FieldSpec {
        FieldSpec::new(p, Vec::<&str>::new(), ["x", "y"]).unwrap()
    }

    fn t(p: u64) -> Arc<PowerSeries> {
        Arc::new(PowerSeries::from_coefficients("t", p, vec![0, 1]))
    }

    #[test]
    fn factorial_gap_coefficients() {
        let s = PowerSeries::factorial_gap(3);
        let support: Vec<usize> = (0..130).filter(|&i| s.coefficient(i) == 1).collect();
        assert_eq!(support, vec![1, 2, 6, 24, 120]);
        assert_eq!(s.prefix(4), vec![0, 1, 1, 0]);
    }

    #[test]
    fn ord_examples() {
        let s = PowerSeries::from_coefficients("s", 5, vec![0, 0, 0, 1, 0, 1]);
        assert_eq!(series_ord(&s, 10), Some(3));
        let z = PowerSeries::from_fn("zero", 5, |_| 0);
        assert_eq!(series_ord(&z, 100), None);
        let g = PowerSeries::factorial_gap(5);
        let minus_t = PowerSeries::from_fn("gap-t", 5, move |i| {
            if i == 1 {
                (g.coefficient(i) + 4) % 5
            } else {
                g.coefficient(i)
            }
        });
        assert_eq!(series_ord(&minus_t, 10), Some(2));
    }

    #[test]
    fn eval_examples() {
        let p = 3;
        let s = spec(p);
        let assign: SeriesAssignment =
            vec![Some(t(p)), Some(Arc::new(PowerSeries::factorial_gap(p)))];
        let x = Polynomial::var_in(&s, "x").unwrap();
        let y = Polynomial::var_in(&s, "y").unwrap();
        let r = eval_poly_as_series(&(&y - &x), &s, &assign, 8).unwrap();
        assert_eq!(r.coeffs(), &[0, 0, 1, 0, 0, 0, 1, 0]);
        let r = eval_poly_as_series(&x, &s, &assign, 4).unwrap();
        assert_eq!(r.coeffs(), &[0, 1, 0, 0]);

        let p = 5;
        let s = spec(p);
        let y_poly = Arc::new(PowerSeries::from_coefficients("t+t^2", p, vec![0, 1, 1]));
        let assign: SeriesAssignment = vec![Some(t(p)), Some(y_poly)];
        let y = Polynomial::var_in(&s, "y").unwrap();
        let r = eval_poly_as_series(&y.pow(2), &s, &assign, 5).unwrap();
        assert_eq!(r.coeffs(), &[0, 0, 1, 2, 1]);
    }

    #[test]
    fn eval_errors() {
        let s = spec(3);
        let y = Polynomial::var_in(&s, "y").unwrap();
        let assign: SeriesAssignment = vec![Some(t(3)), None];
        assert_eq!(
            eval_poly_as_series(&y, &s, &assign, 4).unwrap_err(),
            Error::MissingAssignment("y".into())
        );
        let g = FieldSpec::new(3, ["u"], ["x"]).unwrap();
        let x = Polynomial::var_in(&g, "x").unwrap();
        assert_eq!(
            eval_poly_as_series(&x, &g, &vec![Some(t(3))], 4).unwrap_err(),
            Error::GroundVarInSeriesContext
        );
    }

    #[test]
    fn prefix_consistency() {
        let p = 3;
        let s = spec(p);
        let assign: SeriesAssignment =
            vec![Some(t(p)), Some(Arc::new(PowerSeries::factorial_gap(p)))];
        let f = crate::function_field::parse_poly("y^3 - x*y + 2*x^2*y^2 + 1", &s).unwrap();
        let long = eval_poly_as_series(&f, &s, &assign, 40).unwrap();
        let short = eval_poly_as_series(&f, &s, &assign, 13).unwrap();
        assert_eq!(long.prefix(13), short);
    }
}
