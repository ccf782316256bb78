use std::fmt;

use crate::error::{Error, Result};

/// `K = F_p(u_1..u_m, x_1..x_n)` with ground field `k = F_p(u)`.
///
/// Variables are indexed ground-first: `0..m` are the ground variables and
/// `m..m+n` the main ones. `[K:K^p] = p^(m+n)` and `[k:k^p] = p^m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u64,
    ground_vars: Vec<String>,
    main_vars: Vec<String>,
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2;
    while q * q <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl FieldSpec {
    pub fn new<S: Into<String>>(
        p: u64,
        ground_vars: impl IntoIterator<Item = S>,
        main_vars: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(Error::InvalidField(format!(
                "p = {p} must be a prime below 2^31"
            )));
        }
        let ground_vars: Vec<String> = ground_vars.into_iter().map(Into::into).collect();
        let main_vars: Vec<String> = main_vars.into_iter().map(Into::into).collect();
        if main_vars.is_empty() {
            return Err(Error::InvalidField(
                "at least one main variable is required".into(),
            ));
        }
        let all: Vec<&String> = ground_vars.iter().chain(&main_vars).collect();
        for (i, v) in all.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::InvalidField(format!(
                    "`{v}` is not a valid variable name"
                )));
            }
            if all[..i].contains(v) {
                return Err(Error::InvalidField(format!(
                    "variable `{v}` declared twice"
                )));
            }
        }
        let exp = u32::try_from(all.len()).unwrap_or(u32::MAX);
        if p.checked_pow(exp).is_none() {
            return Err(Error::InvalidField(
                "p^(m+n) does not fit in 64 bits".into(),
            ));
        }
        Ok(Self {
            p,
            ground_vars,
            main_vars,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn ground_vars(&self) -> &[String] {
        &self.ground_vars
    }

    pub fn main_vars(&self) -> &[String] {
        &self.main_vars
    }

    /// Number of ground variables.
    pub fn m(&self) -> usize {
        self.ground_vars.len()
    }

    /// Number of main variables, the transcendence degree of `K/k`.
    pub fn n(&self) -> usize {
        self.main_vars.len()
    }

    pub fn nvars(&self) -> usize {
        self.m() + self.n()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.ground_vars
            .iter()
            .chain(&self.main_vars)
            .position(|v| v == name)
    }

    pub fn main_index(&self, name: &str) -> Option<usize> {
        self.main_vars.iter().position(|v| v == name)
    }

    pub fn var_name(&self, i: usize) -> &str {
        if i < self.m() {
            &self.ground_vars[i]
        } else {
            &self.main_vars[i - self.m()]
        }
    }

    pub fn is_ground(&self, i: usize) -> bool {
        i < self.m()
    }

    /// `[K:K^p] = p^(m+n)`.
    pub fn field_p_degree(&self) -> u64 {
        self.p.pow(self.nvars() as u32)
    }

    /// `[k:k^p] = p^m`.
    pub fn ground_p_degree(&self) -> u64 {
        self.p.pow(self.m() as u32)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "field p={}", self.p)?;
        if !self.ground_vars.is_empty() {
            write!(f, " ground({})", self.ground_vars.join(","))?;
        }
        write!(f, " vars({})", self.main_vars.join(","))
    }
}
