//! Integer matrices and row-style Hermite normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: Vec<Vec<BigInt>>,
    cols: usize,
}

impl IntegerMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Self { rows, cols }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
            cols,
        )
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Self::new(rows, n)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn into_rows(self) -> Vec<Vec<BigInt>> {
        self.rows
    }
}

/// Result of [`hermite_normal_form`]: `transform * input = form`, with
/// `transform` unimodular.
#[derive(Clone, Debug)]
pub struct Hermite {
    /// Echelon form: the first `rank` rows are nonzero with strictly increasing
    /// pivot columns, positive pivots, and entries above each pivot reduced
    /// into `[0, pivot)`. Remaining rows are zero.
    pub form: IntegerMatrix,
    pub transform: IntegerMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Hermite {
    /// Nonzero rows of the form: a basis of the row lattice.
    pub fn basis(&self) -> Vec<Vec<BigInt>> {
        self.form.rows[..self.rank].to_vec()
    }

    /// Basis of the left kernel `{x : x * input = 0}`.
    pub fn left_kernel(&self) -> Vec<Vec<BigInt>> {
        self.transform.rows[self.rank..].to_vec()
    }

    /// Integer coefficients of `v` in the HNF basis, if `v` lies in the row
    /// lattice. Back-substitution along the pivots.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.form.cols);
        let mut rest = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.rank);
        for (k, &col) in self.pivots.iter().enumerate() {
            // Entries left of this pivot must already be cleared.
            let prev = if k == 0 { 0 } else { self.pivots[k - 1] + 1 };
            if rest[prev..col].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let row = &self.form.rows[k];
            let (q, r) = rest[col].div_rem(&row[col]);
            if !r.is_zero() {
                return None;
            }
            for (x, y) in rest.iter_mut().zip(row) {
                *x -= &q * y;
            }
            coeffs.push(q);
        }
        if rest.iter().all(Zero::is_zero) {
            Some(coeffs)
        } else {
            None
        }
    }
}

fn row_sub(rows: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let src = rows[source].clone();
    for (x, y) in rows[target].iter_mut().zip(&src) {
        *x -= q * y;
    }
}

fn row_negate(row: &mut [BigInt]) {
    for x in row.iter_mut() {
        *x = -std::mem::take(x);
    }
}

pub fn hermite_normal_form(m: &IntegerMatrix) -> Hermite {
    let mut h = m.rows.clone();
    let mut u = IntegerMatrix::identity(m.nrows()).rows;
    let nrows = h.len();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..m.cols {
        if r == nrows {
            break;
        }
        // Euclid on column c among rows r.. until a single nonzero remains.
        loop {
            let best = (r..nrows)
                .filter(|&i| !h[i][c].is_zero())
                .min_by(|&i, &j| h[i][c].abs().cmp(&h[j][c].abs()));
            let Some(best) = best else { break };
            h.swap(r, best);
            u.swap(r, best);
            let mut done = true;
            for i in r + 1..nrows {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = h[i][c].div_floor(&h[r][c]);
                row_sub(&mut h, i, r, &q);
                row_sub(&mut u, i, r, &q);
                if !h[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            row_negate(&mut h[r]);
            row_negate(&mut u[r]);
        }
        for i in 0..r {
            let q = h[i][c].div_floor(&h[r][c]);
            row_sub(&mut h, i, r, &q);
            row_sub(&mut u, i, r, &q);
        }
        pivots.push(c);
        r += 1;
    }
    Hermite {
        form: IntegerMatrix::new(h, m.cols),
        transform: IntegerMatrix::new(u, m.nrows()),
        rank: r,
        pivots,
    }
}
