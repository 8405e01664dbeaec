use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use std::cmp::Ordering;

use super::dense::{Big, Dense, Entry};
use super::IntMatrix;
use crate::error::{Error, Result};

/// Smith normal form `left * m * right = diag` with unimodular transforms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfDecomposition {
    pub left: IntMatrix,
    pub diag: IntMatrix,
    pub right: IntMatrix,
    /// `d_1, ..., d_k` for `k = min(rows, cols)`, non-negative, `d_i | d_{i+1}`
    /// (zeros last).
    pub diagonal: Vec<BigInt>,
}

impl SnfDecomposition {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|d| !d.is_zero()).count()
    }

    /// Check every contract of the decomposition against the input matrix.
    pub fn verify(&self, m: &IntMatrix) -> std::result::Result<(), String> {
        if self.left.mul(m).mul(&self.right) != self.diag {
            return Err("left * m * right != diag".into());
        }
        if !self.left.det().abs().is_one() {
            return Err("left transform is not unimodular".into());
        }
        if !self.right.det().abs().is_one() {
            return Err("right transform is not unimodular".into());
        }
        self.check_diagonal()
    }

    fn check_diagonal(&self) -> std::result::Result<(), String> {
        for i in 0..self.diag.rows() {
            for j in 0..self.diag.cols() {
                let v = &self.diag[(i, j)];
                if i == j {
                    if *v != self.diagonal[i] {
                        return Err(format!("diagonal entry {i} disagrees with the listed diagonal"));
                    }
                } else if !v.is_zero() {
                    return Err(format!("off-diagonal entry ({i}, {j}) is nonzero"));
                }
            }
        }
        if self.diagonal.iter().any(Signed::is_negative) {
            return Err("negative diagonal entry".into());
        }
        for w in self.diagonal.windows(2) {
            let divides = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            if !divides {
                return Err(format!("divisibility chain broken: {} does not divide {}", w[0], w[1]));
            }
        }
        Ok(())
    }

    /// Some integer `x` with `m x = b`, or `None` if none exists.
    pub fn solve(&self, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        let rows = self.left.rows();
        if b.len() != rows {
            return Err(Error::DimensionMismatch { expected: rows, found: b.len() });
        }
        // m x = b  <=>  diag (right^-1 x) = left b
        let c = self.left.mul_vec(b);
        let mut y = vec![BigInt::zero(); self.right.rows()];
        for (i, ci) in c.iter().enumerate() {
            match self.diagonal.get(i) {
                Some(d) if !d.is_zero() => {
                    let (q, r) = ci.div_rem(d);
                    if !r.is_zero() {
                        return Ok(None);
                    }
                    y[i] = q;
                }
                _ => {
                    if !ci.is_zero() {
                        return Ok(None);
                    }
                }
            }
        }
        Ok(Some(self.right.mul_vec(&y)))
    }
}

/// Position of the smallest nonzero absolute entry in the block `[t.., t..]`.
fn smallest_entry<T: Entry>(d: &Dense<T>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), &T)> = None;
    for i in t..d.rows {
        for j in t..d.cols {
            let v = d.at(i, j);
            if v.is_zero() {
                continue;
            }
            if best.is_none_or(|(_, b)| v.cmp_abs(b) == Ordering::Less) {
                best = Some(((i, j), v));
                if v.cmp_abs(&T::one()) == Ordering::Equal {
                    return Some((i, j));
                }
            }
        }
    }
    best.map(|(p, _)| p)
}

struct Transforms<T> {
    left: Dense<T>,
    diag: Dense<T>,
    right: Dense<T>,
}

/// The elimination itself; `None` if an entry overflows `T`.
fn eliminate<T: Entry>(m: Dense<T>) -> Option<Transforms<T>> {
    let (r, c) = (m.rows, m.cols);
    let mut d = m;
    let mut left = Dense::identity(r);
    let mut right = Dense::identity(c);
    let k = r.min(c);

    let mut t = 0;
    while t < k {
        let Some((pi, pj)) = smallest_entry(&d, t) else { break };
        d.swap_rows(t, pi);
        left.swap_rows(t, pi);
        d.swap_cols(t, pj);
        right.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..r {
                if d.at(i, t).is_zero() {
                    continue;
                }
                let q = d.at(i, t).div_trunc(d.at(t, t))?.neg()?;
                d.add_row_multiple(i, t, &q)?;
                left.add_row_multiple(i, t, &q)?;
                clean &= d.at(i, t).is_zero();
            }
            for j in t + 1..c {
                if d.at(t, j).is_zero() {
                    continue;
                }
                let q = d.at(t, j).div_trunc(d.at(t, t))?.neg()?;
                d.add_col_multiple(j, t, &q)?;
                right.add_col_multiple(j, t, &q)?;
                clean &= d.at(t, j).is_zero();
            }
            if !clean {
                // a remainder smaller than the pivot is left in row or column t
                let mut best = (t, t);
                for i in t + 1..r {
                    if !d.at(i, t).is_zero() && d.at(i, t).cmp_abs(d.at(best.0, best.1)) == Ordering::Less {
                        best = (i, t);
                    }
                }
                for j in t + 1..c {
                    if !d.at(t, j).is_zero() && d.at(t, j).cmp_abs(d.at(best.0, best.1)) == Ordering::Less {
                        best = (t, j);
                    }
                }
                d.swap_rows(t, best.0);
                left.swap_rows(t, best.0);
                d.swap_cols(t, best.1);
                right.swap_cols(t, best.1);
                continue;
            }
            let pivot = d.at(t, t).clone();
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| !d.at(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    d.add_row_multiple(t, i, &T::one())?;
                    left.add_row_multiple(t, i, &T::one())?;
                }
                None => break,
            }
        }
        if d.at(t, t).is_negative() {
            d.negate_row(t)?;
            left.negate_row(t)?;
        }
        t += 1;
    }
    Some(Transforms { left, diag: d, right })
}

/// Smith normal form by row and column gcd elimination, always pivoting on the
/// smallest available entry. Runs in machine integers when the entries allow
/// and redoes the work in big integers on overflow.
pub fn snf(m: &IntMatrix) -> SnfDecomposition {
    let (out, checked) = match Dense::<i64>::from_matrix(m).and_then(eliminate) {
        Some(t) => {
            let out = decomposition(&t);
            let checked = if cfg!(debug_assertions) { check_small(m, &t, &out) } else { Ok(()) };
            (out, checked)
        }
        None => {
            let t = eliminate(Dense::<Big>::from_matrix(m).expect("big integers hold any entry"))
                .expect("big integer arithmetic does not overflow");
            let out = decomposition(&t);
            let checked = if cfg!(debug_assertions) { out.verify(m) } else { Ok(()) };
            (out, checked)
        }
    };
    if let Err(e) = checked {
        panic!("Smith normal form invariant violated: {e}");
    }
    out
}

fn decomposition<T: Entry>(t: &Transforms<T>) -> SnfDecomposition {
    let k = t.diag.rows.min(t.diag.cols);
    SnfDecomposition {
        left: t.left.to_matrix(),
        diag: t.diag.to_matrix(),
        right: t.right.to_matrix(),
        diagonal: (0..k).map(|i| t.diag.at(i, i).to_big()).collect(),
    }
}

/// The same checks as [`SnfDecomposition::verify`], in checked `i128` where
/// possible.
fn check_small(m: &IntMatrix, t: &Transforms<i64>, out: &SnfDecomposition) -> std::result::Result<(), String> {
    let wide = |d: &Dense<i64>| Dense { rows: d.rows, cols: d.cols, data: d.data.iter().map(|&v| v as i128).collect() };
    let mul = |a: &Dense<i128>, b: &Dense<i128>| -> Option<Dense<i128>> {
        let mut data = vec![0i128; a.rows * b.cols];
        for i in 0..a.rows {
            for l in 0..a.cols {
                let x = a.data[i * a.cols + l];
                if x == 0 {
                    continue;
                }
                for j in 0..b.cols {
                    let p = x.checked_mul(b.data[l * b.cols + j])?;
                    data[i * b.cols + j] = data[i * b.cols + j].checked_add(p)?;
                }
            }
        }
        Some(Dense { rows: a.rows, cols: b.cols, data })
    };
    let input = Dense::<i64>::from_matrix(m).expect("the input fits when elimination did");
    let product = mul(&wide(&t.left), &wide(&input)).and_then(|lm| mul(&lm, &wide(&t.right)));
    match product {
        Some(p) if p == wide(&t.diag) => {}
        Some(_) => return Err("left * m * right != diag".into()),
        None => return out.verify(m),
    }
    if !out.left.det().abs().is_one() {
        return Err("left transform is not unimodular".into());
    }
    if !out.right.det().abs().is_one() {
        return Err("right transform is not unimodular".into());
    }
    out.check_diagonal()
}

/// Rank over the rationals.
pub fn rank(m: &IntMatrix) -> usize {
    snf(m).rank()
}

/// Some integer solution of `m x = b`, or `None` if the system has none.
pub fn solve_diophantine(m: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch { expected: m.rows(), found: b.len() });
    }
    snf(m).solve(b)
}

/// Cokernel `Z^rows / im(m)` as free rank plus torsion invariant factors (> 1).
pub fn coker_invariants(m: &IntMatrix) -> (usize, Vec<BigInt>) {
    let s = snf(m);
    let free = m.rows() - s.rank();
    let torsion = s.diagonal.into_iter().filter(|d| *d > BigInt::one()).collect();
    (free, torsion)
}
