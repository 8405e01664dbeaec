use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::dense::{Big, Dense, Entry};
use super::{snf, IntMatrix};
use crate::error::{Error, Result};

/// A sublattice of `Z^n` given by linearly independent basis rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    ambient: usize,
    basis: IntMatrix,
}

impl LatticeBasis {
    /// The rows must be linearly independent; they are brought to Hermite form.
    pub fn from_independent_rows(ambient: usize, rows: IntMatrix) -> LatticeBasis {
        assert_eq!(rows.cols(), ambient, "basis rows live in the ambient space");
        let basis = hnf(&rows);
        debug_assert_eq!(basis.rows(), rows.rows(), "basis rows must be independent");
        LatticeBasis { ambient, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    /// Basis vectors as rows.
    pub fn matrix(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<BigInt>> {
        self.basis.row_vectors()
    }

    /// Coordinates of `v` in the basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: v.len() });
        }
        snf::solve_diophantine(&self.basis.transpose(), v)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        matches!(self.coordinates(v), Ok(Some(_)))
    }

    /// `sum coords[i] * basis[i]`
    pub fn combine(&self, coords: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(coords.len(), self.rank(), "one coordinate per basis vector");
        let mut out = vec![BigInt::zero(); self.ambient];
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(self.basis.row(i)) {
                if !b.is_zero() {
                    *o += c * b;
                }
            }
        }
        out
    }

    /// Index in `Z^n` for full-rank lattices.
    pub fn index(&self) -> Option<BigInt> {
        (self.rank() == self.ambient).then(|| self.basis.det().abs())
    }
}

/// Row echelon form on the first `ncols` columns by unimodular row operations,
/// applied to whole rows. Pivots are positive and entries above them reduced
/// into `[0, pivot)`. Returns the number of pivots, whose rows come first, or
/// `None` on overflow.
fn echelon<T: Entry>(a: &mut Dense<T>, ncols: usize) -> Option<usize> {
    let rows = a.rows;
    let mut p = 0;
    for j in 0..ncols {
        if p == rows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in p..rows {
                if !a.at(i, j).is_zero() && best.is_none_or(|b| a.at(i, j).cmp_abs(a.at(b, j)) == Ordering::Less) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            a.swap_rows(p, b);
            let mut done = true;
            for i in p + 1..rows {
                if a.at(i, j).is_zero() {
                    continue;
                }
                let q = a.at(i, j).div_floor(a.at(p, j))?.neg()?;
                a.add_row_multiple(i, p, &q)?;
                done &= a.at(i, j).is_zero();
            }
            if done {
                break;
            }
        }
        if a.at(p, j).is_zero() {
            continue;
        }
        if a.at(p, j).is_negative() {
            a.negate_row(p)?;
        }
        for i in 0..p {
            let q = a.at(i, j).div_floor(a.at(p, j))?.neg()?;
            a.add_row_multiple(i, p, &q)?;
        }
        p += 1;
    }
    Some(p)
}

/// Echelon form of `m` on its first `ncols` columns, in machine integers when
/// possible.
fn echelon_of(m: &IntMatrix, ncols: usize) -> (IntMatrix, usize) {
    if let Some(mut a) = Dense::<i64>::from_matrix(m) {
        if let Some(p) = echelon(&mut a, ncols) {
            return (a.to_matrix(), p);
        }
    }
    let mut a = Dense::<Big>::from_matrix(m).expect("big integers hold any entry");
    let p = echelon(&mut a, ncols).expect("big integer arithmetic does not overflow");
    (a.to_matrix(), p)
}

/// Row Hermite normal form: the nonzero rows of the echelon form, which form a
/// basis of the row lattice.
pub fn hnf(m: &IntMatrix) -> IntMatrix {
    let (a, p) = echelon_of(m, m.cols());
    a.select_rows(&(0..p).collect::<Vec<_>>())
}

/// Basis (rows, Hermite form) of the integer kernel `{x : m x = 0}`.
pub fn kernel(m: &IntMatrix) -> IntMatrix {
    let n = m.cols();
    let t = m.transpose();
    // [m^T | I]: row reducing the left block records the combinations on the right
    let mut aug = IntMatrix::zeros(n, m.rows() + n);
    for i in 0..n {
        for j in 0..m.rows() {
            aug[(i, j)] = t[(i, j)].clone();
        }
        aug[(i, m.rows() + i)] = BigInt::from(1);
    }
    let (aug, p) = echelon_of(&aug, m.rows());
    let right: Vec<usize> = (m.rows()..m.rows() + n).collect();
    let ker = aug.select_rows(&(p..n).collect::<Vec<_>>()).select_cols(&right);
    hnf(&ker)
}

/// Basis of the lattice spanned by the columns of `m`.
pub fn image_lattice(m: &IntMatrix) -> LatticeBasis {
    LatticeBasis { ambient: m.rows(), basis: hnf(&m.transpose()) }
}

/// Modulus of a congruence: a positive integer, or infinity meaning equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Modulus {
    Finite(BigInt),
    Infinite,
}

/// `row . x ≡ 0 (mod modulus)`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    pub row: Vec<BigInt>,
    pub modulus: Modulus,
}

/// Basis of `{x in Z^n : every congruence holds}`.
///
/// Computed as the projection onto `x` of the integer kernel of
/// `[rows | -diag(finite moduli)]`; infinite moduli get no slack column and so
/// become exact equations.
pub fn congruence_lattice(ambient: usize, constraints: &[Congruence]) -> Result<LatticeBasis> {
    if let Some(c) = constraints.iter().find(|c| c.row.len() != ambient) {
        return Err(Error::DimensionMismatch { expected: ambient, found: c.row.len() });
    }
    let slack = constraints.iter().filter(|c| c.modulus != Modulus::Infinite).count();
    let mut k = IntMatrix::zeros(constraints.len(), ambient + slack);
    let mut s = ambient;
    for (i, c) in constraints.iter().enumerate() {
        for (j, v) in c.row.iter().enumerate() {
            k[(i, j)] = v.clone();
        }
        if let Modulus::Finite(m) = &c.modulus {
            k[(i, s)] = -m;
            s += 1;
        }
    }
    let ker = kernel(&k);
    let proj = ker.select_cols(&(0..ambient).collect::<Vec<_>>());
    Ok(LatticeBasis::from_independent_rows(ambient, proj))
}
