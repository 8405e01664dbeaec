//! Dense matrices over a generic entry type, so that the elimination routines
//! can run in checked machine integers and fall back to big integers on
//! overflow.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::IntMatrix;

/// Integer arithmetic where every operation may report overflow as `None`.
pub(crate) trait Entry: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn cmp_abs(&self, other: &Self) -> Ordering;
    fn neg(&self) -> Option<Self>;
    fn add(&self, other: &Self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
    /// Quotient rounded toward zero.
    fn div_trunc(&self, other: &Self) -> Option<Self>;
    /// Quotient rounded toward negative infinity.
    fn div_floor(&self, other: &Self) -> Option<Self>;
    fn is_multiple_of(&self, other: &Self) -> bool;
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Entry for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn add(&self, other: &Self) -> Option<Self> {
        self.checked_add(*other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn div_trunc(&self, other: &Self) -> Option<Self> {
        self.checked_div(*other)
    }
    fn div_floor(&self, other: &Self) -> Option<Self> {
        if *self == i64::MIN && *other == -1 {
            return None;
        }
        Some(Integer::div_floor(self, other))
    }
    fn is_multiple_of(&self, other: &Self) -> bool {
        if *other == 0 {
            *self == 0
        } else {
            self.checked_rem(*other).is_none_or(|r| r == 0)
        }
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i64()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

/// Big integers as an [`Entry`] that never overflows.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Big(pub BigInt);

impl Entry for Big {
    fn zero() -> Self {
        Big(BigInt::zero())
    }
    fn one() -> Self {
        Big(BigInt::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.0.magnitude().cmp(other.0.magnitude())
    }
    fn neg(&self) -> Option<Self> {
        Some(Big(-&self.0))
    }
    fn add(&self, other: &Self) -> Option<Self> {
        Some(Big(&self.0 + &other.0))
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(Big(&self.0 * &other.0))
    }
    fn div_trunc(&self, other: &Self) -> Option<Self> {
        Some(Big(&self.0 / &other.0))
    }
    fn div_floor(&self, other: &Self) -> Option<Self> {
        Some(Big(self.0.div_floor(&other.0)))
    }
    fn is_multiple_of(&self, other: &Self) -> bool {
        if other.0.is_zero() {
            self.0.is_zero()
        } else {
            (&self.0 % &other.0).is_zero()
        }
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(Big(v.clone()))
    }
    fn to_big(&self) -> BigInt {
        self.0.clone()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Dense<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: Entry> Dense<T> {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![T::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = T::one();
        }
        Dense { rows: n, cols: n, data }
    }

    pub fn from_matrix(m: &IntMatrix) -> Option<Self> {
        let data = (0..m.rows())
            .flat_map(|i| m.row(i).iter())
            .map(T::from_big)
            .collect::<Option<Vec<T>>>()?;
        Some(Dense { rows: m.rows(), cols: m.cols(), data })
    }

    pub fn to_matrix(&self) -> IntMatrix {
        IntMatrix::from_vec(self.rows, self.cols, self.data.iter().map(T::to_big).collect())
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += k * row[src]`
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, k: &T) -> Option<()> {
        if k.is_zero() {
            return Some(());
        }
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if !s.is_zero() {
                let v = self.data[dst * self.cols + j].add(&s.mul(k)?)?;
                self.data[dst * self.cols + j] = v;
            }
        }
        Some(())
    }

    /// `col[dst] += k * col[src]`
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, k: &T) -> Option<()> {
        if k.is_zero() {
            return Some(());
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if !s.is_zero() {
                let v = self.data[i * self.cols + dst].add(&s.mul(k)?)?;
                self.data[i * self.cols + dst] = v;
            }
        }
        Some(())
    }

    pub fn negate_row(&mut self, r: usize) -> Option<()> {
        for j in 0..self.cols {
            let v = self.data[r * self.cols + j].neg()?;
            self.data[r * self.cols + j] = v;
        }
        Some(())
    }
}
