//! Smith normal form of integer matrices.
//!
//! Elimination runs on `i64` with checked arithmetic and restarts on
//! `BigInt` entries if anything overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Invariant factors of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithNormalForm {
    /// Nonzero diagonal entries, positive, each dividing the next.
    pub factors: Vec<BigInt>,
}

impl SmithNormalForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Factors greater than one: the torsion coefficients of the cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

trait Entry: Clone + PartialEq {
    fn is_zero(&self) -> bool;
    fn mag_lt(&self, other: &Self) -> bool;
    /// `self - q * b`.
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn add(&self, b: &Self) -> Option<Self>;
    fn quot(&self, b: &Self) -> Self;
    fn divides(&self, b: &Self) -> bool;
    fn neg(&self) -> Option<Self>;
    fn is_negative(&self) -> bool;
    fn to_big(&self) -> BigInt;
}

impl Entry for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn mag_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn add(&self, b: &Self) -> Option<Self> {
        self.checked_add(*b)
    }
    fn quot(&self, b: &Self) -> Self {
        self / b
    }
    fn divides(&self, b: &Self) -> bool {
        b % self == 0
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Entry for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mag_lt(&self, other: &Self) -> bool {
        self.abs() < other.abs()
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn add(&self, b: &Self) -> Option<Self> {
        Some(self + b)
    }
    fn quot(&self, b: &Self) -> Self {
        self / b
    }
    fn divides(&self, b: &Self) -> bool {
        b.is_multiple_of(self)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

struct Matrix<T> {
    rows: usize,
    cols: usize,
    a: Vec<T>,
}

impl<T: Entry> Matrix<T> {
    #[inline]
    fn at(&self, i: usize, j: usize) -> &T {
        &self.a[i * self.cols + j]
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i != k {
            for j in 0..self.cols {
                self.a.swap(i * self.cols + j, k * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j != k {
            for i in 0..self.rows {
                self.a.swap(i * self.cols + j, i * self.cols + k);
            }
        }
    }

    /// row_i -= q * row_k, on columns `from..`.
    fn row_op(&mut self, i: usize, k: usize, q: &T, from: usize) -> Option<()> {
        for j in from..self.cols {
            let b = self.at(k, j).clone();
            if b.is_zero() {
                continue;
            }
            let v = self.at(i, j).sub_mul(q, &b)?;
            self.a[i * self.cols + j] = v;
        }
        Some(())
    }

    /// col_j -= q * col_k, on rows `from..`.
    fn col_op(&mut self, j: usize, k: usize, q: &T, from: usize) -> Option<()> {
        for i in from..self.rows {
            let b = self.at(i, k).clone();
            if b.is_zero() {
                continue;
            }
            let v = self.at(i, j).sub_mul(q, &b)?;
            self.a[i * self.cols + j] = v;
        }
        Some(())
    }

    fn diagonalize(mut self) -> Option<Vec<BigInt>> {
        let mut out = Vec::new();
        for t in 0..self.rows.min(self.cols) {
            loop {
                // smallest nonzero magnitude in the trailing block
                let mut best: Option<(usize, usize)> = None;
                for i in t..self.rows {
                    for j in t..self.cols {
                        let x = self.at(i, j);
                        if !x.is_zero() && best.is_none_or(|(bi, bj)| x.mag_lt(self.at(bi, bj))) {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((bi, bj)) = best else {
                    return Some(finish(out));
                };
                self.swap_rows(t, bi);
                self.swap_cols(t, bj);
                let p = self.at(t, t).clone();
                let mut dirty = false;
                for i in t + 1..self.rows {
                    if !self.at(i, t).is_zero() {
                        let q = self.at(i, t).quot(&p);
                        self.row_op(i, t, &q, t)?;
                        dirty |= !self.at(i, t).is_zero();
                    }
                }
                for j in t + 1..self.cols {
                    if !self.at(t, j).is_zero() {
                        let q = self.at(t, j).quot(&p);
                        self.col_op(j, t, &q, t)?;
                        dirty |= !self.at(t, j).is_zero();
                    }
                }
                if dirty {
                    continue;
                }
                // pivot must divide the whole trailing block
                let bad = (t + 1..self.rows)
                    .find(|&i| (t + 1..self.cols).any(|j| !p.divides(self.at(i, j))));
                match bad {
                    Some(i) => {
                        for j in t..self.cols {
                            let v = self.at(t, j).add(self.at(i, j))?;
                            self.a[t * self.cols + j] = v;
                        }
                    }
                    None => break,
                }
            }
            let p = self.at(t, t).clone();
            out.push(if p.is_negative() { p.neg()?.to_big() } else { p.to_big() });
        }
        Some(finish(out))
    }
}

fn finish(mut factors: Vec<BigInt>) -> Vec<BigInt> {
    // the pivoting above already yields a divisibility chain; sorting keeps
    // the output canonical regardless
    factors.sort();
    factors
}

/// Smith normal form of a dense row-major matrix.
pub fn smith_normal_form(rows: usize, cols: usize, entries: &[i64]) -> SmithNormalForm {
    assert_eq!(entries.len(), rows * cols, "matrix shape");
    let small = Matrix { rows, cols, a: entries.to_vec() };
    let factors = match small.diagonalize() {
        Some(f) => f,
        None => {
            let big = Matrix { rows, cols, a: entries.iter().map(|&x| BigInt::from(x)).collect() };
            big.diagonalize().expect("big integers do not overflow")
        }
    };
    SmithNormalForm { factors }
}

/// Smith normal form of a matrix with arbitrary-precision entries.
pub fn smith_normal_form_big(rows: usize, cols: usize, entries: &[BigInt]) -> SmithNormalForm {
    assert_eq!(entries.len(), rows * cols, "matrix shape");
    let m = Matrix { rows, cols, a: entries.to_vec() };
    SmithNormalForm { factors: m.diagonalize().expect("big integers do not overflow") }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(smith_normal_form(3, 3, &[1, 0, 0, 0, 1, 0, 0, 0, 1]).factors, f(&[1, 1, 1]));
        assert_eq!(smith_normal_form(2, 2, &[2, 4, 6, 8]).factors, f(&[2, 4]));
        let z = smith_normal_form(2, 3, &[0; 6]);
        assert_eq!(z.rank(), 0);
        assert!(z.factors.is_empty());
    }

    #[test]
    fn divisibility_fixup() {
        // diag(2, 3) has invariant factors 1, 6
        assert_eq!(smith_normal_form(2, 2, &[2, 0, 0, 3]).factors, f(&[1, 6]));
        assert_eq!(smith_normal_form(2, 2, &[2, 0, 0, 3]).torsion(), f(&[6]));
    }

    #[test]
    fn overflow_promotes() {
        let big = i64::MAX / 2 + 7;
        let m = [big, big - 1, big - 3, big - 5];
        let snf = smith_normal_form(2, 2, &m);
        let e: Vec<BigInt> = m.iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(snf, smith_normal_form_big(2, 2, &e));
        // |det| = product of factors
        let det = &e[0] * &e[3] - &e[1] * &e[2];
        let prod: BigInt = snf.factors.iter().product();
        assert_eq!(prod, det.abs());
    }
}
