//! Exact dense linear algebra over small prime fields and the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

pub trait Field: Clone + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn random<R: Rng>(&self, rng: &mut R) -> Self::Elem;
    fn fmt_elem(&self, a: &Self::Elem) -> String;

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.sub(&self.zero(), a)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        PrimeField { p }
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (*a as u128 * *b as u128 % self.p as u128) as u64
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        pow_mod(*a, self.p - 2, self.p)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn random<R: Rng>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn fmt_elem(&self, a: &u64) -> String {
        a.to_string()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn random<R: Rng>(&self, rng: &mut R) -> BigRational {
        BigRational::from_integer(BigInt::from(rng.gen_range(-50i64..=50)))
    }
    fn fmt_elem(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else if a.is_negative() {
            format!("-{}/{}", a.numer().abs(), a.denom())
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, v: E) -> Self {
        Matrix { rows, cols, data: vec![v; rows * cols] }
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<E>], zero: E) -> Self {
        let mut m = Matrix::filled(rows, cols.len(), zero);
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[Vec<E>], zero: E) -> Self {
        let mut m = Matrix::filled(rows.len(), cols, zero);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn columns(&self) -> Vec<Vec<E>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }
}

pub fn zeros<F: Field>(f: &F, rows: usize, cols: usize) -> Matrix<F::Elem> {
    Matrix::filled(rows, cols, f.zero())
}

pub fn identity<F: Field>(f: &F, n: usize) -> Matrix<F::Elem> {
    let mut m = zeros(f, n, n);
    for i in 0..n {
        m.set(i, i, f.one());
    }
    m
}

pub fn is_zero_matrix<F: Field>(f: &F, m: &Matrix<F::Elem>) -> bool {
    m.data.iter().all(|x| f.is_zero(x))
}

pub fn mat_mul<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows, "dimension mismatch in product");
    let mut out = zeros(f, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(i, k);
            if f.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let y = b.get(k, j);
                if f.is_zero(y) {
                    continue;
                }
                let v = f.add(out.get(i, j), &f.mul(x, y));
                out.set(i, j, v);
            }
        }
    }
    out
}

pub fn mat_add<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    let data = a.data.iter().zip(&b.data).map(|(x, y)| f.add(x, y)).collect();
    Matrix { rows: a.rows, cols: a.cols, data }
}

pub fn mat_scale<F: Field>(f: &F, c: &F::Elem, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let data = a.data.iter().map(|x| f.mul(c, x)).collect();
    Matrix { rows: a.rows, cols: a.cols, data }
}

pub fn mat_vec<F: Field>(f: &F, a: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    assert_eq!(a.cols, v.len());
    (0..a.rows)
        .map(|i| {
            let mut s = f.zero();
            for (k, x) in v.iter().enumerate() {
                if !f.is_zero(x) {
                    s = f.add(&s, &f.mul(a.get(i, k), x));
                }
            }
            s
        })
        .collect()
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<F: Field>(f: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
            continue;
        };
        if p != r {
            for j in 0..m.cols {
                m.data.swap(p * m.cols + j, r * m.cols + j);
            }
        }
        let inv = f.inv(m.get(r, c));
        for j in c..m.cols {
            let v = f.mul(m.get(r, j), &inv);
            m.set(r, j, v);
        }
        for i in 0..m.rows {
            if i == r {
                continue;
            }
            let factor = m.get(i, c).clone();
            if f.is_zero(&factor) {
                continue;
            }
            for j in c..m.cols {
                let y = m.get(r, j);
                if f.is_zero(y) {
                    continue;
                }
                let v = f.sub(m.get(i, j), &f.mul(&factor, y));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    let mut m = m.clone();
    rref(f, &mut m).len()
}

/// Basis of the right kernel {x : m x = 0}.
pub fn nullspace<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut r = m.clone();
    let pivots = rref(f, &mut r);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![f.zero(); m.cols];
        v[free] = f.one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(r.get(row, free));
        }
        basis.push(v);
    }
    basis
}

/// Some x with a x = b, if one exists.
pub fn solve<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    assert_eq!(a.rows, b.len());
    let mut aug = zeros(f, a.rows, a.cols + 1);
    for i in 0..a.rows {
        for j in 0..a.cols {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, a.cols, b[i].clone());
    }
    let pivots = rref(f, &mut aug);
    if pivots.last() == Some(&a.cols) {
        return None;
    }
    let mut x = vec![f.zero(); a.cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug.get(row, a.cols).clone();
    }
    Some(x)
}

/// Basis of the span of the given vectors (as rows in echelon form).
pub fn span_basis<F: Field>(f: &F, dim: usize, vecs: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    if vecs.is_empty() {
        return Vec::new();
    }
    let mut m = Matrix::from_rows(dim, vecs, f.zero());
    let k = rref(f, &mut m).len();
    (0..k).map(|i| m.row(i).to_vec()).collect()
}

/// Indices of a maximal linearly independent subfamily, chosen greedily in order.
pub fn independent_subset<F: Field>(f: &F, dim: usize, vecs: &[Vec<F::Elem>]) -> Vec<usize> {
    let m = Matrix::from_columns(dim, vecs, f.zero());
    let mut r = m;
    rref(f, &mut r)
}

/// Columns of `extra` that extend a basis of span(`base`) greedily.
pub fn complement_indices<F: Field>(
    f: &F,
    dim: usize,
    base: &[Vec<F::Elem>],
    extra: &[Vec<F::Elem>],
) -> Vec<usize> {
    let mut all: Vec<Vec<F::Elem>> = base.to_vec();
    all.extend(extra.iter().cloned());
    independent_subset(f, dim, &all)
        .into_iter()
        .filter(|&i| i >= base.len())
        .map(|i| i - base.len())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(f: &PrimeField, rows: usize, cols: usize, v: &[i64]) -> Matrix<u64> {
        Matrix { rows, cols, data: v.iter().map(|&x| f.from_i64(x)).collect() }
    }

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(101);
        for a in 1..101 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
    }

    #[test]
    fn kernel_and_rank() {
        let f = PrimeField::new(7);
        let a = m(&f, 2, 3, &[1, 2, 3, 2, 4, 6]);
        assert_eq!(rank(&f, &a), 1);
        let ker = nullspace(&f, &a);
        assert_eq!(ker.len(), 2);
        for v in ker {
            assert!(mat_vec(&f, &a, &v).iter().all(|x| *x == 0));
        }
    }

    #[test]
    fn solve_consistent_and_not() {
        let f = PrimeField::new(101);
        let a = m(&f, 2, 2, &[1, 1, 0, 0]);
        assert!(solve(&f, &a, &[3, 0]).is_some());
        assert!(solve(&f, &a, &[3, 1]).is_none());
    }

    #[test]
    fn rationals_agree_with_prime_rank() {
        let q = RationalField;
        let a = Matrix {
            rows: 3,
            cols: 3,
            data: [1, 2, 3, 4, 5, 6, 7, 8, 9].iter().map(|&x| q.from_i64(x)).collect(),
        };
        assert_eq!(rank(&q, &a), 2);
        let f = PrimeField::new(101);
        assert_eq!(rank(&f, &m(&f, 3, 3, &[1, 2, 3, 4, 5, 6, 7, 8, 9])), 2);
    }
}
