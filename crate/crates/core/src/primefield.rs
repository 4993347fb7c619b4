//! Arithmetic over the prime field F_p and the dual numbers F_p[ε]/(ε²),
//! together with the dense matrix kernels every other module is built on.
//!
//! Residues are stored as `u32` and the modulus is capped at 2^16 so that a
//! product of two residues always fits in 32 bits and dot products can be
//! accumulated in `u64` without intermediate reduction.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_MODULUS: u32 = u16::MAX as u32;

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

pub fn check_prime(p: u64) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p > MAX_MODULUS as u64 {
        return Err(Error::ModulusTooLarge(p));
    }
    Ok(p as u32)
}

/// Reduce a signed integer into `[0, p)`.
#[inline]
pub fn reduce(value: i64, p: u32) -> u32 {
    value.rem_euclid(p as i64) as u32
}

#[inline]
pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub(crate) fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub(crate) fn pow_mod(mut base: u32, mut exp: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue (Fermat).
pub(crate) fn inv_mod(a: u32, p: u32) -> Option<u32> {
    if a % p == 0 {
        None
    } else {
        Some(pow_mod(a, p as u64 - 2, p))
    }
}

/// An element of F_p.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeScalar {
    residue: u32,
    modulus: u32,
}

impl PrimeScalar {
    /// The modulus is trusted to be prime; use [`PrimeScalar::checked`] at
    /// API boundaries.
    pub fn new(value: i64, p: u32) -> Self {
        PrimeScalar {
            residue: reduce(value, p),
            modulus: p,
        }
    }

    pub fn checked(value: i64, p: u64) -> Result<Self> {
        let p = check_prime(p)?;
        Ok(Self::new(value, p))
    }

    pub fn zero(p: u32) -> Self {
        Self::new(0, p)
    }

    pub fn one(p: u32) -> Self {
        Self::new(1, p)
    }

    pub fn residue(self) -> u32 {
        self.residue
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.residue == 0
    }

    pub fn inverse(self) -> Option<Self> {
        inv_mod(self.residue, self.modulus).map(|r| PrimeScalar {
            residue: r,
            modulus: self.modulus,
        })
    }

    pub fn pow(self, exp: u64) -> Self {
        PrimeScalar {
            residue: pow_mod(self.residue, exp, self.modulus),
            modulus: self.modulus,
        }
    }

    /// All elements of F_p in increasing residue order.
    pub fn all(p: u32) -> impl Iterator<Item = PrimeScalar> {
        (0..p).map(move |r| PrimeScalar {
            residue: r,
            modulus: p,
        })
    }
}

impl fmt::Debug for PrimeScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.residue, self.modulus)
    }
}

impl fmt::Display for PrimeScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

impl Add for PrimeScalar {
    type Output = PrimeScalar;
    fn add(self, rhs: PrimeScalar) -> PrimeScalar {
        debug_assert_eq!(self.modulus, rhs.modulus);
        PrimeScalar {
            residue: add_mod(self.residue, rhs.residue, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Sub for PrimeScalar {
    type Output = PrimeScalar;
    fn sub(self, rhs: PrimeScalar) -> PrimeScalar {
        debug_assert_eq!(self.modulus, rhs.modulus);
        PrimeScalar {
            residue: sub_mod(self.residue, rhs.residue, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Mul for PrimeScalar {
    type Output = PrimeScalar;
    fn mul(self, rhs: PrimeScalar) -> PrimeScalar {
        debug_assert_eq!(self.modulus, rhs.modulus);
        PrimeScalar {
            residue: mul_mod(self.residue, rhs.residue, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Neg for PrimeScalar {
    type Output = PrimeScalar;
    fn neg(self) -> PrimeScalar {
        PrimeScalar {
            residue: sub_mod(0, self.residue, self.modulus),
            modulus: self.modulus,
        }
    }
}

/// `value + slope·ε` with ε² = 0.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct DualScalar {
    pub value: PrimeScalar,
    pub slope: PrimeScalar,
}

impl DualScalar {
    pub fn new(value: PrimeScalar, slope: PrimeScalar) -> Self {
        debug_assert_eq!(value.modulus(), slope.modulus());
        DualScalar { value, slope }
    }

    /// `a + ε`, the point at which evaluation yields a derivative.
    pub fn variable(a: PrimeScalar) -> Self {
        DualScalar::new(a, PrimeScalar::one(a.modulus()))
    }

    pub fn constant(a: PrimeScalar) -> Self {
        DualScalar::new(a, PrimeScalar::zero(a.modulus()))
    }

    pub fn is_unit(self) -> bool {
        !self.value.is_zero()
    }

    /// (a + bε)⁻¹ = a⁻¹ − b a⁻² ε
    pub fn inverse(self) -> Option<Self> {
        let inv = self.value.inverse()?;
        Some(DualScalar::new(inv, -(self.slope * inv * inv)))
    }
}

impl Add for DualScalar {
    type Output = DualScalar;
    fn add(self, rhs: DualScalar) -> DualScalar {
        DualScalar::new(self.value + rhs.value, self.slope + rhs.slope)
    }
}

impl Sub for DualScalar {
    type Output = DualScalar;
    fn sub(self, rhs: DualScalar) -> DualScalar {
        DualScalar::new(self.value - rhs.value, self.slope - rhs.slope)
    }
}

impl Mul for DualScalar {
    type Output = DualScalar;
    fn mul(self, rhs: DualScalar) -> DualScalar {
        DualScalar::new(
            self.value * rhs.value,
            self.value * rhs.slope + self.slope * rhs.value,
        )
    }
}

impl Neg for DualScalar {
    type Output = DualScalar;
    fn neg(self) -> DualScalar {
        DualScalar::new(-self.value, -self.slope)
    }
}

/// Binomial coefficient binom(n, k) = n(n−1)…(n−k+1)/k! reduced mod p.
///
/// Negative `n` goes through binom(n, k) = (−1)^k binom(k−n−1, k); the
/// nonnegative case is evaluated digit-wise (Lucas), so `k ≥ p` is fine.
pub fn binom_mod(n: i64, k: u64, p: u64) -> Result<PrimeScalar> {
    let p = check_prime(p)?;
    Ok(PrimeScalar::new(binom_residue(n, k, p) as i64, p))
}

pub(crate) fn binom_residue(n: i64, k: u64, p: u32) -> u32 {
    if k == 0 {
        return 1 % p;
    }
    if n < 0 {
        let m = (k as i128 - n as i128 - 1) as u128;
        let r = lucas(m, k as u128, p);
        return if k % 2 == 1 { sub_mod(0, r, p) } else { r };
    }
    lucas(n as u128, k as u128, p)
}

fn lucas(mut n: u128, mut k: u128, p: u32) -> u32 {
    let pp = p as u128;
    let mut acc = 1 % p;
    while k > 0 {
        let (nd, kd) = ((n % pp) as u32, (k % pp) as u32);
        if kd > nd {
            return 0;
        }
        acc = mul_mod(acc, small_binom(nd, kd, p), p);
        n /= pp;
        k /= pp;
    }
    acc
}

// 0 ≤ k ≤ n < p
fn small_binom(n: u32, k: u32, p: u32) -> u32 {
    let mut num = 1 % p;
    let mut den = 1 % p;
    for i in 0..k {
        num = mul_mod(num, n - i, p);
        den = mul_mod(den, i + 1, p);
    }
    mul_mod(num, inv_mod(den, p).expect("k < p"), p)
}

/// (k!)⁻¹ mod p for k < p.
pub fn factorial_inverse(k: u64, p: u64) -> Result<PrimeScalar> {
    let p = check_prime(p)?;
    Ok(PrimeScalar::new(factorial_inverse_residue(k, p)? as i64, p))
}

pub(crate) fn factorial_inverse_residue(k: u64, p: u32) -> Result<u32> {
    if k >= p as u64 {
        return Err(Error::FactorialNotInvertible { k, p });
    }
    let mut f = 1 % p;
    for i in 1..=k {
        f = mul_mod(f, i as u32, p);
    }
    Ok(inv_mod(f, p).expect("k < p"))
}

/// Dense row-major matrix over F_p.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix {}x{} mod {}", self.rows, self.cols, self.p)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(p, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.data[i * c + j] = reduce(v, p);
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(p: u32, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(p, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, &v) in col.iter().enumerate() {
                m.data[i * columns.len() + j] = v % p;
            }
        }
        m
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn set_signed(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = reduce(v, self.p);
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn scale(&self, s: u32) -> Self {
        let p = self.p;
        FpMatrix {
            data: self.data.iter().map(|&v| mul_mod(v, s % p, p)).collect(),
            ..self.clone()
        }
    }

    /// `self + s·other`
    pub fn add_scaled(&mut self, other: &FpMatrix, s: u32) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p;
        let s = s % p;
        if s == 0 {
            return;
        }
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = add_mod(*a, mul_mod(b, s, p), p);
        }
    }

    pub fn mul(&self, rhs: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        assert_eq!(self.p, rhs.p);
        let p = self.p as u64;
        let mut out = FpMatrix::zeros(self.p, self.rows, rhs.cols);
        let mut acc = vec![0u64; rhs.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                let rrow = rhs.row(k);
                for (slot, &b) in acc.iter_mut().zip(rrow) {
                    *slot += a * b as u64;
                }
                // keep the accumulator well below u64 overflow
                if k % 4096 == 4095 {
                    acc.iter_mut().for_each(|a| *a %= p);
                }
            }
            for (j, a) in acc.iter().enumerate() {
                out.data[i * rhs.cols + j] = (a % p) as u32;
            }
        }
        out
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| {
                let s: u64 = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u64 * b as u64)
                    .sum();
                (s % p) as u32
            })
            .collect()
    }

    pub fn pow(&self, mut exp: u64) -> FpMatrix {
        assert!(self.is_square());
        let mut acc = FpMatrix::identity(self.p, self.rows);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `self·other − other·self`
    pub fn commutator(&self, other: &FpMatrix) -> FpMatrix {
        let mut c = self.mul(other);
        c.add_scaled(&other.mul(self), self.p - 1);
        c
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.row_reduce().len()
    }

    /// In-place reduced row echelon form; pivots are chosen at the lowest
    /// available column index. Returns the pivot columns.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..self.cols {
                    self.data.swap(piv * self.cols + j, r * self.cols + j);
                }
            }
            let inv = inv_mod(self.get(r, c), p).unwrap();
            for j in 0..self.cols {
                let v = self.get(r, j);
                self.data[r * self.cols + j] = mul_mod(v, inv, p);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if f == 0 {
                    continue;
                }
                let neg = p - f;
                for j in c..self.cols {
                    let v = self.get(r, j);
                    if v != 0 {
                        let cur = self.get(i, j);
                        self.data[i * self.cols + j] = add_mod(cur, mul_mod(v, neg, p), p);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Basis of {v : Mv = 0}, one vector per free column (in increasing
    /// column order), each with a 1 in its free column.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let p = self.p;
        let mut m = self.clone();
        let pivots = m.row_reduce();
        let mut is_pivot = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(r);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![0u32; self.cols];
            v[free] = 1 % p;
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = sub_mod(0, m.get(r, free), p);
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Result<FpMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = FpMatrix::zeros(self.p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.get(i, j);
            }
            aug.data[i * 2 * n + n + i] = 1 % self.p;
        }
        let pivots = aug.row_reduce();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut inv = FpMatrix::zeros(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.data[i * n + j] = aug.get(i, n + j);
            }
        }
        Ok(inv)
    }

    /// Injective byte encoding of (shape, residues) used for hashing group
    /// elements.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(8 + self.data.len() * 2);
        out.extend_from_slice(&(self.rows as u32).to_le_bytes());
        out.extend_from_slice(&(self.cols as u32).to_le_bytes());
        for &v in &self.data {
            out.extend_from_slice(&(v as u16).to_le_bytes());
        }
        out
    }

    /// Row-major residues as one flat vector (for spans of matrices).
    pub fn flatten(&self) -> Vec<u32> {
        self.data.clone()
    }

    pub fn block_diagonal(a: &FpMatrix, b: &FpMatrix) -> FpMatrix {
        assert_eq!(a.p, b.p);
        let mut m = FpMatrix::zeros(a.p, a.rows + b.rows, a.cols + b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                m.data[i * m.cols + j] = a.get(i, j);
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                m.data[(a.rows + i) * m.cols + a.cols + j] = b.get(i, j);
            }
        }
        m
    }

    pub fn sub_block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> FpMatrix {
        let mut m = FpMatrix::zeros(self.p, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = self.get(r0 + i, c0 + j);
            }
        }
        m
    }
}

impl Add for &FpMatrix {
    type Output = FpMatrix;
    fn add(self, rhs: &FpMatrix) -> FpMatrix {
        let mut out = self.clone();
        out.add_scaled(rhs, 1);
        out
    }
}

impl Sub for &FpMatrix {
    type Output = FpMatrix;
    fn sub(self, rhs: &FpMatrix) -> FpMatrix {
        let mut out = self.clone();
        out.add_scaled(rhs, self.p - 1);
        out
    }
}

impl Mul for &FpMatrix {
    type Output = FpMatrix;
    fn mul(self, rhs: &FpMatrix) -> FpMatrix {
        FpMatrix::mul(self, rhs)
    }
}

impl AddAssign<&FpMatrix> for FpMatrix {
    fn add_assign(&mut self, rhs: &FpMatrix) {
        self.add_scaled(rhs, 1);
    }
}

/// Matrix over F_p[ε], stored as `value + ε·slope`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualMatrix {
    pub value: FpMatrix,
    pub slope: FpMatrix,
}

impl DualMatrix {
    pub fn new(value: FpMatrix, slope: FpMatrix) -> Self {
        assert_eq!((value.rows, value.cols), (slope.rows, slope.cols));
        DualMatrix { value, slope }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        DualMatrix::new(FpMatrix::identity(p, n), FpMatrix::zeros(p, n, n))
    }

    pub fn scale(&self, s: DualScalar) -> Self {
        let (a, b) = (s.value.residue(), s.slope.residue());
        let mut slope = self.slope.scale(a);
        slope.add_scaled(&self.value, b);
        DualMatrix::new(self.value.scale(a), slope)
    }

    pub fn mul(&self, rhs: &DualMatrix) -> DualMatrix {
        let mut slope = self.value.mul(&rhs.slope);
        slope += &self.slope.mul(&rhs.value);
        DualMatrix::new(self.value.mul(&rhs.value), slope)
    }

    pub fn add_assign(&mut self, rhs: &DualMatrix) {
        self.value += &rhs.value;
        self.slope += &rhs.slope;
    }
}

/// A subspace of F_p^n held in reduced row echelon form, grown one vector
/// at a time.
#[derive(Clone, Debug)]
pub struct Subspace {
    p: u32,
    ambient: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(p: u32, ambient: usize) -> Self {
        Subspace {
            p,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn spanned_by<'a>(p: u32, ambient: usize, vs: impl IntoIterator<Item = &'a Vec<u32>>) -> Self {
        let mut s = Subspace::new(p, ambient);
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Residual of `v` after elimination against the current basis.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.ambient);
        let p = self.p;
        let mut w = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let f = w[c];
            if f == 0 {
                continue;
            }
            let neg = p - f;
            for (x, &r) in w.iter_mut().zip(row) {
                if r != 0 {
                    *x = add_mod(*x, mul_mod(r, neg, p), p);
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let p = self.p;
        let mut w = self.reduce(v);
        let Some(c) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(w[c], p).unwrap();
        w.iter_mut().for_each(|x| *x = mul_mod(*x, inv, p));
        for row in self.rows.iter_mut() {
            let f = row[c];
            if f == 0 {
                continue;
            }
            let neg = p - f;
            for (x, &r) in row.iter_mut().zip(&w) {
                if r != 0 {
                    *x = add_mod(*x, mul_mod(r, neg, p), p);
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < c);
        self.pivots.insert(pos, c);
        self.rows.insert(pos, w);
        true
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.contains_subspace(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binom_examples() {
        assert_eq!(binom_mod(5, 2, 3).unwrap().residue(), 1);
        for p in [2u64, 3, 5, 7] {
            for n in -20..20 {
                assert_eq!(binom_mod(n, 0, p).unwrap().residue(), 1);
            }
            assert_eq!(binom_mod(p as i64, 1, p).unwrap().residue(), 0);
        }
        assert_eq!(binom_mod(3, 2, 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn binom_minus_one_matches_falling_factorial() {
        for p in [2u32, 3, 5, 7, 11, 13] {
            for k in 0..p as u64 {
                // brute force: (−1)(−2)…(−k) / k!
                let mut num: i64 = 1;
                for i in 0..k as i64 {
                    num = (num * (-1 - i)).rem_euclid(p as i64);
                }
                let brute = mul_mod(num as u32, factorial_inverse_residue(k, p).unwrap(), p);
                let expected = if k % 2 == 0 { 1 } else { p - 1 };
                assert_eq!(brute, expected % p);
                assert_eq!(binom_mod(-1, k, p as u64).unwrap().residue(), brute);
            }
        }
    }

    #[test]
    fn factorial_inverse_examples() {
        assert_eq!(factorial_inverse(0, 7).unwrap().residue(), 1);
        assert_eq!(factorial_inverse(2, 5).unwrap().residue(), 3);
        assert_eq!(factorial_inverse(4, 5).unwrap().residue(), 4);
        assert_eq!(
            factorial_inverse(5, 5),
            Err(Error::FactorialNotInvertible { k: 5, p: 5 })
        );
    }

    #[test]
    fn nullspace_examples() {
        for n in 1..5 {
            assert_eq!(FpMatrix::zeros(5, n, n).nullspace().len(), n);
            assert!(FpMatrix::identity(5, n).nullspace().is_empty());
        }
        let m = FpMatrix::from_rows(7, &[vec![1, 2, 3], vec![2, 4, 6]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(m.apply(v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn inverse_and_singular() {
        let m = FpMatrix::from_rows(5, &[vec![1, 2], vec![3, 4]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let s = FpMatrix::from_rows(5, &[vec![1, 2], vec![2, 4]]);
        assert_eq!(s.inverse(), Err(Error::Singular));
    }

    #[test]
    fn dual_units() {
        let p = 7;
        let x = DualScalar::new(PrimeScalar::new(3, p), PrimeScalar::new(5, p));
        let y = x.inverse().unwrap();
        assert_eq!(x * y, DualScalar::constant(PrimeScalar::one(p)));
        assert!(!DualScalar::new(PrimeScalar::zero(p), PrimeScalar::one(p)).is_unit());
    }

    #[test]
    fn subspace_insert_and_reduce() {
        let mut s = Subspace::new(3, 3);
        assert!(s.insert(&[1, 1, 0]));
        assert!(s.insert(&[0, 1, 1]));
        assert!(!s.insert(&[1, 2, 1]));
        assert!(s.contains(&[1, 0, 2]));
        assert_eq!(s.dim(), 2);
    }
}
