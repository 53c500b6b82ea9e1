//! Exact rank computations over `ℚ` and prime fields `GF(p)`.
//!
//! Matrices carry integer entries; every complex built by this crate has
//! coefficients in `{-1, 0, 1}`, so the field only enters when ranks are taken.
//! Over `ℚ` ranks use fraction-free (Bareiss) elimination, first in `i128`
//! with overflow checks and then in arbitrary precision if needed.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u32),
}

impl FieldSpec {
    pub fn prime(p: u32) -> Result<Self> {
        if p >= 1 << 16 {
            return Err(Error::InvalidField(format!("prime {p} must be below 2^16")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    pub fn characteristic(self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::PrimeField(2) => write!(f, "f2"),
            FieldSpec::PrimeField(3) => write!(f, "f3"),
            FieldSpec::PrimeField(p) => write!(f, "fp:{p}"),
        }
    }
}

/// Accepts `q`, `f2`, `f3`, `fp:P`.
impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "q" | "rationals" => Ok(FieldSpec::Rationals),
            "f2" => Ok(FieldSpec::PrimeField(2)),
            "f3" => Ok(FieldSpec::PrimeField(3)),
            other => {
                let p = other
                    .strip_prefix("fp:")
                    .and_then(|p| p.parse::<u32>().ok())
                    .ok_or_else(|| Error::InvalidField(format!("unknown field `{s}`")))?;
                FieldSpec::prime(p)
            }
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] += v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// `self * rhs` over the integers.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }

    /// True if every entry vanishes in the given field.
    pub fn is_zero_in(&self, field: FieldSpec) -> bool {
        match field {
            FieldSpec::Rationals => self.is_zero(),
            FieldSpec::PrimeField(p) => self.data.iter().all(|&v| v.rem_euclid(p as i64) == 0),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(row_perm[i], col_perm[j], self.get(i, j));
            }
        }
        out
    }
}

pub fn rank(m: &Matrix, field: FieldSpec) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    match field {
        FieldSpec::PrimeField(p) => rank_mod_p(m, p),
        FieldSpec::Rationals => rank_bareiss_i128(m).unwrap_or_else(|| rank_bareiss_big(m)),
    }
}

pub fn kernel_dim(m: &Matrix, field: FieldSpec) -> usize {
    m.cols - rank(m, field)
}

pub fn image_dim(m: &Matrix, field: FieldSpec) -> usize {
    rank(m, field)
}

fn rank_mod_p(m: &Matrix, p: u32) -> usize {
    let p = p as u64;
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<u64> = m
        .data
        .iter()
        .map(|&v| v.rem_euclid(p as i64) as u64)
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| a[r * cols + col] != 0) else {
            continue;
        };
        if piv != rank {
            for c in col..cols {
                a.swap(piv * cols + c, rank * cols + c);
            }
        }
        let inv = pow_mod(a[rank * cols + col], p - 2, p);
        for c in col..cols {
            a[rank * cols + c] = a[rank * cols + c] * inv % p;
        }
        for r in rank + 1..rows {
            let factor = a[r * cols + col];
            if factor == 0 {
                continue;
            }
            for c in col..cols {
                let sub = factor * a[rank * cols + c] % p;
                a[r * cols + c] = (a[r * cols + c] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Bareiss elimination in `i128`; `None` on overflow.
fn rank_bareiss_i128(m: &Matrix) -> Option<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<i128> = m.data.iter().map(|&v| v as i128).collect();
    let mut prev: i128 = 1;
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| a[r * cols + col] != 0) else {
            continue;
        };
        if piv != rank {
            for c in 0..cols {
                a.swap(piv * cols + c, rank * cols + c);
            }
        }
        let pivot = a[rank * cols + col];
        for r in rank + 1..rows {
            let lead = a[r * cols + col];
            for c in col + 1..cols {
                let x = pivot.checked_mul(a[r * cols + c])?;
                let y = lead.checked_mul(a[rank * cols + c])?;
                a[r * cols + c] = x.checked_sub(y)? / prev;
            }
            a[r * cols + col] = 0;
        }
        prev = pivot;
        rank += 1;
    }
    Some(rank)
}

fn rank_bareiss_big(m: &Matrix) -> usize {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<BigInt> = m.data.iter().map(|&v| BigInt::from(v)).collect();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| !a[r * cols + col].is_zero()) else {
            continue;
        };
        if piv != rank {
            for c in 0..cols {
                a.swap(piv * cols + c, rank * cols + c);
            }
        }
        let pivot = a[rank * cols + col].clone();
        for r in rank + 1..rows {
            let lead = a[r * cols + col].clone();
            for c in col + 1..cols {
                let v = (&pivot * &a[r * cols + c] - &lead * &a[rank * cols + c]) / &prev;
                a[r * cols + c] = v;
            }
            a[r * cols + col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Forces the arbitrary-precision Bareiss path (used to cross-check the `i128` path).
pub fn rank_rational_bareiss_bigint(m: &Matrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    rank_bareiss_big(m)
}

/// Plain Gaussian elimination over `BigRational`. Slow; a reference route for tests.
pub fn rank_rational_naive(m: &Matrix) -> usize {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<BigRational> = m
        .data
        .iter()
        .map(|&v| BigRational::from_integer(BigInt::from(v)))
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| !a[r * cols + col].is_zero()) else {
            continue;
        };
        for c in 0..cols {
            a.swap(piv * cols + c, rank * cols + c);
        }
        let inv = a[rank * cols + col].recip();
        for c in col..cols {
            a[rank * cols + c] = &a[rank * cols + c] * &inv;
        }
        for r in 0..rows {
            if r == rank || a[r * cols + col].is_zero() {
                continue;
            }
            let factor = a[r * cols + col].clone();
            for c in col..cols {
                let sub = &factor * &a[rank * cols + c];
                a[r * cols + c] = &a[r * cols + c] - sub;
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: FieldSpec = FieldSpec::Rationals;
    const F2: FieldSpec = FieldSpec::PrimeField(2);
    const F3: FieldSpec = FieldSpec::PrimeField(3);

    #[test]
    fn identity_and_characteristic() {
        for f in [Q, F2, F3] {
            assert_eq!(rank(&Matrix::identity(2), f), 2);
        }
        let two = Matrix::from_rows(&[vec![2]]);
        assert_eq!(rank(&two, F2), 0);
        assert_eq!(rank(&two, Q), 1);
    }

    #[test]
    fn kernel_and_image() {
        let z = Matrix::zeros(3, 4);
        assert_eq!(kernel_dim(&z, Q), 4);
        assert_eq!(image_dim(&z, Q), 0);
        assert_eq!(kernel_dim(&Matrix::identity(5), F3), 0);
    }

    #[test]
    fn field_parsing() {
        assert_eq!("q".parse::<FieldSpec>().unwrap(), Q);
        assert_eq!("f2".parse::<FieldSpec>().unwrap(), F2);
        assert_eq!(
            "fp:7".parse::<FieldSpec>().unwrap(),
            FieldSpec::PrimeField(7)
        );
        assert!("fp:9".parse::<FieldSpec>().is_err());
        assert!("fp:65537".parse::<FieldSpec>().is_err());
        assert!("r".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::PrimeField(7).to_string(), "fp:7");
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        // Hilbert-like integer matrix with large entries
        let n = 12;
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| ((i + 1) as i64).pow((j as u32) + 1) % 1_000_000_007)
                    .collect()
            })
            .collect();
        let m = Matrix::from_rows(&rows);
        assert_eq!(rank(&m, Q), rank_rational_naive(&m));
    }

    fn int_matrix(max_dim: usize, range: i64) -> impl Strategy<Value = Matrix> {
        (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
            prop::collection::vec(-range..=range, r * c).prop_map(move |data| Matrix {
                rows: r,
                cols: c,
                data,
            })
        })
    }

    fn sparse_entry() -> impl Strategy<Value = i64> {
        prop_oneof![4 => Just(0i64), 1 => Just(1i64), 1 => Just(-1i64), 1 => -3i64..=3]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn bareiss_matches_naive_rational(
            (r, c) in (1usize..=30, 1usize..=30),
            seed in prop::collection::vec(sparse_entry(), 900)
        ) {
            let m = Matrix { rows: r, cols: c, data: seed[..r * c].to_vec() };
            let naive = rank_rational_naive(&m);
            prop_assert_eq!(rank(&m, Q), naive);
            prop_assert_eq!(rank_rational_bareiss_bigint(&m), naive);
        }

        #[test]
        fn rank_invariant_under_permutation(m in int_matrix(8, 4), s in any::<u64>()) {
            use rand::{seq::SliceRandom, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(s);
            let mut rp: Vec<usize> = (0..m.rows()).collect();
            let mut cp: Vec<usize> = (0..m.cols()).collect();
            rp.shuffle(&mut rng);
            cp.shuffle(&mut rng);
            let pm = m.permute(&rp, &cp);
            for f in [Q, F2, F3, FieldSpec::PrimeField(7)] {
                prop_assert_eq!(rank(&m, f), rank(&pm, f));
                prop_assert_eq!(rank(&m, f), rank(&m.transpose(), f));
            }
        }

        #[test]
        fn rational_rank_dominates_prime_rank(m in int_matrix(8, 6)) {
            let q = rank(&m, Q);
            for p in [2u32, 3, 5, 7, 11] {
                prop_assert!(q >= rank(&m, FieldSpec::PrimeField(p)));
            }
            prop_assert!(q <= m.rows().min(m.cols()));
        }

        #[test]
        fn rank_nullity_gf3(data in prop::collection::vec(0i64..3, 64)) {
            let m = Matrix { rows: 8, cols: 8, data };
            prop_assert_eq!(kernel_dim(&m, F3) + image_dim(&m, F3), 8);
        }
    }
}
