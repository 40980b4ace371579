use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::IntMatrix;
use crate::{Error, Result};

pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut q = 3;
    while q * q <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 2;
    }
    true
}

fn check_prime(p: u32) -> Result<()> {
    if is_odd_prime(p as u64) {
        Ok(())
    } else {
        Err(Error::InvalidPrime(p as u64))
    }
}

pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub(crate) fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + b as u64) % p as u64) as u32
}

pub(crate) fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    add_mod(a, p - b % p, p)
}

/// Inverse by Fermat; `a` must be nonzero mod the prime `p`.
pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    let mut result = 1u32;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(result, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    result
}

pub(crate) fn reduce_big(x: &BigInt, p: u32) -> u32 {
    x.mod_floor(&BigInt::from(p)).to_u32().expect("residue fits in u32")
}

/// A vector over 𝔽_p with entries in `{0, …, p−1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpVector {
    p: u32,
    entries: Vec<u32>,
}

impl FpVector {
    /// Entries are reduced mod `p`.
    pub fn new(p: u32, entries: impl IntoIterator<Item = u32>) -> Self {
        FpVector { p, entries: entries.into_iter().map(|x| x % p).collect() }
    }

    pub fn zero(p: u32, n: usize) -> Self {
        FpVector { p, entries: alloc::vec![0; n] }
    }

    pub fn from_ints(p: u32, entries: &[i64]) -> Self {
        FpVector::new(p, entries.iter().map(|&x| x.rem_euclid(p as i64) as u32))
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn scale(&self, k: u32) -> FpVector {
        FpVector { p: self.p, entries: self.entries.iter().map(|&x| mul_mod(x, k, self.p)).collect() }
    }

    pub fn add(&self, other: &FpVector) -> FpVector {
        assert_eq!(self.len(), other.len(), "length mismatch");
        FpVector {
            p: self.p,
            entries: self.entries.iter().zip(&other.entries).map(|(&a, &b)| add_mod(a, b, self.p)).collect(),
        }
    }

    /// Number of coordinates equal to `v`.
    pub fn count_equal(&self, v: u32) -> usize {
        self.entries.iter().filter(|&&x| x == v % self.p).count()
    }
}

impl fmt::Debug for FpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} mod {}", self.entries, self.p)
    }
}

/// A dense matrix over 𝔽_p, row-major, entries in `{0, …, p−1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, data: alloc::vec![0; rows * cols] }
    }

    pub fn from_rows(p: u32, cols: usize, rows: &[FpVector]) -> Self {
        let mut m = FpMatrix::zeros(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row length mismatch");
            for (j, &x) in r.entries().iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn from_int_matrix(a: &IntMatrix, p: u32) -> Self {
        let mut m = FpMatrix::zeros(p, a.rows(), a.cols());
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                m.set(i, j, reduce_big(&a[(i, j)], p));
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

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> FpVector {
        FpVector { p: self.p, entries: self.data[i * self.cols..(i + 1) * self.cols].to_vec() }
    }

    pub fn row_vectors(&self) -> Vec<FpVector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn mul_vec(&self, v: &FpVector) -> FpVector {
        assert_eq!(v.len(), self.cols, "length mismatch");
        let p = self.p;
        FpVector {
            p,
            entries: (0..self.rows)
                .map(|i| (0..self.cols).fold(0, |acc, j| add_mod(acc, mul_mod(self.get(i, j), v.entries[j], p), p)))
                .collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// In-place reduced row-echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(src) = (r..self.rows).find(|&i| self.get(i, c) != 0) else { continue };
            self.swap_rows(r, src);
            let inv = inv_mod(self.get(r, c), p);
            for j in 0..self.cols {
                let v = mul_mod(self.get(r, j), inv, p);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                let f = self.get(i, c);
                if i == r || f == 0 {
                    continue;
                }
                for j in 0..self.cols {
                    let v = sub_mod(self.get(i, j), mul_mod(f, self.get(r, j), p), p);
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{x : A·x = 0}` from the free columns of the RREF.
    pub fn kernel(&self) -> Vec<FpVector> {
        let mut m = self.clone();
        let pivots = m.rref();
        let p = self.p;
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = alloc::vec![0u32; self.cols];
                v[free] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - m.get(i, free)) % p;
                }
                FpVector { p, entries: v }
            })
            .collect()
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| &self.data[i * self.cols..(i + 1) * self.cols])).finish()?;
        write!(f, " mod {}", self.p)
    }
}

/// Basis of `{x : A·x ≡ 0 (mod p)}`; empty when the kernel is trivial.
pub fn fp_kernel(a: &IntMatrix, p: u32) -> Result<Vec<FpVector>> {
    check_prime(p)?;
    Ok(FpMatrix::from_int_matrix(a, p).kernel())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn primes() {
        let odd: Vec<u64> = (0..40).filter(|&p| is_odd_prime(p)).collect();
        assert_eq!(odd, vec![3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
    }

    #[test]
    fn inverses() {
        for p in [3u32, 5, 13, 101] {
            for a in 1..p {
                assert_eq!(mul_mod(a, inv_mod(a, p), p), 1);
            }
        }
    }

    #[test]
    fn kernel_examples() {
        let a = IntMatrix::from_rows(&[&[2, 1], &[1, -2]]);
        assert_eq!(fp_kernel(&a, 5).unwrap(), vec![FpVector::new(5, [2, 1])]);
        let a = IntMatrix::from_rows(&[&[6, 1], &[1, -2]]);
        assert_eq!(fp_kernel(&a, 13).unwrap(), vec![FpVector::new(13, [2, 1])]);
        assert!(fp_kernel(&IntMatrix::identity(2), 5).unwrap().is_empty());
        assert_eq!(fp_kernel(&IntMatrix::identity(2), 4), Err(Error::InvalidPrime(4)));
    }

    // brute-force scan of all p^n vectors against the kernel basis span
    fn brute_kernel(a: &IntMatrix, p: u32) -> Vec<Vec<u32>> {
        let n = a.cols();
        let total = (p as usize).pow(n as u32);
        let mut out = Vec::new();
        for code in 0..total {
            let x: Vec<i64> = (0..n).map(|j| ((code / (p as usize).pow(j as u32)) % p as usize) as i64).collect();
            let zero = (0..a.rows()).all(|i| {
                let s: i64 = (0..n).map(|j| num_traits::ToPrimitive::to_i64(&a[(i, j)]).unwrap() * x[j]).sum();
                s.rem_euclid(p as i64) == 0
            });
            if zero {
                out.push(x.iter().map(|&v| v as u32).collect());
            }
        }
        out
    }

    fn span(basis: &[FpVector], p: u32, n: usize) -> Vec<Vec<u32>> {
        let k = basis.len();
        let total = (p as usize).pow(k as u32);
        let mut out: Vec<Vec<u32>> = (0..total)
            .map(|code| {
                let mut v = FpVector::zero(p, n);
                for (i, b) in basis.iter().enumerate() {
                    let c = ((code / (p as usize).pow(i as u32)) % p as usize) as u32;
                    v = v.add(&b.scale(c));
                }
                v.entries().to_vec()
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    proptest::proptest! {
        #[test]
        fn kernel_matches_brute_force(
            rows in 1usize..4, cols in 1usize..4,
            pi in 0usize..5,
            seed in proptest::collection::vec(-20i64..20, 9),
        ) {
            let p = [3u32, 5, 7, 11, 13][pi];
            let a = IntMatrix::from_fn(rows, cols, |i, j| BigInt::from(seed[i * 3 + j]));
            let basis = fp_kernel(&a, p).unwrap();
            for v in &basis {
                proptest::prop_assert!(FpMatrix::from_int_matrix(&a, p).mul_vec(v).is_zero());
            }
            let mut brute = brute_kernel(&a, p);
            brute.sort();
            proptest::prop_assert_eq!(span(&basis, p, cols), brute);
        }
    }
}
