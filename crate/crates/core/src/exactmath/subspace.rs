use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::fp::{add_mod, mul_mod};
use super::{FpMatrix, FpVector};
use crate::{Error, Result};

/// A subspace of (𝔽_p)ⁿ held as its unique reduced row-echelon basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct EchelonBasis {
    p: u32,
    n: usize,
    rows: Vec<FpVector>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn zero(p: u32, n: usize) -> Self {
        EchelonBasis { p, n, rows: Vec::new(), pivots: Vec::new() }
    }

    /// Row-reduces the span of `rows`; dependent rows are dropped.
    pub fn span_of(p: u32, n: usize, rows: &[FpVector]) -> Self {
        let mut m = FpMatrix::from_rows(p, n, rows);
        let pivots = m.rref();
        let rows = (0..pivots.len()).map(|i| m.row(i)).collect();
        EchelonBasis { p, n, rows, pivots }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[FpVector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn as_matrix(&self) -> FpMatrix {
        FpMatrix::from_rows(self.p, self.n, &self.rows)
    }

    /// Checks the reduced row-echelon shape: increasing pivots, unit
    /// pivot entries, zeros elsewhere in pivot columns and left of each pivot.
    pub fn is_reduced(&self) -> bool {
        if self.pivots.len() != self.rows.len() || self.pivots.windows(2).any(|w| w[0] >= w[1]) {
            return false;
        }
        self.rows.iter().zip(&self.pivots).enumerate().all(|(i, (row, &pc))| {
            let e = row.entries();
            e[..pc].iter().all(|&x| x == 0)
                && e[pc] == 1
                && self.pivots.iter().enumerate().all(|(k, &other)| k == i || e[other] == 0)
        })
    }

    /// `Σ coeffs[i] · rows[i]`.
    pub fn combine(&self, coeffs: &[u32]) -> FpVector {
        assert_eq!(coeffs.len(), self.dim(), "coefficient count mismatch");
        let p = self.p;
        let mut out = alloc::vec![0u32; self.n];
        for (row, &c) in self.rows.iter().zip(coeffs) {
            if c == 0 {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(row.entries()) {
                *o = add_mod(*o, mul_mod(c, x, p), p);
            }
        }
        FpVector::new(p, out)
    }

    /// Coefficients expressing `v` in this basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &FpVector) -> Option<Vec<u32>> {
        if v.len() != self.n {
            return None;
        }
        let coeffs: Vec<u32> = self.pivots.iter().map(|&pc| v.entries()[pc] % self.p).collect();
        (self.combine(&coeffs) == FpVector::new(self.p, v.entries().iter().copied())).then_some(coeffs)
    }

    pub fn contains(&self, v: &FpVector) -> bool {
        self.coordinates(v).is_some()
    }

    /// All nonzero vectors of the span, coefficient tuples in lexicographic order.
    pub fn nonzero_vectors(&self) -> SpanIter<'_> {
        SpanIter { basis: self, coeffs: alloc::vec![0; self.dim()], done: self.dim() == 0 }
    }
}

pub struct SpanIter<'a> {
    basis: &'a EchelonBasis,
    coeffs: Vec<u32>,
    done: bool,
}

impl Iterator for SpanIter<'_> {
    type Item = (Vec<u32>, FpVector);

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        if !odometer(&mut self.coeffs, self.basis.p) {
            self.done = true;
            return None;
        }
        Some((self.coeffs.clone(), self.basis.combine(&self.coeffs)))
    }
}

// increments the last digit first; false once it wraps back to all zeros
fn odometer(digits: &mut [u32], base: u32) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let d = c.len();
    for i in (0..d).rev() {
        if c[i] < n - d + i {
            c[i] += 1;
            for j in i + 1..d {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

// entries (row, col) of an echelon form with the given pivots that are free
fn free_positions(n: usize, pivots: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, &pc) in pivots.iter().enumerate() {
        for j in pc + 1..n {
            if !pivots.contains(&j) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Streams every `d`-dimensional subspace of (𝔽_p)ⁿ exactly once. Order:
/// pivot sets lexicographically, then free entries lexicographically.
pub struct Subspaces {
    p: u32,
    n: usize,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    values: Vec<u32>,
    single_pivot_set: bool,
    started: bool,
    done: bool,
}

impl Subspaces {
    /// Only the subspaces whose echelon form has exactly these pivot
    /// columns. Disjoint pivot sets partition the full stream.
    pub fn with_pivots(n: usize, pivots: &[usize], p: u32) -> Result<Self> {
        if pivots.len() > n {
            return Err(Error::InvalidDimension { d: pivots.len(), n });
        }
        if pivots.windows(2).any(|w| w[0] >= w[1]) || pivots.last().is_some_and(|&c| c >= n) {
            return Err(Error::InvalidArgument(alloc::format!("invalid pivot set {pivots:?} for n = {n}")));
        }
        let mut s = Subspaces::start(n, pivots.to_vec(), p);
        s.single_pivot_set = true;
        Ok(s)
    }

    fn start(n: usize, pivots: Vec<usize>, p: u32) -> Self {
        let free = free_positions(n, &pivots);
        let values = alloc::vec![0; free.len()];
        Subspaces { p, n, pivots, free, values, single_pivot_set: false, started: false, done: false }
    }

    fn current(&self) -> EchelonBasis {
        let d = self.pivots.len();
        let mut rows: Vec<Vec<u32>> = alloc::vec![alloc::vec![0; self.n]; d];
        for (i, &pc) in self.pivots.iter().enumerate() {
            rows[i][pc] = 1;
        }
        for (&(i, j), &v) in self.free.iter().zip(&self.values) {
            rows[i][j] = v;
        }
        EchelonBasis {
            p: self.p,
            n: self.n,
            rows: rows.into_iter().map(|r| FpVector::new(self.p, r)).collect(),
            pivots: self.pivots.clone(),
        }
    }

    fn advance(&mut self) -> bool {
        if odometer(&mut self.values, self.p) {
            return true;
        }
        if self.single_pivot_set || !next_combination(&mut self.pivots, self.n) {
            return false;
        }
        self.free = free_positions(self.n, &self.pivots);
        self.values = alloc::vec![0; self.free.len()];
        true
    }
}

impl Iterator for Subspaces {
    type Item = EchelonBasis;

    fn next(&mut self) -> Option<EchelonBasis> {
        if self.done {
            return None;
        }
        if self.started && !self.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        Some(self.current())
    }
}

/// All `d`-dimensional subspaces of (𝔽_p)ⁿ.
pub fn subspaces(n: usize, d: usize, p: u32) -> Result<Subspaces> {
    if d > n {
        return Err(Error::InvalidDimension { d, n });
    }
    Ok(Subspaces::start(n, (0..d).collect(), p))
}

/// Number of `d`-dimensional subspaces, counted as echelon forms:
/// the sum over pivot sets of `p^(free entries)`.
pub fn subspace_count(n: usize, d: usize, p: u32) -> Result<BigInt> {
    if d > n {
        return Err(Error::InvalidDimension { d, n });
    }
    let mut pivots: Vec<usize> = (0..d).collect();
    let mut total = BigInt::zero();
    loop {
        let free = free_positions(n, &pivots).len();
        let mut term = BigInt::one();
        for _ in 0..free {
            term *= p;
        }
        total += term;
        if !next_combination(&mut pivots, n) {
            return Ok(total);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;
    use alloc::vec;

    // product formula for the Gaussian binomial coefficient
    fn gaussian_binomial(n: u32, d: u32, p: u64) -> u64 {
        let mut num = 1u64;
        let mut den = 1u64;
        for i in 0..d {
            num *= p.pow(n - i) - 1;
            den *= p.pow(i + 1) - 1;
        }
        num / den
    }

    #[test]
    fn counts_match_gaussian_binomial() {
        for (n, d, p) in [(2, 1, 5), (4, 1, 5), (4, 2, 5), (3, 0, 13), (3, 2, 3), (5, 2, 3)] {
            let enumerated = subspaces(n, d, p).unwrap().count() as u64;
            assert_eq!(enumerated, gaussian_binomial(n as u32, d as u32, p as u64), "({n},{d},{p})");
        }
        assert_eq!(subspaces(2, 1, 5).unwrap().count(), 6);
        assert_eq!(subspaces(4, 1, 5).unwrap().count(), 156);
        assert_eq!(subspaces(4, 2, 5).unwrap().count(), 806);
        assert_eq!(subspace_count(4, 2, 13).unwrap(), BigInt::from(gaussian_binomial(4, 2, 13)));
    }

    #[test]
    fn zero_dimensional() {
        let all: Vec<_> = subspaces(3, 0, 13).unwrap().collect();
        assert_eq!(all, vec![EchelonBasis::zero(13, 3)]);
        assert_eq!(all[0].nonzero_vectors().count(), 0);
    }

    #[test]
    fn too_large() {
        assert_eq!(subspaces(2, 3, 5).err(), Some(Error::InvalidDimension { d: 3, n: 2 }));
    }

    #[test]
    fn distinct_reduced_and_ordered() {
        for (n, d, p) in [(4, 2, 5), (4, 1, 5), (3, 2, 7)] {
            let all: Vec<_> = subspaces(n, d, p).unwrap().collect();
            assert!(all.iter().all(EchelonBasis::is_reduced));
            let set: BTreeSet<Vec<Vec<u32>>> =
                all.iter().map(|b| b.rows().iter().map(|r| r.entries().to_vec()).collect()).collect();
            assert_eq!(set.len(), all.len());
            // pivot sets appear in lexicographic order
            assert!(all.windows(2).all(|w| w[0].pivots() <= w[1].pivots()));
            // reducing each basis again is a no-op
            for b in &all {
                assert_eq!(&EchelonBasis::span_of(p, n, b.rows()), b);
            }
        }
    }

    #[test]
    fn first_line_is_coordinate_axis() {
        let first = subspaces(4, 1, 5).unwrap().next().unwrap();
        assert_eq!(first.rows(), &[FpVector::new(5, [1, 0, 0, 0])]);
    }

    #[test]
    fn pivot_partitions_cover_the_stream() {
        let total: usize = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]
            .iter()
            .map(|ps| Subspaces::with_pivots(4, ps, 5).unwrap().count())
            .sum();
        assert_eq!(total, 806);
    }

    #[test]
    fn span_vectors() {
        let b = EchelonBasis::span_of(5, 3, &[FpVector::new(5, [1, 0, 2]), FpVector::new(5, [0, 1, 1])]);
        let vs: Vec<_> = b.nonzero_vectors().collect();
        assert_eq!(vs.len(), 24);
        assert_eq!(vs[0].0, vec![0, 1]);
        for (c, v) in &vs {
            assert_eq!(b.coordinates(v).as_ref(), Some(c));
        }
        assert!(!b.contains(&FpVector::new(5, [0, 0, 1])));
    }
}
