use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Smith normal form `u · A · w = diag(d)` with `d[i] | d[i+1]`, all `d[i] >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub d: Vec<BigInt>,
    pub u: IntMatrix,
    pub w: IntMatrix,
}

impl SnfResult {
    /// Nontrivial invariant factors (entries other than 1); the cokernel is
    /// `⊕ ℤ/dᵢ` over these, with `d = 0` contributing a free ℤ.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.d.iter().filter(|x| !x.is_one()).cloned().collect()
    }
}

/// Euclidean pivoting with explicit transforms.
pub fn snf(a: &IntMatrix) -> SnfResult {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut w = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        loop {
            // smallest nonzero entry of the trailing block moves to (t, t)
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if s[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| s[(i, j)].abs() < s[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish(s, u, w);
            };
            s.swap_rows(t, bi);
            u.swap_rows(t, bi);
            s.swap_cols(t, bj);
            w.swap_cols(t, bj);

            let mut clean = true;
            for i in t + 1..m {
                let q = s[(i, t)].div_floor(&s[(t, t)]);
                if !q.is_zero() {
                    let k = -q;
                    s.add_row_multiple(i, t, &k);
                    u.add_row_multiple(i, t, &k);
                }
                clean &= s[(i, t)].is_zero();
            }
            for j in t + 1..n {
                let q = s[(t, j)].div_floor(&s[(t, t)]);
                if !q.is_zero() {
                    let k = -q;
                    s.add_col_multiple(j, t, &k);
                    w.add_col_multiple(j, t, &k);
                }
                clean &= s[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into row t and retry
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&s[(i, j)] % &s[(t, t)]).is_zero()));
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(s, u, w)
}

fn finish(s: IntMatrix, u: IntMatrix, w: IntMatrix) -> SnfResult {
    let d = (0..s.rows().min(s.cols())).map(|i| s[(i, i)].clone()).collect();
    SnfResult { d, u, w }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn diag(rows: usize, cols: usize, d: &[BigInt]) -> IntMatrix {
        IntMatrix::from_fn(rows, cols, |i, j| if i == j { d[i].clone() } else { BigInt::zero() })
    }

    fn check(a: &IntMatrix) -> SnfResult {
        let r = snf(a);
        assert_eq!(&(&r.u * a) * &r.w, diag(a.rows(), a.cols(), &r.d), "reassembly for {a}");
        assert_eq!(r.u.det().abs(), BigInt::from(1));
        assert_eq!(r.w.det().abs(), BigInt::from(1));
        for pair in r.d.windows(2) {
            assert!(!pair[0].is_negative());
            if pair[0].is_zero() {
                assert!(pair[1].is_zero(), "zeros must trail: {:?}", r.d);
            } else {
                assert!((&pair[1] % &pair[0]).is_zero(), "divisibility: {:?}", r.d);
            }
        }
        r
    }

    #[test]
    fn small_chain_matrices() {
        let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(check(&IntMatrix::identity(2)).d, ints(&[1, 1]));
        assert_eq!(check(&IntMatrix::from_rows(&[&[2, 1], &[1, -2]])).d, ints(&[1, 5]));
        assert_eq!(check(&IntMatrix::from_rows(&[&[6, 1], &[1, -2]])).d, ints(&[1, 13]));
    }

    #[test]
    fn divisibility_fixup() {
        let a = IntMatrix::from_rows(&[&[2, 0], &[0, 3]]);
        assert_eq!(check(&a).d, vec![BigInt::from(1), BigInt::from(6)]);
        let a = IntMatrix::from_rows(&[&[0, 0, 0], &[0, 4, 0]]);
        assert_eq!(check(&a).d, vec![BigInt::from(4), BigInt::from(0)]);
    }

    proptest! {
        #[test]
        fn round_trip(rows in 1usize..4, cols in 1usize..4, seed in proptest::collection::vec(-9i64..10, 9)) {
            let a = IntMatrix::from_fn(rows, cols, |i, j| BigInt::from(seed[i * 3 + j]));
            let r = check(&a);
            if rows == cols && !a.det().is_zero() {
                let prod: BigInt = r.d.iter().product();
                prop_assert_eq!(prod, a.det().abs());
            }
        }
    }
}
