use crate::exactmath::{FpMatrix, FpVector};
use crate::{Error, Result};

/// A vector in the row span of a rank-`k` matrix with at least `k`
/// coordinates equal to `v`.
///
/// Row reduction turns some nonsingular `k × k` column submatrix into the
/// identity; the sum of the reduced rows is 1 on those `k` columns, and
/// scaling by `v` finishes.
pub fn constant_coordinate_vector(rows: &FpMatrix, v: u32) -> Result<FpVector> {
    let p = rows.modulus();
    let k = rows.rows();
    if v.is_multiple_of(p) {
        return Err(Error::InvalidArgument(alloc::format!("target value {v} is zero mod {p}")));
    }
    let mut reduced = rows.clone();
    let pivots = reduced.rref();
    if k == 0 || pivots.len() < k {
        return Err(Error::InvalidBasis { rank: pivots.len(), rows: k });
    }
    let sum = (0..k).fold(FpVector::zero(p, rows.cols()), |acc, i| acc.add(&reduced.row(i)));
    Ok(sum.scale(v))
}
