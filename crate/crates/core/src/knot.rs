//! Two-bridge knots, their two-term chain presentations, Seifert forms,
//! connected sums, and the classical invariants used downstream.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::exactmath::{is_odd_prime, snf, IntMatrix, Rat};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Orientation {
    #[default]
    Standard,
    Mirror,
}

impl Orientation {
    pub fn sign(self) -> i64 {
        match self {
            Orientation::Standard => 1,
            Orientation::Mirror => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Orientation::Standard => Orientation::Mirror,
            Orientation::Mirror => Orientation::Standard,
        }
    }
}

/// The two-bridge knot `B(a, b)`: its double branched cover is `L(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwoBridgeKnot {
    a: u64,
    b: u64,
    label: Option<String>,
}

impl TwoBridgeKnot {
    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn determinant(&self) -> u64 {
        self.a
    }

    /// Same knot (labels ignored).
    pub fn same_as(&self, other: &TwoBridgeKnot) -> bool {
        self.a == other.a && self.b == other.b
    }
}

impl fmt::Display for TwoBridgeKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B({},{})", self.a, self.b)
    }
}

/// Validates and normalizes `b` into `(0, a)`.
pub fn two_bridge(a: i64, b: i64) -> Result<TwoBridgeKnot> {
    if a < 3 {
        return Err(Error::InvalidKnot(format!("a = {a} must be at least 3")));
    }
    if a % 2 == 0 {
        return Err(Error::EvenDeterminant { a, b });
    }
    if a.gcd(&b) != 1 {
        return Err(Error::NotCoprime { a, b });
    }
    Ok(TwoBridgeKnot { a: a as u64, b: b.rem_euclid(a) as u64, label: None })
}

/// Surgery on a two-component chain with linking matrix
/// `[[c1, 1], [1, −c2]]`, where `a/b = c1 + 1/c2`. The mirror negates the
/// whole matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChainPresentation {
    c1: i64,
    c2: i64,
    orientation: Orientation,
}

impl ChainPresentation {
    pub fn new(c1: i64, c2: i64) -> Self {
        ChainPresentation { c1, c2, orientation: Orientation::Standard }
    }

    pub fn c1(&self) -> i64 {
        self.c1
    }

    pub fn c2(&self) -> i64 {
        self.c2
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn lambda(&self) -> IntMatrix {
        let s = self.orientation.sign();
        IntMatrix::from_rows(&[&[s * self.c1, s], &[s, -s * self.c2]])
    }

    pub fn det(&self) -> BigInt {
        self.lambda().det()
    }

    /// `|det Λ|` as a machine integer.
    pub fn order(&self) -> u64 {
        self.det().abs().to_u64().expect("determinant fits in u64")
    }

    /// Genus-one Seifert form `[[c1/2, 0], [1, −c2/2]]` whose symmetrization
    /// is `Λ`; only available when both chain coefficients are even. The
    /// mirror uses `−Vᵀ`.
    pub fn seifert_form(&self) -> Option<SeifertForm> {
        if self.c1 % 2 != 0 || self.c2 % 2 != 0 {
            return None;
        }
        let v = IntMatrix::from_rows(&[&[self.c1 / 2, 0], &[1, -self.c2 / 2]]);
        let v = match self.orientation {
            Orientation::Standard => v,
            Orientation::Mirror => -&v.transpose(),
        };
        SeifertForm::new(v).ok()
    }
}

pub fn chain_presentation(knot: &TwoBridgeKnot) -> Result<ChainPresentation> {
    let (a, b) = (knot.a, knot.b);
    if (a - 1) % b != 0 {
        return Err(Error::UnsupportedPresentation { a, b });
    }
    let c1 = ((a - 1) / b) as i64;
    Ok(ChainPresentation::new(c1, b as i64))
}

/// Orientation reversal of the cover: `Λ ↦ −Λ`.
pub fn mirror(p: &ChainPresentation) -> ChainPresentation {
    ChainPresentation { orientation: p.orientation.flip(), ..*p }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeifertForm {
    v: IntMatrix,
}

impl SeifertForm {
    /// Requires a square matrix of even size with `det(V − Vᵀ) = 1`.
    pub fn new(v: IntMatrix) -> Result<Self> {
        if !v.is_square() || !v.rows().is_multiple_of(2) {
            return Err(Error::InvalidSeifertForm(format!("expected a square matrix of even size, got {v}")));
        }
        let skew = &v - &v.transpose();
        if skew.det() != BigInt::from(1) {
            return Err(Error::InvalidSeifertForm(format!("det(V - V^T) = {} != 1", skew.det())));
        }
        Ok(SeifertForm { v })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.v
    }

    pub fn genus(&self) -> usize {
        self.v.rows() / 2
    }

    pub fn symmetrized(&self) -> IntMatrix {
        &self.v + &self.v.transpose()
    }

    /// `|det(V + Vᵀ)|`.
    pub fn determinant(&self) -> BigInt {
        self.symmetrized().det().abs()
    }
}

/// Signature of `V + Vᵀ`, by rational congruence diagonalization.
pub fn classical_signature(s: &SeifertForm) -> Result<i64> {
    symmetric_signature(&s.symmetrized())
}

#[allow(clippy::needless_range_loop)]
pub(crate) fn symmetric_signature(m: &IntMatrix) -> Result<i64> {
    assert!(m.is_symmetric(), "signature of a non-symmetric matrix");
    let n = m.rows();
    let mut a: Vec<Vec<Rat>> = (0..n).map(|i| (0..n).map(|j| Rat::from_int(m[(i, j)].clone())).collect()).collect();
    let mut signature = 0i64;
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // a[k][k] becomes 2·a[k][j] after adding row/col j to k
                for c in 0..n {
                    let v = &a[k][c] + &a[j][c];
                    a[k][c] = v;
                }
                for r in 0..n {
                    let v = &a[r][k] + &a[r][j];
                    a[r][k] = v;
                }
            } else {
                return Err(Error::DegenerateForm);
            }
        }
        let pivot = a[k][k].clone();
        signature += if pivot.is_positive() { 1 } else { -1 };
        for i in k + 1..n {
            let f = &a[i][k] / &pivot;
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                let v = &a[i][j] - &(&f * &a[k][j]);
                a[i][j] = v;
            }
            for r in k..n {
                let v = &a[r][i] - &(&f * &a[r][k]);
                a[r][i] = v;
            }
        }
    }
    Ok(signature)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Amphicheirality {
    Negative,
    Positive,
}

/// Asserted clasp numbers and four-genus. These are recorded claims, not
/// computed values.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClaspData {
    pub c_plus: Option<u64>,
    pub c_minus: Option<u64>,
    pub c: Option<u64>,
    pub g4: Option<u64>,
}

impl ClaspData {
    /// `g₄ ≤ c` and `c ≥ c⁺ + c⁻` wherever the values are present.
    pub fn consistent(&self) -> bool {
        let g4_ok = match (self.g4, self.c) {
            (Some(g), Some(c)) => g <= c,
            _ => true,
        };
        let c_ok = match (self.c, self.c_plus, self.c_minus) {
            (Some(c), Some(p), Some(m)) => c >= p + m,
            _ => true,
        };
        g4_ok && c_ok
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotRecord {
    pub knot: TwoBridgeKnot,
    pub clasp: ClaspData,
    pub amphicheiral: Option<Amphicheirality>,
    /// Free-text crossing-change witnesses; never verified.
    pub witnesses: Vec<String>,
}

impl KnotRecord {
    pub fn new(knot: TwoBridgeKnot) -> Self {
        KnotRecord { knot, clasp: ClaspData::default(), amphicheiral: None, witnesses: Vec::new() }
    }
}

pub fn clasp_record_check(rec: &KnotRecord) -> bool {
    rec.clasp.consistent()
}

/// A connected sum of recorded knots with asserted values for the sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumRecord {
    pub parts: Vec<KnotRecord>,
    pub clasp: ClaspData,
}

impl SumRecord {
    /// `n` copies of one record; the sum's signed clasp numbers are asserted
    /// as `n` times the part's.
    pub fn copies(part: &KnotRecord, n: usize) -> Self {
        let scale = |x: Option<u64>| x.map(|v| v * n as u64);
        SumRecord {
            parts: vec![part.clone(); n],
            clasp: ClaspData {
                c_plus: scale(part.clasp.c_plus),
                c_minus: scale(part.clasp.c_minus),
                ..ClaspData::default()
            },
        }
    }
}

/// Every part is consistent, the sum is consistent, and the sum's signed
/// clasp numbers respect subadditivity `c±(Σ) ≤ Σ c±(parts)`.
pub fn sum_record_check(rec: &SumRecord) -> bool {
    fn total(parts: &[KnotRecord], f: impl Fn(&ClaspData) -> Option<u64>) -> Option<u64> {
        parts.iter().map(|p| f(&p.clasp)).sum()
    }
    let bounded = |asserted: Option<u64>, bound: Option<u64>| match (asserted, bound) {
        (Some(a), Some(b)) => a <= b,
        _ => true,
    };
    rec.parts.iter().all(clasp_record_check)
        && rec.clasp.consistent()
        && bounded(rec.clasp.c_plus, total(&rec.parts, |c| c.c_plus))
        && bounded(rec.clasp.c_minus, total(&rec.parts, |c| c.c_minus))
}

/// `B_m`: cover `L(4m²+1, 2m)`, Seifert form `[[m, 0], [1, −m]]`.
pub fn bm_family(m: u64) -> Result<(TwoBridgeKnot, SeifertForm, KnotRecord)> {
    if m == 0 {
        return Err(Error::InvalidArgument(String::from("B_m requires m >= 1")));
    }
    let a = 4 * m * m + 1;
    let knot = two_bridge(a as i64, 2 * m as i64)?.with_label(format!("B_{m} = B({},{})", 2 * m, 2 * m));
    let mi = m as i64;
    let seifert = SeifertForm::new(IntMatrix::from_rows(&[&[mi, 0], &[1, -mi]]))?;
    let mut record = KnotRecord::new(knot.clone());
    record.clasp.c_plus = Some(0);
    record.clasp.c_minus = Some(0);
    if m == 1 {
        record.clasp.c = Some(1);
        record.clasp.g4 = Some(1);
    }
    record.amphicheiral = Some(Amphicheirality::Negative);
    record.witnesses.push(format!("unknotted by {m} negative crossing changes"));
    record.witnesses.push(format!("unknotted by {m} positive crossing changes"));
    Ok((knot, seifert, record))
}

/// The figure eight `B(5,2) = B_1`: `c = 1`, `c± = 0`, `g₄ = 1`.
pub fn figure_eight_record() -> KnotRecord {
    bm_family(1).expect("m = 1 is valid").2
}

/// Positive-clasped `t`-twisted double of the unknot, `B(4t+1, 2)`, with
/// Seifert form `[[−1, 0], [1, t]]`.
pub fn twist_knot(t: u64) -> Result<(TwoBridgeKnot, SeifertForm, KnotRecord)> {
    if t == 0 {
        return Err(Error::InvalidArgument(String::from("twist knot requires t >= 1")));
    }
    let knot = two_bridge((4 * t + 1) as i64, 2)?.with_label(format!("D+(U,{t})"));
    let seifert = SeifertForm::new(IntMatrix::from_rows(&[&[-1, 0], &[1, t as i64]]))?;
    let mut record = KnotRecord::new(knot.clone());
    match t {
        2 => {
            record.clasp.g4 = Some(0);
            record.witnesses.push(String::from("stevedore 6_1, a ribbon knot"));
        }
        3 => {
            record.clasp.c_plus = Some(0);
            record.clasp.c_minus = Some(0);
            record.witnesses.push(String::from("positive-to-negative clasp change yields the unknot"));
            record.witnesses.push(String::from("negative-to-positive band crossing change yields the stevedore 6_1"));
        }
        _ => {}
    }
    Ok((knot, seifert, record))
}

/// Order of `H₁(M(K))`, cross-checked against the Smith form of `Λ`.
pub fn double_cover_homology(knot: &TwoBridgeKnot) -> Result<u64> {
    let lambda = chain_presentation(knot)?.lambda();
    let order = lambda.det().abs();
    let d = snf(&lambda).d;
    if d != [BigInt::from(1), order.clone()] || order != BigInt::from(knot.a) {
        return Err(Error::InvalidKnot(format!("{knot}: Smith form {d:?} disagrees with determinant {}", knot.a)));
    }
    Ok(knot.a)
}

/// `p | a` and `p² ∤ a`, so the `p`-torsion of `H₁(M(K))` is a single `ℤ_p`.
pub fn p_torsion_admissible(knot: &TwoBridgeKnot, p: u64) -> bool {
    p > 1 && knot.a.is_multiple_of(p) && !(knot.a / p).is_multiple_of(p)
}

/// The pairing `(x, y) ↦ sign · b·x·y / a (mod 1)` on `ℤ_a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinkingForm {
    a: u64,
    b: i64,
}

impl LinkingForm {
    pub fn new(knot: &TwoBridgeKnot, orientation: Orientation) -> Self {
        LinkingForm { a: knot.a, b: orientation.sign() * knot.b as i64 }
    }

    pub fn pairing(&self, x: i64, y: i64) -> Rat {
        let num = BigInt::from(self.b) * x * y;
        Rat::new(num, self.a).fract()
    }
}

pub fn linking_value(knot: &TwoBridgeKnot, x: i64, y: i64) -> Rat {
    LinkingForm::new(knot, Orientation::Standard).pairing(x, y)
}

/// One summand of a connected sum: a knot together with its (possibly
/// mirrored) chain presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summand {
    pub knot: TwoBridgeKnot,
    pub presentation: ChainPresentation,
}

impl Summand {
    pub fn new(knot: TwoBridgeKnot) -> Result<Self> {
        let presentation = chain_presentation(&knot)?;
        Ok(Summand { knot, presentation })
    }

    /// Signed parameters: `(a, b)`, or `(a, −b)` for the mirror image.
    pub fn from_signed(a: i64, b: i64) -> Result<Self> {
        if b < 0 {
            Ok(Summand::new(two_bridge(a, -b)?)?.mirrored())
        } else {
            Summand::new(two_bridge(a, b)?)
        }
    }

    pub fn signed_params(&self) -> (i64, i64) {
        (self.knot.a as i64, self.presentation.orientation().sign() * self.knot.b as i64)
    }

    pub fn orientation(&self) -> Orientation {
        self.presentation.orientation()
    }

    pub fn mirrored(&self) -> Self {
        Summand { knot: self.knot.clone(), presentation: mirror(&self.presentation) }
    }

    pub fn linking_form(&self) -> LinkingForm {
        LinkingForm::new(&self.knot, self.orientation())
    }

    /// Self-linking of the generator `a/p` of the `ℤ_p` summand.
    pub fn p_torsion_self_linking(&self, p: u64) -> Rat {
        let g = (self.knot.a / p) as i64;
        self.linking_form().pairing(g, g)
    }

    /// Classical signature via the genus-one Seifert model of the chain.
    pub fn classical_signature(&self) -> Result<i64> {
        let s = self.presentation.seifert_form().ok_or_else(|| {
            Error::PreconditionViolation(format!(
                "classical signature of {} is not available (chain coefficients not both even)",
                self.knot
            ))
        })?;
        classical_signature(&s)
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.orientation() {
            Orientation::Standard => write!(f, "{}", self.knot),
            Orientation::Mirror => write!(f, "-{}", self.knot),
        }
    }
}

/// An ordered connected sum, studied at a fixed odd prime `p` dividing
/// each summand's determinant exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumSpec {
    summands: Vec<Summand>,
    p: u64,
}

impl SumSpec {
    pub fn new(summands: Vec<Summand>, p: u64) -> Result<Self> {
        if !is_odd_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        for s in &summands {
            if !p_torsion_admissible(&s.knot, p) {
                return Err(inadmissible(&s.knot, p));
            }
        }
        Ok(SumSpec { summands, p })
    }

    /// `n` copies of one knot.
    pub fn copies(knot: &TwoBridgeKnot, n: usize, p: u64) -> Result<Self> {
        let s = Summand::new(knot.clone())?;
        SumSpec::new(vec![s; n], p)
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Rank of the `p`-torsion `(ℤ_p)ⁿ`.
    pub fn n(&self) -> usize {
        self.summands.len()
    }

    pub fn classical_signature(&self) -> Result<i64> {
        self.summands.iter().map(Summand::classical_signature).sum()
    }

    pub fn mirrored(&self) -> SumSpec {
        SumSpec { summands: self.summands.iter().map(Summand::mirrored).collect(), p: self.p }
    }
}

pub(crate) fn inadmissible(knot: &TwoBridgeKnot, p: u64) -> Error {
    let reason = if !knot.a.is_multiple_of(p) {
        format!("{p} does not divide {}", knot.a)
    } else {
        format!("{} divides {}", p * p, knot.a)
    };
    Error::InadmissiblePrime { p, det: knot.a, reason }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn m2(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    #[test]
    fn two_bridge_examples() {
        assert_eq!(two_bridge(13, 2).unwrap().to_string(), "B(13,2)");
        assert_eq!(two_bridge(5, 2).unwrap(), bm_family(1).unwrap().0.with_label("x").clone_unlabeled());
        assert_eq!(two_bridge(9, 3), Err(Error::NotCoprime { a: 9, b: 3 }));
        assert_eq!(two_bridge(6, 1), Err(Error::EvenDeterminant { a: 6, b: 1 }));
        assert_eq!(two_bridge(13, -2).unwrap().b(), 11);
        assert!(two_bridge(1, 0).is_err());
    }

    impl TwoBridgeKnot {
        fn clone_unlabeled(&self) -> Self {
            TwoBridgeKnot { label: None, ..self.clone() }
        }
    }

    #[test]
    fn chain_examples() {
        let p = chain_presentation(&two_bridge(13, 2).unwrap()).unwrap();
        assert_eq!(p.lambda(), m2(&[&[6, 1], &[1, -2]]));
        assert_eq!(p.order(), 13);
        // 7 = 2·3 + 1 does have a two-term chain; 11 = 3·3 + 2 does not
        assert_eq!(chain_presentation(&two_bridge(7, 3).unwrap()).unwrap().lambda(), m2(&[&[2, 1], &[1, -3]]));
        assert_eq!(
            chain_presentation(&two_bridge(11, 3).unwrap()),
            Err(Error::UnsupportedPresentation { a: 11, b: 3 })
        );
        for m in 1..=100i64 {
            let k = two_bridge(4 * m * m + 1, 2 * m).unwrap();
            let lambda = chain_presentation(&k).unwrap().lambda();
            assert_eq!(lambda, m2(&[&[2 * m, 1], &[1, -2 * m]]));
        }
    }

    #[test]
    fn mirror_examples() {
        let p = chain_presentation(&two_bridge(13, 2).unwrap()).unwrap();
        assert_eq!(mirror(&p).lambda(), m2(&[&[-6, -1], &[-1, 2]]));
        assert_eq!(mirror(&mirror(&p)), p);
        assert_eq!(mirror(&p).det(), p.det());
    }

    #[test]
    fn bm_family_examples() {
        let (k, v, rec) = bm_family(1).unwrap();
        assert!(k.same_as(&two_bridge(5, 2).unwrap()));
        assert_eq!(v.symmetrized(), m2(&[&[2, 1], &[1, -2]]));
        assert!(clasp_record_check(&rec));
        assert_eq!(rec.amphicheiral, Some(Amphicheirality::Negative));
        assert_eq!(bm_family(26).unwrap().0.to_string(), "B(2705,52)");
        assert!(bm_family(0).is_err());
        for m in [1u64, 2, 26, 51, 101] {
            let (k, v, _) = bm_family(m).unwrap();
            assert_eq!(v.determinant(), BigInt::from(4 * m * m + 1));
            assert_eq!(double_cover_homology(&k).unwrap(), 4 * m * m + 1);
            assert_eq!(classical_signature(&v).unwrap(), 0);
            assert_eq!(v.symmetrized(), chain_presentation(&k).unwrap().lambda());
        }
    }

    #[test]
    fn twist_knot_examples() {
        let (k, v, rec) = twist_knot(3).unwrap();
        assert!(k.same_as(&two_bridge(13, 2).unwrap()));
        assert_eq!(v.symmetrized(), m2(&[&[-2, 1], &[1, 6]]));
        assert_eq!(v.symmetrized().det(), BigInt::from(-13));
        assert_eq!(rec.clasp.c_plus, Some(0));
        assert_eq!(twist_knot(2).unwrap().1.determinant(), BigInt::from(9));
        assert_eq!(twist_knot(1).unwrap().1.determinant(), BigInt::from(5));
        for t in 1..=20 {
            assert_eq!(classical_signature(&twist_knot(t).unwrap().1).unwrap(), 0);
        }
    }

    #[test]
    fn signatures() {
        let s = |rows: &[&[i64]]| classical_signature(&SeifertForm::new(m2(rows)).unwrap());
        assert_eq!(s(&[&[-1, 0], &[1, 3]]), Ok(0));
        assert_eq!(s(&[&[1, 0], &[1, 1]]), Ok(2));
        assert_eq!(s(&[&[-1, 0], &[1, -1]]), Ok(-2));
        // zero diagonal forces the off-diagonal congruence step
        assert_eq!(symmetric_signature(&m2(&[&[0, 1], &[1, 0]])), Ok(0));
        assert_eq!(symmetric_signature(&m2(&[&[0, 0], &[0, 1]])), Err(Error::DegenerateForm));
        assert!(SeifertForm::new(m2(&[&[1, 0], &[0, 1]])).is_err());
    }

    #[test]
    fn homology_examples() {
        assert_eq!(double_cover_homology(&two_bridge(5, 2).unwrap()), Ok(5));
        assert_eq!(double_cover_homology(&two_bridge(13, 2).unwrap()), Ok(13));
        assert_eq!(double_cover_homology(&two_bridge(10405, 102).unwrap()), Ok(10405));
        assert!(double_cover_homology(&two_bridge(11, 3).unwrap()).is_err());
    }

    #[test]
    fn admissibility() {
        assert!(p_torsion_admissible(&two_bridge(5, 2).unwrap(), 5));
        assert!(p_torsion_admissible(&two_bridge(10405, 102).unwrap(), 5));
        assert!(!p_torsion_admissible(&two_bridge(25, 2).unwrap(), 5));
        assert!(!p_torsion_admissible(&two_bridge(13, 2).unwrap(), 5));
        assert!(SumSpec::copies(&two_bridge(13, 2).unwrap(), 2, 5).is_err());
    }

    #[test]
    fn linking_examples() {
        let k = two_bridge(5, 2).unwrap();
        assert_eq!(linking_value(&k, 1, 1), Rat::new(2, 5));
        assert_eq!(linking_value(&k, 0, 3), Rat::zero());
        assert_eq!(linking_value(&two_bridge(13, 2).unwrap(), 13, 13), Rat::zero());
    }

    #[test]
    fn linking_form_nondegenerate_and_symmetric() {
        for a in (3..=13i64).step_by(2) {
            for b in 1..a {
                let Ok(k) = two_bridge(a, b) else { continue };
                for x in 0..a {
                    if x != 0 {
                        assert!((0..a).any(|y| !linking_value(&k, x, y).is_zero()), "B({a},{b}) x = {x}");
                        if is_odd_prime(a as u64) {
                            assert!(!linking_value(&k, x, x).is_zero(), "B({a},{b}) x = {x}");
                        }
                    }
                    for y in 0..a {
                        assert_eq!(linking_value(&k, x, y), linking_value(&k, y, x));
                        let z = (x + 1) % a;
                        assert_eq!(
                            (linking_value(&k, x, y) + linking_value(&k, z, y)).fract(),
                            linking_value(&k, x + z, y)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn clasp_records() {
        assert!(clasp_record_check(&figure_eight_record()));
        let mut bad = KnotRecord::new(two_bridge(5, 2).unwrap());
        bad.clasp = ClaspData { c: Some(0), g4: Some(1), ..ClaspData::default() };
        assert!(!clasp_record_check(&bad));
        bad.clasp = ClaspData { c: Some(1), c_plus: Some(1), c_minus: Some(1), ..ClaspData::default() };
        assert!(!clasp_record_check(&bad));

        let k1 = twist_knot(3).unwrap().2;
        assert!(sum_record_check(&SumRecord::copies(&k1, 10)));
        let mut sum = SumRecord::copies(&k1, 4);
        sum.clasp.c_plus = Some(1);
        assert!(!sum_record_check(&sum));
    }

    #[test]
    fn sum_signature_and_mirror() {
        let s = SumSpec::new(vec![Summand::from_signed(5, 2).unwrap(), Summand::from_signed(2705, -52).unwrap()], 5)
            .unwrap();
        assert_eq!(s.classical_signature(), Ok(0));
        assert_eq!(s.summands()[1].signed_params(), (2705, -52));
        assert_eq!(s.summands()[1].to_string(), "-B(2705,52)");
        assert_eq!(s.mirrored().mirrored(), s);
        let q = s.summands()[0].p_torsion_self_linking(5);
        assert_eq!(q, Rat::new(2, 5));
        assert_eq!(s.mirrored().summands()[0].p_torsion_self_linking(5), Rat::new(3, 5));
    }
}
