use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::exhaustive::{is_isotropic, Mode};
use super::required_dimension;
use crate::cg::{cg_table_for, theorem_interval};
use crate::exactmath::{certified_abs_exceeds, interval_sum, subspaces, EchelonBasis, FpVector, Rat, RatInterval};
use crate::knot::{Orientation, Summand};
use crate::{Error, Result, LIBRARY_VERSION};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateKind {
    Exhaustive,
    AnalyticEx1,
    LinearEx2,
}

impl CertificateKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CertificateKind::Exhaustive => "exhaustive",
            CertificateKind::AnalyticEx1 => "analytic-ex1",
            CertificateKind::LinearEx2 => "linear-ex2",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "exhaustive" => Some(CertificateKind::Exhaustive),
            "analytic-ex1" => Some(CertificateKind::AnalyticEx1),
            "linear-ex2" => Some(CertificateKind::LinearEx2),
            _ => None,
        }
    }
}

/// Hypotheses of the obstruction theorem as checked when the certificate
/// was produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preconditions {
    pub classical_signature: i64,
    /// `floor(n/2)`: no claim is made past `floor(n/2) + 1`.
    pub half_rank: usize,
}

/// A replayable four-genus lower bound `g₄ ≥ g_lower`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCertificate {
    pub kind: CertificateKind,
    pub p: u64,
    /// Signed two-bridge parameters, `(a, −b)` for a mirrored summand.
    pub summands: Vec<(i64, i64)>,
    pub g_lower: usize,
    pub mode: Option<Mode>,
    pub witnesses: Witnesses,
    pub preconditions: Preconditions,
    pub library_version: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witnesses {
    Exhaustive(ExhaustiveWitness),
    AnalyticEx1(AnalyticWitness),
    LinearEx2(LinearWitness),
}

/// σ tables and self-linkings the scan used, plus one record per scanned `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExhaustiveWitness {
    /// `tables[i][r] = σ(Kᵢ, χ_r)`.
    pub tables: Vec<Vec<Rat>>,
    /// Self-linking of the `ℤ_p` generator of each summand.
    pub self_linking: Vec<Rat>,
    pub levels: Vec<LevelWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelWitness {
    pub g: usize,
    pub dim: usize,
    pub obstructed: bool,
    /// One bad character per subspace, in enumeration order.
    pub subspaces: Vec<SubspaceWitness>,
    /// Basis of a subspace with no bad character (when not obstructed).
    pub counterexample: Option<Vec<Vec<u32>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceWitness {
    pub basis: Vec<Vec<u32>>,
    pub character: Vec<u32>,
    pub interval: RatInterval,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalyticWitness {
    pub g: usize,
    pub m_values: Vec<u64>,
    pub tables: Vec<Vec<Rat>>,
    /// `L_i = σ(C_i, χ₁) − 1`.
    pub lower: Vec<Rat>,
    /// `U_i`, the largest certified `|σ₁τ(C_i, χ_r)|` over all `r`.
    pub upper: Vec<Rat>,
    pub steps: Vec<IndexStep>,
    pub isotropy: Option<IsotropyStep>,
}

/// `L_a − Σ_{i<a} U_i > 4g` for a candidate maximal index `a` (1-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexStep {
    pub a: usize,
    pub lhs: Rat,
    pub threshold: Rat,
}

/// The line through the first summand is not isotropic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotropyStep {
    pub index: usize,
    pub self_linking: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearWitness {
    pub n: usize,
    pub table: Vec<Rat>,
    pub orientation: Orientation,
    pub r_m: usize,
    pub b_minus: Rat,
    pub b_plus: Rat,
    pub c: Rat,
    pub steps: Vec<LinearStep>,
}

/// For `g < g_lower`: `k = (n − 2g)/2` coordinates equal `r_m`, and
/// `k·B⁻ − (n−k)·B⁺ > 4g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearStep {
    pub g: usize,
    pub k: usize,
    pub lhs: Rat,
    pub rhs: Rat,
}

fn fail(msg: String) -> Error {
    Error::ReplayFailed(msg)
}

fn four(g: usize) -> Rat {
    Rat::from_int(4 * g as i64)
}

fn table_interval(table: &[Rat], r: usize) -> RatInterval {
    if r == 0 {
        RatInterval::point(Rat::zero())
    } else {
        theorem_interval(&table[r])
    }
}

/// Largest certified magnitude over a table's brackets.
pub(crate) fn magnitude_bound(table: &[Rat]) -> Rat {
    (0..table.len())
        .map(|r| {
            let iv = table_interval(table, r);
            core::cmp::max(iv.hi().clone(), -iv.lo())
        })
        .max()
        .unwrap_or_else(Rat::zero)
}

impl BoundCertificate {
    pub(crate) fn new(
        kind: CertificateKind,
        p: u64,
        summands: &[Summand],
        g_lower: usize,
        mode: Option<Mode>,
        witnesses: Witnesses,
        preconditions: Preconditions,
    ) -> Self {
        BoundCertificate {
            kind,
            p,
            summands: summands.iter().map(Summand::signed_params).collect(),
            g_lower,
            mode,
            witnesses,
            preconditions,
            library_version: String::from(LIBRARY_VERSION),
        }
    }

    pub fn n(&self) -> usize {
        self.summands.len()
    }

    /// Re-verifies every recorded inequality from the stored data alone,
    /// using exact arithmetic.
    pub fn replay(&self) -> Result<()> {
        if self.preconditions.classical_signature != 0 {
            return Err(fail(format!("classical signature {} != 0", self.preconditions.classical_signature)));
        }
        if self.preconditions.half_rank != self.n() / 2 {
            return Err(fail(String::from("recorded floor(n/2) does not match the summand count")));
        }
        match (&self.kind, &self.witnesses) {
            (CertificateKind::Exhaustive, Witnesses::Exhaustive(w)) => self.replay_exhaustive(w),
            (CertificateKind::AnalyticEx1, Witnesses::AnalyticEx1(w)) => self.replay_analytic(w),
            (CertificateKind::LinearEx2, Witnesses::LinearEx2(w)) => self.replay_linear(w),
            _ => Err(fail(String::from("certificate kind does not match its witnesses"))),
        }
    }

    /// [`replay`](Self::replay), then recomputes the stored σ tables, self
    /// linkings and signature from the knot model.
    pub fn verify(&self) -> Result<()> {
        self.replay()?;
        let summands = self.summands.iter().map(|&(a, b)| Summand::from_signed(a, b)).collect::<Result<Vec<_>>>()?;
        let signature: i64 = summands.iter().map(Summand::classical_signature).sum::<Result<i64>>()?;
        if signature != self.preconditions.classical_signature {
            return Err(fail(format!("recomputed signature {signature} differs from the recorded value")));
        }
        let check_tables = |tables: &[Vec<Rat>], parts: &[Summand]| -> Result<()> {
            if tables.len() != parts.len() {
                return Err(fail(String::from("table count differs from summand count")));
            }
            for (t, s) in tables.iter().zip(parts) {
                if cg_table_for(s, self.p)?.values() != t.as_slice() {
                    return Err(fail(format!("stored σ table for {s} differs from recomputation")));
                }
            }
            Ok(())
        };
        match &self.witnesses {
            Witnesses::Exhaustive(w) => {
                check_tables(&w.tables, &summands)?;
                for (q, s) in w.self_linking.iter().zip(&summands) {
                    if *q != s.p_torsion_self_linking(self.p) {
                        return Err(fail(format!("stored self-linking for {s} differs from recomputation")));
                    }
                }
            }
            Witnesses::AnalyticEx1(w) => check_tables(&w.tables, &summands)?,
            Witnesses::LinearEx2(w) => {
                let first = summands.first().ok_or_else(|| fail(String::from("no summands")))?;
                if summands.iter().any(|s| s != first) {
                    return Err(fail(String::from("linear certificate summands are not copies of one knot")));
                }
                check_tables(core::slice::from_ref(&w.table), core::slice::from_ref(first))?;
            }
        }
        Ok(())
    }

    fn replay_exhaustive(&self, w: &ExhaustiveWitness) -> Result<()> {
        let n = self.n();
        let p = u32::try_from(self.p).map_err(|_| fail(String::from("prime too large")))?;
        let mode = self.mode.ok_or_else(|| fail(String::from("exhaustive certificate without a mode")))?;
        if w.tables.len() != n || w.self_linking.len() != n || w.tables.iter().any(|t| t.len() as u64 != self.p) {
            return Err(fail(String::from("table shape does not match the summands")));
        }
        // every g below g_lower must be an obstructed level, in order
        for g in 0..self.g_lower {
            let level = w.levels.get(g).ok_or_else(|| fail(format!("missing level g = {g}")))?;
            if level.g != g || !level.obstructed {
                return Err(fail(format!("level {g} is not recorded as obstructed")));
            }
            if g > n / 2 {
                return Err(fail(format!("level {g} exceeds floor(n/2)")));
            }
            let d = required_dimension(n, g);
            if level.dim != d {
                return Err(fail(format!("level {g} has dimension {} instead of {d}", level.dim)));
            }
            let threshold = four(g);
            let mut recorded = level.subspaces.iter();
            for basis in subspaces(n, d, p)? {
                if mode == Mode::Isotropic && !is_isotropic(&basis, &w.self_linking) {
                    continue;
                }
                let wit =
                    recorded.next().ok_or_else(|| fail(format!("level {g}: subspace {basis:?} has no witness")))?;
                let rows: Vec<Vec<u32>> = basis.rows().iter().map(|r| r.entries().to_vec()).collect();
                if wit.basis != rows {
                    return Err(fail(format!("level {g}: witness order differs from enumeration at {rows:?}")));
                }
                let chi = FpVector::new(p, wit.character.iter().copied());
                if chi.len() != n || chi.is_zero() || !basis.contains(&chi) {
                    return Err(fail(format!(
                        "level {g}: character {:?} not a nonzero vector of its subspace",
                        wit.character
                    )));
                }
                let parts: Vec<RatInterval> =
                    chi.entries().iter().enumerate().map(|(i, &r)| table_interval(&w.tables[i], r as usize)).collect();
                let interval = interval_sum(&parts);
                if interval != wit.interval || !certified_abs_exceeds(&interval, &threshold) {
                    return Err(fail(format!("level {g}: interval {interval} does not exceed {threshold}")));
                }
            }
            if recorded.next().is_some() {
                return Err(fail(format!("level {g}: more witnesses than subspaces")));
            }
        }
        if self.g_lower > n / 2 + 1 {
            return Err(fail(String::from("bound exceeds floor(n/2) + 1")));
        }
        // the terminating level, when present, must exhibit a subspace with no bad character
        if let Some(level) = w.levels.get(self.g_lower) {
            let rows = level
                .counterexample
                .as_ref()
                .ok_or_else(|| fail(String::from("terminating level has no counterexample")))?;
            let basis = EchelonBasis::span_of(
                p,
                n,
                &rows.iter().map(|r| FpVector::new(p, r.iter().copied())).collect::<Vec<_>>(),
            );
            if level.obstructed
                || basis.dim() != level.dim
                || (mode == Mode::Isotropic && !is_isotropic(&basis, &w.self_linking))
            {
                return Err(fail(String::from("terminating level counterexample is malformed")));
            }
            let threshold = four(level.g);
            for (_, chi) in basis.nonzero_vectors() {
                let parts: Vec<RatInterval> =
                    chi.entries().iter().enumerate().map(|(i, &r)| table_interval(&w.tables[i], r as usize)).collect();
                if certified_abs_exceeds(&interval_sum(&parts), &threshold) {
                    return Err(fail(String::from("counterexample subspace contains a bad character")));
                }
            }
        }
        Ok(())
    }

    fn replay_analytic(&self, w: &AnalyticWitness) -> Result<()> {
        let n = self.n();
        if self.p != 5 || w.m_values.len() != n || w.tables.len() != n {
            return Err(fail(String::from("analytic certificate shape mismatch")));
        }
        for (i, &m) in w.m_values.iter().enumerate() {
            let expected = (4 * m as i64 * m as i64 + 1, 2 * m as i64);
            if self.summands[i] != expected {
                return Err(fail(format!("summand {i} is not B_{m}")));
            }
        }
        if self.g_lower != w.g + 1 || 2 * w.g >= n {
            return Err(fail(String::from("analytic bound must be g + 1 with 2g < n")));
        }
        for i in 0..n {
            if w.lower[i] != &w.tables[i][1] - &Rat::one() || w.upper[i] != magnitude_bound(&w.tables[i]) {
                return Err(fail(format!("bracket data for summand {} is inconsistent", i + 1)));
            }
        }
        let d = required_dimension(n, w.g);
        let threshold = four(w.g);
        let mut steps = w.steps.iter();
        for a in d.max(1)..=n {
            if a == 1 {
                let lhs = w.lower[0].clone();
                if lhs > threshold {
                    let s = steps.next().ok_or_else(|| fail(String::from("missing step a = 1")))?;
                    if s.a != 1 || s.lhs != lhs || s.threshold != threshold {
                        return Err(fail(String::from("step a = 1 mismatch")));
                    }
                    continue;
                }
                let iso = w.isotropy.as_ref().ok_or_else(|| fail(String::from("index 1 needs the isotropy step")))?;
                let q = &iso.self_linking;
                if iso.index != 1 || q.is_zero() || q.is_negative() || *q >= Rat::one() {
                    return Err(fail(String::from("isotropy step does not exclude the first coordinate line")));
                }
                continue;
            }
            let s = steps.next().ok_or_else(|| fail(format!("missing step a = {a}")))?;
            let lhs = &w.lower[a - 1] - &w.upper[..a - 1].iter().sum::<Rat>();
            if s.a != a || s.lhs != lhs || s.threshold != threshold || lhs <= threshold {
                return Err(fail(format!("step a = {a} does not replay: {lhs} vs {threshold}")));
            }
        }
        if steps.next().is_some() {
            return Err(fail(String::from("extra analytic steps")));
        }
        Ok(())
    }

    fn replay_linear(&self, w: &LinearWitness) -> Result<()> {
        let n = self.n();
        if w.n != n || !n.is_multiple_of(2) || n == 0 {
            return Err(fail(String::from("linear certificate needs an even, positive number of copies")));
        }
        let s = Rat::from_int(w.orientation.sign());
        let signed: Vec<Rat> = w.table.iter().map(|v| &s * v).collect();
        let b_minus = (1..signed.len())
            .map(|r| &signed[r] - &Rat::one())
            .max()
            .ok_or_else(|| fail(String::from("empty table")))?;
        let b_plus =
            (1..signed.len()).map(|r| &Rat::one() - &signed[r]).chain(core::iter::once(Rat::zero())).max().unwrap();
        if b_minus != w.b_minus || b_plus != w.b_plus || b_minus <= b_plus {
            return Err(fail(String::from("B- / B+ do not replay")));
        }
        if w.r_m == 0 || w.r_m >= signed.len() || &signed[w.r_m] - &Rat::one() != b_minus {
            return Err(fail(String::from("r_m does not attain B-")));
        }
        let c = Rat::from_int(2) * (&Rat::from_int(4) + &b_minus + &b_plus) / (&b_minus - &b_plus);
        if c != w.c {
            return Err(fail(format!("coefficient {} does not replay (expected {c})", w.c)));
        }
        let expected_g = (Rat::from_int(n as i64) / &c).ceil();
        if BigInt::from(self.g_lower) != expected_g {
            return Err(fail(format!("g_lower {} != ceil(n/c) = {expected_g}", self.g_lower)));
        }
        if Rat::from_int(n as i64) <= &c * &Rat::from_int(self.g_lower as i64 - 1) {
            return Err(fail(String::from("n > c·(g_lower − 1) fails")));
        }
        if w.steps.len() != self.g_lower {
            return Err(fail(String::from("one step per g below g_lower is required")));
        }
        for (g, step) in w.steps.iter().enumerate() {
            let k = (n - 2 * g) / 2;
            let lhs = &Rat::from_int(k as i64) * &b_minus - &Rat::from_int((n - k) as i64) * &b_plus;
            if step.g != g || step.k != k || step.lhs != lhs || step.rhs != four(g) || lhs <= step.rhs {
                return Err(fail(format!("linear step g = {g} does not replay")));
            }
        }
        Ok(())
    }
}
