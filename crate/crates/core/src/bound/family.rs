use alloc::format;
use alloc::vec::Vec;

use super::certificate::{
    magnitude_bound, AnalyticWitness, BoundCertificate, CertificateKind, IndexStep, IsotropyStep, Preconditions,
    Witnesses,
};
use super::exhaustive::Mode;
use super::required_dimension;
use crate::cg::{cg_sigma, cg_table_for};
use crate::exactmath::Rat;
use crate::knot::{bm_family, chain_presentation, p_torsion_admissible, SumSpec, Summand};
use crate::{Error, Result};

const FAMILY_PRIME: u64 = 5;

/// One position of the selection: `L_j > Σ_{i<j} U_i + 4j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eq2Step {
    /// 1-based.
    pub position: usize,
    pub m: u64,
    pub lower: Rat,
    pub upper_sum: Rat,
    pub bound: Rat,
}

/// An ordered family of `B_m` with `m = 5k + 1`, `k ≡ 0 (mod 5)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyParams {
    pub g: usize,
    pub m_values: Vec<u64>,
    pub steps: Vec<Eq2Step>,
}

struct Brackets {
    /// σ(B_m, χ₁) − 1
    lower: Rat,
    /// largest certified |σ₁τ(B_m, χ_r)|
    upper: Rat,
}

fn summand(m: u64) -> Result<Summand> {
    Summand::new(bm_family(m)?.0)
}

/// `σ(B_m, χ₁) − 1` alone, for scanning candidates cheaply.
fn lower_bracket(m: u64) -> Result<Rat> {
    let pres = chain_presentation(&bm_family(m)?.0)?;
    Ok(cg_sigma(&pres, 1, FAMILY_PRIME)? - Rat::one())
}

fn brackets(m: u64) -> Result<Brackets> {
    let s = summand(m)?;
    let t = cg_table_for(&s, FAMILY_PRIME)?;
    Ok(Brackets { lower: t.value(1) - &Rat::one(), upper: magnitude_bound(t.values()) })
}

impl FamilyParams {
    /// A family with no recorded selection steps, e.g. a hand-picked list.
    pub fn from_m_values(g: usize, m_values: Vec<u64>) -> Self {
        FamilyParams { g, m_values, steps: Vec::new() }
    }

    /// Recomputes every bracket from the knot model and checks the
    /// selection inequality at each position `j ≥ 2`.
    pub fn replay(&self) -> Result<()> {
        let fail = |msg: alloc::string::String| Error::FamilyNotCertifying(msg);
        if self.m_values.first() != Some(&1) {
            return Err(fail(format!("family must start with m = 1, got {:?}", self.m_values.first())));
        }
        let mut upper_sum = Rat::zero();
        for (idx, &m) in self.m_values.iter().enumerate() {
            let j = idx + 1;
            if m % 5 != 1 || ((m - 1) / 5) % 5 != 0 {
                return Err(fail(format!("m = {m} is not 5k + 1 with k divisible by 5")));
            }
            if !p_torsion_admissible(&bm_family(m)?.0, FAMILY_PRIME) {
                return Err(fail(format!("B_{m} has more than one Z_5 summand")));
            }
            let b = brackets(m)?;
            if j >= 2 {
                let bound = &upper_sum + &Rat::from_int(4 * j as i64);
                if b.lower <= bound {
                    return Err(fail(format!("position {j}: {} <= {bound}", b.lower)));
                }
                if let Some(step) = self.steps.get(j - 2) {
                    if step.position != j
                        || step.m != m
                        || step.lower != b.lower
                        || step.upper_sum != upper_sum
                        || step.bound != bound
                    {
                        return Err(fail(format!("recorded step at position {j} does not match recomputation")));
                    }
                }
            }
            upper_sum = upper_sum + b.upper;
        }
        Ok(())
    }
}

/// Greedy selection of `4g` knots `C_1 = B_1, C_2, …`: each position takes
/// the first `k ∈ {prev + 5, prev + 10, …}` with
/// `σ(B_{5k+1}, χ₁) − 1 > Σ_{i<j} U_i + 4j`.
pub fn greedy_family(g: usize) -> Result<FamilyParams> {
    if g == 0 {
        return Err(Error::InvalidArgument(alloc::string::String::from("greedy family requires g >= 1")));
    }
    let mut m_values = alloc::vec![1u64];
    let mut steps = Vec::new();
    let mut upper_sum = brackets(1)?.upper;
    let mut k = 0u64;
    for j in 2..=4 * g {
        let bound = &upper_sum + &Rat::from_int(4 * j as i64);
        loop {
            k += 5;
            let m = 5 * k + 1;
            if !p_torsion_admissible(&bm_family(m)?.0, FAMILY_PRIME) {
                continue;
            }
            if lower_bracket(m)? <= bound {
                continue;
            }
            let b = brackets(m)?;
            if b.lower > bound {
                steps.push(Eq2Step { position: j, m, lower: b.lower, upper_sum: upper_sum.clone(), bound });
                m_values.push(m);
                upper_sum = upper_sum + b.upper;
                break;
            }
        }
    }
    Ok(FamilyParams { g, m_values, steps })
}

/// The connected sum `#ᵢ B_{mᵢ}` studied at `p = 5`.
pub fn family_sum(family: &FamilyParams) -> Result<SumSpec> {
    let summands = family.m_values.iter().map(|&m| summand(m)).collect::<Result<Vec<_>>>()?;
    SumSpec::new(summands, FAMILY_PRIME)
}

/// Certifies `g₄(#F) ≥ g + 1` by the maximal-index argument: if `g₄ ≤ g`,
/// a subspace of dimension `d = ⌈(n − 2g)/2⌉` holds a character whose last
/// nonzero coordinate `a` is at least `d`; scaling it to `χ₁` there gives
/// `σ₁τ ≥ L_a − Σ_{i<a} U_i`, which must not exceed `4g`. When `a = 1` is
/// possible and the inequality fails there, the first coordinate line is
/// excluded because it is not isotropic.
pub fn analytic_certificate_ex1(family: &FamilyParams, g: usize) -> Result<BoundCertificate> {
    let sum = family_sum(family)?;
    let n = sum.n();
    if 2 * g >= n {
        return Err(Error::FamilyNotCertifying(format!("need 2g < n, got g = {g}, n = {n}")));
    }
    let signature = sum.classical_signature()?;
    if signature != 0 {
        return Err(Error::PreconditionViolation(format!("classical signature {signature} != 0")));
    }
    let tables = sum.summands().iter().map(|s| cg_table_for(s, FAMILY_PRIME)).collect::<Result<Vec<_>>>()?;
    let lower: Vec<Rat> = tables.iter().map(|t| t.value(1) - &Rat::one()).collect();
    let upper: Vec<Rat> = tables.iter().map(|t| magnitude_bound(t.values())).collect();
    let threshold = Rat::from_int(4 * g as i64);
    let d = required_dimension(n, g);

    let mut steps = Vec::new();
    let mut isotropy = None;
    for a in d.max(1)..=n {
        let lhs = &lower[a - 1] - &upper[..a - 1].iter().sum::<Rat>();
        if lhs > threshold {
            steps.push(IndexStep { a, lhs, threshold: threshold.clone() });
            continue;
        }
        let q = sum.summands()[0].p_torsion_self_linking(FAMILY_PRIME);
        if a == 1 && !q.is_zero() {
            isotropy = Some(IsotropyStep { index: 1, self_linking: q });
            continue;
        }
        return Err(Error::FamilyNotCertifying(format!(
            "maximal index {a}: L_a - sum U_i = {lhs} does not exceed 4g = {threshold}"
        )));
    }

    let mode = if isotropy.is_some() { Mode::Isotropic } else { Mode::Literal };
    let witness = AnalyticWitness {
        g,
        m_values: family.m_values.clone(),
        tables: tables.iter().map(|t| t.values().to_vec()).collect(),
        lower,
        upper,
        steps,
        isotropy,
    };
    Ok(BoundCertificate::new(
        CertificateKind::AnalyticEx1,
        FAMILY_PRIME,
        sum.summands(),
        g + 1,
        Some(mode),
        Witnesses::AnalyticEx1(witness),
        Preconditions { classical_signature: signature, half_rank: n / 2 },
    ))
}
