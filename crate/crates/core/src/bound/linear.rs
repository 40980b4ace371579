use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::certificate::{BoundCertificate, CertificateKind, LinearStep, LinearWitness, Preconditions, Witnesses};
use crate::cg::CgTable;
use crate::exactmath::Rat;
use crate::knot::{Orientation, Summand};
use crate::{Error, Result};

/// The data behind `g₄(nK) ≥ n/c`.
///
/// In the dominant orientation `s`, `s·σ₁τ(K, χ_{r_m}) ≥ B⁻` and
/// `s·σ₁τ(K, χ_r) ≥ −B⁺` for every `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCoefficient {
    pub c: Rat,
    pub r_m: usize,
    pub b_minus: Rat,
    pub b_plus: Rat,
    pub orientation: Orientation,
}

fn coefficient_for(table: &CgTable, orientation: Orientation) -> LinearCoefficient {
    let s = Rat::from_int(orientation.sign());
    let one = Rat::one();
    let signed: Vec<Rat> = table.values().iter().map(|v| &s * v).collect();
    let (r_m, b_minus) = (1..signed.len())
        .map(|r| (r, &signed[r] - &one))
        .fold(None::<(usize, Rat)>, |best, (r, v)| match best {
            Some((_, ref bv)) if *bv >= v => best,
            _ => Some((r, v)),
        })
        .unwrap_or((0, -&one));
    // χ₀ contributes exactly 0
    let b_plus = (1..signed.len()).map(|r| &one - &signed[r]).chain(core::iter::once(Rat::zero())).max().unwrap();
    let c = if b_minus > b_plus {
        Rat::from_int(2) * (&Rat::from_int(4) + &b_minus + &b_plus) / (&b_minus - &b_plus)
    } else {
        Rat::zero()
    };
    LinearCoefficient { c, r_m, b_minus, b_plus, orientation }
}

/// `c = 2(4 + B⁻ + B⁺)/(B⁻ − B⁺)`, from whichever orientation has
/// `B⁻ > B⁺` (the smaller `c` if both do).
pub fn linear_coefficient(table: &CgTable) -> Result<LinearCoefficient> {
    let candidates: Vec<LinearCoefficient> =
        [Orientation::Standard, Orientation::Mirror].into_iter().map(|o| coefficient_for(table, o)).collect();
    let valid = candidates.iter().filter(|c| c.b_minus > c.b_plus).min_by(|x, y| x.c.cmp(&y.c));
    match valid {
        Some(c) => Ok(c.clone()),
        None => {
            let best =
                candidates.iter().max_by(|x, y| (&x.b_minus - &x.b_plus).cmp(&(&y.b_minus - &y.b_plus))).unwrap();
            Err(Error::NoLinearBound { b_minus: format!("{}", best.b_minus), b_plus: format!("{}", best.b_plus) })
        }
    }
}

/// `g₄(nK) ≥ ⌈n/c⌉` for even `n`, with one replayable inequality per
/// excluded genus.
pub fn linear_bound(n: usize, table: &CgTable) -> Result<BoundCertificate> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::HypothesisViolation(format!("n must be even and positive, got n = {n}")));
    }
    let coeff = linear_coefficient(table)?;
    let summand = Summand::new(table.knot().clone())?;
    let summand = if table.orientation() == Orientation::Mirror { summand.mirrored() } else { summand };
    let signature = summand.classical_signature()?;
    if signature != 0 {
        return Err(Error::PreconditionViolation(format!("classical signature {signature} != 0")));
    }
    let g_lower = (Rat::from_int(n as i64) / &coeff.c).ceil();
    let g_lower = usize::try_from(g_lower).map_err(|_| Error::InvalidArgument(String::from("bound overflow")))?;
    let steps = (0..g_lower)
        .map(|g| {
            let k = (n - 2 * g) / 2;
            let lhs = &Rat::from_int(k as i64) * &coeff.b_minus - &Rat::from_int((n - k) as i64) * &coeff.b_plus;
            LinearStep { g, k, lhs, rhs: Rat::from_int(4 * g as i64) }
        })
        .collect();
    let witness = LinearWitness {
        n,
        table: table.values().to_vec(),
        orientation: coeff.orientation,
        r_m: coeff.r_m,
        b_minus: coeff.b_minus,
        b_plus: coeff.b_plus,
        c: coeff.c,
        steps,
    };
    let summands = alloc::vec![summand; n];
    Ok(BoundCertificate::new(
        CertificateKind::LinearEx2,
        table.p(),
        &summands,
        g_lower,
        None,
        Witnesses::LinearEx2(witness),
        Preconditions { classical_signature: 0, half_rank: n / 2 },
    ))
}
