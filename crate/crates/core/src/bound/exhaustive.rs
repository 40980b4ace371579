use alloc::format;
use alloc::vec::Vec;

use super::certificate::{
    BoundCertificate, CertificateKind, ExhaustiveWitness, LevelWitness, Preconditions, SubspaceWitness, Witnesses,
};
use super::required_dimension;
use crate::cg::SumTables;
use crate::exactmath::{certified_abs_exceeds, subspaces, EchelonBasis, Rat};
use crate::knot::SumSpec;
use crate::{Error, Result};

/// Which subspaces the obstruction quantifies over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Every subspace of the required dimension.
    Literal,
    /// Only subspaces on which the linking form vanishes identically.
    #[default]
    Isotropic,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Literal => "literal",
            Mode::Isotropic => "isotropic",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "literal" => Some(Mode::Literal),
            "isotropic" => Some(Mode::Isotropic),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ObstructionConfig {
    pub mode: Mode,
    /// Highest `g` to test; at most `floor(n/2)`.
    pub g_max: Option<usize>,
}

impl ObstructionConfig {
    pub fn literal() -> Self {
        ObstructionConfig { mode: Mode::Literal, g_max: None }
    }

    pub fn isotropic() -> Self {
        ObstructionConfig { mode: Mode::Isotropic, g_max: None }
    }
}

/// Outcome of testing a single `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obstruction {
    pub obstructed: bool,
    pub level: LevelWitness,
}

/// The linking form `Σ qᵢ xᵢ yᵢ (mod 1)` vanishes on every pair of basis rows.
pub fn is_isotropic(basis: &EchelonBasis, self_linking: &[Rat]) -> bool {
    let rows = basis.rows();
    for (i, u) in rows.iter().enumerate() {
        for v in &rows[i..] {
            let total: Rat = u
                .entries()
                .iter()
                .zip(v.entries())
                .zip(self_linking)
                .map(|((&x, &y), q)| q * &Rat::from_int(x as i64 * y as i64))
                .sum();
            if !total.fract().is_zero() {
                return false;
            }
        }
    }
    true
}

fn rows_of(basis: &EchelonBasis) -> Vec<Vec<u32>> {
    basis.rows().iter().map(|r| r.entries().to_vec()).collect()
}

struct Engine {
    n: usize,
    p: u32,
    tables: SumTables,
    self_linking: Vec<Rat>,
}

impl Engine {
    fn new(sum: &SumSpec) -> Result<Self> {
        let signature = sum.classical_signature()?;
        if signature != 0 {
            return Err(Error::PreconditionViolation(format!(
                "the classical signature of K satisfies sigma(K) = 0 (got {signature})"
            )));
        }
        let p = u32::try_from(sum.p()).map_err(|_| Error::InvalidPrime(sum.p()))?;
        Ok(Engine {
            n: sum.n(),
            p,
            tables: SumTables::new(sum)?,
            self_linking: sum.summands().iter().map(|s| s.p_torsion_self_linking(sum.p())).collect(),
        })
    }

    fn level(&self, g: usize, mode: Mode) -> Result<Obstruction> {
        if g > self.n / 2 {
            return Err(Error::OutOfRange { g, max: self.n / 2 });
        }
        let d = required_dimension(self.n, g);
        let threshold = Rat::from_int(4 * g as i64);
        let mut witnesses = Vec::new();
        for basis in subspaces(self.n, d, self.p)? {
            if mode == Mode::Isotropic && !is_isotropic(&basis, &self.self_linking) {
                continue;
            }
            let mut bad = None;
            for (_, chi) in basis.nonzero_vectors() {
                let interval = self.tables.interval(chi.entries())?;
                if certified_abs_exceeds(&interval, &threshold) {
                    bad = Some((chi, interval));
                    break;
                }
            }
            match bad {
                Some((chi, interval)) => witnesses.push(SubspaceWitness {
                    basis: rows_of(&basis),
                    character: chi.entries().to_vec(),
                    interval,
                }),
                None => {
                    return Ok(Obstruction {
                        obstructed: false,
                        level: LevelWitness {
                            g,
                            dim: d,
                            obstructed: false,
                            subspaces: Vec::new(),
                            counterexample: Some(rows_of(&basis)),
                        },
                    })
                }
            }
        }
        Ok(Obstruction {
            obstructed: true,
            level: LevelWitness { g, dim: d, obstructed: true, subspaces: witnesses, counterexample: None },
        })
    }
}

/// Whether `g₄(S) ≤ g` is ruled out: every subspace of dimension
/// `⌈(n − 2g)/2⌉` (isotropic ones only, in isotropic mode) contains a
/// character whose σ₁τ bracket lies outside `[−4g, 4g]`.
///
/// Stops at the first subspace without such a character and reports it.
pub fn obstructed(sum: &SumSpec, g: usize, cfg: &ObstructionConfig) -> Result<Obstruction> {
    Engine::new(sum)?.level(g, cfg.mode)
}

/// Scans `g = 0, 1, …` while obstructed; the first unobstructed `g` is the
/// certified lower bound. Never claims more than `floor(n/2) + 1`.
pub fn genus_lower_bound(sum: &SumSpec, cfg: &ObstructionConfig) -> Result<BoundCertificate> {
    let engine = Engine::new(sum)?;
    let half = sum.n() / 2;
    if let Some(g_max) = cfg.g_max {
        if g_max > half {
            return Err(Error::OutOfRange { g: g_max, max: half });
        }
    }
    let ceiling = cfg.g_max.unwrap_or(half);
    let mut levels = Vec::new();
    let mut g_lower = ceiling + 1;
    for g in 0..=ceiling {
        let result = engine.level(g, cfg.mode)?;
        levels.push(result.level);
        if !result.obstructed {
            g_lower = g;
            break;
        }
    }
    let witness = ExhaustiveWitness {
        tables: engine.tables.tables().iter().map(|t| t.values().to_vec()).collect(),
        self_linking: engine.self_linking.clone(),
        levels,
    };
    Ok(BoundCertificate::new(
        CertificateKind::Exhaustive,
        sum.p(),
        sum.summands(),
        g_lower,
        Some(cfg.mode),
        Witnesses::Exhaustive(witness),
        Preconditions { classical_signature: 0, half_rank: half },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot::{two_bridge, Summand};
    use alloc::vec;

    fn b13_sum(n: usize) -> SumSpec {
        SumSpec::copies(&two_bridge(13, 2).unwrap(), n, 13).unwrap()
    }

    #[test]
    fn empty_sum() {
        let s = SumSpec::new(vec![], 5).unwrap();
        let c = genus_lower_bound(&s, &ObstructionConfig::default()).unwrap();
        assert_eq!(c.g_lower, 0);
        c.replay().unwrap();
    }

    #[test]
    fn single_b13_2() {
        // the only line contains χ₂ with bracket [10/13, 36/13], which excludes 0
        let s = b13_sum(1);
        let lit = obstructed(&s, 0, &ObstructionConfig::literal()).unwrap();
        assert!(lit.obstructed);
        assert_eq!(lit.level.subspaces[0].character, vec![2]);
        let c = genus_lower_bound(&s, &ObstructionConfig::literal()).unwrap();
        assert_eq!(c.g_lower, 1);
        c.replay().unwrap();
        c.verify().unwrap();
        // no isotropic lines at all: vacuously obstructed
        let iso = obstructed(&s, 0, &ObstructionConfig::isotropic()).unwrap();
        assert!(iso.obstructed && iso.level.subspaces.is_empty());
    }

    #[test]
    fn zero_dimensional_level_never_obstructs() {
        let s = b13_sum(2);
        for cfg in [ObstructionConfig::literal(), ObstructionConfig::isotropic()] {
            let r = obstructed(&s, 1, &cfg).unwrap();
            assert!(!r.obstructed);
            assert_eq!(r.level.dim, 0);
        }
    }

    #[test]
    fn out_of_range_and_signature() {
        let s = b13_sum(2);
        assert_eq!(obstructed(&s, 2, &ObstructionConfig::default()).err(), Some(Error::OutOfRange { g: 2, max: 1 }));
        let cfg = ObstructionConfig { mode: Mode::Literal, g_max: Some(3) };
        assert!(genus_lower_bound(&s, &cfg).is_err());
        // 7/2 = 3 + 1/2 has an odd chain coefficient: signature unavailable
        let odd = SumSpec::new(vec![Summand::new(two_bridge(7, 2).unwrap()).unwrap()], 7).unwrap();
        assert!(matches!(obstructed(&odd, 0, &ObstructionConfig::default()), Err(Error::PreconditionViolation(_))));
    }

    #[test]
    fn g_max_caps_the_scan() {
        let s = b13_sum(3);
        let cfg = ObstructionConfig { mode: Mode::Literal, g_max: Some(0) };
        let c = genus_lower_bound(&s, &cfg).unwrap();
        assert!(c.g_lower <= 1);
        c.replay().unwrap();
    }

    #[test]
    fn tampered_certificate_fails_replay() {
        let s = b13_sum(1);
        let mut c = genus_lower_bound(&s, &ObstructionConfig::literal()).unwrap();
        if let Witnesses::Exhaustive(w) = &mut c.witnesses {
            w.levels[0].subspaces[0].character = vec![1];
        }
        assert!(c.replay().is_err());
    }
}
