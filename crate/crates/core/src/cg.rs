//! Characters on the branched-cover homology, the chain-matrix
//! Casson–Gordon signature σ(K, χ), and the ±1 brackets it gives for
//! σ₁τ(K, χ) when the cover is a lens space.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::exactmath::{fp_kernel, interval_sum, inv_mod, is_odd_prime, FpMatrix, FpVector, Rat, RatInterval};
use crate::knot::{chain_presentation, inadmissible, ChainPresentation, Orientation, SumSpec, Summand, TwoBridgeKnot};
use crate::{Error, Result};

/// `χ_r`: meridian values `r · generator (mod p)`, lifted to `{0, …, p−1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Character {
    pub p: u32,
    pub a_vec: [u32; 2],
    pub r: u32,
}

impl Character {
    pub fn is_trivial(&self) -> bool {
        self.r == 0
    }

    /// `Λ · a ≡ 0 (mod p)`.
    pub fn well_defined_on(&self, pres: &ChainPresentation) -> bool {
        let lambda = FpMatrix::from_int_matrix(&pres.lambda(), self.p);
        lambda.mul_vec(&FpVector::new(self.p, self.a_vec)).is_zero()
    }
}

fn small_prime(p: u64) -> Result<u32> {
    if !is_odd_prime(p) || p > u32::MAX as u64 {
        return Err(Error::InvalidPrime(p));
    }
    Ok(p as u32)
}

/// Generator of `ker(Λ mod p)`, scaled so its last coordinate is 1.
pub fn character_generator(pres: &ChainPresentation, p: u64) -> Result<FpVector> {
    let p32 = small_prime(p)?;
    let det = pres.order();
    if !det.is_multiple_of(p) {
        return Err(Error::InadmissiblePrime { p, det, reason: format!("{p} does not divide {det}") });
    }
    if (det / p).is_multiple_of(p) {
        return Err(Error::InadmissiblePrime { p, det, reason: format!("{} divides {det}", p * p) });
    }
    let kernel = fp_kernel(&pres.lambda(), p32)?;
    if kernel.len() != 1 {
        return Err(Error::InadmissiblePrime {
            p,
            det,
            reason: format!("kernel of the linking matrix mod {p} has dimension {}", kernel.len()),
        });
    }
    let v = &kernel[0];
    let e = v.entries();
    let raw = [e[0], e[1]];
    if raw.contains(&0) {
        return Err(Error::UnsupportedCharacter { p, generator: raw });
    }
    let scale = inv_mod(e[1], p32);
    Ok(v.scale(scale))
}

pub fn character(pres: &ChainPresentation, r: u64, p: u64) -> Result<Character> {
    let generator = character_generator(pres, p)?;
    if r >= p {
        return Err(Error::CharacterIndex { r, p });
    }
    let g = generator.scale(r as u32);
    Ok(Character { p: p as u32, a_vec: [g.entries()[0], g.entries()[1]], r: r as u32 })
}

/// `σ(K, χ_r) = (2/p²) · aᵀ Λ (p𝟙 − a) − ε` with `a = r · generator` lifted
/// to `{1, …, p−1}` and `ε = ±1` the orientation sign; `χ₀` gives 0.
pub fn cg_sigma(pres: &ChainPresentation, r: u64, p: u64) -> Result<Rat> {
    let chi = character(pres, r, p)?;
    Ok(sigma_of(pres, &chi))
}

fn sigma_of(pres: &ChainPresentation, chi: &Character) -> Rat {
    if chi.is_trivial() {
        return Rat::zero();
    }
    let lambda = pres.lambda();
    let p = BigInt::from(chi.p);
    let a: [BigInt; 2] = chi.a_vec.map(BigInt::from);
    let complement: [BigInt; 2] = a.clone().map(|x| &p - x);
    let mut quad = BigInt::zero();
    for i in 0..2 {
        for j in 0..2 {
            quad += &a[i] * &lambda[(i, j)] * &complement[j];
        }
    }
    Rat::new(quad * 2, &p * &p) - Rat::from_int(pres.orientation().sign())
}

/// `[σ − 1, σ + 1]`, the bracket for σ₁τ on a lens-space cover.
pub fn theorem_interval(sigma: &Rat) -> RatInterval {
    RatInterval::around(sigma, &Rat::one())
}

/// The full table `r ↦ σ(K, χ_r)` for `r = 0, …, p−1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CgTable {
    knot: TwoBridgeKnot,
    orientation: Orientation,
    p: u64,
    generator: [u32; 2],
    values: Vec<Rat>,
}

impl CgTable {
    pub fn knot(&self) -> &TwoBridgeKnot {
        &self.knot
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn generator(&self) -> [u32; 2] {
        self.generator
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn value(&self, r: usize) -> &Rat {
        &self.values[r]
    }

    /// Bracket for σ₁τ(K, χ_r); `χ₀` is refined to `[0, 0]`.
    pub fn interval(&self, r: usize) -> RatInterval {
        if r == 0 {
            RatInterval::point(Rat::zero())
        } else {
            theorem_interval(&self.values[r])
        }
    }

    pub fn intervals(&self) -> Vec<RatInterval> {
        (0..self.values.len()).map(|r| self.interval(r)).collect()
    }

    /// Same table with every value negated (the mirror image).
    pub fn mirrored(&self) -> CgTable {
        CgTable {
            orientation: self.orientation.flip(),
            values: self.values.iter().map(|v| -v).collect(),
            ..self.clone()
        }
    }

    /// Reassemble a table from stored values, e.g. one read from a cache.
    /// Only the shape invariants are checked.
    pub fn from_parts(
        knot: TwoBridgeKnot,
        orientation: Orientation,
        p: u64,
        generator: [u32; 2],
        values: Vec<Rat>,
    ) -> Result<Self> {
        let ok = values.len() as u64 == p
            && values.first().is_some_and(Rat::is_zero)
            && (1..values.len()).all(|r| values[r] == values[values.len() - r]);
        if !ok {
            return Err(Error::InvalidArgument(format!("malformed table for {knot} at p = {p}")));
        }
        Ok(CgTable { knot, orientation, p, generator, values })
    }
}

pub fn cg_table_for(summand: &Summand, p: u64) -> Result<CgTable> {
    let pres = &summand.presentation;
    let generator = character_generator(pres, p)?;
    let values = (0..p).map(|r| cg_sigma(pres, r, p)).collect::<Result<Vec<_>>>()?;
    let e = generator.entries();
    Ok(CgTable { knot: summand.knot.clone(), orientation: summand.orientation(), p, generator: [e[0], e[1]], values })
}

pub fn cg_table(knot: &TwoBridgeKnot, p: u64) -> Result<CgTable> {
    if !crate::knot::p_torsion_admissible(knot, p) && is_odd_prime(p) {
        return Err(inadmissible(knot, p));
    }
    cg_table_for(&Summand::new(knot.clone())?, p)
}

pub fn sigma_tau_interval(knot: &TwoBridgeKnot, r: u64, p: u64) -> Result<RatInterval> {
    let pres = chain_presentation(knot)?;
    let sigma = cg_sigma(&pres, r, p)?;
    Ok(if r == 0 { RatInterval::point(Rat::zero()) } else { theorem_interval(&sigma) })
}

/// Per-summand interval tables for a connected sum, so that brackets for
/// many character tuples can be summed without recomputing σ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumTables {
    p: u64,
    tables: Vec<CgTable>,
    intervals: Vec<Vec<RatInterval>>,
}

impl SumTables {
    pub fn new(sum: &SumSpec) -> Result<Self> {
        let tables = sum.summands().iter().map(|s| cg_table_for(s, sum.p())).collect::<Result<Vec<_>>>()?;
        let intervals = tables.iter().map(CgTable::intervals).collect();
        Ok(SumTables { p: sum.p(), tables, intervals })
    }

    pub fn tables(&self) -> &[CgTable] {
        &self.tables
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Bracket for σ₁τ of the sum at the character tuple `chi`, by additivity.
    pub fn interval(&self, chi: &[u32]) -> Result<RatInterval> {
        if chi.len() != self.intervals.len() {
            return Err(Error::InvalidArgument(format!(
                "character tuple has {} entries for {} summands",
                chi.len(),
                self.intervals.len()
            )));
        }
        let mut parts = Vec::with_capacity(chi.len());
        for (table, &r) in self.intervals.iter().zip(chi) {
            let iv = table.get(r as usize).ok_or(Error::CharacterIndex { r: r as u64, p: self.p })?;
            parts.push(iv);
        }
        Ok(interval_sum(parts))
    }
}

pub fn sum_sigma_tau_interval(sum: &SumSpec, chi: &[u32]) -> Result<RatInterval> {
    SumTables::new(sum)?.interval(chi)
}
