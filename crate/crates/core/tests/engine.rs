use std::time::Instant;

use clasp_core::bound::{
    analytic_certificate_ex1, constant_coordinate_vector, family_sum, genus_lower_bound, greedy_family, obstructed,
    Mode, ObstructionConfig, Witnesses,
};
use clasp_core::exactmath::{EchelonBasis, FpMatrix, FpVector, Rat};
use clasp_core::knot::{bm_family, two_bridge, SumSpec, Summand};
use proptest::prelude::*;

fn bm(m: u64) -> Summand {
    Summand::new(bm_family(m).unwrap().0).unwrap()
}

fn example_one() -> SumSpec {
    family_sum(&greedy_family(1).unwrap()).unwrap()
}

#[test]
fn example_one_literal_stops_at_coordinate_line() {
    let s = example_one();
    let r = obstructed(&s, 1, &ObstructionConfig::literal()).unwrap();
    assert!(!r.obstructed);
    assert_eq!(r.level.counterexample, Some(vec![vec![1, 0, 0, 0]]));
    let c = genus_lower_bound(&s, &ObstructionConfig::literal()).unwrap();
    assert_eq!(c.g_lower, 1);
    c.verify().unwrap();
}

#[test]
fn example_one_isotropic_certifies_two() {
    let started = Instant::now();
    let s = example_one();
    assert!(obstructed(&s, 1, &ObstructionConfig::isotropic()).unwrap().obstructed);
    let c = genus_lower_bound(&s, &ObstructionConfig::isotropic()).unwrap();
    assert_eq!(c.g_lower, 2);
    c.verify().unwrap();
    let Witnesses::Exhaustive(w) = &c.witnesses else { panic!("wrong witness kind") };
    assert_eq!(w.levels.len(), 3);
    // every recorded bad character has its last nonzero coordinate past the first summand
    for level in &w.levels[..2] {
        for sw in &level.subspaces {
            assert!(sw.character.iter().rposition(|&x| x != 0).unwrap() >= 1);
        }
    }
    assert!(started.elapsed().as_secs() < 60);
}

#[test]
fn analytic_and_exhaustive_agree() {
    let f = greedy_family(1).unwrap();
    let analytic = analytic_certificate_ex1(&f, 1).unwrap();
    let exhaustive = genus_lower_bound(&family_sum(&f).unwrap(), &ObstructionConfig::isotropic()).unwrap();
    assert!(exhaustive.g_lower >= analytic.g_lower);
    assert_eq!(analytic.g_lower, 2);
    analytic.replay().unwrap();
    exhaustive.replay().unwrap();
}

#[test]
fn greedy_families_replay() {
    for g in 1..=3 {
        let f = greedy_family(g).unwrap();
        assert_eq!(f.m_values.len(), 4 * g);
        assert!(f.m_values.iter().all(|m| m % 5 == 1));
        f.replay().unwrap();
        let c = analytic_certificate_ex1(&f, g).unwrap();
        assert_eq!(c.g_lower, g + 1);
        c.verify().unwrap();
    }
}

fn small_sums() -> Vec<SumSpec> {
    let pool = [bm(1), bm(26), bm(51)];
    let mut out = Vec::new();
    for len in 1..=3usize {
        let mut idx = vec![0usize; len];
        loop {
            out.push(SumSpec::new(idx.iter().map(|&i| pool[i].clone()).collect(), 5).unwrap());
            let mut pos = len;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < pool.len() {
                    break;
                }
                idx[pos] = 0;
            }
            if idx.iter().all(|&i| i == 0) {
                break;
            }
        }
    }
    let k1 = two_bridge(13, 2).unwrap();
    for n in 1..=3 {
        out.push(SumSpec::copies(&k1, n, 13).unwrap());
    }
    out
}

#[test]
fn obstruction_is_monotone_in_g() {
    let sums = small_sums();
    assert_eq!(sums.len(), 3 + 9 + 27 + 3);
    for s in &sums {
        for cfg in [ObstructionConfig::literal(), ObstructionConfig::isotropic()] {
            let levels: Vec<bool> = (0..=s.n() / 2).map(|g| obstructed(s, g, &cfg).unwrap().obstructed).collect();
            for g in 1..levels.len() {
                assert!(!levels[g] || levels[g - 1], "{:?} {:?}: {levels:?}", s.summands(), cfg.mode);
            }
        }
    }
}

#[test]
fn literal_never_exceeds_isotropic_and_mirror_is_invisible() {
    for s in small_sums() {
        let lit = genus_lower_bound(&s, &ObstructionConfig::literal()).unwrap();
        let iso = genus_lower_bound(&s, &ObstructionConfig::isotropic()).unwrap();
        assert!(lit.g_lower <= iso.g_lower);
        for (cfg, g) in [(ObstructionConfig::literal(), lit.g_lower), (ObstructionConfig::isotropic(), iso.g_lower)] {
            let mirrored = genus_lower_bound(&s.mirrored(), &cfg).unwrap();
            assert_eq!(mirrored.g_lower, g);
            mirrored.verify().unwrap();
        }
        lit.replay().unwrap();
        iso.replay().unwrap();
    }
}

#[test]
fn isotropic_mode_is_the_default() {
    assert_eq!(ObstructionConfig::default().mode, Mode::Isotropic);
}

fn random_full_rank(p: u32, k: usize, n: usize, seed: &[u32]) -> Option<FpMatrix> {
    let rows: Vec<FpVector> = (0..k).map(|i| FpVector::new(p, (0..n).map(|j| seed[i * n + j]))).collect();
    let m = FpMatrix::from_rows(p, n, &rows);
    (m.rank() == k).then_some(m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn constant_coordinate_vector_contract(
        use13 in any::<bool>(),
        k in 1usize..5,
        extra in 0usize..4,
        v in 1u32..13,
        seed in proptest::collection::vec(0u32..13, 64),
    ) {
        let p = if use13 { 13 } else { 5 };
        let v = 1 + v % (p - 1);
        let n = k + extra;
        let Some(m) = random_full_rank(p, k, n, &seed) else { return Ok(()) };
        let c = constant_coordinate_vector(&m, v).unwrap();
        prop_assert!(c.count_equal(v) >= k);
        // membership by solving against the row-reduced span
        let span = EchelonBasis::span_of(p, n, &m.row_vectors());
        prop_assert!(span.contains(&c));
    }
}

#[test]
fn b13_2_absolute_values() {
    let t = clasp_core::cg::cg_table(&two_bridge(13, 2).unwrap(), 13).unwrap();
    let sorted: std::collections::BTreeSet<Rat> = t.values()[1..].iter().map(Rat::abs).collect();
    let expected: std::collections::BTreeSet<Rat> = [1, 9, 17, 23, 27, 29].iter().map(|&x| Rat::new(x, 13)).collect();
    assert_eq!(sorted, expected);
}
