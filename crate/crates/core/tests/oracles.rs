//! Decoders checked against exhaustive search and against each other.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use xzdecode::analysis::{run_trials, trial_rng, Sector};
use xzdecode::decoders::{decode_correlated, decode_erasure_pma, decode_pma, decode_standard, Decoder};
use xzdecode::matching::ErasureSet;
use xzdecode::noise::sample_depolarizing;
use xzdecode::syndrome::{boundary, syndrome};
use xzdecode::tiling::{build_square_torus, Family, SurfaceCode, Tiling};

/// Boundary of every edge subset of a small tiling, as a vertex bitmask.
fn all_boundaries(t: &Tiling) -> Vec<u32> {
    let m = t.edge_count();
    let mut bnd = vec![0u32; 1 << m];
    for x in 1usize..1 << m {
        let edge = t.edge(x.trailing_zeros() as usize);
        bnd[x] = bnd[x & (x - 1)] ^ (1 << edge.a) ^ (1 << edge.b);
    }
    bnd
}

fn vertices(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|v| mask >> v & 1 == 1).collect()
}

#[test]
fn pma_is_minimum_for_every_syndrome_of_the_3x3_torus() {
    let t = build_square_torus(3).unwrap();
    let bnd = all_boundaries(&t);
    let mut best = vec![u32::MAX; 1 << 9];
    for (x, &b) in bnd.iter().enumerate() {
        best[b as usize] = best[b as usize].min(x.count_ones());
    }
    for mask in 0u32..1 << 9 {
        if mask.count_ones() % 2 == 1 {
            continue;
        }
        let s = vertices(mask, 9);
        let x = decode_pma(&t, &s).unwrap();
        assert_eq!(boundary(&t, &x.edges), s);
        assert_eq!(x.edges.count_ones(..) as u32, best[mask as usize], "syndrome {s:?}");
        assert_eq!(x.matched_weight as u32, best[mask as usize]);
    }
}

#[test]
fn erasure_pma_is_minimum_for_random_erasures_of_the_3x3_torus() {
    let t = build_square_torus(3).unwrap();
    let bnd = all_boundaries(&t);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..40 {
        let density = rng.gen_range(0.0..0.8);
        let erased: usize = (0..18).filter(|_| rng.gen_bool(density)).map(|e| 1 << e).sum();
        let erasure = ErasureSet::from_set(t.edge_set((0..18).filter(|e| erased >> e & 1 == 1)));
        let mut best = vec![u32::MAX; 1 << 9];
        for (x, &b) in bnd.iter().enumerate() {
            best[b as usize] = best[b as usize].min((x & !erased).count_ones());
        }
        for mask in (0u32..1 << 9).filter(|m| m.count_ones() % 2 == 0) {
            let s = vertices(mask, 9);
            let x = decode_erasure_pma(&t, &s, &erasure).unwrap();
            assert_eq!(boundary(&t, &x.edges), s);
            assert_eq!(erasure.cost(&x.edges) as u32, best[mask as usize]);
            assert_eq!(x.matched_weight as u32, best[mask as usize]);
        }
    }
}

#[test]
fn empty_erasure_matches_plain_pma_weight() {
    let code = SurfaceCode::new(Family::Triangular, 6).unwrap();
    let none = ErasureSet::none(code.qubit_count());
    for k in 0..300 {
        let e = sample_depolarizing(&code.primal, 0.1, &mut trial_rng(8, k)).unwrap();
        let s = syndrome(&code, &e);
        let a = decode_pma(&code.primal, &s.s_x).unwrap();
        let b = decode_erasure_pma(&code.primal, &s.s_x, &none).unwrap();
        assert_eq!(a.edges.count_ones(..), b.edges.count_ones(..));
    }
}

#[test]
fn decoders_reproduce_syndromes_and_share_the_x_step() {
    for (family, size) in [(Family::Square, 7), (Family::Triangular, 6)] {
        let code = SurfaceCode::new(family, size).unwrap();
        for k in 0..5_000 {
            let e = sample_depolarizing(&code.primal, 0.12, &mut trial_rng(21, k)).unwrap();
            let s = syndrome(&code, &e);
            let std = decode_standard(&code, &s).unwrap();
            let cor = decode_correlated(&code, &s).unwrap();
            assert_eq!(syndrome(&code, &std.estimate), s);
            assert_eq!(syndrome(&code, &cor.estimate), s);
            assert_eq!(std.estimate.ex, cor.estimate.ex);
            // each Z step is optimal for its own objective
            let er = &cor.erasure_used;
            assert!(std.estimate.ez.count_ones(..) <= cor.estimate.ez.count_ones(..));
            assert!(er.cost(&cor.estimate.ez) <= er.cost(&std.estimate.ez));
            assert_eq!(er.cost(&cor.estimate.ez) as u64, cor.matched_weight_z);
        }
    }
}

#[test]
fn correlated_dominates_standard_on_triangular_codes() {
    let code = SurfaceCode::new(Family::Triangular, 8).unwrap();
    let n = 2_000;
    for p in [0.09, 0.11, 0.13] {
        let s = run_trials(&code, p, Decoder::Standard, Sector::Both, n, 12).unwrap();
        let c = run_trials(&code, p, Decoder::Correlated, Sector::Both, n, 12).unwrap();
        let (rs, rc) = (s.failures as f64 / n as f64, c.failures as f64 / n as f64);
        let sigma = ((rs * (1.0 - rs) + rc * (1.0 - rc)) / n as f64).sqrt();
        assert!(rc <= rs + 3.0 * sigma, "p = {p}: correlated {rc} vs standard {rs}");
        // the X halves are decoded identically
        assert_eq!(s.x_failures, c.x_failures);
    }
}

#[test]
fn failure_rate_grows_with_noise_on_the_square_torus() {
    let code = SurfaceCode::new(Family::Square, 8).unwrap();
    let n = 10_000;
    let lo = run_trials(&code, 0.05, Decoder::Standard, Sector::Both, n, 31).unwrap();
    let hi = run_trials(&code, 0.17, Decoder::Standard, Sector::Both, n, 31).unwrap();
    let a = xzdecode::analysis::wilson_interval(lo.failures, n);
    let b = xzdecode::analysis::wilson_interval(hi.failures, n);
    assert!(a.1 < b.0, "{a:?} vs {b:?}");
}

#[test]
fn phase_failures_shrink_with_size_below_threshold() {
    let n = 3_000;
    let rate = |m| {
        let code = SurfaceCode::new(Family::Triangular, m).unwrap();
        run_trials(&code, 0.075, Decoder::Standard, Sector::Z, n, 41).unwrap().failures
    };
    assert!(rate(16) < rate(8));
}
