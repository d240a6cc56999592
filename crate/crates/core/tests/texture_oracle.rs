use glyphrun::texture::{compute_features, RunLengthMatrix};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Maximal runs found by walking forward from each run start.
fn brute_runs(codes: &[u8]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < codes.len() {
        let mut j = i;
        while j < codes.len() && codes[j] == codes[i] {
            j += 1;
        }
        out.push((codes[i] as usize, j - i));
        i = j;
    }
    out
}

struct OracleFeatures {
    double_sum: [f64; 5],
    vector_form: [f64; 5],
    n_runs: usize,
    n_pixels: usize,
}

fn oracle(codes: &[u8]) -> OracleFeatures {
    let runs = brute_runs(codes);
    let max_len = runs.iter().map(|r| r.1).max().unwrap();
    let p = |i: usize, j: usize| runs.iter().filter(|&&r| r == (i, j)).count() as f64;
    let nr = runs.len() as f64;
    let np = codes.len() as f64;

    let (mut sre, mut lre, mut gln, mut rln) = (0.0, 0.0, 0.0, 0.0);
    for i in 0..4 {
        for j in 1..=max_len {
            sre += p(i, j) / (j * j) as f64;
            lre += p(i, j) * (j * j) as f64;
        }
        let row: f64 = (1..=max_len).map(|j| p(i, j)).sum();
        gln += row * row;
    }
    for j in 1..=max_len {
        let col: f64 = (0..4).map(|i| p(i, j)).sum();
        rln += col * col;
    }
    let double_sum = [sre / nr, lre / nr, gln / nr, rln / nr, nr / np];

    let pr: Vec<f64> = (1..=max_len)
        .map(|j| (0..4).map(|i| p(i, j)).sum())
        .collect();
    let pg: Vec<f64> = (0..4)
        .map(|i| (1..=max_len).map(|j| p(i, j)).sum())
        .collect();
    let vector_form = [
        pr.iter()
            .enumerate()
            .map(|(j, x)| x / ((j + 1) * (j + 1)) as f64)
            .sum::<f64>()
            / nr,
        pr.iter()
            .enumerate()
            .map(|(j, x)| x * ((j + 1) * (j + 1)) as f64)
            .sum::<f64>()
            / nr,
        pg.iter().map(|x| x * x).sum::<f64>() / nr,
        pr.iter().map(|x| x * x).sum::<f64>() / nr,
        nr / np,
    ];
    OracleFeatures {
        double_sum,
        vector_form,
        n_runs: runs.len(),
        n_pixels: codes.len(),
    }
}

fn rel_close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs())
}

fn random_sequences(count: usize, seed: u64) -> Vec<Vec<u8>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.random_range(1..=64);
            // bias toward repeats so long runs show up
            let mut v = vec![rng.random_range(0..4u8)];
            while v.len() < len {
                let next = if rng.random_bool(0.5) {
                    *v.last().unwrap()
                } else {
                    rng.random_range(0..4)
                };
                v.push(next);
            }
            v
        })
        .collect()
}

#[test]
fn matrix_matches_brute_force_runs() {
    for codes in random_sequences(1000, 1) {
        let m = RunLengthMatrix::from_codes(&codes).unwrap();
        let runs = brute_runs(&codes);
        assert_eq!(m.max_run_length(), runs.iter().map(|r| r.1).max().unwrap());
        for level in 0..4 {
            for len in 1..=m.max_run_length() {
                let expect = runs.iter().filter(|&&r| r == (level, len)).count() as u64;
                assert_eq!(m.get(level, len), expect, "{codes:?}");
            }
        }
        // N is the last non-empty column
        assert!(m.rows().iter().any(|row| row[m.max_run_length() - 1] > 0));
    }
}

#[test]
fn derived_stats_match_raw_runs() {
    for codes in random_sequences(1000, 2) {
        let m = RunLengthMatrix::from_codes(&codes).unwrap();
        let d = m.derive();
        let runs = brute_runs(&codes);
        for level in 0..4 {
            let of_level: Vec<usize> = runs.iter().filter(|r| r.0 == level).map(|r| r.1).collect();
            assert_eq!(d.gray_run_number[level], of_level.len() as u64);
            assert_eq!(
                d.run_length_one[level],
                of_level.iter().filter(|&&l| l == 1).count() as u64
            );
            for len in 1..=m.max_run_length() {
                let pixels = of_level.iter().filter(|&&l| l == len).count() * len;
                assert_eq!(d.pixel_number[level][len - 1], pixels as u64);
            }
        }
        for len in 1..=m.max_run_length() {
            assert_eq!(
                d.run_length_run_number[len - 1],
                runs.iter().filter(|r| r.1 == len).count() as u64
            );
        }
        let total_pixels: u64 = d.pixel_number.iter().flatten().sum();
        assert_eq!(total_pixels, codes.len() as u64);
        assert_eq!(d.gray_run_number.iter().sum::<u64>(), m.n_runs());
        assert_eq!(d.run_length_run_number.iter().sum::<u64>(), m.n_runs());
    }
}

#[test]
fn features_match_both_oracle_forms() {
    for codes in random_sequences(1000, 3) {
        let m = RunLengthMatrix::from_codes(&codes).unwrap();
        let f = compute_features(&m, "x");
        let got = [f.sre, f.lre, f.gln, f.rln, f.rp];
        let o = oracle(&codes);
        assert_eq!(m.n_runs() as usize, o.n_runs);
        assert_eq!(m.n_pixels() as usize, o.n_pixels);
        for (k, &g) in got.iter().enumerate() {
            assert!(
                rel_close(g, o.double_sum[k]),
                "{codes:?} feature {k}: {g} vs {}",
                o.double_sum[k]
            );
            assert!(rel_close(g, o.vector_form[k]), "{codes:?} feature {k}");
        }
    }
}

#[test]
fn worked_example_by_hand() {
    let f = compute_features(
        &RunLengthMatrix::from_codes(&[0, 0, 1, 2, 2, 2]).unwrap(),
        "x",
    );
    let o = oracle(&[0, 0, 1, 2, 2, 2]);
    assert!(rel_close(f.sre, 0.453_703_703_703_703_7));
    assert!(rel_close(f.lre, 4.666_666_666_666_667));
    assert!(rel_close(f.sre, o.double_sum[0]));
}

fn codes_strategy() -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..4, 1..200)
}

proptest! {
    #[test]
    fn mass_conservation(codes in codes_strategy()) {
        let m = RunLengthMatrix::from_codes(&codes).unwrap();
        let runs: u64 = m.rows().iter().flatten().sum();
        let pixels: u64 = m.rows().iter().flat_map(|r| r.iter().enumerate().map(|(j, &p)| p * (j as u64 + 1))).sum();
        prop_assert_eq!(runs, m.n_runs());
        prop_assert_eq!(pixels, m.n_pixels());
    }

    #[test]
    fn emphasis_bounds(codes in codes_strategy()) {
        let f = compute_features(&RunLengthMatrix::from_codes(&codes).unwrap(), "x");
        prop_assert!(f.sre > 0.0 && f.sre <= 1.0);
        prop_assert!(f.lre >= 1.0);
        prop_assert!(f.rp > 0.0 && f.rp <= 1.0);
        prop_assert!(f.gln > 0.0 && f.rln > 0.0);
        let all_single = codes.windows(2).all(|w| w[0] != w[1]);
        prop_assert_eq!(f.sre == 1.0, all_single);
        prop_assert_eq!(f.lre == 1.0, all_single);
    }

    #[test]
    fn level_relabeling_leaves_features(codes in codes_strategy(), perm in Just([0u8, 1, 2, 3]).prop_shuffle()) {
        let relabeled: Vec<u8> = codes.iter().map(|&c| perm[c as usize]).collect();
        let a = compute_features(&RunLengthMatrix::from_codes(&codes).unwrap(), "x");
        let b = compute_features(&RunLengthMatrix::from_codes(&relabeled).unwrap(), "x");
        prop_assert_eq!((a.sre, a.lre, a.rln, a.rp), (b.sre, b.lre, b.rln, b.rp));
        prop_assert!(rel_close(a.gln, b.gln));
    }

    #[test]
    fn constant_run_identities(level in 0u8..4, len in 1usize..500) {
        let f = compute_features(&RunLengthMatrix::from_codes(&vec![level; len]).unwrap(), "x");
        let l = len as f64;
        prop_assert_eq!(f.sre, 1.0 / (l * l));
        prop_assert_eq!(f.lre, l * l);
        prop_assert_eq!(f.rp, 1.0 / l);
        prop_assert_eq!((f.gln, f.rln), (1.0, 1.0));
    }
}
