use std::collections::BTreeSet;

use exspectra_core::canon::{canonical_code, small_canonical_form};
use exspectra_core::enumeration::{connected_graphs, free_trees, labeled_tree_count_oracle, pair_count};
use exspectra_core::{Family, Graph};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Rooted tree counts by the Euler transform, then free trees by Otter's
/// dissimilarity formula.
fn otter_free_tree_counts(max: usize) -> Vec<u64> {
    let mut r = vec![0u64; max + 1];
    r[1] = 1;
    for n in 1..max {
        let mut s = 0u64;
        for k in 1..=n {
            let d_sum: u64 = (1..=k).filter(|d| k % d == 0).map(|d| d as u64 * r[d]).sum();
            s += d_sum * r[n - k + 1];
        }
        r[n + 1] = s / n as u64;
    }
    let mut f = vec![0u64; max + 1];
    for n in 1..=max {
        let pairs: u64 = (1..n).map(|i| r[i] * r[n - i]).sum();
        let even = if n % 2 == 0 { r[n / 2] } else { 0 };
        f[n] = r[n] - (pairs - even) / 2;
    }
    f
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Labelled connected graphs: total graphs minus those where vertex 1's
/// component has `k < n` vertices.
fn labeled_connected_counts(max: usize) -> Vec<u64> {
    let all = |k: usize| 1u64 << pair_count(k);
    let mut c = vec![0u64; max + 1];
    for n in 1..=max {
        let split: u64 = (1..n)
            .map(|k| binomial(n as u64 - 1, k as u64 - 1) * c[k] * all(n - k))
            .sum();
        c[n] = all(n) - split;
    }
    c
}

#[test]
fn otter_counts_are_the_reference_values() {
    let f = otter_free_tree_counts(14);
    assert_eq!(&f[1..=14], &[1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159]);
}

#[test]
fn free_trees_match_otter_counts() {
    let f = otter_free_tree_counts(18);
    for (n, &count) in f.iter().enumerate().skip(1) {
        assert_eq!(free_trees(n).unwrap().len() as u64, count, "n = {n}");
    }
}

#[test]
fn free_trees_match_prufer_oracle() {
    for n in 2..=10 {
        let (labeled, classes) = labeled_tree_count_oracle(n).unwrap();
        assert_eq!(labeled, (n as u64).pow(n as u32 - 2));
        assert_eq!(classes, free_trees(n).unwrap().len(), "n = {n}");
    }
    assert_eq!(labeled_tree_count_oracle(10).unwrap(), (100_000_000, 106));
}

#[test]
fn yielded_trees_are_distinct_trees() {
    for n in 1..=12 {
        let mut codes = BTreeSet::new();
        for (code, g) in free_trees(n).unwrap() {
            assert!(g.is_tree());
            assert_eq!(g.order(), n);
            assert_eq!(g.degrees().iter().sum::<usize>(), 2 * (n - 1));
            assert_eq!(canonical_code(&g).unwrap(), code);
            assert!(codes.insert(code));
        }
        for f in [Family::Path(n), Family::Star(n)] {
            let code = canonical_code(&f.build().unwrap()).unwrap();
            assert!(codes.contains(&code), "{f} missing at n = {n}");
        }
    }
}

#[test]
fn labeled_connected_counts_match_exponential_formula() {
    let c = labeled_connected_counts(7);
    assert_eq!(&c[2..=7], &[1, 4, 38, 728, 26704, 1866256]);
    for (n, &count) in c.iter().enumerate().skip(2) {
        assert_eq!(connected_graphs(n, false).unwrap().count() as u64, count, "n = {n}");
    }
}

/// Base seed for randomized checks; `EXSPECTRA_SEED` overrides the default.
fn base_seed() -> u64 {
    std::env::var("EXSPECTRA_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(7)
}

/// Recounts classes from a shuffled edge-subset order, relabelling each
/// graph at random before taking its canonical form.
fn shuffled_class_count(n: usize, seed: u64) -> (usize, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut masks: Vec<u64> = (0..1u64 << pair_count(n)).collect();
    masks.shuffle(&mut rng);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut labeled = 0;
    let mut forms = BTreeSet::new();
    for mask in masks {
        let g = Graph::from_pair_mask(n, mask);
        if !g.is_connected() {
            continue;
        }
        labeled += 1;
        perm.shuffle(&mut rng);
        forms.insert(small_canonical_form(&g.relabel(&perm).unwrap()).unwrap());
    }
    (labeled, forms.len())
}

#[test]
fn connected_classes_match_shuffled_recount() {
    for (n, labeled, classes) in [(4, 38, 6), (5, 728, 21), (6, 26704, 112)] {
        assert_eq!(connected_graphs(n, true).unwrap().count(), classes);
        assert_eq!(shuffled_class_count(n, base_seed() + n as u64), (labeled, classes));
    }
}

#[test]
fn connected_classes_at_seven() {
    let reps: Vec<Graph> = connected_graphs(7, true).unwrap().collect();
    assert_eq!(reps.len(), 853);
    assert!(reps.iter().all(|g| g.is_connected() && g.order() == 7));
}
