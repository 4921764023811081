use symarray::constructions::{cna, ula};
use symarray::optimize::{cna_opt, ka_r_grid, kma_opt, mra_search, na_opt};
use symarray::SensorArray;

/// Bitmask of pairwise sums, for positions below 64.
fn sum_mask(p: &[i64]) -> u128 {
    let mut m = 0u128;
    for &a in p {
        for &b in p {
            m |= 1 << (a + b);
        }
    }
    m
}

/// Best first hole over all `n`-sensor arrays in `{0..=max}` containing 0,
/// and best `2L+1` over those whose sums fill `{0..2L}`.
fn brute_force(n: usize, max: i64) -> (i64, i64) {
    let (mut general, mut restricted) = (0, 0);
    let mut stack = vec![(vec![0i64], 1i64)];
    while let Some((set, next)) = stack.pop() {
        if set.len() == n {
            let mask = sum_mask(&set);
            let hole = (!mask).trailing_zeros() as i64;
            general = general.max(hole);
            let l = *set.last().unwrap();
            if hole > 2 * l {
                restricted = restricted.max(2 * l + 1);
            }
            continue;
        }
        for p in next..=max {
            let mut s = set.clone();
            s.push(p);
            stack.push((s, p + 1));
        }
    }
    (general, restricted)
}

#[test]
fn search_matches_exhaustive_enumeration() {
    for n in 1..=7usize {
        // A sensor beyond N(N+1)/2 cannot touch the first hole.
        let (general, restricted) = brute_force(n, (n * (n + 1) / 2) as i64);
        assert_eq!(mra_search(n, false).unwrap().contiguous_dof, general, "general n={n}");
        assert_eq!(mra_search(n, true).unwrap().contiguous_dof, restricted, "restricted n={n}");
    }
}

#[test]
fn search_dominates_constructions() {
    let h = |a: &SensorArray| 2 * a.aperture() + 1;
    for n in 2..=10usize {
        let restricted = mra_search(n, true).unwrap().contiguous_dof;
        let general = mra_search(n, false).unwrap().contiguous_dof;
        assert!(general >= restricted);
        assert!(restricted >= h(&ula(n).unwrap()));
        assert!(restricted >= h(&cna(cna_opt(n).unwrap().0).unwrap()), "n={n}");
        if let Ok(out) = ka_r_grid(n) {
            assert!(restricted >= h(&out.array), "n={n}");
        }
        for other in [na_opt(n), kma_opt(n)].into_iter().flatten() {
            assert!(general >= other.contiguous_dof, "n={n}: {} beats the general search", other.array);
        }
    }
}
