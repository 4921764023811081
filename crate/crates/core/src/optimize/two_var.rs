use crate::error::{Error, Result};

/// Integer optimum of a concave objective along a line with an integrality constraint.
///
/// `z` is the maximizer of the relaxed problem and `g(x)` returns the second variable
/// when it is an integer for the given `x`. The scan visits `x = round(z) + k` for
/// `k = 0, -1, 1, -2, 2, ...` and stops at the first `|k|` with a feasible point. When
/// both signs are feasible the larger objective wins, and on equal objectives the
/// smaller `x`. Rounding is half up, and `|k|` is capped at `|z| + 1`.
pub fn solve_two_var<G, F>(z: f64, g: G, f: F) -> Result<(i64, i64)>
where
    G: Fn(i64) -> Option<i64>,
    F: Fn(i64, i64) -> i64,
{
    if !z.is_finite() {
        return Err(Error::InvalidParameters(format!("relaxed optimum {z} is not finite")));
    }
    let center = (z + 0.5).floor() as i64;
    let cap = z.abs().floor() as i64 + 1;
    for k in 0..=cap {
        let mut best: Option<(i64, i64, i64)> = None;
        for x in if k == 0 { vec![center] } else { vec![center - k, center + k] } {
            if let Some(y) = g(x) {
                let value = f(x, y);
                if best.is_none_or(|(_, _, v)| value > v) {
                    best = Some((x, y, value));
                }
            }
        }
        if let Some((x, y, _)) = best {
            return Ok((x, y));
        }
    }
    Err(Error::Infeasible(format!("no integer point within {cap} of {z}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cna_instance(n: i64) -> (i64, i64) {
        let z = (n - 1) as f64 / 4.0;
        solve_two_var(z, |x| (x >= 0 && n - 2 * x >= 0).then(|| n - 2 * x), |x, y| (x + 1) * (y + 1) - 2).unwrap()
    }

    #[test]
    fn cna_instances() {
        assert_eq!(cna_instance(7), (2, 3));
        assert_eq!(cna_instance(24), (6, 12));
    }

    #[test]
    fn cna_instance_matches_sweep() {
        for n in 1..=200i64 {
            let best = (0..=n / 2).map(|x| (x + 1) * (n - 2 * x + 1) - 2).max().unwrap();
            let (x, y) = cna_instance(n);
            assert_eq!((x + 1) * (y + 1) - 2, best, "n={n}");
        }
    }

    #[test]
    fn identity_map_at_integer() {
        assert_eq!(solve_two_var(5.0, Some, |x, y| -(x - 5).abs() - y).unwrap(), (5, 5));
    }

    #[test]
    fn skips_to_nearest_feasible() {
        // Only multiples of 3 are feasible; 7 rounds to 7, then 6 and 8 are tried, 6 wins.
        let g = |x: i64| (x % 3 == 0).then_some(x / 3);
        assert_eq!(solve_two_var(7.2, g, |x, _| -(x - 7).abs()).unwrap(), (6, 2));
        // Both neighbours feasible: larger objective wins.
        let g = |x: i64| (x != 10).then_some(0);
        assert_eq!(solve_two_var(10.0, g, |x, _| x).unwrap(), (11, 0));
    }

    #[test]
    fn infeasible_errors() {
        assert!(solve_two_var(3.0, |_| None, |_, _| 0).is_err());
        assert!(solve_two_var(f64::NAN, Some, |_, _| 0).is_err());
    }
}
