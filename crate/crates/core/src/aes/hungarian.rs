//! Maximum-weight bipartite assignment (Kuhn-Munkres with potentials).

/// Assigns rows to distinct columns maximizing the total score. Every row
/// gets a column when there are at least as many columns as rows;
/// otherwise exactly `cols` rows are assigned. `scores` must be
/// rectangular with finite entries.
pub fn hungarian_max(scores: &[Vec<f64>]) -> Vec<Option<usize>> {
    let rows = scores.len();
    let cols = scores.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 {
        return vec![None; rows];
    }
    assert!(scores.iter().all(|r| r.len() == cols), "score matrix must be rectangular");
    if rows <= cols {
        min_cost(rows, cols, |i, j| -scores[i][j])
    } else {
        let by_col = min_cost(cols, rows, |i, j| -scores[j][i]);
        let mut out = vec![None; rows];
        for (c, r) in by_col.into_iter().enumerate() {
            if let Some(r) = r {
                out[r] = Some(c);
            }
        }
        out
    }
}

/// Sum of the assigned entries, accumulated in row order.
pub fn assignment_value(scores: &[Vec<f64>], assignment: &[Option<usize>]) -> f64 {
    assignment.iter().enumerate().filter_map(|(i, c)| c.map(|j| scores[i][j])).sum()
}

/// Minimum-cost assignment of `n` rows into `m >= n` columns.
fn min_cost(n: usize, m: usize, cost: impl Fn(usize, usize) -> f64) -> Vec<Option<usize>> {
    // 1-based potentials; column 0 is a virtual source.
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; m + 1];
    let mut owner = vec![0usize; m + 1];
    let mut way = vec![0usize; m + 1];
    for i in 1..=n {
        owner[0] = i;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; m + 1];
        let mut used = vec![false; m + 1];
        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=m {
                if used[j] {
                    continue;
                }
                let cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=m {
                if used[j] {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut out = vec![None; n];
    for j in 1..=m {
        if owner[j] != 0 {
            out[owner[j] - 1] = Some(j - 1);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(scores: &[Vec<f64>]) -> f64 {
        fn go(s: &[Vec<f64>], row: usize, used: &mut Vec<bool>, acc: f64, best: &mut f64, slack: usize) {
            if row == s.len() {
                *best = best.max(acc);
                return;
            }
            if slack > 0 {
                go(s, row + 1, used, acc, best, slack - 1);
            }
            for j in 0..used.len() {
                if !used[j] {
                    used[j] = true;
                    go(s, row + 1, used, acc + s[row][j], best, slack);
                    used[j] = false;
                }
            }
        }
        let cols = scores[0].len();
        let mut best = f64::NEG_INFINITY;
        go(scores, 0, &mut vec![false; cols], 0.0, &mut best, scores.len().saturating_sub(cols));
        best
    }

    #[test]
    fn diagonal() {
        let s = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        assert_eq!(hungarian_max(&s), vec![Some(0), Some(1)]);
    }

    #[test]
    fn rectangular_both_ways() {
        let wide = vec![vec![0.1, 0.9, 0.5], vec![0.8, 0.85, 0.2]];
        let a = hungarian_max(&wide);
        assert_eq!(a, vec![Some(1), Some(0)]);
        let tall: Vec<Vec<f64>> = (0..3).map(|j| wide.iter().map(|r| r[j]).collect()).collect();
        let b = hungarian_max(&tall);
        assert_eq!(b.iter().filter(|x| x.is_some()).count(), 2);
        assert_eq!(assignment_value(&tall, &b), brute(&tall));
    }

    #[test]
    fn matches_brute_force_on_fixed_cases() {
        let cases = vec![
            vec![vec![4.0, 1.0, 3.0], vec![2.0, 0.0, 5.0], vec![3.0, 2.0, 2.0]],
            vec![vec![-1.0, -2.0], vec![-3.0, -0.5], vec![0.0, -9.0]],
            vec![vec![7.0]],
        ];
        for s in cases {
            let a = hungarian_max(&s);
            assert_eq!(assignment_value(&s, &a), brute(&s));
        }
    }
}
