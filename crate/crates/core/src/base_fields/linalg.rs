//! Dense linear systems over `F_p`.

/// A solution of `M x = b` over `F_p`, with every free variable set to zero.
///
/// `columns[j]` is the `j`-th column of `M`; all columns and `b` have the same
/// length. Returns `None` when the system is inconsistent.
pub fn solve_mod_p(columns: &[Vec<u32>], b: &[u32], p: u32) -> Option<Vec<u32>> {
    let rows = b.len();
    let cols = columns.len();
    let mut m: Vec<Vec<u32>> = (0..rows)
        .map(|r| {
            let mut row: Vec<u32> = columns.iter().map(|c| c[r] % p).collect();
            row.push(b[r] % p);
            row
        })
        .collect();
    let inv = |a: u32| (1..p).find(|&x| x * a % p == 1).expect("unit");
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let s = inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = *x * s % p;
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..=cols {
                    m[i][j] = (m[i][j] + p * p - f * m[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| row[cols] != 0) {
        return None;
    }
    let mut x = vec![0u32; cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols];
    }
    Some(x)
}

/// Rank over `F_p` of the matrix with the given columns.
pub fn rank_mod_p(columns: &[Vec<u32>], p: u32) -> usize {
    let Some(rows) = columns.first().map(Vec::len) else {
        return 0;
    };
    let mut m: Vec<Vec<u32>> = (0..rows)
        .map(|r| columns.iter().map(|c| c[r] % p).collect())
        .collect();
    let inv = |a: u32| (1..p).find(|&x| x * a % p == 1).expect("unit");
    let mut r = 0;
    for c in 0..columns.len() {
        let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let s = inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = *x * s % p;
        }
        for i in r + 1..rows {
            if m[i][c] != 0 {
                let f = m[i][c];
                for j in c..columns.len() {
                    m[i][j] = (m[i][j] + p * p - f * m[r][j] % p) % p;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(rank_mod_p(&[vec![1, 2], vec![2, 1]], 3), 1);
        assert_eq!(rank_mod_p(&[vec![1, 0], vec![1, 1]], 2), 2);
        assert_eq!(rank_mod_p(&[vec![0, 0]], 5), 0);
    }

    #[test]
    fn solves_and_detects_inconsistency() {
        // x + y = 1, y = 2 over F_3
        let cols = vec![vec![1, 0], vec![1, 1]];
        assert_eq!(solve_mod_p(&cols, &[1, 2], 3), Some(vec![2, 2]));
        // x + y = 1, 2x + 2y = 0 over F_3
        let cols = vec![vec![1, 2], vec![1, 2]];
        assert_eq!(solve_mod_p(&cols, &[1, 0], 3), None);
        // free variable set to zero
        let cols = vec![vec![1], vec![1]];
        assert_eq!(solve_mod_p(&cols, &[1], 2), Some(vec![1, 0]));
    }
}
