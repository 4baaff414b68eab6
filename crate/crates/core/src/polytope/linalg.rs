//! Small exact integer linear algebra for lattice geometry in dimension ≤ 4.

use num_integer::Integer;

/// Determinant of a square integer matrix (Bareiss fraction-free
/// elimination).
pub fn det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Rank of an integer matrix given as rows.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        for i in 0..a.len() {
            if i != r && a[i][c] != 0 {
                let (x, y) = (a[r][c], a[i][c]);
                for j in 0..cols {
                    a[i][j] = a[i][j] * x - a[r][j] * y;
                }
                let g = a[i].iter().fold(0i128, |g, &v| g.gcd(&v));
                if g > 1 {
                    a[i].iter_mut().for_each(|v| *v /= g);
                }
            }
        }
        r += 1;
    }
    r
}

/// A primitive integer vector orthogonal to the `n-1` given rows in `Z^n`
/// (generalised cross product), or `None` if the rows are dependent.
pub fn normal_vector(rows: &[Vec<i64>]) -> Option<Vec<i64>> {
    let n = rows.len() + 1;
    let mut v = Vec::with_capacity(n);
    for j in 0..n {
        let minor: Vec<Vec<i64>> = rows
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
            .collect();
        let d = det(&minor);
        let s = if j % 2 == 0 { d } else { -d };
        v.push(i64::try_from(s).ok()?);
    }
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        return None;
    }
    Some(v.into_iter().map(|x| x / g).collect())
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Affine dimension of a point set (`-1` for the empty set).
pub fn affine_dim(points: &[&[i64]]) -> i64 {
    let Some(first) = points.first() else {
        return -1;
    };
    let diffs: Vec<Vec<i64>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first.iter()).map(|(a, b)| a - b).collect())
        .collect();
    rank(&diffs) as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants() {
        assert_eq!(det(&[vec![2, 1], vec![1, 3]]), 5);
        assert_eq!(det(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 4]]), -4);
        assert_eq!(det(&[vec![1, 2], vec![2, 4]]), 0);
    }

    #[test]
    fn normals_are_orthogonal() {
        let rows = vec![vec![1, -1, 0], vec![1, 0, -1]];
        let v = normal_vector(&rows).unwrap();
        assert!(rows.iter().all(|r| dot(r, &v) == 0));
        assert_eq!(v.iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![1, 1, 1]);
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&[vec![1, 2, 3], vec![2, 4, 6]]), 1);
        assert_eq!(rank(&[vec![1, 0], vec![0, 1], vec![1, 1]]), 2);
        let pts: Vec<&[i64]> = vec![&[0, 0], &[1, 1], &[2, 2]];
        assert_eq!(affine_dim(&pts), 1);
    }
}
