//! Dense matrix routines over the field of canonical expressions.

use pseudosym_expr::Expr;

pub type Matrix = Vec<Vec<Expr>>;

// Row-echelon form in place; returns (rank, sign of the row permutation, pivots).
fn echelon(m: &mut Matrix) -> (usize, i64, Vec<Expr>) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut sign = 1;
    let mut pivots = Vec::new();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        // prefer the structurally smallest nonzero pivot
        let Some(p) = (rank..rows)
            .filter(|&r| !m[r][col].is_zero())
            .min_by_key(|&r| m[r][col].numerator().len() + m[r][col].denominator().len())
        else {
            continue;
        };
        if p != rank {
            m.swap(p, rank);
            sign = -sign;
        }
        let piv = m[rank][col].clone();
        for r in rank + 1..rows {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &piv;
            for c in col..cols {
                if !m[rank][c].is_zero() {
                    let delta = &f * &m[rank][c];
                    m[r][c] = &m[r][c] - &delta;
                }
            }
        }
        pivots.push(piv);
        rank += 1;
    }
    (rank, sign, pivots)
}

pub fn determinant(m: &Matrix) -> Expr {
    let n = m.len();
    let mut a = m.clone();
    let (rank, sign, pivots) = echelon(&mut a);
    if rank < n {
        return Expr::zero();
    }
    pivots.iter().fold(Expr::int(sign), |acc, p| &acc * p)
}

/// Rank over the function field (generic rank).
pub fn rank(m: &Matrix) -> usize {
    let mut a = m.clone();
    echelon(&mut a).0
}

/// Gauss-Jordan inverse; `None` if singular.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut a: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Expr::one() } else { Expr::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(p, col);
        let piv = a[col][col].recip().ok()?;
        for c in 0..2 * n {
            a[col][c] = &a[col][c] * &piv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..2 * n {
                if !a[col][c].is_zero() {
                    let delta = &f * &a[col][c];
                    a[r][c] = &a[r][c] - &delta;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Every `k`-element subset of `0..n`, lexicographically.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Determinant of the submatrix on `rows` x `cols`, by cofactor expansion.
pub fn minor(m: &Matrix, rows: &[usize], cols: &[usize]) -> Expr {
    if rows.len() == 1 {
        return m[rows[0]][cols[0]].clone();
    }
    let mut acc = Expr::zero();
    for (j, &c) in cols.iter().enumerate() {
        let a = &m[rows[0]][c];
        if a.is_zero() {
            continue;
        }
        let rest_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let sub = minor(m, &rows[1..], &rest_cols);
        let term = a * &sub;
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&v| Expr::int(v)).collect())
            .collect()
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(determinant(&a), Expr::int(18));
        let inv = inverse(&a).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let s: Expr = (0..3).map(|k| &a[i][k] * &inv[k][j]).sum();
                assert_eq!(s, Expr::int((i == j) as i64));
            }
        }
        assert_eq!(minor(&a, &[0, 1, 2], &[0, 1, 2]), Expr::int(18));
    }

    #[test]
    fn singular_matrix() {
        let a = m(&[&[1, 2], &[2, 4]]);
        assert!(determinant(&a).is_zero());
        assert!(inverse(&a).is_none());
        assert_eq!(rank(&a), 1);
    }

    #[test]
    fn symbolic_rank() {
        let x = Expr::coord(0);
        let t = Expr::exp_coord(0, 1);
        let a = vec![vec![x.clone(), t.clone()], vec![&x * &t, &t * &t]];
        assert_eq!(rank(&a), 1);
        assert_eq!(subsets(4, 2).len(), 6);
    }
}
