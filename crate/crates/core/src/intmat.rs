//! Integer matrix reductions: column Hermite form, integer kernels and Smith form.
//!
//! Matrices are row-major `Vec<Vec<i64>>`.  Entries stay tiny in this crate, so plain
//! `i64` arithmetic with overflow checks in debug builds is enough.

pub type Mat = Vec<Vec<i64>>;

pub fn zeros(m: usize, n: usize) -> Mat {
    vec![vec![0; n]; m]
}

pub fn identity(n: usize) -> Mat {
    let mut a = zeros(n, n);
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 1;
    }
    a
}

pub fn cols(a: &Mat, m: usize) -> usize {
    if m == 0 {
        0
    } else {
        a[0].len()
    }
}

/// Builds an `m x n` matrix from column vectors.
pub fn from_columns(m: usize, columns: &[Vec<i64>]) -> Mat {
    let mut a = zeros(m, columns.len());
    for (j, c) in columns.iter().enumerate() {
        assert_eq!(c.len(), m, "column length mismatch");
        for i in 0..m {
            a[i][j] = c[i];
        }
    }
    a
}

pub fn column(a: &Mat, j: usize) -> Vec<i64> {
    a.iter().map(|r| r[j]).collect()
}

pub fn mat_vec(a: &Mat, x: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|r| r.iter().zip(x).map(|(p, q)| p * q).sum())
        .collect()
}

pub fn mat_mul(a: &Mat, b: &Mat, inner: usize, n: usize) -> Mat {
    let m = a.len();
    let mut c = zeros(m, n);
    for i in 0..m {
        for k in 0..inner {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    c
}

fn col_axpy(a: &mut Mat, dst: usize, src: usize, k: i64) {
    for row in a.iter_mut() {
        row[dst] -= k * row[src];
    }
}

fn col_swap(a: &mut Mat, i: usize, j: usize) {
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

fn col_neg(a: &mut Mat, j: usize) {
    for row in a.iter_mut() {
        row[j] = -row[j];
    }
}

/// Column echelon form `A U = H` with `U` unimodular.
///
/// Returns `(H, U, pivots)`: the first `pivots.len()` columns of `H` are nonzero, column
/// `j` has a positive pivot in row `pivots[j]` and zeros above it, pivot rows increase,
/// and the remaining columns are zero.
pub fn column_hermite(a: &Mat, n: usize) -> (Mat, Mat, Vec<usize>) {
    let m = a.len();
    let mut h = a.clone();
    let mut u = identity(n);
    let mut pivots = Vec::new();
    let mut c = 0;
    for i in 0..m {
        if c == n {
            break;
        }
        loop {
            let best = (c..n)
                .filter(|&j| h[i][j] != 0)
                .min_by_key(|&j| h[i][j].abs());
            let Some(b) = best else { break };
            col_swap(&mut h, c, b);
            col_swap(&mut u, c, b);
            let mut done = true;
            for j in c + 1..n {
                if h[i][j] != 0 {
                    let k = h[i][j].div_euclid(h[i][c]);
                    col_axpy(&mut h, j, c, k);
                    col_axpy(&mut u, j, c, k);
                    if h[i][j] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[i][c] != 0 {
            if h[i][c] < 0 {
                col_neg(&mut h, c);
                col_neg(&mut u, c);
            }
            pivots.push(i);
            c += 1;
        }
    }
    (h, u, pivots)
}

/// Basis of the integer kernel `{x : A x = 0}` as columns.
pub fn integer_kernel(a: &Mat, n: usize) -> Vec<Vec<i64>> {
    let (_, u, pivots) = column_hermite(a, n);
    (pivots.len()..n).map(|j| column(&u, j)).collect()
}

/// Solves `B c = y` where `B` is the echelon part of a column Hermite form.
pub fn solve_echelon(h: &Mat, pivots: &[usize], y: &[i64]) -> Option<Vec<i64>> {
    let mut resid = y.to_vec();
    let mut c = vec![0; pivots.len()];
    let mut row = 0;
    for (j, &pr) in pivots.iter().enumerate() {
        if resid[row..pr].iter().any(|&v| v != 0) {
            return None;
        }
        if resid[pr] % h[pr][j] != 0 {
            return None;
        }
        let k = resid[pr] / h[pr][j];
        c[j] = k;
        for (i, r) in resid.iter_mut().enumerate() {
            *r -= k * h[i][j];
        }
        row = pr + 1;
    }
    if resid.iter().any(|&v| v != 0) {
        return None;
    }
    Some(c)
}

/// Smith normal form `P A Q = D` with `P`, `Q` unimodular.
///
/// Returns `(diag, P, P^{-1}, Q)`; `diag` has length `min(m, n)` with nonnegative
/// entries, each dividing the next, zeros last.
pub fn smith(a: &Mat, n: usize) -> (Vec<i64>, Mat, Mat, Mat) {
    let m = a.len();
    let mut d = a.clone();
    let mut p = identity(m);
    let mut pinv = identity(m);
    let mut q = identity(n);

    // Row operation `row_dst -= k row_src`, mirrored on P and on P^{-1} (as a column op).
    fn row_axpy(d: &mut Mat, p: &mut Mat, pinv: &mut Mat, dst: usize, src: usize, k: i64) {
        for x in [&mut *d, &mut *p] {
            let (s, t) = (x[src].clone(), &mut x[dst]);
            for (tv, sv) in t.iter_mut().zip(s) {
                *tv -= k * sv;
            }
        }
        for row in pinv.iter_mut() {
            row[src] += k * row[dst];
        }
    }
    fn row_swap(d: &mut Mat, p: &mut Mat, pinv: &mut Mat, i: usize, j: usize) {
        d.swap(i, j);
        p.swap(i, j);
        col_swap(pinv, i, j);
    }

    let t_max = m.min(n);
    for t in 0..t_max {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if d[i][j] != 0 && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            row_swap(&mut d, &mut p, &mut pinv, t, bi);
            col_swap(&mut d, t, bj);
            col_swap(&mut q, t, bj);
            let mut clean = true;
            for i in t + 1..m {
                if d[i][t] != 0 {
                    let k = d[i][t].div_euclid(d[t][t]);
                    row_axpy(&mut d, &mut p, &mut pinv, i, t, k);
                    if d[i][t] != 0 {
                        clean = false;
                    }
                }
            }
            for j in t + 1..n {
                if d[t][j] != 0 {
                    let k = d[t][j].div_euclid(d[t][t]);
                    col_axpy(&mut d, j, t, k);
                    col_axpy(&mut q, j, t, k);
                    if d[t][j] != 0 {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            let piv = d[t][t];
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| d[i][j] % piv != 0));
            match bad {
                Some(i) => row_axpy(&mut d, &mut p, &mut pinv, t, i, -1),
                None => break,
            }
        }
        if d[t][t] < 0 {
            for x in d[t].iter_mut() {
                *x = -*x;
            }
            for x in p[t].iter_mut() {
                *x = -*x;
            }
            col_neg(&mut pinv, t);
        }
    }
    let diag = (0..t_max).map(|t| d[t][t]).collect();
    (diag, p, pinv, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_and_kernel() {
        let a: Mat = vec![vec![2, 4, 6], vec![1, 3, 5]];
        let (h, u, piv) = column_hermite(&a, 3);
        assert_eq!(mat_mul(&a, &u, 3, 3), h);
        assert_eq!(piv.len(), 2);
        let k = integer_kernel(&a, 3);
        assert_eq!(k.len(), 1);
        assert_eq!(mat_vec(&a, &k[0]), vec![0, 0]);
    }

    #[test]
    fn smith_example() {
        let a: Mat = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let (diag, p, pinv, q) = smith(&a, 3);
        assert_eq!(diag, vec![2, 6, 12]);
        let pa = mat_mul(&p, &a, 3, 3);
        let paq = mat_mul(&pa, &q, 3, 3);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(paq[i][j], if i == j { diag[i] } else { 0 });
            }
        }
        assert_eq!(mat_mul(&p, &pinv, 3, 3), identity(3));
    }

    #[test]
    fn smith_rectangular() {
        let a: Mat = vec![vec![4, 0], vec![0, 6], vec![0, 0]];
        let (diag, p, pinv, _) = smith(&a, 2);
        assert_eq!(diag, vec![2, 12]);
        assert_eq!(mat_mul(&p, &pinv, 3, 3), identity(3));
    }

    #[test]
    fn solve_in_echelon_basis() {
        let a: Mat = vec![vec![2, 0], vec![0, 3], vec![1, 1]];
        let (h, _, piv) = column_hermite(&a, 2);
        let b: Mat = h.iter().map(|r| r[..piv.len()].to_vec()).collect();
        let c = solve_echelon(&b, &piv, &[4, 3, 3]).unwrap();
        assert_eq!(mat_vec(&b, &c), vec![4, 3, 3]);
        assert!(solve_echelon(&b, &piv, &[1, 0, 0]).is_none());
    }
}
