use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn matmul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(BigInt::zero(), |acc, k| {
                        if row[k].is_zero() {
                            acc
                        } else {
                            acc + &row[k] * &b[k][j]
                        }
                    })
                })
                .collect()
        })
        .collect()
}

pub fn to_big(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Result of [`smith_normal_form`]: `u * a * v = d`, with inverses kept
/// alongside so callers never have to invert a unimodular matrix.
#[derive(Clone, Debug)]
pub struct Snf {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Snf {
    /// Diagonal entries `d_1 | d_2 | ...`, length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.len().min(self.d.first().map_or(0, |r| r.len()));
        (0..n).map(|i| self.d[i][i].clone()).collect()
    }
}

struct Tracker {
    a: IntMatrix,
    u: Option<(IntMatrix, IntMatrix)>,
    v: (IntMatrix, IntMatrix),
}

impl Tracker {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some((u, ui)) = &mut self.u {
            u.swap(i, j);
            for row in ui.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        let (v, vi) = &mut self.v;
        for row in v.iter_mut() {
            row.swap(i, j);
        }
        vi.swap(i, j);
    }

    /// row_i += q * row_t
    fn add_row(&mut self, i: usize, t: usize, q: &BigInt) {
        add_scaled_row(&mut self.a, i, t, q);
        if let Some((u, ui)) = &mut self.u {
            add_scaled_row(u, i, t, q);
            // inverse: col_t -= q * col_i
            for row in ui.iter_mut() {
                let x = &row[i] * q;
                row[t] -= x;
            }
        }
    }

    /// col_j += q * col_t
    fn add_col(&mut self, j: usize, t: usize, q: &BigInt) {
        for row in self.a.iter_mut() {
            let x = &row[t] * q;
            row[j] += x;
        }
        let (v, vi) = &mut self.v;
        for row in v.iter_mut() {
            let x = &row[t] * q;
            row[j] += x;
        }
        // inverse: row_t -= q * row_j
        let qn = -q;
        add_scaled_row(vi, t, j, &qn);
    }

    fn negate_row(&mut self, t: usize) {
        self.a[t].iter_mut().for_each(|x| *x = -&*x);
        if let Some((u, ui)) = &mut self.u {
            u[t].iter_mut().for_each(|x| *x = -&*x);
            for row in ui.iter_mut() {
                row[t] = -&row[t];
            }
        }
    }
}

fn add_scaled_row(m: &mut IntMatrix, i: usize, t: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let src = m[t].clone();
    for (x, s) in m[i].iter_mut().zip(&src) {
        if !s.is_zero() {
            *x += s * q;
        }
    }
}

/// Smith normal form with the smallest-magnitude pivot rule.
pub fn smith_normal_form(a: &IntMatrix) -> Snf {
    let (d, u, v) = run(a, true);
    let (u, u_inv) = u.unwrap();
    Snf {
        d,
        u,
        v: v.0,
        u_inv,
        v_inv: v.1,
    }
}

/// Same as [`smith_normal_form`] but skips the row transform, which is
/// wasteful for tall matrices. Returns `(d, v, v_inv)`.
pub fn smith_normal_form_cols(a: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let (d, _, v) = run(a, false);
    (d, v.0, v.1)
}

type Pair = (IntMatrix, IntMatrix);

fn run(a: &IntMatrix, track_u: bool) -> (IntMatrix, Option<Pair>, Pair) {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut t = Tracker {
        a: a.clone(),
        u: track_u.then(|| (identity(rows), identity(rows))),
        v: (identity(cols), identity(cols)),
    };
    for p in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in p..rows {
                for j in p..cols {
                    let x = &t.a[i][j];
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < t.a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return (t.a, t.u, t.v);
            };
            if bi != p {
                t.swap_rows(p, bi);
            }
            if bj != p {
                t.swap_cols(p, bj);
            }
            let pivot = t.a[p][p].clone();
            let mut clean = true;
            for i in p + 1..rows {
                if t.a[i][p].is_zero() {
                    continue;
                }
                let q = t.a[i][p].div_floor(&pivot);
                t.add_row(i, p, &-q);
                clean &= t.a[i][p].is_zero();
            }
            for j in p + 1..cols {
                if t.a[p][j].is_zero() {
                    continue;
                }
                let q = t.a[p][j].div_floor(&pivot);
                t.add_col(j, p, &-q);
                clean &= t.a[p][j].is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (p + 1..rows).find(|&i| {
                (p + 1..cols).any(|j| !t.a[i][j].is_multiple_of(&pivot))
            });
            match bad {
                Some(i) => t.add_row(p, i, &BigInt::one()),
                None => break,
            }
        }
        if t.a[p][p].is_negative() {
            t.negate_row(p);
        }
    }
    (t.a, t.u, t.v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_of(rows: &[Vec<i64>]) -> Vec<BigInt> {
        smith_normal_form(&to_big(rows)).diagonal()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(diag_of(&[vec![2, 0], vec![0, 3]]), big(&[1, 6]));
        assert_eq!(diag_of(&[vec![4, 0], vec![0, 2]]), big(&[2, 4]));
        let z = to_big(&[vec![0, 0, 0], vec![0, 0, 0]]);
        let s = smith_normal_form(&z);
        assert_eq!(s.d, z);
        assert_eq!(s.u, identity(2));
        assert_eq!(s.v, identity(3));
    }

    #[test]
    fn transforms_recompose() {
        let a = to_big(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = smith_normal_form(&a);
        assert_eq!(matmul(&matmul(&s.u, &a), &s.v), s.d);
        assert_eq!(matmul(&s.u, &s.u_inv), identity(3));
        assert_eq!(matmul(&s.v, &s.v_inv), identity(3));
        assert_eq!(s.diagonal(), big(&[2, 6, 12]));
    }
}
