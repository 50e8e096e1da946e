//! Smith normal form with unimodular change-of-basis matrices.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Result of [`smith`]: `u * m * v == s`, with `u_inv = u^-1`, `v_inv = v^-1`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s[(i, i)].clone()).collect()
    }
}

/// Returns `(S, U, V)` with `U·M·V = S`.
pub fn snf(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let f = smith(m);
    (f.s, f.u, f.v)
}

struct Work {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    // row[dst] += k row[src]; U tracks the same row op, U^-1 the inverse column op.
    fn row_add(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_row_multiple(dst, src, k);
        self.u.add_row_multiple(dst, src, k);
        self.u_inv.add_col_multiple(src, dst, &-k);
    }

    fn col_add(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_col_multiple(dst, src, k);
        self.v.add_col_multiple(dst, src, k);
        self.v_inv.add_row_multiple(src, dst, &-k);
    }

    fn row_swap(&mut self, x: usize, y: usize) {
        self.a.swap_rows(x, y);
        self.u.swap_rows(x, y);
        self.u_inv.swap_cols(x, y);
    }

    fn col_swap(&mut self, x: usize, y: usize) {
        self.a.swap_cols(x, y);
        self.v.swap_cols(x, y);
        self.v_inv.swap_rows(x, y);
    }

    fn row_negate(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

pub fn smith(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        a: m.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };
    let mut rank = 0;
    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let Some((pi, pj)) = min_abs_entry(&w.a, t) else {
            break;
        };
        w.row_swap(t, pi);
        w.col_swap(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if w.a[(i, t)].is_zero() {
                    continue;
                }
                let q = &w.a[(i, t)] / &w.a[(t, t)];
                w.row_add(i, t, &-q);
                if !w.a[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if w.a[(t, j)].is_zero() {
                    continue;
                }
                let q = &w.a[(t, j)] / &w.a[(t, t)];
                w.col_add(j, t, &-q);
                if !w.a[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                let (pi, pj) = min_abs_entry_cross(&w.a, t);
                w.row_swap(t, pi);
                w.col_swap(t, pj);
                continue;
            }
            // divisibility: pull a non-multiple into the pivot row
            let p = w.a[(t, t)].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&w.a[(i, j)] % &p).is_zero()));
            match bad {
                Some(i) => w.row_add(t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if w.a[(t, t)].is_negative() {
            w.row_negate(t);
        }
        rank += 1;
    }
    SmithForm { s: w.a, u: w.u, u_inv: w.u_inv, v: w.v, v_inv: w.v_inv, rank }
}

fn min_abs_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < a[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

// Pivot candidates restricted to row t and column t (the only places left nonzero).
fn min_abs_entry_cross(a: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let better = |x: &BigInt, b: (usize, usize)| !x.is_zero() && (a[b].is_zero() || x.abs() < a[b].abs());
    for i in t..a.rows() {
        if better(&a[(i, t)], best) {
            best = (i, t);
        }
    }
    for j in t..a.cols() {
        if better(&a[(t, j)], best) {
            best = (t, j);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn check(m: &IntMatrix) -> SmithForm {
        let f = smith(m);
        assert_eq!(f.u.mul(m).mul(&f.v), f.s);
        assert_eq!(f.u.mul(&f.u_inv), IntMatrix::identity(m.rows()));
        assert_eq!(f.v.mul(&f.v_inv), IntMatrix::identity(m.cols()));
        assert!(f.u.determinant().abs().is_one());
        assert!(f.v.determinant().abs().is_one());
        let d = f.diagonal();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if i != j {
                    assert!(f.s[(i, j)].is_zero());
                }
            }
        }
        for w in d.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!((&w[1] % &w[0]).is_zero());
            }
        }
        f
    }

    #[test]
    fn two_by_two_example() {
        let f = check(&IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(f.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn zero_matrix_keeps_identity_transforms() {
        let f = check(&IntMatrix::zeros(2, 2));
        assert!(f.s.is_zero());
        assert_eq!(f.u, IntMatrix::identity(2));
        assert_eq!(f.v, IntMatrix::identity(2));
    }

    #[test]
    fn identity_is_its_own_form() {
        let f = check(&IntMatrix::identity(3));
        assert_eq!(f.s, IntMatrix::identity(3));
    }

    #[test]
    fn rectangular_and_empty() {
        check(&IntMatrix::from_rows(&[vec![2, 3, 5]]));
        check(&IntMatrix::from_rows(&[vec![6], vec![4], vec![10]]));
        check(&IntMatrix::zeros(0, 3));
        check(&IntMatrix::zeros(2, 0));
        let f = check(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(f.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }
}
