//! Integer lattices in Hermite normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// A sublattice of `Z^dim` with a basis in row-style Hermite normal form: pivots strictly
/// increasing, pivot entries positive, entries above each pivot reduced into `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Lattice { dim, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_generators(dim: usize, gens: impl IntoIterator<Item = Vec<BigInt>>) -> Self {
        let mut rows: Vec<Vec<BigInt>> = gens
            .into_iter()
            .inspect(|g| assert_eq!(g.len(), dim, "generator length mismatch"))
            .filter(|g| g.iter().any(|x| !x.is_zero()))
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..dim {
            if r == rows.len() {
                break;
            }
            loop {
                let mut best: Option<usize> = None;
                for i in r..rows.len() {
                    if !rows[i][c].is_zero() && best.is_none_or(|b| rows[i][c].abs() < rows[b][c].abs()) {
                        best = Some(i);
                    }
                }
                let Some(b) = best else { break };
                rows.swap(r, b);
                let mut done = true;
                for i in r + 1..rows.len() {
                    if rows[i][c].is_zero() {
                        continue;
                    }
                    let q = &rows[i][c] / &rows[r][c];
                    let (head, tail) = rows.split_at_mut(i);
                    axpy(&mut tail[0], &head[r], &-q);
                    if !rows[i][c].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if r == rows.len() || rows[r][c].is_zero() {
                continue;
            }
            if rows[r][c].is_negative() {
                for x in rows[r].iter_mut() {
                    *x = -&*x;
                }
            }
            let p = rows[r][c].clone();
            for i in 0..r {
                let q = rows[i][c].div_floor(&p);
                let (head, tail) = rows.split_at_mut(r);
                axpy(&mut head[i], &tail[0], &-q);
            }
            pivots.push(c);
            r += 1;
            rows.retain(|row| row.iter().any(|x| !x.is_zero()));
        }
        rows.truncate(r);
        Lattice { dim, basis: rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// Canonical coset representative of `v` modulo the lattice.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let mut out = v.to_vec();
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            let q = out[c].div_floor(&row[c]);
            if !q.is_zero() {
                axpy(&mut out, row, &-q);
            }
        }
        out
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }
}

/// `y += k * x`
pub(crate) fn axpy(y: &mut [BigInt], x: &[BigInt], k: &BigInt) {
    if k.is_zero() {
        return;
    }
    for (a, b) in y.iter_mut().zip(x) {
        *a += b * k;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn reduces_into_fundamental_domain() {
        let l = Lattice::from_generators(1, [v(&[5])]);
        assert_eq!(l.reduce(&v(&[-1])), v(&[4]));
        assert_eq!(l.reduce(&v(&[12])), v(&[2]));
    }

    #[test]
    fn echelon_of_dependent_generators() {
        let l = Lattice::from_generators(2, [v(&[2, 4]), v(&[6, 8]), v(&[4, 8])]);
        assert_eq!(l.rank(), 2);
        assert!(l.contains(&v(&[2, 4])));
        assert!(l.contains(&v(&[0, 4])));
        assert!(!l.contains(&v(&[0, 2])));
        assert!(!l.contains(&v(&[1, 0])));
    }

    #[test]
    fn reduction_is_a_coset_invariant() {
        let l = Lattice::from_generators(3, [v(&[3, 1, 0]), v(&[0, 2, 5]), v(&[1, 1, 1])]);
        let x = v(&[7, -3, 11]);
        let y: Vec<BigInt> = x.iter().zip(&v(&[6, 2, 0])).map(|(a, b)| a + b).collect();
        assert_eq!(l.reduce(&x), l.reduce(&y));
    }
}
