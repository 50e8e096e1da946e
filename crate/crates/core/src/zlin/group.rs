use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::snf::smith;
use super::{IntMatrix, Lattice};

/// Finitely generated abelian group `Z^gens / rowspan(relations)`.
///
/// The relation lattice (Hermite form) and the canonical decomposition are computed lazily
/// and cached; clones share the cache.
#[derive(Clone)]
pub struct FgAbPresentation {
    gens: usize,
    relations: IntMatrix,
    lattice: Arc<OnceLock<Lattice>>,
    canonical: Arc<OnceLock<Canonical>>,
}

/// Invariant-factor decomposition `Z/d1 + ... + Z/dm + Z^r` of a presented group, together
/// with mutually inverse coordinate changes.
#[derive(Clone, Debug)]
pub struct Canonical {
    /// Invariant factors, all > 1, each dividing the next.
    pub factors: Vec<BigInt>,
    pub free_rank: usize,
    /// `(factors.len() + free_rank) x gens`: original coordinates to canonical ones.
    pub to: IntMatrix,
    /// `gens x (factors.len() + free_rank)`: canonical generators as original elements.
    pub from: IntMatrix,
}

impl Canonical {
    pub fn gens(&self) -> usize {
        self.factors.len() + self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.gens() == 0
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.factors.iter().product())
    }

    pub fn presentation(&self) -> FgAbPresentation {
        FgAbPresentation::cyclic_sum(&self.factors, self.free_rank)
    }

    /// Same isomorphism type.
    pub fn same_type(&self, other: &Canonical) -> bool {
        self.factors == other.factors && self.free_rank == other.free_rank
    }
}

impl fmt::Display for Canonical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl FgAbPresentation {
    /// Panics if `relations.cols() != gens`.
    pub fn new(gens: usize, relations: IntMatrix) -> Self {
        assert_eq!(relations.cols(), gens, "relation matrix must have one column per generator");
        FgAbPresentation { gens, relations, lattice: Arc::new(OnceLock::new()), canonical: Arc::new(OnceLock::new()) }
    }

    pub fn free(rank: usize) -> Self {
        Self::new(rank, IntMatrix::zeros(0, rank))
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    /// `Z/n`; `n = 0` gives `Z`.
    pub fn cyclic(n: i64) -> Self {
        if n == 0 {
            Self::free(1)
        } else {
            Self::new(1, IntMatrix::from_i64(1, 1, &[n]))
        }
    }

    /// `Z/d1 + ... + Z/dm + Z^free_rank` with diagonal relations.
    pub fn cyclic_sum(factors: &[BigInt], free_rank: usize) -> Self {
        let n = factors.len() + free_rank;
        Self::new(n, IntMatrix::diagonal(factors.len(), n, factors))
    }

    pub fn direct_sum(&self, other: &FgAbPresentation) -> FgAbPresentation {
        Self::new(self.gens + other.gens, self.relations.block_diag(&other.relations))
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn lattice(&self) -> &Lattice {
        self.lattice.get_or_init(|| {
            Lattice::from_generators(self.gens, (0..self.relations.rows()).map(|i| self.relations.row_vec(i)))
        })
    }

    pub fn canonical(&self) -> &Canonical {
        self.canonical.get_or_init(|| compute_canonical(self))
    }

    pub fn is_trivial(&self) -> bool {
        self.canonical().is_trivial()
    }

    /// No torsion and no relations needed beyond a change of basis.
    pub fn is_free(&self) -> bool {
        self.canonical().factors.is_empty()
    }

    /// Canonical coset representative.
    pub fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.lattice().reduce(x)
    }

    pub fn is_zero_element(&self, x: &[BigInt]) -> bool {
        self.lattice().contains(x)
    }

    pub fn elements_equal(&self, x: &[BigInt], y: &[BigInt]) -> bool {
        let d: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.is_zero_element(&d)
    }

    /// All elements (as canonical representatives in the original coordinates) when the
    /// group is finite and of order at most `limit`.
    pub fn enumerate(&self, limit: u64) -> Option<Vec<Vec<BigInt>>> {
        let c = self.canonical();
        let order = c.order()?;
        if order > BigInt::from(limit) {
            return None;
        }
        let mut coords: Vec<Vec<BigInt>> = vec![Vec::new()];
        for d in &c.factors {
            let d: i64 = d.try_into().ok()?;
            coords = coords
                .into_iter()
                .flat_map(|prefix| {
                    (0..d).map(move |k| {
                        let mut p = prefix.clone();
                        p.push(BigInt::from(k));
                        p
                    })
                })
                .collect();
        }
        Some(coords.into_iter().map(|y| self.reduce(&c.from.mul_vec(&y))).collect())
    }
}

fn compute_canonical(g: &FgAbPresentation) -> Canonical {
    let k = g.gens;
    // y = U x diagonalises the relation lattice: U R^T V = S
    let f = smith(&g.relations.transpose());
    let diag = f.diagonal();
    let mut torsion = Vec::new();
    let mut free = Vec::new();
    for i in 0..k {
        let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if d.is_zero() {
            free.push(i);
        } else if !d.is_one() {
            torsion.push((i, d));
        }
    }
    let idx: Vec<usize> = torsion.iter().map(|(i, _)| *i).chain(free.iter().copied()).collect();
    let factors: Vec<BigInt> = torsion.into_iter().map(|(_, d)| d).collect();
    let mut to = f.u.select_rows(&idx);
    for (row, d) in factors.iter().enumerate() {
        for j in 0..to.cols() {
            let v = num_integer::Integer::mod_floor(&to[(row, j)], d);
            to[(row, j)] = v;
        }
    }
    let from = f.u_inv.select_cols(&idx);
    Canonical { factors, free_rank: free.len(), to, from }
}

impl PartialEq for FgAbPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens && self.relations == other.relations
    }
}

impl Eq for FgAbPresentation {}

impl fmt::Debug for FgAbPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAb(gens={}, rels={:?})", self.gens, self.relations)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_of_two_by_two() {
        let g = FgAbPresentation::new(2, IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(g.canonical().to_string(), "Z/2 + Z/4");
        assert_eq!(g.enumerate(64).unwrap().len(), 8);
    }

    #[test]
    fn crt_merges_coprime_factors() {
        let g = FgAbPresentation::cyclic(2).direct_sum(&FgAbPresentation::cyclic(3));
        assert_eq!(g.canonical().to_string(), "Z/6");
    }

    #[test]
    fn trivial_and_free() {
        assert_eq!(FgAbPresentation::trivial().canonical().to_string(), "0");
        assert_eq!(FgAbPresentation::free(1).canonical().to_string(), "Z");
        assert_eq!(FgAbPresentation::free(3).canonical().to_string(), "Z^3");
        assert_eq!(FgAbPresentation::cyclic(1).canonical().to_string(), "0");
    }

    #[test]
    fn to_and_from_are_inverse_on_the_group() {
        let g = FgAbPresentation::new(3, IntMatrix::from_rows(&[vec![2, 2, 0], vec![0, 6, 3], vec![4, 0, 6]]));
        let c = g.canonical();
        for x in g.enumerate(1000).unwrap() {
            let back = c.from.mul_vec(&c.to.mul_vec(&x));
            assert!(g.elements_equal(&back, &x));
        }
    }
}
