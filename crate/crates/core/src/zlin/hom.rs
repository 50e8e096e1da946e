use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::snf::smith;
use super::{FgAbPresentation, IntMatrix, Lattice};
use crate::error::{Error, Result};

/// Homomorphism of presented groups; column `j` of `matrix` is the image of source
/// generator `j`. Columns are kept as canonical coset representatives of the target, so two
/// homomorphisms are equal as maps exactly when their matrices are equal.
#[derive(Clone, PartialEq, Eq)]
pub struct AbHom {
    source: FgAbPresentation,
    target: FgAbPresentation,
    matrix: IntMatrix,
}

impl AbHom {
    pub fn new(source: FgAbPresentation, target: FgAbPresentation, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.gens() || matrix.cols() != source.gens() {
            return Err(Error::IllFormed(format!(
                "homomorphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.gens(),
                source.gens()
            )));
        }
        let rels = source.relations();
        for i in 0..rels.rows() {
            let image = matrix.mul_vec(rels.row(i));
            if !target.is_zero_element(&image) {
                return Err(Error::IllFormed(format!("relation {i} of the source is not sent to zero")));
            }
        }
        Ok(Self::normalized(source, target, matrix))
    }

    fn normalized(source: FgAbPresentation, target: FgAbPresentation, matrix: IntMatrix) -> Self {
        let mut m = matrix;
        for j in 0..m.cols() {
            let c = target.reduce(&m.col(j));
            m.set_col(j, &c);
        }
        AbHom { source, target, matrix: m }
    }

    pub fn zero(source: FgAbPresentation, target: FgAbPresentation) -> Self {
        let m = IntMatrix::zeros(target.gens(), source.gens());
        AbHom { source, target, matrix: m }
    }

    pub fn identity(g: &FgAbPresentation) -> Self {
        Self::normalized(g.clone(), g.clone(), IntMatrix::identity(g.gens()))
    }

    pub fn source(&self) -> &FgAbPresentation {
        &self.source
    }

    pub fn target(&self) -> &FgAbPresentation {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.target.reduce(&self.matrix.mul_vec(x))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &AbHom) -> Result<AbHom> {
        if inner.target != self.source {
            return Err(Error::BoundaryMismatch("composite of homomorphisms with mismatched groups".into()));
        }
        Ok(Self::normalized(inner.source.clone(), self.target.clone(), self.matrix.mul(&inner.matrix)))
    }

    pub fn add(&self, other: &AbHom) -> Result<AbHom> {
        self.parallel(other)?;
        Ok(Self::normalized(self.source.clone(), self.target.clone(), self.matrix.add(&other.matrix)))
    }

    pub fn sub(&self, other: &AbHom) -> Result<AbHom> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> AbHom {
        Self::normalized(self.source.clone(), self.target.clone(), self.matrix.neg())
    }

    pub fn scale(&self, k: i64) -> AbHom {
        Self::normalized(self.source.clone(), self.target.clone(), self.matrix.scale(&BigInt::from(k)))
    }

    fn parallel(&self, other: &AbHom) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::BoundaryMismatch("homomorphisms are not parallel".into()));
        }
        Ok(())
    }

    /// `(f, g): A -> B ⊕ C`
    pub fn pair(&self, other: &AbHom) -> Result<AbHom> {
        if self.source != other.source {
            return Err(Error::BoundaryMismatch("pairing needs a common source".into()));
        }
        Ok(Self::normalized(
            self.source.clone(),
            self.target.direct_sum(&other.target),
            self.matrix.vconcat(&other.matrix),
        ))
    }

    /// `[f g]: A ⊕ B -> C`
    pub fn copair(&self, other: &AbHom) -> Result<AbHom> {
        if self.target != other.target {
            return Err(Error::BoundaryMismatch("copairing needs a common target".into()));
        }
        Ok(Self::normalized(
            self.source.direct_sum(&other.source),
            self.target.clone(),
            self.matrix.hconcat(&other.matrix),
        ))
    }

    pub fn direct_sum(&self, other: &AbHom) -> AbHom {
        Self::normalized(
            self.source.direct_sum(&other.source),
            self.target.direct_sum(&other.target),
            self.matrix.block_diag(&other.matrix),
        )
    }

    /// Sublattice of source coordinates `{x : f(x) = 0 in target}`; contains the source
    /// relations.
    pub fn preimage_of_zero(&self) -> Lattice {
        let k = self.source.gens();
        let sys = self.matrix.hconcat(&self.target.relations().transpose().neg());
        let gens = integer_kernel(&sys).into_iter().map(|v| v[..k].to_vec());
        Lattice::from_generators(k, gens)
    }

    /// Kernel, in canonical form, with its inclusion into the source.
    pub fn kernel(&self) -> (FgAbPresentation, AbHom) {
        kernel_basis(self)
    }

    /// Cokernel, in canonical form, with the projection from the target.
    pub fn cokernel(&self) -> (FgAbPresentation, AbHom) {
        cokernel_presentation(self)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().0.is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().0.is_trivial()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Some `x` with `f(x) = b`; see [`solve`].
    pub fn solve(&self, b: &[BigInt]) -> Result<Vec<BigInt>> {
        solve(self, b)
    }

    /// Factor `g: X -> target` through `self` generatorwise: returns `h` with `self ∘ h = g`.
    pub fn lift(&self, g: &AbHom) -> Result<AbHom> {
        if g.target != self.target {
            return Err(Error::BoundaryMismatch("lift target mismatch".into()));
        }
        let cols = (0..g.source.gens()).map(|j| self.solve(&g.matrix.col(j))).collect::<Result<Vec<_>>>()?;
        let m = IntMatrix::from_cols(self.source.gens(), &cols);
        AbHom::new(g.source.clone(), self.source.clone(), m)
    }
}

/// Injections `A -> A ⊕ B` and `B -> A ⊕ B`.
pub fn injections(a: &FgAbPresentation, b: &FgAbPresentation) -> (AbHom, AbHom) {
    let sum = a.direct_sum(b);
    let mut m1 = IntMatrix::zeros(sum.gens(), a.gens());
    m1.set_block(0, 0, &IntMatrix::identity(a.gens()));
    let mut m2 = IntMatrix::zeros(sum.gens(), b.gens());
    m2.set_block(a.gens(), 0, &IntMatrix::identity(b.gens()));
    (AbHom::normalized(a.clone(), sum.clone(), m1), AbHom::normalized(b.clone(), sum, m2))
}

/// Projections `A ⊕ B -> A` and `A ⊕ B -> B`.
pub fn projections(a: &FgAbPresentation, b: &FgAbPresentation) -> (AbHom, AbHom) {
    let sum = a.direct_sum(b);
    let mut m1 = IntMatrix::zeros(a.gens(), sum.gens());
    m1.set_block(0, 0, &IntMatrix::identity(a.gens()));
    let mut m2 = IntMatrix::zeros(b.gens(), sum.gens());
    m2.set_block(0, a.gens(), &IntMatrix::identity(b.gens()));
    (AbHom::normalized(sum.clone(), a.clone(), m1), AbHom::normalized(sum, b.clone(), m2))
}

impl fmt::Debug for AbHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbHom({:?} -> {:?}: {:?})", self.source, self.target, self.matrix)
    }
}

/// Basis of `{x in Z^n : a x = 0}` as a list of vectors.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let f = smith(a);
    (f.rank..a.cols()).map(|j| f.v.col(j)).collect()
}

/// A particular integer solution of `a x = b` (free coordinates zero), if any.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let f = smith(a);
    let ub = f.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, c) in ub.iter().enumerate() {
        if i < f.rank {
            let s = &f.s[(i, i)];
            if !(c % s).is_zero() {
                return None;
            }
            y[i] = c / s;
        } else if !c.is_zero() {
            return None;
        }
    }
    Some(f.v.mul_vec(&y))
}

/// Kernel of `f` in canonical form with its inclusion into `f.source()`.
pub fn kernel_basis(f: &AbHom) -> (FgAbPresentation, AbHom) {
    let src = f.source();
    let pre = f.preimage_of_zero();
    // raw kernel: Z^t (t = rank of the preimage lattice) modulo the source relations
    let g = IntMatrix::from_cols(src.gens(), pre.basis());
    let t = g.cols();
    let sys = g.hconcat(&src.relations().transpose().neg());
    let rels: Vec<Vec<BigInt>> = integer_kernel(&sys).into_iter().map(|v| v[..t].to_vec()).collect();
    let raw = FgAbPresentation::new(t, IntMatrix::from_row_vecs(t, &rels));
    let c = raw.canonical().clone();
    let k = c.presentation();
    let inc = AbHom::new(k.clone(), src.clone(), g.mul(&c.from)).expect("kernel inclusion is well defined");
    (k, inc)
}

/// Cokernel of `f` in canonical form with the projection from `f.target()`.
pub fn cokernel_presentation(f: &AbHom) -> (FgAbPresentation, AbHom) {
    let tgt = f.target();
    let raw = FgAbPresentation::new(tgt.gens(), tgt.relations().vconcat(&f.matrix().transpose()));
    let c = raw.canonical().clone();
    let q = c.presentation();
    let proj = AbHom::new(tgt.clone(), q.clone(), c.to.clone()).expect("cokernel projection is well defined");
    (q, proj)
}

/// Solves `f(x) = b` modulo the target relations.
///
/// The returned `x` is the canonical representative of the solution coset `x0 + P`, where
/// `P` is the lattice of source vectors mapped to zero: every coordinate at a pivot of the
/// Hermite basis of `P` lies in `[0, pivot)`. The choice depends only on `f` and `b`.
pub fn solve(f: &AbHom, b: &[BigInt]) -> Result<Vec<BigInt>> {
    if b.len() != f.target().gens() {
        return Err(Error::IllFormed("right-hand side has the wrong length".into()));
    }
    let k = f.source().gens();
    let sys = f.matrix().hconcat(&f.target().relations().transpose());
    let x0 = solve_integer(&sys, b).ok_or(Error::NoSolution)?;
    Ok(f.preimage_of_zero().reduce(&x0[..k]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn z() -> FgAbPresentation {
        FgAbPresentation::free(1)
    }

    #[test]
    fn ill_defined_map_is_rejected() {
        // Z/2 -> Z/3 sending the generator to 1 is not a homomorphism
        let r = AbHom::new(FgAbPresentation::cyclic(2), FgAbPresentation::cyclic(3), IntMatrix::from_i64(1, 1, &[1]));
        assert!(matches!(r, Err(Error::IllFormed(_))));
    }

    #[test]
    fn kernel_of_two_three() {
        let f = AbHom::new(FgAbPresentation::free(2), z(), IntMatrix::from_i64(1, 2, &[2, 3])).unwrap();
        let (k, inc) = f.kernel();
        assert_eq!(k.canonical().to_string(), "Z");
        let gen = inc.matrix().col(0);
        assert!(gen == v(&[3, -2]) || gen == v(&[-3, 2]));
        assert!(f.compose(&inc).unwrap().is_zero());
    }

    #[test]
    fn kernel_edge_cases() {
        let twice = AbHom::new(z(), z(), IntMatrix::from_i64(1, 1, &[2])).unwrap();
        assert!(twice.kernel().0.is_trivial());
        let a = FgAbPresentation::cyclic(4).direct_sum(&z());
        let zero = AbHom::zero(a.clone(), FgAbPresentation::cyclic(3));
        let (k, inc) = zero.kernel();
        assert!(k.canonical().same_type(a.canonical()));
        assert!(inc.is_isomorphism());
    }

    #[test]
    fn cokernel_examples() {
        let twice = AbHom::new(z(), z(), IntMatrix::from_i64(1, 1, &[2])).unwrap();
        assert_eq!(twice.cokernel().0.canonical().to_string(), "Z/2");
        let m = AbHom::new(
            FgAbPresentation::free(2),
            FgAbPresentation::free(2),
            IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]),
        )
        .unwrap();
        assert_eq!(m.cokernel().0.canonical().to_string(), "Z/2 + Z/4");
        let zero = AbHom::zero(FgAbPresentation::trivial(), FgAbPresentation::free(2));
        assert_eq!(zero.cokernel().0.canonical().to_string(), "Z^2");
    }

    #[test]
    fn solve_examples() {
        let twice = AbHom::new(z(), z(), IntMatrix::from_i64(1, 1, &[2])).unwrap();
        assert_eq!(twice.solve(&v(&[4])).unwrap(), v(&[2]));
        assert_eq!(twice.solve(&v(&[3])), Err(Error::NoSolution));
        let mod5 = AbHom::new(z(), FgAbPresentation::cyclic(5), IntMatrix::from_i64(1, 1, &[2])).unwrap();
        assert_eq!(mod5.solve(&v(&[3])).unwrap(), v(&[4]));
    }
}
