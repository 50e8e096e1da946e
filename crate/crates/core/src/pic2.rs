//! Symmetric 2-groups as two-term complexes `d: C1 -> C0`.
//!
//! Objects are elements of `C0`; a morphism `x -> y` is an `m` in `C1` with
//! `y = x + d(m)`. 1-morphisms are chain maps, 2-morphisms are chain homotopies with the
//! sign convention: `h: F => G` requires `G0 - F0 = d∘h` and `G1 - F1 = h∘d`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::zlin::{AbHom, FgAbPresentation, IntMatrix};

#[derive(Clone)]
pub struct Pic2 {
    c1: FgAbPresentation,
    c0: FgAbPresentation,
    d: AbHom,
    invariants: Arc<OnceLock<Invariants>>,
}

#[derive(Clone, Debug)]
struct Invariants {
    pi0: FgAbPresentation,
    pi0_projection: AbHom,
    pi1: FgAbPresentation,
    pi1_inclusion: AbHom,
}

impl Pic2 {
    /// Validates that `d` respects the relations of `c1`.
    pub fn new(c1: FgAbPresentation, c0: FgAbPresentation, d: IntMatrix) -> Result<Self> {
        let d = AbHom::new(c1.clone(), c0.clone(), d)?;
        Ok(Self::from_differential(d))
    }

    pub fn from_differential(d: AbHom) -> Self {
        Pic2 { c1: d.source().clone(), c0: d.target().clone(), d, invariants: Arc::new(OnceLock::new()) }
    }

    /// `disc(A)`: objects `A`, only identity morphisms.
    pub fn discrete(a: FgAbPresentation) -> Self {
        Self::from_differential(AbHom::zero(FgAbPresentation::trivial(), a))
    }

    /// One object, automorphism group `A`.
    pub fn one_object(a: FgAbPresentation) -> Self {
        Self::from_differential(AbHom::zero(a, FgAbPresentation::trivial()))
    }

    pub fn zero() -> Self {
        Self::discrete(FgAbPresentation::trivial())
    }

    pub fn c1(&self) -> &FgAbPresentation {
        &self.c1
    }

    pub fn c0(&self) -> &FgAbPresentation {
        &self.c0
    }

    pub fn d(&self) -> &AbHom {
        &self.d
    }

    fn invariants(&self) -> &Invariants {
        self.invariants.get_or_init(|| {
            let (pi0, pi0_projection) = self.d.cokernel();
            let (pi1, pi1_inclusion) = self.d.kernel();
            Invariants { pi0, pi0_projection, pi1, pi1_inclusion }
        })
    }

    /// `(π0, π1) = (coker d, ker d)`, both in canonical form.
    pub fn homotopy_invariants(&self) -> (FgAbPresentation, FgAbPresentation) {
        let inv = self.invariants();
        (inv.pi0.clone(), inv.pi1.clone())
    }

    pub fn pi0(&self) -> &FgAbPresentation {
        &self.invariants().pi0
    }

    pub fn pi1(&self) -> &FgAbPresentation {
        &self.invariants().pi1
    }

    pub fn pi0_projection(&self) -> &AbHom {
        &self.invariants().pi0_projection
    }

    pub fn pi1_inclusion(&self) -> &AbHom {
        &self.invariants().pi1_inclusion
    }

    /// Equivalent to the zero 2-group.
    pub fn is_contractible(&self) -> bool {
        self.pi0().is_trivial() && self.pi1().is_trivial()
    }

    /// Discrete on a free group: the objects this engine treats as projective.
    pub fn is_projective_shape(&self) -> bool {
        self.c1.is_trivial() && self.c0.is_free()
    }

    pub fn is_discrete(&self) -> bool {
        self.c1.is_trivial()
    }

    /// Number of morphisms `x -> y`, by enumeration of `C1` (finite `C1` only).
    pub fn count_morphisms(&self, x: &[num_bigint::BigInt], y: &[num_bigint::BigInt], limit: u64) -> Option<usize> {
        let elems = self.c1.enumerate(limit)?;
        Some(
            elems
                .iter()
                .filter(|m| {
                    let dm = self.d.apply(m);
                    let lhs: Vec<_> = x.iter().zip(&dm).map(|(a, b)| a + b).collect();
                    self.c0.elements_equal(&lhs, y)
                })
                .count(),
        )
    }
}

impl PartialEq for Pic2 {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d
    }
}

impl Eq for Pic2 {}

impl fmt::Debug for Pic2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pic2({:?})", self.d)
    }
}

/// Chain map between 2-term complexes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OneMor {
    source: Pic2,
    target: Pic2,
    f1: AbHom,
    f0: AbHom,
}

impl OneMor {
    pub fn new(source: Pic2, target: Pic2, f1: AbHom, f0: AbHom) -> Result<Self> {
        let m = Self::new_unchecked(source, target, f1, f0)?;
        m.check()?;
        Ok(m)
    }

    /// Checks shapes only; the chain condition is left to [`OneMor::check`].
    pub fn new_unchecked(source: Pic2, target: Pic2, f1: AbHom, f0: AbHom) -> Result<Self> {
        if f1.source() != source.c1() || f1.target() != target.c1() {
            return Err(Error::BoundaryMismatch("degree-1 component has the wrong groups".into()));
        }
        if f0.source() != source.c0() || f0.target() != target.c0() {
            return Err(Error::BoundaryMismatch("degree-0 component has the wrong groups".into()));
        }
        Ok(OneMor { source, target, f1, f0 })
    }

    pub fn from_matrices(source: &Pic2, target: &Pic2, f1: IntMatrix, f0: IntMatrix) -> Result<Self> {
        let f1 = AbHom::new(source.c1().clone(), target.c1().clone(), f1)?;
        let f0 = AbHom::new(source.c0().clone(), target.c0().clone(), f0)?;
        Self::new(source.clone(), target.clone(), f1, f0)
    }

    /// Chain condition `f0 ∘ d = d' ∘ f1`.
    pub fn check(&self) -> Result<()> {
        let lhs = self.f0.compose(self.source.d())?;
        let rhs = self.target.d().compose(&self.f1)?;
        if lhs != rhs {
            return Err(Error::IllFormed("chain condition f0∘d = d'∘f1 fails".into()));
        }
        Ok(())
    }

    pub fn identity(p: &Pic2) -> Self {
        OneMor { source: p.clone(), target: p.clone(), f1: AbHom::identity(p.c1()), f0: AbHom::identity(p.c0()) }
    }

    pub fn zero(source: &Pic2, target: &Pic2) -> Self {
        OneMor {
            source: source.clone(),
            target: target.clone(),
            f1: AbHom::zero(source.c1().clone(), target.c1().clone()),
            f0: AbHom::zero(source.c0().clone(), target.c0().clone()),
        }
    }

    pub fn source(&self) -> &Pic2 {
        &self.source
    }

    pub fn target(&self) -> &Pic2 {
        &self.target
    }

    pub fn f1(&self) -> &AbHom {
        &self.f1
    }

    pub fn f0(&self) -> &AbHom {
        &self.f0
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &OneMor) -> Result<OneMor> {
        if inner.target != self.source {
            return Err(Error::BoundaryMismatch("composite of 1-morphisms with mismatched 2-groups".into()));
        }
        Ok(OneMor {
            source: inner.source.clone(),
            target: self.target.clone(),
            f1: self.f1.compose(&inner.f1)?,
            f0: self.f0.compose(&inner.f0)?,
        })
    }

    pub fn add(&self, other: &OneMor) -> Result<OneMor> {
        self.parallel(other)?;
        Ok(OneMor {
            source: self.source.clone(),
            target: self.target.clone(),
            f1: self.f1.add(&other.f1)?,
            f0: self.f0.add(&other.f0)?,
        })
    }

    pub fn neg(&self) -> OneMor {
        OneMor { source: self.source.clone(), target: self.target.clone(), f1: self.f1.neg(), f0: self.f0.neg() }
    }

    pub fn sub(&self, other: &OneMor) -> Result<OneMor> {
        self.add(&other.neg())
    }

    pub fn is_zero(&self) -> bool {
        self.f1.is_zero() && self.f0.is_zero()
    }

    fn parallel(&self, other: &OneMor) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::BoundaryMismatch("1-morphisms are not parallel".into()));
        }
        Ok(())
    }

    /// Induced map on π0 in canonical coordinates.
    pub fn pi0_map(&self) -> AbHom {
        // lifts of the canonical π0 generators need not span a subgroup isomorphic to π0,
        // so the composite is assembled at the matrix level
        let section = self.source.c0().canonical_section_of(self.source.pi0_projection());
        let m = self.target.pi0_projection().matrix().mul(self.f0.matrix()).mul(&section);
        AbHom::new(self.source.pi0().clone(), self.target.pi0().clone(), m).expect("π0 map is well defined")
    }

    /// Induced map on π1 in canonical coordinates.
    pub fn pi1_map(&self) -> AbHom {
        let image = self.f1.compose(self.source.pi1_inclusion()).expect("π1 map composes");
        self.target.pi1_inclusion().lift(&image).expect("chain maps send cycles to cycles")
    }

    pub fn classify(&self) -> MorphismClass {
        let p0 = self.pi0_map();
        let p1 = self.pi1_map();
        let es = p0.is_surjective();
        let p0_inj = p0.is_injective();
        let p1_inj = p1.is_injective();
        let p1_sur = p1.is_surjective();
        MorphismClass {
            essentially_surjective: es,
            faithful: p1_inj,
            full: p1_sur && p0_inj,
            equivalence: es && p0_inj && p1_inj && p1_sur,
        }
    }

    pub fn is_equivalence(&self) -> bool {
        self.classify().equivalence
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MorphismClass {
    pub essentially_surjective: bool,
    pub faithful: bool,
    pub full: bool,
    pub equivalence: bool,
}

pub fn classify_morphism(f: &OneMor) -> MorphismClass {
    f.classify()
}

/// Chain homotopy `h: from => to`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TwoMor {
    from: OneMor,
    to: OneMor,
    h: AbHom,
}

impl TwoMor {
    pub fn new(from: OneMor, to: OneMor, h: AbHom) -> Result<Self> {
        let t = Self::new_unchecked(from, to, h)?;
        t.check()?;
        Ok(t)
    }

    pub fn new_unchecked(from: OneMor, to: OneMor, h: AbHom) -> Result<Self> {
        from.parallel(&to)?;
        if h.source() != from.source.c0() || h.target() != from.target.c1() {
            return Err(Error::BoundaryMismatch("2-morphism component must map C0 to C1'".into()));
        }
        Ok(TwoMor { from, to, h })
    }

    pub fn from_matrix(from: &OneMor, to: &OneMor, h: IntMatrix) -> Result<Self> {
        let h = AbHom::new(from.source.c0().clone(), from.target.c1().clone(), h)?;
        Self::new(from.clone(), to.clone(), h)
    }

    /// Both homotopy identities; reports which one fails.
    pub fn check(&self) -> Result<()> {
        let deg0 = self.to.f0.sub(&self.from.f0)?;
        if deg0 != self.from.target.d().compose(&self.h)? {
            return Err(Error::IllFormed("degree-0 homotopy identity G0 - F0 = d∘h fails".into()));
        }
        let deg1 = self.to.f1.sub(&self.from.f1)?;
        if deg1 != self.h.compose(self.from.source.d())? {
            return Err(Error::IllFormed("degree-1 homotopy identity G1 - F1 = h∘d fails".into()));
        }
        Ok(())
    }

    /// Identity 2-cell (the canonical 2-morphism when `f` is a composite equal to another).
    pub fn identity(f: &OneMor) -> Self {
        let h = AbHom::zero(f.source.c0().clone(), f.target.c1().clone());
        TwoMor { from: f.clone(), to: f.clone(), h }
    }

    /// Canonical cell between two 1-morphisms that are equal on the nose.
    pub fn canonical(from: &OneMor, to: &OneMor) -> Result<Self> {
        let h = AbHom::zero(from.source.c0().clone(), from.target.c1().clone());
        Self::new(from.clone(), to.clone(), h)
    }

    pub fn from(&self) -> &OneMor {
        &self.from
    }

    pub fn to(&self) -> &OneMor {
        &self.to
    }

    pub fn h(&self) -> &AbHom {
        &self.h
    }

    /// Vertical composite `self` then `next`.
    pub fn then(&self, next: &TwoMor) -> Result<TwoMor> {
        if self.to != next.from {
            return Err(Error::BoundaryMismatch("vertical composite of non-adjacent 2-morphisms".into()));
        }
        TwoMor::new(self.from.clone(), next.to.clone(), self.h.add(&next.h)?)
    }

    pub fn inverse(&self) -> TwoMor {
        TwoMor { from: self.to.clone(), to: self.from.clone(), h: self.h.neg() }
    }

    /// `k ∘ self : k∘F => k∘G`, component `k.f1 ∘ h`.
    pub fn post_whisker(&self, k: &OneMor) -> Result<TwoMor> {
        TwoMor::new(k.compose(&self.from)?, k.compose(&self.to)?, k.f1.compose(&self.h)?)
    }

    /// `self ∘ k : F∘k => G∘k`, component `h ∘ k.f0`.
    pub fn pre_whisker(&self, k: &OneMor) -> Result<TwoMor> {
        TwoMor::new(self.from.compose(k)?, self.to.compose(k)?, self.h.compose(&k.f0)?)
    }

    /// Pointwise sum `F + F' => G + G'`.
    pub fn add(&self, other: &TwoMor) -> Result<TwoMor> {
        TwoMor::new(self.from.add(&other.from)?, self.to.add(&other.to)?, self.h.add(&other.h)?)
    }

    pub fn neg(&self) -> TwoMor {
        TwoMor { from: self.from.neg(), to: self.to.neg(), h: self.h.neg() }
    }

    /// Same component, re-read between 1-morphisms equal to the current ends.
    pub fn retarget(&self, from: &OneMor, to: &OneMor) -> Result<TwoMor> {
        if *from != self.from || *to != self.to {
            return Err(Error::BoundaryMismatch("retargeted ends differ from the original ends".into()));
        }
        Ok(self.clone())
    }
}

/// `P × Q` with its injections and projections.
#[derive(Clone, Debug)]
pub struct Biproduct {
    pub product: Pic2,
    pub i1: OneMor,
    pub i2: OneMor,
    pub p1: OneMor,
    pub p2: OneMor,
}

pub fn biproduct(p: &Pic2, q: &Pic2) -> Biproduct {
    let product = Pic2::from_differential(p.d().direct_sum(q.d()));
    let inj = |g: &FgAbPresentation, total: &FgAbPresentation, offset: usize| {
        let mut m = IntMatrix::zeros(total.gens(), g.gens());
        m.set_block(offset, 0, &IntMatrix::identity(g.gens()));
        AbHom::new(g.clone(), total.clone(), m).expect("injection")
    };
    let proj = |g: &FgAbPresentation, total: &FgAbPresentation, offset: usize| {
        let mut m = IntMatrix::zeros(g.gens(), total.gens());
        m.set_block(0, offset, &IntMatrix::identity(g.gens()));
        AbHom::new(total.clone(), g.clone(), m).expect("projection")
    };
    let (c1, c0) = (product.c1().clone(), product.c0().clone());
    let (o1, o0) = (p.c1().gens(), p.c0().gens());
    let i1 = OneMor::new(p.clone(), product.clone(), inj(p.c1(), &c1, 0), inj(p.c0(), &c0, 0)).expect("i1");
    let i2 = OneMor::new(q.clone(), product.clone(), inj(q.c1(), &c1, o1), inj(q.c0(), &c0, o0)).expect("i2");
    let p1 = OneMor::new(product.clone(), p.clone(), proj(p.c1(), &c1, 0), proj(p.c0(), &c0, 0)).expect("p1");
    let p2 = OneMor::new(product.clone(), q.clone(), proj(q.c1(), &c1, o1), proj(q.c0(), &c0, o0)).expect("p2");
    Biproduct { product, i1, i2, p1, p2 }
}

impl Biproduct {
    /// The unique `X -> P×Q` with `p1∘⟨f,g⟩ = f` and `p2∘⟨f,g⟩ = g`.
    pub fn pair(&self, f: &OneMor, g: &OneMor) -> Result<OneMor> {
        if f.target() != self.p1.target() || g.target() != self.p2.target() || f.source() != g.source() {
            return Err(Error::BoundaryMismatch("pairing into a biproduct".into()));
        }
        OneMor::new(f.source().clone(), self.product.clone(), f.f1().pair(g.f1())?, f.f0().pair(g.f0())?)
    }

    /// `[f, g]: P×Q -> Y`, i.e. `f∘p1 + g∘p2`.
    pub fn copair(&self, f: &OneMor, g: &OneMor) -> Result<OneMor> {
        f.compose(&self.p1)?.add(&g.compose(&self.p2)?)
    }
}

impl FgAbPresentation {
    /// A homomorphism section (as a matrix) of a canonical cokernel projection `p: self -> Q`:
    /// the canonical generators of `Q` lifted to `self`.
    pub(crate) fn canonical_section_of(&self, p: &AbHom) -> IntMatrix {
        let q = p.target();
        let cols: Vec<_> = (0..q.gens())
            .map(|j| {
                let mut e = vec![num_bigint::BigInt::from(0); q.gens()];
                e[j] = num_bigint::BigInt::from(1);
                p.solve(&e).expect("cokernel projections are surjective")
            })
            .collect();
        IntMatrix::from_cols(self.gens(), &cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn z() -> FgAbPresentation {
        FgAbPresentation::free(1)
    }

    fn times(n: i64) -> Pic2 {
        Pic2::new(z(), z(), IntMatrix::from_i64(1, 1, &[n])).unwrap()
    }

    #[test]
    fn make_examples() {
        let (p0, p1) = times(2).homotopy_invariants();
        assert_eq!(p0.canonical().to_string(), "Z/2");
        assert!(p1.is_trivial());
        let a = FgAbPresentation::cyclic(6);
        let disc = Pic2::discrete(a.clone());
        assert!(disc.pi0().canonical().same_type(a.canonical()));
        assert!(disc.pi1().is_trivial());
        let one = Pic2::one_object(z());
        assert!(one.pi0().is_trivial());
        assert_eq!(one.pi1().canonical().to_string(), "Z");
    }

    #[test]
    fn ill_formed_differential() {
        let r = Pic2::new(FgAbPresentation::cyclic(2), z(), IntMatrix::from_i64(1, 1, &[1]));
        assert!(matches!(r, Err(Error::IllFormed(_))));
    }

    #[test]
    fn invariant_examples() {
        let p = times(6);
        assert_eq!(p.pi0().canonical().to_string(), "Z/6");
        assert!(p.pi1().is_trivial());
        let q = Pic2::new(FgAbPresentation::free(2), z(), IntMatrix::from_i64(1, 2, &[2, 3])).unwrap();
        assert!(q.pi0().is_trivial());
        assert_eq!(q.pi1().canonical().to_string(), "Z");
        assert!(Pic2::zero().is_contractible());
    }

    #[test]
    fn composition_and_whiskering() {
        let p = times(2);
        let f =
            OneMor::from_matrices(&p, &p, IntMatrix::from_i64(1, 1, &[3]), IntMatrix::from_i64(1, 1, &[3])).unwrap();
        let id = OneMor::identity(&p);
        assert_eq!(f.compose(&id).unwrap(), f);
        // h = 1 : F => F + d∘h... i.e. from 3 to 5
        let g =
            OneMor::from_matrices(&p, &p, IntMatrix::from_i64(1, 1, &[5]), IntMatrix::from_i64(1, 1, &[5])).unwrap();
        let k =
            OneMor::from_matrices(&p, &p, IntMatrix::from_i64(1, 1, &[7]), IntMatrix::from_i64(1, 1, &[7])).unwrap();
        let a = TwoMor::from_matrix(&f, &g, IntMatrix::from_i64(1, 1, &[1])).unwrap();
        let b = TwoMor::from_matrix(&g, &k, IntMatrix::from_i64(1, 1, &[1])).unwrap();
        assert_eq!(a.then(&b).unwrap().h().matrix(), &IntMatrix::from_i64(1, 1, &[2]));
        let l =
            OneMor::from_matrices(&p, &p, IntMatrix::from_i64(1, 1, &[-2]), IntMatrix::from_i64(1, 1, &[-2])).unwrap();
        let w = a.post_whisker(&l).unwrap();
        assert_eq!(w.h().matrix(), &l.f1().compose(a.h()).unwrap().matrix().clone());
        let w2 = a.pre_whisker(&l).unwrap();
        assert_eq!(w2.h().matrix(), &IntMatrix::from_i64(1, 1, &[-2]));
        assert!(TwoMor::from_matrix(&f, &g, IntMatrix::from_i64(1, 1, &[2])).is_err());
    }

    #[test]
    fn classify_examples() {
        let p = times(4);
        assert_eq!(
            OneMor::identity(&p).classify(),
            MorphismClass { essentially_surjective: true, faithful: true, full: true, equivalence: true }
        );
        let dz = Pic2::discrete(z());
        let twice = OneMor::from_matrices(&dz, &dz, IntMatrix::zeros(0, 0), IntMatrix::from_i64(1, 1, &[2])).unwrap();
        let c = twice.classify();
        assert!(!c.essentially_surjective);
        assert!(c.faithful);
        let contractible = times(1);
        let to_zero = OneMor::zero(&contractible, &Pic2::zero());
        assert!(to_zero.classify().equivalence);
    }

    #[test]
    fn morphism_count_matches_fibres() {
        // [Z/4 --2--> Z/8]: morphisms 0 -> 4 are m with 2m = 4 mod 8, i.e. m in {2}
        let p = Pic2::new(FgAbPresentation::cyclic(4), FgAbPresentation::cyclic(8), IntMatrix::from_i64(1, 1, &[2]))
            .unwrap();
        let n = p.count_morphisms(&[BigInt::from(0)], &[BigInt::from(4)], 64).unwrap();
        assert_eq!(n, 1);
        let n = p.count_morphisms(&[BigInt::from(0)], &[BigInt::from(1)], 64).unwrap();
        assert_eq!(n, 0);
    }

    #[test]
    fn biproduct_examples() {
        let b = biproduct(&Pic2::discrete(FgAbPresentation::cyclic(2)), &Pic2::discrete(FgAbPresentation::cyclic(3)));
        assert_eq!(b.product.pi0().canonical().to_string(), "Z/6");
        assert_eq!(b.p1.compose(&b.i1).unwrap(), OneMor::identity(b.p1.target()));
        assert!(b.p1.compose(&b.i2).unwrap().is_zero());
        let c = biproduct(&Pic2::one_object(z()), &Pic2::one_object(z()));
        assert_eq!(c.product.pi1().canonical().to_string(), "Z^2");
        let u = biproduct(&times(3), &Pic2::zero());
        assert!(u.p1.is_equivalence());
    }
}
