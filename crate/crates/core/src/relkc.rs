//! Relative kernels and cokernels of a composable pair `F: A -> B`, `G: B -> C` together
//! with a 2-cell `φ: G∘F => 0`.
//!
//! Both constructions are presented in canonical coordinates right away. The structural
//! maps are composed through the canonical inclusion (resp. projection), so the
//! factorizations below work in those coordinates as well.

use crate::error::{Error, Result};
use crate::pic2::{OneMor, Pic2, TwoMor};
use crate::zlin::{injections, projections, AbHom, IntMatrix};

/// `Ker(F, φ)` with `e: K -> A` and `eps: F∘e => 0`.
#[derive(Clone, Debug)]
pub struct RelKernelResult {
    pub k: Pic2,
    pub e: OneMor,
    pub eps: TwoMor,
    f: OneMor,
    g: OneMor,
    phi: TwoMor,
    /// `K0 -> A0 ⊕ B1`
    inclusion: AbHom,
}

/// `Coker(φ, G)` with `p: C -> Coker` and `pi: p∘G => 0`.
#[derive(Clone, Debug)]
pub struct RelCokernelResult {
    pub c: Pic2,
    pub p: OneMor,
    pub pi: TwoMor,
    f: OneMor,
    g: OneMor,
    phi: TwoMor,
    /// `B0 ⊕ C1 -> Coker1`
    projection: AbHom,
    /// lifts of the generators of `Coker1` to `B0 ⊕ C1`
    section: IntMatrix,
}

fn check_triple(f: &OneMor, g: &OneMor, phi: &TwoMor) -> Result<()> {
    if f.target() != g.source() {
        return Err(Error::BoundaryMismatch("F and G are not composable".into()));
    }
    let gf = g.compose(f)?;
    if *phi.from() != gf {
        return Err(Error::BoundaryMismatch("the 2-cell does not start at G∘F".into()));
    }
    if !phi.to().is_zero() {
        return Err(Error::BoundaryMismatch("the 2-cell does not end at the zero morphism".into()));
    }
    phi.check()
}

/// 2-cell `x => 0` with component `h`.
fn null_cell(x: &OneMor, h: AbHom) -> Result<TwoMor> {
    TwoMor::new(x.clone(), OneMor::zero(x.source(), x.target()), h)
}

pub fn relative_kernel(f: &OneMor, g: &OneMor, phi: &TwoMor) -> Result<RelKernelResult> {
    check_triple(f, g, phi)?;
    let (a, b) = (f.source(), f.target());
    // (a0, b1) ↦ (F0 a0 + d_B b1, G1 b1 - φ a0)
    let top = f.f0().copair(b.d())?;
    let bottom = phi.h().neg().copair(g.f1())?;
    let constraint = top.pair(&bottom)?;
    let (k0, inclusion) = constraint.kernel();
    let (pa, pb) = projections(a.c0(), b.c1());
    let iota_a = pa.compose(&inclusion)?;
    let iota_b = pb.compose(&inclusion)?;

    let boundary = a.d().pair(&f.f1().neg())?;
    let d = inclusion
        .lift(&boundary)
        .map_err(|_| Error::IllFormed("differential of the relative kernel leaves the subgroup".into()))?;
    debug_assert_eq!(d.target(), &k0);
    let k = Pic2::from_differential(d);
    let e = OneMor::new(k.clone(), a.clone(), AbHom::identity(a.c1()), iota_a)?;
    let eps = null_cell(&f.compose(&e)?, iota_b)?;
    Ok(RelKernelResult { k, e, eps, f: f.clone(), g: g.clone(), phi: phi.clone(), inclusion })
}

pub fn relative_cokernel(f: &OneMor, g: &OneMor, phi: &TwoMor) -> Result<RelCokernelResult> {
    check_triple(f, g, phi)?;
    let (b, c) = (g.source(), g.target());
    // (a0, b1) ↦ (-F0 a0 + d_B b1, G1 b1 + φ a0)
    let top = f.f0().neg().copair(b.d())?;
    let bottom = phi.h().copair(g.f1())?;
    let relations = top.pair(&bottom)?;
    let (q, projection) = relations.cokernel();
    let section = projection.source().canonical_section_of(&projection);

    let raw_d = g.f0().neg().copair(c.d())?;
    let d = AbHom::new(q, c.c0().clone(), raw_d.matrix().mul(&section))
        .map_err(|_| Error::IllFormed("differential of the relative cokernel does not kill the relations".into()))?;
    if !raw_d.sub(&d.compose(&projection)?)?.is_zero() {
        return Err(Error::IllFormed("differential of the relative cokernel does not kill the relations".into()));
    }
    let cok = Pic2::from_differential(d);
    let (ib, ic) = injections(b.c0(), c.c1());
    let p = OneMor::new(c.clone(), cok.clone(), projection.compose(&ic)?, AbHom::identity(c.c0()))?;
    let pi = null_cell(&p.compose(g)?, projection.compose(&ib)?)?;
    Ok(RelCokernelResult { c: cok, p, pi, f: f.clone(), g: g.clone(), phi: phi.clone(), projection, section })
}

impl RelKernelResult {
    pub fn f(&self) -> &OneMor {
        &self.f
    }

    pub fn g(&self) -> &OneMor {
        &self.g
    }

    pub fn phi(&self) -> &TwoMor {
        &self.phi
    }

    /// Factor `candidate: X -> A` with `null: F∘candidate => 0` through `e`.
    ///
    /// Requires `G1∘null.h = φ.h∘candidate0`. The returned cell `e∘F' => candidate` is an
    /// identity: `e∘F'` equals `candidate` on the nose.
    pub fn factor(&self, candidate: &OneMor, null: &TwoMor) -> Result<(OneMor, TwoMor)> {
        if candidate.target() != self.e.target() {
            return Err(Error::BoundaryMismatch("candidate does not land in the source of F".into()));
        }
        let fx = self.f.compose(candidate)?;
        if *null.from() != fx || !null.to().is_zero() {
            return Err(Error::BoundaryMismatch("null must be a 2-cell F∘candidate => 0".into()));
        }
        null.check()?;
        let lhs = self.g.f1().compose(null.h())?;
        let rhs = self.phi.h().compose(candidate.f0())?;
        if lhs != rhs {
            return Err(Error::Incompatible("whiskered 2-cells G∘null and φ∘candidate differ".into()));
        }
        let pairing = candidate.f0().pair(null.h())?;
        let f0 = self.inclusion.lift(&pairing)?;
        let x = candidate.source();
        let fp = OneMor::new(x.clone(), self.k.clone(), candidate.f1().clone(), f0)?;
        let cell = TwoMor::canonical(&self.e.compose(&fp)?, candidate)?;
        Ok((fp, cell))
    }
}

impl RelCokernelResult {
    pub fn f(&self) -> &OneMor {
        &self.f
    }

    pub fn g(&self) -> &OneMor {
        &self.g
    }

    pub fn phi(&self) -> &TwoMor {
        &self.phi
    }

    /// Factor `candidate: C -> Y` with `null: candidate∘G => 0` through `p`.
    ///
    /// Requires `null.h∘F0 = candidate1∘φ.h`. The returned cell `F'∘p => candidate` is an
    /// identity.
    pub fn factor(&self, candidate: &OneMor, null: &TwoMor) -> Result<(OneMor, TwoMor)> {
        if candidate.source() != self.g.target() {
            return Err(Error::BoundaryMismatch("candidate does not start at the target of G".into()));
        }
        let yg = candidate.compose(&self.g)?;
        if *null.from() != yg || !null.to().is_zero() {
            return Err(Error::BoundaryMismatch("null must be a 2-cell candidate∘G => 0".into()));
        }
        null.check()?;
        let lhs = null.h().compose(self.f.f0())?;
        let rhs = candidate.f1().compose(self.phi.h())?;
        if lhs != rhs {
            return Err(Error::Incompatible("whiskered 2-cells null∘F and candidate∘φ differ".into()));
        }
        let raw = null.h().copair(candidate.f1())?;
        let y = candidate.target();
        let f1 = AbHom::new(self.c.c1().clone(), y.c1().clone(), raw.matrix().mul(&self.section))?;
        let fp = OneMor::new(self.c.clone(), y.clone(), f1, candidate.f0().clone())?;
        let cell = TwoMor::canonical(&fp.compose(&self.p)?, candidate)?;
        Ok((fp, cell))
    }

    pub fn projection(&self) -> &AbHom {
        &self.projection
    }
}

pub fn factor_through_kernel(kr: &RelKernelResult, candidate: &OneMor, null: &TwoMor) -> Result<(OneMor, TwoMor)> {
    kr.factor(candidate, null)
}

pub fn factor_through_cokernel(cr: &RelCokernelResult, candidate: &OneMor, null: &TwoMor) -> Result<(OneMor, TwoMor)> {
    cr.factor(candidate, null)
}

/// The cell `G∘F => 0` with zero component; valid when `G∘F = 0` on the nose.
pub fn can(f: &OneMor, g: &OneMor) -> Result<TwoMor> {
    let gf = g.compose(f)?;
    TwoMor::canonical(&gf, &OneMor::zero(gf.source(), gf.target()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zlin::FgAbPresentation;

    fn disc(n: i64) -> Pic2 {
        Pic2::discrete(FgAbPresentation::cyclic(n))
    }

    fn scalar(a: &Pic2, b: &Pic2, k1: i64, k0: i64) -> OneMor {
        let m = |p: &FgAbPresentation, q: &FgAbPresentation, k: i64| {
            let mut x = IntMatrix::zeros(q.gens(), p.gens());
            for i in 0..p.gens().min(q.gens()) {
                x.set_block(i, i, &IntMatrix::from_i64(1, 1, &[k]));
            }
            x
        };
        OneMor::from_matrices(a, b, m(a.c1(), b.c1(), k1), m(a.c0(), b.c0(), k0)).unwrap()
    }

    #[test]
    fn kernel_of_doubling_is_zero() {
        let z = disc(0);
        let f = scalar(&z, &z, 0, 2);
        let g = OneMor::zero(&z, &Pic2::zero());
        let kr = relative_kernel(&f, &g, &can(&f, &g).unwrap()).unwrap();
        assert!(kr.k.is_contractible());
    }

    #[test]
    fn kernel_of_reduction_mod_two() {
        let f = scalar(&disc(0), &disc(2), 0, 1);
        let g = OneMor::zero(&disc(2), &Pic2::zero());
        let kr = relative_kernel(&f, &g, &can(&f, &g).unwrap()).unwrap();
        assert_eq!(kr.k.pi0().canonical().to_string(), "Z");
        assert!(kr.k.pi1().is_trivial());
        let image = kr.e.f0().matrix()[(0, 0)].clone();
        assert!(image == 2.into() || image == (-2).into());
        assert!(kr.e.classify().faithful);

        // ×2 factors through it as an isomorphism
        let z = disc(0);
        let twice = scalar(&z, &z, 0, 2);
        let null = can(&twice, &f).unwrap();
        let (fp, cell) = kr.factor(&twice, &null).unwrap();
        assert!(fp.is_equivalence());
        assert!(cell.h().is_zero());
    }

    #[test]
    fn kernel_of_zero_map_is_source() {
        let a = Pic2::new(FgAbPresentation::cyclic(3), FgAbPresentation::cyclic(6), IntMatrix::from_i64(1, 1, &[2]))
            .unwrap();
        let b = disc(5);
        let f = OneMor::zero(&a, &b);
        let g = OneMor::zero(&b, &Pic2::zero());
        let kr = relative_kernel(&f, &g, &can(&f, &g).unwrap()).unwrap();
        assert!(kr.e.is_equivalence());
    }

    #[test]
    fn cokernel_examples() {
        let z = disc(0);
        let zero = Pic2::zero();
        let f = OneMor::zero(&zero, &z);
        let twice = scalar(&z, &z, 0, 2);
        let cr = relative_cokernel(&f, &twice, &can(&f, &twice).unwrap()).unwrap();
        assert_eq!(cr.c.pi0().canonical().to_string(), "Z/2");
        assert!(cr.c.pi1().is_trivial());
        assert!(cr.p.classify().essentially_surjective);

        let id = OneMor::identity(&z);
        let cr = relative_cokernel(&f, &id, &can(&f, &id).unwrap()).unwrap();
        assert!(cr.c.is_contractible());

        let b =
            Pic2::new(FgAbPresentation::free(1), FgAbPresentation::cyclic(4), IntMatrix::from_i64(1, 1, &[2])).unwrap();
        let g = OneMor::zero(&b, &zero);
        let f = OneMor::zero(&zero, &b);
        let cr = relative_cokernel(&f, &g, &can(&f, &g).unwrap()).unwrap();
        assert!(cr.c.pi0().is_trivial());
    }

    #[test]
    fn factoring_through_cokernel_of_four() {
        let z = disc(0);
        let zero = Pic2::zero();
        let f = OneMor::zero(&zero, &z);
        let four = scalar(&z, &z, 0, 4);
        let cr = relative_cokernel(&f, &four, &can(&f, &four).unwrap()).unwrap();
        let y = disc(4);
        let reduce = scalar(&z, &y, 0, 1);
        let null = can(&four, &reduce).unwrap();
        let (fp, cell) = cr.factor(&reduce, &null).unwrap();
        assert!(fp.is_equivalence());
        assert!(cell.check().is_ok());
    }

    #[test]
    fn universal_cones_factor_as_identity() {
        let a = Pic2::new(FgAbPresentation::free(1), FgAbPresentation::cyclic(12), IntMatrix::from_i64(1, 1, &[6]))
            .unwrap();
        let b = disc(6);
        let f = scalar(&a, &b, 0, 1);
        let g = OneMor::zero(&b, &Pic2::zero());
        let kr = relative_kernel(&f, &g, &can(&f, &g).unwrap()).unwrap();
        let (fp, _) = kr.factor(&kr.e, &kr.eps).unwrap();
        assert_eq!(fp, OneMor::identity(&kr.k));

        let f0 = OneMor::zero(&Pic2::zero(), &a);
        let cr = relative_cokernel(&f0, &f, &can(&f0, &f).unwrap()).unwrap();
        let (fp, _) = cr.factor(&cr.p, &cr.pi).unwrap();
        assert_eq!(fp, OneMor::identity(&cr.c));

        let (fp, _) =
            kr.factor(&OneMor::zero(&Pic2::zero(), &a), &can(&OneMor::zero(&Pic2::zero(), &a), &f).unwrap()).unwrap();
        assert!(fp.is_zero());
    }

    #[test]
    fn incompatible_null_is_rejected() {
        let z = disc(0);
        let one = Pic2::one_object(FgAbPresentation::free(1));
        let f = OneMor::zero(&z, &z);
        let g = OneMor::zero(&z, &one);
        // both differentials vanish, so any h is a cell 0 => 0
        let phi =
            TwoMor::from_matrix(&g.compose(&f).unwrap(), &OneMor::zero(&z, &one), IntMatrix::from_i64(1, 1, &[1]))
                .unwrap();
        let kr = relative_kernel(&f, &g, &phi).unwrap();
        let id = OneMor::identity(&z);
        let null = can(&id, &f).unwrap();
        assert!(matches!(kr.factor(&id, &null), Err(Error::Incompatible(_))));
    }
}
