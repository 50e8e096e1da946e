//! Additive functors on 2-groups and their left derived functors, computed as homology of
//! the functor applied to a projective resolution.

use std::collections::HashMap;
use std::fmt;

use crate::complexes::{
    homology_data, induced_homology_morphism, is_relative_2exact_at, ChainHomotopy2, ComplexMorphism,
    ExactnessCertificate, Homology, TwoChainComplex,
};
use crate::error::{Error, Result};
use crate::pic2::{biproduct, OneMor, Pic2, TwoMor};
use crate::resolve::{
    comparison_lift, horseshoe, projective_resolution, projective_resolution_seeded, Extension, Resolution,
};
use crate::zlin::{AbHom, FgAbPresentation, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FunctorKind {
    /// `- ⊗ B`
    Tensor,
    /// `Hom(B, -)`
    Hom,
}

/// An additive functor on abelian groups, applied degreewise to 2-groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditiveFunctor {
    pub kind: FunctorKind,
    pub coefficient: FgAbPresentation,
}

impl fmt::Display for AdditiveFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = self.coefficient.canonical();
        match self.kind {
            FunctorKind::Tensor => write!(f, "- ⊗ ({b})"),
            FunctorKind::Hom => write!(f, "Hom({b}, -)"),
        }
    }
}

impl AdditiveFunctor {
    pub fn tensor(b: FgAbPresentation) -> Self {
        AdditiveFunctor { kind: FunctorKind::Tensor, coefficient: b }
    }

    pub fn hom(b: FgAbPresentation) -> Self {
        AdditiveFunctor { kind: FunctorKind::Hom, coefficient: b }
    }

    pub fn apply_group(&self, a: &FgAbPresentation) -> FgAbPresentation {
        match self.kind {
            FunctorKind::Tensor => self.tensor_group(a),
            FunctorKind::Hom => self.hom_inclusion(a).source().clone(),
        }
    }

    pub fn apply_hom(&self, f: &AbHom) -> Result<AbHom> {
        let m = self.coefficient.gens();
        match self.kind {
            // generator (i, j) of A ⊗ B sits at i*m + j
            FunctorKind::Tensor => AbHom::new(
                self.tensor_group(f.source()),
                self.tensor_group(f.target()),
                f.matrix().kron(&IntMatrix::identity(m)),
            ),
            FunctorKind::Hom => {
                let (is, it) = (self.hom_inclusion(f.source()), self.hom_inclusion(f.target()));
                let fm = AbHom::new(is.target().clone(), it.target().clone(), IntMatrix::identity(m).kron(f.matrix()))?;
                it.lift(&fm.compose(&is)?)
            }
        }
    }

    fn tensor_group(&self, a: &FgAbPresentation) -> FgAbPresentation {
        let b = &self.coefficient;
        let (k, m) = (a.gens(), b.gens());
        let rels = a.relations().kron(&IntMatrix::identity(m)).vconcat(&IntMatrix::identity(k).kron(b.relations()));
        FgAbPresentation::new(k * m, rels)
    }

    /// `Hom(B, A) -> A^m`, homomorphisms recorded by the images of the generators of `B`.
    fn hom_inclusion(&self, a: &FgAbPresentation) -> AbHom {
        let b = &self.coefficient;
        let (k, m) = (a.gens(), b.gens());
        let am = FgAbPresentation::new(k * m, IntMatrix::identity(m).kron(a.relations()));
        let ar = FgAbPresentation::new(
            k * b.relations().rows(),
            IntMatrix::identity(b.relations().rows()).kron(a.relations()),
        );
        let rel_map =
            AbHom::new(am, ar, b.relations().kron(&IntMatrix::identity(k))).expect("relations of B act on A^m");
        rel_map.kernel().1
    }

    pub fn apply_pic2(&self, p: &Pic2) -> Result<Pic2> {
        Ok(Pic2::from_differential(self.apply_hom(p.d())?))
    }

    pub fn apply_one(&self, f: &OneMor) -> Result<OneMor> {
        OneMor::new(
            self.apply_pic2(f.source())?,
            self.apply_pic2(f.target())?,
            self.apply_hom(f.f1())?,
            self.apply_hom(f.f0())?,
        )
    }

    pub fn apply_two(&self, t: &TwoMor) -> Result<TwoMor> {
        TwoMor::new(self.apply_one(t.from())?, self.apply_one(t.to())?, self.apply_hom(t.h())?)
    }

    pub fn apply_complex(&self, c: &TwoChainComplex) -> Result<TwoChainComplex> {
        TwoChainComplex::new_unchecked(
            c.objects().iter().map(|o| self.apply_pic2(o)).collect::<Result<_>>()?,
            c.maps().iter().map(|f| self.apply_one(f)).collect::<Result<_>>()?,
            c.nulls().iter().map(|t| self.apply_two(t)).collect::<Result<_>>()?,
        )
    }

    pub fn apply_morphism(&self, f: &ComplexMorphism) -> Result<ComplexMorphism> {
        ComplexMorphism::new_unchecked(
            self.apply_complex(f.source())?,
            self.apply_complex(f.target())?,
            f.components().iter().map(|c| self.apply_one(c)).collect::<Result<_>>()?,
            f.squares().iter().map(|t| self.apply_two(t)).collect::<Result<_>>()?,
        )
    }

    pub fn apply_homotopy(&self, h: &ChainHomotopy2) -> Result<ChainHomotopy2> {
        ChainHomotopy2::new_unchecked(
            self.apply_morphism(h.from())?,
            self.apply_morphism(h.to())?,
            h.slides().iter().map(|s| self.apply_one(s)).collect::<Result<_>>()?,
            h.cells().iter().map(|t| self.apply_two(t)).collect::<Result<_>>()?,
        )
    }
}

/// `L_i T(M)` together with the resolution it was read from.
#[derive(Clone, Debug)]
pub struct DerivedResult {
    pub functor: AdditiveFunctor,
    pub input: Pic2,
    pub degree: usize,
    pub value: Pic2,
    pub resolution: Resolution,
}

/// Resolution length actually used for degree `i`: the homology at `i` reads `P_{i+2}`.
pub fn working_length(i: usize, len: usize) -> usize {
    len.max(i + 2)
}

pub fn derived(t: &AdditiveFunctor, m: &Pic2, i: usize, len: usize) -> Result<DerivedResult> {
    let resolution = projective_resolution(m, working_length(i, len));
    derived_from(t, &resolution, i)
}

pub fn derived_from(t: &AdditiveFunctor, resolution: &Resolution, i: usize) -> Result<DerivedResult> {
    if i + 2 > resolution.len() {
        return Err(Error::IndexOutOfRange { index: i as i64, max: resolution.len() as i64 - 2 });
    }
    let tp = t.apply_complex(&resolution.complex())?;
    Ok(DerivedResult {
        functor: t.clone(),
        input: resolution.target().clone(),
        degree: i,
        value: homology_data(&tp, i as i64)?.pic,
        resolution: resolution.clone(),
    })
}

/// `L_i T(F): L_i T(M) -> L_i T(M')` through a comparison lift between the given resolutions.
pub fn derived_map(t: &AdditiveFunctor, f: &OneMor, pres: &Resolution, qres: &Resolution, i: usize) -> Result<OneMor> {
    if i + 2 > pres.len().min(qres.len()) {
        return Err(Error::IndexOutOfRange { index: i as i64, max: pres.len().min(qres.len()) as i64 - 2 });
    }
    let lift = comparison_lift(f, pres, qres)?.shift_down()?;
    induced_homology_morphism(&t.apply_morphism(&lift)?, i as i64)
}

/// Two seeded resolutions, the values read from each, and the comparison between them.
#[derive(Clone, Debug)]
pub struct IndependenceReport {
    pub first: Pic2,
    pub second: Pic2,
    pub comparison: OneMor,
    pub same_invariants: bool,
    pub equivalence: bool,
}

pub fn resolution_independence_check(
    t: &AdditiveFunctor,
    m: &Pic2,
    i: usize,
    seed_a: u64,
    seed_b: u64,
) -> Result<IndependenceReport> {
    let len = i + 3;
    let ra = projective_resolution_seeded(m, len, seed_a);
    let rb = projective_resolution_seeded(m, len, seed_b);
    let first = derived_from(t, &ra, i)?.value;
    let second = derived_from(t, &rb, i)?.value;
    let comparison = derived_map(t, &OneMor::identity(m), &ra, &rb, i)?;
    let (a0, a1) = first.homotopy_invariants();
    let (b0, b1) = second.homotopy_invariants();
    let same_invariants = a0.canonical().same_type(b0.canonical()) && a1.canonical().same_type(b1.canonical());
    let equivalence = comparison.is_equivalence();
    Ok(IndependenceReport { first, second, comparison, same_invariants, equivalence })
}

/// `⟨T(p1), T(p2)⟩: T(A × B) -> T(A) × T(B)`, which should be an equivalence.
pub fn biproduct_preservation_check(t: &AdditiveFunctor, a: &Pic2, b: &Pic2) -> Result<OneMor> {
    let bp = biproduct(a, b);
    let (ta, tb) = (t.apply_pic2(a)?, t.apply_pic2(b)?);
    let tbp = biproduct(&ta, &tb);
    tbp.pair(&t.apply_one(&bp.p1)?, &t.apply_one(&bp.p2)?)
}

/// A term of a long sequence, `L_n T` of one of the three ends.
#[derive(Clone, Debug)]
pub struct SequenceTerm {
    pub degree: usize,
    /// 0, 1, 2 for the sub, middle and quotient.
    pub position: usize,
    pub value: Pic2,
}

impl SequenceTerm {
    pub fn label(&self) -> String {
        format!("L{}T({})", self.degree, ["A", "B", "C"][self.position])
    }
}

#[derive(Clone, Debug)]
pub enum PointStatus {
    Exact,
    NotExact { pi0: FgAbPresentation, pi1: FgAbPresentation },
}

#[derive(Clone, Debug)]
pub struct PointCertificate {
    pub index: usize,
    pub status: PointStatus,
}

impl PointCertificate {
    pub fn exact(&self) -> bool {
        matches!(self.status, PointStatus::Exact)
    }
}

/// `L_N T(A) -> L_N T(B) -> L_N T(C) -> L_{N-1} T(A) -> ... -> L_0 T(C)`.
///
/// Every term but the last carries a certificate; the last has no outgoing map to test against.
/// `maps[k]: terms[k] -> terms[k+1]`, `nulls[k]: maps[k+1]∘maps[k] => 0`.
#[derive(Clone, Debug)]
pub struct LongSequence {
    pub terms: Vec<SequenceTerm>,
    pub maps: Vec<OneMor>,
    pub nulls: Vec<TwoMor>,
    pub certificates: Vec<PointCertificate>,
}

impl LongSequence {
    pub fn is_exact(&self) -> bool {
        self.certificates.iter().all(PointCertificate::exact)
    }

    pub fn pi0_maps(&self) -> Vec<AbHom> {
        self.maps.iter().map(OneMor::pi0_map).collect()
    }

    /// Indices `k` of the connecting maps `L_n T(C) -> L_{n-1} T(A)`.
    pub fn connecting_indices(&self) -> Vec<usize> {
        (0..self.maps.len()).filter(|k| self.terms[*k].position == 2).collect()
    }
}

struct Split {
    sigma: AbHom,
    rho: AbHom,
}

/// The long sequence of `L_* T` attached to an extension, from a horseshoe resolution.
pub fn long_2exact_sequence(t: &AdditiveFunctor, ext: &Extension, len: usize) -> Result<LongSequence> {
    if t.kind != FunctorKind::Tensor {
        return Err(Error::UnsupportedFunctorKind(format!("long sequences need a tensor functor, got {t}")));
    }
    // One hidden degree above `len` so that every displayed point has a full window.
    let top = len as i64 + 1;
    let rlen = len + 3;
    let pres = projective_resolution(ext.f.source(), rlen);
    let qres = projective_resolution(ext.g.target(), rlen);
    let hs = horseshoe(ext, &pres, &qres)?;
    let ip = t.apply_morphism(&hs.i.shift_down()?)?;
    let pp = t.apply_morphism(&hs.p.shift_down()?)?;
    let tc = [ip.source().clone(), ip.target().clone(), pp.target().clone()];
    let (pc, qc) = (pres.complex(), qres.complex());

    let mut cache: HashMap<(usize, i64), Homology> = HashMap::new();
    let mut hom = |which: usize, n: i64| -> Result<Homology> {
        if let Some(h) = cache.get(&(which, n)) {
            return Ok(h.clone());
        }
        let h = homology_data(&tc[which], n)?;
        cache.insert((which, n), h.clone());
        Ok(h)
    };
    let split = |n: i64| -> Result<Split> {
        let bp = biproduct(&pc.object(n), &qc.object(n));
        Ok(Split { sigma: t.apply_hom(bp.i2.f0())?, rho: t.apply_hom(bp.p1.f0())? })
    };
    let cx = Cx { p: &tc[0], k: &tc[1], q: &tc[2] };

    let mut terms = Vec::new();
    let mut maps: Vec<OneMor> = Vec::new();
    let mut nulls: Vec<TwoMor> = Vec::new();
    for n in (0..=top).rev() {
        for which in 0..3 {
            terms.push(SequenceTerm { degree: n as usize, position: which, value: hom(which, n)?.pic });
        }
        let hi = induced_homology_morphism(&ip, n)?;
        let hp = induced_homology_morphism(&pp, n)?;
        if let Some(conn) = maps.last() {
            let comp = hi.compose(conn)?;
            nulls.push(cx.after_connecting(&comp, &hom(2, n + 1)?, &hom(1, n)?, &split(n + 1)?, n + 1)?);
        }
        let pi = hp.compose(&hi)?;
        let h = AbHom::zero(pi.source().c0().clone(), pi.target().c1().clone());
        nulls.push(TwoMor::new(pi.clone(), OneMor::zero(pi.source(), pi.target()), h)?);
        maps.push(hi);
        if n > 0 {
            let conn = cx.connecting(&hom(2, n)?, &hom(0, n - 1)?, &split(n - 1)?, &split(n)?, &split(n + 1)?, n)?;
            let comp = conn.compose(&hp)?;
            nulls.push(cx.before_connecting(&comp, &hom(1, n)?, &hom(0, n - 1)?, &split(n)?, n)?);
            maps.push(hp);
            maps.push(conn);
        } else {
            maps.push(hp);
        }
    }

    let mut nulls = choose_nulls(&terms, &maps, nulls)?;
    let mut certificates = Vec::new();
    for k in 1..terms.len() - 1 {
        certificates.push(PointCertificate { index: k, status: window_status(&terms, &maps, &nulls[k - 1], k)? });
    }
    // Drop the hidden degree.
    let drop = 3;
    terms.drain(..drop);
    maps.drain(..drop);
    nulls.drain(..drop);
    let certificates = certificates
        .into_iter()
        .filter(|c| c.index >= drop)
        .map(|c| PointCertificate { index: c.index - drop, status: c.status })
        .collect();
    Ok(LongSequence { terms, maps, nulls, certificates })
}

/// Cells `c0(X) -> c1(Y)` that can be added to a null cell `X => Y` without changing its
/// ends: those factoring as `π0(X) -> π1(Y)`. Zero comes first.
fn adjustments(x: &Pic2, y: &Pic2) -> Vec<AbHom> {
    const CAP: usize = 64;
    let zero = AbHom::zero(x.c0().clone(), y.c1().clone());
    let (pi0, pi1) = (x.pi0(), y.pi1());
    let Some(elements) = pi1.enumerate(4096) else {
        return vec![zero];
    };
    let factors = &pi0.canonical().factors;
    let mut columns: Vec<Vec<Vec<num_bigint::BigInt>>> = vec![Vec::new()];
    for g in 0..pi0.gens() {
        let order = factors.get(g);
        let fits: Vec<_> = elements
            .iter()
            .filter(|e| order.is_none_or(|d| pi1.is_zero_element(&e.iter().map(|v| v * d).collect::<Vec<_>>())))
            .collect();
        columns = columns
            .into_iter()
            .flat_map(|prefix| {
                fits.iter().map(move |e| {
                    let mut p = prefix.clone();
                    p.push((*e).clone());
                    p
                })
            })
            .take(CAP)
            .collect();
    }
    let mut out = vec![zero];
    for cols in columns {
        let Ok(phi) = AbHom::new(pi0.clone(), pi1.clone(), IntMatrix::from_cols(pi1.gens(), &cols)) else {
            continue;
        };
        let Ok(z) = y.pi1_inclusion().compose(&phi).and_then(|p| p.compose(x.pi0_projection())) else {
            continue;
        };
        if !out.contains(&z) {
            out.push(z);
        }
    }
    out
}

/// Re-choose each null cell within its admissible adjustments so that the window it closes
/// is exact; a cell is kept as given when no adjustment helps.
fn choose_nulls(terms: &[SequenceTerm], maps: &[OneMor], base: Vec<TwoMor>) -> Result<Vec<TwoMor>> {
    let mut out = Vec::with_capacity(base.len());
    for (j, t) in base.into_iter().enumerate() {
        let mut chosen = t.clone();
        for z in adjustments(t.from().source(), t.from().target()) {
            let cell = TwoMor::new(t.from().clone(), t.to().clone(), t.h().add(&z)?)?;
            if matches!(window_status(terms, maps, &cell, j + 1)?, PointStatus::Exact) {
                chosen = cell;
                break;
            }
        }
        out.push(chosen);
    }
    Ok(out)
}

// 2-exactness at `k` on the window `terms[k-1] -> terms[k] -> terms[k+1]`: the factorization
// of the incoming map through the kernel of the outgoing one is full and essentially surjective.
fn window_status(terms: &[SequenceTerm], maps: &[OneMor], null: &TwoMor, k: usize) -> Result<PointStatus> {
    let objects = vec![terms[k + 1].value.clone(), terms[k].value.clone(), terms[k - 1].value.clone()];
    let w = TwoChainComplex::new(objects, vec![maps[k].clone(), maps[k - 1].clone()], vec![null.clone()])?;
    let ExactnessCertificate { exact, pi0, pi1, .. } = is_relative_2exact_at(&w, 1)?;
    Ok(if exact { PointStatus::Exact } else { PointStatus::NotExact { pi0, pi1 } })
}

/// `T` applied to the non-augmented resolutions of the sub, middle and quotient.
struct Cx<'a> {
    p: &'a TwoChainComplex,
    k: &'a TwoChainComplex,
    q: &'a TwoChainComplex,
}

// `[[f, 0], [0, 0]]` between `X ⊕ X'` and `Y ⊕ Y'`.
fn widen(f: &AbHom, src_extra: &FgAbPresentation, tgt_extra: &FgAbPresentation) -> Result<AbHom> {
    let top = f.copair(&AbHom::zero(src_extra.clone(), f.target().clone()))?;
    top.pair(&AbHom::zero(f.source().direct_sum(src_extra), tgt_extra.clone()))
}

impl Cx<'_> {
    // ∂_n: H_n(TQ) -> H_{n-1}(TP), q ↦ ρ M σ q on objects and Y ↦ -ρ M σ Y on arrows.
    fn connecting(&self, hq: &Homology, hm: &Homology, sm: &Split, sn: &Split, sp: &Split, n: i64) -> Result<OneMor> {
        let bad = |_| Error::IllFormed(format!("connecting map at {n} is not well defined"));
        let raw0 = sm.rho.compose(self.k.map(n).f0())?.compose(&sn.sigma)?;
        let raw0 = widen(&raw0, self.q.object(n - 1).c1(), self.p.object(n - 2).c1())?;
        let f0 = hm.cycles().lift(&raw0.compose(hq.cycles())?).map_err(bad)?;
        let raw1 = sn.rho.compose(self.k.map(n + 1).f0())?.compose(&sp.sigma)?.neg();
        let raw1 = widen(&raw1, self.q.object(n).c1(), self.p.object(n - 1).c1())?;
        let m1 = hm.boundaries().matrix().mul(raw1.matrix()).mul(hq.section());
        let f1 = AbHom::new(hq.pic.c1().clone(), hm.pic.c1().clone(), m1).map_err(bad)?;
        OneMor::new(hq.pic.clone(), hm.pic.clone(), f1, f0)
            .map_err(|_| Error::IllFormed(format!("connecting map at {n} is not a chain map")))
    }

    // ∂_n∘H(p)_n => 0 with h(k) = -ρ_n k.
    fn before_connecting(&self, comp: &OneMor, hk: &Homology, hm: &Homology, sn: &Split, n: i64) -> Result<TwoMor> {
        let raw = widen(&sn.rho.neg(), self.k.object(n - 1).c1(), self.p.object(n - 1).c1())?;
        let h = hm.boundaries().compose(&raw)?.compose(hk.cycles())?;
        TwoMor::new(comp.clone(), OneMor::zero(comp.source(), comp.target()), h)
            .map_err(|e| Error::IllFormed(format!("null cell before the connecting map at {n}: {e}")))
    }

    // H(i)_{n-1}∘∂_n => 0 with h(q) = σ_n q.
    fn after_connecting(&self, comp: &OneMor, hq: &Homology, hkm: &Homology, sn: &Split, n: i64) -> Result<TwoMor> {
        let raw = widen(&sn.sigma, self.q.object(n - 1).c1(), self.k.object(n - 1).c1())?;
        let h = hkm.boundaries().compose(&raw)?.compose(hq.cycles())?;
        TwoMor::new(comp.clone(), OneMor::zero(comp.source(), comp.target()), h)
            .map_err(|e| Error::IllFormed(format!("null cell after the connecting map at {n}: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zlin::IntMatrix;

    fn cyc(n: i64) -> FgAbPresentation {
        FgAbPresentation::cyclic(n)
    }

    fn disc(n: i64) -> Pic2 {
        Pic2::discrete(cyc(n))
    }

    fn order_of(g: &FgAbPresentation) -> String {
        g.canonical().to_string()
    }

    fn mult(a: i64, n: i64) -> OneMor {
        let (s, t) = (disc(0), disc(n));
        OneMor::from_matrices(&s, &t, IntMatrix::zeros(0, 0), IntMatrix::from_i64(1, 1, &[a])).unwrap()
    }

    /// `disc Z -a-> disc Z -> disc Z/a`
    fn multiplication_extension(a: i64) -> Extension {
        let f = mult(a, 0);
        let g = mult(1, a);
        let phi = crate::relkc::can(&f, &g).unwrap();
        Extension::new(f, g, phi).unwrap()
    }

    #[test]
    fn tensor_of_free_is_quotient() {
        let t = AdditiveFunctor::tensor(cyc(2));
        let r = derived(&t, &disc(0), 0, 2).unwrap();
        assert_eq!(order_of(r.value.pi0()), "Z/2");
    }

    #[test]
    fn tor_of_cyclics() {
        let t = AdditiveFunctor::tensor(cyc(4));
        let r = derived(&t, &disc(6), 1, 3).unwrap();
        assert_eq!(order_of(r.value.pi0()), "Z/2");
        assert!(r.value.pi1().is_trivial());
    }

    #[test]
    fn tensor_of_nondiscrete_complex() {
        let p = Pic2::new(cyc(0), cyc(0), IntMatrix::from_i64(1, 1, &[6])).unwrap();
        let t = AdditiveFunctor::tensor(cyc(4));
        let tp = t.apply_pic2(&p).unwrap();
        assert_eq!(order_of(tp.pi0()), "Z/2");
        assert_eq!(order_of(tp.pi1()), "Z/2");
    }

    #[test]
    fn hom_functor_values() {
        let t = AdditiveFunctor::hom(cyc(4));
        assert_eq!(order_of(&t.apply_group(&cyc(6))), "Z/2");
        assert_eq!(order_of(&t.apply_group(&cyc(0))), "0");
        let f = t.apply_hom(&AbHom::identity(&cyc(8))).unwrap();
        assert!(f.is_isomorphism());
    }

    #[test]
    fn independent_of_seed() {
        let t = AdditiveFunctor::tensor(cyc(4));
        let rep = resolution_independence_check(&t, &disc(6), 1, 1, 2).unwrap();
        assert!(rep.same_invariants && rep.equivalence);
    }

    #[test]
    fn biproducts_preserved() {
        let t = AdditiveFunctor::tensor(cyc(6));
        let f = biproduct_preservation_check(&t, &disc(4), &disc(0)).unwrap();
        assert!(f.is_equivalence());
    }

    #[test]
    fn hom_long_sequence_unsupported() {
        let t = AdditiveFunctor::hom(cyc(2));
        let e = long_2exact_sequence(&t, &multiplication_extension(2), 1).unwrap_err();
        assert!(matches!(e, Error::UnsupportedFunctorKind(_)));
    }

    #[test]
    fn long_sequence_exact_for_multiplication() {
        for a in [2, 3, 4, 6] {
            for b in [2, 3, 4] {
                let t = AdditiveFunctor::tensor(cyc(b));
                let s = long_2exact_sequence(&t, &multiplication_extension(a), 1).unwrap();
                assert_eq!(s.terms.len(), 6);
                assert_eq!(s.certificates.len(), 5);
                assert!(s.is_exact(), "a={a} b={b}: {:?}", s.certificates);
            }
        }
    }

    #[test]
    fn long_sequence_tor_values() {
        let t = AdditiveFunctor::tensor(cyc(2));
        let s = long_2exact_sequence(&t, &multiplication_extension(2), 1).unwrap();
        let pi0: Vec<String> = s.terms.iter().map(|x| order_of(x.value.pi0())).collect();
        assert_eq!(pi0, ["0", "0", "Z/2", "Z/2", "Z/2", "Z/2"]);
        let k = s.connecting_indices();
        assert_eq!(k, vec![2]);
        assert!(s.maps[2].pi0_map().is_isomorphism());
        assert!(s.maps[3].pi0_map().is_zero());
    }

    // brute force: some h: c0(S) -> c1(T) with f = (h∘d, d∘h)
    fn null_homotopic(f: &OneMor) -> bool {
        let (s, t) = (f.source(), f.target());
        let Some(elements) = t.c1().enumerate(4096) else { return false };
        let mut choices: Vec<Vec<Vec<num_bigint::BigInt>>> = vec![Vec::new()];
        for _ in 0..s.c0().gens() {
            choices = choices
                .into_iter()
                .flat_map(|p| {
                    elements.iter().map(move |e| {
                        let mut p = p.clone();
                        p.push(e.clone());
                        p
                    })
                })
                .collect();
        }
        choices.into_iter().any(|cols| {
            let Ok(h) = AbHom::new(s.c0().clone(), t.c1().clone(), IntMatrix::from_cols(t.c1().gens(), &cols)) else {
                return false;
            };
            TwoMor::new(OneMor::zero(s, t), f.clone(), h).is_ok()
        })
    }

    #[test]
    fn split_extension_has_trivial_connecting_maps() {
        let ext = Extension::split(&disc(2), &disc(4));
        let t = AdditiveFunctor::tensor(cyc(2));
        let s = long_2exact_sequence(&t, &ext, 1).unwrap();
        assert!(s.is_exact());
        for k in s.connecting_indices() {
            assert!(null_homotopic(&s.maps[k]), "connecting map {k}");
        }
    }
}
