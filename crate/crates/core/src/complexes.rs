//! Bounded 2-chain complexes `A_N -> ... -> A_0`, their homology 2-groups, morphisms of
//! complexes and 2-chain homotopies.
//!
//! Indices outside `[0, N]` are read as zero objects, zero maps and zero cells, so every
//! accessor takes an `i64`.

use std::fmt;

use crate::error::{Error, Result};
use crate::pic2::{OneMor, Pic2, TwoMor};
use crate::relkc::{relative_cokernel, relative_kernel};
use crate::zlin::{AbHom, FgAbPresentation, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoChainComplex {
    objects: Vec<Pic2>,
    /// `maps[n - 1] = L_n: A_n -> A_{n-1}`
    maps: Vec<OneMor>,
    /// `nulls[n - 2] = α_n: L_{n-1}∘L_n => 0`
    nulls: Vec<TwoMor>,
}

/// A failed identity, with the difference of its two sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub index: i64,
    pub identity: String,
    pub residual: IntMatrix,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {}: {} (residual {:?})", self.index, self.identity, self.residual)
    }
}

/// Number of identities verified by a successful check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub identities_checked: usize,
}

#[derive(Default)]
struct Checker {
    violations: Vec<Violation>,
    checked: usize,
}

impl Checker {
    fn equal(&mut self, index: i64, identity: &str, lhs: &AbHom, rhs: &AbHom) {
        self.checked += 1;
        if lhs == rhs {
            return;
        }
        let residual = match lhs.sub(rhs) {
            Ok(r) => r.matrix().clone(),
            Err(_) => IntMatrix::zeros(0, 0),
        };
        self.violations.push(Violation { index, identity: identity.to_string(), residual });
    }

    fn one_mor(&mut self, index: i64, what: &str, f: &OneMor) {
        let lhs = f.f0().compose(f.source().d()).expect("shapes checked");
        let rhs = f.target().d().compose(f.f1()).expect("shapes checked");
        self.equal(index, &format!("{what}: chain condition"), &lhs, &rhs);
    }

    fn two_mor(&mut self, index: i64, what: &str, t: &TwoMor) {
        let d0 = t.to().f0().sub(t.from().f0()).expect("parallel");
        let r0 = t.from().target().d().compose(t.h()).expect("shapes checked");
        self.equal(index, &format!("{what}: degree-0 homotopy identity"), &d0, &r0);
        let d1 = t.to().f1().sub(t.from().f1()).expect("parallel");
        let r1 = t.h().compose(t.from().source().d()).expect("shapes checked");
        self.equal(index, &format!("{what}: degree-1 homotopy identity"), &d1, &r1);
    }

    fn finish(self) -> std::result::Result<Certificate, Vec<Violation>> {
        if self.violations.is_empty() {
            Ok(Certificate { identities_checked: self.checked })
        } else {
            Err(self.violations)
        }
    }
}

fn report(v: Vec<Violation>) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

impl TwoChainComplex {
    /// Checks shapes and every identity.
    pub fn new(objects: Vec<Pic2>, maps: Vec<OneMor>, nulls: Vec<TwoMor>) -> Result<Self> {
        let c = Self::new_unchecked(objects, maps, nulls)?;
        c.check().map_err(|v| Error::IllFormed(report(v)))?;
        Ok(c)
    }

    /// Checks shapes only; see [`TwoChainComplex::check`].
    pub fn new_unchecked(objects: Vec<Pic2>, maps: Vec<OneMor>, nulls: Vec<TwoMor>) -> Result<Self> {
        if objects.is_empty() {
            return Err(Error::IllFormed("a complex needs at least one object".into()));
        }
        let n = objects.len() - 1;
        if maps.len() != n || nulls.len() != n.saturating_sub(1) {
            return Err(Error::IllFormed(format!(
                "complex of length {n} needs {n} maps and {} nulls",
                n.saturating_sub(1)
            )));
        }
        for (i, l) in maps.iter().enumerate() {
            if *l.source() != objects[i + 1] || *l.target() != objects[i] {
                return Err(Error::BoundaryMismatch(format!("map {} has the wrong ends", i + 1)));
            }
        }
        for (i, a) in nulls.iter().enumerate() {
            let k = i + 2;
            let expected = maps[k - 2].compose(&maps[k - 1])?;
            if *a.from() != expected || !a.to().is_zero() {
                return Err(Error::BoundaryMismatch(format!("null {k} is not a cell L_{}∘L_{k} => 0", k - 1)));
            }
        }
        Ok(TwoChainComplex { objects, maps, nulls })
    }

    /// Complex of discrete 2-groups with zero nulls; `maps[n - 1]` is the matrix of `L_n`.
    pub fn discrete(groups: Vec<FgAbPresentation>, maps: Vec<IntMatrix>) -> Result<Self> {
        let objects: Vec<Pic2> = groups.into_iter().map(Pic2::discrete).collect();
        if maps.len() + 1 != objects.len() {
            return Err(Error::IllFormed("a discrete complex needs one map per adjacent pair".into()));
        }
        let maps = maps
            .into_iter()
            .enumerate()
            .map(|(i, m)| {
                let (s, t) = (&objects[i + 1], &objects[i]);
                OneMor::from_matrices(s, t, IntMatrix::zeros(0, 0), m)
            })
            .collect::<Result<Vec<_>>>()?;
        let nulls = (2..objects.len())
            .map(|k| {
                let comp = maps[k - 2].compose(&maps[k - 1])?;
                let zero = OneMor::zero(comp.source(), comp.target());
                TwoMor::new_unchecked(
                    comp.clone(),
                    zero,
                    AbHom::zero(comp.source().c0().clone(), comp.target().c1().clone()),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(objects, maps, nulls)
    }

    /// `N`, the top index.
    pub fn len(&self) -> usize {
        self.objects.len() - 1
    }

    /// A single object and no maps.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn objects(&self) -> &[Pic2] {
        &self.objects
    }

    pub fn maps(&self) -> &[OneMor] {
        &self.maps
    }

    pub fn nulls(&self) -> &[TwoMor] {
        &self.nulls
    }

    pub fn object(&self, n: i64) -> Pic2 {
        if n < 0 || n as usize > self.len() {
            Pic2::zero()
        } else {
            self.objects[n as usize].clone()
        }
    }

    /// `L_n: A_n -> A_{n-1}`
    pub fn map(&self, n: i64) -> OneMor {
        if n >= 1 && n as usize <= self.len() {
            self.maps[n as usize - 1].clone()
        } else {
            OneMor::zero(&self.object(n), &self.object(n - 1))
        }
    }

    /// `α_n: L_{n-1}∘L_n => 0`
    pub fn null(&self, n: i64) -> TwoMor {
        if n >= 2 && n as usize <= self.len() {
            self.nulls[n as usize - 2].clone()
        } else {
            let comp = self.map(n - 1).compose(&self.map(n)).expect("adjacent maps compose");
            let zero = OneMor::zero(comp.source(), comp.target());
            TwoMor::canonical(&comp, &zero).expect("out-of-range composites vanish")
        }
    }

    /// Keep `A_0..A_top`.
    pub fn truncate(&self, top: usize) -> TwoChainComplex {
        if top >= self.len() {
            return self.clone();
        }
        TwoChainComplex {
            objects: self.objects[..=top].to_vec(),
            maps: self.maps[..top].to_vec(),
            nulls: self.nulls[..top.saturating_sub(1)].to_vec(),
        }
    }

    /// `A_1, A_2, ...` re-indexed from 0 (drops an augmentation).
    pub fn shift_down(&self) -> Option<TwoChainComplex> {
        if self.is_empty() {
            return None;
        }
        Some(TwoChainComplex {
            objects: self.objects[1..].to_vec(),
            maps: self.maps[1..].to_vec(),
            nulls: self.nulls.get(1..).map(<[TwoMor]>::to_vec).unwrap_or_default(),
        })
    }

    pub fn check(&self) -> std::result::Result<Certificate, Vec<Violation>> {
        let mut c = Checker::default();
        for n in 1..=self.len() as i64 {
            c.one_mor(n, &format!("L_{n}"), &self.map(n));
        }
        for n in 2..=self.len() as i64 {
            c.two_mor(n, &format!("α_{n}"), &self.null(n));
        }
        for n in 3..=self.len() as i64 {
            let lhs = self.map(n - 2).f1().compose(self.null(n).h()).expect("shapes checked");
            let rhs = self.null(n - 1).h().compose(self.map(n).f0()).expect("shapes checked");
            c.equal(n, &format!("coherence L_{}∘α_{n} = α_{}∘L_{n}", n - 2, n - 1), &lhs, &rhs);
        }
        c.finish()
    }

    fn in_range(&self, n: i64) -> Result<()> {
        if n < 0 || n as usize > self.len() {
            return Err(Error::IndexOutOfRange { index: n, max: self.len() as i64 });
        }
        Ok(())
    }
}

pub fn check_two_chain_complex(c: &TwoChainComplex) -> std::result::Result<Certificate, Vec<Violation>> {
    c.check()
}

/// Homology 2-group with the coordinates needed to induce maps.
#[derive(Clone, Debug)]
pub struct Homology {
    pub pic: Pic2,
    /// `H0 -> A_{n,0} ⊕ A_{n-1,1}`
    cycles: AbHom,
    /// `A_{n+1,0} ⊕ A_{n,1} -> H1`
    boundaries: AbHom,
    section: IntMatrix,
}

impl Homology {
    pub fn cycles(&self) -> &AbHom {
        &self.cycles
    }

    pub fn boundaries(&self) -> &AbHom {
        &self.boundaries
    }

    /// A section of [`Homology::boundaries`], as a matrix.
    pub fn section(&self) -> &IntMatrix {
        &self.section
    }
}

/// `H_n` from the pair description, for any `n` (zero outside the support).
pub fn homology_data(c: &TwoChainComplex, n: i64) -> Result<Homology> {
    let (an, am) = (c.object(n), c.object(n - 1));
    let ap = c.object(n + 1);
    let (l_n, l_m) = (c.map(n), c.map(n - 1));
    let (l_p, l_pp) = (c.map(n + 1), c.map(n + 2));
    let (alpha_n, alpha_p, alpha_pp) = (c.null(n), c.null(n + 1), c.null(n + 2));

    // objects: (a, u) with L_n a + d u = 0 and L_{n-1} u = α_n a
    let top = l_n.f0().copair(am.d())?;
    let bottom = alpha_n.h().neg().copair(l_m.f1())?;
    let (_, cycles) = top.pair(&bottom)?.kernel();

    // morphisms: (X, x) modulo (-L Y + d y, L y + α Y)
    let r_top = l_pp.f0().neg().copair(ap.d())?;
    let r_bottom = alpha_pp.h().copair(l_p.f1())?;
    let (h1, boundaries) = r_top.pair(&r_bottom)?.cokernel();
    let section = boundaries.source().canonical_section_of(&boundaries);

    // (X, x) ↦ (-L X + d x, -L x - α X)
    let d_top = l_p.f0().neg().copair(an.d())?;
    let d_bottom = alpha_p.h().neg().copair(&l_n.f1().neg())?;
    let raw_d = d_top.pair(&d_bottom)?;
    let lifted =
        cycles.lift(&raw_d).map_err(|_| Error::IllFormed(format!("boundary of homology at {n} leaves the cycles")))?;
    let d = AbHom::new(h1, cycles.source().clone(), lifted.matrix().mul(&section))
        .map_err(|_| Error::IllFormed(format!("boundary of homology at {n} does not kill the relations")))?;
    if d.compose(&boundaries)? != lifted {
        return Err(Error::IllFormed(format!("boundary of homology at {n} does not kill the relations")));
    }
    Ok(Homology { pic: Pic2::from_differential(d), cycles, boundaries, section })
}

pub fn homology(c: &TwoChainComplex, n: i64) -> Result<Pic2> {
    c.in_range(n)?;
    Ok(homology_data(c, n)?.pic)
}

/// `H_n` as `Coker(ᾱ_{n+2}, L'_{n+1})` with `L'_{n+1}` the factorization of `L_{n+1}`
/// through `Ker(L_n, α_n)`.
pub fn homology_via_relkc(c: &TwoChainComplex, n: i64) -> Result<Pic2> {
    c.in_range(n)?;
    let kr = relative_kernel(&c.map(n), &c.map(n - 1), &c.null(n))?;
    let (l_prime, _) = kr.factor(&c.map(n + 1), &c.null(n + 1))?;
    let l_pp = c.map(n + 2);
    let comp = l_prime.compose(&l_pp)?;
    let zero = OneMor::zero(comp.source(), comp.target());
    let alpha_bar = TwoMor::new(comp, zero, c.null(n + 2).h().clone())?;
    Ok(relative_cokernel(&l_pp, &l_prime, &alpha_bar)?.c)
}

/// Exactness at `n`, read as vanishing homology.
#[derive(Clone, Debug)]
pub struct ExactnessCertificate {
    pub index: i64,
    pub exact: bool,
    pub pi0: FgAbPresentation,
    pub pi1: FgAbPresentation,
}

pub fn is_relative_2exact_at(c: &TwoChainComplex, n: i64) -> Result<ExactnessCertificate> {
    let h = homology(c, n)?;
    let (pi0, pi1) = h.homotopy_invariants();
    Ok(ExactnessCertificate { index: n, exact: pi0.is_trivial() && pi1.is_trivial(), pi0, pi1 })
}

/// Morphism of complexes `(F, λ)` with `λ_n: F_{n-1}∘L_n => M_n∘F_n`.
#[derive(Clone, Debug)]
pub struct ComplexMorphism {
    source: TwoChainComplex,
    target: TwoChainComplex,
    /// `F_n` for `n = 0..=top`
    components: Vec<OneMor>,
    /// `λ_n` for `n = 1..=top`
    squares: Vec<TwoMor>,
}

impl ComplexMorphism {
    pub fn new(
        source: TwoChainComplex,
        target: TwoChainComplex,
        components: Vec<OneMor>,
        squares: Vec<TwoMor>,
    ) -> Result<Self> {
        let m = Self::new_unchecked(source, target, components, squares)?;
        m.check().map_err(|v| Error::InvalidMorphism(report(v)))?;
        Ok(m)
    }

    pub fn new_unchecked(
        source: TwoChainComplex,
        target: TwoChainComplex,
        components: Vec<OneMor>,
        squares: Vec<TwoMor>,
    ) -> Result<Self> {
        let top = source.len().max(target.len());
        if components.len() != top + 1 || squares.len() != top {
            return Err(Error::InvalidMorphism(format!("expected {} components and {top} squares", top + 1)));
        }
        let m = ComplexMorphism { source, target, components, squares };
        for n in 0..=top as i64 {
            let f = m.component(n);
            if *f.source() != m.source.object(n) || *f.target() != m.target.object(n) {
                return Err(Error::InvalidMorphism(format!("component {n} has the wrong ends")));
            }
        }
        for n in 1..=top as i64 {
            let l = m.square(n);
            let from = m.component(n - 1).compose(&m.source.map(n))?;
            let to = m.target.map(n).compose(&m.component(n))?;
            if *l.from() != from || *l.to() != to {
                return Err(Error::InvalidMorphism(format!("square {n} has the wrong ends")));
            }
        }
        Ok(m)
    }

    /// Drop degree 0 and re-index, matching [`TwoChainComplex::shift_down`] on both ends.
    pub fn shift_down(&self) -> Result<ComplexMorphism> {
        let (Some(source), Some(target)) = (self.source.shift_down(), self.target.shift_down()) else {
            return Err(Error::InvalidMorphism("nothing above degree 0".into()));
        };
        ComplexMorphism::new_unchecked(source, target, self.components[1..].to_vec(), self.squares[1..].to_vec())
    }

    /// Identity, with identity squares.
    pub fn identity(c: &TwoChainComplex) -> Self {
        let components: Vec<OneMor> = (0..=c.len() as i64).map(|n| OneMor::identity(&c.object(n))).collect();
        let squares = (1..=c.len() as i64).map(|n| TwoMor::identity(&c.map(n))).collect();
        ComplexMorphism { source: c.clone(), target: c.clone(), components, squares }
    }

    pub fn zero(source: &TwoChainComplex, target: &TwoChainComplex) -> Self {
        let top = source.len().max(target.len()) as i64;
        let components: Vec<OneMor> = (0..=top).map(|n| OneMor::zero(&source.object(n), &target.object(n))).collect();
        let squares = (1..=top)
            .map(|n| {
                let z = OneMor::zero(&source.object(n), &target.object(n - 1));
                TwoMor::identity(&z)
            })
            .collect();
        ComplexMorphism { source: source.clone(), target: target.clone(), components, squares }
    }

    pub fn source(&self) -> &TwoChainComplex {
        &self.source
    }

    pub fn target(&self) -> &TwoChainComplex {
        &self.target
    }

    pub fn top(&self) -> usize {
        self.components.len() - 1
    }

    pub fn component(&self, n: i64) -> OneMor {
        if n >= 0 && (n as usize) < self.components.len() {
            self.components[n as usize].clone()
        } else {
            OneMor::zero(&self.source.object(n), &self.target.object(n))
        }
    }

    /// `λ_n: F_{n-1}∘L_n => M_n∘F_n`
    pub fn square(&self, n: i64) -> TwoMor {
        if n >= 1 && n as usize <= self.squares.len() {
            self.squares[n as usize - 1].clone()
        } else {
            let z = OneMor::zero(&self.source.object(n), &self.target.object(n - 1));
            TwoMor::identity(&z)
        }
    }

    pub fn components(&self) -> &[OneMor] {
        &self.components
    }

    pub fn squares(&self) -> &[TwoMor] {
        &self.squares
    }

    /// Chain conditions, square identities and
    /// `F_{n-2}∘α_n = λ_{n-1}∘L_n + M_{n-1}∘λ_n + β_n∘F_n`.
    pub fn check(&self) -> std::result::Result<Certificate, Vec<Violation>> {
        let mut c = Checker::default();
        let top = self.top() as i64;
        for n in 0..=top {
            c.one_mor(n, &format!("F_{n}"), &self.component(n));
        }
        for n in 1..=top {
            c.two_mor(n, &format!("λ_{n}"), &self.square(n));
        }
        for n in 2..=top + 1 {
            let lhs = self.component(n - 2).f1().compose(self.source.null(n).h()).expect("shapes");
            let rhs = self
                .square(n - 1)
                .h()
                .compose(self.source.map(n).f0())
                .and_then(|x| x.add(&self.target.map(n - 1).f1().compose(self.square(n).h())?))
                .and_then(|x| x.add(&self.target.null(n).h().compose(self.component(n).f0())?))
                .expect("shapes");
            c.equal(n, &format!("compatibility of λ with α and β at {n}"), &lhs, &rhs);
        }
        c.finish()
    }

    /// Restriction to the source truncated at `top`.
    pub fn restrict(&self, top: usize) -> Result<ComplexMorphism> {
        let source = self.source.truncate(top);
        let full = source.len().max(self.target.len()) as i64;
        let components = (0..=full)
            .map(|n| {
                if n as usize <= top {
                    self.component(n)
                } else {
                    OneMor::zero(&source.object(n), &self.target.object(n))
                }
            })
            .collect();
        let squares = (1..=full)
            .map(|n| {
                if n as usize <= top {
                    self.square(n)
                } else {
                    TwoMor::identity(&OneMor::zero(&source.object(n), &self.target.object(n - 1)))
                }
            })
            .collect();
        ComplexMorphism::new(source, self.target.clone(), components, squares)
    }

    /// `self ∘ inner`, with squares `G_{n-1}∘λ_n + μ_n∘F_n`.
    pub fn compose(&self, inner: &ComplexMorphism) -> Result<ComplexMorphism> {
        if inner.target != self.source {
            return Err(Error::BoundaryMismatch("composite of complex morphisms with mismatched complexes".into()));
        }
        let top = self.top().max(inner.top()) as i64;
        let components =
            (0..=top).map(|n| self.component(n).compose(&inner.component(n))).collect::<Result<Vec<_>>>()?;
        let squares = (1..=top)
            .map(|n| {
                let g = self.component(n - 1);
                let f = inner.component(n);
                let from = g.compose(&inner.component(n - 1))?.compose(&inner.source.map(n))?;
                let to = self.target.map(n).compose(&self.component(n))?.compose(&f)?;
                let h = g.f1().compose(inner.square(n).h())?.add(&self.square(n).h().compose(f.f0())?)?;
                TwoMor::new(from, to, h)
            })
            .collect::<Result<Vec<_>>>()?;
        let src_top = inner.source.len().max(self.target.len());
        let (components, squares) = trim(components, squares, src_top);
        ComplexMorphism::new(inner.source.clone(), self.target.clone(), components, squares)
    }
}

// Drop trailing entries beyond the support of the composite's ends; they are zero.
fn trim(mut components: Vec<OneMor>, mut squares: Vec<TwoMor>, top: usize) -> (Vec<OneMor>, Vec<TwoMor>) {
    components.truncate(top + 1);
    squares.truncate(top);
    (components, squares)
}

/// `H_n(F): H_n(A) -> H_n(B)`.
pub fn induced_homology_morphism(f: &ComplexMorphism, n: i64) -> Result<OneMor> {
    if n < 0 || n as usize > f.top() {
        return Err(Error::IndexOutOfRange { index: n, max: f.top() as i64 });
    }
    let ha = homology_data(&f.source, n)?;
    let hb = homology_data(&f.target, n)?;
    induced_between(f, n, &ha, &hb)
}

pub(crate) fn induced_between(f: &ComplexMorphism, n: i64, ha: &Homology, hb: &Homology) -> Result<OneMor> {
    let (fn_, fm, fp) = (f.component(n), f.component(n - 1), f.component(n + 1));
    let (lam_n, lam_p) = (f.square(n), f.square(n + 1));
    let bad = |_| Error::InvalidMorphism(format!("induced map on homology at {n} is not well defined"));

    // (a, u) ↦ (F_n a, F_{n-1} u - λ_n a)
    let z_au = AbHom::zero(f.source.object(n - 1).c1().clone(), f.target.object(n).c0().clone());
    let raw0 = fn_.f0().copair(&z_au)?.pair(&lam_n.h().neg().copair(fm.f1())?)?;
    let f0 = hb.cycles.lift(&raw0.compose(&ha.cycles)?).map_err(bad)?;

    // (X, x) ↦ (F_{n+1} X, F_n x + λ_{n+1} X)
    let z_xx = AbHom::zero(f.source.object(n).c1().clone(), f.target.object(n + 1).c0().clone());
    let raw1 = fp.f0().copair(&z_xx)?.pair(&lam_p.h().copair(fn_.f1())?)?;
    let m1 = hb.boundaries.matrix().mul(raw1.matrix()).mul(&ha.section);
    let f1 = AbHom::new(ha.pic.c1().clone(), hb.pic.c1().clone(), m1).map_err(bad)?;
    OneMor::new(ha.pic.clone(), hb.pic.clone(), f1, f0)
        .map_err(|_| Error::InvalidMorphism(format!("induced map on homology at {n} is not a chain map")))
}

/// `(H, τ): F => G` with `τ_n: F_n => M_{n+1}∘H_n + H_{n-1}∘L_n + G_n`.
#[derive(Clone, Debug)]
pub struct ChainHomotopy2 {
    from: ComplexMorphism,
    to: ComplexMorphism,
    /// `H_n: A_n -> B_{n+1}` for `n = 0..=top`
    slides: Vec<OneMor>,
    /// `τ_n` for `n = 0..=top`
    cells: Vec<TwoMor>,
}

impl ChainHomotopy2 {
    pub fn new(from: ComplexMorphism, to: ComplexMorphism, slides: Vec<OneMor>, cells: Vec<TwoMor>) -> Result<Self> {
        let h = Self::new_unchecked(from, to, slides, cells)?;
        h.check().map_err(|v| Error::InvalidMorphism(report(v)))?;
        Ok(h)
    }

    pub fn new_unchecked(
        from: ComplexMorphism,
        to: ComplexMorphism,
        slides: Vec<OneMor>,
        cells: Vec<TwoMor>,
    ) -> Result<Self> {
        if from.source != to.source || from.target != to.target {
            return Err(Error::BoundaryMismatch("a homotopy joins parallel complex morphisms".into()));
        }
        let top = from.top().max(to.top());
        if slides.len() != top + 1 || cells.len() != top + 1 {
            return Err(Error::InvalidMorphism(format!("expected {} slides and cells", top + 1)));
        }
        let h = ChainHomotopy2 { from, to, slides, cells };
        for n in 0..=top as i64 {
            let s = h.slide(n);
            if *s.source() != h.from.source.object(n) || *s.target() != h.from.target.object(n + 1) {
                return Err(Error::InvalidMorphism(format!("slide {n} has the wrong ends")));
            }
            let t = h.cell(n);
            if *t.from() != h.from.component(n) || *t.to() != h.cell_target(n)? {
                return Err(Error::InvalidMorphism(format!("cell {n} has the wrong ends")));
            }
        }
        Ok(h)
    }

    /// `F = G` with zero slides and identity cells.
    pub fn reflexive(f: &ComplexMorphism) -> Self {
        let top = f.top() as i64;
        let slides: Vec<OneMor> =
            (0..=top).map(|n| OneMor::zero(&f.source.object(n), &f.target.object(n + 1))).collect();
        let cells = (0..=top).map(|n| TwoMor::identity(&f.component(n))).collect();
        ChainHomotopy2 { from: f.clone(), to: f.clone(), slides, cells }
    }

    pub fn from(&self) -> &ComplexMorphism {
        &self.from
    }

    pub fn to(&self) -> &ComplexMorphism {
        &self.to
    }

    pub fn slides(&self) -> &[OneMor] {
        &self.slides
    }

    pub fn cells(&self) -> &[TwoMor] {
        &self.cells
    }

    pub fn slide(&self, n: i64) -> OneMor {
        if n >= 0 && (n as usize) < self.slides.len() {
            self.slides[n as usize].clone()
        } else {
            OneMor::zero(&self.from.source.object(n), &self.from.target.object(n + 1))
        }
    }

    pub fn cell(&self, n: i64) -> TwoMor {
        if n >= 0 && (n as usize) < self.cells.len() {
            self.cells[n as usize].clone()
        } else {
            TwoMor::identity(&self.from.component(n))
        }
    }

    /// `M_{n+1}∘H_n + H_{n-1}∘L_n + G_n`
    fn cell_target(&self, n: i64) -> Result<OneMor> {
        let (a, b) = (&self.from.source, &self.from.target);
        b.map(n + 1).compose(&self.slide(n))?.add(&self.slide(n - 1).compose(&a.map(n))?)?.add(&self.to.component(n))
    }

    /// Cell identities and
    /// `λ_n + M_n∘τ_n + β_{n+1}∘H_n = μ_n + τ_{n-1}∘L_n + H_{n-2}∘α_n`.
    pub fn check(&self) -> std::result::Result<Certificate, Vec<Violation>> {
        let mut c = Checker::default();
        let (a, b) = (&self.from.source, &self.from.target);
        let top = self.slides.len() as i64 - 1;
        for n in 0..=top {
            c.one_mor(n, &format!("H_{n}"), &self.slide(n));
            c.two_mor(n, &format!("τ_{n}"), &self.cell(n));
        }
        for n in 1..=top + 1 {
            let lhs = self
                .from
                .square(n)
                .h()
                .add(&b.map(n).f1().compose(self.cell(n).h()).expect("shapes"))
                .and_then(|x| x.add(&b.null(n + 1).h().compose(self.slide(n).f0())?))
                .expect("shapes");
            let rhs = self
                .to
                .square(n)
                .h()
                .add(&self.cell(n - 1).h().compose(a.map(n).f0()).expect("shapes"))
                .and_then(|x| x.add(&self.slide(n - 2).f1().compose(a.null(n).h())?))
                .expect("shapes");
            c.equal(n, &format!("homotopy compatibility at {n}"), &lhs, &rhs);
        }
        c.finish()
    }
}

pub fn check_two_chain_homotopy(h: &ChainHomotopy2) -> std::result::Result<Certificate, Vec<Violation>> {
    h.check()
}

/// The cell `H_n(F) => H_n(G)` sending `(a, u)` to the class of `(H_n a, τ_n a + H_{n-1} u)`.
pub fn homotopy_induces_equivalence(h: &ChainHomotopy2, n: i64) -> Result<TwoMor> {
    h.check().map_err(|v| Error::InvalidMorphism(report(v)))?;
    let top = h.from.top().max(h.to.top());
    if n < 0 || n as usize > top {
        return Err(Error::IndexOutOfRange { index: n, max: top as i64 });
    }
    let ha = homology_data(&h.from.source, n)?;
    let hb = homology_data(&h.from.target, n)?;
    let hf = induced_between(&h.from, n, &ha, &hb)?;
    let hg = induced_between(&h.to, n, &ha, &hb)?;
    let (s_n, s_m) = (h.slide(n), h.slide(n - 1));
    let z = AbHom::zero(h.from.source.object(n - 1).c1().clone(), h.from.target.object(n + 1).c0().clone());
    let raw = s_n.f0().copair(&z)?.pair(&h.cell(n).h().copair(s_m.f1())?)?;
    let comp = hb.boundaries.compose(&raw)?.compose(&ha.cycles)?;
    TwoMor::new(hf, hg, comp)
}
