//! Projective resolutions of symmetric 2-groups, comparison lifts between them and the
//! horseshoe construction.
//!
//! A resolution of `M` is stored augmented: `A_0 = M`, `A_{j+1} = P_j`, `L_1` is the
//! augmentation. Every `L_{j+1}` with `j >= 1` is `e_j ∘ c_{j+1}`, where `e_j` is the
//! structural map of `K_j = Ker(L_j, α_j)` and `c_{j+1}: P_j -> K_j` a free cover; the
//! kernels and covers are kept for the lifting arguments.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complexes::{is_relative_2exact_at, ChainHomotopy2, ComplexMorphism, ExactnessCertificate, TwoChainComplex};
use crate::error::{Error, Result};
use crate::pic2::{biproduct, OneMor, Pic2, TwoMor};
use crate::relkc::{can, relative_kernel, RelKernelResult};
use crate::zlin::{projections, AbHom, FgAbPresentation, IntMatrix};

/// `disc(Z^k)` covering `m` with `k` the number of generators of `m.c0`.
pub fn free_cover(m: &Pic2) -> (Pic2, OneMor) {
    let k = m.c0().gens();
    cover_with_matrix(m, IntMatrix::identity(k))
}

fn cover_with_matrix(m: &Pic2, f0: IntMatrix) -> (Pic2, OneMor) {
    let p = Pic2::discrete(FgAbPresentation::free(f0.cols()));
    let f1 = AbHom::zero(p.c1().clone(), m.c1().clone());
    let f0 = AbHom::new(p.c0().clone(), m.c0().clone(), f0).expect("free source");
    let f = OneMor::new(p.clone(), m.clone(), f1, f0).expect("discrete source");
    (p, f)
}

/// Free cover whose generators are shuffled and padded with up to two redundant ones.
fn seeded_cover(m: &Pic2, rng: &mut ChaCha8Rng) -> (Pic2, OneMor) {
    let k = m.c0().gens();
    let mut cols: Vec<Vec<BigInt>> = (0..k).map(|i| (0..k).map(|r| BigInt::from(u8::from(r == i))).collect()).collect();
    cols.shuffle(rng);
    if k > 0 {
        for _ in 0..rng.gen_range(0..=2) {
            cols.push((0..k).map(|_| BigInt::from(rng.gen_range(-2..=2))).collect());
        }
    }
    cover_with_matrix(m, IntMatrix::from_cols(k, &cols))
}

/// Lift `g: P -> B` through an essentially surjective `f: A -> B`.
///
/// `P` must be discrete on a free group. Returns `g'` with a cell `f∘g' => g`. Each
/// generator is first lifted along `f0` alone; only when that fails is a connecting
/// element of `B1` used.
pub fn lift_through_ess_surjective(p: &Pic2, f: &OneMor, g: &OneMor) -> Result<(OneMor, TwoMor)> {
    if !p.is_projective_shape() || p.c0().relations().rows() != 0 {
        return Err(Error::IllFormed("lifting needs a discrete 2-group on a free group".into()));
    }
    if g.source() != p || g.target() != f.target() {
        return Err(Error::BoundaryMismatch("lift data do not share ends".into()));
    }
    let (a, b) = (f.source(), f.target());
    let both = f.f0().copair(b.d())?;
    let (pa, pb) = projections(a.c0(), b.c1());
    let mut xs = Vec::new();
    let mut ms = Vec::new();
    let g0 = g.f0().matrix();
    for j in 0..p.c0().gens() {
        let target = g0.col(j);
        match f.f0().solve(&target) {
            Ok(x) => {
                xs.push(x);
                ms.push(vec![BigInt::from(0); b.c1().gens()]);
            }
            Err(Error::NoSolution) => {
                let s = both.solve(&target).map_err(|_| {
                    Error::NotEssentiallySurjective(format!("generator {j} has no preimage up to isomorphism"))
                })?;
                xs.push(pa.apply(&s));
                ms.push(pb.apply(&s));
            }
            Err(e) => return Err(e),
        }
    }
    let g0p = AbHom::new(p.c0().clone(), a.c0().clone(), IntMatrix::from_cols(a.c0().gens(), &xs))?;
    let h = AbHom::new(p.c0().clone(), b.c1().clone(), IntMatrix::from_cols(b.c1().gens(), &ms))?;
    let gp = OneMor::new(p.clone(), a.clone(), AbHom::zero(p.c1().clone(), a.c1().clone()), g0p)?;
    let cell = TwoMor::new(f.compose(&gp)?, g.clone(), h)?;
    Ok((gp, cell))
}

#[derive(Clone, Debug)]
pub struct Resolution {
    target: Pic2,
    augmented: TwoChainComplex,
    /// `kernels[j - 1] = K_j` for `j = 1..=len + 1`
    kernels: Vec<RelKernelResult>,
    /// `covers[j - 1] = c_j: A_j -> K_{j-1}`; `c_1` is the augmentation
    covers: Vec<OneMor>,
    certificates: Vec<ExactnessCertificate>,
}

impl Resolution {
    pub fn target(&self) -> &Pic2 {
        &self.target
    }

    /// Highest projective degree `N`.
    pub fn len(&self) -> usize {
        self.augmented.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `P_n`
    pub fn projective(&self, n: usize) -> Pic2 {
        self.augmented.object(n as i64 + 1)
    }

    /// `M <- P_0 <- P_1 <- ...`
    pub fn augmented(&self) -> &TwoChainComplex {
        &self.augmented
    }

    /// `P_0 <- P_1 <- ... <- P_N`
    pub fn complex(&self) -> TwoChainComplex {
        self.augmented.shift_down().expect("a resolution has P_0")
    }

    pub fn augmentation(&self) -> OneMor {
        self.augmented.map(1)
    }

    /// `augmentation ∘ L_1 => 0`
    pub fn aug_null(&self) -> TwoMor {
        self.augmented.null(2)
    }

    /// Exactness of the augmented complex at every point `0..=N+1`.
    pub fn certificates(&self) -> &[ExactnessCertificate] {
        &self.certificates
    }

    /// Exact at each point that the construction controls (`0..N`), or everywhere once the
    /// kernels have become contractible.
    pub fn is_certified(&self) -> bool {
        self.is_stabilized() || self.certificates[..self.len()].iter().all(|c| c.exact)
    }

    pub fn is_stabilized(&self) -> bool {
        self.certificates.iter().all(|c| c.exact)
    }

    pub fn kernel(&self, j: usize) -> &RelKernelResult {
        &self.kernels[j - 1]
    }

    pub fn cover(&self, j: usize) -> &OneMor {
        &self.covers[j - 1]
    }
}

/// Assemble a resolution from an augmentation and a rule producing covers of kernels.
fn assemble(
    target: &Pic2,
    len: usize,
    aug: OneMor,
    stabilize: bool,
    mut cover: impl FnMut(usize, &RelKernelResult) -> Result<OneMor>,
) -> Result<Resolution> {
    let mut objects = vec![target.clone(), aug.source().clone()];
    let mut maps = vec![aug.clone()];
    let mut nulls: Vec<TwoMor> = Vec::new();
    let mut kernels = Vec::new();
    let mut covers = vec![aug];
    let mut stable = false;
    for j in 1..=len + 1 {
        let partial = TwoChainComplex::new_unchecked(objects.clone(), maps.clone(), nulls.clone())?;
        let kr = relative_kernel(&partial.map(j as i64), &partial.map(j as i64 - 1), &partial.null(j as i64))?;
        if j == len + 1 {
            kernels.push(kr);
            break;
        }
        stable = stable || (stabilize && kr.k.is_contractible());
        let c = if stable { OneMor::zero(&Pic2::zero(), &kr.k) } else { cover(j, &kr)? };
        let l = kr.e.compose(&c)?;
        let alpha = kr.eps.pre_whisker(&c)?;
        objects.push(c.source().clone());
        maps.push(l);
        nulls.push(alpha);
        covers.push(c);
        kernels.push(kr);
    }
    let augmented = TwoChainComplex::new(objects, maps, nulls)?;
    let certificates =
        (0..=augmented.len() as i64).map(|n| is_relative_2exact_at(&augmented, n)).collect::<Result<Vec<_>>>()?;
    Ok(Resolution { target: target.clone(), augmented, kernels, covers, certificates })
}

/// Resolution `P_0..P_len` by iterated free covers of relative kernels.
pub fn projective_resolution(m: &Pic2, len: usize) -> Resolution {
    let (_, aug) = free_cover(m);
    assemble(m, len, aug, true, |_, kr| Ok(free_cover(&kr.k).1)).expect("free covers always resolve")
}

/// Same construction with covers whose generators are permuted and padded according to
/// `seed`.
pub fn projective_resolution_seeded(m: &Pic2, len: usize, seed: u64) -> Resolution {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (_, aug) = seeded_cover(m, &mut rng);
    assemble(m, len, aug, true, |_, kr| Ok(seeded_cover(&kr.k, &mut rng).1)).expect("free covers always resolve")
}

/// Lift `h: M -> N` to a morphism of augmented resolutions with `Φ_0 = h`.
///
/// The source is used up to degree `min(len(P), len(Q)) + 1` (augmented indexing).
pub fn comparison_lift(h: &OneMor, pres: &Resolution, qres: &Resolution) -> Result<ComplexMorphism> {
    if h.source() != pres.target() || h.target() != qres.target() {
        return Err(Error::BoundaryMismatch("the map does not join the resolved 2-groups".into()));
    }
    let top = pres.augmented.len().min(qres.augmented.len());
    let a = pres.augmented.truncate(top);
    let b = &qres.augmented;
    let mut phi = vec![h.clone()];
    let mut lambda: Vec<TwoMor> = Vec::new();
    for j in 1..=top {
        let ji = j as i64;
        let x = phi[j - 1].compose(&a.map(ji))?;
        let (next, square) = if j == 1 {
            let (next, cell) = lift_through_ess_surjective(&a.object(1), &b.map(1), &x)?;
            (next, cell.inverse())
        } else {
            let prev = &lambda[j - 2];
            let null_h = prev.h().compose(a.map(ji).f0())?.neg().add(&phi[j - 2].f1().compose(a.null(ji).h())?)?;
            let mx = b.map(ji - 1).compose(&x)?;
            let null = TwoMor::new(mx.clone(), OneMor::zero(mx.source(), mx.target()), null_h)?;
            let kr = qres.kernel(j - 1);
            let (xp, _) = kr.factor(&x, &null)?;
            let (next, eps_bar) = lift_through_ess_surjective(&a.object(ji), qres.cover(j), &xp)?;
            let to = b.map(ji).compose(&next)?;
            let hh = kr.e.f1().compose(eps_bar.h())?.neg();
            (next, TwoMor::new(x, to, hh)?)
        };
        phi.push(next);
        lambda.push(square);
    }
    pad_and_build(a, b.clone(), phi, lambda)
}

fn pad_and_build(
    a: TwoChainComplex,
    b: TwoChainComplex,
    mut components: Vec<OneMor>,
    mut squares: Vec<TwoMor>,
) -> Result<ComplexMorphism> {
    let full = a.len().max(b.len());
    while components.len() <= full {
        let n = components.len() as i64;
        components.push(OneMor::zero(&a.object(n), &b.object(n)));
    }
    while squares.len() < full {
        let n = squares.len() as i64 + 1;
        let from = components[n as usize - 1].compose(&a.map(n))?;
        let to = b.map(n).compose(&components[n as usize])?;
        squares.push(TwoMor::canonical(&from, &to)?);
    }
    ComplexMorphism::new(a, b, components, squares)
}

/// A 2-chain homotopy between two lifts `f`, `g` of the same map into `qres`.
///
/// The source is restricted to augmented degrees `<= len(Q)`, where every slide has a
/// target in the resolution.
pub fn comparison_homotopy(f: &ComplexMorphism, g: &ComplexMorphism, qres: &Resolution) -> Result<ChainHomotopy2> {
    if f.source() != g.source() || f.target() != g.target() || *f.target() != qres.augmented {
        return Err(Error::BoundaryMismatch("lifts must be parallel and land in the given resolution".into()));
    }
    if f.component(0) != g.component(0) {
        return Err(Error::InvalidMorphism("lifts of different maps".into()));
    }
    let top = f.source().len().min(qres.augmented.len() - 1);
    let f = f.restrict(top)?;
    let g = g.restrict(top)?;
    let (a, b) = (f.source().clone(), f.target().clone());
    let mut slides = vec![OneMor::zero(&a.object(0), &b.object(1))];
    let mut cells = vec![TwoMor::identity(&f.component(0))];
    for j in 1..=top {
        let ji = j as i64;
        let s_prev = &slides[j - 1];
        let d = f.component(ji).sub(&g.component(ji))?.sub(&s_prev.compose(&a.map(ji))?)?;
        let s_pp = if j >= 2 { slides[j - 2].clone() } else { OneMor::zero(&a.object(ji - 2), &b.object(ji - 1)) };
        let null_h = g
            .square(ji)
            .h()
            .sub(f.square(ji).h())?
            .add(&cells[j - 1].h().compose(a.map(ji).f0())?)?
            .add(&s_pp.f1().compose(a.null(ji).h())?)?;
        let md = b.map(ji).compose(&d)?;
        let null = TwoMor::new(md.clone(), OneMor::zero(md.source(), md.target()), null_h)?;
        let kr = qres.kernel(j);
        let (dp, _) = kr.factor(&d, &null)?;
        let (s, tau2) = lift_through_ess_surjective(&a.object(ji), qres.cover(j + 1), &dp)?;
        let to = b.map(ji + 1).compose(&s)?.add(&s_prev.compose(&a.map(ji))?)?.add(&g.component(ji))?;
        let tau = TwoMor::new(f.component(ji), to, kr.e.f1().compose(tau2.h())?.neg())?;
        slides.push(s);
        cells.push(tau);
    }
    let full = f.top().max(g.top());
    while slides.len() <= full {
        let n = slides.len() as i64;
        slides.push(OneMor::zero(&a.object(n), &b.object(n + 1)));
        cells.push(TwoMor::identity(&f.component(n)));
    }
    ChainHomotopy2::new(f, g, slides, cells)
}

/// `A -F-> B -G-> C` with `φ: G∘F => 0`, `G` essentially surjective and `A` equivalent
/// to `Ker(G)` through `F`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub f: OneMor,
    pub g: OneMor,
    pub phi: TwoMor,
    /// The factorization of `F` through `Ker(G)`; an equivalence.
    pub kernel_factor: OneMor,
}

impl Extension {
    pub fn new(f: OneMor, g: OneMor, phi: TwoMor) -> Result<Self> {
        if !g.classify().essentially_surjective {
            return Err(Error::NotAnExtension("G is not essentially surjective".into()));
        }
        let to_zero = OneMor::zero(g.target(), &Pic2::zero());
        let kr = relative_kernel(&g, &to_zero, &can(&g, &to_zero)?)?;
        let (kernel_factor, _) = kr.factor(&f, &phi)?;
        if !kernel_factor.is_equivalence() {
            return Err(Error::NotAnExtension("F is not equivalent to the kernel of G".into()));
        }
        Ok(Extension { f, g, phi, kernel_factor })
    }

    /// `A -> A × C -> C` with the canonical cell.
    pub fn split(a: &Pic2, c: &Pic2) -> Self {
        let bp = biproduct(a, c);
        let phi = can(&bp.i1, &bp.p2).expect("p2∘i1 = 0");
        Extension::new(bp.i1, bp.p2, phi).expect("split extensions are extensions")
    }
}

/// Output of [`horseshoe`]: a resolution of the middle term with `i: P -> K` and
/// `p: K -> Q` between the augmented complexes.
#[derive(Clone, Debug)]
pub struct Horseshoe {
    pub resolution: Resolution,
    pub i: ComplexMorphism,
    pub p: ComplexMorphism,
}

/// Resolve the middle of an extension from resolutions of its ends, with
/// `K_n = P_n × Q_n`.
pub fn horseshoe(ext: &Extension, pres: &Resolution, qres: &Resolution) -> Result<Horseshoe> {
    if pres.target() != ext.f.source() || qres.target() != ext.g.target() {
        return Err(Error::BoundaryMismatch("resolutions do not match the ends of the extension".into()));
    }
    let len = pres.len().min(qres.len());
    let pa = pres.augmented.truncate(len + 1);
    let qa = qres.augmented.truncate(len + 1);
    let b = ext.f.target().clone();

    let (n0_bar, rho0) = lift_through_ess_surjective(&qa.object(1), &ext.g, &qa.map(1))?;
    let bp0 = biproduct(&pa.object(1), &qa.object(1));
    let m1 = bp0.copair(&ext.f.compose(&pa.map(1))?, &n0_bar)?;
    // λ^p_1: G∘M_1 => N_0∘p2
    let lp1_h = ext.phi.h().compose(pa.map(1).f0())?.compose(bp0.p1.f0())?.add(&rho0.h().compose(bp0.p2.f0())?)?;
    let lambda_p1 = TwoMor::new(ext.g.compose(&m1)?, qa.map(1).compose(&bp0.p2)?, lp1_h)?;

    let mut incs = vec![ext.f.clone(), bp0.i1.clone()];
    let mut projs = vec![ext.g.clone(), bp0.p2.clone()];
    let resolution = assemble(&b, len, m1, false, |j, kr| {
        let ji = j as i64;
        // ī_j: Ker^P_j -> Ker^K_j
        let kp = pres.kernel(j);
        let x = incs[j].compose(&kp.e)?;
        let null_i_h = incs[j - 1].f1().compose(kp.eps.h())?;
        let mx = kr.f().compose(&x)?;
        let null_i = TwoMor::new(mx.clone(), OneMor::zero(mx.source(), mx.target()), null_i_h)?;
        let (i_bar, _) = kr.factor(&x, &null_i)?;

        // p̄_j: Ker^K_j -> Ker^Q_j
        let kq = qres.kernel(j);
        let y = projs[j].compose(&kr.e)?;
        let lp_h = if j == 1 {
            lambda_p1.h().compose(kr.e.f0())?
        } else {
            AbHom::zero(kr.k.c0().clone(), qa.object(ji - 1).c1().clone())
        };
        let null_p_h = lp_h.neg().add(&projs[j - 1].f1().compose(kr.eps.h())?)?;
        let my = qa.map(ji).compose(&y)?;
        let null_p = TwoMor::new(my.clone(), OneMor::zero(my.source(), my.target()), null_p_h)?;
        let (p_bar, _) = kq.factor(&y, &null_p)?;

        let (n_bar, _) = lift_through_ess_surjective(&qa.object(ji + 1), &p_bar, qres.cover(j + 1))?;
        let bp = biproduct(&pa.object(ji + 1), &qa.object(ji + 1));
        let c = bp.copair(&i_bar.compose(pres.cover(j + 1))?, &n_bar)?;
        incs.push(bp.i1.clone());
        projs.push(bp.p2.clone());
        Ok(c)
    })?;
    let ka = resolution.augmented.clone();
    let i_squares = (1..=ka.len() as i64)
        .map(|n| TwoMor::canonical(&incs[n as usize - 1].compose(&pa.map(n))?, &ka.map(n).compose(&incs[n as usize])?))
        .collect::<Result<Vec<_>>>()?;
    let mut p_squares = vec![lambda_p1];
    for n in 2..=ka.len() as i64 {
        p_squares.push(TwoMor::canonical(
            &projs[n as usize - 1].compose(&ka.map(n))?,
            &qa.map(n).compose(&projs[n as usize])?,
        )?);
    }
    let i = ComplexMorphism::new(pa, ka.clone(), incs, i_squares)?;
    let p = ComplexMorphism::new(ka, qa, projs, p_squares)?;
    Ok(Horseshoe { resolution, i, p })
}
