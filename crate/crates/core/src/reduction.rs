//! Sticks, the reduced Gr-category `(Coker d, Ker d, k)` of a crossed
//! module, reduced Gr-functors and their obstructions.
//!
//! In a reduced category of type `(Π, A, k)` the associativity constraint
//! `(st)r -> s(tr)` is `k(s, t, r)`. A reduced functor `(φ, f, h)` has
//! `F̃_{s,r} = h(s, r)`, and coherence with the two associators reads
//! `∂h = f∘k − φ*k′`.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cohomology::{Cochain, GModule};
use crate::crossed::{CrossedModule, DerivedData};
use crate::error::{Error, Result};
use crate::grcat::{Arrow, GrFunctor, StrictGrCat};
use crate::group::{FiniteGroup, GroupHom};

/// Coset representatives `x_s` of `Im d` with `x_1 = 1`, and arrows
/// `i_x: x_s -> x`, so `d(i_x) = x_s x⁻¹` and `i_{x_s} = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stick {
    reps: Vec<usize>,
    arrows: Vec<usize>,
    coset: Vec<usize>,
}

impl Stick {
    /// A stick from explicit choices, validated against `xm`.
    pub fn from_parts(xm: &CrossedModule, dd: &DerivedData, reps: Vec<usize>, arrows: Vec<usize>) -> Result<Self> {
        let stick = Stick {
            reps,
            arrows,
            coset: dd.coker.projection.images().to_vec(),
        };
        stick.validate(xm, dd)?;
        Ok(stick)
    }

    pub fn validate(&self, xm: &CrossedModule, dd: &DerivedData) -> Result<()> {
        let d = xm.group_d();
        let bad = |msg: String| Err(Error::Input(format!("invalid stick: {msg}")));
        if self.reps.len() != dd.coker.group.order() || self.arrows.len() != d.order() {
            return bad("wrong number of representatives or arrows".into());
        }
        if self.reps[0] != 0 {
            return bad("the identity coset must be represented by 1".into());
        }
        for (s, &x) in self.reps.iter().enumerate() {
            if x >= d.order() || dd.coker.projection.apply(x) != s {
                return bad(format!("{x} does not represent coset {s}"));
            }
            if self.arrows[x] != 0 {
                return bad(format!("i at the representative {x} is not 0"));
            }
        }
        for x in d.elements() {
            let b = self.arrows[x];
            if b >= xm.group_b().order() {
                return bad(format!("i_{x} is not an element of B"));
            }
            let xs = self.reps[self.coset[x]];
            if d.mul(xm.d(b), x) != xs {
                return bad(format!("d(i_{x}) {x} != x_s"));
            }
        }
        Ok(())
    }

    /// `x_s`.
    pub fn rep(&self, s: usize) -> usize {
        self.reps[s]
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    /// `i_x`.
    pub fn arrow(&self, x: usize) -> usize {
        self.arrows[x]
    }

    /// The coset of `x`.
    pub fn coset(&self, x: usize) -> usize {
        self.coset[x]
    }

    /// `h(s, r) = −i_{x_s x_r}`, so `d(h(s, r)) = x_s x_r x_{sr}⁻¹`.
    pub fn h(&self, xm: &CrossedModule, s: usize, r: usize) -> usize {
        let x = xm.group_d().mul(self.reps[s], self.reps[r]);
        xm.group_b().inv(self.arrows[x])
    }
}

/// A stick chosen pseudo-randomly from `seed`: one random member of each
/// non-identity coset, and a random solution of `d(i_x) = x_s x⁻¹` for
/// each `x` that is not a representative.
pub fn choose_stick(xm: &CrossedModule, dd: &DerivedData, seed: u64) -> Result<Stick> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = xm.group_d();
    let proj = &dd.coker.projection;
    let mut reps = vec![0; dd.coker.group.order()];
    for (s, rep) in reps.iter_mut().enumerate().skip(1) {
        let members: Vec<usize> = d.elements().filter(|&x| proj.apply(x) == s).collect();
        *rep = *members.choose(&mut rng).expect("cosets are nonempty");
    }
    let mut arrows = vec![0; d.order()];
    for x in d.elements() {
        let xs = reps[proj.apply(x)];
        if x == xs {
            continue;
        }
        let want = d.mul(xs, d.inv(x));
        let candidates: Vec<usize> = xm.group_b().elements().filter(|&b| xm.d(b) == want).collect();
        arrows[x] = *candidates
            .choose(&mut rng)
            .ok_or_else(|| Error::Internal(format!("x_s x^-1 for x = {x} is not in Im d")))?;
    }
    Stick::from_parts(xm, dd, reps, arrows)
}

/// A reduced Gr-category of type `(π0, π1, k)`.
#[derive(Clone, Debug)]
pub struct ReducedGrCat {
    pub pi0: FiniteGroup,
    pub pi1: GModule,
    pub k: Cochain,
}

impl ReducedGrCat {
    /// Checks that `k` is a normalized 3-cocycle for `π1`.
    pub fn new(pi1: GModule, k: Cochain) -> Result<Self> {
        pi1.check(&k)?;
        if k.degree() != 3 || !pi1.is_cocycle(&k)? {
            return Err(Error::InvalidModule("k is not a 3-cocycle".into()));
        }
        Ok(ReducedGrCat {
            pi0: pi1.group().clone(),
            pi1,
            k,
        })
    }

    /// `Dis Q`, of type `(Q, 0, 0)`.
    pub fn discrete(q: &FiniteGroup) -> Self {
        let pi1 = GModule::zero(q);
        let k = pi1.zero_cochain(3);
        ReducedGrCat {
            pi0: q.clone(),
            pi1,
            k,
        }
    }
}

/// The reduced category of `xm` through `stick`:
/// `k(s,r,t) = θ_{x_s}(h(r,t)) + h(s,rt) − h(sr,t) − h(s,r)`, with values
/// re-indexed into the kernel group of `dd`.
pub fn reduce(xm: &CrossedModule, dd: &DerivedData, stick: &Stick) -> Result<ReducedGrCat> {
    stick.validate(xm, dd)?;
    let b = xm.group_b();
    let q = &dd.coker.group;
    let h = |s: usize, r: usize| stick.h(xm, s, r);
    let k_in_b = |s: usize, r: usize, u: usize| {
        let mut acc = xm.act(stick.rep(s), h(r, u));
        acc = b.mul(acc, h(s, q.mul(r, u)));
        acc = b.mul(acc, b.inv(h(q.mul(s, r), u)));
        b.mul(acc, b.inv(h(s, r)))
    };
    for s in q.elements() {
        for r in q.elements() {
            for u in q.elements() {
                let v = k_in_b(s, r, u);
                if dd.ker_index(v).is_none() {
                    return Err(Error::Internal(format!("k({s},{r},{u}) = {v} is not in Ker d")));
                }
                if (s == 0 || r == 0 || u == 0) && v != 0 {
                    return Err(Error::Internal(format!("k is not normalized at ({s},{r},{u})")));
                }
            }
        }
    }
    let k = dd.phi.cochain_from_fn(3, |t| dd.ker_index(k_in_b(t[0], t[1], t[2])).expect("checked"))?;
    if !dd.phi.is_cocycle(&k)? {
        let dk = dd.phi.coboundary(&k)?;
        let witness = crate::cohomology::tuples(q.order(), 4).zip(dk.values()).find(|(_, &v)| v != 0);
        return Err(Error::Internal(format!("k is not a cocycle: {witness:?}")));
    }
    Ok(ReducedGrCat {
        pi0: q.clone(),
        pi1: dd.phi.clone(),
        k,
    })
}

/// A witness `g` with `∂g = k1 − k2` for the cocycles of two sticks.
pub fn stick_independence(xm: &CrossedModule, dd: &DerivedData, s1: &Stick, s2: &Stick) -> Result<Cochain> {
    let r1 = reduce(xm, dd, s1)?;
    let r2 = reduce(xm, dd, s2)?;
    r1.pi1
        .cohomologous(&r1.k, &r2.k)?
        .ok_or_else(|| Error::Internal("cocycles of two sticks are not cohomologous".into()))
}

/// The action of `π0` on `π1 = Aut(1)` read off the category:
/// `s·u = γ⁻¹(δ(u))` with `γ(u) = u ⊗ id_X` and `δ(u) = id_X ⊗ u` for
/// `X = x_s`. Indexed like `dd.phi`.
pub fn action_from_category(cat: &StrictGrCat, dd: &DerivedData, stick: &Stick) -> Result<Vec<Vec<usize>>> {
    let kernel: Vec<usize> = dd.ker_d.members().to_vec();
    let unit_arrow = |b: usize| {
        cat.find(Arrow {
            source: 0,
            label: b,
            target: 0,
        })
        .ok_or_else(|| Error::InvalidCategory(format!("{b} is not an automorphism of the unit")))
    };
    let mut table = Vec::with_capacity(stick.reps().len());
    for &x in stick.reps() {
        let idx = cat.id(x);
        let gamma: Vec<usize> = kernel
            .iter()
            .map(|&b| Ok(cat.tensor(unit_arrow(b)?, idx)))
            .collect::<Result<_>>()?;
        let mut row = Vec::with_capacity(kernel.len());
        for &b in &kernel {
            let delta = cat.tensor(idx, unit_arrow(b)?);
            let pos = gamma
                .iter()
                .position(|&g| g == delta)
                .ok_or_else(|| Error::InvalidCategory(format!("δ({b}) is not in the image of γ")))?;
            row.push(pos);
        }
        table.push(row);
    }
    Ok(table)
}

/// `(φ, f)`: the maps a Gr-functor induces on `π0` and `π1`.
pub fn reduced_functor_type(
    functor: &GrFunctor,
    src: &DerivedData,
    tgt: &DerivedData,
) -> Result<(GroupHom, GroupHom)> {
    let cat = functor.source();
    let images = |x: usize| -> Result<usize> {
        let fa = functor
            .map_arrow(cat.id(x))
            .ok_or_else(|| Error::InvalidFunctor(format!("identity of {x} has no image")))?;
        Ok(functor.target().arrow(fa).source)
    };
    let phi = src
        .coker
        .section
        .iter()
        .map(|&x| Ok(tgt.coker.projection.apply(images(x)?)))
        .collect::<Result<Vec<_>>>()?;
    let f = src
        .ker_d
        .members()
        .iter()
        .map(|&b| {
            let a = cat
                .find(Arrow {
                    source: 0,
                    label: b,
                    target: 0,
                })
                .expect("kernel elements label automorphisms of the unit");
            let fa = functor
                .map_arrow(a)
                .ok_or_else(|| Error::InvalidFunctor(format!("arrow {a} has no image")))?;
            tgt.ker_index(functor.target().arrow(fa).label)
                .ok_or_else(|| Error::InvalidFunctor("image of Ker d leaves Ker d'".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let phi = GroupHom::new(&src.coker.group, &tgt.coker.group, phi)?;
    let f = GroupHom::new(&src.ker_group, &tgt.ker_group, f)?;
    check_equivariant(&phi, &f, &src.phi, &tgt.phi)?;
    Ok((phi, f))
}

fn check_equivariant(phi: &GroupHom, f: &GroupHom, src: &GModule, tgt: &GModule) -> Result<()> {
    for s in src.group().elements() {
        for a in src.coefficients().elements() {
            if f.apply(src.act(s, a)) != tgt.act(phi.apply(s), f.apply(a)) {
                return Err(Error::ModuleMismatch(format!("f({s}·{a}) != φ({s})·f({a})")));
            }
        }
    }
    Ok(())
}

/// `ξ = φ*k′ − f∘k` and the `Π`-module `A′` (through `φ`) it lives in.
#[derive(Clone, Debug)]
pub struct Obstruction {
    pub module: GModule,
    pub xi: Cochain,
}

impl Obstruction {
    /// Some `g` with `∂g = ξ`, if the class of `ξ` vanishes.
    pub fn solve(&self) -> Result<Option<Cochain>> {
        self.module.solve_coboundary(&self.xi)
    }
}

pub fn functor_obstruction(
    phi: &GroupHom,
    f: &GroupHom,
    src: &ReducedGrCat,
    tgt: &ReducedGrCat,
) -> Result<Obstruction> {
    if phi.source() != &src.pi0 || phi.target() != &tgt.pi0 {
        return Err(Error::ModuleMismatch("φ does not map π0 to π0'".into()));
    }
    if f.source() != src.pi1.coefficients() || f.target() != tgt.pi1.coefficients() {
        return Err(Error::ModuleMismatch("f does not map π1 to π1'".into()));
    }
    check_equivariant(phi, f, &src.pi1, &tgt.pi1)?;
    let module = tgt.pi1.pullback(phi)?;
    let pulled = tgt.k.pullback(phi)?;
    let pushed = src.pi1.push_forward(&src.k, f, &module)?;
    let xi = module.sub(&pulled, &pushed)?;
    if !module.is_cocycle(&xi)? {
        return Err(Error::Internal("obstruction is not a cocycle".into()));
    }
    Ok(Obstruction { module, xi })
}

/// A reduced Gr-functor `(φ, f, h)`.
#[derive(Clone, Debug)]
pub struct ReducedGrFunctor {
    pub phi: GroupHom,
    pub f: GroupHom,
    pub h: Cochain,
    pub source: ReducedGrCat,
    pub target: ReducedGrCat,
    module: GModule,
}

/// The functor `(φ, f, −g)` for a solution `∂g = ξ`.
pub fn realize_functor(
    phi: &GroupHom,
    f: &GroupHom,
    g: &Cochain,
    src: &ReducedGrCat,
    tgt: &ReducedGrCat,
) -> Result<ReducedGrFunctor> {
    let obs = functor_obstruction(phi, f, src, tgt)?;
    if obs.module.coboundary(g)? != obs.xi {
        return Err(Error::InvalidFunctor("∂g differs from the obstruction".into()));
    }
    let functor = ReducedGrFunctor {
        phi: phi.clone(),
        f: f.clone(),
        h: obs.module.neg(g),
        source: src.clone(),
        target: tgt.clone(),
        module: obs.module,
    };
    functor.check_coherence()?;
    Ok(functor)
}

impl ReducedGrFunctor {
    /// Evaluates both sides of the associativity coherence square on every
    /// triple, as sums of automorphism labels of `F(srt)`:
    /// `f(k(s,r,t)) + h(sr,t) + h(s,r)` against
    /// `h(s,rt) + φ(s)·h(r,t) + k′(φs,φr,φt)`.
    pub fn check_coherence(&self) -> Result<()> {
        let q = &self.source.pi0;
        let a = self.module.coefficients();
        let h = |s: usize, r: usize| self.h.get(&[s, r]);
        for s in q.elements() {
            for r in q.elements() {
                if s == 0 || r == 0 {
                    if h(s, r) != 0 {
                        return Err(Error::InvalidFunctor("h is not normalized".into()));
                    }
                    continue;
                }
                for t in q.elements().skip(1) {
                    let left = a.mul(
                        a.mul(self.f.apply(self.source.k.get(&[s, r, t])), h(q.mul(s, r), t)),
                        h(s, r),
                    );
                    let (ps, pr, pt) = (self.phi.apply(s), self.phi.apply(r), self.phi.apply(t));
                    let right = a.mul(
                        a.mul(h(s, q.mul(r, t)), self.target.pi1.act(ps, h(r, t))),
                        self.target.k.get(&[ps, pr, pt]),
                    );
                    if left != right {
                        return Err(Error::InvalidFunctor(format!(
                            "coherence fails at ({s}, {r}, {t})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// A homotopy `α: Π -> A′` with `h − h′ = ∂α`, when one exists.
    pub fn homotopy(&self, other: &ReducedGrFunctor) -> Result<Option<Cochain>> {
        if self.phi != other.phi || self.f != other.f {
            return Ok(None);
        }
        self.module.cohomologous(&self.h, &other.h)
    }

    pub fn module(&self) -> &GModule {
        &self.module
    }
}

/// All Gr-functors `Dis Q -> S_P` of type `(ψ, 0)` up to homotopy, one per
/// class: a base solution of `∂g = ψ*k` shifted by each class of `H²`.
pub fn functors_from_discrete(psi: &GroupHom, target: &ReducedGrCat) -> Result<Vec<ReducedGrFunctor>> {
    let src = ReducedGrCat::discrete(psi.source());
    let zero = GroupHom::trivial(src.pi1.coefficients(), target.pi1.coefficients());
    let obs = functor_obstruction(psi, &zero, &src, target)?;
    let Some(base) = obs.solve()? else {
        return Ok(Vec::new());
    };
    obs.module
        .h2_representatives()?
        .iter()
        .map(|z| realize_functor(psi, &zero, &obs.module.add(&base, z)?, &src, target))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Subgroup;

    fn z(n: usize) -> FiniteGroup {
        FiniteGroup::cyclic(n)
    }

    fn inversion(invert: bool) -> CrossedModule {
        let theta = (0..4)
            .map(|x| if invert && x % 2 == 1 { vec![0, 3, 2, 1] } else { vec![0, 1, 2, 3] })
            .collect();
        CrossedModule::new(&z(4), &z(4), vec![0, 2, 0, 2], theta).unwrap()
    }

    #[test]
    fn stick_examples() {
        let xm = inversion(true);
        let dd = xm.derive().unwrap();
        for seed in 0..8 {
            let st = choose_stick(&xm, &dd, seed).unwrap();
            assert_eq!(st.rep(0), 0);
            assert_eq!(st.arrow(0), 0);
            assert!([1, 3].contains(&st.arrow(2)));
        }
        let onto = CrossedModule::identity_module(&FiniteGroup::symmetric(3)).unwrap();
        let dd = onto.derive().unwrap();
        let st = choose_stick(&onto, &dd, 3).unwrap();
        assert_eq!(st.reps(), &[0]);
    }

    #[test]
    fn inversion_cocycle_by_hand() {
        let xm = inversion(true);
        let dd = xm.derive().unwrap();
        // reps {0, 1}, i_2 = 3, so h(1, 1) = -i_2 = 1
        let stick = Stick::from_parts(&xm, &dd, vec![0, 1], vec![0, 0, 3, 3]).unwrap();
        assert_eq!(stick.h(&xm, 1, 1), 1);
        let red = reduce(&xm, &dd, &stick).unwrap();
        let two = dd.ker_index(2).unwrap();
        assert_eq!(red.k.get(&[1, 1, 1]), two);
        assert!(red.pi1.solve_coboundary(&red.k).unwrap().is_none());

        let other = Stick::from_parts(&xm, &dd, vec![0, 1], vec![0, 0, 1, 1]).unwrap();
        let g = stick_independence(&xm, &dd, &stick, &other).unwrap();
        let r2 = reduce(&xm, &dd, &other).unwrap();
        assert_eq!(red.pi1.coboundary(&g).unwrap(), red.pi1.sub(&red.k, &r2.k).unwrap());
    }

    #[test]
    fn trivial_action_gives_trivial_class() {
        let xm = inversion(false);
        let dd = xm.derive().unwrap();
        let stick = Stick::from_parts(&xm, &dd, vec![0, 1], vec![0, 0, 3, 3]).unwrap();
        let red = reduce(&xm, &dd, &stick).unwrap();
        assert!(red.k.is_zero());
    }

    #[test]
    fn split_inclusion_has_zero_k() {
        let s3 = FiniteGroup::symmetric(3);
        let a3 = Subgroup::generated_by(&s3, &[3]);
        let xm = CrossedModule::from_normal_subgroup(&s3, &a3).unwrap();
        let dd = xm.derive().unwrap();
        for seed in 0..4 {
            let st = choose_stick(&xm, &dd, seed).unwrap();
            let red = reduce(&xm, &dd, &st).unwrap();
            // Ker d = 0, so every cocycle vanishes
            assert!(red.k.is_zero());
        }
    }

    #[test]
    fn strict_collapse_of_the_action() {
        let q8 = FiniteGroup::quaternion();
        let cases = [
            inversion(true),
            CrossedModule::automorphism_module(&q8, 16).unwrap(),
            CrossedModule::module(&z(4), &z(2), vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]]).unwrap(),
        ];
        for xm in &cases {
            let dd = xm.derive().unwrap();
            let cat = StrictGrCat::from_crossed_module(xm).unwrap();
            let st = choose_stick(xm, &dd, 11).unwrap();
            assert_eq!(action_from_category(&cat, &dd, &st).unwrap(), dd.phi.action_table());
        }
    }

    #[test]
    fn obstruction_of_the_inversion_module() {
        let xm = inversion(true);
        let dd = xm.derive().unwrap();
        let stick = choose_stick(&xm, &dd, 0).unwrap();
        let red = reduce(&xm, &dd, &stick).unwrap();
        let psi = GroupHom::identity(&dd.coker.group);
        let dis = ReducedGrCat::discrete(&dd.coker.group);
        let zero = GroupHom::trivial(dis.pi1.coefficients(), red.pi1.coefficients());
        let obs = functor_obstruction(&psi, &zero, &dis, &red).unwrap();
        assert_eq!(obs.xi.get(&[1, 1, 1]), dd.ker_index(2).unwrap());
        assert!(obs.solve().unwrap().is_none());
        assert!(functors_from_discrete(&psi, &red).unwrap().is_empty());
    }

    #[test]
    fn realizations_over_z2() {
        let xm = CrossedModule::new(&z(2), &FiniteGroup::trivial(), vec![0, 0], vec![vec![0, 1]]).unwrap();
        let dd = xm.derive().unwrap();
        let red = reduce(&xm, &dd, &choose_stick(&xm, &dd, 0).unwrap()).unwrap();
        let psi = GroupHom::trivial(&z(2), &dd.coker.group);
        let fs = functors_from_discrete(&psi, &red).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(fs[0].homotopy(&fs[1]).unwrap().is_none());
        assert!(fs[0].homotopy(&fs[0]).unwrap().is_some());
        let dis = ReducedGrCat::discrete(&z(2));
        let zero = GroupHom::trivial(dis.pi1.coefficients(), red.pi1.coefficients());
        let two = fs[0].module().cochain_from_fn(2, |_| 1).unwrap();
        assert!(realize_functor(&psi, &zero, &two, &dis, &red).is_ok());
    }

    #[test]
    fn identity_functor_type() {
        let xm = inversion(true);
        let dd = xm.derive().unwrap();
        let f = GrFunctor::from_morphism(&crate::crossed::XModMorphism::identity(&xm), 0).unwrap();
        let (phi, g) = reduced_functor_type(&f, &dd, &dd).unwrap();
        assert_eq!(phi, GroupHom::identity(&dd.coker.group));
        assert_eq!(g, GroupHom::identity(&dd.ker_group));
        let red = reduce(&xm, &dd, &choose_stick(&xm, &dd, 5).unwrap()).unwrap();
        let obs = functor_obstruction(&phi, &g, &red, &red).unwrap();
        assert!(obs.xi.is_zero());
    }
}
