//! Extensions `0 -> B -> E -> Q -> 1` of the type of a crossed module, factor
//! sets and crossed products, and their classification.
//!
//! A crossed product `[B, φ, f, Q]` stores `(b, u)` at index `b·|Q| + u`, with
//! `(b, u) + (b′, u′) = (b + φ(u)b′ + f(u, u′), uu′)`.

use std::fmt;

use crate::cohomology::{Cochain, GModule};
use crate::crossed::{CrossedModule, DerivedData};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom};
use crate::limits::{saturating_pow, Limits};
use crate::reduction::{choose_stick, functors_from_discrete, reduce, ReducedGrFunctor, Stick};

/// An extension of `Q` by `B` of type `B -> D`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub xm: CrossedModule,
    pub e: FiniteGroup,
    pub q: FiniteGroup,
    pub j: GroupHom,
    pub p: GroupHom,
    pub eps: GroupHom,
}

/// Conditions an extension can violate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtensionCheck {
    Shape,
    Injective,
    Surjective,
    Exactness,
    Boundary,
    Action,
    InducedMap,
}

#[derive(Clone, Debug, Default)]
pub struct ExtensionReport {
    pub violations: Vec<(ExtensionCheck, String)>,
}

impl ExtensionReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, check: ExtensionCheck) -> bool {
        self.violations.iter().any(|(c, _)| *c == check)
    }

    fn push(&mut self, check: ExtensionCheck, msg: String) {
        self.violations.push((check, msg));
    }
}

impl fmt::Display for ExtensionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        let msgs: Vec<&str> = self.violations.iter().map(|(_, m)| m.as_str()).collect();
        write!(f, "{}", msgs.join("; "))
    }
}

impl Extension {
    /// Exactness, `(B, E, j, conjugation)` being a crossed module, `(id, ε)`
    /// being a morphism of crossed modules, and `q∘ε` factoring through `p`.
    pub fn validate(&self, dd: &DerivedData) -> ExtensionReport {
        let mut r = ExtensionReport::default();
        let (b, e, q, d) = (self.xm.group_b(), &self.e, &self.q, self.xm.group_d());
        if self.j.source() != b || self.j.target() != e || self.p.source() != e || self.p.target() != q
            || self.eps.source() != e || self.eps.target() != d
        {
            r.push(ExtensionCheck::Shape, "maps do not fit B -> E -> Q and E -> D".into());
            return r;
        }
        if !self.j.is_injective() {
            r.push(ExtensionCheck::Injective, "j is not injective".into());
        }
        let image = self.p.image();
        if let Some(u) = q.elements().find(|&u| !image.contains(u)) {
            r.push(ExtensionCheck::Surjective, format!("no element of E maps to {u} in Q"));
        }
        if self.j.image().members() != self.p.kernel().members() {
            r.push(ExtensionCheck::Exactness, "image of j differs from the kernel of p".into());
        }
        if let Some(c) = b.elements().find(|&c| self.eps.apply(self.j.apply(c)) != self.xm.d(c)) {
            r.push(ExtensionCheck::Boundary, format!("ε(j({c})) != d({c})"));
        }
        if r.is_valid() {
            let pos = position_map(&self.j);
            'outer: for x in e.elements() {
                for c in b.elements() {
                    let conj = pos[e.conj(x, self.j.apply(c))];
                    if conj == usize::MAX {
                        r.push(ExtensionCheck::Action, format!("conjugation by {x} leaves j(B)"));
                        break 'outer;
                    }
                    if conj != self.xm.act(self.eps.apply(x), c) {
                        r.push(
                            ExtensionCheck::Action,
                            format!("θ_ε({x})({c}) != j⁻¹({x} j({c}) {x}⁻¹)"),
                        );
                        break 'outer;
                    }
                }
            }
            if let Err(msg) = self.psi_table(dd) {
                r.push(ExtensionCheck::InducedMap, msg);
            }
        }
        r
    }

    fn psi_table(&self, dd: &DerivedData) -> std::result::Result<Vec<usize>, String> {
        let mut psi = vec![usize::MAX; self.q.order()];
        for x in self.e.elements() {
            let u = self.p.apply(x);
            let s = dd.coker.projection.apply(self.eps.apply(x));
            if psi[u] == usize::MAX {
                psi[u] = s;
            } else if psi[u] != s {
                return Err(format!("q(ε(e)) is not constant on the fibre of {u}"));
            }
        }
        if psi.contains(&usize::MAX) {
            return Err("p is not surjective".into());
        }
        Ok(psi)
    }

    /// The unique `ψ` with `q∘ε = ψ∘p`.
    pub fn induced_psi(&self, dd: &DerivedData) -> Result<GroupHom> {
        let table = self.psi_table(dd).map_err(Error::InvalidExtension)?;
        GroupHom::new(&self.q, &dd.coker.group, table)
    }
}

/// `pos[j(b)] = b`, `usize::MAX` off the image.
fn position_map(j: &GroupHom) -> Vec<usize> {
    let mut pos = vec![usize::MAX; j.target().order()];
    for (b, &x) in j.images().iter().enumerate() {
        pos[x] = b;
    }
    pos
}

/// The failing instance of a factor-set condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorSetViolation {
    /// `φ(u)` is not an automorphism.
    Automorphism(usize),
    /// `f(1, u)` or `f(u, 1)` is nonzero.
    Normalization(usize),
    /// `φ(u)[f(v,t)] + f(u,vt) ≠ f(u,v) + f(uv,t)`.
    Cocycle(usize, usize, usize),
    /// `φ(u)φ(v) ≠ μ[f(u,v)] φ(uv)`, witnessed on `b`.
    Action(usize, usize, usize),
}

/// A pair `(φ, f)` with `φ: Q -> Aut B` and `f: Q × Q -> B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSet {
    pub b: FiniteGroup,
    pub q: FiniteGroup,
    /// `phi[u][b] = φ(u)(b)`.
    pub phi: Vec<Vec<usize>>,
    /// `f[u·|Q| + v] = f(u, v)`.
    pub f: Vec<usize>,
}

impl FactorSet {
    pub fn new(b: &FiniteGroup, q: &FiniteGroup, phi: Vec<Vec<usize>>, f: Vec<usize>) -> Result<Self> {
        if phi.len() != q.order() || phi.iter().any(|r| r.len() != b.order() || r.iter().any(|&x| x >= b.order())) {
            return Err(Error::InvalidFactorSet("φ is not a table of maps of B".into()));
        }
        if f.len() != q.order() * q.order() || f.iter().any(|&x| x >= b.order()) {
            return Err(Error::InvalidFactorSet("f is not a table Q × Q -> B".into()));
        }
        Ok(FactorSet {
            b: b.clone(),
            q: q.clone(),
            phi,
            f,
        })
    }

    #[inline]
    pub fn value(&self, u: usize, v: usize) -> usize {
        self.f[u * self.q.order() + v]
    }

    /// The first violated condition, if any.
    pub fn violation(&self) -> Option<FactorSetViolation> {
        let (b, q) = (&self.b, &self.q);
        for u in q.elements() {
            if GroupHom::new(b, b, self.phi[u].clone()).map_or(true, |f| !f.is_bijective()) {
                return Some(FactorSetViolation::Automorphism(u));
            }
            if self.value(0, u) != 0 || self.value(u, 0) != 0 {
                return Some(FactorSetViolation::Normalization(u));
            }
        }
        for u in q.elements() {
            for v in q.elements() {
                let uv = q.mul(u, v);
                let fuv = self.value(u, v);
                for t in q.elements() {
                    let lhs = b.mul(self.phi[u][self.value(v, t)], self.value(u, q.mul(v, t)));
                    let rhs = b.mul(fuv, self.value(uv, t));
                    if lhs != rhs {
                        return Some(FactorSetViolation::Cocycle(u, v, t));
                    }
                }
                for c in b.elements() {
                    let lhs = self.phi[u][self.phi[v][c]];
                    let rhs = b.conj(fuv, self.phi[uv][c]);
                    if lhs != rhs {
                        return Some(FactorSetViolation::Action(u, v, c));
                    }
                }
            }
        }
        None
    }

    pub fn check(&self) -> Result<()> {
        match self.violation() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidFactorSet(format!("{v:?}"))),
        }
    }

    /// The multiplication table of `[B, φ, f, Q]`, whether or not it is a group.
    pub fn product_table(&self) -> Vec<Vec<usize>> {
        let (b, q) = (&self.b, &self.q);
        let nq = q.order();
        let mut rows = Vec::with_capacity(b.order() * nq);
        for b1 in b.elements() {
            for u in q.elements() {
                let mut row = Vec::with_capacity(b.order() * nq);
                for b2 in b.elements() {
                    for v in q.elements() {
                        let c = b.mul(b.mul(b1, self.phi[u][b2]), self.value(u, v));
                        row.push(c * nq + q.mul(u, v));
                    }
                }
                rows.push(row);
            }
        }
        rows
    }
}

/// `[B, φ, f, Q]` with `j(b) = (b, 1)` and `p(b, u) = u`.
#[derive(Clone, Debug)]
pub struct CrossedProduct {
    pub group: FiniteGroup,
    pub j: GroupHom,
    pub p: GroupHom,
}

/// Builds the crossed product of a factor set, rejecting invalid ones with
/// the violated condition.
pub fn crossed_product(fs: &FactorSet) -> Result<CrossedProduct> {
    fs.check()?;
    let nq = fs.q.order();
    let group = FiniteGroup::from_table(format!("[{}, {}]", fs.b.name(), fs.q.name()), fs.product_table())?;
    let j = GroupHom::new(&fs.b, &group, fs.b.elements().map(|b| b * nq).collect())?;
    let p = GroupHom::new(&group, &fs.q, group.elements().map(|x| x % nq).collect())?;
    Ok(CrossedProduct { group, j, p })
}

/// The extension of `Q` by `B` attached to a Gr-functor `Dis Q -> S_P` of
/// type `(ψ, 0)` whose monoidal structure is `h` (values in `Ker d`):
/// `f(u,v) = h(u,v) − i_{x_s x_r}`, `φ(u) = θ_{x_s}`, `ε(b,u) = d(b) x_s` with
/// `s = ψ(u)`, `r = ψ(v)`.
pub fn extension_from_functor(
    xm: &CrossedModule,
    dd: &DerivedData,
    psi: &GroupHom,
    stick: &Stick,
    h: &Cochain,
) -> Result<Extension> {
    let (b, d, q) = (xm.group_b(), xm.group_d(), psi.source());
    if psi.target() != &dd.coker.group {
        return Err(Error::InvalidExtension("ψ does not map into Coker d".into()));
    }
    let module = dd.phi.pullback(psi)?;
    module.check(h)?;
    if h.degree() != 2 {
        return Err(Error::DegreeOutOfRange(h.degree()));
    }
    let nq = q.order();
    let mut f = vec![0; nq * nq];
    for u in q.elements() {
        for v in q.elements() {
            let hv = dd.ker_incl.apply(h.get(&[u, v]));
            f[u * nq + v] = b.mul(hv, stick.h(xm, psi.apply(u), psi.apply(v)));
        }
    }
    let phi = q.elements().map(|u| xm.theta_table()[stick.rep(psi.apply(u))].clone()).collect();
    let fs = FactorSet::new(b, q, phi, f)?;
    if let Some(v) = fs.violation() {
        return Err(Error::InvalidExtension(format!("h does not give a factor set: {v:?}")));
    }
    let cp = crossed_product(&fs)?;
    let eps = GroupHom::new(
        &cp.group,
        d,
        cp.group
            .elements()
            .map(|x| d.mul(xm.d(x / nq), stick.rep(psi.apply(x % nq))))
            .collect(),
    )?;
    let ext = Extension {
        xm: xm.clone(),
        e: cp.group,
        q: q.clone(),
        j: cp.j,
        p: cp.p,
        eps,
    };
    let report = ext.validate(dd);
    if !report.is_valid() {
        return Err(Error::Internal(format!("extension of a functor is invalid: {report}")));
    }
    if &ext.induced_psi(dd)? != psi {
        return Err(Error::Internal("extension of a functor induces another ψ".into()));
    }
    Ok(ext)
}

/// [`extension_from_functor`] for a realized reduced functor.
pub fn extension_of(
    xm: &CrossedModule,
    dd: &DerivedData,
    stick: &Stick,
    functor: &ReducedGrFunctor,
) -> Result<Extension> {
    extension_from_functor(xm, dd, &functor.phi, stick, &functor.h)
}

/// How [`are_equivalent`] searches for `α`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquivalenceSearch {
    /// Solve `∂α = f1 − f2` for `α: Q -> Ker d`.
    KerD,
    /// Try every `α: Q -> B`; slow, for cross-checking.
    FullB,
}

/// An equivalence `η: E1 -> E2` with `η(j1(b) e1_u) = j2(b + α_u) e2_u`.
#[derive(Clone, Debug)]
pub struct Equivalence {
    pub eta: GroupHom,
    pub alpha: Vec<usize>,
}

/// A section `e_u` of `p` with `ε(e_u) = x_{ψ(u)}` for the smallest coset
/// members `x_s`, and `e_1 = 1`.
pub fn normal_section(ext: &Extension, dd: &DerivedData, psi: &GroupHom) -> Result<Vec<usize>> {
    let mut section = vec![usize::MAX; ext.q.order()];
    section[0] = 0;
    for x in ext.e.elements() {
        let u = ext.p.apply(x);
        if section[u] == usize::MAX && ext.eps.apply(x) == dd.coker.section[psi.apply(u)] {
            section[u] = x;
        }
    }
    if let Some(u) = section.iter().position(|&x| x == usize::MAX) {
        return Err(Error::InvalidExtension(format!("no lift of {u} with ε = x_ψ({u})")));
    }
    Ok(section)
}

/// `f(u,v) = j⁻¹(e_u e_v e_{uv}⁻¹)`.
fn section_factor(ext: &Extension, section: &[usize]) -> Result<Vec<usize>> {
    let (e, q) = (&ext.e, &ext.q);
    let pos = position_map(&ext.j);
    let mut f = Vec::with_capacity(q.order() * q.order());
    for u in q.elements() {
        for v in q.elements() {
            let x = e.mul(e.mul(section[u], section[v]), e.inv(section[q.mul(u, v)]));
            match pos[x] {
                usize::MAX => return Err(Error::InvalidExtension("section is not a section of p".into())),
                b => f.push(b),
            }
        }
    }
    Ok(f)
}

/// Decides whether two extensions with the same type, `Q` and `ψ` are
/// equivalent, returning a verified `η` when they are.
pub fn are_equivalent(
    e1: &Extension,
    e2: &Extension,
    dd: &DerivedData,
    search: EquivalenceSearch,
    limits: &Limits,
) -> Result<Option<Equivalence>> {
    if e1.xm != e2.xm || e1.q != e2.q || e1.e.order() != e2.e.order() {
        return Ok(None);
    }
    let psi = e1.induced_psi(dd)?;
    if e2.induced_psi(dd)? != psi {
        return Ok(None);
    }
    let (b, q) = (e1.xm.group_b(), &e1.q);
    let s1 = normal_section(e1, dd, &psi)?;
    let s2 = normal_section(e2, dd, &psi)?;
    match search {
        EquivalenceSearch::KerD => {
            let f1 = section_factor(e1, &s1)?;
            let f2 = section_factor(e2, &s2)?;
            let module = dd.phi.pullback(&psi)?;
            let diff = module.cochain_from_fn(2, |t| {
                let k = t[0] * q.order() + t[1];
                dd.ker_index(b.mul(f1[k], b.inv(f2[k]))).unwrap_or(usize::MAX)
            });
            let Ok(diff) = diff else {
                return Err(Error::Internal("factor sets differ outside Ker d".into()));
            };
            let Some(alpha) = module.solve_coboundary(&diff)? else {
                return Ok(None);
            };
            let alpha: Vec<usize> = q
                .elements()
                .map(|u| if u == 0 { 0 } else { dd.ker_incl.apply(alpha.get(&[u])) })
                .collect();
            let eta = build_eta(e1, e2, &s1, &s2, &alpha)
                .ok_or_else(|| Error::Internal("solution of ∂α = f1 − f2 is not an equivalence".into()))?;
            Ok(Some(Equivalence { eta, alpha }))
        }
        EquivalenceSearch::FullB => {
            let nq = q.order();
            limits.check_budget("equivalence search", saturating_pow(b.order(), nq - 1))?;
            let mut alpha = vec![0; nq];
            loop {
                if let Some(eta) = build_eta(e1, e2, &s1, &s2, &alpha) {
                    return Ok(Some(Equivalence { eta, alpha }));
                }
                if !crate::abelian::increment(&mut alpha[1..], &vec![b.order(); nq - 1]) {
                    return Ok(None);
                }
            }
        }
    }
}

/// `η(j1(b) e1_u) = j2(b + α_u) e2_u`, if it is an isomorphism commuting
/// with `j`, `p` and `ε`.
fn build_eta(e1: &Extension, e2: &Extension, s1: &[usize], s2: &[usize], alpha: &[usize]) -> Option<GroupHom> {
    let b = e1.xm.group_b();
    let pos1 = position_map(&e1.j);
    let mut images = Vec::with_capacity(e1.e.order());
    for x in e1.e.elements() {
        let u = e1.p.apply(x);
        let c = pos1[e1.e.mul(x, e1.e.inv(s1[u]))];
        images.push(e2.e.mul(e2.j.apply(b.mul(c, alpha[u])), s2[u]));
    }
    let eta = GroupHom::new(&e1.e, &e2.e, images).ok()?;
    let ok = eta.is_bijective()
        && b.elements().all(|c| eta.apply(e1.j.apply(c)) == e2.j.apply(c))
        && e1.e.elements().all(|x| {
            e2.p.apply(eta.apply(x)) == e1.p.apply(x) && e2.eps.apply(eta.apply(x)) == e1.eps.apply(x)
        });
    ok.then_some(eta)
}

/// The outcome of [`classify`].
#[derive(Clone, Debug)]
pub struct Classification {
    pub psi: GroupHom,
    /// `ψ*k`, over `Q` with coefficients in `Ker d`.
    pub obstruction: Cochain,
    pub obstruction_vanishes: bool,
    pub h2_order: u64,
    pub module: GModule,
    pub extensions: Vec<Extension>,
}

/// One extension per class: empty when `ψ*k` is not a coboundary, otherwise
/// one per element of `H²(Q, Ker d)`, checked pairwise inequivalent.
pub fn classify(xm: &CrossedModule, psi: &GroupHom, seed: u64, limits: &Limits) -> Result<Classification> {
    let dd = xm.derive()?;
    if psi.target() != &dd.coker.group {
        return Err(Error::Input("ψ does not map into Coker d".into()));
    }
    let stick = choose_stick(xm, &dd, seed)?;
    let red = reduce(xm, &dd, &stick)?;
    let module = dd.phi.pullback(psi)?;
    let obstruction = red.k.pullback(psi)?;
    let obstruction_vanishes = module.solve_coboundary(&obstruction)?.is_some();
    let h2_order = module.h_order(2)?;
    let functors = functors_from_discrete(psi, &red)?;
    if obstruction_vanishes != !functors.is_empty() {
        return Err(Error::Internal("obstruction and realization disagree".into()));
    }
    let extensions = functors
        .iter()
        .map(|f| extension_of(xm, &dd, &stick, f))
        .collect::<Result<Vec<_>>>()?;
    for (i, a) in extensions.iter().enumerate() {
        for c in &extensions[..i] {
            if are_equivalent(a, c, &dd, EquivalenceSearch::KerD, limits)?.is_some() {
                return Err(Error::Internal("two classes gave equivalent extensions".into()));
            }
        }
    }
    Ok(Classification {
        psi: psi.clone(),
        obstruction,
        obstruction_vanishes,
        h2_order,
        module,
        extensions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::is_isomorphic;

    fn z(n: usize) -> FiniteGroup {
        FiniteGroup::cyclic(n)
    }

    fn z2_to_1() -> CrossedModule {
        CrossedModule::new(&z(2), &FiniteGroup::trivial(), vec![0, 0], vec![vec![0, 1]]).unwrap()
    }

    fn trivial_fs(b: &FiniteGroup, q: &FiniteGroup, f: Vec<usize>) -> FactorSet {
        FactorSet::new(b, q, vec![b.elements().collect(); q.order()], f).unwrap()
    }

    #[test]
    fn direct_and_twisted_products() {
        let direct = crossed_product(&trivial_fs(&z(2), &z(2), vec![0; 4])).unwrap();
        assert!(is_isomorphic(&direct.group, &FiniteGroup::direct_product(&z(2), &z(2))).is_some());
        let twisted = crossed_product(&trivial_fs(&z(2), &z(2), vec![0, 0, 0, 1])).unwrap();
        assert_eq!(twisted.group.element_order(1), 4);
        assert!(is_isomorphic(&twisted.group, &z(4)).is_some());
    }

    #[test]
    fn semidirect_product() {
        // Z/3 ⋊ Z/2 with inversion is S3
        let phi = vec![vec![0, 1, 2], vec![0, 2, 1]];
        let fs = FactorSet::new(&z(3), &z(2), phi, vec![0; 4]).unwrap();
        let cp = crossed_product(&fs).unwrap();
        assert!(is_isomorphic(&cp.group, &FiniteGroup::symmetric(3)).is_some());
    }

    #[test]
    fn inverse_formula() {
        let phi = vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]];
        let fs = FactorSet::new(&z(4), &z(2), phi.clone(), vec![0, 0, 0, 2]).unwrap();
        let cp = crossed_product(&fs).unwrap();
        let (b, q) = (z(4), z(2));
        for x in cp.group.elements() {
            let (bb, u) = (x / 2, x % 2);
            let ui = q.inv(u);
            // φ(u)c = −b − f(u, u⁻¹)
            let target = b.mul(b.inv(bb), b.inv(fs.value(u, ui)));
            let c = b.elements().find(|&c| phi[u][c] == target).unwrap();
            assert_eq!(cp.group.inv(x), c * 2 + ui);
        }
    }

    #[test]
    fn corrupted_factor_set_is_not_associative() {
        let phi = vec![vec![0, 1, 2], vec![0, 1, 2], vec![0, 1, 2]];
        let fs = FactorSet::new(&z(3), &z(3), phi, vec![0, 0, 0, 0, 1, 0, 0, 0, 0]).unwrap();
        assert!(matches!(fs.violation(), Some(FactorSetViolation::Cocycle(..))));
        assert!(matches!(
            FiniteGroup::from_table("x", fs.product_table()),
            Err(Error::NotAssociative(..))
        ));
        assert!(crossed_product(&fs).is_err());
    }

    #[test]
    fn validation_names_failures() {
        let xm = z2_to_1();
        let dd = xm.derive().unwrap();
        let e = FiniteGroup::direct_product(&z(2), &z(2));
        let j = GroupHom::new(&z(2), &e, vec![0, 2]).unwrap();
        let p = GroupHom::new(&e, &z(2), vec![0, 1, 0, 1]).unwrap();
        let eps = GroupHom::trivial(&e, &FiniteGroup::trivial());
        let good = Extension { xm: xm.clone(), e: e.clone(), q: z(2), j: j.clone(), p, eps: eps.clone() };
        assert!(good.validate(&dd).is_valid());
        assert_eq!(good.induced_psi(&dd).unwrap().images(), &[0, 0]);
        let broken = Extension { p: GroupHom::trivial(&e, &z(2)), ..good.clone() };
        let report = broken.validate(&dd);
        assert!(report.has(ExtensionCheck::Surjective));
        assert!(report.to_string().contains("maps to 1"));
    }

    #[test]
    fn z4_over_z2_to_1() {
        let xm = z2_to_1();
        let dd = xm.derive().unwrap();
        let z4 = z(4);
        let ext = Extension {
            xm: xm.clone(),
            e: z4.clone(),
            q: z(2),
            j: GroupHom::new(&z(2), &z4, vec![0, 2]).unwrap(),
            p: GroupHom::new(&z4, &z(2), vec![0, 1, 0, 1]).unwrap(),
            eps: GroupHom::trivial(&z4, &FiniteGroup::trivial()),
        };
        assert!(ext.validate(&dd).is_valid());
    }

    #[test]
    fn classify_central_z2() {
        let xm = z2_to_1();
        let psi = GroupHom::trivial(&z(2), &FiniteGroup::trivial());
        let c = classify(&xm, &psi, 7, &Limits::default()).unwrap();
        assert_eq!(c.extensions.len(), 2);
        let iso4 = c.extensions.iter().filter(|e| is_isomorphic(&e.e, &z(4)).is_some()).count();
        assert_eq!(iso4, 1);
    }

    #[test]
    fn classify_blocked_by_obstruction() {
        let theta = (0..4).map(|x| if x % 2 == 1 { vec![0, 3, 2, 1] } else { vec![0, 1, 2, 3] }).collect();
        let xm = CrossedModule::new(&z(4), &z(4), vec![0, 2, 0, 2], theta).unwrap();
        let dd = xm.derive().unwrap();
        let psi = GroupHom::identity(&dd.coker.group);
        let c = classify(&xm, &psi, 1, &Limits::default()).unwrap();
        assert!(!c.obstruction_vanishes);
        assert!(c.extensions.is_empty());
    }

    #[test]
    fn equivalence_of_shifted_factor_sets() {
        let xm = CrossedModule::new(&z(4), &FiniteGroup::trivial(), vec![0; 4], vec![(0..4).collect()]).unwrap();
        let dd = xm.derive().unwrap();
        let q = z(3);
        let psi = GroupHom::trivial(&q, &dd.coker.group);
        let stick = choose_stick(&xm, &dd, 0).unwrap();
        let module = dd.phi.pullback(&psi).unwrap();
        let zero = module.zero_cochain(2);
        let alpha = module.cochain_from_fn(1, |t| t[0] + 1).unwrap();
        let shifted = module.coboundary(&alpha).unwrap();
        let e1 = extension_from_functor(&xm, &dd, &psi, &stick, &zero).unwrap();
        let e2 = extension_from_functor(&xm, &dd, &psi, &stick, &shifted).unwrap();
        let limits = Limits::default();
        let w = are_equivalent(&e2, &e1, &dd, EquivalenceSearch::KerD, &limits).unwrap().unwrap();
        assert!(w.eta.is_bijective());
        assert!(are_equivalent(&e2, &e1, &dd, EquivalenceSearch::FullB, &limits).unwrap().is_some());
        assert_eq!(are_equivalent(&e1, &e1, &dd, EquivalenceSearch::KerD, &limits).unwrap().unwrap().alpha, vec![0; 3]);
    }
}
