//! Brute-force enumeration of extensions of a given type, independent of the
//! cohomology solver, and the three-way count comparison built on it.
//!
//! Every normalized `f: Q × Q -> B` with `d(f(u,v)) = x_s x_r x_{sr}⁻¹` is
//! tried against the two factor-set identities; survivors are turned into
//! crossed products and partitioned by a direct search for equivalences
//! `(b, u) ↦ (b + α_u, u)` with `α_u ∈ Ker d`. In crossed-product form
//! `(0, u)` already satisfies `ε(0, u) = x_{ψ(u)}`, so every equivalence has
//! this shape and the search is complete.

use crate::abelian::increment;
use crate::crossed::{CrossedModule, DerivedData};
use crate::error::{Error, Result};
use crate::extension::{classify, Extension};
use crate::group::{FiniteGroup, GroupHom};
use crate::limits::{saturating_pow, Limits};
use crate::reduction::{choose_stick, functors_from_discrete, reduce};

/// Result of the exhaustive enumeration.
#[derive(Clone, Debug)]
pub struct OracleResult {
    /// `|B|^((|Q|-1)²)`, the nominal size of the search space.
    pub nominal_candidates: u128,
    /// Candidates meeting the boundary constraint, all of which were tried.
    pub tried: u128,
    /// Tables of `f` passing both identities.
    pub factor_sets: Vec<Vec<usize>>,
    /// Indices into `factor_sets`, one list per equivalence class.
    pub classes: Vec<Vec<usize>>,
    /// One crossed product per class.
    pub representatives: Vec<Extension>,
}

impl OracleResult {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }
}

/// Enumerates and partitions every extension of `Q` by `B` of type `xm`
/// inducing `psi`, within `limits.budget` candidates.
pub fn enumerate_extensions_bruteforce(xm: &CrossedModule, psi: &GroupHom, limits: &Limits) -> Result<OracleResult> {
    let dd = xm.derive()?;
    let (b, d, q) = (xm.group_b(), xm.group_d(), psi.source());
    if psi.target() != &dd.coker.group {
        return Err(Error::Input("ψ does not map into Coker d".into()));
    }
    let nq = q.order();
    let nominal = saturating_pow(b.order(), (nq - 1) * (nq - 1));
    limits.check_budget("factor-set enumeration", nominal)?;

    let x = |u: usize| dd.coker.section[psi.apply(u)];
    let phi: Vec<&[usize]> = q.elements().map(|u| xm.theta_table()[x(u)].as_slice()).collect();

    // allowed values of f(u, v) for non-identity u, v, in storage order
    let slots: Vec<(usize, usize)> = (1..nq).flat_map(|u| (1..nq).map(move |v| (u, v))).collect();
    let options: Vec<Vec<usize>> = slots
        .iter()
        .map(|&(u, v)| {
            let want = d.mul(d.mul(x(u), x(v)), d.inv(x(q.mul(u, v))));
            b.elements().filter(|&c| xm.d(c) == want).collect()
        })
        .collect();
    if options.iter().any(Vec::is_empty) {
        return Err(Error::Internal("boundary constraint has no solution".into()));
    }
    let radix: Vec<usize> = options.iter().map(Vec::len).collect();
    let tried = radix.iter().fold(1u128, |acc, &r| acc.saturating_mul(r as u128));

    let mut factor_sets = Vec::new();
    let mut choice = vec![0; slots.len()];
    let mut f = vec![0; nq * nq];
    loop {
        for (k, &(u, v)) in slots.iter().enumerate() {
            f[u * nq + v] = options[k][choice[k]];
        }
        if satisfies_identities(b, q, &phi, &f) {
            factor_sets.push(f.clone());
        }
        if !increment(&mut choice, &radix) {
            break;
        }
    }

    let extensions = factor_sets
        .iter()
        .map(|f| crossed_product_extension(xm, &dd, psi, &phi, f))
        .collect::<Result<Vec<_>>>()?;

    let kernel = dd.ker_d.members();
    limits.check_budget("equivalence search", saturating_pow(kernel.len(), nq - 1))?;
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, f) in factor_sets.iter().enumerate() {
        let home = classes
            .iter()
            .position(|class| equivalent_by_search(b, q, &phi, kernel, f, &factor_sets[class[0]]));
        match home {
            Some(c) => classes[c].push(i),
            None => classes.push(vec![i]),
        }
    }
    let representatives = classes.iter().map(|c| extensions[c[0]].clone()).collect();
    Ok(OracleResult {
        nominal_candidates: nominal,
        tried,
        factor_sets,
        classes,
        representatives,
    })
}

/// Both factor-set identities, evaluated directly.
fn satisfies_identities(b: &FiniteGroup, q: &FiniteGroup, phi: &[&[usize]], f: &[usize]) -> bool {
    let nq = q.order();
    for u in 1..nq {
        for v in 1..nq {
            let uv = q.mul(u, v);
            let fuv = f[u * nq + v];
            for t in 1..nq {
                let lhs = b.mul(phi[u][f[v * nq + t]], f[u * nq + q.mul(v, t)]);
                if lhs != b.mul(fuv, f[uv * nq + t]) {
                    return false;
                }
            }
            if b.elements().any(|c| phi[u][phi[v][c]] != b.conj(fuv, phi[uv][c])) {
                return false;
            }
        }
    }
    true
}

/// `[B, φ, f, Q]` with `ε(b, u) = d(b) x_{ψ(u)}`, validated as an extension.
fn crossed_product_extension(
    xm: &CrossedModule,
    dd: &DerivedData,
    psi: &GroupHom,
    phi: &[&[usize]],
    f: &[usize],
) -> Result<Extension> {
    let (b, d, q) = (xm.group_b(), xm.group_d(), psi.source());
    let nq = q.order();
    let e = FiniteGroup::from_fn("E", b.order() * nq, |x, y| {
        let (b1, u) = (x / nq, x % nq);
        let (b2, v) = (y / nq, y % nq);
        b.mul(b.mul(b1, phi[u][b2]), f[u * nq + v]) * nq + q.mul(u, v)
    })?;
    let j = GroupHom::new(b, &e, b.elements().map(|c| c * nq).collect())?;
    let p = GroupHom::new(&e, q, e.elements().map(|x| x % nq).collect())?;
    let eps = GroupHom::new(
        &e,
        d,
        e.elements()
            .map(|x| d.mul(xm.d(x / nq), dd.coker.section[psi.apply(x % nq)]))
            .collect(),
    )?;
    let ext = Extension {
        xm: xm.clone(),
        e,
        q: q.clone(),
        j,
        p,
        eps,
    };
    let report = ext.validate(dd);
    if !report.is_valid() {
        return Err(Error::Internal(format!("enumerated crossed product is not an extension: {report}")));
    }
    if &ext.induced_psi(dd)? != psi {
        return Err(Error::Internal("enumerated crossed product induces another ψ".into()));
    }
    Ok(ext)
}

/// Searches `α: Q -> Ker d` with `α_1 = 0` such that `(b, u) ↦ (b + α_u, u)`
/// is a homomorphism between the two crossed products; it then fixes `B`,
/// `Q` and `ε` by construction. Assignments are extended one `u` at a time
/// and pruned on the products of the generators `(0, u)`.
fn equivalent_by_search(
    b: &FiniteGroup,
    q: &FiniteGroup,
    phi: &[&[usize]],
    kernel: &[usize],
    f1: &[usize],
    f2: &[usize],
) -> bool {
    let nq = q.order();
    // η((0,u) + (0,v)) = η(0,u) + η(0,v) reads f1(u,v) + α_uv = α_u + φ(u)α_v + f2(u,v)
    let consistent = |alpha: &[usize], upto: usize| {
        (1..=upto).all(|u| {
            (1..=upto).all(|v| {
                let uv = q.mul(u, v);
                if uv > upto {
                    return true;
                }
                let lhs = b.mul(f1[u * nq + v], alpha[uv]);
                let rhs = b.mul(b.mul(alpha[u], phi[u][alpha[v]]), f2[u * nq + v]);
                lhs == rhs
            })
        })
    };
    let mut alpha = vec![0; nq];
    fn extend(
        u: usize,
        alpha: &mut Vec<usize>,
        kernel: &[usize],
        consistent: &dyn Fn(&[usize], usize) -> bool,
        full: &dyn Fn(&[usize]) -> bool,
    ) -> bool {
        if u == alpha.len() {
            return full(alpha);
        }
        for &a in kernel {
            alpha[u] = a;
            if consistent(alpha, u) && extend(u + 1, alpha, kernel, consistent, full) {
                return true;
            }
        }
        false
    }
    let full = |alpha: &[usize]| is_homomorphism_on_tables(b, q, phi, f1, f2, alpha);
    extend(1, &mut alpha, kernel, &consistent, &full)
}

/// Checks `η(x + y) = η(x) + η(y)` on every pair of elements.
fn is_homomorphism_on_tables(
    b: &FiniteGroup,
    q: &FiniteGroup,
    phi: &[&[usize]],
    f1: &[usize],
    f2: &[usize],
    alpha: &[usize],
) -> bool {
    let nq = q.order();
    let op = |f: &[usize], (b1, u): (usize, usize), (b2, v): (usize, usize)| {
        (b.mul(b.mul(b1, phi[u][b2]), f[u * nq + v]), q.mul(u, v))
    };
    let eta = |(c, u): (usize, usize)| (b.mul(c, alpha[u]), u);
    for b1 in b.elements() {
        for u in q.elements() {
            for b2 in b.elements() {
                for v in q.elements() {
                    if eta(op(f1, (b1, u), (b2, v))) != op(f2, eta((b1, u)), eta((b2, v))) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Three independent counts of extension classes of type `xm` inducing `ψ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchreierReport {
    /// Homotopy classes of Gr-functors `Dis Q -> S_P` of type `(ψ, 0)`.
    pub functor_classes: usize,
    /// Representatives returned by [`classify`].
    pub classified: usize,
    /// Classes found by [`enumerate_extensions_bruteforce`].
    pub oracle: usize,
    pub h2_order: u64,
    pub obstruction_vanishes: bool,
}

impl SchreierReport {
    pub fn agrees(&self) -> bool {
        let expected = if self.obstruction_vanishes { self.h2_order as usize } else { 0 };
        self.functor_classes == self.classified && self.classified == self.oracle && self.oracle == expected
    }
}

pub fn schreier_check(xm: &CrossedModule, psi: &GroupHom, seed: u64, limits: &Limits) -> Result<SchreierReport> {
    let dd = xm.derive()?;
    let stick = choose_stick(xm, &dd, seed)?;
    let red = reduce(xm, &dd, &stick)?;
    let functors = functors_from_discrete(psi, &red)?;
    for (i, f) in functors.iter().enumerate() {
        for g in &functors[..i] {
            if f.homotopy(g)?.is_some() {
                return Err(Error::Internal("two functor classes are homotopic".into()));
            }
        }
    }
    let classification = classify(xm, psi, seed, limits)?;
    let oracle = enumerate_extensions_bruteforce(xm, psi, limits)?;
    Ok(SchreierReport {
        functor_classes: functors.len(),
        classified: classification.extensions.len(),
        oracle: oracle.class_count(),
        h2_order: classification.h2_order,
        obstruction_vanishes: classification.obstruction_vanishes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FiniteGroup {
        FiniteGroup::cyclic(n)
    }

    #[test]
    fn central_z2_over_z2() {
        let xm = CrossedModule::new(&z(2), &FiniteGroup::trivial(), vec![0, 0], vec![vec![0, 1]]).unwrap();
        let psi = GroupHom::trivial(&z(2), &FiniteGroup::trivial());
        let r = enumerate_extensions_bruteforce(&xm, &psi, &Limits::default()).unwrap();
        assert_eq!(r.nominal_candidates, 2);
        assert_eq!(r.factor_sets.len(), 2);
        assert_eq!(r.class_count(), 2);
        let report = schreier_check(&xm, &psi, 0, &Limits::default()).unwrap();
        assert!(report.agrees());
        assert_eq!(report.oracle, 2);
    }

    #[test]
    fn inversion_has_no_extensions() {
        let theta = (0..4).map(|x| if x % 2 == 1 { vec![0, 3, 2, 1] } else { vec![0, 1, 2, 3] }).collect();
        let xm = CrossedModule::new(&z(4), &z(4), vec![0, 2, 0, 2], theta).unwrap();
        let dd = xm.derive().unwrap();
        let psi = GroupHom::identity(&dd.coker.group);
        let r = enumerate_extensions_bruteforce(&xm, &psi, &Limits::default()).unwrap();
        assert_eq!(r.nominal_candidates, 4);
        assert_eq!(r.class_count(), 0);
        let report = schreier_check(&xm, &psi, 3, &Limits::default()).unwrap();
        assert_eq!((report.functor_classes, report.classified, report.oracle), (0, 0, 0));
    }

    #[test]
    fn klein_four_quotient() {
        let xm = CrossedModule::new(&z(2), &FiniteGroup::trivial(), vec![0, 0], vec![vec![0, 1]]).unwrap();
        let v4 = FiniteGroup::direct_product(&z(2), &z(2));
        let psi = GroupHom::trivial(&v4, &FiniteGroup::trivial());
        let report = schreier_check(&xm, &psi, 1, &Limits::default()).unwrap();
        assert_eq!((report.functor_classes, report.classified, report.oracle), (8, 8, 8));
    }

    #[test]
    fn budget_applies() {
        let xm = CrossedModule::new(&z(4), &FiniteGroup::trivial(), vec![0; 4], vec![(0..4).collect()]).unwrap();
        let psi = GroupHom::trivial(&z(4), &FiniteGroup::trivial());
        let tight = Limits::default().with_budget(1000);
        assert!(matches!(
            enumerate_extensions_bruteforce(&xm, &psi, &tight),
            Err(Error::SizeBound { .. })
        ));
    }
}
