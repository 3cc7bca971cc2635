//! Structural invariants checked across the whole catalog.

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use xmodkit::battery::{catalog, cohomology_instances, random_cochain};
use xmodkit::cohomology::exhaustive;
use xmodkit::crossed::morphisms;
use xmodkit::extension::{are_equivalent, extension_of, EquivalenceSearch};
use xmodkit::group::{all_subgroups, automorphism_group, normal_subgroups, quotient};
use xmodkit::reduction::{action_from_category, functors_from_discrete};
use xmodkit::{abelian_decompose, choose_stick, classify, reduce, CrossedModule, FiniteGroup, GroupHom, Limits, StrictGrCat, Subgroup};

fn small_groups() -> Vec<FiniteGroup> {
    let z = FiniteGroup::cyclic;
    vec![
        z(1),
        z(2),
        z(4),
        z(6),
        z(8),
        FiniteGroup::direct_product(&z(2), &z(2)),
        FiniteGroup::direct_product(&z(2), &z(4)),
        FiniteGroup::direct_product(&FiniteGroup::direct_product(&z(2), &z(2)), &z(4)),
        FiniteGroup::symmetric(3),
        FiniteGroup::dihedral(4),
        FiniteGroup::dihedral(6),
        FiniteGroup::dihedral(8),
        FiniteGroup::quaternion(),
    ]
}

#[test]
fn quotient_section_and_projection() {
    for g in small_groups() {
        for n in normal_subgroups(&g) {
            let q = quotient(&g, &n, "Q").unwrap();
            for (c, &x) in q.section.iter().enumerate() {
                assert_eq!(q.projection.apply(x), c);
            }
            for x in g.elements() {
                let rep = q.section[q.projection.apply(x)];
                // x and its representative differ by a member of N
                assert!(n.contains(g.mul(g.inv(rep), x)));
            }
        }
    }
}

#[test]
fn automorphism_groups_are_closed() {
    for g in small_groups().into_iter().filter(|g| g.order() <= 8) {
        let (aut, auts) = automorphism_group(&g, 16).unwrap();
        for a in aut.elements() {
            for b in aut.elements() {
                let composite = auts[b].then(&auts[a]).unwrap();
                assert_eq!(composite, auts[aut.mul(a, b)]);
            }
        }
    }
}

#[test]
fn abelian_decomposition_transports_addition() {
    for g in small_groups().into_iter().filter(|g| g.is_abelian()) {
        let dec = abelian_decompose(&g).unwrap();
        for a in g.elements() {
            assert_eq!(dec.from_coords(dec.to_coords(a)), a);
            for b in g.elements() {
                let sum: Vec<usize> = dec
                    .to_coords(a)
                    .iter()
                    .zip(dec.to_coords(b))
                    .zip(dec.moduli())
                    .map(|((x, y), m)| (x + y) % m)
                    .collect();
                assert_eq!(dec.from_coords(&sum), g.mul(a, b));
            }
        }
    }
}

#[test]
fn normal_inclusions_are_crossed_modules() {
    for g in small_groups().into_iter().filter(|g| g.order() <= 16) {
        for n in normal_subgroups(&g) {
            let xm = CrossedModule::from_normal_subgroup(&g, &n).unwrap();
            assert!(xm.validate().is_valid());
        }
        // non-normal subgroups are refused
        for s in all_subgroups(&g) {
            if !s.is_normal() {
                assert!(CrossedModule::from_normal_subgroup(&g, &s).is_err());
            }
        }
    }
}

#[test]
fn kernel_is_central_and_image_is_normal() {
    for (name, xm) in catalog() {
        let dd = xm.derive().unwrap();
        let center = Subgroup::center(xm.group_b());
        assert!(dd.ker_d.is_subset_of(&center), "{name}");
        assert!(dd.im_d.is_normal(), "{name}");
    }
}

#[test]
fn derived_action_ignores_the_section() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (name, xm) in catalog() {
        let dd = xm.derive().unwrap();
        for _ in 0..3 {
            let section: Vec<usize> = (0..dd.coker.group.order())
                .map(|s| {
                    let members: Vec<usize> = xm.group_d().elements().filter(|&x| dd.coker.projection.apply(x) == s).collect();
                    *members.choose(&mut rng).unwrap()
                })
                .collect();
            assert_eq!(dd.phi_for_section(&xm, &section), dd.phi.action_table(), "{name}");
        }
    }
}

#[test]
fn morphisms_compose() {
    for (name, xm) in catalog().into_iter().filter(|(_, x)| x.group_b().order() * x.group_d().order() <= 36) {
        let ms = morphisms(&xm, &xm);
        for f in &ms {
            for g in &ms {
                let fg = f.then(g).unwrap();
                assert!(fg.is_valid(), "{name}");
                assert!(ms.contains(&fg), "{name}");
            }
        }
    }
}

#[test]
fn hom_sets_match_cosets_of_the_image() {
    for (name, xm) in catalog().into_iter().filter(|(_, x)| x.group_b().order() * x.group_d().order() <= 256) {
        let dd = xm.derive().unwrap();
        let cat = StrictGrCat::from_crossed_module(&xm).unwrap();
        cat.check().unwrap();
        let d = xm.group_d();
        for x in d.elements() {
            for y in d.elements() {
                let same = dd.coker.projection.apply(x) == dd.coker.projection.apply(y);
                let n = cat.hom(x, y).len();
                assert_eq!(n, if same { dd.ker_d.order() } else { 0 }, "{name}: Hom({x}, {y})");
            }
        }
    }
}

#[test]
fn functors_from_morphisms_preserve_tensor() {
    for (name, xm) in catalog().into_iter().filter(|(_, x)| x.group_b().order() * x.group_d().order() <= 36) {
        let cat = StrictGrCat::from_crossed_module(&xm).unwrap();
        for m in morphisms(&xm, &xm) {
            let f = xmodkit::GrFunctor::from_morphism(&m, 0).unwrap();
            for a in 0..cat.arrow_count() {
                for b in 0..cat.arrow_count() {
                    let lhs = f.map_arrow(cat.tensor(a, b)).unwrap();
                    let rhs = f.target().tensor(f.map_arrow(a).unwrap(), f.map_arrow(b).unwrap());
                    assert_eq!(lhs, rhs, "{name}");
                }
            }
        }
    }
}

#[test]
fn strict_action_equals_derived_action() {
    for (name, xm) in catalog().into_iter().filter(|(_, x)| x.group_b().order() * x.group_d().order() <= 256) {
        let dd = xm.derive().unwrap();
        let cat = StrictGrCat::from_crossed_module(&xm).unwrap();
        let stick = choose_stick(&xm, &dd, 3).unwrap();
        assert_eq!(action_from_category(&cat, &dd, &stick).unwrap(), dd.phi.action_table(), "{name}");
    }
}

#[test]
fn k_is_normalized_and_in_the_kernel() {
    for (name, xm) in catalog() {
        let dd = xm.derive().unwrap();
        for seed in 0..3 {
            let red = reduce(&xm, &dd, &choose_stick(&xm, &dd, seed).unwrap()).unwrap();
            let q = dd.coker.group.order();
            for s in 0..q {
                for r in 0..q {
                    for t in 0..q {
                        let v = red.k.get(&[s, r, t]);
                        assert!(v < dd.ker_group.order(), "{name}");
                        if s == 0 || r == 0 || t == 0 {
                            assert_eq!(v, 0, "{name}");
                        }
                    }
                }
            }
            assert!(red.pi1.is_cocycle(&red.k).unwrap(), "{name}");
        }
    }
}

#[test]
fn representatives_are_a_transversal() {
    let limits = Limits::default();
    for (name, m) in cohomology_instances().unwrap() {
        if m.cochain_count(2) > (1u32 << 14).into() {
            continue;
        }
        let reps = m.h2_representatives().unwrap();
        assert_eq!(reps.len() as u64, m.h_order(2).unwrap(), "{name}");
        for (i, a) in reps.iter().enumerate() {
            for b in &reps[..i] {
                assert!(m.cohomologous(a, b).unwrap().is_none(), "{name}");
            }
        }
        exhaustive::for_each_cochain(&m, 2, &limits, |c| {
            if m.is_cocycle(c).unwrap() {
                let hits = reps.iter().filter(|r| m.cohomologous(c, r).unwrap().is_some()).count();
                assert_eq!(hits, 1, "{name}");
            }
            true
        })
        .unwrap();
    }
}

#[test]
fn unsolvable_coboundaries_agree_with_exhaustive_search() {
    let limits = Limits::default();
    for (name, m) in cohomology_instances().unwrap() {
        for n in [2, 3] {
            if m.cochain_count(n - 1) > (1u32 << 12).into() || m.cochain_count(n) > (1u32 << 12).into() {
                continue;
            }
            exhaustive::for_each_cochain(&m, n, &limits, |c| {
                let fast = m.solve_coboundary(c).unwrap();
                let slow = exhaustive::solve(&m, c, &limits).unwrap();
                assert_eq!(fast.is_some(), slow.is_some(), "{name}, degree {n}");
                if let Some(g) = fast {
                    assert_eq!(&m.coboundary(&g).unwrap(), c);
                }
                true
            })
            .unwrap();
        }
    }
}

/// Every `ψ` into `Coker d` from small `Q`, for catalog entries with small `B`.
fn classification_instances() -> Vec<(String, CrossedModule, GroupHom)> {
    let z = FiniteGroup::cyclic;
    let qs = [z(2), z(3), z(4), FiniteGroup::direct_product(&z(2), &z(2))];
    let mut out = Vec::new();
    for (name, xm) in catalog() {
        if xm.group_b().order() > 8 || xm.group_d().order() > 8 {
            continue;
        }
        let dd = xm.derive().unwrap();
        for q in &qs {
            for psi in xmodkit::group::homomorphisms(q, &dd.coker.group) {
                out.push((format!("{name}, Q = {}", q.name()), xm.clone(), psi));
            }
        }
    }
    out
}

#[test]
fn extensions_of_functors_are_valid_and_pairwise_inequivalent() {
    let limits = Limits::default();
    for (name, xm, psi) in classification_instances() {
        let c = classify(&xm, &psi, 11, &limits).unwrap();
        let dd = xm.derive().unwrap();
        for (i, e) in c.extensions.iter().enumerate() {
            assert!(e.validate(&dd).is_valid(), "{name}");
            assert_eq!(e.induced_psi(&dd).unwrap(), psi, "{name}");
            let refl = are_equivalent(e, e, &dd, EquivalenceSearch::KerD, &limits).unwrap();
            assert!(refl.is_some(), "{name}: not reflexive");
            for other in &c.extensions[..i] {
                assert!(are_equivalent(e, other, &dd, EquivalenceSearch::KerD, &limits).unwrap().is_none(), "{name}");
                assert!(are_equivalent(other, e, &dd, EquivalenceSearch::KerD, &limits).unwrap().is_none(), "{name}");
            }
        }
    }
}

#[test]
fn equivalence_is_symmetric_and_transitive_across_sticks() {
    let limits = Limits::default();
    for (name, xm, psi) in classification_instances().into_iter().step_by(7) {
        let dd = xm.derive().unwrap();
        // the same classes realized through three sticks
        let runs: Vec<_> = (0..3).map(|s| classify(&xm, &psi, 100 + s, &limits).unwrap().extensions).collect();
        for e1 in &runs[0] {
            let matches: Vec<usize> = runs[1]
                .iter()
                .enumerate()
                .filter(|(_, e2)| are_equivalent(e1, e2, &dd, EquivalenceSearch::KerD, &limits).unwrap().is_some())
                .map(|(j, _)| j)
                .collect();
            assert_eq!(matches.len(), 1, "{name}");
            let e2 = &runs[1][matches[0]];
            let back = are_equivalent(e2, e1, &dd, EquivalenceSearch::KerD, &limits).unwrap();
            assert!(back.is_some(), "{name}: not symmetric");
            for e3 in &runs[2] {
                let a = are_equivalent(e2, e3, &dd, EquivalenceSearch::KerD, &limits).unwrap().is_some();
                let b = are_equivalent(e1, e3, &dd, EquivalenceSearch::KerD, &limits).unwrap().is_some();
                assert_eq!(a, b, "{name}: not transitive");
                let full = are_equivalent(e1, e3, &dd, EquivalenceSearch::FullB, &limits).unwrap().is_some();
                assert_eq!(full, b, "{name}: search modes disagree");
            }
        }
    }
}

#[test]
fn returned_equivalences_commute_with_the_structure_maps() {
    let limits = Limits::default();
    for (name, xm, psi) in classification_instances().into_iter().step_by(5) {
        let dd = xm.derive().unwrap();
        let a = classify(&xm, &psi, 1, &limits).unwrap().extensions;
        let b = classify(&xm, &psi, 2, &limits).unwrap().extensions;
        for e1 in &a {
            for e2 in &b {
                if let Some(eq) = are_equivalent(e1, e2, &dd, EquivalenceSearch::KerD, &limits).unwrap() {
                    assert_eq!(e1.j.then(&eq.eta).unwrap(), e2.j, "{name}");
                    assert_eq!(eq.eta.then(&e2.p).unwrap(), e1.p, "{name}");
                    assert_eq!(eq.eta.then(&e2.eps).unwrap(), e1.eps, "{name}");
                    assert!(eq.eta.is_bijective(), "{name}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Shifting `h` by `−∂α` gives a homotopic functor whose extension is
    /// carried onto the original by `(b, u) ↦ (b + α_u, u)`.
    #[test]
    fn homotopic_functors_give_equivalent_extensions(index in 0usize..1000, seed in any::<u64>(), pick in any::<u64>()) {
        let instances = classification_instances();
        let (name, xm, psi) = &instances[index % instances.len()];
        let dd = xm.derive().unwrap();
        let stick = choose_stick(xm, &dd, seed).unwrap();
        let red = reduce(xm, &dd, &stick).unwrap();
        let functors = functors_from_discrete(psi, &red).unwrap();
        prop_assume!(!functors.is_empty());
        let f = &functors[(pick as usize) % functors.len()];
        let m = f.module();
        let alpha = random_cochain(m, 1, &mut ChaCha8Rng::seed_from_u64(pick));
        let mut g = f.clone();
        g.h = m.sub(&f.h, &m.coboundary(&alpha).unwrap()).unwrap();
        g.check_coherence().unwrap();
        prop_assert!(f.homotopy(&g).unwrap().is_some());

        let e1 = extension_of(xm, &dd, &stick, f).unwrap();
        let e2 = extension_of(xm, &dd, &stick, &g).unwrap();
        let q = psi.source();
        let b = xm.group_b();
        let nq = q.order();
        let images: Vec<usize> = e1.e.elements().map(|x| {
            let (c, u) = (x / nq, x % nq);
            let a = if u == 0 { 0 } else { dd.ker_incl.apply(alpha.get(&[u])) };
            b.mul(c, a) * nq + u
        }).collect();
        let eta = GroupHom::new(&e1.e, &e2.e, images);
        prop_assert!(eta.is_ok(), "{}: (b, u) -> (b + α_u, u) is not a homomorphism", name);
        let eta = eta.unwrap();
        prop_assert!(eta.is_bijective());
        prop_assert_eq!(e1.j.then(&eta).unwrap(), e2.j.clone());
        prop_assert_eq!(eta.then(&e2.p).unwrap(), e1.p.clone());
        prop_assert_eq!(eta.then(&e2.eps).unwrap(), e1.eps.clone());
        let limits = Limits::default();
        prop_assert!(are_equivalent(&e1, &e2, &dd, EquivalenceSearch::KerD, &limits).unwrap().is_some());
    }

    /// `ψ*` commutes with `∂` on random cochains of every catalog module.
    #[test]
    fn pullback_commutes_with_coboundary(index in 0usize..1000, degree in 0usize..3, seed in any::<u64>()) {
        let instances = classification_instances();
        let (_, xm, psi) = &instances[index % instances.len()];
        let target = xm.derive().unwrap().phi;
        let source = target.pullback(psi).unwrap();
        let c = random_cochain(&target, degree, &mut ChaCha8Rng::seed_from_u64(seed));
        let lhs = source.coboundary(&c.pullback(psi).unwrap()).unwrap();
        let rhs = target.coboundary(&c).unwrap().pullback(psi).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
