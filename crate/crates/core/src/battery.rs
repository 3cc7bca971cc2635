//! The verification battery: a catalog of small crossed modules and one
//! runner per acceptance criterion. Shared by the `acceptance` test target
//! and the `check` command of the CLI.

use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cohomology::{exhaustive, tuples, Cochain, GModule};
use crate::crossed::CrossedModule;
use crate::error::Result;
use crate::extension::{classify, FactorSet};
use crate::grcat::{check_classification_iso, round_trip_isomorphism};
use crate::group::{homomorphisms, is_isomorphic, normal_subgroups, quotient, FiniteGroup, GroupHom, Subgroup};
use crate::limits::Limits;
use crate::oracle::{enumerate_extensions_bruteforce, schreier_check};
use crate::reduction::{choose_stick, reduce, stick_independence};

/// Outcome of one criterion.
#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] criterion {} ({}): {} [{:.3} s, limit {} s]",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs()
        )
    }
}

pub const TITLES: [&str; 7] = [
    "obstruction necessity",
    "classification sufficiency",
    "Schreier bijection",
    "crossed module round trip",
    "cocycle infrastructure",
    "factor sets and associativity",
    "cohomology cross-validation",
];

const LIMITS_SECS: [u64; 7] = [1, 1, 300, 120, 120, 60, 120];

/// Runs criterion `id` in `1..=7`.
pub fn run_criterion(id: u8, seed: u64, limits: &Limits) -> CriterionResult {
    assert!((1..=7).contains(&id), "criteria are numbered 1 to 7");
    let start = Instant::now();
    let outcome = match id {
        1 => criterion_1(limits),
        2 => criterion_2(seed, limits),
        3 => criterion_3(seed, limits),
        4 => criterion_4(limits),
        5 => criterion_5(seed),
        6 => criterion_6(seed),
        _ => criterion_7(),
    };
    let elapsed = start.elapsed();
    let limit = Duration::from_secs(LIMITS_SECS[id as usize - 1]);
    let (ok, detail) = match outcome {
        Ok(pair) => pair,
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionResult {
        id,
        title: TITLES[id as usize - 1],
        passed: ok && elapsed < limit,
        detail,
        elapsed,
        limit,
    }
}

pub fn run_all(seed: u64, limits: &Limits) -> Vec<CriterionResult> {
    (1..=7).map(|id| run_criterion(id, seed, limits)).collect()
}

fn z(n: usize) -> FiniteGroup {
    FiniteGroup::cyclic(n)
}

fn v4() -> FiniteGroup {
    FiniteGroup::direct_product(&z(2), &z(2)).renamed("V4")
}

/// `ℤ/4 -> ℤ/4`, `d(x) = 2x`, with odd elements acting by inversion.
pub fn inversion_module() -> CrossedModule {
    let theta = (0..4).map(|x| if x % 2 == 1 { vec![0, 3, 2, 1] } else { vec![0, 1, 2, 3] }).collect();
    CrossedModule::new(&z(4), &z(4), vec![0, 2, 0, 2], theta).expect("inversion module")
}

/// `B -> 1` for abelian `B`.
pub fn to_trivial(b: &FiniteGroup) -> CrossedModule {
    CrossedModule::module(b, &FiniteGroup::trivial(), vec![b.elements().collect()]).expect("abelian B")
}

/// A catalog of valid crossed modules covering every constructor.
pub fn catalog() -> Vec<(String, CrossedModule)> {
    let mut out: Vec<(String, CrossedModule)> = Vec::new();
    let mut push = |name: String, xm: Result<CrossedModule>| {
        if let Ok(xm) = xm {
            out.push((name, xm));
        }
    };
    push("Z/4 -> Z/4 by 2x, inversion".into(), Ok(inversion_module()));
    for b in [z(2), z(3), z(4), v4()] {
        push(format!("{} -> 1", b.name()), Ok(to_trivial(&b)));
    }
    for b in [z(2), z(3), z(4), z(6), v4(), FiniteGroup::symmetric(3), FiniteGroup::dihedral(4), FiniteGroup::quaternion()] {
        push(format!("id {}", b.name()), CrossedModule::identity_module(&b));
    }
    let ambient = [
        z(4),
        z(6),
        v4(),
        FiniteGroup::symmetric(3),
        FiniteGroup::dihedral(4),
        FiniteGroup::quaternion(),
        FiniteGroup::direct_product(&z(2), &z(4)),
        FiniteGroup::symmetric(4),
    ];
    for g in &ambient {
        for n in normal_subgroups(g) {
            if n.order() == 1 || n.order() == g.order() || n.order() * g.order() > 256 {
                continue;
            }
            push(format!("N{} < {}", n.order(), g.name()), CrossedModule::from_normal_subgroup(g, &n));
        }
    }
    for b in [z(3), z(4), z(5), v4(), FiniteGroup::symmetric(3), FiniteGroup::dihedral(4)] {
        push(format!("{} -> Aut", b.name()), CrossedModule::automorphism_module(&b, 16));
    }
    push("Z/3 module over Z/2".into(), CrossedModule::module(&z(3), &z(2), vec![vec![0, 1, 2], vec![0, 2, 1]]));
    push(
        "Z/4 module over Z/2".into(),
        CrossedModule::module(&z(4), &z(2), vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]]),
    );
    push(
        "V4 module over Z/3".into(),
        CrossedModule::module(&v4(), &z(3), vec![vec![0, 1, 2, 3], vec![0, 2, 3, 1], vec![0, 3, 1, 2]]),
    );
    for g in [z(4), FiniteGroup::quaternion(), FiniteGroup::dihedral(4), FiniteGroup::direct_product(&z(2), &z(4))] {
        // abelian groups are divided by their first element of order 2
        let sub = if g.is_abelian() {
            let x = g.elements().find(|&x| g.element_order(x) == 2).expect("even order");
            Subgroup::generated_by(&g, &[x])
        } else {
            Subgroup::center(&g)
        };
        if let Ok(q) = quotient(&g, &sub, "Q") {
            push(format!("{} -> quotient", g.name()), CrossedModule::central_extension(&q.projection));
        }
    }
    out
}

/// A named instance of the Schreier correspondence.
#[derive(Clone, Debug)]
pub struct SchreierInstance {
    pub name: String,
    pub xm: CrossedModule,
    pub psi: GroupHom,
}

/// Generated instances with `|B|, |D|, |Q| ≤ 8`, led by `ℤ/2 -> 1` over
/// `Q = ℤ/2 × ℤ/2`.
pub fn schreier_instances(limits: &Limits) -> Vec<SchreierInstance> {
    let mut out = vec![SchreierInstance {
        name: "Z/2 -> 1, Q = V4".into(),
        xm: to_trivial(&z(2)),
        psi: GroupHom::trivial(&v4(), &FiniteGroup::trivial()),
    }];
    let qs = [z(2), z(3), z(4), v4()];
    for (name, xm) in catalog() {
        if xm.group_b().order() > 8 || xm.group_d().order() > 8 {
            continue;
        }
        let Ok(dd) = xm.derive() else { continue };
        for q in &qs {
            for psi in homomorphisms(q, &dd.coker.group) {
                let n = q.order() - 1;
                if crate::limits::saturating_pow(xm.group_b().order(), n * n) > limits.budget {
                    continue;
                }
                out.push(SchreierInstance {
                    name: format!("{name}, Q = {}, psi = {:?}", q.name(), psi.images()),
                    xm: xm.clone(),
                    psi,
                });
            }
        }
    }
    out
}

fn criterion_1(limits: &Limits) -> Result<(bool, String)> {
    let xm = inversion_module();
    let dd = xm.derive()?;
    let psi = GroupHom::identity(&dd.coker.group);
    let stick = choose_stick(&xm, &dd, 0)?;
    let red = reduce(&xm, &dd, &stick)?;
    let k111 = dd.ker_incl.apply(red.k.get(&[1, 1, 1]));
    let cocycle = red.pi1.is_cocycle(&red.k)?;
    let trivial_class = red.pi1.solve_coboundary(&red.k)?.is_some();
    let classes = classify(&xm, &psi, 0, limits)?.extensions.len();
    let oracle = enumerate_extensions_bruteforce(&xm, &psi, limits)?;
    let ok = k111 == 2
        && cocycle
        && !trivial_class
        && classes == 0
        && oracle.class_count() == 0
        && oracle.nominal_candidates == 4;
    Ok((
        ok,
        format!(
            "k(1,1,1) = {k111}, cocycle {cocycle}, coboundary {trivial_class}, classify {classes}, \
             enumerate {} of {} candidates",
            oracle.class_count(),
            oracle.nominal_candidates
        ),
    ))
}

fn criterion_2(seed: u64, limits: &Limits) -> Result<(bool, String)> {
    let xm = to_trivial(&z(2));
    let psi = GroupHom::trivial(&z(2), &FiniteGroup::trivial());
    let c = classify(&xm, &psi, seed, limits)?;
    let oracle = enumerate_extensions_bruteforce(&xm, &psi, limits)?;
    let cyclic = c.extensions.iter().filter(|e| is_isomorphic(&e.e, &z(4)).is_some()).count();
    let klein = c.extensions.iter().filter(|e| is_isomorphic(&e.e, &v4()).is_some()).count();
    let ok = c.extensions.len() == 2 && cyclic == 1 && klein == 1 && oracle.class_count() == 2 && c.h2_order == 2;
    Ok((
        ok,
        format!(
            "classify {} (Z/4: {cyclic}, Z/2xZ/2: {klein}), oracle {}, |H2| = {}",
            c.extensions.len(),
            oracle.class_count(),
            c.h2_order
        ),
    ))
}

fn criterion_3(seed: u64, limits: &Limits) -> Result<(bool, String)> {
    let instances = schreier_instances(limits);
    let mut failures = Vec::new();
    let mut v4_counts = None;
    let (mut obstructed, mut several) = (0, 0);
    for (i, inst) in instances.iter().enumerate() {
        let r = schreier_check(&inst.xm, &inst.psi, seed.wrapping_add(i as u64), limits)?;
        obstructed += usize::from(!r.obstruction_vanishes);
        several += usize::from(r.oracle > 1);
        if i == 0 {
            v4_counts = Some((r.functor_classes, r.classified, r.oracle));
        }
        if !r.agrees() {
            failures.push(format!(
                "{}: {} / {} / {}",
                inst.name, r.functor_classes, r.classified, r.oracle
            ));
        }
    }
    let ok = instances.len() >= 10 && failures.is_empty() && v4_counts == Some((8, 8, 8));
    let mut detail = format!(
        "{} of {} instances agree ({obstructed} obstructed, {several} with several classes), V4 counts {:?}",
        instances.len() - failures.len(),
        instances.len(),
        v4_counts
    );
    if !failures.is_empty() {
        detail.push_str(&format!("; disagreements: {}", failures.join("; ")));
    }
    Ok((ok, detail))
}

fn criterion_4(limits: &Limits) -> Result<(bool, String)> {
    let mut round_trips = 0;
    let mut failures = Vec::new();
    for (name, xm) in catalog() {
        if xm.group_b().order() * xm.group_d().order() > 256 {
            continue;
        }
        match round_trip_isomorphism(&xm) {
            Ok(m) if m.is_valid() && m.is_isomorphism() => round_trips += 1,
            Ok(_) => failures.push(format!("{name}: not an isomorphism")),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    let s3 = FiniteGroup::symmetric(3);
    let a3 = normal_subgroups(&s3).into_iter().find(|n| n.order() == 3).expect("A3 is normal in S3");
    let pairs = [
        (to_trivial(&z(2)), to_trivial(&z(2))),
        (CrossedModule::identity_module(&z(2))?, to_trivial(&z(2))),
        (to_trivial(&z(2)), CrossedModule::identity_module(&z(2))?),
        (inversion_module(), inversion_module()),
        (CrossedModule::from_normal_subgroup(&s3, &a3)?, CrossedModule::identity_module(&s3)?),
        (to_trivial(&z(4)), inversion_module()),
        (CrossedModule::module(&z(3), &z(2), vec![vec![0, 1, 2], vec![0, 2, 1]])?, CrossedModule::from_normal_subgroup(&s3, &a3)?),
    ];
    let mut agreeing = 0;
    let mut counts = Vec::new();
    for (x, y) in &pairs {
        let r = check_classification_iso(x, y, limits)?;
        counts.push(format!("{}={}", r.morphisms, r.single_functors));
        if r.morphisms == r.single_functors && r.bijective {
            agreeing += 1;
        } else {
            failures.push(format!("pair {x:?} -> {y:?}: {r:?}"));
        }
    }
    let ok = round_trips >= 20 && agreeing >= 5 && failures.is_empty();
    let mut detail = format!(
        "{round_trips} round trips, {agreeing}/{} pairs agree (morphisms=single functors: {})",
        pairs.len(),
        counts.join(", ")
    );
    if !failures.is_empty() {
        detail.push_str(&format!("; failures: {}", failures.join("; ")));
    }
    Ok((ok, detail))
}

/// Modules used for random cochains: trivial and twisted coefficients and
/// the `π1` of every catalog entry.
fn module_battery() -> Result<Vec<GModule>> {
    let mut out = Vec::new();
    for q in [z(2), z(3), z(4), v4(), FiniteGroup::symmetric(3)] {
        for a in [z(2), z(3), z(4)] {
            out.push(GModule::trivial(&q, &a)?);
        }
    }
    out.push(GModule::new(&z(2), &z(3), vec![vec![0, 1, 2], vec![0, 2, 1]])?);
    out.push(GModule::new(&z(4), &z(4), (0..4).map(|u| if u % 2 == 1 { vec![0, 3, 2, 1] } else { vec![0, 1, 2, 3] }).collect())?);
    for (_, xm) in catalog() {
        out.push(xm.derive()?.phi);
    }
    Ok(out)
}

/// A normalized cochain with uniform random values.
pub fn random_cochain(m: &GModule, degree: usize, rng: &mut ChaCha8Rng) -> Cochain {
    let mut c = m.zero_cochain(degree);
    let a = m.coefficients().order();
    for args in tuples(m.group().order(), degree) {
        if args.iter().all(|&x| x != 0) {
            c.set(&args, rng.gen_range(0..a));
        }
    }
    c
}

fn criterion_5(seed: u64) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let modules = module_battery()?;
    let mut dd_zero = 0;
    for i in 0..1000 {
        let m = &modules[i % modules.len()];
        let degree = rng.gen_range(0..3);
        let c = random_cochain(m, degree, &mut rng);
        if m.coboundary(&m.coboundary(&c)?)?.is_zero() {
            dd_zero += 1;
        }
    }
    let mut cocycles = 0;
    let mut witnesses = 0;
    let mut pairs = 0;
    let cat = catalog();
    for (_, xm) in &cat {
        let dd = xm.derive()?;
        let sticks = (0..4).map(|s| choose_stick(xm, &dd, seed.wrapping_add(s))).collect::<Result<Vec<_>>>()?;
        let ks = sticks.iter().map(|s| reduce(xm, &dd, s)).collect::<Result<Vec<_>>>()?;
        if ks.iter().all(|r| r.pi1.is_cocycle(&r.k).unwrap_or(false)) {
            cocycles += 1;
        }
        for i in 0..sticks.len() {
            for j in i + 1..sticks.len() {
                pairs += 1;
                let g = stick_independence(xm, &dd, &sticks[i], &sticks[j])?;
                let m = &ks[i].pi1;
                if m.coboundary(&g)? == m.sub(&ks[i].k, &ks[j].k)? {
                    witnesses += 1;
                }
            }
        }
    }
    let ok = dd_zero == 1000 && cocycles == cat.len() && witnesses == pairs;
    Ok((
        ok,
        format!(
            "dd = 0 on {dd_zero}/1000 cochains, k is a cocycle on {cocycles}/{} modules, \
             stick witnesses {witnesses}/{pairs}",
            cat.len()
        ),
    ))
}

/// A factor set read off a random section of `E -> E/N`.
pub fn factor_set_from_section(e: &FiniteGroup, n: &Subgroup, rng: &mut ChaCha8Rng) -> Result<FactorSet> {
    let q = quotient(e, n, "Q")?;
    let (b, incl) = n.as_group("N");
    let mut s = q.section.clone();
    for (u, rep) in s.iter_mut().enumerate().skip(1) {
        let members: Vec<usize> = e.elements().filter(|&x| q.projection.apply(x) == u).collect();
        *rep = *members.choose(rng).expect("nonempty coset");
    }
    let inb = |x: usize| n.index_of(x).expect("member of N");
    let phi = q
        .group
        .elements()
        .map(|u| b.elements().map(|y| inb(e.conj(s[u], incl.apply(y)))).collect())
        .collect();
    let nq = q.group.order();
    let mut f = vec![0; nq * nq];
    for u in 0..nq {
        for v in 0..nq {
            let uv = q.group.mul(u, v);
            f[u * nq + v] = inb(e.mul(e.mul(s[u], s[v]), e.inv(s[uv])));
        }
    }
    FactorSet::new(&b, &q.group, phi, f)
}

/// First triple `(x, y, w)` with `(xy)w ≠ x(yw)`.
pub fn associativity_failure(table: &[Vec<usize>]) -> Option<(usize, usize, usize)> {
    let n = table.len();
    for x in 0..n {
        for y in 0..n {
            let xy = table[x][y];
            for w in 0..n {
                if table[xy][w] != table[x][table[y][w]] {
                    return Some((x, y, w));
                }
            }
        }
    }
    None
}

fn extension_groups() -> Vec<FiniteGroup> {
    vec![
        z(4),
        z(6),
        z(8),
        v4(),
        FiniteGroup::direct_product(&z(2), &z(4)),
        FiniteGroup::direct_product(&v4(), &z(2)),
        FiniteGroup::symmetric(3),
        FiniteGroup::dihedral(4),
        FiniteGroup::quaternion(),
        FiniteGroup::dihedral(6),
        FiniteGroup::direct_product(&z(3), &FiniteGroup::symmetric(3)),
        FiniteGroup::symmetric(4),
    ]
}

/// Ambient group and normal subgroup, kept when both factors are nontrivial.
fn section_sources(min_quotient: usize) -> Vec<(FiniteGroup, Subgroup)> {
    let mut out = Vec::new();
    for g in extension_groups() {
        for n in normal_subgroups(&g) {
            if n.order() > 1 && g.order() / n.order() >= min_quotient {
                out.push((g.clone(), n));
            }
        }
    }
    out
}

fn criterion_6(seed: u64) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let valid_sources = section_sources(2);
    let mut associative = 0;
    for i in 0..100 {
        let (g, n) = &valid_sources[i % valid_sources.len()];
        let fs = factor_set_from_section(g, n, &mut rng)?;
        if fs.violation().is_none() && associativity_failure(&fs.product_table()).is_none() {
            associative += 1;
        }
    }
    // With |Q| ≥ 3, changing f(u, v) at non-identity u, v breaks the cocycle
    // identity at (u, v, t) for any t ∉ {1, u}.
    let corrupt_sources = section_sources(3);
    let mut detected = 0;
    for i in 0..100 {
        let (g, n) = &corrupt_sources[i % corrupt_sources.len()];
        let mut fs = factor_set_from_section(g, n, &mut rng)?;
        let nq = fs.q.order();
        let (u, v) = (rng.gen_range(1..nq), rng.gen_range(1..nq));
        let old = fs.value(u, v);
        let new = (old + rng.gen_range(1..fs.b.order())) % fs.b.order();
        fs.f[u * nq + v] = new;
        if fs.violation().is_some() && associativity_failure(&fs.product_table()).is_some() {
            detected += 1;
        }
    }
    Ok((
        associative == 100 && detected == 100,
        format!("{associative}/100 valid factor sets associative, {detected}/100 corruptions detected"),
    ))
}

/// `(label, module)` pairs for the cohomology cross-check.
pub fn cohomology_instances() -> Result<Vec<(String, GModule)>> {
    let mut out = Vec::new();
    for n in 1..=4 {
        for m in 1..=4 {
            out.push((format!("Z/{n} on Z/{m}"), GModule::trivial(&z(n), &z(m))?));
        }
    }
    out.push(("V4 on Z/2".into(), GModule::trivial(&v4(), &z(2))?));
    out.push(("V4 on Z/3".into(), GModule::trivial(&v4(), &z(3))?));
    out.push(("S3 on Z/2".into(), GModule::trivial(&FiniteGroup::symmetric(3), &z(2))?));
    out.push(("Z/2 on Z/3 by inversion".into(), GModule::new(&z(2), &z(3), vec![vec![0, 1, 2], vec![0, 2, 1]])?));
    out.push(("Z/2 on Z/4 by inversion".into(), GModule::new(&z(2), &z(4), vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]])?));
    out.push((
        "Z/3 on V4 by rotation".into(),
        GModule::new(&z(3), &v4(), vec![vec![0, 1, 2, 3], vec![0, 2, 3, 1], vec![0, 3, 1, 2]])?,
    ));
    Ok(out)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn criterion_7() -> Result<(bool, String)> {
    let exhaustive_limit = Limits::default().with_budget(1 << 20);
    let mut compared = 0;
    let mut mismatches = Vec::new();
    for (name, m) in cohomology_instances()? {
        for n in [2, 3] {
            let fast = m.h_order(n)?;
            if m.cochain_count(n) <= (1u32 << 20).into() {
                let slow = exhaustive::h_order(&m, n, &exhaustive_limit)?;
                compared += 1;
                if fast != slow {
                    mismatches.push(format!("H{n}({name}): {fast} vs {slow}"));
                }
            }
        }
    }
    let mut closed_forms = 0;
    for n in 1..=4 {
        for m in 1..=4 {
            let module = GModule::trivial(&z(n), &z(m))?;
            if module.h_order(2)? == gcd(n, m) as u64 {
                closed_forms += 1;
            } else {
                mismatches.push(format!("H2(Z/{n}, Z/{m}) != gcd"));
            }
        }
    }
    let h3 = GModule::trivial(&z(2), &z(2))?.h_order(3)?;
    let h2v4 = GModule::trivial(&v4(), &z(2))?.h_order(2)?;
    let ok = mismatches.is_empty() && h3 == 2 && h2v4 == 8 && closed_forms == 16;
    let mut detail = format!(
        "{compared} exhaustive comparisons, |H3(Z/2,Z/2)| = {h3}, |H2(V4,Z/2)| = {h2v4}, gcd law {closed_forms}/16"
    );
    if !mismatches.is_empty() {
        detail.push_str(&format!("; mismatches: {}", mismatches.join("; ")));
    }
    Ok((ok, detail))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_is_valid_and_large_enough() {
        let cat = catalog();
        assert!(cat.len() >= 20, "only {} entries", cat.len());
        for (name, xm) in &cat {
            assert!(xm.validate().is_valid(), "{name}");
        }
    }

    #[test]
    fn sections_give_valid_factor_sets() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s3 = FiniteGroup::symmetric(3);
        for n in normal_subgroups(&s3) {
            let fs = factor_set_from_section(&s3, &n, &mut rng).unwrap();
            assert_eq!(fs.violation(), None);
        }
    }

    #[test]
    fn small_criteria_pass() {
        let limits = Limits::default();
        for id in [1, 2, 6] {
            let r = run_criterion(id, 0, &limits);
            assert!(r.passed, "{r}");
        }
    }
}
