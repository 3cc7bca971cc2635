//! Normalized cochains of a finite group with values in a finite module.
//!
//! The coboundary follows the bar convention
//!
//! ```text
//! (∂c)(g0,…,gn) = g0·c(g1,…,gn) + Σ_{i=1..n} (-1)^i c(…, g_{i-1}g_i, …) + (-1)^{n+1} c(g0,…,g_{n-1})
//! ```
//!
//! so for a 2-cochain `(∂f)(u,v,t) = u·f(v,t) − f(uv,t) + f(u,vt) − f(u,v)`,
//! and `∂f = 0` is exactly the twisted cocycle identity of factor sets.
//!
//! Solving and cohomology orders go through linear algebra over `Z/e`, where
//! `e` is the exponent of the coefficient group; [`exhaustive`] holds the
//! enumeration routines used to cross-check it.

pub mod exhaustive;

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::abelian::{abelian_decompose, AbelianDecomposition};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom};
use crate::zmod::{Diagonalized, ZmodMatrix};

/// Highest cochain degree handled.
pub const MAX_DEGREE: usize = 4;

/// A finite abelian group `A` with a left action of `Q` by automorphisms.
#[derive(Clone)]
pub struct GModule {
    inner: Arc<ModuleData>,
}

struct ModuleData {
    q: FiniteGroup,
    a: FiniteGroup,
    dec: AbelianDecomposition,
    action: Vec<Vec<usize>>,
    boundary: [OnceLock<Diagonalized>; MAX_DEGREE],
}

impl GModule {
    /// `action[u][a]` is `u·a`.
    pub fn new(q: &FiniteGroup, a: &FiniteGroup, action: Vec<Vec<usize>>) -> Result<Self> {
        let dec = abelian_decompose(a)?;
        if action.len() != q.order() {
            return Err(Error::InvalidModule(format!(
                "{} action tables for a group of order {}",
                action.len(),
                q.order()
            )));
        }
        for (u, row) in action.iter().enumerate() {
            GroupHom::new(a, a, row.clone())
                .ok()
                .filter(|f| f.is_bijective())
                .ok_or_else(|| {
                    Error::InvalidModule(format!("element {u} does not act by an automorphism"))
                })?;
        }
        if action[0].iter().enumerate().any(|(x, &y)| x != y) {
            return Err(Error::InvalidModule("identity acts nontrivially".into()));
        }
        for u in q.elements() {
            for v in q.elements() {
                let uv = q.mul(u, v);
                if let Some(x) = a.elements().find(|&x| action[uv][x] != action[u][action[v][x]]) {
                    return Err(Error::InvalidModule(format!(
                        "({u}{v})·{x} != {u}·({v}·{x})"
                    )));
                }
            }
        }
        Ok(Self::from_parts(q, dec, action))
    }

    fn from_parts(q: &FiniteGroup, dec: AbelianDecomposition, action: Vec<Vec<usize>>) -> Self {
        GModule {
            inner: Arc::new(ModuleData {
                q: q.clone(),
                a: dec.group().clone(),
                dec,
                action,
                boundary: Default::default(),
            }),
        }
    }

    /// `A` with trivial `Q`-action.
    pub fn trivial(q: &FiniteGroup, a: &FiniteGroup) -> Result<Self> {
        let action = vec![a.elements().collect(); q.order()];
        Self::new(q, a, action)
    }

    /// The zero module over `q`.
    pub fn zero(q: &FiniteGroup) -> Self {
        Self::trivial(q, &FiniteGroup::trivial()).expect("zero module")
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.inner.q
    }

    pub fn coefficients(&self) -> &FiniteGroup {
        &self.inner.a
    }

    pub fn decomposition(&self) -> &AbelianDecomposition {
        &self.inner.dec
    }

    pub fn action_table(&self) -> &[Vec<usize>] {
        &self.inner.action
    }

    #[inline]
    pub fn act(&self, u: usize, x: usize) -> usize {
        self.inner.action[u][x]
    }

    /// The module over `Q'` with `u·a = ψ(u)·a`.
    pub fn pullback(&self, psi: &GroupHom) -> Result<GModule> {
        if psi.target() != self.group() {
            return Err(Error::ModuleMismatch("pullback along a map into another group".into()));
        }
        let action = psi
            .source()
            .elements()
            .map(|u| self.inner.action[psi.apply(u)].clone())
            .collect();
        Ok(Self::from_parts(psi.source(), self.inner.dec.clone(), action))
    }

    /// Same group, same coefficients, same action.
    pub fn same_as(&self, other: &GModule) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.q == other.inner.q
                && self.inner.a == other.inner.a
                && self.inner.action == other.inner.action)
    }

    /// Number of tuples of non-identity elements of length `n`.
    pub fn tuple_count(&self, n: usize) -> usize {
        (self.inner.q.order() - 1).pow(n as u32)
    }

    /// `|C^n|`.
    pub fn cochain_count(&self, n: usize) -> BigUint {
        BigUint::from(self.inner.a.order()).pow(self.tuple_count(n) as u32)
    }

    pub fn zero_cochain(&self, degree: usize) -> Cochain {
        Cochain {
            degree,
            q_order: self.inner.q.order(),
            values: vec![0; self.tuple_count(degree)],
        }
    }

    /// The normalized cochain with the given values on non-identity tuples.
    pub fn cochain_from_fn(&self, degree: usize, f: impl Fn(&[usize]) -> usize) -> Result<Cochain> {
        let mut c = self.zero_cochain(degree);
        for (idx, tuple) in tuples(self.inner.q.order(), degree).enumerate() {
            let v = f(&tuple);
            if v >= self.inner.a.order() {
                return Err(Error::ModuleMismatch(format!("value {v} outside the module")));
            }
            c.values[idx] = v;
        }
        Ok(c)
    }

    pub fn check(&self, c: &Cochain) -> Result<()> {
        if c.q_order != self.inner.q.order() || c.values.len() != self.tuple_count(c.degree) {
            return Err(Error::ModuleMismatch(format!(
                "degree-{} cochain over a group of order {}",
                c.degree, c.q_order
            )));
        }
        if c.values.iter().any(|&v| v >= self.inner.a.order()) {
            return Err(Error::ModuleMismatch("value outside the module".into()));
        }
        Ok(())
    }

    pub fn add(&self, x: &Cochain, y: &Cochain) -> Result<Cochain> {
        self.check(x)?;
        self.check(y)?;
        if x.degree != y.degree {
            return Err(Error::ModuleMismatch("adding cochains of different degrees".into()));
        }
        let a = &self.inner.a;
        Ok(Cochain {
            values: x.values.iter().zip(&y.values).map(|(&p, &q)| a.mul(p, q)).collect(),
            ..x.clone()
        })
    }

    pub fn neg(&self, x: &Cochain) -> Cochain {
        let a = &self.inner.a;
        Cochain {
            values: x.values.iter().map(|&p| a.inv(p)).collect(),
            ..x.clone()
        }
    }

    pub fn sub(&self, x: &Cochain, y: &Cochain) -> Result<Cochain> {
        self.add(x, &self.neg(y))
    }

    /// `∂c`, of degree one more than `c`.
    pub fn coboundary(&self, c: &Cochain) -> Result<Cochain> {
        self.check(c)?;
        let n = c.degree;
        if n >= MAX_DEGREE {
            return Err(Error::DegreeOutOfRange(n));
        }
        let q = &self.inner.q;
        let a = &self.inner.a;
        let mut out = self.zero_cochain(n + 1);
        let mut args = vec![0; n];
        for (idx, g) in tuples(q.order(), n + 1).enumerate() {
            let mut acc = self.act(g[0], c.get(&g[1..]));
            for i in 1..=n {
                args.clear();
                args.extend_from_slice(&g[..i - 1]);
                args.push(q.mul(g[i - 1], g[i]));
                args.extend_from_slice(&g[i + 1..]);
                let v = c.get(&args);
                acc = a.mul(acc, if i % 2 == 1 { a.inv(v) } else { v });
            }
            let last = c.get(&g[..n]);
            acc = a.mul(acc, if (n + 1) % 2 == 1 { a.inv(last) } else { last });
            out.values[idx] = acc;
        }
        Ok(out)
    }

    pub fn is_cocycle(&self, c: &Cochain) -> Result<bool> {
        if c.degree >= MAX_DEGREE {
            return Err(Error::DegreeOutOfRange(c.degree));
        }
        Ok(self.coboundary(c)?.is_zero())
    }

    /// Coordinates of a cochain in `(Z/e)^(tuples × rank)`, each cyclic
    /// factor `Z/m` embedded as `(e/m)Z/e`.
    fn embed(&self, c: &Cochain) -> Vec<u64> {
        let dec = &self.inner.dec;
        let e = dec.exponent();
        let mut out = Vec::with_capacity(c.values.len() * dec.rank());
        for &v in &c.values {
            for (&x, &m) in dec.to_coords(v).iter().zip(dec.moduli()) {
                out.push((x * (e / m)) as u64);
            }
        }
        out
    }

    /// The cochain with coefficient `y[(t, i)]` on the `i`-th generator of `A`
    /// at tuple `t`.
    fn cochain_from_coefficients(&self, degree: usize, y: &[u64]) -> Cochain {
        let dec = &self.inner.dec;
        let k = dec.rank();
        let mut c = self.zero_cochain(degree);
        for (t, slot) in c.values.iter_mut().enumerate() {
            let coeffs: Vec<usize> = (0..k).map(|i| y[t * k + i] as usize).collect();
            *slot = dec.from_coords(&coeffs);
        }
        c
    }

    /// Diagonal form of `∂: C^n -> C^(n+1)` in generator coefficients.
    fn boundary(&self, n: usize) -> Result<&Diagonalized> {
        if n >= MAX_DEGREE {
            return Err(Error::DegreeOutOfRange(n));
        }
        Ok(self.inner.boundary[n].get_or_init(|| {
            let dec = &self.inner.dec;
            let k = dec.rank();
            let e = dec.exponent() as u64;
            let rows = self.tuple_count(n + 1) * k;
            let mut columns = Vec::with_capacity(self.tuple_count(n) * k);
            for t in 0..self.tuple_count(n) {
                for &gen in dec.basis() {
                    let mut delta = self.zero_cochain(n);
                    delta.values[t] = gen;
                    let d = self.coboundary(&delta).expect("degree checked");
                    columns.push(self.embed(&d));
                }
            }
            Diagonalized::new(&ZmodMatrix::from_columns(rows, e, &columns))
        }))
    }

    /// Some `g` with `∂g = target`, or `None` when `target` is not a coboundary.
    pub fn solve_coboundary(&self, target: &Cochain) -> Result<Option<Cochain>> {
        self.check(target)?;
        if target.degree == 0 {
            return Err(Error::DegreeOutOfRange(0));
        }
        let n = target.degree - 1;
        let diag = self.boundary(n)?;
        let Some(y) = diag.solve(&self.embed(target)) else {
            return Ok(None);
        };
        let g = self.cochain_from_coefficients(n, &y);
        if self.coboundary(&g)? != *target {
            return Err(Error::Internal("coboundary solver returned a wrong preimage".into()));
        }
        Ok(Some(g))
    }

    /// A witness `g` with `∂g = x − y`, if the two are cohomologous.
    pub fn cohomologous(&self, x: &Cochain, y: &Cochain) -> Result<Option<Cochain>> {
        self.solve_coboundary(&self.sub(x, y)?)
    }

    fn check_cohomology_degree(n: usize) -> Result<()> {
        if !(2..=3).contains(&n) {
            return Err(Error::DegreeOutOfRange(n));
        }
        Ok(())
    }

    /// `|Z^n| = |C^n| / |B^(n+1)|`.
    pub fn cocycle_count(&self, n: usize) -> Result<BigUint> {
        Ok(self.cochain_count(n) / self.boundary(n)?.image_order())
    }

    /// `|B^n|`.
    pub fn coboundary_count(&self, n: usize) -> Result<BigUint> {
        if n == 0 {
            return Ok(BigUint::from(1u32));
        }
        Ok(self.boundary(n - 1)?.image_order())
    }

    /// `|H^n| = |Z^n| / |B^n|` for `n ∈ {2, 3}`.
    pub fn h_order(&self, n: usize) -> Result<u64> {
        Self::check_cohomology_degree(n)?;
        let h = self.cocycle_count(n)? / self.coboundary_count(n)?;
        u64::try_from(h).map_err(|_| Error::size("cohomology group", u128::MAX, u64::MAX as u128))
    }

    /// One cocycle from each class of `H^n`, starting with zero.
    pub fn representatives(&self, n: usize) -> Result<Vec<Cochain>> {
        Self::check_cohomology_degree(n)?;
        let kernel: Vec<Cochain> = self
            .boundary(n)?
            .kernel()
            .into_iter()
            .map(|y| self.cochain_from_coefficients(n, &y))
            .collect();
        let lower = self.boundary(n - 1)?;
        let zero = self.zero_cochain(n);
        let mut seen = HashSet::from([lower.coset_key(&self.embed(&zero))]);
        let mut reps = vec![zero];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for z in &kernel {
                let c = self.add(&reps[i], z)?;
                if seen.insert(lower.coset_key(&self.embed(&c))) {
                    reps.push(c);
                    queue.push_back(reps.len() - 1);
                }
            }
        }
        Ok(reps)
    }

    pub fn h2_representatives(&self) -> Result<Vec<Cochain>> {
        self.representatives(2)
    }

    /// `f_* c`: apply a coefficient homomorphism `A -> A'` valuewise.
    pub fn push_forward(&self, c: &Cochain, f: &GroupHom, target: &GModule) -> Result<Cochain> {
        self.check(c)?;
        if f.source() != self.coefficients() || f.target() != target.coefficients() {
            return Err(Error::ModuleMismatch("coefficient map does not match".into()));
        }
        Ok(Cochain {
            values: c.values.iter().map(|&v| f.apply(v)).collect(),
            ..c.clone()
        })
    }
}

impl fmt::Debug for GModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GModule({} acting on {} {:?})",
            self.inner.q.name(),
            self.inner.a.name(),
            self.inner.dec.moduli()
        )
    }
}

/// Iterator over `n`-tuples of non-identity elements of a group of order
/// `q`, in the storage order of [`Cochain`].
pub fn tuples(q: usize, n: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = (q - 1).pow(n as u32);
    (0..total).map(move |mut idx| {
        let mut t = vec![0; n];
        for slot in t.iter_mut().rev() {
            *slot = idx % (q - 1) + 1;
            idx /= q - 1;
        }
        t
    })
}

/// A normalized cochain `Q^n -> A`, stored over non-identity tuples only.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cochain {
    degree: usize,
    q_order: usize,
    values: Vec<usize>,
}

impl Cochain {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Value at `args`; zero whenever an argument is the identity.
    pub fn get(&self, args: &[usize]) -> usize {
        debug_assert_eq!(args.len(), self.degree);
        let mut idx = 0;
        for &u in args {
            if u == 0 {
                return 0;
            }
            idx = idx * (self.q_order - 1) + (u - 1);
        }
        self.values[idx]
    }

    pub fn set(&mut self, args: &[usize], value: usize) {
        assert!(args.iter().all(|&u| u != 0), "normalized cochains vanish on identities");
        let idx = args.iter().fold(0, |acc, &u| acc * (self.q_order - 1) + (u - 1));
        self.values[idx] = value;
    }

    /// `ψ^* c`: `(u1,…,un) ↦ c(ψ u1, …, ψ un)`.
    pub fn pullback(&self, psi: &GroupHom) -> Result<Cochain> {
        if psi.target().order() != self.q_order {
            return Err(Error::ModuleMismatch("pullback along a map into another group".into()));
        }
        let q = psi.source().order();
        let values = tuples(q, self.degree)
            .map(|t| {
                let image: Vec<usize> = t.iter().map(|&u| psi.apply(u)).collect();
                self.get(&image)
            })
            .collect();
        Ok(Cochain {
            degree: self.degree,
            q_order: q,
            values,
        })
    }

    pub fn to_json(&self) -> CochainJson {
        let values = tuples(self.q_order, self.degree)
            .zip(&self.values)
            .filter(|(_, &v)| v != 0)
            .map(|(t, &v)| {
                let key = t.iter().map(|u| u.to_string()).collect::<Vec<_>>().join(",");
                (key, v)
            })
            .collect();
        CochainJson {
            degree: self.degree,
            values,
        }
    }

    pub fn from_json(json: &CochainJson, module: &GModule) -> Result<Cochain> {
        let mut c = module.zero_cochain(json.degree);
        for (key, &v) in &json.values {
            let args: Vec<usize> = if key.is_empty() {
                Vec::new()
            } else {
                key.split(',')
                    .map(|s| s.trim().parse::<usize>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| Error::Input(format!("bad cochain key {key:?}")))?
            };
            if args.len() != json.degree
                || args.iter().any(|&u| u == 0 || u >= module.group().order())
            {
                return Err(Error::Input(format!(
                    "cochain key {key:?} is not a tuple of {} non-identity elements",
                    json.degree
                )));
            }
            c.set(&args, v);
        }
        module.check(&c)?;
        Ok(c)
    }
}

impl fmt::Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cochain(deg {}, {:?})", self.degree, self.to_json().values)
    }
}

/// Wire form of a cochain; omitted tuples are zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainJson {
    pub degree: usize,
    pub values: BTreeMap<String, usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(n: usize) -> FiniteGroup {
        FiniteGroup::cyclic(n)
    }

    fn z2z2() -> GModule {
        GModule::trivial(&z(2), &z(2)).unwrap()
    }

    #[test]
    fn degree_one_by_hand() {
        let m = z2z2();
        let alpha = m.cochain_from_fn(1, |_| 1).unwrap();
        let d = m.coboundary(&alpha).unwrap();
        // 1·α(g) − α(g·g) + α(g) = 1 − 0 + 1 = 0
        assert_eq!(d.get(&[1, 1]), 0);
        assert!(m.coboundary(&m.zero_cochain(1)).unwrap().is_zero());
    }

    #[test]
    fn all_two_cochains_over_z2_are_cocycles() {
        let m = z2z2();
        for v in 0..2 {
            let f = m.cochain_from_fn(2, |_| v).unwrap();
            assert!(m.is_cocycle(&f).unwrap());
        }
    }

    #[test]
    fn nontrivial_three_cocycle() {
        let m = z2z2();
        let k = m.cochain_from_fn(3, |_| 1).unwrap();
        assert!(m.is_cocycle(&k).unwrap());
        assert!(m.solve_coboundary(&k).unwrap().is_none());
        assert!(m.solve_coboundary(&m.zero_cochain(3)).unwrap().is_some());
    }

    #[test]
    fn small_cohomology_orders() {
        let m = z2z2();
        assert_eq!(m.h_order(2).unwrap(), 2);
        assert_eq!(m.h_order(3).unwrap(), 2);
        assert_eq!(GModule::zero(&FiniteGroup::symmetric(3)).h_order(2).unwrap(), 1);
        assert!(matches!(m.h_order(1), Err(Error::DegreeOutOfRange(1))));
    }

    #[test]
    fn representatives_are_distinct_classes() {
        let v4 = FiniteGroup::direct_product(&z(2), &z(2));
        let m = GModule::trivial(&v4, &z(2)).unwrap();
        let reps = m.h2_representatives().unwrap();
        assert_eq!(reps.len(), 8);
        assert_eq!(m.h_order(2).unwrap(), 8);
        for (i, x) in reps.iter().enumerate() {
            assert!(m.is_cocycle(x).unwrap());
            for y in &reps[..i] {
                assert!(m.cohomologous(x, y).unwrap().is_none());
            }
        }
    }

    #[test]
    fn pullback_commutes_with_coboundary() {
        let z4 = z(4);
        let m = GModule::trivial(&z(2), &z(2)).unwrap();
        let psi = GroupHom::new(&z4, &z(2), vec![0, 1, 0, 1]).unwrap();
        let pm = m.pullback(&psi).unwrap();
        let k = m.cochain_from_fn(2, |_| 1).unwrap();
        let lhs = pm.coboundary(&k.pullback(&psi).unwrap()).unwrap();
        let rhs = m.coboundary(&k).unwrap().pullback(&psi).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn json_round_trip() {
        let m = GModule::trivial(&z(3), &z(4)).unwrap();
        let c = m.cochain_from_fn(2, |t| (t[0] + 2 * t[1]) % 4).unwrap();
        let back = Cochain::from_json(&c.to_json(), &m).unwrap();
        assert_eq!(back, c);
        let bad = CochainJson {
            degree: 2,
            values: BTreeMap::from([("0,1".to_string(), 1)]),
        };
        assert!(Cochain::from_json(&bad, &m).is_err());
    }

    fn modules() -> Vec<GModule> {
        let inv4: Vec<Vec<usize>> = vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]];
        let s3 = FiniteGroup::symmetric(3);
        // S3 acting on Z/3 through the sign
        let sign: Vec<Vec<usize>> = s3
            .elements()
            .map(|u| {
                let odd = [1, 2, 5].contains(&u);
                (0..3).map(|x| if odd { (3 - x) % 3 } else { x }).collect()
            })
            .collect();
        vec![
            z2z2(),
            GModule::trivial(&z(3), &z(2)).unwrap(),
            GModule::trivial(&z(4), &z(4)).unwrap(),
            GModule::new(&z(2), &z(4), inv4).unwrap(),
            GModule::new(&s3, &z(3), sign).unwrap(),
            GModule::trivial(&FiniteGroup::direct_product(&z(2), &z(2)), &FiniteGroup::direct_product(&z(2), &z(2))).unwrap(),
        ]
    }

    proptest! {
        #[test]
        fn coboundary_squares_to_zero(which in 0usize..6, degree in 0usize..3, seed in any::<u64>()) {
            let m = &modules()[which];
            let a = m.coefficients().order() as u64;
            let c = m.cochain_from_fn(degree, |t| {
                let h = t.iter().fold(seed, |acc, &u| acc.wrapping_mul(6364136223846793005).wrapping_add(u as u64));
                (h.rotate_left(17) % a) as usize
            }).unwrap();
            let dd = m.coboundary(&m.coboundary(&c).unwrap()).unwrap();
            prop_assert!(dd.is_zero());
        }

        #[test]
        fn solver_inverts_coboundary(which in 0usize..6, degree in 0usize..3, seed in any::<u64>()) {
            let m = &modules()[which];
            let a = m.coefficients().order() as u64;
            let h = m.cochain_from_fn(degree, |t| {
                let h = t.iter().fold(seed, |acc, &u| acc.wrapping_mul(2862933555777941757).wrapping_add(u as u64 + 1));
                (h.rotate_left(29) % a) as usize
            }).unwrap();
            let target = m.coboundary(&h).unwrap();
            let g = m.solve_coboundary(&target).unwrap().unwrap();
            prop_assert_eq!(m.coboundary(&g).unwrap(), target);
        }
    }

    #[test]
    fn module_validation() {
        // Z/2 cannot act on Z/3 by the map x -> 2x composed badly
        let bad = vec![vec![0, 1, 2], vec![0, 0, 0]];
        assert!(GModule::new(&z(2), &z(3), bad).is_err());
        assert!(GModule::trivial(&z(2), &FiniteGroup::symmetric(3)).is_err());
    }
}
