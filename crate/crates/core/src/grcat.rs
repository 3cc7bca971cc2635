//! Finite strict Gr-categories stored extensionally, and Gr-functors between
//! the categories of crossed modules.
//!
//! Arrows are triples `(x, b, y)` for `x --b--> y`; `a.then(b)` composes
//! diagrammatically. In the category of a crossed module `Hom(x, y)` is
//! `{b : x = d(b) y}`, composition adds labels and
//! `(x, b, y) ⊗ (x′, b′, y′) = (xx′, b + θ_y b′, yy′)`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::crossed::{morphisms, CrossedModule, XModMorphism};
use crate::error::{Error, Result};
use crate::group::{homomorphisms, FiniteGroup, GroupHom};
use crate::limits::Limits;

/// An arrow `source --label--> target`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub source: usize,
    pub label: usize,
    pub target: usize,
}

/// A strict Gr-category with finitely many arrows.
///
/// Objects form a group under `⊗` with unit `0`. Arrow `i` is `arrows[i]`.
#[derive(Clone)]
pub struct StrictGrCat {
    inner: Arc<CatData>,
}

struct CatData {
    objects: FiniteGroup,
    arrows: Vec<Arrow>,
    index: HashMap<Arrow, usize>,
    compose: Vec<Option<usize>>,
    tensor: Vec<usize>,
    identities: Vec<usize>,
}

impl StrictGrCat {
    /// Builds a category from raw tables and checks every axiom.
    ///
    /// `compose[i][j]` is `arrows[i]` followed by `arrows[j]` and must be
    /// present exactly when the two are composable.
    pub fn from_tables(
        objects: &FiniteGroup,
        arrows: Vec<Arrow>,
        compose: Vec<Vec<Option<usize>>>,
        tensor: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = arrows.len();
        if compose.len() != n || tensor.len() != n {
            return Err(Error::InvalidCategory("table sizes do not match the arrow count".into()));
        }
        if compose.iter().any(|r| r.len() != n) || tensor.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidCategory("table rows do not match the arrow count".into()));
        }
        if arrows
            .iter()
            .any(|a| a.source >= objects.order() || a.target >= objects.order())
        {
            return Err(Error::InvalidCategory("arrow endpoint is not an object".into()));
        }
        let cat = Self::assemble(
            objects,
            arrows,
            compose.into_iter().flatten().collect(),
            tensor.into_iter().flatten().collect(),
        )?;
        cat.check()?;
        Ok(cat)
    }

    fn assemble(
        objects: &FiniteGroup,
        arrows: Vec<Arrow>,
        compose: Vec<Option<usize>>,
        tensor: Vec<usize>,
    ) -> Result<Self> {
        let n = arrows.len();
        if compose.iter().flatten().chain(&tensor).any(|&a| a >= n) {
            return Err(Error::InvalidCategory("table entry is not an arrow".into()));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, &a) in arrows.iter().enumerate() {
            if index.insert(a, i).is_some() {
                return Err(Error::InvalidCategory(format!("arrow {a:?} listed twice")));
            }
        }
        let mut identities = vec![usize::MAX; objects.order()];
        for x in objects.elements() {
            // the identity of x is the unique endomorphism e with e∘e = e
            identities[x] = (0..n)
                .find(|&i| {
                    arrows[i].source == x && arrows[i].target == x && compose[i * n + i] == Some(i)
                })
                .ok_or_else(|| Error::InvalidCategory(format!("object {x} has no identity arrow")))?;
        }
        Ok(StrictGrCat {
            inner: Arc::new(CatData {
                objects: objects.clone(),
                arrows,
                index,
                compose,
                tensor,
                identities,
            }),
        })
    }

    /// The category of a crossed module. Arrow `(x, b, y)` is stored at
    /// index `y·|B| + b`, so the arrows into the unit come first in label order.
    pub fn from_crossed_module(xm: &CrossedModule) -> Result<Self> {
        let (b, d) = (xm.group_b(), xm.group_d());
        let nb = b.order();
        let mut arrows = Vec::with_capacity(nb * d.order());
        for y in d.elements() {
            for c in b.elements() {
                arrows.push(Arrow {
                    source: d.mul(xm.d(c), y),
                    label: c,
                    target: y,
                });
            }
        }
        let n = arrows.len();
        let id = |y: usize, c: usize| y * nb + c;
        let mut compose = vec![None; n * n];
        for (i, a) in arrows.iter().enumerate() {
            for (j, c) in arrows.iter().enumerate() {
                if c.source == a.target {
                    compose[i * n + j] = Some(id(c.target, b.mul(a.label, c.label)));
                }
            }
        }
        let mut tensor = vec![0; n * n];
        for (i, a) in arrows.iter().enumerate() {
            for (j, c) in arrows.iter().enumerate() {
                let label = b.mul(a.label, xm.act(a.target, c.label));
                tensor[i * n + j] = id(d.mul(a.target, c.target), label);
            }
        }
        let cat = Self::assemble(d, arrows, compose, tensor)?;
        cat.check()?;
        Ok(cat)
    }

    pub fn objects(&self) -> &FiniteGroup {
        &self.inner.objects
    }

    pub fn arrow_count(&self) -> usize {
        self.inner.arrows.len()
    }

    pub fn arrow(&self, i: usize) -> Arrow {
        self.inner.arrows[i]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.inner.arrows
    }

    pub fn find(&self, a: Arrow) -> Option<usize> {
        self.inner.index.get(&a).copied()
    }

    /// Arrows `x -> y`.
    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.arrow_count())
            .filter(|&i| self.inner.arrows[i].source == x && self.inner.arrows[i].target == y)
            .collect()
    }

    /// `a` followed by `b`, when composable.
    #[inline]
    pub fn then(&self, a: usize, b: usize) -> Option<usize> {
        self.inner.compose[a * self.arrow_count() + b]
    }

    #[inline]
    pub fn tensor(&self, a: usize, b: usize) -> usize {
        self.inner.tensor[a * self.arrow_count() + b]
    }

    pub fn id(&self, x: usize) -> usize {
        self.inner.identities[x]
    }

    /// The compositional inverse of `a`.
    pub fn inverse(&self, a: usize) -> Option<usize> {
        let arr = self.inner.arrows[a];
        let id = self.id(arr.source);
        (0..self.arrow_count()).find(|&c| self.then(a, c) == Some(id))
    }

    /// Checks composition, identities, inverses, strictness of `⊗` and the
    /// interchange law. Errors name the first witness found.
    pub fn check(&self) -> Result<()> {
        let n = self.arrow_count();
        let objs = &self.inner.objects;
        let arrows = &self.inner.arrows;
        let fail = |msg: String| Err(Error::InvalidCategory(msg));
        for i in 0..n {
            for j in 0..n {
                let composable = arrows[i].target == arrows[j].source;
                match self.then(i, j) {
                    Some(k) if composable => {
                        if arrows[k].source != arrows[i].source || arrows[k].target != arrows[j].target {
                            return fail(format!("composite of arrows {i}, {j} has wrong endpoints"));
                        }
                    }
                    None if !composable => {}
                    _ => return fail(format!("composition of arrows {i}, {j} is wrongly (un)defined")),
                }
            }
        }
        for (i, &a) in arrows.iter().enumerate() {
            if self.then(self.id(a.source), i) != Some(i) || self.then(i, self.id(a.target)) != Some(i) {
                return fail(format!("identities are not unital on arrow {i}"));
            }
            let inv = self.inverse(i).ok_or_else(|| Error::InvalidCategory(format!("arrow {i} is not invertible")))?;
            if self.then(inv, i) != Some(self.id(a.target)) {
                return fail(format!("arrow {i} has only a one-sided inverse"));
            }
        }
        for i in 0..n {
            for j in (0..n).filter(|&j| arrows[i].target == arrows[j].source) {
                let ij = self.then(i, j).unwrap();
                for k in (0..n).filter(|&k| arrows[j].target == arrows[k].source) {
                    if self.then(ij, k) != self.then(i, self.then(j, k).unwrap()) {
                        return fail(format!("composition is not associative at ({i}, {j}, {k})"));
                    }
                }
            }
        }
        let unit = self.id(0);
        for i in 0..n {
            if self.tensor(unit, i) != i || self.tensor(i, unit) != i {
                return fail(format!("unit object is not a strict unit on arrow {i}"));
            }
            for j in 0..n {
                let t = arrows[self.tensor(i, j)];
                if t.source != objs.mul(arrows[i].source, arrows[j].source)
                    || t.target != objs.mul(arrows[i].target, arrows[j].target)
                {
                    return fail(format!("tensor of arrows {i}, {j} has wrong endpoints"));
                }
            }
        }
        for x in objs.elements() {
            for y in objs.elements() {
                if self.tensor(self.id(x), self.id(y)) != self.id(objs.mul(x, y)) {
                    return fail(format!("id_{x} ⊗ id_{y} is not an identity"));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.tensor(i, j);
                for k in 0..n {
                    if self.tensor(ij, k) != self.tensor(i, self.tensor(j, k)) {
                        return fail(format!("tensor is not strictly associative at ({i}, {j}, {k})"));
                    }
                }
            }
        }
        // interchange: (a then b) ⊗ (a′ then b′) = (a ⊗ a′) then (b ⊗ b′)
        let pairs: Vec<(usize, usize, usize)> = (0..n)
            .flat_map(|i| {
                (0..n).filter_map(move |j| self.then(i, j).map(|ij| (i, j, ij)))
            })
            .collect();
        for &(a, b, ab) in &pairs {
            for &(a2, b2, ab2) in &pairs {
                if Some(self.tensor(ab, ab2)) != self.then(self.tensor(a, a2), self.tensor(b, b2)) {
                    return fail(format!("interchange fails for ({a}, {b}) and ({a2}, {b2})"));
                }
            }
        }
        Ok(())
    }

    /// The crossed module of the category: `B` is the set of arrows into the
    /// unit under `⊗`, `d` takes the source, and `θ_y(a) = id_y ⊗ a ⊗ id_{y⁻¹}`.
    ///
    /// Also returns, for each element of `B`, the arrow it stands for.
    pub fn to_crossed_module(&self) -> Result<(CrossedModule, Vec<usize>)> {
        let objs = &self.inner.objects;
        let arrows = &self.inner.arrows;
        let mut into_unit: Vec<usize> = (0..self.arrow_count()).filter(|&i| arrows[i].target == 0).collect();
        let unit = self.id(0);
        into_unit.sort_by_key(|&i| (i != unit, i));
        let pos: HashMap<usize, usize> = into_unit.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let lookup = |i: usize| -> Result<usize> {
            pos.get(&i)
                .copied()
                .ok_or_else(|| Error::InvalidCategory(format!("arrow {i} should end at the unit")))
        };
        let m = into_unit.len();
        let mut table = vec![vec![0; m]; m];
        for (p, &i) in into_unit.iter().enumerate() {
            for (q, &j) in into_unit.iter().enumerate() {
                table[p][q] = lookup(self.tensor(i, j))?;
            }
        }
        let b = FiniteGroup::from_table("Hom(-,1)", table)?;
        let d_images = into_unit.iter().map(|&i| arrows[i].source).collect();
        let mut theta = Vec::with_capacity(objs.order());
        for y in objs.elements() {
            let (idy, idyinv) = (self.id(y), self.id(objs.inv(y)));
            theta.push(
                into_unit
                    .iter()
                    .map(|&a| lookup(self.tensor(self.tensor(idy, a), idyinv)))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Ok((CrossedModule::new(&b, objs, d_images, theta)?, into_unit))
    }
}

impl std::fmt::Debug for StrictGrCat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "StrictGrCat({} objects, {} arrows)",
            self.objects().order(),
            self.arrow_count()
        )
    }
}

/// The isomorphism `b ↦ (d(b) --b--> 1)`, `x ↦ x` from `xm` to the crossed
/// module recovered from its category, checked to be an isomorphism.
pub fn round_trip_isomorphism(xm: &CrossedModule) -> Result<XModMorphism> {
    let cat = StrictGrCat::from_crossed_module(xm)?;
    let (back, arrows) = cat.to_crossed_module()?;
    let position: HashMap<usize, usize> = arrows.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let images = xm
        .group_b()
        .elements()
        .map(|b| {
            let arrow = cat
                .find(Arrow {
                    source: xm.d(b),
                    label: b,
                    target: 0,
                })
                .ok_or_else(|| Error::Internal(format!("arrow for {b} is missing")))?;
            position
                .get(&arrow)
                .copied()
                .ok_or_else(|| Error::Internal(format!("arrow for {b} is not in B")))
        })
        .collect::<Result<Vec<_>>>()?;
    let f1 = GroupHom::new(xm.group_b(), back.group_b(), images)?;
    let f0 = GroupHom::identity(xm.group_d());
    let iso = XModMorphism::new(xm, &back, f1, f0)?;
    if !iso.is_isomorphism() {
        return Err(Error::Internal(format!(
            "round trip is not an isomorphism: {}",
            iso.validate()
        )));
    }
    Ok(iso)
}

/// A Gr-functor `P -> P′` between categories of crossed modules, acting by
/// `f0` on objects and `(x, b, y) ↦ (f0 x, f1 b, f0 y)` on arrows, with
/// constant monoidal structure `F̃_{x,y} = (f0(xy) --c̃--> f0(xy))`.
#[derive(Clone, Debug)]
pub struct GrFunctor {
    source: StrictGrCat,
    target: StrictGrCat,
    source_xm: CrossedModule,
    target_xm: CrossedModule,
    f1: GroupHom,
    f0: GroupHom,
    c_tilde: usize,
}

impl GrFunctor {
    /// Builds and checks the functor of `(f1, f0)` with constant `c̃`.
    pub fn from_morphism(m: &XModMorphism, c_tilde: usize) -> Result<Self> {
        let report = m.validate();
        if !report.is_valid() {
            return Err(Error::InvalidMorphism(report.to_string()));
        }
        let f = Self::from_parts(m, c_tilde)?;
        f.check()?;
        Ok(f)
    }

    /// The functor data without any checks, for categorical validation of
    /// arbitrary candidate triples.
    pub fn from_parts(m: &XModMorphism, c_tilde: usize) -> Result<Self> {
        Self::from_parts_in(
            &StrictGrCat::from_crossed_module(&m.source)?,
            &StrictGrCat::from_crossed_module(&m.target)?,
            m,
            c_tilde,
        )
    }

    fn from_parts_in(source: &StrictGrCat, target: &StrictGrCat, m: &XModMorphism, c_tilde: usize) -> Result<Self> {
        if c_tilde >= m.target.group_b().order() {
            return Err(Error::InvalidFunctor(format!("c̃ = {c_tilde} is not an element of B'")));
        }
        Ok(GrFunctor {
            source: source.clone(),
            target: target.clone(),
            source_xm: m.source.clone(),
            target_xm: m.target.clone(),
            f1: m.f1.clone(),
            f0: m.f0.clone(),
            c_tilde,
        })
    }

    pub fn source(&self) -> &StrictGrCat {
        &self.source
    }

    pub fn target(&self) -> &StrictGrCat {
        &self.target
    }

    pub fn source_module(&self) -> &CrossedModule {
        &self.source_xm
    }

    pub fn target_module(&self) -> &CrossedModule {
        &self.target_xm
    }

    pub fn c_tilde(&self) -> usize {
        self.c_tilde
    }

    pub fn object_map(&self) -> &GroupHom {
        &self.f0
    }

    pub fn label_map(&self) -> &GroupHom {
        &self.f1
    }

    /// Single: the monoidal structure is the identity.
    pub fn is_single(&self) -> bool {
        self.c_tilde == 0
    }

    /// `F(a)`, or `None` if the image triple is not an arrow of `P′`.
    pub fn map_arrow(&self, a: usize) -> Option<usize> {
        let arr = self.source.arrow(a);
        self.target.find(Arrow {
            source: self.f0.apply(arr.source),
            label: self.f1.apply(arr.label),
            target: self.f0.apply(arr.target),
        })
    }

    /// `F̃_{x,y}: F(x) ⊗ F(y) -> F(x ⊗ y)`.
    pub fn structure(&self, x: usize, y: usize) -> Option<usize> {
        let fxy = self.f0.apply(self.source.objects().mul(x, y));
        self.target.find(Arrow {
            source: fxy,
            label: self.c_tilde,
            target: fxy,
        })
    }

    /// `F_*: 1 -> F(1)`, the unit constraint `-c̃`.
    pub fn unit_constraint(&self) -> Option<usize> {
        self.target.find(Arrow {
            source: 0,
            label: self.target_xm.group_b().inv(self.c_tilde),
            target: 0,
        })
    }

    /// Checks functoriality, `c̃ ∈ Ker d′` fixed by every `θ′_{f0(x)}`,
    /// naturality of `F̃`, its compatibility with the associativity and unit
    /// constraints, all by evaluating arrows in the two categories.
    pub fn check(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidFunctor(msg));
        let (src, tgt) = (&self.source, &self.target);
        if self.target_xm.d(self.c_tilde) != 0 {
            return fail(format!("c̃ = {} is not in Ker d'", self.c_tilde));
        }
        for x in src.objects().elements() {
            let fx = self.f0.apply(x);
            if self.target_xm.act(fx, self.c_tilde) != self.c_tilde {
                return fail(format!("θ'_{fx} moves c̃"));
            }
        }
        let n = src.arrow_count();
        let mut image = Vec::with_capacity(n);
        for a in 0..n {
            match self.map_arrow(a) {
                Some(fa) => image.push(fa),
                None => return fail(format!("image of arrow {a} is not an arrow")),
            }
        }
        for x in src.objects().elements() {
            if image[src.id(x)] != tgt.id(self.f0.apply(x)) {
                return fail(format!("identity of {x} is not preserved"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if let Some(ab) = src.then(a, b) {
                    if tgt.then(image[a], image[b]) != Some(image[ab]) {
                        return fail(format!("composition of arrows {a}, {b} is not preserved"));
                    }
                }
            }
        }
        let objs = src.objects();
        let structure = |x: usize, y: usize| -> Result<usize> {
            self.structure(x, y)
                .ok_or_else(|| Error::InvalidFunctor(format!("F̃_({x},{y}) is not an arrow")))
        };
        // naturality: (F a ⊗ F b) then F̃_{y,y′} = F̃_{x,x′} then F(a ⊗ b)
        for a in 0..n {
            let aa = src.arrow(a);
            for b in 0..n {
                let bb = src.arrow(b);
                let left = tgt.then(tgt.tensor(image[a], image[b]), structure(aa.target, bb.target)?);
                let right = tgt.then(structure(aa.source, bb.source)?, image[src.tensor(a, b)]);
                if left.is_none() || left != right {
                    return fail(format!("F̃ is not natural at arrows ({a}, {b})"));
                }
            }
        }
        // associativity: (F̃_{x,y} ⊗ id) then F̃_{xy,z} = (id ⊗ F̃_{y,z}) then F̃_{x,yz}
        for x in objs.elements() {
            let fx = self.f0.apply(x);
            for y in objs.elements() {
                let xy = objs.mul(x, y);
                for z in objs.elements() {
                    let fz = self.f0.apply(z);
                    let yz = objs.mul(y, z);
                    let left = tgt.then(tgt.tensor(structure(x, y)?, tgt.id(fz)), structure(xy, z)?);
                    let right = tgt.then(tgt.tensor(tgt.id(fx), structure(y, z)?), structure(x, yz)?);
                    if left.is_none() || left != right {
                        return fail(format!("F̃ is not compatible with associativity at ({x}, {y}, {z})"));
                    }
                }
            }
        }
        // unit: (F_* ⊗ id) then F̃_{1,x} = id = (id ⊗ F_*) then F̃_{x,1}
        let unit = self
            .unit_constraint()
            .ok_or_else(|| Error::InvalidFunctor("F_* is not an arrow".into()))?;
        for x in objs.elements() {
            let fx = self.f0.apply(x);
            let left = tgt.then(tgt.tensor(unit, tgt.id(fx)), structure(0, x)?);
            let right = tgt.then(tgt.tensor(tgt.id(fx), unit), structure(x, 0)?);
            if left != Some(tgt.id(fx)) || right != Some(tgt.id(fx)) {
                return fail(format!("F̃ is not compatible with the unit at {x}"));
            }
        }
        Ok(())
    }

    /// The morphism `(f1, f0)` read off a single functor's action on arrows
    /// into the unit.
    pub fn to_morphism(&self) -> Result<XModMorphism> {
        if !self.is_single() {
            return Err(Error::InvalidFunctor("functor is not single".into()));
        }
        let b = self.source_xm.group_b();
        let images = b
            .elements()
            .map(|c| {
                let a = self
                    .source
                    .find(Arrow {
                        source: self.source_xm.d(c),
                        label: c,
                        target: 0,
                    })
                    .ok_or_else(|| Error::Internal(format!("arrow for {c} is missing")))?;
                let fa = self
                    .map_arrow(a)
                    .ok_or_else(|| Error::InvalidFunctor(format!("image of arrow {a} is missing")))?;
                Ok(self.target.arrow(fa).label)
            })
            .collect::<Result<Vec<_>>>()?;
        let objects = self.source.objects().elements().map(|x| {
            let fa = self.map_arrow(self.source.id(x)).expect("checked functor");
            self.target.arrow(fa).source
        });
        let f1 = GroupHom::new(b, self.target_xm.group_b(), images)?;
        let f0 = GroupHom::new(self.source_xm.group_d(), self.target_xm.group_d(), objects.collect())?;
        let m = XModMorphism::new(&self.source_xm, &self.target_xm, f1, f0)?;
        let report = m.validate();
        if !report.is_valid() {
            return Err(Error::Internal(format!("single functor gave an invalid morphism: {report}")));
        }
        Ok(m)
    }
}

/// A homotopy `F => G` with components `α_x = (F x --a--> G x)`.
///
/// Returns `a = c̃_F − c̃_G` after checking naturality, compatibility with
/// `F̃`, `G̃` and with the unit constraints in the target category, or `None`
/// when `F` and `G` differ as functors.
pub fn are_strong_homotopic(f: &GrFunctor, g: &GrFunctor) -> Result<Option<usize>> {
    if f.source_xm != g.source_xm || f.target_xm != g.target_xm {
        return Err(Error::InvalidFunctor("functors have different source or target".into()));
    }
    if f.f0 != g.f0 || f.f1 != g.f1 {
        return Ok(None);
    }
    let tb = f.target_xm.group_b();
    let a = tb.mul(f.c_tilde, tb.inv(g.c_tilde));
    let (src, tgt) = (&f.source, &f.target);
    let alpha = |x: usize| -> Result<usize> {
        let fx = f.f0.apply(x);
        tgt.find(Arrow {
            source: fx,
            label: a,
            target: fx,
        })
        .ok_or_else(|| Error::Internal("homotopy component is not an arrow".into()))
    };
    let fail = |msg: String| Err(Error::Internal(format!("homotopy check failed: {msg}")));
    for i in 0..src.arrow_count() {
        let arr = src.arrow(i);
        let (fi, gi) = (f.map_arrow(i).unwrap(), g.map_arrow(i).unwrap());
        if tgt.then(fi, alpha(arr.target)?) != tgt.then(alpha(arr.source)?, gi) {
            return fail(format!("naturality at arrow {i}"));
        }
    }
    let objs = src.objects();
    for x in objs.elements() {
        for y in objs.elements() {
            let xy = objs.mul(x, y);
            let left = tgt.then(f.structure(x, y).unwrap(), alpha(xy)?);
            let right = tgt.then(tgt.tensor(alpha(x)?, alpha(y)?), g.structure(x, y).unwrap());
            if left.is_none() || left != right {
                return fail(format!("monoidal square at ({x}, {y})"));
            }
        }
    }
    if tgt.then(f.unit_constraint().unwrap(), alpha(0)?) != g.unit_constraint() {
        return fail("unit condition".into());
    }
    Ok(Some(a))
}

/// Counts from enumerating both sides of the correspondence between
/// morphisms of crossed modules and Gr-functors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub morphisms: usize,
    pub single_functors: usize,
    pub functors: usize,
    pub homotopy_classes: usize,
    /// Each single functor maps back to the morphism it came from, and
    /// functor and morphism sets correspond exactly.
    pub bijective: bool,
}

/// Enumerates all `(f1, f0, c̃)` and validates each as a Gr-functor purely
/// categorically; compares with the morphisms of crossed modules.
pub fn check_classification_iso(
    xm: &CrossedModule,
    xm2: &CrossedModule,
    limits: &Limits,
) -> Result<ClassificationReport> {
    let f1s = homomorphisms(xm.group_b(), xm2.group_b());
    let f0s = homomorphisms(xm.group_d(), xm2.group_d());
    let candidates = (f1s.len() * f0s.len() * xm2.group_b().order()) as u128;
    limits.check_budget("functor candidates", candidates)?;
    let src = StrictGrCat::from_crossed_module(xm)?;
    let tgt = StrictGrCat::from_crossed_module(xm2)?;
    let morphs = morphisms(xm, xm2);

    let mut functors = Vec::new();
    for f0 in &f0s {
        for f1 in &f1s {
            let m = XModMorphism::new(xm, xm2, f1.clone(), f0.clone())?;
            for c in xm2.group_b().elements() {
                let f = GrFunctor::from_parts_in(&src, &tgt, &m, c)?;
                if f.check().is_ok() {
                    functors.push(f);
                }
            }
        }
    }
    let singles: Vec<&GrFunctor> = functors.iter().filter(|f| f.is_single()).collect();
    let mut bijective = singles.len() == morphs.len();
    for f in &singles {
        match f.to_morphism() {
            Ok(m) => bijective &= morphs.contains(&m) && m.f1 == f.f1 && m.f0 == f.f0,
            Err(_) => bijective = false,
        }
    }
    // strong homotopy classes, by comparing against one member of each class
    let mut reps: Vec<&GrFunctor> = Vec::new();
    for f in &functors {
        let mut found = false;
        for r in &reps {
            if are_strong_homotopic(f, r)?.is_some() {
                found = true;
                break;
            }
        }
        if !found {
            reps.push(f);
        }
    }
    bijective &= reps.len() == morphs.len();
    Ok(ClassificationReport {
        morphisms: morphs.len(),
        single_functors: singles.len(),
        functors: functors.len(),
        homotopy_classes: reps.len(),
        bijective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{normal_subgroups, Subgroup};

    fn z(n: usize) -> FiniteGroup {
        FiniteGroup::cyclic(n)
    }

    fn z2_to_1() -> CrossedModule {
        CrossedModule::new(&z(2), &FiniteGroup::trivial(), vec![0, 0], vec![vec![0, 1]]).unwrap()
    }

    fn inversion() -> CrossedModule {
        let theta = (0..4)
            .map(|x| if x % 2 == 1 { vec![0, 3, 2, 1] } else { vec![0, 1, 2, 3] })
            .collect();
        CrossedModule::new(&z(4), &z(4), vec![0, 2, 0, 2], theta).unwrap()
    }

    #[test]
    fn hom_sets_of_the_inversion_category() {
        let cat = StrictGrCat::from_crossed_module(&inversion()).unwrap();
        assert_eq!(cat.objects().order(), 4);
        let labels: Vec<usize> = cat.hom(0, 2).iter().map(|&a| cat.arrow(a).label).collect();
        assert_eq!(labels, vec![1, 3]);
        for x in 0..4 {
            assert!(cat.hom(x, x).iter().any(|&a| cat.arrow(a).label == 0));
            for y in 0..4 {
                let expected = if (x + y) % 2 == 0 { 2 } else { 0 };
                assert_eq!(cat.hom(x, y).len(), expected);
            }
        }
    }

    #[test]
    fn one_object_categories() {
        let cat = StrictGrCat::from_crossed_module(&z2_to_1()).unwrap();
        assert_eq!(cat.arrow_count(), 2);
        let one = CrossedModule::new(&FiniteGroup::trivial(), &FiniteGroup::trivial(), vec![0], vec![vec![0]]).unwrap();
        let cat = StrictGrCat::from_crossed_module(&one).unwrap();
        let (back, _) = cat.to_crossed_module().unwrap();
        assert_eq!(back.group_b().order(), 1);
        assert_eq!(back.group_d().order(), 1);
    }

    #[test]
    fn round_trips() {
        let s3 = FiniteGroup::symmetric(3);
        let mut cases = vec![z2_to_1(), inversion()];
        for n in normal_subgroups(&s3) {
            cases.push(CrossedModule::from_normal_subgroup(&s3, &n).unwrap());
        }
        cases.push(CrossedModule::automorphism_module(&z(3), 16).unwrap());
        for xm in &cases {
            round_trip_isomorphism(xm).unwrap();
        }
    }

    #[test]
    fn malformed_tables_are_rejected() {
        let cat = StrictGrCat::from_crossed_module(&inversion()).unwrap();
        let n = cat.arrow_count();
        let compose: Vec<Vec<Option<usize>>> = (0..n).map(|i| (0..n).map(|j| cat.then(i, j)).collect()).collect();
        let mut tensor: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| cat.tensor(i, j)).collect()).collect();
        assert!(StrictGrCat::from_tables(cat.objects(), cat.arrows().to_vec(), compose.clone(), tensor.clone()).is_ok());
        // swap two arrows of Hom(0,2) in one tensor entry: endpoints still fit, strictness breaks
        let a = cat.find(Arrow { source: 2, label: 1, target: 0 }).unwrap();
        let b = cat.find(Arrow { source: 0, label: 0, target: 0 }).unwrap();
        let swapped = cat.find(Arrow { source: 2, label: 3, target: 0 }).unwrap();
        assert_eq!(tensor[a][b], a);
        tensor[a][b] = swapped;
        assert!(StrictGrCat::from_tables(cat.objects(), cat.arrows().to_vec(), compose, tensor).is_err());
    }

    #[test]
    fn functors_from_morphisms() {
        let xm = z2_to_1();
        let id = XModMorphism::identity(&xm);
        let f = GrFunctor::from_morphism(&id, 0).unwrap();
        assert!(f.is_single());
        assert_eq!(f.to_morphism().unwrap(), id);
        let g = GrFunctor::from_morphism(&id, 1).unwrap();
        assert_eq!(are_strong_homotopic(&g, &f).unwrap(), Some(1));
        assert_eq!(are_strong_homotopic(&f, &f).unwrap(), Some(0));
        assert!(g.to_morphism().is_err());
        let zero = XModMorphism::new(&xm, &xm, GroupHom::trivial(&z(2), &z(2)), GroupHom::identity(&FiniteGroup::trivial())).unwrap();
        let h = GrFunctor::from_morphism(&zero, 0).unwrap();
        assert_eq!(are_strong_homotopic(&f, &h).unwrap(), None);
    }

    #[test]
    fn c_tilde_must_be_fixed_and_in_kernel() {
        // Z/4 -> 1 with Z/2 acting by inversion: c̃ = 1 is moved, c̃ = 2 is fixed
        let theta = vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]];
        let xm = CrossedModule::module(&z(4), &z(2), theta).unwrap();
        let id = XModMorphism::identity(&xm);
        assert!(GrFunctor::from_morphism(&id, 1).is_err());
        assert!(GrFunctor::from_morphism(&id, 2).is_ok());
        let inv = inversion();
        assert!(GrFunctor::from_morphism(&XModMorphism::identity(&inv), 1).is_err());
        assert!(GrFunctor::from_morphism(&XModMorphism::identity(&inv), 2).is_ok());
    }

    #[test]
    fn classification_counts() {
        let limits = Limits::default();
        let xm = z2_to_1();
        let r = check_classification_iso(&xm, &xm, &limits).unwrap();
        assert_eq!((r.morphisms, r.single_functors, r.homotopy_classes), (2, 2, 2));
        assert_eq!(r.functors, 4);
        assert!(r.bijective);
        let inv = inversion();
        let r = check_classification_iso(&inv, &inv, &limits).unwrap();
        assert!(r.bijective);
        assert_eq!(r.morphisms, r.homotopy_classes);
        let trivial = CrossedModule::from_normal_subgroup(&z(2), &Subgroup::trivial(&z(2))).unwrap();
        let r = check_classification_iso(&trivial, &inv, &limits).unwrap();
        assert!(r.bijective);
    }

    #[test]
    fn functors_preserve_tensor() {
        let s3 = FiniteGroup::symmetric(3);
        let a3 = CrossedModule::from_normal_subgroup(&s3, &Subgroup::generated_by(&s3, &[3])).unwrap();
        for m in morphisms(&a3, &a3) {
            let f = GrFunctor::from_morphism(&m, 0).unwrap();
            let cat = f.source();
            for a in 0..cat.arrow_count() {
                for b in 0..cat.arrow_count() {
                    let lhs = f.map_arrow(cat.tensor(a, b)).unwrap();
                    let rhs = f.target().tensor(f.map_arrow(a).unwrap(), f.map_arrow(b).unwrap());
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
