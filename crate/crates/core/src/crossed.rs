//! Crossed modules `(B, D, d, θ)`, their derived data and morphisms.
//!
//! `B` is written additively and `D` multiplicatively. `θ` is stored as one
//! image table per element of `D`.

use std::fmt;

use crate::cohomology::GModule;
use crate::error::{Error, Result};
use crate::group::{automorphism_group, homomorphisms, quotient, FiniteGroup, GroupHom, Quotient, Subgroup};

/// Which defining condition a witness violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    /// `θ_x` is not an automorphism of `B`.
    ThetaAutomorphism,
    /// `θ_{xy} ≠ θ_x θ_y` or `θ_1 ≠ id`.
    ThetaHomomorphism,
    /// `d(θ_x b) ≠ x d(b) x⁻¹`.
    Equivariance,
    /// `θ_{d(b)} ≠ μ_b`.
    Peiffer,
    /// `f0 ∘ d ≠ d′ ∘ f1`.
    Square,
    /// `f1(θ_x b) ≠ θ′_{f0 x} f1(b)`.
    Operator,
}

/// A violated condition with the pair of elements witnessing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub x: usize,
    pub b: usize,
    pub message: String,
}

/// All violations found by a validation pass; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    fn push(&mut self, axiom: Axiom, x: usize, b: usize, message: String) {
        self.violations.push(Violation { axiom, x, b, message });
    }

    fn summary(&self) -> String {
        self.violations
            .iter()
            .map(|v| v.message.as_str())
            .collect::<Vec<_>>()
            .join("; ")
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "{:?}: {}", v.axiom, v.message)?;
        }
        Ok(())
    }
}

/// A crossed module. Construct through [`CrossedModule::new`] to get a
/// validated value, or [`CrossedModule::from_parts`] to inspect a broken one.
#[derive(Clone, PartialEq, Eq)]
pub struct CrossedModule {
    b: FiniteGroup,
    d_group: FiniteGroup,
    d: GroupHom,
    theta: Vec<Vec<usize>>,
}

impl CrossedModule {
    /// Shape checks only: `d` is a homomorphism and `θ` has one table of
    /// in-range images per element of `D`.
    pub fn from_parts(
        b: &FiniteGroup,
        d_group: &FiniteGroup,
        d_images: Vec<usize>,
        theta: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let d = GroupHom::new(b, d_group, d_images)
            .map_err(|e| Error::InvalidCrossedModule(format!("boundary map: {e}")))?;
        if theta.len() != d_group.order() {
            return Err(Error::InvalidCrossedModule(format!(
                "theta has {} tables, D has order {}",
                theta.len(),
                d_group.order()
            )));
        }
        for (x, row) in theta.iter().enumerate() {
            if row.len() != b.order() || row.iter().any(|&v| v >= b.order()) {
                return Err(Error::InvalidCrossedModule(format!(
                    "theta table of {x} is not a map of B"
                )));
            }
        }
        Ok(CrossedModule {
            b: b.clone(),
            d_group: d_group.clone(),
            d,
            theta,
        })
    }

    /// [`CrossedModule::from_parts`] followed by [`CrossedModule::validate`].
    pub fn new(
        b: &FiniteGroup,
        d_group: &FiniteGroup,
        d_images: Vec<usize>,
        theta: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let xm = Self::from_parts(b, d_group, d_images, theta)?;
        let report = xm.validate();
        if !report.is_valid() {
            return Err(Error::InvalidCrossedModule(report.summary()));
        }
        Ok(xm)
    }

    /// `d: B -> D` with `D` acting on `B` by `θ_x = action(x)`.
    pub fn from_action(b: &FiniteGroup, d: &GroupHom, action: impl Fn(usize) -> Vec<usize>) -> Result<Self> {
        let theta = d.target().elements().map(action).collect();
        Self::new(b, d.target(), d.images().to_vec(), theta)
    }

    /// `B ◁ D` with the inclusion and conjugation.
    pub fn from_normal_subgroup(d_group: &FiniteGroup, sub: &Subgroup) -> Result<Self> {
        if sub.parent() != d_group {
            return Err(Error::NotSubgroup("subgroup of a different group".into()));
        }
        if let Some((member, by)) = sub.normality_witness() {
            return Err(Error::NotNormal { member, by });
        }
        let (b, incl) = sub.as_group(format!("N<{}", d_group.name()));
        let theta = d_group
            .elements()
            .map(|x| {
                b.elements()
                    .map(|y| sub.index_of(d_group.conj(x, incl.apply(y))).expect("normal"))
                    .collect()
            })
            .collect();
        Self::new(&b, d_group, incl.images().to_vec(), theta)
    }

    /// `B -> Aut B` sending `b` to conjugation, with `Aut B` acting tautologically.
    pub fn automorphism_module(b: &FiniteGroup, max_order: usize) -> Result<Self> {
        let (aut, auts) = automorphism_group(b, max_order)?;
        let inner: Vec<usize> = b
            .elements()
            .map(|x| {
                let conj: Vec<usize> = b.elements().map(|y| b.conj(x, y)).collect();
                auts.iter().position(|f| f.images() == conj.as_slice()).expect("inner automorphism")
            })
            .collect();
        let theta = auts.iter().map(|f| f.images().to_vec()).collect();
        Self::new(b, &aut, inner, theta)
    }

    /// Abelian `B` with `d` trivial and `D` acting through `action: D -> Aut B`.
    pub fn module(b: &FiniteGroup, d_group: &FiniteGroup, theta: Vec<Vec<usize>>) -> Result<Self> {
        Self::new(b, d_group, vec![0; b.order()], theta)
    }

    /// A surjection `d: B -> D` with central kernel; `D` acts by conjugation
    /// through any preimage.
    pub fn central_extension(d: &GroupHom) -> Result<Self> {
        let b = d.source();
        let mut lift = vec![usize::MAX; d.target().order()];
        for x in b.elements().rev() {
            lift[d.apply(x)] = x;
        }
        if lift.contains(&usize::MAX) {
            return Err(Error::InvalidCrossedModule("boundary map is not surjective".into()));
        }
        Self::from_action(b, d, |x| b.elements().map(|y| b.conj(lift[x], y)).collect())
    }

    /// The identity of `B` mapping onto `B` itself, with conjugation.
    pub fn identity_module(b: &FiniteGroup) -> Result<Self> {
        Self::from_normal_subgroup(b, &Subgroup::whole(b))
    }

    pub fn group_b(&self) -> &FiniteGroup {
        &self.b
    }

    pub fn group_d(&self) -> &FiniteGroup {
        &self.d_group
    }

    pub fn boundary(&self) -> &GroupHom {
        &self.d
    }

    /// `d(b)`.
    #[inline]
    pub fn d(&self, b: usize) -> usize {
        self.d.apply(b)
    }

    /// `θ_x(b)`.
    #[inline]
    pub fn act(&self, x: usize, b: usize) -> usize {
        self.theta[x][b]
    }

    pub fn theta_table(&self) -> &[Vec<usize>] {
        &self.theta
    }

    /// Checks every defining condition, recording one witness per failing
    /// condition and element of `D` (or of `B` for the Peiffer condition).
    pub fn validate(&self) -> ValidationReport {
        let (b, dg) = (&self.b, &self.d_group);
        let mut report = ValidationReport::default();
        for x in dg.elements() {
            if GroupHom::new(b, b, self.theta[x].clone()).map_or(true, |f| !f.is_bijective()) {
                report.push(
                    Axiom::ThetaAutomorphism,
                    x,
                    0,
                    format!("theta_{x} is not an automorphism of B"),
                );
            }
        }
        if let Some(y) = b.elements().find(|&y| self.theta[0][y] != y) {
            report.push(Axiom::ThetaHomomorphism, 0, y, format!("theta_1({y}) != {y}"));
        }
        for x in dg.elements() {
            'pair: for y in dg.elements() {
                let xy = dg.mul(x, y);
                for c in b.elements() {
                    if self.theta[xy][c] != self.theta[x][self.theta[y][c]] {
                        report.push(
                            Axiom::ThetaHomomorphism,
                            x,
                            c,
                            format!("theta_({x}*{y})({c}) != theta_{x}(theta_{y}({c}))"),
                        );
                        break 'pair;
                    }
                }
            }
        }
        for x in dg.elements() {
            if let Some(c) = b
                .elements()
                .find(|&c| self.d(self.theta[x][c]) != dg.conj(x, self.d(c)))
            {
                report.push(
                    Axiom::Equivariance,
                    x,
                    c,
                    format!("d(theta_{x}({c})) != {x} d({c}) {x}^-1"),
                );
            }
        }
        for c in b.elements() {
            let dc = self.d(c);
            if let Some(y) = b.elements().find(|&y| self.theta[dc][y] != b.conj(c, y)) {
                report.push(
                    Axiom::Peiffer,
                    c,
                    y,
                    format!("theta_d({c})({y}) != {c} + {y} - {c}"),
                );
            }
        }
        report
    }

    /// Kernel, image, cokernel and the induced action of the cokernel on the
    /// kernel, each re-checked.
    pub fn derive(&self) -> Result<DerivedData> {
        let ker_d = self.d.kernel();
        let center = Subgroup::center(&self.b);
        if let Some(&z) = ker_d.members().iter().find(|&&z| !center.contains(z)) {
            return Err(Error::InvalidCrossedModule(format!(
                "kernel element {z} is not central"
            )));
        }
        let im_d = self.d.image();
        let coker = quotient(&self.d_group, &im_d, format!("Coker({})", self.d_group.name()))
            .map_err(|e| Error::InvalidCrossedModule(format!("image of d: {e}")))?;
        let (ker_group, ker_incl) = ker_d.as_group(format!("Ker({})", self.b.name()));

        let restrict = |x: usize| -> Option<Vec<usize>> {
            ker_group
                .elements()
                .map(|a| ker_d.index_of(self.theta[x][ker_incl.apply(a)]))
                .collect()
        };
        let mut phi = Vec::with_capacity(coker.group.order());
        for &rep in &coker.section {
            phi.push(restrict(rep).ok_or_else(|| {
                Error::InvalidCrossedModule(format!("theta_{rep} does not preserve Ker d"))
            })?);
        }
        for x in self.d_group.elements() {
            let s = coker.projection.apply(x);
            if restrict(x).as_ref() != Some(&phi[s]) {
                return Err(Error::InvalidCrossedModule(format!(
                    "theta_{x} and theta_{} differ on Ker d",
                    coker.section[s]
                )));
            }
        }
        let phi = GModule::new(&coker.group, &ker_group, phi)?;
        Ok(DerivedData {
            ker_d,
            im_d,
            coker,
            ker_group,
            ker_incl,
            phi,
        })
    }
}

impl fmt::Debug for CrossedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CrossedModule({} -> {}, d = {:?})",
            self.b.name(),
            self.d_group.name(),
            self.d.images()
        )
    }
}

impl fmt::Display for CrossedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} --d--> {}", self.b, self.d_group)
    }
}

/// Kernel, image and cokernel of `d`, with `φ_s = θ_{x_s}|Ker d`.
#[derive(Clone, Debug)]
pub struct DerivedData {
    pub ker_d: Subgroup,
    pub im_d: Subgroup,
    /// `Coker d` with its projection `q` and the section of smallest coset members.
    pub coker: Quotient,
    /// `Ker d` as a group in its own right, with its inclusion into `B`.
    pub ker_group: FiniteGroup,
    pub ker_incl: GroupHom,
    /// `Ker d` as a `Coker d`-module.
    pub phi: GModule,
}

impl DerivedData {
    /// `φ` recomputed from an arbitrary section of `q`; equal to `self.phi`
    /// whenever the crossed module is valid.
    pub fn phi_for_section(&self, xm: &CrossedModule, section: &[usize]) -> Vec<Vec<usize>> {
        section
            .iter()
            .map(|&x| {
                self.ker_group
                    .elements()
                    .map(|a| {
                        let img = xm.act(x, self.ker_incl.apply(a));
                        self.ker_d.index_of(img).expect("theta preserves Ker d")
                    })
                    .collect()
            })
            .collect()
    }

    /// Position of `b` in the kernel group, if `b ∈ Ker d`.
    pub fn ker_index(&self, b: usize) -> Option<usize> {
        self.ker_d.index_of(b)
    }
}

/// A pair `(f1, f0)` between crossed modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XModMorphism {
    pub source: CrossedModule,
    pub target: CrossedModule,
    pub f1: GroupHom,
    pub f0: GroupHom,
}

impl XModMorphism {
    /// Shape checks: `f1: B -> B′` and `f0: D -> D′`.
    pub fn new(source: &CrossedModule, target: &CrossedModule, f1: GroupHom, f0: GroupHom) -> Result<Self> {
        if f1.source() != source.group_b() || f1.target() != target.group_b() {
            return Err(Error::InvalidMorphism("f1 is not a map B -> B'".into()));
        }
        if f0.source() != source.group_d() || f0.target() != target.group_d() {
            return Err(Error::InvalidMorphism("f0 is not a map D -> D'".into()));
        }
        Ok(XModMorphism {
            source: source.clone(),
            target: target.clone(),
            f1,
            f0,
        })
    }

    pub fn identity(xm: &CrossedModule) -> Self {
        XModMorphism {
            source: xm.clone(),
            target: xm.clone(),
            f1: GroupHom::identity(xm.group_b()),
            f0: GroupHom::identity(xm.group_d()),
        }
    }

    /// Checks the commuting square and the operator condition.
    pub fn validate(&self) -> ValidationReport {
        let (s, t) = (&self.source, &self.target);
        let mut report = ValidationReport::default();
        for b in s.group_b().elements() {
            if self.f0.apply(s.d(b)) != t.d(self.f1.apply(b)) {
                report.push(Axiom::Square, 0, b, format!("f0(d({b})) != d'(f1({b}))"));
            }
        }
        for x in s.group_d().elements() {
            let fx = self.f0.apply(x);
            if let Some(b) = s
                .group_b()
                .elements()
                .find(|&b| self.f1.apply(s.act(x, b)) != t.act(fx, self.f1.apply(b)))
            {
                report.push(
                    Axiom::Operator,
                    x,
                    b,
                    format!("f1(theta_{x}({b})) != theta'_f0({x})(f1({b}))"),
                );
            }
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    /// `next ∘ self`, componentwise.
    pub fn then(&self, next: &XModMorphism) -> Result<XModMorphism> {
        if self.target != next.source {
            return Err(Error::InvalidMorphism("composition of non-matching morphisms".into()));
        }
        Ok(XModMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            f1: self.f1.then(&next.f1)?,
            f0: self.f0.then(&next.f0)?,
        })
    }

    pub fn is_isomorphism(&self) -> bool {
        self.f1.is_bijective() && self.f0.is_bijective() && self.is_valid()
    }
}

/// Every morphism of crossed modules `source -> target`.
pub fn morphisms(source: &CrossedModule, target: &CrossedModule) -> Vec<XModMorphism> {
    let f1s = homomorphisms(source.group_b(), target.group_b());
    let f0s = homomorphisms(source.group_d(), target.group_d());
    let mut out = Vec::new();
    for f0 in &f0s {
        for f1 in &f1s {
            let m = XModMorphism {
                source: source.clone(),
                target: target.clone(),
                f1: f1.clone(),
                f0: f0.clone(),
            };
            if m.is_valid() {
                out.push(m);
            }
        }
    }
    out
}
