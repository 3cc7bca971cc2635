//! JSON documents for groups, crossed modules, homomorphisms `ψ`, cochains,
//! reduced categories, extensions and classification reports.
//!
//! A group is `{"name": .., "table": [[..]]}` with the identity at index 0,
//! or `{"builtin": "Z/4"}` for one of the standard families (`Z/n`, `S<n>`,
//! `D<2n>`, `Q8`, `V4`, `1`). Elements of `Coker d` are numbered by their
//! smallest member in `D`, in increasing order.

use serde::{Deserialize, Serialize};

use crate::cohomology::{Cochain, CochainJson, GModule};
use crate::crossed::{CrossedModule, DerivedData};
use crate::error::{Error, Result};
use crate::extension::{Classification, Extension};
use crate::group::{FiniteGroup, GroupHom};
use crate::limits::Limits;
use crate::reduction::ReducedGrCat;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
}

impl GroupJson {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupJson {
            name: Some(g.name().to_string()),
            builtin: None,
            table: Some(g.table_rows()),
        }
    }

    pub fn to_group(&self, limits: &Limits) -> Result<FiniteGroup> {
        let g = match (&self.builtin, &self.table) {
            (Some(b), None) => builtin_group(b, limits)?,
            (None, Some(t)) => {
                if t.len() > limits.max_order {
                    return Err(Error::size("group order", t.len() as u128, limits.max_order as u128));
                }
                FiniteGroup::from_table(self.name.clone().unwrap_or_else(|| "G".into()), t.clone())?
            }
            _ => return Err(Error::Input("a group needs exactly one of `builtin` and `table`".into())),
        };
        Ok(match &self.name {
            Some(n) if self.builtin.is_some() => g.renamed(n.clone()),
            _ => g,
        })
    }
}

fn builtin_group(spec: &str, limits: &Limits) -> Result<FiniteGroup> {
    let bad = || Error::Input(format!("unknown builtin group {spec:?}"));
    let number = |s: &str| s.parse::<usize>().map_err(|_| bad());
    let (g_order, build): (usize, Box<dyn Fn() -> FiniteGroup>) = match spec.trim() {
        "1" | "trivial" => (1, Box::new(FiniteGroup::trivial)),
        "Q8" => (8, Box::new(FiniteGroup::quaternion)),
        "V4" => (4, Box::new(|| {
            FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)).renamed("V4")
        })),
        s if s.starts_with("Z/") => {
            let n = number(&s[2..])?;
            if n == 0 {
                return Err(bad());
            }
            (n, Box::new(move || FiniteGroup::cyclic(n)))
        }
        s if s.starts_with('S') => {
            let n = number(&s[1..])?;
            if n == 0 || n > 5 {
                return Err(bad());
            }
            ((1..=n).product(), Box::new(move || FiniteGroup::symmetric(n)))
        }
        s if s.starts_with('D') => {
            let m = number(&s[1..])?;
            if m < 2 || m % 2 == 1 {
                return Err(bad());
            }
            (m, Box::new(move || FiniteGroup::dihedral(m / 2)))
        }
        _ => return Err(bad()),
    };
    if g_order > limits.max_order {
        return Err(Error::size("group order", g_order as u128, limits.max_order as u128));
    }
    Ok(build())
}

/// `{"B": group, "D": group, "d": [images], "theta": [[images per x]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct CrossedModuleJson {
    pub B: GroupJson,
    pub D: GroupJson,
    pub d: Vec<usize>,
    pub theta: Vec<Vec<usize>>,
}

impl CrossedModuleJson {
    pub fn from_module(xm: &CrossedModule) -> Self {
        CrossedModuleJson {
            B: GroupJson::from_group(xm.group_b()),
            D: GroupJson::from_group(xm.group_d()),
            d: xm.boundary().images().to_vec(),
            theta: xm.theta_table().to_vec(),
        }
    }

    /// Parses without checking the crossed-module axioms.
    pub fn to_parts(&self, limits: &Limits) -> Result<CrossedModule> {
        let b = self.B.to_group(limits)?;
        let d = self.D.to_group(limits)?;
        CrossedModule::from_parts(&b, &d, self.d.clone(), self.theta.clone())
    }

    pub fn to_module(&self, limits: &Limits) -> Result<CrossedModule> {
        let xm = self.to_parts(limits)?;
        let report = xm.validate();
        if !report.is_valid() {
            return Err(Error::InvalidCrossedModule(report.to_string().trim().to_string()));
        }
        Ok(xm)
    }
}

/// `{"Q": group, "psi": [coset index of ψ(u) for each u]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct PsiJson {
    pub Q: GroupJson,
    pub psi: Vec<usize>,
}

impl PsiJson {
    pub fn from_hom(psi: &GroupHom) -> Self {
        PsiJson {
            Q: GroupJson::from_group(psi.source()),
            psi: psi.images().to_vec(),
        }
    }

    pub fn to_hom(&self, dd: &DerivedData, limits: &Limits) -> Result<GroupHom> {
        let q = self.Q.to_group(limits)?;
        GroupHom::new(&q, &dd.coker.group, self.psi.clone())
            .map_err(|e| Error::Input(format!("ψ is not a homomorphism Q -> Coker d: {e}")))
    }
}

/// A crossed-module document, optionally carrying `ψ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDoc {
    #[serde(flatten)]
    pub crossed_module: CrossedModuleJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<PsiJson>,
}

/// `{"A": group, "action": [[images per element of the acting group]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct ModuleJson {
    pub A: GroupJson,
    pub action: Vec<Vec<usize>>,
}

/// `{"pi0": group, "pi1": module, "k": cochain}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedJson {
    pub pi0: GroupJson,
    pub pi1: ModuleJson,
    pub k: CochainJson,
}

impl ReducedJson {
    pub fn from_reduced(r: &ReducedGrCat) -> Self {
        ReducedJson {
            pi0: GroupJson::from_group(&r.pi0),
            pi1: ModuleJson {
                A: GroupJson::from_group(r.pi1.coefficients()),
                action: r.pi1.action_table().to_vec(),
            },
            k: r.k.to_json(),
        }
    }

    /// Rebuilds the reduced category, re-checking that `k` is a cocycle.
    pub fn to_reduced(&self, limits: &Limits) -> Result<ReducedGrCat> {
        let pi0 = self.pi0.to_group(limits)?;
        let a = self.pi1.A.to_group(limits)?;
        let module = GModule::new(&pi0, &a, self.pi1.action.clone())?;
        let k = Cochain::from_json(&self.k, &module)?;
        ReducedGrCat::new(module, k)
    }
}

/// An extension over a crossed module given elsewhere in the document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct ExtensionJson {
    pub E: GroupJson,
    pub j: Vec<usize>,
    pub p: Vec<usize>,
    pub eps: Vec<usize>,
}

impl ExtensionJson {
    pub fn from_extension(e: &Extension) -> Self {
        ExtensionJson {
            E: GroupJson::from_group(&e.e),
            j: e.j.images().to_vec(),
            p: e.p.images().to_vec(),
            eps: e.eps.images().to_vec(),
        }
    }

    pub fn to_extension(&self, xm: &CrossedModule, q: &FiniteGroup, limits: &Limits) -> Result<Extension> {
        let e = self.E.to_group(limits)?;
        Ok(Extension {
            xm: xm.clone(),
            j: GroupHom::new(xm.group_b(), &e, self.j.clone())?,
            p: GroupHom::new(&e, q, self.p.clone())?,
            eps: GroupHom::new(&e, xm.group_d(), self.eps.clone())?,
            q: q.clone(),
            e,
        })
    }
}

/// Cross-check counts attached to a classification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleJson {
    pub classes: usize,
    pub factor_sets: usize,
    pub nominal_candidates: String,
    pub agrees: bool,
}

/// A self-contained classification report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub crossed_module: CrossedModuleJson,
    pub psi: PsiJson,
    pub obstruction_vanishes: bool,
    pub obstruction: CochainJson,
    pub h2_order: u64,
    pub class_count: usize,
    pub extensions: Vec<ExtensionJson>,
    /// `agrees`, `disagrees`, or why the cross-check was skipped.
    pub oracle_status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleJson>,
}

impl ClassificationReport {
    pub fn new(xm: &CrossedModule, c: &Classification) -> Self {
        ClassificationReport {
            crossed_module: CrossedModuleJson::from_module(xm),
            psi: PsiJson::from_hom(&c.psi),
            obstruction_vanishes: c.obstruction_vanishes,
            obstruction: c.obstruction.to_json(),
            h2_order: c.h2_order,
            class_count: c.extensions.len(),
            extensions: c.extensions.iter().map(ExtensionJson::from_extension).collect(),
            oracle_status: "not run".into(),
            oracle: None,
        }
    }

    /// Re-parses every component and re-validates the crossed module, `ψ`,
    /// the obstruction and each extension.
    pub fn revalidate(&self, limits: &Limits) -> Result<()> {
        let xm = self.crossed_module.to_module(limits)?;
        let dd = xm.derive()?;
        let psi = self.psi.to_hom(&dd, limits)?;
        let module = dd.phi.pullback(&psi)?;
        let obstruction = Cochain::from_json(&self.obstruction, &module)?;
        if !module.is_cocycle(&obstruction)? {
            return Err(Error::Input("obstruction is not a cocycle".into()));
        }
        if module.solve_coboundary(&obstruction)?.is_some() != self.obstruction_vanishes {
            return Err(Error::Input("obstruction status does not match its cochain".into()));
        }
        if self.class_count != self.extensions.len() {
            return Err(Error::Input("class count does not match the extensions listed".into()));
        }
        for (i, e) in self.extensions.iter().enumerate() {
            let ext = e.to_extension(&xm, psi.source(), limits)?;
            let report = ext.validate(&dd);
            if !report.is_valid() {
                return Err(Error::InvalidExtension(format!("class {i}: {report}")));
            }
            if ext.induced_psi(&dd)? != psi {
                return Err(Error::InvalidExtension(format!("class {i} induces another ψ")));
            }
        }
        Ok(())
    }
}

/// Parses a JSON document into `T`.
pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::classify;

    #[test]
    fn builtin_and_table_groups() {
        let limits = Limits::default();
        let g: GroupJson = from_json(r#"{"builtin": "S3"}"#).unwrap();
        assert_eq!(g.to_group(&limits).unwrap().order(), 6);
        let g: GroupJson = from_json(r#"{"name": "Z2", "table": [[0, 1], [1, 0]]}"#).unwrap();
        assert_eq!(g.to_group(&limits).unwrap(), FiniteGroup::cyclic(2));
        let bad: GroupJson = from_json(r#"{"table": [[0, 1], [1, 1]]}"#).unwrap();
        match bad.to_group(&limits) {
            Err(Error::InvalidTable { row, .. }) => assert_eq!(row, 1),
            other => panic!("expected a table error, got {other:?}"),
        }
        let big: GroupJson = from_json(r#"{"builtin": "Z/100"}"#).unwrap();
        assert!(matches!(big.to_group(&limits), Err(Error::SizeBound { .. })));
        assert!(from_json::<GroupJson>(r#"{"builtin": "Z/2", "table": [[0]]}"#).unwrap().to_group(&limits).is_err());
    }

    #[test]
    fn crossed_module_round_trip() {
        let limits = Limits::default();
        let text = r#"{
            "B": {"builtin": "Z/4"}, "D": {"builtin": "Z/4"},
            "d": [0, 2, 0, 2],
            "theta": [[0,1,2,3],[0,3,2,1],[0,1,2,3],[0,3,2,1]]
        }"#;
        let xm = from_json::<CrossedModuleJson>(text).unwrap().to_module(&limits).unwrap();
        let again = CrossedModuleJson::from_module(&xm);
        assert_eq!(again.to_module(&limits).unwrap(), xm);
        let bad = r#"{"B": {"builtin": "S3"}, "D": {"builtin": "1"}, "d": [0,0,0,0,0,0], "theta": [[0,1,2,3,4,5]]}"#;
        assert!(from_json::<CrossedModuleJson>(bad).unwrap().to_module(&limits).is_err());
    }

    #[test]
    fn report_round_trip() {
        let limits = Limits::default();
        let xm = CrossedModule::new(&FiniteGroup::cyclic(2), &FiniteGroup::trivial(), vec![0, 0], vec![vec![0, 1]]).unwrap();
        let psi = GroupHom::trivial(&FiniteGroup::cyclic(2), &FiniteGroup::trivial());
        let c = classify(&xm, &psi, 0, &limits).unwrap();
        let report = ClassificationReport::new(&xm, &c);
        let text = to_json(&report).unwrap();
        let back: ClassificationReport = from_json(&text).unwrap();
        assert_eq!(back, report);
        back.revalidate(&limits).unwrap();
        assert_eq!(to_json(&back).unwrap(), text);
    }

    #[test]
    fn reduced_round_trip() {
        let limits = Limits::default();
        let theta = (0..4).map(|x| if x % 2 == 1 { vec![0, 3, 2, 1] } else { vec![0, 1, 2, 3] }).collect();
        let xm = CrossedModule::new(&FiniteGroup::cyclic(4), &FiniteGroup::cyclic(4), vec![0, 2, 0, 2], theta).unwrap();
        let dd = xm.derive().unwrap();
        let st = crate::reduction::choose_stick(&xm, &dd, 0).unwrap();
        let red = crate::reduction::reduce(&xm, &dd, &st).unwrap();
        let json = ReducedJson::from_reduced(&red);
        let back = from_json::<ReducedJson>(&to_json(&json).unwrap()).unwrap().to_reduced(&limits).unwrap();
        assert_eq!(back.k, red.k);
    }
}
