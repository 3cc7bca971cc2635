//! Cochain enumeration, used to cross-check the linear-algebra routines on
//! small instances.

use std::collections::HashSet;

use super::{Cochain, GModule};
use crate::abelian::increment;
use crate::error::Result;
use crate::limits::{saturating_pow, Limits};

/// Calls `f` on every normalized cochain of the given degree.
pub fn for_each_cochain(
    m: &GModule,
    degree: usize,
    limits: &Limits,
    mut f: impl FnMut(&Cochain) -> bool,
) -> Result<()> {
    let a = m.coefficients().order();
    let t = m.tuple_count(degree);
    limits.check_budget("cochain enumeration", saturating_pow(a, t))?;
    let radix = vec![a; t];
    let mut c = m.zero_cochain(degree);
    loop {
        if !f(&c) {
            return Ok(());
        }
        if !increment(&mut c.values, &radix) {
            return Ok(());
        }
    }
}

/// `|H^n|` as `#cocycles / #distinct coboundaries`.
pub fn h_order(m: &GModule, n: usize, limits: &Limits) -> Result<u64> {
    let mut cocycles = 0u64;
    let mut err = None;
    for_each_cochain(m, n, limits, |c| match m.is_cocycle(c) {
        Ok(true) => {
            cocycles += 1;
            true
        }
        Ok(false) => true,
        Err(e) => {
            err = Some(e);
            false
        }
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    let mut boundaries = HashSet::new();
    for_each_cochain(m, n - 1, limits, |c| {
        boundaries.insert(m.coboundary(c).expect("degree in range").values);
        true
    })?;
    Ok(cocycles / boundaries.len() as u64)
}

/// Searches all `(n-1)`-cochains for a preimage of `target`.
pub fn solve(m: &GModule, target: &Cochain, limits: &Limits) -> Result<Option<Cochain>> {
    m.check(target)?;
    let mut found = None;
    for_each_cochain(m, target.degree() - 1, limits, |c| {
        if m.coboundary(c).expect("degree in range") == *target {
            found = Some(c.clone());
            false
        } else {
            true
        }
    })?;
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    #[test]
    fn agrees_with_linear_algebra() {
        let limits = Limits::default();
        let z = FiniteGroup::cyclic;
        let inv4 = vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]];
        let cases = vec![
            GModule::trivial(&z(2), &z(2)).unwrap(),
            GModule::trivial(&z(3), &z(3)).unwrap(),
            GModule::trivial(&z(2), &z(4)).unwrap(),
            GModule::new(&z(2), &z(4), inv4).unwrap(),
            GModule::trivial(&z(4), &z(2)).unwrap(),
        ];
        for m in &cases {
            assert_eq!(h_order(m, 2, &limits).unwrap(), m.h_order(2).unwrap(), "{m:?}");
        }
        for m in &cases[..2] {
            assert_eq!(h_order(m, 3, &limits).unwrap(), m.h_order(3).unwrap(), "{m:?}");
        }
    }

    #[test]
    fn budget_is_enforced() {
        let m = GModule::trivial(&FiniteGroup::cyclic(5), &FiniteGroup::cyclic(5)).unwrap();
        assert!(h_order(&m, 2, &Limits::default()).is_err());
    }
}
