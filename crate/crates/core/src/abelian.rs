//! Cyclic decomposition of finite abelian groups.

use crate::error::{Error, Result};
use crate::group::{quotient, FiniteGroup, Subgroup};

/// An explicit isomorphism `A ≅ Z/m_1 ⊕ … ⊕ Z/m_k` with `m_1 | m_2 | … | m_k`.
#[derive(Clone, Debug)]
pub struct AbelianDecomposition {
    group: FiniteGroup,
    moduli: Vec<usize>,
    basis: Vec<usize>,
    coords: Vec<Vec<usize>>,
}

impl AbelianDecomposition {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// Invariant factors, each at least 2. Empty for the trivial group.
    pub fn moduli(&self) -> &[usize] {
        &self.moduli
    }

    /// The element generating each cyclic factor.
    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    /// Largest invariant factor, 1 for the trivial group.
    pub fn exponent(&self) -> usize {
        self.moduli.last().copied().unwrap_or(1)
    }

    pub fn to_coords(&self, a: usize) -> &[usize] {
        &self.coords[a]
    }

    /// `Σ c_i · basis_i`; coordinates are reduced modulo their factor.
    pub fn from_coords(&self, c: &[usize]) -> usize {
        let g = &self.group;
        self.basis
            .iter()
            .zip(c)
            .zip(&self.moduli)
            .fold(0, |acc, ((&b, &ci), &m)| g.mul(acc, g.pow(b, ci % m)))
    }
}

/// Decomposes an abelian group into cyclic factors.
pub fn abelian_decompose(a: &FiniteGroup) -> Result<AbelianDecomposition> {
    if !a.is_abelian() {
        return Err(Error::NotAbelian(a.name().to_string()));
    }
    let n = a.order();
    let mut primes = Vec::new();
    let mut rest = n;
    let mut p = 2;
    while rest > 1 {
        if rest.is_multiple_of(p) {
            primes.push(p);
            while rest.is_multiple_of(p) {
                rest /= p;
            }
        }
        p += 1;
    }

    // cyclic factors of each primary component, largest first
    let mut primary: Vec<Vec<(usize, usize)>> = Vec::new();
    for &p in &primes {
        let members: Vec<usize> = a
            .elements()
            .filter(|&x| is_power_of(a.element_order(x), p))
            .collect();
        let sub = Subgroup::new(a, &members)?;
        let (pg, incl) = sub.as_group(format!("{}_{p}", a.name()));
        let factors = decompose_p_group(&pg)?;
        primary.push(factors.into_iter().map(|(x, o)| (incl.apply(x), o)).collect());
    }

    // combine the i-th largest factor of every prime into one invariant factor
    let len = primary.iter().map(Vec::len).max().unwrap_or(0);
    let mut factors = Vec::with_capacity(len);
    for i in 0..len {
        let (mut gen, mut m) = (0, 1);
        for part in &primary {
            if let Some(&(x, o)) = part.get(i) {
                gen = a.mul(gen, x);
                m *= o;
            }
        }
        factors.push((gen, m));
    }
    factors.reverse();
    let moduli: Vec<usize> = factors.iter().map(|&(_, m)| m).collect();
    let basis: Vec<usize> = factors.iter().map(|&(g, _)| g).collect();

    let total: usize = moduli.iter().product();
    if total != n {
        return Err(Error::Internal(format!(
            "decomposition of {} has {} elements, expected {n}",
            a.name(),
            total
        )));
    }
    let mut coords = vec![Vec::new(); n];
    let mut seen = vec![false; n];
    let mut c = vec![0; moduli.len()];
    loop {
        let x = basis
            .iter()
            .zip(&c)
            .fold(0, |acc, (&b, &ci)| a.mul(acc, a.pow(b, ci)));
        if seen[x] {
            return Err(Error::Internal(format!(
                "decomposition of {} is not injective",
                a.name()
            )));
        }
        seen[x] = true;
        coords[x] = c.clone();
        if !increment(&mut c, &moduli) {
            break;
        }
    }
    let dec = AbelianDecomposition {
        group: a.clone(),
        moduli,
        basis,
        coords,
    };
    // addition is transported to coordinatewise addition
    for x in a.elements() {
        for y in a.elements() {
            let sum: Vec<usize> = dec.coords[x]
                .iter()
                .zip(&dec.coords[y])
                .zip(&dec.moduli)
                .map(|((&u, &v), &m)| (u + v) % m)
                .collect();
            if dec.coords[a.mul(x, y)] != sum {
                return Err(Error::Internal(format!(
                    "decomposition of {} does not transport addition",
                    a.name()
                )));
            }
        }
    }
    Ok(dec)
}

/// Mixed-radix increment; false after wrapping around.
pub(crate) fn increment(c: &mut [usize], radix: &[usize]) -> bool {
    for i in (0..c.len()).rev() {
        c[i] += 1;
        if c[i] < radix[i] {
            return true;
        }
        c[i] = 0;
    }
    false
}

fn is_power_of(mut k: usize, p: usize) -> bool {
    while k.is_multiple_of(p) {
        k /= p;
    }
    k == 1
}

/// Cyclic factors of an abelian p-group, largest first.
///
/// An element `a` of maximal order generates a direct summand, and every
/// coset of `<a>` contains an element of the same order as the coset, so the
/// factors of `P/<a>` lift to a complement.
fn decompose_p_group(p: &FiniteGroup) -> Result<Vec<(usize, usize)>> {
    if p.order() == 1 {
        return Ok(Vec::new());
    }
    let a = p
        .elements()
        .max_by_key(|&x| (p.element_order(x), std::cmp::Reverse(x)))
        .unwrap();
    let cyc = Subgroup::generated_by(p, &[a]);
    let q = quotient(p, &cyc, "quotient")?;
    let mut out = vec![(a, p.element_order(a))];
    for (c, m) in decompose_p_group(&q.group)? {
        let lift = p
            .elements()
            .find(|&x| q.projection.apply(x) == c && p.element_order(x) == m)
            .ok_or_else(|| Error::Internal("no lift of equal order".into()))?;
        out.push((lift, m));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FiniteGroup {
        FiniteGroup::cyclic(n)
    }

    #[test]
    fn small_decompositions() {
        assert_eq!(abelian_decompose(&z(4)).unwrap().moduli(), &[4]);
        let v4 = FiniteGroup::direct_product(&z(2), &z(2));
        assert_eq!(abelian_decompose(&v4).unwrap().moduli(), &[2, 2]);
        let z6 = FiniteGroup::direct_product(&z(2), &z(3));
        let dec = abelian_decompose(&z6).unwrap();
        assert_eq!(dec.moduli(), &[6]);
        for x in z6.elements() {
            assert_eq!(dec.from_coords(dec.to_coords(x)), x);
        }
        assert!(abelian_decompose(&FiniteGroup::trivial()).unwrap().moduli().is_empty());
    }

    #[test]
    fn mixed_factors() {
        let g = FiniteGroup::direct_product(&FiniteGroup::direct_product(&z(2), &z(4)), &z(3));
        assert_eq!(abelian_decompose(&g).unwrap().moduli(), &[2, 12]);
        let g = FiniteGroup::direct_product(&z(4), &z(4));
        assert_eq!(abelian_decompose(&g).unwrap().moduli(), &[4, 4]);
        let g = FiniteGroup::direct_product(&z(2), &FiniteGroup::direct_product(&z(2), &z(2)));
        assert_eq!(abelian_decompose(&g).unwrap().moduli(), &[2, 2, 2]);
    }

    #[test]
    fn rejects_non_abelian() {
        assert!(matches!(
            abelian_decompose(&FiniteGroup::symmetric(3)),
            Err(Error::NotAbelian(_))
        ));
    }
}
