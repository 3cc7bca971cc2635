//! Finite groups given by Cayley tables.
//!
//! Elements are the indices `0..n` and the identity is always element `0`.
//! Products of groups index the pair `(i, j)` as `i * |H| + j`; quotients
//! index cosets by their smallest member, so the identity coset is `0`.

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A finite group stored as a full multiplication table.
///
/// Cloning is cheap; the table is shared.
#[derive(Clone)]
pub struct FiniteGroup {
    inner: Arc<GroupData>,
}

struct GroupData {
    name: String,
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Builds a group from table rows, checking closure, the identity at
    /// index 0, inverses and associativity.
    pub fn from_table(name: impl Into<String>, rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidTable {
                row: 0,
                col: 0,
                reason: "empty table".into(),
            });
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable {
                    row: i,
                    col: row.len().min(n),
                    reason: format!("row has {} entries, expected {n}", row.len()),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::InvalidTable {
                        row: i,
                        col: j,
                        reason: format!("entry {v} is not an element index below {n}"),
                    });
                }
                table.push(v);
            }
        }
        Self::from_flat(name.into(), n, table)
    }

    /// Builds the table of `op` on `0..n`, then validates it.
    pub fn from_fn(name: impl Into<String>, n: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(op(i, j));
            }
        }
        if let Some((k, &v)) = table.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(Error::InvalidTable {
                row: k / n,
                col: k % n,
                reason: format!("entry {v} is not an element index below {n}"),
            });
        }
        Self::from_flat(name.into(), n, table)
    }

    fn from_flat(name: String, n: usize, table: Vec<usize>) -> Result<Self> {
        for i in 0..n {
            if table[i] != i {
                return Err(Error::InvalidTable {
                    row: 0,
                    col: i,
                    reason: "element 0 must be the identity".into(),
                });
            }
            if table[i * n] != i {
                return Err(Error::InvalidTable {
                    row: i,
                    col: 0,
                    reason: "element 0 must be the identity".into(),
                });
            }
        }
        // every row and column of a group table is a permutation
        for i in 0..n {
            let (mut in_row, mut in_col) = (vec![false; n], vec![false; n]);
            for j in 0..n {
                let (r, c) = (table[i * n + j], table[j * n + i]);
                if std::mem::replace(&mut in_row[r], true) {
                    return Err(Error::InvalidTable {
                        row: i,
                        col: j,
                        reason: format!("entry {r} repeats in its row"),
                    });
                }
                if std::mem::replace(&mut in_col[c], true) {
                    return Err(Error::InvalidTable {
                        row: j,
                        col: i,
                        reason: format!("entry {c} repeats in its column"),
                    });
                }
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for i in 0..n {
            let row = &table[i * n..(i + 1) * n];
            match row.iter().position(|&v| v == 0) {
                Some(j) if table[j * n + i] == 0 => inverse[i] = j,
                _ => {
                    return Err(Error::InvalidTable {
                        row: i,
                        col: 0,
                        reason: format!("element {i} has no two-sided inverse"),
                    })
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(Error::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            inner: Arc::new(GroupData {
                name,
                order: n,
                table,
                inverse,
            }),
        })
    }

    /// Builds a group from a list of concrete elements (identity first) and
    /// their multiplication.
    pub fn from_elements<T: PartialEq + Clone>(
        name: impl Into<String>,
        elements: &[T],
        mul: impl Fn(&T, &T) -> T,
    ) -> Result<Self> {
        let n = elements.len();
        let mut table = Vec::with_capacity(n * n);
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                let c = mul(a, b);
                let k = elements.iter().position(|e| *e == c).ok_or_else(|| Error::InvalidTable {
                    row: i,
                    col: j,
                    reason: "product leaves the element list".into(),
                })?;
                table.push(k);
            }
        }
        Self::from_flat(name.into(), n, table)
    }

    /// The cyclic group `Z/n` under addition.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group needs n >= 1");
        Self::from_fn(format!("Z/{n}"), n, |i, j| (i + j) % n).expect("Z/n is a group")
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `G x H` with `(i, j)` stored at index `i * |H| + j`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let m = h.order();
        let name = format!("{} x {}", g.name(), h.name());
        Self::from_fn(name, g.order() * m, |a, b| {
            g.mul(a / m, b / m) * m + h.mul(a % m, b % m)
        })
        .expect("direct product of groups is a group")
    }

    /// The symmetric group on `n` points; permutations in lexicographic order.
    pub fn symmetric(n: usize) -> Self {
        let mut perms = Vec::new();
        permutations(&mut (0..n).collect::<Vec<_>>(), 0, &mut perms);
        perms.sort();
        // composition: (p * q)(i) = p(q(i))
        Self::from_elements(format!("S{n}"), &perms, |p, q| q.iter().map(|&i| p[i]).collect())
            .expect("symmetric group")
    }

    /// The dihedral group of order `2n`; `r^i s^j` is stored at `j * n + i`.
    pub fn dihedral(n: usize) -> Self {
        Self::from_fn(format!("D{}", 2 * n), 2 * n, |a, b| {
            let (i1, j1) = (a % n, a / n);
            let (i2, j2) = (b % n, b / n);
            // r^i1 s^j1 r^i2 s^j2 = r^(i1 +- i2) s^(j1+j2)
            let i = if j1 == 0 { (i1 + i2) % n } else { (i1 + n - i2) % n };
            ((j1 + j2) % 2) * n + i
        })
        .expect("dihedral group")
    }

    /// The quaternion group of order 8: `{1, i, j, k}` then their negatives.
    pub fn quaternion() -> Self {
        // unit quaternion basis (sign, axis) with axis 0=1, 1=i, 2=j, 3=k
        let elems: Vec<(i8, usize)> = (0..8).map(|x| (if x < 4 { 1 } else { -1 }, x % 4)).collect();
        let mul_axis = |a: usize, b: usize| -> (i8, usize) {
            match (a, b) {
                (0, x) | (x, 0) => (1, x),
                (x, y) if x == y => (-1, 0),
                (1, 2) => (1, 3),
                (2, 3) => (1, 1),
                (3, 1) => (1, 2),
                (2, 1) => (-1, 3),
                (3, 2) => (-1, 1),
                (1, 3) => (-1, 2),
                _ => unreachable!(),
            }
        };
        Self::from_elements("Q8", &elems, |&(s1, a), &(s2, b)| {
            let (s, c) = mul_axis(a, b);
            (s1 * s2 * s, c)
        })
        .expect("quaternion group")
    }

    pub fn renamed(&self, name: impl Into<String>) -> Self {
        FiniteGroup {
            inner: Arc::new(GroupData {
                name: name.into(),
                order: self.inner.order,
                table: self.inner.table.clone(),
                inverse: self.inner.inverse.clone(),
            }),
        }
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn order(&self) -> usize {
        self.inner.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.inner.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.inner.table[a * self.inner.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inner.inverse[a]
    }

    /// `x a x^-1`.
    pub fn conj(&self, x: usize, a: usize) -> usize {
        self.mul(self.mul(x, a), self.inv(x))
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        self.elements().map(|a| self.element_order(a)).fold(1, lcm)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Table rows, as accepted by [`FiniteGroup::from_table`].
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.inner
            .table
            .chunks(self.inner.order)
            .map(|r| r.to_vec())
            .collect()
    }

    /// Membership mask of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.order()];
        mask[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !mask[y] {
                    mask[y] = true;
                    queue.push_back(y);
                }
            }
        }
        mask
    }

    /// A small generating set, picked greedily by decreasing element order.
    pub fn generators(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = self.elements().skip(1).collect();
        by_order.sort_by_key(|&a| (std::cmp::Reverse(self.element_order(a)), a));
        let mut gens = Vec::new();
        let mut mask = self.closure(&gens);
        for a in by_order {
            if !mask[a] {
                gens.push(a);
                mask = self.closure(&gens);
            }
        }
        gens
    }

    fn same_as(&self, other: &FiniteGroup) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.order == other.inner.order && self.inner.table == other.inner.table)
    }
}

/// Groups compare by their tables; names are ignored.
impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name(), self.order())
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name(), self.order())
    }
}

fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, out);
        items.swap(k, i);
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// A homomorphism between finite groups, stored by its images.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: FiniteGroup,
    target: FiniteGroup,
    images: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: &FiniteGroup, target: &FiniteGroup, images: Vec<usize>) -> Result<Self> {
        if images.len() != source.order() {
            return Err(Error::InvalidHom(format!(
                "{} images given for a source of order {}",
                images.len(),
                source.order()
            )));
        }
        if let Some((x, &y)) = images.iter().enumerate().find(|(_, &y)| y >= target.order()) {
            return Err(Error::InvalidHom(format!("image of {x} is {y}, outside the target")));
        }
        if images[0] != 0 {
            return Err(Error::InvalidHom("identity is not sent to the identity".into()));
        }
        for a in source.elements() {
            for b in source.elements() {
                if images[source.mul(a, b)] != target.mul(images[a], images[b]) {
                    return Err(Error::InvalidHom(format!(
                        "f({a}*{b}) != f({a})*f({b})"
                    )));
                }
            }
        }
        Ok(GroupHom {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    pub(crate) fn new_unchecked(source: &FiniteGroup, target: &FiniteGroup, images: Vec<usize>) -> Self {
        debug_assert_eq!(images.len(), source.order());
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            images,
        }
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        Self::new_unchecked(g, g, g.elements().collect())
    }

    pub fn trivial(source: &FiniteGroup, target: &FiniteGroup) -> Self {
        Self::new_unchecked(source, target, vec![0; source.order()])
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GroupHom) -> Result<GroupHom> {
        if self.target != next.source {
            return Err(Error::InvalidHom("composition of non-matching homomorphisms".into()));
        }
        Ok(Self::new_unchecked(
            &self.source,
            &next.target,
            self.images.iter().map(|&y| next.images[y]).collect(),
        ))
    }

    pub fn is_injective(&self) -> bool {
        self.images.iter().skip(1).all(|&y| y != 0)
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for &y in &self.images {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order() && self.is_injective()
    }

    pub fn inverse(&self) -> Option<GroupHom> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Some(Self::new_unchecked(&self.target, &self.source, inv))
    }

    pub fn kernel(&self) -> Subgroup {
        let mask = self.images.iter().map(|&y| y == 0).collect();
        Subgroup::from_mask_unchecked(&self.source, mask)
    }

    pub fn image(&self) -> Subgroup {
        let mut mask = vec![false; self.target.order()];
        for &y in &self.images {
            mask[y] = true;
        }
        Subgroup::from_mask_unchecked(&self.target, mask)
    }
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GroupHom({} -> {}, {:?})",
            self.source.name(),
            self.target.name(),
            self.images
        )
    }
}

/// A subgroup, stored as a membership mask over its parent.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: FiniteGroup,
    mask: Vec<bool>,
    members: Vec<usize>,
}

impl Subgroup {
    pub fn new(parent: &FiniteGroup, members: &[usize]) -> Result<Self> {
        let mut mask = vec![false; parent.order()];
        for &m in members {
            if m >= parent.order() {
                return Err(Error::NotSubgroup(format!("{m} is not an element")));
            }
            mask[m] = true;
        }
        if !mask[0] {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        for a in parent.elements().filter(|&a| mask[a]) {
            if !mask[parent.inv(a)] {
                return Err(Error::NotSubgroup(format!("inverse of {a} missing")));
            }
            for b in parent.elements().filter(|&b| mask[b]) {
                if !mask[parent.mul(a, b)] {
                    return Err(Error::NotSubgroup(format!("{a}*{b} missing")));
                }
            }
        }
        Ok(Self::from_mask_unchecked(parent, mask))
    }

    fn from_mask_unchecked(parent: &FiniteGroup, mask: Vec<bool>) -> Self {
        let members = (0..mask.len()).filter(|&i| mask[i]).collect();
        Subgroup {
            parent: parent.clone(),
            mask,
            members,
        }
    }

    pub fn generated_by(parent: &FiniteGroup, gens: &[usize]) -> Self {
        Self::from_mask_unchecked(parent, parent.closure(gens))
    }

    pub fn whole(parent: &FiniteGroup) -> Self {
        Self::from_mask_unchecked(parent, vec![true; parent.order()])
    }

    pub fn trivial(parent: &FiniteGroup) -> Self {
        Self::generated_by(parent, &[])
    }

    /// The center `Z(G)`.
    pub fn center(g: &FiniteGroup) -> Self {
        let mask = g
            .elements()
            .map(|a| g.elements().all(|b| g.mul(a, b) == g.mul(b, a)))
            .collect();
        Self::from_mask_unchecked(g, mask)
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    /// Position of `x` among the sorted members; this is its index in
    /// [`Subgroup::as_group`].
    pub fn index_of(&self, x: usize) -> Option<usize> {
        self.members.binary_search(&x).ok()
    }

    /// A witness `(member, conjugator)` leaving the subgroup, if any.
    pub fn normality_witness(&self) -> Option<(usize, usize)> {
        let g = &self.parent;
        for &n in &self.members {
            for x in g.elements() {
                if !self.mask[g.conj(x, n)] {
                    return Some((n, x));
                }
            }
        }
        None
    }

    pub fn is_normal(&self) -> bool {
        self.normality_witness().is_none()
    }

    /// The subgroup as a group in its own right (members re-indexed in
    /// increasing order), with the inclusion into the parent.
    pub fn as_group(&self, name: impl Into<String>) -> (FiniteGroup, GroupHom) {
        let g = &self.parent;
        let m = &self.members;
        let group = FiniteGroup::from_fn(name, m.len(), |a, b| {
            self.index_of(g.mul(m[a], m[b])).expect("closed subgroup")
        })
        .expect("subgroup is a group");
        let incl = GroupHom::new_unchecked(&group, g, m.clone());
        (group, incl)
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup of {}: {:?}", self.parent.name(), self.members)
    }
}

/// Every subgroup of `g`, ordered by size then membership.
pub fn all_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut found: Vec<Vec<bool>> = Vec::new();
    let mut queue = VecDeque::new();
    for a in g.elements() {
        let m = g.closure(&[a]);
        if !found.contains(&m) {
            found.push(m.clone());
            queue.push_back(m);
        }
    }
    while let Some(m) = queue.pop_front() {
        for a in g.elements().filter(|&a| !m[a]) {
            let mut gens: Vec<usize> = (0..m.len()).filter(|&i| m[i]).collect();
            gens.push(a);
            let joined = g.closure(&gens);
            if !found.contains(&joined) {
                found.push(joined.clone());
                queue.push_back(joined);
            }
        }
    }
    let mut subs: Vec<Subgroup> = found
        .into_iter()
        .map(|m| Subgroup::from_mask_unchecked(g, m))
        .collect();
    subs.sort_by(|a, b| (a.order(), &a.members).cmp(&(b.order(), &b.members)));
    subs
}

pub fn normal_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    all_subgroups(g).into_iter().filter(|s| s.is_normal()).collect()
}

/// `G / N` with a section of coset representatives.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// Smallest member of each coset; `section[0] == 0`.
    pub section: Vec<usize>,
    pub projection: GroupHom,
}

pub fn quotient(g: &FiniteGroup, n: &Subgroup, name: impl Into<String>) -> Result<Quotient> {
    if n.parent() != g {
        return Err(Error::NotSubgroup("subgroup of a different group".into()));
    }
    if let Some((member, by)) = n.normality_witness() {
        return Err(Error::NotNormal { member, by });
    }
    let mut coset = vec![usize::MAX; g.order()];
    let mut section = Vec::new();
    for x in g.elements() {
        if coset[x] == usize::MAX {
            let c = section.len();
            section.push(x);
            for &m in n.members() {
                coset[g.mul(x, m)] = c;
            }
        }
    }
    let group = FiniteGroup::from_fn(name, section.len(), |a, b| {
        coset[g.mul(section[a], section[b])]
    })?;
    let projection = GroupHom::new_unchecked(g, &group, coset);
    Ok(Quotient {
        group,
        section,
        projection,
    })
}

/// Images of `gens` determine at most one homomorphism; returns its full
/// image table when the assignment extends consistently.
fn extend_from_generators(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    imgs: &[usize],
) -> Option<Vec<Option<usize>>> {
    let mut map = vec![None; g.order()];
    map[0] = Some(0);
    let mut reached = vec![0];
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        let fx = map[x].unwrap();
        for (&s, &t) in gens.iter().zip(imgs) {
            let y = g.mul(x, s);
            let fy = h.mul(fx, t);
            match map[y] {
                None => {
                    map[y] = Some(fy);
                    reached.push(y);
                    queue.push_back(y);
                }
                Some(prev) if prev != fy => return None,
                _ => {}
            }
        }
    }
    for &a in &reached {
        for &b in &reached {
            if map[g.mul(a, b)] != Some(h.mul(map[a].unwrap(), map[b].unwrap())) {
                return None;
            }
        }
    }
    Some(map)
}

fn search_homs(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    chosen: &mut Vec<usize>,
    visit: &mut dyn FnMut(Vec<usize>) -> bool,
) -> bool {
    let k = chosen.len();
    if k == gens.len() {
        let map = extend_from_generators(g, h, gens, chosen).expect("checked at every level");
        return visit(map.into_iter().map(|y| y.unwrap()).collect());
    }
    for &c in &candidates[k] {
        chosen.push(c);
        let ok = extend_from_generators(g, h, &gens[..=k], chosen).is_some();
        if ok && !search_homs(g, h, gens, candidates, chosen, visit) {
            chosen.pop();
            return false;
        }
        chosen.pop();
    }
    true
}

/// Every homomorphism `g -> h`, found by assigning images to generators.
pub fn homomorphisms(g: &FiniteGroup, h: &FiniteGroup) -> Vec<GroupHom> {
    let gens = g.generators();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let o = g.element_order(s);
            h.elements().filter(|&t| o.is_multiple_of(h.element_order(t))).collect()
        })
        .collect();
    let mut out = Vec::new();
    search_homs(g, h, &gens, &candidates, &mut Vec::new(), &mut |images| {
        out.push(GroupHom::new_unchecked(g, h, images));
        true
    });
    out
}

fn order_profile(g: &FiniteGroup) -> Vec<usize> {
    let mut v: Vec<usize> = g.elements().map(|a| g.element_order(a)).collect();
    v.sort_unstable();
    v
}

/// Some isomorphism `g -> h`, if one exists.
pub fn is_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Option<GroupHom> {
    if g.order() != h.order() || order_profile(g) != order_profile(h) {
        return None;
    }
    if g == h {
        return Some(GroupHom::identity(g));
    }
    let gens = g.generators();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let o = g.element_order(s);
            h.elements().filter(|&t| h.element_order(t) == o).collect()
        })
        .collect();
    let mut found = None;
    search_homs(g, h, &gens, &candidates, &mut Vec::new(), &mut |images| {
        let f = GroupHom::new_unchecked(g, h, images);
        if f.is_bijective() {
            found = Some(f);
            false
        } else {
            true
        }
    });
    found
}

/// All automorphisms of `g`, the identity first.
pub fn automorphisms(g: &FiniteGroup, max_order: usize) -> Result<Vec<GroupHom>> {
    if g.order() > max_order {
        return Err(Error::size(
            format!("automorphism search on {}", g.name()),
            g.order() as u128,
            max_order as u128,
        ));
    }
    let gens = g.generators();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let o = g.element_order(s);
            g.elements().filter(|&t| g.element_order(t) == o).collect()
        })
        .collect();
    let mut out = Vec::new();
    search_homs(g, g, &gens, &candidates, &mut Vec::new(), &mut |images| {
        let f = GroupHom::new_unchecked(g, g, images);
        if f.is_bijective() {
            out.push(f);
        }
        true
    });
    let id = out
        .iter()
        .position(|f| f.images().iter().enumerate().all(|(x, &y)| x == y))
        .expect("identity is an automorphism");
    out.swap(0, id);
    Ok(out)
}

/// `Aut(g)` as a table group, together with the automorphism at each index.
/// The product `a * b` is the composite "apply `b`, then `a`".
pub fn automorphism_group(g: &FiniteGroup, max_order: usize) -> Result<(FiniteGroup, Vec<GroupHom>)> {
    let auts = automorphisms(g, max_order)?;
    let tables: Vec<&[usize]> = auts.iter().map(|f| f.images()).collect();
    let group = FiniteGroup::from_fn(format!("Aut({})", g.name()), auts.len(), |a, b| {
        let composite: Vec<usize> = tables[b].iter().map(|&y| tables[a][y]).collect();
        tables.iter().position(|t| *t == composite.as_slice()).expect("closed")
    })?;
    Ok((group, auts))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_tables() {
        let z1 = FiniteGroup::cyclic(1);
        assert_eq!(z1.order(), 1);
        let z4 = FiniteGroup::cyclic(4);
        assert_eq!(z4.inv(1), 3);
        assert_eq!(z4.mul(2, 3), 1);
    }

    #[test]
    fn products() {
        let z2 = FiniteGroup::cyclic(2);
        let v4 = FiniteGroup::direct_product(&z2, &z2);
        assert_eq!(v4.order(), 4);
        assert_eq!(v4.exponent(), 2);
        let z6 = FiniteGroup::direct_product(&z2, &FiniteGroup::cyclic(3));
        assert!(is_isomorphic(&z6, &FiniteGroup::cyclic(6)).is_some());
        let g = FiniteGroup::symmetric(3);
        let gt = FiniteGroup::direct_product(&g, &FiniteGroup::trivial());
        assert!(is_isomorphic(&g, &gt).is_some());
    }

    #[test]
    fn kernel_image_center() {
        let z4 = FiniteGroup::cyclic(4);
        let d = GroupHom::new(&z4, &z4, vec![0, 2, 0, 2]).unwrap();
        assert_eq!(d.kernel().members(), &[0, 2]);
        assert_eq!(d.image().members(), &[0, 2]);
        assert!(d.image().is_normal());
        let s3 = FiniteGroup::symmetric(3);
        // exhaustive commutation check
        let center: Vec<usize> = s3
            .elements()
            .filter(|&a| s3.elements().all(|b| s3.mul(a, b) == s3.mul(b, a)))
            .collect();
        assert_eq!(center, vec![0]);
        assert_eq!(Subgroup::center(&s3).members(), center.as_slice());
    }

    #[test]
    fn quotients() {
        let z4 = FiniteGroup::cyclic(4);
        let n = Subgroup::new(&z4, &[0, 2]).unwrap();
        let q = quotient(&z4, &n, "Z/4 / 2Z").unwrap();
        assert!(is_isomorphic(&q.group, &FiniteGroup::cyclic(2)).is_some());
        assert_eq!(q.section, vec![0, 1]);
        for (c, &rep) in q.section.iter().enumerate() {
            assert_eq!(q.projection.apply(rep), c);
        }
        assert_eq!(q.projection.kernel(), n);

        let s3 = FiniteGroup::symmetric(3);
        let t = quotient(&s3, &Subgroup::trivial(&s3), "S3/1").unwrap();
        assert!(is_isomorphic(&t.group, &s3).is_some());
        let w = quotient(&s3, &Subgroup::whole(&s3), "S3/S3").unwrap();
        assert_eq!(w.group.order(), 1);

        let non_normal = Subgroup::generated_by(&s3, &[1]);
        assert_eq!(non_normal.order(), 2);
        assert!(matches!(quotient(&s3, &non_normal, "x"), Err(Error::NotNormal { .. })));
    }

    /// Brute force over all bijections fixing 0.
    fn brute_aut_count(g: &FiniteGroup) -> usize {
        let mut perms = Vec::new();
        permutations(&mut (1..g.order()).collect(), 0, &mut perms);
        perms
            .into_iter()
            .filter(|p| {
                let f: Vec<usize> = std::iter::once(0).chain(p.iter().copied()).collect();
                g.elements()
                    .all(|a| g.elements().all(|b| f[g.mul(a, b)] == g.mul(f[a], f[b])))
            })
            .count()
    }

    #[test]
    fn automorphism_counts() {
        let z4 = FiniteGroup::cyclic(4);
        let v4 = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        assert_eq!(brute_aut_count(&z4), 2);
        assert_eq!(brute_aut_count(&v4), 6);
        assert_eq!(automorphisms(&z4, 16).unwrap().len(), 2);
        assert_eq!(automorphisms(&v4, 16).unwrap().len(), 6);
        assert_eq!(automorphisms(&FiniteGroup::trivial(), 16).unwrap().len(), 1);
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(automorphisms(&s3, 16).unwrap().len(), brute_aut_count(&s3));
        let d8 = FiniteGroup::dihedral(4);
        assert_eq!(automorphisms(&d8, 16).unwrap().len(), brute_aut_count(&d8));
        assert!(matches!(
            automorphisms(&FiniteGroup::cyclic(17), 16),
            Err(Error::SizeBound { .. })
        ));
    }

    #[test]
    fn automorphism_group_is_closed() {
        let v4 = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        let (aut, maps) = automorphism_group(&v4, 16).unwrap();
        assert_eq!(aut.order(), 6);
        assert!(is_isomorphic(&aut, &FiniteGroup::symmetric(3)).is_some());
        assert_eq!(maps[0], GroupHom::identity(&v4));
    }

    #[test]
    fn isomorphism_tests() {
        let z4 = FiniteGroup::cyclic(4);
        let v4 = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        assert!(is_isomorphic(&z4, &v4).is_none());
        assert_eq!(is_isomorphic(&z4, &z4).unwrap(), GroupHom::identity(&z4));
        assert!(is_isomorphic(&FiniteGroup::quaternion(), &FiniteGroup::dihedral(4)).is_none());
        assert!(is_isomorphic(&FiniteGroup::dihedral(3), &FiniteGroup::symmetric(3)).is_some());
    }

    #[test]
    fn hom_counts() {
        // |Hom(Z/m, Z/n)| = gcd(m, n)
        for m in 1..=6 {
            for n in 1..=6 {
                let homs = homomorphisms(&FiniteGroup::cyclic(m), &FiniteGroup::cyclic(n));
                assert_eq!(homs.len(), gcd(m, n));
            }
        }
    }

    #[test]
    fn subgroup_lattice() {
        assert_eq!(all_subgroups(&FiniteGroup::symmetric(3)).len(), 6);
        assert_eq!(normal_subgroups(&FiniteGroup::symmetric(3)).len(), 3);
        assert_eq!(all_subgroups(&FiniteGroup::dihedral(4)).len(), 10);
        assert_eq!(all_subgroups(&FiniteGroup::quaternion()).len(), 6);
    }

    #[test]
    fn malformed_tables() {
        let err = FiniteGroup::from_table("bad", vec![vec![0, 1], vec![1, 2]]).unwrap_err();
        assert!(matches!(err, Error::InvalidTable { row: 1, col: 1, .. }));
        let err = FiniteGroup::from_table("bad", vec![vec![0, 1], vec![1, 1]]).unwrap_err();
        assert!(matches!(err, Error::InvalidTable { .. }));
        // a Latin square that is not associative
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FiniteGroup::from_table("loop", rows),
            Err(Error::NotAssociative(..))
        ));
    }

    #[test]
    fn special_groups() {
        let q8 = FiniteGroup::quaternion();
        assert_eq!(Subgroup::center(&q8).order(), 2);
        assert_eq!(q8.elements().filter(|&a| q8.element_order(a) == 4).count(), 6);
        let s4 = FiniteGroup::symmetric(4);
        assert_eq!(s4.order(), 24);
        assert!(!s4.is_abelian());
        assert_eq!(FiniteGroup::dihedral(4).order(), 8);
    }
}
