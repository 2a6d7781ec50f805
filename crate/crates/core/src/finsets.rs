//! Finite subsets of a single group and the sumset machinery on them.
//!
//! Under `G_m` the "sum" `A + B` is the product set `A·B` and `gA` is the
//! `g`-fold product set; everything here is phrased additively.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::ops::Range;

use crate::corresp::Correspondence;
use crate::groups::{GroupDescriptor, GroupElement};
use crate::{Error, Rational, Result};

/// A deduplicated set of elements of one group, kept in canonical order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteSet {
    group: GroupDescriptor,
    elements: Vec<GroupElement>,
}

impl core::fmt::Debug for FiniteSet {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_set().entries(&self.elements).finish()
    }
}

impl FiniteSet {
    /// Validates membership of every element, then sorts and dedups.
    pub fn new(group: GroupDescriptor, elements: impl IntoIterator<Item = GroupElement>) -> Result<Self> {
        let mut elements: Vec<GroupElement> = elements.into_iter().collect();
        for e in &elements {
            group.check(e)?;
        }
        elements.sort_unstable();
        elements.dedup();
        Ok(FiniteSet { group, elements })
    }

    pub fn empty(group: GroupDescriptor) -> Self {
        FiniteSet {
            group,
            elements: Vec::new(),
        }
    }

    /// Elements of `G_a` or `G_m` given by their values.
    pub fn from_values(group: GroupDescriptor, values: impl IntoIterator<Item = Rational>) -> Result<Self> {
        let elements = values
            .into_iter()
            .map(|v| group.element(v))
            .collect::<Result<Vec<_>>>()?;
        FiniteSet::new(group, elements)
    }

    /// Trusted constructor for results of group operations on members.
    pub(crate) fn from_sorted_unique(group: GroupDescriptor, elements: Vec<GroupElement>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        FiniteSet { group, elements }
    }

    /// Merges sorted, deduplicated runs of group elements (for example the
    /// partial sumsets produced by [`sumset_partial`]) into one set.
    pub fn merge_runs(group: GroupDescriptor, runs: Vec<Vec<GroupElement>>) -> Self {
        let mut runs = runs;
        while runs.len() > 1 {
            let mut next = Vec::with_capacity(runs.len().div_ceil(2));
            let mut it = runs.into_iter();
            while let Some(a) = it.next() {
                match it.next() {
                    Some(b) => next.push(merge_two(a, b)),
                    None => next.push(a),
                }
            }
            runs = next;
        }
        FiniteSet::from_sorted_unique(group, runs.pop().unwrap_or_default())
    }

    pub fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn iter(&self) -> core::slice::Iter<'_, GroupElement> {
        self.elements.iter()
    }

    pub fn contains(&self, e: &GroupElement) -> bool {
        self.elements.binary_search(e).is_ok()
    }

    /// Values of a `G_a` / `G_m` set.
    pub fn values(&self) -> Vec<Rational> {
        self.elements.iter().filter_map(|e| e.value().cloned()).collect()
    }

    pub fn union(&self, other: &FiniteSet) -> Result<FiniteSet> {
        if self.group != other.group {
            return Err(Error::MixedGroups);
        }
        Ok(FiniteSet::from_sorted_unique(
            self.group.clone(),
            merge_two(self.elements.clone(), other.elements.clone()),
        ))
    }

    pub fn is_subset(&self, other: &FiniteSet) -> bool {
        self.group == other.group && self.elements.iter().all(|e| other.contains(e))
    }

    /// `{ t + a : a ∈ self }`.
    pub fn translate(&self, t: &GroupElement) -> Result<FiniteSet> {
        let moved = self
            .elements
            .iter()
            .map(|a| self.group.op(t, a))
            .collect::<Result<Vec<_>>>()?;
        FiniteSet::new(self.group.clone(), moved)
    }

    /// `{ -a : a ∈ self }`.
    pub fn negate(&self) -> Result<FiniteSet> {
        let neg = self
            .elements
            .iter()
            .map(|a| self.group.inverse(a))
            .collect::<Result<Vec<_>>>()?;
        FiniteSet::new(self.group.clone(), neg)
    }
}

fn merge_two(a: Vec<GroupElement>, b: Vec<GroupElement>) -> Vec<GroupElement> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut ia = a.into_iter().peekable();
    let mut ib = b.into_iter().peekable();
    loop {
        let next = match (ia.peek(), ib.peek()) {
            (Some(x), Some(y)) => match x.cmp(y) {
                core::cmp::Ordering::Less => ia.next(),
                core::cmp::Ordering::Greater => ib.next(),
                core::cmp::Ordering::Equal => {
                    ib.next();
                    ia.next()
                }
            },
            (Some(_), None) => ia.next(),
            (None, Some(_)) => ib.next(),
            (None, None) => break,
        };
        out.extend(next);
    }
    out
}

/// The partial sumset `{a + b : a ∈ A[range], b ∈ B}` as a sorted run.
pub fn sumset_partial(a: &FiniteSet, b: &FiniteSet, range: Range<usize>) -> Result<Vec<GroupElement>> {
    if a.group != b.group {
        return Err(Error::MixedGroups);
    }
    let mut acc = BTreeSet::new();
    for x in &a.elements[range] {
        for y in &b.elements {
            acc.insert(a.group.op(x, y)?);
        }
    }
    Ok(acc.into_iter().collect())
}

/// Splits `0..len` into at most `parts` contiguous ranges of near-equal size.
pub fn partition(len: usize, parts: usize) -> Vec<Range<usize>> {
    let parts = parts.clamp(1, len.max(1));
    let base = len / parts;
    let extra = len % parts;
    let mut out = Vec::with_capacity(parts);
    let mut start = 0;
    for i in 0..parts {
        let size = base + usize::from(i < extra);
        out.push(start..start + size);
        start += size;
    }
    out
}

/// `A + B`, computed as `parts` partial sumsets over slices of `A` and
/// merged; the result does not depend on `parts`.
pub fn sumset_partitioned(a: &FiniteSet, b: &FiniteSet, parts: usize) -> Result<FiniteSet> {
    let runs = partition(a.len(), parts)
        .into_iter()
        .map(|r| sumset_partial(a, b, r))
        .collect::<Result<Vec<_>>>()?;
    Ok(FiniteSet::merge_runs(a.group.clone(), runs))
}

/// `A + B = { a + b }`.
pub fn sumset(a: &FiniteSet, b: &FiniteSet) -> Result<FiniteSet> {
    sumset_partitioned(a, b, 1)
}

/// The `g`-fold sumset `gA`; `iterated(A, 1) = A`.
pub fn iterated(a: &FiniteSet, g: usize) -> Result<FiniteSet> {
    if g == 0 {
        return Err(Error::InvalidArgument("g must be at least 1".into()));
    }
    let mut acc = a.clone();
    for _ in 1..g {
        acc = sumset(&acc, a)?;
    }
    Ok(acc)
}

/// `|A + A| / |A|`.
pub fn doubling(a: &FiniteSet) -> Result<Rational> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let doubled = sumset(a, a)?;
    Rational::new(doubled.len() as i64, a.len() as i64)
}

/// Generators `γ_1, …, γ_r` of a finitely generated subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupBasis {
    group: GroupDescriptor,
    generators: Vec<GroupElement>,
}

impl SubgroupBasis {
    pub fn new(group: GroupDescriptor, generators: Vec<GroupElement>) -> Result<Self> {
        for g in &generators {
            group.check(g)?;
        }
        Ok(SubgroupBasis { group, generators })
    }

    pub fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }
}

/// The box `{ n_1γ_1 + … + n_rγ_r : |n_i| ≤ L }`, optionally translated by
/// `base`. Independence of the generators is not checked, so the result may
/// have fewer than `(2L+1)^r` elements.
pub fn box_set(basis: &SubgroupBasis, l: u32, base: Option<&GroupElement>) -> Result<FiniteSet> {
    if l == 0 {
        return Err(Error::InvalidArgument("box side L must be at least 1".into()));
    }
    let group = &basis.group;
    let mut current = FiniteSet::new(group.clone(), [group.identity()])?;
    for gen in &basis.generators {
        let multiples = FiniteSet::new(group.clone(), group.multiples(gen, l)?)?;
        current = sumset(&current, &multiples)?;
    }
    match base {
        Some(t) => {
            group.check(t)?;
            current.translate(t)
        }
        None => Ok(current),
    }
}

/// `C_1(A) + … + C_g(A)` in the common target group.
pub fn image_sum(cs: &[Correspondence], a: &FiniteSet) -> Result<FiniteSet> {
    let first = cs
        .first()
        .ok_or_else(|| Error::InvalidArgument("need at least one correspondence".into()))?;
    for c in cs {
        if c.source() != a.group() || c.target() != first.target() {
            return Err(Error::MixedGroups);
        }
    }
    let mut acc = first.image(a)?;
    for c in &cs[1..] {
        acc = sumset(&acc, &c.image(a)?)?;
    }
    Ok(acc)
}
