//! Structural tools: Ruzsa covering, unfolding of torsion into a lattice,
//! multiplicative rank, and exact point counts of varieties on grids `A^g`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::arith::Factorizer;
use crate::finsets::{sumset, FiniteSet};
use crate::groups::{GroupDescriptor, GroupElement};
use crate::linalg;
use crate::poly::MultiPoly;
use crate::{Error, Rational, Result};

/// Greedy maximal `X ⊆ A` whose translates `x + B` are pairwise disjoint,
/// scanning `A` in canonical order. Maximality gives `A ⊆ X + B − B`, and
/// disjointness inside `A + B` gives `|X| ≤ |A + B| / |B|`.
pub fn ruzsa_cover(a: &FiniteSet, b: &FiniteSet) -> Result<FiniteSet> {
    if a.group() != b.group() {
        return Err(Error::MixedGroups);
    }
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    let g = a.group();
    let mut covered: BTreeSet<GroupElement> = BTreeSet::new();
    let mut chosen = Vec::new();
    for x in a.iter() {
        let translate: Vec<GroupElement> = b.iter().map(|y| g.op(x, y)).collect::<Result<_>>()?;
        if translate.iter().all(|t| !covered.contains(t)) {
            covered.extend(translate);
            chosen.push(x.clone());
        }
    }
    FiniteSet::new(g.clone(), chosen)
}

/// Whether `X ⊆ A`, `|X| ≤ ⌈|A + B| / |B|⌉` and `A ⊆ X + B − B`.
pub fn verify_ruzsa_cover(a: &FiniteSet, b: &FiniteSet, x: &FiniteSet) -> Result<bool> {
    if b.is_empty() {
        return Err(Error::EmptySet);
    }
    if !x.is_subset(a) {
        return Ok(false);
    }
    let ab = sumset(a, b)?.len();
    if x.len() > ab.div_ceil(b.len()) {
        return Ok(false);
    }
    let cover = sumset(&sumset(x, b)?, &b.negate()?)?;
    Ok(a.is_subset(&cover))
}

/// An element of `Z^l × Z/n × Z/m`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorsionPoint {
    pub free: Vec<i64>,
    pub a: u64,
    pub b: u64,
}

/// A finite subset of `Z^l × Z/n × Z/m`, residues reduced, sorted, deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionSet {
    rank: usize,
    n: u64,
    m: u64,
    points: Vec<TorsionPoint>,
}

impl TorsionSet {
    pub fn new(rank: usize, n: u64, m: u64, points: impl IntoIterator<Item = (Vec<i64>, i64, i64)>) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidArgument("torsion moduli must be positive".into()));
        }
        let mut pts = Vec::new();
        for (free, a, b) in points {
            if free.len() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    got: free.len(),
                });
            }
            pts.push(TorsionPoint {
                free,
                a: a.rem_euclid(n as i64) as u64,
                b: b.rem_euclid(m as i64) as u64,
            });
        }
        pts.sort();
        pts.dedup();
        Ok(TorsionSet { rank, n, m, points: pts })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn moduli(&self) -> (u64, u64) {
        (self.n, self.m)
    }

    pub fn points(&self) -> &[TorsionPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn add(&self, p: &TorsionPoint, q: &TorsionPoint) -> TorsionPoint {
        TorsionPoint {
            free: p.free.iter().zip(&q.free).map(|(x, y)| x + y).collect(),
            a: (p.a + q.a) % self.n,
            b: (p.b + q.b) % self.m,
        }
    }

    /// `(⌊10a/n⌋, ⌊10b/m⌋)`, each in `0..10`.
    pub fn cell(&self, p: &TorsionPoint) -> (u64, u64) {
        (10 * p.a / self.n, 10 * p.b / self.m)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unfolding {
    pub cell: (u64, u64),
    /// The points of the chosen cell, in the order of [`TorsionSet::points`].
    pub subset: Vec<TorsionPoint>,
    /// `lifted[i]` is `subset[i]` with its residues read as integers in
    /// `Z^{l+2}`.
    pub lifted: Vec<Vec<i64>>,
}

/// Restricts to the most populated cell of the `10 × 10` grid on the torsion
/// part (smallest cell on ties) and lifts residues to integers. Pair sums of
/// residues from one cell fall in an interval shorter than the modulus, so
/// congruent pair sums are equal and the lift is a Freiman 2-isomorphism.
/// The subset has at least `|S| / 100` points.
pub fn torsion_unfold(s: &TorsionSet) -> Result<Unfolding> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut counts: BTreeMap<(u64, u64), usize> = BTreeMap::new();
    for p in &s.points {
        *counts.entry(s.cell(p)).or_default() += 1;
    }
    let max = *counts.values().max().expect("nonempty");
    let cell = *counts.iter().find(|(_, &c)| c == max).expect("nonempty").0;
    let subset: Vec<TorsionPoint> = s.points.iter().filter(|p| s.cell(p) == cell).cloned().collect();
    let lifted = subset
        .iter()
        .map(|p| {
            let mut v = p.free.clone();
            v.push(p.a as i64);
            v.push(p.b as i64);
            v
        })
        .collect();
    let unfolding = Unfolding { cell, subset, lifted };
    if !is_freiman_2_isomorphic(s, &unfolding.subset, &unfolding.lifted) {
        return Err(Error::Invariant(format!("lift of cell {cell:?} is not a Freiman 2-isomorphism")));
    }
    Ok(unfolding)
}

/// Whether `subset[i] ↦ lifted[i]` is a bijection with
/// `x_1 + x_2 = x_3 + x_4 ⇔ φ(x_1) + φ(x_2) = φ(x_3) + φ(x_4)`, checked by
/// grouping all pair sums on both sides.
pub fn is_freiman_2_isomorphic(s: &TorsionSet, subset: &[TorsionPoint], lifted: &[Vec<i64>]) -> bool {
    if subset.len() != lifted.len() {
        return false;
    }
    let distinct = |n: usize| n == subset.len();
    if !distinct(subset.iter().collect::<BTreeSet<_>>().len()) || !distinct(lifted.iter().collect::<BTreeSet<_>>().len()) {
        return false;
    }
    let mut forward: BTreeMap<TorsionPoint, Vec<i64>> = BTreeMap::new();
    let mut backward: BTreeMap<Vec<i64>, TorsionPoint> = BTreeMap::new();
    for i in 0..subset.len() {
        for j in i..subset.len() {
            let t = s.add(&subset[i], &subset[j]);
            let l: Vec<i64> = lifted[i].iter().zip(&lifted[j]).map(|(x, y)| x + y).collect();
            if forward.entry(t.clone()).or_insert_with(|| l.clone()) != &l {
                return false;
            }
            if backward.entry(l).or_insert(t.clone()) != &t {
                return false;
            }
        }
    }
    true
}

/// Rank of the subgroup of `Q^*/{±1}` generated by `A ⊆ G_m`, read off the
/// prime-exponent vectors of the elements.
pub fn mult_rank(a: &FiniteSet, factorizer: &Factorizer) -> Result<usize> {
    if *a.group() != GroupDescriptor::Multiplicative {
        return Err(Error::InvalidArgument("multiplicative rank needs a subset of Gm".into()));
    }
    let mut rows: Vec<BTreeMap<BigUint, i64>> = Vec::with_capacity(a.len());
    let mut primes: BTreeSet<BigUint> = BTreeSet::new();
    for e in a.iter() {
        let v = e.value().expect("Gm elements carry a value");
        let mut row = BTreeMap::new();
        for (part, sign) in [(v.numer(), 1i64), (v.denom(), -1)] {
            for (p, k) in factorizer.factor(part.magnitude())? {
                primes.insert(p.clone());
                *row.entry(p).or_insert(0) += sign * k as i64;
            }
        }
        rows.push(row);
    }
    let cols: Vec<&BigUint> = primes.iter().collect();
    let matrix: Vec<Vec<Rational>> = rows
        .iter()
        .map(|row| cols.iter().map(|p| Rational::from(row.get(*p).copied().unwrap_or(0))).collect())
        .collect();
    Ok(linalg::rank(&matrix, cols.len()))
}

/// A variety in `G^g` for `G` one of the line groups, given by equations in
/// `x_1, …, x_g` and a declared dimension used only for reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarietySpec {
    group: GroupDescriptor,
    num_vars: usize,
    equations: Vec<MultiPoly>,
    declared_dim: usize,
}

impl VarietySpec {
    pub fn new(group: GroupDescriptor, num_vars: usize, equations: Vec<MultiPoly>, declared_dim: usize) -> Result<Self> {
        if matches!(group, GroupDescriptor::Elliptic(_)) {
            return Err(Error::Unsupported("varieties are counted in Ga^g or Gm^g".into()));
        }
        if declared_dim > num_vars {
            return Err(Error::InvalidArgument(format!(
                "dimension {declared_dim} exceeds ambient dimension {num_vars}"
            )));
        }
        let equations = equations
            .into_iter()
            .filter(|e| !e.is_zero())
            .map(|e| e.with_num_vars(num_vars))
            .collect::<Result<_>>()?;
        Ok(VarietySpec {
            group,
            num_vars,
            equations,
            declared_dim,
        })
    }

    pub fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn equations(&self) -> &[MultiPoly] {
        &self.equations
    }

    pub fn declared_dim(&self) -> usize {
        self.declared_dim
    }

    /// `V × W` in `G^{g+h}`, the equations of `W` acting on the last `h`
    /// coordinates.
    pub fn product(&self, other: &VarietySpec) -> Result<VarietySpec> {
        if self.group != other.group {
            return Err(Error::MixedGroups);
        }
        let n = self.num_vars + other.num_vars;
        let shift: Vec<MultiPoly> = (0..other.num_vars).map(|i| MultiPoly::var(n, self.num_vars + i)).collect();
        let mut equations: Vec<MultiPoly> = self.equations.iter().map(|e| e.with_num_vars(n)).collect::<Result<_>>()?;
        for e in &other.equations {
            equations.push(e.compose(&shift)?);
        }
        VarietySpec::new(self.group.clone(), n, equations, self.declared_dim + other.declared_dim)
    }

    pub fn satisfies(&self, point: &[Rational]) -> Result<bool> {
        if point.len() != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                got: point.len(),
            });
        }
        for e in &self.equations {
            if !e.eval(point)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `|V ∩ A^g|` by depth-first search over `A^g`; each equation is tested as
/// soon as its last variable is assigned. Fails before searching when
/// `|A|^g` exceeds `budget`.
pub fn count_points(v: &VarietySpec, a: &FiniteSet, budget: u128) -> Result<u64> {
    let searcher = Searcher::new(v, a, budget)?;
    if v.num_vars == 0 {
        return searcher.count_from(&mut Vec::new(), 0);
    }
    let mut total = 0;
    for i in 0..searcher.values.len() {
        total += count_points_fixing_first(v, a, i, budget)?;
    }
    Ok(total)
}

/// The share of [`count_points`] with `x_1` equal to the `first`-th element
/// of `A` in canonical order. The shares over all `first` sum to the count.
pub fn count_points_fixing_first(v: &VarietySpec, a: &FiniteSet, first: usize, budget: u128) -> Result<u64> {
    let searcher = Searcher::new(v, a, budget)?;
    if v.num_vars == 0 {
        return Err(Error::InvalidArgument("no first coordinate in G^0".into()));
    }
    let Some(x) = searcher.values.get(first) else {
        return Err(Error::InvalidArgument(format!("index {first} out of range for a set of size {}", a.len())));
    };
    let mut point = vec![Rational::zero(); v.num_vars];
    point[0] = x.clone();
    if !searcher.passes(&point, 0)? {
        return Ok(0);
    }
    searcher.count_from(&mut point, 1)
}

struct Searcher<'a> {
    values: Vec<Rational>,
    /// Equations grouped by the last variable they involve; constants sit
    /// at level 0.
    by_level: Vec<Vec<&'a MultiPoly>>,
    num_vars: usize,
    constant_violated: bool,
}

impl<'a> Searcher<'a> {
    fn new(v: &'a VarietySpec, a: &FiniteSet, budget: u128) -> Result<Self> {
        if a.group() != &v.group {
            return Err(Error::MixedGroups);
        }
        let needed = (a.len() as u128).checked_pow(v.num_vars as u32).unwrap_or(u128::MAX);
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        let mut by_level = vec![Vec::new(); v.num_vars.max(1)];
        let mut constant_violated = false;
        for e in &v.equations {
            match e.last_var() {
                Some(k) => by_level[k].push(e),
                // Zero equations were dropped, so a constant is a nonzero one.
                None => constant_violated = true,
            }
        }
        Ok(Searcher {
            values: a.values(),
            by_level,
            num_vars: v.num_vars,
            constant_violated,
        })
    }

    /// Equations at `level` hold, with coordinates past `level` still zero.
    fn passes(&self, point: &[Rational], level: usize) -> Result<bool> {
        if self.constant_violated {
            return Ok(false);
        }
        for e in &self.by_level[level] {
            if !e.eval(point)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn count_from(&self, point: &mut Vec<Rational>, level: usize) -> Result<u64> {
        if self.num_vars == 0 {
            return Ok(u64::from(!self.constant_violated));
        }
        if level == self.num_vars {
            return Ok(1);
        }
        let mut total = 0;
        for x in &self.values {
            point[level] = x.clone();
            if self.passes(point, level)? {
                total += self.count_from(point, level + 1)?;
            }
        }
        point[level] = Rational::zero();
        Ok(total)
    }
}
