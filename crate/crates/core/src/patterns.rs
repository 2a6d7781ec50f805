//! Generalized arithmetic progressions, and the longest arithmetic,
//! geometric and consecutive-squares progressions inside a finite set of
//! rationals.
//!
//! Progressions are injective: an AP step of 0 and GP ratios 0, ±1 are
//! excluded, and a one-element set is a progression of length 1.
//!
//! Witness conventions, used as tie-breaks among chains of maximal length:
//! * AP: `(u, d)` with `d > 0` and `u` the smallest term; smallest `u` wins,
//!   then smallest `d`.
//! * GP: `(u, q)` with `|q| > 1` and `u` the term of smallest absolute
//!   value; smallest `u` wins, then smallest `q`.
//! * Square AP: `(u, d)` such that `u², (u+d)², …` are pairwise distinct
//!   elements of the set; the length counts those squares. Among the
//!   equivalent parametrizations the one with `d > 0` and nonnegative term
//!   sum is reported; smallest `d` wins, then smallest `u`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::finsets::{sumset, FiniteSet};
use crate::groups::{GroupDescriptor, GroupElement};
use crate::poly::MultiPoly;
use crate::{Error, Rational, Result};

/// `{P_0 + ℓ_1P_1 + … + ℓ_kP_k : 0 ≤ ℓ_i < L_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapSpec {
    group: GroupDescriptor,
    base: GroupElement,
    steps: Vec<GroupElement>,
    lengths: Vec<u32>,
}

impl GapSpec {
    pub fn new(group: GroupDescriptor, base: GroupElement, steps: Vec<GroupElement>, lengths: Vec<u32>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::InvalidArgument("a GAP needs at least one step".into()));
        }
        if steps.len() != lengths.len() {
            return Err(Error::DimensionMismatch {
                expected: steps.len(),
                got: lengths.len(),
            });
        }
        if lengths.iter().any(|&l| l < 2) {
            return Err(Error::InvalidArgument("GAP side lengths must be at least 2".into()));
        }
        group.check(&base)?;
        for s in &steps {
            group.check(s)?;
        }
        Ok(GapSpec {
            group,
            base,
            steps,
            lengths,
        })
    }

    /// The all-sides-2 hypercube `{P_0 + Σ ε_iP_i : ε_i ∈ {0, 1}}`.
    pub fn hypercube(group: GroupDescriptor, base: GroupElement, steps: Vec<GroupElement>) -> Result<Self> {
        let k = steps.len();
        GapSpec::new(group, base, steps, vec![2; k])
    }

    pub fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    pub fn dimension(&self) -> usize {
        self.steps.len()
    }

    /// `Π L_i`, the size of the GAP when it is proper.
    pub fn volume(&self) -> u128 {
        self.lengths.iter().map(|&l| l as u128).product()
    }

    /// Same steps, base `2P_0`, sides `2L_i − 1`: the GAP containing `P + P`.
    pub fn doubled(&self) -> Result<GapSpec> {
        GapSpec::new(
            self.group.clone(),
            self.group.op(&self.base, &self.base)?,
            self.steps.clone(),
            self.lengths.iter().map(|&l| 2 * l - 1).collect(),
        )
    }
}

/// Enumerates the GAP; `proper` is whether all `Π L_i` combinations are
/// distinct.
pub fn gap_enumerate(spec: &GapSpec) -> Result<(FiniteSet, bool)> {
    let g = &spec.group;
    let mut current = FiniteSet::new(g.clone(), [spec.base.clone()])?;
    for (step, &len) in spec.steps.iter().zip(&spec.lengths) {
        let mut multiples = Vec::with_capacity(len as usize);
        let mut m = g.identity();
        for _ in 0..len {
            multiples.push(m.clone());
            m = g.op(&m, step)?;
        }
        current = sumset(&current, &FiniteSet::new(g.clone(), multiples)?)?;
    }
    let proper = current.len() as u128 == spec.volume();
    Ok((current, proper))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PatternKind {
    Ap,
    Gp,
    SquareAp,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternReport {
    pub kind: PatternKind,
    pub length: usize,
    /// `(first term, step or ratio)`; present whenever `length ≥ 1`. For
    /// length 1 the step is the identity of the progression (0, or ratio 1).
    pub witness: Option<(Rational, Rational)>,
}

impl PatternReport {
    fn empty(kind: PatternKind) -> Self {
        PatternReport {
            kind,
            length: 0,
            witness: None,
        }
    }

    /// The elements of the input set that the witness describes: the chain
    /// itself for AP/GP, the squares of the chain for square APs.
    pub fn terms(&self) -> Vec<Rational> {
        let Some((u, step)) = &self.witness else {
            return Vec::new();
        };
        let mut out = Vec::with_capacity(self.length);
        let mut x = u.clone();
        for _ in 0..self.length {
            out.push(match self.kind {
                PatternKind::SquareAp => &x * &x,
                _ => x.clone(),
            });
            x = match self.kind {
                PatternKind::Gp => &x * step,
                _ => &x + step,
            };
        }
        out
    }
}

fn distinct_sorted(values: &[Rational]) -> Vec<Rational> {
    let mut v = values.to_vec();
    v.sort();
    v.dedup();
    v
}

/// Triangular table for pair DP values `len[j][k]`, `j < k`.
struct PairTable {
    n: usize,
    data: Vec<u32>,
}

impl PairTable {
    fn new(n: usize) -> Self {
        PairTable {
            n,
            data: vec![0; n * n],
        }
    }

    fn get(&self, j: usize, k: usize) -> u32 {
        self.data[j * self.n + k]
    }

    fn set(&mut self, j: usize, k: usize, v: u32) {
        self.data[j * self.n + k] = v;
    }
}

/// Candidate `(length, u, step)` compared by length first, then by the
/// supplied key order on `(u, step)`.
fn better(
    cand: (usize, &Rational, &Rational),
    best: &Option<(usize, Rational, Rational)>,
    key: impl Fn(&Rational, &Rational, &Rational, &Rational) -> Ordering,
) -> bool {
    match best {
        None => true,
        Some((len, u, s)) => match cand.0.cmp(len) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => key(cand.1, cand.2, u, s) == Ordering::Less,
        },
    }
}

/// Longest `{u, u+d, …, u+ld} ⊆ S` with `d ≠ 0`, by DP over sorted pairs.
pub fn longest_ap(values: &[Rational]) -> Result<PatternReport> {
    let xs = distinct_sorted(values);
    if xs.is_empty() {
        return Err(Error::EmptySet);
    }
    let index: BTreeMap<&Rational, usize> = xs.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let n = xs.len();
    let mut table = PairTable::new(n);
    let mut best: Option<(usize, Rational, Rational)> = Some((1, xs[0].clone(), Rational::zero()));
    let by_u_then_d = |u1: &Rational, d1: &Rational, u2: &Rational, d2: &Rational| u1.cmp(u2).then(d1.cmp(d2));
    for k in 1..n {
        for j in 0..k {
            let d = &xs[k] - &xs[j];
            let prev = &xs[j] - &d;
            let len = match index.get(&prev) {
                Some(&i) => table.get(i, j) + 1,
                None => 2,
            };
            table.set(j, k, len);
            let u = &xs[k] - &d * Rational::from(len as i64 - 1);
            if better((len as usize, &u, &d), &best, by_u_then_d) {
                best = Some((len as usize, u, d));
            }
        }
    }
    let (length, u, d) = best.expect("nonempty input");
    Ok(PatternReport {
        kind: PatternKind::Ap,
        length,
        witness: Some((u, d)),
    })
}

/// Longest `{u, uq, uq², …} ⊆ S` with `q ∉ {0, 1, −1}`. Zeros are ignored,
/// so a set with no nonzero element reports length 0.
pub fn longest_gp(values: &[Rational]) -> Result<PatternReport> {
    if values.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut ys: Vec<Rational> = distinct_sorted(values).into_iter().filter(|v| !v.is_zero()).collect();
    if ys.is_empty() {
        return Ok(PatternReport::empty(PatternKind::Gp));
    }
    // Increasing absolute value, so every ratio y_k / y_j with j < k has |q| ≥ 1.
    ys.sort_by(|a, b| a.abs().cmp(&b.abs()).then(a.cmp(b)));
    let index: BTreeMap<&Rational, usize> = ys.iter().enumerate().map(|(i, y)| (y, i)).collect();
    let n = ys.len();
    let mut table = PairTable::new(n);
    let smallest = ys.iter().min().expect("nonempty").clone();
    let mut best: Option<(usize, Rational, Rational)> = Some((1, smallest, Rational::one()));
    let by_u_then_q = |u1: &Rational, q1: &Rational, u2: &Rational, q2: &Rational| u1.cmp(u2).then(q1.cmp(q2));
    for k in 1..n {
        for j in 0..k {
            if ys[j].abs() == ys[k].abs() {
                continue;
            }
            let q = &ys[k] / &ys[j];
            let prev = &ys[j] / &q;
            let len = match index.get(&prev) {
                Some(&i) => table.get(i, j) + 1,
                None => 2,
            };
            table.set(j, k, len);
            let u = &ys[k] / q.pow(len as i64 - 1)?;
            if better((len as usize, &u, &q), &best, by_u_then_q) {
                best = Some((len as usize, u, q));
            }
        }
    }
    let (length, u, q) = best.expect("nonempty input");
    Ok(PatternReport {
        kind: PatternKind::Gp,
        length,
        witness: Some((u, q)),
    })
}

/// Longest `{u², (u+d)², …, (u+ld)²} ⊆ S` counted by distinct squares.
pub fn longest_square_ap(values: &[Rational]) -> Result<PatternReport> {
    if values.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut roots = Vec::new();
    for v in distinct_sorted(values) {
        if let Some(r) = v.sqrt_exact() {
            if !r.is_zero() {
                roots.push(-&r);
            }
            roots.push(r);
        }
    }
    let roots = distinct_sorted(&roots);
    if roots.is_empty() {
        return Ok(PatternReport::empty(PatternKind::SquareAp));
    }
    let present: BTreeMap<&Rational, usize> = roots.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let by_d_then_u = |u1: &Rational, d1: &Rational, u2: &Rational, d2: &Rational| d1.cmp(d2).then(u1.cmp(u2));
    let smallest_abs = roots.iter().map(Rational::abs).min().expect("nonempty");
    let mut best: Option<(usize, Rational, Rational)> = Some((1, smallest_abs, Rational::zero()));

    let n = roots.len();
    for j in 0..n {
        for k in j + 1..n {
            let d = &roots[k] - &roots[j];
            if present.contains_key(&(&roots[j] - &d)) {
                // Not the start of a maximal chain.
                continue;
            }
            let mut chain = vec![roots[j].clone(), roots[k].clone()];
            loop {
                let next = chain.last().expect("nonempty") + &d;
                if !present.contains_key(&next) {
                    break;
                }
                chain.push(next);
            }
            // Longest windows of the chain with pairwise distinct squares.
            let mut left = 0;
            let mut seen: BTreeMap<Rational, usize> = BTreeMap::new();
            for right in 0..chain.len() {
                let key = chain[right].abs();
                if let Some(&pos) = seen.get(&key) {
                    if pos >= left {
                        left = pos + 1;
                    }
                }
                seen.insert(key, right);
                let window = &chain[left..=right];
                let len = window.len();
                let sum: Rational = window.iter().cloned().sum();
                let u = if sum.is_negative() {
                    -window.last().expect("nonempty")
                } else {
                    window[0].clone()
                };
                let step = if len == 1 { Rational::zero() } else { d.clone() };
                if better((len, &u, &step), &best, by_d_then_u) {
                    best = Some((len, u, step));
                }
            }
        }
    }
    let (length, u, d) = best.expect("nonempty");
    Ok(PatternReport {
        kind: PatternKind::SquareAp,
        length,
        witness: Some((u, d)),
    })
}

/// `d_1 + … + d_t + t − 3`, the canonical-class degree of the surface cut
/// out by `t` relations of degrees `d_i`; positive means general type in
/// the smooth case.
pub fn canonical_degree(degrees: &[u32], t: usize) -> Result<i64> {
    if degrees.len() != t {
        return Err(Error::DimensionMismatch {
            expected: t,
            got: degrees.len(),
        });
    }
    Ok(degrees.iter().map(|&d| d as i64).sum::<i64>() + t as i64 - 3)
}

/// `Z_{j+2} − 2Z_{j+1} + Z_j = 0` for `j = 1..t−2`: the `t`-term APs.
pub fn ap_equations(t: usize) -> Vec<MultiPoly> {
    (0..t.saturating_sub(2))
        .map(|j| {
            let z = |i: usize| MultiPoly::var(t, i);
            &(&z(j + 2) - &z(j + 1).scale(&Rational::from(2))) + &z(j)
        })
        .collect()
}

/// `Z_{j+1}Z_1 = Z_jZ_2` for `j = 2..t−1`: the `t`-term GPs with `Z_1 ≠ 0`.
pub fn gp_equations(t: usize) -> Vec<MultiPoly> {
    (1..t.saturating_sub(1))
        .map(|j| {
            let z = |i: usize| MultiPoly::var(t, i);
            &(&z(j + 1) * &z(0)) - &(&z(j) * &z(1))
        })
        .collect()
}
