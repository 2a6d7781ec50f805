//! Rayon drivers for the expensive set operations. Each splits the work into
//! contiguous slices, computes sorted partial results independently and
//! merges them, so the output equals the sequential result exactly.

use std::collections::BTreeSet;

use rayon::prelude::*;
use sumprod::arith::Factorizer;
use sumprod::finsets::{partition, sumset_partial};
use sumprod::structure::{count_points_fixing_first, VarietySpec};
use sumprod::{Correspondence, Error, FiniteSet, MultiPoly, Rational, Result};

fn parts_for(len: usize) -> usize {
    (rayon::current_num_threads() * 4).min(len.max(1))
}

pub fn sumset(a: &FiniteSet, b: &FiniteSet) -> Result<FiniteSet> {
    let runs = partition(a.len(), parts_for(a.len()))
        .into_par_iter()
        .map(|r| sumset_partial(a, b, r))
        .collect::<Result<Vec<_>>>()?;
    Ok(FiniteSet::merge_runs(a.group().clone(), runs))
}

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

pub fn image(c: &Correspondence, a: &FiniteSet, factorizer: &Factorizer) -> Result<FiniteSet> {
    if a.group() != c.source() {
        return Err(Error::MixedGroups);
    }
    let runs = partition(a.len(), parts_for(a.len()))
        .into_par_iter()
        .map(|r| {
            let chunk = FiniteSet::new(a.group().clone(), a.elements()[r].iter().cloned())?;
            Ok(c.image_with(&chunk, factorizer)?.elements().to_vec())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FiniteSet::merge_runs(c.target().clone(), runs))
}

pub fn image_sum(cs: &[Correspondence], a: &FiniteSet, factorizer: &Factorizer) -> Result<FiniteSet> {
    let first = cs
        .first()
        .ok_or_else(|| Error::InvalidArgument("need at least one correspondence".into()))?;
    if cs.iter().any(|c| c.source() != a.group() || c.target() != first.target()) {
        return Err(Error::MixedGroups);
    }
    let mut acc = image(first, a, factorizer)?;
    for c in &cs[1..] {
        acc = sumset(&acc, &image(c, a, factorizer)?)?;
    }
    Ok(acc)
}

pub fn count_points(v: &VarietySpec, a: &FiniteSet, budget: u128) -> Result<u64> {
    if v.num_vars() == 0 {
        return sumprod::structure::count_points(v, a, budget);
    }
    (0..a.len())
        .into_par_iter()
        .map(|i| count_points_fixing_first(v, a, i, budget))
        .try_reduce(|| 0, |x, y| Ok(x + y))
}

/// `{P(a_1, …, a_g) : a_i ∈ A}` as rationals, split over the first coordinate.
pub fn poly_image(p: &MultiPoly, a: &FiniteSet, budget: u128) -> Result<BTreeSet<Rational>> {
    let g = p.num_vars();
    let needed = (a.len() as u128).checked_pow(g as u32).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let vals = a.values();
    if g == 0 {
        return Ok(BTreeSet::from([p.eval(&[])?]));
    }
    vals.par_iter()
        .map(|first| {
            let mut out = BTreeSet::new();
            let mut idx = vec![0usize; g - 1];
            let mut point = vec![first.clone(); g];
            loop {
                for (k, &i) in idx.iter().enumerate() {
                    point[k + 1] = vals[i].clone();
                }
                out.insert(p.eval(&point)?);
                let Some(k) = (0..g - 1).find(|&k| idx[k] + 1 < vals.len()) else {
                    break;
                };
                idx[k] += 1;
                idx[..k].fill(0);
            }
            Ok(out)
        })
        .try_reduce(BTreeSet::new, |mut x, y| {
            x.extend(y);
            Ok(x)
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use sumprod::finsets;
    use sumprod::GroupDescriptor;

    fn ga(v: impl IntoIterator<Item = i64>) -> FiniteSet {
        FiniteSet::from_values(GroupDescriptor::Additive, v.into_iter().map(Rational::from)).unwrap()
    }

    fn pool(threads: usize) -> rayon::ThreadPool {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap()
    }

    #[test]
    fn parallel_equals_sequential() {
        let a = ga((0..40).map(|i| i * i % 97));
        let b = ga([1, 5, 25, 125]);
        let f = Factorizer::default();
        let phi = MultiPoly::parse("x^2 - 3", None).unwrap();
        let c = Correspondence::graph(GroupDescriptor::Additive, GroupDescriptor::Additive, phi).unwrap();
        let implicit = Correspondence::implicit(
            GroupDescriptor::Additive,
            GroupDescriptor::Additive,
            MultiPoly::parse("y^2 - x", None).unwrap(),
        )
        .unwrap();
        let v = VarietySpec::new(GroupDescriptor::Additive, 3, vec![MultiPoly::parse("x1 + x2 - 2*x3", Some(3)).unwrap()], 2)
            .unwrap();
        let p = MultiPoly::parse("x*y + y*z + z*x", None).unwrap();
        let small = ga(1..=3);
        for threads in [1, 3, 8] {
            pool(threads).install(|| {
                assert_eq!(sumset(&a, &b).unwrap(), finsets::sumset(&a, &b).unwrap());
                assert_eq!(iterated(&b, 3).unwrap(), finsets::iterated(&b, 3).unwrap());
                assert_eq!(image(&c, &a, &f).unwrap(), c.image(&a).unwrap());
                assert_eq!(image(&implicit, &a, &f).unwrap(), implicit.image(&a).unwrap());
                let cs = [c.clone(), c.clone()];
                assert_eq!(image_sum(&cs, &a, &f).unwrap(), finsets::image_sum(&cs, &a).unwrap());
                assert_eq!(
                    count_points(&v, &a, 1 << 20).unwrap(),
                    sumprod::structure::count_points(&v, &a, 1 << 20).unwrap()
                );
                assert_eq!(poly_image(&p, &small, 100).unwrap().len(), 10);
            });
        }
    }

    #[test]
    fn budgets_are_enforced() {
        let p = MultiPoly::parse("x*y*z", None).unwrap();
        assert!(matches!(poly_image(&p, &ga(0..10), 999), Err(Error::BudgetExceeded { needed: 1000, .. })));
    }
}
