//! Acceptance checks, one line per criterion. Every criterion compares the
//! library against an oracle written independently in this file.
//!
//! Run with `cargo test -p sumprod --test acceptance`.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sumprod::arith::Factorizer;
use sumprod::corresp::Correspondence;
use sumprod::degen::{ga_degeneracy, gm_degeneracy, translation_invariance_certificate};
use sumprod::finsets::{box_set, doubling, image_sum, sumset};
use sumprod::patterns::{gap_enumerate, longest_ap, longest_gp, GapSpec};
use sumprod::structure::{count_points, mult_rank, ruzsa_cover, torsion_unfold, TorsionPoint, TorsionSet, VarietySpec};
use sumprod::{Curve, FiniteSet, GroupDescriptor, GroupElement, MultiPoly, Rational, SubgroupBasis};

type Outcome = Result<String, String>;

fn q(n: i64) -> Rational {
    Rational::from(n)
}

fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<String, String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))?;
    Ok(format!("{:.2?}", took))
}

// Group law

fn random_rational(rng: &mut ChaCha8Rng, nonzero: bool) -> Rational {
    loop {
        let r = frac(rng.gen_range(-50..=50), rng.gen_range(1..=12));
        if !(nonzero && r.is_zero()) {
            return r;
        }
    }
}

fn curve_samples() -> Vec<(GroupDescriptor, Vec<GroupElement>)> {
    let mk = |a: i64, b: i64, gens: &[(i64, i64)]| {
        let g = GroupDescriptor::Elliptic(Curve::new(q(a), q(b)).unwrap());
        let gens = gens.iter().map(|&(x, y)| GroupElement::affine(q(x), q(y))).collect();
        (g, gens)
    };
    vec![
        // rank 2
        mk(0, 17, &[(-2, 3), (-1, 4)]),
        // cyclic of order 6, with the 2-torsion point (-1, 0)
        mk(0, 1, &[(2, 3)]),
        // full 2-torsion
        mk(-1, 0, &[(0, 0), (1, 0)]),
        mk(0, -2, &[(3, 5)]),
    ]
}

fn random_point(rng: &mut ChaCha8Rng, g: &GroupDescriptor, gens: &[GroupElement]) -> GroupElement {
    let coeffs: Vec<i64> = gens.iter().map(|_| rng.gen_range(-4..=4)).collect();
    g.linear_combination(&coeffs, gens).unwrap()
}

fn group_law_suite() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checked = 0;
    let law = |g: &GroupDescriptor, p: &GroupElement, r: &GroupElement, s: &GroupElement| -> Result<(), String> {
        let op = |x: &GroupElement, y: &GroupElement| g.op(x, y).map_err(|e| format!("{e}"));
        let results = [
            op(&op(p, r)?, s)?,
            op(p, &op(r, s)?)?,
            op(p, r)?,
            op(r, p)?,
            op(p, &g.identity())?,
            op(p, &g.inverse(p).map_err(|e| format!("{e}"))?)?,
        ];
        ensure(results[0] == results[1], || format!("associativity fails on {g:?}: {p:?} {r:?} {s:?}"))?;
        ensure(results[2] == results[3], || format!("commutativity fails on {g:?}: {p:?} {r:?}"))?;
        ensure(&results[4] == p, || format!("identity fails on {g:?}: {p:?}"))?;
        ensure(results[5] == g.identity(), || format!("inverse fails on {g:?}: {p:?}"))?;
        if let Some(c) = g.curve() {
            for res in &results {
                if let GroupElement::Affine { x, y } = res {
                    // Recomputed here rather than through the library's own membership test.
                    let rhs = x * x * x + c.a() * x + c.b();
                    ensure(y * y == rhs, || format!("result {res:?} is off the curve"))?;
                }
            }
        }
        Ok(())
    };
    for _ in 0..1000 {
        let ga = GroupDescriptor::Additive;
        let v: Vec<GroupElement> = (0..3).map(|_| GroupElement::Add(random_rational(&mut rng, false))).collect();
        law(&ga, &v[0], &v[1], &v[2])?;
        let gm = GroupDescriptor::Multiplicative;
        let v: Vec<GroupElement> = (0..3).map(|_| GroupElement::Mul(random_rational(&mut rng, true))).collect();
        law(&gm, &v[0], &v[1], &v[2])?;
        checked += 2;
    }
    let curves = curve_samples();
    for i in 0..1000 {
        let (g, gens) = &curves[i % curves.len()];
        let v: Vec<GroupElement> = (0..3).map(|_| random_point(&mut rng, g, gens)).collect();
        law(g, &v[0], &v[1], &v[2])?;
        checked += 1;
    }
    let t = within(start, Duration::from_secs(10))?;
    Ok(format!("{checked} instances over Ga, Gm and 4 curves in {t}"))
}

// Coset example: A = {2^i : -N ≤ i ≤ N} ∪ {3} on X2X3 - X1 + 1.

fn coset_set(n: i64) -> FiniteSet {
    let vals = (-n..=n).map(|i| q(2).pow(i).unwrap()).chain([q(3)]);
    FiniteSet::from_values(GroupDescriptor::Multiplicative, vals).unwrap()
}

fn coset_example() -> Outcome {
    let start = Instant::now();
    let p = MultiPoly::parse("X2*X3 - X1 + 1", Some(3)).unwrap();
    let v = VarietySpec::new(GroupDescriptor::Multiplicative, 3, vec![p], 2).unwrap();
    let mut line = Vec::new();
    for n in 3..=8 {
        let a = coset_set(n);
        let count = count_points(&v, &a, 1 << 30).map_err(|e| e.to_string())?;
        let k = doubling(&a).map_err(|e| e.to_string())?;
        ensure(count >= a.len() as u64, || format!("N={n}: count {count} < |A| = {}", a.len()))?;
        ensure(k <= q(3), || format!("N={n}: doubling {k} > 3"))?;
        if n == 3 {
            let vals = a.values();
            let mut brute = 0;
            for x1 in &vals {
                for x2 in &vals {
                    for x3 in &vals {
                        if x2 * x3 - x1 + q(1) == q(0) {
                            brute += 1;
                        }
                    }
                }
            }
            ensure(brute == 15 && count == brute, || format!("N=3: count {count}, brute force {brute}, frozen 15"))?;
        }
        line.push(format!("{count}/{}", a.len()));
    }
    let t = within(start, Duration::from_secs(5))?;
    Ok(format!("counts/|A| for N=3..8: {} in {t}", line.join(" ")))
}

// Degeneracy criteria against a hand-rolled polynomial expansion.

/// Sparse polynomial over Q as a map from exponent vectors to coefficients.
#[derive(Clone, Debug, PartialEq)]
struct Expansion(BTreeMap<Vec<u32>, Rational>);

impl Expansion {
    fn from_poly(p: &MultiPoly, vars: usize) -> Self {
        let mut m = BTreeMap::new();
        for (e, c) in p.terms() {
            let mut e = e.clone();
            e.resize(vars, 0);
            m.insert(e, c.clone());
        }
        Expansion(m)
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        let entry = self.0.entry(e.clone()).or_insert_with(Rational::zero);
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.0.remove(&e);
        }
    }

    fn mul(&self, other: &Expansion) -> Expansion {
        let mut out = Expansion(BTreeMap::new());
        for (e1, c1) in &self.0 {
            for (e2, c2) in &other.0 {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// `P(x + t·v) − P(x)` in variables `x_1..x_g, t`, expanded term by term.
    fn shift_difference(p: &MultiPoly, v: &[Rational]) -> Expansion {
        let g = v.len();
        let unit = |i: usize| {
            let mut e = vec![0; g + 1];
            e[i] = 1;
            e
        };
        let mut total = Expansion(BTreeMap::new());
        for (e, c) in p.terms() {
            let mut term = Expansion(BTreeMap::from([(vec![0; g + 1], c.clone())]));
            for (i, &k) in e.iter().enumerate() {
                let mut lin = Expansion(BTreeMap::new());
                lin.add_term(unit(i), q(1));
                lin.add_term(unit(g), v[i].clone());
                for _ in 0..k {
                    term = term.mul(&lin);
                }
            }
            for (e, c) in term.0 {
                total.add_term(e, c);
            }
        }
        for (e, c) in Expansion::from_poly(p, g + 1).0 {
            total.add_term(e, -c);
        }
        total
    }
}

fn rank_oracle(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = &rows[r][c] / &rows[rank][c];
                let pivot = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(pivot) {
                    *x = &*x - &(&f * &y);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// The `t`-linear part of `P(x + t·e_i) − P(x)`, i.e. `∂P/∂x_i`, for each `i`.
fn partials_by_expansion(p: &MultiPoly, g: usize) -> Vec<BTreeMap<Vec<u32>, Rational>> {
    (0..g)
        .map(|i| {
            let mut v = vec![q(0); g];
            v[i] = q(1);
            Expansion::shift_difference(p, &v)
                .0
                .into_iter()
                .filter(|(e, _)| e[g] == 1)
                .map(|(mut e, c)| {
                    e.pop();
                    (e, c)
                })
                .collect()
        })
        .collect()
}

fn random_poly(rng: &mut ChaCha8Rng, g: usize) -> MultiPoly {
    loop {
        let terms: Vec<(Vec<u32>, Rational)> = (0..rng.gen_range(2..6))
            .map(|_| ((0..g).map(|_| rng.gen_range(0..3)).collect(), q(rng.gen_range(-4..=4))))
            .collect();
        let p = MultiPoly::from_terms(g, terms).unwrap();
        if !p.is_constant() {
            return p;
        }
    }
}

/// `F(L_1, L_2)` for random linear forms in three variables: always degenerate.
fn planted_degenerate(rng: &mut ChaCha8Rng) -> MultiPoly {
    let mut form = || {
        MultiPoly::from_terms(3, (0..3).map(|i| {
            let mut e = vec![0; 3];
            e[i] = 1;
            (e, q(rng.gen_range(-3..=3)))
        }))
        .unwrap()
    };
    let (l1, l2) = (form(), form());
    let f = &(&l1.pow(2) - &(&l1 * &l2)) + &l2.pow(3);
    &f + &l1.scale(&q(2))
}

fn degeneracy_suite() -> Outcome {
    let p1 = MultiPoly::parse("x*y + y*z + z*x", None).unwrap();
    ensure(ga_degeneracy(&p1).unwrap().is_none(), || "xy+yz+zx reported Ga-degenerate".into())?;
    let p2 = MultiPoly::parse("X2*X3 - X1 + 1", Some(3)).unwrap();
    ensure(gm_degeneracy(&p2).unwrap(), || "X2X3 - X1 + 1 not reported Gm-degenerate".into())?;

    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut degenerate, mut generic) = (0, 0);
    for i in 0..50 {
        let p = if i % 2 == 0 { planted_degenerate(&mut rng) } else { random_poly(&mut rng, 3) };
        if p.is_constant() {
            continue;
        }
        let g = p.num_vars();
        let partials = partials_by_expansion(&p, g);
        let monomials: BTreeSet<&Vec<u32>> = partials.iter().flat_map(|d| d.keys()).collect();
        let rows: Vec<Vec<Rational>> = monomials
            .iter()
            .map(|m| partials.iter().map(|d| d.get(*m).cloned().unwrap_or_else(Rational::zero)).collect())
            .collect();
        let oracle_degenerate = rank_oracle(rows) < g;
        match ga_degeneracy(&p).unwrap() {
            Some(v) => {
                ensure(oracle_degenerate, || format!("{p}: library found {v:?}, oracle says generic"))?;
                ensure(translation_invariance_certificate(&p, &v).unwrap(), || format!("{p}: certificate rejects {v:?}"))?;
                ensure(Expansion::shift_difference(&p, &v).0.is_empty(), || format!("{p}: P(x+tv) - P(x) ≠ 0 for {v:?}"))?;
                degenerate += 1;
            }
            None => {
                ensure(!oracle_degenerate, || format!("{p}: library says generic, oracle finds a direction"))?;
                generic += 1;
            }
        }
        if i % 2 == 0 {
            ensure(oracle_degenerate, || format!("{p}: planted degeneracy missed by the oracle"))?;
        }
        let exps: Vec<Vec<Rational>> = p.terms().map(|(e, _)| e.iter().map(|&k| q(k as i64)).collect()).collect();
        let gm_oracle = rank_oracle(exps) < g;
        ensure(gm_degeneracy(&p).unwrap() == gm_oracle, || format!("{p}: Gm criterion disagrees with the oracle"))?;
    }
    Ok(format!("named examples ok; 50 random polynomials agree ({degenerate} degenerate, {generic} generic)"))
}

fn box_doubling() -> Outcome {
    let gm = GroupDescriptor::Multiplicative;
    let gens: Vec<GroupElement> = [2, 3, 5].iter().map(|&p| GroupElement::Mul(q(p))).collect();
    let rank = mult_rank(&FiniteSet::new(gm.clone(), gens.clone()).unwrap(), &Factorizer::default()).unwrap();
    ensure(rank == 3, || format!("mult_rank {{2,3,5}} = {rank}"))?;
    let basis = SubgroupBasis::new(gm, gens).unwrap();
    let mut sizes = Vec::new();
    for l in 1..=3u32 {
        let a = box_set(&basis, l, None).unwrap();
        let aa = sumset(&a, &a).unwrap();
        let side = |s: u32| (s as usize).pow(3);
        ensure(a.len() == side(2 * l + 1), || format!("L={l}: |A| = {}", a.len()))?;
        ensure(aa.len() == side(4 * l + 1), || format!("L={l}: |A+A| = {}", aa.len()))?;
        ensure(aa.len() <= 8 * a.len(), || format!("L={l}: |A+A| > 8|A|"))?;
        sizes.push(format!("{}→{}", a.len(), aa.len()));
    }
    Ok(format!("|A|→|A+A|: {}", sizes.join(", ")))
}

fn gap_hypercube() -> Outcome {
    let ga = GroupDescriptor::Additive;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut line = Vec::new();
    for k in 1..=8u32 {
        let bound = 3usize.pow(k);
        // Powers of 10 are independent at this scale: equality.
        let steps: Vec<GroupElement> = (0..k).map(|i| GroupElement::Add(q(10i64.pow(i)))).collect();
        let cube = GapSpec::hypercube(ga.clone(), GroupElement::Add(q(7)), steps).unwrap();
        let (p, proper) = gap_enumerate(&cube).unwrap();
        ensure(proper, || format!("k={k}: independent cube not proper"))?;
        let pp = sumset(&p, &p).unwrap().len();
        ensure(pp == bound, || format!("k={k}: |P'+P'| = {pp}, expected {bound}"))?;
        // Random small steps: proper or not, the bound holds.
        let steps: Vec<GroupElement> = (0..k).map(|_| GroupElement::Add(frac(rng.gen_range(1..40), rng.gen_range(1..4)))).collect();
        let cube = GapSpec::hypercube(ga.clone(), GroupElement::Add(q(0)), steps).unwrap();
        let (p, proper) = gap_enumerate(&cube).unwrap();
        let pp = sumset(&p, &p).unwrap().len();
        if proper {
            ensure(pp <= bound, || format!("k={k}: random cube |P'+P'| = {pp} > {bound}"))?;
        }
        line.push(pp.to_string());
    }
    Ok(format!("independent cubes hit 3^k for k=1..8; random cubes {}", line.join(" ")))
}

fn ruzsa_covering() -> Outcome {
    let ga = GroupDescriptor::Additive;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut max_x = 0;
    for _ in 0..100 {
        let (na, nb) = (rng.gen_range(1..=25), rng.gen_range(1..=12));
        let a_vals: Vec<i64> = (0..na).map(|_| rng.gen_range(-60..=60)).collect();
        let b_vals: Vec<i64> = (0..nb).map(|_| rng.gen_range(-20..=20)).collect();
        let a = FiniteSet::from_values(ga.clone(), a_vals.iter().map(|&v| q(v))).unwrap();
        let b = FiniteSet::from_values(ga.clone(), b_vals.iter().map(|&v| q(v))).unwrap();
        let x = ruzsa_cover(&a, &b).unwrap();
        let (av, bv, xv) = (a.values(), b.values(), x.values());
        let ab: BTreeSet<Rational> = av.iter().flat_map(|s| bv.iter().map(move |t| s + t)).collect();
        let k_ceil = ab.len().div_ceil(bv.len());
        ensure(xv.len() <= k_ceil, || format!("|X| = {} > ⌈K⌉ = {k_ceil}", xv.len()))?;
        ensure(xv.iter().all(|v| av.contains(v)), || "X not inside A".into())?;
        for s in &av {
            let covered = xv.iter().any(|xx| bv.iter().any(|b1| bv.iter().any(|b2| &(xx + b1) - b2 == *s)));
            ensure(covered, || format!("{s} not in X + B - B"))?;
        }
        max_x = max_x.max(xv.len());
    }
    Ok(format!("100 instances, largest X has {max_x} elements"))
}

fn freiman_unfolding() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut min_density = f64::INFINITY;
    for _ in 0..50 {
        let rank = rng.gen_range(0..3);
        let n = rng.gen_range(1..200u64);
        let m = rng.gen_range(1..50u64);
        let size = rng.gen_range(1..=40);
        // A narrow residue window makes some cells dense.
        let window = rng.gen_range(1..=n as i64);
        let pts: Vec<(Vec<i64>, i64, i64)> = (0..size)
            .map(|_| {
                let free = (0..rank).map(|_| rng.gen_range(-3..=3)).collect();
                (free, rng.gen_range(0..window), rng.gen_range(0..m as i64))
            })
            .collect();
        let s = TorsionSet::new(rank, n, m, pts).unwrap();
        let u = torsion_unfold(&s).map_err(|e| e.to_string())?;
        ensure(100 * u.subset.len() >= s.len(), || format!("density {}/{}", u.subset.len(), s.len()))?;
        let add_t = |p: &TorsionPoint, r: &TorsionPoint| {
            let free: Vec<i64> = p.free.iter().zip(&r.free).map(|(x, y)| x + y).collect();
            (free, (p.a + r.a) % n, (p.b + r.b) % m)
        };
        let add_l = |p: &Vec<i64>, r: &Vec<i64>| -> Vec<i64> { p.iter().zip(r).map(|(x, y)| x + y).collect() };
        let k = u.subset.len();
        for i1 in 0..k {
            for i2 in 0..k {
                for i3 in 0..k {
                    for i4 in 0..k {
                        let torsion_eq = add_t(&u.subset[i1], &u.subset[i2]) == add_t(&u.subset[i3], &u.subset[i4]);
                        let lifted_eq = add_l(&u.lifted[i1], &u.lifted[i2]) == add_l(&u.lifted[i3], &u.lifted[i4]);
                        ensure(torsion_eq == lifted_eq, || format!("quadruple ({i1},{i2},{i3},{i4}) breaks the isomorphism"))?;
                    }
                }
            }
        }
        min_density = min_density.min(u.subset.len() as f64 / s.len() as f64);
    }
    Ok(format!("50 sets, all quadruples agree, minimum density {min_density:.3}"))
}

fn vsum_identity() -> Outcome {
    let ga = GroupDescriptor::Additive;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut sizes = Vec::new();
    for g in 1..=3usize {
        for _ in 0..5 {
            let phis: Vec<MultiPoly> = (0..g)
                .map(|_| loop {
                    let coeffs: Vec<Rational> = (0..=rng.gen_range(1..=3)).map(|_| frac(rng.gen_range(-5..=5), rng.gen_range(1..=3))).collect();
                    let p = MultiPoly::univariate(&coeffs);
                    if !p.is_constant() {
                        break p;
                    }
                })
                .collect();
            let size = rng.gen_range(1..=20);
            let a = FiniteSet::from_values(ga.clone(), (0..size).map(|_| q(rng.gen_range(-30..=30)))).unwrap();
            let cs: Vec<Correspondence> = phis.iter().map(|p| Correspondence::graph(ga.clone(), ga.clone(), p.clone()).unwrap()).collect();
            let lib: BTreeSet<Rational> = image_sum(&cs, &a).unwrap().values().into_iter().collect();
            let vals = a.values();
            let mut brute: BTreeSet<Rational> = BTreeSet::new();
            let mut idx = vec![0usize; g];
            'outer: loop {
                let s: Rational = (0..g).map(|i| phis[i].eval(&[vals[idx[i]].clone()]).unwrap()).sum();
                brute.insert(s);
                for slot in idx.iter_mut() {
                    *slot += 1;
                    if *slot < vals.len() {
                        continue 'outer;
                    }
                    *slot = 0;
                }
                break;
            }
            ensure(lib == brute, || format!("g={g}: image_sum has {} elements, brute force {}", lib.len(), brute.len()))?;
            sizes.push(lib.len().to_string());
        }
    }
    Ok(format!("15 instances for g=1..3, image sizes {}", sizes.join(" ")))
}

fn expansion_probe() -> Outcome {
    let start = Instant::now();
    let gm = GroupDescriptor::Multiplicative;
    let ga = GroupDescriptor::Additive;
    let phi = MultiPoly::parse("x + 1", None).unwrap();
    let c = Correspondence::graph(gm.clone(), ga, phi).unwrap();
    let mut line = Vec::new();
    for n in [10usize, 100, 500] {
        let a = FiniteSet::from_values(gm.clone(), (0..n as i64).map(|i| q(2).pow(i).unwrap())).unwrap();
        let size = image_sum(&[c.clone(), c.clone()], &a).unwrap().len();
        ensure(size == n * (n + 1) / 2, || format!("n={n}: |φ(A)+φ(A)| = {size}"))?;
        ensure(2 * size >= n * n, || format!("n={n}: below |A|²/2"))?;
        let k = doubling(&a).unwrap();
        ensure(k < q(2), || format!("n={n}: doubling {k}"))?;
        if n == 10 {
            let brute: BTreeSet<i64> = (0..10).flat_map(|i| (0..10).map(move |j| (1i64 << i) + 1 + (1i64 << j) + 1)).collect();
            ensure(brute.len() == 55 && size == 55, || format!("n=10: brute force {}", brute.len()))?;
        }
        line.push(format!("n={n}: {size}"));
    }
    let t = within(start, Duration::from_secs(60))?;
    Ok(format!("{} in {t}", line.join(", ")))
}

fn correspondence_degree() -> Outcome {
    let gm = GroupDescriptor::Multiplicative;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for d in 1..=5usize {
        let mut coeffs: Vec<Rational> = (0..d).map(|_| q(rng.gen_range(-4..=4))).collect();
        coeffs.push(q(rng.gen_range(1..=4)));
        let phi = MultiPoly::univariate(&coeffs);
        let c = Correspondence::graph(gm.clone(), gm.clone(), phi.clone()).unwrap();
        ensure(c.degree() as usize == d + 1, || format!("{phi}: degree {}", c.degree()))?;
    }
    Ok("degree d+1 for d=1..5".into())
}

// Exhaustive progression search, independent of the pair DP.

fn ap_oracle(s: &[Rational]) -> (usize, Option<(Rational, Rational)>) {
    let set: BTreeSet<&Rational> = s.iter().collect();
    let mut best = (1, set.first().map(|u| ((*u).clone(), q(0))));
    for u in &set {
        for w in &set {
            if w <= u {
                continue;
            }
            let d = *w - *u;
            let mut len = 1;
            let mut x = (*u).clone();
            while set.contains(&x) {
                len += 1;
                x = &x + &d;
            }
            len -= 1;
            let cand = Some(((*u).clone(), d));
            if len > best.0 || (len == best.0 && cand < best.1) {
                best = (len, cand);
            }
        }
    }
    best
}

fn gp_oracle(s: &[Rational]) -> (usize, Option<(Rational, Rational)>) {
    let set: BTreeSet<&Rational> = s.iter().filter(|x| !x.is_zero()).collect();
    let mut best = (set.len().min(1), set.first().map(|u| ((*u).clone(), q(1))));
    for u in &set {
        for w in &set {
            if w.abs() <= u.abs() {
                continue;
            }
            let r = *w / *u;
            let mut len = 0;
            let mut x = (*u).clone();
            while set.contains(&x) {
                len += 1;
                x = &x * &r;
            }
            let cand = Some(((*u).clone(), r));
            if len > best.0 || (len == best.0 && cand < best.1) {
                best = (len, cand);
            }
        }
    }
    best
}

fn pattern_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut subsets = 0usize;
    let (mut best_ap, mut best_gp) = (0, 0);
    for round in 0..20 {
        // Values from a small pool so progressions are common.
        let pool: Vec<Rational> = if round % 2 == 0 {
            (-6..=12).map(|i| frac(i, 2)).collect()
        } else {
            let mut p: Vec<Rational> = (-4..=4).map(|i| q(2).pow(i).unwrap()).collect();
            p.extend((-3..=3).map(|i| -q(3).pow(i).unwrap()));
            p.extend([q(0), q(6), q(12)]);
            p
        };
        let set: Vec<Rational> = pool.choose_multiple(&mut rng, 12).cloned().collect();
        for mask in 1u32..(1 << set.len()) {
            let sub: Vec<Rational> = (0..set.len()).filter(|i| mask >> i & 1 == 1).map(|i| set[i].clone()).collect();
            let ap = longest_ap(&sub).unwrap();
            let (len, wit) = ap_oracle(&sub);
            ensure(ap.length == len && ap.witness == wit, || format!("AP on {sub:?}: {ap:?} vs oracle {len} {wit:?}"))?;
            let gp = longest_gp(&sub).unwrap();
            let (len, wit) = gp_oracle(&sub);
            ensure(gp.length == len && gp.witness == wit, || format!("GP on {sub:?}: {gp:?} vs oracle {len} {wit:?}"))?;
            best_ap = best_ap.max(ap.length);
            best_gp = best_gp.max(gp.length);
            subsets += 1;
        }
    }
    Ok(format!("{subsets} subsets agree; longest AP {best_ap}, longest GP {best_gp}"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("group law", group_law_suite),
        ("coset construction count", coset_example),
        ("degeneracy criteria", degeneracy_suite),
        ("box doubling", box_doubling),
        ("GAP hypercube", gap_hypercube),
        ("Ruzsa covering", ruzsa_covering),
        ("Freiman unfolding", freiman_unfolding),
        ("V_sum identity", vsum_identity),
        ("expansion probe", expansion_probe),
        ("correspondence degree", correspondence_degree),
        ("pattern DP oracle", pattern_oracle),
    ];
    let mut failures = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failures += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!("{} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
