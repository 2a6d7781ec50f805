//! Integer kernel shared by the correspondence and structure modules: exact
//! square roots, primality, and budgeted factorization.
//!
//! Factorization is trial division by every prime up to a limit (10⁶ by
//! default) followed by Brent's variant of Pollard rho with a hard cap on the
//! total number of iterations. Running out of budget is reported as
//! [`Error::FactorizationBudgetExceeded`]; no partial answer is ever returned.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Result};

/// Floor of the square root, by Newton iteration on integers.
pub fn isqrt(n: &BigUint) -> BigUint {
    if n.is_zero() {
        return BigUint::zero();
    }
    // Start above the root: 2^ceil(bits/2).
    let mut x = BigUint::one() << n.bits().div_ceil(2);
    loop {
        let y = (&x + n / &x) >> 1;
        if y >= x {
            return x;
        }
        x = y;
    }
}

pub fn is_square(n: &BigUint) -> bool {
    let r = isqrt(n);
    &(&r * &r) == n
}

const MR_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Miller-Rabin with the first thirteen prime bases. Deterministic below
/// 3.3·10²⁴, overwhelmingly reliable above.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for &p in &MR_BASES {
        let p = BigUint::from(p);
        if n == &p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_one = n - 1u32;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'witness: for &a in &MR_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Limits for [`Factorizer`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorBudget {
    /// Trial division covers every prime up to this bound.
    pub trial_limit: u32,
    /// Total Pollard-rho iterations allowed for one factorization.
    pub rho_steps: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            trial_limit: 1_000_000,
            rho_steps: 2_000_000,
        }
    }
}

/// Prime factorization of a positive integer as `(prime, exponent)` pairs in
/// increasing prime order.
pub type Factorization = Vec<(BigUint, u32)>;

/// Reusable factoring context; holds the trial-division prime table.
#[derive(Debug, Clone)]
pub struct Factorizer {
    budget: FactorBudget,
    primes: Vec<u32>,
}

impl Default for Factorizer {
    fn default() -> Self {
        Factorizer::new(FactorBudget::default())
    }
}

impl Factorizer {
    pub fn new(budget: FactorBudget) -> Self {
        Factorizer {
            budget,
            primes: sieve(budget.trial_limit),
        }
    }

    pub fn budget(&self) -> FactorBudget {
        self.budget
    }

    /// Factors `n ≥ 1`. `factor(1)` is empty.
    pub fn factor(&self, n: &BigUint) -> Result<Factorization> {
        if n.is_zero() {
            return Err(Error::InvalidArgument("cannot factor zero".to_string()));
        }
        let mut rest = n.clone();
        let mut out: Factorization = Vec::new();
        for &p in &self.primes {
            if rest.is_one() {
                break;
            }
            let pb = BigUint::from(p);
            if &pb * &pb > rest {
                break;
            }
            if let Some(small) = rest.to_u64() {
                // Cheap path once the cofactor fits a machine word.
                let mut e = 0;
                let mut r = small;
                while r % p as u64 == 0 {
                    r /= p as u64;
                    e += 1;
                }
                if e > 0 {
                    out.push((pb, e));
                    rest = BigUint::from(r);
                }
                continue;
            }
            let mut e = 0;
            loop {
                let (q, r) = rest.div_rem(&pb);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                e += 1;
            }
            if e > 0 {
                out.push((pb, e));
            }
        }
        if !rest.is_one() {
            let limit = BigUint::from(self.budget.trial_limit);
            if &limit * &limit >= rest || is_probable_prime(&rest) {
                out.push((rest, 1));
            } else {
                let mut steps = self.budget.rho_steps;
                let mut large = Vec::new();
                self.split(&rest, &mut steps, &mut large)
                    .map_err(|_| Error::FactorizationBudgetExceeded(n.to_string()))?;
                large.sort();
                for p in large {
                    match out.last_mut() {
                        Some((q, e)) if *q == p => *e += 1,
                        _ => out.push((p, 1)),
                    }
                }
            }
        }
        Ok(out)
    }

    fn split(&self, n: &BigUint, steps: &mut u64, out: &mut Vec<BigUint>) -> Result<(), ()> {
        if n.is_one() {
            return Ok(());
        }
        if is_probable_prime(n) {
            out.push(n.clone());
            return Ok(());
        }
        if is_square(n) {
            let r = isqrt(n);
            self.split(&r, steps, out)?;
            return self.split(&r, steps, out);
        }
        let mut c = 1u32;
        loop {
            if let Some(d) = brent_rho(n, &BigUint::from(c), steps) {
                self.split(&d, steps, out)?;
                return self.split(&(n / &d), steps, out);
            }
            if *steps == 0 {
                return Err(());
            }
            c += 1;
        }
    }
}

/// One Brent-rho attempt with `x ↦ x² + c`. Returns a nontrivial factor, or
/// `None` on cycle failure or budget exhaustion.
fn brent_rho(n: &BigUint, c: &BigUint, steps: &mut u64) -> Option<BigUint> {
    const BATCH: u64 = 64;
    let f = |x: &BigUint| (x * x + c) % n;
    let mut y = BigUint::from(2u32);
    let mut x;
    let mut ys;
    let mut q = BigUint::one();
    let mut g;
    let mut r: u64 = 1;
    loop {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        loop {
            ys = y.clone();
            let batch = BATCH.min(r - k);
            for _ in 0..batch {
                if *steps == 0 {
                    return None;
                }
                *steps -= 1;
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += batch;
            if k >= r || !g.is_one() {
                break;
            }
        }
        r *= 2;
        if !g.is_one() {
            break;
        }
    }
    if &g == n {
        // Batched gcd overshot; replay one step at a time.
        loop {
            if *steps == 0 {
                return None;
            }
            *steps -= 1;
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    if &g == n {
        None
    } else {
        Some(g)
    }
}

fn sieve(limit: u32) -> Vec<u32> {
    let limit = limit as usize;
    if limit < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i as u32);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// All positive divisors of the number with factorization `f`, unsorted.
/// Fails with `BudgetExceeded` when there would be more than `cap` of them.
pub fn divisors(f: &Factorization, cap: usize) -> Result<Vec<BigUint>> {
    let count: u128 = f.iter().map(|(_, e)| *e as u128 + 1).product();
    if count > cap as u128 {
        return Err(Error::BudgetExceeded {
            needed: count,
            budget: cap as u128,
        });
    }
    let mut out = vec![BigUint::one()];
    for (p, e) in f {
        let len = out.len();
        let mut power = BigUint::one();
        for _ in 0..*e {
            power *= p;
            for i in 0..len {
                let d = &out[i] * &power;
                out.push(d);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(s: &str) -> BigUint {
        s.parse().unwrap()
    }

    fn product(f: &Factorization) -> BigUint {
        f.iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e))
    }

    #[test]
    fn isqrt_floors() {
        for n in 0u32..2000 {
            let r = isqrt(&BigUint::from(n)).to_u32().unwrap();
            assert!(r * r <= n && (r + 1) * (r + 1) > n, "n={n}");
        }
        let n = big("123456789012345678901234567890");
        let r = isqrt(&n);
        assert!(&r * &r <= n && (&r + 1u32) * (&r + 1u32) > n);
    }

    #[test]
    fn primality() {
        let primes: Vec<u32> = (0..200).filter(|&n| is_probable_prime(&BigUint::from(n))).collect();
        assert_eq!(primes, sieve(199));
        assert!(is_probable_prime(&big("1000000000000000003")));
        // Carmichael number
        assert!(!is_probable_prime(&BigUint::from(561u32)));
        assert!(is_probable_prime(&big("170141183460469231731687303715884105727")));
    }

    #[test]
    fn factors_small_and_semiprime() {
        let f = Factorizer::default();
        assert!(f.factor(&BigUint::one()).unwrap().is_empty());
        assert_eq!(
            f.factor(&BigUint::from(360u32)).unwrap(),
            vec![(BigUint::from(2u32), 3), (BigUint::from(3u32), 2), (BigUint::from(5u32), 1)]
        );
        // Both factors above the trial-division limit.
        let p = big("1000000007");
        let q = big("998244353");
        let n = &p * &q * &p;
        let fac = f.factor(&n).unwrap();
        assert_eq!(fac, vec![(q.clone(), 1), (p.clone(), 2)]);
        assert_eq!(product(&fac), n);
    }

    #[test]
    fn budget_is_enforced() {
        let f = Factorizer::new(FactorBudget {
            trial_limit: 100,
            rho_steps: 10,
        });
        let n = big("1000000007") * big("998244353");
        assert!(matches!(f.factor(&n), Err(Error::FactorizationBudgetExceeded(_))));
    }

    #[test]
    fn divisor_enumeration() {
        let f = Factorizer::default();
        let fac = f.factor(&BigUint::from(60u32)).unwrap();
        let mut d = divisors(&fac, 100).unwrap();
        d.sort();
        let expected: Vec<BigUint> = [1u32, 2, 3, 4, 5, 6, 10, 12, 15, 20, 30, 60]
            .iter()
            .map(|&x| BigUint::from(x))
            .collect();
        assert_eq!(d, expected);
        assert!(divisors(&fac, 5).is_err());
    }
}
