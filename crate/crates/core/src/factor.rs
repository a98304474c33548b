//! Integer factorization for square-class computations.
//!
//! Trial division up to a configurable bound, then Miller–Rabin to recognise
//! prime cofactors and Pollard–Brent rho to split composite ones. Inputs in
//! this crate are products of small primes and table constants, so the rho
//! stage is rarely exercised; a cofactor that cannot be split within the
//! iteration budget is reported as an error rather than guessed at.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;
const DEFAULT_RHO_ITERATIONS: u64 = 2_000_000;

/// Witness bases for Miller–Rabin; deterministic below 3.3 * 10^24.
const MR_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorConfig {
    pub trial_bound: u64,
    pub rho_iterations: u64,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            trial_bound: DEFAULT_TRIAL_BOUND,
            rho_iterations: DEFAULT_RHO_ITERATIONS,
        }
    }
}

impl FactorConfig {
    pub fn with_trial_bound(trial_bound: u64) -> Self {
        FactorConfig {
            trial_bound: trial_bound.max(2),
            ..Default::default()
        }
    }

    /// Prime factorization of `n >= 1`, sorted by prime. `factorize(1)` is empty.
    pub fn factorize(&self, n: &BigUint) -> Result<Vec<(BigUint, u32)>> {
        if n.is_zero() {
            return Err(Error::NotAUnit);
        }
        let mut primes = Vec::new();
        let mut rest = n.clone();

        let mut d: u64 = 2;
        while d <= self.trial_bound {
            let dd = BigUint::from(d);
            if &dd * &dd > rest {
                break;
            }
            if (&rest % d).is_zero() {
                let mut e = 0;
                while (&rest % d).is_zero() {
                    rest /= d;
                    e += 1;
                }
                primes.push((dd, e));
            }
            d += if d == 2 { 1 } else { 2 };
        }

        if !rest.is_one() {
            let bound = BigUint::from(self.trial_bound);
            if rest <= &bound * &bound {
                primes.push((rest, 1));
            } else {
                let mut big = Vec::new();
                self.split_large(rest, &mut big)?;
                big.sort();
                for p in big {
                    match primes.last_mut() {
                        Some((q, e)) if *q == p => *e += 1,
                        _ => primes.push((p, 1)),
                    }
                }
            }
        }
        primes.sort();
        Ok(primes)
    }

    fn split_large(&self, n: BigUint, out: &mut Vec<BigUint>) -> Result<()> {
        if n.is_one() {
            return Ok(());
        }
        if is_probable_prime(&n) {
            out.push(n);
            return Ok(());
        }
        if let Some(r) = exact_sqrt(&n) {
            self.split_large(r.clone(), out)?;
            return self.split_large(r, out);
        }
        for c in 1u32..=20 {
            if let Some(d) = brent_rho(&n, c, self.rho_iterations) {
                self.split_large(&n / &d, out)?;
                return self.split_large(d, out);
            }
        }
        Err(Error::Unfactored(n.to_string()))
    }
}

fn exact_sqrt(n: &BigUint) -> Option<BigUint> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        if small < 2 {
            return false;
        }
        for &p in &MR_BASES {
            if small == p as u64 {
                return true;
            }
            if small % p as u64 == 0 {
                return false;
            }
        }
    } else {
        for &p in &MR_BASES {
            if (n % p).is_zero() {
                return false;
            }
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in &MR_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// One run of Brent's variant of Pollard rho with f(x) = x^2 + c.
fn brent_rho(n: &BigUint, c: u32, max_iter: u64) -> Option<BigUint> {
    let c = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &c) % n;
    let mut y = BigUint::from(2u32);
    let mut r: u64 = 1;
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    let m: u64 = 128;
    let mut iters = 0;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
        iters += r;
        if iters > max_iter {
            return None;
        }
    }
    if g == *n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (g != *n).then_some(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factor_u64(n: u64) -> Vec<(u64, u32)> {
        FactorConfig::default()
            .factorize(&BigUint::from(n))
            .unwrap()
            .into_iter()
            .map(|(p, e)| (p.to_u64().unwrap(), e))
            .collect()
    }

    #[test]
    fn small_factorizations() {
        assert_eq!(factor_u64(1), vec![]);
        assert_eq!(factor_u64(18), vec![(2, 1), (3, 2)]);
        assert_eq!(factor_u64(52272), vec![(2, 4), (3, 3), (11, 2)]);
        assert_eq!(factor_u64(1_000_003), vec![(1_000_003, 1)]);
    }

    #[test]
    fn rho_splits_beyond_trial_bound() {
        let cfg = FactorConfig::with_trial_bound(100);
        let p = BigUint::from(1_000_003u64);
        let q = BigUint::from(998_244_353u64);
        let n = &p * &q * &q;
        let f = cfg.factorize(&n).unwrap();
        assert_eq!(f, vec![(p, 1), (q, 2)]);
    }

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        for n in 0u64..3000 {
            let trial = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_probable_prime(&BigUint::from(n)), trial, "n = {n}");
        }
    }

    #[test]
    fn zero_is_rejected() {
        assert!(FactorConfig::default().factorize(&BigUint::zero()).is_err());
    }
}
