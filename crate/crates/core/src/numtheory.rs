//! Exact integer predicates: square roots, factorization and the
//! three-squares representability classification.

use std::sync::OnceLock;

/// Trial division bound used before falling back to Pollard rho.
const TRIAL_BOUND: u64 = 1_000_000;

/// Miller-Rabin witnesses; deterministic for every n < 2^64.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// `⌊√n⌋`, decided by integer comparisons only.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    // Seed from f64, then correct; the seed is within a few units of the answer.
    let mut r = (n as f64).sqrt() as u64;
    while (r as u128) * (r as u128) > n as u128 {
        r -= 1;
    }
    while ((r + 1) as u128) * ((r + 1) as u128) <= n as u128 {
        r += 1;
    }
    r
}

/// True iff `n` is the square of an integer.
#[inline]
pub fn is_perfect_square(n: u64) -> bool {
    // Squares mod 64 take only 12 of 64 values; this rejects most candidates cheaply.
    const SQ_MOD64: u64 = {
        let mut mask = 0u64;
        let mut i = 0;
        while i < 64 {
            mask |= 1 << ((i * i) % 64);
            i += 1;
        }
        mask
    };
    if (SQ_MOD64 >> (n & 63)) & 1 == 0 {
        return false;
    }
    let r = isqrt(n);
    r * r == n
}

/// A positive integer together with its prime factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredInteger {
    pub n: u64,
    /// `(prime, exponent)` pairs, primes strictly increasing.
    pub factors: Vec<(u64, u32)>,
}

impl FactoredInteger {
    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e <= 1)
    }

    /// Product of `p^e` over the factor list.
    pub fn product(&self) -> u128 {
        self.factors
            .iter()
            .fold(1u128, |acc, &(p, e)| acc * (p as u128).pow(e))
    }
}

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = TRIAL_BOUND as usize;
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
    })
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_WITNESSES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard rho. `n` must be an odd composite.
fn pollard_brent(n: u64) -> u64 {
    // Walk the polynomial constants deterministically until a split appears.
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut ys) = (2u64, 2u64, 2u64);
        let mut q = 1u64;
        let mut g = 1u64;
        let mut r = 1u64;
        const BATCH: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            // Batched gcd overshot; replay one step at a time.
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("rho constants exhausted")
}

fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    if let Some(r) = Some(isqrt(n)).filter(|r| r * r == n) {
        split_large(r, out);
        split_large(r, out);
        return;
    }
    let d = pollard_brent(n);
    split_large(d, out);
    split_large(n / d, out);
}

/// Complete factorization of `1 <= n < 2^63`.
pub fn factorize(n: u64) -> FactoredInteger {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut rest = n;
    let mut primes: Vec<u64> = Vec::new();
    for &p in small_primes() {
        let p = p as u64;
        if p * p > rest {
            break;
        }
        while rest % p == 0 {
            primes.push(p);
            rest /= p;
        }
    }
    if rest > 1 {
        if rest < TRIAL_BOUND * TRIAL_BOUND {
            // No factor ≤ 10^6 remains, so anything below 10^12 is prime.
            primes.push(rest);
        } else {
            split_large(rest, &mut primes);
        }
    }
    primes.sort_unstable();
    let mut factors: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    FactoredInteger { n, factors }
}

pub fn is_squarefree(n: u64) -> bool {
    factorize(n).is_squarefree()
}

/// Write `n = 4^a · m` with `4 ∤ m`; returns `(a, m)`.
pub fn strip_four_powers(n: u64) -> (u32, u64) {
    assert!(n >= 1, "strip_four_powers requires n >= 1");
    let mut a = 0;
    let mut m = n;
    while m % 4 == 0 {
        m /= 4;
        a += 1;
    }
    (a, m)
}

/// Legendre/Gauss: `n` is a sum of three squares iff `n ≠ 4^a(8b+7)`.
pub fn three_squares_representable(n: u64) -> bool {
    strip_four_powers(n).1 % 8 != 7
}

/// Residue test for the existence of primitive representations as a sum of
/// three squares: `n mod 8 ∉ {0, 4, 7}`.
pub fn admits_primitive(n: u64) -> bool {
    !matches!(n % 8, 0 | 4 | 7)
}

/// Number of representations of `n ≥ 1` as an ordered sum of four signed
/// squares: `8 · Σ_{d | n, 4 ∤ d} d` (Jacobi).
pub fn four_square_count(n: u64) -> u64 {
    assert!(n >= 1, "four_square_count requires n >= 1");
    let mut sigma: u128 = 1;
    for &(p, e) in &factorize(n).factors {
        if p == 2 {
            // Divisors 1 and 2 only.
            sigma *= 3;
        } else {
            let p = p as u128;
            sigma *= (p.pow(e + 1) - 1) / (p - 1);
        }
    }
    u64::try_from(8 * sigma).expect("four-square count fits in u64")
}
