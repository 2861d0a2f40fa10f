//! Word-sized number theory: primality, factorization, multiplicative
//! orders, common primitive roots and the CRT element that seeds the
//! Whiteman classes.

use serde::Serialize;
use thiserror::Error;

/// Largest prime accepted for `p` or `q`.
pub const PRIME_CAP: u64 = 1 << 20;

/// Why a parameter pair was rejected. The `code` strings are stable and are
/// what the CLI and the C ABI report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p and q must be distinct (both are {0})")]
    EqualPrimes(u64),
    #[error("p = 2 or q = 2 is not allowed; both primes must be odd")]
    EvenPrime,
    #[error("gcd(p-1, q-1) = {0}, expected 2")]
    GcdNotTwo(u64),
    #[error("strict mode requires p = 1 (mod 4) and q = 3 (mod 4), got p = {p}, q = {q}")]
    CongruenceViolation { p: u64, q: u64 },
    #[error("{0} exceeds the parameter cap 2^20")]
    TooLarge(u64),
    #[error("g = {g} is not a common primitive root of {p} and {q}")]
    NotPrimitiveRoot { g: u64, p: u64, q: u64 },
    #[error("no common primitive root of {p} and {q} below {n}")]
    NoCommonRoot { p: u64, q: u64, n: u64 },
    #[error("e = {0} is odd, the D_ij classes are not well defined")]
    OddE(u64),
    #[error("gcd({a}, {n}) != 1")]
    NotCoprime { a: u64, n: u64 },
}

impl ParamError {
    pub fn code(&self) -> &'static str {
        match self {
            ParamError::NotPrime(_) => "not-prime",
            ParamError::EqualPrimes(_) => "equal-primes",
            ParamError::EvenPrime => "even-prime",
            ParamError::GcdNotTwo(_) => "gcd-not-two",
            ParamError::CongruenceViolation { .. } => "congruence-violation",
            ParamError::TooLarge(_) => "too-large",
            ParamError::NotPrimitiveRoot { .. } => "not-primitive-root",
            ParamError::NoCommonRoot { .. } => "no-common-root",
            ParamError::OddE(_) => "odd-e",
            ParamError::NotCoprime { .. } => "not-coprime",
        }
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
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

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
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

// Brent's variant of Pollard rho; `n` must be an odd composite.
fn pollard_rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Prime factorization as sorted `(prime, exponent)` pairs. `factorize(1)` is empty.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    let mut primes = Vec::new();
    let mut stack = vec![n];
    while let Some(mut m) = stack.pop() {
        for small in [2u64, 3, 5, 7, 11, 13] {
            while m % small == 0 {
                primes.push(small);
                m /= small;
            }
        }
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            primes.push(m);
        } else {
            let d = pollard_rho(m);
            stack.push(d);
            stack.push(m / d);
        }
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// Multiplicative order of `a` modulo `n`, obtained by stripping prime
/// factors off the group order rather than by scanning powers.
pub fn mult_order(a: u64, n: u64) -> Result<u64, ParamError> {
    if n < 2 || gcd(a % n, n) != 1 {
        return Err(ParamError::NotCoprime { a, n });
    }
    let mut order = euler_phi(n);
    for (p, e) in factorize(order) {
        for _ in 0..e {
            if pow_mod(a, order / p, n) == 1 {
                order /= p;
            } else {
                break;
            }
        }
    }
    Ok(order)
}

pub fn is_primitive_root(g: u64, p: u64) -> bool {
    mult_order(g, p).is_ok_and(|k| k == p - 1)
}

/// Smallest `g >= 2` that is a primitive root modulo both `p` and `q`.
pub fn find_common_primitive_root(p: u64, q: u64) -> Result<u64, ParamError> {
    let n = p * q;
    (2..n)
        .find(|&g| is_primitive_root(g, p) && is_primitive_root(g, q))
        .ok_or(ParamError::NoCommonRoot { p, q, n })
}

/// Unique `x` in `[0, pq)` with `x = g (mod p)` and `x = 1 (mod q)`.
pub fn crt_x(p: u64, q: u64, g: u64) -> u64 {
    crt_pair(g % p, p, 1 % q, q)
}

/// Two-modulus CRT for coprime moduli.
pub fn crt_pair(r1: u64, m1: u64, r2: u64, m2: u64) -> u64 {
    let n = m1 * m2;
    let inv = mod_inverse(m1 % m2, m2).expect("moduli must be coprime");
    // x = r1 + m1 * ((r2 - r1) * m1^{-1} mod m2)
    let diff = (r2 % m2 + m2 - r1 % m2) % m2;
    let t = mul_mod(diff, inv, m2);
    (r1 + mul_mod(m1, t, n)) % n
}

pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Validated parameters for one construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceParams {
    pub p: u64,
    pub q: u64,
    pub n: u64,
    pub g: u64,
    pub x: u64,
    pub e: u64,
    pub strict: bool,
    /// `|q - p| < sqrt(pq) - 1`, tested as `(|q - p| + 1)^2 < pq`
    pub theorem1_applicable: bool,
    /// `q - p = 2`
    pub theorem2_applicable: bool,
}

impl SequenceParams {
    /// `pq - p - q - 1`
    pub fn lower_bound(&self) -> u64 {
        self.n - self.p - self.q - 1
    }

    /// Both mod-4 congruences the determinant formula relies on.
    pub fn is_strict_shape(&self) -> bool {
        self.p % 4 == 1 && self.q % 4 == 3
    }
}

/// Validate `(p, q)` and pick the smallest common primitive root.
pub fn make_params(p: u64, q: u64, strict: bool) -> Result<SequenceParams, ParamError> {
    make_params_with_g(p, q, None, strict)
}

pub fn make_params_with_g(
    p: u64,
    q: u64,
    g: Option<u64>,
    strict: bool,
) -> Result<SequenceParams, ParamError> {
    for v in [p, q] {
        if v >= PRIME_CAP {
            return Err(ParamError::TooLarge(v));
        }
        if !is_prime(v) {
            return Err(ParamError::NotPrime(v));
        }
    }
    if p == q {
        return Err(ParamError::EqualPrimes(p));
    }
    if p == 2 || q == 2 {
        return Err(ParamError::EvenPrime);
    }
    let common = gcd(p - 1, q - 1);
    if common != 2 {
        return Err(ParamError::GcdNotTwo(common));
    }
    if strict && !(p % 4 == 1 && q % 4 == 3) {
        return Err(ParamError::CongruenceViolation { p, q });
    }
    let n = p * q;
    let g = match g {
        Some(g) => {
            if g < 2 || g >= n || !is_primitive_root(g, p) || !is_primitive_root(g, q) {
                return Err(ParamError::NotPrimitiveRoot { g, p, q });
            }
            g
        }
        None => find_common_primitive_root(p, q)?,
    };
    let e = (p - 1) * (q - 1) / 2;
    if !e.is_multiple_of(2) {
        return Err(ParamError::OddE(e));
    }
    let gap = p.abs_diff(q) + 1;
    Ok(SequenceParams {
        p,
        q,
        n,
        g,
        x: crt_x(p, q, g),
        e,
        strict,
        theorem1_applicable: gap * gap < n,
        theorem2_applicable: q > p && q - p == 2,
    })
}

/// All pairs satisfying the strict-mode conditions with `pq <= max_n`, ordered by `(n, p)`.
pub fn strict_pairs(max_n: u64) -> Vec<(u64, u64)> {
    let primes: Vec<u64> = (3..=max_n / 3).filter(|&v| is_prime(v)).collect();
    let mut out = Vec::new();
    for &p in primes.iter().filter(|&&v| v % 4 == 1) {
        for &q in primes.iter().filter(|&&v| v % 4 == 3) {
            if p * q <= max_n && gcd(p - 1, q - 1) == 2 {
                out.push((p, q));
            }
        }
    }
    out.sort_by_key(|&(p, q)| (p * q, p));
    out
}
