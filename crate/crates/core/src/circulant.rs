//! Exact determinant of the circulant `A = (s_{(i-j) mod N})`.
//!
//! The determinant is computed modulo a deterministic list of primes just
//! below a power of two, by Gaussian elimination in Montgomery form, and
//! lifted with the Chinese remainder theorem to the symmetric range. Enough
//! primes are taken for their product to exceed twice the Hadamard bound.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numtheory::is_prime;
use crate::sequence::BinarySequence;
use crate::spectra::{Branch, DetClosedForm};

pub const MAX_PERIOD: usize = 1024;

/// Default ceiling for the CRT primes.
pub const PRIME_CEILING: u64 = 1 << 62;

/// Odd modulus below `2^63` with Montgomery constants.
#[derive(Debug, Clone, Copy)]
struct Montgomery {
    n: u64,
    n_neg_inv: u64,
    r2: u64,
}

impl Montgomery {
    fn new(n: u64) -> Self {
        debug_assert!(n % 2 == 1 && n < 1 << 63);
        // Newton iteration for n^{-1} mod 2^64
        let mut inv = n;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(n.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % n as u128) as u64;
        let r2 = ((r as u128 * r as u128) % n as u128) as u64;
        Montgomery {
            n,
            n_neg_inv: inv.wrapping_neg(),
            r2,
        }
    }

    #[inline(always)]
    fn reduce(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.n_neg_inv);
        let u = ((t + m as u128 * self.n as u128) >> 64) as u64;
        if u >= self.n {
            u - self.n
        } else {
            u
        }
    }

    #[inline(always)]
    fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a as u128 * b as u128)
    }

    fn encode(&self, a: u64) -> u64 {
        self.mul(a % self.n, self.r2)
    }

    fn decode(&self, a: u64) -> u64 {
        self.reduce(a as u128)
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = self.encode(1);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    fn inverse(&self, a: u64) -> u64 {
        self.pow(a, self.n - 2)
    }
}

/// `det(A) mod prime` for the circulant whose first column is `bits`.
pub fn det_mod_prime(bits: &[u8], prime: u64) -> u64 {
    let n = bits.len();
    let mt = Montgomery::new(prime);
    let one = mt.encode(1);
    // row i, column j holds s_{(i - j) mod n}
    let mut a: Vec<u64> = (0..n * n)
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            if bits[(i + n - j) % n] == 1 {
                one
            } else {
                0
            }
        })
        .collect();

    let mut det = one;
    let mut negate = false;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&r| a[r * n + k] != 0) else {
            return 0;
        };
        if piv != k {
            for j in k..n {
                a.swap(k * n + j, piv * n + j);
            }
            negate = !negate;
        }
        let pivot = a[k * n + k];
        det = mt.mul(det, pivot);
        let inv = mt.inverse(pivot);
        let (upper, lower) = a.split_at_mut((k + 1) * n);
        let pivot_row = &upper[k * n + k + 1..k * n + n];
        for row in lower.chunks_exact_mut(n) {
            let lead = row[k];
            if lead == 0 {
                continue;
            }
            let factor = mt.mul(lead, inv);
            let neg = prime - factor;
            for (x, &pv) in row[k + 1..].iter_mut().zip(pivot_row) {
                // x - factor·pv, kept in [0, prime)
                let t = mt.mul(neg, pv) + *x;
                *x = if t >= prime { t - prime } else { t };
            }
        }
    }
    let v = mt.decode(det);
    if negate && v != 0 {
        prime - v
    } else {
        v
    }
}

/// `Res(x^N - 1, S(x)) mod prime`, which equals `prod_a S(ω_N^a) = det(A)`
/// because `x^N - 1` is monic. Euclidean remainder sequence over `F_prime`,
/// `O(N^2)` per prime.
pub fn det_mod_prime_resultant(bits: &[u8], prime: u64) -> u64 {
    let n = bits.len();
    let mt = Montgomery::new(prime);
    let one = mt.encode(1);
    // coefficient vectors, lowest degree first, Montgomery form
    let mut a: Vec<u64> = vec![0; n + 1];
    a[0] = prime - one;
    a[n] = one;
    let mut b: Vec<u64> = bits.iter().map(|&s| if s == 1 { one } else { 0 }).collect();
    trim(&mut b);
    if b.is_empty() {
        return 0;
    }

    let mut acc = one;
    loop {
        let (da, db) = (a.len() - 1, b.len() - 1);
        if db == 0 {
            acc = mt.mul(acc, mt.pow(b[0], da as u64));
            break;
        }
        // a mod b, in place
        let lead_inv = mt.inverse(b[db]);
        for top in (db..=da).rev() {
            let c = a[top];
            if c == 0 {
                continue;
            }
            let f = prime - mt.mul(c, lead_inv);
            for (x, &y) in a[top - db..=top].iter_mut().zip(&b) {
                let t = mt.mul(f, y) + *x;
                *x = if t >= prime { t - prime } else { t };
            }
        }
        a.truncate(db);
        trim(&mut a);
        if a.is_empty() {
            return 0;
        }
        // Res(A, B) = (-1)^(deg A · deg B) · lc(B)^(deg A - deg R) · Res(B, R)
        let dr = a.len() - 1;
        acc = mt.mul(acc, mt.pow(b[db], (da - dr) as u64));
        if da % 2 == 1 && db % 2 == 1 {
            acc = if acc == 0 { 0 } else { prime - acc };
        }
        std::mem::swap(&mut a, &mut b);
    }
    mt.decode(acc)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Exact `det(A)` through the resultant route; same primes and CRT lift as
/// [`det_exact_with_ceiling`], no period cap.
pub fn det_exact_resultant(seq: &BinarySequence, ceiling: u64) -> ExactDet {
    let bound = hadamard_bound(seq);
    let primes = crt_primes(&bound, ceiling);
    let residues: Vec<u64> = primes
        .iter()
        .map(|&p| det_mod_prime_resultant(seq.bits(), p))
        .collect();
    ExactDet {
        value: crt_symmetric(&residues, &primes),
        hadamard_bound: bound,
        primes,
    }
}

/// `ceil(sqrt(w^N))` for a circulant whose rows all have weight `w`.
pub fn hadamard_bound(seq: &BinarySequence) -> BigUint {
    let w = BigUint::from(seq.weight());
    let sq = w.pow(seq.period() as u32);
    let root = sq.sqrt();
    if &root * &root == sq {
        root
    } else {
        root + 1u32
    }
}

/// Primes below `ceiling`, descending, whose product exceeds `2·bound`.
pub fn crt_primes(bound: &BigUint, ceiling: u64) -> Vec<u64> {
    let target = bound << 1u32;
    let mut product = BigUint::one();
    let mut primes = Vec::new();
    let mut candidate = (ceiling - 1) | 1;
    while product <= target {
        while !is_prime(candidate) {
            candidate -= 2;
        }
        product *= candidate;
        primes.push(candidate);
        candidate -= 2;
    }
    primes
}

/// CRT combination of residues into the symmetric range `(-M/2, M/2]`.
pub fn crt_symmetric(residues: &[u64], primes: &[u64]) -> BigInt {
    let mut value = BigInt::zero();
    let mut modulus = BigInt::one();
    for (&r, &p) in residues.iter().zip(primes) {
        let p_big = BigInt::from(p);
        // value + modulus·t ≡ r (mod p)
        let cur = value.mod_floor(&p_big);
        let diff = (BigInt::from(r) - cur).mod_floor(&p_big);
        let inv = modulus
            .mod_floor(&p_big)
            .modpow(&BigInt::from(p - 2), &p_big);
        let t = (diff * inv).mod_floor(&p_big);
        value += &modulus * t;
        modulus *= p_big;
    }
    let half = &modulus >> 1u32;
    if value > half {
        value - modulus
    } else {
        value
    }
}

#[derive(Debug, Clone)]
pub struct ExactDet {
    pub value: BigInt,
    pub hadamard_bound: BigUint,
    pub primes: Vec<u64>,
}

/// Exact `det(A)` using primes below [`PRIME_CEILING`].
pub fn det_exact(seq: &BinarySequence) -> Result<BigInt> {
    Ok(det_exact_with_ceiling(seq, PRIME_CEILING)?.value)
}

/// Exact `det(A)` with CRT primes drawn from just below `ceiling`
/// (`ceiling <= 2^63`).
pub fn det_exact_with_ceiling(seq: &BinarySequence, ceiling: u64) -> Result<ExactDet> {
    let n = seq.period();
    if n > MAX_PERIOD {
        return Err(Error::DeterminantCap { n, cap: MAX_PERIOD });
    }
    let bound = hadamard_bound(seq);
    let primes = crt_primes(&bound, ceiling);
    let residues: Vec<u64> = primes
        .iter()
        .map(|&p| det_mod_prime(seq.bits(), p))
        .collect();
    Ok(ExactDet {
        value: crt_symmetric(&residues, &primes),
        hadamard_bound: bound,
        primes,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct DetReport {
    #[serde(serialize_with = "crate::report::big_int")]
    pub det_exact: BigInt,
    #[serde(serialize_with = "crate::report::opt_big_int")]
    pub det_plus: Option<BigInt>,
    #[serde(serialize_with = "crate::report::opt_big_int")]
    pub det_minus: Option<BigInt>,
    pub matched_sign: Branch,
    #[serde(serialize_with = "crate::report::big_uint")]
    pub hadamard_bound: BigUint,
    pub primes_used: usize,
}

/// Compare the exact determinant with both closed-form candidates.
pub fn match_closed_form(seq: &BinarySequence, cf: &DetClosedForm) -> Result<DetReport> {
    let exact = det_exact_with_ceiling(seq, PRIME_CEILING)?;
    Ok(match_exact(exact, cf))
}

pub fn match_exact(exact: ExactDet, cf: &DetClosedForm) -> DetReport {
    let det_plus = cf.candidate(Branch::Plus);
    let det_minus = cf.candidate(Branch::Minus);
    let matched_sign = if det_plus.as_ref() == Some(&exact.value) {
        Branch::Plus
    } else if det_minus.as_ref() == Some(&exact.value) {
        Branch::Minus
    } else {
        Branch::None
    };
    DetReport {
        det_exact: exact.value,
        det_plus,
        det_minus,
        matched_sign,
        hadamard_bound: exact.hadamard_bound,
        primes_used: exact.primes.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomy::build_partition;
    use crate::numtheory::make_params;
    use crate::sequence::generate;
    use crate::spectra::det_closed_form;
    use num_rational::BigRational;

    // Fraction-free elimination over the rationals, independent of the
    // modular path.
    fn det_rational(bits: &[u8]) -> BigInt {
        let n = bits.len();
        let mut m: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| BigRational::from_integer(BigInt::from(bits[(i + n - j) % n])))
                    .collect()
            })
            .collect();
        let mut det = BigRational::one();
        for k in 0..n {
            let Some(piv) = (k..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            if piv != k {
                m.swap(piv, k);
                det = -det;
            }
            det *= m[k][k].clone();
            let pivot = m[k].clone();
            for row in m.iter_mut().skip(k + 1) {
                let f = &row[k] / &pivot[k];
                for (x, y) in row[k..].iter_mut().zip(&pivot[k..]) {
                    *x -= &f * y;
                }
            }
        }
        det.to_integer()
    }

    fn seq(bits: &[u8]) -> BinarySequence {
        BinarySequence::from_bits(bits.to_vec())
    }

    #[test]
    fn small_circulants() {
        assert_eq!(det_exact(&seq(&[1, 0, 0])).unwrap(), BigInt::one());
        assert_eq!(det_exact(&seq(&[0, 1, 1])).unwrap(), BigInt::from(2));
        assert_eq!(det_exact(&seq(&[1, 1, 1, 1])).unwrap(), BigInt::zero());
        // [0,1] is a transposition matrix
        assert_eq!(det_exact(&seq(&[0, 1])).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn agrees_with_rational_elimination() {
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        for n in 1..24 {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            let bits: Vec<u8> = (0..n).map(|i| ((state >> i) & 1) as u8).collect();
            assert_eq!(
                det_exact(&seq(&bits)).unwrap(),
                det_rational(&bits),
                "{bits:?}"
            );
        }
    }

    #[test]
    fn cyclotomic_5_3() {
        let s = generate(&build_partition(&make_params(5, 3, true).unwrap()));
        assert_eq!(det_exact(&s).unwrap(), det_rational(s.bits()));
        let cf = det_closed_form(s.params().unwrap()).unwrap();
        let rep = match_closed_form(&s, &cf).unwrap();
        assert_eq!(rep.det_exact, BigInt::from(1792));
        assert_eq!(rep.matched_sign, Branch::Minus);
        assert!(BigUint::try_from(rep.det_exact.clone()).unwrap() <= rep.hadamard_bound);
    }

    #[test]
    fn non_cyclotomic_bits_do_not_match() {
        let s = BinarySequence::from_bits(vec![1, 1, 0, 1, 0, 0, 0, 1, 0, 0, 1, 1, 1, 0, 0]);
        let cf = det_closed_form(&make_params(5, 3, true).unwrap()).unwrap();
        assert_eq!(
            match_closed_form(&s, &cf).unwrap().matched_sign,
            Branch::None
        );
    }

    #[test]
    fn resultant_route_agrees_with_elimination() {
        let mut state = 0x1234_5678_9abc_def1u64;
        for n in 1..40 {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            let bits: Vec<u8> = (0..n).map(|i| ((state >> i) & 1) as u8).collect();
            let s = seq(&bits);
            let slow = det_exact(&s).unwrap();
            assert_eq!(
                det_exact_resultant(&s, PRIME_CEILING).value,
                slow,
                "{bits:?}"
            );
        }
        assert_eq!(
            det_exact_resultant(&seq(&[0, 0, 0]), PRIME_CEILING).value,
            BigInt::zero()
        );
        assert_eq!(
            det_exact_resultant(&seq(&[1, 1, 1]), PRIME_CEILING).value,
            BigInt::zero()
        );
        assert_eq!(
            det_exact_resultant(&seq(&[0, 1, 1]), PRIME_CEILING).value,
            BigInt::from(2)
        );
    }

    #[test]
    fn cap_is_enforced() {
        let s = BinarySequence::from_bits(vec![1; MAX_PERIOD + 1]);
        assert!(matches!(det_exact(&s), Err(Error::DeterminantCap { .. })));
    }

    #[test]
    fn montgomery_matches_plain_arithmetic() {
        let p = crt_primes(&BigUint::one(), PRIME_CEILING)[0];
        let mt = Montgomery::new(p);
        for (a, b) in [(3u64, 5u64), (p - 1, p - 1), (1 << 40, 12345), (0, 7)] {
            let want = ((a as u128 * b as u128) % p as u128) as u64;
            assert_eq!(mt.decode(mt.mul(mt.encode(a), mt.encode(b))), want);
        }
        let x = mt.encode(123_456_789);
        assert_eq!(mt.decode(mt.mul(x, mt.inverse(x))), 1);
    }

    #[test]
    fn symmetric_lift() {
        let primes = [101u64, 103, 107];
        let v = BigInt::from(-5000);
        let residues: Vec<u64> = primes
            .iter()
            .map(|&p| v.mod_floor(&BigInt::from(p)).try_into().unwrap())
            .collect();
        assert_eq!(crt_symmetric(&residues, &primes), v);
    }
}
