//! Rational approximation over the 2-adic integers.
//!
//! Given the first `T` bits of `alpha = sum a_i 2^i`, find a pair `(m, n)`,
//! `n` odd, with `n·alpha ≡ m (mod 2^T)` and `max(|m|, |n|)` as small as
//! the algorithm's lattice basis allows. Two basis vectors are carried: `g`
//! (odd second coordinate, the running answer) and `f` (even second
//! coordinate). Each new bit either keeps `g` or replaces it with the best
//! odd combination of the pair.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// A reduced fraction `m / n` with `n > 0` odd.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdicFraction {
    #[serde(serialize_with = "crate::report::big_int")]
    pub m: BigInt,
    #[serde(serialize_with = "crate::report::big_int")]
    pub n: BigInt,
}

impl AdicFraction {
    /// Bit length of `max(|m|, |n|)`.
    pub fn size_bits(&self) -> u64 {
        self.m.abs().max(self.n.clone()).bits()
    }

    /// `floor(log2(n + 1))`, the complexity this denominator implies.
    pub fn complexity(&self) -> u64 {
        (&self.n + BigInt::one()).bits() - 1
    }
}

type Pair = (BigInt, BigInt);

fn size(h: &Pair) -> BigInt {
    h.0.abs().max(h.1.abs())
}

fn combine(f: &Pair, d: &BigInt, g: &Pair) -> Pair {
    (&f.0 + d * &g.0, &f.1 + d * &g.1)
}

/// Odd `d` minimizing `max(|f1 + d g1|, |f2 + d g2|)`.
///
/// The objective is convex and piecewise linear in `d`, so its real minimum
/// sits on a breakpoint; the best odd integer neighbours one of them.
fn best_odd_multiplier(f: &Pair, g: &Pair) -> BigInt {
    let breakpoints = [
        (-&f.0, g.0.clone()),
        (-&f.1, g.1.clone()),
        (-(&f.0 - &f.1), &g.0 - &g.1),
        (-(&f.0 + &f.1), &g.0 + &g.1),
    ];
    let mut candidates: Vec<BigInt> = Vec::new();
    for (num, den) in breakpoints.iter().filter(|(_, den)| !den.is_zero()) {
        let floor = num.div_floor(den);
        for off in -1i32..=2 {
            let d = &floor + off;
            if d.is_odd() {
                candidates.push(d);
            }
        }
    }
    if candidates.is_empty() {
        candidates.push(BigInt::one());
    }
    candidates
        .into_iter()
        .min_by(|a, b| {
            let ka = (size(&combine(f, a, g)), a.abs(), a.clone());
            let kb = (size(&combine(f, b, g)), b.abs(), b.clone());
            ka.cmp(&kb)
        })
        .expect("at least one candidate")
}

/// Run rational approximation on a bit prefix (index 0 = coefficient of `2^0`).
pub fn raa_synthesize(prefix: &[u8]) -> Result<AdicFraction> {
    let t = prefix.len();
    if t < 2 {
        return Err(Error::PrefixTooShort(t));
    }
    let Some(first) = prefix.iter().position(|&b| b != 0) else {
        return Ok(AdicFraction {
            m: BigInt::zero(),
            n: BigInt::one(),
        });
    };

    let mut k = first + 1;
    let mut alpha = BigInt::one() << first;
    let mut f: Pair = (BigInt::zero(), BigInt::from(2));
    let mut g: Pair = (alpha.clone(), BigInt::one());
    let two = BigInt::from(2);

    while k < t {
        if prefix[k] != 0 {
            alpha += BigInt::one() << k;
        }
        let modulus = BigInt::one() << (k + 1);
        let residual = (&g.1 * &alpha - &g.0).mod_floor(&modulus);
        if residual.is_zero() {
            f = (&f.0 * &two, &f.1 * &two);
        } else if size(&g) < size(&f) {
            let d = best_odd_multiplier(&f, &g);
            let next = combine(&f, &d, &g);
            f = (&g.0 * &two, &g.1 * &two);
            g = next;
        } else {
            let d = best_odd_multiplier(&g, &f);
            g = combine(&g, &d, &f);
            f = (&f.0 * &two, &f.1 * &two);
        }
        k += 1;
    }

    let (mut m, mut n) = g;
    if n.sign() == Sign::Minus {
        m = -m;
        n = -n;
    }
    let common = m.gcd(&n);
    if !common.is_one() && !common.is_zero() {
        m /= &common;
        n /= &common;
    }
    Ok(AdicFraction { m, n })
}
