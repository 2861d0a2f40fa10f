//! Exact 2-adic complexity and the gcd facts it rests on.
//!
//! For a period-`N` sequence with `S(2) = sum s_i 2^i`, the fraction
//! `S(2) / (2^N - 1)` reduces to `m / n`, and the 2-adic complexity is
//! `floor(log2(n + 1))`, taken here from the bit length of `n + 1`.

mod raa;

pub use raa::{raa_synthesize, AdicFraction};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::numtheory::SequenceParams;
use crate::sequence::BinarySequence;

/// Outcome of checking a claim that only applies under a precondition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    NotApplicable,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }

    pub fn is_failure(self) -> bool {
        self == Verdict::Fails
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AdicReport {
    pub params: Option<SequenceParams>,
    pub period: u64,
    #[serde(serialize_with = "crate::report::big_uint")]
    pub s2: BigUint,
    #[serde(serialize_with = "crate::report::big_uint")]
    pub modulus: BigUint,
    #[serde(serialize_with = "crate::report::big_uint")]
    pub gcd: BigUint,
    /// Reduced numerator of `S(2) / (2^N - 1)`, non-negative.
    #[serde(serialize_with = "crate::report::big_uint")]
    pub m: BigUint,
    #[serde(serialize_with = "crate::report::big_uint")]
    pub n: BigUint,
    /// Sign of the 2-adic value of the periodic stream, which is `-m / n`:
    /// `-1` when `m > 0`, `0` for the all-zero stream.
    pub adic_sign: i8,
    pub phi2: u64,
    /// `pq - p - q - 1`; absent for sequences not built from parameters.
    pub lower_bound: Option<u64>,
    pub meets_lower_bound: Option<bool>,
    pub is_maximal: bool,
    /// All-zero period: `gcd = 2^N - 1`, `n = 1`, `phi2 = 1`.
    pub degenerate: bool,
}

pub fn two_adic_complexity(seq: &BinarySequence) -> AdicReport {
    let period = seq.period() as u64;
    let s2 = seq.s_of_2();
    let modulus = (BigUint::one() << period) - BigUint::one();
    let gcd = s2.gcd(&modulus);
    let m = &s2 / &gcd;
    let n = &modulus / &gcd;
    let phi2 = (&n + BigUint::one()).bits() - 1;
    let lower_bound = seq.params().map(SequenceParams::lower_bound);
    AdicReport {
        params: seq.params().cloned(),
        period,
        adic_sign: if m.is_zero() { 0 } else { -1 },
        degenerate: s2.is_zero(),
        meets_lower_bound: lower_bound.map(|lb| phi2 >= lb),
        is_maximal: phi2 == period,
        lower_bound,
        s2,
        modulus,
        gcd,
        m,
        n,
        phi2,
    }
}

/// `phi2 >= pq - p - q - 1`, gated on `p = 1, q = 3 (mod 4)` and
/// `|q - p| < sqrt(pq) - 1`.
pub fn check_theorem1(report: &AdicReport) -> Verdict {
    match &report.params {
        Some(pr) if pr.is_strict_shape() && pr.theorem1_applicable => {
            Verdict::from_bool(report.phi2 >= pr.lower_bound())
        }
        _ => Verdict::NotApplicable,
    }
}

/// `phi2 = N`, gated on `p = 1, q = 3 (mod 4)` and `q - p = 2`.
pub fn check_theorem2(report: &AdicReport) -> Verdict {
    match &report.params {
        Some(pr) if pr.is_strict_shape() && pr.theorem2_applicable => {
            Verdict::from_bool(report.phi2 == pr.n && report.gcd.is_one())
        }
        _ => Verdict::NotApplicable,
    }
}

fn mersenne(k: u64) -> BigUint {
    (BigUint::one() << k) - BigUint::one()
}

/// Check `gcd(2^a - 1, (2^(ab) - 1) / (2^a - 1)) = gcd(2^a - 1, b)` for `(a, b) = (p, q)`
/// and `(q, p)`. For the larger exponent the common value must also be 1.
pub fn mersenne_gcd_check(p: u64, q: u64) -> (bool, bool) {
    let total = mersenne(p * q);
    let side = |a: u64, b: u64| {
        let ma = mersenne(a);
        let cofactor = &total / &ma;
        debug_assert!((&cofactor * &ma) == total);
        let lhs = ma.gcd(&cofactor);
        let rhs = ma.gcd(&BigUint::from(b));
        lhs == rhs && (a < b || lhs.is_one())
    };
    (side(p, q), side(q, p))
}

/// `gcd(S(2), 2^N - 1)` divides `gcd(det, 2^N - 1)`; not applicable when `det = 0`.
pub fn gcd_divisibility_check(seq: &BinarySequence, det: &BigInt) -> Verdict {
    if det.is_zero() {
        return Verdict::NotApplicable;
    }
    let modulus = mersenne(seq.period() as u64);
    let lhs = seq.s_of_2().gcd(&modulus);
    let rhs = det.magnitude().gcd(&modulus);
    Verdict::from_bool((rhs % lhs).is_zero())
}

/// The fraction a purely periodic stream must produce: `-S(2)/(2^N - 1)`, reduced.
pub fn expected_fraction(seq: &BinarySequence) -> AdicFraction {
    let r = two_adic_complexity(seq);
    AdicFraction {
        m: -BigInt::from(r.m),
        n: BigInt::from(r.n),
    }
}

/// Feed `len` bits of the periodic stream (repeating the period) to the
/// rational approximation algorithm.
pub fn raa_on_sequence(seq: &BinarySequence, len: usize) -> crate::error::Result<AdicFraction> {
    let bits: Vec<u8> = seq.bits().iter().copied().cycle().take(len).collect();
    raa_synthesize(&bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomy::build_partition;
    use crate::numtheory::{is_prime, make_params};
    use crate::sequence::generate;

    fn seq(p: u64, q: u64) -> BinarySequence {
        generate(&build_partition(&make_params(p, q, true).unwrap()))
    }

    #[test]
    fn published_rows_5_3_and_17_43() {
        let r = two_adic_complexity(&seq(5, 3));
        assert_eq!((r.phi2, r.lower_bound), (15, Some(6)));
        let r = two_adic_complexity(&seq(17, 43));
        assert_eq!((r.phi2, r.lower_bound), (731, Some(670)));
    }

    #[test]
    fn all_zero_follows_the_formula() {
        let r = two_adic_complexity(&BinarySequence::from_bits(vec![0; 15]));
        assert_eq!(r.gcd, mersenne(15));
        assert!(r.n.is_one());
        assert_eq!(r.phi2, 1);
        assert!(r.degenerate);
        assert_eq!(r.adic_sign, 0);
    }

    #[test]
    fn fraction_law() {
        for (p, q) in [(5, 3), (5, 7), (13, 11), (17, 11)] {
            let r = two_adic_complexity(&seq(p, q));
            assert_eq!(&r.m * &r.modulus, &r.n * &r.s2);
            assert!(r.m.gcd(&r.n).is_one());
            assert!(r.m <= r.n);
            assert!(r.phi2 <= r.period);
            assert_eq!(r.phi2 == r.period, r.gcd.is_one());
        }
    }

    #[test]
    fn theorem_gates() {
        let r = two_adic_complexity(&seq(13, 23));
        assert_eq!(check_theorem1(&r), Verdict::Holds);
        assert_eq!(check_theorem2(&r), Verdict::NotApplicable);
        assert_eq!(
            check_theorem1(&two_adic_complexity(&seq(5, 3))),
            Verdict::Holds
        );
        assert_eq!(
            check_theorem2(&two_adic_complexity(&seq(5, 7))),
            Verdict::Holds
        );
        assert_eq!(
            check_theorem2(&two_adic_complexity(&seq(17, 19))),
            Verdict::Holds
        );
        assert_eq!(
            check_theorem2(&two_adic_complexity(&seq(5, 11))),
            Verdict::NotApplicable
        );
        // |43 - 5| = 38 > sqrt(215) - 1
        let wide = two_adic_complexity(&seq(5, 43));
        assert_eq!(check_theorem1(&wide), Verdict::NotApplicable);
        let bare = two_adic_complexity(&BinarySequence::from_bits(vec![0, 1, 1]));
        assert_eq!(check_theorem1(&bare), Verdict::NotApplicable);
    }

    #[test]
    fn mersenne_identity_examples() {
        // 2^15 - 1 = 31 * 1057 = 7 * 4681
        assert_eq!(mersenne(15), BigUint::from(31u32 * 1057));
        assert_eq!(mersenne(15), BigUint::from(7u32 * 4681));
        assert_eq!(mersenne_gcd_check(5, 3), (true, true));
        assert_eq!(mersenne_gcd_check(3, 5), (true, true));
        assert!(mersenne(7).gcd(&BigUint::one()).is_one());
    }

    #[test]
    fn mersenne_sweep() {
        let primes: Vec<u64> = (2..=64).filter(|&v| is_prime(v)).collect();
        for &p in &primes {
            for &q in primes.iter().filter(|&&q| q != p) {
                assert_eq!(mersenne_gcd_check(p, q), (true, true), "({p},{q})");
            }
        }
    }

    #[test]
    fn divisibility_gate() {
        let s = seq(5, 3);
        assert_eq!(
            gcd_divisibility_check(&s, &BigInt::zero()),
            Verdict::NotApplicable
        );
        let m = BigInt::from(mersenne(15));
        assert_eq!(gcd_divisibility_check(&s, &m), Verdict::Holds);
        assert_eq!(
            gcd_divisibility_check(&s, &BigInt::from(1792)),
            Verdict::Holds
        );
    }

    #[test]
    fn raa_sufficient_length_recovers_exact_fraction() {
        for (p, q) in [(5, 3), (5, 7), (5, 11)] {
            let s = seq(p, q);
            let n = s.period();
            let got = raa_on_sequence(&s, 2 * n + 2).unwrap();
            assert_eq!(got, expected_fraction(&s), "({p},{q})");
        }
    }

    #[test]
    fn raa_size_tracks_phi2_on_two_periods() {
        for (p, q) in crate::numtheory::strict_pairs(35) {
            let s = seq(p, q);
            let got = raa_on_sequence(&s, 2 * s.period()).unwrap();
            let size = got.m.magnitude().max(got.n.magnitude()).bits();
            assert_eq!(size, two_adic_complexity(&s).phi2, "({p},{q})");
        }
    }

    #[test]
    fn two_periods_of_5_3_admit_a_smaller_fraction() {
        let s = seq(5, 3);
        let got = raa_on_sequence(&s, 30).unwrap();
        assert_eq!(
            (got.m.clone(), got.n.clone()),
            (BigInt::from(9792), BigInt::from(26555))
        );
        // 9792 - 26555·s ≡ 0 (mod 2^30) with s the 30-bit prefix, read little-endian
        let bits: Vec<u8> = s.bits().repeat(2);
        let prefix = bits
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, &b| (acc << 1u32) + b);
        let r = (&got.m - &got.n * prefix) % (BigInt::from(1) << 30u32);
        assert!(r.is_zero());
        assert_ne!(got, expected_fraction(&s));
    }
}
