//! One period of the balanced sequence: `s_i = 1` exactly when `i ∈ C_1`.

use num_bigint::BigUint;

use crate::cyclotomy::CyclotomicPartition;
use crate::error::{Error, Result};
use crate::numtheory::SequenceParams;

/// One period of a binary sequence. Bit `i` is the coefficient of `2^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinarySequence {
    params: Option<SequenceParams>,
    bits: Vec<u8>,
}

pub fn generate(part: &CyclotomicPartition) -> BinarySequence {
    BinarySequence {
        params: Some(part.params().clone()),
        bits: part.labels().iter().map(|l| l.in_c1() as u8).collect(),
    }
}

impl BinarySequence {
    /// Arbitrary period, not tied to any construction. Nonzero entries count as 1.
    pub fn from_bits(bits: impl Into<Vec<u8>>) -> Self {
        let bits = bits.into().into_iter().map(|b| (b != 0) as u8).collect();
        BinarySequence { params: None, bits }
    }

    /// Parse an ASCII `0`/`1` string, index 0 first.
    pub fn parse(s: &str) -> Result<Self> {
        let bits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::BadBit(other)),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(BinarySequence { params: None, bits })
    }

    pub fn params(&self) -> Option<&SequenceParams> {
        self.params.as_ref()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn period(&self) -> usize {
        self.bits.len()
    }

    pub fn to_bit_string(&self) -> String {
        self.bits
            .iter()
            .map(|&b| if b == 1 { '1' } else { '0' })
            .collect()
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    /// Periodic autocorrelation `sum_i (-1)^(s_{i+tau} + s_i)`.
    pub fn autocorrelation(&self, tau: usize) -> i64 {
        let n = self.bits.len();
        (0..n)
            .map(|i| {
                if self.bits[(i + tau) % n] == self.bits[i] {
                    1
                } else {
                    -1
                }
            })
            .sum()
    }

    /// `S(2) = sum_i s_i 2^i`.
    pub fn s_of_2(&self) -> BigUint {
        let mut bytes = vec![0u8; self.bits.len().div_ceil(8)];
        for (i, _) in self.bits.iter().enumerate().filter(|(_, &b)| b == 1) {
            bytes[i / 8] |= 1 << (i % 8);
        }
        BigUint::from_bytes_le(&bytes)
    }

    /// Linear complexity of the periodic sequence over GF(2), from
    /// Berlekamp-Massey on two concatenated periods.
    pub fn linear_complexity(&self) -> usize {
        let doubled: Vec<u8> = self.bits.iter().chain(self.bits.iter()).copied().collect();
        berlekamp_massey(&doubled)
    }
}

/// Length of the shortest LFSR over GF(2) generating `s`.
pub fn berlekamp_massey(s: &[u8]) -> usize {
    let n = s.len();
    let mut c = vec![0u8; n + 1];
    let mut b = vec![0u8; n + 1];
    c[0] = 1;
    b[0] = 1;
    let mut l = 0usize;
    let mut m = 1usize;
    for i in 0..n {
        let mut d = s[i];
        for j in 1..=l {
            d ^= c[j] & s[i - j];
        }
        if d == 0 {
            m += 1;
        } else if 2 * l <= i {
            let t = c.clone();
            for j in m..=n {
                c[j] ^= b[j - m];
            }
            l = i + 1 - l;
            b = t;
            m = 1;
        } else {
            for j in m..=n {
                c[j] ^= b[j - m];
            }
            m += 1;
        }
    }
    l
}
