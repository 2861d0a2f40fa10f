//! The order-2 Whiteman partition of `Z_N`.
//!
//! Every residue in `[0, N)` lands in exactly one of nine classes:
//! `{0}`, the four halves `D00, D01, D10, D11` of the generalized classes
//! `D_0 = D00 ∪ D01` and `D_1 = D10 ∪ D11`, and the four classical halves of
//! the non-units, `D_i^(p)·q` and `D_i^(q)·p`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numtheory::{pow_mod, SequenceParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassLabel {
    Zero,
    D00,
    D01,
    D10,
    D11,
    /// `D_0^(p)·q`
    D0pQ,
    /// `D_1^(p)·q`
    D1pQ,
    /// `D_0^(q)·p`
    D0qP,
    /// `D_1^(q)·p`
    D1qP,
}

impl ClassLabel {
    pub const ALL: [ClassLabel; 9] = [
        ClassLabel::Zero,
        ClassLabel::D00,
        ClassLabel::D01,
        ClassLabel::D10,
        ClassLabel::D11,
        ClassLabel::D0pQ,
        ClassLabel::D1pQ,
        ClassLabel::D0qP,
        ClassLabel::D1qP,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            ClassLabel::Zero => "ZERO",
            ClassLabel::D00 => "D00",
            ClassLabel::D01 => "D01",
            ClassLabel::D10 => "D10",
            ClassLabel::D11 => "D11",
            ClassLabel::D0pQ => "D0p_q",
            ClassLabel::D1pQ => "D1p_q",
            ClassLabel::D0qP => "D0q_p",
            ClassLabel::D1qP => "D1q_p",
        }
    }

    /// Membership in `C_1`, the support of the sequence.
    pub fn in_c1(self) -> bool {
        matches!(
            self,
            ClassLabel::D10 | ClassLabel::D11 | ClassLabel::D1pQ | ClassLabel::D1qP
        )
    }

    /// `Some(i)` when the label lies inside the generalized class `D_i`.
    pub fn unit_class(self) -> Option<usize> {
        match self {
            ClassLabel::D00 | ClassLabel::D01 => Some(0),
            ClassLabel::D10 | ClassLabel::D11 => Some(1),
            _ => None,
        }
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for ClassLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Dense label table for `Z_N` plus sorted member lists per class.
#[derive(Debug, Clone)]
pub struct CyclotomicPartition {
    params: SequenceParams,
    labels: Vec<ClassLabel>,
    members: [Vec<u64>; 9],
    // classical class index (0/1) of each residue mod p and mod q; index 0 unused
    p_index: Vec<u8>,
    q_index: Vec<u8>,
}

pub fn build_partition(params: &SequenceParams) -> CyclotomicPartition {
    let (p, q, n, g, x, e) = (params.p, params.q, params.n, params.g, params.x, params.e);
    let mut labels = vec![ClassLabel::Zero; n as usize];

    let mut gs = 1u64;
    for s in 0..e {
        let even = s % 2 == 0;
        labels[gs as usize] = if even {
            ClassLabel::D00
        } else {
            ClassLabel::D01
        };
        let gx = gs * x % n;
        labels[gx as usize] = if even {
            ClassLabel::D10
        } else {
            ClassLabel::D11
        };
        gs = gs * g % n;
    }

    let classical = |m: u64| {
        let mut idx = vec![0u8; m as usize];
        let mut v = 1u64;
        for t in 0..m - 1 {
            idx[v as usize] = (t % 2) as u8;
            v = v * (g % m) % m;
        }
        idx
    };
    let p_index = classical(p);
    let q_index = classical(q);

    for k in 1..p {
        labels[(k * q) as usize] = if p_index[k as usize] == 0 {
            ClassLabel::D0pQ
        } else {
            ClassLabel::D1pQ
        };
    }
    for k in 1..q {
        labels[(k * p) as usize] = if q_index[k as usize] == 0 {
            ClassLabel::D0qP
        } else {
            ClassLabel::D1qP
        };
    }

    let mut members: [Vec<u64>; 9] = Default::default();
    for (a, label) in labels.iter().enumerate() {
        members[label.index()].push(a as u64);
    }

    CyclotomicPartition {
        params: params.clone(),
        labels,
        members,
        p_index,
        q_index,
    }
}

impl CyclotomicPartition {
    pub fn params(&self) -> &SequenceParams {
        &self.params
    }

    pub fn n(&self) -> u64 {
        self.params.n
    }

    pub fn labels(&self) -> &[ClassLabel] {
        &self.labels
    }

    pub fn classify(&self, a: u64) -> Result<ClassLabel> {
        self.labels
            .get(a as usize)
            .copied()
            .ok_or(Error::OutOfRange {
                value: a,
                n: self.params.n,
            })
    }

    /// Sorted members of one class.
    pub fn members(&self, label: ClassLabel) -> &[u64] {
        &self.members[label.index()]
    }

    /// Members of the generalized class `D_i`, sorted.
    pub fn unit_class(&self, i: usize) -> Vec<u64> {
        let (a, b) = if i == 0 {
            (ClassLabel::D00, ClassLabel::D01)
        } else {
            (ClassLabel::D10, ClassLabel::D11)
        };
        let mut v = [self.members(a), self.members(b)].concat();
        v.sort_unstable();
        v
    }

    /// `C_1 = D_1 ∪ D_1^(p)q ∪ D_1^(q)p`, sorted.
    pub fn c1(&self) -> Vec<u64> {
        (0..self.params.n)
            .filter(|&a| self.labels[a as usize].in_c1())
            .collect()
    }

    /// `D_i^(p)` as residues in `[1, p)`, sorted.
    pub fn classical_p(&self, i: usize) -> Vec<u64> {
        classical_members(&self.p_index, i)
    }

    pub fn classical_q(&self, i: usize) -> Vec<u64> {
        classical_members(&self.q_index, i)
    }

    /// Index `i` with `r mod p ∈ D_i^(p)`; `None` when `p | r`.
    pub fn classical_p_index(&self, r: u64) -> Option<usize> {
        let r = r % self.params.p;
        (r != 0).then(|| self.p_index[r as usize] as usize)
    }

    pub fn classical_q_index(&self, r: u64) -> Option<usize> {
        let r = r % self.params.q;
        (r != 0).then(|| self.q_index[r as usize] as usize)
    }

    /// Cyclotomic number `(i, j) = |(D_i + 1) ∩ D_j|` by direct counting.
    pub fn cyclotomic_number(&self, i: usize, j: usize) -> u64 {
        let n = self.params.n;
        (1..n)
            .filter(|&a| self.labels[a as usize].unit_class() == Some(i))
            .filter(|&a| self.labels[((a + 1) % n) as usize].unit_class() == Some(j))
            .count() as u64
    }

    /// Label name to sorted member list, for JSON dumps.
    pub fn to_map(&self) -> BTreeMap<&'static str, Vec<u64>> {
        ClassLabel::ALL
            .iter()
            .map(|&l| (l.name(), self.members(l).to_vec()))
            .collect()
    }

    /// `g^s · x^i mod N`, the defining generator form of `D_i`.
    pub fn generator_element(&self, s: u64, i: u64) -> u64 {
        let n = self.params.n;
        pow_mod(self.params.g, s, n) * pow_mod(self.params.x, i, n) % n
    }
}

fn classical_members(index: &[u8], i: usize) -> Vec<u64> {
    (1..index.len())
        .filter(|&r| index[r] as usize == i)
        .map(|r| r as u64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::{make_params, make_params_with_g, strict_pairs};

    fn part(p: u64, q: u64) -> CyclotomicPartition {
        build_partition(&make_params(p, q, true).unwrap())
    }

    #[test]
    fn enumeration_5_3() {
        let pt = part(5, 3);
        assert_eq!(pt.members(ClassLabel::D00), &[1, 4]);
        assert_eq!(pt.members(ClassLabel::D01), &[2, 8]);
        assert_eq!(pt.members(ClassLabel::D10), &[7, 13]);
        assert_eq!(pt.members(ClassLabel::D11), &[11, 14]);
        assert_eq!(pt.members(ClassLabel::D0pQ), &[3, 12]);
        assert_eq!(pt.members(ClassLabel::D1pQ), &[6, 9]);
        assert_eq!(pt.members(ClassLabel::D0qP), &[5]);
        assert_eq!(pt.members(ClassLabel::D1qP), &[10]);
        assert_eq!(pt.c1(), vec![6, 7, 9, 10, 11, 13, 14]);
    }

    #[test]
    fn classify_examples() {
        let pt = part(5, 3);
        assert_eq!(pt.classify(0).unwrap(), ClassLabel::Zero);
        assert_eq!(pt.classify(5).unwrap(), ClassLabel::D0qP);
        assert_eq!(pt.classify(6).unwrap(), ClassLabel::D1pQ);
        assert!(matches!(pt.classify(15), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn generator_form_matches_labels() {
        let pt = part(13, 11);
        let e = pt.params().e;
        for s in 0..e {
            for i in 0..2 {
                let a = pt.generator_element(s, i);
                assert_eq!(pt.classify(a).unwrap().unit_class(), Some(i as usize));
            }
        }
    }

    #[test]
    fn cyclotomic_numbers_by_brute_force() {
        let pt = part(5, 3);
        let d: Vec<Vec<u64>> = (0..2).map(|i| pt.unit_class(i)).collect();
        for i in 0..2 {
            let mut row = 0;
            for j in 0..2 {
                let shifted: Vec<u64> = d[i].iter().map(|a| (a + 1) % 15).collect();
                let count = shifted.iter().filter(|v| d[j].contains(v)).count() as u64;
                assert_eq!(pt.cyclotomic_number(i, j), count);
                assert!(count <= pt.params().e);
                row += count;
            }
            assert!(row <= d[i].len() as u64);
        }
    }

    #[test]
    fn partition_invariants_for_small_pairs() {
        for (p, q) in strict_pairs(1200) {
            let pt = part(p, q);
            let e = pt.params().e;
            let total: usize = ClassLabel::ALL.iter().map(|&l| pt.members(l).len()).sum();
            assert_eq!(total as u64, p * q);
            for l in [
                ClassLabel::D00,
                ClassLabel::D01,
                ClassLabel::D10,
                ClassLabel::D11,
            ] {
                assert_eq!(pt.members(l).len() as u64, e / 2);
            }
            for l in [ClassLabel::D0pQ, ClassLabel::D1pQ] {
                assert_eq!(pt.members(l).len() as u64, (p - 1) / 2);
            }
            for l in [ClassLabel::D0qP, ClassLabel::D1qP] {
                assert_eq!(pt.members(l).len() as u64, (q - 1) / 2);
            }
            assert_eq!(pt.c1().len() as u64, (p * q - 1) / 2);
        }
    }

    #[test]
    fn works_for_every_common_root() {
        for g in [2u64, 3, 12, 17, 18, 23, 33, 37, 38, 47, 52, 53, 58] {
            if let Ok(params) = make_params_with_g(5, 7, Some(g), true) {
                let pt = build_partition(&params);
                assert_eq!(pt.c1().len(), 17);
            }
        }
    }
}
