//! Balanced Whiteman generalized cyclotomic sequences of period `N = pq`
//! and their exact 2-adic complexity.
//!
//! The pipeline is
//!
//! 1. [`numtheory::make_params`]: validate `(p, q)`, choose the smallest
//!    common primitive root `g` and the CRT element `x`;
//! 2. [`cyclotomy::build_partition`]: label every residue of `Z_N`;
//! 3. [`sequence::generate`]: one period, `s_i = 1` on `C_1`;
//! 4. [`adic::two_adic_complexity`]: reduce `S(2) / (2^N - 1)` exactly.
//!
//! [`spectra`] and [`circulant`] verify the algebra behind the lower bound:
//! Gauss-period identities, the class-by-class values of `S(ω_N^a)`, and the
//! closed-form circulant determinant against an exact CRT determinant.

pub mod adic;
pub mod circulant;
pub mod cli;
pub mod cyclotomy;
pub mod error;
pub mod numtheory;
pub mod report;
pub mod sequence;
pub mod spectra;

pub use error::{Error, Result};

/// The ten `(p, q)` pairs of the published results table, in table order.
pub const TABLE_PAIRS: [(u64, u64); 10] = [
    (5, 3),
    (5, 7),
    (5, 11),
    (13, 11),
    (13, 23),
    (17, 11),
    (17, 19),
    (17, 23),
    (17, 31),
    (17, 43),
];

/// Published 2-adic complexities for [`TABLE_PAIRS`].
pub const TABLE_PHI2: [u64; 10] = [15, 35, 55, 143, 299, 187, 323, 391, 527, 731];

/// Published lower bounds for [`TABLE_PAIRS`].
pub const TABLE_LOWER_BOUND: [u64; 10] = [6, 22, 38, 118, 262, 158, 286, 350, 478, 670];

/// Everything derived from one parameter pair.
#[derive(Debug, Clone)]
pub struct Instance {
    pub partition: cyclotomy::CyclotomicPartition,
    pub sequence: sequence::BinarySequence,
}

impl Instance {
    pub fn new(p: u64, q: u64, g: Option<u64>, strict: bool) -> Result<Self> {
        let params = numtheory::make_params_with_g(p, q, g, strict)?;
        let partition = cyclotomy::build_partition(&params);
        let sequence = sequence::generate(&partition);
        Ok(Instance {
            partition,
            sequence,
        })
    }

    pub fn params(&self) -> &numtheory::SequenceParams {
        self.partition.params()
    }
}
