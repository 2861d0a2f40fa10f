//! JSON conventions shared by the CLI and the C ABI: big integers travel as
//! decimal strings and object keys come out sorted.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::{Serialize, Serializer};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn big_uint<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_str_radix(10))
}

pub fn big_int<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_str_radix(10))
}

pub fn opt_big_int<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_str(&v.to_str_radix(10)),
        None => s.serialize_none(),
    }
}

/// `"a"` for integers, `"a/b"` otherwise.
pub fn rational<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Pretty JSON with lexicographically sorted keys at every level.
pub fn to_sorted_json<T: Serialize>(value: &T) -> String {
    // serde_json::Value objects are BTreeMaps without the preserve_order feature
    let v = serde_json::to_value(value).expect("report types always serialize");
    serde_json::to_string_pretty(&v).expect("value always serializes")
}

/// The `{params, report, verdicts, version}` envelope every JSON command emits.
#[derive(Debug, Serialize)]
pub struct Envelope<P: Serialize, R: Serialize, V: Serialize> {
    pub params: P,
    pub report: R,
    pub verdicts: V,
    pub version: &'static str,
}

impl<P: Serialize, R: Serialize, V: Serialize> Envelope<P, R, V> {
    pub fn new(params: P, report: R, verdicts: V) -> Self {
        Envelope {
            params,
            report,
            verdicts,
            version: VERSION,
        }
    }

    pub fn to_json(&self) -> String {
        to_sorted_json(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Sample {
        zeta: u8,
        #[serde(serialize_with = "big_uint")]
        alpha: BigUint,
    }

    #[test]
    fn keys_sorted_and_bigints_as_strings() {
        let s = Sample {
            zeta: 1,
            alpha: BigUint::from(1u8) << 100,
        };
        let json = to_sorted_json(&s);
        assert!(json.find("alpha").unwrap() < json.find("zeta").unwrap());
        assert!(json.contains("\"1267650600228229401496703205376\""));
    }
}
