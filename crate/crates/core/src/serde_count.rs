//! Serde adapter for exact counts: a JSON number when it fits in `u64`,
//! otherwise a decimal string. Both forms are accepted on input.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::de::{self, Deserializer, Visitor};
use serde::Serializer;

pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match v.to_u64() {
        Some(small) => s.serialize_u64(small),
        None => s.serialize_str(&v.to_str_radix(10)),
    }
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
    struct CountVisitor;

    impl Visitor<'_> for CountVisitor {
        type Value = BigUint;

        fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
            f.write_str("a nonnegative integer or decimal string")
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigUint, E> {
            Ok(BigUint::from(v))
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<BigUint, E> {
            v.parse().map_err(E::custom)
        }
    }

    d.deserialize_any(CountVisitor)
}
