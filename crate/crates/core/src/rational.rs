//! Exact rational scalars.
//!
//! All structure constants, metric entries, and solver output in this crate
//! are arbitrary-precision rationals. `num_rational::BigRational` already
//! keeps values in lowest terms with a positive denominator, which is the
//! canonical form every equality check in the crate relies on.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rat = num_rational::BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational from a numerator/denominator pair. Panics on zero denominator.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "p/q" or "p" with optional sign. Whitespace is not accepted.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let mk_err = || format!("invalid rational literal {s:?} (expected \"p\" or \"p/q\")");
    match s.split_once('/') {
        Some((num, den)) => {
            let n: BigInt = num.parse().map_err(|_| mk_err())?;
            let d: BigInt = den.parse().map_err(|_| mk_err())?;
            if d.is_zero() {
                return Err(format!("zero denominator in rational literal {s:?}"));
            }
            Ok(Rat::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| mk_err())?;
            Ok(Rat::from_integer(n))
        }
    }
}

/// Formats as "p" for integers and "p/q" otherwise, matching the file formats.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serde adapter: rationals appear in reports and files as "p" / "p/q".
pub mod rat_string {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{parse_rat, rat_to_string, Rat};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rat(&raw).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for rational vectors.
pub mod rat_vec_string {
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{parse_rat, rat_to_string, Rat};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&rat_to_string(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rat(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Lossy conversion for report annotation only; exact paths never use this.
pub fn rat_to_f64(r: &Rat) -> f64 {
    let numer = r.numer();
    let denom = r.denom();
    // Cheap path for small values, bit-shifted fallback for large ones.
    match (numer.to_string().parse::<f64>(), denom.to_string().parse::<f64>()) {
        (Ok(n), Ok(d)) if n.is_finite() && d.is_finite() && d != 0.0 => n / d,
        _ => {
            let sign = if numer.is_negative() { -1.0 } else { 1.0 };
            let bits = numer.magnitude().bits() as i64 - denom.bits() as i64;
            sign * 2f64.powi(bits as i32)
        }
    }
}
