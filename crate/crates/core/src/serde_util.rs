//! String encodings for exact rationals in JSON.

pub mod ratio {
    use num_rational::Rational64;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational64, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).ok_or_else(|| de::Error::custom(format!("bad rational '{s}'")))
    }

    pub fn parse(s: &str) -> Option<Rational64> {
        let s = s.trim();
        match s.split_once('/') {
            Some((p, q)) => {
                let p: i64 = p.trim().parse().ok()?;
                let q: i64 = q.trim().parse().ok()?;
                (q != 0).then(|| Rational64::new(p, q))
            }
            None => Some(Rational64::from_integer(s.parse().ok()?)),
        }
    }
}

pub mod big_ratio {
    use num_rational::BigRational;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }
}

pub mod big_int {
    use num_bigint::BigInt;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(x) {
            Ok(v) => s.serialize_i64(v),
            Err(_) => s.serialize_str(&x.to_string()),
        }
    }
}
