//! JSON form: `{"exponent": coefficient, …}` with string keys, or
//! `{"coeffs": […], "min_exp": e}`. Coefficients may be numbers or decimal
//! strings.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::LaurentPoly;

fn coeff_to_json(c: &BigInt) -> Value {
    match i64::try_from(c) {
        Ok(v) => Value::from(v),
        Err(_) => Value::from(c.to_string()),
    }
}

fn coeff_from_json(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.trim().parse().ok(),
        _ => None,
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            m.serialize_entry(&e.to_string(), &coeff_to_json(c))?;
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        LaurentPoly::from_json(&v).map_err(de::Error::custom)
    }
}

impl LaurentPoly {
    pub fn from_json(v: &Value) -> Result<Self, String> {
        let obj = v
            .as_object()
            .ok_or_else(|| "Laurent polynomial must be a JSON object".to_string())?;
        if let Some(cs) = obj.get("coeffs") {
            let cs = cs.as_array().ok_or("\"coeffs\" must be an array")?;
            let lo = match obj.get("min_exp") {
                Some(x) => x.as_i64().ok_or("\"min_exp\" must be an integer")?,
                None => 0,
            };
            let coeffs = cs
                .iter()
                .map(|c| coeff_from_json(c).ok_or_else(|| format!("bad coefficient {c}")))
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(LaurentPoly::from_coeffs(coeffs, lo));
        }
        let mut terms = BTreeMap::new();
        for (k, c) in obj {
            let e: i64 = k.trim().parse().map_err(|_| format!("bad exponent key \"{k}\""))?;
            let c = coeff_from_json(c).ok_or_else(|| format!("bad coefficient {c}"))?;
            terms.insert(e, c);
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_array_form() {
        let p = LaurentPoly::from_i64s(&[-2, 5, -2], -1);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"-1":-2,"0":5,"1":-2}"#);
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let alt: LaurentPoly = serde_json::from_str(r#"{"coeffs":[-2,5,-2],"min_exp":-1}"#).unwrap();
        assert_eq!(alt, p);
        assert!(serde_json::from_str::<LaurentPoly>(r#"{"x":1}"#).is_err());
    }
}
