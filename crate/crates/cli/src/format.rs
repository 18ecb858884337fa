use serde::Serialize;
use serde_json::Value;

/// `v` rounded to 15 significant digits.
pub fn round15(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{v:.14e}").parse().unwrap_or(v)
}

/// Shortest decimal form of `round15(v)`.
pub fn fmt15(v: f64) -> String {
    let r = round15(v);
    let a = r.abs();
    if r.is_finite() && a != 0.0 && !(1e-5..1e15).contains(&a) {
        format!("{r:e}")
    } else if r == r.trunc() {
        format!("{r:.1}")
    } else {
        format!("{r}")
    }
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if !n.is_i64() && !n.is_u64() => {
            if let Some(x) = n.as_f64() {
                if let Some(m) = serde_json::Number::from_f64(round15(x)) {
                    *n = m;
                }
            }
        }
        Value::Array(a) => a.iter_mut().for_each(round_value),
        Value::Object(o) => o.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Pretty JSON with every float rounded to 15 significant digits.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut v = serde_json::to_value(value).expect("report types serialize");
    round_value(&mut v);
    serde_json::to_string_pretty(&v).expect("JSON values print")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(round15(0.1 + 0.2), 0.3);
        assert_eq!(fmt15(1.0 / 3.0), "0.333333333333333");
        assert_eq!(fmt15(2.0), "2.0");
        assert_eq!(fmt15(-1e-20), "-1e-20");
        assert_eq!(fmt15(1.5e300), "1.5e300");
        assert_eq!(fmt15(0.0), "0.0");
        assert_eq!(round15(f64::INFINITY), f64::INFINITY);
    }

    #[test]
    fn json_numbers_are_rounded() {
        let s = to_json(&serde_json::json!({"a": [0.1 + 0.2, 3], "b": {"c": 10.0f64.sqrt()}}));
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["a"][0].as_f64(), Some(0.3));
        assert_eq!(v["a"][1].as_i64(), Some(3));
        assert_eq!(v["b"]["c"].as_f64(), Some(3.16227766016838));
    }
}
