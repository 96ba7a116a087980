//! Serializers that round fractions to nine decimal places for diff-stable JSON.

use serde::Serializer;

pub fn round9(x: f64) -> f64 {
    let r = (x * 1e9).round() / 1e9;
    // avoid "-0.0" in output
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round9(*x))
}

pub mod option {
    use serde::Serializer;

    pub fn serialize<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => s.serialize_f64(super::round9(*v)),
            None => s.serialize_none(),
        }
    }
}

pub mod pair {
    use serde::ser::SerializeTuple;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(x: &(f64, f64), s: S) -> Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&super::round9(x.0))?;
        t.serialize_element(&super::round9(x.1))?;
        t.end()
    }
}

pub mod option_pair {
    use serde::Serializer;

    pub fn serialize<S: Serializer>(x: &Option<(f64, f64)>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(p) => super::pair::serialize(p, s),
            None => s.serialize_none(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::round9;

    #[test]
    fn rounds_to_nine_places() {
        assert_ne!(0.1 + 0.2, 0.3);
        assert_eq!(round9(0.1 + 0.2), 0.3);
        assert_eq!(round9(1.0 / 3.0), 0.333333333);
        assert_eq!(round9(-1e-15).to_string(), "0");
    }
}
