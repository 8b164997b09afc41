//! Serialization helpers shared by reports and file formats.

use serde::Serializer;

pub fn ser_display<T: std::fmt::Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}
