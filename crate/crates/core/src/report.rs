//! JSON serialization helpers. Complex numbers are `{"re", "im"}` objects,
//! exact rationals are `"p/q"` strings.

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::gauss::{rat_string, GaussianRational};

pub const SCHEMA: &str = "isochk/1";

pub fn ser_complex<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    let mut st = s.serialize_struct("Complex", 2)?;
    st.serialize_field("re", &z.re)?;
    st.serialize_field("im", &z.im)?;
    st.end()
}

pub fn ser_opt_complex<S: Serializer>(z: &Option<Complex64>, s: S) -> Result<S::Ok, S::Error> {
    match z {
        Some(z) => ser_complex(z, s),
        None => s.serialize_none(),
    }
}

pub fn ser_gauss<S: Serializer>(g: &GaussianRational, s: S) -> Result<S::Ok, S::Error> {
    let mut st = s.serialize_struct("GaussianRational", 2)?;
    st.serialize_field("re", &rat_string(&g.re))?;
    st.serialize_field("im", &rat_string(&g.im))?;
    st.end()
}

pub fn ser_opt_gauss<S: Serializer>(g: &Option<GaussianRational>, s: S) -> Result<S::Ok, S::Error> {
    match g {
        Some(g) => ser_gauss(g, s),
        None => s.serialize_none(),
    }
}

/// Wrapper giving a complex value the report encoding.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CJson(pub Complex64);

impl Serialize for CJson {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ser_complex(&self.0, s)
    }
}

/// Wrapper giving an exact value the report encoding.
#[derive(Clone, Debug, PartialEq)]
pub struct GJson(pub GaussianRational);

impl Serialize for GJson {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ser_gauss(&self.0, s)
    }
}

pub fn ser_poly<S: Serializer>(p: &crate::bipoly::BiPoly, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&crate::parser::format_poly(p))
}

pub fn ser_mat2<S: Serializer>(m: &[[GaussianRational; 2]; 2], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(m.iter().map(|r| [GJson(r[0].clone()), GJson(r[1].clone())]))
}
