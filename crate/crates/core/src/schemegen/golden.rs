use crate::parser::parse_system;

use super::{Scheme, SchemeError};

macro_rules! fixtures {
    ($($name:literal => $file:literal),* $(,)?) => {
        /// Reference schemes bundled with the crate, as `(name, .dps source)`.
        pub const GOLDEN: &[(&str, &str)] = &[$(($name, include_str!(concat!("../../golden/", $file)))),*];
    };
}

fixtures! {
    "laplace" => "laplace.dps",
    "laplace-trapezoid" => "laplace_trapezoid.dps",
    "heat" => "heat.dps",
    "wave" => "wave.dps",
    "advection" => "advection.dps",
    "burgers-ftfs" => "burgers_ftfs.dps",
    "burgers-lax-1" => "burgers_lax_1.dps",
    "burgers-lax-2" => "burgers_lax_2.dps",
    "burgers-lax-3" => "burgers_lax_3.dps",
    "burgers-lax-4" => "burgers_lax_4.dps",
    "burgers-lax-5" => "burgers_lax_5.dps",
    "burgers-lax-6" => "burgers_lax_6.dps",
    "burgers-lax-7" => "burgers_lax_7.dps",
    "lax-wendroff" => "lax_wendroff.dps",
    "godunov" => "godunov.dps",
}

/// The equations of a bundled fixture, one scheme each.
pub fn golden(name: &str) -> Result<Vec<Scheme>, SchemeError> {
    let (_, src) = GOLDEN
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| SchemeError::UnknownProblem(name.to_string()))?;
    let s = parse_system(src)?;
    let (names, r) = (s.names(), s.ranking());
    Ok(s.equations
        .into_iter()
        .map(|p| Scheme::new(p, names.clone(), r.clone()))
        .collect())
}
