use num_complex::Complex;
use num_traits::{ToPrimitive, Zero};

use crate::schemegen::Scheme;

use super::compile::{numeric_terms, Field};
use super::{NumericsError, Real};

/// Largest von Neumann amplification factor of `s` linearized about `f' = speed`,
/// sampled at `samples + 1` wave numbers in `[0, π]`. Infinite when the new-level
/// operator vanishes at a sampled wave number.
pub fn amplification<T: Real>(
    s: &Scheme,
    params: &[(&str, T)],
    speed: T,
    samples: usize,
) -> Result<T, NumericsError> {
    let groups = numeric_terms(s, params)?;
    let top = groups.keys().map(|(_, t)| *t).max().unwrap_or(0) as usize;
    if top > 2 {
        return Err(NumericsError::InvalidGrid("more than three time levels".into()));
    }
    let speed = speed.to_f64().ok_or(NumericsError::Singular)?;
    let mut worst = 0f64;
    for i in 0..=samples {
        let k = std::f64::consts::PI * i as f64 / samples.max(1) as f64;
        let z = Complex::from_polar(1.0, k);
        let mut p = vec![Complex::<f64>::zero(); top + 1];
        for ((field, t), poly) in &groups {
            let scale = if *field == Field::F { speed } else { 1.0 };
            let mut zx = Complex::new(1.0, 0.0);
            for c in poly {
                p[*t as usize] += zx * c.to_f64().ok_or(NumericsError::Singular)? * scale;
                zx *= z;
            }
        }
        let lead = p[top];
        let g = if lead.norm() <= 1e-12 * p.iter().map(|c| c.norm()).fold(0.0, f64::max) {
            f64::INFINITY
        } else {
            match top {
                0 => 0.0,
                1 => (-p[0] / lead).norm(),
                _ => {
                    let disc = (p[1] * p[1] - p[0] * lead * 4.0).sqrt();
                    let r1 = (-p[1] + disc) / (lead * 2.0);
                    let r2 = (-p[1] - disc) / (lead * 2.0);
                    r1.norm().max(r2.norm())
                }
            }
        };
        worst = worst.max(g);
    }
    T::from_f64(worst).ok_or(NumericsError::Singular)
}
