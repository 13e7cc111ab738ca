//! Seeded random linear systems for cross-validation.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Rational;
use crate::diffpoly::{IndetId, Ranking, RankingKind, ShiftMonomial, ShiftOrder};
use crate::QPoly;

/// Upper bounds for a random system; every bound is drawn uniformly from `1..=max`
/// except `degree`, which bounds the total shift degree of each monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shape {
    pub shifts: usize,
    pub indets: usize,
    pub generators: usize,
    pub degree: u32,
    pub terms: usize,
    pub coeff: i64,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            shifts: 2,
            indets: 3,
            generators: 3,
            degree: 3,
            terms: 4,
            coeff: 3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RandomSystem {
    pub seed: u64,
    pub equations: Vec<QPoly>,
    pub ranking: Ranking,
}

pub fn random_system(seed: u64) -> RandomSystem {
    random_system_with(seed, Shape::default())
}

/// Nonzero integer coefficients in `[-coeff, coeff]`; the ranking kind and both priority
/// lists are drawn as well.
pub fn random_system_with(seed: u64, shape: Shape) -> RandomSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=shape.shifts);
    let m = rng.gen_range(1..=shape.indets);
    let count = rng.gen_range(1..=shape.generators);
    let mut equations = Vec::with_capacity(count);
    while equations.len() < count {
        let len = rng.gen_range(1..=shape.terms);
        let p = QPoly::from_terms((0..len).map(|_| {
            let k = IndetId(rng.gen_range(0..m) as u16);
            let mut mu = vec![0u32; n];
            for _ in 0..rng.gen_range(0..=shape.degree) {
                mu[rng.gen_range(0..n)] += 1;
            }
            let c = loop {
                let c: i64 = rng.gen_range(-shape.coeff..=shape.coeff);
                if c != 0 {
                    break c;
                }
            };
            (ShiftMonomial::new(k, &mu), Rational::from_integer(BigInt::from(c)))
        }));
        if !p.is_zero() {
            equations.push(p);
        }
    }
    let mut indets: Vec<IndetId> = (0..m as u16).map(IndetId).collect();
    let mut shifts: Vec<usize> = (0..n).collect();
    for _ in 0..4 {
        let (a, b) = (rng.gen_range(0..m), rng.gen_range(0..m));
        indets.swap(a, b);
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        shifts.swap(a, b);
    }
    let (kind, order) = match rng.gen_range(0..3) {
        0 => (RankingKind::Elimination, ShiftOrder::Lex),
        1 => (RankingKind::Elimination, ShiftOrder::GradedLex),
        _ => (RankingKind::Orderly, ShiftOrder::Lex),
    };
    RandomSystem {
        seed,
        equations,
        ranking: Ranking::new(kind, order, &indets, shifts),
    }
}
