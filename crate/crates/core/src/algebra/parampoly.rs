use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::param::{Param, ParamMonomial};
use super::Rational;

/// Multivariate polynomial in parameters with rational coefficients.
///
/// Terms are kept in ascending graded-lex order; the leading term is the last one.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    terms: BTreeMap<ParamMonomial, Rational>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, ParamMonomial::one())
    }

    pub fn integer(i: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(i)))
    }

    pub fn var(p: Param) -> Self {
        Self::term(Rational::one(), ParamMonomial::var(p))
    }

    pub fn term(c: Rational, m: ParamMonomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        ParamPoly { terms }
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (ParamMonomial, Rational)>) -> Self {
        let mut p = ParamPoly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: ParamMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    /// True for constants, including zero.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(ParamMonomial::is_one)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ParamMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn leading(&self) -> Option<(&ParamMonomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading().map_or_else(Rational::zero, |(_, c)| c.clone())
    }

    pub fn params(&self) -> Vec<Param> {
        let mut ps: Vec<Param> = self.terms.keys().flat_map(|m| m.params()).collect();
        ps.sort();
        ps.dedup();
        ps
    }

    pub fn degree_in(&self, p: Param) -> u32 {
        self.terms.keys().map(|m| m.exponent(p)).max().unwrap_or(0)
    }

    pub fn neg(&self) -> Self {
        ParamPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return ParamPoly::zero();
        }
        let mut out = ParamPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &ParamMonomial) -> Self {
        ParamPoly {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = ParamPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (dm, dc) = divisor.leading()?;
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut quot = ParamPoly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div(dm)?;
            let qc = rc / dc;
            let step = divisor.mul_monomial(&qm).scale(&qc);
            quot.add_term(qm, qc);
            rem = rem.sub(&step);
        }
        Some(quot)
    }

    /// Coefficients of `self` viewed as a univariate polynomial in `p`.
    fn coeffs_in(&self, p: Param) -> Vec<ParamPoly> {
        let deg = self.degree_in(p) as usize;
        let mut out = vec![ParamPoly::zero(); deg + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split(p);
            out[e as usize].add_term(rest, c.clone());
        }
        out
    }

    fn from_coeffs_in(p: Param, coeffs: &[ParamPoly]) -> Self {
        let mut out = ParamPoly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            let shift = ParamMonomial::power(p, e as u32);
            for (m, v) in &c.terms {
                out.add_term(m.mul(&shift), v.clone());
            }
        }
        out
    }

    /// Least common multiple of coefficient denominators and gcd of numerators.
    pub fn rational_content(&self) -> (BigInt, BigInt) {
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        (num, den)
    }

    /// Scalar multiple with integer coefficients, unit content and positive leading coefficient.
    pub fn primitive_integer(&self) -> Self {
        if self.is_zero() {
            return ParamPoly::zero();
        }
        let (num, den) = self.rational_content();
        let mut factor = Rational::new(den, num);
        if self.leading_coeff().is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Greatest common divisor over the rationals, normalized by [`ParamPoly::primitive_integer`].
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_integer();
        }
        if other.is_zero() {
            return self.primitive_integer();
        }
        if self.is_constant() || other.is_constant() {
            return ParamPoly::one();
        }
        if self.num_terms() == 1 || other.num_terms() == 1 {
            let mut m = self.terms.keys().next().unwrap().clone();
            for k in self.terms.keys().chain(other.terms.keys()) {
                m = m.gcd(k);
            }
            return ParamPoly::term(Rational::one(), m);
        }
        let a = self.primitive_integer();
        let b = other.primitive_integer();
        match heuristic_gcd(&a, &b, 0) {
            Some(g) => g.primitive_integer(),
            None => a.prs_gcd(&b),
        }
    }

    /// Gcd by recursive primitive polynomial remainder sequences.
    fn prs_gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_integer();
        }
        if other.is_zero() {
            return self.primitive_integer();
        }
        if self.is_constant() || other.is_constant() {
            return ParamPoly::one();
        }
        let mut vars = self.params();
        vars.extend(other.params());
        vars.sort();
        vars.dedup();
        let x = vars[0];

        let a = self.coeffs_in(x);
        let b = other.coeffs_in(x);
        let ca = content_of(&a);
        let cb = content_of(&b);
        let c = ca.gcd(&cb);
        if a.len() == 1 || b.len() == 1 {
            return c;
        }
        let pa: Vec<ParamPoly> = a.iter().map(|t| t.div_exact(&ca).unwrap()).collect();
        let pb: Vec<ParamPoly> = b.iter().map(|t| t.div_exact(&cb).unwrap()).collect();
        let (mut r0, mut r1) = if pa.len() >= pb.len() { (pa, pb) } else { (pb, pa) };
        let g = loop {
            let r = pseudo_remainder(&r0, &r1);
            if r.is_empty() {
                break r1;
            }
            if r.len() == 1 {
                break vec![ParamPoly::one()];
            }
            r0 = r1;
            r1 = primitive_part(&r);
        };
        let g = primitive_part(&g);
        ParamPoly::from_coeffs_in(x, &g).mul(&c).primitive_integer()
    }

    /// Integer gcd of the coefficients, assuming integer coefficients.
    fn integer_content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |g, c| g.gcd(c.numer()))
    }

    fn max_norm(&self) -> BigInt {
        self.terms
            .values()
            .map(|c| c.numer().abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Substitutes the integer `v` for `p`.
    fn substitute(&self, p: Param, v: &BigInt) -> Self {
        let mut out = ParamPoly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(p);
            let val = Rational::from_integer(num_traits::pow(v.clone(), e as usize));
            out.add_term(rest, c * val);
        }
        out
    }

    /// Rebuilds a polynomial in `p` from the balanced base-`xi` digits of its coefficients.
    fn interpolate(&self, p: Param, xi: &BigInt) -> Self {
        let half = xi / 2;
        let mut out = ParamPoly::zero();
        let mut cur = self.clone();
        let mut e = 0u32;
        while !cur.is_zero() {
            let mut digit = ParamPoly::zero();
            for (m, c) in &cur.terms {
                let mut d = c.numer().mod_floor(xi);
                if d > half {
                    d -= xi;
                }
                digit.add_term(m.clone(), Rational::from_integer(d));
            }
            let shift = ParamMonomial::power(p, e);
            for (m, c) in &digit.terms {
                out.add_term(m.mul(&shift), c.clone());
            }
            cur = cur.sub(&digit).scale(&Rational::new(BigInt::one(), xi.clone()));
            e += 1;
        }
        out
    }
    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return ParamPoly::zero();
        }
        let g = self.gcd(other);
        self.div_exact(&g).unwrap().mul(other).primitive_integer()
    }

    /// Evaluates with every parameter bound by `lookup`.
    pub fn eval(&self, lookup: &dyn Fn(Param) -> Option<Rational>) -> Result<Rational, Param> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(p, e) in m.factors() {
                let v = lookup(p).ok_or(p)?;
                t *= num_traits::pow(v, e as usize);
            }
            acc += t;
        }
        Ok(acc)
    }
}

/// Heuristic gcd of integer-coefficient polynomials by evaluation and interpolation.
///
/// Returns the full gcd including its integer content, or `None` when the heuristic
/// gives up and an exact fallback is needed.
fn heuristic_gcd(f: &ParamPoly, g: &ParamPoly, depth: u32) -> Option<ParamPoly> {
    if f.is_zero() {
        return Some(g.clone());
    }
    if g.is_zero() {
        return Some(f.clone());
    }
    let cf = f.integer_content();
    let cg = g.integer_content();
    let c = cf.gcd(&cg);
    let content = ParamPoly::constant(Rational::from_integer(c.clone()));
    if f.is_constant() || g.is_constant() {
        return Some(content);
    }
    if f.num_terms() == 1 || g.num_terms() == 1 {
        let mut m = f.terms.keys().next().unwrap().clone();
        for k in f.terms.keys().chain(g.terms.keys()) {
            m = m.gcd(k);
        }
        return Some(ParamPoly::term(Rational::from_integer(c), m));
    }
    if depth > 16 {
        return None;
    }
    let f = f.scale(&Rational::new(BigInt::one(), cf));
    let g = g.scale(&Rational::new(BigInt::one(), cg));
    let x = {
        let mut vars = f.params();
        vars.extend(g.params());
        vars.sort();
        vars[0]
    };
    let (nf, ng) = (f.max_norm(), g.max_norm());
    let b = BigInt::from(2) * nf.clone().min(ng.clone()) + BigInt::from(29);
    let lf = f.leading_coeff().numer().abs();
    let lg = g.leading_coeff().numer().abs();
    let mut xi = std::cmp::max(
        std::cmp::min(b.clone(), BigInt::from(99) * b.sqrt()),
        BigInt::from(2) * std::cmp::min(nf / lf, ng / lg) + BigInt::from(2),
    );
    for _ in 0..6 {
        let ff = f.substitute(x, &xi);
        let gg = g.substitute(x, &xi);
        if !ff.is_zero() && !gg.is_zero() {
            let h = heuristic_gcd(&ff, &gg, depth + 1)?;
            let cand = h.interpolate(x, &xi);
            if !cand.is_zero() {
                let cand = cand.scale(&Rational::new(BigInt::one(), cand.integer_content()));
                if f.div_exact(&cand).is_some() && g.div_exact(&cand).is_some() {
                    return Some(cand.scale(&Rational::from_integer(c)));
                }
            }
        }
        xi = BigInt::from(73794) * &xi * xi.sqrt().sqrt() / BigInt::from(27011);
    }
    None
}

/// Gcd of a list of coefficients; zero entries are skipped.
fn content_of(coeffs: &[ParamPoly]) -> ParamPoly {
    let mut g = ParamPoly::zero();
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        g = if g.is_zero() { c.primitive_integer() } else { g.gcd(c) };
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_part(coeffs: &[ParamPoly]) -> Vec<ParamPoly> {
    let c = content_of(coeffs);
    if c.is_zero() {
        return Vec::new();
    }
    coeffs.iter().map(|t| t.div_exact(&c).unwrap()).collect()
}

fn trim(v: &mut Vec<ParamPoly>) {
    while v.last().is_some_and(ParamPoly::is_zero) {
        v.pop();
    }
}

/// Pseudo-remainder of dense univariate polynomials with polynomial coefficients.
fn pseudo_remainder(a: &[ParamPoly], b: &[ParamPoly]) -> Vec<ParamPoly> {
    let mut r: Vec<ParamPoly> = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] = r[i + shift].sub(&bc.mul(&lr));
        }
        trim(&mut r);
    }
    r
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(name: &str) -> ParamPoly {
        ParamPoly::var(Param::new(name))
    }

    fn int(i: i64) -> ParamPoly {
        ParamPoly::integer(i)
    }

    #[test]
    fn gcd_of_shared_binomial_factor() {
        let (h, tau) = (p("h"), p("tau"));
        // (h + tau)(h - 2) and (h + tau)(tau + 3)
        let common = h.add(&tau);
        let a = common.mul(&h.sub(&int(2)));
        let b = common.mul(&tau.add(&int(3)));
        assert_eq!(a.gcd(&b), common);
    }

    #[test]
    fn gcd_is_primitive_with_positive_lead() {
        let h = p("h");
        let a = h.scale(&Rational::new(BigInt::from(-6), BigInt::from(1)));
        let b = h.mul(&h).scale(&Rational::new(BigInt::from(4), BigInt::from(1)));
        assert_eq!(a.gcd(&b), h);
    }

    #[test]
    fn gcd_with_coprime_inputs_is_one() {
        let (h, tau, nu) = (p("h"), p("tau"), p("nu"));
        let a = h.mul(&h).sub(&nu.mul(&tau));
        let b = h.add(&tau);
        assert!(a.gcd(&b).is_one());
    }

    #[test]
    fn gcd_multivariate_squares() {
        let (h, tau) = (p("h"), p("tau"));
        let f = h.sub(&tau);
        let a = f.pow(3).mul(&h);
        let b = f.pow(2).mul(&tau.add(&int(1)));
        assert_eq!(a.gcd(&b), f.pow(2).primitive_integer());
    }

    #[test]
    fn heuristic_and_remainder_sequence_agree() {
        let (h, tau, nu) = (p("h"), p("tau"), p("nu"));
        let a = h.mul(&h).mul(&tau).sub(&nu.scale(&Rational::from_integer(3.into()))).add(&tau.mul(&nu));
        let b = h.mul(&nu).add(&tau.pow(2)).sub(&int(2));
        let c = tau.mul(&nu).add(&h).add(&int(1));
        let x = a.pow(2).mul(&c);
        let y = b.pow(2).mul(&c).mul(&c);
        assert_eq!(x.gcd(&y), c);
        assert_eq!(x.prs_gcd(&y), c);
    }

    #[test]
    fn exact_division_detects_remainder() {
        let (h, tau) = (p("h"), p("tau"));
        let a = h.mul(&tau).add(&h);
        assert_eq!(a.div_exact(&h), Some(tau.add(&int(1))));
        assert_eq!(a.div_exact(&tau), None);
    }

    #[test]
    fn display_is_descending() {
        let (h, tau) = (p("h"), p("tau"));
        let a = h.mul(&h).scale(&Rational::from_integer(2.into())).sub(&tau).add(&int(1));
        assert_eq!(a.to_string(), "2*h^2 - tau + 1");
    }
}
