use std::collections::HashSet;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use smallvec::SmallVec;

/// A named, shift-invariant parameter such as a mesh step or a viscosity.
///
/// Names are interned for the lifetime of the process. Ordering is by name,
/// so canonical forms do not depend on which thread saw a name first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Param(&'static str);

fn registry() -> &'static Mutex<HashSet<&'static str>> {
    static REGISTRY: OnceLock<Mutex<HashSet<&'static str>>> = OnceLock::new();
    REGISTRY.get_or_init(|| Mutex::new(HashSet::new()))
}

impl Param {
    pub fn new(name: &str) -> Param {
        let mut names = registry().lock().expect("parameter registry poisoned");
        if let Some(existing) = names.get(name) {
            return Param(existing);
        }
        let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
        names.insert(leaked);
        Param(leaked)
    }

    pub fn name(&self) -> &'static str {
        self.0
    }
}

impl fmt::Debug for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

/// Power product of parameters, kept sorted by parameter with positive exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamMonomial {
    factors: SmallVec<[(Param, u32); 3]>,
}

impl ParamMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(p: Param) -> Self {
        Self::power(p, 1)
    }

    pub fn power(p: Param, exp: u32) -> Self {
        let mut factors = SmallVec::new();
        if exp > 0 {
            factors.push((p, exp));
        }
        ParamMonomial { factors }
    }

    pub fn from_factors(mut factors: Vec<(Param, u32)>) -> Self {
        factors.sort_by_key(|f| f.0);
        let mut out: SmallVec<[(Param, u32); 3]> = SmallVec::new();
        for (p, e) in factors {
            match out.last_mut() {
                Some(last) if last.0 == p => last.1 += e,
                _ => out.push((p, e)),
            }
        }
        out.retain(|f| f.1 > 0);
        ParamMonomial { factors: out }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|f| f.1).sum()
    }

    pub fn exponent(&self, p: Param) -> u32 {
        self.factors
            .iter()
            .find(|f| f.0 == p)
            .map_or(0, |f| f.1)
    }

    pub fn factors(&self) -> &[(Param, u32)] {
        &self.factors
    }

    pub fn params(&self) -> impl Iterator<Item = Param> + '_ {
        self.factors.iter().map(|f| f.0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out: SmallVec<[(Param, u32); 3]> = SmallVec::new();
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push(b[j]);
                j += 1;
            } else {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
        ParamMonomial { factors: out }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        let mut out: SmallVec<[(Param, u32); 3]> = SmallVec::new();
        for &(p, e) in &self.factors {
            let d = other.exponent(p);
            if d > e {
                return None;
            }
            if e > d {
                out.push((p, e - d));
            }
        }
        if other.factors.iter().any(|&(p, _)| self.exponent(p) == 0) {
            return None;
        }
        Some(ParamMonomial { factors: out })
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let factors = self
            .factors
            .iter()
            .filter_map(|&(p, e)| {
                let m = e.min(other.exponent(p));
                (m > 0).then_some((p, m))
            })
            .collect();
        ParamMonomial { factors }
    }

    /// Splits off the power of `p`: returns (exponent, remaining monomial).
    pub fn split(&self, p: Param) -> (u32, Self) {
        let e = self.exponent(p);
        let factors = self.factors.iter().copied().filter(|f| f.0 != p).collect();
        (e, ParamMonomial { factors })
    }
}

impl Ord for ParamMonomial {
    /// Graded lexicographic order, parameters compared by name.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (a, b) = (&self.factors, &other.factors);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(x), Some(y)) => {
                    if x.0 < y.0 {
                        return Ordering::Greater;
                    } else if y.0 < x.0 {
                        return Ordering::Less;
                    } else if x.1 != y.1 {
                        return x.1.cmp(&y.1);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }
}

impl PartialOrd for ParamMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ParamMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ParamMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (k, (p, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}
