use super::compile::{Field, LinearUpdate, StencilUpdate};
use super::riemann::{burgers_flux, godunov_flux, RiemannIC};
use super::{real, NumericsError, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary {
    /// Ghost nodes hold the exact solution.
    Fixed,
    Periodic,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridConfig<T> {
    pub x_min: T,
    pub x_max: T,
    pub cells: usize,
    /// Requested `τ/h`; the step is shortened so that a whole number of steps ends at `t_end`.
    pub courant: T,
    pub t_end: T,
    pub boundary: Boundary,
}

impl<T: Real> GridConfig<T> {
    /// The unit interval with fixed boundaries.
    pub fn unit(cells: usize, courant: T, t_end: T) -> Self {
        GridConfig {
            x_min: T::zero(),
            x_max: T::one(),
            cells,
            courant,
            t_end,
            boundary: Boundary::Fixed,
        }
    }

    pub fn validate(&self) -> Result<(), NumericsError> {
        let bad = |m: &str| Err(NumericsError::InvalidGrid(m.into()));
        if self.cells < 4 {
            return bad("need at least 4 cells");
        }
        if self.courant.is_nan() || self.courant <= T::zero() {
            return bad("courant number must be positive");
        }
        if self.x_max.is_nan() || self.x_min.is_nan() || self.x_max <= self.x_min {
            return bad("empty interval");
        }
        if !self.t_end.is_finite() || self.t_end < T::zero() {
            return bad("t_end must be finite and non-negative");
        }
        Ok(())
    }

    pub fn h(&self) -> T {
        (self.x_max - self.x_min) / T::from_usize(self.cells).expect("cells")
    }

    pub fn steps(&self) -> usize {
        let n = self.t_end / (self.courant * self.h());
        let r = n.round();
        let n = if (n - r).abs() <= real::<T>(1e-9) * r.max(T::one()) { r } else { n.ceil() };
        n.to_usize().unwrap_or(0)
    }

    pub fn tau(&self) -> T {
        match self.steps() {
            0 => self.courant * self.h(),
            n => self.t_end / T::from_usize(n).expect("steps"),
        }
    }

    /// Cell centres.
    pub fn x(&self, j: i64) -> T {
        self.x_min + (T::from_i64(j).expect("index") + real(0.5)) * self.h()
    }

    /// `h`, `tau` and `nu` for [`compile_update`](super::compile_update).
    pub fn params(&self, nu: T) -> [(&'static str, T); 3] {
        [("h", self.h()), ("tau", self.tau()), ("nu", nu)]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Metrics<T> {
    pub l1: T,
    pub linf: T,
    pub shock_pos: T,
    /// Cells strictly inside the 10%–90% band of the jump.
    pub width: usize,
    pub max_abs: T,
    pub steps: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Solution<T> {
    pub x: Vec<T>,
    pub u: Vec<T>,
    pub exact: Vec<T>,
    pub t: T,
    pub metrics: Metrics<T>,
}

struct Stepper<'a, T> {
    update: &'a StencilUpdate<T>,
    g: &'a GridConfig<T>,
    exact: &'a dyn Fn(T, T) -> T,
    /// Most recent level first.
    history: Vec<Vec<T>>,
    tau: T,
    n: usize,
}

impl<T: Real> Stepper<'_, T> {
    fn ghost(&self, j: i64, level_time: T, row: &[T]) -> T {
        let n = self.g.cells as i64;
        if (0..n).contains(&j) {
            return row[j as usize];
        }
        match self.g.boundary {
            Boundary::Periodic => row[j.rem_euclid(n) as usize],
            Boundary::Fixed => (self.exact)(self.g.x(j), level_time),
        }
    }

    fn time(&self, n: usize) -> T {
        T::from_usize(n).expect("step") * self.tau
    }

    fn step_linear(&self, l: &LinearUpdate<T>) -> Result<Vec<T>, NumericsError> {
        let cells = self.g.cells;
        let mut out = vec![T::zero(); cells];
        if l.sweep.is_some() && self.g.boundary == Boundary::Periodic {
            return Err(NumericsError::SweepNeedsBoundary);
        }
        let t_new = self.time(self.n + 1);
        for j in 0..cells {
            let mut acc = T::zero();
            for tap in &l.taps {
                let row = &self.history[tap.level];
                let v = self.ghost(j as i64 + tap.dx as i64, self.time(self.n - tap.level), row);
                acc = acc
                    + tap.coeff
                        * match tap.field {
                            Field::U => v,
                            Field::F => burgers_flux(v),
                        };
            }
            if let Some((dx, c)) = l.sweep {
                let k = j as i64 + dx as i64;
                let prev = if k >= 0 { out[k as usize] } else { (self.exact)(self.g.x(k), t_new) };
                acc = acc + c * prev;
            }
            out[j] = acc;
        }
        Ok(out)
    }

    fn step(&mut self) -> Result<(), NumericsError> {
        let next = match self.update {
            StencilUpdate::Linear(l) => self.step_linear(l)?,
            StencilUpdate::Godunov(gd) => {
                let row = &self.history[0];
                let t = self.time(self.n);
                let u = |j: i64| self.ghost(j, t, row);
                (0..self.g.cells as i64)
                    .map(|j| {
                        let right = godunov_flux(u(j), u(j + 1));
                        let left = godunov_flux(u(j - 1), u(j));
                        u(j) - gd.lambda * (right - left)
                    })
                    .collect()
            }
        };
        self.history.insert(0, next);
        self.history.truncate(self.update.levels().max(1));
        self.n += 1;
        Ok(())
    }
}

fn max_abs<T: Real>(u: &[T]) -> T {
    u.iter().fold(T::zero(), |m, v| m.max(v.abs()))
}

/// Runs `steps` updates after seeding the first levels with `init(x, t)`.
fn run<T: Real>(
    update: &StencilUpdate<T>,
    g: &GridConfig<T>,
    init: &dyn Fn(T, T) -> T,
    mut observe: impl FnMut(&[T], &[T]),
) -> Result<(Vec<T>, T), NumericsError> {
    g.validate()?;
    let tau = g.tau();
    let levels = update.levels().max(1);
    let history: Vec<Vec<T>> = (0..levels)
        .rev()
        .map(|k| {
            let t = T::from_usize(k).expect("level") * tau;
            (0..g.cells as i64).map(|j| init(g.x(j), t)).collect()
        })
        .collect();
    let mut s = Stepper {
        update,
        g,
        exact: init,
        history,
        tau,
        n: levels - 1,
    };
    let mut peak = s.history.iter().fold(T::zero(), |m, r| m.max(max_abs(r)));
    while s.n < g.steps() {
        let before = s.history[0].clone();
        s.step()?;
        let now = &s.history[0];
        if now.iter().any(|v| !v.is_finite()) {
            return Err(NumericsError::BlowUp {
                step: s.n,
                max_abs: peak.to_f64().unwrap_or(f64::INFINITY),
            });
        }
        peak = peak.max(max_abs(now));
        observe(&before, now);
    }
    Ok((s.history.swap_remove(0), peak))
}

/// Interpolated crossing of `level` nearest to the steepest jump of `u`.
pub fn shock_position<T: Real>(x: &[T], u: &[T], level: T) -> T {
    let steep = (0..u.len() - 1)
        .max_by(|&a, &b| {
            let (da, db) = ((u[a + 1] - u[a]).abs(), (u[b + 1] - u[b]).abs());
            da.partial_cmp(&db).unwrap_or(std::cmp::Ordering::Equal)
        })
        .unwrap_or(0);
    let crossing = (0..u.len() - 1)
        .filter(|&j| (u[j] - level) * (u[j + 1] - level) <= T::zero() && u[j] != u[j + 1])
        .min_by_key(|&j| j.abs_diff(steep));
    match crossing {
        Some(j) => x[j] + (level - u[j]) / (u[j + 1] - u[j]) * (x[j + 1] - x[j]),
        None => (x[steep] + x[steep + 1]) / real(2.0),
    }
}

/// Runs `update` on the Riemann problem `ic` up to `g.t_end`.
pub fn simulate<T: Real>(
    update: &StencilUpdate<T>,
    ic: &RiemannIC<T>,
    g: &GridConfig<T>,
) -> Result<Solution<T>, NumericsError> {
    let exact = |x: T, t: T| ic.exact(x, t);
    let (u, peak) = run(update, g, &exact, |_, _| {})?;
    let t = g.tau() * T::from_usize(g.steps().max(update.levels() - 1)).expect("steps");
    let x: Vec<T> = (0..g.cells as i64).map(|j| g.x(j)).collect();
    let ex: Vec<T> = x.iter().map(|&x| ic.exact(x, t)).collect();
    let h = g.h();
    let err = u.iter().zip(&ex).map(|(a, b)| (*a - *b).abs());
    let l1 = err.clone().fold(T::zero(), |s, e| s + e) * h;
    let linf = err.fold(T::zero(), T::max);
    let (lo, hi) = (ic.u_l.min(ic.u_r), ic.u_l.max(ic.u_r));
    let band = (hi - lo) / real(10.0);
    let width = u.iter().filter(|&&v| v > lo + band && v < hi - band).count();
    let shock_pos = shock_position(&x, &u, (ic.u_l + ic.u_r) / real(2.0));
    Ok(Solution {
        metrics: Metrics {
            l1,
            linf,
            shock_pos,
            width,
            max_abs: peak,
            steps: g.steps(),
        },
        x,
        u,
        exact: ex,
        t,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConservationReport<T> {
    /// Largest `|Σ u^{n+1} − Σ u^n|` over the run.
    pub max_drift: T,
    /// `64·ε·cells·max|u|`.
    pub bound: T,
    pub steps: usize,
}

impl<T: Real> ConservationReport<T> {
    pub fn passed(&self) -> bool {
        self.max_drift <= self.bound
    }
}

/// Runs `update` from `initial` on a periodic grid; every earlier level also starts at
/// `initial`.
pub fn conservation_check<T: Real>(
    update: &StencilUpdate<T>,
    g: &GridConfig<T>,
    initial: &[T],
) -> Result<ConservationReport<T>, NumericsError> {
    if g.boundary != Boundary::Periodic {
        return Err(NumericsError::InvalidGrid("conservation needs a periodic grid".into()));
    }
    if initial.len() != g.cells {
        return Err(NumericsError::InvalidGrid("initial data has the wrong length".into()));
    }
    let (x0, h) = (g.x(0), g.h());
    let init = |x: T, _t: T| {
        let j = ((x - x0) / h).round().to_usize().expect("cell");
        initial[j]
    };
    let sum = |u: &[T]| u.iter().fold(T::zero(), |s, v| s + *v);
    let mut drift = T::zero();
    let (_, peak) = run(update, g, &init, |a, b| drift = drift.max((sum(b) - sum(a)).abs()))?;
    let n = T::from_usize(g.cells).expect("cells");
    Ok(ConservationReport {
        max_drift: drift,
        bound: real::<T>(64.0) * T::epsilon() * n * peak,
        steps: g.steps(),
    })
}
