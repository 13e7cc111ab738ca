use super::{real, Real};

/// Piecewise-constant data with the jump at `x = 1/2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RiemannIC<T> {
    pub u_l: T,
    pub u_r: T,
}

impl<T: Real> RiemannIC<T> {
    pub fn new(u_l: T, u_r: T) -> Self {
        RiemannIC { u_l, u_r }
    }

    pub fn exact(&self, x: T, t: T) -> T {
        exact_riemann(self.u_l, self.u_r, x, t)
    }

    pub fn shock_at(&self, t: T) -> T {
        real::<T>(0.5) + (self.u_l + self.u_r) * t / real(2.0)
    }
}

/// `u_l H(x_s − x) + u_r H(x − x_s)` with `x_s = 1/2 + (u_l+u_r)t/2` and `H(0) = 1/2`.
pub fn exact_riemann<T: Real>(u_l: T, u_r: T, x: T, t: T) -> T {
    let xs = RiemannIC::new(u_l, u_r).shock_at(t);
    if x < xs {
        u_l
    } else if x > xs {
        u_r
    } else {
        (u_l + u_r) / real(2.0)
    }
}

pub fn burgers_flux<T: Real>(u: T) -> T {
    u * u / real(2.0)
}

/// Exact Godunov flux of `u²/2` between left state `a` and right state `b`.
pub fn godunov_flux<T: Real>(a: T, b: T) -> T {
    if a > b {
        burgers_flux(a).max(burgers_flux(b))
    } else if a > T::zero() {
        burgers_flux(a)
    } else if b < T::zero() {
        burgers_flux(b)
    } else {
        T::zero()
    }
}
