//! Jacobi theta functions by q-series.
//!
//! Conventions: theta3(z,tau) = sum_n exp(pi i n^2 tau + 2 pi i n z);
//! theta2(z) = exp(pi i tau/4 + pi i z) theta3(z + tau/2);
//! theta4(z) = theta3(z + 1/2);
//! theta1(z) = -i exp(pi i tau/4 + pi i z) theta3(z + (1+tau)/2).
//!
//! The theta1 sign is the unique convention satisfying theta1'(0) = pi*a*b*c,
//! theta1(1/2) = a and theta1(tau/2) = i q^(-1/8) c with q = exp(2 pi i tau);
//! all three anchors are asserted in the tests.

use crate::error::{Error, Result};
use crate::C;
use std::f64::consts::PI;

fn check_tau(tau: C) -> Result<()> {
    if tau.im <= 0.0 {
        return Err(Error::TauNotUpperHalf(tau.im));
    }
    if tau.im < 1e-3 {
        return Err(Error::SlowConvergence(tau.im));
    }
    Ok(())
}

/// Truncation bound: |q|^(N^2) < 1e-20 with q = exp(pi i tau).
fn truncation(tau: C) -> usize {
    ((46.0 / (PI * tau.im)).sqrt().ceil() as usize) + 2
}

const I: C = C::new(0.0, 1.0);

/// theta3 and its z-derivative in one pass.
fn theta3_raw(z: C, tau: C) -> (C, C) {
    let n_max = truncation(tau);
    let q = (I * PI * tau).exp(); // nome exp(pi i tau)
    let w = (I * 2.0 * PI * z).exp();
    let winv = C::new(1.0, 0.0) / w;
    let mut sum = C::new(1.0, 0.0);
    let mut dsum = C::new(0.0, 0.0);
    // q^{n^2} via q^{n^2} = q^{(n-1)^2} * q^{2n-1}
    let q2 = q * q;
    let mut qn2 = C::new(1.0, 0.0); // q^{(n-1)^2}, starts at q^0
    let mut qodd = q; // q^{2n-1}
    let mut wp = C::new(1.0, 0.0);
    let mut wm = C::new(1.0, 0.0);
    for n in 1..=n_max {
        qn2 *= qodd;
        qodd *= q2;
        wp *= w;
        wm *= winv;
        let nf = n as f64;
        sum += qn2 * (wp + wm);
        dsum += qn2 * (wp - wm) * (I * 2.0 * PI * nf);
    }
    (sum, dsum)
}

/// theta_j(z, tau) for j in 1..=4.
pub fn theta(j: usize, z: C, tau: C) -> Result<C> {
    check_tau(tau)?;
    let v = match j {
        1 => {
            let shift = (C::new(1.0, 0.0) + tau) * 0.5;
            -I * (I * PI * (tau * 0.25 + z)).exp() * theta3_raw(z + shift, tau).0
        }
        2 => (I * PI * (tau * 0.25 + z)).exp() * theta3_raw(z + tau * 0.5, tau).0,
        3 => theta3_raw(z, tau).0,
        4 => theta3_raw(z + 0.5, tau).0,
        _ => panic!("theta index must be 1..=4"),
    };
    if !v.re.is_finite() || !v.im.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(v)
}

/// d/dz theta_j(z, tau).
pub fn theta_prime(j: usize, z: C, tau: C) -> Result<C> {
    check_tau(tau)?;
    let v = match j {
        1 => {
            let shift = (C::new(1.0, 0.0) + tau) * 0.5;
            let (t, dt) = theta3_raw(z + shift, tau);
            -I * (I * PI * (tau * 0.25 + z)).exp() * (t * I * PI + dt)
        }
        2 => {
            let (t, dt) = theta3_raw(z + tau * 0.5, tau);
            (I * PI * (tau * 0.25 + z)).exp() * (t * I * PI + dt)
        }
        3 => theta3_raw(z, tau).1,
        4 => theta3_raw(z + 0.5, tau).1,
        _ => panic!("theta index must be 1..=4"),
    };
    if !v.re.is_finite() || !v.im.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(v)
}

/// The even theta constants (a, b, c) = (theta2(0), theta3(0), theta4(0)).
#[derive(Debug, Clone, Copy)]
pub struct ThetaConstants {
    pub a: C,
    pub b: C,
    pub c: C,
    pub tau: C,
}

impl ThetaConstants {
    /// Relative residual of the Jacobi identity a^4 + c^4 = b^4.
    pub fn jacobi_residual(&self) -> f64 {
        let a4 = self.a.powu(4);
        let b4 = self.b.powu(4);
        let c4 = self.c.powu(4);
        (a4 + c4 - b4).norm() / b4.norm()
    }
}

pub fn theta_constants(tau: C) -> Result<ThetaConstants> {
    Ok(ThetaConstants {
        a: theta(2, C::new(0.0, 0.0), tau)?,
        b: theta(3, C::new(0.0, 0.0), tau)?,
        c: theta(4, C::new(0.0, 0.0), tau)?,
        tau,
    })
}

/// theta1'(0, tau) by the term-differentiated series; equals pi*a*b*c.
pub fn theta1_prime0(tau: C) -> Result<C> {
    theta_prime(1, C::new(0.0, 0.0), tau)
}
