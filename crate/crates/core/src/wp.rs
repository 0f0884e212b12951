//! Weierstrass P-function machinery: lattice invariants (g2, g3) from theta
//! constants, P / P' / P'' evaluation through theta quotients, and the
//! closed-form 2-torsion values.

use crate::error::{Error, Result};
use crate::periods::{normalize_basis, LatticeData};
use crate::theta::{theta, theta_constants, theta_prime};
use crate::C;
use std::f64::consts::PI;

/// g2 = (2/3)(pi/omega1)^4 (a^8+b^8+c^8),
/// g3 = (4/27)(pi/omega1)^6 (a^4+b^4)(b^4+c^4)(c^4-a^4).
pub fn invariants_from_lattice(ld: &LatticeData) -> Result<(C, C)> {
    let tau = ld.tau();
    if tau.im <= 0.0 {
        return Err(Error::TauNotUpperHalf(tau.im));
    }
    // basis-invariant quantities: evaluate on the reduced basis where the
    // q-series converges fastest
    let n = normalize_basis(ld);
    let tc = theta_constants(n.tau())?;
    let (a4, b4, c4) = (tc.a.powu(4), tc.b.powu(4), tc.c.powu(4));
    let p1 = C::new(PI, 0.0) / n.omega1;
    let g2 = p1.powu(4) * (a4 * a4 + b4 * b4 + c4 * c4) * (2.0 / 3.0);
    let g3 = p1.powu(6) * (a4 + b4) * (b4 + c4) * (c4 - a4) * (4.0 / 27.0);
    Ok((g2, g3))
}

/// Reduce z modulo the lattice to the parallelogram centered at 0, then to
/// the actually nearest lattice translate.
fn reduce_mod_lattice(z: C, ld: &LatticeData) -> C {
    let (o1, o2) = (ld.omega1, ld.omega2);
    let det = o1.re * o2.im - o1.im * o2.re;
    let s = (z.re * o2.im - z.im * o2.re) / det;
    let t = (o1.re * z.im - o1.im * z.re) / det;
    let mut r = z - o1 * s.round() - o2 * t.round();
    for _ in 0..4 {
        let mut moved = false;
        for w in [o1, o2, o1 + o2, o1 - o2] {
            if (r - w).norm() < r.norm() {
                r -= w;
                moved = true;
            } else if (r + w).norm() < r.norm() {
                r += w;
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    r
}

struct WpContext {
    ld: LatticeData, // normalized basis
    a: C,
    b: C,
    e3: C,
}

fn context(ld: &LatticeData) -> Result<WpContext> {
    let n = normalize_basis(ld);
    let tc = theta_constants(n.tau())?;
    let p1 = C::new(PI, 0.0) / n.omega1;
    let e3 = -p1 * p1 * (tc.a.powu(4) + tc.b.powu(4)) / 3.0;
    Ok(WpContext {
        ld: n,
        a: tc.a,
        b: tc.b,
        e3,
    })
}

fn guard_pole(zr: C, omega1: C) -> Result<()> {
    if zr.norm() < 1e-8 * omega1.norm() {
        return Err(Error::PoleAtLatticePoint);
    }
    Ok(())
}

/// P(z) = e3 + (pi a b / omega1)^2 (theta4(v)/theta1(v))^2 with v = z/omega1.
pub fn wp(z: C, ld: &LatticeData) -> Result<C> {
    let ctx = context(ld)?;
    let zr = reduce_mod_lattice(z, &ctx.ld);
    guard_pole(zr, ctx.ld.omega1)?;
    let tau = ctx.ld.tau();
    let v = zr / ctx.ld.omega1;
    let t1 = theta(1, v, tau)?;
    let t4 = theta(4, v, tau)?;
    let q = C::new(PI, 0.0) * ctx.a * ctx.b / ctx.ld.omega1 * (t4 / t1);
    Ok(ctx.e3 + q * q)
}

/// P'(z) by the term-differentiated theta quotient.
pub fn wp_prime(z: C, ld: &LatticeData) -> Result<C> {
    let ctx = context(ld)?;
    let zr = reduce_mod_lattice(z, &ctx.ld);
    guard_pole(zr, ctx.ld.omega1)?;
    let tau = ctx.ld.tau();
    let v = zr / ctx.ld.omega1;
    let t1 = theta(1, v, tau)?;
    let t4 = theta(4, v, tau)?;
    let d1 = theta_prime(1, v, tau)?;
    let d4 = theta_prime(4, v, tau)?;
    let c0 = C::new(PI, 0.0) * ctx.a * ctx.b / ctx.ld.omega1;
    // d/dz [ (c0 t4/t1)^2 ] = 2 c0^2 (t4/t1) (t4' t1 - t4 t1')/t1^2 / omega1
    Ok(c0 * c0 * 2.0 * (t4 / t1) * (d4 * t1 - t4 * d1) / (t1 * t1) / ctx.ld.omega1)
}

/// P''(z) = 6 P(z)^2 - g2/2, always through the algebraic identity.
pub fn wp_second(z: C, ld: &LatticeData) -> Result<C> {
    let p = wp(z, ld)?;
    let (g2, _) = invariants_from_lattice(ld)?;
    Ok(p * p * 6.0 - g2 * 0.5)
}

/// P and P'' at the half-periods omega1/2, (omega1+omega2)/2, omega2/2
/// in closed form.
#[derive(Debug, Clone, Copy)]
pub struct TwoTorsionValues {
    /// P(omega1/2) = pi^2/(3 omega1^2) (b^4 + c^4)
    pub p_half1: C,
    /// P((omega1+omega2)/2) = pi^2/(3 omega1^2) (a^4 - c^4)
    pub p_half12: C,
    /// P(omega2/2) = -pi^2/(3 omega1^2) (a^4 + b^4)
    pub p_half2: C,
    /// P''(omega1/2) = 2 pi^4 b^4 c^4 / omega1^4
    pub pp_half1: C,
    /// P''((omega1+omega2)/2) = -2 pi^4 a^4 c^4 / omega1^4
    pub pp_half12: C,
    /// P''(omega2/2) = 2 pi^4 a^4 b^4 / omega1^4
    pub pp_half2: C,
}

impl TwoTorsionValues {
    pub fn p_values(&self) -> [C; 3] {
        [self.p_half1, self.p_half12, self.p_half2]
    }

    pub fn pp_values(&self) -> [C; 3] {
        [self.pp_half1, self.pp_half12, self.pp_half2]
    }
}

/// Closed-form 2-torsion data in the basis of `ld` itself (not the reduced
/// one): the half-periods are omega1/2, (omega1+omega2)/2, omega2/2 of the
/// given basis.
pub fn two_torsion_values(ld: &LatticeData) -> Result<TwoTorsionValues> {
    let tau = ld.tau();
    let tc = theta_constants(tau)?;
    let (a4, b4, c4) = (tc.a.powu(4), tc.b.powu(4), tc.c.powu(4));
    let p2 = (C::new(PI, 0.0) / ld.omega1).powu(2);
    let p4 = p2 * p2;
    Ok(TwoTorsionValues {
        p_half1: p2 * (b4 + c4) / 3.0,
        p_half12: p2 * (a4 - c4) / 3.0,
        p_half2: -p2 * (a4 + b4) / 3.0,
        pp_half1: p4 * b4 * c4 * 2.0,
        pp_half12: -p4 * a4 * c4 * 2.0,
        pp_half2: p4 * a4 * b4 * 2.0,
    })
}
