//! Period lattice of y^2 = 4x^3 - g2 x - g3 by the complex AGM, and
//! unimodular basis normalization into the standard fundamental domain.

use crate::error::{Error, Result};
use crate::roots::depressed_cubic_roots;
use crate::C;
use std::f64::consts::PI;

/// Lattice basis (omega1, omega2) with Im(omega2/omega1) > 0.
#[derive(Debug, Clone, Copy)]
pub struct LatticeData {
    pub omega1: C,
    pub omega2: C,
}

impl LatticeData {
    pub fn tau(&self) -> C {
        self.omega2 / self.omega1
    }
}

/// Roots e1, e2, e3 of 4t^3 - g2 t - g3, ordered by (Re, Im) descending.
#[derive(Debug, Clone, Copy)]
pub struct RootTriple {
    pub e1: C,
    pub e2: C,
    pub e3: C,
}

impl RootTriple {
    pub fn as_array(&self) -> [C; 3] {
        [self.e1, self.e2, self.e3]
    }
}

fn disc_w(g2: C, g3: C) -> C {
    g2.powu(3) - g3 * g3 * 27.0
}

fn singular_scale(g2: C, g3: C) -> f64 {
    1.0f64.max(g2.norm()).powi(3).max(g3.norm().powi(2))
}

/// Roots of the Weierstrass cubic; errors on singular (g2, g3).
pub fn weierstrass_roots(g2: C, g3: C) -> Result<RootTriple> {
    if disc_w(g2, g3).norm() < 1e-12 * singular_scale(g2, g3) {
        return Err(Error::SingularCurve);
    }
    // 4t^3 - g2 t - g3 = 4 (t^3 + p t + q)
    let mut roots = depressed_cubic_roots(-g2 / 4.0, -g3 / 4.0).to_vec();
    roots.sort_by(|a, b| {
        (b.re, b.im)
            .partial_cmp(&(a.re, a.im))
            .expect("finite roots")
    });
    Ok(RootTriple {
        e1: roots[0],
        e2: roots[1],
        e3: roots[2],
    })
}

/// Complex AGM with the "right choice" branch rule: at each step pick the
/// square root closer to the running arithmetic mean, ties toward
/// non-negative real part.
pub fn agm(a0: C, b0: C) -> Result<C> {
    let mut a = a0;
    let mut b = b0;
    for _ in 0..200 {
        let an = (a + b) * 0.5;
        let mut g = (a * b).sqrt();
        let keep = (an - g).norm();
        let flip = (an + g).norm();
        if flip < keep || (flip == keep && g.re < 0.0) {
            g = -g;
        }
        a = an;
        b = g;
        if (a - b).norm() <= 1e-15 * a.norm() {
            return Ok((a + b) * 0.5);
        }
    }
    Err(Error::NonconvergentAgm(200))
}

fn periods_from_root_order(e1: C, e2: C, e3: C) -> Result<LatticeData> {
    let m1 = agm((e1 - e3).sqrt(), (e1 - e2).sqrt())?;
    let m2 = agm((e1 - e3).sqrt(), (e2 - e3).sqrt())?;
    let omega1 = C::new(PI, 0.0) / m1;
    let mut omega2 = C::new(0.0, PI) / m2;
    if (omega2 / omega1).im < 0.0 {
        omega2 = -omega2;
    }
    Ok(LatticeData { omega1, omega2 })
}

/// Period lattice with the given invariants, certified by the round-trip
/// through `wp::invariants_from_lattice`.  Retries the three cyclic root
/// orderings if a branch choice spoils the round-trip.
pub fn periods_from_invariants(g2: C, g3: C) -> Result<LatticeData> {
    let r = weierstrass_roots(g2, g3)?;
    let scale = 1.0f64.max(g2.norm()).max(g3.norm());
    let mut best: Option<(f64, LatticeData)> = None;
    let orders = [
        (r.e1, r.e2, r.e3),
        (r.e2, r.e3, r.e1),
        (r.e3, r.e1, r.e2),
    ];
    for (a, b, c) in orders {
        let ld = match periods_from_root_order(a, b, c) {
            Ok(ld) => ld,
            Err(_) => continue,
        };
        let (h2, h3) = match crate::wp::invariants_from_lattice(&ld) {
            Ok(v) => v,
            Err(_) => continue,
        };
        let resid = ((h2 - g2).norm() + (h3 - g3).norm()) / scale;
        if resid <= 1e-9 {
            return Ok(ld);
        }
        if best.as_ref().is_none_or(|(r0, _)| resid < *r0) {
            best = Some((resid, ld));
        }
    }
    match best {
        Some((resid, _)) => Err(Error::Inconsistency(format!(
            "period round-trip residual {resid:.3e} exceeds 1e-9 in all root orderings"
        ))),
        None => Err(Error::NonconvergentAgm(200)),
    }
}

/// Replace the basis by a unimodular one whose tau lies in the standard
/// fundamental domain (|Re tau| <= 1/2, |tau| >= 1, Im tau >= sqrt(3)/2).
pub fn normalize_basis(ld: &LatticeData) -> LatticeData {
    let mut o1 = ld.omega1;
    let mut o2 = ld.omega2;
    assert!((o2 / o1).im > 0.0, "normalize_basis needs Im(tau) > 0");
    for _ in 0..200 {
        let tau = o2 / o1;
        let n = tau.re.round();
        if n != 0.0 {
            o2 -= o1 * n;
            continue;
        }
        if (o2 / o1).norm() < 1.0 - 1e-15 {
            // tau -> -1/tau
            let t = o1;
            o1 = o2;
            o2 = -t;
            continue;
        }
        break;
    }
    LatticeData {
        omega1: o1,
        omega2: o2,
    }
}
