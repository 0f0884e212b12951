//! The three determinantal representations of a smooth plane cubic:
//! the (t, d) Weierstrass pencil, its theta-constant specialization at the
//! 2-torsion point omega2/2, and the 2-torsion-line pencil built from the
//! lambda-coefficients of a reduction.

use crate::error::{Error, Result};
use crate::forms::{MatrixPencil, TernaryForm};
use crate::periods::LatticeData;
use crate::reduce::{lambda_coeffs, ReductionData};
use crate::theta::theta_constants;
use crate::wp::two_torsion_values;
use crate::C;
use nalgebra::DMatrix;
use std::f64::consts::PI;

fn z() -> C {
    C::new(0.0, 0.0)
}

/// Pencil with rows (2x+tz, y+dz, (3t^2-g2)z), (0, x-tz, y-dz),
/// (z, 0, -2x-tz); its determinant is y^2 z - 4x^3 + g2 x z^2 + g3 z^3
/// whenever d^2 = 4t^3 - g2 t - g3.
pub fn weierstrass_pencil(g2: C, g3: C, t: C, d: C) -> Result<MatrixPencil> {
    let rhs = t.powu(3) * 4.0 - g2 * t - g3;
    let scale = [d * d, t.powu(3) * 4.0, g2 * t, g3]
        .iter()
        .map(|c| c.norm())
        .fold(1.0f64, f64::max);
    if (d * d - rhs).norm() > 1e-10 * scale {
        return Err(Error::PointNotOnCurve);
    }
    let two = C::new(2.0, 0.0);
    let one = C::new(1.0, 0.0);
    let l = DMatrix::from_row_slice(3, 3, &[two, z(), z(), z(), one, z(), z(), z(), -two]);
    let m = DMatrix::from_row_slice(3, 3, &[z(), one, z(), z(), z(), one, z(), z(), z()]);
    let n = DMatrix::from_row_slice(
        3,
        3,
        &[t, d, t * t * 3.0 - g2, z(), -t, -d, one, z(), -t],
    );
    Ok(MatrixPencil::new(l, m, n))
}

/// Matrix (2.5): the Weierstrass pencil at t = P(omega2/2), d = 0, with the
/// corner entry written as -(pi/omega1)^4 c^8 via the Jacobi identity.
pub fn theta_pencil(ld: &LatticeData) -> Result<MatrixPencil> {
    let tau = ld.tau();
    let tc = theta_constants(tau)?;
    let p1 = C::new(PI, 0.0) / ld.omega1;
    let t = -p1 * p1 * (tc.a.powu(4) + tc.b.powu(4)) / 3.0;
    let corner = -p1.powu(4) * tc.c.powu(8);
    let two = C::new(2.0, 0.0);
    let one = C::new(1.0, 0.0);
    let l = DMatrix::from_row_slice(3, 3, &[two, z(), z(), z(), one, z(), z(), z(), -two]);
    let m = DMatrix::from_row_slice(3, 3, &[z(), one, z(), z(), z(), one, z(), z(), z()]);
    let n = DMatrix::from_row_slice(3, 3, &[t, z(), corner, z(), -t, z(), one, z(), -t]);
    Ok(MatrixPencil::new(l, m, n))
}

/// Data of the 2-torsion-line construction.
#[derive(Debug, Clone, Copy)]
pub struct TorsionLineData {
    pub beta: [C; 3],
    /// line y = alpha x + gamma z through the three 2-torsion images
    pub alpha: C,
    pub gamma: C,
    /// k = alpha lambda12 - lambda22
    pub k: C,
    /// k1 = -lambda12 / k
    pub k1: C,
    pub n12sq: C,
    pub n23sq: C,
    /// proportionality: f = lambda_scale * pencil_det
    pub lambda_scale: C,
}

/// 2-torsion-line pencil U = (M - alpha N)x + N y + (I - gamma N)z with
/// M = diag(-beta_i); requires an affine-compatible reduction of f.
pub fn torsion_line_pencil(
    f: &TernaryForm,
    rd: &ReductionData,
    ld: &LatticeData,
) -> Result<(MatrixPencil, TorsionLineData)> {
    let lam = lambda_coeffs(rd)?;
    let tv = two_torsion_values(ld)?;
    let ps = tv.p_values();
    let scale = ps.iter().map(|p| (lam[0] * p).norm()).fold(lam[2].norm(), f64::max);
    let mut x = [z(); 3];
    let mut y = [z(); 3];
    for i in 0..3 {
        x[i] = lam[0] * ps[i] + lam[2];
        y[i] = lam[3] * ps[i] + lam[5];
        if x[i].norm() < 1e-8 * scale.max(1e-300) {
            return Err(Error::DegenerateLine(format!(
                "2-torsion image {} has vanishing x-coordinate",
                i + 1
            )));
        }
    }
    let beta = [
        C::new(1.0, 0.0) / x[0],
        C::new(1.0, 0.0) / x[1],
        C::new(1.0, 0.0) / x[2],
    ];
    let alpha = (y[0] - y[1]) / (x[0] - x[1]);
    let gamma = y[0] - alpha * x[0];
    let line_scale = y.iter().chain(x.iter()).map(|c| c.norm()).fold(1.0, f64::max);
    if (y[2] - alpha * x[2] - gamma).norm() > 1e-8 * line_scale {
        return Err(Error::Inconsistency(
            "third 2-torsion image off the constructed line".into(),
        ));
    }
    // lambda21 = alpha * lambda11
    if (lam[3] - alpha * lam[0]).norm() > 1e-8 * lam[3].norm().max(lam[0].norm()).max(1e-12) {
        return Err(Error::Inconsistency("lambda21 != alpha lambda11".into()));
    }
    let k = alpha * lam[1] - lam[4];
    if k.norm() < 1e-8 * lam[4].norm().max(lam[1].norm()).max(1e-300) {
        return Err(Error::DegenerateLine("k = alpha lambda12 - lambda22 vanishes".into()));
    }
    let k1 = -lam[1] / k;
    let tc = theta_constants(ld.tau())?;
    let (a4, b4, c4) = (tc.a.powu(4), tc.b.powu(4), tc.c.powu(4));
    let w6 = ld.omega1.powu(6);
    let pi6 = C::new(PI, 0.0).powu(6);
    let n12sq = w6 * (beta[0] - beta[1]).powu(2)
        / (k * k * pi6 * beta[0] * beta[1] * b4 * c4 * c4 * 4.0);
    let n23sq = -w6 * (beta[1] - beta[2]).powu(2)
        / (k * k * pi6 * beta[1] * beta[2] * a4 * a4 * b4 * 4.0);
    let n12 = n12sq.sqrt();
    let n23 = n23sq.sqrt();
    let nm = DMatrix::from_row_slice(
        3,
        3,
        &[
            k1 * beta[0],
            n12,
            z(),
            n12,
            k1 * beta[1],
            n23,
            z(),
            n23,
            k1 * beta[2],
        ],
    );
    let mm = DMatrix::from_row_slice(
        3,
        3,
        &[-beta[0], z(), z(), z(), -beta[1], z(), z(), z(), -beta[2]],
    );
    let id = DMatrix::<C>::identity(3, 3);
    let l = &mm - &nm * alpha;
    let nz = &id - &nm * gamma;
    let pencil = MatrixPencil::new(l, nm, nz);
    // proportionality constant read off in the sheared frame y -> y - alpha x - gamma z,
    // where det U = det(Mx + Ny + Iz) has x^3 coefficient -beta1 beta2 beta3
    let lambda_scale =
        -f.evaluate((C::new(1.0, 0.0), alpha, z())) / (beta[0] * beta[1] * beta[2]);
    Ok((
        pencil,
        TorsionLineData {
            beta,
            alpha,
            gamma,
            k,
            k1,
            n12sq,
            n23sq,
            lambda_scale,
        },
    ))
}

/// Least-squares proportionality constant lambda minimizing
/// |pencil_det - lambda f| over coefficients, and the relative residual.
pub fn verify_pencil(p: &MatrixPencil, f: &TernaryForm) -> Result<(C, f64)> {
    let fn2: f64 = f.coeffs().iter().map(|c| c.norm_sqr()).sum();
    if fn2 < 1e-300 {
        return Err(Error::ZeroForm);
    }
    let det = p.det_form();
    if det.degree() != f.degree() {
        return Err(Error::KeyDegreeMismatch(det.degree(), f.degree(), 0, 0));
    }
    let dot: C = det
        .coeffs()
        .iter()
        .zip(f.coeffs())
        .map(|(d, c)| d * c.conj())
        .sum();
    let lambda = dot / fn2;
    let resid: f64 = det
        .coeffs()
        .iter()
        .zip(f.coeffs())
        .map(|(d, c)| (d - lambda * c).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let dn: f64 = det.coeffs().iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    Ok((lambda, resid / dn.max(1e-300)))
}
